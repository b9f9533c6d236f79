//! Exact quadratic surds (p + q*sqrt(d))/r and a small sum type covering both
//! rationals and surds, which is the full set of values taken by eventually
//! periodic continued fractions.
//!
//! Comparisons are decided algebraically by isolating radicals and squaring
//! with exact integers; they remain exact even if a huge radicand escapes full
//! squarefree reduction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A quadratic irrational (p + q*sqrt(d))/r with r > 0, q != 0, d not a
/// perfect square, gcd(p, q, r) = 1 and d squarefree whenever the square part
/// is within reach of the factoring helpers below.
#[derive(Debug, Clone)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigUint,
    r: BigInt,
}

impl QuadraticSurd {
    /// Builds (p + q*sqrt(d))/r, normalizing sign, gcd and square factors of
    /// the radicand. Panics if the value is rational (q = 0 or d square) or
    /// r = 0; rational values belong in [`ExactNumber::Rational`].
    pub fn new(p: BigInt, q: BigInt, d: BigUint, r: BigInt) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        assert!(!q.is_zero(), "rational value passed to QuadraticSurd");
        let (root, free) = squarefree_decompose(d);
        assert!(free > BigUint::one(), "perfect-square radicand is rational");
        let mut s = QuadraticSurd { p, q: q * BigInt::from(root), d: free, r };
        if s.r.is_negative() {
            s.p = -s.p;
            s.q = -s.q;
            s.r = -s.r;
        }
        let g = s.p.gcd(&s.q).gcd(&s.r);
        if !g.is_one() {
            s.p /= &g;
            s.q /= &g;
            s.r /= &g;
        }
        s
    }

    pub fn numer_rational(&self) -> &BigInt {
        &self.p
    }

    pub fn radical_coefficient(&self) -> &BigInt {
        &self.q
    }

    pub fn radicand(&self) -> &BigUint {
        &self.d
    }

    pub fn denom(&self) -> &BigInt {
        &self.r
    }

    /// 1 / self = r(p - q*sqrt(d)) / (p^2 - q^2 d).
    pub fn recip(&self) -> Self {
        let d = BigInt::from(self.d.clone());
        let norm = &self.p * &self.p - &self.q * &self.q * d;
        QuadraticSurd::new(
            &self.r * &self.p,
            -(&self.r * &self.q),
            self.d.clone(),
            norm,
        )
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd::new(-&self.p, -&self.q, self.d.clone(), self.r.clone())
    }

    pub fn add_rational(&self, t: &BigRational) -> Self {
        QuadraticSurd::new(
            &self.p * t.denom() + t.numer() * &self.r,
            &self.q * t.denom(),
            self.d.clone(),
            &self.r * t.denom(),
        )
    }

    /// Sum of two surds over the same radicand; the radical parts may cancel,
    /// so the result is a general exact number.
    pub fn add(&self, other: &Self) -> ExactNumber {
        assert_eq!(self.d, other.d, "mixed radicals in surd addition");
        ExactNumber::from_parts(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            self.d.clone(),
            &self.r * &other.r,
        )
    }

    pub fn sign(&self) -> Ordering {
        sign_one_radical(&self.p, &self.q, &self.d)
    }

    pub fn cmp_rational(&self, t: &BigRational) -> Ordering {
        // (p + q sqrt d)/r - u/v, with r, v > 0.
        let a = &self.p * t.denom() - t.numer() * &self.r;
        let b = &self.q * t.denom();
        sign_one_radical(&a, &b, &self.d)
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        let a = &self.p * &other.r - &other.p * &self.r;
        let b = &self.q * &other.r;
        let c = -(&other.q * &self.r);
        sign_two_radicals(&a, &b, &self.d, &c, &other.d)
    }

    /// Exact floor; well defined because the value is irrational.
    pub fn floor(&self) -> BigInt {
        let scaled = &self.q * &self.q * BigInt::from(self.d.clone());
        let root = scaled.magnitude().sqrt();
        let approx_num = if self.q.is_positive() {
            &self.p + BigInt::from(root)
        } else {
            &self.p - BigInt::from(root)
        };
        let mut k = approx_num.div_floor(&self.r);
        while self.cmp_rational(&BigRational::from_integer(k.clone())) == Ordering::Less {
            k -= 1;
        }
        while self.cmp_rational(&BigRational::from_integer(&k + 1)) != Ordering::Less {
            k += 1;
        }
        k
    }

    /// Rational interval [lo, hi] of width at most `eps` containing the value.
    pub fn enclosure(&self, eps: &BigRational) -> (BigRational, BigRational) {
        let mut bits = 16u32;
        loop {
            let scale = BigUint::one() << bits;
            let lo_root = (&self.d * &scale * &scale).sqrt();
            let hi_root = &lo_root + BigUint::one();
            let scale_int = BigInt::from(scale);
            let p = BigRational::from_integer(self.p.clone());
            let mut lo = (&p + BigRational::new(&self.q * BigInt::from(lo_root), scale_int.clone()))
                / BigRational::from_integer(self.r.clone());
            let mut hi = (&p + BigRational::new(&self.q * BigInt::from(hi_root), scale_int))
                / BigRational::from_integer(self.r.clone());
            if self.q.is_negative() {
                std::mem::swap(&mut lo, &mut hi);
            }
            if &hi - &lo <= *eps {
                return (lo, hi);
            }
            bits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(&BigRational::new(BigInt::one(), BigInt::from(1u64 << 60)));
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        mid.numer().to_f64().unwrap_or(f64::NAN) / mid.denom().to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for QuadraticSurd {}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.p)?;
        if self.q.is_negative() {
            write!(f, "-")?;
        } else {
            write!(f, "+")?;
        }
        let qa = self.q.abs();
        if !qa.is_one() {
            write!(f, "{qa}*")?;
        }
        write!(f, "sqrt({}))/{}", self.d, self.r)
    }
}

/// Sign of a + b*sqrt(d) with exact integer arithmetic.
fn sign_one_radical(a: &BigInt, b: &BigInt, d: &BigUint) -> Ordering {
    if b.is_zero() || d.is_zero() {
        return a.cmp(&BigInt::zero());
    }
    if a.is_zero() {
        return b.cmp(&BigInt::zero());
    }
    let sa = a.cmp(&BigInt::zero());
    let sb = b.cmp(&BigInt::zero());
    if sa == sb {
        return sa;
    }
    let t = a * a - b * b * BigInt::from(d.clone());
    match sa {
        Ordering::Greater => t.cmp(&BigInt::zero()),
        Ordering::Less => BigInt::zero().cmp(&t),
        Ordering::Equal => unreachable!(),
    }
}

/// Sign of a + b*sqrt(d1) + c*sqrt(d2), reducing to the one-radical case by
/// squaring once.
fn sign_two_radicals(a: &BigInt, b: &BigInt, d1: &BigUint, c: &BigInt, d2: &BigUint) -> Ordering {
    if b.is_zero() {
        return sign_one_radical(a, c, d2);
    }
    if c.is_zero() {
        return sign_one_radical(a, b, d1);
    }
    if d1 == d2 {
        return sign_one_radical(a, &(b + c), d1);
    }
    let sx = sign_one_radical(a, b, d1);
    let sy = c.cmp(&BigInt::zero());
    if sx == Ordering::Equal {
        return sy;
    }
    if sy == Ordering::Equal || sx == sy {
        return sx;
    }
    // x = a + b sqrt(d1) and y = c sqrt(d2) have opposite signs; compare
    // magnitudes via x^2 - y^2 = (a^2 + b^2 d1 - c^2 d2) + 2ab sqrt(d1).
    let head = a * a + b * b * BigInt::from(d1.clone()) - c * c * BigInt::from(d2.clone());
    let tail = BigInt::from(2) * a * b;
    let s2 = sign_one_radical(&head, &tail, d1);
    match sx {
        Ordering::Greater => s2,
        Ordering::Less => s2.reverse(),
        Ordering::Equal => unreachable!(),
    }
}

/// Either an exact rational or an exact quadratic surd; the value type of
/// eventually periodic continued fractions.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactNumber {
    Rational(BigRational),
    Quadratic(QuadraticSurd),
}

impl ExactNumber {
    pub fn from_integer(n: i64) -> Self {
        ExactNumber::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// (p + q*sqrt(d))/r as an exact number, collapsing to a rational when
    /// q = 0 or d is a perfect square.
    pub fn from_parts(p: BigInt, q: BigInt, d: BigUint, r: BigInt) -> Self {
        if q.is_zero() {
            return ExactNumber::Rational(BigRational::new(p, r));
        }
        let root = d.sqrt();
        if &root * &root == d {
            return ExactNumber::Rational(BigRational::new(p + q * BigInt::from(root), r));
        }
        ExactNumber::Quadratic(QuadraticSurd::new(p, q, d, r))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactNumber::Rational(x) if x.is_zero())
    }

    pub fn sign(&self) -> Ordering {
        match self {
            ExactNumber::Rational(x) => x.cmp(&BigRational::zero()),
            ExactNumber::Quadratic(s) => s.sign(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactNumber::Rational(x) => ExactNumber::Rational(-x),
            ExactNumber::Quadratic(s) => ExactNumber::Quadratic(s.neg()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Reciprocal; panics on zero.
    pub fn recip(&self) -> Self {
        match self {
            ExactNumber::Rational(x) => ExactNumber::Rational(x.recip()),
            ExactNumber::Quadratic(s) => ExactNumber::Quadratic(s.recip()),
        }
    }

    pub fn add_rational(&self, t: &BigRational) -> Self {
        match self {
            ExactNumber::Rational(x) => ExactNumber::Rational(x + t),
            ExactNumber::Quadratic(s) => ExactNumber::Quadratic(s.add_rational(t)),
        }
    }

    /// Sum; both operands must live in the same quadratic field.
    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExactNumber::Rational(x), _) => other.add_rational(x),
            (_, ExactNumber::Rational(y)) => self.add_rational(y),
            (ExactNumber::Quadratic(a), ExactNumber::Quadratic(b)) => a.add(b),
        }
    }

    pub fn floor(&self) -> BigInt {
        match self {
            ExactNumber::Rational(x) => x.floor().to_integer(),
            ExactNumber::Quadratic(s) => s.floor(),
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExactNumber::Rational(x), ExactNumber::Rational(y)) => x.cmp(y),
            (ExactNumber::Rational(x), ExactNumber::Quadratic(s)) => s.cmp_rational(x).reverse(),
            (ExactNumber::Quadratic(s), ExactNumber::Rational(y)) => s.cmp_rational(y),
            (ExactNumber::Quadratic(s), ExactNumber::Quadratic(t)) => s.compare(t),
        }
    }

    pub fn cmp_rational(&self, t: &BigRational) -> Ordering {
        match self {
            ExactNumber::Rational(x) => x.cmp(t),
            ExactNumber::Quadratic(s) => s.cmp_rational(t),
        }
    }

    /// Rational enclosure of width at most `eps` (a point for rationals).
    pub fn enclosure(&self, eps: &BigRational) -> (BigRational, BigRational) {
        match self {
            ExactNumber::Rational(x) => (x.clone(), x.clone()),
            ExactNumber::Quadratic(s) => s.enclosure(eps),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactNumber::Rational(x) => {
                x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
            }
            ExactNumber::Quadratic(s) => s.to_f64(),
        }
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumber::Rational(x) => write!(f, "{x}"),
            ExactNumber::Quadratic(s) => write!(f, "{s}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Integer factoring helpers for radicand normalization.
// ---------------------------------------------------------------------------

/// Writes n = root^2 * free with free squarefree, as far as trial division,
/// perfect-square detection, primality testing and a budgeted Pollard rho can
/// see. A square factor p^2 with p beyond all of those survives unreduced,
/// which affects only the canonical form, never comparison results.
fn squarefree_decompose(n: BigUint) -> (BigUint, BigUint) {
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    let mut stack = vec![n];
    while let Some(mut m) = stack.pop() {
        if m <= BigUint::one() {
            continue;
        }
        let mut d = 2u64;
        while d < 10_000 && BigUint::from(d) * BigUint::from(d) <= m {
            let big_d = BigUint::from(d);
            let mut e = 0u32;
            while (&m % &big_d).is_zero() {
                m /= &big_d;
                e += 1;
            }
            if e > 0 {
                root *= big_d.pow(e / 2);
                if e % 2 == 1 {
                    free *= BigUint::from(d);
                }
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m.is_one() {
            continue;
        }
        let s = m.sqrt();
        if &s * &s == m {
            root *= s;
            continue;
        }
        if is_probable_prime(&m) {
            free *= m;
            continue;
        }
        match pollard_rho(&m) {
            Some(f) => {
                stack.push(&m / &f);
                stack.push(f);
            }
            None => free *= m, // budget exhausted; accept as squarefree
        }
    }
    (root, free)
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - BigUint::one();
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho with an iteration budget. Returns a nontrivial
/// factor or None if the budget runs out.
fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    if (n % 2u32).is_zero() {
        return Some(BigUint::from(2u32));
    }
    let mut c = BigUint::from(1u32);
    for _ in 0..8 {
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut budget = 200_000u32;
        while d.is_one() && budget > 0 {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
            budget -= 1;
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
        c += 1u32;
    }
    None
}
