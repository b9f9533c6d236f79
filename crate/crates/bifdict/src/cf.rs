//! Eventually periodic continued fraction expansions [0; a_1, a_2, ...] of
//! numbers in [0, 1].
//!
//! Canonical form: every partial quotient is at least 1; a terminating
//! expansion never ends in 1 (the lone exception is [0;1], the expansion of
//! the value 1); the period is minimal and the preperiod is as short as
//! possible. Canonical forms are unique, so structural equality is value
//! equality, and the alternating lexicographic order on quotient streams is
//! the order of the values.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::surd::{ExactNumber, QuadraticSurd};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ContinuedFraction {
    pre: Vec<u64>,
    per: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(pre: Vec<u64>, per: Vec<u64>) -> Self {
        assert!(
            pre.iter().chain(per.iter()).all(|&a| a >= 1),
            "partial quotients must be positive"
        );
        let mut cf = ContinuedFraction { pre, per };
        cf.canonicalize();
        cf
    }

    pub fn zero() -> Self {
        ContinuedFraction::default()
    }

    /// The value 1, the unique canonical expansion ending in 1.
    pub fn one() -> Self {
        ContinuedFraction { pre: vec![1], per: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.per.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.per.is_empty()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty() && !self.per.is_empty()
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.pre
    }

    pub fn period(&self) -> &[u64] {
        &self.per
    }

    fn canonicalize(&mut self) {
        if !self.per.is_empty() {
            let n = self.per.len();
            for d in 1..n {
                if n % d == 0 && (d..n).all(|i| self.per[i] == self.per[i % d]) {
                    self.per.truncate(d);
                    break;
                }
            }
            while let (Some(&p), Some(&q)) = (self.pre.last(), self.per.last()) {
                if p != q {
                    break;
                }
                self.pre.pop();
                let last = self.per.pop().unwrap();
                self.per.insert(0, last);
            }
        } else if self.pre.len() >= 2 && *self.pre.last().unwrap() == 1 {
            self.pre.pop();
            *self.pre.last_mut().unwrap() += 1;
        }
    }

    /// Partial quotient a_{i+1} (0-indexed); None past the end of a
    /// terminating expansion.
    pub fn quotient(&self, i: usize) -> Option<u64> {
        if i < self.pre.len() {
            Some(self.pre[i])
        } else if self.per.is_empty() {
            None
        } else {
            Some(self.per[(i - self.pre.len()) % self.per.len()])
        }
    }

    /// The Gauss map: drops the first partial quotient; G(0) = 0.
    pub fn gauss_step(&self) -> Self {
        match (self.pre.is_empty(), self.per.is_empty()) {
            (true, true) => ContinuedFraction::zero(),
            (false, _) => ContinuedFraction::new(self.pre[1..].to_vec(), self.per.clone()),
            (true, false) => {
                let mut per = self.per.clone();
                per.rotate_left(1);
                ContinuedFraction::new(vec![], per)
            }
        }
    }

    /// The Farey map: decrements a_1 if a_1 > 1, else drops it; F(0) = 0.
    pub fn farey_step(&self) -> Self {
        let Some(a1) = self.quotient(0) else {
            return ContinuedFraction::zero();
        };
        if a1 == 1 {
            return self.gauss_step();
        }
        if self.pre.is_empty() {
            // Materialize the first period entry so it can be decremented.
            let mut per = self.per.clone();
            per.rotate_left(1);
            ContinuedFraction::new(vec![a1 - 1], per)
        } else {
            let mut pre = self.pre.clone();
            pre[0] = a1 - 1;
            ContinuedFraction::new(pre, self.per.clone())
        }
    }

    /// Prepends a partial quotient: [0; a, a_1, a_2, ...].
    pub fn prepend(&self, a: u64) -> Self {
        assert!(a >= 1);
        let mut pre = self.pre.clone();
        pre.insert(0, a);
        ContinuedFraction::new(pre, self.per.clone())
    }

    /// Alternating lexicographic order on quotient streams (smaller quotient
    /// at an odd position means a larger value); agrees with the order of the
    /// represented values. A terminating stream is treated as ending with an
    /// infinite quotient.
    pub fn compare(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let bound = self.pre.len()
            + other.pre.len()
            + self.per.len().max(1).lcm(&other.per.len().max(1))
            + 1;
        for i in 0..bound {
            let (a, b) = (self.quotient(i), other.quotient(i));
            if a != b {
                // None is +infinity.
                let larger_quotient = match (a, b) {
                    (None, _) => Ordering::Greater,
                    (_, None) => Ordering::Less,
                    (Some(x), Some(y)) => x.cmp(&y),
                };
                return if i % 2 == 0 {
                    larger_quotient.reverse()
                } else {
                    larger_quotient
                };
            }
        }
        unreachable!("distinct canonical expansions must differ within the bound")
    }

    /// Canonical expansion of a rational in [0, 1] by the Euclidean algorithm.
    pub fn from_rational(x: &BigRational) -> Result<Self> {
        if x.is_negative() || x > &BigRational::one() {
            return Err(Error::Domain(format!("value {x} outside [0, 1]")));
        }
        let mut n = x.numer().clone();
        let mut d = x.denom().clone();
        let mut quotients = Vec::new();
        while !n.is_zero() {
            let (q, rem) = d.div_rem(&n);
            quotients.push(q.to_u64().ok_or(Error::QuotientOverflow)?);
            d = n;
            n = rem;
        }
        Ok(ContinuedFraction::new(quotients, vec![]))
    }

    /// Exact value: a rational for terminating expansions, a quadratic surd
    /// otherwise.
    pub fn value(&self) -> ExactNumber {
        if self.per.is_empty() {
            return ExactNumber::Rational(eval_word(&self.pre));
        }
        // Purely periodic tail: y is the attracting fixed point of the Mobius
        // map t -> (A t + B)/(C t + D) built from one period.
        let (mut a, mut b, mut c, mut d) =
            (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
        for &q in &self.per {
            // Compose with t -> 1/(q + t), i.e. matrix [[0, 1], [1, q]].
            let q = BigInt::from(q);
            let (na, nb) = (b.clone(), a + &b * &q);
            let (nc, nd) = (d.clone(), c + &d * &q);
            a = na;
            b = nb;
            c = nc;
            d = nd;
        }
        let disc = (&d - &a).pow(2) + BigInt::from(4) * &b * &c;
        debug_assert!(disc.is_positive());
        let mut y = ExactNumber::Quadratic(QuadraticSurd::new(
            &a - &d,
            BigInt::one(),
            disc.to_biguint().expect("positive discriminant"),
            BigInt::from(2) * &c,
        ));
        for &q in self.pre.iter().rev() {
            y = y
                .add_rational(&BigRational::from_integer(BigInt::from(q)))
                .recip();
        }
        y
    }

    /// Rational enclosure of the value from consecutive convergents, without
    /// building the quadratic surd. A point enclosure for terminating
    /// expansions.
    pub fn value_enclosure(&self, eps: &BigRational) -> crate::enclosure::Enclosure {
        use crate::enclosure::Enclosure;
        if self.per.is_empty() {
            return Enclosure::point(eval_word(&self.pre));
        }
        let (mut h_prev, mut h) = (BigInt::one(), BigInt::zero());
        let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
        let mut last: Option<BigRational> = None;
        let mut i = 0usize;
        loop {
            let a = self.quotient(i).expect("periodic expansions never terminate");
            let h_next = BigInt::from(a) * &h + &h_prev;
            let k_next = BigInt::from(a) * &k + &k_prev;
            h_prev = std::mem::replace(&mut h, h_next);
            k_prev = std::mem::replace(&mut k, k_next);
            let conv = BigRational::new(h.clone(), k.clone());
            if let Some(prev) = last.take() {
                if (&prev - &conv).abs() <= *eps {
                    let (lo, hi) = if prev < conv { (prev, conv) } else { (conv, prev) };
                    return Enclosure::new(lo, hi);
                }
            }
            last = Some(conv);
            i += 1;
        }
    }

    /// The two finite words representing a rational in (0, 1): the canonical
    /// word (last quotient at least 2) and the word ending in 1, one of each
    /// length parity.
    pub fn word_pair(&self) -> Result<(Vec<u64>, Vec<u64>)> {
        if !self.is_finite() || self.is_zero() || *self == ContinuedFraction::one() {
            return Err(Error::Domain(
                "two finite expansions exist only for rationals in (0, 1)".into(),
            ));
        }
        let canonical = self.pre.clone();
        let mut alternate = self.pre.clone();
        let last = alternate.last_mut().unwrap();
        *last -= 1;
        alternate.push(1);
        let (even, odd) = if canonical.len() % 2 == 0 {
            (canonical, alternate)
        } else {
            (alternate, canonical)
        };
        Ok((even, odd))
    }

    /// Word of even length.
    pub fn even_word(&self) -> Result<Vec<u64>> {
        Ok(self.word_pair()?.0)
    }

    /// Word of odd length.
    pub fn odd_word(&self) -> Result<Vec<u64>> {
        Ok(self.word_pair()?.1)
    }
}

/// Value of a finite word of partial quotients.
fn eval_word(word: &[u64]) -> BigRational {
    let mut v = BigRational::zero();
    for &a in word.iter().rev() {
        v = (v + BigRational::from_integer(BigInt::from(a))).recip();
    }
    v
}

impl PartialOrd for ContinuedFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for ContinuedFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0;")?;
        for (i, a) in self.pre.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        if !self.per.is_empty() {
            if !self.pre.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (i, a) in self.per.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses `[0;2,1,(2,1)]`; the parenthesized block is the period.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix("[0;")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("continued fraction must look like [0;...]: {s}")))?;
        let mut pre = Vec::new();
        let mut per = Vec::new();
        let (head, tail) = match body.find('(') {
            Some(i) => {
                let inner = body[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed period in {s}")))?;
                if inner.is_empty() {
                    return Err(Error::Parse(format!("empty period in {s}")));
                }
                (body[..i].trim_end_matches(','), inner)
            }
            None => (body, ""),
        };
        let parse_quotient = |tok: &str| -> Result<u64> {
            let a: u64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid partial quotient '{tok}' in {s}")))?;
            if a == 0 {
                return Err(Error::Parse(format!("partial quotient 0 in {s}")));
            }
            Ok(a)
        };
        if !head.is_empty() {
            for tok in head.split(',') {
                pre.push(parse_quotient(tok)?);
            }
        }
        if !tail.is_empty() {
            for tok in tail.split(',') {
                per.push(parse_quotient(tok)?);
            }
        }
        Ok(ContinuedFraction::new(pre, per))
    }
}
