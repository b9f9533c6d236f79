//! Rational interval enclosures for quantities that are provably irrational
//! (cascade limits, lacunary products, logarithms). An enclosure is a pair of
//! exact rationals [lo, hi] guaranteed to contain the value; all arithmetic
//! here keeps that guarantee.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted enclosure");
        Enclosure { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn neg(&self) -> Self {
        Enclosure { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add(&self, other: &Self) -> Self {
        Enclosure { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn add_rational(&self, t: &BigRational) -> Self {
        Enclosure { lo: &self.lo + t, hi: &self.hi + t }
    }

    pub fn mul_rational(&self, t: &BigRational) -> Self {
        if t.is_negative() {
            Enclosure { lo: &self.hi * t, hi: &self.lo * t }
        } else {
            Enclosure { lo: &self.lo * t, hi: &self.hi * t }
        }
    }

    /// 1 - (1 - d) * self, the affine map used by cascade limits.
    pub fn one_minus_scaled(&self, one_minus_d: &BigRational) -> Self {
        self.mul_rational(one_minus_d).neg().add_rational(&BigRational::one())
    }

    /// Truncated decimal representation, provided the enclosure is tight
    /// enough to pin every requested digit.
    pub fn pinned_decimal(&self, digits: usize) -> Option<String> {
        let (slo, shi) = (decimal_string(&self.lo, digits), decimal_string(&self.hi, digits));
        (slo == shi).then_some(slo)
    }

    /// First `n` binary digits of the fractional part, when pinned.
    /// Requires 0 <= lo and hi < 1.
    pub fn pinned_bits(&self, n: usize) -> Option<Vec<bool>> {
        let scale = BigRational::from_integer(BigInt::from(2).pow(n as u32));
        let a = (&self.lo * &scale).floor().to_integer();
        let b = (&self.hi * &scale).floor().to_integer();
        if a != b || a.is_negative() {
            return None;
        }
        let mut bits = vec![false; n];
        let (_, bytes) = a.to_radix_be(2);
        if bytes.len() > n {
            return None;
        }
        for (i, d) in bytes.iter().rev().enumerate() {
            bits[n - 1 - i] = *d == 1;
        }
        Some(bits)
    }
}

/// Decimal string of a rational, truncated toward zero to `digits` places.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let int = a.floor().to_integer();
    let frac = &a - BigRational::from_integer(int.clone());
    let scaled = (frac * BigRational::from_integer(BigInt::from(10).pow(digits as u32)))
        .floor()
        .to_integer();
    let mut frac_digits = scaled.to_str_radix(10);
    while frac_digits.len() < digits {
        frac_digits.insert(0, '0');
    }
    let sign = if neg && (!int.is_zero() || !scaled.is_zero()) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac_digits}")
    }
}

/// Enclosure of ln(x) for rational x > 0.
///
/// x is reduced to m * 2^e with m in [1, 2); ln m comes from the atanh series
/// ln m = 2 * sum u^(2k+1)/(2k+1) with u = (m-1)/(m+1) in [0, 1/3), whose tail
/// after the k = K term is positive and at most 2 u^(2K+3) / ((2K+3)(1-u^2)).
pub fn ln_enclosure(x: &BigRational, eps: &BigRational) -> Enclosure {
    assert!(x.is_positive(), "ln of a nonpositive value");
    let two = BigRational::from_integer(BigInt::from(2));
    let mut m = x.clone();
    let mut e = 0i64;
    while m >= two {
        m /= &two;
        e += 1;
    }
    while m < BigRational::one() {
        m *= &two;
        e -= 1;
    }
    let budget = eps / BigRational::from_integer(BigInt::from(4 * e.unsigned_abs().max(1)));
    let ln_m = atanh_series(&m, &budget);
    if e == 0 {
        return ln_m;
    }
    let ln2 = atanh_series(&two, &budget);
    ln_m.add(&ln2.mul_rational(&BigRational::from_integer(BigInt::from(e))))
}

/// Enclosure of log2(x) for rational x > 0.
pub fn log2_enclosure(x: &BigRational, eps: &BigRational) -> Enclosure {
    let mut sub_eps = eps / BigRational::from_integer(BigInt::from(16));
    loop {
        let num = ln_enclosure(x, &sub_eps);
        let den = atanh_series(&BigRational::from_integer(BigInt::from(2)), &sub_eps);
        debug_assert!(den.lo().is_positive());
        let lo = if num.lo().is_negative() { num.lo() / den.lo() } else { num.lo() / den.hi() };
        let hi = if num.hi().is_negative() { num.hi() / den.hi() } else { num.hi() / den.lo() };
        let result = Enclosure::new(lo, hi);
        if &result.width() <= eps {
            return result;
        }
        sub_eps /= BigRational::from_integer(BigInt::from(256));
    }
}

/// [S, S + tail] for ln x via 2*atanh((x-1)/(x+1)); x in [1, 3].
fn atanh_series(x: &BigRational, eps: &BigRational) -> Enclosure {
    if x.is_one() {
        return Enclosure::point(BigRational::zero());
    }
    let u = (x - BigRational::one()) / (x + BigRational::one());
    let u2 = &u * &u;
    let two = BigRational::from_integer(BigInt::from(2));
    let mut term = u.clone();
    let mut sum = BigRational::zero();
    let mut k = 0u32;
    loop {
        sum += &two * &term / BigRational::from_integer(BigInt::from(2 * k + 1));
        term *= &u2;
        let tail = &two * &term
            / (BigRational::from_integer(BigInt::from(2 * k + 3))
                * (BigRational::one() - &u2));
        if &tail <= eps {
            return Enclosure::new(sum.clone(), sum + tail);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn decimal_strings() {
        assert_eq!(decimal_string(&rat(2, 3), 6), "0.666666");
        assert_eq!(decimal_string(&rat(1, 2), 3), "0.500");
        assert_eq!(decimal_string(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(decimal_string(&rat(5, 1), 2), "5.00");
    }

    #[test]
    fn ln_matches_known_digits() {
        // ln 2 = 0.6931471805599453...
        let eps = rat(1, 1_000_000_000_000);
        let e = ln_enclosure(&rat(2, 1), &eps);
        assert!(e.width() <= eps);
        assert!(*e.lo() > rat(693_147_180_558, 1_000_000_000_000));
        assert!(*e.hi() < rat(693_147_180_562, 1_000_000_000_000));
        // ln(1/2) = -ln 2.
        let h = ln_enclosure(&rat(1, 2), &eps);
        assert!(*h.lo() > rat(-693_147_180_562, 1_000_000_000_000));
        assert!(*h.hi() < rat(-693_147_180_558, 1_000_000_000_000));
    }

    #[test]
    fn log2_matches_known_digits() {
        // log2(3) = 1.5849625007211562...
        let eps = rat(1, 1_000_000_000_000);
        let e = log2_enclosure(&rat(3, 1), &eps);
        assert!(e.width() <= eps);
        assert!(*e.lo() > rat(1_584_962_500_719, 1_000_000_000_000));
        assert!(*e.hi() < rat(1_584_962_500_723, 1_000_000_000_000));
        let exact = log2_enclosure(&rat(8, 1), &rat(1, 1_000_000));
        assert!(exact.contains(&rat(3, 1)));
    }

    #[test]
    fn pinned_digits() {
        let e = Enclosure::new(rat(6666, 10000), rat(6667, 10000));
        assert_eq!(e.pinned_decimal(2), Some("0.66".into()));
        assert_eq!(e.pinned_decimal(5), None);
        let b = Enclosure::new(rat(2, 3) - rat(1, 1 << 20), rat(2, 3) + rat(1, 1 << 20));
        assert_eq!(b.pinned_bits(8), Some(vec![true, false, true, false, true, false, true, false]));
    }
}
