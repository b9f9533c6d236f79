//! Eventually periodic binary expansions of numbers in [0, 1], kept in a
//! canonical form so that structural equality coincides with equality of the
//! represented real values and plain lexicographic order on digit streams
//! coincides with the order of the values.
//!
//! Canonical form:
//! * the period is the shortest repeating block and the preperiod is as short
//!   as possible;
//! * a period of all zeros is folded into a terminating expansion, and a
//!   terminating expansion carries no trailing zeros;
//! * a period of all ones is removed by carrying (0.0111... is stored as 0.1),
//!   with the single exception of the value 1 itself, stored as 0.(1).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryExpansion {
    pre: Vec<bool>,
    per: Vec<bool>,
}

impl BinaryExpansion {
    /// Builds an expansion from raw preperiod and period digit blocks and
    /// canonicalizes it.
    pub fn new(pre: Vec<bool>, per: Vec<bool>) -> Self {
        let mut b = BinaryExpansion { pre, per };
        b.canonicalize();
        b
    }

    pub fn zero() -> Self {
        BinaryExpansion::default()
    }

    pub fn one() -> Self {
        BinaryExpansion { pre: vec![], per: vec![true] }
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.per.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.pre.is_empty() && self.per == [true]
    }

    /// Terminating expansion, i.e. the value is a dyadic rational k/2^s
    /// (or an integer).
    pub fn is_dyadic(&self) -> bool {
        self.per.is_empty() || self.is_one()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty() && !self.per.is_empty()
    }

    pub fn preperiod(&self) -> &[bool] {
        &self.pre
    }

    pub fn period(&self) -> &[bool] {
        &self.per
    }

    fn canonicalize(&mut self) {
        if !self.per.is_empty() {
            // Minimal period: shortest divisor-length block that repeats.
            let n = self.per.len();
            for d in 1..n {
                if n % d == 0 && (d..n).all(|i| self.per[i] == self.per[i % d]) {
                    self.per.truncate(d);
                    break;
                }
            }
            // Shortest preperiod: absorb trailing preperiod digits that match
            // the end of the period by rotating the period.
            while let (Some(&p), Some(&q)) = (self.pre.last(), self.per.last()) {
                if p != q {
                    break;
                }
                self.pre.pop();
                let last = self.per.pop().unwrap();
                self.per.insert(0, last);
            }
            if self.per.iter().all(|&b| !b) {
                self.per.clear();
            } else if self.per.iter().all(|&b| b) {
                self.per.truncate(1);
                if !self.pre.is_empty() {
                    // Carry: 0.w(1) = 0.w + 2^{-|w|}.
                    self.per.clear();
                    let mut i = self.pre.len();
                    loop {
                        if i == 0 {
                            // 0.111... carried past the point: the value 1.
                            *self = BinaryExpansion::one();
                            return;
                        }
                        i -= 1;
                        if self.pre[i] {
                            self.pre[i] = false;
                        } else {
                            self.pre[i] = true;
                            break;
                        }
                    }
                }
            }
        }
        if self.per.is_empty() {
            while self.pre.last() == Some(&false) {
                self.pre.pop();
            }
        }
    }

    /// Digit b_{i+1} of the canonical digit stream (0-indexed). Terminating
    /// expansions continue with zeros.
    pub fn digit(&self, i: usize) -> bool {
        if i < self.pre.len() {
            self.pre[i]
        } else if self.per.is_empty() {
            false
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    /// Digit stream of the non-terminating representation: for a dyadic value
    /// this is the expansion ending in all ones (1 itself is 0.111...).
    /// Needed when a dyadic sits at the upper end of an interval.
    pub fn digit_upper(&self, i: usize) -> bool {
        if !self.is_dyadic() || self.is_one() {
            return self.digit(i);
        }
        if self.is_zero() {
            // 0 has no all-ones representation; fall back to zeros.
            return false;
        }
        // 0.b_1..b_{s-1}1 = 0.b_1..b_{s-1}0111...
        let s = self.pre.len();
        match (i + 1).cmp(&s) {
            Ordering::Less => self.pre[i],
            Ordering::Equal => false,
            Ordering::Greater => true,
        }
    }

    /// Exact value as a rational.
    pub fn value(&self) -> BigRational {
        let two = BigInt::from(2);
        let mut num = BigInt::zero();
        for &b in &self.pre {
            num = &num * &two + BigInt::from(b as u8);
        }
        let mut val = BigRational::new(num, two.pow(self.pre.len() as u32));
        if !self.per.is_empty() {
            let mut pnum = BigInt::zero();
            for &b in &self.per {
                pnum = &pnum * &two + BigInt::from(b as u8);
            }
            let scale = two.pow(self.pre.len() as u32);
            let denom = two.pow(self.per.len() as u32) - BigInt::one();
            val += BigRational::new(pnum, denom) / BigRational::from_integer(scale);
        }
        val
    }

    /// Canonical expansion of a rational in [0, 1] by long division with
    /// remainder-cycle detection.
    pub fn from_rational(x: &BigRational) -> Result<Self> {
        if x.is_negative() || x > &BigRational::one() {
            return Err(Error::Domain(format!("value {x} outside [0, 1]")));
        }
        if x == &BigRational::one() {
            return Ok(BinaryExpansion::one());
        }
        let q = x.denom().clone();
        let mut n = x.numer().clone();
        let mut digits = Vec::new();
        let mut seen: std::collections::HashMap<BigInt, usize> = std::collections::HashMap::new();
        loop {
            if n.is_zero() {
                return Ok(BinaryExpansion::new(digits, vec![]));
            }
            if let Some(&start) = seen.get(&n) {
                let per = digits.split_off(start);
                return Ok(BinaryExpansion::new(digits, per));
            }
            seen.insert(n.clone(), digits.len());
            n *= 2;
            if n >= q {
                digits.push(true);
                n -= &q;
            } else {
                digits.push(false);
            }
        }
    }

    /// Drops the leading digit of the symbol sequence (the shift map on
    /// digit streams, not the tent map on values).
    pub fn shift(&self) -> Self {
        if self.pre.is_empty() {
            if self.per.is_empty() {
                return BinaryExpansion::zero();
            }
            let mut per = self.per.clone();
            per.rotate_left(1);
            BinaryExpansion::new(vec![], per)
        } else {
            BinaryExpansion::new(self.pre[1..].to_vec(), self.per.clone())
        }
    }

    /// Complements every digit of the stream (terminating expansions continue
    /// with zeros, so their complement ends in ones).
    pub fn complement(&self) -> Self {
        let pre: Vec<bool> = self.pre.iter().map(|&b| !b).collect();
        let per: Vec<bool> = if self.per.is_empty() {
            vec![true]
        } else {
            self.per.iter().map(|&b| !b).collect()
        };
        BinaryExpansion::new(pre, per)
    }

    /// One step of the tent map in symbols: T(0.0w) = 0.w, T(0.1w) = 0.w-hat.
    pub fn tent_step(&self) -> Self {
        let first = self.digit(0);
        let shifted = self.shift();
        if first {
            shifted.complement()
        } else {
            shifted
        }
    }

    /// Compares digit streams lexicographically, which on canonical forms
    /// agrees with the order of the values.
    pub fn compare(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let bound = self.pre.len()
            + other.pre.len()
            + self.per.len().max(1).lcm(&other.per.len().max(1))
            + 1;
        for i in 0..bound {
            let (a, b) = (self.digit(i), other.digit(i));
            if a != b {
                return if b { Ordering::Less } else { Ordering::Greater };
            }
        }
        unreachable!("distinct canonical expansions must differ within the bound")
    }
}

/// Kneading encoding: maps a symbol sequence s to tau(s) whose k-th digit is
/// the parity of s_1 + ... + s_k. Conjugates the shift to the tent map.
pub fn encode_kneading(s: &BinaryExpansion) -> BinaryExpansion {
    let a = s.preperiod().len();
    let b = s.period().len();
    let mut parity = false;
    let mut pre = Vec::with_capacity(a);
    for i in 0..a {
        parity ^= s.digit(i);
        pre.push(parity);
    }
    if b == 0 {
        // The tail of zeros keeps the parity constant.
        return BinaryExpansion::new(pre, vec![parity]);
    }
    let weight_odd = s.period().iter().filter(|&&x| x).count() % 2 == 1;
    let reps = if weight_odd { 2 } else { 1 };
    let mut per = Vec::with_capacity(b * reps);
    for i in a..a + b * reps {
        parity ^= s.digit(i);
        per.push(parity);
    }
    BinaryExpansion::new(pre, per)
}

impl fmt::Display for BinaryExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.")?;
        for &b in &self.pre {
            write!(f, "{}", b as u8)?;
        }
        if !self.per.is_empty() {
            write!(f, "(")?;
            for &b in &self.per {
                write!(f, "{}", b as u8)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryExpansion {
    type Err = Error;

    /// Parses `0.1101(10)`; the parenthesized block is the period.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix("0.")
            .or_else(|| s.strip_prefix('.'))
            .ok_or_else(|| Error::Parse(format!("binary expansion must start with '0.': {s}")))?;
        let bit = |c: char| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!("invalid binary digit '{c}' in {s}"))),
        };
        let (pre_str, per_str) = match body.find('(') {
            Some(i) => {
                let per = body[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed period in {s}")))?;
                if per.is_empty() {
                    return Err(Error::Parse(format!("empty period in {s}")));
                }
                (&body[..i], per)
            }
            None => (body, ""),
        };
        let pre = pre_str.chars().map(bit).collect::<Result<Vec<_>>>()?;
        let per = per_str.chars().map(bit).collect::<Result<Vec<_>>>()?;
        Ok(BinaryExpansion::new(pre, per))
    }
}

impl PartialOrd for BinaryExpansion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for BinaryExpansion {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn bin(s: &str) -> BinaryExpansion {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        // All-ones period carries.
        assert_eq!(BinaryExpansion::new(vec![false], vec![true]), bin("0.1"));
        assert_eq!(BinaryExpansion::new(vec![false, true, true], vec![true]), bin("0.1"));
        // All-zeros period terminates.
        assert_eq!(BinaryExpansion::new(vec![true], vec![false]), bin("0.1"));
        // Period minimality and preperiod absorption.
        assert_eq!(BinaryExpansion::new(vec![true], vec![false, true]), bin("0.(10)"));
        assert_eq!(BinaryExpansion::new(vec![], vec![true, false, true, false]), bin("0.(10)"));
        // The value 1 is the unique all-ones exception.
        assert_eq!(BinaryExpansion::new(vec![true, true], vec![true]), BinaryExpansion::one());
        assert!(BinaryExpansion::one().is_purely_periodic());
    }

    #[test]
    fn values_round_trip() {
        assert_eq!(bin("0.(10)").value(), rat(2, 3));
        assert_eq!(bin("0.11").value(), rat(3, 4));
        assert_eq!(BinaryExpansion::one().value(), rat(1, 1));
        assert_eq!(BinaryExpansion::from_rational(&rat(2, 3)).unwrap(), bin("0.(10)"));
        assert_eq!(BinaryExpansion::from_rational(&rat(14, 17)).unwrap(), bin("0.(11010010)"));
        // Round trip for all p/q with q <= 200.
        for q in 1u32..=200 {
            for p in 0..=q {
                let x = rat(p.into(), q.into());
                let b = BinaryExpansion::from_rational(&x).unwrap();
                assert_eq!(b.value(), x, "round trip failed for {p}/{q}");
            }
        }
    }

    #[test]
    fn tent_steps() {
        // 2/3 is a fixed point of T.
        assert_eq!(bin("0.(10)").tent_step(), bin("0.(10)"));
        // T(3/4) = 1/2.
        assert_eq!(bin("0.11").tent_step(), bin("0.1"));
        // Leading-zero shift.
        assert_eq!(bin("0.011").tent_step(), bin("0.11"));
        // T(1) = 0.
        assert_eq!(BinaryExpansion::one().tent_step(), BinaryExpansion::zero());
    }

    #[test]
    fn tent_matches_value_map() {
        // Symbolic tent step agrees with x -> min(2x, 2-2x) on rationals.
        for q in 1u32..=60 {
            for p in 0..=q {
                let x = rat(p.into(), q.into());
                let b = BinaryExpansion::from_rational(&x).unwrap();
                let tx = if &x * rat(2, 1) <= rat(1, 1) {
                    &x * rat(2, 1)
                } else {
                    rat(2, 1) - &x * rat(2, 1)
                };
                assert_eq!(b.tent_step().value(), tx, "tent mismatch at {p}/{q}");
            }
        }
    }

    #[test]
    fn lexicographic_order_matches_values() {
        let samples = ["0.(10)", "0.11", "0.1", "0.(110)", "0.1(10)", "0.0011", "0.(1)"];
        let parsed: Vec<BinaryExpansion> = samples.iter().map(|s| bin(s)).collect();
        for a in &parsed {
            for b in &parsed {
                assert_eq!(a.compare(b), a.value().cmp(&b.value()), "{a} vs {b}");
            }
        }
        assert_eq!(bin("0.(10)").compare(&bin("0.11")), Ordering::Less);
    }

    #[test]
    fn kneading_encoding_examples() {
        // s = all ones: t alternates, tau = 2/3.
        assert_eq!(encode_kneading(&BinaryExpansion::one()), bin("0.(10)"));
        // s = 1000...: constant parity 1, tau = 1.
        assert_eq!(encode_kneading(&bin("0.1")), BinaryExpansion::one());
        // s = all zeros: tau = 0.
        assert_eq!(encode_kneading(&BinaryExpansion::zero()), BinaryExpansion::zero());
    }

    #[test]
    fn kneading_conjugacy() {
        // tau(shift(s)) = T(tau(s)) for eventually periodic s.
        let mut cases = Vec::new();
        for q in 1u32..=80 {
            for p in 0..=q {
                cases.push(BinaryExpansion::from_rational(&rat(p.into(), q.into())).unwrap());
            }
        }
        for s in cases {
            assert_eq!(
                encode_kneading(&s.shift()),
                encode_kneading(&s).tent_step(),
                "conjugacy failed for {s}"
            );
        }
    }

    #[test]
    fn parse_print_inverse() {
        for s in ["0.", "0.1", "0.1101(10)", "0.(11010010)", "0.(1)", "0.0101"] {
            let b = bin(s);
            let printed = b.to_string();
            assert_eq!(printed.parse::<BinaryExpansion>().unwrap(), b);
        }
        // Canonical print of canonical parse is the identity.
        assert_eq!(bin("0.1101(10)").to_string(), "0.1101(10)");
    }
}
