//! Sequences admissible as unique expansions of 1 in a base q in (1, 2], the
//! associated root-finding for q, and the correspondence that attaches such a
//! q to every aperiodic member of the kneading set.
//!
//! A binary sequence (c_k) is admissible when, in the shift-lexicographic
//! sense, sigma^k(c) < c whenever c_k = 0 and sigma^k(c) > c-hat whenever
//! c_k = 1; admissible sequences solve sum c_k q^(-k) = 1 for a unique
//! q in (1, 2].

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binary::BinaryExpansion;
use crate::cascades::thue_morse;
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::membership::lambda_member;

/// A digit sequence source: a stored eventually periodic expansion, or the
/// shifted Thue-Morse sequence (t_n)_{n >= 1} as the canonical aperiodic
/// generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSource {
    Expansion(BinaryExpansion),
    ShiftedThueMorse,
}

impl SequenceSource {
    /// c_k, 1-based.
    pub fn digit(&self, k: u64) -> bool {
        debug_assert!(k >= 1);
        match self {
            SequenceSource::Expansion(b) => b.digit((k - 1) as usize),
            SequenceSource::ShiftedThueMorse => thue_morse(k),
        }
    }

    pub fn is_eventually_periodic(&self) -> bool {
        matches!(self, SequenceSource::Expansion(_))
    }
}

/// Compares the digit streams sigma^(sa)(c) xor flip_a and
/// sigma^(sb)(c) xor flip_b of one eventually periodic expansion; exact,
/// since both tails live on the same cycle.
fn cmp_shifted(c: &BinaryExpansion, sa: usize, fa: bool, sb: usize, fb: bool) -> Ordering {
    let bound = c.preperiod().len() + c.period().len().max(1) + 1;
    for i in 0..bound + sa.max(sb) {
        let a = c.digit(sa + i) ^ fa;
        let b = c.digit(sb + i) ^ fb;
        if a != b {
            return if b { Ordering::Less } else { Ordering::Greater };
        }
    }
    Ordering::Equal
}

/// Complete admissibility decision for an eventually periodic sequence: the
/// conditions repeat once every shifted tail has been inspected.
pub fn is_admissible(c: &BinaryExpansion) -> bool {
    if c.is_zero() {
        return false;
    }
    let horizon = c.preperiod().len() + c.period().len().max(1);
    for k in 1..=horizon {
        if c.digit(k - 1) {
            // sigma^k(c) > c-hat, strictly.
            if cmp_shifted(c, k, false, 0, true) != Ordering::Greater {
                return false;
            }
        } else {
            // sigma^k(c) < c, strictly.
            if cmp_shifted(c, k, false, 0, false) != Ordering::Less {
                return false;
            }
        }
    }
    true
}

/// Admissibility of a generated sequence, verified for all k <= depth with
/// comparisons scanned up to depth digits. This is a bounded verification,
/// not a completed decision; a comparison that stays undecided within the
/// scan window counts as a failure.
pub fn is_admissible_to_depth(source: &SequenceSource, depth: u64) -> bool {
    let compare = |shift: u64, flip: bool| -> Ordering {
        for i in 1..=depth {
            let a = source.digit(shift + i);
            let b = source.digit(i) ^ flip;
            if a != b {
                return if b { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    };
    for k in 1..=depth {
        let ok = if source.digit(k) {
            compare(k, true) == Ordering::Greater
        } else {
            compare(k, false) == Ordering::Less
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Exact value of sum_{k >= 1} c_k q^(-k) for an eventually periodic sequence
/// and rational q > 1; the periodic tail sums to a geometric closed form.
pub fn power_sum_exact(c: &BinaryExpansion, q: &BigRational) -> BigRational {
    assert!(q > &BigRational::one());
    let w = q.recip();
    let mut sum = BigRational::zero();
    let mut power = BigRational::one();
    for &bit in c.preperiod() {
        power *= &w;
        if bit {
            sum += &power;
        }
    }
    if !c.period().is_empty() {
        let mut block = BigRational::zero();
        let mut block_power = BigRational::one();
        for &bit in c.period() {
            block_power *= &w;
            if bit {
                block += &block_power;
            }
        }
        sum += &power * block / (BigRational::one() - block_power);
    }
    sum
}

/// Partial sum of m terms for an arbitrary source.
fn power_sum_partial(source: &SequenceSource, q: &BigRational, terms: u64) -> BigRational {
    let w = q.recip();
    let mut sum = BigRational::zero();
    let mut power = BigRational::one();
    for k in 1..=terms {
        power *= &w;
        if source.digit(k) {
            sum += &power;
        }
    }
    sum
}

/// |sum_{k <= terms} c_k q^(-k) - 1|, the residual of a candidate root.
pub fn residual(source: &SequenceSource, q: &BigRational, terms: u64) -> BigRational {
    (power_sum_partial(source, q, terms) - BigRational::one()).abs()
}

/// Enclosure of the unique q in (1, 2] with sum c_k q^(-k) = 1, by monotone
/// bisection: the sum is strictly decreasing in q. For eventually periodic
/// sequences the sum is evaluated in closed form; for generated sequences
/// partial sums carry the rigorous tail bound q^(-m)/(q - 1), and the number
/// of terms grows until every bisection step is certified. Returns the
/// enclosure and the number of terms finally used.
pub fn univoque_q(source: &SequenceSource, width: &BigRational) -> Result<(Enclosure, u64)> {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    match source {
        SequenceSource::Expansion(c) => {
            if c.is_zero() {
                return Err(Error::Domain("the zero sequence has no expansion base".into()));
            }
            if c.is_one() {
                return Ok((Enclosure::point(two), 1));
            }
            let ones = c.preperiod().iter().filter(|&&b| b).count();
            if c.is_dyadic() && ones < 2 {
                return Err(Error::Domain(
                    "a single-digit sequence solves the expansion only at q = 1".into(),
                ));
            }
            let f = |q: &BigRational| power_sum_exact(c, q);
            // Find a lower bracket with f(lo) > 1.
            let mut gap = BigRational::new(BigInt::one(), BigInt::from(2));
            let mut lo = &one + &gap;
            loop {
                match f(&lo).cmp(&one) {
                    Ordering::Greater => break,
                    Ordering::Equal => return Ok((Enclosure::point(lo), 1)),
                    Ordering::Less => {
                        gap /= &two;
                        lo = &one + &gap;
                    }
                }
            }
            let mut hi = two.clone();
            while &(&hi - &lo) > width {
                let mid = (&lo + &hi) / &two;
                match f(&mid).cmp(&one) {
                    Ordering::Greater => lo = mid,
                    Ordering::Equal => return Ok((Enclosure::point(mid), 1)),
                    Ordering::Less => hi = mid,
                }
            }
            Ok((Enclosure::new(lo, hi), 1))
        }
        SequenceSource::ShiftedThueMorse => {
            let mut terms = 64u64;
            // Certified comparison of f(q) with 1 under the tail bound.
            let decide = |q: &BigRational, terms: u64| -> Option<Ordering> {
                let partial = power_sum_partial(source, q, terms);
                if partial > one {
                    return Some(Ordering::Greater);
                }
                let tail = q.recip().pow(terms as i32) / (q - &one);
                if &partial + tail < one {
                    return Some(Ordering::Less);
                }
                None
            };
            let mut lo = BigRational::new(BigInt::from(3), BigInt::from(2));
            loop {
                match decide(&lo, terms) {
                    Some(Ordering::Greater) => break,
                    Some(_) => lo = (&lo + &one) / &two,
                    None => terms *= 2,
                }
            }
            let mut hi = two.clone();
            while &(&hi - &lo) > width {
                let mid = (&lo + &hi) / &two;
                match decide(&mid, terms) {
                    Some(Ordering::Greater) => lo = mid,
                    Some(_) => hi = mid,
                    None => terms *= 2,
                }
            }
            Ok((Enclosure::new(lo, hi), terms))
        }
    }
}

/// The expansion base attached to a member of the kneading set that is not
/// purely periodic: the unique q with sum tau_k q^(-k) = 1 over the binary
/// digits of tau.
pub fn lambda_to_univoque(tau: &BinaryExpansion, width: &BigRational) -> Result<(Enclosure, u64)> {
    if !lambda_member(tau) {
        return Err(Error::NotAMember(format!("{tau} is not in the kneading set")));
    }
    if tau.is_purely_periodic() {
        return Err(Error::Domain(format!(
            "{tau} is purely periodic (an odd-denominator rational) and has no expansion-base partner"
        )));
    }
    univoque_q(&SequenceSource::Expansion(tau.clone()), width)
}
