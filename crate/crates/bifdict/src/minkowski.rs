//! Minkowski's question-mark function and friends: the exact translation
//! between continued fraction structure and binary block structure, the
//! inverse branch psi_1(x) = 1/(1+x) of the Farey map, and the composition
//! phi = ? . psi_1, an orientation-reversing homeomorphism of [0, 1] onto
//! [1/2, 1] that carries one bifurcation set onto the other.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::binary::BinaryExpansion;
use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};

/// Holder exponent of the question-mark function,
/// log 2 / (2 log((1 + sqrt 5)/2)). Documented constant, not computed.
pub const QUESTION_MARK_HOLDER_EXPONENT: f64 = 0.720_210_045_206_278_2;

/// ?(x): for a terminating expansion the finite alternating sum
/// sum (-1)^(k-1) 2^(-(a_1+...+a_k-1)), a dyadic rational; for a periodic
/// expansion the digit-block picture 0.0^(a_1-1) 1^(a_2) 0^(a_3) ...
pub fn question_mark(x: &ContinuedFraction) -> BinaryExpansion {
    if x.is_finite() {
        let mut sum = BigRational::zero();
        let mut exponent = 0u64;
        for (k, &a) in x.preperiod().iter().enumerate() {
            exponent += a;
            let shift: u32 = (exponent - 1).try_into().expect("digit block fits in memory");
            let term = BigRational::new(BigInt::one(), BigInt::from(2).pow(shift));
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        return BinaryExpansion::from_rational(&sum).expect("?(x) lies in [0, 1]");
    }
    let n = x.preperiod().len();
    let m = x.period().len();
    let reps = if m % 2 == 0 { 1 } else { 2 };
    let head = n.max(1);
    let block = |k: usize| -> (bool, u64) {
        // 1-based block index k: the k-th block has a_k digits (a_1 - 1 for
        // the first) of value 1 when k is even.
        let len = x.quotient(k - 1).expect("periodic expansions never terminate");
        (k % 2 == 0, if k == 1 { len - 1 } else { len })
    };
    let mut pre = Vec::new();
    for k in 1..=head {
        let (bit, len) = block(k);
        pre.extend(std::iter::repeat(bit).take(len as usize));
    }
    let mut per = Vec::new();
    for k in head + 1..=head + m * reps {
        let (bit, len) = block(k);
        per.extend(std::iter::repeat(bit).take(len as usize));
    }
    BinaryExpansion::new(pre, per)
}

/// Inverse of the question-mark function: reads partial quotients off the
/// maximal digit runs of the binary stream.
pub fn question_mark_inv(b: &BinaryExpansion) -> ContinuedFraction {
    if b.is_zero() {
        return ContinuedFraction::zero();
    }
    if b.is_one() {
        return ContinuedFraction::one();
    }
    if b.is_dyadic() {
        let digits = b.preperiod();
        let mut quotients: Vec<u64> = Vec::new();
        let mut i = 0usize;
        while i < digits.len() {
            let bit = digits[i];
            let mut len = 1u64;
            while i + (len as usize) < digits.len() && digits[i + len as usize] == bit {
                len += 1;
            }
            if i == 0 {
                if bit {
                    quotients.push(1);
                    quotients.push(len);
                } else {
                    quotients.push(len + 1);
                }
            } else {
                quotients.push(len);
            }
            i += len as usize;
        }
        return ContinuedFraction::new(quotients, vec![]);
    }
    // Eventually periodic, non-dyadic: the run structure eventually repeats.
    // A run starting twice at the same phase of the binary period closes the
    // quotient period; the first run is excluded because its quotient gets
    // the a_1 adjustment.
    let pre_len = b.preperiod().len();
    let per_len = b.period().len();
    let mut quotients: Vec<u64> = Vec::new();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut p = 0usize;
    loop {
        if p >= pre_len && !quotients.is_empty() {
            let phase = (p - pre_len) % per_len;
            if let Some(&idx) = seen.get(&phase) {
                let per = quotients.split_off(idx);
                return ContinuedFraction::new(quotients, per);
            }
            seen.insert(phase, quotients.len());
        }
        let bit = b.digit(p);
        let mut len = 1u64;
        while b.digit(p + len as usize) == bit {
            len += 1;
        }
        if p == 0 {
            if bit {
                quotients.push(1);
                quotients.push(len);
            } else {
                quotients.push(len + 1);
            }
        } else {
            quotients.push(len);
        }
        p += len as usize;
    }
}

/// psi_1(x) = 1/(1+x), symbolically the prepending of a partial quotient 1.
pub fn psi1(x: &ContinuedFraction) -> ContinuedFraction {
    x.prepend(1)
}

/// Inverse of psi_1; defined on [1/2, 1].
pub fn psi1_inv(x: &ContinuedFraction) -> Result<ContinuedFraction> {
    match x.quotient(0) {
        Some(1) => Ok(x.gauss_step()),
        Some(2) if x == &ContinuedFraction::new(vec![2], vec![]) => Ok(ContinuedFraction::one()),
        _ => Err(Error::Domain(format!("psi1_inv of {x}, a value below 1/2"))),
    }
}

/// phi = ? . psi_1: [0, 1] -> [1/2, 1], orientation reversing.
pub fn phi(x: &ContinuedFraction) -> BinaryExpansion {
    question_mark(&psi1(x))
}

/// Inverse of phi; defined for binary values in [1/2, 1].
pub fn phi_inv(b: &BinaryExpansion) -> Result<ContinuedFraction> {
    psi1_inv(&question_mark_inv(b))
        .map_err(|_| Error::Domain(format!("phi_inv of {b}, a value below 1/2")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    fn bin(s: &str) -> BinaryExpansion {
        s.parse().unwrap()
    }

    fn cf_of(p: i64, q: i64) -> ContinuedFraction {
        ContinuedFraction::from_rational(&rat(p, q)).unwrap()
    }

    #[test]
    fn question_mark_golden_values() {
        // ?(5/7) = 13/16.
        assert_eq!(question_mark(&cf_of(5, 7)).value(), rat(13, 16));
        // ?(1/2) = 1/2.
        assert_eq!(question_mark(&cf_of(1, 2)).value(), rat(1, 2));
        // ?(g) = 2/3 where g = [0;(1)].
        assert_eq!(question_mark(&cf("[0;(1)]")), bin("0.(10)"));
        // ?((3-sqrt 5)/2) = 1/3.
        assert_eq!(question_mark(&cf("[0;2,(1)]")), bin("0.(01)"));
        // ?(0) = 0, ?(1) = 1.
        assert_eq!(question_mark(&ContinuedFraction::zero()), BinaryExpansion::zero());
        assert_eq!(question_mark(&ContinuedFraction::one()), BinaryExpansion::one());
    }

    #[test]
    fn question_mark_inverse_golden_values() {
        assert_eq!(question_mark_inv(&bin("0.1101")), cf_of(5, 7));
        assert_eq!(question_mark_inv(&bin("0.1")), cf_of(1, 2));
        assert_eq!(question_mark_inv(&bin("0.(10)")), cf("[0;(1)]"));
        assert_eq!(question_mark_inv(&bin("0.(01)")), cf("[0;2,(1)]"));
    }

    #[test]
    fn rational_round_trip_and_type_mapping() {
        for q in 1i64..=60 {
            for p in 0..=q {
                let x = cf_of(p, q);
                let img = question_mark(&x);
                // Rational iff dyadic image.
                assert!(img.is_dyadic(), "?({p}/{q}) must be dyadic");
                assert_eq!(question_mark_inv(&img), x, "round trip at {p}/{q}");
            }
        }
    }

    fn random_cf(rng: &mut ChaCha8Rng) -> ContinuedFraction {
        let pre_len = rng.gen_range(0..4);
        let per_len = rng.gen_range(1..5);
        let pre: Vec<u64> = (0..pre_len).map(|_| rng.gen_range(1..5)).collect();
        let per: Vec<u64> = (0..per_len).map(|_| rng.gen_range(1..5)).collect();
        ContinuedFraction::new(pre, per)
    }

    #[test]
    fn periodic_round_trip_and_type_mapping() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = random_cf(&mut rng);
            let img = question_mark(&x);
            // Quadratic irrational iff non-dyadic rational image.
            assert!(!img.is_dyadic(), "?({x}) must not be dyadic");
            assert_eq!(question_mark_inv(&img), x, "round trip at {x}");
        }
    }

    #[test]
    fn conjugates_farey_to_tent() {
        for q in 1i64..=60 {
            for p in 0..=q {
                let x = cf_of(p, q);
                assert_eq!(
                    question_mark(&x.farey_step()),
                    question_mark(&x).tent_step(),
                    "?(F(x)) != T(?(x)) at {p}/{q}"
                );
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let x = random_cf(&mut rng);
            assert_eq!(
                question_mark(&x.farey_step()),
                question_mark(&x).tent_step(),
                "?(F(x)) != T(?(x)) at {x}"
            );
        }
    }

    #[test]
    fn functional_equation() {
        // ?(x) + ?(1-x) = 1 for rationals.
        let one = BigRational::one();
        for q in 1i64..=60 {
            for p in 0..=q {
                let x = rat(p, q);
                let a = question_mark(&ContinuedFraction::from_rational(&x).unwrap()).value();
                let b = question_mark(&ContinuedFraction::from_rational(&(&one - &x)).unwrap())
                    .value();
                assert_eq!(a + b, one, "functional equation at {p}/{q}");
            }
        }
    }

    #[test]
    fn monotone_increasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let (p1, q1) = (rng.gen_range(0..=100i64), rng.gen_range(1..=100i64));
            let (p2, q2) = (rng.gen_range(0..=100i64), rng.gen_range(1..=100i64));
            let (x, y) = (rat(p1.min(q1), q1), rat(p2.min(q2), q2));
            let qx = question_mark(&ContinuedFraction::from_rational(&x).unwrap()).value();
            let qy = question_mark(&ContinuedFraction::from_rational(&y).unwrap()).value();
            assert_eq!(x.cmp(&y), qx.cmp(&qy));
        }
    }

    #[test]
    fn psi1_golden_values() {
        assert_eq!(psi1(&cf_of(2, 5)), cf_of(5, 7));
        assert_eq!(psi1(&ContinuedFraction::zero()), ContinuedFraction::one());
        assert_eq!(psi1(&cf("[0;(1)]")), cf("[0;(1)]")); // fixed point g
        assert_eq!(psi1(&cf("[0;3,(2,1)]")), cf("[0;1,3,(2,1)]"));
        assert_eq!(psi1_inv(&cf_of(5, 7)).unwrap(), cf_of(2, 5));
        assert_eq!(psi1_inv(&ContinuedFraction::one()).unwrap(), ContinuedFraction::zero());
        assert_eq!(psi1_inv(&cf_of(1, 2)).unwrap(), ContinuedFraction::one());
        assert!(psi1_inv(&cf_of(2, 5)).is_err());
    }

    #[test]
    fn phi_golden_values() {
        // phi(2/5) = 13/16.
        assert_eq!(phi(&cf_of(2, 5)).value(), rat(13, 16));
        // Endpoint images, orientation reversal.
        assert_eq!(phi(&ContinuedFraction::one()).value(), rat(1, 2));
        assert_eq!(phi(&ContinuedFraction::zero()), BinaryExpansion::one());
        // phi((3-sqrt 5)/2) = 5/6.
        assert_eq!(phi(&cf("[0;2,(1)]")), bin("0.1(10)"));
        assert_eq!(bin("0.1(10)").value(), rat(5, 6));
        // Inverses.
        assert_eq!(phi_inv(&bin("0.1101")).unwrap(), cf_of(2, 5));
        assert_eq!(phi_inv(&bin("0.1(10)")).unwrap(), cf("[0;2,(1)]"));
        assert!(phi_inv(&bin("0.01")).is_err());
    }

    #[test]
    fn phi_reverses_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..200 {
            let x = random_cf(&mut rng);
            let y = random_cf(&mut rng);
            if x == y {
                continue;
            }
            assert_eq!(x.compare(&y), phi(&y).compare(&phi(&x)), "phi order at {x}, {y}");
        }
    }
}
