//! Exact simulation of the alpha-continued fraction maps T_alpha and
//! verification of the matching condition: over a maximal quadratic interval
//! with pseudocenter r = [0; a_1, ..., a_n] (n even), the orbits of alpha and
//! alpha - 1 collide as T^(N+1)(alpha) = T^(M+1)(alpha - 1), where N and M are
//! the even- and odd-indexed partial quotient sums of r.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binary::BinaryExpansion;
use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::gaps::{binary_pseudocenter, dyadic_interval, quadratic_interval};
use crate::minkowski::{phi, phi_inv};
use crate::surd::ExactNumber;

/// The collision exponents of a pseudocenter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingExponents {
    /// Sum of the even-indexed partial quotients of the even-length word.
    pub n: u64,
    /// Sum of the odd-indexed partial quotients.
    pub m: u64,
    pub pseudocenter: BigRational,
}

pub fn matching_exponents(r: &BigRational) -> Result<MatchingExponents> {
    let cf = ContinuedFraction::from_rational(r)?;
    let even = cf.even_word()?;
    let mut n = 0u64;
    let mut m = 0u64;
    for (i, &a) in even.iter().enumerate() {
        // 1-based index: odd positions feed M, even positions feed N.
        if (i + 1) % 2 == 0 {
            n += a;
        } else {
            m += a;
        }
    }
    Ok(MatchingExponents { n, m, pseudocenter: r.clone() })
}

/// One step of T_alpha on exact rationals: T(x) = 1/|x| - floor(1/|x| + 1 - alpha),
/// T(0) = 0. The argument must lie in [alpha - 1, alpha].
pub fn talpha_step(alpha: &BigRational, x: &BigRational) -> Result<BigRational> {
    let one = BigRational::one();
    if x < &(alpha - &one) || x > alpha {
        return Err(Error::Domain(format!("{x} outside [{} , {alpha}]", alpha - &one)));
    }
    if x.is_zero() {
        return Ok(BigRational::zero());
    }
    let recip = x.abs().recip();
    let c = (&recip + &one - alpha).floor();
    debug_assert!(c >= one);
    Ok(recip - c)
}

/// T_alpha on exact numbers (rational or quadratic), for orbits at quadratic
/// irrational parameters.
pub fn talpha_step_exact(alpha: &ExactNumber, x: &ExactNumber) -> ExactNumber {
    if x.is_zero() {
        return ExactNumber::Rational(BigRational::zero());
    }
    let recip = x.abs().recip();
    let shifted = recip.add(&alpha.neg()).add_rational(&BigRational::one());
    let c = shifted.floor();
    debug_assert!(c >= BigInt::one());
    recip.add_rational(&BigRational::from_integer(-c))
}

#[derive(Debug, Clone)]
pub struct MatchingReport {
    pub n: u64,
    pub m: u64,
    /// Orbit lengths actually compared: (N + 1, M + 1).
    pub steps: (u64, u64),
    pub holds: bool,
    pub alpha_orbit: Vec<BigRational>,
    pub alpha_minus_one_orbit: Vec<BigRational>,
}

/// Verifies T^(N+1)(alpha) = T^(M+1)(alpha - 1) for a rational alpha strictly
/// inside the quadratic interval of r (the degenerate interval at r = 1 is
/// closed on the right).
pub fn verify_matching(r: &BigRational, alpha: &BigRational) -> Result<MatchingReport> {
    let gap = quadratic_interval(r)?;
    let inside_left = gap.left.value().cmp_rational(alpha).is_lt();
    let inside_right = if gap.closed_right {
        gap.right.value().cmp_rational(alpha).is_ge()
    } else {
        gap.right.value().cmp_rational(alpha).is_gt()
    };
    if !inside_left || !inside_right {
        return Err(Error::Domain(format!("alpha = {alpha} is not inside the interval of {r}")));
    }
    let exps = matching_exponents(r)?;
    let mut alpha_orbit = vec![alpha.clone()];
    for _ in 0..exps.n + 1 {
        let next = talpha_step(alpha, alpha_orbit.last().unwrap())?;
        alpha_orbit.push(next);
    }
    let mut alpha_minus_one_orbit = vec![alpha - BigRational::one()];
    for _ in 0..exps.m + 1 {
        let next = talpha_step(alpha, alpha_minus_one_orbit.last().unwrap())?;
        alpha_minus_one_orbit.push(next);
    }
    let holds = alpha_orbit.last() == alpha_minus_one_orbit.last();
    Ok(MatchingReport {
        n: exps.n,
        m: exps.m,
        steps: (exps.n + 1, exps.m + 1),
        holds,
        alpha_orbit,
        alpha_minus_one_orbit,
    })
}

/// Searches for the first collision T^i(alpha) = T^j(alpha - 1) with
/// 1 <= i, j <= max_steps; None when the orbits never meet within the budget,
/// as happens at bifurcation parameters.
pub fn find_matching(alpha: &ExactNumber, max_steps: usize) -> Option<(usize, usize)> {
    let mut fwd = vec![alpha.clone()];
    for _ in 0..max_steps {
        let next = talpha_step_exact(alpha, fwd.last().unwrap());
        fwd.push(next);
    }
    let mut bwd = vec![alpha.add_rational(&(-BigRational::one()))];
    for _ in 0..max_steps {
        let next = talpha_step_exact(alpha, bwd.last().unwrap());
        bwd.push(next);
    }
    for total in 2..=2 * max_steps {
        for i in 1..total.min(max_steps + 1) {
            let j = total - i;
            if j < 1 || j > max_steps {
                continue;
            }
            if fwd[i].compare(&bwd[j]).is_eq() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Three rational parameters strictly inside the interval of a maximal
/// pseudocenter: the pseudocenter itself plus the preimages of the two binary
/// pseudocenters flanking phi(r) inside the corresponding dyadic gap.
pub fn matching_test_points(r: &BigRational) -> Result<Vec<BigRational>> {
    let cf = ContinuedFraction::from_rational(r)?;
    let d = phi(&cf);
    let gap = dyadic_interval(&d.value())?;
    let (left_mid, _) = binary_pseudocenter(&gap.left, &d)?;
    let (right_mid, _) = binary_pseudocenter(&d, &gap.right)?;
    let mut points = vec![r.clone()];
    for mid in [left_mid, right_mid] {
        let b = BinaryExpansion::from_rational(&mid)?;
        match phi_inv(&b)?.value() {
            ExactNumber::Rational(x) => points.push(x),
            ExactNumber::Quadratic(_) => unreachable!("phi_inv of a dyadic is rational"),
        }
    }
    Ok(points)
}
