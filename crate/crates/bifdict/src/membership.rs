//! Decidable membership tests for the three bifurcation-type sets on
//! eventually periodic inputs:
//!
//! * the kneading set  Lambda = { x : T^k(x) <= x for all k },
//! * the continued fraction bifurcation set, characterized by any of the
//!   three equivalent orbit conditions of the Gauss map, the Farey map, or
//!   the Farey map seen through the inverse branch psi_1,
//! * the Allouche-Cosnard set  Gamma = { x : 1-x <= {2^k x} <= x for all k }.
//!
//! All orbits of eventually periodic points are finite once collected up to
//! the first repetition, so every test below terminates and is exact.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::binary::BinaryExpansion;
use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::minkowski::psi1;

/// Which of the three equivalent orbit conditions decides membership in the
/// continued fraction bifurcation set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ECriterion {
    /// G^k(x) >= x for all k.
    Gauss,
    /// F^k(x) >= x for all k.
    Farey,
    /// F^k(psi_1(x)) <= psi_1(x) for all k.
    Psi1,
}

/// One tent map step on exact rationals in [0, 1].
pub fn tent_value_step(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let doubled = x * &two;
    if doubled <= BigRational::one() {
        doubled
    } else {
        two - doubled
    }
}

/// Membership in the kneading set: every tent iterate stays at or below the
/// point.
pub fn lambda_member(b: &BinaryExpansion) -> bool {
    let x = b.value();
    let mut seen = HashSet::new();
    let mut cur = x.clone();
    loop {
        cur = tent_value_step(&cur);
        if cur > x {
            return false;
        }
        if !seen.insert(cur.clone()) {
            return true;
        }
    }
}

/// Membership in Gamma: every shift {2^k x} lies in [1-x, x]. The k = 0 term
/// already forces x >= 1/2, and 0 fails it, matching Gamma = Lambda minus 0.
pub fn gamma_member(b: &BinaryExpansion) -> bool {
    let x = b.value();
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut cur = if x == one { BigRational::from_integer(BigInt::from(0)) } else { x.clone() };
    let mut seen = HashSet::new();
    loop {
        if cur > x || &one - &cur > x {
            return false;
        }
        if !seen.insert(cur.clone()) {
            return true;
        }
        cur *= &two;
        if cur >= one {
            cur -= &one;
        }
    }
}

/// Membership in the continued fraction bifurcation set, decided by the
/// selected orbit criterion over the finite orbit closure.
pub fn e_member(x: &ContinuedFraction, criterion: ECriterion) -> bool {
    match criterion {
        ECriterion::Gauss => {
            orbit_stays(x, |c| c.gauss_step(), |probe, base| probe.compare(base).is_ge())
        }
        ECriterion::Farey => {
            orbit_stays(x, |c| c.farey_step(), |probe, base| probe.compare(base).is_ge())
        }
        ECriterion::Psi1 => {
            let y = psi1(x);
            orbit_stays(&y, |c| c.farey_step(), |probe, base| probe.compare(base).is_le())
        }
    }
}

fn orbit_stays(
    base: &ContinuedFraction,
    step: impl Fn(&ContinuedFraction) -> ContinuedFraction,
    ok: impl Fn(&ContinuedFraction, &ContinuedFraction) -> bool,
) -> bool {
    let mut seen = HashSet::new();
    let mut cur = base.clone();
    loop {
        cur = step(&cur);
        if !ok(&cur, base) {
            return false;
        }
        if !seen.insert(cur.clone()) {
            return true;
        }
    }
}

/// Topological type of a purely periodic member of the continued fraction
/// bifurcation set: periodic points of odd minimal period are exactly the
/// isolated points, those of even minimal period are limits of the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EPointClass {
    Isolated,
    Limit,
}

pub fn classify_e_point(x: &ContinuedFraction) -> Result<EPointClass> {
    if !x.is_purely_periodic() {
        return Err(Error::Domain(format!(
            "{x} is not purely periodic, classification applies to periodic points only"
        )));
    }
    if !e_member(x, ECriterion::Gauss) {
        return Err(Error::NotAMember(format!("{x} is not in the bifurcation set")));
    }
    if x.period().len() % 2 == 1 {
        Ok(EPointClass::Isolated)
    } else {
        Ok(EPointClass::Limit)
    }
}
