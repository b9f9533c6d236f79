//! Connected components of the complements of the bifurcation sets: quadratic
//! intervals on the continued fraction side, dyadic intervals on the binary
//! side, binary pseudocenters, maximality, and the bisection enumeration that
//! produces every gap in order.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::binary::BinaryExpansion;
use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::membership::{e_member, ECriterion};
use crate::minkowski::phi_inv;

/// A gap of the kneading set: the open interval (0.(w*), 0.(w w-hat))
/// associated to the dyadic pseudocenter 0.w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicGap {
    pub pseudocenter: BigRational,
    pub word: Vec<bool>,
    pub left: BinaryExpansion,
    pub right: BinaryExpansion,
    pub depth: usize,
}

/// A gap of the continued fraction bifurcation set: the interval between the
/// two periodic expansions of its rational pseudocenter. The degenerate
/// interval at pseudocenter 1 is closed on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticGap {
    pub pseudocenter: BigRational,
    pub left: ContinuedFraction,
    pub right: ContinuedFraction,
    pub closed_right: bool,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalGap {
    Quadratic(QuadraticGap),
    Dyadic(DyadicGap),
}

impl IntervalGap {
    pub fn depth(&self) -> usize {
        match self {
            IntervalGap::Quadratic(g) => g.depth,
            IntervalGap::Dyadic(g) => g.depth,
        }
    }

    pub fn pseudocenter(&self) -> &BigRational {
        match self {
            IntervalGap::Quadratic(g) => &g.pseudocenter,
            IntervalGap::Dyadic(g) => &g.pseudocenter,
        }
    }
}

/// The quadratic interval I_r of a rational pseudocenter r in (0, 1]: the open
/// interval between [0; (a_1 ... a_n)] and [0; (a_1 ... a_{n-1}, a_n - 1, 1)].
/// I_1 is the degenerate interval from the golden number to 1, closed at 1.
pub fn quadratic_interval(r: &BigRational) -> Result<QuadraticGap> {
    if !r.is_positive() || r > &BigRational::one() {
        return Err(Error::Domain(format!("pseudocenter {r} outside (0, 1]")));
    }
    if r == &BigRational::one() {
        return Ok(QuadraticGap {
            pseudocenter: r.clone(),
            left: ContinuedFraction::new(vec![], vec![1]),
            right: ContinuedFraction::one(),
            closed_right: true,
            depth: 0,
        });
    }
    let cf = ContinuedFraction::from_rational(r)?;
    let (even, odd) = cf.word_pair()?;
    let a = ContinuedFraction::new(vec![], even);
    let b = ContinuedFraction::new(vec![], odd);
    let (left, right) = if a.compare(&b).is_lt() { (a, b) } else { (b, a) };
    Ok(QuadraticGap { pseudocenter: r.clone(), left, right, closed_right: false, depth: 0 })
}

/// The dyadic interval J_d of a dyadic pseudocenter d = 0.w in (0, 1), w
/// ending in 1: the open interval (0.(w*), 0.(w w-hat)).
pub fn dyadic_interval(d: &BigRational) -> Result<DyadicGap> {
    if !d.is_positive() || d >= &BigRational::one() {
        return Err(Error::Domain(format!("dyadic pseudocenter {d} outside (0, 1)")));
    }
    let b = BinaryExpansion::from_rational(d)?;
    if !b.is_dyadic() {
        return Err(Error::Domain(format!("{d} is not dyadic")));
    }
    Ok(dyadic_interval_of_word(b.preperiod().to_vec(), 0))
}

fn dyadic_interval_of_word(word: Vec<bool>, depth: usize) -> DyadicGap {
    debug_assert_eq!(word.last(), Some(&true), "dyadic words end in 1");
    let mut starred = word.clone();
    *starred.last_mut().unwrap() = false;
    let left = BinaryExpansion::new(vec![], starred);
    let mut doubled = word.clone();
    doubled.extend(word.iter().map(|&b| !b));
    let right = BinaryExpansion::new(vec![], doubled);
    let pseudocenter = BinaryExpansion::new(word.clone(), vec![]).value();
    DyadicGap { pseudocenter, word, left, right, depth }
}

/// Binary pseudocenter of [a, b]: the dyadic 0.a_1 ... a_{n-1} 1 where n is
/// the first index at which the expansions differ, reading a in terminating
/// form and b with an all-ones tail if dyadic. Returns the dyadic value and
/// its digit word.
pub fn binary_pseudocenter(
    a: &BinaryExpansion,
    b: &BinaryExpansion,
) -> Result<(BigRational, Vec<bool>)> {
    if a.value() >= b.value() {
        return Err(Error::Domain(format!("pseudocenter needs a < b, got [{a}, {b}]")));
    }
    let mut word = Vec::new();
    let mut i = 0usize;
    loop {
        let (da, db) = (a.digit(i), b.digit_upper(i));
        if da != db {
            debug_assert!(db && !da);
            word.push(true);
            let value = BinaryExpansion::new(word.clone(), vec![]).value();
            return Ok((value, word));
        }
        word.push(da);
        i += 1;
    }
}

/// A quadratic interval is maximal exactly when both endpoints belong to the
/// bifurcation set.
pub fn is_maximal(r: &BigRational) -> Result<bool> {
    if r == &BigRational::one() {
        return Ok(true);
    }
    let gap = quadratic_interval(r)?;
    Ok(e_member(&gap.left, ECriterion::Gauss) && e_member(&gap.right, ECriterion::Gauss))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BisectSpace {
    /// The kneading set in [0, 1]; gaps are dyadic intervals.
    Lambda,
    /// The continued fraction bifurcation set; gaps are quadratic intervals,
    /// obtained from the binary side through the inverse correspondence.
    E,
}

/// Bisection enumeration of gap components: starting from [0, 1], each
/// generation removes from every nondegenerate component the dyadic interval
/// of its binary pseudocenter. Returns all gaps of generations 1..=depth,
/// sorted by left endpoint.
pub fn bisect_enumerate(space: BisectSpace, depth: usize) -> Vec<IntervalGap> {
    let mut components: Vec<(BinaryExpansion, BinaryExpansion)> =
        vec![(BinaryExpansion::zero(), BinaryExpansion::one())];
    let mut gaps: Vec<DyadicGap> = Vec::new();
    for generation in 1..=depth {
        let mut next = Vec::with_capacity(components.len() * 2);
        for (left, right) in components {
            let (_, word) = binary_pseudocenter(&left, &right)
                .expect("components are nondegenerate by construction");
            let gap = dyadic_interval_of_word(word, generation);
            debug_assert!(gap.left.value() >= left.value());
            debug_assert!(gap.right.value() <= right.value());
            if left != gap.left {
                next.push((left, gap.left.clone()));
            }
            if gap.right != right {
                next.push((gap.right.clone(), right));
            }
            gaps.push(gap);
        }
        components = next;
    }
    match space {
        BisectSpace::Lambda => {
            gaps.sort_by(|a, b| a.left.value().cmp(&b.left.value()));
            gaps.into_iter().map(IntervalGap::Dyadic).collect()
        }
        BisectSpace::E => {
            let mut mapped: Vec<QuadraticGap> = gaps
                .into_iter()
                .map(|g| {
                    let left = phi_inv(&g.right).expect("gap endpoints lie in [1/2, 1]");
                    let (right, closed_right) = if g.left.is_zero() {
                        (ContinuedFraction::one(), true)
                    } else {
                        (phi_inv(&g.left).expect("nonzero endpoints lie in [1/2, 1]"), false)
                    };
                    let d = BinaryExpansion::from_rational(&g.pseudocenter)
                        .expect("pseudocenter is dyadic");
                    let pseudocenter = match phi_inv(&d).expect("dyadic maps to rational").value()
                    {
                        crate::surd::ExactNumber::Rational(x) => x,
                        crate::surd::ExactNumber::Quadratic(_) => {
                            unreachable!("phi_inv of a dyadic is rational")
                        }
                    };
                    QuadraticGap { pseudocenter, left, right, closed_right, depth: g.depth }
                })
                .collect();
            mapped.sort_by(|a, b| a.left.compare(&b.left));
            mapped.into_iter().map(IntervalGap::Quadratic).collect()
        }
    }
}
