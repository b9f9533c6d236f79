//! Real quadratic laminations: chords of the circle under angle doubling,
//! leaf lengths, the minor-leaf criterion for rational angles, and the set of
//! angles of real minor leaves, which is the kneading set halved.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binary::BinaryExpansion;
use crate::error::{Error, Result};
use crate::membership::lambda_member;

/// A chord of the unit circle with endpoints at angles a <= b in [0, 1);
/// degenerate chords (a = b) are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leaf {
    a: BigRational,
    b: BigRational,
}

fn mod_one(x: &BigRational) -> BigRational {
    let f = x - x.floor();
    if f.is_negative() {
        f + BigRational::one()
    } else {
        f
    }
}

impl Leaf {
    pub fn new(x: &BigRational, y: &BigRational) -> Self {
        let (mut a, mut b) = (mod_one(x), mod_one(y));
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        Leaf { a, b }
    }

    pub fn endpoints(&self) -> (&BigRational, &BigRational) {
        (&self.a, &self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// Length of the shorter boundary arc between the endpoints, in [0, 1/2].
    pub fn length(&self) -> BigRational {
        let d = &self.b - &self.a;
        let other = BigRational::one() - &d;
        d.min(other)
    }

    /// Image under angle doubling.
    pub fn image(&self) -> Leaf {
        let two = BigRational::from_integer(BigInt::from(2));
        Leaf::new(&(&self.a * &two), &(&self.b * &two))
    }

    /// Invariant under complex conjugation (angle negation).
    pub fn is_real(&self) -> bool {
        let conj = Leaf::new(
            &(BigRational::one() - &self.b),
            &(BigRational::one() - &self.a),
        );
        *self == conj
    }

    /// The four preimage chords under doubling.
    fn preimages(&self) -> Vec<Leaf> {
        let two = BigRational::from_integer(BigInt::from(2));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut out = Vec::with_capacity(4);
        for da in [BigRational::zero(), half.clone()] {
            for db in [BigRational::zero(), half.clone()] {
                out.push(Leaf::new(&(&self.a / &two + &da), &(&self.b / &two + &db)));
            }
        }
        out
    }
}

/// Whether x lies strictly inside the open arc from s to e counterclockwise.
fn in_open_arc(x: &BigRational, s: &BigRational, e: &BigRational) -> bool {
    if s < e {
        s < x && x < e
    } else {
        x > s || x < e
    }
}

/// Whether two chords cross in the interior of the disk. Shared endpoints and
/// identical chords do not count as crossings.
pub fn chords_cross(l1: &Leaf, l2: &Leaf) -> bool {
    if l1.is_degenerate() || l2.is_degenerate() || l1 == l2 {
        return false;
    }
    let first_inside = in_open_arc(&l2.a, &l1.a, &l1.b);
    let second_inside = in_open_arc(&l2.b, &l1.a, &l1.b);
    let first_outside = in_open_arc(&l2.a, &l1.b, &l1.a);
    let second_outside = in_open_arc(&l2.b, &l1.b, &l1.a);
    (first_inside && second_outside) || (first_outside && second_inside)
}

/// The real minor leaf attached to a kneading-set member x: the chord joining
/// x/2 and 1 - x/2.
pub fn minor_leaf_from_lambda(x: &BinaryExpansion) -> Result<Leaf> {
    if !lambda_member(x) {
        return Err(Error::NotAMember(format!("{x} is not in the kneading set")));
    }
    let v = x.value();
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(Leaf::new(&(&v / &two), &(BigRational::one() - &v / &two)))
}

/// Minor-leaf criterion for a real chord with rational angles, checked
/// exhaustively over the finite forward orbit:
///
/// 1. the leaf is invariant under conjugation (real);
/// 2. distinct forward images never cross;
/// 3. no forward image is shorter than the leaf;
/// 4. for a nondegenerate leaf, no leaf of the forward orbit crosses a
///    preimage chord of length at least 1/3.
pub fn is_minor_leaf(leaf: &Leaf) -> bool {
    if !leaf.is_real() {
        return false;
    }
    let mut orbit = vec![leaf.clone()];
    let mut seen: HashSet<Leaf> = HashSet::new();
    seen.insert(leaf.clone());
    loop {
        let next = orbit.last().unwrap().image();
        if !seen.insert(next.clone()) {
            break;
        }
        orbit.push(next);
    }
    let len = leaf.length();
    for l in &orbit {
        if l.length() < len {
            return false;
        }
    }
    for (i, l1) in orbit.iter().enumerate() {
        for l2 in orbit.iter().skip(i + 1) {
            if chords_cross(l1, l2) {
                return false;
            }
        }
    }
    if !leaf.is_degenerate() {
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        let majors: Vec<Leaf> =
            leaf.preimages().into_iter().filter(|m| m.length() >= third).collect();
        for l in &orbit {
            for m in &majors {
                if chords_cross(l, m) {
                    return false;
                }
            }
        }
    }
    true
}

/// Membership in the angle set of real minor leaves: theta belongs exactly
/// when 2 theta or 2(1 - theta) lands in the kneading set.
pub fn real_ray_member(theta: &BigRational) -> Result<bool> {
    let t = mod_one(theta);
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::one();
    let candidates = [&t * &two, (&one - &t) * &two];
    for c in candidates {
        if c <= one && lambda_member(&BinaryExpansion::from_rational(&c)?) {
            return Ok(true);
        }
    }
    Ok(false)
}
