//! Hausdorff dimension of the self-similar segments of the kneading set:
//! multinacci roots, dim C_K = log2(lambda_K), the run-constrained word
//! counting recurrence behind it, and the (non-rigorous) asymptotic reference
//! for the continued fraction side.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enclosure::{log2_enclosure, Enclosure};
use crate::error::{Error, Result};

/// P_K(t) = t^K - (t^(K-1) + ... + t + 1), the characteristic polynomial of
/// the multinacci recurrence.
pub fn characteristic_value(k: u32, t: &BigRational) -> BigRational {
    let mut sum = BigRational::zero();
    let mut power = BigRational::one();
    for _ in 0..k {
        sum += &power;
        power *= t;
    }
    power - sum
}

/// Enclosure of the multinacci number lambda_K, the unique positive root of
/// P_K, by bisection on [1, 2]; P_K(1) = 1 - K < 0 < 1 = P_K(2).
pub fn multinacci_root(k: u32, precision: &BigRational) -> Result<Enclosure> {
    if k < 2 {
        return Err(Error::Domain(format!("multinacci root needs K >= 2, got {k}")));
    }
    let mut lo = BigRational::one();
    let mut hi = BigRational::from_integer(BigInt::from(2));
    while &(&hi - &lo) > precision {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        if characteristic_value(k, &mid) < BigRational::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Enclosure::new(lo, hi))
}

/// Enclosure of dim_H C_K = log2(lambda_K).
pub fn dim_ck(k: u32, precision: &BigRational) -> Result<Enclosure> {
    let half = precision / BigRational::from_integer(BigInt::from(2));
    let root = multinacci_root(k, &half)?;
    let lo = log2_enclosure(root.lo(), &half);
    let hi = log2_enclosure(root.hi(), &half);
    Ok(Enclosure::new(lo.lo().clone(), hi.hi().clone()))
}

/// a_K(n): binary words of n digits starting with 1 and containing no K+1
/// consecutive equal digits. Seeds for n <= K+1 come from the run-length
/// count; beyond that the multinacci recurrence
/// a(n+K) = a(n+K-1) + ... + a(n) takes over.
pub fn count_words(k: u32, n: u32) -> Result<BigUint> {
    if k < 1 || n < 1 {
        return Err(Error::Domain("word counting needs K >= 1 and n >= 1".into()));
    }
    let seed_len = (k + 1).min(n);
    let mut values: Vec<BigUint> = (1..=seed_len).map(|m| count_by_runs(k, m)).collect();
    while (values.len() as u32) < n {
        let start = values.len() - k as usize;
        let next = values[start..].iter().fold(BigUint::zero(), |acc, v| acc + v);
        values.push(next);
    }
    Ok(values.pop().unwrap())
}

/// Exact count by dynamic programming over the length of the current run of
/// equal digits; the seed route, independent of the recurrence.
fn count_by_runs(k: u32, n: u32) -> BigUint {
    let k = k as usize;
    // state r-1: current run of r equal digits, 1 <= r <= K.
    let mut runs = vec![BigUint::zero(); k];
    runs[0] = BigUint::one(); // the leading digit 1
    for _ in 1..n {
        let flip: BigUint = runs.iter().fold(BigUint::zero(), |acc, v| acc + v);
        let mut next = vec![BigUint::zero(); k];
        next[0] = flip;
        for r in 1..k {
            next[r] = runs[r - 1].clone();
        }
        runs = next;
    }
    runs.into_iter().fold(BigUint::zero(), |acc, v| acc + v)
}

/// The asymptotic 1 - 6/(pi^2 K) for the dimension of the K-th continued
/// fraction segment. Reference value only, not a rigorous computation.
pub fn e_side_reference(k: u32) -> f64 {
    assert!(k >= 1);
    1.0 - 6.0 / (std::f64::consts::PI * std::f64::consts::PI * k as f64)
}

/// Everything the dimension table reports for one K.
#[derive(Debug, Clone)]
pub struct DimensionReport {
    pub k: u32,
    pub lambda: Enclosure,
    pub dim_ck: Enclosure,
    /// dim C_(K-1) <= dim Lambda_K <= dim C_K; the lower bound is 0 at K = 2.
    pub sandwich_low: Enclosure,
    pub sandwich_high: Enclosure,
    pub e_reference: f64,
}

pub fn dimension_report(k: u32, precision: &BigRational) -> Result<DimensionReport> {
    if k < 2 {
        return Err(Error::Domain(format!("dimension report needs K >= 2, got {k}")));
    }
    let lambda = multinacci_root(k, precision)?;
    let dim = dim_ck(k, precision)?;
    let low = if k == 2 {
        // C_1 holds only the two alternating words: dimension 0.
        Enclosure::point(BigRational::zero())
    } else {
        dim_ck(k - 1, precision)?
    };
    Ok(DimensionReport {
        k,
        lambda,
        dim_ck: dim.clone(),
        sandwich_low: low,
        sandwich_high: dim,
        e_reference: e_side_reference(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::surd::QuadraticSurd;
    use num_traits::ToPrimitive;

    #[test]
    fn golden_and_tribonacci() {
        let eps = rat(1, 1_000_000_000_000);
        let e = multinacci_root(2, &eps).unwrap();
        // lambda_2 = (1 + sqrt 5)/2.
        let golden = QuadraticSurd::new(
            BigInt::from(1),
            BigInt::from(1),
            BigUint::from(5u32),
            BigInt::from(2),
        );
        assert!(golden.cmp_rational(e.lo()).is_ge());
        assert!(golden.cmp_rational(e.hi()).is_le());
        // lambda_3 = 1.8392867552141611...
        let t = multinacci_root(3, &eps).unwrap();
        assert!(*t.lo() > rat(1_839_286_754, 1_000_000_000));
        assert!(*t.hi() < rat(1_839_286_756, 1_000_000_000));
        assert!(multinacci_root(1, &eps).is_err());
    }

    #[test]
    fn characteristic_brackets() {
        for k in 2..=30 {
            assert_eq!(
                characteristic_value(k, &rat(1, 1)),
                rat(1 - k as i64, 1),
                "P_K(1) at {k}"
            );
            assert_eq!(characteristic_value(k, &rat(2, 1)), rat(1, 1), "P_K(2) at {k}");
            let e = multinacci_root(k, &rat(1, 1_000_000_000)).unwrap();
            assert!(characteristic_value(k, e.lo()) < rat(0, 1));
            assert!(characteristic_value(k, e.hi()) >= rat(0, 1));
        }
    }

    #[test]
    fn dimension_values() {
        let eps = rat(1, 1_000_000_000_000);
        // dim C_2 = log2 golden = 0.6942419136306173...
        let d2 = dim_ck(2, &eps).unwrap();
        assert!(*d2.lo() > rat(694_241_913, 1_000_000_000));
        assert!(*d2.hi() < rat(694_241_914, 1_000_000_000));
        // dim C_3 = 0.8791464216066381...
        let d3 = dim_ck(3, &eps).unwrap();
        assert!(*d3.lo() > rat(879_146_421, 1_000_000_000));
        assert!(*d3.hi() < rat(879_146_422, 1_000_000_000));
    }

    #[test]
    fn dimensions_monotone_below_one() {
        let eps = rat(1, 1_000_000_000_000_000);
        let mut prev: Option<Enclosure> = None;
        for k in 2..=30 {
            let d = dim_ck(k, &eps).unwrap();
            assert!(*d.hi() < rat(1, 1), "dim C_{k} must stay below 1");
            if let Some(p) = prev.take() {
                assert!(p.hi() < d.lo(), "dim C_K not increasing at {k}");
            }
            prev = Some(d);
        }
        let d30 = dim_ck(30, &eps).unwrap();
        assert!(*d30.lo() > rat(99, 100));
    }

    #[test]
    fn count_examples() {
        // K = 1: only the alternating word.
        for n in 1..=12 {
            assert_eq!(count_words(1, n).unwrap(), BigUint::one());
        }
        // K = 2, n = 4: direct enumeration gives 5.
        assert_eq!(count_words(2, 4).unwrap(), BigUint::from(5u32));
        assert!(count_words(0, 3).is_err());
    }

    #[test]
    fn recurrence_matches_enumeration() {
        // Brute force over all words of length n starting with 1.
        for k in 1u32..=4 {
            for n in 1u32..=16 {
                let mut count = 0u64;
                for w in 0u32..(1 << (n - 1)) {
                    let bits: Vec<bool> = std::iter::once(true)
                        .chain((0..n - 1).map(|i| (w >> (n - 2 - i)) & 1 == 1))
                        .collect();
                    let mut longest = 1u32;
                    let mut run = 1u32;
                    for i in 1..bits.len() {
                        if bits[i] == bits[i - 1] {
                            run += 1;
                        } else {
                            run = 1;
                        }
                        longest = longest.max(run);
                    }
                    if longest <= k {
                        count += 1;
                    }
                }
                assert_eq!(
                    count_words(k, n).unwrap(),
                    BigUint::from(count),
                    "count mismatch at K={k}, n={n}"
                );
            }
        }
    }

    #[test]
    fn growth_rate_approaches_root() {
        for k in 2u32..=5 {
            let a60 = count_words(k, 60).unwrap().to_f64().unwrap();
            let a61 = count_words(k, 61).unwrap().to_f64().unwrap();
            let root = multinacci_root(k, &rat(1, 1_000_000_000)).unwrap();
            let mid = root.midpoint().to_f64().unwrap();
            assert!((a61 / a60 - mid).abs() < 1e-3, "growth rate off at K={k}");
        }
    }

    #[test]
    fn reference_values() {
        assert!((e_side_reference(1) - 0.392_072_898_145_973_4).abs() < 1e-12);
        assert!((e_side_reference(10) - 0.939_207_289_814_597_3).abs() < 1e-12);
        assert!(e_side_reference(10_000) > 0.9999);
    }

    #[test]
    fn report_shape() {
        let r = dimension_report(2, &rat(1, 1_000_000_000)).unwrap();
        assert_eq!(*r.sandwich_low.lo(), rat(0, 1));
        assert!(r.lambda.lo() > &rat(1, 1) && r.lambda.hi() < &rat(2, 1));
        assert!(dimension_report(1, &rat(1, 100)).is_err());
        let r5 = dimension_report(5, &rat(1, 1_000_000_000)).unwrap();
        assert!(r5.sandwich_low.hi() < r5.sandwich_high.lo());
    }
}
