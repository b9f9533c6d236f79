//! Period-doubling machinery on both sides of the correspondence.
//!
//! Binary side: the word map Delta(eta) = eta 1 eta-hat generates windows of
//! isolated points tau_j(eta) = 0.(Delta^j(eta) 0), with closed forms
//! P_j/Q_j, pseudocenters d_j = (P_j+1)/(Q_j+1), and a limit expressed through
//! the lacunary product Xi(z) = prod (1 - z^(2^k)) whose power-series signs
//! are the Thue-Morse sequence.
//!
//! Continued fraction side: the two words S_0, S_1 of a maximal pseudocenter
//! generate the substitution cascade S_1 -> S_1 S_0, S_0 -> S_1 S_1, whose
//! periodic values alpha_n descend to a limit with aperiodic expansion
//! governed by the same Thue-Morse combinatorics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binary::BinaryExpansion;
use crate::cf::ContinuedFraction;
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::gaps::is_maximal;
use crate::membership::lambda_member;

/// Delta(eta) = eta 1 eta-hat.
pub fn delta(eta: &[bool]) -> Vec<bool> {
    let mut out = Vec::with_capacity(2 * eta.len() + 1);
    out.extend_from_slice(eta);
    out.push(true);
    out.extend(eta.iter().map(|&b| !b));
    out
}

/// Thue-Morse bit t_n: parity of the binary digit sum of n.
pub fn thue_morse(n: u64) -> bool {
    n.count_ones() % 2 == 1
}

/// Xi(z) = prod_{k >= 0} (1 - z^(2^k)) for rational 0 <= z < 1, enclosed by a
/// partial product and the tail bound 2 z^(2^m) / (1 - z) valid once
/// z^(2^m) <= 1/2.
pub fn xi_eval(z: &BigRational, target_error: &BigRational) -> Result<Enclosure> {
    if z.is_negative() || z >= &BigRational::one() {
        return Err(Error::Domain(format!("Xi is evaluated on [0, 1), got {z}")));
    }
    if z.is_zero() {
        return Ok(Enclosure::point(BigRational::one()));
    }
    let one = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));
    let mut power = z.clone(); // z^(2^m)
    let mut partial = BigRational::one();
    loop {
        let tail = &two * &power / (&one - z);
        if power <= half && &tail <= target_error {
            let lo = &partial * (&one - tail);
            return Ok(Enclosure::new(lo.max(BigRational::zero()), partial));
        }
        partial *= &one - &power;
        power = &power * &power;
    }
}

/// A period-doubling window of the kneading set, generated by a finite word
/// eta for which 0.(eta 0) is a member with minimal period eta 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicWindow {
    eta: Vec<bool>,
}

impl PeriodicWindow {
    pub fn new(eta: Vec<bool>) -> Result<Self> {
        let tau0 = Self::tau0_expansion(&eta);
        if !eta.is_empty() {
            let full_period = eta.len() + 1;
            if !tau0.is_purely_periodic() || tau0.period().len() != full_period {
                return Err(Error::Domain(format!(
                    "window word {} 0 is not a minimal period",
                    word_string(&eta)
                )));
            }
        }
        if !lambda_member(&tau0) {
            return Err(Error::NotAMember(format!(
                "tau_0 of window word {} is not in the kneading set",
                word_string(&eta)
            )));
        }
        Ok(PeriodicWindow { eta })
    }

    pub fn eta(&self) -> &[bool] {
        &self.eta
    }

    fn tau0_expansion(eta: &[bool]) -> BinaryExpansion {
        let mut word = eta.to_vec();
        word.push(false);
        BinaryExpansion::new(vec![], word)
    }

    /// (P_j, Q_j) of the closed-form recursion
    /// P_0 = int(eta 0), Q_j = 2^(2^j (p+1)) - 1, P_{j+1} = (P_j + 2) Q_j.
    fn closed_form(&self, j: u32) -> (BigInt, BigInt) {
        let p1 = (self.eta.len() + 1) as u64;
        let mut p_j = BigInt::zero();
        for &b in &self.eta {
            p_j = p_j * 2 + BigInt::from(b as u8);
        }
        p_j *= 2; // trailing 0 of eta 0
        let exponent_of = |level: u32| -> u32 {
            let e = (1u64 << level) * p1;
            u32::try_from(e).expect("period-doubling level too deep")
        };
        for level in 0..j {
            let q_level = BigInt::from(2).pow(exponent_of(level)) - BigInt::one();
            p_j = (p_j + BigInt::from(2)) * q_level;
        }
        let q_j = BigInt::from(2).pow(exponent_of(j)) - BigInt::one();
        (p_j, q_j)
    }

    /// tau_j by the closed form P_j / Q_j.
    pub fn tau(&self, j: u32) -> BigRational {
        let (p, q) = self.closed_form(j);
        BigRational::new(p, q)
    }

    /// tau_j by direct word construction 0.(Delta^j(eta) 0); the independent
    /// route against which the closed form is checked.
    pub fn tau_by_words(&self, j: u32) -> BigRational {
        let mut word = self.eta.clone();
        for _ in 0..j {
            word = delta(&word);
        }
        Self::tau0_expansion(&word).value()
    }

    /// Binary pseudocenter d_j = (P_j + 1)/(Q_j + 1) of [tau_j, tau_{j+1}].
    pub fn pseudocenter(&self, j: u32) -> BigRational {
        let (p, q) = self.closed_form(j);
        BigRational::new(p + BigInt::one(), q + BigInt::one())
    }

    /// Enclosure of the window limit tau_infinity = 1 - (1 - d_0) Xi(2^-(p+1)).
    pub fn tau_infinity(&self, target_error: &BigRational) -> Enclosure {
        let p1 = (self.eta.len() + 1) as u32;
        let z = BigRational::new(BigInt::one(), BigInt::from(2).pow(p1));
        let xi = xi_eval(&z, target_error).expect("0 < z < 1");
        let one_minus_d0 = BigRational::one() - self.pseudocenter(0);
        xi.one_minus_scaled(&one_minus_d0)
    }
}

fn word_string(word: &[bool]) -> String {
    if word.is_empty() {
        "(empty)".to_string()
    } else {
        word.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// The substitution cascade of a maximal pseudocenter r: block words over
/// {S_0, S_1} with Sigma_1 = S_1 and S_1 -> S_1 S_0, S_0 -> S_1 S_1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfCascade {
    pseudocenter: BigRational,
    s0: Vec<u64>,
    s1: Vec<u64>,
}

impl CfCascade {
    pub fn new(r: &BigRational) -> Result<Self> {
        if !r.is_positive() || r >= &BigRational::one() {
            return Err(Error::Domain(format!("cascade pseudocenter {r} outside (0, 1)")));
        }
        if !is_maximal(r)? {
            return Err(Error::NotAMember(format!("{r} is not a maximal pseudocenter")));
        }
        let cf = ContinuedFraction::from_rational(r)?;
        let (even, odd) = cf.word_pair()?;
        Ok(CfCascade { pseudocenter: r.clone(), s0: even, s1: odd })
    }

    pub fn pseudocenter(&self) -> &BigRational {
        &self.pseudocenter
    }

    pub fn s0(&self) -> &[u64] {
        &self.s0
    }

    pub fn s1(&self) -> &[u64] {
        &self.s1
    }

    /// Sigma_n as a word of block indices (true = S_1, false = S_0).
    pub fn block_word(&self, n: u32) -> Vec<bool> {
        if n == 0 {
            return vec![false];
        }
        let mut word = vec![true];
        for _ in 1..n {
            word = substitute(&word);
        }
        word
    }

    /// A prefix of the limit block word; the substitution is prefix-stable.
    pub fn limit_blocks(&self, count: usize) -> Vec<bool> {
        let mut word = vec![true];
        while word.len() < count {
            word = substitute(&word);
        }
        word.truncate(count);
        word
    }

    fn expand_blocks(&self, blocks: &[bool]) -> Vec<u64> {
        let mut quotients = Vec::new();
        for &b in blocks {
            quotients.extend_from_slice(if b { &self.s1 } else { &self.s0 });
        }
        quotients
    }

    /// A prefix of the partial quotients of the limit point.
    pub fn limit_quotients(&self, count: usize) -> Vec<u64> {
        let per_block = self.s0.len().min(self.s1.len()).max(1);
        let mut quotients = self.expand_blocks(&self.limit_blocks(count / per_block + 1));
        quotients.truncate(count);
        quotients
    }

    /// alpha_n = [0; (Sigma_n repeated)].
    pub fn alpha(&self, n: u32) -> ContinuedFraction {
        ContinuedFraction::new(vec![], self.expand_blocks(&self.block_word(n)))
    }

    /// Enclosure of alpha_infinity = lim alpha_n from consecutive convergents
    /// of the limit expansion.
    pub fn alpha_infinity(&self, target_error: &BigRational) -> Enclosure {
        let mut supply = 32usize;
        loop {
            let quotients = self.limit_quotients(supply);
            // Convergents h_k / k_k of [0; a_1, a_2, ...].
            let (mut h_prev, mut h) = (BigInt::one(), BigInt::zero());
            let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
            let mut last: Option<BigRational> = None;
            for &a in &quotients {
                let h_next = BigInt::from(a) * &h + &h_prev;
                let k_next = BigInt::from(a) * &k + &k_prev;
                h_prev = std::mem::replace(&mut h, h_next);
                k_prev = std::mem::replace(&mut k, k_next);
                let conv = BigRational::new(h.clone(), k.clone());
                if let Some(prev) = last.take() {
                    if (&prev - &conv).abs() <= *target_error {
                        let (lo, hi) = if prev < conv { (prev, conv) } else { (conv, prev) };
                        return Enclosure::new(lo, hi);
                    }
                }
                last = Some(conv);
            }
            supply *= 2;
        }
    }
}

fn substitute(word: &[bool]) -> Vec<bool> {
    let mut out = Vec::with_capacity(word.len() * 2);
    for &b in word {
        if b {
            out.extend_from_slice(&[true, false]);
        } else {
            out.extend_from_slice(&[true, true]);
        }
    }
    out
}
