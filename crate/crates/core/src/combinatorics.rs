//! Integer machinery: cyclotomic cosets modulo 2^m - 1, the exponents
//! delta(i, v) and delta'(i, v), and 1-run decompositions of binary expansions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Binary weight w(x).
pub fn weight(x: u64) -> u32 {
    x.count_ones()
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(t: u64) -> u64 {
    prime_factors(t).into_iter().fold(t, |acc, p| acc / p * (p - 1))
}

pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % modulus as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(modulus as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Cyclotomic coset {s, 2s, 4s, ...} modulo 2^m - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoset {
    modulus: u64,
    leader: u64,
    elements: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn leader(&self) -> u64 {
        self.leader
    }

    /// Members in doubling order starting from the generating element.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// e_s.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Shared binary weight of all members.
    pub fn weight(&self) -> u32 {
        weight(self.leader)
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.contains(&(x % self.modulus))
    }
}

fn modulus_for(m: u32) -> Result<u64> {
    if !(1..=32).contains(&m) {
        return Err(Error::InvalidParameters(format!(
            "coset parameter m = {m} out of range"
        )));
    }
    Ok((1u64 << m) - 1)
}

/// The coset containing `s` modulo 2^m - 1.
pub fn coset_of(s: u64, m: u32) -> Result<CyclotomicCoset> {
    let modulus = modulus_for(m)?;
    let start = if modulus == 1 { 0 } else { s % modulus };
    let mut elements = vec![start];
    let mut x = (2 * start) % modulus.max(1);
    while x != start {
        elements.push(x);
        x = (2 * x) % modulus;
    }
    let leader = *elements.iter().min().expect("coset is nonempty");
    Ok(CyclotomicCoset {
        modulus,
        leader,
        elements,
    })
}

/// All nonzero cosets modulo 2^m - 1, ordered by leader.
pub fn cosets_mod(m: u32) -> Result<Vec<CyclotomicCoset>> {
    if !(2..=16).contains(&m) {
        return Err(Error::InvalidParameters(format!(
            "cosets_mod requires 2 <= m <= 16, got {m}"
        )));
    }
    let modulus = (1u64 << m) - 1;
    let mut seen = vec![false; modulus as usize];
    let mut out = Vec::new();
    for s in 1..modulus {
        if seen[s as usize] {
            continue;
        }
        let c = coset_of(s, m)?;
        for &e in c.elements() {
            seen[e as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

/// Gamma(m): the nonzero coset leaders modulo 2^m - 1.
pub fn coset_leaders(m: u32) -> Result<Vec<u64>> {
    Ok(cosets_mod(m)?.iter().map(CyclotomicCoset::leader).collect())
}

/// Inclusive integer interval [start, end].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: u32,
    pub end: u32,
}

impl Interval {
    pub fn len(&self) -> u32 {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: u32) -> bool {
        (self.start..=self.end).contains(&x)
    }

    /// sum_{x in [start, end]} 2^x.
    pub fn bit_sum(&self) -> u128 {
        ((1u128 << self.len()) - 1) << self.start
    }
}

/// Decomposition of a binary expansion into maximal runs of ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunProfile {
    value: u64,
    intervals: Vec<Interval>,
}

impl RunProfile {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Runs ordered from least to most significant.
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Number of runs R.
    pub fn runs(&self) -> usize {
        self.intervals.len()
    }

    /// Run lengths L_1, ..., L_R.
    pub fn lengths(&self) -> impl Iterator<Item = u32> + '_ {
        self.intervals.iter().map(Interval::len)
    }

    pub fn reconstruct(&self) -> u128 {
        self.intervals.iter().map(Interval::bit_sum).sum()
    }
}

pub fn run_decomposition(x: u64) -> RunProfile {
    let mut intervals = Vec::new();
    let mut rest = x;
    while rest != 0 {
        let start = rest.trailing_zeros();
        let len = (rest >> start).trailing_ones();
        intervals.push(Interval {
            start,
            end: start + len - 1,
        });
        rest &= if start + len >= 64 { 0 } else { !0u64 << (start + len) };
    }
    RunProfile { value: x, intervals }
}

/// u = 1 + 2^m + ... + 2^((k-2)m) for k >= 2, and u = 1 for k = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DefaultU {
    pub u: u64,
    /// gcd(u, 2^mk - 1), computed directly.
    pub gcd_direct: u64,
    /// gcd(k - 1, 2^m - 1); only meaningful for k >= 2.
    pub gcd_reduced: Option<u64>,
}

pub fn default_u(m: u32, k: u32) -> DefaultU {
    let u: u64 = (0..k.saturating_sub(1)).map(|j| 1u64 << (m * j)).sum::<u64>().max(1);
    let gcd_direct = gcd(u, (1u64 << (m * k)) - 1);
    let gcd_reduced = (k >= 2).then(|| gcd(k as u64 - 1, (1u64 << m) - 1));
    DefaultU {
        u,
        gcd_direct,
        gcd_reduced,
    }
}

/// Lexicographic enumeration of V^len with V = {0, ..., k-1}.
pub fn v_tuples(len: usize, k: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (k as u64).checked_pow(len as u32).unwrap_or(0);
    let mut current = vec![0u32; len];
    (0..total).map(move |idx| {
        if idx > 0 {
            for slot in current.iter_mut().rev() {
                *slot += 1;
                if *slot < k {
                    break;
                }
                *slot = 0;
            }
        }
        current.clone()
    })
}

/// One term (i, v) of the monomial expansion, with its exponent
/// delta(i, v) = sum_j u * 2^(m v_j + i_j) and the reduction modulo 2^mk - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTerm {
    pub i: u64,
    /// Bit positions i_1 < ... < i_w of `i`.
    pub bits: Vec<u32>,
    pub v: Vec<u32>,
    pub u: u64,
    pub m: u32,
    pub k: u32,
    pub delta: u128,
    pub delta_prime: u64,
    pub weight_tau: u32,
}

impl DeltaTerm {
    pub fn runs(&self) -> RunProfile {
        run_decomposition(self.delta_prime)
    }
}

pub fn delta(i: u64, v: &[u32], u: u64, m: u32, k: u32) -> Result<DeltaTerm> {
    let base = (1u64 << m) - 1;
    if i == 0 || i >= base {
        return Err(Error::BadExponent { i, modulus: base });
    }
    let bits: Vec<u32> = (0..m).filter(|b| (i >> b) & 1 == 1).collect();
    if v.len() != bits.len() || v.iter().any(|&x| x >= k) {
        return Err(Error::InvalidParameters(format!(
            "v = {v:?} is not in V^{} with V = 0..{k}",
            bits.len()
        )));
    }
    let modulus = (1u64 << (m * k)) - 1;
    let g = gcd(u, modulus);
    if g != 1 {
        return Err(Error::GcdViolation {
            value: u,
            modulus,
            gcd: g,
        });
    }
    let delta: u128 = bits.iter().zip(v).map(|(&ij, &vj)| (u as u128) << (m * vj + ij)).sum();
    let delta_prime = (delta % modulus as u128) as u64;

    if k >= 2 && u == default_u(m, k).u {
        let structured: u64 = bits
            .iter()
            .zip(v)
            .flat_map(|(&ij, &vj)| (0..k - 1).map(move |l| 1u64 << (m * ((vj + l) % k) + ij)))
            .sum();
        if structured != delta_prime {
            return Err(Error::Internal(format!(
                "delta' mismatch for i={i}, v={v:?}: {structured} vs {delta_prime}"
            )));
        }
    }

    Ok(DeltaTerm {
        i,
        bits,
        v: v.to_vec(),
        u,
        m,
        k,
        delta,
        delta_prime,
        weight_tau: weight(delta_prime),
    })
}
