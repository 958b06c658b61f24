//! Ideal-autocorrelation index sets and their period 2^m - 1 base sequences.
//!
//! An index set I is a union of cyclotomic cosets modulo 2^m - 1; the base
//! sequence is a(t) = sum_{i in I} beta^(i t), which lies in GF(2) because I
//! is closed under doubling.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{coset_leaders, coset_of, gcd, is_prime, mod_inverse};
use crate::correlation::autocorrelation_profile;
use crate::error::{Error, Result};
use crate::gf2::{FieldElement, FieldTower};
use crate::sequence::BinarySequence;

/// A union of nonzero cyclotomic cosets modulo 2^m - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    m: u32,
    leaders: BTreeSet<u64>,
    members: BTreeSet<u64>,
    zeta: Option<u8>,
}

/// Wire form: `{"m": .., "leaders": [..], "zeta": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSetJson {
    pub m: u32,
    pub leaders: Vec<u64>,
    #[serde(default)]
    pub zeta: Option<u8>,
}

impl IndexSet {
    /// The union of the cosets containing each given integer.
    pub fn from_leaders(m: u32, leaders: impl IntoIterator<Item = u64>) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::InvalidParameters(format!(
                "index set needs 2 <= m <= 16, got {m}"
            )));
        }
        let modulus = (1u64 << m) - 1;
        let mut set = Self {
            m,
            leaders: BTreeSet::new(),
            members: BTreeSet::new(),
            zeta: None,
        };
        for s in leaders {
            if s == 0 || s >= modulus {
                return Err(Error::BadExponent { i: s, modulus });
            }
            let coset = coset_of(s, m)?;
            set.leaders.insert(coset.leader());
            set.members.extend(coset.elements().iter().copied());
        }
        Ok(set)
    }

    /// I = C_1: the m-sequence tr^m_1(beta^t).
    pub fn m_sequence(m: u32) -> Result<Self> {
        Self::from_leaders(m, [1])
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// I intersected with Gamma(m).
    pub fn leaders(&self) -> &BTreeSet<u64> {
        &self.leaders
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.members.contains(&(i % self.modulus()))
    }

    pub fn zeta(&self) -> Option<u8> {
        self.zeta
    }

    pub fn with_zeta(mut self, zeta: Option<u8>) -> Self {
        self.zeta = zeta;
        self
    }

    /// Whether 2^(m-1) - 1 is a member.
    pub fn is_normalized(&self) -> bool {
        self.contains((1u64 << (self.m - 1)) - 1)
    }

    /// Smallest member coprime to 2^m - 1.
    pub fn unit_element(&self) -> Option<u64> {
        let modulus = self.modulus();
        self.members.iter().copied().find(|&i| gcd(i, modulus) == 1)
    }

    /// d * I modulo 2^m - 1, for d coprime to the modulus.
    pub fn scaled(&self, d: u64) -> Result<Self> {
        let modulus = self.modulus();
        let g = gcd(d % modulus, modulus);
        if g != 1 {
            return Err(Error::GcdViolation {
                value: d,
                modulus,
                gcd: g,
            });
        }
        Self::from_leaders(
            self.m,
            self.leaders
                .iter()
                .map(|&l| ((l as u128 * d as u128) % modulus as u128) as u64),
        )
    }

    /// Comma-separated coset leaders.
    pub fn leaders_csv(&self) -> String {
        self.leaders.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn to_json(&self) -> IndexSetJson {
        IndexSetJson {
            m: self.m,
            leaders: self.leaders.iter().copied().collect(),
            zeta: self.zeta,
        }
    }

    pub fn from_json(json: &IndexSetJson) -> Result<Self> {
        Ok(Self::from_leaders(json.m, json.leaders.iter().copied())?.with_zeta(json.zeta))
    }
}

/// Evaluates t -> sum_{i in exponents} beta^(i t) over one period of beta.
/// Fails with `ValueNotBinary` when a value falls outside GF(2).
pub fn power_sum_sequence(tower: &FieldTower, exponents: &[u64]) -> Result<BinarySequence> {
    let period = tower.base_order() as usize;
    let beta = tower.beta();
    let mut steps: Vec<FieldElement> = exponents.iter().map(|&i| tower.pow(beta, i)).collect();
    let mut current = vec![FieldElement::ONE; exponents.len()];
    let mut bits = Vec::with_capacity(period);
    for t in 0..period {
        let value = current.iter().fold(FieldElement::ZERO, |acc, &x| tower.add(acc, x));
        match value {
            FieldElement::ZERO => bits.push(false),
            FieldElement::ONE => bits.push(true),
            _ => return Err(Error::ValueNotBinary { t: t as u64 }),
        }
        for (x, step) in current.iter_mut().zip(steps.iter_mut()) {
            *x = tower.mul(*x, *step);
        }
    }
    Ok(BinarySequence::from_bits(bits))
}

/// a(t) = sum_{i in I} beta^(i t), t = 0 .. 2^m - 2.
pub fn base_sequence(index_set: &IndexSet, tower: &FieldTower) -> Result<BinarySequence> {
    if index_set.m() != tower.m() {
        return Err(Error::InvalidParameters(format!(
            "index set is for m = {}, tower has m = {}",
            index_set.m(),
            tower.m()
        )));
    }
    let exponents: Vec<u64> = index_set.members().iter().copied().collect();
    power_sum_sequence(tower, &exponents)
}

/// True iff every out-of-phase autocorrelation equals -1.
pub fn is_ideal_autocorrelation(s: &BinarySequence) -> bool {
    if s.period() < 3 {
        return false;
    }
    autocorrelation_profile(s).iter().skip(1).all(|&r| r == -1)
}

fn mersenne_exponent(p: u64) -> Result<u32> {
    let plus = p.checked_add(1).ok_or(Error::NotMersennePrime(p))?;
    if !plus.is_power_of_two() {
        return Err(Error::NotMersennePrime(p));
    }
    let m = plus.trailing_zeros();
    if !(3..=16).contains(&m) || !is_prime(m as u64) || !is_prime(p) {
        return Err(Error::NotMersennePrime(p));
    }
    Ok(m)
}

/// Legendre sequence of a Mersenne prime period p = 2^m - 1 (m prime, 3 <= m <= 16):
/// one at t = 0 and at non-residues, zero at quadratic residues.
pub fn legendre_sequence(p: u64) -> Result<BinarySequence> {
    mersenne_exponent(p)?;
    let mut residue = vec![false; p as usize];
    for x in 1..p {
        residue[((x * x) % p) as usize] = true;
    }
    Ok(BinarySequence::from_fn(p as usize, |t| t == 0 || !residue[t]))
}

fn multiplicative_order(g: u64, p: u64) -> u64 {
    let mut x = g % p;
    let mut order = 1;
    while x != 1 {
        x = x * g % p;
        order += 1;
        if order > p {
            return 0;
        }
    }
    order
}

pub fn smallest_primitive_root(p: u64) -> u64 {
    (2..p).find(|&g| multiplicative_order(g, p) == p - 1).unwrap_or(1)
}

/// Parameters of the Legendre-derived index sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendreSpec {
    pub p: u64,
    pub m: u32,
    pub gamma_root: u64,
    pub zeta: u8,
}

impl LegendreSpec {
    /// `gamma_root = None` picks the smallest primitive root modulo p.
    pub fn new(m: u32, gamma_root: Option<u64>, zeta: u8) -> Result<Self> {
        let p = (1u64 << m) - 1;
        if mersenne_exponent(p)? != m {
            return Err(Error::NotMersennePrime(p));
        }
        if zeta > 1 {
            return Err(Error::InvalidParameters(format!("zeta must be 0 or 1, got {zeta}")));
        }
        let gamma_root = gamma_root.unwrap_or_else(|| smallest_primitive_root(p));
        if gamma_root == 0 || multiplicative_order(gamma_root, p) != p - 1 {
            return Err(Error::InvalidParameters(format!(
                "{gamma_root} is not a primitive root modulo {p}"
            )));
        }
        Ok(Self { p, m, gamma_root, zeta })
    }

    fn pow_mod(&self, e: u64) -> u64 {
        (0..e).fold(1u64, |acc, _| acc * self.gamma_root % self.p)
    }

    /// The Legendre sequence (zeta = 0) or its gamma-decimation (zeta = 1).
    pub fn target_sequence(&self) -> Result<BinarySequence> {
        let a = legendre_sequence(self.p)?;
        Ok(if self.zeta == 0 {
            a
        } else {
            a.decimate(self.gamma_root as usize)
        })
    }

    /// I = union of C_{gamma^(2j + zeta)} for 0 <= j < (p - 1) / 2m.
    pub fn index_set(&self) -> Result<IndexSet> {
        let count = (self.p - 1) / (2 * self.m as u64);
        let set = IndexSet::from_leaders(self.m, (0..count).map(|j| self.pow_mod(2 * j + self.zeta as u64)))?;
        if set.len() as u64 != (self.p - 1) / 2 {
            return Err(Error::Internal(format!(
                "Legendre index set has {} members, expected {}",
                set.len(),
                (self.p - 1) / 2
            )));
        }
        Ok(set.with_zeta(Some(self.zeta)))
    }
}

/// Returns the Legendre index set together with a decimation `d` such that
/// the base sequence over beta^d reproduces the target sequence bit for bit.
pub fn legendre_index_set(spec: &LegendreSpec, tower: &FieldTower) -> Result<(IndexSet, u64)> {
    if tower.m() != spec.m {
        return Err(Error::InvalidParameters(format!(
            "tower has m = {}, Legendre spec has m = {}",
            tower.m(),
            spec.m
        )));
    }
    let set = spec.index_set()?;
    let base = base_sequence(&set, tower)?;
    let target = spec.target_sequence()?;
    let d = coset_leaders(spec.m)?
        .into_iter()
        .find(|&d| base.decimate(d as usize) == target)
        .ok_or(Error::NoMatchingBeta)?;
    Ok((set, d))
}

/// Rescales I by d = (2^(m-1) - 1) * i0^-1 so that 2^(m-1) - 1 is a member.
pub fn normalize_index_set(index_set: &IndexSet) -> Result<IndexSet> {
    if index_set.is_normalized() {
        return Ok(index_set.clone());
    }
    let modulus = index_set.modulus();
    let i0 = index_set.unit_element().ok_or(Error::NoUnitElement)?;
    let inv = mod_inverse(i0, modulus).ok_or(Error::NoUnitElement)?;
    let target = (1u64 << (index_set.m() - 1)) - 1;
    let d = (target as u128 * inv as u128 % modulus as u128) as u64;
    let out = index_set.scaled(d)?;
    debug_assert!(out.is_normalized());
    Ok(out)
}
