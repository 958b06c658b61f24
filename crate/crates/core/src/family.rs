//! The sequence family
//!
//! s_h(t) = sum_{i in I} { tr^mk_m [ (tr^n_mk(alpha^2t) + gamma_h alpha^((2^mk + 1) t))^u ] }^i
//!
//! for h = 0 .. 2^mk - 1, with gamma_0 = 0 and gamma_h = g^(h-1) where
//! g = alpha^(2^mk + 1) generates GF(2^mk)*. Small Kasami, No and TN families
//! are the special cases I = C_r, u = 1 (with k = 1 for Kasami and No).

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{default_u, gcd};
use crate::error::{Error, Result};
use crate::gf2::{Epsilon, FieldElement, FieldTower, LinearMap};
use crate::ideal::{base_sequence, legendre_index_set, IndexSet, LegendreSpec};
use crate::sequence::BinarySequence;

/// Everything needed to generate the family: tower, exponent u and index set.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    tower: Arc<FieldTower>,
    u: u64,
    index_set: IndexSet,
    gamma_generator: FieldElement,
    base: BinarySequence,
    fast: FastPath,
}

/// Tabulated maps for sequence generation.
#[derive(Clone, Debug)]
struct FastPath {
    /// x -> x + x^(2^mk)
    outer: LinearMap,
    /// z -> tr^mk_m(z)
    trace: LinearMap,
    /// z -> z^(2^(jm)) for j = 0 .. k-2 when u is their exponent sum
    u_frobenius: Option<Vec<LinearMap>>,
    /// Bit positions whose values identify an element of GF(2^m).
    pivots: Vec<u32>,
    /// Discrete log base beta and the element itself, indexed by the pivot key.
    log: Vec<(u32, u32)>,
}

impl FastPath {
    fn new(tower: &FieldTower, u: u64) -> Self {
        let (m, k, mk) = (tower.m(), tower.k(), tower.mk());
        let outer = tower.linear_map(|x| tower.add(x, tower.frobenius(x, mk)));
        let trace =
            tower.linear_map(|z| (0..k).fold(FieldElement::ZERO, |acc, j| tower.add(acc, tower.frobenius(z, j * m))));
        let u_frobenius = (k >= 2 && u == default_u(m, k).u).then(|| {
            (0..k - 1)
                .map(|j| tower.linear_map(|z| tower.frobenius(z, j * m)))
                .collect()
        });
        // reduced echelon form of a basis of GF(2^m)
        let beta = tower.beta();
        let mut basis: Vec<u32> = Vec::new();
        let mut pivots: Vec<u32> = Vec::new();
        let mut x = FieldElement::ONE;
        while basis.len() < m as usize {
            let mut v = x.bits();
            for (b, &p) in basis.iter().zip(&pivots) {
                if v >> p & 1 == 1 {
                    v ^= b;
                }
            }
            if v != 0 {
                let p = 31 - v.leading_zeros();
                for b in basis.iter_mut() {
                    if *b >> p & 1 == 1 {
                        *b ^= v;
                    }
                }
                basis.push(v);
                pivots.push(p);
            }
            x = tower.mul(x, beta);
        }
        let mut fast = Self {
            outer,
            trace,
            u_frobenius,
            pivots,
            log: vec![(0, 0); 1 << m],
        };
        let mut x = FieldElement::ONE;
        for e in 0..tower.base_order() as u32 {
            let key = fast.key(x);
            fast.log[key] = (x.bits(), e);
            x = tower.mul(x, beta);
        }
        fast
    }

    #[inline]
    fn key(&self, x: FieldElement) -> usize {
        let bits = x.bits();
        self.pivots
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &p)| acc | ((bits >> p & 1) as usize) << i)
    }
}

impl FamilyParams {
    pub fn new(tower: Arc<FieldTower>, u: u64, index_set: IndexSet) -> Result<Self> {
        let (m, mk) = (tower.m(), tower.mk());
        if m < 2 {
            return Err(Error::InvalidParameters("the family needs m >= 2".into()));
        }
        if index_set.m() != m {
            return Err(Error::InvalidParameters(format!(
                "index set is for m = {}, tower has m = {m}",
                index_set.m()
            )));
        }
        if index_set.is_empty() {
            return Err(Error::InvalidParameters("index set is empty".into()));
        }
        let modulus = (1u64 << mk) - 1;
        let g = gcd(u, modulus);
        if u == 0 || g != 1 {
            return Err(Error::GcdViolation {
                value: u,
                modulus,
                gcd: g,
            });
        }
        let base = base_sequence(&index_set, &tower)?;
        let fast = FastPath::new(&tower, u);
        let gamma_generator = tower.pow(tower.alpha(), (1u64 << mk) + 1);
        Ok(Self {
            tower,
            u,
            index_set,
            gamma_generator,
            base,
            fast,
        })
    }

    /// Uses u = 1 + 2^m + ... + 2^((k-2)m), or u = 1 when k = 1.
    pub fn with_default_u(tower: Arc<FieldTower>, index_set: IndexSet) -> Result<Self> {
        let u = default_u(tower.m(), tower.k()).u;
        Self::new(tower, u, index_set)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn shared_tower(&self) -> Arc<FieldTower> {
        Arc::clone(&self.tower)
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    /// The period 2^m - 1 sequence a(t) = sum_{i in I} beta^(i t).
    pub fn base_sequence(&self) -> &BinarySequence {
        &self.base
    }

    /// Family size 2^mk.
    pub fn size(&self) -> u64 {
        1u64 << self.tower.mk()
    }

    pub fn period(&self) -> usize {
        self.tower.order() as usize
    }

    /// Canonical parameter string, e.g. `n=12 m=3 k=2 u=1 I=3`.
    pub fn descriptor(&self) -> String {
        format!(
            "n={} m={} k={} u={} I={}",
            self.tower.n(),
            self.tower.m(),
            self.tower.k(),
            self.u,
            self.index_set.leaders_csv()
        )
    }

    fn check_index(&self, h: u64) -> Result<()> {
        if h >= self.size() {
            return Err(Error::IndexOutOfRange { h, size: self.size() });
        }
        Ok(())
    }

    /// gamma_h: zero for h = 0, g^(h-1) otherwise.
    pub fn gamma(&self, h: u64) -> Result<FieldElement> {
        self.check_index(h)?;
        Ok(if h == 0 {
            FieldElement::ZERO
        } else {
            self.tower.pow(self.gamma_generator, h - 1)
        })
    }

    /// The GF(2^m) element whose I-power sum is s_h(t), given
    /// alpha^2t and alpha^((2^mk + 1) t).
    #[inline]
    fn inner_value(&self, gamma: FieldElement, x2: FieldElement, xq: FieldElement) -> FieldElement {
        let t = &*self.tower;
        let mk = t.mk();
        let inner = t.add(t.add(x2, t.frobenius(x2, mk)), t.mul(gamma, xq));
        let powered = t.pow(inner, self.u);
        let mut acc = FieldElement::ZERO;
        let mut term = powered;
        for _ in 0..t.k() {
            acc = t.add(acc, term);
            term = t.frobenius(term, t.m());
        }
        acc
    }

    /// Same value as `inner_value`, through the tabulated maps.
    #[inline]
    fn inner_value_fast(&self, gamma: FieldElement, x2: FieldElement, xq: FieldElement) -> FieldElement {
        let t = &*self.tower;
        let f = &self.fast;
        let inner = t.add(f.outer.apply(x2), t.mul(gamma, xq));
        let powered = match &f.u_frobenius {
            Some(maps) => maps
                .iter()
                .fold(FieldElement::ONE, |acc, map| t.mul(acc, map.apply(inner))),
            None => t.pow(inner, self.u),
        };
        f.trace.apply(powered)
    }

    pub fn generate_sequence(&self, h: u64) -> Result<BinarySequence> {
        let gamma = self.gamma(h)?;
        let t = &*self.tower;
        let step2 = t.square(t.alpha());
        let stepq = self.gamma_generator;
        let mut x2 = FieldElement::ONE;
        let mut xq = FieldElement::ONE;
        let mut bits = Vec::with_capacity(self.period());
        for _ in 0..self.period() {
            let value = self.inner_value_fast(gamma, x2, xq);
            let bit = if value.is_zero() {
                false
            } else {
                let (element, e) = self.fast.log[self.fast.key(value)];
                if element != value.bits() {
                    return Err(Error::Internal("trace value left GF(2^m)".into()));
                }
                self.base.get(e as usize)
            };
            bits.push(bit);
            x2 = t.mul(x2, step2);
            xq = t.mul(xq, stepq);
        }
        Ok(BinarySequence::from_bits(bits))
    }

    /// s_h(t) evaluated as the field power sum, without the base-sequence lookup.
    pub fn evaluate_direct(&self, h: u64, time: u64) -> Result<bool> {
        let gamma = self.gamma(h)?;
        let t = &*self.tower;
        let x2 = t.pow(t.alpha(), 2 * time);
        let xq = t.pow(self.gamma_generator, time);
        let value = self.inner_value(gamma, x2, xq);
        let sum = self
            .index_set
            .members()
            .iter()
            .fold(FieldElement::ZERO, |acc, &i| t.add(acc, t.pow(value, i)));
        match sum {
            FieldElement::ZERO => Ok(false),
            FieldElement::ONE => Ok(true),
            _ => Err(Error::ValueNotBinary { t: time }),
        }
    }

    pub fn generate_many(&self, hs: &[u64]) -> Result<Vec<BinarySequence>> {
        hs.par_iter().map(|&h| self.generate_sequence(h)).collect()
    }

    pub fn generate_all(&self) -> Result<Vec<BinarySequence>> {
        let hs: Vec<u64> = (0..self.size()).collect();
        self.generate_many(&hs)
    }

    pub fn classify_gamma(&self, h: u64) -> Result<GammaClass> {
        let gamma = self.gamma(h)?;
        let t = &*self.tower;
        let mk = t.mk();
        let (epsilon, root) = t.solve_unit_quadratic(gamma)?;
        let modulus = epsilon.modulus(mk);
        // roots of norm type: alpha^(c (2^mk + 1)) when split, alpha^(c (2^mk - 1)) otherwise
        let stride = match epsilon {
            Epsilon::Reducible => (1u64 << mk) + 1,
            Epsilon::Irreducible => (1u64 << mk) - 1,
        };
        let log = t.discrete_log(root)?;
        if log % stride != 0 {
            return Err(Error::Internal(format!(
                "root exponent {log} not a multiple of {stride}"
            )));
        }
        let raw = (log / stride) % modulus;
        let c = raw.min(modulus - raw);
        if t.pow(t.alpha(), c * stride) != root && t.pow(t.alpha(), (modulus - c) * stride) != root {
            return Err(Error::Internal("c_h does not reproduce the root".into()));
        }
        let delta = t.pow(t.alpha(), c * stride);
        let check = t.add(t.add(t.square(delta), t.mul(gamma, delta)), FieldElement::ONE);
        if !check.is_zero() {
            return Err(Error::Internal("alpha^(c stride) is not a root".into()));
        }
        let g = gcd(c, modulus);
        if g >= 1u64 << (mk - 1) {
            return Err(Error::Internal(format!("g_h = {g} is not below 2^(mk-1)")));
        }
        let threshold = (1i64 << (t.m() - 1)) + epsilon.value();
        let in_f_prime = (g as i64) * threshold < modulus as i64;
        Ok(GammaClass {
            h,
            gamma,
            epsilon,
            c,
            g,
            in_f_prime,
        })
    }

    pub fn classify_all(&self) -> Result<Vec<GammaClass>> {
        (1..self.size())
            .into_par_iter()
            .map(|h| self.classify_gamma(h))
            .collect()
    }
}

/// (epsilon_h, c_h, g_h) for a nonzero gamma_h, and subfamily membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaClass {
    pub h: u64,
    #[serde(serialize_with = "serialize_element")]
    pub gamma: FieldElement,
    #[serde(serialize_with = "serialize_epsilon")]
    pub epsilon: Epsilon,
    pub c: u64,
    pub g: u64,
    pub in_f_prime: bool,
}

fn serialize_element<S: serde::Serializer>(x: &FieldElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{:x}", x))
}

fn serialize_epsilon<S: serde::Serializer>(e: &Epsilon, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_i64(e.value())
}

/// Family parameters for the Legendre-based ideal sequence: I from the
/// Legendre spec, u = default_u(m, k).
pub fn section4_params(tower: Arc<FieldTower>, spec: &LegendreSpec) -> Result<FamilyParams> {
    let k = tower.k();
    if k >= 2 {
        let g = gcd(k as u64 - 1, spec.p);
        if g != 1 {
            return Err(Error::GcdViolation {
                value: k as u64 - 1,
                modulus: spec.p,
                gcd: g,
            });
        }
    }
    let (index_set, _) = legendre_index_set(spec, &tower)?;
    FamilyParams::with_default_u(tower, index_set)
}

/// s^(zeta)(t): the h = 0 member of the family over the Legendre index set.
pub fn generate_section4_sequence(tower: Arc<FieldTower>, spec: &LegendreSpec) -> Result<BinarySequence> {
    section4_params(tower, spec)?.generate_sequence(0)
}
