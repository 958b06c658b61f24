//! Linear span: measured exactly with Berlekamp-Massey, and predicted by
//! counting monomials of the trace expansion.
//!
//! For each coset leader i of I and each v in V^w(i), the term
//! (1 + gamma y + y^2)^delta'(i, v) contributes rho(i, v) monomials, and the
//! span is sum_i e_i sum_v rho(i, v). With R runs of ones of lengths L_j in
//! delta',
//!
//! * gamma = 0: rho = 2^weight(delta')
//! * gamma != 0: rho = prod_j (2^(L_j + 1) - 1 - 2 floor((2^L_j - 1) g / (2^mk + eps)))

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::combinatorics::{default_u, delta, run_decomposition, v_tuples, weight, DeltaTerm};
use crate::error::{Error, Result};
use crate::family::{FamilyParams, GammaClass};
use crate::sequence::BinarySequence;

/// Feedback polynomial 1 + c_1 x + ... + c_L x^L of a linear recurrence
/// s_t = c_1 s_(t-1) + ... + c_L s_(t-L).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionPoly {
    degree: usize,
    coeffs: Vec<u64>,
}

impl ConnectionPoly {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient c_i (c_0 = 1).
    pub fn coeff(&self, i: usize) -> bool {
        i <= self.degree && (self.coeffs[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Indices i >= 1 with c_i = 1.
    pub fn taps(&self) -> Vec<usize> {
        (1..=self.degree).filter(|&i| self.coeff(i)).collect()
    }

    /// Extends the first `degree` bits of `seed` to `len` bits.
    pub fn regenerate(&self, seed: &[bool], len: usize) -> Vec<bool> {
        let taps = self.taps();
        let mut out: Vec<bool> = seed[..self.degree.min(seed.len())].to_vec();
        while out.len() < len {
            let t = out.len();
            let bit = taps.iter().fold(false, |acc, &i| acc ^ out[t - i]);
            out.push(bit);
        }
        out.truncate(len);
        out
    }

    /// Whether the recurrence holds across all of `bits`.
    pub fn generates(&self, bits: &[bool]) -> bool {
        self.regenerate(bits, bits.len()) == bits
    }
}

struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    fn zeros(bits: usize) -> Self {
        Self {
            words: vec![0; bits.div_ceil(64) + 2],
        }
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// Parity of popcount(self[0..len] & other[offset..offset + len]).
    #[inline]
    fn dot_window(&self, other: &BitVec, offset: usize, len: usize) -> bool {
        let (w0, sh) = (offset / 64, offset % 64);
        let full = len / 64;
        let mut acc = 0u64;
        let window = |j: usize| {
            if sh == 0 {
                other.words[w0 + j]
            } else {
                (other.words[w0 + j] >> sh) | (other.words[w0 + j + 1] << (64 - sh))
            }
        };
        for j in 0..full {
            acc ^= self.words[j] & window(j);
        }
        let rem = len % 64;
        if rem != 0 {
            acc ^= self.words[full] & window(full) & ((1u64 << rem) - 1);
        }
        acc.count_ones() & 1 == 1
    }

    /// self ^= other << shift, over the first `len` bits of `other`.
    fn xor_shifted(&mut self, other: &BitVec, shift: usize, len: usize) {
        let (ws, sh) = (shift / 64, shift % 64);
        let nwords = len.div_ceil(64);
        for j in 0..nwords {
            let w = other.words[j];
            if w == 0 {
                continue;
            }
            if ws + j < self.words.len() {
                self.words[ws + j] ^= w << sh;
            }
            if sh != 0 && ws + j + 1 < self.words.len() {
                self.words[ws + j + 1] ^= w >> (64 - sh);
            }
        }
    }
}

/// Linear span of the N-periodic sequence and its connection polynomial.
///
/// Runs over two full periods, which determines the minimal recurrence of
/// any sequence of period N; the result is checked by regeneration.
pub fn berlekamp_massey(s: &BinarySequence) -> (usize, ConnectionPoly) {
    let bits: Vec<bool> = (0..2 * s.period()).map(|t| s.get(t)).collect();
    let (span, poly) = berlekamp_massey_bits(&bits);
    assert!(
        poly.generates(&bits),
        "connection polynomial fails to regenerate its input"
    );
    (span, poly)
}

/// Berlekamp-Massey over an arbitrary finite bit string.
pub fn berlekamp_massey_bits(bits: &[bool]) -> (usize, ConnectionPoly) {
    let len = bits.len();
    // reversed[j] = bits[len - 1 - j], so s_(n-i) for i = 0..=L is a window
    // of `reversed` starting at len - 1 - n.
    let mut reversed = BitVec::zeros(len);
    for (t, &b) in bits.iter().enumerate() {
        if b {
            reversed.set(len - 1 - t);
        }
    }
    let mut c = BitVec::zeros(len + 1);
    let mut b = BitVec::zeros(len + 1);
    c.set(0);
    b.set(0);
    let mut l = 0usize;
    let mut b_len = 1usize;
    let mut since = 1usize;
    for n in 0..len {
        let discrepancy = c.dot_window(&reversed, len - 1 - n, l + 1);
        if !discrepancy {
            since += 1;
            continue;
        }
        if 2 * l <= n {
            let saved = BitVec { words: c.words.clone() };
            c.xor_shifted(&b, since, b_len);
            let new_l = n + 1 - l;
            b = saved;
            b_len = l + 1;
            l = new_l;
            since = 1;
        } else {
            c.xor_shifted(&b, since, b_len);
            since += 1;
        }
    }
    let nwords = (l + 1).div_ceil(64);
    let mut coeffs = c.words[..nwords].to_vec();
    if !(l + 1).is_multiple_of(64) {
        coeffs[nwords - 1] &= (1u64 << ((l + 1) % 64)) - 1;
    }
    (l, ConnectionPoly { degree: l, coeffs })
}

/// Rotates x within `bits` bits so that its top bit is clear, leaving no run
/// of ones that wraps around. Multiplying the exponent by 2 is a Frobenius
/// twist that preserves the monomial count, so runs are cyclic in nature;
/// under the default u no run wraps and x is returned unchanged.
pub fn cyclic_normal_form(x: u64, bits: u32) -> u64 {
    let full = (1u64 << bits) - 1;
    if x & (1 << (bits - 1)) == 0 || x == full {
        return x;
    }
    let z = (0..bits).rev().find(|&b| x & (1 << b) == 0).unwrap();
    let s = z + 1;
    ((x >> s) | (x << (bits - s))) & full
}

/// Monomial count of (1 + gamma y + y^2)^delta' for one (i, v) term.
/// `class = None` means gamma = 0.
///
/// For subfamily members under the default u, the floor terms vanish and the
/// product prod_j (2^(L_j + 1) - 1) is computed as well; a mismatch is an error.
pub fn rho(term: &DeltaTerm, class: Option<&GammaClass>) -> Result<u64> {
    let Some(gc) = class else {
        return Ok(1u64 << term.weight_tau);
    };
    let mk = term.m * term.k;
    let modulus = gc.epsilon.modulus(mk) as u128;
    let runs = run_decomposition(cyclic_normal_form(term.delta_prime, mk));
    let full: u128 = runs
        .lengths()
        .map(|len| {
            let floor = ((1u128 << len) - 1) * gc.g as u128 / modulus;
            (1u128 << (len + 1)) - 1 - 2 * floor
        })
        .product();
    if gc.in_f_prime && term.k >= 2 && term.u == default_u(term.m, term.k).u {
        let reduced: u128 = runs.lengths().map(|len| (1u128 << (len + 1)) - 1).product();
        if reduced != full {
            return Err(Error::Internal(format!(
                "floor terms do not vanish for delta' = {} with g = {}",
                term.delta_prime, gc.g
            )));
        }
    }
    u64::try_from(full).map_err(|_| Error::Internal("rho overflow".into()))
}

/// sum over V^w(i) of rho(i, v).
pub fn rho_sum(i: u64, u: u64, m: u32, k: u32, class: Option<&GammaClass>) -> Result<u128> {
    let mut total = 0u128;
    for v in v_tuples(weight(i) as usize, k) {
        let term = delta(i, &v, u, m, k)?;
        total += rho(&term, class)? as u128;
    }
    Ok(total)
}

/// LS(s_h) = sum_{i in I, i a coset leader} e_i sum_v rho(i, v).
pub fn predicted_span(params: &FamilyParams, h: u64) -> Result<u64> {
    let class = if h == 0 {
        params.gamma(h)?;
        None
    } else {
        Some(params.classify_gamma(h)?)
    };
    predicted_span_with_class(params, class.as_ref())
}

pub fn predicted_span_with_class(params: &FamilyParams, class: Option<&GammaClass>) -> Result<u64> {
    let t = params.tower();
    let mut total = 0u128;
    for &leader in params.index_set().leaders() {
        let size = crate::combinatorics::coset_of(leader, t.m())?.size() as u128;
        total += size * rho_sum(leader, params.u(), t.m(), t.k(), class)?;
    }
    u64::try_from(total).map_err(|_| Error::Internal("predicted span overflow".into()))
}

/// i^(t) = 2^t - 1.
pub fn run_index(t: u32) -> u64 {
    (1u64 << t) - 1
}

/// (2^(k-1) k)^t, the exact sum for gamma = 0.
pub fn lemma7_zero_closed_form(t: u32, k: u32) -> BigUint {
    (BigUint::from(k) << (k - 1)).pow(t)
}

/// 3^(k-1) k ((3k - 1) 2^(k-2))^(t-1), the lower bound for gamma != 0 (k >= 2).
pub fn lemma7_nonzero_bound(t: u32, k: u32) -> BigUint {
    let ratio = BigUint::from(3 * k - 1) << (k - 2);
    BigUint::from(3u32).pow(k - 1) * k * ratio.pow(t - 1)
}

/// Which side of the run-index sum is being evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma7Kind {
    Zero,
    FPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma7Outcome {
    pub t: u32,
    pub m: u32,
    pub k: u32,
    pub kind: Lemma7Kind,
    /// Closed form (zero kind) or lower bound (subfamily kind).
    #[serde(serialize_with = "serialize_big")]
    pub formula: BigUint,
    pub enumerated: u128,
    pub holds: bool,
}

fn serialize_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn serialize_opt_big<S: serde::Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_big(v, s),
        None => s.serialize_none(),
    }
}

/// Enumerates sum_{v in V^t} rho(i^(t), v) with the default u and compares it
/// against the closed form (gamma = 0) or the lower bound (gamma != 0).
///
/// At t = 1 the lower bound is attained exactly (every term is 3^(k-1)), so
/// the check is equality there and strict inequality for t >= 2.
pub fn lemma7_sum(t: u32, m: u32, k: u32, class: Option<&GammaClass>) -> Result<Lemma7Outcome> {
    if k < 2 || t == 0 || t >= m {
        return Err(Error::InvalidParameters(format!(
            "run-index sums need k >= 2 and 1 <= t <= m - 1 (t={t}, m={m}, k={k})"
        )));
    }
    let u = default_u(m, k).u;
    let enumerated = rho_sum(run_index(t), u, m, k, class)?;
    let big = BigUint::from(enumerated);
    let (kind, formula, holds) = match class {
        None => {
            let f = lemma7_zero_closed_form(t, k);
            let holds = big == f;
            (Lemma7Kind::Zero, f, holds)
        }
        Some(gc) => {
            if !gc.in_f_prime {
                return Err(Error::InvalidParameters(format!("gamma class h={} is not in F'", gc.h)));
            }
            let f = lemma7_nonzero_bound(t, k);
            let holds = if t == 1 { big == f } else { big > f };
            (Lemma7Kind::FPrime, f, holds)
        }
    };
    Ok(Lemma7Outcome {
        t,
        m,
        k,
        kind,
        formula,
        enumerated,
        holds,
    })
}

/// Closed-form span bounds for parameters (m, k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub m: u32,
    pub k: u32,
    /// m (2^(k-1) k)^(m-1); defined for k >= 2.
    #[serde(serialize_with = "serialize_opt_big")]
    pub l0: Option<BigUint>,
    /// 3^(k-1) m k [2^(k-2) (3k - 1)]^(m-2); defined for k >= 2.
    #[serde(serialize_with = "serialize_opt_big")]
    pub l1: Option<BigUint>,
    /// (1 + X)^m - 1 - X^m with X = 2^(k-1) k (X = 2 when k = 1): the sum of
    /// both Legendre-derived spans. The bound itself is half of this.
    #[serde(serialize_with = "serialize_big")]
    pub theorem13_sum: BigUint,
}

impl Bounds {
    /// Smallest integer not below theorem13_sum / 2.
    pub fn theorem13_threshold(&self) -> BigUint {
        (&self.theorem13_sum + 1u32) >> 1
    }

    pub fn theorem13_is_exact_half(&self) -> bool {
        !self.theorem13_sum.bit(0)
    }
}

/// Per-leader weight base X: 2^(k-1) k, or 2 when k = 1 (where u = 1 and the
/// weight of delta' equals w(i)).
fn weight_base(k: u32) -> BigUint {
    if k == 1 {
        BigUint::from(2u32)
    } else {
        BigUint::from(k) << (k - 1)
    }
}

pub fn bounds(m: u32, k: u32) -> Result<Bounds> {
    if m < 2 || k == 0 {
        return Err(Error::InvalidParameters(format!(
            "bounds need m >= 2, k >= 1 (m={m}, k={k})"
        )));
    }
    let (l0, l1) = if k >= 2 {
        let l0 = BigUint::from(m) * (BigUint::from(k) << (k - 1)).pow(m - 1);
        let ratio = BigUint::from(3 * k - 1) << (k - 2);
        let l1 = BigUint::from(3u32).pow(k - 1) * m * k * ratio.pow(m - 2);
        (Some(l0), Some(l1))
    } else {
        (None, None)
    };
    let x = weight_base(k);
    let theorem13_sum = (&x + BigUint::one()).pow(m) - BigUint::one() - x.pow(m);
    Ok(Bounds {
        m,
        k,
        l0,
        l1,
        theorem13_sum,
    })
}

/// Measured spans of the two Legendre-derived ideal sequences and the closed
/// form their sum must equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem13Check {
    pub m: u32,
    pub k: u32,
    pub gamma_root: u64,
    pub span0: u64,
    pub span1: u64,
    pub predicted0: u64,
    pub predicted1: u64,
    pub expected_sum: u64,
    pub threshold: u64,
}

impl Theorem13Check {
    pub fn sum_holds(&self) -> bool {
        self.span0 + self.span1 == self.expected_sum
    }

    pub fn bound_holds(&self) -> bool {
        self.span0.max(self.span1) >= self.threshold
    }
}

pub fn theorem13_sum_check(m: u32, k: u32, gamma_root: Option<u64>) -> Result<Theorem13Check> {
    use crate::family::section4_params;
    use crate::gf2::FieldTower;
    use crate::ideal::LegendreSpec;
    use std::sync::Arc;

    let tower = Arc::new(FieldTower::new(m, k)?);
    let mut spans = [0u64; 2];
    let mut predicted = [0u64; 2];
    let mut root = 0;
    for zeta in 0..2u8 {
        let spec = LegendreSpec::new(m, gamma_root, zeta)?;
        root = spec.gamma_root;
        let params = section4_params(Arc::clone(&tower), &spec)?;
        let seq = params.generate_sequence(0)?;
        spans[zeta as usize] = berlekamp_massey(&seq).0 as u64;
        predicted[zeta as usize] = predicted_span(&params, 0)?;
    }
    let b = bounds(m, k)?;
    let to_u64 = |x: &BigUint| x.to_u64().ok_or_else(|| Error::Internal("bound overflow".into()));
    Ok(Theorem13Check {
        m,
        k,
        gamma_root: root,
        span0: spans[0],
        span1: spans[1],
        predicted0: predicted[0],
        predicted1: predicted[1],
        expected_sum: to_u64(&b.theorem13_sum)?,
        threshold: to_u64(&b.theorem13_threshold())?,
    })
}

/// Measured and predicted span of one family member, with its gamma class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub params: String,
    pub h: u64,
    pub gamma_hex: String,
    pub epsilon: Option<i64>,
    pub c: Option<u64>,
    pub g: Option<u64>,
    #[serde(rename = "in_F_prime")]
    pub in_f_prime: bool,
    pub measured: u64,
    pub predicted: u64,
    #[serde(rename = "L0", serialize_with = "serialize_opt_big")]
    pub l0: Option<BigUint>,
    #[serde(rename = "L1", serialize_with = "serialize_opt_big")]
    pub l1: Option<BigUint>,
}

impl SpanReport {
    pub const CSV_HEADER: &'static str = "h,gamma_hex,epsilon,c,g,in_F_prime,measured,predicted,L0,L1";

    pub fn matches_prediction(&self) -> bool {
        self.measured == self.predicted
    }

    /// Whether the applicable bound holds: >= L0 for h = 0, > L1 for other
    /// subfamily members. `None` when no bound applies.
    pub fn bound_holds(&self) -> Option<bool> {
        let measured = BigUint::from(self.measured);
        if self.h == 0 {
            self.l0.as_ref().map(|l0| measured >= *l0)
        } else if self.in_f_prime {
            self.l1.as_ref().map(|l1| measured > *l1)
        } else {
            None
        }
    }

    pub fn to_csv_row(&self) -> String {
        let opt = |x: Option<String>| x.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.h,
            self.gamma_hex,
            opt(self.epsilon.map(|e| e.to_string())),
            opt(self.c.map(|c| c.to_string())),
            opt(self.g.map(|g| g.to_string())),
            self.in_f_prime,
            self.measured,
            self.predicted,
            opt(self.l0.as_ref().map(BigUint::to_string)),
            opt(self.l1.as_ref().map(BigUint::to_string)),
        )
    }
}

pub fn span_report(params: &FamilyParams, h: u64) -> Result<SpanReport> {
    let seq = params.generate_sequence(h)?;
    let class = if h == 0 { None } else { Some(params.classify_gamma(h)?) };
    let predicted = predicted_span_with_class(params, class.as_ref())?;
    let (measured, _) = berlekamp_massey(&seq);
    let t = params.tower();
    let b = bounds(t.m(), t.k())?;
    Ok(SpanReport {
        params: params.descriptor(),
        h,
        gamma_hex: format!("{:x}", params.gamma(h)?),
        epsilon: class.as_ref().map(|c| c.epsilon.value()),
        c: class.as_ref().map(|c| c.c),
        g: class.as_ref().map(|c| c.g),
        in_f_prime: class.as_ref().is_none_or(|c| c.in_f_prime),
        measured: measured as u64,
        predicted,
        l0: b.l0,
        l1: b.l1,
    })
}
