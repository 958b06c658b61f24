//! Closed-form rows of the bound tables, evaluated exactly.
//!
//! Table II writes L0 and L1 as functions of n for k = 3, 4, 5; here each
//! entry is kept as `coef * n * base^(n / n_per_m) / div` and compared against
//! the Theorem 9 formulas by cross-multiplication, never by division.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::span::bounds;

/// `coef * n * base^m / div` with n = n_per_m * m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledPower {
    pub coef: u64,
    pub base: u64,
    pub div: u64,
}

impl ScaledPower {
    /// Numerator coef * n * base^m, before division.
    pub fn numerator(&self, n: u32, m: u32) -> BigUint {
        BigUint::from(self.coef) * n * BigUint::from(self.base).pow(m)
    }

    /// Exact value, or None when div does not divide the numerator.
    pub fn value(&self, n: u32, m: u32) -> Option<BigUint> {
        let num = self.numerator(n, m);
        let div = BigUint::from(self.div);
        (&num % &div).is_zero().then(|| num / div)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableTwoColumn {
    pub k: u32,
    pub n_per_m: u32,
    pub l0: ScaledPower,
    pub l1: ScaledPower,
}

/// 12^(n/6) n/72, 2^(5n/8) n/256, 80^(n/10) n/800 and
/// 9n 2^(2n/3)/512, 27n 44^(n/8)/3872, 81n 112^(n/10)/25088.
pub const TABLE_TWO: [TableTwoColumn; 3] = [
    TableTwoColumn {
        k: 3,
        n_per_m: 6,
        l0: ScaledPower {
            coef: 1,
            base: 12,
            div: 72,
        },
        l1: ScaledPower {
            coef: 9,
            base: 16,
            div: 512,
        },
    },
    TableTwoColumn {
        k: 4,
        n_per_m: 8,
        l0: ScaledPower {
            coef: 1,
            base: 32,
            div: 256,
        },
        l1: ScaledPower {
            coef: 27,
            base: 44,
            div: 3872,
        },
    },
    TableTwoColumn {
        k: 5,
        n_per_m: 10,
        l0: ScaledPower {
            coef: 1,
            base: 80,
            div: 800,
        },
        l1: ScaledPower {
            coef: 81,
            base: 112,
            div: 25088,
        },
    },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableTwoRow {
    pub k: u32,
    pub m: u32,
    pub n: u32,
    #[serde(rename = "L0")]
    pub l0: String,
    #[serde(rename = "L1")]
    pub l1: String,
    /// Both columns equal the Theorem 9 formulas exactly.
    pub matches: bool,
}

pub fn table_two_column(k: u32) -> Option<&'static TableTwoColumn> {
    TABLE_TWO.iter().find(|c| c.k == k)
}

/// Evaluates one Table II cell pair and checks it against Theorem 9 by
/// comparing `L * div` with the column numerator.
pub fn table_two_row(k: u32, m: u32) -> Result<TableTwoRow> {
    let col =
        table_two_column(k).ok_or_else(|| Error::InvalidParameters(format!("Table II has no column for k = {k}")))?;
    let n = col.n_per_m * m;
    let b = bounds(m, k)?;
    let (l0, l1) = (b.l0.expect("k >= 2"), b.l1.expect("k >= 2"));
    let matches = &l0 * col.l0.div == col.l0.numerator(n, m) && &l1 * col.l1.div == col.l1.numerator(n, m);
    Ok(TableTwoRow {
        k,
        m,
        n,
        l0: l0.to_string(),
        l1: l1.to_string(),
        matches,
    })
}

/// Maximum-span entries of Table I. `relation` says how the family's
/// maximum span relates to `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableOneRow {
    pub family: &'static str,
    pub n: u32,
    pub family_size: String,
    pub relation: &'static str,
    pub value: String,
    /// Largest span measured at desk scale, where it was computed.
    pub measured: Option<u64>,
}

fn binomial(n: u32, r: u32) -> BigUint {
    (0..r).fold(BigUint::from(1u32), |acc, j| acc * (n - j) / (j + 1))
}

/// Table I rows for a tower (m, k) with n = 2mk. Rows whose n-shape does not
/// fit (m, k) are omitted.
pub fn table_one(m: u32, k: u32) -> Result<Vec<TableOneRow>> {
    if m < 2 || k == 0 {
        return Err(Error::InvalidParameters(format!(
            "m >= 2, k >= 1 required (m={m}, k={k})"
        )));
    }
    let n = 2 * m * k;
    let half = n / 2;
    let size = (BigUint::from(1u32) << half).to_string();
    let mut rows = Vec::new();
    let mut push = |family, relation, value: BigUint| {
        rows.push(TableOneRow {
            family,
            n,
            family_size: size.clone(),
            relation,
            value: value.to_string(),
            measured: None,
        })
    };
    if n.is_multiple_of(4) {
        push("Bent function sequences", ">=", binomial(half, n / 4) << half);
    }
    if k == 1 {
        push("Small set of Kasami sequences", "=", BigUint::from(3 * n / 2));
        push(
            "No sequences",
            "=",
            BigUint::from(n) * ((BigUint::from(1u32) << half) - 1u32) / 2u32,
        );
    }
    if k >= 2 {
        // 3n(3k-1)^(m-2)/2; n is even so the division is exact
        push(
            "TN sequences",
            ">",
            BigUint::from(3 * n) * BigUint::from(3 * k - 1).pow(m - 2) / 2u32,
        );
        push("Sequences we studied", ">", bounds(m, k)?.l1.expect("k >= 2"));
    }
    Ok(rows)
}

/// Outcome of comparing L1 (k = 3, n = 6m) against the TN upper bound
/// U_TN = 9n (16/3)^(n/4 - 3).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TnComparison {
    pub m: u32,
    pub n: u32,
    pub l1: String,
    /// L1 / U_TN, for display only.
    pub ratio: f64,
    /// Decided exactly: L1^4 3^(n-12) > (9n)^4 16^(n-12).
    pub exceeds: bool,
}

pub fn tn_comparison(m: u32) -> Result<TnComparison> {
    if m < 2 {
        return Err(Error::InvalidParameters(format!("n = 6m needs m >= 2 (m = {m})")));
    }
    let n = 6 * m;
    let l1 = bounds(m, 3)?.l1.expect("k = 3");
    let e = n - 12;
    let lhs = l1.pow(4) * BigUint::from(3u32).pow(e);
    let rhs = BigUint::from(9 * n).pow(4) * BigUint::from(16u32).pow(e);
    let ratio = big_ratio(&lhs, &rhs).powf(0.25);
    Ok(TnComparison {
        m,
        n,
        l1: l1.to_string(),
        ratio,
        exceeds: lhs > rhs,
    })
}

/// a / b as f64 for numbers beyond the f64 range.
fn big_ratio(a: &BigUint, b: &BigUint) -> f64 {
    let shift = a.bits().max(b.bits()).saturating_sub(1000);
    let a = (a >> shift).to_f64().unwrap_or(0.0);
    let b = (b >> shift).to_f64().unwrap_or(0.0);
    if b == 0.0 {
        f64::INFINITY
    } else {
        a / b
    }
}

/// U_No = 2^(n/2) n / 2.
pub fn no_upper_bound(n: u32) -> BigUint {
    (BigUint::from(n) << (n / 2)) >> 1
}
