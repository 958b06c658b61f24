//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's fast paths for the quantity being checked.
#![allow(dead_code)]

use std::sync::Arc;

use seqspan_core::{BinarySequence, FamilyParams, FieldElement, FieldTower, IndexSet};

/// Number of nonzero coefficients of (1 + gamma y + y^2)^e in F_2^n[y]/(y^q - 1),
/// by square-and-multiply on dense coefficient vectors.
pub fn monomial_count(tower: &FieldTower, gamma: FieldElement, e: u64, q: usize) -> usize {
    let mul = |a: &[FieldElement], b: &[FieldElement]| {
        let mut out = vec![FieldElement::ZERO; q];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if !y.is_zero() {
                    let slot = &mut out[(i + j) % q];
                    *slot = tower.add(*slot, tower.mul(x, y));
                }
            }
        }
        out
    };
    let mut base = vec![FieldElement::ZERO; q];
    base[0] = FieldElement::ONE;
    base[1 % q] = tower.add(base[1 % q], gamma);
    base[2 % q] = tower.add(base[2 % q], FieldElement::ONE);
    let mut acc = vec![FieldElement::ZERO; q];
    acc[0] = FieldElement::ONE;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    acc.iter().filter(|c| !c.is_zero()).count()
}

/// R(tau) by the definition, one bit at a time.
pub fn naive_correlation(a: &BinarySequence, b: &BinarySequence, tau: usize) -> i64 {
    (0..a.period())
        .map(|t| if a.get(t) == b.get(t + tau) { 1 } else { -1 })
        .sum()
}

pub fn naive_is_ideal(s: &BinarySequence) -> bool {
    (1..s.period()).all(|tau| naive_correlation(s, s, tau) == -1)
}

/// Euler phi by trial counting.
pub fn brute_phi(n: u64) -> u64 {
    (1..=n).filter(|&x| gcd(x, n) == 1).count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn family(m: u32, k: u32, u: Option<u64>, leaders: &[u64]) -> FamilyParams {
    let tower = Arc::new(FieldTower::new(m, k).unwrap());
    let set = IndexSet::from_leaders(m, leaders.iter().copied()).unwrap();
    match u {
        Some(u) => FamilyParams::new(tower, u, set).unwrap(),
        None => FamilyParams::with_default_u(tower, set).unwrap(),
    }
}
