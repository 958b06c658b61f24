//! Parsing of parameter strings and construction of validated families.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use seqspan_core::combinatorics::{coset_of, default_u, gcd};
use seqspan_core::ideal::{legendre_index_set, IndexSetJson};
use seqspan_core::{FamilyParams, FieldTower, IndexSet, LegendreSpec};

use crate::output::{CliError, CliResult};

/// Longest period any command will generate or analyse without --force.
pub const MAX_PERIOD: u64 = 1 << 24;
/// Largest n for a full-family correlation spectrum without --force.
pub const MAX_SPECTRUM_N: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSpec {
    MSequence,
    Legendre { gamma: u64, zeta: u8 },
    Cosets(Vec<u64>),
    Json(String),
}

impl IndexSpec {
    pub fn parse(s: &str) -> CliResult<Self> {
        let bad = |why: &str| CliError::Validation(format!("index set {s:?}: {why}"));
        if s == "mseq" {
            return Ok(IndexSpec::MSequence);
        }
        if let Some(rest) = s.strip_prefix("legendre:") {
            let (g, z) = rest
                .split_once(',')
                .ok_or_else(|| bad("expected legendre:<gamma>,<zeta>"))?;
            let gamma = g.trim().parse().map_err(|_| bad("gamma is not an integer"))?;
            let zeta = match z.trim() {
                "0" => 0,
                "1" => 1,
                _ => return Err(bad("zeta must be 0 or 1")),
            };
            return Ok(IndexSpec::Legendre { gamma, zeta });
        }
        if let Some(rest) = s.strip_prefix("cosets:") {
            let leaders = rest
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| bad("leaders must be integers")))
                .collect::<CliResult<Vec<u64>>>()?;
            return Ok(IndexSpec::Cosets(leaders));
        }
        if let Some(path) = s.strip_prefix("json:") {
            return Ok(IndexSpec::Json(path.to_string()));
        }
        Err(bad(
            "expected mseq, legendre:<gamma>,<zeta>, cosets:<leaders> or json:<path>",
        ))
    }

    pub fn build(&self, tower: &FieldTower) -> CliResult<IndexSet> {
        let m = tower.m();
        Ok(match self {
            IndexSpec::MSequence => IndexSet::m_sequence(m)?,
            IndexSpec::Legendre { gamma, zeta } => {
                let spec = LegendreSpec::new(m, Some(*gamma), *zeta)?;
                legendre_index_set(&spec, tower)?.0
            }
            IndexSpec::Cosets(leaders) => IndexSet::from_leaders(m, leaders.iter().copied())?,
            IndexSpec::Json(path) => {
                let text = fs::read_to_string(Path::new(path)).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
                let json: IndexSetJson =
                    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{path}: {e}")))?;
                if json.m != m {
                    return Err(CliError::Validation(format!(
                        "{path}: index set is for m = {}, not {m}",
                        json.m
                    )));
                }
                IndexSet::from_json(&json)?
            }
        })
    }
}

/// Parses `auto` or an integer, and checks coprimality with 2^mk - 1.
pub fn parse_u(s: &str, m: u32, k: u32) -> CliResult<u64> {
    let modulus = (1u64 << (m * k)) - 1;
    if s == "auto" {
        let d = default_u(m, k);
        if let Some(g) = d.gcd_reduced.filter(|&g| g != 1) {
            return Err(CliError::Validation(format!(
                "gcd(k-1, 2^m-1) = gcd({}, {}) = {g} != 1: default u is not coprime to 2^mk-1",
                k - 1,
                (1u64 << m) - 1
            )));
        }
        return Ok(d.u);
    }
    let u: u64 = s
        .parse()
        .map_err(|_| CliError::Validation(format!("u must be 'auto' or an integer, got {s:?}")))?;
    let g = gcd(u, modulus);
    if u == 0 || u >= modulus || g != 1 {
        return Err(CliError::Validation(format!(
            "u = {u} must satisfy 1 <= u < 2^mk-1 = {modulus} and gcd(u, 2^mk-1) = 1 (gcd is {g})"
        )));
    }
    Ok(u)
}

/// `all`, or a comma list of indices and inclusive ranges `a-b`.
pub fn parse_h(s: &str, size: u64) -> CliResult<Vec<u64>> {
    if s == "all" {
        return Ok((0..size).collect());
    }
    let bad = || CliError::Validation(format!("bad h selection {s:?}; expected all, 3, 1,4,9 or 0-15"));
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once('-') {
            let a: u64 = a.parse().map_err(|_| bad())?;
            let b: u64 = b.parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if let Some(&h) = out.iter().find(|&&h| h >= size) {
        return Err(CliError::Validation(format!(
            "h = {h} out of range for family of size {size}"
        )));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn tower(m: u32, k: u32) -> CliResult<Arc<FieldTower>> {
    if m < 2 {
        return Err(CliError::Validation(format!("m = {m}: the family needs m >= 2")));
    }
    Ok(Arc::new(FieldTower::new(m, k)?))
}

/// Index set of the coset containing 2^(m-1) - 1, the run index the span
/// bounds are stated for.
pub fn run_index_spec(m: u32) -> CliResult<IndexSpec> {
    let leader = coset_of((1 << (m - 1)) - 1, m)?.leader();
    Ok(IndexSpec::Cosets(vec![leader]))
}

pub fn family(m: u32, k: u32, u: &str, spec: &IndexSpec) -> CliResult<FamilyParams> {
    let u = parse_u(u, m, k)?;
    let tower = tower(m, k)?;
    let set = spec.build(&tower)?;
    Ok(FamilyParams::new(tower, u, set)?)
}

pub fn check_period(period: u64, force: bool, what: &str) -> CliResult<()> {
    if period > MAX_PERIOD && !force {
        return Err(CliError::Validation(format!(
            "{what} at period {period} exceeds the 2^24 cap; pass --force to override"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_specs() {
        assert_eq!(IndexSpec::parse("mseq").unwrap(), IndexSpec::MSequence);
        assert_eq!(
            IndexSpec::parse("legendre:3,1").unwrap(),
            IndexSpec::Legendre { gamma: 3, zeta: 1 }
        );
        assert_eq!(IndexSpec::parse("cosets:1, 3").unwrap(), IndexSpec::Cosets(vec![1, 3]));
        assert!(IndexSpec::parse("legendre:3,2").is_err());
        assert!(IndexSpec::parse("cosets:x").is_err());
        assert!(IndexSpec::parse("bogus").is_err());
    }

    #[test]
    fn u_values() {
        assert_eq!(parse_u("auto", 3, 2).unwrap(), 1);
        assert_eq!(parse_u("auto", 2, 3).unwrap(), 5);
        assert_eq!(parse_u("auto", 3, 4).unwrap(), 1 + 8 + 64);
        let err = parse_u("auto", 2, 4).unwrap_err();
        assert!(err.to_string().contains("gcd(k-1, 2^m-1)"));
        assert!(parse_u("3", 3, 2).is_err());
        assert_eq!(parse_u("5", 3, 2).unwrap(), 5);
    }

    #[test]
    fn h_selection() {
        assert_eq!(parse_h("all", 4).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_h("3,0-1,1", 4).unwrap(), vec![0, 1, 3]);
        assert!(parse_h("4", 4).is_err());
        assert!(parse_h("2-1", 4).is_err());
    }
}
