//! Periodic correlation of binary sequences.
//!
//! R_{a,b}(tau) = sum_t (-1)^(a(t) + b(t + tau)) = N - 2 * dist(a, b shifted by tau).
//! Shifts are evaluated with word-packed XOR and popcount against 64
//! pre-shifted copies of the doubled sequence, so every window is word aligned.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::BinarySequence;

fn check_periods(a: &BinarySequence, b: &BinarySequence) -> Result<()> {
    if a.period() != b.period() {
        return Err(Error::PeriodMismatch {
            left: a.period(),
            right: b.period(),
        });
    }
    Ok(())
}

pub fn cross_correlation(a: &BinarySequence, b: &BinarySequence, tau: usize) -> Result<i64> {
    check_periods(a, b)?;
    let n = a.period();
    let dist = a.hamming_distance(&b.rotate(tau % n.max(1)))?;
    Ok(n as i64 - 2 * dist as i64)
}

/// A sequence prepared for fast evaluation of all cyclic shifts.
pub struct ShiftTable {
    period: usize,
    nwords: usize,
    tail_mask: u64,
    shifted: Vec<Vec<u64>>,
}

impl ShiftTable {
    pub fn new(seq: &BinarySequence) -> Self {
        let period = seq.period();
        let nwords = period.div_ceil(64);
        let doubled_bits = 2 * period;
        let len = doubled_bits.div_ceil(64) + 1;
        let mut doubled = vec![0u64; len + 1];
        for t in 0..doubled_bits {
            if seq.get(t) {
                doubled[t / 64] |= 1 << (t % 64);
            }
        }
        let shifted = (0..64)
            .map(|s| {
                (0..len)
                    .map(|w| {
                        if s == 0 {
                            doubled[w]
                        } else {
                            (doubled[w] >> s) | (doubled[w + 1] << (64 - s))
                        }
                    })
                    .collect()
            })
            .collect();
        let tail_mask = match period % 64 {
            0 => !0,
            r => (1u64 << r) - 1,
        };
        Self {
            period,
            nwords,
            tail_mask,
            shifted,
        }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// R_{a,self}(tau) for a sequence `a` of the same period.
    #[inline]
    pub fn correlate(&self, a: &BinarySequence, tau: usize) -> i64 {
        let words = a.words();
        let window = &self.shifted[tau % 64][tau / 64..tau / 64 + self.nwords];
        let last = self.nwords - 1;
        let mut dist = 0u32;
        for j in 0..last {
            dist += (words[j] ^ window[j]).count_ones();
        }
        dist += ((words[last] ^ window[last]) & self.tail_mask).count_ones();
        self.period as i64 - 2 * dist as i64
    }
}

/// R(tau) for tau = 0..N.
pub fn autocorrelation_profile(s: &BinarySequence) -> Vec<i64> {
    if s.is_empty() {
        return Vec::new();
    }
    let table = ShiftTable::new(s);
    (0..s.period()).map(|tau| table.correlate(s, tau)).collect()
}

/// Distribution of all out-of-phase correlation values of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationSpectrum {
    pub family_id: String,
    pub value_counts: BTreeMap<i64, u64>,
    pub r_max: u64,
}

impl CorrelationSpectrum {
    pub fn total(&self) -> u64 {
        self.value_counts.values().sum()
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.value_counts.keys().copied()
    }

    /// `value,count` rows sorted by value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,count\n");
        for (v, c) in &self.value_counts {
            out.push_str(&format!("{v},{c}\n"));
        }
        out
    }
}

/// Spectrum over every (h, l, tau) except the in-phase autocorrelations.
pub fn family_spectrum(family: &[BinarySequence]) -> Result<CorrelationSpectrum> {
    family_spectrum_with_id(family, "")
}

pub fn family_spectrum_with_id(family: &[BinarySequence], family_id: &str) -> Result<CorrelationSpectrum> {
    let Some(first) = family.first() else {
        return Err(Error::InvalidParameters("empty family".into()));
    };
    for s in family {
        check_periods(first, s)?;
    }
    let period = first.period();
    let tables: Vec<ShiftTable> = family.par_iter().map(ShiftTable::new).collect();
    let value_counts = family
        .par_iter()
        .enumerate()
        .map(|(h, a)| {
            let mut local: BTreeMap<i64, u64> = BTreeMap::new();
            let mut tally = |v: i64| *local.entry(v).or_default() += 1;
            for (l, table) in tables.iter().enumerate() {
                let start = usize::from(h == l);
                for tau in start..period {
                    tally(table.correlate(a, tau));
                }
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, part| {
            for (v, c) in part {
                *acc.entry(v).or_default() += c;
            }
            acc
        });
    let r_max = value_counts.keys().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    Ok(CorrelationSpectrum {
        family_id: family_id.to_string(),
        value_counts,
        r_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mseq7() -> BinarySequence {
        BinarySequence::from_bitstring("1110100").unwrap()
    }

    #[test]
    fn cross_correlation_examples() {
        let a = mseq7();
        assert_eq!(cross_correlation(&a, &a, 0).unwrap(), 7);
        assert_eq!(cross_correlation(&a, &a.complement(), 0).unwrap(), -7);
        for tau in 1..7 {
            assert_eq!(cross_correlation(&a, &a, tau).unwrap(), -1);
        }
        let short = BinarySequence::zeros(5);
        assert_eq!(
            cross_correlation(&a, &short, 0),
            Err(Error::PeriodMismatch { left: 7, right: 5 })
        );
    }

    #[test]
    fn profiles() {
        assert_eq!(autocorrelation_profile(&mseq7()), vec![7, -1, -1, -1, -1, -1, -1]);
        assert_eq!(autocorrelation_profile(&BinarySequence::zeros(5)), vec![5; 5]);
    }

    #[test]
    fn singleton_ideal_family() {
        let s = family_spectrum(&[mseq7()]).unwrap();
        assert_eq!(s.value_counts.keys().copied().collect::<Vec<_>>(), vec![-1]);
        assert_eq!(s.r_max, 1);
        assert_eq!(s.total(), 6);
        assert_eq!(s.to_csv(), "value,count\n-1,6\n");
    }

    fn arb_pair() -> impl Strategy<Value = (Vec<bool>, Vec<bool>)> {
        (1usize..200).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
    }

    proptest! {
        #[test]
        fn shift_table_matches_direct((a, b) in arb_pair(), tau_seed in any::<usize>()) {
            let a = BinarySequence::from_bits(a);
            let b = BinarySequence::from_bits(b);
            let tau = tau_seed % a.period();
            let direct: i64 = (0..a.period())
                .map(|t| if a.get(t) == b.get(t + tau) { 1 } else { -1 })
                .sum();
            prop_assert_eq!(ShiftTable::new(&b).correlate(&a, tau), direct);
            prop_assert_eq!(cross_correlation(&a, &b, tau).unwrap(), direct);
            // R_{a,b}(tau) = R_{b,a}(N - tau)
            let back = cross_correlation(&b, &a, (a.period() - tau) % a.period()).unwrap();
            prop_assert_eq!(back, direct);
        }

        #[test]
        fn autocorrelation_sum_is_square_of_imbalance(bits in proptest::collection::vec(any::<bool>(), 1..300)) {
            let s = BinarySequence::from_bits(bits);
            let imbalance = s.period() as i64 - 2 * s.weight() as i64;
            let total: i64 = autocorrelation_profile(&s).iter().sum();
            prop_assert_eq!(total, imbalance * imbalance);
        }
    }
}
