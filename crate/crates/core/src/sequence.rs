//! Bit-packed periodic binary sequences.

use std::fmt;

use crate::error::{Error, Result};

/// One period of a binary sequence, packed 64 bits per word.
///
/// Bit `t` lives in word `t / 64` at bit `t % 64`. Bits past `period` in the
/// last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    period: usize,
    words: Vec<u64>,
}

impl BinarySequence {
    pub fn zeros(period: usize) -> Self {
        Self {
            period,
            words: vec![0; period.div_ceil(64)],
        }
    }

    pub fn from_fn(period: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut seq = Self::zeros(period);
        for t in 0..period {
            if f(t) {
                seq.words[t / 64] |= 1 << (t % 64);
            }
        }
        seq
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        Self::from_fn(bits.len(), |t| bits[t])
    }

    /// Parses a string of `0`/`1` characters; whitespace and `_` are ignored.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == '_' => {}
                c => return Err(Error::Parse(format!("unexpected character {c:?} in bit string"))),
            }
        }
        Ok(Self::from_bits(bits))
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn is_empty(&self) -> bool {
        self.period == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, t: usize) -> bool {
        let t = t % self.period;
        (self.words[t / 64] >> (t % 64)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.period).map(move |t| self.get(t))
    }

    /// Number of ones in one period.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.period, |t| !self.get(t))
    }

    /// The sequence `t -> self(t + shift)`.
    pub fn rotate(&self, shift: usize) -> Self {
        Self::from_fn(self.period, |t| self.get(t + shift))
    }

    /// The decimation `t -> self(d * t)`.
    pub fn decimate(&self, d: usize) -> Self {
        let n = self.period as u128;
        Self::from_fn(self.period, |t| self.get(((t as u128 * d as u128) % n) as usize))
    }

    pub fn hamming_distance(&self, other: &Self) -> Result<usize> {
        if self.period != other.period {
            return Err(Error::PeriodMismatch {
                left: self.period,
                right: other.period,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// Smallest `p` dividing the period such that the sequence is `p`-periodic.
    pub fn minimal_period(&self) -> usize {
        let n = self.period;
        (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| (0..n).all(|t| self.get(t) == self.get(t + p)))
            .unwrap_or(n)
    }

    /// Lowercase hex of the packed bytes, bit `t` at byte `t / 8`, bit `t % 8`.
    pub fn to_hex(&self) -> String {
        let nbytes = self.period.div_ceil(8);
        let mut out = String::with_capacity(2 * nbytes);
        for b in 0..nbytes {
            let byte = (self.words[b / 8] >> (8 * (b % 8))) as u8;
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }

    pub fn from_hex(hex: &str, period: usize) -> Result<Self> {
        let hex = hex.trim();
        let nbytes = period.div_ceil(8);
        if hex.len() != 2 * nbytes {
            return Err(Error::Parse(format!(
                "expected {} hex digits for period {period}, found {}",
                2 * nbytes,
                hex.len()
            )));
        }
        let mut seq = Self::zeros(period);
        for b in 0..nbytes {
            let byte = u8::from_str_radix(&hex[2 * b..2 * b + 2], 16)
                .map_err(|e| Error::Parse(format!("bad hex byte at {b}: {e}")))?;
            seq.words[b / 8] |= (byte as u64) << (8 * (b % 8));
        }
        if !period.is_multiple_of(64) {
            let last = seq.words.len() - 1;
            if seq.words[last] >> (period % 64) != 0 {
                return Err(Error::Parse("padding bits set past the period".into()));
            }
        }
        Ok(seq)
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence(period={}, ", self.period)?;
        if self.period <= 128 {
            for b in self.iter() {
                f.write_str(if b { "1" } else { "0" })?;
            }
        } else {
            write!(f, "weight={}", self.weight())?;
        }
        f.write_str(")")
    }
}
