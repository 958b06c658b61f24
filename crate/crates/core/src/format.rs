//! The SEQ1 text format: one header line followed by the sequence as hex.
//!
//! ```text
//! SEQ1 n=12 m=3 k=2 u=1 h=0 I=3 period=4095
//! 5c3a...
//! ```
//!
//! Bit t sits at byte t/8, bit t%8; hex is lowercase.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::sequence::BinarySequence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqHeader {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub u: u64,
    pub h: u64,
    pub leaders: Vec<u64>,
    pub period: usize,
}

impl SeqHeader {
    pub fn for_member(params: &FamilyParams, h: u64) -> Self {
        let t = params.tower();
        Self {
            n: t.n(),
            m: t.m(),
            k: t.k(),
            u: params.u(),
            h,
            leaders: params.index_set().leaders().iter().copied().collect(),
            period: params.period(),
        }
    }
}

impl fmt::Display for SeqHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let leaders: Vec<String> = self.leaders.iter().map(u64::to_string).collect();
        write!(
            f,
            "SEQ1 n={} m={} k={} u={} h={} I={} period={}",
            self.n,
            self.m,
            self.k,
            self.u,
            self.h,
            leaders.join(","),
            self.period
        )
    }
}

impl FromStr for SeqHeader {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let mut parts = line.split_whitespace();
        if parts.next() != Some("SEQ1") {
            return Err(Error::Parse("missing SEQ1 magic".into()));
        }
        let mut fields = std::collections::HashMap::new();
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed header field {part:?}")))?;
            if fields.insert(key, value).is_some() {
                return Err(Error::Parse(format!("duplicate header field {key:?}")));
            }
        }
        fn get<T: FromStr>(fields: &std::collections::HashMap<&str, &str>, key: &str) -> Result<T> {
            let raw = fields
                .get(key)
                .ok_or_else(|| Error::Parse(format!("header field {key} missing")))?;
            raw.parse()
                .map_err(|_| Error::Parse(format!("bad value {raw:?} for {key}")))
        }
        let leaders_raw: String = get(&fields, "I")?;
        let leaders = leaders_raw
            .split(',')
            .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad leader {x:?}"))))
            .collect::<Result<Vec<u64>>>()?;
        Ok(Self {
            n: get(&fields, "n")?,
            m: get(&fields, "m")?,
            k: get(&fields, "k")?,
            u: get(&fields, "u")?,
            h: get(&fields, "h")?,
            leaders,
            period: get(&fields, "period")?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqFile {
    pub header: SeqHeader,
    pub sequence: BinarySequence,
}

impl SeqFile {
    pub fn new(header: SeqHeader, sequence: BinarySequence) -> Result<Self> {
        if header.period != sequence.period() {
            return Err(Error::PeriodMismatch {
                left: header.period,
                right: sequence.period(),
            });
        }
        Ok(Self { header, sequence })
    }

    pub fn for_member(params: &FamilyParams, h: u64) -> Result<Self> {
        Self::new(SeqHeader::for_member(params, h), params.generate_sequence(h)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header: SeqHeader = lines
            .next()
            .ok_or_else(|| Error::Parse("empty SEQ1 file".into()))?
            .parse()?;
        let hex = lines.next().unwrap_or("").trim();
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing data after hex line".into()));
        }
        let sequence = BinarySequence::from_hex(hex, header.period)?;
        Self::new(header, sequence)
    }
}

impl fmt::Display for SeqFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header)?;
        writeln!(f, "{}", self.sequence.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{FieldTower, IndexSet};
    use std::sync::Arc;

    #[test]
    fn round_trip() {
        let tower = Arc::new(FieldTower::new(2, 2).unwrap());
        let params = FamilyParams::with_default_u(tower, IndexSet::from_leaders(2, [1]).unwrap()).unwrap();
        let file = SeqFile::for_member(&params, 5).unwrap();
        let text = file.to_string();
        assert!(text.starts_with("SEQ1 n=8 m=2 k=2 u=1 h=5 I=1 period=255\n"));
        assert_eq!(text.lines().nth(1).unwrap().len(), 64);
        assert_eq!(SeqFile::parse(&text).unwrap(), file);
    }

    #[test]
    fn hex_layout() {
        let header: SeqHeader = "SEQ1 n=4 m=2 k=1 u=1 h=0 I=1,3 period=9".parse().unwrap();
        assert_eq!(header.leaders, vec![1, 3]);
        let seq = BinarySequence::from_bitstring("100000001").unwrap();
        let file = SeqFile::new(header, seq).unwrap();
        assert_eq!(file.to_string().lines().nth(1), Some("0101"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SeqFile::parse("").is_err());
        assert!("SEQ2 n=1".parse::<SeqHeader>().is_err());
        assert!("SEQ1 n=4 m=2 k=1 u=1 h=0 period=9".parse::<SeqHeader>().is_err());
        assert!("SEQ1 n=x m=2 k=1 u=1 h=0 I=1 period=9".parse::<SeqHeader>().is_err());
        assert!(SeqFile::parse("SEQ1 n=4 m=2 k=1 u=1 h=0 I=1 period=9\n01\n").is_err());
    }
}
