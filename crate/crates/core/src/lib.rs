//! Binary sequence families of period 2^n - 1 built from trace maps over a
//! field tower, with exact correlation spectra and linear-span analysis.

pub mod combinatorics;
pub mod correlation;
pub mod error;
pub mod family;
pub mod format;
pub mod gf2;
pub mod ideal;
pub mod sequence;
pub mod span;
pub mod tables;

pub use error::{Error, Result};
pub use family::{FamilyParams, GammaClass};
pub use format::{SeqFile, SeqHeader};
pub use gf2::{Epsilon, FieldElement, FieldTower};
pub use ideal::{IndexSet, LegendreSpec};
pub use sequence::BinarySequence;
pub use span::{berlekamp_massey, bounds, predicted_span, Bounds, SpanReport};
