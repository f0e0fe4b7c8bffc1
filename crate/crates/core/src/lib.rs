//! Compressed-text full-text index built on a sampled suffix tree over a
//! difference-cover sample, answering count and locate in time linear in the
//! packed pattern length.

pub mod bitvec;
pub mod counters;
pub mod diffcover;
pub mod engine;
pub mod error;
pub mod fastreport;
pub mod jumps;
pub mod lcp;
#[cfg(any(test, feature = "verify"))]
pub mod oracle;
pub mod packed;
pub mod par;
pub mod ranges;
pub mod rmq;
pub mod sais;
mod serial;
pub mod smallpat;
pub mod sst;
pub mod text;
pub mod wavelet;

pub use counters::Counters;
pub use diffcover::DifferenceCover;
pub use engine::{Config, Index, Mode, Params, Stats};
pub use error::{Error, Result};
pub use text::TextModel;
