//! The rank formula `r_1 + r_2 + r_3 + r_4`, normalization of `(A, B)`
//! and the rank classification by sixth-power classes.

mod breakdown;
pub mod census;
mod classify;
mod normalize;

pub use breakdown::{rank, rank_breakdown, rank_terms, CubeTest, RankBreakdown, SquareTest, TermReason};
pub use census::{classification_consistency, CensusGrid, CensusRow, ConsistencyReport};
pub use classify::{classify, ClassTables, Classification, ClassifyResult, Rank2Case};
pub use normalize::{normalize_pair, NormalizeTranscript, NormalizedPair};
