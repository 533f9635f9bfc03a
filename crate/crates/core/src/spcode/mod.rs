//! Constacyclic codes, the symbol-pair metric and exact distance engines.

mod code;
pub mod distance;
pub mod metric;
pub mod support;

pub use code::{CodeDescriptor, ConstacyclicCode};
pub use distance::{
    chen_relation, enumerate_codewords, min_hamming, min_pair, singleton_check, DistanceCertificate,
    DistanceKind, Engine, Method, SearchOptions, SingletonReport, SupportRank,
};
pub use metric::{hamming_weight, pair_distance, pair_weight, pair_weight_of_support, pi_expand, support};
pub use support::SupportPattern;
