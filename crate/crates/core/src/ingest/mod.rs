//! Reading and writing entity collections, ground truths, embeddings,
//! similarity graphs and matchings, plus the graph quality filter.
//!
//! Every reader and writer handles gzip transparently when the path ends in
//! `.gz`.

mod bundle;
mod edges;
mod embeddings;
mod files;
mod profiles;
mod quality;
mod scores;
mod truth;

pub use bundle::{default_attributes, BundleStats, DatasetBundle};
pub use edges::{read_edge_list, read_matching, write_edge_list, write_matching, MatchingHeader};
pub use embeddings::{read_embeddings, write_embeddings};
pub use files::{create, open};
pub use profiles::{
    read_csv_profiles, read_jsonl_profiles, read_profiles, write_profiles, CsvOptions,
    ProfileFormat,
};
pub use quality::{
    is_duplicate, quality_filter, GraphQualityFlags, GraphSummary, DUPLICATE_TOLERANCE, NOISE_F1,
};
pub use scores::{read_score_matrix, write_score_matrix};
pub use truth::{read_ground_truth, write_ground_truth};
