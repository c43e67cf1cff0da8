//! Desk-scale check that `Z² * Z` with the word metric, rescaled by `1/n`,
//! converges to the tree product over `{R² with L1}`.

pub mod bfs;
pub mod compile;
pub mod converge;
pub mod corpus;
pub mod group;

pub use bfs::{bfs_oracle, sphere_sizes, RadiusTooLarge};
pub use compile::{compile, junction_bound, scale_is_aligned, CompileError, CompileRegistry, RegistryKey};
pub use converge::{converge_check, converge_corpus, ConvergeError, ConvergenceReport, ConvergenceRow};
pub use corpus::{descriptor_corpus, CORPUS_DENOMINATOR};
pub use group::{group_dist, normal_form, parse_word, GroupElement, Letter, Syllable};
