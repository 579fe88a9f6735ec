//! Stateful premise selection for first-order theorem proving.
//!
//! The pipeline: TPTP statement processing ([`tptp`]), proof-DAG transforms
//! and training-data construction ([`proof`], [`dataset`]), a from-scratch
//! recurrent encoder-decoder with beam search ([`model`]), and the ML/ATP
//! evaluation protocol ([`eval`]).

pub mod dataset;
pub mod eval;
pub mod model;
pub mod proof;
pub mod tptp;

pub use dataset::{DatasetBuilder, SourceFormat, TargetOrdering, TrainingExample, Vocabulary};
pub use eval::{coverage, jaccard, slice_ranking, EvalReport, Ranking};
pub use model::{ModelConfig, Prediction, Seq2SeqModel};
pub use proof::{NestedList, ProofDag, ProofNode, Subproof};
pub use tptp::{FormulaAst, StatementSet, TokenFormat, TokenSeq};
