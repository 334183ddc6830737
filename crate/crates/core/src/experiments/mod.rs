//! Identification-experiment harness.
//!
//! Trials are drawn from a [`TactonSpace`](crate::space::TactonSpace),
//! answers are logged as [`TrialRecord`]s, and [`analyze`] turns a log into
//! error rates, response times and information transmission, all
//! descriptive.

mod confusion;
mod records;
mod report;
mod responder;
mod trials;

use thiserror::Error;

use crate::space::SpaceError;

pub use confusion::ConfusionMatrix;
pub use records::{
    confusion_from_records, dimension_confusion, read_trial_log, write_trial_log, TrialRecord,
};
pub use report::{analyze, median, BlockSummary, ParticipantSummary, SessionReport};
pub use responder::{
    simulate_responder, simulate_study, Adjacency, DimensionConfusion, Responder, ResponderModel,
    ResponseTimeModel,
};
pub use trials::{
    counterbalance, generate_indices, generate_trials, Block, SamplingMode, TrialPlan,
    SET_BLOCK_TRIALS, SPACE_SESSION_TRIALS,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("at least one trial is required")]
    NoTrials,
    #[error("the space has no Tactons")]
    EmptySpace,
    #[error("at least one block is required")]
    NoBlocks,
    #[error("{participants} participants cannot cover {blocks} block positions")]
    TooFewParticipants { participants: usize, blocks: usize },
    #[error("confusion matrix is empty")]
    EmptyMatrix,
    #[error("rows do not match a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize },
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("responder model: {0}")]
    Model(String),
    #[error("trial log: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Space(#[from] SpaceError),
}
