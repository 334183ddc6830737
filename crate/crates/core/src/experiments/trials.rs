use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::space::{TactonSpace, ValueTuple};

use super::ExperimentError;

/// Trials per block when identifying one directional set.
pub const SET_BLOCK_TRIALS: usize = 100;
/// Trials per session for the direction/size/speed spaces.
pub const SPACE_SESSION_TRIALS: usize = 96;

/// How stimuli are drawn from a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// Independent uniform draws with replacement.
    #[default]
    Uniform,
    /// Every class appears ⌊n/k⌋ or ⌈n/k⌉ times, in shuffled order.
    Balanced,
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Class indices in `0..classes` for `n` trials.
pub fn generate_indices(
    classes: usize,
    n: usize,
    seed: u64,
    mode: SamplingMode,
) -> Result<Vec<usize>, ExperimentError> {
    if n == 0 {
        return Err(ExperimentError::NoTrials);
    }
    if classes == 0 {
        return Err(ExperimentError::EmptySpace);
    }
    let mut rng = rng(seed);
    Ok(match mode {
        SamplingMode::Uniform => (0..n).map(|_| rng.random_range(0..classes)).collect(),
        SamplingMode::Balanced => {
            let mut out: Vec<usize> = (0..n / classes).flat_map(|_| 0..classes).collect();
            out.extend(index::sample(&mut rng, classes, n % classes));
            out.shuffle(&mut rng);
            out
        }
    })
}

/// Stimulus tuples for `n` trials over `space`; identical for equal seeds.
pub fn generate_trials(
    space: &TactonSpace,
    n: usize,
    seed: u64,
    mode: SamplingMode,
) -> Result<Vec<ValueTuple>, ExperimentError> {
    Ok(generate_indices(space.cardinality(), n, seed, mode)?
        .into_iter()
        .map(|i| space.tuple_at(i))
        .collect())
}

/// Williams design row 0: 0, 1, k-1, 2, k-2, ...
fn williams_first_row(k: usize) -> Vec<usize> {
    let mut row = Vec::with_capacity(k);
    let (mut lo, mut hi) = (0, k);
    for j in 0..k {
        if j % 2 == 0 {
            row.push(lo);
            lo += 1;
        } else {
            hi -= 1;
            row.push(hi);
        }
    }
    row
}

/// Block order for every participant.
///
/// When `participants` is a multiple of `blocks` the rows of a balanced
/// Latin square are dealt out in turn; otherwise participant `p` gets the
/// cyclic rotation starting at block `p mod blocks`. Either way each block
/// occupies each position equally often, up to the remainder.
pub fn counterbalance(
    participants: usize,
    blocks: usize,
) -> Result<Vec<Vec<usize>>, ExperimentError> {
    if blocks == 0 {
        return Err(ExperimentError::NoBlocks);
    }
    if participants < blocks {
        return Err(ExperimentError::TooFewParticipants {
            participants,
            blocks,
        });
    }
    let first = williams_first_row(blocks);
    Ok((0..participants)
        .map(|p| {
            let shift = p % blocks;
            if participants.is_multiple_of(blocks) {
                first.iter().map(|&b| (b + shift) % blocks).collect()
            } else {
                (0..blocks).map(|j| (j + shift) % blocks).collect()
            }
        })
        .collect())
}

/// One block of a participant's session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    /// Set or space name, as accepted by [`crate::SetCatalog::space`].
    pub space: String,
    pub trials: usize,
    /// Training blocks let the participant explore the set; nothing is
    /// scored.
    #[serde(default)]
    pub training: bool,
    #[serde(default)]
    pub mode: SamplingMode,
}

impl Block {
    /// 100-trial uniform block over a directional set.
    pub fn set(name: impl Into<String>) -> Self {
        Self {
            space: name.into(),
            trials: SET_BLOCK_TRIALS,
            training: false,
            mode: SamplingMode::Uniform,
        }
    }

    /// 96-trial balanced block over a multi-dimensional space.
    pub fn space(name: impl Into<String>) -> Self {
        Self {
            space: name.into(),
            trials: SPACE_SESSION_TRIALS,
            training: false,
            mode: SamplingMode::Balanced,
        }
    }

    pub fn training(name: impl Into<String>) -> Self {
        Self {
            training: true,
            ..Self::set(name)
        }
    }
}

/// A participant's blocks in presentation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialPlan {
    pub participant: String,
    pub seed: u64,
    pub blocks: Vec<Block>,
}

impl TrialPlan {
    /// Plans for a whole study: each participant gets the scored blocks in
    /// a counterbalanced order, each preceded by a training block over the
    /// same set when `with_training` is set.
    pub fn study(
        participants: usize,
        blocks: &[Block],
        seed: u64,
        with_training: bool,
    ) -> Result<Vec<TrialPlan>, ExperimentError> {
        let orders = counterbalance(participants, blocks.len())?;
        Ok(orders
            .into_iter()
            .enumerate()
            .map(|(p, order)| TrialPlan {
                participant: format!("P{:02}", p + 1),
                seed: seed.wrapping_add(p as u64),
                blocks: order
                    .into_iter()
                    .flat_map(|b| {
                        let scored = blocks[b].clone();
                        let training = with_training.then(|| Block {
                            training: true,
                            ..scored.clone()
                        });
                        training.into_iter().chain(std::iter::once(scored))
                    })
                    .collect(),
            })
            .collect())
    }

    /// Seed for the stimuli of block `index`.
    pub fn block_seed(&self, index: usize) -> u64 {
        self.seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(index as u64 + 1)
    }

    /// Stimuli of block `index` drawn from `space`.
    pub fn stimuli(
        &self,
        index: usize,
        space: &TactonSpace,
    ) -> Result<Vec<ValueTuple>, ExperimentError> {
        let block = &self.blocks[index];
        generate_trials(space, block.trials, self.block_seed(index), block.mode)
    }
}
