//! Simulated participants with a per-dimension confusion model.
//!
//! Each dimension of a stimulus is perturbed independently: with
//! probability `confusion` the answer is one of that value's neighbours,
//! chosen uniformly. Response times are log-normal around a median.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};
use serde::{Deserialize, Serialize};

use crate::library::Direction;
use crate::player::DEFAULT_CAP_MS;
use crate::space::{TactonSpace, ValueTuple};

use super::records::TrialRecord;
use super::trials::{generate_trials, rng, SamplingMode};
use super::ExperimentError;

/// Which values count as neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjacency {
    /// Previous and next value in the dimension's order.
    #[default]
    Linear,
    /// Like `Linear`, wrapping around.
    Ring,
    /// Compass neighbours among the dimension's direction labels.
    Compass,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionConfusion {
    /// Probability of answering a neighbouring value.
    pub confusion: f64,
    #[serde(default)]
    pub adjacency: Adjacency,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseTimeModel {
    pub median_ms: f64,
    /// Standard deviation of the log response time.
    pub sigma: f64,
}

impl Default for ResponseTimeModel {
    fn default() -> Self {
        Self {
            median_ms: 2000.0,
            sigma: 0.35,
        }
    }
}

/// Confusion model; dimensions not listed are always answered correctly.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResponderModel {
    #[serde(default)]
    pub dimensions: BTreeMap<String, DimensionConfusion>,
    #[serde(default)]
    pub response_time: ResponseTimeModel,
}

impl ResponderModel {
    pub fn perfect() -> Self {
        Self::default()
    }

    pub fn with(
        mut self,
        dimension: impl Into<String>,
        confusion: f64,
        adjacency: Adjacency,
    ) -> Self {
        self.dimensions.insert(
            dimension.into(),
            DimensionConfusion {
                confusion,
                adjacency,
            },
        );
        self
    }

    /// Direction mistaken for a compass neighbour with probability `p`.
    pub fn direction_confusion(p: f64) -> Self {
        Self::default().with("dir", p, Adjacency::Compass)
    }

    /// Reference model for the three-speed space: direction, size and
    /// speed each confused with a neighbour, landing the overall error
    /// rate in the high twenties.
    pub fn s3_reference() -> Self {
        Self::default()
            .with("dir", 0.10, Adjacency::Compass)
            .with("size", 0.08, Adjacency::Linear)
            .with("speed", 0.10, Adjacency::Linear)
    }

    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        serde_json::from_str(text).map_err(|e| ExperimentError::Model(e.to_string()))
    }
}

/// Draws answers for stimuli of one space under a model.
pub struct Responder<'a> {
    space: &'a TactonSpace,
    neighbours: Vec<Option<(f64, Vec<Vec<usize>>)>>,
    response_time: LogNormal<f64>,
    rng: ChaCha8Rng,
}

fn neighbour_table(
    values: &[String],
    adjacency: Adjacency,
) -> Result<Vec<Vec<usize>>, ExperimentError> {
    let k = values.len();
    let order: Vec<usize> = match adjacency {
        Adjacency::Linear | Adjacency::Ring => (0..k).collect(),
        Adjacency::Compass => {
            for v in values {
                v.parse::<Direction>().map_err(|_| {
                    ExperimentError::Model(format!("{v:?} is not a compass direction"))
                })?;
            }
            Direction::COMPASS
                .iter()
                .filter_map(|d| values.iter().position(|v| v == d.label()))
                .collect()
        }
    };
    let wraps = adjacency != Adjacency::Linear;
    let mut table = vec![Vec::new(); k];
    for (pos, &value) in order.iter().enumerate() {
        let mut n = Vec::new();
        if pos > 0 {
            n.push(order[pos - 1]);
        } else if wraps && k > 2 {
            n.push(order[k - 1]);
        }
        if pos + 1 < k {
            n.push(order[pos + 1]);
        } else if wraps && k > 2 {
            n.push(order[0]);
        }
        n.dedup();
        table[value] = n;
    }
    Ok(table)
}

impl<'a> Responder<'a> {
    pub fn new(
        space: &'a TactonSpace,
        model: &ResponderModel,
        seed: u64,
    ) -> Result<Self, ExperimentError> {
        for name in model.dimensions.keys() {
            if space.dimension(name).is_none() {
                return Err(ExperimentError::Model(format!(
                    "space {} has no dimension {name:?}",
                    space.name()
                )));
            }
        }
        let neighbours = space
            .dimensions()
            .iter()
            .map(|dim| match model.dimensions.get(&dim.name) {
                None => Ok(None),
                Some(c) if !(0.0..=1.0).contains(&c.confusion) => {
                    Err(ExperimentError::Probability(c.confusion))
                }
                Some(c) => Ok(Some((
                    c.confusion,
                    neighbour_table(&dim.values, c.adjacency)?,
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rt = model.response_time;
        if !(rt.median_ms > 0.0 && rt.sigma >= 0.0) {
            return Err(ExperimentError::Model(
                "response time median must be positive".into(),
            ));
        }
        let response_time = LogNormal::new(rt.median_ms.ln(), rt.sigma)
            .map_err(|e| ExperimentError::Model(e.to_string()))?;
        Ok(Self {
            space,
            neighbours,
            response_time,
            rng: rng(seed),
        })
    }

    /// Answer and response time for one stimulus. Consumes the same number
    /// of random draws for every stimulus.
    pub fn respond(&mut self, stimulus: &ValueTuple) -> Result<(ValueTuple, u64), ExperimentError> {
        let mut indices = self.space.value_indices(self.space.index_of(stimulus)?);
        for (slot, model) in indices.iter_mut().zip(&self.neighbours) {
            let u: f64 = self.rng.random();
            let pick: f64 = self.rng.random();
            if let Some((p, table)) = model {
                let options = &table[*slot];
                if u < *p && !options.is_empty() {
                    *slot =
                        options[((pick * options.len() as f64) as usize).min(options.len() - 1)];
                }
            }
        }
        let response = ValueTuple::new(
            self.space
                .dimensions()
                .iter()
                .zip(indices)
                .map(|(d, i)| (d.name.clone(), d.values[i].clone())),
        );
        let rt = self.response_time.sample(&mut self.rng).round().max(1.0) as u64;
        Ok((response, rt))
    }
}

/// Simulated answers to `stimuli`, deterministic under `seed`. Exposure is
/// the response time clipped at the stimulus cap.
pub fn simulate_responder(
    space: &TactonSpace,
    model: &ResponderModel,
    participant: &str,
    block: &str,
    stimuli: &[ValueTuple],
    seed: u64,
) -> Result<Vec<TrialRecord>, ExperimentError> {
    let mut responder = Responder::new(space, model, seed)?;
    stimuli
        .iter()
        .enumerate()
        .map(|(trial, stimulus)| {
            let (response, rt) = responder.respond(stimulus)?;
            Ok(TrialRecord {
                participant: participant.to_owned(),
                block: block.to_owned(),
                trial,
                stimulus: stimulus.clone(),
                response,
                response_time_ms: rt,
                exposure_ms: rt.min(DEFAULT_CAP_MS),
            })
        })
        .collect()
}

/// `participants` simulated participants, `trials` each, over one space.
pub fn simulate_study(
    space: &TactonSpace,
    model: &ResponderModel,
    participants: usize,
    trials: usize,
    mode: SamplingMode,
    seed: u64,
) -> Result<Vec<TrialRecord>, ExperimentError> {
    let mut out = Vec::with_capacity(participants * trials);
    for p in 0..participants {
        let participant_seed = seed.wrapping_mul(1_000_003).wrapping_add(p as u64);
        let stimuli = generate_trials(space, trials, participant_seed, mode)?;
        out.extend(simulate_responder(
            space,
            model,
            &format!("P{:02}", p + 1),
            space.name(),
            &stimuli,
            participant_seed ^ 0x5DEE_CE66,
        )?);
    }
    Ok(out)
}
