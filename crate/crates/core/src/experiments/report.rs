use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::records::{confusion_from_records, dimension_confusion, TrialRecord};
use super::ExperimentError;

/// Median; the mean of the two middle values for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len().is_multiple_of(2) {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticipantSummary {
    pub participant: String,
    pub trials: usize,
    pub error_rate: f64,
    pub median_response_time_ms: f64,
    pub information_bits: f64,
    /// Error rate of each dimension taken on its own.
    pub dimension_error_rates: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub block: String,
    pub participants: Vec<ParticipantSummary>,
    pub median_error_rate: f64,
    pub median_response_time_ms: f64,
    pub median_information_bits: f64,
    pub median_dimension_error_rates: BTreeMap<String, f64>,
}

/// Descriptive statistics per block, per participant and across
/// participants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionReport {
    pub blocks: Vec<BlockSummary>,
}

impl SessionReport {
    pub fn block(&self, name: &str) -> Option<&BlockSummary> {
        self.blocks.iter().find(|b| b.block == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text table, one line per participant and a median line per
    /// block.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for block in &self.blocks {
            out.push_str(&format!("block {}\n", block.block));
            out.push_str("  participant  trials  error%   median_rt_ms  IT_bits\n");
            for p in &block.participants {
                out.push_str(&format!(
                    "  {:<11}  {:>6}  {:>6.2}  {:>12.0}  {:>7.3}\n",
                    p.participant,
                    p.trials,
                    p.error_rate * 100.0,
                    p.median_response_time_ms,
                    p.information_bits
                ));
            }
            out.push_str(&format!(
                "  {:<11}  {:>6}  {:>6.2}  {:>12.0}  {:>7.3}\n",
                "median",
                "",
                block.median_error_rate * 100.0,
                block.median_response_time_ms,
                block.median_information_bits
            ));
        }
        out
    }
}

fn summarize(
    participant: &str,
    records: &[&TrialRecord],
) -> Result<ParticipantSummary, ExperimentError> {
    let matrix = confusion_from_records(records.iter().copied());
    let times: Vec<f64> = records.iter().map(|r| r.response_time_ms as f64).collect();
    let dimensions: Vec<String> = records[0]
        .stimulus
        .pairs()
        .iter()
        .map(|(k, _)| k.clone())
        .collect();
    let mut dimension_error_rates = BTreeMap::new();
    if dimensions.len() > 1 {
        for d in dimensions {
            let rate = dimension_confusion(records.iter().copied(), &d).error_rate()?;
            dimension_error_rates.insert(d, rate);
        }
    }
    Ok(ParticipantSummary {
        participant: participant.to_owned(),
        trials: records.len(),
        error_rate: matrix.error_rate()?,
        median_response_time_ms: median(&times).expect("nonempty"),
        information_bits: matrix.information_transmission()?,
        dimension_error_rates,
    })
}

/// Groups records by block (first-seen order) and participant and computes
/// error rate, median response time and information transmission.
pub fn analyze(records: &[TrialRecord]) -> Result<SessionReport, ExperimentError> {
    if records.is_empty() {
        return Err(ExperimentError::NoTrials);
    }
    let mut block_order: Vec<&str> = Vec::new();
    let mut grouped: BTreeMap<(&str, &str), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        if !block_order.contains(&r.block.as_str()) {
            block_order.push(&r.block);
        }
        grouped
            .entry((&r.block, &r.participant))
            .or_default()
            .push(r);
    }
    let mut blocks = Vec::new();
    for block in block_order {
        let participants = grouped
            .iter()
            .filter(|((b, _), _)| *b == block)
            .map(|((_, p), recs)| summarize(p, recs))
            .collect::<Result<Vec<_>, _>>()?;
        let col = |f: &dyn Fn(&ParticipantSummary) -> f64| {
            median(&participants.iter().map(f).collect::<Vec<_>>()).expect("nonempty")
        };
        let mut median_dimension_error_rates = BTreeMap::new();
        for d in participants[0].dimension_error_rates.keys() {
            median_dimension_error_rates.insert(d.clone(), col(&|p| p.dimension_error_rates[d]));
        }
        blocks.push(BlockSummary {
            block: block.to_owned(),
            median_error_rate: col(&|p| p.error_rate),
            median_response_time_ms: col(&|p| p.median_response_time_ms),
            median_information_bits: col(&|p| p.information_bits),
            median_dimension_error_rates,
            participants,
        });
    }
    Ok(SessionReport { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{simulate_study, ResponderModel, SamplingMode};
    use crate::library::SetCatalog;

    #[test]
    fn median_conventions() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn matrix_and_direct_counts_agree() {
        let s3 = SetCatalog::builtin().s3_space().unwrap();
        let records = simulate_study(
            &s3,
            &ResponderModel::s3_reference(),
            4,
            96,
            SamplingMode::Balanced,
            5,
        )
        .unwrap();
        let report = analyze(&records).unwrap();
        let block = report.block("s3").unwrap();
        assert_eq!(block.participants.len(), 4);
        for p in &block.participants {
            let mine: Vec<_> = records
                .iter()
                .filter(|r| r.participant == p.participant)
                .collect();
            let wrong = mine.iter().filter(|r| !r.is_correct()).count();
            assert!((p.error_rate - wrong as f64 / mine.len() as f64).abs() < 1e-12);
            let speed_wrong = mine
                .iter()
                .filter(|r| r.stimulus.get("speed") != r.response.get("speed"))
                .count();
            assert!((p.dimension_error_rates["speed"] - speed_wrong as f64 / 96.0).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(analyze(&[]), Err(ExperimentError::NoTrials)));
    }

    #[test]
    fn text_report_lists_participants() {
        let set4 = SetCatalog::builtin().space("set4").unwrap();
        let records = simulate_study(
            &set4,
            &ResponderModel::perfect(),
            2,
            96,
            SamplingMode::Balanced,
            1,
        )
        .unwrap();
        let text = analyze(&records).unwrap().to_text();
        assert!(text.contains("block set4"));
        assert!(text.contains("P02"));
        assert!(text.contains("3.000"));
    }
}
