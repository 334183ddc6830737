use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::space::ValueTuple;

use super::confusion::ConfusionMatrix;
use super::ExperimentError;

/// One answered trial. Both times are measured from stimulus onset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub participant: String,
    pub block: String,
    pub trial: usize,
    pub stimulus: ValueTuple,
    pub response: ValueTuple,
    pub response_time_ms: u64,
    pub exposure_ms: u64,
}

impl TrialRecord {
    pub fn is_correct(&self) -> bool {
        self.stimulus == self.response
    }
}

/// Confusion matrix over the records' stimulus and response labels.
pub fn confusion_from_records<'a>(
    records: impl IntoIterator<Item = &'a TrialRecord>,
) -> ConfusionMatrix {
    let pairs: Vec<(String, String)> = records
        .into_iter()
        .map(|r| (r.stimulus.to_string(), r.response.to_string()))
        .collect();
    ConfusionMatrix::from_pairs(pairs.iter().map(|(s, r)| (s.as_str(), r.as_str())))
}

/// Confusion matrix of a single dimension, e.g. only the `speed` values.
pub fn dimension_confusion<'a>(
    records: impl IntoIterator<Item = &'a TrialRecord>,
    dimension: &str,
) -> ConfusionMatrix {
    let pairs: Vec<(String, String)> = records
        .into_iter()
        .map(|r| {
            (
                r.stimulus.get(dimension).unwrap_or_default().to_owned(),
                r.response.get(dimension).unwrap_or_default().to_owned(),
            )
        })
        .collect();
    ConfusionMatrix::from_pairs(pairs.iter().map(|(s, r)| (s.as_str(), r.as_str())))
}

/// Writes the trial log as CSV with header
/// `participant,block,trial,stimulus,response,response_time_ms,exposure_ms`.
pub fn write_trial_log<W: Write>(out: W, records: &[TrialRecord]) -> Result<(), ExperimentError> {
    let mut writer = csv::Writer::from_writer(out);
    if records.is_empty() {
        writer.write_record([
            "participant",
            "block",
            "trial",
            "stimulus",
            "response",
            "response_time_ms",
            "exposure_ms",
        ])?;
    }
    for record in records {
        writer.serialize(record)?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_trial_log<R: Read>(input: R) -> Result<Vec<TrialRecord>, ExperimentError> {
    let mut reader = csv::Reader::from_reader(input);
    let records = reader
        .deserialize()
        .collect::<Result<Vec<TrialRecord>, _>>()?;
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(trial: usize, s: &str, r: &str) -> TrialRecord {
        TrialRecord {
            participant: "P01".into(),
            block: "s3".into(),
            trial,
            stimulus: s.parse().unwrap(),
            response: r.parse().unwrap(),
            response_time_ms: 2090,
            exposure_ms: 1940,
        }
    }

    #[test]
    fn csv_layout() {
        let records = vec![
            record(
                0,
                "dir=N;size=large;speed=medium",
                "dir=N;size=large;speed=medium",
            ),
            record(
                1,
                "dir=NE;size=small;speed=fast",
                "dir=E;size=small;speed=fast",
            ),
        ];
        let mut buf = Vec::new();
        write_trial_log(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "participant,block,trial,stimulus,response,response_time_ms,exposure_ms"
        );
        assert_eq!(
            lines.next().unwrap(),
            "P01,s3,0,dir=N;size=large;speed=medium,dir=N;size=large;speed=medium,2090,1940"
        );
        assert_eq!(read_trial_log(text.as_bytes()).unwrap(), records);
    }

    #[test]
    fn empty_log_has_header() {
        let mut buf = Vec::new();
        write_trial_log(&mut buf, &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "participant,block,trial,stimulus,response,response_time_ms,exposure_ms\n"
        );
    }

    #[test]
    fn malformed_rows_rejected() {
        let text = "participant,block,trial,stimulus,response,response_time_ms,exposure_ms\nP1,b,x,dir=N,dir=N,1,1\n";
        assert!(read_trial_log(text.as_bytes()).is_err());
        let text = "participant,block,trial,stimulus,response,response_time_ms,exposure_ms\nP1,b,0,dirN,dir=N,1,1\n";
        assert!(read_trial_log(text.as_bytes()).is_err());
    }

    #[test]
    fn per_dimension_matrix() {
        let records = vec![
            record(
                0,
                "dir=N;size=large;speed=medium",
                "dir=N;size=large;speed=fast",
            ),
            record(
                1,
                "dir=S;size=large;speed=medium",
                "dir=S;size=large;speed=medium",
            ),
        ];
        let m = dimension_confusion(&records, "speed");
        assert_eq!(m.stimuli(), ["medium"]);
        assert!((m.error_rate().unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(
            dimension_confusion(&records, "dir").error_rate().unwrap(),
            0.0
        );
    }
}
