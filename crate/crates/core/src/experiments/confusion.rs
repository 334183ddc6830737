use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::ExperimentError;

/// Stimulus-by-response counts.
///
/// Classes are labels; a trial is correct when the response label equals
/// the stimulus label, so the two class lists need not coincide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    stimuli: Vec<String>,
    responses: Vec<String>,
    counts: Vec<u64>,
}

fn entropy_bits(counts: impl Iterator<Item = u64>, total: u64) -> f64 {
    let n = total as f64;
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

impl ConfusionMatrix {
    /// All-zero matrix over the given classes.
    pub fn new(stimuli: Vec<String>, responses: Vec<String>) -> Self {
        let counts = vec![0; stimuli.len() * responses.len()];
        Self {
            stimuli,
            responses,
            counts,
        }
    }

    /// Square matrix with identical stimulus and response classes.
    pub fn square(classes: Vec<String>) -> Self {
        Self::new(classes.clone(), classes)
    }

    /// Matrix from nested rows, one row per stimulus.
    pub fn from_rows(
        stimuli: Vec<String>,
        responses: Vec<String>,
        rows: &[Vec<u64>],
    ) -> Result<Self, ExperimentError> {
        if rows.len() != stimuli.len() || rows.iter().any(|r| r.len() != responses.len()) {
            return Err(ExperimentError::Shape {
                rows: stimuli.len(),
                cols: responses.len(),
            });
        }
        Ok(Self {
            stimuli,
            responses,
            counts: rows.concat(),
        })
    }

    /// Builds the classes from the observed labels (sorted) and counts the
    /// pairs.
    pub fn from_pairs<S: AsRef<str>, R: AsRef<str>>(
        pairs: impl IntoIterator<Item = (S, R)> + Clone,
    ) -> Self {
        let stimuli: BTreeSet<String> = pairs
            .clone()
            .into_iter()
            .map(|(s, _)| s.as_ref().to_owned())
            .collect();
        let responses: BTreeSet<String> = pairs
            .clone()
            .into_iter()
            .map(|(_, r)| r.as_ref().to_owned())
            .collect();
        let mut m = Self::new(
            stimuli.into_iter().collect(),
            responses.into_iter().collect(),
        );
        let s_ix: HashMap<String, usize> = m
            .stimuli
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let r_ix: HashMap<String, usize> = m
            .responses
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let cols = m.responses.len();
        for (s, r) in pairs {
            m.counts[s_ix[s.as_ref()] * cols + r_ix[r.as_ref()]] += 1;
        }
        m
    }

    pub fn record(&mut self, stimulus: &str, response: &str) -> Result<(), ExperimentError> {
        let unknown = |label: &str| ExperimentError::UnknownClass(label.to_owned());
        let i = self
            .stimuli
            .iter()
            .position(|s| s == stimulus)
            .ok_or_else(|| unknown(stimulus))?;
        let j = self
            .responses
            .iter()
            .position(|r| r == response)
            .ok_or_else(|| unknown(response))?;
        let cols = self.responses.len();
        self.counts[i * cols + j] += 1;
        Ok(())
    }

    pub fn stimuli(&self) -> &[String] {
        &self.stimuli
    }

    pub fn responses(&self) -> &[String] {
        &self.responses
    }

    pub fn count(&self, stimulus: usize, response: usize) -> u64 {
        self.counts[stimulus * self.responses.len() + response]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        if self.responses.is_empty() {
            return vec![Vec::new(); self.stimuli.len()];
        }
        self.counts
            .chunks(self.responses.len())
            .map(<[u64]>::to_vec)
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn row_total(&self, stimulus: usize) -> u64 {
        (0..self.responses.len())
            .map(|j| self.count(stimulus, j))
            .sum()
    }

    pub fn col_total(&self, response: usize) -> u64 {
        (0..self.stimuli.len())
            .map(|i| self.count(i, response))
            .sum()
    }

    fn correct_in_row(&self, stimulus: usize) -> u64 {
        self.responses
            .iter()
            .position(|r| r == &self.stimuli[stimulus])
            .map_or(0, |j| self.count(stimulus, j))
    }

    fn nonempty_total(&self) -> Result<u64, ExperimentError> {
        match self.total() {
            0 => Err(ExperimentError::EmptyMatrix),
            n => Ok(n),
        }
    }

    /// Fraction of trials answered with a label other than the stimulus.
    pub fn error_rate(&self) -> Result<f64, ExperimentError> {
        let n = self.nonempty_total()?;
        let correct: u64 = (0..self.stimuli.len())
            .map(|i| self.correct_in_row(i))
            .sum();
        Ok(1.0 - correct as f64 / n as f64)
    }

    /// Error rate per stimulus class, skipping classes never presented.
    pub fn per_class_errors(&self) -> Result<Vec<(String, f64)>, ExperimentError> {
        self.nonempty_total()?;
        Ok((0..self.stimuli.len())
            .filter_map(|i| {
                let n = self.row_total(i);
                (n > 0).then(|| {
                    (
                        self.stimuli[i].clone(),
                        1.0 - self.correct_in_row(i) as f64 / n as f64,
                    )
                })
            })
            .collect())
    }

    /// Mutual information between stimulus and response in bits, using the
    /// plain maximum-likelihood (plug-in) estimate:
    /// `Σ p_ij log2(p_ij / (p_i· p_·j))`, empty cells contributing 0.
    pub fn information_transmission(&self) -> Result<f64, ExperimentError> {
        let n = self.nonempty_total()? as f64;
        let row_totals: Vec<f64> = (0..self.stimuli.len())
            .map(|i| self.row_total(i) as f64)
            .collect();
        let col_totals: Vec<f64> = (0..self.responses.len())
            .map(|j| self.col_total(j) as f64)
            .collect();
        let mut bits = 0.0;
        for (i, row) in row_totals.iter().enumerate() {
            for (j, col) in col_totals.iter().enumerate() {
                let c = self.count(i, j);
                if c > 0 {
                    let c = c as f64;
                    bits += c / n * (c * n / (row * col)).log2();
                }
            }
        }
        // rounding can leave tiny negatives for independent data
        Ok(bits.max(0.0))
    }

    /// Entropy of the stimulus marginal in bits.
    pub fn stimulus_entropy(&self) -> Result<f64, ExperimentError> {
        let n = self.nonempty_total()?;
        Ok(entropy_bits(
            (0..self.stimuli.len()).map(|i| self.row_total(i)),
            n,
        ))
    }

    /// Entropy of the response marginal in bits.
    pub fn response_entropy(&self) -> Result<f64, ExperimentError> {
        let n = self.nonempty_total()?;
        Ok(entropy_bits(
            (0..self.responses.len()).map(|j| self.col_total(j)),
            n,
        ))
    }

    /// Folds response class `from` into `into`.
    pub fn merge_responses(&self, into: usize, from: usize) -> Self {
        assert!(into != from, "cannot merge a class into itself");
        let responses: Vec<String> = self
            .responses
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != from)
            .map(|(_, r)| r.clone())
            .collect();
        let rows: Vec<Vec<u64>> = (0..self.stimuli.len())
            .map(|i| {
                (0..self.responses.len())
                    .filter(|&j| j != from)
                    .map(|j| self.count(i, j) + if j == into { self.count(i, from) } else { 0 })
                    .collect()
            })
            .collect();
        Self::from_rows(self.stimuli.clone(), responses, &rows).expect("shape preserved")
    }

    /// Reorders classes: row `k` of the result is row `stimulus_order[k]`.
    pub fn permuted(&self, stimulus_order: &[usize], response_order: &[usize]) -> Self {
        let rows: Vec<Vec<u64>> = stimulus_order
            .iter()
            .map(|&i| response_order.iter().map(|&j| self.count(i, j)).collect())
            .collect();
        Self::from_rows(
            stimulus_order
                .iter()
                .map(|&i| self.stimuli[i].clone())
                .collect(),
            response_order
                .iter()
                .map(|&j| self.responses[j].clone())
                .collect(),
            &rows,
        )
        .expect("permutation preserves shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("c{i}")).collect()
    }

    /// Direct transcription of the summation over joint probabilities.
    fn brute_force_it(rows: &[Vec<u64>]) -> f64 {
        let n: u64 = rows.iter().flatten().sum();
        let n = n as f64;
        let p_row: Vec<f64> = rows
            .iter()
            .map(|r| r.iter().sum::<u64>() as f64 / n)
            .collect();
        let p_col: Vec<f64> = (0..rows[0].len())
            .map(|j| rows.iter().map(|r| r[j]).sum::<u64>() as f64 / n)
            .collect();
        let mut t = 0.0;
        for (i, r) in rows.iter().enumerate() {
            for (j, &c) in r.iter().enumerate() {
                let p = c as f64 / n;
                if p > 0.0 {
                    t += p * (p / (p_row[i] * p_col[j])).log2();
                }
            }
        }
        t
    }

    #[test]
    fn perfect_eight_classes_is_three_bits() {
        let rows: Vec<Vec<u64>> = (0..8)
            .map(|i| (0..8).map(|j| if i == j { 12 } else { 0 }).collect())
            .collect();
        let m = ConfusionMatrix::from_rows(labels(8), labels(8), &rows).unwrap();
        assert!((m.information_transmission().unwrap() - 3.0).abs() < 1e-9);
        assert_eq!(m.error_rate().unwrap(), 0.0);
    }

    #[test]
    fn independent_rows_carry_nothing() {
        let rows = vec![vec![2, 3, 5]; 4];
        let m = ConfusionMatrix::from_rows(labels(4), labels(3), &rows).unwrap();
        assert!(m.information_transmission().unwrap().abs() < 1e-12);
    }

    #[test]
    fn two_by_two_matches_frozen_value() {
        let rows = vec![vec![3, 1], vec![1, 3]];
        let m = ConfusionMatrix::from_rows(labels(2), labels(2), &rows).unwrap();
        let expected = 0.188_721_875_540_867_14;
        assert!((m.information_transmission().unwrap() - expected).abs() < 1e-12);
        assert!((brute_force_it(&rows) - expected).abs() < 1e-12);
    }

    #[test]
    fn error_rates() {
        let all_wrong = vec![vec![0, 5], vec![7, 0]];
        let m = ConfusionMatrix::from_rows(labels(2), labels(2), &all_wrong).unwrap();
        assert_eq!(m.error_rate().unwrap(), 1.0);

        let mut m = ConfusionMatrix::square(labels(8));
        for t in 0..100 {
            let s = format!("c{}", t % 8);
            let r = if t < 2 {
                format!("c{}", (t + 1) % 8)
            } else {
                s.clone()
            };
            m.record(&s, &r).unwrap();
        }
        assert!((m.error_rate().unwrap() - 0.02).abs() < 1e-15);
        let per_class = m.per_class_errors().unwrap();
        assert_eq!(per_class.len(), 8);
        assert!((per_class[0].1 - 1.0 / 13.0).abs() < 1e-15);
    }

    #[test]
    fn empty_matrix_errors() {
        let m = ConfusionMatrix::square(labels(3));
        assert!(matches!(m.error_rate(), Err(ExperimentError::EmptyMatrix)));
        assert!(matches!(
            m.information_transmission(),
            Err(ExperimentError::EmptyMatrix)
        ));
        assert!(matches!(
            m.per_class_errors(),
            Err(ExperimentError::EmptyMatrix)
        ));
    }

    #[test]
    fn unknown_labels_rejected() {
        let mut m = ConfusionMatrix::square(labels(2));
        assert!(matches!(
            m.record("c0", "zz"),
            Err(ExperimentError::UnknownClass(_))
        ));
    }

    #[test]
    fn from_pairs_counts() {
        let m = ConfusionMatrix::from_pairs(vec![("a", "a"), ("a", "b"), ("b", "b")]);
        assert_eq!(m.rows(), vec![vec![1, 1], vec![0, 1]]);
        assert!((m.error_rate().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    fn random_matrix() -> impl Strategy<Value = Vec<Vec<u64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u64..20, c), r)
                .prop_filter("nonempty", |rows| rows.iter().flatten().any(|&x| x > 0))
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force(rows in random_matrix()) {
            let m = ConfusionMatrix::from_rows(labels(rows.len()), labels(rows[0].len()), &rows).unwrap();
            let direct = brute_force_it(&rows).max(0.0);
            prop_assert!((m.information_transmission().unwrap() - direct).abs() < 1e-9);
        }

        #[test]
        fn bounded_by_marginal_entropies(rows in random_matrix()) {
            let m = ConfusionMatrix::from_rows(labels(rows.len()), labels(rows[0].len()), &rows).unwrap();
            let it = m.information_transmission().unwrap();
            let bound = m.stimulus_entropy().unwrap().min(m.response_entropy().unwrap());
            prop_assert!(it >= 0.0);
            prop_assert!(it <= bound + 1e-9);
        }

        #[test]
        fn invariant_under_joint_permutation(rows in random_matrix(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let m = ConfusionMatrix::from_rows(labels(rows.len()), labels(rows[0].len()), &rows).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut sp: Vec<usize> = (0..rows.len()).collect();
            let mut rp: Vec<usize> = (0..rows[0].len()).collect();
            sp.shuffle(&mut rng);
            rp.shuffle(&mut rng);
            let p = m.permuted(&sp, &rp);
            prop_assert!((p.information_transmission().unwrap() - m.information_transmission().unwrap()).abs() < 1e-9);
        }

        #[test]
        fn merging_responses_never_adds_information(rows in random_matrix(), a in 0usize..6, b in 0usize..6) {
            let cols = rows[0].len();
            prop_assume!(cols >= 2);
            let (a, b) = (a % cols, b % cols);
            prop_assume!(a != b);
            let m = ConfusionMatrix::from_rows(labels(rows.len()), labels(cols), &rows).unwrap();
            let merged = m.merge_responses(a, b);
            prop_assert_eq!(merged.total(), m.total());
            prop_assert!(merged.information_transmission().unwrap() <= m.information_transmission().unwrap() + 1e-9);
        }
    }
}
