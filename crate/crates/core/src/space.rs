//! Multi-dimensional Tacton spaces.
//!
//! A [`TactonSpace`] names a few logical dimensions (direction, size,
//! speed, ...) and maps every combination of their values to a Tacton.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::tacton::Tacton;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("space has no dimensions")]
    NoDimensions,
    #[error("dimension {0:?} has no values")]
    EmptyDimension(String),
    #[error("dimension {dimension:?} lists value {value:?} twice")]
    DuplicateValue { dimension: String, value: String },
    #[error("expected dimension {expected:?} at position {position}, found {found:?}")]
    DimensionMismatch {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("expected {expected} dimension values, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("unknown value {value:?} for dimension {dimension:?}")]
    UnknownValue { dimension: String, value: String },
    #[error("tuples {first} and {second} encode to the same Tacton")]
    NotInjective {
        first: ValueTuple,
        second: ValueTuple,
    },
    #[error("malformed value tuple {0:?}")]
    Malformed(String),
}

/// A logical dimension and its ordered values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionDef {
    pub name: String,
    pub values: Vec<String>,
}

impl DimensionDef {
    pub fn new(
        name: impl Into<String>,
        values: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        Self {
            name: name.into(),
            values: values.into_iter().map(Into::into).collect(),
        }
    }

    pub fn index_of(&self, value: &str) -> Option<usize> {
        self.values.iter().position(|v| v == value)
    }
}

/// One value per dimension, in dimension order.
///
/// Text form: `dir=N;size=large;speed=medium`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueTuple {
    pairs: Vec<(String, String)>,
}

impl ValueTuple {
    pub fn new<K: Into<String>, V: Into<String>>(pairs: impl IntoIterator<Item = (K, V)>) -> Self {
        Self {
            pairs: pairs
                .into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn get(&self, dimension: &str) -> Option<&str> {
        self.pairs
            .iter()
            .find(|(k, _)| k == dimension)
            .map(|(_, v)| v.as_str())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl fmt::Display for ValueTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for ValueTuple {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(SpaceError::Malformed(s.to_owned()));
        }
        s.split(';')
            .map(|item| match item.split_once('=') {
                Some((k, v)) if !k.is_empty() && !v.is_empty() => Ok((k.to_owned(), v.to_owned())),
                _ => Err(SpaceError::Malformed(s.to_owned())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|pairs| ValueTuple { pairs })
    }
}

impl Serialize for ValueTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ValueTuple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

type Encoder = dyn Fn(&[usize]) -> Tacton + Send + Sync;

/// Dimensions plus a total, injective encoder from value tuples to Tactons.
#[derive(Clone)]
pub struct TactonSpace {
    name: String,
    dimensions: Vec<DimensionDef>,
    encoder: Arc<Encoder>,
}

impl fmt::Debug for TactonSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TactonSpace")
            .field("name", &self.name)
            .field("dimensions", &self.dimensions)
            .finish_non_exhaustive()
    }
}

impl TactonSpace {
    /// Builds the space and checks that the encoder is injective by
    /// enumerating every tuple. The encoder receives one value index per
    /// dimension.
    pub fn new(
        name: impl Into<String>,
        dimensions: Vec<DimensionDef>,
        encoder: impl Fn(&[usize]) -> Tacton + Send + Sync + 'static,
    ) -> Result<Self, SpaceError> {
        if dimensions.is_empty() {
            return Err(SpaceError::NoDimensions);
        }
        for dim in &dimensions {
            if dim.values.is_empty() {
                return Err(SpaceError::EmptyDimension(dim.name.clone()));
            }
            let mut seen = HashSet::new();
            if let Some(dup) = dim.values.iter().find(|v| !seen.insert(*v)) {
                return Err(SpaceError::DuplicateValue {
                    dimension: dim.name.clone(),
                    value: dup.clone(),
                });
            }
        }
        let space = Self {
            name: name.into(),
            dimensions,
            encoder: Arc::new(encoder),
        };
        let mut seen: std::collections::HashMap<Tacton, usize> = std::collections::HashMap::new();
        for index in 0..space.cardinality() {
            let tacton = space.tacton_at(index);
            if let Some(&prev) = seen.get(&tacton) {
                return Err(SpaceError::NotInjective {
                    first: space.tuple_at(prev),
                    second: space.tuple_at(index),
                });
            }
            seen.insert(tacton, index);
        }
        Ok(space)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimensions(&self) -> &[DimensionDef] {
        &self.dimensions
    }

    pub fn dimension(&self, name: &str) -> Option<&DimensionDef> {
        self.dimensions.iter().find(|d| d.name == name)
    }

    /// Product of the dimension sizes.
    pub fn cardinality(&self) -> usize {
        self.dimensions.iter().map(|d| d.values.len()).product()
    }

    /// Mixed-radix decomposition of a flat index, first dimension most
    /// significant.
    pub fn value_indices(&self, mut index: usize) -> Vec<usize> {
        assert!(
            index < self.cardinality(),
            "index {index} outside the space"
        );
        let mut out = vec![0; self.dimensions.len()];
        for (slot, dim) in out.iter_mut().zip(&self.dimensions).rev() {
            *slot = index % dim.values.len();
            index /= dim.values.len();
        }
        out
    }

    pub fn tuple_at(&self, index: usize) -> ValueTuple {
        let indices = self.value_indices(index);
        ValueTuple::new(
            self.dimensions
                .iter()
                .zip(indices)
                .map(|(d, i)| (d.name.clone(), d.values[i].clone())),
        )
    }

    pub fn tacton_at(&self, index: usize) -> Tacton {
        (self.encoder)(&self.value_indices(index))
    }

    /// Flat index of a tuple; dimension names and order must match.
    pub fn index_of(&self, tuple: &ValueTuple) -> Result<usize, SpaceError> {
        if tuple.len() != self.dimensions.len() {
            return Err(SpaceError::Arity {
                expected: self.dimensions.len(),
                found: tuple.len(),
            });
        }
        let mut index = 0;
        for (position, (dim, (key, value))) in self.dimensions.iter().zip(tuple.pairs()).enumerate()
        {
            if &dim.name != key {
                return Err(SpaceError::DimensionMismatch {
                    position,
                    expected: dim.name.clone(),
                    found: key.clone(),
                });
            }
            let i = dim
                .index_of(value)
                .ok_or_else(|| SpaceError::UnknownValue {
                    dimension: dim.name.clone(),
                    value: value.clone(),
                })?;
            index = index * dim.values.len() + i;
        }
        Ok(index)
    }

    /// Tuple built from bare values in dimension order.
    pub fn tuple(&self, values: &[&str]) -> Result<ValueTuple, SpaceError> {
        if values.len() != self.dimensions.len() {
            return Err(SpaceError::Arity {
                expected: self.dimensions.len(),
                found: values.len(),
            });
        }
        let tuple = ValueTuple::new(
            self.dimensions
                .iter()
                .zip(values)
                .map(|(d, v)| (d.name.clone(), (*v).to_owned())),
        );
        self.index_of(&tuple)?;
        Ok(tuple)
    }

    /// The Tacton encoding `tuple`.
    pub fn compose(&self, tuple: &ValueTuple) -> Result<Tacton, SpaceError> {
        self.index_of(tuple).map(|i| self.tacton_at(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (ValueTuple, Tacton)> + '_ {
        (0..self.cardinality()).map(|i| (self.tuple_at(i), self.tacton_at(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Pattern;

    fn mask_space() -> TactonSpace {
        TactonSpace::new(
            "bits",
            vec![
                DimensionDef::new("hi", ["a", "b"]),
                DimensionDef::new("lo", ["x", "y", "z"]),
            ],
            |ix| Tacton::Static(Pattern::from_mask(1 << (ix[0] * 3 + ix[1]))),
        )
        .unwrap()
    }

    #[test]
    fn tuple_text_round_trip() {
        let t: ValueTuple = "dir=N;size=large;speed=medium".parse().unwrap();
        assert_eq!(t.get("size"), Some("large"));
        assert_eq!(t.to_string(), "dir=N;size=large;speed=medium");
        assert!("dir=N;size".parse::<ValueTuple>().is_err());
        assert!("".parse::<ValueTuple>().is_err());
    }

    #[test]
    fn indices_are_mixed_radix() {
        let s = mask_space();
        assert_eq!(s.cardinality(), 6);
        for i in 0..6 {
            assert_eq!(s.index_of(&s.tuple_at(i)).unwrap(), i);
        }
        assert_eq!(s.tuple_at(4).to_string(), "hi=b;lo=y");
    }

    #[test]
    fn compose_rejects_unknown_values() {
        let s = mask_space();
        let ok = s.tuple(&["b", "z"]).unwrap();
        assert_eq!(
            s.compose(&ok).unwrap(),
            Tacton::Static(Pattern::from_mask(1 << 5))
        );
        assert!(matches!(
            s.tuple(&["b", "w"]),
            Err(SpaceError::UnknownValue { .. })
        ));
        let swapped: ValueTuple = "lo=x;hi=a".parse().unwrap();
        assert!(matches!(
            s.compose(&swapped),
            Err(SpaceError::DimensionMismatch { position: 0, .. })
        ));
    }

    #[test]
    fn non_injective_encoder_rejected() {
        let err = TactonSpace::new("flat", vec![DimensionDef::new("d", ["a", "b"])], |_| {
            Tacton::Static(Pattern::from_mask(1))
        })
        .unwrap_err();
        assert!(matches!(err, SpaceError::NotInjective { .. }));
    }

    #[test]
    fn duplicate_values_rejected() {
        let err = TactonSpace::new("dup", vec![DimensionDef::new("d", ["a", "a"])], |ix| {
            Tacton::Static(Pattern::from_mask(1 << ix[0]))
        })
        .unwrap_err();
        assert!(matches!(err, SpaceError::DuplicateValue { .. }));
    }
}
