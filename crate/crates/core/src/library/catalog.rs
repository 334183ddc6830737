use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::pattern::Pattern;
use crate::space::{DimensionDef, TactonSpace};
use crate::tacton::{make_blinking, BlinkRhythm, DynamicTacton, Frame, Tacton};

use super::components::CircuitComponentKind;
use super::direction::{Direction, Size, Speed, SpeedTempos};
use super::shapes::{self, SIDE};
use super::{family_tacton, FamilyKind, LibraryError, SetId};

/// Eight Tactons, one per direction.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionFamily {
    set: SetId,
    tactons: BTreeMap<Direction, Tacton>,
}

impl DirectionFamily {
    fn builtin(set: SetId) -> Self {
        Self {
            set,
            tactons: Direction::ALL
                .into_iter()
                .map(|d| (d, family_tacton(set, d)))
                .collect(),
        }
    }

    pub fn set(&self) -> SetId {
        self.set
    }

    pub fn name(&self) -> &'static str {
        self.set.name()
    }

    pub fn kind(&self) -> FamilyKind {
        self.set.kind()
    }

    pub fn reconstructed(&self) -> bool {
        self.set.reconstructed()
    }

    pub fn tacton(&self, direction: Direction) -> &Tacton {
        &self.tactons[&direction]
    }

    /// Tactons in catalog direction order.
    pub fn iter(&self) -> impl Iterator<Item = (Direction, &Tacton)> {
        Direction::ALL
            .into_iter()
            .map(move |d| (d, &self.tactons[&d]))
    }

    /// The N, S, E, W subset used where only four messages are needed.
    pub fn radials(&self) -> impl Iterator<Item = (Direction, &Tacton)> {
        self.iter().filter(|(d, _)| d.is_radial())
    }

    /// Single-dimension space `dir` over all eight directions.
    pub fn space(&self) -> Result<TactonSpace, LibraryError> {
        self.space_over(&Direction::ALL)
    }

    /// Single-dimension space over N, S, E, W.
    pub fn radial_space(&self) -> Result<TactonSpace, LibraryError> {
        self.space_over(&Direction::RADIALS)
    }

    fn space_over(&self, directions: &[Direction]) -> Result<TactonSpace, LibraryError> {
        let tactons: Vec<Tacton> = directions.iter().map(|d| self.tactons[d].clone()).collect();
        Ok(TactonSpace::new(
            self.name(),
            vec![DimensionDef::new(
                "dir",
                directions.iter().map(|d| d.label()),
            )],
            move |ix| tactons[ix[0]].clone(),
        )?)
    }

    fn check_injective(&self) -> Result<(), LibraryError> {
        let mut seen: HashMap<&Tacton, Direction> = HashMap::new();
        for (d, t) in self.iter() {
            if let Some(prev) = seen.insert(t, d) {
                return Err(LibraryError::NotInjective {
                    family: self.name().to_owned(),
                    first: prev.to_string(),
                    second: d.to_string(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Static,
    Dynamic,
}

/// One named Tacton in the catalog file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: EntryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Pattern>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frames: Option<Vec<Frame>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tempo_ms: Option<u32>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub gap_ms: u32,
}

fn is_zero(v: &u32) -> bool {
    *v == 0
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, tacton: &Tacton) -> Self {
        let name = name.into();
        match tacton {
            Tacton::Static(p) => Self {
                name,
                kind: EntryKind::Static,
                pattern: Some(p.clone()),
                frames: None,
                tempo_ms: None,
                gap_ms: 0,
            },
            Tacton::Dynamic(d) => Self {
                name,
                kind: EntryKind::Dynamic,
                pattern: None,
                frames: Some(d.frames().to_vec()),
                tempo_ms: Some(d.tempo_ms()),
                gap_ms: d.gap_ms(),
            },
        }
    }

    pub fn to_tacton(&self) -> Result<Tacton, LibraryError> {
        let bad = |reason: &str| LibraryError::BadEntry {
            name: self.name.clone(),
            reason: reason.to_owned(),
        };
        match self.kind {
            EntryKind::Static => {
                if self.frames.is_some() || self.tempo_ms.is_some() {
                    return Err(bad("static entries carry only a pattern"));
                }
                let p = self.pattern.clone().ok_or_else(|| bad("missing pattern"))?;
                Ok(Tacton::Static(p))
            }
            EntryKind::Dynamic => {
                if self.pattern.is_some() {
                    return Err(bad("dynamic entries carry frames, not a pattern"));
                }
                let frames = self.frames.clone().ok_or_else(|| bad("missing frames"))?;
                let tempo = self.tempo_ms.ok_or_else(|| bad("missing tempo_ms"))?;
                DynamicTacton::with_gap(frames, tempo, self.gap_ms)
                    .map(Tacton::Dynamic)
                    .map_err(|e| bad(&e.to_string()))
            }
        }
    }
}

/// Every named Tacton family, the shapes behind the direction/size/speed
/// spaces and the component Tactons. Built once, read concurrently.
#[derive(Debug, Clone)]
pub struct SetCatalog {
    families: BTreeMap<SetId, DirectionFamily>,
    shapes: BTreeMap<(Direction, Size), Pattern>,
    components: BTreeMap<CircuitComponentKind, Tacton>,
    speeds: SpeedTempos,
}

impl Default for SetCatalog {
    fn default() -> Self {
        Self::builtin()
    }
}

impl SetCatalog {
    pub fn builtin() -> Self {
        Self {
            families: SetId::ALL
                .into_iter()
                .map(|s| (s, DirectionFamily::builtin(s)))
                .collect(),
            shapes: Direction::ALL
                .into_iter()
                .flat_map(|d| {
                    Size::ALL
                        .into_iter()
                        .map(move |s| ((d, s), shapes::static_directional(d, s)))
                })
                .collect(),
            components: CircuitComponentKind::ALL
                .into_iter()
                .map(|k| (k, Tacton::Static(k.default_pattern())))
                .collect(),
            speeds: SpeedTempos::default(),
        }
    }

    /// Replaces the speed-to-tempo mapping used by the spaces.
    pub fn with_speeds(mut self, speeds: SpeedTempos) -> Self {
        self.speeds = speeds;
        self
    }

    pub fn speeds(&self) -> SpeedTempos {
        self.speeds
    }

    pub fn family(&self, set: SetId) -> &DirectionFamily {
        &self.families[&set]
    }

    pub fn families(&self) -> impl Iterator<Item = &DirectionFamily> {
        self.families.values()
    }

    pub fn shape(&self, direction: Direction, size: Size) -> &Pattern {
        &self.shapes[&(direction, size)]
    }

    pub fn component(&self, kind: CircuitComponentKind) -> &Tacton {
        &self.components[&kind]
    }

    /// Blinking (rhythm 1/1) shape for direction and size at the tempo of
    /// `speed`.
    pub fn compose(&self, direction: Direction, size: Size, speed: Speed) -> Tacton {
        make_blinking(
            self.shape(direction, size).clone(),
            BlinkRhythm::EVEN,
            self.speeds.tempo_ms(speed),
        )
        .expect("catalog shapes are validated non-blank")
    }

    fn multi_space(&self, name: &str, speeds: &[Speed]) -> Result<TactonSpace, LibraryError> {
        let speeds = speeds.to_vec();
        let catalog = self.clone();
        Ok(TactonSpace::new(
            name,
            vec![
                DimensionDef::new("dir", Direction::ALL.iter().map(|d| d.label())),
                DimensionDef::new("size", Size::ALL.iter().map(|s| s.label())),
                DimensionDef::new("speed", speeds.iter().map(|s| s.label())),
            ],
            move |ix| catalog.compose(Direction::ALL[ix[0]], Size::ALL[ix[1]], speeds[ix[2]]),
        )?)
    }

    /// Direction × size × {slow, fast}: 32 Tactons.
    pub fn s2_space(&self) -> Result<TactonSpace, LibraryError> {
        self.multi_space("s2", &[Speed::Slow, Speed::Fast])
    }

    /// Direction × size × {slow, medium, fast}: 48 Tactons.
    pub fn s3_space(&self) -> Result<TactonSpace, LibraryError> {
        self.multi_space("s3", &Speed::ALL)
    }

    pub fn components_space(&self) -> Result<TactonSpace, LibraryError> {
        let tactons: Vec<Tacton> = self.components.values().cloned().collect();
        Ok(TactonSpace::new(
            "circuit_components",
            vec![DimensionDef::new(
                "component",
                self.components.keys().map(|k| k.label()),
            )],
            move |ix| tactons[ix[0]].clone(),
        )?)
    }

    /// Looks up a space by name: a set (`set4`), `s2`, `s3` or
    /// `circuit_components`.
    pub fn space(&self, name: &str) -> Result<TactonSpace, LibraryError> {
        match name {
            "s2" | "s2_space" => self.s2_space(),
            "s3" | "s3_space" => self.s3_space(),
            "circuit_components" => self.components_space(),
            other => self.family(other.parse()?).space(),
        }
    }

    /// Resolves a dotted Tacton name: `set4.N`, `shape.NE.small`,
    /// `circuit.lamp`, `s3.N.large.medium` or `s2.W.small.fast`.
    pub fn resolve(&self, name: &str) -> Result<Tacton, LibraryError> {
        let unknown = || LibraryError::UnknownName(name.to_owned());
        let parts: Vec<&str> = name.split('.').collect();
        match parts.as_slice() {
            ["circuit", kind] => Ok(self.component(kind.parse().map_err(|_| unknown())?).clone()),
            ["shape", d, s] => Ok(Tacton::Static(
                self.shape(
                    d.parse().map_err(|_| unknown())?,
                    s.parse().map_err(|_| unknown())?,
                )
                .clone(),
            )),
            [space @ ("s2" | "s3"), d, s, v] => {
                let space = self.space(space)?;
                let tuple = space.tuple(&[d, s, v]).map_err(|_| unknown())?;
                Ok(space.compose(&tuple)?)
            }
            [set, d] => {
                let set: SetId = set.parse().map_err(|_| unknown())?;
                let d: Direction = d.parse().map_err(|_| unknown())?;
                Ok(self.family(set).tacton(d).clone())
            }
            _ => Err(unknown()),
        }
    }

    /// Every stored Tacton in a fixed order: families, then shapes, then
    /// components.
    pub fn entries(&self) -> Vec<CatalogEntry> {
        let mut out = Vec::new();
        for family in self.families.values() {
            for (d, t) in family.iter() {
                out.push(CatalogEntry::new(format!("{}.{}", family.name(), d), t));
            }
        }
        for d in Direction::ALL {
            for s in Size::ALL {
                out.push(CatalogEntry::new(
                    format!("shape.{d}.{s}"),
                    &Tacton::Static(self.shape(d, s).clone()),
                ));
            }
        }
        for (k, t) in &self.components {
            out.push(CatalogEntry::new(format!("circuit.{k}"), t));
        }
        out
    }

    /// Pretty JSON array of [`CatalogEntry`], newline terminated.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.entries()).expect("entries serialize");
        text.push('\n');
        text
    }

    /// Built-in catalog with the entries of `text` overriding the
    /// same-named layouts.
    pub fn from_json(text: &str) -> Result<Self, LibraryError> {
        let entries: Vec<CatalogEntry> = serde_json::from_str(text)?;
        let mut catalog = Self::builtin();
        catalog.apply(&entries)?;
        Ok(catalog)
    }

    /// Applies overrides; on error the catalog is left unchanged.
    pub fn apply(&mut self, entries: &[CatalogEntry]) -> Result<(), LibraryError> {
        let mut next = self.clone();
        for entry in entries {
            next.apply_one(entry)?;
        }
        next.validate()?;
        *self = next;
        Ok(())
    }

    fn apply_one(&mut self, entry: &CatalogEntry) -> Result<(), LibraryError> {
        let unknown = || LibraryError::UnknownName(entry.name.clone());
        let bad = |reason: &str| LibraryError::BadEntry {
            name: entry.name.clone(),
            reason: reason.to_owned(),
        };
        let tacton = entry.to_tacton()?;
        if tacton.dims() != (SIDE, SIDE) {
            return Err(bad("catalog Tactons are 4x4"));
        }
        let parts: Vec<&str> = entry.name.split('.').collect();
        match parts.as_slice() {
            ["circuit", kind] => {
                let kind: CircuitComponentKind = kind.parse().map_err(|_| unknown())?;
                if !tacton.is_static() {
                    return Err(bad("component Tactons are static"));
                }
                self.components.insert(kind, tacton);
            }
            ["shape", d, s] => {
                let key = (
                    d.parse().map_err(|_| unknown())?,
                    s.parse().map_err(|_| unknown())?,
                );
                match tacton {
                    Tacton::Static(p) if !p.is_blank() => {
                        self.shapes.insert(key, p);
                    }
                    _ => return Err(bad("shapes are non-blank static patterns")),
                }
            }
            [set, d] => {
                let set: SetId = set.parse().map_err(|_| unknown())?;
                let d: Direction = d.parse().map_err(|_| unknown())?;
                let family = self.families.get_mut(&set).expect("every set is present");
                family.tactons.insert(d, tacton);
            }
            _ => return Err(unknown()),
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), LibraryError> {
        for family in self.families.values() {
            family.check_injective()?;
        }
        let mut seen: HashMap<&Tacton, CircuitComponentKind> = HashMap::new();
        for (k, t) in &self.components {
            if let Some(prev) = seen.insert(t, *k) {
                return Err(LibraryError::NotInjective {
                    family: "circuit".to_owned(),
                    first: prev.to_string(),
                    second: k.to_string(),
                });
            }
        }
        self.s3_space()?;
        self.s2_space()?;
        Ok(())
    }
}
