//! JSON file formats: algebras, presheaves and chain complex exports.
//!
//! Algebra files are written by hand and refer to elements by label.
//! Presheaf files are machine-written and use element indices throughout:
//! an element of `X(n)` is an index below `levels[n]`, and for presheaves
//! built from an algebra it is the tuple code of `(a₁, …, aₙ)` with `a₁`
//! the most significant digit.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use segal_core::algebra::{FinAbGroup, FinAbMonoid, GMonoid};
use segal_core::diagram::GammaOpMap;
use segal_core::gamma::{
    build_gamma_set, build_ggamma_set, tabulate, tabulate_g, GGammaSet, GMonoidGammaSet,
    MonoidGammaSet, TabulatedGGammaSet, TabulatedGammaSet, TrivialAction,
};
use segal_core::ggamma::GGammaMap;
use segal_core::group::FiniteGroup;
use segal_core::homology::ChainComplex;

use crate::error::{CliError, CliResult};

pub const PRESHEAF_FORMAT: &str = "segal-presheaf";
pub const PRESHEAF_VERSION: u32 = 1;
/// Morphisms between levels up to this bound enter the table digest.
pub const DIGEST_LEVELS: usize = 3;

/// An element label in a hand-written algebra file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Text(s) => f.write_str(s),
        }
    }
}

fn check_labels(what: &str, labels: &[Label]) -> CliResult<()> {
    if labels.is_empty() {
        return Err(CliError::Input(format!("{what}: no elements")));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(CliError::Input(format!("{what}: duplicate element {l}")));
        }
    }
    Ok(())
}

fn resolve(what: &str, labels: &[Label], label: &Label) -> CliResult<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| CliError::Input(format!("{what}: unknown element {label}")))
}

fn resolve_table(what: &str, labels: &[Label], rows: &[Vec<Label>]) -> CliResult<Vec<Vec<usize>>> {
    rows.iter()
        .map(|row| row.iter().map(|l| resolve(what, labels, l)).collect())
        .collect()
}

fn algebra_error(what: &str, e: segal_core::Error) -> CliError {
    match CliError::from(e) {
        CliError::Algebra(m) => CliError::Algebra(format!("{what}: {m}")),
        other => other,
    }
}

/// `{"elements": [...], "table": [[...]]}`; the identity must come first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub elements: Vec<Label>,
    pub table: Vec<Vec<Label>>,
}

impl GroupFile {
    pub fn load(&self) -> CliResult<FiniteGroup> {
        check_labels("group", &self.elements)?;
        let rows = resolve_table("group", &self.elements, &self.table)?;
        FiniteGroup::from_table(rows).map_err(|e| algebra_error("group", e))
    }

    /// Labels the elements of `group` by their indices.
    pub fn from_group(group: &FiniteGroup) -> Self {
        GroupFile {
            elements: index_labels(group.order()),
            table: int_rows(&group.rows()),
        }
    }
}

/// `{"elements", "unit", "table"}` with an optional `"inverse"` list that
/// declares the monoid to be a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    pub elements: Vec<Label>,
    pub unit: Label,
    pub table: Vec<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<Label>>,
}

impl MonoidFile {
    pub fn load(&self) -> CliResult<FinAbMonoid> {
        check_labels("monoid", &self.elements)?;
        let rows = resolve_table("monoid", &self.elements, &self.table)?;
        let unit = resolve("monoid", &self.elements, &self.unit)?;
        let monoid = FinAbMonoid::new(rows, unit).map_err(|e| algebra_error("monoid", e))?;
        if let Some(inverse) = &self.inverse {
            let inverse = inverse
                .iter()
                .map(|l| resolve("monoid", &self.elements, l))
                .collect::<CliResult<Vec<_>>>()?;
            FinAbGroup::with_inverse(monoid.clone(), inverse)
                .map_err(|e| algebra_error("group", e))?;
        }
        Ok(monoid)
    }

    pub fn from_monoid(monoid: &FinAbMonoid) -> Self {
        MonoidFile {
            elements: index_labels(monoid.order()),
            unit: Label::Int(monoid.unit() as i64),
            table: int_rows(&monoid.rows()),
            inverse: None,
        }
    }
}

/// `{"group", "monoid", "action"}`: `action[g][a]` is the label of `g·a`,
/// with rows in the order of the group's elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub group: GroupFile,
    pub monoid: MonoidFile,
    pub action: Vec<Vec<Label>>,
}

impl ActionFile {
    pub fn load(&self) -> CliResult<GMonoid> {
        let group = self.group.load()?;
        let monoid = self.monoid.load()?;
        let rows = resolve_table("action", &self.monoid.elements, &self.action)?;
        GMonoid::new(monoid, group, rows).map_err(|e| algebra_error("action", e))
    }
}

/// Either kind of algebra file; an `"action"` key selects the G-monoid form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraFile {
    Action(ActionFile),
    Monoid(MonoidFile),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Monoid(FinAbMonoid),
    Action(GMonoid),
}

impl AlgebraFile {
    pub fn from_value(value: Value) -> CliResult<Self> {
        let is_action = value.get("action").is_some();
        let parsed = if is_action {
            serde_json::from_value(value).map(AlgebraFile::Action)
        } else {
            serde_json::from_value(value).map(AlgebraFile::Monoid)
        };
        parsed.map_err(|e| CliError::Input(format!("algebra file: {e}")))
    }

    pub fn load(&self) -> CliResult<Algebra> {
        Ok(match self {
            AlgebraFile::Monoid(m) => Algebra::Monoid(m.load()?),
            AlgebraFile::Action(a) => Algebra::Action(a.load()?),
        })
    }
}

fn index_labels(n: usize) -> Vec<Label> {
    (0..n as i64).map(Label::Int).collect()
}

fn int_rows(rows: &[Vec<usize>]) -> Vec<Vec<Label>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| Label::Int(v as i64)).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "g-gamma")]
    GGamma,
}

/// The action table of one morphism `(map, element)`; `element` indexes the
/// group and is omitted for Γ-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismTable {
    pub target: usize,
    pub map: Vec<usize>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub element: usize,
    pub table: Vec<usize>,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Presentation {
    /// The action is computed from the embedded algebra.
    Algebraic,
    /// Every morphism of the truncation carries an explicit table.
    Tabulated { morphisms: Vec<MorphismTable> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Digests {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    /// Covers every morphism between levels `0..=table_levels`.
    pub table_levels: usize,
    pub tables: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafFile {
    pub format: String,
    pub version: u32,
    pub kind: Kind,
    pub truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraFile>,
    pub levels: Vec<usize>,
    pub presentation: Presentation,
    pub digests: Digests,
}

/// A loaded presheaf; Γ-sets are viewed as GΓ-sets over the trivial group.
#[derive(Clone, Debug)]
pub enum Presheaf {
    Monoid(TrivialAction<MonoidGammaSet>),
    GMonoid(GMonoidGammaSet),
    Table(TrivialAction<TabulatedGammaSet>),
    GTable(TabulatedGGammaSet),
}

impl GGammaSet for Presheaf {
    fn group(&self) -> &FiniteGroup {
        match self {
            Presheaf::Monoid(x) => x.group(),
            Presheaf::GMonoid(x) => x.group(),
            Presheaf::Table(x) => x.group(),
            Presheaf::GTable(x) => x.group(),
        }
    }
    fn truncation(&self) -> usize {
        match self {
            Presheaf::Monoid(x) => x.truncation(),
            Presheaf::GMonoid(x) => x.truncation(),
            Presheaf::Table(x) => x.truncation(),
            Presheaf::GTable(x) => x.truncation(),
        }
    }
    fn cardinality(&self, n: usize) -> usize {
        match self {
            Presheaf::Monoid(x) => x.cardinality(n),
            Presheaf::GMonoid(x) => x.cardinality(n),
            Presheaf::Table(x) => x.cardinality(n),
            Presheaf::GTable(x) => x.cardinality(n),
        }
    }
    fn act(&self, f: &GGammaMap, x: usize) -> usize {
        match self {
            Presheaf::Monoid(p) => p.act(f, x),
            Presheaf::GMonoid(p) => p.act(f, x),
            Presheaf::Table(p) => p.act(f, x),
            Presheaf::GTable(p) => p.act(f, x),
        }
    }
}

impl Presheaf {
    pub fn kind(&self) -> Kind {
        match self {
            Presheaf::Monoid(_) | Presheaf::Table(_) => Kind::Gamma,
            Presheaf::GMonoid(_) | Presheaf::GTable(_) => Kind::GGamma,
        }
    }

    pub fn levels(&self) -> Vec<usize> {
        (0..=self.truncation())
            .map(|n| self.cardinality(n))
            .collect()
    }

    /// The presheaf `n ↦ Mⁿ` of an algebra, truncated at `levels`.
    pub fn from_algebra(algebra: &Algebra, levels: usize) -> CliResult<Self> {
        if levels == 0 {
            return Err(CliError::Input("--levels must be positive".into()));
        }
        Ok(match algebra {
            Algebra::Monoid(m) => Presheaf::Monoid(TrivialAction::new(build_gamma_set(m, levels)?)),
            Algebra::Action(a) => Presheaf::GMonoid(build_ggamma_set(a, levels)?),
        })
    }
}

/// SHA-256 over the action tables of every morphism between levels
/// `0..=min(N, DIGEST_LEVELS)`, in hom-set order.
pub fn table_digest<X: GGammaSet + ?Sized>(x: &X) -> (usize, String) {
    let top = x.truncation().min(DIGEST_LEVELS);
    let mut hasher = Sha256::new();
    let word = |h: &mut Sha256, v: usize| h.update((v as u64).to_le_bytes());
    for m in 0..=top {
        for n in 0..=top {
            for f in GGammaMap::hom_set(m, n, x.group()) {
                word(&mut hasher, m);
                word(&mut hasher, n);
                for &v in f.map().values() {
                    word(&mut hasher, v);
                }
                word(&mut hasher, f.element());
                for e in 0..x.cardinality(m) {
                    word(&mut hasher, x.act(&f, e));
                }
            }
        }
    }
    (top, hex::encode(hasher.finalize()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn algebra_digest(algebra: &AlgebraFile) -> String {
    let bytes = serde_json::to_vec(algebra).expect("algebra files serialize");
    sha256_hex(&bytes)
}

impl PresheafFile {
    /// Builds the presheaf of `source` truncated at `levels`. With
    /// `tabulated`, every morphism table is written out, subject to `budget`
    /// table entries.
    pub fn build(
        source: &AlgebraFile,
        levels: usize,
        tabulated: bool,
        budget: usize,
    ) -> CliResult<Self> {
        let algebra = source.load()?;
        let x = Presheaf::from_algebra(&algebra, levels)?;
        let presentation = if tabulated {
            Presentation::Tabulated {
                morphisms: export_tables(&x, budget)?,
            }
        } else {
            Presentation::Algebraic
        };
        let group = match &algebra {
            Algebra::Monoid(_) => None,
            Algebra::Action(a) => Some(GroupFile::from_group(a.group())),
        };
        let (table_levels, tables) = table_digest(&x);
        Ok(PresheafFile {
            format: PRESHEAF_FORMAT.into(),
            version: PRESHEAF_VERSION,
            kind: x.kind(),
            truncation: levels,
            group,
            algebra: Some(source.clone()),
            levels: x.levels(),
            presentation,
            digests: Digests {
                algebra: Some(algebra_digest(source)),
                table_levels,
                tables,
            },
        })
    }

    /// Validates the header and the presentation and returns the presheaf.
    /// Digests are recomputed by the commands, not trusted.
    pub fn load(&self) -> CliResult<Presheaf> {
        if self.format != PRESHEAF_FORMAT {
            return Err(CliError::Input(format!("unknown format {:?}", self.format)));
        }
        if self.version != PRESHEAF_VERSION {
            return Err(CliError::Input(format!(
                "unsupported version {}",
                self.version
            )));
        }
        if self.levels.len() != self.truncation + 1 {
            return Err(CliError::Input(format!(
                "{} level sizes for truncation {}",
                self.levels.len(),
                self.truncation
            )));
        }
        let group = match (self.kind, &self.group) {
            (Kind::Gamma, None) => None,
            (Kind::GGamma, Some(g)) => Some(g.load()?),
            (Kind::Gamma, Some(_)) => {
                return Err(CliError::Input("a gamma presheaf has no group".into()))
            }
            (Kind::GGamma, None) => {
                return Err(CliError::Input("a g-gamma presheaf needs a group".into()))
            }
        };
        let x = match &self.presentation {
            Presentation::Algebraic => {
                let source = self.algebra.as_ref().ok_or_else(|| {
                    CliError::Input("algebraic presentation without an algebra".into())
                })?;
                let algebra = source.load()?;
                match (&algebra, &group) {
                    (Algebra::Monoid(_), None) => {}
                    (Algebra::Action(a), Some(g)) if a.group() == g => {}
                    _ => {
                        return Err(CliError::Input(
                            "algebra does not match the presheaf kind".into(),
                        ))
                    }
                }
                Presheaf::from_algebra(&algebra, self.truncation)?
            }
            Presentation::Tabulated { morphisms } => import_tables(&self.levels, group, morphisms)?,
        };
        if x.levels() != self.levels {
            return Err(CliError::Input(format!(
                "level sizes {:?} do not match the presentation {:?}",
                self.levels,
                x.levels()
            )));
        }
        Ok(x)
    }
}

fn export_tables(x: &Presheaf, budget: usize) -> CliResult<Vec<MorphismTable>> {
    let plain = |x: &TabulatedGammaSet| -> Vec<MorphismTable> {
        x.tables()
            .iter()
            .map(|(f, t)| MorphismTable {
                target: f.target(),
                map: f.values().to_vec(),
                element: 0,
                table: t.clone(),
            })
            .collect()
    };
    let equivariant = |x: &TabulatedGGammaSet| -> Vec<MorphismTable> {
        x.tables()
            .iter()
            .map(|(f, t)| MorphismTable {
                target: f.target(),
                map: f.map().values().to_vec(),
                element: f.element(),
                table: t.clone(),
            })
            .collect()
    };
    Ok(match x {
        Presheaf::Monoid(p) => plain(&tabulate(p.inner(), budget)?),
        Presheaf::GMonoid(p) => equivariant(&tabulate_g(p, budget)?),
        Presheaf::Table(p) => plain(p.inner()),
        Presheaf::GTable(p) => equivariant(p),
    })
}

fn import_tables(
    levels: &[usize],
    group: Option<FiniteGroup>,
    morphisms: &[MorphismTable],
) -> CliResult<Presheaf> {
    let parse_map = |m: &MorphismTable| {
        GammaOpMap::new(m.target, m.map.clone())
            .map_err(|e| CliError::Input(format!("morphism {:?}: {e}", m.map)))
    };
    match group {
        None => {
            let mut tables = BTreeMap::new();
            for m in morphisms {
                if m.element != 0 {
                    return Err(CliError::Input("group element in a gamma presheaf".into()));
                }
                if tables.insert(parse_map(m)?, m.table.clone()).is_some() {
                    return Err(CliError::Input(format!("duplicate morphism {:?}", m.map)));
                }
            }
            let x = TabulatedGammaSet::new(levels.to_vec(), tables)?;
            Ok(Presheaf::Table(TrivialAction::new(x)))
        }
        Some(group) => {
            let mut tables = BTreeMap::new();
            for m in morphisms {
                let f = GGammaMap::new(parse_map(m)?, m.element, &group)?;
                if f.element() != m.element {
                    return Err(CliError::Input(format!(
                        "zero map {:?} must use the identity element",
                        m.map
                    )));
                }
                if tables.insert(f, m.table.clone()).is_some() {
                    return Err(CliError::Input(format!(
                        "duplicate morphism {:?}/{}",
                        m.map, m.element
                    )));
                }
            }
            Ok(Presheaf::GTable(TabulatedGGammaSet::new(
                group,
                levels.to_vec(),
                tables,
            )?))
        }
    }
}

/// A chain complex as `{"ranks", "boundaries": [{degree, rows, cols, matrix}]}`
/// with row-major integer matrices; `∂_p` maps degree `p` to `p - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainExport {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<BoundaryExport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryExport {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl ChainExport {
    pub fn new(complex: &ChainComplex) -> Self {
        ChainExport {
            ranks: complex.ranks().to_vec(),
            boundaries: (1..=complex.top())
                .map(|p| {
                    let b = complex.boundary(p);
                    BoundaryExport {
                        degree: p,
                        rows: b.rows(),
                        cols: b.cols(),
                        matrix: b.to_rows(),
                    }
                })
                .collect(),
        }
    }
}
