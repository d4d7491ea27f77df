//! Catalog entries and their JSON form.
//!
//! Rationals are written as integer pairs `[num, den]`. Polynomials are
//! written as text (`"x0^2*x2 - 3/4*x1^3"`) or as a list of terms
//! `{"exp": [i, j, k], "a": [num, den], "b": [num, den]}` meaning
//! `(a + b sqrt(d)) x0^i x1^j x2^k` with `d` the entry's `field_d`.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::glue::split_code;
use super::incidence::Configuration;
use super::CatalogError;
use crate::curve::{parse_constant, parse_point, FamilyKind, ProjPoint, TernaryForm};
use crate::exact::{QuadExt, Rational};
use crate::lattice::{Component, DynkinConfig, RootType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Classical,
    Examples,
    Triplets,
    Pairs,
    Tables,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub group: Group,
    #[serde(with = "config_serde")]
    pub config: DynkinConfig,
    pub configuration: Configuration,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_d: Option<i64>,
    pub members: Vec<Member>,
    /// Frozen regression values of `|M^v / M|`, one per member.
    #[serde(default)]
    pub expected_disc_orders: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub class_checks: Vec<ClassCheckSpec>,
    /// `[i, j]`: member `i` is contained in member `j`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub containments: Vec<[usize; 2]>,
    /// Distinguishing curve as listed in tables, kept as text; not checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_curve: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub name: String,
    pub glue: GlueSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSpec>,
}

/// Digit code (`"-"`, `"060"`, `"{02420,10401}"`) or explicit vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GlueSpec {
    Code(String),
    Explicit { explicit: Vec<Vec<[i64; 2]>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    /// Values chosen for free parameters of the equations, for the record.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<String>,
    /// Empty when the curve is a member of a named family.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<FormSpec>,
    /// Empty for family members, whose points come from closed formulas.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub specials: Vec<SpecialSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Text(String),
    Terms(Vec<TermSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub exp: [u32; 3],
    pub a: [i64; 2],
    #[serde(default = "zero_pair")]
    pub b: [i64; 2],
}

fn zero_pair() -> [i64; 2] {
    [0, 1]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSpec {
    pub coords: String,
    #[serde(rename = "type")]
    pub ade: String,
}

/// An auxiliary curve and its expected intersection numbers at listed
/// points (indices into `points`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialSpec {
    pub form: FormSpec,
    /// Intersect with this factor only; the whole sextic when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub against: Option<usize>,
    pub expect: Vec<[u32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: String,
    pub lambda: String,
    pub expect: String,
}

/// A divisor class that must lie in a member with the given norm and
/// pairing with `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCheckSpec {
    pub member: usize,
    pub vector: Vec<[i64; 2]>,
    pub norm: i64,
    pub lambda: i64,
}

mod config_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(cfg: &DynkinConfig, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(String, usize)> = cfg.components.iter().map(|c| (c.kind.to_string(), c.rank)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DynkinConfig, D::Error> {
        let v: Vec<(String, usize)> = Vec::deserialize(d)?;
        let mut components = Vec::new();
        for (k, n) in v {
            let kind = match k.as_str() {
                "A" => RootType::A,
                "D" => RootType::D,
                "E" => RootType::E,
                _ => return Err(serde::de::Error::custom(format!("unknown root type {k:?}"))),
            };
            components.push(Component::new(kind, n).map_err(serde::de::Error::custom)?);
        }
        Ok(DynkinConfig::new(components))
    }
}

pub fn pair_to_rational(p: [i64; 2]) -> Result<Rational, CatalogError> {
    if p[1] == 0 {
        return Err(CatalogError::Invalid("zero denominator".into()));
    }
    Ok(Rational::new(BigInt::from(p[0]), BigInt::from(p[1])))
}

impl FormSpec {
    pub fn to_form(&self, field_d: Option<i64>) -> Result<TernaryForm, CatalogError> {
        match self {
            FormSpec::Text(s) => Ok(TernaryForm::parse(s)?),
            FormSpec::Terms(ts) => {
                let mut terms = Vec::new();
                for t in ts {
                    let a = pair_to_rational(t.a)?;
                    let b = pair_to_rational(t.b)?;
                    let c = if num_traits::Zero::is_zero(&b) {
                        QuadExt::rational(a)
                    } else {
                        let d = field_d.ok_or_else(|| CatalogError::Invalid("irrational coefficient without field_d".into()))?;
                        QuadExt::new(d, a, b)?
                    };
                    terms.push((t.exp, c));
                }
                Ok(TernaryForm::from_terms(terms))
            }
        }
    }
}

impl PointSpec {
    pub fn point(&self) -> Result<ProjPoint, CatalogError> {
        Ok(parse_point(&self.coords)?)
    }

    pub fn component(&self) -> Result<Component, CatalogError> {
        let cfg: DynkinConfig = self.ade.parse()?;
        match cfg.components.as_slice() {
            [c] => Ok(*c),
            _ => Err(CatalogError::Invalid(format!("{:?} is not a single ADE type", self.ade))),
        }
    }
}

impl GlueSpec {
    pub fn explicit_vectors(&self) -> Result<Option<Vec<Vec<Rational>>>, CatalogError> {
        match self {
            GlueSpec::Code(_) => Ok(None),
            GlueSpec::Explicit { explicit } => explicit
                .iter()
                .map(|v| v.iter().map(|p| pair_to_rational(*p)).collect())
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
        }
    }
}

impl fmt::Display for GlueSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlueSpec::Code(c) => f.write_str(c),
            GlueSpec::Explicit { explicit } => write!(f, "{} explicit vector(s)", explicit.len()),
        }
    }
}

impl CatalogEntry {
    pub fn milnor_number(&self) -> usize {
        self.config.rank()
    }
}

fn schema(id: &str, field: &str, message: impl Into<String>) -> CatalogError {
    CatalogError::Schema {
        entry: id.to_string(),
        field: field.to_string(),
        message: message.into(),
    }
}

/// Structural checks that need no lattice or curve computation beyond
/// parsing.
pub fn validate_entry(e: &CatalogEntry) -> Result<(), CatalogError> {
    let id = e.id.as_str();
    if e.id.trim().is_empty() {
        return Err(schema(id, "id", "empty id"));
    }
    if e.config.components.is_empty() {
        return Err(schema(id, "config", "empty configuration"));
    }
    if e.config.rank() > 19 {
        return Err(schema(id, "config", format!("rank {} exceeds 19", e.config.rank())));
    }
    let want_members = match e.group {
        Group::Triplets => 3..=3,
        _ => 2..=usize::MAX,
    };
    if !want_members.contains(&e.members.len()) {
        return Err(schema(id, "members", format!("{} members for a {:?} entry", e.members.len(), e.group)));
    }
    let dim = e.config.rank() + 1;
    for (mi, m) in e.members.iter().enumerate() {
        let field = format!("members[{mi}].glue");
        match &m.glue {
            GlueSpec::Code(c) => {
                for part in split_code(c).map_err(|err| schema(id, &field, err.to_string()))? {
                    if part.len() != 1 + e.config.components.len() {
                        return Err(schema(
                            id,
                            &field,
                            format!("code {part:?} needs {} digits", 1 + e.config.components.len()),
                        ));
                    }
                }
            }
            GlueSpec::Explicit { explicit } => {
                for v in explicit {
                    if v.len() != dim {
                        return Err(schema(id, &field, format!("vector of length {} in dimension {dim}", v.len())));
                    }
                    if v.iter().any(|p| p[1] == 0) {
                        return Err(schema(id, &field, "zero denominator"));
                    }
                }
            }
        }
        if let Some(c) = &m.curve {
            validate_curve(e, mi, c)?;
        }
    }
    if !e.expected_disc_orders.is_empty() && e.expected_disc_orders.len() != e.members.len() {
        return Err(schema(id, "expected_disc_orders", "one value per member required"));
    }
    for (k, c) in e.class_checks.iter().enumerate() {
        let field = format!("class_checks[{k}]");
        if c.member >= e.members.len() {
            return Err(schema(id, &field, format!("no member {}", c.member)));
        }
        if c.vector.len() != dim || c.vector.iter().any(|p| p[1] == 0) {
            return Err(schema(id, &field, "bad vector"));
        }
    }
    for (k, [i, j]) in e.containments.iter().enumerate() {
        if *i >= e.members.len() || *j >= e.members.len() {
            return Err(schema(id, &format!("containments[{k}]"), "member index out of range"));
        }
    }
    Ok(())
}

fn validate_curve(e: &CatalogEntry, mi: usize, c: &CurveSpec) -> Result<(), CatalogError> {
    let id = e.id.as_str();
    let base = format!("members[{mi}].curve");
    if let Some(f) = &c.family {
        let field = format!("{base}.family");
        f.kind.parse::<FamilyKind>().map_err(|err| schema(id, &field, err.to_string()))?;
        parse_constant(&f.lambda).map_err(|err| schema(id, &field, err.to_string()))?;
        if !c.factors.is_empty() || !c.points.is_empty() {
            return Err(schema(id, &field, "family members take no explicit factors or points"));
        }
        if !["type1", "type2", "type3", "degenerate"].contains(&f.expect.as_str()) {
            return Err(schema(id, &field, format!("unknown family type {:?}", f.expect)));
        }
        return Ok(());
    }
    if c.factors.is_empty() {
        return Err(schema(id, &format!("{base}.factors"), "no factors"));
    }
    let mut degree = 0;
    for (k, f) in c.factors.iter().enumerate() {
        let field = format!("{base}.factors[{k}]");
        let form = f.to_form(e.field_d).map_err(|err| schema(id, &field, err.to_string()))?;
        degree += form.degree().ok_or_else(|| schema(id, &field, "not homogeneous"))?;
    }
    if degree != 6 {
        return Err(schema(id, &format!("{base}.factors"), format!("degrees sum to {degree}, not 6")));
    }
    for (k, p) in c.points.iter().enumerate() {
        let field = format!("{base}.points[{k}]");
        p.point().map_err(|err| schema(id, &field, err.to_string()))?;
        p.component().map_err(|err| schema(id, &field, err.to_string()))?;
    }
    for (k, s) in c.specials.iter().enumerate() {
        let field = format!("{base}.specials[{k}]");
        s.form.to_form(e.field_d).map_err(|err| schema(id, &field, err.to_string()))?;
        if s.against.is_some_and(|a| a >= c.factors.len()) {
            return Err(schema(id, &field, "no such factor"));
        }
        if s.expect.iter().any(|[p, _]| *p as usize >= c.points.len()) {
            return Err(schema(id, &field, "point index out of range"));
        }
    }
    Ok(())
}

/// Parses and validates a JSON catalog (an array of entries).
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    if text.trim().is_empty() {
        return Err(CatalogError::Json {
            line: 1,
            column: 1,
            message: "empty catalog file".into(),
        });
    }
    let entries: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| CatalogError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut seen = std::collections::BTreeSet::new();
    for e in &entries {
        validate_entry(e)?;
        if !seen.insert(e.id.clone()) {
            return Err(schema(&e.id, "id", "duplicate id"));
        }
    }
    Ok(entries)
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

/// Pretty JSON with a trailing newline, as shipped.
pub fn to_json(entries: &[CatalogEntry]) -> String {
    let mut s = serde_json::to_string_pretty(entries).expect("catalog serializes");
    s.push('\n');
    s
}
