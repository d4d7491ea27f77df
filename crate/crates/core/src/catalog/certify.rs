//! Entry certification: overlattice construction, lattice checks,
//! discriminant-group comparison and the curve side, folded into one verdict.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::entry::{pair_to_rational, CatalogEntry, CurveSpec, GlueSpec, Group};
use super::glue::{decode_glue, generator_conventions};
use super::incidence::validate;
use super::CatalogError;
use crate::curve::{
    a1_points, a5_points, classify_family, family_member, intersections, parse_constant, verify_configuration,
    CurveWithFactors, ExpectedPoint, FamilyKind,
};
use crate::exact::Rational;
use crate::k3::{all_checks, check_names, class_check, CheckReport, ClassExpectation, MemberCheck, Verdict};
use crate::lattice::{
    ambient, discriminant_form, groups_isomorphic, overlattice, Component, DiscriminantForm, Overlattice,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryVerdict {
    Certified,
    PartiallyCertified,
    Failed,
}

impl fmt::Display for EntryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryVerdict::Certified => "certified",
            EntryVerdict::PartiallyCertified => "partially-certified",
            EntryVerdict::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub required: bool,
    #[serde(flatten)]
    pub report: CheckReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCheckResult {
    pub norm: i64,
    pub lambda: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointResult {
    pub point: String,
    pub expected: String,
    pub found: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialResult {
    pub form: String,
    pub against: String,
    pub points: Vec<String>,
    pub expected: Vec<u32>,
    pub found: Vec<u32>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyResult {
    pub kind: String,
    pub lambda: String,
    pub expected: String,
    pub found: String,
    pub detail: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CurveReport {
    pub field_d: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<String>,
    pub factor_degrees: Vec<u32>,
    pub reduced: bool,
    pub points: Vec<PointResult>,
    pub total_milnor: u32,
    /// The stated singular points carry exactly the entry's Dynkin
    /// configuration.
    pub configuration_matches: bool,
    pub degrees_match: bool,
    pub specials: Vec<SpecialResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyResult>,
    pub issues: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MemberReport {
    pub name: String,
    pub glue: String,
    /// Odd `D` components decoded with the second spinor generator.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub alternates: Vec<usize>,
    pub index: Option<u64>,
    pub det: Option<String>,
    pub disc_order: Option<u64>,
    pub expected_disc_order: Option<u64>,
    pub invariant_factors: Vec<u64>,
    /// `|det M| [M:N]^2 = |det N|`.
    pub index_law: Option<bool>,
    pub checks: Vec<NamedCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub class_checks: Vec<ClassCheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveReport>,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub members: [usize; 2],
    /// Discriminant groups are not isomorphic.
    pub distinguished: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentResult {
    pub sub: usize,
    pub sup: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub group: Group,
    pub config: String,
    pub milnor_number: usize,
    pub conventions: Vec<String>,
    pub members: Vec<MemberReport>,
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub containments: Vec<ContainmentResult>,
    pub configuration_issues: Vec<String>,
    pub flags: Vec<String>,
    pub errors: Vec<String>,
    pub verdict: EntryVerdict,
}

impl EntryReport {
    pub fn all_distinguished(&self) -> bool {
        self.comparisons.iter().all(|c| c.distinguished)
    }

    /// Verdict of the named check for every member, `None` where it did not run.
    pub fn check_verdicts(&self, name: &str) -> Vec<Option<Verdict>> {
        self.members
            .iter()
            .map(|m| m.checks.iter().find(|c| c.name == name).map(|c| c.report.verdict))
            .collect()
    }

    pub fn disc_orders(&self) -> Vec<Option<u64>> {
        self.members.iter().map(|m| m.disc_order).collect()
    }
}

pub fn certify(entry: &CatalogEntry) -> EntryReport {
    certify_with(entry, &all_checks())
}

/// Certifies with a chosen set of member checks. Leaving any registered
/// check out caps the verdict at partially-certified.
pub fn certify_with(entry: &CatalogEntry, checks: &[Box<dyn MemberCheck>]) -> EntryReport {
    let mut flags = Vec::new();
    let mut errors = Vec::new();
    let mut members = Vec::new();
    let mut lattices: Vec<Option<(Overlattice, DiscriminantForm)>> = Vec::new();
    for (mi, m) in entry.members.iter().enumerate() {
        let (report, built) = member_report(entry, mi, checks);
        if !report.alternates.is_empty() {
            flags.push(format!(
                "member {}: odd D component(s) {:?} decoded with the second spinor generator",
                m.name, report.alternates
            ));
        }
        for e in &report.errors {
            errors.push(format!("member {}: {e}", m.name));
        }
        members.push(report);
        lattices.push(built);
    }

    let mut comparisons = Vec::new();
    for i in 0..lattices.len() {
        for j in i + 1..lattices.len() {
            if let (Some((_, a)), Some((_, b))) = (&lattices[i], &lattices[j]) {
                let distinguished = !groups_isomorphic(a, b);
                if !distinguished {
                    errors.push(format!(
                        "members {} and {} have isomorphic discriminant groups",
                        entry.members[i].name, entry.members[j].name
                    ));
                }
                comparisons.push(Comparison {
                    members: [i, j],
                    distinguished,
                });
            }
        }
    }

    let mut containments = Vec::new();
    for &[sub, sup] in &entry.containments {
        if let (Some((a, _)), Some((b, _))) = (&lattices[sub], &lattices[sup]) {
            let holds = a.is_contained_in(b);
            if !holds {
                errors.push(format!(
                    "member {} is not contained in member {}",
                    entry.members[sub].name, entry.members[sup].name
                ));
            }
            containments.push(ContainmentResult { sub, sup, holds });
        }
    }

    let configuration_issues = validate(&entry.config, &entry.configuration);

    let names: Vec<&str> = checks.iter().map(|c| c.name()).collect();
    let skipped: Vec<&str> = check_names().into_iter().filter(|n| !names.contains(n)).collect();
    if !skipped.is_empty() {
        flags.push(format!("checks not run: {}", skipped.join(", ")));
    }

    let member_failed = members.iter().any(|m| {
        m.checks.iter().any(|c| c.report.verdict.is_failure())
            || m.class_checks.iter().any(|c| !c.holds)
            || m.curve.as_ref().is_some_and(|c| !c.holds)
            || m.index_law == Some(false)
    });
    let verdict = if !errors.is_empty() || member_failed {
        EntryVerdict::Failed
    } else if !configuration_issues.is_empty() || !skipped.is_empty() {
        EntryVerdict::PartiallyCertified
    } else {
        EntryVerdict::Certified
    };

    EntryReport {
        id: entry.id.clone(),
        group: entry.group,
        config: entry.config.to_string(),
        milnor_number: entry.config.milnor_number(),
        conventions: generator_conventions(),
        members,
        comparisons,
        containments,
        configuration_issues,
        flags,
        errors,
        verdict,
    }
}

/// The overlattice of member `mi`, with the odd `D` components that needed
/// the second spinor generator.
pub fn member_overlattice(entry: &CatalogEntry, mi: usize) -> Result<(Overlattice, Vec<usize>), CatalogError> {
    let n = ambient(&entry.config)?;
    match &entry.members[mi].glue {
        GlueSpec::Code(code) => {
            let d = decode_glue(code, &entry.config)?;
            Ok((overlattice(&n, &d.vectors)?, d.alternates))
        }
        g @ GlueSpec::Explicit { .. } => {
            let vectors = g.explicit_vectors()?.unwrap_or_default();
            Ok((overlattice(&n, &vectors)?, vec![]))
        }
    }
}

fn member_report(
    entry: &CatalogEntry,
    mi: usize,
    checks: &[Box<dyn MemberCheck>],
) -> (MemberReport, Option<(Overlattice, DiscriminantForm)>) {
    let member = &entry.members[mi];
    let mut r = MemberReport {
        name: member.name.clone(),
        glue: member.glue.to_string(),
        expected_disc_order: entry.expected_disc_orders.get(mi).copied(),
        ..Default::default()
    };
    if let Some(c) = &member.curve {
        r.curve = Some(curve_report(entry, c));
    }
    let m = match member_overlattice(entry, mi) {
        Ok((m, alternates)) => {
            r.alternates = alternates;
            m
        }
        Err(e) => {
            r.errors.push(e.to_string());
            return (r, None);
        }
    };
    let det_n = m.ambient.det().abs();
    let det_m = m.det().abs();
    r.index = m.index.to_u64();
    r.det = Some(det_m.to_string());
    r.index_law = Some(&det_m * &m.index * &m.index == det_n);
    let disc = match discriminant_form(&m) {
        Ok(d) => d,
        Err(e) => {
            r.errors.push(e.to_string());
            return (r, None);
        }
    };
    r.disc_order = Some(disc.order());
    r.invariant_factors = disc.invariant_factors();
    if let Some(expected) = r.expected_disc_order {
        if expected != disc.order() {
            r.errors
                .push(format!("discriminant order {} differs from the frozen value {expected}", disc.order()));
        }
    }
    for c in checks {
        match c.run(&m) {
            Ok(report) => r.checks.push(NamedCheck {
                name: c.name().to_string(),
                required: c.required(),
                report,
            }),
            Err(e) => r.errors.push(format!("{}: {e}", c.name())),
        }
    }
    for spec in entry.class_checks.iter().filter(|c| c.member == mi) {
        let x: Result<Vec<Rational>, _> = spec.vector.iter().map(|p| pair_to_rational(*p)).collect();
        let expect = ClassExpectation {
            norm: spec.norm,
            lambda_pairing: spec.lambda,
        };
        match x.map_err(|e| e.to_string()).and_then(|x| class_check(&m, &x, expect).map_err(|e| e.to_string())) {
            Ok(holds) => r.class_checks.push(ClassCheckResult {
                norm: spec.norm,
                lambda: spec.lambda,
                holds,
            }),
            Err(e) => r.errors.push(format!("class check: {e}")),
        }
    }
    (r, Some((m, disc)))
}

fn sorted_components(mut v: Vec<Component>) -> Vec<Component> {
    v.sort_by_key(|c| (c.kind.to_string(), c.rank));
    v
}

fn curve_report(entry: &CatalogEntry, spec: &CurveSpec) -> CurveReport {
    let mut r = CurveReport {
        parameters: spec.parameters.clone(),
        ..Default::default()
    };
    if let Err(e) = fill_curve_report(entry, spec, &mut r) {
        r.issues.push(e.to_string());
    }
    r.holds = r.issues.is_empty();
    r
}

fn fill_curve_report(entry: &CatalogEntry, spec: &CurveSpec, r: &mut CurveReport) -> Result<(), CatalogError> {
    let (curve, expected, factors) = match &spec.family {
        Some(f) => {
            let kind = FamilyKind::from_str(&f.kind)?;
            let lambda = parse_constant(&f.lambda)?;
            let curve = family_member(kind, &lambda)?;
            let a1 = a1_points(kind, &lambda)?
                .ok_or_else(|| CatalogError::Invalid(format!("{kind}_{} has no closed-form A1 points", f.lambda)))?;
            let mut pts: Vec<ExpectedPoint> = a5_points()
                .into_iter()
                .map(|point| ExpectedPoint {
                    point,
                    ade: Component::a(5),
                })
                .collect();
            pts.extend(a1.into_iter().map(|point| ExpectedPoint {
                point,
                ade: Component::a(1),
            }));
            let c = classify_family(kind, &lambda)?;
            let found = c.family_type.to_string();
            let holds = found == f.expect;
            if !holds {
                r.issues.push(format!("{kind}_{} is {found}, expected {}", f.lambda, f.expect));
            }
            r.family = Some(FamilyResult {
                kind: f.kind.clone(),
                lambda: f.lambda.clone(),
                expected: f.expect.clone(),
                found,
                detail: c.detail,
                holds,
            });
            let factors = curve.factors.iter().map(|(f, _)| f.clone()).collect();
            (curve, pts, factors)
        }
        None => {
            let factors = spec
                .factors
                .iter()
                .map(|f| f.to_form(entry.field_d))
                .collect::<Result<Vec<_>, _>>()?;
            let curve = CurveWithFactors::new(factors.clone())?;
            let pts = spec
                .points
                .iter()
                .map(|p| {
                    Ok(ExpectedPoint {
                        point: p.point()?,
                        ade: p.component()?,
                    })
                })
                .collect::<Result<Vec<_>, CatalogError>>()?;
            (curve, pts, factors)
        }
    };
    r.field_d = curve.field();
    r.factor_degrees = curve.factor_degrees();
    r.reduced = curve.is_reduced();
    if !r.reduced {
        r.issues.push("curve is not reduced".into());
    }
    if curve.degree() != 6 {
        r.issues.push(format!("curve has degree {}", curve.degree()));
    }
    let mut degrees = r.factor_degrees.clone();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    r.degrees_match = degrees == entry.configuration.degrees();
    if !r.degrees_match {
        r.issues.push(format!(
            "factor degrees {degrees:?} differ from the configuration {:?}",
            entry.configuration.degrees()
        ));
    }
    let stated = sorted_components(expected.iter().map(|e| e.ade).collect());
    let want = sorted_components(entry.config.components.clone());
    if r.reduced {
        let v = verify_configuration(&curve, &expected)?;
        r.total_milnor = v.total_milnor;
        if let Some(m) = v.mismatch {
            r.issues.push(m);
        }
        for (k, e) in expected.iter().enumerate() {
            r.points.push(PointResult {
                point: e.point.to_string(),
                expected: e.ade.to_string(),
                found: v.records.get(k).map(|rec| rec.ade.to_string()),
            });
        }
        r.configuration_matches =
            v.holds && stated == want && r.total_milnor as usize == entry.config.milnor_number();
        if v.holds && !r.configuration_matches {
            r.issues.push(format!(
                "stated points carry {} (Milnor {}), entry is {}",
                stated.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("+"),
                r.total_milnor,
                entry.config
            ));
        }
    }
    for s in &spec.specials {
        let aux = s.form.to_form(entry.field_d)?;
        let (target, against) = match s.against {
            Some(k) => (factors[k].clone(), format!("factor {k}")),
            None => (curve.product().clone(), "sextic".to_string()),
        };
        let pts: Vec<_> = s.expect.iter().map(|[p, _]| expected[*p as usize].point.clone()).collect();
        let want: Vec<u32> = s.expect.iter().map(|[_, m]| *m).collect();
        let (found, holds) = match intersections(&target, &aux, &pts) {
            Ok(found) => {
                let holds = found == want;
                (found, holds)
            }
            Err(e) => {
                r.issues.push(format!("special curve {aux}: {e}"));
                (vec![], false)
            }
        };
        if !holds && !found.is_empty() {
            r.issues.push(format!("special curve {aux}: found {found:?}, expected {want:?}"));
        }
        r.specials.push(SpecialResult {
            form: aux.to_string(),
            against,
            points: pts.iter().map(|p| p.to_string()).collect(),
            expected: want,
            found,
            holds,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Classical,
    Examples,
    Triplets,
    Pairs,
    Tables,
    All,
}

impl Scope {
    pub fn contains(self, g: Group) -> bool {
        match self {
            Scope::All => true,
            Scope::Classical => g == Group::Classical,
            Scope::Examples => g == Group::Examples,
            Scope::Triplets => g == Group::Triplets,
            Scope::Pairs => g == Group::Pairs,
            Scope::Tables => g == Group::Tables,
        }
    }
}

impl FromStr for Scope {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "classical" => Scope::Classical,
            "examples" => Scope::Examples,
            "triplets" => Scope::Triplets,
            "pairs" => Scope::Pairs,
            "tables" => Scope::Tables,
            "all" => Scope::All,
            _ => return Err(CatalogError::Invalid(format!("unknown scope {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub certified: usize,
    pub partially_certified: usize,
    pub failed: usize,
    /// Count of embedding verdicts over all members.
    pub embedding: BTreeMap<String, usize>,
    pub passed_necessary_only_fraction: f64,
    /// Entries whose glue could not be decoded into overlattices.
    pub undecodable: Vec<String>,
    pub undistinguished: Vec<String>,
    /// Entries of one configuration listing the same glue codes.
    pub shared_codes: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproduceReport {
    pub scope: Scope,
    pub conventions: Vec<String>,
    pub summary: Summary,
    pub entries: Vec<EntryReport>,
}

impl ReproduceReport {
    pub fn all_certified(&self) -> bool {
        self.summary.failed == 0
    }
}

pub fn reproduce(entries: &[CatalogEntry], scope: Scope) -> ReproduceReport {
    reproduce_with(entries, scope, &all_checks())
}

pub fn reproduce_with(entries: &[CatalogEntry], scope: Scope, checks: &[Box<dyn MemberCheck>]) -> ReproduceReport {
    let selected: Vec<&CatalogEntry> = entries.iter().filter(|e| scope.contains(e.group)).collect();
    let reports: Vec<EntryReport> = selected.par_iter().map(|e| certify_with(e, checks)).collect();
    let mut s = Summary {
        total: reports.len(),
        ..Default::default()
    };
    let mut members = 0usize;
    for r in &reports {
        match r.verdict {
            EntryVerdict::Certified => s.certified += 1,
            EntryVerdict::PartiallyCertified => s.partially_certified += 1,
            EntryVerdict::Failed => s.failed += 1,
        }
        if r.members.iter().any(|m| m.disc_order.is_none()) {
            s.undecodable.push(r.id.clone());
        }
        if !r.all_distinguished() {
            s.undistinguished.push(r.id.clone());
        }
        for v in r.check_verdicts("embedding").into_iter().flatten() {
            let key = serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            *s.embedding.entry(key).or_default() += 1;
            members += 1;
        }
    }
    if members > 0 {
        let pno = s.embedding.get("passed-necessary-only").copied().unwrap_or(0);
        s.passed_necessary_only_fraction = pno as f64 / members as f64;
    }
    let mut by_codes: BTreeMap<(String, Vec<String>), Vec<String>> = BTreeMap::new();
    for e in &selected {
        if e.members.iter().all(|m| matches!(m.glue, GlueSpec::Code(_))) {
            let codes = e.members.iter().map(|m| m.glue.to_string()).collect();
            by_codes.entry((e.config.to_string(), codes)).or_default().push(e.id.clone());
        }
    }
    s.shared_codes = by_codes.into_values().filter(|ids| ids.len() > 1).collect();
    ReproduceReport {
        scope,
        conventions: generator_conventions(),
        summary: s,
        entries: reports,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FourPairsReport {
    pub pairs: Vec<EntryReport>,
    pub all_distinguished: bool,
    pub all_urabe_hold: bool,
}

/// The four pair entries on `3A5+2A1`: each pair distinguished by
/// discriminant groups and all eight overlattices passing both Urabe checks.
pub fn four_pairs_check(entries: &[CatalogEntry]) -> Result<FourPairsReport, CatalogError> {
    let pairs: Vec<&CatalogEntry> = entries
        .iter()
        .filter(|e| e.group == Group::Pairs && e.config.to_string() == "3A5+2A1")
        .collect();
    if pairs.len() != 4 || pairs.iter().any(|e| e.members.len() != 2) {
        return Err(CatalogError::Invalid(format!(
            "expected four two-member 3A5+2A1 pair entries, found {}",
            pairs.len()
        )));
    }
    let reports: Vec<EntryReport> = pairs.par_iter().map(|e| certify(e)).collect();
    let all_distinguished = reports.iter().all(|r| r.all_distinguished() && r.comparisons.len() == 1);
    let all_urabe_hold = reports.iter().all(|r| {
        ["urabe-i", "urabe-ii"]
            .iter()
            .all(|n| r.check_verdicts(n).iter().all(|v| *v == Some(Verdict::Holds)))
    });
    Ok(FourPairsReport {
        pairs: reports,
        all_distinguished,
        all_urabe_hold,
    })
}
