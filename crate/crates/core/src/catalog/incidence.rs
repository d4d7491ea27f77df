//! Incidence tables: which local branches of each singular point lie on
//! which irreducible component of the sextic.
//!
//! Branch labels follow the usual local pictures: `A_n` with `n` odd, odd
//! `D_n` and `E7` have two branches `I, II`; `A_n` with `n` even, `E6` and
//! `E8` are unibranch; even `D_n` has three branches `I, II, III`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::lattice::{Component, DynkinConfig, RootType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceRow {
    pub degree: u32,
    /// One cell per component of the configuration, e.g. `"I,II"` or `""`.
    pub cells: Vec<String>,
}

/// How the sextic splits into irreducible components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Configuration {
    Irreducible,
    /// Component degrees only.
    Degrees(Vec<u32>),
    Incidence(Vec<IncidenceRow>),
}

impl Configuration {
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = match self {
            Configuration::Irreducible => vec![6],
            Configuration::Degrees(d) => d.clone(),
            Configuration::Incidence(rows) => rows.iter().map(|r| r.degree).collect(),
        };
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

fn branches(c: Component) -> &'static [&'static str] {
    match (c.kind, c.rank % 2) {
        (RootType::A, 1) | (RootType::D, 1) => &["I", "II"],
        (RootType::A, _) => &["I"],
        (RootType::D, _) => &["I", "II", "III"],
        (RootType::E, _) if c.rank == 7 => &["I", "II"],
        (RootType::E, _) => &["I"],
    }
}

/// Local intersection number of two distinct branches of `c`.
fn branch_meeting(c: Component) -> u32 {
    match c.kind {
        RootType::A => (c.rank as u32 + 1) / 2,
        // smooth branch against y^2 = x^{n-2}, or the three lines of D_{2k}
        RootType::D if c.rank % 2 == 1 => 2,
        RootType::D => 1,
        RootType::E => 3,
    }
}

/// Problems found in a configuration; empty when it is consistent.
///
/// Checked: degrees sum to 6; every cell names branches that exist; every
/// branch of every singular point lies on exactly one component; for two
/// components of degrees `d, d'` the branch meetings add up to `d d'`
/// (all their common points are singular points of the sextic).
pub fn validate(cfg: &DynkinConfig, conf: &Configuration) -> Vec<String> {
    let mut issues = Vec::new();
    let total: u32 = conf.degrees().iter().sum();
    if total != 6 {
        issues.push(format!("component degrees sum to {total}, not 6"));
    }
    let rows = match conf {
        Configuration::Incidence(rows) => rows,
        _ => return issues,
    };
    let k = cfg.components.len();
    let mut parsed: Vec<Vec<BTreeSet<&str>>> = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        if row.cells.len() != k {
            issues.push(format!("row {ri} has {} cells for {k} singular points", row.cells.len()));
            return issues;
        }
        let mut cells = Vec::new();
        for (ci, cell) in row.cells.iter().enumerate() {
            let mut set = BTreeSet::new();
            for label in cell.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let allowed = branches(cfg.components[ci]);
                match allowed.iter().find(|a| **a == label) {
                    Some(a) => {
                        if !set.insert(*a) {
                            issues.push(format!("row {ri}: branch {label} repeated at point {ci}"));
                        }
                    }
                    None => issues.push(format!("row {ri}: {} has no branch {label}", cfg.components[ci])),
                }
            }
            cells.push(set);
        }
        parsed.push(cells);
    }
    for (ci, c) in cfg.components.iter().enumerate() {
        for b in branches(*c) {
            let owners = parsed.iter().filter(|row| row[ci].contains(b)).count();
            if owners != 1 {
                issues.push(format!("branch {b} of point {ci} ({c}) lies on {owners} components"));
            }
        }
    }
    for i in 0..parsed.len() {
        for j in i + 1..parsed.len() {
            let meet: u32 = cfg
                .components
                .iter()
                .enumerate()
                .map(|(ci, c)| (parsed[i][ci].len() * parsed[j][ci].len()) as u32 * branch_meeting(*c))
                .sum();
            let expect = rows[i].degree * rows[j].degree;
            if meet != expect {
                issues.push(format!(
                    "components {i} and {j} (degrees {}, {}) meet in {meet} at singular points, expected {expect}",
                    rows[i].degree, rows[j].degree
                ));
            }
        }
    }
    issues
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(degree: u32, cells: &[&str]) -> IncidenceRow {
        IncidenceRow {
            degree,
            cells: cells.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn consistent_tables() {
        let cfg: DynkinConfig = "D7+A11".parse().unwrap();
        let conf = Configuration::Incidence(vec![row(4, &["II", "II"]), row(2, &["I", "I"])]);
        assert!(validate(&cfg, &conf).is_empty());
        let cfg: DynkinConfig = "3A5+3A1".parse().unwrap();
        let conf = Configuration::Incidence(vec![
            row(4, &["I,II", "I", "I", "I", "I", ""]),
            row(1, &["", "II", "", "II", "", "I"]),
            row(1, &["", "", "II", "", "II", "II"]),
        ]);
        assert_eq!(validate(&cfg, &conf), Vec::<String>::new());
    }

    #[test]
    fn inconsistent_tables() {
        let cfg: DynkinConfig = "A9+2A4".parse().unwrap();
        let conf = Configuration::Incidence(vec![row(5, &["I", "I", "I"]), row(1, &["I", "", ""])]);
        let issues = validate(&cfg, &conf);
        assert!(issues.iter().any(|s| s.contains("branch I of point 0")));
        assert!(!validate(&cfg, &Configuration::Degrees(vec![4, 1])).is_empty());
    }
}
