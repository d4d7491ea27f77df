//! Per-member lattice checks behind a common trait, looked up by name.

use super::checks::{urabe_condition_i, urabe_condition_ii, CheckReport};
use super::embedding::embedding_exists;
use super::K3Error;
use crate::lattice::Overlattice;

pub trait MemberCheck: Send + Sync {
    fn name(&self) -> &'static str;
    /// Checks whose failure makes an overlattice unusable.
    fn required(&self) -> bool {
        true
    }
    fn run(&self, m: &Overlattice) -> Result<CheckReport, K3Error>;
}

struct UrabeI;
struct UrabeII;
struct Embedding;

impl MemberCheck for UrabeI {
    fn name(&self) -> &'static str {
        "urabe-i"
    }
    fn run(&self, m: &Overlattice) -> Result<CheckReport, K3Error> {
        urabe_condition_i(m)
    }
}

impl MemberCheck for UrabeII {
    fn name(&self) -> &'static str {
        "urabe-ii"
    }
    fn run(&self, m: &Overlattice) -> Result<CheckReport, K3Error> {
        urabe_condition_ii(m)
    }
}

impl MemberCheck for Embedding {
    fn name(&self) -> &'static str {
        "embedding"
    }
    fn run(&self, m: &Overlattice) -> Result<CheckReport, K3Error> {
        embedding_exists(m)
    }
}

pub fn all_checks() -> Vec<Box<dyn MemberCheck>> {
    vec![Box::new(UrabeI), Box::new(UrabeII), Box::new(Embedding)]
}

pub fn check_names() -> Vec<&'static str> {
    all_checks().iter().map(|c| c.name()).collect()
}

/// Resolves a list of names; unknown names are reported back.
pub fn select_checks(names: &[String]) -> Result<Vec<Box<dyn MemberCheck>>, String> {
    let mut out = Vec::new();
    for name in names {
        let check = all_checks()
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| format!("unknown check {name:?}; known: {}", check_names().join(", ")))?;
        out.push(check);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(check_names(), vec!["urabe-i", "urabe-ii", "embedding"]);
        assert_eq!(select_checks(&["embedding".into()]).unwrap().len(), 1);
        assert!(select_checks(&["nope".into()]).is_err());
    }
}
