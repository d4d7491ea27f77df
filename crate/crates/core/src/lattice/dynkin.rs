use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LatticeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    D,
    E,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::D => "D",
            RootType::E => "E",
        };
        f.write_str(s)
    }
}

/// One connected Dynkin graph `A_n`, `D_n` or `E_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub kind: RootType,
    pub rank: usize,
}

impl Component {
    pub fn new(kind: RootType, rank: usize) -> Result<Self, LatticeError> {
        let ok = match kind {
            RootType::A => rank >= 1,
            RootType::D => rank >= 4,
            RootType::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(LatticeError::InvalidRank(format!("{kind}{rank}")));
        }
        Ok(Self { kind, rank })
    }

    pub fn a(n: usize) -> Self {
        Self::new(RootType::A, n).expect("A_n with n >= 1")
    }

    pub fn d(n: usize) -> Self {
        Self::new(RootType::D, n).expect("D_n with n >= 4")
    }

    pub fn e(n: usize) -> Self {
        Self::new(RootType::E, n).expect("E_n with 6 <= n <= 8")
    }

    /// `D_{2k}` has a non-cyclic discriminant group.
    pub fn has_cyclic_discriminant(&self) -> bool {
        !(self.kind == RootType::D && self.rank % 2 == 0)
    }

    /// Order of the discriminant group, i.e. `|det|` of the root lattice.
    pub fn discriminant_order(&self) -> u64 {
        match self.kind {
            RootType::A => self.rank as u64 + 1,
            RootType::D => 4,
            RootType::E => 9 - self.rank as u64,
        }
    }

    /// Pairs `(i, j)`, zero-based, of adjacent nodes.
    ///
    /// `A_n`: chain. `D_n`: chain `e1..e_{n-1}` with `e_n` attached to
    /// `e_{n-2}`. `E_n`: chain `e2..e_n` with `e1` attached to `e4`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.kind {
            RootType::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            RootType::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            RootType::E => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((0, 3));
                e
            }
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

impl FromStr for Component {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('A') => RootType::A,
            Some('D') => RootType::D,
            Some('E') => RootType::E,
            _ => return Err(LatticeError::Parse(format!("bad component {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| LatticeError::Parse(format!("bad component {s:?}")))?;
        Component::new(kind, rank)
    }
}

/// Ordered list of Dynkin components, e.g. `E6+A11+2A1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DynkinConfig {
    pub components: Vec<Component>,
}

impl DynkinConfig {
    pub fn new(components: Vec<Component>) -> Self {
        Self { components }
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn milnor_number(&self) -> usize {
        self.rank()
    }

    pub fn has_even_d(&self) -> bool {
        self.components.iter().any(|c| !c.has_cyclic_discriminant())
    }

    /// Offset of component `i` inside the root part of the basis.
    pub fn offset(&self, i: usize) -> usize {
        self.components[..i].iter().map(|c| c.rank).sum()
    }
}

impl fmt::Display for DynkinConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let mut k = 1;
            while i + k < self.components.len() && self.components[i + k] == c {
                k += 1;
            }
            parts.push(if k == 1 { c.to_string() } else { format!("{k}{c}") });
            i += k;
        }
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for DynkinConfig {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let mut components = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let split = term
                .find(|c: char| !c.is_ascii_digit())
                .ok_or_else(|| LatticeError::Parse(format!("bad term {term:?}")))?;
            let mult: usize = if split == 0 {
                1
            } else {
                term[..split]
                    .parse()
                    .map_err(|_| LatticeError::Parse(format!("bad multiplicity in {term:?}")))?
            };
            let c: Component = term[split..].parse()?;
            components.extend(std::iter::repeat(c).take(mult));
        }
        if components.is_empty() {
            return Err(LatticeError::Parse("empty configuration".into()));
        }
        Ok(Self { components })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let c: DynkinConfig = "E6+A11+2A1".parse().unwrap();
        assert_eq!(c.components.len(), 4);
        assert_eq!(c.rank(), 19);
        assert_eq!(c.to_string(), "E6+A11+2A1");
        let c: DynkinConfig = "3A5 + 2A1".parse().unwrap();
        assert_eq!(c.to_string(), "3A5+2A1");
    }

    #[test]
    fn bad_ranks() {
        assert!("D3".parse::<Component>().is_err());
        assert!("E9".parse::<Component>().is_err());
        assert!("A0".parse::<Component>().is_err());
        assert!("X2".parse::<DynkinConfig>().is_err());
    }
}
