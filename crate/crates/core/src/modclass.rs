use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ar::{ArQuiver, IndecId};
use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, QuiverSpec};

/// An isomorphism class of modules: a multiplicity for every indecomposable,
/// stored densely in [`IndecId`] order. The derived ordering compares these
/// vectors lexicographically, which is the canonical node order used by the
/// crystal graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModClass {
    mult: Vec<u32>,
}

impl ModClass {
    pub fn zero(ar: &ArQuiver) -> Self {
        ModClass { mult: vec![0; ar.len()] }
    }

    pub fn from_mult(mult: Vec<u32>) -> Self {
        ModClass { mult }
    }

    pub fn single(ar: &ArQuiver, id: IndecId, k: u32) -> Self {
        let mut m = ModClass::zero(ar);
        m.mult[id.0] = k;
        m
    }

    pub fn from_pairs(ar: &ArQuiver, pairs: &[(IndecId, u32)]) -> Result<Self> {
        let mut m = ModClass::zero(ar);
        for &(id, k) in pairs {
            ar.check(id)?;
            m.mult[id.0] += k;
        }
        Ok(m)
    }

    /// Build from `(dimension vector, multiplicity)` pairs.
    pub fn from_roots(ar: &ArQuiver, pairs: &[(Vec<i64>, u32)]) -> Result<Self> {
        let mut m = ModClass::zero(ar);
        for (root, k) in pairs {
            let dim = DimVector(root.clone());
            let id = ar
                .find(&dim)
                .ok_or_else(|| Error::InvalidModule(format!("{dim} is not a positive root of {}", ar.quiver())))?;
            m.mult[id.0] += k;
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.mult
    }

    #[inline]
    pub fn get(&self, id: IndecId) -> u32 {
        self.mult[id.0]
    }

    #[inline]
    pub(crate) fn get_opt(&self, id: Option<IndecId>) -> i64 {
        id.map_or(0, |id| i64::from(self.mult[id.0]))
    }

    pub fn set(&mut self, id: IndecId, k: u32) {
        self.mult[id.0] = k;
    }

    pub fn add(&mut self, id: IndecId, k: u32) {
        self.mult[id.0] += k;
    }

    /// Remove `k` copies of `id`; fails if fewer are present.
    pub fn remove(&mut self, id: IndecId, k: u32) -> Result<()> {
        let cur = self.mult[id.0];
        if cur < k {
            return Err(Error::InvalidModule(format!("indecomposable {} is not a summand", id.0)));
        }
        self.mult[id.0] = cur - k;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&k| k == 0)
    }

    /// Nonzero `(id, multiplicity)` pairs.
    pub fn summands(&self) -> impl Iterator<Item = (IndecId, u32)> + '_ {
        self.mult.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (IndecId(i), k))
    }

    pub fn dim(&self, ar: &ArQuiver) -> DimVector {
        let mut d = DimVector::zero(ar.rank());
        for (id, k) in self.summands() {
            d = d.add(&ar.dim(id).scale(i64::from(k)));
        }
        d
    }

    pub fn direct_sum(&self, other: &ModClass) -> ModClass {
        ModClass { mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }

    pub fn to_json(&self, ar: &ArQuiver) -> ModClassJson {
        ModClassJson { quiver: ar.quiver().spec(), mult: self.mult_entries(ar) }
    }

    /// Summands as root/multiplicity entries; `IndecId` order is lexicographic
    /// in the root, so the list comes out sorted.
    pub fn mult_entries(&self, ar: &ArQuiver) -> Vec<MultEntry> {
        self.summands().map(|(id, k)| MultEntry { root: ar.dim(id).0.clone(), m: k }).collect()
    }

    pub fn display<'a>(&'a self, ar: &'a ArQuiver) -> impl fmt::Display + 'a {
        DisplayModClass { m: self, ar }
    }
}

struct DisplayModClass<'a> {
    m: &'a ModClass,
    ar: &'a ArQuiver,
}

impl fmt::Display for DisplayModClass<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_zero() {
            return write!(f, "0");
        }
        for (k, (id, mult)) in self.m.summands().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            if mult > 1 {
                write!(f, "{mult}*")?;
            }
            write!(f, "[{}]", self.ar.dim(id).digits())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultEntry {
    pub root: Vec<i64>,
    pub m: u32,
}

/// `{"quiver": {...}, "mult": [{"root": [...], "m": k}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModClassJson {
    pub quiver: QuiverSpec,
    pub mult: Vec<MultEntry>,
}

impl ModClassJson {
    pub fn quiver(&self) -> Result<Quiver> {
        Quiver::new(&self.quiver)
    }

    /// Resolve against an AR quiver built from `self.quiver`.
    pub fn to_modclass(&self, ar: &ArQuiver) -> Result<ModClass> {
        if ar.quiver() != &self.quiver()? {
            return Err(Error::InvalidModule("module is given over a different quiver".into()));
        }
        if let Some(e) = self.mult.iter().find(|e| e.m == 0) {
            return Err(Error::InvalidModule(format!("zero multiplicity for root {:?}", e.root)));
        }
        let mut roots: Vec<_> = self.mult.iter().map(|e| e.root.clone()).collect();
        roots.sort();
        roots.dedup();
        if roots.len() != self.mult.len() {
            return Err(Error::InvalidModule("repeated root".into()));
        }
        let pairs: Vec<_> = self.mult.iter().map(|e| (e.root.clone(), e.m)).collect();
        ModClass::from_roots(ar, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_ordering() {
        let ar = ArQuiver::new(&Quiver::standard_a(3).unwrap()).unwrap();
        let m = ModClass::from_roots(&ar, &[(vec![1, 1, 0], 2), (vec![0, 0, 1], 1)]).unwrap();
        let json = m.to_json(&ar);
        let roots: Vec<_> = json.mult.iter().map(|e| e.root.clone()).collect();
        assert_eq!(roots, vec![vec![0, 0, 1], vec![1, 1, 0]]);
        let text = serde_json::to_string(&json).unwrap();
        let back: ModClassJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_modclass(&ar).unwrap(), m);
        assert_eq!(m.dim(&ar), DimVector(vec![2, 2, 1]));
        assert_eq!(m.display(&ar).to_string(), "[001]+2*[110]");
    }

    #[test]
    fn rejects_bad_json() {
        let ar = ArQuiver::new(&Quiver::standard_a(2).unwrap()).unwrap();
        let bad_root = r#"{"quiver":{"family":"A","rank":2,"arrows":[[2,1]]},"mult":[{"root":[2,1],"m":1}]}"#;
        let zero = r#"{"quiver":{"family":"A","rank":2,"arrows":[[2,1]]},"mult":[{"root":[1,1],"m":0}]}"#;
        let other = r#"{"quiver":{"family":"A","rank":2,"arrows":[[1,2]]},"mult":[]}"#;
        for text in [bad_root, zero, other] {
            let j: ModClassJson = serde_json::from_str(text).unwrap();
            assert!(j.to_modclass(&ar).is_err(), "{text}");
        }
    }

    #[test]
    fn remove_checks_summands() {
        let ar = ArQuiver::new(&Quiver::standard_a(2).unwrap()).unwrap();
        let mut m = ModClass::single(&ar, ar.simple(1), 1);
        assert!(m.remove(ar.simple(2), 1).is_err());
        m.remove(ar.simple(1), 1).unwrap();
        assert!(m.is_zero());
    }
}
