//! Dynkin quivers of types A and D, their bilinear forms and simple reflections.
//!
//! Vertices are numbered `1..=n`. Type `A_n` is the path `1 - 2 - ... - n`.
//! Type `D_n` (n >= 4) has fork tips `1` and `2` attached to the trivalent
//! vertex `3`, followed by the tail `3 - 4 - ... - n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
        }
    }
}

/// Integer vector indexed by the vertices of a quiver (position `i - 1` holds vertex `i`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(rank: usize) -> Self {
        DimVector(vec![0; rank])
    }

    /// The dimension vector `e_i` of the simple module at vertex `i` (1-based).
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        DimVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Nonzero with no negative entries.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Digit string in vertex order, e.g. `"1121"`.
    pub fn digits(&self) -> String {
        self.0.iter().map(|d| d.to_string()).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Unvalidated description of a quiver, as read from JSON or the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub family: Family,
    pub rank: usize,
    pub arrows: Vec<[usize; 2]>,
}

/// Underlying Dynkin graph edges as unordered pairs `(a, b)` with `a < b`.
pub fn dynkin_edges(family: Family, rank: usize) -> Result<Vec<(usize, usize)>> {
    match family {
        Family::A => {
            if rank == 0 {
                return Err(Error::InvalidQuiver("rank must be positive".into()));
            }
            Ok((1..rank).map(|i| (i, i + 1)).collect())
        }
        Family::D => {
            if rank < 4 {
                return Err(Error::InvalidQuiver(format!("D_{rank} needs rank >= 4")));
            }
            let mut edges = vec![(1, 3), (2, 3)];
            edges.extend((3..rank).map(|i| (i, i + 1)));
            Ok(edges)
        }
    }
}

/// A validated Dynkin quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    family: Family,
    rank: usize,
    /// Arrows `(source, target)` in ascending order.
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(spec: &QuiverSpec) -> Result<Self> {
        let edges = dynkin_edges(spec.family, spec.rank)?;
        let mut seen = vec![false; edges.len()];
        let mut arrows = Vec::with_capacity(edges.len());
        for &[s, t] in &spec.arrows {
            if s == 0 || t == 0 || s > spec.rank || t > spec.rank {
                return Err(Error::InvalidQuiver(format!("arrow {s}>{t} has a vertex outside 1..={}", spec.rank)));
            }
            let key = (s.min(t), s.max(t));
            let Some(pos) = edges.iter().position(|&e| e == key) else {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {s}>{t} joins non-adjacent vertices of {}_{}",
                    spec.family, spec.rank
                )));
            };
            if seen[pos] {
                return Err(Error::InvalidQuiver(format!("edge {}-{} is oriented twice", key.0, key.1)));
            }
            seen[pos] = true;
            arrows.push((s, t));
        }
        if let Some(pos) = seen.iter().position(|s| !s) {
            let (a, b) = edges[pos];
            return Err(Error::InvalidQuiver(format!("edge {a}-{b} has no orientation")));
        }
        arrows.sort_unstable();
        Ok(Quiver { family: spec.family, rank: spec.rank, arrows })
    }

    /// Build from `(source, target)` pairs.
    pub fn from_arrows(family: Family, rank: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        Quiver::new(&QuiverSpec { family, rank, arrows: arrows.iter().map(|&(s, t)| [s, t]).collect() })
    }

    /// Type `A_n` with arrows `n -> n-1 -> ... -> 1`.
    pub fn standard_a(rank: usize) -> Result<Self> {
        let arrows: Vec<_> = (1..rank).map(|i| (i + 1, i)).collect();
        Quiver::from_arrows(Family::A, rank, &arrows)
    }

    /// Every orientation of the Dynkin diagram, in a fixed order.
    pub fn all_orientations(family: Family, rank: usize) -> Result<Vec<Quiver>> {
        let edges = dynkin_edges(family, rank)?;
        let mut out = Vec::with_capacity(1 << edges.len());
        for mask in 0u32..(1u32 << edges.len()) {
            let arrows: Vec<_> = edges
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| if mask >> k & 1 == 1 { (a, b) } else { (b, a) })
                .collect();
            out.push(Quiver::from_arrows(family, rank, &arrows)?);
        }
        Ok(out)
    }

    pub fn spec(&self) -> QuiverSpec {
        QuiverSpec {
            family: self.family,
            rank: self.rank,
            arrows: self.arrows.iter().map(|&(s, t)| [s, t]).collect(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.rank
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_standard_a(&self) -> bool {
        self.family == Family::A && self.arrows.iter().all(|&(s, t)| s == t + 1)
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let mut arrows: Vec<_> = self.arrows.iter().map(|&(s, t)| (t, s)).collect();
        arrows.sort_unstable();
        Quiver { family: self.family, rank: self.rank, arrows }
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != i)
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.vertices().filter(|&i| self.is_sink(i)).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        self.vertices().filter(|&i| self.is_source(i)).collect()
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.0 == i).map(|a| a.1)
    }

    pub fn predecessors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.1 == i).map(|a| a.0)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.arrows.iter().any(|&(s, t)| (s, t) == (i, j) || (s, t) == (j, i))
    }

    /// Cartan matrix entry `c_{ij}` (1-based vertices).
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if self.adjacent(i, j) {
            -1
        } else {
            0
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.vertices().map(|i| self.vertices().map(|j| self.cartan(i, j)).collect()).collect()
    }

    fn check_rank(&self, v: &DimVector) -> Result<()> {
        if v.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: v.rank() });
        }
        Ok(())
    }

    /// `<v, w> = sum_j v_j w_j - sum_{arrows h} v_{out(h)} w_{in(h)}`.
    pub fn euler_form(&self, v: &DimVector, w: &DimVector) -> Result<i64> {
        self.check_rank(v)?;
        self.check_rank(w)?;
        let diag: i64 = v.0.iter().zip(&w.0).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| v.get(s) * w.get(t)).sum();
        Ok(diag - off)
    }

    /// `v^t C w`.
    pub fn sym_euler(&self, v: &DimVector, w: &DimVector) -> Result<i64> {
        self.check_rank(v)?;
        self.check_rank(w)?;
        let mut total = 0;
        for i in self.vertices() {
            for j in self.vertices() {
                total += v.get(i) * self.cartan(i, j) * w.get(j);
            }
        }
        Ok(total)
    }

    /// The vector `C v`, i.e. the pairings `(v, e_i)` for every vertex `i`.
    pub fn cartan_apply(&self, v: &DimVector) -> Vec<i64> {
        self.vertices()
            .map(|i| self.vertices().map(|j| self.cartan(i, j) * v.get(j)).sum())
            .collect()
    }

    /// `r_i(v) = v - (v, e_i) e_i`.
    pub fn reflect(&self, i: usize, v: &DimVector) -> Result<DimVector> {
        if i == 0 || i > self.rank {
            return Err(Error::UnknownVertex(i));
        }
        self.check_rank(v)?;
        let pairing: i64 = self.vertices().map(|j| v.get(j) * self.cartan(j, i)).sum();
        let mut out = v.clone();
        out.0[i - 1] -= pairing;
        Ok(out)
    }

    /// A sink sequence `i_1, ..., i_n`: `i_1` is a sink of the quiver and each
    /// `i_k` is a sink after reversing all arrows at `i_1, ..., i_{k-1}`.
    /// Ties are broken by taking the smallest vertex.
    pub fn adapted_order(&self) -> Vec<usize> {
        let mut arrows = self.arrows.clone();
        let mut used = vec![false; self.rank + 1];
        let mut order = Vec::with_capacity(self.rank);
        for _ in 0..self.rank {
            let next = (1..=self.rank)
                .find(|&i| !used[i] && arrows.iter().all(|&(s, _)| s != i))
                .expect("acyclic quivers always have a sink");
            used[next] = true;
            order.push(next);
            for a in arrows.iter_mut() {
                if a.0 == next || a.1 == next {
                    *a = (a.1, a.0);
                }
            }
        }
        order
    }

    /// Number of paths from `i` to `j` (0 or 1 on a tree).
    pub fn path_count(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 1;
        }
        self.successors(i).map(|k| self.path_count(k, j)).sum()
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{} [", self.family, self.rank)?;
        for (k, (s, t)) in self.arrows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}>{t}")?;
        }
        write!(f, "]")
    }
}
