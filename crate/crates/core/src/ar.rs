//! Indecomposable modules and the Auslander-Reiten quiver of a Dynkin quiver.
//!
//! Every indecomposable is `tau^{-k} P(i)` for a unique coordinate `(i, k)`.
//! The quiver is knitted from the projectives: `tau^{-1}` acts on dimension
//! vectors by the inverse Coxeter transformation `r_{i_1} ... r_{i_n}`, and a
//! module is injective exactly when that vector stops being positive.
//! Hom dimensions come from the mesh recurrence
//! `hom(tau^{-1}X, N) = hom(E, N) - hom(X, N) + [X = N]`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Family, Quiver, QuiverSpec};

/// Index of an indecomposable inside its [`ArQuiver`]. Indices follow the
/// lexicographic order of dimension vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndecId(pub usize);

/// Position `tau^{-shift} P(vertex)` in the AR quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArCoord {
    pub vertex: usize,
    pub shift: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indec {
    pub dim: DimVector,
    pub is_projective: bool,
    pub is_injective: bool,
    pub coord: ArCoord,
}

/// A projective `P(i)` paired with the injective `I(i)` with socle `S(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NakayamaPair {
    pub vertex: usize,
    pub projective: IndecId,
    pub injective: IndecId,
}

/// Number of positive roots of `X_n`.
pub fn positive_root_count(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank * (rank + 1) / 2,
        Family::D => rank * (rank - 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArNodeJson {
    pub id: usize,
    pub dim: Vec<i64>,
    pub vertex: usize,
    pub shift: usize,
    pub projective: bool,
    pub injective: bool,
}

/// `{"quiver": ..., "nodes": [...], "arrows": [[a, b], ...], "tau": [[m, tau m], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArJson {
    pub quiver: QuiverSpec,
    pub nodes: Vec<ArNodeJson>,
    pub arrows: Vec<[usize; 2]>,
    pub tau: Vec<[usize; 2]>,
}

/// The Auslander-Reiten quiver together with hom/ext tables.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    quiver: Quiver,
    adapted: Vec<usize>,
    indecs: Vec<Indec>,
    by_dim: HashMap<DimVector, IndecId>,
    by_coord: HashMap<ArCoord, IndecId>,
    arrows: Vec<(IndecId, IndecId)>,
    successors: Vec<Vec<IndecId>>,
    tau: Vec<Option<IndecId>>,
    tau_inv: Vec<Option<IndecId>>,
    hom: Vec<Vec<i64>>,
}

impl ArQuiver {
    pub fn new(quiver: &Quiver) -> Result<Self> {
        let n = quiver.rank();
        let adapted = quiver.adapted_order();

        let mut raw: Vec<(ArCoord, DimVector)> = Vec::new();
        for i in quiver.vertices() {
            let mut dim = DimVector((1..=n).map(|j| quiver.path_count(i, j)).collect());
            let mut shift = 0;
            loop {
                raw.push((ArCoord { vertex: i, shift }, dim.clone()));
                let next = coxeter_inverse(quiver, &adapted, &dim)?;
                if !next.is_positive() {
                    break;
                }
                dim = next;
                shift += 1;
                if shift > 4 * n + 4 {
                    return Err(Error::Internal(format!("tau^-1 orbit of P({i}) does not terminate")));
                }
            }
        }
        let expected = positive_root_count(quiver.family(), n);
        if raw.len() != expected {
            return Err(Error::Internal(format!(
                "knitting produced {} indecomposables, expected {expected}",
                raw.len()
            )));
        }
        raw.sort_by(|a, b| a.1.cmp(&b.1));

        let by_dim: HashMap<DimVector, IndecId> =
            raw.iter().enumerate().map(|(k, (_, d))| (d.clone(), IndecId(k))).collect();
        if by_dim.len() != raw.len() {
            return Err(Error::Internal("two indecomposables share a dimension vector".into()));
        }
        let by_coord: HashMap<ArCoord, IndecId> =
            raw.iter().enumerate().map(|(k, (c, _))| (*c, IndecId(k))).collect();

        let tau: Vec<Option<IndecId>> = raw
            .iter()
            .map(|(c, _)| {
                (c.shift > 0).then(|| by_coord[&ArCoord { vertex: c.vertex, shift: c.shift - 1 }])
            })
            .collect();
        let tau_inv: Vec<Option<IndecId>> = raw
            .iter()
            .map(|(c, _)| by_coord.get(&ArCoord { vertex: c.vertex, shift: c.shift + 1 }).copied())
            .collect();

        let indecs: Vec<Indec> = raw
            .iter()
            .enumerate()
            .map(|(k, (c, d))| Indec {
                dim: d.clone(),
                is_projective: c.shift == 0,
                is_injective: tau_inv[k].is_none(),
                coord: *c,
            })
            .collect();

        // Arrow a -> b of Q gives (k, b) -> (k, a) and (k, a) -> (k+1, b).
        let mut arrows = Vec::new();
        let max_shift = raw.iter().map(|(c, _)| c.shift).max().unwrap_or(0);
        for &(a, b) in quiver.arrows() {
            for k in 0..=max_shift {
                let at = |v, s| by_coord.get(&ArCoord { vertex: v, shift: s }).copied();
                if let (Some(x), Some(y)) = (at(b, k), at(a, k)) {
                    arrows.push((x, y));
                }
                if let (Some(x), Some(y)) = (at(a, k), at(b, k + 1)) {
                    arrows.push((x, y));
                }
            }
        }
        arrows.sort_unstable();
        let mut successors = vec![Vec::new(); indecs.len()];
        for &(x, y) in &arrows {
            successors[x.0].push(y);
        }

        let mut ar = ArQuiver {
            quiver: quiver.clone(),
            adapted,
            indecs,
            by_dim,
            by_coord,
            arrows,
            successors,
            tau,
            tau_inv,
            hom: Vec::new(),
        };
        ar.hom = ar.knit_hom_table();
        Ok(ar)
    }

    /// `hom[x][y] = dim Hom(x, y)` by the mesh recurrence, one column per target `y`.
    #[allow(clippy::needless_range_loop)]
    fn knit_hom_table(&self) -> Vec<Vec<i64>> {
        let count = self.indecs.len();
        let position: HashMap<usize, usize> =
            self.adapted.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let mut order: Vec<IndecId> = (0..count).map(IndecId).collect();
        order.sort_by_key(|id| {
            let c = self.indecs[id.0].coord;
            (c.shift, position[&c.vertex])
        });

        let mut table = vec![vec![0i64; count]; count];
        for target in 0..count {
            let tdim = &self.indecs[target].dim;
            let mut col = vec![0i64; count];
            for &x in &order {
                let c = self.indecs[x.0].coord;
                col[x.0] = if c.shift == 0 {
                    tdim.get(c.vertex)
                } else {
                    let prev = self.tau[x.0].expect("non-projective has tau");
                    let middle: i64 = self.successors[prev.0].iter().map(|e| col[e.0]).sum();
                    middle - col[prev.0] + i64::from(prev.0 == target)
                };
            }
            for x in 0..count {
                table[x][target] = col[x];
            }
        }
        table
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank()
    }

    pub fn adapted_order(&self) -> &[usize] {
        &self.adapted
    }

    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = IndecId> {
        (0..self.indecs.len()).map(IndecId)
    }

    pub fn indecs(&self) -> &[Indec] {
        &self.indecs
    }

    pub fn indec(&self, id: IndecId) -> &Indec {
        &self.indecs[id.0]
    }

    pub fn dim(&self, id: IndecId) -> &DimVector {
        &self.indecs[id.0].dim
    }

    pub fn check(&self, id: IndecId) -> Result<IndecId> {
        if id.0 < self.indecs.len() {
            Ok(id)
        } else {
            Err(Error::ForeignIndec(id.0))
        }
    }

    pub fn find(&self, dim: &DimVector) -> Option<IndecId> {
        self.by_dim.get(dim).copied()
    }

    pub fn at(&self, coord: ArCoord) -> Option<IndecId> {
        self.by_coord.get(&coord).copied()
    }

    pub fn simple(&self, i: usize) -> IndecId {
        self.by_dim[&DimVector::unit(self.rank(), i)]
    }

    pub fn projective(&self, i: usize) -> IndecId {
        self.by_coord[&ArCoord { vertex: i, shift: 0 }]
    }

    /// The injective hull of `S(i)`: `(dim I(i))_j` counts paths `j -> i`.
    pub fn injective(&self, i: usize) -> IndecId {
        let n = self.rank();
        let dim = DimVector((1..=n).map(|j| self.quiver.path_count(j, i)).collect());
        self.by_dim[&dim]
    }

    /// The interval module `M(r, s)` with dimension vector `e_r + ... + e_s` (type A).
    pub fn interval(&self, r: usize, s: usize) -> Option<IndecId> {
        if r == 0 || r > s || s > self.rank() {
            return None;
        }
        let dim = DimVector((1..=self.rank()).map(|v| i64::from(r <= v && v <= s)).collect());
        self.find(&dim)
    }

    /// Irreducible-map arrows, sorted.
    pub fn arrows(&self) -> &[(IndecId, IndecId)] {
        &self.arrows
    }

    /// Targets of irreducible maps out of `id`; for non-injective `id` these are
    /// the middle terms of its AR sequence.
    pub fn mesh_successors(&self, id: IndecId) -> &[IndecId] {
        &self.successors[id.0]
    }

    pub fn tau(&self, id: IndecId) -> Result<Option<IndecId>> {
        Ok(self.tau[self.check(id)?.0])
    }

    pub fn tau_inv(&self, id: IndecId) -> Result<Option<IndecId>> {
        Ok(self.tau_inv[self.check(id)?.0])
    }

    pub(crate) fn tau_of(&self, id: IndecId) -> Option<IndecId> {
        self.tau[id.0]
    }

    pub(crate) fn tau_inv_of(&self, id: IndecId) -> Option<IndecId> {
        self.tau_inv[id.0]
    }

    /// `dim Hom(m, n)`.
    pub fn hom_dim(&self, m: IndecId, n: IndecId) -> Result<i64> {
        Ok(self.hom[self.check(m)?.0][self.check(n)?.0])
    }

    /// `dim Ext^1(m, n)`, via `D Hom(n, tau m)`.
    pub fn ext_dim(&self, m: IndecId, n: IndecId) -> Result<i64> {
        self.check(n)?;
        Ok(match self.tau(m)? {
            None => 0,
            Some(t) => self.hom[n.0][t.0],
        })
    }

    pub(crate) fn hom(&self, m: IndecId, n: IndecId) -> i64 {
        self.hom[m.0][n.0]
    }

    /// `P(i) -> I(i)` for every vertex.
    pub fn nakayama(&self) -> Vec<NakayamaPair> {
        self.quiver
            .vertices()
            .map(|i| NakayamaPair { vertex: i, projective: self.projective(i), injective: self.injective(i) })
            .collect()
    }

    /// The injective reached by walking the `tau^{-1}`-orbit of `P(i)`.
    pub fn orbit_end(&self, i: usize) -> IndecId {
        let mut cur = self.projective(i);
        while let Some(next) = self.tau_inv[cur.0] {
            cur = next;
        }
        cur
    }

    /// `nu(P(i))` as an AR coordinate.
    pub fn nakayama_coordinate(&self, i: usize) -> ArCoord {
        self.indecs[self.injective(i).0].coord
    }

    /// The module `D(M)` over the opposite quiver: same dimension vector.
    pub fn dualize(&self, id: IndecId, opposite: &ArQuiver) -> Result<IndecId> {
        self.check(id)?;
        if opposite.quiver != self.quiver.opposite() {
            return Err(Error::Unsupported("target is not the opposite quiver".into()));
        }
        opposite
            .find(self.dim(id))
            .ok_or_else(|| Error::Internal(format!("{} has no dual", self.dim(id))))
    }

    /// `dim Hom(S(i), M) <= 1` for all vertices and indecomposables.
    pub fn is_cospecial(&self) -> bool {
        self.quiver
            .vertices()
            .all(|i| self.ids().all(|m| self.hom(self.simple(i), m) <= 1))
    }

    /// No thick vertex is a source (equivalently the opposite quiver is cospecial).
    pub fn is_special(&self) -> bool {
        self.quiver.vertices().all(|i| {
            !(self.quiver.is_source(i) && self.indecs.iter().any(|m| m.dim.get(i) >= 2))
        })
    }

    pub fn to_json(&self) -> ArJson {
        ArJson {
            quiver: self.quiver.spec(),
            nodes: self
                .indecs
                .iter()
                .enumerate()
                .map(|(id, m)| ArNodeJson {
                    id,
                    dim: m.dim.0.clone(),
                    vertex: m.coord.vertex,
                    shift: m.coord.shift,
                    projective: m.is_projective,
                    injective: m.is_injective,
                })
                .collect(),
            arrows: self.arrows.iter().map(|(x, y)| [x.0, y.0]).collect(),
            tau: self.tau.iter().enumerate().filter_map(|(k, t)| t.map(|t| [k, t.0])).collect(),
        }
    }

    /// DOT rendering. Nodes appear in `IndecId` order (lexicographic dimension
    /// vectors) labelled by their digit strings; irreducible maps are solid,
    /// translations are dashed edges `M -> tau M` labelled `tau`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph gamma {{");
        let _ = writeln!(out, "  rankdir=LR;");
        for (k, m) in self.indecs.iter().enumerate() {
            let _ = writeln!(
                out,
                "  n{k} [label=\"{}\", vertex={}, shift={}];",
                m.dim.digits(),
                m.coord.vertex,
                m.coord.shift
            );
        }
        for (x, y) in &self.arrows {
            let _ = writeln!(out, "  n{} -> n{};", x.0, y.0);
        }
        for (k, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                let _ = writeln!(out, "  n{k} -> n{} [style=dashed, label=\"tau\"];", t.0);
            }
        }
        let _ = writeln!(out, "}}");
        out
    }
}

fn coxeter_inverse(q: &Quiver, adapted: &[usize], v: &DimVector) -> Result<DimVector> {
    let mut out = v.clone();
    for &i in adapted.iter().rev() {
        out = q.reflect(i, &out)?;
    }
    Ok(out)
}

/// `r_{i_n} ... r_{i_1}(v)`: the dimension vector of `tau M` when `v = dim M`.
pub fn coxeter(q: &Quiver, v: &DimVector) -> Result<DimVector> {
    let mut out = v.clone();
    for i in q.adapted_order() {
        out = q.reflect(i, &out)?;
    }
    Ok(out)
}

/// `nu(r, i) = (r + i - 1, n + 1 - i)` in type `A_n`, coordinates `(shift, vertex)`.
pub fn type_a_nakayama(n: usize, shift: usize, vertex: usize) -> (usize, usize) {
    (shift + vertex - 1, n + 1 - vertex)
}
