//! Crystal operators on isoclasses of modules and generation of `B(lambda)`.
//!
//! `f_i` replaces the summand `U_M` by `V_M`; `e_i` is its inverse on the
//! image. Membership in `B(lambda)` is `eps_i^*(M) <= lambda_i` for all `i`.

pub mod graph;

use std::collections::HashMap;

use log::debug;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modclass::ModClass;
use crate::reineke::ModuleModel;
pub use graph::{affine_a_cartan, t_lambda, CrystalGraph, EdgeJson, GraphJson, Len, NodeJson, Violation};

/// Default cap on generated nodes.
pub const DEFAULT_MAX_NODES: usize = 1_000_000;

impl ModuleModel {
    fn check_vertex(&self, i: usize) -> Result<()> {
        self.tables(i).map(|_| ())
    }

    fn check_lambda(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: lambda.len() });
        }
        if lambda.iter().any(|&l| l < 0) {
            return Err(Error::InvalidModule(format!("weight {lambda:?} is not dominant")));
        }
        Ok(())
    }

    /// `f_i(M) = M - U_M + V_M`.
    pub fn apply_f(&self, m: &ModClass, i: usize) -> Result<ModClass> {
        self.require_special()?;
        self.check_vertex(i)?;
        self.check_len(m)?;
        let (idx, _) = self.vm_index(m, i)?;
        let out = self.replace(m, i, idx)?;
        let (before, after) = (m.dim(self.ar()), out.dim(self.ar()));
        let grown = after.sub(&before);
        if grown != crate::quiver::DimVector::unit(self.rank(), i) {
            return Err(Error::Internal(format!(
                "f_{i} changed the dimension vector by {:?}",
                grown.0
            )));
        }
        Ok(out)
    }

    fn replace(&self, m: &ModClass, i: usize, idx: usize) -> Result<ModClass> {
        let mut out = m.clone();
        for &c in self.removal(i, idx) {
            out.remove(c, 1).map_err(|_| {
                Error::Internal(format!("U_M is not a direct summand of {}", m.display(self.ar())))
            })?;
        }
        for &b in &self.plain_antichain(i, idx).summands {
            out.add(b, 1);
        }
        Ok(out)
    }

    /// `e_i(M)`, or `None` when `eps_i(M) = 0`.
    pub fn apply_e(&self, m: &ModClass, i: usize) -> Result<Option<ModClass>> {
        self.require_special()?;
        self.check_vertex(i)?;
        self.check_len(m)?;
        let (_, top) = self.vm_index(m, i)?;
        if top == 0 {
            return Ok(None);
        }
        for idx in 0..self.plain_count(i) {
            let v = self.plain_antichain(i, idx);
            if v.summands.iter().any(|&b| m.get(b) == 0) {
                continue;
            }
            let mut n = m.clone();
            for &b in &v.summands {
                n.remove(b, 1)?;
            }
            for &c in self.removal(i, idx) {
                n.add(c, 1);
            }
            if self.apply_f(&n, i)? == *m {
                return Ok(Some(n));
            }
        }
        Err(Error::Internal(format!("no preimage of {} under f_{i}", m.display(self.ar()))))
    }

    /// `eps_i(M) = max over S_i of F_i(M, V)`.
    pub fn eps(&self, m: &ModClass, i: usize) -> Result<i64> {
        self.check_vertex(i)?;
        self.check_len(m)?;
        Ok((0..self.plain_count(i)).map(|k| self.f_plain_at(m, i, k)).max().unwrap_or(0))
    }

    /// Weight pairings `wt(M)(h_i) = lambda_i - (C dim M)_i`; `lambda = None` is `B(inf)`.
    pub fn weight(&self, m: &ModClass, lambda: Option<&[i64]>) -> Result<Vec<i64>> {
        self.check_len(m)?;
        let c = self.quiver().cartan_apply(&m.dim(self.ar()));
        Ok(match lambda {
            Some(l) => {
                if l.len() != self.rank() {
                    return Err(Error::RankMismatch { expected: self.rank(), got: l.len() });
                }
                l.iter().zip(c).map(|(a, b)| a - b).collect()
            }
            None => c.into_iter().map(|b| -b).collect(),
        })
    }

    /// `phi_i(M) = eps_i(M) + wt(M)(h_i)`.
    pub fn phi(&self, m: &ModClass, i: usize, lambda: Option<&[i64]>) -> Result<i64> {
        let w = self.weight(m, lambda)?;
        Ok(self.eps(m, i)? + w[i - 1])
    }

    /// Whether `M` lies in the image of `B(lambda)`.
    pub fn in_highest_weight_crystal(&self, m: &ModClass, lambda: &[i64]) -> Result<bool> {
        self.check_lambda(lambda)?;
        self.require_cospecial()?;
        Ok(self.eps_star_vector(m)?.iter().zip(lambda).all(|(e, l)| e <= l))
    }

    fn inside(&self, m: &ModClass, lambda: &[i64]) -> bool {
        self.quiver().vertices().all(|j| self.eps_star_unchecked(m, j) <= lambda[j - 1])
    }

    /// `f_i` restricted to `B(lambda)`.
    pub fn apply_f_lambda(&self, m: &ModClass, i: usize, lambda: &[i64]) -> Result<Option<ModClass>> {
        self.check_lambda(lambda)?;
        self.require_cospecial()?;
        let n = self.apply_f(m, i)?;
        Ok(self.inside(&n, lambda).then_some(n))
    }

    /// `e_i` restricted to `B(lambda)` (which is closed under `e_i`).
    pub fn apply_e_lambda(&self, m: &ModClass, i: usize, lambda: &[i64]) -> Result<Option<ModClass>> {
        self.check_lambda(lambda)?;
        self.apply_e(m, i)
    }
}

/// A generated crystal graph together with the module attached to each node.
#[derive(Clone, Debug)]
pub struct ModuleCrystal {
    pub lambda: Vec<i64>,
    pub graph: CrystalGraph,
    pub modules: Vec<ModClass>,
    index: HashMap<ModClass, usize>,
}

impl ModuleCrystal {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Same modules and node ids with a different graph (e.g. affine colours added).
    pub fn with_graph(self, graph: CrystalGraph) -> Result<ModuleCrystal> {
        if graph.len() != self.modules.len() {
            return Err(Error::Graph("replacement graph has a different node count".into()));
        }
        Ok(ModuleCrystal { graph, ..self })
    }

    pub fn node_of(&self, m: &ModClass) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn to_json(&self, model: &ModuleModel) -> GraphJson {
        GraphJson {
            quiver: model.quiver().spec(),
            lambda: self.lambda.clone(),
            colors: self.graph.colors(),
            nodes: self
                .modules
                .iter()
                .enumerate()
                .map(|(id, m)| NodeJson { id, mult: m.mult_entries(model.ar()), wt: self.graph.weight(id).to_vec() })
                .collect(),
            edges: self.graph.edges().into_iter().map(|(src, color, dst)| EdgeJson { src, color, dst }).collect(),
        }
    }
}

struct Expansion {
    eps: Vec<i64>,
    targets: Vec<Option<ModClass>>,
}

/// Generate `B(lambda)` from the zero module by breadth-first search.
/// Node ids follow layers (total dimension), sorted canonically within each layer.
pub fn generate_crystal(model: &ModuleModel, lambda: &[i64], max_nodes: usize) -> Result<ModuleCrystal> {
    model.check_lambda(lambda)?;
    model.require_special()?;
    model.require_cospecial()?;
    let n = model.rank();
    let mut graph = CrystalGraph::new(model.quiver().cartan_matrix(), true);
    let mut modules: Vec<ModClass> = Vec::new();
    let mut index: HashMap<ModClass, usize> = HashMap::new();
    let mut layer = vec![ModClass::zero(model.ar())];
    let mut pending: Vec<(usize, usize, ModClass)> = Vec::new();
    while !layer.is_empty() {
        if modules.len() + layer.len() > max_nodes {
            return Err(Error::NodeCap(max_nodes));
        }
        let base = modules.len();
        for (k, m) in layer.iter().enumerate() {
            index.insert(m.clone(), base + k);
        }
        let expanded: Vec<Expansion> = layer
            .par_iter()
            .map(|m| -> Result<Expansion> {
                let mut eps = Vec::with_capacity(n);
                let mut targets = Vec::with_capacity(n);
                for i in 1..=n {
                    eps.push(model.eps(m, i)?);
                    targets.push(model.apply_f_lambda(m, i, lambda)?);
                }
                Ok(Expansion { eps, targets })
            })
            .collect::<Result<_>>()?;
        let mut next: Vec<ModClass> = Vec::new();
        let mut outgoing = Vec::new();
        for (k, (m, ex)) in layer.iter().zip(expanded).enumerate() {
            let id = base + k;
            let wt = model.weight(m, Some(lambda))?;
            let eps: Vec<Len> = ex.eps.iter().map(|&e| Len::Fin(e)).collect();
            let phi: Vec<Len> = ex.eps.iter().zip(&wt).map(|(&e, &w)| Len::Fin(e + w)).collect();
            graph.add_node(m.display(model.ar()).to_string(), wt, eps, phi)?;
            for (c, t) in ex.targets.into_iter().enumerate() {
                if let Some(t) = t {
                    next.push(t.clone());
                    outgoing.push((id, c + 1, t));
                }
            }
        }
        for (src, color, m) in pending.drain(..) {
            graph.add_edge(src, color, index[&m])?;
        }
        pending = outgoing;
        modules.extend(layer);
        next.sort();
        next.dedup();
        debug!("crystal layer with {} nodes, {} total", next.len(), modules.len());
        layer = next;
    }
    Ok(ModuleCrystal { lambda: lambda.to_vec(), graph, modules, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::ArQuiver;
    use crate::quiver::{Quiver, QuiverSpec, Family};

    fn standard(n: usize) -> ModuleModel {
        ModuleModel::new(&Quiver::standard_a(n).unwrap()).unwrap()
    }

    fn root(ar: &ArQuiver, d: &[i64]) -> crate::ar::IndecId {
        ar.find(&crate::quiver::DimVector(d.to_vec())).unwrap()
    }

    #[test]
    fn a2_first_steps() {
        let model = standard(2);
        let ar = model.ar();
        let zero = ModClass::zero(ar);
        let s1 = root(ar, &[1, 0]);
        let s2 = root(ar, &[0, 1]);
        assert_eq!(model.apply_f(&zero, 1).unwrap(), ModClass::single(ar, s1, 1));
        assert_eq!(model.apply_f(&zero, 2).unwrap(), ModClass::single(ar, s2, 1));
        assert_eq!(model.apply_e(&zero, 1).unwrap(), None);
        let m = model.apply_f(&ModClass::single(ar, s1, 1), 2).unwrap();
        assert_eq!(model.apply_e(&m, 2).unwrap(), Some(ModClass::single(ar, s1, 1)));
        assert_eq!(model.weight(&zero, Some(&[1, 1])).unwrap(), vec![1, 1]);
    }

    #[test]
    fn a2_adjoint_crystal_has_eight_nodes() {
        let model = standard(2);
        let c = generate_crystal(&model, &[1, 1], 1000).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.graph.check_axioms().is_empty());
        assert_eq!(c.graph.sources(), vec![0]);
    }

    #[test]
    fn fundamental_a3_sizes() {
        let model = standard(3);
        for (lambda, size) in [([1, 0, 0], 4), ([0, 1, 0], 6), ([0, 0, 1], 4), ([0, 0, 0], 1)] {
            let c = generate_crystal(&model, &lambda, 1000).unwrap();
            assert_eq!(c.len(), size, "{lambda:?}");
            assert!(c.graph.check_axioms().is_empty());
        }
    }

    #[test]
    fn node_cap_is_enforced() {
        let model = standard(3);
        assert!(matches!(generate_crystal(&model, &[2, 2, 2], 10), Err(Error::NodeCap(10))));
    }

    #[test]
    fn non_special_quiver_is_rejected() {
        // D_4 with 1 -> 3 <- 2, 3 -> 4 has no thick source; check whichever
        // orientation the model classifies as non-special
        let d4 = Quiver::all_orientations(Family::D, 4).unwrap();
        for q in d4 {
            let model = ModuleModel::new(&q).unwrap();
            if !model.is_special() {
                let zero = ModClass::zero(model.ar());
                assert!(matches!(model.apply_f(&zero, 1), Err(Error::NotSpecial)));
                return;
            }
        }
        let _ = QuiverSpec { family: Family::D, rank: 4, arrows: vec![] };
        panic!("expected a non-special orientation of D_4");
    }
}
