//! Finite edge-coloured crystal graphs: axiom checking, tensor products and
//! isomorphism by simultaneous traversal.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modclass::MultEntry;
use crate::quiver::{Quiver, QuiverSpec};

/// `Z ⊔ {-inf}` with saturating arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Len {
    NegInf,
    Fin(i64),
}

impl Len {
    pub fn plus(self, k: i64) -> Len {
        match self {
            Len::NegInf => Len::NegInf,
            Len::Fin(x) => Len::Fin(x + k),
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Len::NegInf => None,
            Len::Fin(x) => Some(x),
        }
    }
}

impl fmt::Display for Len {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Len::NegInf => write!(f, "-inf"),
            Len::Fin(x) => write!(f, "{x}"),
        }
    }
}

/// Cartan matrix of affine `A_n^(1)`, indices `0..=n`.
#[allow(clippy::needless_range_loop)]
pub fn affine_a_cartan(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n + 1]; n + 1];
    for (k, row) in c.iter_mut().enumerate() {
        row[k] = 2;
    }
    if n == 1 {
        c[0][1] = -2;
        c[1][0] = -2;
    } else {
        for k in 0..=n {
            let next = (k + 1) % (n + 1);
            c[k][next] = -1;
            c[next][k] = -1;
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub node: usize,
    pub color: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {} color {}: {}", self.node, self.color, self.message)
    }
}

/// A finite crystal graph. Weights are stored as classical pairings
/// `wt(b)(h_1..h_n)`; on affine graphs (colours `0..=n`) the pairing with
/// `h_0` is the level-zero value `-sum_k wt(b)(h_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrystalGraph {
    rank: usize,
    affine: bool,
    cartan: Vec<Vec<i64>>,
    seminormal: bool,
    labels: Vec<String>,
    wt: Vec<Vec<i64>>,
    eps: Vec<Vec<Len>>,
    phi: Vec<Vec<Len>>,
    pub(crate) f: Vec<Vec<Option<usize>>>,
    pub(crate) e: Vec<Vec<Option<usize>>>,
}

impl CrystalGraph {
    /// Empty classical graph with colours `1..=n` for the given Cartan matrix.
    pub fn new(cartan: Vec<Vec<i64>>, seminormal: bool) -> Self {
        CrystalGraph {
            rank: cartan.len(),
            affine: false,
            cartan,
            seminormal,
            labels: Vec::new(),
            wt: Vec::new(),
            eps: Vec::new(),
            phi: Vec::new(),
            f: Vec::new(),
            e: Vec::new(),
        }
    }

    /// Empty graph of affine type `A_n^(1)`, colours `0..=n`.
    pub fn new_affine_a(n: usize) -> Self {
        CrystalGraph { affine: true, cartan: affine_a_cartan(n), ..CrystalGraph::new(vec![vec![0; n]; n], true) }
    }

    fn empty_like(&self) -> CrystalGraph {
        CrystalGraph {
            rank: self.rank,
            affine: self.affine,
            cartan: self.cartan.clone(),
            seminormal: self.seminormal,
            labels: Vec::new(),
            wt: Vec::new(),
            eps: Vec::new(),
            phi: Vec::new(),
            f: Vec::new(),
            e: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    pub fn is_seminormal(&self) -> bool {
        self.seminormal
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn colors(&self) -> Vec<usize> {
        if self.affine {
            (0..=self.rank).collect()
        } else {
            (1..=self.rank).collect()
        }
    }

    fn slot(&self, color: usize) -> Result<usize> {
        match (self.affine, color) {
            (true, c) if c <= self.rank => Ok(c),
            (false, c) if c >= 1 && c <= self.rank => Ok(c - 1),
            _ => Err(Error::Graph(format!("colour {color} is not used by this graph"))),
        }
    }

    fn slots(&self) -> usize {
        self.rank + usize::from(self.affine)
    }

    fn color_of_slot(&self, slot: usize) -> usize {
        if self.affine {
            slot
        } else {
            slot + 1
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Add a node; `eps`/`phi` are given per colour in [`CrystalGraph::colors`] order.
    pub fn add_node(&mut self, label: String, wt: Vec<i64>, eps: Vec<Len>, phi: Vec<Len>) -> Result<usize> {
        if wt.len() != self.rank || eps.len() != self.slots() || phi.len() != self.slots() {
            return Err(Error::Graph(format!("node {label} has data of the wrong length")));
        }
        self.labels.push(label);
        self.wt.push(wt);
        self.eps.push(eps);
        self.phi.push(phi);
        self.f.push(vec![None; self.slots()]);
        self.e.push(vec![None; self.slots()]);
        Ok(self.labels.len() - 1)
    }

    /// Record `f_color(src) = dst`.
    pub fn add_edge(&mut self, src: usize, color: usize, dst: usize) -> Result<()> {
        let s = self.slot(color)?;
        if src >= self.len() || dst >= self.len() {
            return Err(Error::Graph(format!("edge {src} -{color}-> {dst} leaves the node set")));
        }
        if self.f[src][s].is_some() {
            return Err(Error::Graph(format!("node {src} has two outgoing {color}-edges")));
        }
        if self.e[dst][s].is_some() {
            return Err(Error::Graph(format!("node {dst} has two incoming {color}-edges")));
        }
        self.f[src][s] = Some(dst);
        self.e[dst][s] = Some(src);
        Ok(())
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Classical weight pairings.
    pub fn weight(&self, b: usize) -> &[i64] {
        &self.wt[b]
    }

    /// `wt(b)(h_color)`.
    pub fn pairing(&self, b: usize, color: usize) -> i64 {
        if color == 0 {
            -self.wt[b].iter().sum::<i64>()
        } else {
            self.wt[b][color - 1]
        }
    }

    pub fn eps(&self, b: usize, color: usize) -> Len {
        self.eps[b][self.slot(color).expect("valid colour")]
    }

    pub fn phi(&self, b: usize, color: usize) -> Len {
        self.phi[b][self.slot(color).expect("valid colour")]
    }

    pub fn f(&self, b: usize, color: usize) -> Option<usize> {
        self.f[b][self.slot(color).expect("valid colour")]
    }

    pub fn e(&self, b: usize, color: usize) -> Option<usize> {
        self.e[b][self.slot(color).expect("valid colour")]
    }

    /// All edges `(src, colour, dst)`, sorted by source then colour.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (b, row) in self.f.iter().enumerate() {
            for (s, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    out.push((b, self.color_of_slot(s), *t));
                }
            }
        }
        out
    }

    /// Nodes without incoming edges.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.e[b].iter().all(Option::is_none)).collect()
    }

    /// Connected components of the underlying undirected graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut k = 0;
            while k < members.len() {
                let b = members[k];
                k += 1;
                for n in self.f[b].iter().chain(&self.e[b]).flatten() {
                    if comp[*n] == usize::MAX {
                        comp[*n] = id;
                        members.push(*n);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The full subgraph on `nodes` (which must be a union of components).
    pub fn subgraph(&self, nodes: &[usize]) -> Result<CrystalGraph> {
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &b) in nodes.iter().enumerate() {
            pos[b] = k;
        }
        let mut g = self.empty_like();
        for &b in nodes {
            g.add_node(self.labels[b].clone(), self.wt[b].clone(), self.eps[b].clone(), self.phi[b].clone())?;
        }
        for (s, c, t) in self.edges() {
            match (pos[s] != usize::MAX, pos[t] != usize::MAX) {
                (true, true) => g.add_edge(pos[s], c, pos[t])?,
                (false, false) => {}
                _ => return Err(Error::Graph("subgraph cuts an edge".into())),
            }
        }
        Ok(g)
    }

    /// Copy of a classical type-A graph with colour 0 adjoined; `eps0`/`phi0`
    /// give the new statistics per node, edges of colour 0 are added afterwards.
    pub fn with_zero_color(&self, eps0: &[Len], phi0: &[Len]) -> Result<CrystalGraph> {
        let mut g = CrystalGraph::new_affine_a(self.rank);
        if self.affine || affine_a_cartan(self.rank)[1..].iter().zip(&self.cartan).any(|(a, c)| a[1..] != c[..]) {
            return Err(Error::Unsupported("colour 0 can only be adjoined to a classical type-A graph".into()));
        }
        if eps0.len() != self.len() || phi0.len() != self.len() {
            return Err(Error::Graph("colour-0 data has the wrong length".into()));
        }
        g.seminormal = self.seminormal;
        for b in 0..self.len() {
            let eps = std::iter::once(eps0[b]).chain(self.eps[b].iter().copied()).collect();
            let phi = std::iter::once(phi0[b]).chain(self.phi[b].iter().copied()).collect();
            g.add_node(self.labels[b].clone(), self.wt[b].clone(), eps, phi)?;
        }
        for (s, c, t) in self.edges() {
            g.add_edge(s, c, t)?;
        }
        Ok(g)
    }

    /// Multiset of classical weights, sorted.
    pub fn character(&self) -> Vec<(Vec<i64>, usize)> {
        let mut ws = self.wt.clone();
        ws.sort();
        let mut out: Vec<(Vec<i64>, usize)> = Vec::new();
        for w in ws {
            match out.last_mut() {
                Some((last, k)) if *last == w => *k += 1,
                _ => out.push((w, 1)),
            }
        }
        out
    }

    /// Check the crystal axioms plus string consistency. An empty result means
    /// the graph is a valid crystal.
    pub fn check_axioms(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut bad = |node, color, message: String| out.push(Violation { node, color, message });
        for b in 0..self.len() {
            for c in self.colors() {
                let s = self.slot(c).expect("own colour");
                let (eps, phi) = (self.eps[b][s], self.phi[b][s]);
                if phi != eps.plus(self.pairing(b, c)) {
                    bad(b, c, format!("phi = {phi} but eps + wt = {}", eps.plus(self.pairing(b, c))));
                }
                if eps == Len::NegInf && (self.f[b][s].is_some() || self.e[b][s].is_some()) {
                    bad(b, c, "eps = -inf but an operator acts".into());
                }
                if let Some(t) = self.f[b][s] {
                    if self.e[t][s] != Some(b) {
                        bad(b, c, format!("f sends to {t} but e of {t} is {:?}", self.e[t][s]));
                    }
                    for k in self.colors() {
                        let shift = self.cartan[self.slot(k).expect("own colour")][s];
                        if self.pairing(t, k) != self.pairing(b, k) - shift {
                            bad(b, c, format!("f changes the h_{k} pairing incorrectly"));
                        }
                    }
                    if self.eps[t][s] != eps.plus(1) || self.phi[t][s] != phi.plus(-1) {
                        bad(b, c, "f does not shift eps/phi by one".into());
                    }
                }
                if let Some(t) = self.e[b][s] {
                    if self.f[t][s] != Some(b) {
                        bad(b, c, format!("e sends to {t} but f of {t} is {:?}", self.f[t][s]));
                    }
                    if self.eps[t][s] != eps.plus(-1) || self.phi[t][s] != phi.plus(1) {
                        bad(b, c, "e does not shift eps/phi by one".into());
                    }
                }
                if let Len::Fin(x) = eps {
                    let steps = self.string_length(b, s, &self.e);
                    if steps != Some(x) {
                        bad(b, c, format!("eps = {x} but the e-string has length {steps:?}"));
                    }
                }
                if self.seminormal {
                    if let Len::Fin(x) = phi {
                        let steps = self.string_length(b, s, &self.f);
                        if steps != Some(x) {
                            bad(b, c, format!("phi = {x} but the f-string has length {steps:?}"));
                        }
                    }
                }
            }
        }
        out
    }

    fn string_length(&self, b: usize, s: usize, ops: &[Vec<Option<usize>>]) -> Option<i64> {
        let mut cur = b;
        let mut steps = 0i64;
        while let Some(n) = ops[cur][s] {
            cur = n;
            steps += 1;
            if steps as usize > self.len() {
                return None;
            }
        }
        Some(steps)
    }

    /// Tensor product `self ⊗ other`; node `(a, b)` gets id `a * other.len() + b`.
    pub fn tensor(&self, other: &CrystalGraph) -> Result<CrystalGraph> {
        if self.cartan != other.cartan || self.affine != other.affine {
            return Err(Error::Graph("tensor factors use different colour data".into()));
        }
        let m = other.len();
        let mut g = self.empty_like();
        g.seminormal = self.seminormal && other.seminormal;
        let colors = self.colors();
        for a in 0..self.len() {
            for b in 0..m {
                let wt = self.wt[a].iter().zip(&other.wt[b]).map(|(x, y)| x + y).collect();
                let mut eps = Vec::new();
                let mut phi = Vec::new();
                for &c in &colors {
                    let s = self.slot(c)?;
                    eps.push(self.eps[a][s].max(other.eps[b][s].plus(-self.pairing(a, c))));
                    phi.push(other.phi[b][s].max(self.phi[a][s].plus(other.pairing(b, c))));
                }
                g.add_node(format!("{} ⊗ {}", self.labels[a], other.labels[b]), wt, eps, phi)?;
            }
        }
        for a in 0..self.len() {
            for b in 0..m {
                for &c in &colors {
                    let s = self.slot(c)?;
                    let target = if self.phi[a][s] > other.eps[b][s] {
                        self.f[a][s].map(|x| x * m + b)
                    } else {
                        other.f[b][s].map(|y| a * m + y)
                    };
                    if let Some(t) = target {
                        g.add_edge(a * m + b, c, t)?;
                    }
                }
            }
        }
        Ok(g)
    }

    /// Colour- and weight-preserving isomorphism `self -> other`, found by
    /// walking both graphs from their unique sources. `Ok(None)` when none exists.
    pub fn isomorphism(&self, other: &CrystalGraph) -> Result<Option<Vec<usize>>> {
        let (s1, s2) = (self.sources(), other.sources());
        if s1.len() != 1 || s2.len() != 1 {
            return Err(Error::Graph(format!(
                "isomorphism search needs one source per graph, found {} and {}",
                s1.len(),
                s2.len()
            )));
        }
        if self.len() != other.len() || self.cartan != other.cartan || self.affine != other.affine {
            return Ok(None);
        }
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        let mut queue = VecDeque::from([(s1[0], s2[0])]);
        map[s1[0]] = s2[0];
        used[s2[0]] = true;
        while let Some((a, b)) = queue.pop_front() {
            if self.wt[a] != other.wt[b] || self.eps[a] != other.eps[b] || self.phi[a] != other.phi[b] {
                return Ok(None);
            }
            for s in 0..self.slots() {
                for (x, y) in [(self.f[a][s], other.f[b][s]), (self.e[a][s], other.e[b][s])] {
                    match (x, y) {
                        (None, None) => {}
                        (Some(x), Some(y)) => {
                            if map[x] == usize::MAX {
                                if used[y] {
                                    return Ok(None);
                                }
                                map[x] = y;
                                used[y] = true;
                                queue.push_back((x, y));
                            } else if map[x] != y {
                                return Ok(None);
                            }
                        }
                        _ => return Ok(None),
                    }
                }
            }
        }
        Ok(map.iter().all(|&y| y != usize::MAX).then_some(map))
    }

    /// DOT rendering; nodes in id order, edges sorted by source then colour.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph crystal {{");
        for (k, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{k} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for (s, c, t) in self.edges() {
            let _ = writeln!(out, "  n{s} -> n{t} [label=\"{c}\"];");
        }
        let _ = writeln!(out, "}}");
        out
    }

    /// Read a graph from its JSON form. `eps` is recovered from e-string
    /// lengths and `phi = eps + wt`, so the result is checked by
    /// [`CrystalGraph::check_axioms`] against the f-strings.
    pub fn from_json(json: &GraphJson) -> Result<CrystalGraph> {
        let quiver = Quiver::new(&json.quiver)?;
        let n = quiver.rank();
        let affine = json.colors.contains(&0);
        let mut g = if affine {
            if !quiver.is_standard_a() && n > 1 {
                return Err(Error::Unsupported("colour 0 needs type A".into()));
            }
            CrystalGraph::new_affine_a(n)
        } else {
            CrystalGraph::new(quiver.cartan_matrix(), true)
        };
        let expected: Vec<usize> = g.colors();
        if json.colors != expected {
            return Err(Error::Parse(format!("colours {:?}, expected {expected:?}", json.colors)));
        }
        for (k, node) in json.nodes.iter().enumerate() {
            if node.id != k {
                return Err(Error::Parse(format!("node ids must be 0..N in order, found {} at {k}", node.id)));
            }
            let label = node.mult.iter().map(|e| format!("{}^{}", e.root.iter().map(|d| d.to_string()).collect::<String>(), e.m)).collect::<Vec<_>>().join("+");
            let slots = g.slots();
            g.add_node(label, node.wt.clone(), vec![Len::Fin(0); slots], vec![Len::Fin(0); slots])?;
        }
        for e in &json.edges {
            g.add_edge(e.src, e.color, e.dst)?;
        }
        for b in 0..g.len() {
            for s in 0..g.slots() {
                let eps = g.string_length(b, s, &g.e).ok_or_else(|| Error::Graph("cyclic e-string".into()))?;
                let c = g.color_of_slot(s);
                g.eps[b][s] = Len::Fin(eps);
                g.phi[b][s] = Len::Fin(eps + g.pairing(b, c));
            }
        }
        Ok(g)
    }
}

/// The one-element crystal `T_lambda`.
pub fn t_lambda(cartan: Vec<Vec<i64>>, lambda: &[i64]) -> Result<CrystalGraph> {
    let n = cartan.len();
    if lambda.len() != n {
        return Err(Error::RankMismatch { expected: n, got: lambda.len() });
    }
    let mut g = CrystalGraph::new(cartan, false);
    g.add_node(format!("t{lambda:?}"), lambda.to_vec(), vec![Len::NegInf; n], vec![Len::NegInf; n])?;
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub mult: Vec<MultEntry>,
    pub wt: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub src: usize,
    pub color: usize,
    pub dst: usize,
}

/// `{"quiver": ..., "lambda": [...], "colors": [...], "nodes": [...], "edges": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub quiver: QuiverSpec,
    pub lambda: Vec<i64>,
    pub colors: Vec<usize>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}
