//! Posets of indecomposables attached to a vertex, their antichain modules and
//! the statistics `F_i`, `F_i^v` that drive the crystal structure.
//!
//! For a vertex `i`:
//! * `P_i` holds the indecomposables `B` with `Hom(B, S(i)) != 0`,
//!   `P_i^v` those with `Hom(S(i), B) != 0`; both ordered by `N <= M` iff `Hom(N, M) != 0`.
//! * `S_i` / `S_i^v` are the antichains of these posets, ordered by `⊴` / `⊴^v`.
//!
//! Everything that only depends on the quiver and the antichain (which `B`
//! enter each sum, which `tau B` make up `U`) is tabulated once in
//! [`ModuleModel::new`]; evaluating a statistic on a module is then a short sum.

use crate::ar::{ArQuiver, IndecId};
use crate::error::{Error, Result};
use crate::modclass::ModClass;
use crate::quiver::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `P_i`, `S_i`, `⊴`.
    Plain,
    /// `P_i^v`, `S_i^v`, `⊴^v`.
    Check,
}

/// A nonempty antichain, summands sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain {
    pub summands: Vec<IndecId>,
}

impl Antichain {
    pub fn single(id: IndecId) -> Self {
        Antichain { summands: vec![id] }
    }

    pub fn as_modclass(&self, ar: &ArQuiver) -> ModClass {
        let mut m = ModClass::zero(ar);
        for &b in &self.summands {
            m.add(b, 1);
        }
        m
    }
}

/// The terms `mu_B - mu_{tau^{+-1} B}` of one statistic, stored as `(B, partner)`.
type Terms = Vec<(IndecId, Option<IndecId>)>;

#[derive(Clone, Debug)]
struct PlainEntry {
    antichain: Antichain,
    terms: Terms,
    /// `tau B` for the minimal `B` in `P_i` with `B ⋬ V`.
    removal: Vec<IndecId>,
}

#[derive(Clone, Debug)]
struct CheckEntry {
    antichain: Antichain,
    terms: Terms,
}

#[derive(Clone, Debug)]
pub struct VertexTables {
    vertex: usize,
    poset: Vec<IndecId>,
    poset_check: Vec<IndecId>,
    plain: Vec<PlainEntry>,
    check: Vec<CheckEntry>,
    /// `plain_leq[a][b]` iff `S_i[a] ⊴ S_i[b]`.
    plain_leq: Vec<Vec<bool>>,
    /// `check_leq[a][b]` iff `S_i^v[a] ⊴^v S_i^v[b]`.
    check_leq: Vec<Vec<bool>>,
}

impl VertexTables {
    pub fn vertex(&self) -> usize {
        self.vertex
    }
}

/// AR quiver plus per-vertex poset tables.
#[derive(Clone, Debug)]
pub struct ModuleModel {
    ar: ArQuiver,
    special: bool,
    cospecial: bool,
    tables: Vec<VertexTables>,
}

fn antichains_of(ar: &ArQuiver, poset: &[IndecId]) -> Vec<Antichain> {
    fn extend(ar: &ArQuiver, poset: &[IndecId], start: usize, cur: &mut Vec<IndecId>, out: &mut Vec<Antichain>) {
        for k in start..poset.len() {
            let b = poset[k];
            if cur.iter().all(|&c| ar.hom(c, b) == 0 && ar.hom(b, c) == 0) {
                cur.push(b);
                out.push(Antichain { summands: cur.clone() });
                extend(ar, poset, k + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(ar, poset, 0, &mut Vec::new(), &mut out);
    out
}

impl ModuleModel {
    pub fn new(quiver: &Quiver) -> Result<Self> {
        Ok(ModuleModel::from_ar(ArQuiver::new(quiver)?))
    }

    pub fn from_ar(ar: ArQuiver) -> Self {
        let special = ar.is_special();
        let cospecial = ar.is_cospecial();
        let tables = ar.quiver().vertices().map(|i| Self::tables_for(&ar, i)).collect();
        ModuleModel { ar, special, cospecial, tables }
    }

    fn tables_for(ar: &ArQuiver, i: usize) -> VertexTables {
        let s = ar.simple(i);
        let poset: Vec<IndecId> = ar.ids().filter(|&b| ar.hom(b, s) != 0).collect();
        let poset_check: Vec<IndecId> = ar.ids().filter(|&b| ar.hom(s, b) != 0).collect();

        let plain: Vec<PlainEntry> = antichains_of(ar, &poset)
            .into_iter()
            .map(|v| {
                let hom_into = |b: IndecId| v.summands.iter().map(|&c| ar.hom(b, c)).sum::<i64>();
                let terms = poset
                    .iter()
                    .filter(|&&b| hom_into(b) != 0)
                    .map(|&b| (b, ar.tau_of(b)))
                    .collect();
                let outside: Vec<IndecId> = poset.iter().copied().filter(|&b| hom_into(b) == 0).collect();
                let removal = outside
                    .iter()
                    .copied()
                    .filter(|&b| outside.iter().all(|&c| c == b || ar.hom(c, b) == 0))
                    .filter_map(|b| ar.tau_of(b))
                    .collect();
                PlainEntry { antichain: v, terms, removal }
            })
            .collect();

        let check: Vec<CheckEntry> = antichains_of(ar, &poset_check)
            .into_iter()
            .map(|v| {
                let hom_from = |b: IndecId| v.summands.iter().map(|&c| ar.hom(c, b)).sum::<i64>();
                let terms = poset_check
                    .iter()
                    .filter(|&&b| hom_from(b) != 0)
                    .map(|&b| (b, ar.tau_inv_of(b)))
                    .collect();
                CheckEntry { antichain: v, terms }
            })
            .collect();

        // V ⊴ V' iff every summand of V maps nonzero into V'.
        let plain_leq = plain
            .iter()
            .map(|a| {
                plain
                    .iter()
                    .map(|b| {
                        a.antichain
                            .summands
                            .iter()
                            .all(|&x| b.antichain.summands.iter().map(|&y| ar.hom(x, y)).sum::<i64>() != 0)
                    })
                    .collect()
            })
            .collect();
        // V ⊴^v V' iff V maps nonzero into every summand of V'.
        let check_leq = check
            .iter()
            .map(|a| {
                check
                    .iter()
                    .map(|b| {
                        b.antichain
                            .summands
                            .iter()
                            .all(|&y| a.antichain.summands.iter().map(|&x| ar.hom(x, y)).sum::<i64>() != 0)
                    })
                    .collect()
            })
            .collect();

        VertexTables { vertex: i, poset, poset_check, plain, check, plain_leq, check_leq }
    }

    pub fn ar(&self) -> &ArQuiver {
        &self.ar
    }

    pub fn quiver(&self) -> &Quiver {
        self.ar.quiver()
    }

    pub fn rank(&self) -> usize {
        self.ar.rank()
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    pub fn is_cospecial(&self) -> bool {
        self.cospecial
    }

    pub(crate) fn require_special(&self) -> Result<()> {
        if self.special {
            Ok(())
        } else {
            Err(Error::NotSpecial)
        }
    }

    pub(crate) fn require_cospecial(&self) -> Result<()> {
        if self.cospecial {
            Ok(())
        } else {
            Err(Error::NotCospecial)
        }
    }

    pub fn tables(&self, i: usize) -> Result<&VertexTables> {
        if i == 0 || i > self.rank() {
            return Err(Error::UnknownVertex(i));
        }
        Ok(&self.tables[i - 1])
    }

    pub(crate) fn t(&self, i: usize) -> &VertexTables {
        &self.tables[i - 1]
    }

    pub(crate) fn check_len(&self, m: &ModClass) -> Result<()> {
        if m.len() != self.ar.len() {
            return Err(Error::InvalidModule("module belongs to a different quiver".into()));
        }
        Ok(())
    }

    pub fn poset(&self, i: usize, variant: Variant) -> Result<&[IndecId]> {
        let t = self.tables(i)?;
        Ok(match variant {
            Variant::Plain => &t.poset,
            Variant::Check => &t.poset_check,
        })
    }

    /// `n ⪯ m` iff `Hom(n, m) != 0`.
    pub fn poset_leq(&self, n: IndecId, m: IndecId) -> bool {
        self.ar.hom(n, m) != 0
    }

    pub fn antichains(&self, i: usize, variant: Variant) -> Result<Vec<Antichain>> {
        let t = self.tables(i)?;
        Ok(match variant {
            Variant::Plain => t.plain.iter().map(|e| e.antichain.clone()).collect(),
            Variant::Check => t.check.iter().map(|e| e.antichain.clone()).collect(),
        })
    }

    fn antichain_index(&self, i: usize, variant: Variant, v: &Antichain) -> Result<usize> {
        let t = self.tables(i)?;
        let found = match variant {
            Variant::Plain => t.plain.iter().position(|e| &e.antichain == v),
            Variant::Check => t.check.iter().position(|e| &e.antichain == v),
        };
        found.ok_or_else(|| Error::InvalidModule(format!("{:?} is not an antichain of the poset at {i}", v.summands)))
    }

    /// `v ⊴ w` (plain) or `v ⊴^v w` (check).
    pub fn antichain_leq(&self, i: usize, variant: Variant, v: &Antichain, w: &Antichain) -> Result<bool> {
        let a = self.antichain_index(i, variant, v)?;
        let b = self.antichain_index(i, variant, w)?;
        let t = self.t(i);
        Ok(match variant {
            Variant::Plain => t.plain_leq[a][b],
            Variant::Check => t.check_leq[a][b],
        })
    }

    #[inline]
    fn eval(terms: &Terms, m: &ModClass) -> i64 {
        terms.iter().map(|&(b, p)| i64::from(m.get(b)) - m.get_opt(p)).sum()
    }

    pub(crate) fn f_plain_at(&self, m: &ModClass, i: usize, idx: usize) -> i64 {
        Self::eval(&self.t(i).plain[idx].terms, m)
    }

    pub(crate) fn f_check_at(&self, m: &ModClass, i: usize, idx: usize) -> i64 {
        Self::eval(&self.t(i).check[idx].terms, m)
    }

    /// `F_i(M, V) = sum over B in P_i with B ⊴ V of mu_B(M) - mu_{tau B}(M)`.
    pub fn f_stat(&self, m: &ModClass, v: &Antichain, i: usize) -> Result<i64> {
        self.check_len(m)?;
        let idx = self.antichain_index(i, Variant::Plain, v)?;
        Ok(self.f_plain_at(m, i, idx))
    }

    /// `F_i^v(M, V) = sum over B in P_i^v with V ⊴^v B of mu_B(M) - mu_{tau^-1 B}(M)`.
    pub fn f_stat_check(&self, m: &ModClass, v: &Antichain, i: usize) -> Result<i64> {
        self.check_len(m)?;
        let idx = self.antichain_index(i, Variant::Check, v)?;
        Ok(self.f_check_at(m, i, idx))
    }

    /// Index of the unique ⊴-maximal maximiser of `F_i(M, -)` and the maximum.
    pub(crate) fn vm_index(&self, m: &ModClass, i: usize) -> Result<(usize, i64)> {
        let t = self.t(i);
        let values: Vec<i64> = (0..t.plain.len()).map(|k| self.f_plain_at(m, i, k)).collect();
        let top = *values.iter().max().expect("S_i is nonempty");
        let maximisers: Vec<usize> = (0..values.len()).filter(|&k| values[k] == top).collect();
        unique_maximal(&maximisers, &t.plain_leq).map(|k| (k, top)).ok_or_else(|| {
            Error::Internal(format!("F_{i} has no unique ⊴-maximal maximiser"))
        })
    }

    /// Index of the unique ⊴^v-maximal maximiser of `F_i^v(M, -)` and the maximum.
    pub(crate) fn wn_index(&self, m: &ModClass, i: usize) -> Result<(usize, i64)> {
        let t = self.t(i);
        let values: Vec<i64> = (0..t.check.len()).map(|k| self.f_check_at(m, i, k)).collect();
        let top = *values.iter().max().expect("S_i^v is nonempty");
        let maximisers: Vec<usize> = (0..values.len()).filter(|&k| values[k] == top).collect();
        unique_maximal(&maximisers, &t.check_leq).map(|k| (k, top)).ok_or_else(|| {
            Error::Internal(format!("F_{i}^v has no unique ⊴^v-maximal maximiser"))
        })
    }

    pub(crate) fn removal(&self, i: usize, idx: usize) -> &[IndecId] {
        &self.t(i).plain[idx].removal
    }

    pub(crate) fn plain_antichain(&self, i: usize, idx: usize) -> &Antichain {
        &self.t(i).plain[idx].antichain
    }

    pub(crate) fn plain_count(&self, i: usize) -> usize {
        self.t(i).plain.len()
    }

    /// `(V_M, U_M)`: the ⊴-maximal maximiser of `F_i(M, -)` and the direct sum of
    /// `tau B` over the minimal `B` in `P_i` with `B ⋬ V_M`.
    pub fn select_vm_um(&self, m: &ModClass, i: usize) -> Result<(Antichain, ModClass)> {
        self.require_special()?;
        self.tables(i)?;
        self.check_len(m)?;
        let (idx, _) = self.vm_index(m, i)?;
        let mut u = ModClass::zero(&self.ar);
        for &c in self.removal(i, idx) {
            u.add(c, 1);
        }
        if u.summands().any(|(c, k)| m.get(c) < k) {
            return Err(Error::Internal(format!("U_M is not a direct summand of {}", m.display(&self.ar))));
        }
        Ok((self.plain_antichain(i, idx).clone(), u))
    }

    /// `eps_i^*(M) = max over S_i^v of F_i^v(M, V)`, never below zero.
    pub fn eps_star(&self, m: &ModClass, i: usize) -> Result<i64> {
        self.tables(i)?;
        self.check_len(m)?;
        Ok(self.eps_star_unchecked(m, i))
    }

    pub(crate) fn eps_star_unchecked(&self, m: &ModClass, i: usize) -> i64 {
        let t = self.t(i);
        (0..t.check.len()).map(|k| self.f_check_at(m, i, k)).max().unwrap_or(0).max(0)
    }

    /// The vector `(eps_1^*(M), ..., eps_n^*(M))`.
    pub fn eps_star_vector(&self, m: &ModClass) -> Result<Vec<i64>> {
        self.check_len(m)?;
        Ok(self.quiver().vertices().map(|i| self.eps_star_unchecked(m, i)).collect())
    }

    /// `(W_N, E_N)`: `W_N` is the ⊴^v-maximal maximiser of `F_i^v(N, -)`, and
    /// `E_N = tau^{-1} B` for the maximal `B` in `P_i^v` with `W_N ⋬^v B`.
    /// `E_N` is `None` when no such `B` exists. Only the case where `W_N` is
    /// indecomposable and `B` is unique is supported.
    pub fn select_wn_en(&self, n: &ModClass, i: usize) -> Result<(IndecId, Option<IndecId>)> {
        self.tables(i)?;
        self.check_len(n)?;
        let t = self.t(i);
        let (idx, _) = self.wn_index(n, i)?;
        let w = &t.check[idx].antichain;
        let [w] = w.summands[..] else {
            return Err(Error::Unsupported(format!("W_N at vertex {i} is decomposable")));
        };
        let outside: Vec<IndecId> = t.poset_check.iter().copied().filter(|&b| self.ar.hom(w, b) == 0).collect();
        let maximal: Vec<IndecId> = outside
            .iter()
            .copied()
            .filter(|&b| outside.iter().all(|&c| c == b || self.ar.hom(b, c) == 0))
            .collect();
        match maximal[..] {
            [] => Ok((w, None)),
            [b] => Ok((w, self.ar.tau_inv_of(b))),
            _ => Err(Error::Unsupported(format!("E_N at vertex {i} is not determined by a unique B"))),
        }
    }
}

/// The unique element of `candidates` not strictly below another candidate.
fn unique_maximal(candidates: &[usize], leq: &[Vec<bool>]) -> Option<usize> {
    let maximal: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&a| candidates.iter().all(|&b| b == a || !leq[a][b]))
        .collect();
    match maximal[..] {
        [a] => Some(a),
        _ => None,
    }
}
