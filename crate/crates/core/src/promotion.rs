//! Promotion on `B(m ϖ_j)` for the standard `A_n` quiver via extended arrays
//! over `A_{n+1}`, and the Kirillov-Reshetikhin structure it induces.

use std::fmt;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::crystal::{generate_crystal, Len, ModuleCrystal};
use crate::error::{Error, Result};
use crate::modclass::ModClass;
use crate::quiver::Quiver;
use crate::reineke::ModuleModel;
pub use crate::tableaux::Rectangle;

/// `mu[r-1][s-r]` is the multiplicity of `M(r, s)` over `A_{n+1}`, for
/// `1 <= r <= j` and `r <= s <= n + 1 - j + r`; the diagonal holds `k_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtArray {
    pub n: usize,
    pub j: usize,
    pub m: usize,
    pub mu: Vec<Vec<u32>>,
}

impl ExtArray {
    pub fn zeroed(rect: Rectangle) -> Self {
        ExtArray { n: rect.n, j: rect.j, m: rect.m, mu: vec![vec![0; rect.n + 2 - rect.j]; rect.j] }
    }

    pub fn rect(&self) -> Rectangle {
        Rectangle { n: self.n, j: self.j, m: self.m }
    }

    fn in_strip(&self, r: usize, s: usize) -> bool {
        (1..=self.j).contains(&r) && s >= r && s <= self.n + 1 - self.j + r
    }

    pub fn get(&self, r: usize, s: usize) -> u32 {
        if self.in_strip(r, s) {
            self.mu[r - 1][s - r]
        } else {
            0
        }
    }

    pub fn set(&mut self, r: usize, s: usize, k: u32) -> Result<()> {
        if !self.in_strip(r, s) {
            return Err(Error::InvalidModule(format!("M({r},{s}) lies outside the strip")));
        }
        self.mu[r - 1][s - r] = k;
        Ok(())
    }

    /// Shape checks; with `strict` also every row sums to `m`.
    pub fn validate(&self, strict: bool) -> Result<()> {
        Rectangle::new(self.n, self.j, self.m)?;
        if self.mu.len() != self.j || self.mu.iter().any(|row| row.len() != self.n + 2 - self.j) {
            return Err(Error::Parse("extended array has the wrong shape".into()));
        }
        if strict {
            for (k, row) in self.mu.iter().enumerate() {
                let sum: u32 = row.iter().sum();
                if sum as usize != self.m {
                    return Err(Error::NotInCrystal(format!("row {} sums to {sum}, not {}", k + 1, self.m)));
                }
            }
        }
        Ok(())
    }
}

/// Rows bottom-up as in the AR quiver: line `t` (from the top) lists
/// `mu_{r, r + d}` for `d = n + 1 - j - t`.
impl fmt::Display for ExtArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let depth = self.n + 1 - self.j;
        for d in (0..=depth).rev() {
            let line: Vec<String> = (1..=self.j).map(|r| self.get(r, r + d).to_string()).collect();
            writeln!(f, "{}{}", "  ".repeat(depth - d), line.join("   "))?;
        }
        Ok(())
    }
}

/// One step of a promotion trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// `"sh_j"` or `"T_i"`.
    pub op: String,
    pub state: ExtArray,
}

/// Standard-orientation models of `A_n` and `A_{n+1}` for one rectangle.
#[derive(Clone, Debug)]
pub struct Promoter {
    rect: Rectangle,
    lambda: Vec<i64>,
    small: ModuleModel,
    big: ModuleModel,
}

impl Promoter {
    pub fn new(rect: Rectangle) -> Result<Self> {
        let rect = Rectangle::new(rect.n, rect.j, rect.m)?;
        Ok(Promoter {
            rect,
            lambda: rect.lambda(),
            small: ModuleModel::new(&Quiver::standard_a(rect.n)?)?,
            big: ModuleModel::new(&Quiver::standard_a(rect.n + 1)?)?,
        })
    }

    /// As [`Promoter::new`], rejecting anything but the standard `A_n` quiver.
    pub fn for_quiver(q: &Quiver, rect: Rectangle) -> Result<Self> {
        if !q.is_standard_a() || q.rank() != rect.n {
            return Err(Error::Unsupported(format!("promotion needs the standard A_{} orientation, got {q}", rect.n)));
        }
        Promoter::new(rect)
    }

    pub fn rect(&self) -> Rectangle {
        self.rect
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    /// The `A_n` model.
    pub fn model(&self) -> &ModuleModel {
        &self.small
    }

    /// Whether `m` lies in `B(m ϖ_j)`.
    pub fn contains(&self, m: &ModClass) -> Result<bool> {
        self.small.in_highest_weight_crystal(m, &self.lambda)
    }

    fn require_member(&self, m: &ModClass) -> Result<()> {
        if !self.contains(m)? {
            return Err(Error::NotInCrystal(m.display(self.small.ar()).to_string()));
        }
        Ok(())
    }

    pub fn to_ext_array(&self, module: &ModClass) -> Result<ExtArray> {
        let ar = self.small.ar();
        let Rectangle { n, j, m } = self.rect;
        let mut ext = ExtArray::zeroed(self.rect);
        let mut rest = module.clone();
        for r in 1..=j {
            let mut row_sum = 0usize;
            for s in r..=n - j + r {
                let id = ar.interval(r, s).ok_or_else(|| Error::Internal(format!("missing M({r},{s})")))?;
                let k = rest.get(id);
                rest.set(id, 0);
                row_sum += k as usize;
                ext.set(r, s + 1, k)?;
            }
            if row_sum > m {
                return Err(Error::NotInCrystal(format!("k_{r} would be negative")));
            }
            ext.set(r, r, (m - row_sum) as u32)?;
        }
        if !rest.is_zero() {
            return Err(Error::NotInCrystal(format!("{} has support outside the strip", module.display(ar))));
        }
        Ok(ext)
    }

    /// Inverse of [`Promoter::to_ext_array`]; the diagonal is not read back.
    pub fn from_ext_array(&self, ext: &ExtArray) -> Result<ModClass> {
        self.check_rect(ext)?;
        ext.validate(true)?;
        self.read_back(ext, 1)
    }

    /// Module over `A_n` with `mu_{r,s} = ext(r, s + offset)` on the strip.
    fn read_back(&self, ext: &ExtArray, offset: usize) -> Result<ModClass> {
        let ar = self.small.ar();
        let mut out = ModClass::zero(ar);
        for r in 1..=ext.j {
            for s in r..=ext.n - ext.j + r {
                let id = ar.interval(r, s).ok_or_else(|| Error::Internal(format!("missing M({r},{s})")))?;
                out.set(id, ext.get(r, s + offset));
            }
        }
        Ok(out)
    }

    fn check_rect(&self, ext: &ExtArray) -> Result<()> {
        if ext.rect() != self.rect {
            return Err(Error::InvalidModule(format!("array for {:?}, expected {:?}", ext.rect(), self.rect)));
        }
        ext.validate(false)
    }

    fn as_big(&self, ext: &ExtArray) -> Result<ModClass> {
        let ar = self.big.ar();
        let mut out = ModClass::zero(ar);
        for r in 1..=ext.j {
            for s in r..=ext.n + 1 - ext.j + r {
                let id = ar.interval(r, s).ok_or_else(|| Error::Internal(format!("missing M({r},{s})")))?;
                out.set(id, ext.get(r, s));
            }
        }
        Ok(out)
    }

    /// `T_i`: move one copy of `W_N = M(i, s_0)` to `E_N = M(i + 1, s_0)`,
    /// or just remove it when `s_0 = i`.
    pub fn apply_t(&self, i: usize, state: &ExtArray) -> Result<ExtArray> {
        self.check_rect(state)?;
        if i == 0 || i >= self.rect.j {
            return Err(Error::InvalidModule(format!("T_{i} needs 1 <= i < {}", self.rect.j)));
        }
        let module = self.as_big(state)?;
        let (w, e) = self.big.select_wn_en(&module, i)?;
        if module.get(w) == 0 {
            return Ok(state.clone());
        }
        let ar = self.big.ar();
        let locate = |id| -> Result<(usize, usize)> {
            let d = &ar.dim(id).0;
            let r = d.iter().position(|&x| x != 0).ok_or_else(|| Error::Internal("zero root".into()))? + 1;
            Ok((r, r + d.iter().filter(|&&x| x != 0).count() - 1))
        };
        let mut out = state.clone();
        let (wr, ws) = locate(w)?;
        out.set(wr, ws, state.get(wr, ws) - 1)?;
        match e {
            Some(e) => {
                let (er, es) = locate(e)?;
                out.set(er, es, out.get(er, es) + 1)?;
            }
            None => {
                if i + 1 < self.rect.j {
                    debug!("T_{i} removed M({wr},{ws}) without a replacement on an inner row");
                }
            }
        }
        Ok(out)
    }

    /// `sh_j`: remove one copy of `M(j, n + 1)` if present.
    pub fn apply_sh(&self, state: &ExtArray) -> Result<ExtArray> {
        self.check_rect(state)?;
        let (j, top) = (self.rect.j, self.rect.n + 1);
        let mut out = state.clone();
        let k = state.get(j, top);
        if k > 0 {
            out.set(j, top, k - 1)?;
        }
        Ok(out)
    }

    /// `pr(M)` together with the extended array after every single operator.
    pub fn promote_traced(&self, module: &ModClass) -> Result<(ModClass, Vec<TraceStep>)> {
        self.require_member(module)?;
        let mut state = self.to_ext_array(module)?;
        let rounds = state.get(self.rect.j, self.rect.n + 1);
        let mut trace = vec![TraceStep { op: "ext".into(), state: state.clone() }];
        for _ in 0..rounds {
            state = self.apply_sh(&state)?;
            trace.push(TraceStep { op: format!("sh_{}", self.rect.j), state: state.clone() });
            for i in (1..self.rect.j).rev() {
                state = self.apply_t(i, &state)?;
                trace.push(TraceStep { op: format!("T_{i}"), state: state.clone() });
            }
        }
        Ok((self.read_back(&state, 0)?, trace))
    }

    pub fn promote(&self, module: &ModClass) -> Result<ModClass> {
        self.promote_traced(module).map(|(m, _)| m)
    }

    /// `pr^k(M)`.
    pub fn promote_pow(&self, module: &ModClass, k: usize) -> Result<ModClass> {
        let mut cur = module.clone();
        for _ in 0..k {
            cur = self.promote(&cur)?;
        }
        Ok(cur)
    }

    /// `f_0 = pr^n ∘ f_1 ∘ pr` on `B(m ϖ_j)`.
    pub fn affine_f0(&self, module: &ModClass) -> Result<Option<ModClass>> {
        let p = self.promote(module)?;
        match self.small.apply_f_lambda(&p, 1, &self.lambda)? {
            Some(q) => self.promote_pow(&q, self.rect.n).map(Some),
            None => Ok(None),
        }
    }

    /// `e_0 = pr^n ∘ e_1 ∘ pr` on `B(m ϖ_j)`.
    pub fn affine_e0(&self, module: &ModClass) -> Result<Option<ModClass>> {
        let p = self.promote(module)?;
        match self.small.apply_e_lambda(&p, 1, &self.lambda)? {
            Some(q) => self.promote_pow(&q, self.rect.n).map(Some),
            None => Ok(None),
        }
    }

    /// `B(m ϖ_j)` with colours `0..=n`.
    pub fn kr_graph(&self, max_nodes: usize) -> Result<ModuleCrystal> {
        let classical = generate_crystal(&self.small, &self.lambda, max_nodes)?;
        let mut eps0 = Vec::with_capacity(classical.len());
        let mut phi0 = Vec::with_capacity(classical.len());
        let mut zero_edges = Vec::new();
        for (b, module) in classical.modules.iter().enumerate() {
            let p = self.promote(module)?;
            let e = self.small.eps(&p, 1)?;
            eps0.push(Len::Fin(e));
            phi0.push(Len::Fin(e + self.small.weight(&p, Some(&self.lambda))?[0]));
            if let Some(t) = self.affine_f0(module)? {
                let dst = classical.node_of(&t).ok_or_else(|| Error::Internal("f_0 left the crystal".into()))?;
                zero_edges.push((b, dst));
            }
        }
        let mut graph = classical.graph.with_zero_color(&eps0, &phi0)?;
        for (s, t) in zero_edges {
            graph.add_edge(s, 0, t)?;
        }
        classical.with_graph(graph)
    }
}
