//! Rectangular semistandard tableaux: the bijection with modules of
//! `B(m ϖ_j)` for the standard `A_n` quiver, promotion, and the
//! signature-rule crystal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ar::ArQuiver;
use crate::crystal::{CrystalGraph, Len};
use crate::error::{Error, Result};
use crate::modclass::ModClass;

/// A `j x m` rectangle filled from `{1, ..., n + 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rectangle {
    pub n: usize,
    pub j: usize,
    pub m: usize,
}

impl Rectangle {
    pub fn new(n: usize, j: usize, m: usize) -> Result<Self> {
        if n == 0 || j == 0 || j > n {
            return Err(Error::InvalidModule(format!("no rectangle with n = {n}, j = {j}")));
        }
        Ok(Rectangle { n, j, m })
    }

    /// The dominant weight `m ϖ_j`.
    pub fn lambda(&self) -> Vec<i64> {
        (1..=self.n).map(|k| if k == self.j { self.m as i64 } else { 0 }).collect()
    }

    /// Largest letter allowed in row `r` (1-based).
    fn row_max(&self, r: usize) -> usize {
        self.n + 1 - self.j + r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau {
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Validate shape and semistandardness against `rect`.
    pub fn new(rows: Vec<Vec<usize>>, rect: Rectangle) -> Result<Self> {
        let t = Tableau { rows };
        t.validate(rect)?;
        Ok(t)
    }

    pub fn validate(&self, rect: Rectangle) -> Result<()> {
        let bad = |msg: String| Err(Error::Parse(msg));
        if self.rows.len() != rect.j || self.rows.iter().any(|r| r.len() != rect.m) {
            return bad(format!("tableau is not a {} x {} rectangle", rect.j, rect.m));
        }
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x == 0 || x > rect.n + 1 {
                    return bad(format!("entry {x} outside 1..={}", rect.n + 1));
                }
                if c > 0 && row[c - 1] > x {
                    return bad(format!("row {} decreases", r + 1));
                }
                if r > 0 && self.rows[r - 1][c] >= x {
                    return bad(format!("column {} is not strictly increasing", c + 1));
                }
            }
        }
        Ok(())
    }

    /// The tableau whose row `r` is all `r`: highest weight of `B(m ϖ_j)`.
    pub fn highest(rect: Rectangle) -> Self {
        Tableau { rows: (1..=rect.j).map(|r| vec![r; rect.m]).collect() }
    }

    /// Underlying word read row by row from the bottom, each row left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    fn with_reading_word(&self, word: &[usize]) -> Tableau {
        let m = self.rows.first().map_or(0, Vec::len);
        let mut rows: Vec<Vec<usize>> = word.chunks(m.max(1)).map(<[usize]>::to_vec).collect();
        rows.reverse();
        Tableau { rows }
    }

    /// Weight pairings: `#i - #(i+1)` for `i = 1..=n`.
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut count = vec![0i64; n + 2];
        for &x in self.rows.iter().flatten() {
            count[x] += 1;
        }
        (1..=n).map(|i| count[i] - count[i + 1]).collect()
    }

    /// Positions in the reading word of the unbracketed `i` and `i+1` letters
    /// after cancelling each `i+1` against a later `i`.
    fn signature(word: &[usize], i: usize) -> (Vec<usize>, Vec<usize>) {
        let mut open: Vec<usize> = Vec::new();
        let mut free_lower = Vec::new();
        for (p, &x) in word.iter().enumerate() {
            if x == i + 1 {
                open.push(p);
            } else if x == i && open.pop().is_none() {
                free_lower.push(p);
            }
        }
        (free_lower, open)
    }

    pub fn eps(&self, i: usize) -> i64 {
        Self::signature(&self.reading_word(), i).1.len() as i64
    }

    pub fn phi(&self, i: usize) -> i64 {
        Self::signature(&self.reading_word(), i).0.len() as i64
    }

    /// Signature rule: the rightmost free `i` becomes `i + 1`.
    pub fn f(&self, i: usize) -> Option<Tableau> {
        let mut word = self.reading_word();
        let (lower, _) = Self::signature(&word, i);
        let p = *lower.last()?;
        word[p] = i + 1;
        Some(self.with_reading_word(&word))
    }

    /// Signature rule: the leftmost free `i + 1` becomes `i`.
    pub fn e(&self, i: usize) -> Option<Tableau> {
        let mut word = self.reading_word();
        let (_, upper) = Self::signature(&word, i);
        let p = *upper.first()?;
        word[p] = i;
        Some(self.with_reading_word(&word))
    }

    /// Schützenberger promotion on the alphabet `{1, ..., n + 1}`: delete
    /// the letters `n + 1`, slide the holes to the north-west corner, add one
    /// to every entry and fill the holes with `1`.
    pub fn promote(&self, rect: Rectangle) -> Result<Tableau> {
        self.validate(rect)?;
        let top = rect.n + 1;
        let mut cells: Vec<Vec<Option<usize>>> =
            self.rows.iter().map(|r| r.iter().map(|&x| (x != top).then_some(x)).collect()).collect();
        let mut holes: Vec<(usize, usize)> = Vec::new();
        for (r, row) in cells.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if x.is_none() {
                    holes.push((r, c));
                }
            }
        }
        holes.sort_by_key(|&(r, c)| (c, std::cmp::Reverse(r)));
        for (mut r, mut c) in holes {
            loop {
                let above = if r > 0 { cells[r - 1][c] } else { None };
                let left = if c > 0 { cells[r][c - 1] } else { None };
                let (nr, nc) = match (above, left) {
                    (None, None) => break,
                    (Some(a), Some(l)) if a >= l => (r - 1, c),
                    (Some(_), None) => (r - 1, c),
                    _ => (r, c - 1),
                };
                cells[r][c] = cells[nr][nc].take();
                r = nr;
                c = nc;
            }
        }
        let rows = cells.into_iter().map(|row| row.into_iter().map(|x| x.map_or(1, |v| v + 1)).collect()).collect();
        Tableau::new(rows, rect)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Parses `"1 2 4 / 3 4 5 / 4 6 6"` (rows separated by `/`, `;` or newlines).
impl FromStr for Tableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(['/', ';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.split([' ', ',', '\t'])
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<usize>().map_err(|e| Error::Parse(format!("bad entry {x:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tableau { rows })
    }
}

fn require_standard(ar: &ArQuiver, rect: Rectangle) -> Result<()> {
    if !ar.quiver().is_standard_a() || ar.rank() != rect.n {
        return Err(Error::Unsupported(format!("tableaux need the standard A_{} quiver", rect.n)));
    }
    Ok(())
}

/// Row `r` gets `m - sum_s mu_{r,s}` copies of `r` followed by
/// `mu_{r,s}` copies of `s + 1` for `s = r, ..., n - j + r`.
pub fn module_to_tableau(ar: &ArQuiver, module: &ModClass, rect: Rectangle) -> Result<Tableau> {
    require_standard(ar, rect)?;
    let mut used = module.clone();
    let mut rows = Vec::with_capacity(rect.j);
    for r in 1..=rect.j {
        let mut tail = Vec::new();
        for s in r..rect.row_max(r) {
            let id = ar.interval(r, s).ok_or_else(|| Error::Internal(format!("missing M({r},{s})")))?;
            let k = used.get(id);
            used.set(id, 0);
            tail.extend(std::iter::repeat_n(s + 1, k as usize));
        }
        if tail.len() > rect.m {
            return Err(Error::NotInCrystal(format!("row {r} needs {} boxes", tail.len())));
        }
        let mut row = vec![r; rect.m - tail.len()];
        row.extend(tail);
        rows.push(row);
    }
    if !used.is_zero() {
        return Err(Error::NotInCrystal(format!(
            "{} has summands outside the rows of a {}-row tableau",
            module.display(ar),
            rect.j
        )));
    }
    Tableau::new(rows, rect).map_err(|e| Error::NotInCrystal(e.to_string()))
}

/// Inverse of [`module_to_tableau`].
pub fn tableau_to_module(ar: &ArQuiver, t: &Tableau, rect: Rectangle) -> Result<ModClass> {
    require_standard(ar, rect)?;
    t.validate(rect)?;
    let mut m = ModClass::zero(ar);
    for (k, row) in t.rows.iter().enumerate() {
        let r = k + 1;
        for &x in row {
            if x < r {
                return Err(Error::Parse(format!("entry {x} in row {r}")));
            }
            if x > r {
                let id = ar.interval(r, x - 1).ok_or_else(|| Error::Internal(format!("missing M({r},{})", x - 1)))?;
                m.add(id, 1);
            }
        }
    }
    Ok(m)
}

/// All semistandard fillings of `rect`, in lexicographic order of rows.
pub fn enumerate_ssyt(rect: Rectangle) -> Vec<Tableau> {
    fn fill(rect: Rectangle, cells: &mut Vec<Vec<usize>>, pos: usize, out: &mut Vec<Tableau>) {
        if pos == rect.j * rect.m {
            out.push(Tableau { rows: cells.clone() });
            return;
        }
        let (r, c) = (pos / rect.m, pos % rect.m);
        let lo = [if c > 0 { cells[r][c - 1] } else { 1 }, if r > 0 { cells[r - 1][c] + 1 } else { 1 }]
            .into_iter()
            .max()
            .unwrap_or(1);
        for x in lo..=rect.row_max(r + 1) {
            cells[r][c] = x;
            fill(rect, cells, pos + 1, out);
        }
    }
    let mut out = Vec::new();
    let mut cells = vec![vec![0; rect.m]; rect.j];
    fill(rect, &mut cells, 0, &mut out);
    out
}

/// The signature-rule crystal on the tableaux of `rect`, in [`enumerate_ssyt`] order.
pub fn tableau_crystal(rect: Rectangle, cartan: Vec<Vec<i64>>) -> Result<CrystalGraph> {
    let all = enumerate_ssyt(rect);
    let index: std::collections::HashMap<&Tableau, usize> = all.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut g = CrystalGraph::new(cartan, true);
    for t in &all {
        let eps = (1..=rect.n).map(|i| Len::Fin(t.eps(i))).collect();
        let phi = (1..=rect.n).map(|i| Len::Fin(t.phi(i))).collect();
        g.add_node(t.reading_word().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""), t.weight(rect.n), eps, phi)?;
    }
    for (k, t) in all.iter().enumerate() {
        for i in 1..=rect.n {
            if let Some(u) = t.f(i) {
                let dst = *index.get(&u).ok_or_else(|| Error::Internal(format!("f_{i} leaves the tableaux of {rect:?}")))?;
                g.add_edge(k, i, dst)?;
            }
        }
    }
    Ok(g)
}
