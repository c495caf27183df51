//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's AR or crystal code.

#![allow(dead_code)]

use arcrystal::ar::{ArQuiver, IndecId};
use arcrystal::modclass::ModClass;
use arcrystal::quiver::{Family, Quiver, QuiverSpec};

/// Edges of the Dynkin diagram, written out by hand.
pub fn diagram_edges(family: Family, n: usize) -> Vec<(usize, usize)> {
    match family {
        Family::A => (1..n).map(|k| (k, k + 1)).collect(),
        Family::D => {
            let mut e = vec![(1, 3), (2, 3)];
            e.extend((3..n).map(|k| (k, k + 1)));
            e
        }
    }
}

/// Every orientation of the diagram, as arrow lists.
pub fn orientations(family: Family, n: usize) -> Vec<Vec<[usize; 2]>> {
    let edges = diagram_edges(family, n);
    (0..1u32 << edges.len())
        .map(|mask| {
            edges
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| if mask >> k & 1 == 1 { [a, b] } else { [b, a] })
                .collect()
        })
        .collect()
}

pub fn quiver(family: Family, n: usize, arrows: &[[usize; 2]]) -> Quiver {
    Quiver::new(&QuiverSpec { family, rank: n, arrows: arrows.to_vec() }).unwrap()
}

/// Positive roots as nonzero solutions of the Tits form `q(c) = 1`.
pub fn positive_roots(family: Family, n: usize) -> Vec<Vec<i64>> {
    let edges = diagram_edges(family, n);
    let mut out = Vec::new();
    let mut c = vec![0i64; n];
    loop {
        let mut k = 0;
        while k < n && c[k] == 2 {
            c[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        c[k] += 1;
        let q: i64 = c.iter().map(|x| x * x).sum::<i64>() - edges.iter().map(|&(a, b)| c[a - 1] * c[b - 1]).sum::<i64>();
        if q == 1 {
            out.push(c.clone());
        }
    }
    out.sort();
    out
}

/// Weyl dimension formula for simply-laced types.
pub fn weyl_dim(family: Family, n: usize, lambda: &[i64]) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for root in positive_roots(family, n) {
        num *= root.iter().zip(lambda).map(|(c, l)| c * (l + 1)).sum::<i64>() as u128;
        den *= root.iter().sum::<i64>() as u128;
    }
    assert_eq!(num % den, 0);
    num / den
}

/// `<a, b> = sum_i a_i b_i - sum_{s -> t} a_s b_t`.
pub fn euler_form(arrows: &[[usize; 2]], a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>() - arrows.iter().map(|&[s, t]| a[s - 1] * b[t - 1]).sum::<i64>()
}

const P: i64 = 1_000_000_007;

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c].rem_euclid(P) != 0) else { continue };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c].rem_euclid(P), P - 2);
        for x in rows[rank].iter_mut() {
            *x = (*x).rem_euclid(P) * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c].rem_euclid(P) != 0 {
                let f = rows[r][c].rem_euclid(P);
                let pivot = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x - f * p).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// An explicit representation: dimensions per vertex and a matrix per arrow.
pub struct Rep {
    pub dims: Vec<usize>,
    /// `maps[k]` is `dims[t] x dims[s]` for arrow `k: s -> t`.
    pub maps: Vec<Vec<Vec<i64>>>,
}

/// The interval representation on `[a, b]` of a type-A quiver: `k` on the interval, identities inside.
pub fn interval_rep(n: usize, arrows: &[[usize; 2]], a: usize, b: usize) -> Rep {
    let inside = |v: usize| a <= v && v <= b;
    let dims = (1..=n).map(|v| usize::from(inside(v))).collect::<Vec<_>>();
    let maps = arrows
        .iter()
        .map(|&[s, t]| {
            let (ds, dt) = (dims[s - 1], dims[t - 1]);
            (0..dt).map(|_| (0..ds).map(|_| 1).collect()).collect()
        })
        .collect();
    Rep { dims, maps }
}

/// `dim Hom(M, N)` by solving `N_a X_s = X_t M_a` for every arrow.
pub fn hom_bruteforce(arrows: &[[usize; 2]], m: &Rep, n: &Rep) -> i64 {
    let mut offset = Vec::new();
    let mut unknowns = 0;
    for v in 0..m.dims.len() {
        offset.push(unknowns);
        unknowns += m.dims[v] * n.dims[v];
    }
    // X_v[p][q] for p < dim N_v, q < dim M_v
    let var = |v: usize, p: usize, q: usize| offset[v] + p * m.dims[v] + q;
    let mut rows = Vec::new();
    for (k, &[s, t]) in arrows.iter().enumerate() {
        let (s, t) = (s - 1, t - 1);
        for p in 0..n.dims[t] {
            for q in 0..m.dims[s] {
                let mut row = vec![0i64; unknowns];
                for x in 0..n.dims[s] {
                    row[var(s, x, q)] += n.maps[k][p][x];
                }
                for y in 0..m.dims[t] {
                    row[var(t, p, y)] -= m.maps[k][y][q];
                }
                rows.push(row);
            }
        }
    }
    if unknowns == 0 {
        return 0;
    }
    (unknowns - rank_mod_p(rows)) as i64
}

/// Support interval of a type-A indecomposable.
pub fn support(ar: &ArQuiver, id: IndecId) -> (usize, usize) {
    let d = &ar.dim(id).0;
    let a = d.iter().position(|&x| x != 0).unwrap() + 1;
    let b = d.iter().rposition(|&x| x != 0).unwrap() + 1;
    (a, b)
}

/// Module over standard `A_n` from `(r, s, multiplicity)` triples of interval modules.
pub fn intervals(ar: &ArQuiver, entries: &[(usize, usize, u32)]) -> ModClass {
    let mut m = ModClass::zero(ar);
    for &(r, s, k) in entries {
        m.add(ar.interval(r, s).unwrap(), k);
    }
    m
}

/// All weights with pairings in `0..=top`.
pub fn weights(n: usize, top: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w: Vec<i64>| (0..=top).map(move |x| { let mut w = w.clone(); w.push(x); w })).collect();
    }
    out
}
