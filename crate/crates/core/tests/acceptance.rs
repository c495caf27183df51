//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use arcrystal::ar::ArQuiver;
use arcrystal::crystal::{generate_crystal, Len};
use arcrystal::modclass::ModClass;
use arcrystal::promotion::{ExtArray, Promoter, Rectangle};
use arcrystal::quiver::{Family, Quiver};
use arcrystal::reineke::{ModuleModel, Variant};
use arcrystal::tableaux::{module_to_tableau, tableau_crystal, Tableau};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The module of the worked rectangle example over standard `A_5`, `j = m = 3`.
fn example_module(ar: &ArQuiver) -> ModClass {
    intervals(ar, &[(1, 1, 1), (1, 3, 1), (2, 2, 1), (2, 3, 1), (2, 4, 1), (3, 3, 1), (3, 5, 2)])
}

fn ext(rows: [[u32; 4]; 3]) -> ExtArray {
    ExtArray { n: 5, j: 3, m: 3, mu: rows.iter().map(|r| r.to_vec()).collect() }
}

fn criterion_1() -> Outcome {
    let p = Promoter::new(Rectangle::new(5, 3, 3).map_err(err)?).map_err(err)?;
    let ar = p.model().ar();
    let m = example_module(ar);
    let (pr, trace) = p.promote_traced(&m).map_err(err)?;
    let ops: Vec<&str> = trace.iter().map(|s| s.op.as_str()).collect();
    ensure!(ops == ["ext", "sh_3", "T_2", "T_1", "sh_3", "T_2", "T_1"], "operator sequence {ops:?}");
    let expected = [
        (0, ext([[1, 1, 0, 1], [0, 1, 1, 1], [0, 1, 0, 2]])),
        (2, ext([[1, 1, 0, 1], [0, 1, 0, 1], [0, 2, 0, 1]])),
        (3, ext([[0, 1, 0, 1], [0, 1, 0, 1], [0, 2, 0, 1]])),
        (4, ext([[0, 1, 0, 1], [0, 1, 0, 1], [0, 2, 0, 0]])),
        (5, ext([[0, 1, 0, 1], [0, 1, 0, 0], [0, 2, 1, 0]])),
        (6, ext([[0, 1, 0, 0], [0, 1, 1, 0], [0, 2, 1, 0]])),
    ];
    for (k, want) in &expected {
        ensure!(trace[*k].state == *want, "after {} got\n{}expected\n{}", trace[*k].op, trace[*k].state, want);
    }
    let want = intervals(ar, &[(1, 2, 1), (2, 3, 1), (2, 4, 1), (3, 4, 2), (3, 5, 1)]);
    ensure!(pr == want, "pr(M) = {}", pr.display(ar));
    Ok("extended array, 5 intermediate arrays and pr(M) match".into())
}

fn criterion_2() -> Outcome {
    let rect = Rectangle::new(5, 3, 3).map_err(err)?;
    let p = Promoter::new(rect).map_err(err)?;
    let ar = p.model().ar();
    let m = example_module(ar);
    let t = module_to_tableau(ar, &m, rect).map_err(err)?;
    let want: Tableau = "1 2 4 / 3 4 5 / 4 6 6".parse().map_err(err)?;
    ensure!(t == want, "phi(M) =\n{t}");
    let promoted: Tableau = "1 1 3 / 2 4 5 / 5 5 6".parse().map_err(err)?;
    let tp = t.promote(rect).map_err(err)?;
    ensure!(tp == promoted, "pr(phi(M)) =\n{tp}");
    let via = module_to_tableau(ar, &p.promote(&m).map_err(err)?, rect).map_err(err)?;
    ensure!(via == promoted, "phi(pr(M)) =\n{via}");
    Ok("phi(M), pr(phi(M)) and phi(pr(M)) match".into())
}

fn dims(ar: &ArQuiver, ids: impl IntoIterator<Item = arcrystal::ar::IndecId>) -> BTreeSet<Vec<i64>> {
    ids.into_iter().map(|b| ar.dim(b).0.clone()).collect()
}

fn criterion_3() -> Outcome {
    // 3 -> 1, 3 -> 2, 4 -> 3
    let q = quiver(Family::D, 4, &[[3, 1], [3, 2], [4, 3]]);
    let model = ModuleModel::new(&q).map_err(err)?;
    let ar = model.ar();
    ensure!(model.is_special() && model.is_cospecial(), "quiver should be special and cospecial");
    let framed: BTreeSet<Vec<i64>> =
        [[1, 0, 0, 0], [1, 0, 1, 1], [1, 0, 1, 0], [1, 1, 1, 0], [1, 1, 2, 1], [1, 1, 1, 1]].iter().map(|d| d.to_vec()).collect();
    let poset = dims(ar, model.poset(1, Variant::Check).map_err(err)?.iter().copied());
    ensure!(poset == framed, "P_1^v = {poset:?}");
    let displayed: BTreeSet<BTreeSet<Vec<i64>>> = [
        vec![[1, 0, 0, 0]],
        vec![[1, 1, 1, 0]],
        vec![[1, 1, 1, 1]],
        vec![[1, 0, 1, 0]],
        vec![[1, 0, 1, 0], [1, 1, 1, 1]],
        vec![[1, 1, 2, 1]],
        vec![[1, 0, 1, 1]],
    ]
    .iter()
    .map(|v| v.iter().map(|d| d.to_vec()).collect())
    .collect();
    let antichains = model.antichains(1, Variant::Check).map_err(err)?;
    let computed: BTreeSet<BTreeSet<Vec<i64>>> = antichains.iter().map(|a| dims(ar, a.summands.iter().copied())).collect();
    ensure!(computed == displayed, "S_1^v = {computed:?}");
    let find = |ds: &[[i64; 4]]| {
        let set: BTreeSet<Vec<i64>> = ds.iter().map(|d| d.to_vec()).collect();
        antichains.iter().find(|a| dims(ar, a.summands.iter().copied()) == set).cloned().expect("displayed antichain")
    };
    let chains: [Vec<&[[i64; 4]]>; 2] = [
        vec![&[[1, 0, 0, 0]], &[[1, 1, 1, 0]], &[[1, 0, 1, 0], [1, 1, 1, 1]], &[[1, 0, 1, 0]], &[[1, 1, 2, 1]], &[[1, 0, 1, 1]]],
        vec![&[[1, 0, 0, 0]], &[[1, 1, 1, 0]], &[[1, 0, 1, 0], [1, 1, 1, 1]], &[[1, 1, 1, 1]], &[[1, 1, 2, 1]], &[[1, 0, 1, 1]]],
    ];
    for chain in &chains {
        for w in chain.windows(2) {
            let (a, b) = (find(w[0]), find(w[1]));
            ensure!(model.antichain_leq(1, Variant::Check, &a, &b).map_err(err)?, "{:?} is not below {:?}", w[0], w[1]);
        }
    }
    Ok(format!("P_1^v has the {} framed modules, S_1^v the {} displayed antichains, both chains hold", framed.len(), displayed.len()))
}

fn rectangles(max_n: usize, max_m: usize) -> Vec<Rectangle> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for j in 1..=n {
            for m in 1..=max_m {
                out.push(Rectangle::new(n, j, m).unwrap());
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for rect in rectangles(4, 3) {
        let q = Quiver::standard_a(rect.n).map_err(err)?;
        let model = ModuleModel::new(&q).map_err(err)?;
        let c = generate_crystal(&model, &rect.lambda(), 1_000_000).map_err(err)?;
        let t = tableau_crystal(rect, q.cartan_matrix()).map_err(err)?;
        let iso = c.graph.isomorphism(&t).map_err(err)?;
        ensure!(iso.is_some(), "{rect:?}: not isomorphic");
        // the isomorphism is the explicit bijection
        let map = iso.unwrap();
        let all = arcrystal::tableaux::enumerate_ssyt(rect);
        for (k, module) in c.modules.iter().enumerate() {
            ensure!(module_to_tableau(model.ar(), module, rect).map_err(err)? == all[map[k]], "{rect:?}: iso differs from phi");
        }
        count += 1;
    }
    Ok(format!("{count} rectangles isomorphic, isomorphism equals phi"))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        let model = ModuleModel::new(&Quiver::standard_a(n).map_err(err)?).map_err(err)?;
        for lambda in weights(n, 2) {
            let c = generate_crystal(&model, &lambda, 1_000_000).map_err(err)?;
            let want = weyl_dim(Family::A, n, &lambda);
            ensure!(c.len() as u128 == want, "A_{n} {lambda:?}: {} nodes, Weyl {want}", c.len());
            checked += 1;
        }
    }
    let q = quiver(Family::D, 4, &[[3, 1], [3, 2], [4, 3]]);
    let model = ModuleModel::new(&q).map_err(err)?;
    let mut sizes = Vec::new();
    for k in 1..=4 {
        let lambda: Vec<i64> = (1..=4).map(|i| i64::from(i == k)).collect();
        let c = generate_crystal(&model, &lambda, 1_000_000).map_err(err)?;
        let want = weyl_dim(Family::D, 4, &lambda);
        ensure!(c.len() as u128 == want, "D_4 {lambda:?}: {} nodes, Weyl {want}", c.len());
        sizes.push(c.len());
    }
    ensure!(sizes == [8, 8, 28, 8], "D_4 fundamental sizes {sizes:?}");
    Ok(format!("{checked} type-A weights; D_4 fundamentals {sizes:?} (trivalent vertex is 3)"))
}

fn criterion_6() -> Outcome {
    let mut elements = 0;
    for rect in rectangles(4, 3) {
        let p = Promoter::new(rect).map_err(err)?;
        let ar = p.model().ar();
        let c = generate_crystal(p.model(), &rect.lambda(), 1_000_000).map_err(err)?;
        for m in &c.modules {
            let pr = p.promote(m).map_err(err)?;
            let lhs = module_to_tableau(ar, &pr, rect).map_err(err)?;
            let rhs = module_to_tableau(ar, m, rect).map_err(err)?.promote(rect).map_err(err)?;
            ensure!(lhs == rhs, "{rect:?}: phi(pr M) != pr(phi M) at {}", m.display(ar));
            ensure!(p.promote_pow(&pr, rect.n).map_err(err)? == *m, "{rect:?}: pr^(n+1) != id at {}", m.display(ar));
            elements += 1;
        }
    }
    Ok(format!("{elements} elements: pr^(n+1) = id and phi commutes with promotion"))
}

fn criterion_7() -> Outcome {
    let mut elements = 0;
    for rect in rectangles(4, 3) {
        let p = Promoter::new(rect).map_err(err)?;
        let ar = p.model().ar();
        let kr = p.kr_graph(1_000_000).map_err(err)?;
        ensure!(kr.graph.is_connected(), "{rect:?}: KR graph is disconnected");
        let bad = kr.graph.check_axioms();
        ensure!(bad.is_empty(), "{rect:?}: {}", bad[0]);
        for (b, m) in kr.modules.iter().enumerate() {
            let f0 = p.affine_f0(m).map_err(err)?;
            let pr = p.promote(m).map_err(err)?;
            let k1 = rect.m as u32 - (1..=rect.n + 1 - rect.j).map(|s| m.get(ar.interval(1, s).unwrap())).sum::<u32>();
            let bound = m.get(ar.interval(rect.j, rect.n).unwrap()) + pr.get(ar.interval(1, 1).unwrap());
            ensure!(f0.is_some() == (k1 < bound), "{rect:?}: corollary fails at {}", m.display(ar));
            if let Some(t) = &f0 {
                ensure!(p.affine_e0(t).map_err(err)?.as_ref() == Some(m), "{rect:?}: e_0 f_0 != id at {}", m.display(ar));
                ensure!(kr.graph.f(b, 0) == kr.node_of(t), "{rect:?}: graph edge mismatch");
            }
            if let Some(s) = p.affine_e0(m).map_err(err)? {
                ensure!(p.affine_f0(&s).map_err(err)?.as_ref() == Some(m), "{rect:?}: f_0 e_0 != id at {}", m.display(ar));
            }
            ensure!(kr.graph.eps(b, 0) != Len::NegInf, "finite eps_0");
            elements += 1;
        }
    }
    let p = Promoter::new(Rectangle::new(5, 3, 3).map_err(err)?).map_err(err)?;
    ensure!(p.affine_f0(&example_module(p.model().ar())).map_err(err)?.is_some(), "f_0 undefined on the worked example");
    Ok(format!("{elements} elements: f_0 definedness matches the inequality, e_0 inverts f_0, KR graphs connected"))
}

fn special_orientations(family: Family, n: usize) -> Vec<Quiver> {
    orientations(family, n)
        .into_iter()
        .map(|a| quiver(family, n, &a))
        .filter(|q| {
            let ar = ArQuiver::new(q).unwrap();
            ar.is_special() && ar.is_cospecial()
        })
        .collect()
}

fn criterion_8() -> Outcome {
    // crystal axioms on generated graphs
    let mut graphs = 0;
    for (family, n, top) in [(Family::A, 1, 3), (Family::A, 2, 2), (Family::A, 3, 2), (Family::A, 4, 1), (Family::D, 4, 1)] {
        for q in special_orientations(family, n) {
            let model = ModuleModel::new(&q).map_err(err)?;
            for lambda in weights(n, top) {
                let c = generate_crystal(&model, &lambda, 1_000_000).map_err(err)?;
                let bad = c.graph.check_axioms();
                ensure!(bad.is_empty(), "{q} {lambda:?}: {}", bad[0]);
                graphs += 1;
            }
        }
    }
    // hom - ext = Euler form
    let mut pairs = 0;
    for (family, range) in [(Family::A, 1..=5), (Family::D, 4..=5)] {
        for n in range {
            for arrows in orientations(family, n) {
                let ar = ArQuiver::new(&quiver(family, n, &arrows)).map_err(err)?;
                for x in ar.ids() {
                    for y in ar.ids() {
                        let lhs = ar.hom_dim(x, y).map_err(err)? - ar.ext_dim(x, y).map_err(err)?;
                        ensure!(lhs == euler_form(&arrows, &ar.dim(x).0, &ar.dim(y).0), "Euler form fails on {family}_{n}");
                        pairs += 1;
                    }
                }
            }
        }
    }
    // F_i + F_i^v at S(i) and the starred-length lemma / proposition
    let mut modules = 0;
    for (family, n, top) in [(Family::A, 3, 2), (Family::D, 4, 1)] {
        for q in special_orientations(family, n) {
            let model = ModuleModel::new(&q).map_err(err)?;
            let ar = model.ar();
            for lambda in weights(n, top) {
                let c = generate_crystal(&model, &lambda, 1_000_000).map_err(err)?;
                for m in &c.modules {
                    let cm = q.cartan_apply(&m.dim(ar));
                    for i in 1..=n {
                        let s = arcrystal::reineke::Antichain::single(ar.simple(i));
                        let sum = model.f_stat(m, &s, i).map_err(err)? + model.f_stat_check(m, &s, i).map_err(err)?;
                        ensure!(sum == cm[i - 1], "{q}: F + F^v at S({i}) is {sum}, expected {}", cm[i - 1]);
                        check_lemma(&model, m, i)?;
                        let f = model.apply_f(m, i).map_err(err)?;
                        let overflow = (1..=n).any(|j| model.eps_star(&f, j).unwrap() > lambda[j - 1]);
                        let phi = model.phi(m, i, Some(&lambda)).map_err(err)?;
                        ensure!(overflow == (phi == 0), "{q} {lambda:?}: proposition fails at {}", m.display(ar));
                    }
                    modules += 1;
                }
            }
        }
    }
    Ok(format!("{graphs} graphs satisfy the axioms; {pairs} Euler pairs; {modules} modules pass the F-sum, lemma and proposition checks"))
}

/// Starred string lengths change under `f_j` only when `j = i`, `V_M = S(i)` and the maximum of `F_i^v` is reached at `S(i)`.
fn check_lemma(model: &ModuleModel, m: &ModClass, i: usize) -> Result<(), String> {
    let ar = model.ar();
    let n = model.rank();
    let s = arcrystal::reineke::Antichain::single(ar.simple(i));
    let (v, _) = model.select_vm_um(m, i).map_err(err)?;
    let max_check = model.antichains(i, Variant::Check).map_err(err)?.iter().map(|a| model.f_stat_check(m, a, i).unwrap()).max().unwrap();
    let bump = v == s && max_check == model.f_stat_check(m, &s, i).map_err(err)?;
    let f = model.apply_f(m, i).map_err(err)?;
    for j in 1..=n {
        let before = model.eps_star(m, j).map_err(err)?;
        let after = model.eps_star(&f, j).map_err(err)?;
        let want = before + i64::from(j == i && bump);
        ensure!(after == want, "lemma fails: eps*_{j}(f_{i} M) = {after}, expected {want} at {}", m.display(ar));
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let mut pairs = 0;
    for n in 1..=5 {
        for arrows in orientations(Family::A, n) {
            let ar = ArQuiver::new(&quiver(Family::A, n, &arrows)).map_err(err)?;
            for x in ar.ids() {
                for y in ar.ids() {
                    let (a, b) = support(&ar, x);
                    let (c, d) = support(&ar, y);
                    let want = hom_bruteforce(&arrows, &interval_rep(n, &arrows, a, b), &interval_rep(n, &arrows, c, d));
                    ensure!(ar.hom_dim(x, y).map_err(err)? == want, "A_{n} {arrows:?}: hom([{a},{b}], [{c},{d}])");
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs agree with explicit matrices"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("promotion trace on the worked example", criterion_1),
        ("tableau of the worked example and its promotion", criterion_2),
        ("D_4 posets, antichains and chains", criterion_3),
        ("module crystal isomorphic to tableau crystal", criterion_4),
        ("crystal sizes equal Weyl dimensions", criterion_5),
        ("promotion order and commutation", criterion_6),
        ("affine operators and KR graphs", criterion_7),
        ("property suites", criterion_8),
        ("hom dimensions against brute force", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({ms} ms)", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e} ({ms} ms)", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
