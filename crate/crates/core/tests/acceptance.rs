//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.
//!
//! Every check that can be decided independently is compared against the
//! oracles below, which use nothing from the library beyond reading vertex
//! and edge lists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use diho::brown::{audit_additivity, base_step, inductive_step, RepresentableFunctor, StageState};
use diho::census::{digraphs_up_to_iso, from_mask};
use diho::constructions::{
    box_product, cone, disjoint_union, gat, mapping_cylinder, paper_cofiber, tensor_product, tube_union, GatGlue,
};
use diho::format::{map_pairs, write_homotopy};
use diho::homotopy::{
    are_equivalent, are_homotopic, check_hep, cofiber_nullhomotopy, enumerate_maps, homotopy_classes,
    is_contractible, tube_homotopy, HepInstance, HepOptions, Homotopy,
};
use diho::limits::{
    closure_category, inverse_limit, is_cofinal, restriction_check, sequence_limit_nonempty, FiniteSystem,
};
use diho::{Budget, Digraph, DigraphMap, LineDigraph, Orientation, VertexLabel};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Brute-force reference implementations.
mod oracle {
    use super::*;

    /// A digraph as a vertex list and an adjacency matrix.
    pub struct Dense {
        pub labels: Vec<VertexLabel>,
        pub adj: Vec<Vec<bool>>,
    }

    impl Dense {
        pub fn new(g: &Digraph) -> Dense {
            let labels: Vec<VertexLabel> = g.vertices().cloned().collect();
            let n = labels.len();
            let mut adj = vec![vec![false; n]; n];
            for (x, y) in g.edges() {
                adj[pos(&labels, x)][pos(&labels, y)] = true;
            }
            Dense { labels, adj }
        }

        pub fn len(&self) -> usize {
            self.labels.len()
        }

        /// `x = y` or `x -> y`.
        pub fn le(&self, x: usize, y: usize) -> bool {
            x == y || self.adj[x][y]
        }
    }

    fn pos(labels: &[VertexLabel], v: &VertexLabel) -> usize {
        labels.iter().position(|w| w == v).expect("vertex present")
    }

    /// Every vertex function, kept when each arc goes to an arc or a vertex.
    pub fn all_maps(g: &Dense, h: &Dense) -> Vec<Vec<usize>> {
        let (n, m) = (g.len(), h.len());
        let mut out = Vec::new();
        if m == 0 {
            if n == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        let mut f = vec![0; n];
        loop {
            let ok = (0..n).all(|x| (0..n).all(|y| !g.adj[x][y] || h.le(f[x], f[y])));
            if ok {
                out.push(f.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                f[k] += 1;
                if f[k] < m {
                    break;
                }
                f[k] = 0;
                k += 1;
            }
        }
    }

    /// `f -> g` one step forward.
    pub fn step(h: &Dense, f: &[usize], g: &[usize]) -> bool {
        f.iter().zip(g).all(|(&a, &b)| h.le(a, b))
    }

    /// Component index of every map, by iterating reachability along words
    /// of growing length until nothing changes or the length reaches the
    /// number of maps.
    pub fn components(h: &Dense, maps: &[Vec<usize>]) -> Vec<usize> {
        let n = maps.len();
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in 0..n {
                if step(h, &maps[i], &maps[j]) || step(h, &maps[j], &maps[i]) {
                    adj[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        let mut reach: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut r = vec![0u64; words];
                r[i / 64] |= 1 << (i % 64);
                r
            })
            .collect();
        for _ in 0..n {
            let mut changed = false;
            let next: Vec<Vec<u64>> = (0..n)
                .map(|i| {
                    let mut r = reach[i].clone();
                    for j in 0..n {
                        if reach[i][j / 64] >> (j % 64) & 1 == 1 {
                            for (w, a) in r.iter_mut().zip(&adj[j]) {
                                *w |= a;
                            }
                        }
                    }
                    changed |= r != reach[i];
                    r
                })
                .collect();
            reach = next;
            if !changed {
                break;
            }
        }
        (0..n)
            .map(|i| (0..n).find(|&j| reach[i][j / 64] >> (j % 64) & 1 == 1).expect("reaches itself"))
            .collect()
    }

    pub fn indices(m: &DigraphMap, g: &Dense, h: &Dense) -> Vec<usize> {
        g.labels.iter().map(|v| pos(&h.labels, m.image(v).expect("total"))).collect()
    }

    pub fn to_map(f: &[usize], dom: &Arc<Digraph>, cod: &Arc<Digraph>, g: &Dense, h: &Dense) -> DigraphMap {
        let pairs = g.labels.iter().cloned().zip(f.iter().map(|&i| h.labels[i].clone()));
        DigraphMap::from_pairs(dom.clone(), cod.clone(), pairs).expect("labels exist")
    }

    /// Checks each step of a certificate directly.
    pub fn replays(h: &Homotopy) -> bool {
        let g = Dense::new(h.start().domain());
        let t = Dense::new(h.start().codomain());
        let maps: Vec<Vec<usize>> = h.maps().iter().map(|m| indices(m, &g, &t)).collect();
        let valid = |f: &Vec<usize>| (0..g.len()).all(|x| (0..g.len()).all(|y| !g.adj[x][y] || t.le(f[x], f[y])));
        maps.iter().all(valid)
            && h.word().iter().zip(maps.windows(2)).all(|(o, w)| match o {
                Orientation::Plus => step(&t, &w[0], &w[1]),
                Orientation::Minus => step(&t, &w[1], &w[0]),
            })
    }

    /// Number of compatible families of a finite system, by trying every
    /// element of the product.
    pub fn limit_size(s: &FiniteSystem) -> usize {
        let sizes: Vec<usize> = s.objects().iter().map(|o| o.tokens.len()).collect();
        if sizes.contains(&0) {
            return 0;
        }
        let mut x = vec![0; sizes.len()];
        let mut count = 0;
        loop {
            if s.homs().iter().all(|(&(a, b), f)| f[x[a]] == x[b]) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == sizes.len() {
                    return count;
                }
                x[k] += 1;
                if x[k] < sizes[k] {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }
}

use oracle::Dense;

struct Report {
    pass: bool,
    detail: String,
    /// Extra material that must also be reproducible.
    log: String,
}

impl Report {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Report { pass, detail: detail.into(), log: String::new() }
    }
}

fn budget() -> Budget {
    Budget::default()
}

fn l(s: &str) -> VertexLabel {
    VertexLabel::atom(s).unwrap()
}

fn atoms(vertices: &[&str], edges: &[(&str, &str)]) -> Arc<Digraph> {
    Arc::new(Digraph::from_atoms(vertices, edges).unwrap())
}

fn c3() -> Arc<Digraph> {
    atoms(&[], &[("a", "b"), ("b", "c"), ("c", "a")])
}

fn iplus() -> Arc<Digraph> {
    Arc::new(LineDigraph::plus())
}

fn point(name: &str) -> Arc<Digraph> {
    atoms(&[name], &[])
}

fn map(dom: &Arc<Digraph>, cod: &Arc<Digraph>, pairs: &[(&str, &str)]) -> DigraphMap {
    DigraphMap::checked(dom.clone(), cod.clone(), pairs.iter().map(|&(x, y)| (l(x), l(y)))).unwrap()
}

fn random_digraph(rng: &mut ChaCha8Rng, min: usize, max: usize) -> Arc<Digraph> {
    let n = rng.gen_range(min..=max);
    let bits = n * n.saturating_sub(1);
    let mask = if bits == 0 { 0 } else { rng.gen::<u64>() & ((1u64 << bits) - 1) };
    Arc::new(from_mask(n, mask))
}

fn random_map(rng: &mut ChaCha8Rng, g: &Arc<Digraph>, h: &Arc<Digraph>) -> Option<DigraphMap> {
    let (dg, dh) = (Dense::new(g), Dense::new(h));
    let all = oracle::all_maps(&dg, &dh);
    all.choose(rng).map(|f| oracle::to_map(f, g, h, &dg, &dh))
}

/// A map between random digraphs with `1..=max` vertices each.
fn random_pair_of_digraphs_and_map(rng: &mut ChaCha8Rng, max: usize) -> DigraphMap {
    let g = random_digraph(rng, 1, max);
    let h = random_digraph(rng, 1, max);
    random_map(rng, &g, &h).expect("codomain is nonempty")
}

fn sorted_edges(g: &Digraph) -> Vec<String> {
    let mut v: Vec<String> = g.edges().map(|(x, y)| format!("{x}->{y}")).collect();
    v.sort();
    v
}

fn criterion_1() -> Report {
    let t = Instant::now();
    let (g, i) = (c3(), iplus());
    let tensor = tensor_product(&g, &i);
    let boxed = box_product(&g, &i).digraph;
    let p = |x: &str, y: &str| format!("Pair({x},{y})");
    let mut want_tensor = Vec::new();
    let mut want_box = Vec::new();
    // Product edges straight from the definitions.
    let c3e = [("a", "b"), ("b", "c"), ("c", "a")];
    for (x, y) in c3e {
        want_tensor.push(format!("{}->{}", p(x, "0"), p(y, "1")));
        for s in ["0", "1"] {
            want_box.push(format!("{}->{}", p(x, s), p(y, s)));
        }
    }
    for x in ["a", "b", "c"] {
        want_box.push(format!("{}->{}", p(x, "0"), p(x, "1")));
    }
    want_tensor.sort();
    want_box.sort();
    let ok = sorted_edges(&tensor) == want_tensor && sorted_edges(&boxed) == want_box;
    let fast = t.elapsed() < Duration::from_secs(1);
    Report::new(ok && fast, format!("tensor {} edges, box {} edges", tensor.edge_count(), boxed.edge_count()))
}

fn criterion_2() -> Report {
    let t = Instant::now();
    let (g1, g2) = (c3(), iplus());
    let tensor = Arc::new(tensor_product(&g1, &g2));
    let boxed = box_product(&g1, &g2).digraph;
    let (dt, db) = (Dense::new(&tensor), Dense::new(&boxed));
    let all = oracle::all_maps(&dt, &db);
    let library = enumerate_maps(&tensor, &boxed, &budget()).unwrap().len();
    // Both projections act on the pair label directly.
    let hits = all
        .iter()
        .filter(|phi| {
            dt.labels.iter().zip(phi.iter()).all(|(v, &w)| {
                let (a, b) = v.split_pair().unwrap();
                let (c, d) = db.labels[w].split_pair().unwrap();
                a == c && b == d
            })
        })
        .count();
    let fast = t.elapsed() < Duration::from_secs(5);
    Report::new(
        hits == 0 && library == all.len() && fast,
        format!("{} maps searched, {hits} factor both projections", all.len()),
    )
}

/// Contractibility by the oracle: `id` shares a component with a constant.
fn oracle_contractible(g: &Arc<Digraph>) -> bool {
    let d = Dense::new(g);
    if d.len() == 0 {
        return false;
    }
    let maps = oracle::all_maps(&d, &d);
    let comp = oracle::components(&d, &maps);
    let id: Vec<usize> = (0..d.len()).collect();
    let id_comp = comp[maps.iter().position(|f| *f == id).unwrap()];
    maps.iter().zip(&comp).any(|(f, &c)| c == id_comp && f.iter().all(|&x| x == f[0]))
}

fn criterion_3() -> Report {
    let mut log = String::new();
    let mut ok = true;
    let ip = iplus();
    let square = box_product(&ip, &ip).digraph;
    let cube = box_product(&square, &ip).digraph;
    let mut words = Vec::new();
    for g in [ip, Arc::new(LineDigraph::minus()), square, cube] {
        let t = Instant::now();
        match is_contractible(&g, &budget()).unwrap() {
            Some(h) => {
                ok &= h.verify() && oracle::replays(&h) && h.end().is_constant();
                words.push(h.word_string());
                log.push_str(&write_homotopy(&h));
            }
            None => ok = false,
        }
        ok &= t.elapsed() < Duration::from_secs(10);
    }
    let t = Instant::now();
    let mut cones = 0;
    for n in 0..=5 {
        for g in digraphs_up_to_iso(n) {
            let c = cone(&Arc::new(g)).digraph;
            match is_contractible(&c, &budget()).unwrap() {
                Some(h) => ok &= h.verify() && oracle::replays(&h),
                None => ok = false,
            }
            cones += 1;
        }
    }
    ok &= t.elapsed() < Duration::from_secs(10);
    let c3_none = is_contractible(&c3(), &budget()).unwrap().is_none();
    ok &= c3_none && !oracle_contractible(&c3());
    let mut r = Report::new(
        ok,
        format!("intervals {}, {cones} cones contractible, C3 none {c3_none}", words.join(" ")),
    );
    r.log = log;
    r
}

fn c3_hep_instance() -> HepInstance {
    let g = c3();
    let x = atoms(&[], &[("c", "a")]);
    let incl = DigraphMap::inclusion(x.clone(), g.clone()).unwrap();
    let to_c = DigraphMap::constant(x.clone(), g.clone(), &l("c")).unwrap();
    let steps = Homotopy::new(vec![Orientation::Minus], vec![incl, to_c]).unwrap();
    HepInstance { graph: g.clone(), sub: x, target: g.clone(), start: DigraphMap::identity(g), steps }
}

/// The extension question answered by brute force for `pad = 0`: a map
/// `G -> H` one `-` step below `start` that restricts to the end of the
/// given homotopy.
fn oracle_hep_extends(inst: &HepInstance) -> bool {
    let (g, h) = (Dense::new(&inst.graph), Dense::new(&inst.target));
    let start = oracle::indices(&inst.start, &g, &h);
    let end = inst.steps.end();
    oracle::all_maps(&g, &h).iter().any(|f| {
        oracle::step(&h, f, &start)
            && g.labels.iter().zip(f).all(|(v, &i)| end.image(v).is_none_or(|w| *w == h.labels[i]))
    })
}

fn criterion_4() -> Report {
    let t = Instant::now();
    let inst = c3_hep_instance();
    let plain = check_hep(&inst, HepOptions::default(), &budget()).unwrap().is_none();
    let padded: Vec<bool> = (0..=6)
        .map(|pad| check_hep(&inst, HepOptions { pad }, &budget()).unwrap().is_none())
        .collect();
    let oracle_none = !oracle_hep_extends(&inst);
    let fast = t.elapsed() < Duration::from_secs(10);
    Report::new(
        plain && oracle_none && padded.iter().all(|&b| b) && fast,
        format!("no extension; none with padding up to 6: {}", padded.iter().all(|&b| b)),
    )
}

fn criterion_5() -> Report {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut found = 0;
    let mut log = String::new();
    for _ in 0..50 {
        let f = random_pair_of_digraphs_and_map(&mut rng, 4);
        let m = mapping_cylinder(&f).unwrap().digraph;
        if let Some(e) = are_equivalent(&m, f.codomain(), &budget()).unwrap() {
            let certs = [&e.on_domain, &e.on_codomain];
            if certs.iter().all(|h| h.verify() && oracle::replays(h)) {
                found += 1;
            }
            let _ = writeln!(log, "{} {}", e.on_domain.word_string(), e.on_codomain.word_string());
        }
    }
    let fast = t.elapsed() < Duration::from_secs(60);
    let mut r = Report::new(found == 50 && fast, format!("{found}/50 cylinders equivalent to the codomain"));
    r.log = log;
    r
}

fn criterion_6() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut ok = 0;
    let mut bfs_short = 0;
    for _ in 0..50 {
        let f = random_pair_of_digraphs_and_map(&mut rng, 4);
        let g = random_map(&mut rng, f.domain(), f.codomain()).unwrap();
        let t = tube_union(&f, &g).unwrap();
        let h = tube_homotopy(&f, &g, &t).unwrap();
        let i = t.map("inclusion");
        let ends = *h.start() == i.after(&f).unwrap() && *h.end() == i.after(&g).unwrap();
        if h.len() == 2 && h.verify() && oracle::replays(&h) && ends {
            ok += 1;
        }
        if let Some(b) = are_homotopic(h.start(), h.end(), &budget()).unwrap() {
            bfs_short += usize::from(b.len() <= 2);
        }
    }
    Report::new(
        ok == 50 && bfs_short == 50,
        format!("{ok}/50 length-2 certificates, breadth-first search within 2 steps {bfs_short}/50"),
    )
}

fn criterion_7() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ok = 0;
    for _ in 0..50 {
        let f = random_pair_of_digraphs_and_map(&mut rng, 4);
        let c = paper_cofiber(&f).unwrap();
        let h = cofiber_nullhomotopy(&f, &c).unwrap();
        let ends = *h.start() == c.map("inclusion").after(&f).unwrap()
            && h.end().pairs().all(|(_, w)| *w == VertexLabel::apex());
        if h.word_string() == "++" && h.verify() && oracle::replays(&h) && ends {
            ok += 1;
        }
    }
    Report::new(ok == 50, format!("{ok}/50 nullhomotopies with word ++"))
}

fn criterion_8() -> Report {
    let p = point("p");
    let ip = iplus();
    // Outcomes recorded for the image gluing and the full base gluing.
    let cases = [
        ("id-point", DigraphMap::identity(p.clone()), true, true),
        ("point-into-interval", map(&p, &ip, &[("p", "0")]), true, true),
        ("interval-onto-point", map(&ip, &p, &[("0", "p"), ("1", "p")]), true, true),
        ("c3-onto-point", map(&c3(), &p, &[("a", "p"), ("b", "p"), ("c", "p")]), true, true),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, f, want_im, want_base) in cases {
        let c = paper_cofiber(&f).unwrap().digraph;
        let im = are_equivalent(&gat(&f, GatGlue::Image).unwrap().digraph, &c, &budget()).unwrap().is_some();
        let base = are_equivalent(&gat(&f, GatGlue::Base).unwrap().digraph, &c, &budget()).unwrap().is_some();
        ok &= im == want_im && base == want_base;
        parts.push(format!("{name} im={im} base={base}"));
    }
    Report::new(ok, parts.join(", "))
}

/// Compares the library with the oracle on every pair of maps `G -> H`.
/// Returns the number of map pairs and discrepancies.
fn compare_decisions(g: &Arc<Digraph>, h: &Arc<Digraph>, sample: Option<(&mut ChaCha8Rng, usize)>) -> (usize, usize) {
    let (dg, dh) = (Dense::new(g), Dense::new(h));
    let maps = oracle::all_maps(&dg, &dh);
    let comp = oracle::components(&dh, &maps);
    let mut bad = 0;
    let library = enumerate_maps(g, h, &budget()).unwrap();
    let lib_set: BTreeSet<Vec<usize>> = library.iter().map(|m| oracle::indices(m, &dg, &dh)).collect();
    let oracle_set: BTreeSet<Vec<usize>> = maps.iter().cloned().collect();
    bad += usize::from(lib_set != oracle_set);

    // Class partitions must agree.
    let table = homotopy_classes(g, h, &budget()).unwrap();
    let oracle_classes: BTreeSet<usize> = comp.iter().copied().collect();
    bad += usize::from(table.class_count() != oracle_classes.len());
    let mut link: BTreeMap<usize, usize> = BTreeMap::new();
    for (f, &c) in maps.iter().zip(&comp) {
        let lc = table.class_of(&oracle::to_map(f, g, h, &dg, &dh)).unwrap();
        if *link.entry(c).or_insert(lc) != lc {
            bad += 1;
        }
    }

    let pairs: Vec<(usize, usize)> = match sample {
        None => (0..maps.len()).flat_map(|i| (0..maps.len()).map(move |j| (i, j))).collect(),
        Some((rng, k)) if !maps.is_empty() => {
            (0..k).map(|_| (rng.gen_range(0..maps.len()), rng.gen_range(0..maps.len()))).collect()
        }
        Some(_) => Vec::new(),
    };
    for &(i, j) in &pairs {
        let f = oracle::to_map(&maps[i], g, h, &dg, &dh);
        let k = oracle::to_map(&maps[j], g, h, &dg, &dh);
        let same = comp[i] == comp[j];
        match are_homotopic(&f, &k, &budget()).unwrap() {
            Some(cert) => {
                let good = same && cert.verify() && oracle::replays(&cert) && *cert.start() == f && *cert.end() == k;
                bad += usize::from(!good);
            }
            None => bad += usize::from(same),
        }
    }
    (pairs.len(), bad)
}

fn criterion_9() -> Report {
    let small: Vec<Arc<Digraph>> = (0..=3).flat_map(digraphs_up_to_iso).map(Arc::new).collect();
    let mut pairs = 0;
    let mut bad = 0;
    for g in &small {
        for h in &small {
            let (p, b) = compare_decisions(g, h, None);
            pairs += p;
            bad += b;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut sampled = 0;
    for _ in 0..30 {
        let g = random_digraph(&mut rng, 4, 4);
        let h = random_digraph(&mut rng, 4, 4);
        let (p, b) = compare_decisions(&g, &h, Some((&mut rng, 200)));
        sampled += p;
        bad += b;
    }
    Report::new(
        bad == 0,
        format!(
            "{} digraph pairs, {pairs} map pairs exhaustive, {sampled} sampled on 4 vertices, {bad} discrepancies",
            small.len() * small.len()
        ),
    )
}

/// A root set with some of its quotients. Morphisms go from finer to
/// coarser partitions and the root maps to everything.
fn random_quotient_system(rng: &mut ChaCha8Rng) -> FiniteSystem {
    let r = rng.gen_range(1..=4);
    let mut quotients: Vec<Vec<usize>> = vec![(0..r).collect()];
    let extra = rng.gen_range(0..=4);
    for _ in 0..extra {
        let k = rng.gen_range(1..=r);
        let mut q: Vec<usize> = (0..r).map(|_| rng.gen_range(0..k)).collect();
        // Renumber by first occurrence, so equal partitions are equal vectors.
        let mut seen = BTreeMap::new();
        for x in q.iter_mut() {
            let next = seen.len();
            *x = *seen.entry(*x).or_insert(next);
        }
        if !quotients.contains(&q) {
            quotients.push(q);
        }
    }
    let token = |i: usize| format!("t{i}");
    let mut b = FiniteSystem::builder();
    for (i, q) in quotients.iter().enumerate() {
        let tokens: BTreeSet<usize> = q.iter().copied().collect();
        b.object(&format!("Q{i}"), tokens.into_iter().map(token));
    }
    for (i, qi) in quotients.iter().enumerate() {
        for (j, qj) in quotients.iter().enumerate() {
            // Morphisms out of the root always stay; others may be dropped,
            // leaving the closure something to add back.
            if i == j || (i > 0 && rng.gen_bool(0.5)) {
                continue;
            }
            let mut f = BTreeMap::new();
            let factors = (0..r).all(|x| *f.entry(qi[x]).or_insert(qj[x]) == qj[x]);
            if factors {
                b.morphism(
                    &format!("Q{i}"),
                    &format!("Q{j}"),
                    f.into_iter().map(|(a, c)| (token(a), token(c))),
                );
            }
        }
    }
    b.build().unwrap()
}

/// The full subcategory on `keep`.
fn full_subcategory(s: &FiniteSystem, keep: &[usize]) -> FiniteSystem {
    let mut b = FiniteSystem::builder();
    for &i in keep {
        let o = &s.objects()[i];
        b.object(&o.name, o.tokens.iter().cloned());
    }
    for (&(x, y), f) in s.proper_homs() {
        if keep.contains(&x) && keep.contains(&y) {
            let (ox, oy) = (&s.objects()[x], &s.objects()[y]);
            let pairs = f.iter().enumerate().map(|(i, &j)| (ox.tokens[i].clone(), oy.tokens[j].clone()));
            b.morphism(&ox.name, &oy.name, pairs);
        }
    }
    b.build().unwrap()
}

fn random_sequence(rng: &mut ChaCha8Rng) -> FiniteSystem {
    let n = rng.gen_range(1..=5);
    let mut sizes = vec![rng.gen_range(1..=4)];
    for k in 1..n {
        let prev = sizes[k - 1];
        sizes.push(rng.gen_range(prev..=4));
    }
    let mut b = FiniteSystem::builder();
    for (k, &m) in sizes.iter().enumerate() {
        b.object(&format!("X{}", k + 1), (0..m).map(|t| format!("t{t}")));
    }
    for k in 1..n {
        let (big, small) = (sizes[k], sizes[k - 1]);
        let mut f: Vec<usize> = (0..small).collect();
        f.extend((small..big).map(|_| rng.gen_range(0..small)));
        f.shuffle(rng);
        let pairs: Vec<(String, String)> = f.iter().enumerate().map(|(i, &j)| (format!("t{i}"), format!("t{j}"))).collect();
        b.morphism(&format!("X{}", k + 1), &format!("X{k}"), pairs);
    }
    b.build().unwrap()
}

fn criterion_10() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = 0;
    let mut cofinal = 0;
    let mut closures_with_additions = 0;
    let mut log = String::new();
    for _ in 0..200 {
        let s = random_quotient_system(&mut rng);
        let n = s.objects().len();
        let mut keep: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if keep.is_empty() {
            keep.push(rng.gen_range(0..n));
        }
        let sub = full_subcategory(&s, &keep);
        let limit = inverse_limit(&s);
        failures += usize::from(limit.len() != oracle::limit_size(&s));
        if is_cofinal(&sub, &s).unwrap() {
            cofinal += 1;
            let r = restriction_check(&sub, &s).unwrap();
            failures += usize::from(!r.bijective());
            failures += usize::from(oracle::limit_size(&sub) != limit.len());
        }

        let seq = random_sequence(&mut rng);
        match sequence_limit_nonempty(&seq) {
            Ok(e) => {
                failures += usize::from(!e.is_compatible(&seq) || oracle::limit_size(&seq) == 0);
                let _ = writeln!(log, "{}", e.display(&seq));
            }
            Err(_) => failures += 1,
        }

        match closure_category(&s) {
            Ok(c) => {
                let onto = c.homs.iter().all(|(&(_, y), fs)| {
                    let m = s.objects()[y].tokens.len();
                    fs.iter().all(|f| (0..m).all(|t| f.contains(&t)))
                });
                let axiom2 = (0..n).all(|x| {
                    (0..n).all(|y| (0..n).any(|z| c.homs.contains_key(&(z, x)) && c.homs.contains_key(&(z, y))))
                });
                failures += usize::from(!(c.ok() && onto && axiom2));
                closures_with_additions += usize::from(c.added(&s) > 0);
            }
            Err(_) => failures += 1,
        }
    }
    let mut r = Report::new(
        failures == 0,
        format!(
            "200 systems, {cofinal} cofinal full subcategories, {closures_with_additions} closures add morphisms, {failures} failures"
        ),
    );
    r.log = log;
    r
}

fn criterion_11() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = 0;
    for _ in 0..100 {
        let g1 = random_digraph(&mut rng, 0, 3);
        let g2 = random_digraph(&mut rng, 0, 3);
        let z = random_digraph(&mut rng, 1, 3);
        let functor = RepresentableFunctor::new(z.clone(), budget());
        let r = audit_additivity(&functor, &[g1.clone(), g2.clone()]).unwrap();
        let dz = Dense::new(&z);
        let classes = |g: &Arc<Digraph>| {
            let maps = oracle::all_maps(&Dense::new(g), &dz);
            oracle::components(&dz, &maps).into_iter().collect::<BTreeSet<_>>().len()
        };
        let coproduct = disjoint_union(&[g1.clone(), g2.clone()]).digraph;
        let counts_agree = classes(&coproduct) == classes(&g1) * classes(&g2);
        failures += usize::from(!(r.bijective() && r.certificates_verified && counts_agree));
    }
    Report::new(failures == 0, format!("100 triples, {failures} failures"))
}

/// Every certificate of the step must replay, start at `i∘f` and end at
/// `i∘g` for its attachment.
fn check_step(functor: &RepresentableFunctor, state: &StageState, log: &mut String) -> (usize, usize, StageState) {
    let r = inductive_step(functor, state).unwrap();
    let new: Vec<_> = r.state.attached.iter().filter(|a| a.stage == state.stage).collect();
    let mut bad = usize::from(new.len() != r.certificates.len());
    for (a, h) in new.iter().zip(&r.certificates) {
        let good = h.verify()
            && oracle::replays(h)
            && map_pairs(h.start()) == a.f
            && map_pairs(h.end()) == a.g
            && **h.end().codomain() == **r.state.y();
        bad += usize::from(!good);
    }
    log.push_str(&r.state.to_json());
    (r.certificates.len(), bad, r.state)
}

fn criterion_12() -> Report {
    let mut log = String::new();
    let mut attached = 0;
    let mut bad = 0;
    let mut unextendable = 0;

    let z = point("z");
    let functor = RepresentableFunctor::new(z.clone(), budget());
    let u = DigraphMap::constant(atoms(&["p", "q"], &[]), z, &l("z")).unwrap();
    let demo = StageState { stage: 1, u, tests: vec![point("k")], attached: vec![], unextendable: vec![] };
    let (a, b, next) = check_step(&functor, &demo, &mut log);
    let demo_ok = a == 1 && b == 0 && next.y().vertex_count() == 3;
    attached += a;
    bad += b;

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let z = random_digraph(&mut rng, 1, 3);
        let y0 = random_digraph(&mut rng, 0, 3);
        let u0 = random_map(&mut rng, &y0, &z).unwrap();
        let tests: Vec<Arc<Digraph>> = (0..rng.gen_range(1..=2)).map(|_| random_digraph(&mut rng, 1, 2)).collect();
        let functor = RepresentableFunctor::new(z, budget());
        let base = base_step(&functor, &u0, &tests).unwrap();
        bad += usize::from(!base.surjective);
        let mut state = base.state;
        for _ in 0..2 {
            let (a, b, next) = check_step(&functor, &state, &mut log);
            attached += a;
            bad += b;
            state = next;
        }
        unextendable += state.unextendable.len();
    }
    let mut r = Report::new(
        demo_ok && bad == 0,
        format!(
            "two-point demo attaches {} tube, {attached} certificates over 21 runs, {unextendable} unextendable pairs, {bad} failures",
            usize::from(demo_ok)
        ),
    );
    r.log = log;
    r
}

fn run_suite() -> Vec<(usize, Report)> {
    let criteria: [fn() -> Report; 12] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
        criterion_12,
    ];
    criteria.iter().enumerate().map(|(i, c)| (i + 1, c())).collect()
}

fn transcript(results: &[(usize, Report)]) -> String {
    let mut s = String::new();
    for (i, r) in results {
        let _ = writeln!(s, "criterion {i:>2} {} {}", if r.pass { "PASS" } else { "FAIL" }, r.detail);
        s.push_str(&r.log);
    }
    s
}

fn main() -> ExitCode {
    let start = Instant::now();
    let first = run_suite();
    for (i, r) in &first {
        println!("criterion {i:>2} {}  {}", if r.pass { "PASS" } else { "FAIL" }, r.detail);
    }
    let second = run_suite();
    let a = transcript(&first);
    let same = a == transcript(&second);
    println!(
        "criterion 13 {}  second run byte-identical over {} bytes of output",
        if same { "PASS" } else { "FAIL" },
        a.len()
    );
    let passed = first.iter().filter(|(_, r)| r.pass).count() + usize::from(same);
    println!("{passed}/13 criteria passed in {:.1}s", start.elapsed().as_secs_f64());
    if passed == 13 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
