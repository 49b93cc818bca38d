//! Built-in worked examples, each with its expected outcome and where that
//! expectation comes from.

use std::path::Path;
use std::sync::Arc;

use diho::brown::{
    audit_additivity, audit_cofiber_exactness, audit_mayer_vietoris, base_step, inductive_step,
    RepresentableFunctor, StageState,
};
use diho::census::digraphs_up_to_iso;
use diho::constructions::{
    box_product, cone, gat, paper_cofiber, tensor_product, tube_union, GatGlue,
};
use diho::dot::to_dot;
use diho::format::write_homotopy;
use diho::homotopy::{
    are_equivalent, check_hep, cofiber_nullhomotopy, enumerate_maps, homotopy_classes, is_contractible,
    tube_homotopy, HepInstance, HepOptions, Homotopy,
};
use diho::limits::{restriction_check, sequence_limit_nonempty, FiniteSystem};
use diho::{Budget, Digraph, DigraphMap, LineDigraph, Orientation, Result, VertexLabel};

use crate::commands::{Ctx, Outcome};

pub struct Check {
    pub passed: bool,
    pub detail: String,
    pub certificate: Option<Homotopy>,
}

impl Check {
    fn new(passed: bool, detail: impl Into<String>) -> Check {
        Check { passed, detail: detail.into(), certificate: None }
    }

    fn with_certificate(mut self, h: Homotopy) -> Check {
        self.certificate = Some(h);
        self
    }
}

pub struct Fixture {
    pub id: &'static str,
    /// Worked example, direct computation, recorded outcome, or the name
    /// of the independent check used.
    pub source: &'static str,
    pub run: fn(&Budget) -> Result<Check>,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { id: "additivity-points", source: "direct: [pt, C3] has one class", run: additivity_points },
    Fixture { id: "base-point-interval", source: "oracle: class count of [pt, I+]", run: base_point_interval },
    Fixture { id: "c3-not-contractible", source: "oracle: class table of [C3, C3]", run: c3_not_contractible },
    Fixture { id: "cofiber-exactness-point-interval", source: "recorded", run: cofiber_exactness_point_interval },
    Fixture { id: "cofiber-nullhomotopy", source: "worked example", run: cofiber_nullhomotopy_fixture },
    Fixture { id: "cofiber-point", source: "derived from the cofiber clauses", run: cofiber_point },
    Fixture { id: "cone-contractible", source: "oracle: one-step certificate to the apex", run: cone_contractible },
    Fixture { id: "gat-vs-cofiber", source: "recorded", run: gat_vs_cofiber },
    Fixture { id: "hep-c3", source: "worked example", run: hep_c3 },
    Fixture { id: "hep-c3-padded", source: "recorded finding", run: hep_c3_padded },
    Fixture { id: "inductive-two-points", source: "derived: tube through Src", run: inductive_two_points },
    Fixture { id: "intervals-contractible", source: "worked example", run: intervals_contractible },
    Fixture { id: "limits-cofinal-top", source: "direct", run: limits_cofinal_top },
    Fixture { id: "limits-sequence", source: "direct: least-preimage chase", run: limits_sequence },
    Fixture { id: "mv-c3-split", source: "recorded", run: mv_c3_split },
    Fixture { id: "no-product", source: "worked example", run: no_product },
    Fixture { id: "tensor-example", source: "worked example", run: tensor_example },
    Fixture { id: "tube-two-points", source: "worked example", run: tube_two_points },
];

pub fn run_all(ctx: &Ctx, filter: Option<&str>, cert_dir: Option<&Path>) -> Result<Outcome> {
    let mut all_passed = true;
    let mut ran = 0;
    for fx in FIXTURES.iter().filter(|f| filter.is_none_or(|p| f.id.contains(p))) {
        ran += 1;
        let check = (fx.run)(&ctx.budget)?;
        all_passed &= check.passed;
        let mut line = format!(
            "{} {}  {}  [{}]",
            if check.passed { "PASS" } else { "FAIL" },
            fx.id,
            check.detail,
            fx.source
        );
        if let (Some(dir), Some(h)) = (cert_dir, &check.certificate) {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("{}.hty", fx.id));
            std::fs::write(&path, write_homotopy(h))?;
            line.push_str(&format!("  certificate: {}", path.display()));
        }
        if !ctx.quiet || !check.passed {
            println!("{line}");
        }
    }
    if ran == 0 {
        eprintln!("no fixture matches");
        return Ok(Outcome::No);
    }
    Ok(if all_passed { Outcome::Yes } else { Outcome::No })
}

fn atoms(vertices: &[&str], edges: &[(&str, &str)]) -> Arc<Digraph> {
    Arc::new(Digraph::from_atoms(vertices, edges).expect("fixture digraph"))
}

fn c3() -> Arc<Digraph> {
    Arc::new(Digraph::cycle(&["a", "b", "c"]).expect("fixture digraph"))
}

fn iplus() -> Arc<Digraph> {
    Arc::new(LineDigraph::plus())
}

fn point(name: &str) -> Arc<Digraph> {
    atoms(&[name], &[])
}

fn l(s: &str) -> VertexLabel {
    s.parse().expect("fixture label")
}

fn map(dom: &Arc<Digraph>, cod: &Arc<Digraph>, pairs: &[(&str, &str)]) -> Result<DigraphMap> {
    DigraphMap::checked(dom.clone(), cod.clone(), pairs.iter().map(|(a, b)| (l(a), l(b))))
}

fn edge_strings(g: &Digraph) -> Vec<String> {
    g.edges().map(|(x, y)| format!("{x}->{y}")).collect()
}

fn tensor_example(_: &Budget) -> Result<Check> {
    let tensor = tensor_product(&c3(), &iplus());
    let boxed = box_product(&c3(), &iplus()).digraph;
    let want_tensor = ["Pair(a,0)->Pair(b,1)", "Pair(b,0)->Pair(c,1)", "Pair(c,0)->Pair(a,1)"];
    let mut want_box = vec![
        "Pair(a,0)->Pair(b,0)",
        "Pair(b,0)->Pair(c,0)",
        "Pair(c,0)->Pair(a,0)",
        "Pair(a,1)->Pair(b,1)",
        "Pair(b,1)->Pair(c,1)",
        "Pair(c,1)->Pair(a,1)",
        "Pair(a,0)->Pair(a,1)",
        "Pair(b,0)->Pair(b,1)",
        "Pair(c,0)->Pair(c,1)",
    ];
    want_box.sort();
    let ok = edge_strings(&tensor) == want_tensor && edge_strings(&boxed) == want_box;
    Ok(Check::new(ok, format!("tensor {} edges, box {} edges", tensor.edge_count(), boxed.edge_count())))
}

/// Maps `C3 ⊗ I+ -> C3 □ I+` over both projections.
pub fn product_factorizations(budget: &Budget) -> Result<(usize, usize)> {
    let (g1, g2) = (c3(), iplus());
    let tensor = Arc::new(tensor_product(&g1, &g2));
    let boxed = box_product(&g1, &g2);
    let f1 = DigraphMap::from_fn(tensor.clone(), g1, |v| v.split_pair().expect("pair").0)?;
    let f2 = DigraphMap::from_fn(tensor.clone(), g2, |v| v.split_pair().expect("pair").1)?;
    let (p1, p2) = (boxed.map("p1"), boxed.map("p2"));
    let all = enumerate_maps(&tensor, &boxed.digraph, budget)?;
    let hits = all
        .iter()
        .filter(|phi| p1.after(phi).ok().as_ref() == Some(&f1) && p2.after(phi).ok().as_ref() == Some(&f2))
        .count();
    Ok((all.len(), hits))
}

fn no_product(budget: &Budget) -> Result<Check> {
    let (total, hits) = product_factorizations(budget)?;
    Ok(Check::new(hits == 0, format!("{total} maps searched, {hits} factor both projections")))
}

pub fn c3_hep_instance() -> Result<HepInstance> {
    let g = c3();
    let x = atoms(&[], &[("c", "a")]);
    let incl = DigraphMap::inclusion(x.clone(), g.clone())?;
    let to_c = DigraphMap::constant(x.clone(), g.clone(), &l("c"))?;
    let steps = Homotopy::new(vec![Orientation::Minus], vec![incl, to_c])?;
    Ok(HepInstance { graph: g.clone(), sub: x, target: g.clone(), start: DigraphMap::identity(g), steps })
}

fn hep_c3(budget: &Budget) -> Result<Check> {
    let found = check_hep(&c3_hep_instance()?, HepOptions::default(), budget)?;
    Ok(Check::new(found.is_none(), "no extension of the contraction of c -> a"))
}

fn hep_c3_padded(budget: &Budget) -> Result<Check> {
    let found = check_hep(&c3_hep_instance()?, HepOptions { pad: 6 }, budget)?;
    Ok(Check::new(found.is_none(), "no extension with up to 6 stationary steps"))
}

fn intervals_contractible(budget: &Budget) -> Result<Check> {
    let ip = iplus();
    let square = box_product(&ip, &ip).digraph;
    let cube = box_product(&square, &ip).digraph;
    let cases = [ip, Arc::new(LineDigraph::minus()), square.clone(), cube];
    let mut words = Vec::new();
    let mut cert = None;
    for g in &cases {
        match is_contractible(g, budget)? {
            Some(h) if h.verify() => {
                words.push(h.word_string());
                if Arc::ptr_eq(g, &square) {
                    cert = Some(h);
                }
            }
            _ => return Ok(Check::new(false, format!("no certificate for {} vertices", g.vertex_count()))),
        }
    }
    let check = Check::new(true, format!("words {}", words.join(" ")));
    Ok(match cert {
        Some(h) => check.with_certificate(h),
        None => check,
    })
}

fn c3_not_contractible(budget: &Budget) -> Result<Check> {
    let g = c3();
    let table = homotopy_classes(&g, &g, budget)?;
    let id_class = table.class_of(&DigraphMap::identity(g.clone())).expect("identity");
    let oracle = !table.is_constant_class(id_class);
    let bfs = is_contractible(&g, budget)?.is_none();
    Ok(Check::new(
        oracle && bfs,
        format!("{} classes in [C3, C3], identity class constant: {}", table.class_count(), !oracle),
    ))
}

fn cone_contractible(budget: &Budget) -> Result<Check> {
    let mut checked = 0;
    for n in 0..=5 {
        for g in digraphs_up_to_iso(n) {
            let c = cone(&Arc::new(g)).digraph;
            match is_contractible(&c, budget)? {
                Some(h) if h.verify() && h.end().is_constant() => checked += 1,
                _ => return Ok(Check::new(false, format!("cone over a {n}-vertex digraph failed"))),
            }
        }
    }
    Ok(Check::new(true, format!("{checked} cones over digraphs up to isomorphism")))
}

fn cofiber_point(_: &Budget) -> Result<Check> {
    let p = point("p");
    let c = paper_cofiber(&DigraphMap::identity(p))?;
    let dot = to_dot(&c.digraph, "C");
    let nodes = dot.matches("[shape=").count();
    let arcs = dot.matches(" -> ").count();
    let ok = (c.digraph.vertex_count(), c.digraph.edge_count(), nodes, arcs) == (3, 3, 3, 3);
    Ok(Check::new(ok, format!("edges {}", edge_strings(&c.digraph).join(" "))))
}

fn cofiber_nullhomotopy_fixture(_: &Budget) -> Result<Check> {
    let f = map(&point("p"), &iplus(), &[("p", "0")])?;
    let c = paper_cofiber(&f)?;
    let h = cofiber_nullhomotopy(&f, &c)?;
    let ok = h.word_string() == "++" && h.verify();
    Ok(Check::new(ok, format!("word {:?}", h.word_string())).with_certificate(h))
}

fn tube_two_points(_: &Budget) -> Result<Check> {
    let y = atoms(&["p", "q"], &[]);
    let k = point("k");
    let f = map(&k, &y, &[("k", "p")])?;
    let g = map(&k, &y, &[("k", "q")])?;
    let t = tube_union(&f, &g)?;
    let h = tube_homotopy(&f, &g, &t)?;
    let ok = h.word_string() == "-+" && h.verify();
    Ok(Check::new(ok, format!("word {:?}", h.word_string())).with_certificate(h))
}

/// Tiny maps for the gluing comparison, with the outcome recorded for the
/// image gluing and for the full base gluing.
pub fn gat_cases() -> Result<Vec<(&'static str, DigraphMap, bool, bool)>> {
    let p = point("p");
    let ip = iplus();
    Ok(vec![
        ("id-point", DigraphMap::identity(p.clone()), true, true),
        ("point-into-interval", map(&p, &ip, &[("p", "0")])?, true, true),
        ("interval-onto-point", map(&ip, &p, &[("0", "p"), ("1", "p")])?, true, true),
        ("c3-onto-point", map(&c3(), &p, &[("a", "p"), ("b", "p"), ("c", "p")])?, true, true),
    ])
}

fn gat_vs_cofiber(budget: &Budget) -> Result<Check> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, f, want_im, want_base) in gat_cases()? {
        let c = paper_cofiber(&f)?.digraph;
        let im = are_equivalent(&gat(&f, GatGlue::Image)?.digraph, &c, budget)?.is_some();
        let base = are_equivalent(&gat(&f, GatGlue::Base)?.digraph, &c, budget)?.is_some();
        ok &= im == want_im && base == want_base;
        parts.push(format!("{name}: im={im} base={base}"));
    }
    Ok(Check::new(ok, parts.join(", ")))
}

fn mv_c3_split(budget: &Budget) -> Result<Check> {
    let path = atoms(&[], &[("a", "b"), ("b", "c")]);
    let edge = atoms(&[], &[("c", "a")]);
    let functor = RepresentableFunctor::new(c3(), *budget);
    let r = audit_mayer_vietoris(&functor, &path, &edge)?;
    let recorded = (r.union_classes, r.fibered_product, r.image, r.onto);
    Ok(Check::new(
        recorded == (2, 1, 1, true),
        format!(
            "[C3,C3] {} classes, fibered product {}, image {}, onto {}",
            r.union_classes, r.fibered_product, r.image, r.onto
        ),
    ))
}

fn cofiber_exactness_point_interval(budget: &Budget) -> Result<Check> {
    let f = map(&point("p"), &iplus(), &[("p", "0")])?;
    let functor = RepresentableFunctor::new(iplus(), *budget);
    let r = audit_cofiber_exactness(&functor, &f)?;
    Ok(Check::new(
        r.forward && r.backward,
        format!("forward {}, backward {}, kernel {:?}, image {:?}", r.forward, r.backward, r.kernel, r.image),
    ))
}

fn additivity_points(budget: &Budget) -> Result<Check> {
    let functor = RepresentableFunctor::new(c3(), *budget);
    let r = audit_additivity(&functor, &[point("p"), point("q")])?;
    let ok = r.bijective() && r.certificates_verified && r.coproduct_classes == 1;
    Ok(Check::new(ok, format!("{} = {:?}", r.coproduct_classes, r.factor_classes)))
}

fn base_point_interval(budget: &Budget) -> Result<Check> {
    let functor = RepresentableFunctor::new(iplus(), *budget);
    let u0 = DigraphMap::from_pairs(Arc::new(Digraph::empty()), iplus(), Vec::new())?;
    let r = base_step(&functor, &u0, &[point("k")])?;
    let n = r.state.y().vertex_count();
    Ok(Check::new(n == 1 && r.surjective, format!("Y1 has {n} vertex, surjective {}", r.surjective)))
}

fn inductive_two_points(budget: &Budget) -> Result<Check> {
    let z = point("z");
    let functor = RepresentableFunctor::new(z.clone(), *budget);
    let u = DigraphMap::constant(atoms(&["p", "q"], &[]), z, &l("z"))?;
    let state = StageState { stage: 1, u, tests: vec![point("k")], attached: vec![], unextendable: vec![] };
    let r = inductive_step(&functor, &state)?;
    let again = inductive_step(&functor, &r.state)?;
    let ok = r.certificates.len() == 1 && r.all_verified() && again.fixpoint;
    let check = Check::new(
        ok,
        format!("{} tube, then fixpoint {}", r.certificates.len(), again.fixpoint),
    );
    Ok(match r.certificates.into_iter().next() {
        Some(h) => check.with_certificate(h),
        None => check,
    })
}

fn chain_system() -> Result<FiniteSystem> {
    let mut b = FiniteSystem::builder();
    b.object("X1", ["1"]).object("X2", ["1", "2"]).object("X3", ["1", "2", "3"]);
    b.morphism("X2", "X1", [("1", "1"), ("2", "1")]);
    b.morphism("X3", "X2", [("1", "1"), ("2", "2"), ("3", "2")]);
    b.build()
}

fn limits_sequence(_: &Budget) -> Result<Check> {
    let s = chain_system()?;
    let w = sequence_limit_nonempty(&s)?;
    let text = w.display(&s).to_string();
    Ok(Check::new(w.is_compatible(&s) && text == "X1=1 X2=1 X3=1", text))
}

fn limits_cofinal_top(_: &Budget) -> Result<Check> {
    let s = chain_system()?;
    let mut b = FiniteSystem::builder();
    b.object("X3", ["1", "2", "3"]);
    let r = restriction_check(&b.build()?, &s)?;
    Ok(Check::new(
        r.cofinal && r.injective && r.surjective,
        format!("limits {} -> {}", r.ambient_limit, r.sub_limit),
    ))
}
