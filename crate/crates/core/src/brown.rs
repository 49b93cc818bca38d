//! Finite-stage representability machinery for the functor `[-, Z]`.
//!
//! [`RepresentableFunctor`] sends a finite digraph `K` to the set of
//! homotopy classes `[K, Z]` and a map to its pullback. Constant-map
//! classes stand in for the zero element. The auditors compute both sides
//! of the additivity, Mayer–Vietoris and cofiber-exactness statements by
//! enumeration, and [`base_step`] / [`inductive_step`] build the stages
//! `Y_1 ⊆ Y_2 ⊆ ...` with a classifying map `u: Y_n -> Z`.

use std::borrow::Cow;
use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructions::{attach_tube, disjoint_union, intersection, paper_cofiber, union};
use crate::digraph::Digraph;
use crate::digraph::Orientation::{Minus, Plus};
use crate::error::{Error, Result};
use crate::format::{map_pairs, DigraphDoc};
use crate::homotopy::space::MapSpace;
use crate::homotopy::{are_homotopic, cofiber_nullhomotopy, homotopy_classes, ClassTable, Homotopy};
use crate::label::VertexLabel;
use crate::map::DigraphMap;
use crate::Budget;

/// `K ↦ [K, Z]` with memoized class tables.
pub struct RepresentableFunctor {
    target: Arc<Digraph>,
    budget: Budget,
    memo: RefCell<HashMap<Digraph, Arc<ClassTable>>>,
}

impl RepresentableFunctor {
    pub fn new(target: Arc<Digraph>, budget: Budget) -> Self {
        RepresentableFunctor { target, budget, memo: RefCell::new(HashMap::new()) }
    }

    pub fn target(&self) -> &Arc<Digraph> {
        &self.target
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// The class table of `[K, Z]`.
    pub fn classes(&self, k: &Arc<Digraph>) -> Result<Arc<ClassTable>> {
        if let Some(t) = self.memo.borrow().get(&**k) {
            return Ok(t.clone());
        }
        let t = Arc::new(homotopy_classes(k, &self.target, &self.budget)?);
        self.memo.borrow_mut().insert((**k).clone(), t.clone());
        Ok(t)
    }

    /// Class of a map `K -> Z`.
    pub fn class_of(&self, m: &DigraphMap) -> Result<usize> {
        if **m.codomain() != *self.target {
            return Err(Error::SignatureMismatch);
        }
        let table = self.classes(m.domain())?;
        m.require_valid()?;
        Ok(table.class_of(m).expect("valid map into the target"))
    }

    /// `m^*`: the class of `c∘m` in `[K, Z]` for `m: K -> K'` and a class
    /// `c` of `[K', Z]`, computed from the least representative of `c`.
    pub fn pullback(&self, m: &DigraphMap, c: usize) -> Result<usize> {
        let rep = self.classes(m.codomain())?.representative(c).clone();
        self.class_of(&rep.after(m)?)
    }

    /// Whether every member of every class of `[K', Z]` pulls back along `m`
    /// to the same class.
    pub fn is_well_defined_on(&self, m: &DigraphMap) -> Result<bool> {
        let table = self.classes(m.codomain())?;
        for c in 0..table.class_count() {
            let want = self.pullback(m, c)?;
            for member in table.members(c) {
                if self.class_of(&member.after(m)?)? != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn is_constant_class(&self, k: &Arc<Digraph>, c: usize) -> Result<bool> {
        Ok(self.classes(k)?.is_constant_class(c))
    }
}

/// `T_y[f] = f^*(y)` for `y = [u]`: the class of `u∘f` in `[K, Z]`.
pub fn yoneda_transform(functor: &RepresentableFunctor, u: &DigraphMap, f: &DigraphMap) -> Result<usize> {
    functor.class_of(&u.after(f)?)
}

/// Homotopy on a disjoint union `⨆ K_k` (vertices `Pair(k, v)`) that runs
/// the given component homotopies one after another, each component
/// standing still while the others move.
pub fn interleave(coproduct: &Arc<Digraph>, parts: &[Homotopy]) -> Result<Homotopy> {
    let codomain = parts
        .first()
        .map(|h| h.start().codomain().clone())
        .ok_or_else(|| Error::PreconditionFailed("no component homotopies".into()))?;
    let mut stage = vec![0usize; parts.len()];
    let assemble = |stage: &[usize]| {
        let pairs: Result<Vec<(VertexLabel, VertexLabel)>> = coproduct
            .vertices()
            .map(|v| {
                let (k, x) = v
                    .split_pair()
                    .ok_or_else(|| Error::UnknownLabel(v.clone()))?;
                let k: usize = k
                    .as_str()
                    .parse()
                    .map_err(|_| Error::UnknownLabel(v.clone()))?;
                let part = parts.get(k).ok_or_else(|| Error::UnknownLabel(v.clone()))?;
                let img = part.maps()[stage[k]]
                    .image(&x)
                    .ok_or_else(|| Error::UnknownSource(x.clone()))?;
                Ok((v.clone(), img.clone()))
            })
            .collect();
        DigraphMap::from_pairs(coproduct.clone(), codomain.clone(), pairs?)
    };
    let mut maps = vec![assemble(&stage)?];
    let mut word = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        for &o in part.word() {
            stage[k] += 1;
            word.push(o);
            maps.push(assemble(&stage)?);
        }
    }
    Homotopy::new(word, maps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivityReport {
    pub coproduct_classes: usize,
    pub factor_classes: Vec<usize>,
    pub product_size: usize,
    pub injective: bool,
    pub surjective: bool,
    /// For every class on the coproduct, an interleaved certificate joins
    /// its representative to the map assembled from factor representatives.
    pub certificates_verified: bool,
}

impl AdditivityReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective && self.coproduct_classes == self.product_size
    }
}

/// Compares `[⨆ parts, Z]` with `∏ [part_k, Z]` under restriction.
pub fn audit_additivity(functor: &RepresentableFunctor, parts: &[Arc<Digraph>]) -> Result<AdditivityReport> {
    let du = disjoint_union(parts);
    let table = functor.classes(&du.digraph)?;
    let factors: Vec<Arc<ClassTable>> = parts.iter().map(|p| functor.classes(p)).collect::<Result<_>>()?;
    let inclusions: Vec<&DigraphMap> = (0..parts.len()).map(|k| du.map(&format!("inclusion_{k}"))).collect();
    let mut tuples = BTreeSet::new();
    let mut certificates_verified = true;
    for c in 0..table.class_count() {
        let tuple: Vec<usize> = inclusions.iter().map(|m| functor.pullback(m, c)).collect::<Result<_>>()?;
        if !parts.is_empty() {
            let rep = table.representative(c);
            let mut legs = Vec::with_capacity(parts.len());
            for (k, m) in inclusions.iter().enumerate() {
                let target = factors[k].representative(tuple[k]);
                let leg = are_homotopic(&rep.after(m)?, target, &functor.budget)?
                    .expect("same class");
                legs.push(leg);
            }
            let h = interleave(&du.digraph, &legs)?;
            certificates_verified &= h.start() == rep && h.verify();
        }
        tuples.insert(tuple);
    }
    let product_size = factors.iter().map(|t| t.class_count()).product();
    Ok(AdditivityReport {
        coproduct_classes: table.class_count(),
        factor_classes: factors.iter().map(|t| t.class_count()).collect(),
        product_size,
        injective: tuples.len() == table.class_count(),
        surjective: tuples.len() == product_size,
        certificates_verified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MayerVietorisReport {
    pub union_classes: usize,
    pub first_classes: usize,
    pub second_classes: usize,
    pub intersection_classes: usize,
    /// Pairs of classes on `G1`, `G2` that agree on `G1 ∩ G2`.
    pub fibered_product: usize,
    /// Distinct pairs hit by restriction from `G1 ∪ G2`.
    pub image: usize,
    pub lands_in_fibered_product: bool,
    /// The restriction-induced map onto the fibered product is surjective.
    pub onto: bool,
}

/// Restriction `[G1 ∪ G2, Z] -> [G1, Z] ×_{[G1 ∩ G2, Z]} [G2, Z]`.
pub fn audit_mayer_vietoris(
    functor: &RepresentableFunctor,
    g1: &Arc<Digraph>,
    g2: &Arc<Digraph>,
) -> Result<MayerVietorisReport> {
    let whole = Arc::new(union(g1, g2));
    let meet = Arc::new(intersection(g1, g2));
    let to_whole_1 = DigraphMap::inclusion(g1.clone(), whole.clone())?;
    let to_whole_2 = DigraphMap::inclusion(g2.clone(), whole.clone())?;
    let meet_1 = DigraphMap::inclusion(meet.clone(), g1.clone())?;
    let meet_2 = DigraphMap::inclusion(meet.clone(), g2.clone())?;
    let t_whole = functor.classes(&whole)?;
    let (t1, t2) = (functor.classes(g1)?, functor.classes(g2)?);
    let t_meet = functor.classes(&meet)?;

    let mut fibered = BTreeSet::new();
    for a in 0..t1.class_count() {
        let on_meet = functor.pullback(&meet_1, a)?;
        for b in 0..t2.class_count() {
            if functor.pullback(&meet_2, b)? == on_meet {
                fibered.insert((a, b));
            }
        }
    }
    let mut image = BTreeSet::new();
    for c in 0..t_whole.class_count() {
        image.insert((functor.pullback(&to_whole_1, c)?, functor.pullback(&to_whole_2, c)?));
    }
    Ok(MayerVietorisReport {
        union_classes: t_whole.class_count(),
        first_classes: t1.class_count(),
        second_classes: t2.class_count(),
        intersection_classes: t_meet.class_count(),
        fibered_product: fibered.len(),
        image: image.len(),
        lands_in_fibered_product: image.is_subset(&fibered),
        onto: fibered.is_subset(&image),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CofiberReport {
    pub cofiber_classes: usize,
    pub codomain_classes: usize,
    pub domain_classes: usize,
    /// Every `(i∘f)^* c` is a constant-map class.
    pub forward: bool,
    /// Word of the nullhomotopy `i∘f ≃ const Apex` in `C(f)`.
    pub nullhomotopy: String,
    /// Classes `x` of `[H, Z]` with `f^* x` constant.
    pub kernel: Vec<usize>,
    /// Classes `i^* c`.
    pub image: Vec<usize>,
    /// `kernel ⊆ image`.
    pub backward: bool,
}

impl CofiberReport {
    pub fn exact(&self) -> bool {
        self.forward && self.backward
    }
}

/// Checks exactness of `[G, Z] <- [H, Z] <- [C(f), Z]` at `[H, Z]`, with
/// constant-map classes in the role of zero.
pub fn audit_cofiber_exactness(functor: &RepresentableFunctor, f: &DigraphMap) -> Result<CofiberReport> {
    let cof = paper_cofiber(f)?;
    let i = cof.map("inclusion");
    let i_f = i.after(f)?;
    let null = cofiber_nullhomotopy(f, &cof)?;
    debug_assert!(null.verify());
    let (g, h) = (f.domain(), f.codomain());
    let t_c = functor.classes(&cof.digraph)?;
    let t_h = functor.classes(h)?;
    let t_g = functor.classes(g)?;

    let mut forward = true;
    let mut image = BTreeSet::new();
    for c in 0..t_c.class_count() {
        forward &= functor.is_constant_class(g, functor.pullback(&i_f, c)?)?;
        image.insert(functor.pullback(i, c)?);
    }
    let mut kernel = Vec::new();
    for x in 0..t_h.class_count() {
        if functor.is_constant_class(g, functor.pullback(f, x)?)? {
            kernel.push(x);
        }
    }
    Ok(CofiberReport {
        cofiber_classes: t_c.class_count(),
        codomain_classes: t_h.class_count(),
        domain_classes: t_g.class_count(),
        forward,
        nullhomotopy: null.word_string(),
        backward: kernel.iter().all(|x| image.contains(x)),
        kernel,
        image: image.into_iter().collect(),
    })
}

/// The chain `G ⊔ H -> G ∪ H -> C(f) -> C(g)` and the exactness audits of
/// its two cofiber steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub fold: CofiberReport,
    pub inclusion: CofiberReport,
}

pub fn audit_cofiber_chain(functor: &RepresentableFunctor, g: &Arc<Digraph>, h: &Arc<Digraph>) -> Result<ChainReport> {
    let du = disjoint_union(&[g.clone(), h.clone()]);
    let whole = Arc::new(union(g, h));
    let fold = DigraphMap::from_fn(du.digraph.clone(), whole, |v| {
        v.split_pair().expect("disjoint union label").1
    })?;
    fold.require_valid()?;
    let cof = paper_cofiber(&fold)?;
    let next = cof.map("inclusion").clone();
    Ok(ChainReport {
        fold: audit_cofiber_exactness(functor, &fold)?,
        inclusion: audit_cofiber_exactness(functor, &next)?,
    })
}

/// One attached mapping tube.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub stage: usize,
    pub test: usize,
    pub tag: VertexLabel,
    pub f: Vec<(VertexLabel, VertexLabel)>,
    pub g: Vec<(VertexLabel, VertexLabel)>,
    /// `true` when `u(Src(v)) = u(f(v))` already worked.
    pub direct_extension: bool,
    /// Word of the certificate `i∘f ≃ i∘g` in the next stage.
    pub word: String,
}

/// A pair with `u∘f ≃ u∘g` over which `u` does not extend.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unextendable {
    pub stage: usize,
    pub test: usize,
    pub f: Vec<(VertexLabel, VertexLabel)>,
    pub g: Vec<(VertexLabel, VertexLabel)>,
}

/// Stage `Y_n` with its classifying map `u: Y_n -> Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageState {
    pub stage: usize,
    pub u: DigraphMap,
    pub tests: Vec<Arc<Digraph>>,
    pub attached: Vec<Attachment>,
    pub unextendable: Vec<Unextendable>,
}

#[derive(Serialize, Deserialize)]
struct StageDoc {
    stage: usize,
    target: DigraphDoc,
    y: DigraphDoc,
    u: Vec<(VertexLabel, VertexLabel)>,
    tests: Vec<DigraphDoc>,
    attached: Vec<Attachment>,
    unextendable: Vec<Unextendable>,
}

impl StageState {
    pub fn y(&self) -> &Arc<Digraph> {
        self.u.domain()
    }

    pub fn target(&self) -> &Arc<Digraph> {
        self.u.codomain()
    }

    pub fn to_json(&self) -> String {
        let doc = StageDoc {
            stage: self.stage,
            target: DigraphDoc::from(&**self.target()),
            y: DigraphDoc::from(&**self.y()),
            u: map_pairs(&self.u),
            tests: self.tests.iter().map(|k| DigraphDoc::from(&**k)).collect(),
            attached: self.attached.clone(),
            unextendable: self.unextendable.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<StageState> {
        let doc: StageDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let target = Arc::new(doc.target.to_digraph()?);
        let y = Arc::new(doc.y.to_digraph()?);
        let u = DigraphMap::checked(y, target, doc.u)?;
        let tests = doc
            .tests
            .iter()
            .map(|k| k.to_digraph().map(Arc::new))
            .collect::<Result<_>>()?;
        Ok(StageState { stage: doc.stage, u, tests, attached: doc.attached, unextendable: doc.unextendable })
    }
}

/// Result of [`base_step`].
#[derive(Debug, Clone)]
pub struct BaseReport {
    pub state: StageState,
    /// Every class of every `[K, Z]` is `T_y` of some copy inclusion.
    pub surjective: bool,
}

/// `Y_1 = Y_0 ⊔` one copy of `K_i` per class of `[K_i, Z]`, the copy for
/// class `j` labelled `Pair(K<i>_<j>, v)` and mapped by the class's least
/// representative. `u0: Y_0 -> Z` is kept on `Y_0`.
pub fn base_step(functor: &RepresentableFunctor, u0: &DigraphMap, tests: &[Arc<Digraph>]) -> Result<BaseReport> {
    if **u0.codomain() != **functor.target() {
        return Err(Error::SignatureMismatch);
    }
    u0.require_valid()?;
    let mut vertices: Vec<VertexLabel> = u0.domain().vertices().cloned().collect();
    let mut edges: Vec<(VertexLabel, VertexLabel)> =
        u0.domain().edges().map(|(x, y)| (x.clone(), y.clone())).collect();
    let mut images = map_pairs(u0);
    let mut copies = Vec::new();
    for (i, k) in tests.iter().enumerate() {
        let table = functor.classes(k)?;
        for j in 0..table.class_count() {
            let tag = VertexLabel::atom(&format!("K{i}_{j}"))?;
            let name = |v: &VertexLabel| VertexLabel::pair(&tag, v);
            let rep = table.representative(j);
            vertices.extend(k.vertices().map(name));
            edges.extend(k.edges().map(|(x, y)| (name(x), name(y))));
            images.extend(rep.pairs().map(|(v, z)| (name(v), z.clone())));
            copies.push((i, j, tag));
        }
    }
    let expected = vertices.len();
    let y1 = Arc::new(Digraph::new(vertices, edges)?);
    if y1.vertex_count() != expected {
        return Err(Error::PreconditionFailed("copy labels collide with Y_0".into()));
    }
    let u1 = DigraphMap::checked(y1.clone(), functor.target().clone(), images)?;

    let mut surjective = true;
    for (i, k) in tests.iter().enumerate() {
        let table = functor.classes(k)?;
        let mut hit = BTreeSet::new();
        for (_, j, tag) in copies.iter().filter(|(ci, _, _)| *ci == i) {
            let incl = DigraphMap::from_fn(k.clone(), y1.clone(), |v| VertexLabel::pair(tag, v))?;
            let c = yoneda_transform(functor, &u1, &incl)?;
            surjective &= c == *j;
            hit.insert(c);
        }
        surjective &= hit.len() == table.class_count();
    }
    Ok(BaseReport {
        state: StageState { stage: 1, u: u1, tests: tests.to_vec(), attached: Vec::new(), unextendable: Vec::new() },
        surjective,
    })
}

/// Result of [`inductive_step`].
#[derive(Debug, Clone)]
pub struct StepReport {
    pub state: StageState,
    /// `i∘f ≃ i∘g` in the new stage, one per attachment of this step.
    pub certificates: Vec<Homotopy>,
    /// Nothing was attached and nothing was unextendable.
    pub fixpoint: bool,
}

impl StepReport {
    /// Fails with the first pair of this step over which `u` did not
    /// extend.
    pub fn require_extended(&self) -> Result<()> {
        match self.state.unextendable.iter().find(|p| p.stage == self.state.stage - 1) {
            Some(p) => Err(Error::ExtensionFailed {
                test: p.test,
                f: render_pairs(&p.f),
                g: render_pairs(&p.g),
            }),
            None => Ok(()),
        }
    }

    pub fn all_verified(&self) -> bool {
        self.certificates.iter().all(Homotopy::verify)
    }
}

fn render_pairs(pairs: &[(VertexLabel, VertexLabel)]) -> String {
    let parts: Vec<String> = pairs.iter().map(|(x, y)| format!("{x}->{y}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Extends `u` from `old` (a sub-digraph of `new`) to `new`. New vertices
/// first try `u(Src(v)) = u(f(v))` via `preferred`; otherwise every
/// assignment of the new vertices is searched.
fn extend_u(u: &DigraphMap, new: &Arc<Digraph>, preferred: &[(VertexLabel, VertexLabel)]) -> Result<Option<(DigraphMap, bool)>> {
    let mut pairs = map_pairs(u);
    pairs.extend(preferred.iter().cloned());
    let direct = DigraphMap::from_pairs(new.clone(), u.codomain().clone(), pairs)?;
    if direct.is_valid() {
        return Ok(Some((direct, true)));
    }
    let space = MapSpace::new(new.clone(), u.codomain().clone());
    let all: Vec<u32> = (0..u.codomain().vertex_count() as u32).collect();
    let fixed: Vec<Option<u32>> = new
        .vertices()
        .map(|v| u.image(v).map(|z| u.codomain().position(z).expect("codomain vertex")))
        .collect();
    let mut found = None;
    let _ = space.search(
        |v| match fixed[v] {
            Some(t) => Cow::Owned(vec![t]),
            None => Cow::Borrowed(all.as_slice()),
        },
        |img| {
            found = Some(img.to_vec());
            ControlFlow::Break(())
        },
    );
    Ok(found.map(|img| (DigraphMap::from_positions(new.clone(), u.codomain().clone(), img), false)))
}

/// Attaches a mapping tube for every pair of distinct classes
/// `[f] != [g]` in `[K, Y_n]` with `u∘f ≃ u∘g`, for every test `K`, and
/// extends `u` over each tube.
///
/// Pairs are taken over least class representatives in class order. A pair
/// over which `u` has no extension is logged in `unextendable` and its tube
/// is not kept.
pub fn inductive_step(functor: &RepresentableFunctor, state: &StageState) -> Result<StepReport> {
    if **state.target() != **functor.target() {
        return Err(Error::SignatureMismatch);
    }
    let budget = functor.budget();
    let yn = state.y().clone();
    let mut u = state.u.clone();
    let mut attached = Vec::new();
    let mut unextendable = Vec::new();
    let mut pending: Vec<(DigraphMap, DigraphMap, DigraphMap)> = Vec::new();
    for (t, k) in state.tests.iter().enumerate() {
        let table = homotopy_classes(k, &yn, &budget)?;
        let reps: Vec<&DigraphMap> = table.representatives().collect();
        let u_classes: Vec<usize> = reps
            .iter()
            .map(|f| functor.class_of(&state.u.after(f)?))
            .collect::<Result<_>>()?;
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                if u_classes[a] != u_classes[b] {
                    continue;
                }
                let (f, g) = (reps[a], reps[b]);
                let tag = VertexLabel::atom(&format!("T{}_{}", state.stage, attached.len() + unextendable.len()))?;
                let (fc, gc) = (f.with_codomain(u.domain().clone())?, g.with_codomain(u.domain().clone())?);
                let tube = attach_tube(&fc, &gc, &tag)?;
                let src = tube.map("src_inclusion");
                let preferred: Vec<(VertexLabel, VertexLabel)> = k
                    .vertices()
                    .map(|v| {
                        let z = state.u.image(f.image(v).expect("total")).expect("total");
                        (src.image(v).expect("total").clone(), z.clone())
                    })
                    .collect();
                match extend_u(&u, &tube.digraph, &preferred)? {
                    Some((next, direct)) => {
                        u = next;
                        pending.push((f.clone(), g.clone(), src.clone()));
                        attached.push(Attachment {
                            stage: state.stage,
                            test: t,
                            tag,
                            f: map_pairs(f),
                            g: map_pairs(g),
                            direct_extension: direct,
                            word: String::new(),
                        });
                    }
                    None => unextendable.push(Unextendable {
                        stage: state.stage,
                        test: t,
                        f: map_pairs(f),
                        g: map_pairs(g),
                    }),
                }
            }
        }
    }
    let y_next = u.domain().clone();
    let incl = DigraphMap::inclusion(yn.clone(), y_next.clone())?;
    let mut certificates = Vec::with_capacity(pending.len());
    for ((f, g, src), record) in pending.iter().zip(attached.iter_mut()) {
        // Each tube was attached to an intermediate stage; push its source
        // copy into the final one.
        let src = DigraphMap::inclusion(src.codomain().clone(), y_next.clone())?.after(src)?;
        let h = Homotopy::new(vec![Minus, Plus], vec![incl.after(f)?, src, incl.after(g)?])?;
        record.word = h.word_string();
        certificates.push(h);
    }
    let fixpoint = attached.is_empty() && unextendable.is_empty();
    let mut log = state.attached.clone();
    log.extend(attached);
    let mut failed = state.unextendable.clone();
    failed.extend(unextendable);
    Ok(StepReport {
        state: StageState { stage: state.stage + 1, u, tests: state.tests.clone(), attached: log, unextendable: failed },
        certificates,
        fixpoint,
    })
}

/// Whether `u_*: [K, Y_n] -> [K, Z]` is injective for every test `K`.
pub fn injective_on_tests(functor: &RepresentableFunctor, state: &StageState) -> Result<bool> {
    for k in &state.tests {
        let table = homotopy_classes(k, state.y(), &functor.budget())?;
        let mut seen = BTreeSet::new();
        for f in table.representatives() {
            if !seen.insert(functor.class_of(&state.u.after(f)?)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
