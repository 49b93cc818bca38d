//! Inverse limits of finite categories of finite sets.
//!
//! A [`FiniteSystem`] has at most one morphism per ordered pair of objects,
//! so it is given by a partial table of functions. Limits are computed
//! exactly by backtracking; the cofinality, sequence and closure results
//! are exposed as checkable reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A finite set of tokens with a name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Object {
    pub name: String,
    /// Sorted and duplicate free.
    pub tokens: Vec<String>,
}

/// A function between two objects, stored as token indices.
pub type Function = Vec<usize>;

/// A finite category of finite sets with at most one morphism per ordered
/// pair. Identities are always present and the morphism table is closed
/// under composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSystem {
    objects: Vec<Object>,
    homs: BTreeMap<(usize, usize), Function>,
}

type TokenPairs = Vec<(String, String)>;

/// Incremental description of a [`FiniteSystem`].
#[derive(Debug, Clone, Default)]
pub struct SystemBuilder {
    objects: Vec<Object>,
    /// Source, target and token pairs.
    morphisms: Vec<(String, String, TokenPairs)>,
}

impl SystemBuilder {
    pub fn object<I, S>(&mut self, name: &str, tokens: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = tokens.into_iter().map(Into::into).collect();
        self.objects.push(Object { name: name.to_owned(), tokens: set.into_iter().collect() });
        self
    }

    /// A morphism given by `(source token, target token)` pairs.
    pub fn morphism<S: Into<String>>(&mut self, src: &str, dst: &str, pairs: impl IntoIterator<Item = (S, S)>) -> &mut Self {
        let pairs = pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        self.morphisms.push((src.to_owned(), dst.to_owned(), pairs));
        self
    }

    /// Adds identities, closes the table under composition and rejects two
    /// different morphisms between the same pair of objects.
    pub fn build(&self) -> Result<FiniteSystem> {
        let mut names = BTreeMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if names.insert(o.name.clone(), i).is_some() {
                return Err(Error::InvalidSystem(format!("object {} declared twice", o.name)));
            }
        }
        let mut homs: BTreeMap<(usize, usize), Function> = BTreeMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            homs.insert((i, i), (0..o.tokens.len()).collect());
        }
        for (src, dst, pairs) in &self.morphisms {
            let s = *names
                .get(src)
                .ok_or_else(|| Error::InvalidSystem(format!("unknown object {src}")))?;
            let t = *names
                .get(dst)
                .ok_or_else(|| Error::InvalidSystem(format!("unknown object {dst}")))?;
            let f = self.function(s, t, pairs)?;
            insert_hom(&mut homs, &self.objects, s, t, f)?;
        }
        loop {
            let mut added = Vec::new();
            for (&(x, y), f) in &homs {
                for (&(y2, z), g) in homs.range((y, 0)..(y + 1, 0)) {
                    debug_assert_eq!(y, y2);
                    let gf: Function = f.iter().map(|&i| g[i]).collect();
                    match homs.get(&(x, z)) {
                        Some(existing) if *existing != gf => {
                            return Err(conflict(&self.objects, x, z));
                        }
                        Some(_) => {}
                        None => added.push(((x, z), gf)),
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            for ((x, z), f) in added {
                insert_hom(&mut homs, &self.objects, x, z, f)?;
            }
        }
        Ok(FiniteSystem { objects: self.objects.clone(), homs })
    }

    fn function(&self, s: usize, t: usize, pairs: &[(String, String)]) -> Result<Function> {
        let (src, dst) = (&self.objects[s], &self.objects[t]);
        let mut f = vec![None; src.tokens.len()];
        for (a, b) in pairs {
            let i = token_index(src, a)?;
            let j = token_index(dst, b)?;
            if f[i].is_some_and(|old| old != j) {
                return Err(Error::InvalidSystem(format!(
                    "morphism {} -> {} assigns {a} twice",
                    src.name, dst.name
                )));
            }
            f[i] = Some(j);
        }
        f.into_iter()
            .enumerate()
            .map(|(i, j)| {
                j.ok_or_else(|| {
                    Error::InvalidSystem(format!(
                        "morphism {} -> {} leaves {} unmapped",
                        src.name, dst.name, src.tokens[i]
                    ))
                })
            })
            .collect()
    }
}

fn token_index(o: &Object, tok: &str) -> Result<usize> {
    o.tokens
        .binary_search_by(|t| t.as_str().cmp(tok))
        .map_err(|_| Error::InvalidSystem(format!("{tok} is not a token of {}", o.name)))
}

fn conflict(objects: &[Object], x: usize, y: usize) -> Error {
    Error::InvalidSystem(format!(
        "two different morphisms {} -> {}",
        objects[x].name, objects[y].name
    ))
}

fn insert_hom(
    homs: &mut BTreeMap<(usize, usize), Function>,
    objects: &[Object],
    x: usize,
    y: usize,
    f: Function,
) -> Result<()> {
    match homs.get(&(x, y)) {
        Some(existing) if *existing != f => Err(conflict(objects, x, y)),
        _ => {
            homs.insert((x, y), f);
            Ok(())
        }
    }
}

impl FiniteSystem {
    pub fn builder() -> SystemBuilder {
        SystemBuilder::default()
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.name == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> Option<&Function> {
        self.homs.get(&(x, y))
    }

    /// All morphisms, identities included, keyed by `(source, target)`.
    pub fn homs(&self) -> &BTreeMap<(usize, usize), Function> {
        &self.homs
    }

    /// Non-identity morphisms.
    pub fn proper_homs(&self) -> impl Iterator<Item = (&(usize, usize), &Function)> + '_ {
        self.homs.iter().filter(|((x, y), _)| x != y)
    }

    fn has_common_source(&self, x: usize, y: usize) -> bool {
        (0..self.objects.len()).any(|z| self.homs.contains_key(&(z, x)) && self.homs.contains_key(&(z, y)))
    }

    fn is_surjective(&self, y: usize, f: &Function) -> bool {
        let hit: BTreeSet<usize> = f.iter().copied().collect();
        hit.len() == self.objects[y].tokens.len()
    }
}

/// Axiom and shape checks for a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemReport {
    /// Every ordered pair of objects has a common source.
    pub axiom2: bool,
    /// First pair without a common source.
    pub axiom2_witness: Option<(String, String)>,
    pub all_surjective: bool,
    pub all_nonempty: bool,
}

impl SystemReport {
    pub fn ok(&self) -> bool {
        self.axiom2 && self.all_surjective && self.all_nonempty
    }
}

/// Axiom (1) holds by construction; this reports Axiom (2), surjectivity
/// of the morphisms and nonemptiness of the objects.
pub fn validate_system(s: &FiniteSystem) -> SystemReport {
    let n = s.objects.len();
    let axiom2_witness = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| !s.has_common_source(x, y))
        .map(|(x, y)| (s.objects[x].name.clone(), s.objects[y].name.clone()));
    SystemReport {
        axiom2: axiom2_witness.is_none(),
        axiom2_witness,
        all_surjective: s.homs.iter().all(|(&(_, y), f)| s.is_surjective(y, f)),
        all_nonempty: s.objects.iter().all(|o| !o.tokens.is_empty()),
    }
}

/// A compatible choice of one token per object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LimitElement(pub Vec<usize>);

impl LimitElement {
    pub fn is_compatible(&self, s: &FiniteSystem) -> bool {
        self.0.len() == s.objects.len() && s.homs.iter().all(|(&(x, y), f)| f[self.0[x]] == self.0[y])
    }

    pub fn display<'a>(&'a self, s: &'a FiniteSystem) -> impl fmt::Display + 'a {
        DisplayElement(self, s)
    }
}

struct DisplayElement<'a>(&'a LimitElement, &'a FiniteSystem);

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .1
            .objects
            .iter()
            .zip(&self.0 .0)
            .map(|(o, &i)| format!("{}={}", o.name, o.tokens[i]))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Every compatible family, in lexicographic order of token indices.
///
/// Objects are assigned in order; a choice is pruned as soon as a morphism
/// between assigned objects disagrees, and values forced by a morphism from
/// an assigned object are not branched on.
pub fn inverse_limit(s: &FiniteSystem) -> Vec<LimitElement> {
    let mut out = Vec::new();
    let mut choice = vec![0usize; s.objects.len()];
    limit_rec(s, 0, &mut choice, &mut out);
    out
}

fn limit_rec(s: &FiniteSystem, k: usize, choice: &mut Vec<usize>, out: &mut Vec<LimitElement>) {
    if k == s.objects.len() {
        out.push(LimitElement(choice.clone()));
        return;
    }
    let forced = (0..k).find_map(|x| s.homs.get(&(x, k)).map(|f| f[choice[x]]));
    let options: Vec<usize> = match forced {
        Some(t) => vec![t],
        None => (0..s.objects[k].tokens.len()).collect(),
    };
    for t in options {
        choice[k] = t;
        let ok = (0..k).all(|x| {
            s.homs.get(&(x, k)).is_none_or(|f| f[choice[x]] == t)
                && s.homs.get(&(k, x)).is_none_or(|f| f[t] == choice[x])
        });
        if ok {
            limit_rec(s, k + 1, choice, out);
        }
    }
}

/// Positions in `ambient` of the objects of `sub`, checking that `sub` is a
/// subcategory: same-named objects with equal token sets, and every
/// morphism of `sub` present in `ambient`.
fn embed(sub: &FiniteSystem, ambient: &FiniteSystem) -> Result<Vec<usize>> {
    let pos: Vec<usize> = sub
        .objects
        .iter()
        .map(|o| {
            let i = ambient
                .object_index(&o.name)
                .ok_or_else(|| Error::NotSubcategory(format!("object {} is missing", o.name)))?;
            if ambient.objects[i].tokens != o.tokens {
                return Err(Error::NotSubcategory(format!("object {} has different tokens", o.name)));
            }
            Ok(i)
        })
        .collect::<Result<_>>()?;
    for (&(x, y), f) in &sub.homs {
        if ambient.homs.get(&(pos[x], pos[y])) != Some(f) {
            return Err(Error::NotSubcategory(format!(
                "morphism {} -> {} is not in the ambient system",
                sub.objects[x].name, sub.objects[y].name
            )));
        }
    }
    Ok(pos)
}

/// Every ambient object receives an ambient morphism from some object of
/// `sub`.
pub fn is_cofinal(sub: &FiniteSystem, ambient: &FiniteSystem) -> Result<bool> {
    let pos = embed(sub, ambient)?;
    Ok((0..ambient.objects.len()).all(|x| pos.iter().any(|&z| ambient.homs.contains_key(&(z, x)))))
}

/// Outcome of comparing the two limits under restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionReport {
    pub cofinal: bool,
    /// `sub` contains every ambient morphism between its objects.
    pub full: bool,
    pub ambient_limit: usize,
    pub sub_limit: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl RestrictionReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Computes both limits and the restriction map between them.
pub fn restriction_check(sub: &FiniteSystem, ambient: &FiniteSystem) -> Result<RestrictionReport> {
    let pos = embed(sub, ambient)?;
    let cofinal = is_cofinal(sub, ambient)?;
    let full = pos.iter().enumerate().all(|(i, &x)| {
        pos.iter()
            .enumerate()
            .all(|(j, &y)| !ambient.homs.contains_key(&(x, y)) || sub.homs.contains_key(&(i, j)))
    });
    let big = inverse_limit(ambient);
    let small: BTreeSet<LimitElement> = inverse_limit(sub).into_iter().collect();
    let images: Vec<LimitElement> = big
        .iter()
        .map(|e| LimitElement(pos.iter().map(|&x| e.0[x]).collect()))
        .collect();
    let distinct: BTreeSet<&LimitElement> = images.iter().collect();
    Ok(RestrictionReport {
        cofinal,
        full,
        ambient_limit: big.len(),
        sub_limit: small.len(),
        injective: distinct.len() == images.len(),
        surjective: small.iter().all(|e| distinct.contains(e)),
    })
}

/// Witness for a truncated sequence `X_1 <- X_2 <- ... <- X_n`, listed in
/// that order, built by choosing the least token of `X_1` and then the
/// least preimage at every later stage.
pub fn sequence_limit_nonempty(s: &FiniteSystem) -> Result<LimitElement> {
    let n = s.objects.len();
    if let Some(o) = s.objects.iter().find(|o| o.tokens.is_empty()) {
        return Err(Error::PreconditionFailed(format!("object {} is empty", o.name)));
    }
    if let Some((&(x, y), _)) = s.proper_homs().find(|(&(x, y), _)| x < y) {
        return Err(Error::PreconditionFailed(format!(
            "morphism {} -> {} goes up the sequence",
            s.objects[x].name, s.objects[y].name
        )));
    }
    let mut choice = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            choice.push(0);
            continue;
        }
        let f = s.hom(k, k - 1).ok_or_else(|| {
            Error::PreconditionFailed(format!(
                "no morphism {} -> {}",
                s.objects[k].name,
                s.objects[k - 1].name
            ))
        })?;
        if !s.is_surjective(k - 1, f) {
            return Err(Error::PreconditionFailed(format!(
                "morphism {} -> {} is not onto",
                s.objects[k].name,
                s.objects[k - 1].name
            )));
        }
        let preimage = f.iter().position(|&t| t == choice[k - 1]).expect("surjective");
        choice.push(preimage);
    }
    let e = LimitElement(choice);
    debug_assert!(e.is_compatible(s));
    Ok(e)
}

/// The category `C̄`: same objects, with `f: X -> Y` whenever `f∘a = b` for
/// morphisms `a: Z -> X`, `b: Z -> Y` of `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub homs: BTreeMap<(usize, usize), Vec<Function>>,
    /// At most one function per ordered pair.
    pub axiom1: bool,
    pub axiom2: bool,
    pub all_onto: bool,
    /// Every morphism of `C` appears in `C̄`.
    pub contains_original: bool,
    pub composition_closed: bool,
}

impl Closure {
    pub fn ok(&self) -> bool {
        self.axiom1 && self.axiom2 && self.all_onto && self.contains_original && self.composition_closed
    }

    /// Number of pairs where `C̄` has a morphism and `C` does not.
    pub fn added(&self, s: &FiniteSystem) -> usize {
        self.homs.keys().filter(|k| !s.homs.contains_key(k)).count()
    }
}

/// Builds `C̄` from a system satisfying both axioms with surjective
/// morphisms, and checks the claims made about it.
pub fn closure_category(s: &FiniteSystem) -> Result<Closure> {
    let report = validate_system(s);
    if !report.ok() {
        return Err(Error::PreconditionFailed(format!(
            "closure needs both axioms, onto morphisms and nonempty objects: {report:?}"
        )));
    }
    let n = s.objects.len();
    let mut homs: BTreeMap<(usize, usize), Vec<Function>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let mut found: BTreeSet<Function> = BTreeSet::new();
            for z in 0..n {
                let (Some(a), Some(b)) = (s.hom(z, x), s.hom(z, y)) else {
                    continue;
                };
                // `a` is onto, so `f(a(t)) = b(t)` determines `f` when consistent.
                let mut f = vec![None; s.objects[x].tokens.len()];
                let consistent = a.iter().zip(b).all(|(&ai, &bi)| match f[ai] {
                    None => {
                        f[ai] = Some(bi);
                        true
                    }
                    Some(old) => old == bi,
                });
                if consistent {
                    found.insert(f.into_iter().map(|v| v.expect("a is onto")).collect());
                }
            }
            if !found.is_empty() {
                homs.insert((x, y), found.into_iter().collect());
            }
        }
    }
    let axiom1 = homs.values().all(|fs| fs.len() == 1);
    let axiom2 = (0..n).all(|x| {
        (0..n).all(|y| (0..n).any(|z| homs.contains_key(&(z, x)) && homs.contains_key(&(z, y))))
    });
    let all_onto = homs
        .iter()
        .all(|(&(_, y), fs)| fs.iter().all(|f| s.is_surjective(y, f)));
    let contains_original = s
        .homs
        .iter()
        .all(|(k, f)| homs.get(k).is_some_and(|fs| fs.contains(f)));
    let mut composition_closed = true;
    for (&(x, y), fs) in &homs {
        for (&(_, z), gs) in homs.range((y, 0)..(y + 1, 0)) {
            for f in fs {
                for g in gs {
                    let gf: Function = f.iter().map(|&i| g[i]).collect();
                    if !homs.get(&(x, z)).is_some_and(|hs| hs.contains(&gf)) {
                        composition_closed = false;
                    }
                }
            }
        }
    }
    Ok(Closure { homs, axiom1, axiom2, all_onto, contains_original, composition_closed })
}
