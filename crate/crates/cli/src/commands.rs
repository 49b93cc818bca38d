use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use diho::brown::{
    audit_additivity, audit_cofiber_chain, audit_cofiber_exactness, audit_mayer_vietoris, base_step,
    inductive_step, RepresentableFunctor, StageState,
};
use diho::constructions::{
    box_product, categorical_cofiber, cone, disjoint_union, extended_cone, extended_mapping_cylinder, gat,
    identification, intersection, mapping_cylinder, mapping_tube, paper_cofiber, quotient, reduced_cylinder,
    tensor_product, tube_union, ConstructionResult, GatGlue, IdentificationSpec,
};
use diho::dot::to_dot;
use diho::format::{parse_system, read_digraph, read_map, write_digraph, write_homotopy, write_system};
use diho::homotopy::{
    are_equivalent, are_homotopic, check_hep, enumerate_maps, homotopy_classes, is_contractible, HepOptions,
    Homotopy,
};
use diho::limits::{closure_category, inverse_limit, restriction_check};
use diho::{Budget, Digraph, DigraphMap, Result};
use serde::Serialize;

use crate::args::{AuditCommand, BrownCommand, CofiberStyle, Command, Glue, Output};
use crate::fixtures;

/// Answer of a command: `Yes` exits 0, `No` exits 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
}

impl Outcome {
    fn from_bool(b: bool) -> Outcome {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }
}

pub struct Ctx {
    pub budget: Budget,
    pub quiet: bool,
}

impl Ctx {
    fn say(&self, line: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", line.as_ref());
        }
    }
}

fn digraph(path: &Path) -> Result<Arc<Digraph>> {
    read_digraph(path).map(Arc::new)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

fn emit(ctx: &Ctx, g: &Digraph, output: &Output) -> Result<Outcome> {
    let text = write_digraph(g);
    match &output.out {
        Some(path) => {
            write_file(path, &text)?;
            ctx.say(format!("wrote {} ({} vertices, {} edges)", path.display(), g.vertex_count(), g.edge_count()));
        }
        None => print!("{text}"),
    }
    if let Some(path) = &output.dot {
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("G");
        write_file(path, &to_dot(g, name))?;
    }
    Ok(Outcome::Yes)
}

fn emit_result(ctx: &Ctx, r: &ConstructionResult, output: &Output) -> Result<Outcome> {
    if !ctx.quiet {
        for w in &r.warnings {
            eprintln!("{w}");
        }
    }
    emit(ctx, &r.digraph, output)
}

fn write_cert(ctx: &Ctx, path: Option<&PathBuf>, h: &Homotopy) -> Result<()> {
    if let Some(path) = path {
        write_file(path, &write_homotopy(h))?;
        ctx.say(format!("certificate: {}", path.display()));
    }
    Ok(())
}

fn render_map(m: &DigraphMap) -> String {
    let parts: Vec<String> = m.pairs().map(|(x, y)| format!("{x}->{y}")).collect();
    parts.join(" ")
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report")
}

pub fn run(ctx: &Ctx, command: &Command) -> Result<Outcome> {
    use Command::*;
    let budget = &ctx.budget;
    match command {
        Box { a, b, output } => emit(ctx, &box_product(&digraph(a)?, &digraph(b)?).digraph, output),
        Tensor { a, b, output } => emit(ctx, &tensor_product(&read_digraph(a)?, &read_digraph(b)?), output),
        Union { a, b, output } => emit(ctx, &diho::constructions::union(&read_digraph(a)?, &read_digraph(b)?), output),
        Intersect { a, b, output } => emit(ctx, &intersection(&read_digraph(a)?, &read_digraph(b)?), output),
        Disjoint { parts, output } => {
            let parts = parts.iter().map(|p| digraph(p)).collect::<Result<Vec<_>>>()?;
            emit(ctx, &disjoint_union(&parts).digraph, output)
        }
        Quotient { g, x, output } => emit_result(ctx, &quotient(&digraph(g)?, &read_digraph(x)?)?, output),
        Identify { g, pairs, output } => {
            let mut spec = IdentificationSpec::new(digraph(g)?);
            for (a, b) in pairs {
                spec.identify(a.parse()?, b.parse()?);
            }
            emit_result(ctx, &identification(&spec)?, output)
        }
        Cylinder { f, output } => emit_result(ctx, &mapping_cylinder(&read_map(f)?)?, output),
        Emcylinder { f, output } => emit(ctx, &extended_mapping_cylinder(&read_map(f)?)?, output),
        Cone { g, output } => emit_result(ctx, &cone(&digraph(g)?), output),
        Econe { x, h, output } => emit(ctx, &extended_cone(&read_digraph(x)?, &read_digraph(h)?)?, output),
        Cofiber { style, f, output } => {
            let f = read_map(f)?;
            let r = match style {
                CofiberStyle::Paper => paper_cofiber(&f)?,
                CofiberStyle::Categorical => categorical_cofiber(&f)?,
            };
            emit_result(ctx, &r, output)
        }
        Reduced { f, output } => emit(ctx, &reduced_cylinder(&read_map(f)?)?, output),
        Tube { f, g, with_codomain, output } => {
            let (f, g) = (read_map(f)?, read_map(g)?);
            let r = if *with_codomain { tube_union(&f, &g)? } else { mapping_tube(&f, &g)? };
            emit_result(ctx, &r, output)
        }
        Gat { glue, f, output } => {
            let glue = match glue {
                Glue::Im => GatGlue::Image,
                Glue::Base => GatGlue::Base,
            };
            emit_result(ctx, &gat(&read_map(f)?, glue)?, output)
        }
        Homotopic { f, g, cert } => match are_homotopic(&read_map(f)?, &read_map(g)?, budget)? {
            Some(h) => {
                ctx.say(format!("homotopic: yes (word {:?}, length {})", h.word_string(), h.len()));
                write_cert(ctx, cert.as_ref(), &h)?;
                Ok(Outcome::Yes)
            }
            None => {
                ctx.say("homotopic: no");
                Ok(Outcome::No)
            }
        },
        Classes { a, b } => {
            let t = homotopy_classes(&digraph(a)?, &digraph(b)?, budget)?;
            ctx.say(format!("maps: {}  classes: {}", t.map_count(), t.class_count()));
            for c in 0..t.class_count() {
                let size = t.members(c).count();
                let constant = if t.is_constant_class(c) { " constant" } else { "" };
                println!("class {c} ({size} maps{constant}): {}", render_map(t.representative(c)));
            }
            Ok(Outcome::Yes)
        }
        Equivalent { a, b, cert_dir } => match are_equivalent(&digraph(a)?, &digraph(b)?, budget)? {
            Some(e) => {
                ctx.say("equivalent: yes");
                ctx.say(format!("forward: {}", render_map(&e.forward)));
                ctx.say(format!("backward: {}", render_map(&e.backward)));
                ctx.say(format!(
                    "words: {:?} on the domain, {:?} on the codomain",
                    e.on_domain.word_string(),
                    e.on_codomain.word_string()
                ));
                if let Some(dir) = cert_dir {
                    fs::create_dir_all(dir)?;
                    write_cert(ctx, Some(&dir.join("on_domain.hty")), &e.on_domain)?;
                    write_cert(ctx, Some(&dir.join("on_codomain.hty")), &e.on_codomain)?;
                }
                Ok(Outcome::Yes)
            }
            None => {
                ctx.say("equivalent: no");
                Ok(Outcome::No)
            }
        },
        Contractible { g, cert } => match is_contractible(&digraph(g)?, budget)? {
            Some(h) => {
                ctx.say(format!("contractible: yes (word {:?})", h.word_string()));
                write_cert(ctx, cert.as_ref(), &h)?;
                Ok(Outcome::Yes)
            }
            None => {
                ctx.say("contractible: no");
                Ok(Outcome::No)
            }
        },
        Hep { inst, allow_longer, cert } => {
            let inst = diho::format::parse_hep(&fs::read_to_string(inst)?)?;
            match check_hep(&inst, HepOptions { pad: *allow_longer }, budget)? {
                Some(h) => {
                    ctx.say(format!("extension: found (word {:?})", h.word_string()));
                    write_cert(ctx, cert.as_ref(), &h)?;
                    Ok(Outcome::Yes)
                }
                None => {
                    ctx.say(format!("extension: none (padding {allow_longer})"));
                    Ok(Outcome::No)
                }
            }
        }
        Maps { a, b, count } => {
            let maps = enumerate_maps(&digraph(a)?, &digraph(b)?, budget)?;
            if *count {
                println!("{}", maps.len());
            } else {
                for m in &maps {
                    println!("{}", render_map(m));
                }
            }
            Ok(Outcome::from_bool(!maps.is_empty()))
        }
        Limit { sys } => {
            let s = parse_system(&fs::read_to_string(sys)?)?;
            let lim = inverse_limit(&s);
            ctx.say(format!("limit size: {}", lim.len()));
            for e in &lim {
                println!("{}", e.display(&s));
            }
            Ok(Outcome::from_bool(!lim.is_empty()))
        }
        Cofinal { sub, sys } => {
            let sub = parse_system(&fs::read_to_string(sub)?)?;
            let sys = parse_system(&fs::read_to_string(sys)?)?;
            let r = restriction_check(&sub, &sys)?;
            ctx.say(format!(
                "cofinal: {}  full: {}  limits: {} -> {}  injective: {}  surjective: {}",
                r.cofinal, r.full, r.ambient_limit, r.sub_limit, r.injective, r.surjective
            ));
            Ok(Outcome::from_bool(r.cofinal))
        }
        Cbar { sys } => {
            let s = parse_system(&fs::read_to_string(sys)?)?;
            let c = closure_category(&s)?;
            ctx.say(format!(
                "axiom1: {}  axiom2: {}  onto: {}  contains original: {}  closed: {}  added: {}",
                c.axiom1,
                c.axiom2,
                c.all_onto,
                c.contains_original,
                c.composition_closed,
                c.added(&s)
            ));
            if c.axiom1 {
                let mut b = diho::limits::FiniteSystem::builder();
                for o in s.objects() {
                    b.object(&o.name, o.tokens.iter().cloned());
                }
                for (&(x, y), fs) in &c.homs {
                    let (src, dst) = (&s.objects()[x], &s.objects()[y]);
                    let pairs = fs[0]
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| (src.tokens[i].clone(), dst.tokens[j].clone()));
                    b.morphism(&src.name, &dst.name, pairs);
                }
                print!("{}", write_system(&b.build()?));
            }
            Ok(Outcome::from_bool(c.ok()))
        }
        Brown { command } => brown(ctx, command),
        Audit { command } => audit(ctx, command),
        Verify { filter, cert_dir } => fixtures::run_all(ctx, filter.as_deref(), cert_dir.as_deref()),
        Dot { g, out } => {
            let g = read_digraph(g)?;
            match out {
                Some(path) => {
                    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("G");
                    write_file(path, &to_dot(&g, name))?;
                }
                None => print!("{}", to_dot(&g, "G")),
            }
            Ok(Outcome::Yes)
        }
    }
}

fn write_stage(ctx: &Ctx, state: &StageState, out: Option<&PathBuf>) -> Result<()> {
    let text = state.to_json();
    match out {
        Some(path) => {
            write_file(path, &text)?;
            ctx.say(format!(
                "stage {}: {} vertices, {} attachments logged -> {}",
                state.stage,
                state.y().vertex_count(),
                state.attached.len(),
                path.display()
            ));
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn brown(ctx: &Ctx, command: &BrownCommand) -> Result<Outcome> {
    match command {
        BrownCommand::Base { target, u0, tests, out } => {
            let z = digraph(target)?;
            let functor = RepresentableFunctor::new(z.clone(), ctx.budget);
            let u0 = match u0 {
                Some(path) => read_map(path)?,
                None => DigraphMap::from_pairs(Arc::new(Digraph::empty()), z, Vec::new())?,
            };
            let tests = tests.iter().map(|p| digraph(p)).collect::<Result<Vec<_>>>()?;
            let r = base_step(&functor, &u0, &tests)?;
            ctx.say(format!("surjective on tests: {}", r.surjective));
            write_stage(ctx, &r.state, out.as_ref())?;
            Ok(Outcome::from_bool(r.surjective))
        }
        BrownCommand::Step { target, stage, tests, out, cert_dir } => {
            let z = digraph(target)?;
            let mut state = StageState::from_json(&fs::read_to_string(stage)?)?;
            if let Some(tests) = tests {
                state.tests = tests.iter().map(|p| digraph(p)).collect::<Result<_>>()?;
            }
            let functor = RepresentableFunctor::new(z, ctx.budget);
            let r = inductive_step(&functor, &state)?;
            let new: Vec<_> = r.state.attached.iter().filter(|a| a.stage == state.stage).collect();
            ctx.say(format!(
                "attached {} tubes, fixpoint: {}, certificates verified: {}",
                new.len(),
                r.fixpoint,
                r.all_verified()
            ));
            if let Some(dir) = cert_dir {
                fs::create_dir_all(dir)?;
                for (a, h) in new.iter().zip(&r.certificates) {
                    write_cert(ctx, Some(&dir.join(format!("{}.hty", a.tag))), h)?;
                }
            }
            write_stage(ctx, &r.state, out.as_ref())?;
            if let Err(e) = r.require_extended() {
                if !ctx.quiet {
                    eprintln!("{e}");
                }
                return Ok(Outcome::No);
            }
            Ok(Outcome::from_bool(r.all_verified()))
        }
    }
}

fn audit(ctx: &Ctx, command: &AuditCommand) -> Result<Outcome> {
    match command {
        AuditCommand::Additivity { target, parts } => {
            let functor = RepresentableFunctor::new(digraph(target)?, ctx.budget);
            let parts = parts.iter().map(|p| digraph(p)).collect::<Result<Vec<_>>>()?;
            let r = audit_additivity(&functor, &parts)?;
            println!("{}", json(&r));
            Ok(Outcome::from_bool(r.bijective() && r.certificates_verified))
        }
        AuditCommand::Mv { target, g1, g2 } => {
            let functor = RepresentableFunctor::new(digraph(target)?, ctx.budget);
            let r = audit_mayer_vietoris(&functor, &digraph(g1)?, &digraph(g2)?)?;
            ctx.say("map audited: restriction to both pieces");
            println!("{}", json(&r));
            Ok(Outcome::from_bool(r.onto && r.lands_in_fibered_product))
        }
        AuditCommand::Cofiber { target, f, chain } => {
            let functor = RepresentableFunctor::new(digraph(target)?, ctx.budget);
            match (f, chain) {
                (Some(f), _) => {
                    let r = audit_cofiber_exactness(&functor, &read_map(f)?)?;
                    println!("{}", json(&r));
                    Ok(Outcome::from_bool(r.exact()))
                }
                (None, Some(pair)) => {
                    let r = audit_cofiber_chain(&functor, &digraph(&pair[0])?, &digraph(&pair[1])?)?;
                    println!("{}", json(&r));
                    Ok(Outcome::from_bool(r.fold.exact() && r.inclusion.exact()))
                }
                (None, None) => unreachable!("clap requires one of them"),
            }
        }
    }
}
