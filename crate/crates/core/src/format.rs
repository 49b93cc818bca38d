//! Line-based text formats.
//!
//! All formats share the same lexical rules: UTF-8, one record per line,
//! blank lines ignored and `#` starting a comment line. Writers emit
//! records in label order so output is byte-stable.
//!
//! * `.dg`: `v <label>` and `e <src> <dst>`.
//! * `.map`: `domain <file>`, `codomain <file>`, then `m <src> <dst>`.
//! * `.hep`: sections `graph`, `sub`, `target` (digraph records),
//!   `start-map` (map records) and any number of `step <+|->` sections
//!   listing the next map on `sub`.
//! * `.hty`: sections `domain` and `codomain` (digraph records), a
//!   `word <+-...>` line, then one `map` section per stage.
//! * `.fs`: `obj <name> : tok ...` and `mor <src> -> <dst> : a=b, ...`.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::digraph::{parse_word, Digraph, Orientation};
use crate::error::{Error, Result};
use crate::homotopy::{HepInstance, Homotopy};
use crate::label::VertexLabel;
use crate::limits::FiniteSystem;
use crate::map::DigraphMap;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Nonblank, non-comment lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn label(line: usize, s: &str) -> Result<VertexLabel> {
    s.parse().map_err(|_| parse_err(line, format!("invalid label `{s}`")))
}

fn words(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn digraph_from_records<'a>(lines: impl IntoIterator<Item = (usize, &'a str)>) -> Result<Digraph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (n, line) in lines {
        match words(line).as_slice() {
            ["v", v] => vertices.push(label(n, v)?),
            ["e", x, y] => {
                let (x, y) = (label(n, x)?, label(n, y)?);
                if x == y {
                    return Err(parse_err(n, format!("loop at {x}")));
                }
                edges.push((x, y));
            }
            _ => return Err(parse_err(n, format!("expected `v <label>` or `e <src> <dst>`, got `{line}`"))),
        }
    }
    Digraph::from_edges(vertices, edges)
}

fn pairs_from_records<'a>(lines: impl IntoIterator<Item = (usize, &'a str)>) -> Result<Vec<(VertexLabel, VertexLabel)>> {
    lines
        .into_iter()
        .map(|(n, line)| match words(line).as_slice() {
            ["m", x, y] => Ok((label(n, x)?, label(n, y)?)),
            _ => Err(parse_err(n, format!("expected `m <src> <dst>`, got `{line}`"))),
        })
        .collect()
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    digraph_from_records(records(text))
}

/// Every vertex as a `v` record, then every edge.
pub fn write_digraph(g: &Digraph) -> String {
    let mut out = String::new();
    write_digraph_records(&mut out, g);
    out
}

fn write_digraph_records(out: &mut String, g: &Digraph) {
    for v in g.vertices() {
        let _ = writeln!(out, "v {v}");
    }
    for (x, y) in g.edges() {
        let _ = writeln!(out, "e {x} {y}");
    }
}

fn write_pairs(out: &mut String, m: &DigraphMap) {
    for (x, y) in m.pairs() {
        let _ = writeln!(out, "m {x} {y}");
    }
}

pub fn read_digraph(path: &Path) -> Result<Digraph> {
    parse_digraph(&std::fs::read_to_string(path)?)
}

/// Parses a `.map` file, resolving the `domain` and `codomain` file names
/// with `resolve`. The map must be total and a digraph map.
pub fn parse_map(text: &str, mut resolve: impl FnMut(&str) -> Result<Arc<Digraph>>) -> Result<DigraphMap> {
    let mut domain = None;
    let mut codomain = None;
    let mut body = Vec::new();
    for (n, line) in records(text) {
        match words(line).as_slice() {
            ["domain", file] => domain = Some(resolve(file)?),
            ["codomain", file] => codomain = Some(resolve(file)?),
            _ => body.push((n, line)),
        }
    }
    let domain = domain.ok_or_else(|| parse_err(0, "missing `domain` header"))?;
    let codomain = codomain.ok_or_else(|| parse_err(0, "missing `codomain` header"))?;
    DigraphMap::checked(domain, codomain, pairs_from_records(body)?)
}

/// Reads a `.map` file whose headers name `.dg` files relative to it.
pub fn read_map(path: &Path) -> Result<DigraphMap> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    parse_map(&std::fs::read_to_string(path)?, |file| Ok(Arc::new(read_digraph(&dir.join(file))?)))
}

pub fn write_map(m: &DigraphMap, domain_file: &str, codomain_file: &str) -> String {
    let mut out = format!("domain {domain_file}\ncodomain {codomain_file}\n");
    write_pairs(&mut out, m);
    out
}

/// Numbered record lines.
type Body<'a> = Vec<(usize, &'a str)>;

/// Splits `text` at header lines, which are lines not starting with a
/// record keyword.
fn sections(text: &str) -> Result<Vec<(usize, &str, Body<'_>)>> {
    let mut out: Vec<(usize, &str, Body<'_>)> = Vec::new();
    for (n, line) in records(text) {
        let first = line.split_whitespace().next().unwrap_or("");
        if matches!(first, "v" | "e" | "m") {
            match out.last_mut() {
                Some(sec) => sec.2.push((n, line)),
                None => return Err(parse_err(n, "record before the first section header")),
            }
        } else {
            out.push((n, line, Vec::new()));
        }
    }
    Ok(out)
}

pub fn parse_hep(text: &str) -> Result<HepInstance> {
    let mut graph = None;
    let mut sub = None;
    let mut target = None;
    let mut start = None;
    let mut steps: Vec<(Orientation, usize, Body<'_>)> = Vec::new();
    for (n, header, body) in sections(text)? {
        match words(header).as_slice() {
            ["graph"] => graph = Some(Arc::new(digraph_from_records(body)?)),
            ["sub"] => sub = Some(Arc::new(digraph_from_records(body)?)),
            ["target"] => target = Some(Arc::new(digraph_from_records(body)?)),
            ["start-map"] => start = Some((n, body)),
            ["step", o] => {
                let o = parse_word(o)
                    .filter(|w| w.len() == 1)
                    .ok_or_else(|| parse_err(n, format!("bad orientation `{o}`")))?;
                steps.push((o[0], n, body));
            }
            _ => return Err(parse_err(n, format!("unknown section `{header}`"))),
        }
    }
    let missing = |name: &str| parse_err(0, format!("missing `{name}` section"));
    let graph = graph.ok_or_else(|| missing("graph"))?;
    let sub = sub.ok_or_else(|| missing("sub"))?;
    let target = target.ok_or_else(|| missing("target"))?;
    let (_, start) = start.ok_or_else(|| missing("start-map"))?;
    let start = DigraphMap::checked(graph.clone(), target.clone(), pairs_from_records(start)?)?;
    let mut maps = vec![start.restrict(sub.clone())?];
    let mut word = Vec::new();
    for (o, _, body) in steps {
        word.push(o);
        maps.push(DigraphMap::checked(sub.clone(), target.clone(), pairs_from_records(body)?)?);
    }
    let steps = Homotopy::new(word, maps)?;
    Ok(HepInstance { graph, sub, target, start, steps })
}

pub fn write_hep(inst: &HepInstance) -> String {
    let mut out = String::from("graph\n");
    write_digraph_records(&mut out, &inst.graph);
    out.push_str("sub\n");
    write_digraph_records(&mut out, &inst.sub);
    out.push_str("target\n");
    write_digraph_records(&mut out, &inst.target);
    out.push_str("start-map\n");
    write_pairs(&mut out, &inst.start);
    for (o, m) in inst.steps.word().iter().zip(&inst.steps.maps()[1..]) {
        let _ = writeln!(out, "step {}", o.symbol());
        write_pairs(&mut out, m);
    }
    out
}

/// Self-contained certificate: both digraphs, the word and every stage.
pub fn write_homotopy(h: &Homotopy) -> String {
    let mut out = String::from("domain\n");
    write_digraph_records(&mut out, h.start().domain());
    out.push_str("codomain\n");
    write_digraph_records(&mut out, h.start().codomain());
    let _ = writeln!(out, "word {}", h.word_string());
    for m in h.maps() {
        out.push_str("map\n");
        write_pairs(&mut out, m);
    }
    out
}

/// Parses and validates a certificate.
pub fn parse_homotopy(text: &str) -> Result<Homotopy> {
    let mut domain = None;
    let mut codomain = None;
    let mut word = None;
    let mut maps = Vec::new();
    for (n, header, body) in sections(text)? {
        match words(header).as_slice() {
            ["domain"] => domain = Some(Arc::new(digraph_from_records(body)?)),
            ["codomain"] => codomain = Some(Arc::new(digraph_from_records(body)?)),
            ["word"] => word = Some(Vec::new()),
            ["word", w] => word = Some(parse_word(w).ok_or_else(|| parse_err(n, format!("bad word `{w}`")))?),
            ["map"] => {
                let (Some(d), Some(c)) = (&domain, &codomain) else {
                    return Err(parse_err(n, "`map` before `domain` and `codomain`"));
                };
                maps.push(DigraphMap::checked(d.clone(), c.clone(), pairs_from_records(body)?)?);
            }
            _ => return Err(parse_err(n, format!("unknown section `{header}`"))),
        }
    }
    let word = word.ok_or_else(|| parse_err(0, "missing `word` line"))?;
    Homotopy::new(word, maps)
}

pub fn parse_system(text: &str) -> Result<FiniteSystem> {
    let mut b = FiniteSystem::builder();
    for (n, line) in records(text) {
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| parse_err(n, "expected `:`"))?;
        match words(head).as_slice() {
            ["obj", name] => {
                b.object(name, body.split_whitespace());
            }
            ["mor", src, "->", dst] => {
                let pairs = body
                    .split(',')
                    .map(str::trim)
                    .filter(|p| !p.is_empty())
                    .map(|p| {
                        p.split_once('=')
                            .map(|(a, b)| (a.trim(), b.trim()))
                            .ok_or_else(|| parse_err(n, format!("expected `tok=tok`, got `{p}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                b.morphism(src, dst, pairs);
            }
            _ => return Err(parse_err(n, format!("expected `obj` or `mor`, got `{line}`"))),
        }
    }
    b.build()
}

/// Objects, then every non-identity morphism of the closed table.
pub fn write_system(s: &FiniteSystem) -> String {
    let mut out = String::new();
    for o in s.objects() {
        let _ = writeln!(out, "obj {} : {}", o.name, o.tokens.join(" "));
    }
    for (&(x, y), f) in s.proper_homs() {
        let (src, dst) = (&s.objects()[x], &s.objects()[y]);
        let pairs: Vec<String> = f
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}={}", src.tokens[i], dst.tokens[j]))
            .collect();
        let _ = writeln!(out, "mor {} -> {} : {}", src.name, dst.name, pairs.join(", "));
    }
    out
}

/// Serde form of a digraph for structured documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphDoc {
    pub vertices: Vec<VertexLabel>,
    pub edges: Vec<(VertexLabel, VertexLabel)>,
}

impl From<&Digraph> for DigraphDoc {
    fn from(g: &Digraph) -> Self {
        DigraphDoc {
            vertices: g.vertices().cloned().collect(),
            edges: g.edges().map(|(x, y)| (x.clone(), y.clone())).collect(),
        }
    }
}

impl DigraphDoc {
    pub fn to_digraph(&self) -> Result<Digraph> {
        Digraph::new(self.vertices.iter().cloned(), self.edges.iter().cloned())
    }
}

/// Serde form of a map: its `(vertex, image)` pairs.
pub fn map_pairs(m: &DigraphMap) -> Vec<(VertexLabel, VertexLabel)> {
    m.pairs().map(|(x, y)| (x.clone(), y.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tests::*;
    use crate::digraph::tests::arb_digraph;
    use crate::homotopy::are_homotopic;
    use crate::Budget;
    use proptest::prelude::*;

    #[test]
    fn digraph_text_round_trip() {
        let text = "# triangle\nv lonely\ne a b\n\ne b c\ne c a\n";
        let g = parse_digraph(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(parse_digraph(&write_digraph(&g)).unwrap(), g);
        assert_eq!(write_digraph(&parse_digraph(&write_digraph(&g)).unwrap()), write_digraph(&g));
    }

    #[test]
    fn structured_labels_parse() {
        let g = parse_digraph("e Base(a) Cyl(Pair(0,a))\nv Class{b,a}\n").unwrap();
        assert!(g.contains(&"Class{a,b}".parse().unwrap()));
    }

    #[test]
    fn digraph_errors_carry_line_numbers() {
        assert_eq!(
            parse_digraph("v a\nx a b\n").unwrap_err(),
            parse_err(2, "expected `v <label>` or `e <src> <dst>`, got `x a b`")
        );
        assert!(matches!(parse_digraph("e a a\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_digraph("v a-b\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn map_text_resolves_files() {
        let text = "domain c3.dg\ncodomain i.dg\nm a 0\nm b 0\nm c 0\n";
        let m = parse_map(text, |f| Ok(if f == "c3.dg" { c3() } else { iplus() })).unwrap();
        assert!(m.is_constant());
        assert_eq!(write_map(&m, "c3.dg", "i.dg"), text);
        let bad = "domain c3.dg\ncodomain i.dg\nm a 0\nm b 1\nm c 0\n";
        assert!(matches!(
            parse_map(bad, |f| Ok(if f == "c3.dg" { c3() } else { iplus() })),
            Err(Error::InvalidMap(..))
        ));
    }

    #[test]
    fn hep_round_trip() {
        let text = "graph\ne a b\ne b c\ne c a\nsub\ne c a\ntarget\ne a b\ne b c\ne c a\n\
                    start-map\nm a a\nm b b\nm c c\nstep -\nm a c\nm c c\n";
        let inst = parse_hep(text).unwrap();
        assert_eq!(inst.steps.word_string(), "-");
        assert_eq!(parse_hep(&write_hep(&inst)).unwrap().steps, inst.steps);
    }

    #[test]
    fn homotopy_certificate_round_trip() {
        let ip = iplus();
        let f = map(&point("p"), &ip, &[("p", "0")]);
        let g = map(&point("p"), &ip, &[("p", "1")]);
        let h = are_homotopic(&f, &g, &Budget::default()).unwrap().unwrap();
        let text = write_homotopy(&h);
        assert!(text.contains("word +\n"));
        assert_eq!(parse_homotopy(&text).unwrap(), h);
        let broken = text.replace("word +", "word -");
        assert!(parse_homotopy(&broken).is_err());
    }

    #[test]
    fn system_round_trip() {
        let text = "obj A : 1 2\nobj B : 1\nmor A -> B : 1=1, 2=1\n";
        let s = parse_system(text).unwrap();
        assert_eq!(write_system(&s), text);
        assert!(matches!(parse_system("obj A 1\n"), Err(Error::Parse { line: 1, .. })));
    }

    proptest! {
        #[test]
        fn write_parse_is_identity(g in arb_digraph(6)) {
            prop_assert_eq!(parse_digraph(&write_digraph(&g)).unwrap(), g.clone());
            let doc = DigraphDoc::from(&g);
            let json = serde_json::to_string(&doc).unwrap();
            let back: DigraphDoc = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back.to_digraph().unwrap(), g);
        }
    }
}
