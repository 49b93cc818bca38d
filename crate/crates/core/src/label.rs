//! Structured vertex labels.
//!
//! Every vertex is named by a finite tag tree whose leaves are user atoms.
//! A label is stored as its canonical serialization, so equality and the
//! total order are plain string comparisons and every construction in the
//! crate emits names that survive unions and identifications.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Outermost construction tag of a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelTag {
    Atom,
    Pair,
    Base,
    Cyl,
    Mid,
    Src,
    Cone,
    Apex,
    Star,
    Class,
}

impl LabelTag {
    fn unary_keyword(self) -> Option<&'static str> {
        match self {
            LabelTag::Base => Some("Base"),
            LabelTag::Cyl => Some("Cyl"),
            LabelTag::Mid => Some("Mid"),
            LabelTag::Src => Some("Src"),
            LabelTag::Cone => Some("Cone"),
            _ => None,
        }
    }

    fn from_unary_keyword(word: &str) -> Option<LabelTag> {
        match word {
            "Base" => Some(LabelTag::Base),
            "Cyl" => Some(LabelTag::Cyl),
            "Mid" => Some(LabelTag::Mid),
            "Src" => Some(LabelTag::Src),
            "Cone" => Some(LabelTag::Cone),
            _ => None,
        }
    }
}

const RESERVED_ATOMS: [&str; 2] = ["Apex", "Star"];

/// A vertex name: a tag tree kept in canonical serialized form.
///
/// The order is lexicographic over the serialization, which fixes iteration
/// order everywhere in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VertexLabel(String);

impl VertexLabel {
    /// A user atom. Atoms are nonempty strings over `[A-Za-z0-9_]` other
    /// than the reserved leaf tags `Apex` and `Star`.
    pub fn atom(name: &str) -> Result<VertexLabel, Error> {
        if is_atom(name) {
            Ok(VertexLabel(name.to_owned()))
        } else {
            Err(Error::InvalidLabel(name.to_owned()))
        }
    }

    /// Atom for a small integer, used for line-digraph positions and tags.
    pub fn index(i: usize) -> VertexLabel {
        VertexLabel(i.to_string())
    }

    pub fn pair(left: &VertexLabel, right: &VertexLabel) -> VertexLabel {
        VertexLabel(format!("Pair({},{})", left.0, right.0))
    }

    pub fn base(inner: &VertexLabel) -> VertexLabel {
        Self::unary(LabelTag::Base, inner)
    }

    pub fn cyl(inner: &VertexLabel) -> VertexLabel {
        Self::unary(LabelTag::Cyl, inner)
    }

    pub fn mid(inner: &VertexLabel) -> VertexLabel {
        Self::unary(LabelTag::Mid, inner)
    }

    pub fn src(inner: &VertexLabel) -> VertexLabel {
        Self::unary(LabelTag::Src, inner)
    }

    pub fn cone(inner: &VertexLabel) -> VertexLabel {
        Self::unary(LabelTag::Cone, inner)
    }

    pub fn apex() -> VertexLabel {
        VertexLabel("Apex".to_owned())
    }

    pub fn star() -> VertexLabel {
        VertexLabel("Star".to_owned())
    }

    /// Label of an equivalence class. Members are sorted and deduplicated;
    /// an empty member set is rejected.
    pub fn class<'a, I>(members: I) -> Result<VertexLabel, Error>
    where
        I: IntoIterator<Item = &'a VertexLabel>,
    {
        let mut members: Vec<&VertexLabel> = members.into_iter().collect();
        members.sort();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidLabel("Class{}".to_owned()));
        }
        let body: Vec<&str> = members.iter().map(|m| m.as_str()).collect();
        Ok(VertexLabel(format!("Class{{{}}}", body.join(","))))
    }

    fn unary(tag: LabelTag, inner: &VertexLabel) -> VertexLabel {
        let kw = tag.unary_keyword().expect("unary tag");
        VertexLabel(format!("{}({})", kw, inner.0))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Outermost tag, read off the serialization without a full parse.
    pub fn tag(&self) -> LabelTag {
        let s = self.0.as_str();
        match s {
            "Apex" => return LabelTag::Apex,
            "Star" => return LabelTag::Star,
            _ => {}
        }
        if let Some(pos) = s.find(['(', '{']) {
            let head = &s[..pos];
            if head == "Pair" {
                return LabelTag::Pair;
            }
            if head == "Class" {
                return LabelTag::Class;
            }
            if let Some(tag) = LabelTag::from_unary_keyword(head) {
                return tag;
            }
        }
        LabelTag::Atom
    }

    /// Components of a `Pair(left,right)` label.
    pub fn split_pair(&self) -> Option<(VertexLabel, VertexLabel)> {
        match self.tree() {
            LabelTree::Pair(l, r) => Some((l.to_label(), r.to_label())),
            _ => None,
        }
    }

    /// Argument of a unary tag such as `Base(x)`.
    pub fn unwrap_unary(&self, tag: LabelTag) -> Option<VertexLabel> {
        match self.tree() {
            LabelTree::Unary(t, inner) if t == tag => Some(inner.to_label()),
            _ => None,
        }
    }

    /// Full tag tree.
    pub fn tree(&self) -> LabelTree {
        let mut p = Parser::new(&self.0);
        p.label().expect("stored labels are canonical")
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    /// Parses a serialized tag tree. Class member lists are normalized.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser::new(s);
        let tree = p
            .label()
            .ok_or_else(|| Error::InvalidLabel(s.to_owned()))?;
        if p.pos != s.len() {
            return Err(Error::InvalidLabel(s.to_owned()));
        }
        Ok(tree.to_label())
    }
}

impl TryFrom<String> for VertexLabel {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<VertexLabel> for String {
    fn from(l: VertexLabel) -> String {
        l.0
    }
}

/// Parsed form of a label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelTree {
    Atom(String),
    Pair(Box<LabelTree>, Box<LabelTree>),
    Unary(LabelTag, Box<LabelTree>),
    Apex,
    Star,
    Class(Vec<LabelTree>),
}

impl LabelTree {
    pub fn to_label(&self) -> VertexLabel {
        match self {
            LabelTree::Atom(a) => VertexLabel(a.clone()),
            LabelTree::Pair(l, r) => VertexLabel::pair(&l.to_label(), &r.to_label()),
            LabelTree::Unary(tag, inner) => VertexLabel::unary(*tag, &inner.to_label()),
            LabelTree::Apex => VertexLabel::apex(),
            LabelTree::Star => VertexLabel::star(),
            LabelTree::Class(members) => {
                let labels: Vec<VertexLabel> = members.iter().map(|m| m.to_label()).collect();
                VertexLabel::class(labels.iter()).expect("parser rejects empty classes")
            }
        }
    }
}

fn is_atom(s: &str) -> bool {
    !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
        && !RESERVED_ATOMS.contains(&s)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Option<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Some(())
        } else {
            None
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn label(&mut self) -> Option<LabelTree> {
        let word = self.word()?;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let tree = if word == "Pair" {
                    let left = self.label()?;
                    self.eat(b',')?;
                    let right = self.label()?;
                    LabelTree::Pair(Box::new(left), Box::new(right))
                } else {
                    let tag = LabelTag::from_unary_keyword(word)?;
                    LabelTree::Unary(tag, Box::new(self.label()?))
                };
                self.eat(b')')?;
                Some(tree)
            }
            Some(b'{') if word == "Class" => {
                self.pos += 1;
                let mut members = vec![self.label()?];
                while self.eat(b',').is_some() {
                    members.push(self.label()?);
                }
                self.eat(b'}')?;
                Some(LabelTree::Class(members))
            }
            Some(b'{') => None,
            _ => match word {
                "Apex" => Some(LabelTree::Apex),
                "Star" => Some(LabelTree::Star),
                w => Some(LabelTree::Atom(w.to_owned())),
            },
        }
    }
}
