//! The `.poset` description language.
//!
//! ```text
//! # comment
//! poset fig1 {
//!   elements: 0 a b 1;
//!   covers: 0<a, 0<b, a<1, b<1;
//! }
//! ```
//!
//! A file holds any number of `poset` blocks. Names are `[A-Za-z0-9_]+` and
//! case-sensitive. [`serialize`] emits the canonical form: one block per
//! entry, covers sorted by declaration index, LF line endings.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Result;
use crate::poset::Poset;
use crate::pseudo::StarTable;

/// Byte range into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// 1-based line and column (column counted in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    fn of(text: &str, offset: usize) -> Position {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        Position { line, column }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: syntax error: expected {expected}, found {found}")]
    Syntax { pos: Position, span: Span, expected: String, found: String },
    #[error("{pos}: duplicate poset name `{name}`")]
    DuplicatePosetName { pos: Position, span: Span, name: String },
    #[error("{pos}: duplicate element `{name}`")]
    DuplicateElement { pos: Position, span: Span, name: String },
    #[error("{pos}: unknown element `{name}` in cover")]
    UnknownElementInCover { pos: Position, span: Span, name: String },
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::DuplicatePosetName { pos, .. }
            | ParseError::DuplicateElement { pos, .. }
            | ParseError::UnknownElementInCover { pos, .. } => *pos,
        }
    }

    pub fn span(&self) -> Span {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::DuplicatePosetName { span, .. }
            | ParseError::DuplicateElement { span, .. }
            | ParseError::UnknownElementInCover { span, .. } => *span,
        }
    }
}

/// Source locations of one entry's syntactic parts.
#[derive(Debug, Clone, Default)]
pub struct EntrySpans {
    pub name: Span,
    pub elements: Vec<Span>,
    pub covers: Vec<(Span, Span)>,
}

/// One `poset NAME { ... }` block. Equality ignores spans.
#[derive(Debug, Clone)]
pub struct PosetEntry {
    pub name: String,
    pub elements: Vec<String>,
    /// `(lower, upper)` as indices into `elements`.
    pub covers: Vec<(usize, usize)>,
    pub spans: EntrySpans,
}

impl PartialEq for PosetEntry {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.elements == other.elements && self.covers == other.covers
    }
}

impl Eq for PosetEntry {}

impl PosetEntry {
    /// Entry describing `p` by its Hasse diagram.
    pub fn from_poset(name: impl Into<String>, p: &Poset) -> PosetEntry {
        PosetEntry {
            name: name.into(),
            elements: p.labels().to_vec(),
            covers: p.covers().iter().map(|&(a, b)| (a.index(), b.index())).collect(),
            spans: EntrySpans::default(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_index_covers(self.elements.clone(), &self.covers)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PosetDoc {
    pub entries: Vec<PosetEntry>,
}

impl PosetDoc {
    pub fn entry(&self, name: &str) -> Option<&PosetEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    LBrace,
    RBrace,
    Colon,
    Semi,
    Comma,
    Lt,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Lt => f.write_str("`<`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b':' => Tok::Colon,
            b';' => Tok::Semi,
            b',' => Tok::Comma,
            b'<' => Tok::Lt,
            _ if is_name_byte(b) => {
                while i < bytes.len() && is_name_byte(bytes[i]) {
                    i += 1;
                }
                toks.push((Tok::Name(text[start..i].to_owned()), Span { start, end: i }));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                let end = start + ch.len_utf8();
                return Err(ParseError::Syntax {
                    pos: Position::of(text, start),
                    span: Span { start, end },
                    expected: "a name or punctuation".into(),
                    found: format!("character {ch:?}"),
                });
            }
        };
        i += 1;
        toks.push((tok, Span { start, end: i }));
    }
    toks.push((Tok::Eof, Span { start: text.len(), end: text.len() }));
    Ok(toks)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let (tok, span) = &self.toks[self.pos];
        ParseError::Syntax {
            pos: Position::of(self.text, span.start),
            span: *span,
            expected: expected.into(),
            found: tok.to_string(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Span, ParseError> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(self.error(&want.to_string()))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, ParseError> {
        match self.peek() {
            Tok::Name(n) if n == kw => Ok(self.bump().1),
            _ => Err(self.error(&format!("`{kw}`"))),
        }
    }

    fn name(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        match self.peek() {
            Tok::Name(_) => match self.bump() {
                (Tok::Name(n), span) => Ok((n, span)),
                _ => unreachable!(),
            },
            _ => Err(self.error(what)),
        }
    }

    fn document(&mut self) -> Result<PosetDoc, ParseError> {
        let mut doc = PosetDoc::default();
        while *self.peek() != Tok::Eof {
            let entry = self.poset_decl()?;
            if doc.entry(&entry.name).is_some() {
                return Err(ParseError::DuplicatePosetName {
                    pos: Position::of(self.text, entry.spans.name.start),
                    span: entry.spans.name,
                    name: entry.name,
                });
            }
            doc.entries.push(entry);
        }
        Ok(doc)
    }

    fn poset_decl(&mut self) -> Result<PosetEntry, ParseError> {
        self.keyword("poset")?;
        let (name, name_span) = self.name("a poset name")?;
        self.expect(Tok::LBrace)?;
        self.keyword("elements")?;
        self.expect(Tok::Colon)?;

        let mut elements: Vec<String> = Vec::new();
        let mut element_spans = Vec::new();
        loop {
            let (el, span) = self.name("an element name")?;
            if elements.contains(&el) {
                return Err(ParseError::DuplicateElement { pos: Position::of(self.text, span.start), span, name: el });
            }
            elements.push(el);
            element_spans.push(span);
            if *self.peek() == Tok::Semi {
                break;
            }
        }
        self.expect(Tok::Semi)?;

        self.keyword("covers")?;
        self.expect(Tok::Colon)?;
        let mut covers = Vec::new();
        let mut cover_spans = Vec::new();
        if *self.peek() != Tok::Semi {
            loop {
                let (lo, lo_span) = self.name("an element name")?;
                self.expect(Tok::Lt)?;
                let (hi, hi_span) = self.name("an element name")?;
                let i = self.resolve(&elements, lo, lo_span)?;
                let j = self.resolve(&elements, hi, hi_span)?;
                covers.push((i, j));
                cover_spans.push((lo_span, hi_span));
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Semi)?;
        self.expect(Tok::RBrace)?;
        Ok(PosetEntry {
            name,
            elements,
            covers,
            spans: EntrySpans { name: name_span, elements: element_spans, covers: cover_spans },
        })
    }

    fn resolve(&self, elements: &[String], name: String, span: Span) -> Result<usize, ParseError> {
        elements.iter().position(|e| *e == name).ok_or_else(|| ParseError::UnknownElementInCover {
            pos: Position::of(self.text, span.start),
            span,
            name,
        })
    }
}

pub fn parse(text: &str) -> Result<PosetDoc, ParseError> {
    let toks = lex(text)?;
    Parser { text, toks, pos: 0 }.document()
}

/// Canonical text of `doc`.
pub fn serialize(doc: &PosetDoc) -> String {
    let mut out = String::new();
    for (k, entry) in doc.entries.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        write_entry(&mut out, entry);
    }
    out
}

/// Canonical text of a single poset, covers taken from its Hasse diagram.
pub fn serialize_poset(name: &str, p: &Poset) -> String {
    let mut out = String::new();
    write_entry(&mut out, &PosetEntry::from_poset(name, p));
    out
}

fn write_entry(out: &mut String, entry: &PosetEntry) {
    let mut covers = entry.covers.clone();
    covers.sort_unstable();
    covers.dedup();
    let covers: Vec<String> =
        covers.iter().map(|&(i, j)| format!("{}<{}", entry.elements[i], entry.elements[j])).collect();
    let _ = writeln!(out, "poset {} {{", entry.name);
    let _ = writeln!(out, "  elements: {};", entry.elements.join(" "));
    if covers.is_empty() {
        out.push_str("  covers: ;\n");
    } else {
        let _ = writeln!(out, "  covers: {};", covers.join(", "));
    }
    out.push_str("}\n");
}

/// Rendering options for [`to_dot`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DotOptions<'a> {
    pub graph_name: Option<&'a str>,
    /// Appends `x* = y` to every node label.
    pub star: Option<&'a StarTable>,
    /// With `star`, marks Boolean (`B`) and dense (`D`) elements.
    pub mark_classes: bool,
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph of the Hasse diagram, edges pointing upward.
pub fn to_dot(p: &Poset, opts: &DotOptions<'_>) -> String {
    let mut out = String::new();
    let name = opts.graph_name.unwrap_or("poset");
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(name));
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    let classes = opts.star.map(|t| (t.boolean_elements(), t.dense_elements()));
    for x in p.elements() {
        let mut label = dot_escape(p.label(x));
        if let Some(t) = opts.star {
            let _ = write!(label, "\\n{}* = {}", dot_escape(p.label(x)), dot_escape(p.label(t.star(x))));
            if opts.mark_classes {
                let (b, d) = classes.as_ref().expect("classes computed with star");
                let marks: Vec<&str> = [(b.contains(x), "B"), (d.contains(x), "D")]
                    .into_iter()
                    .filter_map(|(on, m)| on.then_some(m))
                    .collect();
                if !marks.is_empty() {
                    let _ = write!(label, " [{}]", marks.join(","));
                }
            }
        }
        let _ = writeln!(out, "  n{} [label=\"{}\"];", x.index(), label);
    }
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "  n{} -> n{};", a.index(), b.index());
    }
    out.push_str("}\n");
    out
}
