//! The `rotsys v1` text format shared by maps, typed maps and operations.
//!
//! ```text
//! rotsys v1
//! name dual
//! vertices 3
//! edges 2
//! v0: 0 2
//! v1: 1 3      # comments run to end of line
//! v2: ...
//! types: 0 1 2
//! special: 0 1 2
//! ```
//!
//! `types:` turns the document into a typed map and `special:` (which needs
//! `types:`) into an operation. Printing is canonical: vertices ascending and
//! every cycle starting at its smallest dart.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bary::TypedMap;
use crate::error::{BaryError, MapError};
use crate::lopsp::{validate_lopsp, LopspOperation, LopspViolation};
use crate::map::EmbeddedMap;

pub const HEADER: &str = "rotsys v1";

/// Whatever a document describes, most specific first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Map(EmbeddedMap),
    Typed(TypedMap),
    Operation(LopspOperation),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Map(_) => "map",
            Document::Typed(_) => "typed map",
            Document::Operation(_) => "operation",
        }
    }

    /// The underlying map.
    pub fn map(&self) -> &EmbeddedMap {
        match self {
            Document::Map(m) => m,
            Document::Typed(t) => &t.base,
            Document::Operation(o) => o.map(),
        }
    }

    pub fn into_map(self) -> EmbeddedMap {
        match self {
            Document::Map(m) => m,
            Document::Typed(t) => t.base,
            Document::Operation(o) => o.op.base,
        }
    }
}

/// Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("line {line}: {source}")]
    Map { line: usize, source: MapError },
    #[error("line {line}: {source}")]
    Types { line: usize, source: BaryError },
    #[error("line {line}: not a valid operation: {}", join_violations(.violations))]
    Operation { line: usize, violations: Vec<LopspViolation> },
}

impl FormatError {
    pub fn line(&self) -> usize {
        match self {
            FormatError::Syntax { line, .. }
            | FormatError::Map { line, .. }
            | FormatError::Types { line, .. }
            | FormatError::Operation { line, .. } => *line,
        }
    }
}

fn join_violations(v: &[LopspViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    /// Text after the first token, for `name`.
    rest: &'a str,
}

fn lex(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    tokens.push(Token { text: &body[s..j], column: body[..s].chars().count() + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        if tokens.is_empty() {
            continue;
        }
        let after = tokens[0].text.len() + body.find(tokens[0].text).unwrap_or(0);
        out.push(Line { number: i + 1, rest: body[after..].trim(), tokens });
    }
    out
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    at: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.at)
    }

    fn next(&mut self, expected: &str) -> Result<&Line<'a>, FormatError> {
        match self.lines.get(self.at) {
            Some(l) => {
                self.at += 1;
                Ok(l)
            }
            None => Err(syntax(self.last_line + 1, 1, expected)),
        }
    }
}

fn syntax(line: usize, column: usize, expected: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, column, expected: expected.into() }
}

fn keyword(l: &Line<'_>, word: &str) -> Result<(), FormatError> {
    if l.tokens[0].text == word {
        Ok(())
    } else {
        Err(syntax(l.number, l.tokens[0].column, format!("`{word}`")))
    }
}

fn number(l: &Line<'_>, t: Token<'_>, what: &str) -> Result<usize, FormatError> {
    t.text.parse().map_err(|_| syntax(l.number, t.column, what.to_string()))
}

/// Single-count line such as `vertices 8`.
fn count_line(c: &mut Cursor<'_>, word: &str) -> Result<usize, FormatError> {
    let l = c.next(&format!("`{word} <n>`"))?;
    keyword(l, word)?;
    match l.tokens.as_slice() {
        [_, n] => number(l, *n, "a nonnegative integer"),
        [k] => Err(syntax(l.number, k.column + k.text.len(), "a count")),
        [_, _, extra, ..] => Err(syntax(l.number, extra.column, "end of line")),
        [] => unreachable!(),
    }
}

/// Parses a document and runs the map, typing and operation checks on it.
pub fn parse_rotsys(text: &str) -> Result<Document, FormatError> {
    let lines = lex(text);
    let last_line = text.lines().count();
    let mut c = Cursor { lines, at: 0, last_line };

    let head = c.next("`rotsys v1`")?;
    if head.tokens.len() != 2 || head.tokens[0].text != "rotsys" || head.tokens[1].text != "v1" {
        return Err(syntax(head.number, head.tokens[0].column, "`rotsys v1`"));
    }

    let mut name = None;
    if let Some(l) = c.peek() {
        if l.tokens[0].text == "name" {
            if l.rest.is_empty() {
                return Err(syntax(l.number, l.tokens[0].column + 4, "a name"));
            }
            name = Some(l.rest.to_string());
            c.at += 1;
        }
    }

    let n = count_line(&mut c, "vertices")?;
    let vertices_line = c.lines[c.at - 1].number;
    let m = count_line(&mut c, "edges")?;

    let mut rotations = Vec::with_capacity(n);
    let mut line_of_vertex = Vec::with_capacity(n);
    let mut dart_line = vec![0usize; 2 * m];
    for v in 0..n {
        let label = format!("v{v}:");
        let l = c.next(&format!("`{label}`"))?;
        keyword(l, &label)?;
        let mut cycle = Vec::with_capacity(l.tokens.len() - 1);
        for t in &l.tokens[1..] {
            let d = number(l, *t, "a dart")?;
            if d >= 2 * m {
                return Err(syntax(l.number, t.column, format!("a dart below {}", 2 * m)));
            }
            dart_line[d] = l.number;
            cycle.push(d);
        }
        line_of_vertex.push(l.number);
        rotations.push(cycle);
    }
    let listed: usize = rotations.iter().map(Vec::len).sum();
    if listed != 2 * m {
        let line = line_of_vertex.last().map_or(vertices_line, |&x| x);
        return Err(syntax(line, 1, format!("{} darts in total, found {listed}", 2 * m)));
    }

    let map = EmbeddedMap::build(n, &rotations).map_err(|e| {
        let line = match &e {
            MapError::DuplicateDart(d) | MapError::DanglingDart(d) if *d < dart_line.len() => dart_line[*d],
            MapError::IsolatedVertex(v) if *v < line_of_vertex.len() => line_of_vertex[*v],
            _ => vertices_line,
        };
        FormatError::Map { line, source: e }
    })?;
    let map = match &name {
        Some(s) => map.with_name(s.clone()),
        None => map,
    };

    let Some(l) = c.peek() else { return Ok(Document::Map(map)) };
    let types_line = l.number;
    if l.tokens[0].text != "types:" {
        return Err(syntax(l.number, l.tokens[0].column, "`types:` or end of input"));
    }
    let mut types = Vec::with_capacity(n);
    for t in &l.tokens[1..] {
        match t.text {
            "0" => types.push(0u8),
            "1" => types.push(1),
            "2" => types.push(2),
            _ => return Err(syntax(types_line, t.column, "a vertex type 0, 1 or 2")),
        }
    }
    c.at += 1;
    let typed = TypedMap::new(map, types).map_err(|e| FormatError::Types { line: types_line, source: e })?;

    let Some(l) = c.peek() else { return Ok(Document::Typed(typed)) };
    if l.tokens[0].text != "special:" {
        return Err(syntax(l.number, l.tokens[0].column, "`special:` or end of input"));
    }
    if l.tokens.len() != 4 {
        let col = l.tokens.get(4).map_or(l.tokens.last().unwrap().column, |t| t.column);
        return Err(syntax(l.number, col, "exactly three vertices v0 v1 v2"));
    }
    let mut sp = [0usize; 3];
    for (i, t) in l.tokens[1..].iter().enumerate() {
        sp[i] = number(l, *t, "a vertex")?;
    }
    let special_line = l.number;
    c.at += 1;
    if let Some(l) = c.peek() {
        return Err(syntax(l.number, l.tokens[0].column, "end of input"));
    }
    let mut op = validate_lopsp(typed, sp[0], sp[1], sp[2])
        .map_err(|violations| FormatError::Operation { line: special_line, violations })?;
    op.name = name;
    Ok(Document::Operation(op))
}

fn write_body(out: &mut String, m: &EmbeddedMap, name: Option<&str>) {
    out.push_str(HEADER);
    out.push('\n');
    if let Some(n) = name {
        let _ = writeln!(out, "name {}", n.replace(['\n', '#'], " "));
    }
    let _ = writeln!(out, "vertices {}", m.vertex_count());
    let _ = writeln!(out, "edges {}", m.edge_count());
    for v in 0..m.vertex_count() {
        let _ = write!(out, "v{v}:");
        for d in m.rotation(v) {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
    }
}

fn write_types(out: &mut String, t: &[u8]) {
    out.push_str("types:");
    for x in t {
        let _ = write!(out, " {x}");
    }
    out.push('\n');
}

pub fn print_map(m: &EmbeddedMap) -> String {
    let mut out = String::new();
    write_body(&mut out, m, m.name());
    out
}

pub fn print_typed(t: &TypedMap) -> String {
    let mut out = String::new();
    write_body(&mut out, &t.base, t.base.name());
    write_types(&mut out, &t.vtype);
    out
}

pub fn print_operation(o: &LopspOperation) -> String {
    let mut out = String::new();
    write_body(&mut out, o.map(), o.name.as_deref().or(o.map().name()));
    write_types(&mut out, &o.op.vtype);
    let _ = writeln!(out, "special: {} {} {}", o.v0, o.v1, o.v2);
    out
}

pub fn print_rotsys(doc: &Document) -> String {
    match doc {
        Document::Map(m) => print_map(m),
        Document::Typed(t) => print_typed(t),
        Document::Operation(o) => print_operation(o),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::edge_of;
    use crate::{catalog, fixtures};

fn dart_pairs_complete(m: &EmbeddedMap) -> bool {
    let mut seen = vec![0u8; m.edge_count()];
    for v in 0..m.vertex_count() {
        for d in m.rotation(v) {
            seen[edge_of(d)] += 1;
        }
    }
    seen.iter().all(|&c| c == 2)
}

    #[test]
    fn maps_round_trip() {
        for m in fixtures::all().into_iter().chain([fixtures::icosahedron(), fixtures::dual_breaker()]) {
            let text = print_map(&m);
            let back = parse_rotsys(&text).unwrap();
            assert_eq!(back, Document::Map(m.clone()));
            assert_eq!(print_rotsys(&back), text);
            assert!(dart_pairs_complete(back.map()));
        }
    }

    #[test]
    fn operations_round_trip() {
        for c in catalog::catalog() {
            let text = print_operation(&c.op);
            assert!(text.contains("\nspecial: "));
            let Document::Operation(back) = parse_rotsys(&text).unwrap() else { panic!("not an operation") };
            assert_eq!(back.canonical_form(), c.op.canonical_form());
            assert_eq!(back.name(), c.op.name());
            assert_eq!(print_operation(&back), text);
        }
    }

    #[test]
    fn typed_round_trip() {
        let b = crate::bary::barycentric_subdivision(&fixtures::cube());
        let text = print_typed(&b);
        let Document::Typed(back) = parse_rotsys(&text).unwrap() else { panic!("not typed") };
        assert_eq!(back.vtype, b.vtype);
        assert_eq!(print_typed(&back), text);
    }

    #[test]
    fn cube_has_eight_rotation_lines() {
        let text = print_map(&fixtures::cube());
        assert_eq!(text.lines().filter(|l| l.starts_with('v') && l.contains(':')).count(), 8);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a digon-free triangle\nrotsys v1\n\nvertices 3   # three\nedges 3\nv0: 0 5\nv1: 1 2\nv2: 3 4\n";
        let m = parse_rotsys(text).unwrap().into_map();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (3, 3, 2));
    }

    #[test]
    fn too_many_darts_is_a_syntax_error() {
        let text = "rotsys v1\nvertices 2\nedges 3\nv0: 0 2 4 6\nv1: 1 3 5 7\n";
        match parse_rotsys(text) {
            Err(FormatError::Syntax { line: 4, column: 11, .. }) => {}
            other => panic!("{other:?}"),
        }
        let text = "rotsys v1\nvertices 2\nedges 3\nv0: 0 2\nv1: 1 3\n";
        assert!(matches!(parse_rotsys(text), Err(FormatError::Syntax { line: 5, .. })));
    }

    #[test]
    fn syntax_positions() {
        let bad = |t: &str| match parse_rotsys(t) {
            Err(FormatError::Syntax { line, column, .. }) => (line, column),
            other => panic!("{other:?}"),
        };
        assert_eq!(bad(""), (1, 1));
        assert_eq!(bad("rotsys v2\n"), (1, 1));
        assert_eq!(bad("rotsys v1\nvertices x\n"), (2, 10));
        assert_eq!(bad("rotsys v1\nvertices 1\nedges 1\nv1: 0 1\n"), (4, 1));
        assert_eq!(bad("rotsys v1\nvertices 1\nedges 1\nv0: 0 1\ntypes: 3\n"), (5, 8));
    }

    #[test]
    fn validation_errors_carry_lines() {
        let dup = "rotsys v1\nvertices 2\nedges 1\nv0: 0\nv1: 0\n";
        assert!(matches!(parse_rotsys(dup), Err(FormatError::Map { line: 5, source: MapError::DuplicateDart(0) })));
        let types = "rotsys v1\nvertices 2\nedges 1\nv0: 0\nv1: 1\ntypes: 0\n";
        assert!(matches!(parse_rotsys(types), Err(FormatError::Types { line: 6, .. })));
        let mut text = print_operation(&catalog::kis());
        text = text.replace("special: ", "special: 0 ");
        assert!(matches!(parse_rotsys(&text), Err(FormatError::Syntax { .. })));
        let op = catalog::kis();
        let wrong = print_typed(&op.op) + &format!("special: {} {} {}\n", op.v1, op.v0, op.v2);
        assert!(matches!(parse_rotsys(&wrong), Err(FormatError::Operation { .. })));
    }
}
