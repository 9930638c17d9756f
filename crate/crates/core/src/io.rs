//! Line-oriented text formats. `#` starts a comment; blank lines are
//! ignored. Every file starts with a header line naming its kind, followed
//! by `name:` sections.
//!
//! ```text
//! drawing n=4
//! crossings:
//! 0-2 1-3
//! rotations:
//! 0: 1 2 3
//! labels:
//! 0: spine 0
//! colors: k=2
//! e 0 1 : 0
//! ```

use std::fmt::{self, Write};

use num_rational::Rational64;

use crate::book::{BookLayout, Page};
use crate::cylindrical::{Angle, CylindricalLayout};
use crate::drawing::{all_edges, edge_count, Drawing, Edge, EdgeColoring, EdgeSet, VertexLabel};
use crate::pseudolinear::{Point, PointDrawing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, column, message: message.into() })
}

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    line: usize,
    col: usize,
    text: &'a str,
}

impl<'a> Tok<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, self.col, message)
    }

    fn usize(&self) -> Result<usize, ParseError> {
        self.text.parse().or_else(|_| self.fail(format!("expected a non-negative integer, found {:?}", self.text)))
    }

    fn i64(&self) -> Result<i64, ParseError> {
        self.text.parse().or_else(|_| self.fail(format!("expected an integer, found {:?}", self.text)))
    }

    fn rational(&self) -> Result<Rational64, ParseError> {
        let bad = || self.fail(format!("expected a rational p/q, found {:?}", self.text));
        let (p, q) = match self.text.split_once('/') {
            Some((p, q)) => (p.parse::<i64>().or_else(|_| bad())?, q.parse::<i64>().or_else(|_| bad())?),
            None => (self.text.parse::<i64>().or_else(|_| bad())?, 1),
        };
        if q == 0 {
            return self.fail("zero denominator");
        }
        Ok(Rational64::new(p, q))
    }

    /// `key=value` with the given key.
    fn keyed(&self, key: &str) -> Result<usize, ParseError> {
        match self.text.split_once('=') {
            Some((k, v)) if k == key => {
                Tok { col: self.col + k.len() + 1, text: v, ..*self }.usize()
            }
            _ => self.fail(format!("expected {key}=<number>, found {:?}", self.text)),
        }
    }
}

#[derive(Debug, Clone)]
struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
}

impl<'a> Line<'a> {
    fn end(&self) -> Tok<'a> {
        let col = self.toks.last().map_or(1, |t| t.col + t.text.len());
        Tok { line: self.no, col, text: "" }
    }

    fn tok(&self, i: usize) -> Result<Tok<'a>, ParseError> {
        self.toks.get(i).copied().map_or_else(|| self.end().fail("unexpected end of line"), Ok)
    }

    fn expect_len(&self, len: usize) -> Result<(), ParseError> {
        match self.toks.get(len) {
            Some(t) => t.fail(format!("unexpected token {:?}", t.text)),
            None if self.toks.len() < len => self.end().fail("unexpected end of line"),
            None => Ok(()),
        }
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (j, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            // ':' is its own token
            let sep = ch.is_whitespace() || ch == ':';
            match (start, sep) {
                (None, false) => start = Some(j),
                (Some(s), true) => {
                    toks.push(Tok { line: i + 1, col: s + 1, text: &body[s..j] });
                    start = None;
                }
                _ => {}
            }
            if ch == ':' {
                toks.push(Tok { line: i + 1, col: j + 1, text: ":" });
            }
        }
        if !toks.is_empty() {
            out.push(Line { no: i + 1, toks });
        }
    }
    out
}

#[derive(Debug)]
struct Section<'a> {
    name: Tok<'a>,
    /// Tokens after `name:` on the header line.
    args: Vec<Tok<'a>>,
    lines: Vec<Line<'a>>,
}

struct Document<'a> {
    header: Line<'a>,
    sections: Vec<Section<'a>>,
}

impl<'a> Document<'a> {
    fn parse(text: &'a str, kind: &str) -> Result<Self, ParseError> {
        let mut lines = tokenize(text).into_iter();
        let header = lines.next().map_or_else(|| err(1, 1, format!("empty input, expected `{kind}` header")), Ok)?;
        if header.toks[0].text != kind {
            return header.toks[0].fail(format!("expected `{kind}` header, found {:?}", header.toks[0].text));
        }
        let mut sections: Vec<Section<'a>> = Vec::new();
        for line in lines {
            let first = line.toks[0];
            let is_section = line.toks.len() >= 2
                && line.toks[1].text == ":"
                && first.text.chars().all(|ch| ch.is_ascii_alphabetic());
            if is_section {
                if sections.iter().any(|s| s.name.text == first.text) {
                    return first.fail(format!("duplicate section {:?}", first.text));
                }
                sections.push(Section { name: first, args: line.toks[2..].to_vec(), lines: Vec::new() });
            } else {
                match sections.last_mut() {
                    Some(s) => s.lines.push(line),
                    None => return first.fail("content before the first section"),
                }
            }
        }
        Ok(Document { header, sections })
    }

    fn check_sections(&self, known: &[&str]) -> Result<(), ParseError> {
        for s in &self.sections {
            if !known.contains(&s.name.text) {
                return s.name.fail(format!("unknown section {:?}; expected one of {known:?}", s.name.text));
            }
        }
        Ok(())
    }

    fn section(&self, name: &str) -> Option<&Section<'a>> {
        self.sections.iter().find(|s| s.name.text == name)
    }

    fn require(&self, name: &str) -> Result<&Section<'a>, ParseError> {
        self.section(name).map_or_else(|| self.header.end().fail(format!("missing section `{name}:`")), Ok)
    }
}

fn vertex(t: Tok<'_>, n: usize) -> Result<usize, ParseError> {
    let v = t.usize()?;
    if v >= n {
        return t.fail(format!("vertex {v} out of range for n={n}"));
    }
    Ok(v)
}

fn edge_token(t: Tok<'_>, n: usize) -> Result<Edge, ParseError> {
    let Some((a, b)) = t.text.split_once('-') else {
        return t.fail(format!("expected an edge u-v, found {:?}", t.text));
    };
    let a = vertex(Tok { text: a, ..t }, n)?;
    let b = vertex(Tok { col: t.col + a.to_string().len() + 1, text: b, ..t }, n)?;
    if a == b {
        return t.fail(format!("loop edge at vertex {a}"));
    }
    Ok(Edge::new(a, b))
}

fn edge_pair(a: Tok<'_>, b: Tok<'_>, n: usize) -> Result<(Edge, Edge), ParseError> {
    let (e, f) = (edge_token(a, n)?, edge_token(b, n)?);
    if e.is_adjacent(&f) {
        return b.fail(format!("edges {e} and {f} share an endpoint and cannot cross"));
    }
    Ok((e, f))
}

fn parse_colors(s: &Section<'_>, n: usize) -> Result<EdgeColoring, ParseError> {
    let Some(&kt) = s.args.first() else {
        return s.name.fail("expected `colors: k=<k>`");
    };
    let k = kt.keyed("k")?;
    if k < 2 {
        return kt.fail(format!("coloring needs at least 2 colors, got k={k}"));
    }
    let mut colors: Vec<Option<usize>> = vec![None; edge_count(n)];
    for line in &s.lines {
        let tag = line.tok(0)?;
        if tag.text != "e" {
            return tag.fail(format!("expected a color line `e u v : c`, found {:?}", tag.text));
        }
        let (u, v) = (vertex(line.tok(1)?, n)?, vertex(line.tok(2)?, n)?);
        if u == v {
            return line.tok(2)?.fail(format!("loop edge at vertex {u}"));
        }
        let colon = line.tok(3)?;
        if colon.text != ":" {
            return colon.fail("expected `:`");
        }
        let ct = line.tok(4)?;
        line.expect_len(5)?;
        let c = ct.usize()?;
        if c >= k {
            return ct.fail(format!("color index out of range: {c} with k={k}"));
        }
        let slot = &mut colors[Edge::new(u, v).index(n)];
        if slot.is_some() {
            return tag.fail(format!("edge {u}-{v} colored twice"));
        }
        *slot = Some(c);
    }
    let mut out = Vec::with_capacity(colors.len());
    for (i, c) in colors.into_iter().enumerate() {
        match c {
            Some(c) => out.push(c),
            None => return s.name.fail(format!("missing color for edge {}", Edge::from_index(i, n))),
        }
    }
    EdgeColoring::new(n, k, out).or_else(|e| s.name.fail(e.to_string()))
}

fn write_colors(out: &mut String, c: &EdgeColoring) {
    let _ = writeln!(out, "colors: k={}", c.k());
    for e in all_edges(c.n()) {
        let _ = writeln!(out, "e {} {} : {}", e.u(), e.v(), c.color(e));
    }
}

fn optional_colors(doc: &Document<'_>, n: usize) -> Result<Option<EdgeColoring>, ParseError> {
    doc.section("colors").map(|s| parse_colors(s, n)).transpose()
}

/// Colors default to all-zero with k=2 when the section is absent.
fn colors_or_default(doc: &Document<'_>, n: usize) -> Result<EdgeColoring, ParseError> {
    Ok(match optional_colors(doc, n)? {
        Some(c) => c,
        None => EdgeColoring::uniform(n, 2, 0).expect("k=2"),
    })
}

// ---------------------------------------------------------------- drawings

pub fn parse_drawing(text: &str) -> Result<(Drawing, Option<EdgeColoring>), ParseError> {
    let doc = Document::parse(text, "drawing")?;
    doc.check_sections(&["crossings", "rotations", "labels", "colors"])?;
    doc.header.expect_len(2)?;
    let n = doc.header.tok(1)?.keyed("n")?;

    let mut crossings = Vec::new();
    if let Some(s) = doc.section("crossings") {
        for line in &s.lines {
            if line.toks.len() % 2 != 0 {
                return line.end().fail("crossing pairs come as `a-b c-d`");
            }
            for pair in line.toks.chunks(2) {
                crossings.push(edge_pair(pair[0], pair[1], n)?);
            }
        }
    }
    let mut d = Drawing::new(n, crossings);

    if let Some(s) = doc.section("rotations") {
        let mut rot: Vec<Option<Vec<usize>>> = vec![None; n];
        for line in &s.lines {
            let v = vertex(line.tok(0)?, n)?;
            if line.tok(1)?.text != ":" {
                return line.tok(1)?.fail("expected `:`");
            }
            let mut order = Vec::with_capacity(n - 1);
            let mut seen = vec![false; n];
            for &t in &line.toks[2..] {
                let w = vertex(t, n)?;
                if w == v || std::mem::replace(&mut seen[w], true) {
                    return t.fail(format!("rotation at {v} is not a permutation of the other vertices"));
                }
                order.push(w);
            }
            if order.len() != n - 1 {
                return line.end().fail(format!("rotation at {v} lists {} of {} vertices", order.len(), n - 1));
            }
            if rot[v].replace(order).is_some() {
                return line.tok(0)?.fail(format!("rotation at {v} given twice"));
            }
        }
        let rot: Option<Vec<Vec<usize>>> = rot.into_iter().collect();
        match rot {
            Some(r) => d = d.with_rotations(r),
            None => return s.name.fail("rotations must be given for every vertex"),
        }
    }

    if let Some(s) = doc.section("labels") {
        let mut labels: Vec<Option<VertexLabel>> = vec![None; n];
        for line in &s.lines {
            let v = vertex(line.tok(0)?, n)?;
            let kind = line.tok(2)?;
            let label = match kind.text {
                "inner" => {
                    line.expect_len(3)?;
                    VertexLabel::Inner
                }
                "outer" => {
                    line.expect_len(3)?;
                    VertexLabel::Outer
                }
                "spine" => {
                    line.expect_len(4)?;
                    VertexLabel::Spine(line.tok(3)?.usize()?)
                }
                "x" => {
                    line.expect_len(4)?;
                    VertexLabel::XRank(line.tok(3)?.usize()?)
                }
                other => return kind.fail(format!("unknown label {other:?}; expected inner, outer, spine or x")),
            };
            if labels[v].replace(label).is_some() {
                return line.tok(0)?.fail(format!("label for {v} given twice"));
            }
        }
        let labels: Option<Vec<VertexLabel>> = labels.into_iter().collect();
        match labels {
            Some(l) => d = d.with_labels(l),
            None => return s.name.fail("labels must be given for every vertex"),
        }
    }
    let colors = optional_colors(&doc, n)?;
    Ok((d, colors))
}

pub fn serialize_drawing(d: &Drawing, c: Option<&EdgeColoring>) -> String {
    let mut out = format!("drawing n={}\n", d.n());
    out.push_str("crossings:\n");
    for (e, f) in d.crossings() {
        let _ = writeln!(out, "{}-{} {}-{}", e.u(), e.v(), f.u(), f.v());
    }
    if let Some(rot) = d.rotations() {
        out.push_str("rotations:\n");
        for (v, r) in rot.iter().enumerate() {
            let list: Vec<String> = r.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(out, "{v}: {}", list.join(" "));
        }
    }
    if let Some(labels) = d.labels() {
        out.push_str("labels:\n");
        for (v, l) in labels.iter().enumerate() {
            let _ = match l {
                VertexLabel::Inner => writeln!(out, "{v}: inner"),
                VertexLabel::Outer => writeln!(out, "{v}: outer"),
                VertexLabel::Spine(p) => writeln!(out, "{v}: spine {p}"),
                VertexLabel::XRank(r) => writeln!(out, "{v}: x {r}"),
            };
        }
    }
    if let Some(c) = c {
        write_colors(&mut out, c);
    }
    out
}

/// A standalone coloring file: just a `colors: k=<k>` section.
pub fn parse_coloring(text: &str, n: usize) -> Result<EdgeColoring, ParseError> {
    let lines = tokenize(text);
    let Some(first) = lines.first() else {
        return err(1, 1, "empty coloring file");
    };
    if first.toks[0].text != "colors" || first.toks.get(1).map(|t| t.text) != Some(":") {
        return first.toks[0].fail("expected `colors: k=<k>`");
    }
    let s = Section { name: first.toks[0], args: first.toks[2..].to_vec(), lines: lines[1..].to_vec() };
    parse_colors(&s, n)
}

pub fn serialize_coloring(c: &EdgeColoring) -> String {
    let mut out = String::new();
    write_colors(&mut out, c);
    out
}

// ---------------------------------------------------------------- layouts

fn fmt_angle(a: &Angle) -> String {
    format!("{}/{}", a.numer(), a.denom())
}

pub fn parse_cylindrical(text: &str) -> Result<CylindricalLayout, ParseError> {
    let doc = Document::parse(text, "cylindrical")?;
    doc.check_sections(&["inner", "outer", "windings", "colors"])?;
    doc.header.expect_len(3)?;
    let ni = doc.header.tok(1)?.keyed("n_inner")?;
    let no = doc.header.tok(2)?.keyed("n_outer")?;
    let n = ni + no;
    let angles = |name: &str, count: usize| -> Result<Vec<Angle>, ParseError> {
        let Some(s) = doc.section(name) else {
            return if count == 0 { Ok(Vec::new()) } else { doc.require(name).map(|_| Vec::new()) };
        };
        let toks: Vec<Tok<'_>> = s.args.iter().chain(s.lines.iter().flat_map(|l| l.toks.iter())).copied().collect();
        if toks.len() != count {
            return s.name.fail(format!("expected {count} {name} angles, found {}", toks.len()));
        }
        toks.iter().map(|t| t.rational()).collect()
    };
    let inner = angles("inner", ni)?;
    let outer = angles("outer", no)?;

    let mut windings: Vec<Option<Angle>> = vec![None; ni * no];
    if let Some(s) = doc.section("windings") {
        for line in &s.lines {
            let u = line.tok(0)?;
            let w = line.tok(1)?;
            let (ui, wi) = (vertex(u, n)?, vertex(w, n)?);
            if ui >= ni || wi < ni {
                return u.fail(format!("winding {ui} {wi} is not inner-then-outer"));
            }
            if line.tok(2)?.text != ":" {
                return line.tok(2)?.fail("expected `:`");
            }
            line.expect_len(4)?;
            let a = line.tok(3)?.rational()?;
            if windings[ui * no + (wi - ni)].replace(a).is_some() {
                return u.fail(format!("winding {ui} {wi} given twice"));
            }
        }
    } else if ni * no > 0 {
        doc.require("windings")?;
    }
    let mut ws = Vec::with_capacity(windings.len());
    for (i, w) in windings.into_iter().enumerate() {
        match w {
            Some(w) => ws.push(w),
            None => {
                return doc.header.end().fail(format!("missing winding for side edge {}-{}", i / no, ni + i % no));
            }
        }
    }
    let color = colors_or_default(&doc, n)?;
    CylindricalLayout::new(inner, outer, ws, color).or_else(|e| doc.header.toks[0].fail(e.to_string()))
}

pub fn serialize_cylindrical(l: &CylindricalLayout) -> String {
    let (ni, no) = (l.n_inner(), l.n_outer());
    let mut out = format!("cylindrical n_inner={ni} n_outer={no}\n");
    let line = |a: &[Angle]| a.iter().map(fmt_angle).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "inner:\n{}", line(l.inner_angles()));
    let _ = writeln!(out, "outer:\n{}", line(l.outer_angles()));
    out.push_str("windings:\n");
    for i in 0..ni {
        for j in 0..no {
            let _ = writeln!(out, "{} {} : {}", i, ni + j, fmt_angle(&l.winding(i, j)));
        }
    }
    write_colors(&mut out, l.coloring());
    out
}

pub fn parse_book(text: &str) -> Result<BookLayout, ParseError> {
    let doc = Document::parse(text, "book")?;
    doc.check_sections(&["spine", "pages", "colors"])?;
    doc.header.expect_len(2)?;
    let n = doc.header.tok(1)?.keyed("n")?;
    let s = doc.require("spine")?;
    let spine: Vec<usize> = s
        .args
        .iter()
        .chain(s.lines.iter().flat_map(|l| l.toks.iter()))
        .map(|&t| vertex(t, n))
        .collect::<Result<_, _>>()?;
    let mut pages: Vec<Option<Page>> = vec![None; edge_count(n)];
    if let Some(s) = doc.section("pages") {
        for line in &s.lines {
            let (u, v) = (vertex(line.tok(0)?, n)?, vertex(line.tok(1)?, n)?);
            if u == v {
                return line.tok(1)?.fail(format!("loop edge at vertex {u}"));
            }
            if line.tok(2)?.text != ":" {
                return line.tok(2)?.fail("expected `:`");
            }
            let p = line.tok(3)?;
            line.expect_len(4)?;
            let page = match p.text {
                "top" => Page::Top,
                "bottom" => Page::Bottom,
                other => return p.fail(format!("expected top or bottom, found {other:?}")),
            };
            if pages[Edge::new(u, v).index(n)].replace(page).is_some() {
                return line.tok(0)?.fail(format!("page of {u}-{v} given twice"));
            }
        }
    }
    let mut ps = Vec::with_capacity(pages.len());
    for (i, p) in pages.into_iter().enumerate() {
        match p {
            Some(p) => ps.push(p),
            None => return doc.header.end().fail(format!("page assignment missing for edge {}", Edge::from_index(i, n))),
        }
    }
    let color = colors_or_default(&doc, n)?;
    BookLayout::new(spine, ps, color).or_else(|e| doc.header.toks[0].fail(e.to_string()))
}

pub fn serialize_book(b: &BookLayout) -> String {
    let n = b.n();
    let mut out = format!("book n={n}\n");
    let spine: Vec<String> = b.spine().iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "spine: {}", spine.join(" "));
    out.push_str("pages:\n");
    for e in all_edges(n) {
        let _ = writeln!(out, "{} {} : {}", e.u(), e.v(), b.page(e));
    }
    write_colors(&mut out, b.coloring());
    out
}

pub fn parse_points(text: &str) -> Result<PointDrawing, ParseError> {
    let doc = Document::parse(text, "points")?;
    doc.check_sections(&["coords", "colors"])?;
    doc.header.expect_len(2)?;
    let n = doc.header.tok(1)?.keyed("n")?;
    let s = doc.require("coords")?;
    if s.lines.len() != n {
        return s.name.fail(format!("expected {n} coordinate lines, found {}", s.lines.len()));
    }
    let mut pts = Vec::with_capacity(n);
    for line in &s.lines {
        line.expect_len(2)?;
        pts.push(Point::new(line.tok(0)?.i64()?, line.tok(1)?.i64()?));
    }
    let color = colors_or_default(&doc, n)?;
    PointDrawing::new(pts, color).or_else(|e| doc.header.toks[0].fail(e.to_string()))
}

pub fn serialize_points(p: &PointDrawing) -> String {
    let mut out = format!("points n={}\ncoords:\n", p.n());
    for q in p.points() {
        let _ = writeln!(out, "{} {}", q.x, q.y);
    }
    write_colors(&mut out, p.coloring());
    out
}

// ---------------------------------------------------------------- class files

/// One drawing per line: `n;a-b c-d,a-b c-d,...`.
pub fn parse_class_file(text: &str) -> Result<Vec<Drawing>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let line = i + 1;
        let Some((n_text, pairs)) = body.split_once(';') else {
            return err(line, 1, "expected `n;<crossing pairs>`");
        };
        let lead = n_text.len() - n_text.trim_start().len();
        let n = Tok { line, col: lead + 1, text: n_text.trim() }.usize()?;
        let mut crossings = Vec::new();
        let mut col = n_text.len() + 2;
        for pair in pairs.split(',') {
            let toks: Vec<Tok<'_>> = tokenize(pair)
                .into_iter()
                .flat_map(|l| l.toks)
                .map(|t| Tok { line, col: col + t.col - 1, ..t })
                .collect();
            match toks.as_slice() {
                [] => {}
                [a, b] => crossings.push(edge_pair(*a, *b, n)?),
                _ => return err(line, col, format!("expected a crossing pair `a-b c-d`, found {:?}", pair.trim())),
            }
            col += pair.len() + 1;
        }
        out.push(Drawing::new(n, crossings));
    }
    Ok(out)
}

pub fn serialize_class_record(d: &Drawing) -> String {
    let pairs: Vec<String> =
        d.crossings().iter().map(|(e, f)| format!("{}-{} {}-{}", e.u(), e.v(), f.u(), f.v())).collect();
    format!("{};{}", d.n(), pairs.join(","))
}

/// Tree files hold `edge u v` lines; other lines (such as a report's
/// `key=value` lines) are skipped.
pub fn parse_tree(text: &str, n: usize) -> Result<EdgeSet, ParseError> {
    let mut tree = EdgeSet::new();
    for line in tokenize(text) {
        if line.toks[0].text != "edge" {
            continue;
        }
        line.expect_len(3)?;
        let (u, v) = (vertex(line.tok(1)?, n)?, vertex(line.tok(2)?, n)?);
        if u == v {
            return line.tok(2)?.fail(format!("loop edge at vertex {u}"));
        }
        tree.insert(Edge::new(u, v));
    }
    Ok(tree)
}

/// Any supported file, dispatched on its header keyword.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Drawing(Drawing, Option<EdgeColoring>),
    Cylindrical(CylindricalLayout),
    Book(BookLayout),
    Points(PointDrawing),
    Classes(Vec<Drawing>),
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Instance::Drawing(..) => "drawing",
            Instance::Cylindrical(_) => "cylindrical",
            Instance::Book(_) => "book",
            Instance::Points(_) => "points",
            Instance::Classes(_) => "class file",
        })
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let first = tokenize(text).into_iter().next();
    let Some(first) = first else {
        return err(1, 1, "empty input");
    };
    match first.toks[0].text {
        "drawing" => parse_drawing(text).map(|(d, c)| Instance::Drawing(d, c)),
        "cylindrical" => parse_cylindrical(text).map(Instance::Cylindrical),
        "book" => parse_book(text).map(Instance::Book),
        "points" => parse_points(text).map(Instance::Points),
        t if t.contains(';') => parse_class_file(text).map(Instance::Classes),
        other => first.toks[0].fail(format!(
            "unknown file kind {other:?}; expected drawing, cylindrical, book, points or a class file"
        )),
    }
}
