use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::limar::SplitSpec;
use crate::skeleton::{
    build_kgraph, check_square, BuildError, EdgeId, KGraph, Skeleton, SkeletonBuilder,
    SquareDefect, SquareSet, TwoPath, VertexId,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing `kgraph` header")]
    MissingHeader,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(String),
    #[error("header declares k={declared} but lists {listed} colors")]
    ColorCount { declared: usize, listed: usize },
    #[error("expected {expected}, found {found}")]
    Expected { expected: String, found: String },
    #[error("unknown declaration {0:?}")]
    UnknownDeclaration(String),
    #[error("{0:?} is not allowed here")]
    NotAllowed(String),
    #[error("duplicate color {0}")]
    DuplicateColor(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("duplicate id {0}: already declared as a vertex")]
    VertexEdgeClash(String),
    #[error("unknown color {0}")]
    UnknownColor(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("bad square: {0}")]
    Square(SquareDefect),
    #[error("a second split declaration")]
    SplitTwice,
    #[error("partition declared without a split line")]
    PartitionWithoutSplit,
    #[error("second partition for {0}")]
    DuplicatePartition(String),
    #[error("{vertex} has no outgoing {color} edges to partition")]
    UnexpectedPartition { vertex: String, color: String },
    #[error("no partition for {vertex}, which has outgoing {color} edges")]
    MissingPartition { vertex: String, color: String },
    #[error("{edge} is not a {color} edge out of {vertex}")]
    ForeignEdge {
        edge: String,
        color: String,
        vertex: String,
    },
    #[error("{edge} appears twice in the partition of {vertex}")]
    RepeatedEdge { edge: String, vertex: String },
    #[error("empty block in the partition of {0}")]
    EmptyBlock(String),
    #[error("partition of {vertex} does not cover {edge}")]
    UncoveredEdge { edge: String, vertex: String },
    #[error("bad parent line: {0}")]
    BadParent(String),
}

/// A parsed `.kg` document. The skeleton and squares are structurally sound
/// but not yet checked against the k-graph axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub skeleton: Skeleton,
    pub squares: SquareSet,
    pub split: Option<SplitSpec>,
}

impl GraphDocument {
    pub fn from_graph(g: &KGraph) -> Self {
        GraphDocument {
            skeleton: g.skeleton().clone(),
            squares: g.squares().clone(),
            split: None,
        }
    }

    /// Checks the axioms and builds the k-graph.
    pub fn build(&self) -> Result<KGraph, BuildError> {
        build_kgraph(self.skeleton.clone(), self.squares.clone())
    }
}

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
    pos: usize,
    end: usize,
}

fn tokenize(line: &str) -> (Vec<Tok<'_>>, usize) {
    let body = line.split('#').next().unwrap_or("");
    let col = |i: usize| body[..i].chars().count() + 1;
    let mut toks = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in body.char_indices() {
        let punct = matches!(c, '{' | '}' | ',' | '=' | ':');
        if c.is_whitespace() || punct {
            if let Some(s) = start.take() {
                toks.push(Tok { text: &body[s..i], col: col(s) });
            }
            if punct {
                toks.push(Tok { text: &body[i..i + c.len_utf8()], col: col(i) });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        toks.push(Tok { text: &body[s..], col: col(s) });
    }
    (toks, col(body.len()))
}

fn err(line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, col, kind }
}

fn is_punct(s: &str) -> bool {
    matches!(s, "{" | "}" | "," | "=" | ":")
}

impl<'a> Line<'a> {
    fn error(&self, tok: Tok<'_>, kind: ParseErrorKind) -> ParseError {
        err(self.no, tok.col, kind)
    }

    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).copied()
    }

    fn expected(&self, what: &str) -> ParseError {
        let (col, found) = match self.peek() {
            Some(t) => (t.col, format!("{:?}", t.text)),
            None => (self.end, "end of line".to_string()),
        };
        err(
            self.no,
            col,
            ParseErrorKind::Expected {
                expected: what.to_string(),
                found,
            },
        )
    }

    fn ident(&mut self, what: &str) -> Result<Tok<'a>, ParseError> {
        match self.peek() {
            Some(t) if !is_punct(t.text) => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.expected(what)),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<Tok<'a>, ParseError> {
        match self.peek() {
            Some(t) if t.text == word => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.expected(&format!("`{word}`"))),
        }
    }

    fn eat(&mut self, word: &str) -> bool {
        if self.peek().is_some_and(|t| t.text == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.expected("end of line")),
        }
    }

    /// `name = value` with a fixed name.
    fn setting(&mut self, name: &str) -> Result<Tok<'a>, ParseError> {
        self.keyword(name)?;
        self.keyword("=")?;
        self.ident(&format!("a value for {name}"))
    }
}

struct RawSplit<'a> {
    line: usize,
    color: Tok<'a>,
    base: Tok<'a>,
}

struct RawPartition<'a> {
    line: usize,
    vertex: Tok<'a>,
    blocks: Vec<(Tok<'a>, Vec<Tok<'a>>)>,
}

#[derive(Default)]
struct RawSplitBlock<'a> {
    split: Option<RawSplit<'a>>,
    partitions: Vec<RawPartition<'a>>,
}

impl<'a> RawSplitBlock<'a> {
    /// Handles a `split` or `partition` line; `Ok(false)` for anything else.
    fn take(&mut self, head: Tok<'a>, line: &mut Line<'a>) -> Result<bool, ParseError> {
        match head.text {
            "split" => {
                if self.split.is_some() {
                    return Err(line.error(head, ParseErrorKind::SplitTwice));
                }
                let color = line.setting("color")?;
                let base = line.setting("base")?;
                line.finish()?;
                self.split = Some(RawSplit {
                    line: line.no,
                    color,
                    base,
                });
            }
            "partition" => {
                if self.split.is_none() {
                    return Err(line.error(head, ParseErrorKind::PartitionWithoutSplit));
                }
                let vertex = line.ident("a vertex")?;
                line.keyword(":")?;
                let mut blocks = Vec::new();
                while let Some(open) = line.peek() {
                    line.keyword("{")?;
                    let mut edges = Vec::new();
                    if !line.eat("}") {
                        loop {
                            edges.push(line.ident("an edge")?);
                            if line.eat("}") {
                                break;
                            }
                            line.keyword(",")?;
                        }
                    }
                    blocks.push((open, edges));
                }
                if blocks.is_empty() {
                    return Err(line.expected("`{`"));
                }
                self.partitions.push(RawPartition {
                    line: line.no,
                    vertex,
                    blocks,
                });
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn resolve(&self, sk: &Skeleton) -> Result<Option<SplitSpec>, ParseError> {
        let Some(split) = &self.split else {
            return Ok(None);
        };
        let color = sk.color_by_name(split.color.text).ok_or_else(|| {
            err(
                split.line,
                split.color.col,
                ParseErrorKind::UnknownColor(split.color.text.into()),
            )
        })?;
        let base = sk.vertex(split.base.text).ok_or_else(|| {
            err(
                split.line,
                split.base.col,
                ParseErrorKind::UnknownVertex(split.base.text.into()),
            )
        })?;
        let color_name = || split.color.text.to_string();
        let mut partitions: BTreeMap<VertexId, Vec<Vec<EdgeId>>> = BTreeMap::new();
        for p in &self.partitions {
            let at = |t: Tok<'_>, kind| err(p.line, t.col, kind);
            let v = sk
                .vertex(p.vertex.text)
                .ok_or_else(|| at(p.vertex, ParseErrorKind::UnknownVertex(p.vertex.text.into())))?;
            let vname = || p.vertex.text.to_string();
            if partitions.contains_key(&v) {
                return Err(at(p.vertex, ParseErrorKind::DuplicatePartition(vname())));
            }
            let fan = sk.outgoing(v, color);
            if fan.is_empty() {
                return Err(at(
                    p.vertex,
                    ParseErrorKind::UnexpectedPartition {
                        vertex: vname(),
                        color: color_name(),
                    },
                ));
            }
            let mut seen = BTreeSet::new();
            let mut blocks = Vec::new();
            for (open, toks) in &p.blocks {
                if toks.is_empty() {
                    return Err(at(*open, ParseErrorKind::EmptyBlock(vname())));
                }
                let mut block = Vec::new();
                for t in toks {
                    let e = sk
                        .edge(t.text)
                        .ok_or_else(|| at(*t, ParseErrorKind::UnknownEdge(t.text.into())))?;
                    if !fan.contains(&e) {
                        return Err(at(
                            *t,
                            ParseErrorKind::ForeignEdge {
                                edge: t.text.into(),
                                color: color_name(),
                                vertex: vname(),
                            },
                        ));
                    }
                    if !seen.insert(e) {
                        return Err(at(
                            *t,
                            ParseErrorKind::RepeatedEdge {
                                edge: t.text.into(),
                                vertex: vname(),
                            },
                        ));
                    }
                    block.push(e);
                }
                block.sort();
                blocks.push(block);
            }
            if let Some(e) = fan.iter().find(|e| !seen.contains(e)) {
                return Err(at(
                    p.vertex,
                    ParseErrorKind::UncoveredEdge {
                        edge: sk.edge_name(*e).into(),
                        vertex: vname(),
                    },
                ));
            }
            partitions.insert(v, blocks);
        }
        if let Some(v) = sk
            .vertex_ids()
            .find(|v| !sk.outgoing(*v, color).is_empty() && !partitions.contains_key(v))
        {
            return Err(err(
                split.line,
                1,
                ParseErrorKind::MissingPartition {
                    vertex: sk.vertex_name(v).into(),
                    color: color_name(),
                },
            ));
        }
        Ok(Some(SplitSpec {
            color,
            base,
            partitions,
        }))
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let (toks, end) = tokenize(l);
        (!toks.is_empty()).then_some(Line {
            no: i + 1,
            toks,
            pos: 0,
            end,
        })
    })
}

/// Parses a `.kg` document.
pub fn parse(text: &str) -> Result<GraphDocument, ParseError> {
    let mut it = lines(text);
    let mut header = it
        .next()
        .ok_or_else(|| err(1, 1, ParseErrorKind::MissingHeader))?;
    let colors = parse_header(&mut header)?;

    let mut vertices: Vec<(usize, Tok<'_>)> = Vec::new();
    let mut edges: Vec<(usize, [Tok<'_>; 4])> = Vec::new();
    let mut squares: Vec<(usize, [Tok<'_>; 4])> = Vec::new();
    let mut split = RawSplitBlock::default();
    for mut line in it {
        let head = line.ident("a declaration")?;
        match head.text {
            "vertex" => {
                vertices.push((line.no, line.ident("a vertex id")?));
                line.finish()?;
            }
            "edge" => {
                let id = line.ident("an edge id")?;
                line.keyword(":")?;
                let color = line.ident("a color")?;
                let src = line.ident("a source vertex")?;
                line.keyword("->")?;
                let rng = line.ident("a range vertex")?;
                line.finish()?;
                edges.push((line.no, [id, color, src, rng]));
            }
            "square" => {
                let a = line.ident("an edge")?;
                let b = line.ident("an edge")?;
                line.keyword("=")?;
                let c = line.ident("an edge")?;
                let d = line.ident("an edge")?;
                line.finish()?;
                squares.push((line.no, [a, b, c, d]));
            }
            "kgraph" => {
                return Err(line.error(head, ParseErrorKind::NotAllowed("kgraph".into())));
            }
            _ => {
                if !split.take(head, &mut line)? {
                    return Err(line.error(head, ParseErrorKind::UnknownDeclaration(head.text.into())));
                }
            }
        }
    }

    let mut vertex_names = BTreeSet::new();
    for (no, t) in &vertices {
        if !vertex_names.insert(t.text) {
            return Err(err(*no, t.col, ParseErrorKind::DuplicateVertex(t.text.into())));
        }
    }
    let mut edge_names = BTreeSet::new();
    for (no, [id, color, src, rng]) in &edges {
        if vertex_names.contains(id.text) {
            return Err(err(*no, id.col, ParseErrorKind::VertexEdgeClash(id.text.into())));
        }
        if !edge_names.insert(id.text) {
            return Err(err(*no, id.col, ParseErrorKind::DuplicateEdge(id.text.into())));
        }
        if !colors.iter().any(|c| c == color.text) {
            return Err(err(*no, color.col, ParseErrorKind::UnknownColor(color.text.into())));
        }
        for v in [src, rng] {
            if !vertex_names.contains(v.text) {
                return Err(err(*no, v.col, ParseErrorKind::UnknownVertex(v.text.into())));
            }
        }
    }
    let mut builder = SkeletonBuilder::new(colors.iter().cloned());
    for (_, t) in &vertices {
        builder.vertex(t.text);
    }
    for (_, [id, color, src, rng]) in &edges {
        builder.edge(id.text, color.text, src.text, rng.text);
    }
    let skeleton = builder
        .build()
        .map_err(|e| err(1, 1, ParseErrorKind::NotAllowed(e.to_string())))?;

    let mut pairs = Vec::new();
    for (no, toks) in &squares {
        let mut ids = [EdgeId(0); 4];
        for (slot, t) in ids.iter_mut().zip(toks) {
            *slot = skeleton
                .edge(t.text)
                .ok_or_else(|| err(*no, t.col, ParseErrorKind::UnknownEdge(t.text.into())))?;
        }
        let a = TwoPath::new(ids[0], ids[1]);
        let b = TwoPath::new(ids[2], ids[3]);
        check_square(&skeleton, a, b)
            .map_err(|d| err(*no, toks[0].col, ParseErrorKind::Square(d)))?;
        pairs.push((a, b));
    }
    let squares = SquareSet::new(&skeleton, pairs)
        .map_err(|e| err(1, 1, ParseErrorKind::NotAllowed(e.to_string())))?;
    let split = split.resolve(&skeleton)?;
    Ok(GraphDocument {
        skeleton,
        squares,
        split,
    })
}

fn parse_header(line: &mut Line<'_>) -> Result<Vec<String>, ParseError> {
    line.keyword("kgraph")
        .map_err(|_| err(line.no, 1, ParseErrorKind::MissingHeader))?;
    let version = line.ident("a format version")?;
    if version.text.parse::<u32>().ok() != Some(FORMAT_VERSION) {
        return Err(line.error(version, ParseErrorKind::UnsupportedVersion(version.text.into())));
    }
    let k_tok = line.setting("k")?;
    let k: usize = k_tok
        .text
        .parse()
        .map_err(|_| line.error(k_tok, ParseErrorKind::Expected {
            expected: "an integer".into(),
            found: format!("{:?}", k_tok.text),
        }))?;
    let first = line.setting("colors")?;
    let mut colors = vec![first];
    while line.eat(",") {
        colors.push(line.ident("a color name")?);
    }
    line.finish()?;
    for (i, c) in colors.iter().enumerate() {
        if colors[..i].iter().any(|d| d.text == c.text) {
            return Err(line.error(*c, ParseErrorKind::DuplicateColor(c.text.into())));
        }
    }
    if k != colors.len() {
        return Err(line.error(
            k_tok,
            ParseErrorKind::ColorCount {
                declared: k,
                listed: colors.len(),
            },
        ));
    }
    Ok(colors.iter().map(|t| t.text.to_string()).collect())
}

/// Parses a partition file: a `split` line and its `partition` lines.
pub fn parse_partition(text: &str, skeleton: &Skeleton) -> Result<SplitSpec, ParseError> {
    let mut block = RawSplitBlock::default();
    for mut line in lines(text) {
        let head = line.ident("a declaration")?;
        if !block.take(head, &mut line)? {
            return Err(line.error(head, ParseErrorKind::NotAllowed(head.text.into())));
        }
    }
    block
        .resolve(skeleton)?
        .ok_or_else(|| err(1, 1, ParseErrorKind::Expected {
            expected: "a `split` line".into(),
            found: "end of file".into(),
        }))
}

/// Canonical text of a document: sorted declarations, fixed spacing.
pub fn serialize(doc: &GraphDocument) -> String {
    let sk = &doc.skeleton;
    let mut out = String::new();
    out.push_str("# Paths are written right-to-left: `square a b = c d` identifies\n");
    out.push_str("# the path b-then-a with the path d-then-c.\n");
    let _ = writeln!(
        out,
        "kgraph {FORMAT_VERSION} k={} colors={}",
        sk.k(),
        sk.color_names().join(",")
    );
    out.push('\n');
    for v in sk.vertex_ids() {
        let _ = writeln!(out, "vertex {}", sk.vertex_name(v));
    }
    if sk.edge_count() > 0 {
        out.push('\n');
    }
    for e in sk.edge_ids() {
        let _ = writeln!(
            out,
            "edge {} : {} {} -> {}",
            sk.edge_name(e),
            sk.color_name(sk.color(e)),
            sk.vertex_name(sk.source(e)),
            sk.vertex_name(sk.range(e))
        );
    }
    if !doc.squares.is_empty() {
        out.push('\n');
    }
    for sq in doc.squares.iter() {
        let _ = writeln!(out, "square {}", sq.display(sk));
    }
    if let Some(spec) = &doc.split {
        out.push('\n');
        out.push_str(&serialize_split(sk, spec));
    }
    out
}

/// The `split` line and one `partition` line per vertex.
pub fn serialize_split(sk: &Skeleton, spec: &SplitSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "split color={} base={}",
        sk.color_name(spec.color),
        sk.vertex_name(spec.base)
    );
    for (v, blocks) in &spec.partitions {
        let blocks: Vec<String> = blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort();
                let names: Vec<&str> = b.iter().map(|e| sk.edge_name(*e)).collect();
                format!("{{{}}}", names.join(", "))
            })
            .collect();
        let _ = writeln!(out, "partition {} : {}", sk.vertex_name(*v), blocks.join(" "));
    }
    out
}

/// Parent-map sidecar for a split: the split color, then one
/// `parent <child> = <parent>` line per vertex and edge of the split graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentMap {
    pub color: String,
    pub parents: Vec<(String, String)>,
}

pub fn serialize_parents(map: &ParentMap) -> String {
    let mut out = String::from("# parent <split item> = <original item>\n");
    let _ = writeln!(out, "color {}", map.color);
    for (child, parent) in &map.parents {
        let _ = writeln!(out, "parent {child} = {parent}");
    }
    out
}

pub fn parse_parents(text: &str) -> Result<ParentMap, ParseError> {
    let mut color = None;
    let mut parents = Vec::new();
    for mut line in lines(text) {
        let head = line.ident("a declaration")?;
        match head.text {
            "color" if color.is_none() => {
                color = Some(line.ident("a color")?.text.to_string());
                line.finish()?;
            }
            "parent" => {
                let child = line.ident("a split item")?;
                line.keyword("=")?;
                let parent = line.ident("an original item")?;
                line.finish()?;
                parents.push((child.text.to_string(), parent.text.to_string()));
            }
            _ => return Err(line.error(head, ParseErrorKind::NotAllowed(head.text.into()))),
        }
    }
    let color = color.ok_or_else(|| err(1, 1, ParseErrorKind::BadParent("no `color` line".into())))?;
    Ok(ParentMap { color, parents })
}
