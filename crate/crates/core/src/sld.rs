//! The line-oriented `.sld` diagram format.
//!
//! ```text
//! group octahedral
//! hopf TL
//! circle Y
//! arc A7 from TL.b slot 1 to Y slot 0 word TL.a:+ Y:+
//! decorate TL = perm (12)
//! # comment
//! ```
//!
//! Statements are parsed one per line. [`SldDocument::to_string`] emits the
//! canonical form: single spaces between tokens, `twist` only when nonzero,
//! permutations in canonical cycle notation.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::conditions::Decoration;
use crate::diagram::{ArcBand, ArcEnd, CircleRef, Crossing, NodeKind, Sign, SingularLinkDiagram};
use crate::group::GroupName;
use crate::linalg::Matrix3;
use crate::perm::{perm_to_rotation, rotation_to_perm, CubePermutation};
use crate::rotation::RotationElement;
use crate::QSqrt5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Element {
    Perm(CubePermutation),
    Matrix(RotationElement<QSqrt5>),
}

impl Element {
    pub fn rotation(&self) -> RotationElement<QSqrt5> {
        match self {
            Element::Perm(p) => perm_to_rotation(p),
            Element::Matrix(m) => m.clone(),
        }
    }

    /// Cube rotations print as permutations, anything else as a matrix.
    pub fn from_rotation(g: &RotationElement<QSqrt5>) -> Self {
        match rotation_to_perm(g) {
            Some(p) => Element::Perm(p),
            None => Element::Matrix(g.clone()),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "perm {p}"),
            Element::Matrix(m) => {
                write!(f, "matrix")?;
                for e in m.matrix().entries() {
                    write!(f, " {e}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Statement {
    Group(GroupName),
    Circle(String),
    Hopf(String),
    Arc(ArcBand),
    Decorate {
        node: String,
        element: Element,
    },
    /// Text after `#`, verbatim.
    Comment(String),
    Blank,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SldDocument {
    pub statements: Vec<Statement>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                tokens.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    tokens
}

struct LineParser<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column, message: message.into() }
    }

    fn next(&mut self, what: &str) -> Result<&Token<'a>, ParseError> {
        match self.tokens.get(self.pos) {
            Some(_) => {
                self.pos += 1;
                Ok(&self.tokens[self.pos - 1])
            }
            None => Err(self.error(self.end_column, format!("expected {what}, found end of line"))),
        }
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.text == kw {
            Ok(())
        } else {
            let (column, text) = (t.column, t.text.to_string());
            Err(self.error(column, format!("expected `{kw}`, found `{text}`")))
        }
    }

    fn identifier(&mut self) -> Result<String, ParseError> {
        let t = self.next("an identifier")?;
        if crate::diagram::is_identifier(t.text) {
            Ok(t.text.to_string())
        } else {
            let (column, text) = (t.column, t.text.to_string());
            Err(self.error(column, format!("invalid identifier `{text}`")))
        }
    }

    fn circle_ref(&mut self) -> Result<CircleRef, ParseError> {
        let t = self.next("a circle reference")?;
        let (column, text) = (t.column, t.text.to_string());
        text.parse().map_err(|_| self.error(column, format!("invalid circle reference `{text}`")))
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let t = self.next("an integer")?;
        let (column, text) = (t.column, t.text.to_string());
        text.parse().map_err(|_| self.error(column, format!("invalid integer `{text}`")))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(t.column, format!("unexpected `{}`", t.text))),
        }
    }
}

fn parse_arc(p: &mut LineParser<'_>) -> Result<ArcBand, ParseError> {
    let id = p.identifier()?;
    p.keyword("from")?;
    let start_circle = p.circle_ref()?;
    p.keyword("slot")?;
    let start_slot = p.integer()?;
    p.keyword("to")?;
    let end_circle = p.circle_ref()?;
    p.keyword("slot")?;
    let end_slot = p.integer()?;
    p.keyword("word")?;
    let mut word = Vec::new();
    let mut twist = 0;
    while let Some(t) = p.peek() {
        if t.text == "twist" {
            p.pos += 1;
            twist = p.integer()?;
            break;
        }
        let (column, text) = (t.column, t.text.to_string());
        p.pos += 1;
        let (r, sign) = text
            .rsplit_once(':')
            .ok_or_else(|| p.error(column, format!("expected REF:+ or REF:-, found `{text}`")))?;
        let sign = match sign {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(p.error(column, format!("invalid crossing sign in `{text}`"))),
        };
        let circle = r.parse().map_err(|_| p.error(column, format!("invalid circle reference `{r}`")))?;
        word.push(Crossing { circle, sign });
    }
    p.finish()?;
    Ok(ArcBand {
        id,
        start: ArcEnd { circle: start_circle, slot: start_slot },
        end: ArcEnd { circle: end_circle, slot: end_slot },
        word,
        twist,
    })
}

fn parse_element(p: &mut LineParser<'_>, raw: &str) -> Result<Element, ParseError> {
    let t = p.next("`perm` or `matrix`")?;
    let (column, kind) = (t.column, t.text.to_string());
    match kind.as_str() {
        "perm" => {
            let rest_start = p.peek().map(|t| t.column).unwrap_or(p.end_column);
            let rest: String = raw.chars().skip(rest_start - 1).collect();
            let cycles = rest.trim().trim_matches('"');
            let perm = cycles
                .parse()
                .map_err(|_| p.error(rest_start, format!("invalid cycle notation `{}`", rest.trim())))?;
            p.pos = p.tokens.len();
            Ok(Element::Perm(perm))
        }
        "matrix" => {
            let mut entries = Vec::with_capacity(9);
            for _ in 0..9 {
                let t = p.next("a scalar")?;
                let (c, text) = (t.column, t.text.to_string());
                entries.push(
                    QSqrt5::from_str(&text).map_err(|_| p.error(c, format!("invalid scalar `{text}`")))?,
                );
            }
            p.finish()?;
            let mut it = entries.into_iter();
            let mut row = || [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
            let m = Matrix3::from_rows([row(), row(), row()]);
            RotationElement::new(m)
                .map(Element::Matrix)
                .map_err(|e| p.error(column, format!("matrix is not a rotation: {e}")))
        }
        other => Err(p.error(column, format!("expected `perm` or `matrix`, found `{other}`"))),
    }
}

impl FromStr for SldDocument {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut statements = Vec::new();
        let mut node_ids = HashSet::new();
        let mut arc_ids = HashSet::new();
        let mut decorated = HashSet::new();
        let mut have_group = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() {
                statements.push(Statement::Blank);
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                statements.push(Statement::Comment(comment.trim_end().to_string()));
                continue;
            }
            let tokens = tokenize(raw);
            let mut p = LineParser { line, tokens, pos: 0, end_column: raw.trim_end().chars().count() + 1 };
            let kw = p.next("a statement")?;
            let (kw_column, kw) = (kw.column, kw.text.to_string());
            let dup = |p: &LineParser<'_>, what: &str, id: &str| {
                p.error(kw_column + kw.len() + 1, format!("duplicate {what} id `{id}`"))
            };
            let stmt = match kw.as_str() {
                "group" => {
                    let t = p.next("a group name")?;
                    let (c, name) = (t.column, t.text.to_string());
                    let g = name.parse().map_err(|_| p.error(c, format!("unknown group `{name}`")))?;
                    p.finish()?;
                    if std::mem::replace(&mut have_group, true) {
                        return Err(p.error(kw_column, "duplicate group statement"));
                    }
                    Statement::Group(g)
                }
                "circle" | "hopf" => {
                    let id = p.identifier()?;
                    p.finish()?;
                    if !node_ids.insert(id.clone()) {
                        return Err(dup(&p, "node", &id));
                    }
                    if kw == "circle" {
                        Statement::Circle(id)
                    } else {
                        Statement::Hopf(id)
                    }
                }
                "arc" => {
                    let arc = parse_arc(&mut p)?;
                    if !arc_ids.insert(arc.id.clone()) {
                        return Err(dup(&p, "arc", &arc.id));
                    }
                    Statement::Arc(arc)
                }
                "decorate" => {
                    let node = p.identifier()?;
                    p.keyword("=")?;
                    let element = parse_element(&mut p, raw)?;
                    if !decorated.insert(node.clone()) {
                        return Err(dup(&p, "decoration", &node));
                    }
                    Statement::Decorate { node, element }
                }
                other => return Err(p.error(kw_column, format!("unknown keyword `{other}`"))),
            };
            statements.push(stmt);
        }
        Ok(SldDocument { statements })
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Group(g) => write!(f, "group {g}"),
            Statement::Circle(id) => write!(f, "circle {id}"),
            Statement::Hopf(id) => write!(f, "hopf {id}"),
            Statement::Arc(a) => {
                write!(
                    f,
                    "arc {} from {} slot {} to {} slot {} word",
                    a.id, a.start.circle, a.start.slot, a.end.circle, a.end.slot
                )?;
                for c in &a.word {
                    write!(f, " {}:{}", c.circle, c.sign.symbol())?;
                }
                if a.twist != 0 {
                    write!(f, " twist {}", a.twist)?;
                }
                Ok(())
            }
            Statement::Decorate { node, element } => write!(f, "decorate {node} = {element}"),
            Statement::Comment(text) => write!(f, "#{text}"),
            Statement::Blank => Ok(()),
        }
    }
}

impl fmt::Display for SldDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl SldDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        text.parse()
    }

    /// Canonical text: re-parsing yields an identical document.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn group(&self) -> Option<GroupName> {
        self.statements.iter().find_map(|s| match s {
            Statement::Group(g) => Some(*g),
            _ => None,
        })
    }

    pub fn to_diagram(&self) -> SingularLinkDiagram {
        let mut d = SingularLinkDiagram::new();
        for s in &self.statements {
            match s {
                Statement::Circle(id) => {
                    d.add_circle(id.clone());
                }
                Statement::Hopf(id) => {
                    d.add_hopf(id.clone());
                }
                Statement::Arc(a) => {
                    d.add_arc(a.clone());
                }
                _ => {}
            }
        }
        d
    }

    pub fn decoration(&self) -> Decoration<QSqrt5> {
        self.statements
            .iter()
            .filter_map(|s| match s {
                Statement::Decorate { node, element } => Some((node.clone(), element.rotation())),
                _ => None,
            })
            .collect()
    }

    pub fn has_decorations(&self) -> bool {
        self.statements.iter().any(|s| matches!(s, Statement::Decorate { .. }))
    }

    /// Statements for a diagram and optional decoration, in node, arc,
    /// decoration order.
    pub fn from_parts(
        group: Option<GroupName>,
        d: &SingularLinkDiagram,
        dec: Option<&Decoration<QSqrt5>>,
    ) -> Self {
        let mut statements: Vec<Statement> = group.into_iter().map(Statement::Group).collect();
        statements.extend(d.nodes().iter().map(|n| match n.kind {
            NodeKind::Circle => Statement::Circle(n.id.clone()),
            NodeKind::Hopf => Statement::Hopf(n.id.clone()),
        }));
        statements.extend(d.arcs().iter().cloned().map(Statement::Arc));
        if let Some(dec) = dec {
            statements.extend(dec.iter().map(|(node, g)| Statement::Decorate {
                node: node.to_string(),
                element: Element::from_rotation(g),
            }));
        }
        Self { statements }
    }
}
