//! The line-oriented `.pdm` / `.pcz` / `.mdl` text format.
//!
//! ```text
//! kind precuntz
//! elements 0 1
//! rel 0 0
//! rel 0 1
//! rel 1 1
//! zero 0
//! add 0 0 0
//! add 0 1 1
//! add 1 1 1
//! fn f: 0=0 1=inf
//! ```
//!
//! `#` starts a comment. Emission is canonical: comments and blank lines
//! are dropped, pairs are written in declaration order, the addition table
//! is written for `a <= b` only.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use predomain::ext::{parse_rational, Rational};
use predomain::ExtRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Predomain,
    Precuntz,
    Model,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Predomain => "predomain",
            Kind::Precuntz => "precuntz",
            Kind::Model => "model",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFn {
    pub name: String,
    /// One value per element (or point), in declaration order.
    pub values: Vec<ExtRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFile {
    pub kind: Kind,
    /// Elements for `predomain`/`precuntz`, points for `model`.
    pub labels: Vec<String>,
    /// Sorted, duplicate-free.
    pub rel: Vec<(usize, usize)>,
    pub zero: Option<usize>,
    /// Row-major `n × n` table, present for `precuntz`.
    pub add: Option<Vec<usize>>,
    pub grid: Option<Vec<Rational>>,
    pub fns: Vec<NamedFn>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &body[s..i],
                    column: body[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &body[s..],
            column: body[..s].chars().count() + 1,
        });
    }
    out
}

struct Parser {
    kind: Option<Kind>,
    labels: Option<Vec<String>>,
    index: HashMap<String, usize>,
    rel: Vec<(usize, usize)>,
    zero: Option<usize>,
    add: BTreeMap<(usize, usize), (usize, usize)>,
    grid: Option<Vec<Rational>>,
    fns: Vec<NamedFn>,
    line: usize,
}

impl Parser {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn label(&self, t: Token<'_>) -> Result<usize, ParseError> {
        self.index
            .get(t.text)
            .copied()
            .ok_or_else(|| self.err(t.column, format!("undeclared element `{}`", t.text)))
    }

    fn need_labels(&self, t: Token<'_>) -> Result<(), ParseError> {
        if self.labels.is_none() {
            let what = if self.kind == Some(Kind::Model) {
                "points"
            } else {
                "elements"
            };
            return Err(self.err(t.column, format!("`{}` before `{what}`", t.text)));
        }
        Ok(())
    }

    fn order_only(&self, t: Token<'_>) -> Result<(), ParseError> {
        if self.kind == Some(Kind::Model) {
            return Err(self.err(t.column, format!("`{}` is not allowed in a model file", t.text)));
        }
        self.need_labels(t)
    }

    fn arity(&self, toks: &[Token<'_>], n: usize) -> Result<(), ParseError> {
        if toks.len() != n + 1 {
            let col = toks.get(n + 1).map_or(toks[0].column, |t| t.column);
            return Err(self.err(
                col,
                format!("`{}` takes {n} argument(s), got {}", toks[0].text, toks.len() - 1),
            ));
        }
        Ok(())
    }

    fn declare(&mut self, toks: &[Token<'_>]) -> Result<(), ParseError> {
        let head = toks[0];
        if self.labels.is_some() {
            return Err(self.err(head.column, format!("second `{}` line", head.text)));
        }
        if toks.len() < 2 {
            return Err(self.err(head.column, format!("`{}` needs at least one label", head.text)));
        }
        let mut labels = Vec::new();
        for t in &toks[1..] {
            if t.text.contains('=') || t.text.contains(':') || t.text.contains(',') {
                return Err(self.err(t.column, format!("label `{}` contains a reserved character", t.text)));
            }
            if self.index.insert(t.text.to_string(), labels.len()).is_some() {
                return Err(self.err(t.column, format!("duplicate label `{}`", t.text)));
            }
            labels.push(t.text.to_string());
        }
        self.labels = Some(labels);
        Ok(())
    }

    fn function(&mut self, raw: &str, toks: &[Token<'_>]) -> Result<(), ParseError> {
        self.need_labels(toks[0])?;
        let name_tok = toks
            .get(1)
            .ok_or_else(|| self.err(toks[0].column, "`fn` needs a name"))?;
        let name = name_tok
            .text
            .strip_suffix(':')
            .filter(|n| !n.is_empty())
            .ok_or_else(|| self.err(name_tok.column, "expected `name:` after `fn`"))?;
        if self.fns.iter().any(|f| f.name == name) {
            return Err(self.err(name_tok.column, format!("duplicate function `{name}`")));
        }
        let n = self.labels.as_ref().map_or(0, Vec::len);
        let mut values: Vec<Option<ExtRational>> = vec![None; n];
        for t in &toks[2..] {
            let (key, val) = t
                .text
                .split_once('=')
                .ok_or_else(|| self.err(t.column, format!("expected `label=value`, got `{}`", t.text)))?;
            let key_tok = Token {
                text: key,
                column: t.column,
            };
            let i = self.label(key_tok)?;
            let vcol = t.column + key.chars().count() + 1;
            let v: ExtRational = val
                .parse()
                .map_err(|_| self.err(vcol, format!("invalid value `{val}`")))?;
            if self.kind == Some(Kind::Model) && v.is_infinite() {
                return Err(self.err(vcol, "model values must be finite"));
            }
            if values[i].replace(v).is_some() {
                return Err(self.err(t.column, format!("`{key}` assigned twice")));
            }
        }
        if let Some(i) = values.iter().position(Option::is_none) {
            let col = raw.chars().count() + 1;
            let label = &self.labels.as_ref().expect("declared")[i];
            return Err(self.err(col, format!("function `{name}` has no value for `{label}`")));
        }
        self.fns.push(NamedFn {
            name: name.to_string(),
            values: values.into_iter().flatten().collect(),
        });
        Ok(())
    }

    fn statement(&mut self, raw: &str, toks: &[Token<'_>]) -> Result<(), ParseError> {
        let head = toks[0];
        let Some(kind) = self.kind else {
            if head.text != "kind" {
                return Err(self.err(head.column, "the first statement must be `kind`"));
            }
            self.arity(toks, 1)?;
            self.kind = Some(match toks[1].text {
                "predomain" => Kind::Predomain,
                "precuntz" => Kind::Precuntz,
                "model" => Kind::Model,
                other => return Err(self.err(toks[1].column, format!("unknown kind `{other}`"))),
            });
            return Ok(());
        };
        match head.text {
            "kind" => Err(self.err(head.column, "second `kind` line")),
            "elements" | "points" => {
                let want = if kind == Kind::Model { "points" } else { "elements" };
                if head.text != want {
                    return Err(self.err(head.column, format!("{kind} files declare `{want}`")));
                }
                self.declare(toks)
            }
            "rel" => {
                self.order_only(head)?;
                self.arity(toks, 2)?;
                let pair = (self.label(toks[1])?, self.label(toks[2])?);
                if self.rel.contains(&pair) {
                    return Err(self.err(head.column, "duplicate `rel` line"));
                }
                self.rel.push(pair);
                Ok(())
            }
            "zero" | "add" if kind != Kind::Precuntz => Err(self.err(
                head.column,
                format!("`{}` is only allowed in precuntz files", head.text),
            )),
            "zero" => {
                self.need_labels(head)?;
                self.arity(toks, 1)?;
                if self.zero.is_some() {
                    return Err(self.err(head.column, "second `zero` line"));
                }
                self.zero = Some(self.label(toks[1])?);
                Ok(())
            }
            "add" => {
                self.need_labels(head)?;
                self.arity(toks, 3)?;
                let (a, b, c) = (self.label(toks[1])?, self.label(toks[2])?, self.label(toks[3])?);
                let key = (a.min(b), a.max(b));
                match self.add.get(&key) {
                    Some(&(prev, _)) if prev != c => Err(self.err(
                        toks[3].column,
                        format!("conflicting sum for {} + {}", toks[1].text, toks[2].text),
                    )),
                    Some(_) => Err(self.err(head.column, "duplicate `add` line")),
                    None => {
                        self.add.insert(key, (c, self.line));
                        Ok(())
                    }
                }
            }
            "grid" => {
                if kind != Kind::Model {
                    return Err(self.err(head.column, "`grid` is only allowed in model files"));
                }
                if self.grid.is_some() {
                    return Err(self.err(head.column, "second `grid` line"));
                }
                let mut grid = Vec::new();
                for t in &toks[1..] {
                    let r = parse_rational(t.text)
                        .ok()
                        .filter(|r| *r >= Rational::from_integer(0.into()))
                        .ok_or_else(|| self.err(t.column, format!("invalid grid value `{}`", t.text)))?;
                    if grid.contains(&r) {
                        return Err(self.err(t.column, format!("duplicate grid value `{}`", t.text)));
                    }
                    grid.push(r);
                }
                if grid.is_empty() {
                    return Err(self.err(head.column, "`grid` needs at least one value"));
                }
                grid.sort();
                self.grid = Some(grid);
                Ok(())
            }
            "fn" => self.function(raw, toks),
            other => Err(self.err(head.column, format!("unknown statement `{other}`"))),
        }
    }

    fn finish(self) -> Result<StructureFile, ParseError> {
        let end = |message: &str| ParseError {
            line: self.line,
            column: 1,
            message: message.to_string(),
        };
        let kind = self.kind.ok_or_else(|| end("missing `kind` line"))?;
        let labels = self.labels.clone().ok_or_else(|| {
            end(if kind == Kind::Model {
                "missing `points` line"
            } else {
                "missing `elements` line"
            })
        })?;
        let n = labels.len();
        let add = if kind == Kind::Precuntz {
            if self.zero.is_none() {
                return Err(end("missing `zero` line"));
            }
            let mut table = vec![0; n * n];
            for a in 0..n {
                for b in a..n {
                    let &(c, _) = self.add.get(&(a, b)).ok_or_else(|| {
                        end(&format!(
                            "addition table has no entry for {} + {}",
                            labels[a], labels[b]
                        ))
                    })?;
                    table[a * n + b] = c;
                    table[b * n + a] = c;
                }
            }
            Some(table)
        } else {
            None
        };
        let mut rel = self.rel;
        rel.sort_unstable();
        Ok(StructureFile {
            kind,
            labels,
            rel,
            zero: self.zero,
            add,
            grid: self.grid,
            fns: self.fns,
        })
    }
}

pub fn parse(text: &str) -> Result<StructureFile, ParseError> {
    let mut p = Parser {
        kind: None,
        labels: None,
        index: HashMap::new(),
        rel: Vec::new(),
        zero: None,
        add: BTreeMap::new(),
        grid: None,
        fns: Vec::new(),
        line: 0,
    };
    for (i, raw) in text.lines().enumerate() {
        p.line = i + 1;
        let toks = tokenize(raw);
        if !toks.is_empty() {
            p.statement(raw, &toks)?;
        }
    }
    p.line = p.line.max(1);
    p.finish()
}

pub fn emit(s: &StructureFile) -> String {
    let mut out = String::new();
    let l = |i: usize| s.labels[i].as_str();
    let _ = writeln!(out, "kind {}", s.kind);
    let decl = if s.kind == Kind::Model { "points" } else { "elements" };
    let _ = writeln!(out, "{decl} {}", s.labels.join(" "));
    if let Some(grid) = &s.grid {
        let vals: Vec<String> = grid.iter().map(predomain::ext::format_rational).collect();
        let _ = writeln!(out, "grid {}", vals.join(" "));
    }
    for &(a, b) in &s.rel {
        let _ = writeln!(out, "rel {} {}", l(a), l(b));
    }
    if let Some(z) = s.zero {
        let _ = writeln!(out, "zero {}", l(z));
    }
    if let Some(table) = &s.add {
        let n = s.labels.len();
        for a in 0..n {
            for b in a..n {
                let _ = writeln!(out, "add {} {} {}", l(a), l(b), l(table[a * n + b]));
            }
        }
    }
    for f in &s.fns {
        let _ = write!(out, "fn {}:", f.name);
        for (i, v) in f.values.iter().enumerate() {
            let _ = write!(out, " {}={v}", l(i));
        }
        out.push('\n');
    }
    out
}
