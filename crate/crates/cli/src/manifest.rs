//! The manifest language: a field declaration, algebra and action blocks,
//! and tasks.
//!
//! ```text
//! field GF(32003);
//! algebra R { vars x(1), y(1); rels x*y; }
//! action A { R on S; x*u = u^2; }
//! task betti { module = k; hdeg = 4; }
//! ```
//!
//! Polynomial text is kept verbatim (whitespace collapsed) and only parsed
//! once the field is known.

use std::fmt;

/// A source position. Positions never take part in equality, so a
/// reparsed pretty-print compares equal to the original.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned<T> {
    pub value: T,
    pub pos: Pos,
}

impl<T> Spanned<T> {
    pub fn new(value: T, pos: Pos) -> Self {
        Spanned { value, pos }
    }
}

/// Free-form text such as a polynomial. `origins[i]` is the source position
/// of byte `i` of `text`.
#[derive(Clone, Debug)]
pub struct RawText {
    pub text: String,
    origins: Vec<Pos>,
}

impl RawText {
    pub fn new(text: &str) -> Self {
        RawText { text: text.to_string(), origins: vec![Pos::default(); text.len()] }
    }

    pub fn pos(&self) -> Pos {
        self.pos_at(0)
    }

    pub fn pos_at(&self, offset: usize) -> Pos {
        self.origins.get(offset).or(self.origins.last()).copied().unwrap_or_default()
    }

    fn slice(&self, start: usize, end: usize) -> RawText {
        let s = &self.text[start..end];
        let lead = s.len() - s.trim_start().len();
        let s = s.trim();
        let start = start + lead;
        RawText { text: s.to_string(), origins: self.origins[start..start + s.len()].to_vec() }
    }

    /// Splits at commas outside parentheses. An empty text gives no items.
    pub fn split_list(&self) -> Vec<RawText> {
        let mut out = Vec::new();
        let (mut depth, mut start) = (0usize, 0);
        for (i, c) in self.text.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    out.push(self.slice(start, i));
                    start = i + 1;
                }
                _ => {}
            }
        }
        if !self.text.trim().is_empty() {
            out.push(self.slice(start, self.text.len()));
        }
        out
    }

    /// For `name(a, b)` returns the arguments `a` and `b`.
    pub fn call_args(&self, name: &str) -> Option<Vec<RawText>> {
        let rest = self.text.strip_prefix(name)?.trim_start();
        if !rest.starts_with('(') || !rest.ends_with(')') {
            return None;
        }
        let open = self.text.len() - rest.len();
        Some(self.slice(open + 1, self.text.len() - 1).split_list())
    }
}

impl PartialEq for RawText {
    fn eq(&self, other: &RawText) -> bool {
        self.text == other.text
    }
}

impl Eq for RawText {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "QQ"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub name: Spanned<String>,
    pub weight: Spanned<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraBlock {
    pub name: Spanned<String>,
    pub vars: Vec<VarDecl>,
    pub rels: Vec<RawText>,
    pub trunc: Option<Spanned<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionEntry {
    pub x: Spanned<String>,
    pub y: Spanned<String>,
    pub value: RawText,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionBlock {
    pub name: Spanned<String>,
    pub r: Spanned<String>,
    pub s: Spanned<String>,
    pub entries: Vec<ActionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub key: Spanned<String>,
    pub value: RawText,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskBlock {
    pub procedure: Spanned<String>,
    pub params: Vec<Param>,
}

impl TaskBlock {
    pub fn get(&self, key: &str) -> Option<&RawText> {
        self.params.iter().find(|p| p.key.value == key).map(|p| &p.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub field: Spanned<FieldSpec>,
    pub algebras: Vec<AlgebraBlock>,
    pub actions: Vec<ActionBlock>,
    pub tasks: Vec<TaskBlock>,
}

impl Manifest {
    pub fn algebra(&self, name: &str) -> Option<&AlgebraBlock> {
        self.algebras.iter().find(|a| a.name.value == name)
    }

    pub fn action(&self, name: &str) -> Option<&ActionBlock> {
        self.actions.iter().find(|a| a.name.value == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ManifestError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: {message}")]
    Semantic { pos: Pos, message: String },
}

impl ManifestError {
    pub fn semantic(pos: Pos, message: impl Into<String>) -> Self {
        ManifestError::Semantic { pos, message: message.into() }
    }

    pub fn pos(&self) -> Pos {
        match self {
            ManifestError::Syntax { pos, .. } | ManifestError::Semantic { pos, .. } => *pos,
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    at: usize,
    line: usize,
    col: usize,
}

type Res<T> = Result<T, ManifestError>;

impl<'a> Parser<'a> {
    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.at..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Res<T> {
        Err(ManifestError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn skip_comment(&mut self) {
        while let Some(c) = self.peek() {
            if c == '\n' {
                break;
            }
            self.bump();
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                self.skip_comment();
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Res<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("`{f}`"));
            self.error(format!("expected `{c}`, found {found}"))
        }
    }

    fn ident(&mut self, what: &str) -> Res<Spanned<String>> {
        self.skip_ws();
        let pos = self.pos();
        let start = self.at;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return self.error(format!("expected {what}")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        Ok(Spanned::new(self.src[start..self.at].to_string(), pos))
    }

    fn keyword(&mut self, kw: &str) -> Res<()> {
        let save = (self.at, self.line, self.col);
        let id = self.ident(&format!("`{kw}`"))?;
        if id.value != kw {
            (self.at, self.line, self.col) = save;
            self.skip_ws();
            return self.error(format!("expected `{kw}`, found `{}`", id.value));
        }
        Ok(())
    }

    fn int(&mut self, what: &str) -> Res<Spanned<u64>> {
        self.skip_ws();
        let pos = self.pos();
        let start = self.at;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.at {
            return self.error(format!("expected {what}"));
        }
        match self.src[start..self.at].parse() {
            Ok(v) => Ok(Spanned::new(v, pos)),
            Err(_) => Err(ManifestError::Syntax { pos, message: format!("{what} is too large") }),
        }
    }

    fn small_int(&mut self, what: &str) -> Res<Spanned<u32>> {
        let v = self.int(what)?;
        match u32::try_from(v.value) {
            Ok(x) => Ok(Spanned::new(x, v.pos)),
            Err(_) => Err(ManifestError::Syntax { pos: v.pos, message: format!("{what} is too large") }),
        }
    }

    /// Free text up to `;` or `}` (and `,` at parenthesis depth zero when
    /// `split` is set). Comments are dropped and whitespace runs collapse to
    /// one space.
    fn raw(&mut self, split: bool, what: &str) -> Res<RawText> {
        self.skip_ws();
        let mut text = String::new();
        let mut origins = Vec::new();
        let mut depth = 0usize;
        let mut pending_space = false;
        while let Some(c) = self.peek() {
            if c == ';' || c == '}' || (split && c == ',' && depth == 0) {
                break;
            }
            if c == '#' {
                self.skip_comment();
                pending_space = true;
                continue;
            }
            if c.is_whitespace() {
                self.bump();
                pending_space = true;
                continue;
            }
            if pending_space && !text.is_empty() {
                text.push(' ');
                origins.push(self.pos());
            }
            pending_space = false;
            match c {
                '(' => depth += 1,
                ')' => {
                    if depth == 0 {
                        return self.error("unbalanced `)`");
                    }
                    depth -= 1;
                }
                _ => {}
            }
            let pos = self.pos();
            for _ in 0..c.len_utf8() {
                origins.push(pos);
            }
            text.push(c);
            self.bump();
        }
        if depth > 0 {
            return self.error("unclosed `(`");
        }
        if text.is_empty() {
            return self.error(format!("expected {what}"));
        }
        Ok(RawText { text, origins })
    }

    fn field(&mut self) -> Res<Spanned<FieldSpec>> {
        if self.at_end() {
            return self.error("expected `field`");
        }
        self.keyword("field")?;
        let name = self.ident("`GF(p)` or `QQ`")?;
        let spec = match name.value.as_str() {
            "QQ" => FieldSpec::Rationals,
            "GF" => {
                self.expect('(')?;
                let p = self.int("a prime")?;
                self.expect(')')?;
                FieldSpec::Prime(p.value)
            }
            other => {
                return Err(ManifestError::Syntax {
                    pos: name.pos,
                    message: format!("expected `GF(p)` or `QQ`, found `{other}`"),
                })
            }
        };
        self.expect(';')?;
        Ok(Spanned::new(spec, name.pos))
    }

    fn algebra(&mut self) -> Res<AlgebraBlock> {
        let name = self.ident("an algebra name")?;
        self.expect('{')?;
        let mut block = AlgebraBlock { name, vars: Vec::new(), rels: Vec::new(), trunc: None };
        let (mut seen_vars, mut seen_rels) = (false, false);
        while !self.eat('}') {
            let kw = self.ident("`vars`, `rels`, `trunc` or `}`")?;
            let duplicate = |seen: bool| -> Res<()> {
                if seen {
                    Err(ManifestError::Syntax { pos: kw.pos, message: format!("duplicate `{}`", kw.value) })
                } else {
                    Ok(())
                }
            };
            match kw.value.as_str() {
                "vars" => {
                    duplicate(seen_vars)?;
                    seen_vars = true;
                    if !self.eat(';') {
                        loop {
                            let name = self.ident("a variable name")?;
                            let weight = if self.eat('(') {
                                let w = self.small_int("a weight")?;
                                self.expect(')')?;
                                w
                            } else {
                                Spanned::new(1, name.pos)
                            };
                            block.vars.push(VarDecl { name, weight });
                            if !self.eat(',') {
                                break;
                            }
                        }
                        self.expect(';')?;
                    }
                }
                "rels" => {
                    duplicate(seen_rels)?;
                    seen_rels = true;
                    if !self.eat(';') {
                        loop {
                            block.rels.push(self.raw(true, "a relation")?);
                            if !self.eat(',') {
                                break;
                            }
                        }
                        self.expect(';')?;
                    }
                }
                "trunc" => {
                    duplicate(block.trunc.is_some())?;
                    block.trunc = Some(self.small_int("a truncation degree")?);
                    self.expect(';')?;
                }
                other => {
                    return Err(ManifestError::Syntax {
                        pos: kw.pos,
                        message: format!("unknown algebra statement `{other}`"),
                    })
                }
            }
        }
        Ok(block)
    }

    fn action(&mut self) -> Res<ActionBlock> {
        let name = self.ident("an action name")?;
        self.expect('{')?;
        let r = self.ident("the acting algebra")?;
        self.keyword("on")?;
        let s = self.ident("the algebra acted on")?;
        self.expect(';')?;
        let mut entries = Vec::new();
        while !self.eat('}') {
            let x = self.ident("a variable of the acting algebra")?;
            self.expect('*')?;
            let y = self.ident("a variable of the algebra acted on")?;
            self.expect('=')?;
            let value = self.raw(false, "a polynomial")?;
            self.expect(';')?;
            entries.push(ActionEntry { x, y, value });
        }
        Ok(ActionBlock { name, r, s, entries })
    }

    fn task(&mut self) -> Res<TaskBlock> {
        let procedure = self.ident("a procedure name")?;
        self.expect('{')?;
        let mut params: Vec<Param> = Vec::new();
        while !self.eat('}') {
            let key = self.ident("a parameter name")?;
            if params.iter().any(|p| p.key.value == key.value) {
                return Err(ManifestError::Syntax { pos: key.pos, message: format!("duplicate key `{}`", key.value) });
            }
            self.expect('=')?;
            let value = self.raw(false, "a value")?;
            self.expect(';')?;
            params.push(Param { key, value });
        }
        Ok(TaskBlock { procedure, params })
    }
}

/// Parses the syntax of a manifest. Name resolution and field-specific
/// checks happen in [`crate::validate`].
pub fn parse_manifest(src: &str) -> Result<Manifest, ManifestError> {
    let mut p = Parser { src, at: 0, line: 1, col: 1 };
    let field = p.field()?;
    let mut m = Manifest { field, algebras: Vec::new(), actions: Vec::new(), tasks: Vec::new() };
    while !p.at_end() {
        let kw = p.ident("`algebra`, `action` or `task`")?;
        match kw.value.as_str() {
            "algebra" => m.algebras.push(p.algebra()?),
            "action" => m.actions.push(p.action()?),
            "task" => m.tasks.push(p.task()?),
            "field" => {
                return Err(ManifestError::Syntax { pos: kw.pos, message: "the field is already declared".into() })
            }
            other => {
                return Err(ManifestError::Syntax {
                    pos: kw.pos,
                    message: format!("expected `algebra`, `action` or `task`, found `{other}`"),
                })
            }
        }
    }
    Ok(m)
}

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {};", self.field.value)?;
        for a in &self.algebras {
            writeln!(f, "\nalgebra {} {{", a.name.value)?;
            let vars: Vec<String> = a.vars.iter().map(|v| format!("{}({})", v.name.value, v.weight.value)).collect();
            if vars.is_empty() {
                writeln!(f, "  vars;")?;
            } else {
                writeln!(f, "  vars {};", vars.join(", "))?;
            }
            if !a.rels.is_empty() {
                let rels: Vec<&str> = a.rels.iter().map(|r| r.text.as_str()).collect();
                writeln!(f, "  rels {};", rels.join(", "))?;
            }
            if let Some(t) = &a.trunc {
                writeln!(f, "  trunc {};", t.value)?;
            }
            writeln!(f, "}}")?;
        }
        for a in &self.actions {
            writeln!(f, "\naction {} {{", a.name.value)?;
            writeln!(f, "  {} on {};", a.r.value, a.s.value)?;
            for e in &a.entries {
                writeln!(f, "  {}*{} = {};", e.x.value, e.y.value, e.value.text)?;
            }
            writeln!(f, "}}")?;
        }
        for t in &self.tasks {
            writeln!(f, "\ntask {} {{", t.procedure.value)?;
            for p in &t.params {
                writeln!(f, "  {} = {};", p.key.value, p.value.text)?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}
