//! Expression language over a calculus and the calculus-spec file format.
//!
//! Grammar (whitespace insignificant, `*` binds tighter than `+`/`-`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := '(' expr ')' | 'd' '(' expr ')' | 'L' '(' expr ';' expr ')'
//!         | 'iota' '(' index ';' expr ')' | '<' expr ',' expr '>'
//!         | int ('/' int)? | atom
//! atom   := 'e[' name ']' | 'u[' name ']' | 'w[' index ']' | 'chi[' index ']'
//!         | 'gamma[' index ']' | 'f[' index ',' index ']'
//! ```
//!
//! Indices are 1-based. `f[i,j]` is `f^i_j`, the table entry in the
//! commutation `w^i a = (f^i_j ▷ a) w^j`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::calculus::{finite_group_calculus, FodcData};
use crate::crossprod::{CrossAlgebra, CrossElement};
use crate::hopf::GroupTable;
use crate::linalg::Rational;
use crate::report::format_rational;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("{pos}: expected one of {}, found {found}", .expected.join(" "))]
    Syntax { pos: Pos, expected: Vec<String>, found: String },
    #[error("{pos}: unknown name `{name}`")]
    UnknownName { pos: Pos, name: String },
    #[error("{pos}: unknown group element `{name}`")]
    UnknownElement { pos: Pos, name: String },
    #[error("{pos}: index {index} out of range 1..={max}")]
    Index { pos: Pos, index: usize, max: usize },
    #[error("{pos}: {message}")]
    Type { pos: Pos, message: String },
    #[error("spec line {line}: {message}")]
    Spec { line: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] crate::error::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), pos));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            // A digit run followed by letters is a name such as `2a`.
            if chars.peek().is_some_and(|c| c.is_ascii_alphabetic() || *c == '_') {
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), pos));
            } else {
                out.push((Tok::Int(s.parse().expect("digits")), pos));
            }
        } else if "[](),;<>+-*/".contains(c) {
            chars.next();
            col += 1;
            out.push((Tok::Sym(c), pos));
        } else {
            return Err(DslError::Syntax {
                pos,
                expected: vec!["expression".into()],
                found: format!("`{c}`"),
            });
        }
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Scalar(Rational),
    /// `e[name]`
    Function(String),
    /// `u[name]`
    GroupLike(String),
    /// `w[i]`
    Omega(usize),
    /// `chi[i]`
    Chi(usize),
    /// `f[i,j]`
    F(usize, usize),
    /// `gamma[i]`
    Gamma(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Differential(Box<Expr>),
    LieDerivative(Box<Expr>, Box<Expr>),
    Inner(usize, Box<Expr>),
    Pairing(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl Expr {
    fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr { kind, pos }
    }
}

const FACTOR_START: &[&str] =
    &["(", "<", "-", "number", "d", "L", "iota", "e", "u", "w", "chi", "f", "gamma"];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> DslError {
        DslError::Syntax {
            pos: self.pos(),
            expected: expected.iter().map(|s| format!("`{s}`")).collect(),
            found: self.peek().to_string(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<Pos, DslError> {
        if *self.peek() == Tok::Sym(c) {
            Ok(self.bump().1)
        } else {
            Err(self.error(&[&c.to_string()]))
        }
    }

    fn index(&mut self) -> Result<usize, DslError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let pos = self.pos();
                self.bump();
                usize::try_from(&n).map_err(|_| DslError::Index { pos, index: usize::MAX, max: 0 })
            }
            _ => Err(self.error(&["index"])),
        }
    }

    fn name(&mut self) -> Result<String, DslError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            Tok::Int(n) => {
                self.bump();
                Ok(n.to_string())
            }
            _ => Err(self.error(&["element name"])),
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::new(ExprKind::Add(Box::new(lhs), Box::new(rhs)), pos);
                }
                Tok::Sym('-') => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::new(ExprKind::Sub(Box::new(lhs), Box::new(rhs)), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Sym('*') {
            let pos = self.bump().1;
            let rhs = self.unary()?;
            lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if *self.peek() == Tok::Sym('-') {
            let pos = self.bump().1;
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), pos));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, DslError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Sym('<') => {
                self.bump();
                let theta = self.expr()?;
                self.expect_sym(',')?;
                let rho = self.expr()?;
                self.expect_sym('>')?;
                Ok(Expr::new(ExprKind::Pairing(Box::new(theta), Box::new(rho)), pos))
            }
            Tok::Int(n) => {
                self.bump();
                let mut value = Rational::from_integer(n);
                if *self.peek() == Tok::Sym('/') {
                    self.bump();
                    let dpos = self.pos();
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            value /= Rational::from_integer(d);
                        }
                        Tok::Int(_) => {
                            return Err(DslError::Type { pos: dpos, message: "division by zero".into() });
                        }
                        _ => return Err(self.error(&["number"])),
                    }
                }
                Ok(Expr::new(ExprKind::Scalar(value), pos))
            }
            Tok::Ident(name) => {
                self.bump();
                self.named(&name, pos)
            }
            _ => Err(self.error(FACTOR_START)),
        }
    }

    fn named(&mut self, name: &str, pos: Pos) -> Result<Expr, DslError> {
        let kind = match name {
            "d" => {
                self.expect_sym('(')?;
                let e = self.expr()?;
                self.expect_sym(')')?;
                ExprKind::Differential(Box::new(e))
            }
            "L" => {
                self.expect_sym('(')?;
                let h = self.expr()?;
                self.expect_sym(';')?;
                let x = self.expr()?;
                self.expect_sym(')')?;
                ExprKind::LieDerivative(Box::new(h), Box::new(x))
            }
            "iota" => {
                self.expect_sym('(')?;
                let i = self.index()?;
                self.expect_sym(';')?;
                let x = self.expr()?;
                self.expect_sym(')')?;
                ExprKind::Inner(i, Box::new(x))
            }
            "e" | "u" => {
                self.expect_sym('[')?;
                let n = self.name()?;
                self.expect_sym(']')?;
                if name == "e" {
                    ExprKind::Function(n)
                } else {
                    ExprKind::GroupLike(n)
                }
            }
            "w" | "chi" | "gamma" => {
                self.expect_sym('[')?;
                let i = self.index()?;
                self.expect_sym(']')?;
                match name {
                    "w" => ExprKind::Omega(i),
                    "chi" => ExprKind::Chi(i),
                    _ => ExprKind::Gamma(i),
                }
            }
            "f" => {
                self.expect_sym('[')?;
                let i = self.index()?;
                self.expect_sym(',')?;
                let j = self.index()?;
                self.expect_sym(']')?;
                ExprKind::F(i, j)
            }
            other => return Err(DslError::UnknownName { pos, name: other.to_string() }),
        };
        Ok(Expr::new(kind, pos))
    }
}

pub fn parse(text: &str) -> Result<Expr, DslError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["+", "-", "*", "end of input"]));
    }
    Ok(e)
}

/// Result of evaluation: a pairing gives a number, everything else an
/// element of the cross product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    Cross(CrossElement),
}

impl Value {
    pub fn into_cross(self, cp: &CrossAlgebra) -> CrossElement {
        match self {
            Value::Scalar(c) => cp.from_scalar(&c),
            Value::Cross(x) => x,
        }
    }
}

fn check_index(i: usize, max: usize, pos: Pos) -> Result<usize, DslError> {
    if i == 0 || i > max {
        Err(DslError::Index { pos, index: i, max })
    } else {
        Ok(i - 1)
    }
}

fn type_error(pos: Pos, message: &str) -> DslError {
    DslError::Type { pos, message: message.to_string() }
}

/// Normalizes an expression inside the cross product of `cp`.
pub fn evaluate(expr: &Expr, cp: &CrossAlgebra) -> Result<Value, DslError> {
    let calc = cp.calculus();
    let n = calc.n();
    let alg = calc.paired().alg();
    let dual = calc.paired().dual();
    let w = cp.wedge();
    let pos = expr.pos;
    let cross = |e: &Expr| evaluate(e, cp).map(|v| v.into_cross(cp));
    let form = |e: &Expr, what: &str| -> Result<crate::wedge::GradedForm, DslError> {
        let x = cross(e)?;
        cp.as_form(&x).ok_or_else(|| type_error(e.pos, &format!("{what} applies to forms only")))
    };
    let lookup = |names: &[String], name: &str| {
        names.iter().position(|s| s == name).ok_or_else(|| DslError::UnknownElement { pos, name: name.to_string() })
    };
    Ok(match &expr.kind {
        ExprKind::Scalar(c) => Value::Scalar(c.clone()),
        ExprKind::Function(name) => {
            let t = lookup(alg.basis_names(), name)?;
            Value::Cross(cp.from_form(&w.function(&alg.basis(t))))
        }
        ExprKind::GroupLike(name) => {
            let x = lookup(dual.basis_names(), name)?;
            Value::Cross(cp.from_dual(&cp.from_dual_hopf(&dual.basis(x))))
        }
        ExprKind::Omega(i) => Value::Cross(cp.from_form(&w.omega(check_index(*i, n, pos)?))),
        ExprKind::Chi(i) => Value::Cross(cp.from_dual(&cp.from_dual_hopf(calc.chi(check_index(*i, n, pos)?)))),
        ExprKind::F(i, j) => {
            let (i, j) = (check_index(*i, n, pos)?, check_index(*j, n, pos)?);
            Value::Cross(cp.from_dual(&cp.from_dual_hopf(calc.f(i, j))))
        }
        ExprKind::Gamma(i) => Value::Cross(cp.from_dual(&cp.gamma(check_index(*i, n, pos)?))),
        ExprKind::Neg(a) => match evaluate(a, cp)? {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Cross(x) => Value::Cross(x.scale(&-Rational::one())),
        },
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let minus = matches!(expr.kind, ExprKind::Sub(..));
            match (evaluate(a, cp)?, evaluate(b, cp)?) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(if minus { x - y } else { x + y }),
                (x, y) => {
                    let (x, y) = (x.into_cross(cp), y.into_cross(cp));
                    Value::Cross(if minus { x.sub(&y) } else { x.add(&y) })
                }
            }
        }
        ExprKind::Mul(a, b) => match (evaluate(a, cp)?, evaluate(b, cp)?) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
            (Value::Scalar(c), Value::Cross(x)) | (Value::Cross(x), Value::Scalar(c)) => Value::Cross(x.scale(&c)),
            (Value::Cross(x), Value::Cross(y)) => Value::Cross(cp.cross_multiply(&x, &y)),
        },
        ExprKind::Differential(a) => {
            let rho = form(a, "d")?;
            Value::Cross(cp.from_form(&w.exterior_derivative(&rho)))
        }
        ExprKind::Inner(i, a) => {
            let i = check_index(*i, n, pos)?;
            let rho = form(a, "iota")?;
            Value::Cross(cp.from_form(&cp.inner_derivation(i, &rho)?))
        }
        ExprKind::LieDerivative(h, a) => {
            let hx = cross(h)?;
            let hd = cp.as_dual(&hx).ok_or_else(|| type_error(h.pos, "Lie derivative index must be a vector field"))?;
            if cp.as_vector_field(&hd).is_none() {
                return Err(type_error(h.pos, "Lie derivative index must be a vector field"));
            }
            let x = cross(a)?;
            Value::Cross(cp.lie_derivative(&hd, &x)?)
        }
        ExprKind::Pairing(t, r) => {
            let tx = cross(t)?;
            let theta = cp.as_dual(&tx).ok_or_else(|| type_error(t.pos, "left side of a pairing must be dual"))?;
            let rho = form(r, "right side of a pairing")?;
            Value::Scalar(cp.pair(&theta, &rho))
        }
    })
}

pub fn parse_and_evaluate(text: &str, cp: &CrossAlgebra) -> Result<Value, DslError> {
    evaluate(&parse(text)?, cp)
}

/// Canonical text of a value in the same grammar.
pub fn print_normal(v: &Value, cp: &CrossAlgebra) -> String {
    match v {
        Value::Scalar(c) => format_rational(c),
        Value::Cross(x) => cp.format_cross(x),
    }
}

/// Group table, generating subset and options read from a spec file or a
/// builtin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalculusSpec {
    pub elements: Vec<String>,
    /// `table[a][b]` is the name of `ab`.
    pub table: Vec<Vec<String>>,
    pub generators: Vec<String>,
    pub max_degree: usize,
}

pub const DEFAULT_MAX_DEGREE: usize = 3;

impl CalculusSpec {
    pub fn group(&self) -> Result<GroupTable, DslError> {
        let index = |name: &str| {
            self.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| crate::error::Error::UnknownElement(name.to_string()))
        };
        let mul = self
            .table
            .iter()
            .map(|row| row.iter().map(|x| index(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupTable::new(self.elements.clone(), mul)?)
    }

    /// Builds the calculus, validating the group axioms and the subset.
    pub fn calculus(&self) -> Result<FodcData, DslError> {
        let g = self.group()?;
        let s = self
            .generators
            .iter()
            .map(|n| g.index_of(n).ok_or_else(|| crate::error::Error::UnknownElement(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(finite_group_calculus(&g, &s)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("[group]\n");
        out.push_str(&format!("elements = {}\n", self.elements.join(" ")));
        for row in &self.table {
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("\n[subset]\ngenerators = {}\n", self.generators.join(" ")));
        out.push_str(&format!("\n[options]\nmax_degree = {}\n", self.max_degree));
        out
    }

    fn from_group(g: &GroupTable, generators: &[&str]) -> Self {
        let n = g.order();
        CalculusSpec {
            elements: g.names().to_vec(),
            table: (0..n).map(|a| (0..n).map(|b| g.name(g.mul(a, b)).to_string()).collect()).collect(),
            generators: generators.iter().map(|s| s.to_string()).collect(),
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

pub const BUILTINS: [&str; 3] = ["z2", "z3", "s3"];

/// `z2` (e, g; S = {g}), `z3` (e, c, c2; S = {c, c2}), `s3` (e, p12, p13,
/// p23, c123, c132; S = the transpositions).
pub fn builtin(name: &str) -> Option<CalculusSpec> {
    Some(match name {
        "z2" => CalculusSpec::from_group(&GroupTable::cyclic(&["e", "g"]), &["g"]),
        "z3" => CalculusSpec::from_group(&GroupTable::cyclic(&["e", "c", "c2"]), &["c", "c2"]),
        "s3" => CalculusSpec::from_group(&GroupTable::symmetric3(), &["p12", "p13", "p23"]),
        _ => return None,
    })
}

/// Parses the sectioned spec format:
///
/// ```text
/// # comment
/// [group]
/// elements = e g
/// e g
/// g e
/// [subset]
/// generators = g
/// [options]
/// max_degree = 3
/// ```
///
/// Table rows follow the element order; row `a`, column `b` names `ab`.
pub fn parse_spec(text: &str) -> Result<CalculusSpec, DslError> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Group,
        Subset,
        Options,
    }
    let err = |line: usize, message: String| DslError::Spec { line, message };
    let mut section = Section::None;
    let mut elements: Option<Vec<String>> = None;
    let mut table: Vec<Vec<String>> = Vec::new();
    let mut generators: Option<Vec<String>> = None;
    let mut max_degree = DEFAULT_MAX_DEGREE;
    let mut seen = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(head) = line.strip_prefix('[') {
            let name = head.strip_suffix(']').ok_or_else(|| err(line_no, format!("malformed header `{line}`")))?;
            if seen.contains(&name.to_string()) {
                return Err(err(line_no, format!("duplicate section `{name}`")));
            }
            seen.push(name.to_string());
            section = match name {
                "group" => Section::Group,
                "subset" => Section::Subset,
                "options" => Section::Options,
                other => return Err(err(line_no, format!("unknown section `{other}`"))),
            };
            continue;
        }
        let kv = line.split_once('=').map(|(k, v)| (k.trim(), v.trim()));
        match section {
            Section::None => return Err(err(line_no, "content before the first section".into())),
            Section::Group => match kv {
                Some(("elements", v)) => {
                    if elements.is_some() {
                        return Err(err(line_no, "elements given twice".into()));
                    }
                    let names: Vec<String> = v.split_whitespace().map(str::to_string).collect();
                    for (i, a) in names.iter().enumerate() {
                        if names[..i].contains(a) {
                            return Err(err(line_no, format!("duplicate element `{a}`")));
                        }
                        if !a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                            return Err(err(line_no, format!("invalid element name `{a}`")));
                        }
                    }
                    if names.is_empty() {
                        return Err(err(line_no, "no elements".into()));
                    }
                    elements = Some(names);
                }
                Some((key, _)) => return Err(err(line_no, format!("unknown key `{key}` in [group]"))),
                None => {
                    let names = elements.as_ref().ok_or_else(|| err(line_no, "table row before elements".into()))?;
                    let row: Vec<String> = line.split_whitespace().map(str::to_string).collect();
                    if row.len() != names.len() {
                        return Err(err(line_no, format!("table row has {} entries, expected {}", row.len(), names.len())));
                    }
                    if let Some(bad) = row.iter().find(|x| !names.contains(x)) {
                        return Err(err(line_no, format!("unknown element `{bad}` in table")));
                    }
                    if table.len() == names.len() {
                        return Err(err(line_no, "too many table rows".into()));
                    }
                    table.push(row);
                }
            },
            Section::Subset => match kv {
                Some(("generators", v)) => generators = Some(v.split_whitespace().map(str::to_string).collect()),
                Some((key, _)) => return Err(err(line_no, format!("unknown key `{key}` in [subset]"))),
                None => return Err(err(line_no, format!("expected `generators = ...`, found `{line}`"))),
            },
            Section::Options => match kv {
                Some(("max_degree", v)) => {
                    max_degree = v.parse().map_err(|_| err(line_no, format!("invalid max_degree `{v}`")))?;
                    if max_degree < 1 {
                        return Err(err(line_no, "max_degree must be at least 1".into()));
                    }
                }
                Some((key, _)) => return Err(err(line_no, format!("unknown key `{key}` in [options]"))),
                None => return Err(err(line_no, format!("expected `key = value`, found `{line}`"))),
            },
        }
    }
    let last = text.lines().count().max(1);
    let elements = elements.ok_or_else(|| err(last, "missing `elements` in [group]".into()))?;
    if table.len() != elements.len() {
        return Err(err(last, format!("table has {} rows, expected {}", table.len(), elements.len())));
    }
    let generators = generators.ok_or_else(|| err(last, "missing [subset] generators".into()))?;
    Ok(CalculusSpec { elements, table, generators, max_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::wedge::WedgeOptions;

    fn cross(name: &str, maxdeg: usize) -> CrossAlgebra {
        let spec = builtin(name).unwrap();
        CrossAlgebra::new(spec.calculus().unwrap(), WedgeOptions::with_max_degree(maxdeg)).unwrap()
    }

    fn eval(cp: &CrossAlgebra, text: &str) -> String {
        print_normal(&parse_and_evaluate(text, cp).unwrap(), cp)
    }

    #[test]
    fn parse_shapes() {
        let e = parse("d(e[g])").unwrap();
        assert!(matches!(e.kind, ExprKind::Differential(ref a) if a.kind == ExprKind::Function("g".into())));
        let e = parse("L(chi[1]; w[2]*e[g])").unwrap();
        match e.kind {
            ExprKind::LieDerivative(h, x) => {
                assert_eq!(h.kind, ExprKind::Chi(1));
                assert!(matches!(x.kind, ExprKind::Mul(..)));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("<gamma[1], e[g]*w[1]>").unwrap().kind, ExprKind::Pairing(..)));
        assert!(matches!(parse("1 + 2*3").unwrap().kind, ExprKind::Add(..)));
        assert_eq!(parse("3/4").unwrap().kind, ExprKind::Scalar(crate::linalg::ratio(3, 4)));
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("d(e[g]").unwrap_err() {
            DslError::Syntax { pos, expected, .. } => {
                assert_eq!(pos, Pos { line: 1, col: 7 });
                assert_eq!(expected, vec!["`)`".to_string()]);
            }
            other => panic!("{other:?}"),
        }
        match parse("w[1] +\n  * w[2]").unwrap_err() {
            DslError::Syntax { pos, .. } => assert_eq!(pos, Pos { line: 2, col: 3 }),
            other => panic!("{other:?}"),
        }
        match parse("foo[1]").unwrap_err() {
            DslError::UnknownName { name, .. } => assert_eq!(name, "foo"),
            other => panic!("{other:?}"),
        }
        assert!(parse("w[1] w[2]").is_err());
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn evaluation_examples() {
        let cp = cross("z2", 2);
        assert_eq!(eval(&cp, "d(e[g])"), "(e[e] - e[g]) * w[1]");
        assert_eq!(eval(&cp, "<gamma[1], e[g]*w[1]>"), "0");
        assert_eq!(eval(&cp, "<gamma[1], e[e]*w[1]>"), "1");
        assert_eq!(eval(&cp, "d(d(e[g]))"), "0");
        assert_eq!(eval(&cp, "gamma[1]*e[g]"), "e[g] * gamma[1]");
        assert_eq!(eval(&cp, "iota(1; e[g]*w[1])"), "e[g]");
        assert_eq!(eval(&cp, "L(chi[1]; w[1])"), "0");
        assert_eq!(eval(&cp, "2*u[g] - u[e]"), "-1 + 2*u[g]");
        for name in BUILTINS {
            let cp = cross(name, 2);
            let g = cp.calculus().paired().alg().basis_names()[1].clone();
            assert_eq!(eval(&cp, &format!("d(d(e[{g}]))")), "0");
        }
    }

    #[test]
    fn evaluation_errors() {
        let cp = cross("z2", 2);
        let err = |t: &str| parse_and_evaluate(t, &cp).unwrap_err();
        assert!(matches!(err("d(gamma[1])"), DslError::Type { .. }));
        assert!(matches!(err("w[2]"), DslError::Index { index: 2, max: 1, .. }));
        assert!(matches!(err("e[x]"), DslError::UnknownElement { .. }));
        assert!(matches!(err("L(gamma[1]; w[1])"), DslError::Type { .. }));
        assert!(matches!(err("<w[1], w[1]>"), DslError::Type { .. }));
    }

    #[test]
    fn round_trips() {
        let cp = cross("s3", 3);
        for text in ["0", "w[1]*w[2]", "e[p12]*w[1]*w[2]*gamma[3]", "gamma[1]*gamma[2]*u[c123]", "1/2 - e[e]"] {
            let v = parse_and_evaluate(text, &cp).unwrap().into_cross(&cp);
            let printed = cp.format_cross(&v);
            let back = parse_and_evaluate(&printed, &cp).unwrap().into_cross(&cp);
            assert_eq!(back, v, "{text} -> {printed}");
        }
        assert_eq!(eval(&cp, "0"), "0");
        assert_eq!(eval(&cp, "e[e] * 0"), "0");
        assert_eq!(parse_and_evaluate("<gamma[1], w[1]>", &cp).unwrap(), Value::Scalar(rat(1)));
    }

    #[test]
    fn spec_round_trip_and_errors() {
        for name in BUILTINS {
            let spec = builtin(name).unwrap();
            assert_eq!(parse_spec(&spec.to_text()).unwrap(), spec);
        }
        let text = "[group]\nelements = e a b\ne a b\na b e\nb e a\n[subset]\ngenerators = a\n";
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.max_degree, DEFAULT_MAX_DEGREE);
        assert!(spec.calculus().is_ok());
        let s3 = builtin("s3").unwrap();
        let mut bad = s3.clone();
        bad.generators = vec!["p12".into()];
        assert_eq!(bad.calculus().unwrap_err().to_string(), "not ad-invariant");
        assert!(parse_spec("[group]\nelements = e g\ne g\n").is_err());
        assert!(parse_spec("[group]\nelements = e g\ne g\ng x\n[subset]\ngenerators = g\n").is_err());
        assert!(matches!(parse_spec("elements = e\n"), Err(DslError::Spec { line: 1, .. })));
        let not_group = "[group]\nelements = e g\ne g\ng g\n[subset]\ngenerators = g\n";
        assert!(parse_spec(not_group).unwrap().calculus().is_err());
    }
}
