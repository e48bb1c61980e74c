//! Surface syntax for covariant expressions: sums, products, powers and
//! transvectants over the named generators, with an optional trailing
//! `with` clause that specialises generic forms to products of the six
//! linear forms.
//!
//! Grammar (whitespace insignificant, `^` binds tighter than `*`, which
//! binds tighter than `+`/`-`):
//!
//! ```text
//! program := expr ('with' binding (',' binding)*)?
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := atom ('^' nat)?
//! atom    := ident | rational | '(' expr ')' | 'T(' expr ',' expr ',' nat ')'
//! binding := ident '=' lproduct
//! ```
//!
//! Identifiers: `l1`..`l6`, `p12`..`p56`, `x1`, `x2`, and the generic forms
//! `f6`, `f5`, `q1`, `q2`, `q3`, `l`.

use crate::covariant::{
    linear_form, pluecker, specialize_form, transvectant, Covariant, CovariantError, GenericForm,
};
use crate::gauss::GaussRat;
use crate::poly::{SparsePoly, VAR_X1, VAR_X2};
use num::bigint::BigInt;
use num::rational::BigRational;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdent { pos: usize, name: String },
    #[error("transvectant index {r} exceeds an operand order ({m}, {n})")]
    Arity { r: u32, m: u32, n: u32 },
    #[error("operands have incompatible grading")]
    Grading,
    #[error("binding for `{name}` must be a product of l1..l6 of total degree {expected}, got degree {given}")]
    BadBinding {
        name: String,
        expected: usize,
        given: usize,
    },
    #[error("`{name}` is not a generic form that can be bound")]
    NotBindable { name: String },
}

impl From<CovariantError> for ExprError {
    fn from(e: CovariantError) -> Self {
        match e {
            CovariantError::OrderTooSmall { r, m, n } => ExprError::Arity { r, m, n },
            _ => ExprError::Grading,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Ident(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Transvectant(Box<Expr>, Box<Expr>, u32),
}

/// A parsed expression plus its specialization clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub expr: Expr,
    /// (generic-form name, linear-form indices of the bound product)
    pub bindings: Vec<(String, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Nat(u64),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eq,
    With,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Token::Comma));
                i += 1;
            }
            '=' => {
                out.push((i, Token::Eq));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = text[start..i].parse().map_err(|_| ExprError::Syntax {
                    pos: start,
                    msg: "number too large".into(),
                })?;
                out.push((start, Token::Nat(n)));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                let word = &text[start..i];
                if word == "with" {
                    out.push((start, Token::With));
                } else {
                    out.push((start, Token::Ident(word.to_string())));
                }
            }
            _ => {
                return Err(ExprError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Token, what: &str) -> Result<(), ExprError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ExprError::Syntax {
                pos: self.here(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn nat(&mut self, what: &str) -> Result<u64, ExprError> {
        match self.bump() {
            Some(Token::Nat(n)) => Ok(n),
            _ => Err(ExprError::Syntax {
                pos: self.here(),
                msg: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let n = self.nat("an exponent")?;
            let n = u32::try_from(n).map_err(|_| ExprError::Syntax {
                pos: self.here(),
                msg: "exponent too large".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Ident(name)) if name == "T" => {
                self.expect(&Token::LParen, "`(` after T")?;
                let f = self.expr()?;
                self.expect(&Token::Comma, "`,` in T(f,g,r)")?;
                let g = self.expr()?;
                self.expect(&Token::Comma, "`,` in T(f,g,r)")?;
                let r = self.nat("a transvectant index")?;
                let r = u32::try_from(r).map_err(|_| ExprError::Syntax {
                    pos,
                    msg: "transvectant index too large".into(),
                })?;
                self.expect(&Token::RParen, "`)` closing T(f,g,r)")?;
                Ok(Expr::Transvectant(Box::new(f), Box::new(g), r))
            }
            Some(Token::Ident(name)) => Ok(Expr::Ident(name)),
            Some(Token::Nat(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    let d = self.nat("a denominator")?;
                    if d == 0 {
                        return Err(ExprError::Syntax {
                            pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    Ok(Expr::Num(BigRational::new(BigInt::from(n), BigInt::from(d))))
                } else {
                    Ok(Expr::Num(BigRational::from_integer(BigInt::from(n))))
                }
            }
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(&Token::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(ExprError::Syntax {
                pos,
                msg: "expected an identifier, number, `(` or `T(`".into(),
            }),
        }
    }

    /// binding RHS: a product of l1..l6 identifiers, powers allowed.
    fn lproduct(&mut self) -> Result<Vec<usize>, ExprError> {
        let mut indices = Vec::new();
        loop {
            let pos = self.here();
            let (name, exp) = match self.bump() {
                Some(Token::Ident(name)) => {
                    let mut exp = 1u32;
                    if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        exp = self.nat("an exponent")? as u32;
                    }
                    (name, exp)
                }
                _ => {
                    return Err(ExprError::Syntax {
                        pos,
                        msg: "expected a linear form l1..l6".into(),
                    })
                }
            };
            let idx = match name.strip_prefix('l').and_then(|s| s.parse::<usize>().ok()) {
                Some(i) if (1..=6).contains(&i) => i,
                _ => return Err(ExprError::UnknownIdent { pos, name }),
            };
            for _ in 0..exp {
                indices.push(idx);
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                return Ok(indices);
            }
        }
    }
}

/// Parse a covariant expression with its optional `with` clause.
pub fn parse(text: &str) -> Result<Program, ExprError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let expr = p.expr()?;
    let mut bindings = Vec::new();
    if p.peek() == Some(&Token::With) {
        p.pos += 1;
        loop {
            let pos = p.here();
            let name = match p.bump() {
                Some(Token::Ident(name)) => name,
                _ => {
                    return Err(ExprError::Syntax {
                        pos,
                        msg: "expected a generic-form name".into(),
                    })
                }
            };
            p.expect(&Token::Eq, "`=` in binding")?;
            let indices = p.lproduct()?;
            bindings.push((name, indices));
            if p.peek() == Some(&Token::Comma) {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    if p.pos != p.tokens.len() {
        return Err(ExprError::Syntax {
            pos: p.here(),
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(Program { expr, bindings })
}

fn generic_by_name(name: &str) -> Option<GenericForm> {
    match name {
        "f6" => Some(GenericForm::sextic()),
        "f5" => Some(GenericForm::quintic()),
        "q1" => Some(GenericForm::quadric(1)),
        "q2" => Some(GenericForm::quadric(2)),
        "q3" => Some(GenericForm::quadric(3)),
        "l" => Some(GenericForm::linear()),
        _ => None,
    }
}

fn eval_ident(name: &str) -> Result<Covariant, ExprError> {
    if let Some(idx) = name.strip_prefix('l').and_then(|s| s.parse::<usize>().ok()) {
        if (1..=6).contains(&idx) {
            return Ok(linear_form(idx));
        }
    }
    if let Some(rest) = name.strip_prefix('p') {
        if rest.len() == 2 {
            let i = rest[0..1].parse::<usize>().ok();
            let j = rest[1..2].parse::<usize>().ok();
            if let (Some(i), Some(j)) = (i, j) {
                if (1..=6).contains(&i) && (1..=6).contains(&j) && i != j {
                    return Ok(pluecker(i.min(j), i.max(j)).unwrap());
                }
            }
        }
    }
    match name {
        "x1" => Ok(Covariant::from_poly(SparsePoly::var(VAR_X1)).unwrap()),
        "x2" => Ok(Covariant::from_poly(SparsePoly::var(VAR_X2)).unwrap()),
        _ => match generic_by_name(name) {
            Some(g) => Ok(g.as_covariant()),
            None => Err(ExprError::UnknownIdent {
                pos: 0,
                name: name.to_string(),
            }),
        },
    }
}

fn eval_expr(e: &Expr) -> Result<Covariant, ExprError> {
    match e {
        Expr::Num(r) => Ok(Covariant::from_poly(SparsePoly::constant(GaussRat::new(
            r.clone(),
            BigRational::from_integer(BigInt::from(0)),
        )))
        .unwrap()),
        Expr::Ident(name) => eval_ident(name),
        Expr::Add(a, b) => {
            let (a, b) = (eval_expr(a)?, eval_expr(b)?);
            if !a.is_zero() && !b.is_zero() && (a.multidegree != b.multidegree || a.order != b.order)
            {
                return Err(ExprError::Grading);
            }
            Ok(a.add(&b))
        }
        Expr::Sub(a, b) => {
            let (a, b) = (eval_expr(a)?, eval_expr(b)?);
            if !a.is_zero() && !b.is_zero() && (a.multidegree != b.multidegree || a.order != b.order)
            {
                return Err(ExprError::Grading);
            }
            Ok(a.sub(&b))
        }
        Expr::Mul(a, b) => Ok(eval_expr(a)?.mul(&eval_expr(b)?)),
        Expr::Pow(a, n) => Ok(eval_expr(a)?.pow(*n)),
        Expr::Transvectant(f, g, r) => Ok(transvectant(&eval_expr(f)?, &eval_expr(g)?, *r)?),
    }
}

/// Evaluate a program to a covariant, applying the `with` specializations.
pub fn eval(program: &Program) -> Result<Covariant, ExprError> {
    let mut c = eval_expr(&program.expr)?;
    for (name, indices) in &program.bindings {
        let form = generic_by_name(name).ok_or_else(|| ExprError::NotBindable {
            name: name.clone(),
        })?;
        if indices.len() != form.degree {
            return Err(ExprError::BadBinding {
                name: name.clone(),
                expected: form.degree,
                given: indices.len(),
            });
        }
        c = specialize_form(&c, &form, indices)?;
    }
    Ok(c)
}

/// Parse and evaluate in one step.
pub fn eval_str(text: &str) -> Result<Covariant, ExprError> {
    eval(&parse(text)?)
}

fn fmt_expr(e: &Expr, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
    // precedence levels: 0 sum, 1 product, 2 power/atom
    let prec = match e {
        Expr::Add(..) | Expr::Sub(..) => 0,
        Expr::Mul(..) => 1,
        _ => 2,
    };
    let need = prec < parent;
    if need {
        write!(f, "(")?;
    }
    match e {
        Expr::Num(r) => {
            if r.denom() == &BigInt::from(1) {
                write!(f, "{}", r.numer())?;
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())?;
            }
        }
        Expr::Ident(name) => write!(f, "{name}")?,
        Expr::Add(a, b) => {
            fmt_expr(a, f, 0)?;
            write!(f, " + ")?;
            fmt_expr(b, f, 1)?;
        }
        Expr::Sub(a, b) => {
            fmt_expr(a, f, 0)?;
            write!(f, " - ")?;
            fmt_expr(b, f, 1)?;
        }
        Expr::Mul(a, b) => {
            fmt_expr(a, f, 1)?;
            write!(f, "*")?;
            fmt_expr(b, f, 2)?;
        }
        Expr::Pow(a, n) => {
            fmt_expr(a, f, 3)?;
            write!(f, "^{n}")?;
        }
        Expr::Transvectant(a, b, r) => {
            write!(f, "T(")?;
            fmt_expr(a, f, 0)?;
            write!(f, ", ")?;
            fmt_expr(b, f, 0)?;
            write!(f, ", {r})")?;
        }
    }
    if need {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_expr(self, f, 0)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)?;
        for (i, (name, indices)) in self.bindings.iter().enumerate() {
            write!(f, "{} {name}=", if i == 0 { " with" } else { "," })?;
            for (k, idx) in indices.iter().enumerate() {
                write!(f, "{}l{idx}", if k == 0 { "" } else { "*" })?;
            }
        }
        Ok(())
    }
}
