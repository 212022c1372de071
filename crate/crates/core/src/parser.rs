//! Text input for polynomials and fields.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' unary)?
//! atom  := number | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Numbers are integers or decimals; `a/b` is ordinary division. There is
//! no implicit multiplication. A field file holds one binding per line:
//!
//! ```text
//! # comment
//! name = example
//! lambda = 1
//! dx = x - x*(x^2 + y^2)
//! dy = y - y*(x^2 + y^2)
//! ```
//!
//! `lambda` may be omitted; it is read off the linear part either way.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::form::{join_terms, monomial_text, BinaryForm};
use crate::poly2::Poly2;
use crate::rational::{self, Rational};
use crate::starfield::StarField;

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(u8),
    Op(char),
    End,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let Some(value) = decimal(&s) else {
                return err(line, col, format!("bad number `{s}`"));
            };
            out.push((Tok::Num(value), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            match s.as_str() {
                "x" => out.push((Tok::Var(0), col)),
                "y" => out.push((Tok::Var(1), col)),
                _ => return err(line, col, format!("unknown identifier `{s}`")),
            }
        } else if "+-−*/^()".contains(c) {
            out.push((Tok::Op(if c == '−' { '-' } else { c }), col));
            i += 1;
        } else {
            return err(line, col, format!("unexpected character `{c}`"));
        }
    }
    out.push((Tok::End, col0 + chars.len()));
    Ok(out)
}

fn decimal(s: &str) -> Option<Rational> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(n, d))
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly2> {
        let mut acc = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly2> {
        let mut acc = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = *self.peek() {
            self.bump();
            let col = self.col();
            let rhs = self.unary()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                match rhs.as_constant() {
                    Some(d) if !d.is_zero() => acc = acc.scale(&(rational::int(1) / d)),
                    Some(_) => return err(self.line, col, "division by zero"),
                    None => return err(self.line, col, "divisor must be a constant"),
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly2> {
        match *self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly2> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        let e = self.unary()?;
        let e = e.as_constant().filter(|c| c.is_integer() && !c.is_negative());
        match e.and_then(|c| c.to_integer().to_u32()) {
            Some(n) => Ok(base.pow(n)),
            None => err(self.line, col, "non-integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Poly2> {
        let col = self.col();
        match self.bump() {
            Tok::Num(v) => Ok(Poly2::constant(v)),
            Tok::Var(0) => Ok(Poly2::x()),
            Tok::Var(_) => Ok(Poly2::y()),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.bump() != Tok::Op(')') {
                    return err(self.line, self.toks[self.pos.saturating_sub(1)].1, "expected `)`");
                }
                Ok(inner)
            }
            Tok::End => err(self.line, col, "unexpected end of input"),
            Tok::Op(c) => err(self.line, col, format!("unexpected `{c}`")),
        }
    }
}

fn parse_at(text: &str, line: usize, col0: usize) -> Result<Poly2> {
    let mut p = Parser {
        toks: lex(text, line, col0)?,
        pos: 0,
        line,
    };
    let v = p.expr()?;
    match p.peek() {
        Tok::End => {}
        Tok::Num(_) | Tok::Var(_) | Tok::Op('(') => {
            return err(line, p.col(), "implicit multiplication is not allowed")
        }
        _ => return err(line, p.col(), "unexpected trailing input"),
    }
    Ok(v)
}

/// Parses one expression in `x`, `y` into an expanded polynomial.
pub fn parse_poly(text: &str) -> Result<Poly2> {
    parse_at(text, 1, 1)
}

/// Parses a homogeneous expression as a form of degree `degree`, or of its
/// own degree when `None`. The zero polynomial needs an explicit degree.
pub fn parse_form(text: &str, degree: Option<usize>) -> Result<BinaryForm> {
    let p = parse_poly(text)?;
    let d = match (degree, p.degrees_present().as_slice()) {
        (Some(d), _) => d,
        (None, [d]) => *d as usize,
        (None, []) => return err(1, 1, "the zero form needs an explicit degree"),
        (None, _) => return err(1, 1, "expression is not homogeneous"),
    };
    match p.to_form(d as u32) {
        Some(f) => Ok(f),
        None => err(1, 1, format!("expression is not homogeneous of degree {d}")),
    }
}

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Accept `λ < 0` by reversing time: `λ → −λ`, `Q → −Q`.
    pub normalize_negative_lambda: bool,
}

/// A parsed field file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSource {
    pub name: Option<String>,
    pub comments: Vec<String>,
    pub field: StarField,
    /// Time was reversed to make `λ` positive.
    pub normalized: bool,
}

struct Binding {
    line: usize,
    col: usize,
    value: String,
}

/// Parses a field file.
pub fn parse_field(text: &str) -> Result<StarField> {
    Ok(parse_field_with(text, &ParseOptions::default())?.field)
}

pub fn parse_field_with(text: &str, options: &ParseOptions) -> Result<FieldSource> {
    let mut name = None;
    let mut comments = Vec::new();
    let mut lambda_b: Option<Binding> = None;
    let mut dx_b: Option<Binding> = None;
    let mut dy_b: Option<Binding> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c.trim())),
            None => (raw, None),
        };
        if let Some(c) = comment {
            comments.push(c.to_string());
        }
        if body.trim().is_empty() {
            continue;
        }
        let Some(eq) = body.find('=') else {
            return err(line, 1, "expected `name = value`");
        };
        let key = body[..eq].trim();
        let value = body[eq + 1..].to_string();
        let col = body[..eq + 1].chars().count() + 1;
        let b = Binding { line, col, value };
        let slot = match key {
            "name" => {
                name = Some(b.value.trim().to_string());
                continue;
            }
            "lambda" | "λ" => &mut lambda_b,
            "dx" => &mut dx_b,
            "dy" => &mut dy_b,
            other => return err(line, 1, format!("unknown binding `{other}`")),
        };
        if slot.is_some() {
            return err(line, 1, format!("duplicate binding `{key}`"));
        }
        *slot = Some(b);
    }
    let last = text.lines().count().max(1);
    let Some(dx_b) = dx_b else {
        return err(last, 1, "missing `dx = ...`");
    };
    let Some(dy_b) = dy_b else {
        return err(last, 1, "missing `dy = ...`");
    };
    let dx = parse_at(&dx_b.value, dx_b.line, dx_b.col)?;
    let dy = parse_at(&dy_b.value, dy_b.line, dy_b.col)?;
    for (p, b) in [(&dx, &dx_b), (&dy, &dy_b)] {
        if !p.coeff(0, 0).is_zero() {
            return err(b.line, b.col, "constant term: the origin must be an equilibrium");
        }
    }
    if !dx.coeff(0, 1).is_zero() || !dy.coeff(1, 0).is_zero() {
        let b = if dx.coeff(0, 1).is_zero() { &dy_b } else { &dx_b };
        return err(b.line, b.col, "off-diagonal linear term: the linear part must be λ·I");
    }
    let lx = dx.coeff(1, 0);
    let ly = dy.coeff(0, 1);
    if lx != ly {
        return err(
            dy_b.line,
            dy_b.col,
            format!(
                "star-node mismatch: coefficient of x in dx is {} but of y in dy is {}",
                rational::to_compact_string(&lx),
                rational::to_compact_string(&ly)
            ),
        );
    }
    if let Some(b) = &lambda_b {
        let declared = parse_at(&b.value, b.line, b.col)?;
        match declared.as_constant() {
            Some(v) if v == lx => {}
            Some(v) => {
                return err(
                    b.line,
                    b.col,
                    format!(
                        "declared lambda {} differs from the linear part {}",
                        rational::to_compact_string(&v),
                        rational::to_compact_string(&lx)
                    ),
                )
            }
            None => return err(b.line, b.col, "lambda must be a constant"),
        }
    }
    let q1 = &dx - &Poly2::term(lx.clone(), 1, 0);
    let q2 = &dy - &Poly2::term(lx.clone(), 0, 1);
    let mut degree = None;
    for (q, b) in [(&q1, &dx_b), (&q2, &dy_b)] {
        match q.degrees_present().as_slice() {
            [] => {}
            [d] if d % 2 == 1 && *d >= 3 => {
                if degree.is_some_and(|e| e != *d) {
                    return err(b.line, b.col, "dx and dy have nonlinear parts of different degrees");
                }
                degree = Some(*d);
            }
            _ => return err(b.line, b.col, "remainder not odd-degree homogeneous of degree ≥ 3"),
        }
    }
    let Some(d) = degree else {
        return err(dx_b.line, dx_b.col, "no nonlinear part");
    };
    let mut f1 = q1.to_form(d).expect("homogeneous");
    let mut f2 = q2.to_form(d).expect("homogeneous");
    let mut lambda = lx;
    let mut normalized = false;
    if lambda.is_zero() {
        return err(dx_b.line, dx_b.col, "λ = 0: the origin is not a star node");
    }
    if lambda.is_negative() {
        if !options.normalize_negative_lambda {
            return err(dx_b.line, dx_b.col, "λ < 0; enable normalization to reverse time");
        }
        let m = rational::int(-1);
        lambda = -lambda;
        f1 = f1.scale(&m);
        f2 = f2.scale(&m);
        normalized = true;
    }
    let field = StarField::new(lambda, f1, f2)?;
    Ok(FieldSource {
        name,
        comments,
        field,
        normalized,
    })
}

fn form_terms(f: &BinaryForm) -> Vec<(Rational, String)> {
    let d = f.degree();
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (c.clone(), monomial_text("x", d - k, "y", k)))
        .collect()
}

/// Renders a field in the file format, linear term first.
pub fn print_field(f: &StarField, name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(n) = name {
        out.push_str(&format!("name = {n}\n"));
    }
    out.push_str(&format!("lambda = {}\n", rational::to_compact_string(f.lambda())));
    for (key, var, q) in [("dx", "x", f.q1()), ("dy", "y", f.q2())] {
        let mut terms = vec![(f.lambda().clone(), var.to_string())];
        terms.extend(form_terms(q));
        out.push_str(&format!("{key} = {}\n", join_terms(&terms)));
    }
    out
}
