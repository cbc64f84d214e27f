//! Parser and printer for defining equations, variety files, and points.
//!
//! Surface syntax for expressions over ambient variables z_1..z_n:
//!
//! ```text
//! equation := expr ('=' expr)?
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := '-' factor | power
//! power    := atom ('^' natural)?
//! atom     := rational | 'i' | var | ('conj'|'Re'|'Im') '(' expr ')' | '(' expr ')'
//! rational := digits ('/' digits)?
//! ```
//!
//! `conj` conjugates coefficients and swaps each variable with its conjugate
//! symbol; `Re(e)` and `Im(e)` expand to (e + conj e)/2 and (e - conj e)/(2i).
//! An equation moves everything to one side; a side that is not real-valued
//! is split into its real and imaginary parts, each of which is, and each
//! generator is scaled monic with the scaling unit recorded.
//!
//! Variety files are line-oriented UTF-8: '#' comment lines, exactly one
//! `vars <name> ...` line, one or more `eq <expr>` lines, and an optional
//! `name <string>` line.

use crate::order::MonomialOrder;
use crate::poly::{Polynomial, Registry};
use crate::scalar::GaussianRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent at byte {pos} must be a nonnegative integer up to 4096")]
    BadExponent { pos: usize },
    #[error("line {line}: {msg}")]
    File { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("variety file defines no generators")]
    EmptyVariety,
    #[error("expression must be a constant")]
    NotConstant,
    #[error("expression uses conjugates but a real-variable polynomial was required")]
    NotRealVariables,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

/// The ambient complex variables of a session plus the shared registry
/// holding them and their conjugate symbols (index j + n for variable j).
#[derive(Debug, Clone)]
pub struct AmbientVars {
    names: Vec<String>,
    registry: Arc<Registry>,
}

impl AmbientVars {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<AmbientVars, ParseError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for name in &names {
            validate_var_name(name)?;
        }
        let mut all = names.clone();
        all.extend(names.iter().map(|n| format!("conj({n})")));
        let registry = Registry::new(all).map_err(|e| ParseError::Invalid(e.to_string()))?;
        Ok(AmbientVars { names, registry })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.registry
    }

    /// The antiholomorphic involution on descriptions: conjugate every
    /// coefficient and swap z_j with its conjugate symbol.
    pub fn conj_swap(&self, p: &Polynomial) -> Polynomial {
        let n = self.n() as u32;
        let map: Vec<u32> = (0..2 * n)
            .map(|v| if v < n { v + n } else { v - n })
            .collect();
        p.conjugate_coeffs().permute_vars(&map)
    }

    /// True when p takes real values on the diagonal (conj_swap fixes it).
    pub fn is_real_valued(&self, p: &Polynomial) -> bool {
        self.conj_swap(p) == *p
    }
}

fn validate_var_name(name: &str) -> Result<(), ParseError> {
    let mut chars = name.chars();
    let ok_head = chars.next().map(|c| c.is_ascii_alphabetic() || c == '_');
    if ok_head != Some(true) || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(ParseError::Invalid(format!(
            "invalid variable name '{name}'"
        )));
    }
    if matches!(name, "i" | "conj" | "Re" | "Im") {
        return Err(ParseError::Invalid(format!(
            "'{name}' is reserved and cannot be a variable"
        )));
    }
    Ok(())
}

/// A defining equation after normalization: `unit * poly` is the original
/// real-valued generator; `poly` is monic under the session order (grevlex).
/// The unit is provenance only; the ideal is unchanged by it.
#[derive(Debug, Clone)]
pub struct RealGenerator {
    pub poly: Polynomial,
    pub unit: GaussianRational,
}

/// A parsed variety file: ambient variables, normalized real generators, and
/// an optional display name. Equality ignores units (scaling provenance).
#[derive(Debug, Clone)]
pub struct VarietyData {
    pub vars: AmbientVars,
    pub generators: Vec<RealGenerator>,
    pub name: Option<String>,
}

impl PartialEq for VarietyData {
    fn eq(&self, other: &Self) -> bool {
        self.vars.names() == other.vars.names()
            && self.name == other.name
            && self.generators.len() == other.generators.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| a.poly == b.poly)
    }
}

impl VarietyData {
    pub fn n(&self) -> usize {
        self.vars.n()
    }

    /// Re-check structural invariants: nonzero monic generators whose
    /// unit-scaled forms are real-valued on the diagonal.
    pub fn validate(&self) -> Result<(), ParseError> {
        if self.generators.is_empty() {
            return Err(ParseError::EmptyVariety);
        }
        for g in &self.generators {
            if g.poly.is_zero() || g.unit.is_zero() {
                return Err(ParseError::Invalid("zero generator".to_string()));
            }
            let (monic, _) = g.poly.monic(&MonomialOrder::GrevLex).unwrap();
            if monic != g.poly {
                return Err(ParseError::Invalid(
                    "generator is not monic under the session order".to_string(),
                ));
            }
            let scaled = g.poly.scale(&g.unit);
            if !self.vars.is_real_valued(&scaled) {
                return Err(ParseError::Invalid(
                    "generator is not real-valued on the diagonal".to_string(),
                ));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Equals,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let pos = i;
        let tok = match c {
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            '=' => {
                i += 1;
                Tok::Equals
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = text[start..i].parse().unwrap();
                let mut denom = BigInt::from(1);
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    denom = text[dstart..i].parse().unwrap();
                    if denom.is_zero() {
                        return Err(syntax(dstart, "zero denominator in rational literal"));
                    }
                }
                Tok::Num(BigRational::new(numer, denom))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            other => return Err(syntax(pos, format!("unexpected character '{other}'"))),
        };
        out.push(Spanned { tok, pos });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    toks: Vec<Spanned>,
    idx: usize,
    vars: &'a AmbientVars,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a AmbientVars) -> Result<Parser<'a>, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            idx: 0,
            vars,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|s| s.pos).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.idx += 1;
                Ok(())
            }
            _ => Err(syntax(self.pos(), format!("expected {what}"))),
        }
    }

    fn registry(&self) -> Arc<Registry> {
        self.vars.registry().clone()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.idx += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.idx += 1;
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.idx += 1;
        let pos = self.pos();
        match self.bump().map(|s| s.tok) {
            Some(Tok::Num(r)) if r.denom() == &BigInt::from(1) && r.numer() >= &BigInt::from(0) => {
                let e: u32 = r
                    .numer()
                    .try_into()
                    .ok()
                    .filter(|e| *e <= 4096u32)
                    .ok_or(ParseError::BadExponent { pos })?;
                Ok(base.pow(e))
            }
            _ => Err(ParseError::BadExponent { pos }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.pos();
        match self.bump().map(|s| s.tok) {
            Some(Tok::Num(r)) => Ok(Polynomial::constant(
                self.registry(),
                GaussianRational::from_real(r),
            )),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "i" => Ok(Polynomial::constant(self.registry(), GaussianRational::i())),
                "conj" | "Re" | "Im" => {
                    self.expect(Tok::LParen, "'(' after function name")?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    let sw = self.vars.conj_swap(&inner);
                    Ok(match name.as_str() {
                        "conj" => sw,
                        // Re(e) = (e + conj e)/2
                        "Re" => inner.add(&sw).scale(&GaussianRational::from_ratio(1, 2)),
                        // Im(e) = (e - conj e)/(2i) = (e - conj e) * (-i/2)
                        _ => inner.sub(&sw).scale(&GaussianRational::new(
                            BigRational::zero(),
                            BigRational::new(BigInt::from(-1), BigInt::from(2)),
                        )),
                    })
                }
                _ => match self.vars.registry().index_of(&name) {
                    Some(idx) if (idx as usize) < self.vars.n() => {
                        Ok(Polynomial::var(self.registry(), idx))
                    }
                    _ => Err(ParseError::UnknownVariable { name, pos }),
                },
            },
            _ => Err(syntax(pos, "expected a value")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.idx != self.toks.len() {
            return Err(syntax(self.pos(), "trailing input"));
        }
        Ok(())
    }
}

/// Parse one expression over the ambient variables (conjugates allowed).
pub fn parse_expression(text: &str, vars: &AmbientVars) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text, vars)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parse an expression that must stay inside the plain variables (no
/// conjugate symbol may survive): used for cone polynomials over real
/// variables. Returns the polynomial restricted to a registry of exactly
/// the given variables.
pub fn parse_real_expression(text: &str, var_names: &[String]) -> Result<Polynomial, ParseError> {
    let vars = AmbientVars::new(var_names.to_vec())?;
    let p = parse_expression(text, &vars)?;
    let n = vars.n() as u32;
    if p.support().iter().any(|v| *v >= n) {
        return Err(ParseError::NotRealVariables);
    }
    let target =
        Registry::new(var_names.to_vec()).map_err(|e| ParseError::Invalid(e.to_string()))?;
    let map: Vec<Option<u32>> = (0..2 * n).map(|v| (v < n).then_some(v)).collect();
    p.restrict(target, &map)
        .map_err(|e| ParseError::Invalid(e.to_string()))
}

/// Parse `expr` or `expr = expr` into zero or more normalized real
/// generators. An equation equivalent to 0 = 0 contributes nothing; a side
/// that is not real-valued is split into real and imaginary parts.
pub fn parse_equation(text: &str, vars: &AmbientVars) -> Result<Vec<RealGenerator>, ParseError> {
    let mut p = Parser::new(text, vars)?;
    let lhs = p.expr()?;
    let e = if p.peek() == Some(&Tok::Equals) {
        p.idx += 1;
        let rhs = p.expr()?;
        p.finish()?;
        lhs.sub(&rhs)
    } else {
        p.finish()?;
        lhs
    };
    if e.is_zero() {
        return Ok(Vec::new());
    }
    let sw = vars.conj_swap(&e);
    let parts: Vec<Polynomial> = if sw == e {
        vec![e]
    } else {
        let re = e.add(&sw).scale(&GaussianRational::from_ratio(1, 2));
        let im = e.sub(&sw).scale(&GaussianRational::new(
            BigRational::zero(),
            BigRational::new(BigInt::from(-1), BigInt::from(2)),
        ));
        [re, im].into_iter().filter(|p| !p.is_zero()).collect()
    };
    let mut out: Vec<RealGenerator> = Vec::new();
    for part in parts {
        let (poly, unit) = part.monic(&MonomialOrder::GrevLex).unwrap();
        if out.iter().all(|g| g.poly != poly) {
            out.push(RealGenerator { poly, unit });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Variety files
// ---------------------------------------------------------------------------

/// Parse a variety file (see module docs for the format).
pub fn load_variety(text: &str) -> Result<VarietyData, ParseError> {
    let mut vars: Option<AmbientVars> = None;
    let mut generators: Vec<RealGenerator> = Vec::new();
    let mut name: Option<String> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (directive, rest) = match line.split_once(char::is_whitespace) {
            Some((d, r)) => (d, r.trim()),
            None => (line, ""),
        };
        let err = |msg: String| ParseError::File { line: lineno, msg };
        match directive {
            "vars" => {
                if vars.is_some() {
                    return Err(err("duplicate vars line".to_string()));
                }
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(err("vars line lists no variables".to_string()));
                }
                vars = Some(AmbientVars::new(names).map_err(|e| err(e.to_string()))?);
            }
            "eq" => {
                let vars = vars
                    .as_ref()
                    .ok_or_else(|| err("eq before vars line".to_string()))?;
                let gens = parse_equation(rest, vars).map_err(|e| err(e.to_string()))?;
                for g in gens {
                    if generators.iter().all(|h| h.poly != g.poly) {
                        generators.push(g);
                    }
                }
            }
            "name" => {
                if name.is_some() {
                    return Err(err("duplicate name line".to_string()));
                }
                if rest.is_empty() {
                    return Err(err("name line is empty".to_string()));
                }
                name = Some(rest.to_string());
            }
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }
    let vars = vars.ok_or(ParseError::Invalid("missing vars line".to_string()))?;
    if generators.is_empty() {
        return Err(ParseError::EmptyVariety);
    }
    let data = VarietyData {
        vars,
        generators,
        name,
    };
    data.validate()?;
    Ok(data)
}

/// Pretty-print back to the file format. `load_variety(print_variety(v))`
/// reproduces `v` exactly (units aside, which are provenance).
pub fn print_variety(v: &VarietyData) -> String {
    let mut out = String::new();
    out.push_str("vars ");
    out.push_str(&v.vars.names().join(" "));
    out.push('\n');
    if let Some(name) = &v.name {
        out.push_str("name ");
        out.push_str(name);
        out.push('\n');
    }
    for g in &v.generators {
        out.push_str("eq ");
        out.push_str(&g.poly.to_string());
        out.push('\n');
    }
    out
}

impl fmt::Display for VarietyData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_variety(self))
    }
}

// ---------------------------------------------------------------------------
// Points and grids
// ---------------------------------------------------------------------------

/// Parse one Gaussian-rational coordinate: "0", "-1", "1/2+1/3i", "2i", "-i".
fn parse_coordinate(text: &str) -> Result<GaussianRational, ParseError> {
    let toks = tokenize(text)?;
    let mut idx = 0;
    let mut acc = GaussianRational::zero();
    let mut sign_minus = false;
    let mut expect_term = true;
    while idx < toks.len() {
        match (&toks[idx].tok, expect_term) {
            (Tok::Minus, true) => {
                sign_minus = !sign_minus;
                idx += 1;
            }
            (Tok::Plus, false) => {
                sign_minus = false;
                idx += 1;
                expect_term = true;
            }
            (Tok::Minus, false) => {
                sign_minus = true;
                idx += 1;
                expect_term = true;
            }
            (Tok::Num(r), true) => {
                let mut v = GaussianRational::from_real(r.clone());
                idx += 1;
                if idx < toks.len() && toks[idx].tok == Tok::Ident("i".to_string()) {
                    v *= GaussianRational::i();
                    idx += 1;
                }
                if sign_minus {
                    v = -v;
                }
                acc += v;
                sign_minus = false;
                expect_term = false;
            }
            (Tok::Ident(name), true) if name == "i" => {
                let mut v = GaussianRational::i();
                if sign_minus {
                    v = -v;
                }
                acc += v;
                idx += 1;
                sign_minus = false;
                expect_term = false;
            }
            _ => return Err(syntax(toks[idx].pos, "expected a coordinate like 1/2+1/3i")),
        }
    }
    if expect_term {
        return Err(syntax(text.len(), "empty coordinate"));
    }
    Ok(acc)
}

/// Parse a comma-separated point with exactly n coordinates.
pub fn parse_point(text: &str, n: usize) -> Result<Vec<GaussianRational>, ParseError> {
    let coords: Vec<GaussianRational> = text
        .split(',')
        .map(|c| parse_coordinate(c.trim()))
        .collect::<Result<_, _>>()?;
    if coords.len() != n {
        return Err(ParseError::Invalid(format!(
            "expected {n} coordinates, found {}",
            coords.len()
        )));
    }
    Ok(coords)
}

/// Parse a comma-separated list of real rationals (scan grids).
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, ParseError> {
    text.split(',')
        .map(|c| {
            let v = parse_coordinate(c.trim())?;
            if !v.is_real() {
                return Err(ParseError::Invalid(
                    "grid values must be real rationals".to_string(),
                ));
            }
            Ok(v.re)
        })
        .collect()
}

/// A curve t -> point: one coordinate expression per ambient variable in the
/// single parameter `t` (with i allowed), evaluated at real rational t.
pub struct Curve {
    coords: Vec<Polynomial>,
}

impl Curve {
    pub fn parse(text: &str, n: usize) -> Result<Curve, ParseError> {
        let tvars = AmbientVars::new(vec!["t"])?;
        let coords: Vec<Polynomial> = text
            .split(',')
            .map(|c| parse_expression(c.trim(), &tvars))
            .collect::<Result<_, _>>()?;
        if coords.len() != n {
            return Err(ParseError::Invalid(format!(
                "curve needs {n} coordinates, found {}",
                coords.len()
            )));
        }
        Ok(Curve { coords })
    }

    /// Evaluate at a real rational parameter (conj(t) = t).
    pub fn at(&self, t: &BigRational) -> Vec<GaussianRational> {
        let tv = GaussianRational::from_real(t.clone());
        self.coords
            .iter()
            .map(|c| c.eval_full(&[tv.clone(), tv.clone()]).unwrap())
            .collect()
    }
}

/// Evaluate a constant expression (no variables) to a Gaussian rational.
pub fn parse_constant(text: &str) -> Result<GaussianRational, ParseError> {
    let vars = AmbientVars::new(Vec::<String>::new())?;
    let p = parse_expression(text, &vars)?;
    p.constant_value().ok_or(ParseError::NotConstant)
}

/// Canonical point display: comma-joined coordinates in the same syntax
/// `parse_point` accepts.
pub fn format_point(point: &[GaussianRational]) -> String {
    point
        .iter()
        .map(|c| {
            if c.is_real() {
                c.to_string()
            } else if c.re.is_zero() {
                // "2/3*i" is expression syntax; points use the suffix form.
                let im = GaussianRational::from_real(c.im.clone());
                if c.im == BigRational::from_integer(BigInt::from(1)) {
                    "i".to_string()
                } else if c.im == BigRational::from_integer(BigInt::from(-1)) {
                    "-i".to_string()
                } else {
                    format!("{im}i")
                }
            } else {
                let re = GaussianRational::from_real(c.re.clone());
                let im_abs = GaussianRational::from_real(c.im.abs());
                let sign = if c.im < BigRational::zero() { "-" } else { "+" };
                let im_body = if im_abs.is_one() {
                    "i".to_string()
                } else {
                    format!("{im_abs}i")
                };
                format!("{re}{sign}{im_body}")
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}
