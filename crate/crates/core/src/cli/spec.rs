//! The line-oriented sequence-spec format.
//!
//! ```text
//! # Bernoulli, the long way round
//! sequence bern
//! delta = derivative
//! functional = uniform01
//! nmax = 6
//! ```
//!
//! `delta` is `derivative`, `difference h=<rat>` or `series [b̂_1, b̂_2, …]`
//! (so `B̄(t) = Σ b̂_n tⁿ/n!`). `functional` is an expression:
//!
//! ```text
//! expr := eval(rat) | uniform01 | moments[rat, …] | exp_z(rat) | accelerator(int)
//!       | family(id, name=value, …) | translate(expr, rat) | dilate(expr, rat)
//!       | dilate_power(expr, rat, int) | pow(expr, int) | ramify(expr, int)
//!       | mix(rat*expr + rat*expr …) | conv(expr, expr, …)
//! ```
//! where a family value is a rational or a bracketed list.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{parse_rational, Rational};
use crate::families::{Family, Param};
use crate::functionals::MomentFunctional;
use crate::operators::DeltaOperator;
use crate::sheffer::{ShefferSpec, ORDER_SLACK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid spec: {0}")]
    Validation(String),
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse { line, column, message: message.into() }
}

/// Declared delta operator, kept symbolic so it can be printed back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaDecl {
    Derivative,
    Difference(Rational),
    Series(Vec<Rational>),
}

impl DeltaDecl {
    pub fn build(&self, order: usize) -> Result<DeltaOperator, SpecError> {
        let r = match self {
            DeltaDecl::Derivative => Ok(DeltaOperator::derivative(order)),
            DeltaDecl::Difference(h) => DeltaOperator::difference(h.clone(), order),
            DeltaDecl::Series(b) => DeltaOperator::from_bhat(b.clone(), order),
        };
        r.map_err(|e| SpecError::Validation(e.to_string()))
    }
}

impl fmt::Display for DeltaDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaDecl::Derivative => f.write_str("derivative"),
            DeltaDecl::Difference(h) => write!(f, "difference h={h}"),
            DeltaDecl::Series(b) => {
                let items: Vec<String> = b.iter().map(ToString::to_string).collect();
                write!(f, "series [{}]", items.join(", "))
            }
        }
    }
}

/// A parsed and validated spec file.
#[derive(Clone, Debug)]
pub struct SequenceSpec {
    pub name: String,
    pub delta: DeltaDecl,
    pub functional: MomentFunctional,
    pub nmax: usize,
    /// Series order; `None` means `nmax + 4`.
    pub truncation: Option<usize>,
}

impl SequenceSpec {
    pub fn truncation(&self) -> usize {
        self.truncation.unwrap_or(self.nmax + ORDER_SLACK)
    }

    pub fn sheffer(&self) -> Result<ShefferSpec, SpecError> {
        let delta = self.delta.build(self.truncation())?;
        ShefferSpec::new(delta, self.functional.clone()).map_err(|e| SpecError::Validation(e.to_string()))
    }
}

/// Canonical text; `parse_spec` of it gives back the same spec.
impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sequence {}", self.name)?;
        writeln!(f, "delta = {}", self.delta)?;
        writeln!(f, "functional = {}", self.functional)?;
        writeln!(f, "nmax = {}", self.nmax)?;
        if let Some(t) = self.truncation {
            writeln!(f, "truncation = {t}")?;
        }
        Ok(())
    }
}

pub fn format_spec(spec: &SequenceSpec) -> String {
    spec.to_string()
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

/// Column (1-based, in characters) of byte offset `at` within `line`.
fn col(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

pub fn parse_spec(text: &str) -> Result<SequenceSpec, SpecError> {
    let mut name = None;
    let mut fields: BTreeMap<&'static str, (usize, usize, String)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let start = line.len() - line.trim_start().len();
        if name.is_none() {
            let rest = trimmed
                .strip_prefix("sequence")
                .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
                .ok_or_else(|| perr(lineno, col(line, start), "expected `sequence <name>` header"))?;
            let n = rest.trim();
            if !valid_name(n) {
                return Err(perr(lineno, col(line, line.len() - rest.trim_start().len()), "bad sequence name"));
            }
            name = Some(n.to_string());
            continue;
        }
        let eq = line
            .find('=')
            .ok_or_else(|| perr(lineno, col(line, start), "expected `key = value`"))?;
        let key = line[..eq].trim();
        let key: &'static str = match key {
            "delta" => "delta",
            "functional" => "functional",
            "nmax" => "nmax",
            "truncation" => "truncation",
            "sequence" => return Err(perr(lineno, col(line, start), "duplicate sequence header")),
            other => return Err(perr(lineno, col(line, start), format!("unknown key {other:?}"))),
        };
        if fields.contains_key(key) {
            return Err(perr(lineno, col(line, start), format!("duplicate key {key:?}")));
        }
        let value = &line[eq + 1..];
        let vstart = eq + 1 + (value.len() - value.trim_start().len());
        fields.insert(key, (lineno, col(line, vstart), value.trim().to_string()));
    }
    let name = name.ok_or_else(|| perr(1, 1, "empty spec: expected `sequence <name>` header"))?;
    let take = |key: &str| {
        fields
            .get(key)
            .cloned()
            .ok_or_else(|| SpecError::Validation(format!("missing key {key:?}")))
    };

    let (l, c, v) = take("delta")?;
    let delta = parse_delta(&v, l, c)?;
    let (l, c, v) = take("functional")?;
    let functional = parse_functional_at(&v, l, c)?;
    let (l, c, v) = take("nmax")?;
    let nmax = parse_count(&v, l, c)?;
    let truncation = match fields.get("truncation") {
        Some((l, c, v)) => Some(parse_count(v, *l, *c)?),
        None => None,
    };
    if let Some(t) = truncation {
        if t < nmax + 2 {
            return Err(SpecError::Validation(format!("truncation = {t} must be at least nmax + 2 = {}", nmax + 2)));
        }
    }
    let spec = SequenceSpec { name, delta, functional, nmax, truncation };
    validate(&spec)?;
    Ok(spec)
}

fn parse_count(v: &str, line: usize, column: usize) -> Result<usize, SpecError> {
    v.parse::<usize>().map_err(|_| perr(line, column, format!("expected a non-negative integer, got {v:?}")))
}

fn validate(spec: &SequenceSpec) -> Result<(), SpecError> {
    match spec.functional.moment(0) {
        Ok(m) if m == Rational::from_integer(0.into()) => {
            return Err(SpecError::Validation("functional has L_0 = 0 and is not invertible".into()))
        }
        Ok(_) => {}
        Err(e) => return Err(SpecError::Validation(e.to_string())),
    }
    if let DeltaDecl::Series(b) = &spec.delta {
        if b.first().map_or(true, |b1| *b1 == Rational::from_integer(0.into())) {
            return Err(SpecError::Validation("delta series needs b̂_1 != 0".into()));
        }
    }
    spec.sheffer().map(|_| ())
}

fn parse_delta(v: &str, line: usize, column: usize) -> Result<DeltaDecl, SpecError> {
    let mut p = Parser::new(v, line, column);
    let word = p.ident()?;
    let d = match word.as_str() {
        "derivative" => DeltaDecl::Derivative,
        "difference" => {
            p.skip_ws();
            if p.at_end() {
                DeltaDecl::Difference(Rational::from_integer(1.into()))
            } else {
                let key = p.ident()?;
                if key != "h" {
                    return Err(p.error_back(key.len(), format!("expected h=, got {key:?}")));
                }
                p.expect('=')?;
                let h = p.rational()?;
                if h == Rational::from_integer(0.into()) {
                    return Err(SpecError::Validation("difference step h must be nonzero".into()));
                }
                DeltaDecl::Difference(h)
            }
        }
        "series" => DeltaDecl::Series(p.rational_list('[', ']')?),
        other => {
            return Err(p.error_back(
                other.len(),
                format!("unknown delta {other:?}; expected derivative, difference or series"),
            ))
        }
    };
    p.finish()?;
    Ok(d)
}

/// Parses a functional expression on its own (columns count from 1).
pub fn parse_functional(text: &str) -> Result<MomentFunctional, SpecError> {
    parse_functional_at(text, 1, 1)
}

fn parse_functional_at(text: &str, line: usize, column: usize) -> Result<MomentFunctional, SpecError> {
    let mut p = Parser::new(text, line, column);
    let f = p.expr()?;
    p.finish()?;
    Ok(f)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, line: usize, column: usize) -> Self {
        Parser { src, pos: 0, line, column }
    }

    fn error_at(&self, at: usize, msg: impl Into<String>) -> SpecError {
        perr(self.line, self.column + self.src[..at].chars().count(), msg)
    }

    fn error(&self, msg: impl Into<String>) -> SpecError {
        self.error_at(self.pos, msg)
    }

    fn error_back(&self, len: usize, msg: impl Into<String>) -> SpecError {
        self.error_at(self.pos - len, msg)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("{f:?}"));
            Err(self.error(format!("expected {c:?}, found {found}")))
        }
    }

    fn finish(&mut self) -> Result<(), SpecError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected trailing input {:?}", self.rest())))
        }
    }

    fn ident(&mut self) -> Result<String, SpecError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 || self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            return Err(self.error("expected a name"));
        }
        let s = self.rest()[..len].to_string();
        self.pos += len;
        Ok(s)
    }

    fn rational(&mut self) -> Result<Rational, SpecError> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || c == '/' || (i == 0 && (c == '-' || c == '+'))))
            .map_or(self.rest().len(), |(i, _)| i);
        let text = &self.rest()[..len];
        let r = parse_rational(text.trim_start_matches('+'))
            .map_err(|_| self.error_at(start, format!("expected a rational, found {:?}", self.rest())))?;
        self.pos += len;
        Ok(r)
    }

    fn integer(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        self.rest()[..len]
            .parse::<usize>()
            .map(|v| {
                self.pos += len;
                v
            })
            .map_err(|_| self.error_at(start, "expected a non-negative integer"))
    }

    fn rational_list(&mut self, open: char, close: char) -> Result<Vec<Rational>, SpecError> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.rational()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn lift<T, E: fmt::Display>(&self, at: usize, r: Result<T, E>) -> Result<T, SpecError> {
        r.map_err(|e| self.error_at(at, e.to_string()))
    }

    fn expr(&mut self) -> Result<MomentFunctional, SpecError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "uniform01" => Ok(MomentFunctional::uniform01()),
            "moments" => Ok(MomentFunctional::from_moments(self.rational_list('[', ']')?)),
            "eval" | "exp_z" => {
                self.expect('(')?;
                let a = self.rational()?;
                self.expect(')')?;
                Ok(if name == "eval" { MomentFunctional::eval(a) } else { MomentFunctional::exp_z(a) })
            }
            "accelerator" => {
                self.expect('(')?;
                let d = self.integer()?;
                self.expect(')')?;
                if d == 0 {
                    return Err(self.error_at(start, "accelerator needs d >= 1"));
                }
                Ok(MomentFunctional::accelerator(d))
            }
            "translate" | "dilate" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(',')?;
                let a = self.rational()?;
                self.expect(')')?;
                if name == "translate" {
                    Ok(inner.translate(a))
                } else {
                    self.lift(start, inner.dilate(a))
                }
            }
            "dilate_power" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(',')?;
                let r = self.rational()?;
                self.expect(',')?;
                let m = self.integer()?;
                self.expect(')')?;
                self.lift(start, inner.dilate_power(r, m))
            }
            "pow" | "ramify" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(',')?;
                let k = self.integer()?;
                self.expect(')')?;
                if name == "pow" {
                    self.lift(start, inner.power(k))
                } else {
                    self.lift(start, inner.ramify(k))
                }
            }
            "mix" => {
                self.expect('(')?;
                let mut terms = Vec::new();
                loop {
                    let negate = !terms.is_empty() && self.eat('-');
                    let w = self.rational()?;
                    self.expect('*')?;
                    let e = self.expr()?;
                    terms.push((if negate { -w } else { w }, e));
                    if self.eat(')') {
                        break;
                    }
                    if self.peek() != Some('-') {
                        self.expect('+')?;
                    }
                }
                self.lift(start, MomentFunctional::mix(terms))
            }
            "conv" => {
                self.expect('(')?;
                let mut factors = vec![self.expr()?];
                while self.eat(',') {
                    factors.push(self.expr()?);
                }
                self.expect(')')?;
                self.lift(start, MomentFunctional::convolve(factors))
            }
            "family" => {
                self.expect('(')?;
                let id = self.ident()?;
                let mut params = BTreeMap::new();
                while self.eat(',') {
                    self.skip_ws();
                    let at = self.pos;
                    let key = self.ident()?;
                    self.expect('=')?;
                    let value = if self.peek() == Some('[') {
                        Param::List(self.rational_list('[', ']')?)
                    } else {
                        Param::Scalar(self.rational()?)
                    };
                    if params.insert(key.clone(), value).is_some() {
                        return Err(self.error_at(at, format!("duplicate parameter {key:?}")));
                    }
                }
                self.expect(')')?;
                let family = self.lift(start, Family::from_params(&id, &params))?;
                self.lift(start, family.functional())
            }
            other => Err(self.error_at(start, format!("unknown functional {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::families::make_family;

    #[test]
    fn bernoulli_spec() {
        let s = parse_spec("sequence bern\ndelta = derivative\nfunctional = uniform01\nnmax = 6\n").unwrap();
        assert_eq!(s.name, "bern");
        assert_eq!(s.delta, DeltaDecl::Derivative);
        assert_eq!(s.nmax, 6);
        assert_eq!(s.truncation(), 10);
        assert_eq!(s.functional.moment(2).unwrap(), rat(1, 3));
    }

    #[test]
    fn functional_expressions() {
        let euler = parse_functional("mix(1/2*eval(0) + 1/2*eval(1))").unwrap();
        let want = make_family(Family::Euler).unwrap();
        for n in 0..8 {
            assert_eq!(euler.moment(n).unwrap(), want.spec.functional().moment(n).unwrap());
        }
        // third-order Bernoulli: indicator ((e^t-1)/t)^3
        let b3 = parse_functional("pow(uniform01, 3)").unwrap();
        let ind = MomentFunctional::uniform01().indicator_series(8).unwrap().pow(3);
        assert_eq!(b3.indicator_series(8).unwrap(), ind);
        let fam = parse_functional("family(strodt, w=[1/2, 1/2], x=[0, 1])").unwrap();
        assert_eq!(fam.moment(3).unwrap(), rat(1, 2));
        let neg = parse_functional("mix(3/2*eval(0) - 1/2*eval(1))").unwrap();
        assert_eq!(neg.moment(0).unwrap(), int(1));
        assert_eq!(neg.moment(1).unwrap(), rat(-1, 2));
    }

    #[test]
    fn round_trip_is_canonical() {
        let text = "# comment\n  sequence  odd_one \n delta=series [1,2]  # B̄ = t + t^2\nfunctional = translate( dilate(uniform01,2) , -1/3)\nnmax=5\ntruncation = 12\n";
        let a = parse_spec(text).unwrap();
        let once = format_spec(&a);
        let twice = format_spec(&parse_spec(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.contains("delta = series [1, 2]"));
        assert!(once.contains("truncation = 12"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_spec("sequence x\ndelta = derivative\ncolour = blue\n").unwrap_err();
        assert_eq!(e, perr(3, 1, "unknown key \"colour\""));
        let e = parse_spec("sequence x\ndelta = derivative\nfunctional = eval(1/)\nnmax = 3\n").unwrap_err();
        assert!(matches!(e, SpecError::Parse { line: 3, column: 19, .. }), "{e:?}");
        let e = parse_spec("sequence x\ndelta = derivative\nfunctional = bogus(1)\nnmax = 3\n").unwrap_err();
        assert!(matches!(e, SpecError::Parse { line: 3, column: 14, .. }), "{e:?}");
        let e = parse_spec("delta = derivative\n").unwrap_err();
        assert!(matches!(e, SpecError::Parse { line: 1, column: 1, .. }));
    }

    #[test]
    fn validation_errors() {
        let base = "sequence x\ndelta = derivative\nnmax = 3\n";
        let e = parse_spec(&format!("{base}functional = mix(1*eval(0) + -1*eval(1))\n")).unwrap_err();
        assert!(matches!(e, SpecError::Validation(_)), "{e:?}");
        let e = parse_spec("sequence x\ndelta = series [0, 1]\nfunctional = uniform01\nnmax = 3\n").unwrap_err();
        assert!(matches!(e, SpecError::Validation(_)), "{e:?}");
        let e = parse_spec("sequence x\ndelta = difference h=0\nfunctional = uniform01\nnmax = 3\n").unwrap_err();
        assert!(matches!(e, SpecError::Validation(_)), "{e:?}");
        let e = parse_spec("sequence x\ndelta = derivative\nfunctional = uniform01\n").unwrap_err();
        assert_eq!(e, SpecError::Validation("missing key \"nmax\"".into()));
        let e = parse_spec(&format!("{base}functional = family(kummer, a=1)\n")).unwrap_err();
        assert!(matches!(e, SpecError::Parse { .. }), "{e:?}");
    }
}
