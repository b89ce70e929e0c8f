//! Line-oriented space specifications.
//!
//! ```text
//! field p=2 k=1
//! form kind=alternating dim=4 sigma=0 epsilon=1
//! row 0 1 0 0
//! row 1 0 0 0
//! row 0 0 0 1
//! row 0 0 1 0
//! ```
//!
//! Rows hold the Gram matrix for sesquilinear kinds and the upper-triangular
//! matrix for `kind=quadratic`. Blank lines and `#` comments are ignored.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Elem, Field};
use crate::forms::{validate_admissible_pair, Form, FormError, FormKind, QuadraticForm, SesquilinearForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecKind {
    Alternating,
    Symmetric,
    Hermitian,
    Quadratic,
}

impl SpecKind {
    fn parse(s: &str) -> Option<SpecKind> {
        match s {
            "alternating" => Some(SpecKind::Alternating),
            "symmetric" => Some(SpecKind::Symmetric),
            "hermitian" => Some(SpecKind::Hermitian),
            "quadratic" => Some(SpecKind::Quadratic),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpecKind::Alternating => "alternating",
            SpecKind::Symmetric => "symmetric",
            SpecKind::Hermitian => "hermitian",
            SpecKind::Quadratic => "quadratic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceSpec {
    pub p: u32,
    pub k: u32,
    pub kind: SpecKind,
    pub dim: usize,
    /// Frobenius exponent; 0 for quadratic forms.
    pub sigma: u32,
    /// 1 for quadratic forms.
    pub epsilon: Elem,
    pub rows: Vec<Vec<Elem>>,
}

impl fmt::Display for SpaceSpec {
    /// The canonical text, which parses back to the same spec.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field p={} k={}", self.p, self.k)?;
        match self.kind {
            SpecKind::Quadratic => writeln!(f, "form kind=quadratic dim={}", self.dim)?,
            kind => writeln!(f, "form kind={} dim={} sigma={} epsilon={}", kind.name(), self.dim, self.sigma, self.epsilon)?,
        }
        for row in &self.rows {
            let codes: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "row {}", codes.join(" "))?;
        }
        Ok(())
    }
}

/// Where each parsed item came from, for error reporting.
struct Locations {
    field_line: usize,
    form_line: usize,
    /// `(line, column of each code)` per row.
    rows: Vec<(usize, Vec<usize>)>,
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { column: line[..s].chars().count() + 1, text: &line[s..i] });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// `key=value` pairs after the leading keyword.
fn key_values<'a>(line_no: usize, toks: &'a [Token<'a>], allowed: &[&str]) -> Result<Vec<(&'a str, &'a str, usize)>, ParseError> {
    let mut out: Vec<(&str, &str, usize)> = Vec::new();
    for t in &toks[1..] {
        let Some((k, v)) = t.text.split_once('=') else {
            return Err(err(line_no, t.column, format!("expected key=value, found `{}`", t.text)));
        };
        if !allowed.contains(&k) {
            return Err(err(line_no, t.column, format!("unknown key `{k}`")));
        }
        if out.iter().any(|(seen, _, _)| *seen == k) {
            return Err(err(line_no, t.column, format!("duplicate key `{k}`")));
        }
        out.push((k, v, t.column + k.len() + 1));
    }
    Ok(out)
}

fn number<T: std::str::FromStr>(line: usize, column: usize, key: &str, v: &str) -> Result<T, ParseError> {
    v.parse().map_err(|_| err(line, column, format!("invalid value for {key}: `{v}`")))
}

fn parse_located(text: &str) -> Result<(SpaceSpec, Locations), ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap_or(""))).filter(|(_, l)| !l.trim().is_empty());

    let Some((field_line, fl)) = lines.next() else {
        return Err(err(1, 1, "missing field block"));
    };
    let ft = tokens(fl);
    if ft[0].text != "field" {
        return Err(err(field_line, ft[0].column, "missing field block"));
    }
    let kv = key_values(field_line, &ft, &["p", "k"])?;
    let get = |key: &str| kv.iter().find(|(k, _, _)| *k == key).copied();
    let (_, pv, pc) = get("p").ok_or_else(|| err(field_line, 1, "field block needs p=<prime>"))?;
    let p: u32 = number(field_line, pc, "p", pv)?;
    let k: u32 = match get("k") {
        Some((_, v, c)) => number(field_line, c, "k", v)?,
        None => 1,
    };
    let field = Field::new(p, k).map_err(|e| err(field_line, pc, e.to_string()))?;
    let q = field.order();

    let Some((form_line, ml)) = lines.next() else {
        return Err(err(field_line + 1, 1, "missing form block"));
    };
    let mt = tokens(ml);
    if mt[0].text != "form" {
        return Err(err(form_line, mt[0].column, "missing form block"));
    }
    let kv = key_values(form_line, &mt, &["kind", "dim", "sigma", "epsilon"])?;
    let get = |key: &str| kv.iter().find(|(k, _, _)| *k == key).copied();
    let (_, kindv, kindc) = get("kind").ok_or_else(|| err(form_line, 1, "form block needs kind=<kind>"))?;
    let kind = SpecKind::parse(kindv).ok_or_else(|| err(form_line, kindc, format!("unknown kind `{kindv}`")))?;
    let (_, dimv, dimc) = get("dim").ok_or_else(|| err(form_line, 1, "form block needs dim=<n>"))?;
    let dim: usize = number(form_line, dimc, "dim", dimv)?;
    if dim == 0 || dim > 16 {
        return Err(err(form_line, dimc, format!("dim must be between 1 and 16, got {dim}")));
    }
    let default_sigma = if kind == SpecKind::Hermitian { k / 2 } else { 0 };
    let sigma: u32 = match get("sigma") {
        Some((_, v, c)) => {
            let s = number(form_line, c, "sigma", v)?;
            if s >= k {
                return Err(err(form_line, c, format!("sigma must be below k={k}")));
            }
            if kind == SpecKind::Quadratic && s != 0 {
                return Err(err(form_line, c, "quadratic forms take no sigma"));
            }
            s
        }
        None => default_sigma,
    };
    let default_epsilon = if kind == SpecKind::Alternating { field.neg(1) } else { 1 };
    let epsilon: Elem = match get("epsilon") {
        Some((_, v, c)) => {
            let e: u32 = number(form_line, c, "epsilon", v)?;
            let e = field.check(e).map_err(|x| err(form_line, c, x.to_string()))?;
            if kind == SpecKind::Quadratic && e != 1 {
                return Err(err(form_line, c, "quadratic forms take no epsilon"));
            }
            e
        }
        None => default_epsilon,
    };

    let mut rows = Vec::with_capacity(dim);
    let mut row_locs = Vec::with_capacity(dim);
    let mut last_line = form_line;
    for (line_no, l) in lines {
        last_line = line_no;
        let t = tokens(l);
        if t[0].text != "row" {
            return Err(err(line_no, t[0].column, format!("expected `row`, found `{}`", t[0].text)));
        }
        if rows.len() == dim {
            return Err(err(line_no, t[0].column, format!("too many rows: expected {dim}")));
        }
        if t.len() - 1 != dim {
            return Err(err(line_no, t[0].column, format!("row has {} entries, expected {dim}", t.len() - 1)));
        }
        let mut row = Vec::with_capacity(dim);
        for tok in &t[1..] {
            let code: u32 = tok.text.parse().map_err(|_| err(line_no, tok.column, format!("invalid element code `{}`", tok.text)))?;
            if code >= q {
                return Err(err(line_no, tok.column, format!("invalid element code {code} for GF({q})")));
            }
            row.push(code as Elem);
        }
        rows.push(row);
        row_locs.push((line_no, t[1..].iter().map(|t| t.column).collect()));
    }
    if rows.len() != dim {
        return Err(err(last_line + 1, 1, format!("expected {dim} rows, found {}", rows.len())));
    }
    let spec = SpaceSpec { p, k, kind, dim, sigma, epsilon, rows };
    Ok((spec, Locations { field_line, form_line, rows: row_locs }))
}

/// Parses and validates a spec, reporting form errors at the offending entry.
pub fn parse_spec(text: &str) -> Result<SpaceSpec, ParseError> {
    let (spec, loc) = parse_located(text)?;
    if let Err(e) = spec.form() {
        let at = |i: usize, j: usize| loc.rows.get(i).map(|(l, cols)| (*l, cols[j])).unwrap_or((loc.form_line, 1));
        let (line, column) = match &e {
            FormError::NotReflexive { i, j, .. } => at(*j, *i),
            FormError::AlternatingDiagonal(i) => at(*i, *i),
            FormError::BelowDiagonal { i, j } => at(*i, *j),
            FormError::Field(_) => (loc.field_line, 1),
            _ => (loc.form_line, 1),
        };
        return Err(err(line, column, e.to_string()));
    }
    Ok(spec)
}

impl SpaceSpec {
    pub fn field(&self) -> Result<Arc<Field>, FormError> {
        Ok(Arc::new(Field::new(self.p, self.k)?))
    }

    pub fn form(&self) -> Result<Form, FormError> {
        let field = self.field()?;
        let rows = self.rows.clone();
        Ok(match self.kind {
            SpecKind::Quadratic => QuadraticForm::new(field, rows)?.into(),
            kind => {
                let sigma = field.automorphism(self.sigma)?;
                let pair = validate_admissible_pair(&field, sigma, self.epsilon)?;
                let kind = match kind {
                    SpecKind::Alternating => FormKind::Alternating,
                    SpecKind::Symmetric => FormKind::Symmetric,
                    _ => FormKind::Hermitian,
                };
                SesquilinearForm::new(field, pair, rows, kind)?.into()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W32: &str = "field p=2 k=1\nform kind=alternating dim=4 sigma=0 epsilon=1\nrow 0 1 0 0\nrow 1 0 0 0\nrow 0 0 0 1\nrow 0 0 1 0\n";

    #[test]
    fn round_trip() {
        let s = parse_spec(W32).unwrap();
        assert_eq!(s.to_string(), W32);
        assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn defaults_and_comments() {
        let text = "# W(3,3)\nfield p=3 k=1\n\nform kind=alternating dim=4\nrow 0 1 0 0\nrow 2 0 0 0  # -1\nrow 0 0 0 1\nrow 0 0 2 0\n";
        let s = parse_spec(text).unwrap();
        assert_eq!((s.sigma, s.epsilon), (0, 2));
        let h = parse_spec("field p=2 k=2\nform kind=hermitian dim=2\nrow 1 0\nrow 0 1\n").unwrap();
        assert_eq!((h.sigma, h.epsilon), (1, 1));
    }

    #[test]
    fn errors_carry_locations() {
        assert_eq!(parse_spec("").unwrap_err(), err(1, 1, "missing field block"));
        assert_eq!(parse_spec("  \n# nothing\n").unwrap_err().message, "missing field block");
        let sub = "field p=2 k=1\nform kind=quadratic dim=2\nrow 0 1\nrow 1 0\n";
        let e = parse_spec(sub).unwrap_err();
        assert_eq!((e.line, e.column), (4, 5));
        assert!(e.message.contains("(1,0)"), "{}", e.message);
        let e = parse_spec("field p=2 k=1\nform kind=orthogonal dim=2\n").unwrap_err();
        assert_eq!((e.line, e.column, e.message.as_str()), (2, 11, "unknown kind `orthogonal`"));
        let e = parse_spec("field p=2 k=1\nform kind=symmetric dim=2\nrow 1 0\n").unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (4, "expected 2 rows, found 1"));
        let e = parse_spec("field p=2 k=1\nform kind=symmetric dim=2\nrow 1 2\nrow 0 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 7));
        let e = parse_spec("field p=2 k=1\nform kind=symmetric dim=2\nrow 0 1\nrow 0 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 5));
        let e = parse_spec("field p=6 k=1\n").unwrap_err();
        assert_eq!(e.line, 1);
    }
}
