//! The line-oriented `.jja` text format for algebras.
//!
//! ```text
//! # comment
//! field Fp 5
//! dim 3
//! basis e f z
//! mul e f = z
//! mul f e = z
//! ```
//!
//! Products that are not listed are zero. Both orders of a product must be
//! given unless the reader is asked to symmetrize, so that non-commutative
//! inputs stay detectable.

use crate::algebra::{default_names, format_terms, Algebra};
use crate::crossed::{BilinearVMap, CrossedData};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{zero_vector, Matrix};
use crate::modrep::ActionData;

/// Version written into the header comment of printed files.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Fill in `y·x` from a listed `x·y` when only one order is present.
    pub symmetrize: bool,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn locate(err: Error, line: usize, column: usize) -> Error {
    match err {
        Error::Parse { message, .. } => Error::Parse { line, column, message },
        other => other,
    }
}

pub fn parse_algebra(text: &str, options: ParseOptions) -> Result<Algebra> {
    let mut field: Option<FieldSpec> = None;
    let mut dim: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut muls: Vec<(usize, Vec<Token<'_>>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split_once('#').map_or(raw, |(c, _)| c);
        let toks = tokens(content);
        let Some(first) = toks.first() else { continue };
        let duplicate = || parse_err(line_no, first.column, format!("duplicate `{}` line", first.text));
        match first.text {
            "field" => {
                if field.is_some() {
                    return Err(duplicate());
                }
                field = Some(match toks.get(1).map(|t| t.text) {
                    Some("Q") if toks.len() == 2 => FieldSpec::Rationals,
                    Some("Fp") if toks.len() == 3 => {
                        let p: u64 = toks[2]
                            .text
                            .parse()
                            .map_err(|_| parse_err(line_no, toks[2].column, "modulus must be a positive integer"))?;
                        FieldSpec::prime(p)?
                    }
                    _ => return Err(parse_err(line_no, first.column, "expected `field Q` or `field Fp <p>`")),
                });
            }
            "dim" => {
                if dim.is_some() {
                    return Err(duplicate());
                }
                if toks.len() != 2 {
                    return Err(parse_err(line_no, first.column, "expected `dim <n>`"));
                }
                dim = Some(
                    toks[1]
                        .text
                        .parse()
                        .map_err(|_| parse_err(line_no, toks[1].column, "dimension must be a non-negative integer"))?,
                );
            }
            "basis" => {
                if names.is_some() {
                    return Err(duplicate());
                }
                let mut listed: Vec<String> = Vec::new();
                for t in &toks[1..] {
                    if !is_name(t.text) {
                        return Err(parse_err(line_no, t.column, format!("invalid basis name `{}`", t.text)));
                    }
                    if listed.iter().any(|n| n == t.text) {
                        return Err(parse_err(line_no, t.column, format!("repeated basis name `{}`", t.text)));
                    }
                    listed.push(t.text.to_string());
                }
                names = Some(listed);
            }
            "mul" => muls.push((line_no, toks)),
            other => {
                return Err(parse_err(line_no, first.column, format!("unknown directive `{other}`")));
            }
        }
    }
    let field = field.ok_or_else(|| parse_err(0, 0, "missing `field` line"))?;
    let dim = dim.ok_or_else(|| parse_err(0, 0, "missing `dim` line"))?;
    let names = match names {
        Some(n) if n.len() != dim => {
            return Err(parse_err(0, 0, format!("basis lists {} names but dim is {dim}", n.len())));
        }
        Some(n) => n,
        None => default_names("b", dim),
    };
    let mut algebra = Algebra::abelian(field, names);
    let mut listed = vec![false; dim * dim];
    for (line_no, toks) in &muls {
        let (i, j, value) = parse_mul(&algebra, *line_no, toks)?;
        if listed[i * dim + j] {
            return Err(parse_err(*line_no, toks[0].column, "product listed twice"));
        }
        listed[i * dim + j] = true;
        algebra.set_product(i, j, value);
    }
    if options.symmetrize {
        for i in 0..dim {
            for j in 0..dim {
                if listed[i * dim + j] && !listed[j * dim + i] {
                    let v = algebra.product(i, j).to_vec();
                    algebra.set_product(j, i, v);
                }
            }
        }
    }
    Ok(algebra)
}

fn parse_mul(a: &Algebra, line: usize, toks: &[Token<'_>]) -> Result<(usize, usize, Vec<Scalar>)> {
    parse_product_line(a.field(), a.names(), a.names(), line, toks)
}

fn lookup_name(names: &[String], line: usize, name: &str, column: usize) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnknownBasisName { line, column, name: name.to_string() })
}

/// `<kw> <x> <y> = <terms>` with operands from `operands` and terms over `targets`.
fn parse_product_line(
    field: FieldSpec,
    operands: &[String],
    targets: &[String],
    line: usize,
    toks: &[Token<'_>],
) -> Result<(usize, usize, Vec<Scalar>)> {
    if toks.len() < 5 || toks[3].text != "=" {
        let col = toks.get(3).map_or(toks[0].column, |t| t.column);
        return Err(parse_err(line, col, format!("expected `{} <x> <y> = <terms>`", toks[0].text)));
    }
    let i = lookup_name(operands, line, toks[1].text, toks[1].column)?;
    let j = lookup_name(operands, line, toks[2].text, toks[2].column)?;
    let value = parse_term_tokens(field, targets, line, &toks[4..], toks[3].column)?;
    Ok((i, j, value))
}

fn parse_term_tokens(field: FieldSpec, targets: &[String], line: usize, rest: &[Token<'_>], start_column: usize) -> Result<Vec<Scalar>> {
    let mut value = zero_vector(field, targets.len());
    let mut expect_term = true;
    for t in rest {
        if expect_term {
            let (coeff, name) = match t.text.rsplit_once('*') {
                Some((c, n)) => (field.parse_scalar(c).map_err(|e| locate(e, line, t.column))?, n),
                None => (field.one(), t.text),
            };
            let k = lookup_name(targets, line, name, t.column + t.text.len() - name.len())?;
            value[k] += &coeff;
            expect_term = false;
        } else if t.text == "+" {
            expect_term = true;
        } else {
            return Err(parse_err(line, t.column, format!("expected `+`, found `{}`", t.text)));
        }
    }
    if expect_term {
        let last = rest.last().map_or(start_column, |t| t.column);
        return Err(parse_err(line, last, "dangling `+`"));
    }
    Ok(value)
}

/// Parses a vector written as `2*z + e` over the given basis names.
pub fn parse_terms(field: FieldSpec, names: &[String], text: &str) -> Result<Vec<Scalar>> {
    parse_term_tokens(field, names, 1, &tokens(text), 1)
}

/// Canonical text: header, then every nonzero product in index order.
pub fn print_algebra(a: &Algebra) -> String {
    let mut out = format!("# jja format {FORMAT_VERSION}\nfield {}\ndim {}\n", a.field(), a.dim());
    if a.dim() > 0 {
        out.push_str(&format!("basis {}\n", a.names().join(" ")));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let v = a.product(i, j);
            if !v.iter().all(Scalar::is_zero) {
                out.push_str(&format!("mul {} {} = {}\n", a.names()[i], a.names()[j], format_terms(a.names(), v)));
            }
        }
    }
    out
}

/// Reads the `.jjx` crossed-data format:
///
/// ```text
/// base h3.jja        # resolved by the caller
/// fiber 2 u v        # dimension, then optional names (default v1 … vm)
/// act e = 0,1;0,0    # matrix of x ↦ e▷x on the fiber; unlisted means zero
/// theta e f = u + 2*v
/// theta f e = u + 2*v
/// vmul u u = v
/// ```
///
/// As with `.jja`, `theta` and `vmul` are taken literally in both orders.
pub fn parse_crossed(text: &str, resolve_base: impl Fn(&str) -> Result<Algebra>) -> Result<CrossedData> {
    let mut base: Option<Algebra> = None;
    let mut fiber: Option<Vec<String>> = None;
    let mut rest: Vec<(usize, Vec<Token<'_>>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split_once('#').map_or(raw, |(c, _)| c);
        let toks = tokens(content);
        let Some(first) = toks.first() else { continue };
        match first.text {
            "base" => {
                if base.is_some() || toks.len() != 2 {
                    return Err(parse_err(line_no, first.column, "expected a single `base <file>` line"));
                }
                base = Some(resolve_base(toks[1].text)?);
            }
            "fiber" => {
                if fiber.is_some() || toks.len() < 2 {
                    return Err(parse_err(line_no, first.column, "expected a single `fiber <m> [names]` line"));
                }
                let m: usize = toks[1]
                    .text
                    .parse()
                    .map_err(|_| parse_err(line_no, toks[1].column, "fiber dimension must be an integer"))?;
                let names: Vec<String> = if toks.len() == 2 {
                    default_names("v", m)
                } else {
                    toks[2..].iter().map(|t| t.text.to_string()).collect()
                };
                if names.len() != m || names.iter().any(|n| !is_name(n)) {
                    return Err(parse_err(line_no, first.column, "fiber names must be valid and match the dimension"));
                }
                fiber = Some(names);
            }
            "act" | "theta" | "vmul" => rest.push((line_no, toks)),
            other => return Err(parse_err(line_no, first.column, format!("unknown directive `{other}`"))),
        }
    }
    let base = base.ok_or_else(|| parse_err(0, 0, "missing `base` line"))?;
    let fiber = fiber.ok_or_else(|| parse_err(0, 0, "missing `fiber` line"))?;
    let field = base.field();
    let (n, m) = (base.dim(), fiber.len());
    let mut rho = vec![Matrix::zeros(field, m, m); n];
    let mut rho_seen = vec![false; n];
    let mut theta = BilinearVMap::zero(field, n, m);
    let mut theta_seen = vec![false; n * n];
    let mut vmul = Algebra::abelian(field, fiber.clone());
    let mut vmul_seen = vec![false; m * m];
    for (line, toks) in &rest {
        let line = *line;
        let twice = || parse_err(line, toks[0].column, "entry listed twice");
        match toks[0].text {
            "act" => {
                if toks.len() != 4 || toks[2].text != "=" {
                    return Err(parse_err(line, toks[0].column, "expected `act <x> = <matrix>`"));
                }
                let i = lookup_name(base.names(), line, toks[1].text, toks[1].column)?;
                let mat = parse_matrix(field, toks[3].text).map_err(|e| locate(e, line, toks[3].column))?;
                if mat.rows() != m || mat.cols() != m {
                    return Err(parse_err(line, toks[3].column, format!("action matrix must be {m}x{m}")));
                }
                if std::mem::replace(&mut rho_seen[i], true) {
                    return Err(twice());
                }
                rho[i] = mat;
            }
            "theta" => {
                let (i, j, v) = parse_product_line(field, base.names(), &fiber, line, toks)?;
                if std::mem::replace(&mut theta_seen[i * n + j], true) {
                    return Err(twice());
                }
                theta.set(i, j, v);
            }
            _ => {
                let (i, j, v) = parse_product_line(field, &fiber, &fiber, line, toks)?;
                if std::mem::replace(&mut vmul_seen[i * m + j], true) {
                    return Err(twice());
                }
                vmul.set_product(i, j, v);
            }
        }
    }
    let action = ActionData { base: base.clone(), space_dim: m, rho };
    CrossedData::new(base, action, theta, vmul)
}

/// Canonical `.jjx` text with `base_ref` written on the `base` line.
pub fn print_crossed(d: &CrossedData, base_ref: &str) -> String {
    let fiber = d.fiber_mult.names();
    let mut out = format!("# jjx format {FORMAT_VERSION}\nbase {base_ref}\nfiber {}", d.fiber_dim);
    for name in fiber {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    let names = d.base.names();
    for (i, r) in d.action.rho.iter().enumerate() {
        if !r.is_zero() {
            out.push_str(&format!("act {} = {}\n", names[i], format_matrix(r)));
        }
    }
    for i in 0..d.base.dim() {
        for j in 0..d.base.dim() {
            let v = d.cocycle.get(i, j);
            if !v.iter().all(Scalar::is_zero) {
                out.push_str(&format!("theta {} {} = {}\n", names[i], names[j], format_terms(fiber, v)));
            }
        }
    }
    for i in 0..d.fiber_dim {
        for j in 0..d.fiber_dim {
            let v = d.fiber_mult.product(i, j);
            if !v.iter().all(Scalar::is_zero) {
                out.push_str(&format!("vmul {} {} = {}\n", fiber[i], fiber[j], format_terms(fiber, v)));
            }
        }
    }
    out
}

/// Parses `1,2;3,4` (rows separated by `;`, entries by `,`).
pub fn parse_matrix(field: FieldSpec, text: &str) -> Result<Matrix> {
    let rows: Vec<Vec<Scalar>> = text
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| parse_vector(field, r))
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(field, 0, 0));
    }
    Matrix::from_rows(field, rows)
}

/// Parses `1,0,2`; an empty string is the empty vector.
pub fn parse_vector(field: FieldSpec, text: &str) -> Result<Vec<Scalar>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| field.parse_scalar(s)).collect()
}

pub fn format_matrix(m: &Matrix) -> String {
    (0..m.rows()).map(|r| format_vector(m.row(r))).collect::<Vec<_>>().join(";")
}

pub fn format_vector(v: &[Scalar]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}
