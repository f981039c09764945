//! Line-oriented representation files.
//!
//! ```text
//! kind: permutation            kind: matrix                      kind: cpr
//! degree: 4                    field: 3                          nodes: 3
//! gen: (1,2)                   dim: 2                            rank: 2
//! gen: (2,3)(1,4)              form: [[1,0],[0,1]]               edge: 1 2 0
//!                              gen: [[2,0],[0,1]]                edge: 2 3 1
//! ```
//!
//! Every kind accepts an optional `label:` line, blank lines and `#` comments.
//! Extension fields are written `field: p^k`, optionally followed by
//! `modulus: c0,c1,...,ck` (low degree first, monic). Matrix entries are integers
//! over a prime field and coefficient lists `[c0,c1,...]` over an extension field;
//! a bare integer in an extension field denotes an element of the prime subfield.

use std::fmt::Write as _;

use serde_json::Value;

use crate::cpr::{cpr_emit, cpr_parse, strip_comment, CprGraph};
use crate::error::{Error, Result};
use crate::ffmatrix::{BilinearForm, FieldElem, FiniteField, Matrix};
use crate::perm::{ElementBudget, Permutation};
use crate::sggi::{Engine, SggiRep};

#[derive(Clone, Debug)]
pub enum RepFile {
    Rep(SggiRep),
    Cpr(CprGraph),
}

impl RepFile {
    pub fn kind(&self) -> &'static str {
        match self {
            RepFile::Rep(r) => r.engine().name(),
            RepFile::Cpr(_) => "cpr",
        }
    }

    /// The representation, converting a CPR graph to its permutation generators.
    pub fn into_rep(self) -> SggiRep {
        match self {
            RepFile::Rep(r) => r,
            RepFile::Cpr(g) => crate::cpr::cpr_to_rep(&g),
        }
    }
}

/// Parses any of the three kinds. `budget` caps the vector domain of matrix files.
pub fn parse_rep_file(text: &str, budget: ElementBudget) -> Result<RepFile> {
    let lines = tokenize(text)?;
    let Some(kind) = lines.iter().find(|l| l.key == "kind") else {
        return Err(Error::Parse {
            line: 1,
            msg: "missing 'kind:' line".into(),
        });
    };
    match kind.value.as_str() {
        "permutation" => parse_permutation(&lines).map(RepFile::Rep),
        "matrix" => parse_matrix(&lines, budget).map(RepFile::Rep),
        "cpr" => cpr_parse(text).map(RepFile::Cpr),
        other => Err(Error::Parse {
            line: kind.line,
            msg: format!("unknown kind {other:?} (expected permutation, matrix or cpr)"),
        }),
    }
}

/// Canonical text; parsing it back yields an identical file.
pub fn emit_rep_file(file: &RepFile) -> String {
    match file {
        RepFile::Cpr(g) => cpr_emit(g),
        RepFile::Rep(rep) => emit_rep(rep),
    }
}

pub fn emit_rep(rep: &SggiRep) -> String {
    let mut out = String::new();
    match rep.engine() {
        Engine::Permutation => {
            out.push_str("kind: permutation\n");
            if let Some(l) = rep.label() {
                writeln!(out, "label: {l}").unwrap();
            }
            writeln!(out, "degree: {}", rep.degree()).unwrap();
            for g in rep.generators() {
                writeln!(out, "gen: {}", g.to_cycle_string()).unwrap();
            }
        }
        Engine::Matrix(me) => {
            out.push_str("kind: matrix\n");
            if let Some(l) = rep.label() {
                writeln!(out, "label: {l}").unwrap();
            }
            let f = &me.field;
            if f.degree() == 1 {
                writeln!(out, "field: {}", f.characteristic()).unwrap();
            } else {
                let m: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
                writeln!(out, "field: {}^{} modulus: {}", f.characteristic(), f.degree(), m.join(",")).unwrap();
            }
            writeln!(out, "dim: {}", me.dim).unwrap();
            if let Some(form) = &me.form {
                writeln!(out, "form: {}", matrix_text(form.gram(), f)).unwrap();
            }
            for g in &me.gens {
                writeln!(out, "gen: {}", matrix_text(g, f)).unwrap();
            }
        }
    }
    out
}

pub fn matrix_text(m: &Matrix, field: &FiniteField) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|&e| elem_text(e, field)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn elem_text(e: FieldElem, field: &FiniteField) -> String {
    if field.degree() == 1 {
        e.to_string()
    } else {
        let c: Vec<String> = field.coeffs(e).iter().map(|x| x.to_string()).collect();
        format!("[{}]", c.join(","))
    }
}

struct Line {
    line: usize,
    key: String,
    value: String,
}

fn tokenize(text: &str) -> Result<Vec<Line>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once(':') else {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 'key: value', found {line:?}"),
            });
        };
        out.push(Line {
            line: idx + 1,
            key: k.trim().to_string(),
            value: v.trim().to_string(),
        });
    }
    Ok(out)
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_permutation(lines: &[Line]) -> Result<SggiRep> {
    let mut degree = None;
    let mut label = None;
    let mut gens = Vec::new();
    for l in lines {
        match l.key.as_str() {
            "kind" => {}
            "label" => label = Some(l.value.clone()),
            "degree" => {
                let d: usize = l
                    .value
                    .parse()
                    .map_err(|_| parse_err(l.line, format!("bad degree {:?}", l.value)))?;
                if d == 0 {
                    return Err(parse_err(l.line, "degree must be positive"));
                }
                degree = Some(d);
            }
            "gen" => {
                let d = degree.ok_or_else(|| parse_err(l.line, "'degree' must precede generators"))?;
                let p = Permutation::parse_cycles(d, &l.value)
                    .map_err(|e| parse_err(l.line, e.to_string()))?;
                gens.push(p);
            }
            other => return Err(parse_err(l.line, format!("unknown key {other:?}"))),
        }
    }
    let degree = degree.ok_or_else(|| parse_err(1, "missing 'degree:' line"))?;
    let rep = SggiRep::from_permutations(degree, gens)?;
    Ok(match label {
        Some(l) => rep.with_label(l),
        None => rep,
    })
}

fn parse_field(line: usize, value: &str) -> Result<FiniteField> {
    let (field_decl, modulus) = match value.split_once("modulus:") {
        Some((s, m)) => (s.trim(), Some(m.trim())),
        None => (value.trim(), None),
    };
    let (p, k) = match field_decl.split_once('^') {
        Some((p, k)) => (p.trim(), k.trim()),
        None => (field_decl, "1"),
    };
    let p: u32 = p.parse().map_err(|_| parse_err(line, format!("bad characteristic {p:?}")))?;
    let k: u32 = k.parse().map_err(|_| parse_err(line, format!("bad extension degree {k:?}")))?;
    let modulus = modulus
        .map(|m| {
            m.split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| parse_err(line, format!("bad modulus {m:?}")))
        })
        .transpose()?;
    FiniteField::new(p, k, modulus).map_err(|e| parse_err(line, e.to_string()))
}

fn parse_matrix_value(line: usize, text: &str, field: &FiniteField, dim: usize) -> Result<Matrix> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| parse_err(line, format!("bad matrix {text:?}: {e}")))?;
    let Value::Array(rows) = value else {
        return Err(parse_err(line, "matrix must be a list of rows"));
    };
    if rows.len() != dim {
        return Err(parse_err(line, format!("expected {dim} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(dim);
    for row in rows {
        let Value::Array(cells) = row else {
            return Err(parse_err(line, "each row must be a list"));
        };
        if cells.len() != dim {
            return Err(parse_err(line, format!("expected {dim} entries per row, found {}", cells.len())));
        }
        let parsed = cells
            .iter()
            .map(|c| parse_entry(line, c, field))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Matrix::from_rows(field, out).map_err(|e| parse_err(line, e.to_string()))
}

fn parse_entry(line: usize, cell: &Value, field: &FiniteField) -> Result<FieldElem> {
    match cell {
        Value::Number(n) => n
            .as_i64()
            .map(|x| field.from_int(x))
            .ok_or_else(|| parse_err(line, format!("bad entry {n}"))),
        Value::Array(coeffs) if field.degree() > 1 => {
            if coeffs.len() > field.degree() as usize {
                return Err(parse_err(
                    line,
                    format!("coefficient list longer than the extension degree {}", field.degree()),
                ));
            }
            let cs = coeffs
                .iter()
                .map(|c| {
                    c.as_i64()
                        .map(|x| field.from_int(x))
                        .ok_or_else(|| parse_err(line, format!("bad coefficient {c}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(field.from_coeffs(&cs))
        }
        other => Err(parse_err(line, format!("bad entry {other}"))),
    }
}

fn parse_matrix(lines: &[Line], budget: ElementBudget) -> Result<SggiRep> {
    let mut label = None;
    let mut field = None;
    let mut dim = None;
    let mut form = None;
    let mut gens = Vec::new();
    for l in lines {
        match l.key.as_str() {
            "kind" => {}
            "label" => label = Some(l.value.clone()),
            "field" => field = Some(parse_field(l.line, &l.value)?),
            "dim" => {
                let d: usize = l
                    .value
                    .parse()
                    .map_err(|_| parse_err(l.line, format!("bad dimension {:?}", l.value)))?;
                if d == 0 {
                    return Err(parse_err(l.line, "dimension must be positive"));
                }
                dim = Some(d);
            }
            "form" | "gen" => {
                let (Some(f), Some(d)) = (&field, dim) else {
                    return Err(parse_err(l.line, "'field' and 'dim' must precede forms and generators"));
                };
                let m = parse_matrix_value(l.line, &l.value, f, d)?;
                if l.key == "form" {
                    form = Some(BilinearForm::new(f.clone(), m).map_err(|e| parse_err(l.line, e.to_string()))?);
                } else {
                    if !m.is_invertible(f) {
                        return Err(parse_err(l.line, "generator matrix is singular"));
                    }
                    gens.push(m);
                }
            }
            other => return Err(parse_err(l.line, format!("unknown key {other:?}"))),
        }
    }
    let field = field.ok_or_else(|| parse_err(1, "missing 'field:' line"))?;
    let dim = dim.ok_or_else(|| parse_err(1, "missing 'dim:' line"))?;
    let rep = SggiRep::from_matrices(field, dim, form, gens, budget)?;
    Ok(match label {
        Some(l) => rep.with_label(l),
        None => rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_round_trip() {
        let text = "kind: permutation\nlabel: s4\ndegree: 4\ngen: (1 2)\ngen: (2,3)\ngen: ()\n";
        let f = parse_rep_file(text, ElementBudget::default()).unwrap();
        let emitted = emit_rep_file(&f);
        assert_eq!(emitted, "kind: permutation\nlabel: s4\ndegree: 4\ngen: (1,2)\ngen: (2,3)\ngen: ()\n");
        let again = parse_rep_file(&emitted, ElementBudget::default()).unwrap();
        assert_eq!(emit_rep_file(&again), emitted);
    }

    #[test]
    fn extension_field_round_trip() {
        let text = "kind: matrix\nfield: 2^2\ndim: 2\ngen: [[[0,1],0],[0,[1,1]]]\n";
        let f = parse_rep_file(text, ElementBudget::default()).unwrap();
        let emitted = emit_rep_file(&f);
        assert_eq!(
            emitted,
            "kind: matrix\nfield: 2^2 modulus: 1,1,1\ndim: 2\ngen: [[[0,1],[0,0]],[[0,0],[1,1]]]\n"
        );
        assert_eq!(emit_rep_file(&parse_rep_file(&emitted, ElementBudget::default()).unwrap()), emitted);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let b = ElementBudget::default();
        let e = parse_rep_file("kind: permutation\ndegree: 3\ngen: (1 5)\n", b).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_rep_file("kind: matrix\nfield: 3\ndim: 2\ngen: [[1,1],[1,1]]\n", b).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = parse_rep_file("kind: matrix\nfield: 4\ndim: 2\n", b).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(parse_rep_file("degree: 3\n", b).is_err());
        assert!(parse_rep_file("kind: polytope\n", b).is_err());
        let e = parse_rep_file("kind: permutation\ndegree: 3\nweird line\n", b).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn matrix_domain_respects_budget() {
        let text = "kind: matrix\nfield: 3\ndim: 4\ngen: [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]\n";
        assert!(matches!(
            parse_rep_file(text, ElementBudget::new(50).unwrap()),
            Err(Error::DomainTooLarge { size: 80, cap: 50 })
        ));
    }
}
