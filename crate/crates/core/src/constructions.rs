//! Built-in representations and factories.
//!
//! Named fixtures are stored under `fixtures/` in the CLI file formats.

use crate::cli::repfile::{parse_rep_file, RepFile};
use crate::error::{Error, Result};
use crate::ffmatrix::{BilinearForm, FieldElem};
use crate::perm::{ElementBudget, Permutation};
use crate::sggi::SggiRep;

/// Name and file contents of every fixture.
pub const FIXTURES: &[(&str, &str)] = &[
    ("O4minus3", include_str!("../fixtures/O4minus3.rep")),
    ("O4plus4", include_str!("../fixtures/O4plus4.rep")),
    ("A11-rank6-1", include_str!("../fixtures/A11-rank6-1.cpr")),
    ("A11-rank6-2", include_str!("../fixtures/A11-rank6-2.cpr")),
    ("A11-rank6-3", include_str!("../fixtures/A11-rank6-3.cpr")),
    ("simplex6", include_str!("../fixtures/simplex6.rep")),
];

/// Registered names, with `simplex:<m>` standing for the whole family.
pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = FIXTURES.iter().map(|(n, _)| n.to_string()).collect();
    names.push("simplex:<m>".into());
    names
}

/// Fixture file text for a registered fixture name.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// The `(m−1)`-simplex: `ρ_i = (i+1, i+2)` in `Sym(m)`.
pub fn simplex_rep(m: usize) -> Result<SggiRep> {
    if m < 3 {
        return Err(Error::Invalid(format!("simplex needs m ≥ 3, got {m}")));
    }
    let gens = (0..m - 1)
        .map(|i| Permutation::from_cycles(m, &[vec![i + 1, i + 2]]))
        .collect::<Result<Vec<_>>>()?;
    Ok(SggiRep::from_permutations(m, gens)?.with_label(format!("simplex:{m}")))
}

/// Generators `signs[i] · τ(vectors[i])` for the form `form`. No sggi property is
/// assumed; verify the result separately.
pub fn reflection_rep(
    form: &BilinearForm,
    vectors: &[Vec<FieldElem>],
    signs: &[i8],
    budget: ElementBudget,
) -> Result<SggiRep> {
    if vectors.len() != signs.len() {
        return Err(Error::Invalid(format!(
            "{} vectors but {} signs",
            vectors.len(),
            signs.len()
        )));
    }
    let field = form.field();
    let gens = vectors
        .iter()
        .zip(signs)
        .map(|(v, &s)| {
            let r = form.reflection(v)?;
            Ok(match s {
                1 => r,
                -1 => r.scale(field.neg(1), field),
                other => return Err(Error::Invalid(format!("sign must be ±1, got {other}"))),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SggiRep::from_matrices(field.clone(), form.dim(), Some(form.clone()), gens, budget)
}

/// A registered representation by name.
pub fn builtin_example(name: &str) -> Result<SggiRep> {
    if let Some(m) = name.strip_prefix("simplex:") {
        let m: usize = m.parse().map_err(|_| Error::UnknownExample {
            name: name.to_string(),
            known: builtin_names().join(", "),
        })?;
        return simplex_rep(m);
    }
    if let Some(text) = builtin_source(name) {
        return Ok(match parse_rep_file(text, ElementBudget::default())? {
            RepFile::Rep(r) => r,
            RepFile::Cpr(g) => crate::cpr::cpr_to_rep(&g),
        });
    }
    Err(Error::UnknownExample {
        name: name.to_string(),
        known: builtin_names().join(", "),
    })
}
