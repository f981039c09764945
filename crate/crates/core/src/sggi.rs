//! String groups generated by involutions and the intersection property.
//!
//! Every representation carries permutation generators. Matrix representations
//! additionally keep their matrices and the vector domain used for the
//! conversion, so derived representations (reversals, reductions) stay matrices.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffmatrix::{matrix_rep_to_perm, BilinearForm, FiniteField, Matrix, VectorDomain};
use crate::perm::{ElementBudget, PermGroup, Permutation, DEFAULT_SEED};

/// Largest group order accepted by [`search_reps`].
pub const SEARCH_BOUND: u64 = 2_000;

/// Matrix-side data of a representation.
#[derive(Clone, Debug)]
pub struct MatrixEngine {
    pub field: FiniteField,
    pub dim: usize,
    pub form: Option<BilinearForm>,
    pub gens: Vec<Matrix>,
    pub domain: VectorDomain,
}

#[derive(Clone, Debug)]
pub enum Engine {
    Permutation,
    Matrix(MatrixEngine),
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::Permutation => "permutation",
            Engine::Matrix(_) => "matrix",
        }
    }
}

/// An ordered generator sequence `ρ0, …, ρ_{n−1}`.
#[derive(Clone, Debug)]
pub struct SggiRep {
    label: Option<String>,
    degree: usize,
    perms: Vec<Permutation>,
    engine: Engine,
}

impl SggiRep {
    pub fn from_permutations(degree: usize, perms: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for p in &perms {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(degree, p.degree()));
            }
        }
        Ok(Self {
            label: None,
            degree,
            perms,
            engine: Engine::Permutation,
        })
    }

    /// Matrix generators, converted to permutations of the nonzero vectors.
    pub fn from_matrices(
        field: FiniteField,
        dim: usize,
        form: Option<BilinearForm>,
        gens: Vec<Matrix>,
        budget: ElementBudget,
    ) -> Result<Self> {
        for m in &gens {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
        }
        if let Some(f) = &form {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.dim(),
                });
            }
        }
        let (perms, domain) = matrix_rep_to_perm(&field, dim, &gens, budget)?;
        Ok(Self {
            label: None,
            degree: domain.size() as usize,
            perms,
            engine: Engine::Matrix(MatrixEngine {
                field,
                dim,
                form,
                gens,
                domain,
            }),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.perms.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.perms.clone()).expect("degrees checked at construction")
    }

    pub fn subgroup(&self, indices: &[usize]) -> PermGroup {
        let gens = indices.iter().map(|&i| self.perms[i].clone()).collect();
        PermGroup::new(self.degree, gens).expect("degrees checked at construction")
    }

    /// New representation whose `k`-th generator is the product, left to right, of the
    /// generators listed in `words[k]`.
    pub fn derive(&self, words: &[Vec<usize>]) -> Self {
        let perms = words
            .iter()
            .map(|w| {
                w.iter().fold(Permutation::identity(self.degree), |acc, &i| {
                    acc.compose_unchecked(&self.perms[i])
                })
            })
            .collect();
        let engine = match &self.engine {
            Engine::Permutation => Engine::Permutation,
            Engine::Matrix(me) => Engine::Matrix(MatrixEngine {
                gens: words
                    .iter()
                    .map(|w| {
                        w.iter().fold(Matrix::identity(me.dim), |acc, &i| {
                            acc.mul(&me.gens[i], &me.field).expect("dimensions agree")
                        })
                    })
                    .collect(),
                ..me.clone()
            }),
        };
        Self {
            label: self.label.clone(),
            degree: self.degree,
            perms,
            engine,
        }
    }

    /// `(ρ_{n−1}, …, ρ0)`.
    pub fn reversed(&self) -> Self {
        let words: Vec<Vec<usize>> = (0..self.rank()).rev().map(|i| vec![i]).collect();
        self.derive(&words)
    }

    /// The sub-sggi on the listed generators, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let words: Vec<Vec<usize>> = indices.iter().map(|&i| vec![i]).collect();
        self.derive(&words)
    }

    /// Relabels points by `c`: every generator becomes `c⁻¹ρc`. The result is a
    /// permutation representation.
    pub fn conjugated(&self, c: &Permutation) -> Result<Self> {
        let perms = self
            .perms
            .iter()
            .map(|p| p.conjugate_by(c))
            .collect::<Result<Vec<_>>>()?;
        let mut rep = Self::from_permutations(self.degree, perms)?;
        rep.label = self.label.clone();
        Ok(rep)
    }
}

/// Orders `[p1, …, p_{n−1}]` of consecutive generator products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SchlafliType(pub Vec<u64>);

impl SchlafliType {
    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for SchlafliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    #[default]
    Recursive,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "recursive" => Ok(Method::Recursive),
            other => Err(Error::Invalid(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub method: Method,
    pub budget: ElementBudget,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            method: Method::Recursive,
            budget: ElementBudget::default(),
            seed: DEFAULT_SEED,
        }
    }
}

impl VerifyOptions {
    pub fn with_method(method: Method) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }
}

/// Why a representation failed a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    IdentityGenerator {
        index: usize,
    },
    NotInvolution {
        index: usize,
    },
    NonCommuting {
        i: usize,
        j: usize,
    },
    /// `element ∈ ⟨ρ_i : i∈left⟩ ∩ ⟨ρ_j : j∈right⟩` but not in `⟨ρ_k : k ∈ left∩right⟩`.
    Intersection {
        left: Vec<usize>,
        right: Vec<usize>,
        #[serde(serialize_with = "ser_perm")]
        element: Permutation,
    },
}

fn ser_perm<S: Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_cycle_string())
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::IdentityGenerator { index } => write!(f, "generator {index} is the identity"),
            Witness::NotInvolution { index } => write!(f, "generator {index} is not an involution"),
            Witness::NonCommuting { i, j } => {
                write!(f, "generators {i} and {j} are not adjacent but do not commute")
            }
            Witness::Intersection {
                left,
                right,
                element,
            } => write!(
                f,
                "I={left:?}, J={right:?}: {element} lies in both subgroups but not in the subgroup on I∩J"
            ),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub rank: usize,
    pub is_sggi: bool,
    pub pair_order_table: Vec<Vec<u64>>,
    pub is_irreducible: bool,
    pub schlafli: SchlafliType,
    pub is_string_c_group: bool,
    pub method: Option<Method>,
    /// Order of the generated group, decimal.
    pub group_order: Option<String>,
    pub failure_witness: Option<Witness>,
}

/// Involution and commuting checks; leaves `is_string_c_group` false and `method` empty.
pub fn check_sggi(rep: &SggiRep) -> VerificationReport {
    let n = rep.rank();
    let g = rep.generators();
    let mut table = vec![vec![1u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                table[i][j] = g[i].compose_unchecked(&g[j]).order();
            }
        }
    }
    let mut witness = None;
    for (index, p) in g.iter().enumerate() {
        if p.is_identity() {
            witness = Some(Witness::IdentityGenerator { index });
            break;
        }
        if !p.is_involution() {
            witness = Some(Witness::NotInvolution { index });
            break;
        }
    }
    if witness.is_none() {
        witness = (0..n)
            .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
            .find(|&(i, j)| table[i][j] > 2)
            .map(|(i, j)| Witness::NonCommuting { i, j });
    }
    let schlafli = SchlafliType((1..n).map(|i| table[i - 1][i]).collect());
    let is_sggi = witness.is_none();
    VerificationReport {
        rank: n,
        is_sggi,
        is_irreducible: is_sggi && schlafli.0.iter().all(|&p| p > 2),
        pair_order_table: table,
        schlafli,
        is_string_c_group: false,
        method: None,
        group_order: None,
        failure_witness: witness,
    }
}

pub fn schlafli_type(rep: &SggiRep) -> Result<SchlafliType> {
    let report = check_sggi(rep);
    if !report.is_sggi {
        return Err(not_sggi(&report));
    }
    Ok(report.schlafli)
}

pub fn is_irreducible(rep: &SggiRep) -> Result<bool> {
    let report = check_sggi(rep);
    if !report.is_sggi {
        return Err(not_sggi(&report));
    }
    Ok(report.is_irreducible)
}

fn not_sggi(report: &VerificationReport) -> Error {
    Error::NotSggi(
        report
            .failure_witness
            .as_ref()
            .map(|w| w.to_string())
            .unwrap_or_default(),
    )
}

/// Full verification: sggi checks, then the intersection property by the chosen method.
pub fn verify(rep: &SggiRep, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = check_sggi(rep);
    report.method = Some(opts.method);
    let n = rep.rank();
    let masks: Vec<u64> = match opts.method {
        Method::Exhaustive if n <= 20 => (0..=full_mask(n)).collect(),
        _ => (0..n)
            .flat_map(|lo| (lo..=n).map(move |hi| interval_mask(lo, hi)))
            .collect(),
    };
    let parabolics = Parabolics::new(rep, opts.seed, masks);
    report.group_order = Some(parabolics.get(full_mask(n)).order().to_string());
    if !report.is_sggi {
        return Ok(report);
    }
    let witness = match opts.method {
        Method::Exhaustive => exhaustive(&parabolics, opts.budget)?,
        Method::Recursive => Recursive::new(&parabolics, opts.budget).check(0, rep.rank())?,
    };
    report.is_string_c_group = witness.is_none();
    report.failure_witness = witness;
    Ok(report)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn interval_mask(lo: usize, hi: usize) -> u64 {
    (lo..hi).fold(0u64, |m, i| m | 1 << i)
}

fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Subgroups generated by subsets of the generators, built on first use.
struct Parabolics<'a> {
    rep: &'a SggiRep,
    seed: u64,
    cache: HashMap<u64, OnceLock<PermGroup>>,
}

impl<'a> Parabolics<'a> {
    fn new(rep: &'a SggiRep, seed: u64, masks: impl IntoIterator<Item = u64>) -> Self {
        Self {
            rep,
            seed,
            cache: masks.into_iter().map(|m| (m, OnceLock::new())).collect(),
        }
    }

    fn get(&self, mask: u64) -> PermGroup {
        match self.cache.get(&mask) {
            Some(cell) => cell.get_or_init(|| self.build(mask)).clone(),
            None => self.build(mask),
        }
    }

    fn build(&self, mask: u64) -> PermGroup {
        let g = self.rep.subgroup(&mask_indices(mask)).with_seed(self.seed);
        g.bsgs();
        g
    }
}

/// Checks `⟨I⟩ ∩ ⟨J⟩ = ⟨I∩J⟩`. Because `⟨I∩J⟩` always lies in the intersection, it
/// suffices to look for an element of the intersection outside `⟨I∩J⟩`.
fn check_pair(
    parabolics: &Parabolics<'_>,
    left: u64,
    right: u64,
    budget: ElementBudget,
) -> Result<Option<Witness>> {
    let a = parabolics.get(left);
    let b = parabolics.get(right);
    let c = parabolics.get(left & right);
    let c_order = c.order();
    if a.order().min(b.order()) == c_order {
        return Ok(None);
    }
    let smaller = if a.order() <= b.order() { left } else { right };
    let c_chain = c.bsgs();
    let mut scratch = crate::perm::Scratch::new(a.degree());
    let found = a
        .scan_intersection(&b, budget, |g| {
            if c_chain.contains_raw(g, &mut scratch) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(g.to_vec())
            }
        })
        .map_err(|e| e.with_subset(&mask_indices(smaller)))?;
    Ok(match found {
        ControlFlow::Break(images) => Some(Witness::Intersection {
            left: mask_indices(left),
            right: mask_indices(right),
            element: Permutation::from_raw(images),
        }),
        ControlFlow::Continue(()) => None,
    })
}

/// All unordered pairs of incomparable subsets (nested pairs satisfy the property
/// trivially), smallest combined size first.
fn exhaustive(parabolics: &Parabolics<'_>, budget: ElementBudget) -> Result<Option<Witness>> {
    let n = parabolics.rep.rank();
    if n < 2 {
        return Ok(None);
    }
    assert!(n <= 20, "exhaustive verification supports rank at most 20");
    let full = full_mask(n);
    let mut pairs = Vec::new();
    for i in 0..=full {
        for j in i + 1..=full {
            if i & j == i || i & j == j {
                continue;
            }
            pairs.push((i, j));
        }
    }
    pairs.sort_by_key(|&(i, j)| (i.count_ones() + j.count_ones(), i.count_ones().max(j.count_ones()), i, j));
    const CHUNK: usize = 32;
    for chunk in pairs.chunks(CHUNK) {
        let results: Vec<Result<Option<Witness>>> = chunk
            .par_iter()
            .map(|&(i, j)| check_pair(parabolics, i, j, budget))
            .collect();
        for r in results {
            if let Some(w) = r? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Facet recursion: an interval `[lo, hi)` of generators is a string C-group iff both
/// facets are and `⟨lo..hi−1⟩ ∩ ⟨lo+1..hi⟩ = ⟨lo+1..hi−1⟩`.
struct Recursive<'p, 'a> {
    parabolics: &'p Parabolics<'a>,
    budget: ElementBudget,
    memo: HashMap<(usize, usize), Option<Witness>>,
}

impl<'p, 'a> Recursive<'p, 'a> {
    fn new(parabolics: &'p Parabolics<'a>, budget: ElementBudget) -> Self {
        Self {
            parabolics,
            budget,
            memo: HashMap::new(),
        }
    }

    fn check(&mut self, lo: usize, hi: usize) -> Result<Option<Witness>> {
        if let Some(w) = self.memo.get(&(lo, hi)) {
            return Ok(w.clone());
        }
        let gens = self.parabolics.rep.generators();
        let result = match hi - lo {
            0 | 1 => None,
            2 => (gens[lo] == gens[lo + 1]).then(|| Witness::Intersection {
                left: vec![lo],
                right: vec![lo + 1],
                element: gens[lo].clone(),
            }),
            _ => {
                if let Some(w) = self.check(lo, hi - 1)? {
                    Some(w)
                } else if let Some(w) = self.check(lo + 1, hi)? {
                    Some(w)
                } else {
                    check_pair(
                        self.parabolics,
                        interval_mask(lo, hi - 1),
                        interval_mask(lo + 1, hi),
                        self.budget,
                    )?
                }
            }
        };
        self.memo.insert((lo, hi), result.clone());
        Ok(result)
    }
}

/// Every ordered involution sequence of the given rank generating `group` that is an
/// irreducible string C-group. Sequences are compared exactly; no isomorphism reduction.
pub fn search_reps(group: &PermGroup, rank: usize, budget: ElementBudget) -> Result<Vec<SggiRep>> {
    search_reps_bounded(group, rank, budget, SEARCH_BOUND)
}

pub fn search_reps_bounded(
    group: &PermGroup,
    rank: usize,
    budget: ElementBudget,
    bound: u64,
) -> Result<Vec<SggiRep>> {
    if rank < 2 {
        return Err(Error::RankTooSmall { rank, min: 2 });
    }
    let order = group.order();
    match group.order_u64() {
        Some(n) if n <= bound => {}
        _ => {
            return Err(Error::GroupTooLarge {
                order: order.to_string(),
                bound,
            })
        }
    }
    let mut involutions: Vec<Permutation> = group
        .closure(budget)?
        .into_iter()
        .filter(|x| x.is_involution())
        .collect();
    involutions.sort();
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(rank);
    let ctx = SearchCtx {
        degree: group.degree(),
        rank,
        order: &order,
        involutions: &involutions,
        budget,
    };
    ctx.extend(&mut seq, &mut out)?;
    Ok(out)
}

struct SearchCtx<'a> {
    degree: usize,
    rank: usize,
    order: &'a num_bigint::BigUint,
    involutions: &'a [Permutation],
    budget: ElementBudget,
}

impl SearchCtx<'_> {
    fn extend(&self, seq: &mut Vec<Permutation>, out: &mut Vec<SggiRep>) -> Result<()> {
        let i = seq.len();
        if i == self.rank {
            let rep = SggiRep::from_permutations(self.degree, seq.clone())?;
            if rep.group().order() == *self.order {
                out.push(rep);
            }
            return Ok(());
        }
        for x in self.involutions {
            if i >= 1 && seq[i - 1].compose_unchecked(x).order() <= 2 {
                continue;
            }
            if seq[..i.saturating_sub(1)]
                .iter()
                .any(|y| y.compose_unchecked(x).order() > 2)
            {
                continue;
            }
            seq.push(x.clone());
            let keep = if seq.len() >= 3 {
                let rep = SggiRep::from_permutations(self.degree, seq.clone())?;
                verify(
                    &rep,
                    &VerifyOptions {
                        budget: self.budget,
                        ..VerifyOptions::default()
                    },
                )?
                .is_string_c_group
            } else {
                true
            };
            if keep {
                self.extend(seq, out)?;
            }
            seq.pop();
        }
        Ok(())
    }
}
