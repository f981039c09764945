//! Rank reduction: `(ρ0, ρ1, ρ2, ρ3, …, ρ_{n−1}) ↦ (ρ1, ρ0ρ2, ρ3, …, ρ_{n−1})`.
//!
//! The reduced sequence is always built. Whether it is guaranteed to be a string
//! C-group of rank `n−1` on the same group is reported through flags:
//! `theorem_condition` (`ρ0 ∈ ⟨ρ0ρ2, ρ3⟩`) together with a verified irreducible
//! input of rank at least 4 gives the guarantee, and an odd `|ρ2ρ3|` implies the
//! membership condition.
//!
//! Right reduction is the mirror image: reverse, reduce on the left, reverse back.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sggi::{check_sggi, verify, SchlafliType, SggiRep, VerificationReport, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Left,
    Right,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            other => Err(Error::Invalid(format!("unknown direction {other:?}"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReduceOptions {
    pub verify: VerifyOptions,
    /// Reduce even when the input is not a verified irreducible string C-group.
    pub force: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionOutcome {
    #[serde(skip)]
    pub reduced: SggiRep,
    pub direction: Direction,
    pub input_rank: usize,
    pub input_schlafli: SchlafliType,
    pub reduced_schlafli: SchlafliType,
    pub theorem_condition: bool,
    pub odd_condition: bool,
    pub group_preserved: bool,
    pub guaranteed: bool,
    pub input_order: String,
    pub reduced_order: String,
    /// Whether the input verified as an irreducible string C-group.
    pub input_verified: bool,
}

/// The reduced generator words on the left.
fn left_words(n: usize) -> Vec<Vec<usize>> {
    let mut words = vec![vec![1], vec![0, 2]];
    words.extend((3..n).map(|i| vec![i]));
    words
}

/// `x ∈ ⟨a, b⟩` for involutions `a, b`, by listing the `2·|ab|` elements
/// `(ab)^i` and `(ab)^i a`.
pub fn in_dihedral(a: &Permutation, b: &Permutation, x: &Permutation) -> bool {
    let r = a.compose_unchecked(b);
    let m = r.order();
    let mut power = Permutation::identity(a.degree());
    for _ in 0..m {
        if power == *x || power.compose_unchecked(a) == *x {
            return true;
        }
        power = power.compose_unchecked(&r);
    }
    false
}

/// When `|ρ2ρ3| = 2k+1` is odd, whether `((ρ0ρ2)ρ3)^{2k+1} = ρ0`; `None` when even or rank < 4.
pub fn odd_power_identity(rep: &SggiRep) -> Option<bool> {
    if rep.rank() < 4 {
        return None;
    }
    let g = rep.generators();
    let m = g[2].compose_unchecked(&g[3]).order();
    if m.is_multiple_of(2) {
        return None;
    }
    let w = g[0].compose_unchecked(&g[2]).compose_unchecked(&g[3]);
    Some(w.pow(m) == g[0])
}

pub fn reduce_once(rep: &SggiRep, direction: Direction, opts: &ReduceOptions) -> Result<ReductionOutcome> {
    let n = rep.rank();
    if n < 4 {
        return Err(Error::RankTooSmall { rank: n, min: 4 });
    }
    let sggi = check_sggi(rep);
    if !sggi.is_sggi {
        return Err(Error::NotSggi(
            sggi.failure_witness.map(|w| w.to_string()).unwrap_or_default(),
        ));
    }
    let input_report = verify(rep, &opts.verify)?;
    let input_verified = input_report.is_string_c_group && input_report.is_irreducible;
    if !input_verified && !opts.force {
        let reason = if !input_report.is_string_c_group {
            "intersection property fails"
        } else {
            "not irreducible"
        };
        return Err(Error::NotGuaranteedInput(reason.into()));
    }

    let working = match direction {
        Direction::Left => rep.clone(),
        Direction::Right => rep.reversed(),
    };
    let g = working.generators();
    let a = g[0].compose_unchecked(&g[2]);
    let theorem_condition = in_dihedral(&a, &g[3], &g[0]);
    let odd_condition = g[2].compose_unchecked(&g[3]).order() % 2 == 1;

    let reduced_working = working.derive(&left_words(n));
    let input_order = working.group().order();
    let reduced_order = reduced_working.group().order();
    let group_preserved = input_order == reduced_order;

    let mut reduced = match direction {
        Direction::Left => reduced_working,
        Direction::Right => reduced_working.reversed(),
    };
    if let Some(l) = rep.label() {
        reduced = reduced.with_label(format!("{l}/{direction}"));
    }
    let reduced_schlafli = check_sggi(&reduced).schlafli;

    Ok(ReductionOutcome {
        reduced,
        direction,
        input_rank: n,
        input_schlafli: input_report.schlafli,
        reduced_schlafli,
        theorem_condition,
        odd_condition,
        group_preserved,
        guaranteed: theorem_condition && input_verified,
        input_order: input_order.to_string(),
        reduced_order: reduced_order.to_string(),
        input_verified,
    })
}

/// Which odd run of the Schläfli type to measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunVariant {
    /// `t = max{ j ∈ {0,…,n−3} : p_{2+i} odd for all 0 ≤ i ≤ j }`, absent when `p_2` is even.
    Paper,
    /// Number of consecutive odd entries starting at `p_3`, capped at `n−3`.
    Shifted,
}

/// For a rank-`n` type `[p_1, …, p_{n−1}]`, the length `t` of the guaranteed run of
/// ranks `n, n−1, …, n−t`.
pub fn guaranteed_run_length(schlafli: &SchlafliType, variant: RunVariant) -> Result<Option<usize>> {
    let p = schlafli.entries();
    if p.len() < 3 {
        return Err(Error::TypeTooShort(p.len()));
    }
    let n = p.len() + 1;
    // p[k-1] is p_k
    let odd = |k: usize| p[k - 1] % 2 == 1;
    Ok(match variant {
        RunVariant::Paper => (0..=n - 3).take_while(|&j| odd(2 + j)).last(),
        RunVariant::Shifted => Some((0..n - 3).take_while(|&i| odd(3 + i)).count()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionStep {
    pub outcome: ReductionOutcome,
    pub verification: Option<VerificationReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", content = "detail", rename_all = "snake_case")]
pub enum StopReason {
    TargetReached,
    GroupNotPreserved,
    VerificationFailed,
    Rejected(String),
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopReason::TargetReached => f.write_str("target rank reached"),
            StopReason::GroupNotPreserved => f.write_str("group not preserved"),
            StopReason::VerificationFailed => f.write_str("reduced representation failed verification"),
            StopReason::Rejected(msg) => write!(f, "reduction rejected: {msg}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionChain {
    #[serde(skip)]
    pub start: SggiRep,
    pub steps: Vec<ReductionStep>,
    pub stop: StopReason,
    /// The attempted step that ended the chain early, if any.
    pub rejected: Option<ReductionStep>,
}

impl ReductionChain {
    /// A chain with no steps, for an input already at the target rank.
    pub fn unreduced(start: SggiRep) -> Self {
        ReductionChain {
            start,
            steps: Vec::new(),
            stop: StopReason::TargetReached,
            rejected: None,
        }
    }

    /// Ranks visited, starting rank first.
    pub fn ranks(&self) -> Vec<usize> {
        std::iter::once(self.start.rank())
            .chain(self.steps.iter().map(|s| s.outcome.reduced.rank()))
            .collect()
    }

    pub fn last(&self) -> &SggiRep {
        self.steps.last().map(|s| &s.outcome.reduced).unwrap_or(&self.start)
    }
}

/// Applies `reduce_once` until `target_rank`. A rejected step ends the chain early;
/// the accepted steps before it are kept.
pub fn reduce_iterate(
    rep: &SggiRep,
    target_rank: usize,
    direction: Direction,
    verify_each: bool,
    opts: &ReduceOptions,
) -> Result<ReductionChain> {
    if target_rank < 3 || target_rank >= rep.rank() {
        return Err(Error::Invalid(format!(
            "target rank must satisfy 3 ≤ target < {}, got {target_rank}",
            rep.rank()
        )));
    }
    let mut chain = ReductionChain {
        start: rep.clone(),
        steps: Vec::new(),
        stop: StopReason::TargetReached,
        rejected: None,
    };
    let mut current = rep.clone();
    while current.rank() > target_rank {
        let outcome = match reduce_once(&current, direction, opts) {
            Ok(o) => o,
            Err(e @ Error::ClosureOverflow { .. }) if chain.steps.is_empty() => return Err(e),
            Err(e) => {
                chain.stop = StopReason::Rejected(e.to_string());
                return Ok(chain);
            }
        };
        if !outcome.group_preserved {
            chain.stop = StopReason::GroupNotPreserved;
            chain.rejected = Some(ReductionStep {
                outcome,
                verification: None,
            });
            return Ok(chain);
        }
        let verification = if verify_each {
            Some(verify(&outcome.reduced, &opts.verify)?)
        } else {
            None
        };
        let step = ReductionStep {
            outcome,
            verification,
        };
        if step.verification.as_ref().is_some_and(|v| !v.is_string_c_group) {
            chain.stop = StopReason::VerificationFailed;
            chain.rejected = Some(step);
            return Ok(chain);
        }
        current = step.outcome.reduced.clone();
        chain.steps.push(step);
    }
    Ok(chain)
}
