//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if any criterion fails.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stringc::constructions::{builtin_example, reflection_rep, simplex_rep, FIXTURES};
use stringc::cpr::cpr_to_rep;
use stringc::ffmatrix::{BilinearForm, FiniteField, Matrix};
use stringc::perm::{ElementBudget, PermGroup, Permutation};
use stringc::rankred::{reduce_iterate, reduce_once, Direction, ReduceOptions, StopReason};
use stringc::sggi::{schlafli_type, search_reps, verify, Engine, Method, SggiRep, VerifyOptions};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn printed_matrices() -> Vec<Vec<Vec<u32>>> {
    vec![
        vec![vec![2, 0, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        vec![vec![2, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 1, 2, 0], vec![0, 0, 0, 2]],
        vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 2, 0], vec![0, 0, 2, 1]],
        vec![vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 1], vec![0, 0, 0, 1]],
    ]
}

fn orthogonal_example() -> Outcome {
    let f3 = FiniteField::prime(3).map_err(err)?;
    let gram = Matrix::from_rows(
        &f3,
        vec![vec![1, 1, 0, 0], vec![1, 2, 1, 0], vec![0, 1, 1, 2], vec![0, 0, 2, 1]],
    )
    .map_err(err)?;
    let form = BilinearForm::new(f3, gram).map_err(err)?;
    let basis: Vec<Vec<u32>> = (0..4).map(|i| (0..4).map(|j| u32::from(i == j)).collect()).collect();
    let rep = reflection_rep(&form, &basis, &[1, -1, 1, -1], ElementBudget::default()).map_err(err)?;
    let Engine::Matrix(m) = rep.engine() else {
        return Err("expected a matrix engine".into());
    };
    let rows: Vec<_> = m.gens.iter().map(|g| g.rows()).collect();
    ensure!(rows == printed_matrices(), "matrices differ: {rows:?}");

    let report = verify(&rep, &VerifyOptions::default()).map_err(err)?;
    ensure!(report.is_string_c_group, "not a string C-group");
    ensure!(report.schlafli.0 == [4, 4, 6], "type {}", report.schlafli);
    let q: u64 = 3;
    let expected = 2 * q * q * (q * q + 1) * (q * q - 1);
    ensure!(rep.group().order_u64() == Some(expected), "order {}", rep.group().order());

    let o = reduce_once(&rep, Direction::Left, &ReduceOptions::default()).map_err(err)?;
    let reduced = verify(&o.reduced, &VerifyOptions::default()).map_err(err)?;
    ensure!(o.reduced.rank() == 3 && reduced.is_string_c_group, "reduction did not verify");
    ensure!(reduced.schlafli.0 == [6, 6], "reduced type {}", reduced.schlafli);
    ensure!(!o.theorem_condition, "theorem_condition unexpectedly true");
    Ok(format!("type [4,4,6], order {expected}, reduced [6,6], theorem_condition false"))
}

fn alternating_corpus() -> Outcome {
    let printed: [(&str, [u64; 5]); 3] = [
        ("A11-rank6-1", [5, 3, 6, 3, 5]),
        ("A11-rank6-2", [5, 5, 6, 3, 5]),
        ("A11-rank6-3", [5, 5, 6, 5, 5]),
    ];
    let opts = VerifyOptions::with_method(Method::Recursive);
    let mut notes = Vec::new();
    for (name, ty) in printed {
        let rep = builtin_example(name).map_err(err)?;
        ensure!(rep.rank() == 6, "{name}: rank {}", rep.rank());
        let report = verify(&rep, &opts).map_err(err)?;
        ensure!(report.is_string_c_group, "{name}: not a string C-group");
        ensure!(report.schlafli.0 == ty, "{name}: type {}", report.schlafli);
        ensure!(
            rep.group().order_u64() == Some(19_958_400),
            "{name}: order {}",
            rep.group().order()
        );
        for dir in [Direction::Left, Direction::Right] {
            let o = reduce_once(&rep, dir, &ReduceOptions { verify: opts, force: false }).map_err(err)?;
            let parts = o.reduced.group().orbits().len();
            ensure!(parts >= 2, "{name} {dir}: reduced group transitive");
            ensure!(!o.group_preserved, "{name} {dir}: group preserved");
            notes.push(format!("{name}/{dir}:{parts} orbits"));
        }
    }
    Ok(notes.join(", "))
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

fn simplex_chains() -> Outcome {
    for m in 5..=8 {
        let rep = simplex_rep(m).map_err(err)?;
        let report = verify(&rep, &VerifyOptions::default()).map_err(err)?;
        ensure!(report.is_string_c_group, "m={m}: simplex not a string C-group");
        ensure!(report.schlafli.0 == vec![3; m - 2], "m={m}: type {}", report.schlafli);
        let chain = reduce_iterate(&rep, 3, Direction::Left, true, &ReduceOptions::default()).map_err(err)?;
        ensure!(chain.stop == StopReason::TargetReached, "m={m}: stopped: {}", chain.stop);
        ensure!(chain.ranks() == (3..m).rev().collect::<Vec<_>>(), "m={m}: ranks {:?}", chain.ranks());
        for step in &chain.steps {
            let v = step.verification.as_ref().ok_or("missing verification")?;
            ensure!(v.is_string_c_group, "m={m}: rank {} did not verify", step.outcome.reduced.rank());
            ensure!(
                step.outcome.reduced.group().order_u64() == Some(factorial(m)),
                "m={m}: order changed at rank {}",
                step.outcome.reduced.rank()
            );
        }
    }
    Ok("m = 5..8 reduce to rank 3, every rank verified with order m!".into())
}

fn element_order(p: &common::Images) -> u32 {
    let mut x = p.clone();
    let mut k = 1;
    while x.iter().enumerate().any(|(i, &y)| y != i + 1) {
        x = x.iter().map(|&y| p[y - 1]).collect();
        k += 1;
    }
    k
}

fn power(p: &common::Images, e: u32) -> common::Images {
    let mut x: common::Images = (1..=p.len()).collect();
    for _ in 0..e {
        x = x.iter().map(|&y| p[y - 1]).collect();
    }
    x
}

/// Fixtures, simplices, every rank in their reduction chains, and random sggis.
fn corpus(random: usize, seed: u64) -> Vec<SggiRep> {
    let mut reps: Vec<SggiRep> = FIXTURES.iter().map(|(n, _)| builtin_example(n).unwrap()).collect();
    for m in 4..=8 {
        let s = simplex_rep(m).unwrap();
        if s.rank() > 3 {
            let chain = reduce_iterate(&s, 3, Direction::Left, false, &ReduceOptions::default()).unwrap();
            reps.extend(chain.steps.into_iter().map(|st| st.outcome.reduced));
        }
        reps.push(s);
    }
    let o = reduce_once(&builtin_example("O4minus3").unwrap(), Direction::Left, &ReduceOptions::default()).unwrap();
    reps.push(o.reduced);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    while added < random {
        let degree = rng.gen_range(3..=7);
        let rank = rng.gen_range(2..=5);
        if let Some(r) = common::random_sggi(&mut rng, degree, rank) {
            reps.push(r);
            added += 1;
        }
    }
    reps
}

fn odd_identity() -> Outcome {
    let mut checked = 0;
    for rep in corpus(300, 4) {
        if rep.rank() < 4 {
            continue;
        }
        let g: Vec<_> = rep.generators().iter().map(common::images).collect();
        let r23: common::Images = g[2].iter().map(|&y| g[3][y - 1]).collect();
        let m = element_order(&r23);
        let odd = m % 2 == 1;
        if odd {
            let w: common::Images = g[0].iter().map(|&y| r23[y - 1]).collect();
            ensure!(power(&w, m) == g[0], "identity fails on {:?}", rep.label());
            checked += 1;
        }
        let o = reduce_once(&rep, Direction::Left, &ReduceOptions { force: true, ..Default::default() })
            .map_err(err)?;
        ensure!(o.odd_condition == odd, "odd_condition disagrees on {:?}", rep.label());
        ensure!(!o.odd_condition || o.theorem_condition, "odd without theorem on {:?}", rep.label());
    }
    ensure!(checked > 10, "only {checked} representations with odd |r2 r3|");
    Ok(format!("identity holds on {checked} representations with odd |r2 r3|"))
}

fn dihedral(n: usize) -> PermGroup {
    let rotation: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    let flip: Vec<usize> = (1..=n).map(|i| (n + 1 - i) % n + 1).collect();
    PermGroup::new(
        n,
        vec![Permutation::from_images(&rotation).unwrap(), Permutation::from_images(&flip).unwrap()],
    )
    .unwrap()
}

fn dihedral_search() -> Outcome {
    let mut notes = Vec::new();
    for n in [3, 4, 5, 6] {
        let g = dihedral(n);
        ensure!(g.order_u64() == Some(2 * n as u64), "D{}: order {}", 2 * n, g.order());
        let r2 = search_reps(&g, 2, ElementBudget::default()).map_err(err)?;
        let r3 = search_reps(&g, 3, ElementBudget::default()).map_err(err)?;
        ensure!(!r2.is_empty(), "D{}: no rank-2 representation", 2 * n);
        ensure!(r3.is_empty(), "D{}: {} rank-3 representations", 2 * n, r3.len());
        notes.push(format!("D{}: {}/0", 2 * n, r2.len()));
    }
    Ok(notes.join(", "))
}

fn method_agreement() -> Outcome {
    let mut reps: Vec<SggiRep> = FIXTURES.iter().map(|(n, _)| builtin_example(n).unwrap()).collect();
    let fixtures = reps.len();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    while reps.len() < fixtures + 200 {
        let degree = rng.gen_range(3..=7);
        let rank = rng.gen_range(2..=5);
        if let Some(r) = common::random_sggi(&mut rng, degree, rank) {
            reps.push(r);
        }
    }
    let (mut yes, mut no) = (0, 0);
    for (i, rep) in reps.iter().enumerate() {
        let ex = verify(rep, &VerifyOptions::with_method(Method::Exhaustive)).map_err(err)?;
        let rec = verify(rep, &VerifyOptions::with_method(Method::Recursive)).map_err(err)?;
        ensure!(
            ex.is_string_c_group == rec.is_string_c_group,
            "disagreement on #{i} {:?}: exhaustive {} recursive {}",
            rep.label(),
            ex.is_string_c_group,
            rec.is_string_c_group
        );
        if ex.is_string_c_group {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure!(yes > 10 && no > 10, "unbalanced sample: {yes} string C-groups, {no} not");
    Ok(format!("{} representations agree ({yes} string C-groups, {no} not)", reps.len()))
}

fn oracle_cross_checks() -> Outcome {
    const CAP: u64 = 100_000;
    let mut groups = 0;
    for rep in corpus(100, 7) {
        let n = rep.rank();
        for mask in 0u32..1 << n {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let order = rep.subgroup(&idx).order_u64();
            if order.is_none_or(|o| o > CAP) {
                continue;
            }
            let brute = common::brute_closure_of(&rep, &idx, CAP as usize).ok_or("closure overflow")?;
            ensure!(
                brute.len() as u64 == order.unwrap(),
                "{:?} {idx:?}: BSGS order {:?} vs closure {}",
                rep.label(),
                order,
                brute.len()
            );
            groups += 1;
        }
    }

    let mut graphs: Vec<_> = FIXTURES
        .iter()
        .filter(|(_, text)| text.contains("kind: cpr"))
        .map(|(_, text)| stringc::cpr::cpr_parse(text).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    graphs.extend((0..100).map(|_| common::random_cpr(&mut rng)));
    for g in &graphs {
        let all: Vec<usize> = (0..g.rank()).collect();
        let orbits = cpr_to_rep(g).group().orbits();
        let comps = g.connectivity(&all).map_err(err)?;
        ensure!(orbits == comps, "orbits {orbits:?} vs components {comps:?}");
        ensure!(comps == common::flood_components(g, &all), "components disagree with flood fill");
    }
    Ok(format!("{groups} group orders match closures, {} graphs match", graphs.len()))
}

fn even_characteristic() -> Outcome {
    let rep = builtin_example("O4plus4").map_err(err)?;
    let Engine::Matrix(m) = rep.engine() else {
        return Err("expected a matrix engine".into());
    };
    let q = m.field.order() as u64;
    let report = verify(&rep, &VerifyOptions::default()).map_err(err)?;
    ensure!(report.is_string_c_group, "not a string C-group");
    let ty = schlafli_type(&rep).map_err(err)?;
    ensure!(ty.0.iter().all(|&p| p == q + 1), "type {ty} is not all {}", q + 1);
    let chain = reduce_iterate(&rep, 3, Direction::Left, true, &ReduceOptions::default()).map_err(err)?;
    ensure!(chain.stop == StopReason::TargetReached, "stopped: {}", chain.stop);
    Ok(format!("GF({q}) type {ty}, order {}, reduces to {}", rep.group().order(), chain.last().rank()))
}

/// Writes to the process stdout directly so the lines appear even when the harness captures output.
fn report(line: std::fmt::Arguments) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion { id: "1", name: "orthogonal GF(3) example end to end", limit: Some(Duration::from_secs(10)), run: orthogonal_example },
        Criterion { id: "2", name: "rank-6 Alt(11) CPR corpus", limit: Some(Duration::from_secs(300)), run: alternating_corpus },
        Criterion { id: "3", name: "simplex chains 5..8", limit: Some(Duration::from_secs(120)), run: simplex_chains },
        Criterion { id: "4", name: "odd-order identity", limit: None, run: odd_identity },
        Criterion { id: "5", name: "dihedral search", limit: Some(Duration::from_secs(30)), run: dihedral_search },
        Criterion { id: "6", name: "method agreement", limit: None, run: method_agreement },
        Criterion { id: "7", name: "oracle cross-checks", limit: None, run: oracle_cross_checks },
        Criterion { id: "7b", name: "even-characteristic fixture", limit: None, run: even_characteristic },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            (r, _) => r,
        };
        match &result {
            Ok(detail) => report(format_args!("criterion {} [{}]: PASS ({elapsed:.2?}) {detail}", c.id, c.name)),
            Err(why) => {
                report(format_args!("criterion {} [{}]: FAIL ({elapsed:.2?}) {why}", c.id, c.name));
                failed.push(c.id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
