//! Generators and independent oracles shared by the integration tests. The
//! oracles work on raw image vectors and never call the library's group code.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use stringc::cpr::CprGraph;
use stringc::perm::Permutation;
use stringc::sggi::{check_sggi, SggiRep};

pub type Images = Vec<usize>;

pub fn images(p: &Permutation) -> Images {
    (1..=p.degree()).map(|i| p.image(i)).collect()
}

fn compose(a: &Images, b: &Images) -> Images {
    a.iter().map(|&x| b[x - 1]).collect()
}

/// Breadth-first closure under right multiplication by generators, capped at `cap`.
pub fn brute_closure(degree: usize, gens: &[Images], cap: usize) -> Option<HashSet<Images>> {
    let id: Images = (1..=degree).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

pub fn brute_closure_of(rep: &SggiRep, indices: &[usize], cap: usize) -> Option<HashSet<Images>> {
    let gens: Vec<Images> = indices.iter().map(|&i| images(&rep.generators()[i])).collect();
    brute_closure(rep.degree(), &gens, cap)
}

/// Intersection property over every pair of generator subsets, by explicit closures.
pub fn brute_intersection_property(rep: &SggiRep, cap: usize) -> Option<bool> {
    let n = rep.rank();
    let subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    let groups: Vec<HashSet<Images>> = subsets
        .iter()
        .map(|s| brute_closure_of(rep, s, cap))
        .collect::<Option<_>>()?;
    for a in 0..subsets.len() {
        for b in 0..subsets.len() {
            let both = a & b;
            let common: HashSet<&Images> = groups[a].intersection(&groups[b]).collect();
            if common.len() != groups[both].len() {
                return Some(false);
            }
        }
    }
    Some(true)
}

pub fn random_involution<R: Rng>(rng: &mut R, degree: usize) -> Images {
    let mut pts: Vec<usize> = (1..=degree).collect();
    pts.shuffle(rng);
    let pairs = rng.gen_range(1..=degree / 2);
    let mut img: Images = (1..=degree).collect();
    for k in 0..pairs {
        let (a, b) = (pts[2 * k], pts[2 * k + 1]);
        img[a - 1] = b;
        img[b - 1] = a;
    }
    img
}

/// A random sequence of involutions in Sym(degree) in which non-adjacent terms
/// commute. Returns `None` when rejection sampling gives up.
pub fn random_sggi<R: Rng>(rng: &mut R, degree: usize, rank: usize) -> Option<SggiRep> {
    let mut gens: Vec<Images> = Vec::new();
    for i in 0..rank {
        let found = (0..200).map(|_| random_involution(rng, degree)).find(|g| {
            gens.iter()
                .take(i.saturating_sub(1))
                .all(|h| compose(g, h) == compose(h, g))
        })?;
        gens.push(found);
    }
    let perms = gens
        .iter()
        .map(|g| Permutation::from_images(g).unwrap())
        .collect();
    let rep = SggiRep::from_permutations(degree, perms).ok()?;
    check_sggi(&rep).is_sggi.then_some(rep)
}

/// A random graph whose edges of each label form a matching.
pub fn random_cpr<R: Rng>(rng: &mut R) -> CprGraph {
    let nodes = rng.gen_range(1..=12);
    let rank = rng.gen_range(1..=5);
    let mut edges = Vec::new();
    for label in 0..rank {
        let mut pts: Vec<usize> = (1..=nodes).collect();
        pts.shuffle(rng);
        let pairs = rng.gen_range(0..=nodes / 2);
        for k in 0..pairs {
            edges.push((pts[2 * k], pts[2 * k + 1], label));
        }
    }
    CprGraph::new(nodes, rank, edges).unwrap()
}

/// Connected components by repeated flood fill over an adjacency list.
pub fn flood_components(graph: &CprGraph, labels: &[usize]) -> Vec<Vec<usize>> {
    let n = graph.nodes();
    let mut adj = vec![Vec::new(); n + 1];
    for e in graph.edges().iter().filter(|e| labels.contains(&e.label)) {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut seen = vec![false; n + 1];
    let mut parts = Vec::new();
    for s in 1..=n {
        if seen[s] {
            continue;
        }
        let mut part = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < part.len() {
            for &y in &adj[part[i]] {
                if !seen[y] {
                    seen[y] = true;
                    part.push(y);
                }
            }
            i += 1;
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}
