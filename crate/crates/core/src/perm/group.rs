use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;
use std::sync::OnceLock;

use num_bigint::BigUint;
use petgraph::unionfind::UnionFind;

use super::bsgs::{Scratch, StabChain};
use super::Permutation;
use crate::error::{Error, Result};

/// Seed for the randomized phase of Schreier–Sims unless overridden.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// Cap on explicit element enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementBudget {
    max_elements: u64,
}

impl ElementBudget {
    pub const DEFAULT_MAX: u64 = 10_000_000;

    pub fn new(max_elements: u64) -> Result<Self> {
        if max_elements == 0 {
            return Err(Error::InvalidBudget);
        }
        Ok(Self { max_elements })
    }

    pub fn max_elements(&self) -> u64 {
        self.max_elements
    }

    pub(crate) fn check(&self, size: u64) -> Result<()> {
        if size > self.max_elements {
            Err(Error::ClosureOverflow {
                cap: self.max_elements,
                subset: None,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for ElementBudget {
    fn default() -> Self {
        Self {
            max_elements: Self::DEFAULT_MAX,
        }
    }
}

/// A permutation group given by generators, with a lazily built stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    seed: u64,
    bsgs: OnceLock<StabChain>,
}

impl PermGroup {
    /// An empty generator list yields the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        Ok(Self {
            degree,
            generators,
            seed: DEFAULT_SEED,
            bsgs: OnceLock::new(),
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.bsgs = OnceLock::new();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn bsgs(&self) -> &StabChain {
        self.bsgs
            .get_or_init(|| StabChain::new(self.degree, &self.generators, self.seed))
    }

    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.bsgs().order_u64()
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, x.degree()));
        }
        Ok(self.bsgs().contains(x))
    }

    /// Breadth-first closure under right multiplication by the generators.
    pub fn closure(&self, budget: ElementBudget) -> Result<HashSet<Permutation>> {
        let id = Permutation::identity(self.degree);
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.compose_unchecked(g);
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    budget.check(seen.len() as u64)?;
                    queue.push_back(y);
                }
            }
        }
        Ok(seen)
    }

    /// Orbit partition of `1..=degree`, each part sorted, parts ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.degree);
        for g in &self.generators {
            for (i, &x) in g.raw().iter().enumerate() {
                uf.union(i, x as usize);
            }
        }
        partition_from_union_find(&uf, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Streams the elements of `self ∩ other` by enumerating whichever group has the
    /// smaller order and sifting each element through the other's stabilizer chain.
    pub(crate) fn scan_intersection<B>(
        &self,
        other: &PermGroup,
        budget: ElementBudget,
        mut f: impl FnMut(&[u32]) -> ControlFlow<B>,
    ) -> Result<ControlFlow<B>> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        match small.order_u64() {
            Some(n) => budget.check(n)?,
            None => {
                return Err(Error::ClosureOverflow {
                    cap: budget.max_elements(),
                    subset: None,
                })
            }
        }
        let large_chain = large.bsgs();
        let mut scratch = Scratch::new(self.degree);
        Ok(small.bsgs().for_each_element(|g| {
            if large_chain.contains_raw(g, &mut scratch) {
                f(g)
            } else {
                ControlFlow::Continue(())
            }
        }))
    }

    /// The elements of `self ∩ other`.
    pub fn intersect(&self, other: &PermGroup, budget: ElementBudget) -> Result<HashSet<Permutation>> {
        let mut out = HashSet::new();
        let _ = self.scan_intersection::<()>(other, budget, |g| {
            out.insert(Permutation::from_raw(g.to_vec()));
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }
}

pub(crate) fn partition_from_union_find(uf: &UnionFind<usize>, n: usize) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let r = uf.find(i);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = parts.len();
            parts.push(Vec::new());
        }
        parts[index_of_root[r]].push(i + 1);
    }
    parts
}
