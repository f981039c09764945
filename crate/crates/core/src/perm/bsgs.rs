//! Base and strong generating set via Schreier–Sims.
//!
//! Construction starts with a randomized phase (sifting random group elements
//! from a seeded product-replacement generator) and then runs the deterministic
//! Schreier generator check level by level, bottom-up, adding every residue that
//! fails to sift. The finished chain is exact regardless of the seed; the seed
//! only changes which strong generators end up in it.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Permutation;

/// Consecutive successful random sifts before the randomized phase stops.
const RANDOM_SIFT_STREAK: usize = 24;
const RANDOM_SIFT_MAX: usize = 2_000;

#[derive(Clone, Debug)]
struct Level {
    /// 0-based base point.
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// For each point, index into `reps` / `inv_reps` if the point lies in the basic orbit.
    slot: Vec<Option<u32>>,
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut level = Self {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![None; degree],
            reps: Vec::new(),
            inv_reps: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        self.slot.iter_mut().for_each(|s| *s = None);
        let id = Permutation::identity(degree);
        self.slot[self.base as usize] = Some(0);
        self.orbit.push(self.base);
        self.reps.push(id.clone());
        self.inv_reps.push(id);
        let mut head = 0;
        while head < self.orbit.len() {
            let a = self.orbit[head];
            let ua = self.reps[head].clone();
            head += 1;
            for s in &self.gens {
                let c = s.raw()[a as usize];
                if self.slot[c as usize].is_none() {
                    let uc = ua.compose_unchecked(s);
                    self.slot[c as usize] = Some(self.reps.len() as u32);
                    self.orbit.push(c);
                    self.inv_reps.push(uc.inverse());
                    self.reps.push(uc);
                }
            }
        }
    }

    fn rep_index(&self, point: u32) -> Option<usize> {
        self.slot[point as usize].map(|s| s as usize)
    }
}

/// A stabilizer chain `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ … ≥ 1` with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation], seed: u64) -> Self {
        let mut chain = Self {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return chain;
        }
        chain.random_phase(&gens, seed);
        for g in &gens {
            let (residue, level) = chain.sift(g.clone(), 0);
            if !residue.is_identity() {
                chain.add_strong(residue, 0, level);
            }
        }
        chain.schreier_check();
        chain
    }

    fn random_phase(&mut self, gens: &[Permutation], seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pool: Vec<Permutation> = gens.iter().cycle().take(gens.len().max(10)).cloned().collect();
        let mut acc = Permutation::identity(self.degree);
        // warm-up for product replacement
        for _ in 0..50 {
            step_product_replacement(&mut pool, &mut acc, &mut rng);
        }
        let mut streak = 0;
        for _ in 0..RANDOM_SIFT_MAX {
            if streak >= RANDOM_SIFT_STREAK {
                break;
            }
            step_product_replacement(&mut pool, &mut acc, &mut rng);
            let (residue, level) = self.sift(acc.clone(), 0);
            if residue.is_identity() {
                streak += 1;
            } else {
                streak = 0;
                self.add_strong(residue, 0, level);
            }
        }
    }

    /// Adds `h` (which fixes the first `to` base points) as a strong generator on
    /// levels `from..=to`, opening a new level when `to` is past the end.
    fn add_strong(&mut self, h: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let base = h.first_moved().expect("non-identity residue") as u32 - 1;
            self.levels.push(Level::new(base, self.degree));
        }
        for level in &mut self.levels[from..=to] {
            level.gens.push(h.clone());
            level.rebuild_orbit(self.degree);
        }
    }

    fn schreier_check(&mut self) {
        let mut k = self.levels.len();
        while k > 0 {
            let level_idx = k - 1;
            match self.find_failing_schreier_generator(level_idx) {
                None => k -= 1,
                Some((residue, depth)) => {
                    self.add_strong(residue, level_idx + 1, depth);
                    k = depth + 1;
                }
            }
        }
    }

    fn find_failing_schreier_generator(&self, k: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[k];
        for (ai, &a) in level.orbit.iter().enumerate() {
            let ua = &level.reps[ai];
            for s in &level.gens {
                let c = s.raw()[a as usize];
                let idx = level.rep_index(c).expect("orbit closed under generators");
                let schreier = ua.compose_unchecked(s).compose_unchecked(&level.inv_reps[idx]);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, depth) = self.sift(schreier, k + 1);
                if !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
        }
        None
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level where sifting stopped.
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let c = g.raw()[level.base as usize];
            match level.rep_index(c) {
                Some(idx) => g = g.compose_unchecked(&level.inv_reps[idx]),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize + 1).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Group order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut scratch = Scratch::new(self.degree);
        self.contains_raw(g.raw(), &mut scratch)
    }

    pub(crate) fn contains_raw(&self, g: &[u32], scratch: &mut Scratch) -> bool {
        let Scratch { a, b } = scratch;
        a.clear();
        a.extend_from_slice(g);
        for level in &self.levels {
            let c = a[level.base as usize];
            let Some(idx) = level.rep_index(c) else {
                return false;
            };
            let inv = level.inv_reps[idx].raw();
            b.clear();
            b.extend(a.iter().map(|&x| inv[x as usize]));
            std::mem::swap(a, b);
        }
        a.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Visits every element exactly once as a product of transversal elements
    /// `u_{L-1} ⋯ u_1 u_0`. The callback receives the 0-based image table.
    pub(crate) fn for_each_element<B>(
        &self,
        mut f: impl FnMut(&[u32]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let depth = self.levels.len();
        if depth == 0 {
            let id: Vec<u32> = (0..self.degree as u32).collect();
            return f(&id);
        }
        // buffers[i] holds the partial product u_{L-1} ⋯ u_i
        let mut buffers = vec![vec![0u32; self.degree]; depth + 1];
        buffers[depth] = (0..self.degree as u32).collect();
        self.enumerate_from(depth, &mut buffers, &mut f)
    }

    fn enumerate_from<B>(
        &self,
        level_plus_one: usize,
        buffers: &mut [Vec<u32>],
        f: &mut impl FnMut(&[u32]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if level_plus_one == 0 {
            return f(&buffers[0]);
        }
        let i = level_plus_one - 1;
        let level = &self.levels[i];
        for rep in &level.reps {
            let (lower, upper) = buffers.split_at_mut(level_plus_one);
            let prefix = &upper[0];
            let out = &mut lower[i];
            let r = rep.raw();
            for (o, &x) in out.iter_mut().zip(prefix.iter()) {
                *o = r[x as usize];
            }
            self.enumerate_from(i, buffers, f)?;
        }
        ControlFlow::Continue(())
    }
}

/// Reusable buffers for allocation-free sifting.
pub(crate) struct Scratch {
    a: Vec<u32>,
    b: Vec<u32>,
}

impl Scratch {
    pub(crate) fn new(degree: usize) -> Self {
        Self {
            a: Vec::with_capacity(degree),
            b: Vec::with_capacity(degree),
        }
    }
}

fn step_product_replacement(pool: &mut [Permutation], acc: &mut Permutation, rng: &mut ChaCha8Rng) {
    let n = pool.len();
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    pool[i] = if rng.gen_bool(0.5) {
        pool[i].compose_unchecked(&pool[j])
    } else {
        pool[i].compose_unchecked(&pool[j].inverse())
    };
    *acc = acc.compose_unchecked(&pool[i]);
}
