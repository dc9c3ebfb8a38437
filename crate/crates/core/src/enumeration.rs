//! Generation and counting of topologies, posets and finite spaces.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::algebra::{is_irreducible, is_join_indecomposable};
use crate::error::{Error, Result};
use crate::space::{bits, down_sets, full_mask, FiniteSpace, Preorder, RawSpace};

/// Default cap for labeled poset generation.
pub const LABELED_POSET_CAP: usize = 7;
/// Default cap for counting topologies.
pub const TOPOLOGY_CAP: usize = 6;
/// Default cap for enumerating finite spaces.
pub const SPACE_CAP: usize = 7;

/// Size limits; `allow_large` lifts the default caps.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub allow_large: bool,
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits { allow_large: true }
    }

    fn check(&self, what: &'static str, n: usize, cap: usize) -> Result<()> {
        if n > crate::space::MAX_POINTS {
            return Err(Error::TooLarge(n));
        }
        if n > cap && !self.allow_large {
            return Err(Error::Unsupported { what, n, cap });
        }
        Ok(())
    }
}

/// Choices `(D, U)` for a new element placed above the down-set `D` and
/// below the up-set `U` of an existing strict order.
fn extensions(above: &[u64]) -> Vec<(u64, u64)> {
    let m = above.len();
    let all = full_mask(m);
    let below: Vec<u64> = (0..m)
        .map(|i| (0..m).filter(|&j| above[j] >> i & 1 == 1).fold(0u64, |a, j| a | 1 << j))
        .collect();
    let mut out = Vec::new();
    for d in down_sets(&below, all) {
        let allowed = bits(d).fold(all & !d, |acc, x| acc & above[x]);
        for u in down_sets(above, allowed) {
            out.push((d, u));
        }
    }
    out
}

fn extend(above: &[u64], d: u64, u: u64) -> Vec<u64> {
    let m = above.len();
    let mut next: Vec<u64> = above.to_vec();
    for x in bits(d) {
        next[x] |= 1 << m;
    }
    next.push(u);
    next
}

/// Number of valid `(D, U)` pairs, without materializing them.
fn extension_count(above: &[u64]) -> u64 {
    let m = above.len();
    let all = full_mask(m);
    let below: Vec<u64> = (0..m)
        .map(|i| (0..m).filter(|&j| above[j] >> i & 1 == 1).fold(0u64, |a, j| a | 1 << j))
        .collect();
    down_sets(&below, all)
        .into_iter()
        .map(|d| {
            let allowed = bits(d).fold(all & !d, |acc, x| acc & above[x]);
            down_sets(above, allowed).len() as u64
        })
        .sum()
}

/// Call `f` on every labeled strict partial order on `[k]` (as strict up-set masks).
pub fn for_each_labeled_poset(k: usize, mut f: impl FnMut(&[u64])) -> Result<()> {
    Limits::default().check("labeled poset generation", k, LABELED_POSET_CAP)?;
    fn rec(above: Vec<u64>, k: usize, f: &mut dyn FnMut(&[u64])) {
        if above.len() == k {
            f(&above);
            return;
        }
        for (d, u) in extensions(&above) {
            rec(extend(&above, d, u), k, f);
        }
    }
    rec(Vec::new(), k, &mut f);
    Ok(())
}

/// Number of partial orders on `[k]`.
pub fn labeled_posets(k: usize) -> Result<u64> {
    labeled_posets_with(k, Limits::default())
}

pub fn labeled_posets_with(k: usize, limits: Limits) -> Result<u64> {
    limits.check("labeled poset count", k, LABELED_POSET_CAP)?;
    if k == 0 {
        return Ok(1);
    }
    // Materialize posets on k − 1 points, then count one-point extensions.
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..k - 1 {
        level = level
            .par_iter()
            .flat_map_iter(|p| extensions(p).into_iter().map(move |(d, u)| extend(p, d, u)))
            .collect();
    }
    Ok(level.par_iter().map(|p| extension_count(p)).sum())
}

/// `S(n, k)` for `0 ≤ k ≤ n`.
pub fn stirling2(n: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for m in 1..=n {
        let mut next = vec![0u128; m + 1];
        for (k, slot) in next.iter_mut().enumerate().skip(1) {
            *slot = row.get(k - 1).copied().unwrap_or(0)
                + k as u128 * row.get(k).copied().unwrap_or(0);
        }
        row = next;
    }
    row
}

/// Number of topologies on `[n]`: `Σ_k S(n, k) · P(k)`.
pub fn count_topologies(n: usize) -> Result<u128> {
    count_topologies_with(n, Limits::default())
}

pub fn count_topologies_with(n: usize, limits: Limits) -> Result<u128> {
    limits.check("topology count", n, TOPOLOGY_CAP)?;
    let s = stirling2(n);
    let mut total = 0u128;
    for (k, &sk) in s.iter().enumerate() {
        if sk != 0 {
            total += sk * labeled_posets_with(k, limits)? as u128;
        }
    }
    Ok(total)
}

/// Call `f` on every topology on `[n]`, as a preorder: a set partition
/// into classes together with a partial order on the classes.
pub fn for_each_topology(n: usize, limits: Limits, mut f: impl FnMut(&Preorder)) -> Result<()> {
    limits.check("topology enumeration", n, TOPOLOGY_CAP)?;
    let mut block = vec![0usize; n];
    fn partitions(i: usize, blocks: usize, block: &mut Vec<usize>, out: &mut Vec<(usize, Vec<usize>)>) {
        if i == block.len() {
            out.push((blocks, block.clone()));
            return;
        }
        for b in 0..=blocks {
            block[i] = b;
            partitions(i + 1, blocks.max(b + 1), block, out);
        }
    }
    let mut all = Vec::new();
    partitions(0, 0, &mut block, &mut all);
    let mut posets_by_k: Vec<Option<Vec<Vec<u64>>>> = vec![None; n + 1];
    for (k, assignment) in all {
        let posets = posets_by_k[k].get_or_insert_with(|| {
            let mut v = Vec::new();
            let mut rec_stack: Vec<Vec<u64>> = vec![Vec::new()];
            while let Some(p) = rec_stack.pop() {
                if p.len() == k {
                    v.push(p);
                    continue;
                }
                for (d, u) in extensions(&p) {
                    rec_stack.push(extend(&p, d, u));
                }
            }
            v
        });
        let members: Vec<u64> = (0..k)
            .map(|c| (0..n).filter(|&i| assignment[i] == c).fold(0u64, |a, i| a | 1 << i))
            .collect();
        for above in posets.iter() {
            let up = (0..n)
                .map(|i| {
                    let c = assignment[i];
                    bits(above[c]).fold(members[c], |acc, d| acc | members[d])
                })
                .collect();
            f(&Preorder::from_up_sets_unchecked(up));
        }
    }
    Ok(())
}

/// Unlabeled posets on `k` points, each as a T0 [`FiniteSpace`], sorted.
pub fn posets(k: usize) -> Result<Vec<FiniteSpace>> {
    posets_with(k, Limits::default())
}

pub fn posets_with(k: usize, limits: Limits) -> Result<Vec<FiniteSpace>> {
    limits.check("poset enumeration", k, SPACE_CAP)?;
    let mut level = vec![FiniteSpace::empty()];
    for _ in 0..k {
        level = posets_step(&level);
    }
    Ok(level)
}

/// Compositions of `n` into exactly `k` positive parts.
pub fn compositions_into(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < parts {
            return;
        }
        for first in 1..=left - (parts - 1) {
            cur.push(first as u32);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// All finite spaces with exactly `n` points, sorted.
pub fn enumerate_spaces(n: usize) -> Result<Vec<FiniteSpace>> {
    enumerate_spaces_with(n, Limits::default())
}

pub fn enumerate_spaces_with(n: usize, limits: Limits) -> Result<Vec<FiniteSpace>> {
    limits.check("space enumeration", n, SPACE_CAP)?;
    if n == 0 {
        return Ok(vec![FiniteSpace::empty()]);
    }
    let mut units = Vec::new();
    let mut level = vec![FiniteSpace::empty()];
    for k in 1..=n {
        level = posets_step(&level);
        for p in &level {
            for w in compositions_into(n, k) {
                units.push((p.clone(), w));
            }
        }
    }
    let found: HashSet<FiniteSpace> = units
        .par_iter()
        .map(|(p, w)| {
            RawSpace {
                weights: w.clone(),
                above: p.above_all().to_vec(),
            }
            .canonical()
        })
        .collect();
    let mut out: Vec<FiniteSpace> = found.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Every poset arises by adding a maximal point above some down-set.
fn posets_step(level: &[FiniteSpace]) -> Vec<FiniteSpace> {
    let next: HashSet<FiniteSpace> = level
        .par_iter()
        .flat_map_iter(|p| {
            let below = p.below_all();
            down_sets(&below, p.class_mask()).into_iter().map(move |d| {
                let mut above = p.above_all().to_vec();
                let m = above.len();
                for x in bits(d) {
                    above[x] |= 1 << m;
                }
                above.push(0);
                RawSpace {
                    weights: vec![1; m + 1],
                    above,
                }
                .canonical()
            })
        })
        .collect();
    let mut out: Vec<FiniteSpace> = next.into_iter().collect();
    out.sort();
    out
}

/// All finite spaces with at most `n` points (including the empty space), sorted.
pub fn spaces_up_to(n: usize) -> Result<Vec<FiniteSpace>> {
    let mut out = Vec::new();
    for m in 0..=n {
        out.extend(enumerate_spaces(m)?);
    }
    Ok(out)
}

/// Which subfamily of spaces to list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    All,
    Connected,
    JoinIndecomposable,
    Irreducible,
}

impl Family {
    pub fn contains(&self, x: &FiniteSpace) -> bool {
        match self {
            Family::All => true,
            Family::Connected => x.is_connected(),
            Family::JoinIndecomposable => is_join_indecomposable(x),
            Family::Irreducible => is_irreducible(x),
        }
    }
}

pub fn enumerate_family(n: usize, family: Family, limits: Limits) -> Result<Vec<FiniteSpace>> {
    Ok(enumerate_spaces_with(n, limits)?
        .into_iter()
        .filter(|x| family.contains(x))
        .collect())
}

/// Counts of connected, join-indecomposable and irreducible spaces of one size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyCounts {
    pub spaces: u64,
    pub connected: u64,
    pub join_indecomposable: u64,
    pub irreducible: u64,
}

pub fn count_families(n: usize) -> Result<FamilyCounts> {
    count_families_with(n, Limits::default())
}

pub fn count_families_with(n: usize, limits: Limits) -> Result<FamilyCounts> {
    let spaces = enumerate_spaces_with(n, limits)?;
    let flags: Vec<(bool, bool, bool)> = spaces
        .par_iter()
        .map(|x| {
            (
                Family::Connected.contains(x),
                Family::JoinIndecomposable.contains(x),
                Family::Irreducible.contains(x),
            )
        })
        .collect();
    Ok(FamilyCounts {
        spaces: spaces.len() as u64,
        connected: flags.iter().filter(|f| f.0).count() as u64,
        join_indecomposable: flags.iter().filter(|f| f.1).count() as u64,
        irreducible: flags.iter().filter(|f| f.2).count() as u64,
    })
}
