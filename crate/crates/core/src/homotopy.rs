//! Beat-point reduction, cores, order complexes and Euler characteristics.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::{bits, FiniteSpace, Preorder, RawSpace};

/// Beat points of a T0 space, as class indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BeatPoints {
    /// Points whose strict up-set has a minimum.
    pub up: Vec<usize>,
    /// Points whose strict down-set has a maximum.
    pub down: Vec<usize>,
}

impl BeatPoints {
    pub fn is_empty(&self) -> bool {
        self.up.is_empty() && self.down.is_empty()
    }

    /// All beat points, sorted and deduplicated.
    pub fn all(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.up.iter().chain(&self.down).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// `set` (nonempty) has a least element with respect to `above`.
fn has_minimum(set: u64, above: &[u64]) -> bool {
    set != 0 && bits(set).any(|m| set & !(1u64 << m) & !above[m] == 0)
}

fn beats(above: &[u64], below: &[u64]) -> BeatPoints {
    let k = above.len();
    BeatPoints {
        up: (0..k).filter(|&x| has_minimum(above[x], above)).collect(),
        down: (0..k).filter(|&x| has_minimum(below[x], below)).collect(),
    }
}

/// Up-beat and down-beat points of a T0 space.
pub fn beat_points(x: &FiniteSpace) -> Result<BeatPoints> {
    if !x.is_t0() {
        return Err(Error::NotT0);
    }
    Ok(beats(x.above_all(), &x.below_all()))
}

/// Beat points of a partial order given as a labeled preorder.
pub fn beat_points_of_preorder(p: &Preorder) -> Result<BeatPoints> {
    if !p.is_t0() {
        return Err(Error::NotT0);
    }
    let n = p.len();
    let above: Vec<u64> = (0..n).map(|i| p.up_set(i) & !(1u64 << i)).collect();
    let dual = p.dual();
    let below: Vec<u64> = (0..n).map(|i| dual.up_set(i) & !(1u64 << i)).collect();
    Ok(beats(&above, &below))
}

/// The core of `x`: T0 quotient, then beat points removed until none remain.
pub fn core(x: &FiniteSpace) -> FiniteSpace {
    core_with(x, |_| 0)
}

/// Like [`core`], but `choose` picks which of the current beat points
/// (passed sorted) is removed next, by returning its index in the slice.
pub fn core_with(x: &FiniteSpace, mut choose: impl FnMut(&[usize]) -> usize) -> FiniteSpace {
    let t0 = x.t0_quotient();
    let mut raw = RawSpace {
        weights: t0.weights().to_vec(),
        above: t0.above_all().to_vec(),
    };
    loop {
        let candidates = beats(&raw.above, &raw.below()).all();
        if candidates.is_empty() {
            return raw.canonical();
        }
        let pick = candidates[choose(&candidates).min(candidates.len() - 1)];
        let keep = crate::space::full_mask(raw.weights.len()) & !(1u64 << pick);
        raw = raw.restrict(keep);
    }
}

pub fn homotopy_equivalent(x: &FiniteSpace, y: &FiniteSpace) -> bool {
    core(x) == core(y)
}

/// A simplicial complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: usize,
    /// Sorted facets, each a sorted list of 0-based vertices.
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// `f[d]` = number of `d`-dimensional faces.
    pub fn face_counts(&self) -> Vec<u64> {
        let mut faces = std::collections::BTreeSet::new();
        for facet in &self.facets {
            let m = facet.len();
            for sub in 1u64..(1u64 << m) {
                let face: Vec<usize> = bits(sub).map(|i| facet[i]).collect();
                faces.insert(face);
            }
        }
        let top = faces.iter().map(Vec::len).max().unwrap_or(0);
        let mut counts = vec![0u64; top];
        for face in faces {
            counts[face.len() - 1] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.face_counts())
    }
}

impl fmt::Display for SimplicialComplex {
    /// One facet per line, space-separated 1-based vertex indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for facet in &self.facets {
            let line: Vec<String> = facet.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn alternating_sum(counts: &[u64]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Order complex: vertices are the classes, facets the maximal chains.
pub fn order_complex(x: &FiniteSpace) -> SimplicialComplex {
    let k = x.num_classes();
    let mut up_covers = vec![Vec::new(); k];
    let mut has_lower = vec![false; k];
    for (i, j) in x.covers() {
        up_covers[i].push(j);
        has_lower[j] = true;
    }
    let mut facets = Vec::new();
    fn walk(v: usize, chain: &mut Vec<usize>, up: &[Vec<usize>], out: &mut Vec<Vec<usize>>) {
        chain.push(v);
        if up[v].is_empty() {
            let mut facet = chain.clone();
            facet.sort_unstable();
            out.push(facet);
        } else {
            for &w in &up[v] {
                walk(w, chain, up, out);
            }
        }
        chain.pop();
    }
    for v in (0..k).filter(|&v| !has_lower[v]) {
        walk(v, &mut Vec::new(), &up_covers, &mut facets);
    }
    facets.sort();
    SimplicialComplex { vertices: k, facets }
}

/// Number of chains with `d + 1` elements, for each `d`, by dynamic programming.
pub fn chain_counts(x: &FiniteSpace) -> Vec<u64> {
    let k = x.num_classes();
    let below = x.below_all();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| below[c].count_ones());
    // ending[v][l] = chains of l + 1 elements with top v.
    let mut ending = vec![vec![0u64; k]; k];
    let mut counts = vec![0u64; k];
    for &v in &order {
        ending[v][0] = 1;
        for u in bits(below[v]) {
            for l in 1..k {
                ending[v][l] += ending[u][l - 1];
            }
        }
        for l in 0..k {
            counts[l] += ending[v][l];
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

/// Euler characteristic of the order complex; `0` for the empty space.
pub fn euler_characteristic(x: &FiniteSpace) -> i64 {
    alternating_sum(&chain_counts(x))
}

/// `χ − 1`.
pub fn reduced_euler_characteristic(x: &FiniteSpace) -> i64 {
    euler_characteristic(x) - 1
}
