//! Canonical labeling of weighted posets.
//!
//! Classic individualization/refinement: vertices are colored by
//! `(weight, #below, #above)`, colors are refined until equitable, and the
//! first non-singleton cell is split by individualizing each of its members
//! in turn. Every leaf of the search tree is a discrete coloring, i.e. a
//! labeling; the canonical labeling is the leaf whose order matrix is
//! lexicographically greatest (read row-major, a `1` in row `p`, column `r`
//! meaning position `p` lies strictly below position `r`).
//!
//! Colors are ranks of isomorphism-invariant signatures, so the set of
//! leaves is invariant under relabeling of the input. Twins (same weight,
//! same strict up- and down-sets) are interchangeable by an automorphism
//! fixing everything else, so only one twin per cell is ever branched on.

use crate::space::bits;

struct Poset<'a> {
    weights: &'a [u32],
    above: &'a [u64],
    below: Vec<u64>,
}

impl Poset<'_> {
    fn twins(&self, u: usize, v: usize) -> bool {
        self.weights[u] == self.weights[v]
            && self.above[u] == self.above[v]
            && self.below[u] == self.below[v]
    }

    fn initial_colors(&self) -> Vec<u32> {
        let sigs: Vec<(u32, u32, u32)> = (0..self.weights.len())
            .map(|v| {
                (
                    self.weights[v],
                    self.below[v].count_ones(),
                    self.above[v].count_ones(),
                )
            })
            .collect();
        rank(&sigs)
    }

    /// Refine to an equitable coloring; returns the number of colors.
    fn refine(&self, colors: &mut Vec<u32>) -> usize {
        let mut count = distinct(colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..colors.len())
                .map(|v| {
                    let mut down: Vec<u32> = bits(self.below[v]).map(|u| colors[u]).collect();
                    let mut up: Vec<u32> = bits(self.above[v]).map(|u| colors[u]).collect();
                    down.sort_unstable();
                    up.sort_unstable();
                    (colors[v], down, up)
                })
                .collect();
            let next = rank(&sigs);
            let next_count = distinct(&next);
            *colors = next;
            if next_count == count {
                return count;
            }
            count = next_count;
        }
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(s).expect("signature present") as u32)
        .collect()
}

fn distinct(colors: &[u32]) -> usize {
    let mut seen = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

struct Search<'a> {
    poset: Poset<'a>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn leaf_key(&self, order: &[usize]) -> Vec<u64> {
        let k = order.len();
        let mut position = vec![0usize; k];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        order
            .iter()
            .map(|&v| {
                bits(self.poset.above[v]).fold(0u64, |row, u| row | (1u64 << (63 - position[u])))
            })
            .collect()
    }

    fn visit(&mut self, mut colors: Vec<u32>) {
        let k = colors.len();
        let count = self.poset.refine(&mut colors);
        if count == k {
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by_key(|&v| colors[v]);
            let key = self.leaf_key(&order);
            let better = match &self.best {
                None => true,
                Some((best, _)) => key > *best,
            };
            if better {
                self.best = Some((key, order));
            }
            return;
        }
        // Smallest color with a non-singleton cell.
        let mut sizes = vec![0usize; k];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("non-discrete") as u32;
        let cell: Vec<usize> = (0..k).filter(|&v| colors[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&t| self.poset.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let split: Vec<(u32, bool)> = (0..k).map(|u| (colors[u], u != v)).collect();
            self.visit(rank(&split));
        }
    }
}

/// Returns the canonical order of vertices: `order[p]` is the vertex placed at position `p`.
///
/// `above[v]` is the strict up-set of `v` as a bitmask; it must be a strict
/// partial order (irreflexive, transitive).
pub(crate) fn canonical_order(weights: &[u32], above: &[u64]) -> Vec<usize> {
    let k = weights.len();
    if k == 0 {
        return Vec::new();
    }
    let mut below = vec![0u64; k];
    for (v, &up) in above.iter().enumerate() {
        for u in bits(up) {
            below[u] |= 1 << v;
        }
    }
    let poset = Poset {
        weights,
        above,
        below,
    };
    let initial = poset.initial_colors();
    let mut search = Search { poset, best: None };
    search.visit(initial);
    search.best.expect("at least one leaf").1
}
