//! Shared inputs for the benchmarks.

use fintop_core::algebra::join_spaces;
use fintop_core::{FiniteSpace, Preorder};

/// A fixed, labeled preorder on `n` points: `i ≤ j` when `j` is a multiple of `i`
/// (1-based), with the labels scrambled by a fixed stride.
pub fn divisibility_preorder(n: usize) -> Preorder {
    let stride = (1..n.max(2)).rev().find(|s| gcd(*s, n) == 1).unwrap_or(1);
    let label = |i: usize| (i * stride) % n;
    let mut rel = vec![vec![false; n]; n];
    for i in 1..=n {
        for j in 1..=n {
            if j % i == 0 {
                rel[label(i - 1)][label(j - 1)] = true;
            }
        }
    }
    Preorder::new(&rel).expect("divisibility is a partial order")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// The 8-point model of the 3-sphere.
pub fn sphere3() -> FiniteSpace {
    join_spaces(&FiniteSpace::circle(), &FiniteSpace::circle())
}

/// A 6-point space with many standard linear extensions.
pub fn six_point_space() -> FiniteSpace {
    FiniteSpace::from_relation(vec![1; 6], &[(2, 0), (3, 0), (3, 1), (4, 2), (5, 2), (5, 3)])
        .expect("acyclic")
}
