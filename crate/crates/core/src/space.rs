//! Finite topologies as preorders, and finite spaces as canonical weighted posets.
//!
//! A topology on `[n]` is stored through its specialization preorder:
//! `i ≤ j` iff every open set containing `i` contains `j`. Open sets are
//! exactly the up-sets of this preorder. A [`FiniteSpace`] is the
//! homeomorphism class of a topology: the quotient poset of `∼`-classes,
//! each class weighted by its cardinality, in canonical labeling.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::canon::canonical_order;
use crate::error::{Error, ParseError, Result, TopologyViolation};

/// Largest ground set (or class count) representable with bitmask rows.
pub const MAX_POINTS: usize = 64;

/// Iterate over the set bits of a mask, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All subsets `S` of `universe` closed downward inside `universe`
/// (`x ∈ S`, `y ∈ universe`, `y < x` ⇒ `y ∈ S`), where `below[x]` is the
/// strict down-set of `x`. Pass the strict up-sets to get up-sets instead.
pub(crate) fn down_sets(below: &[u64], universe: u64) -> Vec<u64> {
    let mut order: Vec<usize> = bits(universe).collect();
    order.sort_by_key(|&x| (below[x] & universe).count_ones());
    let mut out = Vec::new();
    fn rec(below: &[u64], universe: u64, order: &[usize], current: u64, out: &mut Vec<u64>) {
        match order.split_first() {
            None => out.push(current),
            Some((&x, rest)) => {
                rec(below, universe, rest, current, out);
                if below[x] & universe & !current == 0 {
                    rec(below, universe, rest, current | (1 << x), out);
                }
            }
        }
    }
    rec(below, universe, &order, 0, &mut out);
    out
}

fn transpose(rows: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; rows.len()];
    for (i, &row) in rows.iter().enumerate() {
        for j in bits(row) {
            out[j] |= 1 << i;
        }
    }
    out
}

/// An open set of a topology on `[n]`, as a characteristic vector.
///
/// Ordered by characteristic vector `(x_1, …, x_n)` lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OpenSet {
    n: usize,
    mask: u64,
}

impl OpenSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::TooLarge(n));
        }
        let mut mask = 0u64;
        for i in members {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            mask |= 1 << i;
        }
        Ok(OpenSet { n, mask })
    }

    pub(crate) fn from_mask(n: usize, mask: u64) -> Self {
        OpenSet { n, mask }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.mask >> i & 1 == 1
    }

    /// Members, 0-based, increasing.
    pub fn members(&self) -> Vec<usize> {
        bits(self.mask).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn complement(&self) -> OpenSet {
        OpenSet {
            n: self.n,
            mask: full_mask(self.n) & !self.mask,
        }
    }
}

impl Ord for OpenSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.mask.reverse_bits().cmp(&other.mask.reverse_bits()))
    }
}

impl PartialOrd for OpenSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, i) in bits(self.mask).enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// A preorder on `[n]`: `up[i]` is the set of `j` with `i ≤ j` (contains `i`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Preorder {
    up: Vec<u64>,
}

impl Preorder {
    /// Build from a relation matrix, `rel[i][j]` meaning `i ≤ j`.
    pub fn new(rel: &[Vec<bool>]) -> Result<Self> {
        let n = rel.len();
        if n > MAX_POINTS {
            return Err(Error::TooLarge(n));
        }
        let mut up = vec![0u64; n];
        for (i, row) in rel.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidPreorder(format!(
                    "row {} has length {}, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &b) in row.iter().enumerate() {
                if b {
                    up[i] |= 1 << j;
                }
            }
        }
        Preorder::from_up_sets(up)
    }

    /// Build from bitmask rows, `up[i]` = `{j : i ≤ j}`.
    pub fn from_up_sets(up: Vec<u64>) -> Result<Self> {
        let n = up.len();
        if n > MAX_POINTS {
            return Err(Error::TooLarge(n));
        }
        let all = full_mask(n);
        for (i, &row) in up.iter().enumerate() {
            if row & !all != 0 {
                return Err(Error::InvalidPreorder(format!(
                    "row {} mentions elements outside [{n}]",
                    i + 1
                )));
            }
            if row >> i & 1 == 0 {
                return Err(Error::InvalidPreorder(format!(
                    "not reflexive at {}",
                    i + 1
                )));
            }
            for j in bits(row) {
                if up[j] & !row != 0 {
                    let k = bits(up[j] & !row).next().expect("nonempty");
                    return Err(Error::InvalidPreorder(format!(
                        "not transitive: {} ≤ {} ≤ {} but not {} ≤ {}",
                        i + 1,
                        j + 1,
                        k + 1,
                        i + 1,
                        k + 1
                    )));
                }
            }
        }
        Ok(Preorder { up })
    }

    pub(crate) fn from_up_sets_unchecked(up: Vec<u64>) -> Self {
        Preorder { up }
    }

    pub fn empty() -> Self {
        Preorder { up: Vec::new() }
    }

    /// The discrete topology: no two distinct points comparable.
    pub fn discrete(n: usize) -> Self {
        Preorder {
            up: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    /// The indiscrete topology: all points equivalent.
    pub fn indiscrete(n: usize) -> Self {
        Preorder {
            up: vec![full_mask(n); n],
        }
    }

    /// The chain `1 < 2 < … < n`.
    pub fn chain(n: usize) -> Self {
        Preorder {
            up: (0..n).map(|i| full_mask(n) & !full_mask(i)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && !self.le(j, i)
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && self.le(j, i)
    }

    pub fn up_set(&self, i: usize) -> u64 {
        self.up[i]
    }

    pub fn relation_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.le(i, j)).collect())
            .collect()
    }

    pub fn is_t0(&self) -> bool {
        (0..self.len()).all(|i| bits(self.up[i]).all(|j| j == i || !self.le(j, i)))
    }

    /// The preorder whose open sets are exactly `family`.
    pub fn from_open_sets(n: usize, family: &[OpenSet]) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::TooLarge(n));
        }
        let all = full_mask(n);
        let mut masks: Vec<OpenSet> = Vec::with_capacity(family.len());
        for o in family {
            if o.mask & !all != 0 || o.n != n {
                let i = bits(o.mask & !all).next().unwrap_or(o.n.max(n));
                return Err(Error::NotATopology(TopologyViolation::ElementOutOfRange(i)));
            }
            masks.push(OpenSet::from_mask(n, o.mask));
        }
        masks.sort();
        masks.dedup();
        let present: HashSet<u64> = masks.iter().map(|o| o.mask).collect();
        if !present.contains(&0) {
            return Err(Error::NotATopology(TopologyViolation::MissingEmpty));
        }
        if !present.contains(&all) {
            return Err(Error::NotATopology(TopologyViolation::MissingWhole));
        }
        for (a_idx, a) in masks.iter().enumerate() {
            for b in &masks[a_idx + 1..] {
                if !present.contains(&(a.mask | b.mask)) {
                    return Err(Error::NotATopology(TopologyViolation::UnionEscapes(*a, *b)));
                }
                if !present.contains(&(a.mask & b.mask)) {
                    return Err(Error::NotATopology(
                        TopologyViolation::IntersectionEscapes(*a, *b),
                    ));
                }
            }
        }
        let up = (0..n)
            .map(|i| {
                masks
                    .iter()
                    .filter(|o| o.mask >> i & 1 == 1)
                    .fold(all, |acc, o| acc & o.mask)
            })
            .collect();
        Ok(Preorder { up })
    }

    /// All open sets (up-sets), sorted by characteristic vector.
    pub fn open_sets(&self) -> Vec<OpenSet> {
        let n = self.len();
        let (classes, _) = self.classes();
        let quotient = self.quotient();
        let mut out: Vec<OpenSet> = down_sets(&quotient.above, full_mask(classes.len()))
            .into_iter()
            .map(|m| OpenSet::from_mask(n, bits(m).fold(0u64, |acc, c| acc | classes[c])))
            .collect();
        out.sort();
        out
    }

    pub fn is_open(&self, mask: u64) -> bool {
        bits(mask).all(|i| self.up[i] & !mask == 0)
    }

    /// `U_x`, the smallest open set containing `x`.
    pub fn minimal_open(&self, x: usize) -> Result<OpenSet> {
        if x >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: x,
                len: self.len(),
            });
        }
        Ok(OpenSet::from_mask(self.len(), self.up[x]))
    }

    /// The induced topology on `subset`, relabeled to `[|subset|]` keeping label order.
    pub fn restrict(&self, subset: u64) -> Preorder {
        let kept: Vec<usize> = bits(subset & full_mask(self.len())).collect();
        let up = kept
            .iter()
            .map(|&i| {
                kept.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.le(i, j))
                    .fold(0u64, |acc, (p, _)| acc | 1 << p)
            })
            .collect();
        Preorder { up }
    }

    /// The dual topology (closed sets become open): the opposite preorder.
    pub fn dual(&self) -> Preorder {
        Preorder {
            up: transpose(&self.up),
        }
    }

    /// Relabel point `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Preorder {
        let mut up = vec![0u64; self.len()];
        for (i, &row) in self.up.iter().enumerate() {
            up[perm[i]] = bits(row).fold(0u64, |acc, j| acc | 1 << perm[j]);
        }
        Preorder { up }
    }

    /// Disjoint union: open sets `O ⊔ O'(+n)`.
    pub fn disjoint_sum(&self, other: &Preorder) -> Preorder {
        let n = self.len();
        let mut up = self.up.clone();
        up.extend(other.up.iter().map(|&r| r << n));
        Preorder { up }
    }

    /// Join: every point of `self` strictly below every point of `other`.
    pub fn join(&self, other: &Preorder) -> Preorder {
        let n = self.len();
        let shifted = full_mask(other.len()) << n;
        let mut up: Vec<u64> = self.up.iter().map(|&r| r | shifted).collect();
        up.extend(other.up.iter().map(|&r| r << n));
        Preorder { up }
    }

    /// `∼`-classes as masks, ordered by least element, and each point's class index.
    pub fn classes(&self) -> (Vec<u64>, Vec<usize>) {
        let n = self.len();
        let down = transpose(&self.up);
        let mut classes = Vec::new();
        let mut class_of = vec![usize::MAX; n];
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let class = self.up[i] & down[i];
            for j in bits(class) {
                class_of[j] = classes.len();
            }
            classes.push(class);
        }
        (classes, class_of)
    }

    pub(crate) fn quotient(&self) -> RawSpace {
        let (classes, class_of) = self.classes();
        let weights = classes.iter().map(|c| c.count_ones()).collect();
        let above = classes
            .iter()
            .enumerate()
            .map(|(c, &mask)| {
                let rep = mask.trailing_zeros() as usize;
                bits(self.up[rep])
                    .map(|j| class_of[j])
                    .filter(|&d| d != c)
                    .fold(0u64, |acc, d| acc | 1 << d)
            })
            .collect();
        RawSpace { weights, above }
    }

    /// The homeomorphism class of this topology.
    pub fn canonicalize(&self) -> FiniteSpace {
        self.quotient().canonical()
    }
}

impl fmt::Display for Preorder {
    /// `PRE n=<n> rel=<row-major 0/1>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PRE n={} rel=", self.len())?;
        for i in 0..self.len() {
            for j in 0..self.len() {
                write!(f, "{}", if self.le(i, j) { '1' } else { '0' })?;
            }
        }
        Ok(())
    }
}

/// Split `s` into whitespace-separated tokens with their 1-based columns.
pub(crate) fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st + 1, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st + 1, &s[st..]));
    }
    out
}

fn field<'a>(tok: Option<&(usize, &'a str)>, key: &str, eol: usize) -> std::result::Result<(usize, &'a str), ParseError> {
    match tok {
        None => Err(ParseError::new(eol, format!("missing '{key}=' field"))),
        Some(&(col, t)) => match t.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
            Some(v) => Ok((col + key.len() + 1, v)),
            None => Err(ParseError::new(col, format!("expected '{key}=', found '{t}'"))),
        },
    }
}

fn parse_count(col: usize, v: &str) -> std::result::Result<usize, ParseError> {
    v.parse::<usize>()
        .map_err(|_| ParseError::new(col, format!("expected a nonnegative integer, found '{v}'")))
}

impl FromStr for Preorder {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let toks = tokens(s);
        let eol = s.len() + 1;
        match toks.first() {
            Some((_, "PRE")) => {}
            Some(&(col, t)) => return Err(ParseError::new(col, format!("expected 'PRE', found '{t}'"))),
            None => return Err(ParseError::new(1, "expected 'PRE'")),
        }
        let (ncol, nv) = field(toks.get(1), "n", eol)?;
        let n = parse_count(ncol, nv)?;
        if n > MAX_POINTS {
            return Err(ParseError::new(ncol, format!("at most {MAX_POINTS} points supported")));
        }
        let (rcol, rv) = field(toks.get(2), "rel", eol)?;
        if let Some(&(col, t)) = toks.get(3) {
            return Err(ParseError::new(col, format!("unexpected trailing token '{t}'")));
        }
        if rv.len() != n * n {
            return Err(ParseError::new(
                rcol,
                format!("relation has {} entries, expected {}", rv.len(), n * n),
            ));
        }
        let mut up = vec![0u64; n];
        for (idx, c) in rv.chars().enumerate() {
            match c {
                '1' => up[idx / n] |= 1 << (idx % n),
                '0' => {}
                _ => return Err(ParseError::new(rcol + idx, format!("expected '0' or '1', found '{c}'"))),
            }
        }
        Preorder::from_up_sets(up).map_err(|e| ParseError::new(rcol, e.to_string()))
    }
}

/// A weighted poset in an arbitrary labeling: `above[c]` is the strict up-set of class `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RawSpace {
    pub weights: Vec<u32>,
    pub above: Vec<u64>,
}

impl RawSpace {
    pub fn below(&self) -> Vec<u64> {
        transpose(&self.above)
    }

    pub fn canonical(&self) -> FiniteSpace {
        let order = canonical_order(&self.weights, &self.above);
        let mut position = vec![0usize; order.len()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let weights = order.iter().map(|&v| self.weights[v]).collect::<Vec<_>>();
        let above = order
            .iter()
            .map(|&v| bits(self.above[v]).fold(0u64, |acc, u| acc | 1 << position[u]))
            .collect();
        FiniteSpace {
            size: weights.iter().sum(),
            weights,
            above,
        }
    }

    /// Sub-poset on the classes in `mask`, relabeled keeping index order.
    pub fn restrict(&self, mask: u64) -> RawSpace {
        let kept: Vec<usize> = bits(mask).collect();
        let weights = kept.iter().map(|&c| self.weights[c]).collect();
        let above = kept
            .iter()
            .map(|&c| {
                kept.iter()
                    .enumerate()
                    .filter(|&(_, &d)| self.above[c] >> d & 1 == 1)
                    .fold(0u64, |acc, (p, _)| acc | 1 << p)
            })
            .collect();
        RawSpace { weights, above }
    }

    /// Close a relation under transitivity and check it is a strict order.
    pub fn from_relation(weights: Vec<u32>, pairs: &[(usize, usize)]) -> Result<RawSpace> {
        let k = weights.len();
        if k > MAX_POINTS {
            return Err(Error::TooLarge(k));
        }
        if let Some(&w) = weights.iter().find(|&&w| w == 0) {
            return Err(Error::InvalidOrder(format!("class weight {w} must be positive")));
        }
        let mut above = vec![0u64; k];
        for &(i, j) in pairs {
            let bad = if i >= k { i } else { j };
            if i >= k || j >= k {
                return Err(Error::IndexOutOfRange { index: bad, len: k });
            }
            above[i] |= 1 << j;
        }
        for m in 0..k {
            for i in 0..k {
                if above[i] >> m & 1 == 1 {
                    above[i] |= above[m];
                }
            }
        }
        if let Some(i) = (0..k).find(|&i| above[i] >> i & 1 == 1) {
            return Err(Error::InvalidOrder(format!(
                "class {} lies on a cycle",
                i + 1
            )));
        }
        Ok(RawSpace { weights, above })
    }
}

/// A finite space: the homeomorphism class of a finite topology.
///
/// Stored as the quotient poset of equivalence classes in canonical
/// labeling, so two topologies are homeomorphic iff their `FiniteSpace`
/// values are equal. `above[c]` is the strict up-set of class `c`; weights
/// are class cardinalities. The empty space is the unit `1`.
///
/// Ordered by size first, then by the canonical encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSpace {
    size: u32,
    weights: Vec<u32>,
    above: Vec<u64>,
}

impl FiniteSpace {
    pub fn empty() -> Self {
        FiniteSpace {
            size: 0,
            weights: Vec::new(),
            above: Vec::new(),
        }
    }

    pub fn point() -> Self {
        FiniteSpace::indiscrete(1)
    }

    /// One class of `w` equivalent points.
    pub fn indiscrete(w: u32) -> Self {
        if w == 0 {
            return FiniteSpace::empty();
        }
        FiniteSpace {
            size: w,
            weights: vec![w],
            above: vec![0],
        }
    }

    /// The `k`-chain of single points.
    pub fn chain(k: usize) -> Self {
        FiniteSpace::weighted_chain(&vec![1; k])
    }

    /// A chain of classes, bottom first.
    pub fn weighted_chain(weights: &[u32]) -> Self {
        let pairs: Vec<(usize, usize)> = (1..weights.len()).map(|i| (i - 1, i)).collect();
        FiniteSpace::from_relation(weights.to_vec(), &pairs).expect("a chain is an order")
    }

    /// The discrete space on `k` points.
    pub fn antichain(k: usize) -> Self {
        FiniteSpace::weighted_antichain(&vec![1; k])
    }

    pub fn weighted_antichain(weights: &[u32]) -> Self {
        FiniteSpace::from_relation(weights.to_vec(), &[]).expect("an antichain is an order")
    }

    /// Minimal finite model of the circle: two points, each below two others.
    pub fn circle() -> Self {
        FiniteSpace::from_relation(vec![1; 4], &[(0, 2), (0, 3), (1, 2), (1, 3)])
            .expect("valid order")
    }

    /// Minimal finite model of the 2-sphere: three levels of two points.
    pub fn sphere2() -> Self {
        FiniteSpace::from_relation(
            vec![1; 6],
            &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5)],
        )
        .expect("valid order")
    }

    /// Build from class weights and pairs `(i, j)` meaning class `i` < class `j`
    /// (0-based); the relation is transitively closed, then canonicalized.
    pub fn from_relation(weights: Vec<u32>, pairs: &[(usize, usize)]) -> Result<Self> {
        Ok(RawSpace::from_relation(weights, pairs)?.canonical())
    }

    /// Build from a Hasse diagram given by covering pairs.
    pub fn from_covers(weights: Vec<u32>, covers: &[(usize, usize)]) -> Result<Self> {
        FiniteSpace::from_relation(weights, covers)
    }

    pub(crate) fn raw(&self) -> RawSpace {
        RawSpace {
            weights: self.weights.clone(),
            above: self.above.clone(),
        }
    }

    /// Number of points.
    pub fn size(&self) -> usize {
        self.size as usize
    }

    /// Number of equivalence classes.
    pub fn num_classes(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Class `i` strictly below class `j`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i] >> j & 1 == 1
    }

    /// Strict up-set of class `i`.
    pub fn above(&self, i: usize) -> u64 {
        self.above[i]
    }

    /// Strict down-set of class `i`.
    pub fn below(&self, i: usize) -> u64 {
        (0..self.num_classes())
            .filter(|&j| self.less(j, i))
            .fold(0u64, |acc, j| acc | 1 << j)
    }

    pub fn below_all(&self) -> Vec<u64> {
        transpose(&self.above)
    }

    pub fn above_all(&self) -> &[u64] {
        &self.above
    }

    pub fn class_mask(&self) -> u64 {
        full_mask(self.num_classes())
    }

    /// Hasse diagram edges `(i, j)`, `i` covered by `j`, 0-based, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let below = self.below_all();
        let mut out = Vec::new();
        for i in 0..self.num_classes() {
            for j in bits(self.above[i]) {
                if self.above[i] & below[j] == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// T0 means every class is a single point.
    pub fn is_t0(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Forget class weights (the T0 quotient).
    pub fn t0_quotient(&self) -> FiniteSpace {
        RawSpace {
            weights: vec![1; self.num_classes()],
            above: self.above.clone(),
        }
        .canonical()
    }

    /// Standard representative on `[n]`: classes take consecutive labels in canonical order.
    pub fn expand(&self) -> Preorder {
        let mut offsets = Vec::with_capacity(self.num_classes());
        let mut next = 0usize;
        for &w in &self.weights {
            offsets.push(next);
            next += w as usize;
        }
        let class_points =
            |c: usize| full_mask(offsets[c] + self.weights[c] as usize) & !full_mask(offsets[c]);
        let mut up = Vec::with_capacity(next);
        for c in 0..self.num_classes() {
            let row = bits(self.above[c]).fold(class_points(c), |acc, d| acc | class_points(d));
            for _ in 0..self.weights[c] {
                up.push(row);
            }
        }
        Preorder::from_up_sets_unchecked(up)
    }

    /// The dual space: Hasse diagram turned upside down.
    pub fn dual(&self) -> FiniteSpace {
        RawSpace {
            weights: self.weights.clone(),
            above: self.below_all(),
        }
        .canonical()
    }

    /// The subspace on a set of classes (a class-saturated subset of points).
    pub fn restrict_classes(&self, mask: u64) -> FiniteSpace {
        self.raw().restrict(mask).canonical()
    }

    /// Open sets of the quotient: up-sets of classes, as class masks.
    pub fn open_class_sets(&self) -> Vec<u64> {
        down_sets(&self.above, self.class_mask())
    }

    /// Down-sets of classes (complements of open sets).
    pub fn closed_class_sets(&self) -> Vec<u64> {
        down_sets(&self.below_all(), self.class_mask())
    }

    /// `Σ_{c < d} w_c · w_d`: the number of strictly comparable point pairs.
    pub fn strict_pair_count(&self) -> u64 {
        (0..self.num_classes())
            .map(|c| {
                bits(self.above[c])
                    .map(|d| self.weights[c] as u64 * self.weights[d] as u64)
                    .sum::<u64>()
            })
            .sum()
    }

    /// Connected components as class masks, ordered by least class.
    pub fn component_masks(&self) -> Vec<u64> {
        let k = self.num_classes();
        let below = self.below_all();
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..k {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let next = bits(frontier).fold(0u64, |acc, c| acc | self.above[c] | below[c]);
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_masks().len() == 1
    }
}

impl fmt::Display for FiniteSpace {
    /// `FS k=<k> w=<w1,...,wk> cov=<(i,j);...>`, 1-based class indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FS k={} w=", self.num_classes())?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, " cov=")?;
        for (idx, (i, j)) in self.covers().into_iter().enumerate() {
            if idx > 0 {
                write!(f, ";")?;
            }
            write!(f, "({},{})", i + 1, j + 1)?;
        }
        Ok(())
    }
}

impl FromStr for FiniteSpace {
    type Err = ParseError;

    /// Accepts any labeling; the result is canonicalized.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let toks = tokens(s);
        let eol = s.len() + 1;
        match toks.first() {
            Some((_, "FS")) => {}
            Some(&(col, t)) => return Err(ParseError::new(col, format!("expected 'FS', found '{t}'"))),
            None => return Err(ParseError::new(1, "expected 'FS'")),
        }
        let (kcol, kv) = field(toks.get(1), "k", eol)?;
        let k = parse_count(kcol, kv)?;
        if k > MAX_POINTS {
            return Err(ParseError::new(kcol, format!("at most {MAX_POINTS} classes supported")));
        }
        let (wcol, wv) = field(toks.get(2), "w", eol)?;
        let mut weights = Vec::new();
        if !wv.is_empty() {
            let mut col = wcol;
            for part in wv.split(',') {
                let w = part
                    .parse::<u32>()
                    .ok()
                    .filter(|&w| w > 0)
                    .ok_or_else(|| ParseError::new(col, format!("expected a positive weight, found '{part}'")))?;
                weights.push(w);
                col += part.len() + 1;
            }
        }
        if weights.len() != k {
            return Err(ParseError::new(
                wcol,
                format!("{} weights given for k={k}", weights.len()),
            ));
        }
        let (ccol, cv) = field(toks.get(3), "cov", eol)?;
        if let Some(&(col, t)) = toks.get(4) {
            return Err(ParseError::new(col, format!("unexpected trailing token '{t}'")));
        }
        let mut pairs = Vec::new();
        if !cv.is_empty() {
            let mut col = ccol;
            for part in cv.split(';') {
                let bad = || ParseError::new(col, format!("expected '(i,j)', found '{part}'"));
                let inner = part
                    .strip_prefix('(')
                    .and_then(|p| p.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().parse().map_err(|_| bad())?;
                if a == 0 || b == 0 || a > k || b > k {
                    return Err(ParseError::new(col, format!("class index out of range in '{part}'")));
                }
                pairs.push((a - 1, b - 1));
                col += part.len() + 1;
            }
        }
        FiniteSpace::from_relation(weights, &pairs).map_err(|e| ParseError::new(ccol, e.to_string()))
    }
}
