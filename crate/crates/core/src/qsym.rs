//! Quasi-symmetric functions in the monomial basis and the morphism `φ_q`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::algebra::FVector;
use crate::error::{Error, ParseError, Result};
use crate::linear::{bilinear, Lin, Tensor};
use crate::scalar::Scalar;
use crate::space::{bits, down_sets, FiniteSpace, Preorder};

/// A finite sequence of positive integers.
///
/// Ordered by degree, then length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidExtension(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All compositions of `n`, in increasing order.
    pub fn all_of(n: u32) -> Vec<Composition> {
        fn rec(left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if left == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for first in 1..=left {
                cur.push(first);
                rec(left - first, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A quasi-symmetric function `Σ c_a M_a`.
pub type QSymElement = Lin<Composition>;

pub fn monomial(parts: &[u32]) -> QSymElement {
    QSymElement::basis(Composition::new(parts.to_vec()).expect("positive parts"))
}

/// A standard linear extension, as its ordered levels of classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelPartition {
    /// Class masks, lowest level first.
    pub levels: Vec<u64>,
}

impl LevelPartition {
    pub fn new(levels: Vec<u64>) -> Self {
        LevelPartition { levels }
    }

    /// Level (1-based) of each class.
    pub fn level_of(&self, k: usize) -> Vec<usize> {
        let mut out = vec![0; k];
        for (i, &l) in self.levels.iter().enumerate() {
            for c in bits(l) {
                out[c] = i + 1;
            }
        }
        out
    }

    pub fn validate(&self, x: &FiniteSpace) -> Result<()> {
        let all = x.class_mask();
        let below = x.below_all();
        let mut seen = 0u64;
        for (i, &l) in self.levels.iter().enumerate() {
            if l == 0 {
                return Err(Error::InvalidExtension(format!("level {} is empty", i + 1)));
            }
            if l & !all != 0 {
                return Err(Error::InvalidExtension(format!(
                    "level {} mentions a class outside the space",
                    i + 1
                )));
            }
            if l & seen != 0 {
                return Err(Error::InvalidExtension(format!(
                    "level {} overlaps an earlier level",
                    i + 1
                )));
            }
            seen |= l;
            if bits(seen).any(|c| below[c] & !seen != 0) {
                return Err(Error::InvalidExtension(format!(
                    "levels 1..{} do not form a down-set",
                    i + 1
                )));
            }
        }
        if seen != all {
            return Err(Error::InvalidExtension("levels do not cover every class".into()));
        }
        Ok(())
    }
}

/// Visit every standard linear extension of `x` by peeling nonempty down-sets.
pub fn for_each_standard_linear_extension(x: &FiniteSpace, mut f: impl FnMut(&LevelPartition)) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptySpace);
    }
    let below = x.below_all();
    fn rec(rest: u64, below: &[u64], levels: &mut Vec<u64>, f: &mut dyn FnMut(&LevelPartition)) {
        if rest == 0 {
            f(&LevelPartition::new(levels.clone()));
            return;
        }
        for level in down_sets(below, rest) {
            if level == 0 {
                continue;
            }
            levels.push(level);
            rec(rest & !level, below, levels, f);
            levels.pop();
        }
    }
    rec(x.class_mask(), &below, &mut Vec::new(), &mut f);
    Ok(())
}

pub fn standard_linear_extensions(x: &FiniteSpace) -> Result<Vec<LevelPartition>> {
    let mut out = Vec::new();
    for_each_standard_linear_extension(x, |l| out.push(l.clone()))?;
    out.sort();
    Ok(out)
}

/// Number of strictly comparable point pairs sharing a level.
pub fn alpha(x: &FiniteSpace, f: &LevelPartition) -> Result<u64> {
    f.validate(x)?;
    Ok(alpha_unchecked(x, f))
}

fn alpha_unchecked(x: &FiniteSpace, f: &LevelPartition) -> u64 {
    let w = x.weights();
    f.levels
        .iter()
        .map(|&l| {
            bits(l)
                .map(|c| {
                    bits(x.above(c) & l)
                        .map(|d| w[c] as u64 * w[d] as u64)
                        .sum::<u64>()
                })
                .sum::<u64>()
        })
        .sum()
}

/// Level sizes in points.
pub fn packing(x: &FiniteSpace, f: &LevelPartition) -> Result<Composition> {
    f.validate(x)?;
    Ok(packing_unchecked(x, f))
}

fn packing_unchecked(x: &FiniteSpace, f: &LevelPartition) -> Composition {
    let w = x.weights();
    Composition(
        f.levels
            .iter()
            .map(|&l| bits(l).map(|c| w[c]).sum())
            .collect(),
    )
}

/// `φ_q(X) = Σ_f q^{α(f)} M_{P(f)}` over standard linear extensions.
pub fn phi_q_space(x: &FiniteSpace) -> QSymElement {
    if x.is_empty() {
        return QSymElement::basis(Composition::empty());
    }
    let mut out = QSymElement::zero();
    for_each_standard_linear_extension(x, |f| {
        let exp = u32::try_from(alpha_unchecked(x, f)).expect("exponent fits in u32");
        out.add_term(packing_unchecked(x, f), Scalar::q_pow(exp));
    })
    .expect("nonempty space");
    out
}

pub fn phi_q(a: &FVector) -> QSymElement {
    a.map_linear(phi_q_space)
}

fn quasi_shuffle(a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
    match (a.split_first(), b.split_first()) {
        (None, _) => vec![b.to_vec()],
        (_, None) => vec![a.to_vec()],
        (Some((&x, ra)), Some((&y, rb))) => {
            let mut out = Vec::new();
            for mut w in quasi_shuffle(ra, b) {
                w.insert(0, x);
                out.push(w);
            }
            for mut w in quasi_shuffle(a, rb) {
                w.insert(0, y);
                out.push(w);
            }
            for mut w in quasi_shuffle(ra, rb) {
                w.insert(0, x + y);
                out.push(w);
            }
            out
        }
    }
}

/// Quasi-shuffle product of monomials, extended bilinearly.
pub fn qsym_product(a: &QSymElement, b: &QSymElement) -> QSymElement {
    bilinear(a, b, |x, y| {
        quasi_shuffle(&x.0, &y.0)
            .into_iter()
            .map(|w| (Composition(w), Scalar::one()))
            .collect()
    })
}

/// Deconcatenation coproduct.
pub fn qsym_coproduct(a: &QSymElement) -> Tensor<Composition, Composition> {
    a.map_linear(|c| {
        (0..=c.0.len())
            .map(|i| {
                (
                    (Composition(c.0[..i].to_vec()), Composition(c.0[i..].to_vec())),
                    Scalar::one(),
                )
            })
            .collect()
    })
}

/// `M_a ≻_q M_b = M_{a·b} + q^{a_k b_1} M_{(…, a_k + b_1, …)}`, with unit `M_∅`.
pub fn succ_q(a: &QSymElement, b: &QSymElement) -> QSymElement {
    bilinear(a, b, |x, y| {
        let (Some(&last), Some(&first)) = (x.0.last(), y.0.first()) else {
            let mut w = x.0.clone();
            w.extend(&y.0);
            return QSymElement::basis(Composition(w));
        };
        let mut concat = x.0.clone();
        concat.extend(&y.0);
        let mut merged = x.0[..x.0.len() - 1].to_vec();
        merged.push(last + first);
        merged.extend(&y.0[1..]);
        let mut out = QSymElement::basis(Composition(concat));
        out.add_term(Composition(merged), Scalar::q_pow(last * first));
        out
    })
}

/// The character `M_∅ ↦ 1`, `M_a ↦ δ_{len(a),1}`.
pub fn zeta_qsym(a: &QSymElement) -> Scalar {
    let mut out = Scalar::zero();
    for (c, s) in a.iter() {
        if c.len() <= 1 {
            out += s;
        }
    }
    out
}

/// A monomial `x_1^{e_1} … x_m^{e_m}`, by exponent vector.
pub type Monomial = Vec<u32>;

/// Polynomial in `x_1..x_m` with [`Scalar`] coefficients.
pub type Polynomial = Lin<Monomial>;

/// Truncation of `a` to the variables `x_1..x_m`.
pub fn expand_polynomial(a: &QSymElement, m: usize) -> Polynomial {
    a.map_linear(|c| {
        let mut out = Polynomial::zero();
        // Choose positions i_1 < … < i_len among m variables.
        let len = c.0.len();
        if len > m {
            return out;
        }
        let mut idx: Vec<usize> = (0..len).collect();
        loop {
            let mut mono = vec![0u32; m];
            for (p, &i) in idx.iter().enumerate() {
                mono[i] = c.0[p];
            }
            out.add_term(mono, Scalar::one());
            // Next combination.
            let mut j = len;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if idx[j] < m - len + j {
                    idx[j] += 1;
                    for t in j + 1..len {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    })
}

pub fn polynomial_product(a: &Polynomial, b: &Polynomial) -> Polynomial {
    bilinear(a, b, |x, y| {
        Polynomial::basis(x.iter().zip(y).map(|(p, q)| p + q).collect())
    })
}

/// Evaluate every coefficient at a rational `q`.
pub fn eval_q(a: &QSymElement, q: &BigRational) -> Vec<(Composition, BigRational)> {
    a.iter()
        .map(|(c, s)| (c.clone(), s.eval(q)))
        .filter(|(_, v)| *v != BigRational::default())
        .collect()
}

/// Standard linear extensions of a labeled topology, as point-to-level maps (levels 1-based).
pub fn labeled_standard_extensions(p: &Preorder) -> Vec<Vec<usize>> {
    let n = p.len();
    if n == 0 {
        return vec![Vec::new()];
    }
    let (classes, class_of) = p.classes();
    let x = p.quotient();
    let below: Vec<u64> = {
        let mut b = vec![0u64; classes.len()];
        for (c, &a) in x.above.iter().enumerate() {
            for d in bits(a) {
                b[d] |= 1 << c;
            }
        }
        b
    };
    let mut out = Vec::new();
    fn rec(rest: u64, below: &[u64], levels: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(levels.clone());
            return;
        }
        for level in down_sets(below, rest) {
            if level != 0 {
                levels.push(level);
                rec(rest & !level, below, levels, out);
                levels.pop();
            }
        }
    }
    let mut partitions = Vec::new();
    rec(crate::space::full_mask(classes.len()), &below, &mut Vec::new(), &mut partitions);
    for levels in partitions {
        let lp = LevelPartition::new(levels);
        let level_of = lp.level_of(classes.len());
        out.push((0..n).map(|i| level_of[class_of[i]]).collect());
    }
    out.sort();
    out
}

/// Text form: `(<scalar>)*M[a1,a2] + ...`, or `0`.
pub struct QSymDisplay<'a>(pub &'a QSymElement);

impl fmt::Display for QSymDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, s)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({s})*{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = ParseError;

    /// `M[a1,...]`, `M[]` for the empty composition.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let inner = s
            .strip_prefix("M[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(1, format!("expected 'M[...]', found '{s}'")))?;
        if inner.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::new();
        let mut col = 3;
        for p in inner.split(',') {
            let v: u32 = p
                .trim()
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| ParseError::new(col, format!("expected a positive part, found '{p}'")))?;
            parts.push(v);
            col += p.len() + 1;
        }
        Ok(Composition(parts))
    }
}

pub fn parse_qsym(s: &str) -> std::result::Result<QSymElement, ParseError> {
    if s.trim() == "0" {
        return Ok(QSymElement::zero());
    }
    let mut out = QSymElement::zero();
    let mut depth = 0i32;
    let mut start = 0;
    let mut terms = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                terms.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    terms.push((start, &s[start..]));
    for (offset, term) in terms {
        let lead = term.len() - term.trim_start().len();
        let body = term.trim();
        let col = offset + lead + 1;
        let (coeff, mono, mono_col) = if let Some(inner) = body.strip_prefix('(') {
            let close = inner
                .find(')')
                .ok_or_else(|| ParseError::new(col, "unclosed '('"))?;
            let coeff: Scalar = inner[..close].parse().map_err(|e: ParseError| e.offset(col))?;
            let rest = inner[close + 1..].trim_start();
            let rest = rest
                .strip_prefix('*')
                .ok_or_else(|| ParseError::new(col + close + 2, "expected '*' after coefficient"))?;
            let skipped = body.len() - rest.trim_start().len();
            (coeff, rest.trim(), col + skipped)
        } else {
            (Scalar::one(), body, col)
        };
        let c: Composition = mono.parse().map_err(|e: ParseError| e.offset(mono_col - 1))?;
        out.add_term(c, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::join_spaces;

    fn q(e: u32) -> Scalar {
        Scalar::q_pow(e)
    }

    #[test]
    fn extensions_of_small_spaces() {
        let c2 = FiniteSpace::chain(2);
        let ext = standard_linear_extensions(&c2).unwrap();
        assert_eq!(ext.len(), 2);
        assert!(ext.contains(&LevelPartition::new(vec![0b01, 0b10])));
        assert!(ext.contains(&LevelPartition::new(vec![0b11])));
        assert_eq!(standard_linear_extensions(&FiniteSpace::antichain(2)).unwrap().len(), 3);
        assert_eq!(standard_linear_extensions(&FiniteSpace::indiscrete(3)).unwrap().len(), 1);
        assert_eq!(standard_linear_extensions(&FiniteSpace::empty()), Err(Error::EmptySpace));
    }

    #[test]
    fn alpha_and_packing() {
        let x = FiniteSpace::weighted_chain(&[2, 3]);
        let one = LevelPartition::new(vec![0b11]);
        assert_eq!(alpha(&x, &one).unwrap(), 6);
        assert_eq!(packing(&x, &one).unwrap(), Composition(vec![5]));
        let two = LevelPartition::new(vec![0b01, 0b10]);
        assert_eq!(alpha(&x, &two).unwrap(), 0);
        assert_eq!(packing(&x, &two).unwrap(), Composition(vec![2, 3]));
        let upside_down = LevelPartition::new(vec![0b10, 0b01]);
        assert!(matches!(alpha(&x, &upside_down), Err(Error::InvalidExtension(_))));
    }

    #[test]
    fn phi_examples() {
        let c2 = FiniteSpace::chain(2);
        assert_eq!(phi_q_space(&c2), monomial(&[1, 1]) + monomial(&[2]).scale(&q(1)));
        let a12 = FiniteSpace::weighted_antichain(&[1, 2]);
        assert_eq!(
            phi_q_space(&a12),
            monomial(&[1, 2]) + monomial(&[2, 1]) + monomial(&[3])
        );
        let c3 = FiniteSpace::chain(3);
        let expected = monomial(&[1, 1, 1])
            + monomial(&[2, 1]).scale(&q(1))
            + monomial(&[1, 2]).scale(&q(1))
            + monomial(&[3]).scale(&q(3));
        assert_eq!(phi_q_space(&c3), expected);
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            qsym_product(&monomial(&[1]), &monomial(&[1])),
            monomial(&[1, 1]).scale(&Scalar::constant(2)) + monomial(&[2])
        );
        assert_eq!(qsym_product(&monomial(&[]), &monomial(&[2, 1])), monomial(&[2, 1]));
        assert_eq!(
            qsym_product(&monomial(&[1]), &monomial(&[2])),
            monomial(&[1, 2]) + monomial(&[2, 1]) + monomial(&[3])
        );
    }

    #[test]
    fn coproduct_examples() {
        let e = Composition::empty;
        let c = |v: &[u32]| Composition(v.to_vec());
        let d = qsym_coproduct(&monomial(&[1, 1]));
        let expected: Tensor<Composition, Composition> = [
            ((c(&[1, 1]), e()), Scalar::one()),
            ((c(&[1]), c(&[1])), Scalar::one()),
            ((e(), c(&[1, 1])), Scalar::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expected);
    }

    #[test]
    fn succ_examples() {
        assert_eq!(
            succ_q(&monomial(&[1]), &monomial(&[1])),
            monomial(&[1, 1]) + monomial(&[2]).scale(&q(1))
        );
        assert_eq!(succ_q(&monomial(&[]), &monomial(&[2])), monomial(&[2]));
        let pt = FiniteSpace::point();
        assert_eq!(
            phi_q_space(&join_spaces(&pt, &pt)),
            succ_q(&phi_q_space(&pt), &phi_q_space(&pt))
        );
    }

    #[test]
    fn polynomial_examples() {
        let p = expand_polynomial(&monomial(&[2]), 2);
        let expected: Polynomial = [(vec![2, 0], Scalar::one()), (vec![0, 2], Scalar::one())]
            .into_iter()
            .collect();
        assert_eq!(p, expected);
        assert_eq!(expand_polynomial(&monomial(&[1, 1]), 2), Polynomial::basis(vec![1, 1]));
        assert_eq!(expand_polynomial(&monomial(&[]), 3), Polynomial::basis(vec![0, 0, 0]));
        assert!(expand_polynomial(&monomial(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn text_round_trip() {
        let v = monomial(&[2, 1]).scale(&(Scalar::one() + q(2))) + monomial(&[1]);
        let text = QSymDisplay(&v).to_string();
        assert_eq!(text, "(1)*M[1] + (1 + q^2)*M[2,1]");
        assert_eq!(parse_qsym(&text).unwrap(), v);
        assert_eq!(parse_qsym("M[]").unwrap(), monomial(&[]));
        assert!(parse_qsym("(1)*M[0]").is_err());
    }

    #[test]
    fn labeled_extensions() {
        assert_eq!(
            labeled_standard_extensions(&Preorder::chain(2)),
            vec![vec![1, 1], vec![1, 2]]
        );
        assert_eq!(labeled_standard_extensions(&Preorder::discrete(2)).len(), 3);
    }
}
