//! The graded vector space spanned by finite spaces: products, coproduct,
//! counit, antipode and the `ζ_q` character.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::linear::{bilinear, Lin, Tensor};
use crate::scalar::Scalar;
use crate::space::{bits, FiniteSpace};

/// A formal linear combination of finite spaces.
pub type FVector = Lin<FiniteSpace>;

/// An element of `𝓕 ⊗ 𝓕`.
pub type FTensor = Tensor<FiniteSpace, FiniteSpace>;

/// Disjoint union `X · Y`.
pub fn sum_spaces(x: &FiniteSpace, y: &FiniteSpace) -> FiniteSpace {
    x.expand().disjoint_sum(&y.expand()).canonicalize()
}

/// Join `X ≻ Y`: every point of `X` strictly below every point of `Y`.
pub fn join_spaces(x: &FiniteSpace, y: &FiniteSpace) -> FiniteSpace {
    x.expand().join(&y.expand()).canonicalize()
}

pub fn product_sum(a: &FVector, b: &FVector) -> FVector {
    bilinear(a, b, |x, y| Lin::basis(sum_spaces(x, y)))
}

pub fn product_join(a: &FVector, b: &FVector) -> FVector {
    bilinear(a, b, |x, y| Lin::basis(join_spaces(x, y)))
}

/// `Δ(X) = Σ_O X|_{X∖O} ⊗ X|_O` over the open sets `O` of `X`.
pub fn coproduct_space(x: &FiniteSpace) -> FTensor {
    let all = x.class_mask();
    let mut out = FTensor::zero();
    for open in x.open_class_sets() {
        out.add_term(
            (x.restrict_classes(all & !open), x.restrict_classes(open)),
            Scalar::one(),
        );
    }
    out
}

pub fn coproduct(a: &FVector) -> FTensor {
    a.map_linear(coproduct_space)
}

/// Coefficient of the empty space.
pub fn counit(a: &FVector) -> Scalar {
    a.coefficient(&FiniteSpace::empty())
}

/// `(a ⊗ b)·(c ⊗ d) = ac ⊗ bd`.
pub fn tensor_product_sum(s: &FTensor, t: &FTensor) -> FTensor {
    bilinear(s, t, |(a, b), (c, d)| {
        Lin::basis((sum_spaces(a, c), sum_spaces(b, d)))
    })
}

/// `(a ⊗ b) ≻ (c ⊗ d) = (a ≻ c) ⊗ (b ≻ d)`.
pub fn tensor_product_join(s: &FTensor, t: &FTensor) -> FTensor {
    bilinear(s, t, |(a, b), (c, d)| {
        Lin::basis((join_spaces(a, c), join_spaces(b, d)))
    })
}

/// Antipode of the commutative Hopf algebra `(𝓕, ·, Δ)`, memoized per basis space.
#[derive(Default)]
pub struct Antipode {
    cache: HashMap<FiniteSpace, FVector>,
}

impl Antipode {
    pub fn new() -> Self {
        Antipode::default()
    }

    /// `S(1) = 1`, `S(x) = −x − Σ S(x′)·x″` over the reduced coproduct.
    pub fn of_space(&mut self, x: &FiniteSpace) -> FVector {
        if let Some(v) = self.cache.get(x) {
            return v.clone();
        }
        let result = if x.is_empty() {
            FVector::basis(FiniteSpace::empty())
        } else {
            let mut out = -FVector::basis(x.clone());
            for ((left, right), c) in coproduct_space(x).iter() {
                if left.is_empty() || right.is_empty() {
                    continue;
                }
                let s = self.of_space(left);
                let term = product_sum(&s, &FVector::basis(right.clone()));
                out.add_scaled(&term, &-c);
            }
            out
        };
        self.cache.insert(x.clone(), result.clone());
        result
    }

    pub fn apply(&mut self, a: &FVector) -> FVector {
        a.map_linear(|x| self.of_space(x))
    }
}

pub fn antipode(a: &FVector) -> FVector {
    Antipode::new().apply(a)
}

/// `ζ_q(X) = q^{#strict pairs}`, extended linearly.
pub fn zeta_q(a: &FVector) -> Scalar {
    let mut out = Scalar::zero();
    for (x, c) in a.iter() {
        let exp = u32::try_from(x.strict_pair_count()).expect("exponent fits in u32");
        out += &(c * &Scalar::q_pow(exp));
    }
    out
}

/// Connected components, sorted; their `·` product is `x`.
pub fn decompose_connected(x: &FiniteSpace) -> Result<Vec<FiniteSpace>> {
    if x.is_empty() {
        return Err(Error::EmptySpace);
    }
    let mut parts: Vec<FiniteSpace> = x
        .component_masks()
        .into_iter()
        .map(|m| x.restrict_classes(m))
        .collect();
    parts.sort();
    Ok(parts)
}

/// The maximal factorization `x = x_1 ≻ … ≻ x_k` into join-indecomposables, bottom first.
pub fn join_factors(x: &FiniteSpace) -> Result<Vec<FiniteSpace>> {
    if x.is_empty() {
        return Err(Error::EmptySpace);
    }
    // If Y ≺ Z splits x, every class of Y has fewer classes below it than
    // any class of Z, so every cut is a prefix of this ordering.
    let k = x.num_classes();
    let below = x.below_all();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| below[c].count_ones());
    let mut factors = Vec::new();
    let mut start = 0;
    let mut prefix = 0u64;
    for i in 0..k {
        prefix |= 1 << order[i];
        if i + 1 == k {
            break;
        }
        let suffix = x.class_mask() & !prefix;
        if bits(prefix).all(|c| x.above(c) & suffix == suffix) {
            let block = order[start..=i].iter().fold(0u64, |acc, &c| acc | 1 << c);
            factors.push(x.restrict_classes(block));
            start = i + 1;
        }
    }
    let block = order[start..].iter().fold(0u64, |acc, &c| acc | 1 << c);
    factors.push(x.restrict_classes(block));
    Ok(factors)
}

pub fn is_join_indecomposable(x: &FiniteSpace) -> bool {
    join_factors(x).map(|f| f.len() == 1).unwrap_or(false)
}

/// Connected and join-indecomposable.
pub fn is_irreducible(x: &FiniteSpace) -> bool {
    !x.is_empty() && x.is_connected() && is_join_indecomposable(x)
}

/// `σ`, extended linearly.
pub fn dual_vector(a: &FVector) -> FVector {
    a.map_basis(FiniteSpace::dual)
}

/// Text form of a vector: `(<scalar>) * FS ... + (<scalar>) * FS ...`, or `0`.
pub struct VectorDisplay<'a>(pub &'a FVector);

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (idx, (x, c)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) * {x}")?;
        }
        Ok(())
    }
}

/// Text form of a tensor: `(<scalar>) * FS ... (x) FS ... + ...`, or `0`.
pub struct TensorDisplay<'a>(pub &'a FTensor);

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (idx, ((x, y), c)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) * {x} (x) {y}")?;
        }
        Ok(())
    }
}

/// Split `s` at top-level `+` signs (outside parentheses), with byte offsets.
fn split_terms(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Parse `(<scalar>) * <rest>` or a bare `<rest>` (coefficient 1).
fn parse_coefficient(term: &str, offset: usize) -> std::result::Result<(Scalar, usize, &str), ParseError> {
    let lead = term.len() - term.trim_start().len();
    let body = term.trim_start();
    let Some(inner) = body.strip_prefix('(') else {
        return Ok((Scalar::one(), offset + lead, body));
    };
    let close = inner
        .find(')')
        .ok_or_else(|| ParseError::new(offset + lead + 1, "unclosed '('"))?;
    let coeff: Scalar = inner[..close]
        .parse()
        .map_err(|e: ParseError| e.offset(offset + lead + 1))?;
    let after = &inner[close + 1..];
    let after_trim = after.trim_start();
    let star_col = offset + lead + 2 + close + (after.len() - after_trim.len());
    let rest = after_trim
        .strip_prefix('*')
        .ok_or_else(|| ParseError::new(star_col + 1, "expected '*' after coefficient"))?;
    let rest_lead = rest.len() - rest.trim_start().len();
    Ok((coeff, star_col + 1 + rest_lead, rest.trim_start()))
}

pub fn parse_vector(s: &str) -> std::result::Result<FVector, ParseError> {
    if s.trim() == "0" {
        return Ok(FVector::zero());
    }
    let mut out = FVector::zero();
    for (offset, term) in split_terms(s) {
        if term.trim().is_empty() {
            return Err(ParseError::new(offset + 1, "empty term"));
        }
        let (coeff, col, rest) = parse_coefficient(term, offset)?;
        let x: FiniteSpace = rest.trim_end().parse().map_err(|e: ParseError| e.offset(col))?;
        out.add_term(x, coeff);
    }
    Ok(out)
}

pub fn parse_tensor(s: &str) -> std::result::Result<FTensor, ParseError> {
    if s.trim() == "0" {
        return Ok(FTensor::zero());
    }
    let mut out = FTensor::zero();
    for (offset, term) in split_terms(s) {
        if term.trim().is_empty() {
            return Err(ParseError::new(offset + 1, "empty term"));
        }
        let (coeff, col, rest) = parse_coefficient(term, offset)?;
        let sep = rest
            .find("(x)")
            .ok_or_else(|| ParseError::new(col, "expected '(x)' between tensor factors"))?;
        let left: FiniteSpace = rest[..sep].trim().parse().map_err(|e: ParseError| e.offset(col))?;
        let right_str = &rest[sep + 3..];
        let right_col = col + sep + 3 + (right_str.len() - right_str.trim_start().len());
        let right: FiniteSpace = right_str
            .trim()
            .parse()
            .map_err(|e: ParseError| e.offset(right_col))?;
        out.add_term((left, right), coeff);
    }
    Ok(out)
}

/// Wrapper giving [`FVector`] a `FromStr`/`Display` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorText(pub FVector);

impl FromStr for VectorText {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        parse_vector(s).map(VectorText)
    }
}

impl fmt::Display for VectorText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        VectorDisplay(&self.0).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt() -> FiniteSpace {
        FiniteSpace::point()
    }

    fn b(x: FiniteSpace) -> FVector {
        FVector::basis(x)
    }

    fn t(x: FiniteSpace, y: FiniteSpace) -> FTensor {
        FTensor::basis((x, y))
    }

    #[test]
    fn sum_examples() {
        assert_eq!(sum_spaces(&pt(), &pt()), FiniteSpace::antichain(2));
        let c2 = FiniteSpace::chain(2);
        assert_eq!(sum_spaces(&FiniteSpace::empty(), &c2), c2);
        let mixed = sum_spaces(&c2, &pt());
        assert_eq!(mixed, FiniteSpace::from_relation(vec![1; 3], &[(0, 1)]).unwrap());
        assert_eq!(mixed.size(), 3);
    }

    #[test]
    fn join_examples() {
        assert_eq!(join_spaces(&pt(), &pt()), FiniteSpace::chain(2));
        let s3 = join_spaces(&FiniteSpace::circle(), &FiniteSpace::circle());
        assert_eq!(s3.size(), 8);
        assert_eq!(s3.covers().len(), 4 + 4 + 4);
        let x = FiniteSpace::from_relation(vec![1; 3], &[(0, 1), (0, 2)]).unwrap();
        let y = FiniteSpace::chain(2);
        assert_eq!(join_spaces(&x, &y).dual(), join_spaces(&y.dual(), &x.dual()));
    }

    #[test]
    fn coproduct_examples() {
        let e = FiniteSpace::empty;
        assert_eq!(coproduct(&b(pt())), t(pt(), e()) + t(e(), pt()));
        let c2 = FiniteSpace::chain(2);
        assert_eq!(
            coproduct(&b(c2.clone())),
            t(c2.clone(), e()) + t(e(), c2) + t(pt(), pt())
        );
        let a2 = FiniteSpace::antichain(2);
        let mut expected = t(a2.clone(), e()) + t(e(), a2.clone());
        expected.add_term((pt(), pt()), Scalar::constant(2));
        assert_eq!(coproduct(&b(a2)), expected);
        assert_eq!(coproduct(&b(e())), t(e(), e()));
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&b(FiniteSpace::empty())), Scalar::one());
        assert_eq!(counit(&b(pt())), Scalar::zero());
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&b(pt())), -b(pt()));
        let expected = -b(FiniteSpace::chain(2)) + b(FiniteSpace::antichain(2));
        assert_eq!(antipode(&b(FiniteSpace::chain(2))), expected);
        assert_eq!(antipode(&b(FiniteSpace::empty())), b(FiniteSpace::empty()));
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_q(&b(FiniteSpace::chain(2))), Scalar::q());
        assert_eq!(zeta_q(&b(FiniteSpace::antichain(4))), Scalar::one());
        let weighted = FiniteSpace::weighted_chain(&[2, 3]);
        assert_eq!(zeta_q(&b(weighted)), Scalar::q_pow(6));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose_connected(&FiniteSpace::antichain(2)).unwrap(), vec![pt(), pt()]);
        let circle = FiniteSpace::circle();
        assert_eq!(decompose_connected(&circle).unwrap(), vec![circle]);
        let mixed = sum_spaces(&FiniteSpace::chain(2), &pt());
        assert_eq!(
            decompose_connected(&mixed).unwrap(),
            vec![pt(), FiniteSpace::chain(2)]
        );
        assert_eq!(decompose_connected(&FiniteSpace::empty()), Err(Error::EmptySpace));
    }

    #[test]
    fn join_factor_examples() {
        assert_eq!(join_factors(&FiniteSpace::chain(3)).unwrap(), vec![pt(), pt(), pt()]);
        let a2 = FiniteSpace::antichain(2);
        assert_eq!(join_factors(&a2).unwrap(), vec![a2]);
        let s3 = join_spaces(&FiniteSpace::circle(), &FiniteSpace::circle());
        // The circle is itself S0 ≻ S0, so the 3-sphere splits into four factors.
        let s0 = FiniteSpace::antichain(2);
        assert_eq!(join_factors(&FiniteSpace::circle()).unwrap(), vec![s0.clone(), s0.clone()]);
        let factors = join_factors(&s3).unwrap();
        assert_eq!(factors, vec![s0.clone(); 4]);
        assert_eq!(join_spaces(&factors[0], &factors[1]), FiniteSpace::circle());
        assert_eq!(join_factors(&FiniteSpace::empty()), Err(Error::EmptySpace));
    }

    #[test]
    fn text_round_trip() {
        let mut v = b(FiniteSpace::chain(2));
        v.add_term(pt(), Scalar::constant(-2) + Scalar::q());
        let text = VectorDisplay(&v).to_string();
        assert_eq!(
            text,
            "(-2 + q) * FS k=1 w=1 cov= + (1) * FS k=2 w=1,1 cov=(1,2)"
        );
        assert_eq!(parse_vector(&text).unwrap(), v);
        assert_eq!(parse_vector("FS k=1 w=2 cov=").unwrap(), b(FiniteSpace::indiscrete(2)));
        let delta = coproduct(&b(FiniteSpace::chain(2)));
        let text = TensorDisplay(&delta).to_string();
        assert_eq!(parse_tensor(&text).unwrap(), delta);
        assert!(parse_vector("(1 + ) * FS k=0 w= cov=").is_err());
    }
}
