//! Finite formal linear combinations over an ordered basis.

use std::collections::btree_map;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

/// A finite linear combination `Σ c_b · b` with [`Scalar`] coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of vectors. Iteration follows the basis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lin<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

/// Elements of `A ⊗ B`, keyed by basis pairs.
pub type Tensor<A, B> = Lin<(A, B)>;

impl<B: Ord> Default for Lin<B> {
    fn default() -> Self {
        Lin {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> Lin<B> {
    pub fn zero() -> Self {
        Lin::default()
    }

    pub fn basis(b: B) -> Self {
        Lin::term(b, Scalar::one())
    }

    pub fn term(b: B, coeff: Scalar) -> Self {
        let mut out = Lin::zero();
        out.add_term(b, coeff);
        out
    }

    pub fn add_term(&mut self, b: B, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += &coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `self += coeff · other`.
    pub fn add_scaled(&mut self, other: &Lin<B>, coeff: &Scalar) {
        for (b, c) in other.iter() {
            self.add_term(b.clone(), c * coeff);
        }
    }

    pub fn scale(&self, coeff: &Scalar) -> Lin<B> {
        let mut out = Lin::zero();
        out.add_scaled(self, coeff);
        out
    }

    pub fn coefficient(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Extend a basis map linearly.
    pub fn map_linear<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> Lin<C>) -> Lin<C> {
        let mut out = Lin::zero();
        for (b, c) in self.iter() {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Relabel basis elements; colliding images are summed.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> Lin<C> {
        let mut out = Lin::zero();
        for (b, c) in self.iter() {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Keep the terms whose basis element satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Lin<B> {
        Lin {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Extend a map on pairs of basis elements bilinearly.
pub fn bilinear<A, B, C>(
    a: &Lin<A>,
    b: &Lin<B>,
    mut f: impl FnMut(&A, &B) -> Lin<C>,
) -> Lin<C>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
{
    let mut out = Lin::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_scaled(&f(x, y), &(cx * cy));
        }
    }
    out
}

/// `a ⊗ b`.
pub fn tensor<A: Ord + Clone, B: Ord + Clone>(a: &Lin<A>, b: &Lin<B>) -> Tensor<A, B> {
    bilinear(a, b, |x, y| Lin::basis((x.clone(), y.clone())))
}

/// The flip `x ⊗ y ↦ y ⊗ x`.
pub fn flip<A: Ord + Clone, B: Ord + Clone>(t: &Tensor<A, B>) -> Tensor<B, A> {
    t.map_basis(|(x, y)| (y.clone(), x.clone()))
}

/// `f ⊗ g` applied to a tensor.
pub fn tensor_map<A, B, C, D>(
    t: &Tensor<A, B>,
    mut f: impl FnMut(&A) -> Lin<C>,
    mut g: impl FnMut(&B) -> Lin<D>,
) -> Tensor<C, D>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
    D: Ord + Clone,
{
    t.map_linear(|(x, y)| tensor(&f(x), &g(y)))
}

impl<B: Ord + Clone> FromIterator<(B, Scalar)> for Lin<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        let mut out = Lin::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<'a, B: Ord> IntoIterator for &'a Lin<B> {
    type Item = (&'a B, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord + Clone> Add<&Lin<B>> for &Lin<B> {
    type Output = Lin<B>;
    fn add(self, rhs: &Lin<B>) -> Lin<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<B: Ord + Clone> Add for Lin<B> {
    type Output = Lin<B>;
    fn add(mut self, rhs: Lin<B>) -> Lin<B> {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl<B: Ord + Clone> Sub<&Lin<B>> for &Lin<B> {
    type Output = Lin<B>;
    fn sub(self, rhs: &Lin<B>) -> Lin<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::constant(-1));
        out
    }
}

impl<B: Ord + Clone> Sub for Lin<B> {
    type Output = Lin<B>;
    fn sub(mut self, rhs: Lin<B>) -> Lin<B> {
        for (b, c) in rhs.terms {
            self.add_term(b, -c);
        }
        self
    }
}

impl<B: Ord + Clone> Neg for &Lin<B> {
    type Output = Lin<B>;
    fn neg(self) -> Lin<B> {
        self.scale(&Scalar::constant(-1))
    }
}

impl<B: Ord + Clone> Neg for Lin<B> {
    type Output = Lin<B>;
    fn neg(self) -> Lin<B> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_drops_terms() {
        let mut v = Lin::basis('x');
        v.add_term('y', Scalar::constant(2));
        v.add_term('x', Scalar::constant(-1));
        assert_eq!(v.len(), 1);
        assert_eq!(v.coefficient(&'y'), Scalar::constant(2));
        assert!((&v - &v).is_zero());
    }

    #[test]
    fn bilinearity() {
        let a = Lin::basis(1u8) + Lin::basis(2u8);
        let b = Lin::term(10u8, Scalar::q());
        let t = tensor(&a, &b);
        assert_eq!(t.len(), 2);
        assert_eq!(t.coefficient(&(2, 10)), Scalar::q());
        assert_eq!(flip(&t).coefficient(&(10, 1)), Scalar::q());
    }
}
