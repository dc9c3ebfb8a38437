//! Coefficients: polynomials in a formal parameter `q` over the integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ParseError;

/// An integer polynomial in `q`, stored sparsely (no zero coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    coeffs: BTreeMap<u32, i128>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Scalar::monomial(c, 0)
    }

    /// The parameter `q` itself.
    pub fn q() -> Self {
        Scalar::monomial(1, 1)
    }

    pub fn q_pow(exp: u32) -> Self {
        Scalar::monomial(1, exp)
    }

    pub fn monomial(coeff: i128, exp: u32) -> Self {
        let mut s = Scalar::zero();
        s.add_term(exp, coeff);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant() == Some(1)
    }

    pub fn coefficient(&self, exp: u32) -> i128 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i128)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn as_constant(&self) -> Option<i128> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => self.coeffs.get(&0).copied(),
            _ => None,
        }
    }

    fn add_term(&mut self, exp: u32, coeff: i128) {
        if coeff == 0 {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&exp);
        }
    }

    /// Evaluate at a rational value of `q`. Lossy: distinct polynomials may agree.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        // Horner from the top exponent down.
        let mut last: Option<u32> = None;
        for (&e, &c) in self.coeffs.iter().rev() {
            if let Some(prev) = last {
                acc *= pow(q, prev - e);
            }
            acc += BigRational::from_integer(BigInt::from(c));
            last = Some(e);
        }
        if let Some(e) = last {
            acc *= pow(q, e);
        }
        acc
    }
}

fn pow(base: &BigRational, exp: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

impl From<i128> for Scalar {
    fn from(c: i128) -> Self {
        Scalar::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::constant(c as i128)
    }
}

impl From<i32> for Scalar {
    fn from(c: i32) -> Self {
        Scalar::constant(c as i128)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (&e, &c) in &rhs.coeffs {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (&e, &c) in &rhs.coeffs {
            self.add_term(e, -c);
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// `c0 + c1*q + c2*q^2 ...`, increasing exponents, unit coefficients elided on `q` powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (&e, &c)) in self.coeffs.iter().enumerate() {
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}*q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, m) => write!(f, "{m}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        ScalarParser {
            chars: s.char_indices().collect(),
            pos: 0,
        }
        .parse()
    }
}

struct ScalarParser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl ScalarParser {
    fn column(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i + 1).unwrap_or_else(|| {
            self.chars.last().map(|&(i, c)| i + c.len_utf8() + 1).unwrap_or(1)
        })
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn number(&mut self) -> Option<Result<u128, ParseError>> {
        let start = self.pos;
        let col = self.column();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Some(
            digits
                .parse::<u128>()
                .map_err(|_| ParseError::new(col, "integer too large")),
        )
    }

    fn parse(mut self) -> Result<Scalar, ParseError> {
        let mut out = Scalar::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                None if first => return Err(ParseError::new(self.column(), "empty scalar")),
                None => break,
                Some('+') if !first => self.pos += 1,
                Some('-') => {
                    negative = true;
                    self.pos += 1;
                }
                Some(_) if first => {}
                Some(c) => {
                    return Err(ParseError::new(
                        self.column(),
                        format!("expected '+' or '-', found '{c}'"),
                    ))
                }
            }
            first = false;
            self.skip_ws();
            let coeff = match self.number() {
                Some(n) => Some(n?),
                None => None,
            };
            self.skip_ws();
            let mut exp = 0u32;
            let has_star = self.peek() == Some('*');
            if has_star {
                if coeff.is_none() {
                    return Err(ParseError::new(self.column(), "missing coefficient"));
                }
                self.pos += 1;
                self.skip_ws();
            }
            if self.peek() == Some('q') {
                self.pos += 1;
                exp = 1;
                self.skip_ws();
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let col = self.column();
                    exp = match self.number() {
                        Some(Ok(e)) if e <= u32::MAX as u128 => e as u32,
                        _ => return Err(ParseError::new(col, "expected exponent")),
                    };
                }
            } else if has_star || coeff.is_none() {
                return Err(ParseError::new(self.column(), "expected 'q' or a number"));
            }
            let mag = coeff.unwrap_or(1);
            let mag = i128::try_from(mag)
                .map_err(|_| ParseError::new(self.column(), "coefficient too large"))?;
            out.add_term(exp, if negative { -mag } else { mag });
        }
        Ok(out)
    }
}
