//! Words over a graded alphabet: concatenation, deconcatenation, shuffles,
//! unshuffles, their half-operations and graded permutation operators.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, ParseError, Result};
use crate::linear::{bilinear, tensor, Lin, Tensor};
use crate::report::CheckReport;
use crate::scalar::Scalar;

/// A letter with a positive degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub name: char,
    pub degree: u32,
}

impl Letter {
    pub fn new(name: char, degree: u32) -> Self {
        assert!(degree >= 1, "letter degrees are positive");
        Letter { name, degree }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.degree)
    }
}

/// A word `v_1 … v_n`; the empty word is the unit `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|l| l.degree).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn prepend(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    fn tail(&self) -> Word {
        Word(self.0[1..].to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    /// `a:1 b:1 c:2`; a missing degree means 1; `1` is the empty word.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        if s.trim() == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for (col, tok) in crate::space::tokens(s) {
            let (name, degree) = match tok.split_once(':') {
                None => (tok, 1),
                Some((n, d)) => {
                    let d = d
                        .parse::<u32>()
                        .ok()
                        .filter(|&d| d >= 1)
                        .ok_or_else(|| ParseError::new(col + n.len() + 1, format!("expected a positive degree in '{tok}'")))?;
                    (n, d)
                }
            };
            let mut chars = name.chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_alphabetic() => c,
                _ => {
                    return Err(ParseError::new(
                        col,
                        format!("expected a single-letter name, found '{name}'"),
                    ))
                }
            };
            letters.push(Letter::new(letter, degree));
        }
        if letters.is_empty() {
            return Err(ParseError::new(1, "empty word must be written '1'"));
        }
        Ok(Word(letters))
    }
}

/// Linear combination of words.
pub type TensorElement = Lin<Word>;
/// Element of `T(V) ⊗ T(V)`.
pub type TensorSquare = Tensor<Word, Word>;
/// Element of `T(V)^{⊗3}`.
pub type TensorCube = Lin<(Word, Word, Word)>;

pub fn word(w: Word) -> TensorElement {
    TensorElement::basis(w)
}

pub fn concat(a: &TensorElement, b: &TensorElement) -> TensorElement {
    bilinear(a, b, |x, y| TensorElement::basis(x.concat(y)))
}

/// `Δ(v_1…v_n) = Σ_i v_1…v_i ⊗ v_{i+1}…v_n`.
pub fn deconcat(a: &TensorElement) -> TensorSquare {
    a.map_linear(|w| {
        (0..=w.len())
            .map(|i| ((Word(w.0[..i].to_vec()), Word(w.0[i..].to_vec())), Scalar::one()))
            .collect()
    })
}

fn shuffle_words(u: &Word, v: &Word) -> TensorElement {
    if u.is_empty() {
        return TensorElement::basis(v.clone());
    }
    if v.is_empty() {
        return TensorElement::basis(u.clone());
    }
    let mut out = shuffle_words(&u.tail(), v).map_basis(|w| w.prepend(u.0[0]));
    out = out + shuffle_words(u, &v.tail()).map_basis(|w| w.prepend(v.0[0]));
    out
}

pub fn shuffle(a: &TensorElement, b: &TensorElement) -> TensorElement {
    bilinear(a, b, shuffle_words)
}

fn half_shuffle_left_words(u: &Word, v: &Word) -> Result<TensorElement> {
    match (u.is_empty(), v.is_empty()) {
        (true, true) => Err(Error::UnitNotAllowed),
        (true, false) => Ok(TensorElement::zero()),
        (false, true) => Ok(TensorElement::basis(u.clone())),
        (false, false) => Ok(shuffle_words(&u.tail(), v).map_basis(|w| w.prepend(u.0[0]))),
    }
}

/// `x_1…x_n ≺ Y = x_1 (x_2…x_n ⧢ Y)`, with `x ≺ 1 = x` and `1 ≺ x = 0`.
pub fn half_shuffle_left(a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_scaled(&half_shuffle_left_words(x, y)?, &(cx * cy));
        }
    }
    Ok(out)
}

/// `x ≻ y = y ≺ x`.
pub fn half_shuffle_right(a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    half_shuffle_left(b, a)
}

fn unshuffle_word(w: &Word) -> TensorSquare {
    let n = w.len();
    let mut out = TensorSquare::zero();
    for mask in 0u64..(1u64 << n) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, &l) in w.0.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(l);
            } else {
                right.push(l);
            }
        }
        out.add_term((Word(left), Word(right)), Scalar::one());
    }
    out
}

/// `δ(w) = Σ w|_S ⊗ w|_{S^c}` over subsets `S` of positions; `δ(1) = 1 ⊗ 1`.
pub fn unshuffle(a: &TensorElement) -> TensorSquare {
    a.map_linear(unshuffle_word)
}

fn half_unshuffle_word(w: &Word, left: bool) -> Result<TensorSquare> {
    let Some(&first) = w.0.first() else {
        return Err(Error::EmptyWord);
    };
    Ok(unshuffle_word(&w.tail()).map_basis(|(x1, x2)| {
        if left {
            (x1.prepend(first), x2.clone())
        } else {
            (x1.clone(), x2.prepend(first))
        }
    }))
}

/// `δ_≺(xX) = xX_1 ⊗ X_2`.
pub fn half_unshuffle_left(a: &TensorElement) -> Result<TensorSquare> {
    let mut out = TensorSquare::zero();
    for (w, c) in a.iter() {
        out.add_scaled(&half_unshuffle_word(w, true)?, c);
    }
    Ok(out)
}

/// `δ_≻(xX) = X_1 ⊗ xX_2`.
pub fn half_unshuffle_right(a: &TensorElement) -> Result<TensorSquare> {
    let mut out = TensorSquare::zero();
    for (w, c) in a.iter() {
        out.add_scaled(&half_unshuffle_word(w, false)?, c);
    }
    Ok(out)
}

/// `Φ(σ, d)`: reorders a word of length `k` as `v_{σ(1)} … v_{σ(k)}` when
/// `deg v_{σ(i)} = d(i)` for all `i`, and kills every other word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPermutation {
    sigma: Vec<usize>,
    degrees: Vec<u32>,
}

impl GradedPermutation {
    /// `sigma` is 0-based: `sigma[i]` is `σ(i)`.
    pub fn new(sigma: Vec<usize>, degrees: Vec<u32>) -> Result<Self> {
        let k = sigma.len();
        if degrees.len() != k {
            return Err(Error::InvalidPermutation(format!(
                "{} degrees for a permutation of {k} elements",
                degrees.len()
            )));
        }
        let mut seen = vec![false; k];
        for &s in &sigma {
            if s >= k || seen[s] {
                return Err(Error::InvalidPermutation(format!("{sigma:?} is not a bijection")));
            }
            seen[s] = true;
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidPermutation("degrees must be positive".into()));
        }
        Ok(GradedPermutation { sigma, degrees })
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    fn apply_word(&self, w: &Word) -> Option<Word> {
        if w.len() != self.len() {
            return None;
        }
        let out: Vec<Letter> = self.sigma.iter().map(|&s| w.0[s]).collect();
        out.iter()
            .zip(&self.degrees)
            .all(|(l, &d)| l.degree == d)
            .then_some(Word(out))
    }
}

pub fn apply_graded_perm(p: &GradedPermutation, a: &TensorElement) -> TensorElement {
    a.map_linear(|w| match p.apply_word(w) {
        Some(v) => TensorElement::basis(v),
        None => TensorElement::zero(),
    })
}

/// `Φ(σ, d) ∘ Φ(τ, e) = Φ(τ∘σ, d)` if the lengths agree and `d = e∘σ`; otherwise the zero operator (`None`).
pub fn compose_graded_perms(p: &GradedPermutation, r: &GradedPermutation) -> Option<GradedPermutation> {
    if p.len() != r.len() {
        return None;
    }
    if (0..p.len()).any(|i| p.degrees[i] != r.degrees[p.sigma[i]]) {
        return None;
    }
    Some(GradedPermutation {
        sigma: (0..p.len()).map(|i| r.sigma[p.sigma[i]]).collect(),
        degrees: p.degrees.clone(),
    })
}

/// An endomorphism of `T(V)`, given on words.
pub type Endo = Arc<dyn Fn(&Word) -> TensorElement + Send + Sync>;

fn endo_split(f: &Endo, g: &Endo, split: &TensorSquare) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((u, v), c) in split.iter() {
        out.add_scaled(&concat(&f(u), &g(v)), c);
    }
    out
}

/// `(f ≺ g)(x) = f(x_1^≺) g(x_2^≺)`; zero on the empty word.
pub fn endo_prec(f: &Endo, g: &Endo) -> Endo {
    let (f, g) = (f.clone(), g.clone());
    Arc::new(move |w: &Word| match half_unshuffle_word(w, true) {
        Ok(split) => endo_split(&f, &g, &split),
        Err(_) => TensorElement::zero(),
    })
}

/// `(f ≻ g)(x) = f(x_1^≻) g(x_2^≻)`; zero on the empty word.
pub fn endo_succ(f: &Endo, g: &Endo) -> Endo {
    let (f, g) = (f.clone(), g.clone());
    Arc::new(move |w: &Word| match half_unshuffle_word(w, false) {
        Ok(split) => endo_split(&f, &g, &split),
        Err(_) => TensorElement::zero(),
    })
}

/// `(f ⧢ g)(x) = f(x_1) g(x_2)` over the full unshuffle, so `(f ⧢ g)(1) = f(1) g(1)`.
pub fn endo_shuffle(f: &Endo, g: &Endo) -> Endo {
    let (f, g) = (f.clone(), g.clone());
    Arc::new(move |w: &Word| endo_split(&f, &g, &unshuffle_word(w)))
}

pub fn endo_identity() -> Endo {
    Arc::new(|w: &Word| TensorElement::basis(w.clone()))
}

/// Projection onto the empty word.
pub fn endo_counit() -> Endo {
    Arc::new(|w: &Word| {
        if w.is_empty() {
            TensorElement::basis(Word::empty())
        } else {
            TensorElement::zero()
        }
    })
}

/// Projection onto single letters.
pub fn endo_projection() -> Endo {
    Arc::new(|w: &Word| {
        if w.len() == 1 {
            TensorElement::basis(w.clone())
        } else {
            TensorElement::zero()
        }
    })
}

/// The letters `a:1 b:1 c:2 d:3`.
pub fn standard_alphabet() -> Vec<Letter> {
    vec![
        Letter::new('a', 1),
        Letter::new('b', 1),
        Letter::new('c', 2),
        Letter::new('d', 3),
    ]
}

/// All words of length `0..=max_len`, shortest first.
pub fn all_words(alphabet: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |&l| w.concat(&Word::letter(l))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// A letter substitution `v ↦ s(v)` extended multiplicatively to words.
pub fn substitute(images: &[(Letter, TensorElement)], a: &TensorElement) -> TensorElement {
    a.map_linear(|w| {
        let mut out = TensorElement::basis(Word::empty());
        for l in &w.0 {
            let image = images
                .iter()
                .find(|(k, _)| k == l)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| TensorElement::basis(Word::letter(*l)));
            out = concat(&out, &image);
        }
        out
    })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn degree_maps(k: usize, values: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|d| {
                values.iter().map(move |&v| {
                    let mut e = d.clone();
                    e.push(v);
                    e
                })
            })
            .collect();
    }
    out
}

fn show(a: &TensorElement) -> String {
    if a.is_zero() {
        return "0".into();
    }
    a.iter()
        .map(|(w, c)| format!("({c})*[{w}]"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn tensor3_left(t: &TensorSquare, f: impl Fn(&Word) -> TensorSquare) -> TensorCube {
    t.map_linear(|(x, y)| f(x).map_basis(|(a, b)| (a.clone(), b.clone(), y.clone())))
}

fn tensor3_right(t: &TensorSquare, f: impl Fn(&Word) -> TensorSquare) -> TensorCube {
    t.map_linear(|(x, y)| f(y).map_basis(|(a, b)| (x.clone(), a.clone(), b.clone())))
}

fn counit_scalar(w: &Word) -> Scalar {
    if w.is_empty() {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Exhaustive checks of the shuffle, unshuffle and infinitesimal identities
/// on all words over [`standard_alphabet`] up to `max_len` letters, plus
/// graded-permutation composition and naturality (random cases drawn from `seed`).
pub fn check_tensor_identities(max_len: usize, seed: u64) -> CheckReport {
    let alphabet = standard_alphabet();
    let words = all_words(&alphabet, max_len);
    let nonempty: Vec<Word> = words.iter().filter(|w| !w.is_empty()).cloned().collect();
    let pairs: Vec<(Word, Word)> = words
        .iter()
        .flat_map(|x| {
            words
                .iter()
                .filter(move |y| x.len() + y.len() <= max_len)
                .map(move |y| (x.clone(), y.clone()))
        })
        .collect();
    let nonempty_pairs: Vec<(Word, Word)> = pairs
        .iter()
        .filter(|(x, y)| !x.is_empty() && !y.is_empty())
        .cloned()
        .collect();
    let nonempty_triples: Vec<(Word, Word, Word)> = nonempty_pairs
        .iter()
        .flat_map(|(x, y)| {
            nonempty
                .iter()
                .filter(move |z| x.len() + y.len() + z.len() <= max_len)
                .map(move |z| (x.clone(), y.clone(), z.clone()))
        })
        .collect();
    let triples: Vec<(Word, Word, Word)> = pairs
        .iter()
        .flat_map(|(x, y)| {
            words
                .iter()
                .filter(move |z| x.len() + y.len() + z.len() <= max_len)
                .map(move |z| (x.clone(), y.clone(), z.clone()))
        })
        .collect();
    let b = |w: &Word| TensorElement::basis(w.clone());

    let mut report = CheckReport::new();

    report.run("shuffle: x<y = y>x", &nonempty_pairs, |(x, y)| {
        let l = half_shuffle_left(&b(x), &b(y)).ok()?;
        let r = half_shuffle_right(&b(y), &b(x)).ok()?;
        (l != r).then(|| format!("x=[{x}] y=[{y}]"))
    });
    report.run("shuffle: (x<y)<z = x<(y sh z)", &nonempty_triples, |(x, y, z)| {
        let l = half_shuffle_left(&half_shuffle_left(&b(x), &b(y)).ok()?, &b(z)).ok()?;
        let r = half_shuffle_left(&b(x), &shuffle(&b(y), &b(z))).ok()?;
        (l != r).then(|| format!("x=[{x}] y=[{y}] z=[{z}]: {} vs {}", show(&l), show(&r)))
    });
    report.run("shuffle: sh = < + >", &nonempty_pairs, |(x, y)| {
        let l = shuffle(&b(x), &b(y));
        let r = half_shuffle_left(&b(x), &b(y)).ok()? + half_shuffle_right(&b(x), &b(y)).ok()?;
        (l != r).then(|| format!("x=[{x}] y=[{y}]"))
    });
    report.run("shuffle: commutative", &pairs, |(x, y)| {
        (shuffle(&b(x), &b(y)) != shuffle(&b(y), &b(x))).then(|| format!("x=[{x}] y=[{y}]"))
    });
    report.run("shuffle: associative", &triples, |(x, y, z)| {
        let l = shuffle(&shuffle(&b(x), &b(y)), &b(z));
        let r = shuffle(&b(x), &shuffle(&b(y), &b(z)));
        (l != r).then(|| format!("x=[{x}] y=[{y}] z=[{z}]"))
    });
    report.run(
        "shuffle bialgebra: Delta(x<y) = x1<y1 (x) x2 sh y2",
        &nonempty_pairs,
        |(x, y)| {
            let lhs = deconcat(&half_shuffle_left(&b(x), &b(y)).ok()?);
            // Expanded form: the reduced parts x', y' exclude the unit factors.
            let reduced = |w: &Word| {
                deconcat(&b(w)).filter(|(l, r)| !l.is_empty() && !r.is_empty())
            };
            let xy = half_shuffle_left(&b(x), &b(y)).ok()?;
            let one = b(&Word::empty());
            let mut rhs = tensor(&xy, &one) + tensor(&one, &xy) + tensor(&b(x), &b(y));
            for ((y1, y2), c) in reduced(y).iter() {
                rhs.add_scaled(&tensor(&half_shuffle_left(&b(x), &b(y1)).ok()?, &b(y2)), c);
            }
            for ((x1, x2), c) in reduced(x).iter() {
                rhs.add_scaled(&tensor(&half_shuffle_left(&b(x1), &b(y)).ok()?, &b(x2)), c);
                rhs.add_scaled(&tensor(&b(x1), &shuffle(&b(x2), &b(y))), c);
                for ((y1, y2), d) in reduced(y).iter() {
                    rhs.add_scaled(
                        &tensor(
                            &half_shuffle_left(&b(x1), &b(y1)).ok()?,
                            &shuffle(&b(x2), &b(y2)),
                        ),
                        &(c * d),
                    );
                }
            }
            (lhs != rhs).then(|| format!("x=[{x}] y=[{y}]"))
        },
    );

    report.run("unshuffle: d< = tau d>", &nonempty, |w| {
        let l = half_unshuffle_left(&b(w)).ok()?;
        let r = crate::linear::flip(&half_unshuffle_right(&b(w)).ok()?);
        (l != r).then(|| format!("w=[{w}]"))
    });
    report.run("unshuffle: (d< x Id) d< = (Id x d) d<", &nonempty, |w| {
        let d = half_unshuffle_left(&b(w)).ok()?;
        let l = tensor3_left(&d, |u| half_unshuffle_word(u, true).unwrap_or_default());
        let r = tensor3_right(&d, unshuffle_word);
        (l != r).then(|| format!("w=[{w}]"))
    });
    report.run("unshuffle: counit laws for d<", &nonempty, |w| {
        let d = half_unshuffle_left(&b(w)).ok()?;
        let mut left = TensorElement::zero();
        let mut right = TensorElement::zero();
        for ((u, v), c) in d.iter() {
            left.add_term(v.clone(), &counit_scalar(u) * c);
            right.add_term(u.clone(), &counit_scalar(v) * c);
        }
        (!left.is_zero() || right != b(w)).then(|| format!("w=[{w}]"))
    });
    report.run("unshuffle: d = d< + d>, cocommutative", &nonempty, |w| {
        let d = unshuffle(&b(w));
        let sum = half_unshuffle_left(&b(w)).ok()? + half_unshuffle_right(&b(w)).ok()?;
        (d != sum || crate::linear::flip(&d) != d).then(|| format!("w=[{w}]"))
    });
    report.run("unshuffle: coassociative", &words, |w| {
        let d = unshuffle(&b(w));
        (tensor3_left(&d, unshuffle_word) != tensor3_right(&d, unshuffle_word))
            .then(|| format!("w=[{w}]"))
    });
    report.run("unshuffle bialgebra: d<(x.y) = x1<.y1 (x) x2<.y2", &nonempty_pairs, |(x, y)| {
        let lhs = half_unshuffle_left(&b(&x.concat(y))).ok()?;
        let dx = half_unshuffle_left(&b(x)).ok()?;
        let dy = unshuffle(&b(y));
        let rhs = bilinear(&dx, &dy, |(x1, x2), (y1, y2)| {
            TensorSquare::basis((x1.concat(y1), x2.concat(y2)))
        });
        (lhs != rhs).then(|| format!("x=[{x}] y=[{y}]"))
    });
    report.run("duality: <a sh b, c> = <a (x) b, d(c)>", &words, |c| {
        let dc = unshuffle(&b(c));
        for ((a, bb), coeff) in dc.iter() {
            if shuffle(&b(a), &b(bb)).coefficient(c) != *coeff {
                return Some(format!("a=[{a}] b=[{bb}] c=[{c}]"));
            }
        }
        None
    });
    report.run("duality: every shuffle term pairs with d", &pairs, |(a, bb)| {
        for (c, coeff) in shuffle(&b(a), &b(bb)).iter() {
            if unshuffle(&b(c)).coefficient(&(a.clone(), bb.clone())) != *coeff {
                return Some(format!("a=[{a}] b=[{bb}] c=[{c}]"));
            }
        }
        None
    });

    report.run("deconcatenation: coassociative", &words, |w| {
        let d = deconcat(&b(w));
        let dec = |u: &Word| deconcat(&b(u));
        (tensor3_left(&d, dec) != tensor3_right(&d, dec)).then(|| format!("w=[{w}]"))
    });
    report.run("infinitesimal: D(x.y) = x.y1 (x) y2 + x1 (x) x2.y - x (x) y", &pairs, |(x, y)| {
        let lhs = deconcat(&b(&x.concat(y)));
        let mut rhs = TensorSquare::zero();
        for ((y1, y2), c) in deconcat(&b(y)).iter() {
            rhs.add_term((x.concat(y1), y2.clone()), c.clone());
        }
        for ((x1, x2), c) in deconcat(&b(x)).iter() {
            rhs.add_term((x1.clone(), x2.concat(y)), c.clone());
        }
        rhs.add_term((x.clone(), y.clone()), Scalar::constant(-1));
        (lhs != rhs).then(|| format!("x=[{x}] y=[{y}]"))
    });

    // Noncommutative shuffle identities in End(T(V)).
    let family: Vec<(&str, Endo)> = vec![
        ("Id", endo_identity()),
        ("pi", endo_projection()),
        (
            "reverse",
            Arc::new(|w: &Word| TensorElement::basis(Word(w.0.iter().rev().copied().collect()))),
        ),
        (
            "Phi",
            Arc::new(|w: &Word| {
                let swap = GradedPermutation::new(vec![1, 0], vec![1, 1]).expect("valid");
                let fix = GradedPermutation::new(vec![0], vec![2]).expect("valid");
                let x = TensorElement::basis(w.clone());
                apply_graded_perm(&swap, &x) + apply_graded_perm(&fix, &x)
            }),
        ),
    ];
    let endo_words: Vec<Word> = nonempty.iter().filter(|w| w.len() <= max_len.min(4)).cloned().collect();
    let mut endo_cases = Vec::new();
    for f in 0..family.len() {
        for g in 0..family.len() {
            for k in 0..family.len() {
                for w in &endo_words {
                    endo_cases.push((f, g, k, w.clone()));
                }
            }
        }
    }
    let ident = |name: &'static str, lhs: fn(&Endo, &Endo, &Endo) -> Endo, rhs: fn(&Endo, &Endo, &Endo) -> Endo| {
        (name, lhs, rhs)
    };
    let endo_identities = [
        ident(
            "End(T(V)): (f<g)<k = f<(g sh k)",
            |f, g, k| endo_prec(&endo_prec(f, g), k),
            |f, g, k| endo_prec(f, &endo_shuffle(g, k)),
        ),
        ident(
            "End(T(V)): (f sh g)>k = f>(g>k)",
            |f, g, k| endo_succ(&endo_shuffle(f, g), k),
            |f, g, k| endo_succ(f, &endo_succ(g, k)),
        ),
        ident(
            "End(T(V)): (f>g)<k = f>(g<k)",
            |f, g, k| endo_prec(&endo_succ(f, g), k),
            |f, g, k| endo_succ(f, &endo_prec(g, k)),
        ),
    ];
    for (name, lhs, rhs) in endo_identities {
        report.run(name, &endo_cases, |(f, g, k, w)| {
            let (ff, gg, kk) = (&family[*f].1, &family[*g].1, &family[*k].1);
            let l = lhs(ff, gg, kk)(w);
            let r = rhs(ff, gg, kk)(w);
            (l != r).then(|| {
                format!(
                    "f={} g={} k={} w=[{w}]",
                    family[*f].0, family[*g].0, family[*k].0
                )
            })
        });
    }

    report.run("Id = eps + sum pi<(pi<(...)) (truncated)", &words, |w| {
        let pi = endo_projection();
        let mut total = endo_counit()(w);
        let mut p = pi.clone();
        for _ in 0..max_len.max(1) {
            total = total + p(w);
            p = endo_prec(&pi, &p);
        }
        (total != b(w)).then(|| format!("w=[{w}]: {}", show(&total)))
    });

    // Graded permutations: composition rule against the action.
    let degree_values = [1u32, 2, 3];
    let mut perm_pairs = Vec::new();
    for k in 0..=3usize.min(max_len) {
        let perms: Vec<GradedPermutation> = permutations(k)
            .into_iter()
            .flat_map(|s| {
                degree_maps(k, &degree_values)
                    .into_iter()
                    .map(move |d| GradedPermutation::new(s.clone(), d).expect("valid"))
            })
            .collect();
        for p in &perms {
            for r in &perms {
                perm_pairs.push((p.clone(), r.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 4..=5usize.min(max_len) {
        for trial in 0..100 {
            let mut s: Vec<usize> = (0..k).collect();
            s.shuffle(&mut rng);
            let mut t: Vec<usize> = (0..k).collect();
            t.shuffle(&mut rng);
            let e: Vec<u32> = (0..k).map(|_| degree_values[rng.random_range(0..3)]).collect();
            // Half the trials satisfy d = e∘σ, so the composite is nonzero.
            let d: Vec<u32> = if trial % 2 == 0 {
                (0..k).map(|i| e[s[i]]).collect()
            } else {
                (0..k).map(|_| degree_values[rng.random_range(0..3)]).collect()
            };
            perm_pairs.push((
                GradedPermutation::new(s, d).expect("valid"),
                GradedPermutation::new(t, e).expect("valid"),
            ));
        }
    }
    let words_by_len: Vec<Vec<Word>> = (0..=max_len)
        .map(|l| words.iter().filter(|w| w.len() == l).cloned().collect())
        .collect();
    report.run("graded permutations: composition = action", &perm_pairs, |(p, r)| {
        let composite = compose_graded_perms(p, r);
        let lens = [p.len().saturating_sub(1), p.len(), p.len() + 1];
        for &l in lens.iter().filter(|&&l| l <= max_len) {
            for w in &words_by_len[l] {
                let direct = apply_graded_perm(p, &apply_graded_perm(r, &b(w)));
                let via = match &composite {
                    Some(c) => apply_graded_perm(c, &b(w)),
                    None => TensorElement::zero(),
                };
                if direct != via {
                    return Some(format!("sigma={:?} d={:?} tau={:?} e={:?} w=[{w}]", p.sigma, p.degrees, r.sigma, r.degrees));
                }
            }
        }
        None
    });

    // Naturality with respect to degree-preserving letter substitutions.
    let [a, bl, c, d] = [alphabet[0], alphabet[1], alphabet[2], alphabet[3]];
    let lw = |l: Letter| TensorElement::basis(Word::letter(l));
    let fixed = vec![
        (a, lw(a) + lw(bl).scale(&Scalar::constant(2))),
        (bl, -lw(a)),
        (c, lw(c).scale(&Scalar::constant(3))),
        (d, lw(d)),
    ];
    let mut substitutions = vec![fixed];
    for _ in 0..3 {
        let mut coef = || Scalar::constant(rng.random_range(-3..=3));
        substitutions.push(vec![
            (a, lw(a).scale(&coef()) + lw(bl).scale(&coef())),
            (bl, lw(a).scale(&coef()) + lw(bl).scale(&coef())),
            (c, lw(c).scale(&coef())),
            (d, lw(d).scale(&coef())),
        ]);
    }
    let small_perms: Vec<GradedPermutation> = (1..=3usize.min(max_len))
        .flat_map(|k| {
            permutations(k).into_iter().flat_map(move |s| {
                degree_maps(k, &degree_values)
                    .into_iter()
                    .map(move |d| GradedPermutation::new(s.clone(), d).expect("valid"))
            })
        })
        .collect();
    let natural_cases: Vec<(usize, GradedPermutation)> = (0..substitutions.len())
        .flat_map(|i| small_perms.iter().map(move |p| (i, p.clone())))
        .collect();
    report.run("graded permutations: natural in degree-preserving maps", &natural_cases, |(i, p)| {
        let s = &substitutions[*i];
        for w in words_by_len.get(p.len()).into_iter().flatten() {
            let l = apply_graded_perm(p, &substitute(s, &b(w)));
            let r = substitute(s, &apply_graded_perm(p, &b(w)));
            if l != r {
                return Some(format!("substitution #{i} sigma={:?} d={:?} w=[{w}]", p.sigma, p.degrees));
            }
        }
        None
    });

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TensorElement {
        word(s.parse().unwrap())
    }

    fn t(a: &str, b: &str) -> TensorSquare {
        TensorSquare::basis((a.parse().unwrap(), b.parse().unwrap()))
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&w("a"), &w("b")), w("a b"));
        assert_eq!(concat(&w("1"), &w("a c:2")), w("a c:2"));
        assert_eq!(concat(&(w("a") + w("b")), &w("c:2")), w("a c:2") + w("b c:2"));
    }

    #[test]
    fn deconcat_examples() {
        assert_eq!(deconcat(&w("a")), t("a", "1") + t("1", "a"));
        assert_eq!(deconcat(&w("a b")), t("a b", "1") + t("a", "b") + t("1", "a b"));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle(&w("a"), &w("b")), w("a b") + w("b a"));
        assert_eq!(half_shuffle_left(&w("a"), &w("b")).unwrap(), w("a b"));
        assert_eq!(half_shuffle_right(&w("a"), &w("b")).unwrap(), w("b a"));
        assert_eq!(half_shuffle_left(&w("a"), &w("1")).unwrap(), w("a"));
        assert!(half_shuffle_left(&w("1"), &w("a")).unwrap().is_zero());
        assert_eq!(half_shuffle_left(&w("1"), &w("1")), Err(Error::UnitNotAllowed));
    }

    #[test]
    fn unshuffle_examples() {
        assert_eq!(unshuffle(&w("a")), t("a", "1") + t("1", "a"));
        assert_eq!(half_unshuffle_left(&w("a b")).unwrap(), t("a b", "1") + t("a", "b"));
        assert_eq!(half_unshuffle_right(&w("a")).unwrap(), t("1", "a"));
        assert_eq!(half_unshuffle_left(&w("1")), Err(Error::EmptyWord));
        assert_eq!(unshuffle(&w("1")), t("1", "1"));
    }

    #[test]
    fn graded_perm_examples() {
        let id = GradedPermutation::new(vec![0, 1], vec![1, 2]).unwrap();
        assert_eq!(apply_graded_perm(&id, &w("a c:2")), w("a c:2"));
        assert!(apply_graded_perm(&id, &w("a")).is_zero());
        let swap = GradedPermutation::new(vec![1, 0], vec![2, 1]).unwrap();
        assert_eq!(apply_graded_perm(&swap, &w("a c:2")), w("c:2 a"));
        assert_eq!(compose_graded_perms(&id, &GradedPermutation::new(vec![0, 1], vec![1, 2]).unwrap()), Some(id.clone()));
        assert_eq!(
            compose_graded_perms(&swap, &id),
            Some(GradedPermutation::new(vec![1, 0], vec![2, 1]).unwrap())
        );
        let bad = GradedPermutation::new(vec![1, 0], vec![1, 2]).unwrap();
        assert_eq!(compose_graded_perms(&bad, &id), None);
        assert!(GradedPermutation::new(vec![0, 0], vec![1, 1]).is_err());
    }

    #[test]
    fn fundamental_equation_on_letters() {
        let pi = endo_projection();
        let letter: Word = "a".parse().unwrap();
        assert_eq!(endo_counit()(&letter) + pi(&letter), word(letter));
    }

    #[test]
    fn word_text() {
        let x: Word = "a b c:2".parse().unwrap();
        assert_eq!(x.to_string(), "a:1 b:1 c:2");
        assert_eq!(x.degree(), 4);
        assert_eq!(Word::empty().to_string(), "1");
        assert!("a:0".parse::<Word>().is_err());
        assert!("ab".parse::<Word>().is_err());
    }

    #[test]
    fn identities_hold_up_to_three_letters() {
        let report = check_tensor_identities(3, 7);
        assert!(report.passed(), "{report}");
    }
}
