//! Exhaustive and sampled verification of the algebraic structure on
//! finite spaces, of `φ_q`, and of the homotopy invariants.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    antipode, coproduct, coproduct_space, counit, dual_vector, join_spaces, product_sum,
    sum_spaces, tensor_product_join, tensor_product_sum, zeta_q, FTensor, FVector,
};
use crate::enumeration::{enumerate_spaces, spaces_up_to};
use crate::error::Result;
use crate::homotopy::{core, core_with, euler_characteristic, reduced_euler_characteristic};
use crate::linear::{flip, tensor, tensor_map, Lin};
use crate::qsym::{
    expand_polynomial, phi_q_space, polynomial_product, qsym_coproduct, qsym_product,
    succ_q, zeta_qsym, Composition, QSymElement,
};
use crate::report::CheckReport;
use crate::space::FiniteSpace;

/// A single family of identities on the algebra of finite spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `·` and `≻` associative, `·` commutative, shared unit.
    Products,
    Coassoc,
    Counit,
    /// `Δ(X·Y) = Δ(X)·Δ(Y)`.
    HopfCompat,
    /// `Δ(X≻Y) = Δ(X)≻(1⊗Y) + (X⊗1)≻Δ(Y) − X⊗Y`.
    Infinitesimal,
    Antipode,
    /// Compatibility of products and coproduct with the duality involution.
    Duality,
}

/// The groupings offered by `fintop check`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hopf,
    Infinitesimal,
    Tensor,
    Qsym,
    Homotopy,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "hopf" => Ok(Suite::Hopf),
            "infinitesimal" => Ok(Suite::Infinitesimal),
            "tensor" => Ok(Suite::Tensor),
            "qsym" => Ok(Suite::Qsym),
            "homotopy" => Ok(Suite::Homotopy),
            _ => Err(format!("unknown suite '{s}'")),
        }
    }
}

fn v(x: &FiniteSpace) -> FVector {
    FVector::basis(x.clone())
}

fn one() -> FVector {
    v(&FiniteSpace::empty())
}

/// Ordered pairs with size sum at most `max_n`.
fn pairs(spaces: &[FiniteSpace], max_n: usize) -> Vec<(FiniteSpace, FiniteSpace)> {
    let mut out = Vec::new();
    for x in spaces {
        for y in spaces {
            if x.size() + y.size() <= max_n {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

fn triples(spaces: &[FiniteSpace], max_n: usize) -> Vec<(FiniteSpace, FiniteSpace, FiniteSpace)> {
    let mut out = Vec::new();
    for (x, y) in pairs(spaces, max_n) {
        for z in spaces {
            if x.size() + y.size() + z.size() <= max_n {
                out.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    out
}

fn coproduct_left(t: &FTensor) -> Lin<(FiniteSpace, FiniteSpace, FiniteSpace)> {
    t.map_linear(|(a, b)| coproduct_space(a).map_basis(|(x, y)| (x.clone(), y.clone(), b.clone())))
}

fn coproduct_right(t: &FTensor) -> Lin<(FiniteSpace, FiniteSpace, FiniteSpace)> {
    t.map_linear(|(a, b)| coproduct_space(b).map_basis(|(x, y)| (a.clone(), x.clone(), y.clone())))
}

fn infinitesimal_rhs(x: &FiniteSpace, y: &FiniteSpace) -> FTensor {
    tensor_product_join(&coproduct(&v(x)), &tensor(&one(), &v(y)))
        + tensor_product_join(&tensor(&v(x), &one()), &coproduct(&v(y)))
        - tensor(&v(x), &v(y))
}

fn space_pair(x: &FiniteSpace, y: &FiniteSpace) -> String {
    format!("X={x} Y={y}")
}

/// Check one axiom family on every space, pair or triple of total size `≤ max_n`.
pub fn verify_axioms(max_n: usize, axiom: Axiom) -> Result<CheckReport> {
    let spaces = spaces_up_to(max_n)?;
    let mut report = CheckReport::new();
    check_axiom(&mut report, axiom, &spaces, &pairs(&spaces, max_n), max_n, "");
    Ok(report)
}

fn check_axiom(
    report: &mut CheckReport,
    axiom: Axiom,
    spaces: &[FiniteSpace],
    pairs: &[(FiniteSpace, FiniteSpace)],
    max_n: usize,
    tag: &str,
) {
    match axiom {
        Axiom::Products => {
            report.run(format!("product: commutative{tag}"), pairs, |(x, y)| {
                (sum_spaces(x, y) != sum_spaces(y, x)).then(|| space_pair(x, y))
            });
            report.run(format!("products: shared unit{tag}"), spaces, |x| {
                let e = FiniteSpace::empty();
                let ok = sum_spaces(x, &e) == *x
                    && sum_spaces(&e, x) == *x
                    && join_spaces(x, &e) == *x
                    && join_spaces(&e, x) == *x;
                (!ok).then(|| format!("X={x}"))
            });
            let triples = triples(spaces, max_n);
            report.run(format!("product: associative{tag}"), &triples, |(x, y, z)| {
                (sum_spaces(&sum_spaces(x, y), z) != sum_spaces(x, &sum_spaces(y, z)))
                    .then(|| format!("X={x} Y={y} Z={z}"))
            });
            report.run(format!("join: associative{tag}"), &triples, |(x, y, z)| {
                (join_spaces(&join_spaces(x, y), z) != join_spaces(x, &join_spaces(y, z)))
                    .then(|| format!("X={x} Y={y} Z={z}"))
            });
            report.run(format!("grading: sizes add and coproduct splits sizes{tag}"), pairs, |(x, y)| {
                let n = x.size() + y.size();
                let ok = sum_spaces(x, y).size() == n
                    && join_spaces(x, y).size() == n
                    && coproduct_space(x)
                        .basis_elements()
                        .all(|(a, b)| a.size() + b.size() == x.size());
                (!ok).then(|| space_pair(x, y))
            });
        }
        Axiom::Coassoc => {
            report.run(format!("coproduct: coassociative{tag}"), spaces, |x| {
                let d = coproduct_space(x);
                (coproduct_left(&d) != coproduct_right(&d)).then(|| format!("X={x}"))
            });
        }
        Axiom::Counit => {
            report.run(format!("coproduct: counit{tag}"), spaces, |x| {
                let d = coproduct_space(x);
                let left: FVector = tensor_map(&d, |a| FVector::term(FiniteSpace::empty(), counit(&v(a))), v)
                    .map_basis(|(_, b)| b.clone());
                let right: FVector = tensor_map(&d, v, |b| FVector::term(FiniteSpace::empty(), counit(&v(b))))
                    .map_basis(|(a, _)| a.clone());
                (left != v(x) || right != v(x)).then(|| format!("X={x}"))
            });
        }
        Axiom::HopfCompat => {
            report.run(format!("hopf: D(X.Y) = D(X).D(Y){tag}"), pairs, |(x, y)| {
                let lhs = coproduct(&product_sum(&v(x), &v(y)));
                let rhs = tensor_product_sum(&coproduct(&v(x)), &coproduct(&v(y)));
                (lhs != rhs).then(|| space_pair(x, y))
            });
            report.run(format!("hopf: counit multiplicative{tag}"), pairs, |(x, y)| {
                (counit(&product_sum(&v(x), &v(y))) != &counit(&v(x)) * &counit(&v(y)))
                    .then(|| space_pair(x, y))
            });
        }
        Axiom::Infinitesimal => {
            report.run(
                format!("infinitesimal: D(X>Y) = D(X)>(1(x)Y) + (X(x)1)>D(Y) - X(x)Y{tag}"),
                pairs,
                |(x, y)| {
                    let lhs = coproduct(&v(&join_spaces(x, y)));
                    (lhs != infinitesimal_rhs(x, y)).then(|| space_pair(x, y))
                },
            );
        }
        Axiom::Antipode => {
            report.run(format!("antipode: S * Id = Id * S = unit counit{tag}"), spaces, |x| {
                let d = coproduct_space(x);
                let expected = one().scale(&counit(&v(x)));
                let mut left = FVector::zero();
                let mut right = FVector::zero();
                for ((a, b), c) in d.iter() {
                    left.add_scaled(&product_sum(&antipode(&v(a)), &v(b)), c);
                    right.add_scaled(&product_sum(&v(a), &antipode(&v(b))), c);
                }
                (left != expected || right != expected).then(|| format!("X={x}"))
            });
        }
        Axiom::Duality => {
            report.run(format!("duality: involution{tag}"), spaces, |x| {
                (x.dual().dual() != *x).then(|| format!("X={x}"))
            });
            report.run(format!("duality: (X.Y)* = X*.Y*, (X>Y)* = Y*>X*{tag}"), pairs, |(x, y)| {
                let ok = sum_spaces(x, y).dual() == sum_spaces(&x.dual(), &y.dual())
                    && join_spaces(x, y).dual() == join_spaces(&y.dual(), &x.dual());
                (!ok).then(|| space_pair(x, y))
            });
            report.run(format!("duality: D(X*) = (s(x)s) tau D(X){tag}"), spaces, |x| {
                let lhs = coproduct(&v(&x.dual()));
                let rhs = tensor_map(&flip(&coproduct_space(x)), |a| v(&a.dual()), |b| v(&b.dual()));
                (lhs != rhs || dual_vector(&dual_vector(&v(x))) != v(x)).then(|| format!("X={x}"))
            });
        }
    }
}

/// `count` random ordered pairs of nonempty spaces whose sizes add to `size`.
pub fn random_pairs(size: usize, count: usize, seed: u64) -> Result<Vec<(FiniteSpace, FiniteSpace)>> {
    let by_size: Vec<Vec<FiniteSpace>> = (0..size).map(enumerate_spaces).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let a = rng.random_range(1..size);
            let x = by_size[a].choose(&mut rng).expect("nonempty").clone();
            let y = by_size[size - a].choose(&mut rng).expect("nonempty").clone();
            (x, y)
        })
        .collect())
}

fn hopf_suite(max_n: usize, seed: u64, infinitesimal: bool) -> Result<CheckReport> {
    let spaces = spaces_up_to(max_n)?;
    let all_pairs = pairs(&spaces, max_n);
    let mut report = CheckReport::new();
    let axioms: &[Axiom] = if infinitesimal {
        &[Axiom::Products, Axiom::Coassoc, Axiom::Counit, Axiom::Infinitesimal, Axiom::Duality]
    } else {
        &[
            Axiom::Products,
            Axiom::Coassoc,
            Axiom::Counit,
            Axiom::HopfCompat,
            Axiom::Antipode,
            Axiom::Duality,
        ]
    };
    for &axiom in axioms {
        check_axiom(&mut report, axiom, &spaces, &all_pairs, max_n, "");
    }
    // One size further, sampled.
    let next = max_n + 1;
    let sampled = random_pairs(next, 100, seed)?;
    let tag = format!(" [100 random pairs, size {next}]");
    let sampled_axiom = if infinitesimal { Axiom::Infinitesimal } else { Axiom::HopfCompat };
    check_axiom(&mut report, sampled_axiom, &[], &sampled, next, &tag);
    let products: Vec<FiniteSpace> = sampled.iter().map(|(x, y)| sum_spaces(x, y)).collect();
    let tag = format!(" [100 random spaces, size {next}]");
    check_axiom(&mut report, Axiom::Coassoc, &products, &[], next, &tag);
    check_axiom(&mut report, Axiom::Counit, &products, &[], next, &tag);
    Ok(report)
}

fn qsym_tensor(t: &FTensor) -> Lin<(Composition, Composition)> {
    tensor_map(t, phi_q_space, phi_q_space)
}

fn qsym_pair_checks(report: &mut CheckReport, pairs: &[(FiniteSpace, FiniteSpace)], tag: &str) {
    report.run(format!("phi_q: multiplicative{tag}"), pairs, |(x, y)| {
        (phi_q_space(&sum_spaces(x, y)) != qsym_product(&phi_q_space(x), &phi_q_space(y)))
            .then(|| space_pair(x, y))
    });
    report.run(format!("phi_q: phi_q(X>Y) = phi_q(X) >_q phi_q(Y){tag}"), pairs, |(x, y)| {
        (phi_q_space(&join_spaces(x, y)) != succ_q(&phi_q_space(x), &phi_q_space(y)))
            .then(|| space_pair(x, y))
    });
}

fn qsym_suite(max_n: usize, seed: u64) -> Result<CheckReport> {
    let spaces = spaces_up_to(max_n)?;
    let mut report = CheckReport::new();
    qsym_pair_checks(&mut report, &pairs(&spaces, max_n), "");
    report.run("phi_q: comultiplicative", &spaces, |x| {
        (qsym_coproduct(&phi_q_space(x)) != qsym_tensor(&coproduct_space(x))).then(|| format!("X={x}"))
    });
    report.run("zeta_q = zeta_QSym o phi_q", &spaces, |x| {
        (zeta_q(&v(x)) != zeta_qsym(&phi_q_space(x))).then(|| format!("X={x}"))
    });
    let next = max_n + 1;
    let sampled = random_pairs(next, 100, seed)?;
    qsym_pair_checks(&mut report, &sampled, &format!(" [100 random pairs, size {next}]"));
    let products: Vec<FiniteSpace> = sampled.iter().map(|(x, y)| sum_spaces(x, y)).collect();
    report.run(format!("phi_q: comultiplicative [100 random spaces, size {next}]"), &products, |x| {
        (qsym_coproduct(&phi_q_space(x)) != qsym_tensor(&coproduct_space(x))).then(|| format!("X={x}"))
    });

    let compositions: Vec<Composition> = (0..=5).flat_map(Composition::all_of).collect();
    let comp_pairs: Vec<(Composition, Composition)> = compositions
        .iter()
        .flat_map(|a| {
            compositions.iter().map(move |b| (a.clone(), b.clone()))
        })
        .collect();
    let m = |c: &Composition| QSymElement::basis(c.clone());
    report.run("quasi-shuffle = polynomial product in 5 variables", &comp_pairs, |(a, b)| {
        let lhs = expand_polynomial(&qsym_product(&m(a), &m(b)), 5);
        let rhs = polynomial_product(&expand_polynomial(&m(a), 5), &expand_polynomial(&m(b), 5));
        (lhs != rhs).then(|| format!("a={a} b={b}"))
    });
    report.run("qsym coproduct: coassociative", &compositions, |c| {
        let d = qsym_coproduct(&m(c));
        let left = d.map_linear(|(a, b)| qsym_coproduct(&m(a)).map_basis(|(x, y)| (x.clone(), y.clone(), b.clone())));
        let right = d.map_linear(|(a, b)| qsym_coproduct(&m(b)).map_basis(|(x, y)| (a.clone(), x.clone(), y.clone())));
        (left != right).then(|| format!("a={c}"))
    });
    Ok(report)
}

fn homotopy_suite(max_n: usize, seed: u64) -> Result<CheckReport> {
    let spaces = spaces_up_to(max_n)?;
    let nonempty: Vec<FiniteSpace> = spaces.iter().filter(|x| !x.is_empty()).cloned().collect();
    let mut report = CheckReport::new();

    let chains: Vec<usize> = (1..=max_n).collect();
    report.run("core(n-chain) = point", &chains, |&n| {
        (core(&FiniteSpace::chain(n)) != FiniteSpace::point()).then(|| format!("n={n}"))
    });
    let models = [
        ("circle", FiniteSpace::circle(), 0),
        ("2-sphere", FiniteSpace::sphere2(), 2),
        ("circle > circle", join_spaces(&FiniteSpace::circle(), &FiniteSpace::circle()), 0),
    ];
    report.run("models: minimal, with the expected Euler characteristic", &models, |(name, x, chi)| {
        let ok = core(x) == *x && euler_characteristic(x) == *chi;
        (!ok).then(|| format!("{name}: chi = {}", euler_characteristic(x)))
    });
    report.run("core: idempotent, homotopy invariant chi", &nonempty, |x| {
        let c = core(x);
        (core(&c) != c || euler_characteristic(&c) != euler_characteristic(x)).then(|| format!("X={x}"))
    });
    report.run("chi(X*) = chi(X)", &spaces, |x| {
        (euler_characteristic(&x.dual()) != euler_characteristic(x)).then(|| format!("X={x}"))
    });
    let nonempty_pairs: Vec<(FiniteSpace, FiniteSpace)> = pairs(&nonempty, max_n);
    report.run("reduced chi of a join: -chi~(X) chi~(Y)", &nonempty_pairs, |(x, y)| {
        let lhs = reduced_euler_characteristic(&join_spaces(x, y));
        let rhs = -reduced_euler_characteristic(x) * reduced_euler_characteristic(y);
        (lhs != rhs).then(|| space_pair(x, y))
    });
    let indexed: Vec<(usize, FiniteSpace)> = nonempty.iter().cloned().enumerate().collect();
    report.run("core: independent of removal order (50 random orders)", &indexed, |(i, x)| {
        let expected = core(x);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (*i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        for _ in 0..50 {
            let c = core_with(x, |cands| rng.random_range(0..cands.len()));
            if c != expected {
                return Some(format!("X={x}: got {c}, expected {expected}"));
            }
        }
        None
    });
    Ok(report)
}

/// Run one `fintop check` suite. For [`Suite::Tensor`], `max_n` is the word length.
pub fn run_suite(suite: Suite, max_n: usize, seed: u64) -> Result<CheckReport> {
    match suite {
        Suite::Hopf => hopf_suite(max_n, seed, false),
        Suite::Infinitesimal => hopf_suite(max_n, seed, true),
        Suite::Tensor => Ok(crate::tensor::check_tensor_identities(max_n, seed)),
        Suite::Qsym => qsym_suite(max_n, seed),
        Suite::Homotopy => homotopy_suite(max_n, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coassoc_counts_all_spaces_up_to_four() {
        let r = verify_axioms(4, Axiom::Coassoc).unwrap();
        assert!(r.passed());
        assert_eq!(r.outcomes[0].cases, 1 + 1 + 3 + 9 + 33);
    }

    #[test]
    fn infinitesimal_on_two_points() {
        let pt = FiniteSpace::point();
        assert_eq!(coproduct(&v(&join_spaces(&pt, &pt))), infinitesimal_rhs(&pt, &pt));
        assert!(verify_axioms(3, Axiom::Infinitesimal).unwrap().passed());
    }

    #[test]
    fn every_axiom_to_three() {
        for axiom in [
            Axiom::Products,
            Axiom::Coassoc,
            Axiom::Counit,
            Axiom::HopfCompat,
            Axiom::Infinitesimal,
            Axiom::Antipode,
            Axiom::Duality,
        ] {
            let r = verify_axioms(3, axiom).unwrap();
            assert!(r.passed(), "{axiom:?}: {r}");
        }
    }

    #[test]
    fn suites_pass_small() {
        for suite in [Suite::Hopf, Suite::Infinitesimal, Suite::Qsym, Suite::Homotopy] {
            let r = run_suite(suite, 3, 11).unwrap();
            assert!(r.passed(), "{suite:?}: {r}");
        }
    }
}
