use fintop_core::enumeration::{enumerate_spaces, spaces_up_to, for_each_topology, Limits};
use fintop_core::qsym::*;
use fintop_core::{FiniteSpace, Scalar};
use num_rational::BigRational;
use std::collections::HashSet;

/// Σ over all weakly order-preserving maps into `m` values of `q^α x^f`.
fn brute_force_phi(x: &FiniteSpace, m: usize) -> Polynomial {
    let p = x.expand();
    let n = p.len();
    let mut out = Polynomial::zero();
    for code in 0..m.pow(n as u32) {
        let mut f = vec![0usize; n];
        let mut c = code;
        for v in f.iter_mut() {
            *v = c % m;
            c /= m;
        }
        if (0..n).any(|i| (0..n).any(|j| p.le(i, j) && f[i] > f[j])) {
            continue;
        }
        let alpha = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p.lt(i, j) && f[i] == f[j])
            .count();
        let mut mono = vec![0u32; m];
        for &v in &f {
            mono[v] += 1;
        }
        out.add_term(mono, Scalar::q_pow(alpha as u32));
    }
    out
}

#[test]
fn phi_matches_brute_force_on_small_spaces() {
    for x in spaces_up_to(4).unwrap() {
        let m = x.size().max(1);
        assert_eq!(
            expand_polynomial(&phi_q_space(&x), m),
            brute_force_phi(&x, m),
            "{x}"
        );
    }
}

#[test]
fn phi_matches_brute_force_on_the_six_point_pair() {
    for x in six_point_pair() {
        assert_eq!(expand_polynomial(&phi_q_space(&x), 6), brute_force_phi(&x, 6));
    }
}

fn m(parts: &[u32]) -> QSymElement {
    monomial(parts)
}

fn qm(exp: u32, parts: &[u32]) -> QSymElement {
    monomial(parts).scale(&Scalar::q_pow(exp))
}

#[test]
fn displayed_phi_formulas() {
    for (a, b, c) in [(1u32, 1u32, 1u32), (1, 2, 3), (2, 1, 2)] {
        let pt = FiniteSpace::indiscrete;
        let tag = format!("(a,b,c)=({a},{b},{c})");

        assert_eq!(phi_q_space(&pt(a)), m(&[a]), "{tag}");

        let ab = FiniteSpace::from_relation(vec![a, b], &[(0, 1)]).unwrap();
        assert_eq!(phi_q_space(&ab), m(&[a, b]) + qm(a * b, &[a + b]), "{tag}");

        let two = FiniteSpace::weighted_antichain(&[a, b]);
        assert_eq!(phi_q_space(&two), m(&[a, b]) + m(&[b, a]) + m(&[a + b]), "{tag}");

        let chain = FiniteSpace::from_relation(vec![a, b, c], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            phi_q_space(&chain),
            m(&[a, b, c]) + qm(a * b, &[a + b, c]) + qm(b * c, &[a, b + c]) + qm(a * b + a * c + b * c, &[a + b + c]),
            "{tag}"
        );

        // a below both b and c
        let vee = FiniteSpace::from_relation(vec![a, b, c], &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(
            phi_q_space(&vee),
            m(&[a, b, c]) + m(&[a, c, b]) + m(&[a, b + c]) + qm(a * b, &[a + b, c]) + qm(a * c, &[a + c, b])
                + qm(a * b + a * c, &[a + b + c]),
            "{tag}"
        );

        // a and b both below c
        let wedge = FiniteSpace::from_relation(vec![a, b, c], &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(
            phi_q_space(&wedge),
            m(&[a, b, c]) + m(&[b, a, c]) + m(&[a + b, c]) + qm(a * c, &[b, a + c]) + qm(b * c, &[a, b + c])
                + qm(a * c + b * c, &[a + b + c]),
            "{tag}"
        );

        let chain_and_point = FiniteSpace::from_relation(vec![a, b, c], &[(0, 1)]).unwrap();
        assert_eq!(
            phi_q_space(&chain_and_point),
            m(&[a, b, c]) + m(&[a, c, b]) + m(&[c, a, b]) + m(&[a, b + c]) + m(&[a + c, b])
                + qm(a * b, &[a + b, c]) + qm(a * b, &[c, a + b]) + qm(a * b, &[a + b + c]),
            "{tag}"
        );

        let three = FiniteSpace::weighted_antichain(&[a, b, c]);
        let expected = m(&[a, b, c]) + m(&[a, c, b]) + m(&[b, a, c]) + m(&[b, c, a]) + m(&[c, a, b]) + m(&[c, b, a])
            + m(&[a + b, c]) + m(&[a + c, b]) + m(&[b + c, a])
            + m(&[a, b + c]) + m(&[b, a + c]) + m(&[c, a + b]) + m(&[a + b + c]);
        assert_eq!(phi_q_space(&three), expected, "{tag}");
    }
}

#[test]
fn leading_term_of_a_weighted_chain() {
    // The chain of indiscrete blocks a_1 < … < a_k has M_a plus shorter terms.
    for parts in [vec![1u32, 2, 1], vec![3, 1], vec![2, 2, 1, 1]] {
        let pairs: Vec<(usize, usize)> = (1..parts.len()).map(|i| (i - 1, i)).collect();
        let x = FiniteSpace::from_relation(parts.clone(), &pairs).unwrap();
        let phi = phi_q_space(&x);
        let top = Composition::new(parts.clone()).unwrap();
        assert_eq!(phi.coefficient(&top), Scalar::one());
        assert!(phi.basis_elements().all(|c| c == &top || c.len() < parts.len()));
    }
}

#[test]
fn zeta_factors_through_qsym() {
    for x in spaces_up_to(4).unwrap() {
        let z = zeta_qsym(&phi_q_space(&x));
        assert_eq!(z, Scalar::q_pow(x.strict_pair_count() as u32), "{x}");
    }
}

#[test]
fn zeta_at_zero_detects_weighted_antichains() {
    let zero = BigRational::from_integer(0.into());
    for x in spaces_up_to(4).unwrap() {
        let at_zero = zeta_qsym(&phi_q_space(&x)).eval(&zero);
        let antichain = x.strict_pair_count() == 0;
        assert_eq!(at_zero == BigRational::from_integer(1.into()), antichain, "{x}");
    }
}

#[test]
fn standard_extensions_separate_labeled_topologies() {
    for n in 1..=4 {
        let mut seen = HashSet::new();
        let mut count = 0;
        for_each_topology(n, Limits::default(), |p| {
            let mut ext = labeled_standard_extensions(p);
            ext.sort();
            assert!(seen.insert(ext), "collision at n={n}: {p}");
            count += 1;
        })
        .unwrap();
        assert_eq!(seen.len(), count);
    }
}

fn six_point_pair() -> [FiniteSpace; 2] {
    // A=0 B=1 C=2 D=3 E=4 F=5, pairs written (lower, upper).
    let left = FiniteSpace::from_relation(vec![1; 6], &[(2, 0), (3, 0), (3, 1), (4, 2), (5, 2), (5, 3)]).unwrap();
    let right = FiniteSpace::from_relation(vec![1; 6], &[(2, 0), (2, 1), (3, 1), (4, 2), (5, 2), (5, 3)]).unwrap();
    [left, right]
}

#[test]
fn six_point_pair_is_separated_by_phi() {
    let [left, right] = six_point_pair();
    assert_ne!(left, right);
    assert_eq!(standard_linear_extensions(&left).unwrap().len(), 180);
    assert_eq!(standard_linear_extensions(&right).unwrap().len(), 156);
    assert_ne!(phi_q_space(&left), phi_q_space(&right));
}

#[test]
fn phi_is_injective_on_six_point_spaces() {
    let spaces = enumerate_spaces(6).unwrap();
    let images: HashSet<QSymElement> = spaces.iter().map(phi_q_space).collect();
    assert_eq!(images.len(), spaces.len());
}

#[test]
fn seven_point_collision_at_q_equals_one() {
    let x: FiniteSpace = "FS k=7 w=1,1,1,1,1,1,1 cov=(1,3);(1,7);(2,4);(2,5);(2,6);(3,6);(4,7);(5,7)".parse().unwrap();
    let y: FiniteSpace = "FS k=7 w=1,1,1,1,1,1,1 cov=(1,3);(1,6);(2,4);(2,5);(3,7);(4,6);(5,7)".parse().unwrap();
    assert_ne!(x, y);
    let (px, py) = (phi_q_space(&x), phi_q_space(&y));
    assert_ne!(px, py);
    let one = BigRational::from_integer(1.into());
    assert_eq!(eval_q(&px, &one), eval_q(&py, &one));
    assert_eq!(standard_linear_extensions(&x).unwrap().len(), 1188);
    assert_eq!(px.len(), 64);
    let monomials = |p: &QSymElement| p.iter().map(|(_, s)| s.terms().count()).sum::<usize>();
    assert_eq!((monomials(&px), monomials(&py)), (202, 204));
}

#[test]
fn quasi_shuffle_matches_polynomials_in_six_variables() {
    let comps: Vec<Composition> = (0..=3).flat_map(Composition::all_of).collect();
    for a in &comps {
        for b in &comps {
            let (ma, mb) = (QSymElement::basis(a.clone()), QSymElement::basis(b.clone()));
            assert_eq!(
                expand_polynomial(&qsym_product(&ma, &mb), 6),
                polynomial_product(&expand_polynomial(&ma, 6), &expand_polynomial(&mb, 6)),
                "{a} {b}"
            );
        }
    }
}

#[test]
fn succ_q_keeps_the_concatenation() {
    // M_a ≻_q M_b always contains the concatenation with coefficient 1.
    let comps: Vec<Composition> = (1..=3).flat_map(Composition::all_of).collect();
    for a in &comps {
        for b in &comps {
            let s = succ_q(&QSymElement::basis(a.clone()), &QSymElement::basis(b.clone()));
            let mut cat = a.parts().to_vec();
            cat.extend(b.parts());
            assert_eq!(s.coefficient(&Composition::new(cat).unwrap()), Scalar::one());
            assert_eq!(s.len(), 2);
        }
    }
}
