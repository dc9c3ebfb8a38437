use fintop_core::linear::flip;
use fintop_core::tensor::*;
use fintop_core::Scalar;
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = Word> {
    let alphabet = standard_alphabet();
    proptest::collection::vec(proptest::sample::select(alphabet), 0..=max).prop_map(Word)
}

fn binomial(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn total(a: &TensorElement) -> Scalar {
    a.iter().fold(Scalar::zero(), |acc, (_, c)| acc + c.clone())
}

proptest! {
    #[test]
    fn shuffle_has_binomially_many_terms(x in word(4), y in word(4)) {
        let s = shuffle(&TensorElement::basis(x.clone()), &TensorElement::basis(y.clone()));
        prop_assert_eq!(total(&s), Scalar::constant(binomial((x.len() + y.len()) as u64, x.len() as u64)));
        prop_assert!(s.basis_elements().all(|w| w.degree() == x.degree() + y.degree()));
    }

    #[test]
    fn half_shuffles_start_with_the_expected_letter(x in word(4), y in word(4)) {
        prop_assume!(!x.is_empty() && !y.is_empty());
        let l = half_shuffle_left(&TensorElement::basis(x.clone()), &TensorElement::basis(y.clone())).unwrap();
        prop_assert!(l.basis_elements().all(|w| w.0[0] == x.0[0]));
        prop_assert_eq!(total(&l), Scalar::constant(binomial((x.len() + y.len() - 1) as u64, y.len() as u64)));
    }

    #[test]
    fn unshuffle_has_two_to_the_length_terms(x in word(6)) {
        let d = unshuffle(&TensorElement::basis(x.clone()));
        let count = d.iter().fold(Scalar::zero(), |acc, (_, c)| acc + c.clone());
        prop_assert_eq!(count, Scalar::constant(1 << x.len()));
        prop_assert_eq!(flip(&d), d);
    }

    #[test]
    fn deconcatenation_undoes_concatenation(x in word(5)) {
        let d = deconcat(&TensorElement::basis(x.clone()));
        prop_assert_eq!(d.len(), x.len() + 1);
        prop_assert!(d.basis_elements().all(|(a, b)| a.concat(b) == x));
    }

    #[test]
    fn word_text_round_trips(x in word(6)) {
        prop_assert_eq!(x.to_string().parse::<Word>().unwrap(), x);
    }

    #[test]
    fn graded_permutations_compose_like_their_action(
        (sigma, tau, e, free, matched) in (1usize..=4).prop_flat_map(|k| (
            Just((0..k).collect::<Vec<usize>>()).prop_shuffle(),
            Just((0..k).collect::<Vec<usize>>()).prop_shuffle(),
            proptest::collection::vec(1u32..=3, k),
            proptest::collection::vec(1u32..=3, k),
            any::<bool>(),
        ))
    ) {
        let k = sigma.len();
        // Half the cases satisfy d = e∘σ, where the composite is nonzero.
        let d: Vec<u32> = if matched { (0..k).map(|i| e[sigma[i]]).collect() } else { free };
        let p = GradedPermutation::new(sigma, d).unwrap();
        let r = GradedPermutation::new(tau, e).unwrap();
        let composite = compose_graded_perms(&p, &r);
        for w in all_words(&standard_alphabet(), k).into_iter().filter(|w| w.len() == k) {
            let x = TensorElement::basis(w);
            let direct = apply_graded_perm(&p, &apply_graded_perm(&r, &x));
            let via = composite.as_ref().map(|c| apply_graded_perm(c, &x)).unwrap_or_default();
            prop_assert_eq!(direct, via);
        }
    }
}

#[test]
fn identity_suite_to_four_letters() {
    let report = check_tensor_identities(4, 3);
    assert!(report.passed(), "{report}");
    assert!(report.outcomes.len() >= 20);
}

#[test]
fn unit_conventions() {
    let one = TensorElement::basis(Word::empty());
    let a = TensorElement::basis("a".parse().unwrap());
    assert_eq!(half_shuffle_left(&a, &one).unwrap(), a);
    assert_eq!(half_shuffle_right(&one, &a).unwrap(), a);
    assert!(half_shuffle_left(&one, &a).unwrap().is_zero());
    assert!(half_shuffle_left(&one, &one).is_err());
    assert!(half_unshuffle_right(&one).is_err());
    assert_eq!(shuffle(&one, &one), one);
}
