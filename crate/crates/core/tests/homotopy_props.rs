use fintop_core::algebra::join_spaces;
use fintop_core::enumeration::spaces_up_to;
use fintop_core::homotopy::*;
use fintop_core::{FiniteSpace, Preorder};
use proptest::prelude::*;

fn closure(n: usize, bits: &[bool]) -> Preorder {
    let mut rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || bits[i * n + j]).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    Preorder::new(&rel).unwrap()
}

fn space(max: usize) -> impl Strategy<Value = FiniteSpace> {
    (1usize..=max).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.25), n * n).prop_map(move |b| closure(n, &b).canonicalize())
    })
}

/// All chains (totally ordered nonempty subsets) of the class poset.
fn chains(x: &FiniteSpace) -> Vec<u64> {
    let k = x.num_classes();
    (1u64..1 << k)
        .filter(|&m| {
            (0..k).all(|i| {
                (0..k).all(|j| i == j || m >> i & 1 == 0 || m >> j & 1 == 0 || x.less(i, j) || x.less(j, i))
            })
        })
        .collect()
}

proptest! {
    #[test]
    fn facets_are_the_maximal_chains(x in space(7)) {
        let all = chains(&x);
        let mut maximal: Vec<Vec<usize>> = all
            .iter()
            .filter(|&&c| !all.iter().any(|&d| d != c && d & c == c))
            .map(|&c| (0..x.num_classes()).filter(|i| c >> i & 1 == 1).collect())
            .collect();
        maximal.sort();
        prop_assert_eq!(order_complex(&x).facets, maximal);
    }

    #[test]
    fn chain_counts_agree_with_faces(x in space(7)) {
        let mut by_size = vec![0u64; x.num_classes()];
        for c in chains(&x) {
            by_size[c.count_ones() as usize - 1] += 1;
        }
        while by_size.last() == Some(&0) {
            by_size.pop();
        }
        prop_assert_eq!(chain_counts(&x), by_size.clone());
        prop_assert_eq!(order_complex(&x).face_counts(), by_size);
        prop_assert_eq!(order_complex(&x).euler_characteristic(), euler_characteristic(&x));
    }

    #[test]
    fn core_has_no_beat_points_and_keeps_chi(x in space(7)) {
        let c = core(&x);
        prop_assert!(beat_points(&c).unwrap().is_empty());
        prop_assert_eq!(euler_characteristic(&c), euler_characteristic(&x));
        prop_assert!(c.size() <= x.size());
        prop_assert_eq!(core(&x.dual()), c.dual());
    }

    #[test]
    fn join_law_for_reduced_chi(x in space(4), y in space(4)) {
        let lhs = reduced_euler_characteristic(&join_spaces(&x, &y));
        prop_assert_eq!(lhs, -reduced_euler_characteristic(&x) * reduced_euler_characteristic(&y));
    }
}

#[test]
fn beat_points_by_definition() {
    for x in spaces_up_to(5).unwrap().into_iter().filter(FiniteSpace::is_t0) {
        let b = beat_points(&x).unwrap();
        for i in 0..x.num_classes() {
            let up = x.above(i);
            let down = x.below(i);
            let up_min = (0..x.num_classes()).any(|m| up >> m & 1 == 1 && (0..x.num_classes()).all(|j| up >> j & 1 == 0 || j == m || x.less(m, j)));
            let down_max = (0..x.num_classes()).any(|m| down >> m & 1 == 1 && (0..x.num_classes()).all(|j| down >> j & 1 == 0 || j == m || x.less(j, m)));
            assert_eq!(b.up.contains(&i), up_min, "{x} class {i}");
            assert_eq!(b.down.contains(&i), down_max, "{x} class {i}");
        }
    }
}

#[test]
fn contractible_and_spherical_models() {
    for n in 1..=6 {
        assert_eq!(core(&FiniteSpace::chain(n)), FiniteSpace::point());
    }
    let s1 = FiniteSpace::circle();
    assert_eq!(core(&s1), s1);
    assert_eq!(euler_characteristic(&s1), 0);
    assert_eq!(euler_characteristic(&FiniteSpace::sphere2()), 2);
    let s3 = join_spaces(&s1, &s1);
    assert_eq!(core(&s3), s3);
    assert_eq!(euler_characteristic(&s3), 0);
    // A cone is contractible.
    let cone = join_spaces(&s1, &FiniteSpace::point());
    assert_eq!(core(&cone), FiniteSpace::point());
}
