use proptest::prelude::*;

use apsp_core::dist::Dist;
use apsp_core::engines::{minplus, verify_witness, ProductEngine};
use apsp_core::matrix::Matrix;

fn dist_entry() -> impl Strategy<Value = Dist> {
    prop_oneof![
        3 => (0u64..=100).prop_map(Dist::finite),
        1 => Just(Dist::INF),
    ]
}

fn dist_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Dist>> {
    proptest::collection::vec(dist_entry(), rows * cols).prop_map(move |data| {
        let mut m = Matrix::new(rows, cols, Dist::ZERO).unwrap();
        for (idx, v) in data.into_iter().enumerate() {
            m.set(idx / cols, idx % cols, v);
        }
        m
    })
}

proptest! {
    #[test]
    fn text_format_round_trips(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| dist_matrix(r, c))) {
        let back: Matrix<Dist> = Matrix::parse_text(&m.to_text()).unwrap();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn distance_algebra_laws(x in 0u64..1_000_000, y in 0u64..1_000_000) {
        let (a, b) = (Dist::finite(x), Dist::finite(y));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a + Dist::INF, Dist::INF);
        prop_assert_eq!(Dist::INF.min(a), a);
        prop_assert_eq!(a.min(b).min(a), a.min(b));
    }

    #[test]
    fn engines_agree_on_arbitrary_instances(
        (a, b) in (1usize..9, 1usize..7, 1usize..9).prop_flat_map(|(n1, n2, n3)| {
            (dist_matrix(n1, n2), dist_matrix(n2, n3))
        })
    ) {
        let naive = Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).fold(Dist::INF, |acc, k| acc.min(*a.get(i, k) + *b.get(k, j)))
        });
        for engine in [ProductEngine::brute(), ProductEngine::blocked(), ProductEngine::scaled()] {
            let (c, w) = minplus(&a, &b, &engine).unwrap();
            prop_assert_eq!(&c, &naive);
            prop_assert!(verify_witness(&a, &b, &c, &w));
        }
    }
}
