use hecke_core::giambelli::{giambelli_matrix_full, giambelli_matrix_tilde};
use hecke_core::poly::{det_bareiss, det_minor_expansion, DetAlgorithm};
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    prop::collection::vec(prop::collection::vec(-30i64..30, n), n).prop_map(|rows| {
        rows.into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    })
}

proptest! {
    #[test]
    fn bareiss_matches_minor_expansion(a in matrix(4)) {
        prop_assert_eq!(det_bareiss(a.clone()), det_minor_expansion(&a));
    }

    #[test]
    fn row_swap_negates(a in matrix(4), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let mut b = a.clone();
        b.swap(i, j);
        prop_assert_eq!(det_bareiss(b), -det_bareiss(a));
    }

    #[test]
    fn repeated_row_gives_zero(a in matrix(4), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let mut b = a.clone();
        b[j] = b[i].clone();
        prop_assert_eq!(det_bareiss(b), BigInt::from(0));
    }
}

#[test]
fn symbolic_algorithms_agree() {
    for k in 1..=4 {
        let m = giambelli_matrix_full(k);
        assert_eq!(
            m.det_with(DetAlgorithm::Bareiss),
            m.det_with(DetAlgorithm::MinorExpansion)
        );
        let m = giambelli_matrix_tilde(k);
        assert_eq!(
            m.det_with(DetAlgorithm::Bareiss),
            m.det_with(DetAlgorithm::MinorExpansion)
        );
    }
}
