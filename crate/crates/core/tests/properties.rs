use proptest::prelude::*;

use lrc_core::io;
use lrc_core::subset::all_subsets;
use lrc_core::{BlockCode, Matroid, Subset};

/// Binary matroid from a random generator matrix.
fn binary_matroid() -> impl Strategy<Value = Matroid> {
    (1usize..=7)
        .prop_flat_map(|n| (Just(n), 1usize..=n.min(4)))
        .prop_flat_map(|(n, k)| proptest::collection::vec(proptest::collection::vec(0u32..2, n), k))
        .prop_filter("nonzero generator", |g| g.iter().flatten().any(|&x| x == 1))
        .prop_map(|g| BlockCode::linear(2, &g).unwrap().induce_matroid().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representations_agree(m in binary_matroid()) {
        let table = m.to_rank_table_repr();
        let ind = m.to_independent_sets_repr();
        let flats = m.to_cyclic_flats_repr();
        for x in all_subsets(m.n()) {
            prop_assert_eq!(table.rank(x), ind.rank(x));
            prop_assert_eq!(table.rank(x), flats.rank(x));
        }
    }

    #[test]
    fn dual_is_an_involution(m in binary_matroid()) {
        let dd = m.dual().dual();
        prop_assert!(dd.same_ranks(&m));
        prop_assert_eq!(m.dual().full_rank(), m.n() - m.full_rank());
    }

    #[test]
    fn closure_is_extensive_monotone_idempotent(m in binary_matroid(), a in 0u64..128, b in 0u64..128) {
        let mask = m.ground().bits();
        let x = Subset(a & mask);
        let y = Subset((a | b) & mask);
        let cx = m.closure(x);
        prop_assert!(x.is_subset_of(cx));
        prop_assert!(cx.is_subset_of(m.closure(y)));
        prop_assert_eq!(m.closure(cx), cx);
        prop_assert_eq!(m.rank(cx), m.rank(x));
    }

    #[test]
    fn documents_round_trip(m in binary_matroid()) {
        for form in [m.to_rank_table_repr(), m.to_independent_sets_repr(), m.to_cyclic_flats_repr()] {
            let text = io::write_matroid(&form);
            let back = io::read_matroid(&text).unwrap();
            prop_assert_eq!(io::write_matroid(&back), text);
            prop_assert!(back.same_ranks(&m));
        }
    }

    #[test]
    fn singleton_bound_holds_for_codes(m in binary_matroid()) {
        let d = lrc_core::oracle::oracle_d(&m).unwrap();
        prop_assert!(d + m.full_rank() <= m.n() + 1);
    }
}
