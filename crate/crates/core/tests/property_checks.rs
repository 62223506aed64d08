//! Property tests for the structural invariants that should hold for any
//! inputs, not just the named corpus.

use proptest::prelude::*;
use std::sync::Arc;

use skewpbw_core::bitset::Bitset;
use skewpbw_core::finring::{annihilator, build_zn, build_ut2_equal_diag, Side};

proptest! {
    #[test]
    fn annihilator_is_intersection_of_singletons(
        indices in proptest::collection::vec(0usize..25, 1..6),
        right in any::<bool>(),
    ) {
        let ring = Arc::new(build_ut2_equal_diag(5).unwrap());
        let set = Bitset::from_indices(25, &indices);
        let side = if right { Side::Right } else { Side::Left };
        let whole = annihilator(&ring, side, &set).unwrap();
        let mut meet = Bitset::full(25);
        for s in set.iter() {
            let single = annihilator(&ring, side, &Bitset::singleton(25, s)).unwrap();
            meet.intersect_with(single.members());
        }
        prop_assert_eq!(whole.members().clone(), meet);
    }

    #[test]
    fn annihilators_are_ideals_on_zn(
        n in 2usize..40,
        seed in 0usize..50,
    ) {
        let ring = Arc::new(build_zn(n).unwrap());
        let a = (seed % n) as usize;
        let ann = annihilator(&ring, Side::Right, &Bitset::singleton(n, a)).unwrap();
        // additively closed and multiplication-stable on the right
        for x in ann.members().iter() {
            for y in ann.members().iter() {
                let s = ring.add(x as u16, y as u16);
                prop_assert!(ann.members().contains(s as usize));
            }
            for r in ring.elements() {
                let m = ring.mul(x as u16, r);
                prop_assert!(ann.members().contains(m as usize));
            }
        }
    }

    #[test]
    fn bitset_union_intersection_laws(
        xs in proptest::collection::vec(0usize..100, 0..30),
        ys in proptest::collection::vec(0usize..100, 0..30),
    ) {
        let a = Bitset::from_indices(100, &xs);
        let b = Bitset::from_indices(100, &ys);
        // de Morgan
        prop_assert_eq!(
            a.union(&b).complement(),
            a.complement().intersection(&b.complement())
        );
        // subset characterization
        prop_assert_eq!(a.is_subset(&b), a.union(&b) == b);
        // counting
        prop_assert_eq!(
            a.count() + b.count(),
            a.union(&b).count() + a.intersection(&b).count()
        );
    }
}
