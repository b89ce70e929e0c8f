mod common;

use std::sync::OnceLock;

use common::build;
use polaris::embed::natural_embedding;
use polaris::field::Field;
use polaris::{PointSet, PolarSpace};
use proptest::prelude::*;

const FIELDS: &[(u32, u32)] = &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (3, 3), (2, 6), (3, 4)];

fn spaces() -> &'static [(&'static str, PolarSpace)] {
    static CELL: OnceLock<Vec<(&'static str, PolarSpace)>> = OnceLock::new();
    CELL.get_or_init(|| ["W3_3", "Q6_2", "H3_4", "Qm5_2", "GRID_3"].into_iter().map(|n| (n, build(n))).collect())
}

fn subset(space: &PolarSpace, picks: &[usize]) -> PointSet {
    PointSet::from_indices(space.num_points(), picks.iter().map(|p| p % space.num_points()))
}

proptest! {
    #[test]
    fn field_axioms(fi in 0..FIELDS.len(), a in 0u32..81, b in 0u32..81, c in 0u32..81) {
        let (p, k) = FIELDS[fi];
        let f = Field::new(p, k).unwrap();
        let q = f.order();
        let (a, b, c) = (f.check(a % q).unwrap(), f.check(b % q).unwrap(), f.check(c % q).unwrap());
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.pow(a, q as u64), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        // Frobenius is additive and multiplicative.
        let fr = f.automorphism(1 % k).unwrap();
        prop_assert_eq!(f.apply(fr, f.add(a, b)), f.add(f.apply(fr, a), f.apply(fr, b)));
        prop_assert_eq!(f.apply(fr, f.mul(a, b)), f.mul(f.apply(fr, a), f.apply(fr, b)));
    }

    #[test]
    fn closure_is_a_closure_operator(si in 0usize..5, xs in prop::collection::vec(0usize..400, 0..6), ys in prop::collection::vec(0usize..400, 0..4)) {
        let (_, space) = &spaces()[si];
        let x = subset(space, &xs);
        let xy = x.union(&subset(space, &ys));
        let cx = space.closure(&x);
        prop_assert!(x.is_subset(&cx));
        prop_assert!(space.is_subspace(&cx));
        prop_assert_eq!(&space.closure(&cx), &cx);
        prop_assert!(cx.is_subset(&space.closure(&xy)));
        let extra: Vec<usize> = xy.difference(&x).to_vec();
        prop_assert_eq!(space.closure_extend(&cx, &extra), space.closure(&xy));
    }

    #[test]
    fn perp_is_antitone_subspace(si in 0usize..5, xs in prop::collection::vec(0usize..400, 1..5), ys in prop::collection::vec(0usize..400, 0..3)) {
        let (_, space) = &spaces()[si];
        let x = subset(space, &xs);
        let xy = x.union(&subset(space, &ys));
        let px = space.perp(&x);
        prop_assert!(space.is_subspace(&px));
        prop_assert!(space.perp(&xy).is_subset(&px));
        prop_assert_eq!(space.perp(&space.closure(&x)), px);
    }

    #[test]
    fn subspace_profile_is_consistent(si in 0usize..5, xs in prop::collection::vec(0usize..400, 1..6)) {
        let (_, space) = &spaces()[si];
        let s = space.closure(&subset(space, &xs));
        let p = space.profile(&s).unwrap();
        prop_assert_eq!(p.rank_nd, p.rank - p.radical_rank);
        prop_assert!(p.radical.is_subset(&s));
        prop_assert_eq!(p.is_singular, p.radical == s);
        prop_assert!(p.rank <= space.polar_rank());
    }

    #[test]
    fn preimage_of_span_contains_the_set(si in 0usize..5, xs in prop::collection::vec(0usize..400, 1..6)) {
        let (_, space) = &spaces()[si];
        let emb = natural_embedding(space);
        let s = space.closure(&subset(space, &xs));
        let pre = emb.preimage(&emb.projective_span(&s));
        prop_assert!(s.is_subset(&pre));
        prop_assert!(space.is_subspace(&pre));
        // A singular subspace always arises.
        if space.is_singular(&s) {
            prop_assert_eq!(pre, s);
        }
    }
}
