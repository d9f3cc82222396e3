use std::sync::{Arc, OnceLock};

use binact::catalog;
use binact::orbits::{delta, g_image, is_bi_invariant, minimal_bi_invariant, OrbitSpace};
use binact::search::{canonicalize, enumerate_actions};
use binact::topology::all_topologies;
use binact::{BinaryAction, BinaryOp, EnumerationTask, Subset};
use proptest::prelude::*;

fn op(n: usize) -> impl Strategy<Value = BinaryOp> {
    prop::collection::vec(prop::collection::vec(0..n, n), n).prop_map(|rows| BinaryOp::from_rows(&rows).unwrap())
}

fn invertible_op(n: usize) -> impl Strategy<Value = BinaryOp> {
    prop::collection::vec(Just((0..n).collect::<Vec<_>>()).prop_shuffle(), n)
        .prop_map(|rows| BinaryOp::from_rows(&rows).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// All actions of a few small groups on up to three points.
fn corpus() -> &'static [BinaryAction] {
    static CORPUS: OnceLock<Vec<BinaryAction>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = Vec::new();
        for name in ["z2", "z3", "v4", "s3"] {
            let g = Arc::new(catalog::by_name(name).unwrap());
            for n in 1..=3 {
                out.extend(enumerate_actions(&EnumerationTask::new(g.clone(), n)).unwrap().actions);
            }
        }
        out
    })
}

fn distributive_corpus() -> &'static [BinaryAction] {
    static CORPUS: OnceLock<Vec<BinaryAction>> = OnceLock::new();
    CORPUS.get_or_init(|| corpus().iter().filter(|a| a.is_distributive()).cloned().collect())
}

proptest! {
    #[test]
    fn star_is_associative((a, b, c) in (1usize..=4).prop_flat_map(|n| (op(n), op(n), op(n)))) {
        prop_assert_eq!(a.star(&b).unwrap().star(&c).unwrap(), a.star(&b.star(&c).unwrap()).unwrap());
    }

    #[test]
    fn identity_is_two_sided(f in (1usize..=4).prop_flat_map(op)) {
        let e = BinaryOp::identity(f.size());
        prop_assert_eq!(&e.star(&f).unwrap(), &f);
        prop_assert_eq!(&f.star(&e).unwrap(), &f);
    }

    #[test]
    fn star_acts_row_by_row((f, phi) in (1usize..=4).prop_flat_map(|n| (op(n), op(n)))) {
        let p = f.star(&phi).unwrap();
        for t in 0..f.size() {
            let composed: Vec<usize> = phi.row(t).iter().map(|&y| f.row(t)[y]).collect();
            prop_assert_eq!(p.row(t), &composed[..]);
        }
    }

    #[test]
    fn inverse_is_two_sided(f in (1usize..=5).prop_flat_map(invertible_op)) {
        let inv = f.try_invert().unwrap();
        let e = BinaryOp::identity(f.size());
        prop_assert_eq!(&f.star(&inv).unwrap(), &e);
        prop_assert_eq!(&inv.star(&f).unwrap(), &e);
    }

    #[test]
    fn non_bijective_rows_are_rejected(f in (2usize..=4).prop_flat_map(op)) {
        prop_assert_eq!(f.try_invert().is_ok(), f.non_bijective_row().is_none());
    }

    #[test]
    fn relabelling_preserves_structure((i, sigma) in (0..corpus().len()).prop_flat_map(|i| (Just(i), permutation(corpus()[i].carrier())))) {
        let a = &corpus()[i];
        let b = a.relabel(&sigma);
        prop_assert!(BinaryAction::from_flat(b.group_arc().clone(), b.carrier(), b.as_flat().to_vec()).is_ok());
        prop_assert_eq!(a.is_distributive(), b.is_distributive());
        prop_assert!(a.is_biequivariant(&b, &sigma).unwrap());
        prop_assert_eq!(canonicalize(a), canonicalize(&b));
    }

    #[test]
    fn canonical_form_is_idempotent(i in 0..corpus().len()) {
        let c = canonicalize(&corpus()[i]);
        prop_assert_eq!(canonicalize(&c), c);
    }

    #[test]
    fn least_bi_invariant_set_is_bi_invariant(i in 0..corpus().len()) {
        let a = &corpus()[i];
        for x in 0..a.carrier() {
            let m = minimal_bi_invariant(a, x);
            prop_assert!(m.contains(x));
            prop_assert!(is_bi_invariant(a, m));
        }
    }

    #[test]
    fn distributive_orbits_partition(i in 0..distributive_corpus().len()) {
        let a = &distributive_corpus()[i];
        let space = OrbitSpace::new(a).unwrap();
        let mut seen = Subset::EMPTY;
        for class in space.classes() {
            prop_assert!(class.is_disjoint(seen));
            seen = seen.union(*class);
            for x in class.iter() {
                prop_assert_eq!(g_image(a, Subset::singleton(x)), *class);
                prop_assert_eq!(minimal_bi_invariant(a, x), *class);
            }
        }
        prop_assert_eq!(seen, Subset::full(a.carrier()));
    }

    #[test]
    fn diagonal_maps_are_inverse_bijections(i in 0..distributive_corpus().len()) {
        let a = &distributive_corpus()[i];
        for g in 0..a.group().order() {
            let d = delta(a, g).unwrap();
            let d_inv = delta(a, a.group().inv(g)).unwrap();
            for x in 0..a.carrier() {
                prop_assert_eq!(d_inv[d[x]], x);
            }
        }
    }

    #[test]
    fn closure_and_interior_are_dual((n, i, mask) in (1usize..=4).prop_flat_map(|n| (Just(n), 0..all_topologies(n).unwrap().len(), 0u64..(1 << n)))) {
        let t = &all_topologies(n).unwrap()[i];
        let s = Subset::from_mask(mask);
        prop_assert!(t.interior(s).is_subset_of(s));
        prop_assert!(s.is_subset_of(t.closure(s)));
        prop_assert!(t.is_open(t.interior(s)));
        prop_assert!(t.is_closed(t.closure(s)));
        prop_assert_eq!(t.closure(s).complement(n), t.interior(s.complement(n)));
    }
}
