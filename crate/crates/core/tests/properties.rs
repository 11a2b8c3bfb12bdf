//! Property suites over random graphs: codec round-trips, canonical-form
//! invariance, resolvent identities, and counting-lemma consistency.

use proptest::prelude::*;

use specter_core::feasibility::{
    b_vector_of, b_vector_satisfies, enumerate_b_vectors, DegreeHistogram,
};
use specter_core::graph::petersen;
use specter_core::isomorph::{automorphism_orbits, canonical_form, extended_orbits};
use specter_core::spectra::{eigenvalue_multiplicity_exact, resolvent};
use specter_core::starcomp::inner_product;
use specter_core::{parse_graph6, write_graph6, Graph, SrgParams, VertexSet};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if bits[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::from_edges(n, &edges)
        })
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just(n).prop_perturb(|n, mut rng| {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            perm.swap(i, j);
        }
        perm
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_roundtrip(g in arb_graph(62)) {
        let s = write_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_string_roundtrip(g in arb_graph(62)) {
        // write . parse is the identity on the string side too
        let s = write_graph6(&g).unwrap();
        let back = write_graph6(&parse_graph6(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(g in arb_graph(9)) {
        let n = g.n();
        let perm = arb_permutation(n);
        proptest!(|(p in perm)| {
            prop_assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&p)));
        });
    }

    #[test]
    fn orbits_refine_extended_orbits(g in arb_graph(8)) {
        prop_assert!(automorphism_orbits(&g).refines(&extended_orbits(&g)));
    }

    #[test]
    fn common_neighbors_symmetric(g in arb_graph(12)) {
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u != v {
                    prop_assert_eq!(
                        g.common_neighbor_count(u, v).unwrap(),
                        g.common_neighbor_count(v, u).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn resolvent_inverts_exactly(g in arb_graph(7), r in -3i64..=3) {
        prop_assume!(eigenvalue_multiplicity_exact(&g, r) == 0);
        let res = resolvent(&g, r).unwrap();
        let n = g.n();
        use specter_core::num_bigint::BigInt;
        use specter_core::num_rational::BigRational;
        use num_traits::{One, Zero};
        for i in 0..n {
            for j in 0..n {
                let mut sum = BigRational::zero();
                for k in 0..n {
                    let m = if i == k {
                        BigInt::from(r)
                    } else if g.has_edge(i, k) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    };
                    sum += BigRational::from_integer(m) * res.entry(k, j);
                }
                let expect = if i == j { BigRational::one() } else { BigRational::zero() };
                prop_assert_eq!(sum, expect);
            }
        }
    }

    #[test]
    fn inner_product_is_symmetric(g in arb_graph(6), r in 2i64..=4) {
        prop_assume!(eigenvalue_multiplicity_exact(&g, r) == 0);
        let res = resolvent(&g, r).unwrap();
        let n = g.n();
        proptest!(|(u in proptest::collection::vec(0u8..=1, n),
                    v in proptest::collection::vec(0u8..=1, n))| {
            prop_assert_eq!(
                inner_product(&res, &u, &v).unwrap(),
                inner_product(&res, &v, &u).unwrap()
            );
        });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Any induced subgraph of the Petersen fixture yields an observed
    /// b-vector that satisfies the lemma equations and appears in the
    /// enumeration.
    #[test]
    fn observed_b_vectors_enumerated(mask in 0u32..(1 << 10)) {
        let g = petersen();
        let p = SrgParams::new(10, 3, 0, 1).unwrap();
        let set: VertexSet = (0..10).filter(|&v| mask >> v & 1 == 1).collect();
        prop_assume!(set.len() <= 6);
        let h = g.induced_subgraph(&set).unwrap();
        let d = DegreeHistogram::of_graph(&h);
        let observed = b_vector_of(&g, &set);
        prop_assert!(b_vector_satisfies(&p, &d, &observed));
        prop_assert!(enumerate_b_vectors(&p, &d, &[]).contains(&observed));
    }
}
