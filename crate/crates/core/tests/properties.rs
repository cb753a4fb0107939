mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{
    brute_isomorphic, degree_by_definition, floyd_warshall, induced_by_definition,
    neighbours_by_definition,
};
use lm_shotgun::reconstruct::{
    center_fingerprints, extract_collection, extract_collection_unscrambled, fingerprint_table,
    reconstruct,
};
use lm_shotgun::simplex::{colex_rank, colex_unrank, Combinations};
use lm_shotgun::{canonical_form, ops, Complex, Simplex};

/// A complex on `{1..n}` with each candidate face kept when its bit is set.
fn complex_strategy(
    n: std::ops::RangeInclusive<u32>,
    d: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Complex> {
    (n, d)
        .prop_filter("n > d", |(n, d)| *n as usize > *d)
        .prop_flat_map(|(n, d)| {
            let candidates: Vec<Simplex> = Combinations::new(n, d + 1).collect();
            let len = candidates.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |bits| {
                let faces = candidates
                    .iter()
                    .zip(bits)
                    .filter(|(_, b)| *b)
                    .map(|(f, _)| f.clone());
                Complex::new(n, d, faces).unwrap()
            })
        })
}

fn relabel(x: &Complex, seed: u64) -> Complex {
    let mut perm: Vec<u32> = (1..=x.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let faces = x.faces().iter().map(|f| f.map(|v| perm[v as usize - 1]));
    Complex::new(x.n(), x.d(), faces).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighbours_and_degree_match_definition(x in complex_strategy(3..=7, 1..=2)) {
        for sigma in x.ridges() {
            prop_assert_eq!(ops::neighbours(&x, &sigma).unwrap(), neighbours_by_definition(&x, &sigma));
            prop_assert_eq!(ops::degree(&x, &sigma).unwrap(), degree_by_definition(&x, &sigma));
        }
    }

    #[test]
    fn distance_matches_floyd_warshall(x in complex_strategy(3..=6, 1..=2)) {
        let (ridges, dist) = floyd_warshall(&x);
        for (i, a) in ridges.iter().enumerate() {
            for (j, b) in ridges.iter().enumerate() {
                prop_assert_eq!(ops::distance(&x, a, b).unwrap(), dist[i][j]);
            }
        }
    }

    #[test]
    fn balls_are_nested_distance_shells(x in complex_strategy(3..=6, 1..=2)) {
        let (ridges, dist) = floyd_warshall(&x);
        for (i, sigma) in ridges.iter().enumerate() {
            let mut previous = BTreeSet::new();
            for k in 0..4 {
                let ball = ops::k_ball(&x, sigma, k).unwrap();
                let expected: BTreeSet<Simplex> = ridges
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| dist[i][*j].is_some_and(|r| r <= k))
                    .map(|(_, t)| t.clone())
                    .collect();
                prop_assert!(previous.is_subset(&ball));
                prop_assert_eq!(&ball, &expected);
                previous = ball;
            }
        }
    }

    #[test]
    fn neighbourhood_matches_literal_induction(x in complex_strategy(3..=7, 1..=2)) {
        for sigma in x.ridges() {
            let triple = ops::neighbourhood_triple(&x, &sigma).unwrap();
            let nb = ops::k_neighbourhood(&x, &sigma, 1).unwrap();
            let roster = ops::k_ball(&x, &sigma, 1).unwrap();
            let literal = induced_by_definition(&x, &roster);
            prop_assert_eq!(nb.closure(), literal.clone());
            let d_faces: BTreeSet<Simplex> =
                literal.iter().filter(|f| f.len() == x.d() + 1).cloned().collect();
            let through: BTreeSet<Simplex> =
                d_faces.iter().filter(|f| sigma.is_subset(f)).cloned().collect();
            let avoiding: BTreeSet<Simplex> = d_faces.difference(&through).cloned().collect();
            prop_assert_eq!(&triple.neighbours, &neighbours_by_definition(&x, &sigma));
            prop_assert_eq!(&triple.d_faces, &through);
            prop_assert_eq!(&triple.d_star_faces, &avoiding);
        }
    }

    #[test]
    fn canonical_form_is_label_invariant(x in complex_strategy(4..=8, 1..=2), seed in any::<u64>()) {
        let faces: Vec<Simplex> = x.faces().iter().cloned().collect();
        let form = canonical_form(&faces, &[]);
        for i in 0..100 {
            let y = relabel(&x, seed.wrapping_add(i));
            let image: Vec<Simplex> = y.faces().iter().cloned().collect();
            prop_assert_eq!(&canonical_form(&image, &[]), &form);
        }
    }

    #[test]
    fn canonical_form_agrees_with_brute_force(
        x in complex_strategy(4..=6, 1..=2),
        y in complex_strategy(4..=6, 1..=2),
    ) {
        prop_assume!(x.d() == y.d());
        let a: Vec<Simplex> = x.faces().iter().cloned().collect();
        let b: Vec<Simplex> = y.faces().iter().cloned().collect();
        prop_assert_eq!(canonical_form(&a, &[]) == canonical_form(&b, &[]), brute_isomorphic(&a, &b));
    }

    #[test]
    fn rooted_equality_implies_unrooted(x in complex_strategy(4..=7, 1..=2), seed in any::<u64>()) {
        let coll = extract_collection(&x, seed);
        for a in &coll.neighbourhoods {
            for b in &coll.neighbourhoods {
                if a.canonical_form(true) == b.canonical_form(true) {
                    prop_assert_eq!(a.canonical_form(false), b.canonical_form(false));
                }
            }
        }
    }

    #[test]
    fn fingerprints_ignore_interior_labels(x in complex_strategy(4..=8, 1..=2), s1 in any::<u64>(), s2 in any::<u64>()) {
        let forms = |seed: u64| {
            fingerprint_table(&extract_collection(&x, seed))
                .entries
                .into_iter()
                .map(|(c, fps)| {
                    let mut forms: Vec<_> = fps.into_iter().map(|(_, f)| f).collect();
                    forms.sort();
                    (c, forms)
                })
                .collect::<Vec<_>>()
        };
        prop_assert_eq!(forms(s1), forms(s2));
    }

    #[test]
    fn fingerprints_match_common_neighbour_complex(x in complex_strategy(4..=8, 1..=2)) {
        for nb in &extract_collection_unscrambled(&x).neighbourhoods {
            for (tau, form) in center_fingerprints(nb) {
                let h = ops::common_fingerprint_complex(&x, &nb.center, &tau).unwrap();
                prop_assert_eq!(&form, &canonical_form(&h.face_family(), &[]));
            }
        }
    }

    #[test]
    fn reconstruction_never_loses_a_face(x in complex_strategy(4..=9, 1..=2), seed in any::<u64>()) {
        let (y, report) = reconstruct(&extract_collection(&x, seed)).unwrap();
        prop_assert!(x.faces().is_subset(y.faces()));
        prop_assert_eq!(report.is_clean(), x.faces() == y.faces());
    }

    #[test]
    fn reconstruction_ignores_scrambling(x in complex_strategy(4..=8, 1..=2), s1 in any::<u64>(), s2 in any::<u64>()) {
        let (y1, _) = reconstruct(&extract_collection(&x, s1)).unwrap();
        let (y2, _) = reconstruct(&extract_collection(&x, s2)).unwrap();
        prop_assert_eq!(y1.faces(), y2.faces());
    }

    #[test]
    fn colex_unrank_inverts_rank(k in 1usize..=4, rank in 0u64..100_000) {
        let s = colex_unrank(rank, k);
        prop_assert_eq!(s.len(), k);
        prop_assert_eq!(colex_rank(&s), rank);
    }

    #[test]
    fn text_format_round_trips(x in complex_strategy(3..=8, 1..=3)) {
        prop_assert_eq!(Complex::from_text(&x.to_text()).unwrap(), x);
    }
}
