use chromaplex::arrangement::linalg::is_prime;
use chromaplex::arrangement::{
    brute_force_arrangement_count, characteristic_polynomial, count_complement, intersection_poset,
    marked_chromatic_arrangement, Arrangement, Subspace,
};
use chromaplex::hypergraph::VertexMask;
use chromaplex::qseries::{rat, ExponentVector};
use chromaplex::Error;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn hyperplane_arrangement(max_n: usize, max_members: usize) -> impl Strategy<Value = Arrangement> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), 1..=max_members)
            .prop_filter("nonzero forms", |fs| fs.iter().all(|f| f.iter().any(|&c| c != 0)))
            .prop_map(move |fs| {
                let subs = fs.iter().map(|f| Subspace::from_int_forms(n, &[f]).unwrap()).collect();
                Arrangement::new(n, subs, 0).unwrap()
            })
    })
}

/// Members of codimension 1 or 2.
fn subspace_arrangement() -> impl Strategy<Value = Arrangement> {
    (2usize..=3).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(prop::collection::vec(-2i64..=2, n), 1..=2), 1..=3)
            .prop_filter_map("independent nonzero forms", move |members| {
                let subs: Option<Vec<Subspace>> = members
                    .iter()
                    .map(|forms| {
                        let refs: Vec<&[i64]> = forms.iter().map(|f| f.as_slice()).collect();
                        Subspace::from_int_forms(n, &refs).ok().filter(|s| s.codim() == forms.len())
                    })
                    .collect();
                Arrangement::new(n, subs?, 0).ok()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mobius_signs_alternate(a in hyperplane_arrangement(4, 5)) {
        for f in intersection_poset(&a).flats() {
            let signed = if f.codim() % 2 == 0 { f.mobius.clone() } else { -f.mobius.clone() };
            prop_assert!(signed >= BigInt::zero(), "codim {} mobius {}", f.codim(), f.mobius);
        }
    }

    #[test]
    fn characteristic_polynomial_counts_points(a in subspace_arrangement()) {
        let chi = characteristic_polynomial(&a);
        let mut good = 0;
        for p in (2u64..40).filter(|&p| is_prime(p)) {
            match count_complement(&a, p) {
                Ok(c) => {
                    prop_assert_eq!(chi.eval_int(p as i64), rat(c as i64), "p={}", p);
                    good += 1;
                }
                Err(Error::BadPrime { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
        prop_assert!(good >= 3);
    }

    #[test]
    fn marked_arrangement_counts_colourings(
        a in hyperplane_arrangement(3, 2),
        ms in prop::collection::vec(0u32..=2, 3),
        sp in 0u64..8,
    ) {
        let n = a.n();
        let mut m = ms[..n].to_vec();
        while m.iter().sum::<u32>() > 5 {
            let i = m.iter().position(|&x| x > 0).unwrap();
            m[i] -= 1;
        }
        let m = ExponentVector(m);
        let supp: VertexMask = (0..n).filter(|&i| m.0[i] > 0).fold(0, |s, i| s | 1 << i);
        let special = sp & supp;
        let poly = marked_chromatic_arrangement(&a, special, &m).unwrap();
        for p in [5u64, 7, 11] {
            let count = brute_force_arrangement_count(&a, special, &m, p).unwrap();
            prop_assert_eq!(poly.eval_int(p as i64), rat(count as i64), "m={:?} S={:b} p={}", m.0, special, p);
        }
    }
}
