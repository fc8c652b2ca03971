//! Property tests for the type invariants of each module.

use arithx::field_group::{FiniteGroup, FpVec};
use arithx::hypergraph::cayley_hypergraph;
use arithx::poly_method::{PointSet, Rectangle};
use arithx::stats::summarize;
use arithx::tensor_lab::{cayley_slice, is_plane_substochastic, rademacher_deviation};
use arithx::tensor_norm::spectral::{spectral_norm, to_matrix};
use arithx::tensor_norm::{lp_norm, multilinear_norm, AscentConfig, RealForm};
use arithx::Rational;
use proptest::prelude::*;

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn group_spec() -> impl Strategy<Value = String> {
    prop_oneof![
        (1usize..40).prop_map(|m| format!("cyclic:{m}")),
        (0usize..4, 1u32..4).prop_map(|(i, n)| format!("vec:{}^{n}", PRIMES[i])),
        (1usize..7, 1usize..7).prop_map(|(a, b)| format!("prod(cyclic:{a},cyclic:{b})")),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fp_vectors_form_a_group(pi in 0usize..4, coords in prop::collection::vec((0i64..50, 0i64..50, 0i64..50), 1..5), c in -9i64..9) {
        let p = PRIMES[pi];
        let x = FpVec::from_ints(p, &coords.iter().map(|v| v.0).collect::<Vec<_>>()).unwrap();
        let y = FpVec::from_ints(p, &coords.iter().map(|v| v.1).collect::<Vec<_>>()).unwrap();
        let z = FpVec::from_ints(p, &coords.iter().map(|v| v.2).collect::<Vec<_>>()).unwrap();
        let zero = FpVec::zero(p, coords.len());
        prop_assert!(x.coords().iter().all(|&v| v < p));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&zero), x.clone());
        prop_assert!(x.add(&x.neg()).is_zero());
        prop_assert_eq!(x.add(&y).scale(c), x.scale(c).add(&y.scale(c)));
        prop_assert_eq!(FpVec::from_index(p, coords.len(), x.index()), x);
    }

    #[test]
    fn group_tables_are_latin_and_orders_divide(spec in group_spec()) {
        let g: FiniteGroup = spec.parse().unwrap();
        let m = g.order();
        prop_assert_eq!(g.element_order(g.identity()).unwrap(), 1);
        for a in 0..m {
            let mut row = vec![false; m];
            let mut col = vec![false; m];
            for b in 0..m {
                row[g.op(a, b)] = true;
                col[g.op(b, a)] = true;
            }
            prop_assert!(row.iter().all(|&v| v) && col.iter().all(|&v| v));
            prop_assert_eq!(g.op(a, g.inverse(a)), g.identity());
            prop_assert_eq!(m % g.element_order(a).unwrap(), 0);
        }
    }

    #[test]
    fn cayley_hypergraphs_are_regular_and_symmetric(m in 2usize..12, gens in prop::collection::vec((0usize..12, 0usize..12, 0usize..12), 1..4)) {
        let g = FiniteGroup::cyclic(m).unwrap();
        let gens: Vec<Vec<usize>> = gens.iter().map(|&(a, b, c)| vec![a % m, b % m, c % m]).collect();
        let h = cayley_hypergraph(&g, &[1, 1, 1], &gens).unwrap();
        let k = h.degree().unwrap();
        prop_assert_eq!(k, 6 * gens.len() as u64);
        let form = h.adjacency_form(false).unwrap();
        prop_assert!(form.is_symmetric());
        prop_assert!(h.edges().all(|(e, _)| e.len() == 3 && e.windows(2).all(|w| w[0] <= w[1])));
        let all = vec![true; m];
        for v in 0..m {
            let mut single = vec![false; m];
            single[v] = true;
            let value = form.evaluate_indicators(&[&single, &all, &all]).unwrap();
            prop_assert_eq!(value, Rational::from_integer(k as i128));
        }
    }

    #[test]
    fn norm_witnesses_reproduce_their_value(
        t in 2usize..4,
        n in 2usize..5,
        pi in 0usize..4,
        entries in prop::collection::vec(-5i32..6, 64),
        seed in 0u64..1000,
    ) {
        let p = [1.5, 2.0, 3.0, f64::INFINITY][pi];
        let mut form = RealForm::new(t, n);
        for (code, &v) in entries.iter().enumerate().take(n.pow(t as u32)) {
            let idx: Vec<u32> = (0..t).map(|s| ((code / n.pow(s as u32)) % n) as u32).collect();
            form.push(&idx, v as f64);
        }
        let est = multilinear_norm(&form, p, &AscentConfig::with_restarts(3, seed)).unwrap();
        if let Some(w) = &est.witness {
            let views: Vec<&[f64]> = w.iter().map(Vec::as_slice).collect();
            let again = form.evaluate(&views);
            prop_assert!((again - est.value).abs() <= 1e-10 * est.value.abs().max(1.0));
            for x in w {
                prop_assert!((lp_norm(x, p) - 1.0).abs() <= 1e-10);
            }
        } else {
            prop_assert!(form.is_zero());
        }
        if t == 2 && p == 2.0 {
            let sigma = spectral_norm(&to_matrix(&form).unwrap());
            prop_assert!(est.value <= sigma + 1e-9);
        }
    }

    #[test]
    fn line_containment_follows_the_definition(
        pi in 0usize..3,
        n in 1usize..3,
        bits in prop::collection::vec(any::<bool>(), 5 * 49),
        x in 0usize..49,
        d in 0usize..49,
    ) {
        let p = PRIMES[pi];
        let size = (p as usize).pow(n as u32);
        let sets: Vec<PointSet> = (0..p as usize)
            .map(|s| bits[s * size..(s + 1) * size].iter().collect())
            .collect();
        let rect = Rectangle::new(p, n, sets.clone()).unwrap();
        let (x, d) = (FpVec::from_index(p, n, x % size), FpVec::from_index(p, n, d % size));
        let expected = (0..p as i64).all(|l| sets[l as usize][x.add(&d.scale(l)).index()]);
        prop_assert_eq!(rect.contains_line(&x, &d).unwrap(), expected);
    }

    #[test]
    fn cayley_slices_are_plane_substochastic(m in 1usize..30, q in prop::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], 2..5), g in prop::collection::vec(0usize..30, 4)) {
        let group = FiniteGroup::cyclic(m).unwrap();
        let g: Vec<usize> = g.iter().take(q.len()).map(|x| x % m).collect();
        let form = cayley_slice(&group, &q, &g).unwrap();
        prop_assert!(is_plane_substochastic(&form).pass);
    }

    #[test]
    fn deviation_summaries_recompute_from_trials(m in 3usize..9, k in 1usize..5, seed in 0u64..100) {
        let group = FiniteGroup::cyclic(m).unwrap();
        let forms: Vec<_> = (0..k).map(|i| cayley_slice(&group, &[1, 1, 1], &[0, i % m, (2 * i) % m]).unwrap()).collect();
        let exp = rademacher_deviation(&forms, 3.0, 4, seed, &AscentConfig::with_restarts(2, 0)).unwrap();
        prop_assert_eq!(&exp.summary, &summarize(&exp.values));
        let normalized: Vec<f64> = exp.values.iter().map(|v| v / k as f64).collect();
        prop_assert_eq!(&exp.normalized, &normalized);
        prop_assert_eq!(&exp.normalized_summary, &summarize(&normalized));
    }
}
