use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use ordtop::io::{parse_instance, InstanceDocument};
use ordtop::representation::{
    construct_lsc_multiutility, construct_rp_utility, is_multiutility, preorder_semicontinuity, semicontinuity,
    PreorderSemicontinuity, SemicontinuityKind,
};
use ordtop::{
    ContourKind, ElementSet, PairClass, Preorder, Rational, SubbasisRole, SupResult, Topology, ValueFunction,
};

fn preorder(max: usize) -> impl Strategy<Value = Preorder> {
    (1..=max, any::<u64>(), 0.0..0.6f64).prop_map(|(n, seed, density)| {
        Preorder::random(n, density, &mut StdRng::seed_from_u64(seed))
    })
}

fn subsets(n: usize) -> impl Strategy<Value = Vec<ElementSet>> {
    prop::collection::vec(0u64..1 << n, 0..5).prop_map(|v| v.into_iter().map(ElementSet::from_bits).collect())
}

fn with_topology(max: usize) -> impl Strategy<Value = (Preorder, Topology)> {
    preorder(max).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), subsets(n)).prop_map(move |(p, sets)| {
            let t = Topology::generate(n, &sets, SubbasisRole::AsOpenSubbasis).unwrap();
            (p, t)
        })
    })
}

fn with_function(max: usize) -> impl Strategy<Value = (usize, Vec<i64>, Topology)> {
    (1..=max).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(-3i64..4, n), subsets(n)).prop_map(|(n, v, sets)| {
            (n, v, Topology::generate(n, &sets, SubbasisRole::AsOpenSubbasis).unwrap())
        })
    })
}

proptest! {
    #[test]
    fn classify_swaps(p in preorder(6), a in 0usize..6, b in 0usize..6) {
        let (a, b) = (a % p.len(), b % p.len());
        prop_assert_eq!(p.classify_pair(a, b).unwrap().swapped(), p.classify_pair(b, a).unwrap());
        if a == b {
            prop_assert_eq!(p.classify_pair(a, a).unwrap(), PairClass::Equivalent);
        }
    }

    #[test]
    fn contours_are_dual_and_monotone(p in preorder(6)) {
        for a in 0..p.len() {
            let wl = p.contour(a, ContourKind::WeakLower).unwrap();
            let wu = p.contour(a, ContourKind::WeakUpper).unwrap();
            let sl = p.contour(a, ContourKind::StrictLower).unwrap();
            let su = p.contour(a, ContourKind::StrictUpper).unwrap();
            prop_assert!(p.is_down_set(wl) && p.is_up_set(wu));
            prop_assert!(p.is_down_set(sl) && p.is_up_set(su));
            prop_assert!(sl.is_subset(wl) && su.is_subset(wu));
            for b in 0..p.len() {
                prop_assert_eq!(wl.contains(b), p.contour(b, ContourKind::WeakUpper).unwrap().contains(a));
                prop_assert_eq!(sl.contains(b), p.contour(b, ContourKind::StrictUpper).unwrap().contains(a));
            }
        }
    }

    #[test]
    fn quotient_is_a_partial_order(p in preorder(6)) {
        let q = p.quotient();
        prop_assert!(q.order.is_antisymmetric());
        prop_assert_eq!(q.classes.iter().map(|c| c.len()).sum::<usize>(), p.len());
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(p.leq(a, b), q.order.leq(q.class_of[a], q.class_of[b]));
            }
        }
    }

    #[test]
    fn szpilrajn_extends(p in preorder(6), seed in any::<u64>()) {
        let ext = p.szpilrajn_extension(&[], seed).unwrap();
        prop_assert!(ext.is_total());
        prop_assert!(p.is_contained_in(&ext).holds());
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert!(!p.lt(a, b) || ext.lt(a, b));
                prop_assert_eq!(p.equivalent(a, b), ext.equivalent(a, b));
            }
        }
    }

    #[test]
    fn szpilrajn_forced_pair(p in preorder(6), seed in any::<u64>()) {
        if let Some((a, b)) = p.incomparable_pair() {
            let ext = p.szpilrajn_extension(&[(a, b)], seed).unwrap();
            prop_assert!(ext.lt(a, b));
            prop_assert!(p.is_contained_in(&ext).holds());
        }
    }

    #[test]
    fn directed_sup_is_least_upper_bound(p in preorder(6), bits in any::<u64>()) {
        let d = ElementSet::from_bits(bits).intersection(p.ground());
        if let Ok((directed, sup)) = p.directed_sup(d) {
            prop_assert_eq!(directed, p.is_directed(d));
            if let SupResult::Exists(class) = sup {
                let ub = p.upper_bounds(d);
                prop_assert!(class.is_subset(ub));
                for s in class.iter() {
                    prop_assert!(ub.iter().all(|u| p.leq(s, u)));
                }
            }
        }
    }

    #[test]
    fn generate_is_idempotent((_, t) in with_topology(6)) {
        let again = Topology::generate(t.ground_size(), t.opens(), SubbasisRole::AsOpenSubbasis).unwrap();
        prop_assert_eq!(again, t);
    }

    #[test]
    fn subspace_preserves_finer((p, t) in with_topology(6), bits in 1u64..64) {
        let s = ElementSet::from_bits(bits).intersection(p.ground());
        prop_assume!(!s.is_empty());
        let u = Topology::upper(&p);
        if t.is_finer(&u).unwrap().holds() {
            prop_assert!(t.subspace(s).unwrap().is_finer(&u.subspace(s).unwrap()).unwrap().holds());
        }
    }

    #[test]
    fn closure_and_interior_are_dual((_, t) in with_topology(6), bits in any::<u64>()) {
        let n = t.ground_size();
        let s = ElementSet::from_bits(bits).intersection(t.ground());
        let c = t.closure(s).unwrap();
        prop_assert!(s.is_subset(c) && t.is_closed(c).unwrap());
        prop_assert_eq!(t.interior(s.complement(n)).unwrap(), c.complement(n));
    }

    #[test]
    fn lsc_iff_finer_than_upper((p, t) in with_topology(6)) {
        let lsc = preorder_semicontinuity(&p, &t, PreorderSemicontinuity::Lower).unwrap().holds();
        prop_assert_eq!(lsc, t.is_finer(&Topology::upper(&p)).unwrap().holds());
        if lsc {
            let family = construct_lsc_multiutility(&p, &t).unwrap();
            prop_assert!(is_multiutility(&family, &p).unwrap().holds());
        }
    }

    #[test]
    fn specialization_of_alexandrov_recovers_the_preorder(p in preorder(6)) {
        let back = Topology::alexandrov(&p).specialization(p.labels().to_vec()).unwrap();
        prop_assert_eq!(back.matrix(), p.matrix());
    }

    #[test]
    fn rp_utility_is_sum_of_contour_indicators(p in preorder(6)) {
        let f = construct_rp_utility(&p);
        let sum = construct_lsc_multiutility(&p, &Topology::upper(&p)).unwrap().sum().unwrap();
        prop_assert_eq!(&f, &sum);
        for x in 0..p.len() {
            let not_below = (0..p.len()).filter(|&z| !p.leq(x, z)).count() as i64;
            prop_assert_eq!(f.value(x), Rational::from_integer(not_below));
        }
    }

    #[test]
    fn lsc_matches_upper_topology_of_image((n, values, t) in with_function(6)) {
        // f is lsc iff τ is finer than the upper topology of the preorder f induces
        let f = ValueFunction::from_integers(&values);
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(String, String)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| values[x] <= values[y])
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        let induced = Preorder::build(&labels, &pairs, false).unwrap();
        let lsc = semicontinuity(&f, &t, SemicontinuityKind::Lower).unwrap().holds();
        prop_assert_eq!(lsc, t.is_finer(&Topology::upper(&induced)).unwrap().holds());
    }

    #[test]
    fn documents_round_trip(p in preorder(6), values in prop::collection::vec((-5i64..6, 1i64..4), 6)) {
        let f = ValueFunction::new(values[..p.len()].iter().map(|&(a, b)| Rational::new(a, b)).collect());
        let t = Topology::upper(&p);
        let doc = InstanceDocument::from_parts(&p, Some(&t), &[("f".to_string(), f.clone())]);
        let back = parse_instance(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.preorder().unwrap().matrix(), p.matrix());
        prop_assert_eq!(back.topology(&p).unwrap().unwrap(), t);
        prop_assert_eq!(back.functions().unwrap(), vec![("f".to_string(), f)]);
    }
}
