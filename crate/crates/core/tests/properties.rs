use hyperforge::axioms::{AxiomRegistry, CheckOptions};
use hyperforge::congruence::{self, EquivRelation};
use hyperforge::fuzzy::{self, FuzzySubset, Grade};
use hyperforge::ideals;
use hyperforge::io;
use hyperforge::morphisms::{self, Mapping, SearchMode};
use hyperforge::{Structure, SubsetMask, TupleShape};
use num_rational::Rational64;
use proptest::prelude::*;

fn structure(max_k: usize) -> impl Strategy<Value = Structure> {
    (1..=max_k, 2..=3usize, 2..=3usize).prop_flat_map(|(k, m, n)| {
        let f = prop::collection::vec(1..(1u64 << k), k.pow(m as u32));
        let g = prop::collection::vec(0..k, k.pow(n as u32));
        (f, g).prop_map(move |(f, g)| {
            Structure::from_fns(
                k,
                m,
                n,
                {
                    let mut it = f.clone().into_iter();
                    move |_| SubsetMask::from_bits(it.next().unwrap())
                },
                {
                    let mut it = g.clone().into_iter();
                    move |_| it.next().unwrap()
                },
            )
            .unwrap()
        })
    })
}

fn with_subsets(max_k: usize) -> impl Strategy<Value = (Structure, Vec<SubsetMask>)> {
    structure(max_k).prop_flat_map(|s| {
        let k = s.k();
        let m = s.m();
        (Just(s), prop::collection::vec((1..(1u64 << k)).prop_map(SubsetMask::from_bits), 2 * m))
    })
}

fn fuzzy(k: usize) -> impl Strategy<Value = FuzzySubset> {
    prop::collection::vec(0..=6i64, k)
        .prop_map(|v| FuzzySubset::new(v.into_iter().map(|p| Grade::new(p, 6).unwrap()).collect()).unwrap())
}

fn permutation(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..k).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tuple_index_is_a_bijection(k in 1..6usize, len in 1..5usize) {
        let shape = TupleShape::new(k, len).unwrap();
        for i in 0..shape.count() {
            let t = shape.decode(i);
            prop_assert_eq!(shape.encode(&t).unwrap(), i);
        }
    }

    #[test]
    fn singleton_extension_is_the_table((s, sets) in with_subsets(3)) {
        let tuple: Vec<usize> = sets.iter().take(s.m()).map(|&a| a.min().unwrap()).collect();
        let singles: Vec<SubsetMask> = tuple.iter().map(|&x| SubsetMask::singleton(x)).collect();
        prop_assert_eq!(s.eval_f_subsets(&singles).unwrap(), s.eval_f(&tuple).unwrap());
    }

    #[test]
    fn extension_is_monotone((s, sets) in with_subsets(3)) {
        let m = s.m();
        let small: Vec<SubsetMask> = sets[..m].iter().zip(&sets[m..]).map(|(&a, &b)| a.intersection(b)).collect();
        let big: Vec<SubsetMask> = sets[..m].iter().zip(&sets[m..]).map(|(&a, &b)| a.union(b)).collect();
        if small.iter().all(|a| !a.is_empty()) {
            prop_assert!(s.eval_f_subsets(&small).unwrap().is_subset(s.eval_f_subsets(&big).unwrap()));
        }
        prop_assert!(s.eval_f_subsets(&sets[..m]).unwrap().is_subset(s.eval_f_subsets(&big).unwrap()));
    }

    #[test]
    fn extension_distributes_over_union((s, sets) in with_subsets(3)) {
        let m = s.m();
        let mut joined = sets[..m].to_vec();
        joined[0] = sets[0].union(sets[m]);
        let mut other = sets[..m].to_vec();
        other[0] = sets[m];
        let lhs = s.eval_f_subsets(&joined).unwrap();
        let rhs = s.eval_f_subsets(&sets[..m]).unwrap().union(s.eval_f_subsets(&other).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn verdicts_survive_relabeling((s, perm) in structure(3).prop_flat_map(|s| { let k = s.k(); (Just(s), permutation(k)) })) {
        let t = s.permuted(&perm).unwrap();
        let o = CheckOptions::default();
        for axiom in AxiomRegistry::builtin().iter() {
            prop_assert_eq!(axiom.check(&s, &o).holds, axiom.check(&t, &o).holds, "{}", axiom.name());
        }
        for bits in 1..1u64 << s.k() {
            let set = SubsetMask::from_bits(bits);
            let moved: SubsetMask = set.iter().map(|x| perm[x]).collect();
            prop_assert_eq!(ideals::classify(&s, set).unwrap().kinds, ideals::classify(&t, moved).unwrap().kinds);
        }
        let map = Mapping::new(&s, &t, perm.clone()).unwrap();
        prop_assert!(morphisms::is_homomorphism(&map).unwrap());
    }

    #[test]
    fn distributive_implies_weak(s in structure(2)) {
        let o = CheckOptions::default();
        if hyperforge::axioms::check_distributive(&s, &o).holds {
            prop_assert!(hyperforge::axioms::check_weak_distributive(&s, &o).holds);
        }
    }

    #[test]
    fn hyperideals_meet_in_hyperideals(s in structure(3)) {
        let found = ideals::enumerate_hyperideals(&s, &ideals::Hyperideal, 12).unwrap();
        for a in &found {
            for b in &found {
                let meet = a.subset.intersection(b.subset);
                if !meet.is_empty() {
                    prop_assert!(ideals::is_hyperideal(&s, meet).unwrap());
                }
            }
        }
        let lefts = ideals::enumerate_hyperideals(&s, &ideals::LeftHyperideal, 12).unwrap();
        for a in &lefts {
            prop_assert!(ideals::is_sub_semihyperring(&s, a.subset).unwrap());
        }
    }

    #[test]
    fn trivial_relations_are_congruences(s in structure(3)) {
        let o = CheckOptions::default();
        let id = EquivRelation::identity(s.k()).unwrap();
        let all = EquivRelation::universal(s.k()).unwrap();
        prop_assert!(congruence::is_congruence(&s, &id, &o).unwrap().holds);
        prop_assert!(congruence::is_congruence(&s, &all, &o).unwrap().holds);
        prop_assert_eq!(congruence::quotient(&s, &id).unwrap(), s.clone());
        prop_assert_eq!(congruence::quotient(&s, &all).unwrap().k(), 1);
    }

    #[test]
    fn congruence_invariants(s in structure(3)) {
        let o = CheckOptions::default();
        let found = congruence::enumerate_congruences(&s, 1_000).unwrap();
        for rel in &found {
            prop_assert!(congruence::check_translation_lemma(&s, rel, &o).unwrap().holds);
            prop_assert!(congruence::check_mixed_congruence(&s, rel, &o).unwrap().holds);
            let (q, image) = congruence::natural_map(&s, rel).unwrap();
            let map = Mapping::new(&s, &q, image).unwrap();
            prop_assert!(map.is_surjective());
            prop_assert!(morphisms::is_homomorphism(&map).unwrap());
            prop_assert_eq!(io::from_json_str(&io::to_json_string(&q)).unwrap(), q);
        }
    }

    #[test]
    fn endomorphisms_compose(s in structure(3)) {
        let homs = morphisms::enumerate_homomorphisms(&s, &s, SearchMode::All, 100_000).unwrap();
        for a in &homs {
            for b in &homs {
                prop_assert!(morphisms::is_homomorphism(&morphisms::compose(a, b).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn levels_shrink_as_threshold_grows(mu in (1..=5usize).prop_flat_map(fuzzy), a in 0..=12i64, b in 0..=12i64) {
        let (lo, hi) = (a.min(b), a.max(b));
        let big = fuzzy::level_subset(&mu, Rational64::new(lo, 12)).unwrap();
        let small = fuzzy::level_subset(&mu, Rational64::new(hi, 12)).unwrap();
        prop_assert!(small.is_subset(big));
    }

    #[test]
    fn critical_levels_cover_every_level(mu in (1..=5usize).prop_flat_map(fuzzy), p in 0..=60i64) {
        let t = Rational64::new(p, 60);
        let level = fuzzy::level_subset(&mu, t).unwrap();
        // The next critical level at or above t selects the same subset.
        let next = fuzzy::critical_levels(&mu).into_iter().find(|g| g.value() >= t);
        match next {
            Some(g) => prop_assert_eq!(fuzzy::level_subset(&mu, g.value()).unwrap(), level),
            None => prop_assert!(level.is_empty()),
        }
    }

    #[test]
    fn fuzzy_subsets_round_trip(mu in (1..=5usize).prop_flat_map(fuzzy)) {
        let text = serde_json::to_string(&mu).unwrap();
        prop_assert_eq!(serde_json::from_str::<FuzzySubset>(&text).unwrap(), mu);
    }

    #[test]
    fn structure_files_round_trip(s in structure(3)) {
        let text = io::to_json_string(&s);
        let back = io::from_json_str(&text).unwrap();
        prop_assert_eq!(io::to_json_string(&back), text);
        prop_assert_eq!(back, s);
    }
}
