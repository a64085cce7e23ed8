//! Named structures for sweeps.

use hyperforge::factory::{self, SearchOptions};
use hyperforge::{Structure, SubsetMask};
use num_rational::Rational64;

#[derive(Clone, Debug)]
pub struct Named {
    pub name: String,
    pub structure: Structure,
}

fn named(name: impl Into<String>, structure: Structure) -> Named {
    Named {
        name: name.into(),
        structure,
    }
}

/// `f(x, y) = {1 - x}` on two elements; not associative.
pub fn complement_table() -> Structure {
    Structure::from_fns(2, 2, 2, |t| SubsetMask::singleton(1 - t[0]), |t| t[0] * t[1]).unwrap()
}

/// Hand-built tables: B-constructions, semiring lifts and a few oddities.
pub fn constructions() -> Vec<Named> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for n in 2..=3 {
            out.push(named(format!("b-mod-k{k}-n{n}"), factory::b_construction(k, n, true).unwrap()));
            out.push(named(format!("b-trunc-k{k}-n{n}"), factory::b_construction(k, n, false).unwrap()));
        }
    }
    let (add, mul) = factory::boolean_semiring();
    out.push(named("lift-boolean", factory::semiring_lift(&add, &mul).unwrap().structure));
    for k in 1..=4 {
        let (add, mul) = factory::residue_semiring(k).unwrap();
        out.push(named(format!("lift-z{k}"), factory::semiring_lift(&add, &mul).unwrap().structure));
    }
    out.push(named("complement", complement_table()));
    out.push(named(
        "max-times",
        Structure::from_fns(3, 2, 2, |t| SubsetMask::singleton(t[0].max(t[1])), |t| t[0] * t[1] % 3).unwrap(),
    ));
    out.push(named(
        "total-left",
        Structure::from_fns(3, 3, 3, |_| SubsetMask::full(3), |t| t[0]).unwrap(),
    ));
    out
}

/// Every (2,2)-semihyperring on two elements, up to relabeling.
pub fn small_semihyperrings() -> Vec<Named> {
    let reg = hyperforge::axioms::AxiomRegistry::builtin();
    let req = reg.parse_requirements("semihyperring").unwrap();
    factory::search_models(2, 2, 2, &req, SearchOptions::default())
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(i, s)| named(format!("model-{i}"), s))
        .collect()
}

/// Seeded random structures cycling through `k ∈ 1..=max_k` and `m, n ∈ {2, 3}`.
pub fn random(count: usize, max_k: usize, base_seed: u64) -> Vec<Named> {
    (0..count)
        .map(|i| {
            let k = 1 + i % max_k;
            let m = 2 + (i / max_k) % 2;
            let n = 2 + (i / (2 * max_k)) % 2;
            let seed = base_seed + i as u64;
            let s = factory::random_structure(seed, k, m, n, Rational64::new(1, 2)).unwrap();
            named(format!("random-{seed}-k{k}-m{m}-n{n}"), s)
        })
        .collect()
}

/// The standard sweep corpus: constructions, small models and random tables, all with `k ≤ 4`.
pub fn standard() -> Vec<Named> {
    let mut out = constructions();
    out.extend(small_semihyperrings());
    out.extend(random(48, 4, 1_000));
    out
}
