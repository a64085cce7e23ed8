//! Built-in constructions, seeded random tables and small-model search.
//!
//! # Random generation
//!
//! Generators use xoshiro256++ seeded from a `u64` through SplitMix64 (the
//! `seed_from_u64` of `rand_xoshiro` 0.8). A draw below `q` is
//! `(next_u64() as u128 * q as u128) >> 64`. Tables are filled in
//! row-major order: first every `f` entry, then every `g` entry.
//!
//! * `f` entry with density `p/q`: for `x = 0..k`, draw `r < q` and keep `x`
//!   when `r < p`. An empty result is discarded and the whole entry redrawn.
//! * `g` entry: one draw below `k`.
//! * Fuzzy grades with denominator `d`: one draw below `d + 1` gives the
//!   numerator (positive grades draw below `d` and add one).
//!
//! These rules fix every generated structure by its seed, independently of
//! platform and thread count.

use std::collections::HashSet;

use num_rational::Rational64;
use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{check_mn_semihyperring, AxiomVerdict, CheckOptions, Requirement};
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyHyperStructure, FuzzySubset, Grade};
use crate::structure::Structure;
use crate::subset::SubsetMask;
use crate::table::{Element, HyperOpTable, OpTable, TupleShape};

/// Default cap on the number of raw tables a model search may visit.
pub const DEFAULT_SEARCH_CAP: u128 = 10_000_000;

/// `f(x, y) = {x, y}` with `g` the n-ary product of residues mod `k`.
///
/// With `modulus_g` false, `g` is the product of integers truncated at
/// `k - 1` instead, `min(x_1 ⋯ x_n, k - 1)`, another associative product
/// that distributes over pairs.
pub fn b_construction(k: usize, n: usize, modulus_g: bool) -> Result<Structure> {
    Structure::from_fns(
        k,
        2,
        n,
        |t| t.iter().copied().collect(),
        |t| {
            if modulus_g {
                t.iter().fold(1 % k, |acc, &x| acc * x % k)
            } else {
                t.iter().fold(1usize, |acc, &x| acc.saturating_mul(x)).min(k - 1)
            }
        },
    )
}

/// The pair lift of a semiring together with the verdicts on both.
#[derive(Clone, Debug, Serialize)]
pub struct SemiringLift {
    pub structure: Structure,
    /// `(m,n)`-semihyperring verdict on the input read as `f = {x + y}`, `g = x × y`.
    pub base: AxiomVerdict,
    /// Verdict on the lift `f(x, y) = {x, y}`, `g = x × y`.
    pub lifted: AxiomVerdict,
}

/// Lifts a binary semiring `(add, mul)` by the pair hyperoperation.
///
/// The lift replaces addition by `{x, y}`, so `add` only enters the
/// reported verdict on the base semiring.
pub fn semiring_lift(add: &OpTable, mul: &OpTable) -> Result<SemiringLift> {
    for t in [add, mul] {
        if t.arity() != 2 {
            return Err(Error::Arity {
                expected: 2,
                got: t.arity(),
            });
        }
    }
    if add.k() != mul.k() {
        return Err(Error::domain("addition and multiplication tables differ in size"));
    }
    let k = add.k();
    let opts = CheckOptions::default();
    let base = Structure::new(
        HyperOpTable::new(k, 2, add.entries().map(SubsetMask::singleton).collect())?,
        mul.clone(),
    )?;
    let structure = Structure::new(HyperOpTable::from_fn(k, 2, |t| t.iter().copied().collect())?, mul.clone())?;
    Ok(SemiringLift {
        base: check_mn_semihyperring(&base, &opts),
        lifted: check_mn_semihyperring(&structure, &opts),
        structure,
    })
}

/// `({0,1}, OR, AND)`.
pub fn boolean_semiring() -> (OpTable, OpTable) {
    (
        OpTable::from_fn(2, 2, |t| t[0] | t[1]).expect("2x2 table"),
        OpTable::from_fn(2, 2, |t| t[0] & t[1]).expect("2x2 table"),
    )
}

/// `(Z_k, +, ×)`.
pub fn residue_semiring(k: usize) -> Result<(OpTable, OpTable)> {
    Ok((
        OpTable::from_fn(k, 2, |t| (t[0] + t[1]) % k)?,
        OpTable::from_fn(k, 2, |t| t[0] * t[1] % k)?,
    ))
}

/// A seeded generator following the rules in the module docs.
pub struct TableRng(Xoshiro256PlusPlus);

impl TableRng {
    pub fn new(seed: u64) -> Self {
        TableRng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    /// Uniform draw in `0..q`.
    #[inline]
    pub fn below(&mut self, q: u64) -> u64 {
        ((self.0.next_u64() as u128 * q as u128) >> 64) as u64
    }

    /// A non-empty subset of `0..k`, each element kept with probability `p/q`.
    pub fn subset(&mut self, k: usize, p: u64, q: u64) -> SubsetMask {
        loop {
            let set: SubsetMask = (0..k).filter(|_| self.below(q) < p).collect();
            if !set.is_empty() {
                return set;
            }
        }
    }

    /// A grade `j/d` with `j` uniform in `0..=d`.
    pub fn grade(&mut self, d: u64) -> Grade {
        Grade::new(self.below(d + 1) as i64, d as i64).expect("j/d lies in [0, 1]")
    }

    /// A grade `j/d` with `j` uniform in `1..=d`.
    pub fn positive_grade(&mut self, d: u64) -> Grade {
        Grade::new(self.below(d) as i64 + 1, d as i64).expect("j/d lies in (0, 1]")
    }
}

fn density_parts(density: Rational64) -> Result<(u64, u64)> {
    let (p, q) = (*density.numer(), *density.denom());
    if p <= 0 || p > q {
        return Err(Error::domain(format!("density {density} is outside (0, 1]")));
    }
    Ok((p as u64, q as u64))
}

/// A random structure: each `f` entry a non-empty subset with every
/// element present with probability `density`, `g` uniform.
pub fn random_structure(seed: u64, k: usize, m: usize, n: usize, density: Rational64) -> Result<Structure> {
    let (p, q) = density_parts(density)?;
    let mut rng = TableRng::new(seed);
    let f = HyperOpTable::from_fn(k, m, |_| rng.subset(k, p, q))?;
    let g = OpTable::from_fn(k, n, |_| rng.below(k as u64) as Element)?;
    Structure::new(f, g)
}

/// A random fuzzy subset with grades `j/d`.
pub fn random_fuzzy_subset(seed: u64, k: usize, d: u64) -> Result<FuzzySubset> {
    if d == 0 {
        return Err(Error::domain("grade denominator must be positive"));
    }
    let mut rng = TableRng::new(seed);
    FuzzySubset::new((0..k).map(|_| rng.grade(d)).collect())
}

/// Grades the support of `s` with random positive grades `j/d`.
pub fn random_fuzzy_structure(seed: u64, s: &Structure, d: u64) -> Result<FuzzyHyperStructure> {
    if d == 0 {
        return Err(Error::domain("grade denominator must be positive"));
    }
    let mut rng = TableRng::new(seed);
    let f_grades: Vec<Grade> = (0..s.f().shape().count() * s.k()).map(|_| rng.positive_grade(d)).collect();
    let g_grades: Vec<Grade> = (0..s.g().shape().count()).map(|_| rng.positive_grade(d)).collect();
    let k = s.k();
    FuzzyHyperStructure::graded(s, |i, z| f_grades[i * k + z], |i| g_grades[i])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Keep one representative per relabeling class.
    pub canonical: bool,
    /// Largest number of raw tables the search may visit.
    pub cap: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            canonical: true,
            cap: DEFAULT_SEARCH_CAP,
        }
    }
}

/// Number of raw table pairs over `k` elements: `(2^k - 1)^(k^m) * k^(k^n)`.
pub fn search_space(k: usize, m: usize, n: usize) -> Option<u128> {
    let fk = u32::try_from(TupleShape::new(k, m).ok()?.count()).ok()?;
    let gk = u32::try_from(TupleShape::new(k, n).ok()?.count()).ok()?;
    let subsets = (1u128 << k.min(127)) - 1;
    subsets.checked_pow(fk)?.checked_mul((k as u128).checked_pow(gk)?)
}

/// The table pair with mixed-radix index `idx`; the first `f` entry is
/// the most significant digit and `g` entries follow the `f` entries.
fn decode_model(k: usize, m: usize, n: usize, mut idx: u128) -> Result<Structure> {
    let fc = TupleShape::new(k, m)?.count();
    let gc = TupleShape::new(k, n)?.count();
    let subsets = (1u128 << k) - 1;
    let mut g = vec![0; gc];
    for slot in g.iter_mut().rev() {
        *slot = (idx % k as u128) as Element;
        idx /= k as u128;
    }
    let mut f = vec![SubsetMask::EMPTY; fc];
    for slot in f.iter_mut().rev() {
        *slot = SubsetMask::from_bits((idx % subsets) as u64 + 1);
        idx /= subsets;
    }
    Structure::new(HyperOpTable::new(k, m, f)?, OpTable::new(k, n, g)?)
}

/// Sort key: `f` bitmasks in table order, then `g` values.
fn table_key(s: &Structure) -> Vec<u64> {
    s.f().entries()
        .iter()
        .map(|e| e.bits())
        .chain(s.g().entries().map(|x| x as u64))
        .collect()
}

fn permutations(k: usize) -> Vec<Vec<Element>> {
    let mut out = Vec::new();
    let mut perm: Vec<Element> = (0..k).collect();
    loop {
        out.push(perm.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (1..k).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| perm[j] > perm[i - 1]).expect("a larger element exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// The relabeling of `s` with the lexicographically least table.
pub fn canonical_form(s: &Structure) -> Structure {
    canonical_with(s, &permutations(s.k()))
}

fn canonical_with(s: &Structure, perms: &[Vec<Element>]) -> Structure {
    perms
        .iter()
        .map(|p| s.permuted(p).expect("permutations relabel"))
        .min_by_key(table_key)
        .expect("at least the identity permutation")
}

/// Every structure over `k` elements meeting all `requirements`.
///
/// Without canonicalization, results come in table-index order. With it,
/// each relabeling class contributes its canonical form, and results are
/// sorted by table.
pub fn search_models(
    k: usize,
    m: usize,
    n: usize,
    requirements: &[Requirement<'_>],
    opts: SearchOptions,
) -> Result<Vec<Structure>> {
    if m < 2 || n < 2 {
        return Err(Error::ArityTooSmall(m.min(n)));
    }
    crate::table::check_universe(k)?;
    let needed = search_space(k, m, n).unwrap_or(u128::MAX);
    if needed > opts.cap {
        return Err(Error::ResourceCap {
            what: "model search (raw tables)".into(),
            needed,
            cap: opts.cap,
        });
    }
    let check = CheckOptions::default();
    let hits: Vec<Structure> = (0..needed as u64)
        .into_par_iter()
        .map(|idx| decode_model(k, m, n, idx as u128))
        .filter(|s| {
            s.as_ref()
                .map_or(true, |s| requirements.iter().all(|r| r.is_met(s, &check)))
        })
        .collect::<Result<_>>()?;
    if !opts.canonical {
        return Ok(hits);
    }
    let perms = permutations(k);
    let mut forms: Vec<Structure> = hits.par_iter().map(|s| canonical_with(s, &perms)).collect();
    let mut seen = HashSet::new();
    forms.retain(|s| seen.insert(table_key(s)));
    forms.sort_by_cached_key(table_key);
    Ok(forms)
}
