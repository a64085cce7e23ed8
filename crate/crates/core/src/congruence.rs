//! Congruences, quotients and natural maps.
//!
//! Two subsets are related when they meet exactly the same classes. Under
//! that lift, "strongly regular" is read as: a congruence where every
//! `f`-output lies in a single class, so all outputs of related tuples
//! share one class.

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::axioms::{sweep, AxiomVerdict, CheckOptions, Value, Witness};
use crate::error::{Error, Result};
use crate::morphisms::{self, Mapping, SearchMode};
use crate::structure::Structure;
use crate::subset::SubsetMask;
use crate::table::{check_universe, Element, TupleShape};

/// Default cap on the number of partitions a sweep may visit.
pub const DEFAULT_PARTITION_CAP: u128 = 1_000_000;

/// A partition of the universe as a class id per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct EquivRelation {
    class_of: Vec<usize>,
    #[serde(skip)]
    classes: usize,
}

impl EquivRelation {
    /// Class ids must be exactly `0..c` with every class used.
    pub fn new(class_of: Vec<usize>) -> Result<Self> {
        check_universe(class_of.len())?;
        let classes = class_of.iter().max().map_or(0, |&c| c + 1);
        let mut seen = vec![false; classes];
        for &c in &class_of {
            seen[c] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::domain(format!("class id {missing} is unused; ids must be contiguous")));
        }
        Ok(EquivRelation { class_of, classes })
    }

    /// Renumbers arbitrary labels by first occurrence.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut ids: Vec<(usize, usize)> = Vec::new();
        let class_of = labels
            .iter()
            .map(|l| match ids.iter().find(|(x, _)| x == l) {
                Some(&(_, id)) => id,
                None => {
                    ids.push((*l, ids.len()));
                    ids.len() - 1
                }
            })
            .collect();
        EquivRelation::new(class_of)
    }

    pub fn identity(k: usize) -> Result<Self> {
        EquivRelation::new((0..k).collect())
    }

    pub fn universal(k: usize) -> Result<Self> {
        EquivRelation::new(vec![0; k])
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.class_of.len()
    }

    #[inline]
    pub fn class_count(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn class_of(&self, x: Element) -> usize {
        self.class_of[x]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_of
    }

    #[inline]
    pub fn related(&self, x: Element, y: Element) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn class(&self, c: usize) -> SubsetMask {
        (0..self.k()).filter(|&x| self.class_of[x] == c).collect()
    }

    /// The classes `set` meets, as a mask over class ids.
    #[inline]
    pub fn class_image(&self, set: SubsetMask) -> SubsetMask {
        set.iter().map(|x| self.class_of[x]).collect()
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &EquivRelation) -> bool {
        self.k() == coarser.k()
            && (0..self.k()).all(|x| (0..self.k()).all(|y| !self.related(x, y) || coarser.related(x, y)))
    }

    /// Same partition, class ids numbered by first occurrence.
    pub fn canonical(&self) -> EquivRelation {
        EquivRelation::from_labels(&self.class_of).expect("relabeling a valid partition")
    }
}

impl<'de> Deserialize<'de> for EquivRelation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        EquivRelation::new(Vec::<usize>::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

fn check_rel(s: &Structure, rel: &EquivRelation) -> Result<()> {
    if rel.k() != s.k() {
        return Err(Error::domain(format!(
            "relation covers {} elements, structure has {}",
            rel.k(),
            s.k()
        )));
    }
    Ok(())
}

/// Every element of `a` is related to some element of `b` and vice versa.
pub fn subsets_related(rel: &EquivRelation, a: SubsetMask, b: SubsetMask) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let k = rel.k();
    for set in [a, b] {
        if !set.fits(k) {
            return Err(Error::ElementOutOfRange {
                element: set.max().unwrap_or(0),
                k,
            });
        }
    }
    Ok(rel.class_image(a) == rel.class_image(b))
}

/// Smallest member of each class.
fn representatives(rel: &EquivRelation) -> Vec<Element> {
    let mut reps = vec![usize::MAX; rel.class_count()];
    for x in (0..rel.k()).rev() {
        reps[rel.class_of(x)] = x;
    }
    reps
}

/// Compatibility with `f` (related tuples give related subsets) and with `g`.
///
/// Each tuple is compared with the tuple obtained by replacing one slot by
/// the smallest member of its class. Related tuples are linked by a chain
/// of such one-slot moves, so this covers every pair by transitivity.
pub fn is_congruence(s: &Structure, rel: &EquivRelation, opts: &CheckOptions) -> Result<AxiomVerdict> {
    const NAME: &str = "congruence";
    check_rel(s, rel)?;
    let reps = representatives(rel);
    let (fs, gs) = (s.f().shape(), s.g().shape());
    let (m, n) = (s.m(), s.n());
    let f_len = m * fs.count();
    let result = sweep(f_len + n * gs.count(), opts, |idx, _| {
        let (shape, slot, i) = if idx < f_len {
            (fs, idx / fs.count(), idx % fs.count())
        } else {
            let j = idx - f_len;
            (gs, j / gs.count(), j % gs.count())
        };
        let tuple = shape.decode(i);
        let x = tuple[slot];
        let r = reps[rel.class_of(x)];
        if x == r {
            return Vec::new();
        }
        let j = i - (x - r) * shape.stride(slot);
        let (lhs, rhs, ok) = if idx < f_len {
            let (a, b) = (s.f().at(i), s.f().at(j));
            (Value::Set(a), Value::Set(b), rel.class_image(a) == rel.class_image(b))
        } else {
            let (a, b) = (s.g().at(i), s.g().at(j));
            (Value::Element(a), Value::Element(b), rel.related(a, b))
        };
        if ok {
            Vec::new()
        } else {
            vec![Witness {
                axiom: NAME.into(),
                tuples: vec![tuple, shape.decode(j)],
                positions: vec![slot + 1],
                lhs,
                rhs,
            }]
        }
    });
    Ok(AxiomVerdict::from_sweep(NAME, result))
}

fn require_congruence(s: &Structure, rel: &EquivRelation) -> Result<()> {
    if !is_congruence(s, rel, &CheckOptions::default())?.holds {
        return Err(Error::precondition("relation is not a congruence"));
    }
    Ok(())
}

/// Related pairs `(x, y)` with `x ≠ y`, in lexicographic order.
fn related_pairs(rel: &EquivRelation) -> Vec<(Element, Element)> {
    let k = rel.k();
    (0..k)
        .flat_map(|x| (0..k).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y && rel.related(x, y))
        .collect()
}

/// The translation properties: `f(x, a) ≅ f(y, a)` with `x` in the first
/// slot, and `g(a, x, b) ≅ g(a, y, b)` in every slot, for all related
/// `x ≅ y` and all parameters. Swept pair by pair, independently of
/// [`is_congruence`].
pub fn check_translation_lemma(s: &Structure, rel: &EquivRelation, opts: &CheckOptions) -> Result<AxiomVerdict> {
    const NAME: &str = "translation-lemma";
    check_rel(s, rel)?;
    require_congruence(s, rel)?;
    let pairs = related_pairs(rel);
    let (fs, gs) = (s.f().shape(), s.g().shape());
    let f_params = fs.count() / s.k();
    let g_params = gs.count() / s.k();
    let f_len = pairs.len() * f_params;
    let g_len = pairs.len() * s.n() * g_params;
    let result = sweep(f_len + g_len, opts, |idx, _| {
        if idx < f_len {
            let (x, y) = pairs[idx / f_params];
            let a = idx % f_params;
            let stride = fs.stride(0);
            let (i, j) = (x * stride + a, y * stride + a);
            let (u, v) = (s.f().at(i), s.f().at(j));
            if rel.class_image(u) == rel.class_image(v) {
                return Vec::new();
            }
            return vec![Witness {
                axiom: NAME.into(),
                tuples: vec![fs.decode(i), fs.decode(j)],
                positions: vec![1],
                lhs: Value::Set(u),
                rhs: Value::Set(v),
            }];
        }
        let r = idx - f_len;
        let (x, y) = pairs[r / (s.n() * g_params)];
        let slot = (r / g_params) % s.n();
        let params = r % g_params;
        // Spread the (n-1)-tuple of parameters around the slot.
        let stride = gs.stride(slot);
        let base = (params / stride) * stride * s.k() + params % stride;
        let (i, j) = (base + x * stride, base + y * stride);
        let (u, v) = (s.g().at(i), s.g().at(j));
        if rel.related(u, v) {
            Vec::new()
        } else {
            vec![Witness {
                axiom: NAME.into(),
                tuples: vec![gs.decode(i), gs.decode(j)],
                positions: vec![slot + 1],
                lhs: Value::Element(u),
                rhs: Value::Element(v),
            }]
        }
    });
    Ok(AxiomVerdict::from_sweep(NAME, result))
}

/// Related m-tuples `b` of `a`, componentwise, in row-major order.
fn related_tuples(rel: &EquivRelation, shape: TupleShape, a: &[Element]) -> Vec<usize> {
    let classes: Vec<Vec<Element>> = a.iter().map(|&x| rel.class(rel.class_of(x)).to_vec()).collect();
    let mut out = Vec::new();
    let mut cursor = vec![0usize; a.len()];
    'outer: loop {
        out.push(cursor.iter().zip(&classes).fold(0, |acc, (&c, cl)| acc * shape.k() + cl[c]));
        let mut slot = a.len();
        loop {
            if slot == 0 {
                break 'outer;
            }
            slot -= 1;
            cursor[slot] += 1;
            if cursor[slot] < classes[slot].len() {
                break;
            }
            cursor[slot] = 0;
        }
    }
    out
}

/// `f(a_1^k, x_{k+1}^m) ≅ f(b_1^k, y_{k+1}^m)` whenever `a_i ≅ b_i` and
/// `x_j ≅ y_j`. Every split point `k` ranges over the same set of
/// componentwise-related tuple pairs, so one full sweep over all such pairs
/// decides every `k` at once.
pub fn check_mixed_congruence(s: &Structure, rel: &EquivRelation, opts: &CheckOptions) -> Result<AxiomVerdict> {
    const NAME: &str = "mixed-congruence";
    check_rel(s, rel)?;
    require_congruence(s, rel)?;
    let fs = s.f().shape();
    let result = sweep(fs.count(), opts, |i, all| {
        let a = fs.decode(i);
        let lhs = s.f().at(i);
        let mut found = Vec::new();
        for j in related_tuples(rel, fs, &a) {
            let rhs = s.f().at(j);
            if rel.class_image(lhs) != rel.class_image(rhs) {
                found.push(Witness {
                    axiom: NAME.into(),
                    tuples: vec![a.clone(), fs.decode(j)],
                    positions: vec![],
                    lhs: Value::Set(lhs),
                    rhs: Value::Set(rhs),
                });
                if !all {
                    break;
                }
            }
        }
        found
    });
    Ok(AxiomVerdict::from_sweep(NAME, result))
}

/// A congruence where every `f(a)` lies within one class.
pub fn is_strongly_regular(s: &Structure, rel: &EquivRelation) -> Result<bool> {
    if !is_congruence(s, rel, &CheckOptions::default())?.holds {
        return Ok(false);
    }
    Ok(s.f().entries().iter().all(|&e| rel.class_image(e).len() == 1))
}

/// The quotient structure on class ids.
///
/// Built from the smallest member of each class and cross-checked against
/// the largest; a disagreement is an internal inconsistency.
pub fn quotient(s: &Structure, rel: &EquivRelation) -> Result<Structure> {
    check_rel(s, rel)?;
    require_congruence(s, rel)?;
    let c = rel.class_count();
    let lo = representatives(rel);
    let mut hi = vec![0; c];
    for x in 0..rel.k() {
        hi[rel.class_of(x)] = x;
    }
    let lift = |t: &[Element], reps: &[Element], buf: &mut Vec<Element>| {
        buf.clear();
        buf.extend(t.iter().map(|&q| reps[q]));
    };
    let mut mismatch = None;
    let mut g_mismatch = None;
    let mut buf = Vec::new();
    let (fs, gs) = (s.f().shape(), s.g().shape());
    let q = Structure::from_fns(
        c,
        s.m(),
        s.n(),
        |t| {
            lift(t, &lo, &mut buf);
            let a = rel.class_image(s.f().at(fs.encode_unchecked(&buf)));
            lift(t, &hi, &mut buf);
            let b = rel.class_image(s.f().at(fs.encode_unchecked(&buf)));
            if a != b && mismatch.is_none() {
                mismatch = Some(t.to_vec());
            }
            a
        },
        |t| {
            let mut buf = Vec::with_capacity(t.len());
            lift(t, &lo, &mut buf);
            let a = rel.class_of(s.g().at(gs.encode_unchecked(&buf)));
            lift(t, &hi, &mut buf);
            let b = rel.class_of(s.g().at(gs.encode_unchecked(&buf)));
            if a != b && g_mismatch.is_none() {
                g_mismatch = Some(t.to_vec());
            }
            a
        },
    )?;
    if let Some(t) = mismatch {
        return Err(Error::Inconsistent(format!(
            "quotient f depends on representatives at class tuple {t:?}"
        )));
    }
    if let Some(t) = g_mismatch {
        return Err(Error::Inconsistent(format!(
            "quotient g depends on representatives at class tuple {t:?}"
        )));
    }
    Ok(q)
}

/// The quotient together with the natural map `x ↦ class(x)`.
pub fn natural_map(s: &Structure, rel: &EquivRelation) -> Result<(Structure, Vec<Element>)> {
    let q = quotient(s, rel)?;
    Ok((q, rel.class_ids().to_vec()))
}

/// `σ/ρ`: the partition of `ρ`-classes induced by `σ`.
pub fn relation_quotient(sigma: &EquivRelation, rho: &EquivRelation, s: &Structure) -> Result<EquivRelation> {
    check_rel(s, sigma)?;
    check_rel(s, rho)?;
    if !rho.refines(sigma) {
        return Err(Error::domain("rho is not contained in sigma"));
    }
    require_congruence(s, sigma)?;
    require_congruence(s, rho)?;
    let reps = representatives(rho);
    EquivRelation::from_labels(&reps.iter().map(|&x| sigma.class_of(x)).collect::<Vec<_>>())
}

/// Whether `(H/ρ)/(σ/ρ)` and `H/σ` are isomorphic.
pub fn check_double_quotient_iso(s: &Structure, sigma: &EquivRelation, rho: &EquivRelation) -> Result<bool> {
    let induced = relation_quotient(sigma, rho, s)?;
    let by_rho = quotient(s, rho)?;
    let left = quotient(&by_rho, &induced)?;
    let right = quotient(s, sigma)?;
    Ok(!morphisms::enumerate_homomorphisms(&left, &right, SearchMode::Iso, morphisms::DEFAULT_HOM_CAP)?.is_empty())
}

/// The natural map as a [`Mapping`] into a quotient built by [`quotient`].
pub fn natural_mapping<'a>(s: &'a Structure, rel: &EquivRelation, q: &'a Structure) -> Result<Mapping<'a>> {
    Mapping::new(s, q, rel.class_ids().to_vec())
}

/// Bell numbers, saturating.
pub fn bell(k: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().expect("rows are non-empty"));
        for &x in &row {
            let v = next.last().expect("just pushed").saturating_add(x);
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Every partition of `0..k` as a restricted growth string, in
/// lexicographic order.
pub fn partitions(k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (k > 0).then(|| vec![0; k]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut rgs = current.clone();
        // Advance: bump the rightmost slot that may grow, reset the tail.
        let mut i = k;
        while i > 1 {
            i -= 1;
            let bound = rgs[..i].iter().max().copied().unwrap_or(0) + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                for x in &mut rgs[i + 1..] {
                    *x = 0;
                }
                next = Some(rgs);
                break;
            }
        }
        Some(current)
    })
}

/// All congruences on `s`, in restricted-growth-string order.
pub fn enumerate_congruences(s: &Structure, cap: u128) -> Result<Vec<EquivRelation>> {
    let needed = bell(s.k());
    if needed > cap {
        return Err(Error::ResourceCap {
            what: "congruence enumeration (Bell(k) partitions)".into(),
            needed,
            cap,
        });
    }
    let candidates: Vec<EquivRelation> = partitions(s.k())
        .map(|p| EquivRelation::new(p).expect("restricted growth strings are partitions"))
        .collect();
    let opts = CheckOptions::default();
    candidates
        .into_par_iter()
        .filter_map(|rel| match is_congruence(s, &rel, &opts) {
            Ok(v) if v.holds => Some(Ok(rel)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}
