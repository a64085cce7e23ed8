//! Fuzzy subsets, fuzzy hyperideals and fuzzy hyperoperations.
//!
//! Grades are exact rationals in `[0, 1]`; every comparison is exact. The
//! infimum over `f(x_1,..,x_m)` is a minimum since the subset is finite and
//! non-empty.
//!
//! A fuzzy hyperoperation is stored as a graded output distribution: each
//! tuple assigns a grade to every possible output. The associated crisp
//! structure keeps the outputs of strictly positive grade.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::axioms::{sweep, AxiomVerdict, CheckOptions, Value, Witness};
use crate::error::{Error, Result};
use crate::ideals;
use crate::morphisms::{self, HomKind, Mapping};
use crate::structure::Structure;
use crate::subset::SubsetMask;
use crate::table::{check_universe, Element, HyperOpTable, OpTable, TupleShape};

/// A membership grade: an exact rational in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade(Rational64);

impl Grade {
    pub const ZERO: Grade = Grade(Rational64::new_raw(0, 1));
    pub const ONE: Grade = Grade(Rational64::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::domain("grade has a zero denominator"));
        }
        Grade::try_from(Rational64::new(numer, denom))
    }

    #[inline]
    pub fn value(self) -> Rational64 {
        self.0
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 > Rational64::zero()
    }
}

impl TryFrom<Rational64> for Grade {
    type Error = Error;

    fn try_from(r: Rational64) -> Result<Self> {
        if r < Rational64::zero() || r > Rational64::one() {
            return Err(Error::domain(format!("grade {r} is outside [0, 1]")));
        }
        Ok(Grade(r))
    }
}

impl FromStr for Grade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        Grade::try_from(r)
    }
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::domain(format!("`{s}` is not a rational of the form p/q"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(p, q))
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Grade {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Grade {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A grade function on the universe, serialized as `["1", "1/2", "0"]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FuzzySubset {
    grades: Vec<Grade>,
}

impl FuzzySubset {
    pub fn new(grades: Vec<Grade>) -> Result<Self> {
        check_universe(grades.len())?;
        Ok(FuzzySubset { grades })
    }

    pub fn constant(k: usize, grade: Grade) -> Result<Self> {
        FuzzySubset::new(vec![grade; k])
    }

    /// Grades 1 on `set`, 0 elsewhere.
    pub fn characteristic(set: SubsetMask, k: usize) -> Result<Self> {
        FuzzySubset::new((0..k).map(|x| if set.contains(x) { Grade::ONE } else { Grade::ZERO }).collect())
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.grades.len()
    }

    #[inline]
    pub fn grade(&self, x: Element) -> Grade {
        self.grades[x]
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    /// Distinct grades in ascending order.
    pub fn distinct_grades(&self) -> Vec<Grade> {
        let mut g = self.grades.clone();
        g.sort();
        g.dedup();
        g
    }

    pub fn max_grade(&self) -> Grade {
        *self.grades.iter().max().expect("fuzzy subsets are non-empty")
    }
}

impl<'de> Deserialize<'de> for FuzzySubset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        FuzzySubset::new(Vec::<Grade>::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// `μ_t = { x : μ(x) ≥ t }`.
pub fn level_subset(mu: &FuzzySubset, t: Rational64) -> Result<SubsetMask> {
    let t = Grade::try_from(t)?;
    Ok((0..mu.k()).filter(|&x| mu.grade(x) >= t).collect())
}

fn check_k(s: &Structure, mu: &FuzzySubset) -> Result<()> {
    if s.k() != mu.k() {
        return Err(Error::domain(format!(
            "fuzzy subset has {} grades for a universe of {}",
            mu.k(),
            s.k()
        )));
    }
    Ok(())
}

/// `min μ(x_i) ≤ min { μ(z) : z ∈ f(x) }` for every m-tuple.
fn f_condition(s: &Structure, mu: &FuzzySubset, opts: &CheckOptions, name: &str) -> AxiomVerdict {
    let fs = s.f().shape();
    let result = sweep(fs.count(), opts, |i, _| {
        let tuple = fs.decode(i);
        let lo = tuple.iter().map(|&x| mu.grade(x)).min().expect("arity ≥ 2");
        let inf = s.f().at(i).iter().map(|z| mu.grade(z)).min().expect("f entries are non-empty");
        if lo <= inf {
            Vec::new()
        } else {
            vec![Witness {
                axiom: name.into(),
                tuples: vec![tuple],
                positions: vec![],
                lhs: Value::Grade(lo),
                rhs: Value::Grade(inf),
            }]
        }
    });
    AxiomVerdict::from_sweep(name, result)
}

/// Fuzzy (m,n)-sub-semihyperring: the `f` condition and
/// `min μ(x_i) ≤ μ(g(x_1,..,x_n))`.
pub fn is_fuzzy_sub_semihyperring(s: &Structure, mu: &FuzzySubset, opts: &CheckOptions) -> Result<AxiomVerdict> {
    const NAME: &str = "fuzzy-sub-semihyperring";
    check_k(s, mu)?;
    let f = f_condition(s, mu, opts, NAME);
    if !f.holds && !opts.exhaustive {
        return Ok(f);
    }
    let gs = s.g().shape();
    let result = sweep(gs.count(), opts, |i, _| {
        let tuple = gs.decode(i);
        let lo = tuple.iter().map(|&x| mu.grade(x)).min().expect("arity ≥ 2");
        let out = mu.grade(s.g().at(i));
        if lo <= out {
            Vec::new()
        } else {
            vec![Witness {
                axiom: NAME.into(),
                tuples: vec![tuple],
                positions: vec![],
                lhs: Value::Grade(lo),
                rhs: Value::Grade(out),
            }]
        }
    });
    Ok(merge(NAME, f, AxiomVerdict::from_sweep(NAME, result)))
}

fn merge(name: &str, first: AxiomVerdict, second: AxiomVerdict) -> AxiomVerdict {
    let mut out = if first.holds { second.clone() } else { first.clone() };
    out.axiom = name.to_string();
    if first.all_witnesses.is_some() || second.all_witnesses.is_some() {
        out.all_witnesses = Some(
            first
                .all_witnesses
                .into_iter()
                .chain(second.all_witnesses)
                .flatten()
                .collect(),
        );
    }
    out
}

/// Which argument slots of `g` must not lower the grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuzzyIdealSlots {
    /// Every slot: the fuzzy hyperideal.
    All,
    /// The last slot: `μ(x_n) ≤ μ(g(x))`, the fuzzy left hyperideal.
    Left,
    /// The first slot: the fuzzy right hyperideal.
    Right,
}

fn fuzzy_ideal(
    s: &Structure,
    mu: &FuzzySubset,
    slots: FuzzyIdealSlots,
    opts: &CheckOptions,
    name: &str,
) -> Result<AxiomVerdict> {
    check_k(s, mu)?;
    let f = f_condition(s, mu, opts, name);
    if !f.holds && !opts.exhaustive {
        return Ok(f);
    }
    let n = s.n();
    let checked: Vec<usize> = match slots {
        FuzzyIdealSlots::All => (0..n).collect(),
        FuzzyIdealSlots::Left => vec![n - 1],
        FuzzyIdealSlots::Right => vec![0],
    };
    let gs = s.g().shape();
    let result = sweep(gs.count(), opts, |i, all| {
        let tuple = gs.decode(i);
        let out = mu.grade(s.g().at(i));
        let mut found = Vec::new();
        for &slot in &checked {
            let arg = mu.grade(tuple[slot]);
            if arg > out {
                found.push(Witness {
                    axiom: name.into(),
                    tuples: vec![tuple.clone()],
                    positions: vec![slot + 1],
                    lhs: Value::Grade(arg),
                    rhs: Value::Grade(out),
                });
                if !all {
                    break;
                }
            }
        }
        found
    });
    Ok(merge(name, f, AxiomVerdict::from_sweep(name, result)))
}

/// Fuzzy hyperideal: the `f` condition and `μ(x_i) ≤ μ(g(x_1,..,x_n))` for every slot.
pub fn is_fuzzy_hyperideal(s: &Structure, mu: &FuzzySubset, opts: &CheckOptions) -> Result<AxiomVerdict> {
    fuzzy_ideal(s, mu, FuzzyIdealSlots::All, opts, "fuzzy-hyperideal")
}

pub fn is_fuzzy_left_hyperideal(s: &Structure, mu: &FuzzySubset, opts: &CheckOptions) -> Result<AxiomVerdict> {
    fuzzy_ideal(s, mu, FuzzyIdealSlots::Left, opts, "fuzzy-left-hyperideal")
}

pub fn is_fuzzy_right_hyperideal(s: &Structure, mu: &FuzzySubset, opts: &CheckOptions) -> Result<AxiomVerdict> {
    fuzzy_ideal(s, mu, FuzzyIdealSlots::Right, opts, "fuzzy-right-hyperideal")
}

/// `μ_I(x) = s` on `I`, `t` elsewhere, with `0 ≤ t < s ≤ 1`.
pub fn two_valued_fuzzy(ideal: SubsetMask, s: Rational64, t: Rational64, k: usize) -> Result<FuzzySubset> {
    let (hi, lo) = (Grade::try_from(s)?, Grade::try_from(t)?);
    if lo >= hi {
        return Err(Error::domain(format!("need t < s, got s = {hi}, t = {lo}")));
    }
    check_universe(k)?;
    if ideal.is_empty() {
        return Err(Error::EmptySubset);
    }
    if !ideal.fits(k) {
        return Err(Error::ElementOutOfRange {
            element: ideal.max().unwrap_or(0),
            k,
        });
    }
    FuzzySubset::new((0..k).map(|x| if ideal.contains(x) { hi } else { lo }).collect())
}

/// Levels worth testing: the distinct grades of `μ` together with 0. The
/// level subset is constant between consecutive grades, so these decide
/// every `t ∈ [0, 1]`.
pub fn critical_levels(mu: &FuzzySubset) -> Vec<Grade> {
    let mut levels = mu.distinct_grades();
    if levels.first() != Some(&Grade::ZERO) {
        levels.insert(0, Grade::ZERO);
    }
    levels
}

/// Every non-empty level subset of `μ` is a hyperideal.
pub fn all_levels_are_hyperideals(s: &Structure, mu: &FuzzySubset) -> Result<bool> {
    check_k(s, mu)?;
    for t in critical_levels(mu) {
        let level = level_subset(mu, t.value())?;
        if !level.is_empty() && !ideals::is_hyperideal(s, level)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of the level-set characterization: `(μ is a fuzzy
/// hyperideal, every non-empty level subset is a hyperideal)`.
pub fn level_theorem_sides(s: &Structure, mu: &FuzzySubset) -> Result<(bool, bool)> {
    let fuzzy = is_fuzzy_hyperideal(s, mu, &CheckOptions::default())?.holds;
    Ok((fuzzy, all_levels_are_hyperideals(s, mu)?))
}

/// True when the two sides of the level-set characterization agree for `μ`.
pub fn check_level_theorem(s: &Structure, mu: &FuzzySubset) -> Result<bool> {
    let (fuzzy, levels) = level_theorem_sides(s, mu)?;
    Ok(fuzzy == levels)
}

/// How the corollary's upper bound `t_0` is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UpperBound {
    /// The largest grade `μ` attains.
    #[default]
    MaxGrade,
    /// The top of the codomain, 1. Levels above the largest grade are then
    /// empty, and an empty set is never a hyperideal.
    One,
}

/// The corollary's three statements: fuzzy hyperideal; every non-empty
/// level subset is a hyperideal; every level subset for `t ∈ [0, t_0]` is a
/// hyperideal.
pub fn corollary_statements(s: &Structure, mu: &FuzzySubset, bound: UpperBound) -> Result<[bool; 3]> {
    let (first, second) = level_theorem_sides(s, mu)?;
    let top = match bound {
        UpperBound::MaxGrade => mu.max_grade(),
        UpperBound::One => Grade::ONE,
    };
    let mut third = true;
    let mut levels: Vec<Grade> = critical_levels(mu).into_iter().filter(|&t| t <= top).collect();
    // Any t in (max grade, top] selects the empty level.
    if top > mu.max_grade() {
        levels.push(top);
    }
    for t in levels {
        let level = level_subset(mu, t.value())?;
        if level.is_empty() || !ideals::is_hyperideal(s, level)? {
            third = false;
            break;
        }
    }
    Ok([first, second, third])
}

/// True when the corollary's three statements evaluate identically.
pub fn threshold_corollary(s: &Structure, mu: &FuzzySubset, bound: UpperBound) -> Result<bool> {
    let [a, b, c] = corollary_statements(s, mu, bound)?;
    Ok(a == b && b == c)
}

// ---------------------------------------------------------------------------
// Fuzzy hyperoperations

/// Graded versions of `f` and `g`: every tuple grades every possible output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyHyperStructure {
    k: usize,
    f_shape: TupleShape,
    g_shape: TupleShape,
    mu_f: Vec<Grade>,
    mu_g: Vec<Grade>,
}

impl FuzzyHyperStructure {
    /// `mu_f` is indexed by `tuple_index * k + output` (likewise `mu_g`).
    /// Every m-tuple needs an output of positive grade.
    pub fn new(k: usize, m: usize, n: usize, mu_f: Vec<Grade>, mu_g: Vec<Grade>) -> Result<Self> {
        check_universe(k)?;
        for arity in [m, n] {
            if arity < 2 {
                return Err(Error::ArityTooSmall(arity));
            }
        }
        let f_shape = TupleShape::new(k, m)?;
        let g_shape = TupleShape::new(k, n)?;
        if mu_f.len() != f_shape.count() * k || mu_g.len() != g_shape.count() * k {
            return Err(Error::domain("graded tables have the wrong length"));
        }
        for i in 0..f_shape.count() {
            if !mu_f[i * k..(i + 1) * k].iter().any(|g| g.is_positive()) {
                return Err(Error::InvalidEntry {
                    flat_index: i,
                    tuple: f_shape.decode(i),
                    reason: "no output of positive grade".into(),
                });
            }
        }
        Ok(FuzzyHyperStructure {
            k,
            f_shape,
            g_shape,
            mu_f,
            mu_g,
        })
    }

    /// Grades `f_grade` on the entries of `f`, `g_grade` on the value of `g`, 0 elsewhere.
    pub fn from_structure(s: &Structure, f_grade: Grade, g_grade: Grade) -> Result<Self> {
        Self::graded(s, |_, _| f_grade, |_| g_grade)
    }

    /// Lifts `s`, grading each `f` output by `f_grade(tuple_index, output)`
    /// and each `g` value by `g_grade(tuple_index)`.
    pub fn graded(
        s: &Structure,
        mut f_grade: impl FnMut(usize, Element) -> Grade,
        mut g_grade: impl FnMut(usize) -> Grade,
    ) -> Result<Self> {
        let k = s.k();
        let mut mu_f = vec![Grade::ZERO; s.f().shape().count() * k];
        for i in 0..s.f().shape().count() {
            for z in s.f().at(i) {
                mu_f[i * k + z] = f_grade(i, z);
            }
        }
        let mut mu_g = vec![Grade::ZERO; s.g().shape().count() * k];
        for i in 0..s.g().shape().count() {
            mu_g[i * k + s.g().at(i)] = g_grade(i);
        }
        FuzzyHyperStructure::new(k, s.m(), s.n(), mu_f, mu_g)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.f_shape.len()
    }

    pub fn n(&self) -> usize {
        self.g_shape.len()
    }

    pub fn f_shape(&self) -> TupleShape {
        self.f_shape
    }

    pub fn g_shape(&self) -> TupleShape {
        self.g_shape
    }

    #[inline]
    pub fn grade_f(&self, tuple_index: usize, out: Element) -> Grade {
        self.mu_f[tuple_index * self.k + out]
    }

    #[inline]
    pub fn grade_g(&self, tuple_index: usize, out: Element) -> Grade {
        self.mu_g[tuple_index * self.k + out]
    }
}

#[derive(Serialize, Deserialize)]
struct GradedRecord {
    tuple: Vec<Element>,
    out: Element,
    grade: Grade,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FuzzyFile {
    k: usize,
    m: usize,
    n: usize,
    f: Vec<GradedRecord>,
    g: Vec<GradedRecord>,
}

// Sparse form: only records of positive grade, in (tuple, output) order.
impl Serialize for FuzzyHyperStructure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records = |shape: TupleShape, grades: &[Grade]| {
            grades
                .iter()
                .enumerate()
                .filter(|(_, g)| g.is_positive())
                .map(|(i, &grade)| GradedRecord {
                    tuple: shape.decode(i / self.k),
                    out: i % self.k,
                    grade,
                })
                .collect::<Vec<_>>()
        };
        FuzzyFile {
            k: self.k,
            m: self.m(),
            n: self.n(),
            f: records(self.f_shape, &self.mu_f),
            g: records(self.g_shape, &self.mu_g),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FuzzyHyperStructure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let file = FuzzyFile::deserialize(deserializer)?;
        let k = file.k;
        check_universe(k).map_err(D::Error::custom)?;
        let dense = |arity: usize, records: &[GradedRecord]| -> Result<Vec<Grade>> {
            let shape = TupleShape::new(k, arity)?;
            let mut grades = vec![Grade::ZERO; shape.count() * k];
            for r in records {
                if r.out >= k {
                    return Err(Error::ElementOutOfRange { element: r.out, k });
                }
                grades[shape.encode(&r.tuple)? * k + r.out] = r.grade;
            }
            Ok(grades)
        };
        if file.m < 2 || file.n < 2 {
            return Err(D::Error::custom(Error::ArityTooSmall(file.m.min(file.n))));
        }
        let mu_f = dense(file.m, &file.f).map_err(D::Error::custom)?;
        let mu_g = dense(file.n, &file.g).map_err(D::Error::custom)?;
        FuzzyHyperStructure::new(k, file.m, file.n, mu_f, mu_g).map_err(D::Error::custom)
    }
}

/// The crisp structure of strictly positive support.
pub fn associated_structure(fz: &FuzzyHyperStructure) -> Result<Structure> {
    let k = fz.k;
    let f = HyperOpTable::new(
        k,
        fz.m(),
        (0..fz.f_shape.count())
            .map(|i| (0..k).filter(|&z| fz.grade_f(i, z).is_positive()).collect())
            .collect(),
    )?;
    let mut g = Vec::with_capacity(fz.g_shape.count());
    for i in 0..fz.g_shape.count() {
        let support: Vec<Element> = (0..k).filter(|&z| fz.grade_g(i, z).is_positive()).collect();
        match support.as_slice() {
            [z] => g.push(*z),
            _ => {
                return Err(Error::InvalidEntry {
                    flat_index: i,
                    tuple: fz.g_shape.decode(i),
                    reason: format!("graded g has support {support:?}, expected one element"),
                })
            }
        }
    }
    Structure::new(f, OpTable::new(k, fz.n(), g)?)
}

fn check_fuzzy_map(src: &FuzzyHyperStructure, tgt: &FuzzyHyperStructure, image: &[Element]) -> Result<()> {
    if src.m() != tgt.m() || src.n() != tgt.n() {
        return Err(Error::domain(format!(
            "arities differ: ({},{}) vs ({},{})",
            src.m(),
            src.n(),
            tgt.m(),
            tgt.n()
        )));
    }
    if image.len() != src.k {
        return Err(Error::Arity {
            expected: src.k,
            got: image.len(),
        });
    }
    if let Some(&x) = image.iter().find(|&&x| x >= tgt.k) {
        return Err(Error::ElementOutOfRange { element: x, k: tgt.k });
    }
    Ok(())
}

/// `mu_f(x, z) ≤ mu_f'(φ(x), φ(z))` for every tuple `x` and output `z`,
/// and likewise for the graded `g`.
pub fn is_fuzzy_homomorphism(src: &FuzzyHyperStructure, tgt: &FuzzyHyperStructure, image: &[Element]) -> Result<bool> {
    check_fuzzy_map(src, tgt, image)?;
    let graded_ok = |shape: TupleShape, tshape: TupleShape, grade: &dyn Fn(usize, Element) -> Grade, tgrade: &dyn Fn(usize, Element) -> Grade| {
        let mut tuple = vec![0; shape.len()];
        let mut mapped = vec![0; shape.len()];
        (0..shape.count()).all(|i| {
            shape.decode_into(i, &mut tuple);
            for (y, &x) in mapped.iter_mut().zip(&tuple) {
                *y = image[x];
            }
            let j = tshape.encode_unchecked(&mapped);
            (0..src.k).all(|z| {
                let g = grade(i, z);
                !g.is_positive() || g <= tgrade(j, image[z])
            })
        })
    };
    Ok(graded_ok(src.f_shape, tgt.f_shape, &|i, z| src.grade_f(i, z), &|j, w| tgt.grade_f(j, w))
        && graded_ok(src.g_shape, tgt.g_shape, &|i, z| src.grade_g(i, z), &|j, w| tgt.grade_g(j, w)))
}

/// For a fuzzy homomorphism, whether the map is an inclusion homomorphism
/// of the associated crisp structures. Grade inequalities only give support
/// inclusion, so inclusion is what is checked.
pub fn check_fuzzy_to_crisp_hom(src: &FuzzyHyperStructure, tgt: &FuzzyHyperStructure, image: &[Element]) -> Result<bool> {
    if !is_fuzzy_homomorphism(src, tgt, image)? {
        return Err(Error::precondition("map is not a fuzzy homomorphism"));
    }
    let (a, b) = (associated_structure(src)?, associated_structure(tgt)?);
    let map = Mapping::new(&a, &b, image.to_vec())?;
    morphisms::check_homomorphism(&map, HomKind::Inclusion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    fn g(p: i64, q: i64) -> Grade {
        Grade::new(p, q).unwrap()
    }

    fn pairs(k: usize, n: usize) -> Structure {
        Structure::from_fns(k, 2, n, |t| t.iter().copied().collect(), |t| t.iter().product::<usize>() % k).unwrap()
    }

    #[test]
    fn grade_parsing_and_range() {
        assert_eq!("1/2".parse::<Grade>().unwrap(), g(1, 2));
        assert_eq!("2/4".parse::<Grade>().unwrap(), g(1, 2));
        assert_eq!("1".parse::<Grade>().unwrap(), Grade::ONE);
        assert!("3/2".parse::<Grade>().is_err());
        assert!("-1/2".parse::<Grade>().is_err());
        assert!("1/0".parse::<Grade>().is_err());
        assert!("x".parse::<Grade>().is_err());
        assert_eq!(serde_json::to_string(&g(2, 6)).unwrap(), "\"1/3\"");
    }

    #[test]
    fn level_subsets() {
        let mu = FuzzySubset::new(vec![Grade::ONE, g(1, 2), Grade::ZERO]).unwrap();
        assert_eq!(level_subset(&mu, r(1, 2)).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(level_subset(&mu, r(0, 1)).unwrap(), SubsetMask::full(3));
        let below_one = FuzzySubset::new(vec![g(1, 2), g(2, 3)]).unwrap();
        assert_eq!(level_subset(&below_one, r(1, 1)).unwrap(), SubsetMask::EMPTY);
        assert!(level_subset(&mu, r(5, 4)).is_err());
        assert!(level_subset(&mu, r(-1, 4)).is_err());
    }

    #[test]
    fn fuzzy_sub_semihyperring_examples() {
        let s = pairs(5, 3);
        let opts = CheckOptions::default();
        assert!(is_fuzzy_sub_semihyperring(&s, &FuzzySubset::constant(5, g(1, 3)).unwrap(), &opts).unwrap().holds);
        // {0, 1} is f-closed and closed under products
        let chi = FuzzySubset::characteristic([0, 1].into_iter().collect(), 5).unwrap();
        assert!(is_fuzzy_sub_semihyperring(&s, &chi, &opts).unwrap().holds);
        // g(0,0) = 1 drops the grade
        let shifted = Structure::from_fns(3, 2, 2, |t| t.iter().copied().collect(), |t| (t[0] + t[1] + 1) % 3).unwrap();
        let point = FuzzySubset::characteristic(SubsetMask::singleton(0), 3).unwrap();
        let v = is_fuzzy_sub_semihyperring(&shifted, &point, &opts).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().tuples, vec![vec![0, 0]]);
    }

    #[test]
    fn fuzzy_hyperideal_examples() {
        let s = pairs(6, 2);
        let opts = CheckOptions::default();
        assert!(is_fuzzy_hyperideal(&s, &FuzzySubset::constant(6, g(1, 2)).unwrap(), &opts).unwrap().holds);
        let ideal: SubsetMask = [0, 3].into_iter().collect();
        let mu = two_valued_fuzzy(ideal, r(2, 3), r(1, 3), 6).unwrap();
        assert!(is_fuzzy_hyperideal(&s, &mu, &opts).unwrap().holds);
        // increasing grades while products fall back to 0
        let rising = FuzzySubset::new((0..6).map(|x| g(x as i64, 5)).collect()).unwrap();
        let v = is_fuzzy_hyperideal(&s, &rising, &opts).unwrap();
        assert!(!v.holds);
        assert!(is_fuzzy_hyperideal(&s, &FuzzySubset::constant(5, Grade::ONE).unwrap(), &opts).is_err());
    }

    #[test]
    fn two_valued_construction() {
        let h = SubsetMask::full(4);
        let mu = two_valued_fuzzy(h, r(1, 1), r(0, 1), 4).unwrap();
        assert!(mu.grades().iter().all(|&x| x == Grade::ONE));
        let chi = two_valued_fuzzy(SubsetMask::singleton(0), r(1, 1), r(0, 1), 3).unwrap();
        assert_eq!(chi, FuzzySubset::characteristic(SubsetMask::singleton(0), 3).unwrap());
        assert!(two_valued_fuzzy(h, r(1, 3), r(1, 3), 4).is_err());
        assert!(two_valued_fuzzy(h, r(1, 3), r(1, 2), 4).is_err());
        assert!(two_valued_fuzzy(SubsetMask::EMPTY, r(1, 1), r(0, 1), 4).is_err());
    }

    #[test]
    fn level_theorem_on_simple_cases() {
        let s = pairs(4, 2);
        assert_eq!(level_theorem_sides(&s, &FuzzySubset::constant(4, Grade::ONE).unwrap()).unwrap(), (true, true));
        let mu = two_valued_fuzzy([0, 2].into_iter().collect(), r(1, 2), r(1, 4), 4).unwrap();
        assert_eq!(level_theorem_sides(&s, &mu).unwrap(), (true, true));
        let not_ideal = two_valued_fuzzy(SubsetMask::singleton(1), r(1, 1), r(0, 1), 4).unwrap();
        assert_eq!(level_theorem_sides(&s, &not_ideal).unwrap(), (false, false));
        assert!(check_level_theorem(&s, &not_ideal).unwrap());
    }

    #[test]
    fn corollary_readings() {
        let s = pairs(4, 2);
        let mu = two_valued_fuzzy([0, 2].into_iter().collect(), r(1, 2), r(1, 4), 4).unwrap();
        assert_eq!(corollary_statements(&s, &mu, UpperBound::MaxGrade).unwrap(), [true, true, true]);
        assert!(threshold_corollary(&s, &mu, UpperBound::MaxGrade).unwrap());
        // with t_0 = 1 the level at 1 is empty
        assert_eq!(corollary_statements(&s, &mu, UpperBound::One).unwrap(), [true, true, false]);
        let one = FuzzySubset::constant(4, Grade::ONE).unwrap();
        assert!(threshold_corollary(&s, &one, UpperBound::One).unwrap());
    }

    #[test]
    fn associated_structure_support() {
        let s = pairs(3, 2);
        let crisp = FuzzyHyperStructure::from_structure(&s, Grade::ONE, Grade::ONE).unwrap();
        assert_eq!(associated_structure(&crisp).unwrap(), s);

        let full = FuzzyHyperStructure::new(2, 2, 2, vec![g(1, 3); 8], {
            let mut v = vec![Grade::ZERO; 8];
            for i in 0..4 {
                v[i * 2] = g(1, 2);
            }
            v
        })
        .unwrap();
        let a = associated_structure(&full).unwrap();
        assert!(a.f().entries().iter().all(|&e| e == SubsetMask::full(2)));

        let mixed = FuzzyHyperStructure::graded(&Structure::from_fns(2, 2, 2, |_| SubsetMask::full(2), |_| 1).unwrap(), |i, z| if (i + z) % 2 == 0 { g(1, 5) } else { g(4, 5) }, |_| Grade::ONE).unwrap();
        assert_eq!(associated_structure(&mixed).unwrap().eval_f(&[1, 1]).unwrap(), SubsetMask::full(2));

        let two_g = FuzzyHyperStructure::new(2, 2, 2, vec![Grade::ONE; 8], vec![Grade::ONE; 8]).unwrap();
        assert!(matches!(associated_structure(&two_g), Err(Error::InvalidEntry { .. })));
        assert!(FuzzyHyperStructure::new(2, 2, 2, vec![Grade::ZERO; 8], vec![Grade::ONE; 8]).is_err());
    }

    #[test]
    fn fuzzy_structure_json_round_trip() {
        let s = pairs(2, 2);
        let fz = FuzzyHyperStructure::graded(&s, |i, _| g(1 + i as i64 % 2, 3), |_| g(1, 2)).unwrap();
        let text = serde_json::to_string(&fz).unwrap();
        assert!(text.starts_with(r#"{"k":2,"m":2,"n":2,"f":[{"tuple":[0,0],"out":0,"grade":"1/3"}"#));
        let back: FuzzyHyperStructure = serde_json::from_str(&text).unwrap();
        assert_eq!(back, fz);
    }

    #[test]
    fn fuzzy_homomorphisms() {
        let s = pairs(3, 2);
        let src = FuzzyHyperStructure::graded(&s, |i, z| g(1 + ((i + z) % 3) as i64, 4), |_| g(1, 2)).unwrap();
        assert!(is_fuzzy_homomorphism(&src, &src, &[0, 1, 2]).unwrap());
        assert!(check_fuzzy_to_crisp_hom(&src, &src, &[0, 1, 2]).unwrap());

        let top = FuzzyHyperStructure::from_structure(&s, Grade::ONE, Grade::ONE).unwrap();
        assert!(is_fuzzy_homomorphism(&src, &top, &[0, 1, 2]).unwrap());

        // collapsing onto the one-element structure with small grades
        let small = FuzzyHyperStructure::from_structure(&Structure::trivial(2, 2).unwrap(), g(1, 8), g(1, 8)).unwrap();
        assert!(!is_fuzzy_homomorphism(&src, &small, &[0, 0, 0]).unwrap());
        assert!(matches!(check_fuzzy_to_crisp_hom(&src, &small, &[0, 0, 0]), Err(Error::Precondition(_))));
        let big = FuzzyHyperStructure::from_structure(&Structure::trivial(2, 2).unwrap(), Grade::ONE, Grade::ONE).unwrap();
        assert!(check_fuzzy_to_crisp_hom(&src, &big, &[0, 0, 0]).unwrap());

        let other_arity = FuzzyHyperStructure::from_structure(&Structure::trivial(3, 2).unwrap(), Grade::ONE, Grade::ONE).unwrap();
        assert!(is_fuzzy_homomorphism(&src, &other_arity, &[0, 0, 0]).is_err());
    }
}
