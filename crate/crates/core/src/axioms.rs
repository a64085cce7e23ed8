//! Axioms of (m,n)-semihyperrings, decided by exhaustive sweeps.
//!
//! Each axiom is an [`Axiom`] strategy. The [`AxiomRegistry`] holds them by
//! name so callers (the CLI, model search) can select axioms at runtime,
//! including negated requirements such as `weak-dist,!dist`.
//!
//! Sweeps stop at the first violation unless [`CheckOptions::exhaustive`]
//! is set. Either way the reported witness is the violation with the lowest
//! sweep index, so verdicts do not depend on the worker count.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::Grade;
use crate::par;
use crate::structure::Structure;
use crate::subset::SubsetMask;
use crate::table::{Element, HyperOpTable, OpTable, TupleShape};

/// One side of a violated identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Set(SubsetMask),
    Element(Element),
    Grade(Grade),
}

/// A concrete violation: the tuples involved, the 1-based positions (slots,
/// nesting offsets) that were compared, and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub axiom: String,
    pub tuples: Vec<Vec<Element>>,
    pub positions: Vec<usize>,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_witnesses: Option<Vec<Witness>>,
}

impl AxiomVerdict {
    pub fn holds(axiom: &str) -> Self {
        AxiomVerdict {
            axiom: axiom.to_string(),
            holds: true,
            witness: None,
            note: None,
            all_witnesses: None,
        }
    }

    pub fn fails(axiom: &str, witness: Witness) -> Self {
        AxiomVerdict {
            axiom: axiom.to_string(),
            holds: false,
            witness: Some(witness),
            note: None,
            all_witnesses: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub(crate) fn from_sweep(axiom: &str, sweep: Sweep) -> Self {
        match sweep {
            Sweep::First(None) => AxiomVerdict::holds(axiom),
            Sweep::First(Some(w)) => AxiomVerdict::fails(axiom, w),
            Sweep::All(all) => {
                let mut verdict = match all.first() {
                    None => AxiomVerdict::holds(axiom),
                    Some(w) => AxiomVerdict::fails(axiom, w.clone()),
                };
                verdict.all_witnesses = Some(all);
                verdict
            }
        }
    }

    fn renamed(mut self, axiom: &str) -> Self {
        self.axiom = axiom.to_string();
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Collect every violation instead of stopping at the first.
    pub exhaustive: bool,
    /// Read additive idempotence as `f(x,..,x) = {x}` instead of `x ∈ f(x,..,x)`.
    pub strict_idempotent: bool,
}

pub(crate) enum Sweep {
    First(Option<Witness>),
    All(Vec<Witness>),
}

/// Runs `probe` over `0..len`. The probe receives the index and whether all
/// violations at that index are wanted; otherwise it may stop at one.
pub(crate) fn sweep<F>(len: usize, opts: &CheckOptions, probe: F) -> Sweep
where
    F: Fn(usize, bool) -> Vec<Witness> + Sync + Send,
{
    if opts.exhaustive {
        Sweep::All(par::flat_collect(len, |i| probe(i, true)))
    } else {
        Sweep::First(par::find_first(len, |i| probe(i, false).into_iter().next()))
    }
}

// ---------------------------------------------------------------------------
// Associativity

/// `f(x_1^i, f(x_i^{m+i-1}), x_{m+i}^{2m-1})` is the same subset for every
/// nesting offset `i`. Each offset is compared with offset 1.
pub fn check_m_ary_semihypergroup(s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
    const NAME: &str = "semihypergroup";
    let (k, m) = (s.k(), s.m());
    let outer = TupleShape::unbounded(k, 2 * m - 1).expect("(2m-1)-tuples fit in an index when m-tuples fit in a table");
    let fs = s.f().shape();
    let result = sweep(outer.count(), opts, |t, all| {
        let mut x = vec![0; 2 * m - 1];
        outer.decode_into(t, &mut x);
        let nest = |p: usize| {
            let inner = s.f().at(fs.encode_unchecked(&x[p..p + m]));
            let mut frame = Vec::with_capacity(m);
            frame.extend_from_slice(&x[..p]);
            frame.push(0);
            frame.extend_from_slice(&x[p + m..]);
            s.f_image_at_slot(fs.encode_unchecked(&frame), fs.stride(p), inner)
        };
        let first = nest(0);
        let mut out = Vec::new();
        for p in 1..m {
            let other = nest(p);
            if other != first {
                out.push(Witness {
                    axiom: NAME.into(),
                    tuples: vec![x.clone()],
                    positions: vec![1, p + 1],
                    lhs: Value::Set(first),
                    rhs: Value::Set(other),
                });
                if !all {
                    break;
                }
            }
        }
        out
    });
    AxiomVerdict::from_sweep(NAME, result)
}

/// Associativity of `g`, element-valued.
pub fn check_n_ary_semigroup(s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
    const NAME: &str = "semigroup";
    let (k, n) = (s.k(), s.n());
    let outer = TupleShape::unbounded(k, 2 * n - 1).expect("(2n-1)-tuples fit in an index when n-tuples fit in a table");
    let gs = s.g().shape();
    let result = sweep(outer.count(), opts, |t, all| {
        let mut x = vec![0; 2 * n - 1];
        outer.decode_into(t, &mut x);
        let nest = |p: usize| {
            let inner = s.g().at(gs.encode_unchecked(&x[p..p + n]));
            let mut frame = Vec::with_capacity(n);
            frame.extend_from_slice(&x[..p]);
            frame.push(inner);
            frame.extend_from_slice(&x[p + n..]);
            s.g().at(gs.encode_unchecked(&frame))
        };
        let first = nest(0);
        let mut out = Vec::new();
        for p in 1..n {
            let other = nest(p);
            if other != first {
                out.push(Witness {
                    axiom: NAME.into(),
                    tuples: vec![x.clone()],
                    positions: vec![1, p + 1],
                    lhs: Value::Element(first),
                    rhs: Value::Element(other),
                });
                if !all {
                    break;
                }
            }
        }
        out
    });
    AxiomVerdict::from_sweep(NAME, result)
}

// ---------------------------------------------------------------------------
// Distributivity

fn distributivity(s: &Structure, opts: &CheckOptions, name: &str, weak: bool) -> AxiomVerdict {
    let (k, m, n) = (s.k(), s.m(), s.n());
    let fs = s.f().shape();
    let gs = s.g().shape();
    let others = TupleShape::new(k, n - 1).expect("(n-1)-tuples fit when n-tuples do");
    let per_slot = others.count() * fs.count();
    let result = sweep(n * per_slot, opts, |idx, _| {
        let slot = idx / per_slot;
        let rest = idx % per_slot;
        let (o, a_idx) = (rest / fs.count(), rest % fs.count());
        let mut outer = vec![0; n - 1];
        others.decode_into(o, &mut outer);
        let mut a = vec![0; m];
        fs.decode_into(a_idx, &mut a);

        let mut frame = outer.clone();
        frame.insert(slot, 0);
        let base = gs.encode_unchecked(&frame);
        let stride = gs.stride(slot);

        let lhs = s.g_image_at_slot(base, stride, s.f().at(a_idx));
        let images: Vec<Element> = a.iter().map(|&ai| s.g().at(base + ai * stride)).collect();
        let rhs = s.f().at(fs.encode_unchecked(&images));
        let ok = if weak { lhs.is_subset(rhs) } else { lhs == rhs };
        if ok {
            Vec::new()
        } else {
            vec![Witness {
                axiom: name.into(),
                tuples: vec![a, outer],
                positions: vec![slot + 1],
                lhs: Value::Set(lhs),
                rhs: Value::Set(rhs),
            }]
        }
    });
    AxiomVerdict::from_sweep(name, result)
}

/// `g(x_1^{i-1}, f(a_1^m), x_{i+1}^n) = f(g(.., a_1, ..), .., g(.., a_m, ..))`
/// for every slot `i`. Witness tuples are `[a, x]` with `x` the n-1 outer
/// arguments; the position is the slot.
pub fn check_distributive(s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
    distributivity(s, opts, "distributive", false)
}

/// Distributivity with `⊆` in place of `=`.
pub fn check_weak_distributive(s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
    distributivity(s, opts, "weak-distributive", true)
}

fn conjunction(name: &str, checks: &[AxiomVerdict]) -> AxiomVerdict {
    let mut combined = match checks.iter().find(|v| !v.holds) {
        None => AxiomVerdict::holds(name),
        Some(failed) => {
            let mut v = failed.clone().renamed(name);
            v.note = Some(format!("fails {}", failed.axiom));
            v
        }
    };
    if checks.iter().any(|v| v.all_witnesses.is_some()) {
        combined.all_witnesses = Some(
            checks
                .iter()
                .flat_map(|v| v.all_witnesses.iter().flatten().cloned())
                .collect(),
        );
    }
    combined
}

/// Conjunction of the semihypergroup, semigroup and distributivity checks,
/// reporting the first failure in that order.
pub fn check_mn_semihyperring(s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
    let mut parts = Vec::with_capacity(3);
    for check in [
        check_m_ary_semihypergroup as fn(&Structure, &CheckOptions) -> AxiomVerdict,
        check_n_ary_semigroup,
        check_distributive,
    ] {
        let v = check(s, opts);
        let failed = !v.holds;
        parts.push(v);
        if failed && !opts.exhaustive {
            break;
        }
    }
    conjunction("semihyperring", &parts)
}

/// As [`check_mn_semihyperring`] with weak distributivity.
pub fn check_weak_mn_semihyperring(s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
    let mut parts = Vec::with_capacity(3);
    for check in [
        check_m_ary_semihypergroup as fn(&Structure, &CheckOptions) -> AxiomVerdict,
        check_n_ary_semigroup,
        check_weak_distributive,
    ] {
        let v = check(s, opts);
        let failed = !v.holds;
        parts.push(v);
        if failed && !opts.exhaustive {
            break;
        }
    }
    conjunction("weak-semihyperring", &parts)
}

// ---------------------------------------------------------------------------
// Distinguished elements

/// Tuple of length `len` filled with `fill` except `value` at `slot`.
fn spike(len: usize, fill: Element, slot: usize, value: Element) -> Vec<Element> {
    let mut t = vec![fill; len];
    t[slot] = value;
    t
}

/// Every `e` with `x ∈ f(e,..,e,x,e,..,e)` for all `x` and all slots.
pub fn find_hyperadditive_identities(s: &Structure) -> SubsetMask {
    let (k, m) = (s.k(), s.m());
    let fs = s.f().shape();
    (0..k)
        .filter(|&e| {
            (0..m).all(|slot| {
                (0..k).all(|x| s.f().at(fs.encode_unchecked(&spike(m, e, slot, x))).contains(x))
            })
        })
        .collect()
}

/// Every `e'` with `g(e',..,e',y,e',..,e') = y` for all `y` and all slots.
pub fn find_multiplicative_identities(s: &Structure) -> SubsetMask {
    let (k, n) = (s.k(), s.n());
    let gs = s.g().shape();
    (0..k)
        .filter(|&e| {
            (0..n).all(|slot| (0..k).all(|y| s.g().at(gs.encode_unchecked(&spike(n, e, slot, y))) == y))
        })
        .collect()
}

fn is_zero(s: &Structure, z: Element) -> bool {
    let (k, m, n) = (s.k(), s.m(), s.n());
    let fs = s.f().shape();
    let gs = s.g().shape();
    (0..k).all(|x| {
        let single = SubsetMask::singleton(x);
        s.f().at(fs.encode_unchecked(&spike(m, z, m - 1, x))) == single
            && s.f().at(fs.encode_unchecked(&spike(m, z, 0, x))) == single
            && s.g().at(gs.encode_unchecked(&spike(n, z, n - 1, x))) == z
            && s.g().at(gs.encode_unchecked(&spike(n, z, 0, x))) == z
    })
}

/// The zero: `f(0,..,0,x) = f(x,0,..,0) = {x}` and `g(0,..,0,y) = g(y,0,..,0) = 0`.
///
/// Uniqueness is checked rather than assumed: with m, n ≥ 3 a table can
/// carry two such elements, which is reported as an error.
pub fn find_zero(s: &Structure) -> Result<Option<Element>> {
    let zeros: Vec<Element> = (0..s.k()).filter(|&z| is_zero(s, z)).collect();
    match zeros.as_slice() {
        [] => Ok(None),
        [z] => Ok(Some(*z)),
        many => Err(Error::domain(format!("structure has several zeros: {many:?}"))),
    }
}

/// `0 ∈ f(x_1,..,x_m)` only when every `x_i` is the zero. Holds vacuously,
/// with a note, when the structure has no zero.
pub fn check_zero_sum_free(s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
    const NAME: &str = "zero-sum-free";
    match find_zero(s) {
        Ok(Some(z)) => check_zero_sum_free_at(s, z, opts),
        Ok(None) => AxiomVerdict::holds(NAME).with_note("vacuous: no zero element"),
        Err(e) => AxiomVerdict {
            holds: false,
            note: Some(e.to_string()),
            ..AxiomVerdict::holds(NAME)
        },
    }
}

/// Zero-sum-freeness with respect to a designated element.
pub fn check_zero_sum_free_at(s: &Structure, zero: Element, opts: &CheckOptions) -> AxiomVerdict {
    const NAME: &str = "zero-sum-free";
    let fs = s.f().shape();
    let result = sweep(fs.count(), opts, |i, _| {
        let out = s.f().at(i);
        let tuple = fs.decode(i);
        if out.contains(zero) && tuple.iter().any(|&x| x != zero) {
            vec![Witness {
                axiom: NAME.into(),
                tuples: vec![tuple],
                positions: vec![],
                lhs: Value::Set(out),
                rhs: Value::Element(zero),
            }]
        } else {
            Vec::new()
        }
    });
    AxiomVerdict::from_sweep(NAME, result)
}

/// `x ∈ f(x,..,x)` for every `x` (or `f(x,..,x) = {x}` under the strict reading).
pub fn check_additively_idempotent(s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
    const NAME: &str = "additively-idempotent";
    let (k, m) = (s.k(), s.m());
    let fs = s.f().shape();
    let result = sweep(k, opts, |x, _| {
        let diag = vec![x; m];
        let out = s.f().at(fs.encode_unchecked(&diag));
        let ok = if opts.strict_idempotent {
            out == SubsetMask::singleton(x)
        } else {
            out.contains(x)
        };
        if ok {
            Vec::new()
        } else {
            vec![Witness {
                axiom: NAME.into(),
                tuples: vec![diag],
                positions: vec![],
                lhs: Value::Set(out),
                rhs: Value::Element(x),
            }]
        }
    });
    let verdict = AxiomVerdict::from_sweep(NAME, result);
    if opts.strict_idempotent {
        verdict.with_note("strict reading f(x,..,x) = {x}")
    } else {
        verdict
    }
}

/// Binary operations induced by fixing the middle slots to identities:
/// `<x,y> = f(x,e,..,e,y)` and `x × y = g(x,e',..,e',y)`.
pub fn derived_binary_ops(s: &Structure, e: Element, e_mul: Element) -> Result<(HyperOpTable, OpTable)> {
    let k = s.k();
    for x in [e, e_mul] {
        if x >= k {
            return Err(Error::ElementOutOfRange { element: x, k });
        }
    }
    if !find_hyperadditive_identities(s).contains(e) {
        return Err(Error::precondition(format!("{e} is not a hyperadditive identity")));
    }
    if !find_multiplicative_identities(s).contains(e_mul) {
        return Err(Error::precondition(format!("{e_mul} is not a multiplicative identity")));
    }
    let (m, n) = (s.m(), s.n());
    let add = HyperOpTable::from_fn(k, 2, |t| {
        let mut full = vec![e; m];
        full[0] = t[0];
        full[m - 1] = t[1];
        s.f().at(s.f().shape().encode_unchecked(&full))
    })?;
    let mul = OpTable::from_fn(k, 2, |t| {
        let mut full = vec![e_mul; n];
        full[0] = t[0];
        full[n - 1] = t[1];
        s.g().at(s.g().shape().encode_unchecked(&full))
    })?;
    Ok((add, mul))
}

// ---------------------------------------------------------------------------
// Strategy registry

/// A named property of a structure.
pub trait Axiom: Send + Sync {
    fn name(&self) -> &'static str;

    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    fn summary(&self) -> &'static str;

    fn check(&self, s: &Structure, opts: &CheckOptions) -> AxiomVerdict;
}

macro_rules! axiom {
    ($ty:ident, $name:literal, [$($alias:literal),*], $summary:literal, $check:path) => {
        pub struct $ty;

        impl Axiom for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn aliases(&self) -> &'static [&'static str] {
                &[$($alias),*]
            }

            fn summary(&self) -> &'static str {
                $summary
            }

            fn check(&self, s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
                $check(s, opts)
            }
        }
    };
}

axiom!(Semihypergroup, "semihypergroup", ["assoc-f"], "f is associative (m-ary semihypergroup)", check_m_ary_semihypergroup);
axiom!(Semigroup, "semigroup", ["assoc-g"], "g is associative (n-ary semigroup)", check_n_ary_semigroup);
axiom!(Distributive, "distributive", ["dist"], "g distributes over f", check_distributive);
axiom!(WeakDistributive, "weak-distributive", ["weak-dist"], "g distributes over f up to inclusion", check_weak_distributive);
axiom!(Semihyperring, "semihyperring", ["mn"], "(m,n)-semihyperring: semihypergroup, semigroup, distributive", check_mn_semihyperring);
axiom!(WeakSemihyperring, "weak-semihyperring", [], "weak distributive (m,n)-semihyperring", check_weak_mn_semihyperring);
axiom!(ZeroSumFree, "zero-sum-free", ["zsf"], "0 lies only in f(0,..,0)", check_zero_sum_free);
axiom!(AdditivelyIdempotent, "additively-idempotent", ["idempotent"], "x lies in f(x,..,x)", check_additively_idempotent);

/// Both associativity laws.
pub struct Associative;

impl Axiom for Associative {
    fn name(&self) -> &'static str {
        "assoc"
    }

    fn summary(&self) -> &'static str {
        "f and g are both associative"
    }

    fn check(&self, s: &Structure, opts: &CheckOptions) -> AxiomVerdict {
        let f = check_m_ary_semihypergroup(s, opts);
        if !f.holds && !opts.exhaustive {
            return conjunction("assoc", &[f]);
        }
        conjunction("assoc", &[f, check_n_ary_semigroup(s, opts)])
    }
}

/// An axiom together with the verdict a search or check expects from it.
#[derive(Clone, Copy)]
pub struct Requirement<'a> {
    pub axiom: &'a dyn Axiom,
    pub expected: bool,
}

impl Requirement<'_> {
    pub fn is_met(&self, s: &Structure, opts: &CheckOptions) -> bool {
        self.axiom.check(s, opts).holds == self.expected
    }
}

#[derive(Default)]
pub struct AxiomRegistry {
    axioms: Vec<Box<dyn Axiom>>,
}

impl AxiomRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every axiom this crate knows, in report order.
    pub fn builtin() -> Self {
        let mut r = AxiomRegistry::new();
        r.register(Box::new(Semihypergroup));
        r.register(Box::new(Semigroup));
        r.register(Box::new(Associative));
        r.register(Box::new(Distributive));
        r.register(Box::new(WeakDistributive));
        r.register(Box::new(Semihyperring));
        r.register(Box::new(WeakSemihyperring));
        r.register(Box::new(ZeroSumFree));
        r.register(Box::new(AdditivelyIdempotent));
        r
    }

    /// Adds an axiom; a later registration shadows an earlier one of the same name.
    pub fn register(&mut self, axiom: Box<dyn Axiom>) {
        self.axioms.retain(|a| a.name() != axiom.name());
        self.axioms.push(axiom);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Axiom> {
        self.axioms
            .iter()
            .rev()
            .find(|a| a.name() == name || a.aliases().contains(&name))
            .map(|a| a.as_ref())
    }

    pub fn lookup(&self, name: &str) -> Result<&dyn Axiom> {
        self.get(name).ok_or_else(|| Error::UnknownName {
            kind: "axiom",
            name: name.to_string(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Axiom> {
        self.axioms.iter().map(|a| a.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.iter().map(|a| a.name()).collect()
    }

    /// Parses a comma-separated list such as `assoc,weak-dist,!dist`. A
    /// leading `!` or `not-` asks for the axiom to fail.
    pub fn parse_requirements(&self, list: &str) -> Result<Vec<Requirement<'_>>> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|item| {
                let (name, expected) = match item.strip_prefix('!').or_else(|| item.strip_prefix("not-")) {
                    Some(rest) => (rest, false),
                    None => (item, true),
                };
                Ok(Requirement {
                    axiom: self.lookup(name)?,
                    expected,
                })
            })
            .collect()
    }
}
