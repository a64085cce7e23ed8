//! Sub-semihyperrings and hyperideals.
//!
//! Every hyperideal candidate must first be closed under `f`; a candidate
//! that is not is reported as [`IdealOutcome::NotClosed`], separately from
//! absorption failures.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::structure::Structure;
use crate::subset::SubsetMask;
use crate::table::Element;

/// Default cap on the universe size for subset enumeration (2^k masks).
pub const DEFAULT_ENUM_CAP: usize = 24;

/// Why a subset is or is not an ideal of some kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum IdealOutcome {
    Holds,
    /// Not closed under `f`: `f(tuple)` leaves the subset.
    NotClosed { tuple: Vec<Element>, image: SubsetMask },
    /// Not closed under `g` (sub-semihyperrings only).
    NotGClosed { tuple: Vec<Element>, value: Element },
    /// An absorption condition fails at `tuple`.
    NotAbsorbing { tuple: Vec<Element>, value: Element },
    /// The weak condition needs a left hyperideal.
    NotLeftIdeal,
    /// `f(tuple) ⊆ I` although some argument is outside `I`.
    NotWeak { tuple: Vec<Element>, image: SubsetMask },
}

impl IdealOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, IdealOutcome::Holds)
    }
}

fn check_candidate(s: &Structure, set: SubsetMask) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    if !set.fits(s.k()) {
        return Err(Error::ElementOutOfRange {
            element: set.max().unwrap_or(0),
            k: s.k(),
        });
    }
    Ok(())
}

/// Calls `visit` on every `len`-tuple over `members` (row-major over the
/// member list) until it returns false. Returns whether all visits passed.
fn all_tuples_over(members: &[Element], len: usize, mut visit: impl FnMut(&[Element]) -> bool) -> bool {
    let mut cursor = vec![0usize; len];
    let mut tuple = vec![members[0]; len];
    loop {
        if !visit(&tuple) {
            return false;
        }
        let mut slot = len;
        loop {
            if slot == 0 {
                return true;
            }
            slot -= 1;
            cursor[slot] += 1;
            if cursor[slot] < members.len() {
                tuple[slot] = members[cursor[slot]];
                break;
            }
            cursor[slot] = 0;
            tuple[slot] = members[0];
        }
    }
}

fn f_closure(s: &Structure, set: SubsetMask) -> IdealOutcome {
    let members = set.to_vec();
    let shape = s.f().shape();
    let mut failure = None;
    all_tuples_over(&members, s.m(), |t| {
        let image = s.f().at(shape.encode_unchecked(t));
        if image.is_subset(set) {
            true
        } else {
            failure = Some(IdealOutcome::NotClosed {
                tuple: t.to_vec(),
                image,
            });
            false
        }
    });
    failure.unwrap_or(IdealOutcome::Holds)
}

/// `set` is closed under `f`: an m-ary sub-semihypergroup.
pub fn is_f_closed(s: &Structure, set: SubsetMask) -> Result<bool> {
    check_candidate(s, set)?;
    Ok(f_closure(s, set).holds())
}

pub fn sub_semihyperring_outcome(s: &Structure, set: SubsetMask) -> Result<IdealOutcome> {
    check_candidate(s, set)?;
    let closure = f_closure(s, set);
    if !closure.holds() {
        return Ok(closure);
    }
    let members = set.to_vec();
    let shape = s.g().shape();
    let mut failure = None;
    all_tuples_over(&members, s.n(), |t| {
        let value = s.g().at(shape.encode_unchecked(t));
        if set.contains(value) {
            true
        } else {
            failure = Some(IdealOutcome::NotGClosed {
                tuple: t.to_vec(),
                value,
            });
            false
        }
    });
    Ok(failure.unwrap_or(IdealOutcome::Holds))
}

/// Closed under `f` and under `g`.
pub fn is_sub_semihyperring(s: &Structure, set: SubsetMask) -> Result<bool> {
    Ok(sub_semihyperring_outcome(s, set)?.holds())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// `g(a, i) ∈ I` (left) or `g(i, a) ∈ I` (right) for all `a ∈ H^{n-1}`, `i ∈ I`.
fn absorption(s: &Structure, set: SubsetMask, side: Side) -> IdealOutcome {
    let k = s.k();
    let shape = s.g().shape();
    let outer = shape.count() / k;
    let lead = shape.stride(0);
    let hit = par::find_first(outer, |a| {
        set.iter().find_map(|i| {
            let idx = match side {
                Side::Left => a * k + i,
                Side::Right => i * lead + a,
            };
            let value = s.g().at(idx);
            (!set.contains(value)).then(|| IdealOutcome::NotAbsorbing {
                tuple: shape.decode(idx),
                value,
            })
        })
    });
    hit.unwrap_or(IdealOutcome::Holds)
}

fn one_sided(s: &Structure, set: SubsetMask, sides: &[Side]) -> Result<IdealOutcome> {
    check_candidate(s, set)?;
    let closure = f_closure(s, set);
    if !closure.holds() {
        return Ok(closure);
    }
    for &side in sides {
        let outcome = absorption(s, set, side);
        if !outcome.holds() {
            return Ok(outcome);
        }
    }
    Ok(IdealOutcome::Holds)
}

pub fn left_hyperideal_outcome(s: &Structure, set: SubsetMask) -> Result<IdealOutcome> {
    one_sided(s, set, &[Side::Left])
}

pub fn right_hyperideal_outcome(s: &Structure, set: SubsetMask) -> Result<IdealOutcome> {
    one_sided(s, set, &[Side::Right])
}

pub fn hyperideal_outcome(s: &Structure, set: SubsetMask) -> Result<IdealOutcome> {
    one_sided(s, set, &[Side::Left, Side::Right])
}

pub fn is_left_hyperideal(s: &Structure, set: SubsetMask) -> Result<bool> {
    Ok(left_hyperideal_outcome(s, set)?.holds())
}

pub fn is_right_hyperideal(s: &Structure, set: SubsetMask) -> Result<bool> {
    Ok(right_hyperideal_outcome(s, set)?.holds())
}

/// Left and right hyperideal.
pub fn is_hyperideal(s: &Structure, set: SubsetMask) -> Result<bool> {
    Ok(hyperideal_outcome(s, set)?.holds())
}

/// A left hyperideal `I` where, for `i ∈ I` and `x ∈ H^{m-1}`, either
/// `f(i, x) ⊆ I` or `f(x, i) ⊆ I` forces every `x_j ∈ I`.
pub fn weak_left_hyperideal_outcome(s: &Structure, set: SubsetMask) -> Result<IdealOutcome> {
    if !left_hyperideal_outcome(s, set)?.holds() {
        return Ok(IdealOutcome::NotLeftIdeal);
    }
    let k = s.k();
    let shape = s.f().shape();
    let rest = shape.count() / k;
    let lead = shape.stride(0);
    let rest_shape = crate::table::TupleShape::new(k, s.m() - 1)?;
    let hit = par::find_first(rest, |x| {
        let args = rest_shape.decode(x);
        if args.iter().all(|&a| set.contains(a)) {
            return None;
        }
        set.iter().find_map(|i| {
            [i * lead + x, x * k + i].into_iter().find_map(|idx| {
                let image = s.f().at(idx);
                image.is_subset(set).then(|| IdealOutcome::NotWeak {
                    tuple: shape.decode(idx),
                    image,
                })
            })
        })
    });
    Ok(hit.unwrap_or(IdealOutcome::Holds))
}

pub fn is_weak_left_hyperideal(s: &Structure, set: SubsetMask) -> Result<bool> {
    Ok(weak_left_hyperideal_outcome(s, set)?.holds())
}

/// A named subset predicate, selectable at runtime.
pub trait IdealPredicate: Send + Sync {
    fn name(&self) -> &'static str;
    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }
    fn outcome(&self, s: &Structure, set: SubsetMask) -> Result<IdealOutcome>;
}

macro_rules! predicate {
    ($ty:ident, $name:literal, [$($alias:literal),*], $f:path) => {
        pub struct $ty;

        impl IdealPredicate for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn aliases(&self) -> &'static [&'static str] {
                &[$($alias),*]
            }

            fn outcome(&self, s: &Structure, set: SubsetMask) -> Result<IdealOutcome> {
                $f(s, set)
            }
        }
    };
}

predicate!(SubSemihyperring, "sub", ["sub-semihyperring"], sub_semihyperring_outcome);
predicate!(LeftHyperideal, "left", [], left_hyperideal_outcome);
predicate!(RightHyperideal, "right", [], right_hyperideal_outcome);
predicate!(Hyperideal, "two", ["two-sided", "hyperideal"], hyperideal_outcome);
predicate!(WeakLeftHyperideal, "weak", ["weak-left"], weak_left_hyperideal_outcome);

/// Ideal predicates by name.
pub struct IdealRegistry {
    predicates: Vec<Box<dyn IdealPredicate>>,
}

impl IdealRegistry {
    pub fn new() -> Self {
        IdealRegistry { predicates: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut r = IdealRegistry::new();
        r.register(Box::new(SubSemihyperring));
        r.register(Box::new(LeftHyperideal));
        r.register(Box::new(RightHyperideal));
        r.register(Box::new(Hyperideal));
        r.register(Box::new(WeakLeftHyperideal));
        r
    }

    /// Registers `p`, replacing any predicate with the same name.
    pub fn register(&mut self, p: Box<dyn IdealPredicate>) {
        self.predicates.retain(|q| q.name() != p.name());
        self.predicates.push(p);
    }

    pub fn get(&self, name: &str) -> Option<&dyn IdealPredicate> {
        self.predicates
            .iter()
            .find(|p| p.name() == name || p.aliases().contains(&name))
            .map(|p| p.as_ref())
    }

    pub fn lookup(&self, name: &str) -> Result<&dyn IdealPredicate> {
        self.get(name).ok_or_else(|| Error::UnknownName {
            kind: "ideal kind",
            name: name.to_string(),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.predicates.iter().map(|p| p.name()).collect()
    }
}

impl Default for IdealRegistry {
    fn default() -> Self {
        IdealRegistry::builtin()
    }
}

/// Which ideal definitions a subset meets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdealKinds {
    pub sub_semihyperring: bool,
    pub left: bool,
    pub right: bool,
    pub two_sided: bool,
    pub weak_left: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub subset: SubsetMask,
    pub kinds: IdealKinds,
}

/// Evaluates every definition on `set`.
pub fn classify(s: &Structure, set: SubsetMask) -> Result<IdealReport> {
    check_candidate(s, set)?;
    let left = is_left_hyperideal(s, set)?;
    let right = is_right_hyperideal(s, set)?;
    Ok(IdealReport {
        subset: set,
        kinds: IdealKinds {
            sub_semihyperring: is_sub_semihyperring(s, set)?,
            left,
            right,
            two_sided: left && right,
            weak_left: left && is_weak_left_hyperideal(s, set)?,
        },
    })
}

/// All non-empty subsets passing `predicate`, ascending by mask.
pub fn enumerate_hyperideals(
    s: &Structure,
    predicate: &dyn IdealPredicate,
    max_k: usize,
) -> Result<Vec<IdealReport>> {
    let k = s.k();
    if k > max_k || k >= usize::BITS as usize {
        return Err(Error::ResourceCap {
            what: "subset enumeration (2^k masks); raise the universe cap".into(),
            needed: 1u128 << k.min(127),
            cap: 1u128 << max_k.min(127),
        });
    }
    let masks = (1usize << k) - 1;
    let hits = par::collect_hits(masks, |i| {
        let set = SubsetMask::from_bits(i as u64 + 1);
        match predicate.outcome(s, set) {
            Ok(o) if o.holds() => Some(Ok(set)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    hits.into_iter().map(|r| r.and_then(|set| classify(s, set))).collect()
}
