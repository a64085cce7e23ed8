//! Homomorphisms between structures and exhaustive search for them.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::axioms::{Value, Witness};
use crate::error::{Error, Result};
use crate::structure::Structure;
use crate::subset::SubsetMask;
use crate::table::{Element, TupleShape};

/// Default cap on the number of candidate maps a search may consider.
pub const DEFAULT_HOM_CAP: u128 = 10_000_000;

/// An element-wise map from `source` to `target`. Serializes as its image array.
#[derive(Clone, Debug)]
pub struct Mapping<'a> {
    source: &'a Structure,
    target: &'a Structure,
    image: Vec<Element>,
}

impl<'a> Mapping<'a> {
    pub fn new(source: &'a Structure, target: &'a Structure, image: Vec<Element>) -> Result<Self> {
        if image.len() != source.k() {
            return Err(Error::Arity {
                expected: source.k(),
                got: image.len(),
            });
        }
        if let Some(&x) = image.iter().find(|&&x| x >= target.k()) {
            return Err(Error::ElementOutOfRange { element: x, k: target.k() });
        }
        Ok(Mapping { source, target, image })
    }

    pub fn identity(s: &'a Structure) -> Self {
        Mapping {
            source: s,
            target: s,
            image: (0..s.k()).collect(),
        }
    }

    pub fn source(&self) -> &'a Structure {
        self.source
    }

    pub fn target(&self) -> &'a Structure {
        self.target
    }

    pub fn image(&self) -> &[Element] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.image[x]
    }

    pub fn apply_set(&self, set: SubsetMask) -> SubsetMask {
        set.iter().map(|x| self.image[x]).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image.iter().copied().collect::<SubsetMask>() == self.target.universe()
    }

    pub fn is_injective(&self) -> bool {
        self.image.iter().copied().collect::<SubsetMask>().len() == self.image.len()
    }

    /// The inverse of a bijection, as a map from target to source.
    pub fn inverse(&self) -> Option<Mapping<'a>> {
        if !self.is_injective() || !self.is_surjective() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(Mapping {
            source: self.target,
            target: self.source,
            image: inv,
        })
    }
}

impl PartialEq for Mapping<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && self.source == other.source && self.target == other.target
    }
}

impl Serialize for Mapping<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.image.serialize(serializer)
    }
}

/// Strict (`=`) or inclusion (`⊆` on `f`) homomorphism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HomKind {
    #[default]
    Strict,
    /// `σ(f(x)) ⊆ f'(σ(x))`; the `g` condition stays an equality since both
    /// sides are single elements.
    Inclusion,
}

fn check_arities(source: &Structure, target: &Structure) -> Result<()> {
    if source.m() != target.m() || source.n() != target.n() {
        return Err(Error::domain(format!(
            "arities differ: ({},{}) vs ({},{})",
            source.m(),
            source.n(),
            target.m(),
            target.n()
        )));
    }
    Ok(())
}

#[inline]
fn f_ok(kind: HomKind, mapped: SubsetMask, target: SubsetMask) -> bool {
    match kind {
        HomKind::Strict => mapped == target,
        HomKind::Inclusion => mapped.is_subset(target),
    }
}

/// The first tuple (all of `f` first, then `g`) where `map` breaks the condition.
pub fn find_hom_violation(map: &Mapping<'_>, kind: HomKind) -> Result<Option<Witness>> {
    check_arities(map.source, map.target)?;
    let (src, tgt) = (map.source, map.target);
    let axiom = match kind {
        HomKind::Strict => "homomorphism",
        HomKind::Inclusion => "inclusion-homomorphism",
    };
    let fs = src.f().shape();
    let tfs = tgt.f().shape();
    let mut mapped = vec![0; fs.len()];
    let mut tuple = vec![0; fs.len()];
    for i in 0..fs.count() {
        fs.decode_into(i, &mut tuple);
        for (y, &x) in mapped.iter_mut().zip(&tuple) {
            *y = map.apply(x);
        }
        let lhs = map.apply_set(src.f().at(i));
        let rhs = tgt.f().at(tfs.encode_unchecked(&mapped));
        if !f_ok(kind, lhs, rhs) {
            return Ok(Some(Witness {
                axiom: axiom.into(),
                tuples: vec![tuple],
                positions: vec![],
                lhs: Value::Set(lhs),
                rhs: Value::Set(rhs),
            }));
        }
    }
    let gs = src.g().shape();
    let tgs = tgt.g().shape();
    let mut mapped = vec![0; gs.len()];
    let mut tuple = vec![0; gs.len()];
    for i in 0..gs.count() {
        gs.decode_into(i, &mut tuple);
        for (y, &x) in mapped.iter_mut().zip(&tuple) {
            *y = map.apply(x);
        }
        let lhs = map.apply(src.g().at(i));
        let rhs = tgt.g().at(tgs.encode_unchecked(&mapped));
        if lhs != rhs {
            return Ok(Some(Witness {
                axiom: axiom.into(),
                tuples: vec![tuple],
                positions: vec![],
                lhs: Value::Element(lhs),
                rhs: Value::Element(rhs),
            }));
        }
    }
    Ok(None)
}

pub fn check_homomorphism(map: &Mapping<'_>, kind: HomKind) -> Result<bool> {
    Ok(find_hom_violation(map, kind)?.is_none())
}

/// `σ(f(x)) = f'(σ(x))` and `σ(g(y)) = g'(σ(y))` for all tuples.
pub fn is_homomorphism(map: &Mapping<'_>) -> Result<bool> {
    check_homomorphism(map, HomKind::Strict)
}

pub fn is_inclusion_homomorphism(map: &Mapping<'_>) -> Result<bool> {
    check_homomorphism(map, HomKind::Inclusion)
}

/// `second ∘ first`: apply `first`, then `second`.
pub fn compose<'a>(first: &Mapping<'a>, second: &Mapping<'a>) -> Result<Mapping<'a>> {
    if !std::ptr::eq(first.target, second.source) && first.target != second.source {
        return Err(Error::domain("the first map's target is not the second map's source"));
    }
    Ok(Mapping {
        source: first.source,
        target: second.target,
        image: first.image.iter().map(|&x| second.image[x]).collect(),
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Every homomorphism.
    #[default]
    All,
    /// The lexicographically least homomorphism, if any.
    First,
    /// Bijective homomorphisms whose inverse is also a homomorphism.
    Iso,
}

/// Tuples grouped by the largest element they mention (components and outputs):
/// once elements `0..=x` have images, every tuple in bucket `x` can be checked.
struct Buckets {
    f: Vec<Vec<usize>>,
    g: Vec<Vec<usize>>,
}

impl Buckets {
    fn new(s: &Structure) -> Self {
        let k = s.k();
        let level = |shape: TupleShape, i: usize, out_max: Element| {
            let mut t = i;
            let mut hi = out_max;
            for _ in 0..shape.len() {
                hi = hi.max(t % k);
                t /= k;
            }
            hi
        };
        let mut f = vec![Vec::new(); k];
        for i in 0..s.f().shape().count() {
            let out = s.f().at(i).max().expect("f entries are non-empty");
            f[level(s.f().shape(), i, out)].push(i);
        }
        let mut g = vec![Vec::new(); k];
        for i in 0..s.g().shape().count() {
            g[level(s.g().shape(), i, s.g().at(i))].push(i);
        }
        Buckets { f, g }
    }
}

struct Search<'s> {
    src: &'s Structure,
    tgt: &'s Structure,
    buckets: Buckets,
    kind: HomKind,
    injective: bool,
}

impl Search<'_> {
    fn consistent(&self, image: &[Element], level: Element, mapped: &mut Vec<Element>) -> bool {
        let (src, tgt) = (self.src, self.tgt);
        let k = src.k();
        let tk = tgt.k();
        let image_of = |mut i: usize, len: usize, mapped: &mut Vec<Element>| {
            mapped.clear();
            mapped.resize(len, 0);
            for slot in (0..len).rev() {
                mapped[slot] = image[i % k];
                i /= k;
            }
            mapped.iter().fold(0, |acc, &y| acc * tk + y)
        };
        for &i in &self.buckets.f[level] {
            let j = image_of(i, src.m(), mapped);
            let lhs: SubsetMask = src.f().at(i).iter().map(|z| image[z]).collect();
            if !f_ok(self.kind, lhs, tgt.f().at(j)) {
                return false;
            }
        }
        for &i in &self.buckets.g[level] {
            let j = image_of(i, src.n(), mapped);
            if image[src.g().at(i)] != tgt.g().at(j) {
                return false;
            }
        }
        true
    }

    /// Extends `image` (elements `0..image.len()` assigned) depth-first in
    /// lexicographic order. Stops early when `visit` returns false.
    fn extend(&self, image: &mut Vec<Element>, used: SubsetMask, mapped: &mut Vec<Element>, visit: &mut dyn FnMut(&[Element]) -> bool) -> bool {
        let x = image.len();
        if x == self.src.k() {
            return visit(image);
        }
        for y in 0..self.tgt.k() {
            if self.injective && used.contains(y) {
                continue;
            }
            image.push(y);
            if self.consistent(image, x, mapped) {
                let mut next = used;
                next.insert(y);
                if !self.extend(image, next, mapped, visit) {
                    image.pop();
                    return false;
                }
            }
            image.pop();
        }
        true
    }

    /// All completions with the first element sent to `y0`.
    fn subtree(&self, y0: Element, first_only: bool, accept: &(dyn Fn(&[Element]) -> bool + Sync)) -> Vec<Vec<Element>> {
        let mut out = Vec::new();
        let mut image = vec![y0];
        let mut mapped = Vec::new();
        if !self.consistent(&image, 0, &mut mapped) {
            return out;
        }
        let mut visit = |img: &[Element]| {
            if accept(img) {
                out.push(img.to_vec());
                !first_only
            } else {
                true
            }
        };
        self.extend(&mut image, SubsetMask::singleton(y0), &mut mapped, &mut visit);
        out
    }
}

fn search_space(src: &Structure, tgt: &Structure, mode: SearchMode) -> u128 {
    let (k, tk) = (src.k() as u128, tgt.k() as u128);
    match mode {
        SearchMode::Iso if k == tk => (1..=k).try_fold(1u128, |acc, i| acc.checked_mul(i)).unwrap_or(u128::MAX),
        SearchMode::Iso => 0,
        _ => tk.checked_pow(src.k() as u32).unwrap_or(u128::MAX),
    }
}

/// Homomorphisms from `source` to `target` in lexicographic image order.
///
/// The candidate space (`k'^k` maps, or `k!` bijections in iso mode) must
/// not exceed `cap`.
pub fn enumerate_homomorphisms<'a>(
    source: &'a Structure,
    target: &'a Structure,
    mode: SearchMode,
    cap: u128,
) -> Result<Vec<Mapping<'a>>> {
    enumerate_with_kind(source, target, mode, HomKind::Strict, cap)
}

/// As [`enumerate_homomorphisms`], for either kind of homomorphism.
pub fn enumerate_with_kind<'a>(
    source: &'a Structure,
    target: &'a Structure,
    mode: SearchMode,
    kind: HomKind,
    cap: u128,
) -> Result<Vec<Mapping<'a>>> {
    check_arities(source, target)?;
    let needed = search_space(source, target, mode);
    if needed > cap {
        return Err(Error::ResourceCap {
            what: "homomorphism search (candidate maps)".into(),
            needed,
            cap,
        });
    }
    if mode == SearchMode::Iso && source.k() != target.k() {
        return Ok(Vec::new());
    }
    let search = Search {
        src: source,
        tgt: target,
        buckets: Buckets::new(source),
        kind,
        injective: mode == SearchMode::Iso,
    };
    let accept = |img: &[Element]| match mode {
        SearchMode::Iso => {
            let mut inv = vec![0; img.len()];
            for (x, &y) in img.iter().enumerate() {
                inv[y] = x;
            }
            let back = Mapping {
                source: target,
                target: source,
                image: inv,
            };
            check_homomorphism(&back, kind).unwrap_or(false)
        }
        _ => true,
    };
    let first_only = mode == SearchMode::First;
    let images: Vec<Vec<Element>> = if first_only {
        (0..target.k())
            .into_par_iter()
            .map(|y0| search.subtree(y0, true, &accept))
            .find_map_first(|v| v.into_iter().next())
            .into_iter()
            .collect()
    } else {
        (0..target.k())
            .into_par_iter()
            .flat_map_iter(|y0| search.subtree(y0, false, &accept))
            .collect()
    };
    Ok(images
        .into_iter()
        .map(|image| Mapping { source, target, image })
        .collect())
}
