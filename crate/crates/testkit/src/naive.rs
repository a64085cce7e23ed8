//! Direct transcriptions of the definitions.

use hyperforge::fuzzy::FuzzyHyperStructure;
use hyperforge::Structure;
use num_rational::Rational64;

/// Plain copies of the operation tables with their own indexing.
#[derive(Clone, Debug)]
pub struct Tables {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub f: Vec<u64>,
    pub g: Vec<usize>,
}

fn index(k: usize, t: &[usize]) -> usize {
    let mut i = 0;
    for &x in t {
        i = i * k + x;
    }
    i
}

/// Every tuple of length `len` over `0..k`, first component slowest.
pub fn tuples(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * k);
        for t in &out {
            for x in 0..k {
                let mut u = t.clone();
                u.push(x);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn members(set: u64) -> Vec<usize> {
    (0..64).filter(|&x| set >> x & 1 == 1).collect()
}

fn bit(x: usize) -> u64 {
    1u64 << x
}

impl Tables {
    pub fn of(s: &Structure) -> Self {
        Tables {
            k: s.k(),
            m: s.m(),
            n: s.n(),
            f: s.f().entries().iter().map(|e| e.bits()).collect(),
            g: s.g().entries().collect(),
        }
    }

    pub fn f(&self, t: &[usize]) -> u64 {
        self.f[index(self.k, t)]
    }

    pub fn g(&self, t: &[usize]) -> usize {
        self.g[index(self.k, t)]
    }

    /// Union of `f` over the Cartesian product of the argument sets.
    pub fn f_sets(&self, args: &[u64]) -> u64 {
        let lists: Vec<Vec<usize>> = args.iter().map(|&a| members(a)).collect();
        let mut acc = 0;
        for choice in product(&lists) {
            acc |= self.f(&choice);
        }
        acc
    }

    pub fn g_sets(&self, args: &[u64]) -> u64 {
        let lists: Vec<Vec<usize>> = args.iter().map(|&a| members(a)).collect();
        let mut acc = 0;
        for choice in product(&lists) {
            acc |= bit(self.g(&choice));
        }
        acc
    }
}

fn product(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for l in lists {
        let mut next = Vec::new();
        for t in &out {
            for &x in l {
                let mut u = t.clone();
                u.push(x);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

// ---------------------------------------------------------------------------
// Axioms

/// All pairs of nesting positions `i < j` give the same subset.
pub fn associative_f(s: &Structure) -> bool {
    let t = Tables::of(s);
    let m = t.m;
    for x in tuples(t.k, 2 * m - 1) {
        let nest = |i: usize| {
            let mut args: Vec<u64> = x[..i].iter().map(|&a| bit(a)).collect();
            args.push(t.f(&x[i..i + m]));
            args.extend(x[i + m..].iter().map(|&a| bit(a)));
            t.f_sets(&args)
        };
        for i in 0..m {
            for j in i + 1..m {
                if nest(i) != nest(j) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn associative_g(s: &Structure) -> bool {
    let t = Tables::of(s);
    let n = t.n;
    for x in tuples(t.k, 2 * n - 1) {
        let nest = |i: usize| {
            let mut args = x[..i].to_vec();
            args.push(t.g(&x[i..i + n]));
            args.extend_from_slice(&x[i + n..]);
            t.g(&args)
        };
        for i in 0..n {
            for j in i + 1..n {
                if nest(i) != nest(j) {
                    return false;
                }
            }
        }
    }
    true
}

/// `g(x.., f(a), ..x) = f(g(x.., a_1, ..x), .., g(x.., a_m, ..x))`, or `⊆` when `weak`.
pub fn distributive(s: &Structure, weak: bool) -> bool {
    let t = Tables::of(s);
    for slot in 0..t.n {
        for a in tuples(t.k, t.m) {
            for x in tuples(t.k, t.n - 1) {
                let mut args: Vec<u64> = x[..slot].iter().map(|&v| bit(v)).collect();
                args.push(t.f(&a));
                args.extend(x[slot..].iter().map(|&v| bit(v)));
                let lhs = t.g_sets(&args);
                let images: Vec<u64> = a
                    .iter()
                    .map(|&ai| {
                        let mut full = x[..slot].to_vec();
                        full.push(ai);
                        full.extend_from_slice(&x[slot..]);
                        bit(t.g(&full))
                    })
                    .collect();
                let rhs = t.f_sets(&images);
                let ok = if weak { lhs & !rhs == 0 } else { lhs == rhs };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

pub fn semihyperring(s: &Structure) -> bool {
    associative_f(s) && associative_g(s) && distributive(s, false)
}

pub fn weak_semihyperring(s: &Structure) -> bool {
    associative_f(s) && associative_g(s) && distributive(s, true)
}

fn spike(len: usize, fill: usize, slot: usize, value: usize) -> Vec<usize> {
    let mut v = vec![fill; len];
    v[slot] = value;
    v
}

pub fn hyperadditive_identities(s: &Structure) -> u64 {
    let t = Tables::of(s);
    let mut out = 0;
    for e in 0..t.k {
        let ok = (0..t.m).all(|slot| (0..t.k).all(|x| t.f(&spike(t.m, e, slot, x)) & bit(x) != 0));
        if ok {
            out |= bit(e);
        }
    }
    out
}

pub fn multiplicative_identities(s: &Structure) -> u64 {
    let t = Tables::of(s);
    let mut out = 0;
    for e in 0..t.k {
        let ok = (0..t.n).all(|slot| (0..t.k).all(|y| t.g(&spike(t.n, e, slot, y)) == y));
        if ok {
            out |= bit(e);
        }
    }
    out
}

pub fn zeros(s: &Structure) -> Vec<usize> {
    let t = Tables::of(s);
    (0..t.k)
        .filter(|&z| {
            (0..t.k).all(|x| {
                t.f(&spike(t.m, z, t.m - 1, x)) == bit(x)
                    && t.f(&spike(t.m, z, 0, x)) == bit(x)
                    && t.g(&spike(t.n, z, t.n - 1, x)) == z
                    && t.g(&spike(t.n, z, 0, x)) == z
            })
        })
        .collect()
}

pub fn zero_sum_free(s: &Structure, zero: usize) -> bool {
    let t = Tables::of(s);
    tuples(t.k, t.m)
        .iter()
        .all(|x| t.f(x) & bit(zero) == 0 || x.iter().all(|&v| v == zero))
}

pub fn additively_idempotent(s: &Structure, strict: bool) -> bool {
    let t = Tables::of(s);
    (0..t.k).all(|x| {
        let out = t.f(&vec![x; t.m]);
        if strict {
            out == bit(x)
        } else {
            out & bit(x) != 0
        }
    })
}

// ---------------------------------------------------------------------------
// Subsets

pub fn f_closed(s: &Structure, set: u64) -> bool {
    let t = Tables::of(s);
    tuples(t.k, t.m)
        .iter()
        .filter(|x| x.iter().all(|&v| set & bit(v) != 0))
        .all(|x| t.f(x) & !set == 0)
}

pub fn sub_semihyperring(s: &Structure, set: u64) -> bool {
    let t = Tables::of(s);
    f_closed(s, set)
        && tuples(t.k, t.n)
            .iter()
            .filter(|x| x.iter().all(|&v| set & bit(v) != 0))
            .all(|x| set & bit(t.g(x)) != 0)
}

/// `g(a_1, .., a_{n-1}, i) ∈ I`.
pub fn left_hyperideal(s: &Structure, set: u64) -> bool {
    let t = Tables::of(s);
    f_closed(s, set)
        && tuples(t.k, t.n)
            .iter()
            .filter(|x| set & bit(x[t.n - 1]) != 0)
            .all(|x| set & bit(t.g(x)) != 0)
}

/// `g(i, a_1, .., a_{n-1}) ∈ I`.
pub fn right_hyperideal(s: &Structure, set: u64) -> bool {
    let t = Tables::of(s);
    f_closed(s, set)
        && tuples(t.k, t.n)
            .iter()
            .filter(|x| set & bit(x[0]) != 0)
            .all(|x| set & bit(t.g(x)) != 0)
}

pub fn hyperideal(s: &Structure, set: u64) -> bool {
    left_hyperideal(s, set) && right_hyperideal(s, set)
}

pub fn weak_left_hyperideal(s: &Structure, set: u64) -> bool {
    if !left_hyperideal(s, set) {
        return false;
    }
    let t = Tables::of(s);
    for i in members(set) {
        for x in tuples(t.k, t.m - 1) {
            let mut front = vec![i];
            front.extend_from_slice(&x);
            let mut back = x.clone();
            back.push(i);
            let triggered = t.f(&front) & !set == 0 || t.f(&back) & !set == 0;
            if triggered && !x.iter().all(|&v| set & bit(v) != 0) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Relations

fn sets_related(labels: &[usize], a: u64, b: u64) -> bool {
    let ok = |p: u64, q: u64| members(p).iter().all(|&x| members(q).iter().any(|&y| labels[x] == labels[y]));
    ok(a, b) && ok(b, a)
}

fn tuples_related(labels: &[usize], a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| labels[x] == labels[y])
}

/// Every pair of componentwise related tuples gives related values.
pub fn congruence(s: &Structure, labels: &[usize]) -> bool {
    let t = Tables::of(s);
    let fts = tuples(t.k, t.m);
    for a in &fts {
        for b in &fts {
            if tuples_related(labels, a, b) && !sets_related(labels, t.f(a), t.f(b)) {
                return false;
            }
        }
    }
    let gts = tuples(t.k, t.n);
    for a in &gts {
        for b in &gts {
            if tuples_related(labels, a, b) && labels[t.g(a)] != labels[t.g(b)] {
                return false;
            }
        }
    }
    true
}

/// For related tuples, every output of one is related to every output of the other.
pub fn strongly_regular(s: &Structure, labels: &[usize]) -> bool {
    if !congruence(s, labels) {
        return false;
    }
    let t = Tables::of(s);
    let fts = tuples(t.k, t.m);
    for a in &fts {
        for b in &fts {
            if !tuples_related(labels, a, b) {
                continue;
            }
            for x in members(t.f(a)) {
                for y in members(t.f(b)) {
                    if labels[x] != labels[y] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Quotient tables on the given class labels `0..c`, built from whole classes:
/// `f` is the union of classes of `f` over every tuple of class members.
pub fn quotient_tables(s: &Structure, labels: &[usize]) -> Tables {
    let t = Tables::of(s);
    let c = labels.iter().max().map_or(0, |&x| x + 1);
    let class = |q: usize| -> u64 { (0..t.k).filter(|&x| labels[x] == q).map(bit).sum() };
    let lift = |set: u64| -> u64 { members(set).iter().map(|&x| bit(labels[x])).fold(0, |a, b| a | b) };
    let f = tuples(c, t.m)
        .iter()
        .map(|qt| {
            let args: Vec<u64> = qt.iter().map(|&q| class(q)).collect();
            lift(t.f_sets(&args))
        })
        .collect();
    let g = tuples(c, t.n)
        .iter()
        .map(|qt| {
            let rep: Vec<usize> = qt.iter().map(|&q| (0..t.k).find(|&x| labels[x] == q).unwrap()).collect();
            labels[t.g(&rep)]
        })
        .collect();
    Tables {
        k: c,
        m: t.m,
        n: t.n,
        f,
        g,
    }
}

// ---------------------------------------------------------------------------
// Maps

/// `φ(f(x)) = f'(φ(x))` (or `⊆` when `inclusion`) and `φ(g(x)) = g'(φ(x))`.
pub fn homomorphism(src: &Structure, tgt: &Structure, image: &[usize], inclusion: bool) -> bool {
    let (a, b) = (Tables::of(src), Tables::of(tgt));
    for x in tuples(a.k, a.m) {
        let mapped: u64 = members(a.f(&x)).iter().map(|&z| bit(image[z])).fold(0, |p, q| p | q);
        let y: Vec<usize> = x.iter().map(|&v| image[v]).collect();
        let target = b.f(&y);
        let ok = if inclusion { mapped & !target == 0 } else { mapped == target };
        if !ok {
            return false;
        }
    }
    tuples(a.k, a.n).iter().all(|x| {
        let y: Vec<usize> = x.iter().map(|&v| image[v]).collect();
        image[a.g(x)] == b.g(&y)
    })
}

/// Every map `0..k → 0..k'` that is a homomorphism, in lexicographic order.
pub fn all_homomorphisms(src: &Structure, tgt: &Structure, inclusion: bool) -> Vec<Vec<usize>> {
    tuples(tgt.k(), src.k())
        .into_iter()
        .filter(|img| homomorphism(src, tgt, img, inclusion))
        .collect()
}

// ---------------------------------------------------------------------------
// Fuzzy

/// Fuzzy hyperideal conditions: the `f` inequality and `μ(x_i) ≤ μ(g(x))`
/// for the listed slots.
pub fn fuzzy_ideal(s: &Structure, mu: &[Rational64], slots: &[usize]) -> bool {
    let t = Tables::of(s);
    for x in tuples(t.k, t.m) {
        let lo = x.iter().map(|&v| mu[v]).min().unwrap();
        if members(t.f(&x)).iter().any(|&z| mu[z] < lo) {
            return false;
        }
    }
    for x in tuples(t.k, t.n) {
        let out = mu[t.g(&x)];
        if slots.iter().any(|&i| mu[x[i]] > out) {
            return false;
        }
    }
    true
}

pub fn level(mu: &[Rational64], t: Rational64) -> u64 {
    mu.iter()
        .enumerate()
        .filter(|(_, &g)| g >= t)
        .map(|(x, _)| bit(x))
        .fold(0, |a, b| a | b)
}

/// Every non-empty level subset at `t = i / steps`, `0 ≤ i ≤ steps`, is a hyperideal.
pub fn levels_on_grid(s: &Structure, mu: &[Rational64], steps: i64) -> bool {
    (0..=steps).all(|i| {
        let set = level(mu, Rational64::new(i, steps));
        set == 0 || hyperideal(s, set)
    })
}

/// `μ_src(x, z) ≤ μ_tgt(φ(x), φ(z))` for every tuple and output of both operations.
pub fn fuzzy_homomorphism(src: &FuzzyHyperStructure, tgt: &FuzzyHyperStructure, image: &[usize]) -> bool {
    let (k, kt) = (src.k(), tgt.k());
    for x in tuples(k, src.m()) {
        let y: Vec<usize> = x.iter().map(|&v| image[v]).collect();
        for z in 0..k {
            if src.grade_f(index(k, &x), z) > tgt.grade_f(index(kt, &y), image[z]) {
                return false;
            }
        }
    }
    for x in tuples(k, src.n()) {
        let y: Vec<usize> = x.iter().map(|&v| image[v]).collect();
        for z in 0..k {
            if src.grade_g(index(k, &x), z) > tgt.grade_g(index(kt, &y), image[z]) {
                return false;
            }
        }
    }
    true
}
