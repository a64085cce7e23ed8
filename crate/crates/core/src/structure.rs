use crate::error::{Error, Result};
use crate::subset::SubsetMask;
use crate::table::{next_tuple, Element, HyperOpTable, OpTable};

/// A finite universe with an m-ary hyperoperation `f` and an n-ary operation `g`.
///
/// Immutable once built; all checks borrow it read-only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    f: HyperOpTable,
    g: OpTable,
}

impl Structure {
    pub fn new(f: HyperOpTable, g: OpTable) -> Result<Self> {
        if f.k() != g.k() {
            return Err(Error::domain(format!(
                "f is over {} elements but g over {}",
                f.k(),
                g.k()
            )));
        }
        Ok(Structure { f, g })
    }

    /// Builds both tables from closures over tuples.
    pub fn from_fns(
        k: usize,
        m: usize,
        n: usize,
        f: impl FnMut(&[Element]) -> SubsetMask,
        g: impl FnMut(&[Element]) -> Element,
    ) -> Result<Self> {
        Structure::new(HyperOpTable::from_fn(k, m, f)?, OpTable::from_fn(k, n, g)?)
    }

    /// The one-element structure.
    pub fn trivial(m: usize, n: usize) -> Result<Self> {
        Structure::from_fns(1, m, n, |_| SubsetMask::singleton(0), |_| 0)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.f.k()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.f.arity()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.g.arity()
    }

    #[inline]
    pub fn f(&self) -> &HyperOpTable {
        &self.f
    }

    #[inline]
    pub fn g(&self) -> &OpTable {
        &self.g
    }

    #[inline]
    pub fn universe(&self) -> SubsetMask {
        SubsetMask::full(self.k())
    }

    pub fn eval_f(&self, tuple: &[Element]) -> Result<SubsetMask> {
        self.f.get(tuple)
    }

    pub fn eval_g(&self, tuple: &[Element]) -> Result<Element> {
        self.g.get(tuple)
    }

    /// `f(A_1, .., A_m)`: the union of `f` over the Cartesian product of the arguments.
    pub fn eval_f_subsets(&self, args: &[SubsetMask]) -> Result<SubsetMask> {
        if args.len() != self.m() {
            return Err(Error::Arity {
                expected: self.m(),
                got: args.len(),
            });
        }
        let universe = self.universe();
        for &a in args {
            if a.is_empty() {
                return Err(Error::EmptySubset);
            }
            if !a.is_subset(universe) {
                return Err(Error::ElementOutOfRange {
                    element: a.max().unwrap_or(0),
                    k: self.k(),
                });
            }
        }
        Ok(self.f_subsets_unchecked(args))
    }

    /// Subset extension without argument validation; arguments must be
    /// non-empty subsets of the universe.
    pub(crate) fn f_subsets_unchecked(&self, args: &[SubsetMask]) -> SubsetMask {
        let members: Vec<Vec<Element>> = args.iter().map(|a| a.to_vec()).collect();
        let shape = self.f.shape();
        let mut cursor = vec![0usize; args.len()];
        let mut out = SubsetMask::EMPTY;
        loop {
            let idx = cursor
                .iter()
                .zip(&members)
                .fold(0, |acc, (&c, m)| acc * shape.k() + m[c]);
            out |= self.f.at(idx);
            // Odometer over member positions.
            let mut slot = args.len();
            loop {
                if slot == 0 {
                    return out;
                }
                slot -= 1;
                cursor[slot] += 1;
                if cursor[slot] < members[slot].len() {
                    break;
                }
                cursor[slot] = 0;
            }
        }
    }

    /// `{ g(prefix, a, suffix) : a in A }`.
    pub fn eval_g_subset(
        &self,
        prefix: &[Element],
        a: SubsetMask,
        suffix: &[Element],
    ) -> Result<SubsetMask> {
        let got = prefix.len() + 1 + suffix.len();
        if got != self.n() {
            return Err(Error::Arity {
                expected: self.n(),
                got,
            });
        }
        if a.is_empty() {
            return Err(Error::EmptySubset);
        }
        let k = self.k();
        if let Some(&x) = prefix.iter().chain(suffix).find(|&&x| x >= k) {
            return Err(Error::ElementOutOfRange { element: x, k });
        }
        if !a.fits(k) {
            return Err(Error::ElementOutOfRange {
                element: a.max().unwrap_or(0),
                k,
            });
        }
        let shape = self.g.shape();
        let mut tuple = Vec::with_capacity(self.n());
        tuple.extend_from_slice(prefix);
        tuple.push(0);
        tuple.extend_from_slice(suffix);
        let base = shape.encode_unchecked(&tuple);
        Ok(self.g_image_at_slot(base, shape.stride(prefix.len()), a))
    }

    /// Union of `f` entries `base + u * stride` for `u` in `a`.
    #[inline]
    pub(crate) fn f_image_at_slot(&self, base: usize, stride: usize, a: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for u in a {
            out |= self.f.at(base + u * stride);
        }
        out
    }

    #[inline]
    pub(crate) fn g_image_at_slot(&self, base: usize, stride: usize, a: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for u in a {
            out.insert(self.g.at(base + u * stride));
        }
        out
    }

    /// Relabels elements by `perm` (element `x` becomes `perm[x]`).
    pub fn permuted(&self, perm: &[Element]) -> Result<Structure> {
        let k = self.k();
        if perm.len() != k {
            return Err(Error::Arity {
                expected: k,
                got: perm.len(),
            });
        }
        let mut inverse = vec![usize::MAX; k];
        for (x, &px) in perm.iter().enumerate() {
            if px >= k || inverse[px] != usize::MAX {
                return Err(Error::domain("relabeling is not a permutation"));
            }
            inverse[px] = x;
        }
        let map_set = |s: SubsetMask| s.iter().map(|x| perm[x]).collect::<SubsetMask>();
        let mut pre = vec![0; self.m().max(self.n())];
        Structure::from_fns(
            k,
            self.m(),
            self.n(),
            |t| {
                for (p, &x) in pre.iter_mut().zip(t) {
                    *p = inverse[x];
                }
                map_set(self.f.at(self.f.shape().encode_unchecked(&pre[..t.len()])))
            },
            |t| {
                let pre: Vec<Element> = t.iter().map(|&x| inverse[x]).collect();
                perm[self.g.at(self.g.shape().encode_unchecked(&pre))]
            },
        )
    }

    /// Visits every m-tuple in row-major order together with its flat index.
    pub fn for_each_f_tuple(&self, mut visit: impl FnMut(usize, &[Element])) {
        let mut tuple = vec![0; self.m()];
        let mut idx = 0;
        loop {
            visit(idx, &tuple);
            idx += 1;
            if !next_tuple(&mut tuple, self.k()) {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_structure(k: usize, n: usize) -> Structure {
        Structure::from_fns(
            k,
            2,
            n,
            |t| t.iter().copied().collect(),
            |t| t.iter().product::<usize>() % k,
        )
        .unwrap()
    }

    #[test]
    fn eval_f_lookups() {
        let s = pair_structure(5, 3);
        assert_eq!(s.eval_f(&[1, 3]).unwrap().to_vec(), vec![1, 3]);
        assert_eq!(s.eval_f(&[2, 2]).unwrap().to_vec(), vec![2]);
        assert!(matches!(
            s.eval_f(&[1, 2, 3]),
            Err(Error::Arity {
                expected: 2,
                got: 3
            })
        ));
        let total = Structure::from_fns(4, 3, 2, |_| SubsetMask::full(4), |_| 0).unwrap();
        assert_eq!(total.eval_f(&[0, 3, 1]).unwrap(), SubsetMask::full(4));
    }

    #[test]
    fn subset_extension() {
        let s = pair_structure(5, 3);
        let a: SubsetMask = [0, 1].into_iter().collect();
        let b = SubsetMask::singleton(2);
        assert_eq!(s.eval_f_subsets(&[a, b]).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(
            s.eval_f_subsets(&[SubsetMask::singleton(3), SubsetMask::singleton(4)])
                .unwrap(),
            s.eval_f(&[3, 4]).unwrap()
        );
        assert!(matches!(
            s.eval_f_subsets(&[a, SubsetMask::EMPTY]),
            Err(Error::EmptySubset)
        ));
        let total = Structure::from_fns(3, 2, 2, |_| SubsetMask::full(3), |_| 0).unwrap();
        let h = total.universe();
        assert_eq!(total.eval_f_subsets(&[h, h]).unwrap(), h);
    }

    #[test]
    fn eval_g_examples() {
        let s = pair_structure(5, 3);
        assert_eq!(s.eval_g(&[2, 3, 4]).unwrap(), 4);
        for x in 0..5 {
            assert_eq!(s.eval_g(&[1, 1, x]).unwrap(), x);
            assert_eq!(s.eval_g(&[0, x, 3]).unwrap(), 0);
        }
    }

    #[test]
    fn eval_g_subset_image() {
        let s = pair_structure(5, 3);
        let a: SubsetMask = [1, 2].into_iter().collect();
        // {2*1*3, 2*2*3} mod 5 = {6, 12} mod 5
        assert_eq!(s.eval_g_subset(&[2], a, &[3]).unwrap().to_vec(), vec![1, 2]);
        assert_eq!(
            s.eval_g_subset(&[2], SubsetMask::singleton(4), &[3]).unwrap(),
            SubsetMask::singleton(s.eval_g(&[2, 4, 3]).unwrap())
        );
        let constant = Structure::from_fns(3, 2, 2, |t| t.iter().copied().collect(), |_| 1).unwrap();
        assert_eq!(
            constant.eval_g_subset(&[], constant.universe(), &[2]).unwrap(),
            SubsetMask::singleton(1)
        );
        assert!(matches!(
            s.eval_g_subset(&[2], SubsetMask::EMPTY, &[3]),
            Err(Error::EmptySubset)
        ));
        assert!(s.eval_g_subset(&[2], a, &[]).is_err());
    }

    #[test]
    fn permutation_round_trip() {
        let s = pair_structure(4, 2);
        let perm = [2, 0, 3, 1];
        let inv = [1, 3, 0, 2];
        let p = s.permuted(&perm).unwrap();
        assert_eq!(p.eval_g(&[perm[2], perm[3]]).unwrap(), perm[s.eval_g(&[2, 3]).unwrap()]);
        assert_eq!(p.permuted(&inv).unwrap(), s);
        assert!(s.permuted(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn mismatched_universes() {
        let f = HyperOpTable::from_fn(2, 2, |_| SubsetMask::singleton(0)).unwrap();
        let g = OpTable::from_fn(3, 2, |_| 0).unwrap();
        assert!(Structure::new(f, g).is_err());
    }
}
