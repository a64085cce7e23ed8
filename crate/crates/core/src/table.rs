//! Dense operation tables addressed by row-major tuple index.
//!
//! A tuple `(x_0, .., x_{L-1})` over `{0, .., k-1}` lives at flat index
//! `x_0 * k^(L-1) + .. + x_{L-1}`.

use crate::error::{Error, Result};
use crate::subset::SubsetMask;
use crate::MAX_UNIVERSE;

/// Elements of a universe of size `k` are the integers `0..k`.
pub type Element = usize;

/// Hard limit on the number of cells in one table.
pub const MAX_TABLE_LEN: usize = 1 << 28;

/// Fixed-length tuples over a universe of size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TupleShape {
    k: usize,
    len: usize,
    count: usize,
}

impl TupleShape {
    pub fn new(k: usize, len: usize) -> Result<Self> {
        let count = u32::try_from(len)
            .ok()
            .and_then(|l| k.checked_pow(l))
            .filter(|&c| c <= MAX_TABLE_LEN)
            .ok_or_else(|| Error::domain(format!("{k}^{len} tuples exceed the table limit")))?;
        Ok(TupleShape { k, len, count })
    }

    /// A shape for sweeping rather than storing: only `k^len` overflow is an error.
    pub fn unbounded(k: usize, len: usize) -> Result<Self> {
        let count = u32::try_from(len)
            .ok()
            .and_then(|l| k.checked_pow(l))
            .ok_or_else(|| Error::domain(format!("{k}^{len} tuples overflow the index range")))?;
        Ok(TupleShape { k, len, count })
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of tuples, `k^len`.
    #[inline]
    pub fn count(&self) -> usize {
        self.count
    }

    /// Weight of `position` in the flat index.
    #[inline]
    pub fn stride(&self, position: usize) -> usize {
        self.k.pow((self.len - 1 - position) as u32)
    }

    pub fn encode(&self, tuple: &[Element]) -> Result<usize> {
        if tuple.len() != self.len {
            return Err(Error::Arity {
                expected: self.len,
                got: tuple.len(),
            });
        }
        if let Some(&bad) = tuple.iter().find(|&&x| x >= self.k) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                k: self.k,
            });
        }
        Ok(self.encode_unchecked(tuple))
    }

    #[inline]
    pub fn encode_unchecked(&self, tuple: &[Element]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.k + x)
    }

    pub fn decode(&self, index: usize) -> Vec<Element> {
        let mut out = vec![0; self.len];
        self.decode_into(index, &mut out);
        out
    }

    #[inline]
    pub fn decode_into(&self, mut index: usize, out: &mut [Element]) {
        debug_assert_eq!(out.len(), self.len);
        for slot in out.iter_mut().rev() {
            *slot = index % self.k;
            index /= self.k;
        }
    }
}

/// Row-major index of `tuple` among tuples of its length over `{0, .., k-1}`.
pub fn tuple_index(tuple: &[Element], k: usize) -> Result<usize> {
    TupleShape::new(k, tuple.len())?.encode(tuple)
}

/// Advances `tuple` to its row-major successor; returns false after the last one.
#[inline]
pub fn next_tuple(tuple: &mut [Element], k: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < k {
            return true;
        }
        *slot = 0;
    }
    false
}

pub(crate) fn check_universe(k: usize) -> Result<()> {
    if k == 0 || k > MAX_UNIVERSE {
        return Err(Error::UniverseSize(k));
    }
    Ok(())
}

fn check_arity(arity: usize) -> Result<()> {
    if arity < 2 {
        return Err(Error::ArityTooSmall(arity));
    }
    Ok(())
}

/// An m-ary hyperoperation: every m-tuple maps to a non-empty subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperOpTable {
    shape: TupleShape,
    entries: Vec<SubsetMask>,
}

impl HyperOpTable {
    pub fn new(k: usize, arity: usize, entries: Vec<SubsetMask>) -> Result<Self> {
        check_universe(k)?;
        check_arity(arity)?;
        let shape = TupleShape::new(k, arity)?;
        if entries.len() != shape.count() {
            return Err(Error::domain(format!(
                "hyperoperation table has {} entries, expected {k}^{arity} = {}",
                entries.len(),
                shape.count()
            )));
        }
        for (i, &entry) in entries.iter().enumerate() {
            let reason = if entry.is_empty() {
                "empty subset"
            } else if !entry.fits(k) {
                "element out of range"
            } else {
                continue;
            };
            return Err(Error::InvalidEntry {
                flat_index: i,
                tuple: shape.decode(i),
                reason: reason.into(),
            });
        }
        Ok(HyperOpTable { shape, entries })
    }

    pub fn from_fn(
        k: usize,
        arity: usize,
        mut entry: impl FnMut(&[Element]) -> SubsetMask,
    ) -> Result<Self> {
        check_universe(k)?;
        check_arity(arity)?;
        let shape = TupleShape::new(k, arity)?;
        let mut tuple = vec![0; arity];
        let mut entries = Vec::with_capacity(shape.count());
        loop {
            entries.push(entry(&tuple));
            if !next_tuple(&mut tuple, k) {
                break;
            }
        }
        Self::new(k, arity, entries)
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.shape.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.shape.k()
    }

    #[inline]
    pub fn shape(&self) -> TupleShape {
        self.shape
    }

    #[inline]
    pub fn entries(&self) -> &[SubsetMask] {
        &self.entries
    }

    /// Entry by flat index.
    #[inline]
    pub fn at(&self, index: usize) -> SubsetMask {
        self.entries[index]
    }

    pub fn get(&self, tuple: &[Element]) -> Result<SubsetMask> {
        Ok(self.entries[self.shape.encode(tuple)?])
    }
}

/// An n-ary (single-valued) operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpTable {
    shape: TupleShape,
    entries: Vec<u8>,
}

impl OpTable {
    pub fn new(k: usize, arity: usize, entries: Vec<Element>) -> Result<Self> {
        check_universe(k)?;
        check_arity(arity)?;
        let shape = TupleShape::new(k, arity)?;
        if entries.len() != shape.count() {
            return Err(Error::domain(format!(
                "operation table has {} entries, expected {k}^{arity} = {}",
                entries.len(),
                shape.count()
            )));
        }
        if let Some(i) = entries.iter().position(|&x| x >= k) {
            return Err(Error::InvalidEntry {
                flat_index: i,
                tuple: shape.decode(i),
                reason: format!("element {} out of range", entries[i]),
            });
        }
        Ok(OpTable {
            shape,
            entries: entries.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub fn from_fn(
        k: usize,
        arity: usize,
        mut entry: impl FnMut(&[Element]) -> Element,
    ) -> Result<Self> {
        check_universe(k)?;
        check_arity(arity)?;
        let shape = TupleShape::new(k, arity)?;
        let mut tuple = vec![0; arity];
        let mut entries = Vec::with_capacity(shape.count());
        loop {
            entries.push(entry(&tuple));
            if !next_tuple(&mut tuple, k) {
                break;
            }
        }
        Self::new(k, arity, entries)
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.shape.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.shape.k()
    }

    #[inline]
    pub fn shape(&self) -> TupleShape {
        self.shape
    }

    #[inline]
    pub fn at(&self, index: usize) -> Element {
        self.entries[index] as Element
    }

    pub fn get(&self, tuple: &[Element]) -> Result<Element> {
        Ok(self.at(self.shape.encode(tuple)?))
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = Element> + '_ {
        self.entries.iter().map(|&x| x as Element)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_examples() {
        assert_eq!(tuple_index(&[0, 0], 3).unwrap(), 0);
        assert_eq!(tuple_index(&[1, 2], 3).unwrap(), 5);
        assert_eq!(tuple_index(&[2, 1, 0], 3).unwrap(), 21);
    }

    #[test]
    fn out_of_range_element() {
        assert!(matches!(
            tuple_index(&[1, 3], 3),
            Err(Error::ElementOutOfRange { element: 3, k: 3 })
        ));
    }

    #[test]
    fn encode_decode_is_a_bijection() {
        for k in 1..=4 {
            for len in 1..=3 {
                let shape = TupleShape::new(k, len).unwrap();
                let mut tuple = vec![0; len];
                let mut expected = 0;
                loop {
                    let idx = shape.encode(&tuple).unwrap();
                    assert_eq!(idx, expected);
                    assert_eq!(shape.decode(idx), tuple);
                    expected += 1;
                    if !next_tuple(&mut tuple, k) {
                        break;
                    }
                }
                assert_eq!(expected, shape.count());
            }
        }
    }

    #[test]
    fn strides() {
        let shape = TupleShape::new(3, 3).unwrap();
        assert_eq!(shape.stride(0), 9);
        assert_eq!(shape.stride(2), 1);
    }

    #[test]
    fn hyperop_rejects_empty_entry() {
        let mut entries = vec![SubsetMask::singleton(0); 4];
        entries[2] = SubsetMask::EMPTY;
        match HyperOpTable::new(2, 2, entries) {
            Err(Error::InvalidEntry {
                flat_index, tuple, ..
            }) => {
                assert_eq!(flat_index, 2);
                assert_eq!(tuple, vec![1, 0]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn arity_and_universe_limits() {
        assert!(matches!(
            OpTable::new(2, 1, vec![0, 1]),
            Err(Error::ArityTooSmall(1))
        ));
        assert!(matches!(
            OpTable::from_fn(65, 2, |_| 0),
            Err(Error::UniverseSize(65))
        ));
        assert!(OpTable::new(2, 2, vec![0, 1, 2, 0]).is_err());
        assert!(OpTable::new(2, 2, vec![0, 1, 1]).is_err());
    }
}
