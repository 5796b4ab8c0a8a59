use alloc::vec::Vec;
use core::ops::Index;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::exactnum::CycloNum;

/// A finite set of distinct points of `Q(ζ_M)`, in insertion order, with an
/// exact membership index keyed on the canonical representation.
#[derive(Clone, Debug)]
pub struct PointSet {
    order: u32,
    points: Vec<CycloNum>,
    index: HashMap<CycloNum, usize>,
}

impl PointSet {
    pub fn empty(order: u32) -> PointSet {
        PointSet { order, points: Vec::new(), index: HashMap::new() }
    }

    /// Fails on a conductor mismatch or on a repeated point.
    pub fn new(order: u32, points: Vec<CycloNum>) -> Result<PointSet> {
        let mut set = PointSet::empty(order);
        for p in points {
            if p.order() != order {
                return Err(Error::OrderMismatch { left: order, right: p.order() });
            }
            if let Some(&prev) = set.index.get(&p) {
                return Err(Error::DuplicatePoint(prev, set.points.len()));
            }
            set.push_unchecked(p);
        }
        Ok(set)
    }

    /// Builds a set from a sequence that may repeat points; later copies are
    /// dropped.
    pub fn from_union(order: u32, points: impl IntoIterator<Item = CycloNum>) -> Result<PointSet> {
        let mut set = PointSet::empty(order);
        for p in points {
            set.insert(p)?;
        }
        Ok(set)
    }

    /// Adds `p` unless present; returns whether it was new.
    pub fn insert(&mut self, p: CycloNum) -> Result<bool> {
        if p.order() != self.order {
            return Err(Error::OrderMismatch { left: self.order, right: p.order() });
        }
        if self.index.contains_key(&p) {
            return Ok(false);
        }
        self.push_unchecked(p);
        Ok(true)
    }

    fn push_unchecked(&mut self, p: CycloNum) {
        self.index.insert(p.clone(), self.points.len());
        self.points.push(p);
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[CycloNum] {
        &self.points
    }

    pub fn iter(&self) -> core::slice::Iter<'_, CycloNum> {
        self.points.iter()
    }

    pub fn position(&self, p: &CycloNum) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &CycloNum) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.order == other.order && self.points.iter().all(|p| other.contains(p))
    }

    /// Same points, represented in `Q(ζ_target)`.
    pub fn lift(&self, target: u32) -> Result<PointSet> {
        if target == self.order {
            return Ok(self.clone());
        }
        let pts = self.points.iter().map(|p| p.lift_order(target)).collect::<Result<Vec<_>>>()?;
        PointSet::new(target, pts)
    }

    /// `{αz + β}`; `α` must be nonzero.
    pub fn affine(&self, alpha: &CycloNum, beta: &CycloNum) -> Result<PointSet> {
        if alpha.is_zero() {
            return Err(Error::InvalidParameter("affine map needs a nonzero scale".into()));
        }
        let pts = self
            .points
            .iter()
            .map(|p| alpha.try_mul(p).and_then(|q| q.try_add(beta)))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(self.order, pts)
    }

    /// Union, keeping `self`'s order first.
    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        PointSet::from_union(self.order, self.points.iter().chain(other.points.iter()).cloned())
    }

    /// Points in canonical coefficient order.
    pub fn sorted(&self) -> PointSet {
        let mut pts = self.points.clone();
        pts.sort();
        PointSet::new(self.order, pts).expect("already distinct")
    }

    /// Set equality, ignoring order.
    pub fn same_points(&self, other: &PointSet) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }
}

impl Index<usize> for PointSet {
    type Output = CycloNum;
    fn index(&self, i: usize) -> &CycloNum {
        &self.points[i]
    }
}

impl PartialEq for PointSet {
    /// Ordered equality; see [`PointSet::same_points`] for set equality.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.points == other.points
    }
}

impl Eq for PointSet {}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a CycloNum;
    type IntoIter = core::slice::Iter<'a, CycloNum>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ints(m: u32, v: &[i64]) -> Vec<CycloNum> {
        v.iter().map(|&x| CycloNum::from_integer(m, x).unwrap()).collect()
    }

    #[test]
    fn rejects_duplicates_and_mismatched_conductors() {
        assert_eq!(PointSet::new(4, ints(4, &[0, 1, 0])).unwrap_err(), Error::DuplicatePoint(0, 2));
        assert_eq!(
            PointSet::new(4, ints(12, &[0])).unwrap_err(),
            Error::OrderMismatch { left: 4, right: 12 }
        );
    }

    #[test]
    fn union_deduplicates() {
        let s = PointSet::from_union(4, ints(4, &[3, 1, 3, 2, 1])).unwrap();
        assert_eq!(s.points(), ints(4, &[3, 1, 2]).as_slice());
        assert_eq!(s.position(&CycloNum::from_integer(4, 2).unwrap()), Some(2));
    }

    #[test]
    fn lift_preserves_membership() {
        let s = PointSet::new(4, vec![CycloNum::root_of_unity(4, 1).unwrap()]).unwrap();
        let t = s.lift(12).unwrap();
        assert!(t.contains(&CycloNum::root_of_unity(12, 3).unwrap()));
    }
}
