use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::CycloNum;
use crate::geom::PointSet;

/// A pattern: at least three distinct points, two of them designated as
/// anchors, and the order of its proper symmetry group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    base: PointSet,
    anchors: (usize, usize),
    sym_order: usize,
}

impl Pattern {
    /// Anchors default to the two smallest points in coefficient order.
    pub fn new(base: PointSet) -> Result<Pattern> {
        if base.len() < 3 {
            return Err(Error::TooFewPoints { needed: 3, got: base.len() });
        }
        let mut idx: Vec<usize> = (0..base.len()).collect();
        idx.sort_by(|&a, &b| base[a].cmp(&base[b]));
        Pattern::with_anchors(base, idx[0], idx[1])
    }

    pub fn with_anchors(base: PointSet, first: usize, second: usize) -> Result<Pattern> {
        if base.len() < 3 {
            return Err(Error::TooFewPoints { needed: 3, got: base.len() });
        }
        if first == second || first >= base.len() || second >= base.len() {
            return Err(Error::InvalidParameter(alloc::format!(
                "anchors ({first}, {second}) must be distinct indices below {}",
                base.len()
            )));
        }
        let sym_order = symmetry_order_of(&base, first, second);
        Ok(Pattern { base, anchors: (first, second), sym_order })
    }

    pub fn from_points(order: u32, points: Vec<CycloNum>) -> Result<Pattern> {
        Pattern::new(PointSet::new(order, points)?)
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn anchors(&self) -> (usize, usize) {
        self.anchors
    }

    pub fn anchor_points(&self) -> (&CycloNum, &CycloNum) {
        (&self.base[self.anchors.0], &self.base[self.anchors.1])
    }

    /// `|Iso⁺(P)|`.
    pub fn sym_order(&self) -> usize {
        self.sym_order
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.base.order()
    }

    pub fn lift(&self, target: u32) -> Result<Pattern> {
        if target == self.order() {
            return Ok(self.clone());
        }
        let base = self.base.lift(target)?;
        Ok(Pattern { base, anchors: self.anchors, sym_order: self.sym_order })
    }

    /// `μ_p = (p - p₂)/(p₁ - p₂)` for every point, so the similarity sending
    /// `(p₁, p₂) ↦ (a₁, a₂)` is `p ↦ a₂ + (a₁ - a₂)·μ_p`.
    pub fn transfer_coefficients(&self) -> Vec<CycloNum> {
        let (p1, p2) = self.anchor_points();
        let inv = (p1 - p2).inverse().expect("anchors are distinct");
        self.base.iter().map(|p| &(p - p2) * &inv).collect()
    }

    /// Whether the rotation-centre orbit argument holds: the points off the
    /// centre split into orbits of size `I`.
    pub fn orbit_consistent(&self) -> bool {
        let n = self.len();
        let i = self.sym_order;
        if i == 1 {
            return true;
        }
        let centre_in_set = {
            // centroid is fixed by every symmetry
            let k = CycloNum::from_integer(self.order(), n as i64).expect("valid conductor");
            let mut sum = CycloNum::zero(self.order()).expect("valid conductor");
            for p in self.base.iter() {
                sum = &sum + p;
            }
            let centroid = sum.try_div(&k).expect("n > 0");
            self.base.contains(&centroid)
        };
        let off = if centre_in_set { n - 1 } else { n };
        off % i == 0
    }
}

/// Number of ordered pairs `(a₁, a₂)` of base points for which the similarity
/// `(p₁, p₂) ↦ (a₁, a₂)` maps the base onto itself.
fn symmetry_order_of(base: &PointSet, first: usize, second: usize) -> usize {
    let (p1, p2) = (&base[first], &base[second]);
    let inv = (p1 - p2).inverse().expect("distinct anchors");
    let mu: Vec<CycloNum> = base.iter().map(|p| &(p - p2) * &inv).collect();
    let mut count = 0;
    for (i, a1) in base.iter().enumerate() {
        for (j, a2) in base.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = a1 - a2;
            if mu.iter().all(|m| base.contains(&(a2 + &(&d * m)))) {
                count += 1;
            }
        }
    }
    count
}

/// `|Iso⁺(P)|`, recomputed from the base points.
pub fn proper_symmetry_order(pattern: &Pattern) -> usize {
    let (a, b) = pattern.anchors();
    symmetry_order_of(pattern.base(), a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use alloc::vec;

    fn roots(m: u32, k: u32) -> Vec<CycloNum> {
        (0..k).map(|j| CycloNum::root_of_unity(m, (j * m / k) as i64).unwrap()).collect()
    }

    #[test]
    fn symmetry_orders() {
        let tri = Pattern::from_points(3, roots(3, 3)).unwrap();
        assert_eq!(tri.sym_order(), 3);
        let sq = Pattern::from_points(4, roots(4, 4)).unwrap();
        assert_eq!(sq.sym_order(), 4);
        let z = CycloNum::gaussian(4, &Rational::new(2.into(), 7.into()), &Rational::new(5.into(), 3.into())).unwrap();
        let scalene = Pattern::from_points(4, vec![CycloNum::zero(4).unwrap(), CycloNum::one(4).unwrap(), z]).unwrap();
        assert_eq!(scalene.sym_order(), 1);
        assert_eq!(proper_symmetry_order(&scalene), 1);
    }

    #[test]
    fn square_with_centre_is_orbit_consistent() {
        let mut pts = roots(4, 4);
        pts.push(CycloNum::zero(4).unwrap());
        let p = Pattern::from_points(4, pts).unwrap();
        assert_eq!(p.sym_order(), 4);
        assert!(p.orbit_consistent());
    }

    #[test]
    fn anchors_are_smallest_points() {
        let pts = vec![
            CycloNum::from_integer(4, 5).unwrap(),
            CycloNum::from_integer(4, -1).unwrap(),
            CycloNum::root_of_unity(4, 1).unwrap(),
        ];
        let p = Pattern::from_points(4, pts).unwrap();
        assert_eq!(p.anchors(), (1, 2));
    }

    #[test]
    fn too_small() {
        let pts = roots(4, 2);
        assert_eq!(Pattern::from_points(4, pts).unwrap_err(), Error::TooFewPoints { needed: 3, got: 2 });
    }
}
