use alloc::vec::Vec;

use hashbrown::HashMap;

use super::images::SetImages;
use super::PointSet;
use crate::error::{Error, Result};
use crate::exactnum::{CycloNum, ModKey};

/// `d1 ∥ d2` exactly: `d1 · conj(d2)` is real.
pub fn parallel(d1: &CycloNum, d2: &CycloNum) -> bool {
    (d1 * &d2.conj()).is_real()
}

/// Whether `c` lies on the line through `a` and `b`, i.e. `(c-a)/(b-a)` is
/// real. The test is done without dividing.
pub fn collinear(a: &CycloNum, b: &CycloNum, c: &CycloNum) -> Result<bool> {
    let ab = b.try_sub(a)?;
    let ac = c.try_sub(a)?;
    if ab.is_zero() || ac.is_zero() || b == c {
        return Err(Error::CoincidentPoints);
    }
    Ok(parallel(&ac, &ab))
}

/// Splits `members` into exact classes under `same`, returning the size of
/// the largest class.
fn largest_exact_class(members: &[usize], mut same: impl FnMut(usize, usize) -> bool) -> usize {
    let mut rest: Vec<usize> = members.to_vec();
    let mut best = 0;
    while !rest.is_empty() {
        if rest.len() <= best {
            break;
        }
        let head = rest[0];
        let mut size = 1;
        let mut next = Vec::new();
        for &j in &rest[1..] {
            if same(head, j) {
                size += 1;
            } else {
                next.push(j);
            }
        }
        best = core::cmp::max(best, size);
        rest = next;
    }
    best
}

/// Largest number of points of `set` on one line.
///
/// For each anchor `i`, the later points are grouped by the modular key of
/// their direction from `i`; groups are then confirmed exactly. Returns 1
/// for a single point and at least 2 otherwise.
pub fn max_collinear(set: &PointSet) -> Result<usize> {
    let n = set.len();
    if n == 0 {
        return Err(Error::EmptySet);
    }
    if n <= 2 {
        return Ok(n);
    }
    let pts = set.points();
    let (_, best) = SetImages::compute(set.order(), pts, |img| {
        let mut best = 2;
        let mut groups: HashMap<ModKey, Vec<usize>> = HashMap::new();
        for i in 0..n {
            // a line through `best` points cannot be improved by anchors this late
            if n - i <= best {
                break;
            }
            groups.clear();
            for j in i + 1..n {
                groups.entry(img.direction(i, j)?).or_default().push(j);
            }
            for members in groups.values() {
                if members.len() + 1 <= best {
                    continue;
                }
                let size = largest_exact_class(members, |a, b| {
                    parallel(&(&pts[a] - &pts[i]), &(&pts[b] - &pts[i]))
                });
                best = core::cmp::max(best, size + 1);
            }
        }
        Some(best)
    });
    Ok(best)
}

/// Four distinct points `(a, b, c, d)` with `a + c = b + d`, as indices.
pub fn find_parallelogram_indices(set: &PointSet) -> Option<[usize; 4]> {
    let n = set.len();
    if n < 4 {
        return None;
    }
    let pts = set.points();
    let (_, found) = SetImages::compute(set.order(), pts, |img| {
        let h = img.hasher;
        let mut sums: HashMap<ModKey, Vec<(usize, usize)>> = HashMap::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let key = h.add(img.keys[i], img.keys[j]);
                let bucket = sums.entry(key).or_default();
                if !bucket.is_empty() {
                    let s = &pts[i] + &pts[j];
                    for &(a, c) in bucket.iter() {
                        // equal sums over distinct points force disjoint pairs
                        if &pts[a] + &pts[c] == s {
                            return Some(Some([a, i, c, j]));
                        }
                    }
                }
                bucket.push((i, j));
            }
        }
        Some(None)
    });
    found
}

/// Four distinct points `(a, b, c, d)` of `set` with `a + c = b + d`: the
/// diagonals `ac` and `bd` share a midpoint.
pub fn find_parallelogram(set: &PointSet) -> Option<[CycloNum; 4]> {
    find_parallelogram_indices(set).map(|idx| idx.map(|i| set[i].clone()))
}

/// Whether two disjoint point pairs span parallel segments.
pub fn has_parallel_segments(set: &PointSet) -> Result<bool> {
    let n = set.len();
    if n < 4 {
        return Err(Error::TooFewPoints { needed: 4, got: n });
    }
    let pts = set.points();
    let (_, found) = SetImages::compute(set.order(), pts, |img| {
        let mut dirs: HashMap<ModKey, Vec<(usize, usize)>> = HashMap::new();
        for i in 0..n {
            for j in i + 1..n {
                dirs.entry(img.direction(i, j)?).or_default().push((i, j));
            }
        }
        for bucket in dirs.values() {
            for (x, &(a, b)) in bucket.iter().enumerate() {
                for &(c, d) in &bucket[x + 1..] {
                    if a == c || a == d || b == c || b == d {
                        continue;
                    }
                    if parallel(&(&pts[b] - &pts[a]), &(&pts[d] - &pts[c])) {
                        return Some(true);
                    }
                }
            }
        }
        Some(false)
    });
    Ok(found)
}

/// No three points on a line.
pub fn in_general_position(set: &PointSet) -> Result<bool> {
    Ok(max_collinear(set)? <= 2)
}

/// In general position and without parallelograms.
pub fn is_parallelogram_free(set: &PointSet) -> Result<bool> {
    Ok(in_general_position(set)? && find_parallelogram_indices(set).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use alloc::vec;

    fn int(m: u32, v: i64) -> CycloNum {
        CycloNum::from_integer(m, v).unwrap()
    }

    fn gauss(a: i64, b: i64, c: i64, d: i64) -> CycloNum {
        CycloNum::gaussian(4, &Rational::new(a.into(), b.into()), &Rational::new(c.into(), d.into())).unwrap()
    }

    #[test]
    fn collinear_examples() {
        let i = CycloNum::root_of_unity(4, 1).unwrap();
        assert!(collinear(&int(4, 0), &int(4, 1), &int(4, 2)).unwrap());
        assert!(!collinear(&int(4, 0), &int(4, 1), &i).unwrap());
        let w = |e| CycloNum::root_of_unity(3, e).unwrap();
        assert!(!collinear(&int(3, 1), &w(1), &w(2)).unwrap());
        assert_eq!(collinear(&int(4, 0), &int(4, 0), &i), Err(Error::CoincidentPoints));
    }

    #[test]
    fn max_collinear_examples() {
        let line = PointSet::new(4, (0..4).map(|v| int(4, v)).collect()).unwrap();
        assert_eq!(max_collinear(&line).unwrap(), 4);
        assert_eq!(max_collinear(&PointSet::new(4, vec![int(4, 7)]).unwrap()).unwrap(), 1);
        assert_eq!(max_collinear(&PointSet::empty(4)), Err(Error::EmptySet));
        let tri = PointSet::new(4, vec![int(4, 0), int(4, 1), gauss(1, 3, 2, 5)]).unwrap();
        assert_eq!(max_collinear(&tri).unwrap(), 2);
    }

    #[test]
    fn unit_square_parallelogram() {
        let i = CycloNum::root_of_unity(4, 1).unwrap();
        let one_i = &int(4, 1) + &i;
        let sq = PointSet::new(4, vec![int(4, 0), int(4, 1), i.clone(), one_i.clone()]).unwrap();
        assert_eq!(find_parallelogram(&sq), Some([int(4, 0), int(4, 1), one_i, i.clone()]));
        assert!(has_parallel_segments(&sq).unwrap());
        let three = PointSet::new(4, vec![int(4, 0), int(4, 1), i]).unwrap();
        assert_eq!(find_parallelogram(&three), None);
        assert_eq!(has_parallel_segments(&three), Err(Error::TooFewPoints { needed: 4, got: 3 }));
    }

    #[test]
    fn scalene_triangle_with_circumcenter_has_no_parallel_segments() {
        // triangle 0, 4, 1+3i has circumcenter 2 + i
        let pts = vec![int(4, 0), int(4, 4), gauss(1, 1, 3, 1), gauss(2, 1, 1, 1)];
        let set = PointSet::new(4, pts).unwrap();
        for p in set.points() {
            let d = (p - &gauss(2, 1, 1, 1)).abs_squared();
            assert!(d.is_zero() || d == CycloNum::from_integer(4, 5).unwrap());
        }
        assert!(!has_parallel_segments(&set).unwrap());
    }
}
