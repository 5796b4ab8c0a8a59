//! Predicates and counts against slow integer oracles. Points are drawn from
//! the Gaussian integers `a + bi` and the Eisenstein integers `a + bω`, where
//! all the geometry reduces to exact `i64` arithmetic on coordinates.

use num_bigint::BigInt;
use patternforge_core::exactnum::{CycloNum, Rational};
use patternforge_core::geom::{find_parallelogram_indices, has_parallel_segments, max_collinear, PointSet};
use patternforge_core::patterns::{brute_force_count, count_similar, Pattern};
use proptest::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ring {
    Gaussian,
    Eisenstein,
}

type Pt = (i64, i64);

impl Ring {
    fn order(self) -> u32 {
        match self {
            Ring::Gaussian => 4,
            Ring::Eisenstein => 3,
        }
    }

    fn mul(self, (a, b): Pt, (c, d): Pt) -> Pt {
        match self {
            Ring::Gaussian => (a * c - b * d, a * d + b * c),
            // ω² = -1 - ω
            Ring::Eisenstein => (a * c - b * d, a * d + b * c - b * d),
        }
    }

    fn embed(self, (a, b): Pt) -> CycloNum {
        let m = self.order();
        let a = CycloNum::from_integer(m, a).unwrap();
        let b = CycloNum::from_integer(m, b).unwrap();
        &a + &(&b * &CycloNum::root_of_unity(m, 1).unwrap())
    }
}

fn sub((a, b): Pt, (c, d): Pt) -> Pt {
    (a - c, b - d)
}

fn add((a, b): Pt, (c, d): Pt) -> Pt {
    (a + c, b + d)
}

/// Both lattices are affine images of Z², so collinearity is the Z² cross
/// product.
fn cross((a, b): Pt, (c, d): Pt) -> i64 {
    a * d - b * c
}

fn oracle_max_collinear(pts: &[Pt]) -> usize {
    let n = pts.len();
    if n <= 2 {
        return n;
    }
    let mut best = 2;
    for i in 0..n {
        for j in i + 1..n {
            let d = sub(pts[j], pts[i]);
            let on = (0..n).filter(|&k| cross(d, sub(pts[k], pts[i])) == 0).count();
            best = best.max(on);
        }
    }
    best
}

fn oracle_has_parallelogram(pts: &[Pt]) -> bool {
    let n = pts.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct && add(pts[a], pts[c]) == add(pts[b], pts[d]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn oracle_parallel_segments(pts: &[Pt]) -> bool {
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                for d in c + 1..n {
                    let disjoint = a != c && a != d && b != c && b != d;
                    if disjoint && cross(sub(pts[b], pts[a]), sub(pts[d], pts[c])) == 0 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Ordered images: pairs `(x, y)` such that the similarity with `p₁ ↦ x`,
/// `p₂ ↦ y` sends every pattern point into the set. The map `f(p)` is the
/// point `a` with `(a - x)(p₂ - p₁) = (y - x)(p - p₁)`.
fn oracle_ordered_images(ring: Ring, pattern: &[Pt], set: &[Pt]) -> usize {
    let (p1, p2) = (pattern[0], pattern[1]);
    let base = sub(p2, p1);
    let mut count = 0;
    for &x in set {
        for &y in set {
            if x == y {
                continue;
            }
            let scale = sub(y, x);
            let all = pattern
                .iter()
                .all(|&p| set.iter().any(|&a| ring.mul(sub(a, x), base) == ring.mul(scale, sub(p, p1))));
            if all {
                count += 1;
            }
        }
    }
    count
}

fn oracle_copies(ring: Ring, pattern: &[Pt], set: &[Pt]) -> u64 {
    let sym = oracle_ordered_images(ring, pattern, pattern);
    let n = oracle_ordered_images(ring, pattern, set);
    assert_eq!(n % sym, 0);
    (n / sym) as u64
}

fn to_set(ring: Ring, pts: &[Pt]) -> PointSet {
    PointSet::new(ring.order(), pts.iter().map(|&p| ring.embed(p)).collect()).unwrap()
}

fn distinct(pts: Vec<Pt>) -> Vec<Pt> {
    let mut out: Vec<Pt> = Vec::new();
    for p in pts {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Gaussian), Just(Ring::Eisenstein)]
}

fn lattice_set(r: i64, max: usize) -> impl Strategy<Value = Vec<Pt>> {
    prop::collection::vec((-r..=r, -r..=r), 1..=max).prop_map(distinct)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn max_collinear_matches(ring in ring(), pts in lattice_set(3, 14)) {
        let set = to_set(ring, &pts);
        prop_assert_eq!(max_collinear(&set).unwrap(), oracle_max_collinear(&pts));
    }

    #[test]
    fn parallelograms_match(ring in ring(), pts in lattice_set(4, 9)) {
        let set = to_set(ring, &pts);
        prop_assert_eq!(find_parallelogram_indices(&set).is_some(), oracle_has_parallelogram(&pts));
        if pts.len() >= 4 {
            prop_assert_eq!(has_parallel_segments(&set).unwrap(), oracle_parallel_segments(&pts));
        }
    }

    #[test]
    fn found_parallelogram_is_genuine(ring in ring(), pts in lattice_set(2, 10)) {
        let set = to_set(ring, &pts);
        if let Some([a, b, c, d]) = find_parallelogram_indices(&set) {
            prop_assert_eq!(&set[a] + &set[c], &set[b] + &set[d]);
            let mut idx = vec![a, b, c, d];
            idx.sort();
            idx.dedup();
            prop_assert_eq!(idx.len(), 4);
        }
    }

    #[test]
    fn counts_match_integer_oracle(
        ring in ring(),
        pattern in lattice_set(2, 4),
        pts in lattice_set(3, 16),
    ) {
        prop_assume!(pattern.len() >= 3 && oracle_max_collinear(&pattern) < pattern.len());
        let p = Pattern::from_points(ring.order(), pattern.iter().map(|&q| ring.embed(q)).collect()).unwrap();
        let set = to_set(ring, &pts);
        let fast = count_similar(&p, &set).unwrap();
        prop_assert_eq!(fast.copies, oracle_copies(ring, &pattern, &pts));
        prop_assert_eq!(fast.copies, brute_force_count(&p, &set).unwrap());
    }
}

#[test]
fn hexagonal_cluster_triangles() {
    // side-2 hexagon of the Eisenstein lattice
    let mut pts = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            if (a - b).abs() <= 2 {
                pts.push((a, b));
            }
        }
    }
    assert_eq!(pts.len(), 19);
    let tri = [(1, 0), (0, 1), (-1, -1)];
    assert_eq!(oracle_copies(Ring::Eisenstein, &tri, &pts), 66);
    let p = Pattern::from_points(3, tri.iter().map(|&q| Ring::Eisenstein.embed(q)).collect()).unwrap();
    assert_eq!(count_similar(&p, &to_set(Ring::Eisenstein, &pts)).unwrap().copies, 66);
}

#[test]
fn rational_points_scale_out() {
    // halving every coordinate changes nothing
    let pts: Vec<Pt> = vec![(0, 0), (2, 0), (0, 2), (2, 2), (4, 2), (2, 4)];
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let scaled: Vec<CycloNum> = pts.iter().map(|&q| Ring::Gaussian.embed(q).scale(&half)).collect();
    let a = PointSet::new(4, scaled).unwrap();
    let b = to_set(Ring::Gaussian, &pts);
    let sq = Pattern::from_points(4, [(0, 0), (1, 0), (1, 1), (0, 1)].iter().map(|&q| Ring::Gaussian.embed(q)).collect()).unwrap();
    assert_eq!(count_similar(&sq, &a).unwrap().copies, count_similar(&sq, &b).unwrap().copies);
    assert_eq!(max_collinear(&a).unwrap(), oracle_max_collinear(&pts));
}
