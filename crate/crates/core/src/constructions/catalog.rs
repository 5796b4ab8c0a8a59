//! Explicit initial sets.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::report::{resample_build, Candidate, RecipeRecord};
use super::sampler::Sampler;
use super::shapes::{doubled_angle_root, is_scalene, isosceles_triangle, reduce_angle, regular_polygon, scalene_triangle};
use super::BuildReport;
use crate::error::{Error, Result};
use crate::exactnum::{lcm_u32, CycloNum, MAX_ORDER};
use crate::geom::{max_collinear, PointSet};
use crate::patterns::{is_similar, Pattern};
use crate::verify::{BoundKind, LedgerEntry, Value};

fn int(m: u32, v: i64) -> CycloNum {
    CycloNum::from_integer(m, v).expect("valid conductor")
}

fn root(m: u32, e: i64) -> CycloNum {
    CycloNum::root_of_unity(m, e).expect("valid conductor")
}

fn scaled(points: &[CycloNum], alpha: &CycloNum, beta: &CycloNum) -> Vec<CycloNum> {
    points.iter().map(|p| &(alpha * p) + beta).collect()
}

fn reject(why: impl Into<alloc::string::String>) -> Error {
    Error::CheckFailed(why.into())
}

/// Records that each listed triple is a similar copy of `pattern`.
fn check_witnesses(c: &mut Candidate, pattern: &Pattern, witnesses: &[(&str, [CycloNum; 3])]) -> Result<()> {
    for (label, tri) in witnesses {
        let inside = tri.iter().all(|p| c.output.contains(p));
        let ok = inside && is_similar(pattern, tri)?;
        c.push(LedgerEntry::exact(
            format!("witness.{label}"),
            format!("{label} is a similar copy inside the set"),
            Value::Flag(true),
            Value::Flag(ok),
        ));
    }
    Ok(())
}

/// The union of the images of `P` under the similarities `f_p` with
/// `p₁ ↦ z₀` and `p₂ ↦ p`, for every `p ∈ P`: `k² - k + 1` points and at
/// least `2k - 1` copies of `P`.
pub fn theorem3_generic(pattern: &Pattern, m: usize, sampler: &mut Sampler) -> Result<BuildReport> {
    let k = pattern.len();
    if max_collinear(pattern.base())? >= m {
        return Err(Error::Precondition(format!("pattern has {m} points on a line")));
    }
    let order = lcm_u32(pattern.order(), 4);
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    let p = pattern.lift(order)?;
    let (i1, i2) = p.anchors();
    let (p1, p2) = (p.base()[i1].clone(), p.base()[i2].clone());
    let inv = (&p1 - &p2).inverse()?;
    let seed = sampler.seed();
    resample_build(sampler, |s, attempt| {
        let z0 = s.param("z0", order, attempt)?;
        let mut pts = Vec::with_capacity(k * k);
        for q in p.base() {
            let a = &(&z0.value - q) * &inv;
            let b = &(&(q * &p1) - &(&z0.value * &p2)) * &inv;
            pts.extend(scaled(p.base().points(), &a, &b));
        }
        let output = PointSet::from_union(order, pts)?;
        let record = RecipeRecord::new("theorem3_generic").param("k", k).param("m", m).param("z0", &z0.value);
        let mut c = Candidate::new(record, output, p.clone());
        c.params.push(z0);
        let size = (k * k - k + 1) as u64;
        c.check_size(size);
        let mc = c.check_collinear(BoundKind::Upper, m - 1)?;
        c.finish(size, BoundKind::Lower, BigInt::from(2 * k - 1), mc, seed)
    })
}

fn scalene_param(s: &mut Sampler, attempt: u32) -> Result<super::GenericParam> {
    let z = s.param("z", 4, attempt)?;
    if !is_scalene(&z.value) {
        return Err(reject("triangle {0, 1, z} is not scalene"));
    }
    Ok(z)
}

/// `{0, 1, z, w, wz}` with `w = z - 1 + 1/z`: four copies of `T = {0, 1, z}`.
pub fn scalene5(sampler: &mut Sampler) -> Result<BuildReport> {
    let seed = sampler.seed();
    resample_build(sampler, |s, attempt| {
        let z = scalene_param(s, attempt)?;
        let mut r = scalene5_with(&z.value)?;
        r.seed = seed;
        r.params.push(z);
        Ok(r)
    })
}

/// [`scalene5`] for a given `z` in `Q(i)`; no resampling.
pub fn scalene5_with(z: &CycloNum) -> Result<BuildReport> {
    if z.order() != 4 || !is_scalene(z) {
        return Err(reject("triangle {0, 1, z} must be a scalene triangle over Q(i)"));
    }
    let zv = z.clone();
    let w = &(&zv - &int(4, 1)) + &zv.inverse()?;
    let wz = &w * &zv;
    let output = PointSet::from_union(4, vec![int(4, 0), int(4, 1), zv.clone(), w.clone(), wz.clone()])?;
    let pattern = scalene_triangle(&zv)?;
    let mut c = Candidate::new(RecipeRecord::new("scalene5").param("z", &zv), output, pattern.clone());
    c.check_size(5);
    let mc = c.check_collinear(BoundKind::Upper, 2)?;
    check_witnesses(
        &mut c,
        &pattern,
        &[
            ("(0,1,z)", [int(4, 0), int(4, 1), zv.clone()]),
            ("(z,w,1)", [zv.clone(), w.clone(), int(4, 1)]),
            ("(1,z,wz)", [int(4, 1), zv.clone(), wz.clone()]),
            ("(0,w,wz)", [int(4, 0), w.clone(), wz.clone()]),
        ],
    )?;
    c.finish(5, BoundKind::Exact, BigInt::from(4), mc, 0)
}

/// Six copies of the 5-point set plus two extra triangles: 14 points and at
/// least 26 copies of `T = {0, 1, z}`.
pub fn scalene14(sampler: &mut Sampler) -> Result<BuildReport> {
    let seed = sampler.seed();
    resample_build(sampler, |s, attempt| {
        let z = scalene_param(s, attempt)?;
        let mut r = scalene14_with(&z.value)?;
        r.seed = seed;
        r.params.push(z);
        Ok(r)
    })
}

/// [`scalene14`] for a given `z` in `Q(i)`; no resampling.
pub fn scalene14_with(z: &CycloNum) -> Result<BuildReport> {
    if z.order() != 4 || !is_scalene(z) {
        return Err(reject("triangle {0, 1, z} must be a scalene triangle over Q(i)"));
    }
    let zv = z.clone();
    let one = int(4, 1);
    let w = &(&zv - &one) + &zv.inverse()?;
    let wz = &w * &zv;
    let a1 = vec![int(4, 0), one.clone(), zv.clone(), w.clone(), wz.clone()];
    let mut a: Vec<CycloNum> = a1.clone();
    a.extend(a1.iter().map(|p| &zv * p));
    let z2 = &zv * &zv;
    let extra = (&w * &z2).try_div(&(&zv - &one))?;
    a.push(extra.clone());
    let rotated: Vec<CycloNum> = a.iter().map(|p| &wz - p).collect();
    a.extend(rotated);
    let output = PointSet::from_union(4, a)?;
    let pattern = scalene_triangle(&zv)?;
    let mut c = Candidate::new(RecipeRecord::new("scalene14").param("z", &zv), output, pattern.clone());
    c.check_size(14);
    let mc = c.check_collinear(BoundKind::Upper, 2)?;
    let one_minus_z = &one - &zv;
    check_witnesses(
        &mut c,
        &pattern,
        &[
            ("(w,wz(1-z),wz^2/(z-1))", [w.clone(), &wz * &one_minus_z, extra.clone()]),
            ("(wz^2,wz-w,wz/(1-z))", [&w * &z2, &wz - &w, wz.try_div(&one_minus_z)?]),
        ],
    )?;
    c.finish(14, BoundKind::Lower, BigInt::from(26), mc, 0)
}

/// The two 8-point constructions for the isosceles triangle with base
/// angles `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoscelesVariant {
    /// `B = {0, 1, u, 1+u, (2u+1)/(u+1)}`.
    A,
    /// `B = {0, 1, u, u/(u+1), 1 - 1/(u+1)²}`.
    B,
}

impl core::str::FromStr for IsoscelesVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<IsoscelesVariant> {
        match s {
            "a" | "A" => Ok(IsoscelesVariant::A),
            "b" | "B" => Ok(IsoscelesVariant::B),
            _ => Err(Error::Parse(format!("unknown isosceles variant {s:?} (expected a or b)"))),
        }
    }
}

impl core::fmt::Display for IsoscelesVariant {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            IsoscelesVariant::A => "a",
            IsoscelesVariant::B => "b",
        })
    }
}

/// `A = B ∪ conj(B)`: 8 points and 9 copies of `T(α) = {0, 1, -u}` where
/// `u = e^{2αi}` and `α = num/den · π`.
pub fn isosceles8(variant: IsoscelesVariant, num: u32, den: u32) -> Result<BuildReport> {
    let (num, den) = reduce_angle(num, den)?;
    if 2 * num >= den {
        return Err(Error::InvalidParameter(format!("need 0 < α < π/2, got α = {num}π/{den}")));
    }
    match variant {
        IsoscelesVariant::A if (12 * num) % den == 0 => {
            return Err(Error::ExcludedAngle(format!(
                "variant a has collinear points at α = {num}π/{den} (a multiple of π/12); use variant b, or the \
                 regular-polygon subset bound for π/6, π/4 and π/3"
            )));
        }
        IsoscelesVariant::B if [(1, 6), (1, 4), (1, 3)].contains(&(num, den)) => {
            return Err(Error::ExcludedAngle(format!(
                "variant b has collinear points at α = {num}π/{den}; use the regular-polygon subset bound"
            )));
        }
        _ => {}
    }
    let m = den;
    let u = doubled_angle_root(num, den)?;
    let one = int(m, 1);
    let u1 = &u + &one;
    let b = match variant {
        IsoscelesVariant::A => {
            vec![int(m, 0), one.clone(), u.clone(), u1.clone(), (&(&u * &int(m, 2)) + &one).try_div(&u1)?]
        }
        IsoscelesVariant::B => {
            vec![int(m, 0), one.clone(), u.clone(), u.try_div(&u1)?, &one - &(&u1 * &u1).inverse()?]
        }
    };
    let mut pts = b.clone();
    pts.extend(b.iter().map(CycloNum::conj));
    let output = PointSet::from_union(m, pts)?;
    let pattern = isosceles_triangle(num, den)?;
    let record =
        RecipeRecord::new("isosceles8").param("variant", variant).param("alpha", format!("{num}/{den}"));
    let mut c = Candidate::new(record, output, pattern.clone());
    c.check_size(8);
    let mc = c.check_collinear(BoundKind::Upper, 2)?;
    if variant == IsoscelesVariant::A {
        let u_inv = u.inverse()?;
        check_witnesses(
            &mut c,
            &pattern,
            &[("(0,1,1+u)", [int(m, 0), one.clone(), u1.clone()]), ("(1/u,1,u)", [u_inv, one.clone(), u.clone()])],
        )?;
    }
    c.finish(8, BoundKind::Exact, BigInt::from(9), mc, 0)
}

/// `A = B ∪ ωB ∪ ω²B` with `B = {1, -z} ∪ (-1 + z{1, ω, ω²})`: 15 points and
/// exactly 29 equilateral triangles.
pub fn equilateral15(sampler: &mut Sampler) -> Result<BuildReport> {
    const M: u32 = 12;
    let seed = sampler.seed();
    let omega = root(M, 4);
    let tri = [int(M, 1), omega.clone(), &omega * &omega];
    let pattern = regular_polygon(3)?.lift(M)?;
    resample_build(sampler, |s, attempt| {
        let z = s.param("z", M, attempt)?;
        let mut b = vec![int(M, 1), -&z.value];
        b.extend(scaled(&tri, &z.value, &int(M, -1)));
        let mut pts = Vec::with_capacity(15);
        for r in &tri {
            pts.extend(b.iter().map(|p| r * p));
        }
        let output = PointSet::from_union(M, pts)?;
        let mut c = Candidate::new(RecipeRecord::new("equilateral15").param("z", &z.value), output, pattern.clone());
        c.params.push(z);
        c.check_size(15);
        let mc = c.check_collinear(BoundKind::Upper, 2)?;
        c.finish(15, BoundKind::Exact, BigInt::from(29), mc, seed)
    })
}

/// `(k/2)(k² - 2k + 4)`.
pub fn even_kgon_size(k: u64) -> u64 {
    k / 2 * (k * k - 2 * k + 4)
}

/// `(5k² - 6k + 4)/2`.
pub fn even_kgon_copies(k: u64) -> u64 {
    (5 * k * k - 6 * k + 4) / 2
}

/// Rotations of `{2} ∪ B₁ ∪ … ∪ B_{k-1}`, where the `B_j` are the copies of
/// `P = 1 + ω + z{ω^j}` produced by the one-point construction with
/// `z₀ = 2`.
pub fn even_kgon(k: u32, sampler: &mut Sampler) -> Result<BuildReport> {
    if k % 2 != 0 {
        return Err(Error::InvalidParameter(format!("k must be even, got {k}")));
    }
    if k < 4 {
        return Err(Error::InvalidParameter(format!("k must be at least 4, got {k}")));
    }
    let m = lcm_u32(4, k);
    if m > MAX_ORDER {
        return Err(Error::UnsupportedOrder(m));
    }
    let seed = sampler.seed();
    let step = (m / k) as i64;
    let omega = root(m, step);
    let powers: Vec<CycloNum> = (0..k as i64).map(|j| root(m, j * step)).collect();
    let one = int(m, 1);
    let two = int(m, 2);
    let inv = (&one - &omega).inverse()?;
    let shift = &one + &omega;
    let pattern = regular_polygon(k)?.lift(m)?;
    resample_build(sampler, |s, attempt| {
        let z = s.param("z", m, attempt)?;
        let p = scaled(&powers, &z.value, &shift);
        let mut a1 = vec![two.clone()];
        for wj in &powers[1..] {
            let alpha = &(&one - wj) * &inv;
            let beta = &(&two * &(wj - &omega)) * &inv;
            a1.extend(scaled(&p, &alpha, &beta));
        }
        let mut pts = Vec::with_capacity(a1.len() * k as usize);
        for wl in &powers {
            pts.extend(a1.iter().map(|q| wl * q));
        }
        let output = PointSet::from_union(m, pts)?;
        let mut c = Candidate::new(RecipeRecord::new("even_kgon").param("k", k).param("z", &z.value), output, pattern.clone());
        c.params.push(z);
        if k > 10 {
            c.notes.push(format!("k = {k} > 10: the index no longer beats log(2k)/log k"));
        }
        let size = even_kgon_size(k as u64);
        c.check_size(size);
        let mc = c.check_collinear(BoundKind::Exact, 2)?;
        c.finish(size, BoundKind::Lower, BigInt::from(even_kgon_copies(k as u64)), mc, seed)
    })
}

/// 120 points from rotations and reflections of three small sets, each
/// point on exactly 11 regular pentagons.
pub fn pentagon120(sampler: &mut Sampler) -> Result<BuildReport> {
    const M: u32 = 20;
    let seed = sampler.seed();
    let omega = root(M, 4);
    let powers: Vec<CycloNum> = (0..5).map(|j| root(M, 4 * j)).collect();
    let one = int(M, 1);
    let sqrt5 = &one + &(&int(M, 2) * &(&powers[1] + &powers[4]));
    let half = |x: &CycloNum| x.scale(&crate::Rational::new(1.into(), 2.into()));
    let shift1 = half(&(&sqrt5 + &int(M, 3)));
    let phi = half(&(&sqrt5 + &one));
    let w2m1 = &(&omega * &omega) - &one;
    let pattern = regular_polygon(5)?.lift(M)?;
    resample_build(sampler, |s, attempt| {
        let z = s.param("z", M, attempt)?;
        let p = scaled(&powers, &z.value, &int(M, 0));
        let a1 = scaled(&p, &one, &shift1);
        let a2 = scaled(&p, &-&phi, &phi);
        let a3 = vec![&w2m1 * &z.value, &w2m1 * &(&omega + &one)];
        let mut b: Vec<CycloNum> = Vec::with_capacity(24);
        for part in [&a1, &a2, &a3] {
            b.extend(part.iter().cloned());
            b.extend(part.iter().map(|q| -q));
        }
        let mut pts = Vec::with_capacity(120);
        for wk in &powers {
            pts.extend(b.iter().map(|q| wk * q));
        }
        let output = PointSet::from_union(M, pts)?;
        let mut c = Candidate::new(RecipeRecord::new("pentagon120").param("z", &z.value), output, pattern.clone());
        c.params.push(z);
        c.count_options.incidence = true;
        c.check_size(120);
        let mc = c.check_collinear(BoundKind::Upper, 2)?;
        c.finish_with(120, BoundKind::Lower, BigInt::from(264), mc, seed, |count, ledger| {
            let inc = count.incidence.as_deref().unwrap_or(&[]);
            let lo = inc.iter().copied().min().unwrap_or(0);
            let hi = inc.iter().copied().max().unwrap_or(0);
            ledger.push(LedgerEntry::exact("incidence.min", "fewest pentagons through a point", Value::int(11u64), Value::int(lo)));
            ledger.push(LedgerEntry::exact("incidence.max", "most pentagons through a point", Value::int(11u64), Value::int(hi)));
        })
    })
}

/// `(3m² - 6m + 4)/4` for even `m`.
pub fn hex_cluster_size(m: u64) -> u64 {
    (3 * m * m - 6 * m + 4) / 4
}

/// `(7m⁴ - 28m³ + 36m² - 16m)/64` for even `m`.
pub fn hex_cluster_triangles(m: u64) -> u64 {
    (7 * m.pow(4) + 36 * m * m - 28 * m.pow(3) - 16 * m) / 64
}

/// Figure-derived targets `(m, |A|, S)` for odd `m`.
pub const ODD_HEX_TARGETS: [(u32, u64, u64); 3] = [(5, 14, 34), (7, 30, 166), (9, 52, 516)];

/// Lattice points `a + bζ₆` with `max(|a|, |b|, |a+b|) <= side`.
fn hexagon_points(side: i64) -> Vec<CycloNum> {
    let z6 = root(12, 2);
    let mut pts = Vec::new();
    for a in -side..=side {
        for b in -side..=side {
            if (a + b).abs() <= side {
                pts.push(&int(12, a) + &(&int(12, b) * &z6));
            }
        }
    }
    pts
}

/// Eisenstein-lattice points in a hexagon of side `m/2 - 1`: at most `m - 1`
/// on a line and the closed-form number of equilateral triangles.
pub fn hex_lattice_cluster(m: u32) -> Result<BuildReport> {
    if m < 4 {
        return Err(Error::InvalidParameter(format!("m must be at least 4, got {m}")));
    }
    if m % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "m = {m} is odd: the closed form needs even m (see hex_lattice_candidate)"
        )));
    }
    let output = PointSet::new(12, hexagon_points((m / 2 - 1) as i64))?;
    let pattern = regular_polygon(3)?.lift(12)?;
    let mut c = Candidate::new(RecipeRecord::new("hex_lattice_cluster").param("m", m), output, pattern);
    let size = hex_cluster_size(m as u64);
    c.check_size(size);
    let mc = c.check_collinear(BoundKind::Exact, m as usize - 1)?;
    c.finish(size, BoundKind::Exact, BigInt::from(hex_cluster_triangles(m as u64)), mc, 0)
}

/// Candidate cluster for odd `m`: a hexagon of side `(m-1)/2` with three
/// alternate corners removed, so every line keeps at most `m - 1` points.
/// The figure's targets are reported in the notes but not enforced.
pub fn hex_lattice_candidate(m: u32) -> Result<BuildReport> {
    if m < 5 || m % 2 == 0 {
        return Err(Error::InvalidParameter(format!("candidate clusters need odd m >= 5, got {m}")));
    }
    let side = ((m - 1) / 2) as i64;
    let corners: Vec<CycloNum> = [0i64, 4, 8].iter().map(|&e| &int(12, side) * &root(12, e)).collect();
    let pts: Vec<CycloNum> = hexagon_points(side).into_iter().filter(|p| !corners.contains(p)).collect();
    let n = pts.len() as u64;
    let output = PointSet::new(12, pts)?;
    let pattern = regular_polygon(3)?.lift(12)?;
    let mut c = Candidate::new(RecipeRecord::new("hex_lattice_candidate").param("m", m), output, pattern);
    c.check_size(n);
    let mc = c.check_collinear(BoundKind::Upper, m as usize - 1)?;
    let mut report = c.finish(n, BoundKind::Lower, BigInt::from(0), mc, 0)?;
    if let Some(&(_, size, copies)) = ODD_HEX_TARGETS.iter().find(|t| t.0 == m) {
        let target = libm::log((3 * copies + size) as f64) / libm::log(size as f64);
        let met = report.index() >= target;
        report.notes.push(format!(
            "figure target |A| = {size}, S = {copies}, index {target:.4}; candidate |A| = {n}, S = {}, index {:.4}; {}",
            report.copies(),
            report.index(),
            if met { "meets the target" } else { "below the target" }
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn closed_forms() {
        assert_eq!([4, 6, 8, 10].map(even_kgon_size), [24, 84, 208, 420]);
        assert_eq!([4, 6, 8, 10].map(even_kgon_copies), [30, 74, 138, 222]);
        assert_eq!([4, 6, 8].map(hex_cluster_size), [7, 19, 37]);
        assert_eq!([4, 6, 8].map(hex_cluster_triangles), [8, 66, 258]);
    }

    #[test]
    fn scalene5_builds() {
        let r = scalene5(&mut Sampler::new(3)).unwrap();
        assert_eq!((r.size(), r.copies(), r.max_collinear), (5, 4, 2));
        assert!(r.checks.all_passed());
    }

    #[test]
    fn isosceles_exclusions() {
        assert!(matches!(isosceles8(IsoscelesVariant::A, 1, 6), Err(Error::ExcludedAngle(_))));
        assert!(matches!(isosceles8(IsoscelesVariant::B, 1, 4), Err(Error::ExcludedAngle(_))));
        assert!(matches!(isosceles8(IsoscelesVariant::A, 3, 5), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn hex_m4() {
        let r = hex_lattice_cluster(4).unwrap();
        assert_eq!((r.size(), r.copies(), r.max_collinear), (7, 8, 3));
        assert!(hex_lattice_cluster(5).is_err());
    }

    #[test]
    fn even_kgon_rejects_odd_k() {
        let e = even_kgon(5, &mut Sampler::new(0)).unwrap_err();
        assert!(e.to_string().contains("k must be even"));
    }
}
