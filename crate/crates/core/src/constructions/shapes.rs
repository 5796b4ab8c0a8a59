//! Standard patterns.

use alloc::format;
use alloc::vec::Vec;

use super::sampler::Sampler;
use crate::error::{Error, Result};
use crate::exactnum::{CycloNum, MAX_ORDER};
use crate::geom::{max_collinear, PointSet};
use crate::patterns::Pattern;

/// `{1, ω, ω²}` over `Q(ζ₃)`.
pub fn equilateral_triangle() -> Pattern {
    regular_polygon(3).expect("valid")
}

/// `{ζ_k^j : 0 ≤ j < k}` over `Q(ζ_k)`.
pub fn regular_polygon(k: u32) -> Result<Pattern> {
    if !(3..=MAX_ORDER).contains(&k) {
        return Err(Error::InvalidParameter(format!("regular polygon needs 3 <= k <= {MAX_ORDER}, got {k}")));
    }
    let pts = (0..k).map(|j| CycloNum::root_of_unity(k, j as i64)).collect::<Result<Vec<_>>>()?;
    Pattern::from_points(k, pts)
}

pub fn square() -> Pattern {
    regular_polygon(4).expect("valid")
}

/// Reduced `(num, den)` for the angle `num/den · π`.
pub(crate) fn reduce_angle(num: u32, den: u32) -> Result<(u32, u32)> {
    if num == 0 || den == 0 {
        return Err(Error::InvalidParameter(format!("angle {num}/{den}·π must be positive")));
    }
    let g = num_integer::Integer::gcd(&num, &den);
    Ok((num / g, den / g))
}

/// `e^{2αi}` for `α = num/den · π`, in `Q(ζ_den)`.
pub(crate) fn doubled_angle_root(num: u32, den: u32) -> Result<CycloNum> {
    if den > MAX_ORDER {
        return Err(Error::UnsupportedOrder(den));
    }
    CycloNum::root_of_unity(den, num as i64)
}

/// Isosceles triangle `{0, 1, -u}` with `u = e^{2αi}` and `α = num/den · π`,
/// `0 < α < π/2`: base angles `α`, apex at 0.
pub fn isosceles_triangle(num: u32, den: u32) -> Result<Pattern> {
    let (num, den) = reduce_angle(num, den)?;
    if 2 * num >= den {
        return Err(Error::InvalidParameter(format!("need 0 < α < π/2, got {num}π/{den}")));
    }
    let u = doubled_angle_root(num, den)?;
    Pattern::from_points(den, alloc::vec![CycloNum::zero(den)?, CycloNum::one(den)?, -u])
}

/// `{0, 1, z}`; `z` must be non-real.
pub fn scalene_triangle(z: &CycloNum) -> Result<Pattern> {
    if z.is_real() {
        return Err(Error::InvalidParameter("triangle {0, 1, z} needs z off the real line".into()));
    }
    let m = z.order();
    Pattern::from_points(m, alloc::vec![CycloNum::zero(m)?, CycloNum::one(m)?, z.clone()])
}

/// Whether `{0, 1, z}` has three different side lengths.
pub fn is_scalene(z: &CycloNum) -> bool {
    let one = CycloNum::one(z.order()).expect("valid");
    let a = z.abs_squared();
    let b = (z - &one).abs_squared();
    !z.is_real() && a != one && b != one && a != b
}

/// `k` Gaussian-rational points with fewer than `m` on a line, over `Q(ζ₄)`.
pub fn random_pattern(k: usize, m: usize, sampler: &mut Sampler) -> Result<Pattern> {
    if k < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: k });
    }
    let (p, _) = super::report::resample(sampler, |s, _| {
        let pts = (0..k).map(|_| s.gaussian(4)).collect::<Result<Vec<_>>>()?;
        let set = PointSet::new(4, pts)?;
        if max_collinear(&set)? >= m {
            return Err(Error::CheckFailed(format!("random pattern has {m} points on a line")));
        }
        Pattern::new(set)
    })?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    #[test]
    fn symmetry_orders_of_standard_shapes() {
        assert_eq!(equilateral_triangle().sym_order(), 3);
        assert_eq!(square().sym_order(), 4);
        assert_eq!(regular_polygon(10).unwrap().sym_order(), 10);
        assert_eq!(isosceles_triangle(1, 5).unwrap().sym_order(), 1);
    }

    #[test]
    fn isosceles_right_triangle_is_half_a_square() {
        let t = isosceles_triangle(1, 4).unwrap();
        // -u = -i
        assert!(t.base().contains(&-CycloNum::root_of_unity(4, 1).unwrap()));
        assert!(isosceles_triangle(1, 2).is_err());
        assert_eq!(reduce_angle(2, 10).unwrap(), (1, 5));
    }

    #[test]
    fn scalene_detection() {
        let z = CycloNum::gaussian(4, &Rational::new(1.into(), 2.into()), &Rational::new(1.into(), 1.into())).unwrap();
        // |z| = |z - 1|
        assert!(!is_scalene(&z));
        let z = CycloNum::gaussian(4, &Rational::new(1.into(), 3.into()), &Rational::new(1.into(), 1.into())).unwrap();
        assert!(is_scalene(&z));
    }
}
