//! Fixed-point evaluation of the canonical embedding `ζ_M ↦ e^{2πi/M}`.
//!
//! Only used for drawing and for logarithms; no equality or sign decision
//! ever goes through here.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CycloNum;

/// `re + im·i` with both parts scaled by `2^scale_bits`; the larger part
/// carries about `precision` significant bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexApprox {
    pub re: BigInt,
    pub im: BigInt,
    pub scale_bits: i64,
}

impl ComplexApprox {
    pub fn re_f64(&self) -> f64 {
        scaled_to_f64(&self.re, self.scale_bits)
    }

    pub fn im_f64(&self) -> f64 {
        scaled_to_f64(&self.im, self.scale_bits)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re_f64(), self.im_f64())
    }
}

fn scaled_to_f64(v: &BigInt, bits: i64) -> f64 {
    // keep roughly 64 significant bits before converting
    let shift = v.bits().saturating_sub(64);
    let head = v >> shift;
    let f = head.to_f64().unwrap_or(0.0);
    libm::ldexp(f, (shift as i64 - bits) as i32)
}

fn atan_inv(x: u32, one: &BigInt) -> BigInt {
    // atan(1/x) = Σ (-1)^k / ((2k+1) x^{2k+1})
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = one / BigInt::from(x);
    let mut sum = power.clone();
    let mut k: u32 = 1;
    loop {
        power = &power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn pi_fixed(one: &BigInt) -> BigInt {
    atan_inv(5, one) * 16 - atan_inv(239, one) * 4
}

/// `(cos θ, sin θ)` in fixed point for `|θ| <= π`.
fn cos_sin(theta: &BigInt, one: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut term = theta.clone();
    let mut n: u32 = 1;
    loop {
        // term_{n+1} = term_n · θ / (n+1)
        term = (&term * theta >> bits) / BigInt::from(n + 1);
        n += 1;
        if term.is_zero() {
            break;
        }
        match n % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
    }
    (cos, sin)
}

impl CycloNum {
    /// Complex approximation with relative error below `2^{1-precision}`.
    ///
    /// Working precision is raised until the computed magnitude clears the
    /// absolute error bound, so values near zero still get full relative
    /// accuracy.
    pub fn to_float(&self, precision: u32) -> ComplexApprox {
        let precision = core::cmp::max(precision, 53);
        if self.is_zero() {
            return ComplexApprox { re: BigInt::zero(), im: BigInt::zero(), scale_bits: precision as i64 };
        }
        let m = self.order() as i64;
        let coeff_bits: u64 = self.numerators().iter().map(|c| c.bits()).max().unwrap_or(0);
        let mut guard = 32 + coeff_bits as u32;
        loop {
            let bits = precision + guard;
            let one = BigInt::one() << bits;
            let pi = pi_fixed(&one);
            let mut re = BigInt::zero();
            let mut im = BigInt::zero();
            for (i, c) in self.numerators().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut e = i as i64 % m;
                if 2 * e > m {
                    e -= m;
                }
                let theta = (&pi * BigInt::from(2 * e)) / BigInt::from(m);
                let (cs, sn) = cos_sin(&theta, &one, bits);
                re += c * cs;
                im += c * sn;
            }
            let den = self.denominator();
            let re = re / den;
            let im = im / den;
            // each term carries a few ulps; total bounded by (terms + 1) * 64 ulps
            let terms: u64 = self.numerators().iter().map(|c| c.abs()).sum::<BigInt>().bits() + 8;
            let magnitude = core::cmp::max(re.abs(), im.abs());
            if magnitude.bits() > terms + precision as u64 + 2 {
                // keep precision + 4 significant bits of the larger part
                let shift = magnitude.bits() - precision as u64 - 4;
                return ComplexApprox { re: re >> shift, im: im >> shift, scale_bits: bits as i64 - shift as i64 };
            }
            guard *= 2;
        }
    }

    /// `(re, im)` as `f64`.
    pub fn to_f64(&self) -> (f64, f64) {
        self.to_float(64).to_f64()
    }
}

/// `f64` coordinates for a batch of points.
pub fn to_f64_points(points: &[CycloNum], precision: u32) -> Vec<(f64, f64)> {
    points.iter().map(|p| p.to_float(precision).to_f64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    #[test]
    fn i_is_unit_imaginary() {
        let (re, im) = CycloNum::root_of_unity(4, 1).unwrap().to_f64();
        assert!(re.abs() < 1e-18);
        assert!((im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cube_root_of_unity() {
        let (re, im) = CycloNum::root_of_unity(3, 1).unwrap().to_f64();
        assert!((re + 0.5).abs() < 1e-15);
        assert!((im - 0.866_025_403_784_438_6).abs() < 1e-15);
    }

    #[test]
    fn sqrt_five() {
        let s = &CycloNum::root_of_unity(5, 1).unwrap() + &CycloNum::root_of_unity(5, 4).unwrap();
        let two = Rational::from_integer(2.into());
        let r5 = &CycloNum::one(5).unwrap() + &s.scale(&two);
        let (re, im) = r5.to_f64();
        assert!((re - 2.236_067_977_499_79).abs() < 1e-14);
        assert!(im.abs() < 1e-15);
        assert_eq!(&r5 * &r5, CycloNum::from_integer(5, 5).unwrap());
    }

    #[test]
    fn high_precision_pi_over_four_diagonal() {
        // ζ_8 = (1 + i)/√2; re² at 200 bits should be 1/2 to ~1e-60
        let a = CycloNum::root_of_unity(8, 1).unwrap().to_float(200);
        let re = &a.re;
        let sq = (re * re) >> a.scale_bits as u32;
        let half = BigInt::one() << (a.scale_bits as u32 - 1);
        assert!((sq - half).abs().bits() < 10);
    }

    #[test]
    fn large_values() {
        let big = CycloNum::from_integer(4, 1 << 62).unwrap();
        let (re, _) = big.pow(3).to_f64();
        assert!((re / libm::pow(2.0, 186.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tiny_values_keep_relative_accuracy() {
        // φ^-40 ≈ 4.4e-9 from coefficients around 1e8
        let z5 = |e| CycloNum::root_of_unity(5, e).unwrap();
        let phi = -(&z5(2) + &z5(3));
        let tiny = phi.inverse().unwrap().pow(40);
        let (re, im) = tiny.to_f64();
        let expected = libm::pow(1.618_033_988_749_895, -40.0);
        assert!((re / expected - 1.0).abs() < 1e-13, "{re} vs {expected}");
        assert!(im.abs() < 1e-20);
    }
}
