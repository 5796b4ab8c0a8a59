use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{lcm_u32, tables, totient, FieldTables};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// An element of the cyclotomic field `Q(ζ_M)` in the power basis
/// `{1, ζ, …, ζ^{φ(M)-1}}`.
///
/// Stored as an integer numerator vector over one positive common
/// denominator with `gcd(content, den) = 1`, so two values are equal
/// exactly when their representations are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloNum {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl CycloNum {
    pub fn zero(order: u32) -> Result<CycloNum> {
        let t = tables(order)?;
        Ok(CycloNum { order, num: vec![BigInt::zero(); t.degree], den: BigInt::one() })
    }

    pub fn one(order: u32) -> Result<CycloNum> {
        CycloNum::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, value: i64) -> Result<CycloNum> {
        let mut z = CycloNum::zero(order)?;
        z.num[0] = BigInt::from(value);
        Ok(z)
    }

    pub fn from_rational(order: u32, value: &Rational) -> Result<CycloNum> {
        let mut z = CycloNum::zero(order)?;
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.normalize();
        Ok(z)
    }

    /// `ζ_M^e`.
    pub fn root_of_unity(order: u32, e: i64) -> Result<CycloNum> {
        let t = tables(order)?;
        Ok(CycloNum::from_small(t, t.power(e)))
    }

    /// `re + im·i`; needs `4 | order`.
    pub fn gaussian(order: u32, re: &Rational, im: &Rational) -> Result<CycloNum> {
        if order % 4 != 0 {
            return Err(Error::InvalidParameter(alloc::format!(
                "Gaussian rationals need a conductor divisible by 4, got {order}"
            )));
        }
        let i = CycloNum::root_of_unity(order, (order / 4) as i64)?;
        let re = CycloNum::from_rational(order, re)?;
        let im = CycloNum::from_rational(order, im)?;
        Ok(&re + &(&i * &im))
    }

    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Result<CycloNum> {
        let t = tables(order)?;
        if coeffs.len() != t.degree {
            return Err(Error::BadLength { expected: t.degree, got: coeffs.len() });
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut z = CycloNum { order, num, den };
        z.normalize();
        Ok(z)
    }

    fn from_small(t: &FieldTables, row: &[i64]) -> CycloNum {
        CycloNum { order: t.order, num: row.iter().map(|&c| BigInt::from(c)).collect(), den: BigInt::one() }
    }

    fn tables(&self) -> &'static FieldTables {
        // order was validated at construction
        tables(self.order).expect("validated conductor")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the value is the rational `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -core::mem::take(c);
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    fn check_order(&self, other: &CycloNum) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    /// One entry point for the four field operations.
    pub fn arith(&self, other: &CycloNum, op: ArithOp) -> Result<CycloNum> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
            ArithOp::Div => self.try_div(other),
        }
    }

    fn add_unchecked(&self, other: &CycloNum, subtract: bool) -> CycloNum {
        let num: Vec<BigInt> = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if subtract {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == other.den { self.den.clone() } else { &self.den * &other.den };
        let mut z = CycloNum { order: self.order, num, den };
        z.normalize();
        z
    }

    fn mul_unchecked(&self, other: &CycloNum) -> CycloNum {
        let t = self.tables();
        let d = t.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = prod[..d].to_vec();
        for (j, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (k, &r) in t.rows[j].iter().enumerate() {
                if r != 0 {
                    num[k] += c * r;
                }
            }
        }
        let mut z = CycloNum { order: self.order, num, den: &self.den * &other.den };
        z.normalize();
        z
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in `Q[x]`
    /// modulo the cyclotomic polynomial.
    pub fn inverse(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = self.tables();
        let modulus: Vec<Rational> = t.modulus.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
        let a: Vec<Rational> = self.coeffs();
        let (s, g) = ext_euclid_inverse(&a, &modulus);
        // g is a nonzero constant since Φ_M is irreducible
        let ginv = g.recip();
        let mut coeffs: Vec<Rational> = s.into_iter().map(|c| c * &ginv).collect();
        coeffs.resize(t.degree, Rational::zero());
        CycloNum::from_coeffs(self.order, &coeffs)
    }

    /// Image under the automorphism `ζ ↦ ζ^k` (`gcd(k, M) = 1`).
    pub fn galois(&self, k: i64) -> CycloNum {
        let t = self.tables();
        let mut num = vec![BigInt::zero(); t.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(t.power(k * i as i64)) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        let mut z = CycloNum { order: self.order, num, den: self.den.clone() };
        z.normalize();
        z
    }

    /// Complex conjugate: the automorphism `ζ ↦ ζ^{M-1}`.
    pub fn conj(&self) -> CycloNum {
        self.galois(self.order as i64 - 1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// The same value in `Q(ζ_{target})`, using `ζ_M = ζ_{target}^{target/M}`.
    pub fn lift_order(&self, target: u32) -> Result<CycloNum> {
        if target == 0 || target % self.order != 0 {
            return Err(Error::NotDivisible { from: self.order, to: target });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let t = tables(target)?;
        let step = (target / self.order) as i64;
        let mut num = vec![BigInt::zero(); t.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(t.power(step * i as i64)) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        let mut z = CycloNum { order: target, num, den: self.den.clone() };
        z.normalize();
        Ok(z)
    }

    /// `|z|^2 = z · conj(z)`, always a non-negative real.
    pub fn abs_squared(&self) -> CycloNum {
        self * &self.conj()
    }

    /// Field norm down to `Q`: the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let m = self.order;
        let mut acc = self.clone();
        for k in 2..m as i64 {
            if super::field::gcd_u32(k as u32, m) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc.as_rational().expect("norm is rational")
    }

    pub fn pow(&self, mut e: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = CycloNum::one(self.order).expect("validated conductor");
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> CycloNum {
        let mut z = CycloNum {
            order: self.order,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        z.normalize();
        z
    }
}

/// Returns `(s, g)` with `s·a ≡ g (mod m)` and `g` a constant.
fn ext_euclid_inverse(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Rational) {
    let mut r0 = trim(m.to_vec());
    let mut r1 = trim(a.to_vec());
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = trim(poly_sub(&s0, &poly_mul(&q, &s1)));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
    }
    debug_assert_eq!(r0.len(), 1);
    (s0, r0.into_iter().next().expect("nonzero gcd"))
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = core::cmp::max(a.len(), b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect()
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().expect("nonzero divisor").recip();
    let mut q = vec![Rational::zero(); rem.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &rem[i + b.len() - 1] * &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    rem.truncate(b.len() - 1);
    (q, trim(rem))
}

/// Lowest common conductor for a collection of conductors.
pub fn common_order(orders: impl IntoIterator<Item = u32>) -> u32 {
    orders.into_iter().fold(1, lcm_u32)
}

/// Degree of `Q(ζ_M)` over `Q`.
pub fn field_degree(order: u32) -> usize {
    totient(order) as usize
}

impl Ord for CycloNum {
    /// Conductor first, then lexicographic on the rational coefficients.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| {
            for (a, b) in self.num.iter().zip(&other.num) {
                let ord = (a * &other.den).cmp(&(b * &self.den));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Operator forms panic on a conductor mismatch; the `try_*` methods report it.
impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        assert_eq!(self.order, rhs.order, "conductor mismatch");
        self.add_unchecked(rhs, false)
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        assert_eq!(self.order, rhs.order, "conductor mismatch");
        self.add_unchecked(rhs, true)
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        assert_eq!(self.order, rhs.order, "conductor mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn zeta(m: u32, e: i64) -> CycloNum {
        CycloNum::root_of_unity(m, e).unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = zeta(4, 1);
        assert_eq!(&i * &i, CycloNum::from_integer(4, -1).unwrap());
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let w = zeta(3, 1);
        let s = &(&(&w * &w) + &w) + &CycloNum::one(3).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let s = zeta(5, 1).try_add(&zeta(5, 4)).unwrap();
        let root5 = &CycloNum::one(5).unwrap() + &s.scale(&q(2, 1));
        assert_eq!(&root5 * &root5, CycloNum::from_integer(5, 5).unwrap());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(zeta(4, 1).conj(), -zeta(4, 1));
        let r = CycloNum::from_rational(12, &q(-3, 7)).unwrap();
        assert_eq!(r.conj(), r);
        assert_eq!(zeta(5, 1).conj(), zeta(5, 4));
    }

    #[test]
    fn realness_examples() {
        assert!(!zeta(4, 1).is_real());
        assert!(CycloNum::from_rational(4, &q(3, 7)).unwrap().is_real());
        assert!((&zeta(5, 1) + &zeta(5, 4)).is_real());
    }

    #[test]
    fn lifting_examples() {
        assert_eq!(zeta(4, 1).lift_order(20).unwrap(), zeta(20, 5));
        assert_eq!(CycloNum::one(1).unwrap().lift_order(12).unwrap(), CycloNum::one(12).unwrap());
        let c = &zeta(5, 1) + &zeta(5, 4);
        assert!(c.lift_order(20).unwrap().is_real());
        assert_eq!(zeta(4, 1).lift_order(6), Err(Error::NotDivisible { from: 4, to: 6 }));
    }

    #[test]
    fn division_and_errors() {
        let a = CycloNum::gaussian(12, &q(3, 5), &q(-7, 2)).unwrap();
        let b = &zeta(12, 1) + &CycloNum::from_integer(12, 2).unwrap();
        let c = a.try_div(&b).unwrap();
        assert_eq!(&c * &b, a);
        assert_eq!(a.try_div(&CycloNum::zero(12).unwrap()), Err(Error::DivisionByZero));
        assert_eq!(a.try_add(&zeta(4, 1)), Err(Error::OrderMismatch { left: 12, right: 4 }));
        assert_eq!(a.arith(&b, ArithOp::Sub).unwrap(), &a - &b);
    }

    #[test]
    fn norm_of_gaussian_integer() {
        let z = CycloNum::gaussian(4, &q(3, 1), &q(4, 1)).unwrap();
        assert_eq!(z.norm(), q(25, 1));
        assert_eq!(z.abs_squared().as_rational(), Some(q(25, 1)));
    }

    #[test]
    fn ordering_is_lexicographic_on_coefficients() {
        let a = CycloNum::from_rational(4, &q(1, 3)).unwrap();
        let b = CycloNum::from_rational(4, &q(1, 2)).unwrap();
        assert!(a < b);
        assert!(CycloNum::zero(4).unwrap() < zeta(4, 1));
        assert!(-zeta(4, 1) < CycloNum::zero(4).unwrap());
    }

    #[test]
    fn from_coeffs_rejects_wrong_length() {
        assert_eq!(
            CycloNum::from_coeffs(12, &[q(1, 1)]),
            Err(Error::BadLength { expected: 4, got: 1 })
        );
    }
}
