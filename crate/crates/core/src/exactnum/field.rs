//! Per-conductor tables for `Q(ζ_M)`: the cyclotomic polynomial and the
//! reduced power-basis images of `x^j`.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};

/// Largest supported conductor. `φ(120) = 32`.
pub const MAX_ORDER: u32 = 120;

#[derive(Debug)]
pub(crate) struct FieldTables {
    pub order: u32,
    pub degree: usize,
    /// `Φ_M`, lowest coefficient first, monic.
    pub modulus: Vec<i64>,
    /// `x^j mod Φ_M` for `0 <= j < rows.len()`; covers both products
    /// (`j <= 2φ - 2`) and every power of ζ below `M`.
    pub rows: Vec<Vec<i64>>,
}

impl FieldTables {
    /// Reduced vector of `ζ^e` for any integer exponent.
    pub fn power(&self, e: i64) -> &[i64] {
        let m = self.order as i64;
        &self.rows[e.rem_euclid(m) as usize]
    }

    fn build(order: u32) -> FieldTables {
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let count = core::cmp::max(order as usize, 2 * degree);
        let mut rows = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        if degree > 0 {
            cur[0] = 1;
        }
        for _ in 0..count {
            rows.push(cur.clone());
            // multiply by x, then subtract top * Φ
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * modulus[i];
                }
            }
        }
        FieldTables { order, degree, modulus, rows }
    }
}

const UNSET: OnceBox<FieldTables> = OnceBox::new();
static TABLES: [OnceBox<FieldTables>; MAX_ORDER as usize + 1] = [UNSET; MAX_ORDER as usize + 1];

pub(crate) fn tables(order: u32) -> Result<&'static FieldTables> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    Ok(TABLES[order as usize].get_or_init(|| Box::new(FieldTables::build(order))))
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub(crate) fn prime_factors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// `Φ_n(x) = Π_{d | n} (x^d - 1)^{μ(n/d)}`, lowest coefficient first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut binomial = vec![0i64; d as usize + 1];
        binomial[0] = -1;
        binomial[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul(&num, &binomial),
            -1 => den = poly_mul(&den, &binomial),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a polynomial whose leading coefficient is ±1.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = den[dl - 1];
    debug_assert!(lead == 1 || lead == -1);
    let ql = rem.len() + 1 - dl;
    let mut q = vec![0i64; ql];
    for i in (0..ql).rev() {
        let c = rem[i + dl - 1] * lead;
        q[i] = c;
        if c != 0 {
            for j in 0..dl {
                rem[i + j] -= c * den[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(20), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
    }

    #[test]
    fn degrees_match_totient() {
        for n in 1..=MAX_ORDER {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n) as usize, "n = {n}");
        }
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn power_table_wraps() {
        let t = tables(12).unwrap();
        assert_eq!(t.power(12), t.power(0));
        assert_eq!(t.power(-1), t.power(11));
        // ζ_12^6 = -1
        assert_eq!(t.power(6), &[-1, 0, 0, 0]);
    }

    #[test]
    fn rejects_out_of_range_orders() {
        assert!(tables(0).is_err());
        assert!(tables(121).is_err());
    }
}
