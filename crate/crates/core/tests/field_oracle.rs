//! Cyclotomic arithmetic against a separate model: elements of the group
//! algebra Q[x]/(x^n - 1), reduced modulo a cyclotomic polynomial built from
//! the Möbius product only when compared.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use patternforge_core::exactnum::{field_degree, CycloNum};
use proptest::prelude::*;

type Poly = Vec<BigRational>;

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder by a monic divisor.
fn poly_divmod(a: &Poly, m: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    let dm = m.len() - 1;
    if r.len() <= dm {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - dm];
    for top in (dm..r.len()).rev() {
        let c = r[top].clone();
        if c.is_zero() {
            continue;
        }
        q[top - dm] = c.clone();
        for (k, mk) in m.iter().enumerate() {
            r[top - dm + k] -= &c * mk;
        }
    }
    r.truncate(dm.max(1));
    (trim(q), r)
}

fn x_pow_minus_one(d: u32) -> Poly {
    let mut p = vec![BigRational::zero(); d as usize + 1];
    p[0] = -BigRational::one();
    p[d as usize] = BigRational::one();
    p
}

/// `Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}`.
fn cyclotomic(n: u32) -> Poly {
    let mut num = vec![BigRational::one()];
    let mut den = vec![BigRational::one()];
    for d in (1..=n).filter(|d| n % d == 0) {
        match mobius(n / d) {
            1 => num = poly_mul(&num, &x_pow_minus_one(d)),
            -1 => den = poly_mul(&den, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    let (q, r) = poly_divmod(&num, &den);
    assert!(r.iter().all(Zero::is_zero));
    q
}

/// An element `Σ c_i x^i` of Q[x]/(x^n - 1).
#[derive(Clone, Debug)]
struct Model {
    n: u32,
    c: Vec<BigRational>,
}

impl Model {
    fn from_ints(n: u32, c: &[i64]) -> Model {
        let mut v = vec![BigRational::zero(); n as usize];
        for (i, x) in c.iter().enumerate() {
            v[i % n as usize] += BigRational::from_integer(BigInt::from(*x));
        }
        Model { n, c: v }
    }

    fn add(&self, o: &Model) -> Model {
        Model { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    fn mul(&self, o: &Model) -> Model {
        let n = self.n as usize;
        let mut v = vec![BigRational::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                v[(i + j) % n] += a * b;
            }
        }
        Model { n: self.n, c: v }
    }

    /// `x ↦ x^k`.
    fn galois(&self, k: i64) -> Model {
        let n = self.n as i64;
        let mut v = vec![BigRational::zero(); n as usize];
        for (i, a) in self.c.iter().enumerate() {
            v[(i as i64 * k).rem_euclid(n) as usize] += a;
        }
        Model { n: self.n, c: v }
    }

    fn lift(&self, target: u32) -> Model {
        let step = (target / self.n) as usize;
        let mut v = vec![BigRational::zero(); target as usize];
        for (i, a) in self.c.iter().enumerate() {
            v[i * step] += a;
        }
        Model { n: target, c: v }
    }

    /// Coefficients in the power basis of Q(ζ_n).
    fn reduced(&self) -> Vec<BigRational> {
        let phi = cyclotomic(self.n);
        let (_, mut r) = poly_divmod(&trim(self.c.clone()), &phi);
        r.resize(phi.len() - 1, BigRational::zero());
        r
    }

    fn to_cyclo(&self) -> CycloNum {
        let mut z = CycloNum::zero(self.n).unwrap();
        for (i, a) in self.c.iter().enumerate() {
            z = &z + &CycloNum::root_of_unity(self.n, i as i64).unwrap().scale(a);
        }
        z
    }
}

const ORDERS: [u32; 14] = [1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24, 30, 60, 120];

fn model() -> impl Strategy<Value = Model> {
    (0..ORDERS.len()).prop_flat_map(|i| {
        let n = ORDERS[i];
        prop::collection::vec(-6i64..=6, 1..=(n as usize).min(10))
            .prop_map(move |c| Model::from_ints(n, &c))
    })
}

fn pair() -> impl Strategy<Value = (Model, Model)> {
    (0..ORDERS.len()).prop_flat_map(|i| {
        let n = ORDERS[i];
        let side = || prop::collection::vec(-6i64..=6, 1..=(n as usize).min(10));
        (side(), side()).prop_map(move |(a, b)| (Model::from_ints(n, &a), Model::from_ints(n, &b)))
    })
}

#[test]
fn cyclotomic_degrees_match() {
    for n in 1..=120 {
        assert_eq!(cyclotomic(n).len() - 1, field_degree(n), "n = {n}");
    }
}

#[test]
fn root_of_unity_identities() {
    let w = Model::from_ints(3, &[0, 1]);
    let sum = w.mul(&w).add(&w).add(&Model::from_ints(3, &[1]));
    assert!(sum.reduced().iter().all(Zero::is_zero));
    assert!(sum.to_cyclo().is_zero());

    // 1 + 2(ζ₅ + ζ₅⁴) squared is 5
    let r5 = Model::from_ints(5, &[1, 2, 0, 0, 2]);
    let sq = r5.mul(&r5).reduced();
    assert_eq!(sq[0], BigRational::from_integer(5.into()));
    assert!(sq[1..].iter().all(Zero::is_zero));
    let z = r5.to_cyclo();
    assert_eq!(&z * &z, CycloNum::from_integer(5, 5).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn construction_matches_reduction(a in model()) {
        prop_assert_eq!(a.to_cyclo().coeffs(), a.reduced());
    }

    #[test]
    fn sum_and_product_match((a, b) in pair()) {
        let (x, y) = (a.to_cyclo(), b.to_cyclo());
        prop_assert_eq!((&x + &y).coeffs(), a.add(&b).reduced());
        prop_assert_eq!((&x * &y).coeffs(), a.mul(&b).reduced());
    }

    #[test]
    fn quotient_times_divisor((a, b) in pair()) {
        let (x, y) = (a.to_cyclo(), b.to_cyclo());
        prop_assume!(!y.is_zero());
        let q = x.try_div(&y).unwrap();
        let back = Model { n: a.n, c: {
            let mut c = q.coeffs();
            c.resize(a.n as usize, BigRational::zero());
            c
        }};
        prop_assert_eq!(back.mul(&b).reduced(), a.reduced());
    }

    #[test]
    fn conjugation_matches(a in model()) {
        let n = a.n as i64;
        prop_assert_eq!(a.to_cyclo().conj().coeffs(), a.galois(n - 1).reduced());
    }

    #[test]
    fn lifting_matches(a in model(), k in 1u32..=4) {
        let target = a.n * k;
        prop_assume!(target <= 120);
        prop_assert_eq!(a.to_cyclo().lift_order(target).unwrap().coeffs(), a.lift(target).reduced());
    }
}
