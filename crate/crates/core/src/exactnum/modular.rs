//! Ring homomorphisms `Z[1/d][ζ_M] → F_p` used as an exact prefilter.
//!
//! A prime `p ≡ 1 (mod M)` has a primitive `M`-th root of unity `r`, and
//! `ζ_M ↦ r` extends to a homomorphism on every element whose denominator
//! is a unit mod `p`. Equal values always get equal images, so differing
//! images prove inequality outright. Equal images are only candidates and
//! callers confirm them with exact arithmetic.
//!
//! Two independent primes near `2^61` form a [`ModKey`].

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;
use once_cell::race::OnceBox;

use super::field::{prime_factors, MAX_ORDER};
use super::CycloNum;

pub const LANES: usize = 2;
/// Distinct prime pairs available per conductor before giving up.
pub const MAX_ATTEMPTS: usize = 4;

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, Clone)]
struct Lane {
    p: u64,
    /// `r^i` for `0 <= i < M`.
    pows: Vec<u64>,
}

impl Lane {
    fn new(order: u32, start: u64) -> Lane {
        let m = order as u64;
        let mut t = start / m;
        let p = loop {
            let cand = m * t + 1;
            if is_prime_u64(cand) {
                break cand;
            }
            t -= 1;
        };
        let factors = prime_factors(order);
        let mut g = 2u64;
        let root = loop {
            let r = pow_mod(g, (p - 1) / m, p);
            if factors.iter().all(|&q| pow_mod(r, m / q as u64, p) != 1) {
                break r;
            }
            g += 1;
        };
        let mut pows = Vec::with_capacity(order as usize);
        let mut cur = 1u64;
        for _ in 0..order {
            pows.push(cur);
            cur = mul_mod(cur, root, p);
        }
        Lane { p, pows }
    }

    fn reduce(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = v % &p;
        let r = if r.sign() == Sign::Minus { r + &p } else { r };
        r.to_u64().expect("reduced below p")
    }

    /// Image of `value` under `ζ ↦ r^{sign}`; `None` when the denominator
    /// vanishes mod `p`.
    fn image(&self, value: &CycloNum, conjugate: bool) -> Option<u64> {
        let m = self.pows.len();
        let den = self.reduce(value.denominator());
        let den_inv = inv_mod(den, self.p)?;
        let mut acc = 0u64;
        for (i, c) in value.numerators().iter().enumerate() {
            let c = self.reduce(c);
            if c == 0 {
                continue;
            }
            let e = if conjugate { (m - i % m) % m } else { i % m };
            acc = add_mod(acc, mul_mod(c, self.pows[e], self.p), self.p);
        }
        Some(mul_mod(acc, den_inv, self.p))
    }
}

/// A pair of residues, one per lane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModKey(pub [u64; LANES]);

/// Homomorphic images for one conductor.
#[derive(Debug, Clone)]
pub struct ModularHasher {
    order: u32,
    lanes: [Lane; LANES],
}

const UNSET: OnceBox<[ModularHasher; MAX_ATTEMPTS]> = OnceBox::new();
static HASHERS: [OnceBox<[ModularHasher; MAX_ATTEMPTS]>; MAX_ORDER as usize + 1] =
    [UNSET; MAX_ORDER as usize + 1];

impl ModularHasher {
    /// The `attempt`-th prime pair for conductor `order` (cached).
    pub fn for_order(order: u32, attempt: usize) -> &'static ModularHasher {
        assert!(order >= 1 && order <= MAX_ORDER, "unsupported conductor {order}");
        let all = HASHERS[order as usize].get_or_init(|| {
            let mut start = 1u64 << 61;
            Box::new(core::array::from_fn(|_| {
                let a = Lane::new(order, start);
                let b = Lane::new(order, a.p - 2);
                start = b.p - 2;
                ModularHasher { order, lanes: [a, b] }
            }))
        });
        &all[attempt]
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn primes(&self) -> [u64; LANES] {
        [self.lanes[0].p, self.lanes[1].p]
    }

    pub fn key(&self, value: &CycloNum) -> Option<ModKey> {
        debug_assert_eq!(value.order(), self.order);
        Some(ModKey([self.lanes[0].image(value, false)?, self.lanes[1].image(value, false)?]))
    }

    /// Key of `conj(value)` without computing the conjugate.
    pub fn conj_key(&self, value: &CycloNum) -> Option<ModKey> {
        debug_assert_eq!(value.order(), self.order);
        Some(ModKey([self.lanes[0].image(value, true)?, self.lanes[1].image(value, true)?]))
    }

    pub fn add(&self, a: ModKey, b: ModKey) -> ModKey {
        ModKey(core::array::from_fn(|i| add_mod(a.0[i], b.0[i], self.lanes[i].p)))
    }

    pub fn sub(&self, a: ModKey, b: ModKey) -> ModKey {
        ModKey(core::array::from_fn(|i| sub_mod(a.0[i], b.0[i], self.lanes[i].p)))
    }

    pub fn mul(&self, a: ModKey, b: ModKey) -> ModKey {
        ModKey(core::array::from_fn(|i| mul_mod(a.0[i], b.0[i], self.lanes[i].p)))
    }

    /// `a / b`, or `None` if `b` vanishes in some lane.
    pub fn div(&self, a: ModKey, b: ModKey) -> Option<ModKey> {
        let mut out = [0u64; LANES];
        for i in 0..LANES {
            let inv = inv_mod(b.0[i], self.lanes[i].p)?;
            out[i] = mul_mod(a.0[i], inv, self.lanes[i].p);
        }
        Some(ModKey(out))
    }

    pub fn is_zero(&self, a: ModKey) -> bool {
        a.0.iter().any(|&x| x == 0)
    }
}

/// Runs `f` with successive prime pairs until it stops hitting a vanishing
/// denominator. Panics only if every attempt fails, which would take a
/// denominator divisible by eight distinct primes near `2^61`.
pub fn with_hasher<T>(order: u32, mut f: impl FnMut(&'static ModularHasher) -> Option<T>) -> T {
    for attempt in 0..MAX_ATTEMPTS {
        if let Some(v) = f(ModularHasher::for_order(order, attempt)) {
            return v;
        }
    }
    panic!("no usable modular prime pair for conductor {order}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    #[test]
    fn miller_rabin_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn primes_are_one_mod_order() {
        for m in [4u32, 12, 20, 24, 40, 120] {
            let h = ModularHasher::for_order(m, 0);
            for p in h.primes() {
                assert_eq!(p % m as u64, 1);
                assert!(is_prime_u64(p));
            }
        }
    }

    #[test]
    fn key_is_a_ring_homomorphism() {
        let m = 20;
        let h = ModularHasher::for_order(m, 0);
        let a = CycloNum::gaussian(m, &Rational::new(3.into(), 7.into()), &Rational::new((-5).into(), 11.into()))
            .unwrap();
        let b = &CycloNum::root_of_unity(m, 3).unwrap() + &a;
        let ka = h.key(&a).unwrap();
        let kb = h.key(&b).unwrap();
        assert_eq!(h.key(&(&a * &b)).unwrap(), h.mul(ka, kb));
        assert_eq!(h.key(&(&a - &b)).unwrap(), h.sub(ka, kb));
        assert_eq!(h.key(&a.try_div(&b).unwrap()).unwrap(), h.div(ka, kb).unwrap());
        assert_eq!(h.conj_key(&a).unwrap(), h.key(&a.conj()).unwrap());
    }

    #[test]
    fn cyclotomic_relation_holds_mod_p() {
        let h = ModularHasher::for_order(3, 0);
        let w = CycloNum::root_of_unity(3, 1).unwrap();
        let one = h.key(&CycloNum::one(3).unwrap()).unwrap();
        let kw = h.key(&w).unwrap();
        let sum = h.add(h.add(h.mul(kw, kw), kw), one);
        assert_eq!(sum, ModKey([0, 0]));
    }
}
