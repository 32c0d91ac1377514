use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Commutative semiring with subtraction, as used by the table transforms.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn lift(&self, v: u64) -> Self::Elem;
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem);
    /// Exact subtraction; the unbounded ring panics if the result would be negative.
    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn to_biguint(&self, a: &Self::Elem) -> BigUint;
}

/// Unbounded nonnegative integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Ring for Exact {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn lift(&self, v: u64) -> BigUint {
        BigUint::from(v)
    }
    fn add_assign(&self, a: &mut BigUint, b: &BigUint) {
        *a += b;
    }
    fn sub_assign(&self, a: &mut BigUint, b: &BigUint) {
        // BigUint subtraction panics on underflow, which doubles as the
        // nonnegativity check.
        *a -= b;
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn to_biguint(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
}

/// Integers modulo a prime below `2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModPrime {
    pub p: u64,
}

impl ModPrime {
    /// Uniform random 62-bit prime drawn from a seeded stream.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let c = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
            if is_prime(c) {
                return ModPrime { p: c };
            }
        }
    }
}

impl Ring for ModPrime {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn lift(&self, v: u64) -> u64 {
        v % self.p
    }
    fn add_assign(&self, a: &mut u64, b: &u64) {
        *a += b;
        if *a >= self.p {
            *a -= self.p;
        }
    }
    fn sub_assign(&self, a: &mut u64, b: &u64) {
        *a = if *a >= *b { *a - b } else { *a + self.p - b };
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_biguint(&self, a: &u64) -> BigUint {
        BigUint::from(*a)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(((1u64 << 31) - 1) * ((1 << 31) - 1)));
    }

    #[test]
    fn random_prime_is_62_bits() {
        let r = ModPrime::random(7);
        assert!(is_prime(r.p));
        assert_eq!(64 - r.p.leading_zeros(), 62);
        assert_eq!(ModPrime::random(7), r);
    }

    #[test]
    fn modular_ops() {
        let r = ModPrime { p: 7 };
        let mut a = 5;
        r.add_assign(&mut a, &4);
        assert_eq!(a, 2);
        r.sub_assign(&mut a, &3);
        assert_eq!(a, 6);
        assert_eq!(r.mul(&6, &6), 1);
    }
}
