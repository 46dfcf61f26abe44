//! Arithmetic in a prime field `F_p`.
//!
//! Random elements of a large prime field stand in for algebraically
//! independent coefficients: any fixed nonzero polynomial condition in those
//! coefficients fails with probability at most `deg / p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The default modulus, `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Moduli at or below this bound are rejected: genericity failures would no
/// longer be negligible.
pub const MIN_PRIME: u64 = 1 << 20;

/// Deterministic random source used for every coefficient draw.
pub type SeededGenerator = ChaCha8Rng;

/// Creates the generator for a 64-bit seed.
pub fn seeded_generator(seed: u64) -> SeededGenerator {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives the seed used for retry `attempt` (attempt 0 is `seed` itself).
pub fn derive_seed(seed: u64, attempt: u64) -> u64 {
    if attempt == 0 {
        return seed;
    }
    // splitmix64 finalizer
    let mut z = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A residue in `[0, p)`. The modulus lives in the owning [`PrimeField`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    /// Builds the field, rejecting composite or too-small moduli.
    pub fn new(p: u64) -> Result<Self> {
        if p <= MIN_PRIME || p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// Any prime below `2^32`, including tiny ones. Only meant for tests of
    /// the arithmetic itself.
    pub fn new_unchecked_size(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary integer into the field.
    pub fn element(&self, v: u64) -> FieldElement {
        FieldElement(v % self.p)
    }

    /// Reduces a signed integer into the field.
    pub fn from_i64(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 + b.0;
        FieldElement(if s >= self.p { s - self.p } else { s })
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            a
        } else {
            FieldElement(self.p - a.0)
        }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        // p < 2^32, so the product fits in u64
        FieldElement(a.0 * b.0 % self.p)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// Uniform draw from `[1, p)`.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.p))
    }
}

/// Deterministic Miller-Rabin, exact for every `n < 2^64` with these bases.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
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
    use proptest::prelude::*;

    fn f11() -> PrimeField {
        PrimeField::new_unchecked_size(11).unwrap()
    }

    #[test]
    fn add_examples() {
        let f = PrimeField::default();
        let x = f.element(123_456);
        assert_eq!(f.add(FieldElement::ZERO, x), x);
        assert_eq!(f.add(f.element(DEFAULT_PRIME - 1), FieldElement::ONE), FieldElement::ZERO);
        let g = f11();
        assert_eq!(g.add(g.element(5), g.element(7)), g.element(1));
    }

    #[test]
    fn inverse_examples() {
        let f = PrimeField::default();
        assert_eq!(f.inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
        let g = f11();
        assert_eq!(g.inv(g.element(2)).unwrap(), g.element(6));
        assert!(matches!(f.inv(FieldElement::ZERO), Err(Error::ZeroInverse)));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
        assert!(PrimeField::new(11).is_err());
        assert!(PrimeField::new(DEFAULT_PRIME - 2).is_err()); // 2^31 - 3 = 5 * 429496729
        assert!(PrimeField::new((1 << 20) + 7).is_ok());
        assert!(PrimeField::new(1 << 33).is_err());
    }

    #[test]
    fn primality_against_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_297)); // 641 * 6700417
    }

    #[test]
    fn random_nonzero_is_deterministic_and_nonzero() {
        let f = PrimeField::default();
        let mut a = seeded_generator(42);
        let mut b = seeded_generator(42);
        let xs: Vec<_> = (0..10_000).map(|_| f.random_nonzero(&mut a)).collect();
        let ys: Vec<_> = (0..10_000).map(|_| f.random_nonzero(&mut b)).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().all(|x| !x.is_zero() && x.value() < DEFAULT_PRIME));

        let mut c = seeded_generator(43);
        let zs: Vec<_> = (0..16).map(|_| f.random_nonzero(&mut c)).collect();
        assert_ne!(xs[..16], zs[..]);
    }

    #[test]
    fn derived_seeds_differ() {
        assert_eq!(derive_seed(7, 0), 7);
        let s: std::collections::HashSet<_> = (0..64).map(|a| derive_seed(7, a)).collect();
        assert_eq!(s.len(), 64);
    }

    fn elem() -> impl Strategy<Value = u64> {
        0..DEFAULT_PRIME
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn field_axioms(a in elem(), b in elem(), c in elem()) {
            let f = PrimeField::default();
            let (a, b, c) = (f.element(a), f.element(b), f.element(c));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(f.sub(a, b), b), a);
            prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
        }
    }
}
