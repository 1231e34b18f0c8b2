//! Exact integer primitives: primality, Kronecker symbols, fundamental
//! discriminants and real/imaginary quadratic characters.
//!
//! Everything here works on machine integers below `2^63`. Intermediate
//! products are widened to `u128`/`i128` so no step can overflow.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Arbitrary-precision integer used for exact values.
pub type Integer = BigInt;

/// Exact rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Largest input accepted by [`is_prime`] (exclusive).
pub const PRIME_BOUND: u64 = 1 << 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("{0} is outside the supported range [0, 2^63)")]
    OutOfRange(u64),
    #[error("Kronecker symbol (0/0) is undefined")]
    ZeroOverZero,
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("{0} does not define a quadratic field")]
    Degenerate(i64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by square-and-multiply.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// The first twelve primes are a deterministic witness set for n < 3.3 * 10^24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for `n < 2^63`.
pub fn is_prime(n: u64) -> Result<bool, ArithmeticError> {
    if n >= PRIME_BOUND {
        return Err(ArithmeticError::OutOfRange(n));
    }
    if n < 2 {
        return Ok(false);
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return Ok(n == w);
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Returns `Err(NotPrime)` unless `p` is prime.
pub fn require_prime(p: u64) -> Result<(), ArithmeticError> {
    if is_prime(p)? {
        Ok(())
    } else {
        Err(ArithmeticError::NotPrime(p))
    }
}

/// Primes in `[from, to]`, ascending.
pub fn primes_in(from: u64, to: u64) -> Vec<u64> {
    (from.max(2)..=to)
        .filter(|&n| is_prime(n).unwrap_or(false))
        .collect()
}

/// `(2/n)` for odd `n`, indexed by `n mod 8`.
const TWO_OVER: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

/// The Kronecker symbol `(a/n)`.
///
/// Conventions: `(a/0) = 1` when `|a| = 1` and `0` otherwise; `(a/-1)` is
/// `-1` for negative `a` and `1` otherwise; `(a/2)` is `0` for even `a`,
/// `1` for `a ≡ ±1 (mod 8)` and `-1` for `a ≡ ±3 (mod 8)`. For odd prime
/// `n` this is the Legendre symbol.
pub fn kronecker_symbol(a: i64, n: i64) -> Result<i8, ArithmeticError> {
    if a == 0 && n == 0 {
        return Err(ArithmeticError::ZeroOverZero);
    }
    let mut a = a as i128;
    let mut b = n as i128;
    if b == 0 {
        return Ok(if a.abs() == 1 { 1 } else { 0 });
    }
    if a & 1 == 0 && b & 1 == 0 {
        return Ok(0);
    }
    let v = b.trailing_zeros();
    b >>= v;
    let mut k: i8 = if v.is_multiple_of(2) {
        1
    } else {
        TWO_OVER[(a & 7) as usize]
    };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    // b is odd and positive from here on.
    loop {
        if a == 0 {
            return Ok(if b == 1 { k } else { 0 });
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= TWO_OVER[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}

pub fn is_squarefree(m: i64) -> bool {
    let mut n = m.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Discriminant of `Q(√m)` for squarefree `m ∉ {0, 1}`: `m` when
/// `m ≡ 1 (mod 4)`, else `4m`.
pub fn fundamental_discriminant(m: i64) -> Result<i64, ArithmeticError> {
    if m == 0 || m == 1 {
        return Err(ArithmeticError::Degenerate(m));
    }
    if !is_squarefree(m) {
        return Err(ArithmeticError::NotSquarefree(m));
    }
    if m.rem_euclid(4) == 1 {
        Ok(m)
    } else {
        m.checked_mul(4).ok_or(ArithmeticError::Degenerate(m))
    }
}

/// Whether `d` is the discriminant of a quadratic field (or `1`, the
/// discriminant of `Q` itself).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && is_squarefree(q)
        }
        _ => false,
    }
}

/// A real or imaginary primitive quadratic Dirichlet character, identified
/// by its fundamental discriminant `D` and evaluated as `a ↦ (D/a)`.
///
/// `D = 1` is the trivial character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticCharacter {
    discriminant: i64,
}

impl QuadraticCharacter {
    pub fn new(discriminant: i64) -> Result<Self, ArithmeticError> {
        if is_fundamental_discriminant(discriminant) {
            Ok(Self { discriminant })
        } else {
            Err(ArithmeticError::NotFundamental(discriminant))
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn conductor(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    pub fn is_trivial(&self) -> bool {
        self.discriminant == 1
    }

    /// `χ(-1) = 1`, which holds exactly for positive discriminants.
    pub fn is_even(&self) -> bool {
        self.discriminant > 0
    }

    /// `χ(a)`. Zero iff `gcd(a, conductor) > 1`.
    pub fn eval(&self, a: i64) -> i8 {
        // D is never 0, so (D/a) is always defined.
        kronecker_symbol(self.discriminant, a).expect("discriminant is nonzero")
    }
}

/// The character of `Q(√p)/Q`: conductor `p` for `p ≡ 1 (mod 4)`, `4p` for
/// `p ≡ 3 (mod 4)` and `8` for `p = 2`.
pub fn real_quadratic_character(p: u64) -> Result<QuadraticCharacter, ArithmeticError> {
    require_prime(p)?;
    let p = i64::try_from(p).map_err(|_| ArithmeticError::OutOfRange(p))?;
    QuadraticCharacter::new(fundamental_discriminant(p)?)
}

/// `χ(a)` for a constructed character; the free-function form of
/// [`QuadraticCharacter::eval`].
pub fn char_eval(chi: &QuadraticCharacter, a: i64) -> i8 {
    chi.eval(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2).unwrap());
        assert!(!is_prime(91).unwrap());
        assert!(is_prime(104729).unwrap());
        assert!(trial_division(104729));
        assert!(!is_prime(0).unwrap());
        assert!(!is_prime(1).unwrap());
    }

    #[test]
    fn primality_matches_trial_division_below_one_million() {
        // sieve as the exhaustive reference
        let n = 1_000_000usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < n {
            if sieve[i] {
                let mut j = i * i;
                while j < n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        for (k, &expected) in sieve.iter().enumerate() {
            assert_eq!(is_prime(k as u64).unwrap(), expected, "n = {k}");
        }
    }

    #[test]
    fn primality_large_values() {
        // 2^61 - 1 is a Mersenne prime; strong pseudoprimes to small bases are composite.
        assert!(is_prime((1 << 61) - 1).unwrap());
        assert!(!is_prime(3_215_031_751).unwrap());
        assert!(!is_prime(3_825_123_056_546_413_051).unwrap());
        assert!(is_prime(9_223_372_036_854_775_783).unwrap());
        assert_eq!(is_prime(1 << 63), Err(ArithmeticError::OutOfRange(1 << 63)));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(2, 7).unwrap(), 1);
        assert_eq!(kronecker_symbol(2, 13).unwrap(), -1);
        assert_eq!(kronecker_symbol(-1, 13).unwrap(), 1);
        assert_eq!(kronecker_symbol(3, 7).unwrap(), -1);
        assert_eq!(kronecker_symbol(0, 0), Err(ArithmeticError::ZeroOverZero));
    }

    #[test]
    fn kronecker_conventions() {
        assert_eq!(kronecker_symbol(1, 0).unwrap(), 1);
        assert_eq!(kronecker_symbol(-1, 0).unwrap(), 1);
        assert_eq!(kronecker_symbol(5, 0).unwrap(), 0);
        assert_eq!(kronecker_symbol(-5, -1).unwrap(), -1);
        assert_eq!(kronecker_symbol(5, -1).unwrap(), 1);
        assert_eq!(kronecker_symbol(0, 1).unwrap(), 1);
        assert_eq!(kronecker_symbol(0, 3).unwrap(), 0);
        assert_eq!(kronecker_symbol(4, 2).unwrap(), 0);
        assert_eq!(kronecker_symbol(7, 2).unwrap(), 1);
        assert_eq!(kronecker_symbol(9, 2).unwrap(), 1);
        assert_eq!(kronecker_symbol(3, 2).unwrap(), -1);
        assert_eq!(kronecker_symbol(5, 2).unwrap(), -1);
        assert_eq!(kronecker_symbol(-1, 2).unwrap(), 1);
    }

    /// Legendre symbol by listing squares.
    fn legendre_by_squares(a: i64, p: i64) -> i8 {
        let r = a.rem_euclid(p);
        if r == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == r) {
            1
        } else {
            -1
        }
    }

    /// Kronecker symbol from the factorization of n, each odd prime factor
    /// evaluated by listing squares.
    fn kronecker_by_factoring(a: i64, n: i64) -> i8 {
        if n == 0 {
            return if a.abs() == 1 { 1 } else { 0 };
        }
        let mut k: i8 = 1;
        let mut m = n;
        if m < 0 {
            m = -m;
            if a < 0 {
                k = -k;
            }
        }
        let mut d = 2;
        while m > 1 {
            while m % d == 0 {
                m /= d;
                k *= if d == 2 {
                    match a.rem_euclid(8) {
                        1 | 7 => 1,
                        3 | 5 => -1,
                        _ => 0,
                    }
                } else {
                    legendre_by_squares(a, d)
                };
            }
            d += 1;
        }
        k
    }

    #[test]
    fn kronecker_matches_factorization_oracle() {
        for a in -60..=60 {
            for n in -60..=60 {
                if a == 0 && n == 0 {
                    continue;
                }
                assert_eq!(
                    kronecker_symbol(a, n).unwrap(),
                    kronecker_by_factoring(a, n),
                    "({a}/{n})"
                );
            }
        }
    }

    #[test]
    fn legendre_consistency_with_euler_criterion() {
        for p in primes_in(3, 400) {
            for a in 1..p {
                let k = kronecker_symbol(a as i64, p as i64).unwrap();
                let e = pow_mod(a, (p - 1) / 2, p);
                let e = if e == p - 1 { -1 } else { e as i8 };
                assert_eq!(k, e, "({a}/{p})");
            }
        }
    }

    #[test]
    fn fundamental_discriminant_examples() {
        assert_eq!(fundamental_discriminant(5).unwrap(), 5);
        assert_eq!(fundamental_discriminant(7).unwrap(), 28);
        assert_eq!(fundamental_discriminant(-5).unwrap(), -20);
        assert_eq!(fundamental_discriminant(-7).unwrap(), -7);
        assert_eq!(fundamental_discriminant(2).unwrap(), 8);
        assert_eq!(fundamental_discriminant(-1).unwrap(), -4);
        assert_eq!(
            fundamental_discriminant(12),
            Err(ArithmeticError::NotSquarefree(12))
        );
        assert_eq!(
            fundamental_discriminant(1),
            Err(ArithmeticError::Degenerate(1))
        );
        assert_eq!(
            fundamental_discriminant(0),
            Err(ArithmeticError::Degenerate(0))
        );
    }

    #[test]
    fn fundamental_discriminant_classification() {
        for d in [-3, -4, -7, -8, -20, -23, -56, -84, 5, 8, 12, 13, 28] {
            assert!(is_fundamental_discriminant(d), "{d}");
        }
        for d in [-12, -16, -27, 0, 4, 9, 16, 20, 2, 3] {
            assert!(!is_fundamental_discriminant(d), "{d}");
        }
    }

    #[test]
    fn real_characters() {
        assert_eq!(real_quadratic_character(5).unwrap().discriminant(), 5);
        assert_eq!(real_quadratic_character(7).unwrap().discriminant(), 28);
        assert_eq!(real_quadratic_character(2).unwrap().discriminant(), 8);
        assert_eq!(real_quadratic_character(7).unwrap().conductor(), 28);
        assert_eq!(
            real_quadratic_character(9),
            Err(ArithmeticError::NotPrime(9))
        );
    }

    #[test]
    fn char_eval_examples() {
        let chi5 = real_quadratic_character(5).unwrap();
        let chi28 = real_quadratic_character(7).unwrap();
        assert_eq!(char_eval(&chi5, 2), -1);
        assert_eq!(char_eval(&chi28, 3), 1);
        assert_eq!(char_eval(&chi28, 14), 0);
        // chi_28 = chi_{-4} chi_{-7}
        let m4 = QuadraticCharacter::new(-4).unwrap();
        let m7 = QuadraticCharacter::new(-7).unwrap();
        for a in -100..100 {
            assert_eq!(chi28.eval(a), m4.eval(a) * m7.eval(a));
        }
    }

    #[test]
    fn orthogonality_and_evenness() {
        for p in primes_in(2, 300) {
            let chi = real_quadratic_character(p).unwrap();
            let f = chi.conductor() as i64;
            let s: i64 = (1..=f).map(|a| chi.eval(a) as i64).sum();
            assert_eq!(s, 0, "p = {p}");
            assert_eq!(chi.eval(-1), 1, "p = {p}");
        }
    }

    proptest! {
        #[test]
        fn characters_are_multiplicative(p_idx in 0usize..60, a in -5000i64..5000, b in -5000i64..5000) {
            let p = primes_in(2, 300)[p_idx];
            let chi = real_quadratic_character(p).unwrap();
            prop_assert_eq!(chi.eval(a * b), chi.eval(a) * chi.eval(b));
        }

        #[test]
        fn characters_are_periodic(p_idx in 0usize..60, a in -5000i64..5000) {
            let p = primes_in(2, 300)[p_idx];
            let chi = real_quadratic_character(p).unwrap();
            let f = chi.conductor() as i64;
            prop_assert_eq!(chi.eval(a), chi.eval(a + f));
            let coprime = num_integer::gcd(a, f) == 1;
            prop_assert_eq!(chi.eval(a) != 0, coprime);
        }
    }
}
