//! Number of `F_p`-rational irreducible components of the genus-2
//! supersingular locus, i.e. the number of superspecial principally
//! polarized abelian surfaces over `F̄_p` whose polarization kernel is the
//! Frobenius kernel and whose class is Galois-stable.
//!
//! For `p ≥ 7` the count is
//!
//! ```text
//! p ≡ 1 (mod 4):  (9 − 2(2/p))/96 · B₂,χ + h(√−p)/16 + h(√−2p)/8 + (3 + (2/p))/12 · h(√−3p)
//! p ≡ 3 (mod 4):  B₂,χ/96 + (1 − (2/p))/16 · h(√−p) + h(√−2p)/8 + h(√−3p)/12
//! ```
//!
//! with `χ` the character of `Q(√p)`. For `p ∈ {2, 3, 5}` the count is 1 and
//! the formula is not evaluated.
//!
//! The rest of the module answers existence questions for higher
//! dimensions as decidable predicates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arithmetic::{
    kronecker_symbol, real_quadratic_character, require_prime, ArithmeticError, Rational,
};
use crate::specialvalues::{
    bernoulli_b2_definitional, class_number_field, ClassNumberCache, SpecialValueError,
};

#[derive(Debug, Error)]
pub enum SigmaError {
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error(transparent)]
    SpecialValue(#[from] SpecialValueError),
    #[error("formula for p = {p} gave the non-integral value {value}")]
    NonIntegral { p: u64, value: Rational },
    #[error("formula for p = {p} gave the non-positive value {value}")]
    NonPositive { p: u64, value: Rational },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("dimension {0} is odd; only even dimensions carry this question")]
    OddDimension(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `p ∈ {2, 3, 5}`: tabulated value.
    #[serde(rename = "special")]
    Special,
    /// `p ≥ 7`, `p ≡ 1 (mod 4)`.
    #[serde(rename = "eq_2_2")]
    OneModFour,
    /// `p ≥ 7`, `p ≡ 3 (mod 4)`.
    #[serde(rename = "eq_2_3")]
    ThreeModFour,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Special => "special",
            Branch::OneModFour => "eq_2_2",
            Branch::ThreeModFour => "eq_2_3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "special" => Some(Branch::Special),
            "eq_2_2" => Some(Branch::OneModFour),
            "eq_2_3" => Some(Branch::ThreeModFour),
            _ => None,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The five inputs of the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ingredients {
    pub bernoulli: Rational,
    pub h_p: u64,
    pub h_2p: u64,
    pub h_3p: u64,
    /// `(2/p)`
    pub leg2p: i8,
}

/// The four additive terms of the formula, in formula order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTerms {
    pub bernoulli_term: Rational,
    pub h_p_term: Rational,
    pub h_2p_term: Rational,
    pub h_3p_term: Rational,
}

impl FormulaTerms {
    pub fn sum(&self) -> Rational {
        &self.bernoulli_term + &self.h_p_term + &self.h_2p_term + &self.h_3p_term
    }
}

/// Result of [`sigma2_count`]. `ingredients` and `terms` are present exactly
/// when the formula was evaluated (`branch != Special`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaCountBreakdown {
    pub p: u64,
    pub branch: Branch,
    pub ingredients: Option<Ingredients>,
    pub terms: Option<FormulaTerms>,
    pub total: u64,
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Evaluates the four terms for the given branch. Exposed so callers can
/// feed independently obtained ingredients through the same formula.
pub fn formula_terms(branch: Branch, ing: &Ingredients) -> Option<FormulaTerms> {
    let leg = ing.leg2p as i64;
    let b2 = &ing.bernoulli;
    let (hp, h2p, h3p) = (
        int(ing.h_p as i64),
        int(ing.h_2p as i64),
        int(ing.h_3p as i64),
    );
    match branch {
        Branch::Special => None,
        Branch::OneModFour => Some(FormulaTerms {
            bernoulli_term: frac(9 - 2 * leg, 96) * b2,
            h_p_term: frac(1, 16) * hp,
            h_2p_term: frac(1, 8) * h2p,
            h_3p_term: frac(3 + leg, 12) * h3p,
        }),
        Branch::ThreeModFour => Some(FormulaTerms {
            bernoulli_term: frac(1, 96) * b2,
            h_p_term: frac(1 - leg, 16) * hp,
            h_2p_term: frac(1, 8) * h2p,
            h_3p_term: frac(1, 12) * h3p,
        }),
    }
}

pub fn branch_for(p: u64) -> Branch {
    match p {
        2 | 3 | 5 => Branch::Special,
        _ if p % 4 == 1 => Branch::OneModFour,
        _ => Branch::ThreeModFour,
    }
}

/// Collects `B_{2,χ}`, `h(√−p)`, `h(√−2p)`, `h(√−3p)` and `(2/p)` for a prime
/// `p ≥ 7`.
pub fn ingredients(p: u64, cache: &ClassNumberCache) -> Result<Ingredients, SigmaError> {
    require_prime(p)?;
    // 2p and 3p are squarefree only because p is neither 2 nor 3.
    assert!(p >= 7, "formula ingredients need p >= 7");
    let chi = real_quadratic_character(p)?;
    Ok(Ingredients {
        bernoulli: bernoulli_b2_definitional(&chi)?,
        h_p: class_number_field(p, cache)?,
        h_2p: class_number_field(2 * p, cache)?,
        h_3p: class_number_field(3 * p, cache)?,
        leg2p: kronecker_symbol(2, p as i64)?,
    })
}

/// `|Σ₂(F_p)|` with a fresh, throwaway class-number cache.
pub fn sigma2_count(p: u64) -> Result<SigmaCountBreakdown, SigmaError> {
    sigma2_count_with_cache(p, &ClassNumberCache::new())
}

pub fn sigma2_count_with_cache(
    p: u64,
    cache: &ClassNumberCache,
) -> Result<SigmaCountBreakdown, SigmaError> {
    require_prime(p)?;
    let branch = branch_for(p);
    if branch == Branch::Special {
        return Ok(SigmaCountBreakdown {
            p,
            branch,
            ingredients: None,
            terms: None,
            total: 1,
        });
    }
    let ing = ingredients(p, cache)?;
    let terms = formula_terms(branch, &ing).expect("non-special branch");
    let value = terms.sum();
    if !value.is_integer() {
        return Err(SigmaError::NonIntegral { p, value });
    }
    if !value.is_positive() {
        return Err(SigmaError::NonPositive { p, value });
    }
    let total = value
        .to_integer()
        .to_u64()
        .expect("component count fits in u64");
    Ok(SigmaCountBreakdown {
        p,
        branch,
        ingredients: Some(ing),
        terms: Some(terms),
        total,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Existence {
    Nonempty,
    /// Neither proved nor refuted.
    Unknown,
}

/// Which construction (or lack of one) backs an [`ExistenceStatus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExistenceReason {
    /// Odd dimension: `E₀ⁿ` with the product polarization, `E₀` a
    /// supersingular curve over `F_p`.
    SupersingularPower,
    /// Dimension 2: the component count is at least 1.
    SurfaceCount,
    /// Even dimension above 2: product of `n/2` surfaces from the count.
    SurfaceProduct,
    /// `4 | n`: Weil restriction of a `n/2`-dimensional variety over
    /// `F_{p²}` with Frobenius `−p`.
    WeilRestriction,
    /// `(−1/p) = 1`: an `F_p`-point `[a:b]` with `a^{p+1} + b^{p+1} = 0`
    /// gives a degree-`p` isogeny to `E₀²`.
    FermatPoint,
    /// The sufficient conditions fail; they are only expected, not known,
    /// to be necessary.
    Open,
}

impl ExistenceReason {
    pub fn tag(&self) -> &'static str {
        match self {
            ExistenceReason::SupersingularPower => "supersingular-power",
            ExistenceReason::SurfaceCount => "surface-count",
            ExistenceReason::SurfaceProduct => "surface-product",
            ExistenceReason::WeilRestriction => "weil-restriction",
            ExistenceReason::FermatPoint => "fermat-point",
            ExistenceReason::Open => "open",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExistenceStatus {
    pub value: Existence,
    pub reason: ExistenceReason,
}

impl ExistenceStatus {
    fn nonempty(reason: ExistenceReason) -> Self {
        Self {
            value: Existence::Nonempty,
            reason,
        }
    }

    pub fn is_nonempty(&self) -> bool {
        self.value == Existence::Nonempty
    }
}

impl fmt::Display for ExistenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.value {
            Existence::Nonempty => "nonempty",
            Existence::Unknown => "unknown",
        };
        write!(f, "{v} ({})", self.reason.tag())
    }
}

/// Whether some component of the `n`-dimensional supersingular locus is
/// defined over `F_p`. Always nonempty; the reason records the construction.
pub fn component_existence(n: u64, p: u64) -> Result<ExistenceStatus, SigmaError> {
    if n == 0 {
        return Err(SigmaError::ZeroDimension);
    }
    require_prime(p)?;
    if n % 2 == 1 {
        return Ok(ExistenceStatus::nonempty(
            ExistenceReason::SupersingularPower,
        ));
    }
    let surfaces = sigma2_count(p)?;
    if surfaces.total == 0 {
        return Err(SigmaError::NonPositive {
            p,
            value: Rational::zero(),
        });
    }
    Ok(ExistenceStatus::nonempty(if n == 2 {
        ExistenceReason::SurfaceCount
    } else {
        ExistenceReason::SurfaceProduct
    }))
}

/// Existence over `F_p` of a superspecial `(A, λ)` of even dimension `n`
/// with `π_A² = −p` and `ker λ = A[F]`.
pub fn sigma_prime_existence(n: u64, p: u64) -> Result<ExistenceStatus, SigmaError> {
    if n == 0 {
        return Err(SigmaError::ZeroDimension);
    }
    if n % 2 == 1 {
        return Err(SigmaError::OddDimension(n));
    }
    require_prime(p)?;
    if n.is_multiple_of(4) {
        return Ok(ExistenceStatus::nonempty(ExistenceReason::WeilRestriction));
    }
    if kronecker_symbol(-1, p as i64)? == 1 {
        return Ok(ExistenceStatus::nonempty(ExistenceReason::FermatPoint));
    }
    Ok(ExistenceStatus {
        value: Existence::Unknown,
        reason: ExistenceReason::Open,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::primes_in;

    #[test]
    fn small_primes_are_tabulated() {
        for p in [2, 3, 5] {
            let b = sigma2_count(p).unwrap();
            assert_eq!(b.total, 1);
            assert_eq!(b.branch, Branch::Special);
            assert!(b.ingredients.is_none() && b.terms.is_none());
        }
    }

    #[test]
    fn hand_evaluated_formula_values() {
        // p = 7 with B = 16, (2/7) = 1, h = (1, 4, 4)
        let seven = Ingredients {
            bernoulli: int(16),
            h_p: 1,
            h_2p: 4,
            h_3p: 4,
            leg2p: 1,
        };
        let t = formula_terms(Branch::ThreeModFour, &seven).unwrap();
        assert_eq!(t.bernoulli_term, frac(1, 6));
        assert!(t.h_p_term.is_zero());
        assert_eq!(t.sum(), int(1));

        // p = 13 with B = 4, (2/13) = -1, h = (2, 6, 4)
        let thirteen = Ingredients {
            bernoulli: int(4),
            h_p: 2,
            h_2p: 6,
            h_3p: 4,
            leg2p: -1,
        };
        let t = formula_terms(Branch::OneModFour, &thirteen).unwrap();
        assert_eq!(t.bernoulli_term, frac(44, 96));
        assert_eq!(t.h_3p_term, frac(8, 12));
        assert_eq!(t.sum(), int(2));
    }

    #[test]
    fn computed_values_for_7_and_13() {
        let seven = sigma2_count(7).unwrap();
        assert_eq!(seven.total, 1);
        assert_eq!(seven.branch, Branch::ThreeModFour);
        let ing = seven.ingredients.unwrap();
        assert_eq!(
            (ing.bernoulli, ing.h_p, ing.h_2p, ing.h_3p, ing.leg2p),
            (int(16), 1, 4, 4, 1)
        );

        let thirteen = sigma2_count(13).unwrap();
        assert_eq!(thirteen.total, 2);
        assert_eq!(thirteen.branch, Branch::OneModFour);
        let ing = thirteen.ingredients.unwrap();
        assert_eq!(
            (ing.bernoulli, ing.h_p, ing.h_2p, ing.h_3p, ing.leg2p),
            (int(4), 2, 6, 4, -1)
        );
    }

    #[test]
    fn composite_input_is_rejected() {
        assert!(matches!(
            sigma2_count(12),
            Err(SigmaError::Arithmetic(ArithmeticError::NotPrime(12)))
        ));
        assert!(sigma2_count(1).is_err());
    }

    #[test]
    fn integrality_and_branches_below_1000() {
        let cache = ClassNumberCache::new();
        for p in primes_in(7, 1000) {
            let b = sigma2_count_with_cache(p, &cache).unwrap();
            assert!(b.total >= 1);
            assert_eq!(b.terms.unwrap().sum(), int(b.total as i64));
            let expected = if p % 4 == 1 {
                Branch::OneModFour
            } else {
                Branch::ThreeModFour
            };
            assert_eq!(b.branch, expected);
        }
    }

    #[test]
    fn existence_examples() {
        let s = component_existence(3, 11).unwrap();
        assert_eq!(s.value, Existence::Nonempty);
        assert_eq!(s.reason, ExistenceReason::SupersingularPower);
        assert_eq!(
            component_existence(2, 7).unwrap().reason,
            ExistenceReason::SurfaceCount
        );
        assert_eq!(
            component_existence(6, 7).unwrap().reason,
            ExistenceReason::SurfaceProduct
        );
        assert!(matches!(
            component_existence(0, 7),
            Err(SigmaError::ZeroDimension)
        ));
        assert!(component_existence(2, 9).is_err());

        let s = sigma_prime_existence(4, 7).unwrap();
        assert_eq!(
            (s.value, s.reason),
            (Existence::Nonempty, ExistenceReason::WeilRestriction)
        );
        let s = sigma_prime_existence(2, 13).unwrap();
        assert_eq!(
            (s.value, s.reason),
            (Existence::Nonempty, ExistenceReason::FermatPoint)
        );
        let s = sigma_prime_existence(2, 7).unwrap();
        assert_eq!(
            (s.value, s.reason),
            (Existence::Unknown, ExistenceReason::Open)
        );
        assert!(matches!(
            sigma_prime_existence(3, 7),
            Err(SigmaError::OddDimension(3))
        ));
        assert_eq!(s.to_string(), "unknown (open)");
    }

    #[test]
    fn sigma_prime_implies_component_existence() {
        for p in primes_in(2, 60) {
            for n in (2..=12).step_by(2) {
                if sigma_prime_existence(n, p).unwrap().is_nonempty() {
                    assert!(component_existence(n, p).unwrap().is_nonempty());
                }
            }
        }
    }

    #[test]
    fn branch_names_round_trip() {
        for b in [Branch::Special, Branch::OneModFour, Branch::ThreeModFour] {
            assert_eq!(Branch::parse(b.as_str()), Some(b));
        }
        assert_eq!(Branch::parse("eq_2_4"), None);
    }
}
