//! `F_p` and `F_{p²}`, points of the projective line over them, and the
//! Fermat locus `a^{p+1} + b^{p+1} = 0`.

use std::fmt;

use crate::arithmetic::{kronecker_symbol, require_prime};

use super::LatticeError;

/// `F_{p^e}` for `e ∈ {1, 2}`.
///
/// `F_{p²}` is `F_p[t]/(t² − r)` with `r` the least quadratic non-residue
/// for odd `p`, and `F_2[t]/(t² + t + 1)` for `p = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePowerField {
    p: u64,
    degree: u8,
    // t² = t2_const + t2_linear·t
    t2_const: u64,
    t2_linear: u64,
}

/// `c0 + c1·t`; `c1` is always zero in a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub c0: u64,
    pub c1: u64,
}

impl FieldElement {
    pub const ZERO: Self = Self { c0: 0, c1: 0 };
    pub const ONE: Self = Self { c0: 1, c1: 0 };

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0, self.c1) {
            (c0, 0) => write!(f, "{c0}"),
            (0, 1) => write!(f, "t"),
            (0, c1) => write!(f, "{c1}t"),
            (c0, 1) => write!(f, "{c0}+t"),
            (c0, c1) => write!(f, "{c0}+{c1}t"),
        }
    }
}

fn least_non_residue(p: u64) -> u64 {
    (2..p)
        .find(|&r| kronecker_symbol(r as i64, p as i64) == Ok(-1))
        .expect("every odd prime has a non-residue")
}

impl PrimePowerField {
    pub fn new(p: u64, degree: u8) -> Result<Self, LatticeError> {
        require_prime(p)?;
        if p > u32::MAX as u64 {
            return Err(LatticeError::Unsupported(format!(
                "field characteristic {p} is too large"
            )));
        }
        match degree {
            1 => Ok(Self {
                p,
                degree,
                t2_const: 0,
                t2_linear: 0,
            }),
            2 if p == 2 => Ok(Self {
                p,
                degree,
                t2_const: 1,
                t2_linear: 1,
            }),
            2 => Ok(Self {
                p,
                degree,
                t2_const: least_non_residue(p),
                t2_linear: 0,
            }),
            e => Err(LatticeError::BadDegree(e)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    /// The constant `r` with `t² = r` (odd `p`, degree 2).
    pub fn non_residue(&self) -> Option<u64> {
        (self.degree == 2 && self.p != 2).then_some(self.t2_const)
    }

    pub fn element(&self, c0: u64, c1: u64) -> FieldElement {
        let c1 = if self.degree == 1 { 0 } else { c1 % self.p };
        FieldElement {
            c0: c0 % self.p,
            c1,
        }
    }

    /// All elements in the order `c0 + c1·p` ascending.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let top = if self.degree == 2 { self.p } else { 1 };
        (0..top).flat_map(move |c1| (0..self.p).map(move |c0| FieldElement { c0, c1 }))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement {
            c0: (x.c0 + y.c0) % self.p,
            c1: (x.c1 + y.c1) % self.p,
        }
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement {
            c0: (self.p - x.c0) % self.p,
            c1: (self.p - x.c1) % self.p,
        }
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.p;
        let m = |a: u64, b: u64| a * b % p;
        // (x0 + x1 t)(y0 + y1 t) = x0y0 + (x0y1 + x1y0) t + x1y1 t²
        let hi = m(x.c1, y.c1);
        FieldElement {
            c0: (m(x.c0, y.c0) + m(hi, self.t2_const)) % p,
            c1: (m(x.c0, y.c1) + m(x.c1, y.c0) + m(hi, self.t2_linear)) % p,
        }
    }

    pub fn pow(&self, mut x: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return None;
        }
        Some(self.pow(x, self.order() - 2))
    }
}

/// A point `[a : b]` of `P¹`, stored with its first nonzero coordinate
/// scaled to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    field: PrimePowerField,
    a: FieldElement,
    b: FieldElement,
}

impl ProjectivePoint {
    pub fn new(
        field: PrimePowerField,
        a: FieldElement,
        b: FieldElement,
    ) -> Result<Self, LatticeError> {
        let scale = if !a.is_zero() {
            field.inv(a)
        } else {
            field.inv(b)
        }
        .ok_or(LatticeError::ZeroPoint)?;
        Ok(Self {
            field,
            a: field.mul(a, scale),
            b: field.mul(b, scale),
        })
    }

    /// `[a : b]` over `F_p` from integer representatives.
    pub fn over_prime_field(p: u64, a: u64, b: u64) -> Result<Self, LatticeError> {
        let field = PrimePowerField::new(p, 1)?;
        Self::new(field, field.element(a, 0), field.element(b, 0))
    }

    pub fn field(&self) -> &PrimePowerField {
        &self.field
    }

    pub fn coordinates(&self) -> (FieldElement, FieldElement) {
        (self.a, self.b)
    }

    /// All `p^e + 1` points: `[1 : b]` for each `b`, then `[0 : 1]`.
    pub fn all(field: PrimePowerField) -> Vec<Self> {
        let mut out: Vec<Self> = field
            .elements()
            .map(|b| Self {
                field,
                a: FieldElement::ONE,
                b,
            })
            .collect();
        out.push(Self {
            field,
            a: FieldElement::ZERO,
            b: FieldElement::ONE,
        });
        out
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

/// Points of `P¹(F_{p^e})` with `a^{p+1} + b^{p+1} = 0`, by exhaustive scan.
pub fn fermat_locus(p: u64, degree: u8) -> Result<Vec<ProjectivePoint>, LatticeError> {
    if !(1..=2).contains(&degree) {
        return Err(LatticeError::BadDegree(degree));
    }
    let field = PrimePowerField::new(p, degree)?;
    Ok(ProjectivePoint::all(field)
        .into_iter()
        .filter(|pt| {
            let lhs = field.add(field.pow(pt.a, p + 1), field.pow(pt.b, p + 1));
            lhs.is_zero()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::pow_mod;
    use crate::arithmetic::primes_in;
    use std::collections::HashSet;

    fn euler_sign(x: u64, p: u64) -> i8 {
        match pow_mod(x, (p - 1) / 2, p) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    /// Counts nonzero pairs `(a, b)` with `a^{p+1} + b^{p+1} = 0` and divides
    /// by the number of scalars; no normalization involved.
    fn fermat_count_by_pairs(p: u64, degree: u8) -> u64 {
        let field = PrimePowerField::new(p, degree).unwrap();
        let elems: Vec<_> = field.elements().collect();
        let mut pairs = 0;
        for &a in &elems {
            for &b in &elems {
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let s = field.add(field.pow(a, p + 1), field.pow(b, p + 1));
                if s.is_zero() {
                    pairs += 1;
                }
            }
        }
        pairs / (field.order() - 1)
    }

    #[test]
    fn field_axioms_small() {
        for (p, e) in [(2, 1), (2, 2), (3, 2), (5, 1), (7, 2), (11, 2)] {
            let f = PrimePowerField::new(p, e).unwrap();
            let elems: Vec<_> = f.elements().collect();
            assert_eq!(elems.len() as u64, f.order());
            for &x in &elems {
                if !x.is_zero() {
                    let inv = f.inv(x).unwrap();
                    assert_eq!(f.mul(x, inv), FieldElement::ONE, "p={p} e={e} x={x}");
                }
                assert!(f.add(x, f.neg(x)).is_zero());
            }
        }
        assert_eq!(PrimePowerField::new(7, 2).unwrap().non_residue(), Some(3));
        assert_eq!(euler_sign(3, 7), -1);
        assert!(matches!(
            PrimePowerField::new(7, 3),
            Err(LatticeError::BadDegree(3))
        ));
    }

    #[test]
    fn normalization() {
        let pt = ProjectivePoint::over_prime_field(5, 3, 1).unwrap();
        // [3:1] = [1:2] since 3·2 = 6 = 1
        assert_eq!(pt, ProjectivePoint::over_prime_field(5, 1, 2).unwrap());
        assert_eq!(pt.to_string(), "[1:2]");
        let inf = ProjectivePoint::over_prime_field(5, 0, 4).unwrap();
        assert_eq!(inf.to_string(), "[0:1]");
        assert!(matches!(
            ProjectivePoint::over_prime_field(5, 0, 5),
            Err(LatticeError::ZeroPoint)
        ));
    }

    #[test]
    fn projective_line_sizes() {
        for (p, e) in [(2, 1), (2, 2), (3, 2), (5, 1), (13, 2)] {
            let f = PrimePowerField::new(p, e).unwrap();
            let pts = ProjectivePoint::all(f);
            assert_eq!(pts.len() as u64, f.order() + 1);
            let distinct: HashSet<_> = pts.iter().collect();
            assert_eq!(distinct.len(), pts.len());
        }
    }

    #[test]
    fn fermat_examples() {
        let shown = |p, e| -> Vec<String> {
            fermat_locus(p, e)
                .unwrap()
                .iter()
                .map(|x| x.to_string())
                .collect()
        };
        assert_eq!(shown(5, 1), ["[1:2]", "[1:3]"]);
        assert!(shown(7, 1).is_empty());
        assert_eq!(shown(3, 2).len(), 4);
        assert_eq!(shown(2, 1), ["[1:1]"]);
        assert!(matches!(
            fermat_locus(5, 3),
            Err(LatticeError::BadDegree(3))
        ));
        assert!(fermat_locus(6, 1).is_err());
    }

    #[test]
    fn fermat_matches_pair_count() {
        for p in primes_in(2, 30) {
            for e in [1, 2] {
                assert_eq!(
                    fermat_locus(p, e).unwrap().len() as u64,
                    fermat_count_by_pairs(p, e),
                    "p={p} e={e}"
                );
            }
        }
    }
}
