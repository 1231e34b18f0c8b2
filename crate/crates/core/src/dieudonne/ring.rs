//! The truncated ring `R/(p^k)` with `R = Z[√p]`, and `R`-linear
//! automorphisms of `R²`.

use std::fmt;

use rand::Rng;

use super::matrix::ModMatrix;
use super::LatticeError;

/// Parameters of `Z[√p]/(p^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncatedRing {
    p: u64,
    k: u32,
    modulus: u64,
}

impl TruncatedRing {
    pub fn new(p: u64, k: u32) -> Result<Self, LatticeError> {
        let modulus = p
            .checked_pow(k)
            .filter(|&m| m < (1 << 62))
            .ok_or_else(|| LatticeError::Unsupported(format!("{p}^{k} is too large")))?;
        Ok(Self { p, k, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    /// `p^k`
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn element(&self, u: i64, v: i64) -> TruncatedRingElement {
        let m = self.modulus as i64;
        TruncatedRingElement {
            ring: *self,
            u: u.rem_euclid(m) as u64,
            v: v.rem_euclid(m) as u64,
        }
    }

    pub fn one(&self) -> TruncatedRingElement {
        self.element(1, 0)
    }

    pub fn zero(&self) -> TruncatedRingElement {
        self.element(0, 0)
    }

    /// `√p`
    pub fn sqrt_p(&self) -> TruncatedRingElement {
        self.element(0, 1)
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.modulus as u128) as u64
    }

    /// Inverse of a unit of `Z/p^k`.
    fn inv_integer(&self, a: u64) -> Option<u64> {
        let (mut old_r, mut r) = (a as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        (old_r == 1).then(|| old_s.rem_euclid(self.modulus as i128) as u64)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> TruncatedRingElement {
        TruncatedRingElement {
            ring: *self,
            u: rng.gen_range(0..self.modulus),
            v: rng.gen_range(0..self.modulus),
        }
    }
}

/// `u + v·√p` in `Z[√p]/(p^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncatedRingElement {
    ring: TruncatedRing,
    pub u: u64,
    pub v: u64,
}

impl TruncatedRingElement {
    pub fn ring(&self) -> TruncatedRing {
        self.ring
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.ring.modulus;
        Self {
            ring: self.ring,
            u: (self.u + other.u) % m,
            v: (self.v + other.v) % m,
        }
    }

    pub fn neg(&self) -> Self {
        let m = self.ring.modulus;
        Self {
            ring: self.ring,
            u: (m - self.u) % m,
            v: (m - self.v) % m,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let r = &self.ring;
        let m = r.modulus;
        // (u + v√p)(u' + v'√p) = uu' + p vv' + (uv' + vu')√p
        let pvv = r.mulm(r.mulm(self.v, other.v), r.p % m);
        Self {
            ring: self.ring,
            u: (r.mulm(self.u, other.u) + pvv) % m,
            v: (r.mulm(self.u, other.v) + r.mulm(self.v, other.u)) % m,
        }
    }

    /// Units are exactly the elements with `u ≢ 0 (mod p)`.
    pub fn is_unit(&self) -> bool {
        !self.u.is_multiple_of(self.ring.p)
    }

    /// `(u − v√p) / (u² − p v²)`.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let r = &self.ring;
        let conj = Self {
            ring: *r,
            u: self.u,
            v: (r.modulus - self.v) % r.modulus,
        };
        let norm = self.mul(&conj);
        debug_assert_eq!(norm.v, 0);
        let n_inv = r.inv_integer(norm.u)?;
        Some(conj.mul(&r.element(n_inv as i64, 0)))
    }

    /// Coordinates `(u, v)` as a vector in the `Z`-basis `(1, √p)`.
    pub fn coords(&self) -> [u64; 2] {
        [self.u, self.v]
    }
}

impl fmt::Display for TruncatedRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}√{}", self.u, self.v, self.ring.p)
    }
}

/// An invertible `2×2` matrix over `R/(p^k)`, acting on the free rank-2
/// module with `R`-basis `(f₁, f₂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RAutomorphism {
    /// `entries[i][j]` is the `f_{i+1}`-coefficient of the image of `f_{j+1}`.
    pub entries: [[TruncatedRingElement; 2]; 2],
}

impl RAutomorphism {
    pub fn new(entries: [[TruncatedRingElement; 2]; 2]) -> Result<Self, LatticeError> {
        let a = Self { entries };
        if !a.determinant().is_unit() {
            return Err(LatticeError::NotInvertible);
        }
        Ok(a)
    }

    /// A uniformly random matrix, resampled until its determinant is a unit.
    pub fn random<G: Rng + ?Sized>(ring: TruncatedRing, rng: &mut G) -> Self {
        loop {
            let entries = [
                [ring.random_element(rng), ring.random_element(rng)],
                [ring.random_element(rng), ring.random_element(rng)],
            ];
            if let Ok(a) = Self::new(entries) {
                return a;
            }
        }
    }

    pub fn determinant(&self) -> TruncatedRingElement {
        let [[a, b], [c, d]] = &self.entries;
        a.mul(d).sub(&b.mul(c))
    }

    /// The `4×4` integer matrix of this map in the `Z`-basis
    /// `(f₁, √p f₁, f₂, √p f₂)`; column `j` is the image of basis vector `j`.
    pub fn to_z_matrix(&self) -> ModMatrix {
        let ring = self.entries[0][0].ring();
        let s = ring.sqrt_p();
        let mut columns = Vec::with_capacity(4);
        for j in 0..2 {
            for scalar in [ring.one(), s] {
                let top = self.entries[0][j].mul(&scalar);
                let bottom = self.entries[1][j].mul(&scalar);
                columns.push(vec![top.u, top.v, bottom.u, bottom.v]);
            }
        }
        ModMatrix::from_columns(&columns, ring.modulus())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ring_arithmetic() {
        let r = TruncatedRing::new(5, 3).unwrap();
        let s = r.sqrt_p();
        assert_eq!(s.mul(&s), r.element(5, 0));
        let x = r.element(3, 7);
        let y = r.element(-2, 4);
        // (3 + 7√5)(-2 + 4√5) = -6 + 140 + (12 - 14)√5
        assert_eq!(x.mul(&y), r.element(134, -2));
        assert!(x.is_unit());
        assert!(!r.element(10, 1).is_unit());
        assert_eq!(x.mul(&x.inverse().unwrap()), r.one());
        assert!(r.element(5, 3).inverse().is_none());
    }

    #[test]
    fn inverses_of_random_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(3, 2), (7, 3), (13, 3)] {
            let r = TruncatedRing::new(p, k).unwrap();
            for _ in 0..200 {
                let x = r.random_element(&mut rng);
                match x.inverse() {
                    Some(inv) => assert_eq!(x.mul(&inv), r.one()),
                    None => assert!(!x.is_unit()),
                }
            }
        }
    }

    #[test]
    fn z_matrix_commutes_with_sqrt_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = TruncatedRing::new(7, 3).unwrap();
        let m = r.modulus();
        let sqrt_p = ModMatrix::from_rows(
            &[
                vec![0, 7, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 0, 7],
                vec![0, 0, 1, 0],
            ],
            m,
        );
        for _ in 0..20 {
            let t = RAutomorphism::random(r, &mut rng).to_z_matrix();
            assert_eq!(t.mul(&sqrt_p), sqrt_p.mul(&t));
            assert_eq!(t.rank_mod_prime(7), 4);
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let r = TruncatedRing::new(5, 2).unwrap();
        let e = [[r.one(), r.one()], [r.one(), r.one()]];
        assert!(matches!(
            RAutomorphism::new(e),
            Err(LatticeError::NotInvertible)
        ));
    }
}
