//! A free rank-2 module `M₀` over `R = Z[√p]`, truncated at `p^k`, carrying
//! a perfect alternating `Z`-valued pairing with `⟨√p x, y⟩ = ⟨x, √p y⟩`.
//!
//! Coordinates are always taken in the `Z`-basis `(f₁, √p f₁, f₂, √p f₂)`
//! for the lattice's own `R`-basis `(f₁, f₂)`. Frobenius and Verschiebung
//! both act as multiplication by `√p`.

use crate::arithmetic::is_prime;

use super::field::{FieldElement, PrimePowerField, ProjectivePoint};
use super::matrix::ModMatrix;
use super::ring::{RAutomorphism, TruncatedRing, TruncatedRingElement};
use super::LatticeError;

/// Default truncation level.
pub const DEFAULT_LEVEL: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RLattice {
    ring: TruncatedRing,
    gram: ModMatrix,
    sqrt_p: ModMatrix,
}

/// Matrix of multiplication by `√p` in the basis `(f₁, √p f₁, f₂, √p f₂)`.
fn sqrt_p_matrix(p: u64, modulus: u64) -> ModMatrix {
    let p = p as i64;
    ModMatrix::from_rows(
        &[
            vec![0, p, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, p],
            vec![0, 0, 1, 0],
        ],
        modulus,
    )
}

impl RLattice {
    /// Checks that `gram` is a `4×4` alternating matrix over `Z/p^k` that is
    /// compatible with the `R`-action. Perfectness is not required here;
    /// operations that need it report [`LatticeError::DegenerateForm`].
    pub fn new(p: u64, k: u32, gram: ModMatrix) -> Result<Self, LatticeError> {
        if p == 2 {
            return Err(LatticeError::Unsupported(
                "lattices need 2 to be invertible; p = 2 is excluded".into(),
            ));
        }
        if !is_prime(p)? {
            return Err(crate::arithmetic::ArithmeticError::NotPrime(p).into());
        }
        if k < 2 {
            return Err(LatticeError::Unsupported(format!(
                "truncation level {k} is below 2"
            )));
        }
        let ring = TruncatedRing::new(p, k)?;
        if gram.rows() != 4 || gram.cols() != 4 || gram.modulus() != ring.modulus() {
            return Err(LatticeError::Shape(format!(
                "expected a 4x4 Gram matrix mod {}, got {}x{} mod {}",
                ring.modulus(),
                gram.rows(),
                gram.cols(),
                gram.modulus()
            )));
        }
        if !gram.is_alternating() {
            return Err(LatticeError::NotAlternating);
        }
        let sqrt_p = sqrt_p_matrix(p, ring.modulus());
        // ⟨√p x, y⟩ = ⟨x, √p y⟩  ⇔  Sᵀ G = G S
        if sqrt_p.transpose().mul(&gram) != gram.mul(&sqrt_p) {
            return Err(LatticeError::NotRCompatible);
        }
        Ok(Self { ring, gram, sqrt_p })
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    pub fn level(&self) -> u32 {
        self.ring.level()
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    pub fn ring(&self) -> TruncatedRing {
        self.ring
    }

    pub fn gram(&self) -> &ModMatrix {
        &self.gram
    }

    /// Multiplication by `√p`; this is also the action of Frobenius and of
    /// Verschiebung.
    pub fn sqrt_p_action(&self) -> &ModMatrix {
        &self.sqrt_p
    }

    /// `⟨x, y⟩ mod p^k`.
    pub fn pair(&self, x: &[u64], y: &[u64]) -> u64 {
        self.gram.bilinear(x, y)
    }

    pub fn apply_sqrt_p(&self, x: &[u64]) -> Vec<u64> {
        self.sqrt_p.mul_vec(x)
    }

    pub fn is_perfect(&self) -> bool {
        self.gram.rank_mod_prime(self.p()) == 4
    }

    /// `ψ(x, y) = ⟨x, √p y⟩ + ⟨x, y⟩·√p`, the `R`-valued form with
    /// `⟨x, y⟩ = Tr((2√p)⁻¹ ψ(x, y))`.
    pub fn psi(&self, x: &[u64], y: &[u64]) -> TruncatedRingElement {
        let u = self.pair(x, &self.apply_sqrt_p(y));
        let v = self.pair(x, y);
        self.ring.element(u as i64, v as i64)
    }

    /// Coordinates of `a·x` for `a ∈ R`.
    pub fn scalar_mul(&self, a: &TruncatedRingElement, x: &[u64]) -> Vec<u64> {
        let m = self.modulus() as u128;
        let sx = self.apply_sqrt_p(x);
        x.iter()
            .zip(&sx)
            .map(|(&xi, &si)| ((a.u as u128 * xi as u128 + a.v as u128 * si as u128) % m) as u64)
            .collect()
    }

    /// The same module re-expressed in the `R`-basis `(T f₁, T f₂)`:
    /// the new Gram matrix is `Tᵀ G T`.
    pub fn transform(&self, t: &RAutomorphism) -> Result<Self, LatticeError> {
        let tz = t.to_z_matrix();
        if tz.modulus() != self.modulus() {
            return Err(LatticeError::Shape(
                "automorphism over a different ring".into(),
            ));
        }
        let gram = tz.transpose().mul(&self.gram).mul(&tz);
        Self::new(self.p(), self.level(), gram)
    }
}

/// `M₀` with `⟨f₁, f₂⟩ = ⟨√p f₁, √p f₂⟩ = 0` and
/// `⟨f₁, √p f₂⟩ = ⟨√p f₁, f₂⟩ = 1`, extended alternately.
pub fn make_step1_lattice(p: u64, k: u32) -> Result<RLattice, LatticeError> {
    let modulus = TruncatedRing::new(p, k)?.modulus();
    // basis order (f₁, √p f₁, f₂, √p f₂)
    let gram = ModMatrix::from_rows(
        &[
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, -1, 0, 0],
            vec![-1, 0, 0, 0],
        ],
        modulus,
    );
    RLattice::new(p, k, gram)
}

/// An `R`-basis `(e₁, e₂)` in coordinates, with
/// `⟨e₁,e₂⟩ = ⟨√p e₁,√p e₂⟩ = 0` and `⟨e₁,√p e₂⟩ = ⟨√p e₁,e₂⟩ = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianBasis {
    pub e1: Vec<u64>,
    pub e2: Vec<u64>,
}

/// The four pairings `(⟨e₁,e₂⟩, ⟨√p e₁,√p e₂⟩, ⟨e₁,√p e₂⟩, ⟨√p e₁,e₂⟩)`.
pub fn lagrangian_pairings(lattice: &RLattice, e1: &[u64], e2: &[u64]) -> [u64; 4] {
    let se1 = lattice.apply_sqrt_p(e1);
    let se2 = lattice.apply_sqrt_p(e2);
    [
        lattice.pair(e1, e2),
        lattice.pair(&se1, &se2),
        lattice.pair(e1, &se2),
        lattice.pair(&se1, e2),
    ]
}

/// Finds `e₁, e₂` with `ψ(e₁, e₂) = 1` and checks the four target pairings
/// before returning them.
pub fn lagrangian_basis(lattice: &RLattice) -> Result<LagrangianBasis, LatticeError> {
    if !lattice.is_perfect() {
        return Err(LatticeError::DegenerateForm);
    }
    let f1 = vec![1, 0, 0, 0];
    let f2 = vec![0, 0, 1, 0];
    // ψ is alternating and R-bilinear on a free rank-2 module, so it is
    // determined by ψ(f₁, f₂), which must be a unit when the form is perfect.
    let r = lattice.psi(&f1, &f2);
    let r_inv = r.inverse().ok_or(LatticeError::DegenerateForm)?;
    let e1 = f1;
    let e2 = lattice.scalar_mul(&r_inv, &f2);
    let got = lagrangian_pairings(lattice, &e1, &e2);
    if got != [0, 0, 1, 1] {
        return Err(LatticeError::Consistency(format!(
            "reconstructed basis has pairings {got:?}"
        )));
    }
    Ok(LagrangianBasis { e1, e2 })
}

/// An index-`p` sublattice `√p M₀ ⊂ M ⊂ M₀`, recorded by the line it cuts
/// out in `M₀/√p M₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLine {
    pub point: ProjectivePoint,
    /// `a e₁ + b e₂` for the normalized `[a : b]`.
    pub spanning_vector: Vec<u64>,
    /// Four `Z`-generators of `M`: the spanning vector, `√p e₁`, `√p e₂` and
    /// `p` times the complementary basis vector.
    pub generators: Vec<Vec<u64>>,
}

fn combine(lattice: &RLattice, a: u64, x: &[u64], b: u64, y: &[u64]) -> Vec<u64> {
    let m = lattice.modulus() as u128;
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| ((a as u128 * xi as u128 + b as u128 * yi as u128) % m) as u64)
        .collect()
}

/// One entry per point of `P¹(F_p)`, i.e. per line of the plane
/// `M₀/√p M₀ = span(ē₁, ē₂)`.
pub fn lines_in_reduction(lattice: &RLattice) -> Result<Vec<ReductionLine>, LatticeError> {
    let basis = lagrangian_basis(lattice)?;
    let p = lattice.p();
    let field = PrimePowerField::new(p, 1)?;
    let se1 = lattice.apply_sqrt_p(&basis.e1);
    let se2 = lattice.apply_sqrt_p(&basis.e2);
    ProjectivePoint::all(field)
        .into_iter()
        .map(|point| {
            let (a, b) = point.coordinates();
            let v = combine(lattice, a.c0, &basis.e1, b.c0, &basis.e2);
            let complement = if a.is_zero() { &basis.e1 } else { &basis.e2 };
            let pc = combine(lattice, p, complement, 0, complement);
            Ok(ReductionLine {
                point,
                spanning_vector: v.clone(),
                generators: vec![v, se1.clone(), se2.clone(), pc],
            })
        })
        .collect()
}

/// The `2×2` matrix of `(x, y) = ⟨x, F y⟩ mod p` on `(ē₁, ē₂)`.
pub fn reduced_frobenius_pairing(lattice: &RLattice) -> Result<[[u64; 2]; 2], LatticeError> {
    let basis = lagrangian_basis(lattice)?;
    let p = lattice.p();
    let es = [&basis.e1, &basis.e2];
    let mut out = [[0; 2]; 2];
    for (i, x) in es.iter().enumerate() {
        for (j, y) in es.iter().enumerate() {
            out[i][j] = lattice.pair(x, &lattice.apply_sqrt_p(y)) % p;
        }
    }
    Ok(out)
}

/// Whether the sublattice for `line` satisfies `(M̄, M̄) = 0` for the pairing
/// `(x, y) = ⟨x, F y⟩` reduced mod `p`. Since `M̄` is spanned by
/// `v = a ē₁ + b ē₂`, this is `(v, v) = 0`.
pub fn kernel_condition(line: &ProjectivePoint, lattice: &RLattice) -> Result<bool, LatticeError> {
    let field = line.field();
    if field.degree() != 1 || field.characteristic() != lattice.p() {
        return Err(LatticeError::Shape(format!(
            "line over F_{}^{} does not match lattice prime {}",
            field.characteristic(),
            field.degree(),
            lattice.p()
        )));
    }
    let p = lattice.p();
    let pairing = reduced_frobenius_pairing(lattice)?;
    let (a, b) = line.coordinates();
    let coeffs = [a.c0, b.c0];
    let mut vv = 0u128;
    for i in 0..2 {
        for j in 0..2 {
            vv += coeffs[i] as u128 * pairing[i][j] as u128 * coeffs[j] as u128;
        }
    }
    Ok(vv.is_multiple_of(p as u128))
}

/// `(M₀, √p M₀) ⊂ pZ`: the Frobenius pairing descends to `M₀/√p M₀`.
pub fn frobenius_pairing_descends(lattice: &RLattice) -> bool {
    let p = lattice.p();
    let basis: Vec<Vec<u64>> = (0..4)
        .map(|i| (0..4).map(|j| u64::from(i == j)).collect())
        .collect();
    basis.iter().all(|x| {
        basis.iter().all(|y| {
            let vy = lattice.apply_sqrt_p(y);
            lattice
                .pair(x, &lattice.apply_sqrt_p(&vy))
                .is_multiple_of(p)
                && lattice
                    .pair(&vy, &lattice.apply_sqrt_p(x))
                    .is_multiple_of(p)
        })
    })
}

impl ReductionLine {
    /// Image of the spanning vector in `M₀/√p M₀`, as `(a, b)` in `F_p`.
    pub fn reduced_coordinates(&self) -> (FieldElement, FieldElement) {
        self.point.coordinates()
    }
}
