//! Module-level model of Weil restriction from `F_{p²}` to `F_p`.
//!
//! A `c`-dimensional superspecial variety over `F_{p²}` with Frobenius `−p`
//! is modeled by a `2c×2c` matrix `φ` over `Z/p^k` with `φ² = −p` and an
//! alternating pairing `gram₁`. Its restriction of scalars has rank `4c`,
//! Frobenius `[[0, φ], [φ, 0]]` (the two Galois conjugates swapped) and the
//! block-diagonal pairing `diag(gram₁, gram₁)`.

use super::matrix::ModMatrix;
use super::ring::TruncatedRing;
use super::LatticeError;
use crate::arithmetic::require_prime;

/// Kernel dimensions over `F_p` of `x ↦ ⟨·, F x⟩` reduced mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelDecomposition {
    pub total: usize,
    pub blocks: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledModule {
    pub c: usize,
    pub p: u64,
    pub k: u32,
    pub frobenius: ModMatrix,
    pub gram: ModMatrix,
    pub kernel: KernelDecomposition,
}

impl DoubledModule {
    /// Dimension of the doubled variety, `2c`.
    pub fn dimension(&self) -> usize {
        2 * self.c
    }
}

/// Builds the doubled module and checks `F² = −p` and that the polarization
/// kernel splits as two Frobenius kernels of dimension `c` each (so the
/// total kernel has order `p^{2c}`).
pub fn weil_double(
    phi: &ModMatrix,
    gram1: &ModMatrix,
    p: u64,
    k: u32,
) -> Result<DoubledModule, LatticeError> {
    require_prime(p)?;
    let ring = TruncatedRing::new(p, k)?;
    let m = ring.modulus();
    let n = phi.rows();
    if !phi.is_square() || n == 0 || n % 2 == 1 {
        return Err(LatticeError::Shape(format!(
            "φ must be square of even size, got {}x{}",
            phi.rows(),
            phi.cols()
        )));
    }
    if gram1.rows() != n || gram1.cols() != n {
        return Err(LatticeError::Shape(format!(
            "pairing block must be {n}x{n}, got {}x{}",
            gram1.rows(),
            gram1.cols()
        )));
    }
    if phi.modulus() != m || gram1.modulus() != m {
        return Err(LatticeError::Shape(format!("entries must live in Z/{m}")));
    }
    let minus_p = ModMatrix::identity(n, m).scale(-(p as i64));
    if phi.mul(phi) != minus_p {
        return Err(LatticeError::Precondition(
            "φ² is not −p times the identity".into(),
        ));
    }
    if !gram1.is_alternating() {
        return Err(LatticeError::Precondition(
            "pairing block is not alternating".into(),
        ));
    }
    let c = n / 2;

    let frobenius = ModMatrix::block_antidiag(phi, phi);
    let gram = ModMatrix::block_diag(gram1, gram1);
    if frobenius.mul(&frobenius) != ModMatrix::identity(2 * n, m).scale(-(p as i64)) {
        return Err(LatticeError::Consistency(
            "doubled Frobenius does not square to −p".into(),
        ));
    }

    let block = gram1.mul(phi);
    let block_dim = block.kernel_dim_mod_prime(p);
    let total = gram.mul(&frobenius).kernel_dim_mod_prime(p);
    let kernel = KernelDecomposition {
        total,
        blocks: [block_dim, block_dim],
    };
    if total != 2 * block_dim {
        return Err(LatticeError::Consistency(format!(
            "kernel of dimension {total} does not split into two blocks of dimension {block_dim}"
        )));
    }
    if block_dim != c {
        return Err(LatticeError::Consistency(format!(
            "block kernel has dimension {block_dim}, expected {c}"
        )));
    }
    Ok(DoubledModule {
        c,
        p,
        k,
        frobenius,
        gram,
        kernel,
    })
}

/// `[[0, −1], [p, 0]]`, the basic `2×2` block with square `−p`.
pub fn basic_phi_block(p: u64, modulus: u64) -> ModMatrix {
    ModMatrix::from_rows(&[vec![0, -1], vec![p as i64, 0]], modulus)
}

/// `diag(B, …, B)` with `B` from [`basic_phi_block`], and the standard
/// symplectic pairing of the same size.
pub fn standard_doubling_input(
    c: usize,
    p: u64,
    k: u32,
) -> Result<(ModMatrix, ModMatrix), LatticeError> {
    let m = TruncatedRing::new(p, k)?.modulus();
    let block = basic_phi_block(p, m);
    let j = ModMatrix::from_rows(&[vec![0, 1], vec![-1, 0]], m);
    let mut phi = block.clone();
    let mut gram = j.clone();
    for _ in 1..c {
        phi = ModMatrix::block_diag(&phi, &block);
        gram = ModMatrix::block_diag(&gram, &j);
    }
    Ok((phi, gram))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_c1_p5() {
        let m = 125;
        let phi = ModMatrix::from_rows(&[vec![0, -1], vec![5, 0]], m);
        let gram = ModMatrix::from_rows(&[vec![0, 1], vec![-1, 0]], m);
        let d = weil_double(&phi, &gram, 5, 3).unwrap();
        assert_eq!(d.frobenius.rows(), 4);
        assert_eq!(
            d.frobenius.mul(&d.frobenius),
            ModMatrix::identity(4, m).scale(-5)
        );
        assert_eq!(
            d.kernel,
            KernelDecomposition {
                total: 2,
                blocks: [1, 1]
            }
        );
        assert_eq!(d.dimension(), 2);
        // block-diagonal pairing
        assert_eq!(d.gram.get(0, 1), 1);
        assert_eq!(d.gram.get(0, 3), 0);
        assert_eq!(d.gram.get(2, 3), 1);
    }

    #[test]
    fn identity_phi_is_rejected() {
        let m = 125;
        let phi = ModMatrix::identity(2, m);
        let gram = ModMatrix::from_rows(&[vec![0, 1], vec![-1, 0]], m);
        assert!(matches!(
            weil_double(&phi, &gram, 5, 3),
            Err(LatticeError::Precondition(_))
        ));
    }

    #[test]
    fn doubling_c2_p7() {
        let (phi, gram) = standard_doubling_input(2, 7, 3).unwrap();
        let d = weil_double(&phi, &gram, 7, 3).unwrap();
        assert_eq!(d.frobenius.rows(), 8);
        assert_eq!(
            d.frobenius.mul(&d.frobenius),
            ModMatrix::identity(8, 343).scale(-7)
        );
        assert_eq!(
            d.kernel,
            KernelDecomposition {
                total: 4,
                blocks: [2, 2]
            }
        );
    }

    #[test]
    fn degenerate_pairing_breaks_kernel_split() {
        let (phi, _) = standard_doubling_input(1, 5, 3).unwrap();
        let zero = ModMatrix::zeros(2, 2, 125);
        assert!(matches!(
            weil_double(&phi, &zero, 5, 3),
            Err(LatticeError::Consistency(_))
        ));
    }

    #[test]
    fn shape_errors() {
        let m = 125;
        let odd = ModMatrix::identity(3, m);
        let g = ModMatrix::identity(3, m);
        assert!(matches!(
            weil_double(&odd, &g, 5, 3),
            Err(LatticeError::Shape(_))
        ));
        let (phi, gram) = standard_doubling_input(1, 5, 2).unwrap();
        assert!(matches!(
            weil_double(&phi, &gram, 5, 3),
            Err(LatticeError::Shape(_))
        ));
    }
}
