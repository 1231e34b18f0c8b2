//! Exact computation of the number of `F_p`-rational irreducible components
//! of the genus-2 Siegel supersingular locus, together with finite models of
//! the lattice constructions that show such components exist in every
//! dimension.
//!
//! The crate is organized bottom-up:
//!
//! * [`arithmetic`]: primality, Kronecker symbols, quadratic characters.
//! * [`specialvalues`]: `B_{2,χ}` and imaginary quadratic class numbers,
//!   each computed two independent ways.
//! * [`sigmacount`]: the component count with its term breakdown, and
//!   existence predicates for higher dimensions.
//! * [`dieudonne`]: truncated Dieudonné lattices over `Z[√p]`, the Fermat
//!   locus on `P¹`, and Weil-restriction doubling.
//! * [`verify`]: property sweeps shared by the CLI and the test suites.
//! * [`cli`]: the `superspecial` command-line front end.
//!
//! ```
//! use superspecial::sigmacount::sigma2_count;
//!
//! assert_eq!(sigma2_count(13).unwrap().total, 2);
//! ```

pub mod arithmetic;
pub mod cli;
pub mod dieudonne;
pub mod record;
pub mod sigmacount;
pub mod specialvalues;
pub mod verify;

pub use arithmetic::{Integer, QuadraticCharacter, Rational};
pub use sigmacount::{sigma2_count, SigmaCountBreakdown};
