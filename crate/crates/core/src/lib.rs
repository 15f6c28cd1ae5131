//! EFB (extended Fock basis) arithmetic for the Clifford algebra `Cl(m,m)`.

pub mod bench;
pub mod cli;
pub mod efb;
pub mod error;
pub mod gamma;
pub mod linalg;
pub mod matrix;
pub mod random;
pub mod scalar;
pub mod selftest;
pub mod signature;
pub mod spinor;
pub mod text;

pub use efb::{EfbElement, EfbKey, Factor, GammaEigen, Multivector, NullKind};
pub use error::{EfbError, Result};
pub use gamma::{GammaBlade, GammaMultivector};
pub use matrix::RepMatrix;
pub use scalar::{Rational, Scalar, ScalarMode};
pub use signature::{AlgebraConfig, Signature};
