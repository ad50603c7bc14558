//! Exact angular-momentum decomposition of `p̂_{i1} ... p̂_{iL}`.
//!
//! The rank-`L` tensor product of a unit vector splits into components of
//! definite angular momentum `l = L, L-2, ..., 1 or 0`. Each component is a
//! rational combination of the symmetric structures `X^{L,n}` (`n` unit
//! vectors, `(L-n)/2` Kronecker deltas), represented here by [`XCombo`].
//!
//! Modules:
//! - [`combinatorics`]: factorials, binomials and the closed-form coefficients.
//! - [`tensor`]: symmetric tensors, X-symbols and their contraction, trace
//!   and product identities.
//! - [`decomposition`]: components by closed form, recursion and product form.
//! - [`fourier`]: symbolic transforms of `p^n p̂_{i1}...p̂_{iL}` and the
//!   derivative identities that follow from them.
//! - [`oracle`]: quadrature and exact-polynomial cross-checks.
//! - [`verify`]: the verification suites behind `angdecomp verify`.
//! - [`render`]: text, JSON and LaTeX output.

pub mod combinatorics;
pub mod decomposition;
pub mod error;
pub mod fourier;
pub mod oracle;
pub mod render;
pub mod tensor;
pub mod verify;

pub use combinatorics::{PiScaled, Rational};
pub use error::{Error, Result};
pub use tensor::{MultiIndex, SymTensor, XCombo};
