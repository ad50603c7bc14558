//! Symbolic three-dimensional Fourier transforms of `p^n p̂_{i1}...p̂_{iL}`.
//!
//! The monomial is split into its angular-momentum components; each
//! component `l` transforms independently into a radial factor times the
//! same component written in `x̂`. A radial factor is either a power law
//! `c / r^m` or, for `n = l`, the formal product `c r^(-l) δ³(r)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::{chi, dfact, PiScaled, Rational};
use crate::decomposition::{all_components, max_component};
use crate::error::{Error, Result};
use crate::tensor::XCombo;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialKind {
    /// `coefficient / r^r_power`.
    PowerLaw,
    /// `coefficient * δ³(r) / r^r_power`.
    ///
    /// A formal token, never evaluated numerically. It is defined by doing
    /// the angular integrals before the radial one.
    Delta,
}

/// One radial channel of a transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialTerm {
    pub kind: RadialKind,
    pub coefficient: PiScaled,
    pub r_power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Channel {
    pub ell: u32,
    pub radial: RadialTerm,
    /// Angular structure, with the X-symbols read in `x̂`.
    pub angular: XCombo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierResult {
    pub n: i64,
    pub rank: u32,
    pub channels: Vec<Channel>,
}

/// Radial transform of `p^n` on channel `ell`, including the
/// `i^l / (2 pi^2)` prefactor.
pub fn radial_factor(n: i64, ell: u32) -> Result<RadialTerm> {
    let l = i64::from(ell);
    if n == l {
        // 2 pi^2 (2l+1)!! from the radial integral cancels the 1/(2 pi^2).
        return Ok(RadialTerm {
            kind: RadialKind::Delta,
            coefficient: PiScaled::new(Rational::from_integer(dfact(2 * l + 1)), 0, l),
            r_power: ell,
        });
    }
    let chi = chi(n, ell)?;
    let prefactor = PiScaled::new(Rational::new(BigInt::one(), BigInt::from(2)), -2, l);
    Ok(RadialTerm {
        kind: RadialKind::PowerLaw,
        coefficient: &prefactor * &chi,
        r_power: (n + 3) as u32,
    })
}

/// Per-channel transform of `p^n` times the rank-`L` unit-vector monomial.
///
/// Fails with the first channel (in descending `l`) whose radial integral
/// is undefined.
pub fn fourier_transform(n: i64, rank: u32) -> Result<FourierResult> {
    let channels = all_components(rank)
        .into_iter()
        .map(|(ell, angular)| {
            Ok(Channel {
                ell,
                radial: radial_factor(n, ell)?,
                angular,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FourierResult { n, rank, channels })
}

impl FourierResult {
    pub fn channel_ells(&self) -> Vec<u32> {
        self.channels.iter().map(|c| c.ell).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// `(∂...∂)^k_k (1/r)`.
    OneByR,
    /// `(∂...∂)^k_k δ³(r)`.
    Delta,
}

/// `(∂_{i1}...∂_{ik})^k_k f = coefficient / r^r_power (x̂...x̂)^k_k [δ³(r)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeIdentity {
    pub kind: IdentityKind,
    pub k: u32,
    pub coefficient: Rational,
    pub r_power: u32,
    /// Traceless rank-`k` structure in `x̂`.
    pub angular: XCombo,
}

impl DerivativeIdentity {
    /// Whether the right-hand side carries a `δ³(r)` factor.
    pub fn has_delta(&self) -> bool {
        self.kind == IdentityKind::Delta
    }
}

fn check_order(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("derivative order k must be >= 1".into()));
    }
    Ok(())
}

fn signed(k: u32, magnitude: BigInt) -> Rational {
    let value = Rational::from_integer(magnitude);
    if k.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

/// `(∂...∂)^k_k (1/r) = (-1)^k (2k-1)!! / r^(k+1) (x̂...x̂)^k_k`, valid away
/// from the origin. For `k = 2` the full distributional form carries an
/// extra `-(4 pi / 3) δ_ij δ³(r)`, which is not part of this record.
pub fn derivative_identity_onebyr(k: u32) -> Result<DerivativeIdentity> {
    check_order(k)?;
    Ok(DerivativeIdentity {
        kind: IdentityKind::OneByR,
        k,
        coefficient: signed(k, dfact(2 * i64::from(k) - 1)),
        r_power: k + 1,
        angular: max_component(k),
    })
}

/// `(∂...∂)^k_k δ³(r) = (-1)^k (2k+1)!! / r^k (x̂...x̂)^k_k δ³(r)`.
pub fn derivative_identity_delta(k: u32) -> Result<DerivativeIdentity> {
    check_order(k)?;
    Ok(DerivativeIdentity {
        kind: IdentityKind::Delta,
        k,
        coefficient: signed(k, dfact(2 * i64::from(k) + 1)),
        r_power: k,
        angular: max_component(k),
    })
}
