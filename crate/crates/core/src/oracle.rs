//! Independent verification routes.
//!
//! Nothing here uses the closed-form coefficients. Numerically, the
//! Legendre projector `(2l+1) ∫ dΩ'/4π p̂'_{i1}...p̂'_{iL} P_l(p̂'·u)` is
//! evaluated with a product quadrature on the sphere. Exactly, [`Poly3`]
//! carries rational polynomials in `(x, y, z)` so the Laplacian identity and
//! the `1/r` derivative identity can be checked symbolically.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{dfact, fact, Rational};
use crate::decomposition::max_component;
use crate::error::{Error, Result};
use crate::fourier::derivative_identity_onebyr;
use crate::tensor::{
    component_count, evaluate_x_unchecked, MultiIndex, Ring, Scalar, SymTensor, XCombo,
};

/// `P_l(x)` by the three-term recursion from `P_0 = 1`, `P_1 = x`.
/// Exact when `T` is [`Rational`].
pub fn legendre<T: Scalar>(ell: u32, x: &T) -> T {
    let mut prev = T::one();
    if ell == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for k in 2..=i64::from(ell) {
        let next = (T::from_int(2 * k - 1) * x.clone() * cur.clone() - T::from_int(k - 1) * prev)
            / T::from_int(k);
        prev = cur;
        cur = next;
    }
    cur
}

/// Value and derivative of `P_m` at `x`.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let mf = m as f64;
    (p1, mf * (x * p1 - p0) / (x * x - 1.0))
}

const NEWTON_TOLERANCE: f64 = 1e-15;
const NEWTON_MAX_ITERATIONS: usize = 100;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(count: usize) -> Vec<(f64, f64)> {
    (0..count)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (count as f64 + 0.5)).cos();
            for _ in 0..NEWTON_MAX_ITERATIONS {
                let (p, dp) = legendre_with_derivative(count, x);
                let step = p / dp;
                x -= step;
                if step.abs() < NEWTON_TOLERANCE {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(count, x);
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Product rule on the unit sphere, normalized so that it computes
/// `∫ dΩ / 4π`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<([f64; 3], f64)>,
    /// Polynomials in the unit-vector components up to this total degree
    /// are integrated exactly up to rounding.
    pub exact_degree: u32,
}

impl QuadratureRule {
    pub fn integrate(&self, f: impl Fn(&[f64; 3]) -> f64) -> f64 {
        self.nodes.iter().map(|(p, w)| w * f(p)).sum()
    }
}

/// Gauss-Legendre in `cos θ` with `ceil((degree+1)/2)` nodes times
/// `degree + 1` uniform azimuths.
pub fn build_quadrature(degree: u32) -> QuadratureRule {
    let polar = (degree as usize + 2) / 2;
    let azimuthal = degree as usize + 1;
    let mut nodes = Vec::with_capacity(polar * azimuthal);
    for (cos_t, w) in gauss_legendre(polar) {
        let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
        for j in 0..azimuthal {
            let phi = 2.0 * PI * j as f64 / azimuthal as f64;
            nodes.push((
                [sin_t * phi.cos(), sin_t * phi.sin(), cos_t],
                w / 2.0 / azimuthal as f64,
            ));
        }
    }
    QuadratureRule {
        nodes,
        exact_degree: (2 * polar as u32 - 1).min(azimuthal as u32 - 1),
    }
}

fn monomial_f64(p: &[f64; 3], idx: MultiIndex) -> f64 {
    let [a, b, c] = idx.0;
    p[0].powi(a as i32) * p[1].powi(b as i32) * p[2].powi(c as i32)
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Applies the `ell` Legendre projector to a tensor-valued function of the
/// direction. `field_degree` is the polynomial degree of `field`; the rule
/// must integrate degree `field_degree + ell` exactly.
pub fn project_field(
    rule: &QuadratureRule,
    rank: u32,
    field_degree: u32,
    ell: u32,
    u: &[f64; 3],
    field: impl Fn(&[f64; 3]) -> SymTensor<f64>,
) -> Result<SymTensor<f64>> {
    f64::check_unit(u)?;
    let needed = field_degree + ell;
    if rule.exact_degree < needed {
        return Err(Error::Validation(format!(
            "quadrature exact to degree {} but projection needs {needed}",
            rule.exact_degree
        )));
    }
    let scale = f64::from(2 * ell + 1);
    let mut out = SymTensor::zeros(rank);
    for (p, w) in &rule.nodes {
        let weight = w * scale * legendre(ell, &dot(p, u));
        let value = field(p);
        out = &out + &value.scaled(&weight);
    }
    Ok(out)
}

/// [`project_field`] with the field already evaluated at every node of
/// `rule`, in node order.
pub fn project_tabulated(
    rule: &QuadratureRule,
    field_degree: u32,
    ell: u32,
    u: &[f64; 3],
    fields: &[SymTensor<f64>],
) -> Result<SymTensor<f64>> {
    f64::check_unit(u)?;
    let needed = field_degree + ell;
    if rule.exact_degree < needed {
        return Err(Error::Validation(format!(
            "quadrature exact to degree {} but projection needs {needed}",
            rule.exact_degree
        )));
    }
    if fields.len() != rule.nodes.len() || fields.is_empty() {
        return Err(Error::Validation(format!(
            "expected {} tabulated values, got {}",
            rule.nodes.len(),
            fields.len()
        )));
    }
    let scale = f64::from(2 * ell + 1);
    let rank = fields[0].rank();
    let mut out = vec![0.0; fields[0].values().len()];
    for ((p, w), value) in rule.nodes.iter().zip(fields) {
        if value.rank() != rank {
            return Err(Error::Validation("tabulated values differ in rank".into()));
        }
        let weight = w * scale * legendre(ell, &dot(p, u));
        for (acc, v) in out.iter_mut().zip(value.values()) {
            *acc += weight * v;
        }
    }
    SymTensor::from_values(rank, out)
}

/// Numerical `ell` component of the rank-`L` monomial at direction `u`,
/// using the supplied rule.
pub fn project_numeric_with(
    rule: &QuadratureRule,
    rank: u32,
    ell: u32,
    u: &[f64; 3],
) -> Result<SymTensor<f64>> {
    project_field(rule, rank, rank, ell, u, |p| {
        SymTensor::from_fn(rank, |idx| monomial_f64(p, idx))
    })
}

/// Numerical `ell` component of the rank-`L` monomial at direction `u`,
/// with a rule of exactly the needed degree.
pub fn project_numeric(rank: u32, ell: u32, u: &[f64; 3]) -> Result<SymTensor<f64>> {
    project_numeric_with(&build_quadrature(rank + ell), rank, ell, u)
}

/// `∫ dΩ/4π x̂_{i1}...x̂_{iN}`: zero for odd `N`, `X^{N,0} / (N+1)!!` otherwise.
pub fn angular_average(rank: u32) -> XCombo {
    if rank % 2 == 1 {
        return XCombo::zero(rank);
    }
    XCombo::from_terms(
        rank,
        [(0, Rational::new(BigInt::one(), dfact(i64::from(rank) + 1)))],
    )
    .expect("n = 0 is valid for even N")
}

/// `count` directions drawn uniformly on the sphere from a seeded ChaCha8
/// stream (inverse CDF in `cos θ`, uniform `φ`).
pub fn random_unit_vectors(seed: u64, count: usize) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let cos_t: f64 = 2.0 * rng.random::<f64>() - 1.0;
            let phi: f64 = 2.0 * PI * rng.random::<f64>();
            let sin_t = (1.0 - cos_t * cos_t).sqrt();
            [sin_t * phi.cos(), sin_t * phi.sin(), cos_t]
        })
        .collect()
}

/// Polynomial in `(x, y, z)` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly3 {
    terms: BTreeMap<[u32; 3], Rational>,
}

impl Poly3 {
    pub fn monomial(exponents: [u32; 3], coeff: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(exponents, coeff);
        p
    }

    /// The coordinate `x`, `y` or `z` for axis 0, 1, 2.
    pub fn variable(axis: usize) -> Self {
        let mut e = [0; 3];
        e[axis] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn variables() -> [Poly3; 3] {
        [Self::variable(0), Self::variable(1), Self::variable(2)]
    }

    /// `x^2 + y^2 + z^2`.
    pub fn radius_squared() -> Self {
        let [x, y, z] = Self::variables();
        x.clone() * x + y.clone() * y + z.clone() * z
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc * self.clone())
    }

    fn add_term(&mut self, exponents: [u32; 3], coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rational)> {
        self.terms.iter()
    }

    /// Total degree when every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            if e[axis] == 0 {
                continue;
            }
            let mut d = *e;
            d[axis] -= 1;
            out.add_term(d, c * Rational::from_integer(BigInt::from(e[axis])));
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        (0..3).fold(Self::default(), |acc, axis| {
            acc + self.derivative(axis).derivative(axis)
        })
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            out.add_term(*e, c * factor);
        }
        out
    }
}

impl Zero for Poly3 {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly3 {
    fn one() -> Self {
        Self::monomial([0; 3], Rational::one())
    }
}

impl Add for Poly3 {
    type Output = Poly3;

    fn add(mut self, rhs: Poly3) -> Poly3 {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for Poly3 {
    type Output = Poly3;

    fn neg(self) -> Poly3 {
        self.scaled(&-Rational::one())
    }
}

impl Sub for Poly3 {
    type Output = Poly3;

    fn sub(self, rhs: Poly3) -> Poly3 {
        self + (-rhs)
    }
}

impl Mul for Poly3 {
    type Output = Poly3;

    fn mul(self, rhs: Poly3) -> Poly3 {
        let mut out = Poly3::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

impl Ring for Poly3 {
    fn from_integer(value: &BigInt) -> Self {
        Self::monomial([0; 3], Rational::from_integer(value.clone()))
    }
}

/// Checks `Δ^n p_{i1}...p_{iL} = 2^n n! p^{L-2n} X^{L,L-2n}` componentwise
/// as exact polynomials.
///
/// `X^{L,L-2n}` carries `L-2n` unit vectors, so `p^{L-2n} X^{L,L-2n}(p̂)` is
/// the same symbol evaluated on the unnormalized `p`, which keeps the right
/// side polynomial.
pub fn laplacian_identity_check(rank: u32, n: u32) -> Result<bool> {
    if 2 * n > rank {
        return Err(Error::Domain(format!(
            "laplacian_identity_check requires 2n <= L, got L={rank} n={n}"
        )));
    }
    let factor = Rational::from_integer((BigInt::one() << n) * fact(u64::from(n)));
    let rhs = evaluate_x_unchecked(rank, rank - 2 * n, &Poly3::variables())?;
    for (idx, expected) in rhs.iter() {
        let mut lhs = Poly3::monomial(idx.0, Rational::one());
        for _ in 0..n {
            lhs = lhs.laplacian();
        }
        if lhs != expected.scaled(&factor) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sum_m P_m(x, y, z) r^(-m)`: enough to differentiate `1/r` symbolically.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InversePowerSeries {
    terms: BTreeMap<u32, Poly3>,
}

impl InversePowerSeries {
    pub fn inverse_power(m: u32, numerator: Poly3) -> Self {
        let mut s = Self::default();
        s.add(m, numerator);
        s
    }

    fn add(&mut self, m: u32, p: Poly3) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.remove(&m).unwrap_or_default() + p;
        if !entry.is_zero() {
            self.terms.insert(m, entry);
        }
    }

    fn plus(mut self, other: InversePowerSeries) -> Self {
        for (m, p) in other.terms {
            self.add(m, p);
        }
        self
    }

    /// `∂_axis (P r^-m) = (∂_axis P) r^-m - m x_axis P r^-(m+2)`.
    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Self::default();
        for (&m, p) in &self.terms {
            out.add(m, p.derivative(axis));
            let shifted = Poly3::variable(axis) * p.clone();
            out.add(
                m + 2,
                shifted.scaled(&-Rational::from_integer(BigInt::from(m))),
            );
        }
        out
    }

    /// Applies a constant-coefficient differential operator given as a
    /// polynomial in `(∂x, ∂y, ∂z)`.
    pub fn apply_operator(&self, operator: &Poly3) -> Self {
        let mut out = Self::default();
        for (e, c) in operator.terms() {
            let mut f = self.clone();
            for (axis, &count) in e.iter().enumerate() {
                for _ in 0..count {
                    f = f.derivative(axis);
                }
            }
            for (m, p) in f.terms {
                out.add(m, p.scaled(c));
            }
        }
        out
    }

    /// Multiplies through by `r^M` and expands every even power of `r` as a
    /// power of `x^2 + y^2 + z^2`, giving a canonical polynomial.
    /// Returns `None` if some power has the wrong parity or exceeds `M`.
    fn canonical(&self, top: u32) -> Option<Poly3> {
        let r2 = Poly3::radius_squared();
        let mut total = Poly3::zero();
        for (&m, p) in &self.terms {
            if m > top || !(top - m).is_multiple_of(2) {
                return None;
            }
            total = total + p.clone() * r2.pow((top - m) / 2);
        }
        Some(total)
    }

    /// Equality as functions away from the origin.
    pub fn equals_as_function(&self, other: &InversePowerSeries) -> bool {
        let top = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .max()
            .unwrap_or(0);
        for candidate in [top, top + 1] {
            if let (Some(a), Some(b)) = (self.canonical(candidate), other.canonical(candidate)) {
                return a == b;
            }
        }
        false
    }
}

/// Applies the traceless operator `(∂_{i1}...∂_{ik})^k_k` to `1/r` by exact
/// differentiation and compares with the closed-form identity, away from
/// the origin, for every component.
///
/// The operator is `sum_n c_n (∇²)^((k-n)/2) X^{k,n}(∂)` where `c_n` are the
/// maximal-component coefficients.
pub fn onebyr_identity_check(k: u32) -> Result<bool> {
    let identity = derivative_identity_onebyr(k)?;
    let traceless = max_component(k);
    let del = Poly3::variables();
    let laplacian = Poly3::radius_squared();
    let x = Poly3::variables();
    let one_by_r = InversePowerSeries::inverse_power(1, Poly3::one());

    let mut operators = SymTensor::<Poly3>::zeros(k);
    let mut rhs = vec![InversePowerSeries::default(); component_count(k)];
    for (n, c) in traceless.terms() {
        let x_del = evaluate_x_unchecked(k, n, &del)?;
        let x_pos = evaluate_x_unchecked(k, n, &x)?;
        let lap_power = laplacian.pow((k - n) / 2);
        for (slot, (idx, op)) in x_del.iter().enumerate() {
            let term = (lap_power.clone() * op.clone()).scaled(c);
            let updated = operators.get(idx).clone() + term;
            operators.set(idx, updated);
            // x̂^n / r^(k+1) = x^n r^-(k+1+n)
            let piece = InversePowerSeries::inverse_power(
                k + 1 + n,
                x_pos.get(idx).scaled(&(c * &identity.coefficient)),
            );
            rhs[slot] = std::mem::take(&mut rhs[slot]).plus(piece);
        }
    }
    for (slot, (_, op)) in operators.iter().enumerate() {
        let lhs = one_by_r.apply_operator(op);
        if !lhs.equals_as_function(&rhs[slot]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rational;
    use crate::decomposition::component;
    use crate::tensor::evaluate_combo;

    #[test]
    fn legendre_values() {
        for l in 0..12 {
            assert_eq!(legendre(l, &rational(1, 1)), rational(1, 1));
            assert!((legendre(l, &1.0) - 1.0).abs() < 1e-14);
        }
        assert_eq!(legendre(2, &rational(0, 1)), rational(-1, 2));
        assert_eq!(legendre(3, &rational(1, 2)), rational(-7, 16));
        assert!((legendre(3, &0.5) + 7.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_weights_and_exactness() {
        for count in 1..20 {
            let rule = gauss_legendre(count);
            let total: f64 = rule.iter().map(|(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-13);
            for deg in 0..(2 * count) {
                let got: f64 = rule.iter().map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 {
                    0.0
                } else {
                    2.0 / (deg as f64 + 1.0)
                };
                assert!((got - exact).abs() < 1e-13, "count={count} deg={deg}");
            }
        }
    }

    #[test]
    fn degree_zero_rule() {
        let rule = build_quadrature(0);
        assert_eq!(rule.nodes.len(), 1);
        assert_eq!(rule.exact_degree, 0);
        assert!((rule.integrate(|_| 1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn known_averages() {
        let rule = build_quadrature(4);
        assert!(rule.exact_degree >= 4);
        assert!((rule.integrate(|p| p[2] * p[2]) - 1.0 / 3.0).abs() < 1e-14);
        assert!(rule.integrate(|p| p[0] * p[1] * p[1]).abs() < 1e-14);
        assert!(rule.integrate(|p| p[2].powi(3)).abs() < 1e-14);
        assert!(rule.integrate(|p| p[0]).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_angular_average() {
        let u = [0.0, 0.0, 1.0];
        for degree in 0..=16u32 {
            let rule = build_quadrature(degree);
            assert!(rule.exact_degree >= degree);
            for rank in 0..=rule.exact_degree {
                let expected = evaluate_combo(&angular_average(rank), &u).unwrap();
                for idx in MultiIndex::all(rank) {
                    let got = rule.integrate(|p| monomial_f64(p, idx));
                    assert!(
                        (got - expected.get(idx)).abs() < 1e-13,
                        "degree={degree} {idx:?}: {got} vs {}",
                        expected.get(idx)
                    );
                }
            }
        }
    }

    #[test]
    fn angular_average_values() {
        assert_eq!(
            angular_average(2),
            XCombo::from_terms(2, [(0, rational(1, 3))]).unwrap()
        );
        assert_eq!(
            angular_average(4),
            XCombo::from_terms(4, [(0, rational(1, 15))]).unwrap()
        );
        assert!(angular_average(3).is_zero());
    }

    #[test]
    fn projection_examples() {
        let u = random_unit_vectors(7, 1)[0];
        let p20 = project_numeric(2, 0, &u).unwrap();
        let delta_third = evaluate_combo(&component(2, 0), &u).unwrap();
        assert!(p20.max_abs_diff(&delta_third) < 1e-12);

        let z = [0.0, 0.0, 1.0];
        let p22 = project_numeric(2, 2, &z).unwrap();
        assert!((p22.get(MultiIndex::new(2, 0, 0)) + 1.0 / 3.0).abs() < 1e-12);
        assert!((p22.get(MultiIndex::new(0, 2, 0)) + 1.0 / 3.0).abs() < 1e-12);
        assert!((p22.get(MultiIndex::new(0, 0, 2)) - 2.0 / 3.0).abs() < 1e-12);
        assert!(p22.get(MultiIndex::new(1, 0, 1)).abs() < 1e-12);

        assert!(project_numeric(3, 5, &u).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn projection_rejects_weak_rules_and_bad_vectors() {
        let weak = build_quadrature(3);
        assert!(matches!(
            project_numeric_with(&weak, 2, 2, &[0.0, 0.0, 1.0]),
            Err(Error::Validation(_))
        ));
        assert!(project_numeric(2, 0, &[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn random_vectors_are_unit_and_reproducible() {
        let a = random_unit_vectors(42, 50);
        assert_eq!(a, random_unit_vectors(42, 50));
        assert_ne!(a, random_unit_vectors(43, 50));
        for u in &a {
            assert!(f64::check_unit(u).is_ok());
        }
    }

    #[test]
    fn poly_calculus() {
        let [x, y, _] = Poly3::variables();
        let p = x.clone() * x.clone() * y.clone();
        assert_eq!(
            p.derivative(0),
            (x.clone() * y.clone()).scaled(&rational(2, 1))
        );
        assert_eq!(p.laplacian(), y.scaled(&rational(2, 1)));
        assert_eq!(p.homogeneous_degree(), Some(3));
        assert_eq!((p + Poly3::one()).homogeneous_degree(), None);
        assert_eq!(
            Poly3::radius_squared().laplacian(),
            Poly3::from_integer(&BigInt::from(6))
        );
    }

    #[test]
    fn laplacian_identity_examples() {
        assert!(laplacian_identity_check(2, 1).unwrap());
        assert!(laplacian_identity_check(4, 1).unwrap());
        assert!(laplacian_identity_check(6, 3).unwrap());
        assert!(laplacian_identity_check(3, 0).unwrap());
        assert!(laplacian_identity_check(3, 2).is_err());
    }

    #[test]
    fn laplacian_of_x_to_the_sixth() {
        let mut p = Poly3::monomial([6, 0, 0], rational(1, 1));
        for _ in 0..3 {
            p = p.laplacian();
        }
        assert_eq!(p, Poly3::from_integer(&BigInt::from(720)));
    }

    #[test]
    fn inverse_power_derivatives() {
        let f = InversePowerSeries::inverse_power(1, Poly3::one());
        let grad_x = f.derivative(0);
        assert_eq!(
            grad_x,
            InversePowerSeries::inverse_power(3, Poly3::variable(0).scaled(&rational(-1, 1)))
        );
        // ∇²(1/r) = 0 away from the origin.
        let lap = (0..3).fold(InversePowerSeries::default(), |acc, a| {
            acc.plus(f.derivative(a).derivative(a))
        });
        assert!(lap.equals_as_function(&InversePowerSeries::default()));
        // r^2 / r^3 == 1 / r
        let alt = InversePowerSeries::inverse_power(3, Poly3::radius_squared());
        assert!(alt.equals_as_function(&f));
    }

    #[test]
    fn onebyr_round_trip() {
        for k in 1..=4 {
            assert!(onebyr_identity_check(k).unwrap(), "k={k}");
        }
        assert!(onebyr_identity_check(0).is_err());
    }
}
