//! Symmetric rank-L tensors over three dimensions and the X-symbol algebra.
//!
//! `X^{L,n}` is the fully symmetric rank-`L` structure built from `n` copies
//! of a unit vector and `(L-n)/2` Kronecker deltas, summed over every
//! distinct index assignment. An [`XCombo`] is a linear combination of these
//! at a fixed rank, stored only as its `n -> coefficient` map. The identity
//! operations (`combo_contract_vector`, `combo_trace`, `combo_multiply_sym`)
//! act on those coefficients directly; [`evaluate_combo`] and
//! [`evaluate_terms`] turn them into concrete tensors for checking.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{
    binomial, check_pair, dfact, format_rational, kappa, pairing_count, Rational,
};
use crate::error::{domain, Error, Result};

/// Tolerance on `|u|^2 - 1` for floating-point unit vectors.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Commutative ring operations needed to evaluate X-symbols.
pub trait Ring:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_integer(value: &BigInt) -> Self;
}

impl Ring for f64 {
    fn from_integer(value: &BigInt) -> Self {
        value.to_f64().unwrap_or(f64::NAN)
    }
}

impl Ring for Rational {
    fn from_integer(value: &BigInt) -> Self {
        Rational::from_integer(value.clone())
    }
}

/// Scalar field a [`SymTensor`] can be evaluated over: exact rationals or
/// binary floating point.
pub trait Scalar: Ring + Div<Output = Self> + fmt::Debug {
    fn from_rational(value: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Checks that `u` has unit length: exactly for rationals, within
    /// [`UNIT_TOLERANCE`] for floats.
    fn check_unit(u: &[Self; 3]) -> Result<()>;

    fn from_int(value: i64) -> Self {
        Self::from_integer(&BigInt::from(value))
    }
}

impl Scalar for f64 {
    fn from_rational(value: &Rational) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn check_unit(u: &[f64; 3]) -> Result<()> {
        let norm2 = u.iter().map(|c| c * c).sum::<f64>();
        if !norm2.is_finite() || (norm2 - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::Validation(format!(
                "vector {u:?} is not normalized (|u|^2 = {norm2})"
            )));
        }
        Ok(())
    }
}

impl Scalar for Rational {
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn check_unit(u: &[Rational; 3]) -> Result<()> {
        let norm2 = u.iter().map(|c| c * c).fold(Rational::zero(), |a, b| a + b);
        if !norm2.is_one() {
            return Err(Error::Validation(format!(
                "rational vector has |u|^2 = {}, expected exactly 1",
                format_rational(&norm2)
            )));
        }
        Ok(())
    }
}

/// Exponent triple `(a, b, c)` naming the component `x^a y^b z^c` of a
/// symmetric tensor of rank `a + b + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub [u32; 3]);

impl MultiIndex {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Self([a, b, c])
    }

    pub fn rank(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Counts axis occurrences in a Cartesian index list.
    pub fn from_cartesian(indices: &[usize]) -> Self {
        let mut e = [0u32; 3];
        for &i in indices {
            e[i] += 1;
        }
        Self(e)
    }

    /// Sorted Cartesian realization: `a` zeros, then `b` ones, then `c` twos.
    pub fn cartesian(&self) -> Vec<usize> {
        (0..3)
            .flat_map(|axis| std::iter::repeat_n(axis, self.0[axis] as usize))
            .collect()
    }

    pub fn with_added(&self, axis: usize, count: u32) -> Self {
        let mut e = self.0;
        e[axis] += count;
        Self(e)
    }

    /// All triples of the given rank in lexicographic order.
    pub fn all(rank: u32) -> impl Iterator<Item = MultiIndex> {
        (0..=rank).flat_map(move |a| (0..=rank - a).map(move |b| MultiIndex([a, b, rank - a - b])))
    }

    /// `L! / (a! b! c!)`: how many Cartesian index tuples realize this triple.
    pub fn multiplicity(&self) -> BigInt {
        let [a, b, c] = self.0;
        binomial(u64::from(a + b + c), u64::from(a)) * binomial(u64::from(b + c), u64::from(b))
    }

    fn position(&self) -> usize {
        let rank = self.rank() as usize;
        let a = self.0[0] as usize;
        a * (rank + 1) - a * a.saturating_sub(1) / 2 + self.0[1] as usize
    }
}

/// Number of independent components of a symmetric rank-`L` tensor in 3D.
pub fn component_count(rank: u32) -> usize {
    let r = rank as usize;
    (r + 1) * (r + 2) / 2
}

/// Dense fully symmetric rank-`L` tensor over three dimensions, stored by
/// exponent triple in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor<T> {
    rank: u32,
    components: Vec<T>,
}

impl<T: Ring> SymTensor<T> {
    pub fn zeros(rank: u32) -> Self {
        Self {
            rank,
            components: vec![T::zero(); component_count(rank)],
        }
    }

    pub fn from_fn(rank: u32, mut f: impl FnMut(MultiIndex) -> T) -> Self {
        Self {
            rank,
            components: MultiIndex::all(rank).map(&mut f).collect(),
        }
    }

    /// Builds a tensor from components listed in lexicographic
    /// exponent-triple order.
    pub fn from_values(rank: u32, components: Vec<T>) -> Result<Self> {
        if components.len() != component_count(rank) {
            return Err(Error::Validation(format!(
                "rank {rank} needs {} components, got {}",
                component_count(rank),
                components.len()
            )));
        }
        Ok(Self { rank, components })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Components in lexicographic exponent-triple order.
    pub fn values(&self) -> &[T] {
        &self.components
    }

    pub fn get(&self, index: MultiIndex) -> &T {
        assert_eq!(index.rank(), self.rank, "multi-index rank mismatch");
        &self.components[index.position()]
    }

    /// Value at a Cartesian index tuple such as `[2, 0, 2]`.
    pub fn get_cartesian(&self, indices: &[usize]) -> &T {
        self.get(MultiIndex::from_cartesian(indices))
    }

    pub fn set(&mut self, index: MultiIndex, value: T) {
        assert_eq!(index.rank(), self.rank, "multi-index rank mismatch");
        self.components[index.position()] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, &T)> {
        MultiIndex::all(self.rank).zip(self.components.iter())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SymTensor<U> {
        SymTensor {
            rank: self.rank,
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    /// Contracts the last index with `v`.
    pub fn contract_vector(&self, v: &[T; 3]) -> Result<SymTensor<T>> {
        if self.rank == 0 {
            return Err(domain("cannot contract a rank-0 tensor with a vector"));
        }
        Ok(SymTensor::from_fn(self.rank - 1, |idx| {
            (0..3).fold(T::zero(), |acc, k| {
                acc + self.get(idx.with_added(k, 1)).clone() * v[k].clone()
            })
        }))
    }

    /// Traces over the last index pair.
    pub fn trace(&self) -> Result<SymTensor<T>> {
        if self.rank < 2 {
            return Err(domain("trace requires rank >= 2"));
        }
        Ok(SymTensor::from_fn(self.rank - 2, |idx| {
            (0..3).fold(T::zero(), |acc, k| {
                acc + self.get(idx.with_added(k, 2)).clone()
            })
        }))
    }
}

impl<T: Ring> Add for &SymTensor<T> {
    type Output = SymTensor<T>;

    fn add(self, rhs: &SymTensor<T>) -> SymTensor<T> {
        assert_eq!(self.rank, rhs.rank);
        SymTensor {
            rank: self.rank,
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> SymTensor<T> {
    pub fn scaled(&self, factor: &T) -> SymTensor<T> {
        self.map(|c| c.clone() * factor.clone())
    }

    /// Full contraction `A_{i1..iL} B_{i1..iL}` summed over all `3^L`
    /// Cartesian tuples.
    pub fn full_contraction(&self, other: &SymTensor<T>) -> T {
        assert_eq!(self.rank, other.rank);
        self.iter().fold(T::zero(), |acc, (idx, a)| {
            let weight = T::from_integer(&idx.multiplicity());
            acc + weight * a.clone() * other.get(idx).clone()
        })
    }

    pub fn to_f64(&self) -> SymTensor<f64> {
        self.map(Scalar::to_f64)
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(&self, other: &SymTensor<T>) -> f64 {
        assert_eq!(self.rank, other.rank);
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// One term of an X-symbol: the positions carrying unit vectors and a
/// perfect pairing of the remaining positions into Kronecker deltas.
/// Positions are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XTerm {
    pub momentum: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

/// `binom(L, n) (L-n-1)!!`, the number of terms in `X^{L,n}`.
pub fn x_term_count(rank: u32, n: u32) -> Result<BigInt> {
    check_pair(rank, n, "x_term_count (L, n)")?;
    Ok(binomial(u64::from(rank), u64::from(n)) * dfact(i64::from(rank) - i64::from(n) - 1))
}

fn pairings(
    positions: &[usize],
    acc: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    let Some((&first, rest)) = positions.split_first() else {
        out.push(acc.clone());
        return;
    };
    for (i, &partner) in rest.iter().enumerate() {
        let remaining: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &p)| p)
            .collect();
        acc.push((first, partner));
        pairings(&remaining, acc, out);
        acc.pop();
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Lists every term of `X^{L,n}`: momentum subsets in lexicographic order,
/// each followed by its pairings of the leftover positions, built by pairing
/// the lowest unpaired position first.
pub fn enumerate_x_terms(rank: u32, n: u32) -> Result<Vec<XTerm>> {
    check_pair(rank, n, "enumerate_x_terms (L, n)")?;
    let rank = rank as usize;
    let mut terms = Vec::new();
    for momentum in subsets(rank, n as usize) {
        let rest: Vec<usize> = (0..rank).filter(|p| !momentum.contains(p)).collect();
        let mut all = Vec::new();
        pairings(&rest, &mut Vec::new(), &mut all);
        terms.extend(all.into_iter().map(|pairs| XTerm {
            momentum: momentum.clone(),
            pairs,
        }));
    }
    Ok(terms)
}

/// Evaluates a list of X-symbol terms term by term at vector `u`, with no
/// normalization check. Works over any ring, including polynomials.
pub fn evaluate_terms<T: Ring>(rank: u32, terms: &[XTerm], u: &[T; 3]) -> SymTensor<T> {
    SymTensor::from_fn(rank, |idx| {
        let cart = idx.cartesian();
        terms.iter().fold(T::zero(), |acc, term| {
            if term.pairs.iter().any(|&(a, b)| cart[a] != cart[b]) {
                return acc;
            }
            acc + term
                .momentum
                .iter()
                .fold(T::one(), |p, &m| p * u[cart[m]].clone())
        })
    })
}

fn int_power<T: Ring>(base: &T, exp: u32) -> T {
    (0..exp).fold(T::one(), |acc, _| acc * base.clone())
}

/// `X^{L,n}` evaluated at `u` without a unit-length check.
///
/// Each component is assembled by counting: with `(a, b, c)` axis
/// occurrences and `(na, nb, nc)` of them on unit vectors, the number of
/// matching terms is `C(a,na) C(b,nb) C(c,nc) (a-na-1)!! (b-nb-1)!! (c-nc-1)!!`.
pub fn evaluate_x_unchecked<T: Ring>(rank: u32, n: u32, u: &[T; 3]) -> Result<SymTensor<T>> {
    check_pair(rank, n, "evaluate_x (L, n)")?;
    Ok(SymTensor::from_fn(rank, |idx| {
        let [a, b, c] = idx.0;
        let mut total = T::zero();
        for na in (a % 2..=a.min(n)).step_by(2) {
            for nb in (b % 2..=b.min(n - na)).step_by(2) {
                let nc = n - na - nb;
                if nc > c || !(c - nc).is_multiple_of(2) {
                    continue;
                }
                let count = binomial(u64::from(a), u64::from(na))
                    * binomial(u64::from(b), u64::from(nb))
                    * binomial(u64::from(c), u64::from(nc))
                    * pairing_count(u64::from(a - na))
                    * pairing_count(u64::from(b - nb))
                    * pairing_count(u64::from(c - nc));
                let monomial = int_power(&u[0], na) * int_power(&u[1], nb) * int_power(&u[2], nc);
                total = total + T::from_integer(&count) * monomial;
            }
        }
        total
    }))
}

/// `X^{L,n}` evaluated at the unit vector `u`.
pub fn evaluate_x<T: Scalar>(rank: u32, n: u32, u: &[T; 3]) -> Result<SymTensor<T>> {
    T::check_unit(u)?;
    evaluate_x_unchecked(rank, n, u)
}

/// Linear combination `sum_n c_n X^{L,n}` over a fixed rank `L`, with `n`
/// sharing the parity of `L`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XCombo {
    rank: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl XCombo {
    pub fn zero(rank: u32) -> Self {
        Self {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    /// The bare monomial `X^{L,L}`.
    pub fn monomial(rank: u32) -> Self {
        let mut c = Self::zero(rank);
        c.coeffs.insert(rank, Rational::one());
        c
    }

    /// Builds a combination, summing repeated keys. Keys out of range or of
    /// the wrong parity are rejected.
    pub fn from_terms(rank: u32, terms: impl IntoIterator<Item = (u32, Rational)>) -> Result<Self> {
        let mut c = Self::zero(rank);
        for (n, value) in terms {
            check_pair(rank, n, "XCombo term (L, n)")?;
            c.add_term(n, value);
        }
        Ok(c)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: u32) -> Rational {
        self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms by descending `n`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().rev().map(|(n, c)| (*n, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    // Silently drops keys where X is defined to vanish.
    fn add_term(&mut self, n: u32, value: Rational) {
        if n > self.rank || !(self.rank - n).is_multiple_of(2) || value.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(n).or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> XCombo {
        let mut out = XCombo::zero(self.rank);
        for (n, c) in &self.coeffs {
            out.add_term(*n, c * factor);
        }
        out
    }

    pub fn checked_add(&self, other: &XCombo) -> Result<XCombo> {
        if self.rank != other.rank {
            return Err(domain(format!(
                "cannot add XCombos of rank {} and {}",
                self.rank, other.rank
            )));
        }
        let mut out = self.clone();
        for (n, c) in &other.coeffs {
            out.add_term(*n, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &XCombo) -> Result<XCombo> {
        self.checked_add(&other.scaled(&-Rational::one()))
    }

    /// Largest absolute coefficient, zero for the empty combination.
    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs
            .values()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for XCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{} ", format_rational(&mag))?;
            }
            write!(f, "X[{},{}]", self.rank, n)?;
        }
        Ok(())
    }
}

/// `sum_n c_n X^{L,n}(u)` as a concrete tensor.
pub fn evaluate_combo<T: Scalar>(combo: &XCombo, u: &[T; 3]) -> Result<SymTensor<T>> {
    T::check_unit(u)?;
    let mut out = SymTensor::zeros(combo.rank);
    for (n, c) in combo.terms() {
        let x = evaluate_x_unchecked(combo.rank, n, u)?;
        out = &out + &x.scaled(&T::from_rational(c));
    }
    Ok(out)
}

/// Contracts one index with the unit vector:
/// `X^{L,l} u = (l+1) X^{L-1,l+1} + X^{L-1,l-1}`.
pub fn combo_contract_vector(combo: &XCombo) -> Result<XCombo> {
    if combo.rank == 0 {
        return Err(domain("combo_contract_vector requires rank >= 1"));
    }
    let mut out = XCombo::zero(combo.rank - 1);
    for (&n, c) in &combo.coeffs {
        out.add_term(n + 1, c * Rational::from_integer(BigInt::from(n + 1)));
        if n >= 1 {
            out.add_term(n - 1, c.clone());
        }
    }
    Ok(out)
}

/// Traces one index pair: `X^{L,l} delta = (L+l+1) X^{L-2,l} + X^{L-2,l-2}`.
pub fn combo_trace(combo: &XCombo) -> Result<XCombo> {
    if combo.rank < 2 {
        return Err(domain("combo_trace requires rank >= 2"));
    }
    let mut out = XCombo::zero(combo.rank - 2);
    for (&n, c) in &combo.coeffs {
        out.add_term(
            n,
            c * Rational::from_integer(BigInt::from(combo.rank + n + 1)),
        );
        if n >= 2 {
            out.add_term(n - 2, c.clone());
        }
    }
    Ok(out)
}

/// Symmetrized product over all `binom(L+N, L)` interleavings of the two
/// index sets: `sym(X^{L,l} X^{N,n}) = kappa X^{L+N,l+n}`.
pub fn combo_multiply_sym(a: &XCombo, b: &XCombo) -> XCombo {
    let mut out = XCombo::zero(a.rank + b.rank);
    for (&l, ca) in &a.coeffs {
        for (&n, cb) in &b.coeffs {
            let k = kappa(a.rank, l, b.rank, n).expect("XCombo keys satisfy kappa preconditions");
            out.add_term(l + n, ca * cb * k);
        }
    }
    out
}
