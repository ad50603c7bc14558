//! Verification suites behind `angdecomp verify`.
//!
//! Each suite returns a list of [`Check`]s. Exact checks report an observed
//! error of `0` on success and `1` on failure against a bound of `0`;
//! numerical checks report the measured error against the tolerance.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::combinatorics::{
    binomial, chi, double_factorial, kappa, rational, rational_int, PiScaled, Rational,
};
use crate::decomposition::{
    check_traceless, component, component_sum, component_via_product, max_component, RecursionMemo,
};
use crate::error::{domain, Result};
use crate::fourier::{fourier_transform, radial_factor, RadialKind, RadialTerm};
use crate::oracle::{
    angular_average, build_quadrature, laplacian_identity_check, onebyr_identity_check,
    project_tabulated, random_unit_vectors, QuadratureRule,
};
use crate::tensor::{
    combo_contract_vector, combo_multiply_sym, combo_trace, enumerate_x_terms, evaluate_combo,
    evaluate_terms, evaluate_x, x_term_count, MultiIndex, SymTensor, XCombo,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Coefficients,
    Identities,
    Oracle,
    Laplacian,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Coefficients => "coefficients",
            Suite::Identities => "identities",
            Suite::Oracle => "oracle",
            Suite::Laplacian => "laplacian",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub max_rank: u32,
    pub seed: u64,
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_rank: 8,
            seed: 42,
            tol: 1e-10,
        }
    }
}

/// Number of seeded directions used by the oracle suite.
pub const ORACLE_VECTORS: usize = 100;
/// Bound for the quadrature exactness check.
pub const QUADRATURE_BOUND: f64 = 1e-13;
/// Highest `k` for the symbolic `1/r` derivative check.
pub const ONEBYR_MAX_K: u32 = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub observed_error: f64,
    pub bound: f64,
    pub passed: bool,
}

impl Check {
    pub fn exact(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            observed_error: if ok { 0.0 } else { 1.0 },
            bound: 0.0,
            passed: ok,
        }
    }

    pub fn numeric(name: impl Into<String>, observed_error: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            observed_error,
            bound,
            passed: observed_error <= bound,
        }
    }

    fn failed(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self::exact(format!("{} ({err})", name.into()), false)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub config: VerifyConfig,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: Suite, config: VerifyConfig, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self {
            suite,
            config,
            passed,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {} (max_rank={}, seed={}, tol={:e})\n",
            self.suite.name(),
            self.config.max_rank,
            self.config.seed,
            self.config.tol
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {}  error={:.3e} bound={:.3e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.observed_error,
                c.bound
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} failed: {}",
            self.checks.len(),
            failed,
            if self.passed { "ok" } else { "FAILED" }
        );
        out
    }
}

pub fn run(suite: Suite, config: VerifyConfig) -> Result<Report> {
    if !(config.tol.is_finite() && config.tol > 0.0) {
        return Err(domain(format!(
            "tol must be positive and finite, got {}",
            config.tol
        )));
    }
    let checks = match suite {
        Suite::Coefficients => coefficient_checks(config.max_rank),
        Suite::Identities => {
            let mut c = contraction_checks(config.max_rank);
            c.extend(product_checks(config.max_rank));
            c.extend(onebyr_checks(config.max_rank.min(ONEBYR_MAX_K)));
            c
        }
        Suite::Oracle => oracle_checks(config.max_rank, config.seed, config.tol),
        Suite::Laplacian => laplacian_checks(config.max_rank),
        Suite::All => {
            let mut c = Vec::new();
            for s in [
                Suite::Coefficients,
                Suite::Identities,
                Suite::Oracle,
                Suite::Laplacian,
            ] {
                c.extend(run(s, config)?.checks);
            }
            c
        }
    };
    Ok(Report::new(suite, config, checks))
}

fn x_symbol(rank: u32, n: u32) -> XCombo {
    XCombo::from_terms(rank, [(n, rational(1, 1))]).expect("caller passes a valid key")
}

fn combo(rank: u32, terms: &[(u32, i64, i64)]) -> XCombo {
    XCombo::from_terms(rank, terms.iter().map(|&(n, p, q)| (n, rational(p, q))))
        .expect("static example keys are valid")
}

/// Worked decompositions for ranks 2 through 5 as `(L, l, expected)`.
pub fn worked_examples() -> Vec<(u32, u32, XCombo)> {
    vec![
        (2, 2, combo(2, &[(2, 1, 1), (0, -1, 3)])),
        (2, 0, combo(2, &[(0, 1, 3)])),
        (3, 3, combo(3, &[(3, 1, 1), (1, -1, 5)])),
        (3, 1, combo(3, &[(1, 1, 5)])),
        (4, 4, combo(4, &[(4, 1, 1), (2, -1, 7), (0, 1, 35)])),
        (4, 2, combo(4, &[(2, 1, 7), (0, -2, 21)])),
        (4, 0, combo(4, &[(0, 1, 15)])),
        (5, 5, combo(5, &[(5, 1, 1), (3, -1, 9), (1, 1, 63)])),
        (5, 3, combo(5, &[(3, 1, 9), (1, -2, 45)])),
        (5, 1, combo(5, &[(1, 1, 35)])),
    ]
}

/// Term counts quoted alongside the worked examples, as `(L, n, count)`.
pub fn worked_term_counts() -> Vec<(u32, u32, u64)> {
    vec![(4, 2, 6), (4, 0, 3), (5, 3, 10), (5, 1, 15)]
}

/// Expected `(l, radial factor, angular part)` of one transform channel.
pub type ExpectedChannel = (u32, RadialTerm, XCombo);

/// Transform examples as `(n, L, channels)`.
pub fn transform_examples() -> Vec<(i64, u32, Vec<ExpectedChannel>)> {
    let power = |value: Rational, i_power: i64, r_power: u32| RadialTerm {
        kind: RadialKind::PowerLaw,
        coefficient: PiScaled::new(value, -1, i_power),
        r_power,
    };
    vec![
        (
            -2,
            0,
            vec![(0, power(rational(1, 4), 0, 1), XCombo::monomial(0))],
        ),
        (
            -1,
            1,
            vec![(1, power(rational(1, 4), 1, 2), XCombo::monomial(1))],
        ),
        (
            0,
            2,
            vec![
                (
                    2,
                    power(rational(-3, 4), 0, 3),
                    combo(2, &[(2, 1, 1), (0, -1, 3)]),
                ),
                (
                    0,
                    RadialTerm {
                        kind: RadialKind::Delta,
                        coefficient: PiScaled::rational(rational(1, 1)),
                        r_power: 0,
                    },
                    combo(2, &[(0, 1, 3)]),
                ),
            ],
        ),
    ]
}

fn same_radial(a: &RadialTerm, b: &RadialTerm) -> bool {
    a.kind == b.kind && a.r_power == b.r_power && a.coefficient.same_value(&b.coefficient)
}

pub fn coefficient_checks(max_rank: u32) -> Vec<Check> {
    let mut checks = Vec::new();

    for (rank, ell, expected) in worked_examples() {
        if rank <= max_rank {
            checks.push(Check::exact(
                format!("worked example ({rank},{ell})"),
                component(rank, ell) == expected,
            ));
        }
    }
    for (rank, n, count) in worked_term_counts() {
        if rank <= max_rank {
            let ok = x_term_count(rank, n).is_ok_and(|c| c == BigInt::from(count))
                && enumerate_x_terms(rank, n).is_ok_and(|t| t.len() as u64 == count);
            checks.push(Check::exact(
                format!("term count X[{rank},{n}] = {count}"),
                ok,
            ));
        }
    }

    let mut memo = RecursionMemo::new();
    for rank in 0..=max_rank {
        checks.push(Check::exact(
            format!("maximal component L={rank}"),
            max_component(rank) == component(rank, rank),
        ));
        let mut agree = true;
        for ell in (rank % 2..=rank).step_by(2) {
            let closed = component(rank, ell);
            agree &=
                closed == memo.component(rank, ell) && closed == component_via_product(rank, ell);
        }
        checks.push(Check::exact(
            format!("closed = recursion = product L={rank}"),
            agree,
        ));
        checks.push(Check::exact(
            format!("completeness L={rank}"),
            component_sum(rank) == XCombo::monomial(rank),
        ));
        if rank >= 2 {
            checks.push(Check::exact(
                format!("traceless maximal component L={rank}"),
                check_traceless(&max_component(rank)).unwrap_or(false),
            ));
        }
    }

    checks.extend(radial_checks(max_rank));

    for (n, rank, expected) in transform_examples() {
        if rank > max_rank {
            continue;
        }
        let ok = fourier_transform(n, rank).is_ok_and(|ft| {
            ft.channels.len() == expected.len()
                && ft
                    .channels
                    .iter()
                    .zip(&expected)
                    .all(|(c, (ell, radial, angular))| {
                        c.ell == *ell && same_radial(&c.radial, radial) && c.angular == *angular
                    })
        });
        checks.push(Check::exact(format!("transform (n={n}, L={rank})"), ok));
    }
    checks
}

/// `chi` values, the `n = l` delta coefficients and the error variants of
/// the radial factor.
pub fn radial_checks(max_ell: u32) -> Vec<Check> {
    let pi = |p: i64, q: i64| PiScaled::new(rational(p, q), 1, 0);
    let mut checks = Vec::new();
    for (n, ell, expected) in [(-2, 0, pi(1, 2)), (-1, 1, pi(1, 2)), (0, 2, pi(3, 2))] {
        checks.push(Check::exact(
            format!("chi({n},{ell}) = {expected}"),
            chi(n, ell).is_ok_and(|c| c.same_value(&expected)),
        ));
    }
    for ell in 0..=max_ell {
        let l = i64::from(ell);
        let ok = radial_factor(l, ell).is_ok_and(|r| {
            let expected = PiScaled::new(
                rational_int(double_factorial(2 * l + 1).expect("positive argument")),
                0,
                l,
            );
            r.kind == RadialKind::Delta && r.r_power == ell && r.coefficient.same_value(&expected)
        });
        checks.push(Check::exact(
            format!("delta coefficient (2l+1)!! at l={ell}"),
            ok,
        ));
    }
    checks.push(Check::exact(
        "radial factor n = l + 1 is divergent",
        matches!(radial_factor(1, 0), Err(crate::Error::Divergent { .. })),
    ));
    checks.push(Check::exact(
        "radial factor n = -(l + 3) is not integrable",
        matches!(
            radial_factor(-3, 0),
            Err(crate::Error::NotIntegrable { .. })
        ),
    ));
    checks
}

/// Exact unit vectors with rational components.
pub fn rational_unit_vectors() -> Vec<[Rational; 3]> {
    [
        [(2, 7), (3, 7), (6, 7)],
        [(1, 3), (-2, 3), (2, 3)],
        [(3, 5), (0, 1), (-4, 5)],
        [(1, 9), (4, 9), (8, 9)],
    ]
    .into_iter()
    .map(|v| v.map(|(p, q)| rational(p, q)))
    .collect()
}

/// Evaluates every X-symbol of `combo` by summing its enumerated terms.
fn evaluate_by_terms(combo: &XCombo, u: &[Rational; 3]) -> SymTensor<Rational> {
    combo
        .terms()
        .fold(SymTensor::zeros(combo.rank()), |acc, (n, c)| {
            let terms = enumerate_x_terms(combo.rank(), n).expect("XCombo keys are valid");
            &acc + &evaluate_terms(combo.rank(), &terms, u).scaled(c)
        })
}

/// Contraction with `p̂` and trace identities, checked term by term on exact
/// rational unit vectors for every `L <= max_rank`.
pub fn contraction_checks(max_rank: u32) -> Vec<Check> {
    let vectors = rational_unit_vectors();
    let mut checks = Vec::new();
    for rank in 1..=max_rank {
        let mut contract_ok = true;
        let mut trace_ok = true;
        for n in (rank % 2..=rank).step_by(2) {
            let x = x_symbol(rank, n);
            let terms = enumerate_x_terms(rank, n).expect("valid key");
            let contracted = combo_contract_vector(&x).expect("rank >= 1");
            let traced = (rank >= 2).then(|| combo_trace(&x).expect("rank >= 2"));
            for u in &vectors {
                let direct = evaluate_terms(rank, &terms, u);
                let lhs = direct.contract_vector(u).expect("rank >= 1");
                contract_ok &= lhs == evaluate_by_terms(&contracted, u);
                if let Some(traced) = &traced {
                    let lhs = direct.trace().expect("rank >= 2");
                    trace_ok &= lhs == evaluate_by_terms(traced, u);
                }
            }
        }
        checks.push(Check::exact(
            format!("contraction with unit vector L={rank}"),
            contract_ok,
        ));
        if rank >= 2 {
            checks.push(Check::exact(format!("trace L={rank}"), trace_ok));
        }
    }
    checks
}

/// For each exponent triple of rank `total`, counts how the shuffles of a
/// fixed Cartesian realization split it into a rank-`left` triple and the
/// rest. Built by enumerating every `left`-subset of positions.
fn shuffle_table(total: u32, left: u32) -> Vec<Vec<(MultiIndex, MultiIndex, u64)>> {
    MultiIndex::all(total)
        .map(|idx| {
            let cart = idx.cartesian();
            let mut counts: HashMap<(MultiIndex, MultiIndex), u64> = HashMap::new();
            for_each_subset(cart.len(), left as usize, &mut |subset| {
                let mut chosen = Vec::with_capacity(subset.len());
                let mut rest = Vec::with_capacity(cart.len() - subset.len());
                let mut s = subset.iter().peekable();
                for (pos, &axis) in cart.iter().enumerate() {
                    if s.peek() == Some(&&pos) {
                        s.next();
                        chosen.push(axis);
                    } else {
                        rest.push(axis);
                    }
                }
                let key = (
                    MultiIndex::from_cartesian(&chosen),
                    MultiIndex::from_cartesian(&rest),
                );
                *counts.entry(key).or_default() += 1;
            });
            let mut list: Vec<_> = counts.into_iter().map(|((a, b), c)| (a, b, c)).collect();
            list.sort_by_key(|(a, b, _)| (a.0, b.0));
            list
        })
        .collect()
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Symmetrized product identity and the term-count form of its constant,
/// for every `L + N <= max_total` with `L, N >= 1`.
pub fn product_checks(max_total: u32) -> Vec<Check> {
    let vectors = rational_unit_vectors();
    let mut checks = Vec::new();
    for total in 2..=max_total {
        for left in 1..total {
            let right = total - left;
            let table = shuffle_table(total, left);
            let mut identity_ok = true;
            let mut count_ok = true;
            for l in (left % 2..=left).step_by(2) {
                for n in (right % 2..=right).step_by(2) {
                    let k = kappa(left, l, right, n).expect("valid keys");
                    let ratio = Rational::new(
                        binomial(u64::from(total), u64::from(left))
                            * x_term_count(left, l).expect("valid")
                            * x_term_count(right, n).expect("valid"),
                        x_term_count(total, l + n).expect("valid"),
                    );
                    count_ok &= k == ratio;

                    let product = combo_multiply_sym(&x_symbol(left, l), &x_symbol(right, n));
                    for u in &vectors {
                        let a = evaluate_x(left, l, u).expect("exact unit vector");
                        let b = evaluate_x(right, n, u).expect("exact unit vector");
                        let values = table
                            .iter()
                            .map(|splits| {
                                splits.iter().fold(rational(0, 1), |acc, (ia, ib, c)| {
                                    acc + a.get(*ia) * b.get(*ib) * rational_int(*c)
                                })
                            })
                            .collect();
                        let lhs =
                            SymTensor::from_values(total, values).expect("one value per triple");
                        identity_ok &= evaluate_combo(&product, u).is_ok_and(|rhs| rhs == lhs);
                    }
                }
            }
            checks.push(Check::exact(
                format!("symmetrized product L={left} N={right}"),
                identity_ok,
            ));
            checks.push(Check::exact(
                format!("kappa term-count ratio L={left} N={right}"),
                count_ok,
            ));
        }
    }
    checks
}

/// Traceless derivatives of `1/r` against the closed form, `k <= max_k`.
pub fn onebyr_checks(max_k: u32) -> Vec<Check> {
    (1..=max_k)
        .map(|k| match onebyr_identity_check(k) {
            Ok(ok) => Check::exact(format!("traceless derivatives of 1/r k={k}"), ok),
            Err(e) => Check::failed(format!("traceless derivatives of 1/r k={k}"), e),
        })
        .collect()
}

pub fn laplacian_checks(max_rank: u32) -> Vec<Check> {
    let mut checks = Vec::new();
    for rank in 0..=max_rank {
        for n in 0..=rank / 2 {
            let name = format!("iterated Laplacian L={rank} n={n}");
            checks.push(match laplacian_identity_check(rank, n) {
                Ok(ok) => Check::exact(name, ok),
                Err(e) => Check::failed(name, e),
            });
        }
    }
    checks
}

fn relative_error(numeric: &SymTensor<f64>, exact: &SymTensor<f64>) -> f64 {
    let scale = exact.max_abs();
    let diff = numeric.max_abs_diff(exact);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Numerical projector against the closed form on `count` seeded
/// directions, cross-projector leakage, orthogonality of distinct
/// components and quadrature exactness.
pub fn oracle_checks(max_rank: u32, seed: u64, tol: f64) -> Vec<Check> {
    let directions = random_unit_vectors(seed, ORACLE_VECTORS);
    let mut checks = Vec::new();
    for rank in 0..=max_rank {
        let ells: Vec<u32> = (rank % 2..=rank).step_by(2).collect();
        let rule = build_quadrature(2 * rank);
        let monomials: Vec<SymTensor<f64>> = rule
            .nodes
            .iter()
            .map(|(p, _)| evaluate_x(rank, rank, p).expect("quadrature nodes are unit vectors"))
            .collect();
        let components: Vec<Vec<SymTensor<f64>>> = ells
            .iter()
            .map(|&ell| {
                let c = component(rank, ell);
                rule.nodes
                    .iter()
                    .map(|(p, _)| evaluate_combo(&c, p).expect("unit node"))
                    .collect()
            })
            .collect();

        for &ell in &ells {
            let exact_combo = component(rank, ell);
            let mut worst = 0.0f64;
            for u in &directions {
                let numeric = project_tabulated(&rule, rank, ell, u, &monomials)
                    .and_then(|num| Ok((num, evaluate_combo(&exact_combo, u)?)));
                match numeric {
                    Ok((num, exact)) => worst = worst.max(relative_error(&num, &exact)),
                    Err(_) => worst = f64::INFINITY,
                }
            }
            checks.push(Check::numeric(
                format!("projector vs closed form L={rank} l={ell}"),
                worst,
                tol,
            ));
        }

        let mut leakage = 0.0f64;
        for (i, &ell) in ells.iter().enumerate() {
            for (j, fields) in components.iter().enumerate() {
                if i == j {
                    continue;
                }
                for u in &directions {
                    leakage = match project_tabulated(&rule, rank, ell, u, fields) {
                        Ok(t) => leakage.max(t.max_abs()),
                        Err(_) => f64::INFINITY,
                    };
                }
            }
        }
        if ells.len() > 1 {
            checks.push(Check::numeric(
                format!("cross-l projection L={rank}"),
                leakage,
                tol,
            ));
        }

        let mut overlap = 0.0f64;
        for i in 0..ells.len() {
            for j in i + 1..ells.len() {
                let integral = rule.nodes.iter().enumerate().fold(0.0, |acc, (k, (_, w))| {
                    acc + w * components[i][k].full_contraction(&components[j][k])
                });
                overlap = overlap.max(integral.abs());
            }
        }
        if ells.len() > 1 {
            checks.push(Check::numeric(
                format!("orthogonality L={rank}"),
                overlap,
                tol,
            ));
        }
    }
    for degree in 0..=2 * max_rank {
        let rule = build_quadrature(degree);
        checks.push(Check::numeric(
            format!("quadrature exactness degree={degree}"),
            quadrature_error(&rule),
            QUADRATURE_BOUND,
        ));
    }
    checks
}

/// Largest error of `rule` over all monomials up to its exact degree,
/// against the closed-form angular averages.
pub fn quadrature_error(rule: &QuadratureRule) -> f64 {
    let any = [0.0, 0.0, 1.0];
    let mut worst = 0.0f64;
    for degree in 0..=rule.exact_degree {
        let expected = evaluate_combo(&angular_average(degree), &any).expect("unit vector");
        for idx in MultiIndex::all(degree) {
            let [a, b, c] = idx.0;
            let got =
                rule.integrate(|p| p[0].powi(a as i32) * p[1].powi(b as i32) * p[2].powi(c as i32));
            worst = worst.max((got - expected.get(idx)).abs());
        }
    }
    worst
}
