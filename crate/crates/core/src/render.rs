//! Text, JSON and LaTeX renderings of decompositions, transforms and
//! derivative identities.
//!
//! JSON output is compact, with components ordered by descending `l` and
//! coefficients by descending `n`. Fractions are strings (`"p/q"`, or `"p"`
//! for integers). [`DecomposeReport::from_json`] reads that format back and
//! re-rendering a parsed report reproduces the input byte for byte.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{format_rational, parse_rational, PiScaled, Rational};
use crate::decomposition::{all_components, component};
use crate::error::{domain, Error, Result};
use crate::fourier::{DerivativeIdentity, FourierResult, IdentityKind, RadialKind, RadialTerm};
use crate::tensor::{x_term_count, XCombo};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// One component prepared for output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedComponent {
    pub ell: u32,
    pub combo: XCombo,
    /// `(n, number of terms in X^{L,n})`, descending `n`.
    pub term_counts: Vec<(u32, BigInt)>,
}

impl RenderedComponent {
    pub fn new(ell: u32, combo: XCombo) -> Self {
        let term_counts = combo
            .terms()
            .map(|(n, _)| {
                let count = x_term_count(combo.rank(), n).expect("XCombo keys are valid");
                (n, count)
            })
            .collect();
        Self {
            ell,
            combo,
            term_counts,
        }
    }

    pub fn rank(&self) -> u32 {
        self.combo.rank()
    }

    /// `"n" -> "p/q"` pairs, descending `n`.
    pub fn x_coefficients(&self) -> Vec<(String, String)> {
        self.combo
            .terms()
            .map(|(n, c)| (n.to_string(), format_rational(c)))
            .collect()
    }
}

/// Output of `decompose`: all components of a rank, or a single one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposeReport {
    pub rank: u32,
    pub components: Vec<RenderedComponent>,
}

impl DecomposeReport {
    /// Every component of `rank`, or only `ell` when given. `ell` must
    /// satisfy `ell <= rank` with `rank - ell` even.
    pub fn new(rank: u32, ell: Option<u32>) -> Result<Self> {
        let components = match ell {
            Some(l) => {
                if l > rank || !(rank - l).is_multiple_of(2) {
                    return Err(domain(format!(
                        "ell must satisfy 0 <= ell <= rank with rank - ell even (rank={rank}, ell={l})"
                    )));
                }
                vec![RenderedComponent::new(l, component(rank, l))]
            }
            None => all_components(rank)
                .into_iter()
                .map(|(l, c)| RenderedComponent::new(l, c))
                .collect(),
        };
        Ok(Self { rank, components })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    /// Parses and validates the JSON written by [`DecomposeReport::to_json`].
    ///
    /// Checks structure only: keys and parities must be consistent with the
    /// declared rank, but coefficient values are not recomputed.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawReport = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut components = Vec::with_capacity(raw.components.len());
        let mut last_ell: Option<u32> = None;
        for c in raw.components {
            if c.ell > raw.rank || !(raw.rank - c.ell).is_multiple_of(2) {
                return Err(Error::Parse(format!(
                    "component ell={} is inconsistent with rank {}",
                    c.ell, raw.rank
                )));
            }
            if last_ell.is_some_and(|prev| c.ell >= prev) {
                return Err(Error::Parse(
                    "components must have strictly descending ell".into(),
                ));
            }
            last_ell = Some(c.ell);
            let mut terms = Vec::with_capacity(c.x_coefficients.0.len());
            let mut last_n: Option<u32> = None;
            for (key, value) in &c.x_coefficients.0 {
                let n = parse_index(key)?;
                if n > c.ell {
                    return Err(Error::Parse(format!(
                        "coefficient key n={n} exceeds ell={}",
                        c.ell
                    )));
                }
                if last_n.is_some_and(|prev| n >= prev) {
                    return Err(Error::Parse(
                        "x_coefficients keys must be strictly descending".into(),
                    ));
                }
                last_n = Some(n);
                terms.push((n, parse_rational(value)?));
            }
            let combo =
                XCombo::from_terms(raw.rank, terms).map_err(|e| Error::Parse(e.to_string()))?;
            components.push(RenderedComponent::new(c.ell, combo));
        }
        Ok(Self {
            rank: raw.rank,
            components,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rank {}", self.rank);
        for c in &self.components {
            let _ = writeln!(out, "  l={}: {}", c.ell, c.combo);
            for (n, count) in &c.term_counts {
                let _ = writeln!(
                    out,
                    "    n={n}  coefficient {}  ({count} {})",
                    format_rational(&c.combo.coeff(*n)),
                    if count.is_one() { "term" } else { "terms" }
                );
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for c in &self.components {
            let _ = writeln!(out, "{}", component_latex(c));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json() + "\n",
            Format::Latex => self.to_latex(),
        }
    }
}

fn parse_index(key: &str) -> Result<u32> {
    if key.is_empty()
        || !key.bytes().all(|b| b.is_ascii_digit())
        || (key.len() > 1 && key.starts_with('0'))
    {
        return Err(Error::Parse(format!("invalid coefficient key {key:?}")));
    }
    key.parse()
        .map_err(|_| Error::Parse(format!("coefficient key {key:?} out of range")))
}

struct CoefficientMap<'a>(&'a XCombo);

impl Serialize for CoefficientMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (n, c) in self.0.terms() {
            map.serialize_entry(&n.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

impl Serialize for RenderedComponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RenderedComponent", 2)?;
        s.serialize_field("ell", &self.ell)?;
        s.serialize_field("x_coefficients", &CoefficientMap(&self.combo))?;
        s.end()
    }
}

impl Serialize for DecomposeReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DecomposeReport", 2)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("components", &self.components)?;
        s.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReport {
    rank: u32,
    components: Vec<RawComponent>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    ell: u32,
    x_coefficients: OrderedPairs,
}

/// String-to-string JSON object with key order and duplicates preserved.
struct OrderedPairs(Vec<(String, String)>);

impl<'de> Deserialize<'de> for OrderedPairs {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PairsVisitor;

        impl<'de> Visitor<'de> for PairsVisitor {
            type Value = OrderedPairs;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an object mapping n to a fraction string")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<OrderedPairs, A::Error> {
                let mut pairs: Vec<(String, String)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    if pairs.iter().any(|(seen, _)| *seen == k) {
                        return Err(de::Error::custom(format!("duplicate key {k:?}")));
                    }
                    pairs.push((k, v));
                }
                Ok(OrderedPairs(pairs))
            }
        }

        deserializer.deserialize_map(PairsVisitor)
    }
}

fn index_list(symbol: &str, count: u32, offset: u32) -> Vec<String> {
    (1..=count)
        .map(|i| format!("{symbol}_{{i_{{{}}}}}", i + offset))
        .collect()
}

/// `\hat p_{i_1} ... \hat p_{i_n} \delta_{i_{n+1} i_{n+2}} ...` for the
/// canonical representative term of `X^{L,n}`.
fn representative_term(rank: u32, n: u32) -> String {
    let mut parts = index_list("\\hat p", n, 0);
    let mut i = n + 1;
    while i < rank {
        parts.push(format!("\\delta_{{i_{{{}}} i_{{{}}}}}", i, i + 1));
        i += 2;
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn latex_fraction(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", value.numer(), value.denom())
    }
}

/// LaTeX for one component, writing each `X^{L,n}` as one representative
/// term plus `+ perms` and its term count.
pub fn component_latex(c: &RenderedComponent) -> String {
    let rank = c.rank();
    let lhs_inner = if rank == 0 {
        "1".to_string()
    } else {
        index_list("\\hat p", rank, 0).join(" ")
    };
    let mut out = format!("\\left( {lhs_inner} \\right)^{{{rank}}}_{{{}}} =", c.ell);
    if c.combo.is_zero() {
        out.push_str(" 0");
        return out;
    }
    for (i, ((n, coeff), (_, count))) in c.combo.terms().zip(&c.term_counts).enumerate() {
        let sign = if coeff.is_negative() { "-" } else { "+" };
        if i > 0 || coeff.is_negative() {
            out.push(' ');
            out.push_str(sign);
        }
        let magnitude = coeff.abs();
        if !magnitude.is_one() {
            let _ = write!(out, " {}", latex_fraction(&magnitude));
        }
        let rep = representative_term(rank, n);
        if count.is_one() {
            let _ = write!(out, " {rep}");
        } else {
            let _ = write!(
                out,
                " \\left( {rep} + {{\\rm perms}} \\right)_{{{count} \\; {{\\rm terms}}}}"
            );
        }
    }
    out
}

fn power_suffix(symbol: &str, power: u32, caret_braces: bool) -> Option<String> {
    match power {
        0 => None,
        1 => Some(symbol.to_string()),
        p if caret_braces => Some(format!("{symbol}^{{{p}}}")),
        p => Some(format!("{symbol}^{p}")),
    }
}

struct Pieces {
    negative: bool,
    numerator: Vec<String>,
    denominator: Vec<String>,
}

fn split_coefficient(coefficient: &PiScaled, r_power: u32, latex: bool) -> Pieces {
    let (value, has_i) = coefficient.folded();
    let (pi, r) = if latex { ("\\pi", "r") } else { ("pi", "r") };
    let mut numerator = Vec::new();
    let mut denominator = Vec::new();
    let p = value.numer().abs();
    if !p.is_one() || value.is_zero() {
        numerator.push(p.to_string());
    }
    if has_i {
        numerator.push("i".to_string());
    }
    if coefficient.pi_power > 0 {
        numerator.extend(power_suffix(pi, coefficient.pi_power as u32, latex));
    }
    if !value.denom().is_one() {
        denominator.push(value.denom().to_string());
    }
    if coefficient.pi_power < 0 {
        denominator.extend(power_suffix(pi, coefficient.pi_power.unsigned_abs(), latex));
    }
    denominator.extend(power_suffix(r, r_power, latex));
    Pieces {
        negative: value.is_negative(),
        numerator,
        denominator,
    }
}

/// Plain-text radial factor, e.g. `-3/(4 pi r^3)`, `i/(4 pi r^2)`,
/// `delta3(r)` or `-15 delta3(r)/r^2`.
pub fn radial_text(term: &RadialTerm) -> String {
    let sign = |neg: bool| if neg { "-" } else { "" };
    match term.kind {
        RadialKind::PowerLaw => {
            let p = split_coefficient(&term.coefficient, term.r_power, false);
            let num = if p.numerator.is_empty() {
                "1".to_string()
            } else {
                p.numerator.join(" ")
            };
            let den = p.denominator.join(" ");
            let body = match p.denominator.len() {
                0 => num,
                1 => format!("{num}/{den}"),
                _ => format!("{num}/({den})"),
            };
            format!("{}{body}", sign(p.negative))
        }
        RadialKind::Delta => {
            let p = split_coefficient(&term.coefficient, 0, false);
            let mut body = p.numerator.join(" ");
            if !body.is_empty() {
                body.push(' ');
            }
            body.push_str("delta3(r)");
            match p.denominator.len() {
                0 => {}
                1 => body = format!("{body}/{}", p.denominator[0]),
                _ => body = format!("{body}/({})", p.denominator.join(" ")),
            }
            if let Some(r) = power_suffix("r", term.r_power, false) {
                body = format!("{body}/{r}");
            }
            format!("{}{body}", sign(p.negative))
        }
    }
}

pub fn radial_latex(term: &RadialTerm) -> String {
    let sign = |neg: bool| if neg { "-" } else { "" };
    let frac = |num: &[String], den: &[String]| {
        let n = if num.is_empty() {
            "1".into()
        } else {
            num.join(" ")
        };
        if den.is_empty() {
            n
        } else {
            format!("\\frac{{{n}}}{{{}}}", den.join(" "))
        }
    };
    match term.kind {
        RadialKind::PowerLaw => {
            let p = split_coefficient(&term.coefficient, term.r_power, true);
            format!("{}{}", sign(p.negative), frac(&p.numerator, &p.denominator))
        }
        RadialKind::Delta => {
            let p = split_coefficient(&term.coefficient, term.r_power, true);
            let mut num = p.numerator;
            num.push("\\delta(\\vec r\\,)".into());
            format!("{}{}", sign(p.negative), frac(&num, &p.denominator))
        }
    }
}

fn angular_symbol_latex(symbol: &str, rank: u32, ell: u32) -> String {
    let inner = if rank == 0 {
        "1".to_string()
    } else {
        index_list(symbol, rank, 0).join(" ")
    };
    format!("\\left( {inner} \\right)^{{{rank}}}_{{{ell}}}")
}

fn kind_name(kind: RadialKind) -> &'static str {
    match kind {
        RadialKind::PowerLaw => "power_law",
        RadialKind::Delta => "delta",
    }
}

impl Serialize for FourierResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct ChannelOut<'a>(&'a crate::fourier::Channel);
        impl Serialize for ChannelOut<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let c = self.0;
                let mut s = serializer.serialize_struct("Channel", 3)?;
                s.serialize_field("ell", &c.ell)?;
                s.serialize_field("radial", &RadialOut(&c.radial))?;
                s.serialize_field("x_coefficients", &CoefficientMap(&c.angular))?;
                s.end()
            }
        }
        let channels: Vec<ChannelOut> = self.channels.iter().map(ChannelOut).collect();
        let mut s = serializer.serialize_struct("FourierResult", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("channels", &channels)?;
        s.end()
    }
}

struct RadialOut<'a>(&'a RadialTerm);

impl Serialize for RadialOut<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.0;
        let mut s = serializer.serialize_struct("RadialTerm", 6)?;
        s.serialize_field("kind", kind_name(r.kind))?;
        s.serialize_field("coefficient", &format_rational(&r.coefficient.value))?;
        s.serialize_field("pi_power", &r.coefficient.pi_power)?;
        s.serialize_field("i_power", &r.coefficient.i_power)?;
        s.serialize_field("r_power", &r.r_power)?;
        s.serialize_field("text", &radial_text(r))?;
        s.end()
    }
}

pub fn render_transform(result: &FourierResult, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(result).expect("serializable") + "\n",
        Format::Text => {
            let mut out = format!(
                "transform of p^{} times rank-{} unit-vector monomial\n",
                result.n, result.rank
            );
            for c in &result.channels {
                let _ = writeln!(
                    out,
                    "  l={}: {}  *  [{}]  (in x̂)",
                    c.ell,
                    radial_text(&c.radial),
                    c.angular
                );
            }
            out
        }
        Format::Latex => {
            let terms: Vec<String> = result
                .channels
                .iter()
                .map(|c| {
                    format!(
                        "{} {}",
                        radial_latex(&c.radial),
                        angular_symbol_latex("\\hat x", result.rank, c.ell)
                    )
                })
                .collect();
            let mut body = String::new();
            for (i, t) in terms.iter().enumerate() {
                if i > 0 && !t.starts_with('-') {
                    body.push_str(" + ");
                } else if i > 0 {
                    body.push(' ');
                }
                body.push_str(t);
            }
            format!(
                "\\int \\frac{{d^3 p}}{{(2 \\pi)^3}} e^{{i \\vec p \\cdot \\vec r}} \\, p^{{{}}} {} = {}\n",
                result.n,
                if result.rank == 0 {
                    String::new()
                } else {
                    index_list("\\hat p", result.rank, 0).join(" ")
                },
                body
            )
        }
    }
}

fn identity_kind_name(kind: IdentityKind) -> &'static str {
    match kind {
        IdentityKind::OneByR => "onebyr",
        IdentityKind::Delta => "delta",
    }
}

impl Serialize for DerivativeIdentity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DerivativeIdentity", 6)?;
        s.serialize_field("kind", identity_kind_name(self.kind))?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("coefficient", &format_rational(&self.coefficient))?;
        s.serialize_field("r_power", &self.r_power)?;
        s.serialize_field("delta", &self.has_delta())?;
        s.serialize_field("x_coefficients", &CoefficientMap(&self.angular))?;
        s.end()
    }
}

fn coefficient_over_r(coefficient: &Rational, r_power: u32) -> String {
    let r = power_suffix("r", r_power, false).unwrap_or_default();
    if r.is_empty() {
        format_rational(coefficient)
    } else {
        format!("{}/{r}", format_rational(coefficient))
    }
}

pub fn render_identity(identity: &DerivativeIdentity, format: Format) -> String {
    let k = identity.k;
    match format {
        Format::Json => serde_json::to_string(identity).expect("serializable") + "\n",
        Format::Text => {
            let derivs: Vec<String> = (1..=k).map(|i| format!("∂_i{i}")).collect();
            let units: Vec<String> = (1..=k).map(|i| format!("x̂_i{i}")).collect();
            let (operand, tail) = match identity.kind {
                IdentityKind::OneByR => ("(1/r)", ""),
                IdentityKind::Delta => ("delta3(r)", " delta3(r)"),
            };
            let mut out = format!(
                "({})^{k}_{k} {operand} = {} ({})^{k}_{k}{tail}\n",
                derivs.join(" "),
                coefficient_over_r(&identity.coefficient, identity.r_power),
                units.join(" "),
            );
            let _ = writeln!(
                out,
                "  where ({})^{k}_{k} = {}",
                units.join(" "),
                identity.angular
            );
            if identity.kind == IdentityKind::OneByR {
                out.push_str("  valid for r != 0\n");
                if k == 2 {
                    out.push_str(
                        "  note: including the origin, ∂_i ∂_j (1/r) = -(4 pi/3) δ_ij delta3(r) + 3/r^3 (x̂_i x̂_j - δ_ij/3)\n",
                    );
                }
            }
            out
        }
        Format::Latex => {
            let derivs = index_list("\\partial", k, 0).join(" ");
            let units = angular_symbol_latex("\\hat x", k, k);
            let (operand, tail) = match identity.kind {
                IdentityKind::OneByR => ("\\frac{1}{r}", ""),
                IdentityKind::Delta => ("\\delta(\\vec r\\,)", " \\delta(\\vec r\\,)"),
            };
            let c = &identity.coefficient;
            let sign = if c.is_negative() { "-" } else { "" };
            let r = power_suffix("r", identity.r_power, true).unwrap_or_else(|| "1".into());
            format!(
                "\\left( {derivs} \\right)^{{{k}}}_{{{k}}} {operand} = {sign}\\frac{{{}}}{{{r}}} {units}{tail}\n",
                c.abs(),
            )
        }
    }
}
