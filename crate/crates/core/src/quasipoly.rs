//! Quasi-polynomials `q(d) = Σ_i c_i(d) d^i` with periodic coefficients,
//! stored as one ordinary polynomial per residue class of `d mod P`.
//!
//! Fitting is exact: for each candidate `(period, degree)` every residue
//! class is interpolated on its first samples and must reproduce the rest,
//! including a held-out tail, without error.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{invalid, Result};
use crate::partitions::{factorial, Partition};
use crate::{parse_rational, rational_to_string, Rational};

/// `residues[r]` holds ascending coefficients of the polynomial used when
/// `d ≡ r (mod period)`; trailing zeros are trimmed (the zero polynomial is `[0]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuasiPolynomialJson", into = "QuasiPolynomialJson")]
pub struct QuasiPolynomial {
    period: usize,
    residues: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct QuasiPolynomialJson {
    period: usize,
    residues: Vec<Vec<String>>,
}

impl From<QuasiPolynomial> for QuasiPolynomialJson {
    fn from(q: QuasiPolynomial) -> Self {
        QuasiPolynomialJson {
            period: q.period,
            residues: q.residues.iter().map(|r| r.iter().map(rational_to_string).collect()).collect(),
        }
    }
}

impl TryFrom<QuasiPolynomialJson> for QuasiPolynomial {
    type Error = crate::Error;

    fn try_from(j: QuasiPolynomialJson) -> Result<Self> {
        let residues = j
            .residues
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QuasiPolynomial::new(j.period, residues)
    }
}

fn trim(mut poly: Vec<Rational>) -> Vec<Rational> {
    while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    if poly.is_empty() {
        poly.push(Rational::zero());
    }
    poly
}

fn poly_degree(poly: &[Rational]) -> usize {
    poly.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn poly_eval(poly: &[Rational], d: &Rational) -> Rational {
    poly.iter().rev().fold(Rational::zero(), |acc, c| acc * d + c)
}

impl QuasiPolynomial {
    pub fn new(period: usize, residues: Vec<Vec<Rational>>) -> Result<Self> {
        if period == 0 || residues.len() != period {
            return Err(invalid(format!(
                "quasi-polynomial needs period ≥ 1 and one polynomial per residue (period {period}, {} given)",
                residues.len()
            )));
        }
        Ok(QuasiPolynomial { period, residues: residues.into_iter().map(trim).collect() })
    }

    /// Period-1 constant.
    pub fn constant(c: Rational) -> Self {
        QuasiPolynomial { period: 1, residues: vec![vec![c]] }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn residues(&self) -> &[Vec<Rational>] {
        &self.residues
    }

    /// Largest degree over the residue polynomials.
    pub fn degree(&self) -> usize {
        self.residues.iter().map(|r| poly_degree(r)).max().unwrap_or(0)
    }

    pub fn evaluate(&self, d: u64) -> Rational {
        let poly = &self.residues[(d % self.period as u64) as usize];
        poly_eval(poly, &Rational::from_integer(BigInt::from(d)))
    }

    /// The coefficient of `d^degree` in each residue.
    pub fn leading_coefficients(&self) -> Vec<Rational> {
        let g = self.degree();
        self.residues.iter().map(|r| r.get(g).cloned().unwrap_or_else(Rational::zero)).collect()
    }

    pub fn leading_term_report(&self) -> LeadingTermReport {
        let leading = self.leading_coefficients();
        let constant = leading.windows(2).all(|w| w[0] == w[1]);
        LeadingTermReport { degree: self.degree(), leading, is_constant_leading: constant }
    }

    /// Smallest period reproducing the same function (residue polynomials
    /// repeat with that period).
    pub fn reduced(&self) -> Self {
        for p in 1..=self.period {
            if self.period.is_multiple_of(p) && (0..self.period).all(|r| self.residues[r] == self.residues[r % p]) {
                return QuasiPolynomial { period: p, residues: self.residues[..p].to_vec() };
            }
        }
        self.clone()
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, poly) in self.residues.iter().enumerate() {
            if r > 0 {
                write!(f, "; ")?;
            }
            if self.period > 1 {
                write!(f, "[d≡{r}] ")?;
            }
            let mut terms = Vec::new();
            for (i, c) in poly.iter().enumerate().rev() {
                if c.is_zero() && poly.len() > 1 {
                    continue;
                }
                let coeff = rational_to_string(c);
                terms.push(match i {
                    0 => coeff,
                    1 => format!("{coeff}·d"),
                    _ => format!("{coeff}·d^{i}"),
                });
            }
            write!(f, "{}", terms.join(" + "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingTermReport {
    pub degree: usize,
    #[serde(with = "rational_vec")]
    pub leading: Vec<Rational>,
    pub is_constant_leading: bool,
}

pub(crate) mod rational_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rational_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// `true` iff both fits have constant leading terms of equal degree and
/// `lead(a) = dim(V_μ)/p! · lead(c)`.
pub fn check_leading_ratio(a_fit: &QuasiPolynomial, c_fit: &QuasiPolynomial, mu: &Partition) -> Result<bool> {
    let a = a_fit.leading_term_report();
    let c = c_fit.leading_term_report();
    if !a.is_constant_leading || !c.is_constant_leading {
        return Err(invalid("leading ratio needs constant leading terms on both fits"));
    }
    if a.degree != c.degree {
        return Ok(false);
    }
    Ok(a.leading[0] == leading_ratio(mu) * &c.leading[0])
}

/// `dim(V_μ)/|μ|!`
pub fn leading_ratio(mu: &Partition) -> Rational {
    Rational::new(BigInt::from(mu.hook_dimension()), BigInt::from(factorial(mu.size())))
}

/// A sampled value `f(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub d: u64,
    pub value: Rational,
}

impl Sample {
    pub fn new(d: u64, value: impl Into<BigInt>) -> Self {
        Sample { d, value: Rational::from_integer(value.into()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Highest degree tried; `None` means as high as the samples allow.
    pub max_degree: Option<usize>,
    pub max_period: usize,
    /// Ignore samples with `d < drop_prefix`.
    pub drop_prefix: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { max_degree: None, max_period: 12, drop_prefix: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("insufficient samples: period {period}, degree {degree} needs {needed} per residue, smallest class has {available}")]
    InsufficientSamples { period: usize, degree: usize, needed: usize, available: usize },
    #[error("no quasi-polynomial fits within period ≤ {max_period}, degree ≤ {max_degree}")]
    NoFit { max_period: usize, max_degree: usize },
    #[error("samples must be at consecutive d: {0}")]
    BadSamples(String),
}

/// A held-out sample and the fit's prediction for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeldOut {
    pub d: u64,
    #[serde(with = "rational_str")]
    pub observed: Rational,
    #[serde(with = "rational_str")]
    pub predicted: Rational,
}

pub(crate) mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

/// A fit together with the evidence that validated it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fit {
    pub quasi_polynomial: QuasiPolynomial,
    pub samples_used: usize,
    pub held_out: Vec<HeldOut>,
}

impl Fit {
    pub fn max_residual(&self) -> Rational {
        self.held_out.iter().map(|h| (&h.observed - &h.predicted).abs()).max().unwrap_or_else(Rational::zero)
    }
}

/// Number of samples per residue class that are held out.
fn held_out_count(n: usize) -> usize {
    n.div_ceil(5).max(1)
}

/// Minimum samples needed per residue class to try `degree`.
pub fn samples_needed(degree: usize) -> usize {
    // degree + 1 to interpolate plus at least one held out; with ⌈n/5⌉ held
    // out this becomes the smallest n with n − ⌈n/5⌉ ≥ degree + 1
    (degree + 2..).find(|&n| n - held_out_count(n) > degree).expect("unbounded search")
}

/// The smallest `(period, degree)` fit; see [`fit_validated`].
pub fn fit_quasipolynomial(samples: &[Sample], options: &FitOptions) -> Result<QuasiPolynomial, FitError> {
    Ok(fit_validated(samples, options)?.quasi_polynomial)
}

/// Tries periods `1..=max_period` and, for each, degrees `0..=max_degree`.
/// Per residue class the last `⌈n/5⌉` samples are held out; the polynomial
/// through the first `degree+1` training samples must reproduce every other
/// sample exactly.
pub fn fit_validated(samples: &[Sample], options: &FitOptions) -> Result<Fit, FitError> {
    let samples: Vec<&Sample> = samples.iter().filter(|s| s.d >= options.drop_prefix).collect();
    if samples.windows(2).any(|w| w[1].d != w[0].d + 1) {
        return Err(FitError::BadSamples("gap or disorder in d".into()));
    }
    let mut insufficient: Option<FitError> = None;
    let mut tried: Option<(usize, usize)> = None;
    for period in 1..=options.max_period.max(1) {
        let classes: Vec<Vec<&Sample>> = (0..period)
            .map(|r| samples.iter().copied().filter(|s| (s.d % period as u64) as usize == r).collect())
            .collect();
        let smallest = classes.iter().map(Vec::len).min().unwrap_or(0);
        let top = options.max_degree.unwrap_or(usize::MAX);
        for degree in 0..=top {
            let needed = samples_needed(degree);
            if smallest < needed {
                if degree == 0 && insufficient.is_none() {
                    insufficient = Some(FitError::InsufficientSamples { period, degree, needed, available: smallest });
                }
                break;
            }
            tried = Some(match tried {
                Some((p, g)) => (p.max(period), g.max(degree)),
                None => (period, degree),
            });
            if let Some(fit) = try_fit(&classes, period, degree) {
                return Ok(fit);
            }
        }
    }
    match tried {
        Some((max_period, max_degree)) => Err(FitError::NoFit { max_period, max_degree }),
        None => Err(insufficient.unwrap_or(FitError::InsufficientSamples {
            period: 1,
            degree: 0,
            needed: samples_needed(0),
            available: samples.len(),
        })),
    }
}

fn try_fit(classes: &[Vec<&Sample>], period: usize, degree: usize) -> Option<Fit> {
    let mut residues = Vec::with_capacity(period);
    let mut held_out = Vec::new();
    let mut used = 0;
    for class in classes {
        let n = class.len();
        let hold = held_out_count(n);
        let points: Vec<(Rational, Rational)> =
            class[..degree + 1].iter().map(|s| (Rational::from_integer(BigInt::from(s.d)), s.value.clone())).collect();
        let poly = interpolate(&points);
        for s in &class[degree + 1..n - hold] {
            if poly_eval(&poly, &Rational::from_integer(BigInt::from(s.d))) != s.value {
                return None;
            }
        }
        for s in &class[n - hold..] {
            let predicted = poly_eval(&poly, &Rational::from_integer(BigInt::from(s.d)));
            if predicted != s.value {
                return None;
            }
            held_out.push(HeldOut { d: s.d, observed: s.value.clone(), predicted });
        }
        used += n;
        residues.push(poly);
    }
    held_out.sort_by_key(|h| h.d);
    Some(Fit {
        quasi_polynomial: QuasiPolynomial::new(period, residues).expect("one polynomial per residue"),
        samples_used: used,
        held_out,
    })
}

/// Lagrange interpolation; ascending coefficients.
fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    let mut result = vec![Rational::zero(); n.max(1)];
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            // basis *= (d − xj)
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (e, c) in basis.iter().enumerate() {
            result[e] += c * &scale;
        }
    }
    trim(result)
}

/// `true` iff `q` reproduces every extra sample.
pub fn is_stable(q: &QuasiPolynomial, extra: &[Sample]) -> bool {
    extra.iter().all(|s| q.evaluate(s.d) == s.value)
}

/// Parses CSV with header `d,value`; values may be `num/den`.
pub fn read_csv(text: &str) -> Result<Vec<Sample>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.replace(' ', "") == "d,value" => {}
        other => return Err(invalid(format!("expected CSV header \"d,value\", found {other:?}"))),
    }
    lines
        .map(|line| {
            let (d, v) = line.split_once(',').ok_or_else(|| invalid(format!("bad CSV line {line:?}")))?;
            let d: u64 = d.trim().parse().map_err(|e| invalid(format!("bad d in {line:?}: {e}")))?;
            Ok(Sample { d, value: parse_rational(v)? })
        })
        .collect()
}

pub fn write_csv(samples: &[Sample]) -> String {
    let mut out = String::from("d,value\n");
    for s in samples {
        out.push_str(&format!("{},{}\n", s.d, rational_to_string(&s.value)));
    }
    out
}
