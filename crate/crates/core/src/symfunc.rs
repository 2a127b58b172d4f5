//! Symmetric functions in the power-sum basis, plethysm, and Schur expansion.
//!
//! Elements are homogeneous sparse maps `ρ ↦ c_ρ` meaning `Σ c_ρ p_ρ`. The
//! p-basis makes products (concatenate-and-sort keys) and plethysm
//! (`p_r[p_m] = p_{rm}`) trivial. Schur coefficients are recovered through
//! `⟨p_ρ, s_λ⟩ = χ_λ(ρ)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::characters::chi;
use crate::error::{invalid, Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::Rational;

/// A homogeneous symmetric function `Σ c_ρ p_ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumElement {
    degree: usize,
    terms: BTreeMap<Partition, Rational>,
}

/// Which classical family to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// complete homogeneous `h`
    H,
    /// elementary `e`
    E,
    /// Schur `s`
    S,
}

impl PowerSumElement {
    pub fn zero(degree: usize) -> Self {
        PowerSumElement { degree, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::power_sum(Partition::empty())
    }

    pub fn constant(c: Rational) -> Self {
        let mut f = Self::zero(0);
        f.add_term(Partition::empty(), c);
        f
    }

    /// `p_ρ`
    pub fn power_sum(rho: Partition) -> Self {
        let mut terms = BTreeMap::new();
        let degree = rho.size();
        terms.insert(rho, Rational::one());
        PowerSumElement { degree, terms }
    }

    /// `p_r` (`p_0 = 1`)
    pub fn p(r: usize) -> Self {
        Self::power_sum(Partition::row(r))
    }

    /// `h_n = Σ_ρ z_ρ^{-1} p_ρ`
    pub fn h(n: usize) -> Self {
        Self::from_class_function(n, |_| BigInt::one())
    }

    /// `e_n = Σ_ρ sign(ρ) z_ρ^{-1} p_ρ`
    pub fn e(n: usize) -> Self {
        Self::from_class_function(n, |rho| BigInt::from(rho.sign()))
    }

    /// `s_λ = Σ_ρ z_ρ^{-1} χ_λ(ρ) p_ρ`
    pub fn schur(lambda: &Partition) -> Self {
        Self::from_class_function(lambda.size(), |rho| chi(lambda.parts(), rho.parts()))
    }

    /// `Σ_ρ z_ρ^{-1} f(ρ) p_ρ`, the Frobenius image of a class function.
    fn from_class_function(n: usize, f: impl Fn(&Partition) -> BigInt) -> Self {
        let mut out = Self::zero(n);
        for rho in partitions_of(n, None) {
            let c = Rational::new(f(&rho), BigInt::from(rho.centralizer_order()));
            out.add_term(rho, c);
        }
        out
    }

    /// Expands `h_λ`, `e_λ` (products over the parts of `index`) or `s_λ`.
    pub fn base_to_power(kind: BaseKind, index: &Partition) -> Self {
        match kind {
            BaseKind::S => Self::schur(index),
            BaseKind::H => index.parts().iter().fold(Self::one(), |acc, &r| &acc * &Self::h(r)),
            BaseKind::E => index.parts().iter().fold(Self::one(), |acc, &r| &acc * &Self::e(r)),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, rho: &Partition) -> Rational {
        self.terms.get(rho).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, rho: Partition, c: Rational) {
        use std::collections::btree_map::Entry;
        debug_assert_eq!(rho.size(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(rho) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        PowerSumElement { degree: self.degree, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Sum of two elements of equal degree.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(invalid(format!(
                "cannot add homogeneous elements of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let rhs = if self.is_zero() { &Self::zero(0) } else { other };
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `ω`: `p_r ↦ (-1)^{r-1} p_r`, i.e. `p_ρ ↦ sign(ρ) p_ρ`.
    pub fn omega(&self) -> Self {
        PowerSumElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), if k.sign() < 0 { -v } else { v.clone() })).collect(),
        }
    }

    /// `p_r[self]`: every part of every key multiplied by `r`.
    pub fn adams(&self, r: usize) -> Self {
        PowerSumElement {
            degree: self.degree * r,
            terms: self.terms.iter().map(|(k, v)| (k.scale(r), v.clone())).collect(),
        }
    }

    /// The plethysm `self[inner]`.
    pub fn plethysm(&self, inner: &Self) -> Result<Self> {
        if inner.degree == 0 {
            return Err(invalid("plethysm needs an inner element of positive degree"));
        }
        let mut out = Self::zero(self.degree * inner.degree);
        let mut adams_cache: BTreeMap<usize, PowerSumElement> = BTreeMap::new();
        for (rho, c) in &self.terms {
            let mut prod = Self::one();
            for &r in rho.parts() {
                let factor = adams_cache.entry(r).or_insert_with(|| inner.adams(r));
                prod = &prod * factor;
            }
            for (k, v) in prod.terms {
                out.add_term(k, v * c);
            }
        }
        Ok(out)
    }

    /// `Σ_ρ c_ρ χ_λ(ρ)` for each requested `λ`, as rationals.
    pub fn schur_coefficients(&self, targets: &[Partition]) -> Result<BTreeMap<Partition, Rational>> {
        if let Some(bad) = targets.iter().find(|t| t.size() != self.degree) {
            return Err(invalid(format!("target {bad} does not have degree {}", self.degree)));
        }
        let terms: Vec<(&Partition, &Rational)> = self.terms.iter().collect();
        Ok(targets
            .par_iter()
            .map(|lambda| {
                let mut acc = Rational::zero();
                for (rho, c) in &terms {
                    let x = chi(lambda.parts(), rho.parts());
                    if !x.is_zero() {
                        acc += *c * Rational::from_integer(x);
                    }
                }
                (lambda.clone(), acc)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    /// Full Schur expansion; every coefficient must be an integer.
    pub fn schur_expand(&self) -> Result<SchurExpansion> {
        self.schur_expand_filtered(None)
    }

    /// Schur expansion restricted to shapes with at most `max_length` rows.
    pub fn schur_expand_filtered(&self, max_length: Option<usize>) -> Result<SchurExpansion> {
        let targets = partitions_of(self.degree, max_length);
        self.schur_expand_targets(&targets)
    }

    pub fn schur_expand_targets(&self, targets: &[Partition]) -> Result<SchurExpansion> {
        let mut coeffs = BTreeMap::new();
        for (lambda, c) in self.schur_coefficients(targets)? {
            coeffs.insert(lambda, integral(&c, "Schur coefficient")?);
        }
        Ok(SchurExpansion { coeffs })
    }
}

fn integral(c: &Rational, what: &str) -> Result<BigInt> {
    if !c.is_integer() {
        return Err(Error::InternalConsistency(format!("{what} {c} is not an integer")));
    }
    Ok(c.to_integer())
}

impl std::ops::Mul for &PowerSumElement {
    type Output = PowerSumElement;

    fn mul(self, rhs: &PowerSumElement) -> PowerSumElement {
        let mut out = PowerSumElement::zero(self.degree + rhs.degree);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.union(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for PowerSumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{v}·p{k}")?;
        }
        Ok(())
    }
}

/// `Σ a_λ s_λ` with integer coefficients; zeros are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurExpansion {
    pub coeffs: BTreeMap<Partition, BigInt>,
}

impl SchurExpansion {
    pub fn get(&self, lambda: &Partition) -> BigInt {
        self.coeffs.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Partition, i64)>) -> Self {
        SchurExpansion {
            coeffs: pairs.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, BigInt::from(c))).collect(),
        }
    }
}

/// `a^π_{μλ}`: the coefficient of `s_π` in `s_μ[s_λ]`, by full power-sum expansion.
pub fn plethysm_coefficient(mu: &Partition, lambda: &Partition, pi: &Partition) -> Result<BigUint> {
    if pi.size() != mu.size() * lambda.size() {
        return Err(invalid(format!("|π| = {} but |μ|·|λ| = {}", pi.size(), mu.size() * lambda.size())));
    }
    let outer = PowerSumElement::schur(mu);
    let value = if lambda.is_empty() {
        // s_μ[1] = s_μ(1, 0, 0, ...)
        let c = if mu.len() <= 1 { 1 } else { 0 };
        Rational::from_integer(BigInt::from(c))
    } else {
        let composed = outer.plethysm(&PowerSumElement::schur(lambda))?;
        composed.schur_coefficients(std::slice::from_ref(pi))?.remove(pi).unwrap_or_else(Rational::zero)
    };
    nonnegative(integral(&value, "plethysm coefficient")?)
}

fn nonnegative(x: BigInt) -> Result<BigUint> {
    x.to_biguint().ok_or_else(|| Error::InternalConsistency(format!("coefficient {x} is negative")))
}

/// Inner function of a fast plethysm `s_μ[h_k]` or `s_μ[e_k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Inner {
    #[default]
    H,
    E,
}

/// `a^π_{μ,(k)}` (or `a^π_{μ,(1^k)}` with [`Inner::E`]) without expanding the plethysm.
///
/// Uses `s_μ[h_k] = Σ_ρ z_ρ^{-1} χ_μ(ρ) Π_j h_k(x^{ρ_j})` in `n = ℓ(π)`
/// variables and extracts `[x^{π+δ}] a_δ · (...)`, where `a_δ` is the
/// Vandermonde alternant. Monomial coefficients of `Π_j h_k(x^{ρ_j})` are
/// counted by a dynamic program over the last `n-1` exponents; the first is
/// forced by the degree.
pub fn plethysm_coefficient_fast(mu: &Partition, k: usize, pi: &Partition, inner: Inner) -> Result<BigUint> {
    let p = mu.size();
    if pi.size() != p * k {
        return Err(invalid(format!("|π| = {} but pk = {}", pi.size(), p * k)));
    }
    // ω(s_μ[h_k]) = s_{μ'}[e_k] with μ' = μ for even k and μ^T for odd k, so
    // the problem may be solved for π^T instead; take the smaller table.
    let conj = pi.conjugate();
    let (mu, pi, inner) = if table_size(&conj) < table_size(pi) {
        let mu = if k.is_multiple_of(2) { mu.clone() } else { mu.conjugate() };
        let flipped = match inner {
            Inner::H => Inner::E,
            Inner::E => Inner::H,
        };
        (mu, conj, flipped)
    } else {
        (mu.clone(), pi.clone(), inner)
    };
    let targets = alternant_targets(&pi);
    if targets.is_empty() {
        return Ok(BigUint::zero());
    }
    let classes = partitions_of(p, None);
    let terms: Vec<Rational> = classes
        .par_iter()
        .map(|rho| {
            let x = chi(mu.parts(), rho.parts());
            if x.is_zero() {
                return Rational::zero();
            }
            let alt = alternating_count(rho.parts(), k, pi.len(), inner, &targets);
            Rational::new(x * alt, BigInt::from(rho.centralizer_order()))
        })
        .collect();
    let total: Rational = terms.into_iter().sum();
    nonnegative(integral(&total, "plethysm coefficient")?)
}

/// Upper bound on the dynamic-programming table for target shape `π`.
fn table_size(pi: &Partition) -> u128 {
    let n = pi.len();
    (1..n).fold(1u128, |acc, i| acc.saturating_mul((pi.part(i) + n - i) as u128))
}

/// `c^λ_{p,k}`, the coefficient of `s_λ` in `h_k^p`, through the same alternant
/// extraction (independent of tableau enumeration).
pub fn tensor_multiplicity(lambda: &Partition, p: usize, k: usize) -> Result<BigUint> {
    if lambda.size() != p * k {
        return Err(invalid(format!("|λ| = {} but pk = {}", lambda.size(), p * k)));
    }
    // ω(h_k^p) = e_k^p
    let conj = lambda.conjugate();
    let (shape, inner) =
        if table_size(&conj) < table_size(lambda) { (conj, Inner::E) } else { (lambda.clone(), Inner::H) };
    let targets = alternant_targets(&shape);
    let count = alternating_count(&vec![1; p], k, shape.len(), inner, &targets);
    nonnegative(count)
}

/// Exponent vectors `π + δ − w(δ)` with nonnegative entries, paired with `sign(w)`.
fn alternant_targets(pi: &Partition) -> Vec<(Vec<usize>, bool)> {
    let n = pi.len();
    let parts = pi.parts();
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut cur = Vec::with_capacity(n);
    // δ_i = n - 1 - i; choose w(i) position by position.
    fn rec(
        i: usize,
        n: usize,
        parts: &[usize],
        used: &mut [bool],
        cur: &mut Vec<usize>,
        odd: bool,
        out: &mut Vec<(Vec<usize>, bool)>,
    ) {
        if i == n {
            out.push((cur.clone(), odd));
            return;
        }
        let base = parts[i] + (n - 1 - i);
        for j in 0..n {
            if used[j] {
                continue;
            }
            let shift = n - 1 - j;
            if shift > base {
                continue;
            }
            // Inversions contributed: earlier-unused indices smaller than j.
            let inv = used[..j].iter().filter(|&&u| !u).count();
            used[j] = true;
            cur.push(base - shift);
            rec(i + 1, n, parts, used, cur, odd ^ (inv % 2 == 1), out);
            cur.pop();
            used[j] = false;
        }
    }
    rec(0, n, parts, &mut used, &mut cur, false, &mut out);
    out
}

/// `Σ_w sign(w) · #{(α_j) : |α_j| = k, Σ_j ρ_j α_j = target_w}`.
fn alternating_count(cycle: &[usize], k: usize, n: usize, inner: Inner, targets: &[(Vec<usize>, bool)]) -> BigInt {
    let tails: Vec<Vec<usize>> = targets.iter().map(|(t, _)| t[1.min(t.len())..].to_vec()).collect();
    let counts = match count_compositions::<u128>(cycle, k, n, inner, &tails) {
        Some(c) => c.into_iter().map(BigInt::from).collect::<Vec<_>>(),
        None => count_compositions::<BigUint>(cycle, k, n, inner, &tails)
            .expect("arbitrary precision cannot overflow")
            .into_iter()
            .map(BigInt::from)
            .collect(),
    };
    let mut total = BigInt::zero();
    for ((_, odd), c) in targets.iter().zip(counts) {
        if *odd {
            total -= c;
        } else {
            total += c;
        }
    }
    total
}

trait Count: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn checked_plus(&self, other: &Self) -> Option<Self>;
}

impl Count for u128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn checked_plus(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
}

impl Count for BigUint {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_plus(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
}

/// For each tail vector `t` (exponents of variables `2..=n`), the number of
/// tuples `(α_1, …, α_m)` of exponent vectors of degree `k` in `n`
/// variables with `Σ_j cycle[j]·α_j` having tail `t`. Returns `None` on
/// overflow of the counter type.
fn count_compositions<T: Count>(
    cycle: &[usize],
    k: usize,
    n: usize,
    inner: Inner,
    tails: &[Vec<usize>],
) -> Option<Vec<T>> {
    if n == 0 {
        // No variables: only the empty monomial, which has degree 0.
        let v = if k == 0 || cycle.is_empty() { T::unit() } else { T::nil() };
        return Some(vec![v; tails.len()]);
    }
    let dims = n - 1;
    let mut bound = vec![0usize; dims];
    for t in tails {
        for (b, &x) in bound.iter_mut().zip(t) {
            *b = (*b).max(x);
        }
    }
    let mut strides = vec![1usize; dims];
    for i in (0..dims.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * (bound[i + 1] + 1);
    }
    let size = if dims == 0 { 1 } else { strides[0] * (bound[0] + 1) };

    let mut table: Vec<T> = vec![T::nil(); size];
    table[0] = T::unit();
    let mut state = vec![0usize; dims];
    for &r in cycle {
        let steps = tail_steps(r, k, dims, &bound, &strides, inner);
        let mut next: Vec<T> = vec![T::nil(); size];
        for (idx, val) in table.iter().enumerate() {
            if val.is_nil() {
                continue;
            }
            decode(idx, &strides, &bound, &mut state);
            'steps: for (vec, offset) in &steps {
                for d in 0..dims {
                    if state[d] + vec[d] > bound[d] {
                        continue 'steps;
                    }
                }
                let slot = &mut next[idx + offset];
                *slot = slot.checked_plus(val)?;
            }
        }
        table = next;
    }
    Some(
        tails
            .iter()
            .map(|t| {
                let idx: usize = t.iter().zip(&strides).map(|(x, s)| x * s).sum();
                table[idx].clone()
            })
            .collect(),
    )
}

fn decode(mut idx: usize, strides: &[usize], bound: &[usize], out: &mut [usize]) {
    for d in 0..strides.len() {
        out[d] = idx / strides[d];
        idx %= strides[d];
        debug_assert!(out[d] <= bound[d]);
    }
}

/// All `r·t` for admissible tails `t` of one factor, with their flat offsets.
fn tail_steps(
    r: usize,
    k: usize,
    dims: usize,
    bound: &[usize],
    strides: &[usize],
    inner: Inner,
) -> Vec<(Vec<usize>, usize)> {
    let max_entry = match inner {
        Inner::H => k,
        Inner::E => 1,
    };
    let min_total = match inner {
        Inner::H => 0,
        Inner::E => k.saturating_sub(1),
    };
    let mut out = Vec::new();
    let mut cur = vec![0usize; dims];
    fn rec(
        d: usize,
        left: usize,
        ctx: (usize, usize, usize, &[usize], &[usize]),
        cur: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, usize)>,
    ) {
        let (r, max_entry, min_total, bound, strides) = ctx;
        if d == cur.len() {
            let used: usize = cur.iter().sum();
            if used >= min_total {
                let v: Vec<usize> = cur.iter().map(|x| x * r).collect();
                let off = v.iter().zip(strides).map(|(x, s)| x * s).sum();
                out.push((v, off));
            }
            return;
        }
        let cap = left.min(max_entry).min(bound[d] / r);
        for x in 0..=cap {
            cur[d] = x;
            rec(d + 1, left - x, ctx, cur, out);
        }
        cur[d] = 0;
    }
    if r == 0 {
        return out;
    }
    rec(0, k, (r, max_entry, min_total, bound, strides), &mut cur, &mut out);
    out
}

/// Peels the full first column block off `λ`: with `ℓ(λ) = p`, returns
/// `(λ − λ_p·(1^p), k − λ_p, μ or μ^T)` according to the parity of `λ_p`.
/// Identity when `ℓ(λ) ≠ p`.
pub fn reduce_by_strip(lambda: &Partition, mu: &Partition, k: usize) -> (Partition, usize, Partition) {
    let p = mu.size();
    if p == 0 || lambda.len() != p {
        return (lambda.clone(), k, mu.clone());
    }
    let last = lambda.part(p - 1);
    let reduced = Partition::from_unsorted(lambda.parts()[..p - 1].iter().map(|x| x - last).collect());
    let mu_red = if last.is_multiple_of(2) { mu.clone() } else { mu.conjugate() };
    (reduced, k - last.min(k), mu_red)
}
