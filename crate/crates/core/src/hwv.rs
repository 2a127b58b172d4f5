//! Highest weight vectors `h_T` in `(S^k V)^{⊗p}` and the `S_p`-module they span.
//!
//! Basis monomials `x^{α_1} ⊗ … ⊗ x^{α_p}` are keyed by the flat exponent
//! vector `(α_1 | … | α_p)` of length `p·n`. For an SSYT `T` of shape `λ`
//! with content `(k^p)`, `h_T` is the signed sum over independent
//! permutations of the entries of each column of `T`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::chi;
use crate::error::{invalid, Error, Result};
use crate::linalg::{self, Matrix};
use crate::partitions::{partitions_of, Partition};
use crate::pieri::enumerate_ssyt;
use crate::tableau::{FilledTableau, Ssyt};
use crate::{rational_to_string, Rational};

/// Default cap on the number of signed terms expanded for one `h_T`.
pub const DEFAULT_TERM_BUDGET: u128 = 10_000_000;

/// A sparse element of `(S^k V)^{⊗p}` with `dim V = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    n: usize,
    p: usize,
    k: usize,
    terms: BTreeMap<Vec<u16>, Rational>,
}

impl TensorVector {
    pub fn zero(n: usize, p: usize, k: usize) -> Self {
        TensorVector { n, p, k, terms: BTreeMap::new() }
    }

    /// Builds a vector from `(factors, coefficient)` pairs where `factors[m]`
    /// is the exponent vector of tensor factor `m`.
    pub fn from_terms(
        n: usize,
        p: usize,
        k: usize,
        terms: impl IntoIterator<Item = (Vec<Vec<u16>>, Rational)>,
    ) -> Result<Self> {
        let mut v = Self::zero(n, p, k);
        for (factors, c) in terms {
            if factors.len() != p
                || factors.iter().any(|f| f.len() != n || f.iter().map(|&e| e as usize).sum::<usize>() != k)
            {
                return Err(invalid(format!("monomial {factors:?} does not lie in (S^{k} V)^⊗{p} with dim V = {n}")));
            }
            v.add_term(factors.concat(), c);
        }
        Ok(v)
    }

    fn add_term(&mut self, key: Vec<u16>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, Rational> {
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

    pub fn coefficient(&self, key: &[u16]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// `self + c·other`
    pub fn add_scaled(&mut self, other: &TensorVector, c: &Rational) {
        for (key, v) in &other.terms {
            self.add_term(key.clone(), v * c);
        }
    }

    /// Total exponent of each variable, if equal for every term.
    pub fn weight(&self) -> Option<Vec<usize>> {
        let mut weights = self.terms.keys().map(|key| {
            let mut w = vec![0usize; self.n];
            for (idx, &e) in key.iter().enumerate() {
                w[idx % self.n] += e as usize;
            }
            w
        });
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// One term per line, `±num/den : (α_1 | … | α_p)`, in ascending key order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (key, c) in &self.terms {
            let sign = if c.is_negative() { "-" } else { "+" };
            let factors: Vec<String> = key
                .chunks(self.n.max(1))
                .map(|f| f.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            out.push_str(&format!("{sign}{} : ({})\n", rational_to_string(&c.abs()), factors.join(" | ")));
        }
        out
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// A permutation of `{1..p}`, stored 0-indexed: `images[m] = σ(m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(p: usize) -> Self {
        Permutation { images: (0..p).collect() }
    }

    /// From one-line notation with 1-indexed images.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let p = images.len();
        let mut seen = vec![false; p];
        for &x in images {
            if x == 0 || x > p || seen[x - 1] {
                return Err(invalid(format!("{images:?} is not a permutation of 1..{p}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|x| x - 1).collect() })
    }

    /// The transposition of `a` and `b` (1-indexed) in `S_p`.
    pub fn transposition(p: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > p || b > p {
            return Err(invalid(format!("transposition ({a} {b}) outside 1..{p}")));
        }
        let mut images: Vec<usize> = (0..p).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(m)` for 1-indexed `m`.
    pub fn apply(&self, m: usize) -> usize {
        self.images[m - 1] + 1
    }

    /// `(σ∘τ)(m) = σ(τ(m))`
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        Permutation { images: tau.images.iter().map(|&m| self.images[m]).collect() }
    }

    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.images.len()];
        let mut lens = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut m = start;
            while !seen[m] {
                seen[m] = true;
                m = self.images[m];
                len += 1;
            }
            lens.push(len);
        }
        Partition::from_unsorted(lens)
    }

    pub fn sign(&self) -> i32 {
        self.cycle_type().sign()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// All of `S_p` in lexicographic order of one-line notation.
    pub fn all(p: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..p).collect();
        loop {
            out.push(Permutation { images: images.clone() });
            // next lexicographic permutation
            let Some(i) = (1..p).rev().find(|&i| images[i - 1] < images[i]) else { break };
            let j = (i..p).rev().find(|&j| images[j] > images[i - 1]).expect("successor exists");
            images.swap(i - 1, j);
            images[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-indexed, fixed points omitted; the identity is `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let mut seen = vec![false; self.images.len()];
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut m = start;
            while !seen[m] {
                seen[m] = true;
                cycle.push((m + 1).to_string());
                m = self.images[m];
            }
            write!(f, "({})", cycle.join(" "))?;
        }
        Ok(())
    }
}

/// Right action `(v·σ)` whose factor `m` is factor `σ(m)` of `v`, so that
/// `(v·σ)·τ = v·(σ∘τ)`.
pub fn act_permutation(v: &TensorVector, sigma: &Permutation) -> Result<TensorVector> {
    if sigma.degree() != v.p {
        return Err(invalid(format!("permutation of degree {} acting on {} factors", sigma.degree(), v.p)));
    }
    let n = v.n;
    let mut out = TensorVector::zero(v.n, v.p, v.k);
    for (key, c) in &v.terms {
        let mut new = Vec::with_capacity(key.len());
        for m in 0..v.p {
            let src = sigma.images[m];
            new.extend_from_slice(&key[src * n..(src + 1) * n]);
        }
        out.terms.insert(new, c.clone());
    }
    Ok(out)
}

/// `E_{i,i+1}`: the derivation `x_i ∂/∂x_{i+1}` applied to each factor in
/// turn (Leibniz rule on the tensor product). `i` is 1-indexed.
pub fn apply_raising(v: &TensorVector, i: usize) -> Result<TensorVector> {
    if i == 0 || i >= v.n {
        return Err(invalid(format!("raising operator index {i} outside 1..{}", v.n.saturating_sub(1))));
    }
    let n = v.n;
    let mut out = TensorVector::zero(v.n, v.p, v.k);
    for (key, c) in &v.terms {
        for m in 0..v.p {
            let from = m * n + i; // x_{i+1}
            let to = m * n + i - 1; // x_i
            let e = key[from];
            if e == 0 {
                continue;
            }
            let mut new = key.clone();
            new[from] -= 1;
            new[to] += 1;
            out.add_term(new, c * Rational::from_integer(BigInt::from(e)));
        }
    }
    Ok(out)
}

/// `Π_b μ_b!` for `μ = shape^T`: the number of signed terms in `h_T`.
pub fn term_count(shape: &Partition) -> u128 {
    shape
        .conjugate()
        .parts()
        .iter()
        .map(|&m| (1..=m as u128).product::<u128>())
        .fold(1u128, |acc, f| acc.saturating_mul(f))
}

fn tableau_factors(t: &FilledTableau) -> Result<(usize, usize)> {
    let p = t.max_entry();
    let content = t.content(p);
    let k = content.first().copied().unwrap_or(0);
    if content.iter().any(|&c| c != k) {
        return Err(invalid(format!("tableau {t} has non-uniform content {content:?}")));
    }
    Ok((p, k))
}

/// The key `⊗_i Π_{(a,b): T(a,b)=i} x_a` whose coefficient in `h_T` is 1.
pub fn leading_key(t: &FilledTableau, n: usize) -> Result<Vec<u16>> {
    let (p, _) = tableau_factors(t)?;
    if n < t.rows().len() {
        return Err(invalid(format!("n = {n} is smaller than the number of rows of {t}")));
    }
    let mut key = vec![0u16; p * n];
    for (a, row) in t.rows().iter().enumerate() {
        for &entry in row {
            key[(entry - 1) * n + a] += 1;
        }
    }
    Ok(key)
}

/// Coefficient of [`leading_key`] in `v`.
pub fn leading_coefficient(t: &FilledTableau, v: &TensorVector) -> Result<Rational> {
    Ok(v.coefficient(&leading_key(t, v.n)?))
}

/// `h_T` in `n` variables, refusing more than [`DEFAULT_TERM_BUDGET`] terms.
pub fn build_hwv(t: &FilledTableau, n: usize) -> Result<TensorVector> {
    build_hwv_with_budget(t, n, DEFAULT_TERM_BUDGET)
}

pub fn build_hwv_with_budget(t: &FilledTableau, n: usize, budget: u128) -> Result<TensorVector> {
    if !t.is_semistandard() {
        return Err(invalid(format!("tableau {t} is not semistandard")));
    }
    let (p, k) = tableau_factors(t)?;
    let rows = t.rows();
    if n < rows.len() {
        return Err(invalid(format!("n = {n} is smaller than the number of rows of {t}")));
    }
    let shape = t.shape();
    let terms = term_count(&shape);
    if terms > budget {
        return Err(Error::Resource { terms, budget });
    }
    // For each column, the key offsets contributed by each signed permutation
    // of its rows: box (a,b) with entry e lands in x_{σ_b(a)} of factor e.
    let columns: Vec<Vec<(Vec<usize>, i64)>> = shape
        .conjugate()
        .parts()
        .iter()
        .enumerate()
        .map(|(b, &height)| {
            Permutation::all(height)
                .into_iter()
                .map(|sigma| {
                    let offsets = (0..height).map(|a| (rows[a][b] - 1) * n + sigma.images[a]).collect();
                    (offsets, sigma.sign() as i64)
                })
                .collect()
        })
        .collect();
    let mut acc: HashMap<Vec<u16>, i64> = HashMap::new();
    let mut choice = vec![0usize; columns.len()];
    let mut key = vec![0u16; p * n];
    loop {
        key.iter_mut().for_each(|e| *e = 0);
        let mut sign = 1i64;
        for (col, &c) in columns.iter().zip(&choice) {
            let (offsets, s) = &col[c];
            for &o in offsets {
                key[o] += 1;
            }
            sign *= s;
        }
        *acc.entry(key.clone()).or_insert(0) += sign;
        // odometer
        let mut b = 0;
        while b < columns.len() {
            choice[b] += 1;
            if choice[b] < columns[b].len() {
                break;
            }
            choice[b] = 0;
            b += 1;
        }
        if b == columns.len() {
            break;
        }
    }
    let mut v = TensorVector::zero(n, p, k);
    for (key, c) in acc {
        if c != 0 {
            v.terms.insert(key, Rational::from_integer(BigInt::from(c)));
        }
    }
    Ok(v)
}

/// The span of `{h_T}` over SSYT `T` of shape `λ` and content `(k^p)`.
#[derive(Clone, Debug)]
pub struct HwvSpace {
    pub lambda: Partition,
    pub p: usize,
    pub k: usize,
    pub n: usize,
    pub basis: Vec<(Ssyt, TensorVector)>,
    /// Keys whose coordinates determine a vector of the span.
    pivot_keys: Vec<Vec<u16>>,
    /// Inverse of the basis restricted to `pivot_keys`.
    pivot_inverse: Matrix,
}

/// Builds every `h_T` and checks they are linearly independent.
pub fn hwv_basis(lambda: &Partition, p: usize, k: usize, n: usize) -> Result<HwvSpace> {
    hwv_basis_with_budget(lambda, p, k, n, DEFAULT_TERM_BUDGET)
}

pub fn hwv_basis_with_budget(lambda: &Partition, p: usize, k: usize, n: usize, budget: u128) -> Result<HwvSpace> {
    if lambda.size() != p * k {
        return Err(invalid(format!("|{lambda}| = {} but pk = {}", lambda.size(), p * k)));
    }
    if n < lambda.len() {
        return Err(invalid(format!("n = {n} is smaller than ℓ({lambda})")));
    }
    let terms = term_count(lambda);
    if terms > budget {
        return Err(Error::Resource { terms, budget });
    }
    let tableaux = enumerate_ssyt(lambda, &vec![k; p]);
    let vectors: Vec<TensorVector> = tableaux
        .par_iter()
        .map(|t| {
            let mut v = build_hwv_with_budget(t.tableau(), n, budget)?;
            // a tableau using fewer than p values still lives in p factors
            if v.p != p {
                v = TensorVector { n, p, k, terms: v.terms };
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let basis: Vec<(Ssyt, TensorVector)> = tableaux.into_iter().zip(vectors).collect();
    let count = basis.len();

    let keys: Vec<Vec<u16>> = {
        let mut all: Vec<Vec<u16>> = basis.iter().flat_map(|(_, v)| v.terms.keys().cloned()).collect();
        all.sort();
        all.dedup();
        all
    };
    let index: HashMap<&Vec<u16>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let dense: Matrix = basis
        .iter()
        .map(|(_, v)| {
            let mut row = vec![Rational::zero(); keys.len()];
            for (key, c) in &v.terms {
                row[index[key]] = c.clone();
            }
            row
        })
        .collect();
    let rank = linalg::rank(&dense);
    if rank != count {
        return Err(Error::InternalConsistency(format!(
            "h_T for λ={lambda}, p={p}, k={k} span rank {rank}, expected {count}"
        )));
    }
    // Leading keys carry a unit coefficient in their own h_T and usually give
    // an invertible minor; otherwise fall back to the pivots of a full RREF.
    let mut preferred: Vec<usize> = Vec::with_capacity(count);
    for (t, _) in &basis {
        let key = leading_key(t.tableau(), n)?;
        let key = if key.len() == p * n { key } else { pad_key(&key, n, p) };
        if let Some(&i) = index.get(&key) {
            preferred.push(i);
        }
    }
    let restrict =
        |cols: &[usize]| -> Matrix { dense.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect() };
    let (pivots, inverse) = match (preferred.len() == count).then(|| linalg::inverse(&restrict(&preferred))).flatten() {
        Some(inv) => (preferred, inv),
        None => {
            let mut work = dense.clone();
            let pivots = linalg::rref(&mut work, &preferred);
            let inv = linalg::inverse(&restrict(&pivots))
                .ok_or_else(|| Error::InternalConsistency("pivot minor is singular".into()))?;
            (pivots, inv)
        }
    };
    Ok(HwvSpace {
        lambda: lambda.clone(),
        p,
        k,
        n,
        basis,
        pivot_keys: pivots.iter().map(|&i| keys[i].clone()).collect(),
        pivot_inverse: inverse,
    })
}

fn pad_key(key: &[u16], n: usize, p: usize) -> Vec<u16> {
    let mut out = key.to_vec();
    out.resize(p * n, 0);
    out
}

impl HwvSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the basis; fails unless `v` lies in the span
    /// exactly.
    pub fn coordinates(&self, v: &TensorVector) -> Result<Vec<Rational>> {
        let restricted: Vec<Rational> = self.pivot_keys.iter().map(|k| v.coefficient(k)).collect();
        let coords = linalg::row_times(&restricted, &self.pivot_inverse);
        let mut residual = v.clone();
        for (c, (_, h)) in coords.iter().zip(&self.basis) {
            residual.add_scaled(h, &-c);
        }
        if !residual.is_zero() {
            return Err(Error::InternalConsistency(format!(
                "vector is not in the span of the h_T (residual has {} terms)",
                residual.len()
            )));
        }
        Ok(coords)
    }

    /// `A[T][S]` = coefficient of `h_S` in `h_T·σ`.
    pub fn action_matrix(&self, sigma: &Permutation) -> Result<Matrix> {
        self.basis.iter().map(|(_, h)| self.coordinates(&act_permutation(h, sigma)?)).collect()
    }

    /// Multiplicity of the Specht module `V_μ`:
    /// `Σ_ρ tr(A_ρ) χ_μ(ρ) / z_ρ` over cycle types `ρ ⊢ p`.
    pub fn multiplicity(&self, mu: &Partition) -> Result<BigUint> {
        if mu.size() != self.p {
            return Err(invalid(format!("μ = {mu} is not a partition of p = {}", self.p)));
        }
        let mut total = Rational::zero();
        for rho in partitions_of(self.p, None) {
            let sigma = permutation_of_type(&rho);
            let tr = linalg::trace(&self.action_matrix(&sigma)?);
            let z = Rational::from_integer(BigInt::from(rho.centralizer_order()));
            total += tr * Rational::from_integer(chi(mu.parts(), rho.parts())) / z;
        }
        if !total.is_integer() || total.is_negative() {
            return Err(Error::InternalConsistency(format!("character projection gave {total}")));
        }
        Ok(total.to_integer().to_biguint().expect("nonnegative"))
    }
}

/// A permutation with cycle type `ρ`, cycles on consecutive points.
pub fn permutation_of_type(rho: &Partition) -> Permutation {
    let mut images = Vec::with_capacity(rho.size());
    let mut start = 0;
    for &len in rho.parts() {
        for i in 0..len {
            images.push(start + (i + 1) % len);
        }
        start += len;
    }
    Permutation { images }
}

/// Multiplicity of `V_μ` in the span of the `h_T`, which equals the
/// plethysm coefficient `a^λ_{μ,(k)}`.
pub fn multiplicity_by_character(lambda: &Partition, p: usize, k: usize, n: usize, mu: &Partition) -> Result<BigUint> {
    hwv_basis(lambda, p, k, n)?.multiplicity(mu)
}

/// Permutations searched by [`find_asymmetry_witness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRestriction {
    /// Even permutations, 3-cycles first.
    Even,
    /// The double transpositions of `S_4`.
    Klein,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymmetryWitness {
    pub tableau: Ssyt,
    pub permutation: Permutation,
}

fn candidate_permutations(p: usize, restrict: WitnessRestriction) -> Result<Vec<Permutation>> {
    match restrict {
        WitnessRestriction::Even => {
            let three = Partition::from_unsorted([vec![3], vec![1; p.saturating_sub(3)]].concat());
            let mut perms: Vec<Permutation> =
                Permutation::all(p).into_iter().filter(|s| s.sign() == 1 && !s.is_identity()).collect();
            perms.sort_by_key(|s| {
                let ct = s.cycle_type();
                (ct != three, ct, s.images.clone())
            });
            Ok(perms)
        }
        WitnessRestriction::Klein => {
            if p != 4 {
                return Err(invalid("the Klein four-group restriction needs p = 4"));
            }
            Ok(Permutation::all(4)
                .into_iter()
                .filter(|s| s.cycle_type() == Partition::from_unsorted(vec![2, 2]))
                .collect())
        }
    }
}

/// Searches for an SSYT `T` and a permutation `σ` from the restricted set
/// with `h_T·σ ≠ h_T`. Tableaux are tried in enumeration order.
pub fn find_asymmetry_witness(
    lambda: &Partition,
    p: usize,
    k: usize,
    n: usize,
    restrict: WitnessRestriction,
) -> Result<Option<AsymmetryWitness>> {
    let perms = candidate_permutations(p, restrict)?;
    let space = hwv_basis(lambda, p, k, n)?;
    for (t, h) in &space.basis {
        for sigma in &perms {
            if act_permutation(h, sigma)? != *h {
                return Ok(Some(AsymmetryWitness { tableau: t.clone(), permutation: sigma.clone() }));
            }
        }
    }
    Ok(None)
}

impl HwvSpace {
    /// For a one-dimensional space: `1` if the transposition `(1 2)` fixes
    /// the basis vector, `-1` if it negates it.
    pub fn is_isotypic_one_dim(&self) -> Option<i32> {
        if self.dimension() != 1 {
            return None;
        }
        let h = &self.basis[0].1;
        let swap = Permutation::transposition(self.p, 1, 2).ok()?;
        let image = act_permutation(h, &swap).ok()?;
        if image == *h {
            Some(1)
        } else {
            let mut neg = image;
            neg.add_scaled(h, &Rational::one());
            neg.is_zero().then_some(-1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;
    use crate::symfunc::{plethysm_coefficient_fast, Inner};

    fn ft(s: &str) -> FilledTableau {
        s.parse().unwrap()
    }

    fn q(x: i64) -> Rational {
        Rational::from_integer(BigInt::from(x))
    }

    fn mono(factors: &[&[u16]], c: i64) -> (Vec<Vec<u16>>, Rational) {
        (factors.iter().map(|f| f.to_vec()).collect(), q(c))
    }

    #[test]
    fn worked_example_vector() {
        let h = build_hwv(&ft("1123/23"), 2).unwrap();
        let expected = TensorVector::from_terms(
            2,
            3,
            2,
            [
                mono(&[&[2, 0], &[1, 1], &[1, 1]], 1),
                mono(&[&[1, 1], &[2, 0], &[1, 1]], -1),
                mono(&[&[1, 1], &[1, 1], &[2, 0]], -1),
                mono(&[&[0, 2], &[2, 0], &[2, 0]], 1),
            ],
        )
        .unwrap();
        assert_eq!(h, expected);
        assert_eq!(
            h.dump(),
            "+1 : (0,2 | 2,0 | 2,0)\n-1 : (1,1 | 1,1 | 2,0)\n-1 : (1,1 | 2,0 | 1,1)\n+1 : (2,0 | 1,1 | 1,1)\n"
        );
        assert_eq!(leading_coefficient(&ft("1123/23"), &h).unwrap(), q(1));
        assert_eq!(leading_key(&ft("1123/23"), 2).unwrap(), vec![2, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn small_vectors() {
        let h = build_hwv(&ft("1/2"), 2).unwrap();
        let expected =
            TensorVector::from_terms(2, 2, 1, [mono(&[&[1, 0], &[0, 1]], 1), mono(&[&[0, 1], &[1, 0]], -1)]).unwrap();
        assert_eq!(h, expected);
        let h = build_hwv(&ft("12"), 1).unwrap();
        assert_eq!(h, TensorVector::from_terms(1, 2, 1, [mono(&[&[1], &[1]], 1)]).unwrap());
        assert!(build_hwv(&ft("21"), 1).is_err());
        assert!(build_hwv(&ft("1/2"), 1).is_err());
        assert!(leading_coefficient(&ft("1/2"), &TensorVector::zero(2, 2, 1)).unwrap().is_zero());
    }

    #[test]
    fn permutation_action() {
        let v = TensorVector::from_terms(2, 2, 1, [mono(&[&[1, 0], &[0, 1]], 1)]).unwrap();
        let swap = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(act_permutation(&v, &Permutation::identity(2)).unwrap(), v);
        assert_eq!(
            act_permutation(&v, &swap).unwrap(),
            TensorVector::from_terms(2, 2, 1, [mono(&[&[0, 1], &[1, 0]], 1)]).unwrap()
        );
        let h = build_hwv(&ft("1/2"), 2).unwrap();
        let mut sum = act_permutation(&h, &swap).unwrap();
        sum.add_scaled(&h, &q(1));
        assert!(sum.is_zero());
    }

    #[test]
    fn right_action_composes() {
        let h = build_hwv(&ft("1123/23"), 2).unwrap();
        let all = Permutation::all(3);
        assert_eq!(all.len(), 6);
        for s in &all {
            for t in &all {
                let lhs = act_permutation(&act_permutation(&h, s).unwrap(), t).unwrap();
                let rhs = act_permutation(&h, &s.compose(t)).unwrap();
                assert_eq!(lhs, rhs, "σ={s} τ={t}");
            }
        }
    }

    #[test]
    fn raising_operator() {
        let v = TensorVector::from_terms(2, 2, 1, [mono(&[&[0, 1], &[1, 0]], 1)]).unwrap();
        assert_eq!(
            apply_raising(&v, 1).unwrap(),
            TensorVector::from_terms(2, 2, 1, [mono(&[&[1, 0], &[1, 0]], 1)]).unwrap()
        );
        let v = TensorVector::from_terms(2, 1, 2, [mono(&[&[0, 2]], 1)]).unwrap();
        assert_eq!(apply_raising(&v, 1).unwrap(), TensorVector::from_terms(2, 1, 2, [mono(&[&[1, 1]], 2)]).unwrap());
        assert!(apply_raising(&v, 2).is_err());
        for t in enumerate_ssyt(&partition![3, 2, 1], &[2, 2, 2]) {
            let h = build_hwv(t.tableau(), 3).unwrap();
            for i in 1..=2 {
                assert!(apply_raising(&h, i).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(hwv_basis(&partition![2, 2, 2], 3, 2, 3).unwrap().dimension(), 1);
        assert_eq!(hwv_basis(&partition![3, 2, 1], 3, 2, 3).unwrap().dimension(), 2);
        for k in 1..=4 {
            let space = hwv_basis(&Partition::row(k), 1, k, 1).unwrap();
            assert_eq!(space.dimension(), 1);
            let x = TensorVector::from_terms(1, 1, k, [mono(&[&[k as u16]], 1)]).unwrap();
            assert_eq!(space.basis[0].1, x);
        }
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity_by_character(&partition![4], 2, 2, 1, &partition![2]).unwrap(), BigUint::one());
        assert_eq!(multiplicity_by_character(&partition![3, 1], 2, 2, 2, &partition![1, 1]).unwrap(), BigUint::one());
        assert_eq!(multiplicity_by_character(&partition![4], 2, 2, 1, &partition![1, 1]).unwrap(), BigUint::zero());
    }

    #[test]
    fn multiplicity_matches_plethysm_small() {
        for (p, kmax) in [(2, 3), (3, 2)] {
            for k in 1..=kmax {
                for lambda in partitions_of(p * k, Some(p)) {
                    let space = hwv_basis(&lambda, p, k, lambda.len()).unwrap();
                    for mu in partitions_of(p, None) {
                        assert_eq!(
                            space.multiplicity(&mu).unwrap(),
                            plethysm_coefficient_fast(&mu, k, &lambda, Inner::H).unwrap(),
                            "λ={lambda} μ={mu}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses() {
        let w = find_asymmetry_witness(&partition![3, 2, 1], 3, 2, 3, WitnessRestriction::Even).unwrap().unwrap();
        assert_eq!(w.permutation.sign(), 1);
        let h = build_hwv(w.tableau.tableau(), 3).unwrap();
        assert_ne!(act_permutation(&h, &w.permutation).unwrap(), h);
        let w = find_asymmetry_witness(&partition![2, 1, 1], 4, 1, 3, WitnessRestriction::Klein).unwrap().unwrap();
        assert_eq!(w.permutation.cycle_type(), partition![2, 2]);
        for lambda in [partition![6], partition![3, 3], partition![2, 2, 2], partition![4, 1, 1]] {
            let n = lambda.len();
            assert_eq!(find_asymmetry_witness(&lambda, 3, 2, n, WitnessRestriction::Even).unwrap(), None, "{lambda}");
        }
        assert!(find_asymmetry_witness(&partition![3, 2, 1], 3, 2, 3, WitnessRestriction::Klein).is_err());
    }

    #[test]
    fn budget_guard() {
        let t = ft("1/2");
        assert!(matches!(build_hwv_with_budget(&t, 2, 1), Err(Error::Resource { terms: 2, budget: 1 })));
        assert_eq!(term_count(&partition![2, 2, 1]), 12);
        assert!(matches!(
            hwv_basis_with_budget(&partition![2, 2], 2, 2, 2, 3),
            Err(Error::Resource { terms: 4, budget: 3 })
        ));
    }

    #[test]
    fn one_dimensional_exceptional_spaces_follow_plethysm() {
        for d in 1..=6 {
            for base in [partition![3, 1], partition![2, 2]] {
                let lambda = base.scale(d);
                let space = hwv_basis(&lambda, 2, 2 * d, 2).unwrap();
                assert_eq!(space.dimension(), 1);
                let sym = space.multiplicity(&partition![2]).unwrap();
                let alt = space.multiplicity(&partition![1, 1]).unwrap();
                assert_eq!(&sym + &alt, BigUint::one());
                assert_eq!(sym, plethysm_coefficient_fast(&partition![2], 2 * d, &lambda, Inner::H).unwrap());
                let sign = space.is_isotypic_one_dim().unwrap();
                assert_eq!(sign == 1, sym.is_one(), "λ={lambda}");
            }
        }
    }

    #[test]
    fn permutation_basics() {
        let s = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(s.to_string(), "(1 2 3)");
        assert_eq!(s.apply(1), 2);
        assert_eq!(s.cycle_type(), partition![3]);
        assert_eq!(Permutation::identity(3).to_string(), "id");
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
        assert_eq!(permutation_of_type(&partition![2, 2]).to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
