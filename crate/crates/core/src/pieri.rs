//! Counting `c^λ_{p,k}`, the number of SSYT of shape `λ` and content `(k^p)`,
//! three independent ways: exhaustive tableau enumeration, a Pieri-chain
//! dynamic program, and lattice points of the Pieri polytope.
//!
//! The polytope lives in `R^2 × R^3 × … × R^p` with coordinates `x_i^j`
//! (`1 ≤ j ≤ p−1`, `1 ≤ i ≤ j+1`) counting the boxes filled with `j+1` in
//! row `i`; the `k` ones of row 1 are the fixed `x_1^0 = k`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partitions::Partition;
use crate::tableau::Ssyt;

/// All SSYT of `shape` with `content[v-1]` entries equal to `v`, sorted by
/// their row-by-row entry sequence.
pub fn enumerate_ssyt(shape: &Partition, content: &[usize]) -> Vec<Ssyt> {
    if content.iter().sum::<usize>() != shape.size() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
    fill_value(shape, content, 0, &mut rows, &mut out);
    out.sort_by(|a, b| a.rows().concat().cmp(&b.rows().concat()).then_with(|| a.cmp(b)));
    out
}

fn fill_value(shape: &Partition, content: &[usize], v: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Ssyt>) {
    if v == content.len() {
        let filled: Vec<Vec<usize>> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
        out.push(Ssyt::new(filled).expect("strip filling is semistandard"));
        return;
    }
    let current: Vec<usize> = rows.iter().map(Vec::len).collect();
    for strip in horizontal_strips(&current, shape.parts(), content[v]) {
        for (row, &add) in rows.iter_mut().zip(&strip) {
            row.extend(std::iter::repeat_n(v + 1, add));
        }
        fill_value(shape, content, v + 1, rows, out);
        for (row, &add) in rows.iter_mut().zip(&strip) {
            row.truncate(row.len() - add);
        }
    }
}

/// Per-row additions turning `current` into a larger diagram inside `bound`
/// by a horizontal strip of `size` boxes: row `i` may grow up to the old
/// length of row `i−1`.
fn horizontal_strips(current: &[usize], bound: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, left: usize, current: &[usize], bound: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == current.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap_above = if i == 0 { usize::MAX } else { current[i - 1] };
        let room = bound[i].min(cap_above).saturating_sub(current[i]);
        for add in (0..=room.min(left)).rev() {
            cur.push(add);
            rec(i + 1, left - add, current, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, size, current, bound, &mut Vec::with_capacity(current.len()), &mut out);
    out
}

/// Counting route for [`kostka_count`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KostkaMode {
    Brute,
    ChainDp,
    Polytope,
}

/// `c^λ_{p,k}` by the selected route.
pub fn kostka_count(lambda: &Partition, p: usize, k: usize, mode: KostkaMode) -> Result<BigUint> {
    if lambda.size() != p * k {
        return Err(invalid(format!("|{lambda}| = {} but pk = {}", lambda.size(), p * k)));
    }
    Ok(match mode {
        KostkaMode::Brute => BigUint::from(enumerate_ssyt(lambda, &vec![k; p]).len()),
        KostkaMode::ChainDp => chain_dp_count(lambda, p, k),
        KostkaMode::Polytope => {
            if lambda.len() > p {
                BigUint::zero()
            } else {
                ConstraintSystem::new(lambda, p, k)?.count_points(1)
            }
        }
    })
}

/// Iterated Pieri rule: states are the shapes reached after placing
/// `1..=j`, transitions add a horizontal strip of `k` boxes inside `λ`.
pub fn chain_dp_count(lambda: &Partition, p: usize, k: usize) -> BigUint {
    if lambda.size() != p * k {
        return BigUint::zero();
    }
    let rows = lambda.len();
    let mut states: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
    states.insert(vec![0; rows], BigUint::one());
    for _ in 0..p {
        let mut next: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
        for (shape, count) in &states {
            for strip in horizontal_strips(shape, lambda.parts(), k) {
                let grown: Vec<usize> = shape.iter().zip(&strip).map(|(a, b)| a + b).collect();
                *next.entry(grown).or_insert_with(BigUint::zero) += count;
            }
        }
        states = next;
    }
    states.remove(&lambda.padded(rows)).unwrap_or_default()
}

/// `c^{dλ}_{p,dk}` as the number of lattice points of `d·P^λ_{k,p}`.
pub fn polytope_count(lambda: &Partition, p: usize, k: usize, d: usize) -> Result<BigUint> {
    Ok(ConstraintSystem::new(lambda, p, k)?.count_points(d))
}

/// A lattice point of the Pieri polytope: `coords[j-1][i-1] = x_i^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieriPoint {
    pub p: usize,
    pub k: usize,
    pub coords: Vec<Vec<i64>>,
}

impl PieriPoint {
    /// Coordinates flattened in variable order `x_1^1, x_2^1, x_1^2, …`.
    pub fn flat(&self) -> Vec<i64> {
        self.coords.iter().flatten().copied().collect()
    }

    pub fn from_flat(p: usize, k: usize, flat: &[i64]) -> Result<Self> {
        if flat.len() != variable_count(p) {
            return Err(invalid(format!("expected {} coordinates, got {}", variable_count(p), flat.len())));
        }
        let mut coords = Vec::new();
        let mut pos = 0;
        for j in 1..p {
            coords.push(flat[pos..pos + j + 1].to_vec());
            pos += j + 1;
        }
        Ok(PieriPoint { p, k, coords })
    }

    /// Row lengths `λ_i = Σ_j x_i^j` (including `x_1^0 = k`).
    pub fn row_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.p];
        if self.p > 0 {
            sums[0] = self.k as i64;
        }
        for step in &self.coords {
            for (i, &x) in step.iter().enumerate() {
                sums[i] += x;
            }
        }
        sums
    }
}

/// `N = 2 + 3 + … + p`
pub fn variable_count(p: usize) -> usize {
    (2..=p).sum()
}

fn var_index(j: usize, i: usize) -> usize {
    // steps 1..j-1 occupy 2 + … + j slots
    (2..=j).sum::<usize>() + (i - 1)
}

/// One linear row `coeffs · x (≤ or =) rhs`, with `rhs` given at dilation 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRow {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

/// The H-representation of `P^λ_{k,p}`. Every right-hand side is linear in
/// `(k, λ)`, so `d·P` is obtained by scaling them by `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub lambda: Partition,
    pub p: usize,
    pub k: usize,
    pub variables: Vec<String>,
    /// `coeffs · x ≤ rhs`
    pub inequalities: Vec<LinearRow>,
    /// `coeffs · x = rhs`
    pub equalities: Vec<LinearRow>,
}

impl ConstraintSystem {
    pub fn new(lambda: &Partition, p: usize, k: usize) -> Result<Self> {
        if p == 0 {
            return Err(invalid("p must be positive"));
        }
        if lambda.size() != p * k {
            return Err(invalid(format!("|{lambda}| = {} but pk = {}", lambda.size(), p * k)));
        }
        if lambda.len() > p {
            return Err(invalid(format!("ℓ({lambda}) exceeds p = {p}")));
        }
        let n = variable_count(p);
        let kk = k as i64;
        let mut variables = Vec::with_capacity(n);
        for j in 1..p {
            for i in 1..=j + 1 {
                variables.push(format!("x{i}_{j}"));
            }
        }
        let zero = || vec![0i64; n];
        let mut inequalities = Vec::new();
        // (i) nonnegativity
        for v in 0..n {
            let mut c = zero();
            c[v] = -1;
            inequalities.push(LinearRow { coeffs: c, rhs: 0 });
        }
        // (ii) row i+1 after step j fits under row i after step j−1
        for j in 1..p {
            for i in 1..=j {
                let mut c = zero();
                for l in 1..=j {
                    if i < l + 1 {
                        c[var_index(l, i + 1)] += 1;
                    }
                }
                for l in 1..j {
                    if i <= l + 1 {
                        c[var_index(l, i)] -= 1;
                    }
                }
                let rhs = if i == 1 { kk } else { 0 };
                inequalities.push(LinearRow { coeffs: c, rhs });
            }
        }
        let mut equalities = Vec::new();
        // (iii) each step adds k boxes
        for j in 1..p {
            let mut c = zero();
            for i in 1..=j + 1 {
                c[var_index(j, i)] = 1;
            }
            equalities.push(LinearRow { coeffs: c, rhs: kk });
        }
        // (iv) rows reach λ
        let target = lambda.padded(p);
        for i in 1..=p {
            let mut c = zero();
            for j in 1..p {
                if i <= j + 1 {
                    c[var_index(j, i)] = 1;
                }
            }
            let rhs = target[i - 1] as i64 - if i == 1 { kk } else { 0 };
            equalities.push(LinearRow { coeffs: c, rhs });
        }
        Ok(ConstraintSystem { lambda: lambda.clone(), p, k, variables, inequalities, equalities })
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn contains(&self, x: &[i64], d: usize) -> bool {
        let d = d as i64;
        let dot = |row: &LinearRow| row.coeffs.iter().zip(x).map(|(a, b)| a * b).sum::<i64>();
        x.len() == self.dimension()
            && self.inequalities.iter().all(|r| dot(r) <= r.rhs * d)
            && self.equalities.iter().all(|r| dot(r) == r.rhs * d)
    }

    /// Plain-text H-representation of `d·P`:
    ///
    /// ```text
    /// # pieri polytope lambda=<parts> p=<p> k=<k> dilation=<d>
    /// variables <name_1> ... <name_N>
    /// ineq a_1 ... a_N b        (a·x <= b)
    /// eq a_1 ... a_N b          (a·x  = b)
    /// ```
    pub fn to_h_representation(&self, d: usize) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# pieri polytope lambda={} p={} k={} dilation={d}", self.lambda.to_text(), self.p, self.k);
        let _ = writeln!(s, "variables {}", self.variables.join(" "));
        let fmt_row = |kind: &str, r: &LinearRow| {
            let cs: Vec<String> = r.coeffs.iter().map(|c| c.to_string()).collect();
            format!("{kind} {} {}\n", cs.join(" "), r.rhs * d as i64)
        };
        for r in &self.inequalities {
            s.push_str(&fmt_row("ineq", r));
        }
        for r in &self.equalities {
            s.push_str(&fmt_row("eq", r));
        }
        s
    }

    /// Lattice points of `d·P`, in lexicographic order of the flat coordinates.
    pub fn points(&self, d: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.enumerate(d, &mut |x| out.push(x.to_vec()));
        out
    }

    pub fn count_points(&self, d: usize) -> BigUint {
        let mut count = 0u128;
        self.enumerate(d, &mut |_| count += 1);
        BigUint::from(count)
    }

    /// Depth-first enumeration in variable order with interval pruning: after
    /// each assignment every row touching the variable must stay satisfiable
    /// given that unassigned variables lie in `[0, k·d]`.
    fn enumerate(&self, d: usize, visit: &mut dyn FnMut(&[i64])) {
        let n = self.dimension();
        let upper = (self.k * d) as i64;
        let rows: Vec<(&LinearRow, bool)> =
            self.inequalities.iter().map(|r| (r, false)).chain(self.equalities.iter().map(|r| (r, true))).collect();
        let rhs: Vec<i64> = rows.iter().map(|(r, _)| r.rhs * d as i64).collect();
        // suffix bounds of Σ_{u ≥ v} coeff_u x_u over x_u ∈ [0, upper]
        let mut suf_min = vec![vec![0i64; n + 1]; rows.len()];
        let mut suf_max = vec![vec![0i64; n + 1]; rows.len()];
        for (ri, (row, _)) in rows.iter().enumerate() {
            for v in (0..n).rev() {
                let c = row.coeffs[v];
                suf_min[ri][v] = suf_min[ri][v + 1] + (c * upper).min(0);
                suf_max[ri][v] = suf_max[ri][v + 1] + (c * upper).max(0);
            }
        }
        let feasible = |ri: usize, partial: i64, from: usize| {
            let lo = partial + suf_min[ri][from];
            let hi = partial + suf_max[ri][from];
            if rows[ri].1 {
                lo <= rhs[ri] && rhs[ri] <= hi
            } else {
                lo <= rhs[ri]
            }
        };
        if !(0..rows.len()).all(|ri| feasible(ri, 0, 0)) {
            return;
        }
        let touching: Vec<Vec<usize>> =
            (0..n).map(|v| (0..rows.len()).filter(|&ri| rows[ri].0.coeffs[v] != 0).collect()).collect();

        struct Ctx<'a> {
            n: usize,
            upper: i64,
            rows: &'a [(&'a LinearRow, bool)],
            touching: &'a [Vec<usize>],
        }
        fn rec(
            v: usize,
            ctx: &Ctx<'_>,
            x: &mut Vec<i64>,
            partial: &mut Vec<i64>,
            feasible: &dyn Fn(usize, i64, usize) -> bool,
            visit: &mut dyn FnMut(&[i64]),
        ) {
            if v == ctx.n {
                visit(x);
                return;
            }
            for val in 0..=ctx.upper {
                let ok =
                    ctx.touching[v].iter().all(|&ri| feasible(ri, partial[ri] + ctx.rows[ri].0.coeffs[v] * val, v + 1));
                if !ok {
                    continue;
                }
                for &ri in &ctx.touching[v] {
                    partial[ri] += ctx.rows[ri].0.coeffs[v] * val;
                }
                x.push(val);
                rec(v + 1, ctx, x, partial, feasible, visit);
                x.pop();
                for &ri in &ctx.touching[v] {
                    partial[ri] -= ctx.rows[ri].0.coeffs[v] * val;
                }
            }
        }
        let ctx = Ctx { n, upper, rows: &rows, touching: &touching };
        let mut partial = vec![0i64; rows.len()];
        rec(0, &ctx, &mut Vec::with_capacity(n), &mut partial, &feasible, visit);
    }
}

/// `T ↦ x` with `x_i^j` = number of entries `j+1` in row `i`.
pub fn ssyt_to_point(t: &Ssyt, p: usize, k: usize) -> Result<PieriPoint> {
    let content = t.content(p);
    if content.len() != p || content.iter().any(|&c| c != k) {
        return Err(invalid(format!("tableau {t} does not have content ({k}^{p})")));
    }
    if t.rows().len() > p {
        return Err(invalid(format!("tableau {t} has more than {p} rows")));
    }
    let coords = (1..p)
        .map(|j| {
            (1..=j + 1)
                .map(|i| t.rows().get(i - 1).map_or(0, |r| r.iter().filter(|&&x| x == j + 1).count() as i64))
                .collect()
        })
        .collect();
    Ok(PieriPoint { p, k, coords })
}

/// Inverse of [`ssyt_to_point`]; the point must lie in its polytope.
pub fn point_to_ssyt(x: &PieriPoint) -> Result<Ssyt> {
    let sums = x.row_sums();
    if sums.iter().any(|&s| s < 0) {
        return Err(invalid("point has a negative row sum"));
    }
    let lambda = Partition::new(sums.iter().map(|&s| s as usize).collect())?;
    let system = ConstraintSystem::new(&lambda, x.p, x.k)?;
    if !system.contains(&x.flat(), 1) {
        return Err(invalid(format!("point {:?} violates the Pieri constraints", x.coords)));
    }
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); x.p];
    rows[0] = vec![1; x.k];
    for (j, step) in x.coords.iter().enumerate() {
        for (i, &count) in step.iter().enumerate() {
            rows[i].extend(std::iter::repeat_n(j + 2, count as usize));
        }
    }
    Ssyt::new(rows)
}

/// An SSYT of shape `λ ⊢ pk`, `ℓ(λ) ≤ p`, content `(k^p)`, built greedily:
/// the boxes holding `p` are the rightmost `λ_j − λ_{j+1}` of each row below
/// the last row of length `≥ k`, plus the rightmost `k − λ_{i0+1}` of that row;
/// the remainder is filled recursively with `1..p−1`.
pub fn witness_ssyt(lambda: &Partition, p: usize, k: usize) -> Result<Ssyt> {
    if p == 0 || lambda.size() != p * k || lambda.len() > p {
        return Err(invalid(format!("need λ ⊢ pk with ℓ(λ) ≤ p; got λ={lambda}, p={p}, k={k}")));
    }
    let mut shape = lambda.padded(p);
    // value assigned to each cell, built from the largest value down
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    for value in (1..=p).rev() {
        let len = value; // rows available to this stage
        let cur = &shape[..len];
        if value == 1 {
            debug_assert!(cur[0] == k);
            for cell in rows[0].iter_mut().take(k) {
                *cell = 1;
            }
            break;
        }
        let i0 = (0..len)
            .rev()
            .find(|&i| cur[i] >= k)
            .ok_or_else(|| Error::InternalConsistency("no row of length ≥ k".into()))?;
        let next_len = |i: usize| if i + 1 < len { cur[i + 1] } else { 0 };
        let mut removed = vec![0usize; len];
        for (j, slot) in removed.iter_mut().enumerate().skip(i0 + 1) {
            *slot = cur[j] - next_len(j);
        }
        removed[i0] = k - next_len(i0);
        for i in 0..len {
            rows[i][cur[i] - removed[i]..cur[i]].fill(value);
        }
        for i in 0..len {
            shape[i] -= removed[i];
        }
    }
    let t = Ssyt::new(rows)?;
    if t.content(p) != vec![k; p] {
        return Err(Error::InternalConsistency(format!("witness {t} has wrong content")));
    }
    Ok(t)
}
