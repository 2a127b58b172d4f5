//! Irreducible characters `χ_μ(ρ)` of the symmetric group.
//!
//! Values come from the Murnaghan–Nakayama rule, removing border strips in
//! the beta-set (abacus) encoding of the shape. Every intermediate value is
//! memoized in a process-wide table keyed by `(shape, remaining cycle type)`;
//! the table is read-mostly and guarded by a `RwLock`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partitions::{partitions_of, Partition};

type MemoKey = (Vec<usize>, Vec<usize>);

static MEMO: LazyLock<RwLock<HashMap<MemoKey, BigInt>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// `χ_μ(ρ)` for `|μ| = |ρ|`.
pub fn character_value(mu: &Partition, rho: &Partition) -> Result<BigInt> {
    if mu.size() != rho.size() {
        return Err(invalid(format!("character χ_{mu}({rho}): sizes {} and {} differ", mu.size(), rho.size())));
    }
    Ok(chi(mu.parts(), rho.parts()))
}

/// Unchecked variant used on hot paths where sizes are known to agree.
pub(crate) fn chi(shape: &[usize], rho: &[usize]) -> BigInt {
    if rho.is_empty() {
        return if shape.is_empty() { BigInt::one() } else { BigInt::zero() };
    }
    // Shapes with one row or one column have closed forms.
    if shape.len() == 1 {
        return BigInt::one();
    }
    if shape[0] == 1 {
        let sign = rho.iter().map(|&r| r - 1).sum::<usize>() % 2;
        return if sign == 0 { BigInt::one() } else { -BigInt::one() };
    }
    let key = (shape.to_vec(), rho.to_vec());
    if let Some(v) = MEMO.read().expect("character memo poisoned").get(&key) {
        return v.clone();
    }
    let r = rho[0];
    let rest = &rho[1..];
    let mut total = BigInt::zero();
    for (smaller, height) in remove_border_strips(shape, r) {
        let v = chi(&smaller, rest);
        if height % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    MEMO.write().expect("character memo poisoned").insert(key, total.clone());
    total
}

/// All shapes obtained by removing a border strip of size `r`, with the
/// strip's height (number of rows minus one).
fn remove_border_strips(shape: &[usize], r: usize) -> Vec<(Vec<usize>, usize)> {
    let len = shape.len();
    // beta_i = λ_i + (len - 1 - i), strictly decreasing.
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &x)| x + len - 1 - i).collect();
    let mut out = Vec::new();
    for i in 0..len {
        let Some(target) = beta[i].checked_sub(r) else { continue };
        if beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&b| b > target && b < beta[i]).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nb.iter().enumerate().map(|(j, &b)| b - (len - 1 - j)).filter(|&x| x > 0).collect();
        out.push((parts, height));
    }
    out
}

/// The full character table of `S_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub p: usize,
    /// `values[(μ, ρ)] = χ_μ(ρ)`
    pub values: BTreeMap<(Partition, Partition), BigInt>,
}

const TABLE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TableFile {
    version: u32,
    p: usize,
    /// Rows indexed like `classes`, entries as decimal strings.
    shapes: Vec<Partition>,
    classes: Vec<Partition>,
    rows: Vec<Vec<String>>,
}

impl CharacterTable {
    pub fn compute(p: usize) -> Self {
        let parts = partitions_of(p, None);
        let mut values = BTreeMap::new();
        for mu in &parts {
            for rho in &parts {
                values.insert((mu.clone(), rho.clone()), chi(mu.parts(), rho.parts()));
            }
        }
        CharacterTable { p, values }
    }

    pub fn get(&self, mu: &Partition, rho: &Partition) -> Option<&BigInt> {
        self.values.get(&(mu.clone(), rho.clone()))
    }

    /// Versioned JSON: `{"version":1,"p":..,"shapes":[..],"classes":[..],"rows":[[..]]}`
    /// with `rows[i][j] = χ_{shapes[i]}(classes[j])`.
    pub fn to_json(&self) -> Result<String> {
        let parts = partitions_of(self.p, None);
        let rows = parts
            .iter()
            .map(|mu| parts.iter().map(|rho| self.get(mu, rho).map(|v| v.to_string()).unwrap_or_default()).collect())
            .collect();
        let file = TableFile { version: TABLE_FORMAT_VERSION, p: self.p, shapes: parts.clone(), classes: parts, rows };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)?;
        if file.version != TABLE_FORMAT_VERSION {
            return Err(invalid(format!("character table format version {} is not supported", file.version)));
        }
        let mut values = BTreeMap::new();
        for (mu, row) in file.shapes.iter().zip(&file.rows) {
            for (rho, v) in file.classes.iter().zip(row) {
                let v: BigInt = v.parse().map_err(|e| invalid(format!("bad character value {v:?}: {e}")))?;
                values.insert((mu.clone(), rho.clone()), v);
            }
        }
        Ok(CharacterTable { p: file.p, values })
    }

    /// Seeds the in-process memo with this table's values.
    pub fn install(&self) {
        let mut memo = MEMO.write().expect("character memo poisoned");
        for ((mu, rho), v) in &self.values {
            memo.insert((mu.parts().to_vec(), rho.parts().to_vec()), v.clone());
        }
    }

    /// Loads `dir/characters-v1-p{p}.json` if present, otherwise computes and
    /// writes it. The loaded table is checked against a fresh computation of
    /// its first row so that a stale or corrupted file is rejected.
    pub fn load_or_compute(dir: &Path, p: usize) -> Result<Self> {
        let path = dir.join(format!("characters-v{TABLE_FORMAT_VERSION}-p{p}.json"));
        if let Ok(text) = std::fs::read_to_string(&path) {
            let table = Self::from_json(&text)?;
            let first = Partition::row(p);
            for rho in partitions_of(p, None) {
                if table.get(&first, &rho) != Some(&chi(first.parts(), rho.parts())) {
                    return Err(Error::InternalConsistency(format!(
                        "cached character table {} is inconsistent",
                        path.display()
                    )));
                }
            }
            table.install();
            return Ok(table);
        }
        let table = Self::compute(p);
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, table.to_json()?)?;
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;
    use crate::partitions::factorial;
    use itertools::Itertools;
    use num_bigint::BigUint;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn spec_examples() {
        for rho in partitions_of(3, None) {
            assert_eq!(character_value(&partition![3], &rho).unwrap(), bi(1));
        }
        assert_eq!(character_value(&partition![1, 1, 1], &partition![3]).unwrap(), bi(1));
        assert_eq!(character_value(&partition![2, 1], &partition![3]).unwrap(), bi(-1));
        assert!(matches!(character_value(&partition![2, 1], &partition![2]), Err(Error::InvalidInput(_))));
    }

    /// Trace of a permutation on the Specht module `V_{(2,1)}` realized as the
    /// sum-zero subspace of the permutation representation of `S_3`:
    /// trace = (#fixed points) − 1.
    #[test]
    fn standard_rep_of_s3_by_brute_force() {
        for perm in (0..3).permutations(3) {
            let fixed = (0..3).filter(|&i| perm[i] == i).count() as i64;
            let cycle_type = cycle_type(&perm);
            assert_eq!(chi(&[2, 1], cycle_type.parts()), bi(fixed - 1));
        }
    }

    fn cycle_type(perm: &[usize]) -> Partition {
        let mut seen = vec![false; perm.len()];
        let mut lens = Vec::new();
        for i in 0..perm.len() {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
                len += 1;
            }
            lens.push(len);
        }
        Partition::from_unsorted(lens)
    }

    #[test]
    fn dimension_at_identity() {
        for p in 0..=8 {
            for mu in partitions_of(p, None) {
                let dim = chi(mu.parts(), &vec![1; p]);
                assert_eq!(dim, BigInt::from(mu.hook_dimension()), "{mu}");
            }
        }
    }

    #[test]
    fn row_orthogonality() {
        for p in 1..=8 {
            let parts = partitions_of(p, None);
            let fact = BigInt::from(factorial(p));
            for mu in &parts {
                for nu in &parts {
                    let sum: BigInt = parts
                        .iter()
                        .map(|rho| {
                            let class = BigInt::from(factorial(p) / rho.centralizer_order());
                            class * chi(mu.parts(), rho.parts()) * chi(nu.parts(), rho.parts())
                        })
                        .sum();
                    let expected = if mu == nu { fact.clone() } else { BigInt::zero() };
                    assert_eq!(sum, expected, "p={p} {mu} {nu}");
                }
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for p in 1..=6 {
            let parts = partitions_of(p, None);
            for rho in &parts {
                for sigma in &parts {
                    let sum: BigInt =
                        parts.iter().map(|mu| chi(mu.parts(), rho.parts()) * chi(mu.parts(), sigma.parts())).sum();
                    let expected = if rho == sigma { BigInt::from(rho.centralizer_order()) } else { BigInt::zero() };
                    assert_eq!(sum, expected);
                }
            }
        }
    }

    #[test]
    fn conjugate_twists_by_sign() {
        for p in 1..=7 {
            for mu in partitions_of(p, None) {
                for rho in partitions_of(p, None) {
                    let lhs = chi(mu.conjugate().parts(), rho.parts());
                    let rhs = chi(mu.parts(), rho.parts()) * rho.sign();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn table_json_round_trip_and_disk_cache() {
        let table = CharacterTable::compute(5);
        let back = CharacterTable::from_json(&table.to_json().unwrap()).unwrap();
        assert_eq!(back, table);

        let dir = tempfile::tempdir().unwrap();
        let first = CharacterTable::load_or_compute(dir.path(), 5).unwrap();
        let second = CharacterTable::load_or_compute(dir.path(), 5).unwrap();
        assert_eq!(first, second);
        assert_eq!(first, table);
        assert_eq!(
            first.get(&partition![2, 2, 1], &partition![1, 1, 1, 1, 1]),
            Some(&BigInt::from(BigUint::from(5u32)))
        );
    }

    #[test]
    fn rejects_unknown_table_version() {
        let text = r#"{"version":99,"p":1,"shapes":["1"],"classes":["1"],"rows":[["1"]]}"#;
        assert!(CharacterTable::from_json(text).is_err());
    }
}
