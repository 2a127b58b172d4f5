//! The dilation sequences `d ↦ c^{dλ}_{p,dk}` and `d ↦ a^{dλ}_{μ,(dk)}`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cache::{Cache, SequenceKey, What};
use crate::error::{invalid, Result};
use crate::partitions::Partition;
use crate::pieri::chain_dp_count;
use crate::quasipoly::Sample;
use crate::symfunc::{plethysm_coefficient_fast, reduce_by_strip, Inner};

/// `c^{dλ}_{p,dk}` by the Pieri chain, after peeling full columns.
pub fn c_value(lambda: &Partition, p: usize, k: usize, d: usize) -> Result<BigUint> {
    check(lambda, p, k)?;
    if lambda.len() > p {
        return Ok(BigUint::zero());
    }
    let (shape, kk) = if lambda.len() == p && p > 0 {
        let last = lambda.part(p - 1);
        let rest = Partition::from_unsorted(lambda.parts()[..p - 1].iter().map(|x| x - last).collect());
        (rest.scale(d), d * (k - last))
    } else {
        (lambda.scale(d), d * k)
    };
    Ok(chain_dp_count(&shape, p, kk))
}

/// `a^{dλ}_{μ,(dk)}` by the fast alternant formula, after peeling full columns.
pub fn a_value(lambda: &Partition, p: usize, k: usize, mu: &Partition, d: usize) -> Result<BigUint> {
    check(lambda, p, k)?;
    if mu.size() != p {
        return Err(invalid(format!("μ = {mu} is not a partition of p = {p}")));
    }
    if lambda.len() > p {
        return Ok(BigUint::zero());
    }
    let (shape, kk, mu) = reduce_by_strip(&lambda.scale(d), mu, d * k);
    if kk == 0 || shape.is_empty() {
        // s_μ[1] = 1 for a single row, 0 otherwise
        return Ok(if shape.is_empty() && mu.len() <= 1 { BigUint::one() } else { BigUint::zero() });
    }
    plethysm_coefficient_fast(&mu, kk, &shape, Inner::H)
}

fn check(lambda: &Partition, p: usize, k: usize) -> Result<()> {
    if p == 0 {
        return Err(invalid("p must be positive"));
    }
    if lambda.size() != p * k {
        return Err(invalid(format!("|{lambda}| = {} but pk = {}", lambda.size(), p * k)));
    }
    Ok(())
}

/// Values at `d = dmin..=dmax`, served from `cache` where possible; missing
/// values are computed in parallel and written back in one go.
pub fn sequence(
    what: What,
    lambda: &Partition,
    p: usize,
    k: usize,
    mu: Option<&Partition>,
    range: std::ops::RangeInclusive<u64>,
    cache: &Cache,
) -> Result<Vec<Sample>> {
    check(lambda, p, k)?;
    let mu = match (what, mu) {
        (What::A, Some(mu)) => Some(mu.clone()),
        (What::A, None) => return Err(invalid("an a-sequence needs μ")),
        (What::C, _) => None,
    };
    let key = SequenceKey { what, lambda: lambda.clone(), p, k, mu: mu.clone() };
    let mut known = cache.load_sequence(&key)?;
    let missing: Vec<u64> = range.clone().filter(|d| !known.contains_key(d)).collect();
    let fresh: BTreeMap<u64, BigUint> = missing
        .par_iter()
        .map(|&d| {
            let v = match &mu {
                Some(mu) => a_value(lambda, p, k, mu, d as usize)?,
                None => c_value(lambda, p, k, d as usize)?,
            };
            Ok((d, v))
        })
        .collect::<Result<_>>()?;
    cache.store_sequence(&key, &fresh)?;
    known.extend(fresh);
    Ok(range.map(|d| Sample::new(d, num_bigint::BigInt::from(known[&d].clone()))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;
    use crate::pieri::polytope_count;
    use crate::symfunc::tensor_multiplicity;

    fn ints(samples: &[Sample]) -> Vec<i64> {
        samples.iter().map(|s| i64::try_from(s.value.to_integer()).unwrap()).collect()
    }

    #[test]
    fn c_values_agree_with_other_routes() {
        for (lambda, p, k) in [(partition![3, 2, 1], 3, 2), (partition![2, 1, 1], 4, 1), (partition![3, 3, 1, 1], 4, 2)]
        {
            for d in 0..=5 {
                let c = c_value(&lambda, p, k, d).unwrap();
                assert_eq!(c, polytope_count(&lambda, p, k, d).unwrap(), "{lambda} d={d}");
                if d > 0 {
                    assert_eq!(c, tensor_multiplicity(&lambda.scale(d), p, k * d).unwrap());
                }
            }
        }
    }

    #[test]
    fn a_values_at_small_d() {
        let mu = partition![2];
        assert_eq!(a_value(&partition![3, 1], 2, 2, &mu, 0).unwrap(), BigUint::one());
        assert_eq!(a_value(&partition![3, 1], 2, 2, &partition![1, 1], 0).unwrap(), BigUint::zero());
        for d in 1..=4 {
            let direct = plethysm_coefficient_fast(&mu, 2 * d, &partition![3, 1].scale(d), Inner::H).unwrap();
            assert_eq!(a_value(&partition![3, 1], 2, 2, &mu, d).unwrap(), direct);
        }
    }

    #[test]
    fn sequence_examples() {
        let cache = Cache::disabled();
        let c = sequence(What::C, &partition![2, 2, 2], 3, 2, None, 0..=10, &cache).unwrap();
        assert_eq!(ints(&c), vec![1; 11]);
        let c = sequence(What::C, &partition![3, 1], 2, 2, None, 0..=6, &cache).unwrap();
        assert_eq!(ints(&c), vec![1; 7]);
        let a = sequence(What::A, &partition![3, 1], 2, 2, Some(&partition![2]), 0..=6, &cache).unwrap();
        assert_eq!(ints(&a), vec![1, 0, 1, 0, 1, 0, 1]);
        let a = sequence(What::A, &partition![2, 2], 4, 1, Some(&partition![2, 2]), 0..=9, &cache).unwrap();
        let expected: Vec<i64> = (0..=9).map(|d| d - 2 * d / 3).collect();
        assert_eq!(ints(&a), expected);
        assert!(sequence(What::A, &partition![2, 2], 4, 1, None, 0..=1, &cache).is_err());
    }

    #[test]
    fn cache_is_transparent() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let lambda = partition![3, 2, 1];
        let mu = partition![2, 1];
        let cold = sequence(What::A, &lambda, 3, 2, Some(&mu), 0..=6, &Cache::disabled()).unwrap();
        let first = sequence(What::A, &lambda, 3, 2, Some(&mu), 0..=4, &cache).unwrap();
        let warm = sequence(What::A, &lambda, 3, 2, Some(&mu), 0..=6, &cache).unwrap();
        assert_eq!(first[..], cold[..5]);
        assert_eq!(warm, cold);
        assert_eq!(cache.stats().unwrap().cached_values, 7);
    }
}
