//! Change of basis between monomial and power-sum symmetric functions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::Matrix;
use crate::partition::{enumerate_partitions, Partition};

/// Transition data for one degree.
pub(crate) struct Tables {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// `p_rho = sum_mu p_to_m[rho][(mu, c)] m_mu`.
    pub p_to_m: Vec<Vec<(usize, BigInt)>>,
    /// `m_mu = sum_rho m_to_p[mu][(rho, c)] p_rho`.
    pub m_to_p: Vec<Vec<(usize, BigRational)>>,
}

/// Number of ways to distribute the parts of `rho` into bins of sizes
/// `caps`. The count does not depend on the order of the bins, so the memo
/// key uses the sorted capacities.
fn fill_count(rho: &[u32], caps: Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), u64>) -> u64 {
    let Some((&first, rest)) = rho.split_first() else {
        return u64::from(caps.iter().all(|&c| c == 0));
    };
    let mut key_caps = caps.clone();
    key_caps.sort_unstable();
    let key = (rho.len(), key_caps);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for i in 0..caps.len() {
        if caps[i] >= first {
            let mut next = caps.clone();
            next[i] -= first;
            total += fill_count(rest, next, memo);
        }
    }
    memo.insert(key, total);
    total
}

fn build(n: u32) -> Tables {
    let parts = enumerate_partitions(n);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let d = parts.len();
    let mut mat = Matrix::zeros(d, d);
    let mut p_to_m = Vec::with_capacity(d);
    for (r, rho) in parts.iter().enumerate() {
        let mut row = Vec::new();
        for (c, mu) in parts.iter().enumerate() {
            if !mu.dominates(rho) {
                continue;
            }
            let mut memo = HashMap::new();
            let v = fill_count(rho.parts(), mu.parts().to_vec(), &mut memo);
            if v != 0 {
                row.push((c, BigInt::from(v)));
                mat[(r, c)] = BigRational::from_integer(BigInt::from(v));
            }
        }
        p_to_m.push(row);
    }
    let inv = mat.inverse().expect("power sums form a basis");
    // p = P m, so m = P^{-1} p.
    let m_to_p = (0..d)
        .map(|mu| {
            (0..d)
                .filter(|&rho| !inv[(mu, rho)].is_zero())
                .map(|rho| (rho, inv[(mu, rho)].clone()))
                .collect()
        })
        .collect();
    Tables {
        parts,
        index,
        p_to_m,
        m_to_p,
    }
}

pub(crate) fn tables(n: u32) -> Arc<Tables> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Tables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(build(n));
    cache.lock().unwrap().entry(n).or_insert(t).clone()
}
