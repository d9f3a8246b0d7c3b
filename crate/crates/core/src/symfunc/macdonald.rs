//! Modified Macdonald polynomials from the filling statistics `inv` and `maj`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Key, SymFunc};
use crate::partition::{enumerate_partitions, Partition};
use crate::scalar::{QtLaurent, QtScalar};

/// Precomputed geometry of a diagram in reading order.
struct Shape {
    /// Cells in reading order: top row of the French picture first, i.e.
    /// the shortest (last) English row first, left to right.
    cells: Vec<(usize, usize)>,
    /// Pairs `(u, v)` of attacking cells, `u` read before `v`.
    attacks: Vec<(usize, usize)>,
    /// `(cell, cell below in the French picture, arm, leg)`.
    descents: Vec<(usize, usize, u32, u32)>,
}

fn shape(mu: &Partition) -> Shape {
    let rows = mu.len();
    let mut cells = Vec::new();
    for r in (0..rows).rev() {
        for c in 0..mu.parts()[r] as usize {
            cells.push((r, c));
        }
    }
    let pos: HashMap<(usize, usize), usize> =
        cells.iter().enumerate().map(|(i, &rc)| (rc, i)).collect();
    let mut attacks = Vec::new();
    for (i, &(r, c)) in cells.iter().enumerate() {
        // Same row, later in the row.
        for c2 in c + 1..mu.parts()[r] as usize {
            attacks.push((i, pos[&(r, c2)]));
        }
        // Row below in the French picture, strictly to the left.
        if r > 0 {
            for c2 in 0..c {
                attacks.push((i, pos[&(r - 1, c2)]));
            }
        }
    }
    let descents = cells
        .iter()
        .enumerate()
        .filter(|(_, &(r, _))| r > 0)
        .map(|(i, &(r, c))| (i, pos[&(r - 1, c)], mu.arm(r, c), mu.leg(r, c)))
        .collect();
    Shape {
        cells,
        attacks,
        descents,
    }
}

/// Lexicographic successor of a multiset permutation, in place.
fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `sum q^inv t^maj` over fillings with content `nu`.
fn content_sum(sh: &Shape, nu: &Partition) -> QtLaurent {
    let mut word: Vec<u32> = Vec::with_capacity(sh.cells.len());
    for (i, &m) in nu.parts().iter().enumerate() {
        word.extend(std::iter::repeat_n(i as u32, m as usize));
    }
    word.sort_unstable();
    let mut counts: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    loop {
        let mut inv = sh
            .attacks
            .iter()
            .filter(|&&(u, v)| word[u] > word[v])
            .count() as i64;
        let mut maj = 0i64;
        for &(u, below, arm, leg) in &sh.descents {
            if word[u] > word[below] {
                inv -= arm as i64;
                maj += leg as i64 + 1;
            }
        }
        *counts.entry((inv, maj)).or_default() += 1;
        if !next_permutation(&mut word) {
            break;
        }
    }
    QtLaurent::from_terms(
        counts
            .into_iter()
            .map(|((a, b), c)| ((2 * a, 2 * b), BigRational::from_integer(BigInt::from(c)))),
    )
}

fn compute(mu: &Partition) -> SymFunc {
    let sh = shape(mu);
    let mut f = SymFunc::zero(1);
    for nu in enumerate_partitions(mu.size()) {
        let c = content_sum(&sh, &nu);
        super::insert_term(&mut f.terms, vec![nu], QtScalar::from_laurent(c));
    }
    f
}

/// `H~_mu(x; q, t)` in one alphabet, monomial basis.
pub fn modified_macdonald(mu: &Partition) -> SymFunc {
    static CACHE: OnceLock<Mutex<HashMap<Partition, SymFunc>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(mu) {
        return f.clone();
    }
    let f = compute(mu);
    cache.lock().unwrap().insert(mu.clone(), f.clone());
    f
}

/// `H~_mu` placed in alphabet `alphabet` of `k`, with the other alphabets
/// carrying the constant `1`.
pub fn modified_macdonald_in(mu: &Partition, alphabet: usize, k: usize) -> SymFunc {
    assert!(alphabet < k, "alphabet index out of range");
    let h = modified_macdonald(mu);
    SymFunc::from_terms(
        k,
        h.terms.into_iter().map(|(key, c)| {
            let mut full: Key = vec![Partition::empty(); k];
            full[alphabet] = key.into_iter().next().unwrap();
            (full, c)
        }),
    )
}
