//! `(R^-)^k` as an `R^+`-module: bidegree components and minimal generators.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{orbit_element, orbit_monomials, pairs, x_var, y_var};
use crate::linalg::RowSpace;
use crate::poly::{Mono, Poly};

/// Per bidegree `(a, b)`: a basis of the component of `(R^-)^k` and the
/// minimal generators living there.
#[derive(Clone, Debug, Default)]
pub struct GeneratorTable {
    pub n: usize,
    pub k: u32,
    pub basis: BTreeMap<(u32, u32), Vec<Poly>>,
    pub generators: BTreeMap<(u32, u32), Vec<Poly>>,
}

impl GeneratorTable {
    pub fn generator_count(&self) -> usize {
        self.generators.values().map(Vec::len).sum()
    }

    pub fn all_generators(&self) -> impl Iterator<Item = (&(u32, u32), &Poly)> {
        self.generators
            .iter()
            .flat_map(|(d, g)| g.iter().map(move |p| (d, p)))
    }
}

/// `sum_i x_i^r y_i^s`.
pub(crate) fn polarized_power_sum(n: usize, r: u32, s: u32) -> Poly {
    let mut out = Poly::zero(2 * n);
    for i in 0..n {
        let mut m = Mono::from_elem(0, 2 * n);
        m[x_var(i)] = r as u16;
        m[y_var(n, i)] = s as u16;
        out.add_term(m, super::rational(1));
    }
    out
}

/// Coordinates of a polynomial of parity `sign` in the orbit basis.
pub(crate) struct OrbitCoords {
    index: HashMap<Mono, usize>,
}

impl OrbitCoords {
    pub fn new(n: usize, a: u32, b: u32, sign: bool) -> Self {
        let index = orbit_monomials(n, a, b, sign)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        OrbitCoords { index }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// Reads the coefficients at the canonical monomials; the caller
    /// guarantees the parity.
    pub fn coords(&self, p: &Poly) -> Vec<num_rational::BigRational> {
        let mut v = vec![num_traits::Zero::zero(); self.index.len()];
        for (m, c) in p.terms() {
            if let Some(&i) = self.index.get(m) {
                v[i] = c.clone();
            }
        }
        v
    }
}

/// Minimal generators and component bases of `(R^-)^k` for bidegrees
/// `(a, b)` with `a <= max_x`, `b <= max_y`.
pub fn antiinvariant_power_basis(n: usize, k: u32, max_x: u32, max_y: u32) -> Arc<GeneratorTable> {
    type Key = (usize, u32, u32, u32);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<GeneratorTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, k, max_x, max_y);
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return t.clone();
    }
    let t = Arc::new(compute(n, k, max_x, max_y));
    cache.lock().unwrap().entry(key).or_insert(t).clone()
}

fn compute(n: usize, k: u32, max_x: u32, max_y: u32) -> GeneratorTable {
    let sign = k % 2 == 1;
    let lower = (k >= 2).then(|| antiinvariant_power_basis(n, k - 1, max_x, max_y));
    let first = (k >= 2).then(|| antiinvariant_power_basis(n, 1, max_x, max_y));
    let mut table = GeneratorTable {
        n,
        k,
        ..Default::default()
    };
    for total in 0..=max_x + max_y {
        for a in 0..=total.min(max_x) {
            let b = total - a;
            if b > max_y {
                continue;
            }
            let coords = OrbitCoords::new(n, a, b, sign);
            let mut space = RowSpace::new(coords.dim());
            let mut basis = Vec::new();
            // R^+_{>0} times lower components.
            for r in 0..=a {
                for s in 0..=b {
                    if r + s == 0 {
                        continue;
                    }
                    let Some(low) = table.basis.get(&(a - r, b - s)) else {
                        continue;
                    };
                    let p = polarized_power_sum(n, r, s);
                    for w in low {
                        let prod = &p * w;
                        if space.insert(coords.coords(&prod)) {
                            basis.push(prod);
                        }
                    }
                }
            }
            let candidates: Vec<Poly> = match k {
                0 => {
                    if a == 0 && b == 0 {
                        vec![Poly::one(2 * n)]
                    } else {
                        vec![]
                    }
                }
                1 => orbit_monomials(n, a, b, true)
                    .iter()
                    .map(|m| orbit_element(n, m, true))
                    .collect(),
                _ => {
                    let (first, lower) = (first.as_ref().unwrap(), lower.as_ref().unwrap());
                    let mut c = Vec::new();
                    for ((ga, gb), g) in first.all_generators() {
                        if *ga > a || *gb > b {
                            continue;
                        }
                        if let Some(ws) = lower.generators.get(&(a - ga, b - gb)) {
                            c.extend(ws.iter().map(|w| g * w));
                        }
                    }
                    c
                }
            };
            let mut gens = Vec::new();
            for c in candidates {
                if space.insert(coords.coords(&c)) {
                    basis.push(c.clone());
                    gens.push(c);
                }
            }
            if !basis.is_empty() {
                table.basis.insert((a, b), basis);
            }
            if !gens.is_empty() {
                table.generators.insert((a, b), gens);
            }
        }
    }
    table
}

/// A generating set of `(R^-)^k` over `R^+`: all `k`-fold products of the
/// minimal generators of `R^-`, which live in total degree at most
/// `n(n-1)/2`.
type GeneratorCache = Mutex<HashMap<(usize, u32), Arc<Vec<Poly>>>>;

pub(crate) fn product_generators(n: usize, k: u32) -> Arc<Vec<Poly>> {
    static CACHE: OnceLock<GeneratorCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(n, k)) {
        return v.clone();
    }
    let nn = pairs(n);
    let base = antiinvariant_power_basis(n, 1, nn, nn);
    let gens: Vec<Poly> = base
        .all_generators()
        .filter(|((a, b), _)| a + b <= nn)
        .map(|(_, g)| g.clone())
        .collect();
    let mut out = vec![Poly::one(2 * n)];
    let mut frontier: Vec<(usize, Poly)> = vec![(0, Poly::one(2 * n))];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, p) in &frontier {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((i, p * g));
            }
        }
        frontier = next;
    }
    if k > 0 {
        out = frontier.into_iter().map(|(_, p)| p).collect();
    }
    let v = Arc::new(out);
    cache.lock().unwrap().entry((n, k)).or_insert(v).clone()
}
