//! Bidegree components of `M_{n,k}` by exact linear algebra.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::generators::{product_generators, OrbitCoords};
use super::{orbit_element, orbit_monomials, pairs, Cap, LaurentPole};
use crate::linalg::RowSpace;
use crate::poly::{Mono, Poly};

/// A bidegree component of `M_{n,k}` with an explicit basis.
#[derive(Clone, Debug)]
pub struct BigradedSpace {
    pub n: usize,
    pub k: u32,
    pub bidegree: (i64, u32),
    pub basis: Vec<LaurentPole>,
}

impl BigradedSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `D(x, d_y) h`.
pub(crate) fn apply_x_dy(d: &Poly, h: &Poly, n: usize) -> Poly {
    let mut out = Poly::zero(2 * n);
    for (m, c) in d.terms() {
        let mut g = h.clone();
        for i in 0..n {
            let e = m[n + i] as u32;
            if e > 0 {
                g = g.derivative(n + i, e);
                if g.is_zero() {
                    break;
                }
            }
        }
        if g.is_zero() {
            continue;
        }
        let mut xm = Mono::from_elem(0, 2 * n);
        xm[..n].copy_from_slice(&m[..n]);
        out = &out + &(&Poly::monomial(2 * n, xm, c.clone()) * &g);
    }
    out
}

/// Linear functionals whose common kernel is
/// `{h : Delta^p divides D(x, d_y) h for every D in gens}`, evaluated on
/// the given candidates. Divisibility by `Delta^p` of a polynomial with a
/// definite parity reduces to divisibility by `(x_1 - x_2)^p`, i.e. the
/// vanishing of `d_{x_1}^m (.)|_{x_1 = x_2}` for `m < p`.
fn condition_kernel(
    n: usize,
    p: u32,
    dy: u32,
    gens: &[Poly],
    candidates: &[Poly],
) -> Vec<Vec<BigRational>> {
    let cols = candidates.len();
    if n < 2 || p == 0 || cols == 0 {
        return RowSpace::new(cols).kernel();
    }
    let active: Vec<&Poly> = gens
        .iter()
        .filter(|d| d.max_degree_in(|i| i >= n) <= dy)
        .collect();
    let mut rows: HashMap<(usize, usize, Mono), Vec<(usize, BigRational)>> = HashMap::new();
    for (j, h) in candidates.iter().enumerate() {
        for (gi, d) in active.iter().enumerate() {
            let dh = apply_x_dy(d, h, n);
            let mut cur = dh;
            for m in 0..p as usize {
                if m > 0 {
                    cur = cur.derivative(0, 1);
                }
                if cur.is_zero() {
                    break;
                }
                for (mono, c) in cur.identify(0, 1).terms() {
                    rows.entry((gi, m, mono.clone()))
                        .or_default()
                        .push((j, c.clone()));
                }
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().cloned().collect();
    keys.sort();
    let mut space = RowSpace::new(cols);
    for key in keys {
        if space.is_full() {
            break;
        }
        let mut v = vec![BigRational::zero(); cols];
        for (j, c) in &rows[&key] {
            v[*j] += c;
        }
        space.insert(v);
    }
    space.kernel()
}

/// Cached component together with its coordinate system.
pub(crate) struct Component {
    pub space: BigradedSpace,
    /// Numerators over `Delta^k`, anti-invariant, one per basis element.
    pub coords: OrbitCoords,
    pub span: RowSpace,
    pub numerators: Vec<Poly>,
}

impl Component {
    /// Coordinates of an element of the same bidegree, as a numerator
    /// over `Delta^k`; `None` if the numerator is not anti-invariant or the
    /// pole is too deep.
    pub fn coords_of(&self, f: &LaurentPole) -> Option<Vec<BigRational>> {
        let h = f.numerator_over(self.space.k)?;
        if !super::has_parity(&h, self.space.n, true) {
            return None;
        }
        Some(self.coords.coords(&h))
    }

    pub fn contains(&self, f: &LaurentPole) -> bool {
        if f.is_zero() {
            return true;
        }
        if f.bidegree() != Some(self.space.bidegree) {
            return false;
        }
        self.coords_of(f).is_some_and(|v| self.span.contains(&v))
    }
}

pub(crate) fn component(n: usize, k: u32, bidegree: (i64, u32)) -> Arc<Component> {
    type Key = (usize, u32, i64, u32);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Component>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, k, bidegree.0, bidegree.1);
    if let Some(c) = cache.lock().unwrap().get(&key) {
        return c.clone();
    }
    let c = Arc::new(compute_component(n, k, bidegree));
    cache.lock().unwrap().entry(key).or_insert(c).clone()
}

fn compute_component(n: usize, k: u32, (dx, dy): (i64, u32)) -> Component {
    let a = dx + (k * pairs(n)) as i64;
    let empty = |coords| Component {
        space: BigradedSpace {
            n,
            k,
            bidegree: (dx, dy),
            basis: vec![],
        },
        coords,
        span: RowSpace::new(0),
        numerators: vec![],
    };
    if a < 0 {
        return empty(OrbitCoords::new(n, 0, 0, true));
    }
    let a = a as u32;
    let coords = OrbitCoords::new(n, a, dy, true);
    let candidates: Vec<Poly> = orbit_monomials(n, a, dy, true)
        .iter()
        .map(|m| orbit_element(n, m, true))
        .collect();
    let gens = product_generators(n, k);
    let kernel = condition_kernel(n, k, dy, &gens, &candidates);
    let mut span = RowSpace::new(coords.dim());
    let mut numerators = Vec::new();
    let mut basis = Vec::new();
    for v in kernel {
        let mut h = Poly::zero(2 * n);
        for (c, b) in v.iter().zip(&candidates) {
            if !c.is_zero() {
                h = &h + &b.scale(c);
            }
        }
        span.insert(coords.coords(&h));
        basis.push(LaurentPole::new(n, h.clone(), k));
        numerators.push(h);
    }
    Component {
        space: BigradedSpace {
            n,
            k,
            bidegree: (dx, dy),
            basis,
        },
        coords,
        span,
        numerators,
    }
}

/// Basis of the bidegree-`(d_x, d_y)` component of `M_{n,k}` from the
/// anti-invariant presentation with poles of order `k`.
pub fn module_component(n: usize, k: u32, bidegree: (i64, u32)) -> BigradedSpace {
    component(n, k, bidegree).space.clone()
}

/// The same component from the invariant presentation with poles of order
/// `k - 1` and conditions from `(R^-)^(k-1)`.
pub fn module_component_invariant(n: usize, k: u32, (dx, dy): (i64, u32)) -> BigradedSpace {
    assert!(k >= 1, "the invariant presentation needs k >= 1");
    let a = dx + ((k - 1) * pairs(n)) as i64;
    let mut space = BigradedSpace {
        n,
        k,
        bidegree: (dx, dy),
        basis: vec![],
    };
    if a < 0 {
        return space;
    }
    let candidates: Vec<Poly> = orbit_monomials(n, a as u32, dy, false)
        .iter()
        .map(|m| orbit_element(n, m, false))
        .collect();
    let gens = product_generators(n, k - 1);
    for v in condition_kernel(n, k - 1, dy, &gens, &candidates) {
        let mut h = Poly::zero(2 * n);
        for (c, b) in v.iter().zip(&candidates) {
            if !c.is_zero() {
                h = &h + &b.scale(c);
            }
        }
        space.basis.push(LaurentPole::new(n, h, k - 1));
    }
    space
}

/// Dimensions per bidegree inside a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    pub n: usize,
    pub k: u32,
    pub cap: Cap,
    /// `(d_x, d_y, dim)`, x-degree outermost.
    pub entries: Vec<(i64, u32, usize)>,
}

impl HilbertTable {
    pub fn get(&self, dx: i64, dy: u32) -> usize {
        self.entries
            .iter()
            .find(|e| e.0 == dx && e.1 == dy)
            .map_or(0, |e| e.2)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "cap": [self.cap.x, self.cap.y],
            "dims": self.entries.iter().map(|(a, b, d)| json!([a, b, d])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for HilbertTable {
    /// Rows are y-degrees, columns x-degrees.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut xs: Vec<i64> = self.entries.iter().map(|e| e.0).collect();
        xs.sort_unstable();
        xs.dedup();
        let mut ys: Vec<u32> = self.entries.iter().map(|e| e.1).collect();
        ys.sort_unstable();
        ys.dedup();
        write!(f, "{:>6}", "dy\\dx")?;
        for x in &xs {
            write!(f, "{x:>5}")?;
        }
        for y in &ys {
            writeln!(f)?;
            write!(f, "{y:>6}")?;
            for x in &xs {
                write!(f, "{:>5}", self.get(*x, *y))?;
            }
        }
        Ok(())
    }
}

pub fn hilbert_series(n: usize, k: u32, cap: Cap) -> HilbertTable {
    let entries = cap
        .bidegrees(n, k)
        .into_par_iter()
        .map(|(a, b)| (a, b, component(n, k, (a, b)).space.dim()))
        .collect();
    HilbertTable { n, k, cap, entries }
}
