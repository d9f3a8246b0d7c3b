//! The bigraded modules `M_{n,k}`: rational functions `h / Delta_x^k` with
//! `h` anti-invariant, cut out by the integrality conditions
//! `D(x, d_y) f in R` for `D` in `(R^-)^k`.
//!
//! Variables of the polynomial ring in `2n` variables are ordered
//! `x_1, ..., x_n, y_1, ..., y_n`. Bidegrees are `(x-degree, y-degree)`,
//! with poles counting negatively in `x`.

mod coha;
mod generators;
mod module;
mod molien;
mod pole;
mod primitive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::poly::{Mono, Poly};

pub use coha::{
    coha_apply, coha_bracket_check, BracketReport, BracketViolation, CohaOperator, Flavor,
};
pub use generators::{antiinvariant_power_basis, GeneratorTable};
pub use module::{
    hilbert_series, module_component, module_component_invariant, BigradedSpace, HilbertTable,
};
pub use molien::molien_series;
pub use pole::LaurentPole;
pub use primitive::{
    conjecture_check, generators_span_check, primitive_quotient, shuffle, ConjectureReport,
    SpanReport,
};

/// Bidegree box: `d_x + k n(n-1)/2 <= x` and `d_y <= y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cap {
    pub x: u32,
    pub y: u32,
}

impl Default for Cap {
    fn default() -> Self {
        Cap { x: 6, y: 6 }
    }
}

impl Cap {
    pub fn new(x: u32, y: u32) -> Self {
        Cap { x, y }
    }

    /// All bidegrees of `M_{n,k}` inside the box, x-degree outermost.
    pub fn bidegrees(&self, n: usize, k: u32) -> Vec<(i64, u32)> {
        let shift = k as i64 * pairs(n) as i64;
        let mut out = Vec::new();
        for a in 0..=self.x as i64 {
            for b in 0..=self.y {
                out.push((a - shift, b));
            }
        }
        out
    }
}

/// `n(n-1)/2`, the degree of the Vandermonde.
pub fn pairs(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

pub(crate) fn x_var(i: usize) -> usize {
    i
}

pub(crate) fn y_var(n: usize, i: usize) -> usize {
    n + i
}

/// Variable names `x1..xn, y1..yn` for rendering.
pub fn variable_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")))
        .collect()
}

/// `Delta_x = prod_{i<j} (x_i - x_j)` in the ring of `2n` variables.
pub fn vandermonde(n: usize) -> Poly {
    vandermonde_on(2 * n, &(0..n).collect::<Vec<_>>())
}

/// Vandermonde in the listed variables, inside a ring of `nvars` variables.
pub(crate) fn vandermonde_on(nvars: usize, vars: &[usize]) -> Poly {
    let mut d = Poly::one(nvars);
    for (a, &i) in vars.iter().enumerate() {
        for &j in &vars[a + 1..] {
            d = &d * &(&Poly::var(nvars, i) - &Poly::var(nvars, j));
        }
    }
    d
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let inv = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, if inv % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Applies the diagonal action: `x_i -> x_{sigma(i)}`, `y_i -> y_{sigma(i)}`.
pub fn permute(f: &Poly, n: usize, sigma: &[usize]) -> Poly {
    let map: Vec<usize> = sigma
        .iter()
        .copied()
        .chain(sigma.iter().map(|&s| n + s))
        .collect();
    f.rename(&map, 2 * n)
}

/// `sum_sigma (+-1)^sigma sigma(f)` under the diagonal action.
pub fn symmetrize(f: &Poly, n: usize, sign: bool) -> Poly {
    let mut out = Poly::zero(2 * n);
    for (sigma, s) in permutations(n) {
        let g = permute(f, n, &sigma);
        out = if sign && s < 0 { &out - &g } else { &out + &g };
    }
    out
}

/// Whether `f` is invariant (`sign = false`) or anti-invariant under the
/// adjacent transpositions, hence under all of `S_n`.
pub fn has_parity(f: &Poly, n: usize, sign: bool) -> bool {
    (0..n.saturating_sub(1)).all(|i| {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.swap(i, i + 1);
        let g = permute(f, n, &sigma);
        if sign {
            g == -f
        } else {
            g == *f
        }
    })
}

/// Canonical monomials of the orbit basis of the bidegree-`(a, b)` part of
/// `R^+` (`sign = false`) or `R^-`: weakly (resp. strictly) decreasing
/// sequences of exponent pairs `(alpha_i, beta_i)`.
pub(crate) fn orbit_monomials(n: usize, a: u32, b: u32, sign: bool) -> Vec<Mono> {
    fn rec(
        n: usize,
        a: u32,
        b: u32,
        prev: Option<(u32, u32)>,
        strict: bool,
        cur: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if cur.len() == n {
            if a == 0 && b == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for al in (0..=a).rev() {
            for be in (0..=b).rev() {
                if let Some(p) = prev {
                    let ok = if strict { (al, be) < p } else { (al, be) <= p };
                    if !ok {
                        continue;
                    }
                }
                cur.push((al, be));
                rec(n, a - al, b - be, Some((al, be)), strict, cur, out);
                cur.pop();
            }
        }
    }
    let mut seqs = Vec::new();
    rec(n, a, b, None, sign, &mut Vec::new(), &mut seqs);
    seqs.into_iter()
        .map(|s| {
            let mut m = Mono::from_elem(0, 2 * n);
            for (i, (al, be)) in s.into_iter().enumerate() {
                m[i] = al as u16;
                m[n + i] = be as u16;
            }
            m
        })
        .collect()
}

/// Orbit basis element for a canonical monomial: the (anti)symmetrization
/// normalized so the canonical monomial has coefficient 1.
pub(crate) fn orbit_element(n: usize, m: &Mono, sign: bool) -> Poly {
    let f = Poly::monomial(2 * n, m.clone(), BigRational::one());
    let s = symmetrize(&f, n, sign);
    let c = s.coeff(m);
    s.scale(&c.recip())
}

pub(crate) fn rational(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}
