//! The operators `T_{r,s} (x) pt` and `T_{r,s} (x) 1` on `M_{n,k}`.

use std::fmt;

use super::{module::component, rational, vandermonde, x_var, y_var, Cap, LaurentPole};
use crate::poly::{Mono, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Pt,
    One,
}

impl Flavor {
    /// Cup product in `H^*(P^1)`: `pt.pt = 0`, `1.pt = pt`, `1.1 = 1`.
    pub fn cup(self, other: Flavor) -> Option<Flavor> {
        match (self, other) {
            (Flavor::Pt, Flavor::Pt) => None,
            (Flavor::One, Flavor::One) => Some(Flavor::One),
            _ => Some(Flavor::Pt),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Pt => "pt",
            Flavor::One => "1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohaOperator {
    pub r: u32,
    pub s: u32,
    pub flavor: Flavor,
}

impl CohaOperator {
    pub fn new(r: u32, s: u32, flavor: Flavor) -> Self {
        CohaOperator { r, s, flavor }
    }
}

impl fmt::Display for CohaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{},{}]x{}", self.r, self.s, self.flavor)
    }
}

fn x_pow(n: usize, i: usize, e: u32) -> Poly {
    let mut m = Mono::from_elem(0, 2 * n);
    m[x_var(i)] = e as u16;
    Poly::monomial(2 * n, m, rational(1))
}

/// Applies the operator:
/// `pt: sum_i x_i^s d_{y_i}^r`,
/// `1: sum_i (-s x_i^(s-1) d_{y_i}^r y_i - r x_i^s d_{y_i}^(r-1) d_{x_i})`,
/// dropping the summands whose scalar factor vanishes.
pub fn coha_apply(op: CohaOperator, f: &LaurentPole) -> LaurentPole {
    let n = f.n();
    let p = f.pole_order();
    let h = f.numerator();
    let CohaOperator { r, s, flavor } = op;
    match flavor {
        Flavor::Pt => {
            let mut out = Poly::zero(2 * n);
            for i in 0..n {
                out = &out + &(&x_pow(n, i, s) * &h.derivative(y_var(n, i), r));
            }
            LaurentPole::new(n, out, p)
        }
        Flavor::One => {
            // Everything over Delta^(p+1).
            let delta = vandermonde(n);
            let mut out = Poly::zero(2 * n);
            if s > 0 {
                for i in 0..n {
                    let yh = &Poly::var(2 * n, y_var(n, i)) * h;
                    let t = &x_pow(n, i, s - 1) * &yh.derivative(y_var(n, i), r);
                    out = &out + &t.scale_int(-(s as i64));
                }
                out = &out * &delta;
            }
            if r > 0 {
                for i in 0..n {
                    // d_{x_i}(h / Delta^p) = (h_x Delta - p h Delta_x) / Delta^(p+1).
                    let dx = &(&h.derivative(x_var(i), 1) * &delta)
                        - &(h * &delta.derivative(x_var(i), 1)).scale_int(p as i64);
                    let t = &x_pow(n, i, s) * &dx.derivative(y_var(n, i), r - 1);
                    out = &out + &t.scale_int(-(r as i64));
                }
            }
            LaurentPole::new(n, out, p + 1)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketViolation {
    pub a: CohaOperator,
    pub b: CohaOperator,
    pub element: String,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketReport {
    pub pairs_checked: usize,
    pub evaluations: usize,
    pub violations: Vec<BracketViolation>,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `[T_{r,s} (x) a, T_{r',s'} (x) b] = (r's - rs') T_{r+r'-1, s+s'-1} (x) (a.b)`
/// for all `r + s <= max_rs`, `r' + s' <= max_rs`, on the bases of the
/// components of `M_{n,k}` in the box.
pub fn coha_bracket_check(n: usize, k: u32, max_rs: u32, cap: Cap) -> BracketReport {
    let mut ops = Vec::new();
    for r in 0..=max_rs {
        for s in 0..=max_rs - r {
            for fl in [Flavor::Pt, Flavor::One] {
                ops.push(CohaOperator::new(r, s, fl));
            }
        }
    }
    let elements: Vec<LaurentPole> = cap
        .bidegrees(n, k)
        .into_iter()
        .flat_map(|d| component(n, k, d).space.basis.clone())
        .collect();
    let mut report = BracketReport::default();
    for (ia, a) in ops.iter().enumerate() {
        for b in &ops[ia + 1..] {
            report.pairs_checked += 1;
            let c = b.r as i64 * a.s as i64 - a.r as i64 * b.s as i64;
            let target = match a.flavor.cup(b.flavor) {
                Some(fl) if c != 0 => Some(CohaOperator::new(a.r + b.r - 1, a.s + b.s - 1, fl)),
                _ => None,
            };
            for f in &elements {
                report.evaluations += 1;
                let ab = coha_apply(*a, &coha_apply(*b, f));
                let ba = coha_apply(*b, &coha_apply(*a, f));
                let lhs = ab.sub(&ba);
                let rhs = match target {
                    Some(t) => coha_apply(t, f).scale(&rational(c)),
                    None => LaurentPole::zero(n),
                };
                if lhs != rhs {
                    report.violations.push(BracketViolation {
                        a: *a,
                        b: *b,
                        element: f.to_string(),
                        expected: rhs.to_string(),
                        found: lhs.to_string(),
                    });
                }
            }
        }
    }
    report
}
