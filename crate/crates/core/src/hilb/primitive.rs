//! Shuffle products, the primitive quotient, and the conjectural
//! comparisons with the plethystic logarithm of `Omega_k`.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::module::{component, HilbertTable};
use super::{pairs, rational, vandermonde, vandermonde_on, x_var, y_var, Cap, LaurentPole};
use crate::error::{Error, Result};
use crate::hlv::plog_twisted;
use crate::linalg::{Matrix, RowSpace};
use crate::poly::{Mono, Poly};
use crate::scalar::QtScalar;

/// Splits into bidegree-homogeneous pieces.
fn homogeneous_parts(f: &LaurentPole) -> Vec<LaurentPole> {
    let n = f.n();
    let mut parts: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    for (m, c) in f.numerator().terms() {
        let dx: u32 = m[..n].iter().map(|&e| e as u32).sum();
        let dy: u32 = m[n..].iter().map(|&e| e as u32).sum();
        parts
            .entry((dx, dy))
            .or_insert_with(|| Poly::zero(2 * n))
            .add_term(m.clone(), c.clone());
    }
    parts
        .into_values()
        .map(|p| LaurentPole::new(n, p, f.pole_order()))
        .collect()
}

/// `f * g = sum over minimal coset representatives sigma of
/// (-1)^((k-1)|sigma|) sigma(f(first block) g(second block))`.
/// The result is checked against the membership conditions of `M_{n,k}`.
pub fn shuffle(f: &LaurentPole, g: &LaurentPole, k: u32) -> Result<LaurentPole> {
    let h = shuffle_unchecked(f, g, k);
    let n = h.n();
    for part in homogeneous_parts(&h) {
        let d = part.bidegree().expect("homogeneous");
        if !component(n, k, d).contains(&part) {
            return Err(Error::MembershipFailure {
                n,
                k: k as usize,
                detail: format!("{f} * {g} has a component {part} outside M"),
            });
        }
    }
    Ok(h)
}

pub(crate) fn shuffle_unchecked(f: &LaurentPole, g: &LaurentPole, k: u32) -> LaurentPole {
    let (n1, n2) = (f.n(), g.n());
    let n = n1 + n2;
    let nv = 2 * n;
    if f.is_zero() || g.is_zero() {
        return LaurentPole::zero(n);
    }
    let map_f: Vec<usize> = (0..n1)
        .map(x_var)
        .chain((0..n1).map(|i| y_var(n, i)))
        .collect();
    let map_g: Vec<usize> = (0..n2)
        .map(|i| x_var(n1 + i))
        .chain((0..n2).map(|i| y_var(n, n1 + i)))
        .collect();
    let ff = f.numerator().rename(&map_f, nv);
    let gg = g.numerator().rename(&map_g, nv);
    let p = f.pole_order().max(g.pole_order());
    let block1: Vec<usize> = (0..n1).collect();
    let block2: Vec<usize> = (n1..n).collect();
    let mut cross = Poly::one(nv);
    for &i in &block1 {
        for &j in &block2 {
            cross = &cross * &(&Poly::var(nv, i) - &Poly::var(nv, j));
        }
    }
    let num = &(&(&ff * &gg) * &vandermonde_on(nv, &block1).pow(p - f.pole_order()))
        * &(&vandermonde_on(nv, &block2).pow(p - g.pole_order()) * &cross.pow(p));
    let mut total = Poly::zero(nv);
    for subset in combinations(n, n1) {
        let rest: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
        let sigma: Vec<usize> = subset.iter().chain(&rest).copied().collect();
        let len: usize = subset.iter().enumerate().map(|(i, &s)| s - i).sum();
        // sigma(Delta) = sgn(sigma) Delta contributes sgn^p.
        let odd = (len as u64 * (k as u64 + 1 + p as u64)) % 2 == 1;
        let term = super::permute(&num, n, &sigma);
        total = if odd { &total - &term } else { &total + &term };
    }
    LaurentPole::new(n, total, p)
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Span of all shuffle products landing in one bidegree, in the orbit
/// coordinates of that component.
pub(crate) fn shuffle_span(n: usize, k: u32, (dx, dy): (i64, u32)) -> Result<Arc<RowSpace>> {
    type Key = (usize, u32, i64, u32);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<RowSpace>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, k, dx, dy);
    if let Some(s) = cache.lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let comp = component(n, k, (dx, dy));
    let mut span = RowSpace::new(comp.coords.dim());
    'outer: for n1 in 1..n {
        let n2 = n - n1;
        let lo1 = -((k * pairs(n1)) as i64);
        let hi1 = dx + (k * pairs(n2)) as i64;
        for a1 in lo1..=hi1 {
            for b1 in 0..=dy {
                let c1 = component(n1, k, (a1, b1));
                if c1.space.basis.is_empty() {
                    continue;
                }
                let c2 = component(n2, k, (dx - a1, dy - b1));
                for f in &c1.space.basis {
                    for g in &c2.space.basis {
                        if span.rank() == comp.space.dim() {
                            break 'outer;
                        }
                        let h = shuffle_unchecked(f, g, k);
                        if h.is_zero() {
                            continue;
                        }
                        if !comp.contains(&h) {
                            return Err(Error::MembershipFailure {
                                n,
                                k: k as usize,
                                detail: format!("{f} * {g} = {h}"),
                            });
                        }
                        span.insert(comp.coords_of(&h).expect("member"));
                    }
                }
            }
        }
    }
    let s = Arc::new(span);
    cache.lock().unwrap().entry(key).or_insert(s.clone());
    Ok(s)
}

/// Dimensions of `M_{n,k} / (span of shuffles)` inside the box.
pub fn primitive_quotient(n: usize, k: u32, cap: Cap) -> Result<HilbertTable> {
    assert!(n >= 1, "rank must be positive");
    let entries = cap
        .bidegrees(n, k)
        .into_par_iter()
        .map(|d| {
            let dim = component(n, k, d).space.dim();
            let rank = shuffle_span(n, k, d)?.rank();
            Ok((d.0, d.1, dim - rank))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertTable { n, k, cap, entries })
}

/// Outcome of the comparison of `(1-q)(1-t)` times the primitive series
/// with `-(1-q)(1-t) [z^n] pLog Omega_k` at `q -> 1/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: usize,
    pub k: u32,
    pub cap: Cap,
    /// The rank-n coefficient after `q -> 1/q`, before the shift.
    pub target: String,
    /// `(q-exponent, t-exponent, sign)` of the matching monomial.
    pub shift: Option<(i64, i64, i64)>,
    /// `(1-q)(1-t) H_prim`, nonzero coefficients within the box.
    pub primitive: Vec<(i64, u32, i64)>,
    /// Bidegrees where the two sides differ: `(d_x, d_y, primitive, target)`.
    pub mismatches: Vec<(i64, u32, i64, String)>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "cap": [self.cap.x, self.cap.y],
            "target": self.target,
            "shift": self.shift.map(|(a, b, s)| json!({"q": a, "t": b, "sign": s})),
            "primitive": self.primitive.iter().map(|(a, b, c)| json!([a, b, c])).collect::<Vec<_>>(),
            "mismatches": self.mismatches.iter().map(|(a, b, c, d)| json!([a, b, c, d])).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

pub fn conjecture_check(n: usize, k: u32, cap: Cap) -> Result<ConjectureReport> {
    let prim = primitive_quotient(n, k, cap)?;
    let get = |a: i64, b: i64| -> i64 {
        if b < 0 {
            0
        } else {
            prim.get(a, b as u32) as i64
        }
    };
    let mut lhs: BTreeMap<(i64, u32), i64> = BTreeMap::new();
    for &(a, b, _) in &prim.entries {
        let bi = b as i64;
        let v = get(a, bi) - get(a - 1, bi) - get(a, bi - 1) + get(a - 1, bi - 1);
        if v != 0 {
            lhs.insert((a, b), v);
        }
    }
    let one = QtScalar::one();
    let factor = -(&(&one - &QtScalar::q()) * &(&one - &QtScalar::t()));
    let coeff = plog_twisted(k, n).scalar_coeff(n)?;
    let target = (&coeff * &factor).invert_q();
    let poly = target
        .as_laurent()
        .filter(|p| p.has_integral_exponents())
        .ok_or_else(|| Error::NotPolynomial(target.to_string()))?;
    let rhs: BTreeMap<(i64, i64), BigRational> = poly
        .terms()
        .map(|(&(a, b), c)| ((a / 2, b / 2), c.clone()))
        .collect();
    let mut report = ConjectureReport {
        n,
        k,
        cap,
        target: target.to_string(),
        shift: None,
        primitive: lhs.iter().map(|(&(a, b), &v)| (a, b, v)).collect(),
        mismatches: vec![],
    };
    let (Some((&(la, lb), &lv)), Some((&(ra, rb), rv))) = (lhs.iter().next(), rhs.iter().next())
    else {
        if lhs.is_empty() && rhs.is_empty() {
            return Ok(report);
        }
        // One side vanishes in the box and the other does not.
        for (&(a, b), &v) in &lhs {
            report.mismatches.push((a, b, v, "0".into()));
        }
        if lhs.is_empty() {
            report.mismatches.push((0, 0, 0, report.target.clone()));
        }
        return Ok(report);
    };
    let sign = if *rv == rational(lv) {
        1
    } else if *rv == -rational(lv) {
        -1
    } else {
        report.mismatches.push((la, lb, lv, rv.to_string()));
        return Ok(report);
    };
    let (sa, sb) = (la - ra, lb as i64 - rb);
    report.shift = Some((sa, sb, sign));
    for &(a, b, _) in &prim.entries {
        let l = lhs.get(&(a, b)).copied().unwrap_or(0);
        let r = rhs
            .get(&(a - sa, b as i64 - sb))
            .cloned()
            .unwrap_or_else(BigRational::zero)
            * rational(sign);
        if rational(l) != r {
            report.mismatches.push((a, b, l, r.to_string()));
        }
    }
    Ok(report)
}

/// Per-bidegree result of the generator-span check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub n: usize,
    pub k: u32,
    /// `(d_x, d_y, primitive dimension, dimension reached by the span)`.
    pub entries: Vec<(i64, u32, usize, usize)>,
}

impl SpanReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.2 == e.3)
    }
}

/// Monomials in `psi_s(pt) = sum x_i^s` (bidegree `(s, 0)`) and
/// `psi_s(1) = s sum x_i^(s-1) y_i` (bidegree `(s - 1, 1)`), `s >= 1`, of
/// total bidegree `(a, b)`.
fn psi_monomials(n: usize, a: u32, b: u32) -> Vec<Poly> {
    let mut gens: Vec<((u32, u32), Poly)> = Vec::new();
    for s in 1..=a {
        let mut p = Poly::zero(2 * n);
        for i in 0..n {
            let mut m = Mono::from_elem(0, 2 * n);
            m[x_var(i)] = s as u16;
            p.add_term(m, BigRational::one());
        }
        gens.push(((s, 0), p));
    }
    if b > 0 {
        for s in 1..=a + 1 {
            let mut p = Poly::zero(2 * n);
            for i in 0..n {
                let mut m = Mono::from_elem(0, 2 * n);
                m[x_var(i)] = (s - 1) as u16;
                m[y_var(n, i)] = 1;
                p.add_term(m, rational(s as i64));
            }
            gens.push(((s - 1, 1), p));
        }
    }
    fn rec(
        gens: &[((u32, u32), Poly)],
        start: usize,
        a: u32,
        b: u32,
        cur: Poly,
        out: &mut Vec<Poly>,
    ) {
        if a == 0 && b == 0 {
            out.push(cur);
            return;
        }
        for i in start..gens.len() {
            let ((ga, gb), g) = &gens[i];
            if *ga <= a && *gb <= b && ga + gb > 0 {
                rec(gens, i, a - ga, b - gb, &cur * g, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(&gens, 0, a, b, Poly::one(2 * n), &mut out);
    out
}

/// Whether `Delta^-(k-1) C[psi_s(pt), psi_s(1)]`, intersected with
/// `M_{n,k}`, spans the primitive quotient in every bidegree of the box.
pub fn generators_span_check(n: usize, k: u32, cap: Cap) -> Result<SpanReport> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "the generator check needs k >= 1".into(),
        ));
    }
    let delta = vandermonde(n);
    let entries = cap
        .bidegrees(n, k)
        .into_par_iter()
        .map(|(dx, dy)| {
            let comp = component(n, k, (dx, dy));
            let shuffles = shuffle_span(n, k, (dx, dy))?;
            let dim = comp.space.dim();
            let prim = dim - shuffles.rank();
            let a = dx + ((k - 1) * pairs(n)) as i64;
            if prim == 0 || a < 0 {
                return Ok((dx, dy, prim, 0));
            }
            // Numerators over Delta^k: psi-monomial times Delta.
            let vs: Vec<Vec<BigRational>> = psi_monomials(n, a as u32, dy)
                .iter()
                .map(|p| comp.coords.coords(&(p * &delta)))
                .collect();
            // Intersect span(vs) with the component: solve sum a_i v_i = sum b_j w_j.
            let ws: Vec<Vec<BigRational>> = comp
                .numerators
                .iter()
                .map(|h| comp.coords.coords(h))
                .collect();
            let cols = vs.len() + ws.len();
            let d = comp.coords.dim();
            let mut m = Matrix::zeros(d, cols);
            for (j, v) in vs.iter().chain(ws.iter()).enumerate() {
                for (i, x) in v.iter().enumerate() {
                    m[(i, j)] = if j < vs.len() { x.clone() } else { -x.clone() };
                }
            }
            let mut span = (*shuffles).clone();
            for sol in m.nullspace() {
                let mut v = vec![BigRational::zero(); d];
                for (c, w) in sol[vs.len()..].iter().zip(&ws) {
                    for (acc, x) in v.iter_mut().zip(w) {
                        *acc += c * x;
                    }
                }
                span.insert(v);
            }
            Ok((dx, dy, prim, span.rank() - shuffles.rank()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpanReport { n, k, entries })
}
