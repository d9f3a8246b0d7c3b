//! Independent oracles for the integration and acceptance tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use charvar::{Partition, QtScalar};
use num_rational::BigRational;

/// Partitions of `n` in increasing lexicographic order, `(1^n)` first.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.reverse();
    out
}

/// Coefficient of `x^mu` (mu padded with zeros to `n` variables) in
/// `p_lambda(x_1..x_n)`, by expanding the product of power sums.
fn power_sum_monomial_coeff(lambda: &[u32], mu: &[u32], n: usize) -> i64 {
    let mut poly: BTreeMap<Vec<u32>, i64> = BTreeMap::from([(vec![0; n], 1)]);
    for &r in lambda {
        let mut next = BTreeMap::new();
        for (e, c) in &poly {
            for i in 0..n {
                let mut e2 = e.clone();
                e2[i] += r;
                *next.entry(e2).or_insert(0) += c;
            }
        }
        poly = next;
    }
    let mut target = mu.to_vec();
    target.resize(n, 0);
    poly.get(&target).copied().unwrap_or(0)
}

fn z_lambda(lambda: &[u32]) -> i64 {
    let mut counts: BTreeMap<u32, i64> = BTreeMap::new();
    for &p in lambda {
        *counts.entry(p).or_insert(0) += 1;
    }
    counts
        .iter()
        .map(|(&p, &m)| (p as i64).pow(m as u32) * (1..=m).product::<i64>())
        .product()
}

/// Field operations the Gram-Schmidt oracle needs, with `q^a t^b`
/// supplied by the instance.
pub trait Field: Clone + PartialEq {
    fn int(c: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Field for QtScalar {
    fn int(c: i64) -> Self {
        QtScalar::from_int(c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        QtScalar::is_zero(self)
    }
}

impl Field for BigRational {
    fn int(c: i64) -> Self {
        BigRational::from_integer(c.into())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Symmetric functions of one degree in the power-sum basis, indexed like
/// `partitions(n)`.
type PVec<F> = Vec<F>;

fn dot<F: Field>(a: &PVec<F>, b: &PVec<F>, weights: &[F]) -> F {
    let mut acc = F::int(0);
    for ((x, y), w) in a.iter().zip(b).zip(weights) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y).mul(w));
        }
    }
    acc
}

/// Solves `A x = b` by Gauss-Jordan elimination.
fn solve<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Vec<F> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(c, p);
        b.swap(c, p);
        let piv = a[c][c].clone();
        a[c] = a[c].iter().map(|x| x.div(&piv)).collect();
        b[c] = b[c].div(&piv);
        let (pivot_row, pivot_b) = (a[c].clone(), b[c].clone());
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(y));
                }
                b[r] = b[r].sub(&f.mul(&pivot_b));
            }
        }
    }
    b
}

fn arm_leg(mu: &[u32], i: usize, j: usize) -> (i64, i64) {
    let arm = mu[i] as i64 - j as i64 - 1;
    let leg = mu.iter().skip(i + 1).filter(|&&m| m as usize > j).count() as i64;
    (arm, leg)
}

fn n_stat(mu: &[u32]) -> i64 {
    mu.iter()
        .enumerate()
        .map(|(i, &m)| i as i64 * m as i64)
        .sum()
}

/// `H~_mu` by Gram-Schmidt. With `qt(a, b) = q^a t^b`: Macdonald `P` from
/// the scalar product `<p_l, p_m> = delta z_l prod (1 - q^l_i)/(1 - t^l_i)`
/// applied to the monomial basis in lexicographic order, `J = c_mu P`,
/// `H = J[X/(1-t)]`. The caller passes `qt` for the parameters `(q, 1/t)`
/// and `t_pow_n` for `t^n(mu)`, so the result is
/// `H~ = t^n(mu) H(q, 1/t)` on monomial symmetric functions.
fn gram_schmidt<F: Field>(
    mu: &[u32],
    qt: &dyn Fn(i64, i64) -> F,
    t_pow_n: F,
) -> BTreeMap<Vec<u32>, F> {
    let n: u32 = mu.iter().sum();
    let parts = partitions(n);
    let len = parts.len();
    let nv = n as usize;
    // pm[l][m]: coefficient of m_m in p_l.
    let pm: Vec<Vec<F>> = parts
        .iter()
        .map(|l| {
            parts
                .iter()
                .map(|m| F::int(power_sum_monomial_coeff(l, m, nv)))
                .collect()
        })
        .collect();
    let transpose: Vec<Vec<F>> = (0..len)
        .map(|m| (0..len).map(|l| pm[l][m].clone()).collect())
        .collect();
    let m_in_p: Vec<PVec<F>> = (0..len)
        .map(|m| {
            solve(
                transpose.clone(),
                (0..len).map(|i| F::int((i == m) as i64)).collect(),
            )
        })
        .collect();
    let one = F::int(1);
    let weights: Vec<F> = parts
        .iter()
        .map(|l| {
            l.iter().fold(F::int(z_lambda(l)), |acc, &r| {
                acc.mul(&one.sub(&qt(r as i64, 0)))
                    .div(&one.sub(&qt(0, r as i64)))
            })
        })
        .collect();
    let idx = parts.iter().position(|p| p == mu).expect("partition of n");
    let mut ps: Vec<PVec<F>> = Vec::new();
    for m in &m_in_p[..=idx] {
        let mut v = m.clone();
        for prev in &ps {
            let c = dot(m, prev, &weights).div(&dot(prev, prev, &weights));
            for (x, y) in v.iter_mut().zip(prev) {
                *x = x.sub(&c.mul(y));
            }
        }
        ps.push(v);
    }
    let mut c_mu = F::int(1);
    for (i, &row) in mu.iter().enumerate() {
        for j in 0..row as usize {
            let (a, l) = arm_leg(mu, i, j);
            c_mu = c_mu.mul(&one.sub(&qt(a, l + 1)));
        }
    }
    let h_p: PVec<F> = parts
        .iter()
        .zip(&ps[idx])
        .map(|(l, c)| {
            let h = l
                .iter()
                .fold(c_mu.mul(c), |acc, &r| acc.div(&one.sub(&qt(0, r as i64))));
            t_pow_n.mul(&h)
        })
        .collect();
    parts
        .iter()
        .enumerate()
        .map(|(mi, m)| {
            let mut acc = F::int(0);
            for (li, c) in h_p.iter().enumerate() {
                if !c.is_zero() && !pm[li][mi].is_zero() {
                    acc = acc.add(&c.mul(&pm[li][mi]));
                }
            }
            (m.clone(), acc)
        })
        .collect()
}

/// Symbolic `H~_mu` on monomial symmetric functions.
pub fn modified_macdonald_gram_schmidt(mu: &[u32]) -> BTreeMap<Vec<u32>, QtScalar> {
    // Parameters (q, 1/t).
    let qt = |a: i64, b: i64| QtScalar::qt_pow(a, -b);
    gram_schmidt(mu, &qt, QtScalar::qt_pow(0, n_stat(mu)))
}

/// `H~_mu` at `q = q0`, `t = t0`, in exact rationals.
pub fn modified_macdonald_gram_schmidt_at(
    mu: &[u32],
    q0: &BigRational,
    t0: &BigRational,
) -> BTreeMap<Vec<u32>, BigRational> {
    let tinv = t0.recip();
    let qt = |a: i64, b: i64| {
        let pw = |x: &BigRational, e: i64| {
            if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            }
        };
        pw(q0, a) * pw(&tinv, b)
    };
    gram_schmidt(mu, &qt, num_traits::pow(t0.clone(), n_stat(mu) as usize))
}

pub fn partition(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

/// Number of solutions of `sum c_j e_j = a` with `e_j >= 0`.
fn compositions(cycles: &[u32], a: u32) -> i64 {
    let mut ways = vec![0i64; a as usize + 1];
    ways[0] = 1;
    for &c in cycles {
        for s in c as usize..=a as usize {
            ways[s] += ways[s - c as usize];
        }
    }
    ways[a as usize]
}

/// Dimension of the bidegree `(a, b)` invariants (`sign = false`) or
/// anti-invariants of the diagonal `S_n` action on `Q[x, y]`, by averaging
/// `prod_cycles 1/((1 - q^c)(1 - t^c))` over cycle types.
pub fn molien_dim(n: u32, sign: bool, a: i64, b: i64) -> usize {
    if a < 0 || b < 0 {
        return 0;
    }
    let fact: i64 = (1..=n as i64).product();
    let mut total = 0i64;
    for l in partitions(n) {
        let count = fact / z_lambda(&l);
        let s = if sign && (n as usize - l.len()) % 2 == 1 {
            -1
        } else {
            1
        };
        total += s * count * compositions(&l, a as u32) * compositions(&l, b as u32);
    }
    assert_eq!(total % fact, 0);
    (total / fact) as usize
}

/// Dimension of `M_{2,k}` in bidegree `(a, b)` from
/// `M_{2,k} = R^((-1)^(k-1)) + M'` with
/// `H(M') = 1/((1-q)(1-t)) sum_{i >= 1, j >= 0, i + j <= k - 1, i + j = k - 1 mod 2} q^-i t^j`.
pub fn rank_two_closed_form(k: u32, a: i64, b: i64) -> usize {
    let mut d = molien_dim(2, k.is_multiple_of(2), a, b);
    let k = k as i64;
    for i in 1..k {
        for j in 0..k - i {
            if (i + j - (k - 1)) % 2 == 0 && -i <= a && j <= b {
                d += 1;
            }
        }
    }
    d
}
