//! Rank-graded series `sum_n z^n F_n` and the plethystic exponential and
//! logarithm.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{PowerSum, SymFunc};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::QtScalar;

/// Truncated series in `z` with symmetric-function coefficients. The
/// coefficient of `z^n` is homogeneous of degree `n` in every alphabet.
/// With zero alphabets the coefficients are plain scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct SymSeries {
    k: usize,
    coeffs: Vec<SymFunc>,
}

pub fn moebius(mut n: u32) -> i32 {
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

impl SymSeries {
    pub fn zero(k: usize, truncation_rank: usize) -> Self {
        SymSeries {
            k,
            coeffs: vec![SymFunc::zero(k); truncation_rank + 1],
        }
    }

    pub fn one(k: usize, truncation_rank: usize) -> Self {
        let mut s = Self::zero(k, truncation_rank);
        s.coeffs[0] = SymFunc::one(k);
        s
    }

    /// Builds a series from its coefficients `F_0, ..., F_N`.
    pub fn from_coeffs(k: usize, coeffs: Vec<SymFunc>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least the rank-0 coefficient".into(),
            ));
        }
        for (n, c) in coeffs.iter().enumerate() {
            if c.alphabet_count() != k {
                return Err(Error::AlphabetMismatch(k, c.alphabet_count()));
            }
            if let Some((key, _)) = c
                .terms()
                .find(|(key, _)| key.iter().any(|p| p.size() as usize != n))
            {
                return Err(Error::InvalidArgument(format!(
                    "rank-{n} coefficient has index {key:?} of the wrong size"
                )));
            }
        }
        Ok(SymSeries { k, coeffs })
    }

    /// A scalar series (no alphabets) from its coefficients.
    pub fn scalar(coeffs: Vec<QtScalar>) -> Self {
        SymSeries {
            k: 0,
            coeffs: coeffs
                .into_iter()
                .map(|c| SymFunc::constant(0, c))
                .collect(),
        }
    }

    pub fn alphabet_count(&self) -> usize {
        self.k
    }

    pub fn truncation_rank(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Result<&SymFunc> {
        self.coeffs.get(n).ok_or(Error::RankOverflow {
            rank: n,
            truncation: self.truncation_rank(),
        })
    }

    pub fn coeffs(&self) -> &[SymFunc] {
        &self.coeffs
    }

    /// Scalar coefficient of `z^n` for a series without alphabets.
    pub fn scalar_coeff(&self, n: usize) -> Result<QtScalar> {
        if self.k != 0 {
            return Err(Error::AlphabetMismatch(0, self.k));
        }
        Ok(self.coeff(n)?.coeff(&[]))
    }

    pub fn truncate(&self, rank: usize) -> Self {
        SymSeries {
            k: self.k,
            coeffs: self.coeffs.iter().take(rank + 1).cloned().collect(),
        }
    }

    pub fn add(&self, other: &SymSeries) -> Result<SymSeries> {
        if self.k != other.k {
            return Err(Error::AlphabetMismatch(self.k, other.k));
        }
        let n = self.truncation_rank().min(other.truncation_rank());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].add(&other.coeffs[i]))
            .collect::<Result<_>>()?;
        Ok(SymSeries { k: self.k, coeffs })
    }

    pub fn scale(&self, s: &QtScalar) -> SymSeries {
        SymSeries {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// `z -> z^n` together with the Adams operation on every other variable.
    pub fn adams(&self, n: u32) -> SymSeries {
        assert!(n >= 1, "Adams operations are indexed from 1");
        let p = self.to_p();
        let out = adams_p(&p, n, self.truncation_rank());
        from_p(self.k, out)
    }

    pub fn mul(&self, other: &SymSeries) -> Result<SymSeries> {
        if self.k != other.k {
            return Err(Error::AlphabetMismatch(self.k, other.k));
        }
        let n = self.truncation_rank().min(other.truncation_rank());
        let a = self.truncate(n).to_p();
        let b = other.truncate(n).to_p();
        Ok(from_p(self.k, mul_p(&a, &b, n)))
    }

    fn to_p(&self) -> Vec<PowerSum> {
        self.coeffs.iter().map(SymFunc::to_power_sums).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    if self.k == 0 {
                        json!({"rank": n, "coeff": c.coeff(&[]).to_string()})
                    } else {
                        json!({"rank": n, "coeff": c.to_json()})
                    }
                })
                .collect(),
        )
    }
}

fn from_p(k: usize, p: Vec<PowerSum>) -> SymSeries {
    SymSeries {
        k,
        coeffs: p.iter().map(PowerSum::to_monomials).collect(),
    }
}

fn mul_p(a: &[PowerSum], b: &[PowerSum], n: usize) -> Vec<PowerSum> {
    let k = a[0].alphabet_count();
    (0..=n)
        .map(|r| {
            let mut acc = PowerSum::zero(k);
            for i in 0..=r {
                if a[i].is_zero() || b[r - i].is_zero() {
                    continue;
                }
                acc = acc.add(&a[i].mul(&b[r - i]).unwrap()).unwrap();
            }
            acc
        })
        .collect()
}

fn adams_p(p: &[PowerSum], n: u32, rank: usize) -> Vec<PowerSum> {
    let k = p[0].alphabet_count();
    let mut out = vec![PowerSum::zero(k); rank + 1];
    for (r, c) in p.iter().enumerate() {
        let target = r * n as usize;
        if target <= rank {
            out[target] = c.adams(n);
        }
    }
    out
}

/// `log F` via `F_n = (1/n) sum_j j L_j F_{n-j}`, given `F_0 = 1`.
fn log_p(f: &[PowerSum]) -> Vec<PowerSum> {
    let k = f[0].alphabet_count();
    let mut l = vec![PowerSum::zero(k)];
    for n in 1..f.len() {
        let mut acc = PowerSum::zero(k);
        for j in 1..n {
            if l[j].is_zero() || f[n - j].is_zero() {
                continue;
            }
            let t = l[j].mul(&f[n - j]).unwrap();
            acc = acc
                .add(&t.scale(&QtScalar::from_rational(ratio(j as i64, n as i64))))
                .unwrap();
        }
        l.push(f[n].sub(&acc).unwrap());
    }
    l
}

/// `exp L` via the same recurrence, given `L_0 = 0`.
fn exp_p(l: &[PowerSum]) -> Vec<PowerSum> {
    let k = l[0].alphabet_count();
    let mut f = vec![PowerSum::one(k)];
    for n in 1..l.len() {
        let mut acc = PowerSum::zero(k);
        for j in 1..=n {
            if l[j].is_zero() || f[n - j].is_zero() {
                continue;
            }
            let t = l[j].mul(&f[n - j]).unwrap();
            acc = acc
                .add(&t.scale(&QtScalar::from_rational(ratio(j as i64, n as i64))))
                .unwrap();
        }
        f.push(acc);
    }
    f
}

fn constant_of(f: &SymFunc) -> QtScalar {
    f.coeff(&vec![Partition::empty(); f.alphabet_count()])
}

/// `pExp(f) = exp(sum_{n>=1} adams(f, n) / n)`.
pub fn p_exp(f: &SymSeries) -> Result<SymSeries> {
    if !f.coeffs[0].is_zero() {
        return Err(Error::ConstantTerm {
            expected: "0",
            found: constant_of(&f.coeffs[0]).to_string(),
        });
    }
    let rank = f.truncation_rank();
    let p = f.to_p();
    let mut sum = vec![PowerSum::zero(f.k); rank + 1];
    for n in 1..=rank.max(1) as u32 {
        let a = adams_p(&p, n, rank);
        let s = QtScalar::from_rational(ratio(1, n as i64));
        for r in 0..=rank {
            if !a[r].is_zero() {
                sum[r] = sum[r].add(&a[r].scale(&s)).unwrap();
            }
        }
    }
    Ok(from_p(f.k, exp_p(&sum)))
}

/// `pLog(F) = sum_{n>=1} (mu(n)/n) adams(log F, n)`.
pub fn p_log(f: &SymSeries) -> Result<SymSeries> {
    let c0 = &f.coeffs[0];
    if *c0 != SymFunc::one(f.k) {
        return Err(Error::ConstantTerm {
            expected: "1",
            found: constant_of(c0).to_string(),
        });
    }
    let rank = f.truncation_rank();
    let l = log_p(&f.to_p());
    let mut out = vec![PowerSum::zero(f.k); rank + 1];
    for n in 1..=rank.max(1) as u32 {
        let m = moebius(n);
        if m == 0 {
            continue;
        }
        let a = adams_p(&l, n, rank);
        let s = QtScalar::from_rational(ratio(m as i64, n as i64));
        for r in 0..=rank {
            if !a[r].is_zero() {
                out[r] = out[r].add(&a[r].scale(&s)).unwrap();
            }
        }
    }
    Ok(from_p(f.k, out))
}

impl fmt::Display for SymSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            if self.k == 0 {
                write!(f, "z^{n}: {}", c.coeff(&[]))?;
            } else {
                write!(f, "z^{n}: {c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
