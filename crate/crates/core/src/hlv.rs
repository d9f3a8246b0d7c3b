//! The HLV partition function `Omega_{g,k}`, mixed Hodge polynomials
//! extracted from its plethystic logarithm, genericity of eigenvalue data,
//! and the twisted genus-0 series `Omega_k`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};
use crate::scalar::{QtLaurent, QtScalar, QtSum};
use crate::symfunc::{modified_macdonald, p_log, SymFunc, SymSeries};

/// `q^(a2/2) t^(b2/2)` as a scalar.
fn half_pow(a2: i64, b2: i64) -> QtLaurent {
    QtLaurent::monomial(BigRational::one(), (a2, b2))
}

/// `prod_cells (q^(a+1/2) - t^(l+1/2))^(2g) / ((q^a - t^(l+1)) (q^(a+1) - t^l))`.
pub fn hook_product(lambda: &Partition, g: u32) -> QtScalar {
    let mut num = QtLaurent::one();
    let mut den = QtLaurent::one();
    for c in lambda.cells_with_stats() {
        let (a, l) = (c.arm as i64, c.leg as i64);
        if g > 0 {
            let f = &half_pow(2 * a + 1, 0) - &half_pow(0, 2 * l + 1);
            num = &num * &f.pow(2 * g);
        }
        let d1 = &QtLaurent::qt_pow(a, 0) - &QtLaurent::qt_pow(0, l + 1);
        let d2 = &QtLaurent::qt_pow(a + 1, 0) - &QtLaurent::qt_pow(0, l);
        den = &den * &(&d1 * &d2);
    }
    QtScalar::new(num, den).expect("hook factors are nonzero")
}

/// `H~_lambda(x_1) ... H~_lambda(x_k)`.
fn macdonald_tensor_power(lambda: &Partition, k: usize) -> SymFunc {
    let h = modified_macdonald(lambda);
    let mut out = SymFunc::one(0);
    for _ in 0..k {
        out = out.tensor(&h);
    }
    out
}

/// `Omega_{g,k} = sum_n z^n sum_{lambda |- n} H~_lambda(x_1)...H~_lambda(x_k) hook(lambda, g)`.
pub fn omega(g: u32, k: usize, truncation_rank: usize) -> SymSeries {
    assert!(k >= 1, "at least one puncture");
    let coeffs = (0..=truncation_rank as u32)
        .map(|n| {
            let parts = enumerate_partitions(n);
            let terms: Vec<SymFunc> = parts
                .par_iter()
                .map(|l| macdonald_tensor_power(l, k).scale(&hook_product(l, g)))
                .collect();
            terms.iter().fold(SymFunc::zero(k), |acc, t| {
                acc.add(t).expect("same alphabets")
            })
        })
        .collect();
    SymSeries::from_coeffs(k, coeffs).expect("coefficients are homogeneous")
}

/// Multiplicities of the eigenvalues at each puncture, with optional
/// eigenvalues (one per part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityData {
    pub mu: Vec<Partition>,
    pub eigenvalues: Option<Vec<Vec<BigRational>>>,
}

impl MultiplicityData {
    pub fn new(mu: Vec<Partition>, eigenvalues: Option<Vec<Vec<BigRational>>>) -> Result<Self> {
        let Some(first) = mu.first() else {
            return Err(Error::InvalidMultiplicities("no punctures".into()));
        };
        let n = first.size();
        if mu.iter().any(|m| m.size() != n) {
            return Err(Error::InvalidMultiplicities(
                "every puncture must have the same rank".into(),
            ));
        }
        if let Some(ev) = &eigenvalues {
            if ev.len() != mu.len() {
                return Err(Error::InvalidMultiplicities(format!(
                    "{} eigenvalue lists for {} punctures",
                    ev.len(),
                    mu.len()
                )));
            }
            for (m, e) in mu.iter().zip(ev) {
                if m.len() != e.len() {
                    return Err(Error::InvalidMultiplicities(format!(
                        "{m} needs {} eigenvalues, got {}",
                        m.len(),
                        e.len()
                    )));
                }
                if e.iter().any(Zero::is_zero) {
                    return Err(Error::InvalidMultiplicities(
                        "eigenvalues must be nonzero".into(),
                    ));
                }
                let distinct: BTreeSet<_> = e.iter().collect();
                if distinct.len() != e.len() {
                    return Err(Error::InvalidMultiplicities(
                        "eigenvalues at one puncture must be distinct".into(),
                    ));
                }
            }
        }
        Ok(MultiplicityData { mu, eigenvalues })
    }

    pub fn rank(&self) -> u32 {
        self.mu[0].size()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedHodgeResult {
    pub mu: Vec<Partition>,
    pub mh: QtScalar,
    pub is_polynomial: bool,
}

fn minus_one_minus_q_one_minus_t() -> QtScalar {
    let one = QtScalar::one();
    -(&(&one - &QtScalar::q()) * &(&one - &QtScalar::t()))
}

/// Coefficient of `x^mu` in `-(1-q)(1-t) pLog Omega_{g,k}` at rank `|mu_i|`.
pub fn mixed_hodge(g: u32, mu: &[Partition], truncation_rank: usize) -> Result<MixedHodgeResult> {
    let data = MultiplicityData::new(mu.to_vec(), None)?;
    let n = data.rank() as usize;
    if n > truncation_rank {
        return Err(Error::RankOverflow {
            rank: n,
            truncation: truncation_rank,
        });
    }
    // Higher ranks do not influence the rank-n coefficient.
    let log = p_log(&omega(g, mu.len(), n))?;
    let c = log.coeff(n)?.coefficient_of_monomial(mu);
    let mh = &c * &minus_one_minus_q_one_minus_t();
    let is_polynomial = mh.as_polynomial().is_some();
    Ok(MixedHodgeResult {
        mu: mu.to_vec(),
        mh,
        is_polynomial,
    })
}

/// `q^(dim/2) MH(q, 1/q)`.
pub fn fq_point_count(mh: &QtScalar, dim: u32) -> Result<QtLaurent> {
    if !dim.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("dimension {dim} is odd")));
    }
    if mh.as_polynomial().is_none() {
        return Err(Error::NotPolynomial(mh.to_string()));
    }
    let q = QtScalar::q();
    let qinv = q.recip()?;
    let v = mh.substitute(&q, &qinv)?;
    let v = &v * &QtScalar::qt_pow(dim as i64 / 2, 0);
    v.as_laurent()
        .cloned()
        .ok_or_else(|| Error::NotPolynomial(v.to_string()))
}

/// Products of all sub-multisets of each size: `out[s]` for `s = 0..=n`.
fn submultiset_products(mult: &[u32], ev: &[BigRational]) -> Vec<BTreeSet<BigRational>> {
    let n: u32 = mult.iter().sum();
    let mut out = vec![BTreeSet::new(); n as usize + 1];
    fn rec(
        j: usize,
        size: usize,
        prod: BigRational,
        mult: &[u32],
        ev: &[BigRational],
        out: &mut [BTreeSet<BigRational>],
    ) {
        if j == mult.len() {
            out[size].insert(prod);
            return;
        }
        let mut p = prod;
        for c in 0..=mult[j] as usize {
            if c > 0 {
                p = &p * &ev[j];
            }
            rec(j + 1, size + c, p.clone(), mult, ev, out);
        }
    }
    rec(0, 0, BigRational::one(), mult, ev, &mut out);
    out
}

/// Genericity of semisimple eigenvalue data: the full product is 1 and no
/// proper nonempty choice of equal-size sub-multisets multiplies to 1.
pub fn is_generic(data: &MultiplicityData) -> Result<bool> {
    let ev = data.eigenvalues.as_ref().ok_or(Error::MissingEigenvalues)?;
    let n = data.rank() as usize;
    let tables: Vec<Vec<BTreeSet<BigRational>>> = data
        .mu
        .iter()
        .zip(ev)
        .map(|(m, e)| submultiset_products(m.parts(), e))
        .collect();
    let products_at = |s: usize| -> BTreeSet<BigRational> {
        let mut acc: BTreeSet<BigRational> = [BigRational::one()].into();
        for t in &tables {
            acc = acc
                .iter()
                .flat_map(|a| t[s].iter().map(move |b| a * b))
                .collect();
        }
        acc
    };
    if !products_at(n).contains(&BigRational::one()) {
        return Ok(false);
    }
    Ok((1..n).all(|s| !products_at(s).contains(&BigRational::one())))
}

/// `Omega_k(z; q, t)` as a scalar series: sum over `lambda |- n` of
/// `(-1)^((k+1)n) (q^n(lambda') t^n(lambda))^(k+1) hook(lambda, 0)`.
pub fn omega_twisted(k: u32, truncation_rank: usize) -> SymSeries {
    let coeffs = (0..=truncation_rank as u32)
        .map(|n| {
            let mut acc = QtSum::default();
            for l in enumerate_partitions(n) {
                let e = (k as i64 + 1) * l.conjugate().n_stat() as i64;
                let f = (k as i64 + 1) * l.n_stat() as i64;
                let term = &QtScalar::qt_pow(e, f) * &hook_product(&l, 0);
                acc.add_owned(if (k + 1) * n % 2 == 1 { -term } else { term });
            }
            acc.finish()
        })
        .collect();
    SymSeries::scalar(coeffs)
}

pub fn plog_twisted(k: u32, truncation_rank: usize) -> SymSeries {
    p_log(&omega_twisted(k, truncation_rank)).expect("constant term is 1")
}

/// `chi(Hilb_n(C^2), O(k)) = (-1)^(kn) [z^n] Omega_k`.
pub fn euler_chi_hilb(n: u32, k: u32) -> QtScalar {
    let c = omega_twisted(k, n as usize)
        .scalar_coeff(n as usize)
        .expect("rank within truncation");
    if k * n % 2 == 1 {
        -c
    } else {
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn s(text: &str) -> String {
        text.to_string()
    }

    fn one_minus(x: QtScalar) -> QtScalar {
        &QtScalar::one() - &x
    }

    #[test]
    fn omega_low_ranks() {
        let o = omega(0, 1, 2);
        assert_eq!(o.coeff(0).unwrap(), &SymFunc::one(1));
        let want =
            &QtScalar::one() / &(&one_minus(QtScalar::t()) * &(&QtScalar::q() - &QtScalar::one()));
        assert_eq!(
            o.coeff(1).unwrap(),
            &SymFunc::monomial(p(&[1])).scale(&want)
        );
        let o1 = omega(1, 1, 1);
        let r = &half_pow(1, 0) - &half_pow(0, 1);
        let want1 = &want * &QtScalar::from_laurent(r.pow(2));
        assert_eq!(
            o1.coeff(1).unwrap(),
            &SymFunc::monomial(p(&[1])).scale(&want1)
        );
    }

    #[test]
    fn markov_mixed_hodge() {
        let mu = vec![p(&[1, 1]); 4];
        let r = mixed_hodge(0, &mu, 4).unwrap();
        assert_eq!(r.mh.to_string(), s("q + t + 4"));
        assert!(r.is_polynomial);
        let pc = fq_point_count(&r.mh, 2).unwrap();
        assert_eq!(pc.to_string(), s("q^2 + 4*q + 1"));
    }

    #[test]
    fn rank_one_mixed_hodge() {
        let r = mixed_hodge(0, &[p(&[1])], 4).unwrap();
        assert_eq!(r.mh, QtScalar::one());
        let r = mixed_hodge(1, &[p(&[1])], 4).unwrap();
        let want = (&half_pow(1, 0) - &half_pow(0, 1)).pow(2);
        assert_eq!(r.mh, QtScalar::from_laurent(want.clone()));
        assert!(r.is_polynomial);
        assert_eq!(
            fq_point_count(&r.mh, 2).unwrap().to_string(),
            s("q^2 - 2*q + 1")
        );
        assert_eq!(
            fq_point_count(&QtScalar::one(), 0).unwrap(),
            QtLaurent::one()
        );
    }

    #[test]
    fn rank_overflow_reported() {
        let mu = vec![p(&[1, 1]); 2];
        assert!(matches!(
            mixed_hodge(0, &mu, 1),
            Err(Error::RankOverflow {
                rank: 2,
                truncation: 1
            })
        ));
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn genericity() {
        let ev: Vec<Vec<BigRational>> = [2, 3, 5, 7]
            .iter()
            .map(|&l| vec![rat(l, 1), rat(1, l)])
            .collect();
        let d = MultiplicityData::new(vec![p(&[1, 1]); 4], Some(ev)).unwrap();
        assert!(is_generic(&d).unwrap());
        let d = MultiplicityData::new(
            vec![p(&[1, 1]); 2],
            Some(vec![vec![rat(2, 1), rat(1, 2)], vec![rat(1, 2), rat(2, 1)]]),
        )
        .unwrap();
        assert!(!is_generic(&d).unwrap());
        let d = MultiplicityData::new(
            vec![p(&[1]); 3],
            Some(vec![vec![rat(2, 1)], vec![rat(3, 1)], vec![rat(1, 6)]]),
        )
        .unwrap();
        assert!(is_generic(&d).unwrap());
        let d = MultiplicityData::new(vec![p(&[1]); 2], None).unwrap();
        assert_eq!(is_generic(&d), Err(Error::MissingEigenvalues));
    }

    #[test]
    fn twisted_series_low_terms() {
        let q = QtScalar::q();
        let t = QtScalar::t();
        let one = QtScalar::one();
        for k in 0..=4u32 {
            let o = omega_twisted(k, 2);
            assert_eq!(o.scalar_coeff(0).unwrap(), one);
            let sign = if k % 2 == 0 {
                one.clone()
            } else {
                -one.clone()
            };
            let z1 = &sign / &(&one_minus(t.clone()) * &one_minus(q.clone()));
            assert_eq!(o.scalar_coeff(1).unwrap(), z1);
            let num =
                &(&q.pow(k + 1) * &one_minus(t.pow(2))) - &(&t.pow(k + 1) * &one_minus(q.pow(2)));
            let den = [
                &q - &t,
                one_minus(q.clone()),
                one_minus(q.pow(2)),
                one_minus(t.clone()),
                one_minus(t.pow(2)),
            ]
            .iter()
            .fold(one.clone(), |a, b| &a * b);
            assert_eq!(o.scalar_coeff(2).unwrap(), &num / &den, "k={k}");
            assert_eq!(
                euler_chi_hilb(1, k),
                &one / &(&one_minus(q.clone()) * &one_minus(t.clone()))
            );
        }
        assert_eq!(euler_chi_hilb(0, 3), one);
    }

    #[test]
    fn twisted_plog() {
        let q = QtScalar::q();
        let t = QtScalar::t();
        let one = QtScalar::one();
        let base = &one / &(&one_minus(q.clone()) * &one_minus(t.clone()));
        for k in 0..=5u32 {
            let l = plog_twisted(k, 2);
            let sign = if k % 2 == 0 {
                one.clone()
            } else {
                -one.clone()
            };
            assert_eq!(l.scalar_coeff(1).unwrap(), &sign * &base);
            let mut sum = QtScalar::zero();
            for i in 0..=k as i64 {
                for j in 0..=k as i64 {
                    if i + j <= k as i64 - 2 && (i + j - k as i64) % 2 == 0 {
                        sum = &sum + &QtScalar::qt_pow(i, j);
                    }
                }
            }
            assert_eq!(l.scalar_coeff(2).unwrap(), -(&base * &sum), "k={k}");
        }
    }
}
