//! Symmetric functions in several alphabets with `QtScalar` coefficients.
//!
//! Values are stored in the monomial basis `m_{mu_1}(x_1) ... m_{mu_k}(x_k)`.
//! Products and Adams operations go through the power-sum basis.

mod basis;
mod macdonald;
mod series;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{QtScalar, QtSum};

pub use macdonald::{modified_macdonald, modified_macdonald_in};
pub use series::{moebius, p_exp, p_log, SymSeries};

/// One partition per alphabet.
pub type Key = Vec<Partition>;

/// A symmetric function in `k` alphabets, monomial basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    k: usize,
    terms: BTreeMap<Key, QtScalar>,
}

/// The same kind of object expanded in power sums.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSum {
    k: usize,
    terms: BTreeMap<Key, QtScalar>,
}

fn insert_term(terms: &mut BTreeMap<Key, QtScalar>, key: Key, c: QtScalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(v) => {
            let s = &*v + &c;
            if s.is_zero() {
                terms.remove(&key);
            } else {
                *v = s;
            }
        }
        None => {
            terms.insert(key, c);
        }
    }
}

fn collect(acc: HashMap<Key, QtSum>) -> BTreeMap<Key, QtScalar> {
    acc.into_iter()
        .map(|(key, s)| (key, s.finish()))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Applies a per-alphabet linear map on basis elements and expands the
/// tensor product of the images.
fn transform<F>(k: usize, terms: &BTreeMap<Key, QtScalar>, image: F) -> BTreeMap<Key, QtScalar>
where
    F: Fn(&Partition) -> Vec<(Partition, BigRational)>,
{
    let mut acc: HashMap<Key, QtSum> = HashMap::new();
    for (key, c) in terms {
        let images: Vec<_> = key.iter().map(&image).collect();
        let mut partial: Vec<(Key, BigRational)> =
            vec![(Vec::with_capacity(k), BigRational::from_integer(1.into()))];
        for img in &images {
            let mut next = Vec::with_capacity(partial.len() * img.len());
            for (pk, pc) in &partial {
                for (p, r) in img {
                    let mut nk = pk.clone();
                    nk.push(p.clone());
                    next.push((nk, pc * r));
                }
            }
            partial = next;
        }
        for (nk, r) in partial {
            acc.entry(nk).or_default().add_owned(c.scale(&r));
        }
    }
    collect(acc)
}

fn m_image(mu: &Partition) -> Vec<(Partition, BigRational)> {
    let t = basis::tables(mu.size());
    t.m_to_p[t.index[mu]]
        .iter()
        .map(|(r, c)| (t.parts[*r].clone(), c.clone()))
        .collect()
}

fn p_image(rho: &Partition) -> Vec<(Partition, BigRational)> {
    let t = basis::tables(rho.size());
    t.p_to_m[t.index[rho]]
        .iter()
        .map(|(m, c)| (t.parts[*m].clone(), BigRational::from_integer(c.clone())))
        .collect()
}

macro_rules! common_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(k: usize) -> Self {
                $ty {
                    k,
                    terms: BTreeMap::new(),
                }
            }

            /// The constant `1` (empty partition in every alphabet).
            pub fn one(k: usize) -> Self {
                Self::constant(k, QtScalar::one())
            }

            pub fn constant(k: usize, c: QtScalar) -> Self {
                Self::term(vec![Partition::empty(); k], c)
            }

            pub fn term(key: Key, c: QtScalar) -> Self {
                let mut f = Self::zero(key.len());
                insert_term(&mut f.terms, key, c);
                f
            }

            pub fn from_terms<I: IntoIterator<Item = (Key, QtScalar)>>(k: usize, it: I) -> Self {
                let mut f = Self::zero(k);
                for (key, c) in it {
                    assert_eq!(key.len(), k, "key length must equal the alphabet count");
                    insert_term(&mut f.terms, key, c);
                }
                f
            }

            pub fn alphabet_count(&self) -> usize {
                self.k
            }

            pub fn terms(&self) -> impl Iterator<Item = (&Key, &QtScalar)> {
                self.terms.iter()
            }

            pub fn len(&self) -> usize {
                self.terms.len()
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn is_empty(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn coeff(&self, key: &[Partition]) -> QtScalar {
                self.terms.get(key).cloned().unwrap_or_else(QtScalar::zero)
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                check_k(self.k, other.k)?;
                let mut out = self.clone();
                for (key, c) in &other.terms {
                    insert_term(&mut out.terms, key.clone(), c.clone());
                }
                Ok(out)
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.add(&other.neg())
            }

            pub fn neg(&self) -> Self {
                self.map_coeffs(|c| -c)
            }

            pub fn scale(&self, s: &QtScalar) -> Self {
                if s.is_zero() {
                    return Self::zero(self.k);
                }
                self.map_coeffs(|c| c * s)
            }

            /// Applies `f` to every coefficient, dropping zeros.
            pub fn map_coeffs<F: Fn(&QtScalar) -> QtScalar>(&self, f: F) -> Self {
                $ty {
                    k: self.k,
                    terms: self
                        .terms
                        .iter()
                        .map(|(key, c)| (key.clone(), f(c)))
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                }
            }

            /// Juxtaposes alphabets: `self` in the first, `other` in the rest.
            pub fn tensor(&self, other: &Self) -> Self {
                let mut acc: HashMap<Key, QtSum> = HashMap::new();
                for (ka, ca) in &self.terms {
                    for (kb, cb) in &other.terms {
                        let mut key = ka.clone();
                        key.extend(kb.iter().cloned());
                        acc.entry(key).or_default().add_owned(ca * cb);
                    }
                }
                $ty {
                    k: self.k + other.k,
                    terms: collect(acc),
                }
            }

            /// Terms whose total size (summed over alphabets) is `n`.
            pub fn homogeneous_part(&self, n: u32) -> Self {
                $ty {
                    k: self.k,
                    terms: self
                        .terms
                        .iter()
                        .filter(|(key, _)| key.iter().map(Partition::size).sum::<u32>() == n)
                        .map(|(a, b)| (a.clone(), b.clone()))
                        .collect(),
                }
            }
        }
    };
}

common_impl!(SymFunc);
common_impl!(PowerSum);

fn check_k(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(a, b))
    }
}

impl SymFunc {
    /// `m_mu` in a single alphabet.
    pub fn monomial(mu: Partition) -> Self {
        Self::term(vec![mu], QtScalar::one())
    }

    pub fn to_power_sums(&self) -> PowerSum {
        PowerSum {
            k: self.k,
            terms: transform(self.k, &self.terms, m_image),
        }
    }

    /// Reads the coefficient of the monomial `x^mu`; for partitions this is
    /// the stored coefficient of `m_mu`.
    pub fn coefficient_of_monomial(&self, mu: &[Partition]) -> QtScalar {
        self.coeff(mu)
    }

    pub fn adams(&self, n: u32) -> SymFunc {
        self.to_power_sums().adams(n).to_monomials()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(key, c)| {
                    json!({
                        "index": key.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

impl PowerSum {
    pub fn power(rho: Partition) -> Self {
        Self::term(vec![rho], QtScalar::one())
    }

    pub fn to_monomials(&self) -> SymFunc {
        SymFunc {
            k: self.k,
            terms: transform(self.k, &self.terms, p_image),
        }
    }

    pub fn mul(&self, other: &PowerSum) -> Result<PowerSum> {
        check_k(self.k, other.k)?;
        let mut acc: HashMap<Key, QtSum> = HashMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key: Key = ka.iter().zip(kb).map(|(a, b)| a.union(b)).collect();
                acc.entry(key).or_default().add_owned(ca * cb);
            }
        }
        Ok(PowerSum {
            k: self.k,
            terms: collect(acc),
        })
    }

    /// `p_m -> p_{mn}` in every alphabet, `q -> q^n`, `t -> t^n`.
    pub fn adams(&self, n: u32) -> PowerSum {
        PowerSum {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(key, c)| (key.iter().map(|p| p.scaled(n)).collect(), c.adams(n)))
                .collect(),
        }
    }
}

/// Product in the ring of symmetric functions, alphabet by alphabet.
pub fn sym_mul(a: &SymFunc, b: &SymFunc) -> Result<SymFunc> {
    check_k(a.k, b.k)?;
    Ok(a.to_power_sums().mul(&b.to_power_sums())?.to_monomials())
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<Key, QtScalar>,
    sym: &str,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    // Larger partitions first.
    for (i, (key, c)) in terms.iter().rev().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        let idx: Vec<String> = key
            .iter()
            .map(|p| {
                p.parts()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "({c}) · {sym}[{}]", idx.join("|"))?;
    }
    Ok(())
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, "m")
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, "p")
    }
}

impl fmt::Debug for PowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
