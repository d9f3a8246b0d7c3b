use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair of a monomial `q^(a/2) t^(b/2)`, stored doubled so that
/// half-integral exponents stay integral.
pub type Exp2 = (i64, i64);

/// Graded lexicographic key: total degree first, then the `q` degree.
pub(crate) fn grlex_key(e: &Exp2) -> (i64, i64) {
    (e.0 + e.1, e.0)
}

/// Laurent polynomial in `q^(1/2)` and `t^(1/2)` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QtLaurent {
    terms: BTreeMap<Exp2, BigRational>,
}

impl QtLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, (0, 0))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c * q^(e.0/2) * t^(e.1/2)`.
    pub fn monomial(c: BigRational, e: Exp2) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QtLaurent { terms }
    }

    /// `q^a t^b` for integer exponents.
    pub fn qt_pow(a: i64, b: i64) -> Self {
        Self::monomial(BigRational::one(), (2 * a, 2 * b))
    }

    pub fn q() -> Self {
        Self::qt_pow(1, 0)
    }

    pub fn t() -> Self {
        Self::qt_pow(0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp2, BigRational)>>(it: I) -> Self {
        let mut p = QtLaurent::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp2, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp2, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Coefficient at doubled exponents `e`.
    pub fn coeff(&self, e: Exp2) -> BigRational {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff((0, 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == (0, 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading(&self) -> Option<(Exp2, &BigRational)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| grlex_key(e))
            .map(|(e, c)| (*e, c))
    }

    /// Componentwise minimum of the exponents, `(0,0)` for zero.
    pub fn min_exponents(&self) -> Exp2 {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return (0, 0);
        };
        it.fold(*first, |m, e| (m.0.min(e.0), m.1.min(e.1)))
    }

    /// Componentwise maximum of the exponents, `(0,0)` for zero.
    pub fn max_exponents(&self) -> Exp2 {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return (0, 0);
        };
        it.fold(*first, |m, e| (m.0.max(e.0), m.1.max(e.1)))
    }

    /// Multiplies by the monomial `q^(s.0/2) t^(s.1/2)`.
    pub fn shift(&self, s: Exp2) -> Self {
        if s == (0, 0) {
            return self.clone();
        }
        QtLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 + s.0, e.1 + s.1), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QtLaurent::zero();
        }
        QtLaurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QtLaurent::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `q -> q^n`, `t -> t^n`.
    pub fn adams(&self, n: u32) -> Self {
        let n = n as i64;
        QtLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 * n, e.1 * n), c.clone()))
                .collect(),
        }
    }

    /// Exchanges `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        QtLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.1, e.0), c.clone()))
                .collect(),
        }
    }

    /// Replaces `q` by `q^-1`.
    pub fn invert_q(&self) -> Self {
        QtLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((-e.0, e.1), c.clone()))
                .collect(),
        }
    }

    /// True when every exponent is an integer.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.0 % 2 == 0 && e.1 % 2 == 0)
    }

    /// True when no exponent is negative.
    pub fn has_nonnegative_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.0 >= 0 && e.1 >= 0)
    }

    /// True when all coefficients are integers.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Value at `q = t = 1`.
    pub fn value_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Coefficients in graded lexicographic order, highest first.
    pub fn sorted_terms(&self) -> Vec<(Exp2, BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|a| std::cmp::Reverse(grlex_key(&a.0)));
        v
    }

    /// Laurent polynomial in `q` alone, as `(exponent, coefficient)` pairs
    /// with integer exponents, ascending. `None` if `t` occurs or an exponent
    /// is half-integral.
    pub fn as_q_series(&self) -> Option<Vec<(i64, BigRational)>> {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            if e.1 != 0 || e.0 % 2 != 0 {
                return None;
            }
            out.push((e.0 / 2, c.clone()));
        }
        out.sort_by_key(|x| x.0);
        Some(out)
    }
}

fn fmt_exp(var: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        2 => Some(var.to_string()),
        e if e % 2 == 0 && e > 0 => Some(format!("{var}^{}", e / 2)),
        e if e % 2 == 0 => Some(format!("{var}^({})", e / 2)),
        e => Some(format!("{var}^({e}/2)")),
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for QtLaurent {
    /// Terms `c*q^a*t^b` in descending graded lexicographic order, e.g.
    /// `q + t + 4` or `q - 2*q^(1/2)*t^(1/2) + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = [fmt_exp("q", e.0), fmt_exp("t", e.1)]
                .into_iter()
                .flatten()
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QtLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QtLaurent({self})")
    }
}

impl<'a> Add<&'a QtLaurent> for &'a QtLaurent {
    type Output = QtLaurent;
    fn add(self, rhs: &QtLaurent) -> QtLaurent {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a QtLaurent> for &'a QtLaurent {
    type Output = QtLaurent;
    fn sub(self, rhs: &QtLaurent) -> QtLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a QtLaurent> for &'a QtLaurent {
    type Output = QtLaurent;
    fn mul(self, rhs: &QtLaurent) -> QtLaurent {
        if self.is_zero() || rhs.is_zero() {
            return QtLaurent::zero();
        }
        let mut acc: BTreeMap<Exp2, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = (e1.0 + e2.0, e1.1 + e2.1);
                let v = c1 * c2;
                *acc.entry(e).or_insert_with(BigRational::zero) += v;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        QtLaurent { terms: acc }
    }
}

impl Neg for &QtLaurent {
    type Output = QtLaurent;
    fn neg(self) -> QtLaurent {
        QtLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl From<i64> for QtLaurent {
    fn from(c: i64) -> Self {
        QtLaurent::from_int(c)
    }
}

impl From<BigInt> for QtLaurent {
    fn from(c: BigInt) -> Self {
        QtLaurent::constant(BigRational::from_integer(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_graded_lex_order() {
        let p = &(&QtLaurent::q() + &QtLaurent::t()) + &QtLaurent::from_int(4);
        assert_eq!(p.to_string(), "q + t + 4");
        let h = QtLaurent::monomial(BigRational::from_integer((-3).into()), (1, -2));
        assert_eq!(h.to_string(), "-3*q^(1/2)*t^(-1)");
        let r = QtLaurent::monomial(BigRational::new(3.into(), 2.into()), (4, 2));
        assert_eq!(r.to_string(), "3/2*q^2*t");
    }

    #[test]
    fn cancellation_drops_terms() {
        let q = QtLaurent::q();
        assert!((&q - &q).is_zero());
        let sq = &(&QtLaurent::q() - &QtLaurent::t()) * &(&QtLaurent::q() + &QtLaurent::t());
        assert_eq!(sq.len(), 2);
    }
}
