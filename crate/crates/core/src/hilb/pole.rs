//! Rational functions `h / Delta_x^p`.

use std::fmt;

use num_rational::BigRational;

use super::{vandermonde, variable_names};
use crate::poly::Poly;

/// `numerator / Delta_x^pole`, kept with `Delta_x` not dividing the
/// numerator whenever `pole > 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPole {
    n: usize,
    num: Poly,
    pole: u32,
}

/// Divides by `Delta_x` if it divides.
pub(crate) fn div_vandermonde(p: &Poly, n: usize) -> Option<Poly> {
    let mut q = p.clone();
    for i in 0..n {
        for j in i + 1..n {
            q = q.div_linear(i, j)?;
        }
    }
    Some(q)
}

impl LaurentPole {
    pub fn new(n: usize, num: Poly, pole: u32) -> Self {
        assert_eq!(num.nvars(), 2 * n, "numerator must live in 2n variables");
        let mut num = num;
        let mut pole = pole;
        if num.is_zero() {
            pole = 0;
        }
        while pole > 0 {
            match div_vandermonde(&num, n) {
                Some(q) => {
                    num = q;
                    pole -= 1;
                }
                None => break,
            }
        }
        LaurentPole { n, num, pole }
    }

    pub fn polynomial(n: usize, p: Poly) -> Self {
        Self::new(n, p, 0)
    }

    pub fn zero(n: usize) -> Self {
        Self::polynomial(n, Poly::zero(2 * n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn pole_order(&self) -> u32 {
        self.pole
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator over `Delta_x^p`, when `p` is at least the pole order.
    pub fn numerator_over(&self, p: u32) -> Option<Poly> {
        if p < self.pole {
            return None;
        }
        Some(&self.num * &vandermonde(self.n).pow(p - self.pole))
    }

    /// Bidegree, when homogeneous.
    pub fn bidegree(&self) -> Option<(i64, u32)> {
        let n = self.n;
        let dx = self.num.degree_in(|i| i < n)?;
        let dy = self.num.degree_in(|i| i >= n)?;
        Some((dx as i64 - (self.pole * super::pairs(n)) as i64, dy))
    }

    fn common(&self, other: &LaurentPole) -> (Poly, Poly, u32) {
        assert_eq!(self.n, other.n);
        let p = self.pole.max(other.pole);
        (
            self.numerator_over(p).unwrap(),
            other.numerator_over(p).unwrap(),
            p,
        )
    }

    pub fn add(&self, other: &LaurentPole) -> LaurentPole {
        let (a, b, p) = self.common(other);
        LaurentPole::new(self.n, &a + &b, p)
    }

    pub fn sub(&self, other: &LaurentPole) -> LaurentPole {
        let (a, b, p) = self.common(other);
        LaurentPole::new(self.n, &a - &b, p)
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPole {
        LaurentPole::new(self.n, self.num.scale(c), self.pole)
    }

    pub fn mul_poly(&self, p: &Poly) -> LaurentPole {
        LaurentPole::new(self.n, &self.num * p, self.pole)
    }
}

impl fmt::Display for LaurentPole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.render(&variable_names(self.n));
        match self.pole {
            0 => write!(f, "{num}"),
            1 => write!(f, "({num})/Delta"),
            p => write!(f, "({num})/Delta^{p}"),
        }
    }
}

impl fmt::Debug for LaurentPole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
