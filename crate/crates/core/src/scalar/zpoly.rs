//! Dense integer polynomials in one and two variables, with primitive
//! pseudo-remainder gcds. These are the cancellation kernels behind
//! [`QtScalar`](super::QtScalar); nothing here is exported from the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in `Z[X]`; index `i` is the coefficient of `X^i`.
/// Always trimmed: the last stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct UPoly(pub(crate) Vec<BigInt>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = UPoly(vec![c]);
        p.trim();
        p
    }

    pub fn from_vec(v: Vec<BigInt>) -> Self {
        let mut p = UPoly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.0
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = other.0.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::from_vec(out)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UPoly::from_vec(out)
    }

    pub fn scale(&self, c: &BigInt) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|x| x * c).collect())
    }

    fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        UPoly(v)
    }

    /// Exact division by an integer; caller guarantees divisibility.
    pub fn div_scalar(&self, c: &BigInt) -> UPoly {
        UPoly(self.0.iter().map(|x| x / c).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_scalar(&c)
        }
    }

    pub fn pseudo_rem(&self, b: &UPoly) -> UPoly {
        let mut r = self.clone();
        let db = b.deg();
        let lb = b.lc().clone();
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let lr = r.lc().clone();
            r = r.scale(&lb).sub(&b.scale(&lr).shift(shift));
        }
        r
    }

    /// `self / b` when the division is exact over `Z`.
    pub fn exact_div(&self, b: &UPoly) -> Option<UPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let mut r = self.0.clone();
        let db = b.deg();
        let mut quo = vec![BigInt::zero(); self.deg() - db + 1];
        let lb = b.lc();
        for i in (0..quo.len()).rev() {
            let top = &r[i + db];
            if top.is_zero() {
                continue;
            }
            let (q, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bc) in b.0.iter().enumerate() {
                if !bc.is_zero() {
                    r[i + j] -= &q * bc;
                }
            }
            quo[i] = q;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UPoly::from_vec(quo))
    }

    /// Gcd in `Z[X]`, normalized to positive leading coefficient.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_zero() {
            return b.primitive().scale(&b.content());
        }
        if b.is_zero() {
            return a.primitive().scale(&a.content());
        }
        let c = a.content().gcd(&b.content());
        let (mut x, mut y) = if a.deg() >= b.deg() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        while !y.is_zero() {
            if y.deg() == 0 {
                return UPoly::constant(c);
            }
            let r = x.pseudo_rem(&y);
            x = y;
            y = r.primitive();
        }
        x.primitive().scale(&c)
    }
}

/// Polynomial in `Z[X][Y]`: index `j` holds the coefficient of `Y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct BPoly(pub(crate) Vec<UPoly>);

impl BPoly {
    pub fn from_vec(v: Vec<UPoly>) -> Self {
        let mut p = BPoly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &UPoly {
        self.0
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    fn sub(&self, other: &BPoly) -> BPoly {
        let n = self.0.len().max(other.0.len());
        let zero = UPoly::zero();
        BPoly::from_vec(
            (0..n)
                .map(|i| {
                    self.0
                        .get(i)
                        .unwrap_or(&zero)
                        .sub(other.0.get(i).unwrap_or(&zero))
                })
                .collect(),
        )
    }

    fn scale(&self, c: &UPoly) -> BPoly {
        BPoly::from_vec(self.0.iter().map(|x| x.mul(c)).collect())
    }

    fn shift_scale(&self, k: usize, c: &UPoly) -> BPoly {
        let mut v = vec![UPoly::zero(); k];
        v.extend(self.0.iter().map(|x| x.mul(c)));
        BPoly::from_vec(v)
    }

    /// Gcd of the `Z[X]` coefficients.
    pub fn content(&self) -> UPoly {
        let mut g = UPoly::zero();
        for c in &self.0 {
            g = UPoly::gcd(&g, c);
            if g.deg() == 0 && g.0.first().is_some_and(|x| x.is_one()) {
                break;
            }
        }
        g
    }

    fn div_content(&self, c: &UPoly) -> BPoly {
        if c.is_one() {
            return self.clone();
        }
        BPoly(
            self.0
                .iter()
                .map(|x| x.exact_div(c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    fn pseudo_rem(&self, b: &BPoly) -> BPoly {
        let mut r = self.clone();
        let db = b.deg();
        let lb = b.lc().clone();
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let lr = r.lc().clone();
            r = r.scale(&lb).sub(&b.shift_scale(shift, &lr));
        }
        r
    }

    /// Primitive part (content over `Z[X]` removed), sign-normalized so the
    /// leading coefficient of the leading coefficient is positive.
    fn primitive(&self) -> BPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let mut p = self.div_content(&c);
        if p.lc().lc().is_negative() {
            p = BPoly(p.0.iter().map(|x| x.neg()).collect());
        }
        p
    }

    pub fn exact_div(&self, b: &BPoly) -> Option<BPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let mut r = self.clone();
        let mut quo = vec![UPoly::zero(); self.deg() - db + 1];
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let q = r.lc().exact_div(b.lc())?;
            r = r.sub(&b.shift_scale(shift, &q));
            quo[shift] = q;
        }
        if !r.is_zero() {
            return None;
        }
        Some(BPoly::from_vec(quo))
    }

    pub fn gcd(a: &BPoly, b: &BPoly) -> BPoly {
        if a.is_zero() {
            return b.primitive().scale(&b.content());
        }
        if b.is_zero() {
            return a.primitive().scale(&a.content());
        }
        let c = UPoly::gcd(&a.content(), &b.content());
        let (mut x, mut y) = if a.deg() >= b.deg() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        while !y.is_zero() {
            if y.deg() == 0 {
                return BPoly(vec![c]);
            }
            let r = x.pseudo_rem(&y);
            x = y;
            y = r.primitive();
        }
        x.primitive().scale(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: &[i64]) -> UPoly {
        UPoly::from_vec(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn univariate_gcd() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = u(&[-2, 1, 1]);
        let b = u(&[-3, 2, 1]);
        assert_eq!(UPoly::gcd(&a, &b), u(&[-1, 1]));
        assert_eq!(UPoly::gcd(&u(&[4, 6]), &u(&[6, 9])), u(&[2, 3]));
    }

    #[test]
    fn bivariate_gcd_and_division() {
        // (y - x)(y + 1) and (y - x)(y - 2x)
        let ymx = BPoly::from_vec(vec![u(&[0, -1]), u(&[1])]);
        let yp1 = BPoly::from_vec(vec![u(&[1]), u(&[1])]);
        let ym2x = BPoly::from_vec(vec![u(&[0, -2]), u(&[1])]);
        let a = BPoly::from_vec(mul(&ymx, &yp1));
        let b = BPoly::from_vec(mul(&ymx, &ym2x));
        let g = BPoly::gcd(&a, &b);
        assert_eq!(g, ymx);
        assert_eq!(a.exact_div(&g).unwrap(), yp1);
        assert!(a.exact_div(&ym2x).is_none());
    }

    fn mul(a: &BPoly, b: &BPoly) -> Vec<UPoly> {
        let mut out = vec![UPoly::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out
    }
}
