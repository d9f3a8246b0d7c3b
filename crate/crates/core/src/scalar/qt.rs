use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{grlex_key, Exp2, QtLaurent};
use super::zpoly::{BPoly, UPoly};
use crate::error::{Error, Result};

/// Integer polynomial in the doubled-exponent monomials, nonnegative exponents.
type IntPoly = BTreeMap<Exp2, BigInt>;

/// `p = scale * q^shift * prim` with `prim` a primitive integer polynomial,
/// not divisible by either variable, positive graded-lex leading coefficient.
struct IntForm {
    scale: BigRational,
    shift: Exp2,
    prim: IntPoly,
}

fn int_form(p: &QtLaurent) -> IntForm {
    debug_assert!(!p.is_zero());
    let shift = p.min_exponents();
    let mut lcm = BigInt::one();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let mut prim: IntPoly = p
        .terms()
        .map(|(e, c)| ((e.0 - shift.0, e.1 - shift.1), (c * &lcm).to_integer()))
        .collect();
    let mut g = BigInt::zero();
    for c in prim.values() {
        g = g.gcd(c);
    }
    let lead_neg = prim
        .iter()
        .max_by_key(|(e, _)| grlex_key(e))
        .is_some_and(|(_, c)| c.is_negative());
    if lead_neg {
        g = -g;
    }
    for c in prim.values_mut() {
        *c /= &g;
    }
    IntForm {
        scale: BigRational::new(g, lcm),
        shift,
        prim,
    }
}

fn int_to_laurent(p: &IntPoly) -> QtLaurent {
    QtLaurent::from_terms(
        p.iter()
            .map(|(e, c)| (*e, BigRational::from_integer(c.clone()))),
    )
}

fn is_unit(p: &IntPoly) -> bool {
    p.len() == 1 && p.contains_key(&(0, 0))
}

fn int_lead(p: &IntPoly) -> &BigInt {
    p.iter()
        .max_by_key(|(e, _)| grlex_key(e))
        .map(|(_, c)| c)
        .expect("nonzero")
}

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            *out.entry((e1.0 + e2.0, e1.1 + e2.1))
                .or_insert_with(BigInt::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Shared packing of two integer polynomials into `Z[X][Y]`.
struct Packing {
    gq: i64,
    gt: i64,
    t_outer: bool,
}

impl Packing {
    fn new(polys: &[&IntPoly]) -> Packing {
        let mut gq = 0i64;
        let mut gt = 0i64;
        let mut mq = 0i64;
        let mut mt = 0i64;
        for p in polys {
            for e in p.keys() {
                gq = gq.gcd(&e.0);
                gt = gt.gcd(&e.1);
                mq = mq.max(e.0);
                mt = mt.max(e.1);
            }
        }
        let gq = if gq == 0 { 1 } else { gq };
        let gt = if gt == 0 { 1 } else { gt };
        Packing {
            gq,
            gt,
            t_outer: mt / gt <= mq / gq,
        }
    }

    fn pack(&self, p: &IntPoly) -> BPoly {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (e, c) in p {
            let (i, j) = (e.0 / self.gq, e.1 / self.gt);
            let (inner, outer) = if self.t_outer { (i, j) } else { (j, i) };
            let (inner, outer) = (inner as usize, outer as usize);
            if rows.len() <= outer {
                rows.resize(outer + 1, Vec::new());
            }
            let row = &mut rows[outer];
            if row.len() <= inner {
                row.resize(inner + 1, BigInt::zero());
            }
            row[inner] = c.clone();
        }
        BPoly::from_vec(rows.into_iter().map(UPoly::from_vec).collect())
    }

    fn unpack(&self, b: &BPoly) -> IntPoly {
        let mut out = IntPoly::new();
        for (outer, row) in b.0.iter().enumerate() {
            for (inner, c) in row.0.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = if self.t_outer {
                    (inner, outer)
                } else {
                    (outer, inner)
                };
                out.insert((i as i64 * self.gq, j as i64 * self.gt), c.clone());
            }
        }
        out
    }
}

fn int_exact_div(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    if is_unit(b) {
        let c = &b[&(0, 0)];
        let mut out = IntPoly::new();
        for (e, x) in a {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.insert(*e, q);
        }
        return Some(out);
    }
    let pk = Packing::new(&[a, b]);
    pk.pack(a).exact_div(&pk.pack(b)).map(|q| pk.unpack(&q))
}

/// Primitive gcd of two primitive integer polynomials with positive leading
/// coefficients; the result is normalized the same way.
fn int_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if is_unit(a) || is_unit(b) {
        return IntPoly::from([((0, 0), BigInt::one())]);
    }
    if a == b {
        return a.clone();
    }
    // Cheap divisibility probes before the pseudo-remainder sequence.
    let deg = |p: &IntPoly| p.keys().map(|e| e.0 + e.1).max().unwrap_or(0);
    let (small, large) = if deg(a) <= deg(b) { (a, b) } else { (b, a) };
    if int_exact_div(large, small).is_some() {
        return small.clone();
    }
    let pk = Packing::new(&[a, b]);
    let g = BPoly::gcd(&pk.pack(a), &pk.pack(b));
    let mut g = pk.unpack(&g);
    let mut content = BigInt::zero();
    for c in g.values() {
        content = content.gcd(c);
    }
    if int_lead(&g).is_negative() {
        content = -content;
    }
    for c in g.values_mut() {
        *c /= &content;
    }
    g
}

/// Exact rational function in `q^(1/2)`, `t^(1/2)`.
///
/// Canonical form: the denominator is a polynomial divisible by neither
/// variable, with graded-lex leading coefficient 1, and coprime to the
/// numerator. Two equal values therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QtScalar {
    num: QtLaurent,
    den: QtLaurent,
}

impl Default for QtScalar {
    fn default() -> Self {
        QtScalar::zero()
    }
}

impl QtScalar {
    pub fn zero() -> Self {
        QtScalar {
            num: QtLaurent::zero(),
            den: QtLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(QtLaurent::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(QtLaurent::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(QtLaurent::constant(c))
    }

    pub fn from_laurent(p: QtLaurent) -> Self {
        QtScalar {
            num: p,
            den: QtLaurent::one(),
        }
    }

    pub fn q() -> Self {
        Self::from_laurent(QtLaurent::q())
    }

    pub fn t() -> Self {
        Self::from_laurent(QtLaurent::t())
    }

    /// `q^a t^b`, integer exponents.
    pub fn qt_pow(a: i64, b: i64) -> Self {
        Self::from_laurent(QtLaurent::qt_pow(a, b))
    }

    /// Builds `num / den` and reduces it to canonical form.
    pub fn new(num: QtLaurent, den: QtLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn numer(&self) -> &QtLaurent {
        &self.num
    }

    pub fn denom(&self) -> &QtLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Full reduction: strips monomials, cancels the gcd, normalizes.
    fn reduce(num: QtLaurent, den: QtLaurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let n = int_form(&num);
        let d = int_form(&den);
        let g = int_gcd(&n.prim, &d.prim);
        let (np, dp) = if is_unit(&g) {
            (n.prim, d.prim)
        } else {
            (
                int_exact_div(&n.prim, &g).expect("gcd divides numerator"),
                int_exact_div(&d.prim, &g).expect("gcd divides denominator"),
            )
        };
        Self::assemble(
            n.scale / d.scale,
            (n.shift.0 - d.shift.0, n.shift.1 - d.shift.1),
            &np,
            &dp,
        )
    }

    /// `scale * q^shift * np / dp` with `np`, `dp` already coprime.
    fn assemble(scale: BigRational, shift: Exp2, np: &IntPoly, dp: &IntPoly) -> Self {
        let lead = BigRational::from_integer(int_lead(dp).clone());
        let den = int_to_laurent(dp).scale(&lead.recip());
        let num = int_to_laurent(np).shift(shift).scale(&(scale / lead));
        QtScalar { num, den }
    }

    /// Canonical form of `num / den` when the pair is already known coprime.
    fn coprime(num: QtLaurent, den: QtLaurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_monomial() {
            let (e, c) = den.leading().map(|(e, c)| (e, c.clone())).expect("nonzero");
            return QtScalar {
                num: num.shift((-e.0, -e.1)).scale(&c.recip()),
                den: QtLaurent::one(),
            };
        }
        let d = int_form(&den);
        let scale = d.scale.recip();
        let lead = BigRational::from_integer(int_lead(&d.prim).clone());
        QtScalar {
            num: num.shift((-d.shift.0, -d.shift.1)).scale(&(scale / &lead)),
            den: int_to_laurent(&d.prim).scale(&lead.recip()),
        }
    }

    fn den_int(&self) -> IntForm {
        int_form(&self.den)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QtScalar) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        // Powers of coprime pairs stay coprime.
        Self::coprime(self.num.pow(n), self.den.pow(n))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QtScalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Adams operation `q -> q^n`, `t -> t^n`; preserves canonical form.
    pub fn adams(&self, n: u32) -> Self {
        QtScalar {
            num: self.num.adams(n),
            den: self.den.adams(n),
        }
    }

    /// Exchanges `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        Self::coprime(self.num.swap_qt(), self.den.swap_qt())
    }

    /// Replaces `q` by `q^-1`.
    pub fn invert_q(&self) -> Self {
        Self::coprime(self.num.invert_q(), self.den.invert_q())
    }

    /// The reduced value as a polynomial with exponents in `(1/2)Z>=0`,
    /// or `None` if it is not one.
    pub fn as_polynomial(&self) -> Option<QtLaurent> {
        (self.den.is_one() && self.num.has_nonnegative_exponents()).then(|| self.num.clone())
    }

    /// The reduced value as a Laurent polynomial, or `None`.
    pub fn as_laurent(&self) -> Option<&QtLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    /// Evaluates at `q = q_val`, `t = t_val`. Half-integral exponents need a
    /// square root of the substituted value, available when it is a monomial
    /// with square coefficient.
    pub fn substitute(&self, q_val: &QtScalar, t_val: &QtScalar) -> Result<QtScalar> {
        let n = eval_laurent(&self.num, q_val, t_val)?;
        let d = eval_laurent(&self.den, q_val, t_val)?;
        if d.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        n.checked_div(&d)
    }

    /// Sum with a shared denominator pass: terms over equal denominators are
    /// added before any gcd is taken.
    pub fn sum<'a, I: IntoIterator<Item = &'a QtScalar>>(it: I) -> QtScalar {
        let mut acc = QtSum::default();
        for x in it {
            acc.add(x);
        }
        acc.finish()
    }
}

/// Accumulates a sum of [`QtScalar`]s bucketed by denominator.
#[derive(Default)]
pub struct QtSum {
    buckets: HashMap<QtLaurent, QtLaurent>,
}

impl QtSum {
    pub fn add(&mut self, x: &QtScalar) {
        if x.is_zero() {
            return;
        }
        match self.buckets.get_mut(&x.den) {
            Some(n) => *n = &*n + &x.num,
            None => {
                self.buckets.insert(x.den.clone(), x.num.clone());
            }
        }
    }

    pub fn add_owned(&mut self, x: QtScalar) {
        if x.is_zero() {
            return;
        }
        match self.buckets.get_mut(&x.den) {
            Some(n) => *n = &*n + &x.num,
            None => {
                self.buckets.insert(x.den, x.num);
            }
        }
    }

    pub fn finish(self) -> QtScalar {
        let mut parts: Vec<QtScalar> = self
            .buckets
            .into_iter()
            .filter(|(_, n)| !n.is_zero())
            .map(|(d, n)| {
                if d.is_one() {
                    QtScalar::from_laurent(n)
                } else {
                    QtScalar::reduce(n, d)
                }
            })
            .collect();
        // Smallest denominators first keeps the common denominator growth low.
        parts.sort_by_key(|p| p.den.len());
        let mut acc = QtScalar::zero();
        for p in &parts {
            acc = &acc + p;
        }
        acc
    }
}

fn sqrt_rational(c: &BigRational) -> Option<BigRational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    (&n * &n == *c.numer() && &d * &d == *c.denom()).then(|| BigRational::new(n, d))
}

/// Square root of a monomial value `c q^a t^b`.
fn sqrt_value(v: &QtScalar) -> Result<QtScalar> {
    let err = || Error::NoSquareRoot(v.to_string());
    if !v.den.is_one() || !v.num.is_monomial() {
        return Err(err());
    }
    let (e, c) = v.num.leading().expect("monomial");
    if e.0 % 2 != 0 || e.1 % 2 != 0 {
        return Err(err());
    }
    let r = sqrt_rational(c).ok_or_else(err)?;
    Ok(QtScalar::from_laurent(QtLaurent::monomial(
        r,
        (e.0 / 2, e.1 / 2),
    )))
}

fn int_power(base: &QtScalar, root: Option<&QtScalar>, e2: i64) -> Result<QtScalar> {
    // `e2` is a doubled exponent.
    let (b, e) = if e2 % 2 == 0 {
        (base, e2 / 2)
    } else {
        (root.expect("root computed for odd exponents"), e2)
    };
    if e >= 0 {
        Ok(b.pow(e as u32))
    } else {
        Ok(b.recip()?.pow((-e) as u32))
    }
}

fn eval_laurent(p: &QtLaurent, q_val: &QtScalar, t_val: &QtScalar) -> Result<QtScalar> {
    let q_odd = p.terms().any(|(e, _)| e.0 % 2 != 0);
    let t_odd = p.terms().any(|(e, _)| e.1 % 2 != 0);
    let q_root = if q_odd {
        Some(sqrt_value(q_val)?)
    } else {
        None
    };
    let t_root = if t_odd {
        Some(sqrt_value(t_val)?)
    } else {
        None
    };
    let mut acc = QtSum::default();
    for (e, c) in p.terms() {
        let qp = int_power(q_val, q_root.as_ref(), e.0)?;
        let tp = int_power(t_val, t_root.as_ref(), e.1)?;
        acc.add_owned((&qp * &tp).scale(c));
    }
    Ok(acc.finish())
}

impl<'a> Add<&'a QtScalar> for &'a QtScalar {
    type Output = QtScalar;
    fn add(self, rhs: &QtScalar) -> QtScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return QtScalar::from_laurent(&self.num + &rhs.num);
            }
            return QtScalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return QtScalar::coprime(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return QtScalar::coprime(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        // Henrici: only the common factor of the denominators can cancel.
        let b = self.den_int();
        let d = rhs.den_int();
        let g = int_gcd(&b.prim, &d.prim);
        if is_unit(&g) {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return QtScalar::coprime(num, &self.den * &rhs.den);
        }
        // Canonical denominators carry no monomial factor, so den = scale * prim.
        let bp = int_exact_div(&b.prim, &g).expect("gcd divides");
        let dp = int_exact_div(&d.prim, &g).expect("gcd divides");
        let a = self.num.scale(&b.scale.recip());
        let c = rhs.num.scale(&d.scale.recip());
        let num = &(&a * &int_to_laurent(&dp)) + &(&c * &int_to_laurent(&bp));
        if num.is_zero() {
            return QtScalar::zero();
        }
        let nf = int_form(&num);
        let h = int_gcd(&nf.prim, &g);
        let (np, gr) = if is_unit(&h) {
            (nf.prim, g)
        } else {
            (
                int_exact_div(&nf.prim, &h).expect("gcd divides"),
                int_exact_div(&g, &h).expect("gcd divides"),
            )
        };
        let den = int_mul(&int_mul(&bp, &dp), &gr);
        QtScalar::assemble(nf.scale, nf.shift, &np, &den)
    }
}

impl<'a> Sub<&'a QtScalar> for &'a QtScalar {
    type Output = QtScalar;
    fn sub(self, rhs: &QtScalar) -> QtScalar {
        self + &(-rhs)
    }
}

impl Neg for &QtScalar {
    type Output = QtScalar;
    fn neg(self) -> QtScalar {
        QtScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a QtScalar> for &'a QtScalar {
    type Output = QtScalar;
    fn mul(self, rhs: &QtScalar) -> QtScalar {
        if self.is_zero() || rhs.is_zero() {
            return QtScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QtScalar::from_laurent(&self.num * &rhs.num);
        }
        // Cross-cancel a with d and c with b.
        let cancel = |n: &QtLaurent, d: &QtLaurent| -> (QtLaurent, QtLaurent) {
            if d.is_one() || n.is_monomial() {
                return (n.clone(), d.clone());
            }
            let nf = int_form(n);
            let df = int_form(d);
            let g = int_gcd(&nf.prim, &df.prim);
            if is_unit(&g) {
                return (n.clone(), d.clone());
            }
            let np = int_to_laurent(&int_exact_div(&nf.prim, &g).expect("gcd divides"))
                .shift(nf.shift)
                .scale(&nf.scale);
            let dp = int_to_laurent(&int_exact_div(&df.prim, &g).expect("gcd divides"))
                .shift(df.shift)
                .scale(&df.scale);
            (np, dp)
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        QtScalar::coprime(&a * &c, &b * &d)
    }
}

impl<'a> Div<&'a QtScalar> for &'a QtScalar {
    type Output = QtScalar;
    /// Panics on division by zero; use [`QtScalar::checked_div`] otherwise.
    fn div(self, rhs: &QtScalar) -> QtScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QtScalar> for QtScalar {
            type Output = QtScalar;
            fn $m(self, rhs: QtScalar) -> QtScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QtScalar {
    type Output = QtScalar;
    fn neg(self) -> QtScalar {
        -&self
    }
}

impl From<i64> for QtScalar {
    fn from(c: i64) -> Self {
        QtScalar::from_int(c)
    }
}

impl From<QtLaurent> for QtScalar {
    fn from(p: QtLaurent) -> Self {
        QtScalar::from_laurent(p)
    }
}

impl fmt::Display for QtScalar {
    /// `num` alone when the denominator is 1, otherwise `(num)/(den)`, with
    /// parentheses dropped around single terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &QtLaurent| {
            if p.len() == 1 {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for QtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QtScalar({self})")
    }
}
