//! Polynomial multiforms on `C^{2n}` with coordinates `x_1..x_n, y_1..y_n`:
//! sections of the `g`-fold tensor power of the de Rham complex, Hamiltonian
//! vector fields, and the operators `psi_f`.
//!
//! Conventions: `H_f = sum_i f_{x_i} d_{y_i} - f_{y_i} d_{x_i}`, so that
//! `H_x = d_y` and `i_{H_f} (sum_i dx_i ^ dy_i) = -df`. The tensor factors do
//! not wedge with each other, and operators on factor `i` carry no Koszul sign
//! from the factors before it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};

/// One wedge monomial per tensor factor, as a bitmask over the basis
/// one-forms `dx_1..dx_n, dy_1..dy_n` (bit `j` is the `j`-th coordinate).
pub type FormKey = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiForm {
    n: usize,
    g: usize,
    terms: BTreeMap<FormKey, Poly>,
}

fn below(mask: u32, j: usize) -> u32 {
    (mask & ((1u32 << j) - 1)).count_ones()
}

/// `dz_j ^ e`: the new mask and sign, or `None` when `dz_j` already occurs.
fn wedge_front(mask: u32, j: usize) -> Option<(u32, bool)> {
    if mask & (1 << j) != 0 {
        return None;
    }
    Some((mask | (1 << j), below(mask, j) % 2 == 1))
}

/// `i_{d/dz_j} e`: the new mask and sign, or `None` when `dz_j` is absent.
fn contract(mask: u32, j: usize) -> Option<(u32, bool)> {
    if mask & (1 << j) == 0 {
        return None;
    }
    Some((mask & !(1 << j), below(mask, j) % 2 == 1))
}

impl MultiForm {
    pub fn zero(n: usize, g: usize) -> Self {
        assert!(n >= 1 && g >= 1 && 2 * n <= 32, "unsupported shape");
        MultiForm {
            n,
            g,
            terms: BTreeMap::new(),
        }
    }

    /// The function `c` times the unit multiform.
    pub fn function(n: usize, g: usize, c: Poly) -> Self {
        let mut w = Self::zero(n, g);
        w.add_term(vec![0; g], c);
        w
    }

    /// `c` times the wedge monomials given per factor as coordinate lists
    /// (`0..n` for `dx`, `n..2n` for `dy`), in the order written.
    pub fn monomial(n: usize, g: usize, c: Poly, factors: &[Vec<usize>]) -> Result<Self> {
        if factors.len() != g {
            return Err(Error::InvalidArgument(format!(
                "{} factors given for g = {g}",
                factors.len()
            )));
        }
        let mut key = Vec::with_capacity(g);
        let mut neg = false;
        for f in factors {
            let mut mask = 0u32;
            for &j in f.iter().rev() {
                if j >= 2 * n {
                    return Err(Error::InvalidArgument(format!(
                        "coordinate {j} out of range"
                    )));
                }
                match wedge_front(mask, j) {
                    Some((m, s)) => {
                        mask = m;
                        neg ^= s;
                    }
                    None => return Ok(Self::zero(n, g)),
                }
            }
            key.push(mask);
        }
        let mut w = Self::zero(n, g);
        w.add_term(key, if neg { -&c } else { c });
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormKey, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: FormKey, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn add_signed(&mut self, key: FormKey, c: &Poly, neg: bool) {
        self.add_term(key, if neg { -c } else { c.clone() });
    }

    pub fn add(&self, other: &MultiForm) -> MultiForm {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiForm) -> MultiForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiForm {
        self.mul_function(&Poly::from_int(2 * self.n, -1))
    }

    pub fn mul_function(&self, f: &Poly) -> MultiForm {
        let mut out = Self::zero(self.n, self.g);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * f);
        }
        out
    }

    fn check_factor(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.g {
            return Err(Error::FactorOutOfRange {
                index: i,
                genus: self.g,
            });
        }
        Ok(())
    }

    /// `alpha ^` on factor `i` (1-based) for the one-form with components `alpha`.
    pub fn wedge_one_form(&self, i: usize, alpha: &[Poly]) -> Result<MultiForm> {
        self.check_factor(i)?;
        let mut out = Self::zero(self.n, self.g);
        for (key, c) in &self.terms {
            for (j, a) in alpha.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if let Some((m, neg)) = wedge_front(key[i - 1], j) {
                    let mut k = key.clone();
                    k[i - 1] = m;
                    out.add_signed(k, &(c * a), neg);
                }
            }
        }
        Ok(out)
    }

    /// Contraction with `X` on factor `i` (1-based).
    pub fn interior(&self, i: usize, x: &VectorField) -> Result<MultiForm> {
        self.check_factor(i)?;
        let mut out = Self::zero(self.n, self.g);
        for (key, c) in &self.terms {
            for (j, a) in x.components.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if let Some((m, neg)) = contract(key[i - 1], j) {
                    let mut k = key.clone();
                    k[i - 1] = m;
                    out.add_signed(k, &(c * a), neg);
                }
            }
        }
        Ok(out)
    }

    /// de Rham differential landing in factor `i`: `sum_j d_j(c) dz_j ^`.
    pub fn d_into(&self, i: usize) -> Result<MultiForm> {
        self.check_factor(i)?;
        let mut out = Self::zero(self.n, self.g);
        for (key, c) in &self.terms {
            for j in 0..2 * self.n {
                let dc = c.derivative(j, 1);
                if dc.is_zero() {
                    continue;
                }
                if let Some((m, neg)) = wedge_front(key[i - 1], j) {
                    let mut k = key.clone();
                    k[i - 1] = m;
                    out.add_signed(k, &dc, neg);
                }
            }
        }
        Ok(out)
    }

    /// Lie derivative, acting as a derivation on the coefficient and on
    /// every factor: `L_X dz_j = d(X_j)`.
    pub fn lie(&self, x: &VectorField) -> MultiForm {
        let nv = 2 * self.n;
        let mut out = Self::zero(self.n, self.g);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), x.apply(c));
            for (f, &mask) in key.iter().enumerate() {
                for j in 0..nv {
                    let Some((m, s1)) = contract(mask, j) else {
                        continue;
                    };
                    // Replace dz_j by d(X_j) = sum_l d_l X_j dz_l, via dz_l ^ i_j.
                    for l in 0..nv {
                        let dxj = x.components[j].derivative(l, 1);
                        if dxj.is_zero() {
                            continue;
                        }
                        if let Some((m2, s2)) = wedge_front(m, l) {
                            let mut k = key.clone();
                            k[f] = m2;
                            out.add_signed(k, &(c * &dxj), s1 ^ s2);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = coordinate_names(self.n);
        let vars: Vec<String> = names.iter().map(|s| s[1..].to_string()).collect();
        self.terms
            .iter()
            .map(|(key, c)| {
                let factors: Vec<String> = key
                    .iter()
                    .map(|&mask| {
                        if mask == 0 {
                            "1".to_string()
                        } else {
                            (0..2 * self.n)
                                .filter(|j| mask & (1 << j) != 0)
                                .map(|j| names[j].clone())
                                .collect::<Vec<_>>()
                                .join("^")
                        }
                    })
                    .collect();
                format!("({}) {}", c.render(&vars), factors.join(" (x) "))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self) -> Value {
        let vars: Vec<String> = coordinate_names(self.n)
            .iter()
            .map(|s| s[1..].to_string())
            .collect();
        json!({
            "n": self.n,
            "g": self.g,
            "terms": self.terms.iter().map(|(key, c)| json!({
                "factors": key.iter().map(|&mask| (0..2 * self.n).filter(|j| mask & (1 << j) != 0).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "coeff": c.render(&vars),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for MultiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `dx1..dxn, dy1..dyn`.
pub fn coordinate_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("dx{i}"))
        .chain((1..=n).map(|i| format!("dy{i}")))
        .collect()
}

/// Polynomial vector field `sum_j X_j d/dz_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub n: usize,
    pub components: Vec<Poly>,
}

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField {
            n,
            components: vec![Poly::zero(2 * n); 2 * n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// `X(c)`.
    pub fn apply(&self, c: &Poly) -> Poly {
        let mut out = Poly::zero(2 * self.n);
        for (j, a) in self.components.iter().enumerate() {
            if !a.is_zero() {
                out = &out + &(a * &c.derivative(j, 1));
            }
        }
        out
    }

    pub fn scale_by(&self, f: &Poly) -> VectorField {
        VectorField {
            n: self.n,
            components: self.components.iter().map(|a| a * f).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// `H_f = sum_i f_{x_i} d/dy_i - f_{y_i} d/dx_i`.
pub fn hamiltonian_field(f: &Poly, n: usize) -> VectorField {
    let mut v = VectorField::zero(n);
    for i in 0..n {
        v.components[n + i] = f.derivative(i, 1);
        v.components[i] = -&f.derivative(n + i, 1);
    }
    v
}

/// Components of `df`.
pub fn differential(f: &Poly, n: usize) -> Vec<Poly> {
    (0..2 * n).map(|j| f.derivative(j, 1)).collect()
}

/// `pt`, `1`, or `sigma_i` for `1 <= i <= 2g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiLabel {
    Pt,
    One,
    Sigma(usize),
}

impl PsiLabel {
    fn is_odd(self) -> bool {
        matches!(self, PsiLabel::Sigma(_))
    }

    /// Multiplication-type operators (`pt`, `sigma_i` with `i <= g`) are
    /// placed to the left in normal-ordered products.
    fn is_multiplication(self, g: usize) -> bool {
        match self {
            PsiLabel::Pt => true,
            PsiLabel::One => false,
            PsiLabel::Sigma(i) => i <= g,
        }
    }
}

impl fmt::Display for PsiLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiLabel::Pt => f.write_str("pt"),
            PsiLabel::One => f.write_str("1"),
            PsiLabel::Sigma(i) => write!(f, "sigma{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiOperator {
    pub f: Poly,
    pub label: PsiLabel,
}

impl PsiOperator {
    pub fn new(f: Poly, label: PsiLabel) -> Self {
        PsiOperator { f, label }
    }
}

/// `psi_f(pt)`: multiplication by `f`; `psi_f(1)`: Lie derivative along
/// `H_f`; `psi_f(sigma_i)`: `df ^` on factor `i`; `psi_f(sigma_{i+g})`:
/// contraction with `H_f` on factor `i`.
pub fn psi_apply(op: &PsiOperator, w: &MultiForm) -> Result<MultiForm> {
    let (n, g) = (w.n(), w.genus());
    match op.label {
        PsiLabel::Pt => Ok(w.mul_function(&op.f)),
        PsiLabel::One => Ok(w.lie(&hamiltonian_field(&op.f, n))),
        PsiLabel::Sigma(i) if i >= 1 && i <= g => w.wedge_one_form(i, &differential(&op.f, n)),
        PsiLabel::Sigma(i) if i > g && i <= 2 * g => {
            w.interior(i - g, &hamiltonian_field(&op.f, n))
        }
        PsiLabel::Sigma(i) => Err(Error::FactorOutOfRange {
            index: i,
            genus: 2 * g,
        }),
    }
}

/// Normal-ordered product `:A B:` applied to `w`: multiplication-type
/// operators act last (stand to the left), with the Koszul sign when two odd
/// operators are exchanged.
pub fn normal_ordered(a: &PsiOperator, b: &PsiOperator, w: &MultiForm) -> Result<MultiForm> {
    let g = w.genus();
    if !a.label.is_multiplication(g) && b.label.is_multiplication(g) {
        let r = psi_apply(b, &psi_apply(a, w)?)?;
        Ok(if a.label.is_odd() && b.label.is_odd() {
            r.neg()
        } else {
            r
        })
    } else {
        psi_apply(a, &psi_apply(b, w)?)
    }
}

/// Per-form outcome of the Kunneth identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethCase {
    pub form: String,
    pub passed: bool,
    /// `lhs - rhs` when nonzero.
    pub difference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub f: String,
    pub g_poly: String,
    pub cases: Vec<KunnethCase>,
}

impl KunnethReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }
}

/// Checks
/// `psi_{fg}(1) = :psi_f(1) psi_g(pt): + :psi_f(pt) psi_g(1):
///     + sum_{i=1}^{2g} :psi_f(sigma_i) psi_g(sigma_i^*):`
/// on each form, with `sigma_i^* = sigma_{i+g}` and `sigma_{i+g}^* = -sigma_i`.
pub fn kunneth_identity_check(
    f: &Poly,
    g_poly: &Poly,
    forms: &[MultiForm],
) -> Result<KunnethReport> {
    let mut cases = Vec::new();
    let mut names = Vec::new();
    for w in forms {
        let (n, g) = (w.n(), w.genus());
        if names.is_empty() {
            names = (1..=n)
                .map(|i| format!("x{i}"))
                .chain((1..=n).map(|i| format!("y{i}")))
                .collect();
        }
        let fg = f * g_poly;
        let op = |p: &Poly, l| PsiOperator::new(p.clone(), l);
        let lhs = psi_apply(&op(&fg, PsiLabel::One), w)?;
        let mut rhs = normal_ordered(&op(f, PsiLabel::One), &op(g_poly, PsiLabel::Pt), w)?;
        rhs = rhs.add(&normal_ordered(
            &op(f, PsiLabel::Pt),
            &op(g_poly, PsiLabel::One),
            w,
        )?);
        for i in 1..=g {
            let t = normal_ordered(
                &op(f, PsiLabel::Sigma(i)),
                &op(g_poly, PsiLabel::Sigma(i + g)),
                w,
            )?;
            rhs = rhs.add(&t);
            let t = normal_ordered(
                &op(f, PsiLabel::Sigma(i + g)),
                &op(g_poly, PsiLabel::Sigma(i)),
                w,
            )?;
            rhs = rhs.sub(&t);
        }
        let diff = lhs.sub(&rhs);
        cases.push(KunnethCase {
            form: w.render(),
            passed: diff.is_zero(),
            difference: (!diff.is_zero()).then(|| diff.render()),
        });
    }
    Ok(KunnethReport {
        f: f.render(&names),
        g_poly: g_poly.render(&names),
        cases,
    })
}

fn random_poly<R: Rng>(nvars: usize, degree: u32, terms: usize, rng: &mut R) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let d = rng.gen_range(0..=degree);
        let mut m = Mono::from_elem(0, nvars);
        for _ in 0..d {
            m[rng.gen_range(0..nvars)] += 1;
        }
        let c: i64 = rng.gen_range(-3..=3);
        p.add_term(m, BigRational::from_integer(c.into()));
    }
    p
}

/// Random element of `R^+` of degree `<= degree` with small integer coefficients.
pub fn random_invariant<R: Rng>(n: usize, degree: u32, rng: &mut R) -> Poly {
    let p = random_poly(2 * n, degree, 3, rng);
    crate::hilb::symmetrize(&p, n, false)
}

/// Random multiform with polynomial coefficients of degree `<= degree`.
pub fn random_multiform<R: Rng>(n: usize, g: usize, degree: u32, rng: &mut R) -> MultiForm {
    let mut w = MultiForm::zero(n, g);
    for _ in 0..rng.gen_range(1..=3) {
        let key: FormKey = (0..g)
            .map(|_| rng.gen_range(0..(1u32 << (2 * n))))
            .collect();
        let mut c = random_poly(2 * n, degree, 2, rng);
        if c.is_zero() {
            c = Poly::one(2 * n);
        }
        w.add_term(key, c);
    }
    w
}

/// The symplectic form `sum_i dx_i ^ dy_i` on one factor (`g = 1`).
pub fn symplectic_form(n: usize) -> MultiForm {
    let mut w = MultiForm::zero(n, 1);
    for i in 0..n {
        let t = MultiForm::monomial(n, 1, Poly::one(2 * n), &[vec![i, n + i]]).expect("valid");
        w = w.add(&t);
    }
    w
}
