//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Exponent vector.
pub type Mono = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(nvars, Mono::from_elem(0, nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(nvars: usize, m: Mono, c: BigRational) -> Self {
        assert_eq!(m.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Mono::from_elem(0, nvars);
        m[i] = 1;
        Self::monomial(nvars, m, BigRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, BigRational)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
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

    pub fn coeff(&self, m: &[u16]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        assert_eq!(m.len(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `d^m / d(var)^m`.
    pub fn derivative(&self, var: usize, m: u32) -> Poly {
        if m == 0 {
            return self.clone();
        }
        let mut out = Poly::zero(self.nvars);
        for (mono, c) in &self.terms {
            let e = mono[var] as u32;
            if e < m {
                continue;
            }
            let falling: u64 = (e - m + 1..=e).map(u64::from).product();
            let mut nm = mono.clone();
            nm[var] = (e - m) as u16;
            out.add_term(nm, c * BigRational::from_integer(BigInt::from(falling)));
        }
        out
    }

    /// Substitutes `var_from := var_to`.
    pub fn identify(&self, var_from: usize, var_to: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (mono, c) in &self.terms {
            let mut nm = mono.clone();
            nm[var_to] += nm[var_from];
            nm[var_from] = 0;
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Renames variables: variable `i` becomes `map[i]` in a ring of
    /// `nvars` variables.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (mono, c) in &self.terms {
            let mut nm = Mono::from_elem(0, nvars);
            for (i, &e) in mono.iter().enumerate() {
                nm[map[i]] += e;
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Total degree in the listed variables, if homogeneous there.
    pub fn degree_in(&self, vars: impl Fn(usize) -> bool + Copy) -> Option<u32> {
        let mut deg = None;
        for mono in self.terms.keys() {
            let d: u32 = mono
                .iter()
                .enumerate()
                .filter(|(i, _)| vars(*i))
                .map(|(_, &e)| e as u32)
                .sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn max_degree_in(&self, vars: impl Fn(usize) -> bool + Copy) -> u32 {
        self.terms
            .keys()
            .map(|mono| {
                mono.iter()
                    .enumerate()
                    .filter(|(i, _)| vars(*i))
                    .map(|(_, &e)| e as u32)
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    /// Exact division by `v_i - v_j`, or `None` when it does not divide.
    pub fn div_linear(&self, i: usize, j: usize) -> Option<Poly> {
        // Group by the exponent of v_i; synthetic division in v_i.
        let mut by_deg: BTreeMap<u16, Poly> = BTreeMap::new();
        for (mono, c) in &self.terms {
            let mut rest = mono.clone();
            let e = rest[i];
            rest[i] = 0;
            by_deg
                .entry(e)
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        let Some(&top) = by_deg.keys().next_back() else {
            return Some(Poly::zero(self.nvars));
        };
        let vj = Poly::var(self.nvars, j);
        let mut quotient = Poly::zero(self.nvars);
        // q_{d-1} = c_d + v_j q_d, running from the top degree down.
        let mut carry = Poly::zero(self.nvars);
        for d in (1..=top).rev() {
            let c = by_deg.remove(&d).unwrap_or_else(|| Poly::zero(self.nvars));
            let qd = &c + &(&vj * &carry);
            for (mono, v) in &qd.terms {
                let mut nm = mono.clone();
                nm[i] = d - 1;
                quotient.add_term(nm, v.clone());
            }
            carry = qd;
        }
        let c0 = by_deg.remove(&0).unwrap_or_else(|| Poly::zero(self.nvars));
        let rem = &c0 + &(&vj * &carry);
        rem.is_zero().then_some(quotient)
    }

    /// Coefficient vector over the given monomial index.
    pub fn coords(
        &self,
        index: &std::collections::HashMap<Mono, usize>,
    ) -> Option<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); index.len()];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: std::collections::HashMap<Mono, BigRational> =
            std::collections::HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Poly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for Poly {
    /// Variables print as `v0, v1, ...`; callers with named variables use
    /// [`Poly::render`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Poly {
    /// Renders with the given variable names, highest total degree first.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Mono, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|&e| e as u32).sum();
            let db: u32 = b.0.iter().map(|&e| e as u32).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&vars.join("*"));
            } else {
                out.push_str(&format!("{}*{}", a, vars.join("*")));
            }
        }
        out
    }
}
