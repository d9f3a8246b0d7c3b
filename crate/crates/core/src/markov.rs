//! Fricke-Klein trace coordinates of `SL_2` quadruples with product one:
//! sampling, the Markov cubic, trace-word reduction to the spanning set
//! `{I, M1, M2, M3, M1M2, M1M3, M2M3, M1M2M3}`, genericity and irreducibility.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hlv::fq_point_count;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::scalar::{QtLaurent, QtScalar};

/// A commutative ring of exact values the trace machinery runs over.
pub trait TraceRing: Clone + PartialEq + fmt::Debug {
    /// The integer `c` in the ring of `like`.
    fn from_i64(c: i64, like: &Self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl TraceRing for BigRational {
    fn from_i64(c: i64, _: &Self) -> Self {
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
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl TraceRing for Poly {
    fn from_i64(c: i64, like: &Self) -> Self {
        Poly::from_int(like.nvars(), c)
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
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

/// 2x2 matrix over a trace ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<T: TraceRing> {
    pub e: [[T; 2]; 2],
}

impl<T: TraceRing> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 {
            e: [[a, b], [c, d]],
        }
    }

    pub fn identity(like: &T) -> Self {
        let (o, z) = (T::from_i64(1, like), T::from_i64(0, like));
        Mat2::new(o.clone(), z.clone(), z, o)
    }

    pub fn mul(&self, o: &Mat2<T>) -> Mat2<T> {
        let e = |i: usize, j: usize| {
            self.e[i][0]
                .mul(&o.e[0][j])
                .add(&self.e[i][1].mul(&o.e[1][j]))
        };
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn trace(&self) -> T {
        self.e[0][0].add(&self.e[1][1])
    }

    pub fn det(&self) -> T {
        self.e[0][0]
            .mul(&self.e[1][1])
            .sub(&self.e[0][1].mul(&self.e[1][0]))
    }

    /// The adjugate, which is the inverse when the determinant is one.
    pub fn adjugate(&self) -> Mat2<T> {
        let z = T::from_i64(0, &self.e[0][0]);
        Mat2::new(
            self.e[1][1].clone(),
            z.sub(&self.e[0][1]),
            z.sub(&self.e[1][0]),
            self.e[0][0].clone(),
        )
    }

    /// `[[1, a], [0, 1]] [[1, 0], [b, 1]] [[1, c], [0, 1]]`.
    pub fn unipotent_product(a: &T, b: &T, c: &T) -> Mat2<T> {
        let o = T::from_i64(1, a);
        let z = T::from_i64(0, a);
        let u = |s: &T| Mat2::new(o.clone(), s.clone(), z.clone(), o.clone());
        let l = Mat2::new(o.clone(), z.clone(), b.clone(), o.clone());
        u(a).mul(&l).mul(&u(c))
    }
}

/// `M1, M2, M3, M4` with `M4 = (M1 M2 M3)^-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SL2Tuple<T: TraceRing = BigRational> {
    pub m: [Mat2<T>; 4],
}

impl<T: TraceRing> SL2Tuple<T> {
    /// Completes three determinant-one matrices to a tuple.
    pub fn from_three(m1: Mat2<T>, m2: Mat2<T>, m3: Mat2<T>) -> Self {
        let m4 = m1.mul(&m2).mul(&m3).adjugate();
        SL2Tuple {
            m: [m1, m2, m3, m4],
        }
    }

    /// `det M_i = 1` and `M1 M2 M3 M4 = I`.
    pub fn is_valid(&self) -> bool {
        let like = &self.m[0].e[0][0];
        let one = T::from_i64(1, like);
        self.m.iter().all(|m| m.det() == one)
            && self.m[0].mul(&self.m[1]).mul(&self.m[2]).mul(&self.m[3]) == Mat2::identity(like)
    }

    pub fn trace_coordinates(&self) -> TraceCoordinates<T> {
        let m = &self.m;
        TraceCoordinates {
            a: [m[0].trace(), m[1].trace(), m[2].trace(), m[3].trace()],
            x: m[0].mul(&m[1]).trace(),
            y: m[0].mul(&m[2]).trace(),
            z: m[1].mul(&m[2]).trace(),
        }
    }

    /// Matrix of a signed word (`-i` is the inverse of `M_i`).
    pub fn evaluate(&self, word: &TraceWord) -> Mat2<T> {
        let like = &self.m[0].e[0][0];
        word.letters.iter().fold(Mat2::identity(like), |acc, &l| {
            let m = &self.m[l.unsigned_abs() as usize - 1];
            if l > 0 {
                acc.mul(m)
            } else {
                acc.mul(&m.adjugate())
            }
        })
    }
}

fn small_rational<R: Rng>(rng: &mut R, max_den: i64) -> BigRational {
    let num: i64 = rng.gen_range(-3..=3);
    let den: i64 = rng.gen_range(1..=max_den);
    BigRational::new(num.into(), den.into())
}

fn sample_with(seed: u64, max_den: i64) -> SL2Tuple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mats = (0..3).map(|_| {
        let (a, b, c) = (
            small_rational(&mut rng, max_den),
            small_rational(&mut rng, max_den),
            small_rational(&mut rng, max_den),
        );
        Mat2::unipotent_product(&a, &b, &c)
    });
    let (m1, m2, m3) = (
        mats.next().unwrap(),
        mats.next().unwrap(),
        mats.next().unwrap(),
    );
    SL2Tuple::from_three(m1, m2, m3)
}

/// Random tuple: `M1, M2, M3` are products `U L U` of elementary unipotent
/// matrices with parameters `p/d`, `|p| <= 3`, `d <= 2`.
pub fn sample_tuple(seed: u64) -> SL2Tuple {
    sample_with(seed, 2)
}

/// As [`sample_tuple`] with integer parameters, so all entries are integers.
pub fn sample_integral_tuple(seed: u64) -> SL2Tuple {
    sample_with(seed, 1)
}

/// `a_i = tr M_i`, `x = tr M1M2`, `y = tr M1M3`, `z = tr M2M3`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceCoordinates<T: TraceRing = BigRational> {
    pub a: [T; 4],
    pub x: T,
    pub y: T,
    pub z: T,
}

/// Variable order of symbolic trace polynomials.
pub const TRACE_VARIABLES: [&str; 7] = ["x", "y", "z", "a1", "a2", "a3", "a4"];

impl TraceCoordinates<Poly> {
    /// Indeterminate coordinates in the ring `Q[x, y, z, a1, a2, a3, a4]`.
    pub fn symbolic() -> Self {
        let v = |i| Poly::var(7, i);
        TraceCoordinates {
            a: [v(3), v(4), v(5), v(6)],
            x: v(0),
            y: v(1),
            z: v(2),
        }
    }
}

impl TraceCoordinates<BigRational> {
    /// Values in the order of [`TRACE_VARIABLES`].
    pub fn values(&self) -> Vec<BigRational> {
        vec![
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
            self.a[0].clone(),
            self.a[1].clone(),
            self.a[2].clone(),
            self.a[3].clone(),
        ]
    }
}

/// `xyz + x^2 + y^2 + z^2 - (a1a2 + a3a4)x - (a1a3 + a2a4)y - (a1a4 + a2a3)z
///   + a1a2a3a4 + a1^2 + a2^2 + a3^2 + a4^2 - 4`.
pub fn markov_lhs<T: TraceRing>(c: &TraceCoordinates<T>) -> T {
    let [a1, a2, a3, a4] = &c.a;
    let (x, y, z) = (&c.x, &c.y, &c.z);
    let mut v = x.mul(y).mul(z);
    v = v.add(&x.mul(x)).add(&y.mul(y)).add(&z.mul(z));
    v = v.sub(&a1.mul(a2).add(&a3.mul(a4)).mul(x));
    v = v.sub(&a1.mul(a3).add(&a2.mul(a4)).mul(y));
    v = v.sub(&a1.mul(a4).add(&a2.mul(a3)).mul(z));
    v = v.add(&a1.mul(a2).mul(a3).mul(a4));
    for a in &c.a {
        v = v.add(&a.mul(a));
    }
    v.sub(&T::from_i64(4, x))
}

/// Word in `M_i^{+-1}`, `i = 1..4`, as signed indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceWord {
    pub letters: Vec<i8>,
}

impl TraceWord {
    pub fn new(letters: Vec<i8>) -> Result<Self> {
        if let Some(l) = letters
            .iter()
            .find(|l| l.unsigned_abs() == 0 || l.unsigned_abs() > 4)
        {
            return Err(Error::InvalidArgument(format!(
                "letter {l} is not one of +-1..+-4"
            )));
        }
        Ok(TraceWord { letters })
    }

    /// Parses `"1,2,-1,-2"`; the empty string is the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(vec![]);
        }
        let letters = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i8>()
                    .map_err(|_| Error::InvalidArgument(format!("bad letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("I");
        }
        for l in &self.letters {
            if *l > 0 {
                write!(f, "M{l}")?;
            } else {
                write!(f, "M{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

/// Which inversion the rewriting resolves first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Spanning-set index: bit `i` set means `M_{i+1}` occurs, letters in
/// increasing order (`0 = I`, `3 = M1M2`, `7 = M1M2M3`).
pub type SpanIndex = usize;

/// Bound on rewriting steps for one word; exceeding it is a bug.
const STEP_LIMIT: usize = 100_000;

/// Rewrites products of `M1, M2, M3` into the spanning set using
/// `M_i^2 = a_i M_i - I` and
/// `AB = -BA + tr(A) B + tr(B) A + (tr(AB) - tr(A) tr(B)) I`,
/// then reads off traces.
#[derive(Clone, Debug)]
pub struct TraceReducer<T: TraceRing> {
    coords: TraceCoordinates<T>,
    zero: T,
    /// `table[S][j]`: span element `S` times `M_{j+1}`.
    table: Vec<Vec<Vec<T>>>,
    traces: Vec<T>,
}

impl<T: TraceRing> TraceReducer<T> {
    pub fn new(coords: TraceCoordinates<T>, strategy: Strategy) -> Result<Self> {
        let zero = T::from_i64(0, &coords.x);
        let mut r = TraceReducer {
            traces: vec![
                T::from_i64(2, &coords.x),
                coords.a[0].clone(),
                coords.a[1].clone(),
                coords.x.clone(),
                coords.a[2].clone(),
                coords.y.clone(),
                coords.z.clone(),
                coords.a[3].clone(),
            ],
            coords,
            zero,
            table: vec![],
        };
        let mut memo = HashMap::new();
        let mut steps = 0;
        let mut table = Vec::with_capacity(8);
        for s in 0..8 {
            let mut row = Vec::with_capacity(3);
            for j in 0..3u8 {
                let mut w = span_word(s);
                w.push(j);
                row.push(r.reduce_positive(&w, strategy, &mut memo, &mut steps)?);
            }
            table.push(row);
        }
        r.table = table;
        Ok(r)
    }

    fn unit(&self, s: SpanIndex) -> Vec<T> {
        let mut v = vec![self.zero.clone(); 8];
        v[s] = T::from_i64(1, &self.zero);
        v
    }

    fn pair_trace(&self, i: u8, j: u8) -> &T {
        match (i.min(j), i.max(j)) {
            (0, 1) => &self.coords.x,
            (0, 2) => &self.coords.y,
            _ => &self.coords.z,
        }
    }

    /// Expresses a word in the letters `0, 1, 2` (for `M1, M2, M3`).
    fn reduce_positive(
        &self,
        w: &[u8],
        strategy: Strategy,
        memo: &mut HashMap<Vec<u8>, Vec<T>>,
        steps: &mut usize,
    ) -> Result<Vec<T>> {
        if let Some(v) = memo.get(w) {
            return Ok(v.clone());
        }
        *steps += 1;
        if *steps > STEP_LIMIT {
            return Err(Error::ReductionLimit(STEP_LIMIT));
        }
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&p| w[p] >= w[p + 1])
            .collect();
        let pos = match strategy {
            Strategy::Leftmost => inversions.first(),
            Strategy::Rightmost => inversions.last(),
        };
        let out = match pos {
            None => self.unit(w.iter().fold(0, |m, &l| m | (1 << l))),
            Some(&p) => {
                let (a, b) = (w[p], w[p + 1]);
                let with = |mid: &[u8]| -> Vec<u8> {
                    w[..p]
                        .iter()
                        .chain(mid)
                        .chain(&w[p + 2..])
                        .copied()
                        .collect()
                };
                let mut acc = vec![self.zero.clone(); 8];
                let mut add = |v: Vec<T>, c: &T, neg: bool| {
                    for (x, y) in acc.iter_mut().zip(v) {
                        let t = y.mul(c);
                        *x = if neg { x.sub(&t) } else { x.add(&t) };
                    }
                };
                let one = T::from_i64(1, &self.zero);
                let ta = &self.coords.a[a as usize];
                if a == b {
                    add(
                        self.reduce_positive(&with(&[a]), strategy, memo, steps)?,
                        ta,
                        false,
                    );
                    add(
                        self.reduce_positive(&with(&[]), strategy, memo, steps)?,
                        &one,
                        true,
                    );
                } else {
                    let tb = &self.coords.a[b as usize];
                    let c = self.pair_trace(a, b).sub(&ta.mul(tb));
                    add(
                        self.reduce_positive(&with(&[b, a]), strategy, memo, steps)?,
                        &one,
                        true,
                    );
                    add(
                        self.reduce_positive(&with(&[b]), strategy, memo, steps)?,
                        ta,
                        false,
                    );
                    add(
                        self.reduce_positive(&with(&[a]), strategy, memo, steps)?,
                        tb,
                        false,
                    );
                    add(
                        self.reduce_positive(&with(&[]), strategy, memo, steps)?,
                        &c,
                        false,
                    );
                }
                acc
            }
        };
        memo.insert(w.to_vec(), out.clone());
        Ok(out)
    }

    fn times_generator(&self, v: &[T], j: usize) -> Vec<T> {
        let mut out = vec![self.zero.clone(); 8];
        for (s, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&self.table[s][j]) {
                if !t.is_zero() {
                    *o = o.add(&c.mul(t));
                }
            }
        }
        out
    }

    fn times_inverse(&self, v: &[T], j: usize) -> Vec<T> {
        let a = &self.coords.a[j];
        let w = self.times_generator(v, j);
        v.iter().zip(w).map(|(x, y)| x.mul(a).sub(&y)).collect()
    }

    /// `v` times one signed letter.
    pub fn step(&self, v: &[T], letter: i8) -> Vec<T> {
        match letter {
            1..=3 => self.times_generator(v, letter as usize - 1),
            -3..=-1 => self.times_inverse(v, (-letter) as usize - 1),
            // M4 = M3^-1 M2^-1 M1^-1.
            4 => {
                let v = self.times_inverse(v, 2);
                let v = self.times_inverse(&v, 1);
                self.times_inverse(&v, 0)
            }
            -4 => {
                let v = self.times_generator(v, 0);
                let v = self.times_generator(&v, 1);
                self.times_generator(&v, 2)
            }
            _ => panic!("letter {letter} out of range"),
        }
    }

    pub fn identity(&self) -> Vec<T> {
        self.unit(0)
    }

    /// Coefficients of `w` over the spanning set.
    pub fn express(&self, w: &TraceWord) -> Vec<T> {
        w.letters
            .iter()
            .fold(self.identity(), |v, &l| self.step(&v, l))
    }

    pub fn trace_of(&self, v: &[T]) -> T {
        v.iter()
            .zip(&self.traces)
            .fold(self.zero.clone(), |acc, (c, t)| acc.add(&c.mul(t)))
    }

    pub fn trace(&self, w: &TraceWord) -> T {
        self.trace_of(&self.express(w))
    }

    /// `tr(S T)` over the spanning set.
    pub fn gram(&self) -> Vec<Vec<T>> {
        (0..8)
            .map(|s| {
                (0..8)
                    .map(|t| {
                        let v = span_word(t)
                            .into_iter()
                            .fold(self.unit(s), |v, l| self.times_generator(&v, l as usize));
                        self.trace_of(&v)
                    })
                    .collect()
            })
            .collect()
    }
}

/// The letters of a spanning-set element, increasing.
pub fn span_word(s: SpanIndex) -> Vec<u8> {
    (0..3u8).filter(|l| s & (1 << l) != 0).collect()
}

/// `tr(w)` as a polynomial in [`TRACE_VARIABLES`].
pub fn reduce_trace_word(w: &TraceWord) -> Result<Poly> {
    reduce_trace_word_with(w, Strategy::Leftmost)
}

pub fn reduce_trace_word_with(w: &TraceWord, strategy: Strategy) -> Result<Poly> {
    Ok(TraceReducer::new(TraceCoordinates::symbolic(), strategy)?.trace(w))
}

/// Evaluates a polynomial at a point.
pub fn evaluate(p: &Poly, values: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, &e) in values.iter().zip(m.iter()) {
            if e > 0 {
                t *= num_traits::pow(v.clone(), e as usize);
            }
        }
        acc += t;
    }
    acc
}

/// Whether no product `prod lambda_i^(+-1)` equals 1. Rejects
/// `lambda_i in {0, 1, -1}` (`a_i = +-2` is excluded).
pub fn is_generic_sl2(lambdas: &[BigRational; 4]) -> Result<bool> {
    for l in lambdas {
        if Zero::is_zero(l) || l.abs().is_one() {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue {l} is excluded"
            )));
        }
    }
    for signs in 0..16u32 {
        let mut p = BigRational::one();
        for (i, l) in lambdas.iter().enumerate() {
            p *= if signs & (1 << i) != 0 {
                l.recip()
            } else {
                l.clone()
            };
        }
        if p.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn to_matrix(g: &[Vec<BigRational>]) -> Matrix {
    Matrix::from_rows(g.to_vec())
}

/// Trace Gram matrix of the spanning set, from the trace coordinates only.
pub fn gram_from_traces(c: &TraceCoordinates) -> Result<Matrix> {
    Ok(to_matrix(
        &TraceReducer::new(c.clone(), Strategy::Leftmost)?.gram(),
    ))
}

/// Trace Gram matrix of the spanning set, from the matrices.
pub fn gram_from_matrices(t: &SL2Tuple) -> Matrix {
    let like = &t.m[0].e[0][0];
    let elems: Vec<Mat2<BigRational>> = (0..8)
        .map(|s| {
            span_word(s)
                .into_iter()
                .fold(Mat2::identity(like), |acc, l| acc.mul(&t.m[l as usize]))
        })
        .collect();
    let rows = elems
        .iter()
        .map(|a| elems.iter().map(|b| a.mul(b).trace()).collect())
        .collect::<Vec<Vec<_>>>();
    to_matrix(&rows)
}

/// Whether some four spanning-set elements have invertible trace Gram
/// matrix, i.e. the tuple generates all of `M_2`. The Gram matrix comes from
/// the trace coordinates and is checked against the matrices.
pub fn irreducibility_gram(t: &SL2Tuple) -> Result<bool> {
    let g = gram_from_traces(&t.trace_coordinates())?;
    if g != gram_from_matrices(t) {
        return Err(Error::InvalidArgument(
            "trace Gram matrix disagrees with the matrix computation".into(),
        ));
    }
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                for d in c + 1..8 {
                    let idx = [a, b, c, d];
                    let sub = Matrix::from_rows(
                        idx.iter()
                            .map(|&i| idx.iter().map(|&j| g[(i, j)].clone()).collect())
                            .collect(),
                    );
                    if !Zero::is_zero(&sub.determinant()) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// `q mh(q, 1/q)` for the two-dimensional cubic surface.
pub fn markov_point_count(mh: &QtScalar) -> Result<QtLaurent> {
    fq_point_count(mh, 2)
}

/// Symbolic tuple `M_i = U(a_i) L(b_i) U(c_i)` over `Q[a_i, b_i, c_i]`.
pub fn symbolic_tuple() -> SL2Tuple<Poly> {
    let v = |i| Poly::var(9, i);
    let m = |i: usize| Mat2::unipotent_product(&v(3 * i), &v(3 * i + 1), &v(3 * i + 2));
    SL2Tuple::from_three(m(0), m(1), m(2))
}

/// The Markov polynomial on the symbolic tuple; zero iff the cubic holds
/// identically on the (dense) parametrized family.
pub fn symbolic_markov_residual() -> Poly {
    markov_lhs(&symbolic_tuple().trace_coordinates())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn sampled_tuples_are_valid() {
        for seed in 0..20 {
            let t = sample_tuple(seed);
            assert!(t.is_valid());
            assert_eq!(t, sample_tuple(seed));
            let m123 = t.m[0].mul(&t.m[1]).mul(&t.m[2]);
            assert_eq!(t.m[3].trace(), m123.trace());
            assert!(Zero::is_zero(&markov_lhs(&t.trace_coordinates())));
        }
    }

    #[test]
    fn identity_tuple() {
        let i = Mat2::identity(&r(0));
        let t = SL2Tuple::from_three(i.clone(), i.clone(), i);
        let c = t.trace_coordinates();
        assert_eq!(c.x, r(2));
        assert!(Zero::is_zero(&markov_lhs(&c)));
        assert!(!irreducibility_gram(&t).unwrap());
    }

    #[test]
    fn symbolic_markov() {
        let t = symbolic_tuple();
        assert!(t.is_valid());
        assert!(symbolic_markov_residual().is_zero());
    }

    #[test]
    fn trace_word_examples() {
        let names: Vec<String> = TRACE_VARIABLES.iter().map(|s| s.to_string()).collect();
        let w = |s| {
            reduce_trace_word(&TraceWord::parse(s).unwrap())
                .unwrap()
                .render(&names)
        };
        assert_eq!(w("2,1"), "x");
        assert_eq!(w("-1"), "a1");
        assert_eq!(w(""), "2");
        assert_eq!(w("4"), "a4");
        assert_eq!(w("1,2,3"), "a4");
        let p = reduce_trace_word(&TraceWord::parse("1,3,2").unwrap()).unwrap();
        for seed in 0..100 {
            let t = sample_tuple(seed);
            let direct = t.evaluate(&TraceWord::parse("1,3,2").unwrap()).trace();
            assert_eq!(evaluate(&p, &t.trace_coordinates().values()), direct);
        }
    }

    #[test]
    fn reduction_is_confluent() {
        let words = ["3,2,1", "3,3,2,1,1", "2,-4,3,1,-2", "4,4,4", "-3,-2,-1,1,2"];
        for s in words {
            let w = TraceWord::parse(s).unwrap();
            assert_eq!(
                reduce_trace_word_with(&w, Strategy::Leftmost).unwrap(),
                reduce_trace_word_with(&w, Strategy::Rightmost).unwrap()
            );
        }
    }

    #[test]
    fn bad_words() {
        assert!(TraceWord::parse("1,5").is_err());
        assert!(TraceWord::parse("0").is_err());
        assert!(TraceWord::parse("a").is_err());
    }

    #[test]
    fn genericity() {
        assert!(is_generic_sl2(&[r(2), r(3), r(5), r(7)]).unwrap());
        let l = [r(2), r(3), r(6), BigRational::new(1.into(), 36.into())];
        assert!(!is_generic_sl2(&l).unwrap());
        assert!(is_generic_sl2(&[r(1), r(3), r(5), r(7)]).is_err());
    }

    #[test]
    fn gram_matches_matrices() {
        for seed in 0..100 {
            let t = sample_tuple(seed);
            assert_eq!(
                gram_from_traces(&t.trace_coordinates()).unwrap(),
                gram_from_matrices(&t)
            );
        }
        assert!(irreducibility_gram(&sample_tuple(1)).unwrap());
    }

    #[test]
    fn point_count() {
        let mh = &(&QtScalar::q() + &QtScalar::t()) + &QtScalar::from_int(4);
        let p = markov_point_count(&mh).unwrap();
        assert_eq!(p.to_string(), "q^2 + 4*q + 1");
        assert_eq!(p.value_at_one(), r(6));
        assert_eq!(
            markov_point_count(&QtScalar::one()).unwrap().to_string(),
            "q"
        );
    }
}
