//! Dense exact linear algebra over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &f * &self[(r, j)];
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = BigRational::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &f * &m[(c, j)];
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Incrementally maintained row space: rows are reduced against the current
/// echelon basis as they arrive, so only independent rows are stored.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    cols: usize,
    /// Echelon rows, each normalized to 1 at its pivot.
    basis: Vec<(usize, Vec<BigRational>)>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.cols
    }

    /// Reduces `v` against the basis; zero means `v` is in the span.
    pub fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (p, row) in &self.basis {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[j] -= &f * x;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        assert_eq!(v.len(), self.cols);
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        let v: Vec<BigRational> = v.into_iter().map(|x| x * &inv).collect();
        // Keep the basis fully reduced at the new pivot.
        for (_, row) in self.basis.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    row[j] -= &f * x;
                }
            }
        }
        self.basis.push((p, v));
        true
    }

    /// Basis of the orthogonal complement `{x : r . x = 0 for all rows r}`.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let pivots: Vec<usize> = self.basis.iter().map(|(p, _)| *p).collect();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (p, row) in &self.basis {
                    v[*p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}
