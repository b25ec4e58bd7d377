//! Dense matrices over a [`Field`] and Gaussian elimination.

use crate::error::{QDiffError, QDiffResult};
use crate::field::Field;

/// Row-major `rows × cols` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero_el(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one_el();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// `rows` must be rectangular.
    pub fn from_rows(rows: Vec<Vec<F>>) -> QDiffResult<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(QDiffError::Dimension("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Mat<G>> {
        Some(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Option<Vec<_>>>()? })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_el())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_el(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_el(b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|a| a.mul_el(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimension");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero_el() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero_el() {
                        out[(i, j)] = out[(i, j)].add_el(&a.mul_el(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(F::zero_el(), |acc, (a, b)| acc.add_el(&a.mul_el(b))))
            .collect()
    }

    /// Solve `self · X = rhs` by elimination with weighted pivoting.
    pub fn solve(&self, rhs: &Self) -> QDiffResult<Self> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(QDiffError::Dimension(format!("{}x{} system with {} rhs rows", self.rows, self.cols, rhs.rows)));
        }
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let piv = (col..n)
                .map(|r| (r, a[(r, col)].pivot_weight()))
                .filter(|(_, w)| *w > 0.0)
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .map(|(r, _)| r)
                .ok_or(QDiffError::Singular)?;
            if piv != col {
                a.swap_rows(piv, col);
                b.swap_rows(piv, col);
            }
            let inv = a[(col, col)].inv_el().ok_or(QDiffError::Singular)?;
            for r in (col + 1)..n {
                let f = a[(r, col)].mul_el(&inv);
                if f.is_zero_el() {
                    continue;
                }
                for c in col..n {
                    let t = a[(col, c)].mul_el(&f);
                    a[(r, c)] = a[(r, c)].sub_el(&t);
                }
                for c in 0..m {
                    let t = b[(col, c)].mul_el(&f);
                    b[(r, c)] = b[(r, c)].sub_el(&t);
                }
            }
        }
        let mut x = Self::zeros(n, m);
        for r in (0..n).rev() {
            let inv = a[(r, r)].inv_el().ok_or(QDiffError::Singular)?;
            for c in 0..m {
                let mut acc = b[(r, c)].clone();
                for k in (r + 1)..n {
                    acc = acc.sub_el(&a[(r, k)].mul_el(&x[(k, c)]));
                }
                x[(r, c)] = acc.mul_el(&inv);
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> QDiffResult<Self> {
        self.solve(&Self::identity(self.rows))
    }

    /// Determinant by elimination.
    pub fn det(&self) -> QDiffResult<F> {
        if !self.is_square() {
            return Err(QDiffError::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one_el();
        for col in 0..n {
            let piv = (col..n)
                .map(|r| (r, a[(r, col)].pivot_weight()))
                .filter(|(_, w)| *w > 0.0)
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .map(|(r, _)| r);
            let Some(piv) = piv else { return Ok(F::zero_el()) };
            if piv != col {
                a.swap_rows(piv, col);
                det = det.neg_el();
            }
            let p = a[(col, col)].clone();
            det = det.mul_el(&p);
            let inv = p.inv_el().ok_or(QDiffError::Singular)?;
            for r in (col + 1)..n {
                let f = a[(r, col)].mul_el(&inv);
                if f.is_zero_el() {
                    continue;
                }
                for c in col..n {
                    let t = a[(col, c)].mul_el(&f);
                    a[(r, c)] = a[(r, c)].sub_el(&t);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Max-abs entry of a complex matrix.
pub fn max_norm(m: &Mat<num_complex::Complex64>) -> f64 {
    m.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
