//! Small dense complex vectors and matrices.
//!
//! Only what the zero-forcing precoder needs: Hermitian inner products,
//! column access and the inverse of a Hermitian positive-definite Gram matrix.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pivots of the Gram Cholesky factor below this fraction of the largest
/// diagonal entry are treated as singular.
pub const GRAM_PIVOT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("vector must have at least one entry"));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("vector entry"));
        }
        Ok(Self(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<Complex64>) -> Self {
        debug_assert!(!entries.is_empty());
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }
}

/// `sum_i conj(a_i) * b_i`.
pub fn hermitian_inner(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), actual: b.len() });
    }
    Ok(dot_conj(a, b))
}

#[inline]
pub(crate) fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.re * y.im - x.im * y.re;
    }
    Complex64::new(re, im)
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch { expected: rows * cols, actual: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entry"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from real entries given row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, actual: r.len() });
            }
            data.extend(r.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    /// All columns, each as a contiguous vector.
    pub fn columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, actual: c.len() });
            }
            for (i, z) in c.iter().enumerate() {
                data[i * cols + j] = *z;
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[l * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// `H^H H` (K x K).
    pub fn gram(&self) -> Self {
        let k = self.cols;
        let mut g = Self::zeros(k, k);
        for row in self.data.chunks_exact(k) {
            for i in 0..k {
                let ci = row[i].conj();
                for (g_ij, r_j) in g.data[i * k + i..(i + 1) * k].iter_mut().zip(&row[i..]) {
                    *g_ij += ci * r_j;
                }
            }
        }
        for i in 0..k {
            g.data[i * k + i].im = 0.0;
            for j in (i + 1)..k {
                g.data[j * k + i] = g.data[i * k + j].conj();
            }
        }
        g
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L L^H`.
fn cholesky(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.rows;
    let scale = (0..n).map(|i| a[(i, i)].re).fold(0.0_f64, f64::max);
    if !(scale > 0.0) {
        return Err(Error::SingularGram { pivot: 0.0 });
    }
    let mut l = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for p in 0..j {
            d -= l[(j, p)].norm_sqr();
        }
        if d <= GRAM_PIVOT_TOLERANCE * scale {
            return Err(Error::SingularGram { pivot: d / scale });
        }
        let ljj = d.sqrt();
        l[(j, j)] = Complex64::new(ljj, 0.0);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for p in 0..j {
                s -= l[(i, p)] * l[(j, p)].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

/// `(H^H H)^{-1}` for a tall `N_t x K` channel matrix, via Cholesky of the Gram
/// matrix. Fails with [`Error::SingularGram`] when a pivot drops below
/// [`GRAM_PIVOT_TOLERANCE`] relative to the largest diagonal entry.
pub fn gram_inverse(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    if h.rows < h.cols {
        return Err(Error::invalid(format!("channel matrix must be tall, got {}x{}", h.rows, h.cols)));
    }
    let g = h.gram();
    let l = cholesky(&g)?;
    let n = g.rows;

    // L^{-1}, lower triangular, by forward substitution on the identity.
    let mut linv = ComplexMatrix::zeros(n, n);
    for c in 0..n {
        linv[(c, c)] = Complex64::new(1.0 / l[(c, c)].re, 0.0);
        for i in (c + 1)..n {
            let mut s = Complex64::new(0.0, 0.0);
            for p in c..i {
                s += l[(i, p)] * linv[(p, c)];
            }
            linv[(i, c)] = -s / l[(i, i)].re;
        }
    }

    // G^{-1} = L^{-H} L^{-1}; fill the upper triangle and mirror.
    let mut inv = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut s = Complex64::new(0.0, 0.0);
            for p in j..n {
                s += linv[(p, i)].conj() * linv[(p, j)];
            }
            inv[(i, j)] = s;
        }
        inv[(i, i)].im = 0.0;
        for j in (i + 1)..n {
            inv[(j, i)] = inv[(i, j)].conj();
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_product_examples() {
        let one = hermitian_inner(&[c(1.0, 0.0), c(0.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(one, c(1.0, 0.0));
        let i = hermitian_inner(&[c(0.0, 1.0), c(0.0, 0.0)], &[c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(i, c(1.0, 0.0));
        let v = hermitian_inner(&[c(1.0, 1.0), c(2.0, 0.0)], &[c(1.0, 0.0), c(1.0, -1.0)]).unwrap();
        assert_eq!(v, c(3.0, -3.0));
    }

    #[test]
    fn inner_product_length_mismatch() {
        let err = hermitian_inner(&[c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 1, actual: 2 }));
    }

    #[test]
    fn gram_inverse_examples() {
        let h = ComplexMatrix::from_real_rows(&[&[1.0], &[0.0]]).unwrap();
        assert_eq!(gram_inverse(&h).unwrap()[(0, 0)], c(1.0, 0.0));

        let h = ComplexMatrix::from_real_rows(&[&[2.0], &[0.0]]).unwrap();
        assert!((gram_inverse(&h).unwrap()[(0, 0)] - c(0.25, 0.0)).norm() < 1e-15);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h =
            ComplexMatrix::new(3, 2, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, s), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
                .unwrap();
        let inv = gram_inverse(&h).unwrap();
        let eye = ComplexMatrix::identity(2);
        for (a, b) in inv.as_slice().iter().zip(eye.as_slice()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn singular_gram_is_reported() {
        let h = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[1.0, 2.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(gram_inverse(&h), Err(Error::SingularGram { .. })));
        let z = ComplexMatrix::zeros(3, 2);
        assert!(matches!(gram_inverse(&z), Err(Error::SingularGram { .. })));
    }

    #[test]
    fn wide_matrix_rejected() {
        let h = ComplexMatrix::zeros(2, 3);
        assert!(matches!(gram_inverse(&h), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn matrix_shape_validation() {
        assert!(ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexVector::new(vec![]).is_err());
    }
}
