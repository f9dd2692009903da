//! Zero-forcing private precoders from the outdated channel and a random
//! common beamformer.

use num_complex::Complex64;

use crate::error::Result;
use crate::numerics::{gram_inverse, ComplexMatrix, ComplexVector};
use crate::randgen::{isotropic_unit_vector, RngStream};

#[derive(Debug, Clone, PartialEq)]
pub struct PrecoderSet {
    /// `N_t x K`; column `k` is user `k`'s unit-norm private precoder.
    pub private: ComplexMatrix,
    /// Unit-norm common beamformer, independent of every channel draw.
    pub common: ComplexVector,
    columns: Vec<Vec<Complex64>>,
}

impl PrecoderSet {
    pub fn new(private: ComplexMatrix, common: ComplexVector) -> Self {
        let columns = private.columns();
        Self { private, common, columns }
    }

    pub fn column(&self, k: usize) -> &[Complex64] {
        &self.columns[k]
    }

    pub fn num_users(&self) -> usize {
        self.columns.len()
    }
}

/// Columns of `H (H^H H)^{-1}`, each scaled to unit norm. The scaling keeps
/// `h_j^H p_k = 0` for `j != k` and makes `|h_k^H p_k|^2 ~ Gamma(N_t - K + 1, 1)`.
pub fn zf_columns(h_prev: &ComplexMatrix) -> Result<ComplexMatrix> {
    let ginv = gram_inverse(h_prev)?;
    let mut p = h_prev.matmul(&ginv)?;
    let (rows, cols) = (p.rows(), p.cols());
    for j in 0..cols {
        let norm = (0..rows).map(|i| p[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..rows {
            p[(i, j)] /= norm;
        }
    }
    Ok(p)
}

/// ZF precoders for `h_prev`, plus a common beamformer drawn from `rng`.
/// A singular Gram matrix propagates as [`crate::Error::SingularGram`].
pub fn zf_precoders(h_prev: &ComplexMatrix, rng: &mut RngStream) -> Result<PrecoderSet> {
    let private = zf_columns(h_prev)?;
    let common = isotropic_unit_vector(rng, h_prev.rows())?;
    Ok(PrecoderSet::new(private, common))
}
