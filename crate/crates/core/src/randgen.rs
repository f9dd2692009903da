//! Counter-based random streams and the variates the simulator needs.
//!
//! Every Monte Carlo trial owns an [`RngStream`] keyed by `(seed, trial)`, so
//! trials can run in any order, on any number of workers, and still produce
//! identical results.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::gamma_approx::GammaParams;
use crate::numerics::ComplexVector;

/// ChaCha8 keyed by the master seed, with the trial index as the stream id.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { rng }
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// One `CN(0, 1)` draw: real and imaginary parts each `N(0, 1/2)`.
    #[inline]
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let re: f64 = StandardNormal.sample(&mut self.rng);
        let im: f64 = StandardNormal.sample(&mut self.rng);
        Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
    }

    pub(crate) fn fill_complex_gaussian(&mut self, out: &mut [Complex64]) {
        for z in out {
            *z = self.complex_gaussian();
        }
    }

    pub(crate) fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// `n` i.i.d. `CN(0, 1)` entries.
pub fn complex_gaussian_vector(rng: &mut RngStream, n: usize) -> Result<ComplexVector> {
    if n == 0 {
        return Err(Error::invalid("vector length must be at least 1"));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    rng.fill_complex_gaussian(&mut v);
    Ok(ComplexVector::from_vec_unchecked(v))
}

/// Unit-norm vector uniformly distributed on the complex sphere in `C^n`.
pub fn isotropic_unit_vector(rng: &mut RngStream, n: usize) -> Result<ComplexVector> {
    if n == 0 {
        return Err(Error::invalid("vector length must be at least 1"));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    loop {
        rng.fill_complex_gaussian(&mut v);
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 0.0 {
            for z in &mut v {
                *z /= norm;
            }
            return Ok(ComplexVector::from_vec_unchecked(v));
        }
    }
}

/// Sampler for `Gamma(D, Theta)` (Marsaglia-Tsang, with the `D < 1` boost).
#[derive(Debug, Clone, Copy)]
pub struct GammaSampler(Gamma<f64>);

impl GammaSampler {
    pub fn new(params: &GammaParams) -> Result<Self> {
        Gamma::new(params.shape(), params.scale()).map(Self).map_err(|e| Error::invalid(format!("gamma sampler: {e}")))
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        self.0.sample(rng.inner())
    }
}

/// A single `Gamma(D, Theta)` draw.
pub fn gamma_variate(rng: &mut RngStream, params: &GammaParams) -> Result<f64> {
    Ok(GammaSampler::new(params)?.sample(rng))
}

/// `n` draws from `Gamma(D, Theta)` on one stream.
pub fn gamma_variates(rng: &mut RngStream, params: &GammaParams, n: usize) -> Result<Vec<f64>> {
    let sampler = GammaSampler::new(params)?;
    Ok((0..n).map(|_| sampler.sample(rng)).collect())
}
