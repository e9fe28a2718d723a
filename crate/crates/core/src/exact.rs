//! Reference distributions for Pearson's `r` under bivariate-normal sampling:
//! Hotelling's exact density and a seeded Monte Carlo sampler.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Replicates drawn from one ChaCha stream.
pub const MC_CHUNK: usize = 4096;

const HYPERGEOMETRIC_MAX_TERMS: usize = 100_000;
const HYPERGEOMETRIC_RTOL: f64 = 1e-14;

/// Natural log of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// Gauss hypergeometric `₂F₁(a, b; c; x)` by direct summation, `0 <= x < 1`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    gauss_2f1_with_terms(a, b, c, x).map(|(v, _)| v)
}

/// Like [`gauss_2f1`], also returning how many terms were summed.
pub fn gauss_2f1_with_terms(a: f64, b: f64, c: f64, x: f64) -> Result<(f64, usize)> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("2F1 needs c > 0, got {c}")));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "2F1 series needs 0 <= x < 1, got {x}"
        )));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..HYPERGEOMETRIC_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        if term.abs() <= HYPERGEOMETRIC_RTOL * sum.abs() {
            return Ok((sum, k + 2));
        }
    }
    Err(Error::Numeric(format!(
        "2F1({a}, {b}; {c}; {x}) did not converge in {HYPERGEOMETRIC_MAX_TERMS} terms"
    )))
}

/// Exact density of the sample correlation of `n` bivariate-normal pairs:
///
/// ```text
/// f(r) = (n-2) Γ(n-1) (1-ρ²)^((n-1)/2) (1-r²)^((n-4)/2)
///        / (√(2π) Γ(n-1/2) (1-ρr)^(n-3/2)) · ₂F₁(1/2, 1/2; n-1/2; (1+ρr)/2)
/// ```
pub fn hotelling_pdf_r(n: u32, rho: f64, r: f64) -> Result<f64> {
    if n < 5 {
        return Err(Error::Domain(format!("n must be at least 5, got {n}")));
    }
    if !(rho.abs() < 1.0) {
        return Err(Error::Domain(format!("rho must lie in (-1, 1), got {rho}")));
    }
    if !(r.abs() < 1.0) {
        return Err(Error::Domain(format!("r must lie in (-1, 1), got {r}")));
    }
    let nf = n as f64;
    let log_prefactor = (nf - 2.0).ln() + log_gamma(nf - 1.0)?
        - 0.5 * (2.0 * std::f64::consts::PI).ln()
        - log_gamma(nf - 0.5)?
        + 0.5 * (nf - 1.0) * (1.0 - rho * rho).ln()
        + 0.5 * (nf - 4.0) * (1.0 - r * r).ln()
        - (nf - 1.5) * (1.0 - rho * r).ln();
    let hyp = gauss_2f1(0.5, 0.5, nf - 0.5, 0.5 * (1.0 + rho * r))?;
    Ok(log_prefactor.exp() * hyp)
}

/// Monte Carlo run parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McConfig {
    pub n: u32,
    pub rho: f64,
    pub replicates: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Usage(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.replicates == 0 {
            return Err(Error::Usage("replicates must be positive".into()));
        }
        if !(self.rho.abs() < 1.0) {
            return Err(Error::Usage(format!(
                "rho must lie in (-1, 1), got {}",
                self.rho
            )));
        }
        Ok(())
    }
}

/// Sample correlations of `cfg.replicates` independent bivariate-normal samples.
///
/// Pairs are `X = Z1`, `Y = ρ·Z1 + √(1-ρ²)·Z2` with standard normals from
/// ChaCha8. Replicates are split into chunks of [`MC_CHUNK`]; chunk `i` uses
/// the generator seeded with `cfg.seed` on stream `i`, so the output depends
/// only on the config and never on thread scheduling.
pub fn mc_sample_r(cfg: &McConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let chunks = cfg.replicates.div_ceil(MC_CHUNK);
    let per_chunk: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(chunk as u64);
            let count = MC_CHUNK.min(cfg.replicates - chunk * MC_CHUNK);
            let mut xs = vec![0.0; cfg.n as usize];
            let mut ys = vec![0.0; cfg.n as usize];
            (0..count)
                .map(|_| draw_r(&mut rng, cfg.rho, &mut xs, &mut ys))
                .collect()
        })
        .collect();
    Ok(per_chunk.into_iter().flatten().collect())
}

fn draw_r(rng: &mut ChaCha8Rng, rho: f64, xs: &mut [f64], ys: &mut [f64]) -> f64 {
    let tail = (1.0 - rho * rho).sqrt();
    for (x, y) in xs.iter_mut().zip(ys.iter_mut()) {
        let z1: f64 = StandardNormal.sample(rng);
        let z2: f64 = StandardNormal.sample(rng);
        *x = z1;
        *y = rho * z1 + tail * z2;
    }
    sample_correlation(xs, ys)
}

/// Plug-in Pearson correlation of paired samples, clamped to `[-1, 1]`.
pub fn sample_correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}
