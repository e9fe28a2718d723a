//! CDFs by quadrature and distances between distributions of `r`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default number of grid points.
pub const DEFAULT_POINTS: usize = 4001;

/// Default distance kept from the endpoints `±1`.
pub const DEFAULT_CLIP: f64 = 1e-6;

/// Cumulative distribution tabulated on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct CdfGrid {
    abscissae: Vec<f64>,
    values: Vec<f64>,
}

impl CdfGrid {
    pub fn new(abscissae: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if abscissae.len() != values.len() || abscissae.len() < 2 {
            return Err(Error::Usage(
                "CDF grid needs matching abscissae and values".into(),
            ));
        }
        if abscissae.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Usage(
                "CDF abscissae must be strictly increasing".into(),
            ));
        }
        Ok(CdfGrid { abscissae, values })
    }

    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// CDF at `x` by linear interpolation; flat outside the grid.
    pub fn value_at(&self, x: f64) -> f64 {
        let xs = &self.abscissae;
        if x <= xs[0] {
            return self.values[0];
        }
        if x >= xs[xs.len() - 1] {
            return self.values[xs.len() - 1];
        }
        let i = xs.partition_point(|&a| a <= x) - 1;
        let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }

    pub fn total(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

/// Uniform grid of `points` abscissae over `[-1 + clip, 1 - clip]`.
pub fn uniform_grid(points: usize, clip: f64) -> Vec<f64> {
    let (lo, hi) = (-1.0 + clip, 1.0 - clip);
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect()
}

/// Integrates `pdf` cumulatively over `[-1 + clip, 1 - clip]` with Simpson's rule.
///
/// Even nodes take full Simpson panels; odd nodes add the half-panel rule
/// `h/12·(5f0 + 8f1 - f2)` to the previous even node.
pub fn cdf_on_grid(pdf: impl Fn(f64) -> f64 + Sync, points: usize, clip: f64) -> Result<CdfGrid> {
    use rayon::prelude::*;

    if points < 1001 {
        return Err(Error::Usage(format!(
            "grid needs at least 1001 points, got {points}"
        )));
    }
    if !(clip > 0.0 && clip <= 1e-4) {
        return Err(Error::Usage(format!(
            "clip must lie in (0, 1e-4], got {clip}"
        )));
    }
    let xs = uniform_grid(points, clip);
    let fs: Vec<f64> = xs.par_iter().map(|&x| pdf(x)).collect();
    if let Some(i) = fs.iter().position(|f| !f.is_finite()) {
        return Err(Error::Numeric(format!(
            "density is {} at r = {}",
            fs[i], xs[i]
        )));
    }
    let h = xs[1] - xs[0];
    let mut values = vec![0.0; points];
    for i in 1..points {
        values[i] = if i % 2 == 0 {
            values[i - 2] + h / 3.0 * (fs[i - 2] + 4.0 * fs[i - 1] + fs[i])
        } else if i + 1 < points {
            values[i - 1] + h / 12.0 * (5.0 * fs[i - 1] + 8.0 * fs[i] - fs[i + 1])
        } else {
            values[i - 1] + h / 12.0 * (-fs[i - 2] + 8.0 * fs[i - 1] + 5.0 * fs[i])
        };
    }
    CdfGrid::new(xs, values)
}

/// Largest difference in probability two distributions assign to any interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntervalError {
    pub error: f64,
    /// Lower end of the maximizing interval.
    pub a: f64,
    /// Upper end of the maximizing interval.
    pub b: f64,
}

/// `max D - min D` for `D = approx - exact` on the shared grid.
///
/// The interval between the arg-min and arg-max of `D` attains it; `a <= b`.
pub fn max_interval_error(approx: &CdfGrid, exact: &CdfGrid) -> Result<IntervalError> {
    if approx.abscissae != exact.abscissae {
        return Err(Error::Usage("CDF grids have different abscissae".into()));
    }
    let (mut imin, mut imax) = (0, 0);
    let mut dmin = f64::INFINITY;
    let mut dmax = f64::NEG_INFINITY;
    for (i, (p, q)) in approx.values.iter().zip(&exact.values).enumerate() {
        let d = p - q;
        if d < dmin {
            dmin = d;
            imin = i;
        }
        if d > dmax {
            dmax = d;
            imax = i;
        }
    }
    let (x1, x2) = (approx.abscissae[imin], approx.abscissae[imax]);
    Ok(IntervalError {
        error: dmax - dmin,
        a: x1.min(x2),
        b: x1.max(x2),
    })
}

/// Two-sided Kolmogorov-Smirnov distance between the ECDF of `sorted` and `cdf`.
pub fn ks_distance(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::Usage("KS distance needs a nonempty sample".into()));
    }
    if sorted.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Usage("KS sample must be sorted".into()));
    }
    let n = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max))
}
