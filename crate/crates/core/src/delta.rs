//! Delta-method reduction of a statistic to its truncated summary statistics.
//!
//! A statistic is represented by its Taylor expansion in the deviations of
//! the sample means from their expectations. Expected powers of the expansion
//! (with per-power degree caps 2, 4, 4, 6) give the raw moments as series in
//! `1/n`; those reduce to the mean, variance, skewness and excess kurtosis
//! kept to the orders the four-term Edgeworth density needs.
//!
//! Pearson variables are ordered `(X̄, Ȳ, mean(X²)-1, mean(Y²)-1, mean(XY)-ρ)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{
    cumulants_from_moments, pearson_central_moments_in, CumulantTable, MeanMomentTable,
};
use crate::scalar::{DoubleDouble, Real};
use crate::series::{InvNPoly, MultiIndex, TruncatedTaylor};

/// Number of sample means that make up Pearson's `r`.
pub const PEARSON_DIM: usize = 5;

/// Expansion order of the statistic in the mean deviations.
pub const EXPANSION_CAP: u32 = 3;

/// Degree caps for the expected first four powers.
pub const POWER_CAPS: [u32; 4] = [2, 4, 4, 6];

// Terms kept in the standardized ratio series.
const RATIO_MAX_HALF_POWER: u32 = 6;

/// A smooth, locally monotone map applied to the statistic.
#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    Identity,
    Arctanh,
    /// `offset + scale·x`
    Affine {
        offset: f64,
        scale: f64,
    },
    /// `Σ c_k x^k` with coefficients in increasing degree.
    Polynomial(Vec<f64>),
}

impl Transform {
    pub fn name(&self) -> String {
        match self {
            Transform::Identity => "identity".into(),
            Transform::Arctanh => "arctanh".into(),
            Transform::Affine { offset, scale } => format!("affine({offset},{scale})"),
            Transform::Polynomial(c) => format!("polynomial{c:?}"),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        self.derivatives(x)[0]
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.derivatives(x)[1]
    }

    /// `[G(x), G'(x), G''(x), G'''(x)]`
    pub fn derivatives(&self, x: f64) -> [f64; 4] {
        match self {
            Transform::Identity => [x, 1.0, 0.0, 0.0],
            Transform::Arctanh => {
                let q = 1.0 - x * x;
                [
                    x.atanh(),
                    1.0 / q,
                    2.0 * x / (q * q),
                    (2.0 + 6.0 * x * x) / (q * q * q),
                ]
            }
            Transform::Affine { offset, scale } => [offset + scale * x, *scale, 0.0, 0.0],
            Transform::Polynomial(c) => {
                let mut out = [0.0; 4];
                for (order, slot) in out.iter_mut().enumerate() {
                    // d^order/dx^order of c_k x^k
                    *slot = c
                        .iter()
                        .enumerate()
                        .skip(order)
                        .map(|(k, &ck)| {
                            let falling: f64 = (0..order).map(|j| (k - j) as f64).product();
                            ck * falling * x.powi((k - order) as i32)
                        })
                        .sum();
                }
                out
            }
        }
    }
}

/// A [`Transform`] together with its derivatives at the expansion point.
#[derive(Clone, Debug, PartialEq)]
pub struct OuterTransform {
    transform: Transform,
    at: f64,
    derivs: [f64; 4],
}

impl OuterTransform {
    pub fn new(transform: Transform, at: f64) -> Result<Self> {
        let derivs = transform.derivatives(at);
        if derivs.iter().any(|d| !d.is_finite()) {
            return Err(Error::Domain(format!(
                "{} is not smooth at {at}",
                transform.name()
            )));
        }
        if derivs[1] == 0.0 {
            return Err(Error::Usage(format!(
                "{} has zero slope at {at}",
                transform.name()
            )));
        }
        Ok(OuterTransform {
            transform,
            at,
            derivs,
        })
    }

    pub fn transform(&self) -> &Transform {
        &self.transform
    }

    pub fn name(&self) -> String {
        self.transform.name()
    }

    pub fn at(&self) -> f64 {
        self.at
    }

    pub fn g0(&self) -> f64 {
        self.derivs[0]
    }

    pub fn g1(&self) -> f64 {
        self.derivs[1]
    }

    pub fn g2(&self) -> f64 {
        self.derivs[2]
    }

    pub fn g3(&self) -> f64 {
        self.derivs[3]
    }
}

/// Leading coefficients of the moments of a transformed statistic.
///
/// `m = m0 + m1/n`, `V = v1/n + v2/n²`, `Γ3 = g3coef/√n`, `Γ4 = g4coef/n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SummaryStats {
    pub m0: f64,
    pub m1: f64,
    pub v1: f64,
    pub v2: f64,
    pub g3coef: f64,
    pub g4coef: f64,
}

impl SummaryStats {
    pub fn coefficients(&self) -> [f64; 6] {
        [self.m0, self.m1, self.v1, self.v2, self.g3coef, self.g4coef]
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Usage(format!("rho must lie in (-1, 1), got {rho}")))
    }
}

/// Expansion of Pearson's `r` to third order in the five mean deviations.
///
/// `r = (ρ + δ5 - δ1δ2) · (1 + δ3 - δ1²)^(-1/2) · (1 + δ4 - δ2²)^(-1/2)`.
pub fn pearson_r_expansion(rho: f64) -> Result<TruncatedTaylor> {
    pearson_r_expansion_in(rho)
}

/// [`pearson_r_expansion`] with coefficients in `T`.
pub fn pearson_r_expansion_in<T: Real>(rho: f64) -> Result<TruncatedTaylor<T>> {
    check_rho(rho)?;
    let (d, cap) = (PEARSON_DIM, EXPANSION_CAP);
    let v = |i| TruncatedTaylor::<T>::variable(d, cap, i);
    let (d1, d2, d3, d4, d5) = (v(0)?, v(1)?, v(2)?, v(3)?, v(4)?);

    let numerator = d5
        .try_sub(&d1.try_mul(&d2)?)?
        .add_constant(T::from_f64(rho));
    let ux = d3.try_sub(&d1.try_mul(&d1)?)?;
    let uy = d4.try_sub(&d2.try_mul(&d2)?)?;
    numerator
        .try_mul(&ux.compose_inverse_sqrt()?)?
        .try_mul(&uy.compose_inverse_sqrt()?)
}

/// Expansion of `G(s)` around the constant term `c` of `s`:
/// `g0 + g1·w + g2/2·w² + g3/6·w³` with `w = s - c`.
pub fn apply_outer_transform<T: Real>(
    s: &TruncatedTaylor<T>,
    t: &OuterTransform,
) -> Result<TruncatedTaylor<T>> {
    let c = s.constant_term().to_f64();
    if (c - t.at()).abs() > 1e-12 * (1.0 + c.abs()) {
        return Err(Error::Usage(format!(
            "transform derivatives taken at {}, statistic is centred at {c}",
            t.at()
        )));
    }
    let w = s.without_constant();
    let coeffs = [
        T::from_f64(t.g0()),
        T::from_f64(t.g1()),
        T::from_f64(t.g2()) / T::from_f64(2.0),
        T::from_f64(t.g3()) / T::from_f64(6.0),
    ];
    w.compose_power_series(&coeffs)
}

/// Expected first four powers of `s - s0` as series in `1/n`.
pub fn raw_power_moments<T: Real>(
    s: &TruncatedTaylor<T>,
    mm: &MeanMomentTable<T>,
) -> Result<[InvNPoly<T>; 4]> {
    if s.dim() != mm.dim() {
        return Err(Error::Usage(format!(
            "statistic has {} variables, moment table has {}",
            s.dim(),
            mm.dim()
        )));
    }
    let top = POWER_CAPS[3];
    let w = s.without_constant().with_cap(top);
    let w2 = w.try_mul(&w)?;
    let powers = [
        w.with_cap(POWER_CAPS[0]),
        w2.with_cap(POWER_CAPS[1]),
        w2.with_cap(POWER_CAPS[2])
            .try_mul(&w.with_cap(POWER_CAPS[2]))?,
        w2.try_mul(&w2)?.with_cap(POWER_CAPS[3]),
    ];
    let expect = |poly: &TruncatedTaylor<T>| -> Result<InvNPoly<T>> {
        let mut acc = InvNPoly::zero();
        for (idx, c) in poly.terms() {
            acc = &acc + &mm.get(idx)?.scale(c);
        }
        Ok(acc)
    };
    let [a, b, c, d] = &powers;
    Ok([expect(a)?, expect(b)?, expect(c)?, expect(d)?])
}

/// `numerator / mu2^(k/2)` as a series in `n^(-1/2)`, with `mu2` led by `v1/n`.
fn standardized<T: Real>(
    numerator: &InvNPoly<T>,
    mu2: &InvNPoly<T>,
    k: u32,
    v1: T,
) -> Result<InvNPoly<T>> {
    // mu2 = (v1/n)·(1 + u)
    let u = InvNPoly::from_terms(
        mu2.shift_down(2)?
            .terms()
            .filter(|&(p, _)| p > 0)
            .map(|(p, c)| (p, c / v1)),
    );
    let factor = u.binomial_series(T::from_f64(-(k as f64) / 2.0), RATIO_MAX_HALF_POWER)?;
    let mut scale_by = T::one() / v1.powi(k / 2);
    if k % 2 == 1 {
        scale_by = scale_by / v1.sqrt();
    }
    Ok(numerator
        .shift_down(k)?
        .mul_truncated(&factor, RATIO_MAX_HALF_POWER)
        .scale(scale_by))
}

/// Reduces raw power moments to the leading-order summary statistics.
pub fn summarize<T: Real>(h0: T, p: &[InvNPoly<T>; 4]) -> Result<SummaryStats> {
    let [p1, p2, p3, p4] = p;
    let k = |x: f64| T::from_f64(x);
    let p1sq = p1 * p1;
    let mu2 = p2 - &p1sq;
    let mu3 = &(p3 - &(p2 * p1).scale(k(3.0))) + &(&p1sq * p1).scale(k(2.0));
    let mu4 = &(&(p4 - &(p3 * p1).scale(k(4.0))) + &(p2 * &p1sq).scale(k(6.0)))
        - &(&p1sq * &p1sq).scale(k(3.0));

    let v1 = mu2.coeff_inv_n(1);
    if !(v1 > T::zero()) {
        return Err(Error::Degenerate(format!(
            "leading variance coefficient is {v1}"
        )));
    }
    let skew = standardized(&mu3, &mu2, 3, v1)?;
    let kurt = standardized(&mu4, &mu2, 4, v1)?;
    Ok(SummaryStats {
        m0: h0.to_f64(),
        m1: p1.coeff_inv_n(1).to_f64(),
        v1: v1.to_f64(),
        v2: mu2.coeff_inv_n(2).to_f64(),
        g3coef: skew.coeff(1).to_f64(),
        g4coef: kurt.coeff(2).to_f64(),
    })
}

/// Leading skewness coefficient of `G(r)` for bivariate-normal sampling:
/// `3·G'·((1-ρ²)·G'' - 2ρ·G')`.
pub fn gamma3_functional(g1: f64, g2: f64, rho: f64) -> f64 {
    3.0 * g1 * ((1.0 - rho * rho) * g2 - 2.0 * rho * g1)
}

/// Summary statistics of any statistic given its expansion and the cumulants
/// of the underlying variables.
pub fn statistic_summary<T: Real>(
    s: &TruncatedTaylor<T>,
    ct: &CumulantTable<T>,
) -> Result<SummaryStats> {
    let mm = MeanMomentTable::from_cumulants(ct)?;
    let p = raw_power_moments(s, &mm)?;
    summarize(s.constant_term(), &p)
}

/// Joint cumulants of the five Pearson variables under bivariate-normal sampling.
pub fn pearson_cumulants(rho: f64) -> Result<CumulantTable> {
    pearson_cumulants_in(rho)
}

/// [`pearson_cumulants`] computed in `T`.
pub fn pearson_cumulants_in<T: Real>(rho: f64) -> Result<CumulantTable<T>> {
    cumulants_from_moments(&pearson_central_moments_in(rho)?)
}

/// Expansion of `G(r)` at `ρ`.
pub fn pearson_statistic(transform: &Transform, rho: f64) -> Result<TruncatedTaylor> {
    pearson_statistic_in(transform, rho)
}

/// [`pearson_statistic`] with coefficients in `T`.
pub fn pearson_statistic_in<T: Real>(
    transform: &Transform,
    rho: f64,
) -> Result<TruncatedTaylor<T>> {
    let r = pearson_r_expansion_in(rho)?;
    apply_outer_transform(&r, &OuterTransform::new(transform.clone(), rho)?)
}

/// Raw power moments of `G(r) - G(ρ)`, rounded from double-double.
pub fn pearson_power_moments(transform: &Transform, rho: f64) -> Result<[InvNPoly; 4]> {
    Ok(pearson_power_moments_in::<DoubleDouble>(transform, rho)?.map(|p| p.cast()))
}

/// Raw power moments of `G(r) - G(ρ)` computed in `T`.
pub fn pearson_power_moments_in<T: Real>(
    transform: &Transform,
    rho: f64,
) -> Result<[InvNPoly<T>; 4]> {
    let s = pearson_statistic_in(transform, rho)?;
    let mm = MeanMomentTable::from_cumulants(&pearson_cumulants_in(rho)?)?;
    raw_power_moments(&s, &mm)
}

/// Summary statistics of `G(r)` under bivariate-normal sampling.
///
/// The reduction runs in double-double; see [`crate::scalar`].
pub fn pearson_summary(transform: &Transform, rho: f64) -> Result<SummaryStats> {
    pearson_summary_in::<DoubleDouble>(transform, rho)
}

/// [`pearson_summary`] computed in `T`.
pub fn pearson_summary_in<T: Real>(transform: &Transform, rho: f64) -> Result<SummaryStats> {
    statistic_summary(
        &pearson_statistic_in::<T>(transform, rho)?,
        &pearson_cumulants_in::<T>(rho)?,
    )
}

/// Indices of the five Pearson deviation variables, in order.
pub fn pearson_variable(var: usize) -> MultiIndex {
    MultiIndex::unit(PEARSON_DIM, var)
}
