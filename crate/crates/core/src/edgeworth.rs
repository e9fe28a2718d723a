//! Four-term Edgeworth density of the standardized statistic and the
//! approximate density of `r` it induces.

use std::f64::consts::PI;

use serde::Serialize;

use crate::delta::{SummaryStats, Transform};
use crate::error::{Error, Result};

/// Smallest sample size a model accepts.
pub const MIN_N: u32 = 5;

fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// `φ(z)·(1 + Γ3·He3/6 + Γ4·He4/24 + Γ3²·He6/72)`.
///
/// Not clipped: the polynomial factor can go negative in the tails.
pub fn edgeworth_pdf_z(z: f64, gamma3: f64, gamma4: f64) -> f64 {
    let z2 = z * z;
    let he3 = z * (z2 - 3.0);
    let he4 = z2 * (z2 - 6.0) + 3.0;
    let he6 = z2 * (z2 * (z2 - 15.0) + 45.0) - 15.0;
    let poly = 1.0 + gamma3 * he3 / 6.0 + gamma4 * he4 / 24.0 + gamma3 * gamma3 * he6 / 72.0;
    std_normal_pdf(z) * poly
}

/// Everything needed to evaluate the approximate density of `G(r)` at one `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeworthModel {
    pub n: u32,
    pub mean: f64,
    pub variance: f64,
    pub gamma3: f64,
    pub gamma4: f64,
    #[serde(serialize_with = "serialize_transform")]
    pub transform: Transform,
    pub include_gamma3: bool,
    pub include_gamma4: bool,
}

fn serialize_transform<S: serde::Serializer>(
    t: &Transform,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.name())
}

/// Evaluates the truncated moments at `n`.
pub fn build_model(
    stats: &SummaryStats,
    n: u32,
    transform: Transform,
    include_gamma3: bool,
    include_gamma4: bool,
) -> Result<EdgeworthModel> {
    if n < MIN_N {
        return Err(Error::Usage(format!("n must be at least {MIN_N}, got {n}")));
    }
    let nf = n as f64;
    let variance = stats.v1 / nf + stats.v2 / (nf * nf);
    if !(variance > 0.0) {
        return Err(Error::Degenerate(format!("variance {variance} at n = {n}")));
    }
    Ok(EdgeworthModel {
        n,
        mean: stats.m0 + stats.m1 / nf,
        variance,
        gamma3: if include_gamma3 {
            stats.g3coef / nf.sqrt()
        } else {
            0.0
        },
        gamma4: if include_gamma4 {
            stats.g4coef / nf
        } else {
            0.0
        },
        transform,
        include_gamma3,
        include_gamma4,
    })
}

impl EdgeworthModel {
    /// Density of the standardized statistic `Z`.
    pub fn pdf_z(&self, z: f64) -> f64 {
        edgeworth_pdf_z(z, self.gamma3, self.gamma4)
    }

    /// `f_Z((G(r) - m)/√V) · G'(r) / √V`.
    pub fn approx_pdf_r(&self, r: f64) -> Result<f64> {
        check_r(r)?;
        let [g, dg, _, _] = self.transform.derivatives(r);
        let sd = self.variance.sqrt();
        Ok(self.pdf_z((g - self.mean) / sd) * dg / sd)
    }
}

fn check_r(r: f64) -> Result<()> {
    if r.is_finite() && r.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("r must lie in (-1, 1), got {r}")))
    }
}

/// Classical Fisher approximation: `arctanh(r)` normal with mean `arctanh(ρ)`
/// and variance `1/(n-3)`.
pub fn basic_fisher_pdf_r(n: u32, rho: f64, r: f64) -> Result<f64> {
    if n < 4 {
        return Err(Error::Usage(format!("n must be at least 4, got {n}")));
    }
    if !(rho.abs() < 1.0) {
        return Err(Error::Usage(format!("rho must lie in (-1, 1), got {rho}")));
    }
    check_r(r)?;
    let sd = (1.0 / (n as f64 - 3.0)).sqrt();
    let z = (r.atanh() - rho.atanh()) / sd;
    Ok(std_normal_pdf(z) / (sd * (1.0 - r * r)))
}

/// An approximate density of `r` selectable from the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum ApproxModel {
    Edgeworth(EdgeworthModel),
    BasicFisher { n: u32, rho: f64 },
}

impl ApproxModel {
    pub fn pdf_r(&self, r: f64) -> Result<f64> {
        match self {
            ApproxModel::Edgeworth(m) => m.approx_pdf_r(r),
            ApproxModel::BasicFisher { n, rho } => basic_fisher_pdf_r(*n, *rho, r),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ApproxModel::Edgeworth(m) => {
                let mut s = format!("edgeworth-{}", m.transform.name());
                if !m.include_gamma3 {
                    s.push_str("-no-gamma3");
                }
                if !m.include_gamma4 {
                    s.push_str("-no-gamma4");
                }
                s
            }
            ApproxModel::BasicFisher { .. } => "basic-fisher".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pdf_z_examples() {
        assert!((edgeworth_pdf_z(0.0, 0.0, 0.0) - 0.398_942_3).abs() < 1e-7);
        // He6(0) = -15
        let expected = 0.398_942_280_401_432_7 * (1.0 - 15.0 * 0.25 / 72.0);
        assert!((edgeworth_pdf_z(0.0, 0.5, 0.0) - expected).abs() < 1e-15);
        assert!((expected - 0.378_164_0).abs() < 1e-7);
        assert!((edgeworth_pdf_z(1.0, 0.0, 0.1) - 0.239_954_3).abs() < 1e-7);
    }

    #[test]
    fn pdf_z_can_be_negative() {
        assert!(edgeworth_pdf_z(-2.5, 0.9, 0.0) < 0.0);
    }

    fn arctanh_stats(rho: f64) -> SummaryStats {
        SummaryStats {
            m0: rho.atanh(),
            m1: rho / 2.0,
            v1: 1.0,
            v2: (6.0 - rho * rho) / 2.0,
            g3coef: 0.0,
            g4coef: 2.0,
        }
    }

    #[test]
    fn build_model_arctanh_point() {
        let rho: f64 = -0.85;
        let m = build_model(&arctanh_stats(rho), 35, Transform::Arctanh, true, true).unwrap();
        assert!((m.mean - (rho.atanh() - 0.85 / 70.0)).abs() < 1e-15);
        assert!((m.variance - (1.0 / 35.0 + (6.0 - 0.7225) / 2450.0)).abs() < 1e-15);
        assert!((m.gamma4 - 2.0 / 35.0).abs() < 1e-15);
        assert_eq!(m.gamma3, 0.0);

        let plain = build_model(&arctanh_stats(rho), 35, Transform::Arctanh, false, false).unwrap();
        assert_eq!((plain.gamma3, plain.gamma4), (0.0, 0.0));
        assert!(build_model(&arctanh_stats(rho), 4, Transform::Arctanh, true, true).is_err());
    }

    #[test]
    fn build_model_rejects_nonpositive_variance() {
        let mut s = arctanh_stats(0.1);
        s.v1 = -1.0;
        s.v2 = 0.0;
        assert!(matches!(
            build_model(&s, 10, Transform::Identity, true, true),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn identity_peak() {
        let s = SummaryStats {
            m0: 0.2,
            m1: 0.0,
            v1: 0.5,
            v2: 0.0,
            g3coef: 0.0,
            g4coef: 0.0,
        };
        let m = build_model(&s, 50, Transform::Identity, true, true).unwrap();
        let peak = m.approx_pdf_r(m.mean).unwrap();
        assert!((peak - 1.0 / (2.0 * PI * m.variance).sqrt()).abs() < 1e-12);
        assert!(matches!(m.approx_pdf_r(1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn basic_fisher_peak_and_errors() {
        let (n, rho) = (20, 0.3_f64);
        let v = basic_fisher_pdf_r(n, rho, rho).unwrap();
        let expected = ((n as f64 - 3.0) / (2.0 * PI)).sqrt() / (1.0 - rho * rho);
        assert!((v - expected).abs() < 1e-12);
        assert!(basic_fisher_pdf_r(3, rho, 0.0).is_err());
        assert!(basic_fisher_pdf_r(n, rho, -1.0).is_err());
    }
}
