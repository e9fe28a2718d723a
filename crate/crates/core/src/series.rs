//! Degree-capped multivariate polynomials and half-power series in `1/n`.
//!
//! A [`TruncatedTaylor`] holds a polynomial in `d` deviation variables whose
//! monomials never exceed a fixed total degree. The total degree of a monomial
//! doubles as its order in the small-deviation bookkeeping parameter, so
//! truncating by degree is the same as truncating the expansion order.
//!
//! An [`InvNPoly`] is a finite sum `Σ c_p · n^(-p/2)` and carries every
//! expansion in the sample size.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Exponent vector over the deviation variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// Index of the single variable `var` raised to the first power.
    pub fn unit(dim: usize, var: usize) -> Self {
        let mut e = vec![0; dim];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Multiset of variable labels, e.g. `(2,1,1)` becomes `[0, 0, 1, 2]`.
    pub fn labels(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(var, &e)| std::iter::repeat_n(var, e as usize))
            .collect()
    }

    /// Inverse of [`MultiIndex::labels`].
    pub fn from_labels(dim: usize, labels: impl IntoIterator<Item = usize>) -> Self {
        let mut e = vec![0; dim];
        for l in labels {
            e[l] += 1;
        }
        MultiIndex(e)
    }

    fn combine(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Every index of dimension `dim` with total degree exactly `order`.
    pub fn all_of_order(dim: usize, order: u32) -> Vec<MultiIndex> {
        fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, left: u32) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                fill(out, cur, pos + 1, left - e);
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            if order == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        fill(&mut out, &mut vec![0; dim], 0, order);
        out
    }

    /// Value of the monomial at `point`.
    pub fn monomial<T: Real>(&self, point: &[T]) -> T {
        self.0
            .iter()
            .zip(point)
            .fold(T::one(), |acc, (&e, &x)| acc * x.powi(e))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Parses `"2,1,1"` or `"(2,1,1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Err(Error::Usage(format!("empty multi-index {s:?}")));
        }
        body.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Usage(format!("bad multi-index entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Polynomial in `dim` variables with every monomial of total degree at most `cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedTaylor<T: Real = f64> {
    dim: usize,
    cap: u32,
    terms: BTreeMap<MultiIndex, T>,
}

impl<T: Real> TruncatedTaylor<T> {
    pub fn zero(dim: usize, cap: u32) -> Self {
        TruncatedTaylor {
            dim,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, cap: u32, value: T) -> Self {
        let mut p = Self::zero(dim, cap);
        p.insert(MultiIndex::zero(dim), value);
        p
    }

    /// The deviation variable `var` itself.
    pub fn variable(dim: usize, cap: u32, var: usize) -> Result<Self> {
        if var >= dim {
            return Err(Error::Usage(format!(
                "variable {var} out of range for dimension {dim}"
            )));
        }
        let mut p = Self::zero(dim, cap);
        p.insert(MultiIndex::unit(dim, var), T::one());
        Ok(p)
    }

    /// Builds a polynomial from explicit terms; monomials above `cap` are dropped.
    pub fn from_terms(
        dim: usize,
        cap: u32,
        terms: impl IntoIterator<Item = (MultiIndex, T)>,
    ) -> Result<Self> {
        let mut p = Self::zero(dim, cap);
        for (idx, c) in terms {
            if idx.dim() != dim {
                return Err(Error::Usage(format!(
                    "term {idx} has dimension {}, expected {dim}",
                    idx.dim()
                )));
            }
            p.insert(idx, c);
        }
        Ok(p)
    }

    fn insert(&mut self, idx: MultiIndex, c: T) {
        if c.is_zero() || idx.order() > self.cap {
            return;
        }
        let slot = self.terms.entry(idx).or_insert_with(T::zero);
        *slot += c;
    }

    fn prune(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeff(&self, idx: &MultiIndex) -> T {
        self.terms.get(idx).copied().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, T)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    /// Same polynomial with a different degree cap; lowering the cap drops terms.
    pub fn with_cap(&self, cap: u32) -> Self {
        TruncatedTaylor {
            dim: self.dim,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.order() <= cap)
                .map(|(k, &v)| (k.clone(), v))
                .collect(),
        }
    }

    /// Copy with the constant term removed.
    pub fn without_constant(&self) -> Self {
        let mut p = self.clone();
        p.terms.remove(&MultiIndex::zero(self.dim));
        p
    }

    pub fn scale(&self, factor: T) -> Self {
        let mut p = Self::zero(self.dim, self.cap);
        for (k, &v) in &self.terms {
            p.insert(k.clone(), v * factor);
        }
        p
    }

    pub fn add_constant(&self, value: T) -> Self {
        let mut p = self.clone();
        p.insert(MultiIndex::zero(self.dim), value);
        p.prune()
    }

    /// Coefficients converted to another scalar type.
    pub fn cast<U: Real>(&self) -> TruncatedTaylor<U> {
        TruncatedTaylor {
            dim: self.dim,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|(k, &v)| (k.clone(), U::from_f64(v.to_f64())))
                .collect(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Usage(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        if self.cap != other.cap {
            return Err(Error::Usage(format!(
                "degree cap mismatch: {} vs {}",
                self.cap, other.cap
            )));
        }
        Ok(())
    }

    /// Coefficient-wise sum. Both operands must share dimension and cap.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut p = self.clone();
        for (k, &v) in &other.terms {
            p.insert(k.clone(), v);
        }
        Ok(p.prune())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(-T::one()))
    }

    /// Truncated product; the result cap is the smaller of the two caps.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Usage(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        let cap = self.cap.min(other.cap);
        let mut p = Self::zero(self.dim, cap);
        for (ka, &va) in &self.terms {
            let oa = ka.order();
            if oa > cap {
                continue;
            }
            for (kb, &vb) in &other.terms {
                if oa + kb.order() <= cap {
                    p.insert(ka.combine(kb), va * vb);
                }
            }
        }
        Ok(p.prune())
    }

    /// `self^k` truncated at the cap.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.dim, self.cap, T::one());
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same dimension");
        }
        acc
    }

    /// `Σ coeffs[k] · self^k`, truncated at the cap. `self` must have no constant term.
    pub fn compose_power_series(&self, coeffs: &[T]) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(Error::Usage(format!(
                "series composition needs a zero constant term, got {c0}"
            )));
        }
        let mut out = Self::zero(self.dim, self.cap);
        let mut power = Self::constant(self.dim, self.cap, T::one());
        for (k, &c) in coeffs.iter().enumerate() {
            // u^k has no monomial below degree k.
            if k as u32 > self.cap {
                break;
            }
            if k > 0 {
                power = power.try_mul(self)?;
            }
            out = out.try_add(&power.scale(c))?;
        }
        Ok(out)
    }

    /// Truncated expansion of `(1 + self)^(-1/2)`.
    pub fn compose_inverse_sqrt(&self) -> Result<Self> {
        let coeffs = binomial_coefficients(-T::one() / T::from_f64(2.0), self.cap as usize);
        self.compose_power_series(&coeffs)
    }

    /// Numeric value at a point.
    pub fn eval(&self, point: &[T]) -> Result<T> {
        if point.len() != self.dim {
            return Err(Error::Usage(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.dim
            )));
        }
        let mut acc = T::zero();
        for (k, &v) in &self.terms {
            acc += v * k.monomial(point);
        }
        Ok(acc)
    }
}

/// Generalized binomial coefficients `C(alpha, k)` for `k = 0..=max_k`.
pub fn binomial_coefficients<T: Real>(alpha: T, max_k: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(max_k + 1);
    let mut c = T::one();
    for k in 0..=max_k {
        out.push(c);
        let kf = T::from_f64(k as f64);
        c = c * (alpha - kf) / (kf + T::one());
    }
    out
}

/// Finite sum `Σ c_p · n^(-p/2)` keyed by the half-power `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvNPoly<T: Real = f64> {
    terms: BTreeMap<u32, T>,
}

impl<T: Real> Default for InvNPoly<T> {
    fn default() -> Self {
        InvNPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Real> InvNPoly<T> {
    pub fn zero() -> Self {
        InvNPoly::default()
    }

    pub fn constant(c: T) -> Self {
        Self::term(0, c)
    }

    /// Single term `c · n^(-half_power/2)`.
    pub fn term(half_power: u32, c: T) -> Self {
        let mut p = InvNPoly::zero();
        p.add_term(half_power, c);
        p
    }

    /// Single term `c / n^k`.
    pub fn inv_n_pow(k: u32, c: T) -> Self {
        Self::term(2 * k, c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, T)>) -> Self {
        let mut p = InvNPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, half_power: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(half_power).or_insert_with(T::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&half_power);
        }
    }

    /// Coefficient of `n^(-half_power/2)`.
    pub fn coeff(&self, half_power: u32) -> T {
        self.terms.get(&half_power).copied().unwrap_or_else(T::zero)
    }

    /// Coefficient of `1/n^k`.
    pub fn coeff_inv_n(&self, k: u32) -> T {
        self.coeff(2 * k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, T)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn max_half_power(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficients converted to another scalar type.
    pub fn cast<U: Real>(&self) -> InvNPoly<U> {
        InvNPoly::from_terms(self.terms().map(|(k, v)| (k, U::from_f64(v.to_f64()))))
    }

    /// Drops every term beyond `max_half_power`.
    pub fn truncate(&self, max_half_power: u32) -> Self {
        InvNPoly {
            terms: self
                .terms
                .range(..=max_half_power)
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    pub fn scale(&self, factor: T) -> Self {
        InvNPoly::from_terms(self.terms().map(|(k, v)| (k, v * factor)))
    }

    /// Multiplies by `n^(half_powers/2)`; fails if any term would get a negative power.
    pub fn shift_down(&self, half_powers: u32) -> Result<Self> {
        if let Some((&k, _)) = self
            .terms
            .iter()
            .find(|(&k, v)| k < half_powers && !v.is_zero())
        {
            return Err(Error::Usage(format!(
                "cannot divide n^(-{k}/2) term by n^(-{half_powers}/2)"
            )));
        }
        Ok(InvNPoly::from_terms(
            self.terms()
                .filter(|&(k, _)| k >= half_powers)
                .map(|(k, v)| (k - half_powers, v)),
        ))
    }

    /// Product truncated at `max_half_power`.
    pub fn mul_truncated(&self, other: &Self, max_half_power: u32) -> Self {
        let mut out = InvNPoly::zero();
        for (&ka, &va) in self.terms.range(..=max_half_power) {
            for (&kb, &vb) in other.terms.range(..=max_half_power - ka) {
                out.add_term(ka + kb, va * vb);
            }
        }
        out
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = InvNPoly::constant(T::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Truncated `(1 + self)^alpha`; `self` must have no `n^0` term.
    pub fn binomial_series(&self, alpha: T, max_half_power: u32) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Usage(
                "binomial series needs a vanishing n^0 term".into(),
            ));
        }
        let coeffs = binomial_coefficients(alpha, max_half_power as usize);
        let mut out = InvNPoly::zero();
        let mut power = InvNPoly::constant(T::one());
        for (k, &c) in coeffs.iter().enumerate() {
            if k > 0 {
                power = power.mul_truncated(self, max_half_power);
            }
            if power.is_empty() {
                break;
            }
            out = &out + &power.scale(c);
        }
        Ok(out)
    }

    /// Numeric value at sample size `n`.
    pub fn eval(&self, n: f64) -> Result<f64> {
        if !(n > 0.0) {
            return Err(Error::Usage(format!(
                "sample size must be positive, got {n}"
            )));
        }
        let step = T::one() / T::from_f64(n).sqrt();
        let mut acc = T::zero();
        for (k, c) in self.terms() {
            acc += c * step.powi(k);
        }
        Ok(acc.to_f64())
    }
}

impl<T: Real> Add for &InvNPoly<T> {
    type Output = InvNPoly<T>;

    fn add(self, rhs: &InvNPoly<T>) -> InvNPoly<T> {
        let mut out = self.clone();
        for (k, v) in rhs.terms() {
            out.add_term(k, v);
        }
        out
    }
}

impl<T: Real> Sub for &InvNPoly<T> {
    type Output = InvNPoly<T>;

    fn sub(self, rhs: &InvNPoly<T>) -> InvNPoly<T> {
        self + &(-rhs)
    }
}

impl<T: Real> Neg for &InvNPoly<T> {
    type Output = InvNPoly<T>;

    fn neg(self) -> InvNPoly<T> {
        self.scale(-T::one())
    }
}

impl<T: Real> Mul for &InvNPoly<T> {
    type Output = InvNPoly<T>;

    fn mul(self, rhs: &InvNPoly<T>) -> InvNPoly<T> {
        let mut out = InvNPoly::zero();
        for (ka, va) in self.terms() {
            for (kb, vb) in rhs.terms() {
                out.add_term(ka + kb, va * vb);
            }
        }
        out
    }
}

impl<T: Real> fmt::Display for InvNPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                k if k % 2 == 0 => write!(f, "{c}/n^{}", k / 2)?,
                k => write!(f, "{c}/n^({k}/2)")?,
            }
        }
        Ok(())
    }
}

/// Serialized as `{"<half_power>": coefficient}`.
impl<T: Real> Serialize for InvNPoly<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, f64> = self
            .terms()
            .map(|(k, v)| (k.to_string(), v.to_f64()))
            .collect();
        map.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn x(dim: usize, cap: u32, var: usize) -> TruncatedTaylor {
        TruncatedTaylor::variable(dim, cap, var).unwrap()
    }

    #[test]
    fn add_identity_and_doubling() {
        let a = x(2, 3, 0)
            .try_add(&TruncatedTaylor::constant(2, 3, 0.5))
            .unwrap();
        assert_eq!(a.try_add(&TruncatedTaylor::zero(2, 3)).unwrap(), a);
        let twice: TruncatedTaylor = x(2, 3, 0).try_add(&x(2, 3, 0)).unwrap();
        assert_eq!(twice.coeff(&idx(&[1, 0])), 2.0);
        assert_eq!(twice.terms().count(), 1);
    }

    #[test]
    fn add_rejects_shape_mismatch() {
        assert!(matches!(
            x(2, 3, 0).try_add(&x(3, 3, 0)),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            x(2, 3, 0).try_add(&x(2, 2, 0)),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            x(2, 3, 0).try_mul(&x(3, 3, 0)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn mul_examples() {
        let one = TruncatedTaylor::constant(1, 2, 1.0);
        let x1 = x(1, 2, 0);
        let p = one
            .try_add(&x1)
            .unwrap()
            .try_mul(&one.try_sub(&x1).unwrap())
            .unwrap();
        assert_eq!(p.coeff(&idx(&[0])), 1.0);
        assert_eq!(p.coeff(&idx(&[1])), 0.0);
        assert_eq!(p.coeff(&idx(&[2])), -1.0);

        let s = x(2, 2, 0).try_add(&x(2, 2, 1)).unwrap();
        let sq = s.try_mul(&s).unwrap();
        assert_eq!(sq.coeff(&idx(&[2, 0])), 1.0);
        assert_eq!(sq.coeff(&idx(&[1, 1])), 2.0);
        assert_eq!(sq.coeff(&idx(&[0, 2])), 1.0);
        assert_eq!(sq.terms().count(), 3);

        let x1sq = x1.try_mul(&x1).unwrap();
        assert!(x1.try_mul(&x1sq).unwrap().is_zero());
    }

    #[test]
    fn mul_uses_smaller_cap() {
        let p = x(1, 5, 0).try_mul(&x(1, 2, 0)).unwrap();
        assert_eq!(p.cap(), 2);
        assert_eq!(p.coeff(&idx(&[2])), 1.0);
    }

    #[test]
    fn inverse_sqrt_coefficients() {
        let zero = TruncatedTaylor::zero(1, 3);
        let r = zero.compose_inverse_sqrt().unwrap();
        assert_eq!(r, TruncatedTaylor::constant(1, 3, 1.0));

        let r = x(1, 3, 0).compose_inverse_sqrt().unwrap();
        let expected = [1.0, -0.5, 3.0 / 8.0, -5.0 / 16.0];
        for (k, e) in expected.iter().enumerate() {
            assert!((r.coeff(&idx(&[k as u32])) - e).abs() < 1e-15);
        }
        let v = r.eval(&[0.01]).unwrap();
        assert!((v - 1.01f64.powf(-0.5)).abs() < 1e-8);
    }

    #[test]
    fn inverse_sqrt_rejects_constant() {
        let u = x(1, 3, 0).add_constant(0.2);
        assert!(matches!(u.compose_inverse_sqrt(), Err(Error::Usage(_))));
    }

    #[test]
    fn invn_examples() {
        let inv_n = InvNPoly::inv_n_pow(1, 1.0);
        assert_eq!(&inv_n * &inv_n, InvNPoly::inv_n_pow(2, 1.0));
        let p = &inv_n + &InvNPoly::inv_n_pow(2, 5.0);
        assert_eq!(p.truncate(2), inv_n);
        let q = &inv_n + &InvNPoly::inv_n_pow(2, 1.0);
        assert!((q.eval(10.0).unwrap() - 0.11).abs() < 1e-15);
        assert!(matches!(q.eval(0.0), Err(Error::Usage(_))));
        assert!(matches!(q.eval(-3.0), Err(Error::Usage(_))));
    }

    #[test]
    fn invn_shift_and_binomial() {
        let p = InvNPoly::from_terms([(4, 2.0), (6, 1.0)]);
        assert_eq!(
            p.shift_down(3).unwrap(),
            InvNPoly::from_terms([(1, 2.0), (3, 1.0)])
        );
        assert!(p.shift_down(5).is_err());

        // (1 + 1/n)^(-2) = 1 - 2/n + 3/n^2 - ...
        let s = InvNPoly::inv_n_pow(1, 1.0)
            .binomial_series(-2.0, 4)
            .unwrap();
        assert_eq!(s.coeff(0), 1.0);
        assert_eq!(s.coeff(2), -2.0);
        assert_eq!(s.coeff(4), 3.0);
        assert_eq!(s.max_half_power(), Some(4));
    }

    #[test]
    fn multi_index_parse_and_labels() {
        let i: MultiIndex = "2,1,1".parse().unwrap();
        assert_eq!(i, idx(&[2, 1, 1]));
        assert_eq!("(0, 3)".parse::<MultiIndex>().unwrap(), idx(&[0, 3]));
        assert!("2,x".parse::<MultiIndex>().is_err());
        assert!("".parse::<MultiIndex>().is_err());
        assert_eq!(i.labels(), vec![0, 0, 1, 2]);
        assert_eq!(MultiIndex::from_labels(3, i.labels()), i);
        assert_eq!(i.to_string(), "(2,1,1)");
        // C(order + dim - 1, dim - 1)
        assert_eq!(MultiIndex::all_of_order(5, 6).len(), 210);
    }
}
