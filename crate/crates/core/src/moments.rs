//! Joint central moments, cumulants, and moments of sample means.
//!
//! Sample-mean moments come from the cumulant route: the joint cumulant of
//! sample means over an index multiset `S` is `κ_S · n^(1 - |S|)`, and the
//! moment is the sum over set partitions of products of block cumulants.
//! For centered variables every partition with a singleton block vanishes.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::{InvNPoly, MultiIndex};

/// Highest moment order the engine tracks.
pub const MAX_ORDER: u32 = 6;

/// A set partition of `{0, .., k-1}` as a list of blocks.
pub type Partition = Vec<Vec<usize>>;

/// All set partitions of a `k`-element set, `k <= MAX_ORDER`.
///
/// Built once via restricted growth strings; there are 203 for `k = 6`.
pub fn set_partitions(k: usize) -> &'static [Partition] {
    static CACHE: OnceLock<Vec<Vec<Partition>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=MAX_ORDER as usize).map(enumerate_partitions).collect());
    &cache[k]
}

fn enumerate_partitions(k: usize) -> Vec<Partition> {
    fn grow(rgs: &mut Vec<usize>, k: usize, out: &mut Vec<Partition>) {
        if rgs.len() == k {
            let blocks = rgs.iter().max().map_or(0, |m| m + 1);
            let mut p = vec![Vec::new(); blocks];
            for (elem, &b) in rgs.iter().enumerate() {
                p[b].push(elem);
            }
            out.push(p);
            return;
        }
        let next = rgs.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            rgs.push(b);
            grow(rgs, k, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::with_capacity(k), k, &mut out);
    out
}

fn factorial<T: Real>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, i| acc * T::from_f64(i as f64))
}

/// Lookup of joint quantities keyed by every multi-index of order 2..=max_order.
#[derive(Clone, Debug, PartialEq)]
struct IndexTable<T: Real> {
    dim: usize,
    max_order: u32,
    entries: BTreeMap<MultiIndex, T>,
}

impl<T: Real> IndexTable<T> {
    fn from_fn(
        dim: usize,
        max_order: u32,
        mut f: impl FnMut(&MultiIndex) -> Result<T>,
    ) -> Result<Self> {
        if max_order > MAX_ORDER {
            return Err(Error::UnsupportedOrder(max_order));
        }
        let mut entries = BTreeMap::new();
        for order in 2..=max_order {
            for idx in MultiIndex::all_of_order(dim, order) {
                let v = f(&idx)?;
                entries.insert(idx, v);
            }
        }
        Ok(IndexTable {
            dim,
            max_order,
            entries,
        })
    }

    fn from_entries(dim: usize, max_order: u32, entries: BTreeMap<MultiIndex, T>) -> Result<Self> {
        if let Some(bad) = entries.keys().find(|k| k.dim() != dim) {
            return Err(Error::Usage(format!(
                "entry {bad} does not have dimension {dim}"
            )));
        }
        Self::from_fn(dim, max_order, |idx| {
            entries
                .get(idx)
                .copied()
                .ok_or_else(|| Error::IncompleteTable(idx.to_string()))
        })
    }

    fn get(&self, idx: &MultiIndex) -> Result<T> {
        if idx.dim() != self.dim {
            return Err(Error::Usage(format!(
                "index {idx} does not have dimension {}",
                self.dim
            )));
        }
        match idx.order() {
            0 | 1 => unreachable!("order 0/1 entries are resolved by the wrappers"),
            o if o > self.max_order => Err(Error::UnsupportedOrder(o)),
            _ => self
                .entries
                .get(idx)
                .copied()
                .ok_or_else(|| Error::IncompleteTable(idx.to_string())),
        }
    }

    /// Value of the block of `labels` picked out by `block`.
    fn block(&self, labels: &[usize], block: &[usize]) -> Result<T> {
        self.get(&MultiIndex::from_labels(
            self.dim,
            block.iter().map(|&i| labels[i]),
        ))
    }
}

/// Central moments `μ_S = E[Π (X_i - μ_i)^{s_i}]` of the underlying variables.
///
/// Order-0 entries are 1 and order-1 entries 0 implicitly.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable<T: Real = f64>(IndexTable<T>);

/// Joint cumulants `κ_S`, same layout as [`MomentTable`].
#[derive(Clone, Debug, PartialEq)]
pub struct CumulantTable<T: Real = f64>(IndexTable<T>);

macro_rules! table_accessors {
    ($ty:ident, $zero_order:expr) => {
        impl<T: Real> $ty<T> {
            /// Fills every index of order 2..=max_order from `f`.
            pub fn from_fn(
                dim: usize,
                max_order: u32,
                f: impl FnMut(&MultiIndex) -> Result<T>,
            ) -> Result<Self> {
                IndexTable::from_fn(dim, max_order, f).map($ty)
            }

            /// Builds a table from explicit entries; every index of order
            /// 2..=max_order must be present.
            pub fn from_entries(
                dim: usize,
                max_order: u32,
                entries: BTreeMap<MultiIndex, T>,
            ) -> Result<Self> {
                IndexTable::from_entries(dim, max_order, entries).map($ty)
            }

            pub fn dim(&self) -> usize {
                self.0.dim
            }

            pub fn max_order(&self) -> u32 {
                self.0.max_order
            }

            pub fn get(&self, idx: &MultiIndex) -> Result<T> {
                match idx.order() {
                    0 => Ok(T::from_f64($zero_order)),
                    1 => Ok(T::zero()),
                    _ => self.0.get(idx),
                }
            }

            /// Stored entries, order 2 and above.
            pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, T)> {
                self.0.entries.iter().map(|(k, &v)| (k, v))
            }

            /// Entries converted to another scalar type.
            pub fn cast<U: Real>(&self) -> $ty<U> {
                $ty(IndexTable {
                    dim: self.0.dim,
                    max_order: self.0.max_order,
                    entries: self
                        .0
                        .entries
                        .iter()
                        .map(|(k, &v)| (k.clone(), U::from_f64(v.to_f64())))
                        .collect(),
                })
            }
        }
    };
}

table_accessors!(MomentTable, 1.0);
table_accessors!(CumulantTable, 0.0);

impl<T: Real> CumulantTable<T> {
    /// Copy with every cumulant above `max_kept_order` set to zero.
    pub fn zero_above(&self, max_kept_order: u32) -> Self {
        let mut t = self.clone();
        for (k, v) in t.0.entries.iter_mut() {
            if k.order() > max_kept_order {
                *v = T::zero();
            }
        }
        t
    }
}

/// Raw product moment `E[X^a Y^b]` of a standard bivariate normal with correlation `rho`.
///
/// Uses `E[X^a Y^b] = (a-1) E[X^(a-2) Y^b] + rho·b·E[X^(a-1) Y^(b-1)]`, with
/// `E[Y^b] = (b-1)!!` for even `b`.
pub fn gaussian_xy_moment(a: i32, b: i32, rho: f64) -> Result<f64> {
    if a < 0 || b < 0 {
        return Err(Error::Usage(format!(
            "moment exponents must be non-negative, got ({a}, {b})"
        )));
    }
    let (a, b) = (a as usize, b as usize);
    Ok(gaussian_moment_table(a, b, rho)[a][b])
}

/// `table[i][j] = E[X^i Y^j]` for `i <= a`, `j <= b`.
fn gaussian_moment_table<T: Real>(a: usize, b: usize, rho: T) -> Vec<Vec<T>> {
    let int = |k: usize| T::from_f64(k as f64);
    let mut table = vec![vec![T::zero(); b + 1]; a + 1];
    for j in (0..=b).step_by(2) {
        table[0][j] = if j == 0 {
            T::one()
        } else {
            int(j - 1) * table[0][j - 2]
        };
    }
    for i in 1..=a {
        for j in 0..=b {
            let mut v = T::zero();
            if i >= 2 {
                v += int(i - 1) * table[i - 2][j];
            }
            if j >= 1 {
                v += rho * int(j) * table[i - 1][j - 1];
            }
            table[i][j] = v;
        }
    }
    table
}

fn binomial<T: Real>(n: u32, k: u32) -> T {
    // Integer-valued, exact in f64 for the orders used here.
    T::from_f64(
        (0..k)
            .fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
            .round(),
    )
}

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Usage(format!("rho must lie in (-1, 1), got {rho}")))
    }
}

/// Central moments of `(X, Y, X²-1, Y²-1, XY-ρ)` for a standard bivariate normal.
///
/// Each entry expands the powers of the three quadratic variables binomially
/// into raw product moments.
pub fn pearson_central_moments(rho: f64) -> Result<MomentTable> {
    pearson_central_moments_in(rho)
}

/// [`pearson_central_moments`] computed in the scalar type `T`.
pub fn pearson_central_moments_in<T: Real>(rho: f64) -> Result<MomentTable<T>> {
    check_rho(rho)?;
    let max_raw = 2 * MAX_ORDER as usize;
    let raw = gaussian_moment_table(max_raw, max_raw, T::from_f64(rho));
    let sign = |k: u32| {
        if k.is_multiple_of(2) {
            T::one()
        } else {
            -T::one()
        }
    };
    let minus_rho = T::from_f64(-rho);
    MomentTable::from_fn(5, MAX_ORDER, |idx| {
        let e = idx.exponents();
        let (a, b, c, d, f) = (e[0], e[1], e[2], e[3], e[4]);
        let mut total = T::zero();
        for i in 0..=c {
            let ci = binomial::<T>(c, i) * sign(c - i);
            for j in 0..=d {
                let cj = binomial::<T>(d, j) * sign(d - j);
                for k in 0..=f {
                    let ck = binomial::<T>(f, k) * minus_rho.powi(f - k);
                    let px = (a + 2 * i + k) as usize;
                    let py = (b + 2 * j + k) as usize;
                    total += ci * cj * ck * raw[px][py];
                }
            }
        }
        Ok(total)
    })
}

/// `κ_S = Σ_π (-1)^(|π|-1) (|π|-1)! Π_B μ_B` over set partitions of `S`.
pub fn cumulants_from_moments<T: Real>(mt: &MomentTable<T>) -> Result<CumulantTable<T>> {
    CumulantTable::from_fn(mt.dim(), mt.max_order(), |idx| {
        let labels = idx.labels();
        let mut total = T::zero();
        'partition: for p in set_partitions(labels.len()) {
            let mut prod = T::one();
            for block in p {
                if block.len() == 1 {
                    continue 'partition;
                }
                prod = prod * mt.0.block(&labels, block)?;
            }
            let blocks = p.len();
            let weight: T = factorial(blocks - 1);
            total += if blocks % 2 == 1 {
                weight * prod
            } else {
                -(weight * prod)
            };
        }
        Ok(total)
    })
}

/// `μ_S = Σ_π Π_B κ_B`, the inverse of [`cumulants_from_moments`].
pub fn moments_from_cumulants<T: Real>(ct: &CumulantTable<T>) -> Result<MomentTable<T>> {
    MomentTable::from_fn(ct.dim(), ct.max_order(), |idx| {
        let labels = idx.labels();
        let mut total = T::zero();
        'partition: for p in set_partitions(labels.len()) {
            let mut prod = T::one();
            for block in p {
                if block.len() == 1 {
                    continue 'partition;
                }
                prod = prod * ct.0.block(&labels, block)?;
            }
            total += prod;
        }
        Ok(total)
    })
}

/// `E[Π (X̄_i - μ_i)^{s_i}]` as an exact polynomial in `1/n`.
///
/// A partition `π` of `S` contributes `Π κ_B / n^(|S| - |π|)`.
pub fn sample_mean_moment<T: Real>(ct: &CumulantTable<T>, idx: &MultiIndex) -> Result<InvNPoly<T>> {
    let order = idx.order();
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    if idx.dim() != ct.dim() {
        return Err(Error::Usage(format!(
            "index {idx} does not have dimension {}",
            ct.dim()
        )));
    }
    let labels = idx.labels();
    let mut out = InvNPoly::zero();
    if labels.is_empty() {
        return Ok(InvNPoly::constant(T::one()));
    }
    'partition: for p in set_partitions(labels.len()) {
        let mut prod = T::one();
        for block in p {
            if block.len() == 1 {
                continue 'partition;
            }
            prod = prod * ct.0.block(&labels, block)?;
        }
        out.add_term(2 * (labels.len() - p.len()) as u32, prod);
    }
    Ok(out)
}

/// Every sample-mean moment of order up to the cumulant table's max order.
#[derive(Clone, Debug)]
pub struct MeanMomentTable<T: Real = f64> {
    dim: usize,
    entries: BTreeMap<MultiIndex, InvNPoly<T>>,
}

impl<T: Real> MeanMomentTable<T> {
    pub fn from_cumulants(ct: &CumulantTable<T>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for order in 0..=ct.max_order() {
            for idx in MultiIndex::all_of_order(ct.dim(), order) {
                let m = sample_mean_moment(ct, &idx)?;
                entries.insert(idx, m);
            }
        }
        Ok(MeanMomentTable {
            dim: ct.dim(),
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, idx: &MultiIndex) -> Result<&InvNPoly<T>> {
        self.entries
            .get(idx)
            .ok_or_else(|| Error::IncompleteTable(idx.to_string()))
    }
}
