use serde::Serialize;

use super::complex::ProjComplex;
use crate::algebra::Algebra;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyProfile {
    /// `dim H^i` for `i ∈ [0, m]`.
    pub h: Vec<usize>,
    pub hl: usize,
    pub hw: usize,
    pub hr: usize,
    /// Degree spread of the nonzero terms.
    pub width: usize,
    pub dim: usize,
}

/// Cohomology dimensions read off the k-linear expansion of the complex.
pub fn cohomology(alg: &Algebra, x: &ProjComplex) -> CohomologyProfile {
    let m = x.m();
    let dims = x.term_dims(alg);
    let ranks: Vec<usize> = x.diffs().iter().map(|d| d.to_linear(alg).rank()).collect();
    let h: Vec<usize> = (0..=m)
        .map(|i| {
            let out_rank = if i < m { ranks[i] } else { 0 };
            let in_rank = if i > 0 { ranks[i - 1] } else { 0 };
            dims[i] - out_rank - in_rank
        })
        .collect();
    let hl = h.iter().copied().max().unwrap_or(0);
    let spread = |nonzero: &dyn Fn(usize) -> bool| {
        let lo = (0..=m).find(|&i| nonzero(i));
        let hi = (0..=m).rev().find(|&i| nonzero(i));
        match (lo, hi) {
            (Some(lo), Some(hi)) => hi - lo + 1,
            _ => 0,
        }
    };
    let hw = spread(&|i| h[i] != 0);
    let width = spread(&|i| !x.term(i).is_empty());
    CohomologyProfile {
        hl,
        hw,
        hr: hl * hw,
        width,
        dim: dims.iter().sum(),
        h,
        }
}

/// Per-degree instance of `dim X^i ≤ c(d + d² + ⋯ + d^{m−i+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimBound {
    pub degree: usize,
    pub dim: u64,
    pub bound: u64,
    pub slack: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimBoundReport {
    pub c: usize,
    pub d: usize,
    pub m: usize,
    pub degrees: Vec<DimBound>,
}

fn geometric_sum(d: u64, from: u32, to: u32) -> u64 {
    (from..=to).map(|k| d.saturating_pow(k)).fold(0u64, u64::saturating_add)
}

/// Checks the degreewise dimension bound; a failure means a bug, since the
/// bound holds for every minimal complex.
pub fn check_dim_bound(alg: &Algebra, x: &ProjComplex) -> Result<DimBoundReport> {
    let prof = cohomology(alg, x);
    let c = prof.hl as u64;
    let d = alg.dim() as u64;
    let m = x.m();
    let dims = x.term_dims(alg);
    let mut degrees = Vec::with_capacity(m + 1);
    for (i, &dim) in dims.iter().enumerate() {
        let bound = c.saturating_mul(geometric_sum(d, 1, (m - i + 1) as u32));
        let dim = dim as u64;
        if dim > bound {
            return Err(Error::InvariantViolation(format!(
                "dim X^{i} = {dim} exceeds {bound} (c = {c}, d = {d}, m = {m})"
            )));
        }
        degrees.push(DimBound {
            degree: i,
            dim,
            bound,
            slack: bound - dim,
        });
    }
    Ok(DimBoundReport {
        c: prof.hl,
        d: alg.dim(),
        m,
        degrees,
    })
}

/// `hr/(m+1) ≤ dim ≤ N·hr` with `N = (m+1)(d + ⋯ + d^{m+1})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sandwich {
    pub m: usize,
    pub hr: usize,
    pub dim: usize,
    pub n: u64,
    pub lower: f64,
    pub upper: u64,
}

pub fn hr_dim_sandwich(alg: &Algebra, x: &ProjComplex) -> Result<Sandwich> {
    let prof = cohomology(alg, x);
    let m = x.m();
    if prof.hr == 0 {
        if !x.is_zero() && super::complex::validate(alg, x).is_ok() {
            return Err(Error::InvariantViolation(
                "nonzero minimal complex with zero cohomology".into(),
            ));
        }
        return Err(Error::ZeroRange);
    }
    let n = (m as u64 + 1).saturating_mul(geometric_sum(alg.dim() as u64, 1, m as u32 + 1));
    let upper = n.saturating_mul(prof.hr as u64);
    let dim = prof.dim;
    // hr/(m+1) ≤ dim, compared without division
    if prof.hr > (m + 1) * dim || dim as u64 > upper {
        return Err(Error::InvariantViolation(format!(
            "sandwich fails: hr = {}, dim = {dim}, N = {n}, m = {m}",
            prof.hr
        )));
    }
    Ok(Sandwich {
        m,
        hr: prof.hr,
        dim,
        n,
        lower: prof.hr as f64 / (m + 1) as f64,
        upper,
    })
}
