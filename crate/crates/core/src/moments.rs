//! Trace moments and characteristic-polynomial coefficients.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::numerics::{self, CMatrix, DEFAULT_HERM_TOL};
use crate::states::{self, DensityMatrix};
use crate::{Error, Result};

/// Eigenvalues with `|lambda|` at or below this count as zero for rank purposes.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentKind {
    /// `Tr[(R^dagger R)^k]` of the realigned matrix `R`.
    Realignment,
    /// `Tr[(rho^tau)^k]` of the partial transpose.
    PartialTranspose,
    /// `Tr[sigma^k]` of a reduced state.
    Reduced,
}

/// `T_1, ..., T_K` (stored zero-based: `values[0] = T_1`).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentVector {
    pub kind: MomentKind,
    pub values: Vec<f64>,
}

impl MomentVector {
    /// The `k`-th moment, one-based.
    pub fn get(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `a_0 = 1, a_1, ..., a_p`: the elementary symmetric polynomials of a
/// spectrum, i.e. the characteristic polynomial
/// `a_0 x^p - a_1 x^(p-1) + ... + (-1)^p a_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector {
    pub values: Vec<f64>,
}

fn check_depth(k: usize, max: usize) -> Result<()> {
    if k == 0 || k > max {
        return Err(Error::Argument(format!("moment depth {k} outside 1..={max}")));
    }
    Ok(())
}

/// `T^R_k = sum_i sigma_i^(2k)` over the singular values of the realigned
/// matrix, `k = 1..=depth`.
pub fn realignment_moments(rho: &DensityMatrix, depth: usize) -> Result<MomentVector> {
    let (m, n) = rho.bipartite_dims()?;
    check_depth(depth, m * n)?;
    let s: Vec<f64> = numerics::singular_values(&states::realign(rho)?)
        .into_iter()
        .map(|x| x * x)
        .collect();
    Ok(MomentVector {
        kind: MomentKind::Realignment,
        values: numerics::power_sums(&s, depth),
    })
}

/// `T^tau_k = Tr[(rho^tau)^k]`, `k = 1..=depth`, from the spectrum of the
/// partial transpose.
pub fn pt_moments(rho: &DensityMatrix, depth: usize) -> Result<MomentVector> {
    let (m, n) = rho.bipartite_dims()?;
    check_depth(depth, m * n)?;
    let pt = states::partial_transpose(rho)?;
    Ok(MomentVector {
        kind: MomentKind::PartialTranspose,
        values: numerics::power_traces(&pt, depth, DEFAULT_HERM_TOL)?,
    })
}

/// `Tr[sigma^k]`, `k = 1..=depth`, of a (reduced) state.
pub fn reduced_moments(sigma: &DensityMatrix, depth: usize) -> Result<MomentVector> {
    if depth == 0 {
        return Err(Error::Argument("moment depth must be at least 1".into()));
    }
    Ok(MomentVector {
        kind: MomentKind::Reduced,
        values: numerics::power_traces(sigma.matrix(), depth, DEFAULT_HERM_TOL)?,
    })
}

/// Newton's identities: `a_0 = 1`,
/// `a_{k+1} = (1/(k+1)) sum_{l=0}^{k} (-1)^l a_{k-l} T_{l+1}` for `k < p`.
///
/// `moments[0]` is `T_1`. Needs at least `p` moments.
pub fn newton_coefficients(moments: &[f64], p: usize) -> Result<CoefficientVector> {
    if moments.len() < p {
        return Err(Error::Argument(format!("{} moments given, {p} needed", moments.len())));
    }
    let mut a = vec![0.0; p + 1];
    a[0] = 1.0;
    for k in 0..p {
        let mut acc = 0.0;
        for l in 0..=k {
            let term = a[k - l] * moments[l];
            if l % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        a[k + 1] = acc / (k + 1) as f64;
    }
    Ok(CoefficientVector { values: a })
}

/// Number of eigenvalues with `|lambda| > tol`.
pub fn rank_from_spectrum(m: &CMatrix, tol: f64) -> Result<usize> {
    Ok(numerics::hermitian_eigenvalues(m, DEFAULT_HERM_TOL)?
        .iter()
        .filter(|l| l.abs() > tol)
        .count())
}

/// Largest `k` with `|a_k| > tol`, scanning down from the top so interior
/// zeros do not truncate the rank.
pub fn rank_from_coefficients(a: &CoefficientVector, tol: f64) -> usize {
    a.values.iter().rposition(|x| x.abs() > tol).unwrap_or(0)
}
