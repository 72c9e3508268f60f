//! Density matrices, pure states, the subsystem index maps and the stock
//! state families.
//!
//! Composite indices are first-subsystem-major: for dims `[m, n]` the basis
//! state `|i>|j>` sits at flat index `i * n + j`. Every map in this module is
//! written against that convention.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::numerics::{self, c, re, CMatrix};
use crate::{Error, Invariant, Result};

/// Tolerance used when validating density matrices.
pub const DEFAULT_STATE_TOL: f64 = 1e-8;
/// Tolerance on the norm of pure states.
pub const PURE_NORM_TOL: f64 = 1e-10;
/// Subsystem count above which states are rejected.
pub const MAX_PARTIES: usize = 4;

/// A validated quantum state on `dims[0] ⊗ dims[1] ⊗ ...`.
///
/// Matrices built with [`validate`] are Hermitian, unit trace and positive
/// semidefinite within tolerance. [`validate_pseudo`] skips the positivity
/// check; such matrices report `is_positivity_verified() == false`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    data: CMatrix,
    dims: Vec<usize>,
    positivity_verified: bool,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.data.rows()
    }

    pub fn num_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn is_positivity_verified(&self) -> bool {
        self.positivity_verified
    }

    /// `(m, n)` for a two-party state, shape error otherwise.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims[..] {
            [m, n] => Ok((m, n)),
            _ => Err(Error::Shape(format!(
                "expected a bipartite state, got dims {:?}",
                self.dims
            ))),
        }
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.data.frobenius_norm_sqr()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        numerics::hermitian_eigenvalues(&self.data, f64::INFINITY).expect("square by construction")
    }

    /// `t * self + (1 - t) * other`; both must share dims.
    pub fn mix(&self, other: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        if self.dims != other.dims {
            return Err(Error::Shape("mixing states with different dims".into()));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Argument(format!("mixing weight {t} outside [0, 1]")));
        }
        let data = self.data.scale(t).add(&other.data.scale(1.0 - t))?;
        Ok(DensityMatrix {
            data,
            dims: self.dims.clone(),
            positivity_verified: self.positivity_verified && other.positivity_verified,
        })
    }

    /// Convex combination `sum_i w_i rho_i` of states with equal dims.
    pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<DensityMatrix> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::Argument("mixture needs one weight per state".into()));
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w < 0.0) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::Argument("mixture weights must be a probability vector".into()));
        }
        let mut acc = CMatrix::zeros(states[0].dim(), states[0].dim());
        for (w, s) in weights.iter().zip(states) {
            if s.dims != states[0].dims {
                return Err(Error::Shape("mixing states with different dims".into()));
            }
            acc = acc.add(&s.data.scale(*w))?;
        }
        Ok(DensityMatrix {
            data: acc,
            dims: states[0].dims.clone(),
            positivity_verified: states.iter().all(|s| s.positivity_verified),
        })
    }
}

fn check_dims(side: usize, dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.len() > MAX_PARTIES || dims.contains(&0) {
        return Err(Error::Shape(format!(
            "subsystem dims {dims:?} must list 1..={MAX_PARTIES} positive dimensions"
        )));
    }
    let p: usize = dims.iter().product();
    if p != side {
        return Err(Error::Shape(format!(
            "dims {dims:?} multiply to {p}, matrix side is {side}"
        )));
    }
    Ok(())
}

fn validate_inner(data: CMatrix, dims: &[usize], tol: f64, positivity: bool) -> Result<DensityMatrix> {
    if !data.is_square() {
        return Err(Error::Shape(format!(
            "density matrix must be square, got {}x{}",
            data.rows(),
            data.cols()
        )));
    }
    check_dims(data.rows(), dims)?;
    let dev = data.hermiticity_deviation();
    if dev > tol {
        return Err(Error::Validation {
            invariant: Invariant::Hermiticity,
            deviation: dev,
        });
    }
    let data = data.hermitian_part();
    let tr = data.trace().re;
    if (tr - 1.0).abs() > tol {
        return Err(Error::Validation {
            invariant: Invariant::Trace,
            deviation: tr - 1.0,
        });
    }
    if positivity {
        let min = numerics::hermitian_eigenvalues(&data, f64::INFINITY)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -tol {
            return Err(Error::Validation {
                invariant: Invariant::Positivity,
                deviation: min,
            });
        }
    }
    Ok(DensityMatrix {
        data,
        dims: dims.to_vec(),
        positivity_verified: positivity,
    })
}

/// Checks Hermiticity, unit trace and positivity within `tol` and returns the
/// symmetrized state.
pub fn validate(data: CMatrix, dims: &[usize], tol: f64) -> Result<DensityMatrix> {
    validate_inner(data, dims, tol, true)
}

/// Like [`validate`] without the positivity check, for printed matrices
/// that are only Hermitian with unit trace.
pub fn validate_pseudo(data: CMatrix, dims: &[usize], tol: f64) -> Result<DensityMatrix> {
    validate_inner(data, dims, tol, false)
}

/// Normalized state vector on `dims`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    dims: Vec<usize>,
}

impl PureState {
    /// Rejects vectors whose norm differs from 1 by more than `1e-10`.
    pub fn new(amplitudes: Vec<Complex64>, dims: &[usize]) -> Result<Self> {
        check_dims(amplitudes.len(), dims)?;
        let norm = libm::sqrt(amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if (norm - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::Validation {
                invariant: Invariant::Normalization,
                deviation: norm - 1.0,
            });
        }
        Ok(PureState {
            amplitudes,
            dims: dims.to_vec(),
        })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>, dims: &[usize]) -> Result<Self> {
        check_dims(amplitudes.len(), dims)?;
        let norm = libm::sqrt(amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Degenerate("zero vector cannot be normalized".into()));
        }
        Ok(PureState {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
            dims: dims.to_vec(),
        })
    }

    /// Tensor product of single-party states (each normalized on the way in).
    pub fn product(factors: &[Vec<Complex64>]) -> Result<Self> {
        let mut amps = vec![re(1.0)];
        let mut dims = Vec::new();
        for f in factors {
            dims.push(f.len());
            let mut next = Vec::with_capacity(amps.len() * f.len());
            for a in &amps {
                for b in f {
                    next.push(a * b);
                }
            }
            amps = next;
        }
        Self::normalized(amps, &dims)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            data: CMatrix::outer(&self.amplitudes),
            dims: self.dims.clone(),
            positivity_verified: true,
        }
    }

    /// Reorders the subsystems: party `order[k]` of `self` becomes party `k`.
    pub fn permuted(&self, order: &[usize]) -> Result<PureState> {
        let k = self.dims.len();
        let mut seen = vec![false; k];
        if order.len() != k || order.iter().any(|&o| o >= k || core::mem::replace(&mut seen[o], true)) {
            return Err(Error::Argument(format!("{order:?} is not a permutation of 0..{k}")));
        }
        let new_dims: Vec<usize> = order.iter().map(|&o| self.dims[o]).collect();
        let old_strides = strides(&self.dims);
        let mut out = vec![re(0.0); self.amplitudes.len()];
        let mut digits = vec![0usize; k];
        for slot in out.iter_mut() {
            let src: usize = digits.iter().zip(order).map(|(&d, &o)| d * old_strides[o]).sum();
            *slot = self.amplitudes[src];
            increment(&mut digits, &new_dims);
        }
        Ok(PureState {
            amplitudes: out,
            dims: new_dims,
        })
    }

    /// Regroups as a bipartite state `party | rest` (rest in original order).
    pub fn split_off(&self, party: usize) -> Result<PureState> {
        if party >= self.dims.len() {
            return Err(Error::Argument(format!("no subsystem {party}")));
        }
        let mut order = vec![party];
        order.extend((0..self.dims.len()).filter(|&p| p != party));
        let perm = self.permuted(&order)?;
        let rest = perm.amplitudes.len() / self.dims[party];
        Ok(PureState {
            amplitudes: perm.amplitudes,
            dims: vec![self.dims[party], rest],
        })
    }

    /// The `m x n` coefficient matrix of a bipartite state.
    pub fn coefficient_matrix(&self) -> Result<CMatrix> {
        match self.dims[..] {
            [m, n] => CMatrix::from_vec(m, n, self.amplitudes.clone()),
            _ => Err(Error::Shape(format!(
                "expected a bipartite state, got dims {:?}",
                self.dims
            ))),
        }
    }

    /// Reduced state on the first party of a bipartite state, `C C^dagger`.
    pub fn reduced_first(&self) -> Result<DensityMatrix> {
        let cm = self.coefficient_matrix()?;
        let (m, _) = (cm.rows(), cm.cols());
        Ok(DensityMatrix {
            data: cm.matmul(&cm.adjoint())?,
            dims: vec![m],
            positivity_verified: true,
        })
    }
}

/// Schmidt coefficients `mu_1 >= ... >= mu_d >= 0`, `d = min(m, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtSpectrum {
    pub coefficients: Vec<f64>,
}

impl SchmidtSpectrum {
    /// `sum mu_i^2`, the purity of either reduced state.
    pub fn purity(&self) -> f64 {
        self.coefficients.iter().map(|m| m * m).sum()
    }
}

pub fn schmidt_spectrum(psi: &PureState) -> Result<SchmidtSpectrum> {
    let cm = psi.coefficient_matrix()?;
    let coefficients = numerics::singular_values(&cm).into_iter().map(|s| s * s).collect();
    Ok(SchmidtSpectrum { coefficients })
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Mixed-radix counter, last digit fastest.
fn increment(digits: &mut [usize], dims: &[usize]) {
    for k in (0..digits.len()).rev() {
        digits[k] += 1;
        if digits[k] < dims[k] {
            return;
        }
        digits[k] = 0;
    }
}

/// Transpose on the second factor of an `(m n) x (m n)` matrix:
/// `out[i n + j, k n + l] = in[i n + l, k n + j]`.
pub fn partial_transpose_raw(mat: &CMatrix, m: usize, n: usize) -> CMatrix {
    assert_eq!(mat.rows(), m * n);
    CMatrix::from_fn(m * n, m * n, |r, cl| {
        let (i, j) = (r / n, r % n);
        let (k, l) = (cl / n, cl % n);
        mat[(i * n + l, k * n + j)]
    })
}

/// Realignment of an `(m n) x (m n)` matrix into `m^2 x n^2`:
/// `out[i m + j, k n + l] = in[i n + k, j n + l]`.
pub fn realign_raw(mat: &CMatrix, m: usize, n: usize) -> CMatrix {
    assert_eq!(mat.rows(), m * n);
    CMatrix::from_fn(m * m, n * n, |r, cl| {
        let (i, j) = (r / m, r % m);
        let (k, l) = (cl / n, cl % n);
        mat[(i * n + k, j * n + l)]
    })
}

/// Partial transpose on subsystem B of a bipartite state.
pub fn partial_transpose(rho: &DensityMatrix) -> Result<CMatrix> {
    let (m, n) = rho.bipartite_dims()?;
    Ok(partial_transpose_raw(&rho.data, m, n))
}

/// Realigned `m^2 x n^2` matrix of a bipartite state.
pub fn realign(rho: &DensityMatrix) -> Result<CMatrix> {
    let (m, n) = rho.bipartite_dims()?;
    Ok(realign_raw(&rho.data, m, n))
}

/// Partial trace of a square matrix on `dims`, keeping the listed subsystems
/// (returned in ascending subsystem order).
pub fn partial_trace_raw(mat: &CMatrix, dims: &[usize], keep: &[usize]) -> Result<(CMatrix, Vec<usize>)> {
    check_dims(mat.rows(), dims)?;
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep.is_empty() || keep_sorted.len() != keep.len() || keep_sorted.iter().any(|&k| k >= dims.len()) {
        return Err(Error::Argument(format!(
            "keep set {keep:?} must be non-empty, unique, and index subsystems of {dims:?}"
        )));
    }
    let st = strides(dims);
    let traced: Vec<usize> = (0..dims.len()).filter(|p| !keep_sorted.contains(p)).collect();
    let offsets = |parties: &[usize]| -> Vec<usize> {
        let pd: Vec<usize> = parties.iter().map(|&p| dims[p]).collect();
        let total: usize = pd.iter().product();
        let mut digits = vec![0usize; parties.len()];
        let mut out = Vec::with_capacity(total);
        for _ in 0..total {
            out.push(digits.iter().zip(parties).map(|(&d, &p)| d * st[p]).sum());
            increment(&mut digits, &pd);
        }
        out
    };
    let keep_off = offsets(&keep_sorted);
    let tr_off = offsets(&traced);
    let d = keep_off.len();
    let mut out = CMatrix::zeros(d, d);
    for (a, &oa) in keep_off.iter().enumerate() {
        for (b, &ob) in keep_off.iter().enumerate() {
            out[(a, b)] = tr_off.iter().map(|&t| mat[(oa + t, ob + t)]).sum();
        }
    }
    let out_dims = keep_sorted.iter().map(|&p| dims[p]).collect();
    Ok((out, out_dims))
}

/// Reduced state on the `keep` subsystems.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let (data, dims) = partial_trace_raw(&rho.data, &rho.dims, keep)?;
    validate_inner(data, &dims, DEFAULT_STATE_TOL, rho.positivity_verified)
}

/// Either kind of state produced by a [`Family`].
#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Mixed(DensityMatrix),
    Pure(PureState),
}

impl State {
    pub fn density(&self) -> DensityMatrix {
        match self {
            State::Mixed(rho) => rho.clone(),
            State::Pure(psi) => psi.to_density(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        match self {
            State::Mixed(rho) => rho.dims(),
            State::Pure(psi) => psi.dims(),
        }
    }
}

/// Named state families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    RhoA,
    Werner,
    Isotropic2,
    Isotropic3,
    RhoF,
    MaximallyMixed,
    Ghz3,
    W3,
    Bell,
    Phi1,
    Phi2,
}

fn rho_a_domain() -> (f64, f64) {
    let r = libm::sqrt(141.0);
    ((25.0 - r) / 50.0, (25.0 + r) / 100.0)
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::RhoA,
        Family::Werner,
        Family::Isotropic2,
        Family::Isotropic3,
        Family::RhoF,
        Family::MaximallyMixed,
        Family::Ghz3,
        Family::W3,
        Family::Bell,
        Family::Phi1,
        Family::Phi2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RhoA => "rho_a",
            Family::Werner => "werner",
            Family::Isotropic2 => "isotropic2",
            Family::Isotropic3 => "isotropic3",
            Family::RhoF => "rho_f",
            Family::MaximallyMixed => "maximally_mixed",
            Family::Ghz3 => "ghz3",
            Family::W3 => "w3",
            Family::Bell => "bell",
            Family::Phi1 => "phi1",
            Family::Phi2 => "phi2",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }

    /// Parameter interval of one-parameter families.
    pub fn domain(self) -> Option<(f64, f64)> {
        match self {
            Family::RhoA => Some(rho_a_domain()),
            Family::Werner | Family::Isotropic2 | Family::Isotropic3 | Family::RhoF => Some((0.0, 1.0)),
            _ => None,
        }
    }

    pub fn domain_label(self) -> &'static str {
        match self {
            Family::RhoA => "a in [(25-sqrt(141))/50, (25+sqrt(141))/100]",
            Family::Werner => "u in [0, 1]",
            Family::Isotropic2 => "b in [0, 1]",
            Family::Isotropic3 => "s in [0, 1]",
            Family::RhoF => "f in [0, 1]",
            Family::MaximallyMixed => "subsystem dims, e.g. 3,3",
            _ => "no parameters",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Family::RhoA => "3x3 rank-<=4 state with -11/50 coherences; two-moment realignment test benchmark",
            Family::Werner => "two-qubit Werner state u|psi+><psi+| + (1-u) I/4",
            Family::Isotropic2 => "two-qubit isotropic state (1-b)/3 I + (4b-1)/3 |psi+><psi+|; coefficient sign test",
            Family::Isotropic3 => "3x3 isotropic state (1-s)/9 I + s |psi3><psi3|; concurrence lower bound",
            Family::RhoF => {
                "three-qubit family normalized by 1/(4f^2+4); Hermitian, unit trace, NOT positive semidefinite"
            }
            Family::MaximallyMixed => "I/p on the given subsystem dims",
            Family::Ghz3 => "three-qubit GHZ state (pure)",
            Family::W3 => "three-qubit W state (pure)",
            Family::Bell => "two-qubit Bell state (|00>+|11>)/sqrt2 (pure)",
            Family::Phi1 => "3x3 pure state with Schmidt coefficients 1/2, 1/3, 1/6",
            Family::Phi2 => "3x3 pure state with Schmidt coefficients 1/4, (9+sqrt13)/24, rest",
        }
    }

    fn param(self, params: &[f64]) -> Result<f64> {
        let (lo, hi) = self.domain().expect("parametric family");
        let x = match params {
            [x] => *x,
            _ => return Err(Error::Argument(format!("{} takes exactly one parameter", self.name()))),
        };
        if !(x >= lo - 1e-12 && x <= hi + 1e-12) {
            return Err(Error::Domain {
                family: self.name(),
                value: x,
                lo,
                hi,
            });
        }
        Ok(x.clamp(lo, hi))
    }

    pub fn build(self, params: &[f64]) -> Result<State> {
        let no_params = || -> Result<()> {
            if params.is_empty() {
                Ok(())
            } else {
                Err(Error::Argument(format!("{} takes no parameters", self.name())))
            }
        };
        let st = match self {
            Family::RhoA => State::Mixed(rho_a(self.param(params)?)?),
            Family::Werner => {
                let u = self.param(params)?;
                let bell = bell_projector(2);
                State::Mixed(validate(
                    bell.scale(u).add(&CMatrix::identity(4).scale((1.0 - u) / 4.0))?,
                    &[2, 2],
                    DEFAULT_STATE_TOL,
                )?)
            }
            Family::Isotropic2 => {
                let b = self.param(params)?;
                let m = CMatrix::identity(4)
                    .scale((1.0 - b) / 3.0)
                    .add(&bell_projector(2).scale((4.0 * b - 1.0) / 3.0))?;
                State::Mixed(validate(m, &[2, 2], DEFAULT_STATE_TOL)?)
            }
            Family::Isotropic3 => {
                let s = self.param(params)?;
                let m = CMatrix::identity(9)
                    .scale((1.0 - s) / 9.0)
                    .add(&bell_projector(3).scale(s))?;
                State::Mixed(validate(m, &[3, 3], DEFAULT_STATE_TOL)?)
            }
            Family::RhoF => State::Mixed(rho_f(self.param(params)?)?),
            Family::MaximallyMixed => {
                if params.is_empty() {
                    return Err(Error::Argument("maximally_mixed needs subsystem dims".into()));
                }
                let mut dims = Vec::new();
                for &d in params {
                    if !((1.0..=16.0).contains(&d) && libm::trunc(d) == d) {
                        return Err(Error::Argument(format!("bad subsystem dimension {d}")));
                    }
                    dims.push(d as usize);
                }
                let p: usize = dims.iter().product();
                State::Mixed(validate(
                    CMatrix::identity(p).scale(1.0 / p as f64),
                    &dims,
                    DEFAULT_STATE_TOL,
                )?)
            }
            Family::Ghz3 => {
                no_params()?;
                let mut v = vec![re(0.0); 8];
                v[0] = re(1.0);
                v[7] = re(1.0);
                State::Pure(PureState::normalized(v, &[2, 2, 2])?)
            }
            Family::W3 => {
                no_params()?;
                let mut v = vec![re(0.0); 8];
                v[1] = re(1.0);
                v[2] = re(1.0);
                v[4] = re(1.0);
                State::Pure(PureState::normalized(v, &[2, 2, 2])?)
            }
            Family::Bell => {
                no_params()?;
                State::Pure(maximally_entangled(2))
            }
            Family::Phi1 => {
                no_params()?;
                State::Pure(schmidt_diagonal(&[0.5, 1.0 / 3.0, 1.0 / 6.0])?)
            }
            Family::Phi2 => {
                no_params()?;
                let b1 = 0.25;
                let b2 = (9.0 + libm::sqrt(13.0)) / 24.0;
                State::Pure(schmidt_diagonal(&[b1, b2, 1.0 - b1 - b2])?)
            }
        };
        Ok(st)
    }
}

/// Builds a state by family name.
pub fn family(name: &str, params: &[f64]) -> Result<State> {
    Family::from_name(name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))?
        .build(params)
}

/// `sum_i |ii> / sqrt(d)`.
pub fn maximally_entangled(d: usize) -> PureState {
    let mut v = vec![re(0.0); d * d];
    for i in 0..d {
        v[i * d + i] = re(1.0);
    }
    PureState::normalized(v, &[d, d]).expect("nonzero")
}

fn bell_projector(d: usize) -> CMatrix {
    CMatrix::outer(maximally_entangled(d).amplitudes())
}

/// `sum_i sqrt(mu_i) |ii>` on `d x d`.
fn schmidt_diagonal(mu: &[f64]) -> Result<PureState> {
    let d = mu.len();
    let mut v = vec![re(0.0); d * d];
    for (i, &m) in mu.iter().enumerate() {
        v[i * d + i] = re(libm::sqrt(m));
    }
    PureState::new(v, &[d, d])
}

fn rho_a(a: f64) -> Result<DensityMatrix> {
    let mut m = CMatrix::zeros(9, 9);
    let off = -11.0 / 50.0;
    m[(0, 0)] = re((1.0 - a) / 2.0);
    m[(0, 8)] = re(off);
    m[(8, 0)] = re(off);
    m[(4, 4)] = re(0.5 - a);
    m[(4, 5)] = re(off);
    m[(5, 4)] = re(off);
    m[(5, 5)] = re(a);
    m[(8, 8)] = re(a / 2.0);
    validate(m, &[3, 3], DEFAULT_STATE_TOL)
}

fn rho_f(f: f64) -> Result<DensityMatrix> {
    let q = (1.0 + f * f) / 4.0;
    let f2 = f * f;
    #[rustfmt::skip]
    let entries = [
        1.0,     q,   f / 4.0, 0.0, 0.0, f,        0.0, 1.0,
        q,       1.0, 0.0,     0.0, 0.0, 0.0,      0.0, 0.0,
        f / 4.0, 0.0, 2.0 * f2, 0.0, 0.0, f2,      0.0, f,
        0.0,     0.0, 0.0,     0.0, 0.0, 0.0,      0.0, 0.0,
        0.0,     0.0, 0.0,     0.0, 0.0, 0.0,      0.0, 0.0,
        f,       0.0, f2,      0.0, 0.0, 2.0 * f2, 0.0, f / 4.0,
        0.0,     0.0, 0.0,     0.0, 0.0, 0.0,      1.0, q,
        1.0,     0.0, f,       0.0, 0.0, f / 4.0,  q,   1.0,
    ];
    let m = CMatrix::from_real(8, 8, &entries)?.scale(1.0 / (4.0 * f2 + 4.0));
    validate_pseudo(m, &[2, 2, 2], DEFAULT_STATE_TOL)
}

/// Computational basis vector `|k>` in dimension `d`.
pub fn basis(d: usize, k: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); d];
    v[k] = re(1.0);
    v
}
