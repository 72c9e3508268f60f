//! Upper-bound estimates of convex-roof extensions.
//!
//! Every ensemble `{p_i, psi_i}` of a rank-`r` state `rho = sum_k lambda_k
//! e_k e_k^dagger` is `psi~_i = sum_k V[i,k] sqrt(lambda_k) e_k` for some
//! `L x r` isometry `V`. The estimator searches over `V` by randomized restarts
//! followed by sweeps of two-row unitary rotations, so every value it reports
//! is the average measure of an actual decomposition, hence an upper bound on
//! the roof.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::measures::{self, moment_functional_from_traces};
use crate::numerics::{self, c, CMatrix, DEFAULT_HERM_TOL};
use crate::states::{DensityMatrix, PureState};
use crate::{Complex64, Error, Result};

/// Eigenvalues at or below this are outside the support.
const RANK_TOL: f64 = 1e-10;
const ISOMETRY_TOL: f64 = 1e-10;
/// Ensemble members lighter than this are dropped.
const WEIGHT_FLOOR: f64 = 1e-14;

/// Pure-state measure whose roof is estimated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoofMeasure {
    /// Bipartite reduced-state moment measure.
    Emmrs,
    /// Geometric mean of the moment measure over the three one-vs-rest cuts.
    GteEmmrs,
}

impl RoofMeasure {
    pub fn name(self) -> &'static str {
        match self {
            RoofMeasure::Emmrs => "emmrs",
            RoofMeasure::GteEmmrs => "gte_emmrs",
        }
    }

    fn parties(self) -> usize {
        match self {
            RoofMeasure::Emmrs => 2,
            RoofMeasure::GteEmmrs => 3,
        }
    }

    /// The exact pure-state value.
    pub fn evaluate(self, psi: &PureState) -> Result<f64> {
        Ok(match self {
            RoofMeasure::Emmrs => measures::emmrs_pure(psi)?.value,
            RoofMeasure::GteEmmrs => measures::gte_emmrs_pure(psi)?.value,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoofConfig {
    /// Ensemble size `L >= rank`; `None` picks `min(r^2, r + 4)`.
    pub ensemble_size: Option<usize>,
    pub restarts: usize,
    pub sweeps: usize,
    /// A restart stops once a sweep improves the objective by less than this
    /// relative amount.
    pub tol: f64,
    pub seed: u64,
}

impl Default for RoofConfig {
    fn default() -> Self {
        RoofConfig {
            ensemble_size: None,
            restarts: 16,
            sweeps: 50,
            tol: 1e-7,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleDecomposition {
    pub weights: Vec<f64>,
    pub states: Vec<PureState>,
}

impl EnsembleDecomposition {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `sum_i p_i |psi_i><psi_i|`.
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.states[0].amplitudes().len();
        let mut out = CMatrix::zeros(d, d);
        for (p, psi) in self.weights.iter().zip(&self.states) {
            let a = psi.amplitudes();
            for i in 0..d {
                for j in 0..d {
                    out[(i, j)] += a[i] * a[j].conj() * *p;
                }
            }
        }
        out
    }

    /// `sum_i p_i E(psi_i)`.
    pub fn average(&self, measure: RoofMeasure) -> Result<f64> {
        let mut acc = 0.0;
        for (p, psi) in self.weights.iter().zip(&self.states) {
            acc += p * measure.evaluate(psi)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub struct RoofEstimate {
    /// Average measure of `witness`; an upper bound on the roof.
    pub estimate: f64,
    pub witness: EnsembleDecomposition,
    /// Objective after each sweep (starting with the initial ensemble), per restart.
    pub history: Vec<Vec<f64>>,
    pub best_restart: usize,
}

/// Support of `rho`: columns `sqrt(lambda_k) e_k` for eigenvalues above `1e-10`.
fn support(rho: &DensityMatrix) -> Result<Vec<Vec<Complex64>>> {
    let eig = numerics::hermitian_eigen(rho.matrix(), DEFAULT_HERM_TOL)?;
    let cols: Vec<Vec<Complex64>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > RANK_TOL)
        .map(|(k, &l)| {
            let s = libm::sqrt(l);
            eig.vector(k).into_iter().map(|z| z * s).collect()
        })
        .collect();
    if cols.is_empty() {
        return Err(Error::Degenerate("state has no eigenvalue above 1e-10".into()));
    }
    Ok(cols)
}

fn check_isometry(v: &CMatrix, r: usize) -> Result<()> {
    if v.cols() != r || v.rows() < r {
        return Err(Error::Argument(format!(
            "isometry must be L x {r} with L >= {r}, got {} x {}",
            v.rows(),
            v.cols()
        )));
    }
    let dev = v.adjoint().matmul(v)?.max_abs_diff(&CMatrix::identity(r));
    if dev > ISOMETRY_TOL {
        return Err(Error::Argument(format!("V^dagger V deviates from identity by {dev:e}")));
    }
    Ok(())
}

fn mix_rows(v: &CMatrix, basis: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let d = basis[0].len();
    (0..v.rows())
        .map(|i| {
            let mut x = vec![c(0.0, 0.0); d];
            for (k, col) in basis.iter().enumerate() {
                let a = v[(i, k)];
                for (xi, bi) in x.iter_mut().zip(col) {
                    *xi += a * bi;
                }
            }
            x
        })
        .collect()
}

fn norm_sqr(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

fn to_decomposition(rows: Vec<Vec<Complex64>>, dims: &[usize]) -> Result<EnsembleDecomposition> {
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for x in rows {
        let p = norm_sqr(&x);
        if p < WEIGHT_FLOOR {
            continue;
        }
        weights.push(p);
        states.push(PureState::normalized(x, dims)?);
    }
    Ok(EnsembleDecomposition { weights, states })
}

/// The ensemble `psi~_i = sum_k V[i,k] sqrt(lambda_k) e_k` of `rho`.
pub fn decompose(rho: &DensityMatrix, v: &CMatrix) -> Result<EnsembleDecomposition> {
    let basis = support(rho)?;
    check_isometry(v, basis.len())?;
    to_decomposition(mix_rows(v, &basis), rho.dims())
}

fn uniform_open(rng: &mut ChaCha8Rng) -> f64 {
    // (0, 1]: 53 random bits, shifted off zero
    ((rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64)
}

/// Standard complex normal (unit variance per real component) via Box-Muller.
fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = libm::sqrt(-2.0 * libm::log(uniform_open(rng)));
    let t = 2.0 * PI * uniform_open(rng);
    c(r * libm::cos(t), r * libm::sin(t))
}

fn isometry_from_rng(l: usize, r: usize, rng: &mut ChaCha8Rng) -> Result<CMatrix> {
    if r == 0 || l < r {
        return Err(Error::Argument(format!(
            "isometry needs L >= r >= 1, got L = {l}, r = {r}"
        )));
    }
    let mut cols: Vec<Vec<Complex64>> = (0..r).map(|_| (0..l).map(|_| complex_normal(rng)).collect()).collect();
    // Modified Gram-Schmidt; positive R diagonal makes Q Haar distributed.
    for k in 0..r {
        for j in 0..k {
            let (done, rest) = cols.split_at_mut(k);
            let q = &done[j];
            let proj: Complex64 = q.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, a) in rest[0].iter_mut().zip(q) {
                *x -= proj * a;
            }
        }
        let n = libm::sqrt(norm_sqr(&cols[k]));
        if n < 1e-12 {
            return Err(Error::Numeric("degenerate Gaussian sample".into()));
        }
        cols[k].iter_mut().for_each(|x| *x /= n);
    }
    Ok(CMatrix::from_fn(l, r, |i, k| cols[k][i]))
}

/// Haar-random `L x r` isometry from ChaCha8 seeded with `seed`.
pub fn random_isometry(l: usize, r: usize, seed: u64) -> Result<CMatrix> {
    isometry_from_rng(l, r, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// One-vs-rest cut: reduced state of one party from an unnormalized vector.
struct Cut {
    /// `rows[a]` lists flat indices with the party's digit equal to `a`,
    /// in a common order of the remaining digits.
    rows: Vec<Vec<usize>>,
    m: usize,
}

impl Cut {
    fn new(dims: &[usize], party: usize) -> Cut {
        let total: usize = dims.iter().product();
        let stride: usize = dims[party + 1..].iter().product();
        let d = dims[party];
        let mut rows = vec![Vec::with_capacity(total / d); d];
        for idx in 0..total {
            rows[(idx / stride) % d].push(idx);
        }
        Cut {
            rows,
            m: d.min(total / d),
        }
    }

    /// Moment functional of the normalized reduction of `x`, `p = |x|^2`.
    fn value(&self, x: &[Complex64], p: f64) -> f64 {
        if self.m < 2 {
            return 0.0;
        }
        let d = self.rows.len();
        let mut sigma = vec![c(0.0, 0.0); d * d];
        for a in 0..d {
            for b in a..d {
                let s: Complex64 = self.rows[a]
                    .iter()
                    .zip(&self.rows[b])
                    .map(|(&i, &j)| x[i] * x[j].conj())
                    .sum::<Complex64>()
                    / p;
                sigma[a * d + b] = s;
                sigma[b * d + a] = s.conj();
            }
        }
        let mut traces = Vec::with_capacity(self.m);
        let mut pow = sigma.clone();
        for k in 0..self.m {
            if k > 0 {
                let mut next = vec![c(0.0, 0.0); d * d];
                for i in 0..d {
                    for l in 0..d {
                        let a = pow[i * d + l];
                        for j in 0..d {
                            next[i * d + j] += a * sigma[l * d + j];
                        }
                    }
                }
                pow = next;
            }
            traces.push((0..d).map(|i| pow[i * d + i].re).sum());
        }
        moment_functional_from_traces(&traces, self.m).map_or(0.0, |v| v.max(0.0))
    }
}

struct Objective {
    measure: RoofMeasure,
    cuts: Vec<Cut>,
}

impl Objective {
    fn new(measure: RoofMeasure, dims: &[usize]) -> Objective {
        let cuts = match measure {
            RoofMeasure::Emmrs => vec![Cut::new(dims, 0)],
            RoofMeasure::GteEmmrs => (0..3).map(|p| Cut::new(dims, p)).collect(),
        };
        Objective { measure, cuts }
    }

    /// `|x|^2 E(x / |x|)`.
    fn term(&self, x: &[Complex64]) -> f64 {
        let p = norm_sqr(x);
        if p < WEIGHT_FLOOR {
            return 0.0;
        }
        let e = match self.measure {
            RoofMeasure::Emmrs => self.cuts[0].value(x, p),
            RoofMeasure::GteEmmrs => libm::cbrt(self.cuts.iter().map(|cut| cut.value(x, p)).product()),
        };
        p * e
    }
}

/// `[[c, s e^{i phi}], [-s e^{-i phi}, c]]` applied to the pair `(x, y)`.
fn rotate(x: &[Complex64], y: &[Complex64], theta: f64, phi: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let (cs, sn) = (libm::cos(theta), libm::sin(theta));
    let e = Complex64::from_polar(sn, phi);
    let nx = x.iter().zip(y).map(|(a, b)| a * cs + e * b).collect();
    let ny = x.iter().zip(y).map(|(a, b)| -e.conj() * a + b * cs).collect();
    (nx, ny)
}

fn golden(f: &mut impl FnMut(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-7 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

const GRID_PHI: usize = 3;
const GRID_THETA: usize = 8;

/// Best rotation of rows `(x, y)`: coarse grid, then golden-section refinement
/// of the angle, the phase, and the angle again.
fn optimize_pair(obj: &Objective, x: &[Complex64], y: &[Complex64]) -> (f64, f64, f64) {
    let f = |theta: f64, phi: f64| {
        let (nx, ny) = rotate(x, y, theta, phi);
        obj.term(&nx) + obj.term(&ny)
    };
    let mut best = (0.0, 0.0, f(0.0, 0.0));
    for ip in 0..GRID_PHI {
        let phi = PI * ip as f64 / GRID_PHI as f64;
        for it in 0..GRID_THETA {
            let theta = -PI / 2.0 + PI * it as f64 / GRID_THETA as f64;
            let v = f(theta, phi);
            if v < best.2 {
                best = (theta, phi, v);
            }
        }
    }
    let dt = PI / GRID_THETA as f64;
    let dp = PI / GRID_PHI as f64;
    let (t0, p0, _) = best;
    let (t1, _) = golden(&mut |t| f(t, p0), t0 - dt, t0 + dt);
    let (p1, _) = golden(&mut |p| f(t1, p), p0 - dp, p0 + dp);
    let (t2, v2) = golden(&mut |t| f(t, p1), t1 - dt / 2.0, t1 + dt / 2.0);
    if v2 < best.2 {
        best = (t2, p1, v2);
    }
    best
}

/// Estimates the convex roof of `measure` at `rho` from above.
pub fn estimate_roof(rho: &DensityMatrix, measure: RoofMeasure, cfg: &RoofConfig) -> Result<RoofEstimate> {
    if !rho.is_positivity_verified() {
        return Err(Error::Argument(
            "convex roof needs a positive semidefinite state; input was loaded without that check".into(),
        ));
    }
    if rho.num_parties() != measure.parties() {
        return Err(Error::Shape(format!(
            "{} needs {} subsystems, got dims {:?}",
            measure.name(),
            measure.parties(),
            rho.dims()
        )));
    }
    if cfg.restarts == 0 {
        return Err(Error::Argument("roof estimation needs at least one restart".into()));
    }
    let basis = support(rho)?;
    let r = basis.len();
    let l = cfg.ensemble_size.unwrap_or_else(|| (r * r).min(r + 4));
    if l < r {
        return Err(Error::Argument(format!("ensemble size {l} below rank {r}")));
    }
    let obj = Objective::new(measure, rho.dims());

    let mut history = Vec::with_capacity(cfg.restarts);
    let mut best: Option<(f64, CMatrix, usize)> = None;
    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(restart as u64);
        let mut v = isometry_from_rng(l, r, &mut rng)?;
        let mut rows = mix_rows(&v, &basis);
        let mut terms: Vec<f64> = rows.iter().map(|x| obj.term(x)).collect();
        let mut current: f64 = terms.iter().sum();
        let mut trace = vec![current];
        for _ in 0..cfg.sweeps {
            if l < 2 || current <= 0.0 {
                break;
            }
            for i in 0..l {
                for j in i + 1..l {
                    let (theta, phi, val) = optimize_pair(&obj, &rows[i], &rows[j]);
                    if val < terms[i] + terms[j] {
                        let (nx, ny) = rotate(&rows[i], &rows[j], theta, phi);
                        terms[i] = obj.term(&nx);
                        terms[j] = obj.term(&ny);
                        rows[i] = nx;
                        rows[j] = ny;
                        let e = Complex64::from_polar(libm::sin(theta), phi);
                        let cs = libm::cos(theta);
                        for k in 0..r {
                            let (a, b) = (v[(i, k)], v[(j, k)]);
                            v[(i, k)] = a * cs + e * b;
                            v[(j, k)] = -e.conj() * a + b * cs;
                        }
                    }
                }
            }
            let next: f64 = terms.iter().sum();
            let prev = current;
            current = next.min(prev);
            trace.push(current);
            if prev - next <= cfg.tol * prev {
                break;
            }
        }
        if best.as_ref().is_none_or(|(b, _, _)| current < *b) {
            best = Some((current, v, restart));
        }
        history.push(trace);
    }
    let (_, v, best_restart) = best.expect("at least one restart");
    let witness = to_decomposition(mix_rows(&v, &basis), rho.dims())?;
    let estimate = witness.average(measure)?;
    Ok(RoofEstimate {
        estimate,
        witness,
        history,
        best_restart,
    })
}
