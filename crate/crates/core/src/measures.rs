//! Concurrence, its moment lower bound, and the reduced-state moment measures.

use alloc::format;
use alloc::vec::Vec;

use crate::numerics::{self, CMatrix, DEFAULT_HERM_TOL};
use crate::states::{self, DensityMatrix, PureState};
use crate::{Error, Result};

/// Values within `ZERO_CLAMP` of zero are rounding noise on exact zeros; the
/// cube root in the tripartite measure would otherwise blow them up.
const ZERO_CLAMP: f64 = 1e-12;
/// Beyond this the triangle inequality behind the fill is genuinely violated.
const FILL_RADICAND_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureMode {
    PureExact,
    /// The pure-state formula evaluated on a mixed state's reductions; not a
    /// faithful mixed-state measure.
    DirectFunctional,
    ConvexRoofEstimate,
}

impl MeasureMode {
    pub fn name(self) -> &'static str {
        match self {
            MeasureMode::PureExact => "pure-exact",
            MeasureMode::DirectFunctional => "direct-functional",
            MeasureMode::ConvexRoofEstimate => "convex-roof-estimate",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureValue {
    pub name: &'static str,
    pub value: f64,
    pub mode: MeasureMode,
}

impl MeasureValue {
    pub(crate) fn new(name: &'static str, value: f64, mode: MeasureMode) -> Result<Self> {
        Ok(MeasureValue {
            name,
            value: clamp_zero(value, name)?,
            mode,
        })
    }
}

/// Which reduction [`emmrs_direct`] evaluates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Side {
    A,
    B,
    #[default]
    Smaller,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceBound {
    /// `sqrt(2 / (d (d - 1))) max(M1, M2, 0)`, `d = min(m, n)`.
    pub bound: f64,
    /// From the partial-transpose moments.
    pub m1: f64,
    /// From the realignment moments.
    pub m2: f64,
}

fn clamp_zero(x: f64, what: &str) -> Result<f64> {
    if x.abs() < ZERO_CLAMP {
        Ok(0.0)
    } else if x > 0.0 {
        Ok(x)
    } else {
        Err(Error::Numeric(format!("{what} evaluated to {x:e}")))
    }
}

fn require_parties(dims: &[usize], k: usize) -> Result<()> {
    if dims.len() != k {
        return Err(Error::Shape(format!("expected {k} subsystems, got dims {dims:?}")));
    }
    Ok(())
}

/// `sqrt(2 (1 - sum mu_i^2))` from the Schmidt spectrum.
pub fn concurrence_pure(psi: &PureState) -> Result<MeasureValue> {
    require_parties(psi.dims(), 2)?;
    let purity = states::schmidt_spectrum(psi)?.purity();
    let x = clamp_zero(2.0 * (1.0 - purity), "concurrence")?;
    MeasureValue::new("concurrence", libm::sqrt(x), MeasureMode::PureExact)
}

/// `sqrt(sum s + 2 sqrt(e_2(s))) - 1`, i.e. `sqrt(sqrt(2 (T1^2 - T2)) + T1) - 1`
/// with `T_k = sum s^k`; snapped to zero within `1e-12`.
fn m_functional(s: &[f64]) -> f64 {
    let t1: f64 = s.iter().sum();
    let mut e2 = 0.0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            e2 += s[i] * s[j];
        }
    }
    let m = libm::sqrt(t1 + 2.0 * libm::sqrt(e2)) - 1.0;
    if m.abs() < ZERO_CLAMP {
        0.0
    } else {
        m
    }
}

/// Measurable lower bound on the concurrence from the first partial-transpose
/// and realignment moments.
///
/// `M1` uses `T_i = Tr[(rho^tau)^(2i)]`, i.e. the squared PT eigenvalues;
/// `M2` uses the squared singular values of the realigned matrix.
pub fn concurrence_lower_bound(rho: &DensityMatrix) -> Result<ConcurrenceBound> {
    let (m, n) = rho.bipartite_dims()?;
    let d = m.min(n);
    if d < 2 {
        return Err(Error::Degenerate(format!("{m}x{n} system carries no entanglement")));
    }
    let pt = states::partial_transpose(rho)?;
    let lam: Vec<f64> = numerics::hermitian_eigenvalues(&pt, DEFAULT_HERM_TOL)?
        .into_iter()
        .map(|l| l * l)
        .collect();
    let sig: Vec<f64> = numerics::singular_values(&states::realign(rho)?)
        .into_iter()
        .map(|s| s * s)
        .collect();
    let m1 = m_functional(&lam);
    let m2 = m_functional(&sig);
    let bound = libm::sqrt(2.0 / (d * (d - 1)) as f64) * m1.max(m2).max(0.0);
    Ok(ConcurrenceBound { bound, m1, m2 })
}

/// Weights `w_1..w_m` with `E = 1 - sum_k w_k Tr(sigma^k)`.
///
/// Even `m`: `w_i = 4i / (m^2 + 2m)`, `w_{i+m/2} = (2m - 4i + 4) / (m^2 + 2m)`.
/// Odd `m`: `w_i = 4i / (m+1)^2`, `w_{(m+1)/2+i} = (2m - 4i + 2) / (m+1)^2` for
/// `i <= (m-1)/2`, and `w_{(m+1)/2} = 2 / (m+1)` as a standalone term so that
/// pure states score exactly zero.
pub fn moment_weights(m: usize) -> Result<Vec<f64>> {
    if m < 2 {
        return Err(Error::Argument(format!("moment functional needs m >= 2, got {m}")));
    }
    let mut w = alloc::vec![0.0; m + 1];
    let mf = m as f64;
    if m.is_multiple_of(2) {
        let den = mf * mf + 2.0 * mf;
        for i in 1..=m / 2 {
            let fi = i as f64;
            w[i] += 4.0 * fi / den;
            w[i + m / 2] += (2.0 * mf - 4.0 * fi + 4.0) / den;
        }
    } else {
        let den = (mf + 1.0) * (mf + 1.0);
        let h = m.div_ceil(2);
        for i in 1..=(m - 1) / 2 {
            let fi = i as f64;
            w[i] += 4.0 * fi / den;
            w[h + i] += (2.0 * mf - 4.0 * fi + 2.0) / den;
        }
        w[h] += 2.0 / (mf + 1.0);
    }
    w.remove(0);
    Ok(w)
}

/// The functional from power traces `traces[k-1] = Tr(sigma^k)`, `k = 1..=m`.
pub fn moment_functional_from_traces(traces: &[f64], m: usize) -> Result<f64> {
    let w = moment_weights(m)?;
    if traces.len() < m {
        return Err(Error::Argument(format!(
            "{} power traces given, {m} needed",
            traces.len()
        )));
    }
    Ok(1.0 - w.iter().zip(traces).map(|(w, t)| w * t).sum::<f64>())
}

/// The reduced-state moment functional of a single-system state `sigma` of
/// dimension at most `m`.
pub fn moment_functional(sigma: &DensityMatrix, m: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::Argument(format!("moment functional needs m >= 2, got {m}")));
    }
    if sigma.dim() > m {
        return Err(Error::Argument(format!(
            "state of dimension {} exceeds m = {m}",
            sigma.dim()
        )));
    }
    let t = numerics::power_traces(sigma.matrix(), m, DEFAULT_HERM_TOL)?;
    moment_functional_from_traces(&t, m)
}

fn functional_of_spectrum(spectrum: &[f64], m: usize) -> Result<f64> {
    moment_functional_from_traces(&numerics::power_sums(spectrum, m), m)
}

/// Pure-state moment measure, evaluated on the Schmidt spectrum with
/// `m = min(dim A, dim B)`.
pub fn emmrs_pure(psi: &PureState) -> Result<MeasureValue> {
    require_parties(psi.dims(), 2)?;
    let m = psi.dims()[0].min(psi.dims()[1]);
    let spec = states::schmidt_spectrum(psi)?;
    let v = if m < 2 {
        0.0
    } else {
        functional_of_spectrum(&spec.coefficients, m)?
    };
    MeasureValue::new("emmrs", v, MeasureMode::PureExact)
}

/// The moment functional of one reduction of a mixed bipartite state.
///
/// Diagnostic only: positive on separable mixed states such as `I/9`.
pub fn emmrs_direct(rho: &DensityMatrix, side: Side) -> Result<MeasureValue> {
    let (m, n) = rho.bipartite_dims()?;
    let keep = match side {
        Side::A => 0,
        Side::B => 1,
        Side::Smaller => (n < m) as usize,
    };
    let sigma = states::partial_trace(rho, &[keep])?;
    let d = [m, n][keep];
    let v = if d < 2 { 0.0 } else { moment_functional(&sigma, d)? };
    MeasureValue::new("emmrs", v, MeasureMode::DirectFunctional)
}

/// Geometric mean of the pure-state measure over the three one-vs-rest cuts.
pub fn gte_emmrs_pure(psi: &PureState) -> Result<MeasureValue> {
    require_parties(psi.dims(), 3)?;
    let mut prod = 1.0;
    for party in 0..3 {
        prod *= emmrs_pure(&psi.split_off(party)?)?.value;
    }
    MeasureValue::new("gte_emmrs", libm::cbrt(prod), MeasureMode::PureExact)
}

fn single_party_reductions(rho: &DensityMatrix) -> Result<[DensityMatrix; 3]> {
    require_parties(rho.dims(), 3)?;
    Ok([
        states::partial_trace(rho, &[0])?,
        states::partial_trace(rho, &[1])?,
        states::partial_trace(rho, &[2])?,
    ])
}

/// Geometric mean of the moment functional over the three single-party
/// reductions, each with `m` = that party's dimension.
pub fn gte_emmrs_direct(rho: &DensityMatrix) -> Result<MeasureValue> {
    let mut prod = 1.0;
    for sigma in single_party_reductions(rho)? {
        let d = sigma.dim();
        prod *= if d < 2 {
            0.0
        } else {
            clamp_zero(moment_functional(&sigma, d)?, "gte_emmrs")?
        };
    }
    MeasureValue::new("gte_emmrs", libm::cbrt(prod), MeasureMode::DirectFunctional)
}

/// Squared one-vs-rest concurrences `2 (1 - Tr sigma_X^2)`.
fn squared_cut_concurrences(rho: &DensityMatrix) -> Result<[f64; 3]> {
    let r = single_party_reductions(rho)?;
    let mut out = [0.0; 3];
    for (o, sigma) in out.iter_mut().zip(&r) {
        *o = clamp_zero(2.0 * (1.0 - sigma.purity()), "squared concurrence")?;
    }
    Ok(out)
}

/// Minimum one-vs-rest concurrence.
pub fn gme_concurrence_direct(rho: &DensityMatrix) -> Result<MeasureValue> {
    let c2 = squared_cut_concurrences(rho)?;
    let min = c2.iter().copied().fold(f64::INFINITY, f64::min);
    MeasureValue::new("gme_concurrence", libm::sqrt(min), MeasureMode::DirectFunctional)
}

/// Area of the triangle with sides `C^2_{1(23)}, C^2_{2(13)}, C^2_{3(12)}`,
/// normalized to 1 on GHZ.
pub fn concurrence_fill(rho: &DensityMatrix) -> Result<MeasureValue> {
    let c2 = squared_cut_concurrences(rho)?;
    let p = c2.iter().sum::<f64>() / 2.0;
    let rad = p * (p - c2[0]) * (p - c2[1]) * (p - c2[2]);
    if rad < -FILL_RADICAND_TOL {
        return Err(Error::Numeric(format!(
            "concurrence fill radicand {rad:e}: squared concurrences {c2:?} violate the triangle inequality"
        )));
    }
    let area = 4.0 / libm::sqrt(3.0) * libm::sqrt(rad.max(0.0));
    MeasureValue::new("concurrence_fill", area, MeasureMode::DirectFunctional)
}

/// Two-qubit concurrence `max(0, l1 - l2 - l3 - l4)`, `l_i` the descending
/// square roots of the eigenvalues of `sqrt(rho) rho~ sqrt(rho)`,
/// `rho~ = (Y x Y) rho* (Y x Y)`.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::Shape(format!(
            "expected a two-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    #[rustfmt::skip]
    let yy = CMatrix::from_real(4, 4, &[
        0.0, 0.0, 0.0, -1.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        -1.0, 0.0, 0.0, 0.0,
    ])?;
    let tilde = yy.matmul(&rho.matrix().conj())?.matmul(&yy)?;
    let eig = numerics::hermitian_eigen(rho.matrix(), DEFAULT_HERM_TOL)?;
    let v = CMatrix::from_fn(4, 4, |i, k| eig.vectors[(i, k)]);
    let d = CMatrix::from_diag(&eig.values.iter().map(|l| libm::sqrt(l.max(0.0))).collect::<Vec<_>>());
    let root = v.matmul(&d)?.matmul(&v.adjoint())?;
    let r = root.matmul(&tilde)?.matmul(&root)?.hermitian_part();
    let l: Vec<f64> = numerics::hermitian_eigenvalues(&r, DEFAULT_HERM_TOL)?
        .into_iter()
        .map(|x| libm::sqrt(x.max(0.0)))
        .collect();
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::test_util::*;
    use crate::numerics::{c, re};
    use crate::states::test_states::*;
    use crate::states::{family, validate, State};
    use crate::Complex64;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn mixed(name: &str, p: &[f64]) -> DensityMatrix {
        family(name, p).unwrap().density()
    }

    fn pure(name: &str) -> PureState {
        match family(name, &[]).unwrap() {
            State::Pure(p) => p,
            State::Mixed(_) => unreachable!(),
        }
    }

    fn diag_state(d: &[f64]) -> DensityMatrix {
        validate(CMatrix::from_diag(d), &[d.len()], 1e-8).unwrap()
    }

    fn random_unitary(g: &mut ChaCha8Rng, n: usize) -> CMatrix {
        let h = random_hermitian(g, n);
        let e = numerics::hermitian_eigen(&h, 1e-8).unwrap();
        let v = CMatrix::from_fn(n, n, |i, k| e.vectors[(i, k)]);
        let ph = CMatrix::from_fn(n, n, |i, k| {
            if i == k {
                Complex64::from_polar(1.0, 3.0 * e.values[i])
            } else {
                re(0.0)
            }
        });
        v.matmul(&ph).unwrap().matmul(&v.adjoint()).unwrap()
    }

    fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
        let (p, q) = (b.rows(), b.cols());
        CMatrix::from_fn(a.rows() * p, a.cols() * q, |i, j| a[(i / p, j / q)] * b[(i % p, j % q)])
    }

    fn apply(u: &CMatrix, psi: &PureState) -> PureState {
        let v: Vec<Complex64> = (0..u.rows())
            .map(|i| (0..u.cols()).map(|j| u[(i, j)] * psi.amplitudes()[j]).sum())
            .collect();
        PureState::new(v, psi.dims()).unwrap()
    }

    fn zero_bell() -> PureState {
        let mut v = alloc::vec![re(0.0); 8];
        v[0] = re(1.0);
        v[3] = re(1.0);
        PureState::normalized(v, &[2, 2, 2]).unwrap()
    }

    #[test]
    fn concurrence_pure_examples() {
        let prod = PureState::product(&[
            alloc::vec![re(0.6), c(0.0, 0.8)],
            alloc::vec![re(1.0), re(0.0), re(0.0)],
        ])
        .unwrap();
        assert!(close(concurrence_pure(&prod).unwrap().value, 0.0, 1e-12));
        assert!(close(concurrence_pure(&pure("bell")).unwrap().value, 1.0, 1e-12));
        let want = libm::sqrt(11.0 / 9.0);
        let c1 = concurrence_pure(&pure("phi1")).unwrap().value;
        let c2 = concurrence_pure(&pure("phi2")).unwrap().value;
        assert!(close(c1, want, 1e-12) && close(c1, c2, 1e-12));
        assert!(concurrence_pure(&pure("ghz3")).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let b = concurrence_lower_bound(&mixed("bell", &[])).unwrap();
        let want = libm::sqrt(libm::sqrt(1.5) + 1.0) - 1.0;
        assert!(close(b.m1, want, 1e-12) && close(b.m2, want, 1e-12) && close(b.bound, want, 1e-12));
        let mut g = rng(40);
        for i in 0..60 {
            let (m, n) = [(2, 2), (2, 3), (3, 3)][i % 3];
            let rho = random_separable(&mut g, m, n, 1 + i % 5);
            let b = concurrence_lower_bound(&rho).unwrap();
            assert!(b.m1 <= 0.0 && b.m2 <= 0.0 && b.bound == 0.0, "{b:?}");
        }
        let mm = mixed("maximally_mixed", &[1.0, 3.0]);
        assert!(matches!(concurrence_lower_bound(&mm), Err(Error::Degenerate(_))));
    }

    #[test]
    fn lower_bound_below_concurrence_two_qubits() {
        let mut g = rng(41);
        for _ in 0..100 {
            let rho = random_mixed(&mut g, &[2, 2], 2);
            let b = concurrence_lower_bound(&rho).unwrap();
            assert!(b.bound <= wootters_concurrence(&rho).unwrap() + 1e-10);
        }
    }

    #[test]
    fn isotropic3_bound_threshold() {
        let f = |s: f64| {
            let b = concurrence_lower_bound(&mixed("isotropic3", &[s])).unwrap();
            b.m1.max(b.m2)
        };
        let (mut lo, mut hi) = (0.3, 0.9);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!(close(lo, 0.5994, 5e-4));
    }

    #[test]
    fn functional_examples() {
        let mut g = rng(42);
        for m in 2..=9 {
            let psi = random_pure(&mut g, &[m]);
            assert!(close(moment_functional(&psi.to_density(), m).unwrap(), 0.0, 1e-12));
        }
        assert!(close(
            moment_functional(&diag_state(&[0.5, 0.5]), 2).unwrap(),
            0.25,
            1e-15
        ));
        let v = moment_functional(&diag_state(&[0.5, 1.0 / 3.0, 1.0 / 6.0]), 3).unwrap();
        assert!(close(v, 1.0 - 0.25 - 0.25 / 6.0 - 0.5 * 7.0 / 18.0, 1e-14));
        assert!(close(v, 0.5139, 5e-5));
        assert!(matches!(
            moment_functional(&diag_state(&[1.0]), 1),
            Err(Error::Argument(_))
        ));
        assert!(moment_functional(&diag_state(&[0.5, 0.25, 0.25]), 2).is_err());
    }

    #[test]
    fn weights_sum_to_one_in_integers() {
        for m in 2usize..=40 {
            let (num, den): (usize, usize) = if m % 2 == 0 {
                let s: usize = (1..=m / 2).map(|i| 4 * i + (2 * m + 4 - 4 * i)).sum();
                (s, m * m + 2 * m)
            } else {
                let s: usize = (1..=(m - 1) / 2).map(|i| 4 * i + (2 * m + 2 - 4 * i)).sum();
                (s + 2 * (m + 1), (m + 1) * (m + 1))
            };
            assert_eq!(num, den, "m = {m}");
            let w = moment_weights(m).unwrap();
            assert!(w.iter().all(|&x| x >= 0.0));
            assert!(close(w.iter().sum::<f64>(), 1.0, 1e-14));
        }
    }

    #[test]
    fn emmrs_pure_examples() {
        assert!(close(emmrs_pure(&pure("phi1")).unwrap().value, 0.5139, 5e-5));
        assert!(close(emmrs_pure(&pure("phi2")).unwrap().value, 0.5126, 5e-5));
        assert!(close(emmrs_pure(&pure("bell")).unwrap().value, 0.25, 1e-14));
        let prod = PureState::product(&[
            alloc::vec![re(1.0), re(1.0)],
            alloc::vec![re(0.0), re(1.0), c(0.0, 1.0)],
        ])
        .unwrap();
        let prod = PureState::normalized(prod.amplitudes().to_vec(), &[2, 3]).unwrap();
        assert!(close(emmrs_pure(&prod).unwrap().value, 0.0, 1e-12));
        assert_eq!(emmrs_pure(&pure("bell")).unwrap().mode, MeasureMode::PureExact);
    }

    #[test]
    fn emmrs_direct_examples() {
        let v = emmrs_direct(&mixed("maximally_mixed", &[3.0, 3.0]), Side::Smaller).unwrap();
        assert!(close(v.value, 1.0 - 0.25 - 0.25 / 9.0 - 0.5 / 3.0, 1e-14));
        assert_eq!(v.mode, MeasureMode::DirectFunctional);
        for name in ["phi1", "phi2", "bell"] {
            let p = pure(name);
            let d = emmrs_direct(&p.to_density(), Side::Smaller).unwrap().value;
            assert!(close(d, emmrs_pure(&p).unwrap().value, 1e-12));
        }
        let v = emmrs_direct(&mixed("rho_a", &[0.3]), Side::A).unwrap().value;
        assert!(close(v, 0.5096875, 1e-12));
        let mut g = rng(43);
        let p = random_pure(&mut g, &[2, 3]);
        let a = emmrs_direct(&p.to_density(), Side::A).unwrap().value;
        let s = emmrs_direct(&p.to_density(), Side::Smaller).unwrap().value;
        assert!(close(a, s, 1e-12));
        assert!(close(s, emmrs_pure(&p).unwrap().value, 1e-12));
    }

    #[test]
    fn gte_examples() {
        assert!(close(gte_emmrs_pure(&pure("ghz3")).unwrap().value, 0.25, 1e-12));
        assert!(close(gte_emmrs_pure(&pure("w3")).unwrap().value, 2.0 / 9.0, 1e-12));
        assert_eq!(gte_emmrs_pure(&zero_bell()).unwrap().value, 0.0);
        let f0 = gte_emmrs_direct(&mixed("rho_f", &[0.0])).unwrap().value;
        assert!(close(f0, libm::cbrt(15.0 / 1024.0), 1e-12));
        let f1 = gte_emmrs_direct(&mixed("rho_f", &[1.0])).unwrap().value;
        assert!(close(f1, libm::cbrt(945.0 / 65536.0), 1e-12));
        for k in 0..=20 {
            let f = k as f64 / 20.0;
            let f2 = f * f;
            let printed = libm::cbrt((240.0 * f2 * f2 + 465.0 * f2 + 240.0) / (16384.0 * (1.0 + f2) * (1.0 + f2)));
            assert!(close(
                gte_emmrs_direct(&mixed("rho_f", &[f])).unwrap().value,
                printed,
                1e-12
            ));
        }
        let mut g = rng(44);
        for _ in 0..10 {
            let p = random_pure(&mut g, &[2, 2, 2]);
            let a = gte_emmrs_pure(&p).unwrap().value;
            let b = gte_emmrs_direct(&p.to_density()).unwrap().value;
            assert!(close(a, b, 1e-12));
            assert!(a > 0.0);
        }
    }

    #[test]
    fn gme_and_fill_examples() {
        for k in 0..=10 {
            let f = k as f64 / 10.0;
            let v = gme_concurrence_direct(&mixed("rho_f", &[f])).unwrap().value;
            assert!(close(v, libm::sqrt(15.0) / 4.0, 1e-12));
        }
        let ghz = pure("ghz3").to_density();
        assert!(close(gme_concurrence_direct(&ghz).unwrap().value, 1.0, 1e-12));
        assert!(close(
            gme_concurrence_direct(&zero_bell().to_density()).unwrap().value,
            0.0,
            1e-12
        ));
        assert!(close(concurrence_fill(&ghz).unwrap().value, 1.0, 1e-12));
        assert!(close(
            concurrence_fill(&zero_bell().to_density()).unwrap().value,
            0.0,
            1e-12
        ));
        let heron = |c: [f64; 3]| {
            let p = (c[0] + c[1] + c[2]) / 2.0;
            4.0 / libm::sqrt(3.0) * libm::sqrt(p * (p - c[0]) * (p - c[1]) * (p - c[2]))
        };
        let f0 = concurrence_fill(&mixed("rho_f", &[0.0])).unwrap().value;
        let f1 = concurrence_fill(&mixed("rho_f", &[1.0])).unwrap().value;
        assert!(close(f0, heron([1.0, 1.0, 15.0 / 16.0]), 1e-12));
        assert!(close(f1, heron([1.0, 63.0 / 64.0, 15.0 / 16.0]), 1e-12));
        assert!(close(f0, 0.9563, 1e-4) && close(f1, 0.9465, 1e-4));
    }

    #[test]
    fn wootters_examples() {
        assert!(close(wootters_concurrence(&mixed("bell", &[])).unwrap(), 1.0, 1e-10));
        for k in 0..=20 {
            let u = k as f64 / 20.0;
            let w = wootters_concurrence(&mixed("werner", &[u])).unwrap();
            assert!(close(w, ((3.0 * u - 1.0) / 2.0).max(0.0), 1e-9));
        }
        let prod = PureState::product(&[alloc::vec![re(0.6), c(0.0, 0.8)], alloc::vec![re(0.8), re(0.6)]]).unwrap();
        assert!(close(wootters_concurrence(&prod.to_density()).unwrap(), 0.0, 1e-7));
        assert!(wootters_concurrence(&mixed("isotropic3", &[0.5])).is_err());
        let mut g = rng(45);
        for _ in 0..30 {
            let p = random_pure(&mut g, &[2, 2]);
            let w = wootters_concurrence(&p.to_density()).unwrap();
            assert!(close(w, concurrence_pure(&p).unwrap().value, 1e-7));
        }
    }

    #[test]
    fn functional_nonnegative_and_concave() {
        let mut g = rng(46);
        for d in 2..=9 {
            for _ in 0..500 {
                let rank = 1 + (rand_chacha::rand_core::RngCore::next_u32(&mut g) as usize) % d;
                let s = random_mixed(&mut g, &[d], rank);
                assert!(moment_functional(&s, d).unwrap() >= -1e-12);
            }
            for _ in 0..20 {
                let s1 = random_mixed(&mut g, &[d], 1 + d / 2);
                let s2 = random_mixed(&mut g, &[d], 1);
                let t = uniform(&mut g).abs();
                let mix = s1.mix(&s2, t).unwrap();
                let lhs = moment_functional(&mix, d).unwrap();
                let rhs = t * moment_functional(&s1, d).unwrap() + (1.0 - t) * moment_functional(&s2, d).unwrap();
                assert!(lhs >= rhs - 1e-10);
            }
        }
    }

    #[test]
    fn power_trace_convexity() {
        let mut g = rng(47);
        for _ in 0..50 {
            let d = 2 + (rand_chacha::rand_core::RngCore::next_u32(&mut g) as usize) % 5;
            let states: Vec<DensityMatrix> = (0..3).map(|_| random_mixed(&mut g, &[d], 2)).collect();
            let mut w: Vec<f64> = (0..3).map(|_| uniform(&mut g).abs() + 0.01).collect();
            let tot: f64 = w.iter().sum();
            w.iter_mut().for_each(|x| *x /= tot);
            let mix = DensityMatrix::mixture(&w, &states).unwrap();
            let tm = numerics::power_traces(mix.matrix(), 6, 1e-8).unwrap();
            let ts: Vec<Vec<f64>> = states
                .iter()
                .map(|s| numerics::power_traces(s.matrix(), 6, 1e-8).unwrap())
                .collect();
            for n in 2..=6 {
                let avg: f64 = w.iter().zip(&ts).map(|(w, t)| w * t[n - 1]).sum();
                assert!(tm[n - 1] <= avg + 1e-10);
            }
        }
    }

    #[test]
    fn local_unitary_invariance_and_qubit_reduction() {
        let mut g = rng(48);
        for dims in [[2, 2], [2, 3], [3, 3], [3, 4]] {
            for _ in 0..10 {
                let psi = random_pure(&mut g, &dims);
                let u = kron(&random_unitary(&mut g, dims[0]), &random_unitary(&mut g, dims[1]));
                let a = emmrs_pure(&psi).unwrap().value;
                let b = emmrs_pure(&apply(&u, &psi)).unwrap().value;
                assert!(close(a, b, 1e-10));
            }
        }
        for _ in 0..50 {
            let psi = random_pure(&mut g, &[2, 2]);
            let c = concurrence_pure(&psi).unwrap().value;
            assert!(close(emmrs_pure(&psi).unwrap().value, c * c / 4.0, 1e-12));
        }
    }

    #[test]
    fn biseparable_tripartite_vanish() {
        let mut g = rng(49);
        for party in 0..3 {
            // one party factored out, the other two random
            let single = random_vector(&mut g, 2);
            let pair = random_pure(&mut g, &[2, 2]);
            let prod = PureState::product(&[single, pair.amplitudes().to_vec()]).unwrap();
            let prod = PureState::normalized(prod.amplitudes().to_vec(), &[2, 2, 2]).unwrap();
            let order: Vec<usize> = match party {
                0 => alloc::vec![0, 1, 2],
                1 => alloc::vec![1, 0, 2],
                _ => alloc::vec![1, 2, 0],
            };
            let psi = prod.permuted(&order).unwrap();
            assert_eq!(gte_emmrs_pure(&psi).unwrap().value, 0.0);
            assert!(close(concurrence_fill(&psi.to_density()).unwrap().value, 0.0, 1e-7));
        }
        assert!(gte_emmrs_pure(&pure("ghz3")).unwrap().value > 0.0);
        assert!(gte_emmrs_pure(&pure("w3")).unwrap().value > 0.0);
    }

    #[test]
    fn clamp_policy() {
        assert_eq!(clamp_zero(-1e-13, "x").unwrap(), 0.0);
        assert_eq!(clamp_zero(1e-13, "x").unwrap(), 0.0);
        assert_eq!(clamp_zero(0.5, "x").unwrap(), 0.5);
        assert!(matches!(clamp_zero(-1e-6, "x"), Err(Error::Numeric(_))));
    }
}
