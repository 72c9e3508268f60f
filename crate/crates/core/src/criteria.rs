//! Moment-based separability tests and the exact PPT / realignment references.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::moments::{self, CoefficientVector, DEFAULT_RANK_TOL};
use crate::numerics::{self, DEFAULT_HERM_TOL};
use crate::states::{self, DensityMatrix};
use crate::{Error, Result};

/// Default strictness tolerance for all four criteria.
pub const DEFAULT_CRITERION_TOL: f64 = 1e-9;

/// Negative radicands smaller than this are rounding noise.
const RADICAND_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// Q-statistic from the first two realignment moments.
    Theorem1,
    /// Sign pattern of the partial-transpose characteristic polynomial.
    Theorem2,
    Realignment,
    Ppt,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::Theorem1,
        Criterion::Theorem2,
        Criterion::Realignment,
        Criterion::Ppt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Theorem1 => "theorem1",
            Criterion::Theorem2 => "theorem2",
            Criterion::Realignment => "realignment",
            Criterion::Ppt => "ppt",
        }
    }

    pub fn from_name(name: &str) -> Option<Criterion> {
        Criterion::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// There is no `Separable` verdict: none of the tests certify separability in
/// general (see [`CriterionReport::separable_certified`] for the exception).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Entangled => "Entangled",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Where the rank `q` used by the coefficient sign test comes from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RankSource {
    /// Count of partial-transpose eigenvalues with `|lambda| > 1e-8`.
    #[default]
    Spectrum,
    /// Highest nonvanishing characteristic coefficient (moments only).
    Coefficients,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub verdict: Verdict,
    pub statistic: f64,
    /// Signed distance past the threshold; positive whenever `Entangled`.
    pub margin: f64,
    /// Violated inequality index (coefficient test only).
    pub index: Option<usize>,
    /// Rank `q` used by the coefficient test.
    pub rank: Option<usize>,
    /// PPT in 2x2 / 2x3: Inconclusive here means separable.
    pub separable_certified: bool,
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn new(criterion: Criterion, entangled: bool, statistic: f64, margin: f64) -> Self {
        CriterionReport {
            criterion,
            verdict: if entangled {
                Verdict::Entangled
            } else {
                Verdict::Inconclusive
            },
            statistic,
            margin,
            index: None,
            rank: None,
            separable_certified: false,
            notes: Vec::new(),
        }
    }

    pub fn is_entangled(&self) -> bool {
        self.verdict == Verdict::Entangled
    }
}

fn clamp_radicand(x: f64, what: &str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -RADICAND_TOL {
        Ok(0.0)
    } else {
        Err(Error::Numeric(format!("{what} radicand {x:e} is negative")))
    }
}

/// `Q = sqrt(sqrt(2 (T1^2 - T2)) + T1)` from the first two realignment moments.
pub fn q_from_moments(t1: f64, t2: f64) -> Result<f64> {
    let inner = clamp_radicand(2.0 * (t1 * t1 - t2), "Q")?;
    Ok(libm::sqrt(libm::sqrt(inner) + t1))
}

/// The Q-statistic of a bipartite state.
///
/// `T1^2 - T2 = 2 e_2(s)` over the squared singular values `s` of the
/// realigned matrix; summing the pairwise products directly keeps product
/// states from producing rounding-sized negative radicands.
pub fn q_statistic(rho: &DensityMatrix) -> Result<f64> {
    rho.bipartite_dims()?;
    let s: Vec<f64> = numerics::singular_values(&states::realign(rho)?)
        .into_iter()
        .map(|x| x * x)
        .collect();
    let t1: f64 = s.iter().sum();
    let mut e2 = 0.0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            e2 += s[i] * s[j];
        }
    }
    Ok(libm::sqrt(t1 + libm::sqrt(4.0 * e2)))
}

pub fn theorem1_test(rho: &DensityMatrix, tol: f64) -> Result<CriterionReport> {
    let q = q_statistic(rho)?;
    Ok(CriterionReport::new(Criterion::Theorem1, q > 1.0 + tol, q, q - 1.0))
}

pub fn theorem2_test(rho: &DensityMatrix, tol: f64) -> Result<CriterionReport> {
    theorem2_test_with(rho, tol, RankSource::Spectrum)
}

/// Coefficient sign test on `rho^tau`.
///
/// Moments are taken of `p rho^tau` (`p = mn`), which scales `a_k` by `p^k`
/// and keeps coefficients of order one; a maximally mixed state has all scaled
/// coefficients equal to binomials instead of `p^-k`.
///
/// For PSD spectra every `a_k` with `k <= q` is strictly positive, and by
/// Descartes' rule a negative eigenvalue forces some `a_k < 0` with `k <= q`.
/// The verdict is therefore `Entangled` iff `min_{1<=k<=q} a_k < -tol`, and
/// `margin = -min a_k`. The reported index is the first `k < q` whose product
/// `a_k a_{k+1}` fails to be positive by more than `tol`; `statistic` is the
/// smallest such product.
pub fn theorem2_test_with(rho: &DensityMatrix, tol: f64, source: RankSource) -> Result<CriterionReport> {
    let (m, n) = rho.bipartite_dims()?;
    let p = m * n;
    let pt = states::partial_transpose(rho)?;
    let eig = numerics::hermitian_eigenvalues(&pt, DEFAULT_HERM_TOL)?;
    let scaled: Vec<f64> = eig.iter().map(|l| l * p as f64).collect();
    let t = numerics::power_sums(&scaled, p);
    let a = moments::newton_coefficients(&t, p)?;

    let q_spectrum = eig.iter().filter(|l| l.abs() > DEFAULT_RANK_TOL).count();
    // Coefficients are in scaled units; DEFAULT_RANK_TOL stays meaningful there.
    let q_coef = moments::rank_from_coefficients(&a, DEFAULT_RANK_TOL);
    let q = match source {
        RankSource::Spectrum => q_spectrum,
        RankSource::Coefficients => q_coef,
    };
    Ok(coefficient_report(&a, q, tol, q_spectrum, q_coef))
}

/// The coefficient sign test on coefficients `a_0..a_p` with rank `q`.
pub fn coefficient_sign_test(a: &CoefficientVector, q: usize, tol: f64) -> Result<CriterionReport> {
    if q >= a.values.len() {
        return Err(Error::Argument(format!(
            "rank {q} exceeds coefficient count {}",
            a.values.len() - 1
        )));
    }
    Ok(coefficient_report(a, q, tol, q, q))
}

fn coefficient_report(a: &CoefficientVector, q: usize, tol: f64, q_spectrum: usize, q_coef: usize) -> CriterionReport {
    let v = &a.values;
    let min_coef = v[1..=q].iter().copied().fold(f64::INFINITY, f64::min);
    let margin = if q == 0 { -1.0 } else { -min_coef };

    let mut statistic = f64::INFINITY;
    let mut index = None;
    for k in 0..q {
        let prod = v[k] * v[k + 1];
        statistic = statistic.min(prod);
        if index.is_none() && prod <= tol {
            index = Some(k);
        }
    }
    if q == 0 {
        statistic = 0.0;
    }

    let entangled = margin > tol;
    let mut r = CriterionReport::new(Criterion::Theorem2, entangled, statistic, margin);
    r.rank = Some(q);
    if entangled {
        r.index = index;
    } else if index.is_some() {
        r.notes.push(String::from("borderline coefficient within tolerance"));
    }
    if q_spectrum != q_coef {
        r.notes.push(format!(
            "rank disagreement: spectrum {q_spectrum}, coefficients {q_coef}"
        ));
    }
    r
}

/// Trace norm of the realigned matrix; `Entangled` iff above `1 + 1e-9`.
pub fn realignment_criterion(rho: &DensityMatrix) -> Result<CriterionReport> {
    rho.bipartite_dims()?;
    let norm = numerics::trace_norm(&states::realign(rho)?);
    Ok(CriterionReport::new(
        Criterion::Realignment,
        norm > 1.0 + DEFAULT_CRITERION_TOL,
        norm,
        norm - 1.0,
    ))
}

/// Minimum eigenvalue of the partial transpose; `Entangled` iff below `-tol`.
pub fn ppt_criterion(rho: &DensityMatrix, tol: f64) -> Result<CriterionReport> {
    let (m, n) = rho.bipartite_dims()?;
    let eig = numerics::hermitian_eigenvalues(&states::partial_transpose(rho)?, DEFAULT_HERM_TOL)?;
    let min = eig.last().copied().unwrap_or(0.0);
    let mut r = CriterionReport::new(Criterion::Ppt, min < -tol, min, -min);
    r.separable_certified = !r.is_entangled() && m * n <= 6;
    Ok(r)
}

/// All four criteria in the order theorem1, theorem2, realignment, ppt.
pub fn analyze(rho: &DensityMatrix) -> Result<Vec<CriterionReport>> {
    analyze_with(rho, DEFAULT_CRITERION_TOL)
}

pub fn analyze_with(rho: &DensityMatrix, tol: f64) -> Result<Vec<CriterionReport>> {
    Ok(vec![
        theorem1_test(rho, tol)?,
        theorem2_test(rho, tol)?,
        realignment_criterion(rho)?,
        ppt_criterion(rho, tol)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::test_util::*;
    use crate::numerics::{c, re};
    use crate::states::test_states::*;
    use crate::states::{family, PureState};
    use rand_chacha::rand_core::RngCore;

    const TOL: f64 = DEFAULT_CRITERION_TOL;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn mixed(name: &str, p: &[f64]) -> DensityMatrix {
        family(name, p).unwrap().density()
    }

    fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let flo = f(lo);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (flo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn q_examples() {
        assert!(close(
            q_statistic(&mixed("maximally_mixed", &[2.0, 2.0])).unwrap(),
            0.5,
            1e-12
        ));
        let bell = libm::sqrt(libm::sqrt(1.5) + 1.0);
        assert!(close(q_statistic(&mixed("bell", &[])).unwrap(), bell, 1e-12));
        assert!(close(q_statistic(&mixed("werner", &[0.6])).unwrap(), 1.0611, 1e-4));
        for k in 0..=20 {
            let u = k as f64 / 20.0;
            let q2 = libm::sqrt(3.0) / 2.0 * u * libm::sqrt(1.0 + u * u) + 0.25 + 0.75 * u * u;
            assert!(close(
                q_statistic(&mixed("werner", &[u])).unwrap(),
                libm::sqrt(q2),
                1e-12
            ));
        }
    }

    #[test]
    fn q_from_moments_matches_and_clamps() {
        assert!(close(
            q_from_moments(1.0, 0.25).unwrap(),
            libm::sqrt(libm::sqrt(1.5) + 1.0),
            1e-15
        ));
        assert_eq!(q_from_moments(0.25, 0.0625 + 1e-14).unwrap(), 0.5);
        assert!(matches!(q_from_moments(0.25, 0.07), Err(Error::Numeric(_))));
        let mut g = rng(30);
        for _ in 0..20 {
            let rho = random_mixed(&mut g, &[2, 3], 3);
            let t = moments::realignment_moments(&rho, 2).unwrap();
            let q = q_from_moments(t.values[0], t.values[1]).unwrap();
            assert!(close(q, q_statistic(&rho).unwrap(), 1e-10));
        }
    }

    #[test]
    fn theorem1_examples() {
        let w = theorem1_test(&mixed("werner", &[0.5]), TOL).unwrap();
        assert_eq!(w.verdict, Verdict::Inconclusive);
        assert!(w.margin < 0.0);
        let prod = PureState::product(&[vec![re(1.0), c(0.0, 2.0)], vec![re(0.5), re(-1.0)]]).unwrap();
        let r = theorem1_test(&prod.to_density(), TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.statistic <= 1.0 + 1e-12);
        assert!(theorem1_test(&mixed("bell", &[]), TOL).unwrap().is_entangled());
    }

    #[test]
    fn theorem2_examples() {
        let r = theorem2_test(&mixed("bell", &[]), TOL).unwrap();
        assert!(r.is_entangled());
        assert_eq!(r.index, Some(1));
        assert_eq!(r.rank, Some(4));
        assert!(r.margin > 0.0);
        assert!(theorem2_test(&mixed("isotropic2", &[0.6]), TOL).unwrap().is_entangled());
        let r = theorem2_test(&mixed("isotropic2", &[0.4]), TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.statistic > 0.0);

        let mut g = rng(31);
        for _ in 0..20 {
            let prod = PureState::product(&[random_vector(&mut g, 3), random_vector(&mut g, 2)]).unwrap();
            let r = theorem2_test(&prod.to_density(), TOL).unwrap();
            assert_eq!(r.verdict, Verdict::Inconclusive);
            assert_eq!(r.rank, Some(1));
            assert!(r.statistic > 0.0);
        }
        // Maximally mixed 3x3: a_9 = 9^-9 unscaled, but no violation.
        let r = theorem2_test(&mixed("maximally_mixed", &[3.0, 3.0]), TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.rank, Some(9));
        assert!(r.notes.is_empty());
    }

    #[test]
    fn coefficient_rank_source() {
        let r = theorem2_test_with(&mixed("bell", &[]), TOL, RankSource::Coefficients).unwrap();
        assert!(r.is_entangled());
        assert_eq!(r.rank, Some(4));
        let cv = CoefficientVector {
            values: vec![1.0, 1.0, 0.0, -0.25, -0.0625],
        };
        let r = coefficient_sign_test(&cv, 4, TOL).unwrap();
        assert!(r.is_entangled());
        assert_eq!(r.index, Some(1));
        assert!(coefficient_sign_test(&cv, 5, TOL).is_err());
        let cv = CoefficientVector {
            values: vec![1.0, 1.0, 0.375, 0.0625, 1.0 / 256.0],
        };
        assert!(!coefficient_sign_test(&cv, 4, TOL).unwrap().is_entangled());
    }

    #[test]
    fn realignment_examples() {
        for k in 0..=20 {
            let u = k as f64 / 20.0;
            let r = realignment_criterion(&mixed("werner", &[u])).unwrap();
            assert!(close(r.statistic, (1.0 + 3.0 * u) / 2.0, 1e-12));
            assert_eq!(r.is_entangled(), u > 1.0 / 3.0 + 1e-9);
        }
        let r = realignment_criterion(&mixed("maximally_mixed", &[2.0, 2.0])).unwrap();
        assert!(close(r.statistic, 0.5, 1e-14));
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let r = realignment_criterion(&mixed("bell", &[])).unwrap();
        assert!(close(r.statistic, 2.0, 1e-12));
        assert!(r.is_entangled());
    }

    #[test]
    fn ppt_examples() {
        for k in 0..=20 {
            let s = k as f64 / 20.0;
            let r = ppt_criterion(&mixed("isotropic3", &[s]), TOL).unwrap();
            assert!(close(r.statistic, (1.0 - 4.0 * s) / 9.0, 1e-12));
            assert_eq!(r.is_entangled(), s > 0.25);
            assert!(!r.separable_certified);
        }
        let r = ppt_criterion(&mixed("bell", &[]), TOL).unwrap();
        assert!(close(r.statistic, -0.5, 1e-12));
        assert!(r.is_entangled());
        let diag = states::validate(
            numerics::CMatrix::from_diag(&[0.1, 0.2, 0.3, 0.15, 0.25, 0.0]),
            &[2, 3],
            1e-8,
        )
        .unwrap();
        let r = ppt_criterion(&diag, TOL).unwrap();
        assert!(r.statistic >= 0.0);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.separable_certified);
    }

    #[test]
    fn analyze_examples() {
        let names: Vec<_> = analyze(&mixed("bell", &[]))
            .unwrap()
            .iter()
            .map(|r| r.criterion.name())
            .collect();
        assert_eq!(names, ["theorem1", "theorem2", "realignment", "ppt"]);
        assert!(analyze(&mixed("bell", &[])).unwrap().iter().all(|r| r.is_entangled()));
        assert!(analyze(&mixed("maximally_mixed", &[2.0, 2.0]))
            .unwrap()
            .iter()
            .all(|r| !r.is_entangled()));
        let w = analyze(&mixed("werner", &[0.45])).unwrap();
        assert_eq!(w[0].verdict, Verdict::Inconclusive);
        assert!(w[2].is_entangled());
        assert!(w[3].is_entangled());
        assert!(analyze(&mixed("ghz3", &[])).is_err());
    }

    #[test]
    fn entangled_implies_positive_margin() {
        let mut g = rng(32);
        for _ in 0..60 {
            let rank = 1 + (g.next_u64() % 9) as usize;
            let rho = random_mixed(&mut g, &[3, 3], rank);
            for r in analyze(&rho).unwrap() {
                assert!(!r.is_entangled() || r.margin > 0.0);
            }
        }
    }

    #[test]
    fn soundness_on_separables() {
        let mut g = rng(33);
        for i in 0..200 {
            let (m, n) = [(2, 2), (2, 3), (3, 3)][i % 3];
            let terms = 1 + (g.next_u64() % 6) as usize;
            let rho = random_separable(&mut g, m, n, terms);
            for r in analyze(&rho).unwrap() {
                assert_eq!(r.verdict, Verdict::Inconclusive, "{:?} on sample {i}", r.criterion);
            }
        }
    }

    #[test]
    fn theorem1_implies_realignment() {
        let mut g = rng(34);
        let mut flagged = 0;
        for i in 0..200 {
            let dims = [[2, 2], [2, 3], [3, 3]][i % 3];
            let rank = 1 + (g.next_u64() % 4) as usize;
            let rho = random_mixed(&mut g, &dims, rank);
            if theorem1_test(&rho, TOL).unwrap().is_entangled() {
                flagged += 1;
                assert!(realignment_criterion(&rho).unwrap().is_entangled());
            }
        }
        assert!(flagged > 10);
    }

    #[test]
    fn theorem2_agrees_with_ppt() {
        let mut g = rng(35);
        let mut both = [0usize; 2];
        for i in 0..200 {
            let dims = [[2, 2], [2, 3], [3, 2], [3, 3]][i % 4];
            let p = dims[0] * dims[1];
            let rank = 1 + (g.next_u64() % p as u64) as usize;
            let rho = if i % 5 == 0 {
                random_separable(&mut g, dims[0], dims[1], rank)
            } else {
                random_mixed(&mut g, &dims, rank)
            };
            let t2 = theorem2_test(&rho, 1e-8).unwrap();
            let ppt = ppt_criterion(&rho, 1e-8).unwrap();
            assert_eq!(t2.verdict, ppt.verdict, "sample {i}");
            both[t2.is_entangled() as usize] += 1;
        }
        assert!(both[0] > 20 && both[1] > 20);
    }

    #[test]
    fn werner_q_threshold() {
        let root = bisect(0.3, 0.9, |u| q_statistic(&mixed("werner", &[u])).unwrap() - 1.0);
        let closed = libm::sqrt(2.0 * libm::sqrt(7.0) - 5.0);
        assert!(close(root, closed, 1e-6));
        let u = closed;
        assert!(close(u * u * u * u + 10.0 * u * u - 3.0, 0.0, 1e-12));
    }

    #[test]
    fn isotropic2_theorem2_threshold() {
        let root = bisect(0.2, 0.9, |b| {
            theorem2_test(&mixed("isotropic2", &[b]), TOL).unwrap().margin
        });
        assert!(close(root, 0.5, 1e-6));
    }

    #[test]
    fn criterion_names_round_trip() {
        for c in Criterion::ALL {
            assert_eq!(Criterion::from_name(c.name()), Some(c));
        }
        assert_eq!(Criterion::from_name("nope"), None);
    }
}
