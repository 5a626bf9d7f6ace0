//! Euclidean two-point function G(tau) = <x(tau) x(0)> of the
//! acceleration oscillator, computed along independent routes that must
//! agree: a closed form, a truncated spectral sum, a certified numerical
//! momentum integral, and (in the degenerate sector) the equal-frequency
//! closed form. The lattice and Jordan-block routes live in their own
//! modules; [`Route`] names all of them for table output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LevelIndex, ModelParams, Regime};
use crate::par;
use crate::spectrum;
use crate::wavefunc::pair_integral;

/// How a propagator value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ClosedForm,
    Spectral,
    MomentumIntegral,
    Lattice,
    Jordan,
    EqualClosedForm,
}

impl Route {
    pub fn label(&self) -> &'static str {
        match self {
            Route::ClosedForm => "closed_form",
            Route::Spectral => "spectral",
            Route::MomentumIntegral => "momentum_integral",
            Route::Lattice => "lattice",
            Route::Jordan => "jordan",
            Route::EqualClosedForm => "equal_closed_form",
        }
    }
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// G(tau) = [ e^{-omega2 tau}/omega2 - e^{-omega1 tau}/omega1 ]
///          / (2 gamma (omega1^2 - omega2^2)),   tau >= 0.
///
/// Undefined at equal frequencies (0/0); use
/// [`equal_frequency_closed_form`] there.
pub fn closed_form(tau: f64, params: &ModelParams) -> Result<f64> {
    if !(tau >= 0.0) {
        return Err(Error::InvalidInput("tau must be non-negative"));
    }
    if params.regime() == Regime::EqualFrequency {
        return Err(Error::DegenerateTransform);
    }
    let g = params.gamma();
    let (w1, w2) = (params.omega1(), params.omega2());
    Ok(((-w2 * tau).exp() / w2 - (-w1 * tau).exp() / w1) / (2.0 * g * params.freq_sq_split()))
}

/// Residues of x between the vacuum and the two first excited pairs,
/// computed as exact pair integrals:
///
///   G_1 = <dual vac | x | state (1,0)> <dual (1,0) | x | state vac>,
///   G_2 = likewise through level (0,1),
///
/// so that G(tau) = e^{-omega1 tau} G_1 + e^{-omega2 tau} G_2. G_1 is
/// negative, G_2 positive, and G_1 + G_2 equals G(0).
pub fn spectral_coefficients(params: &ModelParams) -> Result<(f64, f64)> {
    let vac = spectrum::vacuum(params);
    let mut out = [0.0; 2];
    for (slot, level) in [(0, LevelIndex::new(1, 0)), (1, LevelIndex::new(0, 1))] {
        let pair = spectrum::eigenpair(level, params)?;
        let up = pair_integral(&vac.dual, &pair.state.times_monomial(1, 0))?;
        let down = pair_integral(&pair.dual, &vac.state.times_monomial(1, 0))?;
        out[slot] = up * down;
    }
    Ok((out[0], out[1]))
}

/// Two-level truncation of the spectral representation; exact for this
/// model because x only connects the vacuum to the first excited pair of
/// each tower.
pub fn spectral_two_level(tau: f64, params: &ModelParams) -> Result<f64> {
    if !(tau >= 0.0) {
        return Err(Error::InvalidInput("tau must be non-negative"));
    }
    let (g1, g2) = spectral_coefficients(params)?;
    Ok((-params.omega1() * tau).exp() * g1 + (-params.omega2() * tau).exp() * g2)
}

/// 16-point Gauss-Legendre rule on [-1, 1].
const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_8,
    0.755_404_408_355_003,
    0.865_631_202_387_831_8,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_5,
    0.149_595_988_816_576_7,
    0.124_628_971_255_534,
    0.095_158_511_682_492_8,
    0.062_253_523_938_647_9,
    0.027_152_459_411_754_1,
];

fn integrate_panels(k_max: f64, panels: usize, f: impl Fn(f64) -> f64 + Sync) -> f64 {
    let width = k_max / panels as f64;
    par::block_sum(panels, 64, |p| {
        let mid = (p as f64 + 0.5) * width;
        let half = 0.5 * width;
        let mut acc = 0.0;
        for i in 0..8 {
            acc += GL16_W[i] * (f(mid + half * GL16_X[i]) + f(mid - half * GL16_X[i]));
        }
        acc * half
    })
}

/// G(tau) as the momentum integral
/// (1/(pi gamma)) int_0^inf cos(k tau) / ((k^2+omega1^2)(k^2+omega2^2)) dk,
/// valid in both regimes.
///
/// The cutoff K is chosen from the tail bound
/// |tail| <= 1/(3 pi gamma K^3) <= abs_tol/2, and the panel count is
/// doubled until two successive quadratures agree to abs_tol/2, so the
/// returned value is certified to the requested relative tolerance.
/// Tolerances below 1e-12 are rejected, and a cutoff beyond the supported
/// maximum reports [`Error::PrecisionUnreachable`].
pub fn momentum_integral(tau: f64, params: &ModelParams, rel_tol: f64) -> Result<f64> {
    if !(tau >= 0.0) {
        return Err(Error::InvalidInput("tau must be non-negative"));
    }
    if !(rel_tol >= 1e-12) {
        return Err(Error::InvalidInput("rel_tol must be at least 1e-12"));
    }
    let g = params.gamma();
    let (w1, w2) = (params.omega1(), params.omega2());
    let integrand = |k: f64| (k * tau).cos() / ((k * k + w1 * w1) * (k * k + w2 * w2));
    let prefactor = 1.0 / (std::f64::consts::PI * g);

    // Coarse pass to estimate the magnitude that "relative" refers to.
    let k_coarse = 50.0 * w1;
    let coarse = prefactor * integrate_panels(k_coarse, 400, integrand);
    let abs_tol = rel_tol * coarse.abs();

    const K_MAX: f64 = 2.0e5;
    let k_cut = (2.0 / (3.0 * std::f64::consts::PI * g * abs_tol)).cbrt();
    if !k_cut.is_finite() || k_cut > K_MAX {
        return Err(Error::PrecisionUnreachable {
            requested: rel_tol,
            cutoff: k_cut,
        });
    }
    let k_cut = k_cut.max(k_coarse);

    // Initial panel width resolves both the Lorentzian peak and the cosine.
    let mut width = (0.5 * w2).min(1.0);
    if tau > 0.0 {
        width = width.min(std::f64::consts::FRAC_PI_2 / tau);
    }
    let mut panels = (k_cut / width).ceil() as usize;
    let mut previous = prefactor * integrate_panels(k_cut, panels, integrand);
    for _ in 0..8 {
        panels *= 2;
        let refined = prefactor * integrate_panels(k_cut, panels, integrand);
        if (refined - previous).abs() <= 0.5 * abs_tol {
            return Ok(refined);
        }
        previous = refined;
    }
    Err(Error::PrecisionUnreachable {
        requested: rel_tol,
        cutoff: k_cut,
    })
}

/// Degenerate-sector closed form
/// G(tau) = (1/(4 gamma omega^3)) e^{-omega tau} (1 + omega tau),
/// the omega1, omega2 -> omega limit of [`closed_form`].
pub fn equal_frequency_closed_form(tau: f64, gamma: f64, omega: f64) -> f64 {
    (1.0 / (4.0 * gamma * omega.powi(3))) * (-omega * tau).exp() * (1.0 + omega * tau)
}

/// One row of a degenerate-limit scan: the split propagator at
/// omega +/- epsilon against its equal-frequency limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanPoint {
    pub epsilon: f64,
    pub split_value: f64,
    pub limit_value: f64,
    pub abs_error: f64,
}

/// Evaluates [`closed_form`] at (omega + epsilon, omega - epsilon) for each
/// epsilon and compares with [`equal_frequency_closed_form`]. The error
/// shrinks quadratically in epsilon, which callers check by taking ratios
/// between successive halvings.
pub fn degenerate_limit_scan(
    tau: f64,
    gamma: f64,
    omega: f64,
    epsilons: &[f64],
) -> Result<Vec<ScanPoint>> {
    let limit_value = equal_frequency_closed_form(tau, gamma, omega);
    epsilons
        .iter()
        .map(|&eps| {
            if !(eps > 0.0 && eps < omega) {
                return Err(Error::InvalidPerturbation {
                    epsilon: eps,
                    omega,
                });
            }
            let params = ModelParams::new(gamma, omega + eps, omega - eps)?;
            let split_value = closed_form(tau, &params)?;
            Ok(ScanPoint {
                epsilon: eps,
                split_value,
                limit_value,
                abs_error: (split_value - limit_value).abs(),
            })
        })
        .collect()
}

/// A tau grid of propagator values produced by one route, ready for CSV or
/// JSON serialization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropagatorTable {
    pub route: Route,
    pub params: ModelParams,
    pub taus: Vec<f64>,
    pub values: Vec<f64>,
}

impl PropagatorTable {
    pub fn new(route: Route, params: ModelParams, taus: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(taus.len(), values.len(), "tau and value columns must align");
        Self {
            route,
            params,
            taus,
            values,
        }
    }

    /// Writes `tau,value,route` rows. Floats use the shortest
    /// representation that round-trips.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "tau,value,route")?;
        for (t, v) in self.taus.iter().zip(&self.values) {
            writeln!(out, "{t},{v},{}", self.route.label())?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialization cannot fail")
    }
}
