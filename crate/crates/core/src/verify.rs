//! Machine-checkable verification suites.
//!
//! Each suite re-derives a family of invariants numerically and reports
//! one line per check with the measured figure and its threshold. Output
//! is deterministic byte-for-byte for a given (suite, parameters, seed):
//! every reduction underneath is order-fixed, including the parallel ones.
//!
//! The report also carries the two known formula deviations this
//! implementation consciously adopts; they are part of the contract and
//! their list is expected to stay at exactly these two entries.

use serde::Serialize;

use crate::error::Result;
use crate::model::{self, LevelIndex, ModelParams, Regime, SimilarityCoefficients};
use crate::wavefunc::pair_integral;
use crate::{jordan, lattice, propagator, spectrum};

/// Which family of invariants to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Core,
    Spectrum,
    Propagator,
    Jordan,
    Lattice,
    All,
}

impl Suite {
    pub fn label(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Spectrum => "spectrum",
            Suite::Propagator => "propagator",
            Suite::Jordan => "jordan",
            Suite::Lattice => "lattice",
            Suite::All => "all",
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One verified invariant: the measured figure must not exceed the
/// threshold (or must sit inside it, for interval-style checks noted in
/// the detail).
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A formula variant that exists in circulation but is deliberately not
/// the one implemented, with the evidence for the choice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub id: &'static str,
    pub adopted: &'static str,
    pub rejected: &'static str,
    pub reason: &'static str,
}

/// The two adopted deviations. Kept in one place so every report carries
/// the same list.
pub fn known_deviations() -> Vec<Deviation> {
    vec![
        Deviation {
            id: "spectral-weight-denominator",
            adopted: "G1 = -1/(2 gamma (omega1^2 - omega2^2) omega1), \
                      G2 = +1/(2 gamma (omega1^2 - omega2^2) omega2)",
            rejected: "the same weights with (omega1^2 - omega2^2)^2 in the denominator",
            reason: "the squared variant fails the tau = 0 sum rule \
                     G1 + G2 = 1/(2 gamma omega1 omega2 (omega1 + omega2)) and \
                     disagrees with the residues measured by pair integrals",
        },
        Deviation {
            id: "equal-frequency-velocity-coefficient",
            adopted: "(gamma/2) 2 omega^2 v^2, i.e. gamma omega^2 v^2, in the \
                      equal-frequency Hamiltonian",
            rejected: "omega^2 v^2 without the gamma factor",
            reason: "only the gamma-scaled coefficient is the omega1 = omega2 \
                     specialization of the general Hamiltonian and annihilates \
                     the degenerate vacuum onto energy omega when gamma != 1",
        },
    ]
}

/// Full result of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub params: ModelParams,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub known_deviations: Vec<Deviation>,
    pub passed: bool,
}

impl VerifyReport {
    /// Deterministic pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    /// One human-readable line per check plus a trailer.
    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                format!(
                    "{} {} [{}]: measured {:e} vs threshold {:e}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    self.suite,
                    c.measured,
                    c.threshold,
                )
            })
            .collect();
        lines.push(format!(
            "{}: {} of {} checks passed",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        ));
        lines
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    /// Standard "measured at most threshold" check.
    fn le(&mut self, name: &str, measured: f64, threshold: f64) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: measured.is_finite() && measured <= threshold,
            measured,
            threshold,
            detail: None,
        });
    }

    fn le_with(&mut self, name: &str, measured: f64, threshold: f64, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: measured.is_finite() && measured <= threshold,
            measured,
            threshold,
            detail: Some(detail),
        });
    }

    /// Interval check: measured must lie in [lo, hi]; threshold records hi.
    fn within(&mut self, name: &str, measured: f64, lo: f64, hi: f64) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: measured.is_finite() && measured >= lo && measured <= hi,
            measured,
            threshold: hi,
            detail: Some(format!("must lie in [{lo}, {hi}]")),
        });
    }

    fn error(&mut self, name: &str, err: impl std::fmt::Display) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: false,
            measured: f64::NAN,
            threshold: 0.0,
            detail: Some(format!("failed to evaluate: {err}")),
        });
    }
}

/// Parameters the unequal-frequency checks run at: the given ones, or a
/// 2:1 split at the same gamma when the input is degenerate.
fn unequal_params(params: &ModelParams) -> ModelParams {
    if params.regime() == Regime::UnequalFrequency {
        *params
    } else {
        ModelParams::new(params.gamma(), 2.0 * params.omega1(), params.omega1())
            .expect("doubling a valid frequency stays valid")
    }
}

fn run_core(params: &ModelParams, rec: &mut Recorder) {
    let p = unequal_params(params);
    match SimilarityCoefficients::new(&p) {
        Ok(c) => {
            rec.le(
                "hyperbolic-identity",
                (c.big_a * c.big_a - c.big_b * c.big_b - 1.0).abs(),
                1e-12,
            );
            let l = (c.a * c.b).sqrt();
            let target = 2.0 * p.omega1() * p.omega2() / p.freq_sq_split();
            rec.le(
                "log-ratio-sinh-consistency",
                (l.sinh() - target).abs() / target,
                1e-12,
            );
            let swapped = ModelParams::new(p.gamma(), p.omega2(), p.omega1())
                .and_then(|s| SimilarityCoefficients::new(&s));
            match swapped {
                Ok(s) => rec.le(
                    "frequency-swap-symmetry",
                    (s.a - c.a).abs() + (s.b - c.b).abs() + (s.big_c - c.big_c).abs(),
                    0.0,
                ),
                Err(e) => rec.error("frequency-swap-symmetry", e),
            }
        }
        Err(e) => rec.error("hyperbolic-identity", e),
    }

    let mut worst = 0.0f64;
    for (a, b) in [((0, 0), (1, 2)), ((2, 1), (1, 3)), ((1, 1), (1, 1))] {
        let la = LevelIndex::new(a.0, a.1);
        let lb = LevelIndex::new(b.0, b.1);
        let sum = LevelIndex::new(a.0 + b.0, a.1 + b.1);
        let gap = model::energy(sum, &p) + model::energy(LevelIndex::new(0, 0), &p)
            - model::energy(la, &p)
            - model::energy(lb, &p);
        worst = worst.max(gap.abs());
    }
    rec.le("energy-additivity", worst, 1e-12);

    let miscount = (0..6u32)
        .filter(|&n| model::degeneracy_at_equal_frequency(n) != n + 1)
        .count();
    rec.le("equal-frequency-degeneracy-count", miscount as f64, 0.0);
}

fn run_spectrum(params: &ModelParams, rec: &mut Recorder) {
    let p = unequal_params(params);
    let h = spectrum::hamiltonian(&p);
    let hd = spectrum::hamiltonian_adjoint(&p);

    let mut worst_state = 0.0f64;
    let mut worst_dual = 0.0f64;
    for level in model::levels_up_to(4) {
        match spectrum::eigenpair(level, &p) {
            Ok(pair) => {
                worst_state =
                    worst_state.max(spectrum::eigen_residual(&h, &pair.state, pair.energy));
                worst_dual =
                    worst_dual.max(spectrum::eigen_residual(&hd, &pair.dual, pair.energy));
            }
            Err(e) => rec.error("eigen-residual", e),
        }
    }
    rec.le("eigen-residual-states", worst_state, 1e-10);
    rec.le("eigen-residual-duals", worst_dual, 1e-10);

    let levels = model::levels_up_to(3);
    match spectrum::orthonormality_matrix(&levels, &p) {
        Ok(m) => {
            let mut off = 0.0f64;
            for (i, row) in m.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    off = off.max((x - want).abs());
                }
            }
            rec.le("orthonormality-matrix", off, 1e-10);
        }
        Err(e) => rec.error("orthonormality-matrix", e),
    }

    match (
        spectrum::eigenpair(LevelIndex::new(1, 0), &p),
        spectrum::eigenpair(LevelIndex::new(0, 1), &p),
    ) {
        (Ok(e10), Ok(e01)) => {
            let d10 = e10.dual.sub(&e10.state.parity_flip_x()).poly.max_abs_coeff();
            let d01 = e01.dual.sub(&e01.state.parity_flip_v()).poly.max_abs_coeff();
            rec.le(
                "first-level-parity-duality",
                d10.max(d01) / e10.normalization,
                1e-12,
            );
        }
        (Err(e), _) | (_, Err(e)) => rec.error("first-level-parity-duality", e),
    }

    let mut min_norm = f64::INFINITY;
    for level in model::levels_up_to(4) {
        if let Ok(pair) = spectrum::eigenpair(level, &p) {
            min_norm = min_norm.min(pair.normalization);
        }
    }
    rec.within("normalization-positivity", min_norm, f64::MIN_POSITIVE, f64::INFINITY);

    let mut worst = 0.0f64;
    let mut report = String::new();
    for level in [LevelIndex::new(0, 0), LevelIndex::new(1, 0), LevelIndex::new(0, 1)] {
        match (
            spectrum::eigenpair(level, &p),
            spectrum::normalization_constant(level, &p),
        ) {
            (Ok(pair), Ok(tab)) => {
                worst = worst.max((pair.normalization - tab).abs() / tab);
                report.push_str(&format!(
                    "{level}: constructed {:.15e}, tabulated {:.15e}; ",
                    pair.normalization, tab
                ));
            }
            (Err(e), _) | (_, Err(e)) => rec.error("normalization-closed-form", e),
        }
    }
    rec.le_with("normalization-closed-form", worst, 1e-10, report);
}

fn run_propagator(params: &ModelParams, rec: &mut Recorder) {
    let taus = [0.0, 0.1, 0.5, 1.0, 2.5];
    let mut sets = vec![unequal_params(params)];
    for (g, w1, w2) in [(1.3, 2.2, 0.9), (0.7, 1.9, 0.4)] {
        sets.push(ModelParams::new(g, w1, w2).expect("fixed parameter sets are valid"));
    }

    let mut worst_momentum = 0.0f64;
    let mut worst_spectral = 0.0f64;
    let mut worst_sum_rule = 0.0f64;
    for p in &sets {
        for &tau in &taus {
            match (
                propagator::closed_form(tau, p),
                propagator::momentum_integral(tau, p, 1e-10),
                propagator::spectral_two_level(tau, p),
            ) {
                (Ok(cf), Ok(mi), Ok(sp)) => {
                    worst_momentum = worst_momentum.max((mi / cf - 1.0).abs());
                    worst_spectral = worst_spectral.max((sp / cf - 1.0).abs());
                }
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                    rec.error("route-agreement", e)
                }
            }
        }
        if let Ok(g0) = propagator::closed_form(0.0, p) {
            let formula = 1.0 / (2.0 * p.gamma() * p.omega1() * p.omega2() * (p.omega1() + p.omega2()));
            worst_sum_rule = worst_sum_rule.max((g0 / formula - 1.0).abs());
        }
    }
    rec.le("momentum-integral-vs-closed-form", worst_momentum, 1e-8);
    rec.le("spectral-sum-vs-closed-form", worst_spectral, 1e-10);
    rec.le("equal-time-sum-rule", worst_sum_rule, 1e-14);

    match propagator::spectral_coefficients(&sets[0]) {
        Ok((g1, g2)) => {
            let signs_ok = g1 < 0.0 && g2 > 0.0;
            let g0 = propagator::closed_form(0.0, &sets[0]).unwrap_or(f64::NAN);
            rec.le_with(
                "spectral-weights-signs-and-sum",
                if signs_ok { (g1 + g2 - g0).abs() / g0 } else { f64::INFINITY },
                1e-12,
                format!("G1 = {g1:e} (must be < 0), G2 = {g2:e} (must be > 0)"),
            );
        }
        Err(e) => rec.error("spectral-weights-signs-and-sum", e),
    }

    let p = &sets[0];
    let mut min_drop = f64::INFINITY;
    let mut prev = f64::INFINITY;
    for i in 0..=30 {
        let tau = 0.1 * i as f64;
        match propagator::closed_form(tau, p) {
            Ok(g) => {
                if g <= 0.0 {
                    min_drop = f64::NEG_INFINITY;
                }
                if prev.is_finite() {
                    min_drop = min_drop.min(prev - g);
                }
                prev = g;
            }
            Err(e) => rec.error("positivity-and-decay", e),
        }
    }
    rec.within("positivity-and-decay", min_drop, 0.0, f64::INFINITY);

    let mut worst_equal = 0.0f64;
    for &tau in &[0.0, 0.5, 1.0] {
        let closed = propagator::equal_frequency_closed_form(tau, 1.0, 1.0);
        match ModelParams::new(1.0, 1.0, 1.0)
            .and_then(|eq| propagator::momentum_integral(tau, &eq, 1e-10))
        {
            Ok(mi) => worst_equal = worst_equal.max((mi / closed - 1.0).abs()),
            Err(e) => rec.error("equal-frequency-momentum-route", e),
        }
    }
    rec.le("equal-frequency-momentum-route", worst_equal, 1e-8);

    match propagator::degenerate_limit_scan(1.0, 1.0, 1.0, &[1e-2, 5e-3, 2.5e-3]) {
        Ok(pts) => {
            let r1 = pts[0].abs_error / pts[1].abs_error;
            let r2 = pts[1].abs_error / pts[2].abs_error;
            rec.within("degenerate-limit-halving-ratio", r1.max(r2), 3.5, 4.5);
        }
        Err(e) => rec.error("degenerate-limit-halving-ratio", e),
    }
}

fn run_jordan(rec: &mut Recorder) -> Result<()> {
    let s = jordan::build_equal_states(1.0, 1.0)?;
    let eighth_pi = std::f64::consts::PI / 8.0;
    let o22 = pair_integral(&s.psi2_dual, &s.psi2)?;
    let o21 = pair_integral(&s.psi2_dual, &s.psi1)?;
    rec.le(
        "generalized-overlaps-eighth-pi",
        (o22 - eighth_pi).abs().max((o21 - eighth_pi).abs()),
        1e-14,
    );
    rec.le(
        "zero-norm-eigenstate",
        pair_integral(&s.psi1_dual, &s.psi1)?.abs(),
        1e-14,
    );

    let (p, q) = jordan::block_completeness_coefficients(&s)?;
    rec.le(
        "completeness-coefficients-2c",
        ((p - 2.0 * s.scale_c).abs() + (q - 2.0 * s.scale_c).abs()) / s.scale_c,
        1e-12,
    );
    let probe = s.psi1.scale(0.3).add(&s.psi2.scale(-1.7));
    let once = jordan::apply_block_identity(&s, &probe)?;
    let twice = jordan::apply_block_identity(&s, &once)?;
    rec.le(
        "completeness-idempotency",
        once.sub(&probe)
            .poly
            .max_abs_coeff()
            .max(twice.sub(&once).poly.max_abs_coeff()),
        1e-14,
    );

    let basis = jordan::pair_basis();
    let mut worst = 0.0f64;
    for tau in [0.0, 0.5, 1.0, 2.0] {
        let evo = jordan::jordan_evolution(s.omega, tau);
        let coords = [
            evo[0][0] * basis.e2[0] + evo[0][1] * basis.e2[1],
            evo[1][0] * basis.e2[0] + evo[1][1] * basis.e2[1],
        ];
        let via_block = jordan::state_from_block_coords(&s, coords);
        worst = worst.max(
            via_block
                .sub(&jordan::evolve_psi2(&s, tau))
                .poly
                .max_abs_coeff(),
        );
    }
    rec.le("block-evolution-matches-states", worst, 1e-14);

    let mut worst_jordan = 0.0f64;
    let mut worst_state_route = 0.0f64;
    for (g, w) in [(1.0, 1.0), (0.7, 1.9)] {
        let sys = jordan::build_jordan_system(g, w)?;
        let st = jordan::build_equal_states(g, w)?;
        for tau in [0.0, 0.5, 1.0, 2.0] {
            let closed = propagator::equal_frequency_closed_form(tau, g, w);
            worst_jordan =
                worst_jordan.max((jordan::jordan_propagator(&sys, tau) / closed - 1.0).abs());
            worst_state_route = worst_state_route
                .max((jordan::state_route_propagator(&st, tau)? / closed - 1.0).abs());
        }
    }
    rec.le("three-level-route-vs-closed-form", worst_jordan, 1e-12);
    rec.le("state-route-vs-closed-form", worst_state_route, 1e-12);

    let sys = jordan::build_jordan_system(1.0, 1.0)?;
    let ident = jordan::three_level_identity_resolution(&sys);
    let mut off = 0.0f64;
    for (i, row) in ident.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            off = off.max((x - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    rec.le("three-level-identity-resolution", off, 1e-15);
    rec.le("position-rescaling-zeta", (sys.zeta - 2.0 * 2.0f64.sqrt()).abs(), 1e-14);

    // Finite-difference residual of d psi/d tau = -H psi along the
    // generalized evolution, and of the adjoint equation along its
    // v-parity image.
    let params = ModelParams::new(1.0, 1.0, 1.0)?;
    let h = spectrum::hamiltonian(&params);
    let hd = spectrum::hamiltonian_adjoint(&params);
    let (tau, step) = (1.0, 1e-4);
    let mid = jordan::evolve_psi2(&s, tau);
    let fd = jordan::evolve_psi2(&s, tau + step)
        .sub(&jordan::evolve_psi2(&s, tau - step))
        .scale(0.5 / step);
    let residual = fd.add(&h.apply(&mid));
    let scale = mid.poly.max_abs_coeff();
    rec.le(
        "euclidean-equation-residual",
        residual.poly.max_abs_coeff() / scale,
        1e-7,
    );
    let fd_dual = jordan::evolve_psi2(&s, tau + step)
        .parity_flip_v()
        .sub(&jordan::evolve_psi2(&s, tau - step).parity_flip_v())
        .scale(0.5 / step);
    let residual_dual = fd_dual.add(&hd.apply(&mid.parity_flip_v()));
    rec.le(
        "adjoint-equation-residual-of-parity-image",
        residual_dual.poly.max_abs_coeff() / scale,
        1e-7,
    );
    Ok(())
}

fn run_lattice(params: &ModelParams, seed: u64, rec: &mut Recorder) {
    let p = unequal_params(params);
    let cfg = match lattice::LatticeConfig::new(p, 40.0, 4096) {
        Ok(cfg) => cfg,
        Err(e) => {
            rec.error("lattice-setup", e);
            return;
        }
    };

    let mut worst = 0.0f64;
    for target in [0.5, 1.0, 2.0] {
        let tau = cfg.nearest_site_tau(target);
        match (
            lattice::lattice_propagator(&cfg, tau),
            propagator::closed_form(tau, &p),
        ) {
            (Ok(lat), Ok(cont)) => worst = worst.max((lat / cont - 1.0).abs()),
            (Err(e), _) | (_, Err(e)) => rec.error("mode-sum-vs-continuum", e),
        }
    }
    rec.le("mode-sum-vs-continuum", worst, 1e-3);

    match lattice::LatticeConfig::new(p, 40.0, 8192) {
        Ok(fine) => {
            let err = |cfg: &lattice::LatticeConfig| -> Result<f64> {
                let tau = cfg.nearest_site_tau(1.0);
                let lat = lattice::lattice_propagator(cfg, tau)?;
                let cont = propagator::closed_form(tau, &p)?;
                Ok((lat / cont - 1.0).abs())
            };
            match (err(&cfg), err(&fine)) {
                (Ok(coarse), Ok(finer)) => {
                    rec.within("discretization-halving-ratio", coarse / finer, 3.5, 4.5)
                }
                (Err(e), _) | (_, Err(e)) => rec.error("discretization-halving-ratio", e),
            }
        }
        Err(e) => rec.error("discretization-halving-ratio", e),
    }

    let a = lattice::lattice_propagator_at_site(&cfg, 31);
    let b = lattice::lattice_propagator_at_site(&cfg, cfg.sites() - 31);
    rec.le("mode-sum-periodicity", (a - b).abs(), 0.0);

    let tau = cfg.nearest_site_tau(1.0);
    match (
        lattice::sample_paths(&cfg, tau, 10_000, seed),
        lattice::lattice_propagator(&cfg, tau),
    ) {
        (Ok(stats), Ok(exact)) => {
            let z = (stats.mean - exact) / stats.std_error;
            rec.le_with(
                "monte-carlo-three-sigma",
                z.abs(),
                3.0,
                format!(
                    "mean {:e} +/- {:e} vs mode sum {exact:e} ({} paths, seed {seed})",
                    stats.mean, stats.std_error, stats.count
                ),
            );
        }
        (Err(e), _) | (_, Err(e)) => rec.error("monte-carlo-three-sigma", e),
    }

    match lattice::LatticeConfig::new(p, 20.0, 256) {
        Ok(small) => {
            let tau = small.nearest_site_tau(1.0);
            match lattice::lattice_propagator(&small, tau) {
                Ok(exact) => {
                    let mut worst_z = 0.0f64;
                    for s in 1..=10u64 {
                        match lattice::sample_paths(&small, tau, 2000, s) {
                            Ok(stats) => {
                                worst_z =
                                    worst_z.max(((stats.mean - exact) / stats.std_error).abs())
                            }
                            Err(e) => rec.error("monte-carlo-seed-sweep", e),
                        }
                    }
                    rec.le("monte-carlo-seed-sweep", worst_z, 4.0);
                }
                Err(e) => rec.error("monte-carlo-seed-sweep", e),
            }
        }
        Err(e) => rec.error("monte-carlo-seed-sweep", e),
    }
}

/// Runs a suite at the given parameters. The degenerate-sector checks of
/// the jordan suite run at fixed reference points (the defining constants
/// are parameter-specific); unequal-frequency checks substitute a 2:1
/// split when handed degenerate input.
pub fn run_suite(suite: Suite, params: &ModelParams, seed: u64) -> VerifyReport {
    let mut rec = Recorder::new();
    match suite {
        Suite::Core => run_core(params, &mut rec),
        Suite::Spectrum => run_spectrum(params, &mut rec),
        Suite::Propagator => run_propagator(params, &mut rec),
        Suite::Jordan => {
            if let Err(e) = run_jordan(&mut rec) {
                rec.error("jordan-suite", e);
            }
        }
        Suite::Lattice => run_lattice(params, seed, &mut rec),
        Suite::All => {
            run_core(params, &mut rec);
            run_spectrum(params, &mut rec);
            run_propagator(params, &mut rec);
            if let Err(e) = run_jordan(&mut rec) {
                rec.error("jordan-suite", e);
            }
            run_lattice(params, seed, &mut rec);
        }
    }
    let passed = !rec.checks.is_empty() && rec.checks.iter().all(|c| c.passed);
    VerifyReport {
        suite,
        params: *params,
        seed,
        checks: rec.checks,
        known_deviations: known_deviations(),
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> ModelParams {
        ModelParams::new(1.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn core_suite_passes_at_reference_parameters() {
        let report = run_suite(Suite::Core, &reference(), 1);
        assert!(report.passed, "{:#?}", report.checks);
    }

    #[test]
    fn jordan_suite_passes() {
        let report = run_suite(Suite::Jordan, &reference(), 1);
        assert!(report.passed, "{:#?}", report.checks);
    }

    #[test]
    fn deviation_ledger_has_exactly_two_entries() {
        let d = known_deviations();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].id, "spectral-weight-denominator");
        assert_eq!(d[1].id, "equal-frequency-velocity-coefficient");
    }

    #[test]
    fn report_json_is_byte_stable() {
        let a = run_suite(Suite::Core, &reference(), 5).to_json();
        let b = run_suite(Suite::Core, &reference(), 5).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_input_is_substituted_not_fatal() {
        let eq = ModelParams::new(1.0, 1.5, 1.5).unwrap();
        let report = run_suite(Suite::Core, &eq, 1);
        assert!(report.passed, "{:#?}", report.checks);
    }

    #[test]
    fn summary_has_one_line_per_check_plus_trailer() {
        let report = run_suite(Suite::Core, &reference(), 1);
        assert_eq!(report.summary_lines().len(), report.checks.len() + 1);
    }
}
