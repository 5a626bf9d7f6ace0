//! Periodic Euclidean lattice cross-check.
//!
//! The continuum action is discretized on N sites with spacing
//! Delta = T/N and periodic boundary. In Fourier modes k_m = 2 pi m / T
//! the quadratic form diagonalizes with the lattice dispersion
//!
//!   D_m = khat^4 + (omega1^2 + omega2^2) khat^2 + omega1^2 omega2^2,
//!   khat^2 = (2/Delta^2)(1 - cos(k_m Delta)),
//!
//! giving the exact lattice propagator as a mode sum and, independently, a
//! Gaussian Monte Carlo estimate from sampled paths. Both converge to the
//! continuum closed form at O(Delta^2).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::par;

/// Validated lattice geometry: N >= 8 sites (even, so the Nyquist mode is
/// its own partner) with the spacing fine enough that
/// spacing * omega1 < 0.5.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeConfig {
    params: ModelParams,
    total_time: f64,
    sites: usize,
    spacing: f64,
}

impl LatticeConfig {
    pub fn new(params: ModelParams, total_time: f64, sites: usize) -> Result<Self> {
        if !total_time.is_finite() || total_time <= 0.0 {
            return Err(Error::InvalidInput("total time must be positive and finite"));
        }
        if sites < 8 || sites % 2 != 0 {
            return Err(Error::InvalidInput("need an even number of sites, at least 8"));
        }
        let spacing = total_time / sites as f64;
        if spacing * params.omega1() >= 0.5 {
            return Err(Error::UnderResolved {
                spacing,
                omega_max: params.omega1(),
            });
        }
        Ok(Self {
            params,
            total_time,
            sites,
            spacing,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// The site time j * spacing closest to tau, clamped to [0, T/2].
    /// Continuum comparison points that do not fall on a site are snapped
    /// with this before calling [`lattice_propagator`].
    pub fn nearest_site_tau(&self, tau: f64) -> f64 {
        let half = self.sites as f64 / 2.0;
        let j = (tau / self.spacing).round().clamp(0.0, half);
        j * self.spacing
    }

    /// Maps an aligned tau in [0, T/2] to its site index.
    fn site_index(&self, tau: f64) -> Result<usize> {
        if !(0.0..=0.5 * self.total_time + 1e-12).contains(&tau) {
            return Err(Error::InvalidInput("tau must lie in [0, T/2]"));
        }
        let ratio = tau / self.spacing;
        let j = ratio.round();
        if (ratio - j).abs() > 1e-9 {
            return Err(Error::MisalignedTau {
                tau,
                spacing: self.spacing,
            });
        }
        Ok(j as usize)
    }

    /// D_m for mode m.
    fn mode_denominator(&self, m: usize) -> f64 {
        let k = 2.0 * std::f64::consts::PI * m as f64 / self.total_time;
        let khat_sq = 2.0 / (self.spacing * self.spacing) * (1.0 - (k * self.spacing).cos());
        let (w1, w2) = (self.params.omega1(), self.params.omega2());
        let wsum = w1 * w1 + w2 * w2;
        let wprod = w1 * w1 * w2 * w2;
        khat_sq * khat_sq + wsum * khat_sq + wprod
    }
}

/// Lattice propagator at site separation j (no alignment or range checks),
/// as the full mode sum
/// G_j = (1/(gamma T)) sum_{m=0}^{N-1} cos(k_m j Delta) / D_m.
/// Periodic and even: G_j = G_{N-j}, exactly, because each phase index is
/// folded into [0, N/2] before the cosine is taken.
pub fn lattice_propagator_at_site(cfg: &LatticeConfig, j: usize) -> f64 {
    let n = cfg.sites;
    let j = j % n;
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let sum = par::block_sum(n, 256, |m| {
        let idx = (m * j) % n;
        let idx = idx.min(n - idx);
        (step * idx as f64).cos() / cfg.mode_denominator(m)
    });
    sum / (cfg.params.gamma() * cfg.total_time)
}

/// Lattice propagator at a site-aligned Euclidean time tau in [0, T/2].
/// Off-site times report [`Error::MisalignedTau`]; snap them with
/// [`LatticeConfig::nearest_site_tau`] first.
pub fn lattice_propagator(cfg: &LatticeConfig, tau: f64) -> Result<f64> {
    let j = cfg.site_index(tau)?;
    Ok(lattice_propagator_at_site(cfg, j))
}

/// Geometry stamp embedded in every statistics record, serialized with the
/// conventional uppercase keys `T` and `N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeMeta {
    #[serde(rename = "T")]
    pub total_time: f64,
    #[serde(rename = "N")]
    pub sites: usize,
}

/// Monte Carlo estimate of the lattice propagator with its statistics.
/// Serializes as {tau, mean, std_error, count, seed, lattice: {T, N}}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStats {
    /// The site-aligned separation actually estimated.
    pub tau: f64,
    pub mean: f64,
    /// Standard error of the mean over paths.
    pub std_error: f64,
    /// Number of sampled paths.
    pub count: usize,
    pub seed: u64,
    pub lattice: LatticeMeta,
}

/// Samples periodic Gaussian paths in Fourier space and estimates the
/// propagator at separation tau by the volume-averaged correlator.
///
/// Each independent mode Y_m carries variance <|Y_m|^2> = 1/(gamma T D_m)
/// (split evenly between real and imaginary parts away from m = 0, N/2),
/// and the per-path estimator is the exact average of x_s x_{s+j} over the
/// lattice volume,
///
///   theta = sum_m |Y_m|^2 cos(k_m j Delta),
///
/// so no site loop is needed. Paths draw from per-path deterministic
/// streams of one seeded generator: results are reproducible bit-for-bit
/// for a given (seed, paths), in parallel or not, and the mean converges
/// to [`lattice_propagator`] with the quoted standard error.
///
/// Requires at least 100 paths.
pub fn sample_paths(
    cfg: &LatticeConfig,
    tau: f64,
    paths: usize,
    seed: u64,
) -> Result<SampleStats> {
    if paths < 100 {
        return Err(Error::InvalidInput("need at least 100 paths"));
    }
    let j = cfg.site_index(tau)?;
    let n = cfg.sites;
    let half = n / 2;
    let gt = cfg.params.gamma() * cfg.total_time;

    // Per-mode variance and correlator phase (folded as in the mode sum),
    // shared by every path.
    let variance: Vec<f64> = (0..=half).map(|m| 1.0 / (gt * cfg.mode_denominator(m))).collect();
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let phase: Vec<f64> = (0..=half)
        .map(|m| {
            let idx = (m * j) % n;
            let idx = idx.min(n - idx);
            (step * idx as f64).cos()
        })
        .collect();

    let estimates = par::map_indexed(paths, |p| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(p as u64);
        let normal = StandardNormal;

        let draw = |rng: &mut ChaCha8Rng| -> f64 { normal.sample(rng) };
        let y0: f64 = draw(&mut rng) * variance[0].sqrt();
        let mut theta = y0 * y0 * phase[0];
        for m in 1..half {
            let sigma = (0.5 * variance[m]).sqrt();
            let re = draw(&mut rng) * sigma;
            let im = draw(&mut rng) * sigma;
            theta += 2.0 * (re * re + im * im) * phase[m];
        }
        let y_half: f64 = draw(&mut rng) * variance[half].sqrt();
        theta + y_half * y_half * phase[half]
    });

    let mean = estimates.iter().sum::<f64>() / paths as f64;
    let ss: f64 = estimates.iter().map(|t| (t - mean) * (t - mean)).sum();
    let std_error = (ss / (paths as f64 * (paths as f64 - 1.0))).sqrt();
    Ok(SampleStats {
        tau,
        mean,
        std_error,
        count: paths,
        seed,
        lattice: LatticeMeta {
            total_time: cfg.total_time,
            sites: n,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator;

    fn reference_config() -> LatticeConfig {
        let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
        LatticeConfig::new(p, 40.0, 4096).unwrap()
    }

    #[test]
    fn config_validation_catches_bad_geometry() {
        let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
        assert!(LatticeConfig::new(p, 40.0, 6).is_err());
        assert!(LatticeConfig::new(p, 40.0, 101).is_err());
        assert!(LatticeConfig::new(p, -1.0, 64).is_err());
        // 64 sites over T = 40 gives spacing 0.625: under-resolved at
        // omega1 = 2.
        assert!(matches!(
            LatticeConfig::new(p, 40.0, 64),
            Err(Error::UnderResolved { .. })
        ));
    }

    #[test]
    fn misaligned_tau_is_rejected_not_interpolated() {
        let cfg = reference_config();
        assert!(matches!(
            lattice_propagator(&cfg, 1.0),
            Err(Error::MisalignedTau { .. })
        ));
        assert!(lattice_propagator(&cfg, cfg.nearest_site_tau(1.0)).is_ok());
        assert!(lattice_propagator(&cfg, 25.0).is_err());
    }

    #[test]
    fn nearest_site_snaps_to_the_grid() {
        let cfg = reference_config();
        let snapped = cfg.nearest_site_tau(1.0);
        assert_eq!(snapped, 102.0 * cfg.spacing());
        assert_eq!(cfg.nearest_site_tau(0.0), 0.0);
    }

    #[test]
    fn mode_sum_tracks_the_continuum_closed_form() {
        let cfg = reference_config();
        for target in [0.5, 1.0, 2.0] {
            let tau = cfg.nearest_site_tau(target);
            let lat = lattice_propagator(&cfg, tau).unwrap();
            let cont = propagator::closed_form(tau, cfg.params()).unwrap();
            let rel = (lat / cont - 1.0).abs();
            assert!(rel < 1e-5, "tau = {tau}: relative error {rel}");
        }
    }

    #[test]
    fn discretization_error_shrinks_at_second_order() {
        let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
        let coarse = LatticeConfig::new(p, 40.0, 4096).unwrap();
        let fine = LatticeConfig::new(p, 40.0, 8192).unwrap();
        let err = |cfg: &LatticeConfig| {
            let tau = cfg.nearest_site_tau(1.0);
            let lat = lattice_propagator(cfg, tau).unwrap();
            let cont = propagator::closed_form(tau, &p).unwrap();
            (lat / cont - 1.0).abs()
        };
        let ratio = err(&coarse) / err(&fine);
        assert!((3.5..=4.5).contains(&ratio), "halving ratio {ratio}");
    }

    #[test]
    fn mode_sum_is_periodic_and_even_in_the_separation() {
        let cfg = reference_config();
        let a = lattice_propagator_at_site(&cfg, 17);
        let b = lattice_propagator_at_site(&cfg, cfg.sites() - 17);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn sampling_is_deterministic_for_a_given_seed() {
        let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
        let cfg = LatticeConfig::new(p, 20.0, 128).unwrap();
        let a = sample_paths(&cfg, 0.0, 200, 42).unwrap();
        let b = sample_paths(&cfg, 0.0, 200, 42).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        let c = sample_paths(&cfg, 0.0, 200, 43).unwrap();
        assert_ne!(a.mean.to_bits(), c.mean.to_bits());
    }

    #[test]
    fn sampling_rejects_tiny_path_counts() {
        let cfg = reference_config();
        assert!(sample_paths(&cfg, 0.0, 99, 1).is_err());
    }

    #[test]
    fn sampled_mean_agrees_with_mode_sum_within_errors() {
        let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
        let cfg = LatticeConfig::new(p, 20.0, 256).unwrap();
        let tau = cfg.nearest_site_tau(1.0);
        let exact = lattice_propagator(&cfg, tau).unwrap();
        let stats = sample_paths(&cfg, tau, 2000, 7).unwrap();
        let z = (stats.mean - exact) / stats.std_error;
        assert!(z.abs() < 4.0, "z-score {z}");
    }
}
