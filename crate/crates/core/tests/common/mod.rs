//! Shared helpers for the integration suites: an independent quadrature
//! route for the Gaussian pair integrals, built on Gauss-Hermite nodes
//! computed from scratch here so the check shares no code with the
//! moment-recursion path under test.
#![allow(dead_code)]

use accelosc::model::ModelParams;
use accelosc::wavefunc::ExpPolyState;

/// Nodes and weights for integrating f(t) e^{-t^2} over the real line,
/// found by Newton iteration on the orthonormal Hermite recurrence. The
/// standard asymptotic seeds walk the roots from the outside in; each
/// weight is 2 / H'_n(t)^2 in the orthonormal normalization.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 4, "too few nodes for the seeding schedule");
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let mut z = 0.0f64;
    for i in 0..(n + 1) / 2 {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            let mut p1 = std::f64::consts::PI.powf(-0.25);
            let mut p2 = 0.0f64;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let step = p1 / pp;
            z -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    (nodes, weights)
}

/// The pair integral evaluated by numeric quadrature instead of moment
/// recursion: complete the square in x (u = x + (delta/alpha) v), reducing
/// the combined Gaussian to a product of two independent ones, then apply
/// a tensor Gauss-Hermite rule. Exact for polynomial prefactors of degree
/// below 2n in each variable.
pub fn quadrature_pair_integral(bra: &ExpPolyState, ket: &ExpPolyState, n: usize) -> f64 {
    let alpha = bra.form.alpha + ket.form.alpha;
    let beta = bra.form.beta + ket.form.beta;
    let delta = bra.form.delta + ket.form.delta;
    assert!(
        alpha > 0.0 && alpha * beta - delta * delta > 0.0,
        "combined form must be positive definite"
    );
    let c = beta - delta * delta / alpha;
    let poly = bra.poly.mul(&ket.poly);
    let (t, w) = gauss_hermite(n);
    let su = (2.0 / alpha).sqrt();
    let sv = (2.0 / c).sqrt();
    let mut total = 0.0;
    for (ti, wi) in t.iter().zip(&w) {
        let u = su * ti;
        for (tj, wj) in t.iter().zip(&w) {
            let v = sv * tj;
            total += wi * wj * poly.eval(u - (delta / alpha) * v, v);
        }
    }
    total * su * sv
}

/// Relative error with a floor so exact zeros compare by absolute value.
pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}

/// The reference parameter point used throughout: gamma 1, frequencies 2, 1.
pub fn reference_params() -> ModelParams {
    ModelParams::new(1.0, 2.0, 1.0).unwrap()
}
