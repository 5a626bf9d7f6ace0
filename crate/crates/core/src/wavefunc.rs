//! States of the form P(x, v) exp{-(1/2)(alpha x^2 + beta v^2 + 2 delta x v)}
//! with P a real bivariate polynomial.
//!
//! Every operation the crate needs (derivatives up to second order,
//! multiplication by monomials, parity flips, linear combinations) maps this
//! family into itself with the Gaussian form unchanged, so eigenstates,
//! duals and their overlaps can all be handled exactly. The only numerics
//! live in the coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients below this fraction of the largest coefficient are dropped
/// after every operator application.
pub const PRUNE_REL_THRESHOLD: f64 = 1e-14;

/// Real polynomial in (x, v), stored sparsely as (x-degree, v-degree) ->
/// coefficient. The map is ordered so iteration (and everything derived
/// from it) is deterministic.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BivariatePoly {
    coeffs: BTreeMap<(u32, u32), f64>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn from_terms(terms: &[(u32, u32, f64)]) -> Self {
        let mut p = Self::zero();
        for &(i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Adds c * x^i v^j, removing the entry if it cancels to exactly zero.
    pub fn add_term(&mut self, i: u32, j: u32, c: f64) {
        if c == 0.0 {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.coeffs.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest absolute coefficient, 0 for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Highest (x-degree, v-degree) appearing, each maximized separately.
    pub fn max_degrees(&self) -> (u32, u32) {
        self.coeffs
            .keys()
            .fold((0, 0), |(dx, dv), &(i, j)| (dx.max(i), dv.max(j)))
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, j, c * factor);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> Self {
        let mut out = Self::zero();
        for (i0, j0, c) in self.terms() {
            out.add_term(i0 + i, j0 + j, c);
        }
        out
    }

    /// Plain polynomial derivative d/dx (no Gaussian factor involved).
    pub fn diff_x(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            if i > 0 {
                out.add_term(i - 1, j, c * f64::from(i));
            }
        }
        out
    }

    /// Plain polynomial derivative d/dv.
    pub fn diff_v(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            if j > 0 {
                out.add_term(i, j - 1, c * f64::from(j));
            }
        }
        out
    }

    /// Negates coefficients of odd x-degree, i.e. P(x, v) -> P(-x, v).
    pub fn flip_x(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, j, if i % 2 == 1 { -c } else { c });
        }
        out
    }

    /// Negates coefficients of odd v-degree, i.e. P(x, v) -> P(x, -v).
    pub fn flip_v(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, j, if j % 2 == 1 { -c } else { c });
        }
        out
    }

    /// Drops coefficients smaller than `rel_threshold` times the largest.
    pub fn pruned(&self, rel_threshold: f64) -> Self {
        let cutoff = rel_threshold * self.max_abs_coeff();
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            if c.abs() >= cutoff {
                out.add_term(i, j, c);
            }
        }
        out
    }

    pub fn eval(&self, x: f64, v: f64) -> f64 {
        self.terms()
            .map(|(i, j, c)| c * x.powi(i as i32) * v.powi(j as i32))
            .sum()
    }
}

/// Quadratic exponent data: the state carries the weight
/// exp{-(1/2)(alpha x^2 + beta v^2 + 2 delta x v)}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianForm {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
}

impl GaussianForm {
    pub fn new(alpha: f64, beta: f64, delta: f64) -> Self {
        Self { alpha, beta, delta }
    }

    /// Determinant of the quadratic-form matrix [[alpha, delta], [delta, beta]].
    pub fn det(&self) -> f64 {
        self.alpha * self.beta - self.delta * self.delta
    }

    /// Positive definiteness of the quadratic form, i.e. normalizability of
    /// the Gaussian weight.
    pub fn is_positive_definite(&self) -> bool {
        self.alpha > 0.0 && self.det() > 0.0
    }

    /// Exponent under x -> -x: delta changes sign, alpha and beta do not.
    pub fn flip_x(&self) -> Self {
        Self::new(self.alpha, self.beta, -self.delta)
    }

    /// Exponent under v -> -v: same effect on the form as flipping x.
    pub fn flip_v(&self) -> Self {
        Self::new(self.alpha, self.beta, -self.delta)
    }

    fn exponent(&self, x: f64, v: f64) -> f64 {
        0.5 * (self.alpha * x * x + self.beta * v * v + 2.0 * self.delta * x * v)
    }
}

/// A wavefunction P(x, v) exp{-Phi(x, v)} with quadratic Phi.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolyState {
    pub poly: BivariatePoly,
    pub form: GaussianForm,
}

impl ExpPolyState {
    pub fn new(poly: BivariatePoly, form: GaussianForm) -> Self {
        Self { poly, form }
    }

    /// The bare Gaussian with polynomial part `c`.
    pub fn gaussian(c: f64, form: GaussianForm) -> Self {
        Self::new(BivariatePoly::constant(c), form)
    }

    pub fn evaluate(&self, x: f64, v: f64) -> f64 {
        self.poly.eval(x, v) * (-self.form.exponent(x, v)).exp()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.poly.scale(factor), self.form)
    }

    /// Linear combination; only defined between states sharing one Gaussian
    /// form, which is an invariant of every construction in this crate.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.form, other.form,
            "cannot combine states with different Gaussian forms"
        );
        Self::new(self.poly.add(&other.poly), self.form)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Full derivative d/dx, folding the Gaussian factor back into the
    /// polynomial: (P e^{-Phi})' = (P_x - P (alpha x + delta v)) e^{-Phi}.
    pub fn dx(&self) -> Self {
        let mut poly = self.poly.diff_x();
        for (i, j, c) in self.poly.terms() {
            poly.add_term(i + 1, j, -self.form.alpha * c);
            poly.add_term(i, j + 1, -self.form.delta * c);
        }
        Self::new(poly, self.form)
    }

    /// Full derivative d/dv: (P e^{-Phi})' = (P_v - P (beta v + delta x)) e^{-Phi}.
    pub fn dv(&self) -> Self {
        let mut poly = self.poly.diff_v();
        for (i, j, c) in self.poly.terms() {
            poly.add_term(i, j + 1, -self.form.beta * c);
            poly.add_term(i + 1, j, -self.form.delta * c);
        }
        Self::new(poly, self.form)
    }

    /// The state multiplied by the monomial x^i v^j.
    pub fn times_monomial(&self, i: u32, j: u32) -> Self {
        Self::new(self.poly.mul_monomial(i, j), self.form)
    }

    /// State under x -> -x.
    pub fn parity_flip_x(&self) -> Self {
        Self::new(self.poly.flip_x(), self.form.flip_x())
    }

    /// State under v -> -v. This is the map that turns eigenstates into
    /// their duals.
    pub fn parity_flip_v(&self) -> Self {
        Self::new(self.poly.flip_v(), self.form.flip_v())
    }
}

/// One term coeff * x^px v^pv d^dx/dx^dx d^dv/dv^dv of a linear
/// differential operator. Derivatives act first, then the monomial
/// multiplies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpTerm {
    pub px: u32,
    pub pv: u32,
    pub dx: u32,
    pub dv: u32,
    pub coeff: f64,
}

impl OpTerm {
    pub fn new(px: u32, pv: u32, dx: u32, dv: u32, coeff: f64) -> Self {
        Self {
            px,
            pv,
            dx,
            dv,
            coeff,
        }
    }
}

/// Linear differential operator with polynomial coefficients, derivative
/// order capped at 2 per variable (all the generators used here are at most
/// second order, and the cap keeps degree growth in check).
#[derive(Debug, Clone, PartialEq)]
pub struct LinDiffOp {
    terms: Vec<OpTerm>,
}

impl LinDiffOp {
    pub fn new(terms: Vec<OpTerm>) -> Result<Self> {
        for t in &terms {
            let order = t.dx.max(t.dv);
            if order > 2 {
                return Err(Error::UnsupportedDerivativeOrder(order));
            }
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[OpTerm] {
        &self.terms
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| OpTerm { coeff: t.coeff * factor, ..*t })
                .collect(),
        }
    }

    /// Applies the operator. The result stays in the same family with the
    /// same Gaussian form; tiny coefficients are pruned afterwards so that
    /// repeated applications do not accumulate numerical dust.
    pub fn apply(&self, state: &ExpPolyState) -> ExpPolyState {
        let mut acc = BivariatePoly::zero();
        for t in &self.terms {
            let mut s = state.clone();
            for _ in 0..t.dx {
                s = s.dx();
            }
            for _ in 0..t.dv {
                s = s.dv();
            }
            let piece = s.poly.mul_monomial(t.px, t.pv).scale(t.coeff);
            acc = acc.add(&piece);
        }
        ExpPolyState::new(acc.pruned(PRUNE_REL_THRESHOLD), state.form)
    }
}

/// Exact integral of bra(x, v) * ket(x, v) over the whole plane.
///
/// The integrand is Q(x, v) exp{-(1/2) z^T M z} with Q the coefficient-wise
/// product polynomial and M the sum of the two quadratic forms. Writing
/// Z0 = 2 pi / sqrt(det M) and Sigma = M^{-1}, every monomial moment
/// follows from the Gaussian-moment recursion
///
///   <x^i v^j> = (i-1) Sigma_xx <x^{i-2} v^j> + j Sigma_xv <x^{i-1} v^{j-1}>
///
/// (and its j-lowering mirror once i = 0), which closes because odd moments
/// vanish. No quadrature is involved.
///
/// Fails with [`Error::DivergentIntegral`] when M is not positive definite.
pub fn pair_integral(bra: &ExpPolyState, ket: &ExpPolyState) -> Result<f64> {
    let m = GaussianForm::new(
        bra.form.alpha + ket.form.alpha,
        bra.form.beta + ket.form.beta,
        bra.form.delta + ket.form.delta,
    );
    if !m.is_positive_definite() {
        return Err(Error::DivergentIntegral);
    }
    let det = m.det();
    let z0 = 2.0 * std::f64::consts::PI / det.sqrt();
    let (sxx, svv, sxv) = (m.beta / det, m.alpha / det, -m.delta / det);

    let q = bra.poly.mul(&ket.poly);
    let (di, dj) = q.max_degrees();
    let moments = gaussian_moments(sxx, svv, sxv, di as usize, dj as usize);

    let mut sum = 0.0;
    for (i, j, c) in q.terms() {
        sum += c * moments[i as usize][j as usize];
    }
    Ok(z0 * sum)
}

/// Moment table <x^i v^j> for the normalized centered Gaussian with
/// covariance (Sigma_xx, Sigma_vv, Sigma_xv), for i <= imax, j <= jmax.
fn gaussian_moments(sxx: f64, svv: f64, sxv: f64, imax: usize, jmax: usize) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; jmax + 1]; imax + 1];
    m[0][0] = 1.0;
    for j in 2..=jmax {
        m[0][j] = (j - 1) as f64 * svv * m[0][j - 2];
    }
    for i in 1..=imax {
        for j in 0..=jmax {
            let from_xx = if i >= 2 {
                (i - 1) as f64 * sxx * m[i - 2][j]
            } else {
                0.0
            };
            let from_xv = if j >= 1 {
                j as f64 * sxv * m[i - 1][j - 1]
            } else {
                0.0
            };
            m[i][j] = from_xx + from_xv;
        }
    }
    m
}
