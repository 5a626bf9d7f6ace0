//! Equal-frequency (defective) sector.
//!
//! At omega1 = omega2 = omega the two raising channels collide: the energy
//! 2 omega carries a single true eigenstate psi1 of zero norm plus a
//! generalized partner psi2 with H psi2 = -omega psi1 + 2 omega psi2, so H
//! is a Jordan block there rather than diagonalizable. This module builds
//! that sector explicitly, evolves it in Euclidean time, packages the
//! finite-dimensional (2x2 and 3x3) pictures of the same algebra, and
//! recovers the equal-frequency propagator from the 3x3 picture as an
//! independent route.
//!
//! Convention: psi1 and psi2 are carried on the bare Gaussian
//! exp{-(gamma omega^3 x^2 + gamma omega v^2 + gamma omega^2 x v)} with no
//! prefactor, while the stored vacuum pair is normalized. The overlap
//! scale C = 4 gamma^2 omega^3 / pi then satisfies
//! <psi2 dual | psi2> = <psi2 dual | psi1> = 1/(2C).

use serde::Serialize;

use crate::error::Result;
use crate::model::ModelParams;
use crate::spectrum::{self, EigenPair};
use crate::wavefunc::{pair_integral, BivariatePoly, ExpPolyState, GaussianForm};

/// The explicit equal-frequency states and their scale constants.
#[derive(Debug, Clone)]
pub struct EqualFreqStates {
    pub gamma: f64,
    pub omega: f64,
    /// Normalized ground pair at energy omega.
    pub vacuum: EigenPair,
    /// Zero-norm eigenstate (v + omega x) e^{-Phi} at energy 2 omega.
    pub psi1: ExpPolyState,
    pub psi1_dual: ExpPolyState,
    /// Generalized partner omega x e^{-Phi}.
    pub psi2: ExpPolyState,
    pub psi2_dual: ExpPolyState,
    /// C = 4 gamma^2 omega^3 / pi.
    pub scale_c: f64,
    /// Squared vacuum normalization, 2 gamma omega^2 / pi.
    pub n00_sq: f64,
}

impl EqualFreqStates {
    /// The generalized partner without the omega prefactor, x e^{-Phi}.
    /// Both normalizations of psi2 are in circulation; the omega-scaled one
    /// is canonical here because it keeps the 2x2 block integer-valued.
    pub fn psi2_unscaled(&self) -> ExpPolyState {
        self.psi2.scale(1.0 / self.omega)
    }
}

/// Builds the equal-frequency sector, checking the defining relations
/// coefficient-wise on the way:
/// H vac = omega vac, H psi1 = 2 omega psi1,
/// H psi2 = -omega psi1 + 2 omega psi2.
pub fn build_equal_states(gamma: f64, omega: f64) -> Result<EqualFreqStates> {
    let params = ModelParams::new(gamma, omega, omega)?;
    let vacuum = spectrum::vacuum(&params);
    // psi1 and psi2 must share the vacuum's form bit-for-bit so linear
    // combinations across the block are well defined.
    let form = vacuum.state.form;
    debug_assert!({
        let expect = GaussianForm::new(
            2.0 * gamma * omega.powi(3),
            2.0 * gamma * omega,
            gamma * omega * omega,
        );
        (form.alpha - expect.alpha).abs() <= 4.0 * f64::EPSILON * expect.alpha
            && (form.beta - expect.beta).abs() <= 4.0 * f64::EPSILON * expect.beta
            && (form.delta - expect.delta).abs() <= 4.0 * f64::EPSILON * expect.delta
    });

    let psi1 = ExpPolyState::new(
        BivariatePoly::from_terms(&[(0, 1, 1.0), (1, 0, omega)]),
        form,
    );
    let psi2 = ExpPolyState::new(BivariatePoly::from_terms(&[(1, 0, omega)]), form);
    let states = EqualFreqStates {
        gamma,
        omega,
        psi1_dual: psi1.parity_flip_v(),
        psi2_dual: psi2.parity_flip_v(),
        psi1,
        psi2,
        scale_c: 4.0 * gamma * gamma * omega.powi(3) / std::f64::consts::PI,
        n00_sq: 2.0 * gamma * omega * omega / std::f64::consts::PI,
        vacuum,
    };

    let h = spectrum::hamiltonian(&params);
    let scale = states.psi1.poly.max_abs_coeff() * omega;
    let r1 = h.apply(&states.psi1).poly.sub(&states.psi1.poly.scale(2.0 * omega));
    assert!(
        r1.max_abs_coeff() <= 1e-12 * scale,
        "psi1 failed its eigenvalue relation"
    );
    let want = states
        .psi1
        .scale(-omega)
        .add(&states.psi2.scale(2.0 * omega));
    let r2 = h.apply(&states.psi2).poly.sub(&want.poly);
    assert!(
        r2.max_abs_coeff() <= 1e-12 * scale,
        "psi2 failed its generalized eigenvalue relation"
    );
    Ok(states)
}

/// Euclidean evolution of the generalized partner:
///
///   psi2(tau) = e^{-2 omega tau} omega [ x + tau (v + omega x) ] e^{-Phi}
///             = e^{-2 omega tau} ( psi2 + omega tau psi1 ),
///
/// the closed solution of d psi/d tau = -H psi with psi(0) = psi2. The
/// linear-in-tau admixture of psi1 is the signature of the Jordan block.
pub fn evolve_psi2(states: &EqualFreqStates, tau: f64) -> ExpPolyState {
    let w = states.omega;
    let decay = (-2.0 * w * tau).exp();
    states
        .psi2
        .add(&states.psi1.scale(w * tau))
        .scale(decay)
}

/// Coefficients (P, Q) of the block resolution of the identity
///
///   1 = P |psi2><psi1 dual| + Q |psi1><psi2 dual| - P |psi1><psi1 dual|,
///
/// solved from the measured overlaps rather than assumed; both equal 2C.
pub fn block_completeness_coefficients(states: &EqualFreqStates) -> Result<(f64, f64)> {
    let o12 = pair_integral(&states.psi1_dual, &states.psi2)?;
    let o21 = pair_integral(&states.psi2_dual, &states.psi1)?;
    Ok((1.0 / o12, 1.0 / o21))
}

/// Applies the block resolution of the identity to a state in the span of
/// (psi1, psi2). Acts as the identity there; used to check idempotency.
pub fn apply_block_identity(
    states: &EqualFreqStates,
    s: &ExpPolyState,
) -> Result<ExpPolyState> {
    let (p, q) = block_completeness_coefficients(states)?;
    let along1 = pair_integral(&states.psi1_dual, s)?;
    let along2 = pair_integral(&states.psi2_dual, s)?;
    Ok(states
        .psi2
        .scale(p * along1)
        .add(&states.psi1.scale(q * along2 - p * along1)))
}

/// Basis of the abstract two-dimensional block and its dual basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairBasis {
    pub e1: [f64; 2],
    pub e2: [f64; 2],
    pub e1_dual: [f64; 2],
    pub e2_dual: [f64; 2],
}

/// The conventional coordinates: e1 = (1, 0) is the zero-norm eigenvector
/// (so e1_dual pairs to zero with it), e2 = e2_dual = (1/2, 1/2).
pub fn pair_basis() -> PairBasis {
    PairBasis {
        e1: [1.0, 0.0],
        e2: [0.5, 0.5],
        e1_dual: [0.0, 1.0],
        e2_dual: [0.5, 0.5],
    }
}

/// H restricted to the 2 omega block in the conventional coordinates:
/// 2 omega [[1, -1], [0, 1]], a single Jordan cell.
pub fn jordan_hamiltonian(omega: f64) -> [[f64; 2]; 2] {
    [[2.0 * omega, -2.0 * omega], [0.0, 2.0 * omega]]
}

/// e^{-tau H_2} = e^{-2 omega tau} [[1, 2 omega tau], [0, 1]]: exponential
/// decay times polynomial (not extra-exponential) mixing.
pub fn jordan_evolution(omega: f64, tau: f64) -> [[f64; 2]; 2] {
    let d = (-2.0 * omega * tau).exp();
    [[d, d * 2.0 * omega * tau], [0.0, d]]
}

/// Dictionary from conventional block coordinates to explicit states:
/// (c1, c2) -> (c1 - c2) psi1 + 2 c2 psi2. Under it e1 -> psi1,
/// e2 -> psi2, and the 2x2 evolution matches [`evolve_psi2`] exactly.
pub fn state_from_block_coords(states: &EqualFreqStates, coords: [f64; 2]) -> ExpPolyState {
    states
        .psi1
        .scale(coords[0] - coords[1])
        .add(&states.psi2.scale(2.0 * coords[1]))
}

fn matvec3(m: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// The vacuum joined to the 2 omega block: a 3x3 picture with the rescaled
/// position operator, its basis and dual basis, serialized row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JordanSystem {
    pub gamma: f64,
    pub omega: f64,
    /// diag(omega) + Jordan cell at 2 omega with off-diagonal -2 omega.
    pub hamiltonian: [[f64; 3]; 3],
    /// Position operator rescaled by zeta so its couplings are exactly 1;
    /// it only connects the vacuum to the excited block (parity kills the
    /// rest).
    pub position: [[f64; 3]; 3],
    pub e0: [f64; 3],
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub e0_dual: [f64; 3],
    pub e1_dual: [f64; 3],
    pub e2_dual: [f64; 3],
    /// zeta = 2 omega sqrt(C) / N00: the rescaling that normalizes the
    /// position couplings.
    pub zeta: f64,
    pub scale_c: f64,
    /// Vacuum normalization N00 = sqrt(2 gamma omega^2 / pi).
    pub n00: f64,
}

/// Assembles the 3x3 picture and cross-checks it against the explicit
/// states: the bare matrix element of x between the dual vacuum and psi1
/// equals 1/(2 omega C), and zeta N00 sqrt(C) times it is exactly 1; the
/// elements that parity forces to vanish are measured, not assumed.
pub fn build_jordan_system(gamma: f64, omega: f64) -> Result<JordanSystem> {
    let states = build_equal_states(gamma, omega)?;
    let n00 = states.n00_sq.sqrt();
    let c = states.scale_c;
    let zeta = 2.0 * omega * c.sqrt() / n00;

    let bare_vac = states.vacuum.state.scale(1.0 / n00);
    let bare_vac_dual = states.vacuum.dual.scale(1.0 / n00);
    let x1 = pair_integral(&bare_vac_dual, &states.psi1.times_monomial(1, 0))?;
    let x2 = pair_integral(&bare_vac_dual, &states.psi2.times_monomial(1, 0))?;
    let expect = 1.0 / (2.0 * omega * c);
    assert!(
        (x1 - expect).abs() <= 1e-12 * expect,
        "vacuum-to-psi1 position element {x1} differs from 1/(2 omega C) = {expect}"
    );
    assert!(
        (x2 - expect).abs() <= 1e-12 * expect,
        "vacuum-to-psi2 position element {x2} differs from 1/(2 omega C) = {expect}"
    );
    let consistency = zeta * n00 * c.sqrt() * x1;
    assert!(
        (consistency - 1.0).abs() <= 1e-12,
        "position rescaling failed to normalize the coupling: {consistency}"
    );
    for (bra, ket) in [
        (&bare_vac_dual, &bare_vac),
        (&states.psi1_dual, &states.psi1),
        (&states.psi1_dual, &states.psi2),
        (&states.psi2_dual, &states.psi2),
    ] {
        let elem = pair_integral(bra, &ket.times_monomial(1, 0))?;
        assert!(
            elem.abs() <= 1e-14,
            "parity-forbidden position element is nonzero: {elem}"
        );
    }

    let w = omega;
    Ok(JordanSystem {
        gamma,
        omega,
        hamiltonian: [
            [w, 0.0, 0.0],
            [0.0, 2.0 * w, -2.0 * w],
            [0.0, 0.0, 2.0 * w],
        ],
        position: [[0.0, 1.0, 1.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]],
        e0: [1.0, 0.0, 0.0],
        e1: [0.0, 1.0, 0.0],
        e2: [0.0, 0.5, 0.5],
        e0_dual: [1.0, 0.0, 0.0],
        e1_dual: [0.0, 0.0, 1.0],
        e2_dual: [0.0, 0.5, 0.5],
        zeta,
        scale_c: c,
        n00,
    })
}

/// e^{-tau H_3}, exact from the block structure: a scalar e^{-omega tau}
/// on the vacuum plus the 2x2 Jordan exponential on the excited block.
pub fn three_level_evolution(omega: f64, tau: f64) -> [[f64; 3]; 3] {
    let ground = (-omega * tau).exp();
    let block = jordan_evolution(omega, tau);
    [
        [ground, 0.0, 0.0],
        [0.0, block[0][0], block[0][1]],
        [0.0, block[1][0], block[1][1]],
    ]
}

/// Resolution of the identity in the 3x3 picture,
///
///   1 = |e0><e0 dual| + 2 ( -|e1><e1 dual| + |e2><e1 dual| + |e1><e2 dual| ),
///
/// returned as the explicitly summed matrix (the identity, exactly).
pub fn three_level_identity_resolution(sys: &JordanSystem) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    let mut rank_one = |weight: f64, ket: &[f64; 3], bra: &[f64; 3]| {
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += weight * ket[i] * bra[j];
            }
        }
    };
    rank_one(1.0, &sys.e0, &sys.e0_dual);
    rank_one(-2.0, &sys.e1, &sys.e1_dual);
    rank_one(2.0, &sys.e2, &sys.e1_dual);
    rank_one(2.0, &sys.e1, &sys.e2_dual);
    m
}

/// Equal-frequency propagator from the 3x3 picture:
///
///   G(tau) = (N00 / (2 omega sqrt(C)))^2
///            <e0 dual| X e^{-tau (H_3 - omega)} X |e0>,
///
/// evaluated by actual matrix products. Agrees with the closed form
/// (1/(4 gamma omega^3)) e^{-omega tau} (1 + omega tau).
pub fn jordan_propagator(sys: &JordanSystem, tau: f64) -> f64 {
    let prefactor = (sys.n00 / (2.0 * sys.omega * sys.scale_c.sqrt())).powi(2);
    let shift = (sys.omega * tau).exp();
    let evo = three_level_evolution(sys.omega, tau);
    let v = matvec3(&sys.position, &sys.e0);
    let v = matvec3(&evo, &v);
    let v = matvec3(&sys.position, &v);
    prefactor * shift * dot3(&sys.e0_dual, &v)
}

/// Equal-frequency propagator from the explicit states: inserts the block
/// resolution of the identity into <vac dual| x e^{-tau(H - omega)} x |vac>
/// and evaluates the three resulting terms by pair integrals. Two of them
/// cancel; the cancellation is measured and must hold to 1e-12, not
/// assumed.
pub fn state_route_propagator(states: &EqualFreqStates, tau: f64) -> Result<f64> {
    let w = states.omega;
    let (p, q) = block_completeness_coefficients(states)?;
    let x_vac = states.vacuum.state.times_monomial(1, 0);
    let x_vac_dual = states.vacuum.dual.times_monomial(1, 0);

    // e^{-tau(H - omega)} applied to psi1 and psi2.
    let evolved_psi1 = states.psi1.scale((-w * tau).exp());
    let evolved_psi2 = evolve_psi2(states, tau).scale((w * tau).exp());

    let t_main = p
        * pair_integral(&x_vac_dual, &evolved_psi2)?
        * pair_integral(&states.psi1_dual, &x_vac)?;
    let t_plus = q
        * pair_integral(&x_vac_dual, &evolved_psi1)?
        * pair_integral(&states.psi2_dual, &x_vac)?;
    let t_minus = -p
        * pair_integral(&x_vac_dual, &evolved_psi1)?
        * pair_integral(&states.psi1_dual, &x_vac)?;

    let cancel = (t_plus + t_minus).abs();
    assert!(
        cancel <= 1e-12 * t_main.abs().max(1e-300),
        "spurious block terms failed to cancel: {cancel:e}"
    );
    Ok(t_main + t_plus + t_minus)
}
