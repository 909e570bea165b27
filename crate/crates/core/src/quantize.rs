//! Eigenvalue extraction: numeric quantization on the monotone phase
//! function (bracket by geometric walk, refine by bisection-secant),
//! closed-form dispatch, and the angular eigenvalue reconstruction.

use std::f64::consts::PI;

use crate::closed;
use crate::error::{Error, Result};
use crate::model::{
    AngularEigenvalue, CoulombAux, Coupling, PotentialFamily, PotentialSpec, QuantumNumbers,
};
use crate::numerics::bisect_secant;
use crate::phase::{find_turning_points, radial_phase_integral_with_tol, TurningPoints};

/// How an eigenvalue was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Analytic spectrum formula.
    ClosedForm,
    /// Bracketing and refinement on the leading-order phase integral.
    NumericWkb,
    /// Finite-difference radial equation solver (independent check).
    OdeOracle,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed",
            Method::NumericWkb => "wkb",
            Method::OdeOracle => "ode",
        })
    }
}

/// A quantized energy with its solution diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueResult {
    /// The eigen-energy E (absolute, not binding), natural units.
    pub energy: f64,
    pub method: Method,
    /// |phase(E) - pi(n_r + 1/2)| for the numeric solver; 0 for closed
    /// forms (exact by construction); grid-level estimate for the oracle.
    pub residual: f64,
    /// Turning points of p^2 at the accepted energy. Empty when the
    /// formula-based energy has no classically allowed region (possible for
    /// the perturbative funnel formula pushed far outside its regime).
    pub turning_points: TurningPoints,
    pub qn: QuantumNumbers,
}

/// Numeric-solver knobs; `Default` matches the documented tolerances.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Accepted |phase(E) - target| at the solution, in phase units.
    pub phase_tolerance: f64,
    /// Relative tolerance of the inner action quadrature.
    pub quad_rel_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            phase_tolerance: 1e-10,
            quad_rel_tol: 1e-12,
        }
    }
}

/// Maximum geometric-walk steps when hunting a phase bracket.
const MAX_BRACKET_STEPS: u32 = 120;

/// Solve the radial quantization condition
/// `radial_phase_integral(E) = pi (n_r + 1/2)` at default tolerances.
///
/// The phase integral is strictly increasing in E on the bound range, so a
/// single bracket walk (geometric toward the binding edge for Coulomb,
/// geometric doubling for confining families) straddles the target, and
/// bisection-secant refinement converges unconditionally. For the scalar
/// confining families the condition is imposed on the physical-cut integral
/// for every mass; at m = 0 this is equivalent to the closed contour
/// condition by cut symmetry.
pub fn solve_radial_eigenvalue(
    qn: &QuantumNumbers,
    spec: &PotentialSpec,
) -> Result<EigenvalueResult> {
    solve_radial_eigenvalue_with(qn, spec, SolveOptions::default())
}

/// `solve_radial_eigenvalue` with explicit tolerances.
pub fn solve_radial_eigenvalue_with(
    qn: &QuantumNumbers,
    spec: &PotentialSpec,
    opts: SolveOptions,
) -> Result<EigenvalueResult> {
    reject_unsolvable(spec, qn)?;
    let target = PI * (qn.n_r as f64 + 0.5);
    // Accumulated action as a function of E; below the spectrum floor the
    // allowed region is empty and the action is zero by continuity.
    let phase = |e: f64| -> Result<f64> {
        match radial_phase_integral_with_tol(e, spec, qn, opts.quad_rel_tol) {
            Ok(rep) => Ok(rep.value),
            Err(Error::NoBoundRegion { .. }) => Ok(0.0),
            Err(other) => Err(other),
        }
    };

    let (lo, hi, g_lo, g_hi) = if spec.is_confining() {
        bracket_confining(spec, qn, target, &phase)?
    } else {
        bracket_coulomb(spec, qn, target, &phase)?
    };
    let energy = bisect_secant(|e| Ok(phase(e)? - target), lo, hi, g_lo, g_hi, 1e-15, 300)?;

    let mut energy = energy;
    let mut residual = (phase(energy)? - target).abs();
    if residual > opts.phase_tolerance {
        // Near-threshold levels make the phase extremely steep in E: one ulp
        // of E can move the phase by more than the tolerance, and the refined
        // bracket is still a few ulp wide. Walk the neighboring representable
        // energies and keep the best one before giving up.
        let mid = energy;
        for dir_up in [true, false] {
            let mut e = mid;
            for _ in 0..8 {
                e = if dir_up { e.next_up() } else { e.next_down() };
                let r = (phase(e)? - target).abs();
                if r < residual {
                    residual = r;
                    energy = e;
                }
            }
        }
    }
    if residual > opts.phase_tolerance {
        return Err(Error::NonConvergence(format!(
            "phase residual {residual:.3e} above tolerance {:.3e} at E = {energy}",
            opts.phase_tolerance
        )));
    }
    Ok(EigenvalueResult {
        energy,
        method: Method::NumericWkb,
        residual,
        turning_points: find_turning_points(energy, spec, qn)?,
        qn: *qn,
    })
}

/// Reject problem classes with no discrete normalizable spectrum.
fn reject_unsolvable(spec: &PotentialSpec, qn: &QuantumNumbers) -> Result<()> {
    if spec.is_confining() && spec.coupling == Coupling::Vector {
        return Err(Error::VectorConfinement);
    }
    if spec.is_supercritical(qn.l) {
        return Err(Error::SupercriticalCoupling {
            alpha: spec.alpha,
            limit: qn.l as f64 + 0.5,
        });
    }
    if spec.family == PotentialFamily::Coulomb {
        if spec.mass <= 0.0 {
            return Err(Error::NoBoundState(
                "a massless Coulomb problem has no discrete spectrum".into(),
            ));
        }
        if spec.alpha == 0.0 {
            return Err(Error::NoBoundState(format!(
                "free particle (alpha = 0) at n_r = {}, l = {}",
                qn.n_r, qn.l
            )));
        }
    }
    Ok(())
}

/// Energy window of the Coulomb bound spectrum in *total*-energy units:
/// (spectrum floor where the allowed region closes, binding edge).
fn coulomb_window(spec: &PotentialSpec, qn: &QuantumNumbers) -> Result<(f64, f64)> {
    let lh = qn.l as f64 + 0.5;
    let floor_eff = match spec.coupling {
        Coupling::Vector => spec.mass * CoulombAux::new(qn.l, spec.alpha)?.lambda_vector / lh,
        Coupling::Scalar => spec.mass * lh / CoulombAux::scalar_index(qn.l, spec.alpha),
    };
    let two = spec.coupling == Coupling::Scalar && spec.two_body;
    let factor = if two { 2.0 } else { 1.0 };
    Ok((factor * floor_eff, factor * spec.mass))
}

/// Walk E geometrically toward the binding edge until the phase exceeds the
/// target; the floor carries exactly zero phase, so the walk starts with a
/// guaranteed undershoot.
fn bracket_coulomb(
    spec: &PotentialSpec,
    qn: &QuantumNumbers,
    target: f64,
    phase: &impl Fn(f64) -> Result<f64>,
) -> Result<(f64, f64, f64, f64)> {
    let (floor, edge) = coulomb_window(spec, qn)?;
    let gap = edge - floor;
    if !(gap > 0.0) {
        return Err(Error::NoBoundState(format!(
            "empty binding window at n_r = {}, l = {}",
            qn.n_r, qn.l
        )));
    }
    let (mut lo, mut g_lo) = (floor, -target);
    for k in 1..=MAX_BRACKET_STEPS {
        let e = edge - gap * 0.5_f64.powi(k as i32);
        // Past this point E is numerically indistinguishable from the edge.
        if e >= edge * (1.0 - 4.0 * f64::EPSILON) {
            break;
        }
        let g = phase(e)? - target;
        if g >= 0.0 {
            return Ok((lo, e, g_lo, g));
        }
        lo = e;
        g_lo = g;
    }
    Err(Error::NoBoundState(format!(
        "phase target {target:.6} not reached below the binding edge (n_r = {}, l = {})",
        qn.n_r, qn.l
    )))
}

/// Walk E up by doubling from far below the confining spectrum until the
/// phase exceeds the target.
fn bracket_confining(
    spec: &PotentialSpec,
    qn: &QuantumNumbers,
    target: f64,
    phase: &impl Fn(f64) -> Result<f64>,
) -> Result<(f64, f64, f64, f64)> {
    // Scale of the expected eigenvalue: the string spectrum plus the mass
    // gap (each constituent contributes m to a total two-body energy).
    let string = (8.0 * spec.kappa * (2.0 * qn.n_r as f64 + qn.l as f64 + 1.5)).sqrt();
    let scale = string + 2.0 * spec.mass;
    let (mut lo, mut g_lo) = (1e-9 * scale, -target);
    let mut e = 0.25 * scale;
    for _ in 0..MAX_BRACKET_STEPS {
        let g = phase(e)? - target;
        if g >= 0.0 {
            return Ok((lo, e, g_lo, g));
        }
        lo = e;
        g_lo = g;
        e *= 2.0;
    }
    Err(Error::NoBoundState(format!(
        "phase target {target:.6} not reached by E = {e:.3e} (n_r = {}, l = {})",
        qn.n_r, qn.l
    )))
}

/// The analytic spectrum for this potential, packaged like a solver result
/// (residual 0 by construction).
///
/// Dispatch: vector Coulomb and scalar Coulomb use the exact relativistic
/// formulas (doubled for equal-mass two-body kinematics in the scalar case);
/// the scalar string and funnel use the oscillator-like squared-energy
/// formulas, which are exact only in the massless two-body case and
/// perturbative in the Coulomb strength for the funnel.
pub fn closed_form_eigenvalue(
    qn: &QuantumNumbers,
    spec: &PotentialSpec,
) -> Result<EigenvalueResult> {
    reject_unsolvable(spec, qn)?;
    let energy = match (spec.family, spec.coupling) {
        (PotentialFamily::Coulomb, Coupling::Vector) => {
            closed::coulomb_vector_energy(qn, spec.mass, spec.alpha)?
        }
        (PotentialFamily::Coulomb, Coupling::Scalar) => {
            let one = closed::coulomb_scalar_energy(qn, spec.mass, spec.alpha);
            if spec.two_body {
                2.0 * one
            } else {
                one
            }
        }
        (family, Coupling::Scalar) => {
            // Squared energy of the equal-mass two-body problem; the
            // one-body kinetic term is not quartered, which divides the
            // squared spectrum by 4.
            let e_sq_two = match family {
                PotentialFamily::Linear => closed::linear_scalar_energy_sq(qn, spec.kappa)?,
                _ => closed::funnel_energy_sq(qn, spec.kappa, spec.alpha)?,
            };
            let e_sq = if spec.two_body {
                e_sq_two
            } else {
                e_sq_two / 4.0
            };
            e_sq.sqrt()
        }
        (_, Coupling::Vector) => unreachable!("rejected above"),
    };
    // The perturbative funnel value can fall outside the classically
    // allowed range when pushed far beyond its regime; report it with
    // empty turning points rather than refusing the formula.
    let turning_points = match find_turning_points(energy, spec, qn) {
        Ok(tp) => tp,
        Err(Error::NoBoundRegion { .. }) => TurningPoints {
            physical: Vec::new(),
            nonphysical: Vec::new(),
        },
        Err(other) => return Err(other),
    };
    Ok(EigenvalueResult {
        energy,
        method: Method::ClosedForm,
        residual: 0.0,
        turning_points,
        qn: *qn,
    })
}

/// Angular eigenvalue M^2 = (l + 1/2)^2 from the polar quantization
/// sqrt(M^2) = M_z + n_theta + 1/2 with M_z = m_int and n_theta = l - m_int.
pub fn angular_eigenvalues(l: u32, m_int: u32) -> Result<AngularEigenvalue> {
    let qn = QuantumNumbers::new(0, l, m_int)?;
    Ok(AngularEigenvalue {
        m_squared: qn.centrifugal_sq(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::angular_phase_integral;
    use approx::assert_abs_diff_eq;

    fn qn(n_r: u32, l: u32) -> QuantumNumbers {
        QuantumNumbers::radial(n_r, l)
    }

    #[test]
    fn vector_coulomb_solver_lands_on_the_analytic_spectrum() {
        let spec = PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.5).unwrap();
        let r = solve_radial_eigenvalue(&qn(0, 0), &spec).unwrap();
        assert_abs_diff_eq!(r.energy, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-9);
        assert_eq!(r.method, Method::NumericWkb);
        assert!(r.residual <= 1e-10, "residual {} too large", r.residual);
        assert_eq!(r.turning_points.physical.len(), 2);
    }

    #[test]
    fn scalar_coulomb_solver_lands_on_the_analytic_spectrum() {
        let spec = PotentialSpec::coulomb(Coupling::Scalar, 1.0, 0.5).unwrap();
        let r = solve_radial_eigenvalue(&qn(0, 0), &spec).unwrap();
        assert_abs_diff_eq!(r.energy, 0.910_179_7, epsilon = 1e-7);
        assert_abs_diff_eq!(r.energy, 0.910_179_721_124_454_7, epsilon = 1e-8);
    }

    #[test]
    fn massless_string_solver_matches_the_squared_spectrum() {
        let spec = PotentialSpec::linear(Coupling::Scalar, 0.0, 0.2, true).unwrap();
        let r = solve_radial_eigenvalue(&qn(1, 2), &spec).unwrap();
        assert_abs_diff_eq!(r.energy, 2.966_479_4, epsilon = 1e-7);
        assert_abs_diff_eq!(r.energy, 8.8_f64.sqrt(), epsilon = 1e-8);
        let r0 = solve_radial_eigenvalue(&qn(0, 0), &spec).unwrap();
        assert_abs_diff_eq!(r0.energy * r0.energy, 8.0 * 0.2 * 1.5, epsilon = 1e-8);
    }

    #[test]
    fn one_body_string_spectrum_is_the_quarter_of_the_two_body_one() {
        let one = PotentialSpec::linear(Coupling::Scalar, 0.0, 0.2, false).unwrap();
        let r = solve_radial_eigenvalue(&qn(0, 1), &one).unwrap();
        assert_abs_diff_eq!(r.energy * r.energy, 2.0 * 0.2 * 2.5, epsilon = 1e-8);
        let c = closed_form_eigenvalue(&qn(0, 1), &one).unwrap();
        assert_abs_diff_eq!(c.energy, r.energy, epsilon = 1e-8 * r.energy);
    }

    #[test]
    fn closed_form_dispatch_agrees_with_the_formula_modules() {
        let q = qn(2, 1);
        let vector = PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.3).unwrap();
        let scalar = PotentialSpec::coulomb(Coupling::Scalar, 1.0, 0.3).unwrap();
        let string = PotentialSpec::linear(Coupling::Scalar, 0.0, 0.14, true).unwrap();
        assert_abs_diff_eq!(
            closed_form_eigenvalue(&q, &vector).unwrap().energy,
            closed::coulomb_vector_energy(&q, 1.0, 0.3).unwrap(),
        );
        assert_abs_diff_eq!(
            closed_form_eigenvalue(&q, &scalar).unwrap().energy,
            closed::coulomb_scalar_energy(&q, 1.0, 0.3),
        );
        assert_abs_diff_eq!(
            closed_form_eigenvalue(&q, &string).unwrap().energy,
            closed::linear_scalar_energy_sq(&q, 0.14).unwrap().sqrt(),
        );
        let r = closed_form_eigenvalue(&q, &vector).unwrap();
        assert_eq!(r.method, Method::ClosedForm);
        assert_eq!(r.residual, 0.0);
        assert_eq!(r.turning_points.physical.len(), 2);
    }

    #[test]
    fn two_body_scalar_coulomb_doubles_the_one_body_energy() {
        let two = PotentialSpec::new(
            PotentialFamily::Coulomb,
            Coupling::Scalar,
            1.0,
            0.5,
            0.0,
            true,
        )
        .unwrap();
        let closed_e = closed_form_eigenvalue(&qn(0, 0), &two).unwrap().energy;
        assert_abs_diff_eq!(closed_e, 2.0 * 0.910_179_721_124_454_7, epsilon = 1e-12);
        let solved = solve_radial_eigenvalue(&qn(0, 0), &two).unwrap().energy;
        assert_abs_diff_eq!(solved, closed_e, epsilon = 1e-8 * closed_e);
    }

    #[test]
    fn funnel_solver_matches_the_exact_massless_action_not_the_perturbative_one() {
        // Exact massless two-body funnel spectrum from the oscillator-form
        // action: E^2 = 8k (2 n_r + 1 - a_s + sqrt(a_s^2 + (l+1/2)^2)).
        let (kappa, alpha_s) = (0.14, 0.2);
        for (n_r, l) in [(0, 0), (1, 0), (0, 1), (2, 2)] {
            let spec = PotentialSpec::funnel(Coupling::Scalar, 0.0, alpha_s, kappa, true).unwrap();
            let q = qn(n_r, l);
            let lh = l as f64 + 0.5;
            let exact_sq = 8.0
                * kappa
                * (2.0 * n_r as f64 + 1.0 - alpha_s + (alpha_s * alpha_s + lh * lh).sqrt());
            let solved = solve_radial_eigenvalue(&q, &spec).unwrap().energy;
            assert_abs_diff_eq!(solved * solved, exact_sq, epsilon = 1e-8 * exact_sq);
            // The perturbative formula differs at O(alpha_s^2).
            let pert = closed_form_eigenvalue(&q, &spec).unwrap().energy;
            let diff = (solved * solved - pert * pert).abs();
            assert!(
                diff > 1e-6 && diff < 8.0 * kappa * alpha_s * alpha_s,
                "O(alpha_s^2) window violated: {diff}"
            );
        }
    }

    #[test]
    fn eigenvalues_order_by_quantum_number() {
        let string = PotentialSpec::linear(Coupling::Scalar, 0.0, 0.2, true).unwrap();
        let mut last = 0.0;
        for n_r in 0..4 {
            let e = solve_radial_eigenvalue(&qn(n_r, 1), &string)
                .unwrap()
                .energy;
            assert!(e > last);
            last = e;
        }
        let mut last = 0.0;
        for l in 0..4 {
            let e = solve_radial_eigenvalue(&qn(1, l), &string).unwrap().energy;
            assert!(e > last);
            last = e;
        }
        // Coulomb binding shrinks with principal quantum number.
        let coulomb = PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.3).unwrap();
        let mut last_binding = f64::INFINITY;
        for n_r in 0..4 {
            let e = solve_radial_eigenvalue(&qn(n_r, 0), &coulomb)
                .unwrap()
                .energy;
            let binding = 1.0 - e;
            assert!(binding < last_binding && binding > 0.0);
            last_binding = binding;
        }
    }

    #[test]
    fn s_wave_string_spectrum_keeps_the_half_integer_centrifugal_term() {
        // With the correct (l+1/2)^2 term the S-wave squared spectrum is
        // 8k(2 n_r + 3/2); an l(l+1) = 0 computation would give 8k(2 n_r + 1).
        let spec = PotentialSpec::linear(Coupling::Scalar, 0.0, 0.2, true).unwrap();
        for n_r in 0..3 {
            let e_sq = solve_radial_eigenvalue(&qn(n_r, 0), &spec)
                .unwrap()
                .energy
                .powi(2);
            let with_half = 8.0 * 0.2 * (2.0 * n_r as f64 + 1.5);
            let without = 8.0 * 0.2 * (2.0 * n_r as f64 + 1.0);
            assert_abs_diff_eq!(e_sq, with_half, epsilon = 1e-7);
            assert!((e_sq - without).abs() > 0.7 * 8.0 * 0.2 * 0.5);
        }
    }

    #[test]
    fn scaling_covariance_of_the_vector_coulomb_spectrum() {
        let q = qn(1, 1);
        for alpha in [0.1, 0.3, 0.5] {
            let at = |m: f64| {
                let spec = PotentialSpec::coulomb(Coupling::Vector, m, alpha).unwrap();
                solve_radial_eigenvalue(&q, &spec).unwrap().energy / m
            };
            let (r1, r7) = (at(1.0), at(7.0));
            assert_abs_diff_eq!(r1, r7, epsilon = 1e-12 * r1.abs());
        }
    }

    #[test]
    fn unsolvable_problem_classes_are_rejected() {
        let vector_string = PotentialSpec::linear(Coupling::Vector, 1.0, 0.2, false).unwrap();
        assert!(matches!(
            solve_radial_eigenvalue(&qn(0, 0), &vector_string),
            Err(Error::VectorConfinement)
        ));
        let supercritical = PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.8).unwrap();
        assert!(matches!(
            solve_radial_eigenvalue(&qn(0, 0), &supercritical),
            Err(Error::SupercriticalCoupling { .. })
        ));
        let free = PotentialSpec::coulomb(Coupling::Scalar, 1.0, 0.0).unwrap();
        assert!(matches!(
            solve_radial_eigenvalue(&qn(0, 0), &free),
            Err(Error::NoBoundState(_))
        ));
        let massless_coulomb = PotentialSpec::coulomb(Coupling::Vector, 0.0, 0.3).unwrap();
        assert!(solve_radial_eigenvalue(&qn(0, 0), &massless_coulomb).is_err());
    }

    #[test]
    fn angular_eigenvalues_square_the_half_integer_index() {
        assert_abs_diff_eq!(angular_eigenvalues(0, 0).unwrap().m_squared, 0.25);
        let a = angular_eigenvalues(3, 2).unwrap();
        assert_abs_diff_eq!(a.m_squared, 12.25);
        assert!(angular_eigenvalues(1, 2).is_err());
    }

    #[test]
    fn angular_quantization_inverts_the_numeric_phase_integral() {
        // Quadrature check: the polar action at M = l + 1/2, M_z = m_int
        // equals pi (n_theta + 1/2), so inverting sqrt(M^2) = M_z + n_theta
        // + 1/2 reproduces the closed eigenvalue.
        for (l, m_int) in [(5u32, 3u32), (2, 0), (7, 7 - 1)] {
            let m = l as f64 + 0.5;
            let n_theta = (l - m_int) as f64;
            let got = angular_phase_integral(m, m_int as f64).unwrap();
            assert_abs_diff_eq!(got, PI * (n_theta + 0.5), epsilon = 1e-10);
            let m_reconstructed = m_int as f64 + n_theta + 0.5;
            assert_abs_diff_eq!(
                m_reconstructed * m_reconstructed,
                angular_eigenvalues(l, m_int).unwrap().m_squared,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn solver_handles_massive_strings_without_a_closed_form() {
        // m > 0 string: the physical-cut quantization is m-dependent and
        // must interleave monotonically with mass.
        let q = qn(0, 0);
        let mut last = solve_radial_eigenvalue(
            &q,
            &PotentialSpec::linear(Coupling::Scalar, 0.0, 0.2, true).unwrap(),
        )
        .unwrap()
        .energy;
        for m in [0.2, 0.5, 1.0] {
            let spec = PotentialSpec::linear(Coupling::Scalar, m, 0.2, true).unwrap();
            let e = solve_radial_eigenvalue(&q, &spec).unwrap().energy;
            assert!(e > last, "eigenvalue must grow with constituent mass");
            last = e;
        }
    }
}
