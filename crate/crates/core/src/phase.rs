//! Classical turning points and phase integrals: the radial action between
//! turning points, its contour decomposition for the linear potential, and
//! the polar-angle integral behind the angular quantization.

use crate::error::{Error, Result};
use crate::model::{Coupling, PotentialFamily, PotentialSpec, QuantumNumbers};
use crate::numerics::{
    bisect_secant, golden_min, log_grid, sign_change_brackets, sqrt_well_integral,
};

/// Default relative quadrature tolerance for phase integrals.
pub const DEFAULT_QUAD_REL_TOL: f64 = 1e-12;

/// Number of abscissas in the log-spaced turning-point scan.
const SCAN_POINTS: usize = 801;
/// Scan window in units of the natural length scale.
const SCAN_DECADES: (f64, f64) = (1e-8, 1e8);

/// Real roots of the effective squared momentum at a given energy.
#[derive(Debug, Clone, PartialEq)]
pub struct TurningPoints {
    /// Roots at r > 0, sorted ascending. A leading 0.0 marks the degenerate
    /// inner endpoint of the critical vector-Coulomb case (the allowed
    /// region reaches the origin).
    pub physical: Vec<f64>,
    /// Roots at r < 0, sorted ascending (scalar linear/funnel only).
    pub nonphysical: Vec<f64>,
}

impl TurningPoints {
    /// The bounded classically allowed interval, when there is exactly one.
    pub fn allowed_pair(&self) -> Option<(f64, f64)> {
        match self.physical.as_slice() {
            [a, b] => Some((*a, *b)),
            _ => None,
        }
    }
}

/// Result of a phase-integral evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseIntegralReport {
    /// The action value. For the contour decomposition this is the residue
    /// sum I0 + Iinf; otherwise the real-axis integral of sqrt(p^2).
    pub value: f64,
    pub error_estimate: f64,
    /// (2*Iminus, 2*Iplus): doubled real-axis integrals over the negative-r
    /// and positive-r allowed segments (contour decomposition only).
    pub cut_contributions: Option<(f64, f64)>,
    /// (I0, Iinf): pole-at-origin and pole-at-infinity parts (contour only).
    pub residue_parts: Option<(f64, f64)>,
}

impl PhaseIntegralReport {
    /// |cut sum - residue sum| when both decompositions are present.
    /// Zero (to quadrature accuracy) in the massless linear case; reported,
    /// not asserted, for massive strings.
    pub fn discrepancy(&self) -> Option<f64> {
        match (self.cut_contributions, self.residue_parts) {
            (Some((a, b)), Some((c, d))) => Some(((a + b) - (c + d)).abs()),
            _ => None,
        }
    }
}

/// Effective squared momentum in expanded coefficient form
/// p^2(r) = c + inv/r + lin*r - quad*r^2 - inv2/r^2.
///
/// The expansion is algebraically identical to the compact
/// `PotentialSpec::effective_p_squared` but free of the catastrophic
/// cancellation the compact form suffers at small r (the alpha^2/r^2 pieces
/// are combined analytically), and it extends to r < 0 for the negative-axis
/// cut of the contour decomposition.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PSquared {
    c: f64,
    inv: f64,
    lin: f64,
    quad: f64,
    inv2: f64,
}

impl PSquared {
    pub(crate) fn of(spec: &PotentialSpec, energy: f64, qn: &QuantumNumbers) -> Self {
        let cent = qn.centrifugal_sq();
        let (alpha, kappa, m) = (spec.alpha, spec.kappa, spec.mass);
        match spec.coupling {
            // (E + alpha/r - kappa r)^2 squares the confining term with a
            // plus sign: a vector linear tail raises p^2 at large r, which
            // is exactly why vector confinement is rejected by the solver.
            Coupling::Vector => PSquared {
                c: energy * energy - m * m - 2.0 * alpha * kappa,
                inv: 2.0 * energy * alpha,
                lin: -2.0 * energy * kappa,
                quad: -kappa * kappa,
                inv2: cent - alpha * alpha,
            },
            Coupling::Scalar => PSquared {
                c: spec.effective_energy_sq(energy) - m * m + 2.0 * alpha * kappa,
                inv: 2.0 * m * alpha,
                lin: -2.0 * m * kappa,
                quad: kappa * kappa,
                inv2: cent + alpha * alpha,
            },
        }
    }

    /// Valid for any r != 0, both signs.
    pub(crate) fn eval(&self, r: f64) -> f64 {
        self.c + self.inv / r + self.lin * r - self.quad * r * r - self.inv2 / (r * r)
    }
}

/// All real roots of p^2(.; E). Closed quadratics cover the Coulomb family
/// (in u = 1/r) and the massless scalar linear case (in s = r^2); everything
/// else is a refined log-grid scan.
pub fn find_turning_points(
    energy: f64,
    spec: &PotentialSpec,
    qn: &QuantumNumbers,
) -> Result<TurningPoints> {
    if spec.is_supercritical(qn.l) {
        return Err(Error::SupercriticalCoupling {
            alpha: spec.alpha,
            limit: qn.l as f64 + 0.5,
        });
    }
    let ps = PSquared::of(spec, energy, qn);
    match spec.family {
        PotentialFamily::Coulomb => coulomb_turning_points(&ps, energy),
        PotentialFamily::Linear | PotentialFamily::Funnel => {
            if spec.family == PotentialFamily::Linear
                && spec.coupling == Coupling::Scalar
                && spec.mass == 0.0
            {
                massless_linear_turning_points(&ps, energy)
            } else {
                scanned_turning_points(&ps, spec, energy)
            }
        }
    }
}

/// Quadratic in u = 1/r: -inv2*u^2 + inv*u + c = 0.
fn coulomb_turning_points(ps: &PSquared, energy: f64) -> Result<TurningPoints> {
    let (a, b, c) = (ps.inv2, ps.inv, ps.c);
    let none = TurningPoints {
        physical: Vec::new(),
        nonphysical: Vec::new(),
    };
    if a == 0.0 {
        // Critical coupling (alpha = l + 1/2): p^2 = c + b*u, monotone in u.
        if b <= 0.0 {
            return if c > 0.0 {
                Ok(none) // allowed everywhere, no roots
            } else {
                Err(Error::NoBoundRegion { energy })
            };
        }
        let u0 = -c / b;
        return if u0 > 0.0 {
            // Allowed from the origin out to r = 1/u0; the inner endpoint
            // degenerates onto r = 0.
            Ok(TurningPoints {
                physical: vec![0.0, 1.0 / u0],
                nonphysical: Vec::new(),
            })
        } else {
            Ok(none) // E at/above threshold: p^2 > 0 for all r
        };
    }
    let mut disc = b * b + 4.0 * a * c;
    let scale = b * b + (4.0 * a * c).abs() + f64::MIN_POSITIVE;
    if disc < 0.0 {
        if disc > -1e-12 * scale {
            disc = 0.0; // turning points coincide at the potential minimum
        } else {
            return Err(Error::NoBoundRegion { energy });
        }
    }
    let sq = disc.sqrt();
    let u_hi = (b + sq) / (2.0 * a);
    let u_lo = (b - sq) / (2.0 * a);
    let mut physical: Vec<f64> = [u_hi, u_lo]
        .iter()
        .filter(|&&u| u > 0.0)
        .map(|&u| 1.0 / u)
        .collect();
    physical.sort_by(|x, y| x.partial_cmp(y).unwrap());
    if physical.is_empty() {
        return Err(Error::NoBoundRegion { energy });
    }
    Ok(TurningPoints {
        physical,
        nonphysical: Vec::new(),
    })
}

/// Quadratic in s = r^2: -quad*s^2 + c*s - inv2 = 0.
fn massless_linear_turning_points(ps: &PSquared, energy: f64) -> Result<TurningPoints> {
    let (a, c, b2) = (ps.quad, ps.c, ps.inv2);
    if c <= 0.0 {
        return Err(Error::NoBoundRegion { energy });
    }
    let mut disc = c * c - 4.0 * a * b2;
    let scale = c * c + (4.0 * a * b2).abs() + f64::MIN_POSITIVE;
    if disc < 0.0 {
        if disc > -1e-12 * scale {
            disc = 0.0;
        } else {
            return Err(Error::NoBoundRegion { energy });
        }
    }
    let sq = disc.sqrt();
    let r_in = ((c - sq) / (2.0 * a)).max(0.0).sqrt();
    let r_out = ((c + sq) / (2.0 * a)).sqrt();
    Ok(TurningPoints {
        physical: vec![r_in, r_out],
        nonphysical: vec![-r_out, -r_in],
    })
}

fn scanned_turning_points(
    ps: &PSquared,
    spec: &PotentialSpec,
    energy: f64,
) -> Result<TurningPoints> {
    let scale = spec.natural_length(energy);
    let pos = |r: f64| ps.eval(r);
    let physical = match spec.coupling {
        // Scalar confining wells have a single hump; use the segment scan
        // (which also resolves grazing near-degenerate wells).
        Coupling::Scalar => match scan_allowed_segment(&pos, scale)? {
            Some((a, b)) => vec![a, b],
            None => return Err(Error::NoBoundRegion { energy }),
        },
        // Vector confinement is not quantizable, but the roots themselves
        // are well defined; report every crossing the scan finds.
        Coupling::Vector => {
            let grid = log_grid(SCAN_DECADES.0 * scale, SCAN_DECADES.1 * scale, SCAN_POINTS);
            let mut roots = Vec::new();
            for (lo, hi, flo, fhi) in sign_change_brackets(&pos, &grid) {
                roots.push(bisect_secant(|r| Ok(pos(r)), lo, hi, flo, fhi, 1e-12, 200)?);
            }
            if roots.is_empty() {
                return Err(Error::NoBoundRegion { energy });
            }
            roots
        }
    };
    let nonphysical = if spec.coupling == Coupling::Scalar {
        let neg = |rho: f64| ps.eval(-rho);
        match scan_allowed_segment(&neg, scale)? {
            Some((a, b)) => vec![-b, -a],
            None => Vec::new(),
        }
    } else {
        Vec::new()
    };
    Ok(TurningPoints {
        physical,
        nonphysical,
    })
}

/// Locate the single allowed segment of a one-hump profile `f` (negative at
/// both ends of the scan window), refining the two roots to 1e-12 relative.
/// Returns None when the profile stays negative, and a coincident pair when
/// it only grazes zero.
fn scan_allowed_segment(f: &impl Fn(f64) -> f64, length_scale: f64) -> Result<Option<(f64, f64)>> {
    let grid = log_grid(
        SCAN_DECADES.0 * length_scale,
        SCAN_DECADES.1 * length_scale,
        SCAN_POINTS,
    );
    let brackets = sign_change_brackets(f, &grid);
    let refine = |(lo, hi, flo, fhi): (f64, f64, f64, f64)| -> Result<f64> {
        bisect_secant(|r| Ok(f(r)), lo, hi, flo, fhi, 1e-12, 200)
    };
    match brackets.len() {
        2 => {
            let a = refine(brackets[0])?;
            let b = refine(brackets[1])?;
            return Ok(Some((a.min(b), a.max(b))));
        }
        0 => {}
        n => {
            return Err(Error::Domain(format!(
                "expected a single classically allowed segment, scan found {n} crossings"
            )));
        }
    }
    // No grid crossing: either no allowed region or one narrower than the
    // grid. Chase the hump maximum in log-r.
    let (imax, _) = grid
        .iter()
        .enumerate()
        .map(|(i, &r)| (i, f(r)))
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    let lo = grid[imax.saturating_sub(1)];
    let hi = grid[(imax + 1).min(grid.len() - 1)];
    let (x_log, neg_max) = golden_min(|t: f64| -f(t.exp()), lo.ln(), hi.ln(), 1e-14);
    let (x_max, f_max) = (x_log.exp(), -neg_max);
    // Compare against the magnitude of the profile's ingredients at the hump.
    let tiny = 1e-10
        * f(x_max)
            .abs()
            .max(f(0.5 * x_max).abs().max(f(2.0 * x_max).abs()));
    if f_max > tiny {
        let a = bisect_secant(|r| Ok(f(r)), lo, x_max, f(lo), f_max, 1e-12, 200)?;
        let b = bisect_secant(|r| Ok(f(r)), x_max, hi, f_max, f(hi), 1e-12, 200)?;
        Ok(Some((a, b)))
    } else if f_max > -tiny {
        Ok(Some((x_max, x_max)))
    } else {
        Ok(None)
    }
}

/// Radial action between the physical turning points at the default
/// quadrature tolerance.
pub fn radial_phase_integral(
    energy: f64,
    spec: &PotentialSpec,
    qn: &QuantumNumbers,
) -> Result<PhaseIntegralReport> {
    radial_phase_integral_with_tol(energy, spec, qn, DEFAULT_QUAD_REL_TOL)
}

/// Radial action between the physical turning points:
/// value = integral of sqrt(p^2) dr over [r_in, r_out].
pub fn radial_phase_integral_with_tol(
    energy: f64,
    spec: &PotentialSpec,
    qn: &QuantumNumbers,
    rel_tol: f64,
) -> Result<PhaseIntegralReport> {
    let tp = find_turning_points(energy, spec, qn)?;
    let (r_in, r_out) = match tp.physical.as_slice() {
        [a, b] => (*a, *b),
        [] | [_] => {
            return Err(Error::Domain(format!(
                "classically allowed region is unbounded at E = {energy}; nothing to quantize"
            )))
        }
        _ => {
            return Err(Error::Domain(
                "multiple classically allowed regions are unsupported".into(),
            ))
        }
    };
    if r_in == r_out {
        return Ok(PhaseIntegralReport {
            value: 0.0,
            error_estimate: 0.0,
            cut_contributions: None,
            residue_parts: None,
        });
    }
    let ps = PSquared::of(spec, energy, qn);
    let q = sqrt_well_integral(move |r| ps.eval(r), r_in, r_out, rel_tol)?;
    Ok(PhaseIntegralReport {
        value: q.value,
        error_estimate: q.error_estimate,
        cut_contributions: None,
        residue_parts: None,
    })
}

/// Contour decomposition of the quantization integral for the scalar linear
/// potential, at the default quadrature tolerance.
pub fn contour_phase_linear(
    energy: f64,
    spec: &PotentialSpec,
    qn: &QuantumNumbers,
) -> Result<PhaseIntegralReport> {
    contour_phase_linear_with_tol(energy, spec, qn, DEFAULT_QUAD_REL_TOL)
}

/// Both evaluations of the closed contour enclosing the four turning points:
/// residue parts (I0 = -2pi(l+1/2) at the origin, Iinf = pi*E_eff^2/kappa at
/// infinity) and the doubled real-axis cut integrals (2*Iminus, 2*Iplus).
/// `value` is the residue sum. The cut sum matches it whenever all four
/// branch points are real (any mass in the bound regime; the mass
/// dependence cancels out of the infinity residue), and `discrepancy()`
/// reports the numerical difference as a consistency check. No
/// complex-plane quadrature is involved: the residues are analytic and the
/// cuts are real integrals.
pub fn contour_phase_linear_with_tol(
    energy: f64,
    spec: &PotentialSpec,
    qn: &QuantumNumbers,
    rel_tol: f64,
) -> Result<PhaseIntegralReport> {
    if spec.family != PotentialFamily::Linear || spec.coupling != Coupling::Scalar {
        return Err(Error::Unsupported(
            "contour decomposition is defined for the scalar-coupled linear potential".into(),
        ));
    }
    let ps = PSquared::of(spec, energy, qn);
    let i_zero = -2.0 * std::f64::consts::PI * (qn.l as f64 + 0.5);
    let i_inf = std::f64::consts::PI * spec.effective_energy_sq(energy) / spec.kappa;
    let scale = spec.natural_length(energy);

    let mut err = 0.0;
    let mut cut = |segment: Option<(f64, f64)>, f: &dyn Fn(f64) -> f64| -> Result<f64> {
        match segment {
            Some((a, b)) if a < b => {
                let q = sqrt_well_integral(f, a, b, rel_tol)?;
                err += 2.0 * q.error_estimate;
                Ok(2.0 * q.value)
            }
            _ => Ok(0.0),
        }
    };
    let pos = |r: f64| ps.eval(r);
    let neg = |rho: f64| ps.eval(-rho);
    let two_i_plus = cut(scan_allowed_segment(&pos, scale)?, &pos)?;
    let two_i_minus = cut(scan_allowed_segment(&neg, scale)?, &neg)?;

    Ok(PhaseIntegralReport {
        value: i_zero + i_inf,
        error_estimate: err,
        cut_contributions: Some((two_i_minus, two_i_plus)),
        residue_parts: Some((i_zero, i_inf)),
    })
}

/// Polar-angle action between the turning points theta_1 = arcsin(M_z/M) and
/// pi - theta_1: integral of sqrt(M^2 - M_z^2/sin^2(theta)). Evaluated by
/// quadrature; equals pi(M - M_z) analytically.
pub fn angular_phase_integral(m_total: f64, m_z: f64) -> Result<f64> {
    if !(m_z >= 0.0) || !(m_total > m_z) {
        return Err(Error::Domain(format!(
            "no allowed polar region: require M > M_z >= 0, got M = {m_total}, M_z = {m_z}"
        )));
    }
    let theta1 = (m_z / m_total).asin();
    let theta2 = std::f64::consts::PI - theta1;
    let msq = m_total * m_total;
    let mzsq = m_z * m_z;
    let q = sqrt_well_integral(
        move |theta: f64| {
            let s = theta.sin();
            msq - mzsq / (s * s)
        },
        theta1,
        theta2,
        DEFAULT_QUAD_REL_TOL,
    )?;
    Ok(q.value)
}
