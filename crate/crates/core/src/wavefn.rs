//! Semiclassical radial wavefunctions: the primitive oscillatory form
//! inside the classically allowed region, exponentially damped tails
//! outside it, and the constant-momentum standing-wave form that the
//! scalar Coulomb problem admits.
//!
//! All shapes are built on the reduced radial function psi(r) = r R(r);
//! amplitudes are normalized so the largest sampled magnitude inside the
//! allowed region is exactly 1 (these are semiclassical shapes, not
//! unit-norm eigenfunctions).

use std::f64::consts::{FRAC_PI_4, PI};

use crate::closed;
use crate::error::{Error, Result};
use crate::model::{Coupling, PotentialFamily, PotentialSpec, QuantumNumbers};
use crate::numerics::{composite_gl, sqrt_well_integral};
use crate::phase::{find_turning_points, radial_phase_integral, PSquared};
use crate::quantize::solve_radial_eigenvalue;

/// Fixed number of in-well amplitude samples used for normalization and
/// node counting.
pub const AMPLITUDE_SAMPLES: usize = 4096;

/// Phase units by which a candidate energy may miss the quantization
/// target and still be accepted as an eigenvalue.
const EIGEN_PHASE_TOL: f64 = 1e-7;

/// |p| is floored at this fraction of the in-well momentum scale so the
/// 1/sqrt|p| prefactor stays finite when evaluated exactly at a turning
/// point (where the primitive semiclassical form formally diverges).
const MOMENTUM_FLOOR_FRACTION: f64 = 1e-12;

/// Relative tolerance of the damped-tail quadratures.
const TAIL_QUAD_TOL: f64 = 1e-10;

/// A semiclassical bound-state wavefunction for one (state, potential)
/// pair, with its phase integral tabulated across the allowed region.
#[derive(Debug, Clone)]
pub struct WkbWavefunction {
    pub qn: QuantumNumbers,
    pub spec: PotentialSpec,
    pub energy: f64,
    /// Phase accumulated at the inner turning point of the equivalent
    /// constant-momentum wave, |p_n| r_in. Zero for potentials without a
    /// constant-momentum form (everything except scalar Coulomb).
    pub chi1: f64,
    /// Amplitude that makes the largest sampled in-well magnitude 1.
    pub normalization: f64,
    r_in: f64,
    r_out: f64,
    dr: f64,
    /// Accumulated phase at the 4097 uniformly spaced edge radii
    /// r_in + j dr; the last entry is the full quantization integral.
    phase_edges: Vec<f64>,
    /// max |p| over the allowed region; anchors the turning-point floor.
    p_scale: f64,
    /// Expanded squared-momentum coefficients, frozen at `energy`.
    p2: PSquared,
}

impl WkbWavefunction {
    /// Solve for the eigenvalue at `qn` first, then build the shape.
    pub fn solve(qn: &QuantumNumbers, spec: &PotentialSpec) -> Result<Self> {
        let eigen = solve_radial_eigenvalue(qn, spec)?;
        Self::new(qn, spec, eigen.energy)
    }

    /// Build the shape at a caller-supplied energy, refusing energies whose
    /// quantization phase misses the half-integer target by more than a
    /// small tolerance (they are not eigenvalues and the matched form does
    /// not exist there).
    pub fn new(qn: &QuantumNumbers, spec: &PotentialSpec, energy: f64) -> Result<Self> {
        let target = PI * (qn.n_r as f64 + 0.5);
        let report = radial_phase_integral(energy, spec, qn)?;
        let miss = (report.value - target).abs();
        if miss > EIGEN_PHASE_TOL {
            return Err(Error::Domain(format!(
                "energy {energy} is not an eigenvalue: quantization phase misses its target by {miss:.3e}"
            )));
        }
        let turning = find_turning_points(energy, spec, qn)?;
        let (r_in, r_out) = turning
            .allowed_pair()
            .ok_or(Error::NoBoundRegion { energy })?;
        if !(r_out > r_in) {
            return Err(Error::NoBoundRegion { energy });
        }

        let p2 = PSquared::of(spec, energy, qn);
        let p_abs = |r: f64| p2.eval(r).max(0.0).sqrt();
        let dr = (r_out - r_in) / AMPLITUDE_SAMPLES as f64;

        // March the phase integral across the allowed region with one
        // 32-point panel per sample interval. Panels adjacent to the
        // turning points carry the square-root endpoint behavior, but their
        // share of the total phase is O((dr/width)^{3/2}) so the error is
        // far below the eigenvalue residual.
        let mut phase_edges = Vec::with_capacity(AMPLITUDE_SAMPLES + 1);
        let mut acc = 0.0;
        phase_edges.push(0.0);
        for j in 0..AMPLITUDE_SAMPLES {
            let a = r_in + dr * j as f64;
            acc += composite_gl(&p_abs, a, a + dr, 1);
            phase_edges.push(acc);
        }

        let p_scale = (0..AMPLITUDE_SAMPLES)
            .map(|j| p_abs(r_in + dr * (j as f64 + 0.5)))
            .fold(0.0_f64, f64::max);
        if !(p_scale > 0.0) {
            return Err(Error::NoBoundRegion { energy });
        }

        let chi1 = match (spec.family, spec.coupling) {
            (PotentialFamily::Coulomb, Coupling::Scalar) => {
                closed::coulomb_scalar_momentum(qn, spec.mass, spec.alpha) * r_in
            }
            _ => 0.0,
        };

        let mut wf = WkbWavefunction {
            qn: *qn,
            spec: *spec,
            energy,
            chi1,
            normalization: 1.0,
            r_in,
            r_out,
            dr,
            phase_edges,
            p_scale,
            p2,
        };
        let peak = (0..AMPLITUDE_SAMPLES)
            .map(|j| wf.raw_in_well(wf.midpoint(j)).abs())
            .fold(0.0_f64, f64::max);
        wf.normalization = 1.0 / peak;
        Ok(wf)
    }

    /// Inner and outer classical turning points.
    pub fn turning_points(&self) -> (f64, f64) {
        (self.r_in, self.r_out)
    }

    /// Reduced radial wavefunction psi(r) = r R(r) at any r > 0:
    /// oscillatory A cos(phase - pi/4)/sqrt|p| inside the allowed region,
    /// damped A exp(-|phase|)/(2 sqrt|p|) in both forbidden tails.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!(
                "radius must be positive and finite, got {r}"
            )));
        }
        let a = self.normalization;
        if r < self.r_in {
            let damp = sqrt_well_integral(
                |x| (-self.p_squared(x)).max(0.0),
                r,
                self.r_in,
                TAIL_QUAD_TOL,
            )?;
            Ok(a / (2.0 * self.p_eff(r).sqrt()) * (-damp.value).exp())
        } else if r > self.r_out {
            let damp = sqrt_well_integral(
                |x| (-self.p_squared(x)).max(0.0),
                self.r_out,
                r,
                TAIL_QUAD_TOL,
            )?;
            Ok(a / (2.0 * self.p_eff(r).sqrt()) * (-damp.value).exp())
        } else {
            Ok(a / self.p_eff(r).sqrt() * (self.phase_to(r) - FRAC_PI_4).cos())
        }
    }

    /// Interior sign changes of the sampled in-well amplitude; equals n_r
    /// for a correctly quantized state.
    pub fn interior_node_count(&self) -> usize {
        let mut nodes = 0;
        let mut prev = self.raw_in_well(self.midpoint(0));
        for j in 1..AMPLITUDE_SAMPLES {
            let cur = self.raw_in_well(self.midpoint(j));
            if (prev > 0.0 && cur < 0.0) || (prev < 0.0 && cur > 0.0) {
                nodes += 1;
            }
            prev = cur;
        }
        nodes
    }

    /// Accumulated phase integral from the inner turning point to r, for
    /// r inside the allowed region.
    pub fn phase_to(&self, r: f64) -> f64 {
        let r = r.clamp(self.r_in, self.r_out);
        let j = (((r - self.r_in) / self.dr) as usize).min(AMPLITUDE_SAMPLES - 1);
        let edge = self.r_in + self.dr * j as f64;
        let p_abs = |x: f64| self.p_squared(x).max(0.0).sqrt();
        self.phase_edges[j] + composite_gl(&p_abs, edge, r, 1)
    }

    fn midpoint(&self, j: usize) -> f64 {
        self.r_in + self.dr * (j as f64 + 0.5)
    }

    fn p_squared(&self, r: f64) -> f64 {
        self.p2.eval(r)
    }

    /// |p| floored near turning points so prefactors stay finite.
    fn p_eff(&self, r: f64) -> f64 {
        self.p_squared(r)
            .abs()
            .sqrt()
            .max(MOMENTUM_FLOOR_FRACTION * self.p_scale)
    }

    /// In-well amplitude before normalization.
    fn raw_in_well(&self, r: f64) -> f64 {
        (self.phase_to(r) - FRAC_PI_4).cos() / self.p_eff(r).sqrt()
    }
}

/// The primitive semiclassical radial wavefunction at radius r.
pub fn wkb_radial_wavefunction(r: f64, wf: &WkbWavefunction) -> Result<f64> {
    wf.evaluate(r)
}

/// Constant-momentum standing wave C cos(|p_n| r - chi1 - pi/4). Only the
/// scalar Coulomb problem keeps |p_n| constant across the well, so other
/// specs are refused.
pub fn standing_wave(r: f64, wf: &WkbWavefunction) -> Result<f64> {
    if wf.spec.family != PotentialFamily::Coulomb || wf.spec.coupling != Coupling::Scalar {
        return Err(Error::Unsupported(
            "the standing-wave form needs a constant momentum magnitude, which only the scalar Coulomb spectrum provides".into(),
        ));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "radius must be positive and finite, got {r}"
        )));
    }
    let p_n = closed::coulomb_scalar_momentum(&wf.qn, wf.spec.mass, wf.spec.alpha);
    let amplitude = wf.normalization / p_n.sqrt();
    Ok(amplitude * (p_n * r - wf.chi1 - FRAC_PI_4).cos())
}

/// Measured small-r power of the full radial function R(r) = psi(r)/r,
/// obtained by a log-log least-squares fit deep inside the inner forbidden
/// tail (radii 1e-6 .. 1e-4 of the inner turning point). For Coulomb-type
/// spectra this converges to sqrt((l + 1/2)^2 -+ alpha^2) - 1/2.
pub fn small_r_exponent(wf: &WkbWavefunction) -> Result<f64> {
    if wf.spec.family != PotentialFamily::Coulomb {
        return Err(Error::Unsupported(
            "the small-r power law is measured on Coulomb-type states, whose inner tail is a pure power".into(),
        ));
    }
    if !(wf.r_in > 0.0) {
        return Err(Error::Domain(
            "allowed region reaches the origin; no inner tail to fit".into(),
        ));
    }
    const FIT_POINTS: usize = 16;
    let (lo, hi) = (1e-6 * wf.r_in, 1e-4 * wf.r_in);
    let step = (hi / lo).ln() / (FIT_POINTS - 1) as f64;
    let mut xs = Vec::with_capacity(FIT_POINTS);
    let mut ys = Vec::with_capacity(FIT_POINTS);
    for k in 0..FIT_POINTS {
        let r = lo * ((k as f64) * step).exp();
        let psi = wf.evaluate(r)?;
        if psi <= 0.0 {
            return Err(Error::NonConvergence(
                "inner tail amplitude not strictly positive; cannot fit a power law".into(),
            ));
        }
        xs.push(r.ln());
        ys.push((psi / r).ln());
    }
    let n = FIT_POINTS as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let d = y - (intercept + slope * x);
            d * d
        })
        .sum::<f64>()
        / n)
        .sqrt();
    if rms > 1e-3 {
        return Err(Error::NonConvergence(format!(
            "inner tail is not a power law: log-log fit residual {rms:.3e}"
        )));
    }
    Ok(slope)
}
