//! Physical problem definition: potentials, couplings, quantum numbers,
//! and the effective squared radial momentum every other module consumes.
//!
//! Everything here works in natural units (ħ = c = 1); unit conversion is a
//! front-end concern. All types are immutable values and all operations are
//! pure functions, safe for unrestricted concurrent use.

use crate::error::{Error, Result};

/// Shape of the interaction potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialFamily {
    /// V(r) = -alpha / r
    Coulomb,
    /// V(r) = kappa * r
    Linear,
    /// V(r) = -alpha / r + kappa * r
    Funnel,
}

/// How the potential enters the wave equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    /// Time component of a four-vector: shifts the energy, E -> E - V.
    Vector,
    /// Added to the rest mass: position-dependent effective mass W = m + V.
    Scalar,
}

/// A fully specified single-channel radial problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub family: PotentialFamily,
    pub coupling: Coupling,
    /// Rest mass m (particle or constituent quark), natural units.
    pub mass: f64,
    /// Coulomb strength (alpha, or alpha_s for the funnel).
    pub alpha: f64,
    /// String tension (energy squared); zero for the pure Coulomb family.
    pub kappa: f64,
    /// Equal-mass two-body kinematics: the scalar kinetic term uses E^2/4.
    pub two_body: bool,
}

impl PotentialSpec {
    /// Validating constructor. `alpha` must be supplied (>= 0) exactly for
    /// families with a Coulomb term, `kappa` (> 0) exactly for confining
    /// families; parameters irrelevant to the family must be zero.
    pub fn new(
        family: PotentialFamily,
        coupling: Coupling,
        mass: f64,
        alpha: f64,
        kappa: f64,
        two_body: bool,
    ) -> Result<Self> {
        if !(mass >= 0.0) || !mass.is_finite() {
            return Err(Error::InvalidPotential(format!(
                "mass must be finite and non-negative, got {mass}"
            )));
        }
        let wants_coulomb = matches!(family, PotentialFamily::Coulomb | PotentialFamily::Funnel);
        let wants_tension = matches!(family, PotentialFamily::Linear | PotentialFamily::Funnel);
        if wants_coulomb {
            if !(alpha >= 0.0) || !alpha.is_finite() {
                return Err(Error::InvalidPotential(format!(
                    "alpha must be finite and non-negative, got {alpha}"
                )));
            }
        } else if alpha != 0.0 {
            return Err(Error::InvalidPotential(
                "alpha has no effect for the linear family; pass 0".into(),
            ));
        }
        if wants_tension {
            if !(kappa > 0.0) || !kappa.is_finite() {
                return Err(Error::InvalidPotential(format!(
                    "kappa must be finite and positive, got {kappa}"
                )));
            }
        } else if kappa != 0.0 {
            return Err(Error::InvalidPotential(
                "kappa has no effect for the Coulomb family; pass 0".into(),
            ));
        }
        Ok(PotentialSpec {
            family,
            coupling,
            mass,
            alpha,
            kappa,
            two_body,
        })
    }

    /// Pure Coulomb problem, V = -alpha/r.
    pub fn coulomb(coupling: Coupling, mass: f64, alpha: f64) -> Result<Self> {
        Self::new(PotentialFamily::Coulomb, coupling, mass, alpha, 0.0, false)
    }

    /// Pure linear confinement, V = kappa r.
    pub fn linear(coupling: Coupling, mass: f64, kappa: f64, two_body: bool) -> Result<Self> {
        Self::new(
            PotentialFamily::Linear,
            coupling,
            mass,
            0.0,
            kappa,
            two_body,
        )
    }

    /// Coulomb-plus-linear, V = -alpha_s/r + kappa r.
    pub fn funnel(
        coupling: Coupling,
        mass: f64,
        alpha_s: f64,
        kappa: f64,
        two_body: bool,
    ) -> Result<Self> {
        Self::new(
            PotentialFamily::Funnel,
            coupling,
            mass,
            alpha_s,
            kappa,
            two_body,
        )
    }

    /// V(r) for this family.
    pub fn potential_value(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(match self.family {
            PotentialFamily::Coulomb => -self.alpha / r,
            PotentialFamily::Linear => self.kappa * r,
            PotentialFamily::Funnel => -self.alpha / r + self.kappa * r,
        })
    }

    /// Scalar effective mass W(r) = m + V(r).
    pub fn effective_mass(&self, r: f64) -> Result<f64> {
        Ok(self.mass + self.potential_value(r)?)
    }

    /// Effective squared radial momentum p^2(r; E).
    ///
    /// Vector coupling: (E - V)^2 - m^2 - (l+1/2)^2/r^2.
    /// Scalar coupling: E_eff^2 - W^2 - (l+1/2)^2/r^2 with W = m + V and
    /// E_eff^2 = E^2/4 under equal-mass two-body kinematics (`two_body`
    /// applies to the scalar branch only; the vector branch ignores it).
    /// The centrifugal coefficient is always (l+1/2)^2, never l(l+1).
    pub fn effective_p_squared(&self, r: f64, energy: f64, qn: &QuantumNumbers) -> Result<f64> {
        check_radius(r)?;
        let b = qn.centrifugal_sq();
        let v = match self.family {
            PotentialFamily::Coulomb => -self.alpha / r,
            PotentialFamily::Linear => self.kappa * r,
            PotentialFamily::Funnel => -self.alpha / r + self.kappa * r,
        };
        Ok(match self.coupling {
            Coupling::Vector => {
                let shifted = energy - v;
                shifted * shifted - self.mass * self.mass - b / (r * r)
            }
            Coupling::Scalar => {
                let w = self.mass + v;
                self.effective_energy_sq(energy) - w * w - b / (r * r)
            }
        })
    }

    /// E_eff^2 entering the scalar kinetic term (E^2/4 when `two_body`).
    pub(crate) fn effective_energy_sq(&self, energy: f64) -> f64 {
        if self.coupling == Coupling::Scalar && self.two_body {
            energy * energy / 4.0
        } else {
            energy * energy
        }
    }

    /// True when the potential grows without bound (linear or funnel).
    pub fn is_confining(&self) -> bool {
        matches!(
            self.family,
            PotentialFamily::Linear | PotentialFamily::Funnel
        )
    }

    /// True when a vector-coupled Coulomb term is too strong for a real
    /// centrifugal index at this l (alpha > l + 1/2). Scalar couplings are
    /// never supercritical.
    pub fn is_supercritical(&self, l: u32) -> bool {
        self.coupling == Coupling::Vector
            && matches!(
                self.family,
                PotentialFamily::Coulomb | PotentialFamily::Funnel
            )
            && self.alpha > l as f64 + 0.5
    }

    /// Natural length scale used to size root scans: max of 1/m, 1/sqrt(kappa),
    /// alpha/E over the parameters that are present.
    pub(crate) fn natural_length(&self, energy: f64) -> f64 {
        let mut scale = 0.0_f64;
        if self.mass > 0.0 {
            scale = scale.max(1.0 / self.mass);
        }
        if self.kappa > 0.0 {
            scale = scale.max(1.0 / self.kappa.sqrt());
        }
        if self.alpha > 0.0 && energy > 0.0 {
            scale = scale.max(self.alpha / energy);
        }
        if scale == 0.0 {
            1.0
        } else {
            scale
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

/// Radial, orbital, and azimuthal quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    /// Radial node count.
    pub n_r: u32,
    /// Orbital quantum number.
    pub l: u32,
    /// Azimuthal eigenvalue index (M_z), 0 <= m_int <= l.
    pub m_int: u32,
}

impl QuantumNumbers {
    pub fn new(n_r: u32, l: u32, m_int: u32) -> Result<Self> {
        if m_int > l {
            return Err(Error::InvalidQuantumNumbers(format!(
                "m_int = {m_int} exceeds l = {l}"
            )));
        }
        Ok(QuantumNumbers { n_r, l, m_int })
    }

    /// Radial problem only (m_int = 0); always valid.
    pub fn radial(n_r: u32, l: u32) -> Self {
        QuantumNumbers { n_r, l, m_int: 0 }
    }

    /// Principal quantum number n = n_r + l + 1.
    pub fn n(&self) -> u32 {
        self.n_r + self.l + 1
    }

    /// Polar node count n_theta = l - m_int.
    pub fn n_theta(&self) -> u32 {
        self.l - self.m_int
    }

    /// Centrifugal coefficient (l + 1/2)^2.
    pub fn centrifugal_sq(&self) -> f64 {
        let lh = self.l as f64 + 0.5;
        lh * lh
    }
}

/// Squared total angular momentum eigenvalue M^2 = (l + 1/2)^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularEigenvalue {
    pub m_squared: f64,
}

/// Centrifugal indices for the Coulomb problem:
/// Lambda = sqrt((l+1/2)^2 - alpha^2) for vector coupling,
/// sqrt((l+1/2)^2 + alpha^2) for scalar coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombAux {
    pub lambda_vector: f64,
    pub lambda_scalar: f64,
}

impl CoulombAux {
    /// Fails with a supercritical-coupling error when alpha > l + 1/2
    /// (lambda_vector would be imaginary there).
    pub fn new(l: u32, alpha: f64) -> Result<Self> {
        let lh = l as f64 + 0.5;
        let vec_sq = lh * lh - alpha * alpha;
        if vec_sq < 0.0 {
            return Err(Error::SupercriticalCoupling { alpha, limit: lh });
        }
        Ok(CoulombAux {
            lambda_vector: vec_sq.sqrt(),
            lambda_scalar: (lh * lh + alpha * alpha).sqrt(),
        })
    }

    /// The scalar index alone; defined for every alpha >= 0.
    pub fn scalar_index(l: u32, alpha: f64) -> f64 {
        let lh = l as f64 + 0.5;
        (lh * lh + alpha * alpha).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn qn(n_r: u32, l: u32) -> QuantumNumbers {
        QuantumNumbers::radial(n_r, l)
    }

    #[test]
    fn potential_values_match_hand_arithmetic() {
        let c = PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.5).unwrap();
        assert_abs_diff_eq!(c.potential_value(2.0).unwrap(), -0.25, epsilon = 1e-15);

        let lin = PotentialSpec::linear(Coupling::Scalar, 0.0, 0.2, true).unwrap();
        assert_abs_diff_eq!(lin.potential_value(3.0).unwrap(), 0.6, epsilon = 1e-15);

        let f = PotentialSpec::funnel(Coupling::Scalar, 0.0, 0.39, 0.14, true).unwrap();
        assert_abs_diff_eq!(f.potential_value(1.0).unwrap(), -0.25, epsilon = 1e-15);
    }

    #[test]
    fn non_positive_radius_is_a_domain_error() {
        let c = PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.5).unwrap();
        assert!(matches!(c.potential_value(0.0), Err(Error::Domain(_))));
        assert!(matches!(c.potential_value(-1.0), Err(Error::Domain(_))));
        assert!(matches!(
            c.effective_p_squared(0.0, 0.5, &qn(0, 0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn vector_coulomb_p_squared_vanishes_at_the_outer_turning_point() {
        // alpha = 1/2 at l = 0 is the critical case; the outer turning point
        // of the ground state sits at r = sqrt(2).
        let spec = PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.5).unwrap();
        let e = 1.0 / 2.0_f64.sqrt();
        let p2 = spec
            .effective_p_squared(2.0_f64.sqrt(), e, &qn(0, 0))
            .unwrap();
        assert_abs_diff_eq!(p2, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn scalar_linear_two_body_p_squared_vanishes_at_the_inner_turning_point() {
        let spec = PotentialSpec::linear(Coupling::Scalar, 0.0, 0.2, true).unwrap();
        let e = 8.8_f64.sqrt();
        // Inner turning point from the closed quadratic in r^2.
        let r3 = 1.733_523_167_473_748_8;
        let p2 = spec.effective_p_squared(r3, e, &qn(1, 2)).unwrap();
        assert_abs_diff_eq!(p2, 0.0, epsilon = 1e-12);
        // The less precise 7-digit radius must still be a near-zero.
        let p2_rounded = spec.effective_p_squared(1.733_521, e, &qn(1, 2)).unwrap();
        assert_abs_diff_eq!(p2_rounded, 0.0, epsilon = 1e-5);
    }

    #[test]
    fn confining_p_squared_is_negative_far_out() {
        let spec = PotentialSpec::funnel(Coupling::Scalar, 0.3, 0.39, 0.14, true).unwrap();
        let p2 = spec.effective_p_squared(1.0e4, 2.0, &qn(0, 1)).unwrap();
        assert!(p2 < 0.0);
    }

    #[test]
    fn p_squared_diverges_negative_at_the_origin() {
        for spec in [
            PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.3).unwrap(),
            PotentialSpec::coulomb(Coupling::Scalar, 1.0, 0.5).unwrap(),
            PotentialSpec::linear(Coupling::Scalar, 0.5, 0.2, false).unwrap(),
            PotentialSpec::funnel(Coupling::Scalar, 0.0, 0.39, 0.14, true).unwrap(),
        ] {
            let p2 = spec.effective_p_squared(1e-9, 1.0, &qn(0, 0)).unwrap();
            assert!(
                p2 < 0.0,
                "expected centrifugal domination near 0 for {spec:?}"
            );
        }
    }

    #[test]
    fn scalar_and_vector_coulomb_differ_for_positive_alpha_and_mass() {
        let v = PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.4).unwrap();
        let s = PotentialSpec::coulomb(Coupling::Scalar, 1.0, 0.4).unwrap();
        let probe = (1.7, 0.9);
        let pv = v.effective_p_squared(probe.0, probe.1, &qn(0, 1)).unwrap();
        let ps = s.effective_p_squared(probe.0, probe.1, &qn(0, 1)).unwrap();
        assert!(
            (pv - ps).abs() > 1e-6,
            "couplings must not collapse: {pv} vs {ps}"
        );
    }

    #[test]
    fn vector_coulomb_expands_to_the_centrifugal_index_form() {
        // (E + alpha/r)^2 - m^2 - (l+1/2)^2/r^2 == E^2 - m^2 + 2 alpha E / r - Lambda^2 / r^2
        let spec = PotentialSpec::coulomb(Coupling::Vector, 1.3, 0.45).unwrap();
        let q = qn(2, 1);
        let aux = CoulombAux::new(q.l, spec.alpha).unwrap();
        for &r in &[0.07, 0.5, 1.9, 13.0] {
            for &e in &[0.4, 0.9, 1.2] {
                let direct = spec.effective_p_squared(r, e, &q).unwrap();
                let expanded = e * e - spec.mass * spec.mass + 2.0 * spec.alpha * e / r
                    - aux.lambda_vector * aux.lambda_vector / (r * r);
                assert_abs_diff_eq!(direct, expanded, epsilon = 1e-12 * direct.abs().max(1.0));
            }
        }
    }

    #[test]
    fn two_body_flag_quarters_the_scalar_kinetic_term() {
        let one = PotentialSpec::linear(Coupling::Scalar, 0.0, 0.2, false).unwrap();
        let two = PotentialSpec::linear(Coupling::Scalar, 0.0, 0.2, true).unwrap();
        let q = qn(0, 0);
        let (r, e) = (2.0, 1.6);
        let p1 = one.effective_p_squared(r, e, &q).unwrap();
        let p2 = two.effective_p_squared(r, e, &q).unwrap();
        assert_abs_diff_eq!(p1 - p2, e * e * (1.0 - 0.25), epsilon = 1e-14);
    }

    #[test]
    fn quantum_number_accessors() {
        let q = QuantumNumbers::new(1, 3, 2).unwrap();
        assert_eq!(q.n(), 5);
        assert_eq!(q.n_theta(), 1);
        assert_abs_diff_eq!(q.centrifugal_sq(), 12.25, epsilon = 1e-15);
        assert!(QuantumNumbers::new(0, 1, 2).is_err());
    }

    #[test]
    fn coulomb_aux_indices_and_supercritical_rejection() {
        let aux = CoulombAux::new(0, 0.3).unwrap();
        assert_abs_diff_eq!(aux.lambda_vector, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(aux.lambda_scalar, 0.34_f64.sqrt(), epsilon = 1e-15);
        assert!(aux.lambda_scalar >= 0.5 && 0.5 >= aux.lambda_vector);

        // Critical alpha = l + 1/2 is still allowed (Lambda = 0)...
        assert_abs_diff_eq!(CoulombAux::new(0, 0.5).unwrap().lambda_vector, 0.0);
        // ... anything beyond is rejected.
        assert!(matches!(
            CoulombAux::new(0, 0.6),
            Err(Error::SupercriticalCoupling { .. })
        ));
    }

    #[test]
    fn construction_rejects_inconsistent_parameters() {
        assert!(PotentialSpec::new(
            PotentialFamily::Linear,
            Coupling::Scalar,
            0.0,
            0.0,
            0.0,
            false
        )
        .is_err());
        assert!(PotentialSpec::new(
            PotentialFamily::Coulomb,
            Coupling::Scalar,
            1.0,
            0.3,
            0.1,
            false
        )
        .is_err());
        assert!(PotentialSpec::new(
            PotentialFamily::Funnel,
            Coupling::Scalar,
            1.0,
            -0.2,
            0.14,
            false
        )
        .is_err());
        assert!(PotentialSpec::new(
            PotentialFamily::Coulomb,
            Coupling::Vector,
            f64::NAN,
            0.3,
            0.0,
            false
        )
        .is_err());
        // Vector confinement is constructible; only the quantizer refuses it.
        assert!(PotentialSpec::linear(Coupling::Vector, 1.0, 0.2, false).is_ok());
    }

    #[test]
    fn supercritical_query_is_vector_only() {
        let v = PotentialSpec::coulomb(Coupling::Vector, 1.0, 0.7).unwrap();
        assert!(v.is_supercritical(0));
        assert!(!v.is_supercritical(1));
        let s = PotentialSpec::coulomb(Coupling::Scalar, 1.0, 0.7).unwrap();
        assert!(!s.is_supercritical(0));
    }
}
