//! Closed-form spectra: the relativistic Coulomb eigenvalues for both
//! couplings, the oscillator-like string spectrum, the funnel shift, the
//! constituent mass shift, and the nonrelativistic baseline used by the
//! hydrogen comparison table.

use crate::error::{Error, Result};
use crate::model::{CoulombAux, QuantumNumbers};

/// One row of the hydrogen comparison table; all three entries are bindings
/// (E - m), negative for bound states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub qn: QuantumNumbers,
    /// Nonrelativistic (Schrodinger) binding.
    pub e_nr: f64,
    /// Vector-coupling binding (Klein-Gordon-equivalent spectrum).
    pub e_kg: f64,
    /// Scalar-coupling binding.
    pub e_sc: f64,
}

/// The (l, n_r) rows of the reference hydrogen table, in published order.
pub const HYDROGEN_ROWS: [(u32, u32); 9] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (1, 1),
    (2, 1),
    (2, 2),
    (3, 2),
    (4, 2),
    (4, 3),
];

/// Published reference hydrogen levels in eV, one `[E_NR, E_KG, E_SC]`
/// triple per row of `HYDROGEN_ROWS`. `table1` output is compared against
/// these; the residuals (a few 1e-6 eV, from the original constants being
/// unrecoverable) are part of the report.
pub const HYDROGEN_REFERENCE_EV: [[f64; 3]; 9] = [
    [-13.6155700, -13.6164800, -13.6143000],
    [-3.4038930, -3.4039190, -3.4038440],
    [-3.4038930, -3.4040400, -3.4037230],
    [-1.5128410, -1.5128520, -1.5128250],
    [-0.8509732, -0.8509756, -0.8509693],
    [-0.5446228, -0.5446243, -0.5446208],
    [-0.3782103, -0.3782109, -0.3782095],
    [-0.2778688, -0.2778690, -0.2778684],
    [-0.2127433, -0.2127435, -0.2127430],
];

/// Default hydrogen calibration: ground-state nonrelativistic binding in eV.
pub const DEFAULT_CALIBRATE_NR_EV: f64 = 13.6155700;
/// Default hydrogen calibration: inverse fine-structure constant.
pub const DEFAULT_INV_ALPHA: f64 = 137.036;

/// Vector-coupled Coulomb eigenvalue (the Klein-Gordon-equivalent spectrum):
/// E = m / sqrt(1 + alpha^2 / (n_r + 1/2 + Lambda)^2),
/// Lambda = sqrt((l+1/2)^2 - alpha^2).
pub fn coulomb_vector_energy(qn: &QuantumNumbers, m: f64, alpha: f64) -> Result<f64> {
    let aux = CoulombAux::new(qn.l, alpha)?;
    let nu = qn.n_r as f64 + 0.5 + aux.lambda_vector;
    Ok(m / (1.0 + (alpha / nu) * (alpha / nu)).sqrt())
}

/// Binding E - m of `coulomb_vector_energy`, evaluated in a form free of
/// the large-m cancellation: -m x / (sqrt(1+x) (1 + sqrt(1+x))), x = (alpha/nu)^2.
pub fn coulomb_vector_binding(qn: &QuantumNumbers, m: f64, alpha: f64) -> Result<f64> {
    let aux = CoulombAux::new(qn.l, alpha)?;
    let nu = qn.n_r as f64 + 0.5 + aux.lambda_vector;
    let x = (alpha / nu) * (alpha / nu);
    let s = (1.0 + x).sqrt();
    Ok(-m * x / (s * (1.0 + s)))
}

/// Scalar-coupled Coulomb eigenvalue:
/// E = m sqrt(1 - alpha^2 / (n_r + 1/2 + Lambda_s)^2),
/// Lambda_s = sqrt((l+1/2)^2 + alpha^2). Never supercritical.
pub fn coulomb_scalar_energy(qn: &QuantumNumbers, m: f64, alpha: f64) -> f64 {
    let nu = qn.n_r as f64 + 0.5 + CoulombAux::scalar_index(qn.l, alpha);
    m * (1.0 - (alpha / nu) * (alpha / nu)).sqrt()
}

/// Binding E - m of `coulomb_scalar_energy`, cancellation-free:
/// -m y / (1 + sqrt(1-y)), y = (alpha/nu)^2.
pub fn coulomb_scalar_binding(qn: &QuantumNumbers, m: f64, alpha: f64) -> f64 {
    let nu = qn.n_r as f64 + 0.5 + CoulombAux::scalar_index(qn.l, alpha);
    let y = (alpha / nu) * (alpha / nu);
    -m * y / (1.0 + (1.0 - y).sqrt())
}

/// Magnitude of the (imaginary) constant momentum of the scalar Coulomb
/// state: |p_n| = alpha m / (n_r + 1/2 + Lambda_s). Satisfies
/// E^2 = m^2 - |p_n|^2 with E from `coulomb_scalar_energy`.
pub fn coulomb_scalar_momentum(qn: &QuantumNumbers, m: f64, alpha: f64) -> f64 {
    let nu = qn.n_r as f64 + 0.5 + CoulombAux::scalar_index(qn.l, alpha);
    alpha * m / nu
}

/// Fine-structure term of the scalar Coulomb spectrum:
/// dE = (m alpha^4 / 2n^3) (1/(l+1/2) - 1/(4n)).
pub fn fine_structure_sc(qn: &QuantumNumbers, m: f64, alpha: f64) -> f64 {
    let n = qn.n() as f64;
    let a2 = alpha * alpha;
    (m * a2 * a2 / (2.0 * n * n * n)) * (1.0 / (qn.l as f64 + 0.5) - 1.0 / (4.0 * n))
}

/// Squared eigenvalue of the equal-mass scalar string (mass-independent):
/// E^2 = 8 kappa (2 n_r + l + 3/2).
pub fn linear_scalar_energy_sq(qn: &QuantumNumbers, kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::InvalidPotential(format!(
            "string tension must be positive, got {kappa}"
        )));
    }
    Ok(8.0 * kappa * (2.0 * qn.n_r as f64 + qn.l as f64 + 1.5))
}

/// Squared eigenvalue of the funnel potential, perturbative in alpha_s:
/// E^2 = 8 kappa (2 n_r + l - alpha_s + 3/2).
pub fn funnel_energy_sq(qn: &QuantumNumbers, kappa: f64, alpha_s: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::InvalidPotential(format!(
            "string tension must be positive, got {kappa}"
        )));
    }
    let e_sq = 8.0 * kappa * (2.0 * qn.n_r as f64 + qn.l as f64 - alpha_s + 1.5);
    if e_sq <= 0.0 {
        return Err(Error::Unphysical(format!(
            "E^2 = {e_sq} <= 0: alpha_s = {alpha_s} too large for n_r = {}, l = {}",
            qn.n_r, qn.l
        )));
    }
    Ok(e_sq)
}

/// Constituent mass shift M^2 = E^2 - C^2 (C^2 = 8 kappa alpha_s under the
/// adopted convention, which makes the funnel spectrum the shifted string
/// spectrum exactly).
pub fn mass_shift(e_sq: f64, c_sq: f64) -> Result<f64> {
    let m_sq = e_sq - c_sq;
    if m_sq < 0.0 {
        return Err(Error::Unphysical(format!(
            "squared mass M^2 = {e_sq} - {c_sq} is negative"
        )));
    }
    Ok(m_sq)
}

/// Nonrelativistic Coulomb binding E' = -m alpha^2 / (2 n^2) (negative).
pub fn schrodinger_coulomb_energy(qn: &QuantumNumbers, m: f64, alpha: f64) -> f64 {
    let n = qn.n() as f64;
    -m * alpha * alpha / (2.0 * n * n)
}

/// The nine-row hydrogen comparison table at the given calibration: for each
/// `HYDROGEN_ROWS` entry, the nonrelativistic, vector (Klein-Gordon), and
/// scalar bindings, in the units of `m_calibrated`.
pub fn table1(m_calibrated: f64, alpha: f64) -> Result<Vec<SpectrumRow>> {
    HYDROGEN_ROWS
        .iter()
        .map(|&(l, n_r)| {
            let qn = QuantumNumbers::radial(n_r, l);
            Ok(SpectrumRow {
                qn,
                e_nr: schrodinger_coulomb_energy(&qn, m_calibrated, alpha),
                e_kg: coulomb_vector_binding(&qn, m_calibrated, alpha)?,
                e_sc: coulomb_scalar_binding(&qn, m_calibrated, alpha),
            })
        })
        .collect()
}

/// Rest mass implied by the calibration pair (ground-state nonrelativistic
/// binding in eV, inverse coupling): m = 2 E_1 / alpha^2.
pub fn calibrated_mass(calibrate_nr_ev: f64, inv_alpha: f64) -> f64 {
    2.0 * calibrate_nr_ev * inv_alpha * inv_alpha
}
