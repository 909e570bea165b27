//! Orbital trajectories of the confining spectrum: generating (l, E^2)
//! lines from string parameters and recovering those parameters from
//! measured meson masses by a weighted linear fit.
//!
//! The confining squared-mass law is linear in the combination
//! x = 2 n_r + l + 3/2, with slope 8 kappa and intercept -8 kappa alpha_s,
//! so a straight-line fit of M^2 against x returns the string tension, the
//! short-range coupling, and the additive constant C^2 = 8 kappa alpha_s
//! in one shot.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// One measured state on a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct MesonRecord {
    pub name: String,
    /// Mass in GeV.
    pub mass: f64,
    pub l: u32,
    pub n_r: u32,
    /// Fit weight; 1 unless the data source says otherwise.
    pub weight: f64,
}

impl MesonRecord {
    /// Unit-weight record with validated mass.
    pub fn new(name: impl Into<String>, mass: f64, l: u32, n_r: u32) -> Result<Self> {
        Self::weighted(name, mass, l, n_r, 1.0)
    }

    pub fn weighted(
        name: impl Into<String>,
        mass: f64,
        l: u32,
        n_r: u32,
        weight: f64,
    ) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidRecord("record name must not be empty".into()));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidRecord(format!(
                "mass of '{name}' must be positive and finite, got {mass}"
            )));
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::InvalidRecord(format!(
                "weight of '{name}' must be positive and finite, got {weight}"
            )));
        }
        Ok(MesonRecord {
            name,
            mass,
            l,
            n_r,
            weight,
        })
    }

    /// Abscissa of the linear squared-mass law.
    fn x(&self) -> f64 {
        2.0 * self.n_r as f64 + self.l as f64 + 1.5
    }
}

/// Recovered trajectory parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ReggeFit {
    /// String tension, GeV^2.
    pub kappa: f64,
    /// Short-range coupling recovered from the intercept.
    pub alpha_s: f64,
    /// Additive squared-mass constant 8 kappa alpha_s, GeV^2.
    pub c_sq: f64,
    /// Weighted root-mean-square of the squared-mass residuals, GeV^2.
    pub rms_residual: f64,
    /// Per-record M^2 residuals in input order, GeV^2.
    pub per_point_residuals: Vec<f64>,
    /// Populated when the fit succeeds but looks physically odd (for now:
    /// a negative recovered alpha_s).
    pub warning: Option<String>,
}

/// Points (l, E^2) of one trajectory at fixed n_r:
/// E^2 = 8 kappa (2 n_r + l - alpha_s + 3/2) for l = 0 ..= l_max.
pub fn regge_trajectory(n_r: u32, l_max: u32, kappa: f64, alpha_s: f64) -> Result<Vec<(u32, f64)>> {
    if l_max < 1 {
        return Err(Error::Domain(format!(
            "a trajectory needs l_max >= 1 to have a slope, got {l_max}"
        )));
    }
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidPotential(format!(
            "string tension must be positive and finite, got {kappa}"
        )));
    }
    if !alpha_s.is_finite() {
        return Err(Error::Domain(format!(
            "alpha_s must be finite, got {alpha_s}"
        )));
    }
    Ok((0..=l_max)
        .map(|l| {
            let x = 2.0 * n_r as f64 + l as f64 + 1.5;
            (l, 8.0 * kappa * (x - alpha_s))
        })
        .collect())
}

/// Weighted least-squares fit of M^2 against x = 2 n_r + l + 3/2.
///
/// Needs at least three records spanning at least two distinct x values;
/// a non-positive fitted slope has no string-model reading and is refused.
/// A negative recovered alpha_s is reported with a warning, not an error.
pub fn fit_regge(records: &[MesonRecord]) -> Result<ReggeFit> {
    if records.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 records to fit a two-parameter line, got {}",
            records.len()
        )));
    }
    let w_sum: f64 = records.iter().map(|r| r.weight).sum();
    let mx = records.iter().map(|r| r.weight * r.x()).sum::<f64>() / w_sum;
    let my = records
        .iter()
        .map(|r| r.weight * r.mass * r.mass)
        .sum::<f64>()
        / w_sum;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for r in records {
        let dx = r.x() - mx;
        sxx += r.weight * dx * dx;
        sxy += r.weight * dx * (r.mass * r.mass - my);
    }
    if sxx <= 1e-12 * w_sum * (1.0 + mx * mx) {
        return Err(Error::DegenerateFit(
            "records must span at least two distinct values of 2 n_r + l".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    if !(slope > 0.0) {
        return Err(Error::Unphysical(format!(
            "fitted squared-mass slope {slope:.6} is not positive; no string tension reproduces these records"
        )));
    }
    let kappa = slope / 8.0;
    let alpha_s = -intercept / slope;
    let c_sq = -intercept;
    let per_point_residuals: Vec<f64> = records
        .iter()
        .map(|r| r.mass * r.mass - (intercept + slope * r.x()))
        .collect();
    let rms_residual = (records
        .iter()
        .zip(&per_point_residuals)
        .map(|(r, d)| r.weight * d * d)
        .sum::<f64>()
        / w_sum)
        .sqrt();
    let warning = (alpha_s < 0.0).then(|| {
        format!(
            "recovered alpha_s = {alpha_s:.6} is negative: the intercept sits above the origin, \
             outside the usual short-range-attraction reading"
        )
    });
    Ok(ReggeFit {
        kappa,
        alpha_s,
        c_sq,
        rms_residual,
        per_point_residuals,
        warning,
    })
}

/// Read meson records from CSV with header `name,mass_gev,l,n_r` and an
/// optional trailing `weight` column. Lines starting with `#` and blank
/// lines are ignored.
pub fn read_meson_csv(reader: impl Read) -> Result<Vec<MesonRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::InvalidRecord(format!("unreadable CSV header: {e}")))?
        .clone();
    let names: Vec<&str> = headers.iter().collect();
    let with_weight = match names.as_slice() {
        ["name", "mass_gev", "l", "n_r"] => false,
        ["name", "mass_gev", "l", "n_r", "weight"] => true,
        other => {
            return Err(Error::InvalidRecord(format!(
                "CSV header must be name,mass_gev,l,n_r[,weight], got {}",
                other.join(",")
            )))
        }
    };
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| Error::InvalidRecord(format!("row {}: {e}", i + 2)))?;
        let expect = if with_weight { 5 } else { 4 };
        if row.len() != expect {
            return Err(Error::InvalidRecord(format!(
                "row {}: expected {expect} fields, got {}",
                i + 2,
                row.len()
            )));
        }
        let field = |j: usize| row.get(j).unwrap_or("");
        let mass: f64 = field(1).parse().map_err(|_| {
            Error::InvalidRecord(format!("row {}: bad mass_gev '{}'", i + 2, field(1)))
        })?;
        let l: u32 = field(2)
            .parse()
            .map_err(|_| Error::InvalidRecord(format!("row {}: bad l '{}'", i + 2, field(2))))?;
        let n_r: u32 = field(3)
            .parse()
            .map_err(|_| Error::InvalidRecord(format!("row {}: bad n_r '{}'", i + 2, field(3))))?;
        let weight: f64 = if with_weight {
            field(4).parse().map_err(|_| {
                Error::InvalidRecord(format!("row {}: bad weight '{}'", i + 2, field(4)))
            })?
        } else {
            1.0
        };
        out.push(MesonRecord::weighted(field(0), mass, l, n_r, weight)?);
    }
    Ok(out)
}

/// `read_meson_csv` on a filesystem path.
pub fn read_meson_csv_path(path: impl AsRef<Path>) -> Result<Vec<MesonRecord>> {
    let file = std::fs::File::open(path.as_ref()).map_err(|e| {
        Error::InvalidRecord(format!("cannot open {}: {e}", path.as_ref().display()))
    })?;
    read_meson_csv(file)
}
