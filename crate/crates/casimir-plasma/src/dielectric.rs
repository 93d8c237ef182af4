//! Dielectric response on the imaginary frequency axis for the gap medium and
//! the plate material, plus ingestion of tabulated ε(iξ) data.
//!
//! The zero-frequency limits of the metallic models are singular and carry
//! the physics that separates the plasma and Drude descriptions: ε ~ 1/ξ²
//! keeps a finite screening wavenumber in the transverse-electric reflection,
//! ε ~ 1/ξ kills it. Evaluation therefore returns an [`Epsilon`] that keeps
//! those limits symbolic instead of manufacturing an infinity.

use crate::error::{check_nonnegative, Error, Result};
use crate::units::SPEED_OF_LIGHT;
use std::io::BufRead;

/// ε(iξ) evaluated at one frequency, with the ξ = 0 divergences kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Epsilon {
    /// An ordinary finite value, ≥ 1 for the models here.
    Finite(f64),
    /// ε → (κc)²/ξ² as ξ → 0 (plasma-like); κ is the screening wavenumber.
    DivergesInvXiSquared { kappa: f64 },
    /// ε → const/ξ as ξ → 0 (Drude-like); ε·ξ² still vanishes.
    DivergesInvXi,
    /// A perfectly conducting mirror at every frequency.
    PerfectConductor,
}

impl Epsilon {
    /// The finite value, or a domain error for the symbolic limits.
    pub fn finite(self) -> Result<f64> {
        match self {
            Epsilon::Finite(v) => Ok(v),
            Epsilon::DivergesInvXiSquared { .. } => Err(Error::domain(
                "epsilon",
                "diverges as 1/xi^2 at xi = 0; take the analytic limit",
            )),
            Epsilon::DivergesInvXi => Err(Error::domain(
                "epsilon",
                "diverges as 1/xi at xi = 0; take the analytic limit",
            )),
            Epsilon::PerfectConductor => Err(Error::domain(
                "epsilon",
                "perfect conductor has no finite value",
            )),
        }
    }
}

/// Dielectric description of the material filling the gap (or of a plate).
#[derive(Debug, Clone, PartialEq)]
pub enum MediumModel {
    /// ε = 1 everywhere.
    Vacuum,
    /// ε(iξ) = 1 + ω_p²/ξ², the dissipation-free plasma.
    Plasma { omega_p: f64 },
    /// ε(iξ) = 1 + ω_p²/(ξ(ξ + γ)) with relaxation rate γ > 0.
    Drude { omega_p: f64, gamma: f64 },
    /// Sampled ε(iξ), interpolated log-log and clamped outside the range.
    Tabulated { samples: Vec<(f64, f64)> },
}

/// Plate description: an idealized conductor or any [`MediumModel`].
#[derive(Debug, Clone, PartialEq)]
pub enum MirrorModel {
    /// r_TM = 1, r_TE = −1 at all (q, ξ).
    PerfectMetal,
    Material(MediumModel),
}

impl MediumModel {
    /// Validates model parameters; tabulated data is checked on construction
    /// by [`load_dielectric_table`], this re-checks invariants defensively.
    pub fn validate(&self) -> Result<()> {
        match self {
            MediumModel::Vacuum => Ok(()),
            MediumModel::Plasma { omega_p } => {
                check_nonnegative("omega_p", *omega_p)?;
                Ok(())
            }
            MediumModel::Drude { omega_p, gamma } => {
                check_nonnegative("omega_p", *omega_p)?;
                if !gamma.is_finite() || *gamma <= 0.0 {
                    return Err(Error::domain("gamma", format!("must be > 0, got {gamma}")));
                }
                Ok(())
            }
            MediumModel::Tabulated { samples } => validate_samples(samples),
        }
    }

    /// ε(iξ) for ξ ≥ 0; the metallic models return their symbolic ξ = 0 limit.
    pub fn epsilon(&self, xi: f64) -> Result<Epsilon> {
        check_nonnegative("xi", xi)?;
        match self {
            MediumModel::Vacuum => Ok(Epsilon::Finite(1.0)),
            MediumModel::Plasma { omega_p } => {
                check_nonnegative("omega_p", *omega_p)?;
                if *omega_p == 0.0 {
                    Ok(Epsilon::Finite(1.0))
                } else if xi == 0.0 {
                    Ok(Epsilon::DivergesInvXiSquared {
                        kappa: omega_p / SPEED_OF_LIGHT,
                    })
                } else {
                    Ok(Epsilon::Finite(1.0 + (omega_p / xi).powi(2)))
                }
            }
            MediumModel::Drude { omega_p, gamma } => {
                self.validate()?;
                if *omega_p == 0.0 {
                    Ok(Epsilon::Finite(1.0))
                } else if xi == 0.0 {
                    Ok(Epsilon::DivergesInvXi)
                } else {
                    Ok(Epsilon::Finite(
                        1.0 + omega_p * omega_p / (xi * (xi + gamma)),
                    ))
                }
            }
            MediumModel::Tabulated { samples } => Ok(Epsilon::Finite(interpolate(samples, xi))),
        }
    }

    /// ε·ξ²/c², the quantity entering γ = √(q² + εξ²/c²); finite for every
    /// model, including the plasma at ξ = 0 where it tends to κ².
    pub fn eps_xi_squared_over_c2(&self, xi: f64) -> Result<f64> {
        match self.epsilon(xi)? {
            Epsilon::Finite(e) => Ok(e * (xi / SPEED_OF_LIGHT).powi(2)),
            Epsilon::DivergesInvXiSquared { kappa } => Ok(kappa * kappa),
            Epsilon::DivergesInvXi => Ok(0.0),
            Epsilon::PerfectConductor => Err(Error::domain(
                "medium",
                "perfect conductor cannot fill the gap",
            )),
        }
    }
}

impl MirrorModel {
    pub fn epsilon(&self, xi: f64) -> Result<Epsilon> {
        match self {
            MirrorModel::PerfectMetal => Ok(Epsilon::PerfectConductor),
            MirrorModel::Material(m) => m.epsilon(xi),
        }
    }
}

fn validate_samples(samples: &[(f64, f64)]) -> Result<()> {
    if samples.len() < 2 {
        return Err(Error::domain(
            "samples",
            format!("need at least 2 samples, got {}", samples.len()),
        ));
    }
    let mut last = 0.0;
    for (i, &(xi, eps)) in samples.iter().enumerate() {
        if !xi.is_finite() || xi <= 0.0 {
            return Err(Error::domain(
                "samples",
                format!("sample {i}: xi must be > 0"),
            ));
        }
        if xi <= last {
            return Err(Error::domain(
                "samples",
                format!("sample {i}: xi must be strictly increasing"),
            ));
        }
        if !eps.is_finite() || eps < 1.0 {
            return Err(Error::domain(
                "samples",
                format!("sample {i}: eps must be >= 1"),
            ));
        }
        last = xi;
    }
    Ok(())
}

/// Log-log linear interpolation with endpoint clamping.
fn interpolate(samples: &[(f64, f64)], xi: f64) -> f64 {
    let first = samples[0];
    let last = samples[samples.len() - 1];
    if xi <= first.0 {
        return first.1;
    }
    if xi >= last.0 {
        return last.1;
    }
    let idx = samples.partition_point(|&(x, _)| x < xi);
    let (x0, e0) = samples[idx - 1];
    let (x1, e1) = samples[idx];
    let t = (xi.ln() - x0.ln()) / (x1.ln() - x0.ln());
    (e0.ln() + t * (e1.ln() - e0.ln())).exp()
}

/// Parses the dielectric table CSV: header `xi_rad_s,eps`, one `xi,eps` pair
/// per line, `#` comments ignored. Errors carry the 1-based line number.
pub fn load_dielectric_table<R: BufRead>(reader: R) -> Result<MediumModel> {
    let mut samples = Vec::new();
    let mut saw_header = false;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Table {
            line: lineno,
            reason: format!("read failure: {e}"),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if !saw_header {
            if trimmed != "xi_rad_s,eps" {
                return Err(Error::Table {
                    line: lineno,
                    reason: format!("expected header `xi_rad_s,eps`, got `{trimmed}`"),
                });
            }
            saw_header = true;
            continue;
        }
        let mut fields = trimmed.split(',');
        let xi: f64 = fields
            .next()
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|e| Error::Table {
                line: lineno,
                reason: format!("bad xi field: {e}"),
            })?;
        let eps: f64 = fields
            .next()
            .ok_or_else(|| Error::Table {
                line: lineno,
                reason: "missing eps field".into(),
            })?
            .trim()
            .parse()
            .map_err(|e| Error::Table {
                line: lineno,
                reason: format!("bad eps field: {e}"),
            })?;
        if fields.next().is_some() {
            return Err(Error::Table {
                line: lineno,
                reason: "expected exactly two fields".into(),
            });
        }
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::Table {
                line: lineno,
                reason: format!("xi must be a positive number, got {xi}"),
            });
        }
        if let Some(&(prev, _)) = samples.last() {
            if xi <= prev {
                return Err(Error::Table {
                    line: lineno,
                    reason: format!("xi = {xi:e} not increasing (previous {prev:e})"),
                });
            }
        }
        if !(eps.is_finite() && eps >= 1.0) {
            return Err(Error::Table {
                line: lineno,
                reason: format!("eps must be >= 1, got {eps}"),
            });
        }
        samples.push((xi, eps));
    }
    if !saw_header {
        return Err(Error::Table {
            line: 1,
            reason: "missing header `xi_rad_s,eps`".into(),
        });
    }
    if samples.len() < 2 {
        return Err(Error::Table {
            line: 1,
            reason: format!("need at least 2 samples, got {}", samples.len()),
        });
    }
    Ok(MediumModel::Tabulated { samples })
}
