//! Closed-form large-separation asymptotes, the low-temperature series, and
//! the independent theta-integral oracle used to cross-validate the exact
//! Matsubara engines.
//!
//! The oracle rests on the identity F = −kT/(4πl²)·η with η = πx³(I₁ + I₂),
//! where both integrals run over products of the theta sum ω̄. I₁ carries the
//! zero-frequency physics (it collapses analytically onto the n = 0 term) and
//! I₂ the finite-frequency remainder. Because the route goes through Poisson
//! resummation rather than a Matsubara sum, agreement with the engines is a
//! genuine two-sided check.

use crate::error::{check_nonnegative, check_positive, Error, Result};
use crate::lifshitz::{free_energy_n0, ideal_zero_t_energy};
use crate::quad::{integrate, QuadOptions};
use crate::specfun::{omega_bar, ThetaEvalPolicy};
use crate::units::{ReducedPoint, BOLTZMANN, HBAR_C, ZETA_3};
use std::f64::consts::PI;

/// Screening regime flag carried by [`AsymptoteBreakdown`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlRegime {
    /// κl < 3: the closed n = 0 asymptote is still drifting.
    WeakScreening,
    /// κl ≥ 3: the n = 0 asymptote is good to about a percent.
    Asymptotic,
}

/// Where the asymptotic forms can be trusted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityFlags {
    /// The finite-frequency saddle-point form assumes x > 1.
    pub x_gt_1: bool,
    pub kl_regime: KlRegime,
}

/// The three-term low-temperature expansion, each entry in J/m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowTTerms {
    /// −π²ħc/(720 l³), the zero-point term.
    pub zero_point: f64,
    /// −ζ(3)(kT)³/(2π(ħc)²), the pair-sea (T³) term.
    pub pair_sea: f64,
    /// +π²l(kT)⁴/(45(ħc)³), the blackbody term.
    pub blackbody: f64,
}

impl LowTTerms {
    pub fn sum(&self) -> f64 {
        self.zero_point + self.pair_sea + self.blackbody
    }
}

/// Asymptotic free energy with its bookkeeping; `asym_total = asym_n0 +
/// asym_npos` as computed, where the n = 0 entry keeps the exact integral and
/// only the n > 0 entry is the closed saddle-point form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoteBreakdown {
    pub asym_n0: f64,
    pub asym_npos: f64,
    pub asym_total: f64,
    pub low_t_terms: LowTTerms,
    pub validity: ValidityFlags,
}

/// Large-separation closed form of the zero-frequency term,
/// −(kTκ²/2π)·e^{−2lκ}·[1/(2lκ) + 1/(4l²κ²)].
///
/// Undefined at κ = 0; the thermal closed form −ζ(3)kT/(8πl²) replaces it
/// there (see [`thermal_n0_closed_form`]).
pub fn asym_n0(l: f64, temperature: f64, kappa: f64) -> Result<f64> {
    check_positive("l", l)?;
    check_positive("T", temperature)?;
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::domain(
            "kappa",
            "asymptote undefined at kappa = 0; use the closed form -zeta(3)kT/(8 pi l^2)",
        ));
    }
    let kt = BOLTZMANN * temperature;
    let w = 2.0 * l * kappa;
    Ok(-(kt * kappa * kappa / (2.0 * PI)) * (-w).exp() * (1.0 / w + 1.0 / (w * w)))
}

/// The κ = 0 thermal limit of the zero-frequency term, −ζ(3)kT/(8πl²).
pub fn thermal_n0_closed_form(l: f64, temperature: f64) -> Result<f64> {
    check_positive("l", l)?;
    check_positive("T", temperature)?;
    Ok(-ZETA_3 * BOLTZMANN * temperature / (8.0 * PI * l * l))
}

/// Saddle-point asymptote of the finite-frequency sum,
/// −((kT)²/(lħc))·e^{−πρ̄x}·e^{−2πx} with πρ̄x = (κl)²/(πx).
///
/// The sign is fixed attractive by the exact engine (each Matsubara term is a
/// log of a number below one), and the screening exponent carries the factor
/// π from the saddle-point evaluation.
pub fn asym_npos(l: f64, temperature: f64, kappa: f64) -> Result<f64> {
    check_positive("l", l)?;
    check_nonnegative("kappa", kappa)?;
    let kt = BOLTZMANN * temperature;
    let x = 2.0 * kt * l / HBAR_C;
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain("x", "requires T > 0 (x > 0)"));
    }
    let kl = kappa * l;
    let screening = kl * kl / (PI * x);
    Ok(-(kt * kt / (l * HBAR_C)) * (-screening).exp() * (-2.0 * PI * x).exp())
}

/// Combined high-x free energy: exact n = 0 integral plus the saddle-point
/// n > 0 asymptote, with validity flags.
pub fn asym_total(l: f64, temperature: f64, kappa: f64) -> Result<AsymptoteBreakdown> {
    check_positive("l", l)?;
    check_positive("T", temperature)?;
    check_nonnegative("kappa", kappa)?;
    let n0 = free_energy_n0(l, temperature, kappa)?;
    let npos = asym_npos(l, temperature, kappa)?;
    let x = 2.0 * BOLTZMANN * temperature * l / HBAR_C;
    let kl = kappa * l;
    Ok(AsymptoteBreakdown {
        asym_n0: n0,
        asym_npos: npos,
        asym_total: n0 + npos,
        low_t_terms: low_t_series(l, temperature)?,
        validity: ValidityFlags {
            x_gt_1: x > 1.0,
            kl_regime: if kl >= 3.0 {
                KlRegime::Asymptotic
            } else {
                KlRegime::WeakScreening
            },
        },
    })
}

/// Low-temperature expansion of the unscreened free energy:
/// (−π²ħc/720l³, −ζ(3)(kT)³/(2π(ħc)²), +π²l(kT)⁴/(45(ħc)³)).
pub fn low_t_series(l: f64, temperature: f64) -> Result<LowTTerms> {
    check_positive("l", l)?;
    check_nonnegative("T", temperature)?;
    let kt = BOLTZMANN * temperature;
    Ok(LowTTerms {
        zero_point: ideal_zero_t_energy(l),
        pair_sea: -ZETA_3 * kt.powi(3) / (2.0 * PI * HBAR_C * HBAR_C),
        blackbody: PI * PI * l * kt.powi(4) / (45.0 * HBAR_C.powi(3)),
    })
}

/// The pair-sea term rewritten through the species densities,
/// −π(ρ₋ + ρ₊)ħc/6; identical to the T³ entry of [`low_t_series`] when the
/// densities come from the equilibrium pair gas at the same temperature.
pub fn pair_sea_energy(rho_minus: f64, rho_plus: f64) -> Result<f64> {
    check_nonnegative("rho_minus", rho_minus)?;
    check_nonnegative("rho_plus", rho_plus)?;
    Ok(-PI * (rho_minus + rho_plus) * HBAR_C / 6.0)
}

fn theta(y: f64) -> f64 {
    // arguments are strictly positive inside the integration windows
    omega_bar(y, &ThetaEvalPolicy::default()).unwrap_or(f64::NAN)
}

/// η₁ = πx³·I₁ = π·∫_0^∞ √y·e^{−(κl)²/(πy)}·ω̄(y) dy.
///
/// Analytically equal to −g(2κl)/2 and therefore independent of x; evaluated
/// by quadrature on y = s² so the integrand is smooth at the origin.
fn eta1_quadrature(kl: f64, rel_tol: f64) -> Result<f64> {
    let shift = kl * kl / PI;
    let y_max = (6.0 * kl / PI + 16.0).max(16.0);
    let q = integrate(
        |s| {
            if s <= 0.0 {
                return 0.0;
            }
            let y = s * s;
            2.0 * PI * s * s * (-shift / y).exp() * theta(y)
        },
        0.0,
        y_max.sqrt(),
        &QuadOptions::with_rel_tol(rel_tol),
    )?;
    Ok(q.value)
}

/// I₂-type integral with a caller-chosen stand-in for each ω̄ factor, so the
/// sandwich bounds of the theta sum can be pushed through the quadrature.
fn eta2_with<F, G>(x: f64, rho_bar: f64, theta_a: F, theta_b: G, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let x2 = x * x;
    // mass sits near y* = x/√(1+ρ̄); cut where either exponential is dead
    let y_lo = PI * x2 / (2.0 * PI * x + 60.0);
    let y_hi = (x2.max(1.0)) + 60.0 / (PI * (1.0 + rho_bar));
    let q = integrate(
        |t| {
            let y = t.exp();
            let f = (-PI * rho_bar * y).exp() * y.powf(-2.5) * theta_a(x2 / y) * 2.0 * theta_b(y);
            y * f
        },
        y_lo.ln(),
        y_hi.ln(),
        &QuadOptions::with_rel_tol(rel_tol),
    )?;
    Ok(PI * x.powi(3) * q.value)
}

/// The two pieces η₁ (zero-frequency) and η₂ (finite-frequency) of the
/// theta-integral representation; requires x > 1.
pub fn eta_components(point: &ReducedPoint) -> Result<(f64, f64)> {
    if point.x.is_nan() || point.x <= 1.0 {
        return Err(Error::domain(
            "x",
            format!("theta-integral oracle assumes x > 1, got {}", point.x),
        ));
    }
    check_nonnegative("kl", point.kl)?;
    let eta1 = eta1_quadrature(point.kl, 1e-11)?;
    let eta2 = eta2_with(point.x, point.rho_bar, theta, theta, 1e-10)?;
    Ok((eta1, eta2))
}

/// Dimensionless free energy η = πx³(I₁ + I₂); the exact engines must satisfy
/// η = −4πl²·F/(kT) to well under a percent.
pub fn eta_oracle(point: &ReducedPoint) -> Result<f64> {
    let (eta1, eta2) = eta_components(point)?;
    Ok(eta1 + eta2)
}

/// Evaluates the zero-frequency identity: the η₁ quadrature against
/// −4πl²·F_{n=0}/(kT) from the engine, returning the relative deviation.
pub fn eta1_identity_check(l: f64, temperature: f64, kappa: f64) -> Result<f64> {
    check_positive("l", l)?;
    check_positive("T", temperature)?;
    check_nonnegative("kappa", kappa)?;
    let x = 2.0 * BOLTZMANN * temperature * l / HBAR_C;
    if x.is_nan() || x <= 1.0 {
        return Err(Error::domain(
            "x",
            format!("identity check assumes x > 1, got {x}"),
        ));
    }
    let eta1 = eta1_quadrature(kappa * l, 1e-11)?;
    let kt = BOLTZMANN * temperature;
    let reference = -4.0 * PI * l * l * free_energy_n0(l, temperature, kappa)? / kt;
    Ok((eta1 - reference).abs() / reference.abs())
}
