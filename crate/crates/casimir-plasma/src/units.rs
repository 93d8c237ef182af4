//! Physical constants (CODATA 2018) and the dimensionless variables used by
//! every core computation.
//!
//! All formulas in this crate are written in the Gaussian convention; the
//! squared unit charge is always derived as e² = α·ħc so that no raw charge
//! constant (and no 4πε₀ bookkeeping) appears anywhere.
//!
//! | constant | value | unit |
//! |----------|-------|------|
//! | h        | 6.626 070 15e-34 (exact) | J·s |
//! | c        | 299 792 458 (exact)      | m/s |
//! | k_B      | 1.380 649e-23 (exact)    | J/K |
//! | e        | 1.602 176 634e-19 (exact)| C   |
//! | m_e      | 9.109 383 7015e-31       | kg  |
//! | α        | 7.297 352 5693e-3        | —   |
//! | ζ(3)     | 1.202 056 903 159 594 3  | —   |

use crate::error::{check_nonnegative, check_positive, Result};
use std::f64::consts::PI;

/// Planck constant, J·s (exact).
pub const PLANCK_H: f64 = 6.626_070_15e-34;
/// Reduced Planck constant ħ = h/2π, J·s.
pub const HBAR: f64 = PLANCK_H / (2.0 * PI);
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Elementary charge, C (exact); used only for the joule/MeV conversion.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Electron rest mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Fine-structure constant.
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// One MeV in joules.
pub const JOULE_PER_MEV: f64 = ELEMENTARY_CHARGE * 1e6;
/// One femtometre in metres.
pub const METER_PER_FM: f64 = 1e-15;
/// ħc in J·m.
pub const HBAR_C: f64 = HBAR * SPEED_OF_LIGHT;
/// ħc in MeV·fm (≈ 197.3269804).
pub const HBAR_C_MEV_FM: f64 = HBAR_C / JOULE_PER_MEV / METER_PER_FM;
/// Electron rest energy m_e c² in MeV (≈ 0.51099895).
pub const ELECTRON_MASS_MEV: f64 = ELECTRON_MASS * SPEED_OF_LIGHT * SPEED_OF_LIGHT / JOULE_PER_MEV;
/// Boltzmann constant in MeV/K.
pub const BOLTZMANN_MEV_PER_K: f64 = BOLTZMANN / JOULE_PER_MEV;

/// The constants bundle consumed by code that wants them as one value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// ħ, J·s.
    pub hbar: f64,
    /// c, m/s.
    pub c: f64,
    /// k_B, J/K.
    pub k_b: f64,
    /// m_e, kg.
    pub m_e: f64,
    /// m_e c², MeV.
    pub m_e_mev: f64,
    /// Fine-structure constant α.
    pub alpha: f64,
    /// ħc, J·m.
    pub hbar_c: f64,
    /// ħc, MeV·fm.
    pub hbar_c_mev_fm: f64,
    /// ζ(3).
    pub zeta3: f64,
}

impl PhysicalConstants {
    /// CODATA-2018 values; the only constructor.
    pub const fn codata2018() -> Self {
        PhysicalConstants {
            hbar: HBAR,
            c: SPEED_OF_LIGHT,
            k_b: BOLTZMANN,
            m_e: ELECTRON_MASS,
            m_e_mev: ELECTRON_MASS_MEV,
            alpha: FINE_STRUCTURE,
            hbar_c: HBAR_C,
            hbar_c_mev_fm: HBAR_C_MEV_FM,
            zeta3: ZETA_3,
        }
    }

    /// Squared unit charge in the Gaussian convention, e² = α·ħc (J·m).
    pub fn e_squared(&self) -> f64 {
        self.alpha * self.hbar_c
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// The dimensionless state every core formula consumes.
///
/// `x = 2kTl/(ħc)` measures temperature times separation, `kl = κl` the
/// screening strength (κ = ω_p/c), and `rho_bar` the reduced plasma density,
/// tied to the other two by κ²l² = π²·ρ̄·x².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedPoint {
    /// x = 2kTl/(ħc); zero only on the explicit zero-temperature path.
    pub x: f64,
    /// κl = (ω_p/c)·l ≥ 0.
    pub kl: f64,
    /// ρ̄ = (κl/(πx))²; +∞ sentinel when T = 0 with screening present.
    pub rho_bar: f64,
}

impl ReducedPoint {
    /// Builds a point from the two independent coordinates.
    pub fn new(x: f64, kl: f64) -> Result<Self> {
        check_positive("x", x)?;
        check_nonnegative("kl", kl)?;
        Ok(ReducedPoint {
            x,
            kl,
            rho_bar: (kl / (PI * x)).powi(2),
        })
    }

    /// Recovers (T, ω_p) for a chosen plate separation; inverse of
    /// [`reduce_parameters`].
    pub fn to_dimensional(&self, l: f64) -> Result<(f64, f64)> {
        check_positive("l", l)?;
        let temperature = self.x * HBAR_C / (2.0 * BOLTZMANN * l);
        let omega_p = self.kl * SPEED_OF_LIGHT / l;
        Ok((temperature, omega_p))
    }
}

/// Converts dimensional inputs into the reduced state.
///
/// At T = 0 the point carries x = 0 and the ρ̄ = +∞ sentinel (0 when there is
/// no plasma); the finite-temperature engines refuse it, the zero-temperature
/// path does not need it.
pub fn reduce_parameters(l: f64, temperature: f64, omega_p: f64) -> Result<ReducedPoint> {
    check_positive("l", l)?;
    check_nonnegative("T", temperature)?;
    check_nonnegative("omega_p", omega_p)?;
    let x = 2.0 * BOLTZMANN * temperature * l / HBAR_C;
    let kl = omega_p / SPEED_OF_LIGHT * l;
    let rho_bar = if temperature > 0.0 {
        (kl / (PI * x)).powi(2)
    } else if kl > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(ReducedPoint { x, kl, rho_bar })
}

/// Plasma frequency of a charge-neutral electron gas, ω_p = √(4πρe²/m).
///
/// `rho` is the total number density in m⁻³; the Gaussian e² = α·ħc keeps the
/// expression free of vacuum-permittivity factors.
pub fn density_to_plasma_frequency(rho: f64) -> Result<f64> {
    check_nonnegative("rho", rho)?;
    let c = PhysicalConstants::codata2018();
    Ok((4.0 * PI * rho * c.e_squared() / ELECTRON_MASS).sqrt())
}

/// Inverse of [`density_to_plasma_frequency`].
pub fn plasma_frequency_to_density(omega_p: f64) -> Result<f64> {
    check_nonnegative("omega_p", omega_p)?;
    let c = PhysicalConstants::codata2018();
    Ok(omega_p * omega_p * ELECTRON_MASS / (4.0 * PI * c.e_squared()))
}

/// Screening wavenumber κ = ω_p/c in 1/m.
pub fn screening_wavenumber(omega_p: f64) -> Result<f64> {
    check_nonnegative("omega_p", omega_p)?;
    Ok(omega_p / SPEED_OF_LIGHT)
}
