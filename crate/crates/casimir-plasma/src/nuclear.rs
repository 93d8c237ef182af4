//! Femtometre-scale estimates mapping the screened free-energy asymptotes
//! onto a Yukawa potential: meson mass from plasma density, screening length,
//! effective temperatures, and the MeV energy partition between the zero- and
//! finite-frequency terms.
//!
//! The exponent matching is 2κ·l_π = 1, so that e^{−2lκ} from the
//! zero-frequency asymptote coincides with the Yukawa falloff e^{−l/l_π}.
//! Densities are reported in fm⁻³ and energies in MeV throughout.

use crate::asymptotics::{asym_n0, asym_npos};
use crate::error::{check_nonnegative, check_positive, Result};
use crate::lifshitz::{free_energy_ideal_plasma, free_energy_n0, EngineConfig};
use crate::units::{
    density_to_plasma_frequency, plasma_frequency_to_density, BOLTZMANN_MEV_PER_K, HBAR,
    HBAR_C_MEV_FM, JOULE_PER_MEV, METER_PER_FM, SPEED_OF_LIGHT, ZETA_3,
};
use std::f64::consts::PI;

/// J/m² expressed in MeV/fm².
const MEV_PER_FM2: f64 = JOULE_PER_MEV / (METER_PER_FM * METER_PER_FM);

/// Everything the femtometre-scale analysis produces for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuclearReport {
    /// Meson rest energy, MeV.
    pub meson_mass: f64,
    /// Yukawa screening length l_π = ħc/(m_π c²), fm.
    pub screening_length: f64,
    /// Plasma screening wavenumber κ = 1/(2·l_π), fm⁻¹.
    pub kappa: f64,
    /// Equilibrium pair density per species at the report temperature, fm⁻³.
    pub pair_density_each: f64,
    /// Total density 2ρ± implied by the meson mass, fm⁻³.
    pub total_density: f64,
    /// Temperature the energies are evaluated at, K.
    pub effective_temperature: f64,
    /// The same temperature as an energy, MeV.
    pub kt: f64,
    /// Zero-frequency asymptote energy over the plate area, MeV (binding > 0).
    pub e_n0: f64,
    /// Finite-frequency saddle-point asymptote over the area, MeV.
    pub e_npos_asym: f64,
    /// Finite-frequency part of the exact Matsubara engine, MeV; quoted as a
    /// diagnostic because the asymptote's x > 1 assumption does not hold at
    /// femtometre separations.
    pub e_npos_exact: f64,
    /// E_n0 + E_npos_asym, the asymptotic binding-energy estimate, MeV.
    pub e_total: f64,
    /// Plate area, fm².
    pub plate_area: f64,
    /// Plate separation, fm.
    pub separation: f64,
}

/// Meson rest energy from the total pair density (fm⁻³): matching the Yukawa
/// exponent gives m_π c² = 2ħω_p with ω_p the plasma frequency of the pair gas.
pub fn meson_mass_from_density(rho_total_fm3: f64) -> Result<f64> {
    check_nonnegative("rho_total", rho_total_fm3)?;
    let rho_m3 = rho_total_fm3 / METER_PER_FM.powi(3);
    let omega_p = density_to_plasma_frequency(rho_m3)?;
    Ok(2.0 * HBAR * omega_p / JOULE_PER_MEV)
}

/// Inverse of [`meson_mass_from_density`]: the total density (fm⁻³) whose
/// pair plasma matches a given meson rest energy (MeV).
pub fn density_from_meson_mass(meson_mass_mev: f64) -> Result<f64> {
    check_nonnegative("meson_mass", meson_mass_mev)?;
    let omega_p = meson_mass_mev * JOULE_PER_MEV / (2.0 * HBAR);
    Ok(plasma_frequency_to_density(omega_p)? * METER_PER_FM.powi(3))
}

/// Yukawa screening length l_π = ħc/(m_π c²) in fm.
pub fn screening_length(meson_mass_mev: f64) -> Result<f64> {
    check_positive("meson_mass", meson_mass_mev)?;
    Ok(HBAR_C_MEV_FM / meson_mass_mev)
}

/// Equilibrium electron (or positron) density of the hot pair gas,
/// ρ± = 3ζ(3)(kT)³/(2π²(ħc)³), in fm⁻³.
pub fn pair_density(temperature: f64) -> Result<f64> {
    check_nonnegative("T", temperature)?;
    let kt = temperature * BOLTZMANN_MEV_PER_K;
    Ok(3.0 * ZETA_3 / (2.0 * PI * PI) * (kt / HBAR_C_MEV_FM).powi(3))
}

/// Temperature (K) whose equilibrium pair plasma reproduces a given meson
/// mass: inverts the density chain with ρ± = ρ_total/2 per species.
pub fn temperature_from_meson_mass(meson_mass_mev: f64) -> Result<f64> {
    check_positive("meson_mass", meson_mass_mev)?;
    let rho_each = 0.5 * density_from_meson_mass(meson_mass_mev)?;
    let kt = HBAR_C_MEV_FM * (rho_each * 2.0 * PI * PI / (3.0 * ZETA_3)).cbrt();
    Ok(kt / BOLTZMANN_MEV_PER_K)
}

/// Temperature (K) from converting the zero-point energy scale into heat:
/// T = ħc/(2·l·k_B) at separation l (fm).
pub fn effective_temperature(l_fm: f64) -> Result<f64> {
    check_positive("l", l_fm)?;
    Ok(HBAR_C_MEV_FM / (2.0 * l_fm) / BOLTZMANN_MEV_PER_K)
}

/// MeV energy partition for perfectly reflecting plates of `area_fm2` a
/// distance `l_fm` apart, screened by the pair plasma of the given meson.
///
/// Sets κ = m_π c²/(2ħc), evaluates the zero- and finite-frequency asymptotes
/// and the exact engine, and reports binding energies (positive for
/// attraction). `e_total` sums the two asymptotes; the exact finite-frequency
/// value rides along as a diagnostic.
pub fn energy_partition(
    l_fm: f64,
    temperature: f64,
    meson_mass_mev: f64,
    area_fm2: f64,
) -> Result<NuclearReport> {
    check_positive("l", l_fm)?;
    check_positive("T", temperature)?;
    check_positive("meson_mass", meson_mass_mev)?;
    check_positive("area", area_fm2)?;

    let l_pi = screening_length(meson_mass_mev)?;
    let kappa_fm = 0.5 / l_pi;
    let kappa_m = kappa_fm / METER_PER_FM;
    let l_m = l_fm * METER_PER_FM;
    let omega_p = kappa_m * SPEED_OF_LIGHT;

    let n0_asym = asym_n0(l_m, temperature, kappa_m)? / MEV_PER_FM2;
    let npos_asym = asym_npos(l_m, temperature, kappa_m)? / MEV_PER_FM2;
    let engine = free_energy_ideal_plasma(l_m, temperature, omega_p, &EngineConfig::default())?;
    let n0_exact = free_energy_n0(l_m, temperature, kappa_m)?;
    let npos_exact = (engine.total - n0_exact) / MEV_PER_FM2;

    let e_n0 = -n0_asym * area_fm2;
    let e_npos_asym = -npos_asym * area_fm2;
    Ok(NuclearReport {
        meson_mass: meson_mass_mev,
        screening_length: l_pi,
        kappa: kappa_fm,
        pair_density_each: pair_density(temperature)?,
        total_density: density_from_meson_mass(meson_mass_mev)?,
        effective_temperature: temperature,
        kt: temperature * BOLTZMANN_MEV_PER_K,
        e_n0,
        e_npos_asym,
        e_npos_exact: -npos_exact * area_fm2,
        e_total: e_n0 + e_npos_asym,
        plate_area: area_fm2,
        separation: l_fm,
    })
}

impl std::fmt::Display for NuclearReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "meson mass            {:>12.4} MeV", self.meson_mass)?;
        writeln!(
            f,
            "screening length      {:>12.4} fm",
            self.screening_length
        )?;
        writeln!(f, "kappa                 {:>12.6} 1/fm", self.kappa)?;
        writeln!(f, "separation            {:>12.4} fm", self.separation)?;
        writeln!(f, "plate area            {:>12.4} fm^2", self.plate_area)?;
        writeln!(
            f,
            "temperature           {:>12.4e} K",
            self.effective_temperature
        )?;
        writeln!(f, "kT                    {:>12.4} MeV", self.kt)?;
        writeln!(
            f,
            "pair density (each)   {:>12.4e} fm^-3",
            self.pair_density_each
        )?;
        writeln!(
            f,
            "total density (meson) {:>12.4e} fm^-3",
            self.total_density
        )?;
        writeln!(f, "E_n0 (asymptote)      {:>12.4} MeV", self.e_n0)?;
        writeln!(f, "E_n>0 (asymptote)     {:>12.4} MeV", self.e_npos_asym)?;
        writeln!(f, "E_n>0 (exact engine)  {:>12.4} MeV", self.e_npos_exact)?;
        write!(f, "E_total (asymptotic)  {:>12.4} MeV", self.e_total)
    }
}
