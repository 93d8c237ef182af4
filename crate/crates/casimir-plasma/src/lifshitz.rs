//! Exact Casimir-Lifshitz free-energy engines.
//!
//! Two routes are provided and cross-checked against each other:
//!
//! * a fast series path for perfect mirrors across a dissipation-free plasma,
//!   where each Matsubara term reduces in closed form to the tail integral
//!   g(w) = ∫_w^∞ u·ln(1−e^{−u}) du, and
//! * a general quadrature path for arbitrary mirror and gap models built from
//!   reflection coefficients and the mode condition function.
//!
//! Matsubara truncation is certified: the dropped tail is bounded a priori by
//! the geometric decay e^{−2πnx} of the terms, never guessed from stalling.

use crate::dielectric::{Epsilon, MediumModel, MirrorModel};
use crate::error::{check_nonnegative, check_positive, Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::specfun::log_tail_integral;
use crate::units::{BOLTZMANN, HBAR, HBAR_C, SPEED_OF_LIGHT};
use std::f64::consts::PI;

/// Tolerances and budgets for the engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    /// Relative bound on the truncated Matsubara tail.
    pub rel_tolerance: f64,
    /// Hard cap on the number of Matsubara terms.
    pub max_matsubara: usize,
    /// Relative tolerance handed to each q-integration.
    pub quadrature_rel_tol: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            rel_tolerance: 1e-10,
            max_matsubara: 20_000_000,
            quadrature_rel_tol: 1e-10,
        }
    }
}

impl EngineConfig {
    fn validate(&self) -> Result<()> {
        check_positive("rel_tolerance", self.rel_tolerance)?;
        check_positive("quadrature_rel_tol", self.quadrature_rel_tol)?;
        if self.max_matsubara < 1 {
            return Err(Error::domain("max_matsubara", "must be >= 1"));
        }
        Ok(())
    }
}

/// Free energy per unit area with its n = 0 / n > 0 split and diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEnergyBreakdown {
    /// Total free energy, J/m².
    pub total: f64,
    /// Zero-frequency (n = 0) contribution, J/m².
    pub n0: f64,
    /// Sum of the n > 0 Matsubara terms, J/m²; `total = n0 + npos` exactly.
    pub npos: f64,
    /// `total` divided by the ideal zero-temperature result −π²ħc/(720l³).
    pub correction_factor: f64,
    /// Matsubara terms evaluated, including n = 0.
    pub n_terms: usize,
    /// Certified absolute bound on truncation plus quadrature error, J/m².
    pub est_error: f64,
}

/// Matsubara frequency ξ_n = 2πn·kT/ħ.
pub fn matsubara_frequency(n: usize, temperature: f64) -> Result<f64> {
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::domain(
            "T",
            "Matsubara frequencies need T > 0; use the zero-temperature path",
        ));
    }
    Ok(2.0 * PI * n as f64 * BOLTZMANN * temperature / HBAR)
}

/// γ = √(q² + ε·ξ²/c²), the imaginary-axis normal-component wavenumber.
pub fn gamma_coeff(q: f64, eps: f64, xi: f64) -> Result<f64> {
    check_nonnegative("q", q)?;
    check_nonnegative("xi", xi)?;
    if !(eps.is_finite() && eps >= 1.0) {
        return Err(Error::domain("eps", format!("must be >= 1, got {eps}")));
    }
    Ok((q * q + eps * (xi / SPEED_OF_LIGHT).powi(2)).sqrt())
}

fn gamma_from_eps(q: f64, xi: f64, eps: Epsilon) -> f64 {
    match eps {
        Epsilon::Finite(e) => (q * q + e * (xi / SPEED_OF_LIGHT).powi(2)).sqrt(),
        Epsilon::DivergesInvXiSquared { kappa } => (q * q + kappa * kappa).sqrt(),
        Epsilon::DivergesInvXi => q,
        Epsilon::PerfectConductor => f64::INFINITY,
    }
}

/// Reflection coefficients (r_TM, r_TE) for a wave in medium 1 (the gap)
/// impinging on medium 2 (the mirror).
///
/// Finite permittivities use the standard imaginary-axis Fresnel forms. The
/// symbolic ξ = 0 limits resolve analytically: any divergence drives
/// r_TM → ±1 (sign by which side diverges faster), a 1/ξ² divergence keeps a
/// finite screening wavenumber in γ and hence a nonzero r_TE, while a 1/ξ
/// divergence leaves γ = q and r_TE = 0. That last branch is what separates
/// the Drude and plasma zero-frequency transverse-electric physics.
pub fn fresnel(q: f64, xi: f64, eps_gap: Epsilon, eps_mirror: Epsilon) -> Result<(f64, f64)> {
    check_nonnegative("q", q)?;
    check_nonnegative("xi", xi)?;
    if q == 0.0 && xi == 0.0 {
        return Err(Error::domain(
            "q,xi",
            "reflection indeterminate at q = xi = 0",
        ));
    }
    if matches!(eps_gap, Epsilon::PerfectConductor) {
        return Err(Error::domain(
            "eps_gap",
            "gap cannot be a perfect conductor",
        ));
    }
    use Epsilon::*;
    let pair = match (eps_gap, eps_mirror) {
        (_, PerfectConductor) => (1.0, -1.0),
        (Finite(e1), Finite(e2)) => {
            let g1 = gamma_from_eps(q, xi, eps_gap);
            let g2 = gamma_from_eps(q, xi, eps_mirror);
            let r_tm = (e2 * g1 - e1 * g2) / (e2 * g1 + e1 * g2);
            let r_te = (g1 - g2) / (g1 + g2);
            (r_tm, r_te)
        }
        (Finite(_), DivergesInvXiSquared { .. }) => {
            let g1 = gamma_from_eps(q, xi, eps_gap);
            let g2 = gamma_from_eps(q, xi, eps_mirror);
            (1.0, (g1 - g2) / (g1 + g2))
        }
        (Finite(_), DivergesInvXi) => (1.0, 0.0),
        (DivergesInvXiSquared { kappa: k1 }, DivergesInvXiSquared { kappa: k2 }) => {
            let g1 = (q * q + k1 * k1).sqrt();
            let g2 = (q * q + k2 * k2).sqrt();
            let r_tm = (k2 * k2 * g1 - k1 * k1 * g2) / (k2 * k2 * g1 + k1 * k1 * g2);
            (r_tm, (g1 - g2) / (g1 + g2))
        }
        (DivergesInvXiSquared { .. }, Finite(_)) | (DivergesInvXiSquared { .. }, DivergesInvXi) => {
            // the gap diverges faster than the mirror
            let g1 = gamma_from_eps(q, xi, eps_gap);
            let g2 = gamma_from_eps(q, xi, eps_mirror);
            (-1.0, (g1 - g2) / (g1 + g2))
        }
        (DivergesInvXi, Finite(_)) => {
            let g2 = gamma_from_eps(q, xi, eps_mirror);
            (-1.0, (q - g2) / (q + g2))
        }
        (DivergesInvXi, DivergesInvXiSquared { .. }) => {
            let g2 = gamma_from_eps(q, xi, eps_mirror);
            (1.0, (q - g2) / (q + g2))
        }
        (DivergesInvXi, DivergesInvXi) => {
            return Err(Error::domain(
                "eps",
                "two 1/xi divergences leave r_TM indeterminate",
            ));
        }
        (PerfectConductor, _) => unreachable!("rejected above"),
    };
    debug_assert!(pair.0.abs() <= 1.0 + 1e-12 && pair.1.abs() <= 1.0 + 1e-12);
    Ok(pair)
}

/// Mode condition function f = 1 − r²·e^{−2γd} for the gap γ and thickness d;
/// lies in (0, 1] whenever |r| ≤ 1.
pub fn mode_condition(gamma_gap: f64, d: f64, r: f64) -> Result<f64> {
    check_nonnegative("gamma", gamma_gap)?;
    check_positive("d", d)?;
    if !(r.is_finite() && r.abs() <= 1.0) {
        return Err(Error::domain("r", format!("|r| must be <= 1, got {r}")));
    }
    let w = 2.0 * gamma_gap * d;
    // 1 − r²e^{−w} = (1 − e^{−w}) + (1 − r²)e^{−w}, grouped to keep precision
    Ok(-(-w).exp_m1() + (1.0 - r * r) * (-w).exp())
}

/// Ideal zero-temperature Casimir energy per area, −π²ħc/(720 l³).
pub fn ideal_zero_t_energy(l: f64) -> f64 {
    -PI * PI * HBAR_C / (720.0 * l * l * l)
}

/// A free energy divided by the ideal zero-temperature result at the same
/// separation; positive for attraction.
pub fn correction_factor(free_energy: f64, l: f64) -> f64 {
    free_energy / ideal_zero_t_energy(l)
}

/// Zero-frequency Matsubara term, F_{n=0} = (kT/2π)·∫_κ^∞ t·ln(1−e^{−2lt}) dt
/// = (kT/2π)·g(2lκ)/(4l²).
pub fn free_energy_n0(l: f64, temperature: f64, kappa: f64) -> Result<f64> {
    check_positive("l", l)?;
    check_positive("T", temperature)?;
    check_nonnegative("kappa", kappa)?;
    let kt = BOLTZMANN * temperature;
    Ok(kt / (2.0 * PI) * log_tail_integral(2.0 * l * kappa)? / (4.0 * l * l))
}

/// Certified bound on Σ_{n>N} |g(w_n)| when w_n ≥ 2πnx and
/// w_n ≤ (A − 1) + Bn, using |g(w)| ≤ (w+1)e^{−w}/(1−e^{−w}).
fn matsubara_tail_bound(n_next: usize, a_coeff: f64, b_coeff: f64, x: f64) -> f64 {
    let rho = (-2.0 * PI * x).exp();
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    let n = n_next as f64;
    let pow = rho.powf(n);
    let s0 = pow / (1.0 - rho);
    let s1 = pow * (n - (n - 1.0) * rho) / ((1.0 - rho) * (1.0 - rho));
    (a_coeff * s0 + b_coeff * s1) / (1.0 - rho)
}

/// Exact free energy for perfect mirrors across a dissipation-free plasma.
///
/// F = (kT/π)·Σ'_n ∫_0^∞ dq·q·ln[1 − e^{−2l√(q² + (ξ_n/c)² + κ²)}]; the
/// substitution t² = q² + a_n² collapses each term to g(2l·a_n)/(4l²) with
/// a_n = √((ξ_n/c)² + κ²), so every term is evaluated to machine precision
/// and the only truncation is the certified Matsubara tail.
pub fn free_energy_ideal_plasma(
    l: f64,
    temperature: f64,
    omega_p: f64,
    cfg: &EngineConfig,
) -> Result<FreeEnergyBreakdown> {
    cfg.validate()?;
    check_positive("l", l)?;
    check_positive("T", temperature)?;
    check_nonnegative("omega_p", omega_p)?;

    let kt = BOLTZMANN * temperature;
    let x = 2.0 * kt * l / HBAR_C;
    let kl = omega_p / SPEED_OF_LIGHT * l;
    let pref = kt / (4.0 * PI * l * l);

    let n0 = 0.5 * pref * log_tail_integral(2.0 * kl)?;

    // Neumaier-compensated accumulation: millions of terms at small x
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut abs_sum = n0.abs();
    let add = |value: f64, sum: &mut f64, comp: &mut f64| {
        let t = *sum + value;
        if sum.abs() >= value.abs() {
            *comp += (*sum - t) + value;
        } else {
            *comp += (value - t) + *sum;
        }
        *sum = t;
    };

    let a_coeff = 2.0 * kl + 1.0;
    let b_coeff = 2.0 * PI * x;
    let mut n = 0usize;
    loop {
        let tail = pref * matsubara_tail_bound(n + 1, a_coeff, b_coeff, x);
        // resolve the n > 0 sum relative to itself (not just to the total) so
        // ratio studies against the finite-frequency asymptote stay meaningful;
        // the geometric decay makes the extra terms cheap. Before the first
        // term only a fully underflowed bound may stop the loop.
        let npos_abs = (sum + comp).abs();
        let done = if n == 0 {
            tail == 0.0
        } else {
            tail <= cfg.rel_tolerance * npos_abs.max(1e-300)
        };
        if done {
            let npos = sum + comp;
            let total = n0 + npos;
            return Ok(FreeEnergyBreakdown {
                total,
                n0,
                npos,
                correction_factor: correction_factor(total, l),
                n_terms: n + 1,
                est_error: tail + 2e-15 * abs_sum,
            });
        }
        if n + 1 > cfg.max_matsubara {
            return Err(Error::Convergence {
                terms: n + 1,
                partial: n0 + sum + comp,
                bound: tail,
            });
        }
        n += 1;
        let npx = n as f64 * PI * x;
        let w = 2.0 * (npx * npx + kl * kl).sqrt();
        let term = pref * log_tail_integral(w)?;
        abs_sum += term.abs();
        add(term, &mut sum, &mut comp);
    }
}

/// ∫_0^∞ q·[ln f_TM + ln f_TE] dq for one Matsubara frequency, by adaptive
/// quadrature on a kink-free substitution. Returns (value, error bound).
fn q_integral(
    l: f64,
    xi: f64,
    mirror: &MirrorModel,
    medium: &MediumModel,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    let eps_gap = medium.epsilon(xi)?;
    let eps_mirror = mirror.epsilon(xi)?;
    let a2 = medium.eps_xi_squared_over_c2(xi)?;
    let a = a2.sqrt();

    let integrand = |q: f64| -> f64 {
        if q <= 0.0 {
            return 0.0;
        }
        let (r_tm, r_te) = match fresnel(q, xi, eps_gap, eps_mirror) {
            Ok(pair) => pair,
            Err(_) => return 0.0,
        };
        let gamma_gap = (q * q + a2).sqrt();
        let decay = (-2.0 * gamma_gap * l).exp();
        q * ((-r_tm * r_tm * decay).ln_1p() + (-r_te * r_te * decay).ln_1p())
    };

    let w_max = 2.0 * l * a + 55.0;
    // contribution beyond the truncation point; r² ≤ 1 bounds it by the
    // ideal-mirror tail e^{−w}(w+1)/(4l²) per polarization
    let cut_bound = (-w_max).exp() * (w_max + 1.0) / (2.0 * l * l);

    let opts = QuadOptions {
        rel_tol,
        abs_tol: 1e-280,
        max_intervals: 20_000,
    };

    if a > 0.0 {
        let ratio = w_max / (2.0 * l * a);
        if ratio <= 1.0 {
            return Ok((0.0, cut_bound));
        }
        let u_max = ratio.acosh();
        // q = a·sinh u, q dq = a²·sinh u·cosh u du
        let q = integrate(
            |u| {
                let s = u.sinh();
                a2 * s * u.cosh() * integrand(a * s) / (a * s.max(1e-300))
            },
            0.0,
            u_max,
            &opts,
        )?;
        Ok((q.value, q.abs_error + cut_bound))
    } else {
        // w = 2lq = e^s removes both the endpoint and the log singularity
        let scale = 2.0 * l;
        let q = integrate(
            |s| {
                let w = s.exp();
                let qv = w / scale;
                w * w * integrand(qv) / (scale * scale * qv.max(1e-300))
            },
            -30.0,
            w_max.ln(),
            &opts,
        )?;
        Ok((q.value, q.abs_error + cut_bound))
    }
}

fn reject_dissipative_gap(medium: &MediumModel) -> Result<()> {
    medium.validate()?;
    if matches!(medium, MediumModel::Drude { .. }) {
        return Err(Error::domain(
            "medium",
            "dissipative (Drude) plasma in the gap is not supported",
        ));
    }
    Ok(())
}

/// Upper-bound coefficients w_n ≤ (A − 1) + B·n for the gap dispersion,
/// used by the certified tail bound of the general engine.
fn gap_growth_coefficients(medium: &MediumModel, l: f64, x: f64) -> (f64, f64) {
    match medium {
        MediumModel::Vacuum | MediumModel::Drude { .. } => (1.0, 2.0 * PI * x),
        MediumModel::Plasma { omega_p } => (2.0 * omega_p / SPEED_OF_LIGHT * l + 1.0, 2.0 * PI * x),
        MediumModel::Tabulated { samples } => {
            let eps_max = samples.iter().map(|&(_, e)| e).fold(1.0f64, f64::max);
            (1.0, 2.0 * PI * x * eps_max.sqrt())
        }
    }
}

/// General finite-temperature engine for arbitrary mirror and gap models:
/// F = kT·Σ'_n ∫ d²q/(2π)²·[ln f_TM + ln f_TE].
///
/// For perfect mirrors across a plasma this agrees with
/// [`free_energy_ideal_plasma`] to the quadrature tolerance; that dual-path
/// identity is the main correctness oracle of the crate.
pub fn free_energy_general(
    l: f64,
    temperature: f64,
    mirror: &MirrorModel,
    medium: &MediumModel,
    cfg: &EngineConfig,
) -> Result<FreeEnergyBreakdown> {
    cfg.validate()?;
    check_positive("l", l)?;
    check_positive("T", temperature)?;
    reject_dissipative_gap(medium)?;

    let kt = BOLTZMANN * temperature;
    let x = 2.0 * kt * l / HBAR_C;
    let pref = kt / (2.0 * PI);

    let (q0, e0) = q_integral(l, 0.0, mirror, medium, cfg.quadrature_rel_tol)?;
    let n0 = 0.5 * pref * q0;
    let mut quad_err = 0.5 * pref * e0;

    let (a_coeff, b_coeff) = gap_growth_coefficients(medium, l, x);
    let ideal_pref = kt / (4.0 * PI * l * l);

    let mut npos = 0.0f64;
    let mut zero_streak = 0usize;
    let mut n = 0usize;
    loop {
        let tail = ideal_pref * matsubara_tail_bound(n + 1, a_coeff, b_coeff, x);
        // same npos-relative stopping rule as the series engine; identically
        // vanishing reflection (no dielectric contrast) short-circuits after
        // three zero terms since the r² ≤ 1 tail bound cannot see r = 0
        let done = if n0 == 0.0 && npos == 0.0 {
            zero_streak >= 3 || tail == 0.0
        } else if n == 0 {
            tail == 0.0
        } else {
            tail <= cfg.rel_tolerance * npos.abs().max(1e-300)
        };
        if done {
            let total = n0 + npos;
            return Ok(FreeEnergyBreakdown {
                total,
                n0,
                npos,
                correction_factor: correction_factor(total, l),
                n_terms: n + 1,
                est_error: tail + quad_err,
            });
        }
        if n + 1 > cfg.max_matsubara {
            return Err(Error::Convergence {
                terms: n + 1,
                partial: n0 + npos,
                bound: tail,
            });
        }
        n += 1;
        let xi = matsubara_frequency(n, temperature)?;
        let (qn, en) = q_integral(l, xi, mirror, medium, cfg.quadrature_rel_tol)?;
        let term = pref * qn;
        zero_streak = if term == 0.0 { zero_streak + 1 } else { 0 };
        npos += term;
        quad_err += pref * en;
    }
}

/// Zero-temperature internal energy per area,
/// E = ħ·∫ d²q/(2π)²·∫_0^∞ dω/(2π)·[ln f_TM + ln f_TE], by nested adaptive
/// quadrature over (ξ, q). Kept separate from the thermal engine because the
/// Matsubara spacing collapses as T → 0.
pub fn free_energy_zero_temperature(
    l: f64,
    mirror: &MirrorModel,
    medium: &MediumModel,
    cfg: &EngineConfig,
) -> Result<f64> {
    cfg.validate()?;
    check_positive("l", l)?;
    reject_dissipative_gap(medium)?;

    let xi_scale = SPEED_OF_LIGHT / (2.0 * l);
    let inner_tol = cfg.quadrature_rel_tol * 0.25;
    let outer = integrate(
        |t| {
            let xi = xi_scale * t.exp();
            match q_integral(l, xi, mirror, medium, inner_tol) {
                Ok((v, _)) => xi * v,
                Err(_) => f64::NAN,
            }
        },
        -30.0,
        4.2,
        &QuadOptions {
            rel_tol: cfg.quadrature_rel_tol,
            abs_tol: 1e-280,
            max_intervals: 4000,
        },
    )?;
    if !outer.value.is_finite() {
        return Err(Error::domain("quadrature", "inner q-integration failed"));
    }
    Ok(HBAR / (4.0 * PI * PI) * outer.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::ZETA_3;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn matsubara_examples() {
        assert_eq!(matsubara_frequency(0, 300.0).unwrap(), 0.0);
        // 2π·k_B·300/ħ with CODATA constants
        let xi1 = matsubara_frequency(1, 300.0).unwrap();
        assert_abs_diff_eq!(xi1, 2.467_78e14, epsilon = 1e10);
        let xi10 = matsubara_frequency(10, 300.0).unwrap();
        assert_eq!(xi10, 10.0 * xi1);
        assert!(matsubara_frequency(1, 0.0).is_err());
        assert!(matsubara_frequency(1, -5.0).is_err());
    }

    #[test]
    fn gamma_limits() {
        assert_eq!(gamma_coeff(1e6, 2.0, 0.0).unwrap(), 1e6);
        let g = gamma_coeff(0.0, 4.0, 3e14).unwrap();
        assert_relative_eq!(g, 2.0 * 3e14 / SPEED_OF_LIGHT, max_relative = 1e-14);
        let g = gamma_coeff(1e6, 2.0, SPEED_OF_LIGHT * 1e6).unwrap();
        assert_relative_eq!(g, 3f64.sqrt() * 1e6, max_relative = 1e-12);
        assert!(gamma_coeff(1e6, 0.5, 1e14).is_err());
    }

    #[test]
    fn fresnel_no_interface() {
        let (tm, te) = fresnel(1e6, 1e14, Epsilon::Finite(2.0), Epsilon::Finite(2.0)).unwrap();
        assert_eq!((tm, te), (0.0, 0.0));
    }

    #[test]
    fn fresnel_perfect_metal() {
        let (tm, te) = fresnel(1e6, 0.0, Epsilon::Finite(1.0), Epsilon::PerfectConductor).unwrap();
        assert_eq!((tm, te), (1.0, -1.0));
    }

    #[test]
    fn fresnel_normal_incidence_quarters() {
        // q = 0, ε₁ = 1, ε₂ = 4: γ_i = √ε_i·ξ/c, so r_te = −1/3, r_tm = 1/3
        let (tm, te) = fresnel(0.0, 2e14, Epsilon::Finite(1.0), Epsilon::Finite(4.0)).unwrap();
        assert_relative_eq!(te, -1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(tm, 1.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn fresnel_zero_frequency_branches() {
        let kappa = 1e14 / SPEED_OF_LIGHT;
        let q = kappa * 0.5;
        // plasma-like mirror: metallic TM, screened TE
        let (tm, te) = fresnel(
            q,
            0.0,
            Epsilon::Finite(1.0),
            Epsilon::DivergesInvXiSquared { kappa },
        )
        .unwrap();
        assert_eq!(tm, 1.0);
        let g2 = (q * q + kappa * kappa).sqrt();
        assert_relative_eq!(te, (q - g2) / (q + g2), max_relative = 1e-14);
        assert!(te < 0.0);
        // Drude-like mirror: metallic TM, dead TE
        let (tm, te) = fresnel(q, 0.0, Epsilon::Finite(1.0), Epsilon::DivergesInvXi).unwrap();
        assert_eq!((tm, te), (1.0, 0.0));
        // indeterminate corner
        assert!(fresnel(0.0, 0.0, Epsilon::Finite(1.0), Epsilon::Finite(2.0)).is_err());
    }

    #[test]
    fn mode_condition_examples() {
        assert_eq!(mode_condition(1e6, 1e-6, 0.0).unwrap(), 1.0);
        let f = mode_condition(2.5e6, 1e-6, 1.0).unwrap();
        assert_relative_eq!(f, 1.0 - (-5.0f64).exp(), max_relative = 1e-14);
        let f = mode_condition(2.5e6, 1e-6, -1.0).unwrap();
        assert_relative_eq!(f, 1.0 - (-5.0f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(
            mode_condition(1e6, 1.0, 0.9).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        assert!(mode_condition(1e6, 1e-6, 1.5).is_err());
    }

    #[test]
    fn ideal_engine_zero_t_limit() {
        // x ≈ 8.7e-7: the sum is an honest Riemann approximation of the
        // zero-temperature integral, −π²ħc/(720 l³) = −4.3338e-10 J/m²
        let f = free_energy_ideal_plasma(1e-6, 1e-3, 0.0, &cfg()).unwrap();
        assert_relative_eq!(f.total, -4.3338e-10, max_relative = 1e-4);
        assert_relative_eq!(f.total, ideal_zero_t_energy(1e-6), max_relative = 1e-5);
        assert_relative_eq!(f.correction_factor, 1.0, max_relative = 1e-4);
        assert!(f.est_error <= 1e-8 * f.total.abs());
        assert_eq!(f.total, f.n0 + f.npos);
    }

    #[test]
    fn ideal_engine_cold_regime_tracks_zero_point_term() {
        // x ≤ 0.05: thermal corrections enter at O(x³), well under 0.1%
        let t = 300.0;
        for &x in &[0.01, 0.05] {
            let l = x * HBAR_C / (2.0 * BOLTZMANN * t);
            let f = free_energy_ideal_plasma(l, t, 0.0, &cfg()).unwrap();
            assert_relative_eq!(f.total, ideal_zero_t_energy(l), max_relative = 1e-3);
        }
    }

    #[test]
    fn ideal_engine_high_t_limit() {
        // x = 2.62 suppresses n > 0 by ~e^{−2πx}; F ≈ −ζ(3)kT/(8πl²)
        let l = 1e-5;
        let t = 300.0;
        let f = free_energy_ideal_plasma(l, t, 0.0, &cfg()).unwrap();
        let thermal = -ZETA_3 * BOLTZMANN * t / (8.0 * PI * l * l);
        assert_relative_eq!(thermal, -1.9811e-12, max_relative = 1e-4);
        assert_relative_eq!(f.total, thermal, max_relative = 1e-3);
        assert_relative_eq!(f.n0, thermal, max_relative = 1e-12);
    }

    #[test]
    fn ideal_engine_screening_suppresses() {
        let free = free_energy_ideal_plasma(1e-6, 300.0, 0.0, &cfg()).unwrap();
        let screened = free_energy_ideal_plasma(1e-6, 300.0, 1e14, &cfg()).unwrap();
        assert!(screened.total.abs() < free.total.abs());
        assert!(screened.total < 0.0);
    }

    #[test]
    fn ideal_engine_monotone_in_separation_and_screening() {
        let mut last = f64::INFINITY;
        for k in 0..8 {
            let l = 1e-7 * 10f64.powf(k as f64 / 3.0);
            let f = free_energy_ideal_plasma(l, 300.0, 5e13, &cfg()).unwrap();
            assert!(f.total < 0.0);
            assert!(f.total.abs() < last, "|F| not decreasing at l = {l}");
            last = f.total.abs();
        }
        let mut last = f64::INFINITY;
        for k in 0..8 {
            let wp = 1e13 * 10f64.powf(k as f64 / 3.0);
            let f = free_energy_ideal_plasma(1e-6, 300.0, wp, &cfg()).unwrap();
            assert!(f.total.abs() < last, "|F| not decreasing at wp = {wp}");
            last = f.total.abs();
        }
    }

    #[test]
    fn ideal_engine_convergence_error_carries_partial() {
        let tight = EngineConfig {
            rel_tolerance: 1e-10,
            max_matsubara: 3,
            quadrature_rel_tol: 1e-10,
        };
        match free_energy_ideal_plasma(1e-6, 1.0, 0.0, &tight) {
            Err(Error::Convergence {
                terms,
                partial,
                bound,
            }) => {
                assert!(terms >= 3);
                assert!(partial < 0.0);
                assert!(bound > 0.0);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn n0_closed_form_and_tail() {
        let l = 1e-6;
        let t = 300.0;
        let f0 = free_energy_n0(l, t, 0.0).unwrap();
        let closed = -ZETA_3 * BOLTZMANN * t / (8.0 * PI * l * l);
        assert_relative_eq!(f0, closed, max_relative = 1e-13);
        // κ → ∞ kills the term from below
        let f_far = free_energy_n0(l, t, 3e8).unwrap();
        assert!(f_far < 0.0 && f_far > -1e-40);
        assert!(free_energy_n0(l, 0.0, 0.0).is_err());
    }

    #[test]
    fn general_engine_matches_series_for_ideal_plasma() {
        let mirror = MirrorModel::PerfectMetal;
        let medium = MediumModel::Plasma { omega_p: 1e14 };
        let series = free_energy_ideal_plasma(1e-6, 300.0, 1e14, &cfg()).unwrap();
        let general = free_energy_general(1e-6, 300.0, &mirror, &medium, &cfg()).unwrap();
        assert_relative_eq!(general.total, series.total, max_relative = 1e-8);
        assert_relative_eq!(general.n0, series.n0, max_relative = 1e-8);
    }

    #[test]
    fn general_engine_no_contrast_gives_zero() {
        let medium = MediumModel::Vacuum;
        let mirror = MirrorModel::Material(MediumModel::Vacuum);
        let f = free_energy_general(1e-6, 300.0, &mirror, &medium, &cfg()).unwrap();
        assert_eq!(f.total, 0.0);
    }

    #[test]
    fn general_engine_rejects_dissipative_gap() {
        let medium = MediumModel::Drude {
            omega_p: 1e14,
            gamma: 1e12,
        };
        let mirror = MirrorModel::PerfectMetal;
        assert!(free_energy_general(1e-6, 300.0, &mirror, &medium, &cfg()).is_err());
    }

    #[test]
    fn drude_mirrors_halve_the_zero_frequency_term() {
        // r_TE → 0 and r_TM → 1 at ξ = 0, so only TM survives where the
        // ideal mirror keeps both polarizations
        let l = 1.2e-5; // x ≈ 3.1
        let t = 300.0;
        let drude = MirrorModel::Material(MediumModel::Drude {
            omega_p: 1.4e16,
            gamma: 6e13,
        });
        let f = free_energy_general(l, t, &drude, &MediumModel::Vacuum, &cfg()).unwrap();
        let ideal_n0 = free_energy_n0(l, t, 0.0).unwrap();
        assert_relative_eq!(f.n0, 0.5 * ideal_n0, max_relative = 1e-9);
    }

    #[test]
    fn zero_temperature_ideal_vacuum() {
        let e = free_energy_zero_temperature(
            1e-6,
            &MirrorModel::PerfectMetal,
            &MediumModel::Vacuum,
            &cfg(),
        )
        .unwrap();
        assert_relative_eq!(e, -4.3338e-10, max_relative = 1e-4);
        assert_relative_eq!(e, ideal_zero_t_energy(1e-6), max_relative = 1e-6);
    }

    #[test]
    fn zero_temperature_screened_is_small() {
        // κl = 10 wipes out most of the vacuum energy
        let kappa_l = 10.0;
        let l = 1e-6;
        let medium = MediumModel::Plasma {
            omega_p: kappa_l / l * SPEED_OF_LIGHT,
        };
        let e =
            free_energy_zero_temperature(l, &MirrorModel::PerfectMetal, &medium, &cfg()).unwrap();
        assert!(e < 0.0);
        assert!(e.abs() < 0.01 * ideal_zero_t_energy(l).abs());
    }

    #[test]
    fn cold_engine_agrees_with_zero_temperature_engine() {
        let e0 = free_energy_zero_temperature(
            1e-6,
            &MirrorModel::PerfectMetal,
            &MediumModel::Vacuum,
            &cfg(),
        )
        .unwrap();
        let f = free_energy_ideal_plasma(1e-6, 1e-3, 0.0, &cfg()).unwrap();
        assert_relative_eq!(f.total, e0, max_relative = 1e-3);
    }

    #[test]
    fn correction_factor_reference_points() {
        let l = 1e-5;
        assert_relative_eq!(
            correction_factor(ideal_zero_t_energy(l), l),
            1.0,
            max_relative = 1e-14
        );
        assert_eq!(correction_factor(0.0, l), 0.0);
        // thermal enhancement at large separation: −ζ(3)kT/(8πl²) over the
        // zero-temperature reference is ≈ 4.57 at l = 10 µm, T = 300 K
        let thermal = -ZETA_3 * BOLTZMANN * 300.0 / (8.0 * PI * l * l);
        assert_relative_eq!(correction_factor(thermal, l), 4.571, max_relative = 1e-3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn fresnel_bounded(
            q in 0.0f64..1e8,
            xi in 1e10f64..1e16,
            e1 in 1.0f64..1e4,
            e2 in 1.0f64..1e4,
        ) {
            let (tm, te) = fresnel(q, xi, Epsilon::Finite(e1), Epsilon::Finite(e2)).unwrap();
            prop_assert!(tm.abs() <= 1.0 && te.abs() <= 1.0);
        }

        #[test]
        fn mode_condition_in_unit_interval(
            gamma in 0.0f64..1e9,
            d in 1e-9f64..1e-3,
            r in -1.0f64..1.0,
        ) {
            let f = mode_condition(gamma, d, r).unwrap();
            prop_assert!(f > 0.0 && f <= 1.0);
        }
    }
}
