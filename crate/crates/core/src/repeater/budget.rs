//! Link-loss, latency and memory budgets.

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.998e8;
/// Attenuation of standard telecom fibre, dB/km.
pub const FIBRE_LOSS_DB_PER_KM: f64 = 0.17;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkBudget {
    pub spacing_km: f64,
    pub loss_db_per_km: f64,
    /// Raw attempt rate of the entangling hardware.
    pub attempt_rate_hz: f64,
    /// Heralding needs both photons, so loss counts over the full spacing
    /// rather than half of it.
    pub two_photon: bool,
    /// Signalling speed used for the latency limit, m/s.
    pub signal_speed: f64,
    /// Acceptable drop in success probability when advising a spacing.
    pub tolerated_loss_factor: f64,
}

impl LinkBudget {
    pub fn new(spacing_km: f64) -> Self {
        LinkBudget {
            spacing_km,
            loss_db_per_km: FIBRE_LOSS_DB_PER_KM,
            attempt_rate_hz: 1e6,
            two_photon: true,
            signal_speed: SPEED_OF_LIGHT,
            tolerated_loss_factor: 2.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateBudget {
    pub loss_db: f64,
    /// Fraction of attempts surviving fibre loss.
    pub success_scaling: f64,
    pub max_cycle_rate_hz: f64,
    /// Spacing at which loss alone costs `tolerated_loss_factor`.
    pub advised_spacing_km: f64,
    /// `attempt_rate / max_cycle_rate`; above 1 the latency limit binds.
    pub slowdown: f64,
}

pub fn rate_budget(link: &LinkBudget) -> Result<RateBudget> {
    for (name, v) in [
        ("spacing_km", link.spacing_km),
        ("loss_db_per_km", link.loss_db_per_km),
        ("attempt_rate_hz", link.attempt_rate_hz),
        ("signal_speed", link.signal_speed),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::ParameterOutOfRange { name, value: v, lo: 0.0, hi: f64::INFINITY });
        }
    }
    if !(link.tolerated_loss_factor > 1.0) {
        return Err(Error::ParameterOutOfRange { name: "tolerated_loss_factor", value: link.tolerated_loss_factor, lo: 1.0, hi: f64::INFINITY });
    }
    let per_km = if link.two_photon { link.loss_db_per_km } else { link.loss_db_per_km / 2.0 };
    let loss_db = per_km * link.spacing_km;
    let max_cycle = link.signal_speed / (link.spacing_km * 1e3);
    Ok(RateBudget {
        loss_db,
        success_scaling: 10f64.powf(-loss_db / 10.0),
        max_cycle_rate_hz: max_cycle,
        advised_spacing_km: 10.0 * link.tolerated_loss_factor.log10() / per_km,
        slowdown: link.attempt_rate_hz / max_cycle,
    })
}

/// How the application qubit's fidelity decays while it waits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DephasingModel {
    /// `F(t) = (1 + exp(-t/T2)) / 2`.
    Exponential,
    /// `F(t) = (1 + exp(-(t/T2)^2)) / 2`.
    Gaussian,
    /// A fixed tolerable waiting time in seconds, independent of `T2`.
    FixedWindow(f64),
}

/// Longest wait before the fidelity falls below `fidelity_floor`.
pub fn dephasing_window(model: DephasingModel, t2_seconds: f64, fidelity_floor: f64) -> Result<f64> {
    if !(fidelity_floor > 0.5 && fidelity_floor < 1.0) {
        return Err(Error::ParameterOutOfRange { name: "fidelity_floor", value: fidelity_floor, lo: 0.5, hi: 1.0 });
    }
    if !(t2_seconds > 0.0) {
        return Err(Error::ParameterOutOfRange { name: "t2_seconds", value: t2_seconds, lo: 0.0, hi: f64::INFINITY });
    }
    let decay = -(2.0 * fidelity_floor - 1.0).ln();
    Ok(match model {
        DephasingModel::Exponential => t2_seconds * decay,
        DephasingModel::Gaussian => t2_seconds * decay.sqrt(),
        DephasingModel::FixedWindow(w) => {
            if !(w > 0.0) {
                return Err(Error::ParameterOutOfRange { name: "window", value: w, lo: 0.0, hi: f64::INFINITY });
            }
            w
        }
    })
}

/// Raw-pair rate needed to finish one purification (`purification_cost_pairs`
/// raw pairs) within the dephasing window. Infinite `T2` needs no rate.
pub fn memory_budget(model: DephasingModel, t2_seconds: f64, purification_cost_pairs: f64, fidelity_floor: f64) -> Result<f64> {
    if !(purification_cost_pairs > 0.0) {
        return Err(Error::ParameterOutOfRange { name: "purification_cost_pairs", value: purification_cost_pairs, lo: 0.0, hi: f64::INFINITY });
    }
    let window = dephasing_window(model, t2_seconds, fidelity_floor)?;
    if window.is_infinite() {
        return Ok(0.0);
    }
    Ok(purification_cost_pairs / window)
}
