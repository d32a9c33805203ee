//! Current control of a crossing-wire barrier.

use std::f64::consts::PI;

use super::wkb::{wkb_function, TunnelResult};
use crate::domain::constants::MU0;
use crate::domain::{AtomSpecies, TrapContext};
use crate::error::ensure_positive;
use crate::numerics::brent;
use crate::{Error, Result};

/// Currents beyond this are not considered for an atom-chip wire.
pub const MAX_CURRENT: f64 = 10.0;

/// Tunneling through the crossing-wire barrier at height `ctx.d` for an
/// atom with kinetic energy `ctx.mu` above the guide bottom.
pub fn x_wire_tunneling(current: f64, ctx: &TrapContext, species: &AtomSpecies) -> Result<TunnelResult> {
    let z = ensure_positive("d", ctx.d)?;
    let e = ensure_positive("mu", ctx.mu)?;
    let c = species.mu_a().abs() * MU0 * current / (2.0 * PI);
    if c / z <= e {
        return Ok(TunnelResult::over_barrier());
    }
    // outside |x| = sqrt(cz/E) the excess is below E
    let span = 2.0 * (c * z / e).sqrt() + z;
    wkb_function(|x| c * z / (z * z + x * x), -span, 0.0, span, e, species.mass)
}

/// Current giving tunneling probability `p` at the context height.
pub fn current_for_probability(p: f64, ctx: &TrapContext, species: &AtomSpecies) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::param("P", format!("probability must be in (0, 1], got {p}")));
    }
    let z = ensure_positive("d", ctx.d)?;
    let e = ensure_positive("mu", ctx.mu)?;
    let i_min = 2.0 * PI * z * e / (MU0 * species.mu_a().abs());
    if i_min > MAX_CURRENT {
        return Err(Error::NoSolution(format!(
            "d = {z:e} m needs more than {MAX_CURRENT} A just to form a barrier"
        )));
    }
    let target = -p.ln();
    if target == 0.0 {
        return Ok(i_min);
    }
    let g = |i: f64| x_wire_tunneling(i, ctx, species).map(|r| r.action - target);
    let mut hi = 2.0 * i_min;
    while g(hi)? < 0.0 {
        hi *= 2.0;
        if hi > MAX_CURRENT {
            return Err(Error::NoSolution(format!(
                "no current below {MAX_CURRENT} A reaches P = {p} at d = {z:e} m"
            )));
        }
    }
    let mut err = None;
    let root = brent(
        |i| match g(i) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        },
        i_min,
        hi,
        1e-14 * hi,
        300,
    );
    if let Some(e) = err {
        return Err(e);
    }
    let i = root?;
    if i > MAX_CURRENT {
        return Err(Error::NoSolution(format!(
            "P = {p} at d = {z:e} m needs {i:e} A, beyond {MAX_CURRENT} A"
        )));
    }
    Ok(i)
}

/// (I(P_from) − I(P_to)) / I(P_from) at height d.
pub fn current_sensitivity(
    d: f64,
    p_from: f64,
    p_to: f64,
    ctx: &TrapContext,
    species: &AtomSpecies,
) -> Result<f64> {
    if !(p_from > 0.0 && p_from <= p_to && p_to <= 1.0) {
        return Err(Error::param("P", "need 0 < P_from ≤ P_to ≤ 1"));
    }
    let c = ctx.with_height(ensure_positive("d", d)?);
    let i_from = current_for_probability(p_from, &c, species)?;
    if p_from == p_to {
        return Ok(0.0);
    }
    let i_to = current_for_probability(p_to, &c, species)?;
    Ok((i_from - i_to) / i_from)
}
