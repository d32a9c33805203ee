use std::collections::BTreeMap;

use super::{Channel, ParamValue, Scenario, SweepAxis};

fn nums(v: &[f64]) -> Vec<ParamValue> {
    v.iter().map(|&x| ParamValue::Number(x)).collect()
}

fn texts(v: &[&str]) -> Vec<ParamValue> {
    v.iter().map(|&x| ParamValue::Text(x.into())).collect()
}

fn params(kv: &[(&str, ParamValue)]) -> BTreeMap<String, ParamValue> {
    kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn builtin_names() -> &'static [&'static str] {
    &["fig3", "fig4", "fig5", "fig7", "fig12", "fig13", "conclusion"]
}

/// Reference scenarios by name. Values are in display units.
pub fn builtin(name: &str) -> Option<Scenario> {
    let (params, sweep, outputs) = match name {
        // current change moving the barrier tunneling probability 1e-3 → 0.1
        "fig3" => (
            params(&[("B0", 1.0.into()), ("mu", 1.0.into())]),
            vec![SweepAxis::values("d", nums(&[0.5, 1.0, 2.0, 5.0, 10.0]))],
            vec![Channel::Sensitivity],
        ),
        // lattice resolution height vs wire current, λ = 1 μm
        "fig4" => (
            params(&[("lambda", 1.0.into()), ("eta", 2.0.into())]),
            vec![SweepAxis::range("I", 0.05, 50.0, 7, true)],
            vec![Channel::ResolutionHeight],
        ),
        // corrugation from 2 nm rms roughness over 100-800 nm
        "fig5" => (
            params(&[("rms", 2.0.into()), ("lambdaMin", 100.0.into()), ("roughLength", 0.8.into()), ("side", 10.0.into())]),
            vec![
                SweepAxis::values("alpha", nums(&[0.0, 1.0])),
                SweepAxis::values("d", nums(&[0.3, 0.4, 0.6, 0.8, 1.0, 1.5, 2.0])),
            ],
            vec![Channel::Corrugation],
        ),
        // anisotropic noise suppression above a thick conductor
        "fig7" => (
            params(&[("d", 5.0.into()), ("w", 10e3.into()), ("h", 2.15e3.into()), ("L", 1.0.into())]),
            vec![
                SweepAxis::values("conductivity", texts(&["quasi1d", "layered"])),
                SweepAxis::range("anisotropy", 1.0, 1e4, 9, true),
            ],
            vec![Channel::SuppressionRatio, Channel::SpinDecoherence, Channel::SpinFlip],
        ),
        // surface tunneling lifetime of a BEC above a 50 nm wire
        "fig12" => (
            params(&[
                ("side", 50.0.into()),
                ("L", 0.1.into()),
                ("I", 0.04.into()),
                ("B0", 0.1.into()),
                ("axialFrequency", 100.0.into()),
                ("N", 1000.0.into()),
            ]),
            vec![
                SweepAxis::values("cpSources", texts(&["combined", "wire", "surface"])),
                SweepAxis::range("d", 0.35, 0.8, 10, false),
            ],
            vec![Channel::TunnelLifetime],
        ),
        // spin-flip lifetimes above square nanowires
        "fig13" => (
            params(&[("T", 300.0.into())]),
            vec![
                SweepAxis::values("side", nums(&[25.0, 50.0, 100.0, 200.0])),
                SweepAxis::values("d", nums(&[0.1, 0.2, 0.3, 0.5, 0.8, 1.0])),
            ],
            vec![Channel::SpinFlip],
        ),
        // the nanowire design of the closing section
        "conclusion" => (
            params(&[
                ("side", 50.0.into()),
                ("d", 0.75.into()),
                ("I", 0.04.into()),
                ("B0", 0.1.into()),
                ("N", 1000.0.into()),
                ("T", 300.0.into()),
                ("resistivityModel", "fs".into()),
                ("rms", 2.0.into()),
                ("alpha", 0.0.into()),
                ("lambdaMin", 100.0.into()),
                ("roughLength", 0.8.into()),
                ("gateTime", 1.0.into()),
            ]),
            vec![],
            vec![
                Channel::SpinFlip,
                Channel::SpinDecoherence,
                Channel::Corrugation,
                Channel::TunnelLifetime,
                Channel::GateOps,
            ],
        ),
        _ => return None,
    };
    Some(Scenario {
        name: name.into(),
        params,
        sweep,
        outputs,
        seed: 0,
    })
}
