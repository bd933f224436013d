use num_complex::Complex64;
use scarf_core::analytic::{spectrum, AnalyticError, Branch, Solution};
use scarf_core::numeric::search::find_bound_states_with;
use scarf_core::numeric::NumericLevel;
use scarf_core::{JostConfig, Potential, ScarfParams64, Spectrum64, SymmetryClass};
use serde_json::{json, Value};

use crate::args::SpectrumArgs;
use crate::error::CliError;
use crate::fault::numeric_potential;
use crate::output::{cplx, document, emit, f, num, params_json, Table};

pub fn branch_label(b: Branch) -> &'static str {
    match b {
        Branch::Upper => "upper",
        Branch::Lower => "lower",
    }
}

pub fn solution_label(s: Solution) -> &'static str {
    match s {
        Solution::Psi1 => "psi1",
        Solution::Psi2 => "psi2",
    }
}

/// The closed-form spectrum, refusing the generic class.
pub fn analytic_or_refuse(p: &ScarfParams64) -> Result<Spectrum64, CliError> {
    if p.class() == SymmetryClass::Generic {
        return Err(CliError::Unsupported(
            "both A and B are complex (generic class); no real-spectrum formula applies".to_string(),
        ));
    }
    spectrum(p).map_err(|e: AnalyticError| CliError::Unsupported(e.to_string()))
}

pub fn analytic_json(sp: &Spectrum64) -> Value {
    let states: Vec<Value> = sp
        .states
        .iter()
        .map(|s| {
            json!({
                "family": s.family.label(),
                "quasiParity": s.quasi_parity(),
                "n": s.n,
                "energy": s.energy,
                "kappa": s.kappa(),
                "branch": branch_label(s.branch.branch),
                "solution": solution_label(s.solution),
            })
        })
        .collect();
    let threshold: Vec<Value> =
        sp.threshold.iter().map(|t| json!({ "family": t.family.label(), "n": t.n })).collect();
    let complex: Vec<Value> = sp
        .complex_levels
        .iter()
        .map(|l| {
            json!({
                "n": l.n,
                "energy": cplx(l.energy),
                "branch": branch_label(l.branch.branch),
                "solution": solution_label(l.solution),
            })
        })
        .collect();
    json!({ "states": states, "thresholdStates": threshold, "complexLevels": complex })
}

fn level_json(l: &NumericLevel<f64>, reference: &[Complex64]) -> Value {
    let delta = l.matched.map(|i| (l.energy - reference[i]).norm());
    json!({
        "energy": cplx(l.energy),
        "residual": num(l.residual),
        "converged": l.converged,
        "iterations": l.iterations,
        "real": l.is_real(1e-8),
        "matchedIndex": l.matched,
        "deltaE": delta.map(num),
    })
}

pub fn run(args: &SpectrumArgs) -> Result<(), CliError> {
    let p = args.params.resolve()?;
    let sp = analytic_or_refuse(&p)?;
    if !(args.l > 0.0 && args.h > 0.0 && args.h < args.l && args.scan_step > 0.0) {
        return Err(CliError::Usage("need 0 < h < L and scan-step > 0".to_string()));
    }
    let emin = args.emin.unwrap_or_else(|| p.scan_floor());
    if !(emin < 0.0) {
        return Err(CliError::Usage("--emin must be negative".to_string()));
    }
    let pot = numeric_potential(&p, args.params.flip_q);
    let cfg = JostConfig { scan_step: args.scan_step, ..JostConfig::default() }.with_l(args.l).with_h(args.h);
    let mut numeric = find_bound_states_with(&*pot, emin, &cfg);
    let reference: Vec<Complex64> = sp.states.iter().map(|s| Complex64::new(s.energy, 0.0)).collect();
    numeric.match_to(&reference, 1e-6);

    let mut table = Table::new(&["E", "E_im", "source", "family", "n", "residual", "deltaE"]);
    for s in &sp.states {
        table.push(vec![f(s.energy), f(0.0), "analytic".into(), s.family.label().into(), s.n.to_string(), String::new(), String::new()]);
    }
    for l in &sp.complex_levels {
        table.push(vec![f(l.energy.re), f(l.energy.im), "analytic-complex".into(), String::new(), l.n.to_string(), String::new(), String::new()]);
    }
    for l in &numeric.levels {
        let (family, n, delta) = match l.matched {
            Some(i) => (
                sp.states[i].family.label().to_string(),
                sp.states[i].n.to_string(),
                f((l.energy - reference[i]).norm()),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        table.push(vec![f(l.energy.re), f(l.energy.im), "numeric".into(), family, n, f(l.residual), delta]);
    }

    let results = json!({
        "class": p.class().label(),
        "analytic": analytic_json(&sp),
        "numeric": {
            "levels": numeric.levels.iter().map(|l| level_json(l, &reference)).collect::<Vec<_>>(),
            "nearThreshold": numeric.near_threshold.iter().map(|l| level_json(l, &reference)).collect::<Vec<_>>(),
            "unconverged": numeric.unconverged().len(),
            "allMatched": numeric.levels.len() == reference.len() && numeric.levels.iter().all(|l| l.matched.is_some()),
        },
    });
    let meta = json!({
        "scan": { "emin": emin, "emax": -cfg.threshold, "scanStep": cfg.scan_step, "L": cfg.l, "h": cfg.h },
    });
    let doc = document("spectrum", params_json(&p, args.params.flip_q), results, meta);
    emit(&args.output, &doc, &table)
}
