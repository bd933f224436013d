use scarf_core::scattering::{pole_scan, spectral_singularity_scan};
use scarf_core::{PoleReport64, Potential, SymmetryClass};
use serde_json::{json, Value};

use super::spectrum::analytic_or_refuse;
use crate::args::PolesArgs;
use crate::error::CliError;
use crate::output::{document, emit, f, num, params_json, Table};

pub fn report_json(r: &PoleReport64) -> Value {
    json!({
        "E": r.energy,
        "which": r.which.iter().map(|c| c.label()).collect::<Vec<_>>(),
        "matchedBoundState": r.matched_bound_state,
        "coincidenceTol": r.coincidence_tol,
        "strengthLeft": r.strength_left.map(num),
        "strengthRight": r.strength_right.map(num),
    })
}

pub fn report_row(r: &PoleReport64) -> Vec<String> {
    vec![
        f(r.energy),
        r.which.iter().map(|c| c.label()).collect::<Vec<_>>().join("+"),
        r.matched_bound_state.map(|i| i.to_string()).unwrap_or_default(),
        r.strength_left.map(f).unwrap_or_default(),
        r.strength_right.map(f).unwrap_or_default(),
    ]
}

pub const POLE_HEADER: [&str; 5] = ["E", "which", "matchedBoundState", "strengthLeft", "strengthRight"];

pub fn run(args: &PolesArgs) -> Result<(), CliError> {
    let p = args.params.resolve()?;
    if args.params.flip_q {
        return Err(CliError::Usage("--flip-q has no effect on the closed-form pole scan".to_string()));
    }
    let bound = if p.class() == SymmetryClass::Generic {
        Vec::new()
    } else {
        analytic_or_refuse(&p)?.sorted_energies()
    };
    let emin = args.emin.unwrap_or_else(|| p.scan_floor());
    if !(emin < -1e-3) {
        return Err(CliError::Usage("--emin must be below -1e-3".to_string()));
    }
    let reports = pole_scan(&p, emin);
    let singular = spectral_singularity_scan(&p, args.emax);

    let mut table = Table::new(&POLE_HEADER);
    for r in &reports {
        table.push(report_row(r));
    }
    for e in &singular {
        table.push(vec![f(*e), "spectral-singularity".into(), String::new(), String::new(), String::new()]);
    }
    let results = json!({
        "poles": reports.iter().map(report_json).collect::<Vec<_>>(),
        "boundStates": bound,
        "spectralSingularities": singular,
    });
    let meta = json!({ "scan": { "emin": emin, "emax": -1e-3, "singularityEmax": args.emax } });
    let doc = document("poles", params_json(&p, false), results, meta);
    emit(&args.output, &doc, &table)
}
