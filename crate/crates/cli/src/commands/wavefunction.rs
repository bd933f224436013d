use scarf_core::eigenfunctions::{residual_in, sample};
use scarf_core::{BoundState64, Eigenstate, NormMode};
use serde_json::json;

use super::spectrum::{analytic_or_refuse, branch_label, solution_label};
use crate::args::{NormArg, WavefunctionArgs};
use crate::error::CliError;
use crate::fault::numeric_potential;
use crate::output::{cplx, document, emit, f, num, params_json, Table};

fn pick(states: &[BoundState64], n: usize, branch: Option<u8>) -> Option<BoundState64> {
    let matching: Vec<&BoundState64> = states
        .iter()
        .filter(|s| s.n == n && branch.is_none_or(|b| s.quasi_parity() == b))
        .collect();
    matching
        .iter()
        .find(|s| s.quasi_parity() == 1)
        .or_else(|| matching.first())
        .map(|s| **s)
}

pub fn run(args: &WavefunctionArgs) -> Result<(), CliError> {
    let p = args.params.resolve()?;
    let sp = analytic_or_refuse(&p)?;
    let state = pick(&sp.states, args.n, args.branch).ok_or_else(|| {
        CliError::Usage(format!(
            "no bound state with n = {}{} (the spectrum has {} state(s))",
            args.n,
            args.branch.map(|b| format!(" in branch {b}")).unwrap_or_default(),
            sp.len()
        ))
    })?;
    let mode = match args.norm {
        NormArg::SelfProduct => NormMode::SelfProductUnit,
        NormArg::MaxAbs => NormMode::MaxAbsUnit,
    };
    let e = Eigenstate::from_bound(&state);
    let grid = sample(&e, args.l, args.h, mode).map_err(|err| CliError::Usage(err.to_string()))?;
    let pot = numeric_potential(&p, args.params.flip_q);
    let lim = args.l.min(12.0);
    let res = residual_in(&e, &*pot, -lim, lim, args.h).map_err(|err| CliError::Usage(err.to_string()))?;

    let mut table = Table::new(&["x", "psi_re", "psi_im", "psi_abs", "V_re", "V_im"]);
    for (x, z) in grid.x.iter().zip(&grid.psi) {
        let v = pot.value(*x);
        table.push(vec![f(*x), f(z.re), f(z.im), f(z.norm()), f(v.re), f(v.im)]);
    }
    let results = json!({
        "state": {
            "family": state.family.label(),
            "quasiParity": state.quasi_parity(),
            "n": state.n,
            "energy": state.energy,
            "branch": branch_label(state.branch.branch),
            "solution": solution_label(state.solution),
        },
        "normMode": match grid.norm_mode { NormMode::SelfProductUnit => "self-product", NormMode::MaxAbsUnit => "max-abs" },
        "fellBack": grid.fell_back,
        "scale": cplx(grid.scale),
        "selfProduct": cplx(grid.self_product()),
        "tailRatio": num(grid.tail_ratio()),
        "recommendedHalfWidth": num(e.recommended_half_width(1e-8)),
        "residual": num(res),
        "x": grid.x,
        "psiRe": grid.psi.iter().map(|z| num(z.re)).collect::<Vec<_>>(),
        "psiIm": grid.psi.iter().map(|z| num(z.im)).collect::<Vec<_>>(),
    });
    let meta = json!({ "grid": { "L": grid.l, "h": grid.h, "samples": grid.len() } });
    let doc = document("wavefunction", params_json(&p, args.params.flip_q), results, meta);
    emit(&args.output, &doc, &table)
}
