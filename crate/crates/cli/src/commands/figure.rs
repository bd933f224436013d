use num_complex::Complex64;
use scarf_core::eigenfunctions::sample;
use scarf_core::numeric::{find_bound_states, square_well_amplitudes_at, square_well_reference};
use scarf_core::scattering::analytic::wavenumber;
use scarf_core::scattering::{pole_scan, scatter_analytic, spectral_singularity_scan};
use scarf_core::{Eigenstate, NormMode, Potential, ScarfParams64, SquareWell64};
use serde_json::{json, Value};

use super::poles::report_json;
use super::scatter::energy_grid;
use super::spectrum::analytic_json;
use crate::args::{preset, FigureArgs, Preset, Variant};
use crate::error::CliError;
use crate::output::{document, f, json_text, num, params_json, write_file, Table};

const X_RANGE: f64 = 8.0;
const X_STEP: f64 = 0.01;

fn potential_figure(p: &ScarfParams64) -> Result<(Table, Value), CliError> {
    let sp = spectrum_for(p)?;
    let ground = sp
        .states
        .iter()
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .ok_or_else(|| CliError::Unsupported("no bound state to plot".to_string()))?;
    let grid = sample(&Eigenstate::from_bound(ground), X_RANGE, X_STEP, NormMode::MaxAbsUnit)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut table = Table::new(&["x", "V_re", "V_im", "psi0_re", "psi0_im"]);
    for (x, z) in grid.x.iter().zip(&grid.psi) {
        let v = p.eval(*x);
        table.push(vec![f(*x), f(v.re), f(v.im), f(z.re), f(z.im)]);
    }
    let numeric = find_bound_states(p, p.scan_floor(), 0.01);
    let results = json!({
        "analytic": analytic_json(&sp),
        "numeric": numeric.levels.iter().map(|l| json!({ "re": num(l.energy.re), "im": num(l.energy.im) })).collect::<Vec<_>>(),
        "plotted": { "family": ground.family.label(), "n": ground.n, "energy": ground.energy, "normalization": "max-abs" },
    });
    Ok((table, results))
}

fn spectrum_for(p: &ScarfParams64) -> Result<scarf_core::Spectrum64, CliError> {
    super::spectrum::analytic_or_refuse(p)
}

fn default_range(lowest: f64, args: &FigureArgs) -> (f64, f64) {
    let emin = args.emin.unwrap_or((lowest - 1.0).floor());
    let emax = args.emax.unwrap_or(5.0);
    (emin, emax)
}

fn scattering_figure(p: &ScarfParams64, args: &FigureArgs) -> Result<(Table, Value), CliError> {
    let sp = spectrum_for(p)?;
    let bound = sp.sorted_energies();
    let (emin, emax) = default_range(bound.first().copied().unwrap_or(-1.0), args);
    let mut table = Table::new(&["E", "T", "RLeft", "RRight"]);
    for e in energy_grid(emin, emax, args.points, false)? {
        let s = scatter_analytic(p, e).map_err(|err| CliError::Usage(err.to_string()))?;
        table.push(vec![f(e), f(s.transmission()), f(s.reflection_left()), f(s.reflection_right())]);
    }
    let poles = pole_scan(p, emin.min(-1.001e-3));
    let singular = spectral_singularity_scan(p, emax.max(50.0));
    let results = json!({
        "boundStates": bound,
        "poles": poles.iter().map(report_json).collect::<Vec<_>>(),
        "spectralSingularities": singular,
        "range": { "emin": emin, "emax": emax },
    });
    Ok((table, results))
}

fn square_well_figure(args: &FigureArgs) -> Result<(Table, Value, Value), CliError> {
    let (depth, width) = (5.0, 4.0);
    let well = SquareWell64::new(depth, width);
    let reference = square_well_reference(depth, width);
    let (emin, emax) = default_range(-depth, args);
    let mut table = Table::new(&["E", "T", "RLeft", "RRight"]);
    for e in energy_grid(emin, emax, args.points, false)? {
        let (t, r) = square_well_amplitudes_at(&well, wavenumber(Complex64::new(e, 0.0)));
        let (tt, rr) = (t.norm_sqr(), r.norm_sqr());
        table.push(vec![f(e), f(tt), f(rr), f(rr)]);
    }
    let numeric = find_bound_states(&well, -depth + 1e-3, 0.01);
    let poles: Vec<Value> = numeric
        .levels
        .iter()
        .map(|l| {
            let matched = reference.iter().position(|r| (r - l.energy.re).abs() <= 1e-6);
            json!({ "E": l.energy.re, "which": ["T", "RLeft", "RRight"], "matchedBoundState": matched })
        })
        .collect();
    let results = json!({
        "boundStates": reference,
        "poles": poles,
        "range": { "emin": emin, "emax": emax },
        "quotedValues": [-4.59, -3.38, -1.52],
    });
    let params = json!({ "squareWell": { "depth": depth, "width": width } });
    Ok((table, results, params))
}

pub fn run(args: &FigureArgs) -> Result<(), CliError> {
    if args.variant.is_some() && args.number != 4 {
        return Err(CliError::Usage("--variant only applies to figure 4".to_string()));
    }
    let (stem, table, results, params) = match args.number {
        1..=3 => {
            let p = preset([Preset::One, Preset::Two, Preset::Three][usize::from(args.number - 1)]);
            let (t, r) = potential_figure(&p)?;
            (format!("figure{}", args.number), t, r, params_json(&p, false))
        }
        4 => match args.variant.unwrap_or(Variant::A) {
            Variant::A => {
                let (t, r, params) = square_well_figure(args)?;
                ("figure4a".to_string(), t, r, params)
            }
            Variant::B => {
                let p = preset(Preset::Pt);
                let (t, r) = scattering_figure(&p, args)?;
                ("figure4b".to_string(), t, r, params_json(&p, false))
            }
        },
        _ => {
            let p = preset([Preset::One, Preset::Two, Preset::Three][usize::from(args.number - 5)]);
            let (t, r) = scattering_figure(&p, args)?;
            (format!("figure{}", args.number), t, r, params_json(&p, false))
        }
    };
    std::fs::create_dir_all(&args.out).map_err(|source| CliError::Io { path: args.out.clone(), source })?;
    let csv_path = args.out.join(format!("{stem}.csv"));
    let json_path = args.out.join(format!("{stem}.json"));
    write_file(&csv_path, &table.to_csv())?;
    let meta = json!({ "figure": stem, "csv": format!("{stem}.csv"), "columns": table.header, "rows": table.rows.len() });
    write_file(&json_path, &json_text(&document("figure", params, results, meta)))?;
    println!("{}", csv_path.display());
    println!("{}", json_path.display());
    Ok(())
}
