use scarf_core::scattering::{scatter_analytic, ScatterConfig, ScatterSolver};
use scarf_core::ScatterPoint64;
use serde_json::{json, Value};

use crate::args::{Backend, ScatterArgs};
use crate::error::CliError;
use crate::fault::numeric_potential;
use crate::output::{cplx, document, emit, f, num, params_json, Table};

/// `points` energies from `emin` to `emax`, skipping `E = 0`.
pub fn energy_grid(emin: f64, emax: f64, points: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if !(emin.is_finite() && emax.is_finite() && emin < emax) || points < 2 {
        return Err(CliError::Usage("need emin < emax and at least two points".to_string()));
    }
    if log && emin <= 0.0 {
        return Err(CliError::Usage("--log needs emin > 0".to_string()));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let u = i as f64 / last;
            if log {
                emin * (emax / emin).powf(u)
            } else {
                emin + (emax - emin) * u
            }
        })
        .filter(|e| e.abs() > 1e-12)
        .collect())
}

pub fn point_json(s: &ScatterPoint64) -> Value {
    json!({
        "E": s.energy,
        "t": cplx(s.t),
        "rLeft": cplx(s.r_left),
        "rRight": cplx(s.r_right),
        "T": num(s.transmission()),
        "RLeft": num(s.reflection_left()),
        "RRight": num(s.reflection_right()),
        "singular": s.singular,
    })
}

pub fn point_row(s: &ScatterPoint64, source: &str) -> Vec<String> {
    vec![
        f(s.energy),
        source.to_string(),
        f(s.transmission()),
        f(s.reflection_left()),
        f(s.reflection_right()),
        f(s.t.re),
        f(s.t.im),
        f(s.r_left.re),
        f(s.r_left.im),
        f(s.r_right.re),
        f(s.r_right.im),
        s.singular.to_string(),
    ]
}

pub const POINT_HEADER: [&str; 12] =
    ["E", "backend", "T", "RLeft", "RRight", "t_re", "t_im", "rLeft_re", "rLeft_im", "rRight_re", "rRight_im", "singular"];

pub fn run(args: &ScatterArgs) -> Result<(), CliError> {
    let p = args.params.resolve()?;
    let energies = energy_grid(args.emin, args.emax, args.points, args.log)?;
    let numeric = matches!(args.backend, Backend::Numeric | Backend::Both);
    let analytic = matches!(args.backend, Backend::Analytic | Backend::Both);
    if numeric && energies.iter().any(|e| *e <= 0.0) {
        return Err(CliError::Usage("the numeric backend needs emin > 0".to_string()));
    }
    if numeric && !(args.l > 0.0 && args.h > 0.0 && args.h < args.l) {
        return Err(CliError::Usage("need 0 < h < L".to_string()));
    }
    if analytic && args.params.flip_q {
        return Err(CliError::Usage("--flip-q only affects the numeric backend".to_string()));
    }

    let pot = numeric_potential(&p, args.params.flip_q);
    let solver = numeric.then(|| ScatterSolver::new(&*pot, &ScatterConfig { l: args.l, h: args.h }));
    let mut table = Table::new(&POINT_HEADER);
    let mut points = Vec::new();
    let mut worst: Option<f64> = None;
    for &e in &energies {
        let a = if analytic { Some(scatter_analytic(&p, e).map_err(|err| CliError::Usage(err.to_string()))?) } else { None };
        let n = match &solver {
            Some(s) => Some(s.scatter(e).map_err(|err| CliError::Usage(err.to_string()))?),
            None => None,
        };
        let mut entry = serde_json::Map::new();
        entry.insert("E".into(), json!(e));
        if let Some(a) = &a {
            table.push(point_row(a, "analytic"));
            entry.insert("analytic".into(), point_json(a));
        }
        if let Some(n) = &n {
            table.push(point_row(n, "numeric"));
            let mut v = point_json(n);
            v["tRight"] = cplx(n.t_right);
            entry.insert("numeric".into(), v);
        }
        if let (Some(a), Some(n)) = (&a, &n) {
            let rel = |x: num_complex::Complex64, y: num_complex::Complex64| (x - y).norm() / y.norm();
            let d = rel(n.t, a.t).max(rel(n.r_left, a.r_left)).max(rel(n.r_right, a.r_right));
            worst = Some(worst.map_or(d, |w: f64| w.max(d)));
            entry.insert("relativeDeviation".into(), num(d));
        }
        points.push(Value::Object(entry));
    }
    let results = json!({ "points": points, "maxRelativeDeviation": worst.map(num) });
    let meta = json!({
        "grid": { "emin": args.emin, "emax": args.emax, "points": energies.len(), "log": args.log },
        "numeric": numeric.then(|| json!({ "L": args.l, "h": args.h })),
        "conventions": "k = +sqrt(E); left incidence e^{ikx} + r_L e^{-ikx} -> t e^{ikx}",
    });
    let doc = document("scatter", params_json(&p, args.params.flip_q), results, meta);
    emit(&args.output, &doc, &table)
}
