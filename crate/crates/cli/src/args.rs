use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use scarf_core::{ScarfParams64, V1V2Params64};

use crate::error::CliError;

/// Bound states, eigenfunctions and scattering data for the complex Scarf II
/// potential `V(x) = P sech²x + Q sech x tanh x`.
#[derive(Debug, Parser)]
#[command(name = "scarf", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form spectrum together with the numeric Jost-Wronskian search.
    Spectrum(SpectrumArgs),
    /// Samples one eigenfunction on a uniform grid.
    Wavefunction(WavefunctionArgs),
    /// Transmission and reflection coefficients on an energy grid.
    Scatter(ScatterArgs),
    /// Negative-energy poles of T, RLeft, RRight and the spectral-singularity scan.
    Poles(PolesArgs),
    /// Runs the verification suite.
    Verify(VerifyArgs),
    /// Writes the data behind one of the seven figures.
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "pt")]
    Pt,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// A as a complex literal such as `2.7`, `-2.3+1.1i` or `0.5i`.
    #[arg(long = "A", allow_hyphen_values = true, value_name = "COMPLEX")]
    pub a: Option<String>,
    /// B as a complex literal.
    #[arg(long = "B", allow_hyphen_values = true, value_name = "COMPLEX")]
    pub b: Option<String>,
    /// Parameter set of the Case 1, 2, 3 figures or the PT example A=1.9, B=1.2.
    #[arg(long = "case", value_enum)]
    pub case: Option<Preset>,
    /// PT-symmetric parametrization `P = -(b²+a²+a)`, `Q = ib(2a+1)`.
    #[arg(long = "pt", allow_hyphen_values = true, value_name = "a,b")]
    pub pt: Option<String>,
    /// `P = -V1`, `Q = iV2`.
    #[arg(long = "v1v2", allow_hyphen_values = true, value_name = "V1,V2")]
    pub v1v2: Option<String>,
    /// Fault injection: the numerics see `-Q` instead of `Q`.
    #[arg(long = "flip-q", hide = true)]
    pub flip_q: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Lower end of the numeric scan; defaults to `-(|A|+|B|+1)²`.
    #[arg(long, allow_hyphen_values = true)]
    pub emin: Option<f64>,
    /// Energy step of the numeric scan.
    #[arg(long = "scan-step", default_value_t = 0.01)]
    pub scan_step: f64,
    /// Half-width of the integration interval.
    #[arg(long = "L", default_value_t = 10.0)]
    pub l: f64,
    /// Integration step.
    #[arg(long = "h", default_value_t = 1e-3)]
    pub h: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    /// `∫ψ² dx = 1`.
    SelfProduct,
    /// `max|ψ| = 1`.
    MaxAbs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Quantum number within the family.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Family when both are present: 1 is `-(n-A)²` or `-(n+A+1)²`, 2 is `-(n-|B|+1/2)²`.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub branch: Option<u8>,
    #[arg(long = "L", default_value_t = 15.0)]
    pub l: f64,
    #[arg(long = "h", default_value_t = 1e-3)]
    pub h: f64,
    #[arg(long, value_enum, default_value = "self-product")]
    pub norm: NormArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Analytic,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.05)]
    pub emin: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 50.0)]
    pub emax: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Logarithmic spacing (positive ranges only).
    #[arg(long)]
    pub log: bool,
    #[arg(long, value_enum, default_value = "analytic")]
    pub backend: Backend,
    /// Half-width of the numeric integration interval.
    #[arg(long = "L", default_value_t = 12.0)]
    pub l: f64,
    #[arg(long = "h", default_value_t = 1e-3)]
    pub h: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PolesArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Lower end of the pole scan; defaults to `-(|A|+|B|+1)²`.
    #[arg(long, allow_hyphen_values = true)]
    pub emin: Option<f64>,
    /// Upper end of the positive-energy singularity scan.
    #[arg(long, default_value_t = 50.0)]
    pub emax: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Run only these checks (comma separated).
    #[arg(long, value_delimiter = ',', value_name = "CHECK")]
    pub only: Vec<String>,
    /// Fault injection: every numeric check sees `-Q` instead of `Q`.
    #[arg(long = "flip-q", hide = true)]
    pub flip_q: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    A,
    B,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=7))]
    pub number: u8,
    /// Figure 4 only: `a` is the square well, `b` the PT example.
    #[arg(long, value_enum)]
    pub variant: Option<Variant>,
    #[arg(long, allow_hyphen_values = true)]
    pub emin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub emax: Option<f64>,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (no spaces; `i` or `j`).
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("cannot parse complex number `{s}`"));
    let t = s.trim();
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(bad());
    }
    let num = |u: &str| -> Result<f64, CliError> {
        let v: f64 = u.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(num(t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let coef = |u: &str| match u {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(u),
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, coef(&body[k..])?)),
        None => Ok(Complex64::new(0.0, coef(body)?)),
    }
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || CliError::Usage(format!("{what} expects two comma-separated reals, got `{s}`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let x: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let y: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    if !x.is_finite() || !y.is_finite() {
        return Err(bad());
    }
    Ok((x, y))
}

pub fn preset(p: Preset) -> ScarfParams64 {
    match p {
        Preset::One => ScarfParams64::new(Complex64::new(2.7, 0.0), Complex64::new(1.2, 1.4)),
        Preset::Two => ScarfParams64::new(Complex64::new(-2.7, 0.0), Complex64::new(1.2, 1.4)),
        Preset::Three => ScarfParams64::new(Complex64::new(-2.3, 1.1), Complex64::new(3.1, 0.0)),
        Preset::Pt => ScarfParams64::pt_symmetric(1.9, 1.2),
    }
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<ScarfParams64, CliError> {
        let explicit = self.a.is_some() || self.b.is_some();
        let chosen = [explicit, self.case.is_some(), self.pt.is_some(), self.v1v2.is_some()]
            .iter()
            .filter(|x| **x)
            .count();
        if chosen != 1 {
            return Err(CliError::Usage(
                "give exactly one of --A/--B, --case, --pt or --v1v2".to_string(),
            ));
        }
        if explicit {
            let (Some(a), Some(b)) = (&self.a, &self.b) else {
                return Err(CliError::Usage("--A and --B must be given together".to_string()));
            };
            return Ok(ScarfParams64::new(parse_complex(a)?, parse_complex(b)?));
        }
        if let Some(c) = self.case {
            return Ok(preset(c));
        }
        if let Some(s) = &self.pt {
            let (a, b) = parse_pair(s, "--pt")?;
            return Ok(ScarfParams64::pt_symmetric(a, b));
        }
        let (v1, v2) = parse_pair(self.v1v2.as_deref().unwrap_or_default(), "--v1v2")?;
        let v = V1V2Params64::new(v1, v2).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(ScarfParams64::from_v1v2(v))
    }
}
