use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eigenscheme::algorithms::{basis_change_search, characterize, fit_tensor_to_points, BasisChange};
use eigenscheme::geometry::{collinearity_report, configuration_report, fiber_line, gradient_point, laguerre, rank_a_omega};
use eigenscheme::hilbert::{dimension_probe, hilbert_table, predicted_betti};
use eigenscheme::io;
use eigenscheme::linalg::RatMatrix;
use eigenscheme::point::ProjPoint;
use eigenscheme::sample::{random_tensor, DEFAULT_BOUND};
use eigenscheme::solver::{fermat_eigenpoints, solve_eigenpoints_p1, solve_eigenpoints_p2, EigenpointSet};
use eigenscheme::tensor::{w_count, AnyTensor, DetTuple, DEFAULT_TOL};
use eigenscheme::Error;

#[derive(Parser)]
#[command(name = "eigenscheme", version, about = "Eigenschemes of partially symmetric tensors")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Numeric tolerance for floating points.
    #[arg(long, default_value_t = DEFAULT_TOL, global = true)]
    tol: f64,
    /// Last degree of the Hilbert comparison.
    #[arg(long, global = true)]
    window: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tensor to its tuple of 2x2 minors.
    Generators {
        /// Tensor JSON file, `-` for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
    },
    /// Test whether forms are the minors of some tensor and recover it.
    CheckEquations {
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Test against symmetric tensors (also settable by `"symmetric": true`).
        #[arg(long)]
        symmetric: bool,
        /// When the identities fail, search for a constant change of basis.
        #[arg(long)]
        search_basis: bool,
    },
    /// Look for a tensor having all given points as eigenpoints.
    FitPoints {
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(long, short)]
        degree: u32,
        #[arg(long)]
        symmetric: bool,
    },
    /// Predicted and actual Hilbert function of a tensor's eigenscheme.
    Hilbert {
        #[arg(default_value = "-")]
        input: PathBuf,
    },
    /// Predicted graded Betti numbers.
    Betti { n: usize, d: u32 },
    /// Eigenpoints of a tensor on the projective line or plane.
    Solve {
        #[arg(default_value = "-")]
        input: PathBuf,
    },
    /// Eigenpoints of the Fermat tensor.
    Fermat { n: usize, d: u32 },
    /// Collinearity (and, with --curves, plane curve) conditions on points.
    Geometry {
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(long, short)]
        degree: u32,
        #[arg(long)]
        curves: bool,
    },
    /// Plücker coordinates of the line through a point and its image.
    Laguerre {
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Comma-separated coordinates such as `1,2,-1/3`, or a JSON array.
        #[arg(long, short, allow_hyphen_values = true)]
        point: String,
    },
    /// Number of eigenpoints of a general tensor.
    Count { n: usize, d: u32 },
    /// Random tensor with integer coefficients (requires --seed).
    Sample {
        n: usize,
        d: u32,
        #[arg(long)]
        symmetric: bool,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
    },
}

/// Command output and whether the mathematical verdict is positive.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, ok: true }
    }
}

enum Failure {
    /// A well-formed question with a negative answer.
    Verdict(String),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PositiveDimensional | Error::Indeterminate | Error::NotDecomposable { .. } => {
                Failure::Verdict(e.to_string())
            }
            other => Failure::Malformed(other.to_string()),
        }
    }
}

type Run = std::result::Result<Report, Failure>;

fn read_json(path: &PathBuf) -> std::result::Result<Value, Failure> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| Failure::Malformed(format!("invalid JSON: {e}")))
}

fn read_tuple_or_tensor(v: &Value) -> std::result::Result<DetTuple, Failure> {
    if v.get("entries").is_some() {
        Ok(io::tuple_from_json(v)?)
    } else {
        Ok(io::tensor_from_json(v)?.det_tuple())
    }
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| json!(m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>())).collect())
}

fn tuple_text(f: &DetTuple) -> String {
    let mut out = String::new();
    for ((i, j), e) in eigenscheme::tensor::pairs(f.n()).into_iter().zip(f.entries()) {
        let _ = writeln!(out, "f_{i}{j} = {e}");
    }
    out
}

fn tensor_text(t: &AnyTensor) -> String {
    match t {
        AnyTensor::Symmetric(s) => format!("symmetric n={} d={}: {}\n", t.n(), t.d(), s.form()),
        AnyTensor::PartiallySymmetric(p) => {
            let mut out = format!("partially symmetric n={} d={}\n", t.n(), t.d());
            for (i, g) in p.forms().iter().enumerate() {
                let _ = writeln!(out, "g_{i} = {g}");
            }
            out
        }
    }
}

fn point_text(p: &ProjPoint) -> String {
    match p {
        ProjPoint::Rational(c) => format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" : ")),
        ProjPoint::Complex(c) => format!(
            "({})",
            c.coords().iter().map(|z| format!("{:.12}{:+.12}i", z.re, z.im)).collect::<Vec<_>>().join(" : ")
        ),
    }
}

fn eigenpoints_text(set: &EigenpointSet) -> String {
    let mut out = format!("{} points\n", set.len());
    for p in &set.points {
        let _ = write!(out, "{}", point_text(&p.point));
        if p.multiplicity > 1 {
            let _ = write!(out, " x{}", p.multiplicity);
        }
        if let Some(r) = p.residual {
            let _ = write!(out, "  residual {r:.2e}{}", if p.polished { "" } else { " (unpolished)" });
        }
        out.push('\n');
    }
    for w in &set.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn parse_point(s: &str) -> std::result::Result<ProjPoint, Failure> {
    if s.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(s).map_err(|e| Failure::Malformed(format!("invalid point: {e}")))?;
        return Ok(io::point_from_json(&v)?);
    }
    let coords = s.split(',').map(io::parse_rational).collect::<eigenscheme::Result<Vec<_>>>()?;
    Ok(ProjPoint::rational(coords)?)
}

fn check_equations(cli: &Cli, v: &Value, symmetric_flag: bool, search: bool) -> Run {
    let symmetric = symmetric_flag || v.get("symmetric").and_then(Value::as_bool).unwrap_or(false);
    let f = io::tuple_from_json(v)?;
    let verdict = characterize(&f, symmetric);
    let passes = verdict.koszul_ok && (!symmetric || verdict.derham_ok);
    let mut json = json!({
        "koszul": verdict.koszul_ok,
        "derham": verdict.derham_ok,
        "symmetric": symmetric,
        "recovered": verdict.recovered.as_ref().map(io::tensor_to_json),
    });
    let mut text = format!(
        "koszul identities: {}\nde Rham identities: {}\n",
        if verdict.koszul_ok { "hold" } else { "fail" },
        if verdict.derham_ok { "hold" } else { "fail" }
    );
    if let Some(t) = &verdict.recovered {
        text.push_str("recovered ");
        text.push_str(&tensor_text(t));
    }
    let mut ok = passes;
    if !passes && search {
        let s = basis_change_search(f.entries(), symmetric, cli.seed.unwrap_or(0))?;
        let (outcome, line) = match &s.outcome {
            BasisChange::Found { m, f } => {
                ok = true;
                (json!({"status": "found", "matrix": matrix_json(m), "tuple": io::tuple_to_json(f)}), format!("basis change found\n{}", tuple_text(f)))
            }
            BasisChange::NoneExists => (json!({"status": "none_exists"}), "no invertible basis change exists\n".into()),
            BasisChange::Inconclusive { grid_points } => (
                json!({"status": "inconclusive", "grid_points": grid_points.to_string()}),
                format!("basis change search inconclusive ({grid_points} grid points)\n"),
            ),
        };
        json["basis_change"] = json!({"solution_dim": s.solution_dim, "outcome": outcome});
        text.push_str(&line);
    }
    Ok(Report { json, text, ok })
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Generators { input } => {
            let t = io::tensor_from_json(&read_json(input)?)?;
            let f = t.det_tuple();
            Ok(Report::ok(io::tuple_to_json(&f), tuple_text(&f)))
        }
        Command::CheckEquations { input, symmetric, search_basis } => {
            check_equations(cli, &read_json(input)?, *symmetric, *search_basis)
        }
        Command::FitPoints { input, degree, symmetric } => {
            let pts = io::points_from_json(&read_json(input)?)?;
            let r = fit_tensor_to_points(&pts, *degree, *symmetric)?;
            let json = json!({
                "found": r.found,
                "kernel_dim": r.kernel_dim,
                "trivial_dim": r.trivial_dim,
                "witness": r.witness.as_ref().map(io::tensor_to_json),
            });
            let mut text = format!("kernel dimension {} (trivial {})\n", r.kernel_dim, r.trivial_dim);
            match &r.witness {
                Some(t) => text.push_str(&format!("witness {}", tensor_text(t))),
                None => text.push_str("no tensor outside the trivial family\n"),
            }
            Ok(Report { json, text, ok: r.found })
        }
        Command::Hilbert { input } => {
            let f = read_tuple_or_tensor(&read_json(input)?)?;
            let rows = hilbert_table(&f, cli.window)?;
            let probe = dimension_probe(&f);
            let agree = rows.iter().all(|r| r.agree);
            let mut text = String::from("e\tpredicted\tactual\n");
            for r in &rows {
                let _ = writeln!(text, "{}\t{}\t{}{}", r.degree, r.predicted, r.actual, if r.agree { "" } else { "\t*" });
            }
            let json = json!({
                "n": f.n(),
                "d": f.d(),
                "agree": agree,
                "zero_dimensional": probe.is_zero_dimensional,
                "degree": probe.degree.map(|x| x.to_string()),
                "table": rows.iter().map(|r| json!({
                    "e": r.degree, "predicted": r.predicted.to_string(), "actual": r.actual.to_string(), "agree": r.agree
                })).collect::<Vec<_>>(),
            });
            Ok(Report { json, text, ok: agree })
        }
        Command::Betti { n, d } => {
            let b = predicted_betti(*n, *d)?;
            let modules: Vec<Value> = (1..=*n)
                .map(|i| json!({"index": i, "summands": b.graded(i).iter().map(|(t, m)| json!({"twist": t, "multiplicity": m.to_string()})).collect::<Vec<_>>()}))
                .collect();
            Ok(Report::ok(json!({"n": n, "d": d, "modules": modules}), b.to_string()))
        }
        Command::Solve { input } => {
            let t = io::tensor_from_json(&read_json(input)?)?.to_partially_symmetric();
            let set = match t.n() {
                1 => solve_eigenpoints_p1(&t)?,
                2 => solve_eigenpoints_p2(&t, cli.tol)?,
                n => return Err(Failure::Malformed(format!("no numeric solver for n = {n}; only n = 1, 2"))),
            };
            let ok = set.points.iter().all(|p| p.polished) && set.warnings.is_empty();
            Ok(Report { json: serde_json::to_value(&set).expect("serializable"), text: eigenpoints_text(&set), ok })
        }
        Command::Fermat { n, d } => {
            let set = fermat_eigenpoints(*n, *d)?;
            Ok(Report::ok(serde_json::to_value(&set).expect("serializable"), eigenpoints_text(&set)))
        }
        Command::Geometry { input, degree, curves } => {
            let pts = io::points_from_json(&read_json(input)?)?;
            let r = if *curves { configuration_report(&pts, *degree)? } else { collinearity_report(&pts, *degree)? };
            let mut text = String::new();
            for l in &r.collinear_violations {
                let _ = writeln!(text, "violation: {} points on a line {:?}", l.points.len(), l.points);
            }
            for l in &r.sharp_lines {
                let _ = writeln!(text, "sharp line: {:?}", l.points);
            }
            for c in &r.curve_candidates {
                let _ = writeln!(text, "degree {} curve {} through {:?}", c.k, c.curve, c.points);
            }
            let _ = writeln!(text, "{}", if r.is_clean() { "clean" } else { "violations found" });
            Ok(Report { json: serde_json::to_value(&r).expect("serializable"), text, ok: r.is_clean() })
        }
        Command::Laguerre { input, point } => {
            let t = io::tensor_from_json(&read_json(input)?)?.to_partially_symmetric();
            let p = parse_point(point)?;
            let omega = laguerre(&t, &p)?;
            let rank = rank_a_omega(&omega)?;
            let line = fiber_line(&omega)?;
            let g = gradient_point(&t, &p)?;
            let json = json!({
                "plucker": omega,
                "rank": rank,
                "gradient_point": g.as_ref().map(io::point_to_json),
                "spanning_points": line.spanning_points().map(|v| v.iter().map(io::point_to_json).collect::<Vec<_>>()),
            });
            let text = format!(
                "plucker {}\nrank {rank}\n",
                serde_json::to_string(&omega).expect("serializable")
            );
            Ok(Report::ok(json, text))
        }
        Command::Count { n, d } => {
            let w = w_count(*n, *d)?;
            Ok(Report::ok(json!({"w": w}), format!("{w}\n")))
        }
        Command::Sample { n, d, symmetric, bound } => {
            let seed = cli.seed.ok_or_else(|| Failure::Malformed("sample requires --seed".into()))?;
            let t = random_tensor(*n, *d, *symmetric, seed, *bound)?;
            Ok(Report::ok(io::tensor_to_json(&t), tensor_text(&t)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable")),
                Format::Text => print!("{}", r.text),
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(Failure::Verdict(msg)) => {
            match cli.format {
                Format::Json => println!("{}", json!({"verdict": false, "reason": msg})),
                Format::Text => println!("{msg}"),
            }
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
