//! Command-line front end.
//!
//! Subcommands: `frame` evaluates the moving frame and its constraint
//! residuals, `orbit` evaluates an orbit point and its pseudo-norm identity,
//! `surface` samples a congruence or ruled surface to CSV/OBJ/JSON, and
//! `verify` runs the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid flags or
//! configuration, 3 degenerate or out-of-domain computation, 4 incomplete
//! surface slice. `LORENTZ_CONCHOID_THREADS` caps worker threads (0 or
//! unset picks automatically); output is identical either way.

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::exit;

use lorentz_conchoid::dual::DualScalar;
use lorentz_conchoid::error::Error;
use lorentz_conchoid::expansions::{CaseParams, ReconcileReport};
use lorentz_conchoid::minkowski::Vec3L;
use lorentz_conchoid::motion::{
    frame_at, orbit_point, verify_frame_constraints, FramePose, FrameResiduals, LambdaSign,
    MotionConfig, OrbitSpec,
};
use lorentz_conchoid::sampler::{
    sample_congruence, to_mesh, write_csv, write_obj, Axis, Generator, GridSpec, SampleSet,
    SweepAxis,
};
use lorentz_conchoid::verify::{run_suite, SuiteId, SuiteReport, ALL_SUITES};

#[derive(Parser)]
#[command(
    name = "lorentz-conchoid",
    version,
    about = "Dual hyperbolic conchoidal motion: frames, orbits, line congruences and checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the moving frame at one parameter value
    Frame(FrameArgs),
    /// Evaluate an orbit point and its pseudo-norm identity residual
    Orbit(OrbitArgs),
    /// Sample a congruence or ruled surface and write it to a file
    Surface(SurfaceArgs),
    /// Run verification suites and print a JSON report
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct FrameArgs {
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    psi_star: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma_star: Option<f64>,
    /// Multiplier orientation: plus or minus
    #[arg(long)]
    branch: Option<String>,
    /// Output format: text or json
    #[arg(long)]
    format: Option<String>,
    /// JSON file with defaults; explicit flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct OrbitArgs {
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    psi_star: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma_star: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p_star: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q_star: Option<f64>,
    #[arg(long)]
    branch: Option<String>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SurfaceArgs {
    /// general | v1 | v1-sigma0 | v3 | v2 | v2-sigma0 | v2-case31
    #[arg(long)]
    case: Option<String>,
    /// lo:hi:n (n = 1 means the single value lo)
    #[arg(long, allow_hyphen_values = true)]
    psi_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    psi_star_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    ruling_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma_star: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p_star: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q_star: Option<f64>,
    /// Mesh row axis for OBJ output: psi or ruling
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    branch: Option<String>,
    /// Output path; the extension picks the format (.csv, .obj, .json)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// dual | lemma21 | frame | study | theorem31 | theorem32 | helicoid | reconcile | all
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Override the per-check thresholds (default: thresholds pinned in code)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn fail(code: i32, msg: &str) -> ! {
    eprintln!("error: {msg}");
    exit(code)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::IncompleteSlice { .. } => 4,
        Error::InvalidGrid { .. } => 2,
        _ => 3,
    }
}

/// Optional JSON defaults, merged beneath explicit flags.
struct ConfigFile(Option<serde_json::Value>);

impl ConfigFile {
    fn load(path: &Option<PathBuf>) -> Self {
        match path {
            None => ConfigFile(None),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .unwrap_or_else(|e| fail(2, &format!("cannot read config {}: {e}", p.display())));
                let value: serde_json::Value = serde_json::from_str(&text)
                    .unwrap_or_else(|e| fail(2, &format!("config {} is not valid JSON: {e}", p.display())));
                if !value.is_object() {
                    fail(2, "config file must hold a JSON object of flag defaults");
                }
                ConfigFile(Some(value))
            }
        }
    }

    fn f64(&self, key: &str) -> Option<f64> {
        self.0.as_ref().and_then(|v| v.get(key)).map(|v| {
            v.as_f64()
                .unwrap_or_else(|| fail(2, &format!("config key {key} must be a number")))
        })
    }

    fn string(&self, key: &str) -> Option<String> {
        self.0.as_ref().and_then(|v| v.get(key)).map(|v| {
            v.as_str()
                .unwrap_or_else(|| fail(2, &format!("config key {key} must be a string")))
                .to_string()
        })
    }

    fn u64(&self, key: &str) -> Option<u64> {
        self.0.as_ref().and_then(|v| v.get(key)).map(|v| {
            v.as_u64()
                .unwrap_or_else(|| fail(2, &format!("config key {key} must be an unsigned integer")))
        })
    }
}

fn require<T>(v: Option<T>, name: &str) -> T {
    v.unwrap_or_else(|| fail(2, &format!("missing required --{name}")))
}

fn parse_branch(s: Option<String>, default: LambdaSign) -> LambdaSign {
    match s.as_deref() {
        None => default,
        Some("plus") => LambdaSign::Plus,
        Some("minus") => LambdaSign::Minus,
        Some(other) => fail(2, &format!("unknown branch {other:?}, expected plus or minus")),
    }
}

fn parse_format(s: Option<String>) -> bool {
    // true = json
    match s.as_deref() {
        None | Some("text") => false,
        Some("json") => true,
        Some(other) => fail(2, &format!("unknown format {other:?}, expected text or json")),
    }
}

fn parse_range(s: &str, name: &str) -> Axis {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        fail(2, &format!("--{name} must look like lo:hi:n, got {s:?}"));
    }
    let lo: f64 = parts[0]
        .parse()
        .unwrap_or_else(|_| fail(2, &format!("--{name}: bad lower bound {:?}", parts[0])));
    let hi: f64 = parts[1]
        .parse()
        .unwrap_or_else(|_| fail(2, &format!("--{name}: bad upper bound {:?}", parts[1])));
    let count: usize = parts[2]
        .parse()
        .unwrap_or_else(|_| fail(2, &format!("--{name}: bad count {:?}", parts[2])));
    let axis = Axis::new(lo, hi, count);
    if let Err(e) = axis.validate() {
        fail(2, &format!("--{name}: {e}"));
    }
    axis
}

fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

fn dual_json(d: &DualScalar) -> serde_json::Value {
    json!({ "re": d.re, "du": d.du })
}

fn vec_json(v: &Vec3L) -> serde_json::Value {
    json!([v.c1, v.c2, v.c3])
}

fn dual_line(label: &str, d: &DualScalar) -> String {
    format!("{label:<22} {} + eps {}", fmt17(d.re), fmt17(d.du))
}

fn vec_line(label: &str, v: &Vec3L) -> String {
    format!(
        "{label:<22} [{}, {}, {}]",
        fmt17(v.c1),
        fmt17(v.c2),
        fmt17(v.c3)
    )
}

fn main() {
    // restore default SIGPIPE so `lorentz-conchoid ... | head` ends quietly
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    init_threads();
    match Cli::parse().cmd {
        Cmd::Frame(args) => cmd_frame(args),
        Cmd::Orbit(args) => cmd_orbit(args),
        Cmd::Surface(args) => cmd_surface(args),
        Cmd::Verify(args) => cmd_verify(args),
    }
}

fn init_threads() {
    if let Ok(v) = std::env::var("LORENTZ_CONCHOID_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn frame_or_exit(cfg: &MotionConfig, psi: DualScalar) -> (FramePose, FrameResiduals) {
    let pose = match frame_at(cfg, psi) {
        Ok(p) => p,
        Err(e) => fail(exit_code_for(&e), &e.to_string()),
    };
    let res = match verify_frame_constraints(&pose, cfg) {
        Ok(r) => r,
        Err(e) => fail(exit_code_for(&e), &e.to_string()),
    };
    (pose, res)
}

fn cmd_frame(args: FrameArgs) {
    let cfgfile = ConfigFile::load(&args.config);
    let psi = require(args.psi.or(cfgfile.f64("psi")), "psi");
    let psi_star = args.psi_star.or(cfgfile.f64("psi-star")).unwrap_or(0.0);
    let sigma = require(args.sigma.or(cfgfile.f64("sigma")), "sigma");
    let sigma_star = args.sigma_star.or(cfgfile.f64("sigma-star")).unwrap_or(0.0);
    let branch = parse_branch(args.branch.or(cfgfile.string("branch")), LambdaSign::Plus);
    let json_out = parse_format(args.format.or(cfgfile.string("format")));

    let cfg = MotionConfig::new(DualScalar::new(sigma, sigma_star), branch);
    let psi_d = DualScalar::new(psi, psi_star);
    let (pose, res) = frame_or_exit(&cfg, psi_d);

    if json_out {
        let out = json!({
            "branch": branch.as_str(),
            "psi": dual_json(&pose.psi),
            "delta": dual_json(&cfg.delta),
            "a": dual_json(&pose.a_val),
            "v1": { "re": vec_json(&pose.v1.re), "du": vec_json(&pose.v1.du) },
            "v2": { "re": vec_json(&pose.v2.re), "du": vec_json(&pose.v2.du) },
            "v3": { "re": vec_json(&pose.v3.re), "du": vec_json(&pose.v3.du) },
            "residuals": {
                "unit_norm": dual_json(&res.unit_norm),
                "v3_orthogonality": dual_json(&res.v3_orthogonality),
                "coplanarity_linear": dual_json(&res.coplanarity_linear),
                "coplanarity_det": dual_json(&res.coplanarity_det),
            },
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("branch                 {}", branch.as_str());
        println!("{}", dual_line("psi", &pose.psi));
        println!("{}", dual_line("delta", &cfg.delta));
        println!("{}", dual_line("A", &pose.a_val));
        for (name, v) in [("v1", &pose.v1), ("v2", &pose.v2), ("v3", &pose.v3)] {
            println!("{}", vec_line(&format!("{name}.re"), &v.re));
            println!("{}", vec_line(&format!("{name}.du"), &v.du));
        }
        println!("{}", dual_line("r.unit_norm", &res.unit_norm));
        println!("{}", dual_line("r.v3_orthogonality", &res.v3_orthogonality));
        println!("{}", dual_line("r.coplanarity_linear", &res.coplanarity_linear));
        println!("{}", dual_line("r.coplanarity_det", &res.coplanarity_det));
    }
}

fn cmd_orbit(args: OrbitArgs) {
    let cfgfile = ConfigFile::load(&args.config);
    let psi = require(args.psi.or(cfgfile.f64("psi")), "psi");
    let psi_star = args.psi_star.or(cfgfile.f64("psi-star")).unwrap_or(0.0);
    let sigma = require(args.sigma.or(cfgfile.f64("sigma")), "sigma");
    let sigma_star = args.sigma_star.or(cfgfile.f64("sigma-star")).unwrap_or(0.0);
    let p = require(args.p.or(cfgfile.f64("p")), "p");
    let p_star = args.p_star.or(cfgfile.f64("p-star")).unwrap_or(0.0);
    let q = require(args.q.or(cfgfile.f64("q")), "q");
    let q_star = args.q_star.or(cfgfile.f64("q-star")).unwrap_or(0.0);
    let branch = parse_branch(args.branch.or(cfgfile.string("branch")), LambdaSign::Plus);
    let json_out = parse_format(args.format.or(cfgfile.string("format")));

    let cfg = MotionConfig::new(DualScalar::new(sigma, sigma_star), branch);
    let (pose, _) = frame_or_exit(&cfg, DualScalar::new(psi, psi_star));
    let p_d = DualScalar::new(p, p_star);
    let q_d = DualScalar::new(q, q_star);
    let spec = match OrbitSpec::new(p_d, q_d) {
        Ok(s) => s,
        Err(e) => fail(exit_code_for(&e), &e.to_string()),
    };
    let x = match orbit_point(&pose, &spec) {
        Ok(x) => x,
        Err(e) => fail(exit_code_for(&e), &e.to_string()),
    };

    // <x,x> sinh(P+Q) - sinh(P-Q) vanishes identically
    let pseudo_norm = x.inner(&x);
    let lhs = pseudo_norm * (p_d + q_d).sinh().unwrap_or(DualScalar::ZERO);
    let rhs = (p_d - q_d).sinh().unwrap_or(DualScalar::ZERO);
    let residual = lhs - rhs;
    let quarter_dev = spec.quarter_turn_deviation();

    if json_out {
        let out = json!({
            "branch": branch.as_str(),
            "psi": dual_json(&pose.psi),
            "delta": dual_json(&cfg.delta),
            "p": dual_json(&spec.p),
            "q": dual_json(&spec.q),
            "a": dual_json(&spec.a),
            "x": { "re": vec_json(&x.re), "du": vec_json(&x.du) },
            "pseudo_norm": dual_json(&pseudo_norm),
            "identity_residual": dual_json(&residual),
            "quarter_turn_deviation": quarter_dev,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("branch                 {}", branch.as_str());
        println!("{}", dual_line("psi", &pose.psi));
        println!("{}", dual_line("delta", &cfg.delta));
        println!("{}", dual_line("p", &spec.p));
        println!("{}", dual_line("q", &spec.q));
        println!("{}", dual_line("a", &spec.a));
        println!("{}", vec_line("x.re", &x.re));
        println!("{}", vec_line("x.du", &x.du));
        println!("{}", dual_line("pseudo_norm", &pseudo_norm));
        println!("{}", dual_line("identity_residual", &residual));
        println!("quarter_turn_deviation {}", fmt17(quarter_dev));
        if quarter_dev > 1e-9 {
            println!("note: p + q is away from a quarter turn; the orbit is still well defined");
        }
    }
}

struct CasePreset {
    generator: Generator,
    branch: LambdaSign,
    sigma_default: f64,
    sigma_star_default: f64,
    pin_sigma_zero: bool,
    pin_psi_zero: bool,
}

fn case_preset(case: &str) -> CasePreset {
    match case {
        "general" => CasePreset {
            generator: Generator::General,
            branch: LambdaSign::Plus,
            sigma_default: 0.8,
            sigma_star_default: 0.0,
            pin_sigma_zero: false,
            pin_psi_zero: false,
        },
        "v1" => CasePreset {
            generator: Generator::V1,
            branch: LambdaSign::Minus,
            sigma_default: 0.8,
            sigma_star_default: 0.0,
            pin_sigma_zero: false,
            pin_psi_zero: false,
        },
        "v1-sigma0" => CasePreset {
            generator: Generator::V1,
            branch: LambdaSign::Minus,
            sigma_default: 0.0,
            sigma_star_default: 0.3,
            pin_sigma_zero: true,
            pin_psi_zero: false,
        },
        "v3" => CasePreset {
            generator: Generator::V3,
            branch: LambdaSign::Plus,
            sigma_default: 0.8,
            sigma_star_default: 0.0,
            pin_sigma_zero: false,
            pin_psi_zero: false,
        },
        "v2" => CasePreset {
            generator: Generator::V2,
            branch: LambdaSign::Minus,
            sigma_default: 0.8,
            sigma_star_default: 0.0,
            pin_sigma_zero: false,
            pin_psi_zero: false,
        },
        "v2-sigma0" => CasePreset {
            generator: Generator::V2,
            branch: LambdaSign::Minus,
            sigma_default: 0.0,
            sigma_star_default: 0.3,
            pin_sigma_zero: true,
            pin_psi_zero: false,
        },
        "v2-case31" => CasePreset {
            generator: Generator::V2,
            branch: LambdaSign::Minus,
            sigma_default: 0.8,
            sigma_star_default: 0.0,
            pin_sigma_zero: false,
            pin_psi_zero: true,
        },
        other => fail(2, &format!("unknown case {other:?}")),
    }
}

fn cmd_surface(args: SurfaceArgs) {
    let cfgfile = ConfigFile::load(&args.config);
    let case = require(args.case.or(cfgfile.string("case")), "case");
    let preset = case_preset(&case);

    let psi_range = args
        .psi_range
        .or(cfgfile.string("psi-range"))
        .unwrap_or_else(|| if preset.pin_psi_zero { "0:0:1".into() } else { "-1:1:21".into() });
    let psi_star_range = args
        .psi_star_range
        .or(cfgfile.string("psi-star-range"))
        .unwrap_or_else(|| "0:0:1".into());
    let ruling_range = args
        .ruling_range
        .or(cfgfile.string("ruling-range"))
        .unwrap_or_else(|| "1:1:1".into());
    let psi = parse_range(&psi_range, "psi-range");
    let psi_star = parse_range(&psi_star_range, "psi-star-range");
    let ruling = parse_range(&ruling_range, "ruling-range");
    if preset.pin_psi_zero && (psi.count != 1 || psi.lo != 0.0) {
        fail(2, &format!("case {case} pins psi to the single value 0"));
    }

    let sigma = args.sigma.or(cfgfile.f64("sigma")).unwrap_or(preset.sigma_default);
    if preset.pin_sigma_zero && sigma != 0.0 {
        fail(2, &format!("case {case} pins sigma to 0"));
    }
    let sigma_star = args
        .sigma_star
        .or(cfgfile.f64("sigma-star"))
        .unwrap_or(preset.sigma_star_default);
    let p = args.p.or(cfgfile.f64("p")).unwrap_or(0.6);
    let p_star = args.p_star.or(cfgfile.f64("p-star")).unwrap_or(0.0);
    let q = args.q.or(cfgfile.f64("q")).unwrap_or(0.5);
    let q_star = args.q_star.or(cfgfile.f64("q-star")).unwrap_or(0.0);
    let branch = parse_branch(args.branch.or(cfgfile.string("branch")), preset.branch);
    let sweep = match args.sweep.or(cfgfile.string("sweep")).as_deref() {
        None | Some("psi") => SweepAxis::Psi,
        Some("ruling") => SweepAxis::Ruling,
        Some(other) => fail(2, &format!("unknown sweep axis {other:?}")),
    };
    let out = require(args.out.or(cfgfile.string("out").map(PathBuf::from)), "out");

    let grid = GridSpec {
        psi,
        psi_star,
        ruling,
        fixed: CaseParams {
            sigma,
            sigma_star,
            p,
            p_star,
            q,
            q_star,
            a: 0.0,
            ..CaseParams::default()
        },
    };
    let set = match sample_congruence(preset.generator, &grid, branch) {
        Ok(s) => s,
        Err(e) => fail(exit_code_for(&e), &e.to_string()),
    };

    let ext = out
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase());
    match ext.as_deref() {
        Some("csv") => {
            let file = create_file(&out);
            if let Err(e) = write_csv(&set, file) {
                fail(2, &format!("cannot write {}: {e}", out.display()));
            }
            summary(&set, &out, &case);
        }
        Some("obj") => {
            let mesh = match to_mesh(&set, sweep) {
                Ok(m) => m,
                Err(e) => fail(exit_code_for(&e), &e.to_string()),
            };
            let file = create_file(&out);
            if let Err(e) = write_obj(&set, &mesh, file) {
                fail(2, &format!("cannot write {}: {e}", out.display()));
            }
            println!(
                "wrote {} vertices, {} faces ({} skipped cells) to {} [case {case}, branch {}]",
                mesh.vertices.len(),
                mesh.faces.len(),
                set.skipped,
                out.display(),
                set.branch.as_str()
            );
        }
        Some("json") => {
            let text = serde_json::to_string_pretty(&set).unwrap();
            if let Err(e) = std::fs::write(&out, text + "\n") {
                fail(2, &format!("cannot write {}: {e}", out.display()));
            }
            summary(&set, &out, &case);
        }
        _ => fail(
            2,
            &format!("unknown output extension on {} (expected .csv, .obj or .json)", out.display()),
        ),
    }
}

fn create_file(path: &Path) -> std::fs::File {
    std::fs::File::create(path)
        .unwrap_or_else(|e| fail(2, &format!("cannot create {}: {e}", path.display())))
}

fn summary(set: &SampleSet, out: &Path, case: &str) {
    println!(
        "wrote {} samples ({} skipped) to {} [case {case}, branch {}]",
        set.records.len(),
        set.skipped,
        out.display(),
        set.branch.as_str()
    );
}

#[derive(Serialize)]
struct VerifyOutput {
    seed: u64,
    samples: usize,
    tol: Option<f64>,
    pass: bool,
    suites: Vec<SuiteReport>,
    reconcile: Vec<ReconcileReport>,
}

fn cmd_verify(args: VerifyArgs) {
    let cfgfile = ConfigFile::load(&args.config);
    let suite = args
        .suite
        .or(cfgfile.string("suite"))
        .unwrap_or_else(|| "all".into());
    let samples = args
        .samples
        .or(cfgfile.u64("samples").map(|v| v as usize))
        .unwrap_or(1000);
    let seed = args.seed.or(cfgfile.u64("seed")).unwrap_or(42);
    let tol = args.tol.or(cfgfile.f64("tol"));

    let ids: Vec<SuiteId> = if suite == "all" {
        ALL_SUITES.to_vec()
    } else {
        match SuiteId::parse(&suite) {
            Some(id) => vec![id],
            None => fail(2, &format!("unknown suite {suite:?}")),
        }
    };

    let mut suites = Vec::new();
    let mut reconcile = Vec::new();
    for id in ids {
        let (report, reports) = run_suite(id, samples, seed, tol);
        suites.push(report);
        reconcile.extend(reports);
    }
    let pass = suites.iter().all(|s| s.pass);
    let out = VerifyOutput {
        seed,
        samples,
        tol,
        pass,
        suites,
        reconcile,
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    exit(if pass { 0 } else { 1 });
}
