use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use spinor_forge::catalog::{self, CatalogEntry};
use spinor_forge::report::report_all;
use spinor_forge::rotation::{random_rotation, random_unit_vector};
use spinor_forge::{
    annihilator, check_pure, check_reducing, check_spinc_pure, commutant, eta, eta_all, eta_hat,
    equivariance_check, frame_rotation_check, spinc_form_untwisted, Certificate, Error, ScaledSpinor,
    SpinorVector, TwoForm,
};

#[derive(Parser)]
#[command(name = "spinor-forge", version, about = "Exact twisted spinors, η forms and their stabilizers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List or emit catalog spinors
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Check a purity, reducing or Spin^c purity claim
    Verify {
        kind: VerifyKind,
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the η_kl forms
    Eta {
        #[command(flatten)]
        src: Source,
        /// a single pair, e.g. 1,2
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Common annihilator in spin(n) ⊕ spin(r)
    Annihilator {
        #[arg(long = "in", required_unless_present = "catalog")]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        catalog: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Endomorphisms of ℝ^n commuting with every η̂_kl
    Commutant {
        #[command(flatten)]
        src: Source,
        /// restrict to antisymmetric endomorphisms
        #[arg(long)]
        skew: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certificate invariance under random frame rotations and group elements
    FrameTest {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, value_enum, default_value = "pure")]
        cert: CertKind,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run every regression criterion
    Report {
        #[arg(long)]
        json: bool,
        /// no version banner
        #[arg(long)]
        plain: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Emit {
        /// qk, spin7_pure, spin7_reducing, generic, spinc, or a full name like qk:2
        #[arg(long)]
        name: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    catalog: Option<String>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Pure,
    Reducing,
    Spinc,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertKind {
    Pure,
    Reducing,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exit 1: a claim did not hold. Exit 2: bad input.
enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(format!("{e:?}: {e}"))
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = std::env::var("SPINOR_FORGE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Catalog { cmd } => run_catalog(cmd),
        Cmd::Verify { kind, src, format } => run_verify(kind, &load(&src)?, format),
        Cmd::Eta { src, pair, format } => run_eta(&load(&src)?, pair.as_deref(), format),
        Cmd::Annihilator { inputs, catalog, format } => {
            let mut spinors = Vec::new();
            for name in &catalog {
                spinors.push(catalog::by_name(name)?.spinor);
            }
            for p in &inputs {
                spinors.push(read_spinor(p)?);
            }
            let alg = annihilator(&spinors)?;
            if format == Format::Json {
                print_json(&serde_json::to_value(&alg).expect("serializable"));
            } else {
                println!("dim: {}", alg.dim);
                println!("closed: {}", alg.closed);
                for (i, x) in alg.basis.iter().enumerate() {
                    println!("{}: {x}", i + 1);
                }
            }
            Ok(alg.closed)
        }
        Cmd::Commutant { src, skew, format } => {
            let phi = load(&src)?;
            let hats: Vec<_> = eta_all(&phi)?.values().map(eta_hat).collect();
            let c = commutant(&hats, skew)?;
            let basis: Vec<Vec<Vec<String>>> = c
                .basis
                .iter()
                .map(|m| m.to_rows().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect())
                .collect();
            if format == Format::Json {
                print_json(&json!({ "dim": c.dim, "skew": skew, "basis": basis }));
            } else {
                println!("dim: {}", c.dim);
                for (i, m) in basis.iter().enumerate() {
                    println!("{}:", i + 1);
                    for row in m {
                        println!("  [{}]", row.join(", "));
                    }
                }
            }
            Ok(true)
        }
        Cmd::FrameTest { src, seed, trials, cert, format } => run_frame_test(&load(&src)?, seed, trials, cert, format),
        Cmd::Report { json, plain } => {
            let rows = report_all();
            let ok = rows.iter().all(|r| r.pass);
            if json {
                print_json(&serde_json::to_value(&rows).expect("serializable"));
            } else {
                if !plain {
                    println!("spinor-forge {}", env!("CARGO_PKG_VERSION"));
                }
                for r in &rows {
                    println!("[{}] {}", if r.pass { "PASS" } else { "FAIL" }, r.name);
                    println!("    expected: {}", r.expected);
                    println!("    computed: {}", r.computed);
                }
            }
            Ok(ok)
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn read_spinor(path: &Path) -> Result<ScaledSpinor, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| Failure::Usage(format!("{}: {e}", path.display()));
    // twisted spinors carry r and m; plain Δ_n spinors do not
    if v.get("r").is_some() {
        serde_json::from_value(v).map_err(bad)
    } else {
        let psi: SpinorVector = serde_json::from_value(v).map_err(bad)?;
        Ok(ScaledSpinor::from_untwisted(&psi))
    }
}

fn load(src: &Source) -> Result<ScaledSpinor, Failure> {
    match (&src.catalog, &src.input) {
        (Some(name), _) => Ok(catalog::by_name(name)?.spinor),
        (None, Some(path)) => read_spinor(path),
        (None, None) => Err(Failure::Usage("need --catalog or --in".into())),
    }
}

fn catalog_name(name: &str, m: Option<usize>, n: Option<usize>) -> Result<String, Failure> {
    let need = |flag: &str, v: Option<usize>| v.ok_or_else(|| Failure::Usage(format!("--name {name} needs {flag}")));
    Ok(match name {
        "qk" => format!("qk:{}", need("--m", m)?),
        "generic" => format!("generic:{}", need("--n", n)?),
        "spinc" => format!("spinc:{}", need("--n", n)?),
        other => other.to_string(),
    })
}

fn describe(e: &CatalogEntry) -> String {
    let s = e.spinor.shape;
    format!("n={} r={} m={} scale2={} terms={}", s.n, s.r, s.m, e.spinor.scale2, e.spinor.iter().count())
}

fn run_catalog(cmd: CatalogCmd) -> Outcome {
    match cmd {
        CatalogCmd::List => {
            let examples = ["qk:1", "qk:2", "qk:3", "spin7_pure", "spin7_reducing", "generic:4", "spinc:2"];
            println!("names: {}", catalog::NAMES.join(", "));
            for name in examples {
                println!("{name}: {}", describe(&catalog::by_name(name)?));
            }
            Ok(true)
        }
        CatalogCmd::Emit { name, m, n, out } => {
            let entry = catalog::by_name(&catalog_name(&name, m, n)?)?;
            let text = serde_json::to_string_pretty(&entry.spinor).expect("serializable");
            match out {
                Some(p) => fs::write(&p, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
                None => println!("{text}"),
            }
            Ok(true)
        }
    }
}

fn pair_key(k: usize, l: usize) -> String {
    format!("{k},{l}")
}

fn run_verify(kind: VerifyKind, phi: &ScaledSpinor, format: Format) -> Outcome {
    let (ok, value, lines) = match kind {
        VerifyKind::Pure => {
            let rep = check_pure(phi)?;
            let lines = rep
                .per_pair
                .iter()
                .map(|(&(k, l), p)| format!("{}: defect_norm2={} square_ok={}", pair_key(k, l), p.defect_norm2, p.square_ok))
                .collect::<Vec<_>>();
            (rep.is_pure, serde_json::to_value(&rep).expect("serializable"), lines)
        }
        VerifyKind::Reducing => {
            let rep = check_reducing(phi)?;
            let lines = rep
                .per_pair
                .iter()
                .map(|(&(k, l), p)| format!("{}: defect_norm2={} eta_nonzero={}", pair_key(k, l), p.defect_norm2, p.eta_nonzero))
                .collect::<Vec<_>>();
            (rep.is_reducing, serde_json::to_value(&rep).expect("serializable"), lines)
        }
        VerifyKind::Spinc => {
            let psi = phi.to_untwisted()?;
            let ok = check_spinc_pure(&psi)?;
            let form = spinc_form_untwisted(&psi)?;
            let value = json!({ "is_spinc_pure": ok, "form": form });
            (ok, value, vec![format!("form: {}", form.render_text())])
        }
    };
    if format == Format::Json {
        print_json(&value);
    } else {
        let label = match kind {
            VerifyKind::Pure => "is_pure",
            VerifyKind::Reducing => "is_reducing",
            VerifyKind::Spinc => "is_spinc_pure",
        };
        println!("{label}: {ok}");
        for l in lines {
            println!("{l}");
        }
    }
    Ok(ok)
}

fn parse_pair(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("--pair expects k,l, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn run_eta(phi: &ScaledSpinor, pair: Option<&str>, format: Format) -> Outcome {
    let forms: BTreeMap<(usize, usize), TwoForm> = match pair {
        Some(p) => {
            let (k, l) = parse_pair(p)?;
            BTreeMap::from([((k, l), eta(phi, k, l)?)])
        }
        None => eta_all(phi)?,
    };
    match (format, pair) {
        (Format::Text, Some(_)) => println!("{}", forms.values().next().expect("one form").render_text()),
        (Format::Text, None) => {
            for ((k, l), w) in &forms {
                println!("{}: {}", pair_key(*k, *l), w.render_text());
            }
        }
        (Format::Json, _) => {
            let rows: Vec<Value> = forms.iter().map(|((k, l), w)| json!({ "k": k, "l": l, "form": w })).collect();
            print_json(&Value::Array(rows));
        }
    }
    Ok(true)
}

fn run_frame_test(phi: &ScaledSpinor, seed: u64, trials: usize, cert: CertKind, format: Format) -> Outcome {
    let cert = match cert {
        CertKind::Pure => Certificate::Pure,
        CertKind::Reducing => Certificate::Reducing,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, r) = (phi.shape.n, phi.shape.r);
    let mut rotations_ok = 0;
    let mut group_ok = 0;
    for _ in 0..trials {
        if frame_rotation_check(phi, &random_rotation(r, &mut rng), cert)? {
            rotations_ok += 1;
        }
        let g: Vec<_> = (0..2).map(|_| random_unit_vector(n, &mut rng)).collect();
        let h: Vec<_> = (0..2).map(|_| random_unit_vector(r, &mut rng)).collect();
        if equivariance_check(phi, &g, &h, cert)? {
            group_ok += 1;
        }
    }
    let ok = rotations_ok == trials && group_ok == trials;
    if format == Format::Json {
        print_json(&json!({ "trials": trials, "seed": seed, "rotations_invariant": rotations_ok, "group_invariant": group_ok, "pass": ok }));
    } else {
        println!("rotations invariant: {rotations_ok}/{trials}");
        println!("group elements invariant: {group_ok}/{trials}");
    }
    Ok(ok)
}
