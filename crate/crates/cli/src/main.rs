use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use drinfeld_kv::associators::{bernoulli_check, check_m1, gamma_of_phi, solve_associator, Associator, Gamma, Tiebreak};
use drinfeld_kv::braids::{ad_pb, artin_action, cabling, malcev_taut, parse_braid, BraidText, FreeAuto};
use drinfeld_kv::verify::{run_suites, Caps, Check, Suite};
use drinfeld_kv::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "dkv", version, about = "Exact associators and Kashiwara-Vergne verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for an associator degree by degree and write it to a file.
    Solve {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        even: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Required for kv, torsor, braid and all; solved on the fly otherwise.
        #[arg(long)]
        associator: Option<PathBuf>,
        /// Truncation degree for every check; defaults to 8 (two-letter) and 5 (multi-strand).
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the Gamma function and zeta values of an associator.
    Gamma {
        #[arg(long)]
        associator: PathBuf,
    },
    /// Braid group actions and cabling.
    Braid {
        #[arg(long, value_enum)]
        action: Action,
        /// Braid text, e.g. "strands: 3\nx12".
        #[arg(long, conflicts_with = "file")]
        word: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Strand count when the text has no "strands:" header.
        #[arg(long)]
        strands: Option<usize>,
        /// Cabling multiplicities, comma separated.
        #[arg(long, value_delimiter = ',')]
        mult: Vec<usize>,
        /// With --action ad, also emit the tangential automorphism through this degree.
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Kv,
    Torsor,
    Braid,
    Cocycle,
    Centralizer,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Kv => vec![Suite::Kv],
            SuiteArg::Torsor => vec![Suite::Torsor],
            SuiteArg::Braid => vec![Suite::Braid],
            SuiteArg::Cocycle => vec![Suite::Cocycle],
            SuiteArg::Centralizer => vec![Suite::Centralizer],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Action {
    Ad,
    Artin,
    Cable,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Report {
    command: &'static str,
    cap: Option<usize>,
    seed: Option<u64>,
    checks: Vec<Check>,
    result: Option<Value>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { command, cap: None, seed: None, checks: Vec::new(), result: None }
    }

    fn to_json(&self, started: Instant) -> Value {
        let mut checks = self.checks.clone();
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut v = json!({
            "version": VERSION,
            "command": self.command,
            "wall_time_ms": started.elapsed().as_millis() as u64,
            "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        });
        if let Some(c) = self.cap {
            v["cap"] = json!(c);
        }
        if let Some(s) = self.seed {
            v["seed"] = json!(s);
        }
        if let Some(r) = &self.result {
            v["result"] = r.clone();
        }
        v
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn read_associator(path: &Path) -> Result<Associator, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Associator::from_json(&v)?)
}

fn zeta_table(g: &Gamma) -> Vec<Value> {
    g.zeta
        .iter()
        .filter(|(n, z)| *n % 2 == 0 || !z.is_zero())
        .map(|(n, z)| json!({ "n": n, "zeta": z.to_string() }))
        .collect()
}

fn print_zeta(g: &Gamma) {
    for row in zeta_table(g) {
        eprintln!("zeta({}) = {}", row["n"], row["zeta"].as_str().unwrap_or_default());
    }
}

fn m1_checks(phi: &Associator) -> Vec<Check> {
    let m1 = check_m1(phi);
    let ad = match &m1.pentagon_ad {
        Ok(d) => Check::degree("m1.pentagon_ad", "pentagon through ad in TAut_3", *d),
        Err(e) => Check::new("m1.pentagon_ad", "pentagon through ad in TAut_3", false).with_witness(json!({ "error": e })),
    };
    vec![
        Check::degree("m1.duality", "Phi(a,b) Phi(b,a) = 1", m1.duality),
        Check::degree("m1.hexagon", "hexagon", m1.hexagon),
        Check::degree("m1.hexagon_mirror", "mirror hexagon", m1.hexagon_mirror),
        Check::degree("m1.pentagon", "pentagon", m1.pentagon),
        ad,
    ]
}

fn solve(degree: usize, even: bool, out: &Path) -> Result<Report, Failure> {
    if degree < 2 {
        return Err(Failure::Usage("--degree must be at least 2".into()));
    }
    let phi = match solve_associator(degree, even, &Tiebreak::Zero) {
        Ok(p) => p,
        Err(e @ Error::Inconsistent(..)) => return Err(Failure::Check(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let text = serde_json::to_string_pretty(&phi.to_json()).expect("json");
    fs::write(out, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
    let mut r = Report::new("solve");
    r.cap = Some(degree);
    r.checks = m1_checks(&phi);
    let zeta = match gamma_of_phi(&phi) {
        Ok(g) => {
            print_zeta(&g);
            zeta_table(&g)
        }
        Err(e) => {
            r.checks.push(Check::error("gamma", "Gamma function of the associator", &e));
            Vec::new()
        }
    };
    r.result = Some(json!({ "out": out.display().to_string(), "even": even, "zeta": zeta }));
    Ok(r)
}

fn verify(suite: SuiteArg, associator: Option<&Path>, degree: Option<usize>, seed: u64) -> Result<Report, Failure> {
    let suites = suite.suites();
    let phi = match associator {
        Some(p) => Some(read_associator(p)?),
        None if suites.iter().any(|s| s.needs_associator()) => {
            return Err(Failure::Usage("this suite needs --associator".into()));
        }
        None => None,
    };
    let file_cap = phi.as_ref().map(Associator::cap);
    if let (Some(n), Some(c)) = (degree, file_cap) {
        if n > c {
            return Err(Failure::Usage(format!("--degree {n} exceeds the associator cap {c}")));
        }
    }
    if degree.is_some_and(|n| n < 2) {
        return Err(Failure::Usage("--degree must be at least 2".into()));
    }
    let mut caps = degree.map(Caps::uniform).unwrap_or(Caps::DEFAULT);
    if let Some(c) = file_cap {
        caps = Caps { two_letter: caps.two_letter.min(c), multi: caps.multi.min(c) };
    }
    let phi = match phi {
        Some(p) => p,
        None => solve_associator(caps.two_letter.max(caps.multi).max(2), true, &Tiebreak::Zero)?,
    };
    let mut r = Report::new("verify");
    r.cap = Some(caps.two_letter.max(caps.multi));
    r.seed = Some(seed);
    r.checks = run_suites(&suites, &phi, caps, seed);
    r.result = Some(json!({
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "caps": { "two_letter": caps.two_letter, "multi": caps.multi },
    }));
    Ok(r)
}

fn gamma(associator: &Path) -> Result<Report, Failure> {
    let phi = read_associator(associator)?;
    let mut r = Report::new("gamma");
    r.cap = Some(phi.cap());
    match gamma_of_phi(&phi) {
        Ok(g) => {
            print_zeta(&g);
            r.checks.push(Check::degree(
                "gamma.bernoulli",
                "sum zeta(2n) u^2n = -(u/(e^u-1) - 1 + u/2)/2",
                bernoulli_check(&g, phi.cap()),
            ));
            r.result = Some(json!({ "zeta": zeta_table(&g), "gamma": g.to_json() }));
        }
        Err(e) => r.checks.push(Check::error("gamma.abelian_class", "[log Phi] = G(-a)G(-b)/G(-a-b) - 1", &e)),
    }
    Ok(r)
}

fn images(a: &FreeAuto) -> Vec<Value> {
    a.images().iter().enumerate().map(|(k, w)| json!({ "generator": format!("X{}", k + 1), "image": w.to_string() })).collect()
}

fn braid_text(word: Option<String>, file: Option<&Path>, strands: Option<usize>) -> Result<BraidText, Failure> {
    let text = match (word, file) {
        (Some(w), _) => w,
        (None, Some(p)) => fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(Failure::Usage("give --word or --file".into())),
    };
    let text = match strands {
        Some(n) if !text.trim_start().starts_with("strands:") => format!("strands: {n}\n{text}"),
        _ => text,
    };
    Ok(parse_braid(&text)?)
}

fn braid(
    action: Action,
    text: BraidText,
    mult: &[usize],
    degree: Option<usize>,
) -> Result<Report, Failure> {
    let mut r = Report::new("braid");
    r.cap = degree;
    let pure = |t: BraidText| match t {
        BraidText::Pure(w) => Ok(w),
        BraidText::Artin(_) => Err(Failure::Usage("this action needs a pure braid word".into())),
    };
    let result = match action {
        Action::Ad => {
            let w = pure(text)?;
            let a = ad_pb(&w);
            for v in images(&a) {
                print_image(&v);
            }
            let mut v = json!({ "action": "ad", "word": w.to_string(), "images": images(&a) });
            if let Some(d) = degree {
                v["taut"] = malcev_taut(&w, d).to_json();
            }
            v
        }
        Action::Artin => {
            let b = match text {
                BraidText::Artin(b) => b,
                BraidText::Pure(w) => w.to_braid(),
            };
            let a = artin_action(&b);
            for v in images(&a) {
                print_image(&v);
            }
            json!({ "action": "artin", "word": b.to_string(), "images": images(&a) })
        }
        Action::Cable => {
            let w = pure(text)?;
            if mult.is_empty() {
                return Err(Failure::Usage("--mult is required for cabling".into()));
            }
            let c = cabling(&w, mult)?;
            eprintln!("{c}");
            json!({ "action": "cable", "word": w.to_string(), "mult": mult, "cabled": c.to_string() })
        }
    };
    r.result = Some(result);
    Ok(r)
}

fn print_image(v: &Value) {
    eprintln!("{} -> {}", v["generator"].as_str().unwrap_or_default(), v["image"].as_str().unwrap_or_default());
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Solve { degree, even, out } => solve(degree, even, &out),
        Command::Verify { suite, associator, degree, seed } => verify(suite, associator.as_deref(), degree, seed),
        Command::Gamma { associator } => gamma(&associator),
        Command::Braid { action, word, file, strands, mult, degree } => {
            let text = braid_text(word, file.as_deref(), strands)?;
            braid(action, text, &mult, degree)
        }
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report.to_json(started)).expect("json"));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("dkv: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("dkv: {m}");
            ExitCode::from(1)
        }
    }
}
