use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use conics::elliptic::GoldenCertificate;
use conics::kv::KeyValues;
use conics::pencil::ScanRegion;
use conics::suite::{self, CurveChoice, Settings};
use conics::Error;

#[derive(Parser, Debug)]
#[command(name = "conics", version, about = "Exact checks for conic linear series and quartic pencils")]
struct Cli {
    #[command(subcommand)]
    scenario: Scenario,

    /// Prime field, as `F_p` or `p`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest extension degree used to split divisors.
    #[arg(long, global = true)]
    extension_cap: Option<u32>,
    /// Local series truncation order.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    /// `full`, `box:x0-x1,y0-y1,z0-z1` or `line:a0,a1,a2,a3;b0,b1,b2,b3`.
    #[arg(long, global = true)]
    scan_region: Option<String>,
    /// Maximum number of candidates examined by searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true)]
    certify_smooth: bool,
    /// `elliptic[:a,b]`, `twisted-cubic`, `rational-quartic` or a curve file.
    #[arg(long, global = true)]
    curve: Option<String>,
    #[arg(long, short = 'd', global = true)]
    d: Option<u32>,
    #[arg(long, short = 'g', global = true)]
    g: Option<u32>,
    /// Golden certificate file.
    #[arg(long, global = true)]
    golden: Option<PathBuf>,
    /// Random instances per family.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Key-value config; its entries override flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Write the JSON summary here.
    #[arg(long, global = true)]
    summary: Option<PathBuf>,
    /// Write the golden certificate found by `find-torsion`.
    #[arg(long, global = true)]
    write_golden: Option<PathBuf>,
    /// Write the pencil certificate from `certify-pencil`.
    #[arg(long, global = true)]
    write_certificate: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Scenario {
    Classify,
    Cone,
    LimitCone,
    ConicSystem,
    LimitSystem,
    #[command(name = "twisted-cubic-3to1")]
    TwistedCubic3to1,
    Gamma,
    DphiCorank,
    BlowupNumbers,
    NodeCount,
    RamificationCount,
    FindTorsion,
    SearchVertices,
    BuildPencil,
    CertifyPencil,
    FullPaperSuite,
}

impl Scenario {
    fn name(self) -> &'static str {
        use Scenario::*;
        let i = match self {
            Classify => 0,
            Cone => 1,
            LimitCone => 2,
            ConicSystem => 3,
            LimitSystem => 4,
            TwistedCubic3to1 => 5,
            Gamma => 6,
            DphiCorank => 7,
            BlowupNumbers => 8,
            NodeCount => 9,
            RamificationCount => 10,
            FindTorsion => 11,
            SearchVertices => 12,
            BuildPencil => 13,
            CertifyPencil => 14,
            FullPaperSuite => 15,
        };
        suite::SCENARIOS[i]
    }
}

enum Failure {
    Usage(String),
    Exhausted(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted { .. } | Error::ExtensionExhausted(..) => Failure::Exhausted(e.to_string()),
            Error::Parse(_) | Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

fn parse_field(text: &str) -> Result<u64, Failure> {
    let t = text.trim();
    let digits = t.strip_prefix("F_").or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')'))).unwrap_or(t);
    digits.parse().map_err(|_| Failure::Usage(format!("unsupported field '{t}': only prime fields F_p are accepted")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool, Failure> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Failure::Usage(format!("bad value for '{key}': {v}"))),
    }
}

fn parse_curve(v: &str) -> Result<CurveChoice, Failure> {
    let path = Path::new(v);
    if path.is_file() {
        return Ok(CurveChoice::parse(&read(path)?)?);
    }
    Ok(CurveChoice::parse(v)?)
}

/// Flags first, then config entries on top. Returns the settings and the
/// echo written into the report body.
fn settings(cli: &Cli) -> Result<(Settings, Vec<(String, String)>), Failure> {
    let mut kv = KeyValues::default();
    let flags: [(&str, Option<String>); 12] = [
        ("field", cli.field.clone()),
        ("prime", cli.prime.map(|p| p.to_string())),
        ("seed", cli.seed.map(|x| x.to_string())),
        ("extension_cap", cli.extension_cap.map(|x| x.to_string())),
        ("truncation", cli.truncation.map(|x| x.to_string())),
        ("scan_region", cli.scan_region.clone()),
        ("budget", cli.budget.map(|x| x.to_string())),
        ("curve", cli.curve.clone()),
        ("d", cli.d.map(|x| x.to_string())),
        ("g", cli.g.map(|x| x.to_string())),
        ("golden", cli.golden.as_ref().map(|p| p.display().to_string())),
        ("samples", cli.samples.map(|x| x.to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            kv.set(k, v);
        }
    }
    if cli.certify_smooth {
        kv.set("certify_smooth", "true");
    }
    if let Some(path) = &cli.config {
        let file = KeyValues::parse(&read(path)?)?;
        for (k, v) in file.entries {
            kv.set(&k, v);
        }
    }

    let mut s = Settings::default();
    let mut echo = vec![];
    for (k, v) in &kv.entries {
        let bad = || Failure::Usage(format!("bad value for '{k}': {v}"));
        match k.as_str() {
            "field" => s.prime = parse_field(v)?,
            "prime" => s.prime = v.parse().map_err(|_| bad())?,
            "seed" => s.seed = v.parse().map_err(|_| bad())?,
            "extension_cap" => s.extension_cap = v.parse().map_err(|_| bad())?,
            "truncation" => s.truncation = Some(v.parse().map_err(|_| bad())?),
            "scan_region" => s.scan_region = Some(ScanRegion::parse(v)?),
            "budget" => s.budget = v.parse().map_err(|_| bad())?,
            "certify_smooth" => s.certify_smooth = parse_bool(k, v)?,
            "curve" => s.curve = parse_curve(v)?,
            "d" => s.d = Some(v.parse().map_err(|_| bad())?),
            "g" => s.g = Some(v.parse().map_err(|_| bad())?),
            "golden" => s.golden = Some(GoldenCertificate::parse(&read(Path::new(v))?)?),
            "samples" => s.samples = v.parse().map_err(|_| bad())?,
            _ => return Err(Failure::Usage(format!("unknown config key '{k}'"))),
        }
        if k != "golden" {
            echo.push((k.clone(), v.clone()));
        }
    }
    conics::algebra::PrimeField::new(s.prime).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(g) = &s.golden {
        echo.push(("golden".into(), format!("p={} a={} b={} q=({}, {})", g.p, g.a, g.b, g.q.0, g.q.1)));
    }
    Ok((s, echo))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let (s, echo) = settings(cli)?;
    let name = cli.scenario.name();
    let claims = suite::run_scenario(name, &s)?;
    let report = suite::emit_report(name, &echo, &claims);
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let text = report.render(now);
    match &cli.output {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &cli.summary {
        write(p, &report.summary_json(name, &claims))?;
    }
    if let Some(p) = &cli.write_golden {
        let (_, _, g) = suite::golden_witness(&s)?;
        write(p, &g.render())?;
    }
    if let Some(p) = &cli.write_certificate {
        write(p, &suite::certificate_bundle(&s)?)?;
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Exhausted(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
