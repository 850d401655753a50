//! `dgm`: build, decompose, recognize and search binary matroids and grafts.
//!
//! Exit codes: 0 success, 1 parse error, 2 precondition error, 3 resource cap.

mod config;
mod format;

/// `print!`/`println!` that end the process quietly when stdout is closed.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if let Err(e) = write!(std::io::stdout(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
        }
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        out!($($t)*);
        out!("\n");
    }};
}

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use config::Config;
use deltagraphic::gadgets::{self, BenchParts, HParts};
use deltagraphic::graft::{build_cyclic, validate_cyclic};
use deltagraphic::matroid::graphic::{is_cographic, is_graphic, is_regular};
use deltagraphic::recognize::{self, Certificate, CertificateDoc, CERTIFICATE_SCHEMA};
use deltagraphic::search::{self, SearchOptions, Verdict};
use deltagraphic::{catalog, generate, mhb, tree, Error, Matroid};
use std::collections::HashMap;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "dgm", version, about = "Delta-graphic matroids: decomposition, recognition, certificates and search")]
struct Cli {
    /// TOML config file (default: $DGM_CONFIG if set).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cap override, `name=value` (repeatable).
    #[arg(long = "cap", global = true)]
    caps: Vec<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank, size, connectivity and class flags.
    Info { matroid: String },
    /// Dual matroid.
    Dual {
        matroid: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minor `M \ delete / contract`.
    Minor {
        matroid: String,
        #[arg(long, value_delimiter = ',')]
        delete: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        contract: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 2-sum along a shared marker element.
    Twosum {
        a: String,
        b: String,
        #[arg(long)]
        marker: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Canonical tree decomposition.
    Tree {
        matroid: String,
        /// Also write the tree as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Graft operations.
    Graft {
        #[command(subcommand)]
        cmd: GraftCmd,
    },
    /// Decide delta-graphicness.
    Recognize {
        matroid: String,
        /// Write the certificate as JSON.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Check a certificate against a matroid.
    Verify { matroid: String, certificate: PathBuf },
    /// Emit a gadget matroid. Parts are `name=SOURCE`, where SOURCE is a
    /// matroid file or a catalog name such as `M(K33)` or `M*(K33)`.
    Gadget {
        #[arg(value_parser = ["tripod", "h", "hprime", "bench", "starlike"])]
        kind: String,
        #[arg(long = "part")]
        parts: Vec<String>,
        /// Bench spine length.
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Bench position of the extra leaf (1-based).
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Starlike hub elements for the four leaves.
        #[arg(long, value_delimiter = ',', default_value = "e1,e3,e2,e4")]
        attach: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a catalog matroid (`R10`, `F7*`, `M(K5)`, `U(2,4)`, `W_4`, `Pi_5`, ..).
    Catalog {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random instances for testing; results depend only on the seed.
    Random {
        #[arg(value_parser = ["binary", "wheel", "graft"])]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Element (or edge) budget.
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for minor-minimal non-delta-graphic matroids.
    Search {
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        shards: Option<usize>,
        /// Checkpoint directory; rerunning with the same directory resumes.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GraftCmd {
    /// Feasible sets of the graft's delta-matroid (edge sets of T-spanning forests).
    Feasible { graft: PathBuf },
    /// Build a nice cyclic decomposition, or validate one given with `--decomp`.
    Cyclic {
        graft: PathBuf,
        #[arg(long)]
        decomp: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The matroid M^{H,B} of a nice cyclic decomposition.
    Tomatroid {
        graft: PathBuf,
        #[arg(long)]
        decomp: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn load_matroid(path: &str) -> Result<Matroid> {
    Ok(format::parse_matroid(&read(Path::new(path))?)?)
}

/// A matroid file, or a catalog name when no such file exists.
fn load_source(src: &str) -> Result<Matroid> {
    if Path::new(src).exists() {
        load_matroid(src)
    } else {
        Ok(catalog::catalog(src)?)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn info(m: &Matroid) -> Result<()> {
    outln!("size        {}", m.len());
    outln!("rank        {}", m.rank());
    outln!("binary      {}", yes(m.to_binary()?.is_some()));
    outln!("connected   {}", yes(m.is_connected()));
    outln!("3-connected {}", yes(m.is_3_connected()?));
    let graphic = is_graphic(m)?.is_some();
    let cographic = is_cographic(m)?.is_some();
    outln!("graphic     {}", yes(graphic));
    outln!("cographic   {}", yes(cographic));
    outln!("regular     {}", yes(is_regular(m)?));
    Ok(())
}

fn gadget(kind: &str, parts: &[String], m: usize, k: usize, attach: &[String]) -> Result<gadgets::Gadget> {
    let mut given: HashMap<String, Matroid> = HashMap::new();
    for p in parts {
        let (name, src) = p.split_once('=').ok_or_else(|| Error::Parse(format!("bad part `{p}` (want name=SOURCE)")))?;
        given.insert(name.to_string(), load_source(src)?);
    }
    let mut part = |name: &str, default: &str| -> Result<Matroid> {
        match given.remove(name) {
            Some(x) => Ok(x),
            None => Ok(catalog::catalog(default)?),
        }
    };
    let g = match kind {
        "tripod" => gadgets::make_tripod(&part("m1", "M(K33)")?, &part("m2", "M*(K33)")?, &part("m3", "M(K33)")?)?,
        "h" | "hprime" => {
            let centre = if kind == "h" { "M(K4)" } else { "U(1,3)" };
            let p = HParts {
                v1: part("v1", centre)?,
                v2: part("v2", "U(1,3)")?,
                x1: part("x1", "M(K33)")?,
                y1: part("y1", "M*(K33)")?,
                x2: part("x2", "M(K33)")?,
                y2: part("y2", "M*(K33)")?,
            };
            if kind == "h" {
                gadgets::make_h_matroid(&p)?
            } else {
                gadgets::make_hprime_matroid(&p, &part("v", "M(K4)")?)?
            }
        }
        "bench" => {
            let spine = (1..=m)
                .map(|i| part(&format!("v{i}"), if i == k { "U(2,3)" } else { "U(1,3)" }))
                .collect::<Result<Vec<_>>>()?;
            let w_default = if spine.get(k.wrapping_sub(1)).is_some_and(|v| v.rank() == 1) { "M(K33)" } else { "M*(K33)" };
            let p = BenchParts {
                spine,
                x1: part("x1", "M(K33)")?,
                y1: part("y1", "M*(K33)")?,
                xm: part("xm", "M(K33)")?,
                ym: part("ym", "M*(K33)")?,
                w: part("w", w_default)?,
            };
            gadgets::make_bench(m, k, &p)?
        }
        "starlike" => {
            let at: [&str; 4] = attach
                .iter()
                .map(String::as_str)
                .collect::<Vec<_>>()
                .try_into()
                .map_err(|_| Error::Argument("--attach needs four hub elements".into()))?;
            let hub = part("hub", "W_3")?;
            let leaves = [part("x1", "M(K33)")?, part("x2", "M(K33)")?, part("x3", "M*(K33)")?, part("x4", "M*(K33)")?];
            gadgets::make_starlike(&hub, at, [&leaves[0], &leaves[1], &leaves[2], &leaves[3]])?
        }
        _ => unreachable!("clap restricts gadget kinds"),
    };
    if let Some(extra) = given.keys().next() {
        return Err(Error::Argument(format!("unused part `{extra}` for {kind}")).into());
    }
    Ok(g)
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    cfg.override_caps(&cli.caps)?;
    deltagraphic::caps::set(cfg.caps);
    match cli.cmd {
        Cmd::Info { matroid } => info(&load_matroid(&matroid)?)?,
        Cmd::Dual { matroid, output } => write_or_print(output.as_deref(), &format::print_matroid(&load_matroid(&matroid)?.dual()))?,
        Cmd::Minor { matroid, delete, contract, output } => {
            let m = load_matroid(&matroid)?.minor_labels(&delete, &contract)?;
            write_or_print(output.as_deref(), &format::print_matroid(&m))?;
        }
        Cmd::Twosum { a, b, marker, output } => {
            let m = tree::two_sum(&load_matroid(&a)?, &load_matroid(&b)?, &marker)?;
            write_or_print(output.as_deref(), &format::print_matroid(&m))?;
        }
        Cmd::Tree { matroid, json } => {
            let t = tree::canonical_decomposition(&load_matroid(&matroid)?)?;
            out!("{}", t.render());
            if let Some(p) = json {
                write_or_print(Some(&p), &(serde_json::to_string_pretty(&t)? + "\n"))?;
            }
        }
        Cmd::Graft { cmd } => graft(cmd)?,
        Cmd::Recognize { matroid, certificate } => {
            let m = load_matroid(&matroid)?;
            let c = recognize::recognize(&m)?;
            if c.is_positive() {
                outln!("delta-graphic ({})", c.kind());
            } else {
                outln!("NOT delta-graphic");
                if let Certificate::NotDeltaGraphic { evidence, .. } = &c {
                    outln!("evidence: {}", serde_json::to_string(evidence)?);
                }
            }
            if let Some(p) = certificate {
                let doc = CertificateDoc::new(c);
                write_or_print(Some(&p), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
            }
        }
        Cmd::Verify { matroid, certificate } => {
            let m = load_matroid(&matroid)?;
            let doc: CertificateDoc =
                serde_json::from_str(&read(&certificate)?).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
            if doc.schema != CERTIFICATE_SCHEMA {
                return Err(Error::Parse(format!("unsupported certificate schema `{}`", doc.schema)).into());
            }
            let ok = doc.delta_graphic == doc.certificate.is_positive() && recognize::verify_certificate(&m, &doc.certificate);
            outln!("{ok}");
            if !ok {
                return Err(Error::Precondition("certificate does not verify".into()).into());
            }
        }
        Cmd::Gadget { kind, parts, m, k, attach, output } => {
            let g = gadget(&kind, &parts, m, k, &attach)?;
            write_or_print(output.as_deref(), &format::print_matroid(&g.matroid))?;
        }
        Cmd::Catalog { name, output } => write_or_print(output.as_deref(), &format::print_matroid(&catalog::catalog(&name)?))?,
        Cmd::Random { kind, seed, size, output } => {
            let mut rng = generate::rng(seed);
            let text = match kind.as_str() {
                "binary" => format::print_matroid(&generate::connected_binary(&mut rng, size.max(1), "e")),
                "wheel" => {
                    let spec = generate::generalized_wheel_spec(&mut rng, 4, size.max(4));
                    format::print_matroid(&recognize::generalized_wheel(&spec)?)
                }
                _ => format::print_graft(&generate::random_graft(&mut rng, size.max(2), size)),
            };
            write_or_print(output.as_deref(), &text)?;
        }
        Cmd::Search { max_n, shards, resume } => {
            let max_n = max_n.unwrap_or(cfg.search.max_n);
            let shards = shards.unwrap_or(cfg.search.shards);
            let reports = search::search_with(max_n, &SearchOptions { shards, checkpoint_dir: resume })?;
            let minimal: Vec<_> = reports.iter().filter(|r| r.verdict == Verdict::Minimal).collect();
            outln!("{} minor-minimal non-delta-graphic matroids on at most {max_n} elements", minimal.len());
            for r in minimal {
                outln!(
                    "{:<8} n={:<2} r={:<2} {}",
                    r.name.as_deref().unwrap_or("-"),
                    r.matroid.len(),
                    r.matroid.rank(),
                    r.canonical.as_deref().unwrap_or("(not binary)")
                );
            }
        }
    }
    Ok(())
}

fn graft(cmd: GraftCmd) -> Result<()> {
    match cmd {
        GraftCmd::Feasible { graft } => {
            let g = format::parse_graft(&read(&graft)?)?;
            let labels = g.edge_labels();
            let sets = g.feasible_sets()?;
            outln!("{} feasible sets", sets.len());
            for s in sets {
                let names: Vec<&str> = deltagraphic::bits::iter(s).map(|i| labels[i].as_str()).collect();
                outln!("{{{}}}", names.join(","));
            }
        }
        GraftCmd::Cyclic { graft, decomp, output } => {
            let g = format::parse_graft(&read(&graft)?)?;
            match decomp {
                Some(d) => {
                    let d = format::parse_cyclic(&read(&d)?)?;
                    let report = validate_cyclic(&g, &d, true);
                    for v in &report.violations {
                        outln!("violation {}: {}", v.clause, v.detail);
                    }
                    outln!("{}", if report.is_valid() { "valid" } else { "invalid" });
                }
                None => match build_cyclic(&g)? {
                    Some(d) => write_or_print(output.as_deref(), &format::print_cyclic(&d))?,
                    None => {
                        let why = g.find_delta_minor()?.map(|w| w.kind.name()).unwrap_or("no decomposition found");
                        return Err(Error::Precondition(format!("no cyclic decomposition ({why} minor)")).into());
                    }
                },
            }
        }
        GraftCmd::Tomatroid { graft, decomp, output } => {
            let g = format::parse_graft(&read(&graft)?)?;
            let d = format::parse_cyclic(&read(&decomp)?)?;
            let built = if d.is_cycle_host() {
                mhb::build_mhb_cycle(&g, &d)?
            } else if d.is_path_host() {
                mhb::build_mhb_path(&g, &d)?
            } else {
                return Err(Error::Precondition("host must be an even cycle or a path".into()).into());
            };
            write_or_print(output.as_deref(), &format::print_matroid(&built.matroid))?;
        }
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> i32 {
    e.chain().find_map(|c| c.downcast_ref::<Error>()).map_or(2, Error::exit_code)
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(exit_code(&e));
    }
}
