use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use abrank::curve::FunctionFieldCurve;
use abrank::generators::{full_certificate, RankCertificate};
use abrank::oracle::{cross_validate, search_points, OracleReport, SearchConfig, SearchShape};
use abrank::rankalg::census::TSV_HEADER;
use abrank::rankalg::{classify, rank_breakdown, CensusGrid, ConsistencyReport, RankBreakdown};
use abrank::exactnum::SquareClass;
use abrank::{Error, Rational};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "abrank", version, about = "Mordell-Weil rank of y^2 = x^3 + A t^6 + B over Q(t)")]
struct Cli {
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// r_1..r_4 and the rank for one pair
    Rank {
        #[arg(allow_negative_numbers = true)]
        a: Rational,
        #[arg(allow_negative_numbers = true)]
        b: Rational,
    },
    /// Rank plus explicit generators, all checks re-run
    Certify {
        #[arg(allow_negative_numbers = true)]
        a: Rational,
        #[arg(allow_negative_numbers = true)]
        b: Rational,
    },
    /// Re-check a certificate written by `certify --format json` (`-` for stdin)
    Verify { path: String },
    /// Every sixth-power-free integer pair with |A|, |B| <= bound
    Census {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        bound: i64,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: Option<u16>,
    },
    /// Bounded-height point search on the four subfamilies
    Oracle {
        #[arg(allow_negative_numbers = true)]
        a: Rational,
        #[arg(allow_negative_numbers = true)]
        b: Rational,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        height: u64,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: Option<u16>,
        /// Also search all seven coefficients on E_{A,B} itself
        #[arg(long)]
        generic: bool,
    },
}

enum Failure {
    Usage(String),
    Check(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out<'a> = BufWriter<io::StdoutLock<'a>>;

fn nonzero(a: &Rational, b: &Rational) -> Result<(), Failure> {
    if a.is_zero() {
        return Err(Error::ZeroInput("A").into());
    }
    if b.is_zero() {
        return Err(Error::ZeroInput("B").into());
    }
    Ok(())
}

fn pool(jobs: Option<u16>) -> Result<rayon::ThreadPool, Failure> {
    let n = jobs.map(usize::from).unwrap_or_else(|| {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    });
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn json<T: serde::Serialize>(out: &mut Out, v: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn class_str(c: &Option<abrank::SixthPowerClass>) -> String {
    c.as_ref().map_or("?".into(), |c| c.to_string())
}

fn write_breakdown(out: &mut Out, bd: &RankBreakdown, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => json(out, bd)?,
        Format::Tsv => {
            let case = classify(&bd.a, &bd.b).map(|c| c.classification.tag()).unwrap_or("?".into());
            writeln!(out, "{TSV_HEADER}")?;
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                bd.a,
                bd.b,
                class_str(&bd.a_class),
                class_str(&bd.b_class),
                bd.r[0],
                bd.r[1],
                bd.r[2],
                bd.r[3],
                bd.rank,
                case
            )?;
        }
        Format::Text => {
            writeln!(out, "y^2 = x^3 + ({}) t^6 + ({})", bd.a, bd.b)?;
            writeln!(out, "classes: A ~ {}, B ~ {}", class_str(&bd.a_class), class_str(&bd.b_class))?;
            for t in &bd.reasons {
                let root = t.cube.root.as_ref().map_or("no".into(), |r| format!("yes, root {r}"));
                let sq = match &t.square.class {
                    SquareClass::Square(r) => format!("square of {r}"),
                    SquareClass::Neg3Square(r) => format!("-3 times square of {r}"),
                    SquareClass::Neither => "neither".into(),
                };
                writeln!(
                    out,
                    "r{} = {}   {} = {} cube: {}; {} = {}: {}",
                    t.k, t.value, t.cube.label, t.cube.value, root, t.square.label, t.square.value, sq
                )?;
            }
            writeln!(out, "rank = {}", bd.rank)?;
        }
    }
    Ok(())
}

fn write_certificate(out: &mut Out, c: &RankCertificate, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => json(out, c)?,
        Format::Tsv => {
            writeln!(out, "A\tB\tk\tconstruction\tdescended_point\tembedded_point\tchecks")?;
            for w in &c.witnesses {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    c.a,
                    c.b,
                    w.k,
                    w.construction,
                    w.descended_point,
                    w.embedded_point,
                    if w.checks.all() { "pass" } else { "fail" }
                )?;
            }
        }
        Format::Text => {
            writeln!(out, "{}", c.curve)?;
            writeln!(out, "rank = {} (r = {:?})", c.rank, c.breakdown.r)?;
            for w in &c.witnesses {
                writeln!(out, "k = {} [{}] on {}", w.k, w.construction, w.subfamily_curve)?;
                writeln!(out, "  constructed: {}", w.subfamily_point)?;
                writeln!(out, "  over Q(s):   {}", w.descended_point)?;
                writeln!(out, "  on E_(A,B):  {}", w.embedded_point)?;
                writeln!(out, "  checks:      {}", if w.checks.all() { "pass" } else { "FAIL" })?;
            }
            writeln!(out, "verified = {}", c.verified)?;
        }
    }
    Ok(())
}

fn audit(c: &RankCertificate) -> Result<(), Failure> {
    let failures = c.reverify()?;
    if !c.verified || !failures.is_empty() {
        let mut msg = String::from("certificate failed verification");
        for f in failures {
            msg.push_str("\n  ");
            msg.push_str(&f);
        }
        return Err(Failure::Check(msg));
    }
    Ok(())
}

fn cmd_census(out: &mut Out, bound: i64, jobs: Option<u16>, format: Format) -> Result<(), Failure> {
    let grid = CensusGrid::new(bound);
    let mut report = ConsistencyReport::default();
    if format != Format::Json {
        writeln!(out, "{TSV_HEADER}")?;
    }
    let pool = pool(jobs)?;
    let n = grid.values().count();
    let mut start = 0;
    while start < n {
        let end = (start + 16).min(n);
        // rows are computed in parallel, written in order
        for row in pool.install(|| grid.rows_for(start..end)) {
            report.record(&row);
            match format {
                Format::Json => {
                    serde_json::to_writer(&mut *out, &row).map_err(io::Error::from)?;
                    writeln!(out)?;
                }
                _ => writeln!(out, "{}", row.to_tsv())?,
            }
        }
        start = end;
    }
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &serde_json::json!({ "summary": report }))
                .map_err(io::Error::from)?;
            writeln!(out)?;
        }
        _ => {
            let h = report.histogram;
            writeln!(out, "# pairs\t{}", report.pairs)?;
            writeln!(out, "# histogram\trank0={}\trank1={}\trank2={}\trank3={}", h[0], h[1], h[2], h[3])?;
            writeln!(out, "# classify_agreement\t{}/{}", report.agreements, report.pairs)?;
        }
    }
    if let Some((a, b, r, c)) = report.disagreements.first() {
        return Err(Failure::Check(format!(
            "{} disagreement(s); first at (A, B) = ({a}, {b}): formula rank {r}, classification rank {c}",
            report.disagreements.len()
        )));
    }
    Ok(())
}

fn write_oracle(out: &mut Out, rep: &OracleReport, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => json(out, rep)?,
        Format::Tsv => {
            writeln!(out, "A\tB\tk\tr_k\tstatus\twitness_path\tfound")?;
            for t in &rep.terms {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    rep.a,
                    rep.b,
                    t.k,
                    t.r_k,
                    serde_json::to_value(t.status).map_err(io::Error::from)?.as_str().unwrap_or(""),
                    t.witness_path.as_deref().unwrap_or("-"),
                    t.found.join("; ")
                )?;
            }
        }
        Format::Text => {
            writeln!(out, "A = {}, B = {}, height <= {}", rep.a, rep.b, rep.height_bound)?;
            for t in &rep.terms {
                let status = serde_json::to_value(t.status).map_err(io::Error::from)?;
                writeln!(out, "k = {}: r_k = {}, {} [{}]", t.k, t.r_k, status.as_str().unwrap_or(""), t.shape)?;
                for p in &t.found {
                    writeln!(out, "  found {p}")?;
                }
            }
            writeln!(out, "search lower bound {} <= rank {}", rep.search_lower_bound, rep.rank)?;
        }
    }
    Ok(())
}

fn run(cli: Cli, out: &mut Out) -> Result<(), Failure> {
    match cli.cmd {
        Command::Rank { a, b } => {
            nonzero(&a, &b)?;
            write_breakdown(out, &rank_breakdown(&a, &b)?, cli.format.unwrap_or(Format::Text))
        }
        Command::Certify { a, b } => {
            nonzero(&a, &b)?;
            let c = full_certificate(&a, &b)?;
            write_certificate(out, &c, cli.format.unwrap_or(Format::Text))?;
            audit(&c)
        }
        Command::Verify { path } => {
            let mut text = String::new();
            if path == "-" {
                io::stdin().read_to_string(&mut text)?;
            } else {
                text = std::fs::read_to_string(&path)?;
            }
            let c: RankCertificate =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad certificate: {e}")))?;
            audit(&c)?;
            writeln!(out, "ok: A = {}, B = {}, rank {}", c.a, c.b, c.rank)?;
            Ok(())
        }
        Command::Census { bound, jobs } => cmd_census(out, bound, jobs, cli.format.unwrap_or(Format::Tsv)),
        Command::Oracle { a, b, height, jobs, generic } => {
            nonzero(&a, &b)?;
            let format = cli.format.unwrap_or(Format::Text);
            let (rep, extra) = pool(jobs)?.install(|| -> abrank::Result<_> {
                let rep = cross_validate(&a, &b, height)?;
                let extra = if generic {
                    let e = FunctionFieldCurve::e_ab(&a, &b)?;
                    search_points(&e, &SearchConfig::new(height, SearchShape::generic())?)?
                } else {
                    Vec::new()
                };
                Ok((rep, extra))
            })?;
            write_oracle(out, &rep, format)?;
            for p in extra {
                writeln!(out, "generic: {}", p.display_with("t"))?;
            }
            if rep.is_sound() {
                Ok(())
            } else {
                Err(Failure::Check("search contradicts the rank formula".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::Io)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
