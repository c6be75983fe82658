use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use cyclads::displacement::{is_valid_dv, optimal_dv};
use cyclads::enumerate::{enum_all, enum_cll, enum_dv};
use cyclads::oracle::{run_suite, DEFAULT_BUDGET, SUITES};
use cyclads::reconfig::{cll_path, dv_path};
use cyclads::render::render_svg;
use cyclads::{CyclicLadderLottery, DisplacementVector, Error, Permutation};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cyclads", version, about = "Optimal cyclic ladder lotteries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the inversion number of a vector (default: an optimal one).
    Inv {
        #[arg(long)]
        perm: String,
        #[arg(long, allow_hyphen_values = true)]
        dv: Option<String>,
    },
    /// Print an optimal displacement vector.
    OptimalDv {
        #[arg(long)]
        perm: String,
    },
    /// Stream vectors or lotteries as JSON lines.
    Enum {
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Required for `--mode lotteries`.
        #[arg(long, allow_hyphen_values = true)]
        dv: Option<String>,
        /// Print the total only.
        #[arg(long)]
        count: bool,
    },
    /// Print a shortest reconfiguration sequence.
    Reconfigure {
        #[arg(value_enum)]
        kind: Kind,
        /// Needed for `dv`.
        #[arg(long)]
        perm: Option<String>,
        /// Vector (comma list) or lottery (JSON or file).
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Draw a lottery as SVG.
    Render {
        /// Lottery JSON, inline or a file path.
        lottery: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a brute-force comparison suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Dvs,
    Lotteries,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dv,
    Lottery,
}

enum Failure {
    Usage(anyhow::Error),
    Unreachable(String),
    Infeasible(String),
    Disagree,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e = e.into();
        match e.downcast_ref::<Error>() {
            Some(Error::BudgetExceeded(_)) => {
                Failure::Infeasible(format!("{e}; raise CYCLADS_BUDGET"))
            }
            _ => Failure::Usage(e),
        }
    }
}

fn read_arg(arg: &str) -> anyhow::Result<String> {
    let looks_inline = arg.trim_start().starts_with(['[', '{'])
        || arg
            .chars()
            .all(|c| c.is_ascii_digit() || c == ',' || c == '-' || c.is_whitespace());
    if looks_inline {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
    }
}

fn parse_list<T: std::str::FromStr>(text: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    let text = text.trim();
    if text.starts_with('[') {
        let v: Vec<serde_json::Value> = serde_json::from_str(text)?;
        return v.iter().map(|e| Ok(e.to_string().parse()?)).collect();
    }
    text.split(',').map(|s| Ok(s.trim().parse()?)).collect()
}

fn parse_perm(arg: &str) -> anyhow::Result<Permutation> {
    Ok(Permutation::new(parse_list(&read_arg(arg)?)?)?)
}

fn parse_dv(arg: &str, perm: &Permutation) -> anyhow::Result<DisplacementVector> {
    let x = DisplacementVector::new(parse_list(&read_arg(arg)?)?)?;
    if !is_valid_dv(perm, &x)? {
        return Err(anyhow!(
            "{:?} is not a displacement vector of {perm}",
            x.entries()
        ));
    }
    Ok(x)
}

fn parse_lottery(arg: &str) -> anyhow::Result<CyclicLadderLottery> {
    Ok(serde_json::from_str(&read_arg(arg)?)?)
}

fn budget() -> anyhow::Result<u64> {
    match std::env::var("CYCLADS_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("CYCLADS_BUDGET={v}")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn emit<T: serde::Serialize>(
    out: &mut impl Write,
    items: impl Iterator<Item = T>,
    count: bool,
) -> anyhow::Result<()> {
    if count {
        writeln!(out, "{}", items.count())?;
    } else {
        for item in items {
            serde_json::to_writer(&mut *out, &item)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Inv { perm, dv } => {
            let p = parse_perm(&perm)?;
            let x = match dv {
                Some(s) => parse_dv(&s, &p)?,
                None => optimal_dv(&p),
            };
            writeln!(out, "{}", x.inversion_number())?;
        }
        Command::OptimalDv { perm } => {
            let p = parse_perm(&perm)?;
            writeln!(out, "{}", serde_json::to_string(&optimal_dv(&p))?)?;
        }
        Command::Enum {
            perm,
            mode,
            dv,
            count,
        } => {
            let p = parse_perm(&perm)?;
            match mode {
                Mode::Dvs => emit(&mut out, enum_dv(&p), count)?,
                Mode::All => emit(&mut out, enum_all(&p), count)?,
                Mode::Lotteries => {
                    let s = dv.ok_or_else(|| anyhow!("--mode lotteries needs --dv"))?;
                    let x = parse_dv(&s, &p)?;
                    emit(&mut out, enum_cll(&p, &x)?, count)?;
                }
            }
        }
        Command::Reconfigure {
            kind,
            perm,
            from,
            to,
        } => {
            let value = match kind {
                Kind::Dv => {
                    let p =
                        parse_perm(&perm.ok_or_else(|| anyhow!("reconfigure dv needs --perm"))?)?;
                    let (x, y) = (parse_dv(&from, &p)?, parse_dv(&to, &p)?);
                    let seq = dv_path(&x, &y, &p)?;
                    let mut v = serde_json::to_value(&seq)?;
                    v["length"] = json!(seq.len());
                    v
                }
                Kind::Lottery => {
                    let (a, b) = (parse_lottery(&from)?, parse_lottery(&to)?);
                    let seq = match cll_path(&a, &b) {
                        Ok(s) => s,
                        Err(Error::ClassMismatch) => {
                            return Err(Failure::Unreachable(
                                "the lotteries differ in permutation or displacement vector".into(),
                            ))
                        }
                        Err(e) => return Err(e.into()),
                    };
                    let mut v = serde_json::to_value(&seq)?;
                    v["length"] = json!(seq.len());
                    v
                }
            };
            writeln!(out, "{}", serde_json::to_string(&value)?)?;
        }
        Command::Render { lottery, out: path } => {
            let svg = render_svg(&parse_lottery(&lottery)?);
            match path {
                Some(p) => {
                    fs::write(&p, svg).with_context(|| format!("writing {}", p.display()))?
                }
                None => out.write_all(svg.as_bytes())?,
            }
        }
        Command::Verify { suite, max_n } => {
            let reports = run_suite(&suite, max_n, budget()?)?;
            let ok = reports.iter().all(|r| r.agree);
            for r in &reports {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
            writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
            out.flush()?;
            if !ok {
                return Err(Failure::Disagree);
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Unreachable(msg)) => {
            eprintln!("unreachable: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Disagree) => ExitCode::from(1),
    }
}
