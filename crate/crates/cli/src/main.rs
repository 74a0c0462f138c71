//! Command-line front end for the flowface engines.

mod emit;

use std::fmt;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use flowface::counts::{flow_vertex_count, low_codim_face_count};
use flowface::facecount::{
    cry_fpoly, cry_primitive_fpoly, fpoly_main, primitive_fpoly, zero_order_convention,
};
use flowface::fishburn::{matrix_to_graph, primitive_matrices};
use flowface::genfunc::{cry_face_series, jelinek_series};
use flowface::oracle::{self, OracleConfig, DEFAULT_MAX_ORACLE_N};
use flowface::{FVector, LaurentPoly, NetflowVector, SeriesRequest};
use serde_json::Value;

use emit::{Format, Which};

#[derive(Parser, Debug)]
#[command(
    name = "flowface",
    version,
    about = "Face numbers of flow polytopes of complete graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Reject netflow entries other than 0 and 1 instead of reducing them to
    /// their support.
    #[arg(long, global = true)]
    strict: bool,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Accept n = 0 where a convention exists.
    #[arg(long, global = true)]
    allow_zero: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct NetflowArg {
    /// Comma-separated nonnegative netflow, e.g. 1,0,0,1.
    #[arg(long, value_delimiter = ',', required = true)]
    netflow: Vec<u64>,
}

#[derive(Args, Debug)]
struct CapArg {
    /// Largest n accepted by brute-force enumeration.
    #[arg(long, env = "FLOWFACE_MAX_ORACLE_N", default_value_t = DEFAULT_MAX_ORACLE_N)]
    max_n: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesKind {
    /// Face generating function of CRY_n.
    #[value(name = "F", alias = "f")]
    F,
    /// Fishburn series at v = w = x = y.
    #[value(name = "G", alias = "g")]
    G,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector of Flow_n(a).
    Fvector(NetflowArg),
    /// Primitive f-vector of Flow_n(a).
    Primitive(NetflowArg),
    /// f-vector of CRY_n.
    Cry {
        #[arg(long)]
        n: usize,
    },
    /// Brute-force enumeration of face graphs.
    Oracle {
        #[command(flatten)]
        netflow: NetflowArg,
        /// Compare with the formulas; exit 1 on disagreement.
        #[arg(long)]
        verify: bool,
        /// With --format dot, emit only primitive graphs.
        #[arg(long)]
        primitive: bool,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Number of vertices of Flow_n(a).
    Vertices {
        #[command(flatten)]
        netflow: NetflowArg,
        /// Also list the interval tuples of all vertices by enumeration.
        #[arg(long)]
        tuples: bool,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Number of primitive faces of CRY_n of codimension d, 1 <= d < n.
    Codim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Truncated generating function.
    Series {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = SeriesKind::F)]
        which: SeriesKind,
    },
    /// Primitive Fishburn matrices of size n.
    Fishburn {
        #[arg(long)]
        n: usize,
        /// List the matrices instead of counting them by grade.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        cap: CapArg,
    },
    /// f-vectors or primitive f-vectors of CRY_1 .. CRY_max-n.
    Table {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Which::F)]
        which: Which,
    },
}

/// Formula and enumeration disagree.
#[derive(Debug)]
struct Mismatch(String);

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for Mismatch {}

fn netflow(cli: &Cli, arg: &NetflowArg) -> Result<NetflowVector> {
    let a = if cli.strict {
        NetflowVector::from_counts_strict(&arg.netflow)
    } else {
        NetflowVector::from_counts(&arg.netflow)
    }
    .context("invalid netflow")?;
    if arg.netflow.iter().any(|&v| v > 1) {
        eprintln!("note: netflow reduced to its support {a}");
    }
    Ok(a)
}

fn fvector_of(p: &LaurentPoly) -> Result<FVector> {
    Ok(FVector::from_laurent(p)?)
}

fn oracle_config(cap: &CapArg) -> OracleConfig {
    OracleConfig {
        max_n: cap.max_n,
        jobs: None,
    }
}

fn run(cli: &Cli) -> Result<String> {
    let format = cli.format;
    match &cli.command {
        Command::Fvector(arg) => {
            let a = netflow(cli, arg)?;
            let fv = fvector_of(&fpoly_main(&a)?)?;
            emit::fvector(format, a.len(), Some(&a), Which::F, &fv)
        }
        Command::Primitive(arg) => {
            let a = netflow(cli, arg)?;
            let fv = fvector_of(&primitive_fpoly(&a)?)?;
            emit::fvector(format, a.len(), Some(&a), Which::Primitive, &fv)
        }
        Command::Cry { n } => {
            let p = match n {
                0 if cli.allow_zero => zero_order_convention().0,
                0 => bail!("n must be at least 1 (use --allow-zero for the n = 0 convention)"),
                _ => cry_fpoly(*n)?,
            };
            emit::fvector(format, *n, None, Which::F, &fvector_of(&p)?)
        }
        Command::Oracle {
            netflow: arg,
            verify,
            primitive,
            cap,
        } => {
            let a = netflow(cli, arg)?;
            let config = oracle_config(cap);
            let text = if format == Format::Dot {
                oracle::to_dot(&oracle::valid_subgraphs(&a, *primitive, &config)?)
            } else {
                let tally = oracle::enumerate(&a, &config)?;
                let (f, p) = (tally.fvector(), tally.primitive_fvector());
                if *verify {
                    let f_formula = fvector_of(&fpoly_main(&a)?)?;
                    let p_formula = fvector_of(&primitive_fpoly(&a)?)?;
                    if f != f_formula || p != p_formula {
                        print!("{}", oracle_text(format, &a, &f, &p)?);
                        return Err(
                            Mismatch(format!("enumeration and formulas differ for {a}")).into()
                        );
                    }
                    eprintln!("verified: enumeration agrees with the formulas for {a}");
                }
                oracle_text(format, &a, &f, &p)?
            };
            Ok(text)
        }
        Command::Vertices {
            netflow: arg,
            tuples,
            cap,
        } => {
            let a = netflow(cli, arg)?;
            let count = flow_vertex_count(&a);
            let fields = [
                ("n", Value::from(a.len())),
                ("netflow", emit::netflow_json(&a)),
            ];
            if !*tuples {
                return emit::integer(format, &fields, &count);
            }
            let mut list = oracle::vertex_tuples(&a, &oracle_config(cap))?;
            list.sort();
            if num_bigint::BigInt::from(list.len()) != count {
                return Err(
                    Mismatch(format!("{} tuples, formula gives {count}", list.len())).into(),
                );
            }
            vertices_text(format, &fields, &count, &list)
        }
        Command::Codim { n, d } => {
            let count = low_codim_face_count(*n, *d)?;
            emit::integer(
                format,
                &[("n", Value::from(*n)), ("d", Value::from(*d))],
                &count,
            )
        }
        Command::Series { order, which } => match which {
            SeriesKind::F => emit::series(format, "F", &cry_face_series(*order)),
            SeriesKind::G => emit::series(
                format,
                "G",
                &jelinek_series(&SeriesRequest::diagonal(*order)),
            ),
        },
        Command::Fishburn { n, list, cap } => {
            let ms = primitive_matrices(*n, &oracle_config(cap))?;
            if format == Format::Dot {
                let graphs: Vec<_> = ms.iter().map(matrix_to_graph).collect();
                return Ok(oracle::to_dot(&graphs));
            }
            if *list {
                return emit::matrices(format, &ms);
            }
            let mut by_grade = oracle::BettiProfile::default();
            for m in &ms {
                by_grade.record(m.grade());
            }
            emit::fvector(format, *n, None, Which::Primitive, &by_grade.to_fvector(0))
        }
        Command::Table { max_n, which } => {
            let rows = (1..=*max_n)
                .map(|n| {
                    let p = match which {
                        Which::F => cry_fpoly(n)?,
                        Which::Primitive => cry_primitive_fpoly(n)?,
                    };
                    Ok((n, fvector_of(&p)?))
                })
                .collect::<Result<Vec<_>>>()?;
            emit::table(format, *which, &rows)
        }
    }
}

fn oracle_text(format: Format, a: &NetflowVector, f: &FVector, p: &FVector) -> Result<String> {
    Ok(match format {
        Format::Plain => format!(
            "f: {}primitive: {}",
            emit::fvector(format, a.len(), None, Which::F, f)?,
            emit::fvector(format, a.len(), None, Which::Primitive, p)?
        ),
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("n".into(), Value::from(a.len()));
            obj.insert("netflow".into(), emit::netflow_json(a));
            obj.insert("fvector".into(), emit::fvector_json(f));
            obj.insert("primitive".into(), emit::fvector_json(p));
            format!("{}\n", Value::Object(obj))
        }
        _ => {
            emit::fvector(format, a.len(), Some(a), Which::F, f)?
                + &emit::fvector(format, a.len(), Some(a), Which::Primitive, p)?
        }
    })
}

fn vertices_text(
    format: Format,
    fields: &[(&str, Value)],
    count: &num_bigint::BigInt,
    list: &[Vec<u64>],
) -> Result<String> {
    let fmt_tuple = |t: &Vec<u64>| {
        let parts: Vec<String> = t.iter().map(u64::to_string).collect();
        parts.join(",")
    };
    Ok(match format {
        Format::Plain => {
            let mut out = format!("{count}\n");
            for t in list {
                out += &format!("({})\n", fmt_tuple(t));
            }
            out
        }
        Format::Json => {
            let mut obj: serde_json::Map<String, Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            obj.insert("count".into(), serde_json::from_str(&count.to_string())?);
            obj.insert("tuples".into(), serde_json::to_value(list)?);
            format!("{}\n", Value::Object(obj))
        }
        Format::Csv => list.iter().map(|t| fmt_tuple(t) + "\n").collect(),
        Format::Tex | Format::Dot => bail!("format {format:?} is not available for vertex tuples"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Mismatch>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
