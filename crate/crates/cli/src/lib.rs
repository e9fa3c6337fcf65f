//! Command-line front end for `srstirling`.
//!
//! [`run`] parses an argument vector, writes one record to `out` and returns
//! the process exit code: 0 on success, 1 on a usage or input error, 2 when a
//! `verify` target finds a mismatch.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use srstirling::graphcombi::{
    clique_partition_counts, constrained_orientation_formula, count_acyclic_orientations,
    count_constrained_orientations, Graph,
};
use srstirling::polyseq::{
    poly_bernoulli, poly_bernoulli_egf, poly_cauchy_first, poly_cauchy_first_egf, poly_cauchy_second,
    poly_cauchy_second_egf,
};
use srstirling::riordan::{inverse_matrix, polynomial_by_determinant, stirling_matrix};
use srstirling::stirling::oracle::{partition_counts, permutation_counts};
use srstirling::{EgfSeries, Guards, IndexSet, IntPolynomial, Kind, MonoidPolicy, SRContext};

pub mod output;
pub mod verify;

use output::{Format, Payload, Record};

#[derive(Parser, Debug)]
#[command(name = "srstirling", version, about = "(S,r)-Stirling numbers, Riordan matrices and related counts")]
struct Cli {
    /// Block-size set: all, odd, even, mod q, 1..m, m.., or {a,b,...}
    #[arg(long, global = true, default_value = "all")]
    set: String,
    /// Number of special elements
    #[arg(long, global = true, default_value_t = 0)]
    r: usize,
    /// Series truncation order (defaults to what the request needs)
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Override every enumeration guard with this value
    #[arg(long, global = true)]
    guard: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Second,
    First,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Second => Kind::Second,
            KindArg::First => Kind::First,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Egf,
    Sum,
    Determinant,
    Oracle,
    Formula,
}

#[derive(Args, Debug)]
struct Entry {
    #[arg(long)]
    n: usize,
    /// A single entry; without it the whole row `k = 0..=n` is printed
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Second-kind numbers {n, k}_{S,r}
    Stirling2(Entry),
    /// First-kind numbers [n, k]_{S,r}
    Stirling1(Entry),
    /// Bell numbers B_{n,S,r}
    Bell {
        #[arg(long)]
        n: usize,
        /// Print B_0 .. B_n
        #[arg(long)]
        sequence: bool,
    },
    /// Bell polynomial B_{n,S,r}(x)
    Bellpoly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Sum)]
        method: Method,
    },
    /// Factorial polynomial A_{n,S,r}(x)
    Factpoly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Sum)]
        method: Method,
    },
    /// Stirling matrix M or L, or its inverse T or U
    Matrix {
        #[arg(long, value_enum, default_value_t = KindArg::Second)]
        kind: KindArg,
        #[arg(long)]
        inverse: bool,
        #[arg(long, default_value_t = 9)]
        size: usize,
    },
    /// Poly-Bernoulli numbers
    Polyb {
        #[arg(long, allow_negative_numbers = true)]
        mu: i64,
        #[arg(long)]
        n: usize,
        /// Print values 0..=n
        #[arg(long)]
        sequence: bool,
        #[arg(long, value_enum, default_value_t = Method::Sum)]
        method: Method,
    },
    /// Poly-Cauchy numbers of the first or second kind
    Polyc {
        #[arg(long, value_enum, default_value_t = KindArg::First)]
        kind: KindArg,
        #[arg(long, allow_negative_numbers = true)]
        mu: i64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sequence: bool,
        #[arg(long, value_enum, default_value_t = Method::Sum)]
        method: Method,
    },
    /// Acyclic orientations of K_{n1,n2}, or of the extended bipartite graph
    /// under the block-size constraint
    Orientations {
        #[arg(long)]
        constrained: bool,
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        n2: Option<usize>,
        /// Graph as JSON {"vertices": v, "edges": [[a, b], ...]}
        #[arg(long, conflicts_with_all = ["n1", "n2", "constrained"])]
        graph: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
    },
    /// Partitions into cliques with sizes in S, indexed by clique count
    Cliqueparts {
        /// Use K_n joined with the edgeless graph on r vertices
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "n")]
        graph: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Cross-check two independent computations
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Largest n checked
        #[arg(long)]
        n: Option<usize>,
        /// Restrict `mobius` to one kind
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Accept +1-monoids verified only up to a bound
        #[arg(long)]
        allow_bounded: bool,
    },
    /// Direct enumeration counts for row n
    Oracle {
        #[arg(long, value_enum, default_value_t = KindArg::Second)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Recurrences,
    Orthogonality,
    Mobius,
    Orientations,
    Polyegf,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(record) => {
            if let Err(e) = record.render(cli.format, out) {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            exit_code(&record)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn exit_code(record: &Record) -> i32 {
    match &record.result {
        Payload::Report(r) if !r.ok() => 2,
        _ => 0,
    }
}

fn guards(cli: &Cli, err: &mut dyn Write) -> Guards {
    match cli.guard {
        None => Guards::default(),
        Some(g) => {
            let _ = writeln!(
                err,
                "warning: enumeration guards overridden to {g}; large values can take a very long time"
            );
            Guards {
                partitions: g,
                permutations: g,
                pair_poset: g,
                ordered_poset: g,
                orientation_edges: g,
                clique_vertices: g,
            }
        }
    }
}

fn context(cli: &Cli, set: &IndexSet, needed: usize) -> srstirling::Result<SRContext> {
    let order = cli.order.unwrap_or(needed.max(EgfSeries::DEFAULT_ORDER));
    SRContext::with_order(set.clone(), cli.r, order)
}

fn strings<T: ToString>(values: &[T]) -> Vec<String> {
    values.iter().map(T::to_string).collect()
}

fn polynomial(p: &IntPolynomial, n: usize) -> Payload {
    let mut coefficients = strings(p.coeffs());
    coefficients.resize(n + 1, "0".to_string());
    Payload::Polynomial {
        coefficients,
        text: p.to_string(),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Egf => "egf",
        Method::Sum => "sum",
        Method::Determinant => "determinant",
        Method::Oracle => "oracle",
        Method::Formula => "formula",
    }
}

fn bad_method(command: &str, m: Method) -> srstirling::Error {
    srstirling::Error::InvalidStructure(format!("method {} is not available for {command}", method_name(m)))
}

fn parse_graph(text: &str) -> srstirling::Result<Graph> {
    Graph::from_json(text)
}

fn execute(cli: &Cli, err: &mut dyn Write) -> srstirling::Result<Record> {
    let set: IndexSet = cli.set.parse()?;
    let guards = guards(cli, err);
    let base = |name: &str, method: &str, payload: Payload| {
        Record::new(name, method, payload)
            .param("set", set.to_string())
            .param("r", cli.r)
    };

    let record = match &cli.command {
        Command::Stirling2(e) | Command::Stirling1(e) => {
            let (name, kind) = match &cli.command {
                Command::Stirling2(_) => ("stirling2", Kind::Second),
                _ => ("stirling1", Kind::First),
            };
            let ctx = context(cli, &set, e.n)?;
            let payload = match e.k {
                Some(k) => Payload::Scalar(ctx.stirling(kind, e.n, k)?.to_string()),
                None => {
                    let row: Vec<BigInt> = (0..=e.n).map(|k| ctx.stirling(kind, e.n, k)).collect::<Result<_, _>>()?;
                    Payload::Sequence {
                        index: "k",
                        start: 0,
                        values: strings(&row),
                    }
                }
            };
            let rec = base(name, "egf", payload).param("n", e.n);
            match e.k {
                Some(k) => rec.param("k", k),
                None => rec,
            }
        }
        Command::Bell { n, sequence } => {
            let ctx = context(cli, &set, *n)?;
            let payload = if *sequence {
                Payload::Sequence {
                    index: "n",
                    start: 0,
                    values: strings(&ctx.bell_sequence(*n)?),
                }
            } else {
                Payload::Scalar(ctx.bell(*n)?.to_string())
            };
            base("bell", "egf", payload).param("n", *n)
        }
        Command::Bellpoly { n, method } | Command::Factpoly { n, method } => {
            let (name, kind) = match &cli.command {
                Command::Bellpoly { .. } => ("bellpoly", Kind::Second),
                _ => ("factpoly", Kind::First),
            };
            let ctx = context(cli, &set, *n)?;
            let p = match (method, kind) {
                (Method::Sum, Kind::Second) => ctx.bell_polynomial(*n)?,
                (Method::Sum, Kind::First) => ctx.factorial_polynomial(*n)?,
                (Method::Determinant, _) => polynomial_by_determinant(&ctx, kind, *n)?,
                (m, _) => return Err(bad_method(name, *m)),
            };
            base(name, method_name(*method), polynomial(&p, *n)).param("n", *n)
        }
        Command::Matrix { kind, inverse, size } => {
            let ctx = context(cli, &set, *size)?;
            let kind = Kind::from(*kind);
            let m = if *inverse {
                inverse_matrix(&ctx, kind, *size)?
            } else {
                stirling_matrix(&ctx, kind, *size)?
            };
            let rows: Vec<Vec<String>> = m.rows().iter().map(|row| strings(row)).collect();
            let method = if *inverse { "egf+inverse" } else { "egf" };
            base("matrix", method, Payload::Matrix(rows))
                .param("kind", kind.to_string())
                .param("inverse", *inverse)
                .param("size", *size)
        }
        Command::Polyb { mu, n, sequence, method } => {
            let ctx = context(cli, &set, *n)?;
            let payload = poly_values(&ctx, *mu, *n, *sequence, *method, poly_bernoulli, poly_bernoulli_egf, "polyb")?;
            base("polyb", method_name(*method), payload).param("mu", *mu).param("n", *n)
        }
        Command::Polyc { kind, mu, n, sequence, method } => {
            let ctx = context(cli, &set, *n)?;
            let payload = match kind {
                KindArg::First => {
                    poly_values(&ctx, *mu, *n, *sequence, *method, poly_cauchy_first, poly_cauchy_first_egf, "polyc")?
                }
                KindArg::Second => poly_values(
                    &ctx,
                    *mu,
                    *n,
                    *sequence,
                    *method,
                    poly_cauchy_second,
                    poly_cauchy_second_egf,
                    "polyc",
                )?,
            };
            base("polyc", method_name(*method), payload)
                .param("kind", Kind::from(*kind).to_string())
                .param("mu", *mu)
                .param("n", *n)
        }
        Command::Orientations { constrained, n1, n2, graph, method } => {
            if let Some(text) = graph {
                let g = parse_graph(text)?;
                if *method != Method::Oracle {
                    return Err(bad_method("orientations --graph", *method));
                }
                let count = count_acyclic_orientations(&g, &guards)?;
                base("orientations", "oracle", Payload::Scalar(count.to_string()))
                    .param("graph", serde_json::from_str::<serde_json::Value>(&g.to_json()).unwrap_or_default())
            } else {
                let (n1, n2) = match (n1, n2) {
                    (Some(a), Some(b)) => (*a, *b),
                    _ => return Err(srstirling::Error::InvalidStructure("orientations needs --n1 and --n2, or --graph".into())),
                };
                let count = match (constrained, method) {
                    (true, Method::Oracle) => count_constrained_orientations(n1, n2, cli.r, &set, &guards)?,
                    (true, Method::Formula) => constrained_orientation_formula(n1, n2, cli.r, &set)?,
                    (false, Method::Oracle) => count_acyclic_orientations(&Graph::complete_bipartite(n1, n2), &guards)?,
                    (_, m) => return Err(bad_method("orientations", *m)),
                };
                base("orientations", method_name(*method), Payload::Scalar(count.to_string()))
                    .param("constrained", *constrained)
                    .param("n1", n1)
                    .param("n2", n2)
            }
        }
        Command::Cliqueparts { n, graph, k } => {
            let (g, rec_param): (Graph, (&str, serde_json::Value)) = match (n, graph) {
                (Some(n), None) => (Graph::join_complete_empty(*n, cli.r), ("n", (*n).into())),
                (None, Some(text)) => {
                    let g = parse_graph(text)?;
                    let v = serde_json::from_str(&g.to_json()).unwrap_or_default();
                    (g, ("graph", v))
                }
                _ => return Err(srstirling::Error::InvalidStructure("cliqueparts needs --n or --graph".into())),
            };
            let counts = clique_partition_counts(&g, &set, &guards)?;
            let payload = match k {
                Some(k) => Payload::Scalar(counts.get(*k).cloned().unwrap_or_default().to_string()),
                None => Payload::Sequence {
                    index: "cliques",
                    start: 0,
                    values: strings(&counts),
                },
            };
            let rec = base("cliqueparts", "oracle", payload).param(rec_param.0, rec_param.1);
            match k {
                Some(k) => rec.param("k", *k),
                None => rec,
            }
        }
        Command::Verify { target, n, kind, allow_bounded } => {
            let policy = if *allow_bounded {
                MonoidPolicy::AllowBounded
            } else {
                MonoidPolicy::Strict
            };
            let (name, n_max, report) = match target {
                Target::Recurrences => {
                    let n_max = n.unwrap_or(8);
                    ("recurrences", n_max, verify::recurrences(&set, cli.r, n_max)?)
                }
                Target::Orthogonality => {
                    let n_max = n.unwrap_or(9);
                    let ctx = context(cli, &set, n_max + 1)?;
                    ("orthogonality", n_max, verify::orthogonality(&ctx, n_max + 1)?)
                }
                Target::Mobius => {
                    let n_max = n.unwrap_or(4);
                    let ctx = context(cli, &set, n_max + 1)?;
                    let kinds = match kind {
                        Some(k) => vec![Kind::from(*k)],
                        None => vec![Kind::Second, Kind::First],
                    };
                    ("mobius", n_max, verify::mobius(&ctx, &kinds, n_max, policy, &guards)?)
                }
                Target::Orientations => {
                    let n_max = n.unwrap_or(2);
                    ("orientations", n_max, verify::orientations(&set, cli.r, n_max, &guards)?)
                }
                Target::Polyegf => {
                    let n_max = n.unwrap_or(10);
                    let ctx = context(cli, &set, n_max)?;
                    ("polyegf", n_max, verify::polyegf(&ctx, &[-2, -1, 0, 1, 2], n_max)?)
                }
            };
            Record::new("verify", "cross-check", Payload::Report(report))
                .param("target", name)
                .param("set", set.to_string())
                .param("r", cli.r)
                .param("n", n_max)
        }
        Command::Oracle { kind, n, k } => {
            let kind = Kind::from(*kind);
            let counts = match kind {
                Kind::Second => partition_counts(&set, cli.r, *n, &guards)?,
                Kind::First => permutation_counts(&set, cli.r, *n, &guards)?,
            };
            let payload = match k {
                Some(k) => Payload::Scalar(counts.get(*k).cloned().unwrap_or_default().to_string()),
                None => Payload::Sequence {
                    index: "k",
                    start: 0,
                    values: strings(&counts),
                },
            };
            let rec = base("oracle", "oracle", payload).param("kind", kind.to_string()).param("n", *n);
            match k {
                Some(k) => rec.param("k", *k),
                None => rec,
            }
        }
    };
    Ok(record)
}

type SumFn = fn(&SRContext, i64, usize) -> srstirling::Result<srstirling::Rational>;
type EgfFn = fn(&SRContext, i64, usize) -> srstirling::Result<EgfSeries>;

#[allow(clippy::too_many_arguments)]
fn poly_values(
    ctx: &SRContext,
    mu: i64,
    n: usize,
    sequence: bool,
    method: Method,
    sum: SumFn,
    egf: EgfFn,
    command: &str,
) -> srstirling::Result<Payload> {
    let values = match method {
        Method::Sum => (0..=n).map(|i| sum(ctx, mu, i)).collect::<srstirling::Result<Vec<_>>>()?,
        Method::Egf => {
            let series = egf(ctx, mu, n)?;
            (0..=n).map(|i| series.coefficient_egf(i)).collect::<srstirling::Result<Vec<_>>>()?
        }
        m => return Err(bad_method(command, m)),
    };
    Ok(if sequence {
        Payload::Sequence {
            index: "n",
            start: 0,
            values: strings(&values),
        }
    } else {
        Payload::Scalar(values[n].to_string())
    })
}
