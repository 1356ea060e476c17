//! `weingarten`: exact Haar-moment computations on the command line.
//!
//! Results are JSON on stdout. Exact values are rational strings (`"p/q"` or
//! `"p"`), Monte Carlo values are `{"mean": …, "se": …}` objects. Diagnostics
//! go to stderr. Exit status: 0 success, 1 a verified identity failed,
//! 2 invalid arguments or a size limit.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use weingarten::caps;
use weingarten::gram::{gram_matrix, rank_and_nullity, verify_moore_penrose, weingarten_matrix, ExactMatrix};
use weingarten::moments::{
    direct_pair_count, haar_moment, hewitt_ross_query, hewitt_ross_row_moment, trace_moment,
    trace_moment_via_sum, trace_power_moment, MomentQuery,
};
use weingarten::montecarlo::{estimate_moment, estimate_trace_power_moment, Estimate};
use weingarten::symgroup::matching_count;
use weingarten::verify::{run_suite, CriterionReport, SuiteConfig};
use weingarten::weingarten::weingarten_class_function;
use weingarten::{BigRational, Error, MultiIndex, Partition};

/// Environment variable overriding the group-enumeration cap.
const GROUP_CAP_VAR: &str = "WEINGARTEN_GROUP_CAP";

#[derive(Parser)]
#[command(name = "weingarten", version, about = "Exact Weingarten calculus and Haar moments on U(d)")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weingarten function Wg(·, d) on S_n.
    Wg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// A single cycle type, e.g. "2,1" or "(2,1)".
        #[arg(long = "class")]
        class: Option<Partition>,
    },
    /// ∫ u_{i1j1}⋯u_{injn} conj(u_{i'1j'1})⋯conj(u_{i'nj'n}) dU.
    Moment(MomentArgs),
    /// ∫ |tr U^k|^{2n} dU.
    TraceMoment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Also evaluate the stabilizer-sum form (k = 1 only).
        #[arg(long)]
        via_sum: bool,
    },
    /// Row moment ∫ |u_11|^{2a_1}⋯|u_1d|^{2a_d} dU from the closed form.
    Hr {
        /// Composition with exactly d non-negative parts, e.g. "1,1".
        #[arg(long)]
        a: String,
        #[arg(long)]
        d: usize,
    },
    /// Gram and Weingarten matrices of S_n (n ≤ 5).
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Check the four Moore-Penrose identities.
        #[arg(long)]
        verify_mp: bool,
        /// Report rank and nullity of G.
        #[arg(long)]
        rank: bool,
        /// Print both matrices.
        #[arg(long)]
        matrices: bool,
    },
    /// Monte Carlo estimate of a moment or of E|tr U^k|^{2n}.
    Mc {
        #[command(flatten)]
        query: McQuery,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the identity suite; exits 1 if any identity fails.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_d: usize,
        /// Include the Monte Carlo oracle with this many samples per dimension.
        #[arg(long)]
        mc_samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct MomentArgs {
    /// Comma-separated 1-based row indices of the u factors.
    #[arg(long)]
    i: MultiIndex,
    #[arg(long)]
    j: MultiIndex,
    /// Row indices of the conjugated factors (may be empty: --ip "").
    #[arg(long)]
    ip: MultiIndex,
    #[arg(long)]
    jp: MultiIndex,
    #[arg(long)]
    d: usize,
}

#[derive(Args)]
struct McQuery {
    #[arg(long, requires_all = ["j", "ip", "jp"], conflicts_with = "trace_n")]
    i: Option<MultiIndex>,
    #[arg(long)]
    j: Option<MultiIndex>,
    #[arg(long)]
    ip: Option<MultiIndex>,
    #[arg(long)]
    jp: Option<MultiIndex>,
    /// Estimate E|tr U^k|^{2n} with this n instead of a single moment.
    #[arg(long = "trace-n")]
    trace_n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    d: usize,
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Identity(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn rational(v: &BigRational) -> Value {
    Value::String(v.to_string())
}

fn matrix_json(m: &ExactMatrix) -> Value {
    Value::Array(
        (0..m.order())
            .map(|r| Value::Array(m.row(r).iter().map(rational).collect()))
            .collect(),
    )
}

fn estimate_json(e: &Estimate) -> Value {
    json!({
        "mean": {"re": e.mean.re, "im": e.mean.im},
        "se": e.std_error,
        "samples": e.samples,
    })
}

fn report_json(r: &CriterionReport) -> Value {
    json!({
        "id": r.id,
        "name": r.name,
        "passed": r.passed,
        "checks": r.checks,
        "seconds": r.seconds,
        "detail": r.detail,
        "failures": r.failures,
    })
}

fn run(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Wg { n, d, class } => {
            if n == 0 {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            let wg = weingarten_class_function(n, d)?;
            match class {
                Some(mu) => Ok(rational(wg.get(&mu)?)),
                None => {
                    let mut table = Map::new();
                    for (mu, v) in wg.iter() {
                        table.insert(mu.to_string(), rational(v));
                    }
                    Ok(Value::Object(table))
                }
            }
        }
        Command::Moment(args) => {
            let q = MomentQuery::new(args.i, args.j, args.ip, args.jp, args.d)?;
            let value = haar_moment(&q)?;
            let (sigma, tau) = if q.n() == q.n_prime() {
                (matching_count(&q.i, &q.i_prime), matching_count(&q.j, &q.j_prime))
            } else {
                (0.into(), 0.into())
            };
            Ok(json!({
                "value": rational(&value),
                "n": q.n(),
                "n_prime": q.n_prime(),
                "d": q.d,
                "matched_sigma": sigma.to_string(),
                "matched_tau": tau.to_string(),
                "pairs_enumerated": if q.n() == q.n_prime() { direct_pair_count(&q).to_string() } else { "0".into() },
            }))
        }
        Command::TraceMoment { n, d, k, via_sum } => {
            if k == 0 {
                return Err(Failure::Usage("k must be at least 1".into()));
            }
            let mut out = Map::new();
            out.insert("n".into(), n.into());
            out.insert("d".into(), d.into());
            out.insert("k".into(), k.into());
            if k == 1 {
                out.insert("value".into(), Value::String(trace_moment(n, d)?.to_string()));
                if via_sum {
                    out.insert("via_sum".into(), rational(&trace_moment_via_sum(n, d)?));
                }
            } else {
                if via_sum {
                    return Err(Failure::Usage("--via-sum applies to k = 1 only".into()));
                }
                out.insert("value".into(), rational(&trace_power_moment(k, n, d)?));
            }
            Ok(Value::Object(out))
        }
        Command::Hr { a, d } => {
            let parts = parse_composition(&a)?;
            let closed = hewitt_ross_row_moment(&parts, d)?;
            let integral = haar_moment(&hewitt_ross_query(&parts, d)?)?;
            Ok(json!({
                "value": rational(&closed),
                "haar_moment": rational(&integral),
                "agrees": closed == integral,
            }))
        }
        Command::Gram { n, d, verify_mp, rank, matrices } => {
            let mut out = Map::new();
            out.insert("n".into(), n.into());
            out.insert("d".into(), d.into());
            let all = !verify_mp && !rank && !matrices;
            if verify_mp || all {
                let r = verify_moore_penrose(n, d)?;
                out.insert("GWG=G".into(), r.gwg_equals_g.into());
                out.insert("WGW=W".into(), r.wgw_equals_w.into());
                out.insert("(WG)*=WG".into(), r.wg_symmetric.into());
                out.insert("(GW)*=GW".into(), r.gw_symmetric.into());
                out.insert("identity_row=Wg".into(), r.identity_row_matches.into());
                out.insert("W=G^-1".into(), r.w_is_inverse.map_or(Value::Null, Value::Bool));
            }
            if rank || all {
                let (rk, nullity) = rank_and_nullity(n, d)?;
                out.insert("rank".into(), rk.into());
                out.insert("nullity".into(), nullity.into());
            }
            if matrices {
                let g = gram_matrix(n, d)?;
                let w = weingarten_matrix(n, d)?;
                let labels: Vec<Value> = g.labels().iter().map(|s| Value::String(s.to_string())).collect();
                out.insert("labels".into(), Value::Array(labels));
                out.insert("G".into(), matrix_json(&g));
                out.insert("W".into(), matrix_json(&w));
            }
            Ok(Value::Object(out))
        }
        Command::Mc { query, samples, seed } => {
            if let Some(n) = query.trace_n {
                let est = estimate_trace_power_moment(query.k, n, query.d, samples, seed)?;
                let mut out = estimate_json(&est);
                let exact = if query.k == 1 {
                    Some(rational(&BigRational::from_integer(trace_moment(n, query.d)?)))
                } else {
                    trace_power_moment(query.k, n, query.d).ok().map(|v| rational(&v))
                };
                if let Some(x) = exact {
                    out["exact"] = x;
                }
                return Ok(out);
            }
            let (Some(i), Some(j), Some(ip), Some(jp)) = (query.i, query.j, query.ip, query.jp) else {
                return Err(Failure::Usage("give --i --j --ip --jp or --trace-n".into()));
            };
            let q = MomentQuery::new(i, j, ip, jp, query.d)?;
            let est = estimate_moment(&q, samples, seed)?;
            let mut out = estimate_json(&est);
            if let Ok(v) = haar_moment(&q) {
                out["exact"] = rational(&v);
            }
            Ok(out)
        }
        Command::Verify { max_n, max_d, mc_samples, seed } => {
            let reports = run_suite(&SuiteConfig {
                max_n,
                max_d,
                mc_samples,
                seed,
            })?;
            for r in &reports {
                eprintln!("{r}");
            }
            let passed = reports.iter().all(|r| r.passed);
            let out = json!({
                "passed": passed,
                "max_n": max_n,
                "max_d": max_d,
                "criteria": reports.iter().map(report_json).collect::<Vec<_>>(),
            });
            if passed {
                Ok(out)
            } else {
                Err(Failure::Identity(out))
            }
        }
    }
}

fn parse_composition(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("invalid composition part {p:?} in {s:?}")))
        })
        .collect()
}

fn apply_group_cap() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(GROUP_CAP_VAR) else {
        return Ok(());
    };
    let cap: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{GROUP_CAP_VAR}={raw:?} is not a positive integer")))?;
    caps::set_group_cap(cap)?;
    Ok(())
}

fn print(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    let mut out = std::io::stdout().lock();
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(out, "{}", text.expect("JSON values always serialise"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = apply_group_cap().and_then(|()| run(cli.command));
    match result {
        Ok(value) => {
            print(&value, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Identity(report)) => {
            print(&report, cli.pretty);
            eprintln!("error: identity check failed");
            ExitCode::from(1)
        }
    }
}
