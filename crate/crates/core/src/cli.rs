//! The `charvar` command line. [`run`] returns the exit code together with
//! the text for stdout and stderr so it can be tested without a process.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 computation limit
//! exceeded, 4 property-check failure.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Error;
use crate::hilb::{self, Cap};
use crate::hlv::{self, MultiplicityData};
use crate::markov::{self, TraceWord, TRACE_VARIABLES};
use crate::multiform;
use crate::partition::Partition;
use crate::symfunc::p_log;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "charvar",
    version,
    about = "Exact computations for character varieties, Hilbert-scheme modules and the Markov cubic"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mixed Hodge polynomial of the character variety with multiplicities mu.
    Mh {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        punctures: usize,
        /// Puncture blocks separated by ';', parts by ',', e.g. "1,1;1,1".
        #[arg(long)]
        mu: String,
        /// Truncation rank of the partition function.
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        /// Also print q^(d/2) MH(q, 1/q).
        #[arg(long)]
        point_count: bool,
    },
    /// The HLV partition function Omega_{g,k} up to a rank.
    Omega {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        punctures: usize,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
    },
    /// The twisted genus-0 series Omega_k, or its plethystic logarithm.
    Twisted {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long)]
        plog: bool,
    },
    /// Euler characteristic of O(k) on the Hilbert scheme of n points.
    ChiHilb {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// The bigraded modules M_{n,k}.
    Module {
        #[command(subcommand)]
        command: ModuleCommand,
    },
    /// Multiform calculus checks.
    Multiform {
        #[command(subcommand)]
        command: MultiformCommand,
    },
    /// The Markov cubic and trace coordinates.
    Markov {
        #[command(subcommand)]
        command: MarkovCommand,
    },
    /// Genericity of semisimple eigenvalue data.
    GenericCheck {
        #[arg(long)]
        mu: String,
        /// Eigenvalues per puncture, one per part: "2,1/2;3,1/3".
        #[arg(long)]
        eigenvalues: String,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct ModuleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    /// Box: d_x + k n(n-1)/2 <= cap-x.
    #[arg(long, default_value_t = 6)]
    cap_x: u32,
    /// Box: d_y <= cap-y.
    #[arg(long, default_value_t = 6)]
    cap_y: u32,
}

impl ModuleArgs {
    fn cap(&self) -> Cap {
        Cap::new(self.cap_x, self.cap_y)
    }
}

#[derive(Subcommand, Debug)]
enum ModuleCommand {
    /// Dimensions of the bidegree components.
    Hilbert(ModuleArgs),
    /// Dimensions of the quotient by the span of shuffle products.
    Primitive(ModuleArgs),
    /// Bracket table of the operators T_{r,s} (x) pt and T_{r,s} (x) 1.
    CohaCheck {
        #[command(flatten)]
        args: ModuleArgs,
        /// Largest r + s.
        #[arg(long, default_value_t = 3)]
        max_rs: u32,
    },
    /// Whether psi-polynomials over Delta^(k-1) span the primitive quotient.
    GeneratorsCheck(ModuleArgs),
    /// Primitive series against the plethystic logarithm of Omega_k.
    Conjecture(ModuleArgs),
}

#[derive(Subcommand, Debug)]
enum MultiformCommand {
    /// Kunneth identity on random invariant polynomials and multiforms.
    Kunneth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum MarkovCommand {
    /// Markov equation on sampled tuples and on the symbolic family.
    Verify {
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Trace of a word as a polynomial in x, y, z, a1..a4.
    TraceWord {
        /// Signed generator indices, e.g. "1,2,-1,-2".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Genericity of the eigenvalues lambda_1..lambda_4.
    Generic {
        #[arg(long, allow_hyphen_values = true)]
        lambdas: String,
    },
}

/// Result of a command before formatting.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            passed: true,
        }
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::RankOverflow { .. } | Error::ReductionLimit(_) => EXIT_LIMIT,
        Error::MembershipFailure { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses "1,1;2" into partitions; parts must be weakly decreasing.
pub fn parse_mu(s: &str) -> crate::Result<Vec<Partition>> {
    s.split(';')
        .map(|block| {
            let parts = block
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidPartition(format!("bad part {p:?} in {s:?}")))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            Partition::new(parts)
        })
        .collect()
}

pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::InvalidArgument(format!("bad rational {s:?}")))
}

fn parse_rationals(s: &str) -> crate::Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

fn mu_json(mu: &[Partition]) -> Value {
    json!(mu.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>())
}

fn check_punctures(mu: &[Partition], punctures: usize) -> std::result::Result<(), Failure> {
    if mu.len() != punctures {
        return Err(Failure::Usage(format!(
            "--mu has {} blocks but --punctures is {punctures}",
            mu.len()
        )));
    }
    Ok(())
}

fn cmd_mh(genus: u32, punctures: usize, mu: &str, max_rank: usize, point_count: bool) -> CmdResult {
    let mu = parse_mu(mu)?;
    check_punctures(&mu, punctures)?;
    let r = hlv::mixed_hodge(genus, &mu, max_rank)?;
    let mut text = r.mh.to_string();
    let mut js = json!({
        "genus": genus,
        "punctures": punctures,
        "mu": mu_json(&mu),
        "mh": r.mh.to_string(),
        "is_polynomial": r.is_polynomial,
    });
    if point_count {
        let n = mu[0].size() as i64;
        let sq: i64 = mu
            .iter()
            .flat_map(|p| p.parts())
            .map(|&m| (m as i64).pow(2))
            .sum();
        let dim = n * n * (2 * genus as i64 - 2 + punctures as i64) - sq + 2;
        let pc = hlv::fq_point_count(&r.mh, dim.max(0) as u32)?;
        text.push_str(&format!("\npoint count: {pc}"));
        js["dimension"] = json!(dim);
        js["point_count"] = json!(pc.to_string());
    }
    Ok(Outcome::ok(text, js))
}

fn cmd_twisted(k: u32, max_rank: usize, plog: bool) -> CmdResult {
    let s = hlv::omega_twisted(k, max_rank);
    let s = if plog { p_log(&s)? } else { s };
    Ok(Outcome::ok(
        s.to_string(),
        json!({"k": k, "max_rank": max_rank, "plog": plog, "series": s.to_json()}),
    ))
}

fn table_outcome(t: &hilb::HilbertTable) -> Outcome {
    Outcome::ok(format!("n = {}, k = {}\n{t}", t.n, t.k), t.to_json())
}

fn cmd_module(c: ModuleCommand) -> CmdResult {
    match c {
        ModuleCommand::Hilbert(a) => Ok(table_outcome(&hilb::hilbert_series(a.n, a.k, a.cap()))),
        ModuleCommand::Primitive(a) => {
            Ok(table_outcome(&hilb::primitive_quotient(a.n, a.k, a.cap())?))
        }
        ModuleCommand::CohaCheck { args: a, max_rs } => {
            let r = hilb::coha_bracket_check(a.n, a.k, max_rs, a.cap());
            let mut text = format!(
                "n = {}, k = {}: {} operator pairs, {} evaluations, {} violations",
                a.n,
                a.k,
                r.pairs_checked,
                r.evaluations,
                r.violations.len()
            );
            for v in &r.violations {
                text.push_str(&format!(
                    "\n[{}, {}] on {}: expected {}, found {}",
                    v.a, v.b, v.element, v.expected, v.found
                ));
            }
            text.push_str(if r.passed() { "\nPASS" } else { "\nFAIL" });
            let js = json!({
                "n": a.n, "k": a.k, "max_rs": max_rs,
                "pairs_checked": r.pairs_checked,
                "evaluations": r.evaluations,
                "violations": r.violations.iter().map(|v| json!({
                    "a": v.a.to_string(), "b": v.b.to_string(), "element": v.element,
                    "expected": v.expected, "found": v.found,
                })).collect::<Vec<_>>(),
                "passed": r.passed(),
            });
            Ok(Outcome {
                text,
                json: js,
                passed: r.passed(),
            })
        }
        ModuleCommand::GeneratorsCheck(a) => {
            let r = hilb::generators_span_check(a.n, a.k, a.cap())?;
            let mut text = format!("n = {}, k = {}", a.n, a.k);
            for (dx, dy, prim, reached) in &r.entries {
                if *prim > 0 {
                    text.push_str(&format!(
                        "\n({dx}, {dy}): primitive {prim}, spanned {reached}"
                    ));
                }
            }
            text.push_str(if r.passed() { "\nPASS" } else { "\nFAIL" });
            let js = json!({
                "n": a.n, "k": a.k, "cap": [a.cap_x, a.cap_y],
                "entries": r.entries.iter().map(|e| json!([e.0, e.1, e.2, e.3])).collect::<Vec<_>>(),
                "passed": r.passed(),
            });
            Ok(Outcome {
                text,
                json: js,
                passed: r.passed(),
            })
        }
        ModuleCommand::Conjecture(a) => {
            let r = hilb::conjecture_check(a.n, a.k, a.cap())?;
            let mut text = format!("n = {}, k = {}\ntarget: {}", a.n, a.k, r.target);
            match r.shift {
                Some((q, t, s)) => text.push_str(&format!("\nshift: {s} * q^{q} t^{t}")),
                None => text.push_str("\nshift: none (both sides vanish in the box)"),
            }
            for (dx, dy, l, rv) in &r.mismatches {
                text.push_str(&format!(
                    "\nmismatch at ({dx}, {dy}): primitive {l}, target {rv}"
                ));
            }
            text.push_str(if r.passed() { "\nPASS" } else { "\nFAIL" });
            Ok(Outcome {
                text,
                json: r.to_json(),
                passed: r.passed(),
            })
        }
    }
}

fn cmd_kunneth(n: usize, genus: usize, trials: usize, degree: u32, seed: u64) -> CmdResult {
    if n == 0 || genus == 0 || 2 * n > 32 {
        return Err(Failure::Usage("need n >= 1, genus >= 1, n <= 16".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = format!("seed: {seed}");
    let mut cases = Vec::new();
    let mut passed = true;
    for i in 0..trials {
        let f = multiform::random_invariant(n, degree, &mut rng);
        let h = multiform::random_invariant(n, degree, &mut rng);
        let w = multiform::random_multiform(n, genus, degree, &mut rng);
        let r = multiform::kunneth_identity_check(&f, &h, &[w])?;
        let case = &r.cases[0];
        passed &= case.passed;
        text.push_str(&format!(
            "\ntrial {i}: {}",
            if case.passed {
                "pass".to_string()
            } else {
                format!(
                    "FAIL, difference {}",
                    case.difference.clone().unwrap_or_default()
                )
            }
        ));
        cases.push(json!({
            "f": r.f, "g": r.g_poly, "form": case.form,
            "passed": case.passed, "difference": case.difference,
        }));
    }
    text.push_str(if passed { "\nPASS" } else { "\nFAIL" });
    Ok(Outcome {
        text,
        json: json!({"seed": seed, "n": n, "genus": genus, "trials": cases, "passed": passed}),
        passed,
    })
}

fn cmd_markov(c: MarkovCommand) -> CmdResult {
    match c {
        MarkovCommand::Verify { samples, seed } => {
            let mut good = 0;
            for i in 0..samples {
                let t = markov::sample_tuple(seed.wrapping_add(i));
                if t.is_valid() && markov::markov_lhs(&t.trace_coordinates()).is_zero() {
                    good += 1;
                }
            }
            let symbolic = markov::symbolic_markov_residual().is_zero();
            let passed = good == samples && symbolic;
            let text = format!(
                "seed: {seed}\nsampled tuples satisfying the Markov equation: {good}/{samples}\nsymbolic family: {}\n{}",
                if symbolic { "vanishes" } else { "does not vanish" },
                if passed { "PASS" } else { "FAIL" }
            );
            Ok(Outcome {
                text,
                json: json!({"seed": seed, "samples": samples, "satisfied": good, "symbolic": symbolic, "passed": passed}),
                passed,
            })
        }
        MarkovCommand::TraceWord { word } => {
            let w = TraceWord::parse(&word)?;
            let p = markov::reduce_trace_word(&w)?;
            let names: Vec<String> = TRACE_VARIABLES.iter().map(|s| s.to_string()).collect();
            let s = p.render(&names);
            Ok(Outcome::ok(
                s.clone(),
                json!({"word": w.letters, "trace": s}),
            ))
        }
        MarkovCommand::Generic { lambdas } => {
            let l = parse_rationals(&lambdas)?;
            let l: [BigRational; 4] = l
                .try_into()
                .map_err(|_| Failure::Usage("exactly four eigenvalues are needed".into()))?;
            let g = markov::is_generic_sl2(&l)?;
            Ok(Outcome::ok(
                g.to_string(),
                json!({"lambdas": l.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "generic": g}),
            ))
        }
    }
}

fn cmd_generic(mu: &str, eigenvalues: &str) -> CmdResult {
    let mu = parse_mu(mu)?;
    let ev = eigenvalues
        .split(';')
        .map(parse_rationals)
        .collect::<crate::Result<Vec<_>>>()?;
    let data = MultiplicityData::new(mu.clone(), Some(ev))?;
    let g = hlv::is_generic(&data)?;
    Ok(Outcome::ok(
        g.to_string(),
        json!({"mu": mu_json(&mu), "generic": g}),
    ))
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Mh {
            genus,
            punctures,
            mu,
            max_rank,
            point_count,
        } => cmd_mh(genus, punctures, &mu, max_rank, point_count),
        Command::Omega {
            genus,
            punctures,
            max_rank,
        } => {
            if punctures == 0 {
                return Err(Failure::Usage("--punctures must be positive".into()));
            }
            let s = hlv::omega(genus, punctures, max_rank);
            Ok(Outcome::ok(
                s.to_string(),
                json!({"genus": genus, "punctures": punctures, "max_rank": max_rank, "series": s.to_json()}),
            ))
        }
        Command::Twisted { k, max_rank, plog } => cmd_twisted(k, max_rank, plog),
        Command::ChiHilb { n, k } => {
            let c = hlv::euler_chi_hilb(n, k);
            Ok(Outcome::ok(
                c.to_string(),
                json!({"n": n, "k": k, "chi": c.to_string()}),
            ))
        }
        Command::Module { command } => cmd_module(command),
        Command::Multiform {
            command:
                MultiformCommand::Kunneth {
                    n,
                    genus,
                    trials,
                    degree,
                    seed,
                },
        } => cmd_kunneth(n, genus, trials, degree, seed),
        Command::Markov { command } => cmd_markov(command),
        Command::GenericCheck { mu, eigenvalues } => cmd_generic(&mu, &eigenvalues),
    }
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: text.lines().next().unwrap_or("usage error").to_string() + "\n",
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(o) => {
            let mut stdout = match cli.format {
                Format::Text => o.text,
                Format::Json => serde_json::to_string_pretty(&o.json).expect("serializable"),
            };
            stdout.push('\n');
            RunOutput {
                code: if o.passed { EXIT_OK } else { EXIT_CHECK_FAILED },
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) => RunOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Compute(e)) => RunOutput {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> RunOutput {
        run(std::iter::once("charvar").chain(args.iter().copied()))
    }

    #[test]
    fn markov_mh() {
        let o = go(&[
            "mh",
            "--genus",
            "0",
            "--punctures",
            "4",
            "--mu",
            "1,1;1,1;1,1;1,1",
        ]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "q + t + 4\n");
        let o = go(&[
            "mh",
            "--genus",
            "0",
            "--punctures",
            "4",
            "--mu",
            "1,1;1,1;1,1;1,1",
            "--point-count",
        ]);
        assert_eq!(o.stdout, "q + t + 4\npoint count: q^2 + 4*q + 1\n");
    }

    #[test]
    fn error_codes() {
        assert_eq!(
            go(&[
                "mh",
                "--genus",
                "0",
                "--punctures",
                "4",
                "--mu",
                "1,2;1,1;1,1;1,1"
            ])
            .code,
            EXIT_USAGE
        );
        assert_eq!(
            go(&["mh", "--genus", "0", "--punctures", "1", "--mu", "x"]).code,
            EXIT_USAGE
        );
        let o = go(&[
            "mh",
            "--genus",
            "0",
            "--punctures",
            "4",
            "--mu",
            "1,1;1,1;1,1;1,1",
            "--max-rank",
            "1",
        ]);
        assert_eq!(o.code, EXIT_LIMIT);
        assert_eq!(o.stderr.lines().count(), 1);
        assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(go(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn help_lists_subcommands() {
        let o = go(&["--help"]);
        for s in [
            "mh",
            "omega",
            "twisted",
            "chi-hilb",
            "module",
            "multiform",
            "markov",
            "generic-check",
        ] {
            assert!(o.stdout.contains(s), "{s}");
        }
        let o = go(&["module", "--help"]);
        for s in [
            "hilbert",
            "primitive",
            "coha-check",
            "generators-check",
            "conjecture",
        ] {
            assert!(o.stdout.contains(s), "{s}");
        }
        let o = go(&["markov", "--help"]);
        for s in ["verify", "trace-word", "generic"] {
            assert!(o.stdout.contains(s), "{s}");
        }
    }

    #[test]
    fn twisted_plog() {
        let o = go(&["twisted", "--k", "1", "--max-rank", "2", "--plog"]);
        assert_eq!(o.code, 0);
        let lines: Vec<&str> = o.stdout.lines().collect();
        assert!(lines.contains(&"z^2: 0"), "{}", o.stdout);
    }

    #[test]
    fn json_round_trip() {
        for args in [
            vec![
                "--format",
                "json",
                "mh",
                "--genus",
                "0",
                "--punctures",
                "4",
                "--mu",
                "1,1;1,1;1,1;1,1",
            ],
            vec![
                "--format", "json", "module", "hilbert", "--n", "2", "--k", "1", "--cap-x", "2",
                "--cap-y", "2",
            ],
            vec![
                "--format",
                "json",
                "markov",
                "verify",
                "--samples",
                "3",
                "--seed",
                "1",
            ],
            vec!["--format", "json", "twisted", "--k", "2", "--max-rank", "2"],
        ] {
            let o = go(&args);
            assert_eq!(o.code, 0);
            let v: Value = serde_json::from_str(&o.stdout).unwrap();
            assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", o.stdout);
        }
    }

    #[test]
    fn markov_commands() {
        assert_eq!(
            go(&["markov", "verify", "--samples", "10", "--seed", "1"]).code,
            0
        );
        assert_eq!(go(&["markov", "trace-word", "--word", "2,1"]).stdout, "x\n");
        assert_eq!(go(&["markov", "trace-word", "--word", "-1"]).stdout, "a1\n");
        assert_eq!(
            go(&["markov", "generic", "--lambdas", "2,3,5,7"]).stdout,
            "true\n"
        );
        assert_eq!(
            go(&["markov", "generic", "--lambdas", "1,3,5,7"]).code,
            EXIT_USAGE
        );
    }

    #[test]
    fn deterministic_randomized_output() {
        let a = go(&[
            "multiform",
            "kunneth",
            "--n",
            "1",
            "--genus",
            "1",
            "--trials",
            "3",
            "--seed",
            "5",
        ]);
        let b = go(&[
            "multiform",
            "kunneth",
            "--n",
            "1",
            "--genus",
            "1",
            "--trials",
            "3",
            "--seed",
            "5",
        ]);
        assert_eq!(a, b);
        assert_eq!(a.code, 0);
        assert!(a.stdout.starts_with("seed: 5\n"));
    }

    #[test]
    fn generic_check() {
        let o = go(&[
            "generic-check",
            "--mu",
            "1,1;1,1",
            "--eigenvalues",
            "2,3;1/2,1/3",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
    }
}
