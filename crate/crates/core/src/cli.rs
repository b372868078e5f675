//! The `ringcode` command line.
//!
//! Output is line-oriented and deterministic. Exit codes: 0 success, 1 for
//! an unsolvable network or a failed verification, 2 for usage and input
//! errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::dominance::{
    as_partition_ring, catalog_dominates, field_product_dominates, maximal_rings,
    parse_factored_size, zmod_dominates, DominanceVerdict,
};
use crate::network::{
    broadcast, butterfly, choose_two, direct, lift_subring, map_code, relay, solve_brute, two_six,
    verify, Network, ScalarLinearCode, SolveOptions, DEFAULT_BUDGET,
};
use crate::partitions::{divides, enumerate_partitions, maximal_partitions, Partition};
use crate::ring::{Ring, RingHom, RingSpec};

/// Reference table of maximal partitions, k = 1..=30, one `k: (..) (..)` line per k.
pub const TABLE1: &str = include_str!("../data/table1.txt");

#[derive(Parser, Debug)]
#[command(
    name = "ringcode",
    version,
    about = "Scalar linear network coding over finite commutative rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integer partitions under partition division.
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Catalog rings and maximal rings.
    #[command(subcommand)]
    Rings(RingsCmd),
    /// Dominance between ring alphabets.
    #[command(subcommand)]
    Dominance(DominanceCmd),
    /// Networks and scalar linear codes.
    #[command(subcommand)]
    Network(NetworkCmd),
    /// Reproduce published tables.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum PartitionsCmd {
    /// All partitions of k, reverse-lexicographic.
    Enumerate {
        #[arg(long)]
        k: u32,
    },
    /// Maximal partitions of k.
    Maximal {
        #[arg(long)]
        k: u32,
    },
    /// Whether --left divides --right, e.g. --left "(2,2,1)" --right "(4,1)".
    Divides(Pair),
}

#[derive(Subcommand, Debug)]
enum RingsCmd {
    /// Maximal commutative rings of a size such as 2^7*3^5*5^2.
    Maximal {
        #[arg(long)]
        size: String,
    },
    /// Parse a ring expression and describe the ring.
    Parse {
        #[arg(long)]
        ring: String,
    },
    /// List the elements of a ring in canonical order.
    Elements {
        #[arg(long)]
        ring: String,
    },
}

#[derive(Args, Debug)]
struct Pair {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
}

#[derive(Subcommand, Debug)]
enum DominanceCmd {
    /// Products of finite fields, decided exactly.
    Fields(Pair),
    /// Z(left) against Z(right).
    Zmod(Pair),
    /// Any catalog rings; may answer UNKNOWN.
    Catalog(Pair),
}

#[derive(Subcommand, Debug)]
enum NetworkCmd {
    /// Print a generated network as JSON.
    Gen {
        #[arg(value_parser = ["choose-two", "two-six", "butterfly", "relay", "direct", "broadcast"])]
        family: String,
        /// Size parameter for choose-two, relay, direct and broadcast.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Search for a scalar linear solution.
    Solve {
        #[arg(long)]
        file: String,
        #[arg(long)]
        ring: String,
        /// Cap on size^free_coefficients, as 2^K or a plain integer.
        #[arg(long)]
        budget: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a code against a network.
    Verify {
        #[arg(long)]
        file: String,
        #[arg(long)]
        code: String,
    },
    /// Move a solution to another ring: a projection (with --factor), a
    /// reduction or augmentation onto a quotient, or a subring lift.
    Transform {
        #[arg(long)]
        file: String,
        #[arg(long)]
        code: String,
        /// Target ring; omit with --factor.
        #[arg(long)]
        ring: Option<String>,
        /// Project a product code onto this factor (1-based).
        #[arg(long)]
        factor: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Recompute the table of maximal partitions and diff it against the bundled copy.
    Table1 {
        #[arg(long, default_value_t = 30)]
        max_k: u32,
        /// Use this golden file instead of the bundled one.
        #[arg(long)]
        golden: Option<String>,
    },
    /// Recompute the maximal-ring lists for p^5..p^12 and for 2^7*3^5*5^2.
    Example513,
}

/// Outcome of a command that ran to completion.
enum Exit {
    Ok,
    No,
}

type CmdResult = Result<Exit, String>;

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(Exit::Ok) => 0,
        Ok(Exit::No) => 1,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Partitions(c) => partitions(c, out),
        Command::Rings(c) => rings(c, out),
        Command::Dominance(c) => dominance(c, out),
        Command::Network(c) => network(c, out),
        Command::Verify(VerifyCmd::Table1 { max_k, golden }) => {
            let text = match golden {
                Some(path) => read(&path)?,
                None => TABLE1.to_string(),
            };
            verify_table1(max_k, &text, out)
        }
        Command::Verify(VerifyCmd::Example513) => verify_reference_rings(out),
    }
}

fn line(out: &mut dyn Write, s: impl std::fmt::Display) -> Result<(), String> {
    writeln!(out, "{s}").map_err(|e| e.to_string())
}

fn read(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn partitions(cmd: PartitionsCmd, out: &mut dyn Write) -> CmdResult {
    match cmd {
        PartitionsCmd::Enumerate { k } => {
            for p in enumerate_partitions(k).map_err(err)? {
                line(out, p)?;
            }
        }
        PartitionsCmd::Maximal { k } => {
            for p in maximal_partitions(k).map_err(err)? {
                line(out, p)?;
            }
        }
        PartitionsCmd::Divides(Pair { left, right }) => {
            let b: Partition = left.parse().map_err(err)?;
            let a: Partition = right.parse().map_err(err)?;
            let yes = divides(&b, &a).map_err(err)?;
            line(out, format!("{b}|{a}: {}", if yes { "YES" } else { "NO" }))?;
        }
    }
    Ok(Exit::Ok)
}

fn rings(cmd: RingsCmd, out: &mut dyn Write) -> CmdResult {
    match cmd {
        RingsCmd::Maximal { size } => {
            let m = parse_factored_size(&size).map_err(err)?;
            for r in maximal_rings(&m).map_err(err)? {
                line(out, r)?;
            }
        }
        RingsCmd::Parse { ring } => {
            let r = Ring::parse(&ring).map_err(err)?;
            line(out, format!("ring: {r}"))?;
            line(out, format!("canonical: {}", r.canonicalize()))?;
            line(out, format!("size: {}", r.size()))?;
            line(out, format!("characteristic: {}", r.characteristic()))?;
            line(out, format!("field: {}", yes_no(r.is_field())))?;
            line(
                out,
                format!(
                    "maximal: {}",
                    yes_no(crate::dominance::is_maximal_ring(r.spec()))
                ),
            )?;
        }
        RingsCmd::Elements { ring } => {
            let r = Ring::parse(&ring).map_err(err)?;
            for e in r.elements().map_err(err)? {
                line(out, e)?;
            }
        }
    }
    Ok(Exit::Ok)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dominance(cmd: DominanceCmd, out: &mut dyn Write) -> CmdResult {
    let (forward, backward): (DominanceVerdict, DominanceVerdict) = match cmd {
        DominanceCmd::Fields(Pair { left, right }) => {
            let as_fields = |s: &str| -> Result<_, String> {
                let r = Ring::parse(s).map_err(err)?;
                as_partition_ring(r.spec())
                    .ok_or_else(|| format!("{r} is not a product of finite fields"))
            };
            let (s, r) = (as_fields(&left)?, as_fields(&right)?);
            (
                field_product_dominates(&s, &r),
                field_product_dominates(&r, &s),
            )
        }
        DominanceCmd::Zmod(Pair { left, right }) => {
            let int = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("expected an integer, got {s:?}"))
            };
            let (n, m) = (int(&left)?, int(&right)?);
            (
                zmod_dominates(n, m).map_err(err)?,
                zmod_dominates(m, n).map_err(err)?,
            )
        }
        DominanceCmd::Catalog(Pair { left, right }) => {
            let s = Ring::parse(&left).map_err(err)?;
            let r = Ring::parse(&right).map_err(err)?;
            (
                catalog_dominates(s.spec(), r.spec()).map_err(err)?,
                catalog_dominates(r.spec(), s.spec()).map_err(err)?,
            )
        }
    };
    line(out, format!("left⪯right: {forward}"))?;
    line(out, format!("right⪯left: {backward}"))?;
    Ok(Exit::Ok)
}

fn parse_budget(s: &str) -> Result<u64, String> {
    let bad = || format!("budget {s:?} is neither 2^K nor an integer");
    match s.trim().split_once('^') {
        Some(("2", k)) => {
            let k: u32 = k.parse().map_err(|_| bad())?;
            1u64.checked_shl(k).filter(|_| k < 64).ok_or_else(bad)
        }
        Some(_) => Err(bad()),
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn load_network(path: &str) -> Result<Network, String> {
    Network::from_json(&read(path)?).map_err(|e| format!("{path}: {e}"))
}

fn load_code(path: &str) -> Result<ScalarLinearCode, String> {
    ScalarLinearCode::from_json(&read(path)?).map_err(|e| format!("{path}: {e}"))
}

fn network(cmd: NetworkCmd, out: &mut dyn Write) -> CmdResult {
    match cmd {
        NetworkCmd::Gen { family, n } => {
            let need = |n: Option<usize>| n.ok_or_else(|| format!("{family} needs --n"));
            let positive = |n: usize| {
                if n == 0 {
                    Err("--n must be positive".to_string())
                } else {
                    Ok(n)
                }
            };
            let net = match family.as_str() {
                "choose-two" => choose_two(need(n)?).map_err(err)?,
                "two-six" => two_six(),
                "butterfly" => butterfly(),
                "relay" => relay(positive(need(n)?)?),
                "direct" => direct(positive(need(n)?)?),
                _ => broadcast(positive(need(n)?)?),
            };
            line(out, net.to_json())?;
            Ok(Exit::Ok)
        }
        NetworkCmd::Solve {
            file,
            ring,
            budget,
            jobs,
        } => {
            let net = load_network(&file)?;
            let r = Ring::parse(&ring).map_err(err)?;
            let budget = budget
                .as_deref()
                .map(parse_budget)
                .transpose()?
                .unwrap_or(DEFAULT_BUDGET);
            match solve_brute(&net, &r, &SolveOptions { budget, jobs }).map_err(err)? {
                Some(code) => {
                    line(out, code.to_json())?;
                    Ok(Exit::Ok)
                }
                None => {
                    line(out, "UNSOLVABLE (search exhausted)")?;
                    Ok(Exit::No)
                }
            }
        }
        NetworkCmd::Verify { file, code } => {
            let net = load_network(&file)?;
            let c = load_code(&code)?;
            if verify(&net, &c).map_err(err)? {
                line(out, "VERIFIED")?;
                Ok(Exit::Ok)
            } else {
                line(out, "NOT A SOLUTION")?;
                Ok(Exit::No)
            }
        }
        NetworkCmd::Transform {
            file,
            code,
            ring,
            factor,
        } => {
            let net = load_network(&file)?;
            let c = load_code(&code)?;
            if !verify(&net, &c).map_err(err)? {
                line(out, "NOT A SOLUTION")?;
                return Ok(Exit::No);
            }
            let result = match (factor, ring) {
                (Some(j), None) => {
                    map_code(&net, &c, &RingHom::projection(&c.ring, j).map_err(err)?)
                }
                (None, Some(target)) => {
                    let t = Ring::parse(&target).map_err(err)?;
                    match quotient_map(&c.ring, &t) {
                        Some(h) => map_code(&net, &c, &h),
                        None => lift_subring(&net, &c, &t),
                    }
                }
                _ => return Err("give exactly one of --ring and --factor".into()),
            };
            line(out, result.map_err(err)?.to_json())?;
            Ok(Exit::Ok)
        }
    }
}

/// A surjective catalog map from `s` onto `t`, if one exists.
fn quotient_map(s: &Ring, t: &Ring) -> Option<RingHom> {
    match (s.spec(), t.spec()) {
        (RingSpec::DualNumbers { p }, RingSpec::PrimeField { p: q }) if p == q => {
            RingHom::dual_augmentation(*p).ok()
        }
        _ if s != t => RingHom::mod_reduction(s, t).ok(),
        _ => None,
    }
}

/// Diffs recomputed maximal partitions for k = 1..=max_k against `golden`.
fn verify_table1(max_k: u32, golden: &str, out: &mut dyn Write) -> CmdResult {
    if !(1..=30).contains(&max_k) {
        return Err(format!("--max-k must be in 1..=30, got {max_k}"));
    }
    let rows: Vec<&str> = golden.lines().filter(|l| !l.trim().is_empty()).collect();
    for k in 1..=max_k {
        let computed = maximal_partitions(k).map_err(err)?;
        let computed = format!(
            "{k}: {}",
            computed
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        let expected = rows
            .get(k as usize - 1)
            .map(|s| s.trim())
            .unwrap_or("<missing>");
        if expected != computed {
            line(out, format!("table1: mismatch at k={k}"))?;
            line(out, format!("  golden:   {expected}"))?;
            line(out, format!("  computed: {computed}"))?;
            return Ok(Exit::No);
        }
    }
    line(out, format!("table1: {max_k} rows checked, all match"))?;
    Ok(Exit::Ok)
}

/// The maximal-partition lists for p^k, k = 5, 7..=12, besides `(k)` itself.
pub const REFERENCE_PRIME_POWER_LISTS: [(u32, &[&str]); 7] = [
    (5, &["(3,2)"]),
    (7, &["(5,2)", "(4,3)"]),
    (8, &["(5,3)"]),
    (9, &["(7,2)", "(5,4)"]),
    (10, &["(7,3)", "(6,4)"]),
    (11, &["(9,2)", "(8,3)", "(7,4)", "(6,5)"]),
    (12, &["(7,5)"]),
];

/// The six maximal rings of size 2^7·3^5·5^2, in reference order.
pub const REFERENCE_COMPOSITE_RINGS: [&str; 6] = [
    "GF(2^7)xGF(3^5)xGF(5^2)",
    "GF(2^5)xGF(2^2)xGF(3^5)xGF(5^2)",
    "GF(2^4)xGF(2^3)xGF(3^5)xGF(5^2)",
    "GF(2^7)xGF(3^3)xGF(3^2)xGF(5^2)",
    "GF(2^5)xGF(2^2)xGF(3^3)xGF(3^2)xGF(5^2)",
    "GF(2^4)xGF(2^3)xGF(3^3)xGF(3^2)xGF(5^2)",
];

fn verify_reference_rings(out: &mut dyn Write) -> CmdResult {
    let mut ok = true;
    // The lists do not depend on the prime; check two.
    for p in [2, 3] {
        for (k, rest) in REFERENCE_PRIME_POWER_LISTS {
            let got: Vec<String> = maximal_rings(&[(p, k)])
                .map_err(err)?
                .iter()
                .map(|r| r.partition(p).expect("single prime").to_string())
                .collect();
            let mut want = vec![format!("({k})")];
            want.extend(rest.iter().map(|s| s.to_string()));
            let status = if got == want { "ok" } else { "MISMATCH" };
            ok &= got == want;
            line(out, format!("{p}^{k}: {} {status}", got.join(" ")))?;
        }
    }
    let got: Vec<String> = maximal_rings(&[(2, 7), (3, 5), (5, 2)])
        .map_err(err)?
        .iter()
        .map(|r| r.to_string())
        .collect();
    let matches = got == REFERENCE_COMPOSITE_RINGS;
    ok &= matches;
    line(
        out,
        format!(
            "2^7*3^5*5^2: {} rings {}",
            got.len(),
            if matches { "ok" } else { "MISMATCH" }
        ),
    )?;
    for r in &got {
        line(out, format!("  {r}"))?;
    }
    Ok(if ok { Exit::Ok } else { Exit::No })
}
