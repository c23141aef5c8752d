use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use mfbranch::branching::{self, BranchingExpansion, Sl2Case};
use mfbranch::exact::{fmt_vec, parse_qvec, to_ints, Q};
use mfbranch::hermitian::{hermitian_data_str, HermitianData};
use mfbranch::sympairs::{
    antiholomorphic_pairs, export_tables, holomorphic_pairs, mf_restriction_table, node_data, pairs_for, rank_equal_pairs,
    sum_name, Algebra, SymmetricPairRecord,
};
use mfbranch::verify::{self, Status, VerificationReport};
use mfbranch::{Error, Family};

const LEVELS_ENV: &str = "MFBRANCH_LEVELS";
const DEFAULT_LEVELS: u64 = 10;
const DEFAULT_KMAX: u32 = 3;
const DEFAULT_MAX_RANK: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "mfbranch", version, about = "Exact multiplicity-free branching laws")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Keep elapsed times in verification reports.
    #[arg(long, global = true)]
    timings: bool,
    /// TOML file with defaults; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    #[value(alias = "structured")]
    #[serde(alias = "structured")]
    Json,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    format: Option<Format>,
    levels: Option<u64>,
    kmax: Option<u32>,
    max_rank: Option<usize>,
    timings: Option<bool>,
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Branching laws as truncated expansions.
    #[command(subcommand)]
    Branch(BranchCmd),
    /// Classification tables.
    #[command(subcommand)]
    Tables(TablesCmd),
    /// Closed-form K-multiplicities.
    #[command(subcommand)]
    Mult(MultCmd),
    /// Cross-checks against the character oracle.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Machine-readable exports.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Args, Debug)]
struct Levels {
    /// Truncation level (Z̃-drop).
    #[arg(long)]
    levels: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum BranchCmd {
    /// K-types of a scalar-type holomorphic discrete series.
    Hks {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[command(flatten)]
        levels: Levels,
    },
    /// Tensor product of two scalar-type holomorphic discrete series.
    Tensor {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[command(flatten)]
        levels: Levels,
    },
    /// U(p,q) restricted to U(1)×U(p−1,q).
    Upq {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[command(flatten)]
        levels: Levels,
    },
    /// The SL(2,R) and SU(2) formulas a–f.
    Sl2 {
        #[arg(long)]
        which: char,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        levels: Levels,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairTable {
    All,
    Holomorphic,
    AntiHolomorphic,
    RankEqual,
}

#[derive(Subcommand, Debug)]
enum TablesCmd {
    /// Symmetric pairs, optionally instantiated for one algebra.
    Pairs {
        #[arg(long, value_enum, default_value_t = PairTable::All)]
        table: PairTable,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 8)]
        bound: i64,
    },
    /// Nodes of pan type.
    Pan {
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: Option<usize>,
        /// List every node with its highest-root coefficient flag.
        #[arg(long)]
        all: bool,
    },
    /// Real ranks and greedy strongly orthogonal sequences.
    Ranks {
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
    /// Multiplicity-free restriction list.
    Mf,
}

#[derive(Subcommand, Debug)]
enum MultCmd {
    /// Holomorphic discrete series of Sp(2,R).
    #[command(name = "sp2-holo")]
    Sp2Holo {
        #[arg(long, allow_negative_numbers = true)]
        mu1: i64,
        #[arg(long, allow_negative_numbers = true)]
        mu2: i64,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
    },
    /// Non-holomorphic discrete series W_λ of Sp(2,R).
    #[command(name = "sp2-w")]
    Sp2W {
        #[arg(long, allow_negative_numbers = true)]
        lambda1: i64,
        #[arg(long, allow_negative_numbers = true)]
        lambda2: i64,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
    },
    /// c(μ1,μ2;a,b); without μ, the discrete spectrum of ϖ_(a,b).
    #[command(name = "c-count")]
    CCount {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, requires = "mu2")]
        mu1: Option<i64>,
        #[arg(long, requires = "mu1")]
        mu2: Option<i64>,
        #[arg(long)]
        cap: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Multiplicity-free restrictions of the restriction table.
    #[command(name = "thmE")]
    ThmE {
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Multiplicity-free tensor products of pan representations.
    #[command(name = "thmF")]
    ThmF {
        #[arg(long = "type")]
        family: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, requires = "j")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Level-graded K-character identity of an expansion.
    Grading {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[command(flatten)]
        levels: Levels,
    },
    /// U(p,q) law against the restricted expansion.
    Upq {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[command(flatten)]
        levels: Levels,
    },
}

#[derive(Subcommand, Debug)]
enum ExportCmd {
    /// All classification tables.
    Tables,
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Usage(String),
    Io(String),
    Verification(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Settings {
    format: Format,
    levels: u64,
    kmax: u32,
    max_rank: usize,
    timings: bool,
    output: Option<PathBuf>,
}

impl Settings {
    fn resolve(cli: &Cli) -> Result<Self, Failure> {
        let config: Config = match &cli.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                toml::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
            }
            None => Config::default(),
        };
        let env_levels = match std::env::var(LEVELS_ENV) {
            Ok(s) => Some(s.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("{LEVELS_ENV}={s:?} is not a level")))?),
            Err(_) => None,
        };
        Ok(Settings {
            format: cli.format.or(config.format).unwrap_or(Format::Text),
            levels: config.levels.or(env_levels).unwrap_or(DEFAULT_LEVELS),
            kmax: config.kmax.unwrap_or(DEFAULT_KMAX),
            max_rank: config.max_rank.unwrap_or(DEFAULT_MAX_RANK),
            timings: cli.timings || config.timings.unwrap_or(false),
            output: cli.output.clone().or(config.output),
        })
    }

    fn levels(&self, l: &Levels) -> u64 {
        l.levels.unwrap_or(self.levels)
    }
}

/// Result of one command in both renderings.
struct Rendered {
    text: String,
    json: Value,
    failed: usize,
}

impl Rendered {
    fn new(text: String, json: Value) -> Self {
        Rendered { text, json, failed: 0 }
    }
}

fn expansion(e: BranchingExpansion) -> Rendered {
    let mut text = e.to_string();
    text.push('\n');
    for t in &e.terms {
        text.push_str(&format!("  level {:>3}  {}  ×{}\n", t.ztilde_drop, t.label, t.mult));
    }
    Rendered::new(text, e.to_json())
}

fn reports(rs: Vec<VerificationReport>, timings: bool) -> Rendered {
    let rs: Vec<VerificationReport> = rs.into_iter().map(|r| if timings { r } else { r.without_timing() }).collect();
    let mut text = String::new();
    for r in &rs {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unsupported => "UNSUPPORTED",
        };
        text.push_str(&format!("{status:<11} {}", r.case_id));
        if let Some(ms) = r.elapsed_ms {
            text.push_str(&format!(" [{ms} ms]"));
        }
        if let Some(w) = &r.witness {
            text.push_str(&format!("  witness {} mult {} ({})", fmt_vec(&w.weight), w.multiplicity, w.detail));
        }
        text.push('\n');
    }
    let count = |s: Status| rs.iter().filter(|r| r.status == s).count();
    let failed = count(Status::Fail);
    text.push_str(&format!(
        "{} pass, {failed} fail, {} unsupported\n",
        count(Status::Pass),
        count(Status::Unsupported)
    ));
    let json = serde_json::to_value(&rs).expect("reports serialize");
    Rendered { text, json, failed }
}

fn weight(s: &str) -> Result<Vec<Q>, Failure> {
    let v = parse_qvec(s)?;
    if v.is_empty() {
        return Err(Failure::Usage(format!("empty weight {s:?}")));
    }
    Ok(v)
}

fn int_weight(s: &str) -> Result<Vec<i64>, Failure> {
    let v = weight(s)?;
    to_ints(&v).ok_or_else(|| Failure::Domain(Error::InvalidHw(format!("{s} is not integral"))))
}

fn hermitian(name: &str) -> Result<HermitianData, Failure> {
    Ok(hermitian_data_str(name)?)
}

/// Accepts `C` with a rank, `E6`, or `E` with rank 6.
fn simple_type(name: &str, rank: Option<usize>) -> Result<(Family, usize), Failure> {
    let name = name.trim().to_ascii_uppercase();
    let family: Family = match (name.as_str(), rank) {
        ("E" | "F" | "G", Some(r)) => format!("{name}{r}").parse()?,
        _ => name.parse()?,
    };
    match (family.fixed_rank(), rank) {
        (Some(f), Some(r)) if f != r => {
            Err(Error::InvalidType(format!("{} has rank {f}, not {r}", family.type_name(f))).into())
        }
        (Some(f), _) => Ok((family, f)),
        (None, Some(r)) => Ok((family, r)),
        (None, None) => Err(Failure::Usage(format!("type {family} needs --rank"))),
    }
}

fn run_branch(cmd: &BranchCmd, s: &Settings) -> Result<Rendered, Failure> {
    let e = match cmd {
        BranchCmd::Hks { algebra, mu, levels } => branching::hks_expansion(&hermitian(algebra)?, &weight(mu)?, s.levels(levels))?,
        BranchCmd::Tensor { algebra, mu, nu, levels } => {
            branching::tensor_hwm_expansion(&hermitian(algebra)?, &weight(mu)?, &weight(nu)?, s.levels(levels))?
        }
        BranchCmd::Upq { p, q, mu, levels } => branching::upq_restriction(*p, *q, &int_weight(mu)?, s.levels(levels))?,
        BranchCmd::Sl2 { which, m, n, levels } => branching::sl2_formula(Sl2Case::from_letter(*which, *m, *n)?, s.levels(levels))?,
    };
    Ok(expansion(e))
}

fn pair_rows(
    table: PairTable,
) -> Vec<&'static SymmetricPairRecord> {
    let mut out: Vec<&'static SymmetricPairRecord> = Vec::new();
    if matches!(table, PairTable::All | PairTable::Holomorphic) {
        out.extend(holomorphic_pairs());
    }
    if matches!(table, PairTable::All | PairTable::AntiHolomorphic) {
        out.extend(antiholomorphic_pairs());
    }
    if matches!(table, PairTable::All | PairTable::RankEqual) {
        out.extend(rank_equal_pairs());
    }
    out
}

fn run_tables(cmd: &TablesCmd) -> Result<Rendered, Failure> {
    match cmd {
        TablesCmd::Pairs { table, algebra, bound } => {
            let rows = pair_rows(*table);
            match algebra {
                None => {
                    let text: String =
                        rows.iter().map(|r| format!("{:?}  ({}, {})\n", r.table, r.g, sum_name(&r.h))).collect();
                    Ok(Rendered::new(text, Value::Array(rows.iter().map(|r| r.to_json()).collect())))
                }
                Some(name) => {
                    let g: Algebra = name.parse()?;
                    let mut text = String::new();
                    let mut json = Vec::new();
                    for group in [holomorphic_pairs(), antiholomorphic_pairs(), rank_equal_pairs()] {
                        for (rec, _, h) in pairs_for(group, &g, *bound) {
                            if !rows.iter().any(|r| std::ptr::eq(*r, rec)) {
                                continue;
                            }
                            text.push_str(&format!("{:?}  ({g}, {})\n", rec.table, sum_name(&h)));
                            json.push(json!({
                                "table": rec.to_json()["table"],
                                "g": g.to_json(),
                                "h": h.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
                                "pair": format!("({g}, {})", sum_name(&h)),
                            }));
                        }
                    }
                    Ok(Rendered::new(text, Value::Array(json)))
                }
            }
        }
        TablesCmd::Pan { family, rank, all } => {
            let (family, rank) = simple_type(family, *rank)?;
            let nodes = node_data(family, rank)?;
            let shown: Vec<_> = nodes.into_iter().filter(|p| *all || p.is_pan).collect();
            let mut text = String::new();
            for p in &shown {
                text.push_str(&format!("{} node {}", family.type_name(rank), p.node));
                if *all {
                    text.push_str(if p.is_pan { "  pan" } else { "  -" });
                }
                if let Some(l) = &p.levi_label {
                    text.push_str(&format!("  levi {l}"));
                }
                text.push('\n');
            }
            if shown.is_empty() {
                text.push_str(&format!("{}: no nodes of pan type\n", family.type_name(rank)));
            }
            Ok(Rendered::new(text, serde_json::to_value(&shown).expect("pan nodes serialize")))
        }
        TablesCmd::Ranks { bound } => {
            let mut names = Vec::new();
            for p in 1..=*bound {
                for q in p..=*bound {
                    names.push(format!("su({p},{q})"));
                }
            }
            for n in 1..=*bound {
                names.push(format!("sp({n},R)"));
            }
            for n in 2..=*bound {
                names.push(format!("so*({})", 2 * n));
            }
            for n in 1..=*bound {
                names.push(format!("so(2,{n})"));
            }
            let mut text = String::new();
            let mut json = Vec::new();
            for name in names {
                let hd = hermitian(&name)?;
                let seq = hd.strongly_orthogonal_sequence();
                let roots: Vec<String> = seq.roots.iter().map(|r| fmt_vec(&r.coords)).collect();
                text.push_str(&format!("{name:<10} rank {}  {}\n", seq.length, roots.join(" ")));
                json.push(json!({"algebra": name, "real_rank": hd.expected_real_rank(), "sequence_length": seq.length, "sequence": roots}));
            }
            Ok(Rendered::new(text, Value::Array(json)))
        }
        TablesCmd::Mf => {
            let rows = mf_restriction_table();
            let text: String = rows
                .iter()
                .map(|r| format!("{}  data: {}\n", r.label(), r.projection.unwrap_or("none")))
                .collect();
            Ok(Rendered::new(text, Value::Array(rows.iter().map(|r| r.to_json()).collect())))
        }
    }
}

fn run_mult(cmd: &MultCmd) -> Result<Rendered, Failure> {
    let count = |name: &str, v: u64, args: Value| {
        let mut json = args;
        json["function"] = json!(name);
        json["value"] = json!(v);
        Rendered::new(format!("{v}\n"), json)
    };
    Ok(match *cmd {
        MultCmd::Sp2Holo { mu1, mu2, p, q } => {
            count("sp2-holo", branching::sp2_holo_ktype_mult(mu1, mu2, p, q), json!({"mu": [mu1, mu2], "ktype": [p, q]}))
        }
        MultCmd::Sp2W { lambda1, lambda2, p, q } => count(
            "sp2-w",
            branching::sp2_nonholo_ktype_mult(lambda1, lambda2, p, q)?,
            json!({"lambda": [lambda1, lambda2], "ktype": [p, q]}),
        ),
        MultCmd::CCount { a, b, mu1: Some(mu1), mu2: Some(mu2), .. } => {
            count("c-count", branching::c_count(mu1, mu2, a, b), json!({"mu": [mu1, mu2], "ab": [a, b]}))
        }
        MultCmd::CCount { a, b, cap, .. } => expansion(branching::discrete_part_spc(a, b, cap.unwrap_or(a.max(b)))?),
    })
}

fn run_verify(cmd: &VerifyCmd, s: &Settings) -> Result<Rendered, Failure> {
    let rs = match cmd {
        VerifyCmd::ThmE { max_rank, kmax } => {
            verify::run_theorem_e(max_rank.unwrap_or(s.max_rank), kmax.unwrap_or(s.kmax))
        }
        VerifyCmd::ThmF { family, rank, i, j, max_rank, kmax } => {
            let kmax = kmax.unwrap_or(s.kmax);
            let ty = family.as_deref().map(|f| simple_type(f, *rank)).transpose()?;
            match (ty, i, j) {
                (Some((f, r)), Some(i), Some(j)) => vec![verify::check_theorem_f(f, r, *i, *j, kmax)?],
                (Some((f, r)), None, None) => verify::theorem_f_cases(r)
                    .into_iter()
                    .filter(|c| c.0 == f && c.1 == r)
                    .map(|(f, r, i, j)| verify::check_theorem_f(f, r, i, j, kmax))
                    .collect::<Result<_, _>>()?,
                _ => verify::run_theorem_f(max_rank.unwrap_or(s.max_rank), kmax)?,
            }
        }
        VerifyCmd::Grading { algebra, mu, levels } => {
            vec![verify::check_hks_grading(&hermitian(algebra)?, &weight(mu)?, s.levels(levels))?]
        }
        VerifyCmd::Upq { p, q, mu, levels } => {
            vec![verify::check_upq_consistency(*p, *q, &int_weight(mu)?, s.levels(levels))?]
        }
    };
    Ok(reports(rs, s.timings))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let s = Settings::resolve(cli)?;
    let rendered = match &cli.command {
        Command::Branch(c) => run_branch(c, &s)?,
        Command::Tables(c) => run_tables(c)?,
        Command::Mult(c) => run_mult(c)?,
        Command::Verify(c) => run_verify(c, &s)?,
        Command::Export(ExportCmd::Tables) => {
            let v = export_tables();
            Rendered::new(serde_json::to_string_pretty(&v).expect("tables serialize") + "\n", v)
        }
    };
    let body = match s.format {
        Format::Text => rendered.text,
        Format::Json => serde_json::to_string_pretty(&rendered.json).expect("values serialize") + "\n",
    };
    match &s.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    if rendered.failed > 0 {
        return Err(Failure::Verification(rendered.failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Verification(n)) => {
            eprintln!("error: VerificationFailed: {n} case(s) failed");
            ExitCode::from(1)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: IoError: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
