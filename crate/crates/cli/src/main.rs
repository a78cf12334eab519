//! `modular-forge`: build and verify SL(2,Z) representations, candidate
//! modular data and fusion rings from the command line.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error,
//! 3 the Verlinde formula gave a non-integral or negative coefficient.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use modforge::exactnum::{nt, to_float, Cyclotomic};
use modforge::fusionring::{
    detect_z2_grading, extension_ring, fpdim_numeric, fusion_subrings, is_commutative,
    near_group, verify_axioms, AxiomReport as RingAxioms, FusionRing, Z2Grading,
    MAX_SUBRING_RANK,
};
use modforge::modulardata::{
    build_candidate, cauchy_check, check_axioms, fpdim_vector, gate_q_minus_p, gate_scan,
    trivial_twist_count, verlinde, AxiomReport, Case, CauchyReport, DatumJson, FloatTable,
    FpDims, GateReport, ModularDatum, VerlindeOutcome, VerlindeWitness,
};
use modforge::slrep::{
    build_eholzer, direct_sum, rho_prime_branches, verify_sl2_relations, RelationReport, SL2Rep,
    XiBranch,
};
use modforge::Error;

#[derive(Parser)]
#[command(name = "modular-forge", version, about = "Exact modular data and fusion ring checks")]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Bits of precision for the advisory float columns.
    #[arg(long, default_value_t = 256, global = true)]
    precision: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Eholzer representation, optionally summed with a second one, or ρ′.
    Rep(RepArgs),
    /// Candidate modular data for a prime pair (p, p+4).
    Modular(ModularArgs),
    /// Run the q - p = 4 unit gate over all odd prime pairs up to a bound.
    GateScan {
        #[arg(long)]
        max: u64,
    },
    /// Build and verify a fusion ring.
    Ring(RingArgs),
}

#[derive(Args)]
struct RepArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    a: i64,
    /// Build the 3-dimensional ρ′ instead of the Eholzer representation.
    #[arg(long, conflicts_with = "direct_sum_with_q")]
    rho_prime: bool,
    #[arg(long, value_enum, default_value_t = Branch::PlusRootNegXi)]
    branch: Branch,
    /// Direct sum with the Eholzer representation for this prime.
    #[arg(long)]
    direct_sum_with_q: Option<u64>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    a2: i64,
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum Branch {
    PlusRootXi,
    MinusRootXi,
    PlusRootNegXi,
    MinusRootNegXi,
}

impl From<Branch> for XiBranch {
    fn from(b: Branch) -> Self {
        match b {
            Branch::PlusRootXi => XiBranch::PlusRootXi,
            Branch::MinusRootXi => XiBranch::MinusRootXi,
            Branch::PlusRootNegXi => XiBranch::PlusRootNegXi,
            Branch::MinusRootNegXi => XiBranch::MinusRootNegXi,
        }
    }
}

#[derive(Args)]
struct ModularArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    case: u8,
    /// Defaults to 1.
    #[arg(long, allow_negative_numbers = true)]
    a1: Option<i64>,
    /// Defaults to 1 for case 1 and the smallest non-residue mod q for case 2.
    #[arg(long, allow_negative_numbers = true)]
    a2: Option<i64>,
}

#[derive(Args)]
struct RingArgs {
    #[arg(value_enum)]
    kind: RingKind,
    #[arg(long)]
    n: Option<usize>,
    /// Multiplicity of X in X⊗X for near-group rings; defaults to n.
    #[arg(long)]
    m: Option<u32>,
    /// Modular datum JSON (as written by `modular`) for from-verlinde.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingKind {
    NearGroup,
    Ty,
    Extension,
    FromVerlinde,
}

enum Failure {
    Usage(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(m) => Failure::Usage(m),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<modforge::ExactError> for Failure {
    fn from(e: modforge::ExactError) -> Self {
        Failure::from(Error::from(e))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Ok = 0,
    Failed = 1,
    NonIntegral = 3,
}

struct Rendered {
    text: String,
    status: Status,
}

fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Other(e.to_string()))
}

fn approx(x: &Cyclotomic, precision: u64) -> String {
    let a = to_float(x, precision);
    if a.im.abs() < 1e-12 {
        format!("{:.12}", a.re)
    } else if a.re.abs() < 1e-12 {
        format!("{:.12}i", a.im)
    } else {
        format!("{:.12}{:+.12}i", a.re, a.im)
    }
}

#[derive(Serialize)]
struct RepDoc<'a> {
    rep: &'a SL2Rep,
    relations: &'a RelationReport,
    floats: FloatTable,
}

fn cmd_rep(args: &RepArgs, fmt: Format, precision: u64) -> Result<Rendered, Failure> {
    let rep = if args.rho_prime {
        let want = XiBranch::from(args.branch);
        let passing = rho_prime_branches(args.p, args.a)?;
        match passing.into_iter().find(|(b, _)| *b == want) {
            Some((_, r)) => r,
            None => {
                return Ok(Rendered {
                    text: format!(
                        "branch {want:?} does not satisfy the SL(2,Z) relations for p = {}\n",
                        args.p
                    ),
                    status: Status::Failed,
                })
            }
        }
    } else {
        let r = build_eholzer(args.p, args.a)?;
        match args.direct_sum_with_q {
            Some(q) => direct_sum(&r, &build_eholzer(q, args.a2)?)?,
            None => r,
        }
    };
    let rel = verify_sl2_relations(&rep)?;
    let status = if rel.passes() { Status::Ok } else { Status::Failed };
    let text = match fmt {
        Format::Json => json(&RepDoc {
            rep: &rep,
            relations: &rel,
            floats: FloatTable::new(rep.s(), rep.t(), precision),
        })?,
        Format::Csv => {
            let mut s = String::from("entry,i,j,exact,re,im\n");
            for (i, row) in rep.s().rows().iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    push_csv_value(&mut s, "s", i, j, x, precision);
                }
            }
            for (i, x) in rep.t().iter().enumerate() {
                push_csv_value(&mut s, "t", i, i, x, precision);
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(s, "dimension {}, level {}", rep.dim(), rep.level());
            let _ = writeln!(s, "s^4 = 1        {}", ok(rel.s4_ok));
            let _ = writeln!(s, "(st)^3 = s^2   {}", ok(rel.braid_ok));
            let _ = writeln!(s, "t:");
            for x in rep.t() {
                let _ = writeln!(s, "  {x}");
            }
            let _ = writeln!(s, "s (approximate):");
            for row in rep.s().rows() {
                let cells: Vec<String> = row.iter().map(|x| approx(x, precision)).collect();
                let _ = writeln!(s, "  {}", cells.join("  "));
            }
            s
        }
    };
    Ok(Rendered { text, status })
}

fn push_csv_value(s: &mut String, entry: &str, i: usize, j: usize, x: &Cyclotomic, precision: u64) {
    let a = to_float(x, precision);
    let _ = writeln!(s, "{entry},{i},{j},\"{x}\",{:.12e},{:.12e}", a.re, a.im);
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct ModularDoc {
    gate: GateReport,
    datum: DatumJson,
    axioms: AxiomReport,
    verlinde: VerlindeOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    fpdims: Option<FpDims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cauchy: Option<CauchyReport>,
    trivial_twists: usize,
}

#[derive(Serialize)]
struct GateRejection {
    gate: GateReport,
    message: String,
}

fn cmd_modular(args: &ModularArgs, fmt: Format, precision: u64) -> Result<Rendered, Failure> {
    let (p, q) = (args.p, args.q);
    if !nt::is_odd_prime(p) || !nt::is_odd_prime(q) || p >= q {
        return Err(Failure::Usage(format!("need odd primes p < q, got ({p}, {q})")));
    }
    let gate = gate_q_minus_p(p, q)?;
    if !gate.accepted || q != p + 4 {
        let message = format!(
            "gate rejects ({p}, {q}): norm of the unit candidate is {}",
            gate.norm
        );
        let text = match fmt {
            Format::Pretty | Format::Csv => format!("{message}\n"),
            Format::Json => json(&GateRejection { gate, message })?,
        };
        return Ok(Rendered {
            text,
            status: Status::Failed,
        });
    }
    let case = Case::from_number(args.case)?;
    let a1 = args.a1.unwrap_or(1);
    let a2 = match (args.a2, case) {
        (Some(a), _) => a,
        (None, Case::One) => 1,
        (None, Case::Two) => nt::smallest_nonresidue(q)? as i64,
    };
    let m = build_candidate(p, q, case, a1, a2)?;
    let axioms = check_axioms(&m)?;
    let outcome = if axioms.symmetric && axioms.nondegenerate {
        verlinde(&m)?
    } else {
        return Ok(Rendered {
            text: render_modular_failure(&m, &axioms, fmt, precision)?,
            status: Status::Failed,
        });
    };
    let status = match (&outcome, axioms.passes()) {
        (VerlindeOutcome::NonIntegral(_), _) => Status::NonIntegral,
        (_, false) => Status::Failed,
        (_, true) => Status::Ok,
    };
    let text = match fmt {
        Format::Json => json(&ModularDoc {
            gate,
            datum: m.to_json(Some(precision)),
            fpdims: fpdim_vector(&m).ok(),
            cauchy: cauchy_check(&m).ok(),
            trivial_twists: trivial_twist_count(&m),
            axioms,
            verlinde: outcome,
        })?,
        Format::Csv => match &outcome {
            VerlindeOutcome::Ring(r) => r.to_csv()?,
            VerlindeOutcome::NonIntegral(w) => witness_text(&m, w),
        },
        Format::Pretty => pretty_modular(&m, &axioms, &outcome, precision),
    };
    Ok(Rendered { text, status })
}

fn render_modular_failure(
    m: &ModularDatum,
    axioms: &AxiomReport,
    fmt: Format,
    precision: u64,
) -> Result<String, Failure> {
    #[derive(Serialize)]
    struct Doc<'a> {
        datum: DatumJson,
        axioms: &'a AxiomReport,
    }
    Ok(match fmt {
        Format::Json => json(&Doc {
            datum: m.to_json(Some(precision)),
            axioms,
        })?,
        _ => format!("axiom check failed: {axioms:?}\n"),
    })
}

fn witness_text(m: &ModularDatum, w: &VerlindeWitness) -> String {
    let l = m.labels();
    format!(
        "Verlinde coefficient N({}, {}; {}) = {} is {:?}\n",
        l[w.x], l[w.y], l[w.z], w.value, w.reason
    )
}

fn pretty_modular(
    m: &ModularDatum,
    axioms: &AxiomReport,
    outcome: &VerlindeOutcome,
    precision: u64,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "rank {}", m.rank());
    let _ = writeln!(s, "global dimension {}", approx(&axioms.global_dimension, precision));
    let _ = writeln!(s, "{:<8} {:>20}  twist", "object", "dimension");
    for ((l, d), t) in m.labels().iter().zip(m.dims()).zip(m.t()) {
        let _ = writeln!(s, "{l:<8} {:>20}  {t}", approx(d, precision));
    }
    let _ = writeln!(s, "symmetric            {}", ok(axioms.symmetric));
    let _ = writeln!(s, "unit normalized      {}", ok(axioms.unit_normalized));
    let _ = writeln!(s, "T roots of unity     {}", ok(axioms.t_roots_of_unity));
    let _ = writeln!(s, "S^2 = dim C          {}", ok(axioms.nondegenerate));
    let _ = writeln!(s, "(ST)^3 = tau+ S^2    {}", ok(axioms.modular_relation));
    match outcome {
        VerlindeOutcome::Ring(r) => {
            let _ = writeln!(s, "Verlinde             integral, non-negative");
            s.push_str(&pretty_products(r));
        }
        VerlindeOutcome::NonIntegral(w) => s.push_str(&witness_text(m, w)),
    }
    s
}

fn pretty_products(r: &FusionRing) -> String {
    let mut s = String::new();
    let l = r.labels();
    let commutative = is_commutative(r);
    for i in 0..r.rank() {
        for j in (if commutative { i } else { 0 })..r.rank() {
            let terms: Vec<String> = r
                .product(i, j)
                .into_iter()
                .map(|(k, v)| if v == 1 { l[k].clone() } else { format!("{v}{}", l[k]) })
                .collect();
            let _ = writeln!(s, "  {} ⊗ {} = {}", l[i], l[j], terms.join(" + "));
        }
    }
    s
}

fn cmd_gate_scan(max: u64, fmt: Format) -> Result<Rendered, Failure> {
    let scan = gate_scan(max)?;
    let status = if scan.iter().all(|g| g.agrees_with_gap) {
        Status::Ok
    } else {
        Status::Failed
    };
    let text = match fmt {
        Format::Json => json(&scan)?,
        Format::Csv => {
            let mut s = String::from("p,q,norm,is_integer,is_unit,accepted\n");
            for g in &scan {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    g.p, g.q, g.norm, g.is_integer, g.is_unit, g.accepted
                );
            }
            s
        }
        Format::Pretty => {
            let acc: Vec<String> = scan
                .iter()
                .filter(|g| g.accepted)
                .map(|g| format!("({}, {})", g.p, g.q))
                .collect();
            format!(
                "{} pairs scanned, {} accepted: {}\n",
                scan.len(),
                acc.len(),
                acc.join(" ")
            )
        }
    };
    Ok(Rendered { text, status })
}

#[derive(Serialize)]
struct RingDoc<'a> {
    ring: &'a FusionRing,
    axioms: RingAxioms,
    commutative: bool,
    /// `None` above the subring search bound.
    subrings: Option<Vec<Vec<usize>>>,
    z2_grading: Option<Z2Grading>,
    fpdims: Option<Vec<f64>>,
}

fn read_datum(path: &PathBuf) -> Result<ModularDatum, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut v: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad JSON: {e}")))?;
    // accept either a bare datum or the document written by `modular`
    if let Some(d) = v.get_mut("datum") {
        v = d.take();
    }
    serde_json::from_value(v).map_err(|e| Failure::Usage(format!("not a modular datum: {e}")))
}

fn cmd_ring(args: &RingArgs, fmt: Format) -> Result<Rendered, Failure> {
    let need_n = || args.n.ok_or_else(|| Failure::Usage("--n is required".into()));
    let ring = match args.kind {
        RingKind::NearGroup => {
            let n = need_n()?;
            near_group(n, args.m.unwrap_or(n as u32))?
        }
        RingKind::Ty => near_group(need_n()?, 0)?,
        RingKind::Extension => extension_ring(need_n()?)?,
        RingKind::FromVerlinde => {
            let path = args
                .input
                .as_ref()
                .ok_or_else(|| Failure::Usage("--input is required".into()))?;
            let m = read_datum(path)?;
            match verlinde(&m)? {
                VerlindeOutcome::Ring(r) => r,
                VerlindeOutcome::NonIntegral(w) => {
                    let text = match fmt {
                        Format::Json => json(&w)?,
                        _ => witness_text(&m, &w),
                    };
                    return Ok(Rendered {
                        text,
                        status: Status::NonIntegral,
                    });
                }
            }
        }
    };
    let axioms = verify_axioms(&ring);
    let status = if axioms.passes() { Status::Ok } else { Status::Failed };
    let text = match fmt {
        Format::Csv => ring.to_csv()?,
        Format::Json | Format::Pretty => {
            let doc = RingDoc {
                ring: &ring,
                commutative: is_commutative(&ring),
                subrings: (ring.rank() <= MAX_SUBRING_RANK)
                    .then(|| fusion_subrings(&ring).ok())
                    .flatten(),
                z2_grading: detect_z2_grading(&ring),
                fpdims: fpdim_numeric(&ring).ok(),
                axioms,
            };
            if fmt == Format::Json {
                json(&doc)?
            } else {
                pretty_ring(&doc)
            }
        }
    };
    Ok(Rendered { text, status })
}

fn pretty_ring(d: &RingDoc) -> String {
    let r = d.ring;
    let l = r.labels();
    let mut s = String::new();
    let _ = writeln!(s, "rank {}", r.rank());
    let _ = writeln!(
        s,
        "axioms               {} ({} failures)",
        ok(d.axioms.passes()),
        d.axioms.failure_count
    );
    let _ = writeln!(s, "commutative          {}", d.commutative);
    match &d.subrings {
        Some(subs) => {
            let _ = writeln!(s, "fusion subrings      {}", subs.len());
            for sub in subs {
                let names: Vec<&str> = sub.iter().map(|i| l[*i].as_str()).collect();
                let _ = writeln!(s, "  {{{}}}", names.join(", "));
            }
        }
        None => {
            let _ = writeln!(s, "fusion subrings      not searched (rank > {MAX_SUBRING_RANK})");
        }
    }
    match &d.z2_grading {
        Some(g) => {
            let even: Vec<&str> = g.even.iter().map(|i| l[*i].as_str()).collect();
            let odd: Vec<&str> = g.odd.iter().map(|i| l[*i].as_str()).collect();
            let _ = writeln!(s, "Z2 grading           even {{{}}}", even.join(", "));
            let _ = writeln!(s, "                     odd  {{{}}}", odd.join(", "));
        }
        None => {
            let _ = writeln!(s, "Z2 grading           none");
        }
    }
    if let Some(fp) = &d.fpdims {
        let _ = writeln!(s, "FP dimensions:");
        for (name, v) in l.iter().zip(fp) {
            let _ = writeln!(s, "  {name:<8} {v:.12}");
        }
    }
    s.push_str(&pretty_products(r));
    s
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    let fmt = cli.out.format;
    let precision = cli.out.precision;
    match &cli.command {
        Command::Rep(a) => cmd_rep(a, fmt, precision),
        Command::Modular(a) => cmd_modular(a, fmt, precision),
        Command::GateScan { max } => cmd_gate_scan(*max, fmt),
        Command::Ring(a) => cmd_ring(a, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let written = match &cli.out.out {
                Some(path) => std::fs::write(path, &r.text),
                None => {
                    print!("{}", r.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if r.status != Status::Ok {
                eprintln!("verification failed");
            }
            ExitCode::from(r.status as u8)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
