//! Command-line front end: every computation in the library, with
//! machine-readable output and optional brute-force cross-checks.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use wt1_core::bounds::{
    a5_root_congruence, dihedral_bound_exact, dihedral_bound_from_invariants, exceptional_bound,
    projective_trace, BoundReport, ExceptionalType, GeneralFieldInvariants, Mode, ProjectiveTrace,
};
use wt1_core::classfield::{finiteness_test, ray_class_group, FinitenessResult, Modulus};
use wt1_core::dihedral::{conductor_of_induction, induce_coefficients, ClassCharacter};
use wt1_core::error::{Error, Result};
use wt1_core::iwasawa::{weierstrass_invariants, weight_one_root_bound, IwasawaSeries};
use wt1_core::oracles::{oracle_ray_class, oracle_unit_index, OracleBudget};
use wt1_core::padic::unit_index;
use wt1_core::quadfield::{fundamental_unit, ClassGroup, QuadField, SplitType};

#[derive(Parser)]
#[command(
    name = "wt1",
    version,
    about = "exact invariants of quadratic fields, ray class groups, and weight-one bounds"
)]
struct Cli {
    /// output format for the result record
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// cross-check the result against the brute-force oracle where one exists
    #[arg(long, global = true)]
    verify: bool,
    /// p-adic working precision (power of p carried exactly)
    #[arg(long, global = true, env = "WT1_PREC", default_value_t = wt1_core::DEFAULT_PRECISION)]
    prec: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Class group and narrow class group of a quadratic field
    Classgroup {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
    },
    /// Fundamental unit of a real quadratic field
    Unit {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
    },
    /// Splitting behavior of a rational prime
    Splitting {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
        #[arg(long)]
        prime: u64,
    },
    /// p-adic index [1+pZp : closure of the unit group]
    UnitIndex {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
        #[arg(long)]
        p: u64,
    },
    /// Narrow ray class group of conductor n0 * Q^qpow (Q a prime over p)
    Rayclass {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
        #[arg(long)]
        n0: u64,
        /// prime under the wild part; only consulted when --qpow > 0
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        qpow: u32,
    },
    /// Is the p-power ray class character tower finite over this field?
    Finiteness {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
        #[arg(long)]
        p: u64,
    },
    /// Bounds on classical weight-one specializations
    Bound {
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Hecke data of induced weight-one forms
    Form {
        #[command(subcommand)]
        which: FormCommand,
    },
    /// Projective trace table entry by element order
    Table1 {
        #[arg(long)]
        order: u32,
    },
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Dihedral bound M with full factorization (F = Q)
    Dihedral {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n0: u64,
    },
    /// Dihedral bound assembled from a file of user-supplied invariants
    DihedralInvariants {
        #[arg(long)]
        file: PathBuf,
    },
    /// Exceptional bound a*b for A4/S4/A5 projective image
    Exceptional {
        #[arg(long)]
        p: u64,
        #[arg(long = "type", value_enum)]
        exc_type: ExcTypeArg,
        #[arg(long = "hF")]
        hf: String,
        #[arg(long)]
        t: u32,
    },
    /// Weight-one root bound lambda of a power series read from a file
    Lambda {
        #[arg(long)]
        series: PathBuf,
    },
}

#[derive(Subcommand)]
enum FormCommand {
    /// Coefficients of the form induced from a class-group character
    Dihedral {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
        /// multiplicative order of the character to select
        #[arg(long)]
        char_order: u32,
        /// index among characters of that order, in exponent-vector order
        #[arg(long, default_value_t = 0)]
        char_index: usize,
        #[arg(long, default_value_t = 20)]
        terms: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExcTypeArg {
    #[value(name = "A4", alias = "a4")]
    A4,
    #[value(name = "S4", alias = "s4")]
    S4,
    #[value(name = "A5", alias = "a5")]
    A5,
}

impl From<ExcTypeArg> for ExceptionalType {
    fn from(v: ExcTypeArg) -> Self {
        match v {
            ExcTypeArg::A4 => ExceptionalType::A4,
            ExcTypeArg::S4 => ExceptionalType::S4,
            ExcTypeArg::A5 => ExceptionalType::A5,
        }
    }
}

fn group_json(g: &wt1_core::arith::FiniteAbelianGroup) -> Value {
    json!({
        "order": g.order().map(|o| o.to_string()),
        "invariant_factors": g.invariant_factors().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

fn split_type_str(s: SplitType) -> &'static str {
    match s {
        SplitType::Split => "split",
        SplitType::Inert => "inert",
        SplitType::Ramified => "ramified",
    }
}

fn bound_report_json(r: &BoundReport) -> Value {
    json!({
        "factors": r.factors.iter().map(|(label, f)| json!([label, f.to_string()])).collect::<Vec<_>>(),
        "m_prime": r.m_prime.to_string(),
        "m": r.m.to_string(),
        "mode": match r.mode { Mode::Exact => "exact", Mode::FromInvariants => "from-invariants" },
    })
}

struct Outcome {
    inputs: Value,
    results: Value,
    assumptions: Vec<String>,
    verification: Option<String>,
    exit: u8,
}

impl Outcome {
    fn ok(inputs: Value, results: Value) -> Outcome {
        Outcome {
            inputs,
            results,
            assumptions: Vec::new(),
            verification: None,
            exit: 0,
        }
    }
}

fn parse_invariants_file(text: &str) -> Result<(GeneralFieldInvariants, u64)> {
    let mut map = std::collections::BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    let get = |key: &str| {
        map.get(key)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("missing key {key}")))
    };
    let int = |key: &str| -> Result<u64> {
        get(key)?
            .parse()
            .map_err(|_| Error::Parse(format!("key {key} is not an integer")))
    };
    let list = |key: &str| -> Result<Vec<u64>> {
        let raw = get(key)?;
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',')
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("key {key} has a non-integer entry")))
            })
            .collect()
    };
    let inv = GeneralFieldInvariants {
        d: int("d")? as u32,
        t: int("t")? as u32,
        class_number_k: get("class_number_k")?
            .parse()
            .map_err(|_| Error::Parse("class_number_k is not an integer".to_string()))?,
        unit_index_p_exponent: int("unit_index_p_exponent")? as u32,
        split_tame: list("split_tame")?,
        inert_tame: list("inert_tame")?,
        hf_p_exponent: int("hf_p_exponent")? as u32,
    };
    Ok((inv, int("p")?))
}

/// Characters of the class group of discriminant d with the requested
/// multiplicative order, in exponent-vector order.
fn characters_of_order(k: &QuadField, order: u32) -> Result<Vec<ClassCharacter>> {
    let cl = ClassGroup::new(k);
    let factors: Vec<u64> = cl
        .group()
        .invariant_factors()
        .iter()
        .map(|f| {
            use num_traits::ToPrimitive;
            f.to_u64().ok_or_else(|| Error::Resource("class group too large".to_string()))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut odometer = vec![0u64; factors.len()];
    loop {
        let exps: Vec<i64> = odometer.iter().map(|v| *v as i64).collect();
        let phi = ClassCharacter::new(k, &exps)?;
        if phi.order() == order {
            out.push(phi);
        }
        // advance
        let mut i = 0;
        loop {
            if i == factors.len() {
                return Ok(out);
            }
            odometer[i] += 1;
            if odometer[i] < factors[i] {
                break;
            }
            odometer[i] = 0;
            i += 1;
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let budget = OracleBudget::default();
    match &cli.command {
        Command::Classgroup { disc } => {
            let k = QuadField::new(*disc)?;
            let cl = ClassGroup::new(&k);
            Ok(Outcome::ok(
                json!({ "disc": disc }),
                json!({
                    "h": cl.h().to_string(),
                    "h_plus": cl.h_plus().to_string(),
                    "unit_norm": cl.unit_norm(),
                    "group": group_json(cl.group()),
                    "representatives": cl.representatives().iter()
                        .map(|f| json!([f.a.to_string(), f.b.to_string(), f.c.to_string()]))
                        .collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Unit { disc } => {
            let k = QuadField::new(*disc)?;
            let u = fundamental_unit(&k)?;
            Ok(Outcome::ok(
                json!({ "disc": disc }),
                json!({
                    "x": u.x.to_string(),
                    "y": u.y.to_string(),
                    "norm": u.norm,
                    "display": u.to_string(),
                    "approx": u.approx(),
                }),
            ))
        }
        Command::Splitting { disc, prime } => {
            let k = QuadField::new(*disc)?;
            if !wt1_core::padic::is_prime(*prime) {
                return Err(Error::usage(format!("{prime} is not prime")));
            }
            let st = k.classify_prime(*prime);
            let form = match st {
                SplitType::Inert => None,
                _ => Some(k.prime_form(*prime)?),
            };
            let conj = match st {
                SplitType::Split => Some(k.conjugate_prime_form(*prime)?),
                _ => None,
            };
            let form_j = |f: &wt1_core::quadfield::QuadForm| {
                json!([f.a.to_string(), f.b.to_string(), f.c.to_string()])
            };
            Ok(Outcome::ok(
                json!({ "disc": disc, "prime": prime }),
                json!({
                    "splitting": split_type_str(st),
                    "prime_form": form.as_ref().map(form_j),
                    "conjugate_form": conj.as_ref().map(form_j),
                }),
            ))
        }
        Command::UnitIndex { disc, p } => {
            let k = QuadField::new(*disc)?;
            let r = unit_index(&k, *p, cli.prec)?;
            let mut out = Outcome::ok(
                json!({ "disc": disc, "p": p, "prec": cli.prec }),
                json!({
                    "v": r.v,
                    "index_exponent": r.index_exponent,
                    "index": r.index.to_string(),
                    "precision_ok": r.precision_ok,
                }),
            );
            if cli.verify {
                match oracle_unit_index(*disc, *p, cli.prec, &budget) {
                    Ok(oracle) if oracle == r.index => {
                        out.verification = Some("ok: oracle agrees".to_string());
                    }
                    Ok(oracle) => {
                        out.verification = Some(format!(
                            "mismatch: main index {} vs oracle {}",
                            r.index, oracle
                        ));
                        out.exit = 1;
                    }
                    Err(Error::Resource(reason)) => {
                        out.verification = Some(format!("skipped: {reason}"));
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        }
        Command::Rayclass { disc, n0, p, qpow } => {
            let k = QuadField::new(*disc)?;
            let m = Modulus::new(*n0, *p, *qpow)?;
            let g = ray_class_group(&k, &m)?;
            let mut out = Outcome::ok(
                json!({ "disc": disc, "n0": n0, "p": p, "qpow": qpow }),
                json!({ "group": group_json(&g) }),
            );
            if cli.verify {
                match oracle_ray_class(&k, &m, &budget) {
                    Ok(oracle) if oracle.invariant_factors() == g.invariant_factors() => {
                        out.verification = Some("ok: oracle agrees".to_string());
                    }
                    Ok(oracle) => {
                        out.verification = Some(format!(
                            "mismatch: main {:?} vs oracle {:?}",
                            g.invariant_factors(),
                            oracle.invariant_factors()
                        ));
                        out.exit = 1;
                    }
                    Err(Error::Resource(reason)) => {
                        out.verification = Some(format!("skipped: {reason}"));
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        }
        Command::Finiteness { disc, p } => {
            let k = QuadField::new(*disc)?;
            let r = finiteness_test(&k, *p, cli.prec)?;
            let (results, exit) = match r {
                FinitenessResult::Finite { v } => (json!({ "status": "finite", "v": v }), 0),
                FinitenessResult::Infinite { reason } => {
                    (json!({ "status": "infinite", "reason": reason }), 0)
                }
                FinitenessResult::Undetermined => (json!({ "status": "undetermined" }), 3),
            };
            let mut out = Outcome::ok(json!({ "disc": disc, "p": p, "prec": cli.prec }), results);
            out.exit = exit;
            Ok(out)
        }
        Command::Bound { which } => execute_bound(cli, which, &budget),
        Command::Form { which } => execute_form(which),
        Command::Table1 { order } => {
            let tr = projective_trace(*order)?;
            let results = match tr {
                ProjectiveTrace::Integer(v) => json!({ "order": order, "trace": v }),
                ProjectiveTrace::RootOfQuadratic { c1, c0 } => json!({
                    "order": order,
                    "trace": format!("root of X^2 + ({c1})X + ({c0})"),
                    "quadratic": { "c1": c1, "c0": c0 },
                    "roots_congruent_mod_5": a5_root_congruence(5)?,
                }),
            };
            Ok(Outcome::ok(json!({ "order": order }), results))
        }
    }
}

fn execute_bound(cli: &Cli, which: &BoundCommand, budget: &OracleBudget) -> Result<Outcome> {
    match which {
        BoundCommand::Dihedral { disc, p, n0 } => {
            let k = QuadField::new(*disc)?;
            let report = dihedral_bound_exact(&k, *p, *n0, cli.prec)?;
            let mut out = Outcome::ok(
                json!({ "disc": disc, "p": p, "n0": n0, "prec": cli.prec }),
                bound_report_json(&report),
            );
            out.assumptions = vec![
                "(P1) assumed: not verifiable from field data alone".to_string(),
                "(P2) assumed: not verifiable from field data alone".to_string(),
            ];
            if cli.verify {
                out.verification = Some(verify_dihedral_factors(*disc, *p, cli.prec, &report, budget));
                if out.verification.as_deref().unwrap_or("").starts_with("mismatch") {
                    out.exit = 1;
                }
            }
            Ok(out)
        }
        BoundCommand::DihedralInvariants { file } => {
            let text = std::fs::read_to_string(file)?;
            let (inv, p) = parse_invariants_file(&text)?;
            let report = dihedral_bound_from_invariants(&inv, p)?;
            Ok(Outcome {
                inputs: json!({ "file": file.display().to_string(), "p": p }),
                results: bound_report_json(&report),
                assumptions: vec![
                    "(P1) assumed: not verifiable from field data alone".to_string(),
                    "(P2) assumed: not verifiable from field data alone".to_string(),
                    "user-supplied invariants are trusted, not recomputed".to_string(),
                ],
                verification: None,
                exit: 0,
            })
        }
        BoundCommand::Exceptional { p, exc_type, hf, t } => {
            let hf: BigInt = hf
                .parse()
                .map_err(|_| Error::usage("--hF must be an integer".to_string()))?;
            let r = exceptional_bound(*p, (*exc_type).into(), &hf, *t)?;
            Ok(Outcome::ok(
                json!({
                    "p": p,
                    "type": match exc_type { ExcTypeArg::A4 => "A4", ExcTypeArg::S4 => "S4", ExcTypeArg::A5 => "A5" },
                    "hF": hf.to_string(),
                    "t": t,
                }),
                json!({
                    "a": r.a,
                    "b": r.b.to_string(),
                    "bound": r.bound.to_string(),
                    "hf_p_exponent": r.r,
                }),
            ))
        }
        BoundCommand::Lambda { series } => {
            let text = std::fs::read_to_string(series)?;
            let t = IwasawaSeries::parse(&text)?;
            let (mu, lambda) = weierstrass_invariants(&t)?;
            let bound = weight_one_root_bound(&t)?;
            Ok(Outcome::ok(
                json!({
                    "series": series.display().to_string(),
                    "p": t.p(),
                    "precision": t.precision(),
                    "truncation": t.truncation_degree(),
                }),
                json!({ "mu": mu, "lambda": lambda, "weight_one_root_bound": bound }),
            ))
        }
    }
}

/// Cross-check the per-factor content of an exact dihedral bound report:
/// the unit-index factor against the finite-quotient oracle and each tame
/// factor against the literal local-quotient enumeration.
fn verify_dihedral_factors(
    disc: i64,
    p: u64,
    prec: u32,
    report: &BoundReport,
    budget: &OracleBudget,
) -> String {
    let mut notes = Vec::new();
    for (label, value) in &report.factors {
        if label == "unit index" {
            match oracle_unit_index(disc, p, prec, budget) {
                Ok(oracle) if oracle == *value => notes.push("unit index ok".to_string()),
                Ok(oracle) => {
                    return format!("mismatch: unit index factor {value} vs oracle {oracle}")
                }
                Err(Error::Resource(reason)) => notes.push(format!("unit index skipped: {reason}")),
                Err(e) => return format!("mismatch: unit index oracle failed: {e}"),
            }
        } else if let Some(rest) = label.strip_prefix("l=") {
            let l: u64 = rest
                .split_whitespace()
                .next()
                .and_then(|v| v.parse().ok())
                .unwrap_or(0);
            match wt1_core::oracles::oracle_local_quotient(disc, l) {
                Ok(oracle) if BigInt::from(oracle) == *value => {
                    notes.push(format!("l={l} ok"));
                }
                Ok(oracle) => {
                    return format!("mismatch: factor at l={l} is {value} vs oracle {oracle}")
                }
                Err(e) => return format!("mismatch: local oracle at l={l} failed: {e}"),
            }
        }
    }
    format!("ok: {}", notes.join(", "))
}

fn execute_form(which: &FormCommand) -> Result<Outcome> {
    match which {
        FormCommand::Dihedral {
            disc,
            char_order,
            char_index,
            terms,
        } => {
            let k = QuadField::new(*disc)?;
            let chars = characters_of_order(&k, *char_order)?;
            if chars.is_empty() {
                return Err(Error::usage(format!(
                    "no class character of order {char_order} for discriminant {disc}"
                )));
            }
            let phi = chars.get(*char_index).ok_or_else(|| {
                Error::usage(format!(
                    "character index {} out of range: {} character(s) of order {}",
                    char_index,
                    chars.len(),
                    char_order
                ))
            })?;
            let coeffs = induce_coefficients(phi, *terms)?;
            Ok(Outcome::ok(
                json!({
                    "disc": disc,
                    "char_order": char_order,
                    "char_index": char_index,
                    "terms": terms,
                }),
                json!({
                    "level": coeffs.level,
                    "conductor": conductor_of_induction(phi).to_string(),
                    "character": {
                        "order": phi.order(),
                        "zeta_order": phi.cyclotomic_order(),
                        "zeta_exponents": phi.zeta_exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    },
                    "coefficients": coeffs.coefficients.iter().enumerate().map(|(i, c)| {
                        json!([i as u64 + 1, c.coeffs().iter().map(|v| v.to_string()).collect::<Vec<_>>()])
                    }).collect::<Vec<_>>(),
                }),
            ))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Parse(_) | Error::TruncationTooShort(_) | Error::Io(_) => 2,
        Error::Precision { .. } | Error::Indeterminate => 3,
        Error::Resource(_) => 4,
    }
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, value, rows);
            }
        }
        Value::Array(items) => {
            for (i, value) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), value, rows);
            }
        }
        Value::Null => rows.push((prefix.to_string(), String::new())),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn print_record(format: Format, record: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(record).expect("serializable")),
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", record, &mut rows);
            println!("key,value");
            for (key, value) in rows {
                if value.contains(',') || value.contains('"') {
                    println!("{key},\"{}\"", value.replace('"', "\"\""));
                } else {
                    println!("{key},{value}");
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            let record = json!({
                "command": command_echo(),
                "inputs": outcome.inputs,
                "results": outcome.results,
                "assumptions": outcome.assumptions,
                "verification": outcome.verification,
            });
            print_record(cli.format, &record);
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
