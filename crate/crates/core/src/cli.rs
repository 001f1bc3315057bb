//! Command-line front end. `run` is the whole program minus process exit, so tests drive
//! it with in-memory streams.

use std::io::{self, Write};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::arithgroups::{
    classify_kleinian, prime_set_p_entries, verify_all, verify_paper, Report,
};
use crate::error::{Error, Result};
use crate::exact::{K5Elem, OInt, PrimeIdeal, Rat};
use crate::localglobal::{
    compare_forms, hilbert_k5, hilbert_q, invariants, relevant_places_k5, relevant_places_q,
    PlaceK5, PlaceQ,
};
use crate::qforms::{DiagForm, FieldTag};
use crate::witness::{find_witness, DEFAULT_BOUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "formhasse",
    version,
    about = "Exact quadratic form equivalence over Q and Q(sqrt 5)"
)]
struct Cli {
    /// Emit JSON; every number is an exact string.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide equivalence of two diagonal forms.
    Equiv {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Determinant class, signatures and ramification set of a diagonal form.
    Hasse {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Hilbert symbols (a, b) at one place or at every place where they can be nontrivial.
    Hilbert {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// A rational prime, `real`, `real-tau`, `dyadic` or `pi:<generator>`.
        #[arg(long)]
        place: Option<String>,
    },
    /// Kleinian-group invariants of `<1,a,b,c>`.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Members of the golden prime set up to a limit.
    Primes {
        #[arg(long)]
        limit: u64,
    },
    /// Explicit rational witness `p` with `p^t lhs p = rhs`.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
    },
    /// Run the named verification suites.
    VerifyPaper {
        #[arg(long)]
        section: Option<String>,
        #[arg(long, default_value_t = 300)]
        dmax: u64,
    },
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return match write!(out, "{e}") {
                    Ok(()) => EXIT_OK,
                    Err(_) => EXIT_USAGE,
                };
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("error: invalid arguments");
            return report_usage(err, line.trim_start_matches("error: "));
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => report_usage(err, &msg),
        Err(Failure::Io(e)) => report_usage(err, &format!("output failed: {e}")),
    }
}

fn report_usage(err: &mut dyn Write, msg: &str) -> i32 {
    // nothing sensible is left to do when stderr itself is gone
    writeln!(err, "error: {msg}").ok();
    EXIT_USAGE
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Equiv { field, lhs, rhs } => equiv(out, json, field, lhs, rhs),
        Command::Hasse { field, form } => hasse(out, json, field, form),
        Command::Hilbert { field, a, b, place } => {
            hilbert(out, json, field, a, b, place.as_deref())
        }
        Command::Classify { form } => classify(out, form),
        Command::Primes { limit } => primes(out, json, *limit),
        Command::Witness { lhs, rhs, bound } => witness(out, json, lhs, rhs, *bound),
        Command::VerifyPaper { section, dmax } => verify(out, json, section.as_deref(), *dmax),
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    )
}

fn equiv(out: &mut dyn Write, json: bool, field: &str, lhs: &str, rhs: &str) -> Outcome {
    let field: FieldTag = field.parse()?;
    let f = DiagForm::parse(field, lhs)?;
    let g = DiagForm::parse(field, rhs)?;
    if f.dim() != g.dim() {
        return Err(Failure::Usage(format!(
            "dimension mismatch: --lhs `{lhs}` has {} entries, --rhs `{rhs}` has {}",
            f.dim(),
            g.dim()
        )));
    }
    let diff = compare_forms(&f.to_form(), &g.to_form())?;
    if json {
        print_json(
            out,
            &json!({
                "field": field.to_string(),
                "equivalent": diff.is_none(),
                "differing_invariant": diff.map(|d| d.to_string()),
            }),
        )?;
    } else {
        match diff {
            None => writeln!(out, "EQUIVALENT")?,
            Some(d) => writeln!(out, "INEQUIVALENT: {d} differs")?,
        }
    }
    Ok(if diff.is_none() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn hasse(out: &mut dyn Write, json: bool, field: &str, form: &str) -> Outcome {
    let field: FieldTag = field.parse()?;
    let f = DiagForm::parse(field, form)?;
    let inv = invariants(&f.to_form())?;
    if json {
        let sigs: Vec<Value> = inv
            .signatures
            .iter()
            .map(|(e, s)| json!({"embedding": e.to_string(), "plus": s.plus.to_string(), "minus": s.minus.to_string()}))
            .collect();
        print_json(
            out,
            &json!({
                "field": field.to_string(),
                "dim": inv.dim.to_string(),
                "det_class": inv.det_class.to_string(),
                "signatures": sigs,
                "ramification": inv.hasse,
            }),
        )?;
    } else {
        writeln!(out, "field: {field}")?;
        writeln!(out, "dimension: {}", inv.dim)?;
        writeln!(out, "determinant class: {}", inv.det_class)?;
        for (e, s) in &inv.signatures {
            writeln!(out, "signature at {e}: {s}")?;
        }
        writeln!(out, "ramification set: {{{}}}", inv.hasse.join(", "))?;
    }
    Ok(EXIT_OK)
}

fn parse_elem(field: FieldTag, s: &str) -> Result<K5Elem> {
    let x: K5Elem = s.parse().map_err(|e| match e {
        Error::Parse { reason, .. } => Error::parse(s.trim(), reason),
        other => other,
    })?;
    if x.is_zero() {
        return Err(Error::parse(
            s.trim(),
            "Hilbert symbols need nonzero arguments",
        ));
    }
    if field == FieldTag::Q && !x.is_rational() {
        return Err(Error::parse(s.trim(), "irrational element over Q"));
    }
    Ok(x)
}

fn parse_place_q(s: &str) -> Result<PlaceQ> {
    if s == "real" {
        return Ok(PlaceQ::Real);
    }
    let p: u64 = s
        .parse()
        .map_err(|_| Error::parse(s, "expected a prime or `real`"))?;
    if !crate::exact::int::is_prime_u64(p) {
        return Err(Error::parse(s, "not a prime"));
    }
    Ok(PlaceQ::Prime(p))
}

/// Places of Q(sqrt 5) named by `s`; a rational prime stands for every prime above it.
fn parse_places_k5(s: &str) -> Result<Vec<PlaceK5>> {
    let lift = |q: PrimeIdeal| {
        if q.p == 2 {
            PlaceK5::Dyadic
        } else {
            PlaceK5::Prime(q)
        }
    };
    match s {
        "real" => Ok(vec![PlaceK5::RealIdentity]),
        "real-tau" => Ok(vec![PlaceK5::RealTau]),
        "dyadic" => Ok(vec![PlaceK5::Dyadic]),
        _ => {
            if let Some(g) = s.strip_prefix("pi:") {
                let v: K5Elem = g
                    .parse()
                    .map_err(|_| Error::parse(s, "malformed generator"))?;
                let pi = OInt::from_k5(&v)
                    .ok_or_else(|| Error::parse(s, "generator is not an algebraic integer"))?;
                let q = PrimeIdeal::from_generator(&pi)
                    .map_err(|_| Error::parse(s, "generator is not prime"))?;
                return Ok(vec![lift(q)]);
            }
            let p: u64 = s.parse().map_err(|_| {
                Error::parse(
                    s,
                    "expected real, real-tau, dyadic, a prime or pi:<generator>",
                )
            })?;
            let above = PrimeIdeal::above(p).map_err(|_| Error::parse(s, "not a prime"))?;
            let mut places: Vec<PlaceK5> = above.into_iter().map(lift).collect();
            places.dedup();
            Ok(places)
        }
    }
}

/// `(a, b)` at a place of Q(sqrt 5); the dyadic value is forced by reciprocity.
fn hilbert_k5_any(a: &K5Elem, b: &K5Elem, place: &PlaceK5) -> Result<i8> {
    if *place != PlaceK5::Dyadic {
        return hilbert_k5(a, b, place);
    }
    let mut prod = 1;
    for v in relevant_places_k5(&[a.clone(), b.clone()])? {
        prod *= hilbert_k5(a, b, &v)?;
    }
    Ok(prod)
}

fn hilbert(
    out: &mut dyn Write,
    json: bool,
    field: &str,
    a: &str,
    b: &str,
    place: Option<&str>,
) -> Outcome {
    let field: FieldTag = field.parse()?;
    let x = parse_elem(field, a)?;
    let y = parse_elem(field, b)?;
    let rows: Vec<(String, i8)> = match field {
        FieldTag::Q => {
            let (xr, yr): (&Rat, &Rat) = (
                x.as_rational().expect("rational"),
                y.as_rational().expect("rational"),
            );
            let places = match place {
                Some(s) => vec![parse_place_q(s)?],
                None => relevant_places_q(&[xr.clone(), yr.clone()])?,
            };
            places
                .into_iter()
                .map(|v| Ok((v.to_string(), hilbert_q(xr, yr, v)?)))
                .collect::<Result<_>>()?
        }
        FieldTag::K5 => {
            let places = match place {
                Some(s) => parse_places_k5(s)?,
                None => {
                    let mut v = relevant_places_k5(&[x.clone(), y.clone()])?;
                    v.push(PlaceK5::Dyadic);
                    v
                }
            };
            places
                .iter()
                .map(|v| Ok((v.to_string(), hilbert_k5_any(&x, &y, v)?)))
                .collect::<Result<_>>()?
        }
    };
    if json {
        let symbols: Vec<Value> = rows
            .iter()
            .map(|(p, s)| json!({"place": p, "symbol": s.to_string()}))
            .collect();
        print_json(
            out,
            &json!({"field": field.to_string(), "a": x.to_string(), "b": y.to_string(), "symbols": symbols}),
        )?;
    } else {
        writeln!(out, "({x}, {y}) over {field}")?;
        for (p, s) in &rows {
            writeln!(out, "{p:<24} {s:>2}")?;
        }
    }
    Ok(EXIT_OK)
}

fn classify(out: &mut dyn Write, form: &str) -> Outcome {
    let toks: Vec<&str> = form.split(',').map(str::trim).collect();
    if toks.len() != 4 {
        return Err(Failure::Usage(format!(
            "`{form}`: expected four entries 1,a,b,c"
        )));
    }
    let mut v = [0i64; 4];
    for (slot, tok) in v.iter_mut().zip(&toks) {
        *slot = tok
            .parse()
            .map_err(|_| Error::parse(*tok, "expected an integer"))?;
    }
    if v[0] != 1 {
        return Err(Failure::Usage(format!(
            "`{}`: the first entry must be 1",
            toks[0]
        )));
    }
    let k = classify_kleinian(v[1], v[2], v[3])?;
    print_json(out, &serde_json::to_value(&k).expect("serializes"))?;
    Ok(EXIT_OK)
}

fn primes(out: &mut dyn Write, json: bool, limit: u64) -> Outcome {
    let entries = prime_set_p_entries(limit)?;
    if json {
        print_json(
            out,
            &json!({"limit": limit.to_string(), "entries": entries}),
        )?;
    } else {
        writeln!(out, "{:>8}  {:<16} {:>10}", "q", "pi", "phi mod pi")?;
        for e in &entries {
            writeln!(out, "{:>8}  {:<16} {:>10}", e.q, e.pi.to_string(), e.root)?;
        }
    }
    Ok(EXIT_OK)
}

fn witness(out: &mut dyn Write, json: bool, lhs: &str, rhs: &str, bound: u64) -> Outcome {
    let f = DiagForm::parse(FieldTag::Q, lhs)?;
    let g = DiagForm::parse(FieldTag::Q, rhs)?;
    if f.dim() != g.dim() {
        return Err(Failure::Usage(format!(
            "dimension mismatch: --lhs `{lhs}` has {} entries, --rhs `{rhs}` has {}",
            f.dim(),
            g.dim()
        )));
    }
    match find_witness(&f, &g, bound)? {
        Some(w) => {
            print_json(out, &w.to_json())?;
            Ok(EXIT_OK)
        }
        None => {
            if json {
                print_json(
                    out,
                    &json!({"status": "not-found", "bound": bound.to_string()}),
                )?;
            } else {
                writeln!(out, "NOT-FOUND")?;
            }
            Ok(EXIT_NOT_FOUND)
        }
    }
}

fn verify(out: &mut dyn Write, json: bool, section: Option<&str>, dmax: u64) -> Outcome {
    let reports: Vec<Report> = match section {
        Some(s) => vec![verify_paper(s, dmax)?],
        None => verify_all(dmax)?,
    };
    let all = reports.iter().all(Report::passed);
    if json {
        let v = match section {
            Some(_) => serde_json::to_value(&reports[0]),
            None => serde_json::to_value(&reports),
        };
        print_json(out, &v.expect("reports serialize"))?;
    } else {
        for r in &reports {
            let ok = r.items.iter().filter(|i| i.ok).count();
            writeln!(
                out,
                "{}: {} ({ok}/{} checks)",
                r.section,
                r.status.to_uppercase(),
                r.items.len()
            )?;
            for i in r.items.iter().filter(|i| !i.ok) {
                writeln!(
                    out,
                    "  FAILED {}: computed {}, expected {}",
                    i.claim, i.computed, i.expected
                )?;
            }
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_NEGATIVE })
}
