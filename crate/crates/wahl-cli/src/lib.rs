//! The `wahl` command line tool.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a verification
//! fails, 2 on bad input or a violated precondition.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Value, json};

use wahl::classt::{
    Classification, ClassTTriple, ancestry, classify, enumerate, invariants, smoothing_family, word_string,
};
use wahl::hjcore::{hj_expand, modular_inverse};
use wahl::json::{SCHEMA_VERSION, int_value, ints_value, rational_value};
use wahl::toric::{
    CyclicQuotient, equivariant_resolution_exists, gorenstein_index, pullback_divisor, resolution_data,
    semigroup_generators,
};
use wahl::verify::{Fixture, VerificationReport, builtin, builtin_names, verify_all};
use wahl::{Characteristic, Error, Int, script, tables};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "wahl", version, about = "Class-T singularities, HJ fractions and construction checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
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
    /// Hirzebruch-Jung expansion of n/q.
    Expand { n: Int, q: Int },
    /// Recognise (N, Q) as class T, an all-twos chain, or neither.
    Classify { big_n: Int, big_q: Int },
    /// Invariants of T(d, n, a).
    Invariants { d: Int, n: Int, a: Int },
    /// Reproduce a table of invariants.
    Table {
        #[arg(value_parser = ["1", "2"])]
        which: String,
        #[arg(long, default_value_t = 2)]
        k: i64,
        #[arg(long, default_value_t = 3)]
        m: i64,
    },
    /// Class-T triples with l <= max-l, breadth first from (d, 2, 1).
    Enumerate {
        #[arg(long)]
        d: Int,
        #[arg(long = "max-l")]
        max_l: usize,
    },
    /// Toric resolution data of (n, q).
    Resolve { n: Int, q: Int },
    /// Pullback coefficients of a1 D1 + a2 D2.
    Pullback {
        n: Int,
        q: Int,
        #[arg(allow_hyphen_values = true)]
        a1: Int,
        #[arg(allow_hyphen_values = true)]
        a2: Int,
    },
    /// The one-parameter smoothing family of T(d, n, a).
    Smoothing {
        d: Int,
        n: Int,
        a: Int,
        #[arg(long = "char")]
        characteristic: u64,
    },
    /// Replay a blowup script and print the resulting configuration.
    Blowup { script: PathBuf },
    /// Verify a construction fixture.
    Verify {
        fixture: Option<PathBuf>,
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Verify every built-in construction.
    Examples {
        /// `default`, or a list such as `example-7.1=5,example-7.6=2`.
        #[arg(long = "char-map", default_value = "default")]
        char_map: String,
    },
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, code: EXIT_OK }
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => {
            let _ = match cli.format {
                Format::Text => write!(out, "{}", o.text),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json values print")),
            };
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn characteristic(p: u64) -> wahl::Result<Characteristic> {
    Characteristic::new(p)
}

fn envelope(kind: &str, body: Value) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "kind": kind });
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    v
}

fn triple_json(t: &ClassTTriple) -> Value {
    ints_value(&[t.d().clone(), t.n().clone(), t.a().clone()])
}

fn join(v: &[Int]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn dispatch(cmd: &Command) -> wahl::Result<Output> {
    match cmd {
        Command::Expand { n, q } => {
            let w = hj_expand(n, q)?;
            Ok(Output::ok(
                format!("{w}\n"),
                envelope("expand", json!({ "n": int_value(n), "q": int_value(q), "weights": ints_value(w.as_slice()) })),
            ))
        }
        Command::Classify { big_n, big_q } => {
            let c = classify(big_n, big_q)?;
            let text = match &c {
                Classification::ClassT(t) => format!("{t}\n"),
                other => format!("{}\n", other.kind()),
            };
            let triple = c.triple().map(triple_json).unwrap_or(Value::Null);
            Ok(Output::ok(
                text,
                envelope("classify", json!({ "n": int_value(big_n), "q": int_value(big_q), "result": c.kind(), "triple": triple })),
            ))
        }
        Command::Invariants { d, n, a } => {
            let t = ClassTTriple::new(d.clone(), n.clone(), a.clone())?;
            let inv = invariants(&t);
            let cq = t.cyclic_quotient();
            let word = word_string(&ancestry(&t));
            let text = format!(
                "{t} = ({},{})\nl = {}\ndelta = {}\nB = ({})\nR = ({})\nc = ({})\nword = {}\n",
                cq.n(),
                cq.q(),
                inv.l,
                inv.delta,
                join(inv.b.as_slice()),
                join(&inv.r),
                inv.c.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
                if word.is_empty() { "(base)" } else { &word },
            );
            let body = json!({
                "triple": triple_json(&t),
                "n": int_value(cq.n()),
                "q": int_value(cq.q()),
                "l": inv.l,
                "delta": int_value(&inv.delta),
                "b": ints_value(inv.b.as_slice()),
                "p": ints_value(&inv.p),
                "qq": ints_value(&inv.q),
                "r": ints_value(&inv.r),
                "c": inv.c.iter().map(rational_value).collect::<Vec<_>>(),
                "word": word,
            });
            Ok(Output::ok(text, envelope("invariants", body)))
        }
        Command::Table { which, k, m } => {
            let rows = if which == "1" { tables::table1(*k, *m)? } else { tables::table2() };
            Ok(Output::ok(tables::render_text(&rows), tables::render_json(&rows)))
        }
        Command::Enumerate { d, max_l } => {
            let list = enumerate(d, *max_l)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for t in &list {
                let inv = invariants(t);
                let mut word = word_string(&ancestry(t));
                if word.is_empty() {
                    word = "(base)".to_string();
                }
                text.push_str(&format!("{t} l={} B=({}) word={}\n", inv.l, join(inv.b.as_slice()), word));
                rows.push(json!({ "triple": triple_json(t), "l": inv.l, "b": ints_value(inv.b.as_slice()), "word": word }));
            }
            Ok(Output::ok(text, envelope("enumerate", json!({ "d": int_value(d), "max_l": max_l, "triples": rows }))))
        }
        Command::Resolve { n, q } => {
            let cq = CyclicQuotient::new(n.clone(), q.clone())?;
            let r = resolution_data(&cq);
            let gens = semigroup_generators(&cq);
            let inv = modular_inverse(q, n)?;
            let text = format!(
                "({n},{q}): B = ({})\np = ({})\nq = ({})\ndual = ({n},{inv})\ngenerators = {}\ngorenstein index = {}\n",
                join(r.weights.as_slice()),
                join(&r.p),
                join(&r.q),
                gens.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" "),
                gorenstein_index(&cq),
            );
            let body = json!({
                "n": int_value(n),
                "q": int_value(q),
                "weights": ints_value(r.weights.as_slice()),
                "p": ints_value(&r.p),
                "qq": ints_value(&r.q),
                "inverse": int_value(&inv),
                "generators": gens.iter().map(|(a, b)| json!([int_value(a), int_value(b)])).collect::<Vec<_>>(),
                "gorenstein_index": int_value(&gorenstein_index(&cq)),
            });
            Ok(Output::ok(text, envelope("resolve", body)))
        }
        Command::Pullback { n, q, a1, a2 } => {
            let cq = CyclicQuotient::new(n.clone(), q.clone())?;
            let v = pullback_divisor(&cq, a1, a2)?;
            Ok(Output::ok(format!("({})\n", join(&v)), envelope("pullback", json!({ "coefficients": ints_value(&v) }))))
        }
        Command::Smoothing { d, n, a, characteristic: p } => {
            let t = ClassTTriple::new(d.clone(), n.clone(), a.clone())?;
            let p = characteristic(*p)?;
            let f = smoothing_family(&t, p);
            let equivariant = equivariant_resolution_exists(&t.cyclic_quotient(), p);
            let singular = f.singular_parameters();
            let text = format!(
                "{t} in characteristic {p}\nrelation: {} = 0 in k[s][u1,u2,z]\ngroup: mu_{} acting with weights ({})\nsingular fibers over s in {{{}}}\ngorenstein index: {}\n",
                f.relation,
                f.group_order,
                join(&f.weights),
                singular.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "),
                f.gorenstein_index,
            );
            let body = json!({
                "triple": triple_json(&t),
                "characteristic": p.value(),
                "relation": f.relation.to_string(),
                "z_degree": int_value(&f.relation.z_degree),
                "shift_degree": int_value(&f.relation.shift_degree),
                "group_order": int_value(&f.group_order),
                "weights": ints_value(&f.weights),
                "excluded_parameter": f.excluded_parameter.as_ref().map(rational_value),
                "singular_parameters": singular.iter().map(rational_value).collect::<Vec<_>>(),
                "gorenstein_index": int_value(&f.gorenstein_index),
                "equivariant_resolution": equivariant,
            });
            Ok(Output::ok(text, envelope("smoothing", body)))
        }
        Command::Blowup { script: path } => {
            let text = read(path)?;
            let doc = script::replay_doc(&script::parse_script(&text)?)?;
            let mut t = format!("K^2 = {}, rho = {}\n", doc.surface.k_squared, doc.surface.picard_rank);
            for c in &doc.surface.curves {
                t.push_str(&format!("  {} : {}\n", c.id, c.self_int));
            }
            for script::PairingDoc(a, b, k) in &doc.surface.pairings {
                t.push_str(&format!("  {a}.{b} = {k}\n"));
            }
            if let Some(c) = &doc.contraction {
                for ch in &c.chains {
                    t.push_str(&format!("  contract [{}] -> T({}) delta {}\n", ch.ids.join(" "), join(&ch.triple), ch.delta));
                }
                t.push_str(&format!("K_X^2 = {}\n", c.k_x_squared));
            }
            let json = serde_json::to_value(&doc).expect("replay documents serialize");
            Ok(Output::ok(t, json))
        }
        Command::Verify { fixture, characteristic: p, builtin: name } => {
            let fx = match (fixture, name) {
                (Some(_), Some(_)) => return Err(Error::Input("give a fixture path or --builtin, not both".into())),
                (None, None) => return Err(Error::Input("give a fixture path or --builtin NAME".into())),
                (Some(path), None) => Fixture::from_json(&read(path)?)?,
                (None, Some(n)) => builtin(n)?,
            };
            let report = verify_all(&fx, characteristic(*p)?)?;
            Ok(report_output(&report))
        }
        Command::Examples { char_map } => examples(char_map),
    }
}

fn report_output(report: &VerificationReport) -> Output {
    Output {
        text: report.to_text(),
        json: serde_json::to_value(report).expect("reports serialize"),
        code: if report.passed() { EXIT_OK } else { EXIT_FAIL },
    }
}

fn read(path: &PathBuf) -> wahl::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Characteristic 0 plus the smallest prime each construction allows.
fn default_chars(fx: &Fixture) -> wahl::Result<Vec<u64>> {
    let ex: Vec<u64> = fx.excluded()?.iter().map(|c| c.value()).collect();
    let p = (2u64..).find(|p| characteristic(*p).is_ok() && !ex.contains(p)).expect("primes are infinite");
    Ok(vec![0, p])
}

fn examples(char_map: &str) -> wahl::Result<Output> {
    let mut plan: Vec<(String, Vec<u64>)> = Vec::new();
    if char_map == "default" {
        for name in builtin_names() {
            plan.push((name.to_string(), default_chars(&builtin(name)?)?));
        }
    } else {
        for item in char_map.split(',') {
            let (name, p) = item
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("char-map entry {item:?} is not NAME=P")))?;
            let p = u64::from_str(p.trim()).map_err(|_| Error::Input(format!("bad characteristic in {item:?}")))?;
            plan.push((name.trim().to_string(), vec![p]));
        }
    }
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut code = EXIT_OK;
    for (name, chars) in plan {
        let fx = builtin(&name)?;
        for p in chars {
            let r = verify_all(&fx, characteristic(p)?)?;
            let k = r.k_x_squared.as_ref().map_or("?".to_string(), |k| k.to_string());
            text.push_str(&format!("{name:<12} char {p:<3} K_X^2 = {k:<3} {}\n", r.verdict.as_str()));
            if !r.passed() {
                code = EXIT_FAIL;
            }
            reports.push(serde_json::to_value(&r).expect("reports serialize"));
        }
    }
    Ok(Output { text, json: envelope("examples", json!({ "reports": reports })), code })
}

/// Parses a report emitted by `verify --format json`.
pub fn parse_report(text: &str) -> wahl::Result<VerificationReport> {
    VerificationReport::from_json(text)
}
