use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_pcg::Pcg32;
use serde::Serialize;
use serde_json::{json, Value};

use dgalab::accept;
use dgalab::gallery::{generate, standard_gallery, ExampleDescriptor, Instance};
use dgalab::homology::koszul::KoszulComplex;
use dgalab::homology::{
    bass_numbers, ext_dims, golod_series, growth_report, tor_dims, ResolutionCache,
};
use dgalab::hypersurface::{residue_witness, rigidity_scan, MAX_SCAN_RANGE};
use dgalab::skew::{check_dagger, classify, invariants, random_graded_conjugation, split_witness};
use dgalab::{spec_io, Error, Field, GradedSkewAlgebra};

/// Largest `--range` accepted without `--max-steps` for the ring verbs.
const MAX_RANGE: usize = 16;
const DEFAULT_RANGE: usize = 8;

#[derive(Parser)]
#[command(
    name = "dgalab",
    version,
    about = "Homological invariants of Artinian rings and graded skew algebras"
)]
struct Cli {
    /// JSON input file (ring, workload, skew algebra or matrix factorization).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Homological range N.
    #[arg(long, global = true)]
    range: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Raise the range cap to N.
    #[arg(long, global = true)]
    max_steps: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Verb {
    /// Basic invariants of a ring.
    Ring,
    /// Minimal free resolution of `module` (Betti numbers and syzygy dimensions).
    Resolve,
    /// Betti numbers of `module`.
    Betti,
    /// Bass numbers of `module`.
    Bass,
    /// dim Ext^i(module, module2).
    Ext,
    /// dim Tor_i(module, module2).
    Tor,
    /// Search for a (†) witness in a skew algebra or in the Koszul homology of a ring.
    Dagger,
    /// Classify a codimension-three Tor algebra.
    Classify,
    /// Golod series against the Betti numbers of k.
    Golod,
    /// Validate a matrix factorization.
    Mf,
    /// Tor/Ext rigidity table over k[x]/(x^n).
    Rigidity { n: usize },
    /// Split k[-1] off K/πK over the DVR avatar.
    Witness {
        n: usize,
        #[arg(required = true)]
        summands: Vec<usize>,
    },
    /// Growth of the Bass (or Betti) sequence of `module`.
    Growth {
        #[arg(value_enum, default_value_t = Sequence::Bass)]
        of: Sequence,
    },
    /// List the gallery or emit one example as an input spec.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
    /// Run acceptance criteria (all when none are given).
    Accept { ids: Vec<usize> },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sequence {
    Bass,
    Betti,
}

#[derive(Subcommand)]
enum GalleryAction {
    List,
    /// `emit POWER_OF_M 2 2`, `emit CODIM3_CLASS B 4 2`, `emit TRIVIAL_EXT 2 HYPERSURFACE 3`, ...
    Emit {
        tag: String,
        params: Vec<String>,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) => Failure::Verification(e.to_string()),
            Error::Json(_) => Failure::Input(format!("malformed JSON: {e}")),
            Error::CapExceeded { .. } => Failure::Input(format!("cap violation: {e}")),
            other => Failure::Input(format!("invalid input: {other}")),
        }
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

struct Ctx<'a> {
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn input(&self) -> std::result::Result<Value, Failure> {
        let path = self
            .cli
            .input
            .as_ref()
            .ok_or_else(|| Failure::Input("missing --input <path>".into()))?;
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::Input(format!("malformed JSON in {}: {e}", path.display())))
    }

    fn capped(&self, value: usize, cap: usize, what: &str) -> std::result::Result<usize, Failure> {
        if value <= cap {
            return Ok(value);
        }
        match self.cli.max_steps {
            Some(m) if value <= m => {
                eprintln!("warning: {what} {value} is unsupported beyond tested range (cap {cap})");
                Ok(value)
            }
            _ => Err(Failure::Input(format!(
                "cap violation: {what} {value} exceeds {cap} (pass --max-steps to override)"
            ))),
        }
    }

    fn range(&self) -> std::result::Result<usize, Failure> {
        self.capped(self.cli.range.unwrap_or(DEFAULT_RANGE), MAX_RANGE, "range")
    }

    fn skew_or_ring(&self) -> std::result::Result<GradedSkewAlgebra, Failure> {
        let v = self.input()?;
        let is_ring =
            v.get("kind").is_some() || v.get("vars").is_some() || v.get("table").is_some();
        let alg = if is_ring {
            let ring = spec_io::parse_ring(&v)?;
            KoszulComplex::new(&ring.algebra)?.homology_algebra()?
        } else {
            match spec_io::parse_skew(&v) {
                Ok(s) => s,
                Err(skew_err) => match spec_io::parse_ring(&v) {
                    Ok(ring) => KoszulComplex::new(&ring.algebra)?.homology_algebra()?,
                    Err(_) => return Err(skew_err.into()),
                },
            }
        };
        Ok(match self.cli.seed {
            Some(seed) => random_graded_conjugation(&alg, &mut Pcg32::seed_from_u64(seed))?,
            None => alg,
        })
    }
}

fn to_json<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("plain data")
}

#[derive(Serialize)]
struct DaggerOut {
    dagger: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    split_verified: Option<bool>,
}

/// Unbounded integers print as JSON numbers when they fit in `u64`.
fn big_to_json(x: &impl std::fmt::Display) -> Value {
    let text = x.to_string();
    text.parse::<u64>()
        .map_or(Value::String(text), |v| json!(v))
}

fn parse_params<T: std::str::FromStr>(
    params: &[String],
    n: usize,
    usage: &str,
) -> std::result::Result<Vec<T>, Failure> {
    if params.len() != n {
        return Err(Failure::Input(format!("usage: gallery emit {usage}")));
    }
    params
        .iter()
        .map(|p| {
            p.parse().map_err(|_| {
                Failure::Input(format!("bad parameter {p:?}; usage: gallery emit {usage}"))
            })
        })
        .collect()
}

fn descriptor(tag: &str, params: &[String]) -> std::result::Result<ExampleDescriptor, Failure> {
    use ExampleDescriptor::*;
    Ok(match tag {
        "POWER_OF_M" => {
            let p = parse_params::<usize>(params, 2, "POWER_OF_M <e> <s>")?;
            PowerOfM {
                e: p[0],
                s: p[1] as u32,
            }
        }
        "POWER_OF_REGSEQ" => {
            let p = parse_params::<usize>(params, 3, "POWER_OF_REGSEQ <e> <d> <s>")?;
            PowerOfRegseq {
                e: p[0],
                d: p[1] as u32,
                s: p[2] as u32,
            }
        }
        "TRIVIAL_EXT" => {
            let (Some(r), Some(base_tag)) = (params.first(), params.get(1)) else {
                return Err(Failure::Input(
                    "usage: gallery emit TRIVIAL_EXT <r> <base tag> <base params>".into(),
                ));
            };
            let r = r
                .parse()
                .map_err(|_| Failure::Input(format!("bad parameter {r:?} for TRIVIAL_EXT")))?;
            TrivialExt {
                base: Box::new(descriptor(base_tag, &params[2..])?),
                r,
            }
        }
        "CODIM3_CLASS" => {
            if params.len() != 3 {
                return Err(Failure::Input(
                    "usage: gallery emit CODIM3_CLASS <class> <m> <c>".into(),
                ));
            }
            let n = parse_params::<usize>(&params[1..], 2, "CODIM3_CLASS <class> <m> <c>")?;
            Codim3Class {
                class: params[0].clone(),
                m: n[0],
                c: n[1],
                relax_bounds: false,
            }
        }
        "DETERMINANTAL_AVATAR" => {
            let p = parse_params::<usize>(params, 1, "DETERMINANTAL_AVATAR <r>")?;
            DeterminantalAvatar { r: p[0] }
        }
        "HYPERSURFACE" => {
            let p = parse_params::<usize>(params, 1, "HYPERSURFACE <n>")?;
            Hypersurface { n: p[0] }
        }
        "HAND_TABLE" => {
            parse_params::<usize>(params, 0, "HAND_TABLE")?;
            HandTable
        }
        other => return Err(Failure::Input(format!("unknown gallery tag {other:?}"))),
    })
}

fn run(cli: &Cli) -> Outcome {
    let ctx = Ctx { cli };
    match &cli.verb {
        Verb::Ring => {
            let ring = spec_io::parse_ring(&ctx.input()?)?;
            let a = &ring.algebra;
            let (summands, _) = a.decompose_maximal_ideal();
            let dagger = dgalab::gallery::dagger_degrees(a)?;
            Ok((
                json!({
                    "field": a.field().tag(),
                    "dim": a.dim(),
                    "embedding_dim": a.embedding_dim(),
                    "basis": a.names(),
                    "generators": a.generators().iter().map(|&g| a.name(g)).collect::<Vec<_>>(),
                    "socle_dim": a.socle().len(),
                    "k_summands_of_m": summands,
                    "koszul_homology": dgalab::homology::koszul_homology(a)?,
                    "dagger_degrees": dagger.map(|(x, y)| vec![x, y]),
                }),
                true,
            ))
        }
        Verb::Resolve => {
            let (_, m, _) = spec_io::parse_workload(&ctx.input()?)?;
            let r = ResolutionCache::new().resolve(&m, ctx.range()?)?;
            r.verify()?;
            Ok((
                json!({"betti": r.betti(), "syzygy_dims": r.syzygy_dims()}),
                true,
            ))
        }
        Verb::Betti => {
            let (_, m, _) = spec_io::parse_workload(&ctx.input()?)?;
            let r = ResolutionCache::new().resolve(&m, ctx.range()?)?;
            Ok((json!(r.betti()), true))
        }
        Verb::Bass => {
            let (_, m, _) = spec_io::parse_workload(&ctx.input()?)?;
            Ok((
                json!(bass_numbers(&ResolutionCache::new(), &m, ctx.range()?)?),
                true,
            ))
        }
        Verb::Ext => {
            let (_, m, n) = spec_io::parse_workload(&ctx.input()?)?;
            Ok((
                json!(ext_dims(&ResolutionCache::new(), &m, &n, ctx.range()?)?),
                true,
            ))
        }
        Verb::Tor => {
            let (_, m, n) = spec_io::parse_workload(&ctx.input()?)?;
            Ok((
                json!(tor_dims(&ResolutionCache::new(), &m, &n, ctx.range()?)?),
                true,
            ))
        }
        Verb::Dagger => {
            let s = ctx.skew_or_ring()?;
            let out = match check_dagger(&s)? {
                Some(w) => {
                    let view = w.view(&s);
                    let split = split_witness(&s, &w)?;
                    DaggerOut {
                        dagger: true,
                        u: Some(view.u),
                        v: Some(view.v),
                        a: Some(view.degrees.0),
                        b: Some(view.degrees.1),
                        split_verified: Some(split.verified),
                    }
                }
                None => DaggerOut {
                    dagger: false,
                    u: None,
                    v: None,
                    a: None,
                    b: None,
                    split_verified: None,
                },
            };
            let ok = out.split_verified != Some(false);
            Ok((to_json(&out), ok))
        }
        Verb::Classify => {
            let s = ctx.skew_or_ring()?;
            let class = classify(&s);
            Ok((
                json!({"class": class.kind, "m": class.m, "c": class.c, "invariants": invariants(&s)}),
                true,
            ))
        }
        Verb::Golod => {
            let ring = spec_io::parse_ring(&ctx.input()?)?;
            let range = ctx.range()?;
            let series = golod_series(&ring.algebra, range)?;
            let k = dgalab::FModule::residue_field(ring.algebra.clone());
            let betti = ResolutionCache::new().resolve(&k, range)?.betti().to_vec();
            let agrees = series
                .iter()
                .zip(&betti)
                .all(|(s, &b)| s.to_string() == b.to_string());
            Ok((
                json!({"golod_series": series.iter().map(big_to_json).collect::<Vec<_>>(), "betti_k": betti, "golod": agrees}),
                true,
            ))
        }
        Verb::Mf => {
            let mf = spec_io::parse_mf(&ctx.input()?)?;
            let r = mf.validate(ctx.range()?)?;
            Ok((to_json(&r), r.valid))
        }
        Verb::Rigidity { n } => {
            let range = ctx.capped(cli.range.unwrap_or(MAX_SCAN_RANGE), MAX_SCAN_RANGE, "range")?;
            let t = rigidity_scan(Field::Rational, *n, range)?;
            Ok((to_json(&t), t.all_consistent))
        }
        Verb::Witness { n, summands } => {
            let w = residue_witness(Field::Rational, *n, summands)?;
            Ok((to_json(&w), w.verified))
        }
        Verb::Growth { of } => {
            let (_, m, _) = spec_io::parse_workload(&ctx.input()?)?;
            let range = ctx.range()?;
            let cache = ResolutionCache::new();
            let seq = match of {
                Sequence::Bass => bass_numbers(&cache, &m, range)?,
                Sequence::Betti => cache.resolve(&m, range)?.betti().to_vec(),
            };
            let seq: Vec<u64> = seq.into_iter().map(|x| x as u64).collect();
            Ok((
                json!({"sequence": seq, "growth": growth_report(&seq)}),
                true,
            ))
        }
        Verb::Gallery { action } => match action {
            GalleryAction::List => {
                let rows: Vec<Value> = standard_gallery()
                    .iter()
                    .map(|d| json!({"label": d.label(), "tag": d.tag(), "descriptor": d}))
                    .collect();
                Ok((Value::Array(rows), true))
            }
            GalleryAction::Emit { tag, params } => {
                let d = descriptor(tag, params)?;
                let g = generate(Field::Rational, &d)?;
                Ok((
                    match &g.instance {
                        Instance::Ring { algebra, .. } => spec_io::ring_spec(algebra),
                        Instance::Skew(s) => spec_io::skew_spec(s),
                    },
                    true,
                ))
            }
        },
        Verb::Accept { ids } => {
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > accept::CRITERIA) {
                return Err(Failure::Input(format!(
                    "unknown criterion {bad} (expected 1..={})",
                    accept::CRITERIA
                )));
            }
            let r = accept::run(ids);
            Ok((to_json(&r), r.all_passed))
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(",")
        }
        Value::Number(_) | Value::Bool(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// Arrays of objects become a table with a header row; arrays of scalars
/// become `i\tvalue` rows; objects become `key\tvalue` rows, with their
/// array-of-object members appended as labelled tables.
fn tsv(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let keys: Vec<&String> = items[0].as_object().expect("object").keys().collect();
            out.push_str(
                &keys
                    .iter()
                    .map(|k| k.as_str())
                    .collect::<Vec<_>>()
                    .join("\t"),
            );
            out.push('\n');
            for item in items {
                let row: Vec<String> = keys.iter().map(|k| cell(&item[k.as_str()])).collect();
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        Value::Array(items) => {
            out.push_str("i\tvalue\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&format!("{i}\t{}\n", cell(x)));
            }
        }
        Value::Object(map) => {
            let mut tables = Vec::new();
            for (k, x) in map {
                match x {
                    Value::Array(items)
                        if !items.is_empty() && items.iter().all(Value::is_object) =>
                    {
                        tables.push((k, x))
                    }
                    _ => out.push_str(&format!("{k}\t{}\n", cell(x))),
                }
            }
            for (k, x) in tables {
                out.push_str(&format!("\n# {k}\n{}", tsv(x)));
            }
        }
        other => {
            out.push_str(&cell(other));
            out.push('\n');
        }
    }
    out
}

fn accept_table(v: &Value, color: bool) -> String {
    let mut out = String::new();
    for c in v["criteria"].as_array().into_iter().flatten() {
        let passed = c["passed"] == json!(true);
        let status = match (passed, color) {
            (true, true) => "\x1b[32mPASS\x1b[0m",
            (false, true) => "\x1b[31mFAIL\x1b[0m",
            (true, false) => "PASS",
            (false, false) => "FAIL",
        };
        out.push_str(&format!(
            "criterion {:>2}\t{status}\t{}\t{}\t{}\n",
            c["id"].as_u64().unwrap_or(0),
            cell(&c["tolerance"]),
            cell(&c["title"]),
            cell(&c["summary"])
        ));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let color =
        std::env::var("DGALAB_COLOR").map_or(true, |v| v != "0") && std::io::stdout().is_terminal();
    match run(&cli) {
        Ok((value, ok)) => {
            let text = match (cli.format, &cli.verb) {
                (Format::Json, _) => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&value).expect("plain data")
                ),
                (Format::Tsv, Verb::Accept { .. }) => accept_table(&value, color),
                (Format::Tsv, _) => tsv(&value),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                if matches!(cli.format, Format::Json) && matches!(cli.verb, Verb::Accept { .. }) {
                    eprint!("{}", accept_table(&value, false));
                }
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
