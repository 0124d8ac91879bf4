//! `taulike`: linearize, embed and decode τ-like posets from the command line.
//!
//! Results go to stdout (or `--out`) as JSON carrying a `"schema"` field.
//! Exit codes: 0 on success, 1 on a domain error (with
//! `{"error":{"code":..,"detail":..}}` on stdout), 2 on a usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use taulike_core::embed::embed_poset;
use taulike_core::gadgets::{
    decode_false_stages, decode_range, fuf_decode, make_embed_gadget, make_fuf_gadget, make_range_gadget,
    make_stage_order, EmbedGadget, FufGadget, InjectiveFn, RangeGadget,
};
use taulike_core::harness::{
    all_linear_extensions_with, check_tau_like_finite, check_tau_like_stream, random_poset, EXHAUSTIVE_LIMIT,
};
use taulike_core::linearize::{
    omega_linearize_budget, omega_star_linearize_budget, split_linearize, szpilrajn_extend, zeta_linearize_budget,
    Budget, Linearization,
};
use taulike_core::order::{PosetFile, SCHEMA};
use taulike_core::stream::{
    prefix, validate_oracles, AntichainStream, FiniteStream, OmegaOmegaStarStream, OmegaStarStream, OmegaStream,
    ZetaEnumeration, ZetaStream,
};
use taulike_core::{CanonicalPoint, Error, FinitePoset, Id, LinearOrder, OrderKind, StreamPoset};

const DEFAULT_BLOCKS: usize = 10;
const DEFAULT_PREFIX: usize = 100;
const RANDOM_SIZE: usize = 16;
const RANDOM_DENSITY: f64 = 0.2;

#[derive(Parser, Debug)]
#[command(
    name = "taulike",
    version,
    about = "Linear extensions and canonical embeddings of tau-like posets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a τ-like linear extension.
    Linearize {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_kind)]
        kind: OrderKind,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Linearize, then rank into the canonical order.
    Embed {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_kind)]
        kind: OrderKind,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Dump a gadget poset with its markers and ground truth under "meta".
    Gadget {
        which: GadgetName,
        #[arg(long, value_name = "SIZES")]
        sets: Option<String>,
        #[arg(long = "f", value_name = "SPEC")]
        f: Option<String>,
        /// FUF variant.
        #[arg(long, value_parser = parse_kind, default_value = "omega")]
        kind: OrderKind,
        /// Prefix length for the range, embed and stage gadgets.
        #[arg(long)]
        elements: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Read the coded information back off a linear extension.
    Decode {
        which: DecoderName,
        #[command(flatten)]
        source: Source,
        /// Stages (false-stages) or values (range) to classify.
        #[arg(long)]
        horizon: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Load and check a poset, optionally against a τ-likeness kind.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_kind)]
        kind: Option<OrderKind>,
        /// Prefix length for stream families.
        #[arg(long)]
        elements: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Cross-check a stream's oracles against its comparison.
    Oracle {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        elements: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args, Debug)]
struct Source {
    /// Poset JSON file.
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    input: Option<PathBuf>,
    /// omega, omega-star, zeta, zeta-positive-first, zeta-two-to-one,
    /// antichain, omega-omega-star, range, embed, fuf, random.
    #[arg(long, value_name = "NAME")]
    family: Option<String>,
    #[arg(long = "f", value_name = "SPEC")]
    f: Option<String>,
    #[arg(long, value_name = "SIZES")]
    sets: Option<String>,
    /// Seed for the random family.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, conflicts_with = "elements")]
    blocks: Option<usize>,
    #[arg(long)]
    elements: Option<usize>,
}

#[derive(Args, Debug)]
struct Out {
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GadgetName {
    Fuf,
    Range,
    Embed,
    Stage,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoderName {
    Fuf,
    FalseStages,
    Range,
}

fn parse_kind(s: &str) -> Result<OrderKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Domain { code: &'static str, detail: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain {
            code: e.code(),
            detail: e.to_string(),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

fn parse_sets(s: &str) -> Outcome<Vec<usize>> {
    s.split(';')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad part size {p:?} in --sets")))
        })
        .collect()
}

fn parse_f(spec: Option<&str>) -> Outcome<InjectiveFn> {
    match spec {
        Some(s) => Ok(InjectiveFn::parse(s)?),
        None => usage("this family needs --f"),
    }
}

fn read_text(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain {
        code: "IoError",
        detail: format!("{}: {e}", path.display()),
    })
}

fn read_poset_file(path: &Path) -> Outcome<PosetFile> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()).into())
}

/// A resolved input: the stream plus whatever is known about it.
struct Input {
    stream: Box<dyn StreamPoset>,
    /// Set for file inputs; the family streams are infinite.
    finite: Option<FinitePoset>,
    meta: Option<Value>,
}

fn resolve(source: &Source, fuf_variant: OrderKind) -> Outcome<Input> {
    if let Some(path) = &source.input {
        let file = read_poset_file(path)?;
        let poset = file.to_poset()?;
        return Ok(Input {
            stream: Box::new(FiniteStream::new(poset.clone())),
            finite: Some(poset),
            meta: file.meta,
        });
    }
    let Some(name) = source.family.as_deref() else {
        return usage("one of --input or --family is required");
    };
    let stream: Box<dyn StreamPoset> = match name {
        "omega" => Box::new(OmegaStream),
        "omega-star" => Box::new(OmegaStarStream),
        "zeta" => Box::new(ZetaStream {
            enumeration: ZetaEnumeration::Alternating,
        }),
        "zeta-positive-first" => Box::new(ZetaStream {
            enumeration: ZetaEnumeration::PositiveFirst,
        }),
        "zeta-two-to-one" => Box::new(ZetaStream {
            enumeration: ZetaEnumeration::TwoToOne,
        }),
        "antichain" => Box::new(AntichainStream),
        "omega-omega-star" => Box::new(OmegaOmegaStarStream),
        "range" => {
            let f = parse_f(source.f.as_deref())?;
            let meta = json!({ "gadget": "range", "f": f.spec() });
            return Ok(Input {
                stream: Box::new(make_range_gadget(f)),
                finite: None,
                meta: Some(meta),
            });
        }
        "embed" => {
            let f = parse_f(source.f.as_deref())?;
            let meta = json!({ "gadget": "embed", "f": f.spec() });
            return Ok(Input {
                stream: Box::new(make_embed_gadget(f)),
                finite: None,
                meta: Some(meta),
            });
        }
        "fuf" => {
            let Some(sets) = source.sets.as_deref() else {
                return usage("the fuf family needs --sets");
            };
            let g = make_fuf_gadget(&parse_sets(sets)?, fuf_variant)?;
            let meta = fuf_meta(&g, &parse_sets(sets)?);
            return Ok(Input {
                stream: Box::new(FiniteStream::new(g.base.clone())),
                finite: Some(g.base),
                meta: Some(meta),
            });
        }
        "random" => {
            let p = random_poset(RANDOM_SIZE, RANDOM_DENSITY, source.seed)?;
            return Ok(Input {
                stream: Box::new(FiniteStream::new(p.clone())),
                finite: Some(p),
                meta: None,
            });
        }
        other => return usage(format!("unknown family {other:?}")),
    };
    Ok(Input {
        stream,
        finite: None,
        meta: None,
    })
}

fn budget(args: &BudgetArgs, finite: bool) -> Budget {
    match (args.blocks, args.elements) {
        (_, Some(n)) => Budget::Elements(n),
        (Some(n), None) => Budget::Blocks(n),
        (None, None) if finite => Budget::Blocks(usize::MAX),
        (None, None) => Budget::Blocks(DEFAULT_BLOCKS),
    }
}

fn budget_count(b: Budget) -> usize {
    match b {
        Budget::Blocks(n) | Budget::Elements(n) => n,
    }
}

fn fuf_variant(kind: OrderKind) -> OrderKind {
    if kind == OrderKind::OmegaPlusOmegaStar {
        OrderKind::Omega
    } else {
        kind
    }
}

fn order_json(order: &LinearOrder) -> Value {
    json!({ "order": order.items(), "growth": order.growth(), "anchor": order.anchor() })
}

fn linearization_json(run: &Linearization) -> Value {
    let mut v = order_json(&run.order);
    v["blocks"] = serde_json::to_value(run.blocks.blocks()).expect("blocks serialize");
    v
}

fn with_header(command: &str, mut body: Value, meta: Option<Value>) -> Value {
    let mut out = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, &mut body) {
        o.append(b);
    }
    if let Some(m) = meta {
        out["meta"] = m;
    }
    out
}

fn linearize(source: &Source, kind: OrderKind, b: &BudgetArgs) -> Outcome<Value> {
    let input = resolve(source, fuf_variant(kind))?;
    let budget = budget(b, input.finite.is_some());
    let body = match kind {
        OrderKind::Omega => linearization_json(&omega_linearize_budget(&input.stream, budget)?),
        OrderKind::OmegaStar => linearization_json(&omega_star_linearize_budget(&input.stream, budget)?),
        OrderKind::Zeta => linearization_json(&zeta_linearize_budget(&input.stream, budget)?),
        OrderKind::OmegaPlusOmegaStar => {
            let n = match (&input.finite, b.blocks, b.elements) {
                (Some(p), None, None) => p.len(),
                _ => budget_count(budget),
            };
            let split = split_linearize(&input.stream, n)?;
            let mut v = order_json(&split.order);
            let sides: Vec<_> = split.order.items().iter().map(|x| split.sides[x]).collect();
            v["sides"] = serde_json::to_value(sides).expect("sides serialize");
            v["blocks"] = json!({
                "lower": split.lower.blocks.blocks(),
                "upper": split.upper.blocks.blocks(),
            });
            v
        }
    };
    let mut body = body;
    body["kind"] = json!(kind.name());
    Ok(with_header("linearize", body, input.meta))
}

fn embed(source: &Source, kind: OrderKind, b: &BudgetArgs) -> Outcome<Value> {
    let input = resolve(source, fuf_variant(kind))?;
    let mut budget = budget(b, input.finite.is_some());
    if let (OrderKind::OmegaPlusOmegaStar, Some(p), None, None) = (kind, &input.finite, b.blocks, b.elements) {
        budget = Budget::Elements(p.len());
    }
    let h = embed_poset(&input.stream, kind, budget)?;
    Ok(with_header("embed", h.to_json(), input.meta))
}

fn fuf_meta(g: &FufGadget, sizes: &[usize]) -> Value {
    json!({
        "gadget": "fuf",
        "variant": g.variant.name(),
        "sizes": sizes,
        "parts": g.parts,
        "top": g.top,
        "bottom": g.bottom,
        "union_size": g.union_size(),
    })
}

fn dump(poset: &FinitePoset, meta: Value) -> Value {
    let mut file = poset.to_file();
    file.meta = Some(meta);
    serde_json::to_value(file).expect("poset file serializes")
}

fn gadget(
    which: GadgetName,
    sets: Option<&str>,
    f: Option<&str>,
    kind: OrderKind,
    elements: Option<usize>,
) -> Outcome<Value> {
    match which {
        GadgetName::Fuf => {
            let Some(sets) = sets else {
                return usage("gadget fuf needs --sets");
            };
            let sizes = parse_sets(sets)?;
            let g = make_fuf_gadget(&sizes, kind)?;
            Ok(dump(&g.base, fuf_meta(&g, &sizes)))
        }
        GadgetName::Range => {
            let f = parse_f(f)?;
            let n = elements.unwrap_or(40);
            let p = prefix(&make_range_gadget(f.clone()), n)?;
            // a_k is among the first n ids for k < ceil(n/2)
            let truth = f.false_stages_below(n.div_ceil(2));
            Ok(dump(
                &p,
                json!({ "gadget": "range", "f": f.spec(), "false_stages": truth }),
            ))
        }
        GadgetName::Embed => {
            let f = parse_f(f)?;
            let n = elements.unwrap_or(40);
            let p = prefix(&make_embed_gadget(f.clone()), n)?;
            let range: Vec<u64> = p
                .elements()
                .iter()
                .filter_map(|&x| match EmbedGadget::decode_id(x) {
                    taulike_core::gadgets::EmbedElem::A(m) if f.preimage(m).is_some() => Some(m),
                    _ => None,
                })
                .collect();
            Ok(dump(&p, json!({ "gadget": "embed", "f": f.spec(), "range": range })))
        }
        GadgetName::Stage => {
            let f = parse_f(f)?;
            let a = make_stage_order(&f.prefix(elements.unwrap_or(12)))?;
            let meta = json!({
                "gadget": "stage",
                "f": f.spec(),
                "f_prefix": a.f_prefix,
                "false_stages": a.ground_truth_false,
            });
            Ok(dump(&a.order, meta))
        }
    }
}

fn meta_field<'a>(meta: &'a Value, key: &str) -> Outcome<&'a Value> {
    meta.get(key)
        .ok_or_else(|| Error::Parse(format!("meta has no {key:?}")).into())
}

/// An order file is a `linearize` result (has "order") or a poset dump, in
/// which case its deterministic extension is used.
fn read_order_or_dump(path: &Path) -> Outcome<(LinearOrder, Option<FinitePoset>, Value)> {
    let text = read_text(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let meta = v.get("meta").cloned().unwrap_or(Value::Null);
    if let Some(order) = v.get("order") {
        let items: Vec<Id> = serde_json::from_value(order.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok((LinearOrder::new(items)?, None, meta));
    }
    let file: PosetFile = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    let poset = file.to_poset()?;
    Ok((szpilrajn_extend(&poset), Some(poset), meta))
}

fn decode(which: DecoderName, source: &Source, horizon: Option<usize>) -> Outcome<Value> {
    match which {
        DecoderName::Fuf => {
            let Some(path) = &source.input else {
                return usage("decode fuf needs --input (a fuf gadget dump or its linearization)");
            };
            let (order, poset, meta) = read_order_or_dump(path)?;
            let sizes: Vec<usize> =
                serde_json::from_value(meta_field(&meta, "sizes")?.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            let variant = parse_kind(meta_field(&meta, "variant")?.as_str().unwrap_or(""))
                .map_err(|e| Failure::from(Error::Parse(e)))?;
            let g = make_fuf_gadget(&sizes, variant)?;
            if poset.is_some_and(|p| p != g.base) {
                return Err(Error::Parse("poset does not match the gadget described by its meta".into()).into());
            }
            let bound = fuf_decode(&order, &g)?;
            let body = json!({
                "decoder": "fuf",
                "variant": variant.name(),
                "bound": bound,
                "union_size": g.union_size(),
                "order": order.items(),
            });
            Ok(with_header("decode", body, None))
        }
        DecoderName::FalseStages => {
            let (order, f) = if let Some(path) = &source.input {
                let (order, _, meta) = read_order_or_dump(path)?;
                let f = meta
                    .get("f")
                    .and_then(Value::as_str)
                    .map(InjectiveFn::parse)
                    .transpose()?;
                (order, f)
            } else {
                if source.family.as_deref() != Some("range") {
                    return usage("decode false-stages reads --input or --family range");
                }
                let f = parse_f(source.f.as_deref())?;
                let m = horizon.unwrap_or(DEFAULT_PREFIX);
                let split = split_linearize(&make_range_gadget(f.clone()), 2 * m)?;
                (split.order, Some(f))
            };
            let available = (0..).take_while(|&m| order.contains(RangeGadget::b(m))).count();
            let s = horizon.unwrap_or(available);
            let decoded = decode_false_stages(&order, s)?;
            let mut body = json!({
                "decoder": "false-stages",
                "stages": s,
                "horizon": decoded.horizon,
                "false_stages": decoded.stages,
            });
            if let Some(f) = f {
                let truth = f.false_stages_below(s);
                body["f"] = json!(f.spec());
                body["match"] = json!(truth == decoded.stages);
                body["ground_truth"] = json!(truth);
            }
            Ok(with_header("decode", body, None))
        }
        DecoderName::Range => {
            if source.family.as_deref() != Some("embed") {
                return usage("decode range reads --family embed --f SPEC");
            }
            let f = parse_f(source.f.as_deref())?;
            let values = horizon.unwrap_or(50).max(1);
            let g = make_embed_gadget(f.clone());
            let h = embed_poset(
                &g,
                OrderKind::Omega,
                Budget::Elements(EmbedGadget::stage_of_a(values as u64 - 1) + 1),
            )?;
            let max_rank = h
                .iter()
                .map(|(_, p)| {
                    if let CanonicalPoint::Omega(k) = p {
                        k as usize
                    } else {
                        0
                    }
                })
                .max()
                .unwrap_or(0);
            let f_prefix = f.prefix(max_rank + 1);
            let mut range = Vec::new();
            for m in 0..values as u64 {
                if decode_range(&h, &f_prefix, m)? {
                    range.push(m);
                }
            }
            let truth: Vec<u64> = (0..values as u64).filter(|&m| f.preimage(m).is_some()).collect();
            let body = json!({
                "decoder": "range",
                "f": f.spec(),
                "values": values,
                "range": range,
                "ground_truth": truth,
                "match": range == truth,
            });
            Ok(with_header("decode", body, None))
        }
    }
}

fn verify(source: &Source, kind: Option<OrderKind>, elements: Option<usize>, jobs: usize) -> Outcome<Value> {
    let input = resolve(source, kind.map(fuf_variant).unwrap_or(OrderKind::Omega))?;
    let body = match &input.finite {
        Some(p) => {
            let extensions = if p.len() <= EXHAUSTIVE_LIMIT {
                Some(all_linear_extensions_with(p, EXHAUSTIVE_LIMIT, jobs.max(1))?.len())
            } else {
                None
            };
            let mut v = json!({
                "valid": true,
                "elements": p.len(),
                "pairs": p.pairs().len(),
                "covers": p.covers(),
                "linear_extensions": extensions,
            });
            if let Some(k) = kind {
                v["tau"] = serde_json::to_value(check_tau_like_finite(p, k)).expect("report serializes");
            }
            v
        }
        None => {
            let Some(k) = kind else {
                return usage("verify on a stream family needs --kind");
            };
            let report = check_tau_like_stream(&input.stream, elements.unwrap_or(DEFAULT_PREFIX), k);
            json!({ "valid": report.passed, "tau": report })
        }
    };
    Ok(with_header("verify", body, input.meta))
}

fn oracle(source: &Source, elements: Option<usize>) -> Outcome<Value> {
    let input = resolve(source, OrderKind::Omega)?;
    let report = validate_oracles(&input.stream, elements.unwrap_or(DEFAULT_PREFIX));
    let mut body = serde_json::to_value(&report).expect("report serializes");
    body["passed"] = json!(report.passed());
    Ok(with_header("oracle", body, input.meta))
}

fn run(cli: Cli) -> Outcome<(Value, Option<PathBuf>)> {
    let (value, out) = match cli.command {
        Command::Linearize {
            source,
            kind,
            budget,
            out,
        } => (linearize(&source, kind, &budget)?, out),
        Command::Embed {
            source,
            kind,
            budget,
            out,
        } => (embed(&source, kind, &budget)?, out),
        Command::Gadget {
            which,
            sets,
            f,
            kind,
            elements,
            out,
        } => (gadget(which, sets.as_deref(), f.as_deref(), kind, elements)?, out),
        Command::Decode {
            which,
            source,
            horizon,
            out,
        } => (decode(which, &source, horizon)?, out),
        Command::Verify {
            source,
            kind,
            elements,
            jobs,
            out,
        } => (verify(&source, kind, elements, jobs)?, out),
        Command::Oracle { source, elements, out } => (oracle(&source, elements)?, out),
    };
    Ok((value, out.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((value, out)) => {
            let text = serde_json::to_string_pretty(&value).expect("json renders") + "\n";
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        let detail = format!("{}: {e}", path.display());
                        println!("{}", json!({ "error": { "code": "IoError", "detail": detail } }));
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Domain { code, detail }) => {
            eprintln!("error: {detail}");
            println!("{}", json!({ "error": { "code": code, "detail": detail } }));
            ExitCode::from(1)
        }
    }
}
