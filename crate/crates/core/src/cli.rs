//! Command-line front end. `main` only forwards to [`run`], so everything
//! here is testable in-process.
//!
//! Exit codes: 0 success, 1 not injective / undetermined / refused, 2 input
//! errors (parse, unknown basis or preset, bad arguments).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::check::{
    commutator_defect, conformal_validate, defect_sweep, formula_verdict, jacobi_component_defect,
    skew_defect, Defect, Verdict,
};
use crate::error::{Error, Result};
use crate::formula::{validate_spec, BasisId, Element, FormulaSpec};
use crate::io::{export_formula, load_formula};
use crate::lie::{bracket_generators, show_lie, LieElement, LieGenerator};
use crate::presets::{preset_by_name, PRESET_NAMES};
use crate::scalar::{format_scalar, parse_scalar, scalar_to_wire};
use crate::verma::{show_pbw, vacuum, PbwVector, VermaModule};

const DEFAULT_WITNESSES: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "vertexlie", version, about = "Vertex Lie superalgebras from finite OPE formulas")]
pub struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    pub json: bool,
    /// Sweep bound for defect computations (default: derived from the formula)
    #[arg(long, global = true, value_name = "N")]
    pub window: Option<u32>,
    /// Weight cutoff for V(U) computations
    #[arg(long, global = true, value_name = "W", default_value = "6")]
    pub cutoff: String,
    /// Specialize the central charge c_{-1} to this level
    #[arg(long, global = true, value_name = "Q")]
    pub level: Option<String>,
    /// Print every defect witness instead of the first ten
    #[arg(long, global = true)]
    pub all: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Use a built-in preset instead of a formula file
    #[arg(long, value_name = "NAME")]
    pub preset: Option<String>,
    /// Preset parameter, e.g. `dim=3`, `l1=2`, `t=1/2`
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a formula, sweep defects and report the injectivity verdict
    Check {
        #[command(flatten)]
        input: Input,
        path: Option<PathBuf>,
    },
    /// Bracket [u_n, v_p] in the local Lie algebra L(U)
    Bracket {
        #[command(flatten)]
        input: Input,
        /// `[PATH] U N V P`
        #[arg(allow_negative_numbers = true, num_args = 4..=5, required = true)]
        args: Vec<String>,
    },
    /// Generalized Verma module V(U): graded dimensions, actions, fields
    Verma {
        #[command(flatten)]
        input: Input,
        path: Option<PathBuf>,
        /// Graded dimensions up to the cutoff
        #[arg(long)]
        dims: bool,
        /// Apply a word of generators, e.g. "ω_3 ω_-1", to the vacuum
        #[arg(long, value_name = "WORD", allow_hyphen_values = true)]
        act: Option<String>,
        /// Field coefficient a_n b, states written as words applied to 1
        #[arg(long, num_args = 3, value_names = ["A", "N", "B"], allow_hyphen_values = true)]
        field: Option<Vec<String>>,
    },
    /// Defect sweep, or a single defect when an index is given
    Defect {
        #[command(flatten)]
        input: Input,
        /// `[PATH] [INDEX...]`: 3 index entries for skew (u n v), 5 for
        /// commutator (u m v n w), 6 for jacobi (u k v m w n)
        #[arg(allow_negative_numbers = true)]
        args: Vec<String>,
    },
    /// Print the canonical formula file for a preset
    ExportPreset {
        name: String,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

/// Runs the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, out };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownBasis(_) | Error::UnknownPreset(_) | Error::InvalidSpec(_) => 2,
        Error::InvalidAlgebra(_) | Error::FormNotSymmetric => 2,
        _ => 1,
    }
}

fn dispatch(ctx: &mut Ctx) -> Result<i32> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Check { input, path } => cmd_check(ctx, &load_input(input, path.as_ref())?),
        Command::Bracket { input, args } => {
            let (spec, rest) = input_with_args(input, args, 4)?;
            cmd_bracket(ctx, &spec, &rest[0], &rest[1], &rest[2], &rest[3])
        }
        Command::Verma { input, path, dims, act, field } => {
            let spec = load_input(input, path.as_ref())?;
            cmd_verma(ctx, &spec, *dims, act.as_deref(), field.as_deref())
        }
        Command::Defect { input, args } => {
            let (spec, rest) = match (&input.preset, args.split_first()) {
                (Some(_), _) => (load_input(input, None)?, args.clone()),
                (None, Some((path, rest))) => (load_input(input, Some(&PathBuf::from(path)))?, rest.to_vec()),
                (None, None) => return Err(Error::Parse("defect needs --preset NAME or a formula file".into())),
            };
            cmd_defect(ctx, &spec, &rest)
        }
        Command::ExportPreset { name, params } => {
            let spec = preset_by_name(name, &parse_params(params)?)?;
            let text = export_formula(&spec);
            if cli.json {
                emit_json(ctx, Some(&spec), None, None, None, json!(text))?;
            } else {
                write!(ctx.out, "{text}").map_err(io_err)?;
            }
            Ok(0)
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(format!("output: {e}"))
}

fn parse_params(params: &[String]) -> Result<BTreeMap<String, String>> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("parameter {p:?} is not KEY=VALUE")))
        })
        .collect()
}

fn load_input(input: &Input, path: Option<&PathBuf>) -> Result<FormulaSpec> {
    match (&input.preset, path) {
        (Some(_), Some(_)) => Err(Error::Parse("give either --preset or a formula file, not both".into())),
        (Some(name), None) => preset_by_name(name, &parse_params(&input.params)?).map_err(|e| match e {
            Error::UnknownPreset(n) => Error::UnknownPreset(format!("{n} (known: {})", PRESET_NAMES.join(", "))),
            other => other,
        }),
        (None, Some(p)) => load_formula(p),
        (None, None) => Err(Error::Parse("no input: give a formula file or --preset NAME".into())),
    }
}

fn input_with_args(input: &Input, args: &[String], want: usize) -> Result<(FormulaSpec, Vec<String>)> {
    if input.preset.is_some() {
        if args.len() != want {
            return Err(Error::Parse(format!("expected {want} arguments after --preset, got {}", args.len())));
        }
        return Ok((load_input(input, None)?, args.to_vec()));
    }
    if args.len() != want + 1 {
        return Err(Error::Parse(format!("expected a formula file and {want} arguments")));
    }
    Ok((load_input(input, Some(&PathBuf::from(&args[0])))?, args[1..].to_vec()))
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().replace('−', "-").parse().map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}

fn parse_generator(spec: &FormulaSpec, tok: &str) -> Result<LieGenerator> {
    let (label, n) = tok
        .rsplit_once('_')
        .ok_or_else(|| Error::Parse(format!("generator {tok:?} is not of the form label_n")))?;
    Ok(LieGenerator::new(spec.find(label)?, parse_int(n)?))
}

/// A whitespace-separated word `x_1 ⋯ x_k`, optionally ending in `1`.
fn parse_word(spec: &FormulaSpec, text: &str) -> Result<Vec<LieGenerator>> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let toks = match toks.split_last() {
        Some((&"1", init)) => init,
        _ => &toks[..],
    };
    toks.iter().map(|t| parse_generator(spec, t)).collect()
}

fn spec_json(spec: &FormulaSpec) -> Value {
    json!({
        "name": spec.name,
        "dim": spec.dim(),
        "n_max": spec.n_max(),
        "basis": spec.basis.iter().map(|b| json!({
            "name": b.label,
            "parity": if b.parity.is_odd() { "odd" } else { "even" },
            "weight": b.weight.as_ref().map(scalar_to_wire),
        })).collect::<Vec<_>>(),
        "central": spec.central.map(|c| spec.label(c).to_string()),
    })
}

fn element_json(spec: &FormulaSpec, e: &Element) -> Value {
    json!({
        "text": spec.show(e).to_string(),
        "terms": e.terms().map(|(k, b, c)| json!({"k": k, "basis": spec.label(b), "coeff": scalar_to_wire(c)})).collect::<Vec<_>>(),
    })
}

fn defect_json(spec: &FormulaSpec, d: &Defect) -> Value {
    let index: Vec<Value> = match d.index {
        crate::check::DefectIndex::Skew { u, n, v } => vec![json!(spec.label(u)), json!(n), json!(spec.label(v))],
        crate::check::DefectIndex::Commutator { u, m, v, n, w } => {
            vec![json!(spec.label(u)), json!(m), json!(spec.label(v)), json!(n), json!(spec.label(w))]
        }
        crate::check::DefectIndex::Jacobi { u, k, v, m, w, n } => vec![
            json!(spec.label(u)),
            json!(k),
            json!(spec.label(v)),
            json!(m),
            json!(spec.label(w)),
            json!(n),
        ],
    };
    json!({"kind": d.kind.as_str(), "index": index, "value": element_json(spec, &d.value)})
}

fn verdict_json(spec: &FormulaSpec, v: &Verdict) -> Value {
    json!({
        "status": v.status.as_str(),
        "injective": v.status.is_injective(),
        "central": v.central.map(|c| spec.label(c).to_string()),
        "witness_count": v.witnesses.len(),
        "notes": v.notes,
    })
}

fn lie_json(spec: &FormulaSpec, x: &LieElement) -> Value {
    json!({
        "text": show_lie(spec, x).to_string(),
        "terms": x.terms().map(|(g, c)| json!({"basis": spec.label(g.b), "n": g.n, "coeff": scalar_to_wire(c)})).collect::<Vec<_>>(),
    })
}

fn pbw_json(spec: &FormulaSpec, v: &PbwVector) -> Value {
    json!({
        "text": show_pbw(spec, v).to_string(),
        "level": v.level.as_ref().map(scalar_to_wire),
        "terms": v.terms().map(|(m, c)| json!({
            "factors": m.factors.iter().map(|g| json!([spec.label(g.b), g.n])).collect::<Vec<_>>(),
            "coeff": scalar_to_wire(c),
        })).collect::<Vec<_>>(),
    })
}

fn emit_json(
    ctx: &mut Ctx,
    spec: Option<&FormulaSpec>,
    verdict: Option<Value>,
    defects: Option<Value>,
    dims: Option<Value>,
    result: Value,
) -> Result<()> {
    let doc = json!({
        "spec": spec.map(spec_json),
        "verdict": verdict,
        "defects": defects,
        "dims": dims,
        "result": result,
    });
    writeln!(ctx.out, "{}", serde_json::to_string_pretty(&doc).expect("json values serialize")).map_err(io_err)
}

fn limit(ctx: &Ctx, n: usize) -> usize {
    if ctx.cli.all {
        n
    } else {
        n.min(DEFAULT_WITNESSES)
    }
}

fn cmd_check(ctx: &mut Ctx, spec: &FormulaSpec) -> Result<i32> {
    let violations = validate_spec(spec);
    let total = defect_sweep(spec, ctx.cli.window)?.len();
    let verdict = formula_verdict(spec, ctx.cli.window)?;
    let conformal = match spec.conformal {
        Some((w, c)) => Some(conformal_validate(spec, w, c)?),
        None => None,
    };
    let code = if verdict.status.is_injective() && violations.is_empty() { 0 } else { 1 };
    let shown = limit(ctx, verdict.witnesses.len());

    if ctx.cli.json {
        let result = json!({
            "violations": violations.iter().map(|v| v.message.clone()).collect::<Vec<_>>(),
            "defect_total": total,
            "conformal": conformal.as_ref().map(|r| r.clauses.iter().map(|c| json!({
                "name": c.name, "passed": c.passed, "detail": c.detail,
            })).collect::<Vec<_>>()),
            "exit_code": code,
        });
        let witnesses: Vec<Value> = verdict.witnesses[..shown].iter().map(|d| defect_json(spec, d)).collect();
        emit_json(ctx, Some(spec), Some(verdict_json(spec, &verdict)), Some(json!(witnesses)), None, result)?;
        return Ok(code);
    }

    let out = &mut ctx.out;
    writeln!(out, "formula {} (dim {}, n_max {})", spec.name, spec.dim(), spec.n_max()).map_err(io_err)?;
    if violations.is_empty() {
        writeln!(out, "validation: ok").map_err(io_err)?;
    } else {
        for v in &violations {
            writeln!(out, "validation: {}", v.message).map_err(io_err)?;
        }
    }
    writeln!(out, "defects: {total} nonzero").map_err(io_err)?;
    writeln!(out, "verdict: {}", verdict.status).map_err(io_err)?;
    for n in &verdict.notes {
        writeln!(out, "  {n}").map_err(io_err)?;
    }
    if !verdict.status.is_injective() || ctx.cli.all {
        for d in &verdict.witnesses[..shown] {
            writeln!(out, "  witness {}", d.describe(spec)).map_err(io_err)?;
        }
        if shown < verdict.witnesses.len() {
            writeln!(out, "  ... {} more (use --all)", verdict.witnesses.len() - shown).map_err(io_err)?;
        }
    }
    if let Some(r) = conformal {
        for c in &r.clauses {
            let mark = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(out, "conformal {}: {mark}", c.name).map_err(io_err)?;
            } else {
                writeln!(out, "conformal {}: {mark} ({})", c.name, c.detail).map_err(io_err)?;
            }
        }
    }
    Ok(code)
}

fn cmd_bracket(ctx: &mut Ctx, spec: &FormulaSpec, u: &str, n: &str, v: &str, p: &str) -> Result<i32> {
    let x = LieGenerator::new(spec.find(u)?, parse_int(n)?);
    let y = LieGenerator::new(spec.find(v)?, parse_int(p)?);
    let b = bracket_generators(spec, x, y);
    if ctx.cli.json {
        emit_json(ctx, Some(spec), None, None, None, lie_json(spec, &b))?;
    } else {
        writeln!(ctx.out, "{}", show_lie(spec, &b)).map_err(io_err)?;
    }
    Ok(0)
}

fn require_injective(spec: &FormulaSpec) -> Result<Verdict> {
    let v = formula_verdict(spec, None)?;
    if !v.status.is_injective() {
        return Err(Error::NotInjective(v.status.as_str().into()));
    }
    Ok(v)
}

fn cmd_verma(ctx: &mut Ctx, spec: &FormulaSpec, dims: bool, act: Option<&str>, field: Option<&[String]>) -> Result<i32> {
    let verdict = require_injective(spec)?;
    let cutoff = parse_scalar(&ctx.cli.cutoff)?;
    let level = ctx.cli.level.as_deref().map(parse_scalar).transpose()?;
    let vm = VermaModule::new(spec);
    let finish = |vm: &VermaModule, v: PbwVector| -> Result<PbwVector> {
        match &level {
            Some(l) => vm.specialize_level(&v, l),
            None => Ok(v),
        }
    };

    if dims || (act.is_none() && field.is_none()) {
        let table = vm.graded_dimension(&cutoff)?;
        if ctx.cli.json {
            let arr: Vec<Value> = table.iter().map(|(w, d)| json!({"weight": scalar_to_wire(w), "dim": d})).collect();
            emit_json(ctx, Some(spec), Some(verdict_json(spec, &verdict)), None, Some(json!(arr)), Value::Null)?;
        } else {
            let seq: Vec<String> = table.values().map(u128::to_string).collect();
            writeln!(ctx.out, "{}", seq.join(",")).map_err(io_err)?;
            for (w, d) in &table {
                writeln!(ctx.out, "  weight {:>5}: {d}", format_scalar(w)).map_err(io_err)?;
            }
        }
        return Ok(0);
    }

    let state = |text: &str| -> Result<PbwVector> { Ok(vm.act_word(&parse_word(spec, text)?, &vacuum())) };
    let result = match (act, field) {
        (Some(word), _) => finish(&vm, state(word)?)?,
        (None, Some(f)) => {
            let a = state(&f[0])?;
            let b = state(&f[2])?;
            finish(&vm, vm.field_coefficient(&a, parse_int(&f[1])?, &b, &cutoff)?)?
        }
        (None, None) => unreachable!("handled above"),
    };
    if ctx.cli.json {
        emit_json(ctx, Some(spec), Some(verdict_json(spec, &verdict)), None, None, pbw_json(spec, &result))?;
    } else {
        writeln!(ctx.out, "{}", show_pbw(spec, &result)).map_err(io_err)?;
    }
    Ok(0)
}

fn cmd_defect(ctx: &mut Ctx, spec: &FormulaSpec, index: &[String]) -> Result<i32> {
    let b = |s: &str| -> Result<BasisId> { spec.find(s) };
    let n = |s: &str| -> Result<u32> {
        s.trim().parse().map_err(|_| Error::Parse(format!("expected a nonnegative integer, got {s:?}")))
    };
    let single = match index.len() {
        0 => None,
        3 => Some(("skew", skew_defect(spec, b(&index[0])?, n(&index[1])?, b(&index[2])?))),
        5 => Some((
            "commutator",
            commutator_defect(spec, b(&index[0])?, n(&index[1])?, b(&index[2])?, n(&index[3])?, b(&index[4])?),
        )),
        6 => Some((
            "jacobi_component",
            jacobi_component_defect(
                spec,
                b(&index[0])?,
                n(&index[1])?,
                b(&index[2])?,
                n(&index[3])?,
                b(&index[4])?,
                n(&index[5])?,
            ),
        )),
        k => return Err(Error::Parse(format!("a defect index has 3, 5 or 6 entries, got {k}"))),
    };
    if let Some((kind, value)) = single {
        if ctx.cli.json {
            let r = json!({"kind": kind, "index": index, "value": element_json(spec, &value)});
            emit_json(ctx, Some(spec), None, None, None, r)?;
        } else {
            writeln!(ctx.out, "{}", spec.show(&value)).map_err(io_err)?;
        }
        return Ok(0);
    }
    let defects = defect_sweep(spec, ctx.cli.window)?;
    let shown = limit(ctx, defects.len());
    if ctx.cli.json {
        let arr: Vec<Value> = defects[..shown].iter().map(|d| defect_json(spec, d)).collect();
        emit_json(ctx, Some(spec), None, Some(json!(arr)), None, json!({"total": defects.len()}))?;
    } else {
        writeln!(ctx.out, "{} nonzero defects", defects.len()).map_err(io_err)?;
        for d in &defects[..shown] {
            writeln!(ctx.out, "  {}", d.describe(spec)).map_err(io_err)?;
        }
        if shown < defects.len() {
            writeln!(ctx.out, "  ... {} more (use --all)", defects.len() - shown).map_err(io_err)?;
        }
    }
    Ok(0)
}
