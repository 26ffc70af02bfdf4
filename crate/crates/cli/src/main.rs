//! `ospq`: batch frontend for the OSP_q(1|2n) symbolic kernel.
//!
//! Exit codes: 0 = all requested checks passed, 1 = a verification
//! failed (a report is still printed), 2 = usage error.

mod cache;
mod rng;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ospq_core::context::Context;
use ospq_core::coordring::{
    dominant_weights_up_to, evaluate, haar, orthogonality_check, superdimension, PWElement,
};
use ospq_core::homogeneous::{
    borel_weil_check, corollary_check, frobenius_check, invariant_functions,
    module_structure_check, projectivity_witness, sections, theta_irreducible, trivialization,
    StructureReport,
};
use ospq_core::repcore::{
    irreducible, self_duality_m, tensor, tensor_decomp, vector_module, Module,
    Scope,
};
use ospq_core::rootdata::WeightVec;
use ospq_core::uqalg::{check_hopf_axioms, check_relations, check_s_squared, CheckReport, Word};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "ospq", version, about = "Exact symbolic kernel for the quantum supergroup OSP_q(1|2n)")]
struct Cli {
    /// Rank n of osp(1|2n)
    #[arg(long, global = true, default_value_t = 1)]
    n: usize,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled-identity checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cache directory (falls back to $OSPQ_CACHE_DIR; unset disables the cache)
    #[arg(long, global = true)]
    cache_dir: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Verify defining relations, Hopf axioms and the S^2 = Ad K_{2rho} identity
    Check,
    /// Build the irreducible module W(lambda) and print its data
    Irrep {
        /// Highest weight, comma-separated in the epsilon basis
        #[arg(long)]
        lambda: String,
    },
    /// Decompose W(lambda) (tensor W(mu) when given) into irreducibles
    Decompose {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Quantum superdimension of W(lambda)
    Superdim {
        #[arg(long)]
        lambda: String,
    },
    /// Haar-functional orthogonality of matrix coefficients
    HaarOrthogonality {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Evaluate the matrix coefficient t^{lambda}_{row,col} on a word
    Evaluate {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
        /// Word in the generators, e.g. "e1 f1 k1^-2"
        #[arg(long)]
        word: String,
    },
    /// Induced-section space of a Theta-module (reductive scope)
    Sections {
        /// Simple-root indices of Theta, comma-separated (empty for none)
        #[arg(long, default_value = "")]
        theta: String,
        /// Highest weight of the Theta-irreducible fibre module
        #[arg(long)]
        module: String,
        #[arg(long)]
        cutoff: usize,
    },
    /// Invariant functions on the quantum homogeneous space
    Invariants {
        #[arg(long, default_value = "")]
        theta: String,
        #[arg(long)]
        cutoff: usize,
    },
    /// Borel-Weil check: holomorphic sections of the line/module at mu
    BorelWeil {
        #[arg(long, default_value = "")]
        theta: String,
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
    },
    /// Frobenius reciprocity between U_q-maps into sections and fibre maps
    Frobenius {
        #[arg(long, default_value = "")]
        theta: String,
        #[arg(long)]
        w_lambda: String,
        #[arg(long)]
        v_weight: String,
        #[arg(long)]
        cutoff: usize,
    },
    /// Full verification battery at the given cutoff
    Suite {
        #[arg(long, default_value_t = 2)]
        cutoff: usize,
    },
}

fn conventions() -> Value {
    json!({
        "hopf": "Delta(e)=e(x)k+1(x)e, Delta(f)=f(x)1+k^-1(x)f, S(e)=-e k^-1, S(f)=-k f",
        "two_rho": "graded: sum_i (2(n-i)+1) eps_i",
        "schema_version": SCHEMA_VERSION,
    })
}

/// Parse a comma-separated epsilon-basis label, padding with zeros to rank n.
fn parse_weight(s: &str, n: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    if !s.trim().is_empty() {
        for tok in s.split(',') {
            out.push(
                tok.trim()
                    .parse::<i64>()
                    .map_err(|_| anyhow!("bad weight entry '{}'", tok))?,
            );
        }
    }
    if out.len() > n {
        return Err(anyhow!("weight '{}' has more than n = {} entries", s, n));
    }
    out.resize(n, 0);
    Ok(out)
}

fn parse_theta(s: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    if !s.trim().is_empty() {
        for tok in s.split(',') {
            let i = tok
                .trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("bad theta entry '{}'", tok))?;
            if i == 0 || i > n {
                return Err(anyhow!("theta index {} out of range 1..={}", i, n));
            }
            out.push(i);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn weight_key(lam: &[i64]) -> String {
    lam.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn module_json(m: &Module) -> Value {
    json!({
        "n": m.n,
        "dim": m.dim,
        "parity": m.parity,
        "weights": m.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    })
}

fn check_json(name: &str, r: &CheckReport) -> Value {
    json!({
        "name": name,
        "checked": r.checked,
        "failures": r.failures,
    })
}

fn structure_json(r: &StructureReport) -> Value {
    json!({ "checks": r.checks, "violations": r.violations })
}

fn blocks_json(blocks: &[(Vec<i64>, usize)]) -> Value {
    blocks
        .iter()
        .map(|(lam, d)| json!({ "lambda": lam, "dim": d }))
        .collect()
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) if !is_short(val) => {
                        out.push_str(&format!("{}{}:\n", pad, k));
                        render_text(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{}{}: {}\n", pad, k, compact(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_short(item) {
                    out.push_str(&format!("{}- {}\n", pad, compact(item)));
                } else {
                    out.push_str(&format!("{}-\n", pad));
                    render_text(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{}{}\n", pad, compact(other))),
    }
}

fn is_short(v: &Value) -> bool {
    serde_json::to_string(v).map(|s| s.len() <= 60).unwrap_or(false)
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).unwrap_or_default(),
    }
}

/// Sampled words for the seeded pairing identities, recorded in reports.
fn sample_words(n: usize, seed: u64, count: usize) -> Vec<Word> {
    let mut rng = rng::XorShift::new(seed);
    let mut words = Vec::with_capacity(count);
    for _ in 0..count {
        let len = 1 + rng.below(3);
        let mut w = Word::one();
        for _ in 0..len {
            let i = 1 + rng.below(n as u64) as usize;
            let g = match rng.below(4) {
                0 => ospq_core::uqalg::Gen::E(i),
                1 => ospq_core::uqalg::Gen::F(i),
                2 => ospq_core::uqalg::Gen::K(i, 1),
                _ => ospq_core::uqalg::Gen::K(i, -1),
            };
            w = w.concat(&Word::gen(g));
        }
        words.push(w);
    }
    words
}

/// Seeded check: <S0^2(f), x> = <f, K_{2rho} x K_{2rho}^{-1}> on sampled
/// words and low PW basis elements.
fn sampled_s2_pairing(ctx: &Context, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let n = ctx.n();
    let kw = ospq_core::uqalg::k2rho_word(&ctx.datum);
    let (_, kw_inv) = ospq_core::uqalg::antipode_word(&kw, n);
    let words = sample_words(n, seed, 6);
    for lam in dominant_weights_up_to(n, 1) {
        let reg = irreducible(ctx, &lam)?;
        for i in 0..reg.dim {
            for j in 0..reg.dim {
                let f = PWElement::basis(lam.clone(), i, j);
                let s2f = ospq_core::coordring::antipode0(
                    ctx,
                    &ospq_core::coordring::antipode0(ctx, &f)?,
                )?;
                for w in &words {
                    let conj = kw.concat(w).concat(&kw_inv);
                    let lhs = evaluate(ctx, &s2f, w)?;
                    let rhs = evaluate(ctx, &f, &conj)?;
                    report.checked += 1;
                    if lhs != rhs {
                        report.failures.push(format!(
                            "S0^2 pairing fails at t^{:?}_{{{},{}}} on word {}",
                            lam, i, j, w
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

fn run_check(ctx: &Context, seed: u64) -> Result<(Value, bool)> {
    let n = ctx.n();
    let vec = vector_module(n);
    let tens = tensor(&vec, &vec);
    let reports = vec![
        check_json("relations(vector)", &check_relations(&vec, &ctx.datum)),
        check_json("hopf(vector)", &check_hopf_axioms(&vec)),
        check_json("hopf(vector(x)vector)", &check_hopf_axioms(&tens)),
        check_json("s_squared(vector)", &check_s_squared(&vec, &ctx.datum)),
        check_json("s0_squared_pairing(sampled)", &sampled_s2_pairing(ctx, seed)?),
    ];
    let m_ok = self_duality_m(ctx).is_ok();
    let ok = m_ok
        && reports
            .iter()
            .all(|r| r["failures"].as_array().map(|f| f.is_empty()).unwrap_or(false));
    Ok((
        json!({ "reports": reports, "self_duality_m": if m_ok { "ok" } else { "failed" }, "ok": ok }),
        ok,
    ))
}

fn run_suite(ctx: &Context, cutoff: usize, seed: u64) -> Result<(Value, bool)> {
    let n = ctx.n();
    let mut steps: Vec<(String, bool)> = Vec::new();
    let push = |steps: &mut Vec<(String, bool)>, name: &str, ok: bool| {
        steps.push((name.to_string(), ok));
    };

    let (check_report, check_ok) = run_check(ctx, seed)?;
    push(&mut steps, "generator_and_hopf_checks", check_ok);
    let _ = &check_report;

    // superdimensions are nonzero and the Haar functional is normalized
    let mut sd_ok = true;
    for lam in dominant_weights_up_to(n, cutoff) {
        sd_ok &= superdimension(ctx, &lam).is_ok();
    }
    push(&mut steps, "superdimension_nonzero", sd_ok);
    push(
        &mut steps,
        "haar_normalized",
        haar(ctx, &PWElement::one(n)) == ospq_core::scalars::RatFunc::one(),
    );

    // orthogonality over the low blocks
    let mut orth_ok = true;
    let low = dominant_weights_up_to(n, cutoff.min(2));
    for lam in &low {
        for mu in &low {
            orth_ok &= orthogonality_check(ctx, lam, mu)?.ok();
        }
    }
    push(&mut steps, "haar_orthogonality", orth_ok);

    // tensor-square decomposition is consistent
    let lam1: Vec<i64> = std::iter::once(1).chain(std::iter::repeat(0)).take(n).collect();
    let td = tensor_decomp(ctx, &lam1, &lam1)?;
    let total: usize = td.1.summands.iter().map(|s| s.dim).sum();
    push(&mut steps, "tensor_square_decomposition", total == (2 * n + 1) * (2 * n + 1));

    // homogeneous-space battery at Theta = empty
    let theta: Vec<usize> = vec![];
    let space = sections(ctx, &theta_irreducible(ctx, &WeightVec::zero(n), &theta)?,
        &Scope::reductive(n, theta.clone()), cutoff)?;
    push(&mut steps, "invariant_sections_structure", module_structure_check(ctx, &space)?.ok());
    let (_, central) = invariant_functions(ctx, &theta, cutoff)?;
    let _ = central; // diagnostic only, reported by the invariants subcommand

    let w = vector_module(n);
    push(&mut steps, "trivialization", trivialization(ctx, &w, &theta, cutoff)?.ok());
    let cneg = ospq_core::repcore::one_dim_module(n, -&WeightVec::epsilon(n, 1));
    push(&mut steps, "projectivity_witness", projectivity_witness(ctx, &cneg, &theta, cutoff)?.ok());

    for m in 0..=cutoff.min(2) as i64 {
        let mu = WeightVec::epsilon(n, 1).scaled(-m);
        let bw = borel_weil_check(ctx, &mu, &theta, cutoff.max(m as usize))?;
        push(&mut steps, &format!("borel_weil(mu=-{}*eps_1)", m), bw.ok());
    }
    let bw_pos = borel_weil_check(ctx, &WeightVec::epsilon(n, 1), &theta, cutoff)?;
    push(&mut steps, "borel_weil(+eps_1)_vanishing", bw_pos.ok() && bw_pos.dim == 0);

    let fr = frobenius_check(ctx, &vector_module(n), &ospq_core::repcore::trivial_module(n), &theta, cutoff.max(1))?;
    push(&mut steps, "frobenius(vector,trivial)", fr.ok());
    push(&mut steps, "corollary(vector)", corollary_check(ctx, &vector_module(n), &theta, cutoff.max(1))?.ok());

    let ok = steps.iter().all(|(_, s)| *s);
    let payload = json!({
        "cutoff": cutoff,
        "steps": steps
            .iter()
            .map(|(name, s)| json!({ "step": name, "ok": s }))
            .collect::<Vec<_>>(),
        "ok": ok,
    });
    Ok((payload, ok))
}

fn execute(cli: &Cli, cache: &cache::Cache) -> Result<(Value, bool)> {
    let n = cli.n;
    if n == 0 {
        return Err(anyhow!("rank n must be positive"));
    }
    let ctx = Context::new(n)?;
    match &cli.command {
        Command::Check => {
            let (mut payload, ok) = run_check(&ctx, cli.seed)?;
            payload["seed"] = json!(cli.seed);
            payload["conventions"] = conventions();
            Ok((payload, ok))
        }
        Command::Irrep { lambda } => {
            let lam = parse_weight(lambda, n)?;
            let key = cache::key(SCHEMA_VERSION, n, "irrep", &weight_key(&lam));
            if let Some(hit) = cache.get(&key) {
                return Ok((hit, true));
            }
            let m = irreducible(&ctx, &lam)?;
            let payload = json!({
                "lambda": lam,
                "module": module_json(&m),
                "conventions": conventions(),
            });
            cache.put(&key, &payload);
            Ok((payload, true))
        }
        Command::Decompose { lambda, mu } => {
            let lam = parse_weight(lambda, n)?;
            let params = match mu {
                Some(m) => format!("{}|{}", weight_key(&lam), weight_key(&parse_weight(m, n)?)),
                None => weight_key(&lam),
            };
            let key = cache::key(SCHEMA_VERSION, n, "decompose", &params);
            if let Some(hit) = cache.get(&key) {
                return Ok((hit, true));
            }
            let (total_dim, summands) = match mu {
                Some(m) => {
                    let mu = parse_weight(m, n)?;
                    let td = tensor_decomp(&ctx, &lam, &mu)?;
                    (td.0.dim, td.1.summands.clone())
                }
                None => {
                    let w = irreducible(&ctx, &lam)?;
                    let dec = ospq_core::repcore::decompose(&ctx, &w)?;
                    (w.dim, dec.summands)
                }
            };
            let sum: usize = summands.iter().map(|s| s.dim).sum();
            let payload = json!({
                "dim": total_dim,
                "summands": summands
                    .iter()
                    .map(|s| json!({ "lambda": s.lambda, "dim": s.dim, "parity": s.iso_parity }))
                    .collect::<Vec<_>>(),
                "dimension_sum_matches": sum == total_dim,
            });
            cache.put(&key, &payload);
            Ok((payload, sum == total_dim))
        }
        Command::Superdim { lambda } => {
            let lam = parse_weight(lambda, n)?;
            let key = cache::key(SCHEMA_VERSION, n, "superdim", &weight_key(&lam));
            if let Some(hit) = cache.get(&key) {
                return Ok((hit, true));
            }
            let sd = superdimension(&ctx, &lam)?;
            let payload = json!({ "sd": format!("{}", sd) });
            cache.put(&key, &payload);
            Ok((payload, true))
        }
        Command::HaarOrthogonality { lambda, mu } => {
            let lam = parse_weight(lambda, n)?;
            let mu = parse_weight(mu, n)?;
            let rep = orthogonality_check(&ctx, &lam, &mu)?;
            let ok = rep.ok();
            let payload = json!({
                "lambda": lam,
                "mu": mu,
                "checked": rep.checked,
                "failures": rep
                    .failures
                    .iter()
                    .map(|f| json!({
                        "equation": f.equation,
                        "indices": f.indices,
                        "lhs": format!("{}", f.lhs),
                        "rhs": format!("{}", f.rhs),
                    }))
                    .collect::<Vec<_>>(),
                "ok": ok,
            });
            Ok((payload, ok))
        }
        Command::Evaluate { lambda, row, col, word } => {
            let lam = parse_weight(lambda, n)?;
            let m = irreducible(&ctx, &lam)?;
            if *row >= m.dim || *col >= m.dim {
                return Err(anyhow!("index out of range: module dimension is {}", m.dim));
            }
            let w = Word::parse(word)?;
            let f = PWElement::basis(lam.clone(), *row, *col);
            let value = evaluate(&ctx, &f, &w)?;
            let payload = json!({
                "lambda": lam,
                "row": row,
                "col": col,
                "word": format!("{}", w),
                "value": format!("{}", value),
            });
            Ok((payload, true))
        }
        Command::Sections { theta, module, cutoff } => {
            let theta = parse_theta(theta, n)?;
            let mu_ints = parse_weight(module, n)?;
            let mu = WeightVec::from_ints(&mu_ints);
            let v = theta_irreducible(&ctx, &mu, &theta)?;
            let scope = Scope::reductive(n, theta.clone());
            let space = sections(&ctx, &v, &scope, *cutoff)?;
            let structure = module_structure_check(&ctx, &space)?;
            let ok = structure.ok();
            let payload = json!({
                "theta": theta,
                "fibre_weight": mu_ints,
                "fibre_dim": v.dim,
                "cutoff": cutoff,
                "dim": space.dim(),
                "blocks": blocks_json(&space.block_dims()),
                "structure": structure_json(&structure),
                "ok": ok,
            });
            Ok((payload, ok))
        }
        Command::Invariants { theta, cutoff } => {
            let theta = parse_theta(theta, n)?;
            let (space, central) = invariant_functions(&ctx, &theta, *cutoff)?;
            let structure = module_structure_check(&ctx, &space)?;
            let ok = structure.ok();
            let payload = json!({
                "theta": theta,
                "cutoff": cutoff,
                "dim": space.dim(),
                "blocks": blocks_json(&space.block_dims()),
                "central_diagnostic": {
                    "n_central": central.n_central,
                    "entries": central
                        .entries
                        .iter()
                        .map(|(m, claimed, computed)| json!({
                            "m": m, "claimed": claimed, "computed": computed,
                        }))
                        .collect::<Vec<_>>(),
                },
                "structure": structure_json(&structure),
                "ok": ok,
            });
            Ok((payload, ok))
        }
        Command::BorelWeil { theta, mu, cutoff } => {
            let theta = parse_theta(theta, n)?;
            let mu_ints = parse_weight(mu, n)?;
            let mu = WeightVec::from_ints(&mu_ints);
            let rep = borel_weil_check(&ctx, &mu, &theta, *cutoff)?;
            let ok = rep.ok();
            let payload = json!({
                "theta": theta,
                "mu": mu_ints,
                "mu_tilde": rep.mu_tilde.to_string(),
                "nu": rep.nu,
                "dim": rep.dim,
                "structure": structure_json(&rep.structure),
                "ok": ok,
            });
            Ok((payload, ok))
        }
        Command::Frobenius { theta, w_lambda, v_weight, cutoff } => {
            let theta = parse_theta(theta, n)?;
            let lam = parse_weight(w_lambda, n)?;
            let vw = WeightVec::from_ints(&parse_weight(v_weight, n)?);
            let w = irreducible(&ctx, &lam)?;
            let v = theta_irreducible(&ctx, &vw, &theta)?;
            let rep = frobenius_check(&ctx, &w, &v, &theta, *cutoff)?;
            let ok = rep.ok();
            let payload = json!({
                "theta": theta,
                "w_lambda": lam,
                "v_weight": v_weight,
                "lhs_dim": rep.lhs_dim,
                "rhs_dim": rep.rhs_dim,
                "structure": structure_json(&rep.structure),
                "ok": ok,
            });
            Ok((payload, ok))
        }
        Command::Suite { cutoff } => {
            let (mut payload, ok) = run_suite(&ctx, *cutoff, cli.seed)?;
            payload["seed"] = json!(cli.seed);
            payload["conventions"] = conventions();
            Ok((payload, ok))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let cache = cache::Cache::open(cli.cache_dir.clone());
    match execute(&cli, &cache) {
        Ok((payload, ok)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&payload).unwrap()),
                Format::Text => {
                    let mut out = String::new();
                    render_text(&payload, 0, &mut out);
                    print!("{}", out);
                }
            }
            std::process::exit(if ok { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            // bad argument values are usage errors; kernel failures are
            // verification errors
            let usage = e.downcast_ref::<ospq_core::error::KernelError>().is_none();
            std::process::exit(if usage { 2 } else { 1 });
        }
    }
}
