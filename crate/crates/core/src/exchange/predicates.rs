use serde_json::json;

use super::scenario::{ScenarioConfig, ScenarioKind};
use super::trace::{orbit_words, strict_orbit, trace_scenario, Trace};
use super::ExchangeError;
use crate::coding::Word;
use crate::families::Families;
use crate::report::{Claim, Report};

/// Points of O(y) other than y lying in `v D' \ D'`.
pub fn d1_hits(cfg: &ScenarioConfig, trace: &Trace) -> Vec<Word> {
    let d = &trace.dprime;
    strict_orbit(&cfg.y)
        .into_iter()
        .filter(|s| d.lifted_holds(s.letters(), cfg.shift.letters()) && !d.holds(s.letters()))
        .collect()
}

/// Points of O(x) in `S(D' u D(x) u D(y))`, where S is the inverse branch
/// labelled by `cfg.branch`.
pub fn branch_hits(cfg: &ScenarioConfig, trace: &Trace) -> Vec<Word> {
    let d = &trace.dprime;
    let (y, x) = (&cfg.y, &cfg.x);
    let b = &cfg.branch;
    orbit_words(x)
        .into_iter()
        .filter(|s| {
            s.len() > b.len() && s.starts_with(b) && {
                let rest = s.suffix(b.len());
                rest == *y || rest == *x || d.holds(rest.letters())
            }
        })
        .collect()
}

/// Predicates on a finished trace: where the endpoints end up, the first
/// moving depth, and the orbit-avoidance facts the bookkeeping relies on.
pub fn verify_predicates(cfg: &ScenarioConfig, trace: &Trace) -> Report {
    let name = cfg.name();
    let mut r = Report::new();

    let mut cur = cfg.y.clone();
    let mut chain_ok = true;
    for e in trace.swaps() {
        chain_ok &= e.endpoint_before.as_ref() == Some(&cur);
        cur = e.endpoint_after.clone().unwrap_or(cur);
    }
    r.push(Claim::new(
        format!("exchange.{name}.endpoint"),
        "the swaps carry the endpoint from y to x",
        chain_ok && cur == cfg.x && trace.final_endpoint == cfg.x,
        json!({ "swap_steps": trace.swaps().map(|e| e.step).collect::<Vec<_>>(), "final": trace.final_endpoint.compact() }),
    ));

    if let Some(target) = &cfg.zeta_target {
        r.push(Claim::new(
            format!("exchange.{name}.zeta"),
            "the second path ends at the substituted suffix",
            trace.final_zeta.as_ref() == Some(target),
            json!({ "final": trace.final_zeta.as_ref().map(Word::compact), "target": target.compact(), "steps": trace.zeta_path_steps() }),
        ));
    }

    let first = trace.first_swap_depth();
    r.push(Claim::new(
        format!("exchange.{name}.first_move"),
        "the path to y first moves at pullback depth |v_k|",
        first == Some(cfg.branch.len()),
        json!({ "first_swap_depth": first, "len_v_k": cfg.branch.len() }),
    ));

    // In the mating word, v_n followed by the tail is itself a later orbit
    // point, so the D1' condition only applies to the capture scenarios.
    if cfg.kind != ScenarioKind::Mating {
        let d1 = d1_hits(cfg, trace);
        r.push(Claim::new(
            format!("exchange.{name}.d1"),
            "v D1' misses the strict forward orbit of y",
            d1.is_empty(),
            json!({ "v": cfg.shift.compact(), "hits": d1.iter().map(Word::compact).collect::<Vec<_>>() }),
        ));
    }

    if matches!(cfg.kind, ScenarioKind::Basic | ScenarioKind::Level) {
        let hits = branch_hits(cfg, trace);
        r.push(Claim::new(
            format!("exchange.{name}.branch"),
            "the w_k branch image of D' u D(x) u D(y) meets O(x) only at x",
            hits == vec![cfg.x.clone()],
            json!({ "hits": hits.iter().map(Word::compact).collect::<Vec<_>>() }),
        ));
    }

    if cfg.single_active {
        let counts: Vec<usize> = trace.steps.iter().map(|s| s.active.len()).collect();
        r.push(Claim::new(
            format!("exchange.{name}.single"),
            "exactly one component per step meets O(y)",
            counts.iter().all(|&c| c == 1),
            json!({ "steps": counts.len() }),
        ));
    }
    r
}

/// Trace and check: the basic scenario, levels `1..=max_level`, the multi
/// scenarios with `n <= max_multi`, and the mating scenario at `k = n = 0`.
pub fn verify_exchange(fam: &Families, max_level: usize, max_multi: usize) -> Result<Report, ExchangeError> {
    let mut cfgs = vec![ScenarioConfig::basic(fam)?];
    for k in 1..=max_level.min(fam.max_level()) {
        cfgs.push(ScenarioConfig::level(fam, k)?);
    }
    for n in 1..=max_multi.min(fam.max_level()) {
        for k in 0..n {
            cfgs.push(ScenarioConfig::multi(fam, k, n)?);
        }
    }
    cfgs.push(ScenarioConfig::mating(fam, 0, 0)?);
    let mut r = Report::new();
    for cfg in &cfgs {
        let trace = trace_scenario(cfg)?;
        r.extend(verify_predicates(cfg, &trace));
    }
    Ok(r)
}
