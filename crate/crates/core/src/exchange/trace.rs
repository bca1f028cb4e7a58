use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use super::component::{build_dprime, seed_component, ComponentTree, DPrime, ExchangeComponent, Side};
use super::scenario::{choose_z, ScenarioConfig};
use super::ExchangeError;
use crate::coding::{upper_arc, Letter, Word, CRITICAL_CYCLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// The component meets O(y).
    OrbitTouch,
    /// The endpoint of the main path lies in one disc and moves to the other.
    EndpointSwap,
    /// The main path crosses a component joined along the lower circle.
    HookDouble,
    /// The main path crosses a component joined along the upper circle.
    HookReduce,
    /// The main path crosses a component with one end on each half.
    PathCross,
    /// The second path's anchor lies under the connecting arc.
    ZetaTouch,
    /// The endpoint of the second path moves.
    ZetaSwap,
}

impl EventKind {
    /// Events that change the main path.
    pub fn on_main_path(self) -> bool {
        matches!(
            self,
            EventKind::EndpointSwap | EventKind::HookDouble | EventKind::HookReduce | EventKind::PathCross
        )
    }

    pub fn on_zeta_path(self) -> bool {
        matches!(self, EventKind::ZetaTouch | EventKind::ZetaSwap)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    pub step: usize,
    /// Length of the disc prefixes at this step.
    pub depth: usize,
    pub kind: EventKind,
    pub component: ExchangeComponent,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endpoint_before: Option<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endpoint_after: Option<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub depth: usize,
    /// Components carrying a point of O(x) or O(y).
    pub components: usize,
    /// Components meeting O(y).
    pub active: Vec<ExchangeComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub scenario: String,
    pub y: Word,
    pub x: Word,
    pub z: Word,
    pub zeta: Option<Word>,
    pub dprime: DPrime,
    /// Step of the seed component.
    pub first_step: usize,
    /// Preperiod of y; steps run up to `preperiod - 1`.
    pub preperiod: usize,
    pub steps: Vec<StepRecord>,
    pub events: Vec<TraceEvent>,
    pub final_endpoint: Word,
    pub final_zeta: Option<Word>,
    /// Two per lower-circle event on the main path.
    pub hook_count: usize,
}

impl Trace {
    pub fn steps_of(&self, pred: impl Fn(EventKind) -> bool) -> Vec<usize> {
        let mut s: Vec<usize> = self.events.iter().filter(|e| pred(e.kind)).map(|e| e.step).collect();
        s.dedup();
        s
    }

    pub fn main_path_steps(&self) -> Vec<usize> {
        self.steps_of(EventKind::on_main_path)
    }

    pub fn zeta_path_steps(&self) -> Vec<usize> {
        self.steps_of(EventKind::on_zeta_path)
    }

    pub fn swaps(&self) -> impl Iterator<Item = &TraceEvent> {
        self.events.iter().filter(|e| e.kind == EventKind::EndpointSwap)
    }

    /// Depth of the first component that moves the main endpoint.
    pub fn first_swap_depth(&self) -> Option<usize> {
        self.swaps().next().map(|e| e.depth)
    }

    pub fn active_at(&self, step: usize) -> &[ExchangeComponent] {
        self.steps
            .iter()
            .find(|s| s.step == step)
            .map(|s| s.active.as_slice())
            .unwrap_or(&[])
    }

    /// Every event as one JSON object per line.
    pub fn to_jsonl(&self) -> String {
        self.events
            .iter()
            .map(|e| serde_json::to_string(e).expect("serializable") + "\n")
            .collect()
    }
}

/// All suffixes of `w` plus the critical cycle words `L1 R2 C` and `R2 C`.
pub fn orbit_words(w: &Word) -> Vec<Word> {
    let mut out: Vec<Word> = w.suffixes().collect();
    out.push(Word::new(CRITICAL_CYCLE.to_vec()));
    out.push(Word::new(CRITICAL_CYCLE[1..].to_vec()));
    out
}

fn midpoint(w: &Word) -> Result<BigRational, ExchangeError> {
    Ok(upper_arc(w)?.midpoint())
}

/// If `word` lies in one disc of `c`, the same point in the other disc.
fn swapped(word: &Word, c: &ExchangeComponent, d: &DPrime) -> Option<Word> {
    let j = c.depth();
    for (from, to) in [(&c.left, &c.right), (&c.right, &c.left)] {
        if d.lifted_holds(word.letters(), from.prefix.letters()) {
            return Some(to.prefix.cat(&word.suffix(j)));
        }
    }
    None
}

/// Replay the pulled-back disc exchanges from the seed step up to the
/// preperiod of y, following the endpoint of the path to y (and of the second
/// path, if configured).
pub fn trace_scenario(cfg: &ScenarioConfig) -> Result<Trace, ExchangeError> {
    let (y, x) = (&cfg.y, &cfg.x);
    let d = build_dprime(x, y)?;
    let z = choose_z(cfg)?;
    let mut tree = ComponentTree::new(seed_component(&d));

    let oy = orbit_words(y);
    let ox = orbit_words(x);
    let inside: Vec<&Word> = oy.iter().filter(|s| d.holds(s.letters())).collect();
    let first_step = inside
        .iter()
        .map(|s| s.len() - 1)
        .min()
        .ok_or_else(|| ExchangeError::EmptyOrbitSection { y: y.compact() })?;
    let preperiod = cfg.max_step();

    let theta_y = midpoint(y)?;
    let theta_z = midpoint(&z)?;
    let theta_zeta = cfg.zeta.as_ref().map(midpoint).transpose()?;

    let mut ep = y.clone();
    let mut zep = cfg.zeta.clone();
    let mut steps = Vec::new();
    let mut events = Vec::new();
    let mut hook_count = 0usize;

    for step in first_step..preperiod {
        let j = step - first_step + 1;
        let mut cands: BTreeMap<(Word, Word), ExchangeComponent> = BTreeMap::new();
        let tracked = oy.iter().chain(&ox).chain(std::iter::once(&ep)).chain(zep.as_ref());
        for s in tracked {
            if s.len() > j && d.holds(&s.letters()[j..]) {
                let c = tree.component(&s.letters()[..j])?;
                cands.insert((c.left.prefix.clone(), c.right.prefix.clone()), c);
            }
        }

        let mut active = Vec::new();
        let (mut next_ep, mut next_zep) = (ep.clone(), zep.clone());
        for c in cands.values() {
            let event = |kind, before: Option<&Word>, after: Option<&Word>| TraceEvent {
                step,
                depth: j,
                kind,
                component: c.clone(),
                endpoint_before: before.cloned(),
                endpoint_after: after.cloned(),
            };
            let meets_y = oy.iter().any(|s| {
                d.lifted_holds(s.letters(), c.left.prefix.letters())
                    || d.lifted_holds(s.letters(), c.right.prefix.letters())
            });
            if meets_y {
                active.push(c.clone());
                events.push(event(EventKind::OrbitTouch, None, None));
            }

            let lower = c.tags() == (Side::Bot, Side::Bot);
            let main_swap = swapped(&ep, c, &d);
            if let Some(after) = &main_swap {
                events.push(event(EventKind::EndpointSwap, Some(&ep), Some(after)));
                next_ep = after.clone();
            } else if c.in_sweep(&theta_y) != c.in_sweep(&theta_z) {
                let kind = match c.tags() {
                    (Side::Bot, Side::Bot) => EventKind::HookDouble,
                    (Side::Top, Side::Top) => EventKind::HookReduce,
                    _ => EventKind::PathCross,
                };
                events.push(event(kind, None, None));
            }
            let crossed = main_swap.is_some() || c.in_sweep(&theta_y) != c.in_sweep(&theta_z);
            if crossed && lower {
                hook_count += 2;
            }

            if let (Some(zw), Some(th)) = (&zep, &theta_zeta) {
                if let Some(after) = swapped(zw, c, &d) {
                    events.push(event(EventKind::ZetaSwap, Some(zw), Some(&after)));
                    next_zep = Some(after);
                } else if c.in_sweep(th) {
                    events.push(event(EventKind::ZetaTouch, None, None));
                }
            }
        }

        if cfg.single_active && active.len() != 1 {
            return Err(ExchangeError::MultipleActiveComponents {
                step,
                count: active.len(),
            });
        }
        steps.push(StepRecord {
            step,
            depth: j,
            components: cands.len(),
            active,
        });
        ep = next_ep;
        zep = next_zep;
    }

    Ok(Trace {
        scenario: cfg.name(),
        y: y.clone(),
        x: x.clone(),
        z,
        zeta: cfg.zeta.clone(),
        dprime: d,
        first_step,
        preperiod,
        steps,
        events,
        final_endpoint: ep,
        final_zeta: zep,
        hook_count,
    })
}

/// Points of O(y) other than y itself.
pub fn strict_orbit(y: &Word) -> Vec<Word> {
    orbit_words(y).into_iter().skip(1).collect()
}

/// The lifted copy `prefix D'` contains a point coded by some word of `orbit`.
pub fn lifted_meets(d: &DPrime, prefix: &[Letter], orbit: &[Word]) -> bool {
    orbit.iter().any(|s| d.lifted_holds(s.letters(), prefix))
}
