use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::ExchangeError;
use crate::coding::{upper_arc, Letter, PrecriticalPoint, Word};
use crate::families::{capture_substitution, substitute_before_markers, Families};

/// The four traced configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    /// `y = v0 u0`, `x = w0 u0`.
    Basic,
    /// `y = v_k u_k`, `x = w_k u_k`.
    Level,
    /// `y = v_n u_n`, `x = w_{k,n} u_{k,n}`.
    Multi,
    /// `y = v_n t_n v_n u`, `x` its substituted counterpart, with the second
    /// path starting at `R3 v_n u`.
    Mating,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 4] = [
        ScenarioKind::Basic,
        ScenarioKind::Level,
        ScenarioKind::Multi,
        ScenarioKind::Mating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Basic => "basic",
            ScenarioKind::Level => "level",
            ScenarioKind::Multi => "multi",
            ScenarioKind::Mating => "mating",
        }
    }

    /// Numeric alias accepted on the command line.
    pub fn alias(self) -> &'static str {
        match self {
            ScenarioKind::Basic => "2.1",
            ScenarioKind::Level => "2.5",
            ScenarioKind::Multi => "2.7",
            ScenarioKind::Mating => "2.8",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = ExchangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name() == s || k.alias() == s)
            .ok_or_else(|| ExchangeError::UnknownScenario(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub k: usize,
    pub n: usize,
    pub y: Word,
    pub x: Word,
    /// Start of the second tracked path, if any.
    pub zeta: Option<Word>,
    /// Where the second path should end.
    pub zeta_target: Option<Word>,
    /// The word `v` whose copy `v D'` defines `D1' = v D' \ D'`.
    pub shift: Word,
    /// The branch `S` of the inverse of `s^|shift|` carrying D' onto D(x).
    pub branch: Word,
    /// Treat more than one component meeting O(y) at a step as an error.
    pub single_active: bool,
    /// Longest z word the search will try.
    pub z_search_len: usize,
}

impl ScenarioConfig {
    pub fn name(&self) -> String {
        match self.kind {
            ScenarioKind::Basic => "basic".into(),
            ScenarioKind::Level => format!("level.k{}", self.k),
            ScenarioKind::Multi | ScenarioKind::Mating => format!("{}.k{}.n{}", self.kind, self.k, self.n),
        }
    }

    /// Steps are replayed up to the preperiod of y.
    pub fn max_step(&self) -> usize {
        PrecriticalPoint::new(self.y.clone())
            .map(|p| p.preperiod())
            .unwrap_or(self.y.len().saturating_sub(1))
    }

    fn check(fam: &Families, k: usize, n: usize) -> Result<(), ExchangeError> {
        if k > n || n > fam.max_level() {
            return Err(ExchangeError::InvalidLevels { k, n });
        }
        Ok(())
    }

    pub fn basic(fam: &Families) -> Result<Self, ExchangeError> {
        let mut c = Self::level(fam, 0)?;
        c.kind = ScenarioKind::Basic;
        Ok(c)
    }

    pub fn level(fam: &Families, k: usize) -> Result<Self, ExchangeError> {
        let mut c = Self::multi(fam, k, k)?;
        c.kind = ScenarioKind::Level;
        c.single_active = true;
        c.shift = fam.level(k).v.clone();
        Ok(c)
    }

    /// Single-component bookkeeping is not expected here: for `k < n` several
    /// components meet O(y) at once.
    pub fn multi(fam: &Families, k: usize, n: usize) -> Result<Self, ExchangeError> {
        Self::check(fam, k, n)?;
        let ln = fam.level(n);
        let (w_kn, u_kn, _) = capture_substitution(fam, k, n)?;
        Ok(ScenarioConfig {
            kind: ScenarioKind::Multi,
            k,
            n,
            y: ln.v.cat(&ln.u),
            x: w_kn.cat(&u_kn),
            zeta: None,
            zeta_target: None,
            shift: fam.base().v0.clone(),
            branch: fam.level(k).w.clone(),
            single_active: false,
            z_search_len: 40,
        })
    }

    /// At `n = 0` the tail is `u0'`, so that `t0 < u0'`. As with the multi
    /// scenario, `k < n` has several components meeting O(y) per step.
    pub fn mating(fam: &Families, k: usize, n: usize) -> Result<Self, ExchangeError> {
        Self::check(fam, k, n)?;
        let base = fam.base();
        let (lk, ln) = (fam.level(k), fam.level(n));
        let tail = if n == 0 { &base.u0_prime } else { &ln.u };
        let vt = ln.vt();
        let vu = ln.v.cat(tail);
        let first = substitute_before_markers(&vt, &base.a, &base.b, &[&lk.v, &lk.t, &ln.t])?;
        let second = substitute_before_markers(&vu, &base.a, &base.b, &[&lk.v, &lk.t, tail])?;
        let y = vt.cat(&vu);
        let x = first.word.cat(&second.word);
        let cut = vt.len() - 1;
        Ok(ScenarioConfig {
            kind: ScenarioKind::Mating,
            k,
            n,
            zeta: Some(y.suffix(cut)),
            zeta_target: Some(x.suffix(cut)),
            y,
            x,
            shift: ln.v.clone(),
            branch: fam.level(k).w.clone(),
            single_active: k == n,
            z_search_len: 40,
        })
    }

    pub fn build(kind: ScenarioKind, fam: &Families, k: usize, n: usize) -> Result<Self, ExchangeError> {
        match kind {
            ScenarioKind::Basic => Self::basic(fam),
            ScenarioKind::Level => Self::level(fam, k),
            ScenarioKind::Multi => Self::multi(fam, k, n),
            ScenarioKind::Mating => Self::mating(fam, k, n),
        }
    }
}

/// Successors within the restricted alphabet, C included.
fn successors(l: Letter) -> &'static [Letter] {
    use Letter::*;
    match l {
        L3 | R3 => &[L3, L2],
        L2 => &[R3, C],
        _ => &[],
    }
}

/// The shortest word starting with L3, over L3, L2, R3 and a final C, whose
/// region lies to the right of D(y) and whose forward orbit avoids D', D(x)
/// and D(y). Ties go to the first word in breadth-first order.
pub fn choose_z(cfg: &ScenarioConfig) -> Result<Word, ExchangeError> {
    let (y, x) = (&cfg.y, &cfg.x);
    let y_lo = upper_arc(y)?.lo;
    let avoids = |w: &Word| {
        w.suffixes().all(|s| {
            s != *y && s != *x && !crate::coding::strictly_between(&s, y, x)
        })
    };
    let mut frontier = vec![Word::new(vec![Letter::L3])];
    for _ in 1..cfg.z_search_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &l in successors(p.last().expect("nonempty")) {
                let q = p.cat(&Word::new(vec![l]));
                let arc = upper_arc(&q)?;
                if l == Letter::C {
                    if arc.hi <= y_lo && avoids(&q) {
                        return Ok(q);
                    }
                } else if arc.lo < y_lo {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    Err(ExchangeError::NotFound { bound: cfg.z_search_len })
}
