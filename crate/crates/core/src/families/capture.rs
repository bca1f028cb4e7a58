use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use super::level::Families;
use super::substitute::capture_substitution;
use super::FamilyError;
use crate::coding::{upper_arc, Arc, PrecriticalPoint, Word};
use crate::report::{Claim, Report};

/// The capture window `(2/7, 9/28)` for crossing points on the circle.
pub fn capture_window() -> (BigRational, BigRational) {
    (
        BigRational::new(2.into(), 7.into()),
        BigRational::new(9.into(), 28.into()),
    )
}

/// One capture path endpoint together with its crossing arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaptureSpec {
    pub label: String,
    /// `None` for `v_n u_n`, `Some(k)` for `w_{k,n} u_{k,n}`.
    pub k: Option<usize>,
    pub word: Word,
    pub preperiod: usize,
    /// Closed form `26 * 2^n - 11` quoted for the preperiod.
    pub closed_form_preperiod: i64,
    pub arc: Arc,
}

/// `v_n u_n` followed by `w_{k,n} u_{k,n}` for `0 <= k <= n`.
pub fn capture_family(fam: &Families, n: usize) -> Result<Vec<CaptureSpec>, FamilyError> {
    if n > fam.max_level() {
        return Err(FamilyError::InvalidLevels { k: 0, n });
    }
    let ln = fam.level(n);
    let mut words = vec![(format!("v_{n} u_{n}"), None, ln.v.cat(&ln.u))];
    for k in 0..=n {
        let (w, u, _) = capture_substitution(fam, k, n)?;
        words.push((format!("w_{{{k},{n}}} u_{{{k},{n}}}"), Some(k), w.cat(&u)));
    }
    let (lo, hi) = capture_window();
    let closed = 26 * (1i64 << n) - 11;
    words
        .into_iter()
        .map(|(label, k, word)| {
            let arc = upper_arc(&word)?;
            if !arc.inside_open(&lo, &hi) {
                return Err(FamilyError::WindowViolation {
                    word: word.compact(),
                    arc: arc.to_string(),
                });
            }
            let preperiod = PrecriticalPoint::new(word.clone())?.preperiod();
            Ok(CaptureSpec {
                label,
                k,
                word,
                preperiod,
                closed_form_preperiod: closed,
                arc,
            })
        })
        .collect()
}

pub fn verify_captures(fam: &Families, max_n: usize) -> Report {
    let mut r = Report::new();
    for n in 0..=max_n.min(fam.max_level()) {
        let id = format!("captures.n{n}");
        match capture_family(fam, n) {
            Err(e) => r.push(Claim::new(id, "capture family", false, json!({ "error": e.to_string() }))),
            Ok(specs) => {
                let distinct = specs
                    .iter()
                    .enumerate()
                    .all(|(i, a)| specs[i + 1..].iter().all(|b| a.word != b.word));
                let prefix: Word = "L3 L2 R3 L3".parse().unwrap();
                let shared = specs.iter().all(|s| s.word.starts_with(&prefix));
                let ok = specs.len() == n + 2 && distinct && shared;
                r.push(Claim::new(
                    id,
                    format!("{} distinct capture words with crossing arcs inside (2/7, 9/28)", n + 2),
                    ok,
                    json!({
                        "n": n,
                        "count": specs.len(),
                        "preperiods": specs.iter().map(|s| s.preperiod).collect::<Vec<_>>(),
                        "closed_form_preperiod": 26 * (1i64 << n) - 11,
                        "arcs": specs.iter().map(|s| s.arc.to_string()).collect::<Vec<_>>(),
                    }),
                ));
                if n == 0 {
                    let ok = specs.iter().all(|s| s.preperiod == 13);
                    r.push(Claim::new(
                        "captures.n0.preperiod",
                        "both level-0 capture endpoints have preperiod 13",
                        ok,
                        json!({ "preperiods": specs.iter().map(|s| s.preperiod).collect::<Vec<_>>() }),
                    ));
                }
            }
        }
    }
    r
}
