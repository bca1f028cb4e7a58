use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use super::level::Families;
use super::substitute::mating_substitution;
use super::FamilyError;
use crate::angle::{Angle, OrbitType};
use crate::coding::{periodic_leaf, Word};
use crate::report::{Claim, Report};

/// The mating window `(19/28, 5/7)`.
pub fn mating_window() -> (BigRational, BigRational) {
    (
        BigRational::new(19.into(), 28.into()),
        BigRational::new(5.into(), 7.into()),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatingSpec {
    pub label: String,
    /// `0..=n` for `w_{k,n} r_{k,n}`, `n + 1` for `v_n t_n`.
    pub k: usize,
    pub word: Word,
    /// Lower endpoint of the leaf coded by `word^inf`.
    pub q: Angle,
    pub orbit: OrbitType,
}

pub fn mating_family(fam: &Families, n: usize) -> Result<Vec<MatingSpec>, FamilyError> {
    if n > fam.max_level() {
        return Err(FamilyError::InvalidLevels { k: 0, n });
    }
    let ln = fam.level(n);
    let mut words = Vec::new();
    for k in 0..=n {
        let (w, r, _) = mating_substitution(fam, k, n)?;
        words.push((format!("w_{{{k},{n}}} r_{{{k},{n}}}"), k, w.cat(&r)));
    }
    words.push((format!("v_{n} t_{n}"), n + 1, ln.vt()));
    let (lo, hi) = mating_window();
    words
        .into_iter()
        .map(|(label, k, word)| {
            let leaf = periodic_leaf(&word)?;
            if leaf.is_degenerate() {
                return Err(FamilyError::DegenerateLeaf { word: word.compact() });
            }
            let q = leaf.lower().clone();
            if !(q.as_ratio() > &lo && q.as_ratio() < &hi) {
                return Err(FamilyError::WindowViolation {
                    word: word.compact(),
                    arc: q.to_string(),
                });
            }
            let orbit = q.orbit_type();
            Ok(MatingSpec {
                label,
                k,
                word,
                q,
                orbit,
            })
        })
        .collect()
}

pub fn verify_matings(fam: &Families, max_n: usize) -> Report {
    let mut r = Report::new();
    for n in 0..=max_n.min(fam.max_level()) {
        let id = format!("matings.n{n}");
        let period = fam.level(n).vt().len();
        match mating_family(fam, n) {
            Err(e) => r.push(Claim::new(id, "mating family", false, json!({ "error": e.to_string() }))),
            Ok(specs) => {
                let distinct = specs
                    .iter()
                    .enumerate()
                    .all(|(i, a)| specs[i + 1..].iter().all(|b| a.q != b.q));
                let periods_ok = specs
                    .iter()
                    .all(|s| s.orbit.preperiod == 0 && s.orbit.period == period);
                let closed = 30 * (1i64 << n) - 12;
                r.push(Claim::new(
                    id,
                    format!("{} distinct angles q in (19/28, 5/7) of exact period |v_{n}| + |t_{n}|", n + 2),
                    specs.len() == n + 2 && distinct && periods_ok && period as i64 == closed,
                    json!({
                        "n": n,
                        "period": period,
                        "closed_form_period": closed,
                        "q": specs.iter().map(|s| s.q.to_string()).collect::<Vec<_>>(),
                    }),
                ));
            }
        }
    }
    r
}
