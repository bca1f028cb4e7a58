use serde::Serialize;
use serde_json::json;

use super::level::Families;
use crate::report::{Claim, Report};

/// Literal word lengths at level `n` beside the quoted closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthRow {
    pub n: usize,
    pub v: i64,
    pub t: i64,
    pub u: i64,
    pub v_plus_u: i64,
    pub v_plus_t: i64,
    pub closed_v: i64,
    pub closed_t: i64,
    pub closed_u: i64,
    pub closed_v_plus_u: i64,
    pub closed_v_plus_t: i64,
}

impl LengthRow {
    fn new(fam: &Families, n: usize) -> Self {
        let l = fam.level(n);
        let p = 1i64 << n;
        let (v, t, u) = (l.v.len() as i64, l.t.len() as i64, l.u.len() as i64);
        LengthRow {
            n,
            v,
            t,
            u,
            v_plus_u: v + u,
            v_plus_t: v + t,
            closed_v: 13 * p - 5,
            closed_t: 17 * p - 7,
            closed_u: 13 * p - 6,
            closed_v_plus_u: 26 * p - 11,
            closed_v_plus_t: 30 * p - 12,
        }
    }

    fn columns(&self) -> [(&'static str, i64, i64); 5] {
        [
            ("v", self.v, self.closed_v),
            ("t", self.t, self.closed_t),
            ("u", self.u, self.closed_u),
            ("v+u", self.v_plus_u, self.closed_v_plus_u),
            ("v+t", self.v_plus_t, self.closed_v_plus_t),
        ]
    }
}

pub fn length_table(fam: &Families, max_n: usize) -> Vec<LengthRow> {
    (0..=max_n.min(fam.max_level()))
        .map(|n| LengthRow::new(fam, n))
        .collect()
}

/// The sum identity `|v_n| + |t_n| = 30 * 2^n - 12` is asserted; every other
/// closed form is compared and flagged where the literal recursion disagrees.
pub fn length_report(fam: &Families, max_n: usize) -> Report {
    let mut r = Report::new();
    for row in length_table(fam, max_n) {
        let n = row.n;
        for (name, literal, closed) in row.columns() {
            let id = format!("lengths.n{n}.{name}");
            let locus = format!("|{name}| at level {n} against its closed form");
            let witness = json!({ "n": n, "literal": literal, "closed_form": closed });
            if name == "v+t" {
                r.push(Claim::new(id, "|v_n| + |t_n| = 30 * 2^n - 12", literal == closed, witness));
            } else if literal == closed {
                r.push(Claim::new(id, locus, true, witness));
            } else {
                r.push(Claim::flagged(id, locus, witness));
            }
        }
    }
    r
}
