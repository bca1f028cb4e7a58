//! The eight conditions on a decomposition `v = e a u` under which replacing
//! `a` by `b` keeps the capture class, and the search for such decompositions.

use serde::Serialize;
use serde_json::json;

use crate::coding::{strictly_between, word_less, Letter, Word};
use crate::report::{Claim, Report};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeablePair {
    /// 1 or 2.
    pub family: u8,
    pub j: usize,
    pub a: Word,
    pub b: Word,
}

/// `(L3 (L2 R3)^{2j}, L3 (L2 R3)^{2j-2} L3^4)` and
/// `(L3 (L2 R3)^{2j-1} L3 L3 L2 R3, L3 (L2 R3)^{2j} L3 L3)` for `1 <= j <= max_j`.
/// Family 1 at `j = 1` is the base pair `(a, b)`.
pub fn list_exchangeable_pairs(max_j: usize) -> Vec<ExchangeablePair> {
    use Letter::*;
    let l3 = Word::new(vec![L3]);
    let lr = Word::new(vec![L2, R3]);
    let mut out = Vec::new();
    for j in 1..=max_j {
        out.push(ExchangeablePair {
            family: 1,
            j,
            a: l3.cat(&lr.pow(2 * j)),
            b: Word::join([&l3, &lr.pow(2 * j - 2), &l3.pow(4)]),
        });
        out.push(ExchangeablePair {
            family: 2,
            j,
            a: Word::join([&l3, &lr.pow(2 * j - 1), &Word::new(vec![L3, L3, L2, R3])]),
            b: Word::join([&l3, &lr.pow(2 * j), &l3.pow(2)]),
        });
    }
    out
}

/// Equal lengths, odd L3/L2 counts, admissible, and `a < b`.
pub fn check_pair(p: &ExchangeablePair) -> Claim {
    let eq = p.a.len() == p.b.len();
    let odd = p.a.l_count() % 2 == 1 && p.b.l_count() % 2 == 1;
    let adm = p.a.is_admissible() && p.b.is_admissible();
    let ordered = word_less(&p.a, &p.b).unwrap_or(false);
    Claim::new(
        format!("pairs.f{}.j{}", p.family, p.j),
        "exchangeable pair: equal lengths, odd L3/L2 counts, admissible, first < second",
        eq && odd && adm && ordered,
        json!({ "a": p.a.compact(), "b": p.b.compact(), "equal_length": eq, "odd": odd, "admissible": adm, "ordered": ordered }),
    )
}

pub fn verify_pairs(max_j: usize) -> Report {
    list_exchangeable_pairs(max_j).iter().map(check_pair).collect()
}

/// Pass/fail of conditions 1 to 8, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EauOutcome(pub [bool; 8]);

impl EauOutcome {
    pub fn all(&self) -> bool {
        self.0.iter().all(|&b| b)
    }

    pub fn failed(&self) -> Vec<usize> {
        (1..=8).filter(|&i| !self.0[i - 1]).collect()
    }
}

fn btw(lo: &Word, s: &Word, hi: &Word) -> bool {
    strictly_between(s, lo, hi)
}

fn cat(parts: &[&Word]) -> Word {
    Word::join(parts.iter().copied())
}

pub fn eau_conditions(e: &Word, a: &Word, b: &Word, u: &Word, pairs: &[ExchangeablePair]) -> EauOutcome {
    let eau = cat(&[e, a, u]);
    let eb = e.cat(b);
    let ebu = cat(&[e, b, u]);
    let mut r = [false; 8];

    r[0] = (0..=e.len() / 2).any(|l| {
        let mut p = vec![Letter::L3; 2 * l + 1];
        p.push(Letter::L2);
        e.starts_with(&Word::new(p))
    });

    r[1] = e.letters().iter().all(|l| l.is_restricted()) && e.l_count() % 2 == 0;

    r[2] = match u.letters().split_last() {
        Some((last, init)) => *last == Letter::C && init.iter().all(|l| l.is_restricted()),
        None => false,
    };

    r[3] = !eau.suffixes().any(|s| s.starts_with(&eb));

    r[4] = btw(&eau, u, &eb)
        && !(1..eau.len())
            .map(|i| eau.suffix(i))
            .filter(|s| s.len() > u.len())
            .any(|s| btw(&eau, &s, &eb));

    let eaebu = cat(&[e, a, e, b, u]);
    r[5] = (1..u.len())
        .map(|i| u.suffix(i))
        .filter(|s| btw(&eaebu, s, &ebu))
        .all(|s| btw(&eau, &s, &ebu));

    r[6] = (1..u.len()).all(|i| {
        let s = u.suffix(i);
        if !btw(&eau, &s, &eb) {
            return true;
        }
        let pre = u.prefix(i);
        pairs.iter().any(|p| pre.ends_with(&p.a))
    });

    r[7] = (1..e.len()).all(|i| {
        let suf = e.suffix(i);
        pairs.iter().all(|p| {
            if !suf.ends_with(&p.a) {
                return true;
            }
            let e2 = suf.prefix(suf.len() - p.a.len());
            let lo = cat(&[&e2, &p.a, &eau]);
            let hi = cat(&[&e2, &p.b, &eau]);
            if btw(&lo, &eau, &hi) || btw(&hi, &eau, &lo) {
                e2.l_count() % 2 == 0
            } else {
                true
            }
        })
    });

    EauOutcome(r)
}

const CONDITION_TEXT: [&str; 8] = [
    "e starts with L3^(2l+1) L2",
    "e is restricted with an even number of L3/L2 letters",
    "u is restricted letters followed by a final C",
    "no suffix of eau starts with eb",
    "eau < u < eb, and no longer proper suffix of eau lies between eau and eb",
    "proper suffixes of u between eaebu and ebu lie between eau and ebu",
    "proper suffixes of u between eau and eb follow the first word of a pair",
    "suffixes of e ending in a pair word move eau only with even L3/L2 parity",
];

pub fn check_eau_conditions(e: &Word, a: &Word, b: &Word, u: &Word, pairs: &[ExchangeablePair]) -> Report {
    let out = eau_conditions(e, a, b, u, pairs);
    (0..8)
        .map(|i| {
            Claim::new(
                format!("eau.condition{}", i + 1),
                CONDITION_TEXT[i],
                out.0[i],
                json!({ "e": e.compact(), "a": a.compact(), "u": u.compact() }),
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Start of `a` in the word.
    pub position: usize,
    pub family: u8,
    pub j: usize,
    pub a_len: usize,
}

/// Every split `word = e a u` with `e`, `u` nonempty, `(a, b)` a listed pair,
/// passing all eight conditions.
pub fn search_decompositions(word: &Word, pairs: &[ExchangeablePair]) -> Vec<Decomposition> {
    let mut out = Vec::new();
    for p in pairs {
        for i in word.occurrences(&p.a) {
            let end = i + p.a.len();
            if i == 0 || end >= word.len() {
                continue;
            }
            let e = word.prefix(i);
            let u = word.suffix(end);
            if eau_conditions(&e, &p.a, &p.b, &u, pairs).all() {
                out.push(Decomposition {
                    position: i,
                    family: p.family,
                    j: p.j,
                    a_len: p.a.len(),
                });
            }
        }
    }
    out.sort_by_key(|d| (d.position, d.family, d.j));
    out
}
