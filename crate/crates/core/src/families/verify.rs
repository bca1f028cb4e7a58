use serde_json::json;

use super::level::Families;
use super::substitute::capture_substitution;
use super::FamilyError;
use crate::coding::{strictly_between, word_less, Word};
use crate::report::{Claim, Report};

fn chain(words: &[&Word]) -> bool {
    words
        .windows(2)
        .all(|p| word_less(p[0], p[1]).unwrap_or(false))
}

/// `v_k < t_k < u_k < w_k` for every `k <= max_k` (with `u0'` at level 0),
/// `v0 < u0 < w0`, `a < d < c < b`, plus admissibility and parity of every word.
pub fn verify_order_chain(fam: &Families, max_k: usize) -> Report {
    let base = fam.base();
    let mut r = Report::new();
    r.push(Claim::new(
        "order.abcd",
        "a < d < c < b",
        chain(&[&base.a, &base.d, &base.c, &base.b]),
        json!({ "a": base.a, "d": base.d, "c": base.c, "b": base.b }),
    ));
    r.push(Claim::new(
        "order.base",
        "v0 < u0 < w0",
        chain(&[&base.v0, &base.u0, &base.w0]),
        json!({ "u0": base.u0 }),
    ));
    for k in 0..=max_k.min(fam.max_level()) {
        let l = fam.level(k);
        let u = if k == 0 { &base.u0_prime } else { &l.u };
        let ok = chain(&[&l.v, &l.t, u, &l.w]);
        r.push(Claim::new(
            format!("order.chain.k{k}"),
            if k == 0 {
                "v0 < t0 < u0' < w0".to_string()
            } else {
                format!("v_{k} < t_{k} < u_{k} < w_{k}")
            },
            ok,
            json!({ "k": k, "len_v": l.v.len(), "len_t": l.t.len(), "len_u": u.len(), "len_w": l.w.len() }),
        ));
        let words = [&l.v, &l.w, &l.u, &l.t];
        let admissible = words.iter().all(|w| w.is_admissible() && w.is_restricted());
        let counts: Vec<usize> = words.iter().map(|w| w.l_count()).collect();
        let odd = [&l.v, &l.w, &l.t].iter().all(|w| w.l_count() % 2 == 1);
        r.push(Claim::new(
            format!("parity.k{k}"),
            format!("v_{k}, w_{k}, t_{k} are admissible with an odd number of L3/L2 letters"),
            admissible && odd,
            json!({ "l_counts_v_w_u_t": counts }),
        ));
        // c and u0 carry an even number of L3/L2 letters, so u_k does too.
        let u_claim = (
            format!("parity.k{k}.u"),
            format!("u_{k} has an odd number of L3/L2 letters"),
            json!({ "l_count": l.u.l_count() }),
        );
        if l.u.l_count() % 2 == 1 {
            r.push(Claim::new(u_claim.0, u_claim.1, true, u_claim.2));
        } else {
            r.push(Claim::flagged(u_claim.0, u_claim.1, u_claim.2));
        }
    }
    r
}

/// Occurrences of `v_{k-1} t_{k-1}` in `v_k t_k`, `t_k a v_k` and `t_k a u_k`
/// are exactly the ones visible in the recursion.
pub fn verify_occurrences(fam: &Families, max_k: usize) -> Report {
    let a = &fam.base().a;
    let mut r = Report::new();
    for k in 1..=max_k.min(fam.max_level()) {
        let prev = fam.level(k - 1).vt();
        let l = fam.level(k);
        let tests = [
            ("vt", format!("v_{k} t_{k}"), l.v.cat(&l.t), vec![0, l.v.len()]),
            (
                "tav",
                format!("t_{k} a v_{k}"),
                Word::join([&l.t, a, &l.v]),
                vec![0, l.t.len() + a.len()],
            ),
            (
                "tau",
                format!("t_{k} a u_{k}"),
                Word::join([&l.t, a, &l.u]),
                vec![0, l.t.len() + a.len()],
            ),
        ];
        for (id, name, hay, expected) in tests {
            let found = hay.occurrences(&prev);
            r.push(Claim::new(
                format!("occurrences.k{k}.{id}"),
                format!("v_{} t_{} occurs in {name} only at the positions of the recursion", k - 1, k - 1),
                found == expected,
                json!({ "k": k, "found": found, "expected": expected, "length": hay.len() }),
            ));
        }
    }
    r
}

/// The proper suffixes `s` of `v_n u_n` with `v_n u_n < s < w_{k,n} u_{k,n}`
/// are exactly those starting with `v_k` or `t_k`, together with `u_n`.
pub fn verify_suffix_set(fam: &Families, n: usize, k: usize) -> Result<Claim, FamilyError> {
    let (w_kn, u_kn, _) = capture_substitution(fam, k, n)?;
    let ln = fam.level(n);
    let lk = fam.level(k);
    let y = ln.v.cat(&ln.u);
    let x = w_kn.cat(&u_kn);
    let mut between = 0usize;
    let mut mismatches = Vec::new();
    for i in 1..y.len() {
        let s = y.suffix(i);
        let predicted = strictly_between(&s, &y, &x);
        let expected = s.starts_with(&lk.v) || s.starts_with(&lk.t) || s == ln.u;
        between += predicted as usize;
        if predicted != expected {
            mismatches.push(json!({ "position": i, "between": predicted, "expected": expected }));
        }
    }
    Ok(Claim::new(
        format!("suffixes.n{n}.k{k}"),
        format!("suffixes of v_{n} u_{n} between v_{n} u_{n} and w_{{{k},{n}}} u_{{{k},{n}}} are those starting with v_{k} or t_{k}, and u_{n}"),
        mismatches.is_empty(),
        json!({ "n": n, "k": k, "suffixes": y.len() - 1, "between": between, "mismatches": mismatches }),
    ))
}

pub fn verify_suffix_sets(fam: &Families, max_n: usize) -> Result<Report, FamilyError> {
    let mut r = Report::new();
    for n in 0..=max_n.min(fam.max_level()) {
        for k in 0..=n {
            r.push(verify_suffix_set(fam, n, k)?);
        }
    }
    Ok(r)
}
