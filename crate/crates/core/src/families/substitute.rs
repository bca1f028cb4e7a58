use serde::Serialize;

use super::level::Families;
use super::FamilyError;
use crate::coding::Word;

/// Which substituted word to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Source {
    /// `w_{k,n}` from `v_n`.
    V,
    /// `u_{k,n}` from `u_n`.
    U,
    /// `r_{k,n}` from `t_n`.
    T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub word: Word,
    /// Start positions of the replaced blocks.
    pub sites: Vec<usize>,
}

/// Replace by `b` every block `a` that immediately precedes an occurrence of a
/// marker.
///
/// Occurrences already preceded by `b` are left alone, so the rule is
/// idempotent. A marker occurrence that is neither word-initial nor preceded
/// by `a` or `b` is rejected, as are replacement sites that would overlap.
pub fn substitute_before_markers(
    word: &Word,
    a: &Word,
    b: &Word,
    markers: &[&Word],
) -> Result<Substitution, FamilyError> {
    assert_eq!(a.len(), b.len(), "substitution must preserve length");
    let n = a.len();
    let mut sites = Vec::new();
    for m in markers {
        for p in word.occurrences(m) {
            if p == 0 {
                continue;
            }
            let before = if p >= n { &word.letters()[p - n..p] } else { &[][..] };
            if before == b.letters() {
                continue;
            }
            if before != a.letters() {
                return Err(FamilyError::UnmarkedOccurrence {
                    marker: m.compact(),
                    position: p,
                });
            }
            sites.push(p - n);
        }
    }
    sites.sort_unstable();
    sites.dedup();
    if let Some(w) = sites.windows(2).find(|w| w[1] - w[0] < n) {
        return Err(FamilyError::OverlapDetected { position: w[1] });
    }
    let mut out = word.letters().to_vec();
    for &s in &sites {
        out[s..s + n].copy_from_slice(b.letters());
    }
    Ok(Substitution {
        word: Word::new(out),
        sites,
    })
}

/// `w_{k,n}`, `u_{k,n}` and `r_{k,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubstitutedWords {
    pub k: usize,
    pub n: usize,
    pub w_kn: Word,
    pub u_kn: Word,
    pub r_kn: Word,
    pub capture_sites: Vec<usize>,
    pub mating_sites: Vec<usize>,
}

fn check_levels(fam: &Families, k: usize, n: usize) -> Result<(), FamilyError> {
    if k > n || n > fam.max_level() {
        return Err(FamilyError::InvalidLevels { k, n });
    }
    Ok(())
}

/// Substitute in `v_n u_n` with markers `v_k`, `t_k` and the tail `u_n`, then
/// split back at `|v_n|`. At `k = n` this yields `w_n u_n`.
pub fn capture_substitution(
    fam: &Families,
    k: usize,
    n: usize,
) -> Result<(Word, Word, Vec<usize>), FamilyError> {
    check_levels(fam, k, n)?;
    let (lk, ln) = (fam.level(k), fam.level(n));
    let base = fam.base();
    let s = substitute_before_markers(
        &ln.v.cat(&ln.u),
        &base.a,
        &base.b,
        &[&lk.v, &lk.t, &ln.u],
    )?;
    let cut = ln.v.len();
    Ok((s.word.prefix(cut), s.word.suffix(cut), s.sites))
}

/// Substitute in `v_n t_n` with markers `v_k`, `t_k` and the tail `t_n`.
pub fn mating_substitution(
    fam: &Families,
    k: usize,
    n: usize,
) -> Result<(Word, Word, Vec<usize>), FamilyError> {
    check_levels(fam, k, n)?;
    let (lk, ln) = (fam.level(k), fam.level(n));
    let base = fam.base();
    let s = substitute_before_markers(
        &ln.v.cat(&ln.t),
        &base.a,
        &base.b,
        &[&lk.v, &lk.t, &ln.t],
    )?;
    let cut = ln.v.len();
    Ok((s.word.prefix(cut), s.word.suffix(cut), s.sites))
}

pub fn substituted_words(fam: &Families, k: usize, n: usize) -> Result<SubstitutedWords, FamilyError> {
    let (w_kn, u_kn, capture_sites) = capture_substitution(fam, k, n)?;
    let (w_alt, r_kn, mating_sites) = mating_substitution(fam, k, n)?;
    if w_alt != w_kn {
        return Err(FamilyError::InconsistentSubstitution { k, n });
    }
    Ok(SubstitutedWords {
        k,
        n,
        w_kn,
        u_kn,
        r_kn,
        capture_sites,
        mating_sites,
    })
}

pub fn substitute(fam: &Families, k: usize, n: usize, source: Source) -> Result<Word, FamilyError> {
    Ok(match source {
        Source::V => capture_substitution(fam, k, n)?.0,
        Source::U => capture_substitution(fam, k, n)?.1,
        Source::T => mating_substitution(fam, k, n)?.1,
    })
}
