use serde::Serialize;

use super::base::BaseWords;
use crate::coding::Word;

/// The four words of one level of the recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyLevel {
    pub k: usize,
    pub v: Word,
    pub w: Word,
    pub u: Word,
    pub t: Word,
}

impl FamilyLevel {
    fn zero(base: &BaseWords) -> Self {
        FamilyLevel {
            k: 0,
            v: base.v0.clone(),
            w: base.w0.clone(),
            u: base.u0.clone(),
            t: base.t0.clone(),
        }
    }

    /// `v_k t_k`, the common opening of every word of level `k + 1`.
    pub fn vt(&self) -> Word {
        self.v.cat(&self.t)
    }

    fn next(&self, base: &BaseWords) -> Self {
        let p = self.vt();
        FamilyLevel {
            k: self.k + 1,
            v: p.cat(&base.a),
            w: p.cat(&base.b),
            u: p.cat(&base.c),
            t: p.cat(&base.d),
        }
    }
}

/// Levels `0..=max_k`, built by the literal recursion.
#[derive(Debug, Clone)]
pub struct Families {
    base: BaseWords,
    levels: Vec<FamilyLevel>,
}

impl Families {
    pub fn up_to(max_k: usize) -> Self {
        let base = BaseWords::new();
        let mut levels = vec![FamilyLevel::zero(&base)];
        while levels.len() <= max_k {
            let next = levels.last().unwrap().next(&base);
            levels.push(next);
        }
        Families { base, levels }
    }

    pub fn base(&self) -> &BaseWords {
        &self.base
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// Panics if `k` exceeds the built range.
    pub fn level(&self, k: usize) -> &FamilyLevel {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[FamilyLevel] {
        &self.levels
    }
}

pub fn build_level(k: usize) -> FamilyLevel {
    Families::up_to(k).level(k).clone()
}
