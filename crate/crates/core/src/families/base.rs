use serde::Serialize;

use crate::coding::{Letter, Word};

/// The constant words every family is built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseWords {
    pub a: Word,
    pub b: Word,
    pub c: Word,
    pub d: Word,
    pub u0: Word,
    pub u0_prime: Word,
    pub v0: Word,
    pub w0: Word,
    pub t0: Word,
}

/// `L3 L2 R3`, the common opening of v0, w0, t0, u0 and u0'.
pub fn opening() -> Word {
    Word::new(vec![Letter::L3, Letter::L2, Letter::R3])
}

impl BaseWords {
    pub fn new() -> Self {
        use Letter::*;
        let l3 = Word::new(vec![L3]);
        let a = l3.cat(&Word::new(vec![L2, R3]).pow(2));
        let b = l3.pow(5);
        let c = l3.pow(3).cat(&Word::new(vec![L2, C]));
        let d = l3.pow(2).cat(&a);
        let p = opening();
        BaseWords {
            u0: p.cat(&Word::new(vec![L3, L2, C])),
            u0_prime: p.cat(&c),
            v0: p.cat(&a),
            w0: p.cat(&b),
            t0: p.cat(&d),
            a,
            b,
            c,
            d,
        }
    }
}

impl Default for BaseWords {
    fn default() -> Self {
        BaseWords::new()
    }
}
