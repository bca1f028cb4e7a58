use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::word::Word;
use super::CodingError;
use crate::angle::Angle;

/// An unordered pair of angles, stored with `a <= b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Leaf {
    pub a: Angle,
    pub b: Angle,
}

impl Leaf {
    pub fn new(x: Angle, y: Angle) -> Self {
        if x <= y {
            Leaf { a: x, b: y }
        } else {
            Leaf { a: y, b: x }
        }
    }

    /// The chord joining `theta` and `1 - theta`.
    pub fn vertical(theta: Angle) -> Self {
        let c = theta.conjugate();
        Leaf::new(theta, c)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn is_vertical(&self) -> bool {
        self.a.conjugate() == self.b
    }

    /// Endpoint in `[0, 1/2]` of a vertical leaf.
    pub fn upper(&self) -> &Angle {
        &self.a
    }

    pub fn lower(&self) -> &Angle {
        &self.b
    }

    /// `{2a, 2b}`.
    pub fn image(&self) -> Leaf {
        Leaf::new(self.a.double(), self.b.double())
    }

    /// The two leaves cross: their endpoints strictly interleave.
    pub fn crosses(&self, other: &Leaf) -> bool {
        let inside = |t: &Angle| &self.a < t && t < &self.b;
        let shared = self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b;
        !shared && inside(&other.a) != inside(&other.b)
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

impl fmt::Debug for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Leaf{self}")
    }
}

/// The vertical leaf coded by the periodic word `w^inf`.
///
/// Each letter acts on upper angles by an affine inverse branch; the upper
/// endpoint is the fixed point of their composite `theta -> s theta + t`.
pub fn periodic_leaf(w: &Word) -> Result<Leaf, CodingError> {
    let (Some(first), Some(last)) = (w.first(), w.last()) else {
        return Err(CodingError::InadmissibleCycle { word: String::new() });
    };
    if w.letters().iter().any(|l| l.is_c_class()) {
        return Err(CodingError::UnsupportedAlphabet { word: w.to_string() });
    }
    if !w.is_admissible() || !last.may_precede(first) {
        return Err(CodingError::InadmissibleCycle { word: w.to_string() });
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut s = BigRational::one();
    let mut t = BigRational::zero();
    for l in w.letters().iter().rev() {
        if l.reverses_order() {
            s = -s * &half;
            t = (BigRational::one() - t) * &half;
        } else {
            s *= &half;
            t *= &half;
        }
    }
    let theta = t / (BigRational::one() - s);
    Ok(Leaf::vertical(Angle::from_ratio(theta)))
}
