use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ExchangeError;
use crate::angle::{ratio_serde, reduce_mod_one, Angle};
use crate::coding::{between_letters, region_of, upper_arc, Arc, Letter, Word};

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Which half of the unit circle a connecting arc lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Bot,
}

impl Side {
    /// Top iff `0 < theta < 1/2`.
    pub fn of(theta: &BigRational) -> Side {
        if theta.is_positive() && theta < &half() {
            Side::Top
        } else {
            Side::Bot
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Top => "top",
            Side::Bot => "bot",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The region strictly between D(y) (right) and D(x) (left).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DPrime {
    pub upper: Arc,
    /// The word of x, bounding from the left.
    pub left_word: Word,
    /// The word of y, bounding from the right.
    pub right_word: Word,
}

impl DPrime {
    /// `s` codes a region strictly between D(y) and D(x).
    pub fn holds(&self, s: &[Letter]) -> bool {
        between_letters(s, self.right_word.letters(), self.left_word.letters())
    }

    /// `s` is `prefix` followed by a word strictly between, i.e. the point
    /// lies in the lifted copy `prefix D'`.
    pub fn lifted_holds(&self, s: &[Letter], prefix: &[Letter]) -> bool {
        s.len() > prefix.len() && s.starts_with(prefix) && self.holds(&s[prefix.len()..])
    }

    /// Upper trace of `prefix D'`.
    pub fn lifted_arc(&self, prefix: &Word) -> Result<Arc, ExchangeError> {
        Ok(self.upper.pull_back_word(prefix.letters())?)
    }
}

/// The strictly-between region of `y < x`.
pub fn build_dprime(x: &Word, y: &Word) -> Result<DPrime, ExchangeError> {
    let (ax, ay) = (upper_arc(x)?, upper_arc(y)?);
    if x == y || ay.hi >= ax.lo {
        return Err(ExchangeError::EmptyRegion {
            x: x.compact(),
            y: y.compact(),
        });
    }
    Ok(DPrime {
        upper: Arc::open(ay.hi, ax.lo),
        left_word: x.clone(),
        right_word: y.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AttachedDisc {
    pub prefix: Word,
    pub tag: Side,
    #[serde(with = "ratio_serde")]
    pub attach: BigRational,
}

impl fmt::Display for AttachedDisc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} D'({})", self.prefix.compact(), self.tag)
    }
}

/// Two lifted copies of D' joined by an exterior arc that leaves the circle
/// at `left.attach` and sweeps through `sweep` turns to `right.attach`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExchangeComponent {
    pub left: AttachedDisc,
    pub right: AttachedDisc,
    #[serde(with = "ratio_serde")]
    pub sweep: BigRational,
}

impl ExchangeComponent {
    /// Length of the disc prefixes.
    pub fn depth(&self) -> usize {
        self.left.prefix.len()
    }

    pub fn tags(&self) -> (Side, Side) {
        (self.left.tag, self.right.tag)
    }

    /// `theta` lies strictly inside the angular interval swept by the
    /// connecting arc.
    pub fn in_sweep(&self, theta: &BigRational) -> bool {
        let la = &self.left.attach;
        if self.sweep.is_positive() {
            let d = reduce_mod_one(&(theta - la));
            d.is_positive() && d < self.sweep
        } else {
            let d = reduce_mod_one(&(la - theta));
            d.is_positive() && d < -&self.sweep
        }
    }

    /// The disc on the other end from the one with `prefix`.
    pub fn partner(&self, prefix: &[Letter]) -> Option<&AttachedDisc> {
        if self.left.prefix.letters() == prefix {
            Some(&self.right)
        } else if self.right.prefix.letters() == prefix {
            Some(&self.left)
        } else {
            None
        }
    }

    /// Unordered `(prefix, tag)` pairs, for comparing rows regardless of
    /// which end is written first.
    pub fn ends(&self) -> [(Word, Side); 2] {
        let mut e = [
            (self.left.prefix.clone(), self.left.tag),
            (self.right.prefix.clone(), self.right.tag),
        ];
        e.sort();
        e
    }

    /// The two children under the inverse branches of doubling.
    pub fn lift(&self) -> Result<[ExchangeComponent; 2], ExchangeError> {
        let two = BigInt::from(2);
        let sweep = &self.sweep / &two;
        let left_half = &self.left.attach / &two;
        let right_half = &self.right.attach / &two;
        let child = |off: BigRational| -> Result<ExchangeComponent, ExchangeError> {
            let la = reduce_mod_one(&(&left_half + &off));
            let ra = reduce_mod_one(&(&la + &sweep));
            if ra != right_half && ra != reduce_mod_one(&(&right_half + half())) {
                return Err(ExchangeError::LiftMismatch {
                    prefix: self.left.prefix.compact(),
                    angle: crate::angle::ratio_string(&ra),
                });
            }
            Ok(ExchangeComponent {
                left: lift_disc(&self.left, la)?,
                right: lift_disc(&self.right, ra)?,
                sweep: sweep.clone(),
            })
        };
        Ok([child(BigRational::zero())?, child(half())?])
    }
}

fn lift_disc(parent: &AttachedDisc, attach: BigRational) -> Result<AttachedDisc, ExchangeError> {
    let mismatch = || ExchangeError::LiftMismatch {
        prefix: parent.prefix.compact(),
        angle: crate::angle::ratio_string(&attach),
    };
    let letter = region_of(&Angle::from_ratio(attach.clone()))
        .map_err(|_| mismatch())?
        .coarse();
    if let Some(first) = parent.prefix.first() {
        if !letter.may_precede(first) {
            return Err(mismatch());
        }
    }
    Ok(AttachedDisc {
        prefix: parent.prefix.prepend(letter),
        tag: Side::of(&attach),
        attach,
    })
}

impl fmt::Display for ExchangeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} D'({}) <-> ({}) {} D'",
            self.left.prefix.compact(),
            self.left.tag,
            self.right.tag,
            self.right.prefix.compact()
        )
    }
}

/// The component exchanging the two preimages of D': attach points at the
/// halves of the midpoint of D', the L3 copy on the lower circle, joined by a
/// half-turn arc through angle 0.
pub fn seed_component(d: &DPrime) -> ExchangeComponent {
    let mid = d.upper.midpoint() / BigInt::from(2);
    ExchangeComponent {
        left: AttachedDisc {
            prefix: Word::new(vec![Letter::L3]),
            tag: Side::Bot,
            attach: &mid + half(),
        },
        right: AttachedDisc {
            prefix: Word::new(vec![Letter::R3]),
            tag: Side::Top,
            attach: mid,
        },
        sweep: half(),
    }
}

/// Lazily lifted components, indexed by the prefix of either disc.
#[derive(Debug, Clone)]
pub struct ComponentTree {
    seed: ExchangeComponent,
    memo: HashMap<Word, ExchangeComponent>,
}

impl ComponentTree {
    pub fn new(seed: ExchangeComponent) -> Self {
        ComponentTree {
            seed,
            memo: HashMap::new(),
        }
    }

    pub fn seed(&self) -> &ExchangeComponent {
        &self.seed
    }

    /// The component one of whose discs is `prefix D'`.
    pub fn component(&mut self, prefix: &[Letter]) -> Result<ExchangeComponent, ExchangeError> {
        let missing = || ExchangeError::UntrackedPrefix {
            prefix: Word::new(prefix.to_vec()).compact(),
        };
        match prefix.len() {
            0 => Err(missing()),
            1 => self
                .seed
                .partner(prefix)
                .map(|_| self.seed.clone())
                .ok_or_else(missing),
            _ => {
                let key = Word::new(prefix.to_vec());
                if let Some(c) = self.memo.get(&key) {
                    return Ok(c.clone());
                }
                // Walk down to the deepest memoized ancestor, then lift back up.
                let mut start = prefix.len() - 1;
                while start > 1 && !self.memo.contains_key(&Word::new(prefix[prefix.len() - start..].to_vec())) {
                    start -= 1;
                }
                let mut cur = if start == 1 {
                    let tail = &prefix[prefix.len() - 1..];
                    self.seed.partner(tail).ok_or_else(missing)?;
                    self.seed.clone()
                } else {
                    self.memo[&Word::new(prefix[prefix.len() - start..].to_vec())].clone()
                };
                for len in start + 1..=prefix.len() {
                    let want = &prefix[prefix.len() - len..];
                    let next = cur
                        .lift()?
                        .into_iter()
                        .find(|c| c.partner(want).is_some())
                        .ok_or_else(missing)?;
                    self.memo.insert(next.left.prefix.clone(), next.clone());
                    self.memo.insert(next.right.prefix.clone(), next.clone());
                    cur = next;
                }
                Ok(cur)
            }
        }
    }
}
