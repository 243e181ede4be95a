//! Braid words in the Artin group `B_n`, closure kinds and the equivalence
//! moves used for invariance testing.
//!
//! Words are read top to bottom: the first letter is the topmost crossing,
//! and every representation in this crate maps a word `l₁ l₂ … l_m` to the
//! product `ρ(l₁) ρ(l₂) … ρ(l_m)` in that order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One letter `s_k^{±1}`; `index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: u32,
    pub positive: bool,
}

impl Letter {
    pub fn new(signed: i32) -> Self {
        Self { index: signed.unsigned_abs(), positive: signed > 0 }
    }

    pub fn signed(&self) -> i32 {
        if self.positive {
            self.index as i32
        } else {
            -(self.index as i32)
        }
    }

    pub fn inverse(&self) -> Self {
        Self { index: self.index, positive: !self.positive }
    }

    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<Letter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    /// Strand `k` at the bottom joined to strand `k` at the top.
    Trace,
    /// Caps on strands (1,2), (3,4), … at the top and cups at the bottom.
    Plat,
}

impl FromStr for Closure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" => Ok(Closure::Trace),
            "plat" => Ok(Closure::Plat),
            other => Err(Error::Parse { position: 0, message: format!("unknown closure `{other}`") }),
        }
    }
}

/// A single equivalence move on a braid word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Insert `s_i s_i⁻¹` (or `s_i⁻¹ s_i` for negative `i`) before letter `pos`.
    InsertCancel { generator: i32, pos: usize },
    /// `s_i s_{i+1} s_i <-> s_{i+1} s_i s_{i+1}` on the three letters at `pos`.
    BraidRelation { pos: usize },
    /// Swap the letters at `pos`, `pos + 1` when their indices differ by more than 1.
    FarCommute { pos: usize },
    /// `g · b · g⁻¹` for the single letter `g`.
    Conjugate { generator: i32 },
    /// Add a strand and append `s_n^{±1}` (Markov stabilization).
    Stabilize { positive: bool },
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse { position: 0, message: "strand count must be positive".into() });
        }
        for (pos, l) in letters.iter().enumerate() {
            if l.index == 0 || l.index >= strands {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("generator {} out of range for {strands} strands", l.signed()),
                });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn from_signed(strands: u32, word: &[i32]) -> Result<Self> {
        if let Some(pos) = word.iter().position(|&x| x == 0) {
            return Err(Error::Parse { position: pos, message: "zero is not a generator".into() });
        }
        Self::new(strands, word.iter().map(|&x| Letter::new(x)).collect())
    }

    pub fn identity(strands: u32) -> Self {
        Self { strands: strands.max(1), letters: Vec::new() }
    }

    /// Parses whitespace-separated nonzero integers, optionally preceded by
    /// a header token `n=<strands>`. When neither the header nor `strands`
    /// is given, the count is `max|index| + 1`.
    pub fn parse(text: &str, strands: Option<u32>) -> Result<Self> {
        let mut header = None;
        let mut word = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            if let Some(rest) = tok.strip_prefix("n=") {
                if pos != 0 {
                    return Err(Error::Parse { position: pos, message: "header must come first".into() });
                }
                header = Some(rest.parse::<u32>().map_err(|_| Error::Parse {
                    position: pos,
                    message: format!("bad strand header `{tok}`"),
                })?);
                continue;
            }
            let v: i32 = tok.parse().map_err(|_| Error::Parse {
                position: pos,
                message: format!("`{tok}` is not an integer"),
            })?;
            if v == 0 {
                return Err(Error::Parse { position: pos, message: "zero is not a generator".into() });
            }
            word.push((pos, v));
        }
        let inferred = word.iter().map(|(_, v)| v.unsigned_abs() + 1).max().unwrap_or(1);
        let n = match (strands, header) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Parse {
                    position: 0,
                    message: format!("strand count {a} conflicts with header n={b}"),
                })
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => inferred,
        };
        if n == 0 {
            return Err(Error::Parse { position: 0, message: "strand count must be positive".into() });
        }
        for (pos, v) in &word {
            if v.unsigned_abs() >= n {
                return Err(Error::Parse {
                    position: *pos,
                    message: format!("generator {v} out of range for {n} strands"),
                });
            }
        }
        Ok(Self { strands: n, letters: word.into_iter().map(|(_, v)| Letter::new(v)).collect() })
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed(&self) -> Vec<i32> {
        self.letters.iter().map(Letter::signed).collect()
    }

    /// Sum of the letter exponents; the writhe of the closure.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(Letter::sign).sum()
    }

    /// `self` followed (below) by `other`.
    pub fn compose(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch {
                expected: self.strands as usize,
                got: other.strands as usize,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// Every crossing switched; the closure is the mirror image.
    pub fn mirror(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().map(Letter::inverse).collect() }
    }

    /// Image in `S_n`: `perm[p]` is the bottom position reached by the strand
    /// starting at top position `p` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let n = self.strands as usize;
        // at[pos] = top position of the strand currently at pos
        let mut at: Vec<usize> = (0..n).collect();
        for l in &self.letters {
            let i = l.index as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; n];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    pub fn check_closure(&self, closure: Closure) -> Result<()> {
        if closure == Closure::Plat && self.strands % 2 != 0 {
            return Err(Error::Domain(format!(
                "plat closure needs an even strand count, got {}",
                self.strands
            )));
        }
        Ok(())
    }

    pub fn apply(&self, mv: Move) -> Result<Self> {
        let mut letters = self.letters.clone();
        let mut strands = self.strands;
        match mv {
            Move::InsertCancel { generator, pos } => {
                if pos > letters.len() {
                    return Err(Error::InapplicableMove { position: pos, reason: "past end of word".into() });
                }
                if generator == 0 || generator.unsigned_abs() >= strands {
                    return Err(Error::InapplicableMove {
                        position: pos,
                        reason: format!("generator {generator} out of range"),
                    });
                }
                let l = Letter::new(generator);
                letters.splice(pos..pos, [l, l.inverse()]);
            }
            Move::BraidRelation { pos } => {
                let w = letters.get(pos..pos + 3).ok_or_else(|| Error::InapplicableMove {
                    position: pos,
                    reason: "fewer than three letters".into(),
                })?;
                let (x, y, z) = (w[0], w[1], w[2]);
                let same_sign = x.positive == y.positive && y.positive == z.positive;
                if !(same_sign && x == z && x.index.abs_diff(y.index) == 1) {
                    return Err(Error::InapplicableMove {
                        position: pos,
                        reason: "letters do not form s_i s_j s_i with |i-j| = 1".into(),
                    });
                }
                letters[pos] = y;
                letters[pos + 1] = x;
                letters[pos + 2] = y;
            }
            Move::FarCommute { pos } => {
                let w = letters.get(pos..pos + 2).ok_or_else(|| Error::InapplicableMove {
                    position: pos,
                    reason: "fewer than two letters".into(),
                })?;
                if w[0].index.abs_diff(w[1].index) <= 1 {
                    return Err(Error::InapplicableMove {
                        position: pos,
                        reason: "generators are adjacent".into(),
                    });
                }
                letters.swap(pos, pos + 1);
            }
            Move::Conjugate { generator } => {
                if generator == 0 || generator.unsigned_abs() >= strands {
                    return Err(Error::InapplicableMove {
                        position: 0,
                        reason: format!("generator {generator} out of range"),
                    });
                }
                let g = Letter::new(generator);
                letters.insert(0, g);
                letters.push(g.inverse());
            }
            Move::Stabilize { positive } => {
                letters.push(Letter { index: strands, positive });
                strands += 1;
            }
        }
        Ok(Self { strands, letters })
    }

    /// All moves applicable to this word (stabilization included once per sign).
    pub fn applicable_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        let n = self.strands as i32;
        for pos in 0..=self.letters.len() {
            for g in 1..n {
                out.push(Move::InsertCancel { generator: g, pos });
                out.push(Move::InsertCancel { generator: -g, pos });
            }
        }
        for pos in 0..self.letters.len() {
            if self.apply(Move::BraidRelation { pos }).is_ok() {
                out.push(Move::BraidRelation { pos });
            }
            if self.apply(Move::FarCommute { pos }).is_ok() {
                out.push(Move::FarCommute { pos });
            }
        }
        for g in 1..n {
            out.push(Move::Conjugate { generator: g });
            out.push(Move::Conjugate { generator: -g });
        }
        out.push(Move::Stabilize { positive: true });
        out.push(Move::Stabilize { positive: false });
        out
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.strands)?;
        for l in &self.letters {
            write!(f, " {}", l.signed())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let b = BraidWord::parse("1 1 1", Some(2)).unwrap();
        assert_eq!(b.signed(), vec![1, 1, 1]);
        assert_eq!(b.strands(), 2);
        let b = BraidWord::parse("1 -2 1", Some(3)).unwrap();
        assert_eq!(b.signed(), vec![1, -2, 1]);
        let b = BraidWord::parse("3 1", Some(4)).unwrap();
        assert_eq!(b.apply(Move::FarCommute { pos: 0 }).unwrap().signed(), vec![1, 3]);
        let b = BraidWord::parse("n=5 2 -1", None).unwrap();
        assert_eq!(b.strands(), 5);
        assert_eq!(BraidWord::parse("2 -1", None).unwrap().strands(), 3);
    }

    #[test]
    fn parse_errors_carry_position() {
        match BraidWord::parse("1 0 1", Some(2)) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 1),
            other => panic!("unexpected {other:?}"),
        }
        match BraidWord::parse("1 1 3", Some(3)) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(BraidWord::parse("1 x", None).is_err());
        assert!(BraidWord::parse("n=2 1", Some(3)).is_err());
    }

    #[test]
    fn display_round_trips() {
        let b = BraidWord::parse("1 -2 1 3", Some(5)).unwrap();
        let again = BraidWord::parse(&b.to_string(), None).unwrap();
        assert_eq!(b, again);
        let id = BraidWord::identity(3);
        assert_eq!(BraidWord::parse(&id.to_string(), None).unwrap(), id);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(BraidWord::from_signed(2, &[1, 1, 1]).unwrap().exponent_sum(), 3);
        assert_eq!(BraidWord::identity(3).exponent_sum(), 0);
        assert_eq!(BraidWord::from_signed(3, &[1, -2]).unwrap().exponent_sum(), 0);
    }

    #[test]
    fn permutations() {
        assert_eq!(BraidWord::from_signed(2, &[1]).unwrap().permutation(), vec![1, 0]);
        assert_eq!(BraidWord::from_signed(2, &[1, 1]).unwrap().permutation(), vec![0, 1]);
        let a = BraidWord::from_signed(3, &[1, 2, 1]).unwrap().permutation();
        let b = BraidWord::from_signed(3, &[2, 1, 2]).unwrap().permutation();
        assert_eq!(a, b);
        assert_eq!(a, vec![2, 1, 0]);
    }

    #[test]
    fn moves() {
        let id = BraidWord::identity(2);
        let b = id.apply(Move::InsertCancel { generator: 1, pos: 0 }).unwrap();
        assert_eq!(b.signed(), vec![1, -1]);

        let b = BraidWord::from_signed(3, &[1, 2, 1]).unwrap();
        assert_eq!(b.apply(Move::BraidRelation { pos: 0 }).unwrap().signed(), vec![2, 1, 2]);

        let t = BraidWord::from_signed(2, &[1, 1, 1]).unwrap();
        let s = t.apply(Move::Stabilize { positive: true }).unwrap();
        assert_eq!(s.strands(), 3);
        assert_eq!(s.signed(), vec![1, 1, 1, 2]);

        assert!(t.apply(Move::BraidRelation { pos: 0 }).is_err());
        assert!(t.apply(Move::FarCommute { pos: 0 }).is_err());
        assert!(matches!(
            t.apply(Move::FarCommute { pos: 7 }),
            Err(Error::InapplicableMove { position: 7, .. })
        ));
    }

    #[test]
    fn plat_needs_even_strands() {
        assert!(BraidWord::identity(3).check_closure(Closure::Plat).is_err());
        assert!(BraidWord::identity(4).check_closure(Closure::Plat).is_ok());
    }

    fn arb_word(n: u32) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1..n as i32, any::<bool>()), 0..10).prop_map(move |v| {
            let w: Vec<i32> = v.into_iter().map(|(i, s)| if s { i } else { -i }).collect();
            BraidWord::from_signed(n, &w).unwrap()
        })
    }

    proptest! {
        #[test]
        fn permutation_is_a_homomorphism(x in arb_word(4), y in arb_word(4)) {
            let px = x.permutation();
            let py = y.permutation();
            let pxy = x.compose(&y).unwrap().permutation();
            // strand at top p goes to px[p] after x, then py[px[p]] after y
            let expect: Vec<usize> = (0..4).map(|p| py[px[p]]).collect();
            prop_assert_eq!(pxy, expect);
        }

        #[test]
        fn exponent_sum_under_moves(x in arb_word(4), pick in 0usize..1000) {
            let moves = x.applicable_moves();
            let mv = moves[pick % moves.len()];
            let y = x.apply(mv).unwrap();
            let expected = match mv {
                Move::Stabilize { positive: true } => x.exponent_sum() + 1,
                Move::Stabilize { positive: false } => x.exponent_sum() - 1,
                _ => x.exponent_sum(),
            };
            prop_assert_eq!(y.exponent_sum(), expected);
        }
    }
}
