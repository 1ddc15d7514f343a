//! Reduced decompositions of the longest element of the symmetric group
//! `S_{n+1}` and the braid moves connecting them.
//!
//! Letters are 1-based simple-reflection indices and positions are 1-based,
//! matching the usual `s_1..s_n` / `t_1..t_N` labelling.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

/// Default cap on the rank for exhaustive word enumeration.
pub const DEFAULT_RANK_CAP: u8 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("{kind:?} move not applicable at position {pos}")]
    MoveNotApplicable { kind: MoveKind, pos: usize },
    #[error("rank {n} exceeds enumeration cap {cap}")]
    RankTooLarge { n: u8, cap: u8 },
}

/// A reduced decomposition of the longest element of `S_{n+1}`.
///
/// Immutable value object; ordering is lexicographic on the letters, so sets
/// of words and reports derived from them are deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord {
    n: u8,
    letters: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    Two,
    Three,
}

/// A braid move at a 1-based position (the leftmost letter affected).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidMove {
    pub kind: MoveKind,
    pub pos: usize,
}

impl BraidMove {
    pub fn two(pos: usize) -> Self {
        BraidMove { kind: MoveKind::Two, pos }
    }

    pub fn three(pos: usize) -> Self {
        BraidMove { kind: MoveKind::Three, pos }
    }
}

impl ReducedWord {
    /// Validate a letter sequence as a reduced word for the longest element.
    ///
    /// Tracks the column arrangement: every step must swap an ascending
    /// adjacent pair (length-increasing), and the final arrangement must be
    /// the full reversal.
    pub fn new(n: u8, letters: Vec<u8>) -> Result<Self, WeylError> {
        if n == 0 {
            return Err(WeylError::NotReduced("rank must be positive".into()));
        }
        let expected = n as usize * (n as usize + 1) / 2;
        if letters.len() != expected {
            return Err(WeylError::NotReduced(format!(
                "length {} but the longest element of S_{} has length {}",
                letters.len(),
                n + 1,
                expected
            )));
        }
        let mut arrangement: Vec<u8> = (1..=n + 1).collect();
        for (idx, &c) in letters.iter().enumerate() {
            if c == 0 || c > n {
                return Err(WeylError::NotReduced(format!(
                    "letter {} at position {} outside 1..={}",
                    c,
                    idx + 1,
                    n
                )));
            }
            let c = c as usize - 1;
            if arrangement[c] > arrangement[c + 1] {
                return Err(WeylError::NotReduced(format!(
                    "step {} decreases Coxeter length",
                    idx + 1
                )));
            }
            arrangement.swap(c, c + 1);
        }
        // length N with every step increasing forces the reversal, but check anyway
        let reversed: Vec<u8> = (1..=n + 1).rev().collect();
        if arrangement != reversed {
            return Err(WeylError::NotReduced(
                "final permutation is not the order reversal".into(),
            ));
        }
        Ok(ReducedWord { n, letters })
    }

    /// Parse whitespace-separated letters; the rank defaults to the largest
    /// letter unless given explicitly.
    pub fn parse(text: &str, n: Option<u8>) -> Result<Self, WeylError> {
        let letters: Vec<u8> = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u8>()
                    .map_err(|_| WeylError::NotReduced(format!("bad letter {tok:?}")))
            })
            .collect::<Result<_, _>>()?;
        let n = match n {
            Some(n) => n,
            None => *letters
                .iter()
                .max()
                .ok_or_else(|| WeylError::NotReduced("empty word".into()))?,
        };
        ReducedWord::new(n, letters)
    }

    pub fn rank(&self) -> u8 {
        self.n
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Number of letters, `n(n+1)/2`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Moves applicable to this word, positions ascending, 2-moves first at
    /// equal positions.
    pub fn applicable_moves(&self) -> Vec<BraidMove> {
        let mut out = Vec::new();
        let l = &self.letters;
        for pos in 1..=l.len() {
            if pos + 1 <= l.len() {
                let (a, b) = (l[pos - 1], l[pos]);
                if a.abs_diff(b) > 1 {
                    out.push(BraidMove::two(pos));
                }
            }
            if pos + 2 <= l.len() {
                let (a, b, c) = (l[pos - 1], l[pos], l[pos + 1]);
                if a == c && a.abs_diff(b) == 1 {
                    out.push(BraidMove::three(pos));
                }
            }
        }
        out
    }

    pub fn move_applicable(&self, mv: BraidMove) -> bool {
        let l = &self.letters;
        match mv.kind {
            MoveKind::Two => {
                mv.pos >= 1
                    && mv.pos + 1 <= l.len()
                    && l[mv.pos - 1].abs_diff(l[mv.pos]) > 1
            }
            MoveKind::Three => {
                mv.pos >= 1
                    && mv.pos + 2 <= l.len()
                    && l[mv.pos - 1] == l[mv.pos + 1]
                    && l[mv.pos - 1].abs_diff(l[mv.pos]) == 1
            }
        }
    }

    /// Apply a braid move; involutive (the same move undoes itself).
    pub fn apply_move(&self, mv: BraidMove) -> Result<ReducedWord, WeylError> {
        if !self.move_applicable(mv) {
            return Err(WeylError::MoveNotApplicable { kind: mv.kind, pos: mv.pos });
        }
        let mut letters = self.letters.clone();
        match mv.kind {
            MoveKind::Two => letters.swap(mv.pos - 1, mv.pos),
            MoveKind::Three => {
                letters.swap(mv.pos - 1, mv.pos);
                letters[mv.pos + 1] = letters[mv.pos - 1];
            }
        }
        Ok(ReducedWord { n: self.n, letters })
    }

    /// The standard reduced word `s_1 s_2 s_1 s_3 s_2 s_1 ...`.
    pub fn standard(n: u8) -> ReducedWord {
        let mut letters = Vec::new();
        for row in 1..=n {
            for c in (1..=row).rev() {
                letters.push(c);
            }
        }
        ReducedWord::new(n, letters).expect("standard word is reduced")
    }
}

impl std::fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let toks: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// All reduced decompositions of the longest element, capped at
/// [`DEFAULT_RANK_CAP`] unless a larger cap is passed explicitly.
pub fn enumerate_words(n: u8) -> Result<BTreeSet<ReducedWord>, WeylError> {
    enumerate_words_with_cap(n, DEFAULT_RANK_CAP)
}

pub fn enumerate_words_with_cap(n: u8, cap: u8) -> Result<BTreeSet<ReducedWord>, WeylError> {
    if n > cap {
        return Err(WeylError::RankTooLarge { n, cap });
    }
    let total = n as usize * (n as usize + 1) / 2;
    let mut out = BTreeSet::new();
    let mut arrangement: Vec<u8> = (1..=n + 1).collect();
    let mut letters: Vec<u8> = Vec::with_capacity(total);
    fn go(
        n: u8,
        total: usize,
        arrangement: &mut Vec<u8>,
        letters: &mut Vec<u8>,
        out: &mut BTreeSet<ReducedWord>,
    ) {
        if letters.len() == total {
            out.insert(ReducedWord { n, letters: letters.clone() });
            return;
        }
        for c in 1..=n as usize {
            if arrangement[c - 1] < arrangement[c] {
                arrangement.swap(c - 1, c);
                letters.push(c as u8);
                go(n, total, arrangement, letters, out);
                letters.pop();
                arrangement.swap(c - 1, c);
            }
        }
    }
    go(n, total, &mut arrangement, &mut letters, &mut out);
    Ok(out)
}

/// Shortest sequence of braid moves transforming `a` into `b`, found by
/// breadth-first search over the reduced-word graph.
///
/// Connectivity of the graph is a theorem, so failure to reach `b` can only
/// be an implementation bug and aborts.
pub fn find_move_sequence(a: &ReducedWord, b: &ReducedWord) -> Vec<BraidMove> {
    assert_eq!(a.rank(), b.rank(), "words must share a rank");
    if a == b {
        return Vec::new();
    }
    let mut parents: HashMap<ReducedWord, (ReducedWord, BraidMove)> = HashMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(a.clone());
    parents.insert(a.clone(), (a.clone(), BraidMove::two(0)));
    while let Some(w) = queue.pop_front() {
        for mv in w.applicable_moves() {
            let next = w.apply_move(mv).expect("applicable move");
            if parents.contains_key(&next) {
                continue;
            }
            parents.insert(next.clone(), (w.clone(), mv));
            if &next == b {
                let mut seq = Vec::new();
                let mut cur = next;
                while &cur != a {
                    let (prev, mv) = parents[&cur].clone();
                    seq.push(mv);
                    cur = prev;
                }
                seq.reverse();
                return seq;
            }
            queue.push_back(next);
        }
    }
    unreachable!("reduced-word graph is connected; BFS must reach the target")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_word_is_reduced() {
        assert!(ReducedWord::new(3, vec![3, 1, 2, 1, 3, 2]).is_ok());
    }

    #[test]
    fn rank_one_word() {
        assert!(ReducedWord::new(1, vec![1]).is_ok());
    }

    #[test]
    fn repeated_letter_is_not_reduced() {
        let err = ReducedWord::new(2, vec![1, 1, 2]).unwrap_err();
        assert!(matches!(err, WeylError::NotReduced(_)));
    }

    #[test]
    fn three_move_on_121() {
        let w = ReducedWord::new(2, vec![1, 2, 1]).unwrap();
        let w2 = w.apply_move(BraidMove::three(1)).unwrap();
        assert_eq!(w2.letters(), &[2, 1, 2]);
        assert_eq!(w2.apply_move(BraidMove::three(1)).unwrap(), w);
    }

    #[test]
    fn two_move_on_paper_word() {
        let w = ReducedWord::new(3, vec![3, 1, 2, 1, 3, 2]).unwrap();
        let w2 = w.apply_move(BraidMove::two(1)).unwrap();
        assert_eq!(w2.letters(), &[1, 3, 2, 1, 3, 2]);
    }

    #[test]
    fn two_move_rejected_on_adjacent_letters() {
        let w = ReducedWord::new(2, vec![1, 2, 1]).unwrap();
        let err = w.apply_move(BraidMove::two(1)).unwrap_err();
        assert!(matches!(err, WeylError::MoveNotApplicable { .. }));
    }

    #[test]
    fn enumerate_small_ranks() {
        assert_eq!(enumerate_words(1).unwrap().len(), 1);
        let two = enumerate_words(2).unwrap();
        let letters: Vec<Vec<u8>> = two.iter().map(|w| w.letters().to_vec()).collect();
        assert_eq!(letters, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(enumerate_words(3).unwrap().len(), 16);
        assert!(matches!(enumerate_words(5), Err(WeylError::RankTooLarge { .. })));
    }

    /// Hook length formula for the staircase shape: the number of reduced
    /// words of the longest element is N! over the product of hooks.
    fn staircase_word_count(n: usize) -> u64 {
        let total = n * (n + 1) / 2;
        let mut numer: u64 = 1;
        for k in 1..=total {
            numer *= k as u64;
        }
        let mut hooks: u64 = 1;
        for row in 0..n {
            for col in 0..(n - row) {
                let arm = n - row - col - 1;
                let leg = n - col - row - 1;
                hooks *= (arm + leg + 1) as u64;
            }
        }
        numer / hooks
    }

    #[test]
    fn enumeration_count_matches_hook_length_oracle() {
        assert_eq!(staircase_word_count(2), 2);
        assert_eq!(staircase_word_count(3), 16);
        assert_eq!(staircase_word_count(4), 768);
        for n in 1..=4u8 {
            let words = enumerate_words_with_cap(n, 4).unwrap();
            assert_eq!(words.len() as u64, staircase_word_count(n as usize));
        }
    }

    #[test]
    fn every_enumerated_word_validates() {
        for n in 1..=3u8 {
            for w in enumerate_words(n).unwrap() {
                assert!(ReducedWord::new(n, w.letters().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn moves_are_involutive() {
        for n in 2..=3u8 {
            for w in enumerate_words(n).unwrap() {
                for mv in w.applicable_moves() {
                    let w2 = w.apply_move(mv).unwrap();
                    assert_eq!(w2.apply_move(mv).unwrap(), w, "{w} via {mv:?}");
                }
            }
        }
    }

    #[test]
    fn move_sequences_replay() {
        let a = ReducedWord::new(2, vec![1, 2, 1]).unwrap();
        let b = ReducedWord::new(2, vec![2, 1, 2]).unwrap();
        assert_eq!(find_move_sequence(&a, &a), vec![]);
        assert_eq!(find_move_sequence(&a, &b), vec![BraidMove::three(1)]);

        for n in 2..=3u8 {
            let words: Vec<ReducedWord> = enumerate_words(n).unwrap().into_iter().collect();
            for a in &words {
                for b in &words {
                    let seq = find_move_sequence(a, b);
                    let mut cur = a.clone();
                    for mv in seq {
                        cur = cur.apply_move(mv).unwrap();
                    }
                    assert_eq!(&cur, b);
                }
            }
        }
    }

    #[test]
    fn standard_words() {
        assert_eq!(ReducedWord::standard(2).letters(), &[1, 2, 1]);
        assert_eq!(ReducedWord::standard(3).letters(), &[1, 2, 1, 3, 2, 1]);
    }

    #[test]
    fn parse_infers_rank() {
        let w = ReducedWord::parse("3 1 2 1 3 2", None).unwrap();
        assert_eq!(w.rank(), 3);
        let w2 = ReducedWord::parse("1 2 1", Some(2)).unwrap();
        assert_eq!(w2.rank(), 2);
    }
}
