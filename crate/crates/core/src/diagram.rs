//! String (wiring) diagrams of reduced words: crossings with corridor
//! positions, strand trajectories, boxes, and braid regions.
//!
//! Columns are 1-based `1..=n+1`; corridor `c` is the gap between columns
//! `c` and `c+1`. Crossings `t_1..t_N` are numbered top to bottom. Strand
//! `U_s` starts in column `s` and ends in column `n+2-s`.

use thiserror::Error;

use crate::weyl::{BraidMove, MoveKind, ReducedWord, WeylError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// One crossing of the diagram.
///
/// `left`/`right` are the strands occupying columns `corridor` and
/// `corridor+1` immediately above the crossing; after it they have swapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub level: usize,
    pub corridor: u8,
    pub left: u8,
    pub right: u8,
}

/// A bounded region of the diagram: a pair of consecutive crossings in the
/// same corridor with no crossing of that corridor strictly between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiagramBox {
    pub top: usize,
    pub bot: usize,
    pub corridor: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    /// Pattern `(s_a, s_{a+1}, s_a)`.
    R121,
    /// Pattern `(s_{a+1}, s_a, s_{a+1})`.
    R212,
}

/// The single box moved by a 3-move, together with the move's positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidRegion {
    pub region: DiagramBox,
    pub positions: (usize, usize, usize),
    pub kind: RegionKind,
}

#[derive(Debug, Clone)]
pub struct StringDiagram {
    word: ReducedWord,
    crossings: Vec<Crossing>,
    /// `column[s-1][g]` is the column of strand `U_s` after `g` crossings.
    columns: Vec<Vec<u8>>,
    /// Crossing levels met by each strand, top to bottom.
    strand_crossings: Vec<Vec<usize>>,
}

impl StringDiagram {
    pub fn new(word: &ReducedWord) -> StringDiagram {
        let n = word.rank() as usize;
        let total = word.len();
        let mut occupant: Vec<u8> = (1..=n as u8 + 1).collect();
        let mut columns: Vec<Vec<u8>> = (0..=n)
            .map(|s| {
                let mut v = Vec::with_capacity(total + 1);
                v.push(s as u8 + 1);
                v
            })
            .collect();
        let mut crossings = Vec::with_capacity(total);
        let mut strand_crossings: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (idx, &c) in word.letters().iter().enumerate() {
            let corr = c as usize - 1;
            let (a, b) = (occupant[corr], occupant[corr + 1]);
            crossings.push(Crossing { level: idx + 1, corridor: c, left: a, right: b });
            strand_crossings[a as usize - 1].push(idx + 1);
            strand_crossings[b as usize - 1].push(idx + 1);
            occupant.swap(corr, corr + 1);
            for s in 1..=n as u8 + 1 {
                let col = occupant.iter().position(|&o| o == s).unwrap() as u8 + 1;
                columns[s as usize - 1].push(col);
            }
        }
        // redundancy check: the crossing-centric and strand-centric views agree
        for s in 1..=n as u8 + 1 {
            debug_assert_eq!(columns[s as usize - 1][0], s);
            assert_eq!(
                columns[s as usize - 1][total],
                n as u8 + 2 - s,
                "strand {s} does not end at the reversed column"
            );
        }
        for cr in &crossings {
            let g = cr.level - 1;
            assert_eq!(columns[cr.left as usize - 1][g], cr.corridor);
            assert_eq!(columns[cr.right as usize - 1][g], cr.corridor + 1);
            assert_eq!(columns[cr.left as usize - 1][g + 1], cr.corridor + 1);
            assert_eq!(columns[cr.right as usize - 1][g + 1], cr.corridor);
        }
        StringDiagram { word: word.clone(), crossings, columns, strand_crossings }
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn rank(&self) -> u8 {
        self.word.rank()
    }

    pub fn num_strands(&self) -> usize {
        self.word.rank() as usize + 1
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// The crossing `t_level` (1-based).
    pub fn crossing(&self, level: usize) -> &Crossing {
        &self.crossings[level - 1]
    }

    /// Column of strand `s` after `gap` crossings (`gap` in `0..=N`).
    pub fn column_of(&self, s: u8, gap: usize) -> u8 {
        self.columns[s as usize - 1][gap]
    }

    /// Crossing levels on strand `s`, top to bottom.
    pub fn crossings_of_strand(&self, s: u8) -> &[usize] {
        &self.strand_crossings[s as usize - 1]
    }

    /// The two strands crossing at `level`.
    pub fn strands_at(&self, level: usize) -> (u8, u8) {
        let c = self.crossing(level);
        (c.left, c.right)
    }

    /// All boxes: pairs of consecutive same-corridor crossings. There are
    /// exactly `N - n` of them, sorted by corridor then top level.
    pub fn boxes(&self) -> Vec<DiagramBox> {
        let mut out = Vec::new();
        for corridor in 1..=self.word.rank() {
            let levels: Vec<usize> = self
                .crossings
                .iter()
                .filter(|c| c.corridor == corridor)
                .map(|c| c.level)
                .collect();
            for pair in levels.windows(2) {
                out.push(DiagramBox { top: pair[0], bot: pair[1], corridor });
            }
        }
        out.sort_by_key(|b| (b.corridor, b.top));
        out
    }

    /// The braid region of an applicable 3-move.
    pub fn braid_region(&self, mv: BraidMove) -> Result<BraidRegion, DiagramError> {
        if mv.kind != MoveKind::Three || !self.word.move_applicable(mv) {
            return Err(WeylError::MoveNotApplicable { kind: mv.kind, pos: mv.pos }.into());
        }
        let letters = self.word.letters();
        let a = letters[mv.pos - 1];
        let b = letters[mv.pos];
        let kind = if b == a + 1 { RegionKind::R121 } else { RegionKind::R212 };
        Ok(BraidRegion {
            region: DiagramBox { top: mv.pos, bot: mv.pos + 2, corridor: a },
            positions: (mv.pos, mv.pos + 1, mv.pos + 2),
            kind,
        })
    }
}
