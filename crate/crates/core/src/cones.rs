//! The string-cone inequalities via rigorous paths, the lambda
//! inequalities read off the diagram columns, and the combined
//! H-representation of the string polytope.
//!
//! Inequalities are stored in `<=`-form: `M . x <= rhs` with `rhs` 0 for
//! string inequalities and 2 for lambda inequalities, so the coefficient
//! vector `M` doubles as the exponent vector of the corresponding family
//! monomial.

use crate::diagram::StringDiagram;
use crate::weyl::ReducedWord;

/// One switch of a rigorous path: at crossing `level` the path leaves strand
/// `from` and continues on strand `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Switch {
    pub level: usize,
    pub from: u8,
    pub to: u8,
}

/// An oriented path from `b_k` to `b_{k+1}` through the re-oriented diagram,
/// recorded by the crossings it meets and the switches it makes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigorousPath {
    pub k: u8,
    pub visited: Vec<usize>,
    pub switches: Vec<Switch>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InequalityKind {
    String { k: u8, path: RigorousPath },
    Lambda { i: usize },
}

/// One defining inequality `M . x <= rhs` of the string polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub id: String,
    pub coeffs: Vec<i64>,
    pub rhs: i64,
    pub kind: InequalityKind,
}

impl Inequality {
    pub fn is_lambda(&self) -> bool {
        matches!(self.kind, InequalityKind::Lambda { .. })
    }

    pub fn is_string(&self) -> bool {
        matches!(self.kind, InequalityKind::String { .. })
    }
}

/// The H-representation of the string polytope: lambda inequalities first
/// (`L1..LN`), then deduplicated string inequalities (`S<k>.<serial>`).
///
/// `multiplicities[i]` counts how many rigorous paths produced inequality
/// `i` (always 1 for lambda rows).
#[derive(Debug, Clone)]
pub struct HRep {
    pub inequalities: Vec<Inequality>,
    pub multiplicities: Vec<usize>,
}

impl HRep {
    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    /// The lambda inequality attached to crossing `i` (1-based).
    pub fn lambda(&self, i: usize) -> &Inequality {
        let ineq = &self.inequalities[i - 1];
        debug_assert!(matches!(ineq.kind, InequalityKind::Lambda { i: li } if li == i));
        ineq
    }

    pub fn by_id(&self, id: &str) -> Option<&Inequality> {
        self.inequalities.iter().find(|q| q.id == id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Inequality> {
        self.inequalities.iter()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Up,
    Down,
}

/// Exhaustively enumerate the rigorous paths from `b_k` to `b_{k+1}`.
///
/// Strands `U_1..U_k` are oriented upward, the rest downward. A path may
/// pass straight through a crossing or switch strands at it, never meets a
/// vertex twice, and must avoid the two bad straight-through fragments:
/// upward on the left strand while the right strand also points up, and
/// downward on the right strand while the left strand also points down.
/// Paths are returned sorted by their visited crossing sequence.
pub fn rigorous_paths(diagram: &StringDiagram, k: u8) -> Vec<RigorousPath> {
    assert!(k >= 1 && k as usize <= diagram.rank() as usize, "k out of range");
    let up = |s: u8| s <= k;
    let target = k + 1;

    struct Search<'a> {
        diagram: &'a StringDiagram,
        k: u8,
        target: u8,
        visited: Vec<usize>,
        switches: Vec<Switch>,
        used: Vec<bool>,
        found: Vec<RigorousPath>,
    }

    impl Search<'_> {
        /// Next crossing met when leaving `level` on `strand` moving in
        /// `dir`; `None` means the strand runs off to an endpoint.
        fn next_on_strand(&self, strand: u8, level: usize, dir: Dir) -> Option<usize> {
            let levels = self.diagram.crossings_of_strand(strand);
            match dir {
                Dir::Down => levels.iter().copied().find(|&l| l > level),
                Dir::Up => levels.iter().rev().copied().find(|&l| l < level),
            }
        }

        fn arrive(&mut self, strand: u8, dir: Dir, entering: Option<usize>) {
            let Some(level) = entering else {
                // ran off the diagram: the path is complete only at b_{k+1}
                if dir == Dir::Down && strand == self.target {
                    self.found.push(RigorousPath {
                        k: self.k,
                        visited: self.visited.clone(),
                        switches: self.switches.clone(),
                    });
                }
                return;
            };
            if self.used[level] {
                return;
            }
            let cr = *self.diagram.crossing(level);
            let other = if cr.left == strand { cr.right } else { cr.left };
            self.used[level] = true;
            self.visited.push(level);

            // straight through, unless this is one of the two bad fragments
            let other_up = other <= self.k;
            let bad = match dir {
                Dir::Up => strand == cr.left && other_up,
                Dir::Down => strand == cr.right && !other_up,
            };
            if !bad {
                let next = self.next_on_strand(strand, level, dir);
                self.arrive(strand, dir, next);
            }

            // switch onto the other strand, following its orientation
            let odir = if other_up { Dir::Up } else { Dir::Down };
            self.switches.push(Switch { level, from: strand, to: other });
            let next = self.next_on_strand(other, level, odir);
            self.arrive(other, odir, next);
            self.switches.pop();

            self.visited.pop();
            self.used[level] = false;
        }
    }

    debug_assert!(up(k) && !up(target));
    let mut search = Search {
        diagram,
        k,
        target,
        visited: Vec::new(),
        switches: Vec::new(),
        used: vec![false; diagram.num_crossings() + 1],
        found: Vec::new(),
    };
    let start_level = diagram.crossings_of_strand(k).last().copied();
    search.arrive(k, Dir::Up, start_level);
    search.found.sort_by(|a, b| a.visited.cmp(&b.visited));
    search.found
}

/// The `<=`-form inequality of a rigorous path: a switch from `U_i` to `U_j`
/// contributes `-1` at its crossing when `i < j` and `+1` when `i > j`.
pub fn path_inequality(path: &RigorousPath, nvars: usize) -> (Vec<i64>, i64) {
    let mut coeffs = vec![0i64; nvars];
    for sw in &path.switches {
        coeffs[sw.level - 1] += if sw.from < sw.to { -1 } else { 1 };
    }
    (coeffs, 0)
}

/// All lambda inequalities of the diagram, one per crossing, in `<=`-form:
/// `x_i - sum_{j>i} c_j x_j <= 2` with `c_j` +1 for an adjacent corridor and
/// -2 for the same corridor.
pub fn lambda_inequalities(diagram: &StringDiagram) -> Vec<Inequality> {
    let total = diagram.num_crossings();
    (1..=total)
        .map(|i| {
            let ci = diagram.crossing(i).corridor;
            let mut coeffs = vec![0i64; total];
            coeffs[i - 1] = 1;
            for j in i + 1..=total {
                let cj = diagram.crossing(j).corridor;
                coeffs[j - 1] = match ci.abs_diff(cj) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
            }
            Inequality {
                id: format!("L{i}"),
                coeffs,
                rhs: 2,
                kind: InequalityKind::Lambda { i },
            }
        })
        .collect()
}

/// The full H-representation of the string polytope: lambda inequalities
/// followed by the deduplicated string inequalities over all `k`.
pub fn delta_hrep(word: &ReducedWord) -> HRep {
    let diagram = StringDiagram::new(word);
    let nvars = word.len();
    let mut inequalities = lambda_inequalities(&diagram);
    let mut multiplicities = vec![1usize; inequalities.len()];

    for k in 1..=word.rank() {
        let mut serial = 0usize;
        for path in rigorous_paths(&diagram, k) {
            let (coeffs, rhs) = path_inequality(&path, nvars);
            if let Some(idx) = inequalities
                .iter()
                .position(|q| q.coeffs == coeffs && q.rhs == rhs)
            {
                multiplicities[idx] += 1;
                continue;
            }
            serial += 1;
            inequalities.push(Inequality {
                id: format!("S{k}.{serial}"),
                coeffs,
                rhs,
                kind: InequalityKind::String { k, path },
            });
            multiplicities.push(1);
        }
    }
    HRep { inequalities, multiplicities }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(letters: &[u8]) -> ReducedWord {
        let n = *letters.iter().max().unwrap();
        ReducedWord::new(n, letters.to_vec()).unwrap()
    }

    fn diagram(letters: &[u8]) -> StringDiagram {
        StringDiagram::new(&word(letters))
    }

    #[test]
    fn single_crossing_has_one_path() {
        let d = diagram(&[1]);
        let paths = rigorous_paths(&d, 1);
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].visited, vec![1]);
        let (coeffs, rhs) = path_inequality(&paths[0], 1);
        assert_eq!((coeffs, rhs), (vec![-1], 0));
    }

    #[test]
    fn paper_path_is_found() {
        // b1 -> t5 -> t3 -> t4 -> t6 -> b2 giving x3 >= x4
        let d = diagram(&[3, 1, 2, 1, 3, 2]);
        let paths = rigorous_paths(&d, 1);
        let target: Vec<usize> = vec![5, 3, 4, 6];
        let hit = paths.iter().find(|p| p.visited == target).expect("paper path");
        let (coeffs, rhs) = path_inequality(hit, 6);
        assert_eq!(coeffs, vec![0, 0, -1, 1, 0, 0]);
        assert_eq!(rhs, 0);
    }

    #[test]
    fn paths_121() {
        let d = diagram(&[1, 2, 1]);
        let k1 = rigorous_paths(&d, 1);
        assert_eq!(k1.len(), 2);
        let ineqs: Vec<Vec<i64>> = k1.iter().map(|p| path_inequality(p, 3).0).collect();
        assert!(ineqs.contains(&vec![-1, 0, 0])); // x1 >= 0
        assert!(ineqs.contains(&vec![0, -1, 1])); // x2 >= x3

        let k2 = rigorous_paths(&d, 2);
        assert_eq!(k2.len(), 1);
        assert_eq!(path_inequality(&k2[0], 3).0, vec![0, 0, -1]); // x3 >= 0
        assert_eq!(k2[0].switches.len(), 1);
        assert_eq!(k2[0].switches[0].level, 3);
    }

    #[test]
    fn no_path_revisits_a_vertex() {
        for letters in [vec![1, 2, 1], vec![3, 1, 2, 1, 3, 2], vec![1, 2, 1, 3, 2, 1]] {
            let d = diagram(&letters);
            for k in 1..=d.rank() {
                for p in rigorous_paths(&d, k) {
                    let mut sorted = p.visited.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    assert_eq!(sorted.len(), p.visited.len(), "{letters:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn string_coeffs_stay_within_unit_range() {
        for w in crate::weyl::enumerate_words(3).unwrap() {
            let h = delta_hrep(&w);
            for q in h.iter().filter(|q| q.is_string()) {
                assert!(q.coeffs.iter().all(|&c| (-1..=1).contains(&c)), "{w} {q:?}");
                let neg = q.coeffs.iter().filter(|&&c| c < 0).count();
                assert!(neg >= 1, "every path has at least one ascent switch: {q:?}");
            }
        }
    }

    #[test]
    fn lambda_inequalities_for_paper_word() {
        let d = diagram(&[3, 1, 2, 1, 3, 2]);
        let lams = lambda_inequalities(&d);
        assert_eq!(lams.len(), 6);
        // lambda_2 : x2 <= 2 + x3 - 2 x4 + x6
        assert_eq!(lams[1].coeffs, vec![0, 1, -1, 2, 0, -1]);
        assert_eq!(lams[1].rhs, 2);
    }

    #[test]
    fn lambda_inequalities_rank_one() {
        let d = diagram(&[1]);
        let lams = lambda_inequalities(&d);
        assert_eq!(lams.len(), 1);
        assert_eq!(lams[0].coeffs, vec![1]);
        assert_eq!(lams[0].rhs, 2);
    }

    #[test]
    fn lambda_inequalities_121() {
        let d = diagram(&[1, 2, 1]);
        let lams = lambda_inequalities(&d);
        let coeffs: Vec<Vec<i64>> = lams.iter().map(|l| l.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![1, -1, 2], vec![0, 1, -1], vec![0, 0, 1]]);
    }

    #[test]
    fn hrep_of_rank_one() {
        let h = delta_hrep(&word(&[1]));
        assert_eq!(h.len(), 2);
        assert_eq!(h.inequalities[0].coeffs, vec![1]); // x1 <= 2
        assert_eq!(h.inequalities[1].coeffs, vec![-1]); // -x1 <= 0
    }

    #[test]
    fn hrep_of_121_has_six_rows() {
        let h = delta_hrep(&word(&[1, 2, 1]));
        assert_eq!(h.len(), 6);
        let strings: Vec<&Inequality> = h.iter().filter(|q| q.is_string()).collect();
        assert_eq!(strings.len(), 3);
        let ms: Vec<&Vec<i64>> = strings.iter().map(|q| &q.coeffs).collect();
        assert!(ms.contains(&&vec![-1, 0, 0]));
        assert!(ms.contains(&&vec![0, -1, 1]));
        assert!(ms.contains(&&vec![0, 0, -1]));
    }

    #[test]
    fn lambda_count_equals_crossings() {
        for n in 1..=3u8 {
            for w in crate::weyl::enumerate_words(n).unwrap() {
                let h = delta_hrep(&w);
                let lams = h.iter().filter(|q| q.is_lambda()).count();
                assert_eq!(lams, w.len());
            }
        }
    }

    #[test]
    fn ids_are_stable_and_unique() {
        let h = delta_hrep(&word(&[3, 1, 2, 1, 3, 2]));
        let mut ids: Vec<&str> = h.iter().map(|q| q.id.as_str()).collect();
        let total = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), total);
        assert!(h.by_id("L2").is_some());
    }
}
