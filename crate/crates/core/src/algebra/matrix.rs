//! Integer matrix normal forms over `BigInt`: row Hermite normal form,
//! Smith invariant factors, and integer kernel bases.
//!
//! Matrices are row-major `Vec<Vec<Int>>`. All transforms are exact; sizes
//! here are tiny (tens of rows), so classical elimination is used.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::Int;

/// Result of a row Hermite normal form computation.
///
/// `rows` is the staircase basis (zero rows dropped), `pivots[i]` is the
/// column of the leading entry of `rows[i]`. Pivot entries are positive and
/// entries above a pivot are reduced into `[0, pivot)`.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub rows: Vec<Vec<Int>>,
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form of the lattice spanned by `rows`.
pub fn hermite_normal_form(rows: &[Vec<Int>]) -> Hnf {
    let mut work: Vec<Vec<Int>> = rows.iter().filter(|r| !is_zero_row(r)).cloned().collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut basis: Vec<Vec<Int>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();

    for col in 0..ncols {
        // gcd-reduce all work rows against each other in this column
        loop {
            let mut nonzero: Vec<usize> = work
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .map(|(i, _)| i)
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            // pick the row with the smallest absolute entry and reduce the rest
            nonzero.sort_by_key(|&i| work[i][col].abs());
            let a = nonzero[0];
            for &b in &nonzero[1..] {
                let q = div_round(&work[b][col], &work[a][col]);
                if !q.is_zero() {
                    for c in 0..ncols {
                        let sub = &q * &work[a][c];
                        work[b][c] -= sub;
                    }
                }
            }
        }
        let hit = work.iter().position(|r| !r[col].is_zero());
        if let Some(i) = hit {
            let mut row = work.remove(i);
            if row[col].is_negative() {
                for e in row.iter_mut() {
                    *e = -std::mem::take(e);
                }
            }
            // reduce earlier pivot rows above this one is not needed for a
            // staircase; instead reduce this row by nothing and reduce later
            // rows (none have entries in col). Reduce previously fixed rows'
            // entries in this column into [0, pivot).
            for prev in basis.iter_mut() {
                let q = work_floor_div(&prev[col], &row[col]);
                if !q.is_zero() {
                    for c in 0..ncols {
                        let sub = &q * &row[c];
                        prev[c] -= sub;
                    }
                }
            }
            basis.push(row);
            pivots.push(col);
        }
    }
    Hnf { rows: basis, pivots }
}

/// Rank over the rationals of the row span.
pub fn rank_of_rows(rows: &[Vec<Int>]) -> usize {
    hermite_normal_form(rows).rows.len()
}

/// Nontrivial Smith invariant factors (the nonzero diagonal of the Smith
/// normal form), in divisibility order.
pub fn smith_invariants(rows: &[Vec<Int>]) -> Vec<Int> {
    let mut m: Vec<Vec<Int>> = rows.iter().filter(|r| !is_zero_row(r)).cloned().collect();
    if m.is_empty() {
        return Vec::new();
    }
    let ncols = m[0].len();
    let nrows = m.len();
    let mut invariants = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;

    while top < nrows && left < ncols {
        // find a nonzero entry in the submatrix
        let mut pivot = None;
        'search: for i in top..nrows {
            for j in left..ncols {
                if !m[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(left, pj);
        }

        loop {
            // clear column `left` below `top`
            let mut clean = true;
            for i in top + 1..nrows {
                if !m[i][left].is_zero() {
                    let q = div_round(&m[i][left], &m[top][left]);
                    for c in left..ncols {
                        let sub = &q * &m[top][c];
                        m[i][c] -= sub;
                    }
                    if !m[i][left].is_zero() {
                        m.swap(top, i);
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // clear row `top` right of `left`
            for j in left + 1..ncols {
                if !m[top][j].is_zero() {
                    let q = div_round(&m[top][j], &m[top][left]);
                    for row in m.iter_mut().take(nrows).skip(top) {
                        let sub = &q * &row[left];
                        row[j] -= sub;
                    }
                    if !m[top][j].is_zero() {
                        for row in m.iter_mut() {
                            row.swap(left, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // enforce divisibility of the remaining submatrix by the pivot
        let mut disturbed = false;
        'divis: for i in top + 1..nrows {
            for j in left + 1..ncols {
                if !(&m[i][j] % &m[top][left]).is_zero() {
                    // add row i to row top and restart elimination at this pivot
                    for c in left..ncols {
                        let add = m[i][c].clone();
                        m[top][c] += add;
                    }
                    disturbed = true;
                    break 'divis;
                }
            }
        }
        if disturbed {
            continue;
        }
        invariants.push(m[top][left].abs());
        top += 1;
        left += 1;
    }
    invariants
}

/// Basis of the integer kernel `{ w : rows * w = 0 }`.
///
/// The returned basis spans a saturated sublattice (the kernel of an integer
/// matrix is always saturated).
pub fn integer_kernel_basis(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    // Column-reduce [M; I] so that zero columns of M expose kernel vectors in I.
    let nrows = rows.len();
    let mut m: Vec<Vec<Int>> = (0..nrows).map(|i| rows[i].clone()).collect();
    let mut u: Vec<Vec<Int>> = (0..ncols)
        .map(|i| {
            let mut row = vec![Int::zero(); ncols];
            row[i] = Int::from(1);
            row
        })
        .collect();
    // work column-wise: for each row of M, gcd-eliminate across columns
    let col_is_zero = |m: &Vec<Vec<Int>>, j: usize| m.iter().all(|r| r[j].is_zero());
    let mut fixed = 0usize; // number of columns pinned as pivot columns
    for r in 0..nrows {
        loop {
            let mut nonzero: Vec<usize> = (fixed..ncols).filter(|&j| !m[r][j].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&j| m[r][j].abs());
            let a = nonzero[0];
            for &b in &nonzero[1..] {
                let q = div_round(&m[r][b], &m[r][a]);
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let sub = &q * &row[a];
                        row[b] -= sub;
                    }
                    for row in u.iter_mut() {
                        let sub = &q * &row[a];
                        row[b] -= sub;
                    }
                }
            }
        }
        if let Some(j) = (fixed..ncols).find(|&j| !m[r][j].is_zero()) {
            // pin column j as the pivot column for row r
            for row in m.iter_mut() {
                row.swap(fixed, j);
            }
            for row in u.iter_mut() {
                row.swap(fixed, j);
            }
            fixed += 1;
        }
    }
    (0..ncols)
        .filter(|&j| j >= fixed || col_is_zero(&m, j))
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect()
}

fn is_zero_row(r: &[Int]) -> bool {
    r.iter().all(Zero::is_zero)
}

/// Rounded division used during gcd elimination: quotient minimizing the
/// remainder's absolute value.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    // adjust toward the nearest multiple
    let twice: Int = &r * Int::from(2);
    if twice.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Floor division for HNF reduction of entries above a positive pivot.
fn work_floor_div(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn hnf_of_simple_lattice() {
        let rows = vec![iv(&[2, 4]), iv(&[4, 2])];
        let h = hermite_normal_form(&rows);
        assert_eq!(h.rows.len(), 2);
        assert_eq!(h.pivots, vec![0, 1]);
        // det of the lattice is |2*2 - 4*4| / ... = 12; HNF diag product = 12
        let d: Int = h.rows.iter().zip(&h.pivots).map(|(r, &p)| r[p].clone()).product();
        assert_eq!(d, Int::from(12));
    }

    #[test]
    fn smith_invariants_examples() {
        assert_eq!(smith_invariants(&[iv(&[1, 1, -1, -1])]), vec![Int::from(1)]);
        assert_eq!(smith_invariants(&[iv(&[2, -2])]), vec![Int::from(2)]);
        let m = vec![iv(&[2, 0]), iv(&[0, 3])];
        assert_eq!(smith_invariants(&m), vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn kernel_basis_is_orthogonal_and_saturated() {
        let rows = vec![iv(&[1, 1, -1, -1]), iv(&[0, 2, -2, 0])];
        let ker = integer_kernel_basis(&rows, 4);
        assert_eq!(ker.len(), 2);
        for w in &ker {
            for r in &rows {
                let dot: Int = r.iter().zip(w).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        // the two kernel vectors must be Q-independent
        assert_eq!(rank_of_rows(&ker), 2);
    }

    #[test]
    fn kernel_of_zero_matrix_is_identity() {
        let ker = integer_kernel_basis(&[], 3);
        assert_eq!(ker.len(), 3);
    }
}
