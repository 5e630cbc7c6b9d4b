//! Exact linear algebra over the rationals.
//!
//! Everything here is plain fraction-arithmetic Gaussian elimination; the
//! matrices in this crate are small (subspace spans, cochain differentials)
//! and exactness matters more than asymptotics.

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Reduces `rows` to reduced row echelon form in place.
/// Returns the pivot column of each nonzero row, in order.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let sub = &rows[r][j] * &f;
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank of a matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    rref(&mut m).len()
}

/// Echelonized basis of the row space; rows come back in RREF.
pub fn row_space_basis(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.iter().filter(|r| !r.iter().all(|x| x.is_zero())).cloned().collect();
    rref(&mut m);
    m
}

/// Outcome of trying to write `target` as a combination of `cols`.
pub enum SolveOutcome {
    /// Coefficients `x` with `sum x_i * cols_i = target`.
    Solution(Vec<Rational>),
    /// A functional `lambda` (as a dense row vector) with
    /// `lambda . col_i = 0` for all `i` and `lambda . target != 0`;
    /// certifies that `target` is outside the column span.
    Separating(Vec<Rational>),
}

/// Solves `sum x_i cols_i = target` exactly, or produces a separating
/// functional when no solution exists. All columns must share `target`'s
/// length.
pub fn solve_columns(cols: &[Vec<Rational>], target: &[Rational]) -> SolveOutcome {
    let nrows = target.len();
    let ncols = cols.len();
    // Augmented system [A | t], with a row-operation tracker E so that a
    // failed row yields the functional directly: E A = R row-reduced, and a
    // zero row of R with nonzero reduced target entry is the separator.
    let mut a: Vec<Vec<Rational>> = (0..nrows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut t: Vec<Rational> = target.to_vec();
    let mut tracker: Vec<Vec<Rational>> = (0..nrows)
        .map(|r| {
            let mut row = vec![Rational::zero(); nrows];
            row[r] = Rational::one();
            row
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        t.swap(r, p);
        tracker.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        t[r] *= &inv;
        for x in tracker[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let sub = &a[r][j] * &f;
                    a[i][j] -= sub;
                }
                let sub = &t[r] * &f;
                t[i] -= sub;
                for j in 0..nrows {
                    let sub = &tracker[r][j] * &f;
                    tracker[i][j] -= sub;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    // Any remaining row with nonzero target entry is inconsistent.
    for i in r..nrows {
        if !t[i].is_zero() {
            return SolveOutcome::Separating(tracker[i].clone());
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, col) in pivots {
        x[col] = t[row].clone();
    }
    SolveOutcome::Solution(x)
}

/// Basis of `{x : sum x_i cols_i = 0}` via the free columns of the RREF.
pub fn kernel_of_columns(cols: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = cols.len();
    if ncols == 0 {
        return Vec::new();
    }
    let nrows = cols[0].len();
    let mut m: Vec<Vec<Rational>> = (0..nrows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut kernel = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        kernel.push(v);
    }
    kernel
}

/// Determinant of a square matrix by fraction Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut acc = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(c, p);
            acc = -acc;
        }
        let pivot = m[c][c].clone();
        acc *= &pivot;
        let inv = pivot.recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let sub = &m[c][j] * &f;
                    m[i][j] -= sub;
                }
            }
        }
    }
    acc
}

/// Coefficients (constant term first) of the unique polynomial of degree
/// `< points.len()` through the given points, by Newton divided differences.
/// The abscissae must be pairwise distinct.
pub fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    if n == 0 {
        return Vec::new();
    }
    // Divided-difference table, in place.
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            dd[i] = num / den;
        }
    }
    // Horner expansion of the Newton form into monomial coefficients.
    let mut coeffs = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // coeffs <- coeffs * (x - x_i) + dd[i]
        let xi = &points[i].0;
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            let sub = c * xi;
            next[d] -= sub;
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_rref() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0]])), 0);
        let mut rows = m(&[&[2, 4, 0], &[1, 2, 1]]);
        let piv = rref(&mut rows);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(rows, m(&[&[1, 2, 0], &[0, 0, 1]]));
    }

    #[test]
    fn solve_finds_combination() {
        let cols = vec![
            vec![int(1), int(0), int(2)],
            vec![int(0), int(1), int(1)],
        ];
        match solve_columns(&cols, &[int(3), int(4), int(10)]) {
            SolveOutcome::Solution(x) => assert_eq!(x, vec![int(3), int(4)]),
            SolveOutcome::Separating(_) => panic!("expected a solution"),
        }
    }

    #[test]
    fn solve_separates_outside_vector() {
        let cols = vec![vec![int(1), int(0), int(0)]];
        let target = [int(0), int(1), int(0)];
        match solve_columns(&cols, &target) {
            SolveOutcome::Solution(_) => panic!("target is not in the span"),
            SolveOutcome::Separating(lam) => {
                let dot = |v: &[Rational]| -> Rational {
                    lam.iter().zip(v).map(|(a, b)| a * b).sum()
                };
                assert!(dot(&cols[0]).is_zero());
                assert!(!dot(&target).is_zero());
            }
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(det(m(&[&[1, 2], &[3, 4]])), int(-2));
        assert_eq!(det(m(&[&[1, 2], &[2, 4]])), int(0));
        assert_eq!(det(m(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        // p(x) = 3 - x + x^2/2 sampled at 1..=4.
        let p = |x: &Rational| int(3) - x + rat(1, 2) * x * x;
        let pts: Vec<_> = (1..=4).map(|i| (int(i), p(&int(i)))).collect();
        assert_eq!(interpolate(&pts), vec![int(3), int(-1), rat(1, 2)]);
    }
}
