//! Exact rational linear algebra: determinants, kernel vectors, and a
//! phase-1 simplex used to decide whether a point of the standard simplex is
//! annihilated by a given matrix.

use num_traits::{One, Signed, Zero};

use crate::poly::Rat;

/// Determinant of a square rational matrix by fraction Gaussian elimination.
pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// A nonzero vector v with M v = 0, if the columns of M are dependent.
pub fn kernel_vector(m: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let rows = m.len();
    let cols = if rows == 0 { return None } else { m[0].len() };
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        if row == rows {
            break;
        }
        let pivot = (row..rows).find(|&r| !a[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        a.swap(pivot, row);
        let inv = a[row][col].clone();
        for c in col..cols {
            a[row][c] = &a[row][c] / &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..cols {
                    let sub = &factor * &a[row][c];
                    a[r][c] -= sub;
                }
            }
        }
        pivot_col_of_row[row] = Some(col);
        pivot_cols.push(col);
        row += 1;
    }
    let free_col = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let mut v = vec![Rat::zero(); cols];
    v[free_col] = Rat::one();
    for (r, pc) in pivot_col_of_row.iter().enumerate() {
        if let Some(pc) = pc {
            v[*pc] = -a[r][free_col].clone();
        }
    }
    Some(v)
}

/// Searches for t in the standard simplex with M t = 0 (exactly), using a
/// phase-1 simplex with Bland's rule over exact rationals.
pub fn simplex_point_in_kernel(m: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let cols = m.first()?.len();
    // Constraints: each row of M dotted with t equals 0, plus sum(t) = 1.
    let mut rows: Vec<(Vec<Rat>, Rat)> = m
        .iter()
        .map(|row| (row.clone(), Rat::zero()))
        .collect();
    rows.push((vec![Rat::one(); cols], Rat::one()));
    feasible_point(&mut rows, cols)
}

/// Phase-1 feasibility for A t = b, t >= 0; rows may be sign-flipped so that
/// b >= 0. Returns a feasible t if one exists.
fn feasible_point(rows: &mut [(Vec<Rat>, Rat)], cols: usize) -> Option<Vec<Rat>> {
    let r = rows.len();
    for (lhs, rhs) in rows.iter_mut() {
        if rhs.is_negative() {
            for x in lhs.iter_mut() {
                *x = -x.clone();
            }
            *rhs = -rhs.clone();
        }
    }
    // Tableau columns: cols original variables then r artificials, then rhs.
    let width = cols + r;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(r);
    for (i, (lhs, rhs)) in rows.iter().enumerate() {
        let mut row = vec![Rat::zero(); width + 1];
        row[..cols].clone_from_slice(lhs);
        row[cols + i] = Rat::one();
        row[width] = rhs.clone();
        tab.push(row);
    }
    let mut basis: Vec<usize> = (cols..cols + r).collect();
    // Reduced costs for minimizing the sum of artificials.
    let mut obj = vec![Rat::zero(); width + 1];
    for row in &tab {
        for (o, x) in obj.iter_mut().zip(row) {
            *o += x;
        }
    }
    for j in cols..width {
        obj[j] = Rat::zero();
    }

    loop {
        // Bland's rule: smallest column with positive reduced cost.
        let entering = (0..width).find(|&j| !basis.contains(&j) && obj[j].is_positive());
        let entering = match entering {
            Some(j) => j,
            None => break,
        };
        let mut leaving: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..r {
            if !tab[i][entering].is_positive() {
                continue;
            }
            let ratio = &tab[i][width] / &tab[i][entering];
            let better = match &best {
                None => true,
                Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leaving.unwrap()]),
            };
            if better {
                best = Some(ratio);
                leaving = Some(i);
            }
        }
        let leaving = leaving?; // unbounded cannot happen in phase 1
        // Pivot.
        let inv = tab[leaving][entering].clone();
        for x in tab[leaving].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..r {
            if i != leaving && !tab[i][entering].is_zero() {
                let factor = tab[i][entering].clone();
                for c in 0..=width {
                    let sub = &factor * &tab[leaving][c];
                    tab[i][c] -= sub;
                }
            }
        }
        if !obj[entering].is_zero() {
            let factor = obj[entering].clone();
            for c in 0..=width {
                let sub = &factor * &tab[leaving][c];
                obj[c] -= sub;
            }
        }
        basis[leaving] = entering;
    }

    if !obj[width].is_zero() {
        return None; // artificials cannot all vanish: infeasible
    }
    let mut t = vec![Rat::zero(); cols];
    for (i, &b) in basis.iter().enumerate() {
        if b < cols {
            t[b] = tab[i][width].clone();
        } else if !tab[i][width].is_zero() {
            return None;
        }
    }
    Some(t)
}
