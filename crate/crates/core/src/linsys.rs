//! Fraction-free solution of linear systems over the polynomial ring.
//!
//! Forward elimination is Bareiss one-step condensation: every 2x2 minor is
//! divided exactly by the previous pivot, so entries stay polynomials and
//! intermediate swell is bounded. Pivots are chosen among the nonzero
//! column entries by fewest terms. Back-substitution runs over the
//! rational-function field, and every solution is verified against the
//! original system before it is returned.

use thiserror::Error;

use crate::poly::Poly;
use crate::ratfun::{RatFun, RatFunError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LinSysError {
    #[error("matrix is not square or rhs length mismatches")]
    Shape,
    #[error("singular matrix: no nonzero pivot in column {column}")]
    SingularPivot { column: usize },
    #[error("internal: Bareiss division left a remainder")]
    InexactDivision,
    #[error("back-substitution verification failed at row {row}")]
    VerificationFailed { row: usize },
    #[error(transparent)]
    RatFun(#[from] RatFunError),
}

/// Solve `M * sol = rhs` exactly. `M` must be square and nonsingular over
/// the rational-function field.
pub fn solve_linear_system(m: &[Vec<Poly>], rhs: &[Poly]) -> Result<Vec<RatFun>, LinSysError> {
    let n = m.len();
    if rhs.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(LinSysError::Shape);
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    // Augmented working copy.
    let mut w: Vec<Vec<Poly>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut prev = Poly::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .filter(|&i| !w[i][k].is_zero())
            .min_by_key(|&i| w[i][k].term_count())
            .ok_or(LinSysError::SingularPivot { column: k })?;
        w.swap(k, pivot_row);
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = w[k][k].mul(&w[i][j]).sub(&w[i][k].mul(&w[k][j]));
                w[i][j] = t.exact_div(&prev).ok_or(LinSysError::InexactDivision)?;
            }
            w[i][k] = Poly::zero();
        }
        prev = w[k][k].clone();
    }

    // Cramer-style back-substitution: every unknown is numer[i] / det with
    // det the final pivot, and numer[i] = (det*w[i][n] - sum w[i][j]*numer[j])
    // / w[i][i] stays in the polynomial ring (the division is exact).
    let det = w[n - 1][n - 1].clone();
    let mut numer = vec![Poly::zero(); n];
    numer[n - 1] = w[n - 1][n].clone();
    for i in (0..n.saturating_sub(1)).rev() {
        let mut acc = det.mul(&w[i][n]);
        for j in i + 1..n {
            acc = acc.sub(&w[i][j].mul(&numer[j]));
        }
        numer[i] = acc
            .exact_div(&w[i][i])
            .ok_or(LinSysError::InexactDivision)?;
    }

    // Exact polynomial check against the original system:
    // sum_j m[i][j]*numer[j] == rhs[i]*det.
    for (i, row) in m.iter().enumerate() {
        let mut acc = Poly::zero();
        for (j, entry) in row.iter().enumerate() {
            acc = acc.add(&entry.mul(&numer[j]));
        }
        if acc != rhs[i].mul(&det) {
            return Err(LinSysError::VerificationFailed { row: i });
        }
    }
    numer
        .into_iter()
        .map(|p| RatFun::new(p, det.clone()).map_err(LinSysError::from))
        .collect()
}
