//! Exact linear algebra over ℚ(i,√2): sparse row reduction for the
//! perturbative solver and small dense helpers for the parameter matrices.

use std::collections::BTreeMap;

use crate::scalar::CycloScalar;

pub type SparseRow = BTreeMap<usize, CycloScalar>;

/// Dense square matrix with exact entries.
pub type DenseMatrix = Vec<Vec<CycloScalar>>;

/// Outcome of solving `A v = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// Particular solution with every free variable set to zero, plus a kernel basis.
    Consistent {
        particular: Vec<CycloScalar>,
        kernel: Vec<Vec<CycloScalar>>,
        rank: usize,
    },
    /// Index of a row reducing to `0 = r` with `r ≠ 0`, and that `r`.
    Inconsistent { row: usize, residual: CycloScalar },
}

fn axpy(dst: &mut SparseRow, src: &SparseRow, s: &CycloScalar) {
    for (&j, v) in src {
        let e = dst.entry(j).or_insert_with(CycloScalar::zero);
        *e -= &(v * s);
        if e.is_zero() {
            dst.remove(&j);
        }
    }
}

/// Reduced row echelon solve of the sparse system `rows · v = rhs`.
///
/// Pivot columns are chosen in increasing index order, so the caller
/// controls which variables end up free through the column numbering.
pub fn solve_sparse(rows: &[SparseRow], rhs: &[CycloScalar], ncols: usize) -> LinearSolution {
    assert_eq!(rows.len(), rhs.len());
    let mut a: Vec<SparseRow> = rows.to_vec();
    let mut b: Vec<CycloScalar> = rhs.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut used = vec![false; a.len()];

    for col in 0..ncols {
        let Some(r) = (0..a.len()).find(|&r| !used[r] && a[r].contains_key(&col)) else {
            continue;
        };
        used[r] = true;
        let inv = a[r][&col].inv().expect("pivot is nonzero");
        let row: SparseRow = a[r].iter().map(|(&j, v)| (j, v * &inv)).collect();
        let br = &b[r] * &inv;
        a[r] = row.clone();
        b[r] = br.clone();
        for k in 0..a.len() {
            if k == r {
                continue;
            }
            if let Some(f) = a[k].get(&col).cloned() {
                axpy(&mut a[k], &row, &f);
                b[k] = &b[k] - &(&br * &f);
            }
        }
        pivots.push((r, col));
    }

    for (k, row) in a.iter().enumerate() {
        if row.is_empty() && !b[k].is_zero() {
            return LinearSolution::Inconsistent {
                row: k,
                residual: b[k].clone(),
            };
        }
    }

    let mut particular = vec![CycloScalar::zero(); ncols];
    let mut is_pivot = vec![false; ncols];
    for &(r, c) in &pivots {
        particular[c] = b[r].clone();
        is_pivot[c] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![CycloScalar::zero(); ncols];
        v[free] = CycloScalar::one();
        for &(r, c) in &pivots {
            if let Some(x) = a[r].get(&free) {
                v[c] = -x;
            }
        }
        kernel.push(v);
    }
    LinearSolution::Consistent {
        particular,
        kernel,
        rank: pivots.len(),
    }
}

pub fn identity(n: usize) -> DenseMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { CycloScalar::one() } else { CycloScalar::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = CycloScalar::zero();
                    for k in 0..inner {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&a[i][k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &DenseMatrix, v: &[CycloScalar]) -> Vec<CycloScalar> {
    a.iter()
        .map(|row| {
            let mut acc = CycloScalar::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        })
        .collect()
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(m: &DenseMatrix) -> CycloScalar {
    let n = m.len();
    let mut a = m.clone();
    let mut det = CycloScalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return CycloScalar::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        let inv = p.inv().unwrap();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &a[col][c] * &f;
                a[r][c] -= &t;
            }
        }
    }
    det
}

/// Exact inverse by Gauss–Jordan, `None` if singular.
pub fn inverse(m: &DenseMatrix) -> Option<DenseMatrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        inv.swap(piv, col);
        let p = a[col][col].inv().unwrap();
        for c in 0..n {
            a[col][c] = &a[col][c] * &p;
            inv[col][c] = &inv[col][c] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let t = &a[col][c] * &f;
                a[r][c] -= &t;
                let t = &inv[col][c] * &f;
                inv[r][c] -= &t;
            }
        }
    }
    Some(inv)
}
