//! Exact integer linear algebra: streaming fraction-free row reduction,
//! Hermite and Smith normal forms, and integer kernels.
//!
//! Everything here works over arbitrary-precision integers. The streaming
//! reducer is the rank engine behind span checks: candidate rows arrive one
//! at a time, are combined fraction-free against the pivots found so far
//! (with content stripping to control growth), and either extend the basis
//! or reduce to zero.

use num_bigint::BigInt;
use num_integer::Integer as NumInteger;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn content(row: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    let one = BigInt::from(1);
    for x in row {
        if !x.is_zero() {
            g = g.gcd(x);
        }
        if g == one {
            break;
        }
    }
    g
}

/// Divide a row by its content and make the leading nonzero entry positive.
fn primitive_part(row: &mut [BigInt]) {
    let g = content(row);
    if g.is_zero() {
        return;
    }
    let lead_negative = row
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    let g = if lead_negative { -g } else { g };
    if g == BigInt::from(1) {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

/// Incremental fraction-free elimination over the integers.
///
/// Pivots are chosen as the first nonzero column of each accepted row; rows
/// are kept primitive (content-stripped). Rank and the set of accepted rows
/// are fully determined by the offer order.
#[derive(Debug, Default, Clone)]
pub struct FractionFreeReducer {
    // sorted by pivot column
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl FractionFreeReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the current basis; if a nonzero remainder is
    /// left, absorb it and return true.
    pub fn offer(&mut self, mut row: Vec<BigInt>) -> bool {
        for (pivot, basis_row) in &self.rows {
            if row[*pivot].is_zero() {
                continue;
            }
            let a = basis_row[*pivot].clone();
            let b = row[*pivot].clone();
            for (x, y) in row.iter_mut().zip(basis_row.iter()) {
                *x = &*x * &a - y * &b;
            }
            primitive_part(&mut row);
        }
        match row.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pivot) => {
                primitive_part(&mut row);
                let at = self
                    .rows
                    .binary_search_by_key(&pivot, |(p, _)| *p)
                    .expect_err("pivot column already occupied after reduction");
                self.rows.insert(at, (pivot, row));
                true
            }
        }
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -x.clone();
    }
}

/// `self - q * other` applied in place.
fn row_submul(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (x, y) in target.iter_mut().zip(source.iter()) {
        *x -= y * q;
    }
}

/// Euclidean quotient rounding toward negative infinity (remainder in
/// `[0, |d|)`), used to keep HNF entries canonical.
fn div_floor_big(n: &BigInt, d: &BigInt) -> BigInt {
    n.div_floor(d)
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is the canonical basis: pivots positive, entries above each
/// pivot reduced into `[0, pivot)`, zero rows dropped. Two generating sets
/// span the same lattice iff their HNFs are identical.
pub fn hnf(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for col in 0..cols {
        if r >= rows.len() {
            break;
        }
        // Euclidean elimination below row r in this column.
        loop {
            let mut min_idx = None;
            for (i, row) in rows.iter().enumerate().skip(r) {
                if !row[col].is_zero() {
                    min_idx = match min_idx {
                        None => Some(i),
                        Some(j) if rows[i][col].abs() < rows[j][col].abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(i) = min_idx else { break };
            rows.swap(r, i);
            let mut clean = true;
            let (head, tail) = rows.split_at_mut(r + 1);
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let q = div_floor_big(&row[col], &head[r][col]);
                row_submul(row, &head[r], &q);
                if !row[col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            negate_row(&mut rows[r]);
        }
        // Reduce entries above the pivot into [0, pivot).
        let (head, pivot_row) = rows.split_at_mut(r);
        for row in head.iter_mut() {
            let q = div_floor_big(&row[col], &pivot_row[0][col]);
            row_submul(row, &pivot_row[0], &q);
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Invariant factors (Smith normal form diagonal) of an integer matrix:
/// positive integers `d_1 | d_2 | ...`, one per nonzero diagonal entry.
pub fn snf_invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let n = rows.min(cols);
    let mut factors = Vec::new();

    for t in 0..n {
        'pivot: loop {
            // Move the nonzero entry of smallest absolute value in the
            // remaining submatrix to position (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    best = match best {
                        None => Some((i, j)),
                        Some((bi, bj)) if m[i][j].abs() < m[bi][bj].abs() => Some((i, j)),
                        keep => keep,
                    };
                }
            }
            let Some((bi, bj)) = best else {
                return factors; // remaining submatrix is zero
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }

            // Clear column t below the pivot and row t right of the pivot.
            let mut dirty = false;
            let (head, tail) = m.split_at_mut(t + 1);
            for row in tail.iter_mut() {
                if row[t].is_zero() {
                    continue;
                }
                let q = div_floor_big(&row[t], &head[t][t]);
                row_submul(row, &head[t], &q);
                if !row[t].is_zero() {
                    dirty = true;
                }
            }
            for j in (t + 1)..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = div_floor_big(&m[t][j], &m[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let s = &m[i][t] * &q;
                        m[i][j] -= s;
                    }
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }

            // Pivot must divide every remaining entry; otherwise fold the
            // offending row into row t and redo this pivot.
            for i in (t + 1)..rows {
                let mut fold = false;
                for j in (t + 1)..cols {
                    if !(&m[i][j] % &m[t][t]).is_zero() {
                        fold = true;
                        break;
                    }
                }
                if fold {
                    let (head, tail) = m.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(tail[0].iter()) {
                        *x += y;
                    }
                    continue 'pivot;
                }
            }
            break;
        }
        factors.push(m[t][t].abs());
    }
    factors
}

/// Exact inverse of a square rational matrix by Gauss-Jordan elimination.
/// Returns None for singular input.
pub fn rational_inverse(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in 0..n {
                let a = &m[col][j] * &f;
                m[i][j] -= a;
                let b = &inv[col][j] * &f;
                inv[i][j] -= b;
            }
        }
    }
    Some(inv)
}

/// Canonical (HNF) basis of `{ x in Z^n : A x = 0 }` where `a` has rows of
/// length `n`.
pub fn integer_kernel(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    // Row-reduce the transpose augmented with the identity; rows whose
    // transpose part vanishes record kernel combinations.
    let mut work: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..m).map(|i| a[i][j].clone()).collect();
            let mut tag = vec![BigInt::zero(); n];
            tag[j] = BigInt::from(1);
            row.extend(tag);
            row
        })
        .collect();
    work = hnf(work);
    let kernel: Vec<Vec<BigInt>> = work
        .into_iter()
        .filter(|row| row[..m].iter().all(|x| x.is_zero()))
        .map(|row| row[m..].to_vec())
        .collect();
    hnf(kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn reducer_rank() {
        let mut red = FractionFreeReducer::new();
        assert!(red.offer(big(&[&[2, 4, 6]]).remove(0)));
        assert!(!red.offer(big(&[&[1, 2, 3]]).remove(0)));
        assert!(red.offer(big(&[&[0, 1, 1]]).remove(0)));
        assert!(red.offer(big(&[&[1, 1, 1]]).remove(0)));
        assert!(!red.offer(big(&[&[5, 7, 9]]).remove(0)));
        assert_eq!(red.rank(), 3);
    }

    #[test]
    fn hnf_canonical() {
        // Both generate the same lattice.
        let a = hnf(big(&[&[2, 0], &[0, 3]]));
        let b = hnf(big(&[&[2, 3], &[2, -3], &[4, 3]]));
        assert_eq!(a, b);
        assert_eq!(a, big(&[&[2, 0], &[0, 3]]));
        // Canonical reduction above the pivot.
        let c = hnf(big(&[&[1, 7], &[0, 3]]));
        assert_eq!(c, big(&[&[1, 1], &[0, 3]]));
    }

    #[test]
    fn snf_small() {
        assert_eq!(
            snf_invariant_factors(big(&[&[2, 0], &[0, 2]])),
            vec![BigInt::from(2), BigInt::from(2)]
        );
        // det -8, entry gcd 2 -> factors 2, 4
        assert_eq!(
            snf_invariant_factors(big(&[&[2, 4], &[6, 8]])),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        // divisibility repair
        assert_eq!(
            snf_invariant_factors(big(&[&[2, 0], &[0, 3]])),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        // rank deficient
        assert_eq!(
            snf_invariant_factors(big(&[&[1, 2], &[2, 4]])),
            vec![BigInt::from(1)]
        );
    }

    #[test]
    fn kernel_basis() {
        // x + y + z = 0 and x + 2y + 3z = 0  =>  kernel spanned by (1, -2, 1)
        let k = integer_kernel(&big(&[&[1, 1, 1], &[1, 2, 3]]));
        assert_eq!(k, big(&[&[1, -2, 1]]));
        let k = integer_kernel(&big(&[&[1, 2]]));
        assert_eq!(k.len(), 1);
        let expect = big(&[&[2, -1]]).remove(0);
        let expect_neg: Vec<BigInt> = expect.iter().map(|x| -x).collect();
        assert!(k[0] == expect || k[0] == expect_neg);
    }

    #[test]
    fn kernel_members_annihilate() {
        let a = big(&[&[3, 1, 4, 1], &[5, 9, 2, 6], &[8, 10, 6, 7]]);
        for v in integer_kernel(&a) {
            for row in &a {
                let dot: BigInt = row.iter().zip(v.iter()).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }
}
