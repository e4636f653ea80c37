//! Exact linear algebra over `Z` and `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n, "matrix must be square");
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Inverse over `Q`, or `None` when singular.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Integer inverse when `m` is unimodular.
pub fn inverse_integral(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let inv = inverse(m)?;
    inv.iter().map(|r| r.iter().map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None }).collect()).collect()
}

/// Solve `x * rows = target` (row combination) exactly over `Q`; `None` if singular.
pub fn solve_row_combination(rows: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigRational>> {
    let inv = inverse(rows)?;
    let n = rows.len();
    Some(
        (0..n)
            .map(|j| {
                let mut s = BigRational::zero();
                for (i, t) in target.iter().enumerate() {
                    s += BigRational::from_integer((*t).into()) * &inv[i][j];
                }
                s
            })
            .collect(),
    )
}

/// Incremental row echelon basis of sparse rational vectors.
///
/// Used to decide spans: `insert` returns whether the vector was new,
/// `contains` tests membership without mutating.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

pub type SparseVec = BTreeMap<usize, BigRational>;

pub fn sparse_from_i64(entries: impl IntoIterator<Item = (usize, i64)>) -> SparseVec {
    let mut v = SparseVec::new();
    for (i, c) in entries {
        if c == 0 {
            continue;
        }
        let e = v.entry(i).or_insert_with(BigRational::zero);
        *e += BigRational::from_integer(c.into());
        if e.is_zero() {
            v.remove(&i);
        }
    }
    v
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            let lead = v.iter().find(|(i, _)| self.rows.contains_key(i)).map(|(i, c)| (*i, c.clone()));
            let Some((i, c)) = lead else { return v };
            let row = &self.rows[&i];
            for (j, rc) in row {
                let e = v.entry(*j).or_insert_with(BigRational::zero);
                *e -= &c * rc;
                if e.is_zero() {
                    v.remove(j);
                }
            }
        }
    }

    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&p, c)) = v.iter().next() else { return false };
        let inv = c.recip();
        let row: SparseVec = v.into_iter().map(|(j, x)| (j, x * &inv)).collect();
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&p).cloned() {
                for (j, rc) in &row {
                    let e = other.entry(*j).or_insert_with(BigRational::zero);
                    *e -= &f * rc;
                    if e.is_zero() {
                        other.remove(j);
                    }
                }
            }
        }
        self.rows.insert(p, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// The fully reduced row with pivot column `p`.
    pub fn row(&self, p: usize) -> Option<&SparseVec> {
        self.rows.get(&p)
    }

    /// Pivot columns; their complement indexes a basis of the quotient.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(det(&[vec![2, 1], vec![1, 1]]), BigInt::from(1));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), BigInt::from(0));
        assert_eq!(det(&[vec![2, 0, 0], vec![0, 3, 0], vec![1, 1, 5]]), BigInt::from(30));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]];
        let inv = inverse_integral(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: i64 = (0..3).map(|t| m[i][t] * inv[t][j]).sum();
                assert_eq!(s, i64::from(i == j));
            }
        }
        assert!(inverse_integral(&[vec![2]]).is_none());
    }

    #[test]
    fn echelon_span() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(sparse_from_i64([(0, 1), (1, -1)])));
        assert!(e.insert(sparse_from_i64([(1, 1), (2, -1)])));
        assert!(!e.insert(sparse_from_i64([(0, 1), (2, -1)])));
        assert!(e.contains(&sparse_from_i64([(0, 2), (2, -2)])));
        assert!(!e.contains(&sparse_from_i64([(0, 1)])));
        assert_eq!(e.rank(), 2);
    }
}
