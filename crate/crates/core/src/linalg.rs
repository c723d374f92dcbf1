//! Exact linear algebra over the scalar field.

use std::collections::BTreeMap;

use crate::error::{Result, SpbwError};
use crate::scalar::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

/// `v += c * w`, dropping entries that cancel.
pub fn axpy(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    for (k, x) in w {
        let t = c * x;
        let entry = v.entry(*k).or_default();
        *entry = &*entry + &t;
        if entry.is_zero() {
            v.remove(k);
        }
    }
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn invert(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.resize(n, Scalar::zero());
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        // prefer parameter-free pivots to keep fractions small
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| if a[r][col].as_rational().is_some() { 0 } else { 1 })
            .ok_or_else(|| SpbwError::NotInvertible("singular matrix".into()))?;
        a.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Incremental column echelon form. Each inserted vector is reduced against the
/// stored pivots; a vector that reduces to zero yields a kernel relation among the
/// inserted columns.
#[derive(Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Insert the image of column `col`. Returns the kernel combination when the
    /// vector depends on earlier ones.
    pub fn insert(&mut self, col: usize, mut v: SparseVec) -> Option<SparseVec> {
        self.inserted += 1;
        let mut combo = SparseVec::new();
        combo.insert(col, Scalar::one());
        loop {
            let Some((&lead, lead_val)) = v.iter().next() else {
                return Some(combo);
            };
            match self.pivots.get(&lead) {
                Some((p, pc)) => {
                    let f = -(lead_val.checked_div(&p[&lead]).expect("pivot nonzero"));
                    axpy(&mut v, &f, p);
                    axpy(&mut combo, &f, pc);
                    v.remove(&lead);
                }
                None => {
                    self.pivots.insert(lead, (v, combo));
                    return None;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_parametric_matrix() {
        let q = Scalar::param(0);
        let m = vec![vec![Scalar::one(), q.clone()], vec![Scalar::zero(), q.clone()]];
        let inv = invert(&m).unwrap();
        // rows times columns gives the identity
        for i in 0..2 {
            for j in 0..2 {
                let s = (0..2).fold(Scalar::zero(), |acc, k| acc + &m[i][k] * &inv[k][j]);
                assert_eq!(s, if i == j { Scalar::one() } else { Scalar::zero() });
            }
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = vec![vec![Scalar::one(), Scalar::one()], vec![Scalar::one(), Scalar::one()]];
        assert!(invert(&m).is_err());
    }

    #[test]
    fn echelon_finds_kernel() {
        let mut e = Echelon::new();
        let v = |pairs: &[(usize, i64)]| -> SparseVec {
            pairs.iter().map(|(k, c)| (*k, Scalar::from_int(*c))).collect()
        };
        assert!(e.insert(0, v(&[(0, 1), (1, 2)])).is_none());
        assert!(e.insert(1, v(&[(1, 1)])).is_none());
        let k = e.insert(2, v(&[(0, 2), (1, 1)])).unwrap();
        // col2 = 2*col0 - 3*col1
        assert_eq!(k[&2], Scalar::one());
        assert_eq!(k[&0], Scalar::from_int(-2));
        assert_eq!(k[&1], Scalar::from_int(3));
        assert_eq!(e.rank(), 2);
        assert!(e.insert(3, SparseVec::new()).is_some());
    }
}
