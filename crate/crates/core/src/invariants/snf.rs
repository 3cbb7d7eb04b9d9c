//! Smith normal form over the integers.
//!
//! Elimination runs on `i64` with checked arithmetic and restarts on
//! `BigInt` if an intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

trait Entry: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn div_floor(a: &Self, b: &Self) -> Self;
    /// `a - q * b`, or `None` on overflow.
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn div_floor(a: &Self, b: &Self) -> Self {
        Integer::div_floor(a, b)
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(q.checked_mul(*b)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn div_floor(a: &Self, b: &Self) -> Self {
        Integer::div_floor(a, b)
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

/// Nonzero diagonal entries (up to sign) after diagonalization.
fn diagonalize<T: Entry>(mut m: Vec<Vec<T>>, cols: usize) -> Result<Vec<T>, Overflow> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: least nonzero magnitude in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && pivot.map_or(true, |(pi, pj)| x.abs_lt(&m[pi][pj])) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = T::div_floor(&m[i][t], &m[t][t]);
                for j in t..cols {
                    let v = T::sub_mul(&m[i][j], &q, &m[t][j]).ok_or(Overflow)?;
                    m[i][j] = v;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = T::div_floor(&m[t][j], &m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = T::sub_mul(&row[j], &q, &row[t]).ok_or(Overflow)?;
                    row[j] = v;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remainder in row/column t onto the pivot
            let mut best = (t, t);
            for i in t + 1..rows {
                if !m[i][t].is_zero() && m[i][t].abs_lt(&m[best.0][best.1]) {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() && m[t][j].abs_lt(&m[best.0][best.1]) {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.swap(t, best.0);
            } else if best.1 != t {
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(m[t][t].clone());
        t += 1;
    }
    Ok(diag)
}

/// Invariant factors of an integer matrix: the nonzero diagonal of its
/// Smith normal form, positive and forming a divisibility chain.
pub fn invariant_factors(matrix: &[Vec<i64>]) -> Vec<BigInt> {
    let cols = matrix.first().map_or(0, |r| r.len());
    let diag: Vec<BigInt> = match diagonalize(matrix.to_vec(), cols) {
        Ok(d) => d.iter().map(Entry::to_big).collect(),
        Err(Overflow) => {
            let big: Vec<Vec<BigInt>> =
                matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            match diagonalize(big, cols) {
                Ok(d) => d,
                Err(Overflow) => unreachable!("big integers do not overflow"),
            }
        }
    };
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).collect();
    // (gcd, lcm) sweeps turn any diagonal into the divisibility chain
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Rank of an integer matrix.
pub fn rank(matrix: &[Vec<i64>]) -> usize {
    invariant_factors(matrix).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(m: &[Vec<i64>]) -> Vec<i64> {
        invariant_factors(m).iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[]), Vec::<i64>::new());
    }

    #[test]
    fn large_entries() {
        let big = i64::MAX / 2;
        let m = vec![vec![big, big - 1], vec![big - 1, big - 3]];
        let f = invariant_factors(&m);
        // |det| = big + 1 and the entries are coprime
        assert_eq!(f, vec![BigInt::from(1), BigInt::from(big) + 1]);
    }

    #[test]
    fn overflow_is_detected() {
        let m = vec![vec![3i64, i64::MAX], vec![i64::MAX, 5]];
        assert!(diagonalize(m, 2).is_err());
        let big = vec![vec![BigInt::from(3), BigInt::from(i64::MAX)], vec![BigInt::from(i64::MAX), BigInt::from(5)]];
        assert_eq!(diagonalize(big, 2).ok().map(|d| d.len()), Some(2));
    }
}
