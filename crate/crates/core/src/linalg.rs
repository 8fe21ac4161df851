//! Exact linear algebra over the rationals: fraction-free row reduction,
//! kernels and subspaces in reduced row-echelon form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in row {
        den = den.lcm(c.denom());
    }
    row.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect()
}

fn remove_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for c in row.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Reduced row-echelon form. Returns the nonzero rows and their pivot
/// columns. Elimination runs on integer rows (cross-multiplication with
/// content removal); division happens once per pivot row at the end.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        // Smallest nonzero entry keeps intermediate growth down.
        let Some(piv) = (r..m.len()).filter(|&i| !m[i][col].is_zero()).min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))
        else {
            continue;
        };
        m.swap(r, piv);
        let pivot_row = m[r].clone();
        let pv = pivot_row[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[col]);
            let a = &pv / &g;
            let b = &row[col] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &a - y * &b;
            }
            remove_content(row);
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    let out = m
        .iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let pv = Rational::from_integer(row[p].clone());
            row.iter().map(|x| Rational::from_integer(x.clone()) / &pv).collect()
        })
        .collect();
    (out, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{v : A v = 0}` for `A` given by its rows.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix given by rows.
pub fn inverse(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return None;
    }
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.clone();
            a.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            a
        })
        .collect();
    let (red, pivots) = rref(&augmented, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis so
/// that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let (basis, pivots) = rref(vectors, ambient);
        Subspace { ambient, basis, pivots }
    }

    /// `{v : ℓ(v) = 0 for every row ℓ}`.
    pub fn from_equations(ambient: usize, equations: &[Vec<Rational>]) -> Self {
        Subspace::span(ambient, &kernel(equations, ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows, self.ambient) == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &rows)
    }

    /// Linear forms vanishing on the subspace (rows of an equation matrix).
    pub fn equations(&self) -> Vec<Vec<Rational>> {
        kernel(&self.basis, self.ambient)
    }

    /// Conjugates by a permutation of coordinates: coordinate `i` moves to
    /// position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Subspace {
        let moved: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|v| {
                let mut w = vec![Rational::zero(); self.ambient];
                for (i, x) in v.iter().enumerate() {
                    w[perm[i]] = x.clone();
                }
                w
            })
            .collect();
        Subspace::span(self.ambient, &moved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn kernel_of_simple_system() {
        // Rows from the coefficient system of (x, xy + xz).
        let rows = vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(1)]];
        let k = kernel(&rows, 3);
        assert_eq!(k, vec![vec![rat(0), rat(-1), rat(1)]]);
        let s = Subspace::span(3, &k);
        assert_eq!(s.basis(), &[vec![rat(0), rat(1), rat(-1)]]);
        assert!(s.contains(&[rat(0), rat(2), rat(-2)]));
        assert!(!s.contains(&[rat(1), rat(0), rat(0)]));
    }

    #[test]
    fn rref_normalizes_pivots() {
        let rows = vec![vec![rat(2), rat(4), rat(6)], vec![rat(1), rat(1), ratio(1, 2)]];
        let (r, p) = rref(&rows, 3);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r[0], vec![rat(1), rat(0), rat(-2)]);
        assert_eq!(r[1], vec![rat(0), rat(1), ratio(5, 2)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![rat(-2), rat(1)], vec![ratio(3, 2), ratio(-1, 2)]]);
        assert!(inverse(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_none());
    }

    #[test]
    fn subspace_equality_ignores_spanning_set() {
        let a = Subspace::span(3, &[vec![rat(0), rat(1), rat(-1)]]);
        let b = Subspace::span(3, &[vec![rat(0), rat(-3), rat(3)], vec![rat(0), rat(0), rat(0)]]);
        assert_eq!(a, b);
        assert_eq!(a.equations().len(), 2);
        assert_eq!(Subspace::from_equations(3, &a.equations()), a);
    }
}
