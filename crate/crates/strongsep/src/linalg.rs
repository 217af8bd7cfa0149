//! Dense exact linear algebra over `Q`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::scalar::Q;

pub type Matrix = Vec<Vec<Q>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let k = m[i][c].clone();
                for j in 0..ncols {
                    let d = &k * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn nullspace(a: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m: Matrix = a.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `A x = b`, if any.
pub fn solve(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let mut m: Matrix = a.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    let pivots = rref(&mut m, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][ncols].clone();
    }
    Some(x)
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Determinant by Gaussian elimination.
pub fn det(mut m: Matrix) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let k = &m[i][c] / &m[c][c];
                for j in c..n {
                    let t = &k * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    d
}

/// Resultant via the Sylvester matrix.
pub fn resultant(p: &Poly<Q>, q: &Poly<Q>) -> Q {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Q::zero();
    };
    if m + n == 0 {
        return Q::one();
    }
    let size = m + n;
    let mut s = vec![vec![Q::zero(); size]; size];
    for r in 0..n {
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            s[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            s[n + r][r + k] = c.clone();
        }
    }
    det(s)
}

/// `(−1)^{n(n−1)/2} Res(p, p′) / lc(p)`.
pub fn discriminant(p: &Poly<Q>) -> Q {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Q::one();
    }
    let r = resultant(p, &p.derivative()) / p.lead().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    #[test]
    fn nullspace_and_solve() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&a[0], v).is_zero());
        }
        let x = solve(&a, &[q(1), q(2)], 3).unwrap();
        assert_eq!(dot(&a[0], &x), q(1));
        assert!(solve(&a, &[q(1), q(3)], 3).is_none());
    }

    #[test]
    fn discriminants() {
        // z² − x at x = 1/4: disc = 4·(1/4) = 1
        assert_eq!(discriminant(&Poly::new(vec![qf(-1, 4), q(0), q(1)])), q(1));
        // (z−1)(z−2)(z−4): disc = (1·3·2)² = 36
        let p = Poly::new(vec![q(-8), q(14), q(-7), q(1)]);
        assert_eq!(discriminant(&p), q(36));
        assert_eq!(det(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), q(-1));
    }
}
