//! Small dense exact linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn trace(a: &Matrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Gauss-Jordan inverse; `None` if singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coefficients `x` with `Σ x_i basis[i] = v`, if `v` lies in the span of
/// the (linearly independent) `basis`.
pub fn solve_in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let len = v.len();
    // Rows are coordinates, columns are basis vectors plus the target.
    let mut m: Matrix = (0..len)
        .map(|r| basis.iter().map(|b| b[r].clone()).chain(std::iter::once(v[r].clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let p = (row..len).find(|&r| !m[r][col].is_zero())?;
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..len {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pr = m[row].clone();
                for (x, p) in m[r].iter_mut().zip(&pr) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if (row..len).any(|r| !m[r][k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| m[r][k].clone()).collect())
}

/// Characteristic polynomial `det(x - A)`, coefficients from the constant
/// term up, via reduction to Hessenberg form.
pub fn charpoly(a: &Matrix) -> Vec<Rational> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&r| !h[r][m - 1].is_zero()) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = h[m][m - 1].clone();
        for i in m + 1..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] / &t;
            for j in 0..n {
                let x = &u * &h[m][j];
                h[i][j] -= x;
            }
            for row in h.iter_mut() {
                let x = &u * &row[i];
                row[m] += x;
            }
        }
    }
    // p_0 = 1; p_m = (x - h_mm) p_{m-1} - Σ_i h_{i,m} (Π h_{k,k-1}) p_{i-1}
    let mut p: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for m in 1..=n {
        let mut next = vec![Rational::zero(); m + 1];
        for (k, c) in p[m - 1].iter().enumerate() {
            next[k + 1] += c;
            next[k] -= &h[m - 1][m - 1] * c;
        }
        let mut prod = Rational::one();
        for i in (1..m).rev() {
            prod *= &h[i][i - 1];
            let f = &prod * &h[i - 1][m - 1];
            if f.is_zero() {
                continue;
            }
            for (k, c) in p[i - 1].iter().enumerate() {
                next[k] -= &f * c;
            }
        }
        p.push(next);
    }
    p.pop().expect("nonempty")
}

pub fn eval_poly(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Divides by `(x - r)`, assuming `r` is a root.
fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + &carry * r;
        q[k] = carry.clone();
    }
    q
}

/// Rational eigenvalues of `a` with multiplicities (ascending), and the
/// leftover factor of the characteristic polynomial without rational roots.
///
/// Scaling `a` by the common denominator `D` of its entries gives an integer
/// matrix, whose rational eigenvalues are integers bounded by its largest
/// absolute row sum; those are found by exhaustive search.
pub fn rational_eigenvalues(a: &Matrix) -> (Vec<(Rational, usize)>, Vec<Rational>) {
    let mut den = BigInt::one();
    for x in a.iter().flatten() {
        den = den.lcm(x.denom());
    }
    let scale = Rational::from_integer(den.clone());
    let b: Matrix = a.iter().map(|r| r.iter().map(|x| x * &scale).collect()).collect();
    let bound = b
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero)
        .to_integer();
    let mut p = charpoly(&b);
    let mut roots = Vec::new();
    let mut k = -bound.clone();
    while k <= bound {
        let r = Rational::from_integer(k.clone());
        let mut mult = 0;
        while p.len() > 1 && eval_poly(&p, &r).is_zero() {
            p = deflate(&p, &r);
            mult += 1;
        }
        if mult > 0 {
            roots.push((r / &scale, mult));
        }
        k += 1;
    }
    // Undo the scaling on the leftover factor: q(x) = p(D x) / D^deg.
    let deg = p.len() - 1;
    let mut pow = Rational::one();
    let mut rest = Vec::with_capacity(p.len());
    for c in &p {
        rest.push(c * &pow);
        pow *= &scale;
    }
    let lead = pow / &scale;
    let rest = rest.into_iter().map(|c| c / &lead).collect::<Vec<_>>();
    debug_assert_eq!(rest.len(), deg + 1);
    (roots, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(3));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn charpoly_matches_expansion() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        // det(x - A) = x^3 - 4x^2 + 5x - 5
        assert_eq!(charpoly(&a), vec![int(-5), int(5), int(-4), int(1)]);
        let z = m(&[&[0, 0], &[0, 0]]);
        assert_eq!(charpoly(&z), vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn eigenvalues_with_fractions() {
        let a: Matrix = vec![vec![frac(1, 2), int(1)], vec![int(0), frac(1, 2)]];
        let (roots, rest) = rational_eigenvalues(&a);
        assert_eq!(roots, vec![(frac(1, 2), 2)]);
        assert_eq!(rest, vec![int(1)]);
        let rot = m(&[&[0, -1], &[1, 0]]);
        let (roots, rest) = rational_eigenvalues(&rot);
        assert!(roots.is_empty());
        assert_eq!(rest, vec![int(1), int(0), int(1)]);
    }

    #[test]
    fn span_solve() {
        let basis = vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]];
        assert_eq!(solve_in_span(&basis, &[int(2), int(3), int(5)]), Some(vec![int(2), int(3)]));
        assert_eq!(solve_in_span(&basis, &[int(2), int(3), int(4)]), None);
    }
}
