//! Exact dense linear algebra over `Q` and `Z`.
//!
//! Matrices are row-major `Vec<Vec<_>>`. The integer routines are built on a
//! single column-echelon reduction `A * U = H` with `U` unimodular.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::{ext_gcd, gcd_all, Int, Rat};

pub type IntMat = Vec<Vec<Int>>;
pub type RatMat = Vec<Vec<Rat>>;

pub fn to_rat_mat(m: &[Vec<Int>]) -> RatMat {
    m.iter()
        .map(|r| r.iter().cloned().map(Rat::from_integer).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn identity_int(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn mat_mul_int(a: &[Vec<Int>], b: &[Vec<Int>]) -> IntMat {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).fold(Int::zero(), |s, k| s + &r[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec_int(a: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    a.iter()
        .map(|r| r.iter().zip(v).fold(Int::zero(), |s, (x, y)| s + x * y))
        .collect()
}

pub fn mat_vec_rat(a: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|r| r.iter().zip(v).fold(Rat::zero(), |s, (x, y)| s + x * y))
        .collect()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + x * y)
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |s, (x, y)| s + x * y)
}

/// Divides an integer vector by the gcd of its entries (zero stays zero).
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction and sign.
pub fn primitive_from_rat(v: &[Rat]) -> Vec<Int> {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    primitive(&ints)
}

/// Reduced row echelon form; returns the reduced matrix and its pivot columns.
pub fn rref(m: &[Vec<Rat>]) -> (RatMat, Vec<usize>) {
    let mut a: RatMat = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    rref(m).1.len()
}

/// Some solution of `a * x = b` (free variables set to zero), if consistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let aug: RatMat = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = red[i][cols].clone();
    }
    Some(x)
}

/// Basis of the right null space `{x : a * x = 0}`.
pub fn nullspace(a: &[Vec<Rat>], cols: usize) -> RatMat {
    let (red, pivots) = rref(a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for (i, &c) in pivots.iter().enumerate() {
                x[c] = -red[i][f].clone();
            }
            x
        })
        .collect()
}

pub fn inverse(a: &[Vec<Rat>]) -> Option<RatMat> {
    let n = a.len();
    let aug: RatMat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det_rat(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    det
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn det_int(a: &[Vec<Int>]) -> Int {
    let n = a.len();
    if n == 0 {
        return Int::one();
    }
    let mut m = a.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Int::zero();
            };
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Column echelon decomposition `a * u = h` of an `r x m` integer matrix.
///
/// `h` has its nonzero columns first (`rank` of them) in lower echelon
/// shape; `pivot_rows[k]` is the first row in which column `k` is nonzero.
#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    pub h: IntMat,
    pub u: IntMat,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

fn col_combine(m: &mut [Vec<Int>], p: usize, q: usize, e: [&Int; 4]) {
    // (col_p, col_q) <- (e0*col_p + e1*col_q, e2*col_p + e3*col_q)
    for row in m.iter_mut() {
        let a = row[p].clone();
        let b = row[q].clone();
        row[p] = e[0] * &a + e[1] * &b;
        row[q] = e[2] * &a + e[3] * &b;
    }
}

fn col_swap(m: &mut [Vec<Int>], p: usize, q: usize) {
    for row in m.iter_mut() {
        row.swap(p, q);
    }
}

fn col_axpy(m: &mut [Vec<Int>], dst: usize, f: &Int, src: usize) {
    for row in m.iter_mut() {
        let t = f * &row[src];
        row[dst] -= t;
    }
}

pub fn column_echelon(a: &[Vec<Int>], cols: usize) -> ColumnEchelon {
    let mut h: IntMat = a.to_vec();
    let mut u = identity_int(cols);
    let mut k = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..h.len() {
        if k == cols {
            break;
        }
        let Some(first) = (k..cols).find(|&c| !h[i][c].is_zero()) else {
            continue;
        };
        if first != k {
            col_swap(&mut h, k, first);
            col_swap(&mut u, k, first);
        }
        for c in k + 1..cols {
            if h[i][c].is_zero() {
                continue;
            }
            let (g, s, t) = ext_gcd(&h[i][k], &h[i][c]);
            let a_g = &h[i][k] / &g;
            let b_g = &h[i][c] / &g;
            let nb = -b_g;
            col_combine(&mut h, k, c, [&s, &t, &nb, &a_g]);
            col_combine(&mut u, k, c, [&s, &t, &nb, &a_g]);
        }
        if h[i][k].is_negative() {
            for row in h.iter_mut().chain(u.iter_mut()) {
                row[k] = -row[k].clone();
            }
        }
        for j in 0..k {
            let q = h[i][j].div_floor(&h[i][k]);
            if !q.is_zero() {
                col_axpy(&mut h, j, &q, k);
                col_axpy(&mut u, j, &q, k);
            }
        }
        pivot_rows.push(i);
        k += 1;
    }
    ColumnEchelon { h, u, rank: k, pivot_rows }
}

/// Basis (as rows) of the integer kernel `{x in Z^cols : a * x = 0}`.
pub fn int_kernel(a: &[Vec<Int>], cols: usize) -> IntMat {
    let ce = column_echelon(a, cols);
    (ce.rank..cols)
        .map(|j| ce.u.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Some integer solution of `a * x = b`, if one exists.
pub fn int_solve(a: &[Vec<Int>], b: &[Int], cols: usize) -> Option<Vec<Int>> {
    let ce = column_echelon(a, cols);
    let mut y = vec![Int::zero(); cols];
    for k in 0..ce.rank {
        let r = ce.pivot_rows[k];
        let rest = (0..k).fold(b[r].clone(), |s, j| s - &ce.h[r][j] * &y[j]);
        let (q, rem) = rest.div_rem(&ce.h[r][k]);
        if !rem.is_zero() {
            return None;
        }
        y[k] = q;
    }
    let hy = mat_vec_int(&ce.h, &y);
    if hy.as_slice() != b {
        return None;
    }
    Some(mat_vec_int(&ce.u, &y))
}

/// Exact inverse of a unimodular integer matrix.
pub fn inverse_int(a: &[Vec<Int>]) -> Option<IntMat> {
    let inv = inverse(&to_rat_mat(a))?;
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

/// Basis (as rows) of the pure sublattice `span(vs) ∩ Z^m`.
pub fn saturate(vs: &[Vec<Int>], m: usize) -> IntMat {
    if vs.is_empty() {
        return Vec::new();
    }
    let ce = column_echelon(vs, m);
    let u_inv = inverse_int(&ce.u).expect("echelon transform is unimodular");
    u_inv.into_iter().take(ce.rank).collect()
}

/// Gcd of the maximal minors of the matrix with rows `vs`, via column echelon
/// form. Returns zero when the rows are dependent.
pub fn maximal_minor_gcd(vs: &[Vec<Int>], m: usize) -> Int {
    let ce = column_echelon(vs, m);
    if ce.rank < vs.len() {
        return Int::zero();
    }
    (0..ce.rank)
        .fold(Int::one(), |p, k| p * &ce.h[k][k])
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, rat};

    fn im(rows: &[&[i64]]) -> IntMat {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let a = im(&[&[2, 3, 1], &[4, 1, -2], &[0, 5, 7]]);
        assert_eq!(det_int(&a), int(-30));
        assert_eq!(Rat::from_integer(det_int(&a)), det_rat(&to_rat_mat(&a)));
        assert_eq!(det_int(&im(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn echelon_is_a_unimodular_factorisation() {
        let a = im(&[&[3, 2, 6], &[1, 4, 5]]);
        let ce = column_echelon(&a, 3);
        assert_eq!(mat_mul_int(&a, &ce.u), ce.h);
        assert_eq!(det_int(&ce.u).abs(), int(1));
        assert_eq!(ce.rank, 2);
        assert!(ce.h.iter().all(|r| r[2].is_zero()));
    }

    #[test]
    fn kernel_and_solve() {
        let a = im(&[&[1, 1, 0]]);
        let k = int_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot_int(&a[0], v), int(0));
        }
        let x = int_solve(&im(&[&[2, 4]]), &[int(6)], 2).unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 4, int(6));
        assert!(int_solve(&im(&[&[2, 4]]), &[int(3)], 2).is_none());
    }

    #[test]
    fn saturation_of_a_scaled_vector() {
        let s = saturate(&im(&[&[2, 4, 6]]), 3);
        assert_eq!(s.len(), 1);
        assert_eq!(primitive(&s[0]).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![int(1), int(2), int(3)]);
        assert_eq!(maximal_minor_gcd(&im(&[&[2, 0], &[0, 1]]), 2), int(2));
        assert_eq!(maximal_minor_gcd(&im(&[&[3, 2, 6]]), 3), int(1));
    }

    #[test]
    fn rational_solve_and_inverse() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], rat(-2, 1));
        assert_eq!(solve(&a, &[rat(5, 1), rat(11, 1)]).unwrap(), vec![rat(1, 1), rat(2, 1)]);
        assert_eq!(nullspace(&[vec![rat(1, 1), rat(1, 1)]], 2).len(), 1);
    }
}
