//! Small-matrix linear algebra: exact characteristic polynomials and linear
//! solves over `CScalar`, plus the floating-point eigen machinery used on top
//! of exactly-computed restriction matrices (polynomial root finding by
//! Durand-Kerner and eigenvectors by inverse iteration).

#![allow(clippy::needless_range_loop)] // index loops mirror the matrix math

use crate::scalar::CScalar;
use num_complex::Complex64;
use num_traits::Zero;

/// Characteristic polynomial coefficients of a square matrix, exact, by the
/// Faddeev-LeVerrier recurrence. Returned lowest degree first, monic:
/// `det(lambda I - A) = c[0] + c[1] lambda + ... + c[n] lambda^n`, `c[n] = 1`.
pub fn char_poly(a: &[Vec<CScalar>]) -> Vec<CScalar> {
    let n = a.len();
    if n == 0 {
        return vec![CScalar::one()];
    }
    let mut coeffs = vec![CScalar::zero(); n + 1];
    coeffs[n] = CScalar::one();
    let mut m: Vec<Vec<CScalar>> = identity(n);
    for k in 1..=n {
        // M_k = A * M_{k-1} + c_{n-k+1} I  (computed in place below)
        let am = mat_mul(a, &m);
        let trace = (0..n).fold(CScalar::zero(), |acc, i| &acc + &am[i][i]);
        let c = &(-&trace) * &CScalar::from_frac(1, k as i64);
        coeffs[n - k] = c.clone();
        m = am;
        for i in 0..n {
            m[i][i] = &m[i][i] + &c;
        }
    }
    coeffs
}

fn identity(n: usize) -> Vec<Vec<CScalar>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CScalar::one()
                    } else {
                        CScalar::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<CScalar>], b: &[Vec<CScalar>]) -> Vec<Vec<CScalar>> {
    let n = a.len();
    let mut out = vec![vec![CScalar::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let add = &a[i][k] * &b[k][j];
                out[i][j] = &out[i][j] + &add;
            }
        }
    }
    out
}

/// Exact solve of a (possibly overdetermined, consistent) linear system by
/// Gaussian elimination. Returns `None` if the system is inconsistent or the
/// solution is not unique.
pub fn solve_exact(a: &[Vec<CScalar>], b: &[CScalar]) -> Option<Vec<CScalar>> {
    let rows = a.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<CScalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][col].inv();
        for j in col..=cols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=cols {
                    let sub = &f * &m[rank][j];
                    m[r][j] = &m[r][j] - &sub;
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // inconsistent rows
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    // unique solution requires a pivot in every column
    let mut x = vec![CScalar::zero(); cols];
    for col in 0..cols {
        let pr = pivot_of_col[col];
        if pr == usize::MAX {
            return None;
        }
        x[col] = m[pr][cols].clone();
    }
    Some(x)
}

/// Roots of a monic complex polynomial (coefficients lowest-first, last = 1)
/// by the Durand-Kerner iteration. Exact zero roots are split off first so
/// nilpotent blocks come out sharp.
pub fn poly_roots(coeffs_exact: &[CScalar]) -> Vec<Complex64> {
    let mut low = 0;
    while low < coeffs_exact.len() - 1 && coeffs_exact[low].is_zero() {
        low += 1;
    }
    let mut roots = vec![Complex64::zero(); low];
    let reduced: Vec<Complex64> = coeffs_exact[low..]
        .iter()
        .map(|c| {
            let (re, im) = c.to_f64_pair();
            Complex64::new(re, im)
        })
        .collect();
    let deg = reduced.len() - 1;
    if deg == 0 {
        return roots;
    }
    let radius = 1.0
        + reduced[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius * 0.8, th)
        })
        .collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::zero();
        for c in reduced.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-15 * radius.max(1.0) {
            break;
        }
    }
    roots.extend(z);
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    roots
}

/// Solves the dense complex system `A x = b` by Gaussian elimination with
/// partial pivoting. Returns `None` on (numerically) singular `A`.
pub fn solve_complex(a: &[Vec<Complex64>], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = a.len();
    let mut m: Vec<Vec<Complex64>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    for col in 0..n {
        let piv =
            (col..n).max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap())?;
        if m[piv][col].norm() < 1e-280 {
            return None;
        }
        m.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for j in col..=n {
                let sub = f * m[col][j];
                m[r][j] -= sub;
            }
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for i in (0..n).rev() {
        let mut acc = m[i][n];
        for j in i + 1..n {
            acc -= m[i][j] * x[j];
        }
        x[i] = acc / m[i][i];
    }
    Some(x)
}

/// Eigenvector for an approximate eigenvalue by shifted inverse iteration.
pub fn inverse_iteration(a: &[Vec<Complex64>], lambda: Complex64) -> Vec<Complex64> {
    let n = a.len();
    let scale = a
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
        .max(lambda.norm())
        .max(1.0);
    let shift = lambda + Complex64::new(1e-11 * scale, 1e-12 * scale);
    let shifted: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { a[i][j] - shift } else { a[i][j] })
                .collect()
        })
        .collect();
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + 0.3 * i as f64, 0.1 - 0.05 * i as f64))
        .collect();
    normalize(&mut v);
    for _ in 0..6 {
        match solve_complex(&shifted, &v) {
            Some(mut w) => {
                normalize(&mut w);
                v = w;
            }
            None => break,
        }
    }
    // fix the phase: make the largest component real positive
    let k = (0..n)
        .max_by(|&i, &j| v[i].norm().partial_cmp(&v[j].norm()).unwrap())
        .unwrap();
    let phase = v[k] / v[k].norm();
    for z in v.iter_mut() {
        *z /= phase;
    }
    v
}

fn normalize(v: &mut [Complex64]) {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}

/// Residual `||A v - lambda v||_inf` used to certify float eigenpairs.
pub fn eigen_residual(a: &[Vec<Complex64>], lambda: Complex64, v: &[Complex64]) -> f64 {
    let n = a.len();
    (0..n)
        .map(|i| {
            let mut acc = -lambda * v[i];
            for j in 0..n {
                acc += a[i][j] * v[j];
            }
            acc.norm()
        })
        .fold(0.0, f64::max)
}

pub fn to_complex_matrix(a: &[Vec<CScalar>]) -> Vec<Vec<Complex64>> {
    a.iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    let (re, im) = c.to_f64_pair();
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect()
}
