//! Conjugate-gradient solver for symmetric positive-definite systems and the
//! ridge-regularized least-squares fit built on it.

use super::{dot, norm2, DenseMatrix, Real};
use crate::error::Error;

/// Outcome of a conjugate-gradient solve.
#[derive(Debug, Clone)]
pub struct CgSolution<T> {
    pub x: Vec<T>,
    pub converged: bool,
    pub iterations: usize,
    pub residual_norm: T,
}

/// Solves `(H + damping I) x = b` by conjugate gradients.
///
/// `H` must be symmetric (checked to `1e-8` relative to its largest entry).
/// Stops once the residual norm falls below `tol * |b|`, or returns the best
/// iterate after `max_iter` steps with `converged == false`.
pub fn solve_spd<T: Real>(
    h: &DenseMatrix<T>,
    b: &[T],
    damping: T,
    tol: T,
    max_iter: usize,
) -> Result<CgSolution<T>, Error> {
    let n = h.rows();
    if h.cols() != n || b.len() != n {
        return Err(Error::Argument(format!(
            "solve_spd shape mismatch: H is {}x{}, b has {}",
            h.rows(),
            h.cols(),
            b.len()
        )));
    }
    if damping < T::zero() {
        return Err(Error::Argument("damping must be non-negative".into()));
    }
    let scale = h.max_abs().max(T::one());
    let sym_tol = T::of(1e-8) * scale;
    for i in 0..n {
        for j in i + 1..n {
            if (h.get(i, j) - h.get(j, i)).abs() > sym_tol {
                return Err(Error::Argument(format!(
                    "non-symmetric matrix: |H[{i},{j}] - H[{j},{i}]| exceeds tolerance"
                )));
            }
        }
    }
    if b.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("NaN or infinite entry in rhs".into()));
    }

    let apply = |v: &[T]| -> Vec<T> {
        let mut out = h.matvec(v);
        if damping > T::zero() {
            for (o, x) in out.iter_mut().zip(v) {
                *o = *o + damping * *x;
            }
        }
        out
    };

    let b_norm = norm2(b);
    let mut x = vec![T::zero(); n];
    if b_norm == T::zero() {
        return Ok(CgSolution { x, converged: true, iterations: 0, residual_norm: T::zero() });
    }
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut rs = dot(&r, &r);

    for it in 0..max_iter {
        let ap = apply(&p);
        let p_ap = dot(&p, &ap);
        if !p_ap.is_finite() {
            return Err(Error::Numeric(format!("NaN encountered at CG iteration {it}")));
        }
        if p_ap <= T::zero() {
            return Err(Error::Numeric(
                "matrix is not positive definite along a search direction".into(),
            ));
        }
        let alpha = rs / p_ap;
        for (xi, pi) in x.iter_mut().zip(&p) {
            *xi = *xi + alpha * *pi;
        }
        for (ri, api) in r.iter_mut().zip(&ap) {
            *ri = *ri - alpha * *api;
        }
        let rs_new = dot(&r, &r);
        if !rs_new.is_finite() {
            return Err(Error::Numeric(format!("NaN encountered at CG iteration {it}")));
        }
        let res = rs_new.sqrt();
        if res <= tol * b_norm {
            return Ok(CgSolution { x, converged: true, iterations: it + 1, residual_norm: res });
        }
        let beta = rs_new / rs;
        for (pi, ri) in p.iter_mut().zip(&r) {
            *pi = *ri + beta * *pi;
        }
        rs = rs_new;
    }

    let res = rs.sqrt();
    Ok(CgSolution { x, converged: false, iterations: max_iter, residual_norm: res })
}

/// [`solve_spd`] with tolerance `1e-10` and `10 * dim` iterations.
pub fn solve_spd_default<T: Real>(
    h: &DenseMatrix<T>,
    b: &[T],
    damping: T,
) -> Result<CgSolution<T>, Error> {
    solve_spd(h, b, damping, T::of(1e-10), 10 * h.rows().max(1))
}

/// Ridge least squares: solves `(Z^T Z + damping I) w = Z^T y`.
///
/// With zero damping a rank-deficient design is rejected up front so the
/// caller gets a actionable error instead of an arbitrary minimizer.
pub fn least_squares_weights<T: Real>(
    z: &DenseMatrix<T>,
    y: &[T],
    damping: T,
) -> Result<Vec<T>, Error> {
    if z.rows() != y.len() {
        return Err(Error::Argument(format!(
            "least squares shape mismatch: Z has {} rows, y has {}",
            z.rows(),
            y.len()
        )));
    }
    let h = {
        let mut g = z.gram();
        if damping > T::zero() {
            for i in 0..g.rows() {
                let v = g.get(i, i) + damping;
                g.set(i, i, v);
            }
        }
        g
    };
    if damping == T::zero() {
        let probe = DenseMatrix::zeros(h.rows(), 1);
        if h.lu_solve(&probe).is_err() {
            return Err(Error::Numeric(
                "rank-deficient design matrix; supply a positive damping".into(),
            ));
        }
    }
    let rhs = z.tr_matvec(y);
    let sol = solve_spd_default(&h, &rhs, T::zero())?;
    if !sol.converged {
        return Err(Error::Numeric(format!(
            "normal equations did not converge (residual {}); consider damping",
            sol.residual_norm
        )));
    }
    Ok(sol.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::SeedStream;
    use rand::Rng;

    /// Dense Cholesky solve, used only as an independent oracle.
    fn cholesky_solve(h: &DenseMatrix<f64>, b: &[f64]) -> Vec<f64> {
        let n = h.rows();
        let mut l = DenseMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = h.get(i, j);
                for k in 0..j {
                    s -= l.get(i, k) * l.get(j, k);
                }
                if i == j {
                    l.set(i, j, s.sqrt());
                } else {
                    l.set(i, j, s / l.get(j, j));
                }
            }
        }
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= l.get(i, k) * y[k];
            }
            y[i] = s / l.get(i, i);
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= l.get(k, i) * x[k];
            }
            x[i] = s / l.get(i, i);
        }
        x
    }

    fn random_spd(n: usize, seed: u64) -> DenseMatrix<f64> {
        let mut rng = SeedStream::new(seed).rng("spd");
        let mut a = DenseMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        let mut h = a.gram();
        for i in 0..n {
            let v = h.get(i, i) + 0.5;
            h.set(i, i, v);
        }
        h
    }

    #[test]
    fn identity_system() {
        let h = DenseMatrix::<f64>::identity(2);
        let sol = solve_spd_default(&h, &[3.0, -1.0], 0.0).unwrap();
        assert!(sol.converged);
        assert!((sol.x[0] - 3.0).abs() < 1e-12);
        assert!((sol.x[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_system() {
        let h = DenseMatrix::<f64>::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]);
        let sol = solve_spd_default(&h, &[2.0, 4.0], 0.0).unwrap();
        assert!((sol.x[0] - 1.0).abs() < 1e-12);
        assert!((sol.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn seeded_8x8_matches_cholesky() {
        let h = random_spd(8, 7);
        let mut rng = SeedStream::new(7).rng("rhs");
        let b: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let cg = solve_spd_default(&h, &b, 0.0).unwrap();
        let direct = cholesky_solve(&h, &b);
        let num = crate::numerics::norm2(
            &cg.x.iter().zip(&direct).map(|(a, b)| a - b).collect::<Vec<_>>(),
        );
        let den = crate::numerics::norm2(&direct);
        assert!(num / den < 1e-8, "relative error {}", num / den);
    }

    #[test]
    fn cg_agrees_with_direct_solve_over_100_systems() {
        for seed in 0..100u64 {
            let n = 2 + (seed as usize % 15);
            let h = random_spd(n, 1000 + seed);
            let mut rng = SeedStream::new(seed).rng("rhs");
            let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let cg = solve_spd_default(&h, &b, 0.0).unwrap();
            let direct = cholesky_solve(&h, &b);
            let num = crate::numerics::norm2(
                &cg.x.iter().zip(&direct).map(|(a, b)| a - b).collect::<Vec<_>>(),
            );
            let den = crate::numerics::norm2(&direct).max(1e-30);
            assert!(num / den < 1e-7, "seed {seed}: relative error {}", num / den);
        }
    }

    #[test]
    fn non_symmetric_rejected() {
        let h = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(
            solve_spd_default(&h, &[1.0, 1.0], 0.0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn least_squares_identity_design() {
        let z = DenseMatrix::<f64>::identity(2);
        let w = least_squares_weights(&z, &[1.0, 2.0], 0.0).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-10);
        assert!((w[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn least_squares_scalar_normal_equation() {
        // Z = [[1],[1]], y = [1,3]: (2) w = 4, so w = 2.
        let z = DenseMatrix::<f64>::from_rows(&[vec![1.0], vec![1.0]]);
        let w = least_squares_weights(&z, &[1.0, 3.0], 0.0).unwrap();
        assert!((w[0] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn least_squares_optimality_residual() {
        let mut rng = SeedStream::new(42).rng("ls");
        let z = DenseMatrix::from_rows(
            &(0..10)
                .map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect::<Vec<Vec<f64>>>(),
        );
        let y: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let w = least_squares_weights(&z, &y, 0.0).unwrap();
        // gradient Z^T (Z w - y) should vanish at the optimum
        let mut resid = z.matvec(&w);
        for (r, yi) in resid.iter_mut().zip(&y) {
            *r -= *yi;
        }
        let grad = z.tr_matvec(&resid);
        let bound = 1e-8 * crate::numerics::norm2(&z.tr_matvec(&y));
        assert!(crate::numerics::norm2(&grad) <= bound);
    }

    #[test]
    fn rank_deficient_rejected_without_damping() {
        let z = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let err = least_squares_weights(&z, &[1.0, 3.0], 0.0).unwrap_err();
        assert!(err.to_string().contains("damping"), "{err}");
        assert!(least_squares_weights(&z, &[1.0, 3.0], 1e-6).is_ok());
    }
}
