//! Brute-force reference computations used to cross-check the Krylov
//! pipeline. Nothing here calls into the determinant, minimum polynomial,
//! Hankel or adjoint modules.

use crate::algebra::{sign_elem, Ring};
use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};

/// Laplace expansion along the first row. Factorial cost.
pub fn det_laplace<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.rows();
    match n {
        0 => ring.one(),
        1 => a.get(0, 0).clone(),
        2 => ring.sub(
            &ring.mul(a.get(0, 0), a.get(1, 1)),
            &ring.mul(a.get(0, 1), a.get(1, 0)),
        ),
        _ => {
            let mut acc = ring.zero();
            for j in 0..n {
                if ring.is_zero(a.get(0, j)) {
                    continue;
                }
                let term = ring.mul(a.get(0, j), &det_laplace(ring, &a.minor(0, j)));
                acc = if j % 2 == 0 {
                    ring.add(&acc, &term)
                } else {
                    ring.sub(&acc, &term)
                };
            }
            acc
        }
    }
}

/// Fraction-free (Bareiss) elimination. Works over any integral domain whose
/// ring implements exact division, and over fields.
pub fn det_bareiss<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    let n = a.rows();
    if n == 0 {
        return Ok(ring.one());
    }
    let mut m: Vec<Vec<R::Elem>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !ring.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(&m[i][j], &m[k][k]),
                    &ring.mul(&m[i][k], &m[k][j]),
                );
                m[i][j] = ring.div_exact(&num, &prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { ring.neg(&d) } else { d })
}

/// Gaussian elimination with unit pivots. For fields, and for rings like the
/// dual numbers where a nonzero column always contains a unit.
pub fn det_elimination<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    let n = a.rows();
    let mut m: Vec<Vec<R::Elem>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut det = ring.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| ring.is_unit(&m[i][k])) else {
            if (k..n).all(|i| ring.is_zero(&m[i][k])) {
                return Ok(ring.zero());
            }
            return Err(Error::NotUnit(format!("no unit pivot in column {k}")));
        };
        if p != k {
            m.swap(k, p);
            det = ring.neg(&det);
        }
        det = ring.mul(&det, &m[k][k]);
        let pinv = ring.inv(&m[k][k])?;
        for i in k + 1..n {
            if ring.is_zero(&m[i][k]) {
                continue;
            }
            let factor = ring.mul(&m[i][k], &pinv);
            for j in k..n {
                let t = ring.mul(&factor, &m[k][j]);
                m[i][j] = ring.sub(&m[i][j], &t);
            }
        }
    }
    Ok(det)
}

/// Gauss–Jordan inverse over a field. `None` if singular.
pub fn inverse_elimination<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Option<Matrix<R::Elem>>> {
    let n = a.rows();
    let mut m: Vec<Vec<R::Elem>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { ring.one() } else { ring.zero() }));
            row
        })
        .collect();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| ring.is_unit(&m[i][k])) else {
            return Ok(None);
        };
        m.swap(k, p);
        let pinv = ring.inv(&m[k][k])?;
        m[k] = m[k].iter().map(|x| ring.mul(x, &pinv)).collect();
        for i in 0..n {
            if i == k || ring.is_zero(&m[i][k]) {
                continue;
            }
            let factor = m[i][k].clone();
            for j in 0..2 * n {
                let t = ring.mul(&factor, &m[k][j]);
                m[i][j] = ring.sub(&m[i][j], &t);
            }
        }
    }
    Ok(Some(Matrix::from_fn(n, n, |i, j| m[i][n + j].clone())))
}

/// Rank over a field.
pub fn rank<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<usize> {
    let mut m: Vec<Vec<R::Elem>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| ring.is_unit(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let pinv = ring.inv(&m[r][c])?;
        for i in r + 1..rows {
            if ring.is_zero(&m[i][c]) {
                continue;
            }
            let factor = ring.mul(&m[i][c], &pinv);
            for j in c..cols {
                let t = ring.mul(&factor, &m[r][j]);
                m[i][j] = ring.sub(&m[i][j], &t);
            }
        }
        r += 1;
    }
    Ok(r)
}

/// Adjugate from signed minors: `adj[j][i] = (-1)^{i+j} det(minor(i, j))`.
/// Defined for singular inputs too.
pub fn adjugate_cofactor<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::DimensionMismatch("adjugate of a non-square matrix".into()));
    }
    if n == 1 {
        return Ok(Matrix::identity(ring, 1));
    }
    let mut adj = Matrix::zeros(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let d = det_bareiss(ring, &a.minor(i, j))?;
            adj.set(j, i, ring.mul(&sign_elem(ring, i + j), &d));
        }
    }
    Ok(adj)
}

/// `h_k = u A^k v` for `k < len`, by repeated matrix–vector products.
pub fn krylov_sequence<R: Ring>(
    ring: &R,
    a: &Matrix<R::Elem>,
    u: &[R::Elem],
    v: &[R::Elem],
    len: usize,
) -> Vec<R::Elem> {
    let mut w = v.to_vec();
    let mut h = Vec::with_capacity(len);
    for _ in 0..len {
        h.push(dot(ring, u, &w));
        w = a.mul_vec(ring, &w);
    }
    h
}

/// `(h_{i+j+shift})` for `0 <= i, j < n`.
pub fn hankel_from<R: Ring>(h: &[R::Elem], n: usize, shift: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| h[i + j + shift].clone())
}

/// Krylov matrices: rows `u, uA, …, uA^{n-1}` and columns `v, Av, …, A^{n-1}v`.
#[derive(Debug, Clone)]
pub struct KrylovMatrices<E> {
    pub ku_tilde: Matrix<E>,
    pub kv: Matrix<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrylovVerdict {
    /// `H = K̃_u · K_v`.
    pub h_factors: bool,
    /// `H_A = K̃_u · A · K_v`.
    pub ha_factors: bool,
    pub ku_rank: usize,
    pub kv_rank: usize,
}

impl KrylovVerdict {
    pub fn holds(&self) -> bool {
        self.h_factors && self.ha_factors
    }
}

/// Builds the Krylov matrices and checks both Hankel factorizations.
pub fn krylov_check<R: Ring>(
    ring: &R,
    a: &Matrix<R::Elem>,
    u: &[R::Elem],
    v: &[R::Elem],
) -> Result<(KrylovMatrices<R::Elem>, KrylovVerdict)> {
    let n = a.rows();
    let mut rows = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    let (mut ur, mut vc) = (u.to_vec(), v.to_vec());
    for _ in 0..n {
        rows.push(ur.clone());
        cols.push(vc.clone());
        ur = a.vec_mul(ring, &ur);
        vc = a.mul_vec(ring, &vc);
    }
    let ku_tilde = Matrix::from_rows(rows);
    let kv = Matrix::from_rows(cols).transpose();
    let h = krylov_sequence(ring, a, u, v, 2 * n);
    let hm = hankel_from::<R>(&h, n, 0);
    let ham = hankel_from::<R>(&h, n, 1);
    let verdict = KrylovVerdict {
        h_factors: ku_tilde.mul(ring, &kv).equal(ring, &hm),
        ha_factors: ku_tilde.mul(ring, a).mul(ring, &kv).equal(ring, &ham),
        ku_rank: rank(ring, &ku_tilde)?,
        kv_rank: rank(ring, &kv)?,
    };
    Ok((KrylovMatrices { ku_tilde, kv }, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DualRing, Integers, PrimeField, Rationals, SampleRing};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn adjugate_small_cases() {
        let z = Integers::new();
        let a = Matrix::from_i64(&z, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(
            adjugate_cofactor(&z, &a).unwrap(),
            Matrix::from_i64(&z, &[vec![4, -2], vec![-3, 1]])
        );
        let s = Matrix::from_i64(&z, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(
            adjugate_cofactor(&z, &s).unwrap(),
            Matrix::from_i64(&z, &[vec![1, -1], vec![-1, 1]])
        );
        let i3 = Matrix::identity(&z, 3);
        assert_eq!(adjugate_cofactor(&z, &i3).unwrap(), i3);
    }

    #[test]
    fn determinant_small_cases() {
        let q = Rationals::new();
        let a = Matrix::from_i64(&q, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(det_elimination(&q, &a).unwrap(), q.from_i64(-2));
        assert_eq!(det_bareiss(&q, &a).unwrap(), q.from_i64(-2));
        assert_eq!(det_laplace(&q, &a), q.from_i64(-2));
        assert_eq!(det_elimination(&q, &Matrix::identity(&q, 4)).unwrap(), q.one());
    }

    #[test]
    fn inverse_two_by_two() {
        let q = Rationals::new();
        let h = Matrix::from_i64(&q, &[vec![1, 1], vec![1, 2]]);
        assert_eq!(
            inverse_elimination(&q, &h).unwrap().unwrap(),
            Matrix::from_i64(&q, &[vec![2, -1], vec![-1, 1]])
        );
    }

    #[test]
    fn determinant_methods_agree_on_random_integer_matrices() {
        let z = Integers::new();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            let a = Matrix::from_fn(n, n, |_, _| z.sample(&mut rng));
            assert_eq!(det_bareiss(&z, &a).unwrap(), det_laplace(&z, &a));
        }
    }

    #[test]
    fn adjugate_identity_including_singular() {
        let z = Integers::new();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=5 {
            let mut a = Matrix::from_fn(n, n, |_, _| z.sample(&mut rng));
            if n >= 2 {
                // make row 1 a copy of row 0 so that det = 0
                for j in 0..n {
                    let v = a.get(0, j).clone();
                    a.set(1, j, v);
                }
            }
            let adj = adjugate_cofactor(&z, &a).unwrap();
            let d = det_laplace(&z, &a);
            let di = Matrix::identity(&z, n).scale(&z, &d);
            assert_eq!(a.mul(&z, &adj), di);
            assert_eq!(adj.mul(&z, &a), di);
        }
    }

    #[test]
    fn dual_elimination_of_perturbed_identity() {
        let f = PrimeField::default();
        let d = DualRing::new(f.clone());
        let mut a = Matrix::identity(&d, 2);
        a.set(0, 0, crate::algebra::dual_lift(1, 1));
        let det = det_elimination(&d, &a).unwrap();
        assert_eq!((det.re, det.eps), (1, 1));
    }

    #[test]
    fn krylov_check_worked_instance() {
        let q = Rationals::new();
        let a = Matrix::from_i64(&q, &[vec![1, 2], vec![3, 4]]);
        let u = vec![q.one(), q.zero()];
        let (k, verdict) = krylov_check(&q, &a, &u, &u).unwrap();
        assert!(verdict.holds());
        assert_eq!(
            k.ku_tilde.mul(&q, &k.kv),
            Matrix::from_i64(&q, &[vec![1, 1], vec![1, 7]])
        );
    }

    #[test]
    fn krylov_check_zero_projection_reports_rank_defect() {
        let f = PrimeField::default();
        let a = Matrix::from_i64(&f, &[vec![1, 2], vec![3, 4]]);
        let (_, verdict) = krylov_check(&f, &a, &[0, 0], &[1, 0]).unwrap();
        assert!(verdict.holds());
        assert_eq!(verdict.ku_rank, 0);
        assert_eq!(verdict.kv_rank, 2);
    }

    #[test]
    fn krylov_check_random_field_instance() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = Matrix::from_fn(6, 6, |_, _| f.sample(&mut rng));
        let u: Vec<u64> = (0..6).map(|_| f.sample(&mut rng)).collect();
        let v: Vec<u64> = (0..6).map(|_| f.sample(&mut rng)).collect();
        let (_, verdict) = krylov_check(&f, &a, &u, &v).unwrap();
        assert!(verdict.holds());
    }
}
