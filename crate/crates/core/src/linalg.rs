//! Small dense complex matrices (2x2 and 4x4) backing the state types.
//!
//! Hermitian eigenvalues are computed by embedding the n x n complex
//! Hermitian matrix into the 2n x 2n real symmetric matrix
//! `[[X, -Y], [Y, X]]` (where `A = X + iY`) and running cyclic Jacobi
//! rotations; the embedding doubles every eigenvalue.

use num_complex::Complex;

use crate::scalar::Real;

/// Complex scalar over the crate's real type.
pub type C<T> = Complex<T>;

/// Dense N x N complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat<T, const N: usize>(pub [[C<T>; N]; N]);

pub type Mat2<T> = Mat<T, 2>;
pub type Mat4<T> = Mat<T, 4>;

fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

fn cr<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

impl<T: Real, const N: usize> Mat<T, N> {
    pub fn zero() -> Self {
        Mat([[cr(T::zero()); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = cr(T::one());
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> C<T>) -> Self {
        let mut m = Self::zero();
        for (i, row) in m.0.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = f(i, j);
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> C<T> {
        let mut t = cr(T::zero());
        for i in 0..N {
            t = t + self.0[i][i];
        }
        t
    }

    /// `tr(self * rhs)` without forming the product.
    pub fn trace_mul(&self, rhs: &Self) -> C<T> {
        let mut t = cr(T::zero());
        for i in 0..N {
            for k in 0..N {
                t = t + self.0[i][k] * rhs.0[k][i];
            }
        }
        t
    }

    /// Largest entry magnitude of `self - self†`.
    pub fn hermitian_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                let d = (self.0[i][j] - self.0[j][i].conj()).norm_sqr().sqrt();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Largest entry magnitude of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                let d = (self.0[i][j] - rhs.0[i][j]).norm_sqr().sqrt();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Eigenvalues of a Hermitian matrix, ascending. The imaginary parts of
    /// the input are assumed to satisfy the Hermitian constraint; no check is
    /// performed here.
    pub fn eigenvalues_hermitian(&self) -> [T; N] {
        let n2 = 2 * N;
        let mut b = vec![vec![T::zero(); n2]; n2];
        for i in 0..N {
            for j in 0..N {
                let x = (self.0[i][j].re + self.0[j][i].re) * T::half();
                let y = (self.0[i][j].im - self.0[j][i].im) * T::half();
                // A = X + iY with X symmetric, Y antisymmetric.
                b[i][j] = x;
                b[i + N][j + N] = x;
                b[i][j + N] = -y;
                b[i + N][j] = y;
            }
        }
        let mut eig = symmetric_eigenvalues(b);
        eig.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        // Doubled spectrum: adjacent sorted pairs are the same eigenvalue.
        let mut out = [T::zero(); N];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = (eig[2 * k] + eig[2 * k + 1]) * T::half();
        }
        out
    }
}

impl<T: Real, const N: usize> std::ops::Add for Mat<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<T: Real, const N: usize> std::ops::Sub for Mat<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl<T: Real, const N: usize> std::ops::Mul for Mat<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                for j in 0..N {
                    m.0[i][j] = m.0[i][j] + a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl<T: Real, const N: usize> std::ops::Neg for Mat<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.0[i][j])
    }
}

/// Pauli matrices `[sigma_x, sigma_y, sigma_z]`.
pub fn pauli<T: Real>() -> [Mat2<T>; 3] {
    let o = T::zero();
    let l = T::one();
    [
        Mat([[c(o, o), c(l, o)], [c(l, o), c(o, o)]]),
        Mat([[c(o, o), c(o, -l)], [c(o, l), c(o, o)]]),
        Mat([[c(l, o), c(o, o)], [c(o, o), c(-l, o)]]),
    ]
}

/// Kronecker product with the left factor acting on the first subsystem;
/// basis order |00>, |01>, |10>, |11>.
pub fn kron<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat4<T> {
    Mat4::from_fn(|i, j| a.0[i / 2][j / 2] * b.0[i % 2][j % 2])
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
fn symmetric_eigenvalues<T: Real>(mut a: Vec<Vec<T>>) -> Vec<T> {
    let n = a.len();
    let mut frob = T::zero();
    for row in &a {
        for &v in row {
            frob = frob + v * v;
        }
    }
    let frob = frob.sqrt();
    if frob == T::zero() {
        return vec![T::zero(); n];
    }
    let target = frob * T::epsilon();

    for _sweep in 0..64 {
        let mut off = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off = off + a[i][j] * a[i][j];
            }
        }
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() <= target * T::epsilon() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (T::two() * apq);
                let t = if theta.abs() > T::epsilon().recip() {
                    (T::two() * theta).recip()
                } else {
                    let s = if theta >= T::zero() { T::one() } else { -T::one() };
                    s / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let cos = (t * t + T::one()).sqrt().recip();
                let sin = t * cos;
                let tau = sin / (T::one() + cos);

                a[p][p] = a[p][p] - t * apq;
                a[q][q] = a[q][q] + t * apq;
                a[p][q] = T::zero();
                a[q][p] = T::zero();
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp - sin * (akq + tau * akp);
                    a[p][k] = a[k][p];
                    a[k][q] = akq + sin * (akp - tau * akq);
                    a[q][k] = a[k][q];
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn pauli_algebra() {
        let [sx, sy, sz] = pauli::<f64>();
        // sigma_x sigma_y = i sigma_z
        let prod = sx * sy;
        let isz = sz.scale(1.0);
        for i in 0..2 {
            for j in 0..2 {
                let expect = Complex::new(0.0, 1.0) * isz.0[i][j];
                assert!((prod.0[i][j] - expect).norm_sqr() < 1e-30);
            }
        }
        assert!(sx.hermitian_defect() == 0.0);
        assert!(sy.hermitian_defect() == 0.0);
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = Mat2::from_fn(|i, j| {
            if i == j {
                Complex::new([3.0, -1.0][i], 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let e = m.eigenvalues_hermitian();
        assert!(close(e[0], -1.0, 1e-14) && close(e[1], 3.0, 1e-14));
    }

    #[test]
    fn eigenvalues_of_pauli_y() {
        // Complex off-diagonal entries exercise the real embedding.
        let [_, sy, _] = pauli::<f64>();
        let e = sy.eigenvalues_hermitian();
        assert!(close(e[0], -1.0, 1e-14) && close(e[1], 1.0, 1e-14));
    }

    #[test]
    fn eigenvalues_of_dense_hermitian_4x4() {
        // H = v v† + w w† has eigenvalues {|v|², |w|², 0, 0} for orthogonal v, w.
        let v = [
            Complex::new(1.0, 0.5),
            Complex::new(0.0, -1.0),
            Complex::new(2.0, 0.0),
            Complex::new(0.5, 0.5),
        ];
        let w = [
            Complex::new(0.0, 1.0),
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(-1.0, 1.0),
        ];
        // Orthogonalize w against v.
        let vv: Complex<f64> = v.iter().map(|a| a * a.conj()).sum();
        let vw: Complex<f64> = v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
        let w: Vec<Complex<f64>> = w
            .iter()
            .zip(&v)
            .map(|(b, a)| b - a * (vw / vv))
            .collect();
        let ww: Complex<f64> = w.iter().map(|a| a * a.conj()).sum();

        let m = Mat4::from_fn(|i, j| v[i] * v[j].conj() + w[i] * w[j].conj());
        let e = m.eigenvalues_hermitian();
        assert!(close(e[0], 0.0, 1e-12));
        assert!(close(e[1], 0.0, 1e-12));
        assert!(close(e[2], ww.re.min(vv.re), 1e-12));
        assert!(close(e[3], ww.re.max(vv.re), 1e-12));
    }

    #[test]
    fn kron_places_left_factor_on_first_subsystem() {
        let [sx, _, _] = pauli::<f64>();
        let id = Mat2::<f64>::identity();
        let m = kron(&sx, &id);
        // (sx ⊗ I)|00> = |10>, so column 0 has a 1 in row 2.
        assert!(close(m.0[2][0].re, 1.0, 0.0));
        assert!(close(m.0[0][0].re, 0.0, 0.0));
        assert!(close(m.0[3][1].re, 1.0, 0.0));
    }
}
