//! Density matrices and the lift of simplex orders to simultaneously
//! diagonalisable pairs, plus operator-level Löwner comparisons.

use crate::error::{Error, Result};
use crate::orders::{ComparisonResult, OrderSpec};
use crate::simplex::Distribution;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;

/// Default tolerance for Hermiticity/PSD/trace validation and for the
/// commutation test. Looser than the simplex comparison slack because
/// eigendecomposition noise grows with the dimension.
pub const DEFAULT_MATRIX_TOL: f64 = 1e-8;

pub type CMatrix = DMatrix<Complex64>;

/// A Hermitian, positive semidefinite, trace-one complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

fn hermitian_deviation(m: &CMatrix) -> f64 {
    let adj = m.adjoint();
    (m - adj).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

impl DensityMatrix {
    /// Validates Hermiticity, positive semidefiniteness and unit trace,
    /// then stores the exactly symmetrized Hermitian part.
    pub fn new(mat: CMatrix, tol: f64) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let deviation = hermitian_deviation(&mat);
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        let herm = (&mat + mat.adjoint()) * Complex64::new(0.5, 0.0);
        let eigs = SymmetricEigen::new(herm.clone()).eigenvalues;
        let min_eigenvalue = eigs.iter().copied().fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -tol {
            return Err(Error::NotPsd { min_eigenvalue });
        }
        let trace = herm.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::BadTrace { trace, tol });
        }
        Ok(Self { mat: herm })
    }

    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        Self::new(mat, DEFAULT_MATRIX_TOL)
    }

    /// Diagonal embedding of a distribution.
    pub fn from_diag(x: &Distribution) -> Self {
        let n = x.dim();
        let mut mat = CMatrix::zeros(n, n);
        for (k, &v) in x.values().iter().enumerate() {
            mat[(k, k)] = Complex64::new(v, 0.0);
        }
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// Largest eigenvalue; positive for any density matrix.
    pub fn max_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.mat.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether the commutator with `other` vanishes within `tol`, i.e.
    /// whether the two operators can be diagonalised simultaneously.
    pub fn commutes_with(&self, other: &DensityMatrix, tol: f64) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let comm = &self.mat * &other.mat - &other.mat * &self.mat;
        Ok(max_abs(&comm) <= tol)
    }

    /// Unitary conjugation `U self U^dagger`.
    pub fn conjugate(&self, u: &CMatrix) -> DensityMatrix {
        DensityMatrix {
            mat: u * &self.mat * u.adjoint(),
        }
    }
}

/// A shared orthonormal eigenbasis of two commuting density matrices,
/// with the eigenvalue vectors paired by basis column.
#[derive(Clone, Debug)]
pub struct JointEigenDecomposition {
    /// Columns form the shared orthonormal basis.
    pub basis: CMatrix,
    pub rho_eigs: Distribution,
    pub pi_eigs: Distribution,
}

impl JointEigenDecomposition {
    /// Largest entrywise deviation of `sum_k eig_k P_k` from the two
    /// source matrices.
    pub fn reconstruction_error(&self, rho: &DensityMatrix, pi: &DensityMatrix) -> (f64, f64) {
        let rebuild = |eigs: &Distribution| {
            let n = self.basis.nrows();
            let mut m = CMatrix::zeros(n, n);
            for (k, &lambda) in eigs.values().iter().enumerate() {
                let col = self.basis.column(k);
                let proj = col * col.adjoint();
                m += proj * Complex64::new(lambda, 0.0);
            }
            m
        };
        (
            max_abs(&(rebuild(&self.rho_eigs) - &rho.mat)),
            max_abs(&(rebuild(&self.pi_eigs) - &pi.mat)),
        )
    }
}

/// Simultaneously diagonalises two commuting density matrices.
///
/// Two-stage decomposition: eigenspaces of `rho` are extracted first, and
/// inside each degenerate eigenspace the restriction of `pi` is
/// diagonalised. Pairing by joint eigenspace is what keeps the result
/// correct when the two spectra order differently.
pub fn joint_diagonalize(
    rho: &DensityMatrix,
    pi: &DensityMatrix,
    tol: f64,
) -> Result<JointEigenDecomposition> {
    if !rho.commutes_with(pi, tol)? {
        let comm = rho.matrix() * pi.matrix() - pi.matrix() * rho.matrix();
        return Err(Error::NotCommuting {
            norm: max_abs(&comm),
            tol,
        });
    }
    let n = rho.dim();
    let eig = SymmetricEigen::new(rho.matrix().clone());
    // sort eigenpairs so degenerate groups are contiguous
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());

    let mut basis = CMatrix::zeros(n, n);
    let mut rho_eigs = vec![0.0; n];
    let mut pi_eigs = vec![0.0; n];
    let group_tol = tol.max(1e-10);

    let mut start = 0;
    while start < n {
        let lambda = eig.eigenvalues[idx[start]];
        let mut end = start + 1;
        while end < n && (eig.eigenvalues[idx[end]] - lambda).abs() <= group_tol {
            end += 1;
        }
        let m = end - start;
        // columns of the rho-eigenspace
        let mut subspace = CMatrix::zeros(n, m);
        for (c, &orig) in idx[start..end].iter().enumerate() {
            subspace.set_column(c, &eig.eigenvectors.column(orig));
        }
        if m == 1 {
            let col = subspace.column(0);
            let mu = (col.adjoint() * pi.matrix() * col)[(0, 0)].re;
            basis.set_column(start, &subspace.column(0));
            rho_eigs[start] = lambda;
            pi_eigs[start] = mu;
        } else {
            // diagonalise pi restricted to the degenerate eigenspace
            let block = subspace.adjoint() * pi.matrix() * &subspace;
            let herm_block = (&block + block.adjoint()) * Complex64::new(0.5, 0.0);
            let sub_eig = SymmetricEigen::new(herm_block);
            let rotated = &subspace * &sub_eig.eigenvectors;
            for c in 0..m {
                basis.set_column(start + c, &rotated.column(c));
                rho_eigs[start + c] = lambda;
                pi_eigs[start + c] = sub_eig.eigenvalues[c];
            }
        }
        start = end;
    }

    let dist_tol = tol.max(crate::simplex::DEFAULT_VALIDATION_TOL);
    Ok(JointEigenDecomposition {
        basis,
        rho_eigs: Distribution::new(&rho_eigs, dist_tol)?,
        pi_eigs: Distribution::new(&pi_eigs, dist_tol)?,
    })
}

/// Lifts a simplex order to density matrices: incomparable unless the two
/// operators commute, otherwise the simplex comparison of the paired
/// eigenvalue vectors. Permutation invariance of the simplex orders makes
/// the result independent of the eigenvector ordering.
pub fn lift_compare(
    spec: &OrderSpec,
    rho: &DensityMatrix,
    pi: &DensityMatrix,
    tol: f64,
) -> Result<ComparisonResult> {
    if rho.dim() != pi.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: pi.dim(),
        });
    }
    if !rho.commutes_with(pi, tol)? {
        return Ok(ComparisonResult::Incomparable);
    }
    let jd = joint_diagonalize(rho, pi, tol)?;
    spec.compare(&jd.rho_eigs, &jd.pi_eigs)
}

/// The raw Löwner order on Hermitian operators: `a` below `b` iff the
/// smallest eigenvalue of `b - a` is nonnegative within `tol`. Trivial on
/// density matrices: the trace constraint forces equality.
pub fn lowner_psd_leq(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<bool> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    let diff = b - a;
    let herm = (&diff + diff.adjoint()) * Complex64::new(0.5, 0.0);
    let min = SymmetricEigen::new(herm)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(min >= -tol)
}

/// The operator order induced by rescaling each density matrix by its
/// largest eigenvalue: `rho` below `pi` iff `pi/pi_max <= rho/rho_max` in
/// the Löwner order. Oriented so the maximally mixed state is the global
/// minimum; on commuting diagonal pairs this coincides with the simplex
/// order renormalised to the largest coordinate.
pub fn renorm_lowner_operator_leq(rho: &DensityMatrix, pi: &DensityMatrix, tol: f64) -> Result<bool> {
    if rho.dim() != pi.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: pi.dim(),
        });
    }
    let r = rho.matrix() / Complex64::new(rho.max_eigenvalue(), 0.0);
    let p = pi.matrix() / Complex64::new(pi.max_eigenvalue(), 0.0);
    lowner_psd_leq(&p, &r, tol)
}

/// Haar-distributed random unitary via QR of a complex Gaussian matrix
/// with the phase convention fixed on the diagonal of R.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let gauss = |rng: &mut R| {
        // Box-Muller
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    };
    let m = CMatrix::from_fn(n, n, |_, _| Complex64::new(gauss(rng), gauss(rng)));
    let qr = m.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d / d.norm() };
        for row in 0..n {
            q[(row, k)] *= phase.conj();
        }
    }
    q
}

/// Random density matrix: a random spectrum conjugated by a Haar unitary.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let mut eigs = Vec::with_capacity(n);
    let mut sum = 0.0;
    for _ in 0..n {
        let e = -(1.0 - rng.gen::<f64>()).ln();
        eigs.push(e);
        sum += e;
    }
    for e in eigs.iter_mut() {
        *e /= sum;
    }
    let u = random_unitary(n, rng);
    let mut diag = CMatrix::zeros(n, n);
    for (k, &e) in eigs.iter().enumerate() {
        diag[(k, k)] = Complex64::new(e, 0.0);
    }
    DensityMatrix {
        mat: &u * diag * u.adjoint(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cm(rows: &[&[f64]]) -> CMatrix {
        let n = rows.len();
        CMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    fn dm(rows: &[&[f64]]) -> DensityMatrix {
        DensityMatrix::from_matrix(cm(rows)).unwrap()
    }

    #[test]
    fn validation_catches_bad_matrices() {
        assert!(DensityMatrix::from_matrix(cm(&[&[0.5, 0.0, 0.0], &[0.0, 0.3, 0.0], &[0.0, 0.0, 0.2]])).is_ok());
        assert!(DensityMatrix::from_matrix(cm(&[&[0.5, 0.2], &[0.2, 0.5]])).is_ok());

        // eigenvalues 0.5 +- sqrt(0.41): one negative
        assert!(matches!(
            DensityMatrix::from_matrix(cm(&[&[0.9, 0.5], &[0.5, 0.1]])),
            Err(Error::NotPsd { .. })
        ));
        assert!(matches!(
            DensityMatrix::from_matrix(cm(&[&[0.9, 0.0], &[0.0, 0.9]])),
            Err(Error::BadTrace { .. })
        ));
        let skew = CMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                Complex64::new(0.5, 0.0)
            } else if i < j {
                Complex64::new(0.2, 0.0)
            } else {
                Complex64::new(-0.2, 0.0)
            }
        });
        assert!(matches!(
            DensityMatrix::from_matrix(skew),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn commutation_examples() {
        let rho = dm(&[&[0.5, 0.2], &[0.2, 0.5]]);
        let pi = dm(&[&[0.5, -0.1], &[-0.1, 0.5]]);
        assert!(rho.commutes_with(&rho, DEFAULT_MATRIX_TOL).unwrap());
        assert!(rho.commutes_with(&pi, DEFAULT_MATRIX_TOL).unwrap());

        let diag = dm(&[&[0.6, 0.0], &[0.0, 0.4]]);
        let off = dm(&[&[0.5, 0.1], &[0.1, 0.5]]);
        assert!(!diag.commutes_with(&off, DEFAULT_MATRIX_TOL).unwrap());
    }

    #[test]
    fn joint_diagonalization_of_the_worked_pair() {
        let rho = dm(&[&[0.5, 0.2], &[0.2, 0.5]]);
        let pi = dm(&[&[0.5, -0.1], &[-0.1, 0.5]]);
        let jd = joint_diagonalize(&rho, &pi, DEFAULT_MATRIX_TOL).unwrap();

        let mut pairs: Vec<(f64, f64)> = jd
            .rho_eigs
            .values()
            .iter()
            .zip(jd.pi_eigs.values())
            .map(|(&a, &b)| (a, b))
            .collect();
        pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        assert!((pairs[0].0 - 0.7).abs() < 1e-10);
        assert!((pairs[0].1 - 0.4).abs() < 1e-10);
        assert!((pairs[1].0 - 0.3).abs() < 1e-10);
        assert!((pairs[1].1 - 0.6).abs() < 1e-10);

        let (er, ep) = jd.reconstruction_error(&rho, &pi);
        assert!(er < 1e-10 && ep < 1e-10);

        // identical diagonal matrices: identical eigenvalue vectors
        let d = DensityMatrix::from_diag(&Distribution::from_values(&[0.5, 0.3, 0.2]).unwrap());
        let jd = joint_diagonalize(&d, &d, DEFAULT_MATRIX_TOL).unwrap();
        assert!(jd.rho_eigs.linf_distance(&jd.pi_eigs) < 1e-12);

        // a degenerate spectrum is resolved by the second operator
        let a = dm(&[&[0.5, 0.0], &[0.0, 0.5]]);
        let b = dm(&[&[0.7, 0.0], &[0.0, 0.3]]);
        let jd = joint_diagonalize(&a, &b, DEFAULT_MATRIX_TOL).unwrap();
        let (ea, eb) = jd.reconstruction_error(&a, &b);
        assert!(ea < 1e-10 && eb < 1e-10);
        let mut pi_sorted = jd.pi_eigs.values().to_vec();
        pi_sorted.sort_by(|x, y| y.partial_cmp(x).unwrap());
        assert!((pi_sorted[0] - 0.7).abs() < 1e-10 && (pi_sorted[1] - 0.3).abs() < 1e-10);
    }

    #[test]
    fn lift_results() {
        let rho = dm(&[&[0.5, 0.2], &[0.2, 0.5]]);
        let pi = dm(&[&[0.5, -0.1], &[-0.1, 0.5]]);
        // paired spectra (0.7, 0.3) vs (0.4, 0.6): different sectors
        assert_eq!(
            lift_compare(&OrderSpec::LownerPlus, &rho, &pi, DEFAULT_MATRIX_TOL).unwrap(),
            ComparisonResult::Incomparable
        );

        let diag = dm(&[&[0.6, 0.0], &[0.0, 0.4]]);
        let off = dm(&[&[0.5, 0.1], &[0.1, 0.5]]);
        assert_eq!(
            lift_compare(&OrderSpec::Bayesian, &diag, &off, DEFAULT_MATRIX_TOL).unwrap(),
            ComparisonResult::Incomparable
        );

        let x = Distribution::from_values(&[0.5, 0.3, 0.2]).unwrap();
        let y = Distribution::from_values(&[0.7, 0.2, 0.1]).unwrap();
        assert_eq!(
            lift_compare(
                &OrderSpec::Bayesian,
                &DensityMatrix::from_diag(&x),
                &DensityMatrix::from_diag(&y),
                DEFAULT_MATRIX_TOL
            )
            .unwrap(),
            OrderSpec::Bayesian.compare(&x, &y).unwrap()
        );
    }

    #[test]
    fn raw_lowner_comparisons() {
        let a = cm(&[&[0.3, 0.0], &[0.0, 0.2]]);
        let b = cm(&[&[0.4, 0.0], &[0.0, 0.25]]);
        assert!(lowner_psd_leq(&a, &b, 1e-10).unwrap());
        assert!(lowner_psd_leq(&a, &a, 1e-10).unwrap());
        assert!(!lowner_psd_leq(&b, &a, 1e-10).unwrap());
    }

    #[test]
    fn renormalised_operator_order() {
        let n = 3;
        let mixed = DensityMatrix::from_diag(&Distribution::uniform(n));
        let pure = DensityMatrix::from_diag(&Distribution::pointed(n, 1).unwrap());
        assert!(renorm_lowner_operator_leq(&mixed, &pure, 1e-10).unwrap());
        assert!(!renorm_lowner_operator_leq(&pure, &mixed, 1e-10).unwrap());

        // commuting pair from the lift example: incomparable both ways
        let rho = dm(&[&[0.5, 0.2], &[0.2, 0.5]]);
        let pi = dm(&[&[0.5, -0.1], &[-0.1, 0.5]]);
        assert!(!renorm_lowner_operator_leq(&rho, &pi, 1e-10).unwrap());
        assert!(!renorm_lowner_operator_leq(&pi, &rho, 1e-10).unwrap());
    }

    #[test]
    fn joint_diagonalization_reconstructs_random_commuting_pairs() {
        // commuting pairs built as two random diagonal matrices
        // conjugated by one random unitary
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let n = 3;
        for _ in 0..1000 {
            let u = random_unitary(n, &mut rng);
            let spectrum = |rng: &mut ChaCha8Rng| {
                let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
                let sum: f64 = raw.iter().sum();
                Distribution::from_values(&raw.iter().map(|e| e / sum).collect::<Vec<_>>())
                    .unwrap()
            };
            let rho = DensityMatrix::from_diag(&spectrum(&mut rng)).conjugate(&u);
            let pi = DensityMatrix::from_diag(&spectrum(&mut rng)).conjugate(&u);
            let jd = joint_diagonalize(&rho, &pi, DEFAULT_MATRIX_TOL).unwrap();
            let (er, ep) = jd.reconstruction_error(&rho, &pi);
            assert!(er <= DEFAULT_MATRIX_TOL && ep <= DEFAULT_MATRIX_TOL, "{er} {ep}");
        }
    }

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4 {
            let u = random_unitary(n, &mut rng);
            let id = &u * u.adjoint();
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((id[(i, j)].re - want).abs() < 1e-10);
                    assert!(id[(i, j)].im.abs() < 1e-10);
                }
            }
            let d = random_density(n, &mut rng);
            assert!((d.matrix().trace().re - 1.0).abs() < 1e-10);
            assert!(hermitian_deviation(d.matrix()) < 1e-12);
        }
    }
}
