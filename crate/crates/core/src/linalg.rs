//! Fixed-size complex matrix helpers for one and two qubits.
//!
//! Two-qubit operators use the ordering `first ⊗ second`, so basis index
//! `2 * i + j` labels `|i⟩ ⊗ |j⟩`. For the switch the first factor is the
//! system and the second is the control qubit; for bipartite states the
//! first factor is A and the second is B.

use nalgebra::{Matrix2, Matrix4, SMatrix, Vector2, Vector4};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat2 = Matrix2<C64>;
pub type CMat4 = Matrix4<C64>;
pub type Ket2 = Vector2<C64>;
pub type Ket4 = Vector4<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Pauli matrix σ_μ for μ ∈ {0, 1, 2, 3} = {I, X, Y, Z}.
pub fn pauli(mu: usize) -> CMat2 {
    match mu {
        0 => CMat2::new(ONE, ZERO, ZERO, ONE),
        1 => CMat2::new(ZERO, ONE, ONE, ZERO),
        2 => CMat2::new(ZERO, -I, I, ZERO),
        3 => CMat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index {mu} out of range"),
    }
}

pub fn paulis() -> [CMat2; 4] {
    [pauli(0), pauli(1), pauli(2), pauli(3)]
}

/// Matrix unit |i⟩⟨j| on a qubit.
pub fn unit(i: usize, j: usize) -> CMat2 {
    let mut m = CMat2::zeros();
    m[(i, j)] = ONE;
    m
}

pub fn ket(a: C64, b: C64) -> Ket2 {
    Ket2::new(a, b)
}

pub fn projector(v: &Ket2) -> CMat2 {
    v * v.adjoint()
}

pub fn kron(a: &CMat2, b: &CMat2) -> CMat4 {
    CMat4::from_fn(|row, col| a[(row / 2, col / 2)] * b[(row % 2, col % 2)])
}

/// Partial trace over the second tensor factor.
pub fn ptrace_second(m: &CMat4) -> CMat2 {
    CMat2::from_fn(|a, b| m[(2 * a, 2 * b)] + m[(2 * a + 1, 2 * b + 1)])
}

/// Partial trace over the first tensor factor.
pub fn ptrace_first(m: &CMat4) -> CMat2 {
    CMat2::from_fn(|i, j| m[(i, j)] + m[(2 + i, 2 + j)])
}

/// Partial transpose on the second tensor factor.
pub fn partial_transpose_second(m: &CMat4) -> CMat4 {
    CMat4::from_fn(|row, col| {
        let (a, i) = (row / 2, row % 2);
        let (b, j) = (col / 2, col % 2);
        m[(2 * a + j, 2 * b + i)]
    })
}

/// `⟨u| M |v⟩` contracted on the second factor, leaving an operator on the first.
pub fn contract_second(m: &CMat4, u: &Ket2, v: &Ket2) -> CMat2 {
    CMat2::from_fn(|a, b| {
        let mut acc = ZERO;
        for i in 0..2 {
            for j in 0..2 {
                acc += u[i].conj() * m[(2 * a + i, 2 * b + j)] * v[j];
            }
        }
        acc
    })
}

pub fn anticommutator(a: &CMat2, b: &CMat2) -> CMat2 {
    a * b + b * a
}

pub fn commutator(a: &CMat2, b: &CMat2) -> CMat2 {
    a * b - b * a
}

/// Ascending eigenvalues and matching eigenvectors (as columns) of a Hermitian 4×4 matrix.
/// Only the Hermitian part of `m` is used.
pub fn hermitian_eigen4(m: &CMat4) -> (Vector4<f64>, CMat4) {
    let h = (m + m.adjoint()) * r(0.5);
    let eig = h.symmetric_eigen();
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = Vector4::from_fn(|i, _| eig.eigenvalues[order[i]]);
    let vectors = CMat4::from_fn(|row, col| eig.eigenvectors[(row, order[col])]);
    (values, vectors)
}

pub fn min_eigenvalue4(m: &CMat4) -> f64 {
    hermitian_eigen4(m).0[0]
}

/// Eigenvalues of a Hermitian 2×2 matrix in closed form, ascending.
pub fn hermitian_eigenvalues2(m: &CMat2) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let off = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + off.norm_sqr()).sqrt();
    [mean - radius, mean + radius]
}

pub fn max_abs<const R: usize, const C: usize>(a: &SMatrix<C64, R, C>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff<const R: usize, const C: usize>(
    a: &SMatrix<C64, R, C>,
    b: &SMatrix<C64, R, C>,
) -> f64 {
    max_abs(&(a - b))
}

pub fn max_abs_diff_real<const R: usize, const C: usize>(
    a: &SMatrix<f64, R, C>,
    b: &SMatrix<f64, R, C>,
) -> f64 {
    (a - b).iter().map(|x| x.abs()).fold(0.0, f64::max)
}

pub fn hermiticity_defect<const D: usize>(m: &SMatrix<C64, D, D>) -> f64 {
    max_abs(&(m - m.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let [id, x, y, z] = paulis();
        assert_eq!(x * y, z * I);
        assert_eq!(y * z, x * I);
        assert_eq!(z * x, y * I);
        for s in [x, y, z] {
            assert_eq!(s * s, id);
        }
    }

    #[test]
    fn kron_and_partial_traces() {
        let x = pauli(1);
        let z = pauli(3);
        let m = kron(&x, &z);
        assert_eq!(ptrace_second(&m), x * r(z.trace().re));
        assert_eq!(ptrace_first(&kron(&unit(0, 0), &z)), z);
        let rho = kron(&projector(&ket(ONE, ZERO)), &projector(&ket(ONE, ONE)));
        assert_eq!(ptrace_second(&rho)[(0, 0)], r(2.0));
    }

    #[test]
    fn partial_transpose_of_product_transposes_second_factor() {
        let a = pauli(1) + pauli(3) * r(0.3);
        let b = pauli(2) + unit(0, 1) * c(0.5, 0.2);
        let pt = partial_transpose_second(&kron(&a, &b));
        assert!(max_abs_diff(&pt, &kron(&a, &b.transpose())) < 1e-15);
    }

    #[test]
    fn contract_second_picks_blocks() {
        let a = pauli(2);
        let b = pauli(1);
        let m = kron(&a, &b);
        let e0 = ket(ONE, ZERO);
        let e1 = ket(ZERO, ONE);
        assert!(max_abs_diff(&contract_second(&m, &e0, &e1), &a) < 1e-15);
        assert!(max_abs(&contract_second(&m, &e0, &e0)) < 1e-15);
    }

    #[test]
    fn eigen_helpers_agree() {
        let m2 = pauli(1) * r(0.4) + pauli(3) * r(0.3) + pauli(0) * r(0.5);
        let [lo, hi] = hermitian_eigenvalues2(&m2);
        assert!((lo - 0.0).abs() < 1e-14 && (hi - 1.0).abs() < 1e-14);
        let m4 = kron(&m2, &pauli(3));
        let (vals, vecs) = hermitian_eigen4(&m4);
        assert!((vals[0] + 1.0).abs() < 1e-12 && (vals[3] - 1.0).abs() < 1e-12);
        for k in 0..4 {
            let v = vecs.column(k);
            let res = m4 * v - v * r(vals[k]);
            assert!(res.norm() < 1e-12);
        }
    }
}
