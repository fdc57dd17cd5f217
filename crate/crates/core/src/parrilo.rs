//! Membership construction for the level-1 sum-of-squares inner
//! approximation of the copositive cone, specialized to the main regime
//! of the 13.1 family.
//!
//! For a matrix in that regime the minimal zeros pin the candidate PSD
//! summands `Mⁱ` down to rank-two Gram products `Rⁱ(Rⁱ)'` of explicit
//! cosine/sine frames, up to a 2×2 scaling `Dⁱ` per index. The diagonal
//! conditions reduce the remaining freedom to a homogeneous 12×12 linear
//! system; whenever its determinant is nonzero the only solution is
//! `Dⁱ = I`, which fixes `Mⁱ`, the corrections `Λⁱ = A − Mⁱ` and the
//! totally symmetric tensor `m_ijk`. Membership then amounts to the
//! nonnegativity of the twenty independent tensor entries together with
//! positive semidefiniteness of the `Mⁱ`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SMatrix};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{build_case13, classify_regime, Case13Variant};
use crate::scalar::Real;
use crate::types::{AngleVector, SymmetricMatrix};

/// Unordered index triple `{i, j, k}`, stored ascending.
pub type Triple = (usize, usize, usize);

/// Tolerance below which a tensor entry counts as a membership violation,
/// and slack allowed on eigenvalues of the `Mⁱ`. Matrices at the
/// membership boundary should not flip verdicts under rounding; margins
/// are reported alongside the verdict.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Threshold on the 12×12 determinant, normalized by the product of the
/// row norms, under which the solution is not considered unique. This
/// separates the generic case from degenerate angles without symbolic
/// algebra.
pub const DET_TOL: f64 = 1e-8;

/// Maximal entrywise deviation allowed between the input matrix and the
/// one rebuilt from the angles.
pub const MATRIX_MATCH_TOL: f64 = 1e-12;

/// The six 6×2 frames whose column spaces contain the ranges of the
/// candidate PSD summands. The first column of `Rⁱ` equals column `i` of
/// the family matrix; the `i`-th row is `(1, 0)`.
#[derive(Clone, Debug)]
pub struct RankTwoFrame<T> {
    r: [SMatrix<T, 6, 2>; 6],
}

impl<T: Real> RankTwoFrame<T> {
    pub fn matrix(&self, i: usize) -> &SMatrix<T, 6, 2> {
        &self.r[i - 1]
    }
}

/// Membership verdict of the specialized construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MembershipVerdict {
    Member,
    NonMember {
        violating: Vec<Triple>,
    },
    /// The 12×12 system is numerically singular; the canonical solution
    /// is not unique and no verdict is derived.
    Degenerate,
}

/// The assembled certificate: PSD summands, corrections, tensor and the
/// normalized system determinant backing the uniqueness claim.
#[derive(Clone, Debug)]
pub struct K1Certificate<T: Real> {
    pub m: [SymmetricMatrix<T>; 6],
    pub lambda: [SymmetricMatrix<T>; 6],
    pub m_tensor: BTreeMap<Triple, T>,
    pub det_system: T,
    pub verdict: MembershipVerdict,
}

fn require_main_regime<T: Real>(phi: &AngleVector<T>) -> Result<()> {
    let flags = classify_regime(phi);
    if !flags.is_main(Case13Variant::V13_1) {
        return Err(Error::constraint(format!(
            "angles must lie in the strict 13.1 main regime, got {flags:?}"
        )));
    }
    Ok(())
}

/// Builds the six rank-two frames for angles in the 13.1 main regime.
pub fn build_r<T: Real>(phi: &AngleVector<T>) -> Result<RankTwoFrame<T>> {
    require_main_regime(phi)?;
    let cos = |idx: &[usize]| phi.sum_of(idx).cos();
    let sin = |idx: &[usize]| phi.sum_of(idx).sin();
    let rows: [[[T; 2]; 6]; 6] = [
        [
            [T::one(), T::zero()],
            [-cos(&[1]), sin(&[1])],
            [cos(&[1, 2]), -sin(&[1, 2])],
            [-cos(&[1, 2, 3]), sin(&[1, 2, 3])],
            [cos(&[5, 6]), sin(&[5, 6])],
            [-cos(&[6]), -sin(&[6])],
        ],
        [
            [-cos(&[1]), -sin(&[1])],
            [T::one(), T::zero()],
            [-cos(&[2]), sin(&[2])],
            [cos(&[2, 3]), -sin(&[2, 3])],
            [-cos(&[2, 3, 4]), sin(&[2, 3, 4])],
            [cos(&[1, 6]), sin(&[1, 6])],
        ],
        [
            [cos(&[1, 2]), sin(&[1, 2])],
            [-cos(&[2]), -sin(&[2])],
            [T::one(), T::zero()],
            [-cos(&[3]), sin(&[3])],
            [cos(&[3, 4]), -sin(&[3, 4])],
            [-cos(&[3, 4, 5]), sin(&[3, 4, 5])],
        ],
        [
            [-cos(&[1, 2, 3]), -sin(&[1, 2, 3])],
            [cos(&[2, 3]), sin(&[2, 3])],
            [-cos(&[3]), -sin(&[3])],
            [T::one(), T::zero()],
            [-cos(&[4]), sin(&[4])],
            [cos(&[4, 5]), -sin(&[4, 5])],
        ],
        [
            [cos(&[5, 6]), -sin(&[5, 6])],
            [-cos(&[2, 3, 4]), -sin(&[2, 3, 4])],
            [cos(&[3, 4]), sin(&[3, 4])],
            [-cos(&[4]), -sin(&[4])],
            [T::one(), T::zero()],
            [-cos(&[5]), sin(&[5])],
        ],
        [
            [-cos(&[6]), sin(&[6])],
            [cos(&[1, 6]), -sin(&[1, 6])],
            [-cos(&[3, 4, 5]), -sin(&[3, 4, 5])],
            [cos(&[4, 5]), sin(&[4, 5])],
            [-cos(&[5]), -sin(&[5])],
            [T::one(), T::zero()],
        ],
    ];
    let r = rows.map(|m| SMatrix::<T, 6, 2>::from_fn(|i, c| m[i][c]));
    Ok(RankTwoFrame { r })
}

/// Coefficient matrix of the homogeneous linear system on the unknowns
/// `(2D¹₁₂, ..., 2D⁶₁₂, D¹₂₂−1, ..., D⁶₂₂−1)`: first the six `+` rows,
/// one per consecutive index pair `(i, i+1)` (cyclically closed by
/// `(6, 1)`), then the six `−` rows in the same order.
pub fn build_system<T: Real>(phi: &AngleVector<T>) -> SMatrix<T, 12, 12> {
    let mut s = SMatrix::<T, 12, 12>::zeros();
    for i in 1..=6usize {
        let j = if i == 6 { 1 } else { i + 1 };
        let (cos_i, sin_i) = (phi.phi(i).cos(), phi.phi(i).sin());
        // 2Dⁱ₁₂ + 2Dʲ₁₂ cos φᵢ + (Dʲ₂₂ − 1) sin φᵢ = 0
        s[(i - 1, i - 1)] = T::one();
        s[(i - 1, j - 1)] = cos_i;
        s[(i - 1, 6 + j - 1)] = sin_i;
        // −2Dʲ₁₂ − 2Dⁱ₁₂ cos φᵢ + (Dⁱ₂₂ − 1) sin φᵢ = 0
        s[(6 + i - 1, j - 1)] = -T::one();
        s[(6 + i - 1, i - 1)] = -cos_i;
        s[(6 + i - 1, 6 + i - 1)] = sin_i;
    }
    s
}

/// Determinant of the system normalized by the product of its row norms,
/// so the degeneracy threshold is scale-free.
pub fn normalized_system_det<T: Real>(system: &SMatrix<T, 12, 12>) -> T {
    let det = system.determinant();
    let mut scale = T::one();
    for i in 0..12 {
        scale *= system.row(i).norm();
    }
    if scale > T::zero() {
        det / scale
    } else {
        T::zero()
    }
}

/// All `C(6,3) = 20` index triples, ascending.
pub fn all_triples() -> Vec<Triple> {
    let mut out = Vec::with_capacity(20);
    for i in 1..=6 {
        for j in (i + 1)..=6 {
            for k in (j + 1)..=6 {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Zero indices `α` such that `Mⁱ` annihilates the minimal zero `x^α`,
/// for `i = 1..6`: the supports containing `i` plus the overlaps forced
/// by the shared complementary sets of consecutive zero pairs.
pub fn kernel_zero_pattern() -> [[usize; 4]; 6] {
    [
        [1, 2, 5, 6],
        [1, 2, 3, 6],
        [1, 2, 3, 4],
        [1, 2, 3, 4],
        [2, 3, 4, 5],
        [3, 4, 5, 6],
    ]
}

/// Solves for the certificate of `a`, which must coincide with the 13.1
/// family matrix of `phi` to within [`MATRIX_MATCH_TOL`].
pub fn solve_certificate<T: Real>(
    a: &SymmetricMatrix<T>,
    phi: &AngleVector<T>,
) -> Result<K1Certificate<T>> {
    solve_certificate_with_det_tol(a, phi, T::c(DET_TOL))
}

/// [`solve_certificate`] with an explicit degeneracy threshold on the
/// normalized determinant; mainly for diagnostics.
pub fn solve_certificate_with_det_tol<T: Real>(
    a: &SymmetricMatrix<T>,
    phi: &AngleVector<T>,
    det_tol: T,
) -> Result<K1Certificate<T>> {
    let rebuilt = build_case13(phi, Case13Variant::V13_1)?;
    if a.dim() != 6 || a.max_abs_diff(&rebuilt) > T::c(MATRIX_MATCH_TOL) {
        return Err(Error::constraint(
            "matrix does not match the 13.1 family matrix of the given angles within 1e-12",
        ));
    }
    let frames = build_r(phi)?;
    let det_system = normalized_system_det(&build_system(phi));
    let degenerate = det_system.abs() <= det_tol;

    // Unique homogeneous solution Dⁱ₁₂ = 0, Dⁱ₂₂ = 1: Mⁱ = Rⁱ(Rⁱ)'.
    let m: [SymmetricMatrix<T>; 6] = std::array::from_fn(|k| {
        let r = frames.matrix(k + 1);
        SymmetricMatrix::from_fn(6, |i, j| r.row(i).dot(&r.row(j)))
    });
    let lambda: [SymmetricMatrix<T>; 6] = std::array::from_fn(|k| a.sub(&m[k]));

    let mut m_tensor = BTreeMap::new();
    for (i, j, k) in all_triples() {
        let value = lambda[i - 1].get(j - 1, k - 1)
            + lambda[j - 1].get(i - 1, k - 1)
            + lambda[k - 1].get(i - 1, j - 1);
        m_tensor.insert((i, j, k), value);
    }

    let tol = T::c(MEMBERSHIP_TOL);
    let violating: Vec<Triple> = m_tensor
        .iter()
        .filter(|(_, &v)| v < -tol)
        .map(|(&t, _)| t)
        .collect();
    let psd_ok = m.iter().all(|mi| {
        let (values, _) = mi.eigen_ascending();
        values[0] >= -tol
    });
    let verdict = if degenerate {
        MembershipVerdict::Degenerate
    } else if violating.is_empty() && psd_ok {
        MembershipVerdict::Member
    } else {
        MembershipVerdict::NonMember { violating }
    };
    Ok(K1Certificate {
        m,
        lambda,
        m_tensor,
        det_system,
        verdict,
    })
}

/// Membership verdict for the 13.1 family matrix of `phi`.
pub fn membership_case13_1<T: Real>(phi: &AngleVector<T>) -> Result<MembershipVerdict> {
    let a = build_case13(phi, Case13Variant::V13_1)?;
    Ok(solve_certificate(&a, phi)?.verdict)
}

/// Closed forms of the eight tensor entries that are not structurally
/// zero in the 13.1 main regime: `{1,2,5}, {1,3,5}, {1,3,6}, {1,4,5},
/// {1,4,6}, {2,3,6}, {2,4,6}, {2,5,6}`.
pub fn m_closed_form<T: Real>(phi: &AngleVector<T>) -> BTreeMap<Triple, T> {
    let c = |idx: &[usize]| phi.sum_of(idx).cos();
    let mut out = BTreeMap::new();
    out.insert(
        (1, 2, 5),
        c(&[1, 5, 6]) - c(&[2, 3, 4]) + c(&[5, 6]) - c(&[1, 2, 3, 4]) - c(&[1])
            + c(&[2, 3, 4, 5, 6]),
    );
    out.insert(
        (1, 3, 5),
        (c(&[1, 2]) - c(&[3, 4, 5, 6]))
            + (c(&[5, 6]) - c(&[1, 2, 3, 4]))
            + (c(&[3, 4]) - c(&[1, 2, 5, 6])),
    );
    out.insert(
        (1, 3, 6),
        c(&[1, 2, 6]) - c(&[3, 4, 5]) + c(&[1, 2]) - c(&[3, 4, 5, 6]) - c(&[6])
            + c(&[1, 2, 3, 4, 5]),
    );
    out.insert(
        (1, 4, 5),
        c(&[4, 5, 6]) - c(&[1, 2, 3]) + c(&[5, 6]) - c(&[1, 2, 3, 4]) - c(&[4])
            + c(&[1, 2, 3, 5, 6]),
    );
    out.insert(
        (1, 4, 6),
        c(&[4, 5, 6]) - c(&[1, 2, 3]) + c(&[4, 5]) - c(&[1, 2, 3, 6]) - c(&[6])
            + c(&[1, 2, 3, 4, 5]),
    );
    out.insert(
        (2, 3, 6),
        c(&[1, 2, 6]) - c(&[3, 4, 5]) + c(&[1, 6]) - c(&[2, 3, 4, 5]) - c(&[2])
            + c(&[1, 3, 4, 5, 6]),
    );
    out.insert(
        (2, 4, 6),
        (c(&[2, 3]) - c(&[1, 4, 5, 6]))
            + (c(&[1, 6]) - c(&[2, 3, 4, 5]))
            + (c(&[4, 5]) - c(&[1, 2, 3, 6])),
    );
    out.insert(
        (2, 5, 6),
        c(&[1, 5, 6]) - c(&[2, 3, 4]) + c(&[1, 6]) - c(&[2, 3, 4, 5]) - c(&[5])
            + c(&[1, 2, 3, 4, 6]),
    );
    out
}

/// The angles of the unit-diagonal matrix that is copositive yet fails
/// level-1 membership: `(0.20, 0.29, 0.30, 0.23, 0.06, 0.02)·π`.
pub fn counterexample_phi<T: Real>() -> AngleVector<T> {
    AngleVector::from_pi_multiples([
        T::c(0.20),
        T::c(0.29),
        T::c(0.30),
        T::c(0.23),
        T::c(0.06),
        T::c(0.02),
    ])
    .expect("counterexample angles are valid")
}

/// The explicit extreme copositive matrix with unit diagonal outside the
/// level-1 cone.
pub fn counterexample_matrix<T: Real>() -> SymmetricMatrix<T> {
    build_case13(&counterexample_phi::<T>(), Case13Variant::V13_1)
        .expect("counterexample angles satisfy the 13.1 constraints")
}

/// Restriction of a 6×6 symmetric matrix to its action on a vector,
/// convenience for kernel residual checks.
pub fn apply<T: Real>(m: &SymmetricMatrix<T>, x: &[T]) -> DMatrix<T> {
    DMatrix::from_vec(m.dim(), 1, m.mul_vec(x))
}
