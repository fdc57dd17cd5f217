//! Minimal zeros and extended minimal zero support sets of a copositive
//! matrix, plus the rank-deficiency test for membership in the algebraic
//! set cut out by an extended support collection.
//!
//! The search enumerates supports `I ⊆ {1..n}` in increasing cardinality,
//! skipping supersets of already-accepted supports. A support is accepted
//! when the principal submatrix `A_I` is positive semidefinite up to
//! tolerance with a one-dimensional near-kernel spanned by a strictly
//! positive vector; minimal zeros of a copositive matrix satisfy
//! `A_I u_I = 0` with `A_I` PSD, and for `n = 6` the 63-support
//! enumeration is trivial. The rule is validated against the closed-form
//! zeros of the generated families rather than assumed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::types::matrix::singular_values;
use crate::types::{ExtendedSupport, IndexSet, SymmetricMatrix, Zero};

/// Tolerance bundle for the zero search, relative to unit-scale matrices.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct ZeroTolerances<T> {
    /// Slack below zero allowed for eigenvalues of a PSD face.
    pub psd: T,
    /// Bound on `|u'Au|` for an accepted zero.
    pub quad: T,
    /// Slack below zero allowed for entries of `Au`.
    pub slack: T,
    /// Strict positivity threshold for kernel vector entries after
    /// normalization onto the simplex.
    pub pos: T,
}

impl<T: Real> Default for ZeroTolerances<T> {
    fn default() -> Self {
        ZeroTolerances {
            psd: T::c(1e-9),
            quad: T::c(1e-10),
            slack: T::c(1e-8),
            pos: T::c(1e-7),
        }
    }
}

/// Default relative gap under which the smallest singular value of a
/// submatrix counts as rank deficient.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Search result with diagnostics: faces whose near-kernel had dimension
/// two or more are rejected as minimal-zero supports (this cannot happen
/// for the extreme families handled here) and reported separately.
#[derive(Clone, Debug)]
pub struct ZeroSearch<T: Real> {
    pub zeros: Vec<Zero<T>>,
    pub degenerate_supports: Vec<IndexSet>,
}

/// Minimal zeros of `a`, one representative in the simplex per support,
/// ordered lexicographically by support.
///
/// `a` is assumed copositive (see the copositivity module for an oracle);
/// if the search stumbles on a nonnegative vector with quadratic value
/// below `-tol.quad`, it returns [`Error::NotCopositiveEvidence`].
pub fn find_minimal_zeros<T: Real>(
    a: &SymmetricMatrix<T>,
    tol: &ZeroTolerances<T>,
) -> Result<Vec<Zero<T>>> {
    Ok(minimal_zero_search(a, tol)?.zeros)
}

pub fn minimal_zero_search<T: Real>(
    a: &SymmetricMatrix<T>,
    tol: &ZeroTolerances<T>,
) -> Result<ZeroSearch<T>> {
    let n = a.dim();
    assert!(n <= 32, "support enumeration is limited to n <= 32");
    let mut accepted_supports: Vec<IndexSet> = Vec::new();
    let mut zeros: Vec<Zero<T>> = Vec::new();
    let mut degenerate: Vec<IndexSet> = Vec::new();

    let mut masks: Vec<u32> = (1u32..(1 << n)).collect();
    masks.sort_by_key(|m| m.count_ones());

    for mask in masks {
        let support = IndexSet::from_bits(mask);
        if accepted_supports.iter().any(|s| s.is_subset_of(support)) {
            continue;
        }
        let face = a.principal(support);
        let (values, vectors) = crate::types::matrix::eigen_ascending(&face);
        if values[0] < -tol.psd {
            // The face is not PSD. That alone is fine for a copositive
            // matrix, but a sign-consistent negative eigenvector is a
            // counterexample we must surface.
            for (k, &lambda) in values.iter().enumerate() {
                if lambda >= -tol.psd {
                    break;
                }
                let candidate: Vec<T> = (0..face.nrows()).map(|i| vectors[(i, k)].abs()).collect();
                if let Some(err) = evidence_from_face(a, support, &candidate, tol) {
                    return Err(err);
                }
            }
            continue;
        }
        let kernel_dim = values.iter().take_while(|&&v| v.abs() <= tol.psd).count();
        match kernel_dim {
            0 => continue,
            1 => {}
            _ => {
                degenerate.push(support);
                continue;
            }
        }
        let mut kernel: Vec<T> = (0..face.nrows()).map(|i| vectors[(i, 0)]).collect();
        let sum: T = kernel.iter().fold(T::zero(), |acc, &v| acc + v);
        if sum < T::zero() {
            for v in kernel.iter_mut() {
                *v = -*v;
            }
        }
        let sum = sum.abs();
        if sum <= T::default_epsilon() {
            continue;
        }
        if kernel.iter().any(|&v| v / sum <= tol.pos) {
            // Kernel vector cannot be signed strictly positive: no zero
            // with this exact support.
            continue;
        }
        let mut full = vec![T::zero(); n];
        for (v, i) in kernel.iter().zip(support.iter()) {
            full[i - 1] = *v / sum;
        }
        let quad = a.quad(&full);
        if quad < -tol.quad {
            return Err(Error::NotCopositiveEvidence {
                witness: full.iter().map(|v| v.as_f64()).collect(),
                value: quad.as_f64(),
            });
        }
        if quad > tol.quad {
            continue;
        }
        if a.mul_vec(&full).iter().any(|&v| v < -tol.slack) {
            // u is a zero but Au has a genuinely negative entry; walking
            // from u along that coordinate exposes a negative value.
            if let Some(err) = evidence_from_face(a, IndexSet::full(n), &full, tol) {
                return Err(err);
            }
            continue;
        }
        zeros.push(Zero::from_vector(full)?);
        accepted_supports.push(support);
    }

    zeros.sort_by_key(|z| z.support());
    degenerate.sort();
    Ok(ZeroSearch {
        zeros,
        degenerate_supports: degenerate,
    })
}

/// Checks whether the nonnegative face vector (or a cheap descent step
/// from it) exhibits a quadratic value below `-tol.quad`; if so, builds
/// the error payload. `candidate` lives on `support`.
fn evidence_from_face<T: Real>(
    a: &SymmetricMatrix<T>,
    support: IndexSet,
    candidate: &[T],
    tol: &ZeroTolerances<T>,
) -> Option<Error> {
    let n = a.dim();
    let mut full = vec![T::zero(); n];
    if candidate.len() == n {
        full.copy_from_slice(candidate);
    } else {
        for (v, i) in candidate.iter().zip(support.iter()) {
            full[i - 1] = *v;
        }
    }
    let sum: T = full.iter().fold(T::zero(), |acc, &v| acc + v);
    if sum <= T::zero() {
        return None;
    }
    for v in full.iter_mut() {
        *v /= sum;
    }
    // One exact line-search step along the most negative gradient entry;
    // with a nonpositive diagonal there is no interior minimizer, so take
    // a unit step instead.
    let grad = a.mul_vec(&full);
    let mut best = full.clone();
    let mut best_q = a.quad(&full);
    if let Some((i, &gi)) = grad
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.partial_cmp(y.1).expect("comparable"))
    {
        if gi < T::zero() {
            let aii = a.get(i, i);
            let t = if aii > T::zero() { -gi / aii } else { T::one() };
            let mut moved = full.clone();
            moved[i] += t;
            let s: T = moved.iter().fold(T::zero(), |acc, &v| acc + v);
            for v in moved.iter_mut() {
                *v /= s;
            }
            let q = a.quad(&moved);
            if q < best_q {
                best = moved;
                best_q = q;
            }
        }
    }
    if best_q < -tol.quad {
        Some(Error::NotCopositiveEvidence {
            witness: best.iter().map(|v| v.as_f64()).collect(),
            value: best_q.as_f64(),
        })
    } else {
        None
    }
}

/// Extended support `(I, J)` of a zero `u` of `a`: `J` collects the
/// indices where `(Au)_i` vanishes up to `tol.slack`, `I` is the support
/// of `u`. Fails with an invariant violation if `I ⊄ J`, which signals a
/// tolerance mismatch.
pub fn extended_support<T: Real>(
    a: &SymmetricMatrix<T>,
    u: &Zero<T>,
    tol: &ZeroTolerances<T>,
) -> Result<ExtendedSupport> {
    let au = a.mul_vec(u.vector());
    let complementary = IndexSet::from_indices(
        au.iter()
            .enumerate()
            .filter(|(_, &v)| v <= tol.slack)
            .map(|(k, _)| k + 1),
    )?;
    if !u.support().is_subset_of(complementary) {
        return Err(Error::invariant(format!(
            "support {} not contained in complementary set {}",
            u.support(),
            complementary
        )));
    }
    ExtendedSupport::new(u.support(), complementary)
}

/// Extended supports of all minimal zeros of `a`, ordered
/// lexicographically by support.
pub fn esupp_set<T: Real>(
    a: &SymmetricMatrix<T>,
    tol: &ZeroTolerances<T>,
) -> Result<Vec<ExtendedSupport>> {
    find_minimal_zeros(a, tol)?
        .iter()
        .map(|u| extended_support(a, u, tol))
        .collect()
}

/// Whether every submatrix `A_{Iα×Jα}` named by the extended supports is
/// rank deficient: smallest singular value at most `rank_tol` times the
/// largest.
pub fn check_ze_membership<T: Real>(
    a: &SymmetricMatrix<T>,
    esupps: &[ExtendedSupport],
    rank_tol: T,
) -> bool {
    esupps.iter().all(|e| {
        let sub = a.submatrix(e.support(), e.complementary());
        let sv = singular_values(&sub);
        match (sv.first(), sv.last()) {
            (Some(&largest), Some(&smallest)) => {
                largest == T::zero() || smallest <= rank_tol * largest
            }
            _ => true,
        }
    })
}
