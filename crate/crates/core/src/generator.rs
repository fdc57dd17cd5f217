//! Generation of the case-13 families of exceptional extreme matrices:
//! the cosine matrix `A(φ)`, its positive diagonal scalings `D A D`, the
//! closed-form minimal zeros, the regime classifier driving the piecewise
//! complementary-support formulas, and the expected `A·U` sign patterns.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::types::{AngleVector, ExtendedSupport, IndexSet, SymmetricMatrix, Zero};

/// Absolute tolerance for detecting equality between angle sums when
/// classifying the regime. Angles are O(1) radians, so user-supplied
/// values sitting exactly on a boundary classify as equal.
pub const REGIME_EQ_TOL: f64 = 1e-10;

/// Which of the two entry conventions the `(2,5)` entry follows.
///
/// Variant 13.1 requires `φ2+φ3+φ4 ≥ φ1+φ5+φ6` and sets
/// `A25 = -cos(φ2+φ3+φ4)`; variant 13.2 requires the reverse inequality
/// and sets `A25 = -cos(φ1+φ5+φ6)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Case13Variant {
    #[serde(rename = "13.1")]
    V13_1,
    #[serde(rename = "13.2")]
    V13_2,
}

impl fmt::Display for Case13Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case13Variant::V13_1 => write!(f, "13.1"),
            Case13Variant::V13_2 => write!(f, "13.2"),
        }
    }
}

impl FromStr for Case13Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "13.1" => Ok(Case13Variant::V13_1),
            "13.2" => Ok(Case13Variant::V13_2),
            other => Err(Error::constraint(format!(
                "unknown variant {other:?}, expected 13.1 or 13.2"
            ))),
        }
    }
}

/// Outcome of the three angle-sum comparisons that decide the extended
/// supports: `φ2+φ3+φ4` vs `φ1+φ5+φ6`, `φ3+φ4+φ5` vs `φ1+φ2+φ6` and
/// `φ1+φ2+φ3` vs `φ4+φ5+φ6`, with `Equal` within [`REGIME_EQ_TOL`].
///
/// For angle vectors inside the case-13 family the latter two comparisons
/// can only be `Equal` or `Greater`; `Less` flags a vector outside the
/// family, which downstream operations reject.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RegimeFlags {
    pub s234_vs_156: Ordering,
    pub s345_vs_126: Ordering,
    pub s123_vs_456: Ordering,
}

impl RegimeFlags {
    /// Whether the flags are the main-component regime of the variant:
    /// `(Greater, Greater, Greater)` for 13.1, `(Less, Greater, Greater)`
    /// for 13.2.
    pub fn is_main(&self, variant: Case13Variant) -> bool {
        let first = match variant {
            Case13Variant::V13_1 => Ordering::Greater,
            Case13Variant::V13_2 => Ordering::Less,
        };
        self.s234_vs_156 == first
            && self.s345_vs_126 == Ordering::Greater
            && self.s123_vs_456 == Ordering::Greater
    }

    /// Whether the first comparison is compatible with the variant's
    /// defining non-strict inequality.
    pub fn admits(&self, variant: Case13Variant) -> bool {
        match variant {
            Case13Variant::V13_1 => self.s234_vs_156 != Ordering::Less,
            Case13Variant::V13_2 => self.s234_vs_156 != Ordering::Greater,
        }
    }
}

fn cmp_with_tol<T: Real>(diff: T, tol: T) -> Ordering {
    if diff.abs() <= tol {
        Ordering::Equal
    } else if diff > T::zero() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Classifies the three angle-sum comparisons with the default equality
/// tolerance.
pub fn classify_regime<T: Real>(phi: &AngleVector<T>) -> RegimeFlags {
    classify_regime_with_tol(phi, T::c(REGIME_EQ_TOL))
}

pub fn classify_regime_with_tol<T: Real>(phi: &AngleVector<T>, eq_tol: T) -> RegimeFlags {
    RegimeFlags {
        s234_vs_156: cmp_with_tol(phi.sum_of(&[2, 3, 4]) - phi.sum_of(&[1, 5, 6]), eq_tol),
        s345_vs_126: cmp_with_tol(phi.sum_of(&[3, 4, 5]) - phi.sum_of(&[1, 2, 6]), eq_tol),
        s123_vs_456: cmp_with_tol(phi.sum_of(&[1, 2, 3]) - phi.sum_of(&[4, 5, 6]), eq_tol),
    }
}

/// The extremality side condition: `Σ φj ≠ π`, or at least two of the
/// three non-strict angle-sum inequalities hold with equality. Matrices
/// violating it are still produced by [`build_case13`]; callers that care
/// about extremality should check this flag.
pub fn extremality_side_condition<T: Real>(phi: &AngleVector<T>) -> bool {
    let tol = T::c(REGIME_EQ_TOL);
    if (phi.total() - T::pi()).abs() > tol {
        return true;
    }
    let flags = classify_regime(phi);
    let equalities = [flags.s234_vs_156, flags.s345_vs_126, flags.s123_vs_456]
        .iter()
        .filter(|&&o| o == Ordering::Equal)
        .count();
    equalities >= 2
}

/// Builds the 6×6 unit-diagonal cosine matrix of the case-13 family.
///
/// Cosines of the angle sums are evaluated directly, without product
/// expansion, so tests can compare entries bit-for-bit against the same
/// expressions.
pub fn build_case13<T: Real>(
    phi: &AngleVector<T>,
    variant: Case13Variant,
) -> Result<SymmetricMatrix<T>> {
    let flags = classify_regime(phi);
    if flags.s123_vs_456 == Ordering::Less {
        return Err(Error::constraint(
            "phi1+phi2+phi3 >= phi4+phi5+phi6 required by the case-13 family",
        ));
    }
    if flags.s345_vs_126 == Ordering::Less {
        return Err(Error::constraint(
            "phi3+phi4+phi5 >= phi1+phi2+phi6 required by the case-13 family",
        ));
    }
    if !flags.admits(variant) {
        return Err(Error::constraint(match variant {
            Case13Variant::V13_1 => "variant 13.1 requires phi2+phi3+phi4 >= phi1+phi5+phi6",
            Case13Variant::V13_2 => "variant 13.2 requires phi2+phi3+phi4 <= phi1+phi5+phi6",
        }));
    }

    let cos_sum = |idx: &[usize]| phi.sum_of(idx).cos();
    let a25 = match variant {
        Case13Variant::V13_1 => -cos_sum(&[2, 3, 4]),
        Case13Variant::V13_2 => -cos_sum(&[1, 5, 6]),
    };
    let one = T::one();
    #[rustfmt::skip]
    let rows: [[T; 6]; 6] = [
        [one, -cos_sum(&[1]), cos_sum(&[1, 2]), -cos_sum(&[1, 2, 3]), cos_sum(&[5, 6]), -cos_sum(&[6])],
        [-cos_sum(&[1]), one, -cos_sum(&[2]), cos_sum(&[2, 3]), a25, cos_sum(&[1, 6])],
        [cos_sum(&[1, 2]), -cos_sum(&[2]), one, -cos_sum(&[3]), cos_sum(&[3, 4]), -cos_sum(&[3, 4, 5])],
        [-cos_sum(&[1, 2, 3]), cos_sum(&[2, 3]), -cos_sum(&[3]), one, -cos_sum(&[4]), cos_sum(&[4, 5])],
        [cos_sum(&[5, 6]), a25, cos_sum(&[3, 4]), -cos_sum(&[4]), one, -cos_sum(&[5])],
        [-cos_sum(&[6]), cos_sum(&[1, 6]), -cos_sum(&[3, 4, 5]), cos_sum(&[4, 5]), -cos_sum(&[5]), one],
    ];
    Ok(SymmetricMatrix::from_fn(6, |i, j| rows[i][j]))
}

/// Congruence scaling `X = D A D` with a positive diagonal:
/// `X[i][j] = d[i] * A[i][j] * d[j]`. The extended minimal zero support
/// set of `X` equals that of `A`.
pub fn scale_dad<T: Real>(a: &SymmetricMatrix<T>, d: &[T]) -> Result<SymmetricMatrix<T>> {
    if d.len() != a.dim() {
        return Err(Error::constraint(format!(
            "scaling vector has length {}, matrix dimension is {}",
            d.len(),
            a.dim()
        )));
    }
    if let Some((k, _)) = d.iter().enumerate().find(|(_, &v)| v <= T::zero()) {
        return Err(Error::constraint(format!("d{} > 0", k + 1)));
    }
    Ok(SymmetricMatrix::from_fn(a.dim(), |i, j| {
        d[i] * a.get(i, j) * d[j]
    }))
}

/// The six closed-form minimal zeros of the case-13 matrix, one per
/// cyclic support triple `{1,2,3}, {2,3,4}, ..., {1,2,6}`, each
/// normalized onto the simplex.
pub fn closed_form_zeros<T: Real>(phi: &AngleVector<T>) -> Vec<Zero<T>> {
    let s = |idx: &[usize]| phi.sum_of(idx).sin();
    let z = T::zero();
    let columns: [[T; 6]; 6] = [
        [s(&[2]), s(&[1, 2]), s(&[1]), z, z, z],
        [z, s(&[3]), s(&[2, 3]), s(&[2]), z, z],
        [z, z, s(&[4]), s(&[3, 4]), s(&[3]), z],
        [z, z, z, s(&[5]), s(&[4, 5]), s(&[4])],
        [s(&[5]), z, z, z, s(&[6]), s(&[5, 6])],
        [s(&[1, 6]), s(&[6]), z, z, z, s(&[1])],
    ];
    columns
        .iter()
        .map(|col| Zero::from_vector(col.to_vec()).expect("closed-form zeros are nonnegative"))
        .collect()
}

/// The six support triples of the case-13 minimal zeros, in zero order.
pub fn case13_supports() -> [IndexSet; 6] {
    [
        IndexSet::of(&[1, 2, 3]),
        IndexSet::of(&[2, 3, 4]),
        IndexSet::of(&[3, 4, 5]),
        IndexSet::of(&[4, 5, 6]),
        IndexSet::of(&[1, 5, 6]),
        IndexSet::of(&[1, 2, 6]),
    ]
}

/// Applies the six piecewise complementary-support formulas to the regime
/// of `phi`, returning the extended supports `(Iα, Jα)` in zero order.
///
/// Fails if the regime is incompatible with the requested variant or if
/// `phi` falls outside the case-13 family.
pub fn expected_extended_supports<T: Real>(
    phi: &AngleVector<T>,
    variant: Case13Variant,
) -> Result<Vec<ExtendedSupport>> {
    let flags = classify_regime(phi);
    if flags.s123_vs_456 == Ordering::Less || flags.s345_vs_126 == Ordering::Less {
        return Err(Error::constraint(
            "angles outside the case-13 family: a non-strict family inequality is violated",
        ));
    }
    if !flags.admits(variant) {
        return Err(Error::constraint(format!(
            "regime {flags:?} incompatible with variant {variant}"
        )));
    }

    use Ordering::{Equal, Greater, Less};
    let ge_234 = flags.s234_vs_156 != Less; // φ2+φ3+φ4 ≥ φ1+φ5+φ6
    let extra1: &[usize] = match flags.s345_vs_126 {
        Greater => &[4],
        Equal => &[4, 6],
        Less => unreachable!(),
    };
    let extra2: &[usize] = if ge_234 { &[1, 5] } else { &[1] };
    let extra3: &[usize] = if ge_234 { &[2, 6] } else { &[6] };
    let extra4: &[usize] = match flags.s123_vs_456 {
        Greater => &[3],
        Equal => &[1, 3],
        Less => unreachable!(),
    };
    let gt_234 = flags.s234_vs_156 == Greater; // strict φ2+φ3+φ4 > φ1+φ5+φ6
    let extra5: &[usize] = match (gt_234, flags.s123_vs_456) {
        (true, Equal) => &[4],
        (false, Equal) => &[2, 4],
        (true, Greater) => &[],
        (false, Greater) => &[2],
        (_, Less) => unreachable!(),
    };
    let extra6: &[usize] = match (gt_234, flags.s345_vs_126) {
        (true, Equal) => &[3],
        (false, Equal) => &[3, 5],
        (true, Greater) => &[],
        (false, Greater) => &[5],
        (_, Less) => unreachable!(),
    };

    let extras = [extra1, extra2, extra3, extra4, extra5, extra6];
    case13_supports()
        .iter()
        .zip(extras.iter())
        .map(|(&support, extra)| ExtendedSupport::new(support, support.union(IndexSet::of(extra))))
        .collect()
}

/// Key of a `c` coefficient: an index pair or triple, sorted ascending.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(untagged)]
pub enum CoefKey {
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

impl fmt::Display for CoefKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefKey::Pair(i, j) => write!(f, "c{i}{j}"),
            CoefKey::Triple(i, j, k) => write!(f, "c{i}{j}{k}"),
        }
    }
}

/// `c_ij = cos(φi + φj) − cos(Σ_{k∉{i,j}} φk)`.
pub fn c_pair<T: Real>(phi: &AngleVector<T>, i: usize, j: usize) -> T {
    phi.sum_of(&[i, j]).cos() - phi.sum_except(&[i, j]).cos()
}

/// `c_ijk = cos(φi + φj + φk) − cos(Σ_{l∉{i,j,k}} φl)`.
pub fn c_triple<T: Real>(phi: &AngleVector<T>, i: usize, j: usize, k: usize) -> T {
    phi.sum_of(&[i, j, k]).cos() - phi.sum_except(&[i, j, k]).cos()
}

/// Every `c` coefficient appearing in the two `A·U` product patterns:
/// the six cyclic pairs and the four triples `{1,2,6}, {1,5,6}, {2,3,4},
/// {4,5,6}`.
pub fn c_coeffs<T: Real>(phi: &AngleVector<T>) -> BTreeMap<CoefKey, T> {
    let mut out = BTreeMap::new();
    for &(i, j) in &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)] {
        out.insert(CoefKey::Pair(i, j), c_pair(phi, i, j));
    }
    for &(i, j, k) in &[(1, 2, 6), (1, 5, 6), (2, 3, 4), (4, 5, 6)] {
        out.insert(CoefKey::Triple(i, j, k), c_triple(phi, i, j, k));
    }
    out
}

/// One structurally nonzero entry of the `A·U` product: a `c` coefficient
/// times the sine of a single angle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AuTerm {
    pub coef: CoefKey,
    pub sine_of: usize,
}

const fn pair(i: usize, j: usize, sine_of: usize) -> Option<AuTerm> {
    Some(AuTerm {
        coef: CoefKey::Pair(i, j),
        sine_of,
    })
}

const fn triple(i: usize, j: usize, k: usize, sine_of: usize) -> Option<AuTerm> {
    Some(AuTerm {
        coef: CoefKey::Triple(i, j, k),
        sine_of,
    })
}

const AU_PATTERN_13_1: [[Option<AuTerm>; 6]; 6] = [
    [None, None, pair(5, 6, 3), triple(4, 5, 6, 5), None, None],
    [None, None, None, pair(1, 6, 4), triple(1, 5, 6, 6), None],
    [None, None, None, None, pair(1, 2, 5), triple(1, 2, 6, 1)],
    [None, None, None, None, triple(4, 5, 6, 5), pair(4, 5, 1)],
    [pair(5, 6, 2), None, None, None, None, triple(1, 5, 6, 6)],
    [triple(1, 2, 6, 1), pair(1, 6, 3), None, None, None, None],
];

const AU_PATTERN_13_2: [[Option<AuTerm>; 6]; 6] = [
    [None, None, pair(5, 6, 3), triple(4, 5, 6, 5), None, None],
    [None, None, triple(2, 3, 4, 3), pair(2, 3, 5), None, None],
    [None, None, None, None, pair(1, 2, 5), triple(1, 2, 6, 1)],
    [None, None, None, None, triple(4, 5, 6, 5), pair(4, 5, 1)],
    [pair(3, 4, 1), triple(2, 3, 4, 3), None, None, None, None],
    [triple(1, 2, 6, 1), pair(1, 6, 3), None, None, None, None],
];

/// The symbolic sign pattern of the product `A·U` for the given variant:
/// entry `(i, α)` is `Some(c · sin φ)` or a structural zero.
pub fn au_pattern(variant: Case13Variant) -> &'static [[Option<AuTerm>; 6]; 6] {
    match variant {
        Case13Variant::V13_1 => &AU_PATTERN_13_1,
        Case13Variant::V13_2 => &AU_PATTERN_13_2,
    }
}

/// Numeric evaluation of the `A·U` pattern: the matrix whose columns are
/// the predicted products `A uᵅ` for the *unnormalized* closed-form zero
/// columns.
pub fn expected_au<T: Real>(phi: &AngleVector<T>, variant: Case13Variant) -> DMatrix<T> {
    let pattern = au_pattern(variant);
    DMatrix::from_fn(6, 6, |i, j| match pattern[i][j] {
        None => T::zero(),
        Some(AuTerm { coef, sine_of }) => {
            let c = match coef {
                CoefKey::Pair(a, b) => c_pair(phi, a, b),
                CoefKey::Triple(a, b, c) => c_triple(phi, a, b, c),
            };
            c * phi.phi(sine_of).sin()
        }
    })
}

/// Samples an angle vector uniformly from a box and rejects until the
/// strict main-regime inequalities of the requested variant hold (with
/// margin `1e-6` so the sample is safely away from every boundary).
/// Deterministic given the generator state.
pub fn sample_main_regime_phi<R: Rng>(rng: &mut R, variant: Case13Variant) -> AngleVector<f64> {
    let margin = 1e-6;
    loop {
        let raw: [f64; 6] = std::array::from_fn(|_| rng.random_range(0.02..0.30));
        let Ok(phi) = AngleVector::from_pi_multiples(raw) else {
            continue;
        };
        let d234 = phi.sum_of(&[2, 3, 4]) - phi.sum_of(&[1, 5, 6]);
        let first_ok = match variant {
            Case13Variant::V13_1 => d234 > margin,
            Case13Variant::V13_2 => d234 < -margin,
        };
        if first_ok
            && phi.sum_of(&[3, 4, 5]) - phi.sum_of(&[1, 2, 6]) > margin
            && phi.sum_of(&[1, 2, 3]) - phi.sum_of(&[4, 5, 6]) > margin
            && (phi.total() - std::f64::consts::PI).abs() > margin
        {
            return phi;
        }
    }
}
