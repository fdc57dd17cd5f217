//! Index sets over `{1..n}`, permutations of `{1..6}` and extended supports.
//!
//! Indices are 1-based in every external and serialized form; the bitmask
//! representation below is an internal detail.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest index an [`IndexSet`] can hold.
pub const MAX_INDEX: usize = 32;

/// A sorted, duplicate-free set of 1-based indices.
///
/// Stored as a bitmask, so sortedness and uniqueness hold by construction.
/// Serialized as a sorted JSON array of integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet {
    bits: u32,
}

impl IndexSet {
    /// The empty set.
    pub fn empty() -> Self {
        IndexSet { bits: 0 }
    }

    /// The full set `{1..dim}`.
    pub fn full(dim: usize) -> Self {
        assert!(dim <= MAX_INDEX);
        IndexSet {
            bits: if dim == 0 {
                0
            } else {
                (u32::MAX) >> (32 - dim)
            },
        }
    }

    /// Builds a set from 1-based indices. Duplicates are merged; indices
    /// outside `1..=MAX_INDEX` are rejected.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u32;
        for i in indices {
            if i == 0 || i > MAX_INDEX {
                return Err(Error::constraint(format!(
                    "index {i} outside 1..={MAX_INDEX}"
                )));
            }
            bits |= 1 << (i - 1);
        }
        Ok(IndexSet { bits })
    }

    /// Infallible constructor for literal sets known to be in range.
    pub fn of(indices: &[usize]) -> Self {
        Self::from_indices(indices.iter().copied()).expect("indices in range")
    }

    pub(crate) fn from_bits(bits: u32) -> Self {
        IndexSet { bits }
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, index: usize) -> bool {
        (1..=MAX_INDEX).contains(&index) && self.bits & (1 << (index - 1)) != 0
    }

    pub fn is_subset_of(self, other: IndexSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(self, other: IndexSet) -> IndexSet {
        IndexSet {
            bits: self.bits & other.bits,
        }
    }

    /// Set difference `self \ other`.
    pub fn difference(self, other: IndexSet) -> IndexSet {
        IndexSet {
            bits: self.bits & !other.bits,
        }
    }

    /// Complement within `{1..dim}`.
    pub fn complement(self, dim: usize) -> IndexSet {
        IndexSet {
            bits: !self.bits & IndexSet::full(dim).bits,
        }
    }

    /// Ascending 1-based members.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=MAX_INDEX).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Elementwise image under a permutation of `{1..6}`.
    pub fn permute(self, p: &Permutation) -> IndexSet {
        let mut bits = 0u32;
        for i in self.iter() {
            bits |= 1 << (p.apply(i) - 1);
        }
        IndexSet { bits }
    }
}

impl Ord for IndexSet {
    /// Lexicographic order on the sorted member lists, so `{1,2,3} < {1,2,6}
    /// < {2,3,4}`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(deserializer)?;
        for w in raw.windows(2) {
            if w[0] >= w[1] {
                return Err(D::Error::custom("index set must be strictly increasing"));
            }
        }
        IndexSet::from_indices(raw).map_err(D::Error::custom)
    }
}

/// A permutation of `{1..6}`, stored as the image list: `image[i-1]` is the
/// image of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    image: [usize; 6],
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation {
            image: [1, 2, 3, 4, 5, 6],
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_image(image: [usize; 6]) -> Result<Self> {
        let mut seen = [false; 6];
        for &v in &image {
            if v == 0 || v > 6 || seen[v - 1] {
                return Err(Error::constraint(format!(
                    "image {image:?} is not a bijection of {{1..6}}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { image })
    }

    pub fn image(&self) -> [usize; 6] {
        self.image
    }

    /// Image of a single 1-based index.
    pub fn apply(&self, index: usize) -> usize {
        self.image[index - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = [0usize; 6];
        for (i, &v) in self.image.iter().enumerate() {
            image[v - 1] = i + 1;
        }
        Permutation { image }
    }

    /// `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut image = [0usize; 6];
        for i in 1..=6 {
            image[i - 1] = self.apply(other.apply(i));
        }
        Permutation { image }
    }

    /// All 720 permutations of `{1..6}` in lexicographic order of the image.
    pub fn all() -> Vec<Permutation> {
        let mut out = Vec::with_capacity(720);
        let mut image = [1usize, 2, 3, 4, 5, 6];
        permute_rec(&mut image, 0, &mut out);
        out.sort_by_key(|p| p.image);
        out
    }
}

fn permute_rec(image: &mut [usize; 6], k: usize, out: &mut Vec<Permutation>) {
    if k == 6 {
        out.push(Permutation { image: *image });
        return;
    }
    for i in k..6 {
        image.swap(k, i);
        permute_rec(image, k + 1, out);
        image.swap(k, i);
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}{}{}{}{}{})",
            self.image[0],
            self.image[1],
            self.image[2],
            self.image[3],
            self.image[4],
            self.image[5]
        )
    }
}

/// The pair `(I, J)` of support and complementary index set of a zero,
/// with the invariant `I ⊆ J`.
///
/// Serialized as `{"I": [...], "J": [...]}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawExtendedSupport")]
pub struct ExtendedSupport {
    #[serde(rename = "I")]
    support: IndexSet,
    #[serde(rename = "J")]
    complementary: IndexSet,
}

#[derive(Deserialize)]
struct RawExtendedSupport {
    #[serde(rename = "I")]
    support: IndexSet,
    #[serde(rename = "J")]
    complementary: IndexSet,
}

impl TryFrom<RawExtendedSupport> for ExtendedSupport {
    type Error = Error;

    fn try_from(raw: RawExtendedSupport) -> Result<Self> {
        ExtendedSupport::new(raw.support, raw.complementary)
    }
}

impl ExtendedSupport {
    /// Constructs an extended support, rejecting pairs with `I ⊄ J`.
    pub fn new(support: IndexSet, complementary: IndexSet) -> Result<Self> {
        if !support.is_subset_of(complementary) {
            return Err(Error::constraint(format!(
                "extended support requires I ⊆ J, got I={support}, J={complementary}"
            )));
        }
        Ok(ExtendedSupport {
            support,
            complementary,
        })
    }

    pub fn support(&self) -> IndexSet {
        self.support
    }

    pub fn complementary(&self) -> IndexSet {
        self.complementary
    }

    /// `J \ I`, the part of the complementary set beyond the support.
    pub fn extra(&self) -> IndexSet {
        self.complementary.difference(self.support)
    }

    /// Elementwise image under a permutation; `I ⊆ J` is preserved.
    pub fn permute(&self, p: &Permutation) -> ExtendedSupport {
        ExtendedSupport {
            support: self.support.permute(p),
            complementary: self.complementary.permute(p),
        }
    }
}

impl fmt::Debug for ExtendedSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.support, self.complementary)
    }
}

/// Maps both index sets of an extended support through a permutation.
pub fn apply_permutation(p: &Permutation, e: &ExtendedSupport) -> ExtendedSupport {
    e.permute(p)
}
