//! Dimension vectors in `S = N^r \ {0}`, ordered tuples, order-preserving
//! surjections encoded by cut sets, and decomposition enumeration.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from semigroup-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    /// The zero vector is not an element of `S`.
    #[error("the zero vector is not in the semigroup")]
    ZeroVector,
    /// Mixed ranks in a single tuple or operation.
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    /// Malformed textual dimension vector.
    #[error("bad dimension vector `{0}`")]
    Parse(String),
}

/// A dimension vector: a fixed-length sequence of nonnegative integers.
/// Ordering is lexicographic on the entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector {
    entries: Vec<u32>,
}

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector { entries }
    }

    /// The `i`-th unit vector (0-based) of the given rank.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut entries = vec![0; rank];
        entries[i] = 1;
        DimVector { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> u32 {
        self.entries[i]
    }

    /// Membership in `S`: at least one positive entry.
    pub fn is_nonzero(&self) -> bool {
        self.entries.iter().any(|&e| e > 0)
    }

    /// Total degree `δ·γ`, the sum of all entries.
    pub fn total_degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        debug_assert_eq!(self.rank(), other.rank());
        DimVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Coordinatewise `self <= other`.
    pub fn le_coordinatewise(&self, other: &DimVector) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// The primitive vector `self / gcd(entries)`.
    pub fn primitive(&self) -> DimVector {
        let g = self.entries.iter().fold(0u32, |acc, &e| gcd_u32(acc, e));
        if g <= 1 {
            return self.clone();
        }
        DimVector { entries: self.entries.iter().map(|&e| e / g).collect() }
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// `true` iff `ma = nb` for some positive integers `m, n`, i.e. the primitive
/// vectors agree.
pub fn proportional(a: &DimVector, b: &DimVector) -> bool {
    a.primitive() == b.primitive()
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for DimVector {
    type Err = SemigroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries: Result<Vec<u32>, _> =
            s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        entries
            .map(DimVector::new)
            .map_err(|_| SemigroupError::Parse(s.to_string()))
    }
}

/// A borrowed view of a tuple: `rank` and the flattened entry sequence.
/// Restriction to a contiguous block is a subslice, so the plethysm and tree
/// evaluators run without allocating per block.
#[derive(Debug, Clone, Copy)]
pub struct TupleView<'a> {
    rank: usize,
    flat: &'a [u32],
}

impl<'a> TupleView<'a> {
    pub fn new(rank: usize, flat: &'a [u32]) -> Self {
        debug_assert!(rank > 0 && !flat.is_empty() && flat.len() % rank == 0);
        TupleView { rank, flat }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.flat.len() / self.rank
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn flat(&self) -> &'a [u32] {
        self.flat
    }

    pub fn part_entries(&self, i: usize) -> &'a [u32] {
        &self.flat[i * self.rank..(i + 1) * self.rank]
    }

    pub fn part(&self, i: usize) -> DimVector {
        DimVector::new(self.part_entries(i).to_vec())
    }

    /// The contiguous sub-tuple of parts `lo..hi`.
    pub fn slice(&self, lo: usize, hi: usize) -> TupleView<'a> {
        debug_assert!(lo < hi && hi <= self.len());
        TupleView { rank: self.rank, flat: &self.flat[lo * self.rank..hi * self.rank] }
    }

    pub fn to_tuple(&self) -> Tuple {
        Tuple { rank: self.rank, flat: self.flat.to_vec() }
    }

    /// Coordinatewise sum of all parts.
    pub fn sum(&self) -> DimVector {
        let mut acc = vec![0u32; self.rank];
        for part in self.flat.chunks_exact(self.rank) {
            for (a, b) in acc.iter_mut().zip(part) {
                *a += b;
            }
        }
        DimVector::new(acc)
    }

    /// Sum of the parts `lo..hi` written into `out`.
    pub fn sum_range_into(&self, lo: usize, hi: usize, out: &mut [u32]) {
        out.fill(0);
        for i in lo..hi {
            for (a, b) in out.iter_mut().zip(self.part_entries(i)) {
                *a += b;
            }
        }
    }
}

/// An ordered nonempty tuple of nonzero dimension vectors of equal rank,
/// stored as the flattened entry sequence (which is also its canonical
/// memoization key).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple {
    rank: usize,
    flat: Vec<u32>,
}

impl Tuple {
    pub fn new(parts: Vec<DimVector>) -> Result<Self, SemigroupError> {
        assert!(!parts.is_empty(), "a tuple has at least one part");
        let rank = parts[0].rank();
        let mut flat = Vec::with_capacity(rank * parts.len());
        for p in &parts {
            if p.rank() != rank {
                return Err(SemigroupError::RankMismatch(rank, p.rank()));
            }
            if !p.is_nonzero() {
                return Err(SemigroupError::ZeroVector);
            }
            flat.extend_from_slice(p.entries());
        }
        Ok(Tuple { rank, flat })
    }

    /// Builds a tuple from the flattened entry sequence; parts must be nonzero.
    pub fn from_flat(rank: usize, flat: Vec<u32>) -> Self {
        let t = Tuple { rank, flat };
        debug_assert!(
            t.flat.len() % rank == 0
                && !t.flat.is_empty()
                && (0..t.len()).all(|i| t.view().part_entries(i).iter().any(|&e| e > 0))
        );
        t
    }

    /// Convenience constructor from entry slices; panics on invalid input.
    pub fn of(parts: &[&[u32]]) -> Self {
        Tuple::new(parts.iter().map(|p| DimVector::new(p.to_vec())).collect()).unwrap()
    }

    pub fn singleton(v: DimVector) -> Self {
        Tuple { rank: v.rank(), flat: v.entries().to_vec() }
    }

    pub fn view(&self) -> TupleView<'_> {
        TupleView { rank: self.rank, flat: &self.flat }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.flat.len() / self.rank
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn part(&self, i: usize) -> DimVector {
        self.view().part(i)
    }

    pub fn parts(&self) -> Vec<DimVector> {
        (0..self.len()).map(|i| self.part(i)).collect()
    }

    pub fn flat(&self) -> &[u32] {
        &self.flat
    }

    /// The semigroup homomorphism `α ↦ |α| = Σ α_i`.
    pub fn sum(&self) -> DimVector {
        self.view().sum()
    }

    /// Total degree of the sum.
    pub fn total_degree(&self) -> u32 {
        self.flat.iter().sum()
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.len()).map(|i| format!("({})", self.part(i))).collect();
        f.write_str(&parts.join(" "))
    }
}

/// An order-preserving surjection `{1..n} -> {1..m}`, encoded by its cut set:
/// the strictly increasing positions `k` (within `1..n-1`) after which a new
/// block starts.  A cut set with `m-1` cuts has `m` blocks, the consecutive
/// runs between cuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surjection {
    n: usize,
    cuts: Vec<usize>,
}

impl Surjection {
    pub fn new(n: usize, cuts: Vec<usize>) -> Self {
        debug_assert!(n >= 1);
        debug_assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(cuts.iter().all(|&c| c >= 1 && c < n));
        Surjection { n, cuts }
    }

    /// The identity surjection (every position is a cut).
    pub fn identity(n: usize) -> Self {
        Surjection { n, cuts: (1..n).collect() }
    }

    /// The collapse-to-a-point surjection (no cuts).
    pub fn collapse(n: usize) -> Self {
        Surjection { n, cuts: Vec::new() }
    }

    pub fn source_len(&self) -> usize {
        self.n
    }

    /// Number of blocks `m`.
    pub fn block_count(&self) -> usize {
        self.cuts.len() + 1
    }

    /// Half-open part range `lo..hi` of block `j` (0-based).
    pub fn block_range(&self, j: usize) -> (usize, usize) {
        let lo = if j == 0 { 0 } else { self.cuts[j - 1] };
        let hi = if j == self.cuts.len() { self.n } else { self.cuts[j] };
        (lo, hi)
    }

    /// All `2^(n-1)` order-preserving surjections out of `{1..n}`, in a fixed
    /// deterministic order (cut sets as ascending bitmasks).
    pub fn all(n: usize) -> impl Iterator<Item = Surjection> {
        assert!(n >= 1 && n <= 63, "tuple too long to enumerate surjections");
        (0u64..(1u64 << (n - 1))).map(move |mask| {
            let cuts = (1..n).filter(|k| mask >> (k - 1) & 1 == 1).collect();
            Surjection { n, cuts }
        })
    }
}

/// Pushforward `π_* α`: block sums in block order.
pub fn pushforward(alpha: &Tuple, pi: &Surjection) -> Tuple {
    assert_eq!(pi.source_len(), alpha.len());
    let view = alpha.view();
    let rank = view.rank();
    let mut flat = vec![0u32; pi.block_count() * rank];
    for j in 0..pi.block_count() {
        let (lo, hi) = pi.block_range(j);
        view.sum_range_into(lo, hi, &mut flat[j * rank..(j + 1) * rank]);
    }
    Tuple { rank, flat }
}

/// Restriction `α|_{π^{-1}(j)}`: the contiguous sub-tuple in block `j` (0-based).
pub fn restrict(alpha: &Tuple, pi: &Surjection, j: usize) -> Tuple {
    assert_eq!(pi.source_len(), alpha.len());
    assert!(j < pi.block_count());
    let (lo, hi) = pi.block_range(j);
    alpha.view().slice(lo, hi).to_tuple()
}

/// All ordered decompositions of `γ` into between `min_parts` and `max_parts`
/// nonzero parts, in lexicographic order on the flattened entry sequence.
pub fn decompositions(
    gamma: &DimVector,
    min_parts: usize,
    max_parts: Option<usize>,
) -> Result<impl Iterator<Item = Tuple>, SemigroupError> {
    if !gamma.is_nonzero() {
        return Err(SemigroupError::ZeroVector);
    }
    let mut out = Vec::new();
    let rank = gamma.rank();
    let mut prefix: Vec<u32> = Vec::new();
    decompose_rec(
        gamma.entries(),
        rank,
        min_parts.max(1),
        max_parts,
        0,
        &mut prefix,
        &mut out,
    );
    Ok(out.into_iter())
}

fn decompose_rec(
    remaining: &[u32],
    rank: usize,
    min_parts: usize,
    max_parts: Option<usize>,
    used: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Tuple>,
) {
    if remaining.iter().all(|&e| e == 0) {
        if used >= min_parts {
            out.push(Tuple { rank, flat: prefix.clone() });
        }
        return;
    }
    if let Some(maxp) = max_parts {
        if used >= maxp {
            return;
        }
    }
    // First parts in lexicographic (odometer) order; since all parts share a
    // rank, ascending first parts yield ascending flattened sequences.
    let mut part = vec![0u32; rank];
    loop {
        // increment `part` within the box [0, remaining]
        let mut i = rank;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if part[i] < remaining[i] {
                part[i] += 1;
                for v in part.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                break;
            }
        }
        // `part` is nonzero by construction
        prefix.extend_from_slice(&part);
        let rest: Vec<u32> = remaining.iter().zip(&part).map(|(r, p)| r - p).collect();
        decompose_rec(&rest, rank, min_parts, max_parts, used + 1, prefix, out);
        prefix.truncate(prefix.len() - rank);
    }
}

/// All nonzero vectors of the given rank with every entry `<= max_entry`,
/// in lexicographic order.
pub fn vectors_up_to(rank: usize, max_entry: u32) -> Vec<DimVector> {
    let bound = vec![max_entry; rank];
    vectors_in_box(&bound)
}

/// All nonzero vectors `v <= bound` coordinatewise, in lexicographic order.
pub fn vectors_in_box(bound: &[u32]) -> Vec<DimVector> {
    let rank = bound.len();
    let mut out = Vec::new();
    let mut v = vec![0u32; rank];
    'outer: loop {
        let mut i = rank;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            if v[i] < bound[i] {
                v[i] += 1;
                for w in v.iter_mut().skip(i + 1) {
                    *w = 0;
                }
                break;
            }
        }
        out.push(DimVector::new(v.clone()));
    }
    out
}

/// All `γ ∈ S` with total degree `<= bound`, in lexicographic order.
pub fn vectors_of_degree_at_most(rank: usize, bound: u32) -> Vec<DimVector> {
    vectors_up_to(rank, bound)
        .into_iter()
        .filter(|v| v.total_degree() <= bound)
        .collect()
}

/// Visits every tuple with `1 <= n <= n_max` parts drawn from the nonzero
/// vectors with entries `<= max_entry`, in (n, lexicographic) order, without
/// allocating per tuple.  The callback returns `false` to stop early.
pub fn for_each_tuple<F>(rank: usize, max_entry: u32, n_max: usize, mut f: F)
where
    F: FnMut(TupleView<'_>) -> bool,
{
    let vectors = vectors_up_to(rank, max_entry);
    let mut flat: Vec<u32> = Vec::with_capacity(rank * n_max);
    for n in 1..=n_max {
        let mut idx = vec![0usize; n];
        flat.clear();
        for _ in 0..n {
            flat.extend_from_slice(vectors[0].entries());
        }
        loop {
            if !f(TupleView::new(rank, &flat)) {
                return;
            }
            // odometer increment over part indices, least-significant last
            let mut pos = n;
            let mut wrapped = true;
            while pos > 0 {
                pos -= 1;
                if idx[pos] + 1 < vectors.len() {
                    idx[pos] += 1;
                    flat[pos * rank..(pos + 1) * rank]
                        .copy_from_slice(vectors[idx[pos]].entries());
                    wrapped = false;
                    break;
                }
                idx[pos] = 0;
                flat[pos * rank..(pos + 1) * rank].copy_from_slice(vectors[0].entries());
            }
            if wrapped {
                break;
            }
        }
    }
}
