//! Plane rooted trees, their enumeration, tree evaluation of collections,
//! the free construction, and plethystic inverses.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use thiserror::Error;

use crate::collections::{Collection, Rule};
use crate::exact::Rational;
use crate::semigroup::{Tuple, TupleView};

/// Errors from the free construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreesError {
    /// The free construction requires a collection vanishing on singletons.
    #[error("collection is not supported in cardinality >= 2 (nonzero on a singleton)")]
    NotSupportedGe2,
    /// Plethystic inversion requires value 1 on singletons.
    #[error("collection is not unital (value != 1 on a singleton)")]
    NotUnital,
}

/// A plane rooted tree with ordered children; leaves are labeled 1..n in
/// left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneTree {
    Leaf(usize),
    Internal(Vec<PlaneTree>),
}

impl PlaneTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            PlaneTree::Leaf(_) => 1,
            PlaneTree::Internal(children) => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Labels of the leaves in left-to-right order.
    pub fn leaf_labels(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            PlaneTree::Leaf(l) => out.push(*l),
            PlaneTree::Internal(children) => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// Number of internal vertices.
    pub fn internal_count(&self) -> usize {
        match self {
            PlaneTree::Leaf(_) => 0,
            PlaneTree::Internal(children) => {
                1 + children.iter().map(|c| c.internal_count()).sum::<usize>()
            }
        }
    }

    /// Minimum number of children over internal vertices (`None` for a leaf).
    pub fn min_children(&self) -> Option<usize> {
        match self {
            PlaneTree::Leaf(_) => None,
            PlaneTree::Internal(children) => {
                let mut min = children.len();
                for c in children {
                    if let Some(m) = c.min_children() {
                        min = min.min(m);
                    }
                }
                Some(min)
            }
        }
    }

    /// Child leaf-index spans `(lo, hi)` of every internal vertex, root first
    /// in preorder.  Children of a vertex cover consecutive leaf intervals.
    pub fn vertex_spans(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        self.spans_rec(0, &mut out);
        out
    }

    fn spans_rec(&self, offset: usize, out: &mut Vec<Vec<(usize, usize)>>) -> usize {
        match self {
            PlaneTree::Leaf(_) => offset + 1,
            PlaneTree::Internal(children) => {
                let slot = out.len();
                out.push(Vec::new());
                let mut spans = Vec::with_capacity(children.len());
                let mut lo = offset;
                for c in children {
                    let hi = match c {
                        PlaneTree::Leaf(_) => lo + 1,
                        PlaneTree::Internal(_) => lo + c.leaf_count(),
                    };
                    spans.push((lo, hi));
                    lo = hi;
                }
                out[slot] = spans;
                let mut off = offset;
                for c in children {
                    off = c.spans_rec(off, out);
                }
                off
            }
        }
    }

    /// For an internal vertex `v` (preorder index among internal vertices)
    /// and a tuple on the leaves, the tuple of child sums at `v`.
    pub fn children_tuple(&self, v: usize, alpha: &Tuple) -> Tuple {
        assert_eq!(self.leaf_count(), alpha.len(), "leaf count mismatch");
        let spans = self.vertex_spans();
        let view = alpha.view();
        let rank = view.rank();
        let mut flat = vec![0u32; spans[v].len() * rank];
        for (j, &(lo, hi)) in spans[v].iter().enumerate() {
            view.sum_range_into(lo, hi, &mut flat[j * rank..(j + 1) * rank]);
        }
        Tuple::from_flat(rank, flat)
    }
}

/// All plane trees on leaves `1..n` whose internal vertices have at least
/// `min_children` children (which must be >= 2), in a fixed deterministic
/// order. Counts for `min_children = 2` are the Schröder–Hipparchus numbers.
pub fn enumerate_trees(n: usize, min_children: usize) -> Arc<Vec<PlaneTree>> {
    assert!(n >= 1 && min_children >= 2);
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, bool), Arc<Vec<PlaneTree>>>>> =
        OnceLock::new();
    trees_cached(&CACHE, n, min_children, false)
}

/// All plane binary trees on leaves `1..n` (Catalan many).
pub fn enumerate_binary(n: usize) -> Arc<Vec<PlaneTree>> {
    assert!(n >= 1);
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, bool), Arc<Vec<PlaneTree>>>>> =
        OnceLock::new();
    trees_cached(&CACHE, n, 2, true)
}

fn trees_cached(
    cache: &OnceLock<Mutex<HashMap<(usize, usize, bool), Arc<Vec<PlaneTree>>>>>,
    n: usize,
    min_children: usize,
    exactly_two: bool,
) -> Arc<Vec<PlaneTree>> {
    let cache = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(n, min_children, exactly_two)) {
        return v.clone();
    }
    let trees = Arc::new(build_trees(n, 1, min_children, exactly_two));
    cache
        .lock()
        .unwrap()
        .insert((n, min_children, exactly_two), trees.clone());
    trees
}

fn build_trees(n: usize, first_label: usize, min_children: usize, exactly_two: bool) -> Vec<PlaneTree> {
    if n == 1 {
        return vec![PlaneTree::Leaf(first_label)];
    }
    let mut out = Vec::new();
    let max_children = if exactly_two { 2 } else { n };
    for m in min_children..=max_children.min(n) {
        for parts in compositions(n, m) {
            // cartesian product of subtree choices, odometer order
            let mut label = first_label;
            let choices: Vec<Vec<PlaneTree>> = parts
                .iter()
                .map(|&k| {
                    let t = build_trees(k, label, min_children, exactly_two);
                    label += k;
                    t
                })
                .collect();
            let mut idx = vec![0usize; m];
            loop {
                let children: Vec<PlaneTree> =
                    idx.iter().enumerate().map(|(i, &j)| choices[i][j].clone()).collect();
                out.push(PlaneTree::Internal(children));
                let mut pos = m;
                let mut wrapped = true;
                while pos > 0 {
                    pos -= 1;
                    if idx[pos] + 1 < choices[pos].len() {
                        idx[pos] += 1;
                        wrapped = false;
                        break;
                    }
                    idx[pos] = 0;
                }
                if wrapped {
                    break;
                }
            }
        }
    }
    out
}

/// All compositions of `n` into `m` positive parts, lexicographic.
fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 1 {
            if n >= 1 {
                cur.push(n);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for k in 1..=n.saturating_sub(m - 1) {
            cur.push(k);
            rec(n - k, m - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, m, &mut cur, &mut out);
    out
}

/// `F(T)(α) = ∏_v F(α|_{ch v})`, the product over internal vertices.
pub fn tree_eval(f: &Collection, tree: &PlaneTree, alpha: &Tuple) -> Rational {
    assert_eq!(tree.leaf_count(), alpha.len(), "leaf count mismatch");
    let mut acc = Rational::one();
    for v in 0..tree.internal_count() {
        let children = tree.children_tuple(v, alpha);
        let val = f.eval(&children);
        if val.is_zero() {
            return Rational::zero();
        }
        acc *= val;
    }
    acc
}

/// Tree shapes precompiled to per-vertex child spans for fast evaluation.
struct CompiledTrees {
    trees: Vec<Vec<Vec<(usize, usize)>>>,
}

fn compiled_trees(n: usize) -> Arc<CompiledTrees> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CompiledTrees>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    let trees = enumerate_trees(n, 2);
    let compiled = Arc::new(CompiledTrees {
        trees: trees.iter().map(|t| t.vertex_spans()).collect(),
    });
    cache.lock().unwrap().insert(n, compiled.clone());
    compiled
}

/// Tuples above this length are evaluated by the interval recursion instead
/// of the flat tree enumeration; both paths compute the same finite sum and
/// are cross-checked in tests.
const FLAT_EVAL_LIMIT: usize = 5;

struct FreeConstructionRule {
    f: Collection,
    memo: super::collections::Memo,
}

impl Rule for FreeConstructionRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        let n = alpha.len();
        if n == 1 {
            return Rational::one();
        }
        if let Some(v) = self.memo.get(alpha) {
            return v;
        }
        let value = if n <= FLAT_EVAL_LIMIT {
            self.eval_flat(alpha)
        } else {
            self.eval_intervals(alpha)
        };
        self.memo.insert(alpha, value.clone());
        value
    }
}

impl FreeConstructionRule {
    /// Direct sum over enumerated trees.
    fn eval_flat(&self, alpha: TupleView<'_>) -> Rational {
        let n = alpha.len();
        let rank = alpha.rank();
        let compiled = compiled_trees(n);
        let mut scratch: Vec<u32> = Vec::new();
        let mut acc = Rational::zero();
        'tree: for spans in &compiled.trees {
            let mut term = Rational::one();
            for vertex in spans {
                scratch.clear();
                scratch.resize(vertex.len() * rank, 0);
                for (j, &(lo, hi)) in vertex.iter().enumerate() {
                    alpha.sum_range_into(lo, hi, &mut scratch[j * rank..(j + 1) * rank]);
                }
                let val = self.f.eval_view(TupleView::new(rank, &scratch));
                if val.is_zero() {
                    continue 'tree;
                }
                if !val.is_one() {
                    term *= val;
                }
            }
            acc += term;
        }
        acc
    }

    /// Interval recursion: every tree is a root composition of the leaf
    /// interval into >= 2 consecutive blocks with a subtree on each block, so
    /// the sum over trees factors over intervals.  Values are computed
    /// bottom-up by interval length.
    fn eval_intervals(&self, alpha: TupleView<'_>) -> Rational {
        let n = alpha.len();
        let rank = alpha.rank();
        // dp[lo][hi - lo - 1] = free construction value on parts lo..hi
        let mut dp: Vec<Vec<Rational>> = (0..n)
            .map(|lo| {
                let mut row = vec![Rational::zero(); n - lo];
                row[0] = Rational::one();
                row
            })
            .collect();
        let mut scratch: Vec<u32> = Vec::new();
        let mut block_bounds: Vec<usize> = Vec::new();
        for len in 2..=n {
            for lo in 0..=n - len {
                let hi = lo + len;
                let mut acc = Rational::zero();
                // cut masks over the len-1 interior positions; bit k-1 set
                // means a block boundary after part lo+k
                for mask in 1u64..(1u64 << (len - 1)) {
                    block_bounds.clear();
                    block_bounds.push(lo);
                    for k in 1..len {
                        if mask >> (k - 1) & 1 == 1 {
                            block_bounds.push(lo + k);
                        }
                    }
                    block_bounds.push(hi);
                    // product of subtree values, cheap zero check first
                    let mut inner = Rational::one();
                    let mut dead = false;
                    for w in block_bounds.windows(2) {
                        let v = &dp[w[0]][w[1] - w[0] - 1];
                        if v.is_zero() {
                            dead = true;
                            break;
                        }
                        if !v.is_one() {
                            inner *= v.clone();
                        }
                    }
                    if dead {
                        continue;
                    }
                    // root factor on the block sums
                    let blocks = block_bounds.len() - 1;
                    scratch.clear();
                    scratch.resize(blocks * rank, 0);
                    for (j, w) in block_bounds.windows(2).enumerate() {
                        alpha.sum_range_into(w[0], w[1], &mut scratch[j * rank..(j + 1) * rank]);
                    }
                    let root = self.f.eval_view(TupleView::new(rank, &scratch));
                    if root.is_zero() {
                        continue;
                    }
                    acc += root * inner;
                }
                dp[lo][len - 1] = acc;
            }
        }
        dp[0][n - 1].clone()
    }
}

/// Samples the collection on singleton tuples built from the parts of a
/// small probe battery; rank-agnostic collections are probed at ranks 1..=3.
fn probe_singletons(f: &Collection) -> Vec<Tuple> {
    let ranks: Vec<usize> = match f.rank() {
        Some(r) => vec![r],
        None => vec![1, 2, 3],
    };
    let mut out = Vec::new();
    for r in ranks {
        for i in 0..r {
            out.push(Tuple::singleton(crate::semigroup::DimVector::unit(r, i)));
        }
        out.push(Tuple::singleton(crate::semigroup::DimVector::new(vec![1; r])));
        out.push(Tuple::singleton(crate::semigroup::DimVector::new(vec![2; r])));
        let mut mixed = vec![1u32; r];
        mixed[0] = 3;
        out.push(Tuple::singleton(crate::semigroup::DimVector::new(mixed)));
    }
    out
}

/// The free construction `𝕋F`: sum of `F(T)` over all plane trees with
/// internal vertices of >= 2 children.  `F` must be supported in cardinality
/// >= 2, asserted by sampling singletons.
pub fn free_construction(f: &Collection) -> Result<Collection, TreesError> {
    for probe in probe_singletons(f) {
        if !f.eval(&probe).is_zero() {
            return Err(TreesError::NotSupportedGe2);
        }
    }
    let rank = f.rank();
    Ok(Collection::from_rule(
        rank,
        FreeConstructionRule { f: f.clone(), memo: super::collections::Memo::new() },
    ))
}

/// The plethystic inverse `F^{-1} = 𝕋(1 - F)` of a collection with
/// `F(singleton) = 1`, asserted by sampling.
pub fn plethystic_inverse(f: &Collection) -> Result<Collection, TreesError> {
    for probe in probe_singletons(f) {
        if !f.eval(&probe).is_one() {
            return Err(TreesError::NotUnital);
        }
    }
    free_construction(&Collection::identity().sub(f)).map_err(|_| TreesError::NotUnital)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::{
        equal_on_grid, exp, hn, hn_inverse, log, pseudorandom_ge2, Grid,
    };
    use crate::exact::{rat, rat_int};
    use crate::semigroup::for_each_tuple;
    use crate::stability::CentralCharge;

    #[test]
    fn tree_counts() {
        // Schröder–Hipparchus and Catalan counts, against the standard
        // convolution recurrences computed independently below.
        let expected_sh = count_min2_by_recurrence(8);
        for n in 1..=8 {
            assert_eq!(enumerate_trees(n, 2).len(), expected_sh[n], "sh n={n}");
        }
        let expected_cat = count_binary_by_recurrence(8);
        for n in 1..=8 {
            assert_eq!(enumerate_binary(n).len(), expected_cat[n], "cat n={n}");
        }
        assert_eq!(
            (1..=5).map(|n| enumerate_trees(n, 2).len()).collect::<Vec<_>>(),
            vec![1, 1, 3, 11, 45]
        );
        assert_eq!(
            (1..=5).map(|n| enumerate_binary(n).len()).collect::<Vec<_>>(),
            vec![1, 1, 2, 5, 14]
        );
    }

    /// t(n) = Σ over m >= 2, compositions n = k_1 + … + k_m, ∏ t(k_i)
    fn count_min2_by_recurrence(max: usize) -> Vec<usize> {
        let mut t = vec![0usize; max + 1];
        t[1] = 1;
        for n in 2..=max {
            // s[m][v] = number of ways to write v as an ordered sum of m
            // parts with t-weights
            let mut total = 0usize;
            let mut layer = t.clone(); // m = 1
            for _m in 2..=n {
                let mut next = vec![0usize; max + 1];
                for v in 1..=n {
                    for k in 1..v {
                        next[v] += layer[v - k] * t[k];
                    }
                }
                total += next[n];
                layer = next;
            }
            t[n] = total;
        }
        t
    }

    fn count_binary_by_recurrence(max: usize) -> Vec<usize> {
        let mut c = vec![0usize; max + 1];
        c[1] = 1;
        for n in 2..=max {
            let mut total = 0;
            for k in 1..n {
                total += c[k] * c[n - k];
            }
            c[n] = total;
        }
        c
    }

    #[test]
    fn tree_structure_invariants() {
        for n in 1..=6 {
            for t in enumerate_trees(n, 2).iter() {
                assert_eq!(t.leaf_labels(), (1..=n).collect::<Vec<_>>());
                assert!(t.min_children().is_none_or(|m| m >= 2));
            }
        }
        let unit = &enumerate_trees(1, 2)[0];
        assert_eq!(unit.internal_count(), 0);
    }

    #[test]
    fn children_tuples() {
        // root(leaf1, leaf2)
        let t2 = PlaneTree::Internal(vec![PlaneTree::Leaf(1), PlaneTree::Leaf(2)]);
        let ab = Tuple::of(&[&[1, 0], &[0, 1]]);
        assert_eq!(t2.children_tuple(0, &ab), ab);
        // root(node(1,2), leaf3)
        let t3 = PlaneTree::Internal(vec![
            PlaneTree::Internal(vec![PlaneTree::Leaf(1), PlaneTree::Leaf(2)]),
            PlaneTree::Leaf(3),
        ]);
        let abc = Tuple::of(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(t3.children_tuple(0, &abc), Tuple::of(&[&[1, 1], &[1, 1]]));
        assert_eq!(t3.children_tuple(1, &abc), Tuple::of(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn tree_eval_values() {
        let unit = &enumerate_trees(1, 2)[0];
        assert_eq!(tree_eval(&log(), unit, &Tuple::of(&[&[5]])), rat_int(1));
        let t2 = PlaneTree::Internal(vec![PlaneTree::Leaf(1), PlaneTree::Leaf(2)]);
        assert_eq!(tree_eval(&log(), &t2, &Tuple::of(&[&[1], &[2]])), rat(-1, 2));
        let t3 = PlaneTree::Internal(vec![
            PlaneTree::Internal(vec![PlaneTree::Leaf(1), PlaneTree::Leaf(2)]),
            PlaneTree::Leaf(3),
        ]);
        // two log factors: (-1/2)^2
        assert_eq!(tree_eval(&log(), &t3, &Tuple::of(&[&[1], &[1], &[1]])), rat(1, 4));
    }

    #[test]
    fn free_construction_basics() {
        let f = pseudorandom_ge2(3);
        let tf = free_construction(&f).unwrap();
        // 1 on singletons
        assert_eq!(tf.eval(&Tuple::of(&[&[2, 1]])), rat_int(1));
        // n = 2: the single non-unit tree
        let pair = Tuple::of(&[&[1, 0], &[0, 1]]);
        assert_eq!(tf.eval(&pair), f.eval(&pair));
        // n = 3: three trees
        let triple = Tuple::of(&[&[1, 0], &[0, 1], &[1, 1]]);
        let direct = f.eval(&triple)
            + f.eval(&Tuple::of(&[&[1, 1], &[1, 1]])) * f.eval(&Tuple::of(&[&[1, 0], &[0, 1]]))
            + f.eval(&Tuple::of(&[&[1, 0], &[1, 2]])) * f.eval(&Tuple::of(&[&[0, 1], &[1, 1]]));
        assert_eq!(tf.eval(&triple), direct);
        // not supported in cardinality >= 2
        assert_eq!(free_construction(&exp()), Err(TreesError::NotSupportedGe2));
    }

    #[test]
    fn interval_recursion_matches_flat_enumeration() {
        let z = CentralCharge::from_theta_ints(&[2, -1]);
        let f = Collection::identity().sub(&hn(z));
        let tf = free_construction(&f).unwrap();
        let mut checked = 0usize;
        for_each_tuple(2, 1, 7, |view| {
            if view.len() >= 6 {
                let rule = FreeConstructionRule {
                    f: f.clone(),
                    memo: crate::collections::Memo::new(),
                };
                assert_eq!(rule.eval_flat(view), rule.eval_intervals(view));
                checked += 1;
            } else {
                let _ = tf.eval_view(view);
            }
            checked < 600
        });
        assert!(checked >= 500);
    }

    #[test]
    fn fixed_point_law() {
        // 𝕋F = 1 + F∘𝕋F on a grid
        let f = pseudorandom_ge2(11);
        let tf = free_construction(&f).unwrap();
        let rhs = Collection::identity().add(&f.compose(&tf));
        assert!(equal_on_grid(&tf, &rhs, Grid::new(2, 2, 5)));
    }

    #[test]
    fn plethystic_inverse_of_identity() {
        let inv = plethystic_inverse(&Collection::identity()).unwrap();
        assert!(equal_on_grid(&inv, &Collection::identity(), Grid::new(2, 2, 4)));
    }

    #[test]
    fn plethystic_inverse_matches_hn_closed_form() {
        let z = CentralCharge::from_theta_ints(&[1, 0]);
        let inv = plethystic_inverse(&hn(z.clone())).unwrap();
        assert!(equal_on_grid(&inv, &hn_inverse(z), Grid::new(2, 2, 5)));
    }

    #[test]
    fn plethystic_inverse_of_exp_is_log_rank1() {
        let inv = plethystic_inverse(&exp()).unwrap();
        assert!(equal_on_grid(&inv, &log(), Grid::new(1, 2, 6)));
        assert_eq!(plethystic_inverse(&log()), Err(TreesError::NotUnital));
    }
}
