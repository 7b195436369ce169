//! Collections: rational-valued functionals on tuples, composed by plethysm.
//!
//! A [`Collection`] wraps an evaluation rule (a [`Rule`] trait object), not a
//! stored table: the domain `S^*` is infinite, so named collections are
//! closed-form evaluators and only plethysm results are memoized.  Plethysm
//! enumerates cut sets (the `2^(n-1)` order-preserving surjections), matching
//! the block structure used by every closed form in [`named`].

mod named;
mod one;

pub use named::*;
pub use one::{bar_eval, star, OneCollection};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::exact::Rational;
use crate::semigroup::{for_each_tuple, Tuple, TupleView};

/// An evaluation rule for a collection; pure and thread-safe.
pub trait Rule: Send + Sync {
    fn eval(&self, alpha: TupleView<'_>) -> Rational;
}

impl<F> Rule for F
where
    F: Fn(TupleView<'_>) -> Rational + Send + Sync,
{
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        self(alpha)
    }
}

/// A rational-valued collection `F: S^* -> Q`.
#[derive(Clone)]
pub struct Collection {
    rule: Arc<dyn Rule>,
    rank: Option<usize>,
}

/// Memo caches stop inserting beyond this many entries; lookups still work,
/// so results are unchanged, only recomputed.
const MEMO_CAP: usize = 1 << 20;

pub(crate) struct Memo {
    map: Mutex<HashMap<Vec<u32>, Rational>>,
}

impl Memo {
    pub(crate) fn new() -> Self {
        Memo { map: Mutex::new(HashMap::new()) }
    }

    fn key(alpha: TupleView<'_>) -> Vec<u32> {
        // flattened entries prefixed by the rank, collision-free
        let mut key = Vec::with_capacity(alpha.flat().len() + 1);
        key.push(alpha.rank() as u32);
        key.extend_from_slice(alpha.flat());
        key
    }

    pub(crate) fn get(&self, alpha: TupleView<'_>) -> Option<Rational> {
        self.map.lock().unwrap().get(&Self::key(alpha)).cloned()
    }

    pub(crate) fn insert(&self, alpha: TupleView<'_>, value: Rational) {
        let mut map = self.map.lock().unwrap();
        if map.len() < MEMO_CAP {
            map.insert(Self::key(alpha), value);
        }
    }
}

fn unify_ranks(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => {
            assert_eq!(x, y, "combined collections have different ranks");
            Some(x)
        }
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl Collection {
    /// Wraps a rule; `rank` is `None` for rank-agnostic collections.
    pub fn from_rule(rank: Option<usize>, rule: impl Rule + 'static) -> Self {
        Collection { rule: Arc::new(rule), rank }
    }

    /// Wraps a plain closure.
    pub fn from_fn(
        rank: Option<usize>,
        f: impl Fn(TupleView<'_>) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Collection { rule: Arc::new(f), rank }
    }

    /// The identity collection: 1 on singletons, 0 otherwise.
    pub fn identity() -> Self {
        Collection::from_rule(None, IdentityRule)
    }

    /// Rank this collection is restricted to, if any.
    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    pub fn eval_view(&self, alpha: TupleView<'_>) -> Rational {
        if let Some(r) = self.rank {
            assert_eq!(alpha.rank(), r, "tuple rank does not match collection rank");
        }
        self.rule.eval(alpha)
    }

    pub fn eval(&self, alpha: &Tuple) -> Rational {
        self.eval_view(alpha.view())
    }

    /// Plethysm `self ∘ g`, memoized on the flattened tuple key.
    pub fn compose(&self, g: &Collection) -> Collection {
        let rank = unify_ranks(self.rank, g.rank);
        Collection::from_rule(
            rank,
            PlethysmRule { f: self.clone(), g: g.clone(), memo: Some(Memo::new()) },
        )
    }

    /// Plethysm without the memo cache; results are identical to
    /// [`Collection::compose`], used by cache-transparency tests and by
    /// sweeps too large to cache.
    pub fn compose_unmemoized(&self, g: &Collection) -> Collection {
        let rank = unify_ranks(self.rank, g.rank);
        Collection::from_rule(rank, PlethysmRule { f: self.clone(), g: g.clone(), memo: None })
    }

    /// Pointwise sum.
    pub fn add(&self, g: &Collection) -> Collection {
        let rank = unify_ranks(self.rank, g.rank);
        let (f, g) = (self.clone(), g.clone());
        Collection::from_fn(rank, move |a| f.eval_view(a) + g.eval_view(a))
    }

    /// Pointwise difference.
    pub fn sub(&self, g: &Collection) -> Collection {
        let rank = unify_ranks(self.rank, g.rank);
        let (f, g) = (self.clone(), g.clone());
        Collection::from_fn(rank, move |a| f.eval_view(a) - g.eval_view(a))
    }

    /// Pointwise scaling by a rational constant.
    pub fn scale(&self, c: Rational) -> Collection {
        let f = self.clone();
        Collection::from_fn(self.rank, move |a| &f.eval_view(a) * &c)
    }
}

/// The identity collection as a free function, for symmetry with the other
/// named constructors.
pub fn identity_collection() -> Collection {
    Collection::identity()
}

struct IdentityRule;

impl Rule for IdentityRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        if alpha.len() == 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    }
}

struct PlethysmRule {
    f: Collection,
    g: Collection,
    memo: Option<Memo>,
}

impl Rule for PlethysmRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        if let Some(memo) = &self.memo {
            if let Some(v) = memo.get(alpha) {
                return v;
            }
        }
        let value = self.eval_uncached(alpha);
        if let Some(memo) = &self.memo {
            memo.insert(alpha, value.clone());
        }
        value
    }
}

impl PlethysmRule {
    fn eval_uncached(&self, alpha: TupleView<'_>) -> Rational {
        let n = alpha.len();
        let rank = alpha.rank();
        assert!(n <= 63, "tuple too long for plethysm");
        let mut pushed: Vec<u32> = Vec::with_capacity(n * rank);
        let mut block_values: Vec<Rational> = Vec::with_capacity(n);
        let mut acc = Rational::zero();
        for mask in 0u64..(1u64 << (n - 1)) {
            // blocks are the consecutive runs delimited by the set bits
            block_values.clear();
            let mut lo = 0usize;
            let mut dead = false;
            for k in 1..=n {
                let cut_here = k == n || mask >> (k - 1) & 1 == 1;
                if cut_here {
                    let v = self.g.eval_view(alpha.slice(lo, k));
                    if v.is_zero() {
                        dead = true;
                        break;
                    }
                    block_values.push(v);
                    lo = k;
                }
            }
            if dead {
                continue;
            }
            pushed.clear();
            pushed.resize(block_values.len() * rank, 0);
            let mut lo = 0usize;
            let mut j = 0usize;
            for k in 1..=n {
                if k == n || mask >> (k - 1) & 1 == 1 {
                    alpha.sum_range_into(lo, k, &mut pushed[j * rank..(j + 1) * rank]);
                    lo = k;
                    j += 1;
                }
            }
            let fv = self.f.eval_view(TupleView::new(rank, &pushed));
            if fv.is_zero() {
                continue;
            }
            let mut term = fv;
            for v in &block_values {
                if !v.is_one() {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }
}

/// A grid of test tuples: all tuples with `1 <= n <= n_max` parts whose
/// entries are bounded by `max_entry`, at a fixed rank.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub rank: usize,
    pub max_entry: u32,
    pub n_max: usize,
}

impl Grid {
    pub fn new(rank: usize, max_entry: u32, n_max: usize) -> Self {
        Grid { rank, max_entry, n_max }
    }
}

/// First tuple where two collections disagree on the grid, if any.
pub fn first_mismatch_on_grid(
    f: &Collection,
    g: &Collection,
    grid: Grid,
) -> Option<(Tuple, Rational, Rational)> {
    let mut found = None;
    for_each_tuple(grid.rank, grid.max_entry, grid.n_max, |view| {
        let a = f.eval_view(view);
        let b = g.eval_view(view);
        if a != b {
            found = Some((view.to_tuple(), a, b));
            false
        } else {
            true
        }
    });
    found
}

/// Asserts extensional equality on a bounded grid.
pub fn equal_on_grid(f: &Collection, g: &Collection, grid: Grid) -> bool {
    first_mismatch_on_grid(f, g, grid).is_none()
}
