//! The named collection family: Harder-Narasimhan collections and their
//! inverses, transition collections, the exponential/logarithmic family,
//! geometric collections, and the attractor collections.
//!
//! Every variant is a struct implementing [`Rule`], so the calculus treats
//! them interchangeably behind `Collection`.  The evaluators are exact closed
//! forms over partial-sum or consecutive slope comparisons; no divisions are
//! performed when comparing slopes.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{Collection, Rule};
use crate::exact::{factorial, rat_int, rat_pow, Rational};
use crate::semigroup::TupleView;
use crate::stability::{CentralCharge, SkewForm};

/// Comparison of the slope of part `i` with part `i+1`.
fn consecutive_ordering(z: &CentralCharge, alpha: TupleView<'_>, i: usize) -> Ordering {
    z.slope_compare_entries(alpha.part_entries(i), alpha.part_entries(i + 1))
}

/// Orderings of `μ(α_{<=k})` vs `μ(α_{>k})` for `k = 1..n-1`.
///
/// Uses the identity `sign(μ(p) - μ(γ - p)) = sign(θ(p)ρ(γ) - θ(γ)ρ(p))`,
/// so each step costs two multiplications on scaled integer pairs.
fn partial_sum_orderings<'a>(
    z: &'a CentralCharge,
    alpha: TupleView<'a>,
) -> impl Iterator<Item = Ordering> + 'a {
    let n = alpha.len();
    let mut total = (0i64, 0i64);
    for i in 0..n {
        let p = z.scaled_pair(alpha.part_entries(i));
        total.0 += p.0;
        total.1 += p.1;
    }
    let mut prefix = (0i64, 0i64);
    (0..n - 1).map(move |k| {
        let p = z.scaled_pair(alpha.part_entries(k));
        prefix.0 += p.0;
        prefix.1 += p.1;
        (prefix.0 as i128 * total.1 as i128).cmp(&(total.0 as i128 * prefix.1 as i128))
    })
}

/// Signs of `⟨α_{<=k}, α_{>k}⟩` for `k = 1..n-1`; by antisymmetry this is
/// `⟨α_{<=k}, γ⟩`, a running sum of per-part pairings with the total.
fn partial_sum_pair_signs<'a>(
    b: &'a SkewForm,
    alpha: TupleView<'a>,
) -> impl Iterator<Item = Ordering> + 'a {
    let n = alpha.len();
    let gamma = alpha.sum();
    let mut acc = 0i64;
    (0..n - 1).map(move |k| {
        acc += b.pair_entries(alpha.part_entries(k), gamma.entries());
        acc.cmp(&0)
    })
}

/// The Harder-Narasimhan collection: 1 on strictly slope-decreasing tuples.
struct HnRule {
    z: CentralCharge,
}

impl Rule for HnRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        for i in 0..alpha.len() - 1 {
            if consecutive_ordering(&self.z, alpha, i) != Ordering::Greater {
                return Rational::zero();
            }
        }
        Rational::one()
    }
}

pub fn hn(z: CentralCharge) -> Collection {
    let rank = z.rank();
    Collection::from_rule(Some(rank), HnRule { z })
}

/// Plethystic inverse of the HN collection in closed form:
/// `(-1)^(n-1)` iff every proper partial sum has strictly larger slope than
/// its complement.
struct HnInverseRule {
    z: CentralCharge,
}

impl Rule for HnInverseRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        for ord in partial_sum_orderings(&self.z, alpha) {
            if ord != Ordering::Greater {
                return Rational::zero();
            }
        }
        rat_int(if alpha.len() % 2 == 1 { 1 } else { -1 })
    }
}

pub fn hn_inverse(z: CentralCharge) -> Collection {
    let rank = z.rank();
    Collection::from_rule(Some(rank), HnInverseRule { z })
}

/// The transition collection between two stabilities, as a product of local
/// signs: `ε_k = -1` when `α_k <= α_{k+1}` in the source but the partial sum
/// dominates in the target, `+1` in the swapped situation, else `0`.
struct TransitionRule {
    from: CentralCharge,
    to: CentralCharge,
}

impl Rule for TransitionRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        let mut sign = 1i64;
        for (k, target_ord) in partial_sum_orderings(&self.to, alpha).enumerate() {
            let source_desc = consecutive_ordering(&self.from, alpha, k) == Ordering::Greater;
            let target_desc = target_ord == Ordering::Greater;
            match (source_desc, target_desc) {
                (false, true) => sign = -sign,
                (true, false) => {}
                _ => return Rational::zero(),
            }
        }
        rat_int(sign)
    }
}

pub fn transition(from: CentralCharge, to: CentralCharge) -> Collection {
    assert_eq!(from.rank(), to.rank());
    let rank = from.rank();
    Collection::from_rule(Some(rank), TransitionRule { from, to })
}

#[derive(Clone, Copy)]
enum ExpLogWeight {
    Exp,
    Log,
}

enum ExpLogGate {
    All,
    Proportional,
    SlopeEqual(CentralCharge),
}

/// The exponential/logarithmic family: `1/n!` or `(-1)^(n-1)/n`, optionally
/// gated to tuples with pairwise proportional or slope-equivalent parts.
struct ExpLogRule {
    weight: ExpLogWeight,
    gate: ExpLogGate,
}

impl Rule for ExpLogRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        let n = alpha.len();
        let pass = match &self.gate {
            ExpLogGate::All => true,
            // proportionality and slope equality are transitive, so checking
            // consecutive parts suffices
            ExpLogGate::Proportional => (0..n - 1).all(|i| {
                crate::semigroup::proportional(&alpha.part(i), &alpha.part(i + 1))
            }),
            ExpLogGate::SlopeEqual(z) => {
                (0..n - 1).all(|i| consecutive_ordering(z, alpha, i) == Ordering::Equal)
            }
        };
        if !pass {
            return Rational::zero();
        }
        match self.weight {
            ExpLogWeight::Exp => factorial(n).recip(),
            ExpLogWeight::Log => {
                let sign = if n % 2 == 1 { 1 } else { -1 };
                crate::exact::rat(sign, n as i64)
            }
        }
    }
}

pub fn exp() -> Collection {
    Collection::from_rule(None, ExpLogRule { weight: ExpLogWeight::Exp, gate: ExpLogGate::All })
}

pub fn log() -> Collection {
    Collection::from_rule(None, ExpLogRule { weight: ExpLogWeight::Log, gate: ExpLogGate::All })
}

pub fn exp_par() -> Collection {
    Collection::from_rule(
        None,
        ExpLogRule { weight: ExpLogWeight::Exp, gate: ExpLogGate::Proportional },
    )
}

pub fn log_par() -> Collection {
    Collection::from_rule(
        None,
        ExpLogRule { weight: ExpLogWeight::Log, gate: ExpLogGate::Proportional },
    )
}

pub fn exp_theta(z: CentralCharge) -> Collection {
    let rank = z.rank();
    Collection::from_rule(
        Some(rank),
        ExpLogRule { weight: ExpLogWeight::Exp, gate: ExpLogGate::SlopeEqual(z) },
    )
}

pub fn log_theta(z: CentralCharge) -> Collection {
    let rank = z.rank();
    Collection::from_rule(
        Some(rank),
        ExpLogRule { weight: ExpLogWeight::Log, gate: ExpLogGate::SlopeEqual(z) },
    )
}

/// The geometric collection `t^(n-1)`.
struct GeometricRule {
    t: Rational,
}

impl Rule for GeometricRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        rat_pow(&self.t, alpha.len() as i64 - 1)
    }
}

pub fn geometric(t: Rational) -> Collection {
    Collection::from_rule(None, GeometricRule { t })
}

/// Closed form of `log_θ ∘ s_θ^{-1}`: `(-1)^(n-1)/(n_0+1)` when every partial
/// sum weakly dominates its complement, where `n_0` counts the equalities.
struct GThetaRule {
    z: CentralCharge,
}

impl Rule for GThetaRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        let mut n0 = 0i64;
        for ord in partial_sum_orderings(&self.z, alpha) {
            match ord {
                Ordering::Less => return Rational::zero(),
                Ordering::Equal => n0 += 1,
                Ordering::Greater => {}
            }
        }
        let sign = if alpha.len() % 2 == 1 { 1 } else { -1 };
        crate::exact::rat(sign, n0 + 1)
    }
}

pub fn g_theta(z: CentralCharge) -> Collection {
    let rank = z.rank();
    Collection::from_rule(Some(rank), GThetaRule { z })
}

/// Closed form of `s_θ ∘ exp_θ`: nonzero iff consecutive slopes never
/// ascend, with value `∏ 1/(run length)!` over the maximal slope-equal runs.
struct GThetaInvRule {
    z: CentralCharge,
}

impl Rule for GThetaInvRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        let n = alpha.len();
        let mut acc = Rational::one();
        let mut run_start = 0usize;
        for k in 1..n {
            match consecutive_ordering(&self.z, alpha, k - 1) {
                Ordering::Less => return Rational::zero(),
                Ordering::Greater => {
                    acc *= factorial(k - run_start).recip();
                    run_start = k;
                }
                Ordering::Equal => {}
            }
        }
        acc * factorial(n - run_start).recip()
    }
}

pub fn g_theta_inv(z: CentralCharge) -> Collection {
    let rank = z.rank();
    Collection::from_rule(Some(rank), GThetaInvRule { z })
}

/// Closed form of `s_θ^{-1} ∘ σ_t`: `t^(n-1-n_+) (t-1)^(n_+)` with `n_+`
/// counting strictly dominating partial sums.
struct HnInvGeometricRule {
    z: CentralCharge,
    t: Rational,
}

impl Rule for HnInvGeometricRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        let n = alpha.len() as i64;
        let mut n_plus = 0i64;
        for ord in partial_sum_orderings(&self.z, alpha) {
            if ord == Ordering::Greater {
                n_plus += 1;
            }
        }
        let t_minus_1 = &self.t - &Rational::one();
        &rat_pow(&self.t, n - 1 - n_plus) * &rat_pow(&t_minus_1, n_plus)
    }
}

pub fn hn_inv_geometric(z: CentralCharge, t: Rational) -> Collection {
    let rank = z.rank();
    Collection::from_rule(Some(rank), HnInvGeometricRule { z, t })
}

fn geometric_family_value(counts: (i64, i64, i64), t: &Rational) -> Rational {
    let (n_plus, n_minus, n_zero) = counts;
    let t_minus_1 = t - &Rational::one();
    let head = &rat_pow(t, n_minus) * &rat_pow(&t_minus_1, n_plus);
    let tail = &rat_pow(t, n_zero + 1) - &rat_pow(&t_minus_1, n_zero + 1);
    &head * &(&tail * &crate::exact::rat(1, n_zero + 1))
}

fn count_orderings(orderings: impl Iterator<Item = Ordering>) -> (i64, i64, i64) {
    let mut counts = (0i64, 0i64, 0i64);
    for ord in orderings {
        match ord {
            Ordering::Greater => counts.0 += 1,
            Ordering::Less => counts.1 += 1,
            Ordering::Equal => counts.2 += 1,
        }
    }
    counts
}

/// Closed form of `g_θ ∘ σ_t`:
/// `t^(n_-) (t-1)^(n_+) (t^(n_0+1) - (t-1)^(n_0+1)) / (n_0+1)` with the
/// counts taken over partial-sum slope comparisons.
struct GThetaTRule {
    z: CentralCharge,
    t: Rational,
}

impl Rule for GThetaTRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        geometric_family_value(
            count_orderings(partial_sum_orderings(&self.z, alpha)),
            &self.t,
        )
    }
}

pub fn g_theta_t(z: CentralCharge, t: Rational) -> Collection {
    let rank = z.rank();
    Collection::from_rule(Some(rank), GThetaTRule { z, t })
}

/// The attractor collection: like `g_θ` but comparisons are replaced by the
/// sign of `⟨α_{<=k}, α_{>k}⟩`.
struct GStarRule {
    b: SkewForm,
}

impl Rule for GStarRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        let mut n0 = 0i64;
        for sign in partial_sum_pair_signs(&self.b, alpha) {
            match sign {
                Ordering::Less => return Rational::zero(),
                Ordering::Equal => n0 += 1,
                Ordering::Greater => {}
            }
        }
        let sign = if alpha.len() % 2 == 1 { 1 } else { -1 };
        crate::exact::rat(sign, n0 + 1)
    }
}

pub fn g_star(b: SkewForm) -> Collection {
    let rank = b.rank();
    Collection::from_rule(Some(rank), GStarRule { b })
}

/// The geometric attractor collection, with counts from pairing signs.
struct GStarTRule {
    b: SkewForm,
    t: Rational,
}

impl Rule for GStarTRule {
    fn eval(&self, alpha: TupleView<'_>) -> Rational {
        geometric_family_value(
            count_orderings(partial_sum_pair_signs(&self.b, alpha)),
            &self.t,
        )
    }
}

pub fn g_star_t(b: SkewForm, t: Rational) -> Collection {
    let rank = b.rank();
    Collection::from_rule(Some(rank), GStarTRule { b, t })
}

/// A deterministic pseudorandom rational-valued collection supported in
/// cardinality >= 2, for stress-testing the calculus with a fixed seed.
pub fn pseudorandom_ge2(seed: u64) -> Collection {
    Collection::from_fn(None, move |alpha| {
        if alpha.len() == 1 {
            return Rational::zero();
        }
        // FNV-1a over the seed, rank and flattened entries
        let mut h: u64 = 0xcbf29ce484222325 ^ seed.wrapping_mul(0x100000001b3);
        let mut feed = |v: u64| {
            h ^= v;
            h = h.wrapping_mul(0x100000001b3);
        };
        feed(alpha.rank() as u64);
        for &e in alpha.flat() {
            feed(e as u64 + 1);
        }
        let num = (h % 19) as i64 - 9;
        let den = ((h >> 32) % 4) as i64 + 1;
        crate::exact::rat(num, den)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::semigroup::Tuple;

    fn t(parts: &[&[u32]]) -> Tuple {
        Tuple::of(parts)
    }

    fn charge(theta: &[i64]) -> CentralCharge {
        CentralCharge::from_theta_ints(theta)
    }

    fn k1_skew() -> SkewForm {
        SkewForm::new(vec![vec![0, -1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn hn_values() {
        let s = hn(charge(&[1, 0]));
        assert_eq!(s.eval(&t(&[&[1, 0], &[0, 1]])), rat_int(1));
        assert_eq!(s.eval(&t(&[&[0, 1], &[1, 0]])), rat_int(0));
        assert_eq!(s.eval(&t(&[&[2, 3]])), rat_int(1));
    }

    #[test]
    fn hn_inverse_values() {
        let r = hn_inverse(charge(&[1, 0]));
        assert_eq!(r.eval(&t(&[&[1, 1]])), rat_int(1));
        assert_eq!(r.eval(&t(&[&[1, 0], &[0, 1]])), rat_int(-1));
        assert_eq!(r.eval(&t(&[&[0, 1], &[1, 0]])), rat_int(0));
    }

    #[test]
    fn transition_values() {
        let s = transition(charge(&[0, 1]), charge(&[1, 0]));
        assert_eq!(s.eval(&t(&[&[1, 0], &[0, 1]])), rat_int(-1));
        assert_eq!(s.eval(&t(&[&[1, 1]])), rat_int(1));
        // equal charges: the transition acts like the identity here
        let id_like = transition(charge(&[1, 0]), charge(&[1, 0]));
        assert_eq!(id_like.eval(&t(&[&[1, 0], &[0, 1]])), rat_int(0));
    }

    #[test]
    fn exp_log_values() {
        assert_eq!(exp().eval(&t(&[&[1], &[2], &[1]])), rat(1, 6));
        assert_eq!(log().eval(&t(&[&[1], &[2]])), rat(-1, 2));
        assert_eq!(exp_par().eval(&t(&[&[1, 0], &[0, 1]])), rat_int(0));
        assert_eq!(exp_par().eval(&t(&[&[1, 1], &[2, 2]])), rat(1, 2));
        let et = exp_theta(charge(&[1, 0]));
        assert_eq!(et.eval(&t(&[&[1, 1], &[2, 2]])), rat(1, 2));
        assert_eq!(et.eval(&t(&[&[1, 0], &[0, 1]])), rat_int(0));
    }

    #[test]
    fn geometric_values() {
        assert_eq!(geometric(rat_int(0)).eval(&t(&[&[1, 1]])), rat_int(1));
        assert_eq!(geometric(rat_int(0)).eval(&t(&[&[1, 0], &[0, 1]])), rat_int(0));
        assert_eq!(geometric(rat_int(2)).eval(&t(&[&[1], &[1], &[1]])), rat_int(4));
        assert_eq!(geometric(rat_int(1)).eval(&t(&[&[1], &[1], &[1], &[2]])), rat_int(1));
    }

    #[test]
    fn g_theta_values() {
        let g = g_theta(charge(&[1, 0]));
        assert_eq!(g.eval(&t(&[&[1, 1]])), rat_int(1));
        assert_eq!(g.eval(&t(&[&[1, 0], &[0, 1]])), rat_int(-1));
        assert_eq!(g.eval(&t(&[&[1, 1], &[1, 1]])), rat(-1, 2));
        assert_eq!(g.eval(&t(&[&[0, 1], &[1, 0]])), rat_int(0));
    }

    #[test]
    fn g_theta_inv_values() {
        let g = g_theta_inv(charge(&[1, 0]));
        assert_eq!(g.eval(&t(&[&[1, 1], &[1, 1]])), rat(1, 2));
        assert_eq!(g.eval(&t(&[&[1, 0], &[0, 1]])), rat_int(1));
        assert_eq!(g.eval(&t(&[&[0, 1], &[1, 0]])), rat_int(0));
    }

    #[test]
    fn hn_inv_geometric_values() {
        let z = charge(&[1, 0]);
        assert_eq!(hn_inv_geometric(z.clone(), rat_int(3)).eval(&t(&[&[1, 1]])), rat_int(1));
        // n = 2 with a strict partial-sum descent: 3^0 * 2^1
        assert_eq!(
            hn_inv_geometric(z.clone(), rat_int(3)).eval(&t(&[&[1, 0], &[0, 1]])),
            rat_int(2)
        );
        // n = 2 without: 3^1 * 2^0
        assert_eq!(
            hn_inv_geometric(z, rat_int(3)).eval(&t(&[&[0, 1], &[1, 0]])),
            rat_int(3)
        );
    }

    #[test]
    fn g_theta_t_special_values() {
        let z = charge(&[1, 0]);
        // t = 1/2, n = 2, n_+ = 1: -1/2
        assert_eq!(
            g_theta_t(z.clone(), rat(1, 2)).eval(&t(&[&[1, 0], &[0, 1]])),
            rat(-1, 2)
        );
        // t = 1 and n_+ = 0: 1/(n_0+1)
        assert_eq!(
            g_theta_t(z.clone(), rat_int(1)).eval(&t(&[&[1, 1], &[1, 1]])),
            rat(1, 2)
        );
        // t = 0 reduces to g_theta
        let grid = super::super::Grid::new(2, 2, 4);
        assert!(super::super::equal_on_grid(
            &g_theta_t(z.clone(), rat_int(0)),
            &g_theta(z),
            grid
        ));
    }

    #[test]
    fn g_star_values() {
        let g = g_star(k1_skew());
        assert_eq!(g.eval(&t(&[&[0, 1], &[1, 0]])), rat_int(-1));
        assert_eq!(g.eval(&t(&[&[1, 0], &[0, 1]])), rat_int(0));
        assert_eq!(g.eval(&t(&[&[2, 3]])), rat_int(1));
    }

    #[test]
    fn pseudorandom_is_deterministic_and_ge2() {
        let f = pseudorandom_ge2(7);
        let g = pseudorandom_ge2(7);
        let sample = t(&[&[1, 0], &[0, 1]]);
        assert_eq!(f.eval(&sample), g.eval(&sample));
        assert_eq!(f.eval(&t(&[&[2, 2]])), rat_int(0));
        assert_ne!(pseudorandom_ge2(8).eval(&sample), rat_int(99));
    }
}
