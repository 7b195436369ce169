//! Graded 1-collections in the quantum affine plane and the star action.
//!
//! A [`OneCollection`] assigns to each `γ ∈ S` the coefficient `c(γ)` of
//! `x^γ`, where the grading multiplies by `x^γ · x^γ' = (-y)^⟨γ,γ'⟩ x^(γ+γ')`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::Collection;
use crate::exact::{RatFunc, Rational};
use crate::semigroup::{decompositions, DimVector, Tuple};
use crate::stability::SkewForm;

/// Evaluation rule of a 1-collection.
pub trait OneRule: Send + Sync {
    fn coeff(&self, gamma: &DimVector) -> RatFunc;
}

impl<F> OneRule for F
where
    F: Fn(&DimVector) -> RatFunc + Send + Sync,
{
    fn coeff(&self, gamma: &DimVector) -> RatFunc {
        self(gamma)
    }
}

/// A graded 1-collection `γ ↦ c(γ)` with its multiplication context
/// (rank and skew form).  Values are memoized per `γ`; clones share the cache.
#[derive(Clone)]
pub struct OneCollection {
    rank: usize,
    skew: SkewForm,
    rule: Arc<dyn OneRule>,
    memo: Arc<Mutex<HashMap<DimVector, RatFunc>>>,
}

impl OneCollection {
    pub fn new(skew: SkewForm, rule: impl OneRule + 'static) -> Self {
        OneCollection {
            rank: skew.rank(),
            skew,
            rule: Arc::new(rule),
            memo: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn from_fn(
        skew: SkewForm,
        f: impl Fn(&DimVector) -> RatFunc + Send + Sync + 'static,
    ) -> Self {
        OneCollection::new(skew, f)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn skew(&self) -> &SkewForm {
        &self.skew
    }

    /// The coefficient of `x^γ`.
    pub fn coeff(&self, gamma: &DimVector) -> RatFunc {
        assert_eq!(gamma.rank(), self.rank, "dimension vector rank mismatch");
        if let Some(v) = self.memo.lock().unwrap().get(gamma) {
            return v.clone();
        }
        let v = self.rule.coeff(gamma);
        self.memo.lock().unwrap().insert(gamma.clone(), v.clone());
        v
    }
}

/// The twist exponent of the ordered product `x^{α_1} ⋯ x^{α_n}`, namely
/// `Σ_{i<j} ⟨α_i, α_j⟩`.
pub fn twist_exponent(skew: &SkewForm, alpha: &Tuple) -> i64 {
    let view = alpha.view();
    let n = view.len();
    let mut acc = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            acc += skew.pair_entries(view.part_entries(i), view.part_entries(j));
        }
    }
    acc
}

/// The star action `(F * H)(γ) = Σ_{|α| = γ} F(α) · H(α_1) ⋯ H(α_n)`, the
/// ordered product taken in the quantum affine plane.
pub fn star(f: &Collection, h: &OneCollection) -> OneCollection {
    let f = f.clone();
    let h_inner = h.clone();
    let skew = h.skew.clone();
    let skew_rule = skew.clone();
    OneCollection::new(skew, move |gamma: &DimVector| {
        let mut acc = RatFunc::zero();
        for alpha in decompositions(gamma, 1, None).expect("gamma must be in S") {
            let weight = f.eval(&alpha);
            if weight.is_zero() {
                continue;
            }
            let mut term = RatFunc::neg_y_power(twist_exponent(&skew_rule, &alpha));
            for i in 0..alpha.len() {
                let c = h_inner.coeff(&alpha.part(i));
                if c.is_zero() {
                    term = RatFunc::zero();
                    break;
                }
                term *= &c;
            }
            if term.is_zero() {
                continue;
            }
            acc += &term.scale(&weight);
        }
        acc
    })
}

/// The bar map `F̄(γ) = Σ_{|α| = γ} F(α)`.
pub fn bar_eval(f: &Collection, gamma: &DimVector) -> Rational {
    let mut acc = Rational::zero();
    for alpha in decompositions(gamma, 1, None).expect("gamma must be in S") {
        acc += f.eval(&alpha);
    }
    acc
}

/// First γ of total degree `<= bound` where two 1-collections differ.
pub fn first_one_mismatch(
    a: &OneCollection,
    b: &OneCollection,
    bound: u32,
) -> Option<(DimVector, RatFunc, RatFunc)> {
    for gamma in crate::semigroup::vectors_of_degree_at_most(a.rank(), bound) {
        let ca = a.coeff(&gamma);
        let cb = b.coeff(&gamma);
        if ca != cb {
            return Some((gamma, ca, cb));
        }
    }
    None
}
