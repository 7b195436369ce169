//! Central charges, exact slope comparison, skew-symmetric pairings, and
//! formal-infinitesimal perturbed scalars.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::Rational;
use crate::semigroup::{proportional, vectors_of_degree_at_most, DimVector};

/// Errors from stability data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    /// Every `rho` entry must be strictly positive.
    #[error("rho must be strictly positive")]
    InvalidRho,
    /// Vector length does not match the rank of the charge or form.
    #[error("rank mismatch: expected {0}, got {1}")]
    RankMismatch(usize, usize),
    /// A strict-sign query was made on an identically zero perturbed scalar.
    #[error("non-generic comparison: the perturbed scalar difference is identically zero")]
    NonGeneric,
    /// A skew form matrix failed the antisymmetry check.
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    /// Malformed textual input.
    #[error("bad stability data `{0}`")]
    Parse(String),
}

/// A central charge `Z = -θ + iρ` with `ρ > 0`, inducing the weak stability
/// by slopes `μ(a) = θ(a)/ρ(a)`.
///
/// Slopes never get divided: comparisons go through the integer cross
/// products `θ(a)ρ(b)` vs `θ(b)ρ(a)`, valid since `ρ(a), ρ(b) > 0`.  For that
/// purpose θ and ρ are also kept rescaled to integer vectors (a positive
/// rescaling does not change any comparison).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharge {
    theta: Vec<Rational>,
    rho: Vec<Rational>,
    theta_scaled: Vec<i64>,
    rho_scaled: Vec<i64>,
}

fn scale_to_integers(v: &[Rational]) -> Vec<i64> {
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    v.iter()
        .map(|c| {
            let scaled = c.numer() * (&lcm / c.denom());
            i64::try_from(&scaled).expect("stability data out of range")
        })
        .collect()
}

impl CentralCharge {
    pub fn new(theta: Vec<Rational>, rho: Vec<Rational>) -> Result<Self, StabilityError> {
        if theta.len() != rho.len() {
            return Err(StabilityError::RankMismatch(theta.len(), rho.len()));
        }
        if rho.iter().any(|r| !r.is_positive()) {
            return Err(StabilityError::InvalidRho);
        }
        let theta_scaled = scale_to_integers(&theta);
        let rho_scaled = scale_to_integers(&rho);
        Ok(CentralCharge { theta, rho, theta_scaled, rho_scaled })
    }

    /// Charge with the given θ and `ρ = (1, …, 1)`.
    pub fn from_theta(theta: Vec<Rational>) -> Self {
        let rho = vec![Rational::one(); theta.len()];
        CentralCharge::new(theta, rho).unwrap()
    }

    /// Integer θ shorthand, `ρ = (1, …, 1)`.
    pub fn from_theta_ints(theta: &[i64]) -> Self {
        CentralCharge::from_theta(theta.iter().map(|&t| crate::exact::rat_int(t)).collect())
    }

    pub fn rank(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[Rational] {
        &self.theta
    }

    pub fn rho(&self) -> &[Rational] {
        &self.rho
    }

    /// Scaled integer pair `(θ(a), ρ(a))`, usable for exact slope bucketing.
    pub fn scaled_pair(&self, entries: &[u32]) -> (i64, i64) {
        debug_assert_eq!(entries.len(), self.rank());
        let mut t = 0i64;
        let mut r = 0i64;
        for (i, &e) in entries.iter().enumerate() {
            t += self.theta_scaled[i] * e as i64;
            r += self.rho_scaled[i] * e as i64;
        }
        (t, r)
    }

    /// Exact slope comparison `μ(a)` vs `μ(b)` by integer cross products.
    pub fn slope_compare_entries(&self, a: &[u32], b: &[u32]) -> Ordering {
        let (ta, ra) = self.scaled_pair(a);
        let (tb, rb) = self.scaled_pair(b);
        (ta as i128 * rb as i128).cmp(&(tb as i128 * ra as i128))
    }

    pub fn slope_compare(&self, a: &DimVector, b: &DimVector) -> Ordering {
        self.slope_compare_entries(a.entries(), b.entries())
    }

    /// Comparison from precomputed scaled pairs.
    pub fn compare_pairs(a: (i64, i64), b: (i64, i64)) -> Ordering {
        (a.0 as i128 * b.1 as i128).cmp(&(b.0 as i128 * a.1 as i128))
    }

    /// `θ(γ)` as an exact rational.
    pub fn theta_value(&self, gamma: &DimVector) -> Rational {
        self.theta
            .iter()
            .zip(gamma.entries())
            .map(|(t, &e)| t * Rational::from_integer(BigInt::from(e)))
            .sum()
    }

    /// `ρ(γ)` as an exact rational (always positive on `S`).
    pub fn rho_value(&self, gamma: &DimVector) -> Rational {
        self.rho
            .iter()
            .zip(gamma.entries())
            .map(|(r, &e)| r * Rational::from_integer(BigInt::from(e)))
            .sum()
    }

    /// The slope `μ(γ) = θ(γ)/ρ(γ)`.
    pub fn slope(&self, gamma: &DimVector) -> Rational {
        self.theta_value(gamma) / self.rho_value(gamma)
    }
}

/// Scans all pairs of semigroup elements of total degree `<= bound`; returns
/// `Ok(())` when equal slopes only occur for proportional pairs, otherwise the
/// first witness pair in scan order.
pub fn is_generic(
    z: &CentralCharge,
    bound: u32,
) -> Result<(), (DimVector, DimVector)> {
    let vecs = vectors_of_degree_at_most(z.rank(), bound);
    for (i, a) in vecs.iter().enumerate() {
        for b in vecs.iter().skip(i + 1) {
            if z.slope_compare(a, b) == Ordering::Equal && !proportional(a, b) {
                return Err((a.clone(), b.clone()));
            }
        }
    }
    Ok(())
}

/// An antisymmetric integer pairing on `Z^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewForm {
    rank: usize,
    matrix: Vec<i64>,
}

impl SkewForm {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, StabilityError> {
        let rank = rows.len();
        if rows.iter().any(|r| r.len() != rank) {
            return Err(StabilityError::RankMismatch(rank, 0));
        }
        let matrix: Vec<i64> = rows.into_iter().flatten().collect();
        let form = SkewForm { rank, matrix };
        for i in 0..rank {
            for j in 0..rank {
                if form.entry(i, j) != -form.entry(j, i) {
                    return Err(StabilityError::NotAntisymmetric);
                }
            }
        }
        Ok(form)
    }

    pub fn zero(rank: usize) -> Self {
        SkewForm { rank, matrix: vec![0; rank * rank] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.rank + j]
    }

    /// `aᵀ B b`.
    pub fn pair_entries(&self, a: &[u32], b: &[u32]) -> i64 {
        debug_assert!(a.len() == self.rank && b.len() == self.rank);
        let mut acc = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let mut row = 0i64;
            for (j, &bj) in b.iter().enumerate() {
                row += self.entry(i, j) * bj as i64;
            }
            acc += ai as i64 * row;
        }
        acc
    }

    pub fn pair(&self, a: &DimVector, b: &DimVector) -> i64 {
        self.pair_entries(a.entries(), b.entries())
    }

    /// The self-stability of `γ`: `θ_k = ⟨e_k, γ⟩` with `ρ = (1, …, 1)`.
    pub fn self_stability(&self, gamma: &DimVector) -> CentralCharge {
        let theta: Vec<i64> = (0..self.rank)
            .map(|k| {
                gamma
                    .entries()
                    .iter()
                    .enumerate()
                    .map(|(j, &g)| self.entry(k, j) * g as i64)
                    .sum()
            })
            .collect();
        CentralCharge::from_theta_ints(&theta)
    }
}

impl FromStr for SkewForm {
    type Err = StabilityError;

    /// Parses `"0,-1;1,0"`: rows separated by `;`, entries by `,`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Result<Vec<Vec<i64>>, _> = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| e.trim().parse::<i64>())
                    .collect::<Result<Vec<i64>, _>>()
            })
            .collect();
        let rows = rows.map_err(|_| StabilityError::Parse(s.to_string()))?;
        SkewForm::new(rows)
    }
}

/// An affine form `c + Σ c_i ε_i` in the formal infinitesimals
/// `ε_1 ≫ ε_2 ≫ …`, compared lexicographically on `(c, c_1, …, c_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbedScalar {
    constant: Rational,
    eps: Vec<Rational>,
}

impl PerturbedScalar {
    pub fn new(constant: Rational, eps: Vec<Rational>) -> Self {
        PerturbedScalar { constant, eps }
    }

    pub fn zero(dim: usize) -> Self {
        PerturbedScalar { constant: Rational::zero(), eps: vec![Rational::zero(); dim] }
    }

    /// A pure constant with `dim` epsilon slots.
    pub fn constant(c: Rational, dim: usize) -> Self {
        PerturbedScalar { constant: c, eps: vec![Rational::zero(); dim] }
    }

    /// The infinitesimal `ε_i` (0-based slot).
    pub fn epsilon(i: usize, dim: usize) -> Self {
        let mut eps = vec![Rational::zero(); dim];
        eps[i] = Rational::one();
        PerturbedScalar { constant: Rational::zero(), eps }
    }

    pub fn dim(&self) -> usize {
        self.eps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.eps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &PerturbedScalar) -> PerturbedScalar {
        assert_eq!(self.dim(), other.dim(), "epsilon dimension mismatch");
        PerturbedScalar {
            constant: &self.constant + &other.constant,
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &PerturbedScalar) -> PerturbedScalar {
        assert_eq!(self.dim(), other.dim(), "epsilon dimension mismatch");
        PerturbedScalar {
            constant: &self.constant - &other.constant,
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PerturbedScalar {
        PerturbedScalar {
            constant: &self.constant * c,
            eps: self.eps.iter().map(|a| a * c).collect(),
        }
    }

    /// Lexicographic comparison on `(constant, eps_1, …, eps_n)`.
    pub fn compare(&self, other: &PerturbedScalar) -> Ordering {
        assert_eq!(self.dim(), other.dim(), "epsilon dimension mismatch");
        match self.constant.cmp(&other.constant) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.eps.iter().zip(&other.eps) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Strict comparison `self < other`; the query is `NonGeneric` when the
    /// two forms are identical (the difference is the identically-zero form).
    pub fn strict_lt(&self, other: &PerturbedScalar) -> Result<bool, StabilityError> {
        match self.compare(other) {
            Ordering::Equal => Err(StabilityError::NonGeneric),
            Ordering::Less => Ok(true),
            Ordering::Greater => Ok(false),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::semigroup::Tuple;

    fn dv(e: &[u32]) -> DimVector {
        DimVector::new(e.to_vec())
    }

    #[test]
    fn slope_comparisons() {
        let z = CentralCharge::from_theta_ints(&[1, 0]);
        assert_eq!(z.slope_compare(&dv(&[1, 0]), &dv(&[0, 1])), Ordering::Greater);
        assert_eq!(z.slope_compare(&dv(&[1, 1]), &dv(&[2, 2])), Ordering::Equal);
        let z2 = CentralCharge::from_theta_ints(&[0, 1]);
        assert_eq!(z2.slope_compare(&dv(&[1, 0]), &dv(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn rational_theta_and_rho() {
        let z = CentralCharge::new(vec![rat(1, 2), rat(-1, 3)], vec![rat(1, 5), rat_int(2)])
            .unwrap();
        // cross-check the scaled comparison against exact rational slopes
        let a = dv(&[1, 2]);
        let b = dv(&[3, 1]);
        let exact = z.slope(&a).cmp(&z.slope(&b));
        assert_eq!(z.slope_compare(&a, &b), exact);
        assert!(CentralCharge::new(vec![rat_int(1)], vec![rat_int(0)]).is_err());
    }

    #[test]
    fn multiples_have_equal_slope() {
        let z = CentralCharge::from_theta_ints(&[3, -1]);
        let a = dv(&[2, 1]);
        let mut na = a.clone();
        for _ in 1..5 {
            na = na.add(&a);
            assert_eq!(z.slope_compare(&a, &na), Ordering::Equal);
        }
    }

    #[test]
    fn weak_stability_axiom_on_a_grid() {
        // a <= a+b <= b or b <= a+b <= a
        let z = CentralCharge::from_theta_ints(&[2, -1]);
        let vecs = vectors_of_degree_at_most(2, 4);
        for a in &vecs {
            for b in &vecs {
                let s = a.add(b);
                let ab = z.slope_compare(a, b);
                let a_s = z.slope_compare(a, &s);
                let s_b = z.slope_compare(&s, b);
                if ab != Ordering::Greater {
                    assert!(a_s != Ordering::Greater && s_b != Ordering::Greater);
                } else {
                    assert!(a_s != Ordering::Less && s_b != Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn skew_pairings() {
        let b = SkewForm::new(vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(b.pair(&dv(&[1, 0]), &dv(&[0, 1])), -1);
        assert_eq!(b.pair(&dv(&[0, 1]), &dv(&[1, 0])), 1);
        assert_eq!(b.pair(&dv(&[1, 1]), &dv(&[2, 2])), 0);
        assert!(SkewForm::new(vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn self_stability_values() {
        let b = SkewForm::new(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let z = b.self_stability(&dv(&[1, 1]));
        assert_eq!(z.theta(), &[rat_int(-1), rat_int(1)]);
        let z1 = b.self_stability(&dv(&[1, 0]));
        assert_eq!(z1.theta(), &[rat_int(0), rat_int(1)]);
        let z2 = b.self_stability(&dv(&[2, 0]));
        assert_eq!(z2.theta(), &[rat_int(0), rat_int(2)]);
    }

    #[test]
    fn skew_parse() {
        let b: SkewForm = "0,-1;1,0".parse().unwrap();
        assert_eq!(b.entry(0, 1), -1);
        assert!("0,1;1,0".parse::<SkewForm>().is_err());
    }

    #[test]
    fn genericity_scan() {
        let z = CentralCharge::from_theta_ints(&[1, 0]);
        assert!(is_generic(&z, 4).is_ok());
        let z0 = CentralCharge::from_theta_ints(&[0, 0]);
        let (a, b) = is_generic(&z0, 2).unwrap_err();
        // all slopes are zero, so the first non-proportional pair witnesses
        assert!(!proportional(&a, &b));
        assert_eq!(z0.slope_compare(&a, &b), Ordering::Equal);
        let z3 = CentralCharge::from_theta_ints(&[1, -1]);
        assert!(is_generic(&z3, 3).is_ok());
    }

    #[test]
    fn perturbed_scalar_order() {
        let half = rat(1, 2);
        let a = PerturbedScalar::constant(half.clone(), 2)
            .add(&PerturbedScalar::epsilon(0, 2));
        let b = PerturbedScalar::constant(half, 2).add(&PerturbedScalar::epsilon(1, 2));
        assert_eq!(a.compare(&b), Ordering::Greater);
        let zero = PerturbedScalar::zero(2);
        let minus_eps2 = zero.sub(&PerturbedScalar::epsilon(1, 2));
        assert_eq!(zero.compare(&minus_eps2), Ordering::Greater);
        assert_eq!(
            zero.strict_lt(&PerturbedScalar::zero(2)),
            Err(StabilityError::NonGeneric)
        );
    }

    #[test]
    fn hn_style_partial_sum_comparisons() {
        // sanity for the incremental pattern used by the collection rules
        let z = CentralCharge::from_theta_ints(&[1, 0]);
        let t = Tuple::of(&[&[1, 0], &[0, 1]]);
        let total = t.sum();
        let head = t.part(0);
        let (th, rh) = z.scaled_pair(head.entries());
        let (tt, rt) = z.scaled_pair(total.entries());
        // tail pair by subtraction
        let tail = (tt - th, rt - rh);
        assert_eq!(CentralCharge::compare_pairs((th, rh), tail), Ordering::Greater);
    }
}
