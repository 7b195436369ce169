//! Quivers, Euler and skew forms, virtual Poincaré polynomials, and the
//! stacky generating 1-collection.

use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use crate::collections::OneCollection;
use crate::exact::{rat_int, LaurentPoly, RatFunc};
use crate::semigroup::DimVector;
use crate::stability::SkewForm;

/// Errors from quiver input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("bad quiver file: {0}")]
    Parse(String),
    #[error("vertex index {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
}

/// A quiver: vertices `1..=r` and a multiset of arrows (loops and parallel
/// arrows permitted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        for &(s, t) in &arrows {
            if s == 0 || s > vertex_count {
                return Err(QuiverError::VertexOutOfRange(s, vertex_count));
            }
            if t == 0 || t > vertex_count {
                return Err(QuiverError::VertexOutOfRange(t, vertex_count));
            }
        }
        Ok(Quiver { vertex_count, arrows })
    }

    /// The generalized Kronecker quiver: `k` arrows `1 -> 2`.
    pub fn kronecker(k: usize) -> Self {
        Quiver { vertex_count: 2, arrows: vec![(1, 2); k] }
    }

    /// One vertex with `k` loops.
    pub fn loops(k: usize) -> Self {
        Quiver { vertex_count: 1, arrows: vec![(1, 1); k] }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// The Euler form matrix `M` with `χ(α,β) = αᵀMβ`:
    /// `χ(α,β) = Σ_i α_iβ_i - Σ_{a:i→j} α_iβ_j`.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.vertex_count;
        let mut m = vec![vec![0i64; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &self.arrows {
            m[s - 1][t - 1] -= 1;
        }
        m
    }

    /// `χ(α,β)`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> i64 {
        let m = self.euler_matrix();
        let mut acc = 0i64;
        for (i, &ai) in a.entries().iter().enumerate() {
            for (j, &bj) in b.entries().iter().enumerate() {
                acc += ai as i64 * m[i][j] * bj as i64;
            }
        }
        acc
    }

    /// The antisymmetrized Euler form `⟨α,β⟩ = χ(α,β) - χ(β,α)`.
    pub fn skew_form(&self) -> SkewForm {
        let m = self.euler_matrix();
        let r = self.vertex_count;
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| m[i][j] - m[j][i]).collect())
            .collect();
        SkewForm::new(rows).expect("antisymmetrization is antisymmetric")
    }

    /// `dim R(Q,γ) = Σ_{a:i→j} γ_i γ_j`, the dimension of the representation
    /// space.
    pub fn rep_space_dim(&self, gamma: &DimVector) -> i64 {
        self.arrows
            .iter()
            .map(|&(s, t)| gamma.entry(s - 1) as i64 * gamma.entry(t - 1) as i64)
            .sum()
    }

    /// The stacky generating 1-collection
    /// `A(γ) = (-y)^χ(γ,γ) · P(R(Q,γ)) / P(G_γ)` with `P(A^d) = y^(2d)`.
    pub fn stacky_a(&self) -> OneCollection {
        let q = self.clone();
        OneCollection::from_fn(self.skew_form(), move |gamma: &DimVector| {
            let chi = q.euler_form(gamma, gamma);
            let top = &RatFunc::neg_y_power(chi)
                * &RatFunc::from_poly(LaurentPoly::term(rat_int(1), 2 * q.rep_space_dim(gamma)));
            let mut den = LaurentPoly::one();
            for &g in gamma.entries() {
                den *= &poincare_gl(g as usize);
            }
            top.checked_div(&RatFunc::from_poly(den)).expect("GL Poincaré is nonzero")
        })
    }
}

/// Virtual Poincaré polynomial of `GL_n`:
/// `∏_{k=0}^{n-1} (y^(2n) - y^(2k))`; the empty product 1 for `n = 0`.
pub fn poincare_gl(n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for k in 0..n {
        let factor = LaurentPoly::from_terms([
            (2 * n as i64, rat_int(1)),
            (2 * k as i64, rat_int(-1)),
        ]);
        acc *= &factor;
    }
    acc
}

impl FromStr for Quiver {
    type Err = QuiverError;

    /// Text format: `vertices <r>` then `arrow <i> <j>` lines; `#` starts a
    /// comment.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut vertex_count: Option<usize> = None;
        let mut arrows = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let keyword = words.next().unwrap();
            let err = |msg: &str| QuiverError::Parse(format!("line {}: {msg}", lineno + 1));
            match keyword {
                "vertices" => {
                    let r: usize = words
                        .next()
                        .ok_or_else(|| err("missing vertex count"))?
                        .parse()
                        .map_err(|_| err("bad vertex count"))?;
                    if vertex_count.replace(r).is_some() {
                        return Err(err("duplicate `vertices` line"));
                    }
                }
                "arrow" => {
                    let s: usize = words
                        .next()
                        .ok_or_else(|| err("missing arrow source"))?
                        .parse()
                        .map_err(|_| err("bad arrow source"))?;
                    let t: usize = words
                        .next()
                        .ok_or_else(|| err("missing arrow target"))?
                        .parse()
                        .map_err(|_| err("bad arrow target"))?;
                    arrows.push((s, t));
                }
                other => return Err(err(&format!("unknown keyword `{other}`"))),
            }
            if words.next().is_some() {
                return Err(err("trailing tokens"));
            }
        }
        let vertex_count =
            vertex_count.ok_or_else(|| QuiverError::Parse("missing `vertices` line".into()))?;
        Quiver::new(vertex_count, arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn dv(e: &[u32]) -> DimVector {
        DimVector::new(e.to_vec())
    }

    fn e(i: usize) -> DimVector {
        DimVector::unit(2, i)
    }

    #[test]
    fn euler_form_kronecker() {
        let q = Quiver::kronecker(1);
        assert_eq!(q.euler_form(&e(0), &e(1)), -1);
        assert_eq!(q.euler_form(&e(1), &e(0)), 0);
        assert_eq!(q.euler_form(&dv(&[1, 1]), &dv(&[1, 1])), 1);
    }

    #[test]
    fn skew_forms() {
        assert_eq!(Quiver::kronecker(1).skew_form().pair(&e(0), &e(1)), -1);
        assert_eq!(Quiver::kronecker(2).skew_form().pair(&e(0), &e(1)), -2);
        let loop_q = Quiver::loops(1);
        assert_eq!(loop_q.skew_form().pair(&dv(&[1]), &dv(&[1])), 0);
        // symmetric quiver: arrows matched both ways give the zero form
        let sym = Quiver::new(2, vec![(1, 2), (2, 1)]).unwrap();
        assert_eq!(sym.skew_form(), SkewForm::zero(2));
    }

    #[test]
    fn poincare_gl_values() {
        assert_eq!(poincare_gl(0), LaurentPoly::one());
        assert_eq!(
            poincare_gl(1),
            LaurentPoly::from_terms([(2, rat_int(1)), (0, rat_int(-1))])
        );
        let gl2 = poincare_gl(2);
        let a = LaurentPoly::from_terms([(4, rat_int(1)), (0, rat_int(-1))]);
        let b = LaurentPoly::from_terms([(4, rat_int(1)), (2, rat_int(-1))]);
        assert_eq!(gl2, &a * &b);
    }

    #[test]
    fn stacky_collection_values() {
        let a1 = Quiver::kronecker(1).stacky_a();
        let den = LaurentPoly::from_terms([(2, rat_int(1)), (0, rat_int(-1))]);
        assert_eq!(
            a1.coeff(&e(0)),
            RatFunc::new(LaurentPoly::term(rat_int(-1), 1), den.clone())
        );
        assert_eq!(
            a1.coeff(&dv(&[1, 1])),
            RatFunc::new(LaurentPoly::term(rat_int(-1), 3), &den * &den)
        );
        let a2 = Quiver::kronecker(2).stacky_a();
        assert_eq!(
            a2.coeff(&dv(&[1, 1])),
            RatFunc::new(LaurentPoly::term(rat_int(1), 4), &den * &den)
        );
    }

    #[test]
    fn stacky_values_are_nonzero() {
        let a = Quiver::kronecker(2).stacky_a();
        for gamma in crate::semigroup::vectors_of_degree_at_most(2, 4) {
            assert!(!a.coeff(&gamma).is_zero(), "A({gamma}) vanished");
        }
    }

    #[test]
    fn quiver_parsing() {
        let q: Quiver = "vertices 2\narrow 1 2\narrow 1 2 # double\n".parse().unwrap();
        assert_eq!(q, Quiver::kronecker(2));
        assert!("arrow 1 2".parse::<Quiver>().is_err());
        assert!("vertices 2\narrow 1 3".parse::<Quiver>().is_err());
        assert!("vertices 2\nfoo".parse::<Quiver>().is_err());
    }
}
