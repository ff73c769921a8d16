//! Bigrading for the 12-variable ring: `x_j -> (0,1)`, `y_i -> (1,-2)`.
//!
//! Under this weighting the potential is homogeneous of bidegree `(1,0)`
//! and the Hodge-theoretic pieces of the Jacobian ring sit in bidegrees
//! `(p,0)`.

use super::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigrading {
    /// Per-variable bidegree pairs.
    pub weights: Vec<(i64, i64)>,
}

impl Bigrading {
    /// The standard bigrading of `R_{8,4}`.
    pub fn standard_xy() -> Self {
        let mut weights = vec![(0i64, 1i64); 8];
        weights.extend(std::iter::repeat((1i64, -2i64)).take(4));
        Bigrading { weights }
    }

    pub fn bidegree_of(&self, m: &Monomial) -> (i64, i64) {
        assert_eq!(m.0.len(), self.weights.len(), "monomial length mismatch");
        let mut p = 0i64;
        let mut q = 0i64;
        for (e, (wp, wq)) in m.0.iter().zip(&self.weights) {
            p += *e as i64 * wp;
            q += *e as i64 * wq;
        }
        (p, q)
    }
}

/// Degree constraint for monomial enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeConstraint {
    Total(u32),
    /// Bidegree in the standard `R_{8,4}` grading.
    Bidegree(i64, i64),
}
