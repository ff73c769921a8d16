//! Hilbert series of homogeneous ideals via the lead-term monomial ideal.
//!
//! The series of `R/I` in `n` variables is `h(t)/(1-t)^n`; after cancelling
//! `(1-t)` factors the cone's Krull dimension is `n` minus the number of
//! cancellations and the degree is the cancelled numerator at `t = 1`.

use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{poly_to_string, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Numerator of the series over `(1-t)^nvars`, as coefficients by degree.
    pub numerator: Vec<i64>,
    pub nvars: usize,
    /// Krull dimension of the affine cone; `-1` for the unit ideal.
    pub dimension: i64,
    /// Degree of the projective scheme (`h~(1)` after cancellation).
    pub degree: i64,
}

impl HilbertData {
    /// Coefficients of the Hilbert function `dim (R/I)_d` for `d = 0..=upto`,
    /// by expanding `numerator / (1-t)^nvars`.
    pub fn hilbert_function(&self, upto: usize) -> Vec<i64> {
        let mut series = vec![0i64; upto + 1];
        for (d, &c) in self.numerator.iter().enumerate() {
            if d <= upto {
                series[d] = c;
            }
        }
        // repeatedly multiply by 1/(1-t): prefix sums
        for _ in 0..self.nvars {
            for d in 1..=upto {
                series[d] += series[d - 1];
            }
        }
        series
    }
}

/// Hilbert data of a homogeneous ideal from its Groebner basis.
/// Rejects inhomogeneous input.
pub fn hilbert<F: Field>(gb: &GroebnerBasis<F>) -> Result<HilbertData> {
    for g in gb.elems() {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(poly_to_string(g)));
        }
    }
    let n = gb.ring().nvars();
    let lead: Vec<Monomial> = gb.lead_monomials();
    let numerator = numerator_of_monomial_ideal(&lead, n);
    Ok(hilbert_from_numerator(numerator, n))
}

pub(crate) fn hilbert_from_numerator(numerator: Vec<i64>, nvars: usize) -> HilbertData {
    // cancel (1-t) factors
    let mut h = numerator.clone();
    trim(&mut h);
    let mut cancelled = 0usize;
    loop {
        if h.is_empty() {
            // numerator 0: the unit ideal
            return HilbertData { numerator, nvars, dimension: -1, degree: 0 };
        }
        if h.iter().sum::<i64>() != 0 {
            break;
        }
        // divide by (1-t): g_k = h_k + g_{k-1}
        let mut g = vec![0i64; h.len() - 1];
        let mut prev = 0i64;
        for k in 0..h.len() - 1 {
            prev += h[k];
            g[k] = prev;
        }
        h = g;
        trim(&mut h);
        cancelled += 1;
    }
    HilbertData {
        numerator,
        nvars,
        dimension: nvars as i64 - cancelled as i64,
        degree: h.iter().sum(),
    }
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Numerator of the Hilbert series of `R/(monomial ideal)` by the standard
/// pivot recursion: split on a variable occurring in a mixed-support
/// minimal generator (most frequent, ties by lowest index).
pub(crate) fn numerator_of_monomial_ideal(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    let mut gens = minimalize(gens.to_vec());
    rec(&mut gens, nvars)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.0.to_vec()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn rec(gens: &mut Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![];
    }
    // pure powers only: Koszul product of (1 - t^deg)
    let mixed: Vec<usize> = (0..gens.len())
        .filter(|&i| {
            let m = &gens[i];
            m.0.iter().filter(|&&e| e > 0).count() > 1
        })
        .collect();
    if mixed.is_empty() {
        let mut h = vec![1i64];
        for g in gens.iter() {
            let d = g.degree() as usize;
            let mut h2 = vec![0i64; h.len() + d];
            for (k, &c) in h.iter().enumerate() {
                h2[k] += c;
                h2[k + d] -= c;
            }
            h = h2;
        }
        return h;
    }
    // pivot: most frequent variable among mixed-support generators
    let mut counts = vec![0usize; nvars];
    for &i in &mixed {
        for (v, &e) in gens[i].0.iter().enumerate() {
            if e > 0 {
                counts[v] += 1;
            }
        }
    }
    let pivot = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();

    // numerator(I) = numerator(I + (x)) + t * numerator(I : x)
    let mut plus: Vec<Monomial> = gens
        .iter()
        .filter(|m| m.0[pivot] == 0)
        .cloned()
        .chain(std::iter::once(Monomial::var(nvars, pivot, 1)))
        .collect();
    plus = minimalize(plus);
    let mut colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut m2 = m.clone();
            if m2.0[pivot] > 0 {
                m2.0[pivot] -= 1;
            }
            m2
        })
        .collect();
    colon = minimalize(colon);
    let a = rec(&mut plus, nvars);
    let b = rec(&mut colon, nvars);
    let mut out = vec![0i64; a.len().max(b.len() + 1)];
    for (k, &c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, &c) in b.iter().enumerate() {
        out[k + 1] += c;
    }
    trim(&mut out);
    out
}

/// Projective emptiness: the quotient is finite-dimensional as a vector
/// space, i.e. every variable has a pure power among the lead terms.
/// Rejects inhomogeneous input.
pub fn is_projectively_empty<F: Field>(gb: &GroebnerBasis<F>) -> Result<bool> {
    for g in gb.elems() {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(poly_to_string(g)));
        }
    }
    let n = gb.ring().nvars();
    let leads = gb.lead_monomials();
    Ok((0..n).all(|v| {
        leads.iter().any(|m| {
            m.0[v] > 0 && m.0.iter().enumerate().all(|(w, &e)| w == v || e == 0)
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::groebner::Ideal;
    use crate::poly::{parse_poly, MonomialOrder, PolyRing};

    fn zr(n: usize) -> std::sync::Arc<PolyRing<Rationals>> {
        PolyRing::new(
            Rationals,
            (1..=n).map(|i| format!("z{i}")).collect(),
            MonomialOrder::GrevLex,
        )
    }

    #[test]
    fn zero_ideal() {
        let r = zr(9);
        let gb = Ideal::new(r, vec![]).unwrap().groebner_basis();
        let h = hilbert(&gb).unwrap();
        assert_eq!(h.numerator, vec![1]);
        assert_eq!(h.dimension, 9);
        assert_eq!(h.degree, 1);
    }

    #[test]
    fn complete_intersection_of_quadrics() {
        // generic-enough quadrics: z_i^2 - z_{i+1} z_{i+2} style in 4 vars,
        // numerator must be (1-t^2)^c for a regular sequence
        let r = zr(4);
        let gens = vec![
            parse_poly(&r, "z1^2 - z2*z3").unwrap(),
            parse_poly(&r, "z2^2 - z3*z4").unwrap(),
        ];
        let gb = Ideal::new(r, gens).unwrap().groebner_basis();
        let h = hilbert(&gb).unwrap();
        // (1-t^2)^2 = 1 - 2t^2 + t^4
        assert_eq!(h.numerator, vec![1, 0, -2, 0, 1]);
        assert_eq!(h.dimension, 2);
        assert_eq!(h.degree, 4);
    }

    #[test]
    fn emptiness() {
        let r = zr(3);
        let irrelevant = Ideal::new(
            r.clone(),
            (0..3).map(|i| crate::poly::Poly::var(&r, i)).collect(),
        )
        .unwrap()
        .groebner_basis();
        assert!(is_projectively_empty(&irrelevant).unwrap());

        let hyperplane =
            Ideal::new(r.clone(), vec![parse_poly(&r, "z1").unwrap()]).unwrap().groebner_basis();
        assert!(!is_projectively_empty(&hyperplane).unwrap());

        let inhom = Ideal::new(r.clone(), vec![parse_poly(&r, "z1 - 1").unwrap()])
            .unwrap()
            .groebner_basis();
        assert!(is_projectively_empty(&inhom).is_err());
    }

    #[test]
    fn hilbert_function_matches_series() {
        let r = zr(3);
        // twisted-cubic-like: 2x2 minors of (z1 z2; z2 z3)
        let gens = vec![parse_poly(&r, "z1*z3 - z2^2").unwrap()];
        let gb = Ideal::new(r, gens).unwrap().groebner_basis();
        let h = hilbert(&gb).unwrap();
        assert_eq!(h.dimension, 2);
        assert_eq!(h.degree, 2);
        let hf = h.hilbert_function(5);
        // quadric in P^2: dim_d = 2d+1
        assert_eq!(hf, vec![1, 3, 5, 7, 9, 11]);
    }

    #[test]
    fn order_independence() {
        let r = zr(4);
        let gens = vec![
            parse_poly(&r, "z1*z2 - z3*z4").unwrap(),
            parse_poly(&r, "z1^2*z3 - z2*z4^2").unwrap(),
        ];
        let i = Ideal::new(r, gens).unwrap();
        let h1 = hilbert(&i.groebner_basis()).unwrap();
        let h2 = hilbert(&i.with_order(MonomialOrder::Lex).groebner_basis()).unwrap();
        assert_eq!(h1.dimension, h2.dimension);
        assert_eq!(h1.degree, h2.degree);
        assert_eq!(h1.hilbert_function(8), h2.hilbert_function(8));
    }
}
