//! Groebner bases via Buchberger's algorithm with Gebauer-Moeller pair
//! elimination, plus normal forms.
//!
//! Determinism is prized over raw speed here: pair selection is the normal
//! strategy (minimal lcm total degree, ties by generator-index lex), pivots
//! and reducers are scanned in fixed order, and the final basis is the
//! unique reduced monic Groebner basis for the ring's order.

mod hilbert;
mod ops;

pub use hilbert::{hilbert, is_projectively_empty, HilbertData};
pub use ops::{eliminate, ideal_quotient, intersect, radical_membership, saturate_by_linear};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Poly, PolyRing};
use std::collections::BTreeSet;
use std::sync::Arc;

/// A finitely generated ideal; zero generators are dropped on construction.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Poly<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: Arc<PolyRing<F>>, gens: Vec<Poly<F>>) -> Result<Self> {
        for g in &gens {
            if g.ring() != &ring {
                return Err(Error::Mismatch("generator from a different ring".into()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, gens })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Same generators under a different monomial order.
    pub fn with_order(&self, order: crate::poly::MonomialOrder) -> Ideal<F> {
        let ring = PolyRing::new(self.ring.field.clone(), self.ring.vars.clone(), order);
        let gens = self
            .gens
            .iter()
            .map(|g| Poly::from_terms(&ring, g.terms().to_vec()))
            .collect();
        Ideal { ring, gens }
    }

    pub fn groebner_basis(&self) -> GroebnerBasis<F> {
        buchberger(self)
    }
}

/// A reduced Groebner basis: monic, interreduced, no lead term dividing
/// another, unique for the given ring and order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    elems: Vec<Poly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn elems(&self) -> &[Poly<F>] {
        &self.elems
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().filter_map(|g| g.lead().map(|(m, _)| m.clone())).collect()
    }

    /// The ideal contains 1 (the whole ring).
    pub fn is_unit(&self) -> bool {
        self.elems.iter().any(|g| g.lead().is_some_and(|(m, _)| m.is_one()))
    }

    pub fn contains(&self, f: &Poly<F>) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }

    /// Check that every S-polynomial of basis pairs reduces to zero.
    /// Used by the verification suites on all pipeline bases.
    pub fn spolys_reduce_to_zero(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let s = s_polynomial(&self.elems[i], &self.elems[j]);
                match normal_form(&s, self) {
                    Ok(r) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

fn s_polynomial<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let ring = f.ring().clone();
    let field = &ring.field;
    let (fm, fc) = f.lead().expect("nonzero");
    let (gm, gc) = g.lead().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.div_into(&l), &field.inv(fc));
    let b = g.mul_term(&gm.div_into(&l), &field.inv(gc));
    a.sub(&b).expect("same ring")
}

/// The unique normal form of `f` against a Groebner basis: no term of the
/// result is divisible by any lead term of the basis. Linear in `f`.
pub fn normal_form<F: Field>(f: &Poly<F>, gb: &GroebnerBasis<F>) -> Result<Poly<F>> {
    if f.ring() != &gb.ring {
        return Err(Error::Mismatch("polynomial and basis from different rings".into()));
    }
    Ok(reduce_full(f.clone(), &gb.elems))
}

/// Full reduction against a list of nonzero polynomials (not necessarily a
/// GB); deterministic reducer choice: first match in list order.
fn reduce_full<F: Field>(mut work: Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let field = work.ring().field.clone();
    let leads: Vec<(Monomial, F::Elem)> =
        basis.iter().map(|g| g.lead().expect("nonzero basis element").clone()).collect();
    let mut scan_from = 0usize;
    'outer: loop {
        let terms = work.terms();
        for idx in scan_from..terms.len() {
            let (m, c) = &terms[idx];
            for (gi, (gm, gc)) in leads.iter().enumerate() {
                if gm.divides(m) {
                    let factor = field.div(c, gc);
                    let red = basis[gi].mul_term(&gm.div_into(m), &factor);
                    work = work.sub(&red).expect("same ring");
                    scan_from = idx;
                    continue 'outer;
                }
            }
        }
        return work;
    }
}

/// Reduction for basis building: like `reduce_full` but rescales the work
/// polynomial through the field's canonical unit after each pass, which for
/// the rationals keeps coefficients integer and primitive.
fn reduce_and_normalize<F: Field>(work: Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let r = reduce_full(work, basis);
    canonical_scale(&r)
}

/// Multiply through by the field's canonical unit (primitive integer form
/// with positive lead over Q, monic over a prime field).
pub(crate) fn canonical_scale<F: Field>(p: &Poly<F>) -> Poly<F> {
    match p.lead() {
        None => p.clone(),
        Some(_) => {
            let coeffs: Vec<F::Elem> = p.terms().iter().map(|(_, c)| c.clone()).collect();
            let unit = p.ring().field.scaling_unit(&coeffs);
            p.scale(&unit)
        }
    }
}

/// Buchberger with Gebauer-Moeller pair pruning.
pub fn buchberger<F: Field>(ideal: &Ideal<F>) -> GroebnerBasis<F> {
    let ring = ideal.ring.clone();
    let mut basis: Vec<Poly<F>> = Vec::new();
    // pair set keyed by (lcm total degree, i, j) for the normal strategy
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();

    let mut input: Vec<Poly<F>> = ideal.gens.clone();
    // deterministic input order: ascending lead monomial
    input.sort_by(|a, b| {
        ring.order.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0)
    });

    for f in input {
        let f = reduce_and_normalize(f, &basis);
        if !f.is_zero() {
            add_generator(&mut basis, &mut pairs, f);
        }
    }

    while let Some(&(d, i, j)) = pairs.iter().next() {
        pairs.remove(&(d, i, j));
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce_and_normalize(s, &basis);
        if !r.is_zero() {
            add_generator(&mut basis, &mut pairs, r);
        }
    }

    // interreduce: drop elements whose lead is divisible by another lead,
    // then fully reduce tails and make monic
    let mut keep: Vec<Poly<F>> = Vec::new();
    let mut idxs: Vec<usize> = (0..basis.len()).collect();
    idxs.sort_by(|&a, &b| {
        ring.order.cmp(&basis[a].lead().unwrap().0, &basis[b].lead().unwrap().0)
    });
    for &i in &idxs {
        let lm = &basis[i].lead().unwrap().0;
        if keep.iter().any(|g: &Poly<F>| g.lead().unwrap().0.divides(lm)) {
            continue;
        }
        keep.push(basis[i].clone());
    }
    let mut reduced: Vec<Poly<F>> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly<F>> =
            keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let r = reduce_full(keep[i].clone(), &others);
        debug_assert!(!r.is_zero());
        let (_, lc) = r.lead().unwrap().clone();
        reduced.push(r.scale(&ring.field.inv(&lc)));
    }
    reduced.sort_by(|a, b| ring.order.cmp(&b.lead().unwrap().0, &a.lead().unwrap().0));
    GroebnerBasis { ring, elems: reduced }
}

/// Gebauer-Moeller update: add `f` to the basis, pruning the pair set.
fn add_generator<F: Field>(
    basis: &mut Vec<Poly<F>>,
    pairs: &mut BTreeSet<(u32, usize, usize)>,
    f: Poly<F>,
) {
    let t = basis.len();
    let lt = f.lead().unwrap().0.clone();
    let lcm_with = |i: usize, basis: &[Poly<F>]| -> Monomial {
        basis[i].lead().unwrap().0.lcm(&lt)
    };

    // B criterion: drop old pairs (i,j) whose lcm is a proper multiple of
    // both new lcms
    let old: Vec<(u32, usize, usize)> = pairs.iter().cloned().collect();
    for (d, i, j) in old {
        let lij = basis[i].lead().unwrap().0.lcm(&basis[j].lead().unwrap().0);
        let lit = lcm_with(i, basis);
        let ljt = lcm_with(j, basis);
        if lt.divides(&lij) && lij != lit && lij != ljt {
            pairs.remove(&(d, i, j));
        }
    }

    // new pairs, M criterion (divisibility among new lcms), then F (equal
    // lcms keep one), then the product criterion
    let mut cand: Vec<(usize, Monomial)> = (0..t).map(|i| (i, lcm_with(i, basis))).collect();
    let mut removed = vec![false; t];
    for a in 0..cand.len() {
        if removed[a] {
            continue;
        }
        for b in 0..cand.len() {
            if a == b || removed[b] {
                continue;
            }
            // drop a if lcm_b properly divides lcm_a
            if cand[b].1.divides(&cand[a].1) && cand[b].1 != cand[a].1 {
                removed[a] = true;
                break;
            }
        }
    }
    // F criterion: among equal lcms keep the smallest index
    for a in 0..cand.len() {
        if removed[a] {
            continue;
        }
        for b in (a + 1)..cand.len() {
            if !removed[b] && cand[a].1 == cand[b].1 {
                removed[b] = true;
            }
        }
    }
    // product criterion
    for (a, (i, lcm)) in cand.iter().enumerate() {
        if removed[a] {
            continue;
        }
        if basis[*i].lead().unwrap().0.coprime(&lt) {
            removed[a] = true;
        }
        let _ = lcm;
    }
    for (a, (i, lcm)) in cand.drain(..).enumerate() {
        if !removed[a] {
            pairs.insert((lcm.degree(), i, t));
        }
    }
    basis.push(f);
}
