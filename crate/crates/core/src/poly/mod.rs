//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept sorted in descending order of the ring's monomial order,
//! with no zero coefficients stored, so printing, hashing and lead-term
//! access are deterministic.

mod bigrading;
mod order;
mod parse;

pub use bigrading::{Bigrading, DegreeConstraint};
pub use order::MonomialOrder;
pub use parse::{parse_poly, poly_to_string};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::sync::Arc;

/// Exponent vector; length always equals the ring's variable count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u16; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(smallvec::smallvec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div_into(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A polynomial ring descriptor: field, named variables, monomial order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyRing<F: Field> {
    pub field: F,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { field, vars, order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }
}

/// Ring of `z1..z9` over the given field, grevlex.
pub fn z_ring<F: Field>(field: F) -> Arc<PolyRing<F>> {
    PolyRing::new(field, (1..=9).map(|i| format!("z{i}")).collect(), MonomialOrder::GrevLex)
}

/// The 12-variable ring `x1..x8, y1..y4`, grevlex.
pub fn xy_ring<F: Field>(field: F) -> Arc<PolyRing<F>> {
    let vars = (1..=8)
        .map(|i| format!("x{i}"))
        .chain((1..=4).map(|i| format!("y{i}")))
        .collect();
    PolyRing::new(field, vars, MonomialOrder::GrevLex)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<F: Field> {
    ring: Arc<PolyRing<F>>,
    /// (monomial, coefficient), descending in the ring's order, no zeros.
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        if ring.field.is_zero(&c) {
            return Self::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn var(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        Self::from_terms(ring, vec![(Monomial::var(ring.nvars(), i, 1), ring.field.one())])
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, m: Monomial, c: F::Elem) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Build from unsorted terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        let f = &ring.field;
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !f.is_zero(c));
        Poly { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Mismatch("polynomials from different rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merged(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merged(other, true))
    }

    fn merged(&self, other: &Self, negate: bool) -> Self {
        let f = &self.ring.field;
        let ord = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ord.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { f.neg(cb) } else { cb.clone() };
                    out.push((mb.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (mb, cb) in &other.terms[j..] {
            let c = if negate { f.neg(cb) } else { cb.clone() };
            out.push((mb.clone(), c));
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        let f = &self.ring.field;
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), f.mul(k, c))).collect(),
        }
    }

    /// Multiply by a single term; preserves sortedness.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), f.mul(tc, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        // accumulate into a sorted merge; fine at this crate's problem sizes
        let mut acc: Vec<(Monomial, F::Elem)> = Vec::new();
        for (m, c) in &other.terms {
            let part = self.mul_term(m, c);
            let sum = Poly { ring: self.ring.clone(), terms: acc }.merged(&part, false);
            acc = sum.terms;
        }
        Ok(Poly { ring: self.ring.clone(), terms: acc })
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let f = &self.ring.field;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            terms.push((m2, f.mul(c, &f.from_i64(e as i64))));
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Ring homomorphism determined by variable images (all in one common
    /// target ring); applied term by term.
    pub fn substitute(&self, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Mismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        for im in images {
            if im.ring != target {
                return Err(Error::Mismatch("images live in different rings".into()));
            }
        }
        let f = &target.field;
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut part = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    part = part.mul(&images[i])?;
                }
            }
            out = out.add(&part)?;
        }
        let _ = f;
        Ok(out)
    }

    /// Evaluate at a point (full substitution of constants).
    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Mismatch("point length".into()));
        }
        let f = &self.ring.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = f.mul(&t, &point[i]);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Same polynomial viewed under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Poly<F> {
        let ring = PolyRing::new(self.ring.field.clone(), self.ring.vars.clone(), order);
        Poly::from_terms(&ring, self.terms.clone())
    }

    /// Map into a ring with the same variables over another field.
    pub fn map_field<G: Field>(
        &self,
        target: &Arc<PolyRing<G>>,
        mut map: impl FnMut(&F::Elem) -> Option<G::Elem>,
    ) -> Result<Poly<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c2 = map(c).ok_or_else(|| {
                Error::Parse("coefficient not representable in target field".into())
            })?;
            terms.push((m.clone(), c2));
        }
        Ok(Poly::from_terms(target, terms))
    }
}

impl Poly<Rationals> {
    pub fn reduce_mod(&self, target: &Arc<PolyRing<PrimeField>>) -> Result<Poly<PrimeField>> {
        let fp = target.field;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c2 = fp
                .from_rational(c)
                .ok_or_else(|| Error::BadPrime(fp.modulus(), c.to_string()))?;
            terms.push((m.clone(), c2));
        }
        Ok(Poly::from_terms(target, terms))
    }
}

/// All monomials of the given total degree in `nvars` variables,
/// ascending in the given order.
pub fn monomials_of_degree(nvars: usize, degree: u32, order: MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u16; nvars];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u16>, pos: usize, left: u32) {
        if pos + 1 == current.len() {
            current[pos] = left as u16;
            out.push(Monomial(SmallVec::from_slice(current)));
            return;
        }
        for e in 0..=left {
            current[pos] = e as u16;
            rec(out, current, pos + 1, left - e);
        }
        current[pos] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut out, &mut current, 0, degree);
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

/// Monomial enumeration for `R_{8,4}` (eight x variables then four y
/// variables): all monomials matching the constraint, ascending grevlex.
/// With `invariant_only`, keeps exactly the monomials fixed by every even
/// sign change of the x's: the x-exponent parity vector is constant
/// (all even or all odd).
pub fn enumerate_monomials(
    constraint: DegreeConstraint,
    invariant_only: bool,
) -> Vec<Monomial> {
    let nvars = 12;
    let order = MonomialOrder::GrevLex;
    let candidates: Vec<Monomial> = match constraint {
        DegreeConstraint::Total(d) => monomials_of_degree(nvars, d, order),
        DegreeConstraint::Bidegree(p, q) => {
            // bidegree (p, q) with x -> (0,1), y -> (1,-2): y-degree p, x-degree q + 2p
            if p < 0 || q + 2 * p < 0 {
                return Vec::new();
            }
            let ydeg = p as u32;
            let xdeg = (q + 2 * p) as u32;
            let xs = monomials_of_degree(8, xdeg, order);
            let ys = monomials_of_degree(4, ydeg, order);
            let mut out = Vec::with_capacity(xs.len() * ys.len());
            for x in &xs {
                for y in &ys {
                    let mut e = SmallVec::<[u16; 16]>::from_slice(&x.0);
                    e.extend_from_slice(&y.0);
                    out.push(Monomial(e));
                }
            }
            let mut out = out;
            out.sort_by(|a, b| order.cmp(a, b));
            out
        }
    };
    if !invariant_only {
        return candidates;
    }
    candidates.into_iter().filter(|m| is_n1_invariant(m)).collect()
}

/// A monomial of `R_{8,4}` is fixed by the even sign-change group exactly
/// when its x-exponent parities are constant.
pub fn is_n1_invariant(m: &Monomial) -> bool {
    let all_even = m.0[..8].iter().all(|&e| e % 2 == 0);
    let all_odd = m.0[..8].iter().all(|&e| e % 2 == 1);
    all_even || all_odd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring() -> Arc<PolyRing<Rationals>> {
        PolyRing::new(
            Rationals,
            vec!["x".into(), "y".into()],
            MonomialOrder::GrevLex,
        )
    }

    #[test]
    fn square_of_sum() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let s = x.add(&y).unwrap();
        let sq = s.mul(&s).unwrap();
        let expect = parse_poly(&r, "x^2 + 2*x*y + y^2").unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn derivative() {
        let r = ring();
        let f = parse_poly(&r, "x^3*y + 2*x").unwrap();
        assert_eq!(f.partial_derivative(0), parse_poly(&r, "3*x^2*y + 2").unwrap());
        assert_eq!(f.partial_derivative(1), parse_poly(&r, "x^3").unwrap());
    }

    #[test]
    fn substitution_examples() {
        let r = ring();
        // identity substitution
        let f = parse_poly(&r, "x^2 - y").unwrap();
        let images = vec![Poly::var(&r, 0), Poly::var(&r, 1)];
        assert_eq!(f.substitute(&images).unwrap(), f);
        // x -> t, y -> t^2 kills x^2 - y
        let tr = PolyRing::new(Rationals, vec!["t".into()], MonomialOrder::GrevLex);
        let t = Poly::var(&tr, 0);
        let t2 = t.mul(&t).unwrap();
        assert!(f.substitute(&[t, t2]).unwrap().is_zero());
    }

    #[test]
    fn enumerate_counts() {
        // bidegree (1,0): 4 y-choices x 36 x-quadratics
        let all = enumerate_monomials(DegreeConstraint::Bidegree(1, 0), false);
        assert_eq!(all.len(), 144);
        let inv = enumerate_monomials(DegreeConstraint::Bidegree(1, 0), true);
        assert_eq!(inv.len(), 32);
        let unit = enumerate_monomials(DegreeConstraint::Bidegree(0, 0), false);
        assert_eq!(unit.len(), 1);
        assert!(unit[0].is_one());
    }

    #[test]
    fn invariance_by_group_action() {
        use rand::{Rng, SeedableRng};
        // direct check against all 128 even sign patterns
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let mut e = [0u16; 12];
            for v in e.iter_mut().take(8) {
                *v = rng.gen_range(0..4);
            }
            for v in e.iter_mut().skip(8) {
                *v = rng.gen_range(0..3);
            }
            let m = Monomial::from_exponents(&e);
            let mut fixed_by_all = true;
            for mask in 0..256u32 {
                if (mask.count_ones() % 2) != 0 {
                    continue;
                }
                // sign of sigma(m) = (-1)^(sum over flipped coords of exponent)
                let mut sign = 0u32;
                for j in 0..8 {
                    if mask >> j & 1 == 1 {
                        sign += e[j] as u32;
                    }
                }
                if sign % 2 == 1 {
                    fixed_by_all = false;
                    break;
                }
            }
            assert_eq!(is_n1_invariant(&m), fixed_by_all);
        }
    }
}
