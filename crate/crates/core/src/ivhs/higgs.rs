//! Higgs multiplication maps on the invariant pieces and the
//! characteristic ideals they cut out.
//!
//! The k-th iterated Higgs field is the multiplication
//! `Sym^k R~(1) -> R~(k)`; its matrix columns follow the colex pair/triple
//! bijection on the chosen basis. Dualizing with the symmetric-algebra
//! convention (off-diagonal dual monomials carry 1/2) turns the matrix of
//! `mu_2` into nine quadrics in z_1..z_9, and `mu_3` into the Yukawa cubic.

use super::JacobianData;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::groebner::Ideal;
use crate::matrix::Matrix;
use crate::poly::{z_ring, Monomial, Poly, PolyRing};
use num_rational::BigRational;
use std::sync::Arc;

/// Colex bijection on ordered pairs `(i, j)`, `i <= j < n`:
/// pairs sorted by `(j, i)`.
pub fn pairs_colex(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for j in 0..n {
        for i in 0..=j {
            out.push((i, j));
        }
    }
    out
}

/// Colex on ordered triples `(i, j, k)`, `i <= j <= k < n`.
pub fn triples_colex(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for k in 0..n {
        for j in 0..=k {
            for i in 0..=j {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Representation matrix of the k-th multiplication map on the chosen
/// bases, columns ordered by the colex bijection.
#[derive(Clone, Debug)]
pub struct HiggsMatrix {
    pub k: u16,
    /// `dim R~(k)` rows by `C(9+k-1, k)` columns.
    pub matrix: Matrix<Rationals>,
}

/// Matrix of `mu_k : Sym^k R~(1) -> R~(k)` for k in 1..=3.
pub fn higgs_matrix(jd: &JacobianData, k: u16) -> Result<HiggsMatrix> {
    if !(1..=3).contains(&k) {
        return Err(Error::Invalid(format!("higgs level {k} out of range 1..=3")));
    }
    let p1 = jd.graded_piece(1, true)?;
    let target = jd.graded_piece(k, true)?;
    let n = p1.dim();
    let cols: Vec<Vec<usize>> = match k {
        1 => (0..n).map(|i| vec![i]).collect(),
        2 => pairs_colex(n).into_iter().map(|(i, j)| vec![i, j]).collect(),
        _ => triples_colex(n).into_iter().map(|(i, j, l)| vec![i, j, l]).collect(),
    };
    let mut m = Matrix::zero(Rationals, target.dim(), cols.len());
    for (c, idxs) in cols.iter().enumerate() {
        let mono = idxs
            .iter()
            .map(|&i| p1.basis_monomials[i].clone())
            .reduce(|a, b| a.mul(&b))
            .expect("nonempty");
        let coords = target.reduce_terms(&[(mono, Rationals.one())])?;
        for (r, v) in coords.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(HiggsMatrix { k, matrix: m })
}

/// Multiply a class in `R~(p)` by a class in `R~(1)`, landing in `R~(p+1)`.
/// Bilinear; errors at the top level p = 3.
pub fn multiply_into_piece(
    jd: &JacobianData,
    class: &[BigRational],
    p: u16,
    u: &[BigRational],
) -> Result<Vec<BigRational>> {
    if p >= 3 {
        return Err(Error::Invalid("no target piece above level 3".into()));
    }
    let src = jd.graded_piece(p, true)?;
    let one = jd.graded_piece(1, true)?;
    let target = jd.graded_piece(p + 1, true)?;
    if class.len() != src.dim() || u.len() != one.dim() {
        return Err(Error::Shape("class coordinate length".into()));
    }
    let f = Rationals;
    let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
    for (i, ci) in class.iter().enumerate() {
        if f.is_zero(ci) {
            continue;
        }
        for (j, uj) in u.iter().enumerate() {
            if f.is_zero(uj) {
                continue;
            }
            let m = src.basis_monomials[i].mul(&one.basis_monomials[j]);
            terms.push((m, ci * uj));
        }
    }
    target.reduce_terms(&terms)
}

/// The homogeneous ideal cutting the k-th characteristic subvariety at
/// this arrangement, in z_1..z_9: for k = 1 the nine quadrics dual to
/// `mu_2`, for k = 2 the Yukawa cubic generating the dual image of `mu_3`.
#[derive(Clone, Debug)]
pub struct CharacteristicIdeal {
    pub k: u16,
    pub ideal: Ideal<Rationals>,
    pub arrangement_digest: String,
    pub basis_digest: String,
}

/// The ideal `a_{k+1}` generated by the image of the dualized (k+1)-st
/// multiplication map, with the symmetric-power convention: the dual-basis
/// coefficient at a square-free index pattern is scaled by the number of
/// permutations of the pattern.
pub fn characteristic_ideal(jd: &JacobianData, k: u16) -> Result<CharacteristicIdeal> {
    if !(1..=2).contains(&k) {
        return Err(Error::Invalid(format!("characteristic level {k} out of range 1..=2")));
    }
    let ring = z_ring(Rationals);
    let higgs = higgs_matrix(jd, k + 1)?;
    let n = jd.graded_piece(1, true)?.dim();
    let gens = dualize_higgs(&higgs, n, &ring);
    Ok(CharacteristicIdeal {
        k,
        ideal: Ideal::new(ring, gens)?,
        arrangement_digest: jd.arrangement.digest(),
        basis_digest: jd.basis_digest()?,
    })
}

fn dualize_higgs(
    higgs: &HiggsMatrix,
    n: usize,
    ring: &Arc<PolyRing<Rationals>>,
) -> Vec<Poly<Rationals>> {
    let f = Rationals;
    let mut gens = Vec::with_capacity(higgs.matrix.rows());
    match higgs.k {
        2 => {
            let pairs = pairs_colex(n);
            for r in 0..higgs.matrix.rows() {
                let mut terms = Vec::new();
                for (c, &(i, j)) in pairs.iter().enumerate() {
                    let v = higgs.matrix.get(r, c);
                    if f.is_zero(v) {
                        continue;
                    }
                    let mut e = vec![0u16; 9];
                    e[i] += 1;
                    e[j] += 1;
                    let scale = if i == j { f.one() } else { f.from_i64(2) };
                    terms.push((Monomial::from_exponents(&e), v * &scale));
                }
                gens.push(Poly::from_terms(ring, terms));
            }
        }
        3 => {
            let triples = triples_colex(n);
            for r in 0..higgs.matrix.rows() {
                let mut terms = Vec::new();
                for (c, &(i, j, l)) in triples.iter().enumerate() {
                    let v = higgs.matrix.get(r, c);
                    if f.is_zero(v) {
                        continue;
                    }
                    let mut e = vec![0u16; 9];
                    e[i] += 1;
                    e[j] += 1;
                    e[l] += 1;
                    let perms = if i == j && j == l {
                        1
                    } else if i == j || j == l {
                        3
                    } else {
                        6
                    };
                    terms.push((Monomial::from_exponents(&e), v * &f.from_i64(perms)));
                }
                gens.push(Poly::from_terms(ring, terms));
            }
        }
        _ => unreachable!("dualize only at levels 2 and 3"),
    }
    gens
}

/// The Yukawa coupling as a cubic form in z_1..z_9: the single generator
/// of `a_3`, nonzero at every validated point.
#[derive(Clone, Debug)]
pub struct YukawaCubic {
    pub cubic: Poly<Rationals>,
}

pub fn yukawa_cubic(jd: &JacobianData) -> Result<YukawaCubic> {
    let ci = characteristic_ideal(jd, 2)?;
    let gens = ci.ideal.gens();
    if gens.len() != 1 {
        return Err(Error::Invalid(format!(
            "a_3 not principal: {} generators (top piece dimension {})",
            gens.len(),
            jd.graded_piece(3, true)?.dim()
        )));
    }
    Ok(YukawaCubic { cubic: gens[0].clone() })
}

impl YukawaCubic {
    /// Evaluate at tangent coordinates.
    pub fn eval(&self, v: &[BigRational]) -> Result<BigRational> {
        self.cubic.eval(v)
    }
}

impl CharacteristicIdeal {
    pub fn reduce_mod(&self, fp: PrimeField) -> Result<Ideal<PrimeField>> {
        let ring = z_ring(fp);
        let gens = self
            .ideal
            .gens()
            .iter()
            .map(|g| g.reduce_mod(&ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }
}

/// Class of the cube (or square) of a tangent vector: evaluation route used
/// by the duality self-tests.
pub fn power_class(jd: &JacobianData, v: &[BigRational], power: u16) -> Result<Vec<BigRational>> {
    let p1 = jd.graded_piece(1, true)?;
    if v.len() != p1.dim() {
        return Err(Error::Shape("tangent coordinate length".into()));
    }
    let target = jd.graded_piece(power, true)?;
    let f = Rationals;
    // expand (sum v_i m_i)^power directly over index tuples
    let n = v.len();
    let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
    match power {
        2 => {
            for i in 0..n {
                for j in 0..n {
                    let c = &v[i] * &v[j];
                    if f.is_zero(&c) {
                        continue;
                    }
                    terms.push((p1.basis_monomials[i].mul(&p1.basis_monomials[j]), c));
                }
            }
        }
        3 => {
            for i in 0..n {
                if f.is_zero(&v[i]) {
                    continue;
                }
                for j in 0..n {
                    if f.is_zero(&v[j]) {
                        continue;
                    }
                    for l in 0..n {
                        let c = &(&v[i] * &v[j]) * &v[l];
                        if f.is_zero(&c) {
                            continue;
                        }
                        let m =
                            p1.basis_monomials[i].mul(&p1.basis_monomials[j]).mul(&p1.basis_monomials[l]);
                        terms.push((m, c));
                    }
                }
            }
        }
        _ => return Err(Error::Invalid("power must be 2 or 3".into())),
    }
    target.reduce_terms(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::ivhs::build_jacobian;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn mu1_is_identity() {
        let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
        let h = higgs_matrix(&jd, 1).unwrap();
        assert_eq!(h.matrix, Matrix::identity(Rationals, 9));
    }

    #[test]
    fn mu2_full_rank_and_symmetric() {
        let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
        let h = higgs_matrix(&jd, 2).unwrap();
        assert_eq!(h.matrix.rows(), 9);
        assert_eq!(h.matrix.cols(), 45);
        assert_eq!(h.matrix.rank(), 9);
        // symmetry through the quotient on random u, v
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u: Vec<BigRational> = (0..9).map(|_| q(rng.gen_range(-5..=5))).collect();
        let v: Vec<BigRational> = (0..9).map(|_| q(rng.gen_range(-5..=5))).collect();
        let uv = multiply_into_piece(&jd, &u, 1, &v).unwrap();
        let vu = multiply_into_piece(&jd, &v, 1, &u).unwrap();
        assert_eq!(uv, vu);
    }

    #[test]
    fn commutativity_through_top_piece() {
        let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let u: Vec<BigRational> = (0..9).map(|_| q(rng.gen_range(-3..=3))).collect();
        let v: Vec<BigRational> = (0..9).map(|_| q(rng.gen_range(-3..=3))).collect();
        let w: Vec<BigRational> = (0..9).map(|_| q(rng.gen_range(-3..=3))).collect();
        let vw = multiply_into_piece(&jd, &v, 1, &w).unwrap();
        let u_vw = multiply_into_piece(&jd, &vw, 2, &u).unwrap();
        let uw = multiply_into_piece(&jd, &u, 1, &w).unwrap();
        let v_uw = multiply_into_piece(&jd, &uw, 2, &v).unwrap();
        assert_eq!(u_vw, v_uw);
        // zero in, zero out
        let zero = vec![q(0); 9];
        let z = multiply_into_piece(&jd, &zero, 1, &u).unwrap();
        assert!(z.iter().all(|c| Rationals.is_zero(c)));
    }

    #[test]
    fn duality_quadrics_match_mu2_on_random_vectors() {
        // Lemma-style criterion: the nine quadrics evaluated at v equal the
        // coordinates of mu_2(v (x) v); in particular they vanish together.
        let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
        let ci = characteristic_ideal(&jd, 1).unwrap();
        assert_eq!(ci.ideal.gens().len(), 9);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let v: Vec<BigRational> = (0..9).map(|_| q(rng.gen_range(-9..=9))).collect();
            let sq = power_class(&jd, &v, 2).unwrap();
            for (k, g) in ci.ideal.gens().iter().enumerate() {
                assert_eq!(g.eval(&v).unwrap(), sq[k]);
            }
        }
    }

    #[test]
    fn yukawa_principal_and_matches_cubes() {
        let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
        let y = yukawa_cubic(&jd).unwrap();
        assert!(!y.cubic.is_zero());
        assert_eq!(y.eval(&vec![q(0); 9]).unwrap(), q(0));
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..10 {
            let v: Vec<BigRational> = (0..9).map(|_| q(rng.gen_range(-4..=4))).collect();
            let cube = power_class(&jd, &v, 3).unwrap();
            assert_eq!(y.eval(&v).unwrap(), cube[0]);
        }
    }
}
