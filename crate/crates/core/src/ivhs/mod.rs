//! The Jacobian ring of a double octic, its invariant bigraded pieces, the
//! Higgs multiplication maps, characteristic ideals, the Yukawa cubic, and
//! the tangent-space map into the first graded piece.

mod higgs;
mod models;
mod pieces;

pub use higgs::{
    characteristic_ideal, higgs_matrix, multiply_into_piece, yukawa_cubic, CharacteristicIdeal,
    HiggsMatrix, YukawaCubic,
};
pub use models::{reference_model, ModelKind};
pub use pieces::GradedPieceBasis;

use crate::arrangement::{Arrangement, TangentDirection};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::Matrix;
use crate::poly::{xy_ring, Bigrading, Monomial, Poly, PolyRing};
use num_rational::BigRational;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// The Jacobian-ring data of an arrangement: the complement matrix, the
/// potential `F = sum_i y_i f_i` with `f_i = sum_j b_ij x_j^2`, and the
/// twelve partial derivatives generating the Jacobian ideal.
pub struct JacobianData {
    pub arrangement: Arrangement,
    pub b: Matrix<Rationals>,
    pub ring: Arc<PolyRing<Rationals>>,
    pub potential: Poly<Rationals>,
    /// `dF/dx_j = 2 x_j l_j(y)`, bidegree (1,-1), for j = 1..8.
    pub x_partials: Vec<Poly<Rationals>>,
    /// `dF/dy_i = f_i`, bidegree (0,2), for i = 1..4.
    pub quadrics: Vec<Poly<Rationals>>,
    piece_cache: Mutex<HashMap<(u16, bool), Arc<GradedPieceBasis>>>,
}

/// Build the Jacobian data for a validated arrangement.
pub fn build_jacobian(arrangement: Arrangement) -> JacobianData {
    let ring = xy_ring(Rationals);
    let b = arrangement.complement_matrix();
    let f = Rationals;
    // F = sum_i y_i * sum_j b_ij x_j^2
    let mut terms = Vec::new();
    for i in 0..4 {
        for j in 0..8 {
            let c = b.get(i, j);
            if f.is_zero(c) {
                continue;
            }
            let mut e = [0u16; 12];
            e[j] = 2;
            e[8 + i] = 1;
            terms.push((Monomial::from_exponents(&e), c.clone()));
        }
    }
    let potential = Poly::from_terms(&ring, terms);
    let x_partials = (0..8).map(|j| potential.partial_derivative(j)).collect();
    let quadrics = (0..4).map(|i| potential.partial_derivative(8 + i)).collect();
    JacobianData {
        arrangement,
        b,
        ring,
        potential,
        x_partials,
        quadrics,
        piece_cache: Mutex::new(HashMap::new()),
    }
}

impl JacobianData {
    /// All twelve Jacobian generators.
    pub fn jacobian_generators(&self) -> Vec<Poly<Rationals>> {
        self.x_partials.iter().chain(&self.quadrics).cloned().collect()
    }

    /// The invariant bidegree-(p,0) piece, exactly over Q, cached.
    pub fn graded_piece(&self, p: u16, invariant_only: bool) -> Result<Arc<GradedPieceBasis>> {
        if p > 3 {
            return Err(Error::Invalid(format!("level {p} out of range 0..=3")));
        }
        if !invariant_only {
            return Err(Error::Invalid(
                "full pieces are computed only as dimensions mod p; use full_dims".into(),
            ));
        }
        let key = (p, invariant_only);
        if let Some(hit) = self.piece_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let piece = Arc::new(pieces::invariant_piece(&self.b, p)?);
        self.piece_cache.lock().unwrap().insert(key, piece.clone());
        Ok(piece)
    }

    /// Dimensions of the full bidegree-(p,0) pieces over `F_p`, p = 0..3.
    /// The 34320-monomial top piece makes exact rational arithmetic
    /// pointless here; character blocks keep the modular computation fast.
    pub fn full_dims(&self, fp: PrimeField) -> Result<[usize; 4]> {
        let b = self.b.reduce_mod(fp)?;
        Ok(std::array::from_fn(|p| pieces::full_dimension(&fp, &b, p as u16)))
    }

    /// Invariant dimensions over Q, p = 0..3.
    pub fn invariant_dims(&self) -> Result<[usize; 4]> {
        let mut out = [0usize; 4];
        for p in 0..=3u16 {
            out[p as usize] = self.graded_piece(p, true)?.dim();
        }
        Ok(out)
    }

    /// The class in the first invariant piece of a tangent direction:
    /// `Bdot` from the particular solve, then the class of
    /// `sum_ij bdot_ij y_i x_j^2`. Linear in the direction; gauge
    /// directions land in the Jacobian ideal and map to zero.
    pub fn tangent_class(&self, dir: &TangentDirection) -> Result<Vec<BigRational>> {
        let piece = self.graded_piece(1, true)?;
        let bdot = self.arrangement.bdot_from_adot(&self.b, &dir.adot)?;
        let f = Rationals;
        let mut terms = Vec::new();
        for i in 0..4 {
            for j in 0..8 {
                let c = bdot.get(i, j);
                if f.is_zero(c) {
                    continue;
                }
                let mut e = [0u16; 12];
                e[j] = 2;
                e[8 + i] = 1;
                terms.push((Monomial::from_exponents(&e), c.clone()));
            }
        }
        piece.reduce_terms(&terms)
    }

    /// Digest of the chosen bases (monomials of each invariant piece), for
    /// report provenance.
    pub fn basis_digest(&self) -> Result<String> {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for p in 0..=3u16 {
            let piece = self.graded_piece(p, true)?;
            for m in &piece.basis_monomials {
                h.update(format!("{:?};", m.0));
            }
            h.update(b"|");
        }
        Ok(crate::arrangement::hex_string(&h.finalize()))
    }

    pub fn bigrading(&self) -> Bigrading {
        Bigrading::standard_xy()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::ModuliPoint;
    use crate::poly::DegreeConstraint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn jacobian_bidegrees() {
        let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
        let g = jd.bigrading();
        // F has bidegree (1,0)
        for (m, _) in jd.potential.terms() {
            assert_eq!(g.bidegree_of(m), (1, 0));
        }
        // 12 generators with the stated bidegrees
        assert_eq!(jd.jacobian_generators().len(), 12);
        for p in &jd.x_partials {
            assert!(!p.is_zero());
            for (m, _) in p.terms() {
                assert_eq!(g.bidegree_of(m), (1, -1));
            }
        }
        for p in &jd.quadrics {
            for (m, _) in p.terms() {
                assert_eq!(g.bidegree_of(m), (0, 2));
            }
        }
    }

    #[test]
    fn x_partial_shape() {
        // dF/dx_1 = 2 x_1 * sum_i b_i1 y_i
        let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
        let d1 = &jd.x_partials[0];
        for (m, c) in d1.terms() {
            assert_eq!(m.0[0], 1);
            let i = (8..12).find(|&k| m.0[k] == 1).unwrap() - 8;
            assert_eq!(*c, jd.b.get(i, 0) * Rationals.from_i64(2));
        }
    }

    #[test]
    fn gauge_directions_map_to_zero_and_slice_has_rank_9() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (_, arr) = ModuliPoint::sample(&mut rng);
        let jd = build_jacobian(arr);
        for dir in jd.arrangement.gauge_basis() {
            let cls = jd.tangent_class(&dir).unwrap();
            assert!(cls.iter().all(|c| Rationals.is_zero(c)));
        }
        let rows: Vec<Vec<BigRational>> = TangentDirection::moduli_slice_directions()
            .iter()
            .map(|d| jd.tangent_class(d).unwrap())
            .collect();
        let m = Matrix::from_rows(Rationals, rows).unwrap();
        assert_eq!(m.rank(), 9);
    }

    #[test]
    fn hyperelliptic_node_span_rank_5() {
        let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
        let rows: Vec<Vec<BigRational>> = (0..8)
            .map(|i| {
                let node = Rationals.from_i64(i as i64 + 1);
                jd.tangent_class(&TangentDirection::node_derivative(i, &node)).unwrap()
            })
            .collect();
        let m = Matrix::from_rows(Rationals, rows).unwrap();
        assert_eq!(m.rank(), 5);
    }

    #[test]
    fn ambient_matches_enumeration() {
        let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
        for p in 0..=3i64 {
            let piece = jd.graded_piece(p as u16, true).unwrap();
            let enumerated =
                crate::poly::enumerate_monomials(DegreeConstraint::Bidegree(p, 0), true);
            assert_eq!(piece.ambient, enumerated);
        }
    }
}
