//! Reference model varieties for characteristic-subvariety comparison:
//! the Segre P^2 x P^2 in P^8, the Veronese P^2 in P^5, and the disjoint
//! union of a smooth quadric in a hyperplane with an off-hyperplane point.

use crate::error::Result;
use crate::field::{Field, Rationals};
use crate::groebner::{intersect, Ideal};
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// 2x2 minors of a generic 3x3 matrix of coordinates: P^2 x P^2 in P^8.
    Segre22,
    /// 2x2 minors of a generic symmetric 3x3 matrix: P^2 in P^5.
    Veronese2,
    /// A smooth quadric inside the hyperplane z9 = 0, together with the
    /// point (0:...:0:1); not equidimensional.
    QuadricPlusPoint,
}

impl ModelKind {
    pub fn parse(s: &str) -> Option<ModelKind> {
        match s {
            "segre22" => Some(ModelKind::Segre22),
            "veronese2" => Some(ModelKind::Veronese2),
            "quadric_plus_point" => Some(ModelKind::QuadricPlusPoint),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ModelKind::Segre22 => "segre22",
            ModelKind::Veronese2 => "veronese2",
            ModelKind::QuadricPlusPoint => "quadric_plus_point",
        }
    }
}

fn zring(n: usize) -> std::sync::Arc<PolyRing<Rationals>> {
    PolyRing::new(
        Rationals,
        (1..=n).map(|i| format!("z{i}")).collect(),
        MonomialOrder::GrevLex,
    )
}

pub fn reference_model(kind: ModelKind) -> Result<Ideal<Rationals>> {
    let f = Rationals;
    match kind {
        ModelKind::Segre22 => {
            let ring = zring(9);
            // matrix entries z1..z9 row-major
            let entry = |r: usize, c: usize| 3 * r + c;
            let mut gens = Vec::new();
            for r1 in 0..3 {
                for r2 in r1 + 1..3 {
                    for c1 in 0..3 {
                        for c2 in c1 + 1..3 {
                            let mut e1 = vec![0u16; 9];
                            e1[entry(r1, c1)] += 1;
                            e1[entry(r2, c2)] += 1;
                            let mut e2 = vec![0u16; 9];
                            e2[entry(r1, c2)] += 1;
                            e2[entry(r2, c1)] += 1;
                            gens.push(Poly::from_terms(
                                &ring,
                                vec![
                                    (Monomial::from_exponents(&e1), f.one()),
                                    (Monomial::from_exponents(&e2), f.neg(&f.one())),
                                ],
                            ));
                        }
                    }
                }
            }
            Ideal::new(ring, gens)
        }
        ModelKind::Veronese2 => {
            let ring = zring(6);
            // symmetric matrix [[z1,z2,z3],[z2,z4,z5],[z3,z5,z6]]
            let sym = [[0usize, 1, 2], [1, 3, 4], [2, 4, 5]];
            let mut gens = Vec::new();
            for r1 in 0..3 {
                for r2 in r1 + 1..3 {
                    for c1 in 0..3 {
                        for c2 in c1 + 1..3 {
                            let mut e1 = vec![0u16; 6];
                            e1[sym[r1][c1]] += 1;
                            e1[sym[r2][c2]] += 1;
                            let mut e2 = vec![0u16; 6];
                            e2[sym[r1][c2]] += 1;
                            e2[sym[r2][c1]] += 1;
                            if e1 == e2 {
                                continue;
                            }
                            gens.push(Poly::from_terms(
                                &ring,
                                vec![
                                    (Monomial::from_exponents(&e1), f.one()),
                                    (Monomial::from_exponents(&e2), f.neg(&f.one())),
                                ],
                            ));
                        }
                    }
                }
            }
            Ideal::new(ring, gens)
        }
        ModelKind::QuadricPlusPoint => {
            let ring = zring(9);
            // component ideals: quadric in the hyperplane, and the point
            let mut quad_terms = Vec::new();
            for i in 0..8 {
                let mut e = vec![0u16; 9];
                e[i] = 2;
                quad_terms.push((Monomial::from_exponents(&e), f.one()));
            }
            let quadric_component = Ideal::new(
                ring.clone(),
                vec![
                    Poly::var(&ring, 8),
                    Poly::from_terms(&ring, quad_terms),
                ],
            )?;
            let point_component =
                Ideal::new(ring.clone(), (0..8).map(|i| Poly::var(&ring, i)).collect())?;
            intersect(&quadric_component, &point_component)
        }
    }
}
