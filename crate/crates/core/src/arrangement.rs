//! Eight-plane arrangements in P^3: general-position checking, the
//! normal-form moduli slice, the complement matrix of the Kummer cover,
//! hyperelliptic (Vandermonde) points, and tangent-direction bookkeeping.

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::matrix::{vandermonde_row, Matrix};
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A validated arrangement: an 8x4 rational matrix whose rows are the
/// plane coefficients, with all seventy 4x4 minors nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement {
    a: Matrix<Rationals>,
}

/// The nine starred entries of the normal form (rows 6-8, columns 2-4).
#[derive(Clone, Debug, PartialEq)]
pub struct ModuliPoint {
    pub stars: [BigRational; 9],
}

/// A first-order deformation of the arrangement matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentDirection {
    pub adot: Matrix<Rationals>,
}

/// All 4-element row subsets of 0..8, in lexicographic order.
pub fn row_quadruples() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(70);
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                for d in c + 1..8 {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Check all seventy maximal minors exactly; returns the vanishing row sets.
pub fn vanishing_minors(a: &Matrix<Rationals>) -> Vec<[usize; 4]> {
    let mut bad = Vec::new();
    for rows in row_quadruples() {
        let sub = Matrix::from_fn(Rationals, 4, 4, |i, j| a.get(rows[i], j).clone());
        if sub.det().expect("square").eq(&Rationals.zero()) {
            bad.push(rows);
        }
    }
    bad
}

pub fn is_general_position(a: &Matrix<Rationals>) -> (bool, Vec<[usize; 4]>) {
    let bad = vanishing_minors(a);
    (bad.is_empty(), bad)
}

impl Arrangement {
    /// Validate general position and wrap the matrix.
    pub fn new(a: Matrix<Rationals>) -> Result<Self> {
        if a.rows() != 8 || a.cols() != 4 {
            return Err(Error::Shape(format!("expected 8x4, got {}x{}", a.rows(), a.cols())));
        }
        let bad = vanishing_minors(&a);
        if !bad.is_empty() {
            return Err(Error::NotGeneralPosition(bad));
        }
        Ok(Arrangement { a })
    }

    pub fn matrix(&self) -> &Matrix<Rationals> {
        &self.a
    }

    /// Rows `(1, a_i, a_i^2, a_i^3)` on pairwise distinct nodes; general
    /// position is automatic since every maximal minor is a Vandermonde
    /// determinant.
    pub fn hyperelliptic(nodes: &[BigRational]) -> Result<Self> {
        if nodes.len() != 8 {
            return Err(Error::Shape(format!("expected 8 nodes, got {}", nodes.len())));
        }
        for i in 0..8 {
            for j in i + 1..8 {
                if nodes[i] == nodes[j] {
                    return Err(Error::RepeatedNodes);
                }
            }
        }
        let rows = nodes.iter().map(vandermonde_row).collect();
        Self::new(Matrix::from_rows(Rationals, rows)?)
    }

    /// The special point on the hyperelliptic locus with nodes 1..8.
    pub fn vandermonde_1_to_8() -> Self {
        let nodes: Vec<BigRational> = (1..=8).map(|n| Rationals.from_i64(n)).collect();
        Self::hyperelliptic(&nodes).expect("distinct nodes")
    }

    /// Normal form parameters: compose a right GL4 action and row
    /// rescalings to reach rows 1-4 = identity, row 5 all ones, rows 6-8
    /// with first entry one; the stars are rows 6-8, columns 2-4.
    pub fn normalize(&self) -> ModuliPoint {
        let f = Rationals;
        // right-multiply by inverse of the top 4x4 block
        let top = Matrix::from_fn(f, 4, 4, |i, j| self.a.get(i, j).clone());
        let id = Matrix::identity(f, 4);
        let top_inv = top.solve_particular(&id).expect("shape").expect("invertible");
        let mut m = self.a.mul(&top_inv).expect("shape");
        // scale columns so row 5 becomes all ones (entries are nonzero by
        // general position), then rescale rows 1..4 back to the identity
        // and rows 6..8 to lead with one
        let d: Vec<BigRational> = (0..4).map(|j| m.get(4, j).clone()).collect();
        let mut out = Matrix::zero(f, 8, 4);
        for i in 0..8 {
            for j in 0..4 {
                out.set(i, j, &*m.get(i, j) / &d[j]);
            }
        }
        m = out;
        for i in 0..4 {
            let v = m.get(i, i).clone();
            for j in 0..4 {
                let val = &*m.get(i, j) / &v;
                m.set(i, j, val);
            }
        }
        for i in 5..8 {
            let v = m.get(i, 0).clone();
            for j in 0..4 {
                let val = &*m.get(i, j) / &v;
                m.set(i, j, val);
            }
        }
        let mut stars: Vec<BigRational> = Vec::with_capacity(9);
        for i in 5..8 {
            for j in 1..4 {
                stars.push(m.get(i, j).clone());
            }
        }
        ModuliPoint { stars: stars.try_into().expect("nine stars") }
    }

    /// The complement matrix: the RREF-canonical basis of the left kernel
    /// of A as rows, so `B * A = 0` exactly and `rank B = 4`.
    pub fn complement_matrix(&self) -> Matrix<Rationals> {
        let at = self.a.transpose();
        let ker = at.nullspace(); // 8 x 4, columns span left kernel of A
        let (b, rank, _) = ker.transpose().rref();
        assert_eq!(rank, 4, "left kernel must be 4-dimensional");
        b
    }

    /// The 16 + 8 spanning directions of the trivial (gauge) deformations:
    /// `A*g` for elementary g in gl4 and `diag(e_i)*A` for row scalings.
    /// Their span has dimension 23: the global scalar is counted twice.
    pub fn gauge_basis(&self) -> Vec<TangentDirection> {
        let f = Rationals;
        let mut out = Vec::with_capacity(24);
        for r in 0..4 {
            for c in 0..4 {
                let g = Matrix::from_fn(f, 4, 4, |i, j| {
                    if i == r && j == c {
                        f.one()
                    } else {
                        f.zero()
                    }
                });
                out.push(TangentDirection { adot: self.a.mul(&g).expect("shape") });
            }
        }
        for r in 0..8 {
            let adot = Matrix::from_fn(f, 8, 4, |i, j| {
                if i == r {
                    self.a.get(i, j).clone()
                } else {
                    f.zero()
                }
            });
            out.push(TangentDirection { adot });
        }
        out
    }

    /// One `Bdot` with `Bdot * A = -B * Adot`, free variables zero under
    /// RREF pivoting. The gauge ambiguity `Bdot -> Bdot + C*B` is killed
    /// downstream in the Jacobian-ring quotient.
    pub fn bdot_from_adot(
        &self,
        b: &Matrix<Rationals>,
        adot: &Matrix<Rationals>,
    ) -> Result<Matrix<Rationals>> {
        // solve X * A = rhs  <=>  A^T X^T = rhs^T
        let rhs = b.mul(adot)?.scale(&Rationals.from_i64(-1));
        let x = self
            .a
            .transpose()
            .solve_particular(&rhs.transpose())?
            .ok_or_else(|| Error::Invalid("inconsistent tangent system".into()))?;
        Ok(x.transpose())
    }

    /// Digest of the canonical serialized matrix, for report provenance.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let grid = self.a.to_string_grid();
        let json = serde_json::to_string(&grid).expect("serializable");
        let mut h = Sha256::new();
        h.update(json.as_bytes());
        hex_string(&h.finalize())
    }
}

pub(crate) fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl ModuliPoint {
    /// Reconstitute the normal-form matrix: rows 1-4 identity, row 5 all
    /// ones, rows 6-8 = (1, *, *, *). Validates general position.
    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let f = Rationals;
        let mut m = Matrix::zero(f, 8, 4);
        for i in 0..4 {
            m.set(i, i, f.one());
        }
        for j in 0..4 {
            m.set(4, j, f.one());
        }
        for i in 5..8 {
            m.set(i, 0, f.one());
            for j in 1..4 {
                m.set(i, j, self.stars[(i - 5) * 3 + (j - 1)].clone());
            }
        }
        Arrangement::new(m)
    }

    /// Seeded sampling: stars uniform over the integers in [-50, 50],
    /// rejecting general-position failures.
    pub fn sample(rng: &mut impl Rng) -> (ModuliPoint, Arrangement) {
        loop {
            let stars: Vec<BigRational> =
                (0..9).map(|_| Rationals.from_i64(rng.gen_range(-50..=50))).collect();
            let mp = ModuliPoint { stars: stars.try_into().expect("nine") };
            if let Ok(arr) = mp.to_arrangement() {
                return (mp, arr);
            }
        }
    }
}

impl TangentDirection {
    pub fn from_matrix(adot: Matrix<Rationals>) -> Result<Self> {
        if adot.rows() != 8 || adot.cols() != 4 {
            return Err(Error::Shape("tangent direction must be 8x4".into()));
        }
        Ok(TangentDirection { adot })
    }

    /// Coordinate direction of the moduli slice: star at row r (5..8),
    /// column c (1..4).
    pub fn moduli_star(r: usize, c: usize) -> Self {
        let f = Rationals;
        let adot = Matrix::from_fn(f, 8, 4, |i, j| {
            if i == r && j == c {
                f.one()
            } else {
                f.zero()
            }
        });
        TangentDirection { adot }
    }

    /// All nine moduli-slice coordinate directions, row-major.
    pub fn moduli_slice_directions() -> Vec<Self> {
        let mut out = Vec::with_capacity(9);
        for r in 5..8 {
            for c in 1..4 {
                out.push(Self::moduli_star(r, c));
            }
        }
        out
    }

    /// Node derivative of a hyperelliptic arrangement: row i moves along
    /// `(0, 1, 2a_i, 3a_i^2)`.
    pub fn node_derivative(i: usize, node: &BigRational) -> Self {
        let f = Rationals;
        let two = f.from_i64(2);
        let three = f.from_i64(3);
        let row = vec![f.zero(), f.one(), &two * node, &three * node * node];
        let adot = Matrix::from_fn(f, 8, 4, |r, j| {
            if r == i {
                row[j].clone()
            } else {
                f.zero()
            }
        });
        TangentDirection { adot }
    }
}

/// JSON form of an arrangement: `{"matrix": 8x4 array of rational strings}`.
#[derive(Serialize, Deserialize)]
pub struct ArrangementJson {
    pub matrix: Vec<Vec<String>>,
}

/// JSON form of a moduli point: `{"stars": 9 rational strings}`.
#[derive(Serialize, Deserialize)]
pub struct ModuliPointJson {
    pub stars: Vec<String>,
}

impl Arrangement {
    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson { matrix: self.a.to_string_grid() }
    }

    /// Accepts either JSON shape: a full matrix or a moduli point.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        if let Ok(aj) = serde_json::from_value::<ArrangementJson>(v.clone()) {
            return Self::new(Matrix::from_string_grid(&aj.matrix)?);
        }
        if let Ok(mj) = serde_json::from_value::<ModuliPointJson>(v.clone()) {
            if mj.stars.len() != 9 {
                return Err(Error::Shape("expected 9 stars".into()));
            }
            let stars: Vec<BigRational> = mj
                .stars
                .iter()
                .map(|s| crate::field::parse_rational(s))
                .collect::<Result<_>>()?;
            return ModuliPoint { stars: stars.try_into().expect("nine") }.to_arrangement();
        }
        Err(Error::Parse("expected {\"matrix\": ...} or {\"stars\": ...}".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn vandermonde_is_general_position() {
        let arr = Arrangement::vandermonde_1_to_8();
        let (ok, bad) = is_general_position(arr.matrix());
        assert!(ok);
        assert!(bad.is_empty());
    }

    #[test]
    fn repeated_rows_fail() {
        let mut m = Arrangement::vandermonde_1_to_8().matrix().clone();
        for j in 0..4 {
            let v = m.get(0, j).clone();
            m.set(1, j, v);
        }
        let (ok, bad) = is_general_position(&m);
        assert!(!ok);
        assert!(!bad.is_empty());
        assert!(Arrangement::new(m).is_err());
    }

    #[test]
    fn hyperelliptic_examples() {
        let nodes: Vec<BigRational> =
            [0, 1, -1, 2, -2, 3, -3, 4].iter().map(|&n| q(n)).collect();
        assert!(Arrangement::hyperelliptic(&nodes).is_ok());
        let repeated: Vec<BigRational> =
            [1, 2, 3, 4, 5, 6, 7, 7].iter().map(|&n| q(n)).collect();
        assert!(matches!(
            Arrangement::hyperelliptic(&repeated),
            Err(Error::RepeatedNodes)
        ));
    }

    #[test]
    fn moduli_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..5 {
            let (mp, arr) = ModuliPoint::sample(&mut rng);
            assert_eq!(arr.normalize(), mp);
        }
    }

    #[test]
    fn normalize_is_gauge_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let (_, arr) = ModuliPoint::sample(&mut rng);
        let base = arr.normalize();
        for _ in 0..5 {
            // random invertible right action
            let g = loop {
                let g = Matrix::from_fn(Rationals, 4, 4, |_, _| q(rng.gen_range(-5..=5)));
                if !Rationals.is_zero(&g.det().unwrap()) {
                    break g;
                }
            };
            let twisted = Arrangement::new(arr.matrix().mul(&g).unwrap()).unwrap();
            assert_eq!(twisted.normalize(), base);
            // random nonzero row scalings
            let mut m = arr.matrix().clone();
            for i in 0..8 {
                let lam = loop {
                    let l = q(rng.gen_range(-6..=6));
                    if !Rationals.is_zero(&l) {
                        break l;
                    }
                };
                for j in 0..4 {
                    let v = &*m.get(i, j) * &lam;
                    m.set(i, j, v);
                }
            }
            assert_eq!(Arrangement::new(m).unwrap().normalize(), base);
        }
    }

    #[test]
    fn complement_matrix_properties() {
        let arr = Arrangement::vandermonde_1_to_8();
        let b = arr.complement_matrix();
        assert!(b.mul(arr.matrix()).unwrap().is_zero());
        assert_eq!(b.rank(), 4);

        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let (_, arr2) = ModuliPoint::sample(&mut rng);
        let b2 = arr2.complement_matrix();
        assert!(b2.mul(arr2.matrix()).unwrap().is_zero());
        assert_eq!(b2.rank(), 4);
        // RREF canonical: the leading 4x4 block is the identity here
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*b2.get(i, j), if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn gauge_span_dimension_23() {
        let arr = Arrangement::vandermonde_1_to_8();
        let dirs = arr.gauge_basis();
        assert_eq!(dirs.len(), 24);
        let rows: Vec<Vec<BigRational>> = dirs
            .iter()
            .map(|d| {
                (0..8)
                    .flat_map(|i| (0..4).map(move |j| d.adot.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(Rationals, rows).unwrap();
        assert_eq!(m.rank(), 23);
    }

    #[test]
    fn bdot_solves_and_is_linear() {
        let arr = Arrangement::vandermonde_1_to_8();
        let b = arr.complement_matrix();
        // Adot = 0 -> Bdot = 0
        let zero = Matrix::zero(Rationals, 8, 4);
        let bd = arr.bdot_from_adot(&b, &zero).unwrap();
        assert!(bd.is_zero());
        // defining property and linearity on random directions
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let r1 = Matrix::from_fn(Rationals, 8, 4, |_, _| q(rng.gen_range(-9..=9)));
        let r2 = Matrix::from_fn(Rationals, 8, 4, |_, _| q(rng.gen_range(-9..=9)));
        let b1 = arr.bdot_from_adot(&b, &r1).unwrap();
        assert_eq!(
            b1.mul(arr.matrix()).unwrap(),
            b.mul(&r1).unwrap().scale(&q(-1))
        );
        let b2 = arr.bdot_from_adot(&b, &r2).unwrap();
        let bsum = arr.bdot_from_adot(&b, &r1.add(&r2).unwrap()).unwrap();
        assert_eq!(bsum, b1.add(&b2).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let arr = Arrangement::vandermonde_1_to_8();
        let v = serde_json::to_value(arr.to_json()).unwrap();
        let back = Arrangement::from_json_value(&v).unwrap();
        assert_eq!(back, arr);

        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let (mp, arr2) = ModuliPoint::sample(&mut rng);
        let stars: Vec<String> =
            mp.stars.iter().map(crate::field::rational_to_string).collect();
        let mj = serde_json::json!({ "stars": stars });
        let a2 = Arrangement::from_json_value(&mj).unwrap();
        assert_eq!(a2, arr2);
    }
}
