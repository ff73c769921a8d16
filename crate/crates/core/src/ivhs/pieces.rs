//! Bigraded pieces of the Jacobian ring and their reduction operators.
//!
//! The bidegree-(p,0) piece is the span of monomials with x-degree 2p and
//! y-degree p, modulo monomial multiples of the Jacobian generators landing
//! there. The relation space splits along the sign-change characters (the
//! x-exponent parity vector), and within one character it has a two-step
//! structure: the x-partial multiples act block-diagonally over the
//! x-monomials, and the quadric multiples couple blocks. The quotient
//! dimension and its annihilator functionals are computed exactly by
//! quotienting the blocks first (small exact eliminations) and then taking
//! the certified kernel of the projected quadric relations.

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::matrix::{certified::certified_nullspace, Matrix};
use crate::poly::{Monomial, MonomialOrder, Poly};
use num_rational::BigRational;
use smallvec::SmallVec;
use std::collections::HashMap;

/// All exponent vectors of length `n` and total degree `d`, in a fixed
/// generation order.
pub(crate) fn exponents(n: usize, d: u16) -> Vec<SmallVec<[u16; 8]>> {
    let mut out = Vec::new();
    let mut cur: SmallVec<[u16; 8]> = smallvec::smallvec![0; n];
    fn rec(out: &mut Vec<SmallVec<[u16; 8]>>, cur: &mut SmallVec<[u16; 8]>, pos: usize, left: u16) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(SmallVec::new());
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, d);
    out
}

/// Assemble the 12-variable monomial `x^(2a + chi) * y^b`.
fn xy_monomial(a_half: &[u16], chi: &[u16; 8], b: &[u16]) -> Monomial {
    let mut e = [0u16; 12];
    for j in 0..8 {
        e[j] = 2 * a_half[j] + chi[j];
    }
    for i in 0..4 {
        e[8 + i] = b[i];
    }
    Monomial::from_exponents(&e)
}

/// One character block of a bidegree-(p,0) piece: ambient monomials have
/// x-exponent parity `chi`.
struct CharacterBlock<'a, F: Field> {
    field: F,
    b: &'a Matrix<F>,
    p: u16,
    chi: [u16; 8],
    /// x-monomial half-exponents: x-part of an ambient monomial is
    /// `2*half + chi`.
    x_halves: Vec<SmallVec<[u16; 8]>>,
    y_top: Vec<SmallVec<[u16; 8]>>,
    y_low: Vec<SmallVec<[u16; 8]>>,
    y_top_index: HashMap<SmallVec<[u16; 8]>, usize>,
}

struct BlockData<F: Field> {
    /// Per x-monomial: complement functionals on the degree-p y-space
    /// (rows of a small matrix, columns indexed by `y_top`). These span
    /// exactly the functionals vanishing on the x-partial relations of the
    /// block.
    funcs: Vec<Matrix<F>>,
    offsets: Vec<usize>,
    reduced_dim: usize,
}

impl<'a, F: Field> CharacterBlock<'a, F> {
    fn new(field: F, b: &'a Matrix<F>, p: u16, chi: [u16; 8]) -> Option<Self> {
        let chi_weight: u16 = chi.iter().sum();
        if chi_weight > 2 * p || (2 * p - chi_weight) % 2 != 0 {
            return None;
        }
        let x_halves = exponents(8, (2 * p - chi_weight) / 2);
        let y_top = exponents(4, p);
        let y_low = if p >= 1 { exponents(4, p - 1) } else { Vec::new() };
        let y_top_index = y_top.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Some(CharacterBlock { field, b, p, chi, x_halves, y_top, y_low, y_top_index })
    }

    /// Step 1: per x-monomial, quotient by the span of `y^b * l_j` for `j`
    /// in the support of the x-monomial.
    fn block_data(&self) -> BlockData<F> {
        let f = &self.field;
        let d = self.y_top.len();
        let mut funcs = Vec::with_capacity(self.x_halves.len());
        let mut offsets = Vec::with_capacity(self.x_halves.len());
        let mut total = 0usize;
        for a in &self.x_halves {
            let supp: Vec<usize> =
                (0..8).filter(|&j| 2 * a[j] + self.chi[j] > 0).collect();
            let mut rows: Vec<Vec<F::Elem>> = Vec::new();
            for &j in &supp {
                for b_low in &self.y_low {
                    let mut row = vec![f.zero(); d];
                    for i in 0..4 {
                        let c = self.b.get(i, j);
                        if f.is_zero(c) {
                            continue;
                        }
                        let mut bb = b_low.clone();
                        bb[i] += 1;
                        let idx = self.y_top_index[&bb];
                        row[idx] = f.add(&row[idx], c);
                    }
                    rows.push(row);
                }
            }
            let fns = if rows.is_empty() {
                Matrix::identity(f.clone(), d)
            } else {
                let m = Matrix::from_rows(f.clone(), rows).expect("rectangular");
                m.nullspace().transpose()
            };
            offsets.push(total);
            total += fns.rows();
            funcs.push(fns);
        }
        BlockData { funcs, offsets, reduced_dim: total }
    }

    /// Step 2: project the quadric multiples `m * f_i` into the reduced
    /// coordinates. Rows are dropped when identically zero.
    fn projected_quadric_rows(&self, data: &BlockData<F>) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        if self.p == 0 {
            return Vec::new();
        }
        // x-part of the multiplier: degree 2p - 2 with parity chi
        let chi_weight: u16 = self.chi.iter().sum();
        if 2 * self.p - 2 < chi_weight {
            return Vec::new();
        }
        let m_halves = exponents(8, (2 * self.p - 2 - chi_weight) / 2);
        // index of x-half within the block
        let half_index: HashMap<&[u16], usize> = self
            .x_halves
            .iter()
            .enumerate()
            .map(|(i, m)| (m.as_slice(), i))
            .collect();
        let mut rows = Vec::new();
        for i in 0..4 {
            for a2 in &m_halves {
                for b in &self.y_top {
                    let b_idx = self.y_top_index[b];
                    let mut row = vec![f.zero(); data.reduced_dim];
                    let mut nonzero = false;
                    for j in 0..8 {
                        let c = self.b.get(i, j);
                        if f.is_zero(c) {
                            continue;
                        }
                        let mut aa = a2.clone();
                        aa[j] += 1;
                        let blk = half_index[aa.as_slice()];
                        let fns = &data.funcs[blk];
                        let off = data.offsets[blk];
                        for k in 0..fns.rows() {
                            let v = fns.get(k, b_idx);
                            if f.is_zero(v) {
                                continue;
                            }
                            row[off + k] = f.add(&row[off + k], &f.mul(c, v));
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// Quotient dimension of this character block.
    fn dimension(&self) -> usize {
        let data = self.block_data();
        let rows = self.projected_quadric_rows(&data);
        if rows.is_empty() {
            return data.reduced_dim;
        }
        let m = Matrix::from_rows(self.field.clone(), rows).expect("rectangular");
        data.reduced_dim - m.rank()
    }
}

/// Dimension of the full bidegree-(p,0) piece over the given field, as the
/// sum of character-block dimensions.
pub(crate) fn full_dimension<F: Field>(field: &F, b: &Matrix<F>, p: u16) -> usize {
    let mut total = 0usize;
    for mask in 0u16..256 {
        let chi: [u16; 8] = std::array::from_fn(|j| (mask >> j) & 1);
        if let Some(block) = CharacterBlock::new(field.clone(), b, p, chi) {
            total += block.dimension();
        }
    }
    total
}

/// A bigraded piece with its chosen monomial basis and reduction operator.
///
/// The reduction operator is stored as the RREF'd matrix of annihilator
/// functionals over the ambient monomials (ascending grevlex); its pivot
/// columns are the chosen basis, so the class coordinates of an ambient
/// vector `w` are just the matrix-vector product.
#[derive(Clone, Debug)]
pub struct GradedPieceBasis {
    pub level: u16,
    pub invariant_only: bool,
    pub ambient: Vec<Monomial>,
    pub basis_positions: Vec<usize>,
    pub basis_monomials: Vec<Monomial>,
    reduction: Matrix<Rationals>,
    ambient_index: HashMap<Monomial, usize>,
    relation_rows: Vec<Vec<(usize, BigRational)>>,
}

impl GradedPieceBasis {
    pub fn dim(&self) -> usize {
        self.basis_positions.len()
    }

    /// Class coordinates of a sparse ambient vector.
    pub fn reduce_terms(&self, terms: &[(Monomial, BigRational)]) -> Result<Vec<BigRational>> {
        let f = Rationals;
        let mut out = vec![f.zero(); self.dim()];
        for (m, c) in terms {
            let col = *self
                .ambient_index
                .get(m)
                .ok_or_else(|| Error::Invalid(format!("monomial outside the piece: {:?}", m)))?;
            for (r, slot) in out.iter_mut().enumerate() {
                let k = self.reduction.get(r, col);
                if !f.is_zero(k) {
                    *slot = f.add(slot, &f.mul(k, c));
                }
            }
        }
        Ok(out)
    }

    pub fn reduce_poly(&self, p: &Poly<Rationals>) -> Result<Vec<BigRational>> {
        self.reduce_terms(
            &p.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect::<Vec<_>>(),
        )
    }

    /// The relation generators as sparse ambient vectors (monomial multiples
    /// of the Jacobian generators landing in the piece, character-filtered).
    pub fn relation_rows(&self) -> &[Vec<(usize, BigRational)>] {
        &self.relation_rows
    }

    /// The reduction operator annihilates exactly the relation space: every
    /// relation row reduces to zero, and the operator has full rank `dim`.
    pub fn verify_quotient_consistency(&self) -> bool {
        let f = Rationals;
        for row in &self.relation_rows {
            let mut img = vec![f.zero(); self.dim()];
            for (col, c) in row {
                for (r, slot) in img.iter_mut().enumerate() {
                    let k = self.reduction.get(r, *col);
                    if !f.is_zero(k) {
                        *slot = f.add(slot, &f.mul(k, c));
                    }
                }
            }
            if img.iter().any(|v| !f.is_zero(v)) {
                return false;
            }
        }
        // basis columns carry the identity: reduction is a projection
        for (r, &pos) in self.basis_positions.iter().enumerate() {
            for rr in 0..self.dim() {
                let v = self.reduction.get(rr, pos);
                let expect = if rr == r { f.one() } else { f.zero() };
                if *v != expect {
                    return false;
                }
            }
        }
        true
    }
}

/// Build the invariant bidegree-(p,0) piece exactly over Q.
///
/// The invariant characters are the all-even and all-odd parity vectors;
/// the all-odd block needs x-degree at least 8 and is empty for p <= 3.
pub(crate) fn invariant_piece(b: &Matrix<Rationals>, p: u16) -> Result<GradedPieceBasis> {
    let f = Rationals;
    let even = [0u16; 8];
    let odd = [1u16; 8];
    let mut blocks: Vec<CharacterBlock<Rationals>> = Vec::new();
    if let Some(blk) = CharacterBlock::new(f, b, p, even) {
        blocks.push(blk);
    }
    if let Some(blk) = CharacterBlock::new(f, b, p, odd) {
        blocks.push(blk);
    }

    // ambient across blocks, then sorted ascending grevlex
    let order = MonomialOrder::GrevLex;
    let mut ambient: Vec<Monomial> = Vec::new();
    for blk in &blocks {
        for a in &blk.x_halves {
            for y in &blk.y_top {
                ambient.push(xy_monomial(a, &blk.chi, y));
            }
        }
    }
    ambient.sort_by(|a, b| order.cmp(a, b));
    let ambient_index: HashMap<Monomial, usize> =
        ambient.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let n = ambient.len();

    // kernel functionals per block, pulled back to the ambient
    let mut kernel_rows: Vec<Vec<BigRational>> = Vec::new();
    let mut relation_rows: Vec<Vec<(usize, BigRational)>> = Vec::new();
    for blk in &blocks {
        let data = blk.block_data();
        let rows = blk.projected_quadric_rows(&data);
        let kern = if rows.is_empty() {
            Matrix::identity(Rationals, data.reduced_dim)
        } else {
            let m = Matrix::from_rows(Rationals, rows).expect("rectangular");
            certified_nullspace(&m)
        };
        // pull back: ambient functional value at (a, y) is
        // sum_k kern[(a,k)] * funcs_a[k][y]
        for col in 0..kern.cols() {
            let mut mu = vec![Rationals.zero(); n];
            for (bi, a) in blk.x_halves.iter().enumerate() {
                let fns = &data.funcs[bi];
                let off = data.offsets[bi];
                for k in 0..fns.rows() {
                    let kv = kern.get(off + k, col);
                    if Rationals.is_zero(kv) {
                        continue;
                    }
                    for (yi, y) in blk.y_top.iter().enumerate() {
                        let fv = fns.get(k, yi);
                        if Rationals.is_zero(fv) {
                            continue;
                        }
                        let idx = ambient_index[&xy_monomial(a, &blk.chi, y)];
                        mu[idx] = Rationals.add(&mu[idx], &Rationals.mul(kv, fv));
                    }
                }
            }
            kernel_rows.push(mu);
        }
        relation_rows.extend(explicit_relations(blk, &ambient_index));
    }

    let k = Matrix::from_rows(Rationals, kernel_rows).expect("rectangular");
    let (reduction, rank, pivots) = k.rref();
    assert_eq!(rank, reduction.rows().min(k.rows()), "kernel functionals independent");
    let basis_positions = pivots;
    let basis_monomials: Vec<Monomial> =
        basis_positions.iter().map(|&c| ambient[c].clone()).collect();
    Ok(GradedPieceBasis {
        level: p,
        invariant_only: true,
        ambient,
        basis_positions,
        basis_monomials,
        reduction,
        ambient_index,
        relation_rows,
    })
}

/// The character-filtered relation generators of a block, as sparse ambient
/// vectors: `2 x^c y^b l_j` over `j` in the support of `x^c`, and
/// `x^(2a'') y^b f_i`.
fn explicit_relations(
    blk: &CharacterBlock<Rationals>,
    ambient_index: &HashMap<Monomial, usize>,
) -> Vec<Vec<(usize, BigRational)>> {
    let f = Rationals;
    let two = f.from_i64(2);
    let mut out = Vec::new();
    // x-partial multiples
    for a in &blk.x_halves {
        for j in (0..8).filter(|&j| 2 * a[j] + blk.chi[j] > 0) {
            for b_low in &blk.y_low {
                let mut row = Vec::new();
                for i in 0..4 {
                    let c = blk.b.get(i, j);
                    if f.is_zero(c) {
                        continue;
                    }
                    let mut bb = b_low.clone();
                    bb[i] += 1;
                    let idx = ambient_index[&xy_monomial(a, &blk.chi, &bb)];
                    row.push((idx, &two * c));
                }
                if !row.is_empty() {
                    out.push(row);
                }
            }
        }
    }
    // quadric multiples
    let chi_weight: u16 = blk.chi.iter().sum();
    if blk.p >= 1 && 2 * blk.p - 2 >= chi_weight {
        let m_halves = exponents(8, (2 * blk.p - 2 - chi_weight) / 2);
        for i in 0..4 {
            for a2 in &m_halves {
                for b in &blk.y_top {
                    let mut row = Vec::new();
                    for j in 0..8 {
                        let c = blk.b.get(i, j);
                        if f.is_zero(c) {
                            continue;
                        }
                        let mut aa = a2.clone();
                        aa[j] += 1;
                        let idx = ambient_index[&xy_monomial(&aa, &blk.chi, b)];
                        row.push((idx, c.clone()));
                    }
                    if !row.is_empty() {
                        out.push(row);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::field::PrimeField;

    #[test]
    fn invariant_dims_at_vandermonde() {
        let arr = Arrangement::vandermonde_1_to_8();
        let b = arr.complement_matrix();
        let mut dims = Vec::new();
        for p in 0..=3u16 {
            let piece = invariant_piece(&b, p).unwrap();
            dims.push(piece.dim());
            assert!(piece.verify_quotient_consistency());
        }
        assert_eq!(dims, vec![1, 9, 9, 1]);
    }

    #[test]
    fn invariant_ambient_sizes() {
        let arr = Arrangement::vandermonde_1_to_8();
        let b = arr.complement_matrix();
        let sizes: Vec<usize> =
            (0..=3u16).map(|p| invariant_piece(&b, p).unwrap().ambient.len()).collect();
        assert_eq!(sizes, vec![1, 32, 360, 2400]);
    }

    #[test]
    fn full_dims_mod_p_at_vandermonde() {
        let arr = Arrangement::vandermonde_1_to_8();
        let fp = PrimeField::new(32003).unwrap();
        let b = arr.complement_matrix().reduce_mod(fp).unwrap();
        let dims: Vec<usize> = (0..=3u16).map(|p| full_dimension(&fp, &b, p)).collect();
        assert_eq!(dims, vec![1, 65, 65, 1]);
    }
}
