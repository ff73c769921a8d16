//! Exact dense linear algebra: RREF, rank, nullspace, determinant, solving.
//!
//! Deterministic pivoting throughout: the pivot for each column is the first
//! nonzero entry scanning top to bottom, columns left to right. This makes
//! every reduced form, kernel basis and particular solution reproducible
//! across runs, which the downstream basis choices rely on.

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use num_rational::BigRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, entries }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { field, rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, entries }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Mismatch("matrices over different fields".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("add shape mismatch".into()));
        }
        let f = self.field.clone();
        Ok(Self::from_fn(f.clone(), self.rows, self.cols, |i, j| {
            f.add(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field.clone();
        Self::from_fn(f.clone(), self.rows, self.cols, |i, j| f.mul(self.get(i, j), c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    /// Reduced row echelon form with deterministic pivoting.
    /// Returns `(rref, rank, pivot_columns)`.
    pub fn rref(&self) -> (Self, usize, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut pr = None;
            for i in r..m.rows {
                if !f.is_zero(m.get(i, c)) {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.mul_sub(m.get(i, j), &factor, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the right kernel, as matrix columns, in RREF-canonical form:
    /// the basis vector for free column `c` has entry one at `c` and zeros at
    /// the other free columns.
    pub fn nullspace(&self) -> Self {
        let f = self.field.clone();
        let (r, _, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zero(f.clone(), self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let f = self.field.clone();
        let n = self.rows;
        if n == 0 {
            return Ok(f.one());
        }
        let mut m = self.clone();
        let mut prev = f.one();
        let mut sign = false;
        for k in 0..n - 1 {
            if f.is_zero(m.get(k, k)) {
                let mut swap = None;
                for i in k + 1..n {
                    if !f.is_zero(m.get(i, k)) {
                        swap = Some(i);
                        break;
                    }
                }
                let Some(s) = swap else { return Ok(f.zero()) };
                for j in 0..n {
                    let a = m.get(k, j).clone();
                    let b = m.get(s, j).clone();
                    m.set(k, j, b);
                    m.set(s, j, a);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // Bareiss update: all divisions are exact
                    let num = f.sub(
                        &f.mul(m.get(i, j), m.get(k, k)),
                        &f.mul(m.get(i, k), m.get(k, j)),
                    );
                    m.set(i, j, f.div(&num, &prev));
                }
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign { f.neg(&d) } else { d })
    }

    /// One solution `X` of `self * X = rhs`, free variables set to zero under
    /// RREF pivoting; `None` when the system is inconsistent.
    pub fn solve_particular(&self, rhs: &Self) -> Result<Option<Self>> {
        self.check_same_field(rhs)?;
        if rhs.rows != self.rows {
            return Err(Error::Shape(format!(
                "rhs has {} rows, expected {}",
                rhs.rows, self.rows
            )));
        }
        let f = self.field.clone();
        // augmented RREF
        let mut aug = Self::zero(f.clone(), self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        let (r, _, pivots) = aug.rref();
        // inconsistent iff a pivot lands in the rhs block
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zero(f, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }
}

impl Matrix<Rationals> {
    /// Entrywise reduction mod p; fails when a denominator vanishes mod p.
    pub fn reduce_mod(&self, fp: PrimeField) -> Result<Matrix<PrimeField>> {
        let mut out = Matrix::zero(fp, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = fp
                    .from_rational(self.get(i, j))
                    .ok_or_else(|| Error::BadPrime(fp.modulus(), self.get(i, j).to_string()))?;
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn to_string_grid(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| crate::field::rational_to_string(self.get(i, j))).collect())
            .collect()
    }

    pub fn from_string_grid(grid: &[Vec<String>]) -> Result<Self> {
        let rows = grid
            .iter()
            .map(|row| row.iter().map(|s| crate::field::parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(Rationals, rows)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let f = Rationals;
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| f.from_i64(v)).collect())
            .collect();
        Self::from_rows(f, data).expect("rectangular")
    }
}

/// Vandermonde row `(1, a, a^2, a^3)`.
pub fn vandermonde_row(a: &BigRational) -> Vec<BigRational> {
    vec![
        BigRational::from_integer(1.into()),
        a.clone(),
        a * a,
        a * a * a,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn rref_identity() {
        let m = Matrix::identity(Rationals, 4);
        let (r, rank, piv) = m.rref();
        assert_eq!(rank, 4);
        assert_eq!(piv, vec![0, 1, 2, 3]);
        assert_eq!(r, m);
    }

    #[test]
    fn rref_zero() {
        let m = Matrix::zero(Rationals, 3, 5);
        let (_, rank, piv) = m.rref();
        assert_eq!(rank, 0);
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_idempotent() {
        let m = Matrix::from_i64_rows(&[&[3, 1, 4, 1], &[5, 9, 2, 6], &[8, 10, 6, 7]]);
        let (r1, _, _) = m.rref();
        let (r2, _, _) = r1.rref();
        assert_eq!(r1, r2);
    }

    #[test]
    fn vandermonde_rank_det() {
        let rows: Vec<Vec<BigRational>> =
            (1..=4).map(|a| vandermonde_row(&q(a))).collect();
        let m = Matrix::from_rows(Rationals, rows).unwrap();
        assert_eq!(m.rank(), 4);
        // det = prod_{i<j} (a_j - a_i) = 12 for nodes 1,2,3,4
        assert_eq!(m.det().unwrap(), q(12));
    }

    #[test]
    fn det_examples() {
        assert_eq!(Matrix::identity(Rationals, 3).det().unwrap(), q(1));
        let m = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.det().unwrap(), q(-2));
        assert!(Matrix::zero(Rationals, 2, 3).det().is_err());
    }

    #[test]
    fn det_multiplicative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = Matrix::from_fn(Rationals, 4, 4, |_, _| q(rng.gen_range(-9..=9)));
            let b = Matrix::from_fn(Rationals, 4, 4, |_, _| q(rng.gen_range(-9..=9)));
            let lhs = a.mul(&b).unwrap().det().unwrap();
            let rhs = a.det().unwrap() * b.det().unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn nullspace_examples() {
        let m = Matrix::identity(Rationals, 4);
        assert_eq!(m.nullspace().cols(), 0);

        let m = Matrix::from_i64_rows(&[&[1, -1]]);
        let ns = m.nullspace();
        assert_eq!(ns.cols(), 1);
        assert_eq!(*ns.get(0, 0), q(1));
        assert_eq!(*ns.get(1, 0), q(1));
        assert!(m.mul(&ns).unwrap().is_zero());
    }

    #[test]
    fn nullspace_exact_on_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let m = Matrix::from_fn(Rationals, 3, 6, |_, _| q(rng.gen_range(-5..=5)));
            let ns = m.nullspace();
            assert!(m.mul(&ns).unwrap().is_zero());
            assert_eq!(ns.cols(), 6 - m.rank());
        }
    }

    #[test]
    fn solve_particular_examples() {
        let id = Matrix::identity(Rationals, 3);
        let rhs = Matrix::from_i64_rows(&[&[1], &[2], &[3]]);
        assert_eq!(id.solve_particular(&rhs).unwrap().unwrap(), rhs);

        let m = Matrix::from_i64_rows(&[&[1, 1]]);
        let rhs = Matrix::from_i64_rows(&[&[2]]);
        let x = m.solve_particular(&rhs).unwrap().unwrap();
        assert_eq!(*x.get(0, 0), q(2));
        assert_eq!(*x.get(1, 0), q(0));

        let m = Matrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let rhs = Matrix::from_i64_rows(&[&[1], &[2]]);
        assert!(m.solve_particular(&rhs).unwrap().is_none());
    }

    #[test]
    fn rank_agrees_mod_p() {
        use rand::{Rng, SeedableRng};
        let fp = PrimeField::new(32003).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..15 {
            let m = Matrix::from_fn(Rationals, 4, 5, |_, _| q(rng.gen_range(-20..=20)));
            let mp = m.reduce_mod(fp).unwrap();
            assert_eq!(m.rank(), mp.rank());
        }
    }
}

/// Modular kernel computation with exact certification, for matrices whose
/// direct rational elimination would be too slow.
///
/// The kernel basis (RREF-canonical columns) is computed mod a large prime,
/// reconstructed to rationals by CRT + rational reconstruction over as many
/// primes as needed, and then certified exactly: each reconstructed vector
/// must satisfy `M v = 0` in rational arithmetic. Together with the mod-p
/// rank this pins the rational kernel dimension exactly: a verified
/// k-dimensional kernel gives `rank_Q <= cols - k`, and `rank_Q >= rank_p =
/// cols - k` at the witness prime.
pub mod certified {
    use super::*;
    use crate::field::{is_prime, rational_reconstruct};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};

    /// 31-bit primes scanning down from 2^31 - 1.
    pub fn prime_stream() -> impl Iterator<Item = u64> {
        (0..(1u64 << 31)).rev().filter(|&n| is_prime(n))
    }

    pub fn certified_nullspace(m: &Matrix<Rationals>) -> Matrix<Rationals> {
        let cols = m.cols();
        let mut primes = prime_stream();
        'outer: loop {
            // pick a structure prime where the matrix reduces
            let (p0, ker0) = loop {
                let p = primes.next().expect("primes");
                let Ok(fp) = PrimeField::new(p) else { continue };
                if let Ok(mp) = m.reduce_mod(fp) {
                    break (p, mp.nullspace());
                }
            };
            let k = ker0.cols();
            if k == 0 {
                // kernel is zero mod p0, hence zero over Q
                return Matrix::zero(Rationals, cols, 0);
            }
            // CRT accumulation across primes with identical pivot structure
            let mut modulus = BigInt::from(p0);
            let mut entries: Vec<Vec<BigInt>> = (0..cols)
                .map(|i| (0..k).map(|j| BigInt::from(*ker0.get(i, j))).collect())
                .collect();
            loop {
                // attempt reconstruction
                if let Some(candidate) = try_reconstruct(&entries, &modulus, cols, k) {
                    if m.mul(&candidate).map(|prod| prod.is_zero()).unwrap_or(false) {
                        return candidate;
                    }
                }
                // add another prime
                let p = loop {
                    let p = primes.next().expect("primes");
                    if let Ok(fp) = PrimeField::new(p) {
                        if m.reduce_mod(fp).is_ok() {
                            break p;
                        }
                    }
                };
                let fp = PrimeField::new(p).expect("prime");
                let mp = m.reduce_mod(fp).expect("checked");
                let kp = mp.nullspace();
                if kp.cols() != k {
                    // inconsistent structure: restart with a fresh prime
                    continue 'outer;
                }
                // CRT merge
                let pb = BigInt::from(p);
                let inv = {
                    let m0 = (&modulus % &pb).to_u64_digits().1;
                    let m0 = if m0.is_empty() { 0u64 } else { m0[0] };
                    BigInt::from(fp.inv(&(m0 % p)))
                };
                for i in 0..cols {
                    for j in 0..k {
                        let cur = &entries[i][j];
                        let target = BigInt::from(*kp.get(i, j));
                        let diff = (&target - cur) * &inv;
                        let diff = diff.mod_floor(&pb);
                        entries[i][j] = cur + &modulus * diff;
                    }
                }
                modulus *= pb;
                if modulus.bits() > 40_000 {
                    // flatly refuse to loop forever; fall back to the exact path
                    return m.nullspace();
                }
            }
        }
    }

    fn try_reconstruct(
        entries: &[Vec<BigInt>],
        modulus: &BigInt,
        cols: usize,
        k: usize,
    ) -> Option<Matrix<Rationals>> {
        let mut out = Matrix::zero(Rationals, cols, k);
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if e.is_one() {
                    out.set(i, j, Rationals.one());
                    continue;
                }
                let q = rational_reconstruct(e, modulus)?;
                out.set(i, j, q);
            }
        }
        Some(out)
    }
}
