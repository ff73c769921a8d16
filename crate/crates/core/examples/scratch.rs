//! scratch: find the span hyperplane of V(a2) mod p by slicing and
//! extracting rational points, then match against the paper coefficients.
use octic_core::arrangement::Arrangement;
use octic_core::field::{Field, PrimeField};
use octic_core::groebner::Ideal;
use octic_core::ivhs::{build_jacobian, characteristic_ideal};
use octic_core::matrix::Matrix;
use octic_core::poly::{Monomial, MonomialOrder, Poly, PolyRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn roots_mod_p(fp: &PrimeField, poly: &[u64]) -> Vec<u64> {
    // brute force over F_p
    let p = fp.modulus();
    let mut out = Vec::new();
    for x in 0..p {
        let mut acc = 0u64;
        for c in poly.iter().rev() {
            acc = fp.add(&fp.mul(&acc, &x), c);
        }
        if acc == 0 {
            out.push(x);
        }
    }
    out
}

/// dense univariate coefficients of a poly in variable `v`, if univariate
fn as_univariate(g: &Poly<PrimeField>, nvars: usize) -> Option<(usize, Vec<u64>)> {
    let mut var = None;
    for (m, _) in g.terms() {
        for i in 0..nvars {
            if m.0[i] > 0 {
                match var {
                    None => var = Some(i),
                    Some(v) if v == i => {}
                    _ => return None,
                }
            }
        }
    }
    let v = var?;
    let deg = g.terms().iter().map(|(m, _)| m.0[v]).max().unwrap() as usize;
    let mut coeffs = vec![0u64; deg + 1];
    for (m, c) in g.terms() {
        coeffs[m.0[v] as usize] = *c;
    }
    Some((v, coeffs))
}

fn solve_zero_dim(
    ring: &Arc<PolyRing<PrimeField>>,
    gens: Vec<Poly<PrimeField>>,
    fp: &PrimeField,
) -> Vec<Vec<u64>> {
    let n = ring.nvars();
    let ideal = Ideal::new(ring.clone(), gens).unwrap();
    let gb = ideal.groebner_basis();
    if gb.is_unit() {
        return Vec::new();
    }
    // find a univariate element; substitute each rational root; recurse
    for g in gb.elems() {
        if let Some((v, coeffs)) = as_univariate(g, n) {
            let mut points = Vec::new();
            for r in roots_mod_p(fp, &coeffs) {
                // substitute z_v = r
                let images: Vec<Poly<PrimeField>> = (0..n)
                    .map(|i| {
                        if i == v {
                            Poly::constant(ring, r)
                        } else {
                            Poly::var(ring, i)
                        }
                    })
                    .collect();
                let sub: Vec<Poly<PrimeField>> = gb
                    .elems()
                    .iter()
                    .map(|h| h.substitute(&images).unwrap())
                    .filter(|h| !h.is_zero())
                    .collect();
                if sub.is_empty() {
                    continue; // positive-dimensional residue; skip
                }
                if sub.iter().any(|h| h.total_degree() == 0) {
                    continue;
                }
                // solved all variables?
                let remaining: Vec<usize> = (0..n)
                    .filter(|&i| i != v && sub.iter().any(|h| h.terms().iter().any(|(m, _)| m.0[i] > 0)))
                    .collect();
                if remaining.is_empty() {
                    // other variables unconstrained? only accept full points
                    continue;
                }
                for mut pt in solve_zero_dim(ring, sub, fp) {
                    pt[v] = r;
                    points.push(pt);
                }
            }
            return points;
        }
    }
    // no univariate element found: check for fully-solved linear system
    let mut pt = vec![u64::MAX; n];
    for g in gb.elems() {
        // z_i - c form
        if g.terms().len() <= 2 && g.total_degree() == 1 {
            let (m, _) = &g.terms()[0];
            let v = (0..n).find(|&i| m.0[i] == 1).unwrap();
            let c = if g.terms().len() == 2 {
                fp.neg(&g.terms()[1].1)
            } else {
                0
            };
            pt[v] = c;
        }
    }
    if pt.iter().all(|&x| x != u64::MAX) {
        vec![pt]
    } else {
        Vec::new()
    }
}

fn main() {
    let jd = build_jacobian(Arrangement::vandermonde_1_to_8());
    let ci = characteristic_ideal(&jd, 1).unwrap();
    let p1 = jd.graded_piece(1, true).unwrap();
    let fp = PrimeField::new(32003).unwrap();
    let ipz = ci.reduce_mod(fp).unwrap();

    // affine chart z9 = 1 in 8 variables
    let aring = PolyRing::new(
        fp,
        (1..=8).map(|i| format!("z{i}")).collect(),
        MonomialOrder::Lex,
    );
    let chart: Vec<Poly<PrimeField>> = ipz
        .gens()
        .iter()
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exponents(&m.0[..8]), *c))
                .collect();
            Poly::from_terms(&aring, terms)
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(12345);
    let mut point_rows: Vec<Vec<u64>> = Vec::new();
    let mut span_rank = 0usize;
    for trial in 0..40 {
        let mut gens = chart.clone();
        for _ in 0..2 {
            let mut terms = vec![(Monomial::one(8), rng.gen_range(0..fp.modulus()))];
            for i in 0..8 {
                terms.push((Monomial::var(8, i, 1), rng.gen_range(0..fp.modulus())));
            }
            gens.push(Poly::from_terms(&aring, terms));
        }
        let pts = solve_zero_dim(&aring, gens, &fp);
        for pt in pts {
            let mut row: Vec<u64> = pt;
            row.push(1); // z9 = 1 chart
            point_rows.push(row);
        }
        if point_rows.is_empty() {
            continue;
        }
        let m = Matrix::from_rows(fp, point_rows.clone()).unwrap();
        let r = m.rank();
        if r > span_rank {
            span_rank = r;
            println!("trial {trial}: points {} span rank {r}", point_rows.len());
        }
        if r == 8 && point_rows.len() >= 16 {
            break;
        }
    }
    let m = Matrix::from_rows(fp, point_rows.clone()).unwrap();
    println!("final span rank: {}", m.rank());
    let ns = m.nullspace();
    println!("span orthogonal dimension: {}", ns.cols());
    if ns.cols() == 1 {
        let ell: Vec<u64> = (0..9).map(|i| *ns.get(i, 0)).collect();
        println!("hyperplane mod p (my basis coords): {ell:?}");
        // values on all 32 monomial classes
        println!("values on monomial classes:");
        for m in &p1.ambient {
            let coords = p1
                .reduce_terms(&[(m.clone(), num_rational::BigRational::from_integer(1.into()))])
                .unwrap();
            let mut v = 0u64;
            for (k, q) in coords.iter().enumerate() {
                let qf = fp.from_rational(q).unwrap();
                v = fp.add(&v, &fp.mul(&ell[k], &qf));
            }
            // signed representative
            let sv = if v > fp.modulus() / 2 {
                v as i64 - fp.modulus() as i64
            } else {
                v as i64
            };
            println!("  {:?} -> {sv}", m.0);
        }
    }
}
