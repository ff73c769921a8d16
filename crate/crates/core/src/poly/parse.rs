//! Human-readable polynomial interchange syntax.
//!
//! `2269*z1 - 378*z2 + 21*z3`, powers written with `^`, rational
//! coefficients as `p/q`. This is the bit-exact format used for golden
//! files, so printing is fully deterministic: terms descend in the ring's
//! monomial order and coefficients are in canonical form.

use super::{Monomial, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::field::Field;
use std::sync::Arc;

pub fn poly_to_string<F: Field>(p: &Poly<F>) -> String {
    let ring = p.ring();
    let f = &ring.field;
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let cs = f.elem_to_string(c);
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, cs),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial_to_string(m, &ring.vars);
        if mono.is_empty() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&mag);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn monomial_to_string(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

/// Parse the interchange syntax. Accepts optional `*` between factors,
/// `^` powers, and rational coefficients `p/q`.
pub fn parse_poly<F: Field>(ring: &Arc<PolyRing<F>>, input: &str) -> Result<Poly<F>> {
    let mut terms: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut chars = input.chars().peekable();
    let mut sign = 1i64;
    let mut pending = String::new();
    let mut factors: Vec<String> = Vec::new();
    let flush_factor = |pending: &mut String, factors: &mut Vec<String>| {
        if !pending.is_empty() {
            factors.push(std::mem::take(pending));
        }
    };
    let finish_term = |sign: i64,
                           factors: &mut Vec<String>,
                           terms: &mut Vec<(Monomial, F::Elem)>|
     -> Result<()> {
        if factors.is_empty() {
            return Ok(());
        }
        let f = &ring.field;
        let mut coeff = if sign < 0 { f.neg(&f.one()) } else { f.one() };
        let mut mono = Monomial::one(ring.nvars());
        for factor in factors.drain(..) {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let e: u16 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?;
                    (b.trim().to_string(), e)
                }
                None => (factor.trim().to_string(), 1),
            };
            if base.is_empty() {
                continue;
            }
            if base.chars().next().unwrap().is_ascii_digit() || base.starts_with('/') {
                // numeric factor (possibly rational)
                let v = f.parse_elem(&base)?;
                for _ in 0..exp {
                    coeff = f.mul(&coeff, &v);
                }
            } else {
                let vi = ring
                    .var_index(&base)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{base}'")))?;
                mono.0[vi] += exp;
            }
        }
        terms.push((mono, coeff));
        Ok(())
    };

    while let Some(&ch) = chars.peek() {
        match ch {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
                flush_factor(&mut pending, &mut factors);
            }
            '+' | '-' => {
                chars.next();
                flush_factor(&mut pending, &mut factors);
                finish_term(sign, &mut factors, &mut terms)?;
                sign = if ch == '-' { -1 } else { 1 };
            }
            '*' => {
                chars.next();
                flush_factor(&mut pending, &mut factors);
            }
            _ => {
                // part of a factor token: variable name, number, /, ^
                pending.push(ch);
                chars.next();
            }
        }
    }
    flush_factor(&mut pending, &mut factors);
    finish_term(sign, &mut factors, &mut terms)?;
    Ok(Poly::from_terms(ring, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::MonomialOrder;

    #[test]
    fn roundtrip() {
        let ring = PolyRing::new(
            Rationals,
            (1..=9).map(|i| format!("z{i}")).collect(),
            MonomialOrder::GrevLex,
        );
        let s = "2269*z1 - 378*z2 + 21*z3 - 1029*z4 + 147*z5 - 7*z6 + 192*z7 - 24*z8 + z9";
        let p = parse_poly(&ring, s).unwrap();
        assert_eq!(poly_to_string(&p), s);

        let q = parse_poly(&ring, "1/2*z1^2 - 3/4*z2*z3 + z9^3").unwrap();
        let back = parse_poly(&ring, &poly_to_string(&q)).unwrap();
        assert_eq!(q, back);
    }

    #[test]
    fn parses_implicit_products_and_zero() {
        let ring = PolyRing::new(
            Rationals,
            vec!["x".into(), "y".into()],
            MonomialOrder::GrevLex,
        );
        let p = parse_poly(&ring, "x^2 + x*y - x^2 - x*y").unwrap();
        assert!(p.is_zero());
        assert_eq!(poly_to_string(&p), "0");
        let q = parse_poly(&ring, "-3*x + 2").unwrap();
        assert_eq!(poly_to_string(&q), "-3*x + 2");
    }
}
