//! Monomial orders: graded reverse lexicographic, lexicographic, and block
//! elimination orders.

use super::Monomial;
use std::cmp::Ordering;

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    /// Total degree, ties by reverse lexicographic comparison.
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// `Block(k)`: the first `k` variables are eliminated; compares the
    /// leading block by grevlex, then the trailing block by grevlex.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.iter().cmp(b.0.iter()),
            MonomialOrder::Block(k) => {
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }

    pub fn parse_tag(s: &str) -> Option<MonomialOrder> {
        match s {
            "grevlex" => Some(MonomialOrder::GrevLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => {
                let inner = s.strip_prefix("block(")?.strip_suffix(')')?;
                inner.parse().ok().map(MonomialOrder::Block)
            }
        }
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ne => return ne,
    }
    // a > b iff the rightmost nonzero entry of a - b is negative
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    fn m(e: &[u16]) -> Monomial {
        Monomial(smallvec::SmallVec::from_slice(e))
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        // x^2 > xy > y^2 in two variables
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 3]), &m(&[2, 0])), Ordering::Greater);
        // classic grevlex vs lex separation: x*z^2 vs y^3 in 3 vars
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::GrevLex.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn block_elimination_property() {
        // any monomial containing an eliminated variable beats any that does not
        let o = MonomialOrder::Block(2);
        let with = m(&[1, 0, 0, 0]);
        let without = m(&[0, 0, 5, 7]);
        assert_eq!(o.cmp(&with, &without), Ordering::Greater);
    }

    #[test]
    fn order_axioms_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let orders = [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Block(2)];
        let one = Monomial::one(5);
        for _ in 0..300 {
            let rand_m = |rng: &mut rand_chacha::ChaCha8Rng| {
                Monomial(smallvec![
                    rng.gen_range(0..4),
                    rng.gen_range(0..4),
                    rng.gen_range(0..4),
                    rng.gen_range(0..4),
                    rng.gen_range(0..4)
                ])
            };
            let a = rand_m(&mut rng);
            let b = rand_m(&mut rng);
            let c = rand_m(&mut rng);
            for o in &orders {
                // totality / antisymmetry
                assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                // multiplicativity: a < b => ac < bc
                if o.cmp(&a, &b) == Ordering::Less {
                    assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), Ordering::Less);
                }
                // 1 is minimal
                if !a.is_one() {
                    assert_eq!(o.cmp(&one, &a), Ordering::Less);
                }
            }
        }
    }
}
