use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense exponent vector; its length is the arity of the owning ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        let mut e = vec![0; arity];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    Lex,
    /// Degree-compatible reverse lexicographic comparison.
    RevLex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderBlock {
    pub len: usize,
    pub kind: OrderKind,
}

/// Monomial orders on the ring's variable list (index 0 is the largest variable).
///
/// `RevLex` first compares total degree, then looks at the last variable where the
/// exponents differ: the monomial with the larger exponent there is the smaller one.
/// `Block` compares the consecutive variable blocks one after the other, each with its
/// own order; a two-block order with the eliminated variables in front is an
/// elimination order for them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    RevLex,
    Block(Vec<OrderBlock>),
}

fn cmp_lex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn cmp_revlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl OrderKind {
    fn cmp(self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            OrderKind::Lex => cmp_lex(a, b),
            OrderKind::RevLex => cmp_revlex(a, b),
        }
    }
}

impl MonomialOrder {
    /// Elimination order with `front` variables in the first block.
    pub fn elimination(front: usize, total: usize) -> Self {
        MonomialOrder::Block(vec![
            OrderBlock { len: front, kind: OrderKind::RevLex },
            OrderBlock { len: total - front, kind: OrderKind::RevLex },
        ])
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => cmp_lex(&a.0, &b.0),
            MonomialOrder::RevLex => cmp_revlex(&a.0, &b.0),
            MonomialOrder::Block(blocks) => {
                let mut start = 0;
                for blk in blocks {
                    let end = start + blk.len;
                    match blk.kind.cmp(&a.0[start..end], &b.0[start..end]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                    start = end;
                }
                Ordering::Equal
            }
        }
    }

    pub(crate) fn arity_ok(&self, n: usize) -> bool {
        match self {
            MonomialOrder::Block(blocks) => blocks.iter().map(|b| b.len).sum::<usize>() == n,
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u16]) -> Monomial {
        Monomial(v.to_vec())
    }

    #[test]
    fn revlex_prefers_less_of_the_smallest_variable() {
        // x0*x2 vs x1^2: same degree, last differing variable x2; x0*x2 has more of it.
        let o = MonomialOrder::RevLex;
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::elimination(1, 3);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lcm_and_division() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 3, 1]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert_eq!(a.lcm(&b).div(&a), Some(m(&[0, 2, 1])));
        assert_eq!(a.div(&b), None);
        assert!(!a.is_coprime(&b));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 4])));
    }
}
