//! Monomial orders: lex, graded reverse lex, and a block elimination order.
//!
//! All three are total orders on monomials compatible with multiplication.
//! `Block { front }` compares the exponents of the front variables first
//! (grevlex within the block), so any monomial containing a front variable
//! beats any monomial free of them: the standard elimination setup.

use crate::poly::Monomial;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block { front: BTreeSet<u32> },
}

impl MonomialOrder {
    /// Total-order comparison. Registry order defines variable precedence:
    /// earlier registry index = larger variable.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::GrevLex => grevlex_cmp(a, b, &|_| true),
            MonomialOrder::Block { front } => {
                let in_front = |v: u32| front.contains(&v);
                grevlex_cmp(a, b, &in_front).then_with(|| grevlex_cmp(a, b, &|v| !in_front(v)))
            }
        }
    }

    /// The max of two monomials under this order.
    pub fn max<'m>(&self, a: &'m Monomial, b: &'m Monomial) -> &'m Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::GrevLex),
            other => Err(format!(
                "unknown monomial order '{other}' (expected lex or grevlex)"
            )),
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    // Walk both sparse exponent lists in ascending variable index; the first
    // index where the exponents differ decides (larger exponent = larger).
    let mut ia = a.pairs().iter().peekable();
    let mut ib = b.pairs().iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                if va < vb {
                    return Ordering::Greater;
                }
                if vb < va {
                    return Ordering::Less;
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
                ia.next();
                ib.next();
            }
        }
    }
}

/// Grevlex restricted to the variables selected by `keep`: higher restricted
/// total degree wins; on ties the last differing variable with the smaller
/// exponent wins.
fn grevlex_cmp(a: &Monomial, b: &Monomial, keep: &dyn Fn(u32) -> bool) -> Ordering {
    let deg = |m: &Monomial| -> u64 {
        m.pairs()
            .iter()
            .filter(|(v, _)| keep(*v))
            .map(|(_, e)| *e as u64)
            .sum()
    };
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    // Equal degree: scan from the largest variable index downward.
    let mut ia = a.pairs().iter().rev().filter(|(v, _)| keep(*v)).peekable();
    let mut ib = b.pairs().iter().rev().filter(|(v, _)| keep(*v)).peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            // a has no exponent at b's largest remaining variable: a's
            // exponent there is 0 < e_b, so a is larger under grevlex.
            (None, Some(_)) => return Ordering::Greater,
            (Some(_), None) => return Ordering::Less,
            (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                if va > vb {
                    // a has a positive exponent at va where b has 0.
                    return Ordering::Less;
                }
                if vb > va {
                    return Ordering::Greater;
                }
                if ea != eb {
                    return eb.cmp(&ea);
                }
                ia.next();
                ib.next();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn m(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn lex_example() {
        // Registry (z, w), z larger: z^2 w > z w^3 under lex.
        let a = m(&[(0, 2), (1, 1)]);
        let b = m(&[(0, 1), (1, 3)]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn grevlex_degree_first() {
        // x y^2 z (degree 4) > x^3 (degree 3) under grevlex.
        let a = m(&[(0, 1), (1, 2), (2, 1)]);
        let b = m(&[(0, 3)]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn grevlex_tie_break() {
        // Degree ties: x^2 z vs x y^2 in (x,y,z): last differing variable is z,
        // where the second has the smaller exponent, so x y^2 > x^2 z.
        let a = m(&[(0, 2), (2, 1)]);
        let b = m(&[(0, 1), (1, 2)]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&a, &b), Ordering::Less);
        // Classic triple at degree 2 in (x,y): x^2 > xy > y^2.
        let x2 = m(&[(0, 2)]);
        let xy = m(&[(0, 1), (1, 1)]);
        let y2 = m(&[(1, 2)]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&x2, &xy), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&xy, &y2), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_front() {
        // front = {x} in (x, y): any monomial with x beats any without.
        let front: BTreeSet<u32> = [0].into_iter().collect();
        let order = MonomialOrder::Block { front };
        let x = m(&[(0, 1)]);
        let y5 = m(&[(1, 5)]);
        assert_eq!(order.cmp(&x, &y5), Ordering::Greater);
        // Within equal front part, the back part decides.
        let xy2 = m(&[(0, 1), (1, 2)]);
        let xy = m(&[(0, 1), (1, 1)]);
        assert_eq!(order.cmp(&xy2, &xy), Ordering::Greater);
    }

    #[test]
    fn orders_are_multiplicative() {
        // a > b implies a*c > b*c for a few hand cases across all orders.
        let a = m(&[(0, 2)]);
        let b = m(&[(1, 1)]);
        let c = m(&[(0, 1), (2, 3)]);
        let front: BTreeSet<u32> = [1].into_iter().collect();
        for order in [
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Block { front },
        ] {
            let rel = order.cmp(&a, &b);
            assert_eq!(order.cmp(&a.mul(&c), &b.mul(&c)), rel);
        }
    }
}
