//! Monomial orders and module term orders.
//!
//! A [`MonomialOrder`] combines an order on ring monomials with a rule for
//! comparing positions in a free module. Free-module positions follow the
//! convention that *lower* indices are *larger*: `e_0 > e_1 > ...`.

use std::cmp::Ordering;

use crate::poly::Monomial;

/// Order on monomials of the ambient polynomial ring.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingOrder {
    /// Graded reverse lexicographic: higher total degree wins; ties are
    /// broken by the last differing exponent, smaller exponent winning.
    GrevLex,
    /// Pure lexicographic in variable order.
    Lex,
}

impl RingOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len(), "monomials from different rings");
        match self {
            RingOrder::GrevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    other => return other,
                }
                for i in (0..a.0.len()).rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => {}
                        // Smaller exponent in the last differing slot wins.
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            RingOrder::Lex => {
                for i in 0..a.0.len() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => {}
                        other => return other,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Rule for weighing the position of a term in a free module against its
/// monomial part.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuleRule {
    /// Position dominates; monomials break ties ("position over term").
    PositionOverTerm,
    /// Monomial dominates; positions break ties ("term over position").
    TermOverPosition,
    /// Elimination order on positions: every term in a position below
    /// `boundary` outranks every term at or above it; inside each block the
    /// comparison is position-over-term. Used to intersect submodules with a
    /// trailing block of coordinates.
    Block { boundary: usize },
}

/// A full order on free-module terms `(position, monomial)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    pub ring: RingOrder,
    pub module: ModuleRule,
}

impl MonomialOrder {
    /// Graded reverse lexicographic, position over term. The engine default.
    pub fn grevlex() -> Self {
        MonomialOrder { ring: RingOrder::GrevLex, module: ModuleRule::PositionOverTerm }
    }

    /// Lexicographic, position over term.
    pub fn lex() -> Self {
        MonomialOrder { ring: RingOrder::Lex, module: ModuleRule::PositionOverTerm }
    }

    /// Graded reverse lexicographic, term over position.
    pub fn grevlex_top() -> Self {
        MonomialOrder { ring: RingOrder::GrevLex, module: ModuleRule::TermOverPosition }
    }

    /// Block elimination order over grevlex with the given block boundary.
    pub(crate) fn elimination(boundary: usize) -> Self {
        MonomialOrder { ring: RingOrder::GrevLex, module: ModuleRule::Block { boundary } }
    }

    /// Compare two free-module terms.
    pub fn cmp_terms(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        // Lower position index means a *larger* basis vector.
        let pos = |x: usize, y: usize| x.cmp(&y).reverse();
        match self.module {
            ModuleRule::PositionOverTerm => {
                pos(a.0, b.0).then_with(|| self.ring.cmp(a.1, b.1))
            }
            ModuleRule::TermOverPosition => {
                self.ring.cmp(a.1, b.1).then_with(|| pos(a.0, b.0))
            }
            ModuleRule::Block { boundary } => {
                let block = |p: usize| usize::from(p >= boundary);
                // Block 0 (positions below the boundary) outranks block 1.
                block(a.0)
                    .cmp(&block(b.0))
                    .reverse()
                    .then_with(|| pos(a.0, b.0))
                    .then_with(|| self.ring.cmp(a.1, b.1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial(exps.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = RingOrder::GrevLex;
        // x > y in two variables.
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        // Degree dominates: y^2 > x.
        assert_eq!(o.cmp(&m(&[0, 2]), &m(&[1, 0])), Ordering::Greater);
        // x^2 > x*y > y^2.
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        // Classic three-variable grevlex tie-break: x*z < y^2.
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_basics() {
        let o = RingOrder::Lex;
        // x > y^5 under lex.
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 3])), Ordering::Less);
    }

    #[test]
    fn module_rules() {
        let pot = MonomialOrder::grevlex();
        // e_0 > e_1 regardless of monomials.
        assert_eq!(pot.cmp_terms((0, &m(&[0, 0])), (1, &m(&[5, 5]))), Ordering::Greater);
        let top = MonomialOrder::grevlex_top();
        // Monomial dominates under term-over-position.
        assert_eq!(top.cmp_terms((0, &m(&[0, 0])), (1, &m(&[5, 5]))), Ordering::Less);
        // Position breaks ties under term-over-position.
        assert_eq!(top.cmp_terms((0, &m(&[1, 1])), (1, &m(&[1, 1]))), Ordering::Greater);
        let elim = MonomialOrder::elimination(2);
        // Positions 0..2 outrank positions >= 2.
        assert_eq!(elim.cmp_terms((1, &m(&[0, 0])), (2, &m(&[9, 9]))), Ordering::Greater);
        assert_eq!(elim.cmp_terms((3, &m(&[0, 0])), (1, &m(&[0, 0]))), Ordering::Less);
        // Within a block: position over term.
        assert_eq!(elim.cmp_terms((2, &m(&[0, 1])), (3, &m(&[4, 0]))), Ordering::Greater);
    }

    #[test]
    fn grevlex_is_multiplicative() {
        let o = RingOrder::GrevLex;
        let pairs = [
            (m(&[1, 0]), m(&[0, 1])),
            (m(&[2, 1]), m(&[1, 2])),
            (m(&[0, 3]), m(&[2, 0])),
        ];
        for (a, b) in &pairs {
            let c = o.cmp(a, b);
            for f in [m(&[1, 0]), m(&[0, 2]), m(&[3, 1])] {
                assert_eq!(o.cmp(&a.mul(&f), &b.mul(&f)), c);
            }
        }
    }
}
