//! Term orders for division and completion.

use std::cmp::Ordering;

use crate::monomial::Monomial;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    GradedLex,
    Lex,
}

/// A multiplicative total order on monomials: graded-lex or lex over a
/// precedence permutation (`precedence[0]` is the strongest variable).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Graded-lex with the natural precedence `x1 > x2 > ...`; the default
    /// order of every context in this crate.
    pub fn grlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::GradedLex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Self {
        MonomialOrder { kind, precedence }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    /// Whether this is the natural graded-lex order, which coincides with
    /// `Monomial`'s intrinsic `Ord`.
    pub fn is_natural_grlex(&self) -> bool {
        self.kind == OrderKind::GradedLex
            && self.precedence.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.is_natural_grlex() {
            return a.cmp(b);
        }
        if self.kind == OrderKind::GradedLex {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        for &v in &self.precedence {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}
