//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept in a `BTreeMap` under the intrinsic graded-lex order,
//! zero coefficients are never stored, and two polynomials are equal
//! exactly when their term maps are equal.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::scalar::{binomial, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<S> {
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, S::from_int(n))
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        Self::term(Monomial::var(nvars, index), S::one())
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending intrinsic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    /// Terms in descending intrinsic order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&S> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> S {
        self.terms
            .get(&Monomial::unit(self.nvars))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Largest degree any term has in the given variable block.
    pub fn block_degree(&self, start: usize, len: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.block_degree(start, len))
            .max()
            .unwrap_or(0)
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &S)> {
        if order.is_natural_grlex() {
            return self.terms.iter().next_back();
        }
        self.terms.iter().max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    pub fn mul_scalar(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(index);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[index] = e - 1;
            out.add_term(Monomial::from_exps(exps), c.clone() * S::from_int(e as i64));
        }
        out
    }

    /// Iterated partial derivative `∂^alpha`.
    pub fn derivative_multi(&self, alpha: &Monomial) -> Self {
        let mut out = self.clone();
        for i in 0..alpha.nvars() {
            for _ in 0..alpha.exp(i) {
                out = out.derivative(i);
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    /// Reinterprets the polynomial in a context with extra trailing
    /// variables.
    pub fn pad(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.pad(nvars), c.clone()))
                .collect(),
        }
    }

    /// Sends variable `i` to variable `map[i]`.
    pub fn remap_vars(&self, map: &[usize], out_nvars: usize) -> Self {
        let mut out = Self::zero(out_nvars);
        for (m, c) in &self.terms {
            out.add_term(m.remap(map, out_nvars), c.clone());
        }
        out
    }

    /// Drops every term whose degree in the block exceeds `max`.
    pub fn truncate_block(&self, start: usize, len: usize, max: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.block_degree(start, len) <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `v_{src+i} -> v_{src+i} + v_{dst+i}` for `i < len`,
    /// dropping terms whose `dst`-block degree exceeds `max_dst` (if given).
    ///
    /// Exponents already present on the `dst` block are kept and count
    /// towards the truncation bound.
    pub fn block_shift(&self, src: usize, dst: usize, len: usize, max_dst: Option<u32>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, S)> = vec![(m.exps().to_vec(), c.clone())];
            for i in 0..len {
                let mut next = Vec::with_capacity(partial.len());
                for (exps, coef) in partial {
                    let e = exps[src + i];
                    for j in 0..=e {
                        let mut exps2 = exps.clone();
                        exps2[src + i] = e - j;
                        exps2[dst + i] += j;
                        if let Some(max) = max_dst {
                            let dst_deg: u32 = exps2[dst..dst + len].iter().sum();
                            if dst_deg > max {
                                continue;
                            }
                        }
                        let coef2 = coef.clone() * binomial::<S>(e, j);
                        next.push((exps2, coef2));
                    }
                }
                partial = next;
            }
            for (exps, coef) in partial {
                out.add_term(Monomial::from_exps(exps), coef);
            }
        }
        out
    }

    /// Divides every coefficient by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.inverse().expect("nonzero leading coefficient");
                self.mul_scalar(&inv)
            }
        }
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}
