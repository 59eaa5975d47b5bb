//! Quotient-ring contexts: multivariate division, Buchberger completion and
//! normal forms.
//!
//! A `RingContext` fixes a variable list, a term order and a relation ideal,
//! and carries the reduced Groebner basis computed once at construction.
//! `reduce` is then a unique normal form: two polynomials represent the same
//! ring element exactly when their normal forms coincide.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::parse::{format_poly, parse_poly};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Degree bound guarding the completion loop against runaway inputs.
pub const DEFAULT_DEGREE_CAP: u32 = 40;

/// Outcome of multivariate division: `f = sum(quotients[i] * divisors[i]) + remainder`.
pub struct Division<S> {
    pub quotients: Vec<Polynomial<S>>,
    pub remainder: Polynomial<S>,
}

/// Divides `f` by the ordered list of divisors, largest term first. No term
/// of the remainder is divisible by any divisor's leading term.
pub fn divide<S: Scalar>(
    f: &Polynomial<S>,
    divisors: &[Polynomial<S>],
    order: &MonomialOrder,
) -> Division<S> {
    let nvars = f.nvars();
    let mut quotients = vec![Polynomial::zero(nvars); divisors.len()];
    let mut remainder = Polynomial::zero(nvars);
    let leads: Vec<(Monomial, S)> = divisors
        .iter()
        .map(|d| {
            let (m, c) = d.leading(order).expect("nonzero divisor");
            (m.clone(), c.clone())
        })
        .collect();

    let mut p = f.clone();
    while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        let mut divided = false;
        for (i, (lm, lc)) in leads.iter().enumerate() {
            if let Some(q) = lm.div_into(&m) {
                let qc = c.div_exact(lc);
                quotients[i].add_term(q.clone(), qc.clone());
                p = &p - &divisors[i].mul_term(&q, &qc);
                divided = true;
                break;
            }
        }
        if !divided {
            remainder.add_term(m.clone(), c.clone());
            p.add_term(m, -c);
        }
    }
    Division {
        quotients,
        remainder,
    }
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial<S: Scalar>(
    f: &Polynomial<S>,
    g: &Polynomial<S>,
    order: &MonomialOrder,
) -> Polynomial<S> {
    let (lmf, lcf) = f.leading(order).expect("nonzero");
    let (lmg, lcg) = g.leading(order).expect("nonzero");
    let lcm = lmf.lcm(lmg);
    let mf = lmf.div_into(&lcm).unwrap();
    let mg = lmg.div_into(&lcm).unwrap();
    let a = f.mul_term(&mf, &lcf.inverse().unwrap());
    let b = g.mul_term(&mg, &lcg.inverse().unwrap());
    &a - &b
}

/// Buchberger completion with coprime-pair skipping and degree-first pair
/// selection. Output is the reduced Groebner basis, monic, sorted by leading
/// monomial, so the result is deterministic.
pub fn groebner_basis<S: Scalar>(
    generators: &[Polynomial<S>],
    order: &MonomialOrder,
    degree_cap: Option<u32>,
) -> Result<Vec<Polynomial<S>>> {
    let cap = degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
    let mut basis: Vec<Polynomial<S>> = Vec::new();
    for g in generators {
        if !g.is_zero() {
            basis.push(g.monic(order));
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    // pair queue keyed by (lcm degree, lcm, i, j)
    let mut pairs: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();
    let enqueue = |pairs: &mut BTreeSet<(u32, Monomial, usize, usize)>,
                   basis: &[Polynomial<S>],
                   i: usize,
                   j: usize| {
        let lmi = basis[i].leading(order).unwrap().0;
        let lmj = basis[j].leading(order).unwrap().0;
        let lcm = lmi.lcm(lmj);
        pairs.insert((lcm.degree(), lcm, i, j));
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            enqueue(&mut pairs, &basis, i, j);
        }
    }

    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (deg, _, i, j) = entry;
        if deg > cap {
            return Err(Error::DegreeCap { cap, degree: deg });
        }
        let lmi = basis[i].leading(order).unwrap().0;
        let lmj = basis[j].leading(order).unwrap().0;
        if lmi.coprime(lmj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = divide(&s, &basis, order).remainder;
        if r.is_zero() {
            continue;
        }
        if let Some(d) = r.total_degree() {
            if d > cap {
                return Err(Error::DegreeCap { cap, degree: d });
            }
        }
        basis.push(r.monic(order));
        let t = basis.len() - 1;
        for i in 0..t {
            enqueue(&mut pairs, &basis, i, t);
        }
    }

    // minimalize: drop members whose leading term another member divides
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lmi = basis[i].leading(order).unwrap().0.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lmj = basis[j].leading(order).unwrap().0;
            if lmj.divides(&lmi) && (lmj != &lmi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial<S>> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // inter-reduce tails for the reduced basis
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial<S>> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = if others.is_empty() {
            minimal[i].clone()
        } else {
            divide(&minimal[i], &others, order).remainder
        };
        if !r.is_zero() {
            reduced.push(r.monic(order));
        }
    }
    reduced.sort_by(|a, b| order.cmp(a.leading(order).unwrap().0, b.leading(order).unwrap().0));
    Ok(reduced)
}

/// A polynomial ring, or a quotient of one, with a fixed normal-form engine.
#[derive(Debug)]
pub struct RingContext<S> {
    vars: Vec<String>,
    order: MonomialOrder,
    relations: Vec<Polynomial<S>>,
    truncation: Option<Vec<Monomial>>,
    groebner: Vec<Polynomial<S>>,
}

impl<S: Scalar> PartialEq for RingContext<S> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order && self.groebner == other.groebner
    }
}

impl<S: Scalar> RingContext<S> {
    /// Free polynomial ring: no relations, normal form is the identity.
    pub fn free(vars: Vec<String>) -> Arc<Self> {
        let order = MonomialOrder::grlex(vars.len());
        Arc::new(RingContext {
            vars,
            order,
            relations: Vec::new(),
            truncation: None,
            groebner: Vec::new(),
        })
    }

    pub fn quotient(vars: Vec<String>, relations: Vec<Polynomial<S>>) -> Result<Arc<Self>> {
        Self::build(vars, relations, None, None)
    }

    pub fn quotient_capped(
        vars: Vec<String>,
        relations: Vec<Polynomial<S>>,
        cap: Option<u32>,
    ) -> Result<Arc<Self>> {
        Self::build(vars, relations, None, cap)
    }

    /// Quotient context with an extra set of monomials declared zero; the
    /// monomials join the ideal as explicit generators.
    pub fn with_truncation(
        vars: Vec<String>,
        relations: Vec<Polynomial<S>>,
        truncation: Vec<Monomial>,
        cap: Option<u32>,
    ) -> Result<Arc<Self>> {
        Self::build(vars, relations, Some(truncation), cap)
    }

    fn build(
        vars: Vec<String>,
        relations: Vec<Polynomial<S>>,
        truncation: Option<Vec<Monomial>>,
        cap: Option<u32>,
    ) -> Result<Arc<Self>> {
        let nvars = vars.len();
        let order = MonomialOrder::grlex(nvars);
        for r in &relations {
            if r.nvars() != nvars {
                return Err(Error::input("relation arity does not match variable list"));
            }
        }
        let mut gens = relations.clone();
        if let Some(tr) = &truncation {
            for m in tr {
                if m.nvars() != nvars {
                    return Err(Error::input("truncation monomial arity mismatch"));
                }
                gens.push(Polynomial::term(m.clone(), S::one()));
            }
        }
        let groebner = groebner_basis(&gens, &order, cap)?;
        Ok(Arc::new(RingContext {
            vars,
            order,
            relations,
            truncation,
            groebner,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn relations(&self) -> &[Polynomial<S>] {
        &self.relations
    }

    pub fn truncation(&self) -> Option<&[Monomial]> {
        self.truncation.as_deref()
    }

    pub fn groebner(&self) -> &[Polynomial<S>] {
        &self.groebner
    }

    /// Unique normal form modulo the relation ideal.
    pub fn reduce(&self, f: &Polynomial<S>) -> Result<Polynomial<S>> {
        if f.nvars() != self.nvars() {
            return Err(Error::input(format!(
                "polynomial has {} variables, context has {}",
                f.nvars(),
                self.nvars()
            )));
        }
        Ok(self.nf(f))
    }

    /// Normal form for internal callers whose arity is correct by
    /// construction.
    pub(crate) fn nf(&self, f: &Polynomial<S>) -> Polynomial<S> {
        debug_assert_eq!(f.nvars(), self.nvars());
        if self.groebner.is_empty() {
            return f.clone();
        }
        divide(f, &self.groebner, &self.order).remainder
    }

    pub fn is_zero_mod(&self, f: &Polynomial<S>) -> bool {
        self.nf(f).is_zero()
    }

    pub fn parse(&self, input: &str) -> Result<Polynomial<S>> {
        parse_poly(input, &self.vars)
    }

    pub fn format(&self, p: &Polynomial<S>) -> String {
        format_poly(p, &self.vars, &self.order)
    }
}

/// Variable names `x1..xk`, then `t1..tk`, then `u1..uk`, for 1..=3 blocks.
pub fn block_var_names(k: usize, blocks: usize) -> Vec<String> {
    let prefixes = ["x", "t", "u"];
    assert!(blocks >= 1 && blocks <= prefixes.len());
    let mut vars = Vec::with_capacity(k * blocks);
    for prefix in &prefixes[..blocks] {
        for i in 1..=k {
            vars.push(format!("{prefix}{i}"));
        }
    }
    vars
}

/// Truncated Taylor shift: `a(x + t)` with every term of `t`-degree
/// greater than `l` dropped. `a` lives in the `k` base variables; the
/// result lives in `ctx`, whose layout is `x1..xk, t1..tk, ...`.
pub fn taylor_shift<S: Scalar>(
    a: &Polynomial<S>,
    l: u32,
    ctx: &RingContext<S>,
) -> Result<Polynomial<S>> {
    let k = a.nvars();
    if ctx.nvars() < 2 * k {
        return Err(Error::input(
            "context lacks a t-block matching the base variables",
        ));
    }
    Ok(a.pad(ctx.nvars()).block_shift(0, k, k, Some(l)))
}
