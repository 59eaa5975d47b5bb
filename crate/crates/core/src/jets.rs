//! Truncated principal-part rings, the jet map and its projections,
//! higher-order connections built from the projective basis, the
//! comultiplication between truncation orders, and the (l,k)-curvature
//! obstruction to lifting the module structure to all differential
//! operators.
//!
//! The order-`l` ring lives on a doubled variable block `(x, t)` with the
//! ideal generated by the base relation, its truncated Taylor shift, and all
//! `t`-monomials of degree `l + 1`. The tensor ring of two such factors adds
//! a third block `u`, gluing the right scalar structure of the first factor
//! to the left structure of the second through the shift `x -> x + t`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ellipsoid::{EllipsoidRing, KaehlerModule, ModulePresentation};
use crate::error::{Error, Result};
use crate::monomial::block_monomials_of_degree;
use crate::report::test_support::{random_base_poly, random_vector};
use crate::report::{Check, SuiteOptions, VerificationReport};
use crate::ring::{block_var_names, taylor_shift, RingContext};
use crate::{Ctx, Matrix, Poly, Vector};

/// The ring of `l`-jets of the base ring, on variables `(x, t)`.
#[derive(Debug)]
pub struct JetRing {
    base: EllipsoidRing,
    l: u32,
    ctx: Arc<Ctx>,
}

impl PartialEq for JetRing {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.l == other.l
    }
}

impl JetRing {
    fn build(base: &EllipsoidRing, l: u32) -> Result<Self> {
        let k = base.k();
        let vars = block_var_names(k, 2);
        let free = RingContext::free(vars.clone());
        let h = base.defining_polynomial();
        let h_base = h.pad(2 * k);
        let h_shift = taylor_shift(h, l, &free)?;
        let trunc = block_monomials_of_degree(2 * k, k, k, l + 1);
        let ctx = RingContext::with_truncation(vars, vec![h_base, h_shift], trunc, None)?;
        Ok(JetRing {
            base: base.clone(),
            l,
            ctx,
        })
    }

    pub fn base(&self) -> &EllipsoidRing {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }

    /// The jet of a base element: its truncated Taylor shift, reduced.
    pub fn jet(self: &Arc<Self>, a: &Poly) -> Result<JetElement> {
        if a.nvars() != self.base.k() {
            return Err(Error::input("jet argument must live in the base variables"));
        }
        let free = &self.ctx;
        let shifted =
            a.pad(free.nvars())
                .block_shift(0, self.base.k(), self.base.k(), Some(self.l));
        Ok(JetElement {
            ring: self.clone(),
            value: self.ctx.nf(&shifted),
        })
    }

    /// Embeds a base element through the left scalar structure (`t`-degree
    /// zero), reduced.
    pub fn embed_base(self: &Arc<Self>, a: &Poly) -> Result<JetElement> {
        if a.nvars() != self.base.k() {
            return Err(Error::input("argument must live in the base variables"));
        }
        Ok(JetElement {
            ring: self.clone(),
            value: self.ctx.nf(&a.pad(self.ctx.nvars())),
        })
    }
}

/// An element of a jet ring, in normal form.
#[derive(Clone, Debug)]
pub struct JetElement {
    ring: Arc<JetRing>,
    value: Poly,
}

impl PartialEq for JetElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.value == other.value
    }
}

impl JetElement {
    pub fn ring(&self) -> &Arc<JetRing> {
        &self.ring
    }

    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(JetElement {
            ring: self.ring.clone(),
            value: self.ring.ctx.nf(&(&self.value + &other.value)),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(JetElement {
            ring: self.ring.clone(),
            value: self.ring.ctx.nf(&(&self.value - &other.value)),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(JetElement {
            ring: self.ring.clone(),
            value: self.ring.ctx.nf(&(&self.value * &other.value)),
        })
    }

    /// Left scalar action `a(x) . xi`.
    pub fn left_scale(&self, a: &Poly) -> Result<Self> {
        let a = a.pad(self.ring.ctx.nvars());
        Ok(JetElement {
            ring: self.ring.clone(),
            value: self.ring.ctx.nf(&(&self.value * &a)),
        })
    }

    /// Right scalar action `xi . a = a(x + t) xi`.
    pub fn right_scale(&self, a: &Poly) -> Result<Self> {
        let shifted = self.ring.jet(a)?;
        self.mul(&shifted)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::input("jet elements of different rings"))
        }
    }

    pub fn format(&self) -> String {
        self.ring.ctx.format(&self.value)
    }
}

/// Re-reduces an order-`l` jet in the ring one order down.
pub fn project(xi: &JetElement, lower: &Arc<JetRing>) -> Result<JetElement> {
    if xi.ring.l == 0 {
        return Err(Error::input("cannot project below order 0"));
    }
    if lower.base != xi.ring.base || lower.l + 1 != xi.ring.l {
        return Err(Error::input("projection target must be one order lower"));
    }
    Ok(JetElement {
        ring: lower.clone(),
        value: lower.ctx.nf(&xi.value),
    })
}

type JetCache = Mutex<HashMap<(Vec<u32>, u32), Arc<JetRing>>>;

fn jet_cache() -> &'static JetCache {
    static CACHE: OnceLock<JetCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached jet-ring constructor; the completed basis is computed once per
/// `(exponents, l)`.
pub fn jet_ring(base: &EllipsoidRing, l: u32) -> Result<Arc<JetRing>> {
    let key = (base.exponents().to_vec(), l);
    let mut cache = jet_cache().lock().expect("jet ring cache");
    if let Some(r) = cache.get(&key) {
        return Ok(r.clone());
    }
    let ring = Arc::new(JetRing::build(base, l)?);
    cache.insert(key, ring.clone());
    Ok(ring)
}

/// The tensor ring of an order-`l` and an order-`k` jet factor, on the
/// variable blocks `(x, t, u)`.
#[derive(Debug)]
pub struct JetTensorRing {
    base: EllipsoidRing,
    l: u32,
    k: u32,
    ctx: Arc<Ctx>,
}

impl PartialEq for JetTensorRing {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.l == other.l && self.k == other.k
    }
}

impl JetTensorRing {
    fn build(base: &EllipsoidRing, l: u32, k: u32) -> Result<Self> {
        let kb = base.k();
        let n = 3 * kb;
        let vars = block_var_names(kb, 3);
        let h = base.defining_polynomial();
        let h_base = h.pad(n);
        let h_t = h_base.block_shift(0, kb, kb, Some(l));
        let h_tu = h_t.block_shift(0, 2 * kb, kb, Some(k));
        let mut trunc = block_monomials_of_degree(n, kb, kb, l + 1);
        trunc.extend(block_monomials_of_degree(n, 2 * kb, kb, k + 1));
        let ctx = RingContext::with_truncation(vars, vec![h_base, h_t, h_tu], trunc, None)?;
        let ring = JetTensorRing {
            base: base.clone(),
            l,
            k,
            ctx,
        };

        // comultiplication is well defined: each completed-basis member of
        // the order-(l+k) ring lands in the tensor ideal under t -> t + u
        let source = jet_ring(base, l + k)?;
        for g in source.ctx.groebner() {
            let image = ring.comultiply_raw(g);
            if !ring.ctx.is_zero_mod(&image) {
                return Err(Error::input(
                    "comultiplication does not preserve the relation ideal",
                ));
            }
        }
        Ok(ring)
    }

    pub fn base(&self) -> &EllipsoidRing {
        &self.base
    }

    pub fn orders(&self) -> (u32, u32) {
        (self.l, self.k)
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }

    /// `t -> t + u` on a raw `(x, t)` polynomial, unreduced.
    fn comultiply_raw(&self, value: &Poly) -> Poly {
        let kb = self.base.k();
        value
            .pad(self.ctx.nvars())
            .block_shift(kb, 2 * kb, kb, None)
    }
}

type TensorCache = Mutex<HashMap<(Vec<u32>, u32, u32), Arc<JetTensorRing>>>;

fn tensor_cache() -> &'static TensorCache {
    static CACHE: OnceLock<TensorCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn jet_tensor_ring(base: &EllipsoidRing, l: u32, k: u32) -> Result<Arc<JetTensorRing>> {
    let key = (base.exponents().to_vec(), l, k);
    let mut cache = tensor_cache().lock().expect("tensor ring cache");
    if let Some(r) = cache.get(&key) {
        return Ok(r.clone());
    }
    let ring = Arc::new(JetTensorRing::build(base, l, k)?);
    cache.insert(key, ring.clone());
    Ok(ring)
}

/// Splits an order-`(l + k)` jet across the two tensor factors by
/// substituting `t -> t + u` and reducing.
pub fn comultiply(xi: &JetElement, target: &Arc<JetTensorRing>) -> Result<JetTensorElement> {
    if xi.ring.base != target.base || xi.ring.l != target.l + target.k {
        return Err(Error::input("jet order does not match the tensor factors"));
    }
    let value = target.ctx.nf(&target.comultiply_raw(&xi.value));
    Ok(JetTensorElement {
        ring: target.clone(),
        value,
    })
}

/// An element of a jet tensor ring, in normal form.
#[derive(Clone, Debug)]
pub struct JetTensorElement {
    ring: Arc<JetTensorRing>,
    value: Poly,
}

impl PartialEq for JetTensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.value == other.value
    }
}

impl JetTensorElement {
    pub fn ring(&self) -> &Arc<JetTensorRing> {
        &self.ring
    }

    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn format(&self) -> String {
        self.ring.ctx.format(&self.value)
    }
}

fn embed_projector(p: &Matrix, nvars: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(p.rows() * p.cols());
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            out.push(p.entry(i, j).pad(nvars));
        }
    }
    out
}

fn canonicalize_comps(comps: Vec<Poly>, proj: &[Poly], n: usize, ctx: &Arc<Ctx>) -> Vec<Poly> {
    (0..n)
        .map(|i| {
            let mut acc = Poly::zero(ctx.nvars());
            for (j, c) in comps.iter().enumerate() {
                acc = &acc + &(&proj[i * n + j] * c);
            }
            ctx.nf(&acc)
        })
        .collect()
}

/// An element of the jet-module `P^l (x) E`: one jet-ring coordinate per
/// module generator, stored in the canonical form obtained by applying the
/// module projector through the left scalar structure.
#[derive(Clone, Debug)]
pub struct JetModuleElement {
    ring: Arc<JetRing>,
    comps: Vec<Poly>,
}

impl PartialEq for JetModuleElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.comps == other.comps
    }
}

impl JetModuleElement {
    pub fn new(ring: &Arc<JetRing>, mp: &ModulePresentation, raw: Vec<Poly>) -> Result<Self> {
        let n = mp.rank();
        if raw.len() != n {
            return Err(Error::input("component count mismatch"));
        }
        let proj = embed_projector(mp.projector(), ring.ctx.nvars());
        let raw: Vec<Poly> = raw
            .into_iter()
            .map(|p| {
                if p.nvars() == ring.ctx.nvars() {
                    Ok(p)
                } else {
                    Err(Error::input("component arity mismatch"))
                }
            })
            .collect::<Result<_>>()?;
        let comps = canonicalize_comps(raw, &proj, n, &ring.ctx);
        Ok(JetModuleElement {
            ring: ring.clone(),
            comps,
        })
    }

    pub fn zero(ring: &Arc<JetRing>, n: usize) -> Self {
        JetModuleElement {
            ring: ring.clone(),
            comps: vec![Poly::zero(ring.ctx.nvars()); n],
        }
    }

    pub fn ring(&self) -> &Arc<JetRing> {
        &self.ring
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| self.ring.ctx.nf(&(a + b)))
            .collect();
        Ok(JetModuleElement {
            ring: self.ring.clone(),
            comps,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| self.ring.ctx.nf(&(a - b)))
            .collect();
        Ok(JetModuleElement {
            ring: self.ring.clone(),
            comps,
        })
    }

    /// Left scalar action by a base element.
    pub fn left_scale(&self, a: &Poly) -> Self {
        let a = a.pad(self.ring.ctx.nvars());
        let comps = self
            .comps
            .iter()
            .map(|c| self.ring.ctx.nf(&(c * &a)))
            .collect();
        JetModuleElement {
            ring: self.ring.clone(),
            comps,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring && self.comps.len() == other.comps.len() {
            Ok(())
        } else {
            Err(Error::input("jet module elements of different shape"))
        }
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.comps.iter().map(|c| self.ring.ctx.format(c)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Projects a jet-module element one order down componentwise.
pub fn project_module(
    xi: &JetModuleElement,
    lower: &Arc<JetRing>,
    mp: &ModulePresentation,
) -> Result<JetModuleElement> {
    if xi.ring.l == 0 {
        return Err(Error::input("cannot project below order 0"));
    }
    if lower.base != xi.ring.base || lower.l + 1 != xi.ring.l {
        return Err(Error::input("projection target must be one order lower"));
    }
    let raw = xi.comps.iter().map(|c| lower.ctx.nf(c)).collect();
    JetModuleElement::new(lower, mp, raw)
}

/// The order-`l` connection of the projective basis: component `i` is the
/// `l`-jet of `row_i(M) . v`, canonicalized.
pub fn nabla_l(v: &Vector, mp: &ModulePresentation, jr: &Arc<JetRing>) -> Result<JetModuleElement> {
    theta_from_matrix(mp.projector(), v, mp, jr)
}

fn theta_from_matrix(
    theta: &Matrix,
    v: &Vector,
    mp: &ModulePresentation,
    jr: &Arc<JetRing>,
) -> Result<JetModuleElement> {
    if v.len() != mp.rank() {
        return Err(Error::input("lift length mismatch"));
    }
    let xv = theta.mul_vec(v)?;
    let raw = xv
        .entries()
        .iter()
        .map(|p| Ok(jr.jet(p)?.value))
        .collect::<Result<Vec<_>>>()?;
    JetModuleElement::new(jr, mp, raw)
}

/// Sampled evidence that a map on lifts is a differential operator of the
/// given order: for seeded random multipliers `a_1..a_{order+1}` and lifts
/// `v`, the iterated commutator with the multiplication operators
/// annihilates `v`. Evidence, not proof.
pub fn diff_membership_test(
    op: &dyn Fn(&Vector) -> Result<JetModuleElement>,
    order: i64,
    mp: &ModulePresentation,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    if samples == 0 {
        return Err(Error::input("need at least one sample"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = mp.ctx().nvars();
    let m = (order + 1).max(0) as usize;
    for _ in 0..samples {
        let mults: Vec<Poly> = (0..m)
            .map(|_| mp.ctx().nf(&random_base_poly(k, &mut rng, 2, 2)))
            .collect();
        let v = random_vector(mp.ctx(), &mut rng, mp.rank(), 1, 2);

        type LiftMap<'a> = Box<dyn Fn(&Vector) -> Result<JetModuleElement> + 'a>;
        let mut f: LiftMap = Box::new(move |w: &Vector| op(w));
        for a in mults {
            let prev = f;
            f = Box::new(move |w: &Vector| {
                let left = prev(&w.scale(&a))?;
                let right = prev(w)?.left_scale(&a);
                left.sub(&right)
            });
        }
        if !f(&v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A compatible family of jet-valued maps `theta_l` for `l = 0..=max_order`
/// built from a coefficient matrix, with `theta_0` required to act as the
/// identity.
pub struct InfinityConnection {
    base: EllipsoidRing,
    mp: ModulePresentation,
    theta: Matrix,
    max_order: u32,
}

impl InfinityConnection {
    /// The projective-basis family: `theta_l = nabla^l`.
    pub fn from_presentation(
        base: &EllipsoidRing,
        mp: ModulePresentation,
        max_order: u32,
    ) -> Result<Self> {
        let theta = mp.projector().clone();
        Self::with_theta(base, mp, theta, max_order)
    }

    /// A custom coefficient family; rejects any `theta` whose order-0 map is
    /// not the identity on classes.
    pub fn with_theta(
        base: &EllipsoidRing,
        mp: ModulePresentation,
        theta: Matrix,
        max_order: u32,
    ) -> Result<Self> {
        if mp.ctx() != base.ctx() {
            return Err(Error::input("module and base ring differ"));
        }
        let pt = mp.projector().mul(&theta)?;
        if pt != *mp.projector() {
            return Err(Error::input("theta_0 is not the identity map"));
        }
        Ok(InfinityConnection {
            base: base.clone(),
            mp,
            theta,
            max_order,
        })
    }

    pub fn base(&self) -> &EllipsoidRing {
        &self.base
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.mp
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn theta_apply(&self, l: u32, v: &Vector) -> Result<JetModuleElement> {
        if l > self.max_order {
            return Err(Error::input(format!(
                "order {l} exceeds the family bound {}",
                self.max_order
            )));
        }
        let jr = jet_ring(&self.base, l)?;
        theta_from_matrix(&self.theta, v, &self.mp, &jr)
    }
}

/// A jet-tensor-module element: the value of one branch of the
/// (l,k)-curvature square.
#[derive(Clone, Debug)]
pub struct JetTensorModuleElement {
    ring: Arc<JetTensorRing>,
    comps: Vec<Poly>,
}

impl PartialEq for JetTensorModuleElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.comps == other.comps
    }
}

impl JetTensorModuleElement {
    pub fn ring(&self) -> &Arc<JetTensorRing> {
        &self.ring
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.comps.iter().map(|c| self.ring.ctx.format(c)).collect();
        format!("({})", parts.join(", "))
    }
}

/// The (l,k)-curvature of the family on the lift `v`: the difference of the
/// two branches of the comultiplication square,
/// `(theta_l (x) id) . theta_k - (id (x) comult) . theta_{l+k}`,
/// canonicalized in the tensor module. The middle tensor match embeds the
/// second factor through `x -> x + t`.
pub fn lk_curvature(
    conn: &InfinityConnection,
    l: u32,
    k: u32,
    v: &Vector,
) -> Result<JetTensorModuleElement> {
    if l < 1 || k < 1 {
        return Err(Error::input("both orders must be at least 1"));
    }
    if l + k > conn.max_order {
        return Err(Error::input(format!(
            "order ({l}, {k}) exceeds the family bound {}",
            conn.max_order
        )));
    }
    let kb = conn.base.k();
    let n = conn.mp.rank();
    let tr = jet_tensor_ring(&conn.base, l, k)?;
    let nvars = tr.ctx.nvars();

    // branch 0: comultiply the order-(l+k) value
    let top = conn.theta_apply(l + k, v)?;
    let phi0: Vec<Poly> = top
        .comps()
        .iter()
        .map(|c| tr.ctx.nf(&tr.comultiply_raw(c)))
        .collect();

    // branch 1: order-k value with its jet block renamed to u and glued by
    // x -> x + t, then expanded through the order-l coefficients
    let eta = conn.theta_apply(k, v)?;
    let mut rename: Vec<usize> = (0..2 * kb).collect();
    for (i, r) in rename.iter_mut().enumerate().take(2 * kb).skip(kb) {
        *r = i + kb; // t-block -> u-block
    }
    let glued: Vec<Poly> = eta
        .comps()
        .iter()
        .map(|c| {
            let in_u = c.remap_vars(&rename, nvars);
            tr.ctx.nf(&in_u.block_shift(0, kb, kb, Some(l)))
        })
        .collect();
    let mut phi1 = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Poly::zero(nvars);
        for (j, g) in glued.iter().enumerate() {
            let zeta = conn
                .theta
                .entry(i, j)
                .pad(nvars)
                .block_shift(0, kb, kb, Some(l));
            acc = &acc + &(&zeta * g);
        }
        phi1.push(tr.ctx.nf(&acc));
    }

    let raw: Vec<Poly> = phi1.iter().zip(&phi0).map(|(a, b)| a - b).collect();
    let proj = embed_projector(conn.mp.projector(), nvars);
    let comps = canonicalize_comps(raw, &proj, n, &tr.ctx);
    Ok(JetTensorModuleElement { ring: tr, comps })
}

/// Evaluates every (l,k)-curvature with `l + k <= max_order` on the module
/// generators and reports flat or non-flat, with a witness for the first
/// obstruction found. Also checks the projection-tower coherence of the
/// family.
pub fn stratification_probe(
    conn: &InfinityConnection,
    max_order: u32,
) -> Result<VerificationReport> {
    if max_order < 2 {
        return Err(Error::input("need max order at least 2"));
    }
    if max_order > conn.max_order {
        return Err(Error::input("probe order exceeds the family bound"));
    }
    let mut report = VerificationReport::new("stratification", 0);
    let n = conn.mp.rank();

    let mut coherent = true;
    for l in 1..=max_order {
        let lower = jet_ring(&conn.base, l - 1)?;
        for j in 0..n {
            let ej = Vector::unit(conn.mp.ctx().clone(), n, j);
            let here = conn.theta_apply(l, &ej)?;
            let projected = project_module(&here, &lower, &conn.mp)?;
            coherent &= projected == conn.theta_apply(l - 1, &ej)?;
        }
    }
    report.push(Check::bool(
        "projection tower is coherent on generators",
        coherent,
        "",
    ));

    let mut flat = true;
    let mut witness = String::new();
    for l in 1..max_order {
        for k in 1..max_order {
            if l + k > max_order {
                continue;
            }
            let mut vanished = true;
            for j in 0..n {
                let ej = Vector::unit(conn.mp.ctx().clone(), n, j);
                let kv = lk_curvature(conn, l, k, &ej)?;
                if !kv.is_zero() {
                    vanished = false;
                    if witness.is_empty() {
                        witness = format!("K^{{{l},{k}}}(e{}) = {}", j + 1, kv.format());
                    }
                }
            }
            flat &= vanished;
            report.push(Check::info(
                format!("K^{{{l},{k}}} on generators"),
                if vanished {
                    "zero".to_string()
                } else {
                    "nonzero".to_string()
                },
            ));
        }
    }
    report.push(Check::info(
        "flat",
        if flat {
            "true (stratification candidate)".to_string()
        } else {
            format!("false (obstruction witness: {witness})")
        },
    ));
    Ok(report)
}

/// Jet-tower identities, membership evidence, comultiplication laws, and
/// the flatness contrast between the free module and the Kaehler module.
pub fn suite_jets(km: &KaehlerModule, opts: SuiteOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("jets", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let base = km.ring().clone();
    let mp = km.presentation();
    let kb = base.k();

    let jr0 = jet_ring(&base, 0)?;
    let jr1 = jet_ring(&base, 1)?;
    let jr2 = jet_ring(&base, 2)?;
    let jr3 = jet_ring(&base, 3)?;

    // jets are ring maps up to truncation
    let mut ring_map = true;
    for _ in 0..opts.samples.min(8) {
        let a = random_base_poly(kb, &mut rng, 2, 2);
        let b = random_base_poly(kb, &mut rng, 2, 2);
        for jr in [&jr1, &jr2] {
            let lhs = jr.jet(&(&a * &b))?;
            let rhs = jr.jet(&a)?.mul(&jr.jet(&b)?)?;
            ring_map &= lhs == rhs;
        }
    }
    report.push(Check::bool(
        "jet map is a ring map into each truncation",
        ring_map,
        "",
    ));

    // the defining relation maps to 1 + 0
    let h_plus_one = base.defining_polynomial() + &Poly::one(kb);
    let jet_h = jr2.jet(&h_plus_one)?;
    report.push(Check::bool(
        "jet of the defining sum of powers is 1",
        jet_h == jr2.embed_base(&Poly::one(kb))?,
        "",
    ));

    // projection tower on ring elements
    let mut proj_tower = true;
    for _ in 0..opts.samples.min(10) {
        let a = random_base_poly(kb, &mut rng, 3, 3);
        let chain = [(&jr3, &jr2), (&jr2, &jr1), (&jr1, &jr0)];
        for (hi, lo) in chain {
            proj_tower &= project(&hi.jet(&a)?, lo)? == lo.jet(&a)?;
        }
    }
    report.push(Check::bool(
        "projection after the jet map is the lower-order jet map",
        proj_tower,
        "",
    ));

    // higher-connection tower coherence on generators and sampled lifts
    let mut tower = true;
    let rings = [&jr0, &jr1, &jr2, &jr3];
    let mut lifts: Vec<Vector> = (0..kb)
        .map(|j| Vector::unit(base.ctx().clone(), kb, j))
        .collect();
    for _ in 0..opts.samples.min(10) {
        lifts.push(random_vector(base.ctx(), &mut rng, kb, 2, 2));
    }
    for v in &lifts {
        for l in 1..=3usize {
            let hi = nabla_l(v, &mp, rings[l])?;
            let lo = project_module(&hi, rings[l - 1], &mp)?;
            tower &= lo == nabla_l(v, &mp, rings[l - 1])?;
        }
        // order 0 is the canonical representative
        let n0 = nabla_l(v, &mp, &jr0)?;
        let canon = km.canonical_rep(v)?;
        let embedded: Vec<Poly> = canon
            .entries()
            .iter()
            .map(|p| jr0.ctx.nf(&p.pad(jr0.ctx.nvars())))
            .collect();
        tower &= n0.comps() == &embedded[..];
    }
    report.push(Check::bool(
        "higher connections are coherent under projection",
        tower,
        "",
    ));

    // the t-linear part of the order-1 connection is the form-valued one
    let mut t_linear = true;
    for v in lifts.iter().take(5) {
        let n1 = nabla_l(v, &mp, &jr1)?;
        let omega = crate::connection::omega_valued_nabla(v, km)?;
        let canon = km.canonical_rep(v)?;
        let mut raw = Vec::with_capacity(kb);
        for i in 0..kb {
            let mut comp = canon.entry(i).pad(2 * kb);
            for j in 0..kb {
                let tj = Poly::variable(2 * kb, kb + j);
                comp = &comp + &(&omega.coeffs().entry(j, i).pad(2 * kb) * &tj);
            }
            raw.push(comp);
        }
        let rebuilt = JetModuleElement::new(&jr1, &mp, raw)?;
        t_linear &= rebuilt == n1;
    }
    report.push(Check::bool(
        "t-linear part of the order-1 connection is the form-valued connection",
        t_linear,
        "",
    ));

    // membership evidence
    let zero_map = |_: &Vector| Ok(JetModuleElement::zero(&jr1, kb));
    report.push(Check::bool(
        "zero map passes membership at order -1",
        diff_membership_test(&zero_map, -1, &mp, opts.samples.min(5), opts.seed)?,
        "",
    ));
    for (l, jr) in [(1u32, &jr1), (2u32, &jr2)] {
        let mpc = mp.clone();
        let jrc = jr.clone();
        let op = move |v: &Vector| nabla_l(v, &mpc, &jrc);
        let pass = diff_membership_test(&op, l as i64, &mp, opts.samples.min(5), opts.seed)?;
        report.push(Check::bool(
            format!("order-{l} connection passes membership at order {l}"),
            pass,
            "",
        ));
    }
    {
        let a = base.ctx().nf(&random_base_poly(kb, &mut rng, 2, 2));
        let mpc = mp.clone();
        let jrc = jr1.clone();
        let ac = a.clone();
        let mult_op = move |v: &Vector| {
            let scaled = v.scale(&ac);
            let raw = scaled
                .entries()
                .iter()
                .map(|p| jrc.ctx.nf(&p.pad(jrc.ctx.nvars())))
                .collect();
            JetModuleElement::new(&jrc, &mpc, raw)
        };
        let passes_zero = diff_membership_test(&mult_op, 0, &mp, opts.samples.min(5), opts.seed)?;
        let fails_minus_one =
            !diff_membership_test(&mult_op, -1, &mp, opts.samples.min(5), opts.seed)?;
        report.push(Check::bool(
            "multiplication passes membership at order 0 and fails at order -1",
            passes_zero && fails_minus_one,
            "",
        ));
    }

    // comultiplication laws
    let tr11 = jet_tensor_ring(&base, 1, 1)?;
    let mut comult_ok = true;
    let one_jet = jr2.jet(&Poly::one(kb))?;
    comult_ok &= comultiply(&one_jet, &tr11)?.value() == &Poly::one(3 * kb);
    for _ in 0..opts.samples.min(5) {
        let a = random_base_poly(kb, &mut rng, 2, 2);
        let c = random_base_poly(kb, &mut rng, 1, 1);
        let xi = jr2.jet(&a)?;
        // direct double shift equals the comultiplied jet
        let direct = {
            let shifted =
                a.pad(3 * kb)
                    .block_shift(0, kb, kb, Some(1))
                    .block_shift(0, 2 * kb, kb, Some(1));
            tr11.ctx.nf(&shifted)
        };
        comult_ok &= comultiply(&xi, &tr11)?.value() == &direct;
        // left linearity over x-scalars
        let lhs = comultiply(&xi.left_scale(&c)?, &tr11)?;
        let rhs = tr11
            .ctx
            .nf(&(&comultiply(&xi, &tr11)?.value().clone() * &c.pad(3 * kb)));
        comult_ok &= lhs.value() == &rhs;
    }
    report.push(Check::bool(
        "comultiplication splits jets and is left-linear over the base",
        comult_ok,
        "",
    ));

    // coassociativity at orders (1,1,1) through explicit triple contexts
    let coassoc = comultiply_coassociative(&base, &mut rng, 2)?;
    report.push(Check::bool(
        "comultiplication is coassociative at orders (1,1,1)",
        coassoc,
        "",
    ));

    // flatness contrast
    let free_conn = InfinityConnection::from_presentation(
        &base,
        ModulePresentation::free(base.ctx().clone(), kb),
        4,
    )?;
    let mut free_flat = true;
    for l in 1..=2u32 {
        for k in 1..=2u32 {
            for j in 0..kb {
                let ej = Vector::unit(base.ctx().clone(), kb, j);
                free_flat &= lk_curvature(&free_conn, l, k, &ej)?.is_zero();
            }
        }
    }
    report.push(Check::bool(
        "free module with the standard basis is flat up to orders (2,2)",
        free_flat,
        "",
    ));

    let conn = InfinityConnection::from_presentation(&base, mp.clone(), 2)?;
    let e1 = Vector::unit(base.ctx().clone(), kb, 0);
    let k11 = lk_curvature(&conn, 1, 1, &e1)?;
    report.push(Check::bool(
        "Kaehler module has a nonzero (1,1)-curvature on the first generator",
        !k11.is_zero(),
        format!("K^{{1,1}}(dx1) = {}", k11.format()),
    ));
    report.push(Check::bool(
        "(l,k)-curvature of the zero lift vanishes",
        lk_curvature(&conn, 1, 1, &Vector::zero(base.ctx().clone(), kb))?.is_zero(),
        "",
    ));

    Ok(report)
}

/// Checks `(split first factor) . comultiply = (split second factor) .
/// comultiply` into a triple product with all three orders equal to 1,
/// going through the two intermediate tensor rings and finishing in an
/// explicit four-block context.
fn comultiply_coassociative(
    base: &EllipsoidRing,
    rng: &mut ChaCha8Rng,
    samples: usize,
) -> Result<bool> {
    let kb = base.k();
    let n4 = 4 * kb;
    let jr3 = jet_ring(base, 3)?;
    let tr21 = jet_tensor_ring(base, 2, 1)?;
    let tr12 = jet_tensor_ring(base, 1, 2)?;

    // four blocks x, t, u, w with every jet block truncated at order 1
    let mut vars = block_var_names(kb, 3);
    for i in 1..=kb {
        vars.push(format!("w{i}"));
    }
    let h = base.defining_polynomial().pad(n4);
    let r1 = h.block_shift(0, kb, kb, Some(1));
    let r2 = r1.block_shift(0, 2 * kb, kb, Some(1));
    let r3 = r2.block_shift(0, 3 * kb, kb, Some(1));
    let mut trunc = block_monomials_of_degree(n4, kb, kb, 2);
    trunc.extend(block_monomials_of_degree(n4, 2 * kb, kb, 2));
    trunc.extend(block_monomials_of_degree(n4, 3 * kb, kb, 2));
    let quad = RingContext::with_truncation(vars, vec![h, r1, r2, r3], trunc, None)?;

    let mut ok = true;
    for _ in 0..samples {
        let a = random_base_poly(kb, rng, 3, 3);
        let xi = jr3.jet(&a)?;

        // route A: split 3 = 2 + 1, then 2 = 1 + 1
        let step_a = comultiply(&xi, &tr21)?;
        // embed (x, t, u) -> (x, t->A, u->C), then A -> A + B
        let mut map_a: Vec<usize> = (0..3 * kb).collect();
        for (i, r) in map_a.iter_mut().enumerate().take(3 * kb).skip(2 * kb) {
            *r = i + kb; // u-block to the fourth block
        }
        let route_a =
            quad.nf(&step_a
                .value()
                .remap_vars(&map_a, n4)
                .block_shift(kb, 2 * kb, kb, None));

        // route B: split 3 = 1 + 2, then 2 = 1 + 1
        let step_b = comultiply(&xi, &tr12)?;
        let map_b: Vec<usize> = (0..3 * kb).collect();
        let route_b =
            quad.nf(&step_b
                .value()
                .remap_vars(&map_b, n4)
                .block_shift(2 * kb, 3 * kb, kb, None));

        ok &= route_a == route_b;
        // both routes agree with the direct triple shift
        let direct = quad.nf(&a
            .pad(n4)
            .block_shift(0, kb, kb, Some(1))
            .block_shift(0, 2 * kb, kb, Some(1))
            .block_shift(0, 3 * kb, kb, Some(1)));
        ok &= route_a == direct;
    }
    Ok(ok)
}
