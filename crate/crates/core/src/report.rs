//! Verification reports and the seeded suites behind `verify`.
//!
//! A report is a named list of checks, each with a pass flag and a witness
//! string. Reports render as text and as JSON with identical structure, and
//! every sampled identity draws from a ChaCha stream seeded explicitly, so
//! output is reproducible byte for byte.

use serde::Serialize;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::connection::{
    ad_apply, apply_nabla, bullet, curvature, endo_equal, module_trace, omega_valued_nabla,
    projectivity_report_on, rho_endo, tensor_nabla, CurvatureMethod, EndoTensor,
};
use crate::ellipsoid::{lie_bracket, tangent_generators, EllipsoidRing, KaehlerModule};
use crate::error::Result;
use crate::linalg::{charpoly3, commutator};
use crate::scalar::Scalar;
use crate::{Matrix, Poly, Rat, Vector};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl Check {
    pub fn bool(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            witness: witness.into(),
        }
    }

    /// An informational record: always passes, the witness carries the data.
    pub fn info(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            witness: witness.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        VerificationReport {
            suite: suite.into(),
            seed,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            if c.witness.is_empty() {
                out.push_str(&format!("  [{status}] {}\n", c.name));
            } else {
                out.push_str(&format!("  [{status}] {}: {}\n", c.name, c.witness));
            }
        }
        out
    }
}

/// Deterministic sample generators shared by the suites and the tests.
pub mod test_support {
    use super::*;
    use crate::monomial::Monomial;
    use crate::Ctx;
    use std::sync::Arc;

    /// Random polynomial with small integer coefficients, bounded degree and
    /// term count.
    pub fn random_poly(ctx: &Arc<Ctx>, rng: &mut ChaCha8Rng, max_deg: u32, terms: usize) -> Poly {
        let nvars = ctx.nvars();
        let mut p = Poly::zero(nvars);
        for _ in 0..terms {
            let deg = rng.gen_range(0..=max_deg);
            let mut exps = vec![0u32; nvars];
            for _ in 0..deg {
                let v = rng.gen_range(0..nvars);
                exps[v] += 1;
            }
            let mut c: i64 = rng.gen_range(-3..=3);
            if c == 0 {
                c = 1;
            }
            p.add_term(Monomial::from_exps(exps), Rat::from_int(c));
        }
        ctx.nf(&p)
    }

    /// Random polynomial in `k` variables, unreduced; used where the sample
    /// must live in the base ring of a jet construction.
    pub fn random_base_poly(k: usize, rng: &mut ChaCha8Rng, max_deg: u32, terms: usize) -> Poly {
        let mut p = Poly::zero(k);
        for _ in 0..terms {
            let deg = rng.gen_range(0..=max_deg);
            let mut exps = vec![0u32; k];
            for _ in 0..deg {
                let v = rng.gen_range(0..k);
                exps[v] += 1;
            }
            let mut c: i64 = rng.gen_range(-3..=3);
            if c == 0 {
                c = 1;
            }
            p.add_term(Monomial::from_exps(exps), Rat::from_int(c));
        }
        p
    }

    pub fn random_vector(
        ctx: &Arc<Ctx>,
        rng: &mut ChaCha8Rng,
        len: usize,
        max_deg: u32,
        terms: usize,
    ) -> Vector {
        let entries = (0..len)
            .map(|_| random_poly(ctx, rng, max_deg, terms))
            .collect();
        Vector::new(ctx.clone(), entries).expect("random vector")
    }

    pub fn random_matrix(
        ctx: &Arc<Ctx>,
        rng: &mut ChaCha8Rng,
        n: usize,
        max_deg: u32,
        terms: usize,
    ) -> Matrix {
        Matrix::from_fn(ctx.clone(), n, n, |_, _| {
            random_poly(ctx, rng, max_deg, terms)
        })
        .expect("random matrix")
    }

    /// Random functional row: a random row pushed through the fundamental
    /// matrix, so it annihilates the relation vector by construction.
    pub fn random_functional(km: &KaehlerModule, rng: &mut ChaCha8Rng) -> Vector {
        let z = random_vector(km.ctx(), rng, km.rank(), 1, 2);
        km.fundamental().vec_mul(&z).expect("functional row")
    }

    pub fn random_endo_tensor(
        km: &KaehlerModule,
        rng: &mut ChaCha8Rng,
        pairs: usize,
    ) -> EndoTensor {
        let list = (0..pairs)
            .map(|_| {
                (
                    random_functional(km, rng),
                    random_vector(km.ctx(), rng, km.rank(), 1, 2),
                )
            })
            .collect();
        EndoTensor::new(list, km).expect("endo tensor")
    }
}

use test_support::*;

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            samples: 20,
        }
    }
}

/// Normal-form kernel identities: idempotence, ring-map property,
/// confluence of the completed basis, Taylor-shift multiplicativity, and
/// recomposition of tracked division.
pub fn suite_exactpoly(ring: &EllipsoidRing, opts: SuiteOptions) -> VerificationReport {
    let mut report = VerificationReport::new("exactpoly", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ctx = ring.ctx();

    let mut idem = true;
    let mut ring_map = true;
    let mut division = true;
    for _ in 0..opts.samples {
        let f = random_poly(ctx, &mut rng, 3, 4);
        let g = random_poly(ctx, &mut rng, 3, 4);
        let rf = ctx.nf(&f);
        idem &= ctx.nf(&rf) == rf;
        ring_map &= ctx.nf(&(&f + &g)) == ctx.nf(&(&ctx.nf(&f) + &ctx.nf(&g)));
        ring_map &= ctx.nf(&(&f * &g)) == ctx.nf(&(&ctx.nf(&f) * &ctx.nf(&g)));
        let div = crate::ring::divide(&f, ctx.groebner(), ctx.order());
        let mut recomposed = div.remainder.clone();
        for (q, b) in div.quotients.iter().zip(ctx.groebner()) {
            recomposed = &recomposed + &(q * b);
        }
        division &= recomposed == f;
    }
    report.push(Check::bool("reduce is idempotent", idem, ""));
    report.push(Check::bool(
        "reduce is a ring map to normal forms",
        ring_map,
        "",
    ));
    report.push(Check::bool(
        "tracked division recomposes its input",
        division,
        "",
    ));

    let confluent = ctx.groebner().iter().enumerate().all(|(i, f)| {
        ctx.groebner().iter().skip(i + 1).all(|g| {
            let s = crate::ring::s_polynomial(f, g, ctx.order());
            crate::ring::divide(&s, ctx.groebner(), ctx.order())
                .remainder
                .is_zero()
        })
    });
    report.push(Check::bool(
        "completed basis is confluent (S-polynomials reduce to 0)",
        confluent,
        "",
    ));

    let free2 = crate::ring::RingContext::free(crate::ring::block_var_names(ring.k(), 2));
    let mut taylor = true;
    for _ in 0..opts.samples.min(10) {
        let a = random_base_poly(ring.k(), &mut rng, 2, 3);
        let b = random_base_poly(ring.k(), &mut rng, 2, 3);
        for l in 0..3u32 {
            let lhs = crate::ring::taylor_shift(&(&a * &b), l, &free2).unwrap();
            let rhs = (&crate::ring::taylor_shift(&a, l, &free2).unwrap()
                * &crate::ring::taylor_shift(&b, l, &free2).unwrap())
                .truncate_block(ring.k(), ring.k(), l);
            taylor &= lhs == rhs;
        }
    }
    report.push(Check::bool(
        "taylor shift is multiplicative up to truncation",
        taylor,
        "",
    ));
    report
}

/// Matrix-kernel identities at the ring of the given module.
pub fn suite_linalg(ring: &EllipsoidRing, opts: SuiteOptions) -> VerificationReport {
    let mut report = VerificationReport::new("linalg", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ctx = ring.ctx();
    let n = 3.min(ring.k());

    let mut traceless = true;
    let mut det_mult = true;
    for _ in 0..opts.samples {
        let a = random_matrix(ctx, &mut rng, n, 2, 2);
        let b = random_matrix(ctx, &mut rng, n, 2, 2);
        traceless &= commutator(&a, &b).unwrap().trace().unwrap().is_zero();
        let ab = a.mul(&b).unwrap();
        det_mult &= ab.det().unwrap() == ctx.nf(&(&a.det().unwrap() * &b.det().unwrap()));
    }
    report.push(Check::bool("trace of a commutator vanishes", traceless, ""));
    report.push(Check::bool(
        "det(AB) = det(A)det(B) on samples",
        det_mult,
        "",
    ));

    if ring.k() >= 3 {
        // trace and determinant agree with the symbolic characteristic
        // polynomial det(lambda I - A); the middle invariant follows the
        // explicit six-product convention and is recomputed independently,
        // together with its fixed offset from the principal-minor sum.
        let mut agree = true;
        for _ in 0..opts.samples.min(5) {
            let a = random_matrix(ctx, &mut rng, 3, 1, 2);
            let (tr, p, det) = charpoly3(&a).unwrap();
            let (ctr, cp_true, cdet) = symbolic_charpoly3(&a);
            agree &= tr == ctr && det == cdet;
            let e = |i: usize, j: usize| a.entry(i, j);
            let alt = &(&(&(e(0, 0) * e(1, 1)) + &(e(0, 0) * e(2, 2))) + &(e(1, 1) * e(2, 2)))
                + &(&(&(e(1, 0) * e(0, 1)) + &(e(2, 0) * e(0, 2))) + &(e(2, 1) * e(1, 2)));
            agree &= p == ctx.nf(&alt);
            let off = &(&(e(1, 0) * e(0, 1)) + &(e(2, 0) * e(0, 2))) + &(e(2, 1) * e(1, 2));
            let two_off = ctx.nf(&(&off + &off));
            agree &= ctx.nf(&(&cp_true - &p)) == ctx.nf(&-&two_off);
        }
        report.push(Check::bool(
            "charpoly3 invariants agree with det(lambda*I - A) and the explicit middle sum",
            agree,
            "",
        ));
    }
    report
}

/// Expands `det(lambda I - A)` for a 3x3 matrix by adjoining `lambda` as an
/// extra formal variable; returns `(tr, p, det)` read off the lambda
/// coefficients. Independent of `charpoly3`.
pub fn symbolic_charpoly3(a: &Matrix) -> (Poly, Poly, Poly) {
    let ctx = a.ctx();
    let n = ctx.nvars();
    let big = n + 1;
    let lambda = Poly::variable(big, n);
    let mut entries = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let e = a.entry(i, j).pad(big);
            if i == j {
                entries.push(&lambda - &e);
            } else {
                entries.push(-&e);
            }
        }
    }
    let e = |i: usize, j: usize| &entries[i * 3 + j];
    let det = &(&(&(e(0, 0) * &(e(1, 1) * e(2, 2))) - &(e(0, 0) * &(e(1, 2) * e(2, 1))))
        - &(&(e(0, 1) * &(e(1, 0) * e(2, 2))) - &(e(0, 1) * &(e(1, 2) * e(2, 0)))))
        + &(&(e(0, 2) * &(e(1, 0) * e(2, 1))) - &(e(0, 2) * &(e(1, 1) * e(2, 0))));
    let mut by_deg: Vec<Poly> = vec![Poly::zero(n); 4];
    for (m, c) in det.terms() {
        let d = m.exp(n) as usize;
        let mut exps = m.exps().to_vec();
        exps.truncate(n);
        let mut t = Poly::zero(n);
        t.add_term(crate::monomial::Monomial::from_exps(exps), c.clone());
        by_deg[d] = &by_deg[d] + &t;
    }
    let tr = ctx.nf(&-&by_deg[2]);
    let p = ctx.nf(&by_deg[1]);
    let det0 = ctx.nf(&-&by_deg[0]);
    (tr, p, det0)
}

/// Projective-basis identities for the Kaehler module.
pub fn suite_projective(
    km: &KaehlerModule,
    opts: SuiteOptions,
    corrupt: bool,
) -> VerificationReport {
    let m = if corrupt {
        km.fundamental()
            .with_entry(
                0,
                0,
                &km.fundamental().entry(0, 0).clone() + &Poly::one(km.rank()),
            )
            .expect("corruption hook")
    } else {
        km.fundamental().clone()
    };
    let mut report = projectivity_report_on(km, &m);
    report.suite = "projectivity".into();
    report.seed = opts.seed;

    let k = km.rank();
    let tr = m.trace().unwrap_or_else(|_| Poly::zero(k));
    let expected = Poly::from_int(k, k as i64 - 1);
    report.push(Check::bool(
        "projector trace equals the module rank",
        tr == expected,
        format!("tr(M) = {}", km.ctx().format(&tr)),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut idempotent_rep = true;
    for _ in 0..opts.samples {
        let v = random_vector(km.ctx(), &mut rng, k, 2, 2);
        let c = km.canonical_rep(&v).unwrap();
        idempotent_rep &= km.canonical_rep(&c).unwrap() == c;
    }
    report.push(Check::bool(
        "canonical representative is idempotent on samples",
        idempotent_rep,
        "",
    ));
    report.push(Check::bool(
        "canonical representative of the relation vector is zero",
        km.canonical_rep(km.relation()).unwrap().is_zero(),
        "",
    ));

    let gens = tangent_generators(km.ring());
    let h = km.ring().defining_polynomial();
    let mut tangent = true;
    let mut closed = true;
    for a in &gens {
        tangent &= a.apply(h).is_zero();
        for b in &gens {
            let br = lie_bracket(a, b).unwrap();
            closed &= br.apply(h).is_zero();
        }
    }
    report.push(Check::bool(
        "generators annihilate the defining polynomial",
        tangent,
        "",
    ));
    report.push(Check::bool(
        "brackets of tangent fields stay tangent",
        closed,
        "",
    ));
    report
}

/// Curvature identities: route agreement, alternation, trace facts, the
/// Leibniz rule, and the record of the module trace of curvature (the first
/// Chern class representative).
pub fn suite_curvature(km: &KaehlerModule, opts: SuiteOptions) -> VerificationReport {
    let mut report = VerificationReport::new("curvature", opts.seed);
    let gens = tangent_generators(km.ring());
    let ctx = km.ctx();

    let mut routes = true;
    let mut alternating = true;
    let mut traceless = true;
    let mut antisym = true;
    for a in &gens {
        for b in &gens {
            let f = curvature(a, b, CurvatureMethod::Formula, km).unwrap();
            let d = curvature(a, b, CurvatureMethod::Definitional, km).unwrap();
            routes &= endo_equal(&f, &d, km).unwrap();
            traceless &= f.trace().unwrap().is_zero();
            let swapped = curvature(b, a, CurvatureMethod::Formula, km).unwrap();
            antisym &= f.add(&swapped).unwrap().is_zero();
        }
        alternating &= curvature(a, a, CurvatureMethod::Formula, km)
            .unwrap()
            .is_zero();
    }
    report.push(Check::bool(
        "formula and definitional curvature agree on all generator pairs",
        routes,
        "",
    ));
    report.push(Check::bool("curvature is alternating", alternating, ""));
    report.push(Check::bool(
        "curvature is antisymmetric under swap",
        antisym,
        "",
    ));
    report.push(Check::bool(
        "raw matrix trace of curvature vanishes",
        traceless,
        "",
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut leibniz = true;
    for _ in 0..opts.samples {
        let a = random_poly(ctx, &mut rng, 2, 3);
        let v = random_vector(ctx, &mut rng, km.rank(), 2, 2);
        for delta in &gens {
            let lhs = apply_nabla(delta, &v.scale(&a), km).unwrap();
            let rhs = apply_nabla(delta, &v, km)
                .unwrap()
                .scale(&a)
                .add(&km.canonical_rep(&v).unwrap().scale(&delta.apply(&a)))
                .unwrap();
            leibniz &= lhs == rhs;
        }
    }
    report.push(Check::bool(
        "connection satisfies the Leibniz rule on samples",
        leibniz,
        "",
    ));

    // module trace of curvature along both routes; the value is recorded
    let mut route_agree = true;
    let mut values = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in gens.iter().skip(i + 1) {
            let f = curvature(a, b, CurvatureMethod::Formula, km).unwrap();
            let d = curvature(a, b, CurvatureMethod::Definitional, km).unwrap();
            let tf = module_trace(&f, km).unwrap();
            let td = module_trace(&d, km).unwrap();
            route_agree &= tf == td;
            values.push(format!(
                "tr_M R({}, {}) = {}",
                a.label(),
                b.label(),
                ctx.format(&tf)
            ));
        }
    }
    report.push(Check::bool(
        "module trace of curvature agrees along both routes",
        route_agree,
        values.join("; "),
    ));

    let mut contraction = true;
    for _ in 0..opts.samples.min(5) {
        let v = random_vector(ctx, &mut rng, km.rank(), 2, 2);
        let tensor = omega_valued_nabla(&v, km).unwrap();
        for delta in &gens {
            contraction &=
                tensor.contract_first(delta, km).unwrap() == apply_nabla(delta, &v, km).unwrap();
        }
    }
    report.push(Check::bool(
        "form-valued connection contracts back to the derivation form",
        contraction,
        "",
    ));
    report
}

/// Bullet-product algebra, evaluation map and adjoint-connection identities.
pub fn suite_endotensor(km: &KaehlerModule, opts: SuiteOptions) -> VerificationReport {
    let mut report = VerificationReport::new("endotensor", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let gens = tangent_generators(km.ring());
    let id = Matrix::identity(km.ctx().clone(), km.rank());

    let mut assoc = true;
    let mut mult = true;
    let mut ideal = true;
    for _ in 0..opts.samples {
        let r = random_endo_tensor(km, &mut rng, 2);
        let s = random_endo_tensor(km, &mut rng, 2);
        let t = random_endo_tensor(km, &mut rng, 2);
        let lhs = rho_endo(&bullet(&bullet(&r, &s, km).unwrap(), &t, km).unwrap(), km).unwrap();
        let rhs = rho_endo(&bullet(&r, &bullet(&s, &t, km).unwrap(), km).unwrap(), km).unwrap();
        assoc &= endo_equal(&lhs, &rhs, km).unwrap();
        let prod = rho_endo(&bullet(&s, &t, km).unwrap(), km).unwrap();
        let comp = rho_endo(&s, km)
            .unwrap()
            .mul(&rho_endo(&t, km).unwrap())
            .unwrap();
        mult &= endo_equal(&prod, &comp, km).unwrap();

        let psi = random_matrix(km.ctx(), &mut rng, km.rank(), 1, 2);
        let y = random_functional(km, &mut rng);
        let v = random_vector(km.ctx(), &mut rng, km.rank(), 1, 2);
        let single = EndoTensor::new(vec![(y.clone(), v.clone())], km).unwrap();
        let lhs = psi.mul(&rho_endo(&single, km).unwrap()).unwrap();
        let moved = EndoTensor::new(vec![(y, psi.mul_vec(&v).unwrap())], km).unwrap();
        ideal &= endo_equal(&lhs, &rho_endo(&moved, km).unwrap(), km).unwrap();
    }
    report.push(Check::bool(
        "bullet product is associative through rho",
        assoc,
        "",
    ));
    report.push(Check::bool(
        "rho is multiplicative for the bullet product",
        mult,
        "",
    ));
    report.push(Check::bool("image of rho is a two-sided ideal", ideal, ""));

    let witness_ok = {
        let w = EndoTensor::witness(km);
        endo_equal(&rho_endo(&w, km).unwrap(), &id, km).unwrap()
    };
    report.push(Check::bool(
        "witness tensor maps to the identity",
        witness_ok,
        "",
    ));

    let mut ad_commutator = true;
    let mut equivariant = true;
    for _ in 0..opts.samples.min(5) {
        let phi = random_matrix(km.ctx(), &mut rng, km.rank(), 1, 2);
        let t = random_endo_tensor(km, &mut rng, 2);
        for a in &gens {
            for b in &gens {
                let bracket = lie_bracket(a, b).unwrap();
                let lhs = ad_apply(a, &ad_apply(b, &phi, km).unwrap(), km)
                    .unwrap()
                    .sub(&ad_apply(b, &ad_apply(a, &phi, km).unwrap(), km).unwrap())
                    .unwrap()
                    .sub(&ad_apply(&bracket, &phi, km).unwrap())
                    .unwrap();
                let r = curvature(a, b, CurvatureMethod::Formula, km).unwrap();
                ad_commutator &= endo_equal(&lhs, &commutator(&r, &phi).unwrap(), km).unwrap();
            }
            let lhs = ad_apply(a, &rho_endo(&t, km).unwrap(), km).unwrap();
            let rhs = rho_endo(&tensor_nabla(a, &t, km).unwrap(), km).unwrap();
            equivariant &= endo_equal(&lhs, &rhs, km).unwrap();
        }
    }
    report.push(Check::bool(
        "adjoint curvature acts as commutator with the curvature matrix",
        ad_commutator,
        "",
    ));
    report.push(Check::bool(
        "rho intertwines the tensor and adjoint connections",
        equivariant,
        "",
    ));
    report
}

/// Runs every suite that applies to the given exponents; `corrupt` flips a
/// projector entry as a negative-control hook.
pub fn run_all(
    exponents: &[u32],
    opts: SuiteOptions,
    corrupt: bool,
    suite_filter: Option<&str>,
) -> Result<Vec<VerificationReport>> {
    let ring = EllipsoidRing::build(exponents)?;
    let km = KaehlerModule::build(&ring);
    let mut reports = Vec::new();
    let wanted = |name: &str| suite_filter.is_none_or(|s| s == name);

    if wanted("exactpoly") {
        reports.push(suite_exactpoly(&ring, opts));
    }
    if wanted("linalg") {
        reports.push(suite_linalg(&ring, opts));
    }
    if wanted("projectivity") {
        reports.push(suite_projective(&km, opts, corrupt));
    }
    if wanted("curvature") {
        reports.push(suite_curvature(&km, opts));
    }
    if wanted("endotensor") {
        reports.push(suite_endotensor(&km, opts));
    }
    if wanted("weyl") {
        reports.push(crate::weyl::suite_weyl(&km, opts)?);
    }
    if wanted("jets") {
        reports.push(crate::jets::suite_jets(&km, opts)?);
    }
    if wanted("mcm") {
        reports.push(crate::mcm::suite_mcm()?);
    }
    if reports.is_empty() {
        return Err(crate::error::Error::input(format!(
            "unknown suite '{}'",
            suite_filter.unwrap_or("")
        )));
    }
    Ok(reports)
}

/// Names accepted by the `--suite` filter.
pub const SUITE_NAMES: &[&str] = &[
    "exactpoly",
    "linalg",
    "projectivity",
    "curvature",
    "endotensor",
    "weyl",
    "jets",
    "mcm",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_pass_on_the_sphere() {
        let ring = EllipsoidRing::build(&[2, 2, 2]).unwrap();
        let km = KaehlerModule::build(&ring);
        let opts = SuiteOptions {
            seed: 0,
            samples: 5,
        };
        assert!(suite_exactpoly(&ring, opts).all_pass());
        assert!(suite_linalg(&ring, opts).all_pass());
        assert!(suite_projective(&km, opts, false).all_pass());
        assert!(!suite_projective(&km, opts, true).all_pass());
    }

    #[test]
    fn report_renders_and_serializes_in_step() {
        let mut r = VerificationReport::new("demo", 3);
        r.push(Check::bool("a check", true, "with witness"));
        r.push(Check::bool("failing", false, ""));
        let text = r.render_text();
        assert!(text.contains("[PASS] a check: with witness"));
        assert!(text.contains("[FAIL] failing"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["suite"], "demo");
        assert_eq!(json["seed"], 3);
        assert_eq!(json["checks"][0]["pass"], true);
        assert!(!r.all_pass());
    }
}
