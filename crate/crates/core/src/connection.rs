//! First-order connections built from the projective basis of the Kaehler
//! module: curvature along two independent routes, module traces, dual and
//! adjoint connections, and the endomorphism-tensor apparatus (the bullet
//! product, the evaluation map `rho`, and the projectivity certificate).

use crate::ellipsoid::{KaehlerModule, TangentField};
use crate::error::{Error, Result};
use crate::linalg::{commutator, RingMatrix, RingVector};
use crate::report::{Check, VerificationReport};
use crate::{Matrix, Poly, Vector};

/// `nabla(delta)` applied to the class of the lift `v`: the canonical lift
/// of `D_delta(v) + delta(M) v`, where `D_delta` acts entrywise and
/// `delta(M)` applies the derivation to each entry of the fundamental
/// matrix.
pub fn apply_nabla(delta: &TangentField, v: &Vector, km: &KaehlerModule) -> Result<Vector> {
    if v.len() != km.rank() {
        return Err(Error::input("lift length mismatch"));
    }
    let dv = delta.apply_vec(v)?;
    let dm = delta.apply_matrix(km.fundamental());
    km.canonical_rep(&dv.add(&dm.mul_vec(v)?)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurvatureMethod {
    /// Commutator of the differentiated fundamental matrices.
    Formula,
    /// `[nabla(delta), nabla(eta)] - nabla([delta, eta])`, column by column
    /// on generator lifts.
    Definitional,
}

/// Curvature matrix of the basis connection on the pair `(delta, eta)`.
pub fn curvature(
    delta: &TangentField,
    eta: &TangentField,
    method: CurvatureMethod,
    km: &KaehlerModule,
) -> Result<Matrix> {
    if delta.ctx() != km.ctx() || eta.ctx() != km.ctx() {
        return Err(Error::input("tangent fields over a different ring"));
    }
    match method {
        CurvatureMethod::Formula => {
            let dm = delta.apply_matrix(km.fundamental());
            let em = eta.apply_matrix(km.fundamental());
            commutator(&dm, &em)
        }
        CurvatureMethod::Definitional => {
            let bracket = crate::ellipsoid::lie_bracket(delta, eta)?;
            let k = km.rank();
            let mut cols = Vec::with_capacity(k);
            for j in 0..k {
                let ej = Vector::unit(km.ctx().clone(), k, j);
                let a = apply_nabla(delta, &apply_nabla(eta, &ej, km)?, km)?;
                let b = apply_nabla(eta, &apply_nabla(delta, &ej, km)?, km)?;
                let c = apply_nabla(&bracket, &ej, km)?;
                cols.push(a.sub(&b)?.sub(&c)?);
            }
            RingMatrix::from_cols(km.ctx().clone(), cols)
        }
    }
}

/// Equality of two matrices as endomorphisms of the Kaehler module.
pub fn endo_equal(a: &Matrix, b: &Matrix, km: &KaehlerModule) -> Result<bool> {
    km.presentation().endo_equal(a, b)
}

/// Trace of the endomorphism represented by `phi`: `tr(M phi)`. On a
/// projective module this is the basis-independent trace, and the first
/// Chern class representative when `phi` is a curvature matrix.
pub fn module_trace(phi: &Matrix, km: &KaehlerModule) -> Result<Poly> {
    if phi.rows() != km.rank() || phi.cols() != km.rank() {
        return Err(Error::input("endomorphism shape mismatch"));
    }
    km.fundamental().mul(phi)?.trace()
}

/// An element of `Omega (x) Omega` as a coefficient matrix `C`, meaning
/// `sum_{j,i} C[j][i] dx_j (x) dx_i`, canonicalized by applying the
/// projector to both tensor slots: `M C M^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaTensor {
    coeffs: Matrix,
}

impl OmegaTensor {
    pub fn new(raw: &Matrix, km: &KaehlerModule) -> Result<Self> {
        if raw.rows() != km.rank() || raw.cols() != km.rank() {
            return Err(Error::input("coefficient matrix shape mismatch"));
        }
        let m = km.fundamental();
        Ok(OmegaTensor {
            coeffs: m.mul(raw)?.mul(&m.transpose())?,
        })
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Pairs the first tensor slot with a tangent field, yielding the class
    /// `sum_i (sum_j f_j C[j][i]) dx_i`.
    pub fn contract_first(&self, delta: &TangentField, km: &KaehlerModule) -> Result<Vector> {
        let f = RingVector::new(km.ctx().clone(), delta.coeffs().to_vec())?;
        let w = self.coeffs.vec_mul(&f)?;
        km.canonical_rep(&w)
    }
}

/// The differential-form-valued connection `w -> sum_i d(x_i(w)) (x) w_i`,
/// with `d` the universal derivation `d(a) = sum_j (da/dx_j) dx_j`.
pub fn omega_valued_nabla(v: &Vector, km: &KaehlerModule) -> Result<OmegaTensor> {
    let k = km.rank();
    if v.len() != k {
        return Err(Error::input("lift length mismatch"));
    }
    let xv = km.fundamental().mul_vec(v)?;
    let raw = RingMatrix::from_fn(km.ctx().clone(), k, k, |j, i| xv.entry(i).derivative(j))?;
    OmegaTensor::new(&raw, km)
}

/// The dual connection on functionals: given a row `y` annihilating the
/// relation vector, returns the row of `delta . y - y . nabla(delta)`.
pub fn dual_apply(delta: &TangentField, y: &Vector, km: &KaehlerModule) -> Result<Vector> {
    let k = km.rank();
    if y.len() != k {
        return Err(Error::input("functional length mismatch"));
    }
    if !y.dot(km.relation())?.is_zero() {
        return Err(Error::input("row does not annihilate the relation vector"));
    }
    let m = km.fundamental();
    let dm = delta.apply_matrix(m);
    let mut entries = Vec::with_capacity(k);
    for j in 0..k {
        // canonical lift of the j-th generator class
        let ej = m.col(j);
        let pairing = delta.apply(&y.dot(&ej)?);
        let nab_ej = delta.apply_vec(&ej)?.add(&dm.mul_vec(&ej)?)?;
        entries.push(&pairing - &y.dot(&nab_ej)?);
    }
    RingVector::new(km.ctx().clone(), entries)
}

/// The adjoint connection on endomorphism matrices:
/// `ad(delta)(phi) = delta(phi) + [delta(M), phi]`.
pub fn ad_apply(delta: &TangentField, phi: &Matrix, km: &KaehlerModule) -> Result<Matrix> {
    if phi.rows() != km.rank() || phi.cols() != km.rank() {
        return Err(Error::input("endomorphism shape mismatch"));
    }
    let dphi = delta.apply_matrix(phi);
    let dm = delta.apply_matrix(km.fundamental());
    dphi.add(&commutator(&dm, phi)?)
}

/// A finite sum of functional/element pairs, i.e. an element of
/// `E* (x) E` presented concretely: each pair is a row annihilating the
/// relation vector together with a lift.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoTensor {
    pairs: Vec<(Vector, Vector)>,
}

impl EndoTensor {
    pub fn new(pairs: Vec<(Vector, Vector)>, km: &KaehlerModule) -> Result<Self> {
        for (y, v) in &pairs {
            if y.len() != km.rank() || v.len() != km.rank() {
                return Err(Error::input("pair length mismatch"));
            }
            if !y.dot(km.relation())?.is_zero() {
                return Err(Error::input(
                    "functional row does not annihilate the relation",
                ));
            }
        }
        Ok(EndoTensor { pairs })
    }

    pub fn empty() -> Self {
        EndoTensor { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(Vector, Vector)] {
        &self.pairs
    }

    /// The canonical witness `sum_i x_i (x) e_i`: rows of the fundamental
    /// matrix paired with the unit lifts. Its image under `rho` is `M`,
    /// which acts as the identity.
    pub fn witness(km: &KaehlerModule) -> Self {
        let k = km.rank();
        let pairs = (0..k)
            .map(|i| {
                (
                    km.fundamental().row(i),
                    Vector::unit(km.ctx().clone(), k, i),
                )
            })
            .collect();
        EndoTensor { pairs }
    }
}

/// The product `(phi (x) u) . (psi (x) v) = psi (x) phi(v) u`, extended
/// bilinearly.
pub fn bullet(s: &EndoTensor, t: &EndoTensor, km: &KaehlerModule) -> Result<EndoTensor> {
    let mut pairs = Vec::with_capacity(s.pairs.len() * t.pairs.len());
    for (ya, ua) in &s.pairs {
        for (yb, vb) in &t.pairs {
            let phi_v = ya.dot(vb)?;
            pairs.push((yb.clone(), ua.scale(&phi_v)));
        }
    }
    EndoTensor::new(pairs, km)
}

/// Evaluation `rho(sum_i phi_i (x) e_i)(e) = sum_i phi_i(e) e_i` as the
/// matrix `sum_i v_i y_i^T`.
pub fn rho_endo(t: &EndoTensor, km: &KaehlerModule) -> Result<Matrix> {
    let k = km.rank();
    let mut acc = RingMatrix::zero(km.ctx().clone(), k, k);
    for (y, v) in &t.pairs {
        let outer = RingMatrix::from_fn(km.ctx().clone(), k, k, |i, j| v.entry(i) * y.entry(j))?;
        acc = acc.add(&outer)?;
    }
    Ok(acc)
}

/// The induced connection on `E* (x) E`:
/// `delta . (phi (x) e) = nabla*(delta)(phi) (x) e + phi (x) nabla(delta)(e)`.
pub fn tensor_nabla(
    delta: &TangentField,
    t: &EndoTensor,
    km: &KaehlerModule,
) -> Result<EndoTensor> {
    let mut pairs = Vec::with_capacity(2 * t.pairs.len());
    for (y, v) in &t.pairs {
        pairs.push((dual_apply(delta, y, km)?, v.clone()));
        pairs.push((y.clone(), apply_nabla(delta, v, km)?));
    }
    EndoTensor::new(pairs, km)
}

/// Certificate that the Kaehler module is finitely generated projective:
/// the projector is idempotent, its rows annihilate the relation vector,
/// and the canonical witness tensor maps to the identity endomorphism, so
/// the ring of projectivity vanishes.
pub fn projectivity_report(km: &KaehlerModule) -> VerificationReport {
    projectivity_report_on(km, km.fundamental())
}

/// Same checks against an explicit candidate projector; used by negative
/// controls that corrupt an entry.
pub fn projectivity_report_on(km: &KaehlerModule, m: &Matrix) -> VerificationReport {
    let mut report = VerificationReport::new("projectivity", 0);
    let idempotent = match m.mul(m) {
        Ok(mm) => mm == *m,
        Err(_) => false,
    };
    report.push(Check::bool(
        "projector is idempotent (M*M = M)",
        idempotent,
        "",
    ));

    let kills = match m.mul_vec(km.relation()) {
        Ok(v) => v.is_zero(),
        Err(_) => false,
    };
    report.push(Check::bool(
        "every row annihilates the relation vector (M*G = 0)",
        kills,
        "",
    ));

    let witness_is_identity = (|| -> Result<bool> {
        let w = EndoTensor::witness(km);
        let rho = rho_endo(&w, km)?;
        km.presentation()
            .endo_equal(&rho, &Matrix::identity(km.ctx().clone(), km.rank()))
    })()
    .unwrap_or(false);
    report.push(Check::bool(
        "witness tensor maps to the identity under rho",
        witness_is_identity,
        "",
    ));

    let conclusion = idempotent && kills && witness_is_identity;
    report.push(Check::bool(
        "ring of projectivity vanishes (module is finitely generated projective)",
        conclusion,
        "",
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellipsoid::{lie_bracket, tangent_generators, EllipsoidRing};
    use crate::report::test_support::{random_functional, random_poly, random_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sphere_km() -> KaehlerModule {
        KaehlerModule::build(&EllipsoidRing::build(&[2, 2, 2]).unwrap())
    }

    #[test]
    fn nabla_on_zero_and_on_generator() {
        let km = sphere_km();
        let gens = tangent_generators(km.ring());
        let zero = Vector::zero(km.ctx().clone(), 3);
        assert!(apply_nabla(&gens[0], &zero, &km).unwrap().is_zero());

        // nabla(d12)(dx3) = -x2*x3 dx1 + x1*x3 dx2
        let e3 = Vector::unit(km.ctx().clone(), 3, 2);
        let got = apply_nabla(&gens[0], &e3, &km).unwrap();
        let want = km
            .canonical_rep(
                &Vector::new(
                    km.ctx().clone(),
                    vec![
                        km.ctx().parse("-x2*x3").unwrap(),
                        km.ctx().parse("x1*x3").unwrap(),
                        Poly::zero(3),
                    ],
                )
                .unwrap(),
            )
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn nabla_satisfies_leibniz_on_samples() {
        let km = sphere_km();
        let gens = tangent_generators(km.ring());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = random_poly(km.ctx(), &mut rng, 2, 3);
            let v = random_vector(km.ctx(), &mut rng, 3, 2, 2);
            for delta in &gens {
                let lhs = apply_nabla(delta, &v.scale(&a), &km).unwrap();
                let rhs = apply_nabla(delta, &v, &km)
                    .unwrap()
                    .scale(&a)
                    .add(&km.canonical_rep(&v).unwrap().scale(&delta.apply(&a)))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn curvature_formula_matches_published_sphere_matrix() {
        let km = sphere_km();
        let gens = tangent_generators(km.ring());
        let r = curvature(&gens[0], &gens[1], CurvatureMethod::Formula, &km).unwrap();
        let ctx = km.ctx();
        let expect = [
            ["0", "x1*x3", "-x1*x2"],
            ["-x1*x3", "0", "x1^2"],
            ["x1*x2", "-x1^2", "0"],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    r.entry(i, j),
                    &ctx.nf(&ctx.parse(expect[i][j]).unwrap()),
                    "entry ({i},{j})"
                );
            }
        }
        assert!(r.trace().unwrap().is_zero());
    }

    #[test]
    fn curvature_routes_agree_and_alternate() {
        for exps in [vec![2u32, 2, 2], vec![2, 2, 4], vec![2, 3, 2], vec![2, 2]] {
            let km = KaehlerModule::build(&EllipsoidRing::build(&exps).unwrap());
            let gens = tangent_generators(km.ring());
            for a in &gens {
                for b in &gens {
                    let f = curvature(a, b, CurvatureMethod::Formula, &km).unwrap();
                    let d = curvature(a, b, CurvatureMethod::Definitional, &km).unwrap();
                    assert!(
                        endo_equal(&f, &d, &km).unwrap(),
                        "routes differ on {exps:?}"
                    );
                }
                assert!(curvature(a, a, CurvatureMethod::Formula, &km)
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn sphere_curvature_is_nonzero_on_the_module() {
        let km = sphere_km();
        let gens = tangent_generators(km.ring());
        let r = curvature(&gens[0], &gens[1], CurvatureMethod::Formula, &km).unwrap();
        let zero = Matrix::zero(km.ctx().clone(), 3, 3);
        assert!(!endo_equal(&r, &zero, &km).unwrap());
    }

    #[test]
    fn module_trace_values() {
        let km = sphere_km();
        let id = Matrix::identity(km.ctx().clone(), 3);
        assert_eq!(module_trace(&id, &km).unwrap(), Poly::from_int(3, 2));
        let z = Matrix::zero(km.ctx().clone(), 3, 3);
        assert!(module_trace(&z, &km).unwrap().is_zero());
    }

    #[test]
    fn omega_valued_nabla_contracts_to_apply_nabla() {
        let km = sphere_km();
        let gens = tangent_generators(km.ring());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert!(omega_valued_nabla(&Vector::zero(km.ctx().clone(), 3), &km)
            .unwrap()
            .is_zero());
        for _ in 0..5 {
            let v = random_vector(km.ctx(), &mut rng, 3, 2, 2);
            let tensor = omega_valued_nabla(&v, &km).unwrap();
            for delta in &gens {
                let got = tensor.contract_first(delta, &km).unwrap();
                let want = apply_nabla(delta, &v, &km).unwrap();
                assert_eq!(got, want, "contraction against {}", delta.label());
            }
        }
    }

    #[test]
    fn omega_valued_nabla_satisfies_tensor_leibniz() {
        // nabla(a w) = a nabla(w) + d(a) (x) w
        let km = sphere_km();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..5 {
            let a = random_poly(km.ctx(), &mut rng, 2, 3);
            let v = random_vector(km.ctx(), &mut rng, 3, 2, 2);
            let lhs = omega_valued_nabla(&v.scale(&a), &km).unwrap();
            let w = km.canonical_rep(&v).unwrap();
            let da_tensor_w =
                RingMatrix::from_fn(km.ctx().clone(), 3, 3, |j, i| &a.derivative(j) * w.entry(i))
                    .unwrap();
            let rhs_raw = omega_valued_nabla(&v, &km)
                .unwrap()
                .coeffs()
                .scale(&a)
                .add(&da_tensor_w)
                .unwrap();
            let rhs = OmegaTensor::new(&rhs_raw, &km).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_apply_contract_and_errors() {
        let km = sphere_km();
        let gens = tangent_generators(km.ring());
        let mut rng = ChaCha8Rng::seed_from_u64(17);

        let zero = Vector::zero(km.ctx().clone(), 3);
        assert!(dual_apply(&gens[0], &zero, &km).unwrap().is_zero());

        // a row that does not annihilate G is rejected
        let bad = Vector::unit(km.ctx().clone(), 3, 0);
        assert!(dual_apply(&gens[0], &bad, &km).is_err());

        // the first functional row of the basis is accepted and stays a
        // functional
        let row1 = km.fundamental().row(0);
        let moved = dual_apply(&gens[0], &row1, &km).unwrap();
        assert!(moved.dot(km.relation()).unwrap().is_zero());
        assert!(!moved.is_zero());

        for _ in 0..5 {
            let y = random_functional(&km, &mut rng);
            let v = random_vector(km.ctx(), &mut rng, 3, 2, 2);
            for delta in &gens {
                let w = dual_apply(delta, &y, &km).unwrap();
                assert!(w.dot(km.relation()).unwrap().is_zero());
                // pairing Leibniz: delta(y . Mv) = w . Mv + y . M nabla(v)
                let mv = km.canonical_rep(&v).unwrap();
                let lhs = delta.apply(&y.dot(&mv).unwrap());
                let nv = apply_nabla(delta, &v, &km).unwrap();
                let rhs = &w.dot(&mv).unwrap() + &y.dot(&km.canonical_rep(&nv).unwrap()).unwrap();
                assert_eq!(lhs, km.ctx().nf(&rhs));
            }
        }
    }

    #[test]
    fn ad_apply_kills_identity_and_its_curvature_is_a_commutator() {
        let km = sphere_km();
        let gens = tangent_generators(km.ring());
        let id = Matrix::identity(km.ctx().clone(), 3);
        assert!(ad_apply(&gens[0], &id, &km).unwrap().is_zero());

        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..5 {
            let phi = crate::report::test_support::random_matrix(km.ctx(), &mut rng, 3, 2, 2);
            for a in &gens {
                for b in &gens {
                    // R_ad(delta, eta)(phi) = [R(delta, eta), phi]
                    let bracket = lie_bracket(a, b).unwrap();
                    let lhs = ad_apply(a, &ad_apply(b, &phi, &km).unwrap(), &km)
                        .unwrap()
                        .sub(&ad_apply(b, &ad_apply(a, &phi, &km).unwrap(), &km).unwrap())
                        .unwrap()
                        .sub(&ad_apply(&bracket, &phi, &km).unwrap())
                        .unwrap();
                    let r = curvature(a, b, CurvatureMethod::Formula, &km).unwrap();
                    let rhs = commutator(&r, &phi).unwrap();
                    assert!(endo_equal(&lhs, &rhs, &km).unwrap());
                }
            }
        }
    }

    #[test]
    fn rho_is_equivariant_for_the_tensor_connection() {
        let km = sphere_km();
        let gens = tangent_generators(km.ring());
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let t = crate::report::test_support::random_endo_tensor(&km, &mut rng, 2);
            for delta in &gens {
                let lhs = ad_apply(delta, &rho_endo(&t, &km).unwrap(), &km).unwrap();
                let rhs = rho_endo(&tensor_nabla(delta, &t, &km).unwrap(), &km).unwrap();
                assert!(endo_equal(&lhs, &rhs, &km).unwrap());
            }
        }
    }

    #[test]
    fn bullet_algebra_identities() {
        let km = sphere_km();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let zero = EndoTensor::empty();
        for _ in 0..5 {
            let r = crate::report::test_support::random_endo_tensor(&km, &mut rng, 2);
            let s = crate::report::test_support::random_endo_tensor(&km, &mut rng, 2);
            let t = crate::report::test_support::random_endo_tensor(&km, &mut rng, 2);

            assert!(rho_endo(&bullet(&t, &zero, &km).unwrap(), &km)
                .unwrap()
                .is_zero());

            // associativity through rho
            let lhs = rho_endo(
                &bullet(&bullet(&r, &s, &km).unwrap(), &t, &km).unwrap(),
                &km,
            )
            .unwrap();
            let rhs = rho_endo(
                &bullet(&r, &bullet(&s, &t, &km).unwrap(), &km).unwrap(),
                &km,
            )
            .unwrap();
            assert!(endo_equal(&lhs, &rhs, &km).unwrap());

            // multiplicativity: rho(s . t) = rho(s) rho(t), exactly as matrices
            let prod = rho_endo(&bullet(&s, &t, &km).unwrap(), &km).unwrap();
            let comp = rho_endo(&s, &km)
                .unwrap()
                .mul(&rho_endo(&t, &km).unwrap())
                .unwrap();
            assert_eq!(prod, comp);
        }
    }

    #[test]
    fn image_of_rho_is_a_two_sided_ideal() {
        let km = sphere_km();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..5 {
            let psi = crate::report::test_support::random_matrix(km.ctx(), &mut rng, 3, 2, 2);
            let y = random_functional(&km, &mut rng);
            let v = random_vector(km.ctx(), &mut rng, 3, 2, 2);
            let single = EndoTensor::new(vec![(y.clone(), v.clone())], &km).unwrap();
            let lhs = psi.mul(&rho_endo(&single, &km).unwrap()).unwrap();
            let moved = EndoTensor::new(vec![(y, psi.mul_vec(&v).unwrap())], &km).unwrap();
            let rhs = rho_endo(&moved, &km).unwrap();
            assert!(endo_equal(&lhs, &rhs, &km).unwrap());
        }
    }

    #[test]
    fn witness_maps_to_identity_and_report_passes() {
        for exps in [vec![2u32, 2, 2], vec![2, 3, 2]] {
            let km = KaehlerModule::build(&EllipsoidRing::build(&exps).unwrap());
            let w = EndoTensor::witness(&km);
            let rho = rho_endo(&w, &km).unwrap();
            assert_eq!(rho, *km.fundamental());
            assert!(endo_equal(&rho, &Matrix::identity(km.ctx().clone(), km.rank()), &km).unwrap());
            assert!(projectivity_report(&km).all_pass());
        }
        // rho of the empty tensor is zero
        let km = sphere_km();
        assert!(rho_endo(&EndoTensor::empty(), &km).unwrap().is_zero());
    }

    #[test]
    fn corrupted_projector_fails_the_report() {
        let km = sphere_km();
        let bad = km
            .fundamental()
            .with_entry(0, 0, &km.fundamental().entry(0, 0).clone() + &Poly::one(3))
            .unwrap();
        let report = projectivity_report_on(&km, &bad);
        assert!(!report.all_pass());
        assert!(!report.checks()[0].pass, "idempotence must fail");
    }
}
