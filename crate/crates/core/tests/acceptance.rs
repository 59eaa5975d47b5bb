//! Acceptance suite: one test per criterion, each printing a pass line and
//! enforcing its stated time bound. Run with
//! `cargo test -p projconn --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use projconn::connection::{
    apply_nabla, bullet, curvature, endo_equal, module_trace, omega_valued_nabla, rho_endo,
    CurvatureMethod, EndoTensor,
};
use projconn::ellipsoid::{
    lie_bracket, tangent_generators, EllipsoidRing, KaehlerModule, ModulePresentation,
};
use projconn::jets::{
    diff_membership_test, jet_ring, lk_curvature, nabla_l, project_module, InfinityConnection,
    JetModuleElement,
};
use projconn::linalg::{charpoly3, commutator};
use projconn::mcm::{suite_mcm, verify_factorization, FactorizationPair};
use projconn::report::test_support::{random_base_poly, random_matrix, random_vector};
use projconn::report::{suite_endotensor, SuiteOptions};
use projconn::ring::{block_var_names, RingContext};
use projconn::scalar::Scalar;
use projconn::weyl::{
    multiplicativity_defect, random_operator, rho_lift, suite_weyl, DiffOperator,
};
use projconn::{Matrix, Poly, Rat, Vector};

fn sphere_module() -> KaehlerModule {
    KaehlerModule::build(&EllipsoidRing::build(&[2, 2, 2]).unwrap())
}

fn assert_within(elapsed: Duration, bound: Duration, what: &str) {
    assert!(
        elapsed <= bound,
        "{what} took {elapsed:?}, bound is {bound:?}"
    );
}

#[test]
fn criterion_01_sphere_fundamental_matrix() {
    let start = Instant::now();
    let km = sphere_module();
    let ctx = km.ctx();
    let expected = [
        ["1 - x1^2", "-x1*x2", "-x1*x3"],
        ["-x1*x2", "1 - x2^2", "-x2*x3"],
        ["-x1*x3", "-x2*x3", "1 - x3^2"],
    ];
    for i in 0..3 {
        for j in 0..3 {
            let want = ctx.reduce(&ctx.parse(expected[i][j]).unwrap()).unwrap();
            assert_eq!(km.fundamental().entry(i, j), &want, "entry ({i},{j})");
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(1), "criterion 1");
    println!("criterion 01 PASS ({elapsed:?}): sphere fundamental matrix equals 1 - x x^T");
}

#[test]
fn criterion_02_sphere_curvature_matrix_and_invariants() {
    let start = Instant::now();
    let km = sphere_module();
    let ctx = km.ctx();
    let gens = tangent_generators(km.ring());
    let r = curvature(&gens[0], &gens[1], CurvatureMethod::Formula, &km).unwrap();
    let expected = [
        ["0", "x1*x3", "-x1*x2"],
        ["-x1*x3", "0", "x1^2"],
        ["x1*x2", "-x1^2", "0"],
    ];
    for i in 0..3 {
        for j in 0..3 {
            let want = ctx.reduce(&ctx.parse(expected[i][j]).unwrap()).unwrap();
            assert_eq!(r.entry(i, j), &want, "entry ({i},{j})");
        }
    }
    let (tr, p, det) = charpoly3(&r).unwrap();
    assert!(tr.is_zero(), "matrix trace vanishes");
    assert_eq!(
        p,
        ctx.reduce(&ctx.parse("-x1^2").unwrap()).unwrap(),
        "middle invariant"
    );
    assert!(det.is_zero(), "determinant vanishes");
    assert!(r.trace().unwrap().is_zero());
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(1), "criterion 2");
    println!(
        "criterion 02 PASS ({elapsed:?}): curvature matrix with middle invariant -x1^2 and det 0"
    );
}

#[test]
fn criterion_03_curvature_route_equivalence() {
    let start = Instant::now();
    for exps in [vec![2u32, 2, 2], vec![2, 2, 4], vec![2, 3, 2], vec![2, 2]] {
        let km = KaehlerModule::build(&EllipsoidRing::build(&exps).unwrap());
        let gens = tangent_generators(km.ring());
        for a in &gens {
            for b in &gens {
                let f = curvature(a, b, CurvatureMethod::Formula, &km).unwrap();
                let d = curvature(a, b, CurvatureMethod::Definitional, &km).unwrap();
                assert!(
                    endo_equal(&f, &d, &km).unwrap(),
                    "routes differ on {exps:?} at ({}, {})",
                    a.label(),
                    b.label()
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(30), "criterion 3");
    println!(
        "criterion 03 PASS ({elapsed:?}): formula and definitional curvature agree on four exponent sets"
    );
}

#[test]
fn criterion_04_sphere_connection_is_non_flat() {
    let start = Instant::now();
    let km = sphere_module();
    let gens = tangent_generators(km.ring());
    let r = curvature(&gens[0], &gens[1], CurvatureMethod::Formula, &km).unwrap();
    let m = km.fundamental();
    let boxed = m.mul(&r).unwrap().mul(m).unwrap();
    assert!(!boxed.is_zero(), "M R M must be nonzero");
    let elapsed = start.elapsed();
    println!("criterion 04 PASS ({elapsed:?}): M R M != 0, the connection is non-flat");
}

#[test]
fn criterion_05_projective_basis_identities() {
    let start = Instant::now();
    for exps in [
        vec![2u32, 2, 2],
        vec![2, 2, 4],
        vec![2, 3, 2],
        vec![2, 2],
        vec![1, 2, 2],
    ] {
        let km = KaehlerModule::build(&EllipsoidRing::build(&exps).unwrap());
        let m = km.fundamental();
        assert_eq!(m.mul(m).unwrap(), *m, "M^2 = M for {exps:?}");
        assert!(
            m.mul_vec(km.relation()).unwrap().is_zero(),
            "M G = 0 for {exps:?}"
        );
        let id = Matrix::identity(km.ctx().clone(), km.rank());
        let tr = module_trace(&id, &km).unwrap();
        assert_eq!(
            tr,
            Poly::from_int(km.rank(), km.rank() as i64 - 1),
            "module trace of the identity for {exps:?}"
        );
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 05 PASS ({elapsed:?}): projective-basis identities on five exponent sets (one with a unit exponent)"
    );
}

#[test]
fn criterion_06_lift_non_multiplicativity() {
    let start = Instant::now();
    let km = sphere_module();
    let mp = km.presentation();
    let gens = tangent_generators(km.ring());
    let s = DiffOperator::from_tangent(&gens[0]);
    let t = DiffOperator::from_tangent(&gens[1]);
    let defect = multiplicativity_defect(&s, &t, &mp).unwrap();
    let e1 = Vector::unit(km.ctx().clone(), 3, 0);
    let witness = defect.apply_class(&e1, &mp).unwrap();
    assert!(!witness.is_zero(), "defect acts nontrivially on dx1");

    // both reference values are recomputed and the discrepancy record is in
    // the report
    let report = suite_weyl(
        &km,
        SuiteOptions {
            seed: 0,
            samples: 8,
        },
    )
    .unwrap();
    assert!(report.all_pass(), "{}", report.render_text());
    let text = report.render_text();
    assert!(text.contains("derived normal order of d12 . d13"));
    assert!(text.contains("terms differing from the derived form: d3, d1*d3"));
    assert!(text.contains("lift of the composition on dx1"));
    assert!(text.contains("composition of the lifts on dx1"));
    assert!(text.contains("classes agree: false"));

    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(5), "criterion 6");
    println!(
        "criterion 06 PASS ({elapsed:?}): lift defect nonzero on dx1; reference discrepancies recorded"
    );
}

#[test]
fn criterion_07_commutator_expansion_identities() {
    let start = Instant::now();
    let km = sphere_module();
    let k = 3usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    // universal tensor identity in the free two-block ring, orders 1..3
    let free2 = RingContext::free(block_var_names(k, 2));
    let x_map: Vec<usize> = (0..k).collect();
    let t_map: Vec<usize> = (k..2 * k).collect();
    for l in 1..=3usize {
        for _ in 0..5 {
            let samples: Vec<Poly> = (0..l)
                .map(|_| random_base_poly(k, &mut rng, 2, 2))
                .collect();
            let mut lhs = Poly::one(2 * k);
            for a in &samples {
                let d = &a.remap_vars(&t_map, 2 * k) - &a.remap_vars(&x_map, 2 * k);
                lhs = &lhs * &d;
            }
            let mut rhs = Poly::zero(2 * k);
            for mask in 0u32..(1 << l) {
                let mut left = Poly::one(k);
                let mut right = Poly::one(k);
                let mut sign = 1i64;
                for (i, a) in samples.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left = &left * a;
                        sign = -sign;
                    } else {
                        right = &right * a;
                    }
                }
                rhs = &rhs
                    + &(&left
                        .remap_vars(&x_map, 2 * k)
                        .mul_scalar(&Rat::from_int(sign))
                        * &right.remap_vars(&t_map, 2 * k));
            }
            assert_eq!(lhs, rhs, "tensor identity at order {l}");
            assert!(free2.reduce(&(&lhs - &rhs)).unwrap().is_zero());
        }
    }

    // operator identity against the iterated commutator on 20 seeded samples
    use rand::Rng;
    for _ in 0..20 {
        let t = random_operator(&km, &mut rng, 2);
        let m: usize = rng.gen_range(1..=2);
        let mults: Vec<Poly> = (0..m)
            .map(|_| {
                km.ctx()
                    .reduce(&random_base_poly(k, &mut rng, 2, 2).pad(k))
                    .unwrap()
            })
            .collect();
        let lhs = t.iterated_commutator(&mults).unwrap();
        let rhs = t.commutator_expansion(&mults).unwrap();
        assert_eq!(lhs, rhs, "operator expansion identity");
        let probe = km
            .ctx()
            .reduce(&random_base_poly(k, &mut rng, 2, 2).pad(k))
            .unwrap();
        assert_eq!(lhs.apply(&probe), rhs.apply(&probe));
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "criterion 7");
    println!(
        "criterion 07 PASS ({elapsed:?}): subset-sum expansion identities, symbolic orders 1..3 and 20 operator samples"
    );
}

#[test]
fn criterion_08_bullet_algebra_and_witness() {
    let start = Instant::now();
    let km = sphere_module();
    let report = suite_endotensor(
        &km,
        SuiteOptions {
            seed: 0,
            samples: 20,
        },
    );
    assert!(report.all_pass(), "{}", report.render_text());

    let w = EndoTensor::witness(&km);
    let rho = rho_endo(&w, &km).unwrap();
    let id = Matrix::identity(km.ctx().clone(), 3);
    assert!(
        endo_equal(&rho, &id, &km).unwrap(),
        "witness maps to the identity"
    );

    // spot check multiplicativity directly on one seeded pair
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let s = projconn::report::test_support::random_endo_tensor(&km, &mut rng, 2);
    let t = projconn::report::test_support::random_endo_tensor(&km, &mut rng, 2);
    let prod = rho_endo(&bullet(&s, &t, &km).unwrap(), &km).unwrap();
    let comp = rho_endo(&s, &km)
        .unwrap()
        .mul(&rho_endo(&t, &km).unwrap())
        .unwrap();
    assert_eq!(prod, comp);
    let elapsed = start.elapsed();
    println!(
        "criterion 08 PASS ({elapsed:?}): bullet algebra on 20 seeded samples; witness tensor maps to the identity"
    );
}

#[test]
fn criterion_09_adjoint_curvature_acts_by_commutator() {
    let start = Instant::now();
    let km = sphere_module();
    let gens = tangent_generators(km.ring());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..5 {
        let phi = random_matrix(km.ctx(), &mut rng, 3, 2, 2);
        for a in &gens {
            for b in &gens {
                let bracket = lie_bracket(a, b).unwrap();
                let lhs = projconn::connection::ad_apply(
                    a,
                    &projconn::connection::ad_apply(b, &phi, &km).unwrap(),
                    &km,
                )
                .unwrap()
                .sub(
                    &projconn::connection::ad_apply(
                        b,
                        &projconn::connection::ad_apply(a, &phi, &km).unwrap(),
                        &km,
                    )
                    .unwrap(),
                )
                .unwrap()
                .sub(&projconn::connection::ad_apply(&bracket, &phi, &km).unwrap())
                .unwrap();
                let r = curvature(a, b, CurvatureMethod::Formula, &km).unwrap();
                let rhs = commutator(&r, &phi).unwrap();
                assert!(endo_equal(&lhs, &rhs, &km).unwrap());
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 09 PASS ({elapsed:?}): adjoint curvature equals commutator with the curvature on 5 seeded endomorphisms"
    );
}

#[test]
fn criterion_10_higher_connection_tower() {
    let start = Instant::now();
    let km = sphere_module();
    let mp = km.presentation();
    let base = km.ring();

    let gb_start = Instant::now();
    let rings: Vec<_> = (0..=3u32).map(|l| jet_ring(base, l).unwrap()).collect();
    let gb_elapsed = gb_start.elapsed();
    assert_within(gb_elapsed, Duration::from_secs(60), "jet bases for l <= 3");

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut lifts: Vec<Vector> = (0..3)
        .map(|j| Vector::unit(km.ctx().clone(), 3, j))
        .collect();
    for _ in 0..10 {
        lifts.push(random_vector(km.ctx(), &mut rng, 3, 2, 2));
    }
    for v in &lifts {
        for l in 1..=3usize {
            let hi = nabla_l(v, &mp, &rings[l]).unwrap();
            let lo = project_module(&hi, &rings[l - 1], &mp).unwrap();
            assert_eq!(
                lo,
                nabla_l(v, &mp, &rings[l - 1]).unwrap(),
                "tower at order {l}"
            );
        }
    }

    for l in [1u32, 2] {
        let mpc = mp.clone();
        let jrc = rings[l as usize].clone();
        let op = move |v: &Vector| nabla_l(v, &mpc, &jrc);
        assert!(
            diff_membership_test(&op, l as i64, &mp, 5, 0).unwrap(),
            "membership evidence at order {l}"
        );
    }

    // the t-linear part of the order-1 connection is the form-valued one
    for v in lifts.iter().take(5) {
        let n1 = nabla_l(v, &mp, &rings[1]).unwrap();
        let omega = omega_valued_nabla(v, &km).unwrap();
        let canon = km.canonical_rep(v).unwrap();
        let mut raw = Vec::with_capacity(3);
        for i in 0..3 {
            let mut comp = canon.entry(i).pad(6);
            for j in 0..3 {
                comp = &comp + &(&omega.coeffs().entry(j, i).pad(6) * &Poly::variable(6, 3 + j));
            }
            raw.push(comp);
        }
        let rebuilt = JetModuleElement::new(&rings[1], &mp, raw).unwrap();
        assert_eq!(
            rebuilt, n1,
            "t-linear part matches the form-valued connection"
        );
    }

    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 10");
    println!(
        "criterion 10 PASS ({elapsed:?}): projection tower, membership evidence, and order-1 form comparison (jet bases in {gb_elapsed:?})"
    );
}

#[test]
fn criterion_11_stratification_obstruction() {
    let start = Instant::now();
    let base = EllipsoidRing::build(&[2, 2, 2]).unwrap();

    let free = InfinityConnection::from_presentation(
        &base,
        ModulePresentation::free(base.ctx().clone(), 3),
        4,
    )
    .unwrap();
    for l in 1..=2u32 {
        for k in 1..=2u32 {
            for j in 0..3 {
                let ej = Vector::unit(base.ctx().clone(), 3, j);
                assert!(
                    lk_curvature(&free, l, k, &ej).unwrap().is_zero(),
                    "free module flat at ({l},{k})"
                );
            }
        }
    }

    let km = KaehlerModule::build(&base);
    let conn = InfinityConnection::from_presentation(&base, km.presentation(), 2).unwrap();
    let e1 = Vector::unit(base.ctx().clone(), 3, 0);
    let k11 = lk_curvature(&conn, 1, 1, &e1).unwrap();
    assert!(!k11.is_zero(), "Kaehler module obstruction at (1,1)");

    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 11");
    println!(
        "criterion 11 PASS ({elapsed:?}): free rank-3 module flat up to (2,2); Kaehler module has K^(1,1)(dx1) != 0"
    );
}

#[test]
fn criterion_12_matrix_factorization_sweep() {
    let start = Instant::now();
    for m in 2..=3u32 {
        for n in 2..=3u32 {
            for k in 0..m {
                for l in 0..n {
                    let pair = FactorizationPair::build(m, n, k, l).unwrap();
                    let report = verify_factorization(&pair).unwrap();
                    assert!(report.all_pass(), "{}", report.render_text());
                }
            }
        }
    }
    assert!(suite_mcm().unwrap().all_pass());
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(5), "criterion 12");
    println!(
        "criterion 12 PASS ({elapsed:?}): factorization identity on all (m, n) in (2,3)^2 and in-range (k, l)"
    );
}

#[test]
fn criterion_13_chern_representative_route_agreement() {
    let start = Instant::now();
    let km = sphere_module();
    let gens = tangent_generators(km.ring());
    let ctx = km.ctx();
    let mut recorded = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in gens.iter().skip(i + 1) {
            let f = curvature(a, b, CurvatureMethod::Formula, &km).unwrap();
            let d = curvature(a, b, CurvatureMethod::Definitional, &km).unwrap();
            let tf = module_trace(&f, &km).unwrap();
            let td = module_trace(&d, &km).unwrap();
            assert_eq!(tf, td, "module traces agree along both routes");
            recorded.push(format!(
                "tr_M R({}, {}) = {}",
                a.label(),
                b.label(),
                ctx.format(&tf)
            ));
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 13 PASS ({elapsed:?}): module trace of curvature agrees along both routes; recorded values: {}",
        recorded.join("; ")
    );
}

// remaining sampled identities referenced by criterion 10's membership runs
#[test]
fn membership_negative_control() {
    let km = sphere_module();
    let mp = km.presentation();
    let base = km.ring();
    let jr1 = jet_ring(base, 1).unwrap();
    // multiplication passes order 0, fails order -1
    let a = km.ctx().parse("x1*x2 + x3").unwrap();
    let mpc = mp.clone();
    let jrc = jr1.clone();
    let op = move |v: &Vector| {
        let scaled = v.scale(&a);
        let raw = scaled
            .entries()
            .iter()
            .map(|p| jrc.ctx().reduce(&p.pad(6)).unwrap())
            .collect();
        JetModuleElement::new(&jrc, &mpc, raw)
    };
    assert!(diff_membership_test(&op, 0, &mp, 5, 0).unwrap());
    assert!(!diff_membership_test(&op, -1, &mp, 5, 0).unwrap());
    // first-order connection fails the order-0 evidence
    let mpc = mp.clone();
    let jrc = jr1.clone();
    let nab = move |v: &Vector| nabla_l(v, &mpc, &jrc);
    assert!(!diff_membership_test(&nab, 0, &mp, 5, 0).unwrap());
}

// cross-module check used by criterion 6's oracle: the lifted tangent
// operators agree with the first-order connection
#[test]
fn lifted_tangent_fields_match_the_connection() {
    let km = sphere_module();
    let mp = km.presentation();
    let gens = tangent_generators(km.ring());
    for delta in &gens {
        let lifted = rho_lift(&DiffOperator::from_tangent(delta), &mp).unwrap();
        for j in 0..3 {
            let ej = Vector::unit(km.ctx().clone(), 3, j);
            assert_eq!(
                lifted.apply_class(&ej, &mp).unwrap(),
                apply_nabla(delta, &ej, &km).unwrap()
            );
        }
    }
}
