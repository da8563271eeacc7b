//! Acceptance suite: every headline identity and closed-form table must pass
//! with residual exactly zero, within its stated time budget. One pass/fail
//! line is printed per criterion.

use leafhodge::complex::{build_complex, lh_kernel_cokernel, solve_hodge_family, ModuleSpec};
use leafhodge::identities;
use leafhodge::lie::LieAlgebra;
use leafhodge::matrix::Matrix;
use leafhodge::oprewrite;
use leafhodge::scalar::Scalar;
use leafhodge::spectral;
use leafhodge::tables::{self, CoefficientTag, SpectrumTable};
use leafhodge::weights::{self, RepTag};
use num_rational::BigRational;
use std::time::{Duration, Instant};

struct Criterion {
    label: &'static str,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    fn begin(label: &'static str, budget_secs: u64) -> Self {
        Criterion {
            label,
            budget: Duration::from_secs(budget_secs),
            start: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.start.elapsed();
        println!(
            "{}: PASS ({} ms, budget {} ms)",
            self.label,
            elapsed.as_millis(),
            self.budget.as_millis()
        );
        assert!(
            elapsed <= self.budget,
            "{} exceeded its {:?} budget: {:?}",
            self.label,
            self.budget,
            elapsed
        );
    }
}

fn assert_all_pass(results: &[leafhodge::identities::VerificationResult]) {
    for r in results {
        assert!(
            r.pass,
            "{} failed with residual support {}",
            r.name, r.residual_terms
        );
    }
}

#[test]
fn criterion_01_an_fake_hodge_identity() {
    let c = Criterion::begin("criterion 01 (an fake-Hodge identity and square zero)", 1);
    let results = identities::verify_fake_hodge();
    assert_all_pass(&results);
    assert!(results.iter().any(|r| r.name == "an-fake-hodge"));
    assert!(results
        .iter()
        .any(|r| r.name == "an-fake-codifferential-square-zero"));
    c.finish();
}

#[test]
fn criterion_02_clifford_laplacian_vanishes() {
    let c = Criterion::begin("criterion 02 (16-dim Clifford Laplacian vanishes)", 1);
    let results = identities::verify_fake_hodge();
    let lap = results
        .iter()
        .find(|r| r.name == "an-clifford-laplacian-zero")
        .expect("check present");
    assert!(lap.pass && lap.residual_terms == 0);
    c.finish();
}

#[test]
fn criterion_03_sl2_hodge_and_invariance() {
    let c = Criterion::begin(
        "criterion 03 (sl2 Hodge identity, square value, so(2) invariance)",
        5,
    );
    assert_all_pass(&identities::verify_sl2_hodge());
    assert_all_pass(&identities::verify_so2_invariance());
    c.finish();
}

#[test]
fn criterion_04_an_adjoint_quotient_identity() {
    let c = Criterion::begin(
        "criterion 04 (adjoint-coefficient identity over the quotient)",
        5,
    );
    assert_all_pass(&identities::verify_an_adjoint_hodge());
    c.finish();
}

#[test]
fn criterion_05_rank_one_rewrite_identity() {
    let c = Criterion::begin("criterion 05 (rank-one calculus identity, both signs)", 5);
    for sign in [1, -1] {
        assert_all_pass(&oprewrite::verify_d1_hodge(sign, None));
        assert_all_pass(&oprewrite::verify_d1_projection(sign));
    }
    c.finish();
}

#[test]
fn criterion_06_displayed_matrices_and_families() {
    let c = Criterion::begin(
        "criterion 06 (displayed differentials and Hodge families)",
        1,
    );
    let an = LieAlgebra::an();
    // C*(an; C): d_0 = (0 0)ᵀ, d_1 = (0, −1/√2).
    let triv = build_complex(&an, &ModuleSpec::c_lambda(&an, &Scalar::zero()));
    assert!(triv.d[0].is_zero());
    assert_eq!(triv.d[1][(0, 0)], Scalar::zero());
    assert_eq!(triv.d[1][(0, 1)], -Scalar::inv_sqrt2());
    // C*(an; C_{1/√2}): d_0 = (1/√2 0)ᵀ, d_1 = 0.
    let half = build_complex(&an, &ModuleSpec::c_lambda(&an, &Scalar::inv_sqrt2()));
    assert_eq!(half.d[0][(0, 0)], Scalar::inv_sqrt2());
    assert_eq!(half.d[0][(1, 0)], Scalar::zero());
    assert!(half.d[1].is_zero());
    // One-parameter families containing the displayed instances a ∈ {0,1,i}.
    for (complex, displayed) in [(&triv, true), (&half, false)] {
        let family = solve_hodge_family(complex, 64).unwrap();
        assert_eq!(family.parameter_count(), 1);
        for a in [Scalar::zero(), Scalar::one(), Scalar::i()] {
            let deltas = if displayed {
                let d1 = Matrix::zero(1, 2);
                let mut d2 = Matrix::zero(2, 1);
                d2[(0, 0)] = a.clone();
                d2[(1, 0)] = -Scalar::sqrt2();
                vec![d1, d2]
            } else {
                let mut d1 = Matrix::zero(1, 2);
                d1[(0, 0)] = Scalar::sqrt2();
                d1[(0, 1)] = a.clone();
                vec![d1, Matrix::zero(2, 1)]
            };
            let params = family
                .locate(&deltas)
                .expect("displayed instance in family");
            let (inst_d, inst_p) = family.instantiate(&params);
            assert_eq!(inst_d, deltas);
            assert!(family.verify_instance(&inst_d, &inst_p));
        }
    }
    c.finish();
}

#[test]
fn criterion_07_cohomology_dimension_table() {
    let c = Criterion::begin("criterion 07 (cohomology dimensions)", 1);
    let an = LieAlgebra::an();
    let sl2 = LieAlgebra::sl2();
    assert_eq!(
        build_complex(&an, &ModuleSpec::c_lambda(&an, &Scalar::zero())).cohomology_dims(),
        vec![1, 1, 0]
    );
    assert_eq!(
        build_complex(&an, &ModuleSpec::c_lambda(&an, &Scalar::inv_sqrt2())).cohomology_dims(),
        vec![0, 1, 1]
    );
    let triv3 = ModuleSpec::new(
        &sl2,
        "C",
        vec![Matrix::zero(1, 1), Matrix::zero(1, 1), Matrix::zero(1, 1)],
    )
    .unwrap();
    assert_eq!(
        build_complex(&sl2, &triv3).cohomology_dims(),
        vec![1, 0, 0, 1]
    );
    assert_eq!(
        build_complex(&an, &ModuleSpec::adjoint(&an)).cohomology_dims(),
        vec![0, 0, 0]
    );
    for lambda in [
        Scalar::from_int(3),
        Scalar::from_ratio(-2, 5),
        Scalar::i() + Scalar::one(),
        Scalar::sqrt2() + Scalar::from_ratio(1, 3),
    ] {
        assert_eq!(
            build_complex(&an, &ModuleSpec::c_lambda(&an, &lambda)).cohomology_dims(),
            vec![0, 0, 0],
            "λ = {lambda}"
        );
    }
    c.finish();
}

/// Deterministic pseudo-random stream for module selection.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

#[test]
fn criterion_08_spectral_machinery() {
    let c = Criterion::begin("criterion 08 (spectral sheets and convergence)", 10);
    let sl2 = LieAlgebra::sl2();
    let an = LieAlgebra::an();
    let h = sl2.index_of("H").unwrap();
    let e = sl2.index_of("E").unwrap();
    let an_in_sl2 = vec![h, e];
    let e_in_an = vec![an.index_of("E").unwrap()];
    let triv3 = ModuleSpec::new(
        &sl2,
        "C",
        vec![Matrix::zero(1, 1), Matrix::zero(1, 1), Matrix::zero(1, 1)],
    )
    .unwrap();
    // The drawn first sheet, the nontrivial differential and the limit totals.
    let fc = spectral::build_filtration(&sl2, &an_in_sl2, &triv3).unwrap();
    let e1 = spectral::sheet(&fc, 1);
    for (p, q, want) in [
        (0, 0, 1),
        (0, 1, 1),
        (0, 2, 0),
        (1, 0, 0),
        (1, 1, 1),
        (1, 2, 1),
    ] {
        assert_eq!(e1.dim(p, q), want, "E_1^({p},{q})");
    }
    assert_eq!(e1.differentials[&(0, 1)].rank(), 1);
    let einf = spectral::infinity_sheet(&fc);
    assert_eq!(
        (0..4).map(|n| einf.total(n)).collect::<Vec<_>>(),
        vec![1, 0, 0, 1]
    );
    // Ten pseudo-random small coefficient modules across the two inclusions.
    let mut rng = XorShift(0x5eed_1234_abcdu64);
    let sl2_pool: Vec<ModuleSpec> = {
        let adj = ModuleSpec::adjoint(&sl2);
        vec![
            triv3.clone(),
            adj.clone(),
            adj.tensor(&adj, &sl2),
            triv3.direct_sum(&adj, &sl2),
            adj.direct_sum(&adj, &sl2),
        ]
    };
    let mut counted = 0;
    for _ in 0..5 {
        let v = &sl2_pool[(rng.next() % sl2_pool.len() as u64) as usize];
        assert!(
            spectral::check_convergence(&sl2, &an_in_sl2, v)
                .unwrap()
                .pass,
            "convergence for {}",
            v.name
        );
        assert!(
            spectral::check_e1_isomorphism(&sl2, &an_in_sl2, v)
                .unwrap()
                .pass,
            "first sheet for {}",
            v.name
        );
        counted += 1;
    }
    for _ in 0..5 {
        let num = (rng.next() % 9) as i64 - 4;
        let den = (rng.next() % 3) as i64 + 1;
        let lambda = Scalar::from_ratio(num, den)
            + Scalar::from_ratio((rng.next() % 3) as i64 - 1, 1) * Scalar::inv_sqrt2();
        let v = if rng.next().is_multiple_of(2) {
            ModuleSpec::c_lambda(&an, &lambda)
        } else {
            ModuleSpec::adjoint(&an).tensor(&ModuleSpec::c_lambda(&an, &lambda), &an)
        };
        assert!(
            spectral::check_convergence(&an, &e_in_an, &v).unwrap().pass,
            "convergence for λ-twist {lambda}"
        );
        counted += 1;
    }
    assert_eq!(counted, 10);
    c.finish();
}

#[test]
fn criterion_09_kernel_cokernel_instances() {
    let c = Criterion::begin("criterion 09 (degree-splitting kernels and cokernels)", 1);
    let an = LieAlgebra::an();
    let h = an.index_of("H").unwrap();
    // The dual functional modules for n = 1..4 are nonsingular except at
    // λ = n/√2.
    for n in 1..=4i64 {
        let v = ModuleSpec::c_lambda(&an, &(Scalar::from_int(-n) * Scalar::inv_sqrt2()));
        let matching = Scalar::from_int(n) * Scalar::inv_sqrt2();
        assert_eq!(lh_kernel_cokernel(&v, h, &matching), (1, 1), "n = {n}");
        for probe in [Scalar::zero(), Scalar::one(), Scalar::inv_sqrt2()] {
            if probe != matching {
                assert_eq!(lh_kernel_cokernel(&v, h, &probe), (0, 0));
            }
        }
    }
    // The two-dimensional boundary module is singular exactly at 1/(2√2).
    let c2n = ModuleSpec::c2_natural(&an);
    let half = Scalar::inv_sqrt2() * Scalar::from_ratio(1, 2);
    assert_eq!(lh_kernel_cokernel(&c2n, h, &half), (1, 1));
    for probe in [Scalar::zero(), Scalar::inv_sqrt2(), -half.clone()] {
        assert_eq!(lh_kernel_cokernel(&c2n, h, &probe), (0, 0));
    }
    c.finish();
}

#[test]
fn criterion_10_weight_models() {
    let c = Criterion::begin("criterion 10 (weight models at top weight 20)", 5);
    let n20 = 20;
    let expectations: Vec<(RepTag, Option<BigRational>, Scalar)> = vec![
        (RepTag::DiscretePlus(1), None, Scalar::zero()),
        (RepTag::DiscretePlus(2), None, Scalar::one()),
        (RepTag::DiscretePlus(3), None, Scalar::from_int(3)),
        (
            RepTag::Principal,
            Some(BigRational::new((-1).into(), 9.into())),
            Scalar::from_ratio(-1, 9),
        ),
    ];
    for (tag, mu, casimir) in &expectations {
        let window = if matches!(tag, RepTag::Principal) {
            10
        } else {
            n20
        };
        let m = weights::build_model(*tag, mu.clone(), window).unwrap();
        assert!(weights::bracket_checks(&m).pass);
        assert!(weights::e_injectivity(&m).pass);
        let (check, scalar) = weights::casimir_check(&m);
        assert!(check.pass);
        assert_eq!(scalar.as_ref(), Some(casimir));
        let functionals = weights::invariant_functionals(&m).unwrap();
        match tag {
            RepTag::Principal => {
                assert_eq!(functionals.len(), 2);
                let eigen: Vec<&Scalar> = functionals.iter().map(|(_, e)| e).collect();
                let want1 = Scalar::sqrt2() * Scalar::from_ratio(1, 3);
                let want2 = Scalar::sqrt2() * Scalar::from_ratio(1, 6);
                assert!(eigen.contains(&&want1) && eigen.contains(&&want2));
            }
            RepTag::DiscretePlus(n) => {
                assert_eq!(functionals.len(), 1);
                assert_eq!(functionals[0].1, Scalar::from_int(*n) * Scalar::inv_sqrt2());
                let (lw, sign) = weights::lowest_weight_checks(&m);
                assert!(lw.pass);
                assert_eq!(sign, Some(1));
            }
            RepTag::DiscreteMinus(_) => unreachable!(),
        }
        let larger = weights::build_model(*tag, mu.clone(), window + 5).unwrap();
        assert!(weights::window_stability(&m, &larger).pass);
    }
    // The mirrored model realizes the opposite sign.
    let minus = weights::build_model(RepTag::DiscreteMinus(1), None, n20).unwrap();
    let (lw, sign) = weights::lowest_weight_checks(&minus);
    assert!(lw.pass);
    assert_eq!(sign, Some(-1));
    assert!(weights::rewrite_consistency(&minus).pass);
    c.finish();
}

#[test]
fn criterion_11_genus_tables() {
    let c = Criterion::begin("criterion 11 (genus tables, cross-check, restriction)", 1);
    let st = SpectrumTable::synthetic(2);
    let dims = |coeff: CoefficientTag, lambda: Option<Scalar>| {
        tables::foliation_cohomology_dims(&coeff, lambda.as_ref(), &st).dims
    };
    assert_eq!(
        dims(CoefficientTag::Lambda("0".into()), Some(Scalar::zero())),
        [1, 5, 4]
    );
    assert_eq!(
        dims(
            CoefficientTag::Lambda("1/2*r2".into()),
            Some(Scalar::inv_sqrt2())
        ),
        [0, 1, 1]
    );
    assert_eq!(
        dims(
            CoefficientTag::Lambda("-1/2*r2".into()),
            Some(-Scalar::inv_sqrt2())
        ),
        [0, 6, 6]
    );
    assert_eq!(dims(CoefficientTag::AnAdjoint, None), [0, 4, 4]);
    assert_eq!(dims(CoefficientTag::Sl2Adjoint, None), [0, 10, 10]);
    for g in 2..=6 {
        let check = tables::assembly_crosscheck(&SpectrumTable::synthetic(g), 12);
        assert!(check.pass, "genus {g}: {} mismatches", check.residual_terms);
        let r = tables::restriction_report(g).unwrap();
        assert_eq!(r.total_space_dims[2], 2 * g);
        assert_eq!(r.leafwise_dims[2], 2 * g);
        assert!(r.degree2_equal);
    }
    c.finish();
}

#[test]
fn criterion_12_compact_restriction_comparison() {
    let c = Criterion::begin(
        "criterion 12 (codifferential comparison on the compact-annihilated subspace)",
        2,
    );
    assert_all_pass(&identities::verify_delta_mm_restriction());
    c.finish();
}
