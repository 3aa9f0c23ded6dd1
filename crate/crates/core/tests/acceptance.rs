//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every check is an exact normal-form zero test (no tolerances); the
//! stated wall-clock budgets are asserted.

mod support;

use num_traits::Zero;
use std::time::{Duration, Instant};
use theta_twistor::expr::ConjMode;
use theta_twistor::generator::{Family, Generator};
use theta_twistor::oracle;
use theta_twistor::rng::SplitMix;
use theta_twistor::scalar::Qis;
use theta_twistor::section::{ElementaryState, HomogeneousSection, Spin};
use theta_twistor::spinor::{box_op, gen_up};
use theta_twistor::superspace::{
    cartan_volkov, make_d, make_dbar, make_twistor_p, make_twistor_q, make_twistor_qbar, nu,
    nubar, susy_variation, theta, thetabar, twistor_ring_spanning, SuperPoint, x,
};
use theta_twistor::transform::{
    assemble_superfield, check_dirac, check_massless, closure_shift, component_susy,
    component_susy_via_superspace, contour_transform, r_transform_multiplet,
    r_transform_section, unit_power, y_gen, ChiralMultiplet,
};
use theta_twistor::twistor::{build_xi, build_xibar, build_z, build_zbar, s_form, s_tilde_form};
use theta_twistor::{suites, Expr, Scalar};
use std::collections::BTreeMap;

fn finish(n: u32, what: &str, t0: Instant, budget: Duration) {
    let dt = t0.elapsed();
    println!("ACCEPTANCE {:>2}: PASS  {} ({:?})", n, what, dt);
    assert!(dt < budget, "criterion {} exceeded {:?}: {:?}", n, budget, dt);
}

#[test]
fn criterion_01_cartan_volkov_invariance() {
    let t0 = Instant::now();
    let p = SuperPoint::standard();
    for a in [1u8, 2] {
        for ad in [1u8, 2] {
            let dom = susy_variation(&cartan_volkov(&p, a, ad), 1).unwrap();
            assert!(dom.is_zero(), "component ({}, {}): {}", a, ad, dom);
        }
    }
    finish(1, "susy variation annihilates the Cartan-Volkov form", t0, Duration::from_secs(1));
}

#[test]
fn criterion_02_form_equivalence() {
    let t0 = Instant::now();
    let p = SuperPoint::standard();
    let s = s_form(&p, &build_z(&p, Family::NuBar), &build_zbar(&p, Family::NuPrime));
    let st = s_tilde_form(&p, &build_xi(&p, Family::NuBar), &build_xibar(&p, Family::NuPrime));
    let diff = s.sub(&st);
    assert!(diff.is_zero(), "{}", diff);
    // The identity runs over the full ambient generator set (12+).
    let mut gens: Vec<Generator> = Vec::new();
    let z = build_z(&p, Family::NuBar);
    let zb = build_zbar(&p, Family::NuPrime);
    for slot in z.slot1.iter().chain(z.slot2.iter()).chain([&z.slot3]) {
        gens.extend(slot.generators());
    }
    for slot in zb.slot1.iter().chain(zb.slot2.iter()).chain([&zb.slot3]) {
        gens.extend(slot.generators());
    }
    gens.sort();
    gens.dedup();
    assert!(gens.len() >= 12, "only {} generators", gens.len());
    finish(2, "supertwistor and theta-twistor bilinear forms agree", t0, Duration::from_secs(1));
}

#[test]
fn criterion_03_nonlinear_invariance() {
    let t0 = Instant::now();
    let p = SuperPoint::standard();
    let st = s_tilde_form(&p, &build_xi(&p, Family::NuBar), &build_xibar(&p, Family::NuPrime));
    let d = susy_variation(&st, 1).unwrap();
    assert!(d.is_zero(), "{}", d);
    // The nonlinear law itself is exercised: delta l = -4i theta (nubar epsbar).
    let mut nubar_eps = Expr::zero();
    for bd in [1u8, 2] {
        nubar_eps = nubar_eps.add(
            &gen_up(Family::NuBar, bd)
                .mul(&Expr::gen(Generator::indexed(Family::EpsBar(1), bd))),
        );
    }
    for a in [1u8, 2] {
        let dl = susy_variation(&p.l(Family::NuBar, a), 1).unwrap();
        let expect = theta(a).mul(&nubar_eps).scale(&Qis::int_i(-4));
        assert!(dl.sub(&expect).is_zero());
    }
    finish(3, "nonlinear form is susy invariant", t0, Duration::from_secs(1));
}

#[test]
fn criterion_04_generator_algebra() {
    let t0 = Instant::now();
    let spanning = twistor_ring_spanning();
    for a in [1u8, 2] {
        for bd in [1u8, 2] {
            // {Q^a, Qbar^bd} = 4i P^{bd a}.
            let q = make_twistor_q(a);
            let qbar = make_twistor_qbar(bd);
            let p_gen = make_twistor_p(bd, a);
            for (g, val) in q.bracket_table(&qbar, &spanning) {
                let expect = p_gen.apply(&Expr::gen(g)).scale(&Qis::int_i(4));
                assert!(val.sub(&expect).is_zero(), "{{Q^{}, Qbar^{}}} on {}", a, bd, g);
            }
        }
    }
    for a in [1u8, 2] {
        for b in [1u8, 2] {
            for (g, val) in make_twistor_q(a).bracket_table(&make_twistor_q(b), &spanning) {
                assert!(val.is_zero(), "{{Q^{}, Q^{}}} on {}", a, b, g);
            }
            for (g, val) in
                make_twistor_qbar(a).bracket_table(&make_twistor_qbar(b), &spanning)
            {
                assert!(val.is_zero(), "{{Qbar^{}, Qbar^{}}} on {}", a, b, g);
            }
        }
    }
    for g in [1u8, 2] {
        for bd in [1u8, 2] {
            for a in [1u8, 2] {
                let p_gen = make_twistor_p(bd, a);
                for (c, val) in make_twistor_q(g).bracket_table(&p_gen, &spanning) {
                    assert!(val.is_zero(), "[Q^{}, P^{}{}] on {}", g, bd, a, c);
                }
                for (c, val) in make_twistor_qbar(g).bracket_table(&p_gen, &spanning) {
                    assert!(val.is_zero(), "[Qbar^{}, P^{}{}] on {}", g, bd, a, c);
                }
            }
        }
    }
    finish(4, "twistor susy algebra closes exactly", t0, Duration::from_secs(1));
}

#[test]
fn criterion_05_constraint_solutions() {
    let t0 = Instant::now();
    let p = SuperPoint::standard();
    let mut rng = SplitMix::new(5);
    let random_from = |rng: &mut SplitMix, pool: &[Expr]| -> Expr {
        let mut acc = Expr::zero();
        for _ in 0..3 {
            let mut t = Expr::constant(rng.small_gaussian());
            for _ in 0..rng.int_in(0, 3) {
                t = t.mul(&pool[rng.usize_below(pool.len())]);
            }
            acc = acc.add(&t);
        }
        acc
    };

    // Dbar F(y, theta) = 0 on 20 random sections of degree <= 3.
    let y_pool: Vec<Expr> = vec![
        p.chiral_y(1, 1),
        p.chiral_y(1, 2),
        p.chiral_y(2, 1),
        p.chiral_y(2, 2),
        theta(1),
        theta(2),
    ];
    for _ in 0..20 {
        let f = random_from(&mut rng, &y_pool);
        for ad in [1u8, 2] {
            assert!(make_dbar(ad).apply(&f).is_zero());
        }
    }

    // nu_a D^a F = 0 on supertwistor composites.
    let zbar_pool: Vec<Expr> = vec![
        nu(1),
        nu(2),
        p.qbar(Family::Nu, 1),
        p.qbar(Family::Nu, 2),
        p.eta(Family::Nu),
    ];
    for _ in 0..20 {
        let f = random_from(&mut rng, &zbar_pool);
        let mut acc = Expr::zero();
        for a in [1u8, 2] {
            acc = acc.add(&nu(a).mul(&make_d(a).apply(&f)));
        }
        assert!(acc.is_zero());
    }

    // nubar_ad d/dx_{a ad} F = 0 on theta-twistor composites.
    let xi_pool: Vec<Expr> = vec![
        p.l(Family::NuBar, 1),
        p.l(Family::NuBar, 2),
        gen_up(Family::NuBar, 1),
        gen_up(Family::NuBar, 2),
        theta(1),
        theta(2),
    ];
    for _ in 0..20 {
        let f = random_from(&mut rng, &xi_pool);
        for a in [1u8, 2] {
            let mut acc = Expr::zero();
            for ad in [1u8, 2] {
                acc = acc.add(
                    &nubar(ad).mul(&f.derive(&Generator::pair(Family::X, a, ad), true)),
                );
            }
            assert!(acc.is_zero());
        }
    }
    finish(5, "constraint solution classes are annihilated", t0, Duration::from_secs(10));
}

#[test]
fn criterion_06_masslessness() {
    let t0 = Instant::now();
    let p = SuperPoint::standard();
    let mut rng = SplitMix::new(6);
    let random_from = |rng: &mut SplitMix, pool: &[Expr]| -> Expr {
        let mut acc = Expr::zero();
        for _ in 0..3 {
            let mut t = Expr::constant(rng.small_gaussian());
            for _ in 0..rng.int_in(0, 3) {
                t = t.mul(&pool[rng.usize_below(pool.len())]);
            }
            acc = acc.add(&t);
        }
        acc
    };
    let xi_pool: Vec<Expr> = vec![
        p.l(Family::NuBar, 1),
        p.l(Family::NuBar, 2),
        gen_up(Family::NuBar, 1),
        gen_up(Family::NuBar, 2),
        theta(1),
        theta(2),
    ];
    let zbar_pool: Vec<Expr> = vec![
        nu(1),
        nu(2),
        p.qbar(Family::Nu, 1),
        p.qbar(Family::Nu, 2),
        p.eta(Family::Nu),
    ];
    for pool in [&xi_pool, &zbar_pool] {
        for _ in 0..10 {
            let f = random_from(&mut rng, pool);
            assert!(box_op(&f, Family::X).unwrap().is_zero());
        }
    }
    // Transform outputs.
    let st = ElementaryState::new(
        Spin(2),
        1,
        2,
        3,
        [Scalar::int(1), Scalar::int(2)],
        [Scalar::int(0), Scalar::int(1)],
        [Scalar::int(1), Scalar::int(1)],
    )
    .unwrap();
    let m = contour_transform(&st.section, &[st.pole_a().unwrap(), st.pole_b().unwrap()])
        .unwrap();
    assert!(check_massless(&m).unwrap().is_empty());
    finish(6, "box annihilates both section classes and transform outputs", t0, Duration::from_secs(10));
}

#[test]
fn criterion_07_transform_correctness() {
    let t0 = Instant::now();
    let mut rng = SplitMix::new(7);
    let spins: [(Spin, u32, u32, u32); 4] = [
        (Spin(0), 1, 2, 1),
        (Spin(1), 1, 2, 2),
        (Spin(2), 1, 2, 3),
        (Spin(3), 1, 3, 3),
    ];
    for (spin, k, pp, qq) in spins {
        for choice in 0..3 {
            let st = loop {
                let pair = |rng: &mut SplitMix| [rng.small_gaussian(), rng.small_gaussian()];
                let abar = pair(&mut rng);
                let bbar = pair(&mut rng);
                let c = pair(&mut rng);
                if abar[1].is_zero() || bbar[1].is_zero() || (c[0].is_zero() && c[1].is_zero())
                {
                    continue;
                }
                match ElementaryState::new(spin, k, pp, qq, abar, bbar, c) {
                    Ok(st) => break st,
                    Err(_) => continue,
                }
            };
            let pa = st.pole_a().unwrap();
            let pb = st.pole_b().unwrap();
            let subsets: [Vec<Expr>; 4] =
                [vec![], vec![pa.clone()], vec![pb.clone()], vec![pa, pb]];
            for poles in &subsets {
                let m = contour_transform(&st.section, poles).unwrap();
                let dirac = check_dirac(&m).unwrap();
                assert!(
                    dirac.is_empty(),
                    "spin {} choice {}: {} -> {}",
                    spin,
                    choice,
                    dirac[0].0,
                    dirac[0].1
                );
            }
        }
    }
    finish(7, "chiral Dirac equations hold for every spin, choice and pole subset", t0, Duration::from_secs(60));
}

#[test]
fn criterion_08_auxiliary_field_presence() {
    let t0 = Instant::now();
    let st = ElementaryState::new(
        Spin(0),
        0,
        1,
        1,
        [Scalar::int(1), Scalar::int(1)],
        [Scalar::int(0), Scalar::int(1)],
        [Scalar::int(1), Scalar::int(0)],
    )
    .unwrap();
    let mut section = st.section.clone();
    section.g2 = section.g0.clone();
    let m = contour_transform(&section, &[st.pole_b().unwrap()]).unwrap();
    assert!(!m.f[0].is_zero(), "auxiliary field vanished");
    finish(8, "auxiliary field survives at S = 0", t0, Duration::from_secs(1));
}

#[test]
fn criterion_09_component_susy() {
    let t0 = Instant::now();
    let mut rng = SplitMix::new(9);
    // An S = 1/2 multiplet with every component populated, plus the S = 0
    // reduction with indexless fields.
    let mut multiplets: Vec<ChiralMultiplet> = Vec::new();
    {
        let st = ElementaryState::new(
            Spin(1),
            1,
            2,
            2,
            [Scalar::int(1), Scalar::int(1)],
            [Scalar::int(0), Scalar::int(1)],
            [Scalar::int(1), Scalar::int(2)],
        )
        .unwrap();
        let mut section = st.section.clone();
        section.g1[0] = section.g0.clone();
        section.g1[1] = section.g0.scale(&Scalar::int(2));
        section.g2 = section.g0.scale(&Scalar::int(-3));
        multiplets.push(contour_transform(&section, &[st.pole_a().unwrap()]).unwrap());
    }
    {
        let y_pool: Vec<Expr> = (1u8..=2)
            .flat_map(|a| (1u8..=2).map(move |ad| Expr::gen(y_gen(a, ad))))
            .collect();
        let mut m = ChiralMultiplet::zero(Spin(0));
        let rand_poly = |rng: &mut SplitMix| {
            let mut acc = Expr::zero();
            for _ in 0..3 {
                let mut t = Expr::constant(rng.small_gaussian());
                for _ in 0..rng.int_in(0, 2) {
                    t = t.mul(&y_pool[rng.usize_below(4)]);
                }
                acc = acc.add(&t);
            }
            acc
        };
        m.a[0] = rand_poly(&mut rng);
        m.psi[0][0] = rand_poly(&mut rng);
        m.psi[1][0] = rand_poly(&mut rng);
        m.f[0] = rand_poly(&mut rng);
        multiplets.push(m);
    }
    for (i, m) in multiplets.iter().enumerate() {
        // The displayed component laws coincide with the superspace route.
        let law = component_susy(m, 1).unwrap();
        let sup = component_susy_via_superspace(m, 1).unwrap();
        assert!(law.sub(&sup).is_zero(), "multiplet {}", i);
        // Closure is a field-independent translation, uniform across fields.
        let d12 = component_susy(&component_susy(m, 2).unwrap(), 1).unwrap();
        let d21 = component_susy(&component_susy(m, 1).unwrap(), 2).unwrap();
        let comm = d12.sub(&d21);
        let translate = |field: &Vec<Expr>| -> Vec<Expr> {
            field
                .iter()
                .map(|e| {
                    let mut acc = Expr::zero();
                    for a in [1u8, 2] {
                        for ad in [1u8, 2] {
                            acc = acc.add(
                                &closure_shift(a, ad, 1, 2)
                                    .unwrap()
                                    .mul(&e.derive(&y_gen(a, ad), true)),
                            );
                        }
                    }
                    acc
                })
                .collect()
        };
        assert_eq!(comm.a, translate(&m.a));
        assert_eq!(comm.psi[0], translate(&m.psi[0]));
        assert_eq!(comm.psi[1], translate(&m.psi[1]));
        assert_eq!(comm.f, translate(&m.f));
    }
    finish(9, "component susy laws derive from superspace and close on translations", t0, Duration::from_secs(30));
}

#[test]
fn criterion_10_r_symmetry() {
    let t0 = Instant::now();
    let st = ElementaryState::new(
        Spin(1),
        1,
        2,
        2,
        [Scalar::int(1), Scalar::int(1)],
        [Scalar::int(0), Scalar::int(1)],
        [Scalar::int(1), Scalar::int(2)],
    )
    .unwrap();
    let mut section = st.section.clone();
    section.g1[0] = section.g0.clone();
    section.g2 = section.g0.clone();
    let n2 = 1i64;
    let pole = st.pole_a().unwrap();
    let m = contour_transform(&section, &[pole.clone()]).unwrap();
    let m_rot = r_transform_multiplet(&m, n2, 1);
    // Phi'(y, theta) = w^2n Phi(y, w^-1 theta), exactly.
    let w_inv = unit_power(1, -1);
    let mut rot_theta = BTreeMap::new();
    for l in [1u8, 2] {
        rot_theta.insert(Generator::indexed(Family::Theta, l), w_inv.mul(&theta(l)));
    }
    let lhs = assemble_superfield(&m_rot);
    for (k, phi) in assemble_superfield(&m).iter().enumerate() {
        let rhs = phi.substitute(&rot_theta).unwrap().mul(&unit_power(1, n2));
        assert!(lhs[k].sub(&rhs).is_zero(), "component {}", k);
    }
    // The section-level action commutes with the transform.
    let m_direct =
        contour_transform(&r_transform_section(&section, n2, 1).unwrap(), &[pole]).unwrap();
    assert!(m_direct.sub(&m_rot).is_zero());
    // Weights compose additively across independent unit symbols.
    let twice =
        r_transform_section(&r_transform_section(&section, n2, 1).unwrap(), n2, 2).unwrap();
    let both = section.g0.mul(&unit_power(1, n2)).mul(&unit_power(2, n2));
    assert!(twice.g0.sub(&both).is_zero());
    finish(10, "R-symmetry acts with the forced weights and composes additively", t0, Duration::from_secs(5));
}

#[test]
fn criterion_11_oracle_cross_check() {
    let t0 = Instant::now();
    let p = SuperPoint::standard();
    let mut identities: Vec<(String, Expr)> = Vec::new();
    for a in [1u8, 2] {
        for ad in [1u8, 2] {
            identities.push((
                format!("cartan-volkov-{}{}", a, ad),
                susy_variation(&cartan_volkov(&p, a, ad), 1).unwrap(),
            ));
        }
    }
    let s = s_form(&p, &build_z(&p, Family::NuBar), &build_zbar(&p, Family::NuPrime));
    let st = s_tilde_form(&p, &build_xi(&p, Family::NuBar), &build_xibar(&p, Family::NuPrime));
    identities.push(("form-equivalence".into(), s.sub(&st)));
    identities.push(("bilinear-invariance".into(), susy_variation(&s, 1).unwrap()));
    identities.push(("nonlinear-invariance".into(), susy_variation(&st, 1).unwrap()));
    for a in [1u8, 2] {
        let lq = p.l(Family::NuBar, a).sub(
            &p.q(Family::NuBar, a).sub(
                &theta(a)
                    .mul(&p.etabar(Family::NuBar))
                    .scale(&Qis::int_i(4)),
            ),
        );
        identities.push((format!("composite-identity-{}", a), lq));
    }
    // A bracket-table entry and a chirality instance.
    let spanning = twistor_ring_spanning();
    let table = make_twistor_q(1).bracket_table(&make_twistor_qbar(2), &spanning);
    for (g, val) in table {
        let expect = make_twistor_p(2, 1).apply(&Expr::gen(g)).scale(&Qis::int_i(4));
        identities.push((format!("bracket-on-{}", g), val.sub(&expect)));
    }
    identities.push((
        "chirality-instance".into(),
        make_dbar(1).apply(&p.chiral_y(1, 2).pow(2).mul(&theta(1))),
    ));
    identities.push((
        "conjugation-instance".into(),
        p.qbar(Family::Nu, 1)
            .conjugate(ConjMode::HermitianX)
            .sub(&p.q(Family::NuBar, 1)),
    ));

    let mut seed = 0xACC11u64;
    for (name, e) in &identities {
        assert!(e.is_zero(), "{} not symbolically zero", name);
        seed = seed.wrapping_add(1);
        let ok = oracle::confirms_zero(e, seed, 10, oracle::DEFAULT_MODE_BOUND).unwrap();
        assert!(ok, "{} failed the matrix oracle", name);
    }
    // Control: the oracle is not blind.
    let nonzero = theta(1).mul(&thetabar(2)).add(&x(1, 1));
    assert!(!oracle::confirms_zero(&nonzero, 99, 10, oracle::DEFAULT_MODE_BOUND).unwrap());
    finish(11, "matrix oracle confirms every symbolic zero", t0, Duration::from_secs(60));
}

#[test]
fn criterion_12_negative_controls() {
    let t0 = Instant::now();
    for name in suites::SUITE_NAMES {
        if name == "all" {
            continue;
        }
        let report = suites::run_suite(name, 0).unwrap();
        assert_eq!(report.failed, 0, "suite {} has failures:\n{}", name, report.to_text());
        let controls: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.id.contains("negctl"))
            .collect();
        assert!(!controls.is_empty(), "suite {} has no negative control", name);
        for c in controls {
            assert_eq!(c.status, theta_twistor::report::Status::Pass);
            let witness = c.witness.as_ref().expect("control carries its witness");
            assert!(!witness.is_empty() && witness != "0");
        }
    }
    // The report fail-path: an injected broken identity produces a fail
    // entry with a non-null witness.
    let broken = theta(1).mul(&theta(2)).sub(&theta(2).mul(&theta(1)));
    assert!(!broken.is_zero());
    let injected = theta_twistor::report::VerificationReport::new(
        "injected",
        vec![theta_twistor::report::Check::fail(
            "injected-control",
            "plumbing",
            broken.to_string(),
        )],
    );
    assert!(injected.has_failures());
    let v: serde_json::Value = serde_json::from_str(&injected.to_json()).unwrap();
    assert!(v["checks"][0]["witness"].is_string());
    finish(12, "every suite carries a visibly nonzero broken identity", t0, Duration::from_secs(120));
}
