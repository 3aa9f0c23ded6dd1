//! The supertwistor and the theta-twistor: construction from a superspace
//! point, the bilinear forms s and s-tilde, and the finite symmetry maps
//! (scale/phase and gamma5) realized by exact unit symbols.

use crate::conventions::eps_down;
use crate::error::Error;
use crate::generator::{Family, Generator};
use crate::scalar::Qis;
use crate::spinor::gen_up;
use crate::superspace::{theta, thetabar, SuperPoint};
use crate::{Expr, Scalar};
use std::collections::BTreeMap;

/// Z_A = (-i q_a, nubar^ad, 2 etabar), built on the bar spinor family.
#[derive(Clone, Debug)]
pub struct SuperTwistor {
    pub nubar_fam: Family,
    pub slot1: [Expr; 2],
    pub slot2: [Expr; 2],
    pub slot3: Expr,
}

/// Zbar^A = (nu^a, i qbar_ad, 2 eta), built on an unbarred spinor family
/// (nu or the independent primed spinor).
#[derive(Clone, Debug)]
pub struct SuperTwistorBar {
    pub nu_fam: Family,
    pub slot1: [Expr; 2],
    pub slot2: [Expr; 2],
    pub slot3: Expr,
}

/// Xi_A = (-i l_a, nubar^ad, theta^a).
#[derive(Clone, Debug)]
pub struct ThetaTwistor {
    pub nubar_fam: Family,
    pub slot1: [Expr; 2],
    pub slot2: [Expr; 2],
    pub slot3: [Expr; 2],
}

/// Xibar^A = (nu^a, i lbar_ad, thetabar^ad).
#[derive(Clone, Debug)]
pub struct ThetaTwistorBar {
    pub nu_fam: Family,
    pub slot1: [Expr; 2],
    pub slot2: [Expr; 2],
    pub slot3: [Expr; 2],
}

fn minus_i() -> Scalar {
    Qis::int_i(-1)
}

fn plus_i() -> Scalar {
    Qis::imag_unit()
}

pub fn build_z(p: &SuperPoint, nubar_fam: Family) -> SuperTwistor {
    SuperTwistor {
        nubar_fam,
        slot1: [
            p.q(nubar_fam, 1).scale(&minus_i()),
            p.q(nubar_fam, 2).scale(&minus_i()),
        ],
        slot2: [gen_up(nubar_fam, 1), gen_up(nubar_fam, 2)],
        slot3: p.etabar(nubar_fam).scale(&Scalar::int(2)),
    }
}

pub fn build_zbar(p: &SuperPoint, nu_fam: Family) -> SuperTwistorBar {
    SuperTwistorBar {
        nu_fam,
        slot1: [gen_up(nu_fam, 1), gen_up(nu_fam, 2)],
        slot2: [
            p.qbar(nu_fam, 1).scale(&plus_i()),
            p.qbar(nu_fam, 2).scale(&plus_i()),
        ],
        slot3: p.eta(nu_fam).scale(&Scalar::int(2)),
    }
}

/// Builds the theta-twistor, asserting the composite identity
/// l_a = q_a - 4i theta_a etabar at construction.
pub fn build_xi(p: &SuperPoint, nubar_fam: Family) -> ThetaTwistor {
    for a in [1u8, 2] {
        let l = p.l(nubar_fam, a);
        let q = p.q(nubar_fam, a);
        let shift = theta(a)
            .mul(&p.etabar(nubar_fam))
            .scale(&Qis::int_i(-4));
        assert!(
            l.sub(&q.add(&shift)).is_zero(),
            "composite spinor identity violated"
        );
    }
    ThetaTwistor {
        nubar_fam,
        slot1: [
            p.l(nubar_fam, 1).scale(&minus_i()),
            p.l(nubar_fam, 2).scale(&minus_i()),
        ],
        slot2: [gen_up(nubar_fam, 1), gen_up(nubar_fam, 2)],
        slot3: [gen_up(Family::Theta, 1), gen_up(Family::Theta, 2)],
    }
}

pub fn build_xibar(p: &SuperPoint, nu_fam: Family) -> ThetaTwistorBar {
    ThetaTwistorBar {
        nu_fam,
        slot1: [gen_up(nu_fam, 1), gen_up(nu_fam, 2)],
        slot2: [
            p.lbar(nu_fam, 1).scale(&plus_i()),
            p.lbar(nu_fam, 2).scale(&plus_i()),
        ],
        slot3: [gen_up(Family::ThetaBar, 1), gen_up(Family::ThetaBar, 2)],
    }
}

/// s(Z, Zbar') = -i Z_A Zbar'^A = -q_a nu'^a + nubar^ad qbar'_ad - 4i etabar eta'.
pub fn s_form(p: &SuperPoint, z: &SuperTwistor, zbar: &SuperTwistorBar) -> Expr {
    let mut acc = Expr::zero();
    for a in [1u8, 2] {
        acc = acc.add(&p.q(z.nubar_fam, a).mul(&gen_up(zbar.nu_fam, a)).neg());
        acc = acc.add(&gen_up(z.nubar_fam, a).mul(&p.qbar(zbar.nu_fam, a)));
    }
    acc.add(
        &p.etabar(z.nubar_fam)
            .mul(&p.eta(zbar.nu_fam))
            .scale(&Qis::int_i(-4)),
    )
}

/// s-tilde(Xi, Xibar') = -l_a nu'^a + nubar^ad lbar'_ad
///                       - i g_{a ad} theta^a thetabar^ad
/// with g_{a ad} = 4 nu'_a nubar_ad.
pub fn s_tilde_form(p: &SuperPoint, xi: &ThetaTwistor, xibar: &ThetaTwistorBar) -> Expr {
    let mut acc = Expr::zero();
    for a in [1u8, 2] {
        acc = acc.add(&p.l(xi.nubar_fam, a).mul(&gen_up(xibar.nu_fam, a)).neg());
        acc = acc.add(&gen_up(xi.nubar_fam, a).mul(&p.lbar(xibar.nu_fam, a)));
    }
    for a in [1u8, 2] {
        for ad in [1u8, 2] {
            let g = Expr::gen(Generator::indexed(xibar.nu_fam, a))
                .mul(&Expr::gen(Generator::indexed(xi.nubar_fam, ad)))
                .scale(&Scalar::int(4));
            let odd = gen_up(Family::Theta, a).mul(&gen_up(Family::ThetaBar, ad));
            acc = acc.add(&g.mul(&odd).scale(&minus_i()));
        }
    }
    acc
}

/// The finite scale/phase map: the unit symbols t, tb stand for
/// exp(phi) and exp(phi*), with t * t^-1 = 1 enforced by the rational
/// arithmetic. Realized as a substitution on the base coordinates.
pub fn scale_phase_map() -> BTreeMap<Generator, Expr> {
    let t = Expr::gen(Generator::scalar_sym(Family::T));
    let tb = Expr::gen(Generator::scalar_sym(Family::TBar));
    let t_inv = Expr::one().div(&t).expect("unit symbol");
    let tb_inv = Expr::one().div(&tb).expect("unit symbol");
    let mut map = BTreeMap::new();
    for a in [1u8, 2] {
        map.insert(
            Generator::indexed(Family::Theta, a),
            t.mul(&theta(a)),
        );
        map.insert(
            Generator::indexed(Family::ThetaBar, a),
            tb.mul(&thetabar(a)),
        );
        for (fam, inv) in [
            (Family::Nu, &t_inv),
            (Family::NuPrime, &t_inv),
            (Family::NuBar, &tb_inv),
            (Family::NuPrimeBar, &tb_inv),
        ] {
            map.insert(
                Generator::indexed(fam, a),
                inv.mul(&Expr::gen(Generator::indexed(fam, a))),
            );
        }
        for ad in [1u8, 2] {
            map.insert(
                Generator::pair(Family::X, a, ad),
                t.mul(&tb).mul(&crate::superspace::x(a, ad)),
            );
        }
    }
    map
}

/// The gamma5 rotation: theta -> w theta, thetabar -> w^-1 thetabar with
/// the exact unit symbol w.
pub fn gamma5_map(unit: u8) -> BTreeMap<Generator, Expr> {
    let w = Expr::gen(Generator::scalar_sym(Family::Unit(unit)));
    let w_inv = Expr::one().div(&w).expect("unit symbol");
    let mut map = BTreeMap::new();
    for a in [1u8, 2] {
        map.insert(Generator::indexed(Family::Theta, a), w.mul(&theta(a)));
        map.insert(
            Generator::indexed(Family::ThetaBar, a),
            w_inv.mul(&thetabar(a)),
        );
    }
    map
}

/// Applies a coordinate map to every slot of the theta-twistor.
pub fn transform_xi(xi: &ThetaTwistor, map: &BTreeMap<Generator, Expr>) -> Result<ThetaTwistor, Error> {
    let sub = |e: &Expr| e.substitute(map);
    Ok(ThetaTwistor {
        nubar_fam: xi.nubar_fam,
        slot1: [sub(&xi.slot1[0])?, sub(&xi.slot1[1])?],
        slot2: [sub(&xi.slot2[0])?, sub(&xi.slot2[1])?],
        slot3: [sub(&xi.slot3[0])?, sub(&xi.slot3[1])?],
    })
}

/// nu'_a components used in g_{a ad}; lowered from the stored up-position.
pub fn nu_down(fam: Family, a: u8) -> Expr {
    let mut acc = Expr::zero();
    for b in [1u8, 2] {
        acc = acc.add(&gen_up(fam, b).scale(&eps_down(a, b)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ConjMode;
    use crate::superspace::{nu, susy_variation, x};

    fn p() -> SuperPoint {
        SuperPoint::standard()
    }

    fn epsb(ad: u8) -> Expr {
        Expr::gen(Generator::indexed(Family::EpsBar(1), ad))
    }

    #[test]
    fn qbar_expansion() {
        // qbar_ad = nu^a x_{a ad} - 2i eta thetabar_ad.
        for ad in [1u8, 2] {
            let mut expect = Expr::zero();
            for a in [1u8, 2] {
                expect = expect.add(&gen_up(Family::Nu, a).mul(&x(a, ad)));
            }
            expect = expect.sub(
                &p().eta(Family::Nu)
                    .mul(&thetabar(ad))
                    .scale(&Qis::int_i(2)),
            );
            assert!(p().qbar(Family::Nu, ad).sub(&expect).is_zero());
        }
    }

    #[test]
    fn l_expansion_and_composite_identity() {
        // l_a = x_{a ad} nubar^ad - 2i theta_a etabar, and
        // l_a = q_a - 4i theta_a etabar.
        for a in [1u8, 2] {
            let mut expect = Expr::zero();
            for ad in [1u8, 2] {
                expect = expect.add(&x(a, ad).mul(&gen_up(Family::NuBar, ad)));
            }
            expect = expect.sub(
                &theta(a)
                    .mul(&p().etabar(Family::NuBar))
                    .scale(&Qis::int_i(2)),
            );
            assert!(p().l(Family::NuBar, a).sub(&expect).is_zero());
            let via_q = p().q(Family::NuBar, a).sub(
                &theta(a)
                    .mul(&p().etabar(Family::NuBar))
                    .scale(&Qis::int_i(4)),
            );
            assert!(p().l(Family::NuBar, a).sub(&via_q).is_zero());
        }
        // build_xi runs the same assertion internally.
        let _ = build_xi(&p(), Family::NuBar);
    }

    #[test]
    fn z_at_theta_zero_is_the_incidence_pair() {
        let z = build_z(&p(), Family::NuBar);
        let mut zero_odd = BTreeMap::new();
        for a in [1u8, 2] {
            zero_odd.insert(Generator::indexed(Family::Theta, a), Expr::zero());
            zero_odd.insert(Generator::indexed(Family::ThetaBar, a), Expr::zero());
        }
        // slot3 = 2 etabar vanishes, slot1 = -i x nubar.
        assert!(z.slot3.clone().substitute(&zero_odd).unwrap().is_zero());
        for a in [1u8, 2] {
            let mut expect = Expr::zero();
            for ad in [1u8, 2] {
                expect = expect.add(&x(a, ad).mul(&gen_up(Family::NuBar, ad)));
            }
            assert!(z.slot1[(a - 1) as usize]
                .substitute(&zero_odd)
                .unwrap()
                .sub(&expect.scale(&Qis::int_i(-1)))
                .is_zero());
        }
    }

    #[test]
    fn nonlinear_variation_of_l() {
        // delta l_a = -4i theta_a (nubar^bd epsbar_bd).
        let nubar_eps = {
            let mut acc = Expr::zero();
            for bd in [1u8, 2] {
                acc = acc.add(&gen_up(Family::NuBar, bd).mul(&epsb(bd)));
            }
            acc
        };
        for a in [1u8, 2] {
            let dl = susy_variation(&p().l(Family::NuBar, a), 1).unwrap();
            let expect = theta(a).mul(&nubar_eps).scale(&Qis::int_i(-4));
            assert!(dl.sub(&expect).is_zero());
        }
    }

    #[test]
    fn eta_is_not_invariant() {
        let deta = susy_variation(&p().eta(Family::Nu), 1).unwrap();
        assert!(!deta.is_zero());
    }

    #[test]
    fn s_equals_s_tilde_identically() {
        let z = build_z(&p(), Family::NuBar);
        let zbar_p = build_zbar(&p(), Family::NuPrime);
        let xi = build_xi(&p(), Family::NuBar);
        let xibar_p = build_xibar(&p(), Family::NuPrime);
        let s = s_form(&p(), &z, &zbar_p);
        let st = s_tilde_form(&p(), &xi, &xibar_p);
        assert!(s.sub(&st).is_zero());
    }

    #[test]
    fn s_reproduces_displayed_terms() {
        // The three summands of the bilinear form, assembled separately.
        let z = build_z(&p(), Family::NuBar);
        let zbar_p = build_zbar(&p(), Family::NuPrime);
        let s = s_form(&p(), &z, &zbar_p);
        let mut sum = Expr::zero();
        for a in [1u8, 2] {
            sum = sum.sub(&p().q(Family::NuBar, a).mul(&gen_up(Family::NuPrime, a)));
            sum = sum.add(&gen_up(Family::NuBar, a).mul(&p().qbar(Family::NuPrime, a)));
        }
        sum = sum.add(
            &p().etabar(Family::NuBar)
                .mul(&p().eta(Family::NuPrime))
                .scale(&Qis::int_i(-4)),
        );
        assert_eq!(s, sum);
        // -i Z_A Zbar'^A from the slots agrees.
        let mut slots = Expr::zero();
        for a in 0..2 {
            slots = slots.add(&z.slot1[a].mul(&zbar_p.slot1[a]));
            slots = slots.add(&z.slot2[a].mul(&zbar_p.slot2[a]));
        }
        slots = slots.add(&z.slot3.mul(&zbar_p.slot3));
        assert!(s.sub(&slots.scale(&minus_i())).is_zero());
    }

    #[test]
    fn s_vanishes_at_theta_zero_incidence() {
        let z = build_z(&p(), Family::NuBar);
        let zbar_p = build_zbar(&p(), Family::NuPrime);
        let s = s_form(&p(), &z, &zbar_p);
        let mut map = BTreeMap::new();
        for a in [1u8, 2] {
            map.insert(Generator::indexed(Family::Theta, a), Expr::zero());
            map.insert(Generator::indexed(Family::ThetaBar, a), Expr::zero());
            map.insert(Generator::indexed(Family::NuPrime, a), nu(a));
        }
        assert!(s.substitute(&map).unwrap().is_zero());
    }

    #[test]
    fn susy_leaves_both_forms_invariant() {
        let z = build_z(&p(), Family::NuBar);
        let zbar_p = build_zbar(&p(), Family::NuPrime);
        let s = s_form(&p(), &z, &zbar_p);
        assert!(susy_variation(&s, 1).unwrap().is_zero());
        let xi = build_xi(&p(), Family::NuBar);
        let xibar_p = build_xibar(&p(), Family::NuPrime);
        let st = s_tilde_form(&p(), &xi, &xibar_p);
        assert!(susy_variation(&st, 1).unwrap().is_zero());
    }

    #[test]
    fn conjugation_swaps_twistor_slots() {
        // With hermitian x: (Xi slot1)* = Xibar slot2, (slot2)* = slot1,
        // (slot3)* = slot3, matching Zbar = Z* componentwise.
        let xi = build_xi(&p(), Family::NuBar);
        let xibar = build_xibar(&p(), Family::Nu);
        for a in 0..2 {
            assert_eq!(xi.slot1[a].conjugate(ConjMode::HermitianX), xibar.slot2[a]);
            assert_eq!(xi.slot2[a].conjugate(ConjMode::HermitianX), xibar.slot1[a]);
            assert_eq!(xi.slot3[a].conjugate(ConjMode::HermitianX), xibar.slot3[a]);
        }
        let z = build_z(&p(), Family::NuBar);
        let zbar = build_zbar(&p(), Family::Nu);
        for a in 0..2 {
            assert_eq!(z.slot1[a].conjugate(ConjMode::HermitianX), zbar.slot2[a]);
            assert_eq!(z.slot2[a].conjugate(ConjMode::HermitianX), zbar.slot1[a]);
        }
        assert_eq!(z.slot3.conjugate(ConjMode::HermitianX), zbar.slot3);
    }

    #[test]
    fn scale_phase_acts_as_displayed_and_preserves_s_tilde() {
        let map = scale_phase_map();
        let t = Expr::gen(Generator::scalar_sym(Family::T));
        let tb = Expr::gen(Generator::scalar_sym(Family::TBar));
        let tb_inv = Expr::one().div(&tb).unwrap();
        // Slot laws: l' = t l, nubar' = tb^-1 nubar, theta' = t theta.
        let xi = build_xi(&p(), Family::NuBar);
        let xi_t = transform_xi(&xi, &map).unwrap();
        for a in 0..2 {
            assert!(xi_t.slot1[a].sub(&t.mul(&xi.slot1[a])).is_zero());
            assert!(xi_t.slot2[a].sub(&tb_inv.mul(&xi.slot2[a])).is_zero());
            assert!(xi_t.slot3[a].sub(&t.mul(&xi.slot3[a])).is_zero());
        }
        // Invariance of the nonlinear form.
        let xibar_p = build_xibar(&p(), Family::NuPrime);
        let st = s_tilde_form(&p(), &xi, &xibar_p);
        let st_t = st.substitute(&map).unwrap();
        assert!(st_t.sub(&st).is_zero());
        // phi = 0 (t = tb = 1) degenerates to the identity map.
        let mut unit_map = BTreeMap::new();
        unit_map.insert(Generator::scalar_sym(Family::T), Expr::one());
        unit_map.insert(Generator::scalar_sym(Family::TBar), Expr::one());
        let st_back = st_t.substitute(&unit_map).unwrap();
        assert!(st_back.sub(&st).is_zero());
    }

    #[test]
    fn gamma5_preserves_s_tilde() {
        let xi = build_xi(&p(), Family::NuBar);
        let xibar_p = build_xibar(&p(), Family::NuPrime);
        let st = s_tilde_form(&p(), &xi, &xibar_p);
        let st_rot = st.substitute(&gamma5_map(1)).unwrap();
        assert!(st_rot.sub(&st).is_zero());
    }
}
