//! Superspace coordinates, the chiral shift, the Cartan-Volkov form, SUSY
//! variations, covariant derivatives and the theta-twistor realization of
//! the SUSY generators.

use crate::error::Error;
use crate::generator::{Family, Generator};
use crate::scalar::Qis;
use crate::spinor::gen_up;
use crate::{Expr, Scalar};
use std::collections::BTreeMap;

pub fn x(a: u8, ad: u8) -> Expr {
    Expr::gen(Generator::pair(Family::X, a, ad))
}

pub fn theta(a: u8) -> Expr {
    Expr::gen(Generator::indexed(Family::Theta, a))
}

pub fn thetabar(ad: u8) -> Expr {
    Expr::gen(Generator::indexed(Family::ThetaBar, ad))
}

pub fn nu(a: u8) -> Expr {
    Expr::gen(Generator::indexed(Family::Nu, a))
}

pub fn nubar(ad: u8) -> Expr {
    Expr::gen(Generator::indexed(Family::NuBar, ad))
}

fn two_i() -> Scalar {
    Qis::int_i(2)
}

/// The standard superspace point (x, theta, thetabar) extended by the
/// commuting spinor pair (nu, nubar). Purely a coordinate namespace; all
/// generators are global.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuperPoint;

impl SuperPoint {
    pub fn standard() -> Self {
        SuperPoint
    }

    /// y_{a ad} = x_{a ad} - 2i theta_a thetabar_ad.
    pub fn chiral_y(&self, a: u8, ad: u8) -> Expr {
        x(a, ad).sub(&theta(a).mul(&thetabar(ad)).scale(&two_i()))
    }

    /// ybar_{a ad} = x_{a ad} + 2i theta_a thetabar_ad, the antichiral
    /// companion at the same complex x.
    pub fn antichiral_y(&self, a: u8, ad: u8) -> Expr {
        x(a, ad).add(&theta(a).mul(&thetabar(ad)).scale(&two_i()))
    }

    /// eta = nu^a theta_a (or the primed variant).
    pub fn eta(&self, nu_fam: Family) -> Expr {
        let mut acc = Expr::zero();
        for a in [1u8, 2] {
            acc = acc.add(&gen_up(nu_fam, a).mul(&theta(a)));
        }
        acc
    }

    /// etabar = nubar^ad thetabar_ad.
    pub fn etabar(&self, nubar_fam: Family) -> Expr {
        let mut acc = Expr::zero();
        for ad in [1u8, 2] {
            acc = acc.add(&gen_up(nubar_fam, ad).mul(&thetabar(ad)));
        }
        acc
    }

    /// qbar_ad = nu^a y_{a ad}.
    pub fn qbar(&self, nu_fam: Family, ad: u8) -> Expr {
        let mut acc = Expr::zero();
        for a in [1u8, 2] {
            acc = acc.add(&gen_up(nu_fam, a).mul(&self.chiral_y(a, ad)));
        }
        acc
    }

    /// q_a = ybar_{a ad} nubar^ad.
    pub fn q(&self, nubar_fam: Family, a: u8) -> Expr {
        let mut acc = Expr::zero();
        for ad in [1u8, 2] {
            acc = acc.add(&self.antichiral_y(a, ad).mul(&gen_up(nubar_fam, ad)));
        }
        acc
    }

    /// l_a = y_{a ad} nubar^ad, the composite spinor from right
    /// multiplication.
    pub fn l(&self, nubar_fam: Family, a: u8) -> Expr {
        let mut acc = Expr::zero();
        for ad in [1u8, 2] {
            acc = acc.add(&self.chiral_y(a, ad).mul(&gen_up(nubar_fam, ad)));
        }
        acc
    }

    /// lbar_ad = nu^a ybar_{a ad}.
    pub fn lbar(&self, nu_fam: Family, ad: u8) -> Expr {
        let mut acc = Expr::zero();
        for a in [1u8, 2] {
            acc = acc.add(&gen_up(nu_fam, a).mul(&self.antichiral_y(a, ad)));
        }
        acc
    }
}

/// Exterior derivative: d = sum_g dg * d_L/dg over the declared coordinate
/// pairs. Constants (nu, nubar, parameters, unit symbols) have no
/// differential and are annihilated.
pub fn exterior_d(e: &Expr) -> Expr {
    let mut out = Expr::zero();
    for a in [1u8, 2] {
        for ad in [1u8, 2] {
            let dx = Expr::gen(Generator::pair(Family::DX, a, ad));
            out = out.add(&dx.mul(&e.derive(&Generator::pair(Family::X, a, ad), true)));
            let dxb = Expr::gen(Generator::pair(Family::DXBar, a, ad));
            out = out.add(&dxb.mul(&e.derive(&Generator::pair(Family::XBar, a, ad), true)));
        }
        let dth = Expr::gen(Generator::indexed(Family::DTheta, a));
        out = out.add(&dth.mul(&e.derive(&Generator::indexed(Family::Theta, a), true)));
        let dthb = Expr::gen(Generator::indexed(Family::DThetaBar, a));
        out = out.add(&dthb.mul(&e.derive(&Generator::indexed(Family::ThetaBar, a), true)));
    }
    out
}

/// omega_{a ad} = dy_{a ad} + 4i dtheta_a thetabar_ad.
pub fn cartan_volkov(p: &SuperPoint, a: u8, ad: u8) -> Expr {
    let dy = exterior_d(&p.chiral_y(a, ad));
    let extra = Expr::gen(Generator::indexed(Family::DTheta, a))
        .mul(&thetabar(ad))
        .scale(&Qis::int_i(4));
    dy.add(&extra)
}

/// delta x_{a ad} = 2i (eps_a thetabar_ad - theta_a epsbar_ad).
fn delta_x(set: u8, a: u8, ad: u8) -> Expr {
    let eps = Expr::gen(Generator::indexed(Family::Eps(set), a));
    let epsb = Expr::gen(Generator::indexed(Family::EpsBar(set), ad));
    eps.mul(&thetabar(ad))
        .sub(&theta(a).mul(&epsb))
        .scale(&two_i())
}

/// First-order SUSY variation with the parameter set `set`: substitutes the
/// transformed coordinates (including the induced shift of dx) and keeps the
/// part linear in the parameters.
pub fn susy_variation(e: &Expr, set: u8) -> Result<Expr, Error> {
    let mut map: BTreeMap<Generator, Expr> = BTreeMap::new();
    for a in [1u8, 2] {
        let eps = Expr::gen(Generator::indexed(Family::Eps(set), a));
        let epsb = Expr::gen(Generator::indexed(Family::EpsBar(set), a));
        map.insert(Generator::indexed(Family::Theta, a), theta(a).add(&eps));
        map.insert(
            Generator::indexed(Family::ThetaBar, a),
            thetabar(a).add(&epsb),
        );
        for ad in [1u8, 2] {
            map.insert(
                Generator::pair(Family::X, a, ad),
                x(a, ad).add(&delta_x(set, a, ad)),
            );
            // d(eps) = 0, so the differential shifts by d(delta x).
            map.insert(
                Generator::pair(Family::DX, a, ad),
                Expr::gen(Generator::pair(Family::DX, a, ad))
                    .add(&exterior_d(&delta_x(set, a, ad))),
            );
        }
    }
    let shifted = e.substitute(&map)?;
    Ok(shifted.grade_part(&[Family::Eps(set), Family::EpsBar(set)], 1))
}

/// SUSY variation of a chiral expression written over (y, theta): the
/// engine-derived action theta -> theta + eps, y -> y - 4i theta epsbar.
pub fn susy_variation_chiral(e: &Expr, set: u8) -> Result<Expr, Error> {
    let mut map: BTreeMap<Generator, Expr> = BTreeMap::new();
    for a in [1u8, 2] {
        let eps = Expr::gen(Generator::indexed(Family::Eps(set), a));
        map.insert(Generator::indexed(Family::Theta, a), theta(a).add(&eps));
        for ad in [1u8, 2] {
            let epsb = Expr::gen(Generator::indexed(Family::EpsBar(set), ad));
            let y = Expr::gen(Generator::pair(Family::Y, a, ad));
            map.insert(
                Generator::pair(Family::Y, a, ad),
                y.sub(&theta(a).mul(&epsb).scale(&Qis::int_i(4))),
            );
        }
    }
    let shifted = e.substitute(&map)?;
    Ok(shifted.grade_part(&[Family::Eps(set), Family::EpsBar(set)], 1))
}

/// A first-order differential operator sum c_i d_L/dg_i with definite
/// Grassmann parity; immutable after construction.
#[derive(Clone, Debug)]
pub struct VectorField {
    pub name: String,
    pub parity: bool,
    terms: Vec<(Expr, Generator)>,
}

impl VectorField {
    pub fn new(name: impl Into<String>, parity: bool, terms: Vec<(Expr, Generator)>) -> Self {
        VectorField {
            name: name.into(),
            parity,
            terms,
        }
    }

    pub fn apply(&self, e: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (c, g) in &self.terms {
            out = out.add(&c.mul(&e.derive(g, true)));
        }
        out
    }

    /// Graded bracket with `other`, evaluated as a coefficient table on the
    /// spanning set: the anticommutator for odd-odd pairs, the commutator
    /// otherwise.
    pub fn bracket_table(
        &self,
        other: &VectorField,
        spanning: &[Generator],
    ) -> Vec<(Generator, Expr)> {
        let anticommute = self.parity && other.parity;
        spanning
            .iter()
            .map(|g| {
                let ge = Expr::gen(*g);
                let ab = self.apply(&other.apply(&ge));
                let ba = other.apply(&self.apply(&ge));
                let val = if anticommute { ab.add(&ba) } else { ab.sub(&ba) };
                (*g, val)
            })
            .collect()
    }
}

/// D^a = d_L/dtheta_a - 2i thetabar_bd d/dx_{a bd}; annihilates ybar and
/// thetabar.
pub fn make_d(a: u8) -> VectorField {
    let mut terms = vec![(Expr::one(), Generator::indexed(Family::Theta, a))];
    for bd in [1u8, 2] {
        terms.push((
            thetabar(bd).scale(&-two_i()),
            Generator::pair(Family::X, a, bd),
        ));
    }
    VectorField::new(format!("D^{}", a), true, terms)
}

/// Dbar^ad = d_L/dthetabar_ad - 2i theta_b d/dx_{b ad}; annihilates y and
/// theta, so chiral superfields are exactly its kernel.
pub fn make_dbar(ad: u8) -> VectorField {
    let mut terms = vec![(Expr::one(), Generator::indexed(Family::ThetaBar, ad))];
    for b in [1u8, 2] {
        terms.push((
            theta(b).scale(&-two_i()),
            Generator::pair(Family::X, b, ad),
        ));
    }
    VectorField::new(format!("Dbar^{}", ad), true, terms)
}

/// Q^a = d/dtheta_a + 4i nu^a (thetabar_bd d/dlbar_bd) on the theta-twistor
/// coordinate ring (l, lbar, theta, thetabar, nu, nubar).
pub fn make_twistor_q(a: u8) -> VectorField {
    let mut terms = vec![(Expr::one(), Generator::indexed(Family::Theta, a))];
    for bd in [1u8, 2] {
        terms.push((
            gen_up(Family::Nu, a)
                .mul(&thetabar(bd))
                .scale(&Qis::int_i(4)),
            Generator::indexed(Family::LBar, bd),
        ));
    }
    VectorField::new(format!("Q^{}", a), true, terms)
}

/// Qbar^ad = d/dthetabar_ad + 4i nubar^ad (theta_b d/dl_b).
pub fn make_twistor_qbar(ad: u8) -> VectorField {
    let mut terms = vec![(Expr::one(), Generator::indexed(Family::ThetaBar, ad))];
    for b in [1u8, 2] {
        terms.push((
            gen_up(Family::NuBar, ad)
                .mul(&theta(b))
                .scale(&Qis::int_i(4)),
            Generator::indexed(Family::L, b),
        ));
    }
    VectorField::new(format!("Qbar^{}", ad), true, terms)
}

/// P^{bd a} = nubar^bd d/dl_a + nu^a d/dlbar_bd, the translation generator
/// closing the twistor SUSY algebra.
pub fn make_twistor_p(bd: u8, a: u8) -> VectorField {
    VectorField::new(
        format!("P^{}{}", bd, a),
        false,
        vec![
            (gen_up(Family::NuBar, bd), Generator::indexed(Family::L, a)),
            (gen_up(Family::Nu, a), Generator::indexed(Family::LBar, bd)),
        ],
    )
}

/// The spanning coordinate set of the theta-twistor ring.
pub fn twistor_ring_spanning() -> Vec<Generator> {
    let mut v = Vec::new();
    for fam in [
        Family::L,
        Family::LBar,
        Family::Theta,
        Family::ThetaBar,
        Family::Nu,
        Family::NuBar,
    ] {
        for c in [1u8, 2] {
            v.push(Generator::indexed(fam, c));
        }
    }
    v
}
