//! Two-component Weyl index machinery: epsilon raising and lowering, index
//! contraction, theta-square reduction, spinorial derivatives and the box
//! operator.

use crate::conventions::{eps_down, eps_up, sigma, sigma_tilde};
use crate::error::Error;
use crate::generator::{Family, Generator, IndexKind, Position, WeylIndex};
use crate::mono::Mono;
use crate::{Expr, Scalar};
use num_traits::Zero;

/// The epsilon tensor of one index kind and position, as exact entries.
#[derive(Clone, Debug)]
pub struct EpsilonTensor {
    pub kind: IndexKind,
    pub pos: Position,
    pub entries: [[Scalar; 2]; 2],
}

impl EpsilonTensor {
    pub fn new(kind: IndexKind, pos: Position) -> Self {
        let f = match pos {
            Position::Up => eps_up,
            Position::Down => eps_down,
        };
        EpsilonTensor {
            kind,
            pos,
            entries: [[f(1, 1), f(1, 2)], [f(2, 1), f(2, 2)]],
        }
    }

    pub fn entry(&self, a: u8, b: u8) -> &Scalar {
        &self.entries[(a - 1) as usize][(b - 1) as usize]
    }
}

/// A two-component spinor of expressions with explicit index metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Spinor2 {
    pub kind: IndexKind,
    pub pos: Position,
    comps: [Expr; 2],
}

impl Spinor2 {
    pub fn new(kind: IndexKind, pos: Position, comps: [Expr; 2]) -> Self {
        Spinor2 { kind, pos, comps }
    }

    /// The family's generators with their canonical (lower) index.
    pub fn from_family(fam: Family) -> Self {
        let kind = match fam.index_shape() {
            crate::generator::IndexShape::Undotted => IndexKind::Undotted,
            crate::generator::IndexShape::Dotted => IndexKind::Dotted,
            _ => panic!("family {:?} is not a single-index spinor", fam),
        };
        Spinor2 {
            kind,
            pos: Position::Down,
            comps: [
                Expr::gen(Generator::indexed(fam, 1)),
                Expr::gen(Generator::indexed(fam, 2)),
            ],
        }
    }

    pub fn comp(&self, c: u8) -> &Expr {
        &self.comps[(c - 1) as usize]
    }

    pub fn index(&self, comp: u8) -> WeylIndex {
        WeylIndex {
            kind: self.kind,
            pos: self.pos,
            comp,
        }
    }

    /// psi^a = eps_up(a,b) psi_b. Errors when the index is already up.
    pub fn raise(&self) -> Result<Spinor2, Error> {
        if self.pos != Position::Down {
            return Err(Error::IndexNotFound(
                "raise expects a lower index".into(),
            ));
        }
        let comp = |a: u8| {
            let mut acc = Expr::zero();
            for b in [1u8, 2] {
                acc = acc.add(&self.comps[(b - 1) as usize].scale(&eps_up(a, b)));
            }
            acc
        };
        Ok(Spinor2 {
            kind: self.kind,
            pos: Position::Up,
            comps: [comp(1), comp(2)],
        })
    }

    /// psi_a = eps_down(a,b) psi^b. Errors when the index is already down.
    pub fn lower(&self) -> Result<Spinor2, Error> {
        if self.pos != Position::Up {
            return Err(Error::IndexNotFound(
                "lower expects an upper index".into(),
            ));
        }
        let comp = |a: u8| {
            let mut acc = Expr::zero();
            for b in [1u8, 2] {
                acc = acc.add(&self.comps[(b - 1) as usize].scale(&eps_down(a, b)));
            }
            acc
        };
        Ok(Spinor2 {
            kind: self.kind,
            pos: Position::Down,
            comps: [comp(1), comp(2)],
        })
    }

    /// Contraction `sum_c self^c rhs_c` (in this factor order). The kinds
    /// must agree and the positions must be opposite.
    pub fn contract(&self, rhs: &Spinor2) -> Result<Expr, Error> {
        if self.kind != rhs.kind {
            return Err(Error::KindMismatch(format!(
                "cannot contract {:?} with {:?}",
                self.kind, rhs.kind
            )));
        }
        if self.pos == rhs.pos {
            return Err(Error::KindMismatch(
                "contraction needs opposite index positions".into(),
            ));
        }
        let mut acc = Expr::zero();
        for c in 0..2 {
            acc = acc.add(&self.comps[c].mul(&rhs.comps[c]));
        }
        Ok(acc)
    }
}

/// The single generator `fam_c` with its index raised: eps_up(c,b) fam_b.
pub fn gen_up(fam: Family, c: u8) -> Expr {
    let mut acc = Expr::zero();
    for b in [1u8, 2] {
        acc = acc.add(&Expr::gen(Generator::indexed(fam, b)).scale(&eps_up(c, b)));
    }
    acc
}

pub fn gen_down(fam: Family, c: u8) -> Expr {
    Expr::gen(Generator::indexed(fam, c))
}

/// theta^2 = theta^a theta_a.
pub fn theta_sq(fam: Family) -> Expr {
    let mut acc = Expr::zero();
    for a in [1u8, 2] {
        acc = acc.add(&gen_up(fam, a).mul(&gen_down(fam, a)));
    }
    acc
}

/// thetabar^2 = thetabar_ad thetabar^ad (the conjugate contraction order).
pub fn thetabar_sq(fam: Family) -> Expr {
    let mut acc = Expr::zero();
    for a in [1u8, 2] {
        acc = acc.add(&gen_down(fam, a).mul(&gen_up(fam, a)));
    }
    acc
}

/// Rewrites every product of the two components of an odd spinor family
/// into its epsilon-square normal form:
///   theta_a theta_b -> (1/2) eps_down(a,b) theta^2
///   thetabar_ad thetabar_bd -> -(1/2) eps_down(ad,bd) thetabar^2.
/// Idempotent, and the identity map on normal forms.
pub fn theta_square_reduce(e: &Expr) -> Expr {
    let odd_undotted = [Family::Theta, Family::Eps(1), Family::Eps(2), Family::Eps(3)];
    let odd_dotted = [
        Family::ThetaBar,
        Family::EpsBar(1),
        Family::EpsBar(2),
        Family::EpsBar(3),
    ];
    let mut out = Expr::zero();
    'words: for (word, coeff) in e.expand_by_families(&[
        Family::Theta,
        Family::ThetaBar,
        Family::Eps(1),
        Family::EpsBar(1),
        Family::Eps(2),
        Family::EpsBar(2),
        Family::Eps(3),
        Family::EpsBar(3),
    ]) {
        let mut rebuilt = Expr::one();
        let mut letters: Vec<Generator> = word.factors().iter().map(|&(g, _)| g).collect();
        // Both components of one family present: substitute the pair.
        for fams in [&odd_undotted[..], &odd_dotted[..]] {
            for fam in fams {
                let c1 = Generator::indexed(*fam, 1);
                let c2 = Generator::indexed(*fam, 2);
                if letters.contains(&c1) && letters.contains(&c2) {
                    let square = if fams == &odd_undotted[..] {
                        theta_sq(*fam).scale(&(eps_down(1, 2) * Scalar::rat(1, 2)))
                    } else {
                        thetabar_sq(*fam).scale(&(-eps_down(1, 2) * Scalar::rat(1, 2)))
                    };
                    rebuilt = rebuilt.mul(&square);
                    letters.retain(|g| *g != c1 && *g != c2);
                }
            }
        }
        for g in letters {
            rebuilt = rebuilt.mul(&Expr::gen(g));
        }
        out = out.add(&rebuilt.mul(&coeff));
        continue 'words;
    }
    out
}

const SECTION_FAMILIES: [Family; 4] = [Family::U, Family::UBar, Family::L, Family::LBar];

fn check_differentiable(e: &Expr, base: Family) -> Result<(), Error> {
    for fam in SECTION_FAMILIES {
        if e.contains_family(fam) {
            return Err(Error::UnknownDependency(fam.grammar_name()));
        }
    }
    // Differentiating with respect to x while the expression still holds
    // unsubstituted y (or vice versa) would silently drop the chain rule.
    let clash = if base == Family::X { Family::Y } else { Family::X };
    if e.contains_family(clash) {
        return Err(Error::UnknownDependency(clash.grammar_name()));
    }
    Ok(())
}

/// d/d base_{a,ad}, the fundamental spinorial derivative. `base` selects the
/// coordinate family (x for superspace expressions, y for chiral fields).
pub fn spin_derivative(e: &Expr, base: Family, a: u8, ad: u8) -> Result<Expr, Error> {
    debug_assert!(matches!(base, Family::X | Family::Y));
    check_differentiable(e, base)?;
    Ok(e.derive(&Generator::pair(base, a, ad), true))
}

/// box = eps_up(a,b) eps_up(ad,bd) d_{a ad} d_{b bd}, overall constant 1.
pub fn box_op(e: &Expr, base: Family) -> Result<Expr, Error> {
    check_differentiable(e, base)?;
    let mut acc = Expr::zero();
    for a in [1u8, 2] {
        for b in [1u8, 2] {
            for ad in [1u8, 2] {
                for bd in [1u8, 2] {
                    let w = eps_up(a, b) * eps_up(ad, bd);
                    if w.is_zero() {
                        continue;
                    }
                    let dd = e
                        .derive(&Generator::pair(base, b, bd), true)
                        .derive(&Generator::pair(base, a, ad), true);
                    acc = acc.add(&dd.scale(&w));
                }
            }
        }
    }
    Ok(acc)
}

/// The sigma and sigmatilde matrices as exact 2x2 tables.
#[derive(Clone, Debug)]
pub struct SigmaTables {
    pub sigma: [[[Scalar; 2]; 2]; 4],
    pub sigmatilde: [[[Scalar; 2]; 2]; 4],
}

impl SigmaTables {
    pub fn standard() -> Self {
        let zero_row = || [Scalar::zero(), Scalar::zero()];
        let mut s: [[[Scalar; 2]; 2]; 4] = std::array::from_fn(|_| [zero_row(), zero_row()]);
        let mut st: [[[Scalar; 2]; 2]; 4] = std::array::from_fn(|_| [zero_row(), zero_row()]);
        for m in 0..4 {
            for a in [1u8, 2] {
                for b in [1u8, 2] {
                    s[m][(a - 1) as usize][(b - 1) as usize] = sigma(m, a, b);
                    st[m][(a - 1) as usize][(b - 1) as usize] = sigma_tilde(m, a, b);
                }
            }
        }
        SigmaTables {
            sigma: s,
            sigmatilde: st,
        }
    }

    /// (sigma_m)_{a ad}.
    pub fn s(&self, m: usize, a: u8, ad: u8) -> &Scalar {
        &self.sigma[m][(a - 1) as usize][(ad - 1) as usize]
    }

    /// sigmatilde_m^{ad a}.
    pub fn st(&self, m: usize, ad: u8, a: u8) -> &Scalar {
        &self.sigmatilde[m][(ad - 1) as usize][(a - 1) as usize]
    }
}

/// Moves every same-family odd pair of `e` through the reduction and checks
/// the result still equals `e`; used as a convention self-test hook.
pub fn theta_square_rule_holds() -> bool {
    // theta_a theta_b - (1/2) eps_down(a,b) theta^2 = 0 for all a, b.
    for a in [1u8, 2] {
        for b in [1u8, 2] {
            let lhs = gen_down(Family::Theta, a).mul(&gen_down(Family::Theta, b));
            let rhs = theta_sq(Family::Theta).scale(&(eps_down(a, b) * Scalar::rat(1, 2)));
            if !lhs.sub(&rhs).is_zero() {
                return false;
            }
            let lhs = gen_down(Family::ThetaBar, a).mul(&gen_down(Family::ThetaBar, b));
            let rhs =
                thetabar_sq(Family::ThetaBar).scale(&(-eps_down(a, b) * Scalar::rat(1, 2)));
            if !lhs.sub(&rhs).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Null momentum k_{a ad} = kappa_a kappabar_ad contracted with the x-like
/// family: sum eps_up eps_up k x, the plane-wave phase.
pub fn null_phase(base: Family) -> Expr {
    let mut acc = Expr::zero();
    for a in [1u8, 2] {
        for b in [1u8, 2] {
            for ad in [1u8, 2] {
                for bd in [1u8, 2] {
                    let w = eps_up(a, b) * eps_up(ad, bd);
                    if w.is_zero() {
                        continue;
                    }
                    let k = Expr::gen(Generator::indexed(Family::Kappa, a))
                        .mul(&Expr::gen(Generator::indexed(Family::KappaBar, ad)));
                    let x = Expr::gen(Generator::pair(base, b, bd));
                    acc = acc.add(&k.mul(&x).scale(&w));
                }
            }
        }
    }
    acc
}

/// Word over one family: the product fam_{c1} ... , used by extraction.
pub fn family_word(fam: Family, comps: &[u8]) -> Mono {
    let word: Vec<_> = comps
        .iter()
        .map(|c| (Generator::indexed(fam, *c), 1u32))
        .collect();
    Mono::from_word(&word).expect("family word").0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    type E = Expr;

    #[test]
    fn epsilon_inverse_pair_componentwise() {
        for kind in [IndexKind::Undotted, IndexKind::Dotted] {
            let up = EpsilonTensor::new(kind, Position::Up);
            let down = EpsilonTensor::new(kind, Position::Down);
            for a in [1u8, 2] {
                for c in [1u8, 2] {
                    let mut acc = Scalar::zero();
                    for b in [1u8, 2] {
                        acc = acc + up.entry(a, b).clone() * down.entry(b, c).clone();
                    }
                    let expect = if a == c { Scalar::one() } else { Scalar::zero() };
                    assert_eq!(acc, expect);
                }
            }
        }
    }

    #[test]
    fn raise_then_lower_is_identity() {
        let th = Spinor2::from_family(Family::Theta);
        let back = th.raise().unwrap().lower().unwrap();
        assert_eq!(back, th);
        assert!(th.lower().is_err());
    }

    #[test]
    fn raise_of_zero_is_zero() {
        let z = Spinor2::new(
            IndexKind::Undotted,
            Position::Down,
            [E::zero(), E::zero()],
        );
        let r = z.raise().unwrap();
        assert!(r.comp(1).is_zero() && r.comp(2).is_zero());
    }

    #[test]
    fn contract_kind_mismatch() {
        let th = Spinor2::from_family(Family::Theta).raise().unwrap();
        let tb = Spinor2::from_family(Family::ThetaBar);
        assert!(matches!(th.contract(&tb), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn theta_squared_contraction() {
        // theta^a theta_a = -2 theta_1 theta_2 under these conventions.
        let tsq = theta_sq(Family::Theta);
        let t1t2 = gen_down(Family::Theta, 1).mul(&gen_down(Family::Theta, 2));
        assert_eq!(tsq, t1t2.scale(&Scalar::int(-2)));
    }

    #[test]
    fn square_reduction_rules_hold() {
        assert!(theta_square_rule_holds());
    }

    #[test]
    fn theta_square_reduce_examples() {
        // theta_1 theta_2 -> (1/2) eps_down(1,2) theta^2, exactly.
        let t12 = gen_down(Family::Theta, 1).mul(&gen_down(Family::Theta, 2));
        let reduced = theta_square_reduce(&t12);
        let expect = theta_sq(Family::Theta).scale(&(eps_down(1, 2) * Scalar::rat(1, 2)));
        assert_eq!(reduced, expect);
        assert_eq!(reduced, t12);
        // Idempotence on a mixed expression.
        let mixed = t12
            .mul(&gen_down(Family::ThetaBar, 1))
            .add(&gen_down(Family::Theta, 1));
        assert_eq!(theta_square_reduce(&theta_square_reduce(&mixed)), mixed);
        // theta_1 theta_1 -> 0.
        assert!(gen_down(Family::Theta, 1)
            .mul(&gen_down(Family::Theta, 1))
            .is_zero());
        // Dotted analogue: thetabar_1 thetabar_2 = -(1/2) eps_down thetabar^2.
        let tb12 = gen_down(Family::ThetaBar, 1).mul(&gen_down(Family::ThetaBar, 2));
        let rhs = thetabar_sq(Family::ThetaBar)
            .scale(&(-eps_down(1, 2) * Scalar::rat(1, 2)));
        assert!(tb12.sub(&rhs).is_zero());
    }

    #[test]
    fn thetabar_square_is_conjugate_of_theta_square() {
        use crate::expr::ConjMode;
        let tsq = theta_sq(Family::Theta);
        assert_eq!(
            tsq.conjugate(ConjMode::ComplexX),
            thetabar_sq(Family::ThetaBar)
        );
    }

    #[test]
    fn spin_derivative_of_coordinate() {
        let x = Expr::gen(Generator::pair(Family::X, 2, 1));
        for a in [1u8, 2] {
            for ad in [1u8, 2] {
                let d = spin_derivative(&x, Family::X, a, ad).unwrap();
                if (a, ad) == (2, 1) {
                    assert_eq!(d, Expr::one());
                } else {
                    assert!(d.is_zero());
                }
            }
        }
    }

    #[test]
    fn spin_derivative_of_chiral_composite() {
        // d/dx_{a ad} y_{b bd} = delta delta with the odd coordinates held
        // fixed.
        let p = crate::superspace::SuperPoint::standard();
        for a in [1u8, 2] {
            for ad in [1u8, 2] {
                for b in [1u8, 2] {
                    for bd in [1u8, 2] {
                        let d = spin_derivative(&p.chiral_y(b, bd), Family::X, a, ad).unwrap();
                        let expect = if (a, ad) == (b, bd) {
                            Expr::one()
                        } else {
                            Expr::zero()
                        };
                        assert_eq!(d, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn spin_derivative_rejects_opaque_dependence() {
        let u = Expr::gen(Generator::indexed(Family::U, 1));
        assert!(matches!(
            spin_derivative(&u, Family::Y, 1, 1),
            Err(Error::UnknownDependency(_))
        ));
        let y = Expr::gen(Generator::pair(Family::Y, 1, 1));
        assert!(matches!(
            spin_derivative(&y, Family::X, 1, 1),
            Err(Error::UnknownDependency(_))
        ));
    }

    #[test]
    fn box_of_determinant_is_constant() {
        // det x = x_11 x_22 - x_12 x_21; box(det x) = 4.
        let x = |a, b| Expr::gen(Generator::pair(Family::X, a, b));
        let det = x(1, 1).mul(&x(2, 2)).sub(&x(1, 2).mul(&x(2, 1)));
        let b = box_op(&det, Family::X).unwrap();
        assert_eq!(b, Expr::int(4));
    }

    #[test]
    fn box_annihilates_nu_composites() {
        // f(x_{a ad} nubar^ad) is harmonic: the key mechanism
        // eps_up(ad,bd) nubar^ad nubar^bd = 0.
        let xnu = |a: u8| {
            let mut acc = Expr::zero();
            for ad in [1u8, 2] {
                acc = acc.add(
                    &Expr::gen(Generator::pair(Family::X, a, ad)).mul(&gen_up(Family::NuBar, ad)),
                );
            }
            acc
        };
        let f = xnu(1).mul(&xnu(1)).mul(&xnu(2)).add(&xnu(2).pow(3));
        assert!(box_op(&f, Family::X).unwrap().is_zero());
        assert!(box_op(&Expr::one(), Family::X).unwrap().is_zero());
    }

    #[test]
    fn mixed_partials_commute() {
        let x = |a, b| Expr::gen(Generator::pair(Family::X, a, b));
        let e = x(1, 1).pow(2).mul(&x(2, 2)).add(&x(1, 2).mul(&x(2, 1)).pow(2));
        for (a1, d1, a2, d2) in [(1u8, 1u8, 2u8, 2u8), (1, 2, 2, 1), (1, 1, 1, 2)] {
            let p = spin_derivative(
                &spin_derivative(&e, Family::X, a1, d1).unwrap(),
                Family::X,
                a2,
                d2,
            )
            .unwrap();
            let q = spin_derivative(
                &spin_derivative(&e, Family::X, a2, d2).unwrap(),
                Family::X,
                a1,
                d1,
            )
            .unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn plane_wave_killed_degree_by_degree() {
        // box annihilates each power of the null phase up to degree 4.
        let phase = null_phase(Family::X);
        for j in 1..=4u32 {
            let p = phase.pow(j);
            assert!(box_op(&p, Family::X).unwrap().is_zero(), "degree {}", j);
        }
    }

    #[test]
    fn sigma_tables_match_conventions() {
        let t = SigmaTables::standard();
        assert_eq!(*t.s(0, 1, 1), Scalar::one());
        assert_eq!(*t.s(3, 2, 2), -Scalar::one());
        assert_eq!(*t.st(0, 1, 1), Scalar::one());
        // sigmatilde_3 = -sigma_3 in these conventions.
        assert_eq!(*t.st(3, 1, 1), -Scalar::one());
        assert!(crate::conventions::self_check().is_empty());
    }
}
