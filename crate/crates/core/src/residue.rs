//! Residues of rational functions of the chart coordinate, computed by
//! exact differentiation of the cofactor. The independent series-expansion
//! oracle that cross-checks this lives in test code.

use crate::error::Error;
use crate::generator::{Family, Generator};
use crate::scalar::Coeff;
use crate::{EvenPoly, Expr, Scalar};

pub fn chart_z() -> Generator {
    Generator::scalar_sym(Family::ChartZ)
}

/// A pole of an expression in the chart coordinate: the denominator factor,
/// its leading z-coefficient, the root and the order.
#[derive(Clone, Debug)]
pub struct Pole {
    pub factor: EvenPoly,
    pub lead: EvenPoly,
    pub location: Expr,
    pub order: u32,
}

/// Finds the poles of `e` in the chart coordinate. Every z-dependent
/// denominator factor must be linear in z; factors sharing a root are
/// rejected.
pub fn find_poles(e: &Expr) -> Result<Vec<Pole>, Error> {
    let z = chart_z();
    let mut poles: Vec<Pole> = Vec::new();
    for (p, k) in e.den_factors() {
        let deg = p.degree_in(&z);
        if deg == 0 {
            continue;
        }
        let (p1, p0) = p.split_linear_in(&z).ok_or_else(|| {
            Error::EssentialSingularity(format!(
                "denominator factor {} has degree {} in the chart coordinate",
                p, deg
            ))
        })?;
        debug_assert!(!p1.is_zero());
        let location = Expr::from_poly(&p0)
            .neg()
            .div(&Expr::from_poly(&p1))?;
        for other in &poles {
            if other.location.sub(&location).is_zero() {
                return Err(Error::OverlappingPoles(location.to_string()));
            }
        }
        poles.push(Pole {
            factor: p.clone(),
            lead: p1,
            location,
            order: *k,
        });
    }
    Ok(poles)
}

fn factorial(n: u32) -> Scalar {
    let mut acc = Scalar::int(1);
    for j in 2..=n as i64 {
        acc = acc * Scalar::int(j);
    }
    acc
}

/// The coefficient of (z - pole)^-1 in the Laurent expansion of `e` around
/// `pole`: with e = N / ((z - z0)^m R), this is the (m-1)-th cofactor
/// derivative at z0 divided by (m-1)!.
pub fn residue(e: &Expr, pole: &Expr) -> Result<Expr, Error> {
    let z = chart_z();
    let poles = find_poles(e)?;
    let hit = poles
        .iter()
        .find(|p| p.location.sub(pole).is_zero())
        .ok_or_else(|| Error::PoleNotFound(pole.to_string()))?;
    // Cofactor: drop the vanishing factor, divide by its leading
    // z-coefficient to the same power.
    let (mut cof, order) = e
        .drop_den_factor(&hit.factor)
        .expect("factor comes from this expression");
    debug_assert_eq!(order, hit.order);
    if !hit.lead.as_constant().map(|c| c == Scalar::int(1)).unwrap_or(false) {
        cof = cof.div_factor(&Expr::from_poly(&hit.lead), order)?;
    }
    for _ in 1..order {
        cof = cof.derive(&z, true);
    }
    let at_pole = cof.substitute_one(z, pole.clone())?;
    Ok(at_pole.scale(&Coeff::inv(&factorial(order - 1)).unwrap()))
}

/// Residue treating absence of a pole as zero; used by the transform where
/// one component may be regular at a selected location.
pub fn residue_or_zero(e: &Expr, pole: &Expr) -> Result<Expr, Error> {
    match residue(e, pole) {
        Ok(r) => Ok(r),
        Err(Error::PoleNotFound(_)) => Ok(Expr::zero()),
        Err(err) => Err(err),
    }
}

/// True when `e` has a pole at the given location.
pub fn has_pole_at(e: &Expr, pole: &Expr) -> Result<bool, Error> {
    Ok(find_poles(e)?
        .iter()
        .any(|p| p.location.sub(pole).is_zero()))
}

/// Poles sorted by display key, for stable enumeration.
pub fn sorted_locations(poles: &[Pole]) -> Vec<Expr> {
    let mut locs: Vec<Expr> = poles.iter().map(|p| p.location.clone()).collect();
    locs.sort_by_key(|l| l.to_string());
    locs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Expr {
        Expr::gen(chart_z())
    }
    fn sym(k: u8) -> Expr {
        Expr::gen(Generator::scalar_sym(Family::Sym(k)))
    }

    #[test]
    fn simple_pole() {
        // residue(1/(z - a), a) = 1
        let e = Expr::one().div(&z().sub(&sym(0))).unwrap();
        assert_eq!(residue(&e, &sym(0)).unwrap(), Expr::one());
    }

    #[test]
    fn simple_pole_with_numerator() {
        // residue(z/((z-a)(z-b)), a) = a/(a-b)
        let e = z()
            .div(&z().sub(&sym(0)))
            .unwrap()
            .div(&z().sub(&sym(1)))
            .unwrap();
        let expect = sym(0).div(&sym(0).sub(&sym(1))).unwrap();
        assert!(residue(&e, &sym(0)).unwrap().sub(&expect).is_zero());
    }

    #[test]
    fn double_pole() {
        // residue(1/((z-a)^2 (z-b)), a) = -1/(a-b)^2
        let e = Expr::one()
            .div_factor(&z().sub(&sym(0)), 2)
            .unwrap()
            .div(&z().sub(&sym(1)))
            .unwrap();
        let expect = Expr::int(-1)
            .div_factor(&sym(0).sub(&sym(1)), 2)
            .unwrap();
        assert!(residue(&e, &sym(0)).unwrap().sub(&expect).is_zero());
    }

    #[test]
    fn residues_sum_to_zero_for_proper_fractions() {
        // For deg(num) <= deg(den) - 2 the residues at all finite poles
        // cancel; here 1/((z-a)(z-b)).
        let e = Expr::one()
            .div(&z().sub(&sym(0)))
            .unwrap()
            .div(&z().sub(&sym(1)))
            .unwrap();
        let total = residue(&e, &sym(0))
            .unwrap()
            .add(&residue(&e, &sym(1)).unwrap());
        assert!(total.is_zero());
    }

    #[test]
    fn pole_not_found() {
        let e = Expr::one().div(&z().sub(&sym(0))).unwrap();
        assert!(matches!(
            residue(&e, &sym(1)),
            Err(Error::PoleNotFound(_))
        ));
        assert_eq!(residue_or_zero(&e, &sym(1)).unwrap(), Expr::zero());
    }

    #[test]
    fn nonlinear_factor_rejected() {
        // 1/(z^2 - a) has a quadratic chart factor.
        let e = Expr::one().div(&z().pow(2).sub(&sym(0))).unwrap();
        assert!(matches!(
            find_poles(&e),
            Err(Error::EssentialSingularity(_))
        ));
    }

    #[test]
    fn overlapping_poles_rejected() {
        // (z-a) and (2z-2a) normalize to the same factor and merge, but
        // (z-a) and (z*b - a*b) share the root a with distinct factors.
        let f1 = z().sub(&sym(0));
        let f2 = z().mul(&sym(1)).sub(&sym(0).mul(&sym(1)));
        let e = Expr::one().div(&f1).unwrap().div(&f2).unwrap();
        // Content splitting may cancel b; accept either rejection or a
        // single merged pole of order 2.
        match find_poles(&e) {
            Err(Error::OverlappingPoles(_)) => {}
            Ok(poles) => {
                assert_eq!(poles.len(), 1);
                assert_eq!(poles[0].order, 2);
            }
            Err(other) => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn symbolic_lead_coefficient() {
        // residue(1/((b z - a)), a/b) = 1/b.
        let e = Expr::one()
            .div(&z().mul(&sym(1)).sub(&sym(0)))
            .unwrap();
        let loc = sym(0).div(&sym(1)).unwrap();
        let expect = Expr::one().div(&sym(1)).unwrap();
        assert!(residue(&e, &loc).unwrap().sub(&expect).is_zero());
    }
}
