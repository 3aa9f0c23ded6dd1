//! Property-based invariants of the expression engine, plus the seeded
//! 1000-expression printer/parser round trip.

use proptest::prelude::*;
use theta_twistor::generator::{Family, Generator};
use theta_twistor::expr::ConjMode;
use theta_twistor::parser::parse;
use theta_twistor::rng::SplitMix;
use theta_twistor::{Expr, Scalar};

fn pool() -> Vec<Expr> {
    vec![
        Expr::gen(Generator::indexed(Family::Theta, 1)),
        Expr::gen(Generator::indexed(Family::Theta, 2)),
        Expr::gen(Generator::indexed(Family::ThetaBar, 1)),
        Expr::gen(Generator::indexed(Family::ThetaBar, 2)),
        Expr::gen(Generator::pair(Family::X, 1, 1)),
        Expr::gen(Generator::pair(Family::X, 2, 2)),
        Expr::gen(Generator::indexed(Family::Nu, 1)),
        Expr::gen(Generator::indexed(Family::NuBar, 2)),
        Expr::gen(Generator::scalar_sym(Family::Sym(0))),
        Expr::gen(Generator::scalar_sym(Family::Sym(1))),
        Expr::gen(Generator::indexed(Family::DTheta, 1)),
        Expr::gen(Generator::pair(Family::DX, 1, 2)),
    ]
}

/// A term recipe: scalar numerator/denominator plus letter picks.
type TermRecipe = (i64, i64, i64, Vec<u8>);

fn build_expr(terms: &[TermRecipe]) -> Expr {
    let pool = pool();
    let mut acc = Expr::zero();
    for (re_num, im_num, den, letters) in terms {
        let den = if *den == 0 { 1 } else { den.abs() };
        let c = Scalar::rat(*re_num, den) + Scalar::int_i(1) * Scalar::rat(*im_num, den);
        let mut t = Expr::constant(c);
        for l in letters {
            t = t.mul(&pool[*l as usize % pool.len()]);
        }
        acc = acc.add(&t);
    }
    acc
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    prop::collection::vec(
        (
            -7i64..=7,
            -7i64..=7,
            1i64..=7,
            prop::collection::vec(0u8..12, 0..4),
        ),
        0..4,
    )
    .prop_map(|terms| build_expr(&terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative(a in expr_strategy(), b in expr_strategy(), c in expr_strategy()) {
        let lhs = a.mul(&b).mul(&c);
        let rhs = a.mul(&b.mul(&c));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in expr_strategy(), b in expr_strategy(), c in expr_strategy()) {
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn addition_commutes_and_cancels(a in expr_strategy(), b in expr_strategy()) {
        prop_assert!(a.add(&b).sub(&b.add(&a)).is_zero());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn conjugation_is_an_anti_involution(a in expr_strategy(), b in expr_strategy()) {
        let double = a.conjugate(ConjMode::ComplexX).conjugate(ConjMode::ComplexX);
        prop_assert!(double.sub(&a).is_zero());
        let lhs = a.mul(&b).conjugate(ConjMode::ComplexX);
        let rhs = b.conjugate(ConjMode::ComplexX).mul(&a.conjugate(ConjMode::ComplexX));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn printer_output_reparses(a in expr_strategy()) {
        let text = a.to_string();
        let back = parse(&text).unwrap();
        prop_assert!(back.sub(&a).is_zero(), "mismatch for `{}`", text);
    }

    #[test]
    fn derivative_is_linear(a in expr_strategy(), b in expr_strategy()) {
        let g = Generator::indexed(Family::Theta, 1);
        let lhs = a.add(&b).derive(&g, true);
        let rhs = a.derive(&g, true).add(&b.derive(&g, true));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }
}

#[test]
fn thousand_expression_round_trip() {
    let mut rng = SplitMix::new(0x707274);
    let pool = pool();
    for round in 0..1000 {
        let mut e = Expr::zero();
        for _ in 0..rng.int_in(0, 4) {
            let mut t = Expr::constant(rng.small_gaussian());
            for _ in 0..rng.int_in(0, 4) {
                t = t.mul(&pool[rng.usize_below(pool.len())]);
            }
            e = e.add(&t);
        }
        // Mix in a rational denominator on a third of the samples.
        if rng.chance(1, 3) {
            let d = Expr::gen(Generator::scalar_sym(Family::Sym(2)))
                .add(&Expr::int(rng.int_in(1, 5)));
            e = e.div(&d).unwrap();
        }
        let text = e.to_string();
        let back = parse(&text).expect(&text);
        assert!(back.sub(&e).is_zero(), "round {} failed for `{}`", round, text);
    }
}
