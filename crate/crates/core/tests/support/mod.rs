//! Test-side oracles, kept independent of the implementation paths they
//! check: residues by exact Laurent-series expansion instead of cofactor
//! differentiation.

use theta_twistor::generator::{Family, Generator};
use theta_twistor::residue::chart_z;
use theta_twistor::scalar::Coeff;
use theta_twistor::{Expr, Scalar};

/// The series variable h in z = z0 + h; the grammar symbol `h`.
pub fn h_gen() -> Generator {
    Generator::scalar_sym(Family::Sym(7))
}

fn h_part(e: &Expr, deg: u32) -> Expr {
    e.filter_terms(|m| m.exponent(&h_gen()) == deg)
}

fn truncate_h(e: &Expr, max_deg: u32) -> Expr {
    e.filter_terms(|m| m.exponent(&h_gen()) <= max_deg)
}

/// Residue of `e` at `z0` computed by shifting z -> z0 + h and expanding
/// every denominator factor as an exact geometric series in h. Panics when
/// the expression has no pole there.
pub fn residue_series_oracle(e: &Expr, z0: &Expr) -> Expr {
    let h = Expr::gen(h_gen());
    let shifted = e
        .substitute_one(chart_z(), z0.add(&h))
        .expect("chart shift");

    // shifted = N(h) / prod_i P_i(h)^{k_i}; write each factor as
    // h^s * c * (1 + v(h)) with v(0) = 0.
    let mut num = Expr::zero();
    for (m, c) in shifted.terms() {
        num = num.add(&Expr::from_term(c.clone(), m.clone()));
    }
    let mut total_pole_order: u32 = 0;
    let mut regular_factors: Vec<(Expr, u32)> = Vec::new();
    for (p, k) in shifted.den_factors() {
        let mut rest = Expr::from_poly(p);
        let mut s = 0u32;
        while h_part(&rest, 0).is_zero() {
            rest = rest.div(&h).expect("h divides a vanishing factor");
            s += 1;
        }
        regular_factors.push((rest, *k));
        total_pole_order += s * k;
    }
    assert!(total_pole_order > 0, "no pole at {}", z0);
    let max_deg = total_pole_order - 1;

    let mut series = truncate_h(&num, max_deg);
    for (regular, k) in &regular_factors {
        let c = h_part(regular, 0);
        let c_inv = c.inv_central().expect("regular part is invertible");
        let v = regular.sub(&c).mul(&c_inv);
        // 1/(1 + v) = sum (-v)^j, truncated; then 1/R^k = (c^-1 / (1+v))^k.
        let mut geo = Expr::int(1);
        let mut v_pow = Expr::int(1);
        for j in 1..=max_deg {
            v_pow = truncate_h(&v_pow.mul(&v), max_deg);
            geo = geo.add(&if j % 2 == 1 { v_pow.neg() } else { v_pow.clone() });
        }
        let inv_r = truncate_h(&geo.mul(&c_inv), max_deg);
        for _ in 0..*k {
            series = truncate_h(&series.mul(&inv_r), max_deg);
        }
    }
    // e = series / h^order, so the residue is the h^(order-1) coefficient.
    h_part(&series, max_deg)
        .substitute_one(h_gen(), Expr::int(1))
        .expect("strip h")
}

#[allow(dead_code)]
pub fn scalar(n: i64) -> Scalar {
    Scalar::int(n)
}

#[allow(dead_code)]
pub fn scalar_inv(s: &Scalar) -> Scalar {
    Coeff::inv(s).expect("nonzero scalar")
}
