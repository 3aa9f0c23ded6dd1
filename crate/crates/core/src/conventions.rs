//! Sign conventions, fixed once for the whole engine.
//!
//! This module is the conventions file: the static, human-readable record of
//! every sign choice, together with a startup self-test that asserts their
//! mutual consistency. Nothing here is configurable at load time; the text
//! below is hashed into every verification report.

use crate::scalar::Qis;
use crate::Scalar;
use num_traits::{One, Zero};

/// Human-readable record of the conventions. Reports embed the FNV-1a hash
/// of this text so a result is tied to the sign choices it was derived
/// under.
pub const CONVENTIONS_TEXT: &str = "\
Weyl spinor and sigma-matrix conventions
========================================

Epsilon tensors (same numerics for dotted and undotted):
  eps_up(1,2)   = +1,  eps_up(2,1)   = -1,  eps_up(a,a)   = 0
  eps_down(1,2) = -1,  eps_down(2,1) = +1,  eps_down(a,a) = 0
  Raising:  psi^a = eps_up(a,b) psi_b
  Lowering: psi_a = eps_down(a,b) psi^b
  These satisfy eps_up(a,b) eps_down(b,c) = delta(a,c).

Theta bilinears:
  theta^2    = theta^a theta_a          = -2 theta_1 theta_2
  thetabar^2 = thetabar_ad thetabar^ad  = +2 thetabar_1 thetabar_2
  theta_a theta_b       = (1/2) eps_down(a,b) theta^2
  thetabar_ad thetabar_bd = -(1/2) eps_down(ad,bd) thetabar^2
  (the dotted rule is the conjugate of the undotted one).

Metric and sigma matrices:
  eta = diag(-1, +1, +1, +1)
  sigma_0 = 1, sigma_1 = tau_x, sigma_2 = tau_y, sigma_3 = tau_z,
  indexed (sigma_m)_{a ad}.
  sigmatilde_m^{ad a} = eps_up(ad,bd) eps_up(a,b) (sigma_m)_{b bd}
  Completeness: sum_mn eta^{mn} (sigma_m)_{a ad} (sigma_n)_{b bd}
              = -2 eps_down(a,b) eps_down(ad,bd)
  Trace: (sigma_m)_{a ad} (sigmatilde_n)^{ad a} = -2 eta_{mn}

Derivatives:
  The fundamental derivative is d/dx_{a ad}.
  Vector derivative: d_m = (sigma_m)_{a ad} d/dx_{a ad}; d^m = eta^{mn} d_n.
  The raised spinor derivative of the vector formalism acts numerically as
  d/dx_{a ad}; both index orders denote this same object.
  Box operator: box = eps_up(a,b) eps_up(ad,bd) d_{a ad} d_{b bd}
  with overall constant kappa = 1; d_m d^m = -2 box.

Superspace:
  y_{a ad}    = x_{a ad} - 2i theta_a thetabar_ad
  ybar_{a ad} = x_{a ad} + 2i theta_a thetabar_ad
  omega_{a ad} = dy_{a ad} + 4i dtheta_a thetabar_ad
  D^a    = d/dtheta_a    - 2i thetabar_bd d/dx_{a bd}
  Dbar^ad = d/dthetabar_ad - 2i theta_b   d/dx_{b ad}
  so that Dbar annihilates y and theta, D annihilates ybar and thetabar,
  and {D^a, Dbar^ad} closes on -4i d/dx_{a ad}.

Chiral Dirac contraction on a field with upper dotted indices:
  (Dirac_a f)^{rest} = d/dy_{a 2d} f^{(1d,rest)} - d/dy_{a 1d} f^{(2d,rest)},
  i.e. the derivative index is paired with the field index through
  eps_down, which is the reading under which the transform outputs are
  annihilated identically.
";

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// FNV-1a 64-bit hash, hex encoded.
pub fn fnv1a_hex(text: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{:016x}", h)
}

pub fn conventions_hash() -> String {
    fnv1a_hex(CONVENTIONS_TEXT)
}

/// eps with both indices up; `a`, `b` are 1 or 2.
pub fn eps_up(a: u8, b: u8) -> Scalar {
    match (a, b) {
        (1, 2) => Scalar::one(),
        (2, 1) => -Scalar::one(),
        _ => Scalar::zero(),
    }
}

/// eps with both indices down.
pub fn eps_down(a: u8, b: u8) -> Scalar {
    -eps_up(a, b)
}

/// Minkowski metric diag(-1, +1, +1, +1); `eta(m, n)` for m, n in 0..4.
pub fn eta(m: usize, n: usize) -> Scalar {
    if m != n {
        Scalar::zero()
    } else if m == 0 {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// (sigma_m)_{a ad} for m in 0..4; rows are the undotted index.
pub fn sigma(m: usize, a: u8, ad: u8) -> Scalar {
    let i = Qis::imag_unit;
    let one = Scalar::one;
    let zero = Scalar::zero;
    match m {
        0 => {
            if a == ad {
                one()
            } else {
                zero()
            }
        }
        1 => {
            if a != ad {
                one()
            } else {
                zero()
            }
        }
        2 => match (a, ad) {
            (1, 2) => -i(),
            (2, 1) => i(),
            _ => zero(),
        },
        3 => match (a, ad) {
            (1, 1) => one(),
            (2, 2) => -one(),
            _ => zero(),
        },
        _ => unreachable!("sigma index out of range"),
    }
}

/// sigmatilde_m^{ad a} = eps_up(ad,bd) eps_up(a,b) (sigma_m)_{b bd}.
pub fn sigma_tilde(m: usize, ad: u8, a: u8) -> Scalar {
    let mut acc = Scalar::zero();
    for b in [1u8, 2] {
        for bd in [1u8, 2] {
            acc = acc + eps_up(ad, bd) * eps_up(a, b) * sigma(m, b, bd);
        }
    }
    acc
}

/// Asserts the mutual consistency of every table above. Returns the list of
/// failed relations (empty on success).
pub fn self_check() -> Vec<String> {
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    // eps_up . eps_down = identity, both kinds share the numerics.
    for a in [1u8, 2] {
        for c in [1u8, 2] {
            let mut acc = Scalar::zero();
            for b in [1u8, 2] {
                acc = acc + eps_up(a, b) * eps_down(b, c);
            }
            let expect = if a == c { Scalar::one() } else { Scalar::zero() };
            check("eps-inverse-pair", acc == expect);
        }
    }

    // Completeness: sum eta^{mn} sigma_m sigma_n = -2 eps_down eps_down.
    for a in [1u8, 2] {
        for ad in [1u8, 2] {
            for b in [1u8, 2] {
                for bd in [1u8, 2] {
                    let mut acc = Scalar::zero();
                    for m in 0..4 {
                        // eta is diagonal and squares to the identity, so
                        // eta^{mn} has the same entries as eta_{mn}.
                        acc = acc + eta(m, m) * sigma(m, a, ad) * sigma(m, b, bd);
                    }
                    let expect = eps_down(a, b) * eps_down(ad, bd) * Scalar::int(-2);
                    check("sigma-completeness", acc == expect);
                }
            }
        }
    }

    // Trace: sigma_m . sigmatilde_n over both spinor indices = -2 eta_{mn}.
    for m in 0..4 {
        for n in 0..4 {
            let mut acc = Scalar::zero();
            for a in [1u8, 2] {
                for ad in [1u8, 2] {
                    acc = acc + sigma(m, a, ad) * sigma_tilde(n, ad, a);
                }
            }
            check("sigma-trace", acc == eta(m, n) * Scalar::int(-2));
        }
    }

    // sigmatilde contraction used by the component SUSY laws:
    // sum_mn sigmatilde_m^{bd u} eta^{mn} sigma_n_{g gd} = -2 delta(u,g) delta(bd,gd).
    for bd in [1u8, 2] {
        for u in [1u8, 2] {
            for g in [1u8, 2] {
                for gd in [1u8, 2] {
                    let mut acc = Scalar::zero();
                    for m in 0..4 {
                        acc = acc + sigma_tilde(m, bd, u) * eta(m, m) * sigma(m, g, gd);
                    }
                    let expect = if u == g && bd == gd {
                        Scalar::int(-2)
                    } else {
                        Scalar::zero()
                    };
                    check("sigmatilde-derivative-chain", acc == expect);
                }
            }
        }
    }

    failures
}
