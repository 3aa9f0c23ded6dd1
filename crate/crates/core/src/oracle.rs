//! Brute-force numeric cross-check: even generators get random exact scalar
//! values, anticommuting generators get their fermionic matrix
//! representation (Kronecker products of 2x2 raising matrices and parity
//! factors), and an expression evaluates to an exact sparse matrix.
//!
//! A symbolically zero expression must evaluate to the zero matrix for
//! every assignment; the converse is probabilistic and only used to confirm
//! that negative controls stay visibly nonzero.

use crate::error::Error;
use crate::generator::{Family, Generator};
use crate::rng::SplitMix;
use crate::scalar::Coeff;
use crate::{Expr, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub const DEFAULT_MODE_BOUND: usize = 12;

/// Mode assignment: parity-odd generators occupy the P register, form-degree
/// one generators the F register; a (parity, form) = (1,1) generator holds
/// one mode in each.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub even: BTreeMap<Generator, Scalar>,
    modes: BTreeMap<Generator, (Option<usize>, Option<usize>)>,
    n_p: usize,
    n_f: usize,
}

impl Assignment {
    /// Builds an assignment covering every generator of `exprs`.
    pub fn sample(exprs: &[&Expr], rng: &mut SplitMix, bound: usize) -> Result<Assignment, Error> {
        let mut gens: Vec<Generator> = Vec::new();
        for e in exprs {
            for g in e.generators() {
                if !gens.contains(&g) {
                    gens.push(g);
                }
            }
        }
        gens.sort();
        let mut even = BTreeMap::new();
        let mut modes = BTreeMap::new();
        let mut n_p = 0usize;
        let mut n_f = 0usize;
        for g in gens {
            if g.is_central() {
                even.insert(g, rng.small_gaussian());
            } else {
                let p = if g.parity() {
                    let i = n_p;
                    n_p += 1;
                    Some(i)
                } else {
                    None
                };
                let f = if g.form_degree() {
                    let i = n_f;
                    n_f += 1;
                    Some(i)
                } else {
                    None
                };
                modes.insert(g, (p, f));
            }
        }
        if n_p + n_f > bound {
            return Err(Error::DimensionOverflow(n_p + n_f, bound));
        }
        Ok(Assignment {
            even,
            modes,
            n_p,
            n_f,
        })
    }

    pub fn dim(&self) -> usize {
        (1usize << self.n_p) * (1usize << self.n_f)
    }
}

/// Sparse matrix in column form over the combined (P, F) basis.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub dim: usize,
    /// `cols[j]` holds the nonzero entries of column j as (row, value).
    pub cols: Vec<Vec<(usize, Scalar)>>,
}

impl Evaluation {
    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }
}

fn raising_sign(mask: usize, mode: usize) -> bool {
    // Parity factors: one sign per occupied mode below this one.
    (mask & ((1usize << mode) - 1)).count_ones() % 2 == 1
}

/// Evaluates `e` under `asg` to a `dim x dim` matrix.
pub fn evaluate(e: &Expr, asg: &Assignment) -> Result<Evaluation, Error> {
    let dim_f = 1usize << asg.n_f;
    let dim = asg.dim();
    // Scalar prefactor from the denominator.
    let mut den_val = Scalar::one();
    for (p, k) in e.den_factors() {
        let mut v = Scalar::zero();
        for (m, c) in p.terms() {
            let mut t = c.clone();
            for (g, ex) in m.factors() {
                let gv = asg
                    .even
                    .get(g)
                    .ok_or_else(|| Error::UnknownDependency(g.to_string()))?;
                t = t * gv.pow_u(*ex);
            }
            v = v + t;
        }
        if v.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "denominator factor {} vanishes at the sampled point",
                p
            )));
        }
        den_val = den_val * Coeff::inv(&v).unwrap().pow_u(*k);
    }

    let mut cols: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); dim];
    #[allow(clippy::needless_range_loop)]
    for (mono, coeff) in e.terms() {
        // Split the word into a scalar part and an operator word.
        let mut scalar = coeff.clone() * den_val.clone();
        let mut ops: Vec<(usize, Option<usize>, Option<usize>)> = Vec::new();
        for (g, ex) in mono.factors() {
            if g.is_central() {
                let gv = asg
                    .even
                    .get(g)
                    .ok_or_else(|| Error::UnknownDependency(g.to_string()))?;
                scalar = scalar * gv.pow_u(*ex);
            } else {
                let (p, f) = asg.modes[g];
                for _ in 0..*ex {
                    ops.push((0, p, f));
                }
            }
        }
        if scalar.is_zero() {
            continue;
        }
        for col in 0..dim {
            let mut bp = col / dim_f;
            let mut bf = col % dim_f;
            let mut amp = scalar.clone();
            let mut alive = true;
            // Operators act right-to-left on the basis vector.
            for (_, p, f) in ops.iter().rev() {
                if let Some(i) = p {
                    if bp & (1 << i) != 0 {
                        alive = false;
                        break;
                    }
                    if raising_sign(bp, *i) {
                        amp = -amp;
                    }
                    bp |= 1 << i;
                }
                if let Some(j) = f {
                    if bf & (1 << j) != 0 {
                        alive = false;
                        break;
                    }
                    if raising_sign(bf, *j) {
                        amp = -amp;
                    }
                    bf |= 1 << j;
                }
            }
            if !alive {
                continue;
            }
            let row = bp * dim_f + bf;
            let entry = cols[col].entry(row).or_insert_with(Scalar::zero);
            *entry = entry.clone() + amp;
            if entry.is_zero() {
                cols[col].remove(&row);
            }
        }
    }
    Ok(Evaluation {
        dim,
        cols: cols
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect(),
    })
}

const FORM_FAMILIES: [Family; 4] = [Family::DX, Family::DXBar, Family::DTheta, Family::DThetaBar];

/// Checks that `e` evaluates to zero at `count` seeded assignments.
///
/// Expressions carrying differentials are first decomposed by their form
/// content; the coefficient of each independent form word is checked
/// separately, which keeps the fermionic register small.
pub fn confirms_zero(e: &Expr, seed: u64, count: usize, bound: usize) -> Result<bool, Error> {
    let mut rng = SplitMix::new(seed ^ 0x6f72_6163_6c65);
    let parts: Vec<Expr> = if FORM_FAMILIES.iter().any(|f| e.contains_family(*f)) {
        e.expand_by_families(&FORM_FAMILIES)
            .into_iter()
            .map(|(_, c)| c)
            .collect()
    } else {
        vec![e.clone()]
    };
    for part in &parts {
        let mut done = 0;
        let mut attempts = 0;
        while done < count {
            attempts += 1;
            if attempts > count * 20 {
                return Err(Error::DivisionByZero(
                    "could not sample an assignment away from the poles".into(),
                ));
            }
            let asg = Assignment::sample(&[part], &mut rng, bound)?;
            match evaluate(part, &asg) {
                Ok(ev) => {
                    if !ev.is_zero() {
                        return Ok(false);
                    }
                    done += 1;
                }
                // Sampled onto a pole: draw again.
                Err(Error::DivisionByZero(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Family;

    type E = Expr;

    fn theta(c: u8) -> E {
        E::gen(Generator::indexed(Family::Theta, c))
    }
    fn thetab(c: u8) -> E {
        E::gen(Generator::indexed(Family::ThetaBar, c))
    }
    fn sym(k: u8) -> E {
        E::gen(Generator::scalar_sym(Family::Sym(k)))
    }

    #[test]
    fn zero_expression_evaluates_to_zero_matrix() {
        let e = theta(1).mul(&theta(2)).add(&theta(2).mul(&theta(1)));
        assert!(confirms_zero(&e, 1, 10, DEFAULT_MODE_BOUND).unwrap());
    }

    #[test]
    fn representation_respects_anticommutation() {
        // theta_1 theta_2 is nonzero while theta_1^2 is zero.
        let mut rng = SplitMix::new(3);
        let prod = theta(1).mul(&theta(2));
        let asg = Assignment::sample(&[&prod], &mut rng, 4).unwrap();
        let ev = evaluate(&prod, &asg).unwrap();
        assert!(!ev.is_zero());
        assert_eq!(ev.dim, 4);
    }

    #[test]
    fn nonzero_survives_assignments() {
        let e = theta(1)
            .mul(&thetab(2))
            .add(&sym(0).mul(&theta(2)));
        assert!(!confirms_zero(&e, 5, 10, DEFAULT_MODE_BOUND).unwrap());
    }

    #[test]
    fn mixed_grading_signs_respected() {
        // theta and dx commute; the oracle must agree.
        let dth = E::gen(Generator::indexed(Family::DTheta, 1));
        let dx = E::gen(Generator::pair(Family::DX, 1, 1));
        let com = theta(1).mul(&dx).sub(&dx.mul(&theta(1)));
        assert!(confirms_zero(&com, 7, 5, DEFAULT_MODE_BOUND).unwrap());
        // theta and dtheta anticommute.
        let anti = theta(1).mul(&dth).add(&dth.mul(&theta(1)));
        assert!(confirms_zero(&anti, 9, 5, DEFAULT_MODE_BOUND).unwrap());
    }

    #[test]
    fn dimension_bound_enforced() {
        let mut rng = SplitMix::new(1);
        let mut big = E::one();
        for c in [1u8, 2] {
            for fam in [Family::Theta, Family::ThetaBar, Family::Eps(1), Family::EpsBar(1)] {
                big = big.mul(&E::gen(Generator::indexed(fam, c)));
            }
        }
        let err = Assignment::sample(&[&big], &mut rng, 4).unwrap_err();
        assert!(matches!(err, Error::DimensionOverflow(8, 4)));
    }

    #[test]
    fn rational_evaluation_matches_hand_value() {
        // (a^2 - b^2)/(a - b) evaluated equals a + b pointwise.
        let e = sym(0)
            .mul(&sym(0))
            .sub(&sym(1).mul(&sym(1)))
            .div(&sym(0).sub(&sym(1)))
            .unwrap();
        let diff = e.sub(&sym(0).add(&sym(1)));
        assert!(confirms_zero(&diff, 11, 10, DEFAULT_MODE_BOUND).unwrap());
    }
}
