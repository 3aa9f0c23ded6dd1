//! Homogeneous sections of the theta-twistor function space: three
//! component functions of (u, nubar) with a declared nubar-homogeneity
//! degree, and the elementary-state family whose denominators split into
//! linear factors.

use crate::error::Error;
use crate::generator::{Family, Generator};
use crate::spinor::{gen_up, theta_sq};
use crate::superspace::theta;
use crate::{Expr, Scalar};
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

/// Spin stored as twice its value, so half-integers stay exact.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Spin(pub u32);

impl Spin {
    pub fn from_twice(n: u32) -> Spin {
        Spin(n)
    }

    /// Number of dotted indices carried by the multiplet fields.
    pub fn arity(&self) -> usize {
        self.0 as usize
    }

    /// The required nubar-homogeneity degree -2(S+1) = -(2S+2).
    pub fn required_degree(&self) -> i64 {
        -(self.0 as i64 + 2)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Spin, Error> {
        let parse_u32 = |t: &str| {
            t.parse::<u32>().map_err(|_| Error::SyntaxError {
                line: 1,
                col: 1,
                msg: format!("invalid spin `{}`", s),
            })
        };
        if let Some(half) = s.strip_suffix("/2") {
            Ok(Spin(parse_u32(half)?))
        } else {
            Ok(Spin(parse_u32(s)? * 2))
        }
    }
}

fn is_section_var(g: &Generator) -> bool {
    matches!(g.family, Family::U | Family::NuBar)
}

/// F(Xi) = G0 - 2 theta_l G^l + theta^2 G2, with each component a rational
/// function of the section variables (u, nubar). `g1` stores the two upper
/// components G^l.
#[derive(Clone, Debug)]
pub struct HomogeneousSection {
    pub spin: Spin,
    pub g0: Expr,
    pub g1: [Expr; 2],
    pub g2: Expr,
}

impl HomogeneousSection {
    pub fn new(spin: Spin, g0: Expr, g1: [Expr; 2], g2: Expr) -> HomogeneousSection {
        HomogeneousSection { spin, g0, g1, g2 }
    }

    pub fn components(&self) -> [(&'static str, &Expr); 4] {
        [
            ("G0", &self.g0),
            ("G^1", &self.g1[0]),
            ("G^2", &self.g1[1]),
            ("G2", &self.g2),
        ]
    }

    /// The common nubar-degree of the components (u counts 1, theta counts
    /// 0); errors when any component is inhomogeneous or they disagree.
    pub fn homogeneity_degree(&self) -> Result<i64, Error> {
        let mut common: Option<i64> = None;
        for (name, comp) in self.components() {
            if comp.is_zero() {
                continue;
            }
            let d = comp.homogeneous_degree_where(is_section_var)?;
            match common {
                None => common = Some(d),
                Some(c) if c != d => {
                    return Err(Error::MixedHomogeneity(format!(
                        "{} has degree {}, expected {}",
                        name, d, c
                    )))
                }
                _ => {}
            }
        }
        Ok(common.unwrap_or(0))
    }

    /// F as one expression over (u, nubar, theta).
    pub fn assemble(&self) -> Expr {
        let mut f = self.g0.clone();
        for l in [1u8, 2] {
            f = f.sub(
                &theta(l)
                    .mul(&self.g1[(l - 1) as usize])
                    .scale(&Scalar::int(2)),
            );
        }
        f.add(&theta_sq(Family::Theta).mul(&self.g2))
    }
}

/// (c^a u_a)^k / ((abar nubar)^p (bbar nubar)^q), the rational building
/// block of elementary states.
pub fn elementary_component(
    k: u32,
    p: u32,
    q: u32,
    abar: &[Scalar; 2],
    bbar: &[Scalar; 2],
    c_up: &[Scalar; 2],
) -> Result<Expr, Error> {
    let cross = abar[0].clone() * bbar[1].clone() - abar[1].clone() * bbar[0].clone();
    if cross.is_zero() {
        return Err(Error::ProportionalSpinors(format!(
            "abar = [{}, {}], bbar = [{}, {}]",
            abar[0], abar[1], bbar[0], bbar[1]
        )));
    }
    let pair = |s: &[Scalar; 2]| {
        let mut acc = Expr::zero();
        for ad in [1u8, 2] {
            acc = acc.add(&gen_up(Family::NuBar, ad).scale(&s[(ad - 1) as usize]));
        }
        acc
    };
    let mut num = Expr::one();
    if k > 0 {
        let mut cu = Expr::zero();
        for a in [1u8, 2] {
            cu = cu.add(
                &Expr::gen(Generator::indexed(Family::U, a)).scale(&c_up[(a - 1) as usize]),
            );
        }
        num = cu.pow(k);
    }
    num.div_factor(&pair(abar), p)?.div_factor(&pair(bbar), q)
}

/// An elementary state: G0 populated with the standard block, together with
/// the data needed to locate its poles in the affine chart.
#[derive(Clone, Debug)]
pub struct ElementaryState {
    pub section: HomogeneousSection,
    pub abar: [Scalar; 2],
    pub bbar: [Scalar; 2],
}

impl ElementaryState {
    /// Requires k - p - q = -2(S+1) and non-proportional pole spinors.
    pub fn new(
        spin: Spin,
        k: u32,
        p: u32,
        q: u32,
        abar: [Scalar; 2],
        bbar: [Scalar; 2],
        c_up: [Scalar; 2],
    ) -> Result<ElementaryState, Error> {
        let degree = k as i64 - p as i64 - q as i64;
        if degree != spin.required_degree() {
            return Err(Error::HomogeneityViolation(format!(
                "k - p - q = {} but spin {} requires {}",
                degree,
                spin,
                spin.required_degree()
            )));
        }
        let g0 = elementary_component(k, p, q, &abar, &bbar, &c_up)?;
        Ok(ElementaryState {
            section: HomogeneousSection::new(spin, g0, [Expr::zero(), Expr::zero()], Expr::zero()),
            abar,
            bbar,
        })
    }

    /// Chart location of the abar-factor pole, -abar_1/abar_2; at the
    /// excluded chart point when abar_2 = 0.
    pub fn pole_a(&self) -> Result<Expr, Error> {
        pole_of(&self.abar, "abar")
    }

    pub fn pole_b(&self) -> Result<Expr, Error> {
        pole_of(&self.bbar, "bbar")
    }
}

fn pole_of(s: &[Scalar; 2], name: &str) -> Result<Expr, Error> {
    use crate::scalar::Coeff;
    if s[1].is_zero() {
        return Err(Error::ChartPoleAtInfinity(format!(
            "{} is proportional to (1, 0)",
            name
        )));
    }
    let loc = -(s[0].clone() * Coeff::inv(&s[1]).unwrap());
    Ok(Expr::constant(loc))
}
