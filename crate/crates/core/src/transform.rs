//! The contour transform from homogeneous sections to chiral multiplets,
//! with the field-equation checks, the expansion at x, the component SUSY
//! laws and the R-symmetry action.

use crate::conventions::{eps_down, eps_up, eta, sigma, sigma_tilde};
use crate::error::Error;
use crate::generator::{Family, Generator};
use crate::residue::{chart_z, find_poles, residue_or_zero};
use crate::scalar::{Coeff, Qis};
use crate::section::{HomogeneousSection, Spin};
use crate::spinor::{box_op, gen_up, spin_derivative, theta_sq};
use crate::superspace::{theta, thetabar, susy_variation_chiral};
use crate::{Expr, Scalar};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub fn y_gen(a: u8, ad: u8) -> Generator {
    Generator::pair(Family::Y, a, ad)
}

fn y(a: u8, ad: u8) -> Expr {
    Expr::gen(y_gen(a, ad))
}

/// The affine chart nubar^ad = (1, z) as a substitution on the section
/// variables: u_a goes to -i(y_{a 1d} + z y_{a 2d}) and the lowered nubar
/// components to (-z, 1).
pub fn chart_map() -> BTreeMap<Generator, Expr> {
    let z = Expr::gen(chart_z());
    let mut map = BTreeMap::new();
    for a in [1u8, 2] {
        map.insert(
            Generator::indexed(Family::U, a),
            y(a, 1).add(&z.mul(&y(a, 2))).scale(&Qis::int_i(-1)),
        );
    }
    map.insert(Generator::indexed(Family::NuBar, 1), z.neg());
    map.insert(Generator::indexed(Family::NuBar, 2), Expr::one());
    map
}

/// Spin-S multiplet: component fields over the chiral coordinates, stored
/// by the number of dotted-2 indices (total symmetry makes that a complete
/// labeling). `psi` carries the lower spinor index.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralMultiplet {
    pub spin: Spin,
    pub a: Vec<Expr>,
    pub psi: [Vec<Expr>; 2],
    pub f: Vec<Expr>,
}

impl ChiralMultiplet {
    pub fn zero(spin: Spin) -> Self {
        let comps = vec![Expr::zero(); spin.arity() + 1];
        ChiralMultiplet {
            spin,
            a: comps.clone(),
            psi: [comps.clone(), comps.clone()],
            f: comps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Expr::is_zero)
            && self.psi.iter().flatten().all(|e| e.is_zero())
            && self.f.iter().all(Expr::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.spin, rhs.spin);
        let zip = |xs: &Vec<Expr>, ys: &Vec<Expr>| -> Vec<Expr> {
            xs.iter().zip(ys).map(|(x, y)| x.add(y)).collect()
        };
        ChiralMultiplet {
            spin: self.spin,
            a: zip(&self.a, &rhs.a),
            psi: [zip(&self.psi[0], &rhs.psi[0]), zip(&self.psi[1], &rhs.psi[1])],
            f: zip(&self.f, &rhs.f),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let map = |xs: &Vec<Expr>| -> Vec<Expr> { xs.iter().map(Expr::neg).collect() };
        ChiralMultiplet {
            spin: self.spin,
            a: map(&self.a),
            psi: [map(&self.psi[0]), map(&self.psi[1])],
            f: map(&self.f),
        }
    }

    pub fn fields(&self) -> Vec<(String, &Expr)> {
        let mut out = Vec::new();
        for (k, e) in self.a.iter().enumerate() {
            out.push((format!("A[{}]", k), e));
        }
        for l in 0..2 {
            for (k, e) in self.psi[l].iter().enumerate() {
                out.push((format!("psi{}[{}]", l + 1, k), e));
            }
        }
        for (k, e) in self.f.iter().enumerate() {
            out.push((format!("F[{}]", k), e));
        }
        out
    }
}

/// The chart poles of every component of a section, deduplicated by
/// location and sorted for stable enumeration.
pub fn chart_pole_locations(section: &HomogeneousSection) -> Result<Vec<Expr>, Error> {
    let map = chart_map();
    let mut locs: Vec<Expr> = Vec::new();
    for (_, comp) in section.components() {
        if comp.is_zero() {
            continue;
        }
        let charted = comp.substitute(&map)?;
        for pole in find_poles(&charted)? {
            if !locs.iter().any(|l| l.sub(&pole.location).is_zero()) {
                locs.push(pole.location);
            }
        }
    }
    locs.sort_by_key(|l| l.to_string());
    Ok(locs)
}

/// The contour transform: in the chart nubar = (1, z), each component field
/// with k dotted-2 indices is the sum over the selected poles of the
/// residues of z^k G. The measure normalization absorbs 2 pi i.
pub fn contour_transform(
    section: &HomogeneousSection,
    poles: &[Expr],
) -> Result<ChiralMultiplet, Error> {
    // The zero section is homogeneous of every degree; by linearity its
    // multiplet is zero.
    if section.components().iter().all(|(_, c)| c.is_zero()) {
        return Ok(ChiralMultiplet::zero(section.spin));
    }
    let degree = section.homogeneity_degree()?;
    if degree != section.spin.required_degree() {
        return Err(Error::HomogeneityViolation(format!(
            "section degree {} but spin {} requires {}",
            degree,
            section.spin,
            section.spin.required_degree()
        )));
    }
    let map = chart_map();
    let z = Expr::gen(chart_z());
    let arity = section.spin.arity();

    // Validate the selection: each pole must belong to some component.
    let known = chart_pole_locations(section)?;
    for loc in poles {
        if !known.iter().any(|l| l.sub(loc).is_zero()) {
            return Err(Error::PoleNotFound(loc.to_string()));
        }
    }

    let integrate = |g: &Expr| -> Result<Vec<Expr>, Error> {
        let mut out = Vec::with_capacity(arity + 1);
        if g.is_zero() {
            return Ok(vec![Expr::zero(); arity + 1]);
        }
        let charted = g.substitute(&map)?;
        for k in 0..=arity {
            let integrand = z.pow(k as u32).mul(&charted);
            let mut acc = Expr::zero();
            for loc in poles {
                acc = acc.add(&residue_or_zero(&integrand, loc)?);
            }
            out.push(acc);
        }
        Ok(out)
    };

    let f0 = integrate(&section.g0)?;
    let f_up = [integrate(&section.g1[0])?, integrate(&section.g1[1])?];
    let f2 = integrate(&section.g2)?;

    // Renaming: f0 = sqrt(2) A, f2 = sqrt(2) F, f_lambda = psi_lambda.
    let inv_sqrt2 = Coeff::inv(&Scalar::sqrt2()).unwrap();
    let lower = |l: u8, k: usize| -> Expr {
        let mut acc = Expr::zero();
        for m in [1u8, 2] {
            acc = acc.add(&f_up[(m - 1) as usize][k].scale(&eps_down(l, m)));
        }
        acc
    };
    Ok(ChiralMultiplet {
        spin: section.spin,
        a: f0.iter().map(|e| e.scale(&inv_sqrt2)).collect(),
        psi: [
            (0..=arity).map(|k| lower(1, k)).collect(),
            (0..=arity).map(|k| lower(2, k)).collect(),
        ],
        f: f2.iter().map(|e| e.scale(&inv_sqrt2)).collect(),
    })
}

/// One failed check: a label and the nonzero witness expression.
pub type Witness = (String, Expr);

/// Chiral Dirac equations: for every field, every undotted a and every
/// index class k, d/dy_{a 1d} f^(2d, rest_k) - d/dy_{a 2d} f^(1d, rest_k)
/// must vanish. Failures are returned with their witnesses.
pub fn check_dirac(m: &ChiralMultiplet) -> Result<Vec<Witness>, Error> {
    let mut failures = Vec::new();
    for (name, field) in named_fields(m) {
        for k in 0..m.spin.arity() {
            for a in [1u8, 2] {
                let lhs = spin_derivative(&field[k + 1], Family::Y, a, 1)?;
                let rhs = spin_derivative(&field[k], Family::Y, a, 2)?;
                let diff = lhs.sub(&rhs);
                if !diff.is_zero() {
                    failures.push((format!("dirac:{}[{}]:a={}", name, k, a), diff));
                }
            }
        }
    }
    Ok(failures)
}

/// Klein-Gordon property: box annihilates every component field.
pub fn check_massless(m: &ChiralMultiplet) -> Result<Vec<Witness>, Error> {
    let mut failures = Vec::new();
    for (name, field) in named_fields(m) {
        for (k, comp) in field.iter().enumerate() {
            let b = box_op(comp, Family::Y)?;
            if !b.is_zero() {
                failures.push((format!("kg:{}[{}]", name, k), b));
            }
        }
    }
    Ok(failures)
}

fn named_fields(m: &ChiralMultiplet) -> Vec<(&'static str, &Vec<Expr>)> {
    vec![
        ("A", &m.a),
        ("psi1", &m.psi[0]),
        ("psi2", &m.psi[1]),
        ("F", &m.f),
    ]
}

/// f^lambda (upper index) from the stored lower-index psi.
fn f_upper(m: &ChiralMultiplet, l: u8, k: usize) -> Expr {
    let mut acc = Expr::zero();
    for mu in [1u8, 2] {
        acc = acc.add(&m.psi[(mu - 1) as usize][k].scale(&eps_up(l, mu)));
    }
    acc
}

/// Phi^(k)(y, theta) = f0 - 2 theta_l f^l + theta^2 f2 with the renaming
/// applied in reverse (f0 = sqrt2 A, f2 = sqrt2 F).
pub fn assemble_superfield(m: &ChiralMultiplet) -> Vec<Expr> {
    let sqrt2 = Scalar::sqrt2();
    (0..=m.spin.arity())
        .map(|k| {
            let mut phi = m.a[k].scale(&sqrt2);
            for l in [1u8, 2] {
                phi = phi.sub(&theta(l).mul(&f_upper(m, l, k)).scale(&Scalar::int(2)));
            }
            phi.add(&theta_sq(Family::Theta).mul(&m.f[k].scale(&sqrt2)))
        })
        .collect()
}

/// Expands Phi(y(x, theta, thetabar), theta) at the point x. Requires the
/// massless property (the theta^2 thetabar^2 term of the expansion is the
/// box of f0 and must cancel).
pub fn expand_at_x(m: &ChiralMultiplet) -> Result<Vec<Expr>, Error> {
    let kg = check_massless(m)?;
    if let Some((label, _)) = kg.first() {
        return Err(Error::MasslessnessRequired(label.clone()));
    }
    let mut map = BTreeMap::new();
    for a in [1u8, 2] {
        for ad in [1u8, 2] {
            map.insert(
                y_gen(a, ad),
                crate::superspace::x(a, ad)
                    .sub(&theta(a).mul(&thetabar(ad)).scale(&Qis::int_i(2))),
            );
        }
    }
    let phis = assemble_superfield(m);
    let mut out = Vec::with_capacity(phis.len());
    for phi in &phis {
        let expanded = phi.substitute(&map)?;
        // The displayed expansion stops at theta^2 thetabar: the full-square
        // term carries box f0 and vanishes for massless fields.
        let top = expanded.filter_terms(|mono| {
            mono.degree_where(|g| g.family == Family::Theta) == 2
                && mono.degree_where(|g| g.family == Family::ThetaBar) == 2
        });
        assert!(top.is_zero(), "massless expansion grew a top term");
        out.push(expanded);
    }
    Ok(out)
}

/// The component SUSY laws, assembled from the sigma tables:
///   delta A = sqrt2 eps^l psi_l
///   delta psi_l = i sqrt2 (sigma_m epsbar)_l d^m A + sqrt2 eps_l F
///   delta F = i sqrt2 (epsbar sigmatilde_m d^m psi).
pub fn component_susy(m: &ChiralMultiplet, set: u8) -> Result<ChiralMultiplet, Error> {
    let sqrt2 = Scalar::sqrt2();
    let i_sqrt2 = Scalar::sqrt2() * Qis::imag_unit();
    let eps = |l: u8| Expr::gen(Generator::indexed(Family::Eps(set), l));
    let arity = m.spin.arity();

    // d^m acting on a y-space field, as a closure over the tables.
    let dm = |e: &Expr, mm: usize| -> Result<Expr, Error> {
        let mut acc = Expr::zero();
        for n in 0..4 {
            let w = eta(mm, n);
            if w.is_zero() {
                continue;
            }
            for g in [1u8, 2] {
                for gd in [1u8, 2] {
                    let s = w.clone() * sigma(n, g, gd);
                    if s.is_zero() {
                        continue;
                    }
                    acc = acc.add(&spin_derivative(e, Family::Y, g, gd)?.scale(&s));
                }
            }
        }
        Ok(acc)
    };

    let mut out = ChiralMultiplet::zero(m.spin);
    for k in 0..=arity {
        // delta A
        let mut da = Expr::zero();
        for l in [1u8, 2] {
            da = da.add(&gen_up(Family::Eps(set), l).mul(&m.psi[(l - 1) as usize][k]));
        }
        out.a[k] = da.scale(&sqrt2);

        // delta psi
        for l in [1u8, 2] {
            let mut dpsi = Expr::zero();
            for mm in 0..4 {
                let mut pauli_eps = Expr::zero();
                for bd in [1u8, 2] {
                    pauli_eps = pauli_eps.add(&epsbar_up(set, bd).scale(&sigma(mm, l, bd)));
                }
                if pauli_eps.is_zero() {
                    continue;
                }
                dpsi = dpsi.add(&pauli_eps.mul(&dm(&m.a[k], mm)?));
            }
            out.psi[(l - 1) as usize][k] = dpsi
                .scale(&i_sqrt2)
                .add(&eps(l).mul(&m.f[k]).scale(&sqrt2));
        }

        // delta F
        let mut df = Expr::zero();
        for mm in 0..4 {
            for bd in [1u8, 2] {
                for u in [1u8, 2] {
                    let s = sigma_tilde(mm, bd, u);
                    if s.is_zero() {
                        continue;
                    }
                    df = df.add(
                        &Expr::gen(Generator::indexed(Family::EpsBar(set), bd))
                            .mul(&dm(&m.psi[(u - 1) as usize][k], mm)?)
                            .scale(&s),
                    );
                }
            }
        }
        out.f[k] = df.scale(&i_sqrt2);
    }
    Ok(out)
}

fn epsbar_up(set: u8, bd: u8) -> Expr {
    gen_up(Family::EpsBar(set), bd)
}

/// The same variation computed through superspace: theta-expansion of the
/// chiral variation of Phi(y, theta).
pub fn component_susy_via_superspace(
    m: &ChiralMultiplet,
    set: u8,
) -> Result<ChiralMultiplet, Error> {
    let inv_sqrt2 = Coeff::inv(&Scalar::sqrt2()).unwrap();
    let minus_half = Scalar::rat(-1, 2);
    let phis = assemble_superfield(m);
    let mut out = ChiralMultiplet::zero(m.spin);
    for (k, phi) in phis.iter().enumerate() {
        let dphi = susy_variation_chiral(phi, set)?;
        let parts = dphi.expand_by_families(&[Family::Theta]);
        let mut df0 = Expr::zero();
        let mut df_up = [Expr::zero(), Expr::zero()];
        let mut df2 = Expr::zero();
        for (word, coeff) in parts {
            let letters: Vec<Generator> = word.factors().iter().map(|&(g, _)| g).collect();
            match letters.len() {
                0 => df0 = coeff,
                1 => {
                    let l = letters[0].c1;
                    df_up[(l - 1) as usize] = coeff.scale(&minus_half);
                }
                2 => df2 = coeff.scale(&minus_half),
                _ => unreachable!("cubic theta word"),
            }
        }
        out.a[k] = df0.scale(&inv_sqrt2);
        for l in [1u8, 2] {
            let mut acc = Expr::zero();
            for mu in [1u8, 2] {
                acc = acc.add(&df_up[(mu - 1) as usize].scale(&eps_down(l, mu)));
            }
            out.psi[(l - 1) as usize][k] = acc;
        }
        out.f[k] = df2.scale(&inv_sqrt2);
    }
    Ok(out)
}

/// [delta_1, delta_2] on the chiral coordinate y: the field-independent
/// translation closing the algebra.
pub fn closure_shift(a: u8, ad: u8, set1: u8, set2: u8) -> Result<Expr, Error> {
    let yc = Expr::gen(y_gen(a, ad));
    let d12 = susy_variation_chiral(&susy_variation_chiral(&yc, set2)?, set1)?;
    let d21 = susy_variation_chiral(&susy_variation_chiral(&yc, set1)?, set2)?;
    Ok(d12.sub(&d21))
}

/// R-symmetry action on a section with R-number n (passed as 2n): the
/// component weights are forced to (w^2n, w^(2n-1), w^(2n-2)). Verifies the
/// defining relation F'(-il, nubar, w theta) = w^2n F before returning.
pub fn r_transform_section(
    section: &HomogeneousSection,
    n2: i64,
    unit: u8,
) -> Result<HomogeneousSection, Error> {
    let w_pow = |j: i64| -> Expr { unit_power(unit, j) };
    let out = HomogeneousSection::new(
        section.spin,
        section.g0.mul(&w_pow(n2)),
        [
            section.g1[0].mul(&w_pow(n2 - 1)),
            section.g1[1].mul(&w_pow(n2 - 1)),
        ],
        section.g2.mul(&w_pow(n2 - 2)),
    );
    // F'(theta -> w theta) must equal w^2n F(theta).
    let w = Expr::gen(Generator::scalar_sym(Family::Unit(unit)));
    let mut rot = BTreeMap::new();
    for l in [1u8, 2] {
        rot.insert(Generator::indexed(Family::Theta, l), w.mul(&theta(l)));
    }
    let lhs = out.assemble().substitute(&rot)?;
    let rhs = section.assemble().mul(&w_pow(n2));
    if !lhs.sub(&rhs).is_zero() {
        return Err(Error::WeightMismatch(format!(
            "components do not carry weights ({}, {}, {})",
            n2,
            n2 - 1,
            n2 - 2
        )));
    }
    Ok(out)
}

/// The induced weights on the multiplet components.
pub fn r_transform_multiplet(
    m: &ChiralMultiplet,
    n2: i64,
    unit: u8,
) -> ChiralMultiplet {
    let scale = |xs: &Vec<Expr>, j: i64| -> Vec<Expr> {
        xs.iter().map(|e| e.mul(&unit_power(unit, j))).collect()
    };
    ChiralMultiplet {
        spin: m.spin,
        a: scale(&m.a, n2),
        psi: [scale(&m.psi[0], n2 - 1), scale(&m.psi[1], n2 - 1)],
        f: scale(&m.f, n2 - 2),
    }
}

/// w^j with negative powers through the exact rational inverse.
pub fn unit_power(unit: u8, j: i64) -> Expr {
    let w = Expr::gen(Generator::scalar_sym(Family::Unit(unit)));
    if j >= 0 {
        w.pow(j as u32)
    } else {
        Expr::one().div(&w).expect("unit symbol").pow((-j) as u32)
    }
}

#[derive(Serialize, Deserialize)]
struct MultipletJson {
    spin: String,
    arity: usize,
    components: BTreeMap<String, Vec<String>>,
}

/// Serializes a multiplet: spin, index arity, and each component field as an
/// expression string in the CLI grammar.
pub fn multiplet_to_json(m: &ChiralMultiplet) -> String {
    let strings = |xs: &Vec<Expr>| xs.iter().map(|e| e.to_string()).collect::<Vec<_>>();
    let mut components = BTreeMap::new();
    components.insert("a".to_string(), strings(&m.a));
    components.insert("psi1".to_string(), strings(&m.psi[0]));
    components.insert("psi2".to_string(), strings(&m.psi[1]));
    components.insert("f".to_string(), strings(&m.f));
    let doc = MultipletJson {
        spin: m.spin.to_string(),
        arity: m.spin.arity(),
        components,
    };
    serde_json::to_string_pretty(&doc).expect("serialization")
}

pub fn multiplet_from_json(text: &str) -> Result<ChiralMultiplet, Error> {
    let doc: MultipletJson = serde_json::from_str(text).map_err(|e| Error::SyntaxError {
        line: 1,
        col: 1,
        msg: format!("invalid multiplet JSON: {}", e),
    })?;
    let spin: Spin = doc.spin.parse()?;
    let want = spin.arity() + 1;
    let get = |name: &str| -> Result<Vec<Expr>, Error> {
        let strings = doc.components.get(name).ok_or_else(|| Error::SyntaxError {
            line: 1,
            col: 1,
            msg: format!("missing component `{}`", name),
        })?;
        if strings.len() != want {
            return Err(Error::SyntaxError {
                line: 1,
                col: 1,
                msg: format!(
                    "component `{}` has {} entries, expected {}",
                    name,
                    strings.len(),
                    want
                ),
            });
        }
        strings.iter().map(|s| crate::parser::parse(s)).collect()
    };
    Ok(ChiralMultiplet {
        spin,
        a: get("a")?,
        psi: [get("psi1")?, get("psi2")?],
        f: get("f")?,
    })
}
