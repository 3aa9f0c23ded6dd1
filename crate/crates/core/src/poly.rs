//! Commutative polynomials in central (even, form-degree-zero) generators.
//! These appear as denominator factors of rational expressions.

use crate::generator::Generator;
use crate::mono::Mono;
use crate::scalar::Coeff;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C: Coeff> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Poly { terms }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn gen(g: Generator) -> Self {
        assert!(g.is_central(), "polynomial generators must be central");
        let mut terms = BTreeMap::new();
        terms.insert(Mono::gen(g), C::one());
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            debug_assert!(m.is_central());
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.terms.is_empty() {
            return Some(C::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                // Central monomials never produce signs or vanish.
                let (m, sign) = ma.mul(mb).expect("central monomials cannot vanish");
                debug_assert!(!sign);
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under the lex monomial order.
    pub fn lead(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of the leading monomial.
    pub fn lead_coeff(&self) -> Option<C> {
        self.lead().map(|(_, c)| c.clone())
    }

    /// Normalizes to leading coefficient 1; returns the unit pulled out so
    /// that `self = unit * monic`.
    pub fn monic(&self) -> (Self, C) {
        match self.lead_coeff() {
            None => (Poly::zero(), C::one()),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                (self.scale(&inv), lc)
            }
        }
    }

    /// Exact multivariate division; `None` when `self` is not a polynomial
    /// multiple of `rhs`.
    pub fn try_div_exact(&self, rhs: &Self) -> Option<Self> {
        let (lm, lc) = rhs.lead()?;
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.lead() {
            let qm = rm.try_div(lm)?;
            let qc = rc.clone() * lc_inv.clone();
            let mut piece = Poly::zero();
            piece.add_term(qm.clone(), qc.clone());
            quot.add_term(qm, qc);
            rem = rem.sub(&piece.mul(rhs));
        }
        Some(quot)
    }

    /// Ordinary partial derivative with respect to a central generator.
    pub fn derivative(&self, g: &Generator) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            if e == 0 {
                continue;
            }
            let lowered = m.without_one(g).unwrap();
            out.add_term(lowered, c.clone() * C::from_int(e as i64));
        }
        out
    }

    pub fn conj(&self, hermitian_x: bool) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let word: Vec<_> = m
                .factors()
                .iter()
                .map(|(g, e)| {
                    (
                        if hermitian_x {
                            g.conjugate_hermitian()
                        } else {
                            g.conjugate()
                        },
                        *e,
                    )
                })
                .collect();
            let (cm, sign) = Mono::from_word(&word).expect("central word");
            debug_assert!(!sign);
            out.add_term(cm, c.conj());
        }
        out
    }

    /// Substitutes a central generator by a polynomial.
    pub fn substitute(&self, g: &Generator, image: &Poly<C>) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            let rest: Vec<_> = m
                .factors()
                .iter()
                .filter(|(h, _)| h != g)
                .cloned()
                .collect();
            let (rest_m, _) = Mono::from_word(&rest).unwrap();
            let mut piece = Poly::from_terms([(rest_m, c.clone())]);
            piece = piece.mul(&image.pow(e));
            out = out.add(&piece);
        }
        out
    }

    /// The generators occurring in the polynomial.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gs: Vec<Generator> = Vec::new();
        for m in self.terms.keys() {
            for (g, _) in m.factors() {
                if !gs.contains(g) {
                    gs.push(*g);
                }
            }
        }
        gs.sort();
        gs
    }

    /// Maximum exponent of `g` across all terms.
    pub fn degree_in(&self, g: &Generator) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(g))
            .max()
            .unwrap_or(0)
    }

    /// Common degree over generators selected by `pred`; `None` when terms
    /// disagree.
    pub fn homogeneous_degree_where(
        &self,
        pred: impl Fn(&Generator) -> bool + Copy,
    ) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree_where(pred) as i64;
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg.or(Some(0))
    }

    /// Writes the polynomial as `p1 * g + p0` with `g`-free parts; `None`
    /// when the degree in `g` exceeds one.
    pub fn split_linear_in(&self, g: &Generator) -> Option<(Poly<C>, Poly<C>)> {
        let mut p1 = Poly::zero();
        let mut p0 = Poly::zero();
        for (m, c) in &self.terms {
            match m.exponent(g) {
                0 => p0.add_term(m.clone(), c.clone()),
                1 => p1.add_term(m.without_one(g).unwrap(), c.clone()),
                _ => return None,
            }
        }
        Some((p1, p0))
    }

    /// Greatest common monomial of all terms (the monomial content).
    pub fn mono_content(&self) -> Mono {
        let mut terms = self.terms.keys();
        let first = match terms.next() {
            None => return Mono::one(),
            Some(m) => m,
        };
        let mut word: Vec<(Generator, u32)> = first.factors().to_vec();
        for m in terms {
            word.retain_mut(|(g, e)| {
                let other = m.exponent(g);
                *e = (*e).min(other);
                *e > 0
            });
            if word.is_empty() {
                break;
            }
        }
        Mono::from_word(&word).unwrap().0
    }

    /// Divides every term by `m`; panics if not exactly divisible.
    pub fn div_by_mono(&self, m: &Mono) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.try_div(m).expect("content division"), c.clone()))
                .collect(),
        }
    }

    /// Stable display key used to order denominator factor lists.
    pub fn sort_key(&self) -> String {
        self.to_string()
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            write_term(f, m, c, &mut first)?;
        }
        Ok(())
    }
}

/// Writes `c * m` as one summand, folding signs and units.
pub(crate) fn write_term<C: Coeff>(
    f: &mut fmt::Formatter<'_>,
    m: &Mono,
    c: &C,
    first: &mut bool,
) -> fmt::Result {
    let s = c.to_string();
    let (neg, mag) = match s.strip_prefix('-') {
        Some(rest) if !s.contains(" + ") && !s.contains(" - ") => (true, rest.to_string()),
        _ => (false, s),
    };
    let multi_part = mag.contains(" + ") || mag.contains(" - ");
    if *first {
        if neg {
            write!(f, "-")?;
        }
        *first = false;
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if m.is_one() {
        if multi_part {
            write!(f, "({})", mag)
        } else {
            write!(f, "{}", mag)
        }
    } else if mag == "1" {
        write!(f, "{}", m)
    } else if multi_part {
        write!(f, "({})*{}", mag, m)
    } else {
        write!(f, "{}*{}", mag, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Family;
    use crate::Scalar;

    fn g(k: u8) -> Generator {
        Generator::scalar_sym(Family::Sym(k))
    }
    fn p_gen(k: u8) -> Poly<Scalar> {
        Poly::gen(g(k))
    }
    fn c(n: i64) -> Poly<Scalar> {
        Poly::constant(Scalar::int(n))
    }

    #[test]
    fn arithmetic_and_normal_form() {
        let a = p_gen(0);
        let b = p_gen(1);
        // (a+b)(a-b) = a^2 - b^2
        let lhs = a.add(&b).mul(&a.sub(&b));
        let rhs = a.mul(&a).sub(&b.mul(&b));
        assert_eq!(lhs, rhs);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = p_gen(0);
        let b = p_gen(1);
        let num = a.mul(&a).sub(&b.mul(&b));
        let q = num.try_div_exact(&a.sub(&b)).unwrap();
        assert_eq!(q, a.add(&b));
        assert!(num.try_div_exact(&a.add(&c(1))).is_none());
    }

    #[test]
    fn monic_normalization() {
        let p = p_gen(0).scale(&Scalar::int(2)).add(&c(4));
        let (m, unit) = p.monic();
        assert_eq!(unit, Scalar::int(2));
        assert_eq!(m, p_gen(0).add(&c(2)));
    }

    #[test]
    fn derivative_power_rule() {
        // d/da (a^2 b) = 2ab
        let p = p_gen(0).mul(&p_gen(0)).mul(&p_gen(1));
        let d = p.derivative(&g(0));
        assert_eq!(d, p_gen(0).mul(&p_gen(1)).scale(&Scalar::int(2)));
    }

    #[test]
    fn substitution() {
        // a^2 with a -> b+1 gives b^2 + 2b + 1
        let p = p_gen(0).mul(&p_gen(0));
        let img = p_gen(1).add(&c(1));
        let s = p.substitute(&g(0), &img);
        let expect = p_gen(1)
            .mul(&p_gen(1))
            .add(&p_gen(1).scale(&Scalar::int(2)))
            .add(&c(1));
        assert_eq!(s, expect);
    }
}
