//! Rational expressions in the bigraded algebra: a graded numerator over a
//! factored central-polynomial denominator, kept in a unique normal form.

use crate::error::Error;
use crate::generator::{Family, Generator};
use crate::mono::Mono;
use crate::poly::{write_term, Poly};
use crate::scalar::Coeff;
use std::collections::BTreeMap;
use std::fmt;

/// Conjugation mode: `ComplexX` treats x as independent complex symbols,
/// `HermitianX` imposes (x_{a,bd})* = x_{b,ad}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConjMode {
    ComplexX,
    HermitianX,
}

/// Normal form invariants:
/// - numerator monomials are canonical graded words with merged coefficients
///   and no zero entries;
/// - denominator factors are monic non-constant central polynomials, sorted,
///   with distinct bases and positive powers;
/// - no denominator factor divides the numerator;
/// - zero is the empty numerator with an empty denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperExpr<C: Coeff> {
    num: BTreeMap<Mono, C>,
    den: Vec<(Poly<C>, u32)>,
}

impl<C: Coeff> SuperExpr<C> {
    pub fn zero() -> Self {
        SuperExpr {
            num: BTreeMap::new(),
            den: Vec::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut num = BTreeMap::new();
        if !c.is_zero() {
            num.insert(Mono::one(), c);
        }
        SuperExpr {
            num,
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    pub fn gen(g: Generator) -> Self {
        let mut num = BTreeMap::new();
        num.insert(Mono::gen(g), C::one());
        SuperExpr {
            num,
            den: Vec::new(),
        }
    }

    pub fn from_poly(p: &Poly<C>) -> Self {
        let mut num = BTreeMap::new();
        for (m, c) in p.terms() {
            num.insert(m.clone(), c.clone());
        }
        SuperExpr {
            num,
            den: Vec::new(),
        }
    }

    pub fn from_term(c: C, m: Mono) -> Self {
        let mut num = BTreeMap::new();
        if !c.is_zero() {
            num.insert(m, c);
        }
        SuperExpr {
            num,
            den: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.num.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.num.iter()
    }

    pub fn den_factors(&self) -> &[(Poly<C>, u32)] {
        &self.den
    }

    pub fn has_denominator(&self) -> bool {
        !self.den.is_empty()
    }

    /// The constant value when the expression is a plain scalar.
    pub fn as_constant(&self) -> Option<C> {
        if !self.den.is_empty() {
            return None;
        }
        if self.num.is_empty() {
            return Some(C::zero());
        }
        if self.num.len() == 1 {
            let (m, c) = self.num.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    fn add_num_term(num: &mut BTreeMap<Mono, C>, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match num.entry(m) {
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

    /// Folds a denominator factor in, normalizing it to monic form. Monomial
    /// content splits into one factor per generator so that equal values
    /// built along different routes agree syntactically. The pulled-out unit
    /// divides the numerator so the value is unchanged.
    fn push_den_factor(&mut self, p: Poly<C>, k: u32) {
        assert!(!p.is_zero(), "zero denominator factor");
        if k == 0 {
            return;
        }
        let content = p.mono_content();
        let p = if content.is_one() {
            p
        } else {
            for (g, e) in content.factors() {
                let base = Poly::gen(*g);
                if let Some(entry) = self.den.iter_mut().find(|(q, _)| *q == base) {
                    entry.1 += e * k;
                } else {
                    self.den.push((base, e * k));
                }
            }
            p.div_by_mono(&content)
        };
        if let Some(c) = p.as_constant() {
            let inv = c.inv().expect("nonzero constant").pow_u(k);
            self.scale_in_place(&inv);
            return;
        }
        let (monic, unit) = p.monic();
        let inv = unit.inv().expect("nonzero unit").pow_u(k);
        self.scale_in_place(&inv);
        if let Some(e) = self.den.iter_mut().find(|(q, _)| *q == monic) {
            e.1 += k;
        } else {
            self.den.push((monic, k));
        }
    }

    fn scale_in_place(&mut self, c: &C) {
        if c.is_zero() {
            self.num.clear();
            self.den.clear();
            return;
        }
        for v in self.num.values_mut() {
            *v = v.clone() * c.clone();
        }
    }

    fn mul_num_by_poly(num: &BTreeMap<Mono, C>, p: &Poly<C>) -> BTreeMap<Mono, C> {
        let mut out = BTreeMap::new();
        for (m, c) in num {
            for (pm, pc) in p.terms() {
                // Central factors commute sign-free and never vanish.
                let (mm, sign) = m.mul(pm).expect("central factor");
                debug_assert!(!sign);
                Self::add_num_term(&mut out, mm, c.clone() * pc.clone());
            }
        }
        out
    }

    /// Attempts exact division of the graded numerator by a central
    /// polynomial, grouping terms by their non-central content.
    fn try_div_num(num: &BTreeMap<Mono, C>, p: &Poly<C>) -> Option<BTreeMap<Mono, C>> {
        let mut groups: BTreeMap<Mono, Poly<C>> = BTreeMap::new();
        for (m, c) in num {
            let (central, rest) = m.split_central();
            let entry = groups.entry(rest).or_insert_with(Poly::zero);
            *entry = entry.add(&Poly::from_terms([(central, c.clone())]));
        }
        let mut out = BTreeMap::new();
        for (rest, group) in groups {
            let q = group.try_div_exact(p)?;
            for (qm, qc) in q.terms() {
                let (mm, sign) = rest.mul(qm).expect("central factor");
                debug_assert!(!sign);
                Self::add_num_term(&mut out, mm, qc.clone());
            }
        }
        Some(out)
    }

    fn normalize(&mut self) {
        if self.num.is_empty() {
            self.den.clear();
            return;
        }
        // Merge duplicate factor bases.
        let mut merged: Vec<(Poly<C>, u32)> = Vec::with_capacity(self.den.len());
        for (p, k) in std::mem::take(&mut self.den) {
            if k == 0 {
                continue;
            }
            if let Some(e) = merged.iter_mut().find(|(q, _)| *q == p) {
                e.1 += k;
            } else {
                merged.push((p, k));
            }
        }
        // Cancel factors against the numerator where division is exact.
        for (p, k) in merged.iter_mut() {
            while *k > 0 {
                match Self::try_div_num(&self.num, p) {
                    Some(q) => {
                        self.num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        merged.retain(|(_, k)| *k > 0);
        merged.sort_by_key(|(p, _)| p.sort_key());
        self.den = merged;
        if self.num.is_empty() {
            self.den.clear();
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out;
        if self.den == rhs.den {
            out = SuperExpr {
                num: self.num.clone(),
                den: self.den.clone(),
            };
            for (m, c) in &rhs.num {
                Self::add_num_term(&mut out.num, m.clone(), c.clone());
            }
        } else {
            // Common denominator: factor-wise max of powers.
            let mut common = self.den.clone();
            for (p, k) in &rhs.den {
                if let Some(e) = common.iter_mut().find(|(q, _)| q == p) {
                    e.1 = e.1.max(*k);
                } else {
                    common.push((p.clone(), *k));
                }
            }
            let missing = |den: &[(Poly<C>, u32)]| {
                let mut mult = Poly::one();
                for (p, k) in &common {
                    let have = den
                        .iter()
                        .find(|(q, _)| q == p)
                        .map(|&(_, kk)| kk)
                        .unwrap_or(0);
                    if *k > have {
                        mult = mult.mul(&p.pow(*k - have));
                    }
                }
                mult
            };
            let mut num = Self::mul_num_by_poly(&self.num, &missing(&self.den));
            for (m, c) in Self::mul_num_by_poly(&rhs.num, &missing(&rhs.den)) {
                Self::add_num_term(&mut num, m, c);
            }
            out = SuperExpr { num, den: common };
        }
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        SuperExpr {
            num: self
                .num
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut num = BTreeMap::new();
        for (ma, ca) in &self.num {
            for (mb, cb) in &rhs.num {
                if let Some((m, sign)) = ma.mul(mb) {
                    let c = ca.clone() * cb.clone();
                    Self::add_num_term(&mut num, m, if sign { -c } else { c });
                }
            }
        }
        let mut out = SuperExpr {
            num,
            den: Vec::new(),
        };
        for (p, k) in self.den.iter().chain(rhs.den.iter()) {
            out.push_den_factor(p.clone(), *k);
        }
        out.normalize();
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.clone();
        out.scale_in_place(c);
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a central (even, form-degree-zero) expression.
    pub fn inv_central(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero".into()));
        }
        if !self.num.keys().all(|m| m.is_central()) {
            return Err(Error::ParityMismatch(
                "inverse of a non-central expression".into(),
            ));
        }
        let numer = Poly::from_terms(self.num.iter().map(|(m, c)| (m.clone(), c.clone())));
        let mut den_prod = Poly::one();
        for (p, k) in &self.den {
            den_prod = den_prod.mul(&p.pow(*k));
        }
        let mut out = Self::from_poly(&den_prod);
        out.push_den_factor(numer, 1);
        out.normalize();
        Ok(out)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, Error> {
        Ok(self.mul(&rhs.inv_central()?))
    }

    /// Division by `base^k` keeping `base` as a single denominator factor.
    /// Dividing by an expanded power would store one inflated factor and
    /// defeat pole bookkeeping.
    pub fn div_factor(&self, base: &Self, k: u32) -> Result<Self, Error> {
        Ok(self.mul(&base.inv_central()?.pow(k)))
    }

    /// Graded derivative with respect to a form-degree-zero generator.
    /// The left derivative anticommutes past preceding odd generators.
    pub fn derive(&self, g: &Generator, left: bool) -> Self {
        debug_assert!(!g.form_degree(), "derivative targets have form degree 0");
        let mut parts: Vec<SuperExpr<C>> = Vec::new();
        // Numerator part.
        let mut num = BTreeMap::new();
        for (m, c) in &self.num {
            let e = m.exponent(g);
            if e == 0 {
                continue;
            }
            let sign = if left {
                m.left_sign_to(g)
            } else {
                m.right_sign_to(g)
            };
            let lowered = m.without_one(g).unwrap();
            let c = c.clone() * C::from_int(e as i64);
            Self::add_num_term(&mut num, lowered, if sign { -c } else { c });
        }
        let mut main = SuperExpr {
            num,
            den: self.den.clone(),
        };
        main.normalize();
        parts.push(main);
        // Quotient rule for denominator factors containing g (central only,
        // so no grading signs arise).
        for (i, (p, k)) in self.den.iter().enumerate() {
            let dp = p.derivative(g);
            if dp.is_zero() {
                continue;
            }
            let factor = dp.scale(&C::from_int(-(*k as i64)));
            let mut piece = SuperExpr {
                num: Self::mul_num_by_poly(&self.num, &factor),
                den: Vec::new(),
            };
            for (j, (q, kq)) in self.den.iter().enumerate() {
                piece.push_den_factor(q.clone(), if i == j { kq + 1 } else { *kq });
            }
            piece.normalize();
            parts.push(piece);
        }
        parts
            .into_iter()
            .fold(Self::zero(), |acc, p| acc.add(&p))
    }

    /// Simultaneous substitution followed by normalization.
    ///
    /// Images must be grading-homogeneous and match the replaced generator's
    /// parity and form degree; images of denominator generators must stay
    /// central so division remains defined.
    pub fn substitute(&self, map: &BTreeMap<Generator, SuperExpr<C>>) -> Result<Self, Error> {
        for (g, img) in map {
            for m in img.num.keys() {
                if m.parity() != g.parity() || m.form_degree_parity() != g.form_degree() {
                    return Err(Error::ParityMismatch(format!(
                        "image of {} has terms of the wrong grading",
                        g
                    )));
                }
            }
        }
        let mut total = Self::zero();
        for (m, c) in &self.num {
            let mut acc = Self::constant(c.clone());
            for (g, e) in m.factors() {
                match map.get(g) {
                    None => {
                        acc = acc.mul(&Self::gen(*g).pow(*e));
                    }
                    Some(img) => {
                        acc = acc.mul(&img.pow(*e));
                    }
                }
            }
            total = total.add(&acc);
        }
        for (p, k) in &self.den {
            let touched = p.generators().iter().any(|g| map.contains_key(g));
            if !touched {
                let mut out = total;
                out.push_den_factor(p.clone(), *k);
                out.normalize();
                total = out;
                continue;
            }
            // Evaluate the factor at the images and divide.
            let mut value = Self::zero();
            for (pm, pc) in p.terms() {
                let mut acc = Self::constant(pc.clone());
                for (g, e) in pm.factors() {
                    match map.get(g) {
                        None => acc = acc.mul(&Self::gen(*g).pow(*e)),
                        Some(img) => acc = acc.mul(&img.pow(*e)),
                    }
                }
                value = value.add(&acc);
            }
            if value.is_zero() {
                return Err(Error::DivisionByZero(format!(
                    "denominator factor {} vanishes under substitution",
                    p
                )));
            }
            total = total.mul(&value.inv_central()?.pow(*k));
        }
        Ok(total)
    }

    pub fn substitute_one(&self, g: Generator, image: SuperExpr<C>) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        map.insert(g, image);
        self.substitute(&map)
    }

    /// The star anti-involution: conjugate scalars, map generators to their
    /// conjugates and reverse factor order.
    pub fn conjugate(&self, mode: ConjMode) -> Self {
        let conj_gen = |g: &Generator| match mode {
            ConjMode::ComplexX => g.conjugate(),
            ConjMode::HermitianX => g.conjugate_hermitian(),
        };
        let mut num = BTreeMap::new();
        for (m, c) in &self.num {
            let rev_sign = m.reversal_sign();
            let word: Vec<_> = m
                .factors()
                .iter()
                .map(|(g, e)| (conj_gen(g), *e))
                .collect();
            let (cm, sort_sign) = Mono::from_word(&word).expect("conjugation preserves grading");
            let c = c.conj();
            Self::add_num_term(&mut num, cm, if rev_sign ^ sort_sign { -c } else { c });
        }
        let mut out = SuperExpr {
            num,
            den: Vec::new(),
        };
        for (p, k) in &self.den {
            out.push_den_factor(p.conj(mode == ConjMode::HermitianX), *k);
        }
        out.normalize();
        out
    }

    /// Keeps the terms whose monomial satisfies `pred` (over the shared
    /// denominator).
    pub fn filter_terms(&self, pred: impl Fn(&Mono) -> bool) -> Self {
        let mut out = SuperExpr {
            num: self
                .num
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    /// Keeps terms of the given total degree in the listed families.
    pub fn grade_part(&self, fams: &[Family], degree: u32) -> Self {
        self.filter_terms(|m| m.degree_where(|g| fams.contains(&g.family)) == degree)
    }

    /// Splits into (family word, cofactor) pairs: each term is written as
    /// `word * rest` with the word pulled to the left, and terms sharing the
    /// word are collected.
    pub fn expand_by_families(&self, fams: &[Family]) -> Vec<(Mono, SuperExpr<C>)> {
        let mut groups: BTreeMap<Mono, SuperExpr<C>> = BTreeMap::new();
        for (m, c) in &self.num {
            let word_letters: Vec<_> = m
                .factors()
                .iter()
                .filter(|(g, _)| fams.contains(&g.family))
                .cloned()
                .collect();
            let rest_letters: Vec<_> = m
                .factors()
                .iter()
                .filter(|(g, _)| !fams.contains(&g.family))
                .cloned()
                .collect();
            let (word, s1) = Mono::from_word(&word_letters).unwrap();
            let (rest, s2) = Mono::from_word(&rest_letters).unwrap();
            debug_assert!(!s1 && !s2);
            // m = sign * word * rest, so the cofactor of `word` is sign*c*rest.
            let (recombined, sign) = word.mul(&rest).expect("disjoint letters");
            debug_assert_eq!(&recombined, m);
            let c = if sign { -c.clone() } else { c.clone() };
            let entry = groups.entry(word).or_insert_with(SuperExpr::zero);
            let mut piece = SuperExpr {
                num: BTreeMap::from([(rest, c)]),
                den: self.den.clone(),
            };
            piece.normalize();
            *entry = entry.add(&piece);
        }
        groups.into_iter().filter(|(_, e)| !e.is_zero()).collect()
    }

    /// Coefficient of the exact family word `word` (families inferred from
    /// the word itself must match `fams` content of each term).
    pub fn coefficient_of(&self, fams: &[Family], word: &Mono) -> SuperExpr<C> {
        for (w, c) in self.expand_by_families(fams) {
            if &w == word {
                return c;
            }
        }
        SuperExpr::zero()
    }

    /// Removes a denominator factor wholesale, returning its power. The
    /// remaining expression keeps its normal form.
    pub fn drop_den_factor(&self, base: &Poly<C>) -> Option<(SuperExpr<C>, u32)> {
        let idx = self.den.iter().position(|(p, _)| p == base)?;
        let mut out = self.clone();
        let (_, k) = out.den.remove(idx);
        Some((out, k))
    }

    /// All generators occurring in the expression.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gs: Vec<Generator> = Vec::new();
        for m in self.num.keys() {
            for (g, _) in m.factors() {
                if !gs.contains(g) {
                    gs.push(*g);
                }
            }
        }
        for (p, _) in &self.den {
            for g in p.generators() {
                if !gs.contains(&g) {
                    gs.push(g);
                }
            }
        }
        gs.sort();
        gs
    }

    pub fn contains_family(&self, fam: Family) -> bool {
        self.generators().iter().any(|g| g.family == fam)
    }

    /// Common degree over generators selected by `pred`, counting
    /// denominator factors negatively. Errors when terms or factors mix
    /// degrees.
    pub fn homogeneous_degree_where(
        &self,
        pred: impl Fn(&Generator) -> bool + Copy,
    ) -> Result<i64, Error> {
        let mut den_deg = 0i64;
        for (p, k) in &self.den {
            match p.homogeneous_degree_where(pred) {
                Some(d) => den_deg += d * (*k as i64),
                None => {
                    return Err(Error::MixedHomogeneity(format!(
                        "denominator factor {} is inhomogeneous",
                        p
                    )))
                }
            }
        }
        let mut deg: Option<i64> = None;
        for m in self.num.keys() {
            let d = m.degree_where(pred) as i64 - den_deg;
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::MixedHomogeneity(format!(
                        "terms of degree {} and {}",
                        d0, d
                    )))
                }
                _ => {}
            }
        }
        Ok(deg.unwrap_or(0))
    }
}

impl<C: Coeff> fmt::Display for SuperExpr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return write!(f, "0");
        }
        if !self.den.is_empty() {
            write!(f, "(")?;
        }
        let mut first = true;
        for (m, c) in self.num.iter().rev() {
            write_term(f, m, c, &mut first)?;
        }
        if !self.den.is_empty() {
            write!(f, ")/(")?;
            for (i, (p, k)) in self.den.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                if *k == 1 {
                    write!(f, "({})", p)?;
                } else {
                    write!(f, "({})^{}", p, k)?;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<C: Coeff> std::ops::Add for &SuperExpr<C> {
    type Output = SuperExpr<C>;
    fn add(self, rhs: Self) -> SuperExpr<C> {
        SuperExpr::add(self, rhs)
    }
}

impl<C: Coeff> std::ops::Sub for &SuperExpr<C> {
    type Output = SuperExpr<C>;
    fn sub(self, rhs: Self) -> SuperExpr<C> {
        SuperExpr::sub(self, rhs)
    }
}

impl<C: Coeff> std::ops::Mul for &SuperExpr<C> {
    type Output = SuperExpr<C>;
    fn mul(self, rhs: Self) -> SuperExpr<C> {
        SuperExpr::mul(self, rhs)
    }
}

impl<C: Coeff> std::ops::Neg for &SuperExpr<C> {
    type Output = SuperExpr<C>;
    fn neg(self) -> SuperExpr<C> {
        SuperExpr::neg(self)
    }
}
