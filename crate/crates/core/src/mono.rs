//! Graded monomials: sorted generator words with exponents and the
//! bigraded sign rule (-1)^(p1 p2 + f1 f2) for transpositions.

use crate::generator::Generator;
use std::cmp::Ordering;
use std::fmt;

/// A normalized monomial: generators strictly increasing, exponents
/// positive, self-anticommuting generators with exponent exactly 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<(Generator, u32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn gen(g: Generator) -> Mono {
        Mono(vec![(g, 1)])
    }

    /// Builds from an unsorted word; returns the normalization sign, or
    /// `None` when a self-anticommuting generator repeats (the monomial is
    /// zero).
    pub fn from_word(word: &[(Generator, u32)]) -> Option<(Mono, bool)> {
        let mut m = Mono::one();
        let mut sign = false;
        for &(g, e) in word {
            let (next, s) = m.mul_single(g, e)?;
            m = next;
            sign ^= s;
        }
        Some((m, sign))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn exponent(&self, g: &Generator) -> u32 {
        self.0
            .iter()
            .find(|(h, _)| h == g)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.exponent(g) > 0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn parity(&self) -> bool {
        self.0
            .iter()
            .fold(false, |p, (g, e)| p ^ (g.parity() && e % 2 == 1))
    }

    pub fn form_degree_parity(&self) -> bool {
        self.0
            .iter()
            .fold(false, |p, (g, e)| p ^ (g.form_degree() && e % 2 == 1))
    }

    /// Degree counted over generators selected by `pred`.
    pub fn degree_where(&self, pred: impl Fn(&Generator) -> bool) -> u32 {
        self.0
            .iter()
            .filter(|(g, _)| pred(g))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn is_central(&self) -> bool {
        self.0.iter().all(|(g, _)| g.is_central())
    }

    /// Multiplies by a single generator power, keeping the word sorted.
    /// Returns `None` when the product vanishes.
    pub fn mul_single(&self, g: Generator, e: u32) -> Option<(Mono, bool)> {
        if e == 0 {
            return Some((self.clone(), false));
        }
        if g.self_anticommuting() && e > 1 {
            return None;
        }
        // Sign: move g^e past every factor strictly greater than g.
        let mut sign = false;
        for (h, eh) in &self.0 {
            if *h > g && g.swap_weight(h) {
                sign ^= (e * eh) % 2 == 1;
            }
        }
        let mut out = self.0.clone();
        match out.binary_search_by(|(h, _)| h.cmp(&g)) {
            Ok(i) => {
                if g.self_anticommuting() {
                    return None;
                }
                out[i].1 += e;
            }
            Err(i) => out.insert(i, (g, e)),
        }
        Some((Mono(out), sign))
    }

    /// Graded product. `None` when the product is zero; the bool is the
    /// accumulated sign (true = negative).
    pub fn mul(&self, rhs: &Mono) -> Option<(Mono, bool)> {
        let mut m = self.clone();
        let mut sign = false;
        for &(g, e) in &rhs.0 {
            let (next, s) = m.mul_single(g, e)?;
            m = next;
            sign ^= s;
        }
        Some((m, sign))
    }

    /// Removes one power of `g`; `None` if absent.
    pub fn without_one(&self, g: &Generator) -> Option<Mono> {
        let i = self.0.iter().position(|(h, _)| h == g)?;
        let mut out = self.0.clone();
        if out[i].1 == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Some(Mono(out))
    }

    /// Sign exponent accumulated by moving a derivation of `g`'s grading
    /// from the left edge up to (not across) `g`'s slot.
    pub fn left_sign_to(&self, g: &Generator) -> bool {
        let mut sign = false;
        for (h, e) in &self.0 {
            if h == g {
                break;
            }
            if g.swap_weight(h) {
                sign ^= e % 2 == 1;
            }
        }
        sign
    }

    /// Same as [`left_sign_to`], counting from the right edge.
    pub fn right_sign_to(&self, g: &Generator) -> bool {
        let mut sign = false;
        for (h, e) in self.0.iter().rev() {
            if h == g {
                break;
            }
            if g.swap_weight(h) {
                sign ^= e % 2 == 1;
            }
        }
        sign
    }

    /// Sign of reversing the word, as needed by the conjugation
    /// anti-involution.
    pub fn reversal_sign(&self) -> bool {
        // Count weighted inversions between all unordered pairs, plus
        // internal reversal of each power block g^e: e(e-1)/2 self-swaps.
        let mut sign = false;
        let fs = &self.0;
        for i in 0..fs.len() {
            let (gi, ei) = fs[i];
            if gi.swap_weight(&gi) {
                sign ^= (ei * (ei.saturating_sub(1)) / 2) % 2 == 1;
            }
            for (gj, ej) in fs.iter().skip(i + 1) {
                if gi.swap_weight(gj) {
                    sign ^= (ei * ej) % 2 == 1;
                }
            }
        }
        sign
    }

    /// Splits into (central part, non-central part).
    pub fn split_central(&self) -> (Mono, Mono) {
        let (c, n): (Vec<_>, Vec<_>) = self.0.iter().partition(|(g, _)| g.is_central());
        (Mono(c), Mono(n))
    }

    /// Lexicographic order on exponent vectors over the global generator
    /// order. Compatible with multiplication, unlike the derived `Ord` on
    /// the backing vector.
    pub fn cmp_lex(&self, other: &Mono) -> Ordering {
        let mut i = 0;
        let mut j = 0;
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(ga, ea)), Some(&(gb, eb))) => match ga.cmp(&gb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    /// Exact monomial division: `self / rhs` when every exponent of `rhs`
    /// fits inside `self` (central generators only).
    pub fn try_div(&self, rhs: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(g, e) in &self.0 {
            let mut rem = e;
            if j < rhs.0.len() && rhs.0[j].0 == g {
                if rhs.0[j].1 > e {
                    return None;
                }
                rem = e - rhs.0[j].1;
                j += 1;
            }
            if rem > 0 {
                out.push((g, rem));
            }
        }
        if j < rhs.0.len() {
            return None;
        }
        Some(Mono(out))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_lex(other)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", g)?;
            } else {
                write!(f, "{}^{}", g, e)?;
            }
        }
        Ok(())
    }
}
