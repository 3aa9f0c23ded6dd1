//! Generator families: superspace coordinates, spinor parameters, section
//! variables, unit symbols and differentials, with their bigrading and
//! conjugation pairing.

use std::fmt;

/// Dotted/undotted Weyl index kind.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IndexKind {
    Undotted,
    Dotted,
}

/// Upper/lower index position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Position {
    Up,
    Down,
}

/// A single Weyl index: kind, position and component value (1 or 2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WeylIndex {
    pub kind: IndexKind,
    pub pos: Position,
    pub comp: u8,
}

/// How a family carries indices in the expression grammar.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IndexShape {
    None,
    /// One undotted index, stored in the lower position.
    Undotted,
    /// One dotted index, stored in the lower position.
    Dotted,
    /// An (undotted, dotted) pair, both lower (x-like).
    Pair,
}

/// Symbol family. Single-index spinor families are stored with the index
/// down; upper positions are epsilon expansions built by the spinor layer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    Theta,
    ThetaBar,
    /// SUSY variation parameters; the payload distinguishes independent sets.
    Eps(u8),
    EpsBar(u8),
    Nu,
    NuBar,
    NuPrime,
    NuPrimeBar,
    X,
    XBar,
    Y,
    YBar,
    /// Section variable u_alpha of the homogeneous function space.
    U,
    UBar,
    /// theta-twistor ring coordinate l_alpha (independent generator there).
    L,
    LBar,
    /// Affine chart coordinate on the nubar projective line.
    ChartZ,
    ChartZBar,
    /// Exact unit symbols for finite scale/phase maps.
    T,
    TBar,
    Unit(u8),
    UnitBar(u8),
    /// Constant spinor of a null momentum (plane-wave tests).
    Kappa,
    KappaBar,
    /// Generic even scalar symbols a..h.
    Sym(u8),
    DX,
    DXBar,
    DTheta,
    DThetaBar,
}

impl Family {
    /// Total order rank; fixes canonical words, polynomial orders and
    /// printing.
    pub fn rank(self) -> u16 {
        use Family::*;
        match self {
            Theta => 10,
            ThetaBar => 11,
            Eps(k) => 12 + k as u16,
            EpsBar(k) => 15 + k as u16,
            Nu => 20,
            NuBar => 21,
            NuPrime => 22,
            NuPrimeBar => 23,
            X => 30,
            XBar => 31,
            Y => 32,
            YBar => 33,
            U => 40,
            UBar => 41,
            L => 42,
            LBar => 43,
            ChartZ => 50,
            ChartZBar => 51,
            T => 52,
            TBar => 53,
            Unit(k) => 54 + k as u16,
            UnitBar(k) => 58 + k as u16,
            Kappa => 70,
            KappaBar => 71,
            Sym(k) => 80 + k as u16,
            DX => 90,
            DXBar => 91,
            DTheta => 92,
            DThetaBar => 93,
        }
    }

    /// Grassmann parity bit.
    pub fn parity(self) -> bool {
        use Family::*;
        matches!(
            self,
            Theta | ThetaBar | Eps(_) | EpsBar(_) | DTheta | DThetaBar
        )
    }

    /// Form-degree bit.
    pub fn form_degree(self) -> bool {
        use Family::*;
        matches!(self, DX | DXBar | DTheta | DThetaBar)
    }

    pub fn index_shape(self) -> IndexShape {
        use Family::*;
        match self {
            Theta | Eps(_) | Nu | NuPrime | U | L | Kappa | DTheta => IndexShape::Undotted,
            ThetaBar | EpsBar(_) | NuBar | NuPrimeBar | UBar | LBar | KappaBar | DThetaBar => {
                IndexShape::Dotted
            }
            X | XBar | Y | YBar | DX | DXBar => IndexShape::Pair,
            ChartZ | ChartZBar | T | TBar | Unit(_) | UnitBar(_) | Sym(_) => IndexShape::None,
        }
    }

    /// Conjugate family under the star anti-involution.
    pub fn conjugate(self) -> Family {
        use Family::*;
        match self {
            Theta => ThetaBar,
            ThetaBar => Theta,
            Eps(k) => EpsBar(k),
            EpsBar(k) => Eps(k),
            Nu => NuBar,
            NuBar => Nu,
            NuPrime => NuPrimeBar,
            NuPrimeBar => NuPrime,
            X => XBar,
            XBar => X,
            Y => YBar,
            YBar => Y,
            U => UBar,
            UBar => U,
            L => LBar,
            LBar => L,
            ChartZ => ChartZBar,
            ChartZBar => ChartZ,
            T => TBar,
            TBar => T,
            Unit(k) => UnitBar(k),
            UnitBar(k) => Unit(k),
            Kappa => KappaBar,
            KappaBar => Kappa,
            Sym(k) => Sym(k),
            DX => DXBar,
            DXBar => DX,
            DTheta => DThetaBar,
            DThetaBar => DTheta,
        }
    }

    /// Grammar spelling of the family name.
    pub fn grammar_name(self) -> String {
        use Family::*;
        match self {
            Theta => "theta".into(),
            ThetaBar => "thetab".into(),
            Eps(1) => "eps".into(),
            Eps(k) => format!("eps{}", k),
            EpsBar(1) => "epsb".into(),
            EpsBar(k) => format!("epsb{}", k),
            Nu => "nu".into(),
            NuBar => "nub".into(),
            NuPrime => "nup".into(),
            NuPrimeBar => "nupb".into(),
            X => "x".into(),
            XBar => "xb".into(),
            Y => "y".into(),
            YBar => "yb".into(),
            U => "u".into(),
            UBar => "ub".into(),
            L => "l".into(),
            LBar => "lb".into(),
            ChartZ => "z".into(),
            ChartZBar => "zb".into(),
            T => "t".into(),
            TBar => "tb".into(),
            Unit(k) => format!("w{}", k),
            UnitBar(k) => format!("wb{}", k),
            Kappa => "kap".into(),
            KappaBar => "kapb".into(),
            Sym(k) => ((b'a' + k) as char).to_string(),
            DX => "dx".into(),
            DXBar => "dxb".into(),
            DTheta => "dth".into(),
            DThetaBar => "dthb".into(),
        }
    }

    /// Inverse of [`grammar_name`]; `None` for unknown spellings.
    pub fn from_grammar_name(name: &str) -> Option<Family> {
        use Family::*;
        Some(match name {
            "theta" => Theta,
            "thetab" => ThetaBar,
            "eps" => Eps(1),
            "eps2" => Eps(2),
            "eps3" => Eps(3),
            "epsb" => EpsBar(1),
            "epsb2" => EpsBar(2),
            "epsb3" => EpsBar(3),
            "nu" => Nu,
            "nub" => NuBar,
            "nup" => NuPrime,
            "nupb" => NuPrimeBar,
            "x" => X,
            "xb" => XBar,
            "y" => Y,
            "yb" => YBar,
            "u" => U,
            "ub" => UBar,
            "l" => L,
            "lb" => LBar,
            "z" => ChartZ,
            "zb" => ChartZBar,
            "t" => T,
            "tb" => TBar,
            "w1" => Unit(1),
            "w2" => Unit(2),
            "w3" => Unit(3),
            "w4" => Unit(4),
            "wb1" => UnitBar(1),
            "wb2" => UnitBar(2),
            "wb3" => UnitBar(3),
            "wb4" => UnitBar(4),
            "kap" => Kappa,
            "kapb" => KappaBar,
            "dx" => DX,
            "dxb" => DXBar,
            "dth" => DTheta,
            "dthb" => DThetaBar,
            s if s.len() == 1 => {
                let c = s.as_bytes()[0];
                if (b'a'..=b'h').contains(&c) {
                    Sym(c - b'a')
                } else {
                    return None;
                }
            }
            _ => return None,
        })
    }
}

/// A concrete generator: family plus index components.
///
/// `c1` carries the single index (or the undotted slot of a pair), `c2` the
/// dotted slot of a pair; unused slots are zero. `(family, c1, c2)` uniquely
/// identifies the generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    pub family: Family,
    pub c1: u8,
    pub c2: u8,
}

impl Generator {
    pub fn scalar_sym(family: Family) -> Generator {
        debug_assert_eq!(family.index_shape(), IndexShape::None);
        Generator { family, c1: 0, c2: 0 }
    }

    pub fn indexed(family: Family, comp: u8) -> Generator {
        debug_assert!(matches!(
            family.index_shape(),
            IndexShape::Undotted | IndexShape::Dotted
        ));
        debug_assert!(comp == 1 || comp == 2);
        Generator { family, c1: comp, c2: 0 }
    }

    pub fn pair(family: Family, undotted: u8, dotted: u8) -> Generator {
        debug_assert_eq!(family.index_shape(), IndexShape::Pair);
        debug_assert!(undotted == 1 || undotted == 2);
        debug_assert!(dotted == 1 || dotted == 2);
        Generator {
            family,
            c1: undotted,
            c2: dotted,
        }
    }

    pub fn parity(&self) -> bool {
        self.family.parity()
    }

    pub fn form_degree(&self) -> bool {
        self.family.form_degree()
    }

    /// A generator anticommutes with itself iff parity + form degree is odd;
    /// such generators square to zero.
    pub fn self_anticommuting(&self) -> bool {
        self.parity() ^ self.form_degree()
    }

    /// Central generators (even parity, form degree 0) may appear in
    /// denominators and commute with everything.
    pub fn is_central(&self) -> bool {
        !self.parity() && !self.form_degree()
    }

    /// The sign exponent for swapping `self` past `other`.
    pub fn swap_weight(&self, other: &Generator) -> bool {
        (self.parity() && other.parity()) ^ (self.form_degree() && other.form_degree())
    }

    /// Conjugate generator; pair families transpose their components.
    pub fn conjugate(&self) -> Generator {
        let fam = self.family.conjugate();
        if self.family.index_shape() == IndexShape::Pair {
            Generator {
                family: fam,
                c1: self.c2,
                c2: self.c1,
            }
        } else {
            Generator {
                family: fam,
                c1: self.c1,
                c2: self.c2,
            }
        }
    }

    /// Conjugate in hermitian-x mode: x and dx map to themselves with the
    /// index pair transposed.
    pub fn conjugate_hermitian(&self) -> Generator {
        match self.family {
            Family::X | Family::DX => Generator {
                family: self.family,
                c1: self.c2,
                c2: self.c1,
            },
            _ => self.conjugate(),
        }
    }

    pub fn sort_key(&self) -> (u16, u8, u8) {
        (self.family.rank(), self.c1, self.c2)
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.family.grammar_name();
        match self.family.index_shape() {
            IndexShape::None => write!(f, "{}", name),
            IndexShape::Undotted => write!(f, "{}_{}", name, self.c1),
            IndexShape::Dotted => write!(f, "{}_d{}", name, self.c1),
            IndexShape::Pair => write!(f, "{}_{}d{}", name, self.c1, self.c2),
        }
    }
}
