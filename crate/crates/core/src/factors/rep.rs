//! Formal representations that appear inside factor tokens.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use crate::arithmetic::{hilbert, LocalField, QuadraticCharacter, Sign, SquareClass};
use crate::error::Result;
use crate::parameters::{Parameter, SdType, Summand, SummandId};

/// An irreducible building block, or the exterior square of a product of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Atom {
        base: String,
        dim: u32,
        sd: SdType,
        /// Determinant class of the untwisted atom; trivial unless orthogonal.
        det_base: SquareClass,
        /// Only meaningful for non-self-dual atoms.
        dual: bool,
    },
    /// Exterior square. The inner monomial carries no twist since a quadratic twist
    /// squares away.
    Wedge2(Box<Mono>),
}

/// A tensor product of factors and one quadratic character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub factors: Vec<Factor>,
    pub twist: SquareClass,
}

/// Determinant of a monomial: a square class times formal signs omega_B attached to
/// non-self-dual atoms, recorded with their parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Det {
    pub class: SquareClass,
    pub formal: BTreeMap<String, u64>,
}

impl Det {
    fn unit(field: LocalField) -> Det {
        Det { class: field.one(), formal: BTreeMap::new() }
    }

    fn pow(&self, e: u64) -> Det {
        let formal = self.formal.iter().map(|(k, v)| (k.clone(), v * e % 2)).filter(|(_, v)| *v == 1).collect();
        Det { class: self.class.pow(e), formal }
    }

    fn times(&self, other: &Det) -> Det {
        let mut formal = self.formal.clone();
        for (k, v) in &other.formal {
            let slot = formal.entry(k.clone()).or_insert(0);
            *slot = (*slot + v) % 2;
        }
        formal.retain(|_, v| *v == 1);
        Det { class: self.class * other.class, formal }
    }

    /// Value at -1: a sign and the formal omega_B(-1) factors that remain.
    pub fn at_minus_one(&self) -> Result<(Sign, Vec<String>)> {
        let field = self.class.field();
        let s = hilbert(field.minus_one(), self.class)?;
        Ok((s, self.formal.keys().cloned().collect()))
    }
}

impl Factor {
    pub fn dim(&self) -> u64 {
        match self {
            Factor::Atom { dim, .. } => *dim as u64,
            Factor::Wedge2(m) => {
                let n = m.dim();
                n * n.saturating_sub(1) / 2
            }
        }
    }

    pub fn dual(&self) -> Factor {
        match self {
            Factor::Atom { base, dim, sd, det_base, dual } => Factor::Atom {
                base: base.clone(),
                dim: *dim,
                sd: *sd,
                det_base: *det_base,
                dual: *dual ^ (*sd == SdType::NonSelfDualPair),
            },
            Factor::Wedge2(m) => Factor::Wedge2(Box::new(m.dual())),
        }
    }

    fn det(&self, field: LocalField) -> Det {
        match self {
            Factor::Atom { sd: SdType::Orthogonal, det_base, .. } => {
                Det { class: *det_base, formal: BTreeMap::new() }
            }
            Factor::Atom { sd: SdType::Symplectic, .. } => Det::unit(field),
            Factor::Atom { base, .. } => Det { class: field.one(), formal: BTreeMap::from([(base.clone(), 1)]) },
            Factor::Wedge2(m) => m.det().pow(m.dim().saturating_sub(1)),
        }
    }
}

impl Mono {
    /// The quadratic character (., c).
    pub fn character(c: SquareClass) -> Mono {
        Mono { factors: Vec::new(), twist: c }
    }

    pub fn field(&self) -> LocalField {
        self.twist.field()
    }

    pub fn dim(&self) -> u64 {
        self.factors.iter().map(Factor::dim).product()
    }

    pub fn tensor(&self, other: &Mono) -> Mono {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        factors.sort();
        Mono { factors, twist: self.twist * other.twist }
    }

    pub fn twisted(&self, chi: QuadraticCharacter) -> Mono {
        Mono { factors: self.factors.clone(), twist: self.twist * chi.d }
    }

    pub fn dual(&self) -> Mono {
        let mut factors: Vec<Factor> = self.factors.iter().map(Factor::dual).collect();
        factors.sort();
        Mono { factors, twist: self.twist }
    }

    /// Exterior square, with the twist dropped.
    pub fn wedge2(&self) -> Mono {
        let inner = Mono { factors: self.factors.clone(), twist: self.field().one() };
        Mono { factors: vec![Factor::Wedge2(Box::new(inner))], twist: self.field().one() }
    }

    pub fn det(&self) -> Det {
        let field = self.field();
        let dims: Vec<u64> = self.factors.iter().map(Factor::dim).collect();
        let mut det = Det { class: self.twist.pow(self.dim()), formal: BTreeMap::new() };
        for (i, f) in self.factors.iter().enumerate() {
            let others: u64 = dims.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, d)| *d).product();
            det = det.times(&f.det(field).pow(others));
        }
        det
    }

    /// Monomials of a summand: one, or two for a non-self-dual pair.
    pub fn of_summand(s: &Summand) -> Vec<Mono> {
        let field = s.det().field();
        match s.id() {
            SummandId::Char(c) => vec![Mono::character(*c)],
            SummandId::Named { base, twist } => {
                let det_base = match s.sd_type() {
                    SdType::Orthogonal => s.det() * twist.pow(s.dim() as u64),
                    _ => field.one(),
                };
                let atom = |dual| Factor::Atom { base: base.clone(), dim: s.dim(), sd: s.sd_type(), det_base, dual };
                let mono = |dual| Mono { factors: vec![atom(dual)], twist: *twist };
                match s.sd_type() {
                    SdType::NonSelfDualPair => vec![mono(false), mono(true)],
                    _ => vec![mono(false)],
                }
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Atom { base, dual: true, .. } => write!(f, "{base}^v"),
            Factor::Atom { base, .. } => f.write_str(base),
            Factor::Wedge2(m) => write!(f, "wedge2({m})"),
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        if !self.twist.is_one() || parts.is_empty() {
            parts.push(format!("chi({})", self.twist));
        }
        f.write_str(&parts.join(" (x) "))
    }
}

/// A formal sum of shifted monomials with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSum {
    pub field: LocalField,
    pub items: Vec<(Mono, Rational64, u32)>,
}

impl RepSum {
    pub fn empty(field: LocalField) -> RepSum {
        RepSum { field, items: Vec::new() }
    }

    pub fn single(mono: Mono) -> RepSum {
        RepSum { field: mono.field(), items: vec![(mono, Rational64::from_integer(0), 1)] }
    }

    pub fn of_parameter(phi: &Parameter) -> RepSum {
        let mut items = Vec::new();
        for t in phi.terms() {
            for m in Mono::of_summand(&t.summand) {
                items.push((m, t.shift, t.mult));
            }
        }
        RepSum { field: phi.field(), items }
    }

    /// The exterior square of `mono`, empty when `mono` is a character.
    pub fn wedge2(mono: &Mono) -> RepSum {
        if mono.dim() < 2 {
            RepSum::empty(mono.field())
        } else {
            RepSum::single(mono.wedge2())
        }
    }

    pub fn of_summand(s: &Summand) -> RepSum {
        let zero = Rational64::from_integer(0);
        RepSum { field: s.det().field(), items: Mono::of_summand(s).into_iter().map(|m| (m, zero, 1)).collect() }
    }

    pub fn dual(&self) -> RepSum {
        RepSum { field: self.field, items: self.items.iter().map(|(m, s, k)| (m.dual(), -*s, *k)).collect() }
    }

    pub fn twisted(&self, chi: QuadraticCharacter) -> RepSum {
        RepSum { field: self.field, items: self.items.iter().map(|(m, s, k)| (m.twisted(chi), *s, *k)).collect() }
    }

    pub fn tensor(&self, other: &RepSum) -> RepSum {
        let mut items = Vec::new();
        for (a, s, k) in &self.items {
            for (b, t, l) in &other.items {
                items.push((a.tensor(b), s + t, k * l));
            }
        }
        RepSum { field: self.field, items }
    }
}
