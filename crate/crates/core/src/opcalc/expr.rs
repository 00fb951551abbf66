use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::Generator;
use crate::exact::ExactComplex;

/// A finite product of generators. The empty word is the identity operator.
///
/// Words are ordered by length first, then lexicographically in the
/// canonical generator order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.0.contains(&g)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("unit");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A formal sum of words with exact complex coefficients.
///
/// Zero coefficients are never stored, so the zero operator is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expr {
    terms: BTreeMap<Word, ExactComplex>,
}

impl Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::scalar(ExactComplex::one())
    }

    pub fn scalar(c: ExactComplex) -> Self {
        Self::term(Word::unit(), c)
    }

    pub fn i() -> Self {
        Self::scalar(ExactComplex::i())
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(ExactComplex::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::scalar(ExactComplex::ratio(num, den))
    }

    pub fn gen(g: Generator) -> Self {
        Self::term(Word(vec![g]), ExactComplex::one())
    }

    /// Product of the given generators in order, coefficient 1.
    pub fn product(gs: &[Generator]) -> Self {
        Self::term(Word(gs.to_vec()), ExactComplex::one())
    }

    pub fn term(word: Word, coeff: ExactComplex) -> Self {
        let mut e = Self::zero();
        e.add_term(word, &coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &Word) -> ExactComplex {
        self.terms.get(word).cloned().unwrap_or_else(ExactComplex::zero)
    }

    /// True when some word of the expression contains `g`.
    pub fn mentions(&self, g: Generator) -> bool {
        self.terms.keys().any(|w| w.contains(g))
    }

    /// Adds `coeff·word`, dropping the entry if it cancels.
    pub fn add_term(&mut self, word: Word, coeff: &ExactComplex) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff.clone());
            }
        }
    }

    pub fn scale(&self, c: &ExactComplex) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Removes and returns the smallest term.
    pub(crate) fn pop_first(&mut self) -> Option<(Word, ExactComplex)> {
        self.terms.pop_first()
    }

    pub fn pow(&self, n: u32) -> Expr {
        (0..n).fold(Expr::unit(), |acc, _| &acc * self)
    }

    /// `ab − ba` in the free algebra, without any relations applied.
    pub fn raw_commutator(a: &Expr, b: &Expr) -> Expr {
        &(a * b) - &(b * a)
    }

    /// `ab + ba` in the free algebra.
    pub fn raw_anticommutator(a: &Expr, b: &Expr) -> Expr {
        &(a * b) + &(b * a)
    }
}

impl From<Generator> for Expr {
    fn from(g: Generator) -> Self {
        Expr::gen(g)
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (wa, ca) in self.terms() {
            for (wb, cb) in rhs.terms() {
                out.add_term(wa.concat(wb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&ExactComplex::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

/// Sign-split form of a coefficient for printing: `(negative, magnitude text)`.
fn split_sign(c: &ExactComplex) -> (bool, ExactComplex) {
    let purely_real_neg = c.im.is_zero() && c.re.is_negative();
    let purely_imag_neg = c.re.is_zero() && c.im.is_negative();
    if purely_real_neg || purely_imag_neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (word, coeff)) in self.terms.iter().enumerate() {
            let (negative, mag) = split_sign(coeff);
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if word.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "{mag}*{word}")?;
            }
        }
        Ok(())
    }
}
