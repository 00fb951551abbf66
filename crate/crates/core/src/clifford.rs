//! Exact 2×2 Dirac matrices for the (1+1)-dimensional free Dirac model.
//!
//! The representation is fixed: `β = diag(1, −1)` and `α₁ = [[0, 1], [1, 0]]`.
//! Derived matrices follow from it: `γ⁰ = β`, `γ¹ = βα₁` and
//! `S⁰¹ = (i/4)[γ⁰, γ¹] = (i/2)α₁`.

use std::fmt;

use crate::exact::ExactComplex;

/// Names for the matrices the crate builds directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixLabel {
    Alpha1,
    Beta,
    Gamma0,
    Gamma1,
    Spin01,
    Identity,
    Zero,
}

/// A 2×2 matrix of exact complex entries. Equality compares entries only.
#[derive(Clone, Debug)]
pub struct DiracMatrix {
    pub entries: [[ExactComplex; 2]; 2],
    pub label: Option<MatrixLabel>,
}

impl PartialEq for DiracMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for DiracMatrix {}

/// The fixed pair of Clifford generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub alpha1: DiracMatrix,
    pub beta: DiracMatrix,
}

impl DiracMatrix {
    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        let e = |r: usize, c: usize| ExactComplex::from_int(m[r][c]);
        Self {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            label: None,
        }
    }

    fn labelled(mut self, label: MatrixLabel) -> Self {
        self.label = Some(label);
        self
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0], [0, 1]]).labelled(MatrixLabel::Identity)
    }

    pub fn zero() -> Self {
        Self::from_ints([[0, 0], [0, 0]]).labelled(MatrixLabel::Zero)
    }

    pub fn alpha1() -> Self {
        Self::from_ints([[0, 1], [1, 0]]).labelled(MatrixLabel::Alpha1)
    }

    pub fn beta() -> Self {
        Self::from_ints([[1, 0], [0, -1]]).labelled(MatrixLabel::Beta)
    }

    pub fn gamma0() -> Self {
        Self::beta().labelled(MatrixLabel::Gamma0)
    }

    pub fn gamma1() -> Self {
        mat_product(&Self::beta(), &Self::alpha1()).labelled(MatrixLabel::Gamma1)
    }

    /// `S⁰¹ = (i/4)[γ⁰, γ¹]`.
    pub fn spin01() -> Self {
        let quarter_i = ExactComplex::ratio(1, 4) * ExactComplex::i();
        mat_commutator(&Self::gamma0(), &Self::gamma1())
            .scale(&quarter_i)
            .labelled(MatrixLabel::Spin01)
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        let e = |r: usize, k: usize| c * &self.entries[r][k];
        Self {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            label: None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = |r: usize, k: usize| &self.entries[r][k] + &other.entries[r][k];
        Self {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            label: None,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&ExactComplex::from_int(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(ExactComplex::is_zero)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let e = |r: usize, k: usize| self.entries[k][r].conj();
        Self {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            label: None,
        }
    }
}

impl fmt::Display for DiracMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

pub fn make_representation() -> Representation {
    Representation {
        alpha1: DiracMatrix::alpha1(),
        beta: DiracMatrix::beta(),
    }
}

pub fn mat_product(a: &DiracMatrix, b: &DiracMatrix) -> DiracMatrix {
    let e = |r: usize, c: usize| {
        &(&a.entries[r][0] * &b.entries[0][c]) + &(&a.entries[r][1] * &b.entries[1][c])
    };
    DiracMatrix {
        entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        label: None,
    }
}

/// `ab − ba`
pub fn mat_commutator(a: &DiracMatrix, b: &DiracMatrix) -> DiracMatrix {
    mat_product(a, b).sub(&mat_product(b, a))
}

/// `ab + ba`
pub fn mat_anticommutator(a: &DiracMatrix, b: &DiracMatrix) -> DiracMatrix {
    mat_product(a, b).add(&mat_product(b, a))
}

/// `H(p) = p·α₁ + m·β`.
pub fn hamiltonian(p: &ExactComplex, m: &ExactComplex) -> DiracMatrix {
    DiracMatrix::alpha1().scale(p).add(&DiracMatrix::beta().scale(m))
}
