use std::collections::HashMap;
use std::fmt;

use super::{Expr, Generator, OpcalcError};
use crate::exact::ExactComplex;

/// One declared fact about the operator alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `[left, right] = value`
    Commutator {
        left: Generator,
        right: Generator,
        value: Expr,
    },
    /// `{left, right} = value`; with `left == right` this reads `left² = value/2`.
    Anticommutator {
        left: Generator,
        right: Generator,
        value: Expr,
    },
    /// `generator² = value`
    Square { generator: Generator, value: Expr },
    /// `generator := value`, expanded wherever the generator occurs.
    Substitution { generator: Generator, value: Expr },
    /// `[left, right] = 0`
    Commutes { left: Generator, right: Generator },
    /// `∂generator/∂t = value`. Undeclared generators other than `t` are
    /// t-independent.
    TimeDerivative { generator: Generator, value: Expr },
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Commutator { left, right, value } => write!(f, "[{left}, {right}] = {value}"),
            Relation::Anticommutator { left, right, value } => {
                write!(f, "{{{left}, {right}}} = {value}")
            }
            Relation::Square { generator, value } => write!(f, "{generator}^2 = {value}"),
            Relation::Substitution { generator, value } => write!(f, "{generator} := {value}"),
            Relation::Commutes { left, right } => write!(f, "[{left}, {right}] = 0"),
            Relation::TimeDerivative { generator, value } => {
                write!(f, "d{generator}/dt = {value}")
            }
        }
    }
}

/// Rewrite of an adjacent descending pair `a b` into `sign·(b a) + correction`.
#[derive(Clone, Debug)]
pub(crate) struct Reorder {
    pub relation: usize,
    pub negate: bool,
    pub correction: Expr,
}

/// An indexed, immutable collection of relations.
#[derive(Clone, Debug)]
pub struct RuleSet {
    name: String,
    relations: Vec<Relation>,
    reorder: HashMap<(Generator, Generator), Reorder>,
    squares: HashMap<Generator, (usize, Expr)>,
    substitutions: HashMap<Generator, (usize, Expr)>,
    derivatives: HashMap<Generator, (usize, Expr)>,
}

impl RuleSet {
    pub fn empty(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            relations: Vec::new(),
            reorder: HashMap::new(),
            squares: HashMap::new(),
            substitutions: HashMap::new(),
            derivatives: HashMap::new(),
        }
    }

    pub fn new(name: impl Into<String>, relations: Vec<Relation>) -> Result<Self, OpcalcError> {
        relations
            .into_iter()
            .try_fold(Self::empty(name), |rs, r| rs.with(r))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Adds a relation; a second fact about the same pair (or the same
    /// substitution/derivative target) is rejected.
    pub fn with(mut self, relation: Relation) -> Result<Self, OpcalcError> {
        let idx = self.relations.len();
        let conflict = || OpcalcError::ConflictingRelation(relation.to_string());
        match &relation {
            Relation::Commutator { left, right, value } => {
                if left == right {
                    if !value.is_zero() {
                        return Err(OpcalcError::InvalidRelation(relation.to_string()));
                    }
                } else {
                    let (hi, lo, negate_corr) = if left > right {
                        (*left, *right, false)
                    } else {
                        (*right, *left, true)
                    };
                    // hi·lo = lo·hi + [hi, lo]
                    let correction = if negate_corr { -value } else { value.clone() };
                    if self.reorder.contains_key(&(hi, lo)) {
                        return Err(conflict());
                    }
                    self.reorder.insert(
                        (hi, lo),
                        Reorder {
                            relation: idx,
                            negate: false,
                            correction,
                        },
                    );
                }
            }
            Relation::Anticommutator { left, right, value } => {
                if left == right {
                    if self.squares.contains_key(left) {
                        return Err(conflict());
                    }
                    let half = value.scale(&ExactComplex::ratio(1, 2));
                    self.squares.insert(*left, (idx, half));
                } else {
                    let key = if left > right { (*left, *right) } else { (*right, *left) };
                    if self.reorder.contains_key(&key) {
                        return Err(conflict());
                    }
                    self.reorder.insert(
                        key,
                        Reorder {
                            relation: idx,
                            negate: true,
                            correction: value.clone(),
                        },
                    );
                }
            }
            Relation::Square { generator, value } => {
                if self.squares.contains_key(generator) {
                    return Err(conflict());
                }
                self.squares.insert(*generator, (idx, value.clone()));
            }
            Relation::Substitution { generator, value } => {
                if self.substitutions.contains_key(generator) {
                    return Err(conflict());
                }
                self.substitutions.insert(*generator, (idx, value.clone()));
            }
            Relation::Commutes { left, right } => {
                if left != right {
                    let key = if left > right { (*left, *right) } else { (*right, *left) };
                    if self.reorder.contains_key(&key) {
                        return Err(conflict());
                    }
                    self.reorder.insert(
                        key,
                        Reorder {
                            relation: idx,
                            negate: false,
                            correction: Expr::zero(),
                        },
                    );
                }
            }
            Relation::TimeDerivative { generator, value } => {
                if *generator == Generator::Time || self.derivatives.contains_key(generator) {
                    return Err(conflict());
                }
                self.derivatives.insert(*generator, (idx, value.clone()));
            }
        }
        self.relations.push(relation);
        Ok(self)
    }

    pub(crate) fn reorder(&self, hi: Generator, lo: Generator) -> Option<&Reorder> {
        self.reorder.get(&(hi, lo))
    }

    pub(crate) fn square(&self, g: Generator) -> Option<&(usize, Expr)> {
        self.squares.get(&g)
    }

    pub(crate) fn substitution(&self, g: Generator) -> Option<&(usize, Expr)> {
        self.substitutions.get(&g)
    }

    /// `∂g/∂t` as declared: `unit` for `t`, the declared value if any, zero
    /// otherwise.
    pub fn time_derivative_of(&self, g: Generator) -> Expr {
        if g == Generator::Time {
            return Expr::unit();
        }
        self.derivatives
            .get(&g)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Expr::zero)
    }

    /// Canonical relations shared by every rule set of this crate:
    /// `[x1, p1] = i`, `[p0, t] = i`, the commuting pairs among
    /// `t, p0, x1, p1`, the (1+1)D and 3D Clifford relations, `θ¹` commuting
    /// with the variables (but not with the Dirac matrices), and `m` central.
    pub fn canonical() -> Self {
        use Generator::*;
        let mut rels = vec![
            Relation::Commutator {
                left: X1,
                right: P1,
                value: Expr::i(),
            },
            Relation::Commutator {
                left: P0,
                right: Time,
                value: Expr::i(),
            },
        ];
        let variables = [Time, P0, X1, P1];
        for (k, &a) in variables.iter().enumerate() {
            for &b in &variables[k + 1..] {
                if !matches!((a, b), (Time, P0) | (X1, P1)) {
                    rels.push(Relation::Commutes { left: a, right: b });
                }
            }
        }
        let matrices = [Alpha1, Alpha2, Alpha3, Beta];
        for &g in &matrices {
            rels.push(Relation::Square {
                generator: g,
                value: Expr::unit(),
            });
        }
        for (k, &a) in matrices.iter().enumerate() {
            for &b in &matrices[k + 1..] {
                rels.push(Relation::Anticommutator {
                    left: a,
                    right: b,
                    value: Expr::zero(),
                });
            }
        }
        for &mat in matrices.iter().chain([Theta1].iter()) {
            for &v in &variables {
                rels.push(Relation::Commutes { left: v, right: mat });
            }
        }
        for g in Generator::ALL {
            if g != Mass {
                rels.push(Relation::Commutes { left: Mass, right: g });
            }
        }
        Self::new("canonical", rels).expect("canonical relations are consistent")
    }

    /// Canonical relations plus concrete definitions of the composites:
    /// `H := alpha1*p1 + m*beta`, `S01 := (i/2)*alpha1`,
    /// `T := alpha1*x1 - alpha1*theta1`.
    pub fn concrete_dirac() -> Self {
        use Generator::*;
        Self::canonical()
            .with(Relation::Substitution {
                generator: Hamiltonian,
                value: super::identities::dirac_hamiltonian(),
            })
            .and_then(|r| {
                r.with(Relation::Substitution {
                    generator: Spin01,
                    value: super::identities::spin01(),
                })
            })
            .and_then(|r| {
                r.with(Relation::Substitution {
                    generator: TimeFunction,
                    value: super::identities::time_function(),
                })
            })
            .expect("concrete definitions are consistent")
            .renamed("concrete-dirac")
    }

    /// Canonical relations with `H` and `T` kept opaque and related only by
    /// `[H, T] = -i`, `[H, p1] = 0`, `[H, t] = 0` and `dT/dt = 0`.
    pub fn abstract_time_function() -> Self {
        use Generator::*;
        let facts = [
            Relation::Commutator {
                left: Hamiltonian,
                right: TimeFunction,
                value: -Expr::i(),
            },
            Relation::Commutes {
                left: Hamiltonian,
                right: P1,
            },
            Relation::Commutes {
                left: Hamiltonian,
                right: Time,
            },
            Relation::TimeDerivative {
                generator: TimeFunction,
                value: Expr::zero(),
            },
        ];
        facts
            .into_iter()
            .try_fold(Self::canonical(), |rs, r| rs.with(r))
            .expect("abstract facts are consistent")
            .renamed("abstract-time-function")
    }
}
