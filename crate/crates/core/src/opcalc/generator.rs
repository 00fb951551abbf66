use std::fmt;
use std::str::FromStr;

use super::OpcalcError;

/// Letters of the operator alphabet.
///
/// Declaration order is the canonical ordering used inside normalized
/// words: `m < t < p0 < H < T < S01 < x1 < p1 < alpha1 < alpha2 < alpha3 < beta < theta1`.
/// Composites (`H`, `T`, `S01`) sit before the variables they commute with so
/// that declared facts such as `[H, p1] = 0` move them to the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Mass parameter; central.
    Mass,
    /// Coordinate time `t`.
    Time,
    /// Formal energy operator `p0 = i∂/∂t`.
    P0,
    /// Hamiltonian `H`.
    Hamiltonian,
    /// Time function `T`.
    TimeFunction,
    /// Spin tensor component `S01`.
    Spin01,
    X1,
    P1,
    Alpha1,
    Alpha2,
    Alpha3,
    Beta,
    /// Constant matrix `θ¹`.
    Theta1,
}

/// Coarse classification of each generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Parameter,
    ScalarVariable,
    Differential,
    Matrix,
    Composite,
}

impl Generator {
    pub const ALL: [Generator; 13] = [
        Generator::Mass,
        Generator::Time,
        Generator::P0,
        Generator::Hamiltonian,
        Generator::TimeFunction,
        Generator::Spin01,
        Generator::X1,
        Generator::P1,
        Generator::Alpha1,
        Generator::Alpha2,
        Generator::Alpha3,
        Generator::Beta,
        Generator::Theta1,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::Mass => "m",
            Generator::Time => "t",
            Generator::P0 => "p0",
            Generator::Hamiltonian => "H",
            Generator::TimeFunction => "T",
            Generator::Spin01 => "S01",
            Generator::X1 => "x1",
            Generator::P1 => "p1",
            Generator::Alpha1 => "alpha1",
            Generator::Alpha2 => "alpha2",
            Generator::Alpha3 => "alpha3",
            Generator::Beta => "beta",
            Generator::Theta1 => "theta1",
        }
    }

    pub fn grading(self) -> Grading {
        match self {
            Generator::Mass => Grading::Parameter,
            Generator::Time | Generator::X1 => Grading::ScalarVariable,
            Generator::P0 | Generator::P1 => Grading::Differential,
            Generator::Alpha1
            | Generator::Alpha2
            | Generator::Alpha3
            | Generator::Beta
            | Generator::Theta1 => Grading::Matrix,
            Generator::Hamiltonian | Generator::TimeFunction | Generator::Spin01 => {
                Grading::Composite
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Generator {
    type Err = OpcalcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::ALL
            .iter()
            .copied()
            .find(|g| g.symbol() == s)
            .ok_or_else(|| OpcalcError::UnknownGenerator(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_contains_the_fixed_chain() {
        use Generator::*;
        let chain = [Time, X1, P1, Alpha1, Beta, Theta1];
        assert!(chain.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn symbols_round_trip() {
        for g in Generator::ALL {
            assert_eq!(g.symbol().parse::<Generator>().unwrap(), g);
        }
        assert!(matches!(
            "q7".parse::<Generator>(),
            Err(OpcalcError::UnknownGenerator(s)) if s == "q7"
        ));
    }
}
