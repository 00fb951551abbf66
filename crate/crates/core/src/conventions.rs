//! Units and sign conventions, shared by every module.
//!
//! Natural units `ħ = c = 1`. Metric `g = diag(+1, −1, −1, −1)`, so
//! `x_μ = g_{μν} x^ν` and `p_μ = (p_0, −p̄)`. Momentum operators are
//! `p̂^μ = i∂^μ`, which fixes the canonical pairs
//!
//! * `[x¹, p̂¹] = +i` (the symbolic fact `[x1, p1] = i`),
//! * `[p̂₀, x₀] = [i∂/∂t, t] = +i` (the symbolic fact `[p0, t] = i`).
//!
//! In the momentum representation the position operator is `x̂ = i d/dp`,
//! whose eigenfunctions are `e^{−i p x₀}`; position-space amplitudes are
//! `ψ(x) = (2π)^{−1/2} ∫ φ(p) e^{ipx} dp`. The time function `T` is chosen
//! so that `[H, T] = −i`.

/// Metric signature `(+, −, −, −)`.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Lower an index: `x_μ = g_{μν} x^ν`.
pub fn lower(v: [f64; 4]) -> [f64; 4] {
    [
        METRIC[0] * v[0],
        METRIC[1] * v[1],
        METRIC[2] * v[2],
        METRIC[3] * v[3],
    ]
}
