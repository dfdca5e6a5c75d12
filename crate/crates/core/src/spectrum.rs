//! Closed-form spectral quantities and the structure-function analysis.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::params::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumConvention {
    /// `m_i = δ_i + I + (N−3)/2`, parabolic energy with the factor `½`, and the
    /// branch of `√(−2E)` that makes each constraint set consistent.
    Reconciled,
    /// Formulas exactly as printed, used for erratum reports.
    AsPrinted,
}

impl SpectrumConvention {
    pub fn name(self) -> &'static str {
        match self {
            SpectrumConvention::Reconciled => "reconciled",
            SpectrumConvention::AsPrinted => "as-printed",
        }
    }
}

impl std::str::FromStr for SpectrumConvention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "reconciled" => Ok(SpectrumConvention::Reconciled),
            "as-printed" => Ok(SpectrumConvention::AsPrinted),
            _ => Err(format!("unknown spectrum convention '{s}' (expected reconciled or as-printed)")),
        }
    }
}

/// `δ = √(k² + 4c/ħ²) − k` with `k = I + (N−3)/2`, evaluated as `4c'/(√(k²+4c') + k)`
/// so that small couplings lose no digits.
fn delta_one(p: &Params, c: f64, index: usize, i: u32) -> Result<f64> {
    let k = i as f64 + p.half_shift();
    let cs = 4.0 * c / (p.hbar * p.hbar);
    let radicand = k * k + cs;
    if radicand < 0.0 {
        return Err(CoreError::FallToCenter { index, radicand });
    }
    let root = radicand.sqrt();
    if cs == 0.0 {
        return Ok(0.0);
    }
    if k + root > 0.0 {
        Ok(cs / (root + k))
    } else {
        Ok(root - k)
    }
}

/// `(δ1, δ2)` for the given `I`.
pub fn delta_pair(p: &Params, i: u32) -> Result<(f64, f64)> {
    Ok((delta_one(p, p.c1, 1, i)?, delta_one(p, p.c2, 2, i)?))
}

/// Separation constant `A = (l + δ̄)(l + δ̄ + N − 2)` with `δ̄ = (δ1+δ2)/2`.
pub fn separation_constant_a(p: &Params, l: u32, i: u32) -> Result<f64> {
    if l < i {
        return Err(CoreError::QuantumNumbers(format!("l = {l} must be at least I = {i}")));
    }
    let (d1, d2) = delta_pair(p, i)?;
    let s = l as f64 + (d1 + d2) / 2.0;
    Ok(s * (s + p.n as f64 - 2.0))
}

/// Effective principal number `n + (δ1+δ2)/2 + (N−3)/2`.
pub fn effective_n(p: &Params, n: u32, i: u32) -> Result<f64> {
    let (d1, d2) = delta_pair(p, i)?;
    Ok(n as f64 + (d1 + d2) / 2.0 + p.half_shift())
}

/// Hyperspherical energy `E_n = −c0²/(2ħ²(n + (δ1+δ2)/2 + (N−3)/2)²)`.
pub fn energy_spherical(p: &Params, n: u32, i: u32) -> Result<f64> {
    if n == 0 {
        return Err(CoreError::QuantumNumbers("principal quantum number starts at 1".into()));
    }
    if n < i + 1 {
        return Err(CoreError::QuantumNumbers(format!("n = {n} must exceed I = {i}")));
    }
    let ne = effective_n(p, n, i)?;
    Ok(-p.c0 * p.c0 / (2.0 * p.hbar * p.hbar * ne * ne))
}

/// Hyperparabolic energy. The printed denominator lacks the factor 2 that makes it
/// agree with the hyperspherical energy under `n = n1 + n2 + I + 1`.
pub fn energy_parabolic(p: &Params, n1: u32, n2: u32, i: u32, conv: SpectrumConvention) -> Result<f64> {
    match conv {
        SpectrumConvention::Reconciled => energy_spherical(p, n1 + n2 + i + 1, i),
        SpectrumConvention::AsPrinted => {
            let (d1, d2) = delta_pair(p, i)?;
            let s = (n1 + n2) as f64 + 0.5 * (d1 + d2 + 2.0 * i as f64 + p.n as f64 - 1.0);
            Ok(-p.c0 * p.c0 / (p.hbar * p.hbar * s * s))
        }
    }
}

/// The two printed expressions for `m_i` and the reconciled value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MValues {
    /// Positive root of `ħ²m² = 16c + (4I(I+N−3) + (N−3)²)ħ²`.
    pub from_square: (f64, f64),
    /// `m = ½(3 − 2I − N − 2δ)`.
    pub from_delta: (f64, f64),
    /// `m = δ + I + (N−3)/2`.
    pub reconciled: (f64, f64),
}

pub fn m_values(p: &Params, i: u32) -> Result<MValues> {
    let (d1, d2) = delta_pair(p, i)?;
    let nf = p.n as f64;
    let fi = i as f64;
    let sq = |c: f64| -> Result<f64> {
        let v = 16.0 * c / (p.hbar * p.hbar) + 4.0 * fi * (fi + nf - 3.0) + (nf - 3.0).powi(2);
        if v < 0.0 {
            return Err(CoreError::FallToCenter { index: 0, radicand: v });
        }
        Ok(v.sqrt())
    };
    let fd = |d: f64| 0.5 * (3.0 - 2.0 * fi - nf - 2.0 * d);
    let rc = |d: f64| d + fi + p.half_shift();
    Ok(MValues { from_square: (sq(p.c1)?, sq(p.c2)?), from_delta: (fd(d1), fd(d2)), reconciled: (rc(d1), rc(d2)) })
}

/// `(m1, m2)` under the chosen convention; as printed means the formula tied to `δ`.
pub fn m_pair(p: &Params, i: u32, conv: SpectrumConvention) -> Result<(f64, f64)> {
    let m = m_values(p, i)?;
    Ok(match conv {
        SpectrumConvention::Reconciled => m.reconciled,
        SpectrumConvention::AsPrinted => m.from_delta,
    })
}

/// `c0 / (ħ √(−2E))`.
pub fn kappa(p: &Params, e: f64) -> Result<f64> {
    if e.is_nan() || e >= 0.0 {
        return Err(CoreError::Domain(format!("energy must be negative, got {e}")));
    }
    Ok(p.c0 / (p.hbar * (-2.0 * e).sqrt()))
}

const PHI_PREFACTOR: f64 = 6291456.0;

/// Roots in `y = x + u` of the factorized structure function.
pub fn phi_roots(m1: f64, m2: f64, kappa: f64) -> [f64; 6] {
    [
        (1.0 - m1 - m2) / 2.0,
        (1.0 - m1 + m2) / 2.0,
        (1.0 + m1 - m2) / 2.0,
        (1.0 + m1 + m2) / 2.0,
        0.5 - kappa,
        0.5 + kappa,
    ]
}

/// Factorized structure function `6291456 E ħ¹⁸ Π (x + u − y_k)`.
pub fn phi_factorized(x: f64, u: f64, e: f64, m1: f64, m2: f64, p: &Params) -> Result<f64> {
    let k = kappa(p, e)?;
    Ok(phi_with_kappa(x, u, e, m1, m2, k, p.hbar))
}

/// Factorized form with an explicit branch for `c0/(ħ√(−2E))`.
pub fn phi_with_kappa(x: f64, u: f64, e: f64, m1: f64, m2: f64, kappa: f64, hbar: f64) -> f64 {
    let y = x + u;
    PHI_PREFACTOR * e * hbar.powi(18) * phi_roots(m1, m2, kappa).iter().map(|r| y - r).product::<f64>()
}

/// Scale used to turn values of the factorized form into relative quantities.
pub fn phi_scale(x: f64, u: f64, e: f64, m1: f64, m2: f64, kappa: f64, hbar: f64) -> f64 {
    let y = x + u;
    PHI_PREFACTOR
        * e.abs()
        * hbar.powi(18)
        * phi_roots(m1, m2, kappa).iter().map(|r| y.abs() + r.abs()).product::<f64>()
}

/// The expanded structure function transcribed term by term, with `H → E`,
/// `J² → ħ² I(I+N−3)` and every `h` read as `ħ`.
pub fn phi_expanded(x: f64, u: f64, e: f64, p: &Params, i: u32) -> f64 {
    let h = p.hbar;
    let (c0, c1, c2) = (p.c0, p.c1, p.c2);
    let nf = p.n as f64;
    let hh = e;
    let fi = i as f64;
    let j2 = h * h * fi * (fi + nf - 3.0);
    let y = x + u;
    let w = -1.0 + 2.0 * y;
    let c02 = c0 * c0;
    let cm = c1 - c2;
    let cp = c1 + c2;
    let g = 2.0 * c02 * h.powi(2) - 8.0 * cp * h.powi(2) * hh - 4.0 * h.powi(2) * hh * j2
        + h.powi(4) * hh * (nf - 1.0).powi(2);
    let t1 = 3145728.0 * c02 * cm * cm * h.powi(12);
    let t2 = -196608.0
        * h.powi(12)
        * (8.0 * c02 * cp * h.powi(2) - 8.0 * cm * cm * h.powi(2) * hh + 4.0 * c02 * h.powi(2) * j2
            - 2.0 * c02 * h.powi(4) * (nf - 3.0)
            + 4.0 * cp * h.powi(4) * hh * (nf - 3.0) * (nf - 1.0)
            + 2.0 * h.powi(4) * hh * j2 * (nf - 3.0) * (nf - 1.0)
            - h.powi(6) * hh * (nf - 3.0) * (nf - 1.0).powi(2))
        * w
        * w;
    let t3 = -1024.0
        * h.powi(4)
        * (-128.0 * h.powi(10) * g
            + 256.0 * h.powi(14) * hh * (nf - 3.0) * (nf - 1.0)
            + 96.0 * h.powi(10) * g * (nf - 3.0) * (nf - 1.0)
            - 96.0 * h.powi(14) * hh * (nf - 3.0).powi(2) * (nf - 1.0).powi(2))
        * w
        * w;
    let t4 = 98304.0 * h.powi(18) * hh * (-3.0 + 2.0 * y) * w.powi(4) * (1.0 + 2.0 * y);
    let t5 = 512.0
        * h.powi(8)
        * (64.0 * h.powi(6) * g - 128.0 * h.powi(10) * hh * (nf - 3.0) * (nf - 1.0))
        * w
        * w
        * (-1.0 - 12.0 * y + 12.0 * y * y);
    t1 + t2 + t3 + t4 + t5
}

/// Coefficients (lowest degree first) of the factorized form as a polynomial in `x`.
pub fn phi_coefficients(u: f64, e: f64, m1: f64, m2: f64, kappa: f64, hbar: f64) -> [f64; 7] {
    let mut c = [0.0; 7];
    c[0] = PHI_PREFACTOR * e * hbar.powi(18);
    for (deg, r) in phi_roots(m1, m2, kappa).into_iter().enumerate() {
        let shift = u - r;
        for k in (0..=deg).rev() {
            c[k + 1] += c[k];
            c[k] *= shift;
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ConstraintSet {
    /// `u = ½ + c0/(ħ√(−2E))`.
    One,
    /// `u = ½ − c0/(ħ√(−2E))`.
    Two,
    /// `u = ½(1 + ε1 m1 + ε2 m2)`.
    Three,
}

impl ConstraintSet {
    pub const ALL: [ConstraintSet; 3] = [ConstraintSet::One, ConstraintSet::Two, ConstraintSet::Three];

    pub fn index(self) -> u8 {
        match self {
            ConstraintSet::One => 1,
            ConstraintSet::Two => 2,
            ConstraintSet::Three => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraicSolution {
    pub set: ConstraintSet,
    pub eps: (i8, i8),
    pub p: u32,
    pub u: f64,
    pub energy: f64,
    pub m: (f64, f64),
    /// Branch of `c0/(ħ√(−2E))` used in the factorized form.
    pub kappa: f64,
    pub convention: SpectrumConvention,
    /// Relative size of `Φ(0)` and `Φ(p+1)`.
    pub boundary: (f64, f64),
    /// `Φ(x) > 0` for every integer `x ∈ [1, p]`.
    pub unitary: bool,
    pub warnings: Vec<String>,
}

/// Tolerance on the relative boundary values of the structure function.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Solves the representation constraints for one set and sign choice.
///
/// Every set shares `E = −2c0²/(ħ²(2 + 2p + ε1m1 + ε2m2)²)`. In the reconciled
/// convention, Set-1 takes the negative branch of `√(−2E)` so that its `u`
/// places the `Φ(p+1)` root on a linear factor; the as-printed convention
/// always takes the principal branch.
pub fn solve_constraint_set(
    params: &Params,
    i: u32,
    p: u32,
    eps: (i8, i8),
    set: ConstraintSet,
    conv: SpectrumConvention,
) -> Result<AlgebraicSolution> {
    let (m1, m2) = m_pair(params, i, conv)?;
    let s = eps.0 as f64 * m1 + eps.1 as f64 * m2;
    let denom = 2.0 + 2.0 * p as f64 + s;
    if denom == 0.0 {
        return Err(CoreError::Domain("constraint denominator vanishes".into()));
    }
    let energy = -2.0 * params.c0 * params.c0 / (params.hbar * params.hbar * denom * denom);
    let principal = kappa(params, energy)?;
    let kappa = match (set, conv) {
        (ConstraintSet::One, SpectrumConvention::Reconciled) => -denom / 2.0,
        (_, SpectrumConvention::Reconciled) => denom / 2.0,
        (_, SpectrumConvention::AsPrinted) => principal,
    };
    let u = match set {
        ConstraintSet::One => 0.5 + kappa,
        ConstraintSet::Two => 0.5 - kappa,
        ConstraintSet::Three => 0.5 * (1.0 + s),
    };
    let rel = |x: f64| {
        let v = phi_with_kappa(x, u, energy, m1, m2, kappa, params.hbar);
        let sc = phi_scale(x, u, energy, m1, m2, kappa, params.hbar);
        if sc == 0.0 {
            0.0
        } else {
            (v / sc).abs()
        }
    };
    let boundary = (rel(0.0), rel(p as f64 + 1.0));
    let unitary = (1..=p).all(|x| phi_with_kappa(x as f64, u, energy, m1, m2, kappa, params.hbar) > 0.0);
    let mut warnings = Vec::new();
    if boundary.0 > BOUNDARY_TOL {
        warnings.push(format!("Phi(0) does not vanish: relative {:.3e}", boundary.0));
    }
    if boundary.1 > BOUNDARY_TOL {
        warnings.push(format!("Phi(p+1) does not vanish: relative {:.3e}", boundary.1));
    }
    if !unitary {
        warnings.push("structure function not positive on 1..=p: non-unitary".into());
    }
    Ok(AlgebraicSolution { set, eps, p, u, energy, m: (m1, m2), kappa, convention: conv, boundary, unitary, warnings })
}

/// All three sets for all four sign choices.
pub fn enumerate_solutions(
    params: &Params,
    i: u32,
    p: u32,
    conv: SpectrumConvention,
) -> Vec<Result<AlgebraicSolution>> {
    let mut out = Vec::new();
    for set in ConstraintSet::ALL {
        for eps in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            out.push(solve_constraint_set(params, i, p, eps, set, conv));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepresentationReport {
    pub phi_zero: f64,
    pub phi_last: f64,
    /// `Φ(x)` for `x = 1..=p`.
    pub interior: Vec<f64>,
    pub positive: bool,
    pub dimension: u32,
    pub degeneracy: u32,
}

/// Number of parabolic states `(n1, n2)` with `n1 + n2 = p`.
pub fn degeneracy(p: u32) -> u32 {
    p + 1
}

pub fn representation_check(sol: &AlgebraicSolution, params: &Params) -> RepresentationReport {
    let (m1, m2) = sol.m;
    let phi = |x: f64| phi_with_kappa(x, sol.u, sol.energy, m1, m2, sol.kappa, params.hbar);
    let interior: Vec<f64> = (1..=sol.p).map(|x| phi(x as f64)).collect();
    RepresentationReport {
        phi_zero: sol.boundary.0,
        phi_last: sol.boundary.1,
        positive: interior.iter().all(|v| *v > 0.0),
        interior,
        dimension: sol.p + 1,
        degeneracy: degeneracy(sol.p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn delta_examples() {
        let p = Params::hydrogen(3).with_couplings(0.1, 0.0);
        let (d1, d2) = delta_pair(&p, 0).unwrap();
        assert!(close(d1, 2.0 * 0.1f64.sqrt(), 1e-15));
        assert_eq!(d2, 0.0);
        assert_eq!(delta_pair(&Params::hydrogen(5), 1).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn delta_small_coupling_is_stable() {
        let p = Params::hydrogen(5).with_couplings(1e-14, 0.0);
        let (d1, _) = delta_pair(&p, 2).unwrap();
        // k = 3, δ ≈ 4c/(2k)
        assert!(close(d1, 4e-14 / 6.0, 1e-10));
    }

    #[test]
    fn fall_to_center_is_reported() {
        let p = Params::hydrogen(3).with_couplings(-1.0, 0.0);
        assert!(matches!(delta_pair(&p, 0), Err(CoreError::FallToCenter { index: 1, .. })));
    }

    #[test]
    fn separation_constant_examples() {
        assert!(close(separation_constant_a(&Params::hydrogen(3), 1, 0).unwrap(), 2.0, 1e-15));
        assert!(close(separation_constant_a(&Params::hydrogen(5), 2, 0).unwrap(), 10.0, 1e-15));
        let a = separation_constant_a(&Params::hydrogen(3).with_couplings(0.1, 0.1), 0, 0).unwrap();
        let d = 2.0 * 0.1f64.sqrt();
        assert!(close(a, d * (d + 1.0), 1e-14));
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy_spherical(&Params::hydrogen(3), 1, 0).unwrap(), -0.5);
        assert_eq!(energy_spherical(&Params::hydrogen(3), 2, 0).unwrap(), -0.125);
        assert_eq!(energy_spherical(&Params::hydrogen(5), 1, 0).unwrap(), -0.125);
        let h = Params::hydrogen(3);
        assert_eq!(energy_parabolic(&h, 0, 0, 0, SpectrumConvention::Reconciled).unwrap(), -0.5);
        assert_eq!(energy_parabolic(&h, 0, 0, 0, SpectrumConvention::AsPrinted).unwrap(), -1.0);
        let p = Params::hydrogen(4).with_couplings(0.1, 0.2);
        assert_eq!(
            energy_parabolic(&p, 1, 0, 1, SpectrumConvention::Reconciled).unwrap(),
            energy_spherical(&p, 3, 1).unwrap()
        );
    }

    #[test]
    fn m_examples() {
        let rc = SpectrumConvention::Reconciled;
        assert_eq!(m_pair(&Params::hydrogen(3), 0, rc).unwrap().0, 0.0);
        let m = m_pair(&Params::hydrogen(3).with_couplings(0.1, 0.0), 0, rc).unwrap().0;
        assert!(close(m, 2.0 * 0.1f64.sqrt(), 1e-15));
        assert_eq!(m_pair(&Params::hydrogen(5), 1, rc).unwrap().0, 2.0);
        let v = m_values(&Params::hydrogen(4).with_couplings(0.3, 0.7), 1).unwrap();
        assert!(close(v.from_square.0, 2.0 * v.reconciled.0, 1e-14));
        assert!(close(v.from_delta.1, -v.reconciled.1, 1e-14));
    }

    #[test]
    fn set_one_hydrogen_ground_state() {
        let s = solve_constraint_set(
            &Params::hydrogen(3),
            0,
            0,
            (1, 1),
            ConstraintSet::One,
            SpectrumConvention::Reconciled,
        )
        .unwrap();
        assert_eq!(s.energy, -0.5);
        assert!(s.warnings.is_empty(), "{:?}", s.warnings);
    }

    #[test]
    fn factorized_phi_vanishes_at_first_root() {
        let p = Params::hydrogen(3).with_couplings(0.1, 0.2);
        let (m1, m2) = m_pair(&p, 0, SpectrumConvention::Reconciled).unwrap();
        let u = 0.3;
        let x = -u + (1.0 - m1 - m2) / 2.0;
        assert_eq!(phi_factorized(x, u, -0.2, m1, m2, &p).unwrap(), 0.0);
    }

    #[test]
    fn coefficients_agree_with_product() {
        let (u, e, m1, m2, k, h) = (0.37, -0.21, 0.6, 0.9, 1.7, 1.1);
        let c = phi_coefficients(u, e, m1, m2, k, h);
        for x in [-1.3, 0.0, 0.4, 2.5] {
            let horner = c.iter().rev().fold(0.0, |acc, v| acc * x + v);
            let direct = phi_with_kappa(x, u, e, m1, m2, k, h);
            assert!(close(horner, direct, 1e-12), "{horner} {direct}");
        }
    }
}
