//! Explicit separated eigenfunctions and their verification against the
//! separated differential equations.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::params::Params;
use crate::quad::Composite;
use crate::special::{hyp1f1, jacobi_p, ln_gamma};
use crate::spectrum::{delta_pair, energy_spherical, separation_constant_a};

/// Jacobi indices of the angular factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngularForm {
    /// `P^{(δ2+I, δ1+I)}`, which solves the angular equation only when `N = 3` or `l = I`.
    AsPrinted,
    /// `P^{(δ2+I+(N−3)/2, δ1+I+(N−3)/2)}`.
    Corrected,
}

/// One sample of `L f` for a separated operator `L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualSample {
    pub point: f64,
    pub residual: f64,
    /// Sum of the magnitudes of the individual operator terms.
    pub scale: f64,
    pub relative: f64,
}

impl ResidualSample {
    fn new(point: f64, terms: &[f64]) -> ResidualSample {
        let residual: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        let relative = if scale == 0.0 { 0.0 } else { residual.abs() / scale };
        ResidualSample { point, residual, scale, relative }
    }
}

/// Fourth-order central differences `(f, f', f'')` at `x` with step `h`.
pub fn derivatives(f: impl Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64, f64) {
    let (m2, m1, z, p1, p2) = (f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h));
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
    (z, d1, d2)
}

/// Number of sign changes of `f` on a uniform grid over `(a, b)`.
pub fn sign_changes(f: impl Fn(f64) -> f64, a: f64, b: f64, points: usize) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for k in 1..points {
        let v = f(a + (b - a) * k as f64 / points as f64);
        if v != 0.0 {
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = v;
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormReport {
    /// `∫|ψ|² dμ` with the constant in use.
    pub squared_norm: f64,
    /// Constant in use (the printed one unless replaced).
    pub constant: f64,
    /// Constant that makes the squared norm one.
    pub computed_constant: f64,
    /// `constant² / computed_constant²`.
    pub ratio: f64,
}

fn norm_report(squared_norm: f64, constant: f64) -> NormReport {
    let computed_constant = constant / squared_norm.sqrt();
    NormReport { squared_norm, constant, computed_constant, ratio: squared_norm }
}

// ---------------------------------------------------------------- angular

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngularSolution {
    pub params: Params,
    pub l: u32,
    pub i: u32,
    pub delta: (f64, f64),
    pub form: AngularForm,
    /// Printed normalization constant.
    pub printed_constant: f64,
    /// Constant used by `eval`.
    pub constant: f64,
}

/// Printed angular normalization constant for non-negative `I`.
fn angular_printed_constant(p: &Params, l: u32, i: u32, d1: f64, d2: f64) -> f64 {
    let nf = p.n as f64;
    let (lf, fi) = (l as f64, i as f64);
    let ln = (2.0 * lf + d1 + d2 + nf - 2.0).ln() + ln_gamma(lf - fi + 1.0) + ln_gamma(lf + fi + d1 + d2 + nf - 2.0)
        - (d1 + d2 + nf - 1.0) * std::f64::consts::LN_2
        - std::f64::consts::PI.ln()
        - ln_gamma(lf + d1 + nf - 2.0)
        - ln_gamma(lf + d2 + nf - 2.0);
    (0.5 * ln).exp() / 2f64.powi(i as i32)
}

pub fn build_angular(p: &Params, l: u32, i: u32, form: AngularForm) -> Result<AngularSolution> {
    if l < i {
        return Err(CoreError::QuantumNumbers(format!("l = {l} must be at least I = {i}")));
    }
    let (d1, d2) = delta_pair(p, i)?;
    let printed_constant = angular_printed_constant(p, l, i, d1, d2);
    Ok(AngularSolution { params: *p, l, i, delta: (d1, d2), form, printed_constant, constant: printed_constant })
}

impl AngularSolution {
    pub fn with_constant(mut self, c: f64) -> AngularSolution {
        self.constant = c;
        self
    }

    /// `(α, β)` of the Jacobi factor.
    pub fn jacobi_indices(&self) -> (f64, f64) {
        let shift = match self.form {
            AngularForm::AsPrinted => 0.0,
            AngularForm::Corrected => self.params.half_shift(),
        };
        let fi = self.i as f64;
        (self.delta.1 + fi + shift, self.delta.0 + fi + shift)
    }

    pub fn eval(&self, phi: f64) -> f64 {
        let z = phi.cos();
        let fi = self.i as f64;
        let (a, b) = self.jacobi_indices();
        self.constant
            * (1.0 + z).powf((self.delta.0 + fi) / 2.0)
            * (1.0 - z).powf((self.delta.1 + fi) / 2.0)
            * jacobi_p(self.l - self.i, a, b, z)
    }

    /// Terms of the angular operator applied to `Θ` at `φ`.
    pub fn residual(&self, phi: f64, h: f64) -> Result<ResidualSample> {
        let p = &self.params;
        let (_, c1, c2) = p.scaled();
        let nf = p.n as f64;
        let fi = self.i as f64;
        let a = separation_constant_a(p, self.l, self.i)?;
        let (t, d1, d2) = derivatives(|x| self.eval(x), phi, h);
        let (s, c) = phi.sin_cos();
        Ok(ResidualSample::new(
            phi,
            &[
                d2,
                (nf - 2.0) * c / s * d1,
                -2.0 * c1 / (1.0 + c) * t,
                -2.0 * c2 / (1.0 - c) * t,
                a * t,
                -fi * (fi + nf - 3.0) / (s * s) * t,
            ],
        ))
    }

    /// `∫_0^π Θ² sin^{N−2}φ dφ`.
    pub fn norm(&self) -> Result<NormReport> {
        let q = Composite::new(24, 64)?;
        let w = self.params.n as i32 - 2;
        let sq = q.integrate_checked(0.0, std::f64::consts::PI, 1e-10, |x| {
            let v = self.eval(x);
            v * v * x.sin().powi(w)
        })?;
        Ok(norm_report(sq, self.constant))
    }
}

// ---------------------------------------------------------------- radial

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialSolution {
    pub params: Params,
    pub n: u32,
    pub l: u32,
    pub i: u32,
    pub delta: (f64, f64),
    /// `ε = 2c0/(ħ²(n + (δ1+δ2)/2 + (N−3)/2))`.
    pub eps: f64,
    pub energy: f64,
    /// Printed constant, with `(−c0')^{3/2}` read as `|c0'|^{3/2}`.
    pub printed_constant: f64,
    pub constant: f64,
}

pub fn build_radial(p: &Params, n: u32, l: u32, i: u32) -> Result<RadialSolution> {
    if n < l + 1 {
        return Err(CoreError::QuantumNumbers(format!("n = {n} must exceed l = {l}")));
    }
    if l < i {
        return Err(CoreError::QuantumNumbers(format!("l = {l} must be at least I = {i}")));
    }
    let (d1, d2) = delta_pair(p, i)?;
    let (c0s, _, _) = p.scaled();
    let nf = p.n as f64;
    let ds = d1 + d2;
    let eps = 2.0 * c0s / (n as f64 + ds / 2.0 + p.half_shift());
    let energy = energy_spherical(p, n, i)?;
    let (nn, ll) = (n as f64, l as f64);
    let ln = (2.0f64).ln() + 1.5 * c0s.abs().ln() - 2.0 * (nn + ds / 2.0).ln() - ln_gamma(2.0 * ll + ds + nf - 1.0)
        + 0.5 * (ln_gamma(nn + ll + ds + nf - 2.0) - ln_gamma(nn - ll));
    let printed_constant = ln.exp();
    Ok(RadialSolution {
        params: *p,
        n,
        l,
        i,
        delta: (d1, d2),
        eps,
        energy,
        printed_constant,
        constant: printed_constant,
    })
}

impl RadialSolution {
    pub fn with_constant(mut self, c: f64) -> RadialSolution {
        self.constant = c;
        self
    }

    /// `l + (δ1+δ2)/2`.
    pub fn big_l(&self) -> f64 {
        self.l as f64 + (self.delta.0 + self.delta.1) / 2.0
    }

    pub fn eval(&self, r: f64) -> f64 {
        let z = self.eps * r;
        let big_l = self.big_l();
        let a = -(self.n as f64) + self.l as f64 + 1.0;
        let b = 2.0 * big_l + self.params.n as f64 - 1.0;
        self.constant * z.powf(big_l) * (-z / 2.0).exp() * hyp1f1(a, b, z).expect("terminating series")
    }

    pub fn residual(&self, r: f64, h: f64) -> Result<ResidualSample> {
        let p = &self.params;
        let (c0s, _, _) = p.scaled();
        let ep = self.energy / (p.hbar * p.hbar);
        let a = separation_constant_a(p, self.l, self.i)?;
        let (f, d1, d2) = derivatives(|x| self.eval(x), r, h);
        Ok(ResidualSample::new(
            r,
            &[d2, (p.n as f64 - 1.0) / r * d1, 2.0 * c0s / r * f, 2.0 * ep * f, -a / (r * r) * f],
        ))
    }

    /// Upper integration limit beyond which the density is negligible.
    pub fn extent(&self) -> f64 {
        (4.0 * self.n as f64 + 2.0 * self.big_l() + self.params.n as f64 + 80.0) / self.eps
    }

    /// `∫_0^∞ R² r^{N−1} dr`.
    pub fn norm(&self) -> Result<NormReport> {
        let q = Composite::new(24, 96)?;
        let w = self.params.n as i32 - 1;
        let sq = q.integrate_checked(0.0, self.extent(), 1e-10, |r| {
            let v = self.eval(r);
            v * v * r.powi(w)
        })?;
        Ok(norm_report(sq, self.constant))
    }

    /// Nodes on `(0, ∞)`, counted on a fine grid.
    pub fn nodes(&self) -> usize {
        sign_changes(|r| self.eval(r), 0.0, self.extent(), 20_000)
    }
}

/// `∫ R_a R_b r^{N−1} dr` for unit-normalized radial functions of equal `l`.
pub fn radial_overlap(a: &RadialSolution, b: &RadialSolution) -> Result<f64> {
    let na = a.norm()?;
    let nb = b.norm()?;
    let a = a.clone().with_constant(na.computed_constant);
    let b = b.clone().with_constant(nb.computed_constant);
    let q = Composite::new(24, 96)?;
    let w = a.params.n as i32 - 1;
    let top = a.extent().max(b.extent());
    Ok(q.integrate(0.0, top, |r| a.eval(r) * b.eval(r) * r.powi(w)))
}

// ---------------------------------------------------------------- parabolic

/// Which relations supply `E'` and the separation constants of the parabolic equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParabolicRelations {
    /// `E' = −ε²/8`, `v_i = (ε/4)(2n_i + δ_i + I + (N−1)/2)` and `v1 + v2 = c0'`.
    Reconciled,
    /// `E' = −ε²`, `v_i = ε(n_i + ½(δ_i + I + (N−1)/2))` and `v2 = −v1 − c0'`.
    AsPrinted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParabolicSolution {
    pub params: Params,
    pub n1: u32,
    pub n2: u32,
    pub i: u32,
    pub delta: (f64, f64),
    /// Scale of the reconciled energy, `ε = 2c0'/(n + (δ1+δ2)/2 + (N−3)/2)`.
    pub eps: f64,
}

pub fn build_parabolic(p: &Params, n1: u32, n2: u32, i: u32) -> Result<ParabolicSolution> {
    let (d1, d2) = delta_pair(p, i)?;
    let (c0s, _, _) = p.scaled();
    let n = (n1 + n2 + i + 1) as f64;
    let eps = 2.0 * c0s / (n + (d1 + d2) / 2.0 + p.half_shift());
    Ok(ParabolicSolution { params: *p, n1, n2, i, delta: (d1, d2), eps })
}

impl ParabolicSolution {
    fn parts(&self, which: usize) -> (u32, f64) {
        match which {
            1 => (self.n1, self.delta.0),
            2 => (self.n2, self.delta.1),
            _ => panic!("parabolic factor index must be 1 or 2"),
        }
    }

    /// Kummer parameter `I + δ_i + (N−1)/2`.
    fn kummer_b(&self, which: usize) -> f64 {
        let (_, d) = self.parts(which);
        self.i as f64 + d + (self.params.n as f64 - 1.0) / 2.0
    }

    /// Printed factor `f_i(t)` including its constant.
    pub fn eval(&self, which: usize, t: f64) -> f64 {
        let (ni, d) = self.parts(which);
        let b = self.kummer_b(which);
        let z = self.eps * t / 2.0;
        let ln_c = -ln_gamma(b) + 0.5 * (ln_gamma(ni as f64 + b) - ln_gamma(ni as f64 + 1.0));
        ln_c.exp()
            * z.powf((self.i as f64 + d) / 2.0)
            * (-self.eps * t / 4.0).exp()
            * hyp1f1(-(ni as f64), b, z).expect("terminating series")
    }

    /// `(E', v_i)` under the chosen relations.
    pub fn constants(&self, which: usize, rel: ParabolicRelations) -> (f64, f64) {
        let (ni, d) = self.parts(which);
        let core = d + self.i as f64 + (self.params.n as f64 - 1.0) / 2.0;
        match rel {
            ParabolicRelations::Reconciled => (-self.eps * self.eps / 8.0, self.eps / 4.0 * (2.0 * ni as f64 + core)),
            ParabolicRelations::AsPrinted => (-self.eps * self.eps, self.eps * (ni as f64 + 0.5 * core)),
        }
    }

    /// `v1 + v2 − c0'` under the chosen relations; zero when the pair is consistent
    /// with the separated equation (with `v2` taken from its own quantum number).
    pub fn separation_mismatch(&self, rel: ParabolicRelations) -> f64 {
        let (c0s, _, _) = self.params.scaled();
        let (_, v1) = self.constants(1, rel);
        let (_, v2) = self.constants(2, rel);
        match rel {
            ParabolicRelations::Reconciled => v1 + v2 - c0s,
            ParabolicRelations::AsPrinted => v2 - (-v1 - c0s),
        }
    }

    /// Residual of `t f'' + (N−1)/2 f' + (E'/2 t − c_i'/t − I(I+N−3)/(4t) + v_i) f`.
    pub fn residual(&self, which: usize, t: f64, h: f64, rel: ParabolicRelations) -> ResidualSample {
        let p = &self.params;
        let (_, c1, c2) = p.scaled();
        let ci = if which == 1 { c1 } else { c2 };
        let nf = p.n as f64;
        let fi = self.i as f64;
        let (ep, v) = self.constants(which, rel);
        let (f, d1, d2) = derivatives(|x| self.eval(which, x), t, h);
        ResidualSample::new(
            t,
            &[
                t * d2,
                (nf - 1.0) / 2.0 * d1,
                ep / 2.0 * t * f,
                -ci / t * f,
                -fi * (fi + nf - 3.0) / (4.0 * t) * f,
                v * f,
            ],
        )
    }

    pub fn nodes(&self, which: usize) -> usize {
        let (ni, _) = self.parts(which);
        let top = (8.0 * ni as f64 + 4.0 * self.kummer_b(which) + 120.0) / self.eps;
        sign_changes(|t| self.eval(which, t), 0.0, top, 20_000)
    }
}
