//! Exact fitting of `target = Σ cⱼ(params) · basisⱼ`.
//!
//! Coefficients are polynomials in the allowed parameters. When the target and
//! basis elements are dimensionally homogeneous, each `cⱼ` ranges only over
//! monomials of the matching weight; otherwise all monomials up to a degree
//! bound are tried.

use std::collections::BTreeMap;

use crate::diffop::DiffOp;
use crate::expr::Expr;
use crate::frac::{max_den, Den, Frac};
use crate::monomial::Mono;
use crate::param::{PMono, Param, ParamCoeff, PARAMS};
use crate::rational::Q;

/// Quantities that can be fitted: canonical expressions and operators.
pub trait Linear: Clone {
    /// Every stored fraction with its operator index (0 for plain expressions) and channel.
    fn flat(&self) -> Vec<(u64, PMono, &Frac)>;
    fn lin_weight(&self) -> Option<(i32, i32)>;
    fn lin_sub(&self, o: &Self) -> Self;
    fn lin_add(&self, o: &Self) -> Self;
    fn lin_scale(&self, c: &ParamCoeff) -> Self;
    fn lin_zero(&self) -> Self;
    fn lin_is_zero(&self) -> bool;
}

impl Linear for Expr {
    fn flat(&self) -> Vec<(u64, PMono, &Frac)> {
        self.ch.iter().map(|(m, f)| (0, *m, f)).collect()
    }
    fn lin_weight(&self) -> Option<(i32, i32)> {
        self.weight()
    }
    fn lin_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn lin_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn lin_scale(&self, c: &ParamCoeff) -> Self {
        self.mul_coeff(c)
    }
    fn lin_zero(&self) -> Self {
        Expr::zero(self.dim())
    }
    fn lin_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Linear for DiffOp {
    fn flat(&self) -> Vec<(u64, PMono, &Frac)> {
        self.terms.iter().flat_map(|(a, e)| e.ch.iter().map(move |(m, f)| (a.0, *m, f))).collect()
    }
    fn lin_weight(&self) -> Option<(i32, i32)> {
        self.weight()
    }
    fn lin_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn lin_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn lin_scale(&self, c: &ParamCoeff) -> Self {
        self.mul_coeff(c)
    }
    fn lin_zero(&self) -> Self {
        DiffOp::zero(self.dim())
    }
    fn lin_is_zero(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct FitOptions {
    pub allowed: Vec<Param>,
    /// Degree bound used when weights are unavailable.
    pub max_degree: u8,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { allowed: vec![Param::Hbar, Param::C0, Param::C1, Param::C2], max_degree: 4 }
    }
}

#[derive(Clone, Debug)]
pub enum FitOutcome<T> {
    /// Unique coefficients; `target − Σ cⱼ bⱼ` was re-checked to be exactly zero.
    Solution { coeffs: Vec<ParamCoeff> },
    /// Coefficients are determined only up to the listed null-space directions.
    Family { particular: Vec<ParamCoeff>, null_space: Vec<Vec<ParamCoeff>> },
    /// No combination reproduces the target; `residual` is what remains after the
    /// best consistent partial fit.
    Failure { partial: Vec<ParamCoeff>, residual: T },
}

impl<T> FitOutcome<T> {
    pub fn coefficients(&self) -> Option<&[ParamCoeff]> {
        match self {
            FitOutcome::Solution { coeffs } => Some(coeffs),
            FitOutcome::Family { particular, .. } => Some(particular),
            FitOutcome::Failure { .. } => None,
        }
    }
}

fn monomials_up_to(allowed: &[Param], deg: u8) -> Vec<PMono> {
    let mut out = vec![PMono::ONE];
    let real: Vec<Param> = allowed.iter().copied().filter(|p| *p != Param::I).collect();
    let mut frontier = vec![PMono::ONE];
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &frontier {
            for p in &real {
                let m2 = m.mul(PMono::param(*p)).0;
                if !out.contains(&m2) && !next.contains(&m2) {
                    next.push(m2);
                }
            }
        }
        out.extend(next.iter().copied());
        frontier = next;
    }
    if allowed.contains(&Param::I) {
        let with_i: Vec<PMono> = out.iter().map(|m| m.mul(PMono::param(Param::I)).0).collect();
        out.extend(with_i);
    }
    out.sort();
    out
}

/// Rows are `[a_0 .. a_{U-1} | rhs]`, kept in reduced echelon form.
struct Echelon {
    u: usize,
    pivots: Vec<(usize, Vec<Q>)>,
    inconsistent: usize,
}

impl Echelon {
    fn push(&mut self, mut row: Vec<Q>) {
        for (c, prow) in &self.pivots {
            if !row[*c].is_zero() {
                let k = row[*c].clone();
                for (x, y) in row.iter_mut().zip(prow) {
                    if !y.is_zero() {
                        *x -= &(&k * y);
                    }
                }
            }
        }
        match (0..self.u).find(|&c| !row[c].is_zero()) {
            None => {
                if !row[self.u].is_zero() {
                    self.inconsistent += 1;
                }
            }
            Some(c) => {
                let inv = row[c].recip();
                for x in row.iter_mut() {
                    *x *= &inv;
                }
                for (_, prow) in self.pivots.iter_mut() {
                    if !prow[c].is_zero() {
                        let k = prow[c].clone();
                        for (x, y) in prow.iter_mut().zip(&row) {
                            if !y.is_zero() {
                                *x -= &(&k * y);
                            }
                        }
                    }
                }
                self.pivots.push((c, row));
            }
        }
    }

    fn particular(&self) -> Vec<Q> {
        let mut x = vec![Q::ZERO; self.u];
        for (c, row) in &self.pivots {
            x[*c] = row[self.u].clone();
        }
        x
    }

    fn null_space(&self) -> Vec<Vec<Q>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|(c, _)| *c).collect();
        let mut out = Vec::new();
        for f in (0..self.u).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![Q::ZERO; self.u];
            v[f] = Q::ONE;
            for (c, row) in &self.pivots {
                v[*c] = -&row[f];
            }
            out.push(v);
        }
        out
    }
}

pub fn fit_linear_combination<T: Linear>(target: &T, basis: &[T], opts: &FitOptions) -> FitOutcome<T> {
    // ansatz monomials for each basis element
    let tw = target.lin_weight();
    let mut unknowns: Vec<(usize, PMono)> = Vec::new();
    for (j, b) in basis.iter().enumerate() {
        let ms = match (tw, b.lin_weight()) {
            (Some(t), Some(w)) => PMono::with_weight(&opts.allowed, (t.0 - w.0, t.1 - w.1)),
            _ => monomials_up_to(&opts.allowed, opts.max_degree),
        };
        unknowns.extend(ms.into_iter().map(|m| (j, m)));
    }
    let u = unknowns.len();
    // contributions per (operator index, channel): (column or rhs, sign, fraction)
    type Key = (u64, PMono);
    let mut contrib: BTreeMap<Key, Vec<(usize, bool, &Frac)>> = BTreeMap::new();
    for (key, m, f) in target.flat() {
        contrib.entry((key, m)).or_default().push((u, false, f));
    }
    let flats: Vec<Vec<(u64, PMono, &Frac)>> = basis.iter().map(|b| b.flat()).collect();
    for (col, (j, nu)) in unknowns.iter().enumerate() {
        for (key, m, f) in &flats[*j] {
            let (mm, neg) = nu.mul(*m);
            contrib.entry((*key, mm)).or_default().push((col, neg, f));
        }
    }
    let mut ech = Echelon { u, pivots: Vec::new(), inconsistent: 0 };
    for list in contrib.values() {
        let d: Den = list.iter().fold([0; 3], |a, (_, _, f)| max_den(a, f.den));
        let mut rows: BTreeMap<Mono, Vec<Q>> = BTreeMap::new();
        for (col, neg, f) in list {
            for (mono, q) in f.num_over(d).terms() {
                let row = rows.entry(*mono).or_insert_with(|| vec![Q::ZERO; u + 1]);
                let v = if *neg { -q } else { q.clone() };
                row[*col] += &v;
            }
        }
        for (_, row) in rows {
            ech.push(row);
        }
    }
    let to_coeffs = |x: &[Q]| -> Vec<ParamCoeff> {
        let mut cs = vec![ParamCoeff::zero(); basis.len()];
        for (k, (j, nu)) in unknowns.iter().enumerate() {
            cs[*j].add_term(*nu, &x[k]);
        }
        cs
    };
    let part = to_coeffs(&ech.particular());
    let combo = basis.iter().zip(&part).fold(target.lin_zero(), |acc, (b, c)| acc.lin_add(&b.lin_scale(c)));
    let residual = target.lin_sub(&combo);
    if ech.inconsistent > 0 || !residual.lin_is_zero() {
        return FitOutcome::Failure { partial: part, residual };
    }
    let null = ech.null_space();
    if null.is_empty() {
        FitOutcome::Solution { coeffs: part }
    } else {
        FitOutcome::Family { particular: part, null_space: null.iter().map(|v| to_coeffs(v)).collect() }
    }
}

/// All parameters except the imaginary unit.
pub fn real_params() -> Vec<Param> {
    PARAMS[1..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::{poisson_bracket, Convention};

    #[test]
    fn recovers_known_combination() {
        let n = 3;
        let a = Expr::x(n, 0).mul(&Expr::p(n, 1));
        let b = Expr::r(n).mul(&Expr::p(n, 0)).mul(&Expr::p(n, 1));
        let c = ParamCoeff::param(Param::C0).scale(&Q::int(3));
        let t = a.mul_coeff(&c).sub(&b.scale_int(2));
        match fit_linear_combination(&t, &[a.clone(), b.clone()], &FitOptions::default()) {
            FitOutcome::Solution { coeffs } => {
                assert_eq!(coeffs[0], c);
                assert_eq!(coeffs[1], ParamCoeff::int(-2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports_failure_with_residual() {
        let n = 3;
        let a = Expr::x(n, 0);
        let t = Expr::x(n, 1);
        match fit_linear_combination(&t, &[a], &FitOptions::default()) {
            FitOutcome::Failure { residual, .. } => assert_eq!(residual, t),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dependent_basis_gives_family() {
        let n = 3;
        let l = Expr::x(n, 0).mul(&Expr::p(n, 1)).sub(&Expr::x(n, 1).mul(&Expr::p(n, 0)));
        let t = poisson_bracket(&l, &Expr::x(n, 0), Convention::Standard);
        let basis = [Expr::x(n, 1), Expr::x(n, 1).scale_int(2)];
        assert!(matches!(fit_linear_combination(&t, &basis, &FitOptions::default()), FitOutcome::Family { .. }));
    }
}
