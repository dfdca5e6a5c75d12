//! Unsimplified expression trees and their normalization.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::SymError;
use crate::expr::{EvalPoint, Expr};
use crate::frac::Frac;
use crate::monomial::{Mono, Var};
use crate::param::{PMono, Param, PARAMS};
use crate::poly::Poly;
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum RawExpr {
    Num(Q),
    Var(Var),
    R,
    Param(Param),
    Add(Vec<RawExpr>),
    Mul(Vec<RawExpr>),
    Neg(Box<RawExpr>),
    Pow(Box<RawExpr>, u32),
    Div(Box<RawExpr>, Box<RawExpr>),
}

impl RawExpr {
    pub fn int(k: i64) -> RawExpr {
        RawExpr::Num(Q::int(k))
    }

    pub fn x(i: usize) -> RawExpr {
        RawExpr::Var(Var::X(i))
    }

    pub fn p(i: usize) -> RawExpr {
        RawExpr::Var(Var::P(i))
    }

    pub fn pow(self, k: u32) -> RawExpr {
        RawExpr::Pow(Box::new(self), k)
    }

    /// Direct floating-point evaluation of the tree, without normalizing.
    pub fn eval(&self, pt: &EvalPoint) -> Complex64 {
        match self {
            RawExpr::Num(q) => Complex64::new(q.to_f64(), 0.0),
            RawExpr::Var(Var::X(i)) => Complex64::new(pt.x[*i], 0.0),
            RawExpr::Var(Var::P(i)) => Complex64::new(pt.p[*i], 0.0),
            RawExpr::R => Complex64::new(pt.x.iter().map(|v| v * v).sum::<f64>().sqrt(), 0.0),
            RawExpr::Param(Param::I) => Complex64::new(0.0, 1.0),
            RawExpr::Param(p) => Complex64::new(pt.params.get(*p), 0.0),
            RawExpr::Add(xs) => xs.iter().map(|x| x.eval(pt)).sum(),
            RawExpr::Mul(xs) => xs.iter().map(|x| x.eval(pt)).product(),
            RawExpr::Neg(x) => -x.eval(pt),
            RawExpr::Pow(x, k) => x.eval(pt).powi(*k as i32),
            RawExpr::Div(a, b) => a.eval(pt) / b.eval(pt),
        }
    }
}

impl Expr {
    /// Tree form of a canonical expression; normalizing it gives `self` back.
    pub fn to_raw(&self) -> RawExpr {
        let n = self.dim();
        let mut sum = Vec::new();
        for (m, f) in self.channels() {
            let mut fac = Vec::new();
            for (p, e) in PARAMS.iter().map(|p| (*p, m.exp(*p))) {
                if e > 0 {
                    fac.push(RawExpr::Param(p).pow(e as u32));
                }
            }
            let mut num = Vec::new();
            for (mono, q) in f.num().terms() {
                let mut t = vec![RawExpr::Num(q.clone())];
                for i in 0..n {
                    for (v, e) in [(Var::X(i), mono.exp(Var::X(i))), (Var::P(i), mono.exp(Var::P(i)))] {
                        if e > 0 {
                            t.push(RawExpr::Var(v).pow(e as u32));
                        }
                    }
                }
                if mono.r_exp() > 0 {
                    t.push(RawExpr::R);
                }
                num.push(RawExpr::Mul(t));
            }
            let d = f.den();
            let xn = RawExpr::Var(Var::X(n - 1));
            let den = RawExpr::Mul(vec![
                RawExpr::R.pow(d[0] as u32),
                (RawExpr::R + xn.clone()).pow(d[1] as u32),
                (RawExpr::R - xn).pow(d[2] as u32),
            ]);
            fac.push(RawExpr::Add(num) / den);
            sum.push(RawExpr::Mul(fac));
        }
        RawExpr::Add(sum)
    }
}

impl Add for RawExpr {
    type Output = RawExpr;
    fn add(self, o: RawExpr) -> RawExpr {
        RawExpr::Add(vec![self, o])
    }
}

impl Sub for RawExpr {
    type Output = RawExpr;
    fn sub(self, o: RawExpr) -> RawExpr {
        RawExpr::Add(vec![self, RawExpr::Neg(Box::new(o))])
    }
}

impl Mul for RawExpr {
    type Output = RawExpr;
    fn mul(self, o: RawExpr) -> RawExpr {
        RawExpr::Mul(vec![self, o])
    }
}

impl Div for RawExpr {
    type Output = RawExpr;
    fn div(self, o: RawExpr) -> RawExpr {
        RawExpr::Div(Box::new(self), Box::new(o))
    }
}

impl Neg for RawExpr {
    type Output = RawExpr;
    fn neg(self) -> RawExpr {
        RawExpr::Neg(Box::new(self))
    }
}

/// Reduces a raw tree in dimension `n` to canonical form.
pub fn normalize(raw: &RawExpr, n: usize) -> Result<Expr, SymError> {
    Ok(match raw {
        RawExpr::Num(q) => Expr::constant(n, q.clone()),
        RawExpr::Var(v) => {
            if v.index() >= n {
                return Err(SymError::DimensionMismatch { expected: n, got: v.index() + 1 });
            }
            Expr::var(n, *v)
        }
        RawExpr::R => Expr::r(n),
        RawExpr::Param(p) => Expr::param(n, *p),
        RawExpr::Add(xs) => {
            let mut acc = Expr::zero(n);
            for x in xs {
                acc.add_assign(&normalize(x, n)?);
            }
            acc
        }
        RawExpr::Mul(xs) => {
            let mut acc = Expr::int(n, 1);
            for x in xs {
                acc = acc.mul(&normalize(x, n)?);
            }
            acc
        }
        RawExpr::Neg(x) => normalize(x, n)?.neg(),
        RawExpr::Pow(x, k) => normalize(x, n)?.pow(*k),
        RawExpr::Div(a, b) => {
            let num = normalize(a, n)?;
            let inv = invert(&normalize(b, n)?, b)?;
            num.mul(&inv)
        }
    })
}

/// Inverse of `q · i^k · r^a s^b t^c / (r^a' s^b' t^c')`; anything else is rejected.
fn invert(d: &Expr, raw: &RawExpr) -> Result<Expr, SymError> {
    if d.is_zero() {
        return Err(SymError::DivisionByZero);
    }
    let unsupported = || SymError::UnsupportedDenominator(format!("{raw:?}"));
    let mut chans = d.channels();
    let (pm, f) = chans.next().unwrap();
    if chans.next().is_some() {
        return Err(unsupported());
    }
    let (rest, has_i) = pm.without_i();
    if rest != PMono::ONE {
        return Err(unsupported());
    }
    let n = d.dim();
    let mut num = f.num().clone();
    let mut exps = [0u8; 3];
    for (k, factor) in [[1, 0, 0], [0, 1, 0], [0, 0, 1]].into_iter().enumerate() {
        loop {
            let g = Frac::new(num.clone(), factor);
            if g.den() == [0, 0, 0] {
                num = g.num().clone();
                exps[k] += 1;
            } else {
                break;
            }
        }
    }
    if num.len() != 1 || num.terms()[0].0 != Mono::ONE {
        return Err(unsupported());
    }
    let q = num.terms()[0].1.recip();
    let mut inv = Expr::from_frac(PMono::ONE, Frac::new(Poly::constant(n, q), exps));
    inv = inv.mul(&Expr::from_frac(PMono::ONE, Frac::from_poly(crate::frac::den_poly(n, f.den()))));
    if has_i {
        inv = inv.mul_param(Param::I).neg();
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> RawExpr {
        RawExpr::R + RawExpr::x(2)
    }

    #[test]
    fn sphere_identity_vanishes() {
        let e = RawExpr::R.pow(2) - RawExpr::x(0).pow(2) - RawExpr::x(1).pow(2) - RawExpr::x(2).pow(2);
        assert!(normalize(&e, 3).unwrap().is_zero());
    }

    #[test]
    fn combines_over_allowed_denominators() {
        let e = RawExpr::x(2) / (RawExpr::R * s()) + RawExpr::int(1) / s();
        let want = normalize(&(RawExpr::int(1) / RawExpr::R), 3).unwrap();
        assert_eq!(normalize(&e, 3).unwrap(), want);
    }

    #[test]
    fn rejects_foreign_denominator() {
        let e = RawExpr::int(1) / (RawExpr::x(0) + RawExpr::x(1));
        assert!(matches!(normalize(&e, 3), Err(SymError::UnsupportedDenominator(_))));
        let z = RawExpr::int(1) / (RawExpr::x(0) - RawExpr::x(0));
        assert_eq!(normalize(&z, 3), Err(SymError::DivisionByZero));
    }

    #[test]
    fn divides_by_imaginary_unit_and_fractions() {
        let e = RawExpr::int(1) / (RawExpr::Param(Param::I) * RawExpr::int(2) / (RawExpr::R - RawExpr::x(2)));
        let back = normalize(&e, 3).unwrap().mul(&normalize(&(RawExpr::Param(Param::I) * RawExpr::int(2)), 3).unwrap());
        let t = normalize(&(RawExpr::R - RawExpr::x(2)), 3).unwrap();
        assert_eq!(back, t);
    }
}
