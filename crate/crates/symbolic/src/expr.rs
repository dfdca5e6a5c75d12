//! Canonical expressions: a parameter monomial attached to each reduced fraction.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::SymError;
use crate::frac::{den_string, max_den, Den, Frac};
use crate::monomial::{Mono, Var};
use crate::param::{PMono, Param, ParamCoeff, ParamValues};
use crate::poly::Poly;
use crate::rational::Q;

/// Canonical element of `C[params] ⊗ Q[x, p, r]/(r² − Σx²)[1/r, 1/s, 1/t]`.
///
/// Two expressions are mathematically equal iff they compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    pub(crate) n: u8,
    pub(crate) ch: BTreeMap<PMono, Frac>,
}

pub type CanonicalExpr = Expr;

impl Expr {
    pub fn zero(n: usize) -> Expr {
        Expr { n: n as u8, ch: BTreeMap::new() }
    }

    pub fn from_frac(pm: PMono, f: Frac) -> Expr {
        let mut e = Expr::zero(f.dim());
        if !f.is_zero() {
            e.ch.insert(pm, f);
        }
        e
    }

    pub fn from_poly(p: Poly) -> Expr {
        Expr::from_frac(PMono::ONE, Frac::from_poly(p))
    }

    pub fn constant(n: usize, q: Q) -> Expr {
        Expr::from_poly(Poly::constant(n, q))
    }

    pub fn int(n: usize, k: i64) -> Expr {
        Expr::constant(n, Q::int(k))
    }

    pub fn var(n: usize, v: Var) -> Expr {
        assert!(v.index() < n, "variable out of range");
        Expr::from_poly(Poly::var(n, v))
    }

    pub fn x(n: usize, i: usize) -> Expr {
        Expr::var(n, Var::X(i))
    }

    pub fn p(n: usize, i: usize) -> Expr {
        Expr::var(n, Var::P(i))
    }

    pub fn r(n: usize) -> Expr {
        Expr::from_poly(Poly::r(n))
    }

    /// `1 / (r^a (r+x_N)^b (r−x_N)^c)`.
    pub fn inv_den(n: usize, d: Den) -> Expr {
        Expr::from_frac(PMono::ONE, Frac::new(Poly::constant(n, Q::ONE), d))
    }

    pub fn param(n: usize, p: Param) -> Expr {
        Expr::from_frac(PMono::param(p), Frac::from_poly(Poly::constant(n, Q::ONE)))
    }

    pub fn coeff(n: usize, c: &ParamCoeff) -> Expr {
        Expr::constant(n, Q::ONE).mul_coeff(c)
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn is_zero(&self) -> bool {
        self.ch.is_empty()
    }

    pub fn channels(&self) -> impl Iterator<Item = (&PMono, &Frac)> {
        self.ch.iter()
    }

    pub fn term_count(&self) -> usize {
        self.ch.values().map(|f| f.num.len()).sum()
    }

    pub fn is_position_only(&self) -> bool {
        self.ch.values().all(|f| !f.num.has_momentum())
    }

    fn add_frac(&mut self, pm: PMono, f: Frac) {
        if f.is_zero() {
            return;
        }
        match self.ch.remove(&pm) {
            None => {
                self.ch.insert(pm, f);
            }
            Some(g) => {
                let s = g.add(&f);
                if !s.is_zero() {
                    self.ch.insert(pm, s);
                }
            }
        }
    }

    pub fn add(&self, o: &Expr) -> Expr {
        let mut r = self.clone();
        r.n = r.n.max(o.n);
        for (pm, f) in &o.ch {
            r.add_frac(*pm, f.clone());
        }
        r
    }

    pub fn add_assign(&mut self, o: &Expr) {
        self.n = self.n.max(o.n);
        for (pm, f) in &o.ch {
            self.add_frac(*pm, f.clone());
        }
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Expr {
        Expr { n: self.n, ch: self.ch.iter().map(|(m, f)| (*m, f.neg())).collect() }
    }

    pub fn scale(&self, k: &Q) -> Expr {
        if k.is_zero() {
            return Expr::zero(self.dim());
        }
        Expr { n: self.n, ch: self.ch.iter().map(|(m, f)| (*m, f.scale(k))).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Expr {
        self.scale(&Q::int(k))
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        let mut acc = ExprAcc::new(self.dim().max(o.dim()));
        acc.add_product(self, o, &Q::ONE);
        acc.finish()
    }

    pub fn mul_coeff(&self, c: &ParamCoeff) -> Expr {
        let mut acc: BTreeMap<PMono, Vec<Frac>> = BTreeMap::new();
        for (m1, f1) in &self.ch {
            for (m2, q) in c.terms() {
                let (m, neg) = m1.mul(*m2);
                let k = if neg { -q } else { q.clone() };
                acc.entry(m).or_default().push(f1.scale(&k));
            }
        }
        let mut r = Expr::zero(self.dim());
        for (m, fs) in acc {
            let s = sum_fracs(fs);
            if !s.is_zero() {
                r.ch.insert(m, s);
            }
        }
        r
    }

    pub fn mul_param(&self, p: Param) -> Expr {
        self.mul_coeff(&ParamCoeff::param(p))
    }

    pub fn pow(&self, k: u32) -> Expr {
        let mut r = Expr::constant(self.dim(), Q::ONE);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn partial(&self, v: Var) -> Expr {
        let mut r = Expr::zero(self.dim());
        for (m, f) in &self.ch {
            let d = f.partial(v);
            if !d.is_zero() {
                r.ch.insert(*m, d);
            }
        }
        r
    }

    /// Replaces a parameter by a rational value.
    pub fn substitute(&self, p: Param, val: &Q) -> Expr {
        let mut r = Expr::zero(self.dim());
        for (m, f) in &self.ch {
            let e = m.exp(p);
            let mut ex = m.exps();
            let k = crate::param::PARAMS.iter().position(|q| *q == p).unwrap();
            ex[k] = 0;
            let (m2, neg) = PMono::from_exps(ex);
            let mut s = val.pow(e as u64);
            if neg {
                s = -s;
            }
            r.add_frac(m2, f.scale(&s));
        }
        r
    }

    /// Single parameter monomial times a single rational constant, if that is all there is.
    pub fn as_scalar(&self) -> Option<ParamCoeff> {
        let mut c = ParamCoeff::zero();
        for (m, f) in &self.ch {
            if f.den != [0, 0, 0] || f.num.len() != 1 || f.num.t[0].0 != Mono::ONE {
                return None;
            }
            c.add_term(*m, &f.num.t[0].1);
        }
        Some(c)
    }

    /// Common-denominator view `Σ_ν ν·N_ν / D`.
    pub fn to_single_fraction(&self) -> (Vec<(PMono, Poly)>, Den) {
        let d = self.ch.values().fold([0; 3], |a, f| max_den(a, f.den));
        let nums = self.ch.iter().map(|(m, f)| (*m, f.num_over(d))).collect();
        (nums, d)
    }

    /// Dimensional weight `(length, momentum)` when homogeneous.
    pub fn weight(&self) -> Option<(i32, i32)> {
        let mut w = None;
        for (m, f) in &self.ch {
            let (a, b) = f.bidegree()?;
            let (c, d) = m.weight();
            let here = (a + c, b + d);
            match w {
                None => w = Some(here),
                Some(v) if v != here => return None,
                _ => {}
            }
        }
        w
    }

    pub fn eval(&self, pt: &EvalPoint) -> Result<Complex64, SymError> {
        let n = self.dim();
        if pt.x.len() < n || pt.p.len() < n {
            return Err(SymError::DimensionMismatch { expected: n, got: pt.x.len().min(pt.p.len()) });
        }
        let r = pt.x[..n].iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut z = Complex64::new(0.0, 0.0);
        for (m, f) in &self.ch {
            let v = f.eval(&pt.x[..n], &pt.p[..n], r).map_err(|_| SymError::Pole)?;
            let (m0, has_i) = m.without_i();
            let pv = pt.params.monomial(m0) * v;
            z += if has_i { Complex64::new(0.0, pv) } else { Complex64::new(pv, 0.0) };
        }
        Ok(z)
    }

    /// Exact value at a rational point whose radius is rational. Returns (re, im).
    pub fn eval_exact(&self, pt: &ExactPoint) -> Result<(Q, Q), SymError> {
        let n = self.dim();
        let mut re = Q::ZERO;
        let mut im = Q::ZERO;
        for (m, f) in &self.ch {
            let v = f.eval_exact(&pt.x[..n], &pt.p[..n], &pt.r).ok_or(SymError::Pole)?;
            let (m0, has_i) = m.without_i();
            let mut pv = v;
            for (k, p) in [Param::Hbar, Param::C0, Param::C1, Param::C2].iter().enumerate() {
                pv *= &pt.params[k].pow(m0.exp(*p) as u64);
            }
            if has_i {
                im += &pv;
            } else {
                re += &pv;
            }
        }
        Ok((re, im))
    }

    /// Deterministic dump, one monomial per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (m, f) in self.ch.iter().rev() {
            let den = den_string(self.dim(), f.den);
            for (mono, q) in f.num.t.iter().rev() {
                s.push_str(&format!("[{m}] {q} * {mono}"));
                if !den.is_empty() {
                    s.push_str(&format!(" / {den}"));
                }
                s.push('\n');
            }
        }
        s
    }
}

fn sum_fracs(mut fs: Vec<Frac>) -> Frac {
    if fs.len() == 1 {
        return fs.pop().unwrap();
    }
    // add numerators sharing a denominator first, cancel once per group
    let mut by_den: BTreeMap<Den, Vec<Poly>> = BTreeMap::new();
    let n = fs[0].dim();
    for f in fs {
        if !f.is_zero() {
            by_den.entry(f.den).or_default().push(f.num);
        }
    }
    let mut total = Frac::zero(n);
    for (d, nums) in by_den {
        let num = sum_polys(n, nums);
        total = total.add(&Frac::new(num, d));
    }
    total
}

pub(crate) fn sum_polys(n: usize, nums: Vec<Poly>) -> Poly {
    if nums.len() == 1 {
        return nums.into_iter().next().unwrap();
    }
    let raw: Vec<(Mono, Q)> = nums.into_iter().flat_map(|p| p.t).collect();
    Poly::from_terms(n, raw)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ch.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, fr)) in self.ch.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *m == PMono::ONE {
                write!(f, "[{fr}]")?;
            } else {
                write!(f, "{m}*[{fr}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Numerical evaluation point; `r` is derived from `x`.
#[derive(Clone, Debug)]
pub struct EvalPoint {
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    pub params: ParamValues,
}

/// Rational evaluation point with rational radius (for example a Pythagorean tuple).
#[derive(Clone, Debug)]
pub struct ExactPoint {
    pub x: Vec<Q>,
    pub p: Vec<Q>,
    pub r: Q,
    /// Values of `ħ, c0, c1, c2`.
    pub params: [Q; 4],
}

impl ExactPoint {
    /// Fails unless `r² = Σ xᵢ²` holds exactly.
    pub fn new(x: Vec<Q>, p: Vec<Q>, r: Q, params: [Q; 4]) -> Result<Self, SymError> {
        let s = x.iter().fold(Q::ZERO, |a, v| a + v * v);
        if s != &r * &r || r.is_negative() {
            return Err(SymError::NotOnCone);
        }
        Ok(ExactPoint { x, p, r, params })
    }
}


/// Accumulates many products before cancelling, grouping by channel and denominator.
#[derive(Clone, Debug, Default)]
pub struct ExprAcc {
    n: u8,
    groups: BTreeMap<(PMono, Den), Vec<(Mono, Q)>>,
}

impl ExprAcc {
    pub fn new(n: usize) -> Self {
        ExprAcc { n: n as u8, groups: BTreeMap::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Adds `k · a · b` without cancelling.
    pub fn add_product(&mut self, a: &Expr, b: &Expr, k: &Q) {
        for (m1, f1) in &a.ch {
            for (m2, f2) in &b.ch {
                let (m, neg) = m1.mul(*m2);
                let kk = if neg { -k } else { k.clone() };
                let d = [f1.den[0] + f2.den[0], f1.den[1] + f2.den[1], f1.den[2] + f2.den[2]];
                let prod = f1.num.mul(&f2.num);
                let slot = self.groups.entry((m, d)).or_default();
                slot.extend(prod.t.into_iter().map(|(mm, q)| (mm, q * &kk)));
            }
        }
    }

    pub fn add_expr(&mut self, a: &Expr, k: &Q) {
        for (m, f) in &a.ch {
            let slot = self.groups.entry((*m, f.den)).or_default();
            slot.extend(f.num.t.iter().map(|(mm, q)| (*mm, q * k)));
        }
    }

    pub fn merge(&mut self, o: ExprAcc) {
        self.n = self.n.max(o.n);
        for (k, mut v) in o.groups {
            self.groups.entry(k).or_default().append(&mut v);
        }
    }

    pub fn finish(self) -> Expr {
        let n = self.n as usize;
        let mut by_pm: BTreeMap<PMono, Vec<Frac>> = BTreeMap::new();
        for ((m, d), terms) in self.groups {
            let f = Frac::new(Poly::from_terms(n, terms), d);
            if !f.is_zero() {
                by_pm.entry(m).or_default().push(f);
            }
        }
        let mut out = Expr::zero(n);
        for (m, fs) in by_pm {
            let mut total = Frac::zero(n);
            for f in fs {
                total = total.add(&f);
            }
            if !total.is_zero() {
                out.ch.insert(m, total);
            }
        }
        out
    }
}
