//! Differential operators `Σ_α f_α(x) ∂^α` with canonical position-only coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::cancel::CancelToken;
use crate::error::SymError;
use crate::exec::Exec;
use crate::expr::{Expr, ExprAcc};
use crate::monomial::{MultiIndex, Var};
use crate::param::{Param, ParamCoeff};
use crate::rational::Q;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    pub(crate) n: u8,
    pub(crate) terms: BTreeMap<MultiIndex, Expr>,
}

impl DiffOp {
    pub fn zero(n: usize) -> DiffOp {
        DiffOp { n: n as u8, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> DiffOp {
        DiffOp::mult(Expr::int(n, 1)).unwrap()
    }

    /// Multiplication by a function of position.
    pub fn mult(f: Expr) -> Result<DiffOp, SymError> {
        if !f.is_position_only() {
            return Err(SymError::MomentumInCoefficient);
        }
        let mut d = DiffOp::zero(f.dim());
        if !f.is_zero() {
            d.terms.insert(MultiIndex::ZERO, f);
        }
        Ok(d)
    }

    pub fn x(n: usize, i: usize) -> DiffOp {
        DiffOp::mult(Expr::x(n, i)).unwrap()
    }

    pub fn d(n: usize, i: usize) -> DiffOp {
        let mut d = DiffOp::zero(n);
        d.terms.insert(MultiIndex::unit(i), Expr::int(n, 1));
        d
    }

    /// `pᵢ = −iħ ∂ᵢ`.
    pub fn momentum(n: usize, i: usize) -> DiffOp {
        let c = ParamCoeff::param(Param::I).mul(&ParamCoeff::param(Param::Hbar)).neg();
        DiffOp::d(n, i).mul_coeff(&c)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, Expr)>) -> Result<DiffOp, SymError> {
        let mut d = DiffOp::zero(n);
        for (a, e) in terms {
            if !e.is_position_only() {
                return Err(SymError::MomentumInCoefficient);
            }
            d.add_term(a, e);
        }
        Ok(d)
    }

    fn add_term(&mut self, a: MultiIndex, e: Expr) {
        if e.is_zero() {
            return;
        }
        match self.terms.remove(&a) {
            None => {
                self.terms.insert(a, e);
            }
            Some(g) => {
                let s = g.add(&e);
                if !s.is_zero() {
                    self.terms.insert(a, s);
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u8 {
        self.terms.keys().map(|a| a.order()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Expr)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: MultiIndex) -> Option<&Expr> {
        self.terms.get(&a)
    }

    pub fn term_count(&self) -> usize {
        self.terms.values().map(|e| e.term_count()).sum()
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let mut r = self.clone();
        r.n = r.n.max(o.n);
        for (a, e) in &o.terms {
            r.add_term(*a, e.clone());
        }
        r
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp { n: self.n, terms: self.terms.iter().map(|(a, e)| (*a, e.neg())).collect() }
    }

    pub fn scale(&self, k: &Q) -> DiffOp {
        let mut r = DiffOp::zero(self.dim());
        if k.is_zero() {
            return r;
        }
        r.terms = self.terms.iter().map(|(a, e)| (*a, e.scale(k))).collect();
        r
    }

    pub fn mul_coeff(&self, c: &ParamCoeff) -> DiffOp {
        let mut r = DiffOp::zero(self.dim());
        for (a, e) in &self.terms {
            r.add_term(*a, e.mul_coeff(c));
        }
        r
    }

    /// Left multiplication by a position function.
    pub fn premul(&self, f: &Expr) -> Result<DiffOp, SymError> {
        if !f.is_position_only() {
            return Err(SymError::MomentumInCoefficient);
        }
        let mut r = DiffOp::zero(self.dim());
        for (a, e) in &self.terms {
            r.add_term(*a, f.mul(e));
        }
        Ok(r)
    }

    pub fn substitute(&self, p: Param, v: &Q) -> DiffOp {
        let mut r = DiffOp::zero(self.dim());
        for (a, e) in &self.terms {
            r.add_term(*a, e.substitute(p, v));
        }
        r
    }

    /// Action on a position function.
    pub fn apply(&self, f: &Expr) -> Expr {
        let mut acc = Expr::zero(self.dim());
        for (a, c) in &self.terms {
            let mut g = f.clone();
            for (i, &k) in a.exps().iter().enumerate() {
                for _ in 0..k {
                    g = g.partial(Var::X(i));
                }
            }
            acc.add_assign(&c.mul(&g));
        }
        acc
    }

    /// Dimensional weight, counting `∂` as inverse length, when homogeneous.
    pub fn weight(&self) -> Option<(i32, i32)> {
        let mut w = None;
        for (a, e) in &self.terms {
            let (x, y) = e.weight()?;
            let here = (x - a.order() as i32, y);
            match w {
                None => w = Some(here),
                Some(v) if v != here => return None,
                _ => {}
            }
        }
        w
    }

    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (a, e) in self.terms.iter().rev() {
            for line in e.dump().lines() {
                s.push_str(&format!("{a} | {line}\n"));
            }
        }
        s
    }
}

/// Derivatives `∂^γ g` for every requested `γ`, built from lower orders.
fn derivative_table(g: &Expr, gammas: &BTreeSet<MultiIndex>) -> HashMap<MultiIndex, Expr> {
    let mut table: HashMap<MultiIndex, Expr> = HashMap::new();
    table.insert(MultiIndex::ZERO, g.clone());
    for &gm in gammas {
        derive_into(gm, &mut table);
    }
    table
}

fn derive_into(gm: MultiIndex, table: &mut HashMap<MultiIndex, Expr>) {
    if table.contains_key(&gm) {
        return;
    }
    let i = (0..crate::monomial::MAX_DIM).find(|&i| gm.get(i) > 0).unwrap();
    let lower = gm.sub(MultiIndex::unit(i)).unwrap();
    derive_into(lower, table);
    let base = &table[&lower];
    let d = if base.is_zero() { base.clone() } else { base.partial(Var::X(i)) };
    table.insert(gm, d);
}

/// `P ∘ Q` via `(f ∂^α)(g ∂^β) = Σ_γ C(α,γ) f (∂^γ g) ∂^{α−γ+β}`.
pub fn compose(p: &DiffOp, q: &DiffOp, exec: Exec, token: &CancelToken) -> Result<DiffOp, SymError> {
    let n = p.dim().max(q.dim());
    let mut gammas = BTreeSet::new();
    for a in p.terms.keys() {
        for (g, _) in a.sub_indices() {
            gammas.insert(g);
        }
    }
    let qterms: Vec<(MultiIndex, &Expr)> = q.terms.iter().map(|(b, e)| (*b, e)).collect();
    let tables: Vec<HashMap<MultiIndex, Expr>> = exec.map(&qterms, |(_, g)| derivative_table(g, &gammas));
    token.check()?;
    let pterms: Vec<(MultiIndex, &Expr)> = p.terms.iter().map(|(a, e)| (*a, e)).collect();
    let partials: Vec<Result<BTreeMap<MultiIndex, ExprAcc>, SymError>> = exec.map(&pterms, |(a, f)| {
        let mut out: BTreeMap<MultiIndex, ExprAcc> = BTreeMap::new();
        let subs = a.sub_indices();
        for (k, (b, _)) in qterms.iter().enumerate() {
            token.check()?;
            for (gm, c) in &subs {
                let dg = &tables[k][gm];
                if dg.is_zero() {
                    continue;
                }
                let idx = a.sub(*gm).unwrap().add(*b);
                out.entry(idx).or_insert_with(|| ExprAcc::new(n)).add_product(f, dg, &Q::int(*c as i64));
            }
        }
        Ok(out)
    });
    let mut merged: BTreeMap<MultiIndex, ExprAcc> = BTreeMap::new();
    for part in partials {
        for (idx, acc) in part? {
            merged.entry(idx).or_insert_with(|| ExprAcc::new(n)).merge(acc);
        }
    }
    token.check()?;
    let items: Vec<(MultiIndex, ExprAcc)> = merged.into_iter().collect();
    let done: Vec<Result<(MultiIndex, Expr), SymError>> = exec.map(&items, |(idx, acc)| {
        token.check()?;
        Ok((*idx, acc.clone().finish()))
    });
    let mut r = DiffOp::zero(n);
    for d in done {
        let (idx, e) = d?;
        if !e.is_zero() {
            r.terms.insert(idx, e);
        }
    }
    Ok(r)
}

pub fn commutator(p: &DiffOp, q: &DiffOp, exec: Exec, token: &CancelToken) -> Result<DiffOp, SymError> {
    Ok(compose(p, q, exec, token)?.sub(&compose(q, p, exec, token)?))
}

/// `PQ + QP`.
pub fn anticommutator(p: &DiffOp, q: &DiffOp, exec: Exec, token: &CancelToken) -> Result<DiffOp, SymError> {
    Ok(compose(p, q, exec, token)?.add(&compose(q, p, exec, token)?))
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, e)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({e})*{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
