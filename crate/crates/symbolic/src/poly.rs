//! Polynomials in `x, p, r` modulo `r² = Σ xᵢ²`.
//!
//! Terms are kept sorted by packed monomial with no zero coefficients and with
//! the exponent of `r` at most one, which makes the representation canonical.

use std::fmt;

use crate::monomial::{Mono, Var, MAX_DIM};
use crate::rational::Q;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub(crate) n: u8,
    pub(crate) t: Vec<(Mono, Q)>,
}

impl Poly {
    pub fn zero(n: usize) -> Poly {
        assert!(n <= MAX_DIM);
        Poly { n: n as u8, t: Vec::new() }
    }

    pub fn constant(n: usize, q: Q) -> Poly {
        Poly::term(n, Mono::ONE, q)
    }

    pub fn term(n: usize, m: Mono, q: Q) -> Poly {
        let mut p = Poly::zero(n);
        if !q.is_zero() {
            debug_assert!(m.r_exp() <= 1);
            p.t.push((m, q));
        }
        p
    }

    pub fn var(n: usize, v: Var) -> Poly {
        Poly::term(n, Mono::var(v), Q::ONE)
    }

    pub fn r(n: usize) -> Poly {
        Poly::term(n, Mono::r(), Q::ONE)
    }

    /// `Σ_{i<k} xᵢ²`.
    pub fn sum_squares(n: usize, k: usize) -> Poly {
        let mut t: Vec<(Mono, Q)> = (0..k).map(|i| (Mono::var(Var::X(i)).pow(2), Q::ONE)).collect();
        t.sort_by_key(|a| a.0);
        Poly { n: n as u8, t }
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.t
    }

    /// Builds from arbitrary terms: sorts, merges, drops zeros and reduces `r²`.
    pub fn from_terms(n: usize, mut raw: Vec<(Mono, Q)>) -> Poly {
        if raw.iter().any(|(m, _)| m.r_exp() >= 2) {
            let mut expanded = Vec::with_capacity(raw.len());
            for (m, q) in raw {
                reduce_r_into(n, m, q, &mut expanded);
            }
            raw = expanded;
        }
        raw.sort_unstable_by_key(|a| a.0);
        let mut t: Vec<(Mono, Q)> = Vec::with_capacity(raw.len());
        for (m, q) in raw {
            match t.last_mut() {
                Some((lm, lq)) if *lm == m => *lq += &q,
                _ => {
                    if let Some((_, lq)) = t.last() {
                        if lq.is_zero() {
                            t.pop();
                        }
                    }
                    t.push((m, q));
                }
            }
        }
        if let Some((_, lq)) = t.last() {
            if lq.is_zero() {
                t.pop();
            }
        }
        Poly { n: n as u8, t }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut t = Vec::with_capacity(self.t.len() + o.t.len());
        let (mut i, mut j) = (0, 0);
        while i < self.t.len() && j < o.t.len() {
            let (a, b) = (&self.t[i], &o.t[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    t.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    t.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let q = &a.1 + &b.1;
                    if !q.is_zero() {
                        t.push((a.0, q));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        t.extend_from_slice(&self.t[i..]);
        t.extend_from_slice(&o.t[j..]);
        Poly { n: self.n.max(o.n), t }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { n: self.n, t: self.t.iter().map(|(m, q)| (*m, -q)).collect() }
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.dim());
        }
        Poly { n: self.n, t: self.t.iter().map(|(m, q)| (*m, q * k)).collect() }
    }

    pub fn mul_mono(&self, m: Mono, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.dim());
        }
        let raw: Vec<(Mono, Q)> = self.t.iter().map(|(a, q)| (a.mul(m), q * k)).collect();
        if m.r_exp() == 0 {
            Poly { n: self.n, t: raw }
        } else {
            Poly::from_terms(self.dim(), raw)
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let n = self.dim().max(o.dim());
        if self.is_zero() || o.is_zero() {
            return Poly::zero(n);
        }
        if o.t.len() == 1 {
            return self.mul_mono(o.t[0].0, &o.t[0].1);
        }
        if self.t.len() == 1 {
            return o.mul_mono(self.t[0].0, &self.t[0].1);
        }
        let mut raw = Vec::with_capacity(self.t.len() * o.t.len());
        for (a, qa) in &self.t {
            for (b, qb) in &o.t {
                raw.push((a.mul(*b), qa * qb));
            }
        }
        Poly::from_terms(n, raw)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::constant(self.dim(), Q::ONE);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Splits `self = a + b·r` with `a, b` free of `r`.
    pub fn split_r(&self) -> (Poly, Poly) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (m, q) in &self.t {
            if m.r_exp() == 1 {
                b.push((m.div(Mono::r()).unwrap(), q.clone()));
            } else {
                a.push((*m, q.clone()));
            }
        }
        b.sort_unstable_by_key(|x| x.0);
        (Poly { n: self.n, t: a }, Poly { n: self.n, t: b })
    }

    /// `a + b·r`.
    pub fn join_r(a: &Poly, b: &Poly) -> Poly {
        a.add(&b.mul_mono(Mono::r(), &Q::ONE))
    }

    pub fn has_r(&self) -> bool {
        self.t.iter().any(|(m, _)| m.r_exp() > 0)
    }

    pub fn has_momentum(&self) -> bool {
        self.t.iter().any(|(m, _)| m.has_momentum())
    }

    /// Derivative with `r` held fixed.
    pub fn partial_plain(&self, v: Var) -> Poly {
        let slot = v.slot();
        let mut raw = Vec::new();
        for (m, q) in &self.t {
            let e = m.exp_slot(slot);
            if e > 0 {
                raw.push((m.lower_slot(slot, 1), q * &Q::int(e as i64)));
            }
        }
        Poly::from_terms(self.dim(), raw)
    }

    /// Exact quotient by `Σ_{i<k} xᵢ²` for an `r`-free polynomial, if it divides.
    pub fn div_sum_squares(&self, k: usize) -> Option<Poly> {
        debug_assert!(!self.has_r());
        if self.is_zero() {
            return Some(self.clone());
        }
        if k == 0 {
            return None;
        }
        let n = self.dim();
        let lead = Var::X(0).slot();
        let rest = Poly::sum_squares(n, k).sub(&Poly::sum_squares(n, 1));
        // bucket by exponent of the leading variable
        let maxe = self.t.iter().map(|(m, _)| m.exp_slot(lead)).max().unwrap() as usize;
        let mut c: Vec<Vec<(Mono, Q)>> = vec![Vec::new(); maxe + 1];
        for (m, q) in &self.t {
            let (m0, e) = m.without_slot(lead);
            c[e as usize].push((m0, q.clone()));
        }
        let mut c: Vec<Poly> = c.into_iter().map(|v| Poly::from_terms(n, v)).collect();
        if maxe < 2 {
            return None;
        }
        // q_{k} = c_{k+2} - T q_{k+2}, taken from the top down
        let mut qs: Vec<Poly> = vec![Poly::zero(n); maxe - 1];
        for j in (0..=maxe - 2).rev() {
            let mut qj = std::mem::replace(&mut c[j + 2], Poly::zero(n));
            if j + 2 < qs.len() {
                qj = qj.sub(&rest.mul(&qs[j + 2]));
            }
            qs[j] = qj;
        }
        for (j, cj) in c.iter().enumerate().take(2) {
            let tq = if j < qs.len() { rest.mul(&qs[j]) } else { Poly::zero(n) };
            if *cj != tq {
                return None;
            }
        }
        let x1 = Mono::var(Var::X(0));
        let mut out = Vec::new();
        for (j, qj) in qs.iter().enumerate() {
            let m = x1.pow(j as u8);
            for (mm, q) in &qj.t {
                out.push((mm.mul(m), q.clone()));
            }
        }
        Some(Poly::from_terms(n, out))
    }

    pub fn eval(&self, xs: &[f64], ps: &[f64], r: f64) -> f64 {
        let mut acc = 0.0;
        for (m, q) in &self.t {
            let mut v = q.to_f64();
            for (i, x) in xs.iter().enumerate() {
                let e = m.exp(Var::X(i));
                if e > 0 {
                    v *= x.powi(e as i32);
                }
            }
            for (i, p) in ps.iter().enumerate() {
                let e = m.exp(Var::P(i));
                if e > 0 {
                    v *= p.powi(e as i32);
                }
            }
            if m.r_exp() > 0 {
                v *= r;
            }
            acc += v;
        }
        acc
    }

    pub fn eval_exact(&self, xs: &[Q], ps: &[Q], r: &Q) -> Q {
        let mut acc = Q::ZERO;
        for (m, q) in &self.t {
            let mut v = q.clone();
            for (i, x) in xs.iter().enumerate() {
                let e = m.exp(Var::X(i));
                if e > 0 {
                    v *= &x.pow(e as u64);
                }
            }
            for (i, p) in ps.iter().enumerate() {
                let e = m.exp(Var::P(i));
                if e > 0 {
                    v *= &p.pow(e as u64);
                }
            }
            if m.r_exp() > 0 {
                v *= r;
            }
            acc += &v;
        }
        acc
    }

    /// Bidegree of the terms when they all agree.
    pub fn bidegree(&self) -> Option<(i32, i32)> {
        let mut it = self.t.iter().map(|(m, _)| m.bidegree());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }
}

fn reduce_r_into(n: usize, m: Mono, q: Q, out: &mut Vec<(Mono, Q)>) {
    let e = m.r_exp();
    if e < 2 {
        out.push((m, q));
        return;
    }
    let base = m.lower_slot(crate::monomial::R_SLOT_PUB, 2);
    for i in 0..n {
        reduce_r_into(n, base.mul(Mono::var(Var::X(i)).pow(2)), q.clone(), out);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, q)) in self.t.iter().rev().enumerate() {
            let neg = q.is_negative();
            let a = if neg { -q } else { q.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *m == Mono::ONE {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, Var::X(i))
    }

    #[test]
    fn r_squared_reduces() {
        let r = Poly::r(3);
        assert_eq!(r.mul(&r), Poly::sum_squares(3, 3));
        let d = r.mul(&r).sub(&Poly::sum_squares(3, 3));
        assert!(d.is_zero());
    }

    #[test]
    fn sum_of_squares_division() {
        let s = Poly::sum_squares(3, 2);
        let q = x(0).mul(&x(2)).add(&x(1).pow(3)).add(&Poly::constant(3, Q::int(5)));
        let p = s.mul(&q);
        assert_eq!(p.div_sum_squares(2), Some(q));
        assert_eq!(p.add(&x(0)).div_sum_squares(2), None);
        let full = Poly::sum_squares(3, 3);
        assert_eq!(full.mul(&x(1)).div_sum_squares(3), Some(x(1)));
        assert_eq!(x(0).pow(2).div_sum_squares(2), None);
    }
}
