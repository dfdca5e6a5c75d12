//! Symbolic parameters `i, ħ, c0, c1, c2` and polynomials in them.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    /// Imaginary unit, reduced by `i² = −1`.
    I,
    Hbar,
    C0,
    C1,
    C2,
}

pub const PARAMS: [Param; 5] = [Param::I, Param::Hbar, Param::C0, Param::C1, Param::C2];

impl Param {
    fn slot(self) -> usize {
        match self {
            Param::I => 0,
            Param::Hbar => 1,
            Param::C0 => 2,
            Param::C1 => 3,
            Param::C2 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::I => "i",
            Param::Hbar => "hbar",
            Param::C0 => "c0",
            Param::C1 => "c1",
            Param::C2 => "c2",
        }
    }

    /// Dimensional weight in (length, momentum) units.
    pub fn weight(self) -> (i32, i32) {
        match self {
            Param::I => (0, 0),
            Param::Hbar => (1, 1),
            Param::C0 => (1, 2),
            Param::C1 | Param::C2 => (2, 2),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Packed monomial in the parameters. The `i` exponent is always 0 or 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PMono(pub(crate) u64);

impl PMono {
    pub const ONE: PMono = PMono(0);

    #[inline]
    fn sh(slot: usize) -> u32 {
        (8 * (4 - slot)) as u32
    }

    pub fn param(p: Param) -> PMono {
        PMono((1u64 << Self::sh(p.slot())) | (1u64 << 56))
    }

    pub fn exp(self, p: Param) -> u8 {
        (self.0 >> Self::sh(p.slot())) as u8
    }

    pub fn degree(self) -> u8 {
        (self.0 >> 56) as u8
    }

    pub fn from_exps(e: [u8; 5]) -> (PMono, bool) {
        let mut m = PMono::ONE;
        let mut neg = false;
        for (k, p) in PARAMS.iter().enumerate() {
            for _ in 0..e[k] {
                let (m2, n2) = m.mul(PMono::param(*p));
                m = m2;
                neg ^= n2;
            }
        }
        (m, neg)
    }

    /// Product, with a flag telling whether `i·i` produced a sign flip.
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: PMono) -> (PMono, bool) {
        let raw = self.0 + o.0;
        let m = PMono(raw);
        if m.exp(Param::I) == 2 {
            let i2 = PMono::param(Param::I).0 * 2;
            (PMono(raw - i2), true)
        } else {
            (m, false)
        }
    }

    pub fn without_i(self) -> (PMono, bool) {
        if self.exp(Param::I) == 1 {
            (PMono(self.0 - PMono::param(Param::I).0), true)
        } else {
            (self, false)
        }
    }

    pub fn weight(self) -> (i32, i32) {
        let mut w = (0, 0);
        for p in PARAMS {
            let e = self.exp(p) as i32;
            let (a, b) = p.weight();
            w.0 += a * e;
            w.1 += b * e;
        }
        w
    }

    pub fn exps(self) -> [u8; 5] {
        let mut e = [0u8; 5];
        for (k, p) in PARAMS.iter().enumerate() {
            e[k] = self.exp(*p);
        }
        e
    }

    /// Enumerate monomials in `allowed` with the given weight. The imaginary
    /// unit, when allowed, contributes both parities.
    pub fn with_weight(allowed: &[Param], w: (i32, i32)) -> Vec<PMono> {
        let mut out = Vec::new();
        let real: Vec<Param> = allowed.iter().copied().filter(|p| *p != Param::I).collect();
        let mut stack = vec![(0usize, PMono::ONE, (0i32, 0i32))];
        while let Some((k, m, acc)) = stack.pop() {
            if k == real.len() {
                if acc == w {
                    out.push(m);
                }
                continue;
            }
            let (a, b) = real[k].weight();
            let mut m2 = m;
            let mut acc2 = acc;
            loop {
                stack.push((k + 1, m2, acc2));
                acc2 = (acc2.0 + a, acc2.1 + b);
                if acc2.0 > w.0 || acc2.1 > w.1 {
                    break;
                }
                m2 = m2.mul(PMono::param(real[k])).0;
            }
        }
        if allowed.contains(&Param::I) {
            let with_i: Vec<PMono> = out.iter().map(|m| m.mul(PMono::param(Param::I)).0).collect();
            out.extend(with_i);
        }
        out.sort();
        out
    }
}

impl fmt::Display for PMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for p in PARAMS {
            let e = self.exp(p);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial in the parameters with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamCoeff(pub(crate) BTreeMap<PMono, Q>);

impl ParamCoeff {
    pub fn zero() -> Self {
        ParamCoeff(BTreeMap::new())
    }

    pub fn constant(q: Q) -> Self {
        Self::term(PMono::ONE, q)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Q::int(n))
    }

    pub fn param(p: Param) -> Self {
        Self::term(PMono::param(p), Q::ONE)
    }

    pub fn term(m: PMono, q: Q) -> Self {
        let mut t = BTreeMap::new();
        if !q.is_zero() {
            t.insert(m, q);
        }
        ParamCoeff(t)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono, &Q)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, m: PMono, q: &Q) {
        if q.is_zero() {
            return;
        }
        let e = self.0.entry(m).or_insert(Q::ZERO);
        *e += q;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, o: &ParamCoeff) -> ParamCoeff {
        let mut r = self.clone();
        for (m, q) in &o.0 {
            r.add_term(*m, q);
        }
        r
    }

    pub fn sub(&self, o: &ParamCoeff) -> ParamCoeff {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ParamCoeff {
        ParamCoeff(self.0.iter().map(|(m, q)| (*m, -q)).collect())
    }

    pub fn scale(&self, k: &Q) -> ParamCoeff {
        if k.is_zero() {
            return ParamCoeff::zero();
        }
        ParamCoeff(self.0.iter().map(|(m, q)| (*m, q * k)).collect())
    }

    pub fn mul(&self, o: &ParamCoeff) -> ParamCoeff {
        let mut r = ParamCoeff::zero();
        for (m1, q1) in &self.0 {
            for (m2, q2) in &o.0 {
                let (m, neg) = m1.mul(*m2);
                let q = q1 * q2;
                r.add_term(m, &if neg { -q } else { q });
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> ParamCoeff {
        let mut r = ParamCoeff::int(1);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Value with `i` kept as the imaginary unit: returns (real, imaginary).
    pub fn eval(&self, vals: &ParamValues) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, q) in &self.0 {
            let (m0, has_i) = m.without_i();
            let v = q.to_f64() * vals.monomial(m0);
            if has_i {
                im += v;
            } else {
                re += v;
            }
        }
        (re, im)
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.0.len() {
            0 => Some(Q::ZERO),
            1 => self.0.get(&PMono::ONE).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for ParamCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, q) in self.0.iter().rev() {
            let neg = q.is_negative();
            let a = if neg { -q } else { q.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if m.0 == 0 {
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

impl fmt::Debug for ParamCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Numerical values for `ħ, c0, c1, c2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamValues {
    pub hbar: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl ParamValues {
    pub fn get(&self, p: Param) -> f64 {
        match p {
            Param::I => f64::NAN,
            Param::Hbar => self.hbar,
            Param::C0 => self.c0,
            Param::C1 => self.c1,
            Param::C2 => self.c2,
        }
    }

    /// Value of an `i`-free monomial.
    pub fn monomial(&self, m: PMono) -> f64 {
        let mut v = 1.0;
        for p in &PARAMS[1..] {
            v *= self.get(*p).powi(m.exp(*p) as i32);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squares_to_minus_one() {
        let i = ParamCoeff::param(Param::I);
        assert_eq!(i.mul(&i), ParamCoeff::int(-1));
        let h = ParamCoeff::param(Param::Hbar);
        let ih = i.mul(&h);
        assert_eq!(ih.mul(&ih), h.mul(&h).neg());
    }

    #[test]
    fn weighted_enumeration() {
        let all = [Param::Hbar, Param::C0, Param::C1, Param::C2];
        let ms = PMono::with_weight(&all, (3, 4));
        let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert!(names.contains(&"c0*c1".to_string()));
        assert!(names.contains(&"hbar^2*c0".to_string()));
        assert_eq!(ms.len(), 3);
        assert_eq!(PMono::with_weight(&[Param::I, Param::Hbar], (1, 1)).len(), 2);
    }

    #[test]
    fn display_is_readable() {
        let c = ParamCoeff::param(Param::C1)
            .sub(&ParamCoeff::param(Param::C2))
            .mul(&ParamCoeff::param(Param::C0))
            .scale(&Q::int(4));
        assert_eq!(c.to_string(), "4*c0*c1 - 4*c0*c2");
    }
}
