//! Fractions `num / (r^a s^b t^c)` with `s = r + x_N` and `t = r − x_N`.
//!
//! `r`, `s` and `t` are pairwise coprime primes of the coordinate ring, so
//! cancelling each of them as far as possible yields a unique representative.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::monomial::{Mono, Var};
use crate::poly::Poly;
use crate::rational::Q;

pub type Den = [u8; 3];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frac {
    pub(crate) num: Poly,
    pub(crate) den: Den,
}

thread_local! {
    static FACTOR_CACHE: RefCell<HashMap<(u8, Den), Poly>> = RefCell::new(HashMap::new());
}

/// `r^a s^b t^c` as a polynomial.
pub(crate) fn den_poly(n: usize, d: Den) -> Poly {
    if d == [0, 0, 0] {
        return Poly::constant(n, Q::ONE);
    }
    FACTOR_CACHE.with(|c| {
        if let Some(p) = c.borrow().get(&(n as u8, d)) {
            return p.clone();
        }
        let r = Poly::r(n);
        let xn = Poly::var(n, Var::X(n - 1));
        let s = r.add(&xn);
        let t = r.sub(&xn);
        let p = r.pow(d[0] as u32).mul(&s.pow(d[1] as u32)).mul(&t.pow(d[2] as u32));
        c.borrow_mut().insert((n as u8, d), p.clone());
        p
    })
}

fn div_r(p: &Poly) -> Option<Poly> {
    let n = p.dim();
    let (a, b) = p.split_r();
    let qa = a.div_sum_squares(n)?;
    Some(Poly::join_r(&b, &qa))
}

fn div_s_or_t(p: &Poly, sign: i64) -> Option<Poly> {
    let n = p.dim();
    let (a, b) = p.split_r();
    let xn = Mono::var(Var::X(n - 1));
    let w = a.add(&b.mul_mono(xn, &Q::int(-sign)));
    let q = w.div_sum_squares(n - 1)?;
    let rest = b.add(&q.mul_mono(xn, &Q::int(-sign)));
    Some(Poly::join_r(&rest, &q))
}

impl Frac {
    pub fn zero(n: usize) -> Frac {
        Frac { num: Poly::zero(n), den: [0; 3] }
    }

    pub fn from_poly(p: Poly) -> Frac {
        Frac { num: p, den: [0; 3] }
    }

    /// Builds and fully cancels `num / den`.
    pub fn new(num: Poly, den: Den) -> Frac {
        let mut f = Frac { num, den };
        f.cancel();
        f
    }

    pub fn dim(&self) -> usize {
        self.num.dim()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> Den {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den = [0; 3];
            return;
        }
        for k in 0..3 {
            while self.den[k] > 0 {
                let q = match k {
                    0 => div_r(&self.num),
                    1 => div_s_or_t(&self.num, 1),
                    _ => div_s_or_t(&self.num, -1),
                };
                match q {
                    Some(q) => {
                        self.num = q;
                        self.den[k] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    /// Numerator over the larger denominator `d`, without cancelling.
    pub(crate) fn num_over(&self, d: Den) -> Poly {
        let extra = [d[0] - self.den[0], d[1] - self.den[1], d[2] - self.den[2]];
        if extra == [0, 0, 0] {
            self.num.clone()
        } else {
            self.num.mul(&den_poly(self.dim(), extra))
        }
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return Frac::new(self.num.add(&o.num), self.den);
        }
        let d = max_den(self.den, o.den);
        Frac::new(self.num_over(d).add(&o.num_over(d)), d)
    }

    pub fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den }
    }

    pub fn scale(&self, k: &Q) -> Frac {
        if k.is_zero() {
            return Frac::zero(self.dim());
        }
        Frac { num: self.num.scale(k), den: self.den }
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        if self.is_zero() || o.is_zero() {
            return Frac::zero(self.dim().max(o.dim()));
        }
        let d = [self.den[0] + o.den[0], self.den[1] + o.den[1], self.den[2] + o.den[2]];
        Frac::new(self.num.mul(&o.num), d)
    }

    pub fn partial(&self, v: Var) -> Frac {
        match v {
            Var::P(_) => Frac::new(self.num.partial_plain(v), self.den),
            Var::X(k) => self.partial_x(k),
        }
    }

    fn partial_x(&self, k: usize) -> Frac {
        let n = self.dim();
        let v = Var::X(k);
        let last = k + 1 == n;
        let [a, b, c] = self.den;
        let (n0, n1) = self.num.split_r();
        let xk = Mono::var(v);
        // r · d(num)/dx_k, using dr/dx_k = x_k / r
        let dnr = Poly::join_r(
            &n1.partial_plain(v).mul(&Poly::sum_squares(n, n)).add(&n1.mul_mono(xk, &Q::ONE)),
            &n0.partial_plain(v),
        );
        if a == 0 && b == 0 && c == 0 {
            return Frac::new(dnr, [1, 0, 0]);
        }
        let sf = if b > 0 { den_poly(n, [0, 1, 0]) } else { Poly::constant(n, Q::ONE) };
        let tf = if c > 0 { den_poly(n, [0, 0, 1]) } else { Poly::constant(n, Q::ONE) };
        let r = Poly::r(n);
        let st = sf.mul(&tf);
        let mut acc = dnr.mul(&r).mul(&st);
        if a > 0 {
            acc = acc.sub(&self.num.mul(&st).mul_mono(xk, &Q::int(a as i64)));
        }
        if b > 0 {
            let mut g = Poly::var(n, v);
            if last {
                g = g.add(&r);
            }
            acc = acc.sub(&g.mul(&r).mul(&self.num).mul(&tf).scale(&Q::int(b as i64)));
        }
        if c > 0 {
            let mut g = Poly::var(n, v);
            if last {
                g = g.sub(&r);
            }
            acc = acc.sub(&g.mul(&r).mul(&self.num).mul(&sf).scale(&Q::int(c as i64)));
        }
        let d = [a + 2, b + (b > 0) as u8, c + (c > 0) as u8];
        Frac::new(acc, d)
    }

    pub fn eval(&self, xs: &[f64], ps: &[f64], r: f64) -> Result<f64, f64> {
        let xn = xs[self.dim() - 1];
        let dv = r.powi(self.den[0] as i32) * (r + xn).powi(self.den[1] as i32) * (r - xn).powi(self.den[2] as i32);
        let nv = self.num.eval(xs, ps, r);
        if dv == 0.0 {
            Err(nv)
        } else {
            Ok(nv / dv)
        }
    }

    pub fn eval_exact(&self, xs: &[Q], ps: &[Q], r: &Q) -> Option<Q> {
        let xn = &xs[self.dim() - 1];
        let dv = r.pow(self.den[0] as u64) * (r + xn).pow(self.den[1] as u64) * (r - xn).pow(self.den[2] as u64);
        if dv.is_zero() {
            return None;
        }
        Some(&self.num.eval_exact(xs, ps, r) / &dv)
    }

    /// Bidegree of the whole fraction, if homogeneous.
    pub fn bidegree(&self) -> Option<(i32, i32)> {
        let (a, b) = self.num.bidegree()?;
        let d = self.den.iter().map(|&e| e as i32).sum::<i32>();
        Some((a - d, b))
    }
}

pub(crate) fn max_den(a: Den, b: Den) -> Den {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

pub(crate) fn den_string(n: usize, d: Den) -> String {
    let mut parts = Vec::new();
    let names = ["r".to_string(), format!("(r+x{n})"), format!("(r-x{n})")];
    for k in 0..3 {
        match d[k] {
            0 => {}
            1 => parts.push(names[k].clone()),
            e => parts.push(format!("{}^{}", names[k], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == [0, 0, 0] {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, den_string(self.dim(), self.den))
        }
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
