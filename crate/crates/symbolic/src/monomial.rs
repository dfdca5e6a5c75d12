//! Packed exponent vectors.
//!
//! A [`Mono`] stores one byte per phase-space slot (`x1..x7`, `p1..p7`, `r`)
//! below a total-degree byte, so integer order on the packed word is a graded
//! order and multiplication is a single addition.

use std::fmt;

pub const MAX_DIM: usize = 7;
const SLOTS: usize = 2 * MAX_DIM + 1;
const R_SLOT: usize = 2 * MAX_DIM;
pub(crate) const R_SLOT_PUB: usize = R_SLOT;

/// A phase-space coordinate. Indices are zero based internally and printed one based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(usize),
    P(usize),
}

impl Var {
    pub(crate) fn slot(self) -> usize {
        match self {
            Var::X(i) => i,
            Var::P(i) => MAX_DIM + i,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Var::X(i) | Var::P(i) => i,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::P(i) => write!(f, "p{}", i + 1),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub(crate) u128);

#[inline]
fn shift(slot: usize) -> u32 {
    (8 * (SLOTS - 1 - slot)) as u32
}

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(v: Var) -> Mono {
        Mono::single(v.slot(), 1)
    }

    pub fn r() -> Mono {
        Mono::single(R_SLOT, 1)
    }

    fn single(slot: usize, e: u8) -> Mono {
        Mono(((e as u128) << shift(slot)) | ((e as u128) << 120))
    }

    #[inline]
    pub(crate) fn exp_slot(self, slot: usize) -> u8 {
        (self.0 >> shift(slot)) as u8
    }

    pub fn exp(self, v: Var) -> u8 {
        self.exp_slot(v.slot())
    }

    pub fn r_exp(self) -> u8 {
        self.exp_slot(R_SLOT)
    }

    pub fn degree(self) -> u8 {
        (self.0 >> 120) as u8
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: Mono) -> Mono {
        debug_assert!(self.degree() as u16 + o.degree() as u16 <= 255);
        Mono(self.0 + o.0)
    }

    pub fn pow(self, k: u8) -> Mono {
        let mut m = Mono::ONE;
        for _ in 0..k {
            m = m.mul(self);
        }
        m
    }

    /// `self / o` when every exponent of `o` is at most the one in `self`.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, o: Mono) -> Option<Mono> {
        for s in 0..SLOTS {
            if self.exp_slot(s) < o.exp_slot(s) {
                return None;
            }
        }
        Some(Mono(self.0 - o.0))
    }

    pub(crate) fn lower_slot(self, slot: usize, by: u8) -> Mono {
        debug_assert!(self.exp_slot(slot) >= by);
        Mono(self.0 - ((by as u128) << shift(slot)) - ((by as u128) << 120))
    }

    pub(crate) fn without_slot(self, slot: usize) -> (Mono, u8) {
        let e = self.exp_slot(slot);
        (self.lower_slot(slot, e), e)
    }

    pub fn has_momentum(self) -> bool {
        (MAX_DIM..2 * MAX_DIM).any(|s| self.exp_slot(s) > 0)
    }

    /// Degree in positions (x and r) and in momenta.
    pub fn bidegree(self) -> (i32, i32) {
        let mut a = self.r_exp() as i32;
        let mut b = 0;
        for i in 0..MAX_DIM {
            a += self.exp_slot(i) as i32;
            b += self.exp_slot(MAX_DIM + i) as i32;
        }
        (a, b)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, name: String, e: u8| -> fmt::Result {
            if e == 0 {
                return Ok(());
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")
            } else {
                write!(f, "{name}^{e}")
            }
        };
        for i in 0..MAX_DIM {
            put(f, format!("x{}", i + 1), self.exp_slot(i))?;
        }
        for i in 0..MAX_DIM {
            put(f, format!("p{}", i + 1), self.exp_slot(MAX_DIM + i))?;
        }
        put(f, "r".into(), self.r_exp())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multi-index of a partial derivative `∂^α`, one byte per position slot.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(pub(crate) u64);

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex(0);

    #[inline]
    fn sh(i: usize) -> u32 {
        (8 * (MAX_DIM - 1 - i)) as u32
    }

    pub fn unit(i: usize) -> MultiIndex {
        assert!(i < MAX_DIM);
        MultiIndex((1u64 << Self::sh(i)) | (1u64 << 56))
    }

    pub fn from_exps(e: &[u8]) -> MultiIndex {
        let mut m = MultiIndex::ZERO;
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                m = m.add(MultiIndex::unit(i));
            }
        }
        m
    }

    pub fn get(self, i: usize) -> u8 {
        (self.0 >> Self::sh(i)) as u8
    }

    pub fn order(self) -> u8 {
        (self.0 >> 56) as u8
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 + o.0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, o: MultiIndex) -> Option<MultiIndex> {
        (0..MAX_DIM).all(|i| self.get(i) >= o.get(i)).then(|| MultiIndex(self.0 - o.0))
    }

    pub fn exps(self) -> [u8; MAX_DIM] {
        let mut e = [0u8; MAX_DIM];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.get(i);
        }
        e
    }

    /// All `γ ≤ self` componentwise, with the product of binomials `C(self, γ)`.
    pub fn sub_indices(self) -> Vec<(MultiIndex, u64)> {
        let e = self.exps();
        let mut out = vec![(MultiIndex::ZERO, 1u64)];
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
            for (g, c) in &out {
                let mut g2 = *g;
                for j in 0..=k {
                    next.push((g2, c * binom(k as u64, j as u64)));
                    g2 = g2.add(MultiIndex::unit(i));
                }
            }
            out = next;
        }
        out
    }
}

pub(crate) fn binom(n: u64, k: u64) -> u64 {
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..MAX_DIM {
            let e = self.get(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "d{}", i + 1)?;
            } else {
                write!(f, "d{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
