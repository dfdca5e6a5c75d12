use crate::expr::Expr;
use crate::monomial::Var;

/// Sign convention for the Poisson bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    /// `{X, Y} = Σ (∂X/∂xᵢ ∂Y/∂pᵢ − ∂X/∂pᵢ ∂Y/∂xᵢ)`, so `{xᵢ, pⱼ} = δᵢⱼ`.
    Standard,
    /// `{X, Y} = Σ (∂X/∂pᵢ ∂Y/∂xᵢ − ∂X/∂xᵢ ∂Y/∂pᵢ)`, the negative of [`Convention::Standard`].
    Reversed,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Standard => "standard",
            Convention::Reversed => "reversed",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "standard" => Ok(Convention::Standard),
            "reversed" => Ok(Convention::Reversed),
            _ => Err(format!("unknown bracket convention '{s}'")),
        }
    }
}

pub fn poisson_bracket(a: &Expr, b: &Expr, conv: Convention) -> Expr {
    let n = a.dim().max(b.dim());
    let mut acc = Expr::zero(n);
    for i in 0..n {
        let ax = a.partial(Var::X(i));
        let bp = b.partial(Var::P(i));
        if !ax.is_zero() && !bp.is_zero() {
            acc.add_assign(&ax.mul(&bp));
        }
        let ap = a.partial(Var::P(i));
        let bx = b.partial(Var::X(i));
        if !ap.is_zero() && !bx.is_zero() {
            acc.add_assign(&ap.mul(&bx).neg());
        }
    }
    match conv {
        Convention::Standard => acc,
        Convention::Reversed => acc.neg(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_pair() {
        let n = 3;
        let x = Expr::x(n, 0);
        let p = Expr::p(n, 0);
        assert_eq!(poisson_bracket(&x, &p, Convention::Standard), Expr::int(n, 1));
        assert_eq!(poisson_bracket(&x, &p, Convention::Reversed), Expr::int(n, -1));
        assert!(poisson_bracket(&x, &Expr::p(n, 1), Convention::Standard).is_zero());
    }
}
