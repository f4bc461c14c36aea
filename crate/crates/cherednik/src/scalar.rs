//! Exact rational scalars.
//!
//! Every coefficient in this crate is a `Rat`: an arbitrary-precision rational
//! kept in lowest terms with a positive denominator. The parameter kappa of the
//! Cherednik algebras is an ordinary `Rat` chosen per run; every identity the
//! harness checks is polynomial of degree <= 2 in kappa, so running a suite at
//! three distinct kappa values certifies it for all kappa.

use num::bigint::BigInt;
use num::traits::{One, Zero};

pub type Rat = num::rational::BigRational;

/// n/d as an exact rational. Panics on d = 0.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rzero() -> Rat {
    Rat::zero()
}

pub fn rone() -> Rat {
    Rat::one()
}

/// Parses "p/q" or "p" (arbitrary precision, optional sign).
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| format!("bad rational {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("5/2").unwrap(), rat(5, 2));
        assert_eq!(parse_rat("-7/3").unwrap(), rat(-7, 3));
        assert_eq!(parse_rat("4").unwrap(), rint(4));
        assert_eq!(parse_rat("-4/2").unwrap(), rint(-2));
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn reduced_invariants() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(rat(0, 7), rzero());
        assert_eq!(format!("{}", rat(-3, 2)), "-3/2");
        assert_eq!(format!("{}", rint(5)), "5");
    }
}
