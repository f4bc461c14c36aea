//! Fractions of Laurent polynomials whose denominators are products of
//! difference factors (x_p - x_r).
//!
//! This is the coefficient ring of the extended space where D_p, R_p, T_p
//! live. Every denominator those operators ever produce has this shape, so
//! no general multivariate GCD is needed: a fraction is reduced by trial
//! division of the numerator by its denominator factors (the factors are
//! pairwise non-associate primes), and equality is decided by
//! cross-multiplication. There is no canonical form.

use crate::laurent::LaurentPoly;
use crate::perm::Perm;
use crate::scalar::Rat;
use std::collections::BTreeMap;

/// Denominator factor (p, r), p < r, standing for (x_p - x_r).
pub type DiffFactor = (usize, usize);

#[derive(Clone, Debug)]
pub struct DiffFrac {
    num: LaurentPoly,
    den: BTreeMap<DiffFactor, u32>,
}

impl DiffFrac {
    pub fn from_poly(num: LaurentPoly) -> Self {
        DiffFrac {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::from_poly(LaurentPoly::constant(nvars, c))
    }

    /// 1 / (x_p - x_r); p > r is normalized to -(1/(x_r - x_p)).
    pub fn inv_difference(nvars: usize, p: usize, r: usize) -> Self {
        Self::one(nvars).mul_inv_difference(p, r)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<DiffFactor, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True if the reduced fraction has an empty denominator.
    pub fn is_polynomial(&self) -> bool {
        self.clone().simplify().den.is_empty()
    }

    /// Trial-divides the numerator by each denominator factor. Full
    /// reduction: difference factors are pairwise non-associate primes.
    pub fn simplify(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let factors: Vec<DiffFactor> = self.den.keys().cloned().collect();
        for f in factors {
            while *self.den.get(&f).unwrap_or(&0) > 0 {
                match self.num.try_div_difference(f.0, f.1) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&f).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn neg(&self) -> Self {
        DiffFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        DiffFrac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .simplify_if_zero()
    }

    fn simplify_if_zero(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
        }
        self
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        DiffFrac {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
        .simplify()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            *den.entry(*f).or_insert(0) += m;
        }
        DiffFrac {
            num: self.num.mul(&other.num),
            den,
        }
        .simplify()
    }

    /// Multiplies by 1/(x_p - x_r), normalizing factor orientation.
    pub fn mul_inv_difference(&self, p: usize, r: usize) -> Self {
        assert!(p != r);
        let (f, sign) = if p < r {
            ((p, r), 1i64)
        } else {
            ((r, p), -1i64)
        };
        let mut den = self.den.clone();
        *den.entry(f).or_insert(0) += 1;
        DiffFrac {
            num: self.num.scale(&crate::scalar::rint(sign)),
            den,
        }
        .simplify()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // least common denominator: pointwise max of multiplicities
        let mut lcm: BTreeMap<DiffFactor, u32> = self.den.clone();
        for (f, m) in &other.den {
            let e = lcm.entry(*f).or_insert(0);
            *e = (*e).max(*m);
        }
        let lift = |frac: &DiffFrac| -> LaurentPoly {
            let mut num = frac.num.clone();
            for (f, m) in &lcm {
                let have = frac.den.get(f).cloned().unwrap_or(0);
                for _ in have..*m {
                    num = num.mul(&LaurentPoly::difference(frac.nvars(), f.0, f.1));
                }
            }
            num
        };
        DiffFrac {
            num: lift(self).add(&lift(other)),
            den: lcm,
        }
        .simplify_if_zero()
        .simplify()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Variable permutation. Each factor (p,r) maps to the factor for
    /// (s(p), s(r)), with a sign moved into the numerator when s(p) > s(r).
    pub fn perm(&self, s: &Perm) -> Self {
        let mut num = self.num.perm(s);
        let mut den = BTreeMap::new();
        for (&(p, r), &m) in &self.den {
            let (a, b) = (s.apply(p), s.apply(r));
            let f = if a < b { (a, b) } else { (b, a) };
            if a > b && m % 2 == 1 {
                num = num.neg();
            }
            *den.entry(f).or_insert(0) += m;
        }
        DiffFrac { num, den }
    }

    /// Partial derivative via the quotient rule; denominators stay in the
    /// difference-factor subring.
    pub fn partial(&self, p: usize) -> Self {
        let mut out = DiffFrac {
            num: self.num.partial(p),
            den: self.den.clone(),
        }
        .simplify_if_zero();
        for (&(a, b), &m) in &self.den {
            // d/dx_p (x_a - x_b) is 1, -1 or 0
            let c = (p == a) as i64 - (p == b) as i64;
            if c == 0 {
                continue;
            }
            let mut den = self.den.clone();
            *den.entry((a, b)).or_insert(0) += 1;
            let term = DiffFrac {
                num: self.num.scale(&crate::scalar::rint(-c * m as i64)),
                den,
            };
            out = out.add(&term);
        }
        out.simplify()
    }

    /// Exact equality by cross-multiplication.
    pub fn eq_frac(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl std::fmt::Display for DiffFrac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.num)?;
        for (&(p, r), &m) in &self.den {
            write!(f, "/(x{p}-x{r})")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}
