//! Sparse Laurent polynomials in x_1..x_N with exact rational coefficients.
//!
//! The symmetric group acts by permuting the variables, partial derivatives
//! work on negative exponents, and the divided difference
//! (1 - sigma_{pr}) / (x_p - x_r) is computed in closed form: it always maps
//! Laurent polynomials to Laurent polynomials.

use crate::perm::Perm;
use crate::scalar::{rone, Rat};
use num::traits::Zero;
use std::collections::BTreeMap;

/// Exponent vector of length nvars; index i-1 holds the exponent of x_i.
pub type ExpVec = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExpVec, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, rone())
    }

    pub fn monomial(nvars: usize, exps: ExpVec, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length != nvars");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable x_p (1-based).
    pub fn var(nvars: usize, p: usize) -> Self {
        assert!(p >= 1 && p <= nvars);
        let mut exps = vec![0; nvars];
        exps[p - 1] = 1;
        Self::monomial(nvars, exps, rone())
    }

    /// x_p - x_r.
    pub fn difference(nvars: usize, p: usize, r: usize) -> Self {
        Self::var(nvars, p).sub(&Self::var(nvars, r))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, Rat> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[i32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    fn check_compatible(&self, other: &Self) {
        // zero polynomials are compatible with anything
        if !self.is_zero() && !other.is_zero() && self.nvars != other.nvars {
            panic!("dimension error: nvars {} vs {}", self.nvars, other.nvars);
        }
    }

    pub fn add_term(&mut self, exps: ExpVec, c: Rat) {
        assert_eq!(exps.len(), self.nvars);
        let entry = self.terms.entry(exps).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            // re-borrow to remove; cheap since we just touched the key
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.nvars.max(other.nvars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: ExpVec = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiplication by the monomial x^shift.
    pub fn shift(&self, shift: &[i32]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone());
        }
        out
    }

    /// Variable permutation: x_p -> x_{s(p)}; exponent vectors become e o s^{-1}.
    pub fn perm(&self, s: &Perm) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        assert_eq!(s.n(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut exps = vec![0; self.nvars];
            for p in 1..=self.nvars {
                exps[s.apply(p) - 1] = e[p - 1];
            }
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Formal partial derivative with respect to x_p; valid on negative exponents.
    pub fn partial(&self, p: usize) -> Self {
        assert!(p >= 1 && p <= self.nvars || self.is_zero());
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[p - 1];
            if k == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[p - 1] = k - 1;
            out.add_term(exps, c.clone() * crate::scalar::rint(k as i64));
        }
        out
    }

    /// Total degree of the highest term, None for zero.
    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Exact division by (x_p - x_r); None if the division leaves a remainder.
    pub fn try_div_difference(&self, p: usize, r: usize) -> Option<LaurentPoly> {
        assert!(p != r);
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.nvars;
        // clear negative powers of x_p, divide as a polynomial in x_p, restore
        let smin = self.terms.keys().map(|e| e[p - 1]).min().unwrap();
        // coefficients of x_p^d, as polynomials in the other variables
        let mut by_deg: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e[p - 1] - smin;
            let mut rest = e.clone();
            rest[p - 1] = 0;
            by_deg
                .entry(d)
                .or_insert_with(|| LaurentPoly::zero(n))
                .add_term(rest, c.clone());
        }
        by_deg.retain(|_, v| !v.is_zero());
        let mut quot: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        while let Some((&d, _)) = by_deg.iter().next_back() {
            if d == 0 {
                return None; // nonzero remainder free of x_p
            }
            let top = by_deg.remove(&d).unwrap();
            // top * x_p^d = top * x_p^{d-1} * (x_p - x_r) + top * x_r * x_p^{d-1}
            quot.insert(d - 1, top.clone());
            let carried = top.mul(&LaurentPoly::var(n, r));
            let entry = by_deg.entry(d - 1).or_insert_with(|| LaurentPoly::zero(n));
            *entry = entry.add(&carried);
            if entry.is_zero() {
                by_deg.remove(&(d - 1));
            }
        }
        let mut out = LaurentPoly::zero(n);
        for (d, poly) in quot {
            for (e, c) in &poly.terms {
                let mut exps = e.clone();
                exps[p - 1] = d + smin;
                out.add_term(exps, c.clone());
            }
        }
        Some(out)
    }

    pub fn eq_poly(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

/// The divided difference (a - sigma_{pr}(a)) / (x_p - x_r), computed per
/// monomial in closed form. Always exact; never leaves the Laurent ring.
pub fn divided_difference(p: usize, r: usize, a: &LaurentPoly) -> LaurentPoly {
    assert!(p != r, "divided difference needs p != r");
    let n = a.nvars();
    let mut out = LaurentPoly::zero(n);
    for (e, c) in a.terms() {
        let (i, j) = (e[p - 1], e[r - 1]);
        if i == j {
            continue; // symmetric monomial: killed by 1 - sigma
        }
        // (x_p^i x_r^j - x_p^j x_r^i)/(x_p - x_r)
        //   = sign * x_p^lo x_r^lo * sum_{t=0}^{hi-lo-1} x_p^{hi-lo-1-t} x_r^t
        let (lo, hi, sign) = if i > j { (j, i, 1i64) } else { (i, j, -1i64) };
        let coeff = c.clone() * crate::scalar::rint(sign);
        for t in 0..(hi - lo) {
            let mut exps = e.clone();
            exps[p - 1] = lo + (hi - lo - 1 - t);
            exps[r - 1] = lo + t;
            out.add_term(exps, coeff.clone());
        }
    }
    out
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (p, &k) in e.iter().enumerate() {
                if k != 0 {
                    write!(f, "*x{}^{}", p + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};
    use proptest::prelude::*;

    fn x(p: usize) -> LaurentPoly {
        LaurentPoly::var(2, p)
    }

    #[test]
    fn arith_examples() {
        // (x1 - x2)(x1 + x2) = x1^2 - x2^2
        let lhs = x(1).sub(&x(2)).mul(&x(1).add(&x(2)));
        let rhs = x(1).mul(&x(1)).sub(&x(2).mul(&x(2)));
        assert_eq!(lhs, rhs);
        // x1 + (-x1) = 0 with empty term map
        assert!(x(1).add(&x(1).neg()).is_zero());
        // scale x1^-3 by 2/5
        let m = LaurentPoly::monomial(1, vec![-3], rone());
        let s = m.scale(&rat(2, 5));
        assert_eq!(s.coeff(&[-3]), rat(2, 5));
    }

    #[test]
    #[should_panic(expected = "dimension error")]
    fn mismatched_nvars_panics() {
        let a = LaurentPoly::var(2, 1);
        let b = LaurentPoly::var(3, 1);
        let _ = a.add(&b);
    }

    #[test]
    fn perm_examples() {
        let s12 = Perm::transposition(1, 2, 2);
        // s12(x1^2 x2) = x1 x2^2
        let a = LaurentPoly::monomial(2, vec![2, 1], rone());
        assert_eq!(a.perm(&s12), LaurentPoly::monomial(2, vec![1, 2], rone()));
        assert_eq!(a.perm(&Perm::identity(2)), a);
        // antisymmetry of x1 - x2
        let d = LaurentPoly::difference(2, 1, 2);
        assert_eq!(d.perm(&s12), d.neg());
    }

    #[test]
    fn partial_examples() {
        let a = LaurentPoly::monomial(2, vec![2, 1], rone());
        assert_eq!(a.partial(1), LaurentPoly::monomial(2, vec![1, 1], rint(2)));
        assert!(x(2).partial(1).is_zero());
        let inv = LaurentPoly::monomial(1, vec![-1], rone());
        assert_eq!(inv.partial(1), LaurentPoly::monomial(1, vec![-2], rint(-1)));
    }

    #[test]
    fn divided_difference_examples() {
        // dd_{12}(x1) = 1
        assert_eq!(divided_difference(1, 2, &x(1)), LaurentPoly::one(2));
        // symmetric input -> 0
        let sym = x(1).mul(&x(2)).add(&x(1).add(&x(2)));
        assert!(divided_difference(1, 2, &sym).is_zero());
        // dd_{12}(x1^2) = x1 + x2
        assert_eq!(divided_difference(1, 2, &x(1).mul(&x(1))), x(1).add(&x(2)));
        // negative exponents: dd_{12}(x2^-1) = x1^-1 x2^-1
        let a = LaurentPoly::monomial(2, vec![0, -1], rone());
        assert_eq!(
            divided_difference(1, 2, &a),
            LaurentPoly::monomial(2, vec![-1, -1], rone())
        );
    }

    #[test]
    fn truncated_geometric_identity() {
        // (x2^j - x1^j) = (x1 - x2) * sum_{i=0}^{-j-1} x1^{-i-1} x2^{i+j}, j in {-1,-2,-3}
        for j in [-1i32, -2, -3] {
            let lhs = LaurentPoly::monomial(2, vec![0, j], rone()).sub(&LaurentPoly::monomial(
                2,
                vec![j, 0],
                rone(),
            ));
            let mut sum = LaurentPoly::zero(2);
            for i in 0..(-j) {
                sum.add_term(vec![-i - 1, i + j], rone());
            }
            assert_eq!(lhs, LaurentPoly::difference(2, 1, 2).mul(&sum), "j={j}");
        }
    }

    #[test]
    fn division_by_difference() {
        let num = x(1).mul(&x(1)).sub(&x(2).mul(&x(2)));
        assert_eq!(num.try_div_difference(1, 2).unwrap(), x(1).add(&x(2)));
        assert!(x(1).try_div_difference(1, 2).is_none());
        // Laurent case: (x1^-1 - x2^-1) / (x1 - x2) = -x1^-1 x2^-1
        let num = LaurentPoly::monomial(2, vec![-1, 0], rone()).sub(&LaurentPoly::monomial(
            2,
            vec![0, -1],
            rone(),
        ));
        assert_eq!(
            num.try_div_difference(1, 2).unwrap(),
            LaurentPoly::monomial(2, vec![-1, -1], rint(-1))
        );
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(
            (proptest::collection::vec(-3i32..=3, nvars), -6i64..=6),
            0..6,
        )
        .prop_map(move |terms| {
            let mut p = LaurentPoly::zero(nvars);
            for (e, c) in terms {
                p.add_term(e, rint(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn dd_inverts_multiplication(a in arb_poly(3)) {
            // (x_p - x_r) * dd(a) + sigma_{pr}(a) = a, exactly
            for (p, r) in [(1usize, 2usize), (2, 3), (3, 1)] {
                let dd = divided_difference(p, r, &a);
                let lhs = LaurentPoly::difference(3, p, r).mul(&dd)
                    .add(&a.perm(&Perm::transposition(p, r, 3)));
                prop_assert!(lhs.eq_poly(&a));
            }
        }

        #[test]
        fn perm_is_ring_automorphism(a in arb_poly(3), b in arb_poly(3)) {
            for s in Perm::all(3) {
                prop_assert!(a.mul(&b).perm(&s).eq_poly(&a.perm(&s).mul(&b.perm(&s))));
                prop_assert!(a.add(&b).perm(&s).eq_poly(&a.perm(&s).add(&b.perm(&s))));
            }
        }

        #[test]
        fn division_roundtrip(a in arb_poly(3)) {
            let prod = a.mul(&LaurentPoly::difference(3, 1, 3));
            let q = prod.try_div_difference(1, 3).expect("exact by construction");
            prop_assert!(q.eq_poly(&a));
        }
    }
}
