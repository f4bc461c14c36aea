//! Permutations of {1..N}, the group algebra of Sym_N, and shuffle coset
//! representatives for the parabolic subgroups Sym_K x Sym_{N-K}.
//!
//! All indices are 1-based, matching the operator formulas elsewhere in the
//! crate. sigma_{pq} denotes the transposition of p and q.

use crate::scalar::Rat;
use std::collections::BTreeMap;

/// A permutation of {1..N}, stored by its image list: `images[i-1] = s(i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from a 1-based image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v < 1 || v > n || seen[v - 1] {
                return Err(format!("not a bijection of 1..{n}: {images:?}"));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { images })
    }

    /// The transposition sigma_{pq} in Sym_N.
    pub fn transposition(p: usize, q: usize, n: usize) -> Self {
        assert!(
            p >= 1 && q >= 1 && p <= n && q <= n && p != q,
            "bad transposition ({p},{q}) in Sym_{n}"
        );
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(p - 1, q - 1);
        Perm { images }
    }

    /// Adjacent transposition sigma_p = sigma_{p,p+1}.
    pub fn adjacent(p: usize, n: usize) -> Self {
        Self::transposition(p, p + 1, n)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// self o other: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n(), "size mismatch in Perm::compose");
        Perm {
            images: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for i in 1..=self.n() {
            images[self.apply(i) - 1] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Permutes tensor positions: `result[s(i)] = word[i]`.
    pub fn apply_positions<T: Clone>(&self, word: &[T]) -> Vec<T> {
        assert_eq!(word.len(), self.n());
        let mut out = word.to_vec();
        for i in 1..=self.n() {
            out[self.apply(i) - 1] = word[i - 1].clone();
        }
        out
    }

    /// Number of inversions (Coxeter length).
    pub fn length(&self) -> usize {
        let mut len = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.images[i] > self.images[j] {
                    len += 1;
                }
            }
        }
        len
    }

    /// All N! permutations, in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Perm {
                images: images.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| images[i] < images[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
            images.swap(i, j);
            images[i + 1..].reverse();
        }
        out
    }

    /// True if the permutation preserves {1..k} (hence also {k+1..n}).
    pub fn preserves_block(&self, k: usize) -> bool {
        (1..=k).all(|i| self.apply(i) <= k)
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Minimal-length representatives of the left cosets of Sym_{K,N-K} in Sym_N:
/// the (K, N-K)-shuffles, increasing on {1..K} and on {K+1..N}. There are
/// C(N,K) of them; they index the summands of the induced module basis.
pub fn coset_reps(k: usize, n: usize) -> Vec<Perm> {
    assert!(k <= n);
    // choose the image set of {1..k}; both blocks are then filled increasingly
    let mut out = Vec::new();
    let mut choose = |mask: &[bool]| {
        let first: Vec<usize> = (1..=n).filter(|&i| mask[i - 1]).collect();
        let second: Vec<usize> = (1..=n).filter(|&i| !mask[i - 1]).collect();
        let mut images = Vec::with_capacity(n);
        images.extend(first);
        images.extend(second);
        out.push(Perm { images });
    };
    let mut mask = vec![false; n];
    fn rec(mask: &mut Vec<bool>, start: usize, left: usize, emit: &mut dyn FnMut(&[bool])) {
        if left == 0 {
            emit(mask);
            return;
        }
        for i in start..mask.len() {
            if mask.len() - i < left {
                break;
            }
            mask[i] = true;
            rec(mask, i + 1, left - 1, emit);
            mask[i] = false;
        }
    }
    rec(&mut mask, 0, k, &mut choose);
    out.sort_by(|a, b| a.images.cmp(&b.images));
    out
}

/// Splits g = tau . h with tau a (K,N-K)-shuffle and h in Sym_{K,N-K}.
pub fn shuffle_split(g: &Perm, k: usize) -> (Perm, Perm) {
    let n = g.n();
    // h sorts the values of g on each block
    let mut first: Vec<usize> = (1..=k).collect();
    first.sort_by_key(|&i| g.apply(i));
    let mut second: Vec<usize> = (k + 1..=n).collect();
    second.sort_by_key(|&i| g.apply(i));
    let mut images = Vec::with_capacity(n);
    images.extend(first);
    images.extend(second);
    let h = Perm { images };
    let tau = g.compose(&h);
    debug_assert!(h.preserves_block(k));
    (tau, h.inverse())
}

/// An element of the group algebra C Sym_N with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgElem {
    n: usize,
    terms: BTreeMap<Perm, Rat>,
}

impl GroupAlgElem {
    pub fn zero(n: usize) -> Self {
        GroupAlgElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(p: Perm) -> Self {
        let n = p.n();
        let mut terms = BTreeMap::new();
        terms.insert(p, crate::scalar::rone());
        GroupAlgElem { n, terms }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(Perm::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Perm, Rat> {
        &self.terms
    }

    pub fn add_term(&mut self, p: Perm, c: Rat) {
        use num::traits::Zero;
        let entry = self.terms.entry(p).or_insert_with(Rat::zero);
        *entry += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        use num::traits::Zero;
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&crate::scalar::rint(-1))
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "size mismatch in group algebra product");
        let mut out = Self::zero(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.compose(q), a.clone() * b.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::fmt::Display for GroupAlgElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rint, rone};

    #[test]
    fn transposition_basics() {
        let s = Perm::transposition(1, 2, 3);
        assert_eq!(s.images(), &[2, 1, 3]);
        assert_eq!(Perm::transposition(2, 1, 3), s);
        // braid: s12 s23 s12 = s13
        let s12 = Perm::transposition(1, 2, 3);
        let s23 = Perm::transposition(2, 3, 3);
        let s13 = Perm::transposition(1, 3, 3);
        assert_eq!(s12.compose(&s23).compose(&s12), s13);
    }

    #[test]
    fn conjugation_rule_small_n() {
        // sigma sigma_pq sigma^{-1} = sigma_{sigma(p) sigma(q)} for all sigma in Sym_N, N <= 4
        for n in 2..=4 {
            for sigma in Perm::all(n) {
                for p in 1..=n {
                    for q in p + 1..=n {
                        let lhs = sigma
                            .compose(&Perm::transposition(p, q, n))
                            .compose(&sigma.inverse());
                        let rhs = Perm::transposition(sigma.apply(p), sigma.apply(q), n);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn group_algebra_products() {
        let s12 = GroupAlgElem::basis(Perm::transposition(1, 2, 3));
        let s13 = GroupAlgElem::basis(Perm::transposition(1, 3, 3));
        assert_eq!(s12.multiply(&s12), GroupAlgElem::one(3));
        let lhs = s12.add(&s13).multiply(&s12);
        let mut rhs = GroupAlgElem::one(3);
        rhs.add_term(
            Perm::transposition(1, 3, 3).compose(&Perm::transposition(1, 2, 3)),
            rone(),
        );
        assert_eq!(lhs, rhs);
        assert!(s12.scale(&rint(0)).multiply(&s13).is_zero());
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn coset_reps_counts_and_edges() {
        assert_eq!(coset_reps(2, 2), vec![Perm::identity(2)]);
        let reps = coset_reps(1, 2);
        assert_eq!(reps.len(), 2);
        assert!(reps.contains(&Perm::identity(2)));
        assert!(reps.contains(&Perm::transposition(1, 2, 2)));
        assert_eq!(coset_reps(1, 3).len(), 3);
        assert_eq!(coset_reps(0, 3), vec![Perm::identity(3)]);
    }

    #[test]
    fn coset_reps_oracle_minimal_length() {
        // independent oracle: enumerate Sym_N, group into left cosets of
        // Sym_{K,N-K}, take the unique minimal-length element of each
        for n in 1..=4 {
            for k in 0..=n {
                let mut minimal: Vec<Perm> = Vec::new();
                let mut seen: Vec<Perm> = Vec::new();
                for g in Perm::all(n) {
                    if seen
                        .iter()
                        .any(|t| t.inverse().compose(&g).preserves_block(k))
                    {
                        continue;
                    }
                    // minimal element of the coset g Sym_{K,N-K}
                    let best = Perm::all(n)
                        .into_iter()
                        .filter(|c| g.inverse().compose(c).preserves_block(k))
                        .min_by_key(|c| (c.length(), c.images().to_vec()))
                        .unwrap();
                    seen.push(g.clone());
                    minimal.push(best);
                }
                minimal.sort_by(|a, b| a.images().cmp(b.images()));
                assert_eq!(coset_reps(k, n), minimal, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn coset_factorization_bijection() {
        // (rep, block element) -> product is a bijection onto Sym_N, N <= 4
        for n in 1..=4 {
            for k in 0..=n {
                let reps = coset_reps(k, n);
                assert_eq!(reps.len(), binom(n, k));
                let mut products: Vec<Perm> = Vec::new();
                for tau in &reps {
                    for h in Perm::all(n).into_iter().filter(|h| h.preserves_block(k)) {
                        products.push(tau.compose(&h));
                    }
                }
                products.sort_by(|a, b| a.images().cmp(b.images()));
                products.dedup();
                assert_eq!(products.len(), Perm::all(n).len());
            }
        }
    }

    #[test]
    fn shuffle_split_roundtrip() {
        for n in 2..=4 {
            for k in 0..=n {
                for g in Perm::all(n) {
                    let (tau, h) = shuffle_split(&g, k);
                    assert!(h.preserves_block(k));
                    assert!(coset_reps(k, n).contains(&tau));
                    assert_eq!(tau.compose(&h), g, "g={g} k={k}");
                }
            }
        }
    }
}
