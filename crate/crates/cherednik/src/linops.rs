//! Free vectors over structured basis keys and locally finite linear
//! operators, with the exact identity-checking engine used by every suite.
//!
//! An operator is a pure function from a scaled basis key to a finite vector.
//! It receives the incoming coefficient because on the extended space the
//! coefficients carry the x-dependence, and operators like d/dx_p act on them.
//! Identities are verified key by key: the spaces are infinite-dimensional
//! but every operator is locally finite, so key-wise checking is exact, with
//! no truncation and no tolerance anywhere.

use crate::fraction::DiffFrac;
use crate::report::{CheckEntry, Failure};
use crate::scalar::Rat;
use num::traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

/// Coefficient ring for a space: exact rationals, or difference fractions
/// on the extended space. Equality is semantic (cross-multiplied), not
/// representational.
pub trait Coeff: Clone + Send + Sync + std::fmt::Display + Debug + 'static {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale_rat(&self, c: &Rat) -> Self;
    fn eq_exact(&self, other: &Self) -> bool;
}

impl Coeff for Rat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        self * c
    }
    fn eq_exact(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coeff for DiffFrac {
    fn is_zero(&self) -> bool {
        DiffFrac::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        DiffFrac::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        DiffFrac::mul(self, other)
    }
    fn neg(&self) -> Self {
        DiffFrac::neg(self)
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        DiffFrac::scale_rat(self, c)
    }
    fn eq_exact(&self, other: &Self) -> bool {
        self.eq_frac(other)
    }
}

/// A finite linear combination of basis keys. No zero coefficient is stored.
#[derive(Clone, Debug)]
pub struct FreeVector<K: Ord + Clone, S: Coeff> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord + Clone, S: Coeff> Default for FreeVector<K, S> {
    fn default() -> Self {
        FreeVector {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone + Debug, S: Coeff> FreeVector<K, S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, coeff: S) -> Self {
        let mut v = Self::zero();
        v.insert_add(key, coeff);
        v
    }

    pub fn insert_add(&mut self, key: K, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, coeff);
            }
            Some(old) => {
                let sum = old.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, s) in &other.terms {
            self.insert_add(k.clone(), s.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (k, s) in &self.terms {
            out.insert_add(k.clone(), s.mul(c));
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for (k, s) in &self.terms {
            out.insert_add(k.clone(), s.scale_rat(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (k, s) in &self.terms {
            out.insert_add(k.clone(), s.neg());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &S)> {
        self.terms.iter()
    }

    pub fn get(&self, key: &K) -> Option<&S> {
        self.terms.get(key)
    }

    pub fn into_terms(self) -> BTreeMap<K, S> {
        self.terms
    }

    /// Semantic equality: same support, coefficients equal as ring elements.
    pub fn eq_exact(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .zip(other.terms.iter())
            .all(|((k1, s1), (k2, s2))| k1 == k2 && s1.eq_exact(s2))
    }

    pub fn map_keys<K2: Ord + Clone + Debug>(&self, f: impl Fn(&K) -> K2) -> FreeVector<K2, S> {
        let mut out = FreeVector::zero();
        for (k, s) in &self.terms {
            out.insert_add(f(k), s.clone());
        }
        out
    }
}

impl<K: Ord + Clone + Debug + std::fmt::Display, S: Coeff> std::fmt::Display for FreeVector<K, S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, s)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "  +  ")?;
            }
            write!(f, "{s} * {k}")?;
        }
        Ok(())
    }
}

type OpFn<K, S> = dyn Fn(&S, &K) -> FreeVector<K, S> + Send + Sync;

/// A locally finite operator with a human-readable name. Pure and immutable;
/// freely shareable between worker threads.
#[derive(Clone)]
pub struct LinOp<K: Ord + Clone, S: Coeff> {
    pub name: String,
    f: Arc<OpFn<K, S>>,
}

impl<K: Ord + Clone + Debug + 'static, S: Coeff> LinOp<K, S> {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&S, &K) -> FreeVector<K, S> + Send + Sync + 'static,
    ) -> Self {
        LinOp {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// Operator given on bare keys; the incoming coefficient multiplies
    /// through (the scalar-linear case).
    pub fn from_key_map(
        name: impl Into<String>,
        f: impl Fn(&K) -> FreeVector<K, S> + Send + Sync + 'static,
    ) -> Self {
        LinOp::new(name, move |s: &S, k: &K| f(k).scale(s))
    }

    pub fn identity() -> Self {
        LinOp::new("id", |s: &S, k: &K| FreeVector::term(k.clone(), s.clone()))
    }

    pub fn zero() -> Self {
        LinOp::new("0", |_: &S, _: &K| FreeVector::zero())
    }

    pub fn apply(&self, coeff: &S, key: &K) -> FreeVector<K, S> {
        (self.f)(coeff, key)
    }

    pub fn apply_vec(&self, v: &FreeVector<K, S>) -> FreeVector<K, S> {
        let mut out = FreeVector::zero();
        for (k, s) in v.iter() {
            out.add_assign(&self.apply(s, k));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        LinOp::new(format!("({} + {})", a.name, b.name), move |s, k| {
            let mut out = a.apply(s, k);
            out.add_assign(&b.apply(s, k));
            out
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let a = self.clone();
        LinOp::new(format!("-{}", a.name), move |s, k| a.apply(s, k).neg())
    }

    pub fn scale_rat(&self, c: Rat) -> Self {
        let a = self.clone();
        LinOp::new(format!("({})*{}", c, a.name), move |s, k| {
            a.apply(s, k).scale_rat(&c)
        })
    }

    /// self o other: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        LinOp::new(format!("{}∘{}", a.name, b.name), move |s, k| {
            a.apply_vec(&b.apply(s, k))
        })
    }

    pub fn commutator(&self, other: &Self) -> Self {
        let lhs = self.compose(other);
        let rhs = other.compose(self);
        let mut out = lhs.sub(&rhs);
        out.name = format!("[{}, {}]", self.name, other.name);
        out
    }

    pub fn sum(name: impl Into<String>, ops: Vec<LinOp<K, S>>) -> Self {
        LinOp::new(name, move |s, k| {
            let mut out = FreeVector::zero();
            for op in &ops {
                out.add_assign(&op.apply(s, k));
            }
            out
        })
    }
}

/// Applies both sides to every key and compares exactly. Evaluation is
/// parallel across keys; the failure list is ordered by key.
pub fn check_identity<K, S>(
    name: impl Into<String>,
    lhs: &LinOp<K, S>,
    rhs: &LinOp<K, S>,
    keys: &[K],
    unit: &S,
) -> CheckEntry
where
    K: Ord + Clone + Debug + std::fmt::Display + Send + Sync + 'static,
    S: Coeff,
{
    let failures: Vec<Failure> = keys
        .par_iter()
        .filter_map(|k| {
            let a = lhs.apply(unit, k);
            let b = rhs.apply(unit, k);
            if a.eq_exact(&b) {
                None
            } else {
                Some(Failure {
                    key: k.to_string(),
                    expected: b.to_string(),
                    actual: a.to_string(),
                })
            }
        })
        .collect();
    CheckEntry::new(name, keys.len() as u64, failures)
}

/// The bounded-basis sampling policy: exhaustive when the basis is small
/// enough to serve as a proof-by-enumeration, a seeded reproducible sample
/// otherwise.
pub const EXHAUSTIVE_THRESHOLD: usize = 10_000;

pub fn exhaustive_or_sample<K: Clone>(all: Vec<K>, count: usize, seed: u64) -> Vec<K> {
    assert!(!all.is_empty(), "empty bounded basis");
    assert!(count >= 1);
    if all.len() <= EXHAUSTIVE_THRESHOLD {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, all.len(), count.min(all.len())).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| all[i].clone()).collect()
}

/// Seeded sample of exactly `count` keys (or all of them if fewer), used
/// where a criterion pins the sample size rather than the basis.
pub fn sample_exact<K: Clone>(all: Vec<K>, count: usize, seed: u64) -> Vec<K> {
    assert!(!all.is_empty(), "empty bounded basis");
    if all.len() <= count {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, all.len(), count).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| all[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rint, rone};

    #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
    struct Key(Vec<u8>, usize);

    impl std::fmt::Display for Key {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            write!(f, "({:?}, {})", self.0, self.1)
        }
    }

    #[test]
    fn op_algebra_basics() {
        let a: LinOp<Key, Rat> = LinOp::from_key_map("a", |k: &Key| {
            let mut w = k.0.clone();
            w.reverse();
            FreeVector::term(Key(w, k.1), rint(2))
        });
        let key: Key = Key(vec![1, 2], 0);
        // commutator(A, A) = 0
        assert!(a.commutator(&a).apply(&rone(), &key).is_zero());
        // compose(id, A) = A
        let lhs = LinOp::identity().compose(&a).apply(&rone(), &key);
        assert!(lhs.eq_exact(&a.apply(&rone(), &key)));
        // A + (-1)A = 0
        assert!(a.add(&a.scale_rat(rint(-1))).apply(&rone(), &key).is_zero());
    }

    #[test]
    fn check_identity_reports_witness() {
        let zero: LinOp<Key, Rat> = LinOp::zero();
        let id: LinOp<Key, Rat> = LinOp::identity();
        let keys: Vec<Key> = vec![Key(vec![1], 0), Key(vec![2], 0)];
        let ok = check_identity("zero=zero", &zero, &zero, &keys, &rone());
        assert!(ok.passed());
        assert_eq!(ok.instances, 2);
        let bad = check_identity("zero=id", &zero, &id, &keys, &rone());
        assert_eq!(bad.failure_count, 2);
        assert_eq!(bad.failures[0].key, "([1], 0)".to_string());
    }

    #[test]
    fn sampling_deterministic() {
        let all: Vec<u32> = (0..50_000).collect();
        let s1 = exhaustive_or_sample(all.clone(), 100, 7);
        let s2 = exhaustive_or_sample(all.clone(), 100, 7);
        assert_eq!(s1, s2);
        assert_eq!(s1.len(), 100);
        let s3 = exhaustive_or_sample(all.clone(), 100, 8);
        assert_ne!(s1, s3);
        // below threshold: exhaustive
        let small: Vec<u32> = (0..500).collect();
        assert_eq!(exhaustive_or_sample(small.clone(), 10, 1).len(), 500);
    }
}
