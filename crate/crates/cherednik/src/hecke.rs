//! The degenerate affine Hecke algebra H_N acting on (C^m)^(x N) (x) U.
//!
//! H_N is generated by C Sym_N and commuting elements u_1..u_N with
//!   sigma_p u_q = u_q sigma_p            (q != p, p+1)
//!   sigma_p u_p = u_{p+1} sigma_p - 1.
//! We work with z_p = u_p - sigma_{1p} - ... - sigma_{p-1,p}, which satisfy
//!   sigma z_p sigma^{-1} = z_{sigma(p)},   [z_p, z_q] = sigma_{pq} (z_p - z_q).
//! On the tensor space z_p acts as sum_ab E_ab^(p) (x) E_ba; the sl variant
//! subtracts (1/m) id (x) I and uses only the sl_m-structure of U. H_N is
//! never materialized abstractly: every claim is checked in representations.

use crate::glmod::{GlBasisElem, GlModule};
use crate::linops::{check_identity, FreeVector, LinOp};
use crate::perm::{GroupAlgElem, Perm};
use crate::report::CheckEntry;
use crate::scalar::{rat, rone, Rat};
use std::sync::Arc;

/// Basis key of (C^m)^(x N) (x) U: tensor word and base-module index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorKey {
    pub word: Vec<u8>,
    pub base: usize,
}

impl std::fmt::Display for TensorKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e{:?}(x)u{}", self.word, self.base)
    }
}

pub type TensorOp = LinOp<TensorKey, Rat>;
pub type TensorVec = FreeVector<TensorKey, Rat>;

/// One family E_N^f(U) (gl) or F_N^f(U) (sl): provides handles for every
/// sigma_p, z_p and u_p = z_p + sum_{q<p} sigma_{qp} + f.
#[derive(Clone)]
pub struct HeckeFamily {
    pub m: usize,
    pub n: usize,
    pub module: Arc<GlModule>,
    pub sl_correction: bool,
    pub shift: Rat,
}

impl HeckeFamily {
    pub fn new(module: Arc<GlModule>, n: usize, sl_correction: bool, shift: Rat) -> Self {
        HeckeFamily {
            m: module.m(),
            n,
            module,
            sl_correction,
            shift,
        }
    }

    pub fn basis(&self) -> Vec<TensorKey> {
        let mut keys = Vec::new();
        let mut word = vec![1u8; self.n];
        loop {
            for base in 0..self.module.dim() {
                keys.push(TensorKey {
                    word: word.clone(),
                    base,
                });
            }
            let Some(i) = (0..self.n).rev().find(|&i| (word[i] as usize) < self.m) else {
                break;
            };
            word[i] += 1;
            for w in word.iter_mut().skip(i + 1) {
                *w = 1;
            }
        }
        keys
    }

    /// sigma acting by permutation of the N tensor factors.
    pub fn sigma_op(&self, s: &Perm) -> TensorOp {
        let s = s.clone();
        LinOp::from_key_map(format!("sigma{s}"), move |k: &TensorKey| {
            FreeVector::term(
                TensorKey {
                    word: s.apply_positions(&k.word),
                    base: k.base,
                },
                rone(),
            )
        })
    }

    /// z_p as sum_ab E_ab^(p) (x) E_ba, minus (1/m) id (x) I in the sl variant.
    pub fn z_op(&self, p: usize) -> TensorOp {
        assert!(p >= 1 && p <= self.n);
        let module = self.module.clone();
        let m = self.m;
        let sl = self.sl_correction;
        LinOp::from_key_map(format!("z{p}"), move |k: &TensorKey| {
            let mut out = FreeVector::zero();
            let b = k.word[p - 1] as usize;
            for a in 1..=m {
                for (row, c) in module.apply(b, a, k.base) {
                    let mut word = k.word.clone();
                    word[p - 1] = a as u8;
                    out.insert_add(TensorKey { word, base: row }, c);
                }
            }
            if sl {
                for (row, c) in module.apply_trace(k.base) {
                    out.insert_add(
                        TensorKey {
                            word: k.word.clone(),
                            base: row,
                        },
                        -c * rat(1, m as i64),
                    );
                }
            }
            out
        })
    }

    /// u_p = z_p + sigma_{1p} + ... + sigma_{p-1,p} + f.
    pub fn u_op(&self, p: usize) -> TensorOp {
        let mut ops = vec![self.z_op(p)];
        for q in 1..p {
            ops.push(self.sigma_op(&Perm::transposition(q, p, self.n)));
        }
        if !num::traits::Zero::is_zero(&self.shift) {
            ops.push(TensorOp::identity().scale_rat(self.shift.clone()));
        }
        TensorOp::sum(format!("u{p}"), ops)
    }

    /// The diagonal action of a gl_m (or sl_m) basis element on all factors.
    pub fn diag_op(&self, elem: GlBasisElem) -> TensorOp {
        let module = self.module.clone();
        let m = self.m;
        let n = self.n;
        LinOp::from_key_map(format!("diag({elem})"), move |k: &TensorKey| {
            let mut out = FreeVector::zero();
            for ((a, b), coeff) in elem.units(m) {
                for p in 1..=n {
                    if k.word[p - 1] as usize == b {
                        let mut word = k.word.clone();
                        word[p - 1] = a as u8;
                        out.insert_add(TensorKey { word, base: k.base }, coeff.clone());
                    }
                }
                for (row, c) in module.apply(a, b, k.base) {
                    out.insert_add(
                        TensorKey {
                            word: k.word.clone(),
                            base: row,
                        },
                        coeff.clone() * c,
                    );
                }
            }
            out
        })
    }
}

/// The evaluation homomorphism H_N -> C Sym_N: u_p maps to
/// sigma_{1p} + ... + sigma_{p-1,p} (and z_p maps to 0).
pub fn eval_hom_u(n: usize, p: usize) -> GroupAlgElem {
    assert!(p >= 1 && p <= n);
    let mut out = GroupAlgElem::zero(n);
    for q in 1..p {
        out = out.add(&GroupAlgElem::basis(Perm::transposition(q, p, n)));
    }
    out
}

/// Image of z_p = u_p - sigma_{1p} - ... - sigma_{p-1,p} under the
/// evaluation homomorphism; identically zero.
pub fn eval_hom_z(n: usize, p: usize) -> GroupAlgElem {
    let mut out = eval_hom_u(n, p);
    for q in 1..p {
        out = out.add(&GroupAlgElem::basis(Perm::transposition(q, p, n)).neg());
    }
    out
}

/// Verifies, exactly on every key: the cross relations for sigma_p and u_q,
/// the conjugation rule for z_p, the z-commutator relation, and commutation
/// with the diagonal Lie algebra action (gl_m generators, or sl_m generators
/// in the sl variant).
pub fn hecke_relation_suite(family: &HeckeFamily, keys: &[TensorKey]) -> Vec<CheckEntry> {
    let n = family.n;
    let one = rone();
    let mut entries = Vec::new();
    let u: Vec<TensorOp> = (1..=n).map(|p| family.u_op(p)).collect();
    let z: Vec<TensorOp> = (1..=n).map(|p| family.z_op(p)).collect();
    let sig: Vec<TensorOp> = (1..n)
        .map(|p| family.sigma_op(&Perm::adjacent(p, n)))
        .collect();

    for p in 1..n {
        for q in 1..=n {
            if q == p || q == p + 1 {
                continue;
            }
            entries.push(check_identity(
                format!("sigma_{p} u_{q} commute"),
                &sig[p - 1].compose(&u[q - 1]),
                &u[q - 1].compose(&sig[p - 1]),
                keys,
                &one,
            ));
        }
        entries.push(check_identity(
            format!("sigma_{p} u_{p} shift relation"),
            &sig[p - 1].compose(&u[p - 1]),
            &u[p].compose(&sig[p - 1]).sub(&TensorOp::identity()),
            keys,
            &one,
        ));
    }
    // conjugation by the generating set sigma_1..sigma_{N-1} suffices
    for q in 1..n {
        let s = Perm::adjacent(q, n);
        for p in 1..=n {
            entries.push(check_identity(
                format!("conjugation sigma_{q} z_{p}"),
                &sig[q - 1].compose(&z[p - 1]).compose(&sig[q - 1]),
                &z[s.apply(p) - 1],
                keys,
                &one,
            ));
        }
    }
    for p in 1..=n {
        for q in p + 1..=n {
            let spq = family.sigma_op(&Perm::transposition(p, q, n));
            entries.push(check_identity(
                format!("[z_{p}, z_{q}] = sigma (z_{p} - z_{q})"),
                &z[p - 1].commutator(&z[q - 1]),
                &spq.compose(&z[p - 1].sub(&z[q - 1])),
                keys,
                &one,
            ));
        }
    }
    let gens = GlBasisElem::all(family.m, !family.sl_correction);
    for elem in gens {
        let d = family.diag_op(elem);
        for p in 1..=n {
            entries.push(check_identity(
                format!("diag [z_{p}, {elem}]"),
                &z[p - 1].commutator(&d),
                &TensorOp::zero(),
                keys,
                &one,
            ));
        }
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glmod::{make_natural, make_onedim, make_trivial};
    use crate::scalar::rint;

    fn key(word: Vec<u8>, base: usize) -> TensorKey {
        TensorKey { word, base }
    }

    #[test]
    fn en_z_hand_values() {
        // m=2, N=2, U=natural(2): Z_1(e_1 (x) e_2 (x) e_2) = e_2 (x) e_2 (x) e_1
        let fam = HeckeFamily::new(make_natural(2), 2, false, rint(0));
        let out = fam.z_op(1).apply(&rone(), &key(vec![1, 2], 1));
        let mut expected = TensorVec::zero();
        expected.insert_add(key(vec![2, 2], 0), rone());
        assert!(out.eq_exact(&expected));

        // m=1 one-dimensional with weight 3: Z_p acts as the scalar 3
        let fam = HeckeFamily::new(make_onedim(1, &[rint(3)]).unwrap(), 2, false, rint(0));
        let out = fam.z_op(2).apply(&rone(), &key(vec![1, 1], 0));
        assert!(out.eq_exact(&FreeVector::term(key(vec![1, 1], 0), rint(3))));

        // trivial module: Z_p = 0
        let fam = HeckeFamily::new(make_trivial(2), 2, false, rint(0));
        assert!(fam.z_op(1).apply(&rone(), &key(vec![1, 2], 0)).is_zero());
    }

    #[test]
    fn fn_z_hand_values() {
        // sl variant on natural(2): subtract (1/2) of the same key (I acts as 1)
        let fam = HeckeFamily::new(make_natural(2), 2, true, rint(0));
        let out = fam.z_op(1).apply(&rone(), &key(vec![1, 2], 1));
        let mut expected = TensorVec::zero();
        expected.insert_add(key(vec![2, 2], 0), rone());
        expected.insert_add(key(vec![1, 2], 1), rat(-1, 2));
        assert!(out.eq_exact(&expected));

        // trivial module: I acts as 0, so the sl z is still 0
        let fam = HeckeFamily::new(make_trivial(2), 2, true, rint(0));
        assert!(fam.z_op(1).apply(&rone(), &key(vec![1, 1], 0)).is_zero());

        // m=1: z^{sl} = 0 on any one-dimensional module
        let fam = HeckeFamily::new(make_onedim(1, &[rint(3)]).unwrap(), 2, true, rint(0));
        assert!(fam.z_op(1).apply(&rone(), &key(vec![1, 1], 0)).is_zero());
    }

    #[test]
    fn u_op_shift_and_sums() {
        // f=0, p=1: u_1 = z_1
        let fam = HeckeFamily::new(make_natural(2), 2, false, rint(0));
        let k = key(vec![2, 1], 0);
        assert!(fam
            .u_op(1)
            .apply(&rone(), &k)
            .eq_exact(&fam.z_op(1).apply(&rone(), &k)));
        // trivial module, f=0, p=2: u_2 = sigma_12 action
        let fam = HeckeFamily::new(make_trivial(2), 2, false, rint(0));
        let out = fam.u_op(2).apply(&rone(), &key(vec![1, 2], 0));
        assert!(out.eq_exact(&FreeVector::term(key(vec![2, 1], 0), rone())));
        // f = -m shifts by -m * id
        let fam = HeckeFamily::new(make_trivial(2), 2, false, rint(-2));
        let out = fam.u_op(1).apply(&rone(), &key(vec![1, 2], 0));
        assert!(out.eq_exact(&FreeVector::term(key(vec![1, 2], 0), rint(-2))));
    }

    #[test]
    fn eval_hom_values() {
        assert!(eval_hom_u(3, 1).is_zero());
        assert_eq!(
            eval_hom_u(2, 2),
            GroupAlgElem::basis(Perm::transposition(1, 2, 2))
        );
        for p in 1..=3 {
            assert!(eval_hom_z(3, p).is_zero());
        }
    }

    #[test]
    fn relation_suite_small() {
        let fam = HeckeFamily::new(make_natural(2), 2, false, rint(0));
        let keys = fam.basis();
        assert_eq!(keys.len(), 8);
        for entry in hecke_relation_suite(&fam, &keys) {
            assert!(entry.passed(), "{}: {:?}", entry.name, entry.failures);
        }
    }

    #[test]
    fn relation_suite_sl_variant() {
        let fam = HeckeFamily::new(make_natural(2), 3, true, rat(3, 2));
        let keys = fam.basis();
        assert_eq!(keys.len(), 16);
        for entry in hecke_relation_suite(&fam, &keys) {
            assert!(entry.passed(), "{}: {:?}", entry.name, entry.failures);
        }
    }

    #[test]
    fn z_commutator_matrix_oracle() {
        // independent check of [Z_1, Z_2] = sigma_12 (Z_1 - Z_2) on the
        // 8-dimensional space: materialize dense matrices straight from the
        // formula sum_ab E_ab^(p) (x) E_ba and compare matrix products
        let u = make_natural(2);
        let fam = HeckeFamily::new(u.clone(), 2, false, rint(0));
        let keys = fam.basis();
        let index = |k: &TensorKey| keys.iter().position(|x| x == k).unwrap();
        let dense = |p: usize| -> Vec<Vec<Rat>> {
            let mut mat = vec![vec![rint(0); 8]; 8];
            for (col, k) in keys.iter().enumerate() {
                for a in 1..=2usize {
                    for b in 1..=2usize {
                        if k.word[p - 1] as usize != b {
                            continue;
                        }
                        let mut word = k.word.clone();
                        word[p - 1] = a as u8;
                        for (row, c) in u.apply(b, a, k.base) {
                            mat[index(&TensorKey {
                                word: word.clone(),
                                base: row,
                            })][col] += c;
                        }
                    }
                }
            }
            mat
        };
        let sigma = {
            let mut mat = vec![vec![rint(0); 8]; 8];
            for (col, k) in keys.iter().enumerate() {
                let word = vec![k.word[1], k.word[0]];
                mat[index(&TensorKey { word, base: k.base })][col] = rone();
            }
            mat
        };
        let mul = |x: &Vec<Vec<Rat>>, y: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
            let mut out = vec![vec![rint(0); 8]; 8];
            for i in 0..8 {
                for k in 0..8 {
                    for j in 0..8 {
                        out[i][j] += x[i][k].clone() * y[k][j].clone();
                    }
                }
            }
            out
        };
        let (z1, z2) = (dense(1), dense(2));
        let comm = mul(&z1, &z2)
            .iter()
            .zip(mul(&z2, &z1))
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| a.clone() - b).collect())
            .collect::<Vec<Vec<Rat>>>();
        let diff: Vec<Vec<Rat>> = z1
            .iter()
            .zip(&z2)
            .map(|(r1, r2)| {
                r1.iter()
                    .zip(r2)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        let rhs = mul(&sigma, &diff);
        assert_eq!(comm, rhs);

        // and the LinOp path agrees with the matrix oracle per key
        let zop = fam.z_op(1).commutator(&fam.z_op(2));
        for (col, k) in keys.iter().enumerate() {
            let out = zop.apply(&rone(), k);
            for (row, key2) in keys.iter().enumerate() {
                let got = out.get(key2).cloned().unwrap_or_else(|| rint(0));
                assert_eq!(got, comm[row][col]);
            }
        }
    }

    #[test]
    fn perturbed_relation_fails() {
        // negative control: a deliberately wrong rhs produces a witness
        let fam = HeckeFamily::new(make_natural(2), 2, false, rint(0));
        let keys = fam.basis();
        let z1 = fam.z_op(1);
        let z2 = fam.z_op(2);
        let wrong = fam
            .sigma_op(&Perm::transposition(1, 2, 2))
            .compose(&z1.add(&z2));
        let entry = check_identity(
            "perturbed z-commutator",
            &z1.commutator(&z2),
            &wrong,
            &keys,
            &rone(),
        );
        assert!(!entry.passed());
        assert!(!entry.failures.is_empty());
    }
}
