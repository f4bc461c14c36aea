//! Dunkl-operator representations of the rational Cherednik algebra R_N on
//! C[x_1..x_N] and of the trigonometric Cherednik algebra T_N on Laurent
//! polynomials.
//!
//! The Dunkl operator is  kappa d_p + sum_{r!=p} (1/(x_p-x_r))(1-sigma_{pr});
//! divided differences keep everything polynomial. In the trigonometric case
//! z_p acts as  kappa x_p d_p + sum_{r!=p} (x_p/(x_p-x_r))(1-sigma_{pr}) and
//! u_p = z_p + sum_{r<p} sigma_{pr}. The embedding H_N -> R_N sends
//! z_p to x_p y_p.

use crate::laurent::{divided_difference, LaurentPoly};
use crate::linops::{check_identity, FreeVector, LinOp};
use crate::perm::Perm;
use crate::report::CheckEntry;
use crate::scalar::{rint, rone, Rat};

/// A (Laurent) monomial by its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mono(pub Vec<i32>);

impl std::fmt::Display for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x^{:?}", self.0)
    }
}

pub type PolyOp = LinOp<Mono, Rat>;
pub type PolyVec = FreeVector<Mono, Rat>;

pub fn poly_to_vec(p: &LaurentPoly) -> PolyVec {
    let mut out = FreeVector::zero();
    for (e, c) in p.terms() {
        out.insert_add(Mono(e.clone()), c.clone());
    }
    out
}

pub fn mono_poly(n: usize, e: &[i32]) -> LaurentPoly {
    LaurentPoly::monomial(n, e.to_vec(), rone())
}

/// Multiplication by x_p^k.
pub fn x_mult(p: usize, k: i32) -> PolyOp {
    LinOp::from_key_map(format!("x{p}^{k}"), move |m: &Mono| {
        let mut e = m.0.clone();
        e[p - 1] += k;
        FreeVector::term(Mono(e), rone())
    })
}

/// The permutation action on the variables.
pub fn var_perm(s: &Perm) -> PolyOp {
    let s = s.clone();
    LinOp::from_key_map(format!("sigma{s}"), move |m: &Mono| {
        let mut e = vec![0; m.0.len()];
        for p in 1..=m.0.len() {
            e[s.apply(p) - 1] = m.0[p - 1];
        }
        FreeVector::term(Mono(e), rone())
    })
}

/// The Dunkl operator for y_p; degree non-increasing on polynomials.
pub fn dunkl_y(n: usize, kappa: &Rat, p: usize) -> PolyOp {
    assert!(p >= 1 && p <= n);
    let kappa = kappa.clone();
    LinOp::from_key_map(format!("y{p}"), move |m: &Mono| {
        let mut out = FreeVector::zero();
        let ep = m.0[p - 1];
        if ep != 0 {
            let mut e = m.0.clone();
            e[p - 1] -= 1;
            out.insert_add(Mono(e), kappa.clone() * rint(ep as i64));
        }
        for r in 1..=n {
            if r != p {
                out.add_assign(&poly_to_vec(&divided_difference(p, r, &mono_poly(n, &m.0))));
            }
        }
        out
    })
}

/// The operator for z_p in T_N acting on Laurent polynomials.
pub fn trig_z(n: usize, kappa: &Rat, p: usize) -> PolyOp {
    assert!(p >= 1 && p <= n);
    let kappa = kappa.clone();
    LinOp::from_key_map(format!("z{p}"), move |m: &Mono| {
        let mut out = FreeVector::zero();
        let ep = m.0[p - 1];
        if ep != 0 {
            out.insert_add(Mono(m.0.clone()), kappa.clone() * rint(ep as i64));
        }
        for r in 1..=n {
            if r != p {
                let dd = divided_difference(p, r, &mono_poly(n, &m.0));
                for (e, c) in dd.terms() {
                    let mut shifted = e.clone();
                    shifted[p - 1] += 1;
                    out.insert_add(Mono(shifted), c.clone());
                }
            }
        }
        out
    })
}

/// u_p = z_p + sum_{r<p} sigma_{pr} on Laurent polynomials.
pub fn trig_u(n: usize, kappa: &Rat, p: usize) -> PolyOp {
    let mut ops = vec![trig_z(n, kappa, p)];
    for r in 1..p {
        ops.push(var_perm(&Perm::transposition(p, r, n)));
    }
    PolyOp::sum(format!("u{p}"), ops)
}

/// All monomials in N variables with nonnegative exponents and total degree
/// at most `bound`.
pub fn poly_monomials(n: usize, bound: i32) -> Vec<Mono> {
    let mut out = Vec::new();
    fn rec(e: &mut Vec<i32>, pos: usize, left: i32, out: &mut Vec<Mono>) {
        if pos == e.len() {
            out.push(Mono(e.clone()));
            return;
        }
        for v in 0..=left {
            e[pos] = v;
            rec(e, pos + 1, left - v, out);
        }
        e[pos] = 0;
    }
    rec(&mut vec![0; n], 0, bound, &mut out);
    out.sort();
    out
}

/// All Laurent monomials with every exponent in [lo, hi].
pub fn laurent_window(n: usize, lo: i32, hi: i32) -> Vec<Mono> {
    assert!(lo <= hi, "empty exponent window");
    let mut out = vec![Mono(vec![])];
    for _ in 0..n {
        let mut next = Vec::new();
        for m in &out {
            for v in lo..=hi {
                let mut e = m.0.clone();
                e.push(v);
                next.push(Mono(e));
            }
        }
        out = next;
    }
    out.sort();
    out
}

struct RnOps {
    n: usize,
    kappa: Rat,
    y: Vec<PolyOp>,
}

impl RnOps {
    fn new(n: usize, kappa: &Rat, trig: bool) -> Self {
        let y = (1..=n)
            .map(|p| {
                if trig {
                    trig_z(n, kappa, p)
                } else {
                    dunkl_y(n, kappa, p)
                }
            })
            .collect();
        RnOps {
            n,
            kappa: kappa.clone(),
            y,
        }
    }
}

/// Relation suite for the Dunkl representation of R_N, on all monomials of
/// total degree <= `degree_bound`: the conjugation rule, [y_p, x_q] = -s_pq,
/// [y_p, x_p] = kappa + sum s_pr, and pairwise commutativity.
pub fn rational_relation_suite(n: usize, kappa: &Rat, degree_bound: i32) -> Vec<CheckEntry> {
    let keys = poly_monomials(n, degree_bound);
    let ops = RnOps::new(n, kappa, false);
    let mut entries = relation_entries_rational(&ops, &keys);
    entries.extend(commutativity_entries(&ops, &keys, "y"));
    entries
}

fn relation_entries_rational(ops: &RnOps, keys: &[Mono]) -> Vec<CheckEntry> {
    let n = ops.n;
    let one = rone();
    let mut entries = Vec::new();
    for q in 1..n {
        let s = Perm::adjacent(q, n);
        let sop = var_perm(&s);
        for p in 1..=n {
            entries.push(check_identity(
                format!("conjugation sigma_{q} y_{p}"),
                &sop.compose(&ops.y[p - 1]).compose(&sop),
                &ops.y[s.apply(p) - 1],
                keys,
                &one,
            ));
        }
    }
    for p in 1..=n {
        for q in 1..=n {
            if q != p {
                entries.push(check_identity(
                    format!("[y_{p}, x_{q}] = -sigma"),
                    &ops.y[p - 1].commutator(&x_mult(q, 1)),
                    &var_perm(&Perm::transposition(p, q, n)).neg(),
                    keys,
                    &one,
                ));
            }
        }
        let mut rhs = vec![PolyOp::identity().scale_rat(ops.kappa.clone())];
        for r in 1..=n {
            if r != p {
                rhs.push(var_perm(&Perm::transposition(p, r, n)));
            }
        }
        entries.push(check_identity(
            format!("[y_{p}, x_{p}] = kappa + sum sigma"),
            &ops.y[p - 1].commutator(&x_mult(p, 1)),
            &PolyOp::sum("kappa + sum sigma", rhs),
            keys,
            &one,
        ));
    }
    entries
}

fn commutativity_entries(ops: &RnOps, keys: &[Mono], label: &str) -> Vec<CheckEntry> {
    let mut entries = Vec::new();
    for p in 1..=ops.n {
        for q in p + 1..=ops.n {
            entries.push(check_identity(
                format!("[{label}_{p}, {label}_{q}] = 0"),
                &ops.y[p - 1].commutator(&ops.y[q - 1]),
                &PolyOp::zero(),
                keys,
                &rone(),
            ));
        }
    }
    entries
}

/// T_N relation suite on the Laurent window: the z/x and u/x commutation
/// relations, pairwise commutativity of the u_p, and the identification of
/// the z_p action with x_p composed with the Dunkl operator.
pub fn trig_relation_suite(n: usize, kappa: &Rat, lo: i32, hi: i32) -> Vec<CheckEntry> {
    let keys = laurent_window(n, lo, hi);
    let one = rone();
    let z: Vec<PolyOp> = (1..=n).map(|p| trig_z(n, kappa, p)).collect();
    let u: Vec<PolyOp> = (1..=n).map(|p| trig_u(n, kappa, p)).collect();
    let mut entries = Vec::new();
    let spq = |p: usize, q: usize| var_perm(&Perm::transposition(p, q, n));
    for p in 1..=n {
        for q in 1..=n {
            if q != p {
                entries.push(check_identity(
                    format!("[z_{p}, x_{q}] = -x_{p} sigma"),
                    &z[p - 1].commutator(&x_mult(q, 1)),
                    &x_mult(p, 1).compose(&spq(p, q)).neg(),
                    keys.as_slice(),
                    &one,
                ));
            }
        }
        let mut rhs = vec![x_mult(p, 1).scale_rat(kappa.clone())];
        for r in 1..=n {
            if r != p {
                rhs.push(x_mult(p, 1).compose(&spq(p, r)));
            }
        }
        entries.push(check_identity(
            format!("[z_{p}, x_{p}] = kappa x + sum x sigma"),
            &z[p - 1].commutator(&x_mult(p, 1)),
            &PolyOp::sum("kappa x_p + sum x_p sigma", rhs),
            keys.as_slice(),
            &one,
        ));
    }
    for p in 1..=n {
        for q in 1..p {
            entries.push(check_identity(
                format!("[u_{p}, x_{q}] = -x_{q} sigma (q<p)"),
                &u[p - 1].commutator(&x_mult(q, 1)),
                &x_mult(q, 1).compose(&spq(p, q)).neg(),
                keys.as_slice(),
                &one,
            ));
        }
        for q in p + 1..=n {
            entries.push(check_identity(
                format!("[u_{p}, x_{q}] = -x_{p} sigma (q>p)"),
                &u[p - 1].commutator(&x_mult(q, 1)),
                &x_mult(p, 1).compose(&spq(p, q)).neg(),
                keys.as_slice(),
                &one,
            ));
        }
        let mut rhs = vec![x_mult(p, 1).scale_rat(kappa.clone())];
        for r in 1..p {
            rhs.push(x_mult(r, 1).compose(&spq(p, r)));
        }
        for r in p + 1..=n {
            rhs.push(x_mult(p, 1).compose(&spq(p, r)));
        }
        entries.push(check_identity(
            format!("[u_{p}, x_{p}] = kappa x + mixed sigma sum"),
            &u[p - 1].commutator(&x_mult(p, 1)),
            &PolyOp::sum("rhs", rhs),
            keys.as_slice(),
            &one,
        ));
    }
    for p in 1..=n {
        for q in p + 1..=n {
            entries.push(check_identity(
                format!("[u_{p}, u_{q}] = 0"),
                &u[p - 1].commutator(&u[q - 1]),
                &PolyOp::zero(),
                keys.as_slice(),
                &one,
            ));
        }
        // the trigonometric z_p equals x_p composed with the Dunkl
        // operator extended to Laurent polynomials
        entries.push(check_identity(
            format!("z_{p} = x_{p} y_{p}"),
            &z[p - 1],
            &x_mult(p, 1).compose(&dunkl_y(n, kappa, p)),
            keys.as_slice(),
            &one,
        ));
        // u_p - z_p = sum_{r<p} sigma_{pr}, the definitional shift
        let shift: Vec<PolyOp> = (1..p).map(|r| spq(p, r)).collect();
        entries.push(check_identity(
            format!("u_{p} - z_{p} shift"),
            &u[p - 1].sub(&z[p - 1]),
            &PolyOp::sum("sum sigma", shift),
            keys.as_slice(),
            &one,
        ));
    }
    entries
}

/// Embedding H_N -> R_N: verifies that x_p y_p satisfies the conjugation
/// rule and the z-commutator relation in the Dunkl representation, on all
/// monomials of total degree <= `degree_bound`.
pub fn embedding_check(n: usize, kappa: &Rat, degree_bound: i32) -> Vec<CheckEntry> {
    let keys = poly_monomials(n, degree_bound);
    let one = rone();
    let w: Vec<PolyOp> = (1..=n)
        .map(|p| x_mult(p, 1).compose(&dunkl_y(n, kappa, p)))
        .collect();
    let mut entries = Vec::new();
    for q in 1..n {
        let s = Perm::adjacent(q, n);
        let sop = var_perm(&s);
        for p in 1..=n {
            entries.push(check_identity(
                format!("embed conjugation sigma_{q} (xy)_{p}"),
                &sop.compose(&w[p - 1]).compose(&sop),
                &w[s.apply(p) - 1],
                keys.as_slice(),
                &one,
            ));
        }
    }
    for p in 1..=n {
        for q in p + 1..=n {
            entries.push(check_identity(
                format!("embed z-commutator (xy)_{p} (xy)_{q}"),
                &w[p - 1].commutator(&w[q - 1]),
                &var_perm(&Perm::transposition(p, q, n)).compose(&w[p - 1].sub(&w[q - 1])),
                keys.as_slice(),
                &one,
            ));
        }
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn apply(op: &PolyOp, e: &[i32]) -> PolyVec {
        op.apply(&rone(), &Mono(e.to_vec()))
    }

    #[test]
    fn dunkl_frozen_values() {
        let kappa = rat(5, 2);
        for n in 2..=3 {
            let y1 = dunkl_y(n, &kappa, 1);
            // y_1(1) = 0
            assert!(apply(&y1, &vec![0; n]).is_zero());
            // y_1(x_1) = kappa + (N-1)
            let mut e = vec![0; n];
            e[0] = 1;
            let expected = FreeVector::term(Mono(vec![0; n]), kappa.clone() + rint(n as i64 - 1));
            assert!(apply(&y1, &e).eq_exact(&expected));
        }
        // y_1(x_2) = -1 for N = 2
        let y1 = dunkl_y(2, &kappa, 1);
        let expected = FreeVector::term(Mono(vec![0, 0]), rint(-1));
        assert!(apply(&y1, &[0, 1]).eq_exact(&expected));
    }

    #[test]
    fn trig_frozen_values() {
        let kappa = rat(5, 2);
        let z1 = trig_z(2, &kappa, 1);
        assert!(apply(&z1, &[0, 0]).is_zero());
        // z_1(x_2) = -x_1
        let expected = FreeVector::term(Mono(vec![1, 0]), rint(-1));
        assert!(apply(&z1, &[0, 1]).eq_exact(&expected));
        // z_1(x_1) = (kappa+1) x_1, cross-checked against [z_1,x_1] applied to 1:
        // z_1(x_1 * 1) - x_1 z_1(1) = kappa x_1 + x_1 sigma_12 (1)
        let expected = FreeVector::term(Mono(vec![1, 0]), kappa.clone() + rone());
        assert!(apply(&z1, &[1, 0]).eq_exact(&expected));
        let comm = z1.commutator(&x_mult(1, 1));
        let rhs = x_mult(1, 1)
            .scale_rat(kappa.clone())
            .add(&x_mult(1, 1).compose(&var_perm(&Perm::transposition(1, 2, 2))));
        assert!(apply(&comm, &[0, 0]).eq_exact(&apply(&rhs, &[0, 0])));
    }

    #[test]
    fn trig_u_values() {
        let kappa = rone();
        // u_1 = z_1
        let n = 3;
        let u1 = trig_u(n, &kappa, 1);
        let z1 = trig_z(n, &kappa, 1);
        for key in laurent_window(n, -1, 1).iter().take(10) {
            assert!(u1.apply(&rone(), key).eq_exact(&z1.apply(&rone(), key)));
        }
        // N=2: u_2(x_1) = z_2(x_1) + x_2
        let u2 = trig_u(2, &kappa, 2);
        let z2 = trig_z(2, &kappa, 2);
        let mut expected = z2.apply(&rone(), &Mono(vec![1, 0]));
        expected.insert_add(Mono(vec![0, 1]), rone());
        assert!(u2.apply(&rone(), &Mono(vec![1, 0])).eq_exact(&expected));
        // u_p(1) = (p-1) * 1
        for p in 1..=3usize {
            let up = trig_u(3, &kappa, p);
            let expected = FreeVector::term(Mono(vec![0; 3]), rint(p as i64 - 1));
            let got = up.apply(&rone(), &Mono(vec![0; 3]));
            if p == 1 {
                assert!(got.is_zero());
            } else {
                assert!(got.eq_exact(&expected));
            }
        }
    }

    #[test]
    fn rational_suite_small() {
        for kappa in [rone(), rat(5, 2)] {
            for entry in rational_relation_suite(2, &kappa, 4) {
                assert!(entry.passed(), "{}: {:?}", entry.name, entry.failures);
            }
        }
    }

    #[test]
    fn trig_suite_small() {
        for entry in trig_relation_suite(2, &rat(-7, 3), -2, 2) {
            assert!(entry.passed(), "{}: {:?}", entry.name, entry.failures);
        }
    }

    #[test]
    fn embedding_small() {
        for entry in embedding_check(2, &rone(), 4) {
            assert!(entry.passed(), "{}: {:?}", entry.name, entry.failures);
        }
        // x_p y_p kills constants, matching z_p -> 0 under evaluation
        let w = x_mult(1, 1).compose(&dunkl_y(2, &rone(), 1));
        assert!(apply(&w, &[0, 0]).is_zero());
    }

    #[test]
    fn dunkl_commute_wider() {
        // pairwise commutativity at N=4, degree <= 6, three kappa values
        let keys = poly_monomials(4, 6);
        for kappa in [rone(), rat(5, 2), rat(-7, 3)] {
            let ops = RnOps::new(4, &kappa, false);
            for entry in commutativity_entries(&ops, &keys, "y") {
                assert!(entry.passed(), "{}: {:?}", entry.name, entry.failures);
            }
        }
    }

    #[test]
    fn enumerators() {
        assert_eq!(poly_monomials(3, 5).len(), 56);
        assert_eq!(laurent_window(2, -3, 3).len(), 49);
        assert_eq!(laurent_window(3, -1, 1).len(), 27);
    }
}
