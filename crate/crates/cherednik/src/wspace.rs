//! The space W = C[x_1^±..x_N^±] (x) (C^m)^(x N) (x) V over a smooth induced
//! module V, the operator family X_p, Y_p with
//!   Y_p = kappa d_p + sum_{r!=p} (1/(x_p-x_r))(1-s_pr) (x) s_pr
//!         + sum_{i>=0} sum_ab x_p^{-i-1} (x) E_ab^(p) (x) E_ba t^i,
//! the Cherednik operator z_p = X_p Y_p, and the extended-space splitting
//! Y_p = kappa D_p - R_p + T_p with difference-fraction coefficients.
//!
//! The sl-corrected variant subtracts (1/m) sum_i x_p^{-i-1} (x) id (x) I t^i
//! from Y_p and T_p. The i-sums terminate at the depth of the module part of
//! each key (smoothness); no global truncation parameter exists. The main
//! path on W never touches fractions: divided differences keep everything
//! Laurent-polynomial, and D/R/T live only in extended mode.

use crate::affine::{InducedModule, LoopElem, LoopGen, ModKey, QBasisElem};
use crate::fraction::DiffFrac;
use crate::glmod::GlBasisElem;
use crate::laurent::{divided_difference, LaurentPoly};
use crate::linops::{check_identity, FreeVector, LinOp};
use crate::perm::Perm;
use crate::report::{CheckEntry, Failure};
use crate::scalar::{rat, rint, rone, Rat};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone)]
pub struct WSpace {
    pub m: usize,
    pub n: usize,
    pub module: Arc<InducedModule>,
    pub kappa: Rat,
    pub sl_correction: bool,
}

/// Basis key of W: x-exponent vector, tensor word, induced-module key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WKey {
    pub exps: Vec<i32>,
    pub word: Vec<u8>,
    pub modkey: ModKey,
}

impl std::fmt::Display for WKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x^{:?}(x)e{:?}(x){}", self.exps, self.word, self.modkey)
    }
}

pub type WOp = LinOp<WKey, Rat>;
pub type WVec = FreeVector<WKey, Rat>;

/// Extended-space key: the x-dependence moves into the DiffFrac coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EKey {
    pub word: Vec<u8>,
    pub modkey: ModKey,
}

impl std::fmt::Display for EKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e{:?}(x){}", self.word, self.modkey)
    }
}

pub type EOp = LinOp<EKey, DiffFrac>;
pub type EVec = FreeVector<EKey, DiffFrac>;

impl WSpace {
    pub fn new(module: Arc<InducedModule>, n: usize, kappa: Rat, sl_correction: bool) -> Self {
        WSpace {
            m: module.m,
            n,
            module,
            kappa,
            sl_correction,
        }
    }

    /// All keys with exponents in [lo, hi] and module depth <= depth.
    pub fn enum_keys(&self, lo: i32, hi: i32, depth: u32) -> Vec<WKey> {
        let mut words = vec![Vec::new()];
        for _ in 0..self.n {
            let mut next = Vec::new();
            for w in &words {
                for a in 1..=self.m as u8 {
                    let mut w2: Vec<u8> = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
            words = next;
        }
        let exps = crate::dunkl::laurent_window(self.n, lo, hi);
        let modkeys = self.module.enum_keys(depth);
        let mut out = Vec::new();
        for e in &exps {
            for w in &words {
                for mk in &modkeys {
                    out.push(WKey {
                        exps: e.0.clone(),
                        word: w.clone(),
                        modkey: mk.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Multiplication by x_p^k.
    pub fn x_op(&self, p: usize, k: i32) -> WOp {
        LinOp::from_key_map(format!("X{p}^{k}"), move |key: &WKey| {
            let mut exps = key.exps.clone();
            exps[p - 1] += k;
            FreeVector::term(
                WKey {
                    exps,
                    word: key.word.clone(),
                    modkey: key.modkey.clone(),
                },
                rone(),
            )
        })
    }

    /// Simultaneous permutation of the x-variables and the tensor factors.
    pub fn sim_perm_op(&self, s: &Perm) -> WOp {
        let s = s.clone();
        LinOp::from_key_map(format!("sigma{s}(x)sigma{s}"), move |key: &WKey| {
            let mut exps = vec![0; key.exps.len()];
            for p in 1..=key.exps.len() {
                exps[s.apply(p) - 1] = key.exps[p - 1];
            }
            FreeVector::term(
                WKey {
                    exps,
                    word: s.apply_positions(&key.word),
                    modkey: key.modkey.clone(),
                },
                rone(),
            )
        })
    }

    /// Y_p on W, denominator-free by construction.
    pub fn y_op(&self, p: usize) -> WOp {
        assert!(p >= 1 && p <= self.n);
        let sp = self.clone();
        LinOp::from_key_map(format!("Y{p}"), move |key: &WKey| {
            let mut out: WVec = FreeVector::zero();
            let n = sp.n;
            // kappa d_p
            let ep = key.exps[p - 1];
            if ep != 0 {
                let mut exps = key.exps.clone();
                exps[p - 1] -= 1;
                out.insert_add(
                    WKey {
                        exps,
                        word: key.word.clone(),
                        modkey: key.modkey.clone(),
                    },
                    sp.kappa.clone() * rint(ep as i64),
                );
            }
            // divided differences (x) sigma_pr on the word
            for r in 1..=n {
                if r == p {
                    continue;
                }
                let dd =
                    divided_difference(p, r, &LaurentPoly::monomial(n, key.exps.clone(), rone()));
                if dd.is_zero() {
                    continue;
                }
                let mut word = key.word.clone();
                word.swap(p - 1, r - 1);
                for (e, c) in dd.terms() {
                    out.insert_add(
                        WKey {
                            exps: e.clone(),
                            word: word.clone(),
                            modkey: key.modkey.clone(),
                        },
                        c.clone(),
                    );
                }
            }
            // loop sum, terminated by the smoothness depth of the module part
            let depth = key.modkey.depth() as i32;
            let b = key.word[p - 1] as usize;
            for i in 0..=depth {
                for a in 1..=sp.m {
                    let mv = sp.module.act_unit(b, a, i, &key.modkey);
                    if mv.is_zero() {
                        continue;
                    }
                    let mut word = key.word.clone();
                    word[p - 1] = a as u8;
                    let mut exps = key.exps.clone();
                    exps[p - 1] -= i + 1;
                    for (mk, c) in mv.iter() {
                        out.insert_add(
                            WKey {
                                exps: exps.clone(),
                                word: word.clone(),
                                modkey: mk.clone(),
                            },
                            c.clone(),
                        );
                    }
                }
                if sp.sl_correction {
                    let correction = rat(-1, sp.m as i64);
                    let mut exps = key.exps.clone();
                    exps[p - 1] -= i + 1;
                    for c in 1..=sp.m {
                        let mv = sp.module.act_unit(c, c, i, &key.modkey);
                        for (mk, coeff) in mv.iter() {
                            out.insert_add(
                                WKey {
                                    exps: exps.clone(),
                                    word: key.word.clone(),
                                    modkey: mk.clone(),
                                },
                                coeff.clone() * correction.clone(),
                            );
                        }
                    }
                }
            }
            out
        })
    }

    /// The Cherednik operator for z_p: the composition X_p Y_p.
    pub fn cherednik_z(&self, p: usize) -> WOp {
        let mut op = self.x_op(p, 1).compose(&self.y_op(p));
        op.name = format!("z{p}");
        op
    }

    /// u_p = z_p + sum_{r<p} sigma_pr (x) sigma_pr.
    pub fn cherednik_u(&self, p: usize) -> WOp {
        let mut ops = vec![self.cherednik_z(p)];
        for r in 1..p {
            ops.push(self.sim_perm_op(&Perm::transposition(p, r, self.n)));
        }
        WOp::sum(format!("u{p}"), ops)
    }

    fn word_apply_units(word: &[u8], units: &[((usize, usize), Rat)]) -> Vec<(Vec<u8>, Rat)> {
        let mut out = Vec::new();
        for ((a, b), c) in units {
            for p in 0..word.len() {
                if word[p] as usize == *b {
                    let mut w = word.to_vec();
                    w[p] = *a as u8;
                    out.push((w, c.clone()));
                }
            }
        }
        out
    }

    /// theta(E_cd t^j) = sum_q x_q^j (x) E_cd^(q) (x) id + id (x) id (x) E_cd t^j;
    /// theta(C) = level.
    pub fn theta_gen(&self, g: &LoopGen) -> WOp {
        let sp = self.clone();
        let g = *g;
        LinOp::from_key_map(format!("theta({g})"), move |key: &WKey| match g {
            LoopGen::Central => FreeVector::term(key.clone(), sp.module.level.clone()),
            LoopGen::E { a, b, mode } => {
                let mut out: WVec = FreeVector::zero();
                for q in 1..=sp.n {
                    if key.word[q - 1] == b {
                        let mut word = key.word.clone();
                        word[q - 1] = a;
                        let mut exps = key.exps.clone();
                        exps[q - 1] += mode;
                        out.insert_add(
                            WKey {
                                exps,
                                word,
                                modkey: key.modkey.clone(),
                            },
                            rone(),
                        );
                    }
                }
                let mv = sp
                    .module
                    .act_unit(a as usize, b as usize, mode, &key.modkey);
                for (mk, c) in mv.iter() {
                    out.insert_add(
                        WKey {
                            exps: key.exps.clone(),
                            word: key.word.clone(),
                            modkey: mk.clone(),
                        },
                        c.clone(),
                    );
                }
                out
            }
        })
    }

    /// theta of a q-basis element F t^-k: works in both flavors since F is
    /// a whole adapted-basis element.
    pub fn theta_q(&self, q: &QBasisElem) -> WOp {
        let sp = self.clone();
        let q = *q;
        LinOp::from_key_map(format!("theta({q})"), move |key: &WKey| {
            let mut out: WVec = FreeVector::zero();
            let units = q.gen.units(sp.m);
            for r in 1..=sp.n {
                let w = &key.word[r - 1..r];
                for ((a, b), c) in &units {
                    if w[0] as usize == *b {
                        let mut word = key.word.clone();
                        word[r - 1] = *a as u8;
                        let mut exps = key.exps.clone();
                        exps[r - 1] -= q.k as i32;
                        out.insert_add(
                            WKey {
                                exps,
                                word,
                                modkey: key.modkey.clone(),
                            },
                            c.clone(),
                        );
                    }
                }
            }
            let mv = sp
                .module
                .left_mult(&q, &FreeVector::term(key.modkey.clone(), rone()));
            for (mk, c) in mv.iter() {
                out.insert_add(
                    WKey {
                        exps: key.exps.clone(),
                        word: key.word.clone(),
                        modkey: mk.clone(),
                    },
                    c.clone(),
                );
            }
            out
        })
    }

    /// theta of a whole gl_m element (mode 0 diagonal action), given in the
    /// adapted basis; used for the commutation checks with the Lie action.
    pub fn theta_mode0(&self, elem: GlBasisElem) -> WOp {
        let sp = self.clone();
        LinOp::from_key_map(format!("theta({elem})"), move |key: &WKey| {
            let mut out: WVec = FreeVector::zero();
            let units = elem.units(sp.m);
            for (word, c) in Self::word_apply_units(&key.word, &units) {
                out.insert_add(
                    WKey {
                        exps: key.exps.clone(),
                        word,
                        modkey: key.modkey.clone(),
                    },
                    c,
                );
            }
            let mut loop_elem: LoopElem = FreeVector::zero();
            for ((a, b), c) in &units {
                loop_elem.insert_add(LoopGen::e(*a, *b, 0), c.clone());
            }
            let mv = sp
                .module
                .act_elem(&loop_elem, &FreeVector::term(key.modkey.clone(), rone()));
            for (mk, c) in mv.iter() {
                out.insert_add(
                    WKey {
                        exps: key.exps.clone(),
                        word: key.word.clone(),
                        modkey: mk.clone(),
                    },
                    c.clone(),
                );
            }
            out
        })
    }

    /// theta_r for r = 1..N: x_r^j (x) E_cd^(r) (x) id on the r-th loop slot;
    /// theta_{N+1}: the action on the module factor alone.
    pub fn theta_slot(&self, slot: usize, g: &LoopGen) -> WOp {
        assert!(slot >= 1 && slot <= self.n + 1);
        let sp = self.clone();
        let g = *g;
        LinOp::from_key_map(format!("theta_{slot}({g})"), move |key: &WKey| {
            let LoopGen::E { a, b, mode } = g else {
                panic!("theta_slot is for loop generators");
            };
            if slot <= sp.n {
                if key.word[slot - 1] != b {
                    return FreeVector::zero();
                }
                let mut word = key.word.clone();
                word[slot - 1] = a;
                let mut exps = key.exps.clone();
                exps[slot - 1] += mode;
                FreeVector::term(
                    WKey {
                        exps,
                        word,
                        modkey: key.modkey.clone(),
                    },
                    rone(),
                )
            } else {
                let mv = sp
                    .module
                    .act_unit(a as usize, b as usize, mode, &key.modkey);
                let mut out: WVec = FreeVector::zero();
                for (mk, c) in mv.iter() {
                    out.insert_add(
                        WKey {
                            exps: key.exps.clone(),
                            word: key.word.clone(),
                            modkey: mk.clone(),
                        },
                        c.clone(),
                    );
                }
                out
            }
        })
    }

    // ----- extended space -----

    pub fn embed(&self, v: &WVec) -> EVec {
        let mut out = FreeVector::zero();
        for (k, c) in v.iter() {
            out.insert_add(
                EKey {
                    word: k.word.clone(),
                    modkey: k.modkey.clone(),
                },
                DiffFrac::from_poly(LaurentPoly::monomial(self.n, k.exps.clone(), c.clone())),
            );
        }
        out
    }

    pub fn embed_key(&self, k: &WKey) -> (DiffFrac, EKey) {
        (
            DiffFrac::from_poly(LaurentPoly::monomial(self.n, k.exps.clone(), rone())),
            EKey {
                word: k.word.clone(),
                modkey: k.modkey.clone(),
            },
        )
    }

    /// Back from the extended space; None when a denominator survives.
    pub fn restrict(&self, v: &EVec) -> Option<WVec> {
        let mut out: WVec = FreeVector::zero();
        for (k, c) in v.iter() {
            let c = c.clone().simplify();
            if !c.den().is_empty() {
                return None;
            }
            for (e, coeff) in c.num().terms() {
                out.insert_add(
                    WKey {
                        exps: e.clone(),
                        word: k.word.clone(),
                        modkey: k.modkey.clone(),
                    },
                    coeff.clone(),
                );
            }
        }
        Some(out)
    }

    /// D_p = d_p (x) id (x) id on the extended space.
    pub fn d_op(&self, p: usize) -> EOp {
        LinOp::new(format!("D{p}"), move |s: &DiffFrac, k: &EKey| {
            let ds = s.partial(p);
            if ds.is_zero() {
                FreeVector::zero()
            } else {
                FreeVector::term(k.clone(), ds)
            }
        })
    }

    /// R_p = sum_{r!=p} (1/(x_p-x_r)) s_pr (x) s_pr (x) id.
    pub fn r_op(&self, p: usize) -> EOp {
        let n = self.n;
        LinOp::new(format!("R{p}"), move |s: &DiffFrac, k: &EKey| {
            let mut out: EVec = FreeVector::zero();
            for r in 1..=n {
                if r == p {
                    continue;
                }
                let mut word = k.word.clone();
                word.swap(p - 1, r - 1);
                out.insert_add(
                    EKey {
                        word,
                        modkey: k.modkey.clone(),
                    },
                    s.perm(&Perm::transposition(p, r, n))
                        .mul_inv_difference(p, r),
                );
            }
            out
        })
    }

    /// T_p = sum_{r!=p} (1/(x_p-x_r)) (x) s_pr (x) id
    ///       + sum_i sum_ab x_p^{-i-1} (x) E_ab^(p) (x) E_ba t^i,
    /// minus the trace correction in the sl variant.
    pub fn t_op(&self, p: usize) -> EOp {
        let sp = self.clone();
        LinOp::new(format!("T{p}"), move |s: &DiffFrac, k: &EKey| {
            let n = sp.n;
            let mut out: EVec = FreeVector::zero();
            for r in 1..=n {
                if r == p {
                    continue;
                }
                let mut word = k.word.clone();
                word.swap(p - 1, r - 1);
                out.insert_add(
                    EKey {
                        word,
                        modkey: k.modkey.clone(),
                    },
                    s.mul_inv_difference(p, r),
                );
            }
            let depth = k.modkey.depth() as i32;
            let b = k.word[p - 1] as usize;
            for i in 0..=depth {
                let mut shift = vec![0; n];
                shift[p - 1] = -i - 1;
                let coeff = s.mul_poly(&LaurentPoly::monomial(n, shift, rone()));
                for a in 1..=sp.m {
                    let mv = sp.module.act_unit(b, a, i, &k.modkey);
                    if mv.is_zero() {
                        continue;
                    }
                    let mut word = k.word.clone();
                    word[p - 1] = a as u8;
                    for (mk, c) in mv.iter() {
                        out.insert_add(
                            EKey {
                                word: word.clone(),
                                modkey: mk.clone(),
                            },
                            coeff.scale_rat(c),
                        );
                    }
                }
                if sp.sl_correction {
                    for c in 1..=sp.m {
                        let mv = sp.module.act_unit(c, c, i, &k.modkey);
                        for (mk, cf) in mv.iter() {
                            out.insert_add(
                                EKey {
                                    word: k.word.clone(),
                                    modkey: mk.clone(),
                                },
                                coeff.scale_rat(&(cf * rat(-1, sp.m as i64))),
                            );
                        }
                    }
                }
            }
            out
        })
    }

    /// kappa D_p + eps R_p + T_p.
    pub fn drt_combination(&self, p: usize, eps: &Rat) -> EOp {
        let mut op = self
            .d_op(p)
            .scale_rat(self.kappa.clone())
            .add(&self.r_op(p).scale_rat(eps.clone()))
            .add(&self.t_op(p));
        op.name = format!("({}D{p} + {}R{p} + T{p})", self.kappa, eps);
        op
    }
}

/// The R_N presentation for (X, Y, sigma) on W, pairwise commutativity of
/// the Y_p, and commutation with the mode-0 Lie algebra action. The sl variant additionally certifies that the
/// corrected operators do not depend on the chosen gl-extension of the base.
pub fn prop15_suite(wsp: &WSpace, keys: &[WKey]) -> Vec<CheckEntry> {
    let n = wsp.n;
    let one = rone();
    let mut entries = Vec::new();
    let x: Vec<WOp> = (1..=n).map(|p| wsp.x_op(p, 1)).collect();
    let y: Vec<WOp> = (1..=n).map(|p| wsp.y_op(p)).collect();
    let spq = |p: usize, q: usize| wsp.sim_perm_op(&Perm::transposition(p, q, n));

    for p in 1..=n {
        for q in p + 1..=n {
            entries.push(check_identity(
                format!("[X_{p}, X_{q}] = 0"),
                &x[p - 1].commutator(&x[q - 1]),
                &WOp::zero(),
                keys,
                &one,
            ));
            entries.push(check_identity(
                format!("[Y_{p}, Y_{q}] = 0"),
                &y[p - 1].commutator(&y[q - 1]),
                &WOp::zero(),
                keys,
                &one,
            ));
        }
    }
    for q in 1..n {
        let s = Perm::adjacent(q, n);
        let sop = wsp.sim_perm_op(&s);
        for p in 1..=n {
            entries.push(check_identity(
                format!("conjugation sigma_{q} X_{p}"),
                &sop.compose(&x[p - 1]).compose(&sop),
                &x[s.apply(p) - 1],
                keys,
                &one,
            ));
            entries.push(check_identity(
                format!("conjugation sigma_{q} Y_{p}"),
                &sop.compose(&y[p - 1]).compose(&sop),
                &y[s.apply(p) - 1],
                keys,
                &one,
            ));
        }
    }
    for p in 1..=n {
        for q in 1..=n {
            if q != p {
                entries.push(check_identity(
                    format!("[Y_{p}, X_{q}] = -sigma(x)sigma"),
                    &y[p - 1].commutator(&x[q - 1]),
                    &spq(p, q).neg(),
                    keys,
                    &one,
                ));
            }
        }
        let mut rhs = vec![WOp::identity().scale_rat(wsp.kappa.clone())];
        for r in 1..=n {
            if r != p {
                rhs.push(spq(p, r));
            }
        }
        entries.push(check_identity(
            format!("[Y_{p}, X_{p}] = kappa + sum sigma(x)sigma"),
            &y[p - 1].commutator(&x[p - 1]),
            &WOp::sum("kappa + sum sim-perms", rhs),
            keys,
            &one,
        ));
    }
    // mode-0 commutation with the Lie algebra action
    for elem in GlBasisElem::all(wsp.m, !wsp.sl_correction) {
        let th = wsp.theta_mode0(elem);
        for p in 1..=n {
            entries.push(check_identity(
                format!("mode0 [Y_{p}, theta({elem})]"),
                &y[p - 1].commutator(&th),
                &WOp::zero(),
                keys,
                &one,
            ));
        }
    }
    // theta of a nonzero mode need not commute with Y: demand a witness
    let th = wsp.theta_gen(&LoopGen::e(1, 2.min(wsp.m), 1));
    let comm = y[0].commutator(&th);
    let witness = keys.iter().any(|k| !comm.apply(&one, k).is_zero());
    entries.push(CheckEntry::new(
        "[Y_1, theta(E_12 t)] != 0 (witness found)",
        keys.len() as u64,
        if witness || wsp.m == 1 {
            vec![]
        } else {
            vec![Failure {
                key: "all sampled keys".into(),
                expected: "a key where the mode-1 commutator is nonzero".into(),
                actual: "none found".into(),
            }]
        },
    ));
    if wsp.sl_correction {
        // gl-extension independence: shift the I-eigenvalue of the base
        let shifted = InducedModule::new(
            Arc::new(wsp.module.base.shift_trace(&rint(3))),
            wsp.module.level.clone(),
            wsp.module.flavor,
        );
        let wsp2 = WSpace::new(shifted, wsp.n, wsp.kappa.clone(), true);
        for p in 1..=n {
            entries.push(check_identity(
                format!("sl Y_{p} independent of gl-extension"),
                &y[p - 1],
                &wsp2.y_op(p),
                keys,
                &one,
            ));
        }
    }
    entries
}

/// The pairwise commutator identities for D, R, T in exact DiffFrac
/// arithmetic, the eps-family commutativity, the identification of Y_p with kappa D_p - R_p + T_p on W,
/// and the W-preservation dichotomy (eps = -1 preserves W, eps = 0 does not).
pub fn lemma_suite(wsp: &WSpace, wkeys: &[WKey]) -> Vec<CheckEntry> {
    let n = wsp.n;
    let unit = DiffFrac::one(n);
    let ekeys: Vec<EKey> = {
        let mut set: Vec<EKey> = wkeys
            .iter()
            .map(|k| EKey {
                word: k.word.clone(),
                modkey: k.modkey.clone(),
            })
            .collect();
        set.sort();
        set.dedup();
        set
    };
    let d: Vec<EOp> = (1..=n).map(|p| wsp.d_op(p)).collect();
    let r: Vec<EOp> = (1..=n).map(|p| wsp.r_op(p)).collect();
    let t: Vec<EOp> = (1..=n).map(|p| wsp.t_op(p)).collect();
    let mut entries = Vec::new();
    for p in 1..=n {
        for q in p + 1..=n {
            entries.push(check_identity(
                format!("[D_{p}, D_{q}] = 0"),
                &d[p - 1].commutator(&d[q - 1]),
                &EOp::zero(),
                &ekeys,
                &unit,
            ));
            entries.push(check_identity(
                format!("[R_{p}, R_{q}] = 0"),
                &r[p - 1].commutator(&r[q - 1]),
                &EOp::zero(),
                &ekeys,
                &unit,
            ));
            entries.push(check_identity(
                format!("[T_{p}, T_{q}] = 0"),
                &t[p - 1].commutator(&t[q - 1]),
                &EOp::zero(),
                &ekeys,
                &unit,
            ));
            entries.push(check_identity(
                format!("[D_{p}, R_{q}] + [R_{p}, D_{q}] = 0"),
                &d[p - 1]
                    .commutator(&r[q - 1])
                    .add(&r[p - 1].commutator(&d[q - 1])),
                &EOp::zero(),
                &ekeys,
                &unit,
            ));
            entries.push(check_identity(
                format!("[D_{p}, T_{q}] + [T_{p}, D_{q}] = 0"),
                &d[p - 1]
                    .commutator(&t[q - 1])
                    .add(&t[p - 1].commutator(&d[q - 1])),
                &EOp::zero(),
                &ekeys,
                &unit,
            ));
            entries.push(check_identity(
                format!("[R_{p}, T_{q}] + [T_{p}, R_{q}] = 0"),
                &r[p - 1]
                    .commutator(&t[q - 1])
                    .add(&t[p - 1].commutator(&r[q - 1])),
                &EOp::zero(),
                &ekeys,
                &unit,
            ));
        }
    }
    for eps in [rint(0), rint(1), rint(-1), rint(2)] {
        for p in 1..=n {
            for q in p + 1..=n {
                entries.push(check_identity(
                    format!("eps-family eps={eps} [A_{p}, A_{q}] = 0"),
                    &wsp.drt_combination(p, &eps)
                        .commutator(&wsp.drt_combination(q, &eps)),
                    &EOp::zero(),
                    &ekeys,
                    &unit,
                ));
            }
        }
    }
    // Y_p is the restriction of kappa D_p - R_p + T_p to W
    for p in 1..=n {
        let yp = wsp.y_op(p);
        let drt = wsp.drt_combination(p, &rint(-1));
        let mut failures = Vec::new();
        for k in wkeys {
            let lhs = wsp.embed(&yp.apply(&rone(), k));
            let (coeff, ekey) = wsp.embed_key(k);
            let rhs = drt.apply(&coeff, &ekey);
            if !lhs.eq_exact(&rhs) {
                failures.push(Failure {
                    key: k.to_string(),
                    expected: rhs.to_string(),
                    actual: lhs.to_string(),
                });
            }
        }
        entries.push(CheckEntry::new(
            format!("Y_{p} = kappa D - R + T on W"),
            wkeys.len() as u64,
            failures,
        ));
    }
    // eps = -1 preserves W on every key; eps = 0 must leave W somewhere
    let mut failures = Vec::new();
    for k in wkeys {
        let (coeff, ekey) = wsp.embed_key(k);
        let out = wsp.drt_combination(1, &rint(-1)).apply(&coeff, &ekey);
        if wsp.restrict(&out).is_none() {
            failures.push(Failure {
                key: k.to_string(),
                expected: "denominator-free".into(),
                actual: out.to_string(),
            });
        }
    }
    entries.push(CheckEntry::new(
        "eps=-1 preserves W",
        wkeys.len() as u64,
        failures,
    ));
    let mut witness = None;
    for k in wkeys {
        let (coeff, ekey) = wsp.embed_key(k);
        let out = wsp.drt_combination(1, &rint(0)).apply(&coeff, &ekey);
        if wsp.restrict(&out).is_none() {
            witness = Some(k.clone());
            break;
        }
    }
    entries.push(CheckEntry::new(
        "eps=0 leaves W (witness found)",
        wkeys.len() as u64,
        match witness {
            Some(_) => vec![],
            None => vec![Failure {
                key: "all sampled keys".into(),
                expected: "a key escaping W under kappa D + T".into(),
                actual: "none found".into(),
            }],
        },
    ));
    entries
}

/// The element J in q (x) q whose images under the omega maps assemble the
/// commutator [Y_1, theta(E_cd t^j)], j < 0.
pub fn j_element(m: usize, c: usize, d: usize, j: i32) -> Vec<(LoopGen, LoopGen, Rat)> {
    assert!(j < 0);
    let mut out = Vec::new();
    for i in 0..(-j) {
        for a in 1..=m {
            out.push((LoopGen::e(a, d, i + j), LoopGen::e(c, a, -i - 1), rone()));
            out.push((LoopGen::e(c, a, i + j), LoopGen::e(a, d, -i - 1), -rone()));
        }
    }
    out
}

/// Symbolic q-membership of J: grouped by mode pair, the slot-wise
/// decompositions over the adapted basis must carry no trace direction.
pub fn j_q_membership(m: usize, c: usize, d: usize, j: i32) -> CheckEntry {
    let terms = j_element(m, c, d, j);
    let mut grouped: BTreeMap<(i32, i32), BTreeMap<((usize, usize), (usize, usize)), Rat>> =
        BTreeMap::new();
    for (p, q, coeff) in &terms {
        let (
            LoopGen::E {
                a: a1,
                b: b1,
                mode: m1,
            },
            LoopGen::E {
                a: a2,
                b: b2,
                mode: m2,
            },
        ) = (*p, *q)
        else {
            unreachable!()
        };
        *grouped
            .entry((m1, m2))
            .or_default()
            .entry(((a1 as usize, b1 as usize), (a2 as usize, b2 as usize)))
            .or_insert_with(Rat::zero) += coeff.clone();
    }
    let mut failures = Vec::new();
    let mut instances = 0u64;
    for ((m1, m2), tensor) in &grouped {
        for slot in 0..2 {
            let mut by_fixed: BTreeMap<(usize, usize), BTreeMap<(usize, usize), Rat>> =
                BTreeMap::new();
            for ((u1, u2), coeff) in tensor {
                let (fixed, var) = if slot == 0 { (*u2, *u1) } else { (*u1, *u2) };
                *by_fixed
                    .entry(fixed)
                    .or_default()
                    .entry(var)
                    .or_insert_with(Rat::zero) += coeff.clone();
            }
            for (fixed, elem) in by_fixed {
                instances += 1;
                let parts = decompose_trace_part(&elem, m);
                if !parts.is_zero() {
                    failures.push(Failure {
                        key: format!(
                            "modes ({m1},{m2}), slot {} against E_{}{}",
                            slot + 1,
                            fixed.0,
                            fixed.1
                        ),
                        expected: "traceless".into(),
                        actual: format!("trace component {parts}"),
                    });
                }
            }
        }
    }
    CheckEntry::new(
        format!("J in q(x)q for (c,d,j)=({c},{d},{j})"),
        instances,
        failures,
    )
}

fn decompose_trace_part(elem: &BTreeMap<(usize, usize), Rat>, m: usize) -> Rat {
    crate::glmod::decompose_gl(elem, m, true)
        .unwrap()
        .into_iter()
        .filter(|(g, _)| *g == GlBasisElem::Trace)
        .map(|(_, c)| c)
        .sum()
}

/// Negative-mode commutator formula: [Y_1, theta(E_cd t^j)] splits into a
/// cross-slot part and a module-slot part at level kappa - m, with an extra
/// scalar subtraction in the sl variant.
pub fn commutator_formula_check(
    wsp: &WSpace,
    j: i32,
    c: usize,
    d: usize,
    keys: &[WKey],
) -> CheckEntry {
    assert!(j < 0);
    let lhs = wsp.y_op(1).commutator(&wsp.theta_gen(&LoopGen::e(c, d, j)));
    let rhs = cross_slot_part(wsp, j, c, d).add(&module_slot_part(wsp, j, c, d));
    let rhs = if wsp.sl_correction && c == d {
        // subtract (1/m) delta_cd (m - kappa) j x_1^{j-1} (x) id
        let coeff = (rint(wsp.m as i64) - wsp.kappa.clone()) * rint(j as i64) / rint(wsp.m as i64);
        rhs.sub(&x1_power_scalar(j - 1, coeff))
    } else {
        rhs
    };
    check_identity(
        format!("commutator formula (c,d,j)=({c},{d},{j})"),
        &lhs,
        &rhs,
        keys,
        &rone(),
    )
}

fn x1_power_scalar(power: i32, coeff: Rat) -> WOp {
    LinOp::from_key_map(format!("{coeff} x1^{power}"), move |k: &WKey| {
        let mut exps = k.exps.clone();
        exps[0] += power;
        FreeVector::term(
            WKey {
                exps,
                word: k.word.clone(),
                modkey: k.modkey.clone(),
            },
            coeff.clone(),
        )
    })
}

/// Cross-slot part: sum_{r>1} sum_a ((x_r^j - x_1^j)/(x_1 - x_r)) (x)
/// (E_ca^(1) E_ad^(r) - E_ad^(1) E_ca^(r)) (x) id, expanded through the
/// truncated geometric identity so it stays inside W.
fn cross_slot_part(wsp: &WSpace, j: i32, c: usize, d: usize) -> WOp {
    let n = wsp.n;
    let m = wsp.m;
    LinOp::from_key_map(format!("cross-slot({c},{d},{j})"), move |k: &WKey| {
        let mut out: WVec = FreeVector::zero();
        for r in 2..=n {
            for i in 0..(-j) {
                for a in 1..=m as u8 {
                    // x_1^{-i-1} x_r^{i+j} per the identity
                    let mut exps = k.exps.clone();
                    exps[0] += -i - 1;
                    exps[r - 1] += i + j;
                    // E_ca^(1) E_ad^(r)
                    if k.word[0] == a && k.word[r - 1] == d as u8 {
                        let mut word = k.word.clone();
                        word[0] = c as u8;
                        word[r - 1] = a;
                        out.insert_add(
                            WKey {
                                exps: exps.clone(),
                                word,
                                modkey: k.modkey.clone(),
                            },
                            rone(),
                        );
                    }
                    // - E_ad^(1) E_ca^(r)
                    if k.word[0] == d as u8 && k.word[r - 1] == a {
                        let mut word = k.word.clone();
                        word[0] = a;
                        word[r - 1] = c as u8;
                        out.insert_add(
                            WKey {
                                exps,
                                word,
                                modkey: k.modkey.clone(),
                            },
                            -rone(),
                        );
                    }
                }
            }
        }
        out
    })
}

/// Module-slot part: m j x_1^{j-1} (x) E_cd^(1) (x) id
/// + sum_{i=0}^{-j-1} sum_a x_1^{-i-1} (x)
///   (E_ca^(1) (x) E_ad t^{i+j} - E_ad^(1) (x) E_ca t^{i+j}).
fn module_slot_part(wsp: &WSpace, j: i32, c: usize, d: usize) -> WOp {
    let sp = wsp.clone();
    LinOp::from_key_map(format!("module-slot({c},{d},{j})"), move |k: &WKey| {
        let m = sp.m;
        let mut out: WVec = FreeVector::zero();
        if k.word[0] == d as u8 {
            let mut exps = k.exps.clone();
            exps[0] += j - 1;
            let mut word = k.word.clone();
            word[0] = c as u8;
            out.insert_add(
                WKey {
                    exps,
                    word,
                    modkey: k.modkey.clone(),
                },
                rint((m as i64) * (j as i64)),
            );
        }
        for i in 0..(-j) {
            let mut exps = k.exps.clone();
            exps[0] += -i - 1;
            for a in 1..=m {
                if k.word[0] == a as u8 {
                    let mv = sp.module.act_unit(a, d, i + j, &k.modkey);
                    let mut word = k.word.clone();
                    word[0] = c as u8;
                    for (mk, cf) in mv.iter() {
                        out.insert_add(
                            WKey {
                                exps: exps.clone(),
                                word: word.clone(),
                                modkey: mk.clone(),
                            },
                            cf.clone(),
                        );
                    }
                }
                if k.word[0] == d as u8 {
                    let mv = sp.module.act_unit(c, a, i + j, &k.modkey);
                    let mut word = k.word.clone();
                    word[0] = a as u8;
                    for (mk, cf) in mv.iter() {
                        out.insert_add(
                            WKey {
                                exps: exps.clone(),
                                word: word.clone(),
                                modkey: mk.clone(),
                            },
                            -cf.clone(),
                        );
                    }
                }
            }
        }
        out
    })
}

/// Omega identity: [Y_1, theta(E_cd t^j)] equals
/// delta_cd j x_1^{j-1} + sum_{r=1}^{N+1} omega_r(J), where
/// omega_r(P (x) Q) = theta_r(P) theta_1(Q). The sl-corrected Y changes the
/// scalar term to (kappa/m) delta_cd j x_1^{j-1}.
pub fn j_element_check(wsp: &WSpace, j: i32, c: usize, d: usize, keys: &[WKey]) -> Vec<CheckEntry> {
    assert!(j < 0);
    let lhs = wsp.y_op(1).commutator(&wsp.theta_gen(&LoopGen::e(c, d, j)));
    let terms = j_element(wsp.m, c, d, j);
    let mut omega_ops: Vec<WOp> = Vec::new();
    for r in 1..=wsp.n + 1 {
        for (p, q, coeff) in &terms {
            omega_ops.push(
                wsp.theta_slot(r, p)
                    .compose(&wsp.theta_slot(1, q))
                    .scale_rat(coeff.clone()),
            );
        }
    }
    let mut rhs = WOp::sum("omega(J)", omega_ops);
    if c == d {
        let scalar = if wsp.sl_correction {
            wsp.kappa.clone() * rint(j as i64) / rint(wsp.m as i64)
        } else {
            rint(j as i64)
        };
        rhs = rhs.add(&x1_power_scalar(j - 1, scalar));
    }
    vec![
        check_identity(
            format!("omega identity (c,d,j)=({c},{d},{j})"),
            &lhs,
            &rhs,
            keys,
            &rone(),
        ),
        j_q_membership(wsp.m, c, d, j),
    ]
}
