//! Coinvariant reduction and the induced-module equivalences.
//!
//! Finite setting: E_N applied to the gl_{m+n}-module induced from
//! U (x) V along the parabolic whose nilpotent complement q is the lower-left
//! block. Reduction modulo qW rewrites a PBW factor E_ab as
//! -sum_q E_ab^(q) on the loop factors; the unique depth-0 representatives
//! realize the direct sum over K of induced H_N-modules on shuffle cosets.
//!
//! Affine setting: reduction modulo qW for q = t^{-1} sl_m[t^-1] rewrites a
//! module-side factor F t^-k as -sum_q x_q^-k (x) F^(q); normal forms carry
//! no traceless PBW factors. Both reducers are strictly depth-decreasing
//! rewriting systems; well-definedness is certified by running two
//! factor-selection strategies and comparing.

use crate::affine::{q_basis, Flavor, InducedModule, ModKey, PbwMono};
use crate::glmod::GlModule;
use crate::hecke::{HeckeFamily, TensorKey};
use crate::linops::{check_identity, sample_exact, FreeVector, LinOp};
use crate::perm::{coset_reps, shuffle_split, Perm};
use crate::report::{CheckEntry, Failure};
use crate::scalar::{rint, rone, Rat};
use crate::wspace::{WKey, WSpace, WVec};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Which PBW factor a reduction step eliminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

// ---------------------------------------------------------------------------
// finite setting: coinvariants of E_N over gl_{m+n}
// ---------------------------------------------------------------------------

/// Sorted monomial in the abelian subalgebra q of gl_{m+n}: pairs (a, b)
/// with a in {m+1..m+n}, b in {1..m}.
pub type FinMono = Vec<(u8, u8)>;

/// Basis key of E_N(U boxtimes V): word over {1..m+n}, PBW monomial, base
/// indices into U and V.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FinKey {
    pub word: Vec<u8>,
    pub mono: FinMono,
    pub ubase: usize,
    pub vbase: usize,
}

impl std::fmt::Display for FinKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "e{:?}(x){:?}(x)u{}(x)v{}",
            self.word, self.mono, self.ubase, self.vbase
        )
    }
}

pub type FinVec = FreeVector<FinKey, Rat>;
pub type FinOp = LinOp<FinKey, Rat>;

/// The parabolically induced gl_{m+n}-module U boxtimes V together with the
/// Hecke action machinery of E_N on it.
#[derive(Clone)]
pub struct FinSetting {
    pub m: usize,
    pub n: usize,
    pub nn: usize,
    pub u: Arc<GlModule>,
    pub v: Arc<GlModule>,
}

impl FinSetting {
    pub fn new(u: Arc<GlModule>, v: Arc<GlModule>, nn: usize) -> Self {
        FinSetting {
            m: u.m(),
            n: v.m(),
            nn,
            u,
            v,
        }
    }

    fn in_q(&self, a: usize, b: usize) -> bool {
        a > self.m && b <= self.m
    }

    fn insert_sorted(mono: &FinMono, pair: (u8, u8)) -> FinMono {
        let mut out = mono.clone();
        let pos = out.partition_point(|x| *x <= pair);
        out.insert(pos, pair);
        out
    }

    /// Action of E_ab in gl_{m+n} on U(q) (x) U (x) V by normal ordering;
    /// q is abelian so straightening needs no corrections.
    fn module_act(
        &self,
        a: usize,
        b: usize,
        mono: &FinMono,
        ubase: usize,
        vbase: usize,
    ) -> FreeVector<(FinMono, usize, usize), Rat> {
        let mut out = FreeVector::zero();
        if self.in_q(a, b) {
            out.insert_add(
                (Self::insert_sorted(mono, (a as u8, b as u8)), ubase, vbase),
                rone(),
            );
            return out;
        }
        if mono.is_empty() {
            if a <= self.m && b <= self.m {
                for (row, c) in self.u.apply(a, b, ubase) {
                    out.insert_add((Vec::new(), row, vbase), c);
                }
            } else if a > self.m && b > self.m {
                for (row, c) in self.v.apply(a - self.m, b - self.m, vbase) {
                    out.insert_add((Vec::new(), ubase, row), c);
                }
            }
            // upper-right block kills the base
            return out;
        }
        let (c, d) = (mono[0].0 as usize, mono[0].1 as usize);
        let tail = mono[1..].to_vec();
        for ((mono2, ub, vb), coeff) in self.module_act(a, b, &tail, ubase, vbase).into_terms() {
            out.insert_add((Self::insert_sorted(&mono2, mono[0]), ub, vb), coeff);
        }
        // [E_ab, E_cd] = d_bc E_ad - d_da E_cb
        if b == c {
            out.add_assign(&self.module_act(a, d, &tail, ubase, vbase));
        }
        if d == a {
            out.add_assign(&self.module_act(c, b, &tail, ubase, vbase).neg());
        }
        out
    }

    /// z_p = sum_ab E_ab^(p) (x) E_ba over gl_{m+n}.
    pub fn z_op(&self, p: usize) -> FinOp {
        let s = self.clone();
        LinOp::from_key_map(format!("z{p}"), move |k: &FinKey| {
            let mut out: FinVec = FreeVector::zero();
            let b = k.word[p - 1] as usize;
            for a in 1..=(s.m + s.n) {
                let mv = s.module_act(b, a, &k.mono, k.ubase, k.vbase);
                if mv.is_zero() {
                    continue;
                }
                let mut word = k.word.clone();
                word[p - 1] = a as u8;
                for ((mono, ub, vb), c) in mv.into_terms() {
                    out.insert_add(
                        FinKey {
                            word: word.clone(),
                            mono,
                            ubase: ub,
                            vbase: vb,
                        },
                        c,
                    );
                }
            }
            out
        })
    }

    pub fn sigma_op(&self, s: &Perm) -> FinOp {
        let s = s.clone();
        LinOp::from_key_map(format!("sigma{s}"), move |k: &FinKey| {
            FreeVector::term(
                FinKey {
                    word: s.apply_positions(&k.word),
                    mono: k.mono.clone(),
                    ubase: k.ubase,
                    vbase: k.vbase,
                },
                rone(),
            )
        })
    }

    pub fn u_op(&self, p: usize) -> FinOp {
        let mut ops = vec![self.z_op(p)];
        for q in 1..p {
            ops.push(self.sigma_op(&Perm::transposition(q, p, self.nn)));
        }
        FinOp::sum(format!("u{p}"), ops)
    }

    /// Diagonal action of E_ab in gl_{m+n} on the whole of E_N(U boxtimes V).
    pub fn diag_op(&self, a: usize, b: usize) -> FinOp {
        let s = self.clone();
        LinOp::from_key_map(format!("diag(E_{a}{b})"), move |k: &FinKey| {
            let mut out: FinVec = FreeVector::zero();
            for q in 1..=s.nn {
                if k.word[q - 1] as usize == b {
                    let mut word = k.word.clone();
                    word[q - 1] = a as u8;
                    out.insert_add(
                        FinKey {
                            word,
                            mono: k.mono.clone(),
                            ubase: k.ubase,
                            vbase: k.vbase,
                        },
                        rone(),
                    );
                }
            }
            for ((mono, ub, vb), c) in s.module_act(a, b, &k.mono, k.ubase, k.vbase).into_terms() {
                out.insert_add(
                    FinKey {
                        word: k.word.clone(),
                        mono,
                        ubase: ub,
                        vbase: vb,
                    },
                    c,
                );
            }
            out
        })
    }

    /// Enumerates all keys with PBW degree <= deg.
    pub fn enum_keys(&self, deg: usize) -> Vec<FinKey> {
        let pairs: Vec<(u8, u8)> = (self.m + 1..=self.m + self.n)
            .flat_map(|a| (1..=self.m).map(move |b| (a as u8, b as u8)))
            .collect();
        let mut monos: Vec<FinMono> = Vec::new();
        fn rec(
            pairs: &[(u8, u8)],
            start: usize,
            left: usize,
            cur: &mut FinMono,
            out: &mut Vec<FinMono>,
        ) {
            out.push(cur.clone());
            if left == 0 {
                return;
            }
            for i in start..pairs.len() {
                cur.push(pairs[i]);
                rec(pairs, i, left - 1, cur, out);
                cur.pop();
            }
        }
        rec(&pairs, 0, deg, &mut Vec::new(), &mut monos);
        let mut words = vec![Vec::new()];
        for _ in 0..self.nn {
            let mut next = Vec::new();
            for w in &words {
                for a in 1..=(self.m + self.n) as u8 {
                    let mut w2: Vec<u8> = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
            words = next;
        }
        let mut out = Vec::new();
        for w in &words {
            for mono in &monos {
                for ub in 0..self.u.dim() {
                    for vb in 0..self.v.dim() {
                        out.push(FinKey {
                            word: w.clone(),
                            mono: mono.clone(),
                            ubase: ub,
                            vbase: vb,
                        });
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Normal form modulo qW: strictly PBW-degree-decreasing rewriting to
    /// the unique depth-0 representative.
    pub fn nf(&self, v: &FinVec, strategy: Strategy) -> FinVec {
        let mut work = v.clone();
        let mut out: FinVec = FreeVector::zero();
        loop {
            let Some((key, coeff)) = work
                .iter()
                .find(|(k, _)| !k.mono.is_empty())
                .map(|(k, c)| (k.clone(), c.clone()))
            else {
                out.add_assign(&work);
                return out;
            };
            work.insert_add(key.clone(), -coeff.clone());
            let idx = match strategy {
                Strategy::Leftmost => 0,
                Strategy::Rightmost => key.mono.len() - 1,
            };
            let (a, b) = (key.mono[idx].0 as usize, key.mono[idx].1 as usize);
            let mut rest = key.mono.clone();
            rest.remove(idx);
            for q in 1..=self.nn {
                if key.word[q - 1] as usize == b {
                    let mut word = key.word.clone();
                    word[q - 1] = a as u8;
                    work.insert_add(
                        FinKey {
                            word,
                            mono: rest.clone(),
                            ubase: key.ubase,
                            vbase: key.vbase,
                        },
                        -coeff.clone(),
                    );
                }
            }
        }
    }
}

/// Basis key of the induced bimodule: a (K, N-K)-shuffle coset representative
/// and a basis vector of (C^m)^(x K) (x) U (x) (C^n)^(x (N-K)) (x) V.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BimKey {
    pub tau: Perm,
    pub worda: Vec<u8>,
    pub ubase: usize,
    pub wordb: Vec<u8>,
    pub vbase: usize,
}

impl std::fmt::Display for BimKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}(x)a{:?}u{}b{:?}v{}",
            self.tau, self.worda, self.ubase, self.wordb, self.vbase
        )
    }
}

pub type BimVec = FreeVector<BimKey, Rat>;
pub type BimOp = LinOp<BimKey, Rat>;

/// How the induced-action transposition sums are bounded: the resolved upper
/// bound p-1, or the misreading "sigma_pp = identity" which shifts every
/// u_p by +1 and must break equivariance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UkBound {
    PMinus1,
    PWithIdentity,
}

/// The direct sum over K of the induced H_N-modules on shuffle cosets of
/// E_K(U) (x) E_{N-K}^{-m}(V).
#[derive(Clone)]
pub struct Bimodule125 {
    pub setting: FinSetting,
    pub bound: UkBound,
}

impl Bimodule125 {
    pub fn new(setting: FinSetting, bound: UkBound) -> Self {
        Bimodule125 { setting, bound }
    }

    pub fn basis(&self) -> Vec<BimKey> {
        let s = &self.setting;
        let mut out = Vec::new();
        for k in 0..=s.nn {
            for tau in coset_reps(k, s.nn) {
                let mut wordsa = vec![Vec::new()];
                for _ in 0..k {
                    let mut next = Vec::new();
                    for w in &wordsa {
                        for a in 1..=s.m as u8 {
                            let mut w2: Vec<u8> = w.clone();
                            w2.push(a);
                            next.push(w2);
                        }
                    }
                    wordsa = next;
                }
                let mut wordsb = vec![Vec::new()];
                for _ in 0..s.nn - k {
                    let mut next = Vec::new();
                    for w in &wordsb {
                        for a in 1..=s.n as u8 {
                            let mut w2: Vec<u8> = w.clone();
                            w2.push(a);
                            next.push(w2);
                        }
                    }
                    wordsb = next;
                }
                for wa in &wordsa {
                    for wb in &wordsb {
                        for ub in 0..s.u.dim() {
                            for vb in 0..s.v.dim() {
                                out.push(BimKey {
                                    tau: tau.clone(),
                                    worda: wa.clone(),
                                    ubase: ub,
                                    wordb: wb.clone(),
                                    vbase: vb,
                                });
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Inner action of h in Sym_{K,N-K} on the two word blocks.
    fn apply_inner(&self, h: &Perm, key: &BimKey) -> BimKey {
        let k = key.worda.len();
        let mut worda = key.worda.clone();
        for i in 1..=k {
            worda[h.apply(i) - 1] = key.worda[i - 1];
        }
        let mut wordb = key.wordb.clone();
        for j in 1..=key.wordb.len() {
            wordb[h.apply(k + j) - k - 1] = key.wordb[j - 1];
        }
        BimKey {
            tau: key.tau.clone(),
            worda,
            ubase: key.ubase,
            wordb,
            vbase: key.vbase,
        }
    }

    /// Group translation g . (tau (x) k) with coset renormalization.
    fn translate(&self, g: &Perm, key: &BimKey) -> BimKey {
        let kk = key.worda.len();
        let (tau, h) = shuffle_split(&g.compose(&key.tau), kk);
        let mut out = self.apply_inner(&h, key);
        out.tau = tau;
        out
    }

    pub fn sigma_op(&self, s: &Perm) -> BimOp {
        let this = self.clone();
        let s = s.clone();
        LinOp::from_key_map(format!("sigma{s}"), move |key: &BimKey| {
            FreeVector::term(this.translate(&s, key), rone())
        })
    }

    /// Local action of u_{p'} through H_{K,N-K} on the inner tensor factor,
    /// with the -m shift on the second block.
    fn u_local(&self, pp: usize, key: &BimKey) -> BimVec {
        let s = &self.setting;
        let k = key.worda.len();
        let mut out: BimVec = FreeVector::zero();
        if pp <= k {
            let b = key.worda[pp - 1] as usize;
            for a in 1..=s.m {
                for (row, c) in s.u.apply(b, a, key.ubase) {
                    let mut worda = key.worda.clone();
                    worda[pp - 1] = a as u8;
                    out.insert_add(
                        BimKey {
                            tau: key.tau.clone(),
                            worda,
                            ubase: row,
                            wordb: key.wordb.clone(),
                            vbase: key.vbase,
                        },
                        c,
                    );
                }
            }
            for q in 1..pp {
                let mut worda = key.worda.clone();
                worda.swap(q - 1, pp - 1);
                out.insert_add(
                    BimKey {
                        tau: key.tau.clone(),
                        worda,
                        ubase: key.ubase,
                        wordb: key.wordb.clone(),
                        vbase: key.vbase,
                    },
                    rone(),
                );
            }
        } else {
            let j = pp - k;
            let b = key.wordb[j - 1] as usize;
            for a in 1..=s.n {
                for (row, c) in s.v.apply(b, a, key.vbase) {
                    let mut wordb = key.wordb.clone();
                    wordb[j - 1] = a as u8;
                    out.insert_add(
                        BimKey {
                            tau: key.tau.clone(),
                            worda: key.worda.clone(),
                            ubase: key.ubase,
                            wordb,
                            vbase: row,
                        },
                        c,
                    );
                }
            }
            for q in 1..j {
                let mut wordb = key.wordb.clone();
                wordb.swap(q - 1, j - 1);
                out.insert_add(
                    BimKey {
                        tau: key.tau.clone(),
                        worda: key.worda.clone(),
                        ubase: key.ubase,
                        wordb,
                        vbase: key.vbase,
                    },
                    rone(),
                );
            }
            out.insert_add(key.clone(), rint(-(s.m as i64)));
        }
        if self.bound == UkBound::PWithIdentity {
            out.insert_add(key.clone(), rone());
        }
        out
    }

    /// u_p on the induced module: transport through the coset representative,
    /// normal-ordering the transpositions past u via the z-conjugation rule.
    pub fn u_op(&self, p: usize) -> BimOp {
        let this = self.clone();
        let nn = self.setting.nn;
        LinOp::from_key_map(format!("u{p}"), move |key: &BimKey| {
            let pp = key.tau.inverse().apply(p);
            let mut out = this.u_local(pp, key);
            // + sum_{q<p} tau sigma_{tau^{-1}(q), p'} (x) k
            for q in 1..p {
                let r = key.tau.inverse().apply(q);
                let g = key.tau.compose(&Perm::transposition(r, pp, nn));
                let kk = key.worda.len();
                let (tau2, h) = shuffle_split(&g, kk);
                let mut moved = this.apply_inner(&h, key);
                moved.tau = tau2;
                out.insert_add(moved, rone());
            }
            // - sum_{q'<p'} tau sigma_{q', p'} (x) k
            for q in 1..pp {
                let g = key.tau.compose(&Perm::transposition(q, pp, nn));
                let kk = key.worda.len();
                let (tau2, h) = shuffle_split(&g, kk);
                let mut moved = this.apply_inner(&h, key);
                moved.tau = tau2;
                out.insert_add(moved, -rone());
            }
            out
        })
    }

    pub fn z_op(&self, p: usize) -> BimOp {
        let mut ops = vec![self.u_op(p)];
        for q in 1..p {
            ops.push(
                self.sigma_op(&Perm::transposition(q, p, self.setting.nn))
                    .neg(),
            );
        }
        BimOp::sum(format!("z{p}"), ops)
    }

    /// Diagonal gl_m (x) gl_n action: through the inner tensor factors only.
    pub fn diag_op(&self, left: bool, a: usize, b: usize) -> BimOp {
        let this = self.clone();
        LinOp::from_key_map(
            format!("diag({},E_{a}{b})", if left { "glm" } else { "gln" }),
            move |key: &BimKey| {
                let s = &this.setting;
                let mut out: BimVec = FreeVector::zero();
                if left {
                    for i in 0..key.worda.len() {
                        if key.worda[i] as usize == b {
                            let mut worda = key.worda.clone();
                            worda[i] = a as u8;
                            out.insert_add(
                                BimKey {
                                    worda,
                                    ..key.clone()
                                },
                                rone(),
                            );
                        }
                    }
                    for (row, c) in s.u.apply(a, b, key.ubase) {
                        out.insert_add(
                            BimKey {
                                ubase: row,
                                ..key.clone()
                            },
                            c,
                        );
                    }
                } else {
                    for i in 0..key.wordb.len() {
                        if key.wordb[i] as usize == b {
                            let mut wordb = key.wordb.clone();
                            wordb[i] = a as u8;
                            out.insert_add(
                                BimKey {
                                    wordb,
                                    ..key.clone()
                                },
                                rone(),
                            );
                        }
                    }
                    for (row, c) in s.v.apply(a, b, key.vbase) {
                        out.insert_add(
                            BimKey {
                                vbase: row,
                                ..key.clone()
                            },
                            c,
                        );
                    }
                }
                out
            },
        )
    }

    /// The identification of the induced-module basis with the depth-0 model
    /// inside E_N(U boxtimes V): letters of the A-block go to positions
    /// tau(1..K), letters of the B-block (shifted by m) to tau(K+1..N).
    pub fn phi(&self, key: &BimKey) -> FinKey {
        let s = &self.setting;
        let k = key.worda.len();
        let mut word = vec![0u8; s.nn];
        for i in 1..=k {
            word[key.tau.apply(i) - 1] = key.worda[i - 1];
        }
        for j in 1..=s.nn - k {
            word[key.tau.apply(k + j) - 1] = key.wordb[j - 1] + s.m as u8;
        }
        FinKey {
            word,
            mono: Vec::new(),
            ubase: key.ubase,
            vbase: key.vbase,
        }
    }

    pub fn phi_vec(&self, v: &BimVec) -> FinVec {
        v.map_keys(|k| self.phi(k))
    }
}

/// Sparse exact rank accumulator (row echelon over the rationals).
struct RankAccum {
    pivots: BTreeMap<usize, BTreeMap<usize, Rat>>,
}

impl RankAccum {
    fn new() -> Self {
        RankAccum {
            pivots: BTreeMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn add(&mut self, mut v: BTreeMap<usize, Rat>) -> bool {
        loop {
            v.retain(|_, c| !c.is_zero());
            let Some((&lead, lc)) = v.iter().next() else {
                return false;
            };
            let lc = lc.clone();
            match self.pivots.get(&lead) {
                Some(row) => {
                    for (i, c) in row {
                        let entry = v.entry(*i).or_insert_with(Rat::zero);
                        *entry -= lc.clone() * c;
                    }
                }
                None => {
                    for c in v.values_mut() {
                        *c /= lc.clone();
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }
}

fn vector_coords<K: Ord + Clone + std::fmt::Debug>(
    v: &FreeVector<K, Rat>,
    index: &BTreeMap<K, usize>,
) -> BTreeMap<usize, Rat> {
    let mut out = BTreeMap::new();
    for (k, c) in v.iter() {
        let i = index
            .get(k)
            .unwrap_or_else(|| panic!("key outside model: {k:?}"));
        out.insert(*i, c.clone());
    }
    out
}

/// Finite coinvariant equivalence checker: dimension identity, the bijectivity certificate for
/// the reducer (idempotence, soundness, kernel = q-image on a bounded model),
/// the iota-equivariance of sigma_p and u_p against the induced bimodule, the
/// relation suite on the bimodule, and the two-strategy/idempotence checks.
pub fn check_thm_125(
    u: Arc<GlModule>,
    v: Arc<GlModule>,
    nn: usize,
    bound: UkBound,
    model_dim_cap: usize,
) -> Vec<CheckEntry> {
    let setting = FinSetting::new(u, v, nn);
    let bim = Bimodule125::new(setting.clone(), bound);
    let mut entries = Vec::new();

    // dimension identity (m+n)^N dU dV = sum_K C(N,K) m^K n^{N-K} dU dV
    let bim_basis = bim.basis();
    let depth0 = setting.enum_keys(0);
    let expected = (setting.m + setting.n).pow(nn as u32) * setting.u.dim() * setting.v.dim();
    let dim_fail = if bim_basis.len() == expected && depth0.len() == expected {
        vec![]
    } else {
        vec![Failure {
            key: "dimension".into(),
            expected: format!("{expected}"),
            actual: format!(
                "bimodule {} vs depth-0 model {}",
                bim_basis.len(),
                depth0.len()
            ),
        }]
    };
    entries.push(CheckEntry::new("dimension identity", 1, dim_fail));

    // reducer: idempotence on depth-0 keys
    let mut failures = Vec::new();
    for k in &depth0 {
        let v0 = FinVec::term(k.clone(), rone());
        for strat in [Strategy::Leftmost, Strategy::Rightmost] {
            let nf = setting.nf(&v0, strat);
            if !nf.eq_exact(&v0) {
                failures.push(Failure {
                    key: k.to_string(),
                    expected: v0.to_string(),
                    actual: nf.to_string(),
                });
            }
        }
    }
    entries.push(CheckEntry::new(
        "nf_finite identity on depth-0",
        2 * depth0.len() as u64,
        failures,
    ));

    // bounded model for the rank certificate; depth >= 1 so that q-images
    // of the one-lower model stay inside it
    let mut rank_depth = 1usize;
    while rank_depth < 3 && setting.enum_keys(rank_depth + 1).len() <= model_dim_cap {
        rank_depth += 1;
    }
    let model = setting.enum_keys(rank_depth);
    let model_index: BTreeMap<FinKey, usize> = model
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let depth0_index: BTreeMap<FinKey, usize> = depth0
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let qgens: Vec<(usize, usize)> = (setting.m + 1..=setting.m + setting.n)
        .flat_map(|a| (1..=setting.m).map(move |b| (a, b)))
        .collect();

    // soundness: nf kills the q-image of every bounded-model key
    let mut failures = Vec::new();
    let mut instances = 0u64;
    for k in &model {
        for (a, b) in &qgens {
            instances += 1;
            let img = setting.diag_op(*a, *b).apply(&rone(), k);
            let nf = setting.nf(&img, Strategy::Leftmost);
            if !nf.is_zero() {
                failures.push(Failure {
                    key: format!("E_{a}{b} . {k}"),
                    expected: "0".into(),
                    actual: nf.to_string(),
                });
            }
        }
    }
    entries.push(CheckEntry::new(
        "nf_finite soundness on q-images",
        instances,
        failures,
    ));

    // kernel of nf on the bounded model = span of q-images of the
    // one-lower model (exact rank computation)
    let submodel = setting.enum_keys(rank_depth.saturating_sub(1));
    let mut nf_rank = RankAccum::new();
    for k in &model {
        let nf = setting.nf(&FinVec::term(k.clone(), rone()), Strategy::Leftmost);
        nf_rank.add(vector_coords(&nf, &depth0_index));
    }
    let mut q_rank = RankAccum::new();
    for k in &submodel {
        for (a, b) in &qgens {
            let img = setting.diag_op(*a, *b).apply(&rone(), k);
            q_rank.add(vector_coords(&img, &model_index));
        }
    }
    let kernel_dim = model.len() - nf_rank.rank();
    let mut failures = Vec::new();
    if nf_rank.rank() != depth0.len() {
        failures.push(Failure {
            key: "image".into(),
            expected: format!("rank {}", depth0.len()),
            actual: format!("rank {}", nf_rank.rank()),
        });
    }
    if kernel_dim != q_rank.rank() {
        failures.push(Failure {
            key: format!("kernel on model of depth {rank_depth}"),
            expected: format!("q-image rank {}", q_rank.rank()),
            actual: format!("kernel dimension {kernel_dim}"),
        });
    }
    entries.push(CheckEntry::new(
        format!(
            "nf_finite kernel = q-image (model depth {rank_depth}, dim {})",
            model.len()
        ),
        2,
        failures,
    ));

    // iota-equivariance of sigma_p and u_p
    let mut sig_failures = Vec::new();
    let mut u_failures = Vec::new();
    for bk in &bim_basis {
        let emb = FinVec::term(bim.phi(bk), rone());
        for p in 1..nn {
            let s = Perm::adjacent(p, nn);
            let lhs = setting.nf(&setting.sigma_op(&s).apply_vec(&emb), Strategy::Leftmost);
            let rhs = bim.phi_vec(&bim.sigma_op(&s).apply(&rone(), bk));
            if !lhs.eq_exact(&rhs) {
                sig_failures.push(Failure {
                    key: format!("sigma_{p} at {bk}"),
                    expected: rhs.to_string(),
                    actual: lhs.to_string(),
                });
            }
        }
        for p in 1..=nn {
            let lhs = setting.nf(&setting.u_op(p).apply_vec(&emb), Strategy::Leftmost);
            let rhs = bim.phi_vec(&bim.u_op(p).apply(&rone(), bk));
            if !lhs.eq_exact(&rhs) {
                u_failures.push(Failure {
                    key: format!("u_{p} at {bk}"),
                    expected: rhs.to_string(),
                    actual: lhs.to_string(),
                });
            }
        }
    }
    entries.push(CheckEntry::new(
        "iota intertwines sigma_p",
        (bim_basis.len() * (nn - 1)) as u64,
        sig_failures,
    ));
    entries.push(CheckEntry::new(
        "iota intertwines u_p",
        (bim_basis.len() * nn) as u64,
        u_failures,
    ));

    // the bimodule is a genuine H_N-module commuting with gl_m (+) gl_n
    entries.extend(bimodule_relation_suite(&bim, &bim_basis));

    // two-strategy agreement and idempotence on the bounded model
    let mut failures = Vec::new();
    let mut instances = 0u64;
    for k in &model {
        instances += 1;
        let v0 = FinVec::term(k.clone(), rone());
        let left = setting.nf(&v0, Strategy::Leftmost);
        let right = setting.nf(&v0, Strategy::Rightmost);
        if !left.eq_exact(&right) {
            failures.push(Failure {
                key: k.to_string(),
                expected: left.to_string(),
                actual: right.to_string(),
            });
        }
        let again = setting.nf(&left, Strategy::Leftmost);
        if !again.eq_exact(&left) {
            failures.push(Failure {
                key: format!("idempotence at {k}"),
                expected: left.to_string(),
                actual: again.to_string(),
            });
        }
    }
    entries.push(CheckEntry::new(
        "nf_finite two-strategy agreement + idempotence",
        instances,
        failures,
    ));
    entries
}

/// H_N relations on the induced bimodule plus commutation with the
/// gl_m (+) gl_n action.
pub fn bimodule_relation_suite(bim: &Bimodule125, keys: &[BimKey]) -> Vec<CheckEntry> {
    let nn = bim.setting.nn;
    let one = rone();
    let mut entries = Vec::new();
    let u: Vec<BimOp> = (1..=nn).map(|p| bim.u_op(p)).collect();
    let z: Vec<BimOp> = (1..=nn).map(|p| bim.z_op(p)).collect();
    let sig: Vec<BimOp> = (1..nn)
        .map(|p| bim.sigma_op(&Perm::adjacent(p, nn)))
        .collect();
    for p in 1..nn {
        for q in 1..=nn {
            if q == p || q == p + 1 {
                continue;
            }
            entries.push(check_identity(
                format!("bim sigma_{p} u_{q} commute"),
                &sig[p - 1].compose(&u[q - 1]),
                &u[q - 1].compose(&sig[p - 1]),
                keys,
                &one,
            ));
        }
        entries.push(check_identity(
            format!("bim sigma_{p} u_{p} shift relation"),
            &sig[p - 1].compose(&u[p - 1]),
            &u[p].compose(&sig[p - 1]).sub(&BimOp::identity()),
            keys,
            &one,
        ));
    }
    for q in 1..nn {
        let s = Perm::adjacent(q, nn);
        for p in 1..=nn {
            entries.push(check_identity(
                format!("bim conjugation sigma_{q} z_{p}"),
                &sig[q - 1].compose(&z[p - 1]).compose(&sig[q - 1]),
                &z[s.apply(p) - 1],
                keys,
                &one,
            ));
        }
    }
    for p in 1..=nn {
        for q in p + 1..=nn {
            let spq = bim.sigma_op(&Perm::transposition(p, q, nn));
            entries.push(check_identity(
                format!("bim [z_{p}, z_{q}] = sigma (z_{p} - z_{q})"),
                &z[p - 1].commutator(&z[q - 1]),
                &spq.compose(&z[p - 1].sub(&z[q - 1])),
                keys,
                &one,
            ));
        }
    }
    for (left, size) in [(true, bim.setting.m), (false, bim.setting.n)] {
        for a in 1..=size {
            for b in 1..=size {
                let d = bim.diag_op(left, a, b);
                for p in 1..=nn {
                    entries.push(check_identity(
                        format!(
                            "bim diag [u_{p}, {} E_{a}{b}]",
                            if left { "glm" } else { "gln" }
                        ),
                        &u[p - 1].commutator(&d),
                        &BimOp::zero(),
                        keys,
                        &one,
                    ));
                }
            }
        }
    }
    entries
}

// ---------------------------------------------------------------------------
// affine setting: coinvariants of W modulo q = t^-1 sl_m[t^-1]
// ---------------------------------------------------------------------------

/// Normal form modulo qW for q = t^{-1} sl_m[t^{-1}]: eliminates every
/// traceless PBW factor; trace-direction factors are untouched (they are not
/// in q). Strictly sl-degree-decreasing; the commutator corrections from
/// bubbling a factor to the front re-enter the worklist at lower degree.
pub fn nf_affine(wsp: &WSpace, v: &WVec, strategy: Strategy) -> WVec {
    let mut work = v.clone();
    let mut out: WVec = FreeVector::zero();
    loop {
        let Some((key, coeff)) = work
            .iter()
            .find(|(k, _)| k.modkey.sl_degree() > 0)
            .map(|(k, c)| (k.clone(), c.clone()))
        else {
            out.add_assign(&work);
            return out;
        };
        work.insert_add(key.clone(), -coeff.clone());
        let idx = match strategy {
            Strategy::Leftmost => key
                .modkey
                .mono
                .iter()
                .position(|q| q.gen.is_traceless())
                .unwrap(),
            Strategy::Rightmost => key
                .modkey
                .mono
                .iter()
                .rposition(|q| q.gen.is_traceless())
                .unwrap(),
        };
        work.add_assign(&eliminate(wsp, &key, idx).scale_rat(&coeff));
    }
}

/// One elimination step at factor position idx (monomial possibly unsorted
/// during the internal bubbling; emitted keys are always canonical).
fn eliminate(wsp: &WSpace, key: &WKey, idx: usize) -> WVec {
    let mono = &key.modkey.mono;
    if idx == 0 {
        let head = mono[0];
        debug_assert!(head.gen.is_traceless());
        let tail: PbwMono = mono[1..].to_vec();
        let mut out: WVec = FreeVector::zero();
        for ((a, b), cu) in head.gen.units(wsp.m) {
            for q in 1..=wsp.n {
                if key.word[q - 1] as usize == b {
                    let mut word = key.word.clone();
                    word[q - 1] = a as u8;
                    let mut exps = key.exps.clone();
                    exps[q - 1] -= head.k as i32;
                    out.insert_add(
                        WKey {
                            exps,
                            word,
                            modkey: ModKey {
                                mono: tail.clone(),
                                base: key.modkey.base,
                            },
                        },
                        -cu.clone(),
                    );
                }
            }
        }
        return out;
    }
    // swap idx-1 and idx:  ..A B.. = ..B A.. + ..[A,B]..
    let a = mono[idx - 1];
    let b = mono[idx];
    let mut swapped = mono.clone();
    swapped.swap(idx - 1, idx);
    let mut out = eliminate(
        wsp,
        &WKey {
            exps: key.exps.clone(),
            word: key.word.clone(),
            modkey: ModKey {
                mono: swapped,
                base: key.modkey.base,
            },
        },
        idx - 1,
    );
    for (g, cg) in wsp.module.qbracket_pub(&a, &b) {
        let mut seq: PbwMono = mono[..idx - 1].to_vec();
        seq.push(g);
        seq.extend_from_slice(&mono[idx + 1..]);
        for (mono2, c2) in wsp.module.straighten(&seq).into_terms() {
            out.insert_add(
                WKey {
                    exps: key.exps.clone(),
                    word: key.word.clone(),
                    modkey: ModKey {
                        mono: mono2,
                        base: key.modkey.base,
                    },
                },
                cg.clone() * c2,
            );
        }
    }
    out
}

/// Basis key of the induced T_N-module model: Laurent monomial, word, base.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndKey {
    pub exps: Vec<i32>,
    pub word: Vec<u8>,
    pub base: usize,
}

impl std::fmt::Display for IndKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x^{:?}(x)e{:?}(x)u{}", self.exps, self.word, self.base)
    }
}

pub type IndVec = FreeVector<IndKey, Rat>;
pub type IndOp = LinOp<IndKey, Rat>;

/// The induced T_N-module on C[x^+-] (x) (C^m)^(x N) (x) U: x acts by
/// multiplication, sigma simultaneously, and z_p by the closed-form operator
/// whose restriction to constant x is the corrected Hecke action.
#[derive(Clone)]
pub struct TnModule {
    pub n: usize,
    pub kappa: Rat,
    pub family: HeckeFamily,
}

impl TnModule {
    pub fn new(u: Arc<GlModule>, n: usize, kappa: Rat) -> Self {
        TnModule {
            n,
            kappa,
            family: HeckeFamily::new(u, n, true, rint(0)),
        }
    }

    pub fn enum_keys(&self, lo: i32, hi: i32) -> Vec<IndKey> {
        let mut out = Vec::new();
        for e in crate::dunkl::laurent_window(self.n, lo, hi) {
            for k in self.family.basis() {
                out.push(IndKey {
                    exps: e.0.clone(),
                    word: k.word.clone(),
                    base: k.base,
                });
            }
        }
        out.sort();
        out
    }

    pub fn x_op(&self, p: usize, k: i32) -> IndOp {
        LinOp::from_key_map(format!("x{p}^{k}"), move |key: &IndKey| {
            let mut exps = key.exps.clone();
            exps[p - 1] += k;
            FreeVector::term(
                IndKey {
                    exps,
                    word: key.word.clone(),
                    base: key.base,
                },
                rone(),
            )
        })
    }

    pub fn sigma_op(&self, s: &Perm) -> IndOp {
        let s = s.clone();
        LinOp::from_key_map(format!("sigma{s}"), move |key: &IndKey| {
            let mut exps = vec![0; key.exps.len()];
            for p in 1..=key.exps.len() {
                exps[s.apply(p) - 1] = key.exps[p - 1];
            }
            FreeVector::term(
                IndKey {
                    exps,
                    word: s.apply_positions(&key.word),
                    base: key.base,
                },
                rone(),
            )
        })
    }

    /// z_p = kappa x_p d_p (x) id (x) id
    ///       + sum_{r!=p} (x_p/(x_p-x_r))(1-s_pr) (x) s_pr (x) id
    ///       + id (x) (corrected Hecke z_p on the word and base).
    pub fn z_op(&self, p: usize) -> IndOp {
        let this = self.clone();
        let zloc = self.family.z_op(p);
        LinOp::from_key_map(format!("z{p}"), move |key: &IndKey| {
            let n = this.n;
            let mut out: IndVec = FreeVector::zero();
            let ep = key.exps[p - 1];
            if ep != 0 {
                out.insert_add(key.clone(), this.kappa.clone() * rint(ep as i64));
            }
            for r in 1..=n {
                if r == p {
                    continue;
                }
                let dd = crate::laurent::divided_difference(
                    p,
                    r,
                    &crate::laurent::LaurentPoly::monomial(n, key.exps.clone(), rone()),
                );
                if dd.is_zero() {
                    continue;
                }
                let mut word = key.word.clone();
                word.swap(p - 1, r - 1);
                for (e, c) in dd.terms() {
                    let mut exps = e.clone();
                    exps[p - 1] += 1;
                    out.insert_add(
                        IndKey {
                            exps,
                            word: word.clone(),
                            base: key.base,
                        },
                        c.clone(),
                    );
                }
            }
            let hk = zloc.apply(
                &rone(),
                &TensorKey {
                    word: key.word.clone(),
                    base: key.base,
                },
            );
            for (tk, c) in hk.iter() {
                out.insert_add(
                    IndKey {
                        exps: key.exps.clone(),
                        word: tk.word.clone(),
                        base: tk.base,
                    },
                    c.clone(),
                );
            }
            out
        })
    }
}

fn iota_key(k: &IndKey) -> WKey {
    WKey {
        exps: k.exps.clone(),
        word: k.word.clone(),
        modkey: ModKey {
            mono: vec![],
            base: k.base,
        },
    }
}

/// Depth-0 W-vector as an induced-model vector; panics off depth 0.
fn w_to_ind(v: &WVec) -> IndVec {
    v.map_keys(|k| {
        assert!(k.modkey.mono.is_empty(), "vector not in normal form");
        IndKey {
            exps: k.exps.clone(),
            word: k.word.clone(),
            base: k.modkey.base,
        }
    })
}

/// Affine coinvariant equivalence checker at level kappa - m +
/// level_offset. Verifies the
/// T_N presentation on the induced model, iota-equivariance for the
/// generators x_p^{+-1}, sigma, z_p, the descent of the W-action through
/// nf_affine on positive-depth representatives (this is where the level
/// enters), reducer soundness, and the two-strategy agreement.
#[allow(clippy::too_many_arguments)]
pub fn check_thm_17(
    u: Arc<GlModule>,
    nn: usize,
    kappa: &Rat,
    level_offset: &Rat,
    lo: i32,
    hi: i32,
    depth: u32,
    samples: usize,
    seed: u64,
) -> Vec<CheckEntry> {
    let m = u.m();
    let level = kappa.clone() - rint(m as i64) + level_offset.clone();
    let module = InducedModule::new(u.clone(), level, Flavor::Sl);
    let wsp = WSpace::new(module, nn, kappa.clone(), true);
    let tn = TnModule::new(u, nn, kappa.clone());
    let mut entries = Vec::new();

    let ind_keys = sample_exact(tn.enum_keys(lo, hi), samples, seed);
    let wkeys = sample_exact(wsp.enum_keys(lo, hi, depth), samples, seed.wrapping_add(1));

    // T_N presentation on the induced model
    entries.extend(tn_relation_suite(&tn, &ind_keys));

    // iota-equivariance on the model keys
    let gens: Vec<(String, IndOp, crate::wspace::WOp)> = {
        let mut g = Vec::new();
        for p in 1..=nn {
            for k in [1, -1] {
                g.push((format!("x_{p}^{k}"), tn.x_op(p, k), wsp.x_op(p, k)));
            }
            g.push((format!("z_{p}"), tn.z_op(p), wsp.cherednik_z(p)));
        }
        for q in 1..nn {
            let s = Perm::adjacent(q, nn);
            g.push((format!("sigma_{q}"), tn.sigma_op(&s), wsp.sim_perm_op(&s)));
        }
        g
    };
    for (name, gind, gw) in &gens {
        let mut failures = Vec::new();
        for k in &ind_keys {
            let lhs = w_to_ind(&nf_affine(
                &wsp,
                &gw.apply(&rone(), &iota_key(k)),
                Strategy::Leftmost,
            ));
            let rhs = gind.apply(&rone(), k);
            if !lhs.eq_exact(&rhs) {
                failures.push(Failure {
                    key: k.to_string(),
                    expected: rhs.to_string(),
                    actual: lhs.to_string(),
                });
            }
        }
        entries.push(CheckEntry::new(
            format!("iota equivariance {name}"),
            ind_keys.len() as u64,
            failures,
        ));
    }

    // descent through nf on positive-depth representatives: the action on
    // the quotient is well defined exactly at level kappa - m
    for (name, gind, gw) in &gens {
        let mut failures = Vec::new();
        for k in &wkeys {
            let lhs = w_to_ind(&nf_affine(&wsp, &gw.apply(&rone(), k), Strategy::Leftmost));
            let base = nf_affine(
                &wsp,
                &FreeVector::term(k.clone(), rone()),
                Strategy::Leftmost,
            );
            let rhs = gind.apply_vec(&w_to_ind(&base));
            if !lhs.eq_exact(&rhs) {
                failures.push(Failure {
                    key: k.to_string(),
                    expected: rhs.to_string(),
                    actual: lhs.to_string(),
                });
            }
        }
        entries.push(CheckEntry::new(
            format!("descent through nf_affine {name}"),
            wkeys.len() as u64,
            failures,
        ));
    }

    entries.extend(reducer_soundness_suite(&wsp, &wkeys, depth));
    entries
}

/// T_N relations on the induced model: the z/x commutation rules with operator
/// coefficients, the conjugation rule, the z-commutator relation, and
/// x_p x_p^{-1} = id.
pub fn tn_relation_suite(tn: &TnModule, keys: &[IndKey]) -> Vec<CheckEntry> {
    let n = tn.n;
    let one = rone();
    let mut entries = Vec::new();
    let z: Vec<IndOp> = (1..=n).map(|p| tn.z_op(p)).collect();
    let spq = |p: usize, q: usize| tn.sigma_op(&Perm::transposition(p, q, n));
    for p in 1..=n {
        entries.push(check_identity(
            format!("ind x_{p} x_{p}^-1 = id"),
            &tn.x_op(p, 1).compose(&tn.x_op(p, -1)),
            &IndOp::identity(),
            keys,
            &one,
        ));
        for q in 1..=n {
            if q != p {
                entries.push(check_identity(
                    format!("ind [z_{p}, x_{q}] = -x_{p} sigma"),
                    &z[p - 1].commutator(&tn.x_op(q, 1)),
                    &tn.x_op(p, 1).compose(&spq(p, q)).neg(),
                    keys,
                    &one,
                ));
            }
        }
        let mut rhs = vec![tn.x_op(p, 1).scale_rat(tn.kappa.clone())];
        for r in 1..=n {
            if r != p {
                rhs.push(tn.x_op(p, 1).compose(&spq(p, r)));
            }
        }
        entries.push(check_identity(
            format!("ind [z_{p}, x_{p}] = kappa x + sum x sigma"),
            &z[p - 1].commutator(&tn.x_op(p, 1)),
            &IndOp::sum("rhs", rhs),
            keys,
            &one,
        ));
    }
    for q in 1..n {
        let s = Perm::adjacent(q, n);
        let sop = tn.sigma_op(&s);
        for p in 1..=n {
            entries.push(check_identity(
                format!("ind conjugation sigma_{q} z_{p}"),
                &sop.compose(&z[p - 1]).compose(&sop),
                &z[s.apply(p) - 1],
                keys,
                &one,
            ));
        }
    }
    for p in 1..=n {
        for q in p + 1..=n {
            entries.push(check_identity(
                format!("ind [z_{p}, z_{q}] = sigma (z_{p} - z_{q})"),
                &z[p - 1].commutator(&z[q - 1]),
                &spq(p, q).compose(&z[p - 1].sub(&z[q - 1])),
                keys,
                &one,
            ));
        }
    }
    entries
}

/// Reducer soundness on W: nf kills every theta(q)-image, is idempotent,
/// and the two factor-selection strategies agree.
pub fn reducer_soundness_suite(wsp: &WSpace, keys: &[WKey], q_depth: u32) -> Vec<CheckEntry> {
    let mut entries = Vec::new();
    let qgens = q_basis(Flavor::Sl, wsp.m, q_depth.max(1));
    let mut failures = Vec::new();
    let mut instances = 0u64;
    for qg in &qgens {
        let th = wsp.theta_q(qg);
        for k in keys {
            instances += 1;
            let nf = nf_affine(&wsp.clone(), &th.apply(&rone(), k), Strategy::Leftmost);
            if !nf.is_zero() {
                failures.push(Failure {
                    key: format!("theta({qg}) . {k}"),
                    expected: "0".into(),
                    actual: nf.to_string(),
                });
            }
        }
    }
    entries.push(CheckEntry::new(
        "nf_affine soundness on theta(q)-images",
        instances,
        failures,
    ));

    let mut failures = Vec::new();
    for k in keys {
        let v0 = WVec::term(k.clone(), rone());
        let left = nf_affine(wsp, &v0, Strategy::Leftmost);
        let right = nf_affine(wsp, &v0, Strategy::Rightmost);
        if !left.eq_exact(&right) {
            failures.push(Failure {
                key: k.to_string(),
                expected: left.to_string(),
                actual: right.to_string(),
            });
        }
        let again = nf_affine(wsp, &left, Strategy::Leftmost);
        if !again.eq_exact(&left) {
            failures.push(Failure {
                key: format!("idempotence at {k}"),
                expected: left.to_string(),
                actual: again.to_string(),
            });
        }
    }
    entries.push(CheckEntry::new(
        "nf_affine two-strategy agreement + idempotence",
        2 * keys.len() as u64,
        failures,
    ));
    entries
}

/// qW preservation: nf_affine(Y_p theta(P) w) = 0 for every
/// sl-q-generator P at level kappa - m (+ offset for the negative control).
#[allow(clippy::too_many_arguments)]
pub fn check_qw_preservation(
    u: Arc<GlModule>,
    flavor: Flavor,
    nn: usize,
    kappa: &Rat,
    level_offset: &Rat,
    q_depth: u32,
    lo: i32,
    hi: i32,
    depth: u32,
    samples: usize,
    seed: u64,
) -> Vec<CheckEntry> {
    let m = u.m();
    let level = kappa.clone() - rint(m as i64) + level_offset.clone();
    let module = InducedModule::new(u, level, flavor);
    let wsp = WSpace::new(module, nn, kappa.clone(), flavor == Flavor::Sl);
    let keys = sample_exact(wsp.enum_keys(lo, hi, depth), samples, seed);
    let qgens = q_basis(Flavor::Sl, wsp.m, q_depth);
    let mut entries = Vec::new();
    for p in 1..=nn {
        let y = wsp.y_op(p);
        for qg in &qgens {
            let th = wsp.theta_q(qg);
            let mut failures = Vec::new();
            for k in &keys {
                let img = y.apply_vec(&th.apply(&rone(), k));
                let nf = nf_affine(&wsp, &img, Strategy::Leftmost);
                if !nf.is_zero() {
                    failures.push(Failure {
                        key: k.to_string(),
                        expected: "0".into(),
                        actual: nf.to_string(),
                    });
                }
                // the two strategies must agree on these images too
                let right = nf_affine(&wsp, &img, Strategy::Rightmost);
                if !nf.eq_exact(&right) {
                    failures.push(Failure {
                        key: format!("strategy disagreement at {k}"),
                        expected: nf.to_string(),
                        actual: right.to_string(),
                    });
                }
            }
            entries.push(CheckEntry::new(
                format!("qW preservation Y_{p} theta({qg})"),
                keys.len() as u64,
                failures,
            ));
        }
    }
    entries.extend(reducer_soundness_suite(&wsp, &keys, q_depth));
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::QBasisElem;
    use crate::glmod::{make_natural, make_onedim, GlBasisElem};
    use crate::scalar::rat;

    #[test]
    fn nf_finite_hand_values() {
        // m = n = 1, N = 1
        let u = make_onedim(1, &[rint(2)]).unwrap();
        let v = make_onedim(1, &[rint(-1)]).unwrap();
        let s = FinSetting::new(u, v, 1);
        // nf(e_1 (x) E_21 (x) u (x) v) = -e_2 (x) 1 (x) u (x) v
        let key = FinKey {
            word: vec![1],
            mono: vec![(2, 1)],
            ubase: 0,
            vbase: 0,
        };
        let nf = s.nf(&FinVec::term(key, rone()), Strategy::Leftmost);
        let expected = FinVec::term(
            FinKey {
                word: vec![2],
                mono: vec![],
                ubase: 0,
                vbase: 0,
            },
            -rone(),
        );
        assert!(nf.eq_exact(&expected), "{nf}");
        // depth-0 input is fixed
        let key = FinKey {
            word: vec![2],
            mono: vec![],
            ubase: 0,
            vbase: 0,
        };
        let nf = s.nf(&FinVec::term(key.clone(), rone()), Strategy::Rightmost);
        assert!(nf.eq_exact(&FinVec::term(key, rone())));
    }

    #[test]
    fn uk_unk_on_identity_coset() {
        // on tau = id keys, u_p acts by the subspace formulas with bound p-1
        let u = make_natural(2);
        let v = make_onedim(1, &[rint(3)]).unwrap();
        let setting = FinSetting::new(u, v, 2);
        let bim = Bimodule125::new(setting, UkBound::PMinus1);
        // K = 2 key: u_1 = z-part only (no transpositions)
        let key = BimKey {
            tau: Perm::identity(2),
            worda: vec![1, 2],
            ubase: 1,
            wordb: vec![],
            vbase: 0,
        };
        let out = bim.u_op(1).apply(&rone(), &key);
        // z_1 on e_1 (x) e_2 (x) u_2 over natural(2): from the Hecke example
        let mut expected: BimVec = FreeVector::zero();
        expected.insert_add(
            BimKey {
                tau: Perm::identity(2),
                worda: vec![2, 2],
                ubase: 0,
                wordb: vec![],
                vbase: 0,
            },
            rone(),
        );
        assert!(out.eq_exact(&expected), "{out}");
        // K = 0: u_p includes the scalar -m
        let key = BimKey {
            tau: Perm::identity(2),
            worda: vec![],
            ubase: 0,
            wordb: vec![1, 1],
            vbase: 0,
        };
        let out = bim.u_op(1).apply(&rone(), &key);
        let mut expected: BimVec = FreeVector::zero();
        expected.insert_add(key.clone(), rint(3) - rint(2));
        assert!(out.eq_exact(&expected), "{out}");
    }

    #[test]
    fn thm125_smallest() {
        let u = make_onedim(1, &[rint(2)]).unwrap();
        let v = make_onedim(1, &[rint(-1)]).unwrap();
        for entry in check_thm_125(u, v, 2, UkBound::PMinus1, 600) {
            assert!(entry.passed(), "{}: {:?}", entry.name, entry.failures);
        }
    }

    #[test]
    fn thm125_wrong_bound_fails() {
        let u = make_onedim(1, &[rint(2)]).unwrap();
        let v = make_onedim(1, &[rint(-1)]).unwrap();
        let entries = check_thm_125(u, v, 2, UkBound::PWithIdentity, 600);
        let equivariance_failed = entries
            .iter()
            .any(|e| e.name.contains("intertwines u_p") && !e.passed());
        assert!(equivariance_failed);
    }

    #[test]
    fn nf_affine_hand_values() {
        // m=2, N=1, sl flavor
        let module = InducedModule::new(make_natural(2), rat(1, 2), Flavor::Sl);
        let wsp = WSpace::new(module, 1, rat(5, 2), true);
        let e12 = QBasisElem {
            k: 1,
            gen: GlBasisElem::Off(1, 2),
        };
        // nf(1 (x) e_1 (x) E_12 t^-1 (x) u) = 0 since E_12 e_1 = 0
        let key = WKey {
            exps: vec![0],
            word: vec![1],
            modkey: ModKey {
                mono: vec![e12],
                base: 0,
            },
        };
        let nf = nf_affine(&wsp, &WVec::term(key, rone()), Strategy::Leftmost);
        assert!(nf.is_zero());
        // nf(1 (x) e_2 (x) E_12 t^-1 (x) u) = -x^-1 (x) e_1 (x) 1 (x) u
        let key = WKey {
            exps: vec![0],
            word: vec![2],
            modkey: ModKey {
                mono: vec![e12],
                base: 0,
            },
        };
        let nf = nf_affine(&wsp, &WVec::term(key, rone()), Strategy::Rightmost);
        let expected = WVec::term(
            WKey {
                exps: vec![-1],
                word: vec![1],
                modkey: ModKey {
                    mono: vec![],
                    base: 0,
                },
            },
            -rone(),
        );
        assert!(nf.eq_exact(&expected), "{nf}");
    }

    #[test]
    fn tn_module_z_hand_value() {
        // z_1 (x_2 (x) w (x) u) = x_2 (x) z_1(w,u) - x_1 (x) sigma_12(w,u):
        // one application of the z/x commutation relation
        let tn = TnModule::new(make_natural(2), 2, rat(5, 2));
        let zloc = tn.family.z_op(1);
        let key = IndKey {
            exps: vec![0, 1],
            word: vec![1, 2],
            base: 1,
        };
        let out = tn.z_op(1).apply(&rone(), &key);
        let mut expected: IndVec = FreeVector::zero();
        for (tk, c) in zloc
            .apply(
                &rone(),
                &TensorKey {
                    word: vec![1, 2],
                    base: 1,
                },
            )
            .iter()
        {
            expected.insert_add(
                IndKey {
                    exps: vec![0, 1],
                    word: tk.word.clone(),
                    base: tk.base,
                },
                c.clone(),
            );
        }
        expected.insert_add(
            IndKey {
                exps: vec![1, 0],
                word: vec![2, 1],
                base: 1,
            },
            -rone(),
        );
        assert!(out.eq_exact(&expected), "{out}");
        // restriction to constant-x keys is the corrected Hecke action
        let key = IndKey {
            exps: vec![0, 0],
            word: vec![1, 2],
            base: 1,
        };
        let out = tn.z_op(1).apply(&rone(), &key);
        let mut expected: IndVec = FreeVector::zero();
        for (tk, c) in zloc
            .apply(
                &rone(),
                &TensorKey {
                    word: vec![1, 2],
                    base: 1,
                },
            )
            .iter()
        {
            expected.insert_add(
                IndKey {
                    exps: vec![0, 0],
                    word: tk.word.clone(),
                    base: tk.base,
                },
                c.clone(),
            );
        }
        assert!(out.eq_exact(&expected));
    }

    #[test]
    fn thm17_smallest() {
        let u = make_natural(2);
        for entry in check_thm_17(u, 1, &rat(5, 2), &rint(0), -1, 1, 2, 40, 0) {
            assert!(entry.passed(), "{}: {:?}", entry.name, entry.failures);
        }
    }

    #[test]
    fn thm17_wrong_level_fails() {
        let u = make_natural(2);
        let entries = check_thm_17(u, 1, &rat(5, 2), &rone(), -1, 1, 2, 40, 0);
        let descent_failed = entries
            .iter()
            .any(|e| e.name.contains("descent") && !e.passed());
        assert!(descent_failed, "wrong level must break the descent");
    }

    #[test]
    fn qw_smallest() {
        let u = make_natural(2);
        for entry in check_qw_preservation(
            u.clone(),
            Flavor::Sl,
            1,
            &rat(5, 2),
            &rint(0),
            2,
            -1,
            1,
            2,
            30,
            0,
        ) {
            assert!(entry.passed(), "{}: {:?}", entry.name, entry.failures);
        }
        // negative control at shifted level
        let entries =
            check_qw_preservation(u, Flavor::Sl, 1, &rat(5, 2), &rone(), 2, -1, 1, 2, 30, 0);
        assert!(entries
            .iter()
            .any(|e| e.name.contains("qW preservation") && !e.passed()));
    }
}
