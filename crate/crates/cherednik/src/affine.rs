//! The affine Lie algebras glhat_m and slhat_m: structure constants, smooth
//! parabolically induced modules with PBW normal ordering, and levels.
//!
//! Bracket (a,b,c,d matrix-unit indices, i,j integer modes):
//!   [E_ab t^i, E_cd t^j] = d_bc E_ad t^{i+j} - d_da E_cb t^{i+j}
//!                          + i d_{i,-j} d_ad d_bc C,
//! with C central. An induced module lives on U(q) (x) U where q is spanned
//! by the negative modes (traceless ones for the sl flavor, plus the trace
//! direction I t^-k for the gl flavor); positive modes kill the base, mode 0
//! acts through U, and C acts by the level. Monomials are kept sorted by
//! (mode, kind, a, b); out-of-order products are straightened through the
//! bracket, so the order choice is invisible to every verified identity.

use crate::glmod::{decompose_gl, GlBasisElem, GlModule};
use crate::linops::FreeVector;
use crate::report::{CheckEntry, Failure};
use crate::scalar::{rint, rone, Rat};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A basis element of glhat_m: a loop generator E_ab t^mode, or C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LoopGen {
    E { a: u8, b: u8, mode: i32 },
    Central,
}

impl LoopGen {
    pub fn e(a: usize, b: usize, mode: i32) -> Self {
        LoopGen::E {
            a: a as u8,
            b: b as u8,
            mode,
        }
    }
}

impl std::fmt::Display for LoopGen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoopGen::E { a, b, mode } => write!(f, "E{a}{b}t^{mode}"),
            LoopGen::Central => write!(f, "C"),
        }
    }
}

/// Linear combination of loop generators.
pub type LoopElem = FreeVector<LoopGen, Rat>;

/// The affine bracket on basis elements; C is central.
pub fn loop_bracket(g1: &LoopGen, g2: &LoopGen) -> LoopElem {
    let mut out = FreeVector::zero();
    let (
        LoopGen::E { a, b, mode: i },
        LoopGen::E {
            a: c,
            b: d,
            mode: j,
        },
    ) = (*g1, *g2)
    else {
        return out; // anything involving C
    };
    let m = i + j;
    if b == c {
        out.insert_add(LoopGen::E { a, b: d, mode: m }, rone());
    }
    if d == a {
        out.insert_add(LoopGen::E { a: c, b, mode: m }, -rone());
    }
    if i == -j && a == d && b == c {
        out.insert_add(LoopGen::Central, rint(i as i64));
    }
    out
}

pub fn elem_bracket(x: &LoopElem, y: &LoopElem) -> LoopElem {
    let mut out = FreeVector::zero();
    for (g1, c1) in x.iter() {
        for (g2, c2) in y.iter() {
            out.add_assign(&loop_bracket(g1, g2).scale_rat(&(c1.clone() * c2)));
        }
    }
    out
}

/// Jacobi identity on all generator triples with modes in [lo, hi],
/// C included.
pub fn jacobi_suite(m: usize, lo: i32, hi: i32) -> CheckEntry {
    let mut gens = vec![LoopGen::Central];
    for a in 1..=m {
        for b in 1..=m {
            for mode in lo..=hi {
                gens.push(LoopGen::e(a, b, mode));
            }
        }
    }
    let single = |g: &LoopGen| FreeVector::term(*g, rone());
    let mut failures = Vec::new();
    let mut instances = 0u64;
    for g1 in &gens {
        for g2 in &gens {
            for g3 in &gens {
                instances += 1;
                let mut acc = elem_bracket(&loop_bracket(g1, g2), &single(g3));
                acc.add_assign(&elem_bracket(&loop_bracket(g2, g3), &single(g1)));
                acc.add_assign(&elem_bracket(&loop_bracket(g3, g1), &single(g2)));
                if !acc.is_zero() {
                    failures.push(Failure {
                        key: format!("({g1}, {g2}, {g3})"),
                        expected: "0".into(),
                        actual: acc.to_string(),
                    });
                }
            }
        }
    }
    CheckEntry::new(
        format!("jacobi m={m} modes [{lo},{hi}]"),
        instances,
        failures,
    )
}

/// Which negative-mode subalgebra q the induction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Gl,
    Sl,
}

/// A q-basis element F t^-k, k >= 1, F in the adapted gl_m basis.
/// The sl flavor excludes the trace direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QBasisElem {
    pub k: u32,
    pub gen: GlBasisElem,
}

impl QBasisElem {
    fn sort_key(&self) -> (u32, u8, u8, u8) {
        match self.gen {
            GlBasisElem::Off(a, b) => (self.k, 0, a, b),
            GlBasisElem::Cartan(a) => (self.k, 1, a, 0),
            GlBasisElem::Trace => (self.k, 2, 0, 0),
        }
    }
}

impl PartialOrd for QBasisElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QBasisElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl std::fmt::Display for QBasisElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}t^-{}", self.gen, self.k)
    }
}

/// All q-generators with k <= depth_bound: (m^2 - 1) per depth for sl,
/// m^2 per depth for gl.
pub fn q_basis(flavor: Flavor, m: usize, depth_bound: u32) -> Vec<QBasisElem> {
    let mut out = Vec::new();
    for k in 1..=depth_bound {
        for gen in GlBasisElem::all(m, flavor == Flavor::Gl) {
            out.push(QBasisElem { k, gen });
        }
    }
    out
}

/// Sorted PBW monomial in the q-basis (repetitions allowed).
pub type PbwMono = Vec<QBasisElem>;

/// Basis key of an induced module: PBW monomial and base-module index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModKey {
    pub mono: PbwMono,
    pub base: usize,
}

impl ModKey {
    pub fn depth(&self) -> u32 {
        self.mono.iter().map(|q| q.k).sum()
    }

    /// Number of non-trace PBW factors (what coinvariant reduction removes).
    pub fn sl_degree(&self) -> usize {
        self.mono.iter().filter(|q| q.gen.is_traceless()).count()
    }
}

impl std::fmt::Display for ModKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for q in &self.mono {
            write!(f, "{q}.")?;
        }
        write!(f, "1(x)u{}", self.base)
    }
}

pub type ModVec = FreeVector<ModKey, Rat>;

/// A smooth parabolically induced module of glhat_m or slhat_m.
#[derive(Clone)]
pub struct InducedModule {
    pub flavor: Flavor,
    pub m: usize,
    pub base: Arc<GlModule>,
    pub level: Rat,
}

impl InducedModule {
    pub fn new(base: Arc<GlModule>, level: Rat, flavor: Flavor) -> Arc<Self> {
        Arc::new(InducedModule {
            flavor,
            m: base.m(),
            base,
            level,
        })
    }

    /// All PBW monomials of total depth <= bound, with base indices.
    pub fn enum_keys(&self, depth_bound: u32) -> Vec<ModKey> {
        let basis = q_basis(self.flavor, self.m, depth_bound);
        let mut monos: Vec<PbwMono> = Vec::new();
        fn rec(
            basis: &[QBasisElem],
            start: usize,
            left: u32,
            cur: &mut PbwMono,
            out: &mut Vec<PbwMono>,
        ) {
            out.push(cur.clone());
            for i in start..basis.len() {
                if basis[i].k <= left {
                    cur.push(basis[i]);
                    rec(basis, i, left - basis[i].k, cur, out);
                    cur.pop();
                }
            }
        }
        rec(&basis, 0, depth_bound, &mut Vec::new(), &mut monos);
        let mut keys = Vec::new();
        for mono in monos {
            for base in 0..self.base.dim() {
                keys.push(ModKey {
                    mono: mono.clone(),
                    base,
                });
            }
        }
        keys.sort();
        keys
    }

    /// [q1, q2] expanded back into the q-basis; always traceless.
    fn qbracket(&self, q1: &QBasisElem, q2: &QBasisElem) -> Vec<(QBasisElem, Rat)> {
        let mut units: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for ((a, b), c1) in q1.gen.units(self.m) {
            for ((c, d), c2) in q2.gen.units(self.m) {
                let coeff = c1.clone() * c2;
                if b == c {
                    *units.entry((a, d)).or_insert_with(Rat::zero) += coeff.clone();
                }
                if d == a {
                    *units.entry((c, b)).or_insert_with(Rat::zero) -= coeff;
                }
            }
        }
        units.retain(|_, v| !v.is_zero());
        let k = q1.k + q2.k;
        decompose_gl(&units, self.m, true)
            .unwrap()
            .into_iter()
            .map(|(gen, c)| (QBasisElem { k, gen }, c))
            .collect()
    }

    /// Straightened left multiplication of one q-basis element.
    fn insert(&self, q: &QBasisElem, mono: &[QBasisElem]) -> FreeVector<PbwMono, Rat> {
        if mono.is_empty() || q <= &mono[0] {
            let mut out = Vec::with_capacity(mono.len() + 1);
            out.push(*q);
            out.extend_from_slice(mono);
            return FreeVector::term(out, rone());
        }
        let head = mono[0];
        let rest = &mono[1..];
        let mut out = FreeVector::zero();
        for (m2, c) in self.insert(q, rest).into_terms() {
            let mut with_head = Vec::with_capacity(m2.len() + 1);
            with_head.push(head);
            with_head.extend(m2);
            out.insert_add(with_head, c);
        }
        for (b, cb) in self.qbracket(q, &head) {
            for (m3, c3) in self.insert(&b, rest).into_terms() {
                out.insert_add(m3, cb.clone() * c3);
            }
        }
        out
    }

    /// The bracket of two q-basis elements, for external straightening.
    pub fn qbracket_pub(&self, q1: &QBasisElem, q2: &QBasisElem) -> Vec<(QBasisElem, Rat)> {
        self.qbracket(q1, q2)
    }

    /// Straightens an arbitrary factor sequence into sorted PBW monomials.
    pub fn straighten(&self, seq: &[QBasisElem]) -> FreeVector<PbwMono, Rat> {
        let mut out: FreeVector<PbwMono, Rat> = FreeVector::term(Vec::new(), rone());
        for q in seq.iter().rev() {
            let mut next = FreeVector::zero();
            for (mono, c) in out.into_terms() {
                for (mono2, c2) in self.insert(q, &mono).into_terms() {
                    next.insert_add(mono2, c.clone() * c2);
                }
            }
            out = next;
        }
        out
    }

    /// Left multiplication by a q-basis element on a module vector.
    pub fn left_mult(&self, q: &QBasisElem, v: &ModVec) -> ModVec {
        let mut out = FreeVector::zero();
        for (key, c) in v.iter() {
            for (mono, c2) in self.insert(q, &key.mono).into_terms() {
                out.insert_add(
                    ModKey {
                        mono,
                        base: key.base,
                    },
                    c.clone() * c2,
                );
            }
        }
        out
    }

    /// Normal ordering: commute E_ab t^mode past the PBW factors until it
    /// meets the base, where non-negative modes act through U (mode 0) or
    /// vanish (mode >= 1); negative modes left-multiply in U(q).
    pub fn act_unit(&self, a: usize, b: usize, mode: i32, key: &ModKey) -> ModVec {
        if mode < 0 {
            let mut units = BTreeMap::new();
            units.insert((a, b), rone());
            let parts = decompose_gl(&units, self.m, self.flavor == Flavor::Gl)
                .expect("negative-mode generator must lie in q for this flavor");
            let k = (-mode) as u32;
            let mut out = FreeVector::zero();
            for (gen, c) in parts {
                out.add_assign(
                    &self
                        .left_mult(
                            &QBasisElem { k, gen },
                            &FreeVector::term(key.clone(), rone()),
                        )
                        .scale_rat(&c),
                );
            }
            return out;
        }
        if key.mono.is_empty() {
            if mode > 0 {
                return FreeVector::zero();
            }
            let mut out = FreeVector::zero();
            for (row, c) in self.base.apply(a, b, key.base) {
                out.insert_add(
                    ModKey {
                        mono: Vec::new(),
                        base: row,
                    },
                    c,
                );
            }
            return out;
        }
        let head = key.mono[0];
        let tail = ModKey {
            mono: key.mono[1..].to_vec(),
            base: key.base,
        };
        // E t^mode . head = head . E t^mode + [E t^mode, head t^-k]
        let mut out = self.left_mult(&head, &self.act_unit(a, b, mode, &tail));
        let k = head.k as i32;
        out.add_assign(&self.act_units(&self.unit_commutator(a, b, &head.gen), mode - k, &tail));
        if mode == k {
            // central term: mode * tr(E_ab F) * level
            let tr = self.trace_with_unit(a, b, &head.gen);
            if !tr.is_zero() {
                let c = rint(mode as i64) * tr * self.level.clone();
                out.insert_add(tail, c);
            }
        }
        out
    }

    /// A traceless-as-a-whole combination of matrix units at one mode; the
    /// negative-mode case decomposes the combination jointly before the
    /// PBW left multiplication.
    fn act_units(&self, units: &[((usize, usize), Rat)], mode: i32, key: &ModKey) -> ModVec {
        if mode >= 0 {
            let mut out = FreeVector::zero();
            for ((c, d), coeff) in units {
                out.add_assign(&self.act_unit(*c, *d, mode, key).scale_rat(coeff));
            }
            return out;
        }
        let mut map: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for ((c, d), coeff) in units {
            *map.entry((*c, *d)).or_insert_with(Rat::zero) += coeff.clone();
        }
        map.retain(|_, v| !v.is_zero());
        let parts = decompose_gl(&map, self.m, self.flavor == Flavor::Gl)
            .expect("negative-mode element must lie in q for this flavor");
        let k = (-mode) as u32;
        let mut out = FreeVector::zero();
        let v = FreeVector::term(key.clone(), rone());
        for (gen, c) in parts {
            out.add_assign(&self.left_mult(&QBasisElem { k, gen }, &v).scale_rat(&c));
        }
        out
    }

    /// [E_ab, F] in matrix units, for F in the adapted basis.
    fn unit_commutator(&self, a: usize, b: usize, gen: &GlBasisElem) -> Vec<((usize, usize), Rat)> {
        let mut units: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for ((c, d), coeff) in gen.units(self.m) {
            if b == c {
                *units.entry((a, d)).or_insert_with(Rat::zero) += coeff.clone();
            }
            if d == a {
                *units.entry((c, b)).or_insert_with(Rat::zero) -= coeff;
            }
        }
        units.retain(|_, v| !v.is_zero());
        units.into_iter().collect()
    }

    /// tr(E_ab . F) = F_{ba}.
    fn trace_with_unit(&self, a: usize, b: usize, gen: &GlBasisElem) -> Rat {
        gen.units(self.m)
            .into_iter()
            .filter(|((c, d), _)| *c == b && *d == a)
            .map(|(_, coeff)| coeff)
            .sum()
    }

    pub fn act_gen(&self, g: &LoopGen, key: &ModKey) -> ModVec {
        match g {
            LoopGen::Central => FreeVector::term(key.clone(), self.level.clone()),
            LoopGen::E { a, b, mode } => self.act_unit(*a as usize, *b as usize, *mode, key),
        }
    }

    /// Applies a combination of loop generators. The negative-mode part is
    /// grouped by mode and decomposed jointly, so combinations that are
    /// traceless as a whole act on sl-flavor modules even when individual
    /// matrix units are not.
    pub fn act_elem(&self, elem: &LoopElem, v: &ModVec) -> ModVec {
        let mut by_neg_mode: BTreeMap<i32, Vec<((usize, usize), Rat)>> = BTreeMap::new();
        let mut rest: Vec<(LoopGen, Rat)> = Vec::new();
        for (g, c) in elem.iter() {
            match g {
                LoopGen::E { a, b, mode } if *mode < 0 => by_neg_mode
                    .entry(*mode)
                    .or_default()
                    .push(((*a as usize, *b as usize), c.clone())),
                _ => rest.push((*g, c.clone())),
            }
        }
        let mut out = FreeVector::zero();
        for (key, c) in v.iter() {
            for (mode, units) in &by_neg_mode {
                out.add_assign(&self.act_units(units, *mode, key).scale_rat(c));
            }
            for (g, c2) in &rest {
                out.add_assign(&self.act_gen(g, key).scale_rat(&(c.clone() * c2)));
            }
        }
        out
    }
}

/// Representation property on the induced module: the commutator of two
/// generator actions equals the action of the bracket, levels included.
pub fn representation_suite(
    module: &InducedModule,
    gens: &[LoopGen],
    keys: &[ModKey],
) -> CheckEntry {
    let mut failures = Vec::new();
    let mut instances = 0u64;
    for g1 in gens {
        for g2 in gens {
            let bracket = loop_bracket(g1, g2);
            for key in keys {
                instances += 1;
                let v = FreeVector::term(key.clone(), rone());
                let mut lhs = module.act_elem(
                    &FreeVector::term(*g1, rone()),
                    &module.act_elem(&FreeVector::term(*g2, rone()), &v),
                );
                lhs.add_assign(
                    &module
                        .act_elem(
                            &FreeVector::term(*g2, rone()),
                            &module.act_elem(&FreeVector::term(*g1, rone()), &v),
                        )
                        .neg(),
                );
                let rhs = module.act_elem(&bracket, &v);
                if !lhs.eq_exact(&rhs) {
                    failures.push(Failure {
                        key: format!("[{g1},{g2}] on {key}"),
                        expected: rhs.to_string(),
                        actual: lhs.to_string(),
                    });
                }
            }
        }
    }
    CheckEntry::new("representation property", instances, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glmod::make_natural;
    use crate::scalar::rat;

    #[test]
    fn bracket_hand_values() {
        // [E_12 t, E_21 t^-1] = E_11 - E_22 + C
        let out = loop_bracket(&LoopGen::e(1, 2, 1), &LoopGen::e(2, 1, -1));
        let mut expected: LoopElem = FreeVector::zero();
        expected.insert_add(LoopGen::e(1, 1, 0), rone());
        expected.insert_add(LoopGen::e(2, 2, 0), -rone());
        expected.insert_add(LoopGen::Central, rone());
        assert!(out.eq_exact(&expected));
        // [E_11 t, E_11 t^-1] = C
        let out = loop_bracket(&LoopGen::e(1, 1, 1), &LoopGen::e(1, 1, -1));
        assert!(out.eq_exact(&FreeVector::term(LoopGen::Central, rone())));
        // C central
        assert!(loop_bracket(&LoopGen::Central, &LoopGen::e(1, 2, 3)).is_zero());
        // antisymmetry spot check: central term carries the mode factor
        let out = loop_bracket(&LoopGen::e(1, 1, -2), &LoopGen::e(1, 1, 2));
        assert!(out.eq_exact(&FreeVector::term(LoopGen::Central, rint(-2))));
    }

    #[test]
    fn jacobi_small() {
        let entry = jacobi_suite(2, -2, 2);
        assert!(entry.passed(), "{:?}", entry.failures);
    }

    #[test]
    fn q_basis_counts() {
        assert_eq!(q_basis(Flavor::Sl, 2, 1).len(), 3);
        assert_eq!(q_basis(Flavor::Gl, 2, 2).len(), 8);
        assert_eq!(q_basis(Flavor::Sl, 3, 1).len(), 8);
    }

    fn key0(base: usize) -> ModKey {
        ModKey { mono: vec![], base }
    }

    #[test]
    fn induced_module_hand_values() {
        let m = InducedModule::new(make_natural(2), rat(7, 2), Flavor::Gl);
        // positive modes kill the base
        assert!(m.act_gen(&LoopGen::e(1, 2, 1), &key0(0)).is_zero());
        // C acts by the level
        let k = ModKey {
            mono: vec![QBasisElem {
                k: 1,
                gen: GlBasisElem::Off(2, 1),
            }],
            base: 0,
        };
        assert!(m
            .act_gen(&LoopGen::Central, &k)
            .eq_exact(&FreeVector::term(k.clone(), rat(7, 2))));
        // E_12 t applied to (E_21 t^-1)(x)u = (E_11 - E_22 + level).u at depth 0
        let out = m.act_gen(&LoopGen::e(1, 2, 1), &k);
        // on u = e_1: (E_11 - E_22) e_1 = e_1, plus level e_1
        let expected = FreeVector::term(key0(0), rone() + rat(7, 2));
        assert!(out.eq_exact(&expected), "{out}");
        // E_11 t applied to (E_11 t^-1)(x)u: E_11 = H1/... trace part present,
        // bracket vanishes, central term tr(E_11 E_11) = 1 survives
        let k11 = ModKey {
            mono: vec![QBasisElem {
                k: 1,
                gen: GlBasisElem::Trace,
            }],
            base: 0,
        };
        let out = m.act_gen(&LoopGen::e(1, 1, 1), &k11);
        // [E_11 t, I t^-1] = 1*tr(E_11 I) C = C
        assert!(out.eq_exact(&FreeVector::term(key0(0), rat(7, 2))));
        // mode-0 generator on the base acts through U
        let out = m.act_gen(&LoopGen::e(1, 2, 0), &key0(1));
        assert!(out.eq_exact(&FreeVector::term(key0(0), rone())));
    }

    #[test]
    fn depth_decreases_under_positive_modes() {
        let m = InducedModule::new(make_natural(2), rat(5, 3), Flavor::Sl);
        for key in m.enum_keys(2) {
            let d = key.depth();
            for mode in 1..=2i32 {
                for a in 1..=2 {
                    for b in 1..=2 {
                        let out = m.act_unit(a, b, mode, &key);
                        for (k2, _) in out.iter() {
                            assert!(k2.depth() + mode as u32 <= d);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn representation_property_both_flavors() {
        let mut gens = vec![LoopGen::Central];
        for a in 1..=2 {
            for b in 1..=2 {
                for mode in -2..=2 {
                    gens.push(LoopGen::e(a, b, mode));
                }
            }
        }
        let gl = InducedModule::new(make_natural(2), rat(7, 2), Flavor::Gl);
        let keys = gl.enum_keys(2);
        let entry = representation_suite(&gl, &gens, &keys);
        assert!(entry.passed(), "{:?}", entry.failures);

        // sl flavor: only traceless generators may act from negative modes
        let sl = InducedModule::new(make_natural(2), rat(7, 2), Flavor::Sl);
        let mut sl_gens = vec![LoopGen::Central];
        for mode in -2..=2i32 {
            sl_gens.push(LoopGen::e(1, 2, mode));
            sl_gens.push(LoopGen::e(2, 1, mode));
        }
        let keys = sl.enum_keys(2);
        let entry = representation_suite(&sl, &sl_gens, &keys);
        assert!(entry.passed(), "{:?}", entry.failures);
    }

    #[test]
    fn sl_flavor_rejects_trace_left_multiplication() {
        let sl = InducedModule::new(make_natural(2), rone(), Flavor::Sl);
        let result = std::panic::catch_unwind(|| sl.act_unit(1, 1, -1, &key0(0)));
        assert!(result.is_err());
    }

    #[test]
    fn straightening_matches_bracket() {
        // q P (x) u = P q (x) u + [q, P] (x) u for out-of-order factors
        let sl = InducedModule::new(make_natural(2), rat(1, 3), Flavor::Sl);
        let e12 = QBasisElem {
            k: 1,
            gen: GlBasisElem::Off(1, 2),
        };
        let e21 = QBasisElem {
            k: 1,
            gen: GlBasisElem::Off(2, 1),
        };
        assert!(e12 < e21);
        // left-multiply the later element onto the earlier one
        let v = FreeVector::term(
            ModKey {
                mono: vec![e12],
                base: 0,
            },
            rone(),
        );
        let out = sl.left_mult(&e21, &v);
        // E21t^-1 E12t^-1 = E12t^-1 E21t^-1 + [E21,E12]t^-2 = sorted + (-H1)t^-2
        let mut expected: ModVec = FreeVector::zero();
        expected.insert_add(
            ModKey {
                mono: vec![e12, e21],
                base: 0,
            },
            rone(),
        );
        expected.insert_add(
            ModKey {
                mono: vec![QBasisElem {
                    k: 2,
                    gen: GlBasisElem::Cartan(1),
                }],
                base: 0,
            },
            -rone(),
        );
        assert!(out.eq_exact(&expected), "{out}");
    }

    #[test]
    fn enum_keys_counts() {
        let sl = InducedModule::new(make_natural(2), rone(), Flavor::Sl);
        // depth<=2, m=2, sl: monomials {1; 3 at depth 1; 3 + 6 at depth 2} = 13
        assert_eq!(sl.enum_keys(2).len(), 13 * 2);
        let gl = InducedModule::new(make_natural(2), rone(), Flavor::Gl);
        // gl: {1; 4; 4 + 10} = 19
        assert_eq!(gl.enum_keys(2).len(), 19 * 2);
    }
}
