//! Finite-dimensional gl_m-modules given by explicit matrices for all matrix
//! units E_ab, validated against [E_ab, E_cd] = d_bc E_ad - d_da E_cb at
//! construction. sl_m-modules are gl_m-modules plus a correction flag carried
//! by the operators built from them; the corrected operators are independent
//! of the chosen gl-extension, which the suites assert by re-running with a
//! shifted trace eigenvalue.

use crate::fraction::DiffFrac;
use crate::linops::{check_identity, FreeVector, LinOp};
use crate::report::{CheckEntry, Failure};
use crate::scalar::{rat, rint, rone, Rat};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

pub type Mat = Vec<Vec<Rat>>;

fn zero_mat(dim: usize) -> Mat {
    vec![vec![Rat::zero(); dim]; dim]
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let dim = a.len();
    let mut out = zero_mat(dim);
    for i in 0..dim {
        for k in 0..dim {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..dim {
                if !b[k][j].is_zero() {
                    out[i][j] += a[i][k].clone() * b[k][j].clone();
                }
            }
        }
    }
    out
}

fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.clone() - y.clone())
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct GlModule {
    m: usize,
    dim: usize,
    /// mats[a-1][b-1] is the dim x dim matrix of E_ab, row-major.
    mats: Vec<Vec<Mat>>,
}

impl GlModule {
    /// Builds and validates. The validation checks all m^4 bracket relations
    /// exactly and reports the first failing (a,b,c,d).
    pub fn new(m: usize, dim: usize, mats: Vec<Vec<Mat>>) -> Result<Self, String> {
        let module = GlModule { m, dim, mats };
        module.validate()?;
        Ok(module)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self, a: usize, b: usize) -> &Mat {
        &self.mats[a - 1][b - 1]
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.mats.len() != self.m || self.mats.iter().any(|row| row.len() != self.m) {
            return Err("matrix table is not m x m".into());
        }
        for row in &self.mats {
            for mat in row {
                if mat.len() != self.dim || mat.iter().any(|r| r.len() != self.dim) {
                    return Err("matrix has wrong dimensions".into());
                }
            }
        }
        for a in 1..=self.m {
            for b in 1..=self.m {
                for c in 1..=self.m {
                    for d in 1..=self.m {
                        let lhs = mat_sub(
                            &mat_mul(self.mat(a, b), self.mat(c, d)),
                            &mat_mul(self.mat(c, d), self.mat(a, b)),
                        );
                        let mut rhs = zero_mat(self.dim);
                        if b == c {
                            rhs = self.mat(a, d).clone();
                        }
                        if d == a {
                            rhs = mat_sub(&rhs, self.mat(c, b));
                        }
                        if mat_sub(&lhs, &rhs).iter().flatten().any(|x| !x.is_zero()) {
                            return Err(format!(
                                "bracket relation violated at [E_{a}{b}, E_{c}{d}]"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// E_ab applied to basis vector `col`: sparse column of the result.
    pub fn apply(&self, a: usize, b: usize, col: usize) -> Vec<(usize, Rat)> {
        let mat = self.mat(a, b);
        (0..self.dim)
            .filter(|&r| !mat[r][col].is_zero())
            .map(|r| (r, mat[r][col].clone()))
            .collect()
    }

    /// I = E_11 + ... + E_mm applied to basis vector `col`.
    pub fn apply_trace(&self, col: usize) -> Vec<(usize, Rat)> {
        let mut out: BTreeMap<usize, Rat> = BTreeMap::new();
        for a in 1..=self.m {
            for (r, c) in self.apply(a, a, col) {
                *out.entry(r).or_insert_with(Rat::zero) += c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out.into_iter().collect()
    }

    /// A different gl-extension of the same underlying sl-module: adds
    /// (c/m) id to every diagonal matrix, shifting the I-eigenvalue by c.
    pub fn shift_trace(&self, c: &Rat) -> GlModule {
        let mut mats = self.mats.clone();
        let step = c / rint(self.m as i64);
        for a in 0..self.m {
            for i in 0..self.dim {
                mats[a][a][i][i] += step.clone();
            }
        }
        let out = GlModule {
            m: self.m,
            dim: self.dim,
            mats,
        };
        out.validate()
            .expect("trace shift preserves the bracket relations");
        out
    }
}

/// A copy of the natural gl_m-module: E_ab acts as the elementary matrix e_ab.
pub fn make_natural(m: usize) -> Arc<GlModule> {
    let mut mats = vec![vec![zero_mat(m); m]; m];
    for a in 0..m {
        for b in 0..m {
            mats[a][b][a][b] = rone();
        }
    }
    Arc::new(GlModule::new(m, m, mats).expect("natural module validates"))
}

/// Diagonal one-dimensional module: E_aa acts by weights[a-1], off-diagonal
/// units act by zero. Valid as a gl_m-module only when the bracket relations
/// allow it (all weights equal for m >= 2); validation decides.
pub fn make_onedim(m: usize, weights: &[Rat]) -> Result<Arc<GlModule>, String> {
    assert_eq!(weights.len(), m);
    let mut mats = vec![vec![zero_mat(1); m]; m];
    for a in 0..m {
        mats[a][a][0][0] = weights[a].clone();
    }
    GlModule::new(m, 1, mats).map(Arc::new)
}

/// The trivial module (all units act by zero).
pub fn make_trivial(m: usize) -> Arc<GlModule> {
    make_onedim(m, &vec![Rat::zero(); m]).expect("trivial module validates")
}

/// Tensor product: E_ab acts as E_ab (x) id + id (x) E_ab.
pub fn tensor(u1: &GlModule, u2: &GlModule) -> Result<Arc<GlModule>, String> {
    if u1.m() != u2.m() {
        return Err(format!("mismatched m: {} vs {}", u1.m(), u2.m()));
    }
    let m = u1.m();
    let (d1, d2) = (u1.dim(), u2.dim());
    let dim = d1 * d2;
    // basis index i*d2 + j for e_i (x) f_j
    let mut mats = vec![vec![zero_mat(dim); m]; m];
    for a in 1..=m {
        for b in 1..=m {
            let mat = &mut mats[a - 1][b - 1];
            for i in 0..d1 {
                for j in 0..d2 {
                    let col = i * d2 + j;
                    for (r, c) in u1.apply(a, b, i) {
                        mat[r * d2 + j][col] += c;
                    }
                    for (r, c) in u2.apply(a, b, j) {
                        mat[i * d2 + r][col] += c;
                    }
                }
            }
        }
    }
    GlModule::new(m, dim, mats).map(Arc::new)
}

/// Basis of gl_m adapted to the splitting gl_m = sl_m + C I:
/// off-diagonal matrix units, the simple coweights E_aa - E_{a+1,a+1},
/// and the trace direction I.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GlBasisElem {
    Off(u8, u8),
    Cartan(u8),
    Trace,
}

impl GlBasisElem {
    /// Matrix-unit expansion: list of ((a,b), coefficient).
    pub fn units(&self, m: usize) -> Vec<((usize, usize), Rat)> {
        match *self {
            GlBasisElem::Off(a, b) => vec![((a as usize, b as usize), rone())],
            GlBasisElem::Cartan(a) => vec![
                ((a as usize, a as usize), rone()),
                ((a as usize + 1, a as usize + 1), -rone()),
            ],
            GlBasisElem::Trace => (1..=m).map(|a| ((a, a), rone())).collect(),
        }
    }

    pub fn is_traceless(&self) -> bool {
        !matches!(self, GlBasisElem::Trace)
    }

    /// All basis elements; sl_m first, then I.
    pub fn all(m: usize, include_trace: bool) -> Vec<GlBasisElem> {
        let mut out = Vec::new();
        for a in 1..=m as u8 {
            for b in 1..=m as u8 {
                if a != b {
                    out.push(GlBasisElem::Off(a, b));
                }
            }
        }
        for a in 1..m as u8 {
            out.push(GlBasisElem::Cartan(a));
        }
        if include_trace {
            out.push(GlBasisElem::Trace);
        }
        out
    }
}

impl std::fmt::Display for GlBasisElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlBasisElem::Off(a, b) => write!(f, "E{a}{b}"),
            GlBasisElem::Cartan(a) => write!(f, "H{a}"),
            GlBasisElem::Trace => write!(f, "I"),
        }
    }
}

/// Decomposes a gl_m element given in matrix units over the adapted basis.
/// Errors if `allow_trace` is false and the element has a trace component.
pub fn decompose_gl(
    coeffs: &BTreeMap<(usize, usize), Rat>,
    m: usize,
    allow_trace: bool,
) -> Result<Vec<(GlBasisElem, Rat)>, String> {
    let mut out = Vec::new();
    let mut diag = vec![Rat::zero(); m];
    for (&(a, b), c) in coeffs {
        if c.is_zero() {
            continue;
        }
        if a == b {
            diag[a - 1] = c.clone();
        } else {
            out.push((GlBasisElem::Off(a as u8, b as u8), c.clone()));
        }
    }
    let trace: Rat = diag.iter().cloned().sum();
    let mean = trace.clone() / rint(m as i64);
    if !trace.is_zero() {
        if !allow_trace {
            return Err(format!("element has trace component {trace}"));
        }
        out.push((GlBasisElem::Trace, mean.clone()));
    }
    let mut acc = Rat::zero();
    for a in 1..m {
        acc += diag[a - 1].clone() - mean.clone();
        if !acc.is_zero() {
            out.push((GlBasisElem::Cartan(a as u8), acc.clone()));
        }
    }
    Ok(out)
}

/// Checks that sum_ab E_ab (x) E_ba - (1/m) I (x) I lies in sl_m (x) sl_m,
/// by decomposing in the adapted basis on both tensor slots and confirming
/// every component involving I vanishes.
pub fn casimir_split_check(m: usize) -> CheckEntry {
    // coefficient tensor of the element in matrix units
    let mut coeff: BTreeMap<((usize, usize), (usize, usize)), Rat> = BTreeMap::new();
    for a in 1..=m {
        for b in 1..=m {
            *coeff.entry(((a, b), (b, a))).or_insert_with(Rat::zero) += rone();
        }
    }
    for a in 1..=m {
        for c in 1..=m {
            *coeff.entry(((a, a), (c, c))).or_insert_with(Rat::zero) -= rat(1, m as i64);
        }
    }
    let mut failures = Vec::new();
    let mut instances = 0u64;
    // slot 1 decomposition for each fixed slot-2 unit, then the reverse
    for slot in 0..2 {
        let mut grouped: BTreeMap<(usize, usize), BTreeMap<(usize, usize), Rat>> = BTreeMap::new();
        for (&(u1, u2), c) in &coeff {
            let (fixed, var) = if slot == 0 { (u2, u1) } else { (u1, u2) };
            *grouped
                .entry(fixed)
                .or_default()
                .entry(var)
                .or_insert_with(Rat::zero) += c.clone();
        }
        for (fixed, elem) in grouped {
            instances += 1;
            let parts = decompose_gl(&elem, m, true).unwrap();
            for (basis, c) in parts {
                if basis == GlBasisElem::Trace && !c.is_zero() {
                    failures.push(Failure {
                        key: format!("slot{} against E_{}{}", slot + 1, fixed.0, fixed.1),
                        expected: "no I component".into(),
                        actual: format!("I coefficient {c}"),
                    });
                }
            }
        }
    }
    CheckEntry::new(format!("casimir_split m={m}"), instances, failures)
}

/// Word of length 3 over {1..m}: the basis of C^m (x) C^m (x) C^m in the
/// classical Yang-Baxter check.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CybeWord(pub Vec<u8>);

impl std::fmt::Display for CybeWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e{:?}", self.0)
    }
}

/// Verifies [r_12, r_13] + [r_12, r_23] + [r_13, r_23] = 0 for
/// r(u,v) = (1/(u-v)) sum_ab E_ab (x) E_ba, exactly, with coefficients in the
/// three-variable difference-fraction field. The sum over a,b acts on
/// C^m (x) C^m as the flip of the two factors.
pub fn check_cybe(m: usize) -> CheckEntry {
    let r = |p: usize, q: usize| -> LinOp<CybeWord, DiffFrac> {
        LinOp::new(format!("r{p}{q}"), move |s: &DiffFrac, w: &CybeWord| {
            let mut word = w.0.clone();
            word.swap(p - 1, q - 1);
            FreeVector::term(CybeWord(word), s.mul_inv_difference(p, q))
        })
    };
    let (r12, r13, r23) = (r(1, 2), r(1, 3), r(2, 3));
    let lhs = r12
        .commutator(&r13)
        .add(&r12.commutator(&r23))
        .add(&r13.commutator(&r23));
    let mut keys = Vec::new();
    for a in 1..=m as u8 {
        for b in 1..=m as u8 {
            for c in 1..=m as u8 {
                keys.push(CybeWord(vec![a, b, c]));
            }
        }
    }
    check_identity(
        format!("cybe m={m}"),
        &lhs,
        &LinOp::zero(),
        &keys,
        &DiffFrac::one(3),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_module_examples() {
        let u = make_natural(2);
        // E_12 e_2 = e_1, E_12 e_1 = 0  (columns are 0-based)
        assert_eq!(u.apply(1, 2, 1), vec![(0, rone())]);
        assert!(u.apply(1, 2, 0).is_empty());
        // I acts as identity
        assert_eq!(u.apply_trace(0), vec![(0, rone())]);
        assert!(u.validate().is_ok());
    }

    #[test]
    fn corrupted_module_fails_validation() {
        let u = make_natural(2);
        let mut mats = vec![
            vec![u.mat(1, 1).clone(), u.mat(1, 2).clone()],
            vec![u.mat(2, 1).clone(), u.mat(2, 2).clone()],
        ];
        // corrupt E_12 to e_21; the first violated relation gets named
        mats[0][1] = u.mat(2, 1).clone();
        let err = GlModule::new(2, 2, mats).unwrap_err();
        assert!(err.contains("bracket relation violated at [E_1"), "{err}");
    }

    #[test]
    fn onedim_modules() {
        // m=1: any weight is a gl_1-module
        let u = make_onedim(1, &[rint(3)]).unwrap();
        assert_eq!(u.apply(1, 1, 0), vec![(0, rint(3))]);
        // trivial module validates
        assert!(make_onedim(2, &[rint(0), rint(0)]).is_ok());
        // equal weights validate
        assert!(make_onedim(2, &[rint(2), rint(2)]).is_ok());
        // unequal weights violate [E_12, E_21] = E_11 - E_22 on one dimension
        assert!(make_onedim(2, &[rone(), rint(0)]).is_err());
    }

    #[test]
    fn tensor_examples() {
        let u = make_natural(2);
        let t = tensor(&u, &u).unwrap();
        assert_eq!(t.dim(), 4);
        // I acts as the scalar 2
        for col in 0..4 {
            assert_eq!(t.apply_trace(col), vec![(col, rint(2))]);
        }
        // trivial (x) U matches U action-wise
        let triv = make_trivial(2);
        let tu = tensor(&triv, &u).unwrap();
        for a in 1..=2 {
            for b in 1..=2 {
                for col in 0..2 {
                    assert_eq!(tu.apply(a, b, col), u.apply(a, b, col));
                }
            }
        }
        assert!(tensor(&*make_natural(2), &*make_natural(3)).is_err());
    }

    #[test]
    fn trace_shift_is_valid_extension() {
        let u = make_natural(2);
        let shifted = u.shift_trace(&rint(2));
        assert!(shifted.validate().is_ok());
        // I-eigenvalue moves from 1 to 3
        assert_eq!(shifted.apply_trace(0), vec![(0, rint(3))]);
        // sl part unchanged
        assert_eq!(shifted.apply(1, 2, 1), u.apply(1, 2, 1));
    }

    #[test]
    fn decompose_gl_roundtrip() {
        let m = 3;
        // E_11 = H1*(2/3) + H2*(1/3) + I*(1/3)
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 1), rone());
        let parts = decompose_gl(&coeffs, m, true).unwrap();
        let mut back: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for (b, c) in &parts {
            for ((x, y), u) in b.units(m) {
                *back.entry((x, y)).or_insert_with(Rat::zero) += u * c.clone();
            }
        }
        back.retain(|_, v| !v.is_zero());
        assert_eq!(back, coeffs);
        assert!(decompose_gl(&coeffs, m, false).is_err());
        // commutators are traceless
        let mut comm = BTreeMap::new();
        comm.insert((1, 1), rone());
        comm.insert((3, 3), -rone());
        assert!(decompose_gl(&comm, m, false).is_ok());
    }

    #[test]
    fn casimir_split_small() {
        for m in 1..=4 {
            let entry = casimir_split_check(m);
            assert!(entry.passed(), "m={m}: {:?}", entry.failures);
        }
    }

    #[test]
    fn cybe_trivial_m1() {
        assert!(check_cybe(1).passed());
    }

    #[test]
    fn cybe_m2() {
        assert!(check_cybe(2).passed());
    }
}
