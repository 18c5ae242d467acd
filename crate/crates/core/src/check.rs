//! Jacobi and skew-symmetry defects of a formula, the injectivity verdict,
//! conformal-vector validation and the Lie / Novikov special cases.
//!
//! Every defect is an explicit element of `C[D] ⊗ S`; the formula generates a
//! vertex Lie superalgebra containing `S` when the ideal these elements
//! generate misses `S`. Two sufficient routes are decided here: all defects
//! vanish, or all defects lie in `D C[D] ⊗ c` for a central `c`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formula::{
    apply_d, epsilon, extend_product, inv_factorial, weight_of, BasisId, Element, FormulaSpec, Parity,
};
use crate::linalg::SpanBasis;
use crate::presets::{self, AlgebraData};
use crate::scalar::{gen_binomial, sign, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DefectKind {
    Skew,
    Commutator,
    JacobiComponent,
}

impl DefectKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DefectKind::Skew => "skew",
            DefectKind::Commutator => "commutator",
            DefectKind::JacobiComponent => "jacobi_component",
        }
    }
}

/// Index tuple of a defect, in the argument order of the defect function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DefectIndex {
    Skew { u: BasisId, n: u32, v: BasisId },
    Commutator { u: BasisId, m: u32, v: BasisId, n: u32, w: BasisId },
    Jacobi { u: BasisId, k: u32, v: BasisId, m: u32, w: BasisId, n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defect {
    pub kind: DefectKind,
    pub index: DefectIndex,
    pub value: Element,
}

impl Defect {
    pub fn describe(&self, spec: &FormulaSpec) -> String {
        let l = |b: BasisId| spec.label(b).to_string();
        let idx = match self.index {
            DefectIndex::Skew { u, n, v } => format!("({}, {n}, {})", l(u), l(v)),
            DefectIndex::Commutator { u, m, v, n, w } => format!("({}, {m}, {}, {n}, {})", l(u), l(v), l(w)),
            DefectIndex::Jacobi { u, k, v, m, w, n } => {
                format!("({}, {k}, {}, {m}, {}, {n})", l(u), l(v), l(w))
            }
        };
        format!("{} {idx} = {}", self.kind.as_str(), spec.show(&self.value))
    }
}

fn basis(id: BasisId) -> Element {
    Element::basis(id)
}

fn prod(spec: &FormulaSpec, a: &Element, n: u32, b: &Element) -> Element {
    extend_product(spec, a, n, b)
}

/// `u_n v + ε Σ_k (-1)^{n+k} (D^k/k!) v_{n+k} u`.
pub fn skew_defect(spec: &FormulaSpec, u: BasisId, n: u32, v: BasisId) -> Element {
    let eps = epsilon(spec.parity(u), spec.parity(v));
    let mut out = spec.product(u, n, v);
    let n_max = spec.n_max();
    let mut k = 0;
    while n + k < n_max {
        if let Some(p) = spec.product_ref(v, n + k, u) {
            let coeff = &eps * sign((n + k) as i64) * inv_factorial(k);
            out.add_scaled(&crate::formula::apply_d_pow(p, k), &coeff);
        }
        k += 1;
    }
    out
}

/// `u_m(v_n w) - ε v_n(u_m w) - Σ_i C(m,i) (u_i v)_{m+n-i} w`.
pub fn commutator_defect(spec: &FormulaSpec, u: BasisId, m: u32, v: BasisId, n: u32, w: BasisId) -> Element {
    let eps = epsilon(spec.parity(u), spec.parity(v));
    let (bu, bv, bw) = (basis(u), basis(v), basis(w));
    let mut out = prod(spec, &bu, m, &prod(spec, &bv, n, &bw));
    out.add_scaled(&prod(spec, &bv, n, &prod(spec, &bu, m, &bw)), &-eps);
    for i in 0..=m.min(spec.n_max()) {
        let uiv = spec.product(u, i, v);
        if uiv.is_zero() {
            continue;
        }
        let c = gen_binomial(m as i64, i as u64);
        out.add_scaled(&prod(spec, &uiv, m + n - i, &bw), &-c);
    }
    out
}

/// Component `(k, m, n)` of the half Jacobi identity applied to `w`.
pub fn jacobi_component_defect(
    spec: &FormulaSpec,
    u: BasisId,
    k: u32,
    v: BasisId,
    m: u32,
    w: BasisId,
    n: u32,
) -> Element {
    let eps = epsilon(spec.parity(u), spec.parity(v));
    let (bu, bv, bw) = (basis(u), basis(v), basis(w));
    let mut out = Element::zero();
    for i in 0..=k {
        let c = sign(i as i64) * gen_binomial(k as i64, i as u64);
        out.add_scaled(&prod(spec, &bu, m + k - i, &prod(spec, &bv, n + i, &bw)), &c);
        let c2 = -(&c * &eps * sign(k as i64));
        out.add_scaled(&prod(spec, &bv, n + k - i, &prod(spec, &bu, m + i, &bw)), &c2);
    }
    for i in 0..=m {
        if k + i >= spec.n_max() {
            break;
        }
        let ukv = spec.product(u, k + i, v);
        if ukv.is_zero() {
            continue;
        }
        out.add_scaled(&prod(spec, &ukv, m + n - i, &bw), &-gen_binomial(m as i64, i as u64));
    }
    out
}

/// Default sweep bound: past it every commutator and skew defect vanishes
/// identically, whatever the structure constants are.
pub fn default_bound(spec: &FormulaSpec) -> u32 {
    let (n, k) = (spec.n_max(), spec.k_max());
    (n + k + 1).max((2 * n + k).saturating_sub(1))
}

fn triples(dim: usize) -> Vec<(BasisId, BasisId, BasisId)> {
    let mut out = Vec::with_capacity(dim * dim * dim);
    for u in 0..dim {
        for v in 0..dim {
            for w in 0..dim {
                out.push((u, v, w));
            }
        }
    }
    out
}

/// All nonzero skew and commutator defects with indices in `0..=bound`.
///
/// The row at index `bound` must vanish; a nonzero entry there means the
/// bound is too small and is reported as [`Error::BoundInsufficient`].
pub fn defect_sweep(spec: &FormulaSpec, bound: Option<u32>) -> Result<Vec<Defect>> {
    let bound = bound.unwrap_or_else(|| default_bound(spec));
    let dim = spec.dim();
    let mut out: Vec<Defect> = (0..dim)
        .flat_map(|u| (0..dim).map(move |v| (u, v)))
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|&(u, v)| {
            (0..=bound).filter_map(move |n| {
                let value = skew_defect(spec, u, n, v);
                (!value.is_zero()).then_some(Defect {
                    kind: DefectKind::Skew,
                    index: DefectIndex::Skew { u, n, v },
                    value,
                })
            })
        })
        .collect();
    let comm: Vec<Defect> = triples(dim)
        .par_iter()
        .flat_map_iter(|&(u, v, w)| {
            (0..=bound).flat_map(move |m| {
                (0..=bound).filter_map(move |n| {
                    let value = commutator_defect(spec, u, m, v, n, w);
                    (!value.is_zero()).then_some(Defect {
                        kind: DefectKind::Commutator,
                        index: DefectIndex::Commutator { u, m, v, n, w },
                        value,
                    })
                })
            })
        })
        .collect();
    out.extend(comm);
    let on_boundary = |d: &Defect| match d.index {
        DefectIndex::Skew { n, .. } => n == bound,
        DefectIndex::Commutator { m, n, .. } => m == bound || n == bound,
        DefectIndex::Jacobi { .. } => false,
    };
    if out.iter().any(on_boundary) {
        return Err(Error::BoundInsufficient { bound });
    }
    out.sort_by_key(|d| d.index);
    Ok(out)
}

/// True iff every term of `a` is `D^k c` with `k ≥ 1`.
pub fn membership_central(a: &Element, c: BasisId) -> bool {
    a.terms().all(|(k, b, _)| b == c && k >= 1)
}

/// `Y(c,z)v = 0` and `Y(v,z)c = 0` for every basis vector `v`.
pub fn central_check(spec: &FormulaSpec, c: BasisId) -> bool {
    spec.constants().all(|((u, _, v), _)| u != c && v != c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformalReport {
    pub clauses: Vec<Clause>,
}

impl ConformalReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

/// Checks that `ω` is a conformal vector with central element `c`.
pub fn conformal_validate(spec: &FormulaSpec, omega: BasisId, c: BasisId) -> Result<ConformalReport> {
    if !spec.is_graded() {
        return Err(Error::Ungraded);
    }
    let mut clauses = Vec::new();
    let half = Scalar::new(1.into(), 2.into());

    let om = basis(omega);
    let mut fails = Vec::new();
    if spec.parity(omega) != Parity::Even || spec.parity(c) != Parity::Even {
        fails.push("ω and c must be even".to_string());
    }
    let expected = [
        (0, apply_d(&om)),
        (1, om.scale(&Scalar::from_integer(2.into()))),
        (2, Element::zero()),
        (3, Element::monomial(0, c, half)),
    ];
    for (n, want) in &expected {
        let have = spec.product(omega, *n, omega);
        if have != *want {
            fails.push(format!("ω_{n}ω = {} but expected {}", spec.show(&have), spec.show(want)));
        }
    }
    if spec.n_max() > 0 && (4..spec.n_max()).any(|n| spec.product_ref(omega, n, omega).is_some()) {
        fails.push("ω_nω ≠ 0 for some n ≥ 4".into());
    }
    clauses.push(Clause { name: "self_product", passed: fails.is_empty(), detail: fails.join("; ") });

    let central = central_check(spec, c);
    clauses.push(Clause {
        name: "central",
        passed: central,
        detail: if central { String::new() } else { format!("{} is not central", spec.label(c)) },
    });

    let mut fails = Vec::new();
    for v in 0..spec.dim() {
        let bv = basis(v);
        let lam = spec.weight(v).unwrap().clone();
        let checks = [(0u32, apply_d(&bv)), (1, bv.scale(&lam)), (2, Element::zero())];
        for (n, want) in checks {
            let have = spec.product(omega, n, v);
            // Dc vanishes in the quotient by D C[D] ⊗ c
            let diff = &have - &want;
            if !membership_central(&diff, c) {
                fails.push(format!("ω_{n}{} = {} but expected {}", spec.label(v), spec.show(&have), spec.show(&want)));
            }
        }
    }
    clauses.push(Clause { name: "grading_action", passed: fails.is_empty(), detail: fails.join("; ") });

    let zero_weight: Vec<BasisId> = (0..spec.dim()).filter(|&b| spec.weight(b).unwrap().is_zero()).collect();
    let ok = zero_weight == vec![c];
    clauses.push(Clause {
        name: "weight_zero_is_central_line",
        passed: ok,
        detail: if ok {
            String::new()
        } else {
            format!("weight-0 basis vectors: {:?}", zero_weight.iter().map(|&b| spec.label(b)).collect::<Vec<_>>())
        },
    });

    let neg: Vec<&str> = (0..spec.dim())
        .filter(|&b| crate::scalar::is_negative(spec.weight(b).unwrap()))
        .map(|b| spec.label(b))
        .collect();
    clauses.push(Clause {
        name: "nonnegative_weights",
        passed: neg.is_empty(),
        detail: if neg.is_empty() { String::new() } else { format!("negative weights on {neg:?}") },
    });
    Ok(ConformalReport { clauses })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerdictStatus {
    InjectiveZeroIdeal,
    InjectiveCentralIdeal,
    PureLie,
    NotInjectiveCandidate,
    Undetermined,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::InjectiveZeroIdeal => "injective_zero_ideal",
            VerdictStatus::InjectiveCentralIdeal => "injective_central_ideal",
            VerdictStatus::PureLie => "pure_lie",
            VerdictStatus::NotInjectiveCandidate => "not_injective_candidate",
            VerdictStatus::Undetermined => "undetermined",
        }
    }

    pub fn is_injective(self) -> bool {
        matches!(self, VerdictStatus::InjectiveZeroIdeal | VerdictStatus::InjectiveCentralIdeal | VerdictStatus::PureLie)
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub witnesses: Vec<Defect>,
    pub notes: Vec<String>,
    /// Central vector used for the central-ideal route, if any.
    pub central: Option<BasisId>,
}

/// Decides (J+ss)-injectivity along the two settled routes.
pub fn injectivity_verdict(spec: &FormulaSpec, central: Option<BasisId>) -> Result<Verdict> {
    let defects = defect_sweep(spec, None)?;
    Ok(verdict_from_defects(spec, central, defects))
}

pub fn verdict_from_defects(spec: &FormulaSpec, central: Option<BasisId>, defects: Vec<Defect>) -> Verdict {
    if defects.is_empty() {
        return Verdict {
            status: VerdictStatus::InjectiveZeroIdeal,
            witnesses: Vec::new(),
            notes: vec!["all Jacobi and skew-symmetry defects vanish: ⟨J+ss⟩ = 0".into()],
            central,
        };
    }
    if let Some(c) = central {
        if central_check(spec, c) && defects.iter().all(|d| membership_central(&d.value, c)) {
            let label = spec.label(c);
            return Verdict {
                status: VerdictStatus::InjectiveCentralIdeal,
                witnesses: defects,
                notes: vec![format!("⟨J+ss⟩ = DC[D]⊗{label}: every defect lies in D·C[D]⊗{label}")],
                central,
            };
        }
    }
    // D-power-0 part of a skew defect is F_n^0(u,v) + ε(-1)^n F_n^0(v,u)
    let in_span_c = |e: &Element| central.is_some_and(|c| e.support().all(|b| b == c));
    let contradicting: Vec<Defect> = defects
        .iter()
        .filter(|d| d.kind == DefectKind::Skew)
        .filter(|d| {
            let low = d.value.d_component(0);
            !low.is_zero() && !in_span_c(&low)
        })
        .cloned()
        .collect();
    if !contradicting.is_empty() {
        return Verdict {
            status: VerdictStatus::NotInjectiveCandidate,
            witnesses: contradicting,
            notes: vec!["skew defects with nonzero D-free part: F_n^0(u,v) + ε(-1)^n F_n^0(v,u) ≠ 0".into()],
            central,
        };
    }
    let outside: Vec<Defect> = match central {
        Some(c) => defects.iter().filter(|d| !membership_central(&d.value, c)).cloned().collect(),
        None => defects,
    };
    Verdict {
        status: VerdictStatus::Undetermined,
        witnesses: outside,
        notes: vec!["defects are neither zero nor contained in D·C[D]⊗c; no decision procedure applies".into()],
        central,
    }
}

/// Verdict for the formula's designated central vector; formulas whose
/// constants lie in `S` and that no central route settles fall back to
/// [`pure_lie_check`].
pub fn formula_verdict(spec: &FormulaSpec, bound: Option<u32>) -> Result<Verdict> {
    let v = verdict_from_defects(spec, spec.central, defect_sweep(spec, bound)?);
    if v.status == VerdictStatus::Undetermined {
        if let Ok(p) = pure_lie_check(spec) {
            if p.status.is_injective() {
                return Ok(p);
            }
        }
    }
    Ok(v)
}

/// Case where all constants lie in `S`: `C[D] ⊗ S` is a vertex Lie
/// superalgebra iff `F_n = 0` for `n ≥ 1` and `F_0` is a Lie superbracket.
pub fn pure_lie_check(spec: &FormulaSpec) -> Result<Verdict> {
    if let Some(((u, n, v), e)) = spec.constants().find(|(_, e)| e.deg_d() > 0) {
        return Err(Error::ConstantsLeaveS(format!(
            "F_{n}({},{}) = {}",
            spec.label(u),
            spec.label(v),
            spec.show(e)
        )));
    }
    let mut notes = Vec::new();
    for ((u, n, v), _) in spec.constants() {
        if n >= 1 {
            notes.push(format!("F_{n} ≠ 0 on ({}, {})", spec.label(u), spec.label(v)));
        }
    }
    let dim = spec.dim();
    let br = |x: &Element, y: &Element| extend_product(spec, x, 0, y);
    for u in 0..dim {
        for v in 0..dim {
            let eps = epsilon(spec.parity(u), spec.parity(v));
            let lhs = spec.product(u, 0, v);
            let rhs = spec.product(v, 0, u).scale(&-&eps);
            if lhs != rhs {
                notes.push(format!("F_0 not ε-antisymmetric on ({}, {})", spec.label(u), spec.label(v)));
            }
            for w in 0..dim {
                // [u,[v,w]] = [[u,v],w] + ε_{u,v} [v,[u,w]]
                let (bu, bv, bw) = (basis(u), basis(v), basis(w));
                let l = br(&bu, &br(&bv, &bw));
                let mut r = br(&br(&bu, &bv), &bw);
                r.add_scaled(&br(&bv, &br(&bu, &bw)), &eps);
                if l != r {
                    notes.push(format!(
                        "super Jacobi fails on ({}, {}, {})",
                        spec.label(u),
                        spec.label(v),
                        spec.label(w)
                    ));
                }
            }
        }
    }
    if notes.is_empty() {
        return Ok(Verdict {
            status: VerdictStatus::PureLie,
            witnesses: Vec::new(),
            notes: vec!["F_n = 0 for n ≥ 1 and F_0 is a Lie superbracket".into()],
            central: None,
        });
    }
    Ok(Verdict { status: VerdictStatus::Undetermined, witnesses: defect_sweep(spec, None)?, notes, central: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovikovReport {
    /// Failures of `u·(v·w) = v·(u·w)`.
    pub left_commutative: Vec<(usize, usize, usize)>,
    /// Failures of `(v·w)·u + v·(u·w) = v·(w·u) + (v·u)·w`.
    pub right_symmetric: Vec<(usize, usize, usize)>,
    /// Failures of `<u·v,w> = <v·u,w> = <v,u·w> = <v,w·u>`.
    pub form_compatible: Vec<(usize, usize, usize)>,
    /// Whether every defect of the associated formula lies in `D C[D] ⊗ c`.
    pub sweep_central: bool,
}

impl NovikovReport {
    pub fn identities_hold(&self) -> bool {
        self.left_commutative.is_empty() && self.right_symmetric.is_empty() && self.form_compatible.is_empty()
    }

    /// The identity check and the defect sweep reach the same conclusion.
    pub fn agrees(&self) -> bool {
        self.identities_hold() == self.sweep_central
    }
}

/// Evaluates the Novikov-type identities on basis triples and cross-checks
/// them against the defect sweep of the associated quadratic formula.
pub fn novikov_check(b: &AlgebraData) -> Result<NovikovReport> {
    b.check_shape()?;
    if !b.form_is_symmetric() {
        return Err(Error::FormNotSymmetric);
    }
    let d = b.dim();
    let add = |x: &[Scalar], y: &[Scalar]| x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>();
    let mut report = NovikovReport {
        left_commutative: Vec::new(),
        right_symmetric: Vec::new(),
        form_compatible: Vec::new(),
        sweep_central: false,
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (u, v, w) = (b.unit(i), b.unit(j), b.unit(k));
                if b.mul(&u, &b.mul(&v, &w)) != b.mul(&v, &b.mul(&u, &w)) {
                    report.left_commutative.push((i, j, k));
                }
                let lhs = add(&b.mul(&b.mul(&v, &w), &u), &b.mul(&v, &b.mul(&u, &w)));
                let rhs = add(&b.mul(&v, &b.mul(&w, &u)), &b.mul(&b.mul(&v, &u), &w));
                if lhs != rhs {
                    report.right_symmetric.push((i, j, k));
                }
                let vals = [
                    b.pair(&b.mul(&u, &v), &w),
                    b.pair(&b.mul(&v, &u), &w),
                    b.pair(&v, &b.mul(&u, &w)),
                    b.pair(&v, &b.mul(&w, &u)),
                ];
                if vals.iter().any(|x| *x != vals[0]) {
                    report.form_compatible.push((i, j, k));
                }
            }
        }
    }
    let spec = presets::novikov(b)?;
    let c = spec.central.expect("novikov formulas carry c");
    report.sweep_central = defect_sweep(&spec, None)?.iter().all(|x| membership_central(&x.value, c));
    Ok(report)
}

/// Jacobi-component defects that fall outside the Q-span of the commutator
/// defects over the window `0..=bound`. Empty means the two defect families
/// generate the same subspace on the window.
pub fn jacobi_outside_commutator_span(spec: &FormulaSpec, bound: Option<u32>) -> Vec<Defect> {
    let bound = bound.unwrap_or_else(|| default_bound(spec));
    let key = |e: &Element| -> BTreeMap<(u32, BasisId), Scalar> { e.terms().map(|(k, b, c)| ((k, b), c.clone())).collect() };
    let ts = triples(spec.dim());
    let comm: BTreeSet<Element> = ts
        .par_iter()
        .flat_map_iter(|&(u, v, w)| {
            (0..=bound).flat_map(move |m| (0..=bound).map(move |n| commutator_defect(spec, u, m, v, n, w)))
        })
        .filter(|d| !d.is_zero())
        .collect();
    let mut span = SpanBasis::new();
    for d in &comm {
        span.insert(&key(d));
    }
    let jac: Vec<Defect> = ts
        .par_iter()
        .flat_map_iter(|&(u, v, w)| {
            (0..=bound).flat_map(move |k| {
                (0..=bound).flat_map(move |m| {
                    (0..=bound).map(move |n| Defect {
                        kind: DefectKind::JacobiComponent,
                        index: DefectIndex::Jacobi { u, k, v, m, w, n },
                        value: jacobi_component_defect(spec, u, k, v, m, w, n),
                    })
                })
            })
        })
        .filter(|d| !d.value.is_zero() && !comm.contains(&d.value))
        .collect();
    let distinct: BTreeSet<&Element> = jac.iter().map(|d| &d.value).collect();
    let outside: BTreeSet<&Element> = distinct.into_iter().filter(|e| !span.contains(&key(e))).collect();
    jac.iter().filter(|d| outside.contains(&d.value)).cloned().collect()
}

/// Expected weight of a defect in a graded formula.
pub fn defect_weight(spec: &FormulaSpec, index: &DefectIndex) -> Option<Scalar> {
    let wt = |b: BasisId| spec.weight(b).cloned();
    let s = |x: u32| Scalar::from_integer(x.into());
    Some(match *index {
        DefectIndex::Skew { u, n, v } => wt(u)? + wt(v)? - s(n) - Scalar::one(),
        DefectIndex::Commutator { u, m, v, n, w } => wt(u)? + wt(v)? + wt(w)? - s(m) - s(n) - s(2),
        DefectIndex::Jacobi { u, k, v, m, w, n } => wt(u)? + wt(v)? + wt(w)? - s(k) - s(m) - s(n) - s(2),
    })
}

/// Weight of the value matches [`defect_weight`] (vacuous when ungraded or zero).
pub fn defect_is_weight_homogeneous(spec: &FormulaSpec, d: &Defect) -> bool {
    if !spec.is_graded() {
        return true;
    }
    match weight_of(spec, &d.value) {
        Ok(None) => true,
        Ok(Some(w)) => Some(w) == defect_weight(spec, &d.index),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn virasoro_commutator_defect() {
        let s = virasoro();
        let (w, c) = (s.find("ω").unwrap(), s.find("c").unwrap());
        assert_eq!(commutator_defect(&s, w, 0, w, 3, w), Element::monomial(1, c, ratio(-1, 2)));
        assert_eq!(jacobi_component_defect(&s, w, 0, w, 0, w, 3), Element::monomial(1, c, ratio(-1, 2)));
    }

    #[test]
    fn virasoro_skew_defect() {
        let s = virasoro();
        let (w, c) = (s.find("ω").unwrap(), s.find("c").unwrap());
        // Dω + Dω - 2Dω + 0 - (D³/6)(c/2)
        assert_eq!(skew_defect(&s, w, 0, w), Element::monomial(3, c, ratio(-1, 12)));
    }

    #[test]
    fn affine_skew_defects_are_central_derivatives() {
        // (x,0,y): [x,y] + [y,x] - D(y_1 x) = -<x,y> Dc; the k = 1 term survives in C[D]⊗S
        let g = sl2_data();
        let s = affine_sl2();
        let c = s.find("c").unwrap();
        for u in 0..3 {
            for v in 0..3 {
                let want = Element::monomial(1, c, -g.form[u][v].clone());
                assert_eq!(skew_defect(&s, u, 0, v), want);
                for n in 1..4 {
                    assert!(skew_defect(&s, u, n, v).is_zero());
                }
            }
        }
    }

    #[test]
    fn affine_commutator_defects_vanish() {
        let s = affine_sl2();
        for (u, v, w) in triples(s.dim()) {
            for m in 0..=3 {
                for n in 0..=3 {
                    assert!(commutator_defect(&s, u, m, v, n, w).is_zero());
                }
            }
        }
        let x = 0;
        assert!(jacobi_component_defect(&s, x, 1, 1, 1, 2, 0).is_zero());
    }

    #[test]
    fn zero_formula_has_no_defects() {
        let mut s = FormulaSpec::new("zero");
        s.add_basis("a", Parity::Even, None);
        s.add_basis("b", Parity::Odd, None);
        assert!(defect_sweep(&s, None).unwrap().is_empty());
        assert!(commutator_defect(&s, 0, 2, 1, 1, 0).is_zero());
        assert_eq!(injectivity_verdict(&s, None).unwrap().status, VerdictStatus::InjectiveZeroIdeal);
    }

    #[test]
    fn k_zero_jacobi_is_commutator() {
        for s in [virasoro(), neveu_schwarz(), affine_sl2()] {
            for (u, v, w) in triples(s.dim()) {
                for m in 0..5 {
                    for n in 0..5 {
                        assert_eq!(
                            jacobi_component_defect(&s, u, 0, v, m, w, n),
                            commutator_defect(&s, u, m, v, n, w)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn membership() {
        let c = 1;
        assert!(membership_central(&Element::monomial(1, c, ratio(-1, 2)), c));
        assert!(!membership_central(&Element::monomial(1, 0, int(1)), c));
        assert!(!membership_central(&Element::monomial(0, c, int(1)), c));
        assert!(membership_central(&Element::zero(), c));
    }

    #[test]
    fn central_checks() {
        let v = virasoro();
        assert!(central_check(&v, v.find("c").unwrap()));
        assert!(!central_check(&v, v.find("ω").unwrap()));
        let a = affine_sl2();
        assert!(central_check(&a, a.find("c").unwrap()));
    }

    #[test]
    fn conformal_reports() {
        let v = virasoro();
        let r = conformal_validate(&v, 0, 1).unwrap();
        assert!(r.all_pass(), "{r:?}");
        let ns = neveu_schwarz();
        let r = conformal_validate(&ns, ns.find("ω").unwrap(), ns.find("c").unwrap()).unwrap();
        assert!(r.all_pass(), "{r:?}");
        let e4 = comm_assoc(&dual_numbers(int(1)), 0).unwrap();
        let (om, c) = e4.conformal.unwrap();
        assert!(conformal_validate(&e4, om, c).unwrap().all_pass());
        let a = affine_sl2();
        let c = a.find("c").unwrap();
        for x in 0..3 {
            let r = conformal_validate(&a, x, c).unwrap();
            assert!(!r.clause("self_product").unwrap().passed);
        }
        assert_eq!(conformal_validate(&FormulaSpec::new("x"), 0, 0), Err(Error::Ungraded));
    }

    #[test]
    fn verdicts() {
        let v = virasoro();
        let verdict = injectivity_verdict(&v, v.central).unwrap();
        assert_eq!(verdict.status, VerdictStatus::InjectiveCentralIdeal);
        assert!(!verdict.witnesses.is_empty());
        let a = affine_sl2();
        assert_eq!(injectivity_verdict(&a, a.central).unwrap().status, VerdictStatus::InjectiveCentralIdeal);
        assert!(defect_sweep(&a, None).unwrap().iter().all(|d| d.kind == DefectKind::Skew));
        assert_eq!(injectivity_verdict(&loop_abelian(), None).unwrap().status, VerdictStatus::InjectiveZeroIdeal);
        // without the central vector the Virasoro defects decide nothing
        assert_eq!(injectivity_verdict(&v, None).unwrap().status, VerdictStatus::Undetermined);
        let flipped = novikov(&flipped_lambda_algebra(&[int(1), int(0)])).unwrap();
        let verdict = injectivity_verdict(&flipped, flipped.central).unwrap();
        assert_ne!(verdict.status, VerdictStatus::InjectiveCentralIdeal);
        let c = flipped.central.unwrap();
        assert!(verdict.witnesses.iter().any(|d| !membership_central(&d.value, c)));
    }

    #[test]
    fn skew_violation_gives_not_injective_candidate() {
        let mut s = FormulaSpec::new("sym-bracket");
        let x = s.add_basis("x", Parity::Even, None);
        let y = s.add_basis("y", Parity::Even, None);
        // symmetric "bracket" breaks F_0^0(u,v) = -F_0^0(v,u)
        s.set_product(x, 0, y, Element::basis(x));
        s.set_product(y, 0, x, Element::basis(x));
        let v = injectivity_verdict(&s, None).unwrap();
        assert_eq!(v.status, VerdictStatus::NotInjectiveCandidate);
        assert!(v.witnesses.iter().all(|d| d.kind == DefectKind::Skew));
    }

    #[test]
    fn pure_lie() {
        let mut s = FormulaSpec::new("sl2");
        let g = sl2_data();
        for l in &g.labels {
            s.add_basis(l.clone(), Parity::Even, None);
        }
        for i in 0..3 {
            for j in 0..3 {
                s.set_product(i, 0, j, Element::from_terms(g.product[i][j].iter().enumerate().map(|(k, c)| (0, k, c.clone()))));
            }
        }
        assert_eq!(pure_lie_check(&s).unwrap().status, VerdictStatus::PureLie);
        let mut broken = s.clone();
        broken.set_product(0, 1, 2, Element::basis(0));
        let v = pure_lie_check(&broken).unwrap();
        assert_ne!(v.status, VerdictStatus::PureLie);
        assert!(v.notes.iter().any(|n| n.starts_with("F_1 ≠ 0")));
        assert!(!v.witnesses.is_empty());
        let mut abelian = FormulaSpec::new("ab");
        abelian.add_basis("a", Parity::Even, None);
        assert_eq!(pure_lie_check(&abelian).unwrap().status, VerdictStatus::PureLie);
        assert!(matches!(pure_lie_check(&virasoro()), Err(Error::ConstantsLeaveS(_))));
    }

    #[test]
    fn odd_pure_lie_superalgebra() {
        // abelian odd pair with [a, b] = z central even: a Lie superalgebra
        let mut s = FormulaSpec::new("clifford");
        let a = s.add_basis("a", Parity::Odd, None);
        let b = s.add_basis("b", Parity::Odd, None);
        let z = s.add_basis("z", Parity::Even, None);
        s.set_product(a, 0, b, Element::basis(z));
        s.set_product(b, 0, a, Element::basis(z));
        assert_eq!(pure_lie_check(&s).unwrap().status, VerdictStatus::PureLie);
        assert_eq!(injectivity_verdict(&s, None).unwrap().status, VerdictStatus::InjectiveZeroIdeal);
    }

    #[test]
    fn novikov_examples() {
        let ok = novikov_check(&lambda_algebra(&[int(1), int(0)])).unwrap();
        assert!(ok.identities_hold() && ok.agrees());
        let ca = novikov_check(&dual_numbers(int(1))).unwrap();
        assert!(ca.identities_hold() && ca.agrees());
        let bad = novikov_check(&flipped_lambda_algebra(&[int(1), int(0)])).unwrap();
        assert!(!bad.identities_hold() && bad.agrees());
        assert!(!bad.left_commutative.is_empty());
        let mut asym = trivial_unital();
        asym.labels.push("y".into());
        asym.product = vec![vec![vec![int(0); 2]; 2]; 2];
        asym.form = vec![vec![int(0), int(1)], vec![int(0), int(0)]];
        assert_eq!(novikov_check(&asym), Err(Error::FormNotSymmetric));
    }

    #[test]
    fn user_bound_too_small_is_reported() {
        let s = virasoro();
        assert_eq!(defect_sweep(&s, Some(3)), Err(Error::BoundInsufficient { bound: 3 }));
    }
}
