//! Formulas (a finite basis with the singular OPE structure constants) and
//! elements of `C[D] ⊗ S`, together with the unique extension of the
//! `n`-th products from `S × S` to all of `C[D] ⊗ S`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, format_scalar, gen_binomial_int, sign, Scalar};

pub type BasisId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// The super sign `(-1)^{|a||b|}`.
pub fn epsilon(a: Parity, b: Parity) -> Scalar {
    if a.is_odd() && b.is_odd() {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub id: BasisId,
    pub label: String,
    pub parity: Parity,
    pub weight: Option<Scalar>,
}

/// A vector of `C[D] ⊗ S`, keyed by `(D-power, basis id)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<(u32, BasisId), Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(id: BasisId) -> Self {
        Self::monomial(0, id, Scalar::one())
    }

    /// `coeff · D^k b`.
    pub fn monomial(k: u32, id: BasisId, coeff: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(k, id, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, BasisId, Scalar)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (k, id, c) in terms {
            e.add_term(k, id, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, BasisId, &Scalar)> + '_ {
        self.terms.iter().map(|(&(k, b), c)| (k, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: u32, id: BasisId) -> Scalar {
        self.terms.get(&(k, id)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, k: u32, id: BasisId, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let key = (k, id);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// `self += coeff · other`.
    pub fn add_scaled(&mut self, other: &Element, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        for (&(k, b), c) in &other.terms {
            self.add_term(k, b, c * coeff);
        }
    }

    /// `self += coeff · D^shift other`.
    fn add_shifted_scaled(&mut self, other: &Element, shift: u32, coeff: &Scalar) {
        for (&(k, b), c) in &other.terms {
            self.add_term(k + shift, b, c * coeff);
        }
    }

    pub fn scale(&self, coeff: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, coeff);
        out
    }

    /// Largest D-power present; 0 for the zero element.
    pub fn deg_d(&self) -> u32 {
        self.terms.keys().map(|&(k, _)| k).max().unwrap_or(0)
    }

    /// Part of `self` with D-power exactly `k`.
    pub fn d_component(&self, k: u32) -> Element {
        Element {
            terms: self.terms.iter().filter(|(&(kk, _), _)| kk == k).map(|(&key, c)| (key, c.clone())).collect(),
        }
    }

    /// Parity of a homogeneous element; `None` for zero or mixed elements.
    pub fn parity(&self, spec: &FormulaSpec) -> Option<Parity> {
        let mut it = self.terms.keys().map(|&(_, b)| spec.basis[b].parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn support(&self) -> impl Iterator<Item = BasisId> + '_ {
        self.terms.keys().map(|&(_, b)| b)
    }
}

impl std::ops::Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

/// `D` on `C[D] ⊗ S`: shifts every D-power by one.
pub fn apply_d(a: &Element) -> Element {
    let mut out = Element::zero();
    out.add_shifted_scaled(a, 1, &Scalar::one());
    out
}

pub fn apply_d_pow(a: &Element, k: u32) -> Element {
    let mut out = Element::zero();
    out.add_shifted_scaled(a, k, &Scalar::one());
    out
}

/// Principal part `Σ_{n ≥ 0} (A_n B) z^{-n-1}`, keyed by `n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrincipalSeries {
    pub coeffs: BTreeMap<u32, Element>,
}

impl PrincipalSeries {
    pub fn get(&self, n: u32) -> Element {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// A formula: basis of `S` with parities, optional weights, and the
/// structure constants `F_n(u, v) = u_n v ∈ C[D] ⊗ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaSpec {
    pub name: String,
    pub basis: Vec<BasisVector>,
    constants: BTreeMap<(BasisId, u32, BasisId), Element>,
    /// Designated central vector `c`, if any.
    pub central: Option<BasisId>,
    /// Declared conformal pair `(ω, c)`.
    pub conformal: Option<(BasisId, BasisId)>,
}

impl FormulaSpec {
    pub fn new(name: impl Into<String>) -> Self {
        FormulaSpec {
            name: name.into(),
            basis: Vec::new(),
            constants: BTreeMap::new(),
            central: None,
            conformal: None,
        }
    }

    pub fn add_basis(&mut self, label: impl Into<String>, parity: Parity, weight: Option<Scalar>) -> BasisId {
        let id = self.basis.len();
        self.basis.push(BasisVector { id, label: label.into(), parity, weight });
        id
    }

    /// Sets `F_n(u, v)`; a zero value removes the entry.
    pub fn set_product(&mut self, u: BasisId, n: u32, v: BasisId, value: Element) {
        if value.is_zero() {
            self.constants.remove(&(u, n, v));
        } else {
            self.constants.insert((u, n, v), value);
        }
    }

    /// Adds `value` to `F_n(u, v)`.
    pub fn add_product(&mut self, u: BasisId, n: u32, v: BasisId, value: &Element) {
        let mut cur = self.product(u, n, v);
        cur.add_scaled(value, &Scalar::one());
        self.set_product(u, n, v, cur);
    }

    pub fn product(&self, u: BasisId, n: u32, v: BasisId) -> Element {
        self.constants.get(&(u, n, v)).cloned().unwrap_or_default()
    }

    pub fn product_ref(&self, u: BasisId, n: u32, v: BasisId) -> Option<&Element> {
        self.constants.get(&(u, n, v))
    }

    pub fn constants(&self) -> impl Iterator<Item = ((BasisId, u32, BasisId), &Element)> + '_ {
        self.constants.iter().map(|(&k, e)| (k, e))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Smallest `N` with `F_n ≡ 0` for all `n ≥ N`.
    pub fn n_max(&self) -> u32 {
        self.constants.keys().map(|&(_, n, _)| n + 1).max().unwrap_or(0)
    }

    /// Largest D-power appearing in any structure constant.
    pub fn k_max(&self) -> u32 {
        self.constants.values().map(Element::deg_d).max().unwrap_or(0)
    }

    pub fn is_graded(&self) -> bool {
        !self.basis.is_empty() && self.basis.iter().all(|b| b.weight.is_some())
    }

    pub fn parity(&self, id: BasisId) -> Parity {
        self.basis[id].parity
    }

    pub fn weight(&self, id: BasisId) -> Option<&Scalar> {
        self.basis[id].weight.as_ref()
    }

    pub fn label(&self, id: BasisId) -> &str {
        &self.basis[id].label
    }

    /// Looks a basis vector up by label, accepting a few ASCII spellings
    /// for the Greek labels used by the presets.
    pub fn find(&self, name: &str) -> Result<BasisId> {
        let canonical = match name {
            "omega" | "w" => "ω",
            "tau" | "t" => "τ",
            other => other,
        };
        self.basis
            .iter()
            .find(|b| b.label == name || b.label == canonical)
            .map(|b| b.id)
            .ok_or_else(|| Error::UnknownBasis(name.to_string()))
    }

    pub fn show<'a>(&'a self, e: &'a Element) -> ShowElement<'a> {
        ShowElement { spec: self, elem: e }
    }
}

/// Display adapter; term order is (weight if known, D-power, basis id).
pub struct ShowElement<'a> {
    spec: &'a FormulaSpec,
    elem: &'a Element,
}

impl fmt::Display for ShowElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.elem.terms().collect();
        terms.sort_by(|a, b| {
            let wa = self.spec.weight(a.1).map(|w| w + Scalar::from_integer(a.0.into()));
            let wb = self.spec.weight(b.1).map(|w| w + Scalar::from_integer(b.0.into()));
            wa.cmp(&wb).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1))
        });
        for (i, (k, b, c)) in terms.into_iter().enumerate() {
            let mut coeff = c.clone();
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                    coeff = -coeff;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
                coeff = -coeff;
            } else {
                write!(f, " + ")?;
            }
            if !coeff.is_one() {
                write!(f, "{}*", format_scalar(&coeff))?;
            }
            match k {
                0 => {}
                1 => write!(f, "D")?,
                _ => write!(f, "D^{k}")?,
            }
            write!(f, "{}", self.spec.label(b))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    UnknownBasis,
    DuplicateLabel,
    NegativeWeight,
    Parity,
    Weight,
    CentralDesignation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending `(u, n, v, k)` entry when the violation is about a constant.
    pub entry: Option<(BasisId, u32, BasisId, u32)>,
    pub message: String,
}

/// Checks every formula invariant; an empty list means the formula is well formed.
pub fn validate_spec(spec: &FormulaSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let dim = spec.dim();
    for (i, b) in spec.basis.iter().enumerate() {
        if spec.basis[..i].iter().any(|o| o.label == b.label) {
            out.push(Violation {
                kind: ViolationKind::DuplicateLabel,
                entry: None,
                message: format!("duplicate basis label {:?}", b.label),
            });
        }
        if let Some(w) = &b.weight {
            if w.is_negative() {
                out.push(Violation {
                    kind: ViolationKind::NegativeWeight,
                    entry: None,
                    message: format!("weight of {} is negative ({})", b.label, format_scalar(w)),
                });
            }
        }
    }
    for id in spec.central.iter().chain(spec.conformal.iter().flat_map(|(w, c)| [w, c])) {
        if *id >= dim {
            out.push(Violation {
                kind: ViolationKind::CentralDesignation,
                entry: None,
                message: format!("designated vector id {id} is out of range"),
            });
        }
    }
    let graded = spec.is_graded();
    for ((u, n, v), value) in spec.constants() {
        if u >= dim || v >= dim || value.support().any(|b| b >= dim) {
            out.push(Violation {
                kind: ViolationKind::UnknownBasis,
                entry: Some((u, n, v, 0)),
                message: format!("F_{n}({u},{v}) refers to a basis id outside 0..{dim}"),
            });
            continue;
        }
        let expected = spec.parity(u) + spec.parity(v);
        for (k, b, _) in value.terms() {
            if spec.parity(b) != expected {
                out.push(Violation {
                    kind: ViolationKind::Parity,
                    entry: Some((u, n, v, k)),
                    message: format!(
                        "F_{n}({},{}) has D^{k}{} of parity {} but expected {}",
                        spec.label(u),
                        spec.label(v),
                        spec.label(b),
                        spec.parity(b).bit(),
                        expected.bit()
                    ),
                });
            }
            if graded {
                let want = spec.weight(u).unwrap() + spec.weight(v).unwrap() - Scalar::from_integer((n + 1 + k).into());
                let have = spec.weight(b).unwrap();
                if *have != want {
                    out.push(Violation {
                        kind: ViolationKind::Weight,
                        entry: Some((u, n, v, k)),
                        message: format!(
                            "F_{n}({},{}) has D^{k}{} of weight {} but expected {}",
                            spec.label(u),
                            spec.label(v),
                            spec.label(b),
                            format_scalar(have),
                            format_scalar(&want)
                        ),
                    });
                }
            }
        }
    }
    out
}

/// `A_n B` for arbitrary `A, B ∈ C[D] ⊗ S`, extended from the structure
/// constants through `Y(D^a u, z) D^b v = (d/dz)^a (D - d/dz)^b Y(u, z) v`.
///
/// Expanding gives, for `N = n + a + j`,
/// `(D^a u)_N (D^b v) = Σ_j C(b, j) (-1)^a N!/n! · D^{b-j}(u_n v)`.
pub fn extend_product(spec: &FormulaSpec, a: &Element, n: u32, b: &Element) -> Element {
    let mut out = Element::zero();
    let n_max = spec.n_max();
    for (pa, u, ca) in a.terms() {
        for (pb, v, cb) in b.terms() {
            let cab = ca * cb;
            for j in 0..=pb {
                let Some(inner) = n.checked_sub(pa + j) else { break };
                if inner >= n_max {
                    continue;
                }
                let Some(prod) = spec.product_ref(u, inner, v) else { continue };
                // N!/inner! = falling factorial of N of length a + j
                let ff = crate::scalar::falling_factorial(n as i64, (pa + j) as u64);
                let coeff = Scalar::from_integer(gen_binomial_int(pb as i64, j as u64) * ff) * sign(pa as i64) * &cab;
                out.add_shifted_scaled(prod, pb - j, &coeff);
            }
        }
    }
    out
}

/// Exclusive upper bound on the support of `Y(A, z) B`.
pub fn principal_support_bound(spec: &FormulaSpec, a: &Element, b: &Element) -> u32 {
    spec.n_max() + a.deg_d() + b.deg_d()
}

/// `Y(A, z) B` truncated to its (finite) principal part.
pub fn y_principal(spec: &FormulaSpec, a: &Element, b: &Element) -> PrincipalSeries {
    let bound = principal_support_bound(spec, a, b);
    let mut coeffs = BTreeMap::new();
    for n in 0..bound {
        let p = extend_product(spec, a, n, b);
        if !p.is_zero() {
            coeffs.insert(n, p);
        }
    }
    debug_assert!(extend_product(spec, a, bound, b).is_zero(), "principal part extends past its bound");
    PrincipalSeries { coeffs }
}

/// Common weight `λ + k` of all terms; `Ok(None)` for the zero element.
pub fn weight_of(spec: &FormulaSpec, a: &Element) -> Result<Option<Scalar>> {
    if !spec.is_graded() {
        return Err(Error::Ungraded);
    }
    let mut found: Option<Scalar> = None;
    for (k, b, _) in a.terms() {
        let w = spec.weight(b).unwrap() + Scalar::from_integer(k.into());
        match &found {
            None => found = Some(w),
            Some(f) if *f != w => return Err(Error::Inhomogeneous),
            _ => {}
        }
    }
    Ok(found)
}

/// `1/k!` as a scalar.
pub fn inv_factorial(k: u32) -> Scalar {
    Scalar::new(One::one(), factorial(k as u64))
}
