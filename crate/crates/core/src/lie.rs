//! The local Lie superalgebra `L(U)` of a verified formula.
//!
//! Elements are written in the canonical basis `{u_n : u ∈ basis(S), n ∈ Z}`;
//! a generator `(D^k u)_n` is rewritten through `(Du)_n = -n u_{n-1}`. When
//! the formula has a designated central vector `c` that passes
//! [`central_check`], the quotient by `D C[D] ⊗ c` is built in: `Dc = 0`, so
//! `c_n = 0` for `n ≠ -1` and `c_{-1}` is central.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::check::central_check;
use crate::formula::{apply_d_pow, epsilon, extend_product, inv_factorial, BasisId, Element, FormulaSpec, Parity};
use crate::scalar::{falling_factorial, format_scalar, gen_binomial, sign, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieGenerator {
    pub b: BasisId,
    pub n: i64,
}

impl LieGenerator {
    pub fn new(b: BasisId, n: i64) -> Self {
        LieGenerator { b, n }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LieElement {
    terms: BTreeMap<LieGenerator, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(b: BasisId, n: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(LieGenerator::new(b, n), Scalar::one());
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisId, i64, Scalar)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (b, n, c) in terms {
            e.add_term(LieGenerator::new(b, n), c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (LieGenerator, &Scalar)> + '_ {
        self.terms.iter().map(|(&g, c)| (g, c))
    }

    pub fn coeff(&self, g: LieGenerator) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, g: LieGenerator, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&g) {
            Some(old) => old + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(g, sum);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        for (&g, c) in &other.terms {
            self.add_term(g, c * coeff);
        }
    }

    pub fn scale(&self, coeff: &Scalar) -> LieElement {
        let mut out = LieElement::zero();
        out.add_scaled(self, coeff);
        out
    }

    pub fn parity(&self, spec: &FormulaSpec) -> Option<Parity> {
        let mut it = self.terms.keys().map(|g| spec.parity(g.b));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::ops::Add<&LieElement> for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub<&LieElement> for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

/// Display adapter: `4*ω_1 + 1/2*c_-1`, terms in (basis id, n) order.
pub struct ShowLie<'a> {
    spec: &'a FormulaSpec,
    elem: &'a LieElement,
}

impl fmt::Display for ShowLie<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.elem.terms().enumerate() {
            let mut coeff = c.clone();
            if coeff.is_negative() {
                write!(f, "{}", if i == 0 { "-" } else { " - " })?;
                coeff = -coeff;
            } else if i > 0 {
                write!(f, " + ")?;
            }
            if !coeff.is_one() {
                write!(f, "{}*", format_scalar(&coeff))?;
            }
            write!(f, "{}_{}", self.spec.label(g.b), g.n)?;
        }
        Ok(())
    }
}

pub fn show_lie<'a>(spec: &'a FormulaSpec, elem: &'a LieElement) -> ShowLie<'a> {
    ShowLie { spec, elem }
}

/// Central vector whose derivatives are quotiented out, if the formula has one.
pub fn quotient_central(spec: &FormulaSpec) -> Option<BasisId> {
    spec.central.filter(|&c| c < spec.dim() && central_check(spec, c))
}

fn killed(central: Option<BasisId>, k: u32, g: LieGenerator) -> bool {
    central == Some(g.b) && (k > 0 || g.n != -1)
}

/// `(D^k u)_n ↦ (-1)^k n(n-1)⋯(n-k+1) u_{n-k}`, termwise.
pub fn reduce_generator(spec: &FormulaSpec, a: &Element, n: i64) -> LieElement {
    let central = quotient_central(spec);
    let mut out = LieElement::zero();
    for (k, b, c) in a.terms() {
        let g = LieGenerator::new(b, n - k as i64);
        if killed(central, k, g) {
            continue;
        }
        let coeff = Scalar::from_integer(falling_factorial(n, k as u64)) * sign(k as i64) * c;
        out.add_term(g, coeff);
    }
    out
}

/// `[u_n, v_p] = Σ_i C(n,i) (u_i v)_{n+p-i}` on generators.
pub fn bracket_generators(spec: &FormulaSpec, x: LieGenerator, y: LieGenerator) -> LieElement {
    let central = quotient_central(spec);
    let mut out = LieElement::zero();
    if killed(central, 0, x) || killed(central, 0, y) {
        return out;
    }
    for i in 0..spec.n_max() {
        let Some(uiv) = spec.product_ref(x.b, i, y.b) else { continue };
        let c = gen_binomial(x.n, i as u64);
        if c.is_zero() {
            continue;
        }
        out.add_scaled(&reduce_generator(spec, uiv, x.n + y.n - i as i64), &c);
    }
    out
}

pub fn bracket(spec: &FormulaSpec, x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (gx, cx) in x.terms() {
        for (gy, cy) in y.terms() {
            out.add_scaled(&bracket_generators(spec, gx, gy), &(cx * cy));
        }
    }
    out
}

/// `D(u_n) = -n u_{n-1}`.
pub fn lie_d(spec: &FormulaSpec, x: &LieElement) -> LieElement {
    let central = quotient_central(spec);
    let mut out = LieElement::zero();
    for (g, c) in x.terms() {
        let h = LieGenerator::new(g.b, g.n - 1);
        if killed(central, 0, h) {
            continue;
        }
        out.add_term(h, c * Scalar::from_integer((-g.n).into()));
    }
    out
}

/// Splits into the `n < 0` part and the `n ≥ 0` part.
pub fn triangular_split(x: &LieElement) -> (LieElement, LieElement) {
    let mut neg = LieElement::zero();
    let mut pos = LieElement::zero();
    for (g, c) in x.terms() {
        if g.n < 0 {
            neg.add_term(g, c.clone());
        } else {
            pos.add_term(g, c.clone());
        }
    }
    (neg, pos)
}

/// Bracket transported to `U` along `u ↦ u_{-1}`:
/// `[u, v] = Σ_n ((-1)^n/(n+1)!) D^{n+1}(u_n v)`.
pub fn bracket_on_u(spec: &FormulaSpec, u: &Element, v: &Element) -> Element {
    let bound = crate::formula::principal_support_bound(spec, u, v);
    let mut out = Element::zero();
    for n in 0..bound {
        let p = extend_product(spec, u, n, v);
        if p.is_zero() {
            continue;
        }
        out.add_scaled(&apply_d_pow(&p, n + 1), &(sign(n as i64) * inv_factorial(n + 1)));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowViolation {
    Skew { x: LieGenerator, y: LieGenerator },
    Jacobi { x: LieGenerator, y: LieGenerator, z: LieGenerator },
    Derivation { x: LieGenerator, y: LieGenerator },
}

fn window_gens(spec: &FormulaSpec, window: i64) -> Vec<LieGenerator> {
    let central = quotient_central(spec);
    (0..spec.dim())
        .flat_map(|b| (-window..=window).map(move |n| LieGenerator::new(b, n)))
        .filter(|&g| !killed(central, 0, g))
        .collect()
}

/// Checks ε-skew-symmetry, the super Jacobi identity and that `D` is a
/// derivation, on all generators `u_n` with `|n| ≤ window`.
pub fn jacobi_window_verify(spec: &FormulaSpec, window: i64) -> Vec<WindowViolation> {
    let gens = window_gens(spec, window);
    let eps = |a: LieGenerator, b: LieGenerator| epsilon(spec.parity(a.b), spec.parity(b.b));
    let single = |g: LieGenerator| LieElement::generator(g.b, g.n);

    let mut pairs: BTreeMap<(LieGenerator, LieGenerator), LieElement> = BTreeMap::new();
    for &x in &gens {
        for &y in &gens {
            pairs.insert((x, y), bracket_generators(spec, x, y));
        }
    }
    let mut out = Vec::new();
    for &x in &gens {
        for &y in &gens {
            let xy = &pairs[&(x, y)];
            let yx = &pairs[&(y, x)];
            if *xy != yx.scale(&-eps(x, y)) {
                out.push(WindowViolation::Skew { x, y });
            }
            let lhs = lie_d(spec, xy);
            let rhs = &bracket(spec, &lie_d(spec, &single(x)), &single(y)) + &bracket(spec, &single(x), &lie_d(spec, &single(y)));
            if lhs != rhs {
                out.push(WindowViolation::Derivation { x, y });
            }
        }
    }
    let jac: Vec<WindowViolation> = gens
        .par_iter()
        .flat_map_iter(|&x| {
            let pairs = &pairs;
            let gens = &gens;
            gens.iter().flat_map(move |&y| {
                gens.iter().filter_map(move |&z| {
                    // [[x,y],z] = [x,[y,z]] - ε_{x,y} [y,[x,z]]
                    let lhs = bracket(spec, &pairs[&(x, y)], &single(z));
                    let mut rhs = bracket(spec, &single(x), &pairs[&(y, z)]);
                    rhs.add_scaled(&bracket(spec, &single(y), &pairs[&(x, z)]), &-eps(x, y));
                    (lhs != rhs).then_some(WindowViolation::Jacobi { x, y, z })
                })
            })
        })
        .collect();
    out.extend(jac);
    out
}
