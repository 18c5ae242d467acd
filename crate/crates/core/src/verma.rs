//! The generalized Verma module `V(U) ≅ U(L_-(U))`.
//!
//! Vectors are finite combinations of PBW monomials `x_1 ⋯ x_k 1` with every
//! `x_i = u_n`, `n < 0`, sorted by (weight descending, basis id, n). Left
//! multiplication rewrites to normal form with `xy = ε yx + [x,y]`, odd
//! squares become `(1/2)[g,g]`, and `u_n 1 = 0` for `n ≥ 0`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num::{Integer, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formula::{epsilon, BasisId, FormulaSpec, Parity};
use crate::lie::{bracket_generators, quotient_central, show_lie, LieElement, LieGenerator};
use crate::scalar::{format_scalar, gen_binomial, int, sign, Scalar};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    pub factors: Vec<LieGenerator>,
}

impl PbwMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn parity(&self, spec: &FormulaSpec) -> Parity {
        self.factors.iter().fold(Parity::Even, |p, g| p + spec.parity(g.b))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PbwVector {
    terms: BTreeMap<PbwMonomial, Scalar>,
    pub level: Option<Scalar>,
}

impl PbwVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: PbwMonomial, coeff: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(m, coeff);
        v
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

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: PbwMonomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn add_scaled(&mut self, other: &PbwVector, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * coeff);
        }
    }

    pub fn scale(&self, coeff: &Scalar) -> PbwVector {
        let mut out = PbwVector { terms: BTreeMap::new(), level: self.level.clone() };
        out.add_scaled(self, coeff);
        out
    }

    /// Total weight of each monomial must exist; returns the homogeneous pieces.
    pub fn components(&self, spec: &FormulaSpec) -> Result<BTreeMap<Scalar, PbwVector>> {
        let mut out: BTreeMap<Scalar, PbwVector> = BTreeMap::new();
        for (m, c) in &self.terms {
            let w = monomial_weight(spec, m)?;
            let piece = out.entry(w).or_insert_with(|| PbwVector { terms: BTreeMap::new(), level: self.level.clone() });
            piece.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// The weight if the vector is nonzero and homogeneous.
    pub fn weight(&self, spec: &FormulaSpec) -> Result<Option<Scalar>> {
        let comps = self.components(spec)?;
        match comps.len() {
            0 => Ok(None),
            1 => Ok(comps.into_keys().next()),
            _ => Err(Error::Inhomogeneous),
        }
    }
}

impl std::ops::Add<&PbwVector> for &PbwVector {
    type Output = PbwVector;
    fn add(self, rhs: &PbwVector) -> PbwVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub<&PbwVector> for &PbwVector {
    type Output = PbwVector;
    fn sub(self, rhs: &PbwVector) -> PbwVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

pub fn vacuum() -> PbwVector {
    PbwVector::monomial(PbwMonomial::one(), Scalar::one())
}

pub fn generator_weight(spec: &FormulaSpec, g: LieGenerator) -> Option<Scalar> {
    spec.weight(g.b).map(|w| w - int(g.n) - int(1))
}

pub fn monomial_weight(spec: &FormulaSpec, m: &PbwMonomial) -> Result<Scalar> {
    m.factors
        .iter()
        .try_fold(Scalar::zero(), |acc, &g| generator_weight(spec, g).map(|w| acc + w))
        .ok_or(Error::Ungraded)
}

/// Display adapter: `2 * ω_-1 ω_-1 1 + 1/2 * c_-1 1`, or `13 * 1`.
pub struct ShowPbw<'a> {
    spec: &'a FormulaSpec,
    vec: &'a PbwVector,
}

impl fmt::Display for ShowPbw<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vec.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.vec.terms().enumerate() {
            let mut coeff = c.clone();
            if coeff.is_negative() {
                write!(f, "{}", if i == 0 { "-" } else { " - " })?;
                coeff = -coeff;
            } else if i > 0 {
                write!(f, " + ")?;
            }
            if !coeff.is_one() {
                write!(f, "{} * ", format_scalar(&coeff))?;
            }
            for g in &m.factors {
                write!(f, "{}_{} ", self.spec.label(g.b), g.n)?;
            }
            write!(f, "1")?;
        }
        Ok(())
    }
}

pub fn show_pbw<'a>(spec: &'a FormulaSpec, vec: &'a PbwVector) -> ShowPbw<'a> {
    ShowPbw { spec, vec }
}

type OrderKey = (Reverse<Option<Scalar>>, BasisId, i64);

/// `V(U)` for one formula, with memoized brackets and normal ordering.
pub struct VermaModule<'a> {
    spec: &'a FormulaSpec,
    central: Option<BasisId>,
    brackets: RwLock<HashMap<(LieGenerator, LieGenerator), LieElement>>,
    products: RwLock<HashMap<(LieGenerator, PbwMonomial), PbwVector>>,
}

impl<'a> VermaModule<'a> {
    pub fn new(spec: &'a FormulaSpec) -> Self {
        VermaModule {
            spec,
            central: quotient_central(spec),
            brackets: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &'a FormulaSpec {
        self.spec
    }

    fn key(&self, g: LieGenerator) -> OrderKey {
        (Reverse(generator_weight(self.spec, g)), g.b, g.n)
    }

    fn killed(&self, g: LieGenerator) -> bool {
        self.central == Some(g.b) && g.n != -1
    }

    fn eps(&self, a: LieGenerator, b: LieGenerator) -> Scalar {
        epsilon(self.spec.parity(a.b), self.spec.parity(b.b))
    }

    pub fn bracket(&self, x: LieGenerator, y: LieGenerator) -> LieElement {
        if let Some(hit) = self.brackets.read().unwrap().get(&(x, y)) {
            return hit.clone();
        }
        let b = bracket_generators(self.spec, x, y);
        self.brackets.write().unwrap().insert((x, y), b.clone());
        b
    }

    /// `g · (m 1)` in normal form.
    fn mul(&self, g: LieGenerator, m: &PbwMonomial) -> PbwVector {
        if self.killed(g) {
            return PbwVector::zero();
        }
        let memo_key = (g, m.clone());
        if let Some(hit) = self.products.read().unwrap().get(&memo_key) {
            return hit.clone();
        }
        let out = self.mul_uncached(g, m);
        self.products.write().unwrap().insert(memo_key, out.clone());
        out
    }

    fn mul_uncached(&self, g: LieGenerator, m: &PbwMonomial) -> PbwVector {
        let Some(&x1) = m.factors.first() else {
            return if g.n >= 0 { PbwVector::zero() } else { PbwVector::monomial(PbwMonomial { factors: vec![g] }, Scalar::one()) };
        };
        let rest = PbwMonomial { factors: m.factors[1..].to_vec() };
        if g.n < 0 {
            let prepend = || {
                let mut factors = Vec::with_capacity(m.factors.len() + 1);
                factors.push(g);
                factors.extend_from_slice(&m.factors);
                PbwVector::monomial(PbwMonomial { factors }, Scalar::one())
            };
            if g == x1 {
                if !self.spec.parity(g.b).is_odd() {
                    return prepend();
                }
                let half = Scalar::new(1.into(), 2.into());
                return self.act_lie(&self.bracket(g, g), &rest).scale(&half);
            }
            if self.key(g) < self.key(x1) {
                return prepend();
            }
        }
        // g x1 rest = ε x1 (g rest) + [g, x1] rest
        let mut out = self.act_gen(x1, &self.mul(g, &rest)).scale(&self.eps(g, x1));
        out.add_scaled(&self.act_lie(&self.bracket(g, x1), &rest), &Scalar::one());
        out
    }

    fn act_lie(&self, x: &LieElement, m: &PbwMonomial) -> PbwVector {
        let mut out = PbwVector::zero();
        for (h, c) in x.terms() {
            out.add_scaled(&self.mul(h, m), c);
        }
        out
    }

    fn act_gen(&self, g: LieGenerator, v: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.mul(g, m), c);
        }
        out
    }

    /// Left action of a generator; keeps `v`'s level specialized.
    pub fn act(&self, g: LieGenerator, v: &PbwVector) -> PbwVector {
        let out = self.act_gen(g, v);
        match &v.level {
            Some(l) => specialize_with(self.central, &out, l),
            None => out,
        }
    }

    pub fn act_element(&self, x: &LieElement, v: &PbwVector) -> PbwVector {
        let mut out = PbwVector { terms: BTreeMap::new(), level: v.level.clone() };
        for (g, c) in x.terms() {
            out.add_scaled(&self.act(g, v), c);
        }
        out
    }

    /// Applies `x_1 ⋯ x_k` (leftmost last) to `v`.
    pub fn act_word(&self, word: &[LieGenerator], v: &PbwVector) -> PbwVector {
        word.iter().rev().fold(v.clone(), |acc, &g| self.act(g, &acc))
    }

    /// The monomial `m 1` as a vector, rebuilt by acting factor by factor.
    fn rebuild(&self, factors: &[LieGenerator]) -> PbwVector {
        self.act_word(factors, &vacuum())
    }

    /// `D(x_1 ⋯ x_k 1) = Σ x_1 ⋯ [D,x_i] ⋯ x_k 1` with `[D,u_n] = -n u_{n-1}`.
    pub fn apply_d(&self, v: &PbwVector) -> PbwVector {
        let mut out = PbwVector { terms: BTreeMap::new(), level: v.level.clone() };
        for (m, c) in v.terms() {
            for i in 0..m.factors.len() {
                let g = m.factors[i];
                let h = LieGenerator::new(g.b, g.n - 1);
                if g.n == 0 || self.killed(h) {
                    continue;
                }
                let mut word = m.factors.clone();
                word[i] = h;
                out.add_scaled(&self.rebuild(&word), &(c * int(-g.n)));
            }
        }
        out
    }

    pub fn specialize_level(&self, v: &PbwVector, level: &Scalar) -> Result<PbwVector> {
        let c = self.spec.central.ok_or(Error::NoCentral)?;
        Ok(specialize_with(Some(c), v, level))
    }

    /// Negative generators that enter PBW monomials, excluding `c_{-1}`.
    pub fn creation_generators(&self, cutoff: &Scalar) -> Result<Vec<LieGenerator>> {
        if self.spec.dim() > 0 && !self.spec.is_graded() {
            return Err(Error::Ungraded);
        }
        let mut out = Vec::new();
        for b in 0..self.spec.dim() {
            if self.central == Some(b) {
                continue;
            }
            let lam = self.spec.weight(b).expect("graded");
            if !lam.is_positive() {
                return Err(Error::InvalidSpec(format!(
                    "{} has weight {}; the graded pieces of V(U) would be infinite",
                    self.spec.label(b),
                    format_scalar(lam)
                )));
            }
            // wt(u_n) = λ - n - 1 ≤ cutoff
            let mut n = -1i64;
            while &(lam - int(n) - int(1)) <= cutoff {
                out.push(LieGenerator::new(b, n));
                n -= 1;
            }
        }
        out.sort_by_key(|&g| self.key(g));
        Ok(out)
    }

    /// Number of PBW monomials of each weight `≤ cutoff`, with `c_{-1}`
    /// specialized to a scalar. Weights run over multiples of the common
    /// denominator of the generator weights.
    pub fn graded_dimension(&self, cutoff: &Scalar) -> Result<BTreeMap<Scalar, u128>> {
        let gens = self.creation_generators(cutoff)?;
        let mut dims: BTreeMap<Scalar, u128> = BTreeMap::new();
        dims.insert(Scalar::zero(), 1);
        for &g in &gens {
            let w = generator_weight(self.spec, g).expect("graded");
            let odd = self.spec.parity(g.b).is_odd();
            let mut next = dims.clone();
            for (base, count) in &dims {
                let mut k = 1u32;
                loop {
                    let total = base + &w * int(k as i64);
                    if &total > cutoff {
                        break;
                    }
                    *next.entry(total).or_insert(0) += count;
                    if odd {
                        break;
                    }
                    k += 1;
                }
            }
            dims = next;
        }
        if !gens.is_empty() {
            let den = gens
                .iter()
                .map(|&g| generator_weight(self.spec, g).expect("graded").denom().clone())
                .fold(num::BigInt::one(), |a, b| a.lcm(&b));
            let steps = (cutoff * Scalar::from_integer(den.clone())).floor().to_integer();
            let steps = steps.to_i64().unwrap_or(0);
            for k in 0..=steps {
                dims.entry(Scalar::new(k.into(), den.clone())).or_insert(0);
            }
        }
        Ok(dims)
    }

    /// All PBW monomials of weight `≤ cutoff` without `c_{-1}` factors.
    pub fn monomials_up_to(&self, cutoff: &Scalar) -> Result<Vec<PbwMonomial>> {
        let gens = self.creation_generators(cutoff)?;
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<LieGenerator>, Scalar)> = vec![(0, Vec::new(), Scalar::zero())];
        while let Some((start, factors, w)) = stack.pop() {
            out.push(PbwMonomial { factors: factors.clone() });
            for (i, &g) in gens.iter().enumerate().skip(start) {
                let total = &w + generator_weight(self.spec, g).expect("graded");
                if &total > cutoff {
                    continue;
                }
                let next = if self.spec.parity(g.b).is_odd() { i + 1 } else { i };
                let mut f = factors.clone();
                f.push(g);
                stack.push((next, f, total));
            }
        }
        out.sort();
        Ok(out)
    }

    fn check_cutoff(&self, w: &Scalar, cutoff: &Scalar) -> Result<()> {
        if w > cutoff {
            return Err(Error::CutoffExceeded { weight: format_scalar(w), cutoff: format_scalar(cutoff) });
        }
        Ok(())
    }

    /// `a_n b` for the vertex operator `Y(a,z)` on `V(U)`.
    pub fn field_coefficient(&self, a: &PbwVector, n: i64, b: &PbwVector, cutoff: &Scalar) -> Result<PbwVector> {
        let mut out = PbwVector { terms: BTreeMap::new(), level: b.level.clone().or_else(|| a.level.clone()) };
        let b_parts = b.components(self.spec)?;
        for wb in b_parts.keys() {
            self.check_cutoff(wb, cutoff)?;
        }
        for (m, c) in a.terms() {
            for (wb, bp) in &b_parts {
                let piece = self.field_monomial(&m.factors, n, bp, wb, cutoff)?;
                out.add_scaled(&piece, c);
            }
        }
        if let Some(l) = &out.level.clone() {
            out = specialize_with(self.central, &out, l);
        }
        Ok(out)
    }

    /// `(x_1 ⋯ x_k 1)_n b` for homogeneous `b` of weight `wb`, peeling off the
    /// leading factor: `(u_m a')_n b = Σ_j (-1)^j C(m,j)
    /// [u_{m-j}(a'_{n+j} b) - ε (-1)^m a'_{m+n-j}(u_j b)]`.
    fn field_monomial(&self, a: &[LieGenerator], n: i64, b: &PbwVector, wb: &Scalar, cutoff: &Scalar) -> Result<PbwVector> {
        let Some((&u, rest)) = a.split_first() else {
            return Ok(if n == -1 { b.clone() } else { PbwVector::zero() });
        };
        let wa = monomial_weight(self.spec, &PbwMonomial { factors: a.to_vec() })?;
        let result_weight = &wa + wb - int(n) - int(1);
        if result_weight.is_negative() || b.is_zero() {
            return Ok(PbwVector::zero());
        }
        self.check_cutoff(&result_weight, cutoff)?;
        let wrest = monomial_weight(self.spec, &PbwMonomial { factors: rest.to_vec() })?;
        let lam = self.spec.weight(u.b).cloned().ok_or(Error::Ungraded)?;
        let m = u.n;
        let eps = epsilon(self.spec.parity(u.b), PbwMonomial { factors: rest.to_vec() }.parity(self.spec));
        let mut out = PbwVector::zero();

        // a'_{n+j} b vanishes once n + j > wt(a') + wt(b) - 1
        let j_max = (&wrest + wb - int(1) - int(n)).floor().to_integer().to_i64().unwrap_or(i64::MAX);
        for j in 0..=j_max.max(-1) {
            let c = sign(j) * gen_binomial(m, j as u64);
            if c.is_zero() {
                continue;
            }
            let inner_w = &wrest + wb - int(n + j) - int(1);
            self.check_cutoff(&inner_w, cutoff)?;
            let inner = self.field_monomial(rest, n + j, b, wb, cutoff)?;
            out.add_scaled(&self.act_gen(LieGenerator::new(u.b, m - j), &inner), &c);
        }
        // u_j b vanishes once j > λ_u + wt(b) - 1
        let j_max = (&lam + wb - int(1)).floor().to_integer().to_i64().unwrap_or(i64::MAX);
        let outer = -(eps * sign(m));
        for j in 0..=j_max.max(-1) {
            let c = sign(j) * gen_binomial(m, j as u64);
            if c.is_zero() {
                continue;
            }
            let ub = self.act_gen(LieGenerator::new(u.b, j), b);
            if ub.is_zero() {
                continue;
            }
            let wub = &lam + wb - int(j) - int(1);
            self.check_cutoff(&wub, cutoff)?;
            let inner = self.field_monomial(rest, m + n - j, &ub, &wub, cutoff)?;
            out.add_scaled(&inner, &(&c * &outer));
        }
        Ok(out)
    }

    pub fn axiom_spotcheck(&self, cutoff: &Scalar) -> Result<SpotcheckReport> {
        spotcheck(self, cutoff)
    }
}

fn specialize_with(central: Option<BasisId>, v: &PbwVector, level: &Scalar) -> PbwVector {
    let mut out = PbwVector { terms: BTreeMap::new(), level: Some(level.clone()) };
    for (m, c) in v.terms() {
        let (cs, rest): (Vec<LieGenerator>, Vec<LieGenerator>) =
            m.factors.iter().partition(|g| Some(g.b) == central && g.n == -1);
        let mut coeff = c.clone();
        for _ in &cs {
            coeff *= level;
        }
        out.add_term(PbwMonomial { factors: rest }, coeff);
    }
    out
}

pub fn act(spec: &FormulaSpec, g: LieGenerator, v: &PbwVector) -> PbwVector {
    VermaModule::new(spec).act(g, v)
}

pub fn apply_d_module(spec: &FormulaSpec, v: &PbwVector) -> PbwVector {
    VermaModule::new(spec).apply_d(v)
}

pub fn graded_dimension(spec: &FormulaSpec, cutoff: &Scalar) -> Result<BTreeMap<Scalar, u128>> {
    VermaModule::new(spec).graded_dimension(cutoff)
}

pub fn field_coefficient(spec: &FormulaSpec, a: &PbwVector, n: i64, b: &PbwVector, cutoff: &Scalar) -> Result<PbwVector> {
    VermaModule::new(spec).field_coefficient(a, n, b, cutoff)
}

pub fn specialize_level(spec: &FormulaSpec, v: &PbwVector, level: &Scalar) -> Result<PbwVector> {
    VermaModule::new(spec).specialize_level(v, level)
}

pub fn axiom_spotcheck(spec: &FormulaSpec, cutoff: &Scalar) -> Result<SpotcheckReport> {
    VermaModule::new(spec).axiom_spotcheck(cutoff)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotcheckItem {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SpotcheckItem {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotcheckReport {
    pub items: Vec<SpotcheckItem>,
}

impl SpotcheckReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(SpotcheckItem::passed)
    }

    pub fn item(&self, name: &str) -> Option<&SpotcheckItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

fn basis_state(b: BasisId) -> PbwVector {
    PbwVector::monomial(PbwMonomial { factors: vec![LieGenerator::new(b, -1)] }, Scalar::one())
}

fn spotcheck(vm: &VermaModule<'_>, cutoff: &Scalar) -> Result<SpotcheckReport> {
    let spec = vm.spec;
    if !spec.is_graded() {
        return Err(Error::Ungraded);
    }
    let states: Vec<BasisId> = (0..spec.dim()).filter(|&b| vm.central != Some(b)).collect();
    let field_cutoff = cutoff * int(3) + int(spec.n_max() as i64 + 2);
    let monos = vm.monomials_up_to(cutoff)?;
    let show = |v: &PbwVector| show_pbw(spec, v).to_string();
    let fail_if = |failures: &mut Vec<String>, lhs: &PbwVector, rhs: &PbwVector, what: String| {
        if lhs != rhs {
            failures.push(format!("{what}: {} ≠ {}", show(lhs), show(rhs)));
        }
    };

    // vacuum and creation
    let mut vac = SpotcheckItem { name: "vacuum", checked: 0, failures: vec![] };
    let mut creation = SpotcheckItem { name: "creation", checked: 0, failures: vec![] };
    for m in &monos {
        let b = PbwVector::monomial(m.clone(), Scalar::one());
        for n in -3..=3 {
            let got = vm.field_coefficient(&vacuum(), n, &b, &field_cutoff)?;
            let want = if n == -1 { b.clone() } else { PbwVector::zero() };
            vac.checked += 1;
            fail_if(&mut vac.failures, &got, &want, format!("1_{n} on {}", show(&b)));
        }
        if m.is_one() {
            continue;
        }
        for n in -1..=2 {
            let got = vm.field_coefficient(&b, n, &vacuum(), &field_cutoff)?;
            let want = if n == -1 { b.clone() } else { PbwVector::zero() };
            creation.checked += 1;
            fail_if(&mut creation.failures, &got, &want, format!("({})_{n} 1", show(&b)));
        }
    }

    // half skew symmetry on κ(S): u_n v = -ε Σ_k (-1)^{n+k} D^k/k! v_{n+k} u
    let mut skew = SpotcheckItem { name: "half_skew_symmetry", checked: 0, failures: vec![] };
    for &u in &states {
        for &v in &states {
            let wsum = spec.weight(u).unwrap() + spec.weight(v).unwrap();
            if &wsum > cutoff {
                continue;
            }
            let eps = epsilon(spec.parity(u), spec.parity(v));
            for n in 0..spec.n_max() as i64 {
                let lhs = vm.act(LieGenerator::new(u, n), &basis_state(v));
                let mut rhs = PbwVector::zero();
                let mut k = 0i64;
                let mut fact = Scalar::one();
                while n + k < spec.n_max() as i64 {
                    let mut term = vm.act(LieGenerator::new(v, n + k), &basis_state(u));
                    for _ in 0..k {
                        term = vm.apply_d(&term);
                    }
                    rhs.add_scaled(&term, &(-(&eps) * sign(n + k) / &fact));
                    k += 1;
                    fact *= int(k);
                }
                skew.checked += 1;
                fail_if(&mut skew.failures, &lhs, &rhs, format!("{}_{n}{}", spec.label(u), spec.label(v)));
            }
        }
    }

    // locality: Σ_j C(N,j)(-1)^j [u_{m+N-j}, v_{n+j}] = 0, N = n_max
    let big_n = spec.n_max() as i64;
    let window = 2i64;
    let local_results: Vec<(usize, Vec<String>)> = monos
        .par_iter()
        .map(|w| {
            let w_vec = PbwVector::monomial(w.clone(), Scalar::one());
            let mut checked = 0;
            let mut fails = Vec::new();
            for &u in &states {
                for &v in &states {
                    let eps = epsilon(spec.parity(u), spec.parity(v));
                    for m in -window..=window {
                        for n in -window..=window {
                            let mut total = PbwVector::zero();
                            for j in 0..=big_n {
                                let c = gen_binomial(big_n, j as u64) * sign(j);
                                let x = LieGenerator::new(u, m + big_n - j);
                                let y = LieGenerator::new(v, n + j);
                                let xy = vm.act(x, &vm.act(y, &w_vec));
                                let yx = vm.act(y, &vm.act(x, &w_vec));
                                total.add_scaled(&(&xy - &yx.scale(&eps)), &c);
                            }
                            checked += 1;
                            if !total.is_zero() {
                                fails.push(format!(
                                    "(z1-z2)^{big_n}[Y({}),Y({})] at ({m},{n}) on {}: {}",
                                    spec.label(u),
                                    spec.label(v),
                                    show(&w_vec),
                                    show(&total)
                                ));
                            }
                        }
                    }
                }
            }
            (checked, fails)
        })
        .collect();
    let mut locality = SpotcheckItem { name: "locality", checked: 0, failures: vec![] };
    for (c, f) in local_results {
        locality.checked += c;
        locality.failures.extend(f);
    }

    // commutator formula: [u_m, a_n] b = Σ_i C(m,i) (u_i a)_{m+n-i} b
    let mut comm = SpotcheckItem { name: "commutator_formula", checked: 0, failures: vec![] };
    let half = cutoff / int(2);
    let small: Vec<&PbwMonomial> = monos.iter().filter(|m| monomial_weight(spec, m).map(|w| w <= half).unwrap_or(false)).collect();
    for &u in &states {
        for a in &small {
            let a_vec = PbwVector::monomial((*a).clone(), Scalar::one());
            let eps = epsilon(spec.parity(u), a.parity(spec));
            for b in &small {
                let b_vec = PbwVector::monomial((*b).clone(), Scalar::one());
                for m in 0..=1i64 {
                    for n in -1..=1i64 {
                        let ug = LieGenerator::new(u, m);
                        let mut lhs = vm.act(ug, &vm.field_coefficient(&a_vec, n, &b_vec, &field_cutoff)?);
                        lhs.add_scaled(&vm.field_coefficient(&a_vec, n, &vm.act(ug, &b_vec), &field_cutoff)?, &-(&eps));
                        let mut rhs = PbwVector::zero();
                        for i in 0..=m {
                            let uia = vm.act(LieGenerator::new(u, i), &a_vec);
                            rhs.add_scaled(&vm.field_coefficient(&uia, m + n - i, &b_vec, &field_cutoff)?, &gen_binomial(m, i as u64));
                        }
                        comm.checked += 1;
                        fail_if(
                            &mut comm.failures,
                            &lhs,
                            &rhs,
                            format!("[{}_{m}, ({})_{n}] on {}", spec.label(u), show(&a_vec), show(&b_vec)),
                        );
                    }
                }
            }
        }
    }

    // translation: (Da)_n b = -n a_{n-1} b
    let mut transl = SpotcheckItem { name: "translation", checked: 0, failures: vec![] };
    for a in &small {
        let a_vec = PbwVector::monomial((*a).clone(), Scalar::one());
        let da = vm.apply_d(&a_vec);
        for b in &small {
            let b_vec = PbwVector::monomial((*b).clone(), Scalar::one());
            for n in -2..=2i64 {
                let lhs = vm.field_coefficient(&da, n, &b_vec, &field_cutoff)?;
                let rhs = vm.field_coefficient(&a_vec, n - 1, &b_vec, &field_cutoff)?.scale(&int(-n));
                transl.checked += 1;
                fail_if(&mut transl.failures, &lhs, &rhs, format!("(D{})_{n} {}", show(&a_vec), show(&b_vec)));
            }
        }
    }

    Ok(SpotcheckReport { items: vec![vac, creation, skew, locality, comm, transl] })
}

impl fmt::Display for SpotcheckItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} checked)", self.name, if self.passed() { "pass" } else { "FAIL" }, self.checked)
    }
}

/// Lie element printed for reports: used by the CLI when `--act` names a word.
pub fn show_generator(spec: &FormulaSpec, g: LieGenerator) -> String {
    show_lie(spec, &LieElement::generator(g.b, g.n)).to_string()
}
