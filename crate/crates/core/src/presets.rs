//! Constructors for the standard formulas: affine, Virasoro, Neveu-Schwarz,
//! and the quadratic formulas built from an algebra with a bilinear form.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::formula::{BasisId, Element, FormulaSpec, Parity};
use crate::scalar::{int, parse_scalar, ratio, Scalar};

/// A finite-dimensional algebra given by its multiplication table
/// (`product[i][j]` is the coordinate vector of `e_i · e_j`) and a bilinear
/// form table. Used both for Lie algebras and for the algebras `B` feeding
/// the quadratic formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraData {
    pub labels: Vec<String>,
    pub product: Vec<Vec<Vec<Scalar>>>,
    pub form: Vec<Vec<Scalar>>,
}

/// Lie algebra with an invariant symmetric form; `product` is the bracket.
pub type LieData = AlgebraData;

impl AlgebraData {
    pub fn zero(labels: &[&str]) -> Self {
        let d = labels.len();
        AlgebraData {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            product: vec![vec![vec![Scalar::zero(); d]; d]; d],
            form: vec![vec![Scalar::zero(); d]; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn set_product(&mut self, i: usize, j: usize, coords: &[(usize, Scalar)]) {
        let d = self.dim();
        let mut v = vec![Scalar::zero(); d];
        for (k, c) in coords {
            v[*k] += c;
        }
        self.product[i][j] = v;
    }

    pub fn set_form(&mut self, i: usize, j: usize, value: Scalar) {
        self.form[i][j] = value;
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..d {
                    if !self.product[i][j][k].is_zero() {
                        out[k] += &c * &self.product[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let d = self.dim();
        let mut acc = Scalar::zero();
        for i in 0..d {
            for j in 0..d {
                acc += &x[i] * &y[j] * &self.form[i][j];
            }
        }
        acc
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn check_shape(&self) -> Result<()> {
        let d = self.dim();
        let ok = self.product.len() == d
            && self.product.iter().all(|row| row.len() == d && row.iter().all(|v| v.len() == d))
            && self.form.len() == d
            && self.form.iter().all(|r| r.len() == d);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(format!("tables do not match dimension {d}")))
        }
    }

    pub fn form_is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.form[i][j] == self.form[j][i]))
    }

    /// Antisymmetry, Jacobi identity, symmetric invariant form.
    pub fn validate_lie(&self) -> Result<()> {
        self.check_shape()?;
        let d = self.dim();
        let neg = |v: &[Scalar]| v.iter().map(|x| -x).collect::<Vec<_>>();
        for i in 0..d {
            for j in 0..d {
                if self.product[i][j] != neg(&self.product[j][i]) {
                    return Err(Error::InvalidAlgebra(format!(
                        "bracket not antisymmetric on ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        if !self.form_is_symmetric() {
            return Err(Error::FormNotSymmetric);
        }
        for i in 0..d {
            let x = self.unit(i);
            for j in 0..d {
                let y = self.unit(j);
                let xy = self.mul(&x, &y);
                for k in 0..d {
                    let z = self.unit(k);
                    // [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0
                    let a = self.mul(&x, &self.mul(&y, &z));
                    let b = self.mul(&y, &self.mul(&z, &x));
                    let c = self.mul(&z, &xy);
                    if (0..d).any(|t| !(&a[t] + &b[t] + &c[t]).is_zero()) {
                        return Err(Error::InvalidAlgebra(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                    if self.pair(&xy, &z) != self.pair(&x, &self.mul(&y, &z)) {
                        return Err(Error::InvalidAlgebra(format!(
                            "form not invariant on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.product[i][j] == self.product[j][i]))
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    self.mul(&self.mul(&x, &y), &z) == self.mul(&x, &self.mul(&y, &z))
                })
            })
        })
    }
}

/// `sl2` with basis `e, h, f` and the normalized form `<h,h> = 2`, `<e,f> = 1`.
pub fn sl2_data() -> LieData {
    let mut g = AlgebraData::zero(&["e", "h", "f"]);
    let (e, h, f) = (0, 1, 2);
    g.set_product(e, f, &[(h, int(1))]);
    g.set_product(f, e, &[(h, int(-1))]);
    g.set_product(h, e, &[(e, int(2))]);
    g.set_product(e, h, &[(e, int(-2))]);
    g.set_product(h, f, &[(f, int(-2))]);
    g.set_product(f, h, &[(f, int(2))]);
    g.set_form(h, h, int(2));
    g.set_form(e, f, int(1));
    g.set_form(f, e, int(1));
    g
}

/// One-dimensional abelian Lie algebra with `<x,x> = 1`.
pub fn heisenberg_data() -> LieData {
    let mut g = AlgebraData::zero(&["x"]);
    g.set_form(0, 0, int(1));
    g
}

/// Affine formula: `Y(x,z)y = [x,y]/z + <x,y>c/z²`, `c` central.
pub fn affine(g: &LieData) -> Result<FormulaSpec> {
    g.validate_lie()?;
    Ok(affine_unchecked(g, "affine"))
}

/// Same as [`affine`] without validating `g`; lets tests feed broken data.
pub fn affine_unchecked(g: &LieData, name: &str) -> FormulaSpec {
    let mut s = FormulaSpec::new(name);
    let ids: Vec<BasisId> = g.labels.iter().map(|l| s.add_basis(l.clone(), Parity::Even, Some(int(1)))).collect();
    let c = s.add_basis("c", Parity::Even, Some(int(0)));
    for (i, &x) in ids.iter().enumerate() {
        for (j, &y) in ids.iter().enumerate() {
            let br = Element::from_terms(g.product[i][j].iter().enumerate().map(|(k, v)| (0, ids[k], v.clone())));
            s.set_product(x, 0, y, br);
            s.set_product(x, 1, y, Element::monomial(0, c, g.form[i][j].clone()));
        }
    }
    s.central = Some(c);
    s
}

pub fn affine_sl2() -> FormulaSpec {
    let mut s = affine(&sl2_data()).expect("sl2 data is a valid Lie algebra");
    s.name = "affine-sl2".into();
    s
}

pub fn heisenberg() -> FormulaSpec {
    let mut s = affine(&heisenberg_data()).expect("heisenberg data is valid");
    s.name = "heisenberg".into();
    s
}

/// Loop algebra of a 1-dimensional abelian algebra with zero form: no central term.
pub fn loop_abelian() -> FormulaSpec {
    let mut s = affine(&AlgebraData::zero(&["x"])).expect("zero algebra is valid");
    s.name = "loop-abelian".into();
    s
}

/// `Y(ω,z)ω = Dω/z + 2ω/z² + (1/2)c/z⁴`.
pub fn virasoro() -> FormulaSpec {
    let mut s = FormulaSpec::new("virasoro");
    let w = s.add_basis("ω", Parity::Even, Some(int(2)));
    let c = s.add_basis("c", Parity::Even, Some(int(0)));
    s.set_product(w, 0, w, Element::monomial(1, w, int(1)));
    s.set_product(w, 1, w, Element::monomial(0, w, int(2)));
    s.set_product(w, 3, w, Element::monomial(0, c, ratio(1, 2)));
    s.central = Some(c);
    s.conformal = Some((w, c));
    s
}

/// Neveu-Schwarz formula with basis `ω` (even, 2), `τ` (odd, 3/2), `c` (even, 0).
pub fn neveu_schwarz() -> FormulaSpec {
    let mut s = FormulaSpec::new("neveu-schwarz");
    let w = s.add_basis("ω", Parity::Even, Some(int(2)));
    let t = s.add_basis("τ", Parity::Odd, Some(ratio(3, 2)));
    let c = s.add_basis("c", Parity::Even, Some(int(0)));
    s.set_product(w, 0, w, Element::monomial(1, w, int(1)));
    s.set_product(w, 1, w, Element::monomial(0, w, int(2)));
    s.set_product(w, 3, w, Element::monomial(0, c, ratio(1, 2)));
    s.set_product(t, 0, t, Element::monomial(0, w, int(2)));
    s.set_product(t, 2, t, Element::monomial(0, c, ratio(2, 3)));
    s.set_product(w, 0, t, Element::monomial(1, t, int(1)));
    s.set_product(w, 1, t, Element::monomial(0, t, ratio(3, 2)));
    s.set_product(t, 0, w, Element::monomial(1, t, ratio(1, 2)));
    s.set_product(t, 1, w, Element::monomial(0, t, ratio(3, 2)));
    s.central = Some(c);
    s.conformal = Some((w, c));
    s
}

fn quadratic_formula(b: &AlgebraData, name: &str) -> (FormulaSpec, Vec<BasisId>, BasisId) {
    let mut s = FormulaSpec::new(name);
    let ids: Vec<BasisId> = b.labels.iter().map(|l| s.add_basis(l.clone(), Parity::Even, Some(int(2)))).collect();
    let c = s.add_basis("c", Parity::Even, Some(int(0)));
    for (i, &u) in ids.iter().enumerate() {
        for (j, &v) in ids.iter().enumerate() {
            let uv = &b.product[i][j];
            let vu = &b.product[j][i];
            s.set_product(u, 0, v, Element::from_terms(uv.iter().enumerate().map(|(k, x)| (1, ids[k], x.clone()))));
            s.set_product(
                u,
                1,
                v,
                Element::from_terms(uv.iter().zip(vu).enumerate().map(|(k, (x, y))| (0, ids[k], x + y))),
            );
            s.set_product(u, 3, v, Element::monomial(0, c, &b.form[i][j] * ratio(1, 2)));
        }
    }
    s.central = Some(c);
    (s, ids, c)
}

/// `Y(u,z)v = D(u·v)/z + (u·v + v·u)/z² + (1/2)<u,v>c/z⁴` over an algebra `B`
/// with a symmetric form. Whether this is a vertex Lie algebra depends on the
/// right Novikov identities; see [`crate::check::novikov_check`].
pub fn novikov(b: &AlgebraData) -> Result<FormulaSpec> {
    b.check_shape()?;
    if !b.form_is_symmetric() {
        return Err(Error::FormNotSymmetric);
    }
    Ok(quadratic_formula(b, "novikov").0)
}

/// Commutative associative `B` with identity `identity` and `<ω,ω> = 1`: the
/// identity is a conformal vector.
pub fn comm_assoc(b: &AlgebraData, identity: usize) -> Result<FormulaSpec> {
    b.check_shape()?;
    if !b.form_is_symmetric() {
        return Err(Error::FormNotSymmetric);
    }
    if identity >= b.dim() {
        return Err(Error::InvalidAlgebra("identity index out of range".into()));
    }
    if !b.is_commutative() || !b.is_associative() {
        return Err(Error::InvalidAlgebra("algebra is not commutative and associative".into()));
    }
    let e = b.unit(identity);
    if (0..b.dim()).any(|i| b.mul(&e, &b.unit(i)) != b.unit(i)) {
        return Err(Error::InvalidAlgebra(format!("{} is not an identity", b.labels[identity])));
    }
    if !b.form[identity][identity].is_one() {
        return Err(Error::InvalidAlgebra("<ω,ω> must be 1".into()));
    }
    let (mut s, ids, c) = quadratic_formula(b, "comm-assoc");
    s.conformal = Some((ids[identity], c));
    Ok(s)
}

/// `u·v = λ(u)v`, `<u,v> = λ(u)λ(v)` on a space with basis `labels`.
pub fn lambda_algebra(lambda: &[Scalar]) -> AlgebraData {
    let labels: Vec<String> = (0..lambda.len()).map(|i| if i == 0 { "ω".to_string() } else { format!("u{i}") }).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut b = AlgebraData::zero(&refs);
    for i in 0..lambda.len() {
        for j in 0..lambda.len() {
            b.set_product(i, j, &[(j, lambda[i].clone())]);
            b.set_form(i, j, &lambda[i] * &lambda[j]);
        }
    }
    b
}

/// The flipped product `u·v = λ(v)u` with the same form; not Novikov once dim ≥ 2.
pub fn flipped_lambda_algebra(lambda: &[Scalar]) -> AlgebraData {
    let mut b = lambda_algebra(lambda);
    for i in 0..lambda.len() {
        for j in 0..lambda.len() {
            b.set_product(i, j, &[(i, lambda[j].clone())]);
        }
    }
    b
}

/// One-dimensional algebra `ω·ω = ω`, `<ω,ω> = 1`.
pub fn trivial_unital() -> AlgebraData {
    let mut b = AlgebraData::zero(&["ω"]);
    b.set_product(0, 0, &[(0, int(1))]);
    b.set_form(0, 0, int(1));
    b
}

/// Dual numbers `Q[ε]/(ε²)` with trace form `t(1) = 1`, `t(ε) = t_eps`.
pub fn dual_numbers(t_eps: Scalar) -> AlgebraData {
    let mut b = AlgebraData::zero(&["ω", "ε"]);
    b.set_product(0, 0, &[(0, int(1))]);
    b.set_product(0, 1, &[(1, int(1))]);
    b.set_product(1, 0, &[(1, int(1))]);
    b.set_form(0, 0, int(1));
    b.set_form(0, 1, t_eps.clone());
    b.set_form(1, 0, t_eps);
    b
}

/// `Q × Q` with idempotents `p, q`; identity `ω = p + q` is not a basis
/// vector, so this one feeds Example-3 style tests only.
pub fn split_pair() -> AlgebraData {
    let mut b = AlgebraData::zero(&["p", "q"]);
    b.set_product(0, 0, &[(0, int(1))]);
    b.set_product(1, 1, &[(1, int(1))]);
    b.set_form(0, 0, ratio(1, 2));
    b.set_form(1, 1, ratio(1, 3));
    b
}

/// Names accepted by [`preset_by_name`].
pub const PRESET_NAMES: &[&str] = &[
    "virasoro",
    "neveu-schwarz",
    "affine-sl2",
    "heisenberg",
    "loop-abelian",
    "novikov-lambda",
    "novikov-flipped",
    "comm-assoc-trivial",
    "comm-assoc-dual",
];

fn param_scalar(params: &BTreeMap<String, String>, key: &str, default: Scalar) -> Result<Scalar> {
    params.get(key).map(|s| parse_scalar(s)).transpose().map(|v| v.unwrap_or(default))
}

fn param_dim(params: &BTreeMap<String, String>) -> Result<usize> {
    match params.get("dim") {
        None => Ok(2),
        Some(s) => s
            .parse::<usize>()
            .ok()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Parse(format!("dim must be a positive integer, got {s:?}"))),
    }
}

/// Builds a preset from its CLI name. `novikov-*` take `dim` (default 2);
/// `comm-assoc-dual` takes `t` (default 1), the trace of `ε`.
pub fn preset_by_name(name: &str, params: &BTreeMap<String, String>) -> Result<FormulaSpec> {
    let mut spec = match name {
        "virasoro" => virasoro(),
        "neveu-schwarz" | "ns" => neveu_schwarz(),
        "affine-sl2" | "sl2" => affine_sl2(),
        "heisenberg" => heisenberg(),
        "loop-abelian" => loop_abelian(),
        "novikov-lambda" | "novikov-flipped" => {
            let dim = param_dim(params)?;
            // λ(ω) = 1 on the first basis vector, 0 elsewhere unless overridden
            let lambda: Vec<Scalar> = (0..dim)
                .map(|i| param_scalar(params, &format!("l{i}"), if i == 0 { int(1) } else { int(0) }))
                .collect::<Result<_>>()?;
            let b = if name == "novikov-lambda" { lambda_algebra(&lambda) } else { flipped_lambda_algebra(&lambda) };
            novikov(&b)?
        }
        "comm-assoc-trivial" => comm_assoc(&trivial_unital(), 0)?,
        "comm-assoc-dual" => comm_assoc(&dual_numbers(param_scalar(params, "t", int(1))?), 0)?,
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    spec.name = name.to_string();
    Ok(spec)
}
