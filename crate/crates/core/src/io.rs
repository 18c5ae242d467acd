//! Formula files: a TOML document with `[metadata]`, `[[basis]]`,
//! `[[constants]]` and an optional `[conformal]` table.
//!
//! ```toml
//! [metadata]
//! name = "virasoro"
//! central = "c"
//!
//! [[basis]]
//! name = "ω"
//! parity = "even"
//! weight = "2"
//!
//! [[constants]]
//! u = "ω"
//! n = 0
//! v = "ω"
//! terms = [[1, "ω", "1"]]
//! ```
//!
//! Each term `[k, target, coefficient]` contributes `coefficient · D^k target`
//! to `u_n v`. Rationals are integers or `"num/den"` strings.

use std::collections::BTreeMap;
use std::ops::Range;
use std::path::Path;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::{Error, Result};
use crate::formula::{validate_spec, BasisId, Element, FormulaSpec, Parity};
use crate::scalar::{format_scalar, parse_scalar, Scalar};

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
enum Rational {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    metadata: Option<RawMetadata>,
    #[serde(default)]
    basis: Vec<RawBasis>,
    #[serde(default)]
    constants: Vec<Spanned<RawConstant>>,
    conformal: Option<RawConformal>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetadata {
    name: Option<String>,
    central: Option<Spanned<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBasis {
    name: Spanned<String>,
    parity: Option<Spanned<String>>,
    weight: Option<Spanned<Rational>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstant {
    u: Spanned<String>,
    n: u32,
    v: Spanned<String>,
    terms: Vec<Spanned<(u32, String, Rational)>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConformal {
    omega: Spanned<String>,
    c: Spanned<String>,
}

#[derive(Debug, Serialize)]
struct OutFile {
    metadata: OutMetadata,
    basis: Vec<OutBasis>,
    constants: Vec<OutConstant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conformal: Option<OutConformal>,
}

#[derive(Debug, Serialize)]
struct OutMetadata {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    central: Option<String>,
}

#[derive(Debug, Serialize)]
struct OutBasis {
    name: String,
    parity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<String>,
}

#[derive(Debug, Serialize)]
struct OutConstant {
    u: String,
    n: u32,
    v: String,
    terms: Vec<(u32, String, String)>,
}

#[derive(Debug, Serialize)]
struct OutConformal {
    omega: String,
    c: String,
}

struct Located<'a> {
    origin: &'a str,
    text: &'a str,
}

impl Located<'_> {
    fn line_col(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        (line, col)
    }

    fn err(&self, span: Range<usize>, msg: impl std::fmt::Display) -> Error {
        let (line, col) = self.line_col(span.start);
        Error::Parse(format!("{}:{line}:{col}: {msg}", self.origin))
    }
}

fn rational(loc: &Located, span: Range<usize>, r: &Rational) -> Result<Scalar> {
    match r {
        Rational::Int(i) => Ok(Scalar::from_integer((*i).into())),
        Rational::Text(s) => parse_scalar(s).map_err(|e| loc.err(span, e)),
    }
}

/// Parses a formula file; `origin` names it in diagnostics.
pub fn parse_formula(text: &str, origin: &str) -> Result<FormulaSpec> {
    let loc = Located { origin, text };
    let raw: RawFile = toml::from_str(text).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        loc.err(span, e.message())
    })?;

    let name = raw.metadata.as_ref().and_then(|m| m.name.clone()).unwrap_or_else(|| "formula".into());
    let mut spec = FormulaSpec::new(name);
    let mut ids: BTreeMap<String, BasisId> = BTreeMap::new();
    for b in &raw.basis {
        let label = b.name.get_ref().trim().to_string();
        if label.is_empty() {
            return Err(loc.err(b.name.span(), "empty basis name"));
        }
        if ids.contains_key(&label) {
            return Err(loc.err(b.name.span(), format!("duplicate basis vector {label:?}")));
        }
        let parity = match b.parity.as_ref().map(|p| (p.get_ref().as_str(), p.span())) {
            None | Some(("even", _)) => Parity::Even,
            Some(("odd", _)) => Parity::Odd,
            Some((other, span)) => return Err(loc.err(span, format!("parity must be \"even\" or \"odd\", got {other:?}"))),
        };
        let weight = b.weight.as_ref().map(|w| rational(&loc, w.span(), w.get_ref())).transpose()?;
        ids.insert(label.clone(), spec.add_basis(label, parity, weight));
    }
    let lookup = |s: &Spanned<String>| -> Result<BasisId> {
        ids.get(s.get_ref().trim())
            .copied()
            .ok_or_else(|| loc.err(s.span(), format!("unknown basis vector {:?}", s.get_ref())))
    };

    let mut seen: BTreeMap<(BasisId, u32, BasisId), Range<usize>> = BTreeMap::new();
    for entry in &raw.constants {
        let c = entry.get_ref();
        let (u, v) = (lookup(&c.u)?, lookup(&c.v)?);
        if seen.insert((u, c.n, v), entry.span()).is_some() {
            return Err(loc.err(entry.span(), format!("duplicate constants entry ({}, {}, {})", c.u.get_ref(), c.n, c.v.get_ref())));
        }
        let mut value = Element::zero();
        for t in &c.terms {
            let (k, target, coeff) = t.get_ref();
            let id = ids
                .get(target.trim())
                .copied()
                .ok_or_else(|| loc.err(t.span(), format!("unknown basis vector {target:?}")))?;
            value.add_term(*k, id, rational(&loc, t.span(), coeff)?);
        }
        spec.set_product(u, c.n, v, value);
    }

    if let Some(m) = &raw.metadata {
        if let Some(c) = &m.central {
            spec.central = Some(lookup(c)?);
        }
    }
    if let Some(conf) = &raw.conformal {
        let (w, c) = (lookup(&conf.omega)?, lookup(&conf.c)?);
        if spec.central.is_some_and(|z| z != c) {
            return Err(loc.err(conf.c.span(), "conformal c differs from metadata.central"));
        }
        spec.central = Some(c);
        spec.conformal = Some((w, c));
    }

    if let Some(v) = validate_spec(&spec).into_iter().next() {
        let span = v
            .entry
            .and_then(|(u, n, w, _)| seen.get(&(u, n, w)).cloned())
            .unwrap_or(0..0);
        return Err(loc.err(span, v.message));
    }
    Ok(spec)
}

pub fn load_formula(path: &Path) -> Result<FormulaSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_formula(&text, &path.display().to_string())
}

/// Deterministic TOML rendering: basis in id order, constants sorted by
/// `(u, n, v)`, terms by `(k, target)`.
pub fn export_formula(spec: &FormulaSpec) -> String {
    let out = OutFile {
        metadata: OutMetadata { name: spec.name.clone(), central: spec.central.map(|c| spec.label(c).to_string()) },
        basis: spec
            .basis
            .iter()
            .map(|b| OutBasis {
                name: b.label.clone(),
                parity: if b.parity.is_odd() { "odd" } else { "even" },
                weight: b.weight.as_ref().map(format_scalar),
            })
            .collect(),
        constants: spec
            .constants()
            .map(|((u, n, v), e)| OutConstant {
                u: spec.label(u).to_string(),
                n,
                v: spec.label(v).to_string(),
                terms: e.terms().map(|(k, b, c)| (k, spec.label(b).to_string(), format_scalar(c))).collect(),
            })
            .collect(),
        conformal: spec.conformal.map(|(w, c)| OutConformal { omega: spec.label(w).to_string(), c: spec.label(c).to_string() }),
    };
    toml::to_string(&out).expect("formula files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::*;

    #[test]
    fn presets_round_trip() {
        for s in [virasoro(), neveu_schwarz(), affine_sl2(), heisenberg(), loop_abelian()] {
            let text = export_formula(&s);
            let back = parse_formula(&text, "mem").unwrap();
            assert_eq!(back, s, "{text}");
            assert_eq!(export_formula(&back), text);
        }
    }

    #[test]
    fn hand_written_file() {
        let text = r#"
[metadata]
name = "vir"

[[basis]]
name = "w"
weight = 2

[[basis]]
name = "c"
weight = "0"

[[constants]]
u = "w"
n = 0
v = "w"
terms = [[1, "w", 1]]

[[constants]]
u = "w"
n = 1
v = "w"
terms = [[0, "w", "2"]]

[[constants]]
u = "w"
n = 3
v = "w"
terms = [[0, "c", "1/2"]]

[conformal]
omega = "w"
c = "c"
"#;
        let s = parse_formula(text, "vir.toml").unwrap();
        let mut v = virasoro();
        v.name = "vir".into();
        v.basis[0].label = "w".into();
        assert_eq!(s, v);
    }

    #[test]
    fn diagnostics_are_located() {
        let text = "[[basis]]\nname = \"a\"\n\n[[constants]]\nu = \"a\"\nn = 0\nv = \"b\"\nterms = []\n";
        let Error::Parse(msg) = parse_formula(text, "f.toml").unwrap_err() else { panic!() };
        assert!(msg.starts_with("f.toml:7:"), "{msg}");
        assert!(msg.contains("unknown basis vector \"b\""));

        let Error::Parse(msg) = parse_formula("[[basis]]\nname = 3\n", "g.toml").unwrap_err() else { panic!() };
        assert!(msg.starts_with("g.toml:2:"), "{msg}");

        let bad_weight = "[[basis]]\nname = \"a\"\nweight = \"0.5\"\n";
        let Error::Parse(msg) = parse_formula(bad_weight, "h.toml").unwrap_err() else { panic!() };
        assert!(msg.starts_with("h.toml:3:"), "{msg}");
    }

    #[test]
    fn invalid_spec_is_rejected_at_entry() {
        // a_0 a = b with a even and b odd breaks parity
        let text = "[[basis]]\nname = \"a\"\n[[basis]]\nname = \"b\"\nparity = \"odd\"\n\n[[constants]]\nu = \"a\"\nn = 0\nv = \"a\"\nterms = [[0, \"b\", 1]]\n";
        let Error::Parse(msg) = parse_formula(text, "p.toml").unwrap_err() else { panic!() };
        assert!(msg.starts_with("p.toml:7:"), "{msg}");
    }

    #[test]
    fn duplicate_entries_rejected() {
        let text = "[[basis]]\nname = \"a\"\n[[constants]]\nu = \"a\"\nn = 0\nv = \"a\"\nterms = []\n[[constants]]\nu = \"a\"\nn = 0\nv = \"a\"\nterms = []\n";
        assert!(parse_formula(text, "d.toml").is_err());
    }
}
