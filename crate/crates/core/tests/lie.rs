use num::Zero;
use proptest::prelude::*;
use vertexlie::formula::{apply_d, Element};
use vertexlie::lie::*;
use vertexlie::presets::*;
use vertexlie::scalar::{gen_binomial, int, ratio};
use vertexlie::{FormulaSpec, Scalar};

fn gen(b: usize, n: i64) -> LieGenerator {
    LieGenerator::new(b, n)
}

#[test]
fn virasoro_window_is_clean() {
    assert!(jacobi_window_verify(&virasoro(), 6).is_empty());
}

#[test]
fn neveu_schwarz_window_is_clean() {
    assert!(jacobi_window_verify(&neveu_schwarz(), 4).is_empty());
}

#[test]
fn affine_window_is_clean() {
    assert!(jacobi_window_verify(&affine_sl2(), 3).is_empty());
}

#[test]
fn virasoro_closed_form() {
    let s = virasoro();
    let (w, c) = (0, 1);
    for n in -10i64..=10 {
        for m in -10i64..=10 {
            let got = bracket_generators(&s, gen(w, n + 1), gen(w, m + 1));
            let mut want = LieElement::from_terms([(w, n + m + 1, int(n - m))]);
            if n + m == 0 {
                want.add_term(gen(c, -1), gen_binomial(n + 1, 3) * ratio(1, 2));
            }
            assert_eq!(got, want, "n={n} m={m}");
        }
    }
}

/// `[u(n), v(m)] = (n+1)(v·u)(n+m) - (m+1)(u·v)(n+m) + (1/2)C(n+1,3)δ <u,v> c`
/// with `u(n) = u_{n+1}`.
fn check_quadratic_closed_form(b: &AlgebraData, spec: &FormulaSpec, commutative: bool) {
    let d = b.dim();
    let c = d;
    let prod = |i: usize, j: usize, n: i64, coeff: i64, out: &mut LieElement| {
        for (k, x) in b.mul(&b.unit(i), &b.unit(j)).iter().enumerate() {
            out.add_term(gen(k, n + 1), x * int(coeff));
        }
    };
    for i in 0..d {
        for j in 0..d {
            for n in -6i64..=6 {
                for m in -6i64..=6 {
                    let got = bracket_generators(spec, gen(i, n + 1), gen(j, m + 1));
                    let mut want = LieElement::zero();
                    if commutative {
                        prod(i, j, n + m, n - m, &mut want);
                    } else {
                        prod(j, i, n + m, n + 1, &mut want);
                        prod(i, j, n + m, -(m + 1), &mut want);
                    }
                    if n + m == 0 {
                        want.add_term(gen(c, -1), gen_binomial(n + 1, 3) * ratio(1, 2) * &b.form[i][j]);
                    }
                    assert_eq!(got, want, "i={i} j={j} n={n} m={m}");
                }
            }
        }
    }
}

#[test]
fn novikov_closed_form() {
    let b = lambda_algebra(&[int(1), int(2), ratio(-1, 3)]);
    check_quadratic_closed_form(&b, &novikov(&b).unwrap(), false);
    let b = split_pair();
    check_quadratic_closed_form(&b, &novikov(&b).unwrap(), false);
}

#[test]
fn comm_assoc_closed_form() {
    let b = dual_numbers(ratio(2, 5));
    check_quadratic_closed_form(&b, &comm_assoc(&b, 0).unwrap(), true);
}

#[test]
fn transported_bracket_is_consistent() {
    for s in [virasoro(), neveu_schwarz(), affine_sl2(), heisenberg()] {
        for u in 0..s.dim() {
            for v in 0..s.dim() {
                let ue = Element::basis(u);
                let ve = Element::basis(v);
                let lhs = reduce_generator(&s, &bracket_on_u(&s, &ue, &ve), -1);
                let (neg, _) = triangular_split(&bracket_generators(&s, gen(u, -1), gen(v, -1)));
                assert_eq!(lhs, neg, "{} ({u},{v})", s.name);
            }
        }
    }
}

fn arb_element(dim: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((0u32..4, 0..dim, -5i64..=5, 1i64..=3), 0..5)
        .prop_map(|ts| Element::from_terms(ts.into_iter().map(|(k, b, p, q)| (k, b, ratio(p, q)))))
}

proptest! {
    #[test]
    fn reduce_respects_derivation(a in arb_element(2), n in -8i64..=8) {
        let s = virasoro();
        let mut lhs = reduce_generator(&s, &apply_d(&a), n);
        lhs.add_scaled(&reduce_generator(&s, &a, n - 1), &Scalar::from_integer(n.into()));
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn bracket_is_skew(u in 0usize..3, v in 0usize..3, n in -6i64..6, p in -6i64..6) {
        let s = neveu_schwarz();
        let xy = bracket_generators(&s, gen(u, n), gen(v, p));
        let yx = bracket_generators(&s, gen(v, p), gen(u, n));
        let eps = vertexlie::formula::epsilon(s.parity(u), s.parity(v));
        prop_assert_eq!(xy, yx.scale(&-eps));
    }

    #[test]
    fn split_reassembles(ts in prop::collection::vec((0usize..2, -9i64..9, -4i64..4), 0..6)) {
        let x = LieElement::from_terms(ts.into_iter().map(|(b, n, c)| (b, n, int(c))));
        let (neg, pos) = triangular_split(&x);
        prop_assert!(neg.terms().all(|(g, _)| g.n < 0));
        prop_assert!(pos.terms().all(|(g, _)| g.n >= 0));
        prop_assert_eq!(&neg + &pos, x);
        prop_assert!(!neg.terms().any(|(_, c)| c.is_zero()));
    }
}
