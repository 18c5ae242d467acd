use proptest::prelude::*;
use vertexlie::formula::*;
use vertexlie::presets::*;
use vertexlie::scalar::{int, ratio};
use vertexlie::{Element, FormulaSpec, Parity, Scalar};

fn presets() -> Vec<FormulaSpec> {
    vec![virasoro(), neveu_schwarz(), affine_sl2(), novikov(&lambda_algebra(&[int(1), int(2)])).unwrap()]
}

/// Random element of fixed parity: terms only on basis vectors of that parity.
fn arb_element(spec: &FormulaSpec, parity: Parity) -> impl Strategy<Value = Element> {
    let ids: Vec<BasisId> = (0..spec.dim()).filter(|&b| spec.parity(b) == parity).collect();
    prop::collection::vec((0u32..3, prop::sample::select(ids), -4i64..=4, 1i64..=3), 1..4)
        .prop_map(|ts| Element::from_terms(ts.into_iter().map(|(k, b, p, q)| (k, b, ratio(p, q)))))
}

fn arb_case() -> impl Strategy<Value = (usize, Element, Element, u32)> {
    (0usize..4, any::<bool>(), any::<bool>()).prop_flat_map(|(i, pa, pb)| {
        let s = presets().swap_remove(i);
        let pa = if pa && i == 1 { Parity::Odd } else { Parity::Even };
        let pb = if pb && i == 1 { Parity::Odd } else { Parity::Even };
        (Just(i), arb_element(&s, pa), arb_element(&s, pb), 0u32..8)
    })
}

proptest! {
    #[test]
    fn translation_in_first_slot((i, a, b, n) in arb_case()) {
        let s = &presets()[i];
        let lhs = extend_product(s, &apply_d(&a), n, &b);
        let rhs = if n == 0 { Element::zero() } else { extend_product(s, &a, n - 1, &b).scale(&int(-(n as i64))) };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_is_a_derivation((i, a, b, n) in arb_case()) {
        let s = &presets()[i];
        let lhs = apply_d(&extend_product(s, &a, n, &b));
        let rhs = &extend_product(s, &apply_d(&a), n, &b) + &extend_product(s, &a, n, &apply_d(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_truncate((i, a, b, _n) in arb_case()) {
        let s = &presets()[i];
        let bound = principal_support_bound(s, &a, &b);
        for n in bound..bound + 4 {
            prop_assert!(extend_product(s, &a, n, &b).is_zero());
        }
        let y = y_principal(s, &a, &b);
        for n in 0..bound {
            prop_assert_eq!(y.get(n), extend_product(s, &a, n, &b));
        }
    }

    #[test]
    fn parity_is_additive((i, a, b, n) in arb_case()) {
        let s = &presets()[i];
        let p = extend_product(s, &a, n, &b);
        if !p.is_zero() {
            prop_assert_eq!(p.parity(s), Some(a.parity(s).unwrap() + b.parity(s).unwrap()));
        }
    }

    #[test]
    fn weight_drops_by_n_plus_one(n in 0u32..5, k in 0u32..3, l in 0u32..3) {
        let s = virasoro();
        let w = Element::monomial(k, 0, Scalar::from_integer(1.into()));
        let v = Element::monomial(l, 0, Scalar::from_integer(1.into()));
        let p = extend_product(&s, &w, n, &v);
        if let Some(wt) = weight_of(&s, &p).unwrap() {
            prop_assert_eq!(wt, int(4 + k as i64 + l as i64 - n as i64 - 1));
        }
    }
}
