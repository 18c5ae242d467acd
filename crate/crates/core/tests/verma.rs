use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use vertexlie::lie::LieGenerator;
use vertexlie::presets::*;
use vertexlie::scalar::int;
use vertexlie::verma::*;
use vertexlie::{FormulaSpec, Parity, Scalar};

fn assert_spotcheck(spec: &FormulaSpec, cutoff: i64) {
    let report = axiom_spotcheck(spec, &int(cutoff)).unwrap();
    for item in &report.items {
        assert!(item.passed(), "{}: {item}: {:?}", spec.name, &item.failures[..item.failures.len().min(3)]);
    }
}

#[test]
fn virasoro_spotcheck() {
    assert_spotcheck(&virasoro(), 6);
}

#[test]
fn heisenberg_spotcheck() {
    assert_spotcheck(&heisenberg(), 6);
}

#[test]
fn abelian_spotcheck() {
    let mut s = FormulaSpec::new("abelian");
    s.add_basis("a", Parity::Even, Some(int(1)));
    s.add_basis("b", Parity::Even, Some(int(2)));
    assert_spotcheck(&s, 4);
}

#[test]
fn neveu_schwarz_spotcheck() {
    assert_spotcheck(&neveu_schwarz(), 4);
}

#[test]
fn affine_spotcheck() {
    assert_spotcheck(&affine_sl2(), 3);
}

fn apply_op(vm: &VermaModule, op: &[(usize, i64, Scalar)], v: &PbwVector) -> PbwVector {
    let mut out = PbwVector::zero();
    for (b, n, c) in op {
        out.add_scaled(&vm.act(LieGenerator::new(*b, *n), v), c);
    }
    out
}

#[test]
fn sl2_relations_on_virasoro() {
    let s = virasoro();
    let vm = VermaModule::new(&s);
    let e = [(0usize, 2i64, int(-1))];
    let h = [(0usize, 1i64, int(-2))];
    let f = [(0usize, 0i64, int(1))];
    let comm = |x: &[(usize, i64, Scalar)], y: &[(usize, i64, Scalar)], v: &PbwVector| {
        &apply_op(&vm, x, &apply_op(&vm, y, v)) - &apply_op(&vm, y, &apply_op(&vm, x, v))
    };
    for m in vm.monomials_up_to(&int(6)).unwrap() {
        let v = PbwVector::monomial(m, int(1));
        assert_eq!(comm(&h, &e, &v), apply_op(&vm, &e, &v).scale(&int(2)));
        assert_eq!(comm(&h, &f, &v), apply_op(&vm, &f, &v).scale(&int(-2)));
        assert_eq!(comm(&e, &f, &v), apply_op(&vm, &h, &v));
    }
}

#[test]
fn omega_zero_and_one() {
    for s in [virasoro(), neveu_schwarz()] {
        let vm = VermaModule::new(&s);
        let w = s.find("ω").unwrap();
        for m in vm.monomials_up_to(&int(5)).unwrap() {
            let wt = monomial_weight(&s, &m).unwrap();
            let v = PbwVector::monomial(m, int(1));
            assert_eq!(vm.act(LieGenerator::new(w, 1), &v), v.scale(&wt));
            assert_eq!(vm.act(LieGenerator::new(w, 0), &v), vm.apply_d(&v));
        }
    }
}

#[test]
fn act_is_weight_additive() {
    let s = neveu_schwarz();
    let vm = VermaModule::new(&s);
    for m in vm.monomials_up_to(&int(4)).unwrap() {
        let v = PbwVector::monomial(m.clone(), int(1));
        let wv = monomial_weight(&s, &m).unwrap();
        for b in 0..s.dim() {
            for n in -3..=3 {
                let out = vm.act(LieGenerator::new(b, n), &v);
                if let Some(w) = out.weight(&s).unwrap() {
                    assert_eq!(w, &wv + s.weight(b).unwrap() - int(n) - int(1));
                }
            }
        }
    }
}

/// Independent oracle: partitions of `n` into parts `≥ min_part`.
fn partitions(n: u32, min_part: u32) -> u128 {
    fn go(n: u32, smallest: u32) -> u128 {
        if n == 0 {
            return 1;
        }
        (smallest..=n).map(|p| go(n - p, p)).sum()
    }
    go(n, min_part)
}

#[test]
fn dims_match_partition_oracles() {
    let vir: Vec<u128> = graded_dimension(&virasoro(), &int(12)).unwrap().into_values().collect();
    assert_eq!(vir, (0..=12).map(|n| partitions(n, 2)).collect::<Vec<_>>());
    let heis: Vec<u128> = graded_dimension(&heisenberg(), &int(10)).unwrap().into_values().collect();
    assert_eq!(heis, (0..=10).map(|n| partitions(n, 1)).collect::<Vec<_>>());
}

#[test]
fn dims_agree_with_act_closure() {
    for (s, cut) in [(virasoro(), 8), (neveu_schwarz(), 5), (affine_sl2(), 3)] {
        let vm = VermaModule::new(&s);
        let cutoff = int(cut);
        let gens = vm.creation_generators(&cutoff).unwrap();
        let mut seen: BTreeSet<PbwMonomial> = BTreeSet::new();
        let mut frontier = vec![vacuum()];
        seen.insert(PbwMonomial::one());
        while let Some(v) = frontier.pop() {
            for &g in &gens {
                let out = vm.act(g, &v);
                for (m, _) in out.terms() {
                    if monomial_weight(&s, m).unwrap() <= cutoff && seen.insert(m.clone()) {
                        frontier.push(PbwVector::monomial(m.clone(), int(1)));
                    }
                }
            }
        }
        let mut counted: BTreeMap<Scalar, u128> = BTreeMap::new();
        for m in &seen {
            *counted.entry(monomial_weight(&s, m).unwrap()).or_insert(0) += 1;
        }
        let dims = graded_dimension(&s, &cutoff).unwrap();
        for (w, d) in &dims {
            assert_eq!(counted.get(w).copied().unwrap_or(0), *d, "{} weight {w}", s.name);
        }
        assert_eq!(counted.values().sum::<u128>(), dims.values().sum::<u128>());
    }
}

#[test]
fn translation_identity() {
    for s in [virasoro(), heisenberg()] {
        let vm = VermaModule::new(&s);
        let cut = int(20);
        let monos = vm.monomials_up_to(&int(4)).unwrap();
        for a in &monos {
            let av = PbwVector::monomial(a.clone(), int(1));
            let da = vm.apply_d(&av);
            for b in &monos {
                let bv = PbwVector::monomial(b.clone(), int(1));
                for n in -4..=4 {
                    let lhs = vm.field_coefficient(&da, n, &bv, &cut).unwrap();
                    let rhs = vm.field_coefficient(&av, n - 1, &bv, &cut).unwrap().scale(&int(-n));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

fn arb_word(dim: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..dim, -4i64..=2), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_ordering_is_confluent(word in arb_word(3), split in 0usize..4) {
        let s = neveu_schwarz();
        let vm = VermaModule::new(&s);
        let gens: Vec<LieGenerator> = word.iter().map(|&(b, n)| LieGenerator::new(b, n)).collect();
        let weight: Scalar = gens.iter().filter(|g| g.n < 0).map(|&g| generator_weight(&s, g).unwrap()).sum();
        prop_assume!(weight <= int(8));
        // (x_1 ⋯ x_k)·1 computed left-to-right vs. grouping a suffix first
        let direct = vm.act_word(&gens, &vacuum());
        let k = split.min(gens.len());
        let inner = vm.act_word(&gens[k..], &vacuum());
        let grouped = vm.act_word(&gens[..k], &inner);
        prop_assert_eq!(&direct, &grouped);
        // fresh module, no shared memo
        let fresh = VermaModule::new(&s).act_word(&gens, &vacuum());
        prop_assert_eq!(direct, fresh);
    }

    #[test]
    fn bracket_acts_as_commutator(a in (0usize..3, -3i64..=3), b in (0usize..3, -3i64..=3), word in arb_word(3)) {
        let s = neveu_schwarz();
        let vm = VermaModule::new(&s);
        let gens: Vec<LieGenerator> = word.iter().map(|&(b, n)| LieGenerator::new(b, n)).collect();
        let v = vm.act_word(&gens, &vacuum());
        let (x, y) = (LieGenerator::new(a.0, a.1), LieGenerator::new(b.0, b.1));
        let eps = vertexlie::formula::epsilon(s.parity(x.b), s.parity(y.b));
        let lhs = &vm.act(x, &vm.act(y, &v)) - &vm.act(y, &vm.act(x, &v)).scale(&eps);
        let rhs = vm.act_element(&vm.bracket(x, y), &v);
        prop_assert_eq!(lhs, rhs);
    }
}
