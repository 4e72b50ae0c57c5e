//! Cross-module invariants checked on random inputs.

use std::sync::OnceLock;

use proptest::prelude::*;

use crate::completion::{complete, snapshot, CompletionConfig};
use crate::hilbert::{automaton_for, grammar_from_rules, hilbert_series, REDUCIBLE};
use crate::homalg::{
    apply, commutator_algebra, example_one, inverse, yau_twist, FiniteHomAlgebra,
    SigmaDerivationModel, Vector,
};
use crate::linear::LinComb;
use crate::rewrite::RewritingSystem;
use crate::rulefile::RuleFile;
use crate::scalar::Scalar;
use crate::term::{enumerate_plane, Context, Permutation};

fn homass(max_order: usize) -> &'static RewritingSystem {
    static CACHE: OnceLock<Vec<RewritingSystem>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let sys = RewritingSystem::from_rule_file(
            &RuleFile::parse("m a 1 m 2 3 -> m m 1 2 a 3\n").unwrap(),
            None,
        )
        .unwrap();
        (0..=10)
            .map(|n| {
                let config = CompletionConfig {
                    max_order: n.max(1),
                    ..Default::default()
                };
                complete(&sys, &config).unwrap().system
            })
            .collect()
    });
    &all[max_order]
}

/// A plane monomial with `k` a's and `l` m's, chosen by index.
fn plane(k: usize, l: usize, pick: usize) -> Context {
    let all = enumerate_plane(k, l).unwrap();
    all[pick % all.len()].clone()
}

fn perm(n: usize, pick: usize) -> Permutation {
    let all = Permutation::all(n);
    all[pick % all.len()].clone()
}

prop_compose! {
    fn monomial(max_k: usize, max_l: usize)(k in 0..=max_k, l in 0..=max_l, i in any::<usize>(), p in any::<usize>()) -> Context {
        let c = plane(k, l, i);
        c.act(&perm(c.arity(), p)).unwrap()
    }
}

prop_compose! {
    fn plane_monomial(max_k: usize, max_l: usize)(k in 0..=max_k, l in 0..=max_l, i in any::<usize>()) -> Context {
        plane(k, l, i)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_composition_is_associative(
        x in monomial(1, 2), y in monomial(1, 2), z in monomial(1, 2),
        i in any::<usize>(), j in any::<usize>(),
    ) {
        let i = 1 + i % x.arity();
        let j = 1 + j % y.arity();
        let left = x.compose_at(i, &y).unwrap().compose_at(i + j - 1, &z).unwrap();
        let right = x.compose_at(i, &y.compose_at(j, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn full_composition_is_a_chain_of_partial_ones(x in monomial(1, 2), ys in prop::collection::vec(monomial(1, 1), 3)) {
        let ys = &ys[..x.arity().min(3)];
        prop_assume!(ys.len() == x.arity());
        let full = x.compose(ys).unwrap();
        let mut chained = x.clone();
        for (slot, y) in ys.iter().enumerate().rev() {
            chained = chained.compose_at(slot + 1, y).unwrap();
        }
        prop_assert_eq!(full, chained);
    }

    #[test]
    fn action_composes(x in monomial(2, 3), s in any::<usize>(), t in any::<usize>()) {
        let sigma = perm(x.arity(), s);
        let tau = perm(x.arity(), t);
        prop_assert_eq!(
            x.act(&sigma).unwrap().act(&tau).unwrap(),
            x.act(&sigma.compose(&tau)).unwrap()
        );
        prop_assert_eq!(x.act(&sigma).unwrap().act(&sigma.inverse()).unwrap(), x);
    }

    #[test]
    fn composition_is_equivariant(
        x in plane_monomial(1, 2), ys in prop::collection::vec(monomial(1, 1), 3), s in any::<usize>(),
    ) {
        prop_assume!(ys.len() >= x.arity());
        let ys = &ys[..x.arity()];
        let sigma = perm(x.arity(), s);
        let sizes: Vec<usize> = ys.iter().map(Context::arity).collect();
        let inv = sigma.inverse();
        let permuted: Vec<Context> = (1..=ys.len()).map(|slot| ys[inv.apply(slot) - 1].clone()).collect();
        let left = x.act(&sigma).unwrap().compose(ys).unwrap();
        let right = x.compose(&permuted).unwrap().act(&sigma.block(&sizes)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn planarize_inverts_the_action(x in monomial(2, 3)) {
        let (p, sigma) = x.planarize();
        prop_assert!(p.is_plane());
        prop_assert_eq!(p.act(&sigma).unwrap(), x);
    }

    #[test]
    fn redex_sites_ignore_box_labels(x in plane_monomial(3, 4), s in any::<usize>()) {
        let sys = homass(8);
        let y = x.act(&perm(x.arity(), s)).unwrap();
        let sites = |t: &Context| -> Vec<_> {
            sys.find_redexes(t).into_iter().map(|r| (r.rule, r.position)).collect()
        };
        prop_assert_eq!(sites(&x), sites(&y));
    }

    #[test]
    fn normal_forms_are_equivariant(x in plane_monomial(3, 4), s in any::<usize>()) {
        prop_assume!(x.order() <= 8);
        let sys = homass(8);
        let sigma = perm(x.arity(), s);
        let nf = sys.normal_form(&LinComb::monomial(x.clone()));
        let nf_acted = sys.normal_form(&LinComb::monomial(x.act(&sigma).unwrap()));
        prop_assert_eq!(nf.act(&sigma).unwrap(), nf_acted);
        prop_assert!(sys.is_irreducible(&nf));
    }

    #[test]
    fn automaton_grammar_and_search_agree(x in monomial(4, 5), n in 1usize..=9) {
        let sys = homass(10);
        let sub = snapshot(sys, n, n);
        let aut = automaton_for(&sub).unwrap();
        let g = grammar_from_rules(sub.signature(), sub.rules().iter().map(|r| r.lhs())).unwrap();
        let searched = !sub.find_redexes(&x).is_empty();
        prop_assert_eq!(aut.accepts(&x), searched);
        prop_assert_eq!(g.generates(REDUCIBLE, &x), searched);
    }

    #[test]
    fn more_rules_never_increase_the_series(mask in any::<u16>()) {
        let all = homass(10);
        let mut small = RewritingSystem::new(all.signature().clone(), all.order().clone());
        for (i, r) in all.rules().iter().enumerate() {
            if mask & (1 << i) != 0 {
                small.push(r.clone()).unwrap();
            }
        }
        let big = hilbert_series(all, 7).unwrap().series;
        let less = hilbert_series(&small, 7).unwrap().series;
        for ((i, j, b), (_, _, s)) in big.iter().zip(less.iter()) {
            prop_assert!(b <= s, "a^{} m^{}: {} > {}", i, j, b, s);
        }
    }
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn poly(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(scalar(), n)
}

fn add(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn scale(c: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|a| c * a).collect()
}

/// Truncate to degree `< d` so brackets and the six-term sum stay in range.
fn low(mut v: Vector, d: usize) -> Vector {
    for c in v.iter_mut().skip(d) {
        *c = Scalar::zero();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_bracket_is_bilinear_and_skew(
        a in poly(10), b in poly(10), c in poly(10), l in scalar(), q in scalar(),
    ) {
        prop_assume!(!q.is_zero());
        let m = SigmaDerivationModel::new(10, q);
        let (a, b, c) = (low(a, 5), low(b, 5), low(c, 5));
        let left = m.bracket(&add(&scale(&l, &a), &b), &c).unwrap();
        let right = add(&scale(&l, &m.bracket(&a, &c).unwrap()), &m.bracket(&b, &c).unwrap());
        prop_assert_eq!(left, right);
        let ab = m.bracket(&a, &b).unwrap();
        let ba = m.bracket(&b, &a).unwrap();
        prop_assert!(add(&ab, &ba).iter().all(Scalar::is_zero));
    }

    #[test]
    fn sigma_jacobi_holds_for_polynomials(a in poly(9), b in poly(9), c in poly(9), q in scalar()) {
        prop_assume!(!q.is_zero());
        let m = SigmaDerivationModel::new(9, q);
        let d = m.six_term_jacobi(&low(a, 3), &low(b, 3), &low(c, 3)).unwrap();
        prop_assert!(d.iter().all(Scalar::is_zero));
    }

    #[test]
    fn identities_survive_change_of_basis(
        a in -3i64..=3, b in -3i64..=3, p in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3),
    ) {
        let p: Vec<Vector> = p.into_iter().map(|r| r.into_iter().map(Scalar::from_int).collect()).collect();
        prop_assume!(inverse(&p).is_some());
        let alg = example_one(Scalar::from_int(a), Scalar::from_int(b));
        let moved = alg.change_basis(&p).unwrap();
        prop_assert!(moved.check_hom_associative().is_empty());
        prop_assert_eq!(moved.check_associative().is_empty(), alg.check_associative().is_empty());
        let back = moved.change_basis(&inverse(&p).unwrap()).unwrap();
        prop_assert_eq!(back, alg);
    }

    #[test]
    fn yau_twists_of_truncated_polynomials_are_hom_lie_admissible(
        n in 1usize..=4, y in prop::collection::vec(-3i64..=3, 4),
    ) {
        // K[x]/(x^n) with x -> y, y(0) = 0.
        let e = |i: usize| -> Vector { (0..n).map(|k| Scalar::from_int((k == i) as i64)).collect() };
        let zero: Vector = vec![Scalar::zero(); n];
        let mult = (0..n)
            .map(|i| (0..n).map(|j| if i + j < n { e(i + j) } else { zero.clone() }).collect())
            .collect();
        let a = FiniteHomAlgebra::untwisted(mult).unwrap();
        let mut gen: Vector = y[..n].iter().map(|&c| Scalar::from_int(c)).collect();
        gen[0] = Scalar::zero();
        let mut cols = vec![e(0)];
        for i in 1..n {
            cols.push(if i == 1 { gen.clone() } else { a.mul(&cols[i - 1], &gen) });
        }
        let beta: Vec<Vector> = (0..n).map(|j| (0..n).map(|i| cols[i][j].clone()).collect()).collect();
        prop_assert_eq!(apply(&beta, &e(0)), e(0));
        let t = yau_twist(&a, &beta).unwrap();
        prop_assert!(t.beta_is_weak_morphism());
        prop_assert!(t.algebra.check_hom_associative().is_empty());
        let c = commutator_algebra(&t.algebra);
        prop_assert!(c.algebra().check_hom_jacobi().is_empty());
        prop_assert!(c.algebra().check_skew().is_empty());
    }
}

#[test]
fn completion_is_identical_across_jobs() {
    let sys = homass(1);
    let run = |jobs| {
        let config = CompletionConfig {
            max_order: 12,
            jobs,
            ..Default::default()
        };
        let st = complete(sys, &config).unwrap();
        (
            st.system.show_rules(),
            st.show_log(st.system.signature()),
            st.census(),
        )
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(1));
}

#[test]
fn raising_max_order_keeps_lower_rules() {
    for n in 3..10 {
        let lower = homass(n).show_rules();
        let higher = homass(n + 1);
        let kept: String = higher
            .rules()
            .iter()
            .filter(|r| r.order() <= n)
            .map(|r| format!("{}\n", r.show(higher.signature())))
            .collect();
        assert_eq!(lower, kept, "max order {n}");
    }
}

#[test]
fn inter_reduction_policy_does_not_change_rules() {
    let sys = homass(1);
    let run = |inter_reduce| {
        let config = CompletionConfig {
            max_order: 12,
            inter_reduce,
            ..Default::default()
        };
        complete(sys, &config).unwrap().system.show_rules()
    };
    assert_eq!(run(true), run(false));
}
