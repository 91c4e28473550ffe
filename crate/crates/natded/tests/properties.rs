mod common;

use proptest::prelude::*;

use natded::glivenko::{embed, translate, Embedding, TranslationMode};
use natded::kernel::{check, efq_count, eq_up_to_labels, Derivation, Formula, LabelSource, Position, RuleId, SystemId, Term};
use natded::oracle::{classical_entails, gen_derivation, GeneratorProfile};
use natded::rewrite::{find_redex, reduce_at, CaseTag, RewriteError};
use natded::strategy::{verify_postponement, Target};
use natded::syntax::{parse_derivation, parse_formula, formula_sexp, render_text};

use common::postponement_profile;

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        Just(Term::constant("c")),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("g", vec![a, b])),
        ]
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::atom("P")),
        Just(Formula::atom("Q")),
        Just(Formula::Bottom),
        Just(Formula::Top),
        term().prop_map(|t| Formula::pred("R", vec![t])),
        (term(), term()).prop_map(|(a, b)| Formula::pred("S", vec![a, b])),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let var = prop::sample::select(vec!["x", "y", "z"]);
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (var.clone(), inner.clone()).prop_map(|(x, a)| Formula::forall(x, a)),
            (var, inner).prop_map(|(x, a)| Formula::exists(x, a)),
        ]
    })
}

fn non_root_raa(d: &Derivation) -> Vec<Position> {
    let mut out = Vec::new();
    d.walk(&mut |pos, n| {
        if n.is_raa() && !pos.is_root() {
            out.push(pos.clone());
        }
    });
    out
}

fn generated(target: Target, seed: u64) -> Derivation {
    gen_derivation(&postponement_profile(target, seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn any_single_step_preserves_the_judgment(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let d = generated(Target::J, seed);
        let candidates = non_root_raa(&d);
        prop_assume!(!candidates.is_empty());
        let focus = pick.get(&candidates);
        let redex = match find_redex(&d, focus) {
            Ok(r) => r,
            Err(RewriteError::ForallIntroBlock(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let before = check(&d).unwrap();
        let next = reduce_at(d.clone(), &redex, &mut LabelSource::above(&d)).unwrap();
        let after = check(&next).unwrap();
        prop_assert_eq!(&after.conclusion, &before.conclusion);
        prop_assert!(after.assumptions_within(&before.assumptions));
        // Steps copy subderivations, so only efq-free inputs say anything about new instances.
        if redex.case != CaseTag::ImpIntro && efq_count(&d) == 0 {
            prop_assert_eq!(efq_count(&next), 0, "{} created an efq", redex.case);
        }
        prop_assert!(!next.uses(RuleId::ForallI) || d.uses(RuleId::ForallI));
    }

    #[test]
    fn postponement_decreases_the_tracked_size(seed in any::<u64>(), m in any::<bool>()) {
        let target = if m { Target::M } else { Target::J };
        let d = generated(target, seed);
        let trace = verify_postponement(&d, target).map_err(TestCaseError::fail)?;
        let initial = match target {
            Target::J => natded::kernel::raa_report(&d).size_raa_plus,
            Target::M => natded::kernel::raa_report(&d).size_raa,
        };
        prop_assert!(trace.steps.len() <= initial);
    }

    #[test]
    fn generated_conclusions_are_sound(seed in any::<u64>(), density in 0.0f64..1.0) {
        let profile = GeneratorProfile::new(5, &["P", "Q", "R"], SystemId::nk(), density, seed);
        let d = gen_derivation(&profile).unwrap();
        let j = check(&d).unwrap();
        prop_assert!(classical_entails(&j.assumptions, &j.conclusion).unwrap());
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let mut profile = GeneratorProfile::new(5, &["P", "Q"], SystemId::nk(), 0.4, seed);
        profile.quantifiers = true;
        let d = gen_derivation(&profile).unwrap();
        let back = parse_derivation(&render_text(&d)).unwrap();
        prop_assert!(eq_up_to_labels(&d, &back));
    }

    #[test]
    fn formula_text_round_trip(a in formula()) {
        prop_assert_eq!(parse_formula(&formula_sexp(&a)).unwrap(), a);
    }

    #[test]
    fn alpha_equivalence_is_reflexive_and_survives_renaming(a in formula(), fresh in "[uvw]") {
        prop_assert!(a.alpha_eq(&a));
        let q = Formula::forall("x", a.clone());
        prop_assume!(!a.has_free(&fresh));
        let renamed = Formula::forall(fresh.clone(), a.subst("x", &Term::var(fresh.clone())));
        prop_assert!(q.alpha_eq(&renamed));
    }

    #[test]
    fn substitution_of_an_absent_variable_is_the_identity(a in formula(), t in term()) {
        prop_assume!(!a.has_free("w"));
        prop_assert_eq!(a.subst("w", &t), a);
    }

    #[test]
    fn substitution_avoids_capture(a in formula(), t in term()) {
        let b = a.subst("x", &t);
        for v in t.free_vars() {
            if a.has_free("x") {
                prop_assert!(b.has_free(&v));
            }
        }
    }

    #[test]
    fn translation_commutes_with_substitution(a in formula(), t in term(), j in any::<bool>()) {
        let e = if j { Embedding::Intuitionistic } else { Embedding::Minimal };
        let lhs = embed(&a.subst("x", &t), e);
        let rhs = embed(&a, e).subst("x", &t);
        prop_assert!(lhs.alpha_eq(&rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn translation_preserves_free_variables(a in formula(), j in any::<bool>()) {
        let e = if j { Embedding::Intuitionistic } else { Embedding::Minimal };
        prop_assert_eq!(embed(&a, e).free_vars(), a.free_vars());
    }

    #[test]
    fn translation_is_the_identity_on_its_fragment(a in formula()) {
        let m = translate(&a, TranslationMode::Minimal).unwrap();
        prop_assert!(!m.contains_imp() && !m.contains_forall());
        if Embedding::Minimal.preserves(&a) {
            prop_assert_eq!(&m, &a);
        }
        let j = translate(&a, TranslationMode::Intuitionistic).unwrap();
        prop_assert!(!j.contains_forall());
        if Embedding::Intuitionistic.preserves(&a) {
            prop_assert_eq!(&j, &a);
        }
    }
}
