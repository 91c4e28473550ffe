use std::path::PathBuf;

use natded::glivenko::{embed, glivenko, inverse_glivenko, Embedding};
use natded::kernel::{check, check_in, Derivation, LabelSource, RuleId, SystemId};
use natded::syntax::parse_derivation;

fn theorems() -> Vec<(String, Derivation)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/theorems");
    let mut out: Vec<(String, Derivation)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "nd"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), parse_derivation(&std::fs::read_to_string(&p).unwrap()).unwrap()))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn has_imp_or_forall_rule(d: &Derivation) -> bool {
    [RuleId::ImpI, RuleId::ImpE, RuleId::ForallI, RuleId::ForallE].iter().any(|&r| d.uses(r))
}

#[test]
fn every_theorem_embeds_and_round_trips() {
    for (name, d) in theorems() {
        let j = check_in(&d, &SystemId::nk()).unwrap_or_else(|e| panic!("{name}: {e}"));
        for e in [Embedding::Minimal, Embedding::Intuitionistic] {
            let mut labels = LabelSource::above(&d);
            let out = glivenko(&d, e, &mut labels).unwrap_or_else(|err| panic!("{name} {e:?}: {err}"));
            let dn = check_in(&out.double_negation, &e.system()).unwrap();
            assert_eq!(dn.conclusion, natded::kernel::Formula::neg(natded::kernel::Formula::neg(embed(&j.conclusion, e))), "{name}");
            let gamma: Vec<_> = j.assumptions.iter().map(|g| embed(g, e)).collect();
            assert!(dn.assumptions_within(&gamma), "{name}");
            let r = check_in(&out.refutation, &e.system()).unwrap();
            assert!(r.conclusion.is_bottom());
            if e == Embedding::Minimal {
                for part in [&out.double_negation, &out.refutation] {
                    assert!(!has_imp_or_forall_rule(part), "{name}");
                    let mut clean = true;
                    part.walk(&mut |_, n| clean &= !n.conclusion().contains_imp() && !n.conclusion().contains_forall());
                    assert!(clean, "{name}");
                }
            }
            let mut labels = LabelSource::above(&out.double_negation);
            let back = inverse_glivenko(&out.double_negation, &j.conclusion, &j.assumptions, e, &mut labels)
                .unwrap_or_else(|err| panic!("{name} {e:?} inverse: {err}"));
            let jb = check(&back).unwrap_or_else(|err| panic!("{name} {e:?} inverse check: {err}"));
            assert_eq!(jb.conclusion, j.conclusion, "{name}");
            assert!(jb.assumptions_within(&j.assumptions), "{name}");
        }
    }
}
