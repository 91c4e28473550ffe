mod common;

use natded::kernel::{raa_report, standard_form};
use natded::oracle::gen_derivation;
use natded::strategy::{verify_postponement, Target};

use common::postponement_profile;

fn run(target: Target) {
    let mut steps = 0;
    let mut nontrivial = 0;
    for seed in 0..1000 {
        let d = gen_derivation(&postponement_profile(target, seed)).unwrap();
        let trace = verify_postponement(&d, target).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        steps += trace.steps.len();
        if !trace.steps.is_empty() {
            nontrivial += 1;
        }
    }
    eprintln!("{target:?}: {nontrivial} of 1000 needed reduction, {steps} steps in total");
    assert!(nontrivial > 100);
}

#[test]
fn postpone_j_on_generated_derivations() {
    run(Target::J);
}

#[test]
fn postpone_m_on_generated_derivations() {
    run(Target::M);
}

#[test]
fn standard_inputs_are_untouched() {
    for seed in 0..200 {
        let d = gen_derivation(&postponement_profile(Target::M, seed)).unwrap();
        let (out, _) = natded::strategy::postpone_m(d).unwrap();
        let (again, trace) = natded::strategy::postpone_m(out.clone()).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(again, out);
        assert!(standard_form(&out).m_standard);
        assert_eq!(raa_report(&out).size_raa, 0);
    }
}
