#![allow(dead_code)]

use std::path::PathBuf;

use natded::kernel::{RuleId, SystemId};
use natded::oracle::GeneratorProfile;
use natded::strategy::Target;

pub fn corpus_dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(sub)
}

/// Generator profile used by the postponement property suite.
pub fn postponement_profile(target: Target, seed: u64) -> GeneratorProfile {
    let system = match target {
        Target::J => SystemId::nk().without(&[RuleId::ForallI]),
        Target::M => SystemId::nk().without(&[RuleId::ForallI, RuleId::ImpI]),
    };
    let mut p = GeneratorProfile::new(5, &["P", "Q"], system, 0.5, seed);
    p.quantifiers = true;
    p
}
