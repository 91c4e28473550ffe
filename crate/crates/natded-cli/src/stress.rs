use rayon::prelude::*;

use natded::kernel::{check, eq_up_to_labels, Derivation, RuleId, SystemId};
use natded::oracle::{classical_entails, gen_derivation, GeneratorProfile};
use natded::strategy::{explore, verify_postponement, ExploreOutcome, Target};
use natded::syntax::{parse_derivation, render_text};

use crate::commands::strategy_of;
use crate::failure::{Failure, Outcome};
use crate::StrategyArg;

/// Parsed `--profile` value: a generator template and the postponement mode to test, if any.
struct Settings {
    template: GeneratorProfile,
    target: Option<Target>,
}

fn parse_settings(text: &str) -> Result<Settings, Failure> {
    let bad = |m: String| Failure::Rejected(format!("profile: {m}"));
    let mut target = Some(Target::J);
    let mut depth = 5;
    let mut atoms = vec!["P".to_string(), "Q".to_string()];
    let mut density = 0.5;
    let mut quantifiers = true;
    let mut forall_i = false;
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item.split_once('=').ok_or_else(|| bad(format!("expected key=value, found {item:?}")))?;
        let flag = |v: &str| match v {
            "true" | "yes" | "1" => Ok(true),
            "false" | "no" | "0" => Ok(false),
            _ => Err(bad(format!("{key} expects true or false"))),
        };
        match key {
            "mode" => {
                target = match value {
                    "j" => Some(Target::J),
                    "m" => Some(Target::M),
                    "check" => None,
                    _ => return Err(bad(format!("unknown mode {value:?}"))),
                }
            }
            "depth" => depth = value.parse().map_err(|_| bad(format!("bad depth {value:?}")))?,
            "atoms" => atoms = value.split(':').map(str::to_string).collect(),
            "density" => {
                density = value.parse().map_err(|_| bad(format!("bad density {value:?}")))?;
                if !(0.0..=1.0).contains(&density) {
                    return Err(bad("density must lie in [0, 1]".into()));
                }
            }
            "quantifiers" => quantifiers = flag(value)?,
            "forall_i" => forall_i = flag(value)?,
            _ => return Err(bad(format!("unknown key {key:?}"))),
        }
    }
    if forall_i && target.is_some() {
        return Err(bad("forall_i=true only combines with mode=check".into()));
    }
    let mut excluded = Vec::new();
    if !forall_i {
        excluded.push(RuleId::ForallI);
    }
    if target == Some(Target::M) {
        excluded.push(RuleId::ImpI);
    }
    let atom_refs: Vec<&str> = atoms.iter().map(String::as_str).collect();
    let mut template = GeneratorProfile::new(depth, &atom_refs, SystemId::nk().without(&excluded), density, 0);
    template.quantifiers = quantifiers;
    Ok(Settings { template, target })
}

fn generate(settings: &Settings, seed: u64) -> Result<Derivation, String> {
    let profile = GeneratorProfile { seed, ..settings.template.clone() };
    gen_derivation(&profile).map_err(|e| format!("generation: {e}"))
}

fn properties(settings: &Settings, seed: u64) -> Result<(), String> {
    let d = generate(settings, seed)?;
    let j = check(&d).map_err(|e| format!("generated derivation does not check: {e}"))?;
    if !settings.template.system.admits(&d) {
        return Err("generated derivation leaves the profile's system".into());
    }
    let reparsed = parse_derivation(&render_text(&d)).map_err(|e| format!("round trip: {e}"))?;
    if !eq_up_to_labels(&d, &reparsed) {
        return Err("round trip changed the derivation".into());
    }
    if j.conclusion.is_propositional() && j.assumptions.iter().all(|a| a.is_propositional()) {
        let sound = classical_entails(&j.assumptions, &j.conclusion).map_err(|e| e.to_string())?;
        if !sound {
            return Err(format!("{j} is not classically valid"));
        }
    }
    if let Some(t) = settings.target {
        verify_postponement(&d, t)?;
    }
    Ok(())
}

pub fn stress(seed: u64, count: u64, profile: &str) -> Outcome {
    let settings = parse_settings(profile)?;
    let results: Vec<(u64, Result<(), String>)> =
        (seed..seed + count).into_par_iter().map(|s| (s, properties(&settings, s))).collect();
    let mut failed = 0;
    for (s, r) in &results {
        if let Err(e) = r {
            failed += 1;
            println!("FAIL seed {s}: {e}");
        }
    }
    println!("passed {} of {count}", count - failed);
    if failed > 0 {
        return Err(Failure::Internal(format!("{failed} property failures")));
    }
    Ok(())
}

pub fn explore_generated(s: StrategyArg, fuel: usize, seed: u64, count: u64, profile: &str) -> Outcome {
    let settings = parse_settings(profile)?;
    let results: Vec<Result<ExploreOutcome, String>> = (seed..seed + count)
        .into_par_iter()
        .map(|k| {
            let d = generate(&settings, k)?;
            explore(d, strategy_of(s, k), fuel).map(|(o, _)| o).map_err(|e| e.to_string())
        })
        .collect();
    let mut terminated = 0;
    let mut exhausted = 0;
    let mut steps = Vec::new();
    for r in results {
        match r.map_err(Failure::Internal)? {
            ExploreOutcome::Terminated { steps: n } => {
                terminated += 1;
                steps.push(n);
            }
            ExploreOutcome::FuelExhausted { .. } => exhausted += 1,
        }
    }
    let max = steps.iter().max().copied().unwrap_or(0);
    let mean = if steps.is_empty() { 0.0 } else { steps.iter().sum::<usize>() as f64 / steps.len() as f64 };
    println!("terminated {terminated} of {count}; fuel exhausted {exhausted}; steps mean {mean:.1} max {max}");
    Ok(())
}
