//! Runs the randomized property battery, then once more with an injected bug.
//!
//! Run with `cargo run --release --example desiderata`.

use ortho_llc::cli::{check_desiderata, CheckConfig, Format, Mutation};

fn main() {
    let config = CheckConfig { p: 5, trials: 300, seed: 42, max_summands: 6, mutation: None };
    let clean = check_desiderata(&config).expect("valid configuration");
    print!("{}", clean.report().render(Format::Table));
    for m in Mutation::ALL {
        let r = check_desiderata(&CheckConfig { mutation: Some(m), ..config.clone() }).expect("valid configuration");
        println!("{m}: caught by {}", r.failed().join(", "));
    }
    let r = check_desiderata(&CheckConfig { mutation: Some(Mutation::WhittakerUsesPhi), ..config }).expect("valid configuration");
    if let Some(cx) = r.properties.iter().find_map(|p| p.counterexample.as_ref()) {
        println!("\nshrunk counterexample ({}):\n{}", cx.detail, cx.scenario);
    }
}
