//! Parses a scenario, prints it canonically and runs its command in both output formats.
//!
//! Run with `cargo run --example scenario`.

use ortho_llc::cli::{parse_spec, print_spec, run_command, Format};

const TEXT: &str = "
field Q(5);   # the running example
chiV 5;
param phi { chi(5); chi(1); }
theta phi --eta ++ --dir up
";

fn main() {
    let scenario = match parse_spec(TEXT) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error{e}");
            std::process::exit(e.exit_code());
        }
    };
    print!("{}", print_spec(&scenario));
    match run_command(&scenario) {
        Ok(report) => {
            print!("{}", report.render(Format::Table));
            print!("{}", report.render(Format::Json));
        }
        Err(e) => eprintln!("error{e}"),
    }
    let broken = "field Q(5); chiV 5; param phi { chi(1) chi(5); } packet phi";
    if let Err(e) = parse_spec(broken) {
        println!("diagnostic for a missing semicolon: {e} (exit code {})", e.exit_code());
    }
}
