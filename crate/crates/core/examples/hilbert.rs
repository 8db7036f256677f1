//! Square classes and Hilbert symbols over Q_p.
//!
//! Run with `cargo run --example hilbert`.

use ortho_llc::arithmetic::{hilbert, LocalField};

fn main() -> ortho_llc::Result<()> {
    for p in [2, 3, 5] {
        let f = LocalField::new(p)?;
        let classes = f.classes();
        println!("Q_{p}: {} square classes, uniformizer class {}", classes.len(), f.uniformizer());
        print!("{:>5}", "");
        for b in &classes {
            print!("{:>5}", b.to_string());
        }
        println!();
        for &a in &classes {
            print!("{:>5}", a.to_string());
            for &b in &classes {
                print!("{:>5}", hilbert(a, b)?.value());
            }
            println!();
        }
        println!();
    }
    Ok(())
}
