//! Classification of quadratic spaces of dimension 2m by discriminant and Hasse invariant.
//!
//! Run with `cargo run --example spaces`.

use ortho_llc::arithmetic::{classify_space, LocalField, Sign};

fn main() -> ortho_llc::Result<()> {
    let f = LocalField::new(3)?;
    for m in 1..=3 {
        for d in f.classes() {
            for eps in [Sign::Plus, Sign::Minus] {
                match classify_space(f, m, d, eps) {
                    Ok(v) => println!("m={m} d={d} eps={eps:>2}: {v} quasi-split={}", v.is_quasi_split()),
                    Err(e) => println!("m={m} d={d} eps={eps:>2}: {e}"),
                }
            }
        }
    }
    Ok(())
}
