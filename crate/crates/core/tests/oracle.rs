mod common;

use common::{hilbert_oracle, is_square_oracle, PRIMES};
use ortho_llc::arithmetic::{hilbert, LocalField};

#[test]
fn hilbert_symbol_matches_brute_force_solvability() {
    for p in PRIMES {
        let f = LocalField::new(p).unwrap();
        let classes = f.classes();
        assert_eq!(classes.len(), if p == 2 { 8 } else { 4 });
        for &a in &classes {
            for &b in &classes {
                let closed = hilbert(a, b).unwrap().value();
                assert_eq!(closed, hilbert_oracle(p, a.repr(), b.repr()), "({a},{b})_{p}");
            }
        }
    }
}

#[test]
fn square_classes_match_brute_force_squares() {
    for p in PRIMES {
        let f = LocalField::new(p).unwrap();
        for n in (-255i64..=255).filter(|&n| n != 0) {
            assert_eq!(f.class_of_int(n).unwrap().is_one(), is_square_oracle(p, n), "{n} in Q_{p}");
        }
    }
}

#[test]
fn two_adic_squares_up_to_two_to_the_eighth() {
    let f = LocalField::new(2).unwrap();
    for n in 1i64..256 {
        let v = n.trailing_zeros();
        let closed_form = v % 2 == 0 && (n >> v) % 8 == 1;
        assert_eq!(f.class_of_int(n).unwrap().is_one(), closed_form, "{n}");
        assert_eq!(closed_form, is_square_oracle(2, n), "{n}");
    }
}

#[test]
fn class_multiplication_matches_integer_products() {
    for p in PRIMES {
        let f = LocalField::new(p).unwrap();
        for a in (-30i64..=30).filter(|&n| n != 0) {
            for b in (-30i64..=30).filter(|&n| n != 0) {
                let prod = f.class_of_int(a).unwrap() * f.class_of_int(b).unwrap();
                assert_eq!(prod, f.class_of_int(a * b).unwrap());
            }
        }
    }
}
