#![allow(dead_code)]

use std::path::PathBuf;

use ortho_llc::arithmetic::LocalField;
use ortho_llc::cli::{parse_spec, print_spec, run_command, Format};
use ortho_llc::sample::{Sample, Sampler};

/// Solvability of a x^2 + b y^2 = z^2 in primitive p-adic integers, decided by exhaustive
/// search modulo p^3 (p odd) or 2^6, which Hensel lifting makes exact for a, b of valuation <= 1.
pub fn hilbert_oracle(p: u64, a: i64, b: i64) -> i8 {
    let n = if p == 2 { 6 } else { 3 };
    let m = p.pow(n) as i128;
    let p = p as i128;
    let mut any_root = vec![false; m as usize];
    let mut unit_root = vec![false; m as usize];
    for z in 0..m {
        let r = (z * z % m) as usize;
        any_root[r] = true;
        unit_root[r] |= z % p != 0;
    }
    let (a, b) = (a as i128, b as i128);
    for x in 0..m {
        for y in 0..m {
            let t = (a * x * x + b * y * y).rem_euclid(m) as usize;
            let primitive = x % p != 0 || y % p != 0;
            if unit_root[t] || (primitive && any_root[t]) {
                return 1;
            }
        }
    }
    -1
}

/// True iff n is a square in Q_p, by search for x with x^2 = n mod p^k, k well past v(n).
pub fn is_square_oracle(p: u64, n: i64) -> bool {
    let m = p.pow(if p == 2 { 12 } else { 6 }) as i128;
    let n = (n as i128).rem_euclid(m);
    (0..m).any(|x| x * x % m == n)
}

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Seeded tempered corpus over Q_5.
pub fn tempered_corpus(n: usize, seed: u64, max_summands: usize) -> Vec<Sample> {
    let f = LocalField::new(5).unwrap();
    let mut s = Sampler::new(f, seed, max_summands);
    (0..n).map(|_| s.tempered()).collect()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// (name, mismatch description) for every golden scenario whose output differs.
pub fn golden_mismatches() -> (usize, Vec<(String, String)>) {
    let mut files: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "llc"))
        .collect();
    files.sort();
    let mut bad = Vec::new();
    for path in &files {
        let name = path.file_stem().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(path).unwrap();
        let expected = std::fs::read_to_string(path.with_extension("out")).unwrap_or_default();
        let got = match parse_spec(&text) {
            Ok(s) => {
                let format = s.command.word("format").and_then(Format::parse).unwrap_or(Format::Table);
                match run_command(&s) {
                    Ok(r) => r.render(format),
                    Err(e) => format!("error{e}\n"),
                }
            }
            Err(e) => format!("error{e}\n"),
        };
        if got != expected {
            bad.push((name, format!("expected:\n{expected}got:\n{got}")));
        }
    }
    (files.len(), bad)
}

const COMMANDS: [&str; 10] = [
    "packet phi --c {c}",
    "packet phi --c {c} --format json",
    "so phi --c {c}",
    "theta phi --eta {eta} --dir up --c {c}",
    "theta phi --eta {eta} --dir down --format table",
    "lir phi --eta0 {eta} --tau {tau} --c {c}",
    "factors comgamma phi --chi {c}",
    "factors rsq phi --tau {tau} --backend gamma",
    "hilbert {c} {c2}",
    "embed phi phi",
];

/// Fifty scenario texts over the four test primes, with random parameters and commands.
pub fn round_trip_corpus() -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..50usize {
        let p = PRIMES[i % 4];
        let f = LocalField::new(p).unwrap();
        let mut s = Sampler::new(f, 1000 + i as u64, 5);
        let sample = if i % 3 == 0 { s.nontempered() } else { s.tempered() };
        let rank = ortho_llc::parameters::ComponentGroup::of(&sample.phi).rank();
        let eta: String = (0..rank).map(|_| if s.sign_bit() { '-' } else { '+' }).collect();
        let eta = if eta.is_empty() { "()".to_string() } else { eta };
        let tau = s.orthogonal_tau().atom();
        let cmd = COMMANDS[i % COMMANDS.len()]
            .replace("{c}", &s.class().to_string())
            .replace("{c2}", &s.class().to_string())
            .replace("{eta}", &eta)
            .replace("{tau}", &tau);
        out.push(format!("field Q({p});\nchiV {};\nparam phi {}\n{cmd}\n", sample.chi_v.d, sample.phi));
    }
    out
}

/// Texts whose parse/print round trip fails, with the reason.
pub fn round_trip_failures(corpus: &[String]) -> Vec<String> {
    let mut bad = Vec::new();
    for text in corpus {
        match parse_spec(text) {
            Err(e) => bad.push(format!("{text}: {e}")),
            Ok(s) => {
                let printed = print_spec(&s);
                match parse_spec(&printed) {
                    Ok(back) if back == s && print_spec(&back) == printed => {}
                    Ok(_) => bad.push(format!("{text}: reprint differs")),
                    Err(e) => bad.push(format!("{printed}: {e}")),
                }
            }
        }
    }
    bad
}
