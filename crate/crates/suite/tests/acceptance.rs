//! Runs the P1–P10 acceptance suites and prints one line per criterion.
//!
//! Positional arguments filter by id (`cargo test -p gch-suite -- P1 P6`);
//! `GCH_ACCEPTANCE_ONLY=P1,P6` does the same. Filters that match neither an
//! id nor the target name skip every suite, as libtest would.

use std::process::ExitCode;

use affine_gch::verify::{self, Config, Report};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        if !args.iter().any(|a| a == "--ignored") {
            println!("acceptance: test");
        }
        return ExitCode::SUCCESS;
    }
    let mut filters: Vec<String> = args.iter().filter(|a| !a.starts_with('-')).map(|a| a.to_uppercase()).collect();
    if let Ok(s) = std::env::var("GCH_ACCEPTANCE_ONLY") {
        filters.extend(s.split(',').map(|t| t.trim().to_uppercase()));
    }
    if filters.iter().any(|f| "ACCEPTANCE".contains(f.as_str())) {
        filters.clear();
    }
    let cfg = Config::default();
    let suites: [(&str, &dyn Fn() -> Report); 10] = [
        ("P1", &verify::p1_sl2_thin),
        ("P2", &verify::p2_sl2_thick),
        ("P3", &verify::p3_corollary_num),
        ("P4", &verify::p4_positivity),
        ("P5", &verify::p5_support),
        ("P6", &verify::p6_reciprocity),
        ("P7", &verify::p7_weyl_kac),
        ("P8", &verify::p8_demext),
        ("P9", &verify::p9_kostka),
        ("P10", &|| verify::p10_properties(&cfg)),
    ];
    let mut failed = Vec::new();
    let mut ran = 0;
    for (id, run) in suites {
        if !filters.is_empty() && !filters.iter().any(|f| f == id) {
            continue;
        }
        let r = run();
        ran += 1;
        println!("{r}");
        if !r.passed() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: {ran} criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of {ran} failed ({})", failed.len(), failed.join(", "));
        ExitCode::FAILURE
    }
}
