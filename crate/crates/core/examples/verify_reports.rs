//! Running the randomized verification suites and the CLI entry point
//! in-process.

use quivlat::cli::verify::{run_suite, Suite};

fn main() {
    for name in [
        "euler",
        "basechange",
        "braid",
        "theoremA",
        "theoremB",
        "theoremC",
    ] {
        let suite: Suite = name.parse().unwrap();
        let r = run_suite(suite, 0, 6);
        println!("{name:<11} passed {:>2} failed {}", r.passed, r.failed);
    }

    let (code, out) = quivlat::cli::run([
        "quivlat", "verify", "euler", "--seed", "5", "--size", "10", "--format", "json",
    ]);
    println!("\nexit {code}\n{out}");
}
