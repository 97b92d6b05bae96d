//! Runs the full verification battery and prints one line per criterion.

use qforest::parallel::{resolve_threads, Parallel};
use qforest::verify::{run_criterion, Level, CRITERIA, DEFAULT_SEED};
use qforest_core::{Budget, Engine};

fn main() {
    let threads = resolve_threads(None).expect("thread setting");
    let engine = Engine::new(Parallel::new(threads).expect("thread pool"), Budget::default());
    let mut failed = Vec::new();
    println!("\nacceptance: {CRITERIA} criteria, seed {DEFAULT_SEED}, {threads} thread(s)");
    for id in 1..=CRITERIA {
        let outcome = run_criterion(id, Level::Full, DEFAULT_SEED, &engine);
        println!("{}", outcome.summary());
        if !outcome.passed() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {CRITERIA} criteria passed\n");
    } else {
        println!("acceptance: failed criteria {failed:?}\n");
        std::process::exit(1);
    }
}
