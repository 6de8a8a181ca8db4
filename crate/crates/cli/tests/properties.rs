use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use dgtwist_cli::prelude::{with_tasks, CATALOGUE};
use dgtwist_cli::{parse_scenario, run, RunOptions};

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]))
}

const TASKS: [&str; 5] = [
    "check = \"glue\"\npair = \"zigzag\"",
    "check = \"spherical-object\"\nmodule = \"E\"",
    "check = \"homology\"\nmodule = \"Z2s\"\ntarget = \"Z1\"",
    "check = \"cotwist-matrix\"\npair = \"kt2\"",
    "check = \"degenerate\"\npair = \"zero\"",
];

#[test]
fn same_scenario_and_seed_give_the_same_body() {
    let base = parse_scenario(CATALOGUE).unwrap();
    let case = (prop::sample::subsequence(TASKS.to_vec(), 1..=3), any::<u64>(), 0usize..4);
    runner(24)
        .run(&case, |(tasks, seed, attempts)| {
            let snippet: String = tasks.iter().map(|t| format!("[[tasks]]\n{t}\n")).collect();
            let s = with_tasks(&base, &snippet).unwrap();
            let opts = RunOptions { seed: Some(seed), attempts: Some(attempts), ..RunOptions::default() };
            prop_assert_eq!(run(&s, opts).unwrap().body_json(), run(&s, opts).unwrap().body_json());
            Ok(())
        })
        .unwrap();
}

#[test]
fn corrupted_scenarios_fail_with_a_location() {
    let len = CATALOGUE.len();
    let case = (0..len, 0..len, "[a-z0-9=\\[\\]\"{}, .\n-]{0,8}");
    runner(200)
        .run(&case, |(a, b, junk)| {
            let (lo, hi) = (a.min(b), a.max(b).min(a.min(b) + 40));
            let (lo, hi) = (floor_char(lo), floor_char(hi));
            let text = format!("{}{junk}{}", &CATALOGUE[..lo], &CATALOGUE[hi..]);
            if let Err(e) = parse_scenario(&text) {
                let lines = text.lines().count().max(1);
                prop_assert!(e.line >= 1 && e.line <= lines + 1, "{e} in {lines} lines");
                prop_assert!(e.col >= 1);
            }
            Ok(())
        })
        .unwrap();
}

fn floor_char(mut i: usize) -> usize {
    while !CATALOGUE.is_char_boundary(i) {
        i -= 1;
    }
    i
}
