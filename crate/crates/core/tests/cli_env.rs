//! Kept in its own binary: the variable is process-wide and would leak into
//! concurrently running CLI tests.

use orthlab::cli::run;

fn orthlab(args: &[&str]) -> orthlab::cli::Outcome {
    run(std::iter::once("orthlab").chain(args.iter().copied()))
}

#[test]
fn budget_env_is_honoured() {
    std::env::set_var("ORTHLAB_BUDGET", "2");
    let env_limited = orthlab(&["symmetries", "gen:boolean:4", "--count-only"]);
    let flag = orthlab(&[
        "symmetries",
        "gen:boolean:4",
        "--count-only",
        "--budget",
        "1000",
    ]);
    std::env::set_var("ORTHLAB_BUDGET", "many");
    let bad = orthlab(&["symmetries", "gen:boolean:4"]);
    std::env::remove_var("ORTHLAB_BUDGET");
    assert_eq!(env_limited.code, 3);
    assert_eq!(flag.stdout.lines().collect::<Vec<_>>(), ["symmetries\t24"]);
    assert_eq!(bad.code, 2);
}
