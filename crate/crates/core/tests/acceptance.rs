use std::process::ExitCode;

use fourdl::selftest::{run_all, SelftestConfig};

fn main() -> ExitCode {
    let outcomes = run_all(&SelftestConfig::default());
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
