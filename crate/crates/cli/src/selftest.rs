//! The `selftest` command: seeded runs of the core identity suites.

use apolar_core::checks::{
    bridge_suite, conic_suite, dimension_law_suite, equivariance_suite, multinomial_suite, taylor_suite, SuiteReport,
    TAYLOR_CONFIGS, TAYLOR_CONFIGS_LARGE,
};
use apolar_core::recon::DEFAULT_HEIGHT_BOUND;
use apolar_core::sample::rng;
use clap::ValueEnum;

use crate::report::{Body, Report, Suite, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

fn suites(level: Level, seed: u64) -> Vec<SuiteReport> {
    let mut r = rng(seed);
    match level {
        Level::Quick => vec![
            multinomial_suite(8, 2),
            taylor_suite(&TAYLOR_CONFIGS, 3, &mut r),
            bridge_suite(20, 8, &mut r),
            equivariance_suite(3, &mut r),
        ],
        Level::Full => {
            let configs: Vec<_> = TAYLOR_CONFIGS.iter().chain(&TAYLOR_CONFIGS_LARGE).copied().collect();
            vec![
                multinomial_suite(10, 2),
                taylor_suite(&configs, 10, &mut r),
                bridge_suite(50, 20, &mut r),
                equivariance_suite(10, &mut r),
                dimension_law_suite(),
                conic_suite(20, DEFAULT_HEIGHT_BOUND, &mut r),
            ]
        }
    }
}

pub fn run(level: Level, seed: u64) -> Report {
    let suites: Vec<Suite> = suites(level, seed)
        .into_iter()
        .map(|s| Suite { name: s.name, cases: s.cases, failures: s.failures })
        .collect();
    let verdict = if suites.iter().all(|s| s.failures.is_empty()) { Verdict::Verified } else { Verdict::Unverified };
    let level = match level {
        Level::Quick => "quick",
        Level::Full => "full",
    };
    let job = vec![
        ("command".to_string(), "selftest".to_string()),
        ("level".into(), level.into()),
        ("seed".into(), seed.to_string()),
    ];
    Report { job, body: Body::Selftest(suites), verdict }
}
