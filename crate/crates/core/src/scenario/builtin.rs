use crate::error::ConfigError;
use crate::scenario::{parse_scenario, ScenarioConfig};

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../scenarios/", $name, ".scn")))),*]
    };
}

const BUNDLED: &[(&str, &str)] = bundled![
    "11_vs_11_easy",
    "11_vs_11_medium",
    "11_vs_11_hard",
    "empty_goal_close",
    "empty_goal",
    "run_to_score",
    "run_to_score_with_keeper",
    "pass_and_shoot_with_keeper",
    "run_pass_and_shoot_with_keeper",
    "3_vs_1_with_keeper",
    "corner",
    "counterattack_easy",
    "counterattack_hard",
    "11_vs_11_with_lazy_opponents",
];

pub const BENCHMARK_NAMES: [&str; 3] = ["11_vs_11_easy", "11_vs_11_medium", "11_vs_11_hard"];

const ALIASES: &[(&str, &str)] = &[("11_vs_11_stochastic", "11_vs_11_medium")];

/// Every accepted built-in name, aliases included.
pub fn builtin_names() -> Vec<&'static str> {
    BUNDLED
        .iter()
        .map(|(n, _)| *n)
        .chain(ALIASES.iter().map(|(a, _)| *a))
        .collect()
}

pub fn builtin(name: &str) -> Result<ScenarioConfig, ConfigError> {
    let resolved = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, target)| target);
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == resolved)
        .ok_or_else(|| ConfigError::UnknownScenario {
            name: name.to_string(),
            valid: builtin_names().iter().map(|s| s.to_string()).collect(),
        })?;
    parse_scenario(text)
}
