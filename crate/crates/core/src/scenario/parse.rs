use crate::engine::{GameMode, Role};
use crate::error::ConfigError;
use crate::geometry::Vec2;
use crate::scenario::ScenarioConfig;

/// Parses the flat `key = value` scenario format. Absent keys take the
/// academy defaults; the result is validated.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg = ScenarioConfig::default();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |key: &str, message: String| ConfigError::Parse { line: line_no, key: key.to_string(), message };
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(line, "expected `key = value`".into()))?;
        let boolean = |v: &str| match v {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(err(key, format!("expected true or false, got `{other}`"))),
        };
        let number = |v: &str| v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| err(key, format!("malformed number `{v}`")));
        let count = |v: &str| v.parse::<usize>().map_err(|_| err(key, format!("malformed count `{v}`")));
        let point = |fields: &[&str]| -> Result<Vec2, ConfigError> {
            match fields {
                [x, y] => Ok(Vec2::new(number(x)?, number(y)?)),
                _ => Err(err(key, format!("expected `<x> <y>`, got `{}`", fields.join(" ")))),
            }
        };
        match key {
            "name" => cfg.name = value.to_string(),
            "duration_frames" => {
                cfg.duration_frames = value.parse().map_err(|_| err(key, format!("malformed count `{value}`")))?
            }
            "difficulty" => cfg.difficulty = number(value)?,
            "stochastic" => cfg.stochastic = boolean(value)?,
            "offsides" => cfg.offsides_enabled = boolean(value)?,
            "end_on_score" => cfg.end_on_score = boolean(value)?,
            "end_on_possession_loss" => cfg.end_on_possession_loss = boolean(value)?,
            "end_on_out_of_play" => cfg.end_on_out_of_play = boolean(value)?,
            "teammate_bot" => cfg.teammate_bot_enabled = boolean(value)?,
            "lazy_opponents" => cfg.lazy_opponents = boolean(value)?,
            "controlled_left" => cfg.controlled_left = count(value)?,
            "controlled_right" => cfg.controlled_right = count(value)?,
            "start_mode" => cfg.start_mode = value.parse::<GameMode>().map_err(|m| err(key, m))?,
            "ball" => {
                let fields: Vec<&str> = value.split_whitespace().collect();
                cfg.ball_start = point(&fields)?;
            }
            "left_player" | "right_player" => {
                let fields: Vec<&str> = value.split_whitespace().collect();
                let Some((role, rest)) = fields.split_first() else {
                    return Err(err(key, "expected `<role> <x> <y>`".into()));
                };
                let role: Role = role.parse().map_err(|m| err(key, m))?;
                let p = point(rest)?;
                if key == "left_player" {
                    cfg.left_placements.push((role, p));
                } else {
                    cfg.right_placements.push((role, p));
                }
            }
            other => return Err(err(other, "unknown key".into())),
        }
    }
    if cfg.left_placements.is_empty() || cfg.right_placements.is_empty() {
        return Err(ConfigError::Invalid {
            entry: if cfg.left_placements.is_empty() { "left_player" } else { "right_player" }.into(),
            message: "each side needs at least one player".into(),
        });
    }
    cfg.validate()?;
    Ok(cfg)
}
