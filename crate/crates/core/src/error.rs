use thiserror::Error;

/// Problems with a scenario document or configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}, key `{key}`: {message}")]
    Parse {
        line: usize,
        key: String,
        message: String,
    },
    #[error("invalid {entry}: {message}")]
    Invalid { entry: String, message: String },
    #[error("unknown scenario `{name}`; valid names: {}", valid.join(", "))]
    UnknownScenario { name: String, valid: Vec<String> },
    #[error("cannot read scenario file {path}: {message}")]
    Io { path: String, message: String },
}

/// Caller broke an API precondition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContractError {
    #[error("action supplied for sent-off player {side} #{index}")]
    ActionForSentOff { side: &'static str, index: usize },
    #[error("missing action for player {side} #{index}")]
    MissingAction { side: &'static str, index: usize },
    #[error("expected {expected} actions for the {side} team, got {got}")]
    TeamActionCount {
        side: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("episode already at its final frame {0}")]
    EpisodeOver(u32),
    #[error("expected {expected} actions, got {got}")]
    ActionCount { expected: usize, got: usize },
    #[error("step called after the episode finished; call reset first")]
    StepAfterDone,
    #[error("step called before reset")]
    NotReset,
    #[error("seed can only be changed between episodes")]
    SeedMidEpisode,
    #[error("opponent policy returned {got} actions for {expected} players")]
    PolicyActionCount { expected: usize, got: usize },
    #[error("difficulty {0} outside [0, 1]")]
    Difficulty(f64),
    #[error("stacking depth must be at least 1")]
    Stacking,
    #[error("render size {0}x{1} below the 16x16 minimum")]
    RenderSize(usize, usize),
}

/// Replay file problems.
#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed replay: {0}")]
    Format(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Contract(#[from] ContractError),
}

/// Failure to build or drive an environment.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnvError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Contract(#[from] ContractError),
}
