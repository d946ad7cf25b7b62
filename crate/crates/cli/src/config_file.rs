use std::fs;
use std::path::Path;

use serde_json::{Map, Value};
use thiserror::Error;
use wsnlife_core::{ConfigError, NetworkConfig};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config is not valid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("config must be a flat JSON object")]
    NotAnObject,
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {message}")]
    InvalidType { key: String, message: String },
    #[error(transparent)]
    Invalid(#[from] ConfigError),
}

impl LoadError {
    /// The config key the error is about, when there is one.
    pub fn key(&self) -> Option<&str> {
        match self {
            LoadError::UnknownKey(k) | LoadError::InvalidType { key: k, .. } => Some(k),
            LoadError::Invalid(e) => Some(e.key()),
            _ => None,
        }
    }
}

fn defaults() -> Map<String, Value> {
    match serde_json::to_value(NetworkConfig::default()) {
        Ok(Value::Object(m)) => m,
        _ => unreachable!("NetworkConfig serializes to an object"),
    }
}

/// Parses a flat JSON object of `NetworkConfig` fields. Missing keys take
/// their defaults; unknown keys and out-of-range values are rejected.
pub fn parse_config(text: &str) -> Result<NetworkConfig, LoadError> {
    let Value::Object(given) = serde_json::from_str::<Value>(text)? else {
        return Err(LoadError::NotAnObject);
    };
    let base = defaults();
    let mut merged = base.clone();
    for (key, value) in &given {
        if !base.contains_key(key) {
            return Err(LoadError::UnknownKey(key.clone()));
        }
        // Type-check each key on its own so the error can name it.
        let mut probe = base.clone();
        probe.insert(key.clone(), value.clone());
        if let Err(e) = serde_json::from_value::<NetworkConfig>(Value::Object(probe)) {
            return Err(LoadError::InvalidType { key: key.clone(), message: e.to_string() });
        }
        merged.insert(key.clone(), value.clone());
    }
    let config: NetworkConfig = serde_json::from_value(Value::Object(merged))?;
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<NetworkConfig, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_shaped_config() {
        let c = parse_config(r#"{"n_sensors":150,"width":3000,"height":3000,"sink_probability":0.156,"seed":42}"#)
            .unwrap();
        assert_eq!(c.n_sensors, 150);
        assert_eq!((c.width, c.height), (3000.0, 3000.0));
        assert_eq!(c.sink_probability, 0.156);
        assert_eq!(c.seed, 42);
        assert_eq!(c.comm_cost_sink, 2.0);
    }

    #[test]
    fn empty_object_is_all_defaults() {
        assert_eq!(parse_config("{}").unwrap(), NetworkConfig::default());
    }

    #[test]
    fn range_error_names_key() {
        let e = parse_config(r#"{"sink_probability":1.5}"#).unwrap_err();
        assert!(matches!(e, LoadError::Invalid(_)));
        assert_eq!(e.key(), Some("sink_probability"));
    }

    #[test]
    fn unknown_key_rejected() {
        let e = parse_config(r#"{"n_sensors":10,"colour":"red"}"#).unwrap_err();
        assert_eq!(e.key(), Some("colour"));
    }

    #[test]
    fn type_error_names_key() {
        let e = parse_config(r#"{"n_sensors":"many"}"#).unwrap_err();
        assert!(matches!(e, LoadError::InvalidType { .. }));
        assert_eq!(e.key(), Some("n_sensors"));
        let e = parse_config(r#"{"seed":-3}"#).unwrap_err();
        assert_eq!(e.key(), Some("seed"));
    }

    #[test]
    fn non_object_and_garbage() {
        assert!(matches!(parse_config("[1,2]"), Err(LoadError::NotAnObject)));
        assert!(matches!(parse_config("{"), Err(LoadError::Parse(_))));
    }

    #[test]
    fn targets_accept_coordinate_pairs() {
        let c = parse_config(r#"{"targets":[[1,2],[3.5,4]]}"#).unwrap();
        assert_eq!(c.targets, vec![[1.0, 2.0], [3.5, 4.0]]);
    }
}
