//! Flat `key = value` run configuration with dotted sections.
//!
//! Resolution order: built-in defaults, then the optional `--config`
//! file, then command-line flags. Every key must be known — a typo is a
//! config error, not a silent default. The resolved map (not the input
//! sources) is what gets hashed, so two runs with the same effective
//! parameters share a hash no matter how they were spelled.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

/// Known keys with their defaults; the single source of truth for what a
/// config may contain.
const DEFAULTS: &[(&str, &str)] = &[
    ("grid.N", "1024"),
    ("grid.m", "8"),
    ("time.T", "1.0"),
    ("time.M", "1000"),
    ("seed", "1729"),
    ("out", "runs"),
    ("data.family", "gaussian"),
    ("data.width", "4.0"),
    ("data.lo", "0.0"),
    ("data.hi", "1.0"),
    ("data.beta", "1.0"),
    ("data.gamma", "3.0"),
    ("data.random_phase", "false"),
    ("data.scale", "1.0"),
    ("evolve.nonlinearity", "defocusing"),
    ("evolve.stride", "10"),
    ("norm.p", "4.0"),
    ("orlicz.gamma", "3.0"),
    ("picard.iters", "8"),
    ("picard.small", "0.0"),
    ("vpnorm.p", "2.0"),
    ("strichartz.p", "6.0"),
    ("strichartz.q", "6.0"),
    ("bilinear.u_lo", "0.0"),
    ("bilinear.u_hi", "1.0"),
    ("bilinear.v_lo", "3.0"),
    ("bilinear.v_hi", "4.0"),
    ("bilinear.window", "0.5"),
    ("bilinear.lambdas", "4,8,16,32"),
    ("bilinear.identity_lambda", "2.5"),
    ("restriction.data", "flat"),
    ("restriction.blocks", "4,8,16,32,64"),
    ("embeddings.trials", "50"),
    ("scaling.levels", "1,2,4,8"),
    ("persistence.size", "0.05"),
    ("conjugate.t_lo", "1e-10"),
    ("conjugate.t_hi", "1e-3"),
    ("conjugate.points", "29"),
];

#[derive(Clone, Debug)]
pub struct Config {
    map: BTreeMap<String, String>,
}

impl Config {
    /// Merge defaults, an optional config file, and flag overrides.
    pub fn resolve(
        file: Option<&str>,
        overrides: &[(String, String)],
    ) -> Result<Config, String> {
        let mut map: BTreeMap<String, String> =
            DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config file {path}: {e}"))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(format!("{path}:{}: expected `key = value`", lineno + 1));
                };
                let key = key.trim();
                if !map.contains_key(key) {
                    return Err(format!("{path}:{}: unknown key `{key}`", lineno + 1));
                }
                map.insert(key.to_string(), value.trim().to_string());
            }
        }
        for (key, value) in overrides {
            if !map.contains_key(key.as_str()) {
                return Err(format!("unknown flag `--{key}`"));
            }
            map.insert(key.clone(), value.clone());
        }
        Ok(Config { map })
    }

    pub fn str_key(&self, key: &str) -> &str {
        self.map.get(key).map(String::as_str).unwrap_or("")
    }

    pub fn f64_key(&self, key: &str) -> Result<f64, String> {
        self.str_key(key)
            .parse()
            .map_err(|_| format!("key `{key}` must be a number, got `{}`", self.str_key(key)))
    }

    pub fn usize_key(&self, key: &str) -> Result<usize, String> {
        self.str_key(key)
            .parse()
            .map_err(|_| format!("key `{key}` must be a nonnegative integer, got `{}`", self.str_key(key)))
    }

    pub fn u64_key(&self, key: &str) -> Result<u64, String> {
        self.str_key(key)
            .parse()
            .map_err(|_| format!("key `{key}` must be an unsigned integer, got `{}`", self.str_key(key)))
    }

    pub fn bool_key(&self, key: &str) -> Result<bool, String> {
        match self.str_key(key) {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(format!("key `{key}` must be true or false, got `{other}`")),
        }
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, String> {
        self.str_key(key)
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse()
                    .map_err(|_| format!("key `{key}`: `{tok}` is not a number"))
            })
            .collect()
    }

    pub fn usize_list(&self, key: &str) -> Result<Vec<usize>, String> {
        self.str_key(key)
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse()
                    .map_err(|_| format!("key `{key}`: `{tok}` is not an integer"))
            })
            .collect()
    }

    /// Canonical rendering: sorted `key = value` lines. Used for the hash
    /// and echoed into every artifact.
    pub fn canonical(&self) -> String {
        let mut text = String::new();
        for (k, v) in &self.map {
            let _ = writeln!(text, "{k} = {v}");
        }
        text
    }

    /// Hash of the command name plus the resolved configuration; embedded
    /// in every output file so artifacts are traceable to their run.
    pub fn hash(&self, command: &str) -> String {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        hasher.update(b"\n");
        hasher.update(self.canonical().as_bytes());
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(16);
        for byte in digest.iter().take(8) {
            let _ = write!(hex, "{byte:02x}");
        }
        hex
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.map
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve_and_hash_is_stable() {
        let a = Config::resolve(None, &[]).unwrap();
        let b = Config::resolve(None, &[]).unwrap();
        assert_eq!(a.hash("norms"), b.hash("norms"));
        assert_ne!(a.hash("norms"), a.hash("evolve"));
        assert_eq!(a.usize_key("grid.N").unwrap(), 1024);
    }

    #[test]
    fn overrides_change_the_hash_and_unknown_keys_fail() {
        let base = Config::resolve(None, &[]).unwrap();
        let tweaked =
            Config::resolve(None, &[("grid.N".into(), "512".into())]).unwrap();
        assert_ne!(base.hash("norms"), tweaked.hash("norms"));
        assert!(Config::resolve(None, &[("grid.Q".into(), "1".into())]).is_err());
    }

    #[test]
    fn lists_parse() {
        let cfg = Config::resolve(None, &[("scaling.levels".into(), "1, 2,4".into())]).unwrap();
        assert_eq!(cfg.f64_list("scaling.levels").unwrap(), vec![1.0, 2.0, 4.0]);
    }
}
