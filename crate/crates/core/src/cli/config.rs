//! `key = value` configuration files. Keys are long flag names; flags given on the command line win.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

/// Every key a config file may set.
pub const KNOWN_KEYS: &[&str] = &[
    "modulus",
    "map",
    "format",
    "output",
    "primes",
    "m",
    "n",
    "c",
    "extended",
    "set",
    "modulus-a",
    "modulus-b",
    "poly",
    "orbits",
];

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, (String, usize)>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {line_no}: expected key = value, got {line:?}"))?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(format!("config line {line_no}: unknown key {key:?}"));
            }
            values.insert(key.to_string(), (value.trim().to_string(), line_no));
        }
        Ok(Self { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|(v, _)| v.as_str())
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|(v, line)| {
                v.parse::<T>()
                    .map_err(|e| format!("config line {line}: invalid value {v:?} for {key}: {e}"))
            })
            .transpose()
    }

    pub fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, String>
    where
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|(v, line)| {
                v.split(',')
                    .map(|item| {
                        item.trim()
                            .parse::<T>()
                            .map_err(|e| format!("config line {line}: invalid list item {item:?} for {key}: {e}"))
                    })
                    .collect()
            })
            .transpose()
    }
}
