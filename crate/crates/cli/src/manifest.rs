//! `#`-prefixed header lines that make every CSV reproducible.
//!
//! The body of the header is itself a valid config file once the `# ` is
//! stripped.

use toml::Value;

#[derive(Debug, Clone, Default)]
pub struct Manifest {
    subcommand: &'static str,
    entries: Vec<(&'static str, Value)>,
}

impl Manifest {
    pub fn new(subcommand: &'static str) -> Self {
        Manifest {
            subcommand,
            entries: Vec::new(),
        }
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.entries.push((key, value.into()));
        self
    }

    pub fn with_opt(self, key: &'static str, value: Option<impl Into<Value>>) -> Self {
        match value {
            Some(v) => self.with(key, v),
            None => self,
        }
    }

    pub fn with_usize(self, key: &'static str, value: usize) -> Self {
        self.with(key, value as i64)
    }

    pub fn with_u64(self, key: &'static str, value: u64) -> Self {
        self.with(key, value as i64)
    }

    /// Header lines followed by `body`.
    pub fn wrap(&self, output: Option<&str>, body: &str) -> String {
        let mut out = format!(
            "# {} {}\n# subcommand = \"{}\"\n",
            env!("CARGO_BIN_NAME"),
            env!("CARGO_PKG_VERSION"),
            self.subcommand
        );
        if let Some(path) = output {
            out.push_str(&format!("# output = {}\n", Value::from(path)));
        }
        for (key, value) in &self.entries {
            out.push_str(&format!("# {key} = {value}\n"));
        }
        out.push_str(body);
        out
    }
}
