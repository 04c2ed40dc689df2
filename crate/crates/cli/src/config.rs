//! Optional `--config file.toml`: its keys become flags placed ahead of the
//! command-line flags, which therefore take precedence.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use toml::Value;

/// Splits `--config <path>` / `--config=<path>` out of `args`.
fn take_config_path(args: Vec<OsString>) -> Result<(Vec<OsString>, Option<PathBuf>)> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            let value = iter.next().context("--config needs a file path")?;
            path = Some(PathBuf::from(value));
        } else if let Some(value) = text.strip_prefix("--config=") {
            path = Some(PathBuf::from(value));
        } else {
            rest.push(arg);
        }
    }
    Ok((rest, path))
}

fn scalar(key: &str, value: &Value) -> Result<String> {
    Ok(match value {
        Value::String(s) => s.clone(),
        Value::Integer(i) => i.to_string(),
        Value::Float(f) => f.to_string(),
        other => bail!("config key `{key}`: unsupported value {other}"),
    })
}

fn flags_from_toml(text: &str) -> Result<Vec<OsString>> {
    let table: toml::Table = text.parse().context("config file is not valid TOML")?;
    let mut flags = Vec::new();
    for (key, value) in &table {
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Boolean(true) => flags.push(flag.into()),
            Value::Boolean(false) => {}
            Value::Array(items) => {
                for item in items {
                    flags.push(flag.clone().into());
                    flags.push(scalar(key, item)?.into());
                }
            }
            other => {
                flags.push(flag.into());
                flags.push(scalar(key, other)?.into());
            }
        }
    }
    Ok(flags)
}

/// Command line with config-file flags inserted right after the subcommand.
pub fn expand_args(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let (mut args, path) = take_config_path(args)?;
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let flags = flags_from_toml(&text)?;
    let has_subcommand = args
        .get(1)
        .is_some_and(|a| !a.to_string_lossy().starts_with('-'));
    if !has_subcommand {
        bail!("--config requires a subcommand");
    }
    args.splice(2..2, flags);
    Ok(args)
}
