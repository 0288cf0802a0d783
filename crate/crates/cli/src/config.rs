use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Parser;
use ordercone::{Budgets, Error, Result};
use serde::Deserialize;
use serde_json::Value;

use crate::report::Format;
use crate::{Cli, Command};

/// File form of a run. `options` maps flag names to values; arrays repeat the flag.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    command: String,
    #[serde(default)]
    options: BTreeMap<String, Value>,
    seed: Option<u64>,
    format: Option<Format>,
    output: Option<PathBuf>,
    budget: Option<String>,
}

pub struct Resolved {
    pub command: Command,
    pub budgets: Budgets,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn flag_args(options: &BTreeMap<String, Value>) -> Result<Vec<String>> {
    let mut args = Vec::new();
    for (key, value) in options {
        let flag = format!("--{}", key.replace('_', "-"));
        let scalar = |v: &Value| -> Result<String> {
            match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                Value::Object(_) => Ok(v.to_string()),
                other => Err(Error::Parse(format!("option `{key}` has unsupported value {other}"))),
            }
        };
        match value {
            Value::Bool(true) => args.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                for item in items {
                    args.push(flag.clone());
                    args.push(scalar(item)?);
                }
            }
            v => {
                args.push(flag);
                args.push(scalar(v)?);
            }
        }
    }
    Ok(args)
}

pub fn resolve(cli: Cli) -> Result<Resolved> {
    let mut budgets = Budgets::from_env()?;
    let (command, seed, format, output) = match (&cli.config, cli.command) {
        (Some(_), Some(_)) => return Err(Error::Parse("give either --config or a subcommand, not both".into())),
        (None, None) => return Err(Error::Parse("no subcommand given".into())),
        (None, Some(cmd)) => (cmd, cli.seed, cli.format, cli.output),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            let cfg: RunConfig =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
            if let Some(b) = &cfg.budget {
                budgets.apply_overrides(b)?;
            }
            let mut argv = vec!["ordercone".to_string(), cfg.command.clone()];
            argv.extend(flag_args(&cfg.options)?);
            let inner = Cli::try_parse_from(&argv).map_err(|e| Error::Parse(e.to_string().trim().to_string()))?;
            let cmd = inner.command.ok_or_else(|| Error::Parse("config has no command".into()))?;
            (cmd, cli.seed.or(cfg.seed), cli.format.or(cfg.format), cli.output.or(cfg.output))
        }
    };
    if let Some(b) = &cli.budget {
        budgets.apply_overrides(b)?;
    }
    Ok(Resolved { command, budgets, seed: seed.unwrap_or(0), format: format.unwrap_or(Format::Json), output })
}
