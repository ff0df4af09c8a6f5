use std::path::Path;

use clap::{ArgAction, CommandFactory};

use crate::cli::Cli;
use crate::error::{CliError, CliResult};

/// Parses `key = value` lines; `#` starts a comment line.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Invalid(format!("config line {}: expected key = value", n + 1)));
        };
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Invalid(format!("config line {}: empty key", n + 1)));
        }
        pairs.push((key, v.trim().to_string()));
    }
    Ok(pairs)
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Splices the values of a `--config` file into the argument list. Global
/// keys go before everything else and subcommand keys right after the
/// subcommand name, so that flags given on the command line come later and
/// override them.
pub fn expand_config(args: Vec<String>) -> CliResult<Vec<String>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| CliError::Invalid(format!("config {path}: {e}")))?;
    let pairs = parse_config(&text)?;
    let root = Cli::command();
    let names: Vec<String> = root.get_subcommands().map(|s| s.get_name().to_string()).collect();
    let Some(pos) = args.iter().skip(1).position(|a| names.contains(a)).map(|p| p + 1) else {
        return Ok(args);
    };
    let sub = root.find_subcommand(&args[pos]).expect("name was taken from the subcommand list");
    let mut global = Vec::new();
    let mut local = Vec::new();
    for (key, value) in pairs {
        if key == "config" {
            return Err(CliError::Invalid("config files cannot include other config files".into()));
        }
        let (arg, target) = match sub.get_arguments().find(|a| a.get_long() == Some(key.as_str())) {
            Some(a) => (a, &mut local),
            None => match root.get_arguments().find(|a| a.get_long() == Some(key.as_str())) {
                Some(a) => (a, &mut global),
                None => return Err(CliError::Invalid(format!("unknown config key '{key}' for {}", args[pos]))),
            },
        };
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" | "yes" | "1" => target.push(format!("--{key}")),
                "false" | "no" | "0" => {}
                _ => return Err(CliError::Invalid(format!("config key '{key}' takes true or false"))),
            }
        } else {
            target.push(format!("--{key}={value}"));
        }
    }
    let mut out = Vec::with_capacity(args.len() + global.len() + local.len());
    out.push(args[0].clone());
    out.extend(global);
    out.extend_from_slice(&args[1..=pos]);
    out.extend(local);
    out.extend_from_slice(&args[pos + 1..]);
    Ok(out)
}
