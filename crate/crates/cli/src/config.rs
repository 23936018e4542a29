//! `--config` files: `key = value` lines merged into the command line.
//!
//! A key becomes the long flag `--key` (underscores turn into dashes) of the
//! chosen subcommand. Flags given on the command line win; keys the
//! subcommand does not know are skipped so one file can serve several
//! subcommands.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Command};

/// Parses `key = value` lines; `#` starts a comment, blank lines are ignored.
pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected key = value, got {raw:?}", n + 1);
        };
        let key = k.trim().replace('_', "-");
        let value = v.trim().trim_matches('"').to_string();
        if key.is_empty() {
            bail!("config line {}: empty key", n + 1);
        }
        out.insert(key, value);
    }
    Ok(out)
}

/// Position of `--config`'s value in argv, if present.
fn config_path(args: &[OsString]) -> Option<(usize, String)> {
    for (i, a) in args.iter().enumerate() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return args
                .get(i + 1)
                .map(|v| (i, v.to_string_lossy().into_owned()));
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some((i, v.to_string()));
        }
    }
    None
}

/// Returns argv with the config file's entries appended as flags of the
/// subcommand that appears in argv.
pub fn merge(cmd: &Command, args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some((_, path)) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .with_context(|| format!("reading config {path}"))?;
    let entries = parse(&text)?;
    let Some(sub) = args
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find_map(|a| cmd.find_subcommand(a))
    else {
        return Ok(args);
    };
    let given: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut out = args.clone();
    for (key, value) in entries {
        let Some(arg) = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
        else {
            continue;
        };
        let flag = format!("--{key}");
        if given
            .iter()
            .any(|g| g == &flag || g.starts_with(&format!("{flag}=")))
        {
            continue;
        }
        match arg.get_action() {
            ArgAction::SetTrue => {
                if matches!(value.as_str(), "true" | "yes" | "1") {
                    out.push(flag.into());
                }
            }
            _ => {
                out.push(format!("{flag}={value}").into());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_quotes() {
        let m = parse("# params\nrect = 7,5,2,2\nk=1 # level\nformat = \"dot\"\n\n").unwrap();
        assert_eq!(m["rect"], "7,5,2,2");
        assert_eq!(m["k"], "1");
        assert_eq!(m["format"], "dot");
        assert!(parse("oops").is_err());
    }

    #[test]
    fn underscores_become_dashes() {
        let m = parse("t_half = 2").unwrap();
        assert_eq!(m["t-half"], "2");
    }
}
