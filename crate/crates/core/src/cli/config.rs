//! Experiment files: one `key = value` per line, `#` starts a comment.
//!
//! ```text
//! c = 2
//! function.kind = quadpow          # polynomial | quadpow | quadnoise
//! function.params = 1, 0.1, 1
//! control.kind = power             # power | constant
//! control.params = fit, 1          # eps, p  (eps may be `fit`)
//! branch = auto                    # auto | +1 | -1
//! grid.scale = 1
//! grid.m_min = -3
//! grid.m_max = 3
//! grid.origin = true
//! tol = 1e-12
//! max_iter = 60
//! seed = 0
//! output.format = json-lines       # json-lines | csv
//! output.path = report.jsonl
//! ```
//!
//! For `control.kind = constant` the parameter is `delta`, `fit`, or
//! `analytic` (the worst-case residual of a `quadnoise` perturbation).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fixpoint::{Branch, GridSpec};
use crate::funceq::{parse_function, Coupling};
use crate::stability::{BranchChoice, ControlFamily, ControlFunction, ControlSpec, OutputFormat, StabilityConfig};

const KEYS: [&str; 16] = [
    "c",
    "function.kind",
    "function.params",
    "control.kind",
    "control.params",
    "branch",
    "grid.scale",
    "grid.m_min",
    "grid.m_max",
    "grid.origin",
    "tol",
    "max_iter",
    "seed",
    "output.format",
    "output.path",
    "name",
];

#[derive(Debug, Clone)]
pub struct ExperimentFile {
    pub name: Option<String>,
    pub config: StabilityConfig,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

fn entries(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(Error::Config(format!("line {}: unknown key '{key}'", i + 1)));
        }
        if map.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key '{key}'", i + 1)));
        }
    }
    Ok(map)
}

fn required<'a>(map: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str> {
    map.get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::Config(format!("missing key '{key}'")))
}

fn parsed<T: FromStr>(map: &BTreeMap<String, String>, key: &str, default: T) -> Result<T> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| Error::Config(format!("{key}: cannot parse '{v}'"))),
    }
}

fn list(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn number(text: &str, what: &str) -> Result<f64> {
    text.parse()
        .map_err(|_| Error::Config(format!("{what}: '{text}' is not a number")))
}

fn control_spec(kind: &str, params: &str) -> Result<ControlSpec> {
    let args = list(params);
    match (kind, args.as_slice()) {
        ("power", [eps, p]) => {
            let family = ControlFamily::power(number(p, "control p")?)?;
            if *eps == "fit" {
                Ok(ControlSpec::Fit(family))
            } else {
                Ok(ControlSpec::Given(family.with_parameter(number(eps, "control eps")?)?))
            }
        }
        ("power", _) => Err(Error::Config("power control takes `eps, p`".into())),
        ("constant", ["fit"]) => Ok(ControlSpec::Fit(ControlFamily::Constant)),
        ("constant", ["analytic"]) => Ok(ControlSpec::NoiseCeiling),
        ("constant", [delta]) => Ok(ControlSpec::Given(ControlFunction::constant(number(
            delta,
            "control delta",
        )?)?)),
        ("constant", _) => Err(Error::Config("constant control takes `delta`".into())),
        (other, _) => Err(Error::Config(format!("unknown control kind '{other}' (power | constant)"))),
    }
}

fn branch_choice(text: &str) -> Result<BranchChoice> {
    match text {
        "auto" => Ok(BranchChoice::Auto),
        "+1" | "1" => Ok(BranchChoice::Fixed(Branch::Dilate)),
        "-1" => Ok(BranchChoice::Fixed(Branch::Contract)),
        other => Err(Error::Config(format!("branch must be auto, +1 or -1 (got '{other}')"))),
    }
}

pub fn parse_experiment(text: &str) -> Result<ExperimentFile> {
    let map = entries(text)?;
    let c = Coupling::new(
        required(&map, "c")?
            .parse()
            .map_err(|_| Error::Config("c must be an integer".into()))?,
    )?;

    let params = required(&map, "function.params")?;
    let function = match required(&map, "function.kind")? {
        "polynomial" => parse_function(params)?,
        kind @ ("quadpow" | "quadnoise") => parse_function(&format!("{kind}({params})"))?,
        other => {
            return Err(Error::Config(format!(
                "unknown function kind '{other}' (polynomial | quadpow | quadnoise)"
            )))
        }
    };

    let control = control_spec(required(&map, "control.kind")?, required(&map, "control.params")?)?;
    let branch = branch_choice(map.get("branch").map_or("auto", String::as_str))?;
    let grid = GridSpec::dyadic(
        parsed(&map, "grid.scale", 1.0)?,
        parsed(&map, "grid.m_min", -3)?,
        parsed(&map, "grid.m_max", 3)?,
        parsed(&map, "grid.origin", true)?,
    )?;

    let mut config = StabilityConfig::new(c, function, control, grid);
    config.branch = branch;
    config.tol = parsed(&map, "tol", config.tol)?;
    config.max_iter = parsed(&map, "max_iter", config.max_iter)?;
    config.seed = parsed(&map, "seed", 0)?;
    if config.tol.is_nan() || config.tol <= 0.0 || config.max_iter < 1 {
        return Err(Error::Config("need tol > 0 and max_iter >= 1".into()));
    }
    Ok(ExperimentFile {
        name: map.get("name").cloned(),
        config,
        format: map
            .get("output.format")
            .map_or(Ok(OutputFormat::JsonLines), |s| s.parse())?,
        output: map.get("output.path").map(PathBuf::from),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P1: &str = "\
# linear perturbation
c = 2
function.kind = quadpow
function.params = 1, 0.1, 1
control.kind = power
control.params = fit, 1
tol = 1e-12
max_iter = 60
";

    #[test]
    fn parses_a_minimal_file() {
        let file = parse_experiment(P1).unwrap();
        assert_eq!(file.config.c.get(), 2);
        assert_eq!(file.config.tol, 1e-12);
        assert_eq!(file.config.branch, BranchChoice::Auto);
        assert_eq!(file.format, OutputFormat::JsonLines);
        assert!(matches!(file.config.control, ControlSpec::Fit(ControlFamily::Power { p }) if p == 1.0));
        assert_eq!(file.config.grid.points().len(), 14);
    }

    #[test]
    fn rejects_bad_files() {
        let p2 = P1.replace("fit, 1", "fit, 2");
        assert!(parse_experiment(&p2).unwrap_err().to_string().contains("p != 2"));
        assert!(parse_experiment(&P1.replace("c = 2", "c = 1")).is_err());
        assert!(parse_experiment(&format!("{P1}colour = red\n")).is_err());
        assert!(parse_experiment(&format!("{P1}c = 3\n")).is_err());
        assert!(parse_experiment(&P1.replace("c = 2\n", "")).is_err());
        assert!(parse_experiment(&format!("{P1}branch = 0\n")).is_err());
        assert!(parse_experiment(&P1.replace("quadpow", "sine")).is_err());
    }

    #[test]
    fn constant_controls() {
        let text = "c = -3\nfunction.kind = quadnoise\nfunction.params = 1, 0.01, 5\ncontrol.kind = constant\ncontrol.params = analytic\n";
        let file = parse_experiment(text).unwrap();
        assert_eq!(file.config.control, ControlSpec::NoiseCeiling);
        let fixed = text.replace("analytic", "0.5");
        assert_eq!(
            parse_experiment(&fixed).unwrap().config.control,
            ControlSpec::Given(ControlFunction::Constant { delta: 0.5 })
        );
    }
}
