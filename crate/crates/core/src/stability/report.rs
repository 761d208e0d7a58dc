use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::control::ControlFunction;
use super::fit::HypothesisCheck;
use crate::error::{Error, Result};
use crate::fixpoint::{Branch, GenMetricValue};
use crate::funceq::Coupling;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    HypothesisFailure,
    CheckpointFailure,
    BoundFailure,
    QuadraticityFailure,
    NonConvergence,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Self::Pass
    }

    /// 0 on pass, 3 on non-convergence, 1 on any other failed check.
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Pass => 0,
            Self::NonConvergence => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub c: Coupling,
    pub function: String,
    pub control: ControlFunction,
    pub j: Branch,
    pub lipschitz: f64,
    pub printed_lipschitz: f64,
    pub empirical_lipschitz: Option<f64>,
    pub rate_matches: bool,
    pub d_f_tf: GenMetricValue,
    /// `L^((j+1)/2) / c^2`.
    pub checkpoint: f64,
    pub checkpoint_pass: bool,
    pub hypothesis: HypothesisCheck,
    pub quadraticity_max: Option<f64>,
    pub quadraticity_pass: bool,
    pub start_independent: Option<bool>,
    pub bound_routes_agree: bool,
    pub iterations: Option<u32>,
    pub grid_points: usize,
    pub tol: f64,
    pub max_iter: u32,
    pub seed: u64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub n: u32,
    /// `d(T^n f, T^(n+1) f)`.
    pub distance: GenMetricValue,
    /// `distance / previous distance`, when both are finite and positive.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: f64,
    pub f: f64,
    pub q: f64,
    pub abs_err: f64,
    pub bound: f64,
    /// `d(f, Tf) / (1 - L) * psi(x)`.
    pub a_priori_bound: GenMetricValue,
    pub pass: bool,
    pub a_priori_pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub summary: ReportSummary,
    pub iterations: Vec<IterationRecord>,
    pub points: Vec<PointRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum Line {
    Summary(ReportSummary),
    Iteration(IterationRecord),
    Point(PointRecord),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    JsonLines,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json-lines" | "jsonl" | "json" => Ok(Self::JsonLines),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!("unknown output format '{other}' (json-lines | csv)"))),
        }
    }
}

fn sorted_line<T: Serialize>(value: &T) -> Result<String> {
    // serde_json::Value keeps object keys in a BTreeMap, so this sorts them
    Ok(serde_json::to_value(value)?.to_string())
}

impl StabilityReport {
    pub fn verdict(&self) -> Verdict {
        self.summary.verdict
    }

    /// One summary line, then one line per iteration, then one per grid
    /// point, each a JSON object with sorted keys.
    pub fn to_json_lines(&self) -> Result<String> {
        let mut out = String::new();
        let lines = std::iter::once(Line::Summary(self.summary.clone()))
            .chain(self.iterations.iter().copied().map(Line::Iteration))
            .chain(self.points.iter().copied().map(Line::Point));
        for line in lines {
            out.push_str(&sorted_line(&line)?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let mut summary = None;
        let mut iterations = Vec::new();
        let mut points = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            let line: Line = serde_json::from_str(raw)
                .map_err(|e| Error::Parse(format!("report line {}: {e}", i + 1)))?;
            match line {
                Line::Summary(s) if summary.is_none() => summary = Some(s),
                Line::Summary(_) => return Err(Error::Parse("report has two summary lines".into())),
                Line::Iteration(r) => iterations.push(r),
                Line::Point(p) => points.push(p),
            }
        }
        let summary = summary.ok_or_else(|| Error::Parse("report has no summary line".into()))?;
        Ok(Self {
            summary,
            iterations,
            points,
        })
    }

    /// The per-point table with a header row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        if self.points.is_empty() {
            writer.write_record(["x", "f", "q", "abs_err", "bound", "a_priori_bound", "pass", "a_priori_pass"])?;
        }
        for p in &self.points {
            writer.serialize(p)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    /// Human-readable rendering for terminals.
    pub fn render(&self) -> String {
        let s = &self.summary;
        let opt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.6e}"));
        let mut out = String::new();
        let _ = writeln!(out, "function      {}", s.function);
        let _ = writeln!(out, "control       {}", s.control);
        let _ = writeln!(out, "c             {}", s.c);
        let _ = writeln!(out, "j             {}", s.j.sign());
        let _ = writeln!(
            out,
            "L             {} (measured {}, printed variant {})",
            s.lipschitz,
            opt(s.empirical_lipschitz),
            s.printed_lipschitz
        );
        let _ = writeln!(
            out,
            "d(f, Tf)      {} <= {} : {}",
            s.d_f_tf,
            s.checkpoint,
            yes_no(s.checkpoint_pass)
        );
        let _ = writeln!(
            out,
            "hypothesis    {} triples, max |Delta_f|/phi = {}, {} violations",
            s.hypothesis.triples,
            opt(s.hypothesis.max_ratio),
            s.hypothesis.violations
        );
        let _ = writeln!(out, "max |Delta_Q| {}", opt(s.quadraticity_max));
        let _ = writeln!(
            out,
            "iterations    {}",
            s.iterations.map_or("-".to_string(), |n| n.to_string())
        );
        let _ = writeln!(out, "verdict       {:?}", s.verdict);
        if !self.points.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:>12} {:>14} {:>14} {:>12} {:>12} {:>5}",
                "x", "f(x)", "Q(x)", "|f-Q|", "bound", "ok"
            );
            for p in &self.points {
                let _ = writeln!(
                    out,
                    "{:>12.6} {:>14.8} {:>14.8} {:>12.4e} {:>12.4e} {:>5}",
                    p.x,
                    p.f,
                    p.q,
                    p.abs_err,
                    p.bound,
                    yes_no(p.pass)
                );
            }
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
