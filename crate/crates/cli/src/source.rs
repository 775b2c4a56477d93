use std::fs;

use revring::format::{parse_presentation, parse_skew};
use revring::presets::{self, Preset};
use revring::rewrite::Strategy;
use revring::{DegreeFunction, ReductionSystem, ReversingContext};

use crate::Failure;

pub const STEP_CAP_VAR: &str = "REVRING_STEP_CAP";

/// `preset:NAME`, or a path to a `.alg` or `.skw` file.
pub fn load(spec: &str, allow_degenerate: bool) -> Result<Preset, Failure> {
    let preset = match spec.strip_prefix("preset:") {
        Some(name) => presets::by_name(name, allow_degenerate).map_err(|e| Failure::Usage(e.to_string()))?,
        None => {
            let text = fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
            let wrap = |e: revring::ParseError| Failure::Usage(format!("{spec}:{e}"));
            if spec.ends_with(".skw") {
                Preset::Skew(parse_skew(&text).map_err(wrap)?)
            } else {
                Preset::System(parse_presentation(&text).map_err(wrap)?)
            }
        }
    };
    Ok(match preset {
        Preset::System(mut s) => {
            if let Some(cap) = step_cap()? {
                s.step_cap = cap;
            }
            Preset::System(s)
        }
        other => other,
    })
}

fn step_cap() -> Result<Option<usize>, Failure> {
    match std::env::var(STEP_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{STEP_CAP_VAR} must be a positive integer, got '{v}'"))),
        Err(_) => Ok(None),
    }
}

pub fn system(spec: &str, allow_degenerate: bool) -> Result<ReductionSystem, Failure> {
    match load(spec, allow_degenerate)? {
        Preset::System(s) => Ok(s),
        Preset::Skew(_) => Err(Failure::Usage(format!("{spec} is a skew context, not a presentation"))),
    }
}

pub fn skew(spec: &str, allow_degenerate: bool) -> Result<ReversingContext, Failure> {
    match load(spec, allow_degenerate)? {
        Preset::Skew(c) => Ok(c),
        Preset::System(_) => Err(Failure::Usage(format!("{spec} is a presentation, not a skew context"))),
    }
}

/// `x1:0,x2:1,x3:1,Q:0` (commas or spaces); unnamed generators keep degree
/// 1 and the parameter 0. Without text, the system's own order supplies the
/// degrees.
pub fn degrees(sys: &ReductionSystem, text: Option<&str>) -> Result<DegreeFunction, Failure> {
    let Some(text) = text else {
        return Ok(sys.order().map(|o| o.degree.clone()).unwrap_or_else(|| DegreeFunction::unit(sys.alg.alphabet.len())));
    };
    let mut d = DegreeFunction::unit(sys.alg.alphabet.len());
    for item in text.split([',', ' ']).filter(|s| !s.is_empty()) {
        let (name, k) = item.split_once(':').ok_or_else(|| Failure::Usage(format!("expected name:degree, got '{item}'")))?;
        let k: u32 = k.parse().map_err(|_| Failure::Usage(format!("bad degree in '{item}'")))?;
        if sys.alg.ring.has_param() && name == sys.alg.ring.param {
            d.parameter_degree = k;
        } else {
            let g = sys.alg.alphabet.index(name).map_err(|e| Failure::Usage(e.to_string()))?;
            d.generator_degrees[g as usize] = k;
        }
    }
    Ok(d)
}

/// `largest`, `leftward` or `random:SEED`.
pub fn strategy(text: &str) -> Result<Strategy, String> {
    match text {
        "largest" => Ok(Strategy::LeftmostLargest),
        "leftward" => Ok(Strategy::LeftmostLeftward),
        _ => text
            .strip_prefix("random:")
            .and_then(|s| s.parse().ok())
            .map(Strategy::Random)
            .ok_or_else(|| format!("unknown strategy '{text}' (largest, leftward, random:SEED)")),
    }
}
