//! Crossover/mutation probability advice: a fixed echo, a deterministic
//! rule on front diagnostics, and an LLM queried over a chat-completions
//! endpoint that falls back to the rule on any failure.

pub mod metrics;
pub mod wire;

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

pub use metrics::{max_spread_metric, spacing_metric};

/// Prompt template sent to the LLM; `{name}` placeholders are substituted.
pub const PROMPT_TEMPLATE: &str = include_str!("prompt.txt");

pub const P_C_RANGE: (f64, f64) = (0.1, 0.95);
pub const P_M_RANGE: (f64, f64) = (0.01, 0.9);
/// Longest `(SP, M3*)` history handed to an advisor.
pub const HISTORY_WINDOW: usize = 5;

/// Diagnostics of the current front plus the parameters in force.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdvisorInput {
    pub generation: usize,
    pub p_c: f64,
    pub p_m: f64,
    pub sp: f64,
    pub m3: f64,
    /// Per-objective `[f1, f2, f3]` minimum over the front.
    pub front_min: [f64; 3],
    pub front_max: [f64; 3],
    /// Previous `(SP, M3*)` pairs, oldest first, at most [`HISTORY_WINDOW`].
    pub history: Vec<(f64, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamSource {
    Llm,
    Fallback,
    Static,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamUpdate {
    pub p_c: f64,
    pub p_m: f64,
    pub source: ParamSource,
}

impl ParamUpdate {
    /// Clamps into the advisory bounds. NaN maps to the lower bound.
    pub fn clamped(p_c: f64, p_m: f64, source: ParamSource) -> Self {
        let fix = |v: f64, (lo, hi): (f64, f64)| if v.is_nan() { lo } else { v.clamp(lo, hi) };
        Self {
            p_c: fix(p_c, P_C_RANGE),
            p_m: fix(p_m, P_M_RANGE),
            source,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdvisorMode {
    Llm,
    #[default]
    Fallback,
    Static,
}

pub trait Advisor {
    /// Never fails: every error path degrades to a rule-based answer.
    fn advise(&mut self, input: &AdvisorInput) -> ParamUpdate;
}

/// Keeps the parameters as they are.
#[derive(Clone, Copy, Debug, Default)]
pub struct StaticAdvisor;

impl Advisor for StaticAdvisor {
    fn advise(&mut self, input: &AdvisorInput) -> ParamUpdate {
        ParamUpdate {
            p_c: input.p_c,
            p_m: input.p_m,
            source: ParamSource::Static,
        }
    }
}

/// Deterministic rule:
///
/// * SP at least 10% above its window mean while M3* moved by less than 5%
///   (front becoming uneven without widening): `p_m × 1.2`, `p_c × 0.95`;
/// * SP below its window mean while M3* grew: `p_m × 0.85`, `p_c × 1.05`;
/// * otherwise unchanged. The result is clamped.
pub fn fallback_rule(input: &AdvisorInput) -> ParamUpdate {
    let (mut p_c, mut p_m) = (input.p_c, input.p_m);
    if !input.history.is_empty() {
        let n = input.history.len() as f64;
        let sp_mean = input.history.iter().map(|h| h.0).sum::<f64>() / n;
        let m3_mean = input.history.iter().map(|h| h.1).sum::<f64>() / n;
        let sp_worse = input.sp > sp_mean && input.sp >= 1.1 * sp_mean;
        let m3_flat = input.m3 == m3_mean || (input.m3 - m3_mean).abs() < 0.05 * m3_mean.abs();
        if sp_worse && m3_flat {
            p_m *= 1.2;
            p_c *= 0.95;
        } else if input.sp < sp_mean && input.m3 > m3_mean {
            p_m *= 0.85;
            p_c *= 1.05;
        }
    }
    ParamUpdate::clamped(p_c, p_m, ParamSource::Fallback)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FallbackAdvisor;

impl Advisor for FallbackAdvisor {
    fn advise(&mut self, input: &AdvisorInput) -> ParamUpdate {
        fallback_rule(input)
    }
}

/// Transport failure reported by an endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointError(pub String);

impl core::fmt::Display for EndpointError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Something that answers a chat-completions request body with a response
/// body. Timeouts and retries are the implementor's business.
pub trait CompletionEndpoint {
    fn complete(&mut self, request_body: &str) -> Result<String, EndpointError>;
}

/// Queries an LLM each generation; any transport or parse failure yields
/// [`fallback_rule`] instead.
pub struct LlmAdvisor<E> {
    endpoint: E,
    model: String,
    /// Most recent failure, if the last call fell back.
    pub last_failure: Option<String>,
    pub llm_answers: usize,
    pub fallbacks: usize,
}

impl<E: CompletionEndpoint> LlmAdvisor<E> {
    pub fn new(endpoint: E, model: impl Into<String>) -> Self {
        Self {
            endpoint,
            model: model.into(),
            last_failure: None,
            llm_answers: 0,
            fallbacks: 0,
        }
    }

    pub fn endpoint(&self) -> &E {
        &self.endpoint
    }

    fn ask(&mut self, input: &AdvisorInput) -> Result<(f64, f64), String> {
        let body = wire::request_body(&self.model, &render_prompt(input));
        let reply = self
            .endpoint
            .complete(&body)
            .map_err(|e| format!("endpoint: {e}"))?;
        wire::parse_response(&reply).map_err(|e| format!("response: {e}"))
    }
}

impl<E: CompletionEndpoint> Advisor for LlmAdvisor<E> {
    fn advise(&mut self, input: &AdvisorInput) -> ParamUpdate {
        match self.ask(input) {
            Ok((p_c, p_m)) => {
                self.last_failure = None;
                self.llm_answers += 1;
                ParamUpdate::clamped(p_c, p_m, ParamSource::Llm)
            }
            Err(why) => {
                self.last_failure = Some(why);
                self.fallbacks += 1;
                fallback_rule(input)
            }
        }
    }
}

fn trend(now: f64, history: &[(f64, f64)], pick: fn(&(f64, f64)) -> f64) -> &'static str {
    match history.last().map(pick) {
        None => "n/a",
        Some(prev) if now > prev => "up",
        Some(prev) if now < prev => "down",
        Some(_) => "flat",
    }
}

/// [`PROMPT_TEMPLATE`] with every placeholder filled from `input`.
pub fn render_prompt(input: &AdvisorInput) -> String {
    let history: Vec<String> = input
        .history
        .iter()
        .map(|(sp, m3)| format!("({sp:.4}, {m3:.4})"))
        .collect();
    let history = if history.is_empty() {
        String::from("none")
    } else {
        history.join(", ")
    };
    let fields: [(&str, String); 14] = [
        ("generation", format!("{}", input.generation)),
        ("p_c", format!("{:.4}", input.p_c)),
        ("p_m", format!("{:.4}", input.p_m)),
        ("sp", format!("{:.4}", input.sp)),
        ("m3", format!("{:.4}", input.m3)),
        ("sp_trend", trend(input.sp, &input.history, |h| h.0).into()),
        ("m3_trend", trend(input.m3, &input.history, |h| h.1).into()),
        ("history", history),
        ("f1_min", format!("{:.4e}", input.front_min[0])),
        ("f1_max", format!("{:.4e}", input.front_max[0])),
        ("f2_min", format!("{:.4e}", input.front_min[1])),
        ("f2_max", format!("{:.4e}", input.front_max[1])),
        ("f3_min", format!("{:.4e}", input.front_min[2])),
        ("f3_max", format!("{:.4e}", input.front_max[2])),
    ];
    let mut out = String::from(PROMPT_TEMPLATE);
    for (key, value) in fields {
        out = out.replace(&format!("{{{key}}}"), &value);
    }
    out
}

/// Rolling `(SP, M3*)` window.
#[derive(Clone, Debug, Default)]
pub struct DiagnosticWindow(VecDeque<(f64, f64)>);

impl DiagnosticWindow {
    pub fn snapshot(&self) -> Vec<(f64, f64)> {
        self.0.iter().copied().collect()
    }

    pub fn push(&mut self, sp: f64, m3: f64) {
        if self.0.len() == HISTORY_WINDOW {
            self.0.pop_front();
        }
        self.0.push_back((sp, m3));
    }
}
