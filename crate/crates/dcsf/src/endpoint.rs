//! Blocking chat-completions client for the parameter advisor.

use std::time::Duration;

use dcsf_core::advisor::{CompletionEndpoint, EndpointError};

pub const URL_VAR: &str = "DCSF_LLM_URL";
pub const KEY_VAR: &str = "DCSF_LLM_KEY";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(20);

/// POSTs request bodies to a fixed URL with a bearer key, a whole-request
/// timeout and a bounded number of retries.
pub struct HttpEndpoint {
    agent: ureq::Agent,
    url: String,
    key: Option<String>,
    retries: u32,
}

impl HttpEndpoint {
    pub fn new(url: impl Into<String>, key: Option<String>, timeout: Duration, retries: u32) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .build()
            .into();
        Self {
            agent,
            url: url.into(),
            key,
            retries,
        }
    }

    /// Endpoint configured from the environment, `None` when no URL is set.
    pub fn from_env() -> Option<Self> {
        let url = std::env::var(URL_VAR).ok().filter(|u| !u.trim().is_empty())?;
        let key = std::env::var(KEY_VAR).ok().filter(|k| !k.is_empty());
        Some(Self::new(url, key, DEFAULT_TIMEOUT, 1))
    }

    pub fn url(&self) -> &str {
        &self.url
    }

    fn post_once(&self, body: &str) -> Result<String, ureq::Error> {
        let mut req = self
            .agent
            .post(&self.url)
            .header("Content-Type", "application/json");
        if let Some(key) = &self.key {
            req = req.header("Authorization", format!("Bearer {key}"));
        }
        req.send(body)?.into_body().read_to_string()
    }
}

impl CompletionEndpoint for HttpEndpoint {
    fn complete(&mut self, request_body: &str) -> Result<String, EndpointError> {
        let mut last = None;
        for _ in 0..=self.retries {
            match self.post_once(request_body) {
                Ok(text) => return Ok(text),
                Err(e) => last = Some(e),
            }
        }
        Err(EndpointError(last.map(|e| e.to_string()).unwrap_or_default()))
    }
}
