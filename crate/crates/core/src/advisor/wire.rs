//! Chat-completions request/response handling.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Serialize)]
struct Message<'a> {
    role: &'a str,
    content: &'a str,
}

#[derive(Serialize)]
struct Request<'a> {
    model: &'a str,
    messages: [Message<'a>; 2],
    temperature: f64,
}

const SYSTEM: &str = "You adjust evolutionary-algorithm parameters. Answer with a single JSON object.";

/// JSON body of a chat-completions request carrying `prompt`.
pub fn request_body(model: &str, prompt: &str) -> String {
    let req = Request {
        model,
        messages: [
            Message {
                role: "system",
                content: SYSTEM,
            },
            Message {
                role: "user",
                content: prompt,
            },
        ],
        temperature: 0.0,
    };
    serde_json::to_string(&req).expect("request serializes")
}

#[derive(Deserialize)]
struct Response {
    choices: Vec<Choice>,
}

#[derive(Deserialize)]
struct Choice {
    message: AssistantMessage,
}

#[derive(Deserialize)]
struct AssistantMessage {
    content: String,
}

/// Why a response body could not be turned into parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// Not a chat-completions response.
    Envelope(String),
    /// The assistant message holds no JSON object.
    NoObject,
    /// The first JSON object lacks a finite numeric `p_c` or `p_m`.
    Fields,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::Envelope(e) => write!(f, "unexpected response envelope: {e}"),
            Self::NoObject => f.write_str("no JSON object in the assistant message"),
            Self::Fields => f.write_str("p_c/p_m missing or not finite numbers"),
        }
    }
}

/// Assistant text of the first choice.
pub fn assistant_content(body: &str) -> Result<String, ParseError> {
    let resp: Response = serde_json::from_str(body).map_err(|e| ParseError::Envelope(e.to_string()))?;
    resp.choices
        .into_iter()
        .next()
        .map(|c| c.message.content)
        .ok_or_else(|| ParseError::Envelope("no choices".into()))
}

/// First complete JSON object embedded anywhere in `text`.
pub fn first_json_object(text: &str) -> Option<serde_json::Map<String, Value>> {
    for (i, _) in text.match_indices('{') {
        let mut stream = serde_json::Deserializer::from_str(&text[i..]).into_iter::<Value>();
        if let Some(Ok(Value::Object(map))) = stream.next() {
            return Some(map);
        }
    }
    None
}

/// Raw `(p_c, p_m)` proposed by a response body, before clamping.
pub fn parse_response(body: &str) -> Result<(f64, f64), ParseError> {
    let content = assistant_content(body)?;
    let obj = first_json_object(&content).ok_or(ParseError::NoObject)?;
    let num = |key: &str| obj.get(key).and_then(Value::as_f64).filter(|v| v.is_finite());
    match (num("p_c"), num("p_m")) {
        (Some(pc), Some(pm)) => Ok((pc, pm)),
        _ => Err(ParseError::Fields),
    }
}

/// A chat-completions body whose assistant message is `content`.
pub fn response_body(content: &str) -> String {
    serde_json::json!({
        "choices": [{ "index": 0, "message": { "role": "assistant", "content": content } }]
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extracts_object_from_chatter() {
        let body = response_body("Sure! Here you go: {\"p_c\": 0.7, \"p_m\": 0.5} hope it helps {\"x\":1}");
        assert_eq!(parse_response(&body), Ok((0.7, 0.5)));
    }

    #[test]
    fn skips_unbalanced_braces() {
        let body = response_body("{ oops {\"p_c\": 0.6, \"p_m\": 0.2}");
        assert_eq!(parse_response(&body), Ok((0.6, 0.2)));
    }

    #[test]
    fn rejects_partial_or_mistyped() {
        assert_eq!(
            parse_response(&response_body("{\"p_m\": 5.0}")),
            Err(ParseError::Fields)
        );
        assert_eq!(
            parse_response(&response_body("{\"p_c\": \"0.7\", \"p_m\": 0.5}")),
            Err(ParseError::Fields)
        );
        assert_eq!(
            parse_response(&response_body("no json here")),
            Err(ParseError::NoObject)
        );
        assert!(matches!(parse_response("<html>"), Err(ParseError::Envelope(_))));
        assert!(matches!(
            parse_response("{\"choices\": []}"),
            Err(ParseError::Envelope(_))
        ));
    }

    #[test]
    fn request_is_chat_completions() {
        let body = request_body("m", "hello \"world\"");
        let v: Value = serde_json::from_str(&body).unwrap();
        assert_eq!(v["model"], "m");
        assert_eq!(v["messages"][1]["role"], "user");
        assert_eq!(v["messages"][1]["content"], "hello \"world\"");
    }
}
