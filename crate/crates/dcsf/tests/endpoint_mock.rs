//! The HTTP endpoint against a scripted local server.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{SocketAddr, TcpListener};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::Duration;

use dcsf::endpoint::HttpEndpoint;
use dcsf_core::advisor::wire::{parse_response, response_body};
use dcsf_core::advisor::{Advisor, AdvisorInput, CompletionEndpoint, LlmAdvisor, ParamSource};

enum Reply {
    Ok(String),
    Status(u16),
    Stall(Duration),
}

struct Received {
    authorization: Option<String>,
    body: String,
}

/// Serves one scripted reply per connection, then stops accepting.
fn serve(script: Vec<Reply>) -> (SocketAddr, Arc<Mutex<Vec<Received>>>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let log = Arc::new(Mutex::new(Vec::new()));
    let seen = Arc::clone(&log);
    thread::spawn(move || {
        for reply in script {
            let Ok((stream, _)) = listener.accept() else {
                return;
            };
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut len = 0;
            let mut auth = None;
            loop {
                let mut line = String::new();
                if reader.read_line(&mut line).unwrap_or(0) == 0 || line == "\r\n" {
                    break;
                }
                let lower = line.to_ascii_lowercase();
                if let Some(v) = lower.strip_prefix("content-length:") {
                    len = v.trim().parse().unwrap();
                }
                if lower.starts_with("authorization:") {
                    auth = Some(line["authorization:".len()..].trim().to_string());
                }
            }
            let mut body = vec![0; len];
            reader.read_exact(&mut body).unwrap();
            seen.lock().unwrap().push(Received {
                authorization: auth,
                body: String::from_utf8(body).unwrap(),
            });
            let mut stream = stream;
            let (status, text) = match reply {
                Reply::Ok(text) => (200, text),
                Reply::Status(code) => (code, String::from("{}")),
                Reply::Stall(d) => {
                    thread::sleep(d);
                    continue;
                }
            };
            let _ = write!(
                stream,
                "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{text}",
                text.len()
            );
        }
    });
    (addr, log)
}

fn url(addr: SocketAddr) -> String {
    format!("http://{addr}/v1/chat/completions")
}

fn input() -> AdvisorInput {
    AdvisorInput {
        generation: 3,
        p_c: 0.8,
        p_m: 0.4,
        sp: 0.2,
        m3: 1.5,
        front_min: [1e7, 1e5, 1e4],
        front_max: [5e7, 2e6, 5e4],
        history: vec![(0.25, 1.5), (0.22, 1.5)],
    }
}

#[test]
fn passes_the_answer_through() {
    let answer = response_body(r#"{"p_c": 0.7, "p_m": 0.25}"#);
    let (addr, log) = serve(vec![Reply::Ok(answer.clone())]);
    let mut ep = HttpEndpoint::new(url(addr), Some("sk-test".into()), Duration::from_secs(5), 0);
    let got = ep.complete(r#"{"hello":1}"#).unwrap();
    assert_eq!(got, answer);
    assert_eq!(parse_response(&got).unwrap(), (0.7, 0.25));
    let log = log.lock().unwrap();
    assert_eq!(log[0].body, r#"{"hello":1}"#);
    assert_eq!(log[0].authorization.as_deref(), Some("Bearer sk-test"));
}

#[test]
fn retries_after_a_server_error() {
    let answer = response_body(r#"{"p_c": 0.6, "p_m": 0.3}"#);
    let (addr, log) = serve(vec![Reply::Status(500), Reply::Ok(answer)]);
    let ep = HttpEndpoint::new(url(addr), None, Duration::from_secs(5), 1);
    let mut advisor = LlmAdvisor::new(ep, "test-model");
    let update = advisor.advise(&input());
    assert_eq!(update.source, ParamSource::Llm);
    assert_eq!((update.p_c, update.p_m), (0.6, 0.3));
    let log = log.lock().unwrap();
    assert_eq!(log.len(), 2);
    assert!(log[1].authorization.is_none());
    let request: serde_json::Value = serde_json::from_str(&log[1].body).unwrap();
    assert_eq!(request["model"], "test-model");
    assert!(request["messages"][1]["content"]
        .as_str()
        .unwrap()
        .contains("0.8"));
}

#[test]
fn gives_up_after_the_retry_budget() {
    let (addr, log) = serve(vec![Reply::Status(503), Reply::Status(503)]);
    let mut ep = HttpEndpoint::new(url(addr), None, Duration::from_secs(5), 1);
    assert!(ep.complete("{}").is_err());
    assert_eq!(log.lock().unwrap().len(), 2);
}

#[test]
fn timeout_falls_back() {
    let (addr, _) = serve(vec![Reply::Stall(Duration::from_secs(3))]);
    let ep = HttpEndpoint::new(url(addr), None, Duration::from_millis(300), 0);
    let mut advisor = LlmAdvisor::new(ep, "m");
    let started = std::time::Instant::now();
    let update = advisor.advise(&input());
    assert!(started.elapsed() < Duration::from_secs(2));
    assert_eq!(update.source, ParamSource::Fallback);
    assert!(advisor.last_failure.unwrap().starts_with("endpoint"));
}

#[test]
fn unparseable_answer_falls_back() {
    let (addr, _) = serve(vec![Reply::Ok(response_body("raise p_m a little"))]);
    let ep = HttpEndpoint::new(url(addr), None, Duration::from_secs(5), 0);
    let mut advisor = LlmAdvisor::new(ep, "m");
    assert_eq!(advisor.advise(&input()).source, ParamSource::Fallback);
    assert_eq!((advisor.llm_answers, advisor.fallbacks), (0, 1));
}

#[test]
fn refused_connection_is_an_error() {
    let addr = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap();
    let mut ep = HttpEndpoint::new(url(addr), None, Duration::from_secs(2), 0);
    assert!(ep.complete("{}").is_err());
}
