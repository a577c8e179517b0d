//! Manage an external SMT-LIB solver process over stdin/stdout.
//!
//! The session speaks plain SMT-LIB 2.6 text with `:print-success` on, so
//! every command is acknowledged and solver diagnostics surface verbatim.
//! Values are extracted exclusively through `get-value` queries; `get-model`
//! output is solver-internal and never requested.

use crate::logic::{
    print_formula, print_symbol, print_term, Formula, Signature, Term, Vocab, WellFormedError,
};
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{Receiver, RecvTimeoutError};
use std::time::{Duration, Instant};

#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error("failed to spawn solver {program}: {source}")]
    Spawn {
        program: String,
        #[source]
        source: std::io::Error,
    },
    #[error("solver rejected a command: {0}")]
    Rejected(String),
    #[error("unexpected solver reply: {0}")]
    Protocol(String),
    #[error("solver session is no longer usable")]
    SessionDead,
    #[error("solver did not reply within the deadline")]
    Deadline,
    #[error("pop with no matching push")]
    PopAtZero,
    #[error("get-value requires a preceding sat answer")]
    NoModel,
    #[error(transparent)]
    WellFormed(#[from] WellFormedError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, SolverError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown { timed_out: bool },
}

impl Verdict {
    pub fn is_sat(self) -> bool {
        self == Verdict::Sat
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Program and arguments, e.g. `["z3", "-in", "-smt2"]`.
    pub command: Vec<String>,
    /// Per-check timeout in milliseconds; must be positive.
    pub timeout_ms: u64,
    /// Logic to declare with set-logic, when given.
    pub logic: Option<String>,
    /// Append every command sent to this file.
    pub transcript: Option<PathBuf>,
}

impl SolverConfig {
    pub fn new(command: Vec<String>) -> Self {
        SolverConfig { command, timeout_ms: 60_000, logic: None, transcript: None }
    }

    pub fn with_timeout(mut self, ms: u64) -> Self {
        self.timeout_ms = ms;
        self
    }
}

/// A stateful conversation with one solver process. Single-owner: exactly
/// one caller issues commands; distinct sessions may run in parallel.
pub struct SolverSession {
    child: Child,
    stdin: Option<ChildStdin>,
    replies: Receiver<String>,
    vocab_stack: Vec<Vocab>,
    depth: usize,
    check_sat_calls: u64,
    get_value_calls: u64,
    last_check_sat: bool,
    dead: bool,
    transcript: Option<File>,
    check_timeout: Duration,
    command_timeout: Duration,
}

impl SolverSession {
    /// Spawn the solver and emit the option prologue; no declarations yet.
    pub fn open(cfg: &SolverConfig) -> Result<SolverSession> {
        assert!(cfg.timeout_ms > 0, "per-check timeout must be positive");
        let program = cfg.command.first().cloned().unwrap_or_default();
        if program.is_empty() {
            return Err(SolverError::Spawn {
                program: "<empty>".to_string(),
                source: std::io::Error::new(std::io::ErrorKind::InvalidInput, "empty command"),
            });
        }
        let mut child = Command::new(&program)
            .args(&cfg.command[1..])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|source| SolverError::Spawn { program: program.clone(), source })?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = std::sync::mpsc::channel();
        std::thread::spawn(move || read_replies(stdout, tx));
        let transcript = match &cfg.transcript {
            Some(path) => Some(File::options().create(true).append(true).open(path)?),
            None => None,
        };
        let mut session = SolverSession {
            child,
            stdin: Some(stdin),
            replies: rx,
            vocab_stack: vec![Vocab::default()],
            depth: 0,
            check_sat_calls: 0,
            get_value_calls: 0,
            last_check_sat: false,
            dead: false,
            transcript,
            check_timeout: Duration::from_millis(cfg.timeout_ms.saturating_mul(2).saturating_add(2_000)),
            command_timeout: Duration::from_millis(cfg.timeout_ms.max(10_000)),
        };
        // A fresh process does not need the reset, but it makes concatenated
        // transcripts replayable into a single solver.
        session.send("(reset)")?;
        session.command("(set-option :print-success true)")?;
        session.command("(set-option :produce-models true)")?;
        session.command(&format!("(set-option :timeout {})", cfg.timeout_ms))?;
        if let Some(logic) = &cfg.logic {
            session.command(&format!("(set-logic {logic})"))?;
        }
        Ok(session)
    }

    /// Spawn and declare a whole signature.
    pub fn open_with_signature(cfg: &SolverConfig, sig: &Signature) -> Result<SolverSession> {
        let mut s = SolverSession::open(cfg)?;
        s.declare_signature(sig)?;
        Ok(s)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn check_sat_calls(&self) -> u64 {
        self.check_sat_calls
    }

    pub fn get_value_calls(&self) -> u64 {
        self.get_value_calls
    }

    pub fn vocab(&self) -> &Vocab {
        self.vocab_stack.last().unwrap()
    }

    fn vocab_mut(&mut self) -> &mut Vocab {
        self.vocab_stack.last_mut().unwrap()
    }

    fn send(&mut self, line: &str) -> Result<()> {
        if self.dead {
            return Err(SolverError::SessionDead);
        }
        if let Some(t) = &mut self.transcript {
            let _ = writeln!(t, "{line}");
        }
        let stdin = self.stdin.as_mut().ok_or(SolverError::SessionDead)?;
        if writeln!(stdin, "{line}").and_then(|_| stdin.flush()).is_err() {
            self.dead = true;
            return Err(SolverError::SessionDead);
        }
        Ok(())
    }

    fn recv(&mut self, timeout: Duration) -> Result<String> {
        match self.replies.recv_timeout(timeout) {
            Ok(reply) => Ok(reply),
            Err(RecvTimeoutError::Timeout) => {
                self.kill();
                Err(SolverError::SessionDead)
            }
            Err(RecvTimeoutError::Disconnected) => {
                self.dead = true;
                Err(SolverError::SessionDead)
            }
        }
    }

    fn kill(&mut self) {
        self.dead = true;
        let _ = self.child.kill();
        let _ = self.child.wait();
    }

    /// Send a command and require an acknowledgement.
    fn command(&mut self, line: &str) -> Result<()> {
        self.send(line)?;
        let reply = self.recv(self.command_timeout)?;
        match reply.as_str() {
            "success" | "unsupported" => Ok(()),
            other => Err(SolverError::Rejected(strip_error(other))),
        }
    }

    pub fn declare_signature(&mut self, sig: &Signature) -> Result<()> {
        let sorts: Vec<String> = sig.sorts().map(String::from).collect();
        for s in sorts {
            self.declare_sort(&s)?;
        }
        for (name, d) in sig.funcs().map(|(n, d)| (n.to_string(), d.clone())).collect::<Vec<_>>() {
            self.declare_fun(&name, &d.args, Some(&d.result))?;
        }
        for (name, d) in sig.preds().map(|(n, d)| (n.to_string(), d.clone())).collect::<Vec<_>>() {
            self.declare_fun(&name, &d.args, None)?;
        }
        Ok(())
    }

    pub fn declare_sort(&mut self, name: &str) -> Result<()> {
        self.command(&format!("(declare-sort {} 0)", print_symbol(name)))?;
        self.vocab_mut().sorts.insert(name.to_string());
        self.last_check_sat = false;
        Ok(())
    }

    /// Declare an enumeration datatype with nullary constructors.
    pub fn declare_enum_sort(&mut self, name: &str, ctors: &[String]) -> Result<()> {
        let cs: Vec<String> = ctors.iter().map(|c| format!("({})", print_symbol(c))).collect();
        self.command(&format!(
            "(declare-datatypes (({} 0)) (({})))",
            print_symbol(name),
            cs.join(" ")
        ))?;
        self.vocab_mut().sorts.insert(name.to_string());
        for c in ctors {
            self.vocab_mut().add_const(c, name);
        }
        self.last_check_sat = false;
        Ok(())
    }

    pub fn declare_const(&mut self, name: &str, sort: &str) -> Result<()> {
        self.command(&format!("(declare-const {} {})", print_symbol(name), print_symbol(sort)))?;
        self.vocab_mut().add_const(name, sort);
        self.last_check_sat = false;
        Ok(())
    }

    /// `result = None` declares a predicate (Bool result).
    pub fn declare_fun(&mut self, name: &str, args: &[String], result: Option<&str>) -> Result<()> {
        let rendered_args: Vec<String> = args.iter().map(|s| print_symbol(s)).collect();
        self.command(&format!(
            "(declare-fun {} ({}) {})",
            print_symbol(name),
            rendered_args.join(" "),
            result.map_or("Bool".to_string(), print_symbol)
        ))?;
        match result {
            Some(r) => {
                self.vocab_mut().funcs.insert(
                    name.to_string(),
                    crate::logic::FuncDecl { args: args.to_vec(), result: r.to_string() },
                );
            }
            None => {
                self.vocab_mut()
                    .preds
                    .insert(name.to_string(), crate::logic::PredDecl { args: args.to_vec() });
            }
        }
        self.last_check_sat = false;
        Ok(())
    }

    /// Assert one closed, well-sorted sentence.
    pub fn assert(&mut self, f: &Formula) -> Result<()> {
        self.vocab().check_sentence(f)?;
        self.command(&format!("(assert {})", print_formula(f)))?;
        self.last_check_sat = false;
        Ok(())
    }

    pub fn assert_sentences<'a>(&mut self, fs: impl IntoIterator<Item = &'a Formula>) -> Result<()> {
        for f in fs {
            self.assert(f)?;
        }
        Ok(())
    }

    pub fn push(&mut self) -> Result<()> {
        self.command("(push 1)")?;
        self.depth += 1;
        let top = self.vocab().clone();
        self.vocab_stack.push(top);
        self.last_check_sat = false;
        Ok(())
    }

    pub fn pop(&mut self) -> Result<()> {
        if self.depth == 0 {
            return Err(SolverError::PopAtZero);
        }
        self.command("(pop 1)")?;
        self.depth -= 1;
        self.vocab_stack.pop();
        self.last_check_sat = false;
        Ok(())
    }

    pub fn check_sat(&mut self) -> Result<Verdict> {
        self.check_sat_calls += 1;
        self.last_check_sat = false;
        let started = Instant::now();
        self.send("(check-sat)")?;
        let reply = match self.recv(self.check_timeout) {
            Ok(r) => r,
            Err(SolverError::SessionDead) => {
                // Deadline expired and the process was killed: a timeout, not
                // an unsat answer.
                return Ok(Verdict::Unknown { timed_out: true });
            }
            Err(e) => return Err(e),
        };
        match reply.as_str() {
            "sat" => {
                self.last_check_sat = true;
                Ok(Verdict::Sat)
            }
            "unsat" => Ok(Verdict::Unsat),
            "unknown" => {
                let timed_out = started.elapsed() >= self.check_timeout / 2;
                Ok(Verdict::Unknown { timed_out })
            }
            other => Err(SolverError::Rejected(strip_error(other))),
        }
    }

    /// Truth value of a closed quantifier-free formula in the current model.
    pub fn get_value_bool(&mut self, f: &Formula) -> Result<bool> {
        if !self.last_check_sat {
            return Err(SolverError::NoModel);
        }
        self.get_value_calls += 1;
        self.send(&format!("(get-value ({}))", print_formula(f)))?;
        let reply = self.recv(self.command_timeout)?;
        match last_atom(&reply).as_deref() {
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            _ => Err(SolverError::Protocol(strip_error(&reply))),
        }
    }

    /// Value of a closed term whose sort has named values (enum sorts); the
    /// reply is the value's symbol.
    pub fn get_value_symbol(&mut self, t: &Term) -> Result<String> {
        if !self.last_check_sat {
            return Err(SolverError::NoModel);
        }
        self.get_value_calls += 1;
        self.send(&format!("(get-value ({}))", print_term(t)))?;
        let reply = self.recv(self.command_timeout)?;
        match last_atom(&reply) {
            Some(sym) if !reply.trim_start().starts_with("(error") => Ok(sym),
            _ => Err(SolverError::Protocol(strip_error(&reply))),
        }
    }
}

impl Drop for SolverSession {
    fn drop(&mut self) {
        if !self.dead {
            let _ = self.send("(exit)");
        }
        drop(self.stdin.take());
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// Reader thread: chunk solver output into balanced replies.
fn read_replies(stdout: std::process::ChildStdout, tx: std::sync::mpsc::Sender<String>) {
    use std::io::BufRead;
    let reader = std::io::BufReader::new(stdout);
    let mut buf = String::new();
    for line in reader.lines() {
        let Ok(line) = line else { break };
        buf.push_str(&line);
        buf.push('\n');
        loop {
            let trimmed = buf.trim_start();
            if trimmed.is_empty() {
                buf.clear();
                break;
            }
            match extract_reply(trimmed) {
                Some((reply, rest_at)) => {
                    let rest = trimmed[rest_at..].to_string();
                    if tx.send(reply).is_err() {
                        return;
                    }
                    buf = rest;
                }
                None => break,
            }
        }
    }
}

/// Take one balanced form off the front; returns (form, offset of remainder).
fn extract_reply(s: &str) -> Option<(String, usize)> {
    let bytes = s.as_bytes();
    if bytes[0] == b'(' {
        let mut depth = 0usize;
        let mut in_bars = false;
        let mut in_string = false;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'|' if !in_string => in_bars = !in_bars,
                b'"' if !in_bars => in_string = !in_string,
                b'(' if !in_bars && !in_string => depth += 1,
                b')' if !in_bars && !in_string => {
                    depth -= 1;
                    if depth == 0 {
                        return Some((s[..=i].to_string(), i + 1));
                    }
                }
                _ => {}
            }
        }
        None
    } else {
        // Bare word reply (success, sat, ...): complete once a delimiter or
        // newline follows.
        let end = s.find(|c: char| c.is_whitespace() || c == '(')?;
        Some((s[..end].to_string(), end))
    }
}

/// The last atom inside a reply like `(((P c) true))`.
fn last_atom(reply: &str) -> Option<String> {
    let mut result: Option<String> = None;
    let mut cur = String::new();
    let mut in_bars = false;
    for c in reply.chars() {
        match c {
            '|' => {
                in_bars = !in_bars;
                if !in_bars && !cur.is_empty() {
                    result = Some(cur.clone());
                    cur.clear();
                }
            }
            '(' | ')' | ' ' | '\t' | '\n' if !in_bars => {
                if !cur.is_empty() {
                    result = Some(cur.clone());
                    cur.clear();
                }
            }
            _ => cur.push(c),
        }
    }
    if !cur.is_empty() {
        result = Some(cur);
    }
    result
}

/// Pull the message out of an `(error "...")` reply, or pass through.
fn strip_error(reply: &str) -> String {
    let t = reply.trim();
    if let Some(rest) = t.strip_prefix("(error") {
        let inner = rest.trim_end_matches(')').trim();
        return inner.trim_matches('"').to_string();
    }
    t.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extracts_balanced_replies() {
        assert_eq!(extract_reply("success\nsat\n"), Some(("success".to_string(), 7)));
        let (r, n) = extract_reply("(((P c) true))\nrest").unwrap();
        assert_eq!(r, "(((P c) true))");
        assert_eq!(&"(((P c) true))\nrest"[n..], "\nrest");
    }

    #[test]
    fn last_atom_reads_values() {
        assert_eq!(last_atom("(((P c) true))"), Some("true".to_string()));
        assert_eq!(last_atom("(((f a) b))"), Some("b".to_string()));
        assert_eq!(last_atom("((x |odd name|))"), Some("odd name".to_string()));
    }

    #[test]
    fn strip_error_unwraps_diagnostics() {
        assert_eq!(strip_error("(error \"unknown symbol q\")"), "unknown symbol q");
        assert_eq!(strip_error("sat"), "sat");
    }
}
