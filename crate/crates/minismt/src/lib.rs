//! `minismt` is a finite-domain solver for a subset of SMT-LIB 2: Bool,
//! uninterpreted sorts of arity 0, enumeration datatypes with nullary
//! constructors, uninterpreted functions and predicates, equality, and
//! quantifiers over the declared sorts. It speaks the textual SMT-LIB
//! protocol on stdin/stdout, so it can sit behind any driver that expects
//! `z3 -in -smt2`-style behaviour.
//!
//! `check-sat` performs model search over candidate domain sizes. An
//! `unsat` answer is only produced when every sort's size is bounded by its
//! declaration (datatypes) or by a covering axiom asserting that every
//! element equals one of finitely many constants; otherwise an exhausted
//! search reports `unknown`. Theories produced by fresh-constant bounding
//! always satisfy this, which makes the solver a complete decision
//! procedure for them.

pub mod ground;
pub mod sat;
pub mod sexp;
pub mod theory;

use ground::{check_default, Model, Problem, Verdict};
use sexp::{Reader, Sexp};
use std::io::{BufRead, Write};
use std::time::Duration;
use theory::{Decls, Expr, FuncSig, SortDef, SortRef, TermCtx};

#[derive(Clone)]
struct Frame {
    decls: Decls,
    asserts: Vec<Expr>,
}

pub struct Session {
    frames: Vec<Frame>,
    print_success: bool,
    timeout_ms: Option<u64>,
    model: Option<Model>,
    exited: bool,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl Session {
    pub fn new() -> Self {
        Session {
            frames: vec![Frame { decls: Decls::default(), asserts: Vec::new() }],
            print_success: false,
            timeout_ms: None,
            model: None,
            exited: false,
        }
    }

    pub fn exited(&self) -> bool {
        self.exited
    }

    fn decls(&self) -> &Decls {
        &self.frames.last().unwrap().decls
    }

    fn decls_mut(&mut self) -> &mut Decls {
        &mut self.frames.last_mut().unwrap().decls
    }

    fn invalidate(&mut self) {
        self.model = None;
    }

    /// Handle one command, returning the reply lines to print (possibly none).
    pub fn handle(&mut self, form: &Sexp) -> Vec<String> {
        match self.dispatch(form) {
            Ok(lines) => lines,
            Err(msg) => vec![format!("(error \"{}\")", msg.replace('"', "'"))],
        }
    }

    fn ok(&self) -> Vec<String> {
        if self.print_success {
            vec!["success".to_string()]
        } else {
            vec![]
        }
    }

    fn dispatch(&mut self, form: &Sexp) -> Result<Vec<String>, String> {
        let items = form.list().ok_or("expected a command")?;
        let head = items
            .first()
            .and_then(|s| s.atom())
            .ok_or("expected a command")?;
        match head {
            "set-option" => self.set_option(&items[1..]),
            "set-logic" | "set-info" => Ok(self.ok()),
            "declare-sort" => {
                if items.len() != 3 {
                    return Err("declare-sort expects a name and an arity".into());
                }
                let name = items[1].atom().ok_or("sort name must be a symbol")?;
                if items[2].atom() != Some("0") {
                    return Err("declare-sort with nonzero arity is not supported".into());
                }
                self.invalidate();
                self.decls_mut().add_sort(name, SortDef::Free)?;
                Ok(self.ok())
            }
            "declare-datatypes" => {
                self.declare_datatypes(&items[1..])?;
                Ok(self.ok())
            }
            "declare-fun" => {
                if items.len() != 4 {
                    return Err("declare-fun expects a name, argument sorts and a result sort".into());
                }
                let name = items[1].atom().ok_or("function name must be a symbol")?.to_string();
                let args = items[2]
                    .list()
                    .ok_or("argument sorts must be a list")?
                    .iter()
                    .map(|s| self.parse_sort(s))
                    .collect::<Result<Vec<_>, _>>()?;
                if args.iter().any(|a| *a == SortRef::Bool) {
                    return Err("Bool arguments are not supported".into());
                }
                let ret = self.parse_sort(&items[3])?;
                self.invalidate();
                self.decls_mut().add_func(&name, FuncSig { args, ret, ctor: false })?;
                Ok(self.ok())
            }
            "declare-const" => {
                if items.len() != 3 {
                    return Err("declare-const expects a name and a sort".into());
                }
                let name = items[1].atom().ok_or("constant name must be a symbol")?.to_string();
                let ret = self.parse_sort(&items[2])?;
                self.invalidate();
                self.decls_mut().add_func(&name, FuncSig { args: vec![], ret, ctor: false })?;
                Ok(self.ok())
            }
            "assert" => {
                if items.len() != 2 {
                    return Err("assert expects one term".into());
                }
                let expr = TermCtx::new(self.decls()).expr(&items[1])?;
                self.invalidate();
                self.frames.last_mut().unwrap().asserts.push(expr);
                Ok(self.ok())
            }
            "push" | "pop" => {
                let n: usize = match items.get(1) {
                    None => 1,
                    Some(s) => s
                        .atom()
                        .and_then(|a| a.parse().ok())
                        .ok_or("push/pop argument must be a numeral")?,
                };
                self.invalidate();
                for _ in 0..n {
                    if head == "push" {
                        let top = self.frames.last().unwrap().clone();
                        self.frames.push(Frame { decls: top.decls, asserts: Vec::new() });
                    } else {
                        if self.frames.len() == 1 {
                            return Err("pop on an empty assertion stack".into());
                        }
                        self.frames.pop();
                    }
                }
                Ok(self.ok())
            }
            "check-sat" => {
                let prob = Problem {
                    decls: self.decls().clone(),
                    asserts: self.frames.iter().flat_map(|f| f.asserts.iter().cloned()).collect(),
                };
                let timeout = self.timeout_ms.map(Duration::from_millis);
                let (verdict, model) = check_default(&prob, timeout);
                self.model = model;
                Ok(vec![match verdict {
                    Verdict::Sat => "sat",
                    Verdict::Unsat => "unsat",
                    Verdict::Unknown => "unknown",
                }
                .to_string()])
            }
            "get-value" => {
                let model = self.model.as_ref().ok_or("model is not available")?;
                let terms = items
                    .get(1)
                    .and_then(|s| s.list())
                    .ok_or("get-value expects a list of terms")?;
                if terms.is_empty() {
                    return Err("get-value expects at least one term".into());
                }
                let mut parts = Vec::new();
                for t in terms {
                    let mut ctx = TermCtx::new(self.decls());
                    let mut env = Vec::new();
                    let rendered = match ctx.expr(t) {
                        Ok(e) => {
                            if model.eval_expr(&e, &mut env)? {
                                "true".to_string()
                            } else {
                                "false".to_string()
                            }
                        }
                        Err(_) => {
                            let (elem, sort) = TermCtx::new(self.decls()).elem(t)?;
                            let v = model.eval_elem(&elem, &mut env)?;
                            let SortRef::Named(sn) = sort else {
                                return Err("cannot evaluate term".into());
                            };
                            model
                                .value_name(&sn, v)
                                .ok_or_else(|| {
                                    format!("sort {} has no named values; query Boolean terms instead", sn)
                                })?
                                .to_string()
                        }
                    };
                    parts.push(format!("({} {})", t, rendered));
                }
                Ok(vec![format!("({})", parts.join(" "))])
            }
            "echo" => {
                let text = items
                    .get(1)
                    .and_then(|s| s.atom())
                    .ok_or("echo expects a string literal")?;
                Ok(vec![text.trim_matches('"').to_string()])
            }
            "reset" => {
                *self = Session::new();
                Ok(self.ok())
            }
            "exit" => {
                self.exited = true;
                Ok(self.ok())
            }
            other => Err(format!("unsupported command {}", other)),
        }
    }

    fn set_option(&mut self, args: &[Sexp]) -> Result<Vec<String>, String> {
        let key = args.first().and_then(|s| s.atom()).ok_or("set-option expects a keyword")?;
        let value = args.get(1).and_then(|s| s.atom());
        match key {
            ":print-success" => {
                self.print_success = value == Some("true");
                Ok(self.ok())
            }
            ":produce-models" => Ok(self.ok()),
            ":timeout" => {
                let ms: u64 = value
                    .and_then(|v| v.parse().ok())
                    .ok_or("timeout must be a numeral")?;
                self.timeout_ms = if ms == 0 { None } else { Some(ms) };
                Ok(self.ok())
            }
            _ => Ok(vec!["unsupported".to_string()]),
        }
    }

    fn parse_sort(&self, sx: &Sexp) -> Result<SortRef, String> {
        let name = sx.atom().ok_or("sort must be a symbol")?;
        if name == "Bool" {
            return Ok(SortRef::Bool);
        }
        if self.decls().sort(name).is_none() {
            return Err(format!("unknown sort {}", name));
        }
        Ok(SortRef::Named(name.to_string()))
    }

    fn declare_datatypes(&mut self, args: &[Sexp]) -> Result<(), String> {
        if args.len() != 2 {
            return Err("declare-datatypes expects sort declarations and constructor lists".into());
        }
        let sort_decls = args[0].list().ok_or("expected a list of sort declarations")?;
        let ctor_lists = args[1].list().ok_or("expected a list of constructor lists")?;
        if sort_decls.len() != ctor_lists.len() {
            return Err("mismatched declare-datatypes lists".into());
        }
        self.invalidate();
        for (sd, cl) in sort_decls.iter().zip(ctor_lists) {
            let pair = sd.list().ok_or("sort declaration must be (Name arity)")?;
            if pair.len() != 2 || pair[1].atom() != Some("0") {
                return Err("only arity-0 datatypes are supported".into());
            }
            let name = pair[0].atom().ok_or("datatype name must be a symbol")?.to_string();
            let ctor_decls = cl.list().ok_or("constructors must be a list")?;
            if ctor_decls.is_empty() {
                return Err("datatype needs at least one constructor".into());
            }
            let mut ctors = Vec::new();
            for cd in ctor_decls {
                let c = match cd {
                    Sexp::Atom(a) => a.clone(),
                    Sexp::List(l) if l.len() == 1 => l[0]
                        .atom()
                        .ok_or("constructor name must be a symbol")?
                        .to_string(),
                    _ => return Err("only nullary constructors are supported".into()),
                };
                ctors.push(c);
            }
            self.decls_mut().add_sort(&name, SortDef::Enum(ctors.clone()))?;
            for c in ctors {
                self.decls_mut().add_func(
                    &c,
                    FuncSig { args: vec![], ret: SortRef::Named(name.clone()), ctor: true },
                )?;
            }
        }
        Ok(())
    }
}

/// Run the read-eval-print loop on stdin/stdout; returns the exit code.
pub fn run_stdio() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut session = Session::new();
    let mut reader = Reader::new();
    let mut line = String::new();
    let mut input = stdin.lock();
    loop {
        loop {
            match reader.next_form() {
                Ok(Some(form)) => {
                    for reply in session.handle(&form) {
                        let _ = writeln!(out, "{}", reply);
                    }
                    let _ = out.flush();
                    if session.exited() {
                        return 0;
                    }
                }
                Ok(None) => break,
                Err(msg) => {
                    let _ = writeln!(out, "(error \"{}\")", msg.replace('"', "'"));
                    let _ = out.flush();
                }
            }
        }
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => return 0,
            Ok(_) => reader.feed(&line),
        }
    }
}

/// Feed a whole script and collect the output; test convenience.
pub fn run_script(input: &str) -> String {
    let mut session = Session::new();
    let mut reader = Reader::new();
    reader.feed(input);
    let mut out = String::new();
    loop {
        match reader.next_form() {
            Ok(Some(form)) => {
                for reply in session.handle(&form) {
                    out.push_str(&reply);
                    out.push('\n');
                }
                if session.exited() {
                    break;
                }
            }
            Ok(None) => break,
            Err(msg) => {
                out.push_str(&format!("(error \"{}\")\n", msg));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_sat_unsat() {
        let out = run_script(
            "(declare-sort S 0)(declare-const c S)\
             (assert (forall ((x S)) (= x c)))(check-sat)\
             (assert (exists ((x S) (y S)) (distinct x y)))(check-sat)",
        );
        assert_eq!(out, "sat\nunsat\n");
    }

    #[test]
    fn print_success_protocol() {
        let out = run_script("(set-option :print-success true)(set-logic ALL)(declare-sort S 0)");
        assert_eq!(out, "success\nsuccess\nsuccess\n");
    }

    #[test]
    fn get_value_booleans() {
        let out = run_script(
            "(declare-sort S 0)(declare-const c S)(declare-fun P (S) Bool)\
             (assert (P c))(assert (forall ((x S)) (= x c)))(check-sat)\
             (get-value ((P c)))(get-value ((= c c)))",
        );
        assert_eq!(out, "sat\n(((P c) true))\n(((= c c) true))\n");
    }

    #[test]
    fn unknown_when_unbounded() {
        // No covering axiom and no constants: exhausting sizes must not
        // claim unsat.
        let out = run_script(
            "(declare-sort S 0)(declare-fun f (S) S)\
             (assert (forall ((x S)) (exists ((y S)) (and (= (f y) x) (not (= y x))))))(check-sat)",
        );
        assert_eq!(out, "unknown\n");
    }

    #[test]
    fn datatype_enumeration() {
        let out = run_script(
            "(declare-datatypes ((E 0)) (((a) (b))))(declare-fun g (E) E)\
             (assert (not (= (g a) (g b))))(check-sat)(get-value ((g a) (g b)))",
        );
        assert!(out.starts_with("sat\n"), "{}", out);
        // g is forced to be a bijection; with symmetry the exact values could
        // be either pairing, but they must be distinct constructor names.
        let line = out.lines().nth(1).unwrap();
        assert!(line.contains("(g a)") && line.contains("(g b)"), "{}", line);
    }

    #[test]
    fn push_pop_scoping() {
        let out = run_script(
            "(declare-sort S 0)(declare-const c S)(assert (forall ((x S)) (= x c)))\
             (push 1)(assert (exists ((x S) (y S)) (distinct x y)))(check-sat)(pop 1)(check-sat)",
        );
        assert_eq!(out, "unsat\nsat\n");
    }

    #[test]
    fn pop_at_bottom_errors() {
        let out = run_script("(pop 1)");
        assert!(out.contains("error"), "{}", out);
    }
}
