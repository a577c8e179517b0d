//! Declarations and sort-checked assertions for the supported SMT-LIB subset:
//! uninterpreted sorts of arity 0, enumeration datatypes with nullary
//! constructors, Bool, and quantified formulas over those sorts.

use crate::sexp::Sexp;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SortRef {
    Bool,
    Named(String),
}

impl fmt::Display for SortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SortRef::Bool => write!(f, "Bool"),
            SortRef::Named(n) => write!(f, "{}", n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SortDef {
    /// Uninterpreted sort; its interpretation is found by search.
    Free,
    /// Enumeration datatype: fixed distinct elements named by constructors.
    Enum(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncSig {
    pub args: Vec<SortRef>,
    pub ret: SortRef,
    /// True for datatype constructors (value fixed, not searched).
    pub ctor: bool,
}

/// Declarations visible at some point of the session, assembled across the
/// assertion-stack frames.
#[derive(Default, Clone)]
pub struct Decls {
    pub sorts: Vec<(String, SortDef)>,
    pub funcs: Vec<(String, FuncSig)>,
    sort_index: HashMap<String, usize>,
    func_index: HashMap<String, usize>,
}

impl Decls {
    pub fn sort(&self, name: &str) -> Option<&SortDef> {
        self.sort_index.get(name).map(|&i| &self.sorts[i].1)
    }

    pub fn func(&self, name: &str) -> Option<&FuncSig> {
        self.func_index.get(name).map(|&i| &self.funcs[i].1)
    }

    pub fn add_sort(&mut self, name: &str, def: SortDef) -> Result<(), String> {
        if name == "Bool" || self.sort_index.contains_key(name) {
            return Err(format!("sort {} is already declared", name));
        }
        self.sort_index.insert(name.to_string(), self.sorts.len());
        self.sorts.push((name.to_string(), def));
        Ok(())
    }

    pub fn add_func(&mut self, name: &str, sig: FuncSig) -> Result<(), String> {
        if self.func_index.contains_key(name) || matches!(name, "true" | "false") {
            return Err(format!("symbol {} is already declared", name));
        }
        for s in sig.args.iter().chain(std::iter::once(&sig.ret)) {
            if let SortRef::Named(n) = s {
                if self.sort(n).is_none() {
                    return Err(format!("unknown sort {}", n));
                }
            }
        }
        self.func_index.insert(name.to_string(), self.funcs.len());
        self.funcs.push((name.to_string(), sig));
        Ok(())
    }
}

/// Element-sorted term. Variables are absolute binder-stack slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Var(usize),
    App(String, Vec<Elem>),
}

/// Bool-sorted term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Iff(Box<Expr>, Box<Expr>),
    Pred(String, Vec<Elem>),
    Eq(Elem, Elem),
    /// Single-binder quantifier; the binder's slot is the scope depth at
    /// which it was introduced.
    Quant { forall: bool, sort: String, body: Box<Expr> },
}

pub struct TermCtx<'a> {
    pub decls: &'a Decls,
    scope: Vec<(String, SortRef)>,
}

impl<'a> TermCtx<'a> {
    pub fn new(decls: &'a Decls) -> Self {
        TermCtx { decls, scope: Vec::new() }
    }

    fn lookup_var(&self, name: &str) -> Option<(usize, SortRef)> {
        self.scope
            .iter()
            .enumerate()
            .rev()
            .find(|(_, (n, _))| n == name)
            .map(|(i, (_, s))| (i, s.clone()))
    }

    fn elem_sort(&self, e: &Elem) -> SortRef {
        match e {
            Elem::Var(i) => self.scope[*i].1.clone(),
            Elem::App(f, _) => self.decls.func(f).expect("checked").ret.clone(),
        }
    }

    /// Parse a Bool-sorted term.
    pub fn expr(&mut self, sx: &Sexp) -> Result<Expr, String> {
        match self.term(sx)? {
            Parsed::Bool(e) => Ok(e),
            Parsed::Elem(e) => Err(format!("expected Bool term, got term of sort {}", self.elem_sort(&e))),
        }
    }

    /// Parse an element-sorted term.
    pub fn elem(&mut self, sx: &Sexp) -> Result<(Elem, SortRef), String> {
        match self.term(sx)? {
            Parsed::Elem(e) => {
                let s = self.elem_sort(&e);
                Ok((e, s))
            }
            Parsed::Bool(_) => Err("expected element term, got Bool term".to_string()),
        }
    }

    fn term(&mut self, sx: &Sexp) -> Result<Parsed, String> {
        match sx {
            Sexp::Atom(a) => self.atom(a),
            Sexp::List(items) => {
                if items.is_empty() {
                    return Err("empty application".to_string());
                }
                let head = match items[0].atom() {
                    Some(h) => h.to_string(),
                    None => return Err("higher-order application is not supported".to_string()),
                };
                self.apply(&head, &items[1..])
            }
        }
    }

    fn atom(&mut self, a: &str) -> Result<Parsed, String> {
        match a {
            "true" => return Ok(Parsed::Bool(Expr::Const(true))),
            "false" => return Ok(Parsed::Bool(Expr::Const(false))),
            _ => {}
        }
        if a.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            return Err(format!("numeral {} is not supported (no arithmetic)", a));
        }
        if let Some((slot, sort)) = self.lookup_var(a) {
            return match sort {
                SortRef::Bool => Err("Boolean variables are not supported".to_string()),
                SortRef::Named(_) => Ok(Parsed::Elem(Elem::Var(slot))),
            };
        }
        match self.decls.func(a) {
            Some(sig) if sig.args.is_empty() => match sig.ret {
                SortRef::Bool => Ok(Parsed::Bool(Expr::Pred(a.to_string(), vec![]))),
                SortRef::Named(_) => Ok(Parsed::Elem(Elem::App(a.to_string(), vec![]))),
            },
            Some(_) => Err(format!("symbol {} expects arguments", a)),
            None => Err(format!("unknown symbol {}", a)),
        }
    }

    fn apply(&mut self, head: &str, args: &[Sexp]) -> Result<Parsed, String> {
        match head {
            "and" | "or" => {
                let sub = args.iter().map(|s| self.expr(s)).collect::<Result<Vec<_>, _>>()?;
                Ok(Parsed::Bool(if head == "and" { Expr::And(sub) } else { Expr::Or(sub) }))
            }
            "not" => {
                if args.len() != 1 {
                    return Err("not expects one argument".to_string());
                }
                Ok(Parsed::Bool(Expr::Not(Box::new(self.expr(&args[0])?))))
            }
            "=>" => {
                if args.is_empty() {
                    return Err("=> expects arguments".to_string());
                }
                let mut sub = args.iter().map(|s| self.expr(s)).collect::<Result<Vec<_>, _>>()?;
                let mut acc = sub.pop().unwrap();
                while let Some(a) = sub.pop() {
                    acc = Expr::Or(vec![Expr::Not(Box::new(a)), acc]);
                }
                Ok(Parsed::Bool(acc))
            }
            "=" => {
                if args.len() < 2 {
                    return Err("= expects at least two arguments".to_string());
                }
                let parsed = args.iter().map(|s| self.term(s)).collect::<Result<Vec<_>, _>>()?;
                let mut conj = Vec::new();
                for w in parsed.windows(2) {
                    conj.push(self.eq_pair(&w[0], &w[1])?);
                }
                Ok(Parsed::Bool(if conj.len() == 1 { conj.pop().unwrap() } else { Expr::And(conj) }))
            }
            "distinct" => {
                let parsed: Vec<(Elem, SortRef)> =
                    args.iter().map(|s| self.elem(s)).collect::<Result<Vec<_>, _>>()?;
                let mut conj = Vec::new();
                for i in 0..parsed.len() {
                    for j in i + 1..parsed.len() {
                        if parsed[i].1 != parsed[j].1 {
                            return Err("distinct arguments have different sorts".to_string());
                        }
                        conj.push(Expr::Not(Box::new(Expr::Eq(parsed[i].0.clone(), parsed[j].0.clone()))));
                    }
                }
                Ok(Parsed::Bool(Expr::And(conj)))
            }
            "forall" | "exists" => {
                let forall = head == "forall";
                if args.len() != 2 {
                    return Err(format!("{} expects a binder list and a body", head));
                }
                let binders = args[0]
                    .list()
                    .ok_or_else(|| "quantifier binders must be a list".to_string())?;
                if binders.is_empty() {
                    return Err("empty quantifier binder list".to_string());
                }
                let mut names = Vec::new();
                for b in binders {
                    let pair = b.list().ok_or_else(|| "binder must be (name Sort)".to_string())?;
                    if pair.len() != 2 {
                        return Err("binder must be (name Sort)".to_string());
                    }
                    let name = pair[0].atom().ok_or("binder name must be a symbol")?.to_string();
                    let sort = pair[1].atom().ok_or("binder sort must be a symbol")?.to_string();
                    if sort == "Bool" {
                        return Err("quantified Boolean variables are not supported".to_string());
                    }
                    if self.decls.sort(&sort).is_none() {
                        return Err(format!("unknown sort {}", sort));
                    }
                    self.scope.push((name.clone(), SortRef::Named(sort.clone())));
                    names.push(sort);
                }
                let body = self.expr(&args[1]);
                for _ in 0..names.len() {
                    self.scope.pop();
                }
                let mut acc = body?;
                for sort in names.into_iter().rev() {
                    acc = Expr::Quant { forall, sort, body: Box::new(acc) };
                }
                Ok(Parsed::Bool(acc))
            }
            "let" | "match" | "ite" | "!" | "xor" => Err(format!("{} is not supported", head)),
            _ => {
                let sig = self
                    .decls
                    .func(head)
                    .ok_or_else(|| format!("unknown symbol {}", head))?
                    .clone();
                if sig.args.len() != args.len() {
                    return Err(format!(
                        "symbol {} expects {} arguments, got {}",
                        head,
                        sig.args.len(),
                        args.len()
                    ));
                }
                let mut elems = Vec::new();
                for (sx, expect) in args.iter().zip(&sig.args) {
                    let (e, s) = self.elem(sx)?;
                    if &s != expect {
                        return Err(format!(
                            "argument of {} has sort {}, expected {}",
                            head, s, expect
                        ));
                    }
                    elems.push(e);
                }
                match sig.ret {
                    SortRef::Bool => Ok(Parsed::Bool(Expr::Pred(head.to_string(), elems))),
                    SortRef::Named(_) => Ok(Parsed::Elem(Elem::App(head.to_string(), elems))),
                }
            }
        }
    }

    fn eq_pair(&self, a: &Parsed, b: &Parsed) -> Result<Expr, String> {
        match (a, b) {
            (Parsed::Bool(x), Parsed::Bool(y)) => {
                Ok(Expr::Iff(Box::new(x.clone()), Box::new(y.clone())))
            }
            (Parsed::Elem(x), Parsed::Elem(y)) => {
                let (sx, sy) = (self.elem_sort(x), self.elem_sort(y));
                if sx != sy {
                    return Err(format!("= arguments have different sorts {} and {}", sx, sy));
                }
                Ok(Expr::Eq(x.clone(), y.clone()))
            }
            _ => Err("= arguments mix Bool and element sorts".to_string()),
        }
    }
}

enum Parsed {
    Bool(Expr),
    Elem(Elem),
}
