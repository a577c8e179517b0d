//! Abstract syntax for many-sorted first-order theories: signatures, terms,
//! formulas, theories and size profiles.
//!
//! The logic has uninterpreted sorts only. Bool appears solely as the result
//! "sort" of predicates; there are no Boolean-sorted terms or variables.

use indexmap::{IndexMap, IndexSet};
use std::collections::BTreeMap;
use std::fmt;

/// Symbols generated by this crate start with this prefix; user symbols
/// carrying it are rejected at parse time.
pub const RESERVED_PREFIX: char = '@';

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct WellFormedError(pub String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncDecl {
    pub args: Vec<String>,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredDecl {
    pub args: Vec<String>,
}

/// Declared vocabulary: uninterpreted sorts, functions (constants are 0-ary
/// functions) and predicates. Bool is built in and never declared.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    sorts: IndexSet<String>,
    funcs: IndexMap<String, FuncDecl>,
    preds: IndexMap<String, PredDecl>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.sorts.iter().map(|s| s.as_str())
    }

    pub fn funcs(&self) -> impl Iterator<Item = (&str, &FuncDecl)> {
        self.funcs.iter().map(|(n, d)| (n.as_str(), d))
    }

    pub fn preds(&self) -> impl Iterator<Item = (&str, &PredDecl)> {
        self.preds.iter().map(|(n, d)| (n.as_str(), d))
    }

    /// 0-ary functions, i.e. the user constants.
    pub fn constants(&self) -> impl Iterator<Item = (&str, &str)> {
        self.funcs
            .iter()
            .filter(|(_, d)| d.args.is_empty())
            .map(|(n, d)| (n.as_str(), d.result.as_str()))
    }

    pub fn has_sort(&self, name: &str) -> bool {
        self.sorts.contains(name)
    }

    pub fn func(&self, name: &str) -> Option<&FuncDecl> {
        self.funcs.get(name)
    }

    pub fn pred(&self, name: &str) -> Option<&PredDecl> {
        self.preds.get(name)
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.funcs.contains_key(name) || self.preds.contains_key(name)
    }

    pub fn add_sort(&mut self, name: &str) -> Result<(), WellFormedError> {
        if name == "Bool" || self.sorts.contains(name) {
            return Err(WellFormedError(format!("sort {name} is already declared")));
        }
        self.sorts.insert(name.to_string());
        Ok(())
    }

    pub fn add_func(&mut self, name: &str, decl: FuncDecl) -> Result<(), WellFormedError> {
        self.check_symbol(name)?;
        for s in decl.args.iter().chain(std::iter::once(&decl.result)) {
            if !self.sorts.contains(s) {
                return Err(WellFormedError(format!("unknown sort {s} in rank of {name}")));
            }
        }
        self.funcs.insert(name.to_string(), decl);
        Ok(())
    }

    pub fn add_pred(&mut self, name: &str, decl: PredDecl) -> Result<(), WellFormedError> {
        self.check_symbol(name)?;
        for s in &decl.args {
            if !self.sorts.contains(s) {
                return Err(WellFormedError(format!("unknown sort {s} in rank of {name}")));
            }
        }
        self.preds.insert(name.to_string(), decl);
        Ok(())
    }

    fn check_symbol(&self, name: &str) -> Result<(), WellFormedError> {
        if self.has_symbol(name) || matches!(name, "true" | "false") {
            return Err(WellFormedError(format!("symbol {name} is already declared")));
        }
        Ok(())
    }

    /// True when every sort and symbol of `sub` is declared identically here.
    pub fn contains_signature(&self, sub: &Signature) -> bool {
        sub.sorts.iter().all(|s| self.sorts.contains(s))
            && sub.funcs.iter().all(|(n, d)| self.funcs.get(n) == Some(d))
            && sub.preds.iter().all(|(n, d)| self.preds.get(n) == Some(d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub sort: String,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: impl Into<String>) -> Self {
        Var { name: name.into(), sort: sort.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    App(String, Vec<Term>),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), vec![])
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(|a| a.is_ground()),
        }
    }

    pub fn vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => {
                for a in args {
                    a.vars(out);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Vec<Var>, Box<Formula>),
    Forall(Vec<Var>, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Conjunction, flattening the trivial cases.
    pub fn and(mut fs: Vec<Formula>) -> Formula {
        fs.retain(|f| !matches!(f, Formula::True));
        match fs.len() {
            0 => Formula::True,
            1 => fs.pop().unwrap(),
            _ => Formula::And(fs),
        }
    }

    /// Disjunction; an empty disjunction is the unsatisfiable sentence.
    pub fn or(mut fs: Vec<Formula>) -> Formula {
        fs.retain(|f| !matches!(f, Formula::False));
        match fs.len() {
            0 => Formula::False,
            1 => fs.pop().unwrap(),
            _ => Formula::Or(fs),
        }
    }

    pub fn exists(vars: Vec<Var>, body: Formula) -> Formula {
        if vars.is_empty() {
            body
        } else {
            Formula::Exists(vars, Box::new(body))
        }
    }

    pub fn forall(vars: Vec<Var>, body: Formula) -> Formula {
        if vars.is_empty() {
            body
        } else {
            Formula::Forall(vars, Box::new(body))
        }
    }

    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Pred(_, args) => {
                for t in args {
                    let mut vs = Vec::new();
                    t.vars(&mut vs);
                    for v in vs {
                        if !bound.contains(&v) && !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
            }
            Formula::Eq(a, b) => {
                for t in [a, b] {
                    let mut vs = Vec::new();
                    t.vars(&mut vs);
                    for v in vs {
                        if !bound.contains(&v) && !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(vs, f) | Formula::Forall(vs, f) => {
                let n = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(bound, out);
                bound.truncate(n);
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }
}

/// Why an axiom is part of a theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    User,
    Bounding,
    Avoid,
    HomTo,
    Flip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub formula: Formula,
    pub provenance: Provenance,
}

/// The constants added by size bounding, per sort, in signature sort order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounding {
    pub consts: IndexMap<String, Vec<String>>,
}

impl Bounding {
    /// All bounding constants of one sort, if bounded.
    pub fn of_sort(&self, sort: &str) -> Option<&[String]> {
        self.consts.get(sort).map(|v| v.as_slice())
    }

    pub fn total_constants(&self) -> usize {
        self.consts.values().map(|v| v.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub signature: Signature,
    pub axioms: Vec<Axiom>,
    pub bounding: Option<Bounding>,
}

impl Theory {
    pub fn new(signature: Signature) -> Self {
        Theory { signature, axioms: Vec::new(), bounding: None }
    }

    pub fn push_axiom(&mut self, formula: Formula, provenance: Provenance) -> Result<(), WellFormedError> {
        if !formula.is_sentence() {
            return Err(WellFormedError("axioms must be sentences (no free variables)".into()));
        }
        self.axioms.push(Axiom { formula, provenance });
        Ok(())
    }

    pub fn user_axioms(&self) -> impl Iterator<Item = &Formula> {
        self.axioms
            .iter()
            .filter(|a| a.provenance == Provenance::User)
            .map(|a| &a.formula)
    }

    /// Sorts that occur in a symbol rank or a quantifier of a user axiom.
    pub fn used_sorts(&self) -> IndexSet<String> {
        let mut used = IndexSet::new();
        for (_, d) in self.signature.funcs() {
            used.extend(d.args.iter().cloned());
            used.insert(d.result.clone());
        }
        for (_, d) in self.signature.preds() {
            used.extend(d.args.iter().cloned());
        }
        fn walk(f: &Formula, used: &mut IndexSet<String>) {
            match f {
                Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
                    used.extend(vs.iter().map(|v| v.sort.clone()));
                    walk(body, used);
                }
                Formula::Not(g) => walk(g, used),
                Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| walk(g, used)),
                Formula::Implies(a, b) => {
                    walk(a, used);
                    walk(b, used);
                }
                _ => {}
            }
        }
        for a in &self.axioms {
            walk(&a.formula, &mut used);
        }
        used
    }
}

/// Positive size bounds for the uninterpreted sorts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    bounds: BTreeMap<String, u32>,
}

impl Profile {
    pub fn new(bounds: impl IntoIterator<Item = (String, u32)>) -> Result<Self, WellFormedError> {
        let bounds: BTreeMap<String, u32> = bounds.into_iter().collect();
        for (sort, n) in &bounds {
            if *n == 0 {
                return Err(WellFormedError(format!(
                    "bound for sort {sort} must be at least 1 (sorts are non-empty)"
                )));
            }
        }
        Ok(Profile { bounds })
    }

    pub fn uniform(sig: &Signature, n: u32) -> Result<Self, WellFormedError> {
        Profile::new(sig.sorts().map(|s| (s.to_string(), n)))
    }

    pub fn bound(&self, sort: &str) -> Option<u32> {
        self.bounds.get(sort).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.bounds.iter().map(|(s, n)| (s.as_str(), *n))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bounds.iter().map(|(s, n)| format!("{s}={n}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// What is declared in a live solver session: the user signature plus any
/// generated constants, functions and tag sorts.
#[derive(Debug, Clone, Default)]
pub struct Vocab {
    pub sorts: IndexSet<String>,
    pub funcs: IndexMap<String, FuncDecl>,
    pub preds: IndexMap<String, PredDecl>,
}

impl Vocab {
    pub fn from_signature(sig: &Signature) -> Self {
        Vocab {
            sorts: sig.sorts().map(|s| s.to_string()).collect(),
            funcs: sig.funcs().map(|(n, d)| (n.to_string(), d.clone())).collect(),
            preds: sig.preds().map(|(n, d)| (n.to_string(), d.clone())).collect(),
        }
    }

    pub fn add_const(&mut self, name: &str, sort: &str) {
        self.funcs
            .insert(name.to_string(), FuncDecl { args: vec![], result: sort.to_string() });
    }

    /// Infer the sort of a term, checking it along the way.
    pub fn term_sort(&self, t: &Term) -> Result<String, WellFormedError> {
        match t {
            Term::Var(v) => Ok(v.sort.clone()),
            Term::App(f, args) => {
                let decl = self
                    .funcs
                    .get(f)
                    .ok_or_else(|| WellFormedError(format!("unknown symbol {f}")))?;
                if decl.args.len() != args.len() {
                    return Err(WellFormedError(format!(
                        "{f} expects {} arguments, got {}",
                        decl.args.len(),
                        args.len()
                    )));
                }
                for (a, expect) in args.iter().zip(&decl.args) {
                    let got = self.term_sort(a)?;
                    if &got != expect {
                        return Err(WellFormedError(format!(
                            "argument of {f} has sort {got}, expected {expect}"
                        )));
                    }
                }
                Ok(decl.result.clone())
            }
        }
    }

    pub fn check_formula(&self, f: &Formula) -> Result<(), WellFormedError> {
        match f {
            Formula::True | Formula::False => Ok(()),
            Formula::Pred(p, args) => {
                let decl = self
                    .preds
                    .get(p)
                    .ok_or_else(|| WellFormedError(format!("unknown predicate {p}")))?;
                if decl.args.len() != args.len() {
                    return Err(WellFormedError(format!(
                        "{p} expects {} arguments, got {}",
                        decl.args.len(),
                        args.len()
                    )));
                }
                for (a, expect) in args.iter().zip(&decl.args) {
                    let got = self.term_sort(a)?;
                    if &got != expect {
                        return Err(WellFormedError(format!(
                            "argument of {p} has sort {got}, expected {expect}"
                        )));
                    }
                }
                Ok(())
            }
            Formula::Eq(a, b) => {
                let sa = self.term_sort(a)?;
                let sb = self.term_sort(b)?;
                if sa != sb {
                    return Err(WellFormedError(format!(
                        "equality between different sorts {sa} and {sb}"
                    )));
                }
                Ok(())
            }
            Formula::Not(g) => self.check_formula(g),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().try_for_each(|g| self.check_formula(g)),
            Formula::Implies(a, b) => {
                self.check_formula(a)?;
                self.check_formula(b)
            }
            Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
                for v in vs {
                    if !self.sorts.contains(&v.sort) {
                        return Err(WellFormedError(format!(
                            "bound variable {} has unknown sort {}",
                            v.name, v.sort
                        )));
                    }
                }
                self.check_formula(body)
            }
        }
    }

    /// Well-sorted and closed.
    pub fn check_sentence(&self, f: &Formula) -> Result<(), WellFormedError> {
        self.check_formula(f)?;
        if !f.is_sentence() {
            return Err(WellFormedError("expected a sentence (no free variables)".into()));
        }
        Ok(())
    }
}
