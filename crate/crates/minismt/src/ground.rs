//! Finite-domain search: ground the assertions over candidate domain sizes,
//! encode to SAT, and sweep size vectors until a model is found.
//!
//! A sort's size range comes from its declaration: enumeration datatypes have
//! exactly one element per constructor, and an uninterpreted sort covered by
//! an axiom `(forall ((x S)) (or (= x c1) ... (= x cn)))` has at most n
//! elements. Exhausting the ranges refutes the theory only when every sort is
//! bounded one of these ways; otherwise the sweep ends in `unknown`.

use crate::sat::{lit, Lit, SatResult, SatSolver};
use crate::theory::{Decls, Elem, Expr, SortDef, SortRef};
use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

pub struct Problem {
    pub decls: Decls,
    pub asserts: Vec<Expr>,
}

/// A finite interpretation, kept for get-value queries.
pub struct Model {
    pub sort_names: Vec<String>,
    pub sort_sizes: Vec<usize>,
    pub ctors: Vec<Option<Vec<String>>>,
    sort_idx: HashMap<String, usize>,
    /// name -> (arg sort ids, ret sort id or None for Bool, table)
    funcs: HashMap<String, (Vec<usize>, Option<usize>, Vec<usize>)>,
}

impl Model {
    pub fn sort_id(&self, name: &str) -> Option<usize> {
        self.sort_idx.get(name).copied()
    }

    pub fn eval_elem(&self, e: &Elem, env: &mut Vec<usize>) -> Result<usize, String> {
        match e {
            Elem::Var(slot) => Ok(env[*slot]),
            Elem::App(f, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.eval_elem(a, env))
                    .collect::<Result<Vec<_>, _>>()?;
                let (arg_sorts, _, table) = self
                    .funcs
                    .get(f)
                    .ok_or_else(|| format!("model does not interpret {}", f))?;
                Ok(table[tuple_index(&vals, arg_sorts, &self.sort_sizes)])
            }
        }
    }

    pub fn eval_expr(&self, e: &Expr, env: &mut Vec<usize>) -> Result<bool, String> {
        match e {
            Expr::Const(b) => Ok(*b),
            Expr::Not(x) => Ok(!self.eval_expr(x, env)?),
            Expr::And(xs) => {
                for x in xs {
                    if !self.eval_expr(x, env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Expr::Or(xs) => {
                for x in xs {
                    if self.eval_expr(x, env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Expr::Iff(a, b) => Ok(self.eval_expr(a, env)? == self.eval_expr(b, env)?),
            Expr::Eq(a, b) => Ok(self.eval_elem(a, env)? == self.eval_elem(b, env)?),
            Expr::Pred(f, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.eval_elem(a, env))
                    .collect::<Result<Vec<_>, _>>()?;
                let (arg_sorts, _, table) = self
                    .funcs
                    .get(f)
                    .ok_or_else(|| format!("model does not interpret {}", f))?;
                Ok(table[tuple_index(&vals, arg_sorts, &self.sort_sizes)] == 1)
            }
            Expr::Quant { forall, sort, body } => {
                let sid = self.sort_id(sort).ok_or_else(|| format!("unknown sort {}", sort))?;
                for v in 0..self.sort_sizes[sid] {
                    env.push(v);
                    let r = self.eval_expr(body, env)?;
                    env.pop();
                    if *forall && !r {
                        return Ok(false);
                    }
                    if !*forall && r {
                        return Ok(true);
                    }
                }
                Ok(*forall)
            }
        }
    }

    /// Render an element value: the constructor name for enum sorts.
    pub fn value_name(&self, sort: &str, v: usize) -> Option<&str> {
        let sid = self.sort_id(sort)?;
        self.ctors[sid].as_ref().map(|cs| cs[v].as_str())
    }
}

fn tuple_index(vals: &[usize], arg_sorts: &[usize], sizes: &[usize]) -> usize {
    let mut idx = 0;
    for (v, s) in vals.iter().zip(arg_sorts) {
        idx = idx * sizes[*s] + v;
    }
    idx
}

/// Per-sort size range information.
struct SortPlan {
    name: String,
    def: SortDef,
    /// candidate sizes in ascending order
    range: Vec<usize>,
    /// true when exhausting `range` refutes the theory
    bounded: bool,
}

fn analyze_sorts(prob: &Problem) -> Vec<SortPlan> {
    // Constants per sort, in declaration order.
    let mut consts: HashMap<&str, Vec<&str>> = HashMap::new();
    for (name, sig) in &prob.decls.funcs {
        if sig.args.is_empty() && !sig.ctor {
            if let SortRef::Named(s) = &sig.ret {
                consts.entry(s.as_str()).or_default().push(name.as_str());
            }
        }
    }
    // Covering axioms: forall x:S. x = c1 \/ ... \/ x = cn.
    let mut covered: HashMap<String, usize> = HashMap::new();
    for a in &prob.asserts {
        if let Some((sort, n)) = covering_shape(a, &prob.decls) {
            let e = covered.entry(sort).or_insert(n);
            *e = (*e).min(n);
        }
    }
    prob.decls
        .sorts
        .iter()
        .map(|(name, def)| match def {
            SortDef::Enum(cs) => SortPlan {
                name: name.clone(),
                def: def.clone(),
                range: vec![cs.len()],
                bounded: true,
            },
            SortDef::Free => {
                let ncon = consts.get(name.as_str()).map_or(0, |v| v.len());
                if let Some(&cap) = covered.get(name) {
                    SortPlan {
                        name: name.clone(),
                        def: def.clone(),
                        range: (1..=cap.max(1)).collect(),
                        bounded: true,
                    }
                } else {
                    SortPlan {
                        name: name.clone(),
                        def: def.clone(),
                        range: (1..=ncon.max(1)).collect(),
                        bounded: false,
                    }
                }
            }
        })
        .collect()
}

fn covering_shape(e: &Expr, decls: &Decls) -> Option<(String, usize)> {
    let Expr::Quant { forall: true, sort, body } = e else {
        return None;
    };
    let items: Vec<&Expr> = match body.as_ref() {
        Expr::Or(xs) => xs.iter().collect(),
        eq @ Expr::Eq(..) => vec![eq],
        _ => return None,
    };
    let mut names = BTreeSet::new();
    for item in items {
        let Expr::Eq(a, b) = item else { return None };
        let c = match (a, b) {
            (Elem::Var(0), Elem::App(c, args)) if args.is_empty() => c,
            (Elem::App(c, args), Elem::Var(0)) if args.is_empty() => c,
            _ => return None,
        };
        let sig = decls.func(c)?;
        if sig.ctor || sig.ret != SortRef::Named(sort.clone()) {
            return None;
        }
        names.insert(c.clone());
    }
    Some((sort.clone(), names.len()))
}

/// SAT encoding of the problem at one fixed size vector.
struct Encoder<'p> {
    prob: &'p Problem,
    sort_idx: HashMap<String, usize>,
    sizes: Vec<usize>,
    var_count: usize,
    clauses: Vec<Vec<Lit>>,
    /// name -> (arg sort ids, ret: None=Bool, base var per tuple or usize::MAX when fixed/novar, ctor value)
    cells: HashMap<String, FuncCells>,
}

struct FuncCells {
    arg_sorts: Vec<usize>,
    ret: Option<usize>,
    bases: Vec<usize>, // usize::MAX when no vars are needed
    ctor_value: Option<usize>,
}

const NO_VAR: usize = usize::MAX;

impl<'p> Encoder<'p> {
    fn new(prob: &'p Problem, plans: &[SortPlan], sizes: &[usize]) -> Self {
        let mut sort_idx = HashMap::new();
        for (i, p) in plans.iter().enumerate() {
            sort_idx.insert(p.name.clone(), i);
        }
        let mut enc = Encoder {
            prob,
            sort_idx,
            sizes: sizes.to_vec(),
            var_count: 1, // var 0 is the constant-true marker
            clauses: vec![vec![lit(0, true)]],
            cells: HashMap::new(),
        };
        enc.allocate_cells(plans);
        enc
    }

    fn true_lit(&self) -> Lit {
        lit(0, true)
    }

    fn const_lit(&self, b: bool) -> Lit {
        lit(0, b)
    }

    fn is_const(&self, l: Lit) -> Option<bool> {
        if l == lit(0, true) {
            Some(true)
        } else if l == lit(0, false) {
            Some(false)
        } else {
            None
        }
    }

    fn fresh(&mut self) -> usize {
        let v = self.var_count;
        self.var_count += 1;
        v
    }

    fn allocate_cells(&mut self, plans: &[SortPlan]) {
        for (name, sig) in &self.prob.decls.funcs {
            let arg_sorts: Vec<usize> = sig
                .args
                .iter()
                .map(|s| match s {
                    SortRef::Named(n) => self.sort_idx[n],
                    SortRef::Bool => unreachable!("Bool arguments are rejected at declaration"),
                })
                .collect();
            if sig.ctor {
                let SortRef::Named(ret) = &sig.ret else { unreachable!() };
                let sid = self.sort_idx[ret];
                let SortDef::Enum(cs) = &plans[sid].def else { unreachable!() };
                let value = cs.iter().position(|c| c == name).unwrap();
                self.cells.insert(
                    name.clone(),
                    FuncCells { arg_sorts, ret: Some(sid), bases: vec![NO_VAR], ctor_value: Some(value) },
                );
                continue;
            }
            let ntuples: usize = arg_sorts.iter().map(|&s| self.sizes[s]).product();
            match &sig.ret {
                SortRef::Bool => {
                    let bases: Vec<usize> = (0..ntuples).map(|_| self.fresh()).collect();
                    self.cells
                        .insert(name.clone(), FuncCells { arg_sorts, ret: None, bases, ctor_value: None });
                }
                SortRef::Named(ret) => {
                    let sid = self.sort_idx[ret];
                    let n = self.sizes[sid];
                    let mut bases = Vec::with_capacity(ntuples);
                    for _ in 0..ntuples {
                        if n == 1 {
                            bases.push(NO_VAR);
                        } else {
                            let base = self.var_count;
                            for _ in 0..n {
                                self.fresh();
                            }
                            bases.push(base);
                            // exactly-one
                            self.clauses.push((0..n).map(|v| lit(base + v, true)).collect());
                            for a in 0..n {
                                for b in a + 1..n {
                                    self.clauses.push(vec![lit(base + a, false), lit(base + b, false)]);
                                }
                            }
                        }
                    }
                    self.cells
                        .insert(name.clone(), FuncCells { arg_sorts, ret: Some(sid), bases, ctor_value: None });
                }
            }
        }
        // Least-value symmetry breaking over the constants of each free sort:
        // the i-th constant may use value v>0 only if an earlier constant
        // uses v-1. Sound because elements of free sorts are interchangeable.
        for (sid, plan) in plans.iter().enumerate() {
            if !matches!(plan.def, SortDef::Free) {
                continue;
            }
            let n = self.sizes[sid];
            if n <= 1 {
                continue;
            }
            let consts: Vec<&str> = self
                .prob
                .decls
                .funcs
                .iter()
                .filter(|(_, sig)| {
                    sig.args.is_empty() && !sig.ctor && sig.ret == SortRef::Named(plan.name.clone())
                })
                .map(|(name, _)| name.as_str())
                .collect();
            for (i, c) in consts.iter().enumerate() {
                let base_i = self.cells[*c].bases[0];
                for v in 1..n {
                    let mut clause = vec![lit(base_i + v, false)];
                    for cj in consts.iter().take(i) {
                        let base_j = self.cells[*cj].bases[0];
                        if v - 1 < n {
                            clause.push(lit(base_j + v - 1, true));
                        }
                    }
                    self.clauses.push(clause);
                }
            }
        }
    }

    fn cell_eq_lit(&self, f: &str, tuple_idx: usize, v: usize) -> Lit {
        let cells = &self.cells[f];
        if let Some(cv) = cells.ctor_value {
            return self.const_lit(cv == v);
        }
        let base = cells.bases[tuple_idx];
        if base == NO_VAR {
            self.const_lit(v == 0)
        } else {
            lit(base + v, true)
        }
    }

    fn and_lits(&mut self, ls: Vec<Lit>) -> Lit {
        let mut kept = Vec::new();
        for l in ls {
            match self.is_const(l) {
                Some(true) => {}
                Some(false) => return self.const_lit(false),
                None => kept.push(l),
            }
        }
        kept.sort_unstable();
        kept.dedup();
        match kept.len() {
            0 => self.true_lit(),
            1 => kept[0],
            _ => {
                let aux = self.fresh();
                let al = lit(aux, true);
                let mut big = vec![al];
                for &l in &kept {
                    self.clauses.push(vec![-al, l]);
                    big.push(-l);
                }
                self.clauses.push(big);
                al
            }
        }
    }

    fn or_lits(&mut self, ls: Vec<Lit>) -> Lit {
        let negs: Vec<Lit> = ls.into_iter().map(|l| -l).collect();
        -self.and_lits(negs)
    }

    fn elem_sort(&self, e: &Elem, var_sorts: &[usize]) -> usize {
        match e {
            Elem::Var(slot) => var_sorts[*slot],
            Elem::App(f, _) => self.cells[f].ret.expect("element term"),
        }
    }

    /// Literal for "term e denotes element v", under a ground environment.
    fn elem_eq(&mut self, e: &Elem, v: usize, env: &[usize], var_sorts: &[usize]) -> Lit {
        match e {
            Elem::Var(slot) => self.const_lit(env[*slot] == v),
            Elem::App(f, args) => {
                if args.is_empty() {
                    return self.cell_eq_lit(f, 0, v);
                }
                let arg_sorts = self.cells[f].arg_sorts.clone();
                let mut tuples = vec![(0usize, Vec::<Lit>::new())];
                for (a, &s) in args.iter().zip(&arg_sorts) {
                    let n = self.sizes[s];
                    let mut next = Vec::new();
                    for (idx, ls) in &tuples {
                        for u in 0..n {
                            let l = self.elem_eq(a, u, env, var_sorts);
                            if self.is_const(l) == Some(false) {
                                continue;
                            }
                            let mut ls2 = ls.clone();
                            ls2.push(l);
                            next.push((idx * n + u, ls2));
                        }
                    }
                    tuples = next;
                }
                let mut alts = Vec::new();
                for (idx, ls) in tuples {
                    let cl = self.cell_eq_lit(f, idx, v);
                    let mut ls2 = ls;
                    ls2.push(cl);
                    let a = self.and_lits(ls2);
                    alts.push(a);
                }
                self.or_lits(alts)
            }
        }
    }

    fn expr(&mut self, e: &Expr, env: &mut Vec<usize>, var_sorts: &mut Vec<usize>) -> Lit {
        match e {
            Expr::Const(b) => self.const_lit(*b),
            Expr::Not(x) => -self.expr(x, env, var_sorts),
            Expr::And(xs) => {
                let ls = xs.iter().map(|x| self.expr(x, env, var_sorts)).collect();
                self.and_lits(ls)
            }
            Expr::Or(xs) => {
                let ls = xs.iter().map(|x| self.expr(x, env, var_sorts)).collect();
                self.or_lits(ls)
            }
            Expr::Iff(a, b) => {
                let la = self.expr(a, env, var_sorts);
                let lb = self.expr(b, env, var_sorts);
                let both = self.and_lits(vec![la, lb]);
                let neither = self.and_lits(vec![-la, -lb]);
                self.or_lits(vec![both, neither])
            }
            Expr::Eq(a, b) => {
                let s = self.elem_sort(a, var_sorts);
                let n = self.sizes[s];
                let mut alts = Vec::new();
                for v in 0..n {
                    let la = self.elem_eq(a, v, env, var_sorts);
                    let lb = self.elem_eq(b, v, env, var_sorts);
                    let l = self.and_lits(vec![la, lb]);
                    alts.push(l);
                }
                self.or_lits(alts)
            }
            Expr::Pred(f, args) => {
                if args.is_empty() {
                    let base = self.cells[f].bases[0];
                    return lit(base, true);
                }
                let arg_sorts = self.cells[f].arg_sorts.clone();
                let mut alts = Vec::new();
                let counts: Vec<usize> = arg_sorts.iter().map(|&s| self.sizes[s]).collect();
                let mut tuple = vec![0usize; arg_sorts.len()];
                loop {
                    let mut ls = Vec::new();
                    for (a, &u) in args.iter().zip(&tuple) {
                        ls.push(self.elem_eq(a, u, env, var_sorts));
                    }
                    let idx = tuple_index(&tuple, &(0..arg_sorts.len()).collect::<Vec<_>>(), &counts);
                    let base = self.cells[f].bases[idx];
                    ls.push(lit(base, true));
                    let l = self.and_lits(ls);
                    alts.push(l);
                    // next tuple
                    let mut k = tuple.len();
                    loop {
                        if k == 0 {
                            break;
                        }
                        k -= 1;
                        tuple[k] += 1;
                        if tuple[k] < counts[k] {
                            break;
                        }
                        tuple[k] = 0;
                        if k == 0 {
                            k = usize::MAX;
                            break;
                        }
                    }
                    if k == usize::MAX {
                        break;
                    }
                }
                self.or_lits(alts)
            }
            Expr::Quant { forall, sort, body } => {
                let sid = self.sort_idx[sort];
                let n = self.sizes[sid];
                let mut ls = Vec::new();
                var_sorts.push(sid);
                for v in 0..n {
                    env.push(v);
                    ls.push(self.expr(body, env, var_sorts));
                    env.pop();
                }
                var_sorts.pop();
                if *forall {
                    self.and_lits(ls)
                } else {
                    self.or_lits(ls)
                }
            }
        }
    }

    fn finish(mut self) -> (SatSolver, HashMap<String, FuncCells>, Vec<usize>) {
        let mut env = Vec::new();
        let mut var_sorts = Vec::new();
        let top: Vec<Lit> = self
            .prob
            .asserts
            .iter()
            .map(|a| {
                let a = a.clone();
                self.expr(&a, &mut env, &mut var_sorts)
            })
            .collect();
        for l in top {
            self.clauses.push(vec![l]);
        }
        let mut solver = SatSolver::new(self.var_count);
        for c in self.clauses {
            solver.add_clause(c);
        }
        (solver, self.cells, self.sizes)
    }
}

fn extract_model(
    prob: &Problem,
    plans: &[SortPlan],
    sizes: &[usize],
    cells: &HashMap<String, FuncCells>,
    solver: &SatSolver,
) -> Model {
    let mut sort_idx = HashMap::new();
    let mut sort_names = Vec::new();
    let mut ctors = Vec::new();
    for (i, p) in plans.iter().enumerate() {
        sort_idx.insert(p.name.clone(), i);
        sort_names.push(p.name.clone());
        ctors.push(match &p.def {
            SortDef::Enum(cs) => Some(cs.clone()),
            SortDef::Free => None,
        });
    }
    let mut funcs = HashMap::new();
    for (name, sig) in &prob.decls.funcs {
        let fc = &cells[name];
        let ntuples: usize = fc.arg_sorts.iter().map(|&s| sizes[s]).product();
        let mut table = Vec::with_capacity(ntuples);
        for t in 0..ntuples {
            if let Some(cv) = fc.ctor_value {
                table.push(cv);
                continue;
            }
            match fc.ret {
                None => table.push(usize::from(solver.model_value(fc.bases[t]))),
                Some(sid) => {
                    let n = sizes[sid];
                    if fc.bases[t] == NO_VAR {
                        table.push(0);
                    } else {
                        let v = (0..n)
                            .find(|&v| solver.model_value(fc.bases[t] + v))
                            .expect("exactly-one cell");
                        table.push(v);
                    }
                }
            }
        }
        let _ = sig;
        funcs.insert(name.clone(), (fc.arg_sorts.clone(), fc.ret, table));
    }
    Model { sort_names, sort_sizes: sizes.to_vec(), ctors, sort_idx, funcs }
}

/// All size vectors, smallest total first, then lexicographic.
fn size_vectors(plans: &[SortPlan]) -> Vec<Vec<usize>> {
    let mut vectors = vec![Vec::new()];
    for p in plans {
        let mut next = Vec::new();
        for v in &vectors {
            for &n in &p.range {
                let mut v2 = v.clone();
                v2.push(n);
                next.push(v2);
            }
        }
        vectors = next;
    }
    vectors.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    vectors
}

enum JobOutcome {
    Sat(Box<Model>),
    Unsat,
    Timeout,
}

fn run_job(
    prob: &Problem,
    plans: &[SortPlan],
    sizes: &[usize],
    assumption: Option<Lit>,
    deadline: Option<Instant>,
) -> JobOutcome {
    let enc = Encoder::new(prob, plans, sizes);
    let (mut solver, cells, sizes_v) = enc.finish();
    let assumptions: Vec<Lit> = assumption.into_iter().collect();
    match solver.solve(&assumptions, deadline) {
        SatResult::Sat => JobOutcome::Sat(Box::new(extract_model(prob, plans, &sizes_v, &cells, &solver))),
        SatResult::Unsat => JobOutcome::Unsat,
        SatResult::Timeout => JobOutcome::Timeout,
    }
}

/// Root-split literals for one size vector; used to fan the search out.
fn split_lits(prob: &Problem, plans: &[SortPlan], sizes: &[usize]) -> Vec<Option<Lit>> {
    let enc = Encoder::new(prob, plans, sizes);
    // Prefer a function cell (not a constant) with a searched domain.
    let mut best: Option<(usize, usize)> = None; // (base, domain)
    for (name, sig) in &prob.decls.funcs {
        if sig.ctor {
            continue;
        }
        let fc = &enc.cells[name];
        let dom = match fc.ret {
            None => continue,
            Some(sid) => sizes[sid],
        };
        if dom < 2 {
            continue;
        }
        let nonconst = !sig.args.is_empty();
        for &b in &fc.bases {
            if b != NO_VAR {
                match best {
                    None => best = Some((b, dom)),
                    Some(_) if nonconst => {
                        best = Some((b, dom));
                    }
                    _ => {}
                }
                break;
            }
        }
        if nonconst && best.is_some() {
            break;
        }
    }
    match best {
        None => vec![None],
        Some((base, dom)) => (0..dom).map(|v| Some(lit(base + v, true))).collect(),
    }
}

pub fn check(prob: &Problem, timeout: Option<Duration>, mode: Mode) -> (Verdict, Option<Model>) {
    let plans = analyze_sorts(prob);
    let deadline = timeout.map(|t| Instant::now() + t);
    let vectors = size_vectors(&plans);
    let all_bounded = plans.iter().all(|p| p.bounded);

    let jobs: Vec<(usize, Option<Lit>)> = vectors
        .iter()
        .enumerate()
        .flat_map(|(vi, sizes)| {
            split_lits(prob, &plans, sizes)
                .into_iter()
                .map(move |l| (vi, l))
        })
        .collect();

    let outcome = match mode {
        Mode::Sequential => {
            let mut result = None;
            for (vi, assumption) in &jobs {
                match run_job(prob, &plans, &vectors[*vi], *assumption, deadline) {
                    JobOutcome::Unsat => continue,
                    other => {
                        result = Some(other);
                        break;
                    }
                }
            }
            result
        }
        Mode::Parallel => run_parallel(prob, &plans, &vectors, &jobs, deadline),
    };

    match outcome {
        Some(JobOutcome::Sat(m)) => (Verdict::Sat, Some(*m)),
        Some(JobOutcome::Timeout) => (Verdict::Unknown, None),
        Some(JobOutcome::Unsat) => unreachable!(),
        None => {
            if all_bounded {
                (Verdict::Unsat, None)
            } else {
                (Verdict::Unknown, None)
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn run_parallel(
    prob: &Problem,
    plans: &[SortPlan],
    vectors: &[Vec<usize>],
    jobs: &[(usize, Option<Lit>)],
    deadline: Option<Instant>,
) -> Option<JobOutcome> {
    use rayon::prelude::*;
    if jobs.len() <= 2 {
        for (vi, assumption) in jobs {
            match run_job(prob, plans, &vectors[*vi], *assumption, deadline) {
                JobOutcome::Unsat => continue,
                other => return Some(other),
            }
        }
        return None;
    }
    jobs.par_iter()
        .map(|(vi, assumption)| run_job(prob, plans, &vectors[*vi], *assumption, deadline))
        .find_first(|o| !matches!(o, JobOutcome::Unsat))
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(
    prob: &Problem,
    plans: &[SortPlan],
    vectors: &[Vec<usize>],
    jobs: &[(usize, Option<Lit>)],
    deadline: Option<Instant>,
) -> Option<JobOutcome> {
    for (vi, assumption) in jobs {
        match run_job(prob, plans, &vectors[*vi], *assumption, deadline) {
            JobOutcome::Unsat => continue,
            other => return Some(other),
        }
    }
    None
}

/// Check in the build's default mode: parallel when the feature is enabled.
pub fn check_default(prob: &Problem, timeout: Option<Duration>) -> (Verdict, Option<Model>) {
    #[cfg(feature = "parallel")]
    return check(prob, timeout, Mode::Parallel);
    #[cfg(not(feature = "parallel"))]
    return check(prob, timeout, Mode::Sequential);
}
