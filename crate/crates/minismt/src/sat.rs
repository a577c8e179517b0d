//! A small DPLL SAT solver with two-watched-literal propagation.
//!
//! Instances produced by grounding finite-domain problems are tiny, so the
//! solver favours simplicity over clause learning. Search order is fixed by
//! variable index, which keeps every run deterministic.

use std::time::Instant;

/// A literal: positive `v+1` or negative `-(v+1)` for variable index `v`.
pub type Lit = i32;

pub fn var_of(lit: Lit) -> usize {
    (lit.unsigned_abs() as usize) - 1
}

pub fn lit(var: usize, positive: bool) -> Lit {
    let v = (var + 1) as i32;
    if positive {
        v
    } else {
        -v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatResult {
    Sat,
    Unsat,
    /// The deadline expired before the search finished.
    Timeout,
}

#[derive(Clone)]
pub struct SatSolver {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>, // all length >= 2
    units: Vec<Lit>,
    watches: Vec<Vec<usize>>, // indexed by literal code
    assign: Vec<i8>,          // 0 unknown, 1 true, -1 false
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    empty_clause: bool,
}

fn lit_code(l: Lit) -> usize {
    let v = var_of(l);
    2 * v + if l > 0 { 0 } else { 1 }
}

impl SatSolver {
    pub fn new(num_vars: usize) -> Self {
        SatSolver {
            num_vars,
            clauses: Vec::new(),
            units: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assign: vec![0; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            empty_clause: false,
        }
    }

    pub fn add_clause(&mut self, mut c: Vec<Lit>) {
        c.sort_unstable();
        c.dedup();
        for w in c.windows(2) {
            if w[0] == -w[1] {
                return; // tautology
            }
        }
        match c.len() {
            0 => self.empty_clause = true,
            1 => self.units.push(c[0]),
            _ => {
                let idx = self.clauses.len();
                self.watches[lit_code(c[0])].push(idx);
                self.watches[lit_code(c[1])].push(idx);
                self.clauses.push(c);
            }
        }
    }

    fn value(&self, l: Lit) -> i8 {
        let v = self.assign[var_of(l)];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn enqueue(&mut self, l: Lit) -> bool {
        match self.value(l) {
            1 => true,
            -1 => false,
            _ => {
                self.assign[var_of(l)] = if l > 0 { 1 } else { -1 };
                self.trail.push(l);
                true
            }
        }
    }

    /// Propagate from position `head` on the trail; false on conflict.
    fn propagate(&mut self, mut head: usize) -> bool {
        while head < self.trail.len() {
            let p = self.trail[head];
            head += 1;
            let falsified = -p;
            let code = lit_code(falsified);
            let mut i = 0;
            'watch: while i < self.watches[code].len() {
                let ci = self.watches[code][i];
                if self.clauses[ci][0] == falsified {
                    self.clauses[ci].swap(0, 1);
                }
                let first = self.clauses[ci][0];
                if self.value(first) == 1 {
                    i += 1;
                    continue;
                }
                for k in 2..self.clauses[ci].len() {
                    let cand = self.clauses[ci][k];
                    if self.value(cand) != -1 {
                        self.clauses[ci].swap(1, k);
                        self.watches[code].swap_remove(i);
                        self.watches[lit_code(cand)].push(ci);
                        continue 'watch;
                    }
                }
                // No replacement watch: unit or conflict.
                if self.value(first) == -1 {
                    return false;
                }
                if !self.enqueue(first) {
                    return false;
                }
                i += 1;
            }
        }
        true
    }

    fn decide(&mut self, l: Lit) {
        self.trail_lim.push(self.trail.len());
        let ok = self.enqueue(l);
        debug_assert!(ok);
    }

    fn backtrack(&mut self) -> Option<Lit> {
        let lim = self.trail_lim.pop()?;
        let decision = self.trail[lim];
        for &l in &self.trail[lim..] {
            self.assign[var_of(l)] = 0;
        }
        self.trail.truncate(lim);
        Some(decision)
    }

    /// Solve under extra assumptions, with an optional deadline.
    pub fn solve(&mut self, assumptions: &[Lit], deadline: Option<Instant>) -> SatResult {
        if self.empty_clause {
            return SatResult::Unsat;
        }
        let units = std::mem::take(&mut self.units);
        for &u in &units {
            if !self.enqueue(u) {
                return SatResult::Unsat;
            }
        }
        self.units = units;
        for &a in assumptions {
            if !self.enqueue(a) {
                return SatResult::Unsat;
            }
        }
        if !self.propagate(0) {
            return SatResult::Unsat;
        }
        let mut next_var = 0;
        let mut steps: u32 = 0;
        loop {
            steps = steps.wrapping_add(1);
            if steps % 512 == 0 {
                if let Some(d) = deadline {
                    if Instant::now() >= d {
                        return SatResult::Timeout;
                    }
                }
            }
            while next_var < self.num_vars && self.assign[next_var] != 0 {
                next_var += 1;
            }
            if next_var == self.num_vars {
                return SatResult::Sat;
            }
            let head = self.trail.len();
            self.decide(lit(next_var, true));
            if self.propagate(head) {
                continue;
            }
            // Conflict: flip the innermost decision that still has an
            // untried branch, undoing flips that conflict immediately.
            loop {
                match self.backtrack() {
                    None => return SatResult::Unsat,
                    Some(dec) => {
                        let head = self.trail.len();
                        if self.enqueue(-dec) && self.propagate(head) {
                            break;
                        }
                        for &l in &self.trail[head..] {
                            self.assign[var_of(l)] = 0;
                        }
                        self.trail.truncate(head);
                    }
                }
            }
            next_var = 0;
        }
    }

    pub fn model_value(&self, var: usize) -> bool {
        self.assign[var] == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_sat() {
        let mut s = SatSolver::new(2);
        s.add_clause(vec![lit(0, true), lit(1, true)]);
        s.add_clause(vec![lit(0, false)]);
        assert_eq!(s.solve(&[], None), SatResult::Sat);
        assert!(s.model_value(1));
        assert!(!s.model_value(0));
    }

    #[test]
    fn simple_unsat() {
        let mut s = SatSolver::new(1);
        s.add_clause(vec![lit(0, true)]);
        s.add_clause(vec![lit(0, false)]);
        assert_eq!(s.solve(&[], None), SatResult::Unsat);
    }

    #[test]
    fn pigeonhole_4_into_3_unsat() {
        let holes = 3;
        let var = |i: usize, j: usize| i * holes + j;
        let mut s = SatSolver::new(4 * holes);
        for i in 0..4 {
            s.add_clause((0..holes).map(|j| lit(var(i, j), true)).collect());
        }
        for j in 0..holes {
            for a in 0..4 {
                for b in a + 1..4 {
                    s.add_clause(vec![lit(var(a, j), false), lit(var(b, j), false)]);
                }
            }
        }
        assert_eq!(s.solve(&[], None), SatResult::Unsat);
    }

    #[test]
    fn chain_propagation() {
        // x0 -> x1 -> ... -> x9, assert x0, all forced true.
        let mut s = SatSolver::new(10);
        for i in 0..9 {
            s.add_clause(vec![lit(i, false), lit(i + 1, true)]);
        }
        s.add_clause(vec![lit(0, true)]);
        assert_eq!(s.solve(&[], None), SatResult::Sat);
        for i in 0..10 {
            assert!(s.model_value(i));
        }
    }
}
