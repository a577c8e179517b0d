//! Front end for the accepted SMT-LIB 2.6 subset: `declare-sort` with arity
//! 0, `declare-fun`, `declare-const` and `assert` over the formula grammar.
//! Anything else is rejected with an error naming the unsupported feature.

use super::ast::{
    FuncDecl, Formula, PredDecl, Provenance, Signature, Term, Theory, Var, RESERVED_PREFIX,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: u32,
    col: u32,
}

impl Pos {
    fn err(self, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, msg: msg.into() }
    }
}

#[derive(Debug, Clone)]
enum Sexp {
    /// Symbol, numeral, keyword or string; `quoted` marks |...| symbols.
    Atom { text: String, quoted: bool, pos: Pos },
    List { items: Vec<Sexp>, pos: Pos },
}

impl Sexp {
    fn pos(&self) -> Pos {
        match self {
            Sexp::Atom { pos, .. } | Sexp::List { pos, .. } => *pos,
        }
    }

    fn symbol(&self) -> Option<&str> {
        match self {
            Sexp::Atom { text, .. } => Some(text.as_str()),
            Sexp::List { .. } => None,
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), line: 1, col: 1 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }
}

fn is_simple_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c)
}

fn parse_sexps(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut lx = Lexer::new(text);
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top: Vec<Sexp> = Vec::new();
    loop {
        lx.skip_trivia();
        let pos = lx.pos();
        let Some(&c) = lx.chars.peek() else {
            if let Some((_, open)) = stack.last() {
                return Err(open.err("unclosed '('"));
            }
            return Ok(top);
        };
        let sexp = match c {
            '(' => {
                lx.bump();
                stack.push((Vec::new(), pos));
                continue;
            }
            ')' => {
                lx.bump();
                let (items, open) = stack
                    .pop()
                    .ok_or_else(|| pos.err("unbalanced ')'"))?;
                Sexp::List { items, pos: open }
            }
            '|' => {
                lx.bump();
                let mut s = String::new();
                loop {
                    match lx.bump() {
                        None => return Err(pos.err("unterminated |...| symbol")),
                        Some('|') => break,
                        Some('\\') => return Err(pos.err("backslash is not allowed in |...| symbols")),
                        Some(ch) => s.push(ch),
                    }
                }
                Sexp::Atom { text: s, quoted: true, pos }
            }
            '"' => {
                lx.bump();
                let mut s = String::new();
                loop {
                    match lx.bump() {
                        None => return Err(pos.err("unterminated string literal")),
                        Some('"') => {
                            if lx.chars.peek() == Some(&'"') {
                                lx.bump();
                                s.push('"');
                            } else {
                                break;
                            }
                        }
                        Some(ch) => s.push(ch),
                    }
                }
                Sexp::Atom { text: format!("\"{s}\""), quoted: false, pos }
            }
            _ if is_simple_symbol_char(c) || c == ':' => {
                let mut s = String::new();
                while let Some(&ch) = lx.chars.peek() {
                    if is_simple_symbol_char(ch) || ch == ':' {
                        s.push(ch);
                        lx.bump();
                    } else {
                        break;
                    }
                }
                Sexp::Atom { text: s, quoted: false, pos }
            }
            other => return Err(pos.err(format!("unexpected character '{other}'"))),
        };
        match stack.last_mut() {
            Some((items, _)) => items.push(sexp),
            None => top.push(sexp),
        }
    }
}

/// Parse a theory source text into a [`Theory`].
pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    let forms = parse_sexps(text)?;
    let mut sig = Signature::new();
    let mut asserts: Vec<(Sexp, Pos)> = Vec::new();
    for form in forms {
        let pos = form.pos();
        let Sexp::List { items, .. } = &form else {
            return Err(pos.err("expected a command"));
        };
        let head = items
            .first()
            .and_then(|s| s.symbol())
            .ok_or_else(|| pos.err("expected a command"))?;
        match head {
            "declare-sort" => {
                if items.len() != 3 {
                    return Err(pos.err("declare-sort expects a name and an arity"));
                }
                let name = expect_user_symbol(&items[1])?;
                if items[2].symbol() != Some("0") {
                    return Err(items[2]
                        .pos()
                        .err("unsupported SMT-LIB feature: declare-sort with nonzero arity"));
                }
                sig.add_sort(name).map_err(|e| items[1].pos().err(e.0))?;
            }
            "declare-fun" => {
                if items.len() != 4 {
                    return Err(pos.err("declare-fun expects a name, argument sorts and a result sort"));
                }
                let name = expect_user_symbol(&items[1])?;
                let Sexp::List { items: arg_items, .. } = &items[2] else {
                    return Err(items[2].pos().err("argument sorts must be a list"));
                };
                let mut args = Vec::new();
                for a in arg_items {
                    let s = sort_name(a, &sig)?;
                    if s == "Bool" {
                        return Err(a
                            .pos()
                            .err("unsupported SMT-LIB feature: Bool-sorted function arguments"));
                    }
                    args.push(s);
                }
                let result = sort_name(&items[3], &sig)?;
                if result == "Bool" {
                    sig.add_pred(name, PredDecl { args })
                        .map_err(|e| items[1].pos().err(e.0))?;
                } else {
                    sig.add_func(name, FuncDecl { args, result })
                        .map_err(|e| items[1].pos().err(e.0))?;
                }
            }
            "declare-const" => {
                if items.len() != 3 {
                    return Err(pos.err("declare-const expects a name and a sort"));
                }
                let name = expect_user_symbol(&items[1])?;
                let result = sort_name(&items[2], &sig)?;
                if result == "Bool" {
                    sig.add_pred(name, PredDecl { args: vec![] })
                        .map_err(|e| items[1].pos().err(e.0))?;
                } else {
                    sig.add_func(name, FuncDecl { args: vec![], result })
                        .map_err(|e| items[1].pos().err(e.0))?;
                }
            }
            "assert" => {
                if items.len() != 2 {
                    return Err(pos.err("assert expects one term"));
                }
                asserts.push((items[1].clone(), pos));
            }
            other => {
                return Err(pos.err(format!("unsupported SMT-LIB command {other}")));
            }
        }
    }
    let mut theory = Theory::new(sig);
    for (term, pos) in asserts {
        let mut scope = Vec::new();
        let formula = parse_formula(&term, &theory.signature, &mut scope)?;
        theory
            .push_axiom(formula, Provenance::User)
            .map_err(|e| pos.err(e.0))?;
    }
    Ok(theory)
}

fn expect_user_symbol(sx: &Sexp) -> Result<&str, ParseError> {
    let Sexp::Atom { text, quoted, pos } = sx else {
        return Err(sx.pos().err("expected a symbol"));
    };
    if !quoted && text.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return Err(pos.err("expected a symbol, found a numeral"));
    }
    if text.starts_with(RESERVED_PREFIX) {
        return Err(pos.err(format!(
            "symbol {text} uses the reserved prefix '{RESERVED_PREFIX}'"
        )));
    }
    if text.is_empty() {
        return Err(pos.err("empty symbol"));
    }
    Ok(text)
}

fn sort_name(sx: &Sexp, sig: &Signature) -> Result<String, ParseError> {
    let name = sx
        .symbol()
        .ok_or_else(|| sx.pos().err("sort must be a symbol"))?;
    if name == "Bool" {
        return Ok("Bool".to_string());
    }
    if !sig.has_sort(name) {
        return Err(sx.pos().err(format!("unknown sort {name}")));
    }
    Ok(name.to_string())
}

fn parse_formula(sx: &Sexp, sig: &Signature, scope: &mut Vec<Var>) -> Result<Formula, ParseError> {
    match sx {
        Sexp::Atom { text, pos, .. } => match text.as_str() {
            "true" => Ok(Formula::True),
            "false" => Ok(Formula::False),
            _ => {
                if scope.iter().any(|v| &v.name == text) {
                    return Err(pos.err(format!("variable {text} used as a formula")));
                }
                if sig.pred(text).is_some_and(|d| d.args.is_empty()) {
                    Ok(Formula::Pred(text.clone(), vec![]))
                } else if sig.has_symbol(text) {
                    Err(pos.err(format!("{text} is not a predicate")))
                } else {
                    Err(pos.err(format!("unknown symbol {text}")))
                }
            }
        },
        Sexp::List { items, pos } => {
            let head = items
                .first()
                .and_then(|s| s.symbol())
                .ok_or_else(|| pos.err("expected an operator or predicate"))?;
            let args = &items[1..];
            match head {
                "and" | "or" => {
                    let sub = args
                        .iter()
                        .map(|a| parse_formula(a, sig, scope))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(match (head, sub.len()) {
                        ("and", 0) => Formula::True,
                        ("or", 0) => Formula::False,
                        ("and", _) => Formula::And(sub),
                        _ => Formula::Or(sub),
                    })
                }
                "not" => {
                    if args.len() != 1 {
                        return Err(pos.err("not expects one argument"));
                    }
                    Ok(Formula::not(parse_formula(&args[0], sig, scope)?))
                }
                "=>" => {
                    if args.len() < 2 {
                        return Err(pos.err("=> expects at least two arguments"));
                    }
                    let mut sub = args
                        .iter()
                        .map(|a| parse_formula(a, sig, scope))
                        .collect::<Result<Vec<_>, _>>()?;
                    let mut acc = sub.pop().unwrap();
                    while let Some(a) = sub.pop() {
                        acc = Formula::implies(a, acc);
                    }
                    Ok(acc)
                }
                "=" => {
                    if args.len() < 2 {
                        return Err(pos.err("= expects at least two arguments"));
                    }
                    let terms = args
                        .iter()
                        .map(|a| parse_term(a, sig, scope))
                        .collect::<Result<Vec<_>, _>>()?;
                    let mut conj = Vec::new();
                    for (w, sx_pair) in terms.windows(2).zip(args.windows(2)) {
                        let (ta, sa) = &w[0];
                        let (tb, sb) = &w[1];
                        if sa != sb {
                            return Err(sx_pair[1]
                                .pos()
                                .err(format!("equality between different sorts {sa} and {sb}")));
                        }
                        conj.push(Formula::Eq(ta.clone(), tb.clone()));
                    }
                    Ok(Formula::and(conj))
                }
                "distinct" => {
                    if args.len() < 2 {
                        return Err(pos.err("distinct expects at least two arguments"));
                    }
                    let terms = args
                        .iter()
                        .map(|a| parse_term(a, sig, scope))
                        .collect::<Result<Vec<_>, _>>()?;
                    let mut conj = Vec::new();
                    for i in 0..terms.len() {
                        for j in i + 1..terms.len() {
                            if terms[i].1 != terms[j].1 {
                                return Err(args[j].pos().err(format!(
                                    "distinct between different sorts {} and {}",
                                    terms[i].1, terms[j].1
                                )));
                            }
                            conj.push(Formula::not(Formula::Eq(
                                terms[i].0.clone(),
                                terms[j].0.clone(),
                            )));
                        }
                    }
                    Ok(Formula::and(conj))
                }
                "exists" | "forall" => {
                    if args.len() != 2 {
                        return Err(pos.err(format!("{head} expects a binder list and a body")));
                    }
                    let Sexp::List { items: binders, .. } = &args[0] else {
                        return Err(args[0].pos().err("quantifier binders must be a list"));
                    };
                    if binders.is_empty() {
                        return Err(args[0].pos().err("empty quantifier binder list"));
                    }
                    let mut vars = Vec::new();
                    for b in binders {
                        let Sexp::List { items: pair, .. } = b else {
                            return Err(b.pos().err("binder must be (name Sort)"));
                        };
                        if pair.len() != 2 {
                            return Err(b.pos().err("binder must be (name Sort)"));
                        }
                        let name = expect_user_symbol(&pair[0])?;
                        let sort = sort_name(&pair[1], sig)?;
                        if sort == "Bool" {
                            return Err(pair[1]
                                .pos()
                                .err("unsupported SMT-LIB feature: Bool-sorted quantified variables"));
                        }
                        vars.push(Var::new(name, sort));
                    }
                    let n = scope.len();
                    scope.extend(vars.iter().cloned());
                    let body = parse_formula(&args[1], sig, scope);
                    scope.truncate(n);
                    let body = body?;
                    Ok(if head == "exists" {
                        Formula::Exists(vars, Box::new(body))
                    } else {
                        Formula::Forall(vars, Box::new(body))
                    })
                }
                "let" | "match" | "ite" | "!" | "xor" => {
                    Err(pos.err(format!("unsupported SMT-LIB feature: {head}")))
                }
                _ => {
                    let decl = sig
                        .pred(head)
                        .ok_or_else(|| {
                            if sig.func(head).is_some() {
                                pos.err(format!("{head} is not a predicate"))
                            } else {
                                pos.err(format!("unknown symbol {head}"))
                            }
                        })?
                        .clone();
                    if decl.args.len() != args.len() {
                        return Err(pos.err(format!(
                            "{head} expects {} arguments, got {}",
                            decl.args.len(),
                            args.len()
                        )));
                    }
                    let mut terms = Vec::new();
                    for (a, expect) in args.iter().zip(&decl.args) {
                        let (t, s) = parse_term(a, sig, scope)?;
                        if &s != expect {
                            return Err(a
                                .pos()
                                .err(format!("argument of {head} has sort {s}, expected {expect}")));
                        }
                        terms.push(t);
                    }
                    Ok(Formula::Pred(head.to_string(), terms))
                }
            }
        }
    }
}

fn parse_term(sx: &Sexp, sig: &Signature, scope: &mut Vec<Var>) -> Result<(Term, String), ParseError> {
    match sx {
        Sexp::Atom { text, quoted, pos } => {
            if !quoted && text.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(pos.err("unsupported SMT-LIB feature: numerals (no arithmetic)"));
            }
            if let Some(v) = scope.iter().rev().find(|v| &v.name == text) {
                return Ok((Term::Var(v.clone()), v.sort.clone()));
            }
            match sig.func(text) {
                Some(d) if d.args.is_empty() => {
                    Ok((Term::constant(text.clone()), d.result.clone()))
                }
                Some(_) => Err(pos.err(format!("symbol {text} expects arguments"))),
                None => {
                    if sig.pred(text).is_some() {
                        Err(pos.err(format!("predicate {text} used as a term")))
                    } else {
                        Err(pos.err(format!("unknown symbol {text}")))
                    }
                }
            }
        }
        Sexp::List { items, pos } => {
            let head = items
                .first()
                .and_then(|s| s.symbol())
                .ok_or_else(|| pos.err("expected a function application"))?;
            if matches!(head, "let" | "match" | "ite" | "!") {
                return Err(pos.err(format!("unsupported SMT-LIB feature: {head}")));
            }
            let decl = sig
                .func(head)
                .ok_or_else(|| {
                    if sig.pred(head).is_some() {
                        pos.err(format!("predicate {head} used as a term"))
                    } else {
                        pos.err(format!("unknown symbol {head}"))
                    }
                })?
                .clone();
            let args = &items[1..];
            if decl.args.len() != args.len() {
                return Err(pos.err(format!(
                    "{head} expects {} arguments, got {}",
                    decl.args.len(),
                    args.len()
                )));
            }
            let mut terms = Vec::new();
            for (a, expect) in args.iter().zip(&decl.args) {
                let (t, s) = parse_term(a, sig, scope)?;
                if &s != expect {
                    return Err(a
                        .pos()
                        .err(format!("argument of {head} has sort {s}, expected {expect}")));
                }
                terms.push(t);
            }
            Ok((Term::App(head.to_string(), terms), decl.result.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_theory() {
        let t = parse_theory(
            "(declare-sort S 0)(declare-fun P (S) Bool)(assert (exists ((x S)) (P x)))",
        )
        .unwrap();
        assert_eq!(t.signature.sorts().count(), 1);
        assert_eq!(t.signature.preds().count(), 1);
        assert_eq!(t.axioms.len(), 1);
        match &t.axioms[0].formula {
            Formula::Exists(vars, body) => {
                assert_eq!(vars, &[Var::new("x", "S")]);
                assert!(matches!(body.as_ref(), Formula::Pred(p, _) if p == "P"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_symbol_is_reported() {
        let err = parse_theory("(assert (foo x))").unwrap_err();
        assert!(err.msg.contains("unknown symbol foo"), "{err}");
    }

    #[test]
    fn reserved_prefix_rejected() {
        let err = parse_theory("(declare-sort S 0)(declare-const @c S)").unwrap_err();
        assert!(err.msg.contains("reserved prefix"), "{err}");
    }

    #[test]
    fn unsupported_features_are_named() {
        let err = parse_theory("(set-logic ALL)").unwrap_err();
        assert!(err.msg.contains("set-logic"), "{err}");
        let err = parse_theory(
            "(declare-sort S 0)(declare-const c S)(assert (let ((x c)) (= x c)))",
        )
        .unwrap_err();
        assert!(err.msg.contains("let"), "{err}");
    }

    #[test]
    fn bool_quantifier_rejected() {
        let err = parse_theory("(assert (exists ((b Bool)) b))").unwrap_err();
        assert!(err.msg.contains("Bool-sorted quantified"), "{err}");
    }

    #[test]
    fn positions_are_tracked() {
        let err = parse_theory("(declare-sort S 0)\n(assert (Q))").unwrap_err();
        assert_eq!((err.line, err.col), (2, 9));
    }

    #[test]
    fn shadowing_resolves_innermost() {
        let t = parse_theory(
            "(declare-sort S 0)(declare-sort T 0)(declare-fun R (T) Bool)\
             (assert (forall ((x S)) (exists ((x T)) (R x))))",
        )
        .unwrap();
        assert_eq!(t.axioms.len(), 1);
    }
}
