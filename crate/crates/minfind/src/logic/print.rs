//! Printing theories and formulas back to SMT-LIB term syntax.

use super::ast::{Formula, Term, Theory};
use std::fmt::Write;

/// Quote a symbol in |...| bars when it is not a simple symbol.
pub fn print_symbol(name: &str) -> String {
    let simple = !name.is_empty()
        && !name.chars().next().unwrap().is_ascii_digit()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c));
    if simple {
        name.to_string()
    } else {
        format!("|{name}|")
    }
}

pub fn print_term(t: &Term) -> String {
    match t {
        Term::Var(v) => print_symbol(&v.name),
        Term::App(f, args) => {
            if args.is_empty() {
                print_symbol(f)
            } else {
                let parts: Vec<String> = args.iter().map(print_term).collect();
                format!("({} {})", print_symbol(f), parts.join(" "))
            }
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    match f {
        Formula::True => "true".to_string(),
        Formula::False => "false".to_string(),
        Formula::Pred(p, args) => {
            if args.is_empty() {
                print_symbol(p)
            } else {
                let parts: Vec<String> = args.iter().map(print_term).collect();
                format!("({} {})", print_symbol(p), parts.join(" "))
            }
        }
        Formula::Eq(a, b) => format!("(= {} {})", print_term(a), print_term(b)),
        Formula::Not(g) => format!("(not {})", print_formula(g)),
        Formula::And(fs) => match fs.len() {
            0 => "true".to_string(),
            _ => {
                let parts: Vec<String> = fs.iter().map(print_formula).collect();
                format!("(and {})", parts.join(" "))
            }
        },
        Formula::Or(fs) => match fs.len() {
            0 => "false".to_string(),
            _ => {
                let parts: Vec<String> = fs.iter().map(print_formula).collect();
                format!("(or {})", parts.join(" "))
            }
        },
        Formula::Implies(a, b) => format!("(=> {} {})", print_formula(a), print_formula(b)),
        Formula::Exists(vars, body) | Formula::Forall(vars, body) => {
            let kw = if matches!(f, Formula::Exists(..)) { "exists" } else { "forall" };
            let binders: Vec<String> = vars
                .iter()
                .map(|v| format!("({} {})", print_symbol(&v.name), print_symbol(&v.sort)))
                .collect();
            format!("({kw} ({}) {})", binders.join(" "), print_formula(body))
        }
    }
}

/// Serialize a theory as solver text: declarations then assertions. Bounding
/// constants, when present, are declared alongside the user signature.
pub fn print_theory(t: &Theory) -> String {
    let mut out = String::new();
    for s in t.signature.sorts() {
        let _ = writeln!(out, "(declare-sort {} 0)", print_symbol(s));
    }
    for (name, d) in t.signature.funcs() {
        if d.args.is_empty() {
            let _ = writeln!(out, "(declare-const {} {})", print_symbol(name), print_symbol(&d.result));
        } else {
            let args: Vec<String> = d.args.iter().map(|s| print_symbol(s)).collect();
            let _ = writeln!(
                out,
                "(declare-fun {} ({}) {})",
                print_symbol(name),
                args.join(" "),
                print_symbol(&d.result)
            );
        }
    }
    for (name, d) in t.signature.preds() {
        let args: Vec<String> = d.args.iter().map(|s| print_symbol(s)).collect();
        let _ = writeln!(out, "(declare-fun {} ({}) Bool)", print_symbol(name), args.join(" "));
    }
    if let Some(b) = &t.bounding {
        for (sort, consts) in &b.consts {
            for c in consts {
                let _ = writeln!(out, "(declare-const {} {})", print_symbol(c), print_symbol(sort));
            }
        }
    }
    for a in &t.axioms {
        let _ = writeln!(out, "(assert {})", print_formula(&a.formula));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ast::Var;
    use crate::logic::parse_theory;

    #[test]
    fn prints_connectives() {
        let f = Formula::And(vec![
            Formula::Pred("P".into(), vec![Term::constant("c")]),
            Formula::Pred("Q".into(), vec![Term::constant("c")]),
        ]);
        assert_eq!(print_formula(&f), "(and (P c) (Q c))");
    }

    #[test]
    fn prints_quantifier_with_equality() {
        let x = Var::new("x", "S");
        let f = Formula::Exists(
            vec![x.clone()],
            Box::new(Formula::Eq(
                Term::App("f".into(), vec![Term::Var(x.clone())]),
                Term::Var(x),
            )),
        );
        assert_eq!(print_formula(&f), "(exists ((x S)) (= (f x) x))");
    }

    #[test]
    fn quotes_awkward_symbols() {
        assert_eq!(print_symbol("has space"), "|has space|");
        assert_eq!(print_symbol("@S!1"), "@S!1");
    }

    #[test]
    fn printed_theory_reparses_equal() {
        let src = "(declare-sort S 0)(declare-fun f (S) S)(declare-fun P (S) Bool)\
                   (declare-const c S)(assert (forall ((x S)) (=> (P x) (exists ((y S)) (= (f y) x)))))";
        let t = parse_theory(src).unwrap();
        let printed = print_theory(&t);
        let t2 = parse_theory(&printed).unwrap();
        assert_eq!(t, t2);
        assert_eq!(print_theory(&t2), printed);
    }
}
