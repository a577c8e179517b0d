//! Positive-existential and geometric classification.

use super::ast::{Formula, Theory};

/// True iff the formula is built from atoms (including `true` and `false`)
/// using only conjunction, disjunction and existential quantification.
pub fn is_pe(f: &Formula) -> bool {
    match f {
        Formula::True | Formula::False | Formula::Pred(..) | Formula::Eq(..) => true,
        Formula::And(fs) | Formula::Or(fs) => fs.iter().all(is_pe),
        Formula::Exists(_, body) => is_pe(body),
        Formula::Not(_) | Formula::Implies(..) | Formula::Forall(..) => false,
    }
}

/// True iff the sentence has the shape `forall x... (alpha => beta)` with
/// `alpha` and `beta` positive-existential. A bare PE sentence counts, with
/// an empty prefix and `alpha = true`.
pub fn is_geometric_sentence(f: &Formula) -> bool {
    let mut body = f;
    while let Formula::Forall(_, inner) = body {
        body = inner;
    }
    match body {
        Formula::Implies(a, b) => is_pe(a) && is_pe(b),
        other => is_pe(other),
    }
}

/// True iff every axiom of the theory is geometric.
pub fn is_geometric(t: &Theory) -> bool {
    t.axioms.iter().all(|a| is_geometric_sentence(&a.formula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_theory;

    fn axiom(src: &str) -> Formula {
        let t = parse_theory(src).unwrap();
        t.axioms[0].formula.clone()
    }

    #[test]
    fn pe_cases() {
        let pre = "(declare-sort S 0)(declare-fun P (S) Bool)(declare-fun Q (S) Bool)(declare-const c S)";
        assert!(is_pe(&axiom(&format!(
            "{pre}(assert (and (P c) (exists ((y S)) (Q y))))"
        ))));
        assert!(!is_pe(&axiom(&format!("{pre}(assert (not (P c)))"))));
        assert!(!is_pe(&axiom(&format!("{pre}(assert (forall ((x S)) (P x)))"))));
    }

    #[test]
    fn geometric_cases() {
        let pre = "(declare-sort S 0)(declare-fun P (S) Bool)(declare-fun Q (S) Bool)";
        let t = parse_theory(&format!(
            "{pre}(assert (forall ((x S)) (=> (P x) (exists ((y S)) (Q y)))))"
        ))
        .unwrap();
        assert!(is_geometric(&t));

        // A bare PE sentence counts (alpha = true, empty prefix).
        let t = parse_theory(&format!("{pre}(assert (exists ((x S)) (P x)))")).unwrap();
        assert!(is_geometric(&t));

        // A universal inside the conclusion is not geometric.
        let t = parse_theory(&format!(
            "{pre}(assert (forall ((x S)) (=> (P x) (forall ((y S)) (Q y)))))"
        ))
        .unwrap();
        assert!(!is_geometric(&t));
    }

    #[test]
    fn exactly_two_elements_encoding_is_not_geometric() {
        // "there exist exactly two elements": the upper bound needs a
        // universal inside the conclusion.
        let t = parse_theory(
            "(declare-sort S 0)\
             (assert (exists ((x S) (y S)) (and (not (= x y)) \
                (forall ((z S)) (or (= z x) (= z y))))))",
        )
        .unwrap();
        assert!(!is_geometric(&t));
    }
}
