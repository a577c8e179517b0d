//! Size bounding by fresh constants: for each uninterpreted sort S with
//! bound n, add constants @S!1..@S!n and the covering axiom saying every
//! element of S equals one of them. Models of the input within the profile
//! are exactly the reducts of models of the result.

use super::ast::{Bounding, Formula, Profile, Provenance, Term, Theory, Var};
use indexmap::IndexMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("missing bound for used sort {0}")]
    MissingBound(String),
    #[error("profile mentions unknown sort {0}")]
    UnknownSort(String),
    #[error("theory is already bounded")]
    AlreadyBounded,
}

/// Name of the i-th (1-based) fresh constant of a sort.
pub fn bounding_const(sort: &str, i: usize) -> String {
    format!("@{sort}!{i}")
}

pub fn bound_theory(t: &Theory, p: &Profile) -> Result<Theory, BoundError> {
    if t.bounding.is_some() {
        return Err(BoundError::AlreadyBounded);
    }
    for (sort, _) in p.iter() {
        if !t.signature.has_sort(sort) {
            return Err(BoundError::UnknownSort(sort.to_string()));
        }
    }
    for sort in t.used_sorts() {
        if p.bound(&sort).is_none() {
            return Err(BoundError::MissingBound(sort));
        }
    }
    let mut out = t.clone();
    let mut consts = IndexMap::new();
    for sort in t.signature.sorts() {
        let Some(n) = p.bound(sort) else { continue };
        let names: Vec<String> = (1..=n as usize).map(|i| bounding_const(sort, i)).collect();
        let x = Var::new("x", sort);
        let disjuncts: Vec<Formula> = names
            .iter()
            .map(|c| Formula::Eq(Term::Var(x.clone()), Term::constant(c.clone())))
            .collect();
        let covering = Formula::forall(vec![x], Formula::or(disjuncts));
        out.axioms.push(super::ast::Axiom { formula: covering, provenance: Provenance::Bounding });
        consts.insert(sort.to_string(), names);
    }
    out.bounding = Some(Bounding { consts });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_theory;

    fn theory() -> Theory {
        parse_theory("(declare-sort S 0)(declare-fun P (S) Bool)(assert (exists ((x S)) (P x)))")
            .unwrap()
    }

    #[test]
    fn adds_constants_and_covering_axiom() {
        let t = theory();
        let p = Profile::new([("S".to_string(), 2)]).unwrap();
        let b = bound_theory(&t, &p).unwrap();
        let bounding = b.bounding.as_ref().unwrap();
        assert_eq!(bounding.total_constants(), 2);
        assert_eq!(bounding.of_sort("S").unwrap(), ["@S!1", "@S!2"]);
        assert_eq!(b.axioms.len(), t.axioms.len() + 1);
        let covering = &b.axioms.last().unwrap().formula;
        assert_eq!(
            crate::logic::print_formula(covering),
            "(forall ((x S)) (or (= x @S!1) (= x @S!2)))"
        );
    }

    #[test]
    fn singleton_bound_has_no_disjunction() {
        let b = bound_theory(&theory(), &Profile::new([("S".to_string(), 1)]).unwrap()).unwrap();
        assert_eq!(
            crate::logic::print_formula(&b.axioms.last().unwrap().formula),
            "(forall ((x S)) (= x @S!1))"
        );
    }

    #[test]
    fn counts_match_profile() {
        let t = parse_theory(
            "(declare-sort S 0)(declare-sort T 0)(declare-fun R (S T) Bool)\
             (assert (exists ((x S) (y T)) (R x y)))",
        )
        .unwrap();
        let p = Profile::new([("S".to_string(), 3), ("T".to_string(), 2)]).unwrap();
        let b = bound_theory(&t, &p).unwrap();
        let bounding = b.bounding.as_ref().unwrap();
        assert_eq!(bounding.total_constants(), 5);
        let added = b.axioms.len() - t.axioms.len();
        assert_eq!(added, 2);
    }

    #[test]
    fn rebinding_is_rejected() {
        let p = Profile::new([("S".to_string(), 2)]).unwrap();
        let b = bound_theory(&theory(), &p).unwrap();
        assert_eq!(bound_theory(&b, &p), Err(BoundError::AlreadyBounded));
    }

    #[test]
    fn missing_bound_for_used_sort() {
        let t = theory();
        let p = Profile::new(Vec::<(String, u32)>::new()).unwrap();
        assert_eq!(bound_theory(&t, &p), Err(BoundError::MissingBound("S".to_string())));
    }

    #[test]
    fn zero_bound_rejected_at_profile() {
        assert!(Profile::new([("S".to_string(), 0)]).is_err());
    }
}
