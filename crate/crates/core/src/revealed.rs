//! Revealed relations read off a choice function.
//!
//! All relations are irreflexive: pairs `(x, x)` are never recorded.

use std::sync::Arc;

use crate::consideration::{chosen_above_table, switched_above_table, SwitchIndex};
use crate::domain::{ChoiceCorrespondence, ChoiceFunction, Menu};
use crate::relations::BinaryRelation;

fn empty(c: &ChoiceFunction) -> BinaryRelation {
    BinaryRelation::empty(Arc::clone(c.ground()))
}

/// `x P y` iff `x = c(A) ≠ c(A∖y)` for some `A ∋ y`.
pub fn relation_p(c: &ChoiceFunction) -> BinaryRelation {
    let mut rel = empty(c);
    for a in c.ground().menus().filter(|a| a.len() > 1) {
        let x = c.choice(a);
        for y in a.without(x).items() {
            if c.choice(a.without(y)) != x {
                rel.insert(x, y);
            }
        }
    }
    rel
}

/// Revealed-to-follow. `x F y` iff for some menu `A`:
/// (i) `x = c(A ∪ y)` and `y = c(xy)`, or
/// (ii) `x = c(A ∪ y)` and `x ≠ c(A)`, or
/// (iii) `x ≠ c(A ∪ y)`, `x = c(xy)` and `x = c(A)`.
pub fn relation_f(c: &ChoiceFunction) -> BinaryRelation {
    let g = c.ground();
    let n = g.len();
    let mut rel = empty(c);
    for a in g.menus() {
        let ca = c.choice(a);
        for y in 0..n {
            let cay = c.choice(a.with(y));
            for x in (0..n).filter(|&x| x != y) {
                let cxy = c.choice(Menu::from_items([x, y]));
                let clause_i = x == cay && y == cxy;
                let clause_ii = x == cay && x != ca;
                let clause_iii = x != cay && x == cxy && x == ca;
                if clause_i || clause_ii || clause_iii {
                    rel.insert(x, y);
                }
            }
        }
    }
    rel
}

/// Related-to. `x` is related to `y` iff for some menu `A`:
/// (1) `x = c(A ∪ y)` and `x ≠ c(A)`, or
/// (2) `y = c(A ∪ x)` and `x = c(xy)`, or
/// (3) `y ≠ c(A ∪ x)`, `y = c(A)` and `y = c(xy)`.
pub fn relation_related_to(c: &ChoiceFunction) -> BinaryRelation {
    let g = c.ground();
    let n = g.len();
    let mut rel = empty(c);
    for a in g.menus() {
        let ca = c.choice(a);
        for x in 0..n {
            let cax = c.choice(a.with(x));
            for y in (0..n).filter(|&y| y != x) {
                let cay = c.choice(a.with(y));
                let cxy = c.choice(Menu::from_items([x, y]));
                let one = x == cay && x != ca;
                let two = y == cax && x == cxy;
                let three = y != cax && y == ca && y == cxy;
                if one || two || three {
                    rel.insert(x, y);
                }
            }
        }
    }
    rel
}

/// `x ⊨ y` iff `x, y ∈ A` and `(A∖x, A)` is a switch for some `A`.
pub fn relation_models(c: &ChoiceFunction) -> BinaryRelation {
    relation_models_with(c, &SwitchIndex::new(c))
}

pub fn relation_models_with(c: &ChoiceFunction, sw: &SwitchIndex) -> BinaryRelation {
    let mut rel = empty(c);
    for s in sw.list() {
        for y in s.menu.without(s.removed).items() {
            rel.insert(s.removed, y);
        }
    }
    rel
}

/// `x ≻_{c,ψ} y` iff `c(A) = x` and `y ∈ ψ(A)∖x` for some `A`.
pub fn relation_rev(c: &ChoiceFunction, psi: &ChoiceCorrespondence) -> BinaryRelation {
    let mut rel = empty(c);
    for a in c.ground().menus() {
        let x = c.choice(a);
        for y in psi.image(a).without(x).items() {
            rel.insert(x, y);
        }
    }
    rel
}

/// `x R y` iff there are `A ⊆ B` with `x, y ∈ A`, `x = c(A)`, and either
/// `y = c(B)` or `y ∈ S_B`.
pub fn relation_r(c: &ChoiceFunction) -> BinaryRelation {
    relation_r_with(c, &SwitchIndex::new(c))
}

pub fn relation_r_with(c: &ChoiceFunction, sw: &SwitchIndex) -> BinaryRelation {
    let chosen = chosen_above_table(c);
    let switched = switched_above_table(c, sw);
    let mut rel = empty(c);
    for a in c.ground().menus() {
        let x = c.choice(a);
        let reach = chosen[a.index()].union(switched[a.index()]).intersection(a);
        for y in reach.without(x).items() {
            rel.insert(x, y);
        }
    }
    rel
}

/// Literal `R` scan over all nested pairs, for cross-checking.
pub fn relation_r_naive(c: &ChoiceFunction) -> BinaryRelation {
    let g = c.ground();
    let sw = SwitchIndex::new(c);
    let mut rel = empty(c);
    for a in g.menus() {
        let x = c.choice(a);
        for b in a.supermenus(g.full()) {
            for y in a.without(x).items() {
                if c.choice(b) == y || sw.set(b).contains(y) {
                    rel.insert(x, y);
                }
            }
        }
    }
    rel
}

/// `{(c(A), y) : y ∈ A∖c(A)}`: every direct observation of a choice over
/// an alternative.
pub fn relation_direct(c: &ChoiceFunction) -> BinaryRelation {
    let mut rel = empty(c);
    for a in c.ground().menus() {
        let x = c.choice(a);
        for y in a.without(x).items() {
            rel.insert(x, y);
        }
    }
    rel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consideration::{psi_min, psi_min_star};
    use crate::domain::GroundSet;
    use crate::parse::parse_dataset;
    use crate::relations::LinearOrder;

    const E1: &str = "ground: x y z\nx y z -> x\nx y -> y\nx z -> z\ny z -> y\n";
    const E2: &str = "ground: x y z\nx y z -> x\nx y -> y\nx z -> x\ny z -> y\n";
    const E3: &str = "ground: x y z\nx y z -> z\nx y -> y\nx z -> x\ny z -> z\n";
    const E4: &str = "ground: x y z\nx y z -> y\nx y -> y\nx z -> x\ny z -> z\n";

    fn rel(c: &ChoiceFunction, pairs: &[(&str, &str)]) -> BinaryRelation {
        BinaryRelation::from_label_pairs(Arc::clone(c.ground()), pairs)
    }

    fn rational3() -> ChoiceFunction {
        ChoiceFunction::rational(GroundSet::standard(3).unwrap(), &LinearOrder::identity(3))
            .unwrap()
    }

    #[test]
    fn p_examples() {
        let e1 = parse_dataset(E1).unwrap();
        assert_eq!(relation_p(&e1), rel(&e1, &[("x", "y"), ("x", "z")]));
        let e2 = parse_dataset(E2).unwrap();
        assert_eq!(relation_p(&e2), rel(&e2, &[("x", "z")]));
        assert!(relation_p(&rational3()).is_empty());
    }

    #[test]
    fn f_examples() {
        let e3 = parse_dataset(E3).unwrap();
        assert!(relation_f(&e3).is_extendable());
        let e2 = parse_dataset(E2).unwrap();
        let f = relation_f(&e2);
        assert!(f.contains(0, 1) && f.contains(1, 0));
        assert!(relation_f(&rational3()).is_extendable());
    }

    #[test]
    fn related_to_examples() {
        assert!(relation_related_to(&parse_dataset(E4).unwrap()).is_extendable());
        assert!(relation_related_to(&rational3()).is_extendable());
    }

    #[test]
    fn models_examples() {
        let e1 = parse_dataset(E1).unwrap();
        let m = relation_models(&e1);
        assert!(m.contains(1, 2) && m.contains(2, 1));
        let e2 = parse_dataset(E2).unwrap();
        assert_eq!(relation_models(&e2), rel(&e2, &[("z", "x"), ("z", "y")]));
        assert!(relation_models(&rational3()).is_empty());
    }

    #[test]
    fn rev_examples() {
        let e1 = parse_dataset(E1).unwrap();
        assert_eq!(
            relation_rev(&e1, &psi_min(&e1)),
            rel(&e1, &[("y", "x"), ("z", "x")])
        );
        let r = rational3();
        let rev = relation_rev(&r, &psi_min(&r));
        assert!(rev.is_extendable());
        assert_eq!(rev, rel(&r, &[]));
    }

    #[test]
    fn r_examples() {
        let e1 = parse_dataset(E1).unwrap();
        let r = relation_r(&e1);
        assert_eq!(
            r,
            rel(
                &e1,
                &[("y", "x"), ("z", "x"), ("y", "z"), ("x", "y"), ("x", "z")]
            )
        );
        assert!(!r.is_asymmetric());
        assert_eq!(r, relation_r_naive(&e1));
        assert_eq!(r, relation_rev(&e1, &psi_min_star(&e1)));
        assert!(relation_r(&rational3()).is_extendable());
    }
}
