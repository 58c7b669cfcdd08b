//! Switches, the consideration-set constructions built from them, and the
//! filter verifiers for each consideration model.

use std::sync::Arc;

use crate::axioms::{AxiomVerdict, Counterexample};
use crate::domain::{ChoiceCorrespondence, ChoiceFunction, GroundSet, Menu, Switch};
use crate::error::{Error, Result};
use crate::relations::{
    lower_contour, maximal_elements, open_interval, BinaryRelation, LinearOrder,
};

/// All switches of a dataset: `S_A` per menu plus the flat list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchIndex {
    sets: Vec<Menu>,
    list: Vec<Switch>,
}

impl SwitchIndex {
    pub fn new(c: &ChoiceFunction) -> Self {
        let g = c.ground();
        let mut sets = vec![Menu::EMPTY; g.table_len()];
        let mut list = Vec::new();
        for a in g.menus().filter(|a| a.len() > 2) {
            let chosen = c.choice(a);
            for x in a.without(chosen).items() {
                if c.choice(a.without(x)) != chosen {
                    sets[a.index()] = sets[a.index()].with(x);
                    list.push(Switch {
                        menu: a,
                        removed: x,
                    });
                }
            }
        }
        SwitchIndex { sets, list }
    }

    /// `S_A`.
    pub fn set(&self, menu: Menu) -> Menu {
        self.sets[menu.index()]
    }

    /// Switches ordered by larger menu, then removed item.
    pub fn list(&self) -> &[Switch] {
        &self.list
    }

    pub fn is_switch(&self, menu: Menu, removed: usize) -> bool {
        self.sets[menu.index()].contains(removed)
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }
}

pub fn switches(c: &ChoiceFunction) -> SwitchIndex {
    SwitchIndex::new(c)
}

/// Peels `B∖A` off `B` one item at a time (lowest index first) until the
/// choice changes, returning the one-step switch found.
pub fn minimal_switch_within(c: &ChoiceFunction, a: Menu, b: Menu) -> Result<Switch> {
    let g = c.ground();
    let not_a_switch = || Error::NotASwitch {
        small: g.format_menu(a),
        large: g.format_menu(b),
    };
    if a.is_empty() || !a.is_subset(b) || a == b {
        return Err(not_a_switch());
    }
    let target = c.choice(b);
    if !a.contains(target) || c.choice(a) == target {
        return Err(not_a_switch());
    }
    let mut current = b;
    for y in b.difference(a).items() {
        let smaller = current.without(y);
        if c.choice(smaller) != target {
            return Ok(Switch {
                menu: current,
                removed: y,
            });
        }
        current = smaller;
    }
    unreachable!("the choice differs at A, so some peeling step switches")
}

/// Union over supersets: `out[A] = own[A] ∪ ⋃_{B ⊋ A} own[B]`.
fn upward_closure(g: &GroundSet, own: impl Fn(Menu) -> Menu) -> Vec<Menu> {
    let full = g.full();
    let mut out = vec![Menu::EMPTY; g.table_len()];
    for idx in (1..g.table_len()).rev() {
        let a = Menu::from_bits(idx as u32);
        out[idx] = full
            .difference(a)
            .items()
            .fold(own(a), |acc, y| acc.union(out[a.with(y).index()]));
    }
    out
}

/// Per menu, every item chosen from some superset (not restricted to the
/// menu itself). `D_A` is the intersection of entry `A` with `A`.
pub(crate) fn chosen_above_table(c: &ChoiceFunction) -> Vec<Menu> {
    upward_closure(c.ground(), |a| Menu::singleton(c.choice(a)))
}

/// Per menu, every item whose removal from some superset is a switch.
pub(crate) fn switched_above_table(c: &ChoiceFunction, sw: &SwitchIndex) -> Vec<Menu> {
    upward_closure(c.ground(), |a| sw.set(a))
}

/// `D_A = { x ∈ A : x = c(B) for some B ⊇ A }`.
pub fn chosen_above(c: &ChoiceFunction, a: Menu) -> Menu {
    a.supermenus(c.ground().full())
        .fold(Menu::EMPTY, |acc, b| acc.with(c.choice(b)))
        .intersection(a)
}

/// `S↑_A = { x ∈ A : x ∈ S_B for some B ⊇ A }`.
pub fn upward_switch_set(c: &ChoiceFunction, a: Menu) -> Menu {
    let sw = SwitchIndex::new(c);
    a.supermenus(c.ground().full())
        .fold(Menu::EMPTY, |acc, b| acc.union(sw.set(b)))
        .intersection(a)
}

/// `Γ^min(A) = S_A ∪ {c(A)}`.
pub fn gamma_min(c: &ChoiceFunction) -> ChoiceCorrespondence {
    gamma_min_with(c, &SwitchIndex::new(c))
}

pub fn gamma_min_with(c: &ChoiceFunction, sw: &SwitchIndex) -> ChoiceCorrespondence {
    ChoiceCorrespondence::from_fn_unchecked(Arc::clone(c.ground()), |a| sw.set(a).with(c.choice(a)))
}

/// `ψ^min(A) = D_A`.
pub fn psi_min(c: &ChoiceFunction) -> ChoiceCorrespondence {
    let chosen = chosen_above_table(c);
    ChoiceCorrespondence::from_fn_unchecked(Arc::clone(c.ground()), |a| {
        chosen[a.index()].intersection(a)
    })
}

/// `ψ^min_*(A) = S↑_A ∪ D_A`.
pub fn psi_min_star(c: &ChoiceFunction) -> ChoiceCorrespondence {
    psi_min_star_with(c, &SwitchIndex::new(c))
}

pub fn psi_min_star_with(c: &ChoiceFunction, sw: &SwitchIndex) -> ChoiceCorrespondence {
    let chosen = chosen_above_table(c);
    let switched = switched_above_table(c, sw);
    ChoiceCorrespondence::from_fn_unchecked(Arc::clone(c.ground()), |a| {
        chosen[a.index()].union(switched[a.index()]).intersection(a)
    })
}

/// `Γ_▷(A) = c(A)↓ ∩ A`: everything in `A` no better than the choice.
pub fn gamma_order(c: &ChoiceFunction, order: &LinearOrder) -> ChoiceCorrespondence {
    ChoiceCorrespondence::from_fn_unchecked(Arc::clone(c.ground()), |a| {
        lower_contour(c.choice(a), order).intersection(a)
    })
}

/// `Γ*(A) = A` minus the globally ▷-worst item, except on the singleton of
/// that item.
pub fn selective_filter(ground: Arc<GroundSet>, order: &LinearOrder) -> ChoiceCorrespondence {
    let worst = order.worst(ground.full()).expect("nonempty ground set");
    ChoiceCorrespondence::from_fn_unchecked(ground, |a| {
        if a == Menu::singleton(worst) {
            a
        } else {
            a.without(worst)
        }
    })
}

/// `Γ(A) = A` when `|A| ≤ k`, otherwise `max(A, p)`.
pub fn capacity_filter(p: &BinaryRelation, k: usize) -> Result<ChoiceCorrespondence> {
    let g = p.ground();
    for a in g.menus().filter(|a| a.len() > k) {
        let top = maximal_elements(a, p);
        if top.is_empty() {
            return Err(Error::EmptyMaxima(g.format_menu(a)));
        }
        if top.len() > k {
            return Err(Error::CapacityViolated(g.format_menu(a)));
        }
    }
    Ok(ChoiceCorrespondence::from_fn_unchecked(
        Arc::clone(g),
        |a| {
            if a.len() <= k {
                a
            } else {
                maximal_elements(a, p)
            }
        },
    ))
}

fn fm(g: &GroundSet, m: Menu) -> String {
    format!("{{{}}}", g.format_menu(m))
}

/// `max(Γ(A), ▷) = c(A)` for every menu, with `Γ(A) ⊆ A`.
pub fn check_max_condition(
    filter: &ChoiceCorrespondence,
    c: &ChoiceFunction,
    order: &LinearOrder,
) -> AxiomVerdict {
    let g = c.ground();
    for a in g.menus() {
        let img = filter.image(a);
        if img.is_empty() || !img.is_subset(a) {
            return AxiomVerdict::fail(Counterexample::new(
                format!("Γ({}) is not a nonempty submenu", fm(g, a)),
                vec![a],
                vec![],
            ));
        }
        let best = order.best(img).expect("nonempty");
        if best != c.choice(a) {
            return AxiomVerdict::fail(Counterexample::new(
                format!(
                    "the best item of Γ({}) = {} is {}, but c chooses {}",
                    fm(g, a),
                    fm(g, img),
                    g.label(best),
                    g.label(c.choice(a))
                ),
                vec![a],
                vec![best, c.choice(a)],
            ));
        }
    }
    AxiomVerdict::pass()
}

/// `max(Γ(A), ≻) = {c(A)}` for an arbitrary relation.
pub fn check_max_condition_relation(
    filter: &ChoiceCorrespondence,
    c: &ChoiceFunction,
    rel: &BinaryRelation,
) -> AxiomVerdict {
    let g = c.ground();
    for a in g.menus() {
        let img = filter.image(a);
        let top = maximal_elements(img, rel);
        if img.is_empty() || !img.is_subset(a) || top != Menu::singleton(c.choice(a)) {
            return AxiomVerdict::fail(Counterexample::new(
                format!(
                    "maximal elements of Γ({}) = {} are {}, expected {{{}}}",
                    fm(g, a),
                    fm(g, img),
                    fm(g, top),
                    g.label(c.choice(a))
                ),
                vec![a],
                vec![c.choice(a)],
            ));
        }
    }
    AxiomVerdict::pass()
}

/// Attention filter: removing an unconsidered item leaves `Γ` unchanged.
pub fn check_attention_property(filter: &ChoiceCorrespondence) -> AxiomVerdict {
    let g = filter.ground();
    for b in g.menus() {
        let img = filter.image(b);
        for x in b.difference(img).items() {
            let smaller = b.without(x);
            if filter.image(smaller) != img {
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "{} is not considered in {} but removing it changes Γ from {} to {}",
                        g.label(x),
                        fm(g, b),
                        fm(g, img),
                        fm(g, filter.image(smaller))
                    ),
                    vec![smaller, b],
                    vec![x],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

fn both(first: AxiomVerdict, second: impl FnOnce() -> AxiomVerdict) -> AxiomVerdict {
    if first.holds {
        second()
    } else {
        first
    }
}

pub fn verify_attention_filter(
    filter: &ChoiceCorrespondence,
    c: &ChoiceFunction,
    order: &LinearOrder,
) -> AxiomVerdict {
    both(check_max_condition(filter, c, order), || {
        check_attention_property(filter)
    })
}

/// Salient filter: for `x ∈ B` other than `min(B, ▷)` and `max(Γ(B), ▷)`,
/// `Γ(B)∖x = Γ(B∖x)`.
pub fn check_salient_property(filter: &ChoiceCorrespondence, order: &LinearOrder) -> AxiomVerdict {
    let g = filter.ground();
    for b in g.menus() {
        let img = filter.image(b);
        let worst = order.worst(b).expect("nonempty");
        let top = order.best(img).expect("nonempty");
        for x in b.without(worst).without(top).items() {
            let smaller = b.without(x);
            if filter.image(smaller) != img.without(x) {
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "removing {} from {} changes Γ from {} to {}",
                        g.label(x),
                        fm(g, b),
                        fm(g, img),
                        fm(g, filter.image(smaller))
                    ),
                    vec![smaller, b],
                    vec![x],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

pub fn verify_salient_filter(
    filter: &ChoiceCorrespondence,
    c: &ChoiceFunction,
    order: &LinearOrder,
) -> AxiomVerdict {
    both(check_max_condition(filter, c, order), || {
        check_salient_property(filter, order)
    })
}

/// Selective filter: for `x ∈ B` other than `max(Γ(B), ▷)`,
/// `Γ(B)∖x = Γ(B∖x)`.
pub fn check_selective_property(
    filter: &ChoiceCorrespondence,
    order: &LinearOrder,
) -> AxiomVerdict {
    let g = filter.ground();
    for b in g.menus() {
        let img = filter.image(b);
        let top = order.best(img).expect("nonempty");
        for x in b.without(top).items() {
            let smaller = b.without(x);
            if filter.image(smaller) != img.without(x) {
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "removing {} from {} changes Γ from {} to {}",
                        g.label(x),
                        fm(g, b),
                        fm(g, img),
                        fm(g, filter.image(smaller))
                    ),
                    vec![smaller, b],
                    vec![x],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

pub fn verify_selective_filter(
    filter: &ChoiceCorrespondence,
    c: &ChoiceFunction,
    order: &LinearOrder,
) -> AxiomVerdict {
    both(check_max_condition(filter, c, order), || {
        check_selective_property(filter, order)
    })
}

/// Competitive filter conditions:
/// (a) unconsidered items can be removed without effect;
/// (b) removing the ▷-worst item of `A` only drops it from `Γ(A)`, unless it
///     is all that is considered;
/// (c) if `y ▷ x`, `y ∉ Γ(xy)` and `A` lies strictly between them, then
///     `y ∉ Γ(A ∪ xy)`.
pub fn check_competitive_property(
    filter: &ChoiceCorrespondence,
    order: &LinearOrder,
) -> AxiomVerdict {
    let a_part = check_attention_property(filter);
    if !a_part.holds {
        return a_part;
    }
    let g = filter.ground();
    for a in g.menus().filter(|a| a.len() > 1) {
        let img = filter.image(a);
        let worst = order.worst(a).expect("nonempty");
        let smaller = a.without(worst);
        if img != Menu::singleton(worst) && filter.image(smaller) != img.without(worst) {
            return AxiomVerdict::fail(Counterexample::new(
                format!(
                    "removing the worst item {} from {} changes Γ from {} to {}",
                    g.label(worst),
                    fm(g, a),
                    fm(g, img),
                    fm(g, filter.image(smaller))
                ),
                vec![smaller, a],
                vec![worst],
            ));
        }
    }
    let n = g.len();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x && order.prefers(y, x)) {
            let pair = Menu::from_items([x, y]);
            if filter.image(pair).contains(y) {
                continue;
            }
            let between = open_interval(x, y, order);
            for inner in between.submenus() {
                let menu = inner.union(pair);
                if filter.image(menu).contains(y) {
                    return AxiomVerdict::fail(Counterexample::new(
                        format!(
                            "{y} is not considered in {} but is considered in {}",
                            fm(g, pair),
                            fm(g, menu),
                            y = g.label(y)
                        ),
                        vec![pair, menu],
                        vec![x, y],
                    ));
                }
            }
        }
    }
    AxiomVerdict::pass()
}

pub fn verify_competitive_filter(
    filter: &ChoiceCorrespondence,
    c: &ChoiceFunction,
    order: &LinearOrder,
) -> AxiomVerdict {
    both(check_max_condition(filter, c, order), || {
        check_competitive_property(filter, order)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_dataset;
    use crate::relations::linear_extension;

    const E1: &str = "ground: x y z\nx y z -> x\nx y -> y\nx z -> z\ny z -> y\n";
    const E2: &str = "ground: x y z\nx y z -> x\nx y -> y\nx z -> x\ny z -> y\n";
    const E3: &str = "ground: x y z\nx y z -> z\nx y -> y\nx z -> x\ny z -> z\n";
    const E4: &str = "ground: x y z\nx y z -> y\nx y -> y\nx z -> x\ny z -> z\n";
    const N4: &str = "ground: x y z w\n\
        x y z w -> x\nx y z -> x\nx y w -> x\nx z w -> x\ny z w -> y\n\
        x y -> y\nx z -> x\nx w -> x\ny z -> y\ny w -> y\nz w -> z\n";

    fn m(c: &ChoiceFunction, s: &str) -> Menu {
        c.ground().parse_menu(s).unwrap()
    }

    fn order(c: &ChoiceFunction, labels: &[&str]) -> LinearOrder {
        LinearOrder::from_labels(c.ground(), labels).unwrap()
    }

    fn rational3() -> ChoiceFunction {
        ChoiceFunction::rational(GroundSet::standard(3).unwrap(), &LinearOrder::identity(3))
            .unwrap()
    }

    #[test]
    fn switch_sets() {
        let e1 = parse_dataset(E1).unwrap();
        let sw = switches(&e1);
        assert_eq!(sw.set(m(&e1, "x y z")), m(&e1, "y z"));
        assert_eq!(sw.len(), 2);
        let e2 = parse_dataset(E2).unwrap();
        let sw = switches(&e2);
        assert_eq!(
            sw.list(),
            &[Switch {
                menu: m(&e2, "x y z"),
                removed: 2
            }]
        );
        assert!(switches(&rational3()).is_empty());
    }

    #[test]
    fn minimal_switch_peeling() {
        let e1 = parse_dataset(E1).unwrap();
        assert_eq!(
            minimal_switch_within(&e1, m(&e1, "x y"), m(&e1, "x y z")).unwrap(),
            Switch {
                menu: m(&e1, "x y z"),
                removed: 2
            }
        );
        let c = parse_dataset(N4).unwrap();
        let found = minimal_switch_within(&c, m(&c, "x y"), m(&c, "x y z w")).unwrap();
        assert_eq!(
            found,
            Switch {
                menu: m(&c, "x y w"),
                removed: 3
            }
        );
        assert!(found.menu != m(&c, "x y z w"));
        let r = rational3();
        assert!(matches!(
            minimal_switch_within(&r, m(&r, "x y"), m(&r, "x y z")),
            Err(Error::NotASwitch { .. })
        ));
    }

    #[test]
    fn upward_sets() {
        let e2 = parse_dataset(E2).unwrap();
        assert_eq!(upward_switch_set(&e2, m(&e2, "x z")), m(&e2, "z"));
        let e1 = parse_dataset(E1).unwrap();
        assert_eq!(upward_switch_set(&e1, m(&e1, "y z")), m(&e1, "y z"));
        let r = rational3();
        assert!(r
            .ground()
            .menus()
            .all(|a| upward_switch_set(&r, a).is_empty()));
    }

    #[test]
    fn chosen_above_examples() {
        let r = rational3();
        assert_eq!(chosen_above(&r, m(&r, "x y")), m(&r, "x"));
        assert_eq!(chosen_above(&r, m(&r, "y z")), m(&r, "y"));
        let e1 = parse_dataset(E1).unwrap();
        assert_eq!(chosen_above(&e1, m(&e1, "x y")), m(&e1, "x y"));
        assert_eq!(chosen_above(&e1, m(&e1, "x y z")), m(&e1, "x"));
        assert_eq!(psi_min(&e1).image(m(&e1, "x y")), m(&e1, "x y"));
    }

    #[test]
    fn gamma_min_examples() {
        let e1 = parse_dataset(E1).unwrap();
        let g = gamma_min(&e1);
        assert_eq!(g.image(m(&e1, "x y z")), m(&e1, "x y z"));
        assert_eq!(g.image(m(&e1, "x y")), m(&e1, "y"));
        assert_eq!(g.image(m(&e1, "x z")), m(&e1, "z"));
        assert_eq!(g.image(m(&e1, "y z")), m(&e1, "y"));
        let e2 = parse_dataset(E2).unwrap();
        assert_eq!(gamma_min(&e2).image(m(&e2, "x y z")), m(&e2, "x z"));
        let r = rational3();
        let g = gamma_min(&r);
        assert!(r
            .ground()
            .menus()
            .all(|a| g.image(a) == Menu::singleton(r.choice(a))));
    }

    #[test]
    fn psi_min_star_examples() {
        let e2 = parse_dataset(E2).unwrap();
        assert_eq!(psi_min_star(&e2).image(m(&e2, "x z")), m(&e2, "x z"));
        let r = rational3();
        assert_eq!(psi_min_star(&r), gamma_min(&r));
    }

    #[test]
    fn gamma_order_examples() {
        let e4 = parse_dataset(E4).unwrap();
        let g = gamma_order(&e4, &order(&e4, &["z", "y", "x"]));
        assert_eq!(g.image(m(&e4, "x y z")), m(&e4, "x y"));
        let r = rational3();
        assert_eq!(
            gamma_order(&r, &LinearOrder::identity(3)),
            ChoiceCorrespondence::identity(Arc::clone(r.ground()))
        );
    }

    #[test]
    fn attention_filter_examples() {
        let e1 = parse_dataset(E1).unwrap();
        let p = crate::revealed::relation_p(&e1);
        let ext = linear_extension(&p).unwrap();
        assert!(verify_attention_filter(&gamma_min(&e1), &e1, &ext).holds);

        let e2 = parse_dataset(E2).unwrap();
        for o in LinearOrder::all(3) {
            assert!(!check_attention_property(&gamma_min(&e2)).holds);
            assert!(!verify_attention_filter(&gamma_min(&e2), &e2, &o).holds);
        }
    }

    #[test]
    fn competitive_filter_examples() {
        // E3 is list rational but no order makes its maximal filter competitive
        let e3 = parse_dataset(E3).unwrap();
        let f = crate::revealed::relation_f(&e3);
        let ext = linear_extension(&f).unwrap();
        let v = verify_competitive_filter(&gamma_order(&e3, &ext), &e3, &ext);
        assert!(!v.holds);
        assert_eq!(v.counterexample.unwrap().items, vec![1]);
        for o in LinearOrder::all(3) {
            assert!(!verify_competitive_filter(&gamma_order(&e3, &o), &e3, &o).holds);
        }

        let e2 = parse_dataset(E2).unwrap();
        for o in LinearOrder::all(3) {
            assert!(!verify_competitive_filter(&gamma_order(&e2, &o), &e2, &o).holds);
        }

        for o in LinearOrder::all(3) {
            let r = ChoiceFunction::rational(GroundSet::standard(3).unwrap(), &o).unwrap();
            let id = ChoiceCorrespondence::identity(Arc::clone(r.ground()));
            assert!(verify_competitive_filter(&id, &r, &o).holds);
            assert!(verify_competitive_filter(&gamma_order(&r, &o), &r, &o).holds);
        }
    }

    #[test]
    fn salient_and_selective_examples() {
        let r = rational3();
        let id = ChoiceCorrespondence::identity(Arc::clone(r.ground()));
        let o = LinearOrder::identity(3);
        assert!(verify_salient_filter(&id, &r, &o).holds);

        for o in LinearOrder::all(3) {
            let c = ChoiceFunction::rational(Arc::clone(r.ground()), &o).unwrap();
            let sel = selective_filter(Arc::clone(c.ground()), &o);
            assert!(verify_selective_filter(&sel, &c, &o).holds);
            assert!(c.ground().menus().any(|a| sel.image(a) != a));
        }

        let e1 = parse_dataset(E1).unwrap();
        for o in LinearOrder::all(3) {
            assert!(!verify_salient_filter(&gamma_min(&e1), &e1, &o).holds);
        }
    }

    #[test]
    fn capacity_filter_examples() {
        let g = GroundSet::standard(3).unwrap();
        let empty = BinaryRelation::empty(Arc::clone(&g));
        assert_eq!(
            capacity_filter(&empty, 3).unwrap(),
            ChoiceCorrespondence::identity(Arc::clone(&g))
        );
        let p = BinaryRelation::from_label_pairs(Arc::clone(&g), &[("x", "z")]);
        let gam = capacity_filter(&p, 2).unwrap();
        assert_eq!(gam.image(g.full()), g.parse_menu("x y").unwrap());
        assert_eq!(
            gam.image(g.parse_menu("x z").unwrap()),
            g.parse_menu("x z").unwrap()
        );
        assert_eq!(
            capacity_filter(&empty, 2),
            Err(Error::CapacityViolated("x y z".into()))
        );
    }
}
