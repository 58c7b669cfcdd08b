//! Decision procedures for choice axioms.
//!
//! Every checker scans menus by ascending bit pattern and items by index, and
//! reports the first violation it meets, so counterexamples are reproducible.

use crate::consideration::{chosen_above_table, SwitchIndex};
use crate::domain::{ChoiceCorrespondence, ChoiceFunction, GroundSet, Menu};
use crate::relations::LinearOrder;

/// Menus and items witnessing a failed axiom, plus a readable reason.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Counterexample {
    pub reason: String,
    pub menus: Vec<Menu>,
    pub items: Vec<usize>,
}

impl Counterexample {
    pub fn new(reason: impl Into<String>, menus: Vec<Menu>, items: Vec<usize>) -> Self {
        Counterexample {
            reason: reason.into(),
            menus,
            items,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    /// Extra context, e.g. the search bound a verdict was reached under.
    pub note: Option<String>,
}

impl AxiomVerdict {
    pub fn pass() -> Self {
        AxiomVerdict {
            holds: true,
            counterexample: None,
            note: None,
        }
    }

    pub fn fail(counterexample: Counterexample) -> Self {
        AxiomVerdict {
            holds: false,
            counterexample: Some(counterexample),
            note: None,
        }
    }

    pub fn from_option(counterexample: Option<Counterexample>) -> Self {
        counterexample.map_or_else(Self::pass, Self::fail)
    }

    #[must_use]
    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn fm(g: &GroundSet, m: Menu) -> String {
    format!("{{{}}}", g.format_menu(m))
}

/// Axiom α: `x ∈ A ⊆ B` and `c(B) = x` imply `c(A) = x`.
///
/// Only pairs with `|B∖A| = 1` are scanned; any violation contains one of
/// these.
pub fn check_alpha_cf(c: &ChoiceFunction) -> AxiomVerdict {
    let g = c.ground();
    let full = g.full();
    for a in g.menus() {
        for added in full.difference(a).items() {
            let b = a.with(added);
            let x = c.choice(b);
            if a.contains(x) && c.choice(a) != x {
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "c({}) = {x} but c({}) = {}",
                        fm(g, b),
                        fm(g, a),
                        g.label(c.choice(a)),
                        x = g.label(x)
                    ),
                    vec![a, b],
                    vec![x],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

/// Reference scan of α over every nested pair, without the one-step
/// shortcut.
pub fn check_alpha_cf_naive(c: &ChoiceFunction) -> AxiomVerdict {
    let g = c.ground();
    for b in g.menus() {
        let x = c.choice(b);
        for a in b.submenus() {
            if a.contains(x) && c.choice(a) != x {
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "c({}) = {} but c({}) differs",
                        fm(g, b),
                        g.label(x),
                        fm(g, a)
                    ),
                    vec![a, b],
                    vec![x],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

/// WARP: if `x, y ∈ A ∩ B` and `c(A) = x`, then `c(B) ≠ y`.
pub fn check_warp(c: &ChoiceFunction) -> AxiomVerdict {
    let g = c.ground();
    for a in g.menus() {
        let x = c.choice(a);
        for b in g.menus() {
            let y = c.choice(b);
            if y != x && b.contains(x) && a.contains(y) {
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "c({}) = {} and c({}) = {} although both menus contain both items",
                        fm(g, a),
                        g.label(x),
                        fm(g, b),
                        g.label(y)
                    ),
                    vec![a, b],
                    vec![x, y],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

/// Weak WARP: `x, y ∈ A ⊆ B` and `c(B) = c(xy) = x` imply `c(A) ≠ y`.
///
/// Equivalently: no menu `A` holds an item `x ≠ c(A)` that is chosen in some
/// superset of `A` and also beats `c(A)` in the pair.
pub fn check_weak_warp(c: &ChoiceFunction) -> AxiomVerdict {
    let g = c.ground();
    let chosen = chosen_above_table(c);
    for a in g.menus() {
        let y = c.choice(a);
        let candidates = chosen[a.index()].intersection(a).without(y);
        for x in candidates.items() {
            let pair = Menu::from_items([x, y]);
            if c.choice(pair) == x {
                let b = a
                    .supermenus(g.full())
                    .find(|&b| c.choice(b) == x)
                    .expect("x is chosen above A");
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "c({}) = c({}) = {} but c({}) = {}",
                        fm(g, b),
                        fm(g, pair),
                        g.label(x),
                        fm(g, a),
                        g.label(y)
                    ),
                    vec![a, b, pair],
                    vec![x, y],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

/// Literal Weak WARP scan over all `x, y ∈ A ⊆ B`, for cross-checking.
pub fn check_weak_warp_naive(c: &ChoiceFunction) -> AxiomVerdict {
    let g = c.ground();
    for b in g.menus() {
        let x = c.choice(b);
        for a in b.submenus() {
            let y = c.choice(a);
            if a.contains(x) && y != x && c.choice(Menu::from_items([x, y])) == x {
                return AxiomVerdict::fail(Counterexample::new(
                    "Weak WARP violated",
                    vec![a, b],
                    vec![x, y],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

/// `above[B]`: items chosen from some strict superset of `B`.
fn chosen_strictly_above(c: &ChoiceFunction, chosen: &[Menu]) -> Vec<Menu> {
    let g = c.ground();
    let full = g.full();
    let mut above = vec![Menu::EMPTY; g.table_len()];
    for b in g.menus() {
        above[b.index()] = full
            .difference(b)
            .items()
            .fold(Menu::EMPTY, |acc, y| acc.union(chosen[b.with(y).index()]));
    }
    above
}

/// WARP under choice overload: every menu `A` has some `x ∈ A` such that for
/// every `B ∋ x`, if `c(B) ∈ A` and `x` is chosen from some strict superset
/// of `B`, then `c(B) = x`.
pub fn check_overload_warp(c: &ChoiceFunction) -> AxiomVerdict {
    let g = c.ground();
    let n = g.len();
    let chosen = chosen_above_table(c);
    let above = chosen_strictly_above(c, &chosen);
    // blockers[x]: choices c(B) ≠ x over menus B ∋ x with x chosen strictly above B
    let mut blockers = vec![Menu::EMPTY; n];
    for b in g.menus() {
        let chosen_b = c.choice(b);
        for x in b.intersection(above[b.index()]).without(chosen_b).items() {
            blockers[x] = blockers[x].with(chosen_b);
        }
    }
    overload_scan(
        c,
        &blockers,
        "x is chosen above a menu B containing x whose choice lies in A",
    )
}

/// The alternative reading of the overload axiom, with the superset `B′`
/// quantified outside the conditional: for each `B ∋ x` with
/// `x ≠ c(B) ∈ A`, some strict superset `B′ ⊋ B` must have `c(B′) ≠ x`.
pub fn check_overload_warp_outer(c: &ChoiceFunction) -> AxiomVerdict {
    let g = c.ground();
    let n = g.len();
    let full = g.full();
    let mut blockers = vec![Menu::EMPTY; n];
    for b in g.menus() {
        let chosen_b = c.choice(b);
        for x in b.without(chosen_b).items() {
            let all_above_choose_x = b
                .supermenus(full)
                .filter(|&s| s != b)
                .all(|s| c.choice(s) == x);
            if all_above_choose_x {
                blockers[x] = blockers[x].with(chosen_b);
            }
        }
    }
    overload_scan(
        c,
        &blockers,
        "every strict superset of a menu B containing x chooses x",
    )
}

fn overload_scan(c: &ChoiceFunction, blockers: &[Menu], why: &str) -> AxiomVerdict {
    let g = c.ground();
    for a in g.menus() {
        if a.items().all(|x| !blockers[x].intersection(a).is_empty()) {
            let items: Vec<usize> = a.items().collect();
            return AxiomVerdict::fail(Counterexample::new(
                format!(
                    "no item of {} qualifies: for each candidate {why}",
                    fm(g, a)
                ),
                vec![a],
                items,
            ));
        }
    }
    AxiomVerdict::pass()
}

/// Axiom of Revealed Temptation: every menu `A` has some `x ∈ A` such that
/// WARP holds on `{B ⊆ A : x ∈ B}`.
///
/// `x` is disqualified exactly when some switch `(C∖y, C)` with `C ⊆ A` has
/// `x ∈ C∖y`.
pub fn check_art(c: &ChoiceFunction) -> AxiomVerdict {
    check_art_with(c, &SwitchIndex::new(c))
}

pub fn check_art_with(c: &ChoiceFunction, switches: &SwitchIndex) -> AxiomVerdict {
    let g = c.ground();
    // covered[A]: items lying in the smaller menu of some switch inside A
    let mut covered = vec![Menu::EMPTY; g.table_len()];
    for a in g.menus() {
        let own = switches
            .set(a)
            .items()
            .fold(Menu::EMPTY, |acc, y| acc.union(a.without(y)));
        let inherited = a
            .items()
            .filter(|&y| a.without(y) != Menu::EMPTY)
            .fold(Menu::EMPTY, |acc, y| {
                acc.union(covered[a.without(y).index()])
            });
        covered[a.index()] = own.union(inherited);
    }
    for a in g.menus() {
        if a.difference(covered[a.index()]).is_empty() {
            let witnesses: Vec<Menu> = a
                .submenus()
                .filter(|&s| !switches.set(s).is_empty())
                .collect();
            return AxiomVerdict::fail(Counterexample::new(
                format!("every item of {} lies in a switch inside it", fm(g, a)),
                std::iter::once(a).chain(witnesses).collect(),
                a.items().collect(),
            ));
        }
    }
    AxiomVerdict::pass()
}

/// Single Reversal Axiom: for all `S, T` and distinct `x, y ∈ S ∩ T` with
/// `x ≠ c(S) ≠ c(S∖x)`, either `c(T) = y` or `c(T∖y) = c(T)`.
pub fn check_single_reversal(c: &ChoiceFunction) -> AxiomVerdict {
    check_single_reversal_with(c, &SwitchIndex::new(c))
}

pub fn check_single_reversal_with(c: &ChoiceFunction, switches: &SwitchIndex) -> AxiomVerdict {
    let g = c.ground();
    let full = g.full();
    for sw in switches.list() {
        let s = sw.menu;
        let x = sw.removed;
        for y in s.without(x).items() {
            let pair = Menu::from_items([x, y]);
            for t in pair.supermenus(full) {
                let ct = c.choice(t);
                if ct != y && c.choice(t.without(y)) != ct {
                    return AxiomVerdict::fail(Counterexample::new(
                        format!(
                            "removing {x} from {} switches the choice, yet c({}) = {} and removing {y} from it also switches",
                            fm(g, s),
                            fm(g, t),
                            g.label(ct),
                            x = g.label(x),
                            y = g.label(y)
                        ),
                        vec![s, t],
                        vec![x, y],
                    ));
                }
            }
        }
    }
    AxiomVerdict::pass()
}

/// List rationality for a given list (best first): every menu's choice is
/// the winner of the pair formed by the choice without the menu's last
/// listed item and that item.
pub fn check_list_rational(c: &ChoiceFunction, list: &LinearOrder) -> AxiomVerdict {
    let g = c.ground();
    for a in g.menus().filter(|a| a.len() > 2) {
        let last = list.worst(a).expect("nonempty");
        let rest = c.choice(a.without(last));
        let pair = Menu::from_items([rest, last]);
        if c.choice(a) != c.choice(pair) {
            return AxiomVerdict::fail(Counterexample::new(
                format!(
                    "c({}) = {} but the list compares {} with {} and keeps {}",
                    fm(g, a),
                    g.label(c.choice(a)),
                    g.label(rest),
                    g.label(last),
                    g.label(c.choice(pair))
                ),
                vec![a, pair],
                vec![last],
            ));
        }
    }
    AxiomVerdict::pass()
}

/// Sen's axioms α, γ, δ for a choice correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenVerdicts {
    pub alpha: AxiomVerdict,
    pub gamma: AxiomVerdict,
    pub delta: AxiomVerdict,
}

impl SenVerdicts {
    pub fn all_hold(&self) -> bool {
        self.alpha.holds && self.gamma.holds && self.delta.holds
    }
}

pub fn check_alpha_gamma_delta(gamma: &ChoiceCorrespondence) -> SenVerdicts {
    SenVerdicts {
        alpha: check_alpha_cc(gamma),
        gamma: check_gamma_cc(gamma),
        delta: check_delta_cc(gamma),
    }
}

/// α for correspondences, scanned over one-item removals.
pub fn check_alpha_cc(gamma: &ChoiceCorrespondence) -> AxiomVerdict {
    let g = gamma.ground();
    for b in g.menus().filter(|b| b.len() > 1) {
        let img = gamma.image(b);
        for y in b.items() {
            let a = b.without(y);
            if let Some(x) = img.intersection(a).difference(gamma.image(a)).first() {
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "{} is in Γ({}) but not in Γ({})",
                        g.label(x),
                        fm(g, b),
                        fm(g, a)
                    ),
                    vec![a, b],
                    vec![x],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

pub fn check_gamma_cc(gamma: &ChoiceCorrespondence) -> AxiomVerdict {
    let g = gamma.ground();
    for a in g.menus() {
        for b in g.menus() {
            let u = a.union(b);
            let common = gamma.image(a).intersection(gamma.image(b));
            if let Some(x) = common.difference(gamma.image(u)).first() {
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "{} is in Γ({}) and Γ({}) but not in Γ({})",
                        g.label(x),
                        fm(g, a),
                        fm(g, b),
                        fm(g, u)
                    ),
                    vec![a, b, u],
                    vec![x],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

pub fn check_delta_cc(gamma: &ChoiceCorrespondence) -> AxiomVerdict {
    let g = gamma.ground();
    for a in g.menus() {
        let img = gamma.image(a);
        if img.len() < 2 {
            continue;
        }
        for b in a.supermenus(g.full()) {
            let big = gamma.image(b);
            if big.len() == 1 && big.is_subset(img) {
                let x = big.first().expect("singleton");
                let y = img.without(x).first().expect("two items");
                return AxiomVerdict::fail(Counterexample::new(
                    format!(
                        "{} and {} are in Γ({}) but Γ({}) = {{{}}}",
                        g.label(x),
                        g.label(y),
                        fm(g, a),
                        fm(g, b),
                        g.label(x)
                    ),
                    vec![a, b],
                    vec![x, y],
                ));
            }
        }
    }
    AxiomVerdict::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::GroundSet;
    use crate::parse::parse_dataset;
    use crate::relations::{max_correspondence, BinaryRelation, LinearOrder};
    use std::sync::Arc;

    pub(crate) const E1: &str = "ground: x y z\nx y z -> x\nx y -> y\nx z -> z\ny z -> y\n";
    pub(crate) const E2: &str = "ground: x y z\nx y z -> x\nx y -> y\nx z -> x\ny z -> y\n";
    pub(crate) const E4: &str = "ground: x y z\nx y z -> y\nx y -> y\nx z -> x\ny z -> z\n";

    fn rational3() -> ChoiceFunction {
        ChoiceFunction::rational(GroundSet::standard(3).unwrap(), &LinearOrder::identity(3))
            .unwrap()
    }

    fn menu(c: &ChoiceFunction, s: &str) -> Menu {
        c.ground().parse_menu(s).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert!(check_alpha_cf(&rational3()).holds);
        let e1 = parse_dataset(E1).unwrap();
        let v = check_alpha_cf(&e1);
        let cx = v.counterexample.unwrap();
        assert_eq!(cx.menus, vec![menu(&e1, "x y"), menu(&e1, "x y z")]);
        assert_eq!(cx.items, vec![0]);
        let e2 = parse_dataset(E2).unwrap();
        let cx = check_alpha_cf(&e2).counterexample.unwrap();
        assert_eq!(cx.menus, vec![menu(&e2, "x y"), menu(&e2, "x y z")]);
    }

    #[test]
    fn warp_examples() {
        assert!(check_warp(&rational3()).holds);
        let e1 = parse_dataset(E1).unwrap();
        let cx = check_warp(&e1).counterexample.unwrap();
        assert!(cx.items.contains(&0) && cx.items.contains(&1));
    }

    #[test]
    fn weak_warp_on_e4() {
        assert!(check_weak_warp(&parse_dataset(E4).unwrap()).holds);
    }

    #[test]
    fn list_rationality_depends_on_the_list() {
        let e3 =
            parse_dataset("ground: x y z\nx y z -> z\nx y -> y\nx z -> x\ny z -> z\n").unwrap();
        let g = e3.ground();
        assert!(
            check_list_rational(&e3, &LinearOrder::from_labels(g, &["y", "x", "z"]).unwrap()).holds
        );
        let v = check_list_rational(&e3, &LinearOrder::from_labels(g, &["z", "y", "x"]).unwrap());
        assert_eq!(v.counterexample.unwrap().items, vec![0]);
        assert!(check_list_rational(&rational3(), &LinearOrder::identity(3)).holds);
    }

    #[test]
    fn weak_warp_four_item_violation() {
        let c = parse_dataset(
            "ground: x y z w\nx y -> x\nx z -> x\ny z -> y\nx y z -> y\nx w -> x\ny w -> y\n\
             x y w -> x\nz w -> z\nx z w -> x\ny z w -> y\nx y z w -> x\n",
        )
        .unwrap();
        let v = check_weak_warp(&c);
        assert!(!v.holds);
        let ce = v.counterexample.unwrap();
        let g = c.ground();
        let menus: Vec<String> = ce.menus.iter().map(|&m| g.format_menu(m)).collect();
        assert_eq!(menus, ["x y z", "x y z w", "x y"]);
        assert_eq!(ce.items, vec![0, 1]);
        assert!(!check_weak_warp_naive(&c).holds);
    }

    #[test]
    fn overload_and_art_on_rational() {
        let c = rational3();
        assert!(check_overload_warp(&c).holds);
        assert!(check_overload_warp_outer(&c).holds);
        assert!(check_art(&c).holds);
        assert!(check_single_reversal(&c).holds);
    }

    #[test]
    fn art_and_sra_examples() {
        let e1 = parse_dataset(E1).unwrap();
        assert!(!check_art(&e1).holds);
        assert!(!check_single_reversal(&e1).holds);
        let e2 = parse_dataset(E2).unwrap();
        assert!(check_art(&e2).holds);
        assert!(check_single_reversal(&e2).holds);
    }

    #[test]
    fn sen_axioms_examples() {
        let g = GroundSet::standard(3).unwrap();
        assert!(
            check_alpha_gamma_delta(&ChoiceCorrespondence::identity(Arc::clone(&g))).all_hold()
        );
        let p = BinaryRelation::from_label_pairs(Arc::clone(&g), &[("x", "z")]);
        assert!(check_alpha_gamma_delta(&max_correspondence(&p).unwrap()).all_hold());

        let xyz = g.parse_menu("x y z").unwrap();
        let x = g.parse_menu("x").unwrap();
        let gam = ChoiceCorrespondence::from_fn(Arc::clone(&g), |m| if m == xyz { x } else { m })
            .unwrap();
        let v = check_alpha_gamma_delta(&gam);
        assert!(!v.delta.holds);
        assert_eq!(
            v.delta.counterexample.unwrap().menus,
            vec![g.parse_menu("x y").unwrap(), xyz]
        );
    }
}
