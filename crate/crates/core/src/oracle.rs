//! Exhaustive enumeration, sampling, brute-force explanation search and the
//! equivalence suites built on them.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::axioms::{
    check_alpha_cc, check_alpha_cf, check_alpha_gamma_delta, check_art_with, check_list_rational,
    check_overload_warp, check_single_reversal_with, check_warp, check_weak_warp, AxiomVerdict,
};
use crate::classify::{
    audit_necessary_conditions, verify_explanation, Analysis, Explanation, Family, ModelId,
    Preference, CONTAINMENTS,
};
use crate::consideration::{
    check_attention_property, check_competitive_property, check_max_condition,
    check_salient_property, check_selective_property, gamma_min_with, gamma_order,
    psi_min_star_with, verify_attention_filter, verify_competitive_filter,
};
use crate::domain::{ChoiceCorrespondence, ChoiceFunction, GroundSet, Menu};
use crate::error::{Error, Result};
use crate::relations::{
    asymmetric_relations, linear_extension, lower_contour, max_correspondence, maximal_elements,
    strict_partial_orders, BinaryRelation, LinearOrder,
};

/// Largest ground set enumerated exhaustively.
pub const ENUMERATE_MAX_N: usize = 4;
/// Largest ground set for exhaustive (filter, preference) search.
pub const EXHAUSTIVE_MAX_N: usize = 3;

fn bound(what: &str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::BoundExceeded {
            what: what.to_string(),
            n,
            max,
        });
    }
    Ok(())
}

/// `∏ |A|` over all menus.
pub fn total_functions(n: usize) -> u128 {
    (1..=n).fold(1u128, |acc, k| acc * (k as u128).pow(binomial(n, k) as u32))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The choice function with mixed-radix code `index`: the menu with the
/// smallest bit pattern is the least significant digit, and each digit
/// picks a member of its menu by ascending index.
pub fn function_at(ground: &Arc<GroundSet>, mut index: u64) -> ChoiceFunction {
    let mut table = vec![0u8; ground.table_len()];
    for menu in ground.menus() {
        let k = menu.len() as u64;
        let digit = (index % k) as usize;
        index /= k;
        table[menu.index()] = menu.items().nth(digit).expect("digit < |A|") as u8;
    }
    ChoiceFunction::from_table_unchecked(Arc::clone(ground), table)
}

/// Every choice function on `n` items, once each, in mixed-radix order.
pub fn enumerate_choice_functions(n: usize) -> Result<impl Iterator<Item = ChoiceFunction>> {
    bound("exhaustive enumeration", n, ENUMERATE_MAX_N)?;
    let ground = GroundSet::standard(n)?;
    let total = total_functions(n) as u64;
    Ok((0..total).map(move |i| function_at(&ground, i)))
}

/// `count` independent uniform draws: each menu's choice is uniform over
/// its members. Reproducible for a fixed `(n, count, seed)`.
pub fn sample_choice_functions(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<impl Iterator<Item = ChoiceFunction>> {
    let ground = GroundSet::standard(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(move |_| {
        let mut table = vec![0u8; ground.table_len()];
        for menu in ground.menus() {
            let pick = rng.random_range(0..menu.len());
            table[menu.index()] = menu.items().nth(pick).expect("in range") as u8;
        }
        ChoiceFunction::from_table_unchecked(Arc::clone(&ground), table)
    }))
}

/// Candidate images of `A`: submenus of `allowed ∩ A` containing `c(A)`.
fn candidates(c: &ChoiceFunction, allowed: impl Fn(Menu) -> Menu) -> Vec<(Menu, Vec<Menu>)> {
    c.ground()
        .menus()
        .map(|a| {
            let ca = c.choice(a);
            let room = allowed(a).intersection(a).without(ca);
            let options = std::iter::once(Menu::EMPTY)
                .chain(room.submenus())
                .map(|s| s.with(ca))
                .collect();
            (a, options)
        })
        .collect()
}

/// Calls `visit` on every filter that picks one option per menu, stopping
/// early on `Break`.
fn for_each_product(
    ground: &Arc<GroundSet>,
    options: &[(Menu, Vec<Menu>)],
    mut visit: impl FnMut(&ChoiceCorrespondence) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut digits = vec![0usize; options.len()];
    loop {
        let mut image = vec![Menu::EMPTY; ground.table_len()];
        for ((menu, opts), &d) in options.iter().zip(&digits) {
            image[menu.index()] = opts[d];
        }
        let filter =
            ChoiceCorrespondence::from_fn_unchecked(Arc::clone(ground), |m| image[m.index()]);
        visit(&filter)?;
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return ControlFlow::Continue(());
            }
            digits[pos] += 1;
            if digits[pos] < options[pos].1.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn family_property(family: Family, filter: &ChoiceCorrespondence, order: &LinearOrder) -> bool {
    match family {
        Family::Selective => check_selective_property(filter, order).holds,
        Family::Attention => check_attention_property(filter).holds,
        Family::Competitive => check_competitive_property(filter, order).holds,
        Family::Salient => check_salient_property(filter, order).holds,
        Family::Shortlist => check_alpha_gamma_delta(filter).all_hold(),
        Family::Constraint => check_alpha_cc(filter).holds,
    }
}

/// Visits every explanation of `c` in the family's filter class: every
/// linear order (every asymmetric relation for psychological constraints)
/// and every filter satisfying the family's property whose maximization
/// reproduces `c`.
pub fn for_each_explanation(
    c: &ChoiceFunction,
    family: Family,
    mut visit: impl FnMut(&ChoiceCorrespondence, &Preference) -> ControlFlow<()>,
) -> Result<()> {
    bound("exhaustive explanation search", c.n(), EXHAUSTIVE_MAX_N)?;
    let g = c.ground();
    if family == Family::Constraint {
        for rel in asymmetric_relations(g) {
            let opts = candidates(c, |a| a);
            let opts: Vec<(Menu, Vec<Menu>)> = opts
                .into_iter()
                .map(|(a, o)| {
                    let ca = c.choice(a);
                    let keep = o
                        .into_iter()
                        .filter(|&s| maximal_elements(s, &rel) == Menu::singleton(ca))
                        .collect();
                    (a, keep)
                })
                .collect();
            if opts.iter().any(|(_, o)| o.is_empty()) {
                continue;
            }
            let pref = Preference::Relation(rel.clone());
            let flow = for_each_product(g, &opts, |f| {
                if check_alpha_cc(f).holds {
                    visit(f, &pref)
                } else {
                    ControlFlow::Continue(())
                }
            });
            if flow.is_break() {
                return Ok(());
            }
        }
        return Ok(());
    }
    for order in LinearOrder::all(c.n()) {
        let opts = candidates(c, |a| lower_contour(c.choice(a), &order));
        let pref = Preference::Linear(order.clone());
        let flow = for_each_product(g, &opts, |f| {
            if family_property(family, f, &order) {
                visit(f, &pref)
            } else {
                ControlFlow::Continue(())
            }
        });
        if flow.is_break() {
            return Ok(());
        }
    }
    Ok(())
}

/// First explanation of `c` for model `m` by brute force, or `None`.
pub fn exhaustive_explanation_search(
    c: &ChoiceFunction,
    m: ModelId,
) -> Result<Option<Explanation>> {
    bound("exhaustive explanation search", c.n(), EXHAUSTIVE_MAX_N)?;
    let base = |filter: ChoiceCorrespondence, preference: Preference| Explanation {
        model: m,
        filter,
        preference,
        shortlist: None,
        list: None,
    };
    match m {
        ModelId::Lr => {
            for list in LinearOrder::all(c.n()) {
                if check_list_rational(c, &list).holds {
                    let order = LinearOrder::new(list.ranking().iter().rev().copied().collect())?;
                    let mut e = base(gamma_order(c, &order), Preference::Linear(order));
                    e.list = Some(list);
                    return Ok(Some(e));
                }
            }
            Ok(None)
        }
        ModelId::CapacitySl(_) => Ok(Analysis::new(c).elicit(m).ok()),
        _ => {
            let mut found = None;
            for_each_explanation(c, m.family(), |f, p| {
                found = Some(base(f.clone(), p.clone()));
                ControlFlow::Break(())
            })?;
            if let (Some(e), Family::Shortlist) = (&mut found, m.family()) {
                e.shortlist = Some(pair_relation(&e.filter));
            }
            Ok(found)
        }
    }
}

/// `x P y` iff `Γ(xy) = {x}`.
fn pair_relation(filter: &ChoiceCorrespondence) -> BinaryRelation {
    let g = filter.ground();
    let mut rel = BinaryRelation::empty(Arc::clone(g));
    for a in g.menus().filter(|a| a.len() == 2) {
        let img = filter.image(a);
        if img.len() == 1 {
            let x = img.first().expect("singleton");
            rel.insert(x, a.without(x).first().expect("pair"));
        }
    }
    rel
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub model: ModelId,
    pub count: usize,
    pub sample_size: usize,
    pub n: usize,
    pub up_to_iso: bool,
}

/// How the census draws its functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusSource {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

fn census_population(
    n: usize,
    source: CensusSource,
    up_to_iso: bool,
) -> Result<Vec<ChoiceFunction>> {
    let mut all: Vec<ChoiceFunction> = match source {
        CensusSource::Exhaustive => enumerate_choice_functions(n)?.collect(),
        CensusSource::Sample { count, seed } => sample_choice_functions(n, count, seed)?.collect(),
    };
    if up_to_iso {
        let mut seen = BTreeSet::new();
        all = all
            .into_iter()
            .map(|c| c.canonical_form())
            .filter(|c| seen.insert(c.table().to_vec()))
            .collect();
    }
    Ok(all)
}

fn verdict_row(c: &ChoiceFunction, models: &[ModelId]) -> Result<Vec<bool>> {
    let analysis = Analysis::new(c);
    models
        .iter()
        .map(|&m| analysis.decide(m).map(|v| v.holds))
        .collect()
}

fn rows_from_counts(
    models: &[ModelId],
    counts: Vec<usize>,
    sample_size: usize,
    n: usize,
    up_to_iso: bool,
) -> Vec<CensusRow> {
    models
        .iter()
        .zip(counts)
        .map(|(&model, count)| CensusRow {
            model,
            count,
            sample_size,
            n,
            up_to_iso,
        })
        .collect()
}

/// Per-model counts over all functions (or a sample), in parallel.
pub fn census(
    n: usize,
    models: &[ModelId],
    up_to_iso: bool,
    source: CensusSource,
) -> Result<Vec<CensusRow>> {
    let population = census_population(n, source, up_to_iso)?;
    let counts = population
        .par_iter()
        .map(|c| verdict_row(c, models))
        .try_fold(
            || vec![0usize; models.len()],
            |mut acc, row| {
                for (slot, hit) in acc.iter_mut().zip(row?) {
                    *slot += hit as usize;
                }
                Ok::<_, Error>(acc)
            },
        )
        .try_reduce(
            || vec![0usize; models.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                Ok(a)
            },
        )?;
    Ok(rows_from_counts(
        models,
        counts,
        population.len(),
        n,
        up_to_iso,
    ))
}

/// Single-threaded reference for [`census`].
pub fn census_serial(
    n: usize,
    models: &[ModelId],
    up_to_iso: bool,
    source: CensusSource,
) -> Result<Vec<CensusRow>> {
    let population = census_population(n, source, up_to_iso)?;
    let mut counts = vec![0usize; models.len()];
    for c in &population {
        for (slot, hit) in counts.iter_mut().zip(verdict_row(c, models)?) {
            *slot += hit as usize;
        }
    }
    Ok(rows_from_counts(
        models,
        counts,
        population.len(),
        n,
        up_to_iso,
    ))
}

/// Containment failures found in the population: `(premise, conclusion)`
/// and the number of functions breaking it.
pub fn containment_census(population: &[ChoiceFunction]) -> Vec<(String, usize)> {
    let mut rules: Vec<(ModelId, ModelId)> = CONTAINMENTS.to_vec();
    let bounded_ok = population
        .first()
        .is_none_or(|c| c.n() <= crate::classify::SEARCH_MAX_N);
    let n = population.first().map_or(0, |c| c.n());
    for m in ModelId::standard_list(n) {
        if m != ModelId::Alpha && (bounded_ok || !matches!(m, ModelId::CapacitySl(_))) {
            rules.push((ModelId::Alpha, m));
        }
    }
    let violations = population
        .par_iter()
        .map(|c| {
            let a = Analysis::new(c);
            let alpha = check_alpha_cf(c).holds;
            rules
                .iter()
                .map(|&(p, q)| {
                    if p == ModelId::Alpha && !alpha {
                        return 0;
                    }
                    let holds = |m| a.decide(m).map(|v| v.holds).unwrap_or(true);
                    (holds(p) && !holds(q)) as usize
                })
                .collect::<Vec<_>>()
        })
        .reduce(
            || vec![0; rules.len()],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );
    rules
        .iter()
        .zip(violations)
        .map(|(&(p, q), v)| (format!("{p} => {q}"), v))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub n: usize,
    pub passed: bool,
    pub checked: usize,
    pub disagreements: usize,
    /// Serialized datasets (canonical form) that break the suite.
    pub counterexamples: Vec<String>,
    /// First disagreement, described.
    pub detail: Option<String>,
}

/// Suite names in run order, with the largest `n` each supports.
pub const SUITES: [(&str, usize); 11] = [
    ("alpha-triple", 4),
    ("weak-warp-family", 4),
    ("overload-order", 4),
    ("salience-triple", 4),
    ("list-rational", 4),
    ("list-order", 4),
    ("shortlist", 4),
    ("cmla", 4),
    ("minimality", 3),
    ("necessary-conditions", 4),
    ("containments", 4),
];

const MAX_COUNTEREXAMPLES: usize = 5;

fn suite_bound(name: &str) -> Result<usize> {
    SUITES
        .iter()
        .find(|(s, _)| *s == name)
        .map(|&(_, max)| max)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

/// Runs one suite over every choice function on `n` items.
pub fn run_suite(name: &str, n: usize) -> Result<SuiteResult> {
    let max = suite_bound(name)?;
    bound(&format!("suite {name}"), n, max)?;
    let population: Vec<ChoiceFunction> = enumerate_choice_functions(n)?.collect();
    run_suite_on(name, n, &population)
}

/// Runs one suite over the given functions; used to replay counterexamples.
pub fn run_suite_on(name: &str, n: usize, population: &[ChoiceFunction]) -> Result<SuiteResult> {
    suite_bound(name)?;
    let outcomes: Vec<Option<String>> = population
        .par_iter()
        .map(|c| check_one(name, c))
        .collect::<Result<_>>()?;
    let mut counterexamples = Vec::new();
    let mut seen = BTreeSet::new();
    let mut detail = None;
    let mut disagreements = 0;
    for (c, outcome) in population.iter().zip(&outcomes) {
        let Some(why) = outcome else { continue };
        disagreements += 1;
        detail.get_or_insert_with(|| why.clone());
        let canon = c.canonical_form();
        if counterexamples.len() < MAX_COUNTEREXAMPLES && seen.insert(canon.table().to_vec()) {
            counterexamples.push(canon.to_cf_string());
        }
    }
    Ok(SuiteResult {
        name: name.to_string(),
        n,
        passed: disagreements == 0,
        checked: population.len(),
        disagreements,
        counterexamples,
        detail,
    })
}

fn agree(labels: &[&str], verdicts: &[bool]) -> Option<String> {
    if verdicts.iter().all(|&v| v == verdicts[0]) {
        return None;
    }
    let parts: Vec<String> = labels
        .iter()
        .zip(verdicts)
        .map(|(l, v)| format!("{l}={v}"))
        .collect();
    Some(format!("verdicts differ: {}", parts.join(", ")))
}

fn failed(v: &AxiomVerdict) -> String {
    v.counterexample
        .as_ref()
        .map_or_else(|| "failed".to_string(), |ce| ce.reason.clone())
}

/// One function's contribution to a suite: `Some(description)` on a
/// disagreement.
pub fn check_one(name: &str, c: &ChoiceFunction) -> Result<Option<String>> {
    let a = Analysis::new(c);
    let n = c.n();
    Ok(match name {
        "alpha-triple" => agree(
            &["alpha", "WARP", "CSSLA"],
            &[
                check_alpha_cf(c).holds,
                check_warp(c).holds,
                a.decide(ModelId::Cssla)?.holds,
            ],
        ),
        "weak-warp-family" => agree(
            &["weak WARP", "overload WARP", "MBR"],
            &[
                check_weak_warp(c).holds,
                check_overload_warp(c).holds,
                a.decide(ModelId::Mbr)?.holds,
            ],
        ),
        "overload-order" => agree(
            &["overload WARP", "MOR"],
            &[check_overload_warp(c).holds, a.decide(ModelId::Mor)?.holds],
        ),
        "salience-triple" => agree(
            &["ART", "single reversal", "⊨ asymmetric"],
            &[
                check_art_with(c, a.switches()).holds,
                check_single_reversal_with(c, a.switches()).holds,
                a.models().is_asymmetric(),
            ],
        ),
        "list-rational" => {
            let criterion = a.f().is_extendable();
            if n <= EXHAUSTIVE_MAX_N {
                let found = exhaustive_explanation_search(c, ModelId::Ccla)?.is_some();
                agree(&["F criterion", "competitive search"], &[criterion, found])
            } else if criterion {
                let order = linear_extension(a.f())?;
                let v = verify_competitive_filter(&gamma_order(c, &order), c, &order);
                (!v.holds)
                    .then(|| format!("constructed competitive filter rejected: {}", failed(&v)))
            } else {
                None
            }
        }
        "list-order" => {
            let criterion = a.f().is_extendable();
            let brute = LinearOrder::all(n).any(|l| check_list_rational(c, &l).holds);
            agree(&["F criterion", "list search"], &[criterion, brute]).or_else(|| {
                if !criterion {
                    return None;
                }
                let e = a.elicit(ModelId::Lr).ok()?;
                let v = verify_explanation(c, &e);
                (!v.holds).then(|| format!("elicited list rejected: {}", failed(&v)))
            })
        }
        "shortlist" => shortlist_check(c, &a)?,
        "cmla" => {
            let criterion = a.decide(ModelId::Cmla)?.holds;
            let gm = gamma_min_with(c, a.switches());
            let definitional = check_attention_property(&gm).holds
                && LinearOrder::all(n).any(|o| check_max_condition(&gm, c, &o).holds);
            agree(
                &["conditions (i)-(iii)", "definition"],
                &[criterion, definitional],
            )
            .or_else(|| {
                if !criterion {
                    return None;
                }
                let order = linear_extension(a.p()).ok()?;
                let v = verify_attention_filter(&gm, c, &order);
                (!v.holds).then(|| format!("constructed minimal filter rejected: {}", failed(&v)))
            })
        }
        "minimality" => minimality_check(c, &a)?,
        "necessary-conditions" => audit_check(c, &a)?,
        "containments" => {
            let standard = ModelId::standard_list(n);
            let verdicts: Vec<(ModelId, bool)> = standard
                .iter()
                .map(|&m| a.decide(m).map(|v| (m, v.holds)))
                .collect::<Result<_>>()?;
            let holds = |m: ModelId| verdicts.iter().find(|(x, _)| *x == m).is_some_and(|v| v.1);
            let mut rules: Vec<(ModelId, ModelId)> = CONTAINMENTS.to_vec();
            rules.extend(standard.iter().map(|&m| (ModelId::Alpha, m)));
            rules
                .into_iter()
                .find(|&(p, q)| holds(p) && !holds(q))
                .map(|(p, q)| format!("{p} holds but {q} fails"))
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

fn shortlist_check(c: &ChoiceFunction, a: &Analysis<'_>) -> Result<Option<String>> {
    let n = c.n();
    let criterion = a.related_to().is_extendable();
    let g = c.ground();
    let mut found: Option<ChoiceCorrespondence> = None;
    for p in strict_partial_orders(g) {
        let filter = max_correspondence(&p)?;
        let explains = if n <= EXHAUSTIVE_MAX_N {
            LinearOrder::all(n).any(|o| check_max_condition(&filter, c, &o).holds)
        } else {
            forced_order_exists(c, &filter)
        };
        if explains {
            found = Some(filter);
            break;
        }
    }
    if let Some(d) = agree(
        &["related-to criterion", "shortlist search"],
        &[criterion, found.is_some()],
    ) {
        return Ok(Some(d));
    }
    Ok(found.and_then(|f| {
        let sen = check_alpha_gamma_delta(&f);
        (!sen.all_hold()).then(|| "first-stage maxima violate Sen's axioms".to_string())
    }))
}

fn forced_order_exists(c: &ChoiceFunction, filter: &ChoiceCorrespondence) -> bool {
    let g = c.ground();
    let mut forced = BinaryRelation::empty(Arc::clone(g));
    for a in g.menus() {
        let (img, ca) = (filter.image(a), c.choice(a));
        if !img.contains(ca) {
            return false;
        }
        for y in img.without(ca).items() {
            forced.insert(ca, y);
        }
    }
    forced.is_extendable()
}

fn minimality_check(c: &ChoiceFunction, a: &Analysis<'_>) -> Result<Option<String>> {
    let gm = gamma_min_with(c, a.switches());
    let star = psi_min_star_with(c, a.switches());
    let mut problem: Option<String> = None;
    if a.decide(ModelId::Cla)?.holds {
        for_each_explanation(c, Family::Attention, |f, _| {
            if gm.is_pointwise_subset(f) {
                ControlFlow::Continue(())
            } else {
                problem = Some("an attention filter misses S_A ∪ c(A)".into());
                ControlFlow::Break(())
            }
        })?;
    }
    if problem.is_none() && check_weak_warp(c).holds {
        let psi = a.psi_min().clone();
        for_each_explanation(c, Family::Constraint, |f, _| {
            if psi.is_pointwise_subset(f) {
                ControlFlow::Continue(())
            } else {
                problem = Some("a psychological constraint misses D_A".into());
                ControlFlow::Break(())
            }
        })?;
    }
    if problem.is_none() {
        let identity = ChoiceCorrespondence::identity(Arc::clone(c.ground()));
        if !gm.is_pointwise_subset(&star) || !star.is_pointwise_subset(&identity) {
            problem = Some("S_A ∪ c(A) ⊆ S↑_A ∪ D_A ⊆ A fails".into());
        }
    }
    Ok(problem)
}

fn audit_check(c: &ChoiceFunction, a: &Analysis<'_>) -> Result<Option<String>> {
    for m in [ModelId::Rlc, ModelId::Csla, ModelId::Ccla] {
        if !a.decide(m)?.holds {
            continue;
        }
        let e = match a.elicit(m) {
            Ok(e) => e,
            Err(err) => return Ok(Some(format!("{m}: no explanation to audit ({err})"))),
        };
        let v = audit_necessary_conditions(c, &e);
        if !v.holds {
            return Ok(Some(format!("{m}: {}", failed(&v))));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_dataset;

    const E2: &str = "ground: x y z\nx y z -> x\nx y -> y\nx z -> x\ny z -> y\n";
    const E3: &str = "ground: x y z\nx y z -> z\nx y -> y\nx z -> x\ny z -> z\n";

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_choice_functions(2).unwrap().count(), 2);
        assert_eq!(enumerate_choice_functions(3).unwrap().count(), 24);
        assert_eq!(total_functions(4), 20736);
        assert!(matches!(
            enumerate_choice_functions(5),
            Err(Error::BoundExceeded { .. })
        ));
        let distinct: BTreeSet<Vec<u8>> = enumerate_choice_functions(3)
            .unwrap()
            .map(|c| c.table().to_vec())
            .collect();
        assert_eq!(distinct.len(), 24);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a: Vec<_> = sample_choice_functions(5, 50, 42).unwrap().collect();
        let b: Vec<_> = sample_choice_functions(5, 50, 42).unwrap().collect();
        assert_eq!(a, b);
        assert_eq!(sample_choice_functions(4, 0, 1).unwrap().count(), 0);
    }

    #[test]
    fn exhaustive_search_examples() {
        let e2 = parse_dataset(E2).unwrap();
        assert!(exhaustive_explanation_search(&e2, ModelId::Ccla)
            .unwrap()
            .is_none());
        let rational =
            ChoiceFunction::rational(GroundSet::standard(3).unwrap(), &LinearOrder::identity(3))
                .unwrap();
        for m in [
            ModelId::Ccla,
            ModelId::Cla,
            ModelId::Csla,
            ModelId::Cssla,
            ModelId::Mbr,
            ModelId::Sl,
            ModelId::Lr,
        ] {
            let e = exhaustive_explanation_search(&rational, m)
                .unwrap()
                .unwrap();
            assert!(verify_explanation(&rational, &e).holds, "{m}");
        }
        let e3 = parse_dataset(E3).unwrap();
        assert!(exhaustive_explanation_search(&e3, ModelId::Lr)
            .unwrap()
            .is_some());
    }

    #[test]
    fn census_small() {
        let models = [ModelId::Alpha, ModelId::WeakWarp];
        let rows = census(3, &models, false, CensusSource::Exhaustive).unwrap();
        assert_eq!(rows[0].count, 6);
        assert_eq!(rows[1].count, 24);
        assert_eq!(
            rows,
            census_serial(3, &models, false, CensusSource::Exhaustive).unwrap()
        );
        let iso = census(3, &models, true, CensusSource::Exhaustive).unwrap();
        assert_eq!(iso[0].count, 1);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nope", 3), Err(Error::UnknownSuite(_))));
        assert!(matches!(
            run_suite("minimality", 4),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
