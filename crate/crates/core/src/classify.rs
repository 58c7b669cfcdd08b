//! Per-model deciders and witness explanations.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::axioms::{
    check_alpha_cc, check_alpha_cf, check_alpha_gamma_delta, check_art_with, check_list_rational,
    check_overload_warp, check_single_reversal_with, check_warp, check_weak_warp, AxiomVerdict,
    Counterexample,
};
use crate::consideration::{
    capacity_filter, check_max_condition, check_max_condition_relation, gamma_min_with,
    gamma_order, psi_min, psi_min_star_with, selective_filter, verify_attention_filter,
    verify_competitive_filter, verify_salient_filter, verify_selective_filter, SwitchIndex,
};
use crate::domain::{ChoiceCorrespondence, ChoiceFunction, GroundSet, Menu};
use crate::error::{Error, Result};
use crate::relations::{
    linear_extension, max_correspondence, maximal_elements, open_interval, strict_partial_orders,
    BinaryRelation, LinearOrder,
};
use crate::revealed::{
    relation_direct, relation_f, relation_models_with, relation_p, relation_r_with,
    relation_related_to, relation_rev,
};

/// Largest ground set for the bounded (shortlist and capacity) searches.
pub const SEARCH_MAX_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    Alpha,
    Warp,
    WeakWarp,
    Ctc,
    Cla,
    Brt,
    Ort,
    Lr,
    Sl,
    Overload,
    CapacitySl(usize),
    Cer,
    Gtr,
    Lcc,
    Rlc,
    Csla,
    Cssla,
    Ccla,
    Cmla,
    Mbr,
    Mor,
    Mabr,
    Maor,
}

/// Groups of models sharing a filter class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Selective filters (α-rational choices).
    Selective,
    /// Attention filters.
    Attention,
    /// Competitive attention filters.
    Competitive,
    /// Salient filters.
    Salient,
    /// Psychological constraints satisfying Axiom α.
    Constraint,
    /// Maxima of a strict partial order (α, γ, δ).
    Shortlist,
}

impl ModelId {
    /// Every model without a parameter, in display order.
    pub const FIXED: [ModelId; 22] = [
        ModelId::Alpha,
        ModelId::Warp,
        ModelId::WeakWarp,
        ModelId::Ctc,
        ModelId::Cla,
        ModelId::Brt,
        ModelId::Ort,
        ModelId::Lr,
        ModelId::Sl,
        ModelId::Overload,
        ModelId::Cer,
        ModelId::Gtr,
        ModelId::Lcc,
        ModelId::Rlc,
        ModelId::Csla,
        ModelId::Cssla,
        ModelId::Ccla,
        ModelId::Cmla,
        ModelId::Mbr,
        ModelId::Mor,
        ModelId::Mabr,
        ModelId::Maor,
    ];

    /// The models run by `classify_all` on a ground set of size `n`:
    /// capacity models appear for `1 ≤ k < n` only while the search is
    /// exhaustive enough to run (`n ≤ 4`).
    pub fn standard_list(n: usize) -> Vec<ModelId> {
        let mut out = Vec::with_capacity(Self::FIXED.len() + n);
        for m in Self::FIXED {
            out.push(m);
            if m == ModelId::Overload && n <= SEARCH_MAX_N {
                out.extend((1..n).map(ModelId::CapacitySl));
            }
        }
        out
    }

    pub fn name(self) -> String {
        match self {
            ModelId::CapacitySl(k) => format!("CAPACITY_SL({k})"),
            other => other.fixed_name().to_string(),
        }
    }

    fn fixed_name(self) -> &'static str {
        match self {
            ModelId::Alpha => "ALPHA",
            ModelId::Warp => "WARP",
            ModelId::WeakWarp => "WEAK_WARP",
            ModelId::Ctc => "CTC",
            ModelId::Cla => "CLA",
            ModelId::Brt => "BRT",
            ModelId::Ort => "ORT",
            ModelId::Lr => "LR",
            ModelId::Sl => "SL",
            ModelId::Overload => "OVERLOAD",
            ModelId::CapacitySl(_) => "CAPACITY_SL",
            ModelId::Cer => "CER",
            ModelId::Gtr => "GTR",
            ModelId::Lcc => "LCC",
            ModelId::Rlc => "RLC",
            ModelId::Csla => "CSLA",
            ModelId::Cssla => "CSSLA",
            ModelId::Ccla => "CCLA",
            ModelId::Cmla => "CMLA",
            ModelId::Mbr => "MBR",
            ModelId::Mor => "MOR",
            ModelId::Mabr => "MABR",
            ModelId::Maor => "MAOR",
        }
    }

    pub fn family(self) -> Family {
        use ModelId::*;
        match self {
            Alpha | Warp | Cssla => Family::Selective,
            Cla | Cmla => Family::Attention,
            Lr | Ccla => Family::Competitive,
            Csla | Gtr | Cer => Family::Salient,
            WeakWarp | Ctc | Lcc | Overload | Brt | Mbr | Ort | Mor | Mabr | Maor => {
                Family::Constraint
            }
            Sl | Rlc | CapacitySl(_) => Family::Shortlist,
        }
    }

    /// Parses a comma-separated list such as `CMLA,cla,CAPACITY_SL(2)`.
    pub fn parse_list(text: &str) -> Result<Vec<ModelId>> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase().replace('-', "_");
        if let Some(rest) = upper.strip_prefix("CAPACITY_SL") {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::UnknownModel(s.to_string()))?;
            return match inner.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(ModelId::CapacitySl(k)),
                _ => Err(Error::UnknownModel(s.to_string())),
            };
        }
        Self::FIXED
            .into_iter()
            .find(|m| m.fixed_name() == upper)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preference {
    Linear(LinearOrder),
    Relation(BinaryRelation),
}

impl Preference {
    pub fn to_relation(&self, ground: &Arc<GroundSet>) -> BinaryRelation {
        match self {
            Preference::Linear(order) => order.to_relation(Arc::clone(ground)),
            Preference::Relation(rel) => rel.clone(),
        }
    }

    pub fn as_linear(&self) -> Option<&LinearOrder> {
        match self {
            Preference::Linear(order) => Some(order),
            Preference::Relation(_) => None,
        }
    }
}

/// A filter and a preference whose filtered maximization reproduces `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explanation {
    pub model: ModelId,
    pub filter: ChoiceCorrespondence,
    pub preference: Preference,
    /// First-stage relation of a shortlisting explanation.
    pub shortlist: Option<BinaryRelation>,
    /// The list (best first) of a list-rational explanation.
    pub list: Option<LinearOrder>,
}

impl Explanation {
    fn new(model: ModelId, filter: ChoiceCorrespondence, preference: Preference) -> Self {
        Explanation {
            model,
            filter,
            preference,
            shortlist: None,
            list: None,
        }
    }
}

/// Lazily computed objects shared by the deciders of one dataset.
pub struct Analysis<'a> {
    c: &'a ChoiceFunction,
    switches: OnceCell<SwitchIndex>,
    p: OnceCell<BinaryRelation>,
    f: OnceCell<BinaryRelation>,
    related: OnceCell<BinaryRelation>,
    models: OnceCell<BinaryRelation>,
    psi: OnceCell<ChoiceCorrespondence>,
    rev: OnceCell<BinaryRelation>,
    r: OnceCell<BinaryRelation>,
}

impl<'a> Analysis<'a> {
    pub fn new(c: &'a ChoiceFunction) -> Self {
        Analysis {
            c,
            switches: OnceCell::new(),
            p: OnceCell::new(),
            f: OnceCell::new(),
            related: OnceCell::new(),
            models: OnceCell::new(),
            psi: OnceCell::new(),
            rev: OnceCell::new(),
            r: OnceCell::new(),
        }
    }

    pub fn choice(&self) -> &ChoiceFunction {
        self.c
    }

    pub fn switches(&self) -> &SwitchIndex {
        self.switches.get_or_init(|| SwitchIndex::new(self.c))
    }

    pub fn p(&self) -> &BinaryRelation {
        self.p.get_or_init(|| relation_p(self.c))
    }

    pub fn f(&self) -> &BinaryRelation {
        self.f.get_or_init(|| relation_f(self.c))
    }

    pub fn related_to(&self) -> &BinaryRelation {
        self.related.get_or_init(|| relation_related_to(self.c))
    }

    pub fn models(&self) -> &BinaryRelation {
        self.models
            .get_or_init(|| relation_models_with(self.c, self.switches()))
    }

    pub fn psi_min(&self) -> &ChoiceCorrespondence {
        self.psi.get_or_init(|| psi_min(self.c))
    }

    pub fn rev(&self) -> &BinaryRelation {
        self.rev
            .get_or_init(|| relation_rev(self.c, self.psi_min()))
    }

    pub fn r(&self) -> &BinaryRelation {
        self.r
            .get_or_init(|| relation_r_with(self.c, self.switches()))
    }

    pub fn decide(&self, m: ModelId) -> Result<AxiomVerdict> {
        let c = self.c;
        Ok(match m {
            ModelId::Alpha => check_alpha_cf(c),
            ModelId::Warp => check_warp(c),
            ModelId::Cssla => decide_cssla(c),
            ModelId::WeakWarp | ModelId::Ctc | ModelId::Lcc => check_weak_warp(c),
            ModelId::Overload => check_overload_warp(c),
            ModelId::Brt | ModelId::Mbr => asymmetric_verdict("Rev", self.rev(), c),
            ModelId::Ort | ModelId::Mor => extendable_verdict("Rev", self.rev(), c),
            ModelId::Cla => extendable_verdict("P", self.p(), c),
            ModelId::Lr | ModelId::Ccla => extendable_verdict("F", self.f(), c),
            ModelId::Sl | ModelId::Rlc => extendable_verdict("related-to", self.related_to(), c),
            ModelId::Csla => asymmetric_verdict("⊨", self.models(), c),
            ModelId::Gtr => check_art_with(c, self.switches()),
            ModelId::Cer => check_single_reversal_with(c, self.switches()),
            ModelId::Cmla => self.decide_cmla(),
            ModelId::Mabr => asymmetric_verdict("R", self.r(), c),
            ModelId::Maor => extendable_verdict("R", self.r(), c),
            ModelId::CapacitySl(k) => {
                let (found, note) = capacity_search(c, k)?;
                match found {
                    Some(_) => AxiomVerdict::pass().with_note(note),
                    None => AxiomVerdict::fail(Counterexample::new(
                        format!("no capacity-{k} shortlist explains the choice"),
                        vec![],
                        vec![],
                    ))
                    .with_note(note),
                }
            }
        })
    }

    /// Conditions (i)–(iii) of the minimal-attention characterization.
    fn decide_cmla(&self) -> AxiomVerdict {
        let c = self.c;
        let g = c.ground();
        let p = extendable_verdict("P", self.p(), c);
        if !p.holds {
            return p;
        }
        let sw = self.switches();
        for a in g.menus().filter(|a| a.len() >= 2) {
            let ca = c.choice(a);
            for x in a.without(ca).items() {
                if sw.is_switch(a, x) {
                    continue;
                }
                let ax = a.without(x);
                for y in ax.items() {
                    let inner = sw.is_switch(ax, y);
                    let outer = sw.is_switch(a, y);
                    let clause = match (inner, outer) {
                        (false, true) => "ii",
                        (true, false) => "iii",
                        _ => continue,
                    };
                    let reason = if clause == "ii" {
                        format!(
                            "condition (ii): ({{{}}}, {{{}}}) is a switch but neither ({{{}}}, {{{}}}) nor ({{{}}}, {{{}}}) is",
                            g.format_menu(a.without(y)),
                            g.format_menu(a),
                            g.format_menu(ax),
                            g.format_menu(a),
                            g.format_menu(ax.without(y)),
                            g.format_menu(ax)
                        )
                    } else {
                        format!(
                            "condition (iii): ({{{}}}, {{{}}}) is a switch but neither ({{{}}}, {{{}}}) nor ({{{}}}, {{{}}}) is",
                            g.format_menu(ax.without(y)),
                            g.format_menu(ax),
                            g.format_menu(ax),
                            g.format_menu(a),
                            g.format_menu(a.without(y)),
                            g.format_menu(a)
                        )
                    };
                    return AxiomVerdict::fail(Counterexample::new(reason, vec![a], vec![x, y]));
                }
            }
        }
        AxiomVerdict::pass()
    }

    pub fn elicit(&self, m: ModelId) -> Result<Explanation> {
        let verdict = self.decide(m)?;
        if !verdict.holds {
            let reason = verdict
                .counterexample
                .map(|ce| ce.reason)
                .unwrap_or_default();
            return Err(Error::NotInModel {
                model: m.name(),
                reason,
            });
        }
        let c = self.c;
        let g = c.ground();
        let e = match m {
            ModelId::Alpha | ModelId::Warp | ModelId::Cssla => {
                let order = linear_extension(&relation_direct(c))?;
                let filter = selective_filter(Arc::clone(g), &order);
                Explanation::new(m, filter, Preference::Linear(order))
            }
            ModelId::Cla => {
                let order = linear_extension(self.p())?;
                Explanation::new(m, gamma_order(c, &order), Preference::Linear(order))
            }
            ModelId::Cmla => {
                let order = linear_extension(self.p())?;
                let filter = gamma_min_with(c, self.switches());
                Explanation::new(m, filter, Preference::Linear(order))
            }
            ModelId::Lr | ModelId::Ccla => {
                let order = linear_extension(self.f())?;
                let list = LinearOrder::new(order.ranking().iter().rev().copied().collect())?;
                let mut e = Explanation::new(m, gamma_order(c, &order), Preference::Linear(order));
                e.list = Some(list);
                e
            }
            ModelId::Csla | ModelId::Gtr | ModelId::Cer => {
                match linear_extension(&self.models().inverse()) {
                    Ok(order) => {
                        Explanation::new(m, gamma_order(c, &order), Preference::Linear(order))
                    }
                    Err(_) => return fallback(c, m, "the reversed salience relation is cyclic"),
                }
            }
            ModelId::WeakWarp
            | ModelId::Ctc
            | ModelId::Lcc
            | ModelId::Overload
            | ModelId::Brt
            | ModelId::Mbr => Explanation::new(
                m,
                self.psi_min().clone(),
                Preference::Relation(self.rev().clone()),
            ),
            ModelId::Ort | ModelId::Mor => {
                let order = linear_extension(self.rev())?;
                Explanation::new(m, self.psi_min().clone(), Preference::Linear(order))
            }
            ModelId::Mabr => Explanation::new(
                m,
                psi_min_star_with(c, self.switches()),
                Preference::Relation(self.r().clone()),
            ),
            ModelId::Maor => {
                let order = linear_extension(self.r())?;
                Explanation::new(
                    m,
                    psi_min_star_with(c, self.switches()),
                    Preference::Linear(order),
                )
            }
            ModelId::Sl | ModelId::Rlc => shortlist_search(c, m)?,
            ModelId::CapacitySl(k) => {
                let (found, note) = capacity_search(c, k)?;
                found.ok_or(Error::SearchExhausted(note))?
            }
        };
        let check = verify_explanation(c, &e);
        if check.holds {
            return Ok(e);
        }
        let why = check.counterexample.map(|ce| ce.reason).unwrap_or_default();
        fallback(c, m, &why)
    }
}

/// Exhaustive filter search when the direct construction does not verify.
fn fallback(c: &ChoiceFunction, m: ModelId, why: &str) -> Result<Explanation> {
    if c.n() > crate::oracle::EXHAUSTIVE_MAX_N {
        return Err(Error::SearchExhausted(format!(
            "{m}: constructed explanation rejected ({why}); exhaustive filter search needs n <= {}",
            crate::oracle::EXHAUSTIVE_MAX_N
        )));
    }
    match crate::oracle::exhaustive_explanation_search(c, m)? {
        Some(e) => Ok(e),
        None => Err(Error::SearchExhausted(format!(
            "{m}: constructed explanation rejected ({why}) and no explanation exists among all filters and orders"
        ))),
    }
}

pub fn decide(c: &ChoiceFunction, m: ModelId) -> Result<AxiomVerdict> {
    Analysis::new(c).decide(m)
}

pub fn elicit(c: &ChoiceFunction, m: ModelId) -> Result<Explanation> {
    Analysis::new(c).elicit(m)
}

fn relation_failure(name: &str, witness_items: Vec<usize>, text: String) -> AxiomVerdict {
    AxiomVerdict::fail(Counterexample::new(
        format!("{name} is not asymmetric and acyclic: {text}"),
        vec![],
        witness_items,
    ))
}

fn extendable_verdict(name: &str, rel: &BinaryRelation, c: &ChoiceFunction) -> AxiomVerdict {
    match rel.extension_obstacle() {
        None => AxiomVerdict::pass(),
        Some(w) => relation_failure(name, w.items(), w.describe(c.ground())),
    }
}

fn asymmetric_verdict(name: &str, rel: &BinaryRelation, c: &ChoiceFunction) -> AxiomVerdict {
    match rel.symmetric_pair() {
        None => AxiomVerdict::pass(),
        Some((a, b)) => {
            let g = c.ground();
            AxiomVerdict::fail(Counterexample::new(
                format!(
                    "{name} is not asymmetric: {} {name} {} and {} {name} {}",
                    g.label(a),
                    g.label(b),
                    g.label(b),
                    g.label(a)
                ),
                vec![],
                vec![a, b],
            ))
        }
    }
}

/// Selective-filter route: extend the direct observations and test the
/// global-minimum filter.
fn decide_cssla(c: &ChoiceFunction) -> AxiomVerdict {
    let direct = relation_direct(c);
    match linear_extension(&direct) {
        Err(_) => extendable_verdict("the observed choice relation", &direct, c),
        Ok(order) => {
            let filter = selective_filter(Arc::clone(c.ground()), &order);
            verify_selective_filter(&filter, c, &order)
        }
    }
}

/// `▷` forced by a first-stage filter: `c(A)` beats the rest of `Γ(A)`.
/// `None` when some `c(A) ∉ Γ(A)` or the forced pairs cycle.
fn second_stage(c: &ChoiceFunction, filter: &ChoiceCorrespondence) -> Option<LinearOrder> {
    let g = c.ground();
    let mut forced = BinaryRelation::empty(Arc::clone(g));
    for a in g.menus() {
        let img = filter.image(a);
        let ca = c.choice(a);
        if !img.contains(ca) {
            return None;
        }
        for y in img.without(ca).items() {
            forced.insert(ca, y);
        }
    }
    linear_extension(&forced).ok()
}

fn partial_order_rows(n: usize) -> &'static [Vec<Menu>] {
    static CACHE: OnceLock<Vec<Vec<Vec<Menu>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        (0..=SEARCH_MAX_N)
            .map(|k| {
                if k == 0 {
                    return vec![Vec::new()];
                }
                let g = GroundSet::standard(k).expect("small ground set");
                strict_partial_orders(&g)
                    .into_iter()
                    .map(|rel| (0..k).map(|i| rel.successors(i)).collect())
                    .collect()
            })
            .collect()
    });
    &cache[n]
}

fn check_bound(what: &str, n: usize) -> Result<()> {
    if n > SEARCH_MAX_N {
        return Err(Error::UnsupportedSearchBound {
            model: what.to_string(),
            n,
            max: SEARCH_MAX_N,
        });
    }
    Ok(())
}

/// Shortlisting search over every strict partial order, ascending by pair
/// encoding.
fn shortlist_search(c: &ChoiceFunction, m: ModelId) -> Result<Explanation> {
    let n = c.n();
    if n > SEARCH_MAX_N {
        return Err(Error::SearchExhausted(format!(
            "{m}: partial-order search is bounded to n <= {SEARCH_MAX_N}, got n = {n}"
        )));
    }
    let g = c.ground();
    for rows in partial_order_rows(n) {
        let p = BinaryRelation::from_rows(Arc::clone(g), rows.clone());
        let filter = max_correspondence(&p)?;
        if let Some(order) = second_stage(c, &filter) {
            let mut e = Explanation::new(m, filter, Preference::Linear(order));
            e.shortlist = Some(p);
            return Ok(e);
        }
    }
    Err(Error::SearchExhausted(format!(
        "{m}: no strict partial order yields a shortlist"
    )))
}

/// Capacity-`k` search: all asymmetric `p` for `n ≤ 3`, transitive `p` at
/// `n = 4`. Returns the first explanation and a note stating the bound.
fn capacity_search(c: &ChoiceFunction, k: usize) -> Result<(Option<Explanation>, String)> {
    let n = c.n();
    check_bound(&ModelId::CapacitySl(k).name(), n)?;
    let g = c.ground();
    let model = ModelId::CapacitySl(k);
    let try_p = |p: BinaryRelation| -> Option<Explanation> {
        let filter = capacity_filter(&p, k).ok()?;
        let order = second_stage(c, &filter)?;
        let mut e = Explanation::new(model, filter, Preference::Linear(order));
        e.shortlist = Some(p);
        Some(e)
    };
    if n <= 3 {
        let found = crate::relations::asymmetric_relations(g).find_map(try_p);
        let note = format!("searched all asymmetric relations on {n} items");
        Ok((found, note))
    } else {
        let rows = partial_order_rows(n);
        let found = rows
            .iter()
            .find_map(|r| try_p(BinaryRelation::from_rows(Arc::clone(g), r.clone())));
        let note = format!(
            "searched the {} strict partial orders on {n} items (transitive first stage only)",
            rows.len()
        );
        Ok((found, note))
    }
}

fn mismatch(reason: impl Into<String>) -> AxiomVerdict {
    AxiomVerdict::fail(Counterexample::new(reason, vec![], vec![]))
}

fn then(first: AxiomVerdict, second: impl FnOnce() -> AxiomVerdict) -> AxiomVerdict {
    if first.holds {
        second()
    } else {
        first
    }
}

/// Re-checks an explanation: the max condition plus the model's filter
/// property.
pub fn verify_explanation(c: &ChoiceFunction, e: &Explanation) -> AxiomVerdict {
    let g = c.ground();
    if e.filter.ground() != g {
        return mismatch("the explanation is over a different ground set");
    }
    let linear = e.preference.as_linear();
    let need_linear = || mismatch(format!("{} needs a linear preference", e.model));
    match e.model.family() {
        Family::Selective => match linear {
            Some(o) => verify_selective_filter(&e.filter, c, o),
            None => need_linear(),
        },
        Family::Attention => match linear {
            Some(o) => then(verify_attention_filter(&e.filter, c, o), || {
                if e.model == ModelId::Cmla && e.filter != gamma_min_with(c, &SwitchIndex::new(c)) {
                    mismatch("the filter is not S_A ∪ c(A)")
                } else {
                    AxiomVerdict::pass()
                }
            }),
            None => need_linear(),
        },
        Family::Competitive => match linear {
            Some(o) if e.model == ModelId::Lr => {
                then(check_max_condition(&e.filter, c, o), || match &e.list {
                    Some(list) => check_list_rational(c, list),
                    None => mismatch("a list-rational explanation needs a list"),
                })
            }
            Some(o) => verify_competitive_filter(&e.filter, c, o),
            None => need_linear(),
        },
        Family::Salient => match linear {
            Some(o) => verify_salient_filter(&e.filter, c, o),
            None => need_linear(),
        },
        Family::Constraint => {
            let rel = e.preference.to_relation(g);
            let ordered = matches!(e.model, ModelId::Ort | ModelId::Mor | ModelId::Maor);
            if ordered && linear.is_none() {
                return need_linear();
            }
            if !rel.is_asymmetric() {
                return mismatch("the preference is not asymmetric");
            }
            then(check_max_condition_relation(&e.filter, c, &rel), || {
                check_alpha_cc(&e.filter)
            })
        }
        Family::Shortlist => {
            let Some(o) = linear else {
                return need_linear();
            };
            let Some(p) = &e.shortlist else {
                return mismatch("a shortlist explanation needs its first-stage relation");
            };
            if !p.is_asymmetric() {
                return mismatch("the first-stage relation is not asymmetric");
            }
            let expected = match e.model {
                ModelId::CapacitySl(k) => capacity_filter(p, k),
                _ => {
                    if !p.is_transitive() {
                        return mismatch("the first-stage relation is not transitive");
                    }
                    max_correspondence(p)
                }
            };
            match expected {
                Ok(f) if f == e.filter => then(check_max_condition(&e.filter, c, o), || {
                    if matches!(e.model, ModelId::CapacitySl(_)) {
                        AxiomVerdict::pass()
                    } else {
                        let sen = check_alpha_gamma_delta(&e.filter);
                        [sen.alpha, sen.gamma, sen.delta]
                            .into_iter()
                            .find(|v| !v.holds)
                            .unwrap_or_else(AxiomVerdict::pass)
                    }
                }),
                Ok(_) => mismatch("the filter does not match the first-stage relation"),
                Err(err) => mismatch(err.to_string()),
            }
        }
    }
}

fn breach(reason: String, menus: Vec<Menu>, items: Vec<usize>) -> AxiomVerdict {
    AxiomVerdict::fail(Counterexample::new(reason, menus, items))
}

/// Checks the switch-level consequences each model imposes on any of its
/// explanations. Models without such conditions pass vacuously.
pub fn audit_necessary_conditions(c: &ChoiceFunction, e: &Explanation) -> AxiomVerdict {
    let Some(order) = e.preference.as_linear() else {
        return AxiomVerdict::pass();
    };
    let g = c.ground();
    let sw = SwitchIndex::new(c);
    let gamma = &e.filter;
    match e.model {
        ModelId::Sl | ModelId::Rlc => {
            for s in sw.list() {
                let a = s.menu;
                let (ca, cs) = (c.choice(a), c.choice(s.smaller()));
                let img = gamma.image(a);
                if !order.prefers(cs, ca) || img.contains(cs) || img == Menu::singleton(ca) {
                    return breach(
                        format!(
                            "switch ({{{}}}, {{{}}}) needs {} ▷ {}, {} outside Γ({{{}}}) and Γ larger than the choice",
                            g.format_menu(s.smaller()),
                            g.format_menu(a),
                            g.label(cs),
                            g.label(ca),
                            g.label(cs),
                            g.format_menu(a)
                        ),
                        vec![s.smaller(), a],
                        vec![s.removed],
                    );
                }
            }
            AxiomVerdict::pass()
        }
        ModelId::Csla | ModelId::Gtr | ModelId::Cer => {
            for s in sw.list() {
                let (a, x) = (s.menu, s.removed);
                let img = gamma.image(a);
                let dominated = a.without(x).items().all(|y| order.prefers(y, x));
                if !img.contains(x) || order.worst(img) != Some(x) || !dominated {
                    return breach(
                        format!(
                            "switch removal {} must be considered in {{{}}} and ranked below every other item",
                            g.label(x),
                            g.format_menu(a)
                        ),
                        vec![s.smaller(), a],
                        vec![x],
                    );
                }
            }
            AxiomVerdict::pass()
        }
        ModelId::Ccla | ModelId::Lr => {
            for s in sw.list() {
                let (a, x) = (s.menu, s.removed);
                let y = c.choice(a);
                let img = gamma.image(a);
                if !img.contains(x) || order.worst(img) == Some(x) || !order.prefers(y, x) {
                    return breach(
                        format!(
                            "switch removal {} must be considered in {{{}}}, not be its worst considered item, and rank below {}",
                            g.label(x),
                            g.format_menu(a),
                            g.label(y)
                        ),
                        vec![s.smaller(), a],
                        vec![x, y],
                    );
                }
            }
            let n = c.n();
            for x in 0..n {
                for y in (0..n).filter(|&y| y != x) {
                    let xy = Menu::from_items([x, y]);
                    if c.choice(xy) != y {
                        continue;
                    }
                    let interval = open_interval(x, y, order);
                    let rest = g.full().difference(xy);
                    for extra in rest.submenus().filter(|m| !m.is_empty()) {
                        let big = extra.union(xy);
                        if c.choice(big) != x || !extra.is_subset(interval) {
                            continue;
                        }
                        let ok = gamma.image(xy).contains(x)
                            && order.prefers(y, x)
                            && !gamma.image(big).contains(y);
                        if !ok {
                            return breach(
                                format!(
                                    "{} beats {} in the pair but {} is chosen from {{{}}}, which lies inside their interval",
                                    g.label(y),
                                    g.label(x),
                                    g.label(x),
                                    g.format_menu(big)
                                ),
                                vec![xy, big],
                                vec![x, y],
                            );
                        }
                    }
                }
            }
            AxiomVerdict::pass()
        }
        _ => AxiomVerdict::pass(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelReport {
    pub model: ModelId,
    pub verdict: AxiomVerdict,
    pub explanation: Option<Explanation>,
    /// Why no explanation is attached to a positive verdict.
    pub elicitation_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub rows: Vec<ModelReport>,
    /// Model containments that fail on this dataset; empty when consistent.
    pub containment_violations: Vec<String>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn get(&self, m: ModelId) -> Option<&ModelReport> {
        self.rows.iter().find(|r| r.model == m)
    }

    pub fn holds(&self, m: ModelId) -> Option<bool> {
        self.get(m).map(|r| r.verdict.holds)
    }
}

/// Runs the selected deciders, eliciting an explanation for each positive.
pub fn classify_models(c: &ChoiceFunction, models: &[ModelId]) -> Result<ClassificationReport> {
    let analysis = Analysis::new(c);
    let mut rows = Vec::with_capacity(models.len());
    for &m in models {
        let verdict = analysis.decide(m)?;
        let (explanation, elicitation_error) = if verdict.holds {
            match analysis.elicit(m) {
                Ok(e) => (Some(e), None),
                Err(err) => (None, Some(err.to_string())),
            }
        } else {
            (None, None)
        };
        rows.push(ModelReport {
            model: m,
            verdict,
            explanation,
            elicitation_error,
        });
    }
    let mut report = ClassificationReport {
        rows,
        containment_violations: Vec::new(),
        notes: Vec::new(),
    };
    report.containment_violations = containment_violations(&report);
    report.notes = relation_notes(&analysis);
    Ok(report)
}

/// Every model, with capacity models where the search bound allows.
pub fn classify_all(c: &ChoiceFunction) -> ClassificationReport {
    classify_models(c, &ModelId::standard_list(c.n()))
        .expect("standard models stay within their search bounds")
}

/// Implications that must hold between verdicts.
pub const CONTAINMENTS: [(ModelId, ModelId); 4] = [
    (ModelId::Lr, ModelId::Cla),
    (ModelId::Cmla, ModelId::Cla),
    (ModelId::Maor, ModelId::Mabr),
    (ModelId::Mor, ModelId::Mbr),
];

fn containment_violations(report: &ClassificationReport) -> Vec<String> {
    let mut out = Vec::new();
    if report.holds(ModelId::Alpha) == Some(true) {
        for r in report.rows.iter().filter(|r| !r.verdict.holds) {
            out.push(format!("ALPHA holds but {} fails", r.model));
        }
    }
    for (a, b) in CONTAINMENTS {
        if report.holds(a) == Some(true) && report.holds(b) == Some(false) {
            out.push(format!("{a} holds but {b} fails"));
        }
    }
    out
}

fn relation_notes(analysis: &Analysis<'_>) -> Vec<String> {
    let rels: [(&str, &OnceCell<BinaryRelation>); 5] = [
        ("P", &analysis.p),
        ("F", &analysis.f),
        ("related-to", &analysis.related),
        ("Rev", &analysis.rev),
        ("R", &analysis.r),
    ];
    rels.iter()
        .filter_map(|(name, cell)| {
            let rel = cell.get()?;
            let props = rel.properties();
            (props.asymmetric && props.acyclic_ge3 && !props.extendable)
                .then(|| format!("{name} has no cycle of length >= 3 but is not acyclic"))
        })
        .collect()
}

/// Whether `max(Γ(A), ≻)` is a singleton for every menu.
pub fn filter_explains(
    filter: &ChoiceCorrespondence,
    c: &ChoiceFunction,
    rel: &BinaryRelation,
) -> bool {
    c.ground()
        .menus()
        .all(|a| maximal_elements(filter.image(a), rel) == Menu::singleton(c.choice(a)))
}
