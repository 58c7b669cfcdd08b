//! Binary relations over a ground set, linear orders, and the order-theoretic
//! helpers the deciders need (maxima, contours, intervals, extensions).

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::domain::{ChoiceCorrespondence, GroundSet, Menu};
use crate::error::{Error, Result};

/// A binary relation stored as one successor bit-set per item:
/// `rows[i]` contains `j` iff `i ≻ j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    ground: Arc<GroundSet>,
    rows: Vec<Menu>,
}

/// Why a relation has no linear extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RelationWitness {
    /// `a ≻ b` and `b ≻ a` (or `a ≻ a` when both entries coincide).
    SymmetricPair(usize, usize),
    /// `c[0] ≻ c[1] ≻ … ≻ c[k-1] ≻ c[0]` with pairwise distinct entries.
    Cycle(Vec<usize>),
}

impl RelationWitness {
    pub fn items(&self) -> Vec<usize> {
        match self {
            RelationWitness::SymmetricPair(a, b) => vec![*a, *b],
            RelationWitness::Cycle(items) => items.clone(),
        }
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        match self {
            RelationWitness::SymmetricPair(a, b) => format!(
                "{a} > {b} and {b} > {a}",
                a = ground.label(*a),
                b = ground.label(*b)
            ),
            RelationWitness::Cycle(items) => {
                let mut labels: Vec<&str> = items.iter().map(|&i| ground.label(i)).collect();
                labels.push(ground.label(items[0]));
                format!("cycle {}", labels.join(" > "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationProperties {
    pub asymmetric: bool,
    pub transitive: bool,
    pub complete: bool,
    pub irreflexive: bool,
    /// No directed cycle through three or more distinct items.
    pub acyclic_ge3: bool,
    /// Asymmetric with no directed cycle of any length: a strict partial
    /// order lies above it, so a linear extension exists.
    pub extendable: bool,
}

impl BinaryRelation {
    pub fn empty(ground: Arc<GroundSet>) -> Self {
        let n = ground.len();
        BinaryRelation {
            ground,
            rows: vec![Menu::EMPTY; n],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        ground: Arc<GroundSet>,
        pairs: I,
    ) -> Self {
        let mut rel = Self::empty(ground);
        for (a, b) in pairs {
            rel.insert(a, b);
        }
        rel
    }

    /// Builds from label pairs; panics on unknown labels (test/fixture helper).
    pub fn from_label_pairs(ground: Arc<GroundSet>, pairs: &[(&str, &str)]) -> Self {
        let idx = |l: &str| {
            ground
                .index_of(l)
                .unwrap_or_else(|| panic!("unknown label {l}"))
        };
        let pairs: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
        Self::from_pairs(ground, pairs)
    }

    pub(crate) fn from_rows(ground: Arc<GroundSet>, rows: Vec<Menu>) -> Self {
        debug_assert_eq!(rows.len(), ground.len());
        BinaryRelation { ground, rows }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a] = self.rows[a].with(b);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    /// Items `b` with `a ≻ b`.
    pub fn successors(&self, a: usize) -> Menu {
        self.rows[a]
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Pairs in lexicographic index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.items().map(move |b| (a, b)))
    }

    pub fn is_subset_of(&self, other: &BinaryRelation) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset(*b))
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut inv = Self::empty(Arc::clone(&self.ground));
        for (a, b) in self.pairs() {
            inv.insert(b, a);
        }
        inv
    }

    /// First pair (in index order) with `a ≻ b` and `b ≻ a`.
    pub fn symmetric_pair(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(a, b)| self.contains(b, a))
    }

    pub fn is_asymmetric(&self) -> bool {
        self.symmetric_pair().is_none()
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n()).all(|i| !self.contains(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(a, b)| self.rows[b].is_subset(self.rows[a]))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        (0..n).all(|a| (a + 1..n).all(|b| self.contains(a, b) || self.contains(b, a)))
    }

    /// Some directed cycle of any length (self-loops and 2-cycles included).
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.n();
        let mut mark = vec![Mark::New; n];
        let mut stack: Vec<usize> = Vec::new();

        fn visit(
            rel: &BinaryRelation,
            v: usize,
            mark: &mut [Mark],
            stack: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            mark[v] = Mark::Active;
            stack.push(v);
            for w in rel.rows[v].items() {
                match mark[w] {
                    Mark::Active => {
                        let start = stack.iter().position(|&s| s == w).expect("on stack");
                        return Some(stack[start..].to_vec());
                    }
                    Mark::New => {
                        if let Some(cycle) = visit(rel, w, mark, stack) {
                            return Some(cycle);
                        }
                    }
                    Mark::Done => {}
                }
            }
            stack.pop();
            mark[v] = Mark::Done;
            None
        }

        (0..n).find_map(|v| {
            if mark[v] == Mark::New {
                visit(self, v, &mut mark, &mut stack)
            } else {
                None
            }
        })
    }

    /// A directed cycle through at least three distinct items.
    ///
    /// Such a cycle exists iff for some edges `u ≻ v ≻ w` with `w ≠ u` the
    /// item `u` is reachable from `w` without passing through `v`.
    pub fn find_cycle_ge3(&self) -> Option<Vec<usize>> {
        let n = self.n();
        for u in 0..n {
            for v in self.rows[u].items().filter(|&v| v != u) {
                for w in self.rows[v].items().filter(|&w| w != u && w != v) {
                    if let Some(path) = self.shortest_path(w, u, Menu::singleton(v)) {
                        // path runs w .. u; rotate so the cycle starts at u
                        let mut cycle = vec![u, v];
                        cycle.extend(&path[..path.len() - 1]);
                        return Some(cycle);
                    }
                }
            }
        }
        None
    }

    fn shortest_path(&self, from: usize, to: usize, blocked: Menu) -> Option<Vec<usize>> {
        let n = self.n();
        let mut parent = vec![usize::MAX; n];
        let mut seen = blocked.with(from);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.rows[v].items() {
                if !seen.contains(w) {
                    seen = seen.with(w);
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Why no linear extension exists, if it does not.
    pub fn extension_obstacle(&self) -> Option<RelationWitness> {
        if let Some((a, b)) = self.symmetric_pair() {
            return Some(RelationWitness::SymmetricPair(a, b));
        }
        self.find_cycle().map(RelationWitness::Cycle)
    }

    pub fn is_extendable(&self) -> bool {
        self.extension_obstacle().is_none()
    }

    pub fn properties(&self) -> RelationProperties {
        let asymmetric = self.is_asymmetric();
        RelationProperties {
            asymmetric,
            transitive: self.is_transitive(),
            complete: self.is_complete(),
            irreflexive: self.is_irreflexive(),
            acyclic_ge3: self.find_cycle_ge3().is_none(),
            extendable: asymmetric && self.find_cycle().is_none(),
        }
    }

    /// `a > b` lines, one per pair.
    pub fn format_pairs(&self) -> Vec<String> {
        self.pairs()
            .map(|(a, b)| format!("{} > {}", self.ground.label(a), self.ground.label(b)))
            .collect()
    }

    pub fn label_pairs(&self) -> Vec<[String; 2]> {
        self.pairs()
            .map(|(a, b)| {
                [
                    self.ground.label(a).to_string(),
                    self.ground.label(b).to_string(),
                ]
            })
            .collect()
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation{{{}}}", self.format_pairs().join(", "))
    }
}

/// A strict total order, stored best-first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    ranking: Vec<usize>,
    position: Vec<usize>,
}

impl LinearOrder {
    /// `ranking` lists every index exactly once, best first.
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let n = ranking.len();
        let mut position = vec![usize::MAX; n];
        for (rank, &item) in ranking.iter().enumerate() {
            if item >= n || position[item] != usize::MAX {
                return Err(Error::InvalidPermutation(n));
            }
            position[item] = rank;
        }
        Ok(LinearOrder { ranking, position })
    }

    pub fn from_labels(ground: &GroundSet, labels: &[&str]) -> Result<Self> {
        let ranking = labels
            .iter()
            .map(|l| {
                ground
                    .index_of(l)
                    .ok_or(Error::InvalidPermutation(ground.len()))
            })
            .collect::<Result<Vec<_>>>()?;
        if ranking.len() != ground.len() {
            return Err(Error::InvalidPermutation(ground.len()));
        }
        Self::new(ranking)
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect()).expect("identity is a permutation")
    }

    /// All `n!` orders, rankings in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = LinearOrder> {
        crate::domain::permutations(n).map(|p| LinearOrder::new(p).expect("permutation"))
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// 0 is best.
    pub fn rank(&self, item: usize) -> usize {
        self.position[item]
    }

    /// `a ▷ b`.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }

    pub fn best(&self, menu: Menu) -> Option<usize> {
        menu.items().min_by_key(|&i| self.position[i])
    }

    pub fn worst(&self, menu: Menu) -> Option<usize> {
        menu.items().max_by_key(|&i| self.position[i])
    }

    pub fn to_relation(&self, ground: Arc<GroundSet>) -> BinaryRelation {
        let mut rel = BinaryRelation::empty(ground);
        for (i, &a) in self.ranking.iter().enumerate() {
            for &b in &self.ranking[i + 1..] {
                rel.insert(a, b);
            }
        }
        rel
    }

    /// Every pair of `rel` agrees with this order.
    pub fn contains_relation(&self, rel: &BinaryRelation) -> bool {
        rel.pairs().all(|(a, b)| self.prefers(a, b))
    }

    pub fn labels(&self, ground: &GroundSet) -> Vec<String> {
        self.ranking
            .iter()
            .map(|&i| ground.label(i).to_string())
            .collect()
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOrder{:?}", self.ranking)
    }
}

/// `{ a ∈ A : no b ∈ A with b ≻ a }`; empty when the relation cycles inside `A`.
pub fn maximal_elements(menu: Menu, rel: &BinaryRelation) -> Menu {
    let dominated = menu
        .items()
        .fold(Menu::EMPTY, |acc, b| acc.union(rel.successors(b)));
    menu.difference(dominated)
}

/// Linear extension by stable topological sort: among the currently
/// undominated items, the lowest index goes next.
pub fn linear_extension(rel: &BinaryRelation) -> Result<LinearOrder> {
    if let Some(obstacle) = rel.extension_obstacle() {
        return Err(Error::NotExtendable(obstacle.describe(rel.ground())));
    }
    let n = rel.n();
    let mut remaining = Menu::full(n);
    let mut ranking = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let next = maximal_elements(remaining, rel)
            .first()
            .expect("acyclic relations always have a maximal element");
        ranking.push(next);
        remaining = remaining.without(next);
    }
    LinearOrder::new(ranking)
}

/// Like [`linear_extension`], but returns the structured obstacle.
pub fn try_linear_extension(
    rel: &BinaryRelation,
) -> std::result::Result<LinearOrder, RelationWitness> {
    match rel.extension_obstacle() {
        Some(obstacle) => Err(obstacle),
        None => Ok(linear_extension(rel).expect("extendable")),
    }
}

/// `x↓ = {x} ∪ { y : x ▷ y }`.
pub fn lower_contour(item: usize, order: &LinearOrder) -> Menu {
    Menu::from_items(order.ranking()[order.rank(item)..].iter().copied())
}

/// Items strictly between `x` and `y` in the order, whichever of the two is
/// ranked higher.
pub fn open_interval(x: usize, y: usize, order: &LinearOrder) -> Menu {
    let (lo, hi) = {
        let (a, b) = (order.rank(x), order.rank(y));
        (a.min(b), a.max(b))
    };
    if hi <= lo + 1 {
        return Menu::EMPTY;
    }
    Menu::from_items(order.ranking()[lo + 1..hi].iter().copied())
}

/// `Γ(A) = max(A, p)` for every menu.
pub fn max_correspondence(rel: &BinaryRelation) -> Result<ChoiceCorrespondence> {
    let ground = Arc::clone(rel.ground());
    if let Some(empty) = ground
        .menus()
        .find(|&m| maximal_elements(m, rel).is_empty())
    {
        return Err(Error::EmptyMaxima(ground.format_menu(empty)));
    }
    Ok(ChoiceCorrespondence::from_fn_unchecked(ground, |m| {
        maximal_elements(m, rel)
    }))
}

/// All strict partial orders (irreflexive, transitive) on the ground set, in
/// ascending order of their pair encoding.
pub fn strict_partial_orders(ground: &Arc<GroundSet>) -> Vec<BinaryRelation> {
    let n = ground.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    assert!(pairs.len() < 31, "partial-order enumeration needs n <= 5");
    let mut out = Vec::new();
    for code in 0u32..(1 << pairs.len()) {
        let mut rows = vec![Menu::EMPTY; n];
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if code >> bit & 1 == 1 {
                rows[a] = rows[a].with(b);
            }
        }
        let rel = BinaryRelation::from_rows(Arc::clone(ground), rows);
        if rel.is_asymmetric() && rel.is_transitive() {
            out.push(rel);
        }
    }
    out
}

/// All asymmetric irreflexive relations: each unordered pair is absent,
/// oriented one way, or the other (3^(n(n-1)/2) relations).
pub fn asymmetric_relations(ground: &Arc<GroundSet>) -> impl Iterator<Item = BinaryRelation> + '_ {
    let n = ground.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let total = 3u64.pow(pairs.len() as u32);
    (0..total).map(move |mut code| {
        let mut rows = vec![Menu::EMPTY; n];
        for &(a, b) in &pairs {
            match code % 3 {
                1 => rows[a] = rows[a].with(b),
                2 => rows[b] = rows[b].with(a),
                _ => {}
            }
            code /= 3;
        }
        BinaryRelation::from_rows(Arc::clone(ground), rows)
    })
}
