//! Ground sets, menus, choice functions and choice correspondences.
//!
//! Menus are bit-sets over ground-set indices, and a menu's bit pattern is
//! also its slot in every per-menu table. With at most 16 alternatives a full
//! choice table fits in a flat `Vec` of 2^n entries (slot 0, the empty set,
//! is unused).

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 16;

/// Labels used when a ground set is synthesized (enumeration, sampling).
const DEFAULT_LABELS: [&str; MAX_GROUND] = [
    "x", "y", "z", "w", "v", "u", "t", "s", "r", "q", "p", "o", "n", "m", "l", "k",
];

/// A finite, labelled universe of alternatives. The position of a label in
/// the input fixes its index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidGround("ground set is empty".into()));
        }
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidGround(format!("bad label {label:?}")));
            }
            if label == "->" || label.contains('#') {
                return Err(Error::InvalidGround(format!("reserved label {label:?}")));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidGround(format!("duplicate label {label:?}")));
            }
        }
        Ok(Arc::new(GroundSet { labels }))
    }

    /// `x y z w ...` truncated to `n` labels.
    pub fn standard(n: usize) -> Result<Arc<Self>> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        Self::new(DEFAULT_LABELS[..n].iter().copied())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, item: usize) -> &str {
        &self.labels[item]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Menu {
        Menu::full(self.len())
    }

    /// Number of table slots (2^n), including the unused empty slot.
    pub fn table_len(&self) -> usize {
        1 << self.len()
    }

    /// All nonempty menus in ascending bit-pattern order.
    pub fn menus(&self) -> impl Iterator<Item = Menu> + '_ {
        (1..self.table_len() as u32).map(Menu)
    }

    /// Menu rendered as space-separated labels in index order.
    pub fn format_menu(&self, menu: Menu) -> String {
        menu.items()
            .map(|i| self.label(i))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn menu_labels(&self, menu: Menu) -> Vec<String> {
        menu.items().map(|i| self.label(i).to_string()).collect()
    }

    pub fn parse_menu(&self, text: &str) -> Option<Menu> {
        let mut menu = Menu::EMPTY;
        for token in text.split_whitespace() {
            let item = self.index_of(token)?;
            if menu.contains(item) {
                return None;
            }
            menu = menu.with(item);
        }
        (!menu.is_empty()).then_some(menu)
    }
}

/// A set of ground-set indices, stored as a bit pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Menu(u32);

impl Menu {
    pub const EMPTY: Menu = Menu(0);

    pub const fn from_bits(bits: u32) -> Self {
        Menu(bits)
    }

    pub fn full(n: usize) -> Self {
        Menu(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(item: usize) -> Self {
        Menu(1 << item)
    }

    pub fn from_items<I: IntoIterator<Item = usize>>(items: I) -> Self {
        items.into_iter().fold(Menu::EMPTY, Menu::with)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, item: usize) -> bool {
        self.0 >> item & 1 == 1
    }

    #[must_use]
    pub fn with(self, item: usize) -> Self {
        Menu(self.0 | 1 << item)
    }

    #[must_use]
    pub fn without(self, item: usize) -> Self {
        Menu(self.0 & !(1 << item))
    }

    pub fn union(self, other: Menu) -> Self {
        Menu(self.0 | other.0)
    }

    pub fn intersection(self, other: Menu) -> Self {
        Menu(self.0 & other.0)
    }

    pub fn difference(self, other: Menu) -> Self {
        Menu(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Menu) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest index in the menu.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Items in ascending index order.
    pub fn items(self) -> Items {
        Items(self.0)
    }

    /// Nonempty submenus (including `self`) in ascending bit-pattern order.
    pub fn submenus(self) -> impl Iterator<Item = Menu> {
        let full = self.0;
        let mut sub = 0u32;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            // next submask of `full` in increasing order
            sub = (sub.wrapping_sub(full)) & full;
            if sub == full {
                done = true;
            }
            Some(Menu(sub))
        })
    }

    /// Menus `B` with `self ⊆ B ⊆ universe`, in ascending bit-pattern order.
    pub fn supermenus(self, universe: Menu) -> impl Iterator<Item = Menu> {
        let base = self.0;
        let free = universe.0 & !base;
        let mut extra = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Menu(base | extra);
            if extra == free {
                done = true;
            } else {
                extra = (extra.wrapping_sub(free)) & free;
            }
            Some(out)
        })
    }
}

impl fmt::Debug for Menu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Menu{:?}", self.items().collect::<Vec<_>>())
    }
}

/// Iterator over the indices of a [`Menu`].
#[derive(Debug, Clone)]
pub struct Items(u32);

impl Iterator for Items {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Items {}

/// A total choice function: every nonempty menu maps to one of its members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChoiceFunction {
    ground: Arc<GroundSet>,
    table: Vec<u8>,
}

impl ChoiceFunction {
    /// Builds a choice function from a per-menu rule, validating `f(A) ∈ A`.
    pub fn from_fn(ground: Arc<GroundSet>, mut f: impl FnMut(Menu) -> usize) -> Result<Self> {
        let mut table = vec![0u8; ground.table_len()];
        for menu in ground.menus() {
            let chosen = f(menu);
            if chosen >= ground.len() || !menu.contains(chosen) {
                return Err(Error::InvalidChoice(format!(
                    "choice for {{{}}} lies outside the menu",
                    ground.format_menu(menu)
                )));
            }
            table[menu.index()] = chosen as u8;
        }
        Ok(ChoiceFunction { ground, table })
    }

    pub fn from_table(ground: Arc<GroundSet>, table: Vec<u8>) -> Result<Self> {
        if table.len() != ground.table_len() {
            return Err(Error::InvalidChoice(
                "table length does not match ground set".into(),
            ));
        }
        let t = table;
        Self::from_fn(ground, |m| t[m.index()] as usize)
    }

    /// Unchecked constructor for enumeration hot loops; `table` must be valid.
    pub(crate) fn from_table_unchecked(ground: Arc<GroundSet>, table: Vec<u8>) -> Self {
        debug_assert!(ground
            .menus()
            .all(|m| m.contains(table[m.index()] as usize)));
        ChoiceFunction { ground, table }
    }

    /// The rationalizable choice function induced by a linear order.
    pub fn rational(ground: Arc<GroundSet>, order: &crate::relations::LinearOrder) -> Result<Self> {
        if order.len() != ground.len() {
            return Err(Error::GroundMismatch);
        }
        Self::from_fn(ground, |m| order.best(m).expect("menus are nonempty"))
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn choice(&self, menu: Menu) -> usize {
        debug_assert!(!menu.is_empty());
        self.table[menu.index()] as usize
    }

    /// `c(A)` when `A` is nonempty; used where a removal may empty a menu.
    pub fn choice_of(&self, menu: Menu) -> Option<usize> {
        (!menu.is_empty()).then(|| self.choice(menu))
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn label_of(&self, item: usize) -> &str {
        self.ground.label(item)
    }

    /// Relabels the alternatives: the result `c'` satisfies
    /// `c'(σ(A)) = σ(c(A))` for every menu `A`.
    pub fn apply_isomorphism(&self, sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma, self.n())?;
        Ok(self.relabel(sigma))
    }

    fn relabel(&self, sigma: &[usize]) -> Self {
        let mut table = vec![0u8; self.table.len()];
        for menu in self.ground.menus() {
            let image = map_menu(menu, sigma);
            table[image.index()] = sigma[self.choice(menu)] as u8;
        }
        ChoiceFunction {
            ground: Arc::clone(&self.ground),
            table,
        }
    }

    /// Lexicographically smallest choice table among all `n!` relabelings.
    pub fn canonical_form(&self) -> Self {
        let mut best: Option<Vec<u8>> = None;
        for sigma in permutations(self.n()) {
            let candidate = self.relabel(&sigma).table;
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
        ChoiceFunction {
            ground: Arc::clone(&self.ground),
            table: best.expect("at least the identity permutation"),
        }
    }

    /// Serializes to the `.cf` dataset format.
    pub fn to_cf_string(&self) -> String {
        let mut out = format!("ground: {}\n", self.ground.labels().join(" "));
        for menu in self.ground.menus().filter(|m| m.len() >= 2) {
            out.push_str(&format!(
                "{} -> {}\n",
                self.ground.format_menu(menu),
                self.label_of(self.choice(menu))
            ));
        }
        out
    }
}

impl fmt::Debug for ChoiceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .ground
            .menus()
            .filter(|m| m.len() >= 2)
            .map(|m| {
                format!(
                    "{}->{}",
                    self.ground.format_menu(m),
                    self.label_of(self.choice(m))
                )
            })
            .collect();
        write!(f, "ChoiceFunction[{}]", entries.join(", "))
    }
}

/// A map from each menu to a nonempty submenu.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChoiceCorrespondence {
    ground: Arc<GroundSet>,
    image: Vec<Menu>,
}

impl ChoiceCorrespondence {
    pub fn from_fn(ground: Arc<GroundSet>, mut f: impl FnMut(Menu) -> Menu) -> Result<Self> {
        let mut image = vec![Menu::EMPTY; ground.table_len()];
        for menu in ground.menus() {
            let value = f(menu);
            if value.is_empty() || !value.is_subset(menu) {
                return Err(Error::InvalidCorrespondence(format!(
                    "image of {{{}}} must be a nonempty submenu",
                    ground.format_menu(menu)
                )));
            }
            image[menu.index()] = value;
        }
        Ok(ChoiceCorrespondence { ground, image })
    }

    pub(crate) fn from_fn_unchecked(
        ground: Arc<GroundSet>,
        mut f: impl FnMut(Menu) -> Menu,
    ) -> Self {
        let mut image = vec![Menu::EMPTY; ground.table_len()];
        for menu in ground.menus() {
            image[menu.index()] = f(menu);
        }
        debug_assert!(ground
            .menus()
            .all(|m| !image[m.index()].is_empty() && image[m.index()].is_subset(m)));
        ChoiceCorrespondence { ground, image }
    }

    /// `Γ(A) = A` for every menu.
    pub fn identity(ground: Arc<GroundSet>) -> Self {
        Self::from_fn_unchecked(ground, |m| m)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn image(&self, menu: Menu) -> Menu {
        self.image[menu.index()]
    }

    /// Pointwise inclusion `self(A) ⊆ other(A)`; returns the first menu where
    /// it fails.
    pub fn first_non_inclusion(&self, other: &ChoiceCorrespondence) -> Option<Menu> {
        self.ground
            .menus()
            .find(|&m| !self.image(m).is_subset(other.image(m)))
    }

    pub fn is_pointwise_subset(&self, other: &ChoiceCorrespondence) -> bool {
        self.first_non_inclusion(other).is_none()
    }
}

impl fmt::Debug for ChoiceCorrespondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .ground
            .menus()
            .map(|m| {
                format!(
                    "{}=>{}",
                    self.ground.format_menu(m),
                    self.ground.format_menu(self.image(m))
                )
            })
            .collect();
        write!(f, "Correspondence[{}]", entries.join(", "))
    }
}

/// A minimal switch `(A∖x, A)`: removing `x ≠ c(A)` from `A` changes the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Switch {
    pub menu: Menu,
    pub removed: usize,
}

impl Switch {
    pub fn smaller(&self) -> Menu {
        self.menu.without(self.removed)
    }
}

pub(crate) fn map_menu(menu: Menu, sigma: &[usize]) -> Menu {
    Menu::from_items(menu.items().map(|i| sigma[i]))
}

fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::InvalidPermutation(n));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidPermutation(n));
        }
    }
    Ok(())
}

/// Inverse of a permutation given in one-line notation.
pub fn invert_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inverse[s] = i;
    }
    inverse
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            current = Some(next);
        }
        Some(out)
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len())
        .rev()
        .find(|&j| p[j] > p[i])
        .expect("pivot exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Arc<GroundSet> {
        GroundSet::standard(3).unwrap()
    }

    #[test]
    fn submenus_enumerate_every_nonempty_subset() {
        let m = Menu::from_bits(0b1011);
        let subs: Vec<u32> = m.submenus().map(Menu::bits).collect();
        assert_eq!(subs, vec![1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(Menu::EMPTY.submenus().count(), 0);
    }

    #[test]
    fn supermenus_stay_inside_universe() {
        let sups: Vec<u32> = Menu::from_bits(0b0010)
            .supermenus(Menu::full(3))
            .map(Menu::bits)
            .collect();
        assert_eq!(sups, vec![0b010, 0b011, 0b110, 0b111]);
        let full = Menu::full(3);
        assert_eq!(full.supermenus(full).count(), 1);
    }

    #[test]
    fn ground_rejects_duplicates_and_oversize() {
        assert!(GroundSet::new(["a", "a"]).is_err());
        assert!(matches!(
            GroundSet::new((0..17).map(|i| format!("a{i}"))),
            Err(Error::GroundTooLarge(17))
        ));
    }

    #[test]
    fn choice_outside_menu_is_rejected() {
        let err = ChoiceFunction::from_fn(xyz(), |m| if m.len() == 3 { 0 } else { 2 });
        assert!(err.is_err());
    }

    #[test]
    fn permutations_are_lexicographic() {
        let all: Vec<Vec<usize>> = permutations(3).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[5], vec![2, 1, 0]);
        assert_eq!(permutations(0).count(), 1);
    }

    #[test]
    fn non_permutations_are_rejected() {
        let c = ChoiceFunction::from_fn(xyz(), |m| m.first().unwrap()).unwrap();
        assert!(c.apply_isomorphism(&[0, 0, 1]).is_err());
        assert!(c.apply_isomorphism(&[0, 1]).is_err());
    }

    #[test]
    fn cf_serialization_lists_non_singleton_menus() {
        let c = ChoiceFunction::from_fn(xyz(), |m| m.first().unwrap()).unwrap();
        let text = c.to_cf_string();
        assert!(text.starts_with("ground: x y z\n"));
        assert_eq!(text.lines().count(), 5);
        assert!(text.contains("x y z -> x"));
    }
}
