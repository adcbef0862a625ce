//! Corner-configuration labeled tables and the compatible-instantiation
//! product. A table assigns one expression to every `{zero, star}`
//! configuration of its scope; entries are ordered by binary counting
//! with star = 1 and the lowest attribute index most significant.

use std::collections::BTreeSet;

use crate::error::{DeunError, Result};

/// An assignment of each scope attribute to its zero or star reference.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CornerConfig {
    scope: Vec<u32>,
    stars: Vec<bool>,
}

impl CornerConfig {
    pub fn new(scope: Vec<u32>, stars: Vec<bool>) -> Self {
        assert_eq!(scope.len(), stars.len());
        debug_assert!(scope.windows(2).all(|w| w[0] < w[1]));
        CornerConfig { scope, stars }
    }

    /// Parses a key like `"0**0"` against an ascending scope.
    pub fn parse(key: &str, scope: &[u32]) -> Result<Self> {
        if key.chars().count() != scope.len() {
            return Err(DeunError::Parse(format!(
                "corner key '{key}' has {} characters, scope has {} attributes",
                key.chars().count(),
                scope.len()
            )));
        }
        let stars = key
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '*' => Ok(true),
                other => Err(DeunError::Parse(format!(
                    "corner key '{key}' contains '{other}', expected '0' or '*'"
                ))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(CornerConfig::new(scope.to_vec(), stars))
    }

    pub fn key(&self) -> String {
        self.stars.iter().map(|&s| if s { '*' } else { '0' }).collect()
    }

    pub fn scope(&self) -> &[u32] {
        &self.scope
    }

    pub fn is_star(&self, attr: u32) -> Option<bool> {
        self.scope
            .iter()
            .position(|&a| a == attr)
            .map(|p| self.stars[p])
    }

    /// Restriction to a subset of the scope (ascending).
    pub fn restrict(&self, sub: &[u32]) -> CornerConfig {
        let stars = sub
            .iter()
            .map(|a| self.is_star(*a).expect("restriction scope must be contained"))
            .collect();
        CornerConfig::new(sub.to_vec(), stars)
    }

    /// All configurations over `scope` in canonical order.
    pub fn enumerate(scope: &[u32]) -> Vec<CornerConfig> {
        (0..1usize << scope.len())
            .map(|idx| CornerConfig::new(scope.to_vec(), index_to_stars(idx, scope.len())))
            .collect()
    }

    pub fn all_star(scope: &[u32]) -> CornerConfig {
        CornerConfig::new(scope.to_vec(), vec![true; scope.len()])
    }

    pub fn all_zero(scope: &[u32]) -> CornerConfig {
        CornerConfig::new(scope.to_vec(), vec![false; scope.len()])
    }

    pub fn stars(&self) -> &[bool] {
        &self.stars
    }

    fn index(&self) -> usize {
        stars_to_index(&self.stars)
    }
}

fn index_to_stars(idx: usize, len: usize) -> Vec<bool> {
    (0..len).map(|k| (idx >> (len - 1 - k)) & 1 == 1).collect()
}

fn stars_to_index(stars: &[bool]) -> usize {
    stars
        .iter()
        .fold(0usize, |acc, &s| (acc << 1) | usize::from(s))
}

/// Entry algebra needed by the table operations.
pub trait TableEntry: Clone {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `Some(value)` when no continuous variables remain pending.
    fn constant_value(&self) -> Option<f64>;
    fn pending(&self) -> Vec<u32>;
}

impl TableEntry for crate::expr::ExpLinExpr {
    fn one() -> Self {
        crate::expr::ExpLinExpr::one()
    }
    fn mul(&self, other: &Self) -> Self {
        crate::expr::expr_mul(self, other)
    }
    fn constant_value(&self) -> Option<f64> {
        self.constant_value()
    }
    fn pending(&self) -> Vec<u32> {
        self.pending_vars().into_iter().collect()
    }
}

impl TableEntry for f64 {
    fn one() -> Self {
        1.0
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn constant_value(&self) -> Option<f64> {
        Some(*self)
    }
    fn pending(&self) -> Vec<u32> {
        Vec::new()
    }
}

/// A complete map from corner configurations on `scope` to entries.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledTable<E> {
    scope: Vec<u32>,
    entries: Vec<E>,
}

impl<E: TableEntry> LabeledTable<E> {
    pub fn new(scope: Vec<u32>, entries: Vec<E>) -> Self {
        assert_eq!(entries.len(), 1 << scope.len());
        debug_assert!(scope.windows(2).all(|w| w[0] < w[1]));
        LabeledTable { scope, entries }
    }

    /// The all-ones table on the empty scope: identity for the product.
    pub fn unit() -> Self {
        LabeledTable {
            scope: Vec::new(),
            entries: vec![E::one()],
        }
    }

    pub fn from_fn(scope: Vec<u32>, mut f: impl FnMut(&CornerConfig) -> E) -> Self {
        let entries = CornerConfig::enumerate(&scope).iter().map(&mut f).collect();
        LabeledTable::new(scope, entries)
    }

    pub fn scope(&self) -> &[u32] {
        &self.scope
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn get(&self, config: &CornerConfig) -> &E {
        debug_assert_eq!(config.scope(), &self.scope[..]);
        &self.entries[config.index()]
    }

    pub fn configs(&self) -> Vec<CornerConfig> {
        CornerConfig::enumerate(&self.scope)
    }

    pub fn map<F, T: TableEntry>(&self, f: F) -> LabeledTable<T>
    where
        F: Fn(&E) -> T,
    {
        LabeledTable {
            scope: self.scope.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<F, T: TableEntry>(&self, f: F) -> Result<LabeledTable<T>>
    where
        F: Fn(&E) -> Result<T>,
    {
        Ok(LabeledTable {
            scope: self.scope.clone(),
            entries: self.entries.iter().map(f).collect::<Result<Vec<T>>>()?,
        })
    }
}

/// The compatible-instantiation product: the result scope is the union
/// of the input scopes and each entry multiplies the unique pair of
/// input entries agreeing with it on the shared attributes.
pub fn table_circ<E: TableEntry>(a: &LabeledTable<E>, b: &LabeledTable<E>) -> LabeledTable<E> {
    let scope: Vec<u32> = a
        .scope
        .iter()
        .chain(b.scope.iter())
        .copied()
        .collect::<BTreeSet<u32>>()
        .into_iter()
        .collect();
    LabeledTable::from_fn(scope, |config| {
        let ea = a.get(&config.restrict(&a.scope));
        let eb = b.get(&config.restrict(&b.scope));
        ea.mul(eb)
    })
}

/// Sums the entries of a fully-marginalized table.
pub fn table_reduce_sum<E: TableEntry>(a: &LabeledTable<E>) -> Result<f64> {
    let mut total = 0.0;
    for e in &a.entries {
        match e.constant_value() {
            Some(v) => total += v,
            None => return Err(DeunError::NotConstant(e.pending())),
        }
    }
    Ok(total)
}
