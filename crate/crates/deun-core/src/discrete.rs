//! Dense functions over finite-support attributes, the discrete
//! counterpart of the exponential-linear expression class. Values are
//! stored row-major over ascending attribute indices.

use std::collections::{BTreeMap, BTreeSet};

use crate::table::TableEntry;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteExpr {
    vars: Vec<u32>,
    dims: Vec<usize>,
    values: Vec<f64>,
}

impl DiscreteExpr {
    pub fn new(vars: Vec<u32>, dims: Vec<usize>, values: Vec<f64>) -> Self {
        assert_eq!(vars.len(), dims.len());
        assert_eq!(values.len(), dims.iter().product::<usize>().max(1));
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        DiscreteExpr { vars, dims, values }
    }

    pub fn constant(c: f64) -> Self {
        DiscreteExpr {
            vars: Vec::new(),
            dims: Vec::new(),
            values: vec![c],
        }
    }

    /// A univariate function of `var` given by its per-support values.
    pub fn univariate(var: u32, values: Vec<f64>) -> Self {
        DiscreteExpr {
            vars: vec![var],
            dims: vec![values.len()],
            values,
        }
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    pub fn evaluate(&self, assignment: &BTreeMap<u32, usize>) -> f64 {
        let idx = self.index_of(|v| assignment[&v]);
        self.values[idx]
    }

    fn index_of(&self, mut pos: impl FnMut(u32) -> usize) -> usize {
        let mut idx = 0usize;
        for (k, &v) in self.vars.iter().enumerate() {
            idx = idx * self.dims[k] + pos(v);
        }
        idx
    }

    fn assignments(vars: &[u32], dims: &[usize]) -> Vec<BTreeMap<u32, usize>> {
        let total: usize = dims.iter().product::<usize>().max(1);
        (0..total)
            .map(|mut flat| {
                let mut a = BTreeMap::new();
                for (k, &v) in vars.iter().enumerate().rev() {
                    a.insert(v, flat % dims[k]);
                    flat /= dims[k];
                }
                a
            })
            .collect()
    }

    /// Sums out `var` against the conditional probabilities `rows`,
    /// indexed row-major over the ascending `parents` supports. The
    /// result depends on the remaining variables plus the parents.
    pub fn expectation(
        &self,
        var: u32,
        parents: &[u32],
        parent_dims: &[usize],
        var_dim: usize,
        rows: &[Vec<f64>],
    ) -> DiscreteExpr {
        let mut out_vars: BTreeSet<u32> = self.vars.iter().copied().filter(|&v| v != var).collect();
        out_vars.extend(parents.iter().copied());
        let out_vars: Vec<u32> = out_vars.into_iter().collect();
        let out_dims: Vec<usize> = out_vars
            .iter()
            .map(|v| {
                if let Some(p) = self.vars.iter().position(|sv| sv == v) {
                    self.dims[p]
                } else {
                    let p = parents.iter().position(|pv| pv == v).unwrap();
                    parent_dims[p]
                }
            })
            .collect();
        let values = Self::assignments(&out_vars, &out_dims)
            .iter()
            .map(|a| {
                let row_idx = parents
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (k, pv)| acc * parent_dims[k] + a[pv]);
                let row = &rows[row_idx];
                (0..var_dim)
                    .map(|k| {
                        let idx = self.index_of(|v| if v == var { k } else { a[&v] });
                        row[k] * self.values[idx]
                    })
                    .sum()
            })
            .collect();
        DiscreteExpr::new(out_vars, out_dims, values)
    }
}

impl TableEntry for DiscreteExpr {
    fn one() -> Self {
        DiscreteExpr::constant(1.0)
    }

    fn mul(&self, other: &Self) -> Self {
        let vars: Vec<u32> = self
            .vars
            .iter()
            .chain(other.vars.iter())
            .copied()
            .collect::<BTreeSet<u32>>()
            .into_iter()
            .collect();
        let dims: Vec<usize> = vars
            .iter()
            .map(|v| {
                self.vars
                    .iter()
                    .position(|sv| sv == v)
                    .map(|p| self.dims[p])
                    .unwrap_or_else(|| {
                        let p = other.vars.iter().position(|ov| ov == v).unwrap();
                        other.dims[p]
                    })
            })
            .collect();
        let values = Self::assignments(&vars, &dims)
            .iter()
            .map(|a| {
                let ia = self.index_of(|v| a[&v]);
                let ib = other.index_of(|v| a[&v]);
                self.values[ia] * other.values[ib]
            })
            .collect();
        DiscreteExpr::new(vars, dims, values)
    }

    fn constant_value(&self) -> Option<f64> {
        if self.vars.is_empty() {
            Some(self.values[0])
        } else {
            None
        }
    }

    fn pending(&self) -> Vec<u32> {
        self.vars.clone()
    }
}
