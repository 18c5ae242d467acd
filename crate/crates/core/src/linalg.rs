//! Exact span membership over Q by fraction-free row reduction.
//!
//! Rows are sparse maps from an ordered coordinate key to integers. Every
//! incoming rational vector is scaled to a primitive integer vector and
//! reduced against the stored pivots by cross-multiplication, dividing out
//! the row content after each step so entries stay small.

use std::collections::BTreeMap;

use num::{BigInt, Integer, Signed, Zero};

use crate::scalar::Scalar;

type Row<K> = BTreeMap<K, BigInt>;

/// Echelon basis of a growing subspace of `Q^K`.
#[derive(Debug, Clone)]
pub struct SpanBasis<K: Ord + Clone> {
    /// pivot key → row whose leading (smallest) key is the pivot
    rows: BTreeMap<K, Row<K>>,
}

impl<K: Ord + Clone> Default for SpanBasis<K> {
    fn default() -> Self {
        SpanBasis { rows: BTreeMap::new() }
    }
}

fn primitive<K: Ord + Clone>(v: &BTreeMap<K, Scalar>) -> Row<K> {
    let lcm = v.values().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let mut row: Row<K> = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k.clone(), x.numer() * (&lcm / x.denom())))
        .collect();
    normalize(&mut row);
    row
}

fn normalize<K: Ord>(row: &mut Row<K>) {
    row.retain(|_, x| !x.is_zero());
    let g = row.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in row.values_mut() {
            *x /= &g;
        }
    }
}

impl<K: Ord + Clone> SpanBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: Row<K>) -> Row<K> {
        loop {
            let Some(lead) = row.keys().find(|k| self.rows.contains_key(*k)).cloned() else {
                return row;
            };
            let pivot = &self.rows[&lead];
            let a = pivot[&lead].clone();
            let b = row[&lead].clone();
            // row := a*row - b*pivot eliminates `lead`
            for x in row.values_mut() {
                *x *= &a;
            }
            for (k, p) in pivot {
                let e = row.entry(k.clone()).or_insert_with(BigInt::zero);
                *e -= &b * p;
            }
            normalize(&mut row);
        }
    }

    /// Adds `v` to the spanning set; returns true if it raised the rank.
    pub fn insert(&mut self, v: &BTreeMap<K, Scalar>) -> bool {
        let row = self.reduce(primitive(v));
        let Some(lead) = row.keys().next().cloned() else {
            return false;
        };
        let mut row = row;
        if row[&lead].is_negative() {
            for x in row.values_mut() {
                *x = -x.clone();
            }
        }
        self.rows.insert(lead, row);
        true
    }

    pub fn contains(&self, v: &BTreeMap<K, Scalar>) -> bool {
        self.reduce(primitive(v)).is_empty()
    }
}
