//! Exact sparse linear algebra over the Gaussian rationals.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::gaussian::GaussQ;

pub type SparseVec = Vec<(usize, GaussQ)>;

/// Rows in echelon form: each row has a distinct pivot column where its
/// leading entry equals one.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    by_pivot: HashMap<usize, usize>,
    /// For each row, its expression in the inserted vectors (index, coeff).
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tracks how every row arises from the inserted vectors so that
    /// [`Echelon::coordinates`] can express members in that generating set.
    pub fn with_coordinates() -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    fn reduce_full(&self, v: &[(usize, GaussQ)], track: bool) -> (BTreeMap<usize, GaussQ>, BTreeMap<usize, GaussQ>) {
        let mut w: BTreeMap<usize, GaussQ> = v.iter().filter(|(_, z)| !z.is_zero()).cloned().collect();
        let mut combo: BTreeMap<usize, GaussQ> = BTreeMap::new();
        let mut cursor = 0usize;
        loop {
            let next = w.range(cursor..).find(|(c, _)| self.by_pivot.contains_key(c)).map(|(c, z)| (*c, z.clone()));
            let Some((col, coeff)) = next else { break };
            let r = self.by_pivot[&col];
            for (c, z) in &self.rows[r] {
                let delta = &coeff * z;
                let e = w.entry(*c).or_insert_with(GaussQ::zero);
                *e -= &delta;
                if e.is_zero() {
                    w.remove(c);
                }
            }
            if track {
                if let Some(combos) = &self.combos {
                    for (k, z) in &combos[r] {
                        let delta = &coeff * z;
                        let e = combo.entry(*k).or_insert_with(GaussQ::zero);
                        *e -= &delta;
                        if e.is_zero() {
                            combo.remove(k);
                        }
                    }
                }
            }
            cursor = col + 1;
        }
        (w, combo)
    }

    /// Remainder of `v` after elimination against the current rows.
    pub fn reduce(&self, v: &[(usize, GaussQ)]) -> SparseVec {
        self.reduce_full(v, false).0.into_iter().collect()
    }

    pub fn contains(&self, v: &[(usize, GaussQ)]) -> bool {
        self.reduce_full(v, false).0.is_empty()
    }

    /// Adds `v`; returns whether it was independent of the previous rows.
    pub fn insert(&mut self, v: &[(usize, GaussQ)]) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (w, mut combo) = self.reduce_full(v, true);
        let Some((&pivot, lead)) = w.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let row: SparseVec = w.iter().map(|(c, z)| (*c, z * &inv)).collect();
        if let Some(combos) = &mut self.combos {
            *combo.entry(index).or_insert_with(GaussQ::zero) += &GaussQ::one();
            combos.push(combo.into_iter().map(|(k, z)| (k, &z * &inv)).filter(|(_, z)| !z.is_zero()).collect());
        }
        self.by_pivot.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Coefficients expressing `v` in the inserted vectors, if `v` lies in
    /// their span. Requires [`Echelon::with_coordinates`].
    pub fn coordinates(&self, v: &[(usize, GaussQ)]) -> Option<SparseVec> {
        assert!(self.combos.is_some(), "coordinates need a tracking echelon");
        let (w, combo) = self.reduce_full(v, true);
        if !w.is_empty() {
            return None;
        }
        // v - sum coeff * row = 0 and row = sum combo * inserted, so
        // v = -(accumulated combo)
        Some(combo.into_iter().map(|(k, z)| (k, -z)).collect())
    }
}

/// Basis of `{x : row . x = 0 for every row}` in `ncols` unknowns.
pub fn null_space(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    // back-substitute to reduced row echelon form
    let mut order: Vec<usize> = (0..ech.rows.len()).collect();
    order.sort_by_key(|&r| ech.rows[r][0].0);
    let mut rref: Vec<BTreeMap<usize, GaussQ>> = ech.rows.iter().map(|r| r.iter().cloned().collect()).collect();
    for &r in order.iter().rev() {
        let pivot = ech.rows[r][0].0;
        let row = rref[r].clone();
        for &s in &order {
            if s == r {
                continue;
            }
            let Some(coeff) = rref[s].get(&pivot).cloned() else { continue };
            for (c, z) in &row {
                let delta = &coeff * z;
                let e = rref[s].entry(*c).or_insert_with(GaussQ::zero);
                *e -= &delta;
                if e.is_zero() {
                    rref[s].remove(c);
                }
            }
        }
    }
    let pivots: HashMap<usize, usize> = order.iter().map(|&r| (ech.rows[r][0].0, r)).collect();
    // column -> rows having an entry there (non-pivot columns only)
    let mut col_rows: HashMap<usize, Vec<(usize, GaussQ)>> = HashMap::new();
    for (&p, &r) in &pivots {
        for (c, z) in &rref[r] {
            if *c != p {
                col_rows.entry(*c).or_default().push((p, z.clone()));
            }
        }
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains_key(c)) {
        let mut v: SparseVec = vec![(f, GaussQ::one())];
        if let Some(entries) = col_rows.get(&f) {
            for (p, z) in entries {
                v.push((*p, -z));
            }
        }
        v.sort_by_key(|(c, _)| *c);
        basis.push(v);
    }
    basis
}
