//! Nearrings as dense multiplication tables over a [`GroupTable`].
//!
//! Row `x` of the table is the map `y -> x*y`; entries are element indices
//! in the lexicographic order fixed by the group presentation.

mod congruence;
mod export;
mod iso;
mod verify;

pub use congruence::{
    check_g4_congruences, check_g5_congruences, g4_product, g5_product, G4Maps, G5Maps, StructureMaps,
    Violation,
};
pub use export::NearringFile;
pub use iso::are_isomorphic;
pub use verify::{
    check_i_plus_l_subgroup, check_l_is_rr_subgroup, invertible_elements, locality_report,
    structural_invariants, verify_axioms, verify_axioms_with, AxiomReport, LocalityReport,
    StructuralReport,
};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pgroup::GroupTable;

#[derive(Debug, Clone)]
pub struct Nearring {
    group: Arc<GroupTable>,
    mul: Vec<u16>,
    identity: Option<usize>,
}

impl PartialEq for Nearring {
    fn eq(&self, other: &Self) -> bool {
        self.group.spec() == other.group.spec() && self.mul == other.mul
    }
}

impl Eq for Nearring {}

impl Nearring {
    pub fn new(group: Arc<GroupTable>, mul: Vec<u16>) -> Result<Self> {
        let n = group.order();
        if mul.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "expected {} entries for a group of order {n}, got {}",
                n * n,
                mul.len()
            )));
        }
        if let Some(pos) = mul.iter().position(|&v| v as usize >= n) {
            return Err(Error::MalformedTable(format!(
                "entry ({}, {}) = {} is not an element index",
                pos / n,
                pos % n,
                mul[pos]
            )));
        }
        let identity = find_identity(n, &mul);
        Ok(Nearring { group, mul, identity })
    }

    /// Table with `x*y = f(x, y)`.
    pub fn from_fn(group: Arc<GroupTable>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = group.order();
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                mul.push(f(x, y) as u16);
            }
        }
        Self::new(group, mul)
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.group.order() + y] as usize
    }

    pub fn row(&self, x: usize) -> &[u16] {
        let n = self.group.order();
        &self.mul[x * n..(x + 1) * n]
    }

    pub fn table(&self) -> &[u16] {
        &self.mul
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    /// Copy of this table with one entry replaced.
    pub fn with_entry(&self, x: usize, y: usize, value: usize) -> Result<Self> {
        let mut mul = self.mul.clone();
        let n = self.order();
        if x >= n || y >= n {
            return Err(Error::MalformedTable(format!("({x}, {y}) is outside the table")));
        }
        mul[x * n + y] = value as u16;
        Self::new(self.group.clone(), mul)
    }
}

fn find_identity(n: usize, mul: &[u16]) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    #[test]
    fn shape_and_entry_checks() {
        let g = Arc::new(GroupTable::new(catalog("Cp", 3).unwrap()).unwrap());
        assert!(matches!(Nearring::new(g.clone(), vec![0; 8]), Err(Error::MalformedTable(_))));
        assert!(matches!(Nearring::new(g.clone(), vec![5; 9]), Err(Error::MalformedTable(_))));
        let zero = Nearring::new(g.clone(), vec![0; 9]).unwrap();
        assert_eq!(zero.identity(), None);
        let ring = Nearring::from_fn(g, |x, y| x * y % 3).unwrap();
        assert_eq!(ring.identity(), Some(1));
    }
}
