//! Additive endomorphisms, stored densely as image vectors.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pgroup::hom::for_each_hom;
use crate::pgroup::GroupTable;

/// Largest group order for full endomorphism enumeration.
pub const ENDO_ORDER_LIMIT: usize = 256;

/// An endomorphism given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndoMap {
    pub images: Vec<usize>,
}

impl EndoMap {
    /// Image of every element under the extension.
    pub fn extend(&self, g: &GroupTable) -> Vec<usize> {
        crate::pgroup::hom::extend(g, g, &self.images)
            .into_iter()
            .map(usize::from)
            .collect()
    }
}

/// Every endomorphism of `g`, zero and identity included, in lexicographic
/// order of generator images.
pub fn all_endomorphisms(g: &GroupTable) -> Result<Vec<EndoMap>> {
    check_size(g)?;
    let mut out = Vec::new();
    for_each_hom(g, g, |_, _| true, |imgs, _| {
        out.push(EndoMap { images: imgs.to_vec() });
        ControlFlow::Continue(())
    });
    Ok(out)
}

fn check_size(g: &GroupTable) -> Result<()> {
    if g.order() > ENDO_ORDER_LIMIT {
        return Err(Error::TooLarge {
            order: g.order(),
            limit: ENDO_ORDER_LIMIT,
        });
    }
    Ok(())
}

/// Full image vectors of all endomorphisms, flattened (`maps[k*n + x]`).
#[derive(Debug, Clone)]
pub struct EndoSet {
    pub n: usize,
    pub maps: Vec<u8>,
    pub bijective: Vec<bool>,
}

impl EndoSet {
    pub fn new(g: &GroupTable) -> Result<Self> {
        check_size(g)?;
        let n = g.order();
        let mut maps = Vec::new();
        let mut bijective = Vec::new();
        for_each_hom(g, g, |_, _| true, |_, full| {
            let mut seen = vec![false; n];
            bijective.push(full.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true)));
            maps.extend(full.iter().map(|&v| v as u8));
            ControlFlow::Continue(())
        });
        Ok(EndoSet { n, maps, bijective })
    }

    pub fn len(&self) -> usize {
        self.bijective.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bijective.is_empty()
    }

    pub fn get(&self, k: usize) -> &[u8] {
        &self.maps[k * self.n..(k + 1) * self.n]
    }

    pub fn automorphisms(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.len()).filter(|&k| self.bijective[k]).map(|k| self.get(k))
    }
}
