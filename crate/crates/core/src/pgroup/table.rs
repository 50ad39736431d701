use super::{Element, GroupSpec, DENSE_ORDER_LIMIT};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Dense Cayley data for a [`GroupSpec`]: the addition table indexed by
/// lexicographic element rank, negation, and additive orders.
#[derive(Debug, Clone)]
pub struct GroupTable {
    spec: GroupSpec,
    n: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    orders: Vec<u32>,
    exponent: u32,
    coords: Vec<u32>,
}

impl GroupTable {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        Self::with_exec(spec, Exec::default())
    }

    pub fn with_exec(spec: GroupSpec, exec: Exec) -> Result<Self> {
        spec.validate()?;
        let n = spec.order();
        if n > DENSE_ORDER_LIMIT {
            return Err(Error::TooLarge {
                order: n,
                limit: DENSE_ORDER_LIMIT,
            });
        }
        let rows: Vec<Result<Vec<u16>>> = exec.map_range(0..n, |x| {
            let ex = spec.element_at(x);
            (0..n)
                .map(|y| Ok(spec.index_of(&spec.add(&ex, &spec.element_at(y))?) as u16))
                .collect()
        });
        let mut add = Vec::with_capacity(n * n);
        for r in rows {
            add.extend(r?);
        }
        let mut neg = vec![0u16; n];
        for x in 0..n {
            let row = &add[x * n..(x + 1) * n];
            let y = row
                .iter()
                .position(|&s| s == 0)
                .ok_or_else(|| Error::MalformedGroup("element without inverse".into()))?;
            neg[x] = y as u16;
        }
        let mut orders = vec![0u32; n];
        for (x, o) in orders.iter_mut().enumerate() {
            let mut acc = x;
            let mut r = 1;
            while acc != 0 {
                acc = add[acc * n + x] as usize;
                r += 1;
            }
            *o = r;
        }
        let exponent = orders.iter().copied().max().unwrap_or(1);
        let coords = (0..n).flat_map(|x| spec.element_at(x).0).collect();
        Ok(GroupTable {
            spec,
            n,
            add,
            neg,
            orders,
            exponent,
            coords,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn add_row(&self, x: usize) -> &[u16] {
        &self.add[x * self.n..(x + 1) * self.n]
    }

    #[inline]
    pub fn order_of(&self, x: usize) -> u32 {
        self.orders[x]
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn element(&self, x: usize) -> Element {
        self.spec.element_at(x)
    }

    /// Normal-form coefficients of element `x`.
    #[inline]
    pub fn coords(&self, x: usize) -> &[u32] {
        let k = self.spec.rank();
        &self.coords[x * k..(x + 1) * k]
    }

    pub fn index(&self, x: &Element) -> Result<usize> {
        self.spec.check_element(x)?;
        Ok(self.spec.index_of(x))
    }

    /// Indices of the generators `g0, g1, ...`.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.spec.rank())
            .map(|j| self.spec.index_of(&self.spec.generator(j)))
            .collect()
    }

    pub fn scalar(&self, x: usize, r: u64) -> usize {
        let r = r % self.orders[x] as u64;
        let mut acc = 0;
        for _ in 0..r {
            acc = self.add(acc, x);
        }
        acc
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let s = self.add(self.neg(x), self.neg(y));
        self.add(self.add(s, x), y)
    }

    /// Membership vector of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn is_subgroup(&self, members: &[bool]) -> bool {
        if !members[0] {
            return false;
        }
        let idx: Vec<usize> = (0..self.n).filter(|&x| members[x]).collect();
        idx.iter()
            .all(|&x| idx.iter().all(|&y| members[self.sub(x, y)]))
    }

    pub fn center(&self) -> Vec<bool> {
        (0..self.n)
            .map(|x| (0..self.n).all(|y| self.add(x, y) == self.add(y, x)))
            .collect()
    }

    pub fn derived_subgroup(&self) -> Vec<bool> {
        let comms: Vec<usize> = (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        self.closure(&comms)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.add(x, y) == self.add(y, x)))
    }

    /// Every subgroup, as membership vectors, in a deterministic order
    /// (by size, then by sorted member list).
    pub fn subgroups(&self) -> Vec<Vec<bool>> {
        use std::collections::BTreeSet;
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        let mut frontier: Vec<(Vec<bool>, Vec<usize>)> = vec![(self.closure(&[]), Vec::new())];
        while let Some((h, gens)) = frontier.pop() {
            for g in 0..self.n {
                if h[g] {
                    continue;
                }
                let mut gens2 = gens.clone();
                gens2.push(g);
                let k = self.closure(&gens2);
                let key: Vec<usize> = (0..self.n).filter(|&x| k[x]).collect();
                if found.insert(key) {
                    frontier.push((k, gens2));
                }
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all.into_iter()
            .map(|s| {
                let mut m = vec![false; self.n];
                for x in s {
                    m[x] = true;
                }
                m
            })
            .collect()
    }
}
