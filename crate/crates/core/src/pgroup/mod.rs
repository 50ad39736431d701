//! Finite p-groups of nilpotency class at most 2, given by a polycyclic
//! presentation in normal-form coefficient coordinates.
//!
//! An element is the word `g0*e0 + g1*e1 + ... + g(k-1)*e(k-1)` (additive
//! notation, generators in fixed order) with `0 <= e_j < gen_orders[j]`.
//! Addition is computed by collection: each generator power of the right
//! operand is moved left past the tail of the left operand, and the central
//! commutator words picked up on the way are folded back in.

mod catalog;
pub mod hom;
mod table;

pub use catalog::{catalog, catalog_names, CALIBRATION_NAMES, ORDER16_NAMES, P4_NAMES};
pub use table::GroupTable;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order for which dense tables are built.
pub const DENSE_ORDER_LIMIT: usize = 10_000;

const COLLECTION_DEPTH_LIMIT: usize = 64;

/// Normal-form coefficient vector of a group element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Element {
    fn from(v: Vec<u32>) -> Self {
        Element(v)
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Polycyclic presentation of a class-2 p-group.
///
/// `relation_table` lists, for every generator pair `(gj, gi)` with `j > i`
/// (ordered `j = 1..k`, then `i = 0..j`), the normal form of the commutator
/// `-gi - gj + gi + gj`. `power_table`, when non-empty, gives the normal form
/// of `gj * gen_orders[j]`; an empty table means every such power is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub prime: u32,
    pub gen_orders: Vec<u32>,
    pub relation_table: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub power_table: Vec<Vec<u32>>,
}

#[inline]
fn pair_index(j: usize, i: usize) -> usize {
    debug_assert!(j > i);
    j * (j - 1) / 2 + i
}

impl GroupSpec {
    /// Builds a presentation from sparse commutator and power data and
    /// validates it. `commutators` holds `(i, j, word)` with `i < j` and
    /// `word = -gi - gj + gi + gj`.
    pub fn from_relations(
        name: impl Into<String>,
        prime: u32,
        gen_orders: Vec<u32>,
        commutators: &[(usize, usize, Vec<u32>)],
        powers: &[(usize, Vec<u32>)],
    ) -> Result<Self> {
        let k = gen_orders.len();
        let mut relation_table = vec![vec![0; k]; k * k.saturating_sub(1) / 2];
        for (i, j, w) in commutators {
            if i >= j || *j >= k {
                return Err(Error::MalformedGroup(format!(
                    "commutator pair ({i},{j}) must satisfy i < j < {k}"
                )));
            }
            relation_table[pair_index(*j, *i)] = w.clone();
        }
        let power_table = if powers.is_empty() {
            Vec::new()
        } else {
            let mut t = vec![vec![0; k]; k];
            for (j, w) in powers {
                if *j >= k {
                    return Err(Error::MalformedGroup(format!("power relation for missing generator {j}")));
                }
                t[*j] = w.clone();
            }
            t
        };
        let spec = GroupSpec {
            name: name.into(),
            prime,
            gen_orders,
            relation_table,
            power_table,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rank(&self) -> usize {
        self.gen_orders.len()
    }

    pub fn order(&self) -> usize {
        self.gen_orders.iter().map(|&m| m as usize).product()
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    pub fn generator(&self, j: usize) -> Element {
        let mut v = vec![0; self.rank()];
        v[j] = 1;
        Element(v)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank()).map(|j| self.generator(j)).collect()
    }

    /// Commutator word `-gi - gj + gi + gj` for `i != j`.
    pub fn relation(&self, i: usize, j: usize) -> &[u32] {
        if i < j {
            &self.relation_table[pair_index(j, i)]
        } else {
            &self.relation_table[pair_index(i, j)]
        }
    }

    fn power_word(&self, j: usize) -> Option<&[u32]> {
        self.power_table
            .get(j)
            .map(Vec::as_slice)
            .filter(|w| w.iter().any(|&c| c != 0))
    }

    /// Checks structural well-formedness: prime-power generator orders,
    /// table shapes, coefficient bounds, and that every relation word lives
    /// on generators that commute with each other and have trivial powers,
    /// so that multiples of relation words can be taken coordinate-wise.
    pub fn validate(&self) -> Result<()> {
        let p = self.prime;
        if p < 2 || !is_prime(p) {
            return Err(Error::MalformedGroup(format!("{p} is not a prime")));
        }
        let k = self.rank();
        if k == 0 {
            return Err(Error::MalformedGroup("no generators".into()));
        }
        for &m in &self.gen_orders {
            if m < 2 || !is_power_of(m, p) {
                return Err(Error::MalformedGroup(format!(
                    "generator order {m} is not a positive power of {p}"
                )));
            }
        }
        if self.relation_table.len() != k * (k - 1) / 2 {
            return Err(Error::MalformedGroup(format!(
                "relation table has {} entries, expected {}",
                self.relation_table.len(),
                k * (k - 1) / 2
            )));
        }
        if !self.power_table.is_empty() && self.power_table.len() != k {
            return Err(Error::MalformedGroup(format!(
                "power table has {} entries, expected {k}",
                self.power_table.len()
            )));
        }
        let words = self.relation_table.iter().chain(self.power_table.iter());
        let mut support = vec![false; k];
        for w in words {
            self.check_coeffs(w)
                .map_err(|e| Error::MalformedGroup(format!("relation word: {e}")))?;
            for (l, &c) in w.iter().enumerate() {
                if c != 0 {
                    support[l] = true;
                }
            }
        }
        for l in (0..k).filter(|&l| support[l]) {
            if self.power_word(l).is_some() {
                return Err(Error::MalformedGroup(format!(
                    "generator {l} appears in a relation word but has a non-trivial power relation"
                )));
            }
            for l2 in (0..k).filter(|&l2| l2 != l && support[l2]) {
                if self.relation(l, l2).iter().any(|&c| c != 0) {
                    return Err(Error::MalformedGroup(format!(
                        "relation words involve non-commuting generators {l} and {l2}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_coeffs(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::MalformedElement(format!(
                "expected {} coefficients, got {}",
                self.rank(),
                v.len()
            )));
        }
        for (j, (&c, &m)) in v.iter().zip(&self.gen_orders).enumerate() {
            if c >= m {
                return Err(Error::MalformedElement(format!(
                    "coefficient {c} at position {j} is not below the generator order {m}"
                )));
            }
        }
        Ok(())
    }

    pub fn check_element(&self, x: &Element) -> Result<()> {
        self.check_coeffs(&x.0)
    }

    /// Lexicographic rank of a normal-form vector (first coordinate most significant).
    pub fn index_of(&self, x: &Element) -> usize {
        x.0.iter()
            .zip(&self.gen_orders)
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Element {
        let mut v = vec![0u32; self.rank()];
        for j in (0..self.rank()).rev() {
            let m = self.gen_orders[j] as usize;
            v[j] = (idx % m) as u32;
            idx /= m;
        }
        Element(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// `v <- v + g_gen * e` by collection.
    fn add_letter(&self, v: &mut [u32], gen: usize, e: u64, depth: usize) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        if depth > COLLECTION_DEPTH_LIMIT {
            return Err(Error::MalformedGroup(format!(
                "collection in `{}` did not terminate",
                self.name
            )));
        }
        let k = self.rank();
        // central correction accumulated coordinate-wise (valid by `validate`)
        let mut corr = vec![0i64; k];
        let mut any = false;
        for i in gen + 1..k {
            if v[i] == 0 {
                continue;
            }
            let w = self.relation(gen, i);
            for (l, &c) in w.iter().enumerate() {
                if c != 0 {
                    let m = self.gen_orders[l] as i64;
                    let t = (e as i64 % m) * (v[i] as i64) % m * (c as i64) % m;
                    corr[l] = (corr[l] - t).rem_euclid(m);
                    any = true;
                }
            }
        }
        let m = self.gen_orders[gen] as u64;
        let total = v[gen] as u64 + e;
        v[gen] = (total % m) as u32;
        let carries = total / m;
        if carries > 0 {
            if let Some(pw) = self.power_word(gen) {
                for (l, &c) in pw.iter().enumerate() {
                    if c != 0 {
                        let ml = self.gen_orders[l] as i64;
                        corr[l] = (corr[l] + (carries as i64 % ml) * c as i64).rem_euclid(ml);
                        any = true;
                    }
                }
            }
        }
        if any {
            for (l, &c) in corr.iter().enumerate() {
                if c != 0 {
                    self.add_letter(v, l, c as u64, depth + 1)?;
                }
            }
        }
        Ok(())
    }

    /// Normal form of `x + y`.
    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut v = x.0.clone();
        for (j, &e) in y.0.iter().enumerate() {
            self.add_letter(&mut v, j, e as u64, 0)?;
        }
        Ok(Element(v))
    }

    /// `x * r`, i.e. `x` added to itself `r` times.
    pub fn scalar_mul(&self, x: &Element, r: u64) -> Result<Element> {
        self.check_element(x)?;
        let mut acc = self.zero();
        let mut base = x.clone();
        let mut r = r;
        while r > 0 {
            if r & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            r >>= 1;
            if r > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    pub fn neg(&self, x: &Element) -> Result<Element> {
        // x * (|G| - 1) = -x since every element order divides |G|
        self.scalar_mul(x, self.order() as u64 - 1)
    }

    pub fn element_order(&self, x: &Element) -> Result<u64> {
        self.check_element(x)?;
        let zero = self.zero();
        let mut acc = x.clone();
        let mut r = 1u64;
        while acc != zero {
            acc = self.add(&acc, x)?;
            r += 1;
        }
        Ok(r)
    }

    pub fn exponent(&self) -> Result<u64> {
        let mut best = 1;
        for x in self.elements() {
            best = best.max(self.element_order(&x)?);
        }
        Ok(best)
    }

    /// `-x - y + x + y`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        let nx = self.neg(x)?;
        let ny = self.neg(y)?;
        let s = self.add(&nx, &ny)?;
        let s = self.add(&s, x)?;
        self.add(&s, y)
    }

    /// Smallest subgroup containing `gens`, as sorted element indices.
    pub fn subgroup_closure(&self, gens: &[Element]) -> Result<Vec<usize>> {
        for g in gens {
            self.check_element(g)?;
        }
        let n = self.order();
        let mut seen = vec![false; n];
        let zero = self.zero();
        seen[self.index_of(&zero)] = true;
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g)?;
                let iy = self.index_of(&y);
                if !seen[iy] {
                    seen[iy] = true;
                    frontier.push(y);
                }
            }
        }
        Ok((0..n).filter(|&i| seen[i]).collect())
    }

    pub fn is_abelian(&self) -> bool {
        self.relation_table.iter().all(|w| w.iter().all(|&c| c == 0))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: GroupSpec = serde_json::from_str(s)?;
        g.validate()?;
        Ok(g)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn is_power_of(mut m: u32, p: u32) -> bool {
    while m > 1 {
        if m % p != 0 {
            return false;
        }
        m /= p;
    }
    m == 1
}
