use serde::{Deserialize, Serialize};

use super::Nearring;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Outcome of the exhaustive axiom scan. Violations are the
/// lexicographically first offending triple `(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub order: usize,
    pub is_associative: bool,
    pub is_left_distributive: bool,
    pub is_unital: bool,
    pub identity: Option<usize>,
    pub is_zero_symmetric: bool,
    /// `x*0 = 0` for every `x`; implied by left distributivity.
    pub right_zero_holds: bool,
    pub associativity_violation: Option<(usize, usize, usize)>,
    pub distributivity_violation: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn is_nearring_with_identity(&self) -> bool {
        self.is_associative && self.is_left_distributive && self.is_unital
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityReport {
    #[serde(flatten)]
    pub axioms: AxiomReport,
    pub invertible: Vec<usize>,
    /// Non-invertible elements.
    pub l: Vec<usize>,
    pub l_is_subgroup: bool,
    pub is_local: bool,
    pub is_nearfield: bool,
    pub index_r_l: Option<usize>,
}

pub fn verify_axioms(nr: &Nearring) -> AxiomReport {
    verify_axioms_with(nr, Exec::default())
}

pub fn verify_axioms_with(nr: &Nearring, exec: Exec) -> AxiomReport {
    let g = nr.group();
    let n = g.order();
    type RowResult = (Option<(usize, usize)>, Option<(usize, usize)>);
    let rows: Vec<RowResult> = exec.map_range(0..n, |x| {
        let mut assoc = None;
        let mut dist = None;
        'outer: for y in 0..n {
            let xy = nr.mul(x, y);
            for z in 0..n {
                if assoc.is_none() && nr.mul(xy, z) != nr.mul(x, nr.mul(y, z)) {
                    assoc = Some((y, z));
                }
                if dist.is_none() && nr.mul(x, g.add(y, z)) != g.add(xy, nr.mul(x, z)) {
                    dist = Some((y, z));
                }
                if assoc.is_some() && dist.is_some() {
                    break 'outer;
                }
            }
        }
        (assoc, dist)
    });
    let first = |pick: fn(&RowResult) -> Option<(usize, usize)>| {
        rows.iter()
            .enumerate()
            .find_map(|(x, r)| pick(r).map(|(y, z)| (x, y, z)))
    };
    let associativity_violation = first(|r| r.0);
    let distributivity_violation = first(|r| r.1);
    AxiomReport {
        order: n,
        is_associative: associativity_violation.is_none(),
        is_left_distributive: distributivity_violation.is_none(),
        is_unital: nr.identity().is_some(),
        identity: nr.identity(),
        is_zero_symmetric: (0..n).all(|x| nr.mul(0, x) == 0),
        right_zero_holds: (0..n).all(|x| nr.mul(x, 0) == 0),
        associativity_violation,
        distributivity_violation,
    }
}

fn require_identity(nr: &Nearring) -> Result<usize> {
    nr.identity()
        .ok_or_else(|| Error::Precondition("the multiplication has no two-sided identity".into()))
}

/// Elements `x` with some `y` such that `x*y = y*x = i`.
pub fn invertible_elements(nr: &Nearring) -> Result<Vec<usize>> {
    let e = require_identity(nr)?;
    let n = nr.order();
    Ok((0..n)
        .filter(|&x| (0..n).any(|y| nr.mul(x, y) == e && nr.mul(y, x) == e))
        .collect())
}

pub fn locality_report(nr: &Nearring) -> Result<LocalityReport> {
    let axioms = verify_axioms(nr);
    if !axioms.is_unital {
        return Err(Error::Precondition("the multiplication has no two-sided identity".into()));
    }
    if let Some((x, y, z)) = axioms.associativity_violation {
        return Err(Error::Precondition(format!(
            "multiplication is not associative: ({x}*{y})*{z} != {x}*({y}*{z})"
        )));
    }
    if let Some((x, y, z)) = axioms.distributivity_violation {
        return Err(Error::Precondition(format!(
            "left distributivity fails: {x}*({y}+{z}) != {x}*{y}+{x}*{z}"
        )));
    }
    let g = nr.group();
    let n = g.order();
    let invertible = invertible_elements(nr)?;
    let mut in_l = vec![true; n];
    for &x in &invertible {
        in_l[x] = false;
    }
    let l: Vec<usize> = (0..n).filter(|&x| in_l[x]).collect();
    let l_is_subgroup = g.is_subgroup(&in_l);
    let is_local = l_is_subgroup;
    Ok(LocalityReport {
        axioms,
        is_nearfield: is_local && l.len() == 1,
        index_r_l: is_local.then(|| n / l.len()),
        invertible,
        l,
        l_is_subgroup,
        is_local,
    })
}

fn require_local(nr: &Nearring) -> Result<LocalityReport> {
    let rep = locality_report(nr)?;
    if !rep.is_local {
        return Err(Error::Precondition("the nearring is not local".into()));
    }
    Ok(rep)
}

/// `x*l*y` lies in `L` for all `x, y` and every non-invertible `l`.
pub fn check_l_is_rr_subgroup(nr: &Nearring) -> Result<bool> {
    Ok(rr_subgroup(nr, &require_local(nr)?))
}

fn rr_subgroup(nr: &Nearring, rep: &LocalityReport) -> bool {
    let n = nr.order();
    let mut in_l = vec![false; n];
    for &x in &rep.l {
        in_l[x] = true;
    }
    (0..n).all(|x| {
        rep.l.iter().all(|&l| {
            let xl = nr.mul(x, l);
            (0..n).all(|y| in_l[nr.mul(xl, y)])
        })
    })
}

/// `i + L` is a subgroup of the multiplicative group.
pub fn check_i_plus_l_subgroup(nr: &Nearring) -> Result<bool> {
    let rep = require_local(nr)?;
    let e = require_identity(nr)?;
    Ok(i_plus_l(nr, &rep, e))
}

fn i_plus_l(nr: &Nearring, rep: &LocalityReport, e: usize) -> bool {
    let g = nr.group();
    let n = nr.order();
    let mut in_s = vec![false; n];
    for &l in &rep.l {
        in_s[g.add(e, l)] = true;
    }
    let mut invertible = vec![false; n];
    for &u in &rep.invertible {
        invertible[u] = true;
    }
    let s: Vec<usize> = (0..n).filter(|&x| in_s[x]).collect();
    for &a in &s {
        if !invertible[a] {
            return false;
        }
        if s.iter().any(|&b| !in_s[nr.mul(a, b)]) {
            return false;
        }
        let inv = (0..n).find(|&y| nr.mul(a, y) == e && nr.mul(y, a) == e);
        if !inv.is_some_and(|y| in_s[y]) {
            return false;
        }
    }
    true
}

/// Structural facts every finite local nearring satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub identity_order: u32,
    pub group_exponent: u32,
    /// Identity order equals the exponent and every unit has that order.
    pub exponent_law: bool,
    pub rows_are_endomorphisms: bool,
    pub invertible_rows_bijective: bool,
    pub l_is_rr_subgroup: bool,
    pub i_plus_l_subgroup: bool,
    /// `|L|^2 >= |R|` for non-nearfields (vacuous for nearfields).
    pub l_square_bound: bool,
    /// Strict `|L|^2 > |R|`; reported, not required.
    pub l_square_bound_strict: bool,
    pub l_is_cyclic: bool,
    /// `L` non-cyclic of order p^2 or p^3; only meaningful for non-nearfields
    /// on non-abelian groups of order p^4.
    pub noncyclic_l_of_order_p2_or_p3: Option<bool>,
}

impl StructuralReport {
    pub fn all_hold(&self) -> bool {
        self.exponent_law
            && self.rows_are_endomorphisms
            && self.invertible_rows_bijective
            && self.l_is_rr_subgroup
            && self.i_plus_l_subgroup
            && self.l_square_bound
            && self.noncyclic_l_of_order_p2_or_p3.unwrap_or(true)
    }
}

pub fn structural_invariants(nr: &Nearring) -> Result<StructuralReport> {
    let rep = require_local(nr)?;
    let e = require_identity(nr)?;
    let g = nr.group();
    let n = g.order();
    let identity_order = g.order_of(e);
    let group_exponent = g.exponent();
    let exponent_law = identity_order == group_exponent
        && rep.invertible.iter().all(|&u| g.order_of(u) == group_exponent);
    // row endomorphisms are exactly left distributivity
    let rows_are_endomorphisms = rep.axioms.is_left_distributive;
    let invertible_rows_bijective = rep.invertible.iter().all(|&u| {
        let mut seen = vec![false; n];
        nr.row(u).iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    });
    let l_len = rep.l.len();
    let nearfield = rep.is_nearfield;
    let l_is_cyclic = rep.l.iter().any(|&x| g.order_of(x) as usize == l_len);
    let p = g.spec().prime as usize;
    let l_shape = (!g.is_abelian() && n == p.pow(4) && !nearfield)
        .then(|| !l_is_cyclic && (l_len == p * p || l_len == p * p * p));
    Ok(StructuralReport {
        identity_order,
        group_exponent,
        exponent_law,
        rows_are_endomorphisms,
        invertible_rows_bijective,
        l_is_rr_subgroup: rr_subgroup(nr, &rep),
        i_plus_l_subgroup: i_plus_l(nr, &rep, e),
        l_square_bound: nearfield || l_len * l_len >= n,
        l_square_bound_strict: nearfield || l_len * l_len > n,
        l_is_cyclic,
        noncyclic_l_of_order_p2_or_p3: l_shape,
    })
}
