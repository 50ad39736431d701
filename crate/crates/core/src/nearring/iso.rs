use std::ops::ControlFlow;

use super::{invertible_elements, Nearring};
use crate::error::{Error, Result};
use crate::pgroup::hom::for_each_hom;

fn sorted_orders(nr: &Nearring) -> Vec<u32> {
    let mut v = nr.group().orders().to_vec();
    v.sort_unstable();
    v
}

fn non_invertible(nr: &Nearring) -> Option<Vec<bool>> {
    let units = invertible_elements(nr).ok()?;
    let mut l = vec![true; nr.order()];
    for u in units {
        l[u] = false;
    }
    Some(l)
}

/// An additive isomorphism `f` with `f(x*y) = f(x)*f(y)`, returned as the
/// image vector `f[x]`, or `None` when the nearrings are not isomorphic.
///
/// Candidate maps come from generator images of matching additive order;
/// identity must go to identity and non-units to non-units.
pub fn are_isomorphic(nr1: &Nearring, nr2: &Nearring) -> Result<Option<Vec<usize>>> {
    let n = nr1.order();
    if n != nr2.order() {
        return Err(Error::Precondition(format!(
            "groups of different orders {n} and {}",
            nr2.order()
        )));
    }
    if nr1.identity().is_some() != nr2.identity().is_some() || sorted_orders(nr1) != sorted_orders(nr2) {
        return Ok(None);
    }
    let (l1, l2) = (non_invertible(nr1), non_invertible(nr2));
    if let (Some(a), Some(b)) = (&l1, &l2) {
        if a.iter().filter(|&&v| v).count() != b.iter().filter(|&&v| v).count() {
            return Ok(None);
        }
    }
    let (g1, g2) = (nr1.group(), nr2.group());
    let gens = g1.generators();
    let mut found = None;
    for_each_hom(
        g1,
        g2,
        |j, t| g2.order_of(t) == g1.order_of(gens[j]),
        |_, f| {
            if let (Some(e1), Some(e2)) = (nr1.identity(), nr2.identity()) {
                if f[e1] as usize != e2 {
                    return ControlFlow::Continue(());
                }
            }
            let mut seen = vec![false; n];
            if !f.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true)) {
                return ControlFlow::Continue(());
            }
            if let (Some(a), Some(b)) = (&l1, &l2) {
                if (0..n).any(|x| a[x] != b[f[x] as usize]) {
                    return ControlFlow::Continue(());
                }
            }
            let ok = (0..n).all(|x| {
                (0..n).all(|y| f[nr1.mul(x, y)] as usize == nr2.mul(f[x] as usize, f[y] as usize))
            });
            if ok {
                found = Some(f.iter().map(|&v| v as usize).collect());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    );
    Ok(found)
}
