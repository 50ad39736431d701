#![allow(dead_code)]

use std::sync::Arc;

use localnr::pgroup::{catalog, Element, GroupTable};

pub fn table(name: &str, p: u32) -> Arc<GroupTable> {
    Arc::new(GroupTable::new(catalog(name, p).unwrap()).unwrap())
}

/// Element with coefficients reduced mod the generator orders.
pub fn el(g: &GroupTable, c: &[i64]) -> usize {
    let orders = &g.spec().gen_orders;
    let v: Vec<u32> = c
        .iter()
        .zip(orders)
        .map(|(&x, &m)| x.rem_euclid(m as i64) as u32)
        .collect();
    g.index(&Element(v)).unwrap()
}

/// `x` added to itself `r` times, one addition at a time.
pub fn times(g: &GroupTable, x: usize, r: u64) -> usize {
    (0..r).fold(0, |acc, _| g.add(acc, x))
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `-ak - bl + ak + bl = c(kl)` and `bl + ak = -c(kl) + ak + bl` on G4.
pub fn g4_commutator_law(p: u32) -> Result<usize, String> {
    let g = table("G4", p);
    let [a, b] = [el(&g, &[1, 0, 0, 0]), el(&g, &[0, 1, 0, 0])];
    let mut checked = 0;
    for k in 0..2 * p as i64 {
        for l in 0..2 * p as i64 {
            let ak = times(&g, a, k as u64);
            let bl = times(&g, b, l as u64);
            let lhs = g.add(g.add(g.add(g.neg(ak), g.neg(bl)), ak), bl);
            let ckl = el(&g, &[0, 0, k * l, 0]);
            if lhs != ckl {
                return Err(format!("G4({p}) k={k} l={l}: commutator {lhs} != c(kl) {ckl}"));
            }
            if g.add(bl, ak) != g.add(g.add(g.neg(ckl), ak), bl) {
                return Err(format!("G4({p}) k={k} l={l}: bl+ak"));
            }
            checked += 2;
        }
    }
    Ok(checked)
}

/// `(ak+bl+cm+dn)r = a(kr) + b(lr) + c(mr - kl C(r,2)) + d(nr)` on G4.
pub fn g4_multiple_law(p: u32) -> Result<usize, String> {
    let g = table("G4", p);
    let mut checked = 0;
    for x in 0..g.order() {
        let [k, l, m, n] = [0, 1, 2, 3].map(|j| g.coords(x)[j] as i64);
        let mut acc = 0;
        for r in 0..=2 * p as i64 {
            let want = el(&g, &[k * r, l * r, m * r - k * l * binom2(r), n * r]);
            if acc != want {
                return Err(format!("G4({p}) x={x} r={r}: {acc} != {want}"));
            }
            acc = g.add(acc, x);
            checked += 1;
        }
    }
    Ok(checked)
}

/// `ck + bs + ar = ar(1+sp) + bs + ck` and
/// `(ar+bs+ck)t = ar(t + s C(t,2) p) + b(st) + c(kt)` on G5.
pub fn g5_laws(p: u32) -> Result<usize, String> {
    let g = table("G5", p);
    let pp = p as i64;
    let [a, b, c] = [el(&g, &[1, 0, 0]), el(&g, &[0, 1, 0]), el(&g, &[0, 0, 1])];
    let mut checked = 0;
    for r in 0..pp * pp {
        for s in 0..pp {
            for k in 0..pp {
                let (ar, bs, ck) = (times(&g, a, r as u64), times(&g, b, s as u64), times(&g, c, k as u64));
                let lhs = g.add(g.add(ck, bs), ar);
                let rhs = el(&g, &[r * (1 + s * pp), s, k]);
                if lhs != rhs {
                    return Err(format!("G5({p}) r={r} s={s} k={k}: ck+bs+ar"));
                }
                let x = g.add(g.add(ar, bs), ck);
                let mut acc = 0;
                for t in 0..=pp * pp {
                    let want = el(&g, &[r * (t + s * binom2(t) * pp), s * t, k * t]);
                    if acc != want {
                        return Err(format!("G5({p}) r={r} s={s} k={k} t={t}: {acc} != {want}"));
                    }
                    acc = g.add(acc, x);
                    checked += 1;
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}
