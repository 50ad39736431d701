//! Structure maps of unital nearrings on G4 and G5 and the congruences they
//! satisfy.
//!
//! With the identity at the generator `a`, left distributivity makes the
//! whole table a function of the products with the remaining generators:
//! on G4, `xb = (α, β, γ, φ)(x)` and `xd = (λ, μ, ν, ψ)(x)`; on G5,
//! `xb = (α, β, γ)(x)` and `xc = (ν, μ, φ)(x)`. Associativity then turns
//! into congruences between the maps, numbered (0)-(8) below.

use serde::{Deserialize, Serialize};

use super::Nearring;
use crate::error::{Error, Result};
use crate::pgroup::{Element, GroupTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub statement: u8,
    pub x: usize,
    pub y: Option<usize>,
    pub detail: String,
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn md(v: i64, m: i64) -> u32 {
    v.rem_euclid(m) as u32
}

/// Values of the eight G4 maps, stored mod p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G4Maps {
    pub p: u32,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub gamma: Vec<u32>,
    pub phi: Vec<u32>,
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
    pub psi: Vec<u32>,
}

/// Values of the six G5 maps; `alpha` and `nu` mod p^2, the rest mod p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G5Maps {
    pub p: u32,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub gamma: Vec<u32>,
    pub nu: Vec<u32>,
    pub mu: Vec<u32>,
    pub phi: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "UPPERCASE")]
pub enum StructureMaps {
    G4(G4Maps),
    G5(G5Maps),
}

fn require_group(g: &GroupTable, name: &str, orders: &[u32]) -> Result<()> {
    let s = g.spec();
    if s.name != name || s.gen_orders != orders {
        return Err(Error::Precondition(format!(
            "expected {name} with generator orders {orders:?}, got `{}` with {:?}",
            s.name, s.gen_orders
        )));
    }
    Ok(())
}

fn require_identity_a(nr: &Nearring) -> Result<()> {
    let a = nr.group().generators()[0];
    match nr.identity() {
        Some(e) if e == a => Ok(()),
        Some(e) => Err(Error::Precondition(format!(
            "identity is element {e}, structure maps need it at the generator a (index {a})"
        ))),
        None => Err(Error::Precondition("the multiplication has no two-sided identity".into())),
    }
}

fn index(g: &GroupTable, c: &[u32]) -> usize {
    g.spec().index_of(&Element(c.to_vec()))
}

impl G4Maps {
    /// Maps of a given family evaluated on every element of G4(p).
    pub fn from_fn(g: &GroupTable, f: impl Fn(&[u32]) -> [i64; 8]) -> Self {
        let p = g.spec().prime;
        let m = p as i64;
        let n = g.order();
        let mut maps = G4Maps {
            p,
            alpha: Vec::with_capacity(n),
            beta: Vec::with_capacity(n),
            gamma: Vec::with_capacity(n),
            phi: Vec::with_capacity(n),
            lambda: Vec::with_capacity(n),
            mu: Vec::with_capacity(n),
            nu: Vec::with_capacity(n),
            psi: Vec::with_capacity(n),
        };
        for x in 0..n {
            let v = f(g.coords(x));
            maps.alpha.push(md(v[0], m));
            maps.beta.push(md(v[1], m));
            maps.gamma.push(md(v[2], m));
            maps.phi.push(md(v[3], m));
            maps.lambda.push(md(v[4], m));
            maps.mu.push(md(v[5], m));
            maps.nu.push(md(v[6], m));
            maps.psi.push(md(v[7], m));
        }
        maps
    }

    /// Reads `xb` and `xd` off a table whose identity is `a`.
    pub fn from_nearring(nr: &Nearring) -> Result<Self> {
        let g = nr.group();
        let p = g.spec().prime;
        require_group(g, "G4", &[p; 4])?;
        require_identity_a(nr)?;
        let gens = g.generators();
        let (b, d) = (gens[1], gens[3]);
        Ok(Self::from_fn(g, |x| {
            let xi = index(g, x);
            let xb = g.coords(nr.mul(xi, b));
            let xd = g.coords(nr.mul(xi, d));
            [xb[0], xb[1], xb[2], xb[3], xd[0], xd[1], xd[2], xd[3]].map(|v| v as i64)
        }))
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// `[α, β, γ, φ, λ, µ, ν, ψ]` at `x`.
    pub fn at(&self, x: usize) -> [i64; 8] {
        [
            self.alpha[x],
            self.beta[x],
            self.gamma[x],
            self.phi[x],
            self.lambda[x],
            self.mu[x],
            self.nu[x],
            self.psi[x],
        ]
        .map(|v| v as i64)
    }

    fn all(&self) -> [&Vec<u32>; 8] {
        [
            &self.alpha,
            &self.beta,
            &self.gamma,
            &self.phi,
            &self.lambda,
            &self.mu,
            &self.nu,
            &self.psi,
        ]
    }
}

/// Product `x*y` on G4(p) determined by the map values `m` at `x`.
///
/// This is the full expansion of `x*y = (x)y1 + (xb)y2 + (xc)y3 + (xd)y4`
/// with `xc = c(x1 β(x) - x2 α(x))`; when α and λ vanish it reduces to the
/// multiplication used by the G4 constructions.
pub fn g4_product(p: u32, x: &[u32], m: &[i64; 8], y: &[u32]) -> [u32; 4] {
    let q = p as i64;
    let [x1, x2, x3, x4] = [x[0], x[1], x[2], x[3]].map(|v| v as i64);
    let [y1, y2, y3, y4] = [y[0], y[1], y[2], y[3]].map(|v| v as i64);
    let [al, be, ga, ph, la, mu, nu, ps] = *m;
    let a = x1 * y1 + al * y2 + la * y4;
    let b = x2 * y1 + be * y2 + mu * y4;
    let c = -x1 * x2 * binom2(y1) - al * be * binom2(y2) - x2 * al * y1 * y2
        - la * mu * binom2(y4)
        - x2 * al * y3
        + x3 * y1
        + ga * y2
        + x1 * be * y3
        + nu * y4
        - x2 * la * y1 * y4
        - be * la * y2 * y4;
    let d = x4 * y1 + ph * y2 + ps * y4;
    [md(a, q), md(b, q), md(c, q), md(d, q)]
}

const G4_NAMES: [&str; 8] = ["alpha", "beta", "gamma", "phi", "lambda", "mu", "nu", "psi"];

/// Checks statements (0)-(8) for G4 structure maps. When α and λ vanish
/// identically the index-p statements apply (with (1) the vanishing itself
/// and (2) "β(x) = 0 implies x1 = 0"); otherwise the general ones.
pub fn check_g4_congruences(
    g: &GroupTable,
    maps: &G4Maps,
    zero_sym_expected: bool,
) -> Result<Vec<Violation>> {
    let p = g.spec().prime;
    require_group(g, "G4", &[p; 4])?;
    let n = g.order();
    if maps.len() != n || maps.p != p {
        return Err(Error::Precondition(format!(
            "structure maps cover {} elements mod {}, the group has {n} elements mod {p}",
            maps.len(),
            maps.p
        )));
    }
    let q = p as i64;
    let mut out = Vec::new();

    let zero_vanish = maps.all().iter().all(|m| m[0] == 0);
    if zero_vanish != zero_sym_expected {
        out.push(Violation {
            statement: 0,
            x: 0,
            y: None,
            detail: format!(
                "maps {} at 0 but zero-symmetry expected = {zero_sym_expected}",
                if zero_vanish { "vanish" } else { "do not vanish" }
            ),
        });
    }

    let special = maps.alpha.iter().chain(&maps.lambda).all(|&v| v == 0);
    if special {
        for x in 0..n {
            if maps.beta[x] == 0 && g.coords(x)[0] != 0 {
                out.push(Violation {
                    statement: 2,
                    x,
                    y: None,
                    detail: "beta(x) = 0 but x1 != 0".into(),
                });
            }
        }
    }

    for x in 0..n {
        let xc = g.coords(x);
        let mx = maps.at(x);
        let [x1, x2, x3, x4] = [xc[0], xc[1], xc[2], xc[3]].map(|v| v as i64);
        let [al, be, ga, ph, la, mu, nu, ps] = mx;
        for y in 0..n {
            let my = maps.at(y);
            let xy = index(g, &g4_product(p, xc, &mx, g.coords(y)));
            let lhs = maps.at(xy);
            let [ay, by, gy, fy, ly, uy, vy, sy] = my;
            // (statement, map slot, right-hand side)
            let checks: Vec<(u8, usize, i64)> = if special {
                vec![
                    (3, 1, be * by + mu * fy),
                    (4, 2, ga * by + x1 * be * gy + nu * fy),
                    (5, 3, ph * by + ps * fy),
                    (6, 5, be * uy + mu * sy),
                    (7, 6, ga * uy + x1 * be * vy + nu * sy),
                    (8, 7, ph * uy + ps * sy),
                ]
            } else {
                vec![
                    (1, 0, x1 * ay + al * by + la * fy),
                    (2, 1, x2 * ay + be * by + mu * fy),
                    (
                        3,
                        2,
                        -x1 * x2 * binom2(ay) - al * be * binom2(by) - x2 * al * ay * by
                            - la * mu * binom2(fy)
                            - x2 * al * gy
                            + x3 * ay
                            + ga * by
                            + x1 * be * gy
                            + nu * fy
                            - x2 * la * ay * fy
                            - be * la * by * fy,
                    ),
                    (4, 3, x4 * ay + ph * by + ps * fy),
                    (5, 4, x1 * ly + al * uy + la * sy),
                    (6, 5, x2 * ly + be * uy + mu * sy),
                    (
                        7,
                        6,
                        -x1 * x2 * binom2(ly) - al * be * binom2(uy) - x2 * al * ly * uy
                            - la * mu * binom2(sy)
                            - x2 * al * vy
                            + x3 * ly
                            + ga * uy
                            + x1 * be * vy
                            + nu * sy
                            - x2 * la * ly * sy
                            - be * la * uy * sy,
                    ),
                    (8, 7, x4 * ly + ph * uy + ps * sy),
                ]
            };
            for (statement, slot, rhs) in checks {
                let rhs = rhs.rem_euclid(q);
                if lhs[slot] != rhs {
                    out.push(Violation {
                        statement,
                        x,
                        y: Some(y),
                        detail: format!("{}(xy) = {} but the right side is {rhs}", G4_NAMES[slot], lhs[slot]),
                    });
                }
            }
        }
    }
    Ok(out)
}

impl G5Maps {
    /// `f` returns `[α, β, γ, ν, µ, φ]`.
    pub fn from_fn(g: &GroupTable, f: impl Fn(&[u32]) -> [i64; 6]) -> Self {
        let p = g.spec().prime;
        let (m, m2) = (p as i64, (p * p) as i64);
        let n = g.order();
        let mut maps = G5Maps {
            p,
            alpha: Vec::with_capacity(n),
            beta: Vec::with_capacity(n),
            gamma: Vec::with_capacity(n),
            nu: Vec::with_capacity(n),
            mu: Vec::with_capacity(n),
            phi: Vec::with_capacity(n),
        };
        for x in 0..n {
            let v = f(g.coords(x));
            maps.alpha.push(md(v[0], m2));
            maps.beta.push(md(v[1], m));
            maps.gamma.push(md(v[2], m));
            maps.nu.push(md(v[3], m2));
            maps.mu.push(md(v[4], m));
            maps.phi.push(md(v[5], m));
        }
        maps
    }

    /// Reads `xb` and `xc` off a table whose identity is `a`.
    pub fn from_nearring(nr: &Nearring) -> Result<Self> {
        let g = nr.group();
        let p = g.spec().prime;
        require_group(g, "G5", &[p * p, p, p])?;
        require_identity_a(nr)?;
        let gens = g.generators();
        let (b, c) = (gens[1], gens[2]);
        Ok(Self::from_fn(g, |x| {
            let xi = index(g, x);
            let xb = g.coords(nr.mul(xi, b));
            let xc = g.coords(nr.mul(xi, c));
            [xb[0], xb[1], xb[2], xc[0], xc[1], xc[2]].map(|v| v as i64)
        }))
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// `[α, β, γ, ν, µ, φ]` at `x`.
    pub fn at(&self, x: usize) -> [i64; 6] {
        [
            self.alpha[x],
            self.beta[x],
            self.gamma[x],
            self.nu[x],
            self.mu[x],
            self.phi[x],
        ]
        .map(|v| v as i64)
    }
}

/// Product `x*y` on G5(p) for map values `m` at `x`. Exact when α and ν are
/// multiples of p, which associativity forces.
pub fn g5_product(p: u32, x: &[u32], m: &[i64; 6], y: &[u32]) -> [u32; 3] {
    let (q, q2) = (p as i64, (p * p) as i64);
    let [x1, x2, x3] = [x[0], x[1], x[2]].map(|v| v as i64);
    let [y1, y2, y3] = [y[0], y[1], y[2]].map(|v| v as i64);
    let [al, be, ga, nu, mu, ph] = *m;
    let a = x1 * y1 + al * y2 + x1 * x2 * binom2(y1) * q + nu * y3;
    let b = x2 * y1 + be * y2 + mu * y3;
    let c = x3 * y1 + ga * y2 + ph * y3;
    [md(a, q2), md(b, q), md(c, q)]
}

const G5_NAMES: [&str; 6] = ["alpha", "beta", "gamma", "nu", "mu", "phi"];

/// Checks statements (0)-(8) for G5 structure maps. Statement (0) is only
/// checked when the zero-symmetry of the nearring is given.
pub fn check_g5_congruences(
    g: &GroupTable,
    maps: &G5Maps,
    zero_sym_expected: Option<bool>,
) -> Result<Vec<Violation>> {
    let p = g.spec().prime;
    require_group(g, "G5", &[p * p, p, p])?;
    let n = g.order();
    if maps.len() != n || maps.p != p {
        return Err(Error::Precondition(format!(
            "structure maps cover {} elements mod {}, the group has {n} elements mod {p}",
            maps.len(),
            maps.p
        )));
    }
    let (q, q2) = (p as i64, (p * p) as i64);
    let mut out = Vec::new();

    if let Some(expected) = zero_sym_expected {
        let vanish = maps.at(0).iter().all(|&v| v == 0);
        if vanish != expected {
            out.push(Violation {
                statement: 0,
                x: 0,
                y: None,
                detail: format!(
                    "maps {} at 0 but zero-symmetry expected = {expected}",
                    if vanish { "vanish" } else { "do not vanish" }
                ),
            });
        }
    }

    let a = g.generators()[0];
    if maps.at(a) != [0, 1, 0, 0, 0, 1] {
        out.push(Violation {
            statement: 1,
            x: a,
            y: None,
            detail: format!("maps at a are {:?}, expected [0, 1, 0, 0, 0, 1]", maps.at(a)),
        });
    }

    for x in 0..n {
        if maps.alpha[x] % p != 0 || maps.nu[x] % p != 0 {
            out.push(Violation {
                statement: 2,
                x,
                y: None,
                detail: format!("alpha = {}, nu = {} not divisible by p", maps.alpha[x], maps.nu[x]),
            });
        }
    }

    for x in 0..n {
        let xc = g.coords(x);
        let mx = maps.at(x);
        let [x1, x2, x3] = [xc[0], xc[1], xc[2]].map(|v| v as i64);
        let [al, be, ga, nu, mu, ph] = mx;
        for y in 0..n {
            let xy = index(g, &g5_product(p, xc, &mx, g.coords(y)));
            let lhs = maps.at(xy);
            let [ay, by, gy, vy, uy, fy] = maps.at(y);
            let checks = [
                (3, 0, x1 * ay + al * by + x1 * x2 * binom2(ay) * q + nu * gy, q2),
                (4, 1, x2 * ay + be * by + mu * gy, q),
                (5, 2, x3 * ay + ga * by + ph * gy, q),
                (6, 3, x1 * vy + al * uy + x1 * x2 * binom2(vy) * q + nu * fy, q2),
                (7, 4, x2 * vy + be * uy + mu * fy, q),
                (8, 5, x3 * vy + ga * uy + ph * fy, q),
            ];
            for (statement, slot, rhs, modulus) in checks {
                let rhs = rhs.rem_euclid(modulus);
                if lhs[slot] != rhs {
                    out.push(Violation {
                        statement,
                        x,
                        y: Some(y),
                        detail: format!("{}(xy) = {} but the right side is {rhs}", G5_NAMES[slot], lhs[slot]),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    fn table(name: &str, p: u32) -> GroupTable {
        GroupTable::new(catalog(name, p).unwrap()).unwrap()
    }

    /// `x * y` evaluated through the group: `x*y1 + xb*y2 + xc*y3 + xd*y4`
    /// using scalar multiples and collection.
    fn g4_by_distributivity(g: &GroupTable, x: usize, m: &[i64; 8], y: usize) -> usize {
        let p = g.spec().prime as i64;
        let xc = g.coords(x);
        let w = |v: [i64; 4]| index(g, &v.map(|c| c.rem_euclid(p) as u32));
        let xb = w([m[0], m[1], m[2], m[3]]);
        let xd = w([m[4], m[5], m[6], m[7]]);
        let x_c = w([0, 0, xc[0] as i64 * m[1] - xc[1] as i64 * m[0], 0]);
        let yc = g.coords(y);
        let parts = [x, xb, x_c, xd];
        parts
            .iter()
            .zip(yc)
            .fold(0, |acc, (&t, &r)| g.add(acc, g.scalar(t, r as u64)))
    }

    #[test]
    fn g4_formula_matches_group_arithmetic() {
        let g = table("G4", 3);
        // deterministic spread of map values, including non-zero alpha and lambda
        for seed in 0..40u64 {
            let m: [i64; 8] = std::array::from_fn(|k| ((seed * 7 + k as u64 * 5 + seed * k as u64) % 3) as i64);
            for x in (0..81).step_by(7) {
                for y in 0..81 {
                    let f = index(&g, &g4_product(3, g.coords(x), &m, g.coords(y)));
                    assert_eq!(f, g4_by_distributivity(&g, x, &m, y), "maps {m:?}, x {x}, y {y}");
                }
            }
        }
    }

    #[test]
    fn g5_formula_matches_group_arithmetic() {
        let g = table("G5", 3);
        for seed in 0..30u64 {
            let r = |k: u64| ((seed * 11 + k * 3 + seed * k) % 3) as i64;
            // alpha and nu multiples of p
            let m = [3 * r(0), r(1), r(2), 3 * r(3), r(4), r(5)];
            let w = |v: [i64; 3]| index(&g, &[v[0].rem_euclid(9) as u32, v[1] as u32 % 3, v[2] as u32 % 3]);
            let xb = w([m[0], m[1], m[2]]);
            let xcm = w([m[3], m[4], m[5]]);
            for x in (0..81).step_by(5) {
                for y in 0..81 {
                    let yc = g.coords(y);
                    let expect = [x, xb, xcm]
                        .iter()
                        .zip(yc)
                        .fold(0, |acc, (&t, &r)| g.add(acc, g.scalar(t, r as u64)));
                    let f = index(&g, &g5_product(3, g.coords(x), &m, yc));
                    assert_eq!(f, expect, "maps {m:?}, x {x}, y {y}");
                }
            }
        }
    }

    #[test]
    fn wrong_group_is_rejected() {
        let g = table("G5", 3);
        let maps = G4Maps::from_fn(&g, |_| [0; 8]);
        assert!(matches!(check_g4_congruences(&g, &maps, true), Err(Error::Precondition(_))));
    }

    #[test]
    fn vanishing_beta_violates_statement_2() {
        let g = table("G4", 3);
        let maps = G4Maps::from_fn(&g, |_| [0; 8]);
        let v = check_g4_congruences(&g, &maps, true).unwrap();
        assert!(v.iter().any(|v| v.statement == 2 && g.coords(v.x)[0] != 0));
    }

    #[test]
    fn vanishing_phi_violates_statement_1() {
        let g = table("G5", 3);
        let maps = G5Maps::from_fn(&g, |_| [0, 1, 0, 0, 0, 0]);
        let v = check_g5_congruences(&g, &maps, None).unwrap();
        assert!(v.iter().any(|v| v.statement == 1));
    }
}
