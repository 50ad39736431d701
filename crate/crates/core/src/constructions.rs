//! Closed-form local nearrings on the class-2 groups of order p^4.
//!
//! Every builder evaluates its formula on all pairs and returns the dense
//! table; nothing here checks the axioms (that is the verifier's job).
//! Binomial coefficients are taken over the integers and reduced last.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::nearring::{g4_product, g5_product, G4Maps, G5Maps, Nearring};
use crate::pgroup::{catalog, is_prime, GroupTable};

/// Largest prime accepted by the builders (order 2401).
pub const MAX_BUILD_PRIME: u32 = 7;

pub const CONSTRUCTION_IDS: [&str; 7] = [
    "g3-metacyclic",
    "g1-k1",
    "g1-k2",
    "g4-pow-i",
    "g4-const",
    "g5-ind",
    "g5-const",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum G4Family {
    /// β(x) = ψ(x) = x1^i with 0 < i < p.
    PowerI(u32),
    /// β = ψ = 1.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum G5Family {
    /// β(x) = φ(x) = 1 if x1 is a unit mod p, else 0.
    Indicator,
    /// β = φ = 1.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    G3Metacyclic,
    G1 { k: u32 },
    G4(G4Family),
    G5(G5Family),
}

impl Construction {
    /// Parses a CLI identifier; `g4-pow-i` takes its exponent from `i`.
    pub fn parse(id: &str, i: Option<u32>) -> Result<Self> {
        Ok(match id {
            "g3-metacyclic" => Construction::G3Metacyclic,
            "g1-k1" => Construction::G1 { k: 1 },
            "g1-k2" => Construction::G1 { k: 2 },
            "g4-pow-i" => Construction::G4(G4Family::PowerI(i.ok_or_else(|| {
                Error::InvalidParameter("g4-pow-i needs an exponent i".into())
            })?)),
            "g4-const" => Construction::G4(G4Family::Constant),
            "g5-ind" => Construction::G5(G5Family::Indicator),
            "g5-const" => Construction::G5(G5Family::Constant),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown construction `{other}` (expected one of {})",
                    CONSTRUCTION_IDS.join(", ")
                )))
            }
        })
    }

    pub fn group_name(&self) -> &'static str {
        match self {
            Construction::G3Metacyclic => "G3",
            Construction::G1 { .. } => "G1",
            Construction::G4(_) => "G4",
            Construction::G5(_) => "G5",
        }
    }

    pub fn build(&self, p: u32) -> Result<Nearring> {
        match *self {
            Construction::G3Metacyclic => build_g3_metacyclic(p),
            Construction::G1 { k } => build_g1(p, k),
            Construction::G4(f) => build_g4(p, f),
            Construction::G5(f) => build_g5(p, f),
        }
    }

    /// The seven instances checked at p = 3.
    pub fn examples() -> Vec<Construction> {
        vec![
            Construction::G3Metacyclic,
            Construction::G1 { k: 1 },
            Construction::G1 { k: 2 },
            Construction::G4(G4Family::PowerI(1)),
            Construction::G4(G4Family::PowerI(2)),
            Construction::G4(G4Family::Constant),
            Construction::G5(G5Family::Indicator),
            Construction::G5(G5Family::Constant),
        ]
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::G3Metacyclic => write!(f, "g3-metacyclic"),
            Construction::G1 { k } => write!(f, "g1-k{k}"),
            Construction::G4(G4Family::PowerI(i)) => write!(f, "g4-pow-i(i={i})"),
            Construction::G4(G4Family::Constant) => write!(f, "g4-const"),
            Construction::G5(G5Family::Indicator) => write!(f, "g5-ind"),
            Construction::G5(G5Family::Constant) => write!(f, "g5-const"),
        }
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("g4-pow-i") {
            let i = rest
                .trim_start_matches(['(', '=', ':'])
                .trim_start_matches("i=")
                .trim_end_matches(')');
            let i = i
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad exponent in `{s}`")))?;
            return Construction::parse("g4-pow-i", Some(i));
        }
        Construction::parse(s, None)
    }
}

fn check_p(p: u32) -> Result<()> {
    if !is_prime(p) || p % 2 == 0 || p > MAX_BUILD_PRIME {
        return Err(Error::InvalidParameter(format!(
            "p = {p}: constructions need an odd prime p <= {MAX_BUILD_PRIME}"
        )));
    }
    Ok(())
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn group(name: &str, p: u32) -> Result<Arc<GroupTable>> {
    Ok(Arc::new(GroupTable::new(catalog(name, p)?)?))
}

/// Builds the table from a coordinate formula, one row per task.
fn tabulate(g: Arc<GroupTable>, f: impl Fn(&[u32], &[u32]) -> Vec<i64> + Sync + Send) -> Result<Nearring> {
    let n = g.order();
    let orders = g.spec().gen_orders.clone();
    let rows = Exec::default().map_range(0..n, |x| {
        let xc = g.coords(x);
        (0..n)
            .map(|y| {
                let v = f(xc, g.coords(y));
                v.iter()
                    .zip(&orders)
                    .fold(0usize, |acc, (&c, &m)| acc * m as usize + c.rem_euclid(m as i64) as usize)
                    as u16
            })
            .collect::<Vec<u16>>()
    });
    Nearring::new(g.clone(), rows.concat())
}

/// `x*y = a(x1 y1 + p^2 x1 x2 C(y1,2)) + b(x2 y1 + β(x) y2)` on
/// `C_{p^3} : C_p`, with β the indicator of `x1` being a unit mod p.
pub fn build_g3_metacyclic(p: u32) -> Result<Nearring> {
    check_p(p)?;
    let q = p as i64;
    tabulate(group("G3", p)?, move |x, y| {
        let [x1, x2] = [x[0], x[1]].map(|v| v as i64);
        let [y1, y2] = [y[0], y[1]].map(|v| v as i64);
        let beta = (x1 % q != 0) as i64;
        vec![x1 * y1 + q * q * x1 * x2 * binom2(y1), x2 * y1 + beta * y2]
    })
}

/// `x*y = a(x1 y1 + p^k x2 y2) + b(x2 y1 + x1 y2)
///       + c(-x1 x2 C(y1,2) + x3 y1 + x1^2 y3)` on G1, k in {1, 2}.
///
/// For k = 2 the `p^2 x2 y2` term vanishes since `a` has order p^2.
pub fn build_g1(p: u32, k: u32) -> Result<Nearring> {
    check_p(p)?;
    if !(k == 1 || k == 2) {
        return Err(Error::InvalidParameter(format!("k = {k}: expected 1 or 2")));
    }
    let pk = (p as i64).pow(k);
    tabulate(group("G1", p)?, move |x, y| {
        let [x1, x2, x3] = [x[0], x[1], x[2]].map(|v| v as i64);
        let [y1, y2, y3] = [y[0], y[1], y[2]].map(|v| v as i64);
        vec![
            x1 * y1 + pk * x2 * y2,
            x2 * y1 + x1 * y2,
            -x1 * x2 * binom2(y1) + x3 * y1 + x1 * x1 * y3,
        ]
    })
}

pub fn g4_family_maps(g: &GroupTable, family: G4Family) -> Result<G4Maps> {
    let p = g.spec().prime;
    let q = p as i64;
    if let G4Family::PowerI(i) = family {
        if i == 0 || i >= p {
            return Err(Error::InvalidParameter(format!("i = {i} out of range (0 < i < p = {p})")));
        }
    }
    Ok(G4Maps::from_fn(g, |x| {
        let v = match family {
            G4Family::PowerI(i) => (x[0] as i64).pow(i) % q,
            G4Family::Constant => 1,
        };
        // α β γ φ λ µ ν ψ
        [0, v, 0, 0, 0, 0, 0, v]
    }))
}

pub fn g5_family_maps(g: &GroupTable, family: G5Family) -> G5Maps {
    let p = g.spec().prime;
    G5Maps::from_fn(g, |x| {
        let v = match family {
            G5Family::Indicator => (x[0] % p != 0) as i64,
            G5Family::Constant => 1,
        };
        // α β γ ν µ φ
        [0, v, 0, 0, 0, v]
    })
}

/// The multiplication of G4 with γ = φ = µ = ν = 0 and β = ψ from `family`.
pub fn build_g4(p: u32, family: G4Family) -> Result<Nearring> {
    check_p(p)?;
    let g = group("G4", p)?;
    let maps = g4_family_maps(&g, family)?;
    let gi = g.clone();
    tabulate(g, move |x, y| {
        let m = maps.at(gi.spec().index_of(&crate::Element(x.to_vec())));
        g4_product(p, x, &m, y).iter().map(|&v| v as i64).collect()
    })
}

/// The multiplication of G5 with α = γ = µ = ν = 0 and β = φ from `family`.
pub fn build_g5(p: u32, family: G5Family) -> Result<Nearring> {
    check_p(p)?;
    let g = group("G5", p)?;
    let maps = g5_family_maps(&g, family);
    let gi = g.clone();
    tabulate(g, move |x, y| {
        let m = maps.at(gi.spec().index_of(&crate::Element(x.to_vec())));
        g5_product(p, x, &m, y).iter().map(|&v| v as i64).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nearring::{check_g4_congruences, check_g5_congruences, locality_report, verify_axioms};
    use crate::Element;

    fn el(nr: &Nearring, c: &[u32]) -> usize {
        nr.group().spec().index_of(&Element(c.to_vec()))
    }

    fn prod(nr: &Nearring, x: &[u32], y: &[u32]) -> Vec<u32> {
        nr.group().coords(nr.mul(el(nr, x), el(nr, y))).to_vec()
    }

    #[test]
    fn g3_entries() {
        let nr = build_g3_metacyclic(3).unwrap();
        assert_eq!(prod(&nr, &[1, 0], &[0, 1]), vec![0, 1]);
        assert_eq!(prod(&nr, &[0, 1], &[0, 1]), vec![0, 0]);
        let a = el(&nr, &[1, 0]);
        assert!((0..81).all(|x| nr.mul(x, a) == x));
        assert_eq!(nr.identity(), Some(a));
    }

    #[test]
    fn g4_entries() {
        let nr = build_g4(3, G4Family::PowerI(1)).unwrap();
        assert_eq!(prod(&nr, &[0, 1, 0, 0], &[0, 1, 0, 0]), vec![0, 0, 0, 0]);
        let c = build_g4(3, G4Family::Constant).unwrap();
        let a = el(&c, &[1, 0, 0, 0]);
        assert!((0..81).all(|y| c.mul(a, y) == y));
    }

    #[test]
    fn g5_entries() {
        let ind = build_g5(3, G5Family::Indicator).unwrap();
        assert_eq!(prod(&ind, &[0, 1, 0], &[0, 0, 1]), vec![0, 0, 0]);
        let cst = build_g5(3, G5Family::Constant).unwrap();
        assert_eq!(prod(&cst, &[0, 1, 0], &[0, 0, 1]), vec![0, 0, 1]);
        let a = el(&cst, &[1, 0, 0]);
        assert!((0..81).all(|x| cst.mul(x, a) == x && ind.mul(x, a) == x));
    }

    #[test]
    fn parameters_are_validated() {
        assert!(matches!(build_g4(3, G4Family::PowerI(5)), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_g4(3, G4Family::PowerI(0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_g1(3, 3), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_g3_metacyclic(11), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_g5(2, G5Family::Constant), Err(Error::InvalidParameter(_))));
        assert!(Construction::parse("g9", None).is_err());
        assert_eq!("g4-pow-i(i=2)".parse::<Construction>().unwrap(), Construction::G4(G4Family::PowerI(2)));
        for c in Construction::examples() {
            assert_eq!(c.to_string().parse::<Construction>().unwrap(), c);
        }
    }

    #[test]
    fn families_satisfy_congruences_and_match_tables() {
        for p in [3, 5] {
            for fam in [G4Family::PowerI(1), G4Family::PowerI(p - 1), G4Family::Constant] {
                let nr = build_g4(p, fam).unwrap();
                let maps = g4_family_maps(nr.group(), fam).unwrap();
                assert_eq!(G4Maps::from_nearring(&nr).unwrap(), maps);
                let zs = (0..nr.order()).all(|x| nr.mul(0, x) == 0);
                assert_eq!(zs, fam != G4Family::Constant);
                let v = check_g4_congruences(nr.group(), &maps, zs).unwrap();
                assert!(v.is_empty(), "{p} {fam:?} {:?}", &v[..v.len().min(3)]);
            }
            for fam in [G5Family::Indicator, G5Family::Constant] {
                let nr = build_g5(p, fam).unwrap();
                let maps = g5_family_maps(nr.group(), fam);
                assert_eq!(G5Maps::from_nearring(&nr).unwrap(), maps);
                let zs = (0..nr.order()).all(|x| nr.mul(0, x) == 0);
                assert_eq!(zs, fam != G5Family::Constant);
                assert!(check_g5_congruences(nr.group(), &maps, Some(zs)).unwrap().is_empty());
                assert!(!check_g5_congruences(nr.group(), &maps, Some(!zs)).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn built_tables_are_local() {
        for c in Construction::examples() {
            let nr = c.build(3).unwrap();
            let rep = locality_report(&nr).unwrap_or_else(|e| panic!("{c}: {e}"));
            assert!(rep.is_local, "{c}");
            assert_eq!(rep.l.len(), 27, "{c}");
        }
        assert!(verify_axioms(&build_g1(3, 1).unwrap()).is_zero_symmetric);
    }
}
