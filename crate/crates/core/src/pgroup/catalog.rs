//! Concrete presentations used throughout the crate.
//!
//! The six class-2 groups of order p^4 (p odd) keep the generator order
//! a, b, c, d of their classical presentations so coordinate formulas carry
//! over unchanged. The order-16 groups are labelled by their SmallGroups id.

use super::GroupSpec;
use crate::error::{Error, Result};

pub const P4_NAMES: [&str; 6] = ["G1", "G2", "G3", "G4", "G5", "G6"];
pub const ORDER16_NAMES: [&str; 6] = ["16-3", "16-4", "16-6", "16-11", "16-12", "16-13"];
pub const CALIBRATION_NAMES: [&str; 5] = ["Cp", "Cp2_cyclic", "Cp2_elem_abelian", "D8", "Q8"];

/// Every identifier accepted by [`catalog`].
pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    P4_NAMES
        .iter()
        .chain(ORDER16_NAMES.iter())
        .chain(CALIBRATION_NAMES.iter())
        .copied()
}

fn require(name: &str, p: u32, ok: bool, reason: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPrime {
            name: name.to_string(),
            p,
            reason,
        })
    }
}

fn normalize(name: &str) -> String {
    // accept "[16,3]" and "16,3" as spellings of "16-3"
    let t: String = name.chars().filter(|c| !matches!(c, '[' | ']' | ' ')).collect();
    t.replace(',', "-")
}

pub fn catalog(name: &str, p: u32) -> Result<GroupSpec> {
    let name = normalize(name);
    let name = name.as_str();
    let odd = super::is_prime(p) && p % 2 == 1;
    if P4_NAMES.contains(&name) {
        require(name, p, odd, "the order-p^4 catalog needs an odd prime")?;
    } else if ORDER16_NAMES.contains(&name) || matches!(name, "D8" | "Q8") {
        require(name, p, p == 2, "2-group catalog entries need p = 2")?;
    } else if CALIBRATION_NAMES.contains(&name) {
        require(name, p, super::is_prime(p), "p must be prime")?;
    } else {
        return Err(Error::UnknownGroup(name.to_string()));
    }

    let p2 = p * p;
    let p3 = p2 * p;
    let g = |orders: Vec<u32>, comms: &[(usize, usize, Vec<u32>)], powers: &[(usize, Vec<u32>)]| {
        GroupSpec::from_relations(name, p, orders, comms, powers)
    };
    match name {
        // c = [a, b] central of order p
        "G1" => g(vec![p2, p, p], &[(0, 1, vec![0, 0, 1])], &[]),
        // [b, a] = b^p, so -a - b + a + b = -bp
        "G2" => g(vec![p2, p2], &[(0, 1, vec![0, p2 - p])], &[]),
        // [b, a] = a^{p^2}; equivalently -b + a + b = a(1 - p^2)
        "G3" => g(vec![p3, p], &[(0, 1, vec![p3 - p2, 0])], &[]),
        // a + b = b + a + c
        "G4" => g(vec![p, p, p, p], &[(0, 1, vec![0, 0, 1, 0])], &[]),
        // a + b = b + a(1 - p)
        "G5" => g(vec![p2, p, p], &[(0, 1, vec![p2 - p, 0, 0])], &[]),
        // c + b = b + c + ap
        "G6" => g(vec![p2, p, p], &[(1, 2, vec![p2 - p, 0, 0])], &[]),

        // (C4 x C2) : C2 = <a, b, c | c^-1 a c = ab>
        "16-3" => g(vec![4, 2, 2], &[(0, 2, vec![0, 1, 0])], &[]),
        // C4 : C4 = <a, b | b^-1 a b = a^-1>
        "16-4" => g(vec![4, 4], &[(0, 1, vec![2, 0])], &[]),
        // C8 : C2 = <a, b | b a b = a^5>
        "16-6" => g(vec![8, 2], &[(0, 1, vec![4, 0])], &[]),
        // C2 x D8 = <r, s> x <z>
        "16-11" => g(vec![4, 2, 2], &[(0, 1, vec![2, 0, 0])], &[]),
        // C2 x Q8 = <i, j | j^2 = i^2> x <z>
        "16-12" => g(vec![4, 2, 2], &[(0, 1, vec![2, 0, 0])], &[(1, vec![2, 0, 0])]),
        // C4 o D8 = <r, s, x | x central, x^2 = r^2>
        "16-13" => g(vec![4, 2, 2], &[(0, 1, vec![2, 0, 0])], &[(2, vec![2, 0, 0])]),

        "Cp" => g(vec![p], &[], &[]),
        "Cp2_cyclic" => g(vec![p2], &[], &[]),
        "Cp2_elem_abelian" => g(vec![p, p], &[], &[]),
        "D8" => g(vec![4, 2], &[(0, 1, vec![2, 0])], &[]),
        "Q8" => g(vec![4, 2], &[(0, 1, vec![2, 0])], &[(1, vec![2, 0])]),
        _ => unreachable!("name checked above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_groups_have_documented_orders() {
        let g4 = catalog("G4", 3).unwrap();
        assert_eq!(g4.order(), 81);
        assert_eq!(g4.gen_orders, vec![3, 3, 3, 3]);
        let g5 = catalog("G5", 3).unwrap();
        assert_eq!(g5.order(), 81);
        assert_eq!(g5.gen_orders, vec![9, 3, 3]);
        let g3 = catalog("G3", 3).unwrap();
        assert_eq!(g3.order(), 81);
        assert_eq!(g3.gen_orders, vec![27, 3]);
        for name in P4_NAMES {
            assert_eq!(catalog(name, 5).unwrap().order(), 625);
        }
        for name in ORDER16_NAMES {
            assert_eq!(catalog(name, 2).unwrap().order(), 16);
        }
    }

    #[test]
    fn rejects_unknown_and_bad_primes() {
        assert!(matches!(catalog("G9", 3), Err(Error::UnknownGroup(_))));
        assert!(matches!(catalog("G4", 2), Err(Error::InvalidPrime { .. })));
        assert!(matches!(catalog("G4", 9), Err(Error::InvalidPrime { .. })));
        assert!(matches!(catalog("16-3", 3), Err(Error::InvalidPrime { .. })));
        assert!(matches!(catalog("Cp", 4), Err(Error::InvalidPrime { .. })));
    }

    #[test]
    fn accepts_bracket_spelling() {
        assert_eq!(catalog("[16,12]", 2).unwrap().name, "16-12");
    }
}
