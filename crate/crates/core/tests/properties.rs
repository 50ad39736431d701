mod common;

use std::sync::{Arc, OnceLock};

use common::*;
use localnr::constructions::Construction;
use localnr::nearring::{are_isomorphic, Nearring, NearringFile};
use localnr::pgroup::GroupTable;
use localnr::search::{enumerate_unital_nearrings, EndoSet, SearchConfig};
use proptest::prelude::*;

fn groups() -> &'static Vec<Arc<GroupTable>> {
    static G: OnceLock<Vec<Arc<GroupTable>>> = OnceLock::new();
    G.get_or_init(|| {
        let mut v = Vec::new();
        for p in [3, 5] {
            for name in ["G1", "G2", "G3", "G4", "G5", "G6"] {
                v.push(table(name, p));
            }
        }
        v
    })
}

fn built() -> &'static Vec<Nearring> {
    static N: OnceLock<Vec<Nearring>> = OnceLock::new();
    N.get_or_init(|| {
        let mut v: Vec<Nearring> = Construction::examples().iter().map(|c| c.build(3).unwrap()).collect();
        v.push(Construction::G3Metacyclic.build(5).unwrap());
        v.push("g4-pow-i(i=3)".parse::<Construction>().unwrap().build(5).unwrap());
        v.push("g5-ind".parse::<Construction>().unwrap().build(5).unwrap());
        v
    })
}

proptest! {
    #[test]
    fn addition_is_a_group_law(k in 0usize..12, x in 0usize..625, y in 0usize..625, z in 0usize..625) {
        let g = &groups()[k];
        let n = g.order();
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(g.add(g.add(x, y), z), g.add(x, g.add(y, z)));
        prop_assert_eq!(g.add(x, g.neg(x)), 0);
        prop_assert_eq!(g.add(0, x), x);
        prop_assert_eq!(times(g, x, g.order_of(x) as u64), 0);
    }

    #[test]
    fn built_tables_obey_the_axioms(k in 0usize..11, x in 0usize..625, y in 0usize..625, z in 0usize..625) {
        let nr = &built()[k];
        let g = nr.group();
        let n = g.order();
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(nr.mul(x, g.add(y, z)), g.add(nr.mul(x, y), nr.mul(x, z)));
        prop_assert_eq!(nr.mul(nr.mul(x, y), z), nr.mul(x, nr.mul(y, z)));
        let e = nr.identity().unwrap();
        prop_assert_eq!(nr.mul(e, x), x);
        prop_assert_eq!(nr.mul(x, e), x);
    }

    #[test]
    fn file_round_trip(k in 0usize..8) {
        let nr = &built()[k];
        let back = NearringFile::from_json(&NearringFile::from_nearring(nr).to_json().unwrap())
            .unwrap()
            .into_nearring()
            .unwrap();
        prop_assert_eq!(&back, nr);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelling_by_an_automorphism_is_detected(k in 0usize..37, a in 0usize..1000) {
        static R: OnceLock<(Vec<Nearring>, Vec<Vec<u8>>)> = OnceLock::new();
        let (reps, auts) = R.get_or_init(|| {
            let spec = localnr::catalog("16-3", 2).unwrap();
            let r = enumerate_unital_nearrings(&spec, &SearchConfig::local()).unwrap();
            let g = r.group_table().unwrap();
            let auts = EndoSet::new(&g).unwrap().automorphisms().map(<[u8]>::to_vec).collect();
            (r.nearrings().unwrap(), auts)
        });
        let nr = &reps[k % reps.len()];
        let s = &auts[a % auts.len()];
        let mut inv = vec![0usize; s.len()];
        for (x, &y) in s.iter().enumerate() {
            inv[y as usize] = x;
        }
        let moved = Nearring::from_fn(nr.group_arc().clone(), |x, y| s[nr.mul(inv[x], inv[y])] as usize).unwrap();
        let iso = are_isomorphic(nr, &moved).unwrap();
        prop_assert!(iso.is_some());
        // a different class is never isomorphic to it
        let other = &reps[(k + 1) % reps.len()];
        prop_assert!(are_isomorphic(other, &moved).unwrap().is_none());
    }
}
