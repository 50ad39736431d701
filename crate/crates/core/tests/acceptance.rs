//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use localnr::constructions::{Construction, G4Family, G5Family};
use localnr::nearring::{
    check_g4_congruences, check_g5_congruences, locality_report, structural_invariants, verify_axioms,
    G4Maps, G5Maps, Nearring,
};
use localnr::pgroup::catalog;
use localnr::search::{conjecture1_check, enumerate_unital_nearrings, filter_local, SearchConfig, SearchReport};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn search(name: &str, p: u32, cfg: &SearchConfig) -> Result<SearchReport, String> {
    let spec = catalog(name, p).map_err(|e| e.to_string())?;
    enumerate_unital_nearrings(&spec, cfg).map_err(|e| e.to_string())
}

fn criterion1() -> Outcome {
    let mut n = 0;
    for c in Construction::examples() {
        let nr = c.build(3).map_err(|e| e.to_string())?;
        let ax = verify_axioms(&nr);
        ensure(ax.is_nearring_with_identity(), || format!("{c}: {ax:?}"))?;
        let rep = locality_report(&nr).map_err(|e| e.to_string())?;
        ensure(rep.is_local, || format!("{c}: not local"))?;
        n += 1;
    }
    Ok(format!("{n} tables at p=3 are local nearrings with identity"))
}

fn zero_symmetric(nr: &Nearring) -> bool {
    nr.row(0).iter().all(|&v| v == 0)
}

fn congruence_violations(nr: &Nearring) -> Result<usize, String> {
    let g = nr.group();
    let zs = zero_symmetric(nr);
    let v = match g.spec().name.as_str() {
        "G4" => G4Maps::from_nearring(nr).and_then(|m| check_g4_congruences(g, &m, zs)),
        _ => G5Maps::from_nearring(nr).and_then(|m| check_g5_congruences(g, &m, Some(zs))),
    };
    v.map(|v| v.len()).map_err(|e| e.to_string())
}

fn criterion2() -> Outcome {
    let mut checked = 0;
    for p in [3u32, 5] {
        let mut fams: Vec<Construction> = (1..p).map(|i| Construction::G4(G4Family::PowerI(i))).collect();
        fams.push(Construction::G4(G4Family::Constant));
        fams.push(Construction::G5(G5Family::Indicator));
        fams.push(Construction::G5(G5Family::Constant));
        for c in fams {
            let nr = c.build(p).map_err(|e| e.to_string())?;
            let v = congruence_violations(&nr)?;
            ensure(v == 0, || format!("{c} at p={p}: {v} violations"))?;
            checked += 1;
        }
    }
    // single-entry corruptions at p=3, at fixed positions
    let mut caught = 0;
    let mut by_congruence = 0;
    for c in [
        Construction::G4(G4Family::PowerI(1)),
        Construction::G4(G4Family::Constant),
        Construction::G5(G5Family::Indicator),
    ] {
        let nr = c.build(3).map_err(|e| e.to_string())?;
        let g = nr.group_arc().clone();
        let gens = g.generators();
        let mut spots: Vec<(usize, usize)> = (0..12).map(|k| ((7 * k + 5) % 81, (11 * k + 3) % 81)).collect();
        spots.extend((0..8).map(|k| ((13 * k + 2) % 81, gens[1 + k % (gens.len() - 1)])));
        for (x, y) in spots {
            let bad = nr.with_entry(x, y, (nr.mul(x, y) + 1) % 81).map_err(|e| e.to_string())?;
            let ax = verify_axioms(&bad);
            let by_cong = congruence_violations(&bad).map_or(true, |v| v > 0);
            by_congruence += by_cong as usize;
            ensure(!ax.is_nearring_with_identity() || by_cong, || {
                format!("{c}: corruption at ({x}, {y}) undetected")
            })?;
            caught += 1;
        }
    }
    Ok(format!(
        "{checked} families clean at p=3,5; {caught}/{caught} corruptions detected ({by_congruence} also by congruences)"
    ))
}

fn criterion3() -> Outcome {
    let mut n = 0;
    for p in [3, 5] {
        n += g4_commutator_law(p)?;
        n += g4_multiple_law(p)?;
        n += g5_laws(p)?;
    }
    Ok(format!("{n} closed-form evaluations equal repeated addition"))
}

fn criterion4() -> Outcome {
    let c9 = search("Cp2_cyclic", 3, &SearchConfig::local())?;
    ensure(c9.iso_class_count == 1, || format!("C9: {} classes", c9.iso_class_count))?;
    let e9 = search("Cp2_elem_abelian", 3, &SearchConfig::local())?;
    let l3: Vec<_> = e9.local_with_l_order(3).collect();
    let zs = l3.iter().filter(|r| r.is_zero_symmetric).count();
    ensure(l3.len() == 3 && zs == 2, || format!("C3xC3: {} classes, {zs} zero-symmetric", l3.len()))?;
    Ok("C9: 1 class; C3xC3 with |L|=3: 3 classes, 2 zero-symmetric".into())
}

fn criterion5() -> Outcome {
    let d8 = search("D8", 2, &SearchConfig::unital())?;
    let d8_local = filter_local(&d8).map_err(|e| e.to_string())?.iso_class_count;
    ensure(d8.local_count == 0 && d8_local == 0, || format!("D8: {} local tables", d8.local_count))?;
    let q8 = search("Q8", 2, &SearchConfig::unital())?;
    ensure(q8.unital_class_count == 0, || format!("Q8: {} unital classes", q8.unital_class_count))?;
    Ok(format!("D8: 0 local ({} unital classes); Q8: 0 unital", d8.unital_class_count))
}

fn criterion6() -> Outcome {
    let want = [("16-3", 37), ("16-4", 24), ("16-6", 33), ("16-12", 2), ("16-11", 0), ("16-13", 0)];
    let mut got = Vec::new();
    for (name, n) in want {
        let r = search(name, 2, &SearchConfig::local())?;
        ensure(r.complete && r.iso_class_count == n, || {
            format!("{name}: {} classes, expected {n}", r.iso_class_count)
        })?;
        got.push(format!("{name}:{}", r.iso_class_count));
    }
    Ok(got.join(" "))
}

fn criterion7() -> Outcome {
    let mut tables: Vec<(String, Nearring)> = Vec::new();
    for c in Construction::examples() {
        tables.push((c.to_string(), c.build(3).map_err(|e| e.to_string())?));
    }
    for (name, p) in [
        ("G1", 3),
        ("G3", 3),
        ("16-3", 2),
        ("16-4", 2),
        ("16-6", 2),
        ("16-12", 2),
        ("Cp2_cyclic", 3),
        ("Cp2_elem_abelian", 3),
    ] {
        let r = search(name, p, &SearchConfig::local())?;
        for (k, nr) in r.nearrings().map_err(|e| e.to_string())?.into_iter().enumerate() {
            tables.push((format!("{name}#{k}"), nr));
        }
    }
    let mut non_abelian = 0;
    for (name, nr) in &tables {
        let s = structural_invariants(nr).map_err(|e| format!("{name}: {e}"))?;
        ensure(s.all_hold(), || format!("{name}: {s:?}"))?;
        non_abelian += s.noncyclic_l_of_order_p2_or_p3.is_some() as usize;
    }
    Ok(format!(
        "{} local tables satisfy all invariants ({non_abelian} on non-abelian groups of order p^4)",
        tables.len()
    ))
}

fn criterion8() -> Outcome {
    let r = conjecture1_check(3, &SearchConfig::default()).map_err(|e| e.to_string())?;
    if let Some(rep) = r.representatives.first() {
        return Err(format!("counterexample table: {:?}", rep.mul));
    }
    ensure(r.complete, || "search did not complete".into())?;
    ensure(r.local_count == 0, || format!("{} local tables", r.local_count))?;
    Ok(format!(
        "G6(3): search complete, local_count 0 ({} identity orbits, {} nodes)",
        r.identity_orbits_tried, r.stats.nodes_visited
    ))
}

fn main() -> ExitCode {
    let criteria: [(u8, fn() -> Outcome); 8] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
    ];
    let mut failed = 0;
    for (k, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("criterion {k}: PASS  {msg}  [{:.2?}]", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL  {msg}  [{:.2?}]", t.elapsed());
            }
        }
    }
    println!("acceptance: {}/8 passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
