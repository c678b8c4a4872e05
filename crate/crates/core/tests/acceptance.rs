//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact (set equality, flag equality, byte equality); no tolerances apply.

mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{indices, Naive};
use polynuclei::axioms::{check_associativity, check_polygroup, check_reproduction, classify};
use polynuclei::construct::{
    double_coset_algebra, groups, quotient_hypergroup, subgroups, SubgroupSpec,
};
use polynuclei::fixtures::{find, NucleusClaim};
use polynuclei::io::{parse_structure_file, serialize_structure};
use polynuclei::nuclei::{classical_nuclei, verify_containment_theorems, Strategy};
use polynuclei::search::{
    random_hypergroupoid, random_singleton_table, search_structures, SearchSpec,
};
use polynuclei::{
    nucleus, nucleus_bruteforce, ElementSet, Flag, HyperTable, NucleusOrder, NucleusSide,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const TABLES: [&str; 9] = [
    "tab1", "tab2", "tab3", "tab4", "tab5", "tab6", "tab7", "tab8", "tab9",
];

const DENSITIES: [f64; 4] = [0.2, 0.35, 0.5, 0.7];

fn table(id: &str) -> HyperTable {
    find(id).expect("fixture exists").bundle().table
}

fn random_table(i: u64, max_order: u64) -> HyperTable {
    let order = (1 + i % max_order) as usize;
    random_hypergroupoid(order, DENSITIES[i as usize % 4], i).expect("valid parameters")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn claim_sets(t: &HyperTable, c: &NucleusClaim) -> ([ElementSet; 3], ElementSet) {
    let set = |ls: &[&str]| -> ElementSet { ls.iter().map(|l| t.index_of(l).unwrap()).collect() };
    ([set(c.left), set(c.middle), set(c.right)], set(c.all))
}

fn fast_nuclei_match(
    id: &str,
    t: &HyperTable,
    sides: [ElementSet; 3],
    all: ElementSet,
) -> Result<(), String> {
    for order in NucleusOrder::ALL {
        let mut inter = t.carrier();
        for side in NucleusSide::ALL {
            let got = nucleus(t, order, side);
            inter &= got;
            ensure(got == sides[side as usize], || {
                format!(
                    "{id} N{order}_{side} = {} expected {}",
                    t.format_set(got),
                    t.format_set(sides[side as usize])
                )
            })?;
        }
        ensure(inter == all, || {
            format!("{id} N{order} = {}", t.format_set(inter))
        })?;
    }
    Ok(())
}

fn brute_matches(
    id: &str,
    t: &HyperTable,
    orders: &[NucleusOrder],
    cap: usize,
) -> Result<usize, String> {
    let mut n = 0;
    for &order in orders {
        for side in NucleusSide::ALL {
            let brute =
                nucleus_bruteforce(t, order, side, cap).map_err(|e| format!("{id}: {e}"))?;
            ensure(brute == nucleus(t, order, side), || {
                format!(
                    "{id} N{order}_{side}: oracle {} vs fast path",
                    t.format_set(brute)
                )
            })?;
            n += 1;
        }
    }
    Ok(n)
}

fn c1_classification() -> Check {
    let mut checks = 0;
    let mut flag = |id: &str, f: Flag, want: bool| -> Result<(), String> {
        let b = find(id).unwrap().bundle();
        let got = classify(&b).map_err(|e| e.to_string())?.get(f).as_bool();
        checks += 1;
        ensure(got == Some(want), || {
            format!("{id}: {f} = {got:?}, expected {want}")
        })
    };
    flag("tab1", Flag::Hypergroupoid, true)?;
    flag("tab1", Flag::Quasihypergroup, false)?;
    flag("tab1", Flag::Polyquasigroup, false)?;
    flag("tab1", Flag::Polyloop, false)?;
    for id in ["ex32_bundle_1", "ex32_bundle_2", "ex32_bundle_3"] {
        flag(id, Flag::Polyquasigroup, true)?;
        flag(id, Flag::Polyloop, false)?;
    }
    for id in ["ex33_bundle_1", "ex33_bundle_2", "ex33_bundle_3"] {
        flag(id, Flag::Polyquasigroup, true)?;
        flag(id, Flag::Polyloop, true)?;
    }
    for id in ["tab8", "ex34"] {
        flag(id, Flag::Polyquasigroup, true)?;
        flag(id, Flag::Tallini1, true)?;
        flag(id, Flag::Tallini2, false)?;
    }
    for id in ["tab9", "ex35"] {
        flag(id, Flag::Polyloop, true)?;
        flag(id, Flag::Tallini1, true)?;
        flag(id, Flag::Tallini2, false)?;
    }
    for (id, want) in [
        ("ex32_bundle_1", None),
        ("ex32_bundle_2", None),
        ("ex32_bundle_3", None),
        ("ex33_bundle_1", Some("1")),
        ("ex33_bundle_2", Some("1")),
        ("ex33_bundle_3", Some("1")),
        ("tab9", Some("e")),
    ] {
        let b = find(id).unwrap().bundle();
        let p = classify(&b).map_err(|e| e.to_string())?;
        let got = p.identity.map(|e| b.table.name(e).to_string());
        ensure(got.as_deref() == want, || {
            format!("{id}: identity {got:?}, expected {want:?}")
        })?;
        if id.starts_with("ex3") {
            ensure(!p.derived_divisions, || {
                format!("{id}: supplied divisions were not used")
            })?;
        }
        checks += 1;
    }
    Ok(format!("{checks} exact flag/identity checks"))
}

fn c2_tallini_nuclei() -> Check {
    let mut brute = 0;
    for (ids, claim) in [
        (
            ["tab8", "ex34"],
            find("tab8").unwrap().expected.nuclei.unwrap(),
        ),
        (
            ["tab9", "ex35"],
            find("tab9").unwrap().expected.nuclei.unwrap(),
        ),
    ] {
        for id in ids {
            let t = table(id);
            let (sides, all) = claim_sets(&t, &claim);
            fast_nuclei_match(id, &t, sides, all)?;
            brute += brute_matches(id, &t, &[NucleusOrder::Second, NucleusOrder::Third], 13)?;
        }
    }
    Ok(format!(
        "orders 1-4 equal the published sets; {brute} order-2/3 oracle cross-checks at cap 13; order-4 oracle skipped (n = 12, 13 exceeds the pair cap)"
    ))
}

fn c3_empty_nuclei() -> Check {
    let mut brute = 0;
    for id in ["tab1", "tab2", "tab3", "tab4"] {
        let t = table(id);
        fast_nuclei_match(id, &t, [ElementSet::EMPTY; 3], ElementSet::EMPTY)?;
        brute += brute_matches(
            id,
            &t,
            &[
                NucleusOrder::Second,
                NucleusOrder::Third,
                NucleusOrder::Fourth,
            ],
            7,
        )?;
    }
    Ok(format!(
        "all 48 side nuclei and 16 intersections empty; {brute} oracle cross-checks at cap 7"
    ))
}

fn c4_erratum() -> Check {
    let mut notes = Vec::new();
    for id in ["tab5", "tab6", "tab7"] {
        let t = table(id);
        brute_matches(id, &t, &NucleusOrder::ALL, 6)?;
        let one = t.index_of("1").unwrap();
        for order in NucleusOrder::ALL {
            for side in NucleusSide::ALL {
                ensure(nucleus(&t, order, side).contains(one), || {
                    format!("{id}: identity 1 missing from N{order}_{side}")
                })?;
            }
        }
        let f = find(id).unwrap();
        let published = f.expected.nuclei.unwrap();
        let (sides, _) = claim_sets(&t, &published);
        let computed = nucleus(&t, NucleusOrder::First, NucleusSide::Left);
        if sides[0] != computed {
            notes.push(format!(
                "{id} published {} computed {}",
                t.format_set(sides[0]),
                t.format_set(computed)
            ));
        }
    }
    Ok(format!(
        "fast path = oracle on 36 nuclei, identity in every nucleus; differs from the recorded claim: {}",
        notes.join("; ")
    ))
}

fn c5_theorems() -> Check {
    for id in TABLES {
        let t = table(id);
        let r = verify_containment_theorems(&t, Strategy::Fast).map_err(|e| e.to_string())?;
        ensure(r.all_hold() && r.clauses.len() == 20, || {
            format!("{id}: fast violation")
        })?;
        if t.order() <= 7 {
            let r = verify_containment_theorems(&t, Strategy::Brute { cap: 7 })
                .map_err(|e| e.to_string())?;
            ensure(r.all_hold(), || format!("{id}: brute violation"))?;
        }
    }
    for i in 0..100 {
        let t = random_table(i, 5);
        let r = verify_containment_theorems(&t, Strategy::Brute { cap: 5 })
            .map_err(|e| e.to_string())?;
        ensure(r.all_hold(), || {
            format!("random brute table {i} violates a containment")
        })?;
    }
    for i in 0..100 {
        let t = random_table(1000 + i, 12);
        let r = verify_containment_theorems(&t, Strategy::Fast).map_err(|e| e.to_string())?;
        ensure(r.all_hold(), || {
            format!("random fast table {i} violates a containment")
        })?;
    }
    Ok("20/20 clauses on 9 tables, 100 brute tables (n <= 5), 100 fast tables (n <= 12); 0 violations".into())
}

fn c6_oracle_equivalence() -> Check {
    let mut compared = 0;
    for i in 0..100 {
        let t = random_table(500 + i, 5);
        let naive = Naive::from_table(&t);
        for order in NucleusOrder::ALL {
            for (k, side) in NucleusSide::ALL.into_iter().enumerate() {
                let fast = nucleus(&t, order, side);
                let brute = nucleus_bruteforce(&t, order, side, 5).map_err(|e| e.to_string())?;
                let reference = naive.nucleus(order.get(), k);
                ensure(fast == brute && indices(fast) == reference, || {
                    format!("table {i} N{order}_{side}: fast {fast} brute {brute} reference {reference:?}")
                })?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} (table, order, side) triples, 0 mismatches; also equal to the test-side reference"))
}

fn c7_constructors() -> Check {
    let s3 = groups::symmetric(3);
    let h = SubgroupSpec::from_labels(&s3, &["id", "(12)"]).map_err(|e| e.to_string())?;
    let dc = double_coset_algebra(&s3, &h).map_err(|e| e.to_string())?;
    ensure(dc.table.order() == 2, || {
        "S3//H does not have order 2".into()
    })?;
    let v = check_polygroup(
        &dc.table,
        dc.identity.unwrap(),
        dc.inverse.as_ref().unwrap(),
    )
    .map_err(|e| e.to_string())?;
    ensure(v.holds(), || format!("S3//H is not a polygroup: {v:?}"))?;
    let mut quotients = 0;
    for (name, g) in groups::all_up_to_order_8() {
        for h in subgroups(&g) {
            let q = quotient_hypergroup(&g, &h).map_err(|e| e.to_string())?;
            ensure(
                check_associativity(&q).holds() && check_reproduction(&q).holds(),
                || format!("{name} / {}: not a hypergroup", h.members),
            )?;
            quotients += 1;
        }
    }
    Ok(format!("S3//{{id,(12)}} is an order-2 polygroup; {quotients} quotients over 14 groups are hypergroups"))
}

fn c8_degenerate() -> Check {
    for i in 0..50u64 {
        let t = random_singleton_table(1 + (i % 5) as usize, i).map_err(|e| e.to_string())?;
        let classical = classical_nuclei(&t).map_err(|e| e.to_string())?;
        for side in NucleusSide::ALL {
            let first = nucleus(&t, NucleusOrder::First, side);
            ensure(first == classical[side as usize], || {
                format!("table {i} {side}: classical differs")
            })?;
            for order in NucleusOrder::ALL {
                let brute = nucleus_bruteforce(&t, order, side, 5).map_err(|e| e.to_string())?;
                ensure(nucleus(&t, order, side) == first && brute == first, || {
                    format!("table {i} N{order}_{side} differs from the classical nucleus")
                })?;
            }
        }
    }
    Ok("50 singleton tables (n <= 5): classical = N1 = N2 = N3 = N4 on every side".into())
}

fn search_cli() -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_polynuclei"))
        .args([
            "search",
            "--order",
            "4",
            "--require",
            "polyloop",
            "--seed",
            "1",
            "--budget",
            "100000",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(o.status.success(), || {
        String::from_utf8_lossy(&o.stderr).into_owned()
    })?;
    Ok(o.stdout)
}

fn c9_search() -> Check {
    let first = search_cli()?;
    let second = search_cli()?;
    ensure(first == second, || "repeated runs differ".into())?;
    let b = parse_structure_file(&first).map_err(|e| e.to_string())?;
    let p = classify(&b).map_err(|e| e.to_string())?;
    ensure(p.polyloop.holds(), || "result is not a polyloop".into())?;
    Ok(format!(
        "found {:?}, polyloop confirmed, two runs byte-identical",
        b.name
    ))
}

fn c10_round_trip() -> Check {
    let mut files = 0;
    for f in &polynuclei::fixtures::FIXTURES {
        let b = parse_structure_file(f.source.as_bytes()).map_err(|e| e.to_string())?;
        ensure(serialize_structure(&b) == f.source, || {
            format!("{} not canonical", f.id)
        })?;
        files += 1;
    }
    let mut outputs = vec![search_cli()?];
    for (order, req) in [
        (3, vec![(Flag::Quasihypergroup, true)]),
        (
            4,
            vec![(Flag::Polyloop, true), (Flag::Semihypergroup, false)],
        ),
        (5, vec![(Flag::Tallini1, true), (Flag::Commutative, true)]),
        (6, vec![(Flag::Polyloop, true)]),
    ] {
        for seed in 0..3 {
            let mut spec = SearchSpec::new(order, req.clone());
            spec.seed = seed;
            spec.count = 2;
            spec.node_budget = 100_000;
            let out = search_structures(&spec).map_err(|e| e.to_string())?;
            outputs.extend(
                out.structures
                    .iter()
                    .map(|b| serialize_structure(b).into_bytes()),
            );
        }
    }
    for bytes in &outputs {
        let b = parse_structure_file(bytes).map_err(|e| e.to_string())?;
        ensure(
            serialize_structure(&b).as_bytes() == bytes.as_slice(),
            || format!("{} not canonical", b.name),
        )?;
    }
    Ok(format!(
        "{files} fixtures and {} search outputs byte-identical after parse/serialize",
        outputs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("fixture classification", c1_classification),
        (
            "nuclei of the order-12 and order-13 Tallini structures",
            c2_tallini_nuclei,
        ),
        (
            "empty nuclei of the non-associative fixtures",
            c3_empty_nuclei,
        ),
        ("polyloop nuclei: fast path against oracle", c4_erratum),
        ("twenty containments", c5_theorems),
        ("oracle equivalence on random tables", c6_oracle_equivalence),
        ("group constructions", c7_constructors),
        ("singleton tables match classical nuclei", c8_degenerate),
        ("search determinism", c9_search),
        ("canonical round trip", c10_round_trip),
    ];
    println!("acceptance suite (all comparisons exact)");
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS [{}] {title}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {title}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
