//! Acceptance criteria. Runs without the test harness and prints one `criterion N: PASS|FAIL` line each.
//! Every comparison is exact (integers or exact rationals); no tolerance.

use std::collections::BTreeSet;

use shimura_atlas::arith::{
    class_number, hurwitz_class_number, kronecker, primes_up_to, FactoredSquarefree, HurwitzTable,
    QuadDiscriminant,
};
use shimura_atlas::cd_graph::{
    al_quotient, dual_graph, eichler_class_number, is_torsion_free, kodaira_symbol, DualGraphOutcome,
    GraphConstraints, KodairaSymbol, VertexLabel,
};
use shimura_atlas::classifier::{bielliptic_involutions, lemma5_audit, prop6_excludes};
use shimura_atlas::cremona::CurveDatabase;
use shimura_atlas::fixtures::DataSet;
use shimura_atlas::invariants::{
    atkin_lehner_group, elliptic_point_counts, genus, quotient_genus, ShimuraDiscriminant,
};
use shimura_atlas::quad_points::{
    all_verdicts, elliptic_quotient_class, heegner_rational_point, kuhn_fallback, CurveSelection,
};
use shimura_atlas::report::{golden_table1, golden_table3};
use shimura_atlas::trace::{point_count, trace_hecke_new};

fn report(n: u32, failures: &[String], summary: &str) -> bool {
    if failures.is_empty() {
        println!("criterion {n}: PASS ({summary})");
    } else {
        println!("criterion {n}: FAIL ({summary}); {} failures", failures.len());
        for f in failures.iter().take(25) {
            println!("  {f}");
        }
    }
    failures.is_empty()
}

fn disc(d: u64) -> ShimuraDiscriminant {
    ShimuraDiscriminant::new(d).unwrap()
}

fn criterion_01_table1() -> bool {
    let data = DataSet::bundled();
    let g = golden_table1(5000, &data).unwrap();
    let mut failures = g.diff.clone();
    if g.report.rows.len() != 32 {
        failures.push(format!("{} rows, expected 32", g.report.rows.len()));
    }
    report(1, &failures, &format!("{} rows; {}", g.report.rows.len(), g.notes.join("; ")))
}

fn criterion_02_finiteness() -> bool {
    let mut failures = Vec::new();
    let mut n = 0;
    for d in ShimuraDiscriminant::all_up_to(20_000).into_iter().filter(|d| d.value() > 546) {
        n += 1;
        if prop6_excludes(&d).is_excluded() || genus(&d).unwrap() < 2 {
            continue;
        }
        if !bielliptic_involutions(&d).unwrap().is_empty() {
            failures.push(d.to_string());
        }
    }
    report(2, &failures, &format!("{n} discriminants in (546, 20000]"))
}

fn criterion_03_point_counts() -> bool {
    let mut failures = Vec::new();
    for (d, ell, expected) in [(267, 67, 94), (411, 103, 98)] {
        let c = point_count(&disc(d), ell, 1).unwrap().count;
        if c != expected {
            failures.push(format!("#M_{d}(F_{ell}) = {c}, expected {expected}"));
        }
    }
    report(3, &failures, "#M_267(F_67) = 94, #M_411(F_103) = 98")
}

fn criterion_04_parity() -> bool {
    let mut failures = Vec::new();
    let mut checked = Vec::new();
    for d in ShimuraDiscriminant::all_up_to(546) {
        let p = d.primes();
        if p.len() != 2 || p[0] != 3 || p[1] % 3 != 2 || genus(&d).unwrap() < 2 || [267, 411].contains(&d.value()) {
            continue;
        }
        let c = point_count(&d, 109, 1).unwrap().count;
        checked.push(d.value());
        if c % 4 == 0 {
            failures.push(format!("#M_{d}(F_109) = {c} = 0 mod 4"));
        }
    }
    report(4, &failures, &format!("{} discriminants D = 3p", checked.len()))
}

fn criterion_05_genus_dimension() -> bool {
    let mut failures = Vec::new();
    let ds = ShimuraDiscriminant::all_up_to(546);
    for d in &ds {
        let g = genus(d).unwrap() as i64;
        let t = trace_hecke_new(d.value(), 1).unwrap();
        if t != g {
            failures.push(format!("D = {d}: trace {t}, genus {g}"));
        }
    }
    report(5, &failures, &format!("{} discriminants", ds.len()))
}

fn criterion_06_trace_oracle() -> bool {
    let db = CurveDatabase::bundled();
    let mut failures = Vec::new();
    let mut n = 0;
    for level in [26u64, 57, 58] {
        let classes = db.classes(level);
        for ell in primes_up_to(50).into_iter().filter(|l| level % l != 0) {
            n += 1;
            let oracle: i64 = classes.iter().map(|(_, cs)| cs[0].ap(ell).unwrap()).sum();
            let t = trace_hecke_new(level, ell).unwrap();
            if t != oracle {
                failures.push(format!("N = {level}, ell = {ell}: trace {t}, sum of a_ell {oracle}"));
            }
        }
    }
    report(6, &failures, &format!("{n} (N, ell) pairs"))
}

fn criterion_07_cerednik_drinfeld() -> bool {
    let mut failures = Vec::new();
    let sf = |n| FactoredSquarefree::new(n).unwrap();
    let h1 = eichler_class_number(&sf(70), &sf(1)).unwrap();
    let h3 = eichler_class_number(&sf(70), &sf(3)).unwrap();
    if (h1, h3) != (2, 8) {
        failures.push(format!("h(70,1) = {h1}, h(70,3) = {h3}"));
    }
    let (v1, v2, v1p, v2p) = (
        VertexLabel::z(1),
        VertexLabel::z(2),
        VertexLabel::z_prime(1),
        VertexLabel::z_prime(2),
    );
    let constraints = GraphConstraints {
        crossing_total: Some(4),
        forbidden_pairs: vec![(v1, v2), (v1p, v2p)],
    };
    match dual_graph(&disc(210), 3, &constraints).unwrap() {
        DualGraphOutcome::Unique(g) => {
            let mult = [
                g.multiplicity(v1, v1p),
                g.multiplicity(v2, v2p),
                g.multiplicity(v1, v2p),
                g.multiplicity(v2, v1p),
            ];
            if mult != [2, 2, 2, 2] || g.graph.vertex_count() != 4 || g.graph.edge_count() != 8 {
                failures.push(format!("graph differs from the figure: {mult:?}"));
            }
            let q = al_quotient(&g.graph, &g.al_action).unwrap();
            let k = kodaira_symbol(&q).unwrap();
            if k != (KodairaSymbol { n: 2 }) {
                failures.push(format!("quotient Kodaira symbol {k}"));
            }
        }
        other => failures.push(format!("graph not unique: {other:?}")),
    }
    let q = elliptic_quotient_class(&disc(210), 210, &CurveDatabase::bundled()).unwrap();
    let curve_ok = q.curve.as_ref().is_some_and(|c| {
        c.label().eq_ignore_ascii_case("210d2") && c.a_invariants == [1, 1, 0, -23, 33]
    });
    if q.class_label != "210d" || !curve_ok || q.rank != 1 || !matches!(q.selection, CurveSelection::Kodaira { p: 3, .. }) {
        failures.push(format!("quotient identification {q:?}"));
    }
    report(7, &failures, "h(70,1)=2, h(70,3)=8, unique graph, I_2, 210D2 rank 1")
}

fn criterion_08_mumford_genus() -> bool {
    let data = DataSet::bundled();
    let mut failures = Vec::new();
    let mut n = 0;
    for row in &data.table1 {
        let d = disc(row.d);
        if elliptic_point_counts(&d) != (0, 0) {
            continue;
        }
        for &p in d.primes() {
            if !is_torsion_free(&d, p).unwrap() {
                continue;
            }
            n += 1;
            let delta = d.factored().quotient(p).unwrap();
            let hp = eichler_class_number(&delta, &FactoredSquarefree::new(p).unwrap()).unwrap() as i64;
            let h1 = eichler_class_number(&delta, &FactoredSquarefree::new(1).unwrap()).unwrap() as i64;
            let g = genus(&d).unwrap() as i64;
            if hp - 2 * h1 + 1 != g {
                failures.push(format!("(D, p) = ({}, {p}): {hp} - 2*{h1} + 1 != {g}", row.d));
            }
        }
    }
    if n == 0 {
        failures.push("no torsion-free pairs found".into());
    }
    report(8, &failures, &format!("{n} torsion-free (D, p) pairs"))
}

fn criterion_09_table3() -> bool {
    let db = CurveDatabase::bundled();
    let data = DataSet::bundled();
    let g = golden_table3(&db, &data).unwrap();
    let mut failures = g.diff.clone();
    let verdicts = all_verdicts(&db, &data).unwrap();
    let infinite: BTreeSet<u64> = verdicts.iter().filter(|v| v.is_infinite()).map(|v| v.d).collect();
    let expected: BTreeSet<u64> = data.table3.iter().map(|r| r.d).collect();
    if infinite != expected {
        failures.push(format!(
            "infinite set differs: extra {:?}, missing {:?}",
            infinite.difference(&expected).collect::<Vec<_>>(),
            expected.difference(&infinite).collect::<Vec<_>>()
        ));
    }
    let mut finite = Vec::new();
    for row in data.table1.iter().filter(|r| !expected.contains(&r.d)) {
        match verdicts.iter().find(|v| v.d == row.d) {
            Some(v) if !v.is_infinite() && !v.justification.is_empty() => finite.push(row.d),
            other => failures.push(format!("D = {}: {other:?}", row.d)),
        }
    }
    for d in [115, 178, 202] {
        if !finite.contains(&d) {
            failures.push(format!("D = {d} not marked finite"));
        }
    }
    let determined = g.report.rows.iter().filter(|r| r[2] != "P1" && !r[2].ends_with('?')).count();
    report(
        9,
        &failures,
        &format!(
            "{} rows, {} distinct D, curves pinned in {determined} elliptic rows, finite with reasons {finite:?}",
            g.report.rows.len(),
            infinite.len()
        ),
    )
}

fn criterion_10_heegner() -> bool {
    let mut failures = Vec::new();
    match heegner_rational_point(&disc(210), 210).unwrap() {
        Some(w) if w.cm_discriminant == -43 && w.inert_primes == vec![2, 3, 5, 7] && w.audit() => {}
        other => failures.push(format!("(210, 210): {other:?}")),
    }
    let mut kuhn = Vec::new();
    for d in ShimuraDiscriminant::all_up_to(546) {
        if genus(&d).unwrap() < 2 {
            continue;
        }
        for m in bielliptic_involutions(&d).unwrap() {
            if kuhn_fallback(&d, m).unwrap() {
                kuhn.push((d.value(), m));
            }
        }
    }
    if kuhn != vec![(26, 2), (58, 2)] {
        failures.push(format!("Kuhn fallback fires for {kuhn:?}"));
    }
    report(10, &failures, "d = -43 for (210, 210); fallback exactly (26, 2), (58, 2)")
}

fn criterion_11_properties() -> bool {
    let mut failures = Vec::new();

    for a in -60i64..=60 {
        for m in 1i64..=40 {
            for n in 1i64..=40 {
                if kronecker(a, m * n) != kronecker(a, m) * kronecker(a, n) {
                    failures.push(format!("kronecker({a}, {m}*{n})"));
                }
            }
        }
    }

    for p in primes_up_to(3000).into_iter().filter(|p| p % 4 == 3 && *p > 3) {
        let h = class_number(QuadDiscriminant::new(-(p as i64)).unwrap());
        if h % 2 == 0 {
            failures.push(format!("h(-{p}) = {h} is even"));
        }
    }

    let table = HurwitzTable::build(HurwitzTable::DEFAULT_BOUND);
    for n in 0..=table.bound() {
        if table.get(n) != Some(hurwitz_class_number(n)) {
            failures.push(format!("H({n}) disagrees"));
        }
    }

    for d in ShimuraDiscriminant::all_up_to(546) {
        if genus(&d).unwrap() < 2 {
            continue;
        }
        for ell in primes_up_to(40).into_iter().filter(|l| d.value() % l != 0) {
            for k in [1, 2] {
                match point_count(&d, ell, k) {
                    Ok(c) if c.satisfies_weil() => {}
                    other => failures.push(format!("count ({d}, {ell}, {k}): {other:?}")),
                }
            }
        }
    }

    for row in &DataSet::bundled().table1 {
        let audit = lemma5_audit(&disc(row.d)).unwrap();
        if !audit.passed() {
            failures.push(format!("involution pattern at D = {}: {:?}", row.d, audit.violations));
        }
    }

    for d in ShimuraDiscriminant::all_up_to(1000) {
        for w in atkin_lehner_group(&d).into_iter().filter(|w| !w.is_identity()) {
            if let Err(e) = quotient_genus(&d, w) {
                failures.push(format!("({d}, {}): {e}", w.index()));
            }
        }
    }
    report(11, &failures, "Kronecker, class-number parity, Hurwitz, Weil, involution pattern, Riemann-Hurwitz")
}

fn main() {
    let criteria: [fn() -> bool; 11] = [
        criterion_01_table1,
        criterion_02_finiteness,
        criterion_03_point_counts,
        criterion_04_parity,
        criterion_05_genus_dimension,
        criterion_06_trace_oracle,
        criterion_07_cerednik_drinfeld,
        criterion_08_mumford_genus,
        criterion_09_table3,
        criterion_10_heegner,
        criterion_11_properties,
    ];
    let failed = criteria
        .iter()
        .map(|c| std::panic::catch_unwind(c).unwrap_or(false))
        .filter(|ok| !ok)
        .count();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
