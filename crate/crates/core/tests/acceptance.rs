//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit status if
//! any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::time::Instant;

use common::{as_set, cell_vertices, matrix_closure_order, printed_vertices, small_specs, F};
use rayon::prelude::*;
use sq3::goursat::{construction, family_info, instantiate, GroupSpec, Isometry};
use sq3::orbit_cell::{cell_statistics, orbit_of_one};
use sq3::report::{analyze, build_table, hypercube_check, BackendChoice, Status, Table, TableKind};
use sq3::sphere2::{fibering_diameter, sides_from_angles};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn failures(t: &Table) -> Vec<String> {
    t.rows
        .iter()
        .filter_map(|r| match &r.status {
            Status::Match => None,
            Status::Mismatch(why) | Status::Skipped(why) => Some(format!("{}: {why}", r.row)),
        })
        .collect()
}

fn exact_table(
    kind: TableKind,
    budget: f64,
    tables: &mut BTreeMap<&'static str, Table>,
) -> Outcome {
    let start = Instant::now();
    let t = build_table(kind, BackendChoice::Exact);
    let secs = start.elapsed().as_secs_f64();
    let bad = failures(&t);
    let not_exact: Vec<String> = t
        .rows
        .iter()
        .filter(|r| r.backend.as_deref() != Some("exact"))
        .map(|r| r.row.clone())
        .collect();
    let n = t.rows.len();
    tables.insert(kind.name(), t);
    ensure(bad.is_empty(), || bad.join("; "))?;
    ensure(not_exact.is_empty(), || format!("not exact: {not_exact:?}"))?;
    ensure(secs < budget, || {
        format!("took {secs:.1} s, budget {budget} s")
    })?;
    Ok(format!("{n} rows match exactly and in float"))
}

fn group_29() -> Outcome {
    let a = analyze::<F>(&GroupSpec::new("29")).map_err(|e| e.to_string())?;
    let s = cell_statistics(&a.cell);
    let want = BTreeMap::from([(3, 12), (6, 4), (12, 4)]);
    ensure(s.vertices == 36, || format!("{} vertices", s.vertices))?;
    ensure(s.census == want, || format!("face census {:?}", s.census))?;
    Ok(format!(
        "36 vertices, faces {:?} (sides: count), χ = {}",
        s.census, s.euler_characteristic
    ))
}

fn vertex_sets() -> Outcome {
    let cases = [
        ("22", 8),
        ("20", 6),
        ("32", 12),
        ("23", 24),
        ("25", 24),
        ("24", 20),
        ("30", 20),
    ];
    for (id, count) in cases {
        let ours = as_set(&cell_vertices(id));
        let printed = as_set(&printed_vertices(id));
        ensure(ours.len() == count, || {
            format!("#{id}: {} vertices", ours.len())
        })?;
        ensure(ours == printed, || format!("#{id}: vertex sets differ"))?;
    }
    Ok("#22, #20, #32, #23, #25, #24, #30 equal the printed vertex sets exactly".into())
}

fn order_formula() -> Outcome {
    let specs = small_specs();
    let bad: Vec<String> = specs
        .par_iter()
        .filter_map(|spec| {
            let c = construction::<f64>(spec).ok()?;
            let factor = if c.extension.is_some() { 2 } else { 1 };
            let expected = c.datum.big_r.order() * c.datum.small_l.order() / 2 * factor;
            match instantiate::<f64>(spec) {
                Ok(g) => {
                    let counted = matrix_closure_order(&g);
                    (counted != expected).then(|| format!("{spec}: {counted} vs {expected}"))
                }
                Err(e) => Some(format!("{spec}: {e}")),
            }
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    let o22 = instantiate::<F>(&GroupSpec::new("22"))
        .map_err(|e| e.to_string())?
        .order();
    let o29 = instantiate::<F>(&GroupSpec::new("29"))
        .map_err(|e| e.to_string())?
        .order();
    ensure(o22 == 96 && o29 == 2880, || {
        format!("#22 → {o22}, #29 → {o29}")
    })?;
    Ok(format!(
        "{} groups counted by matrix closure; #22 → 96, #29 → 2880",
        specs.len()
    ))
}

fn s2_suite() -> Outcome {
    let third = (1.0f64 / 3.0).acos();
    let inv_sqrt3 = (1.0 / 3f64.sqrt()).acos();
    let ico = ((3.0 * PI / 10.0).tan() / 3f64.sqrt()).acos();
    for (c, want) in [(FRAC_PI_3, third), (FRAC_PI_4, inv_sqrt3), (PI / 5.0, ico)] {
        let t = sides_from_angles(FRAC_PI_2, FRAC_PI_3, c).map_err(|e| e.to_string())?;
        ensure((t.sides[0] - want).abs() <= 1e-12, || {
            format!("side {} vs {want}", t.sides[0])
        })?;
    }
    let half_alpha = fibering_diameter("19", None).map_err(|e| e.to_string())?;
    let ratio_a = PI / half_alpha;
    ensure((ratio_a - 9.63).abs() / 9.63 < 0.005, || {
        format!("α/2 = π/{ratio_a:.3}")
    })?;
    let beta = analyze::<F>(&GroupSpec::new("29"))
        .map_err(|e| e.to_string())?
        .cell
        .bound
        .radians;
    let ratio_b = PI / beta;
    ensure((ratio_b - 8.93).abs() / 8.93 < 0.005, || {
        format!("β = π/{ratio_b:.3}")
    })?;
    Ok(format!("three triangle sides within 1e-12; α/2 = {half_alpha:.6} = π/{ratio_a:.3}; β = π/{ratio_b:.3}"))
}

fn fibering_formula() -> Outcome {
    let mut worst = 0.0f64;
    for l in 1..=6u32 {
        let spec = GroupSpec::new("10").with("m", l as i64).with("n", l as i64);
        let got = analyze::<f64>(&spec)
            .map_err(|e| e.to_string())?
            .cell
            .bound
            .radians;
        let want = fibering_diameter("10", Some(l)).map_err(|e| e.to_string())?;
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 1e-9, || {
            format!("L={l}: {got} vs {want}")
        })?;
        ensure(got > FRAC_PI_4, || format!("L={l}: {got} ≤ π/4"))?;
    }
    Ok(format!("L = 1..6 agree to {worst:.1e}, all above π/4"))
}

fn oracle_equivalence(tables: &BTreeMap<&'static str, Table>) -> Outcome {
    let mut compared = 0;
    let mut worst = 0.0f64;
    for t in tables.values() {
        for r in &t.rows {
            if let (Some(a), Some(b)) = (r.radians, r.float_radians) {
                compared += 1;
                worst = worst.max((a - b).abs());
                ensure((a - b).abs() <= 1e-9, || format!("{}: {a} vs {b}", r.row))?;
            }
        }
    }
    ensure(compared > 50, || format!("only {compared} rows compared"))?;
    Ok(format!("{compared} rows, largest difference {worst:.1e}"))
}

fn property_suites() -> Outcome {
    let specs = small_specs();
    let bad: Vec<String> = specs
        .par_iter()
        .filter_map(|spec| {
            let a = match analyze::<f64>(spec) {
                Ok(a) => a,
                Err(e) => return Some(format!("{spec}: {e}")),
            };
            let g = &a.group;
            if !g.contains(&Isometry::identity())
                || !g.elements().iter().all(|x| g.contains(&x.inverse()))
                || !g.is_closed_under_generators()
            {
                return Some(format!("{spec}: group axioms"));
            }
            let o = orbit_of_one(g);
            if o.len() * o.stabilizer != g.order() {
                return Some(format!("{spec}: orbit-stabilizer"));
            }
            let above = a.cell.bound.radians > FRAC_PI_2 + 1e-9;
            let fixes = g.fixes_a_point();
            let fibering = family_info(&spec.family).is_some_and(|f| f.fibering);
            if (above && !fixes) || (!fibering && above != fixes) {
                return Some(format!(
                    "{spec}: bound {} fixes={fixes}",
                    a.cell.bound.radians
                ));
            }
            None
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    let inclusions = build_table(TableKind::Inclusions, BackendChoice::Exact);
    let bad = failures(&inclusions);
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!(
        "{} groups: axioms, orbit-stabilizer, π/2 threshold vs fixed point; {} inclusions monotone",
        specs.len(),
        inclusions.rows.len()
    ))
}

fn hypercube() -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=4 {
        let row = hypercube_check(n, BackendChoice::Exact);
        ensure(row.status == Status::Match, || {
            format!("n={n}: {:?}", row.status)
        })?;
        parts.push(format!("n={n}: {:.9}", row.radians.unwrap_or(f64::NAN)));
    }
    Ok(format!("{} (n=3 also from #47)", parts.join(", ")))
}

fn main() {
    let mut tables = BTreeMap::new();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut run = |n: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let outcome = outcome.map(|s| format!("{s} [{:.1} s]", start.elapsed().as_secs_f64()));
        let (mark, text) = match &outcome {
            Ok(s) => ("PASS", s),
            Err(s) => ("FAIL", s),
        };
        println!("criterion {n:>2} {mark}  {name}: {text}");
        results.push((n, name, outcome));
    };
    run(1, "nonfibering rational table", &mut || {
        exact_table(TableKind::NonfibRational, 10.0, &mut tables)
    });
    run(2, "nonfibering irrational table", &mut || {
        exact_table(TableKind::NonfibIrrational, 60.0, &mut tables)
    });
    run(3, "group #29 combinatorics", &mut group_29);
    run(4, "vertex sets", &mut vertex_sets);
    run(5, "order formula", &mut order_formula);
    run(6, "S² suite", &mut s2_suite);
    run(7, "fibering formula", &mut fibering_formula);
    run(8, "oracle equivalence", &mut || {
        let mut all = std::mem::take(&mut tables);
        all.insert(
            "reflection",
            build_table(TableKind::Reflection, BackendChoice::Exact),
        );
        all.insert("fib", build_table(TableKind::Fib, BackendChoice::Exact));
        oracle_equivalence(&all)
    });
    run(9, "property suites", &mut property_suites);
    run(10, "hypercube", &mut hypercube);
    let failed = results.iter().filter(|r| r.2.is_err()).count();
    println!(
        "acceptance: {} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
