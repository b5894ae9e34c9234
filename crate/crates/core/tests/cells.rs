mod common;

use std::collections::BTreeMap;

use common::{as_set, cell_vertices, f, printed_vertices, F};
use sq3::algebraic::Sign;
use sq3::goursat::GroupSpec;
use sq3::orbit_cell::{cell_statistics, CellKind};
use sq3::report::{analyze, ClosedForm};
use sq3::sphere2::fibering_diameter;

fn check_vertices(family: &str, count: usize) {
    let ours = cell_vertices(family);
    let printed = printed_vertices(family);
    assert_eq!(ours.len(), count, "#{family} vertex count");
    assert_eq!(as_set(&printed).len(), count, "#{family} printed list size");
    assert_eq!(as_set(&ours), as_set(&printed), "#{family} vertex set");
}

#[test]
fn cube_cells() {
    check_vertices("22", 8);
    check_vertices("27", 8);
}

#[test]
fn octahedron_cells() {
    check_vertices("20", 6);
    check_vertices("28", 6);
}

#[test]
fn tetrahedral_cells() {
    check_vertices("32'", 4);
    check_vertices("32", 12);
}

#[test]
fn truncated_cube_cells() {
    check_vertices("23", 24);
    check_vertices("25", 24);
}

#[test]
fn dodecahedral_cells() {
    check_vertices("24", 20);
    check_vertices("30", 20);
}

#[test]
fn group_29_cell() {
    let a = analyze::<F>(&GroupSpec::new("29")).unwrap();
    assert_eq!(a.group.order(), 2880);
    let stats = cell_statistics(&a.cell);
    assert_eq!(stats.vertices, 36);
    assert_eq!(stats.census, BTreeMap::from([(3, 12), (6, 4), (12, 4)]));
    assert_eq!(stats.euler_characteristic, 2);
    assert!(stats.cycles_closed);
    check_vertices("29", 36);

    // cos² of the bound times 40 + 12√2 − 8√5 − 12√10 is exactly 1.
    let r = f((40, 1), (12, 1), (-8, 1), (-12, 1));
    assert_eq!(a.cell.bound.cos_sign, Sign::Positive);
    assert_eq!(&a.cell.bound.cos2 * &r, F::one());
    assert_eq!(a.cell.bound.cos2, f((5, 16), (3, 32), (1, 16), (3, 32)));
    let pi_over = std::f64::consts::PI / a.cell.bound.radians;
    assert!((pi_over - 8.93).abs() / 8.93 < 0.005);
}

#[test]
fn reflection_50_closed_forms_agree() {
    let a = analyze::<F>(&GroupSpec::new("50")).unwrap();
    let b = &a.cell.bound;
    assert!(b.same_value(&ClosedForm::Reflection50.exact().unwrap()));
    assert!(b.same_value(&ClosedForm::Dodecahedral.exact().unwrap()));
}

#[test]
fn family_10_against_prism_formula() {
    for l in 1..=6u32 {
        let spec = GroupSpec::new("10").with("m", l as i64).with("n", l as i64);
        let formula = fibering_diameter("10", Some(l)).unwrap();
        let float = analyze::<f64>(&spec).unwrap().cell.bound.radians;
        assert!(
            (float - formula).abs() <= 1e-9,
            "L={l}: {float} vs {formula}"
        );
        assert!(float > std::f64::consts::FRAC_PI_4);
        if matches!(l, 1 | 2 | 4) {
            let exact = analyze::<F>(&spec).unwrap();
            assert!(exact
                .cell
                .bound
                .same_value(&ClosedForm::Prism(l).exact().unwrap()));
        }
    }
    let one = analyze::<f64>(&GroupSpec::new("10").with("m", 1).with("n", 1)).unwrap();
    assert_eq!(one.orbit.len(), 4);
    assert_eq!(one.cell.kind, CellKind::Degenerate);
}

#[test]
fn every_table_cell_is_a_sphere() {
    for id in [
        "20", "22", "23", "24", "25", "27", "28", "29", "30", "32", "32'", "41", "42", "43", "45",
        "46", "47", "48", "50", "51", "51m", "51p",
    ] {
        let a = analyze::<F>(&GroupSpec::new(id)).unwrap();
        assert_eq!(a.cell.kind, CellKind::Polytope, "#{id}");
        let s = cell_statistics(&a.cell);
        assert_eq!(s.euler_characteristic, 2, "#{id}");
        assert!(s.cycles_closed, "#{id}");
    }
}
