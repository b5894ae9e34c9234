mod common;

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use common::{matrix_closure_order, small_specs};
use rayon::prelude::*;
use sq3::goursat::{construction, family_info, instantiate, GroupSpec, Isometry, FAMILIES};
use sq3::orbit_cell::orbit_of_one;
use sq3::report::analyze;

#[test]
fn order_formula_across_parameter_sweep() {
    let specs = small_specs();
    let mut per_family: BTreeMap<&str, usize> = BTreeMap::new();
    let failures: Vec<String> = specs
        .par_iter()
        .filter_map(|spec| {
            let c = construction::<f64>(spec).ok()?;
            let factor = if c.extension.is_some() { 2 } else { 1 };
            let expected = c.datum.big_r.order() * c.datum.small_l.order() / 2 * factor;
            match instantiate::<f64>(spec) {
                Ok(g) => {
                    let counted = matrix_closure_order(&g);
                    (counted != expected || g.order() != expected).then(|| {
                        format!(
                            "{spec}: counted {counted}, built {}, formula {expected}",
                            g.order()
                        )
                    })
                }
                Err(e) => Some(format!("{spec}: {e}")),
            }
        })
        .collect();
    for spec in &specs {
        let id = FAMILIES.iter().find(|f| f.id == spec.family).unwrap().id;
        *per_family.entry(id).or_default() += 1;
    }
    assert!(failures.is_empty(), "{failures:#?}");
    for fam in FAMILIES {
        assert!(
            per_family.get(fam.id).copied().unwrap_or(0) > 0,
            "no valid parameters for #{}",
            fam.id
        );
    }
    assert_eq!(
        instantiate::<f64>(&GroupSpec::new("22")).unwrap().order(),
        96
    );
    assert_eq!(
        instantiate::<f64>(&GroupSpec::new("29")).unwrap().order(),
        2880
    );
}

#[test]
fn group_axioms_on_small_members() {
    let specs: Vec<GroupSpec> = small_specs()
        .into_iter()
        .filter(|s| {
            s.params.is_empty()
                || ["m", "n", "r"]
                    .iter()
                    .all(|p| s.params.get(p).is_none_or(|v| v <= 3))
        })
        .collect();
    specs.par_iter().for_each(|spec| {
        let g = instantiate::<f64>(spec).unwrap();
        assert!(g.contains(&Isometry::identity()), "{spec}");
        for a in g.elements() {
            assert!(g.contains(&a.inverse()), "{spec}: inverse");
        }
        for a in g.generators() {
            for b in g.elements() {
                assert!(g.contains(&a.compose(b)), "{spec}: closure");
            }
        }
        let reversing = g.order() - g.preserving_order();
        assert!(
            reversing == 0 || reversing == g.preserving_order(),
            "{spec}"
        );
    });
}

#[test]
fn orbit_stabilizer() {
    for spec in small_specs()
        .iter()
        .filter(|s| s.params.get("m").is_none_or(|m| m <= 4))
    {
        let g = instantiate::<f64>(spec).unwrap();
        let o = orbit_of_one(&g);
        assert_eq!(o.len() * o.stabilizer, g.order(), "{spec}");
    }
    let g = instantiate::<sq3::algebraic::FieldElement>(&GroupSpec::new("29")).unwrap();
    let o = orbit_of_one(&g);
    assert_eq!((o.len(), o.stabilizer), (240, 12));
}

/// For the nonfibering families the cell bound exceeds π/2 exactly when the
/// group fixes a point. For every family, a bound above π/2 forces a fixed
/// point.
#[test]
fn fixed_points_and_the_half_pi_threshold() {
    let specs = small_specs();
    specs.par_iter().for_each(|spec| {
        let a = analyze::<f64>(spec).unwrap();
        let above = a.cell.bound.radians > FRAC_PI_2 + 1e-9;
        let fixes = a.group.fixes_a_point();
        if above {
            assert!(fixes, "{spec}: bound above π/2 without a fixed point");
        }
        if !family_info(&spec.family).unwrap().fibering {
            assert_eq!(above, fixes, "{spec}");
        }
    });
}

#[test]
fn swapped_primes_are_not_conjugate() {
    let a = instantiate::<f64>(&GroupSpec::new("26'")).unwrap();
    let b = instantiate::<f64>(&GroupSpec::new("26''")).unwrap();
    assert_eq!(a.order(), b.order());
    let (ta, tb) = (a.sorted_traces(), b.sorted_traces());
    assert!(ta.iter().zip(&tb).any(|(x, y)| (x - y).abs() > 1e-9));
}
