#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use sq3::algebraic::FieldElement;
use sq3::goursat::{construction, GroupSpec, IsometryGroup, FAMILIES};
use sq3::report::analyze;
use sq3::scalar::Scalar;

pub type F = FieldElement;

/// a + b√2 + c√5 + d√10 from integer ratios.
pub fn f(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> F {
    F::from_ratios([a, b, c, d])
}

pub fn int(n: i64) -> F {
    F::from_integer(n)
}

/// Projective point with its 1-coordinate scaled to 1.
pub fn normalize(v: [F; 4]) -> [F; 4] {
    let w = v[0].clone();
    v.map(|c| c.checked_div(&w).expect("w is nonzero"))
}

fn key(v: &[F; 4]) -> [[String; 4]; 4] {
    v.clone().map(|c| c.to_basis_strings())
}

pub fn as_set(vs: &[[F; 4]]) -> BTreeSet<[[String; 4]; 4]> {
    vs.iter().map(key).collect()
}

/// Cyclic permutations of the i, j, k coordinates.
pub fn cyclic(v: &[F; 4]) -> Vec<[F; 4]> {
    let [w, x, y, z] = v.clone();
    vec![
        [w.clone(), x.clone(), y.clone(), z.clone()],
        [w.clone(), z.clone(), x.clone(), y.clone()],
        [w, y, z, x],
    ]
}

/// Sign changes of the i, j, k coordinates; `even` keeps only those with an
/// even number of minus signs.
pub fn sign_changes(v: &[F; 4], even: bool) -> Vec<[F; 4]> {
    let mut out = Vec::new();
    for mask in 0..8u32 {
        if even && mask.count_ones() % 2 == 1 {
            continue;
        }
        let mut p = v.clone();
        for bit in 0..3 {
            if mask & (1 << bit) != 0 {
                p[bit + 1] = -p[bit + 1].clone();
            }
        }
        out.push(p);
    }
    out
}

/// Rotation group of the regular tetrahedron acting on the i, j, k part.
pub fn tetrahedral_orbit(v: &[F; 4]) -> Vec<[F; 4]> {
    cyclic(v)
        .iter()
        .flat_map(|p| sign_changes(p, true))
        .collect()
}

pub fn cell_vertices(family: &str) -> Vec<[F; 4]> {
    let a = analyze::<F>(&GroupSpec::new(family)).expect("group builds");
    a.cell
        .vertices
        .iter()
        .map(|v| v.direction.clone())
        .collect()
}

/// Vertex lists of the cells as printed, scaled to w = 1.
pub fn printed_vertices(family: &str) -> Vec<[F; 4]> {
    let zero = F::zero();
    let one = F::one();
    let s2 = F::sqrt2();
    let s5 = F::sqrt5();
    let s10 = F::sqrt10();
    let pts: Vec<[F; 4]> = match family {
        // (1 ± i ± j ± k)/2
        "22" | "27" => sign_changes(&[one.clone(), one.clone(), one.clone(), one], false),
        // (1 ± i)/√2 and permutations
        "20" | "28" => cyclic(&[one.clone(), one, zero.clone(), zero])
            .iter()
            .flat_map(|p| sign_changes(p, false))
            .collect(),
        // (1 − √5 i − √5 j − √5 k)/4, two minus signs changed to plus
        "32'" => {
            let m = -s5.clone();
            sign_changes(&[one, m.clone(), m.clone(), m], true)
        }
        // (√5 + 3i + j + k)/4, two signs changed and/or cycled
        "32" => cyclic(&[s5, int(3), one.clone(), one])
            .iter()
            .flat_map(|p| sign_changes(p, true))
            .collect(),
        // ((√2+1) ± (√2−1)i ± j ± k)/(2√2), cycled
        "23" | "25" => {
            let base = [&s2 + &one, &s2 - &one, one.clone(), one];
            cyclic(&base)
                .iter()
                .flat_map(|p| sign_changes(p, false))
                .collect()
        }
        "24" | "30" => {
            let w = int(3) * s2.clone() + s10.clone();
            let c = (int(3) + s5.clone()) * (s10.clone() - int(2) * s2.clone());
            let mut v = sign_changes(&[w, c.clone(), c.clone(), c], false);
            let second = [
                int(6) * s2.clone() + int(2) * s10.clone(),
                zero,
                (int(7) - int(3) * s5) * (int(3) * s2.clone() + s10),
                int(4) * s2,
            ];
            v.extend(tetrahedral_orbit(&second));
            v
        }
        "29" => {
            let h = |a: i64, b: (i64, i64), c: i64, d: (i64, i64)| f((a, 1), b, (c, 1), d);
            let first = [
                one.clone(),
                h(3, (0, 1), 0, (-1, 1)),
                h(2, (3, 2), -1, (-1, 2)),
                h(1, (1, 2), 0, (-1, 2)),
            ];
            let second = [
                one.clone(),
                h(-1, (-1, 2), 0, (1, 2)),
                h(4, (-2, 1), 1, (-1, 1)),
                h(-5, (7, 2), -2, (3, 2)),
            ];
            let third = [
                one,
                h(-3, (3, 1), -2, (1, 1)),
                h(-2, (1, 1), -1, (1, 1)),
                h(3, (-3, 1), 2, (-1, 1)),
            ];
            [first, second, third]
                .iter()
                .flat_map(tetrahedral_orbit)
                .collect()
        }
        other => panic!("no printed vertex list for #{other}"),
    };
    pts.into_iter().map(normalize).collect()
}

/// Order of the group generated by the 4×4 matrices of the generators,
/// counted by closing the matrices in double precision. Independent of the
/// quaternion-pair bookkeeping.
pub fn matrix_closure_order<S: Scalar>(group: &IsometryGroup<S>) -> usize {
    type M = [[f64; 4]; 4];
    let to_f = |m: [[S; 4]; 4]| -> M { m.map(|r| r.map(|c| c.to_f64())) };
    let gens: Vec<M> = group
        .generators()
        .iter()
        .map(|g| to_f(g.matrix()))
        .collect();
    let key = |m: &M| -> [i64; 16] {
        let mut k = [0i64; 16];
        for r in 0..4 {
            for c in 0..4 {
                k[4 * r + c] = (m[r][c] * 1e6).round() as i64;
            }
        }
        k
    };
    let mul = |a: &M, b: &M| -> M {
        let mut out = [[0.0; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] = (0..4).map(|t| a[r][t] * b[t][c]).sum();
            }
        }
        out
    };
    let mut id = [[0.0; 4]; 4];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let mut seen = HashSet::from([key(&id)]);
    let mut queue = vec![id];
    while let Some(m) = queue.pop() {
        for g in &gens {
            let p = mul(g, &m);
            if seen.insert(key(&p)) {
                queue.push(p);
            }
        }
        assert!(seen.len() <= 100_000, "closure runs away");
    }
    seen.len()
}

/// Every family at parameters with m, n, r ≤ 6 and s, h, k ≤ 6 that the
/// classification accepts.
pub fn small_specs() -> Vec<GroupSpec> {
    fn fill(spec: GroupSpec, rest: &[&str], out: &mut Vec<GroupSpec>) {
        let Some((p, tail)) = rest.split_first() else {
            if construction::<f64>(&spec).is_ok() {
                out.push(spec);
            }
            return;
        };
        let lo = if matches!(*p, "m" | "n" | "r") { 1 } else { 0 };
        for v in lo..=6 {
            fill(spec.clone().with(p, v), tail, out);
        }
    }
    let mut out = Vec::new();
    for fam in FAMILIES {
        fill(GroupSpec::new(fam.id), fam.params, &mut out);
    }
    out
}
