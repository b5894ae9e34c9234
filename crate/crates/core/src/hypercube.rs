//! Voronoi cells for the cubical tessellation of Sⁿ, in double precision
//! in R^(n+1).

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::GeometryError;

#[derive(Clone, Debug, Serialize)]
pub struct HypercubeCell {
    pub n: usize,
    pub orbit_size: usize,
    pub vertices: usize,
    pub radians: f64,
    /// arccos(1/√(n+1))
    pub expected: f64,
}

/// Orbit of `base` under the group generated by the linear maps `gens`.
pub fn orbit(base: &[f64], gens: &[DMatrix<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut points = vec![base.to_vec()];
    let mut i = 0;
    while i < points.len() {
        let p = nalgebra::DVector::from_column_slice(&points[i]);
        for g in gens {
            let q = g * &p;
            let fresh = points
                .iter()
                .all(|x| x.iter().zip(q.iter()).any(|(a, b)| (a - b).abs() > tol));
            if fresh {
                points.push(q.iter().copied().collect());
            }
        }
        i += 1;
    }
    points
}

/// Generators of the hyperoctahedral group on R^d: adjacent transpositions
/// and one coordinate sign change.
pub fn hyperoctahedral_generators(d: usize) -> Vec<DMatrix<f64>> {
    let mut gens = Vec::new();
    for i in 0..d.saturating_sub(1) {
        let mut m = DMatrix::identity(d, d);
        m.swap_rows(i, i + 1);
        gens.push(m);
    }
    let mut flip = DMatrix::identity(d, d);
    flip[(0, 0)] = -1.0;
    gens.push(flip);
    gens
}

/// Vertices of the Voronoi cell of `orbit[0]` on the unit sphere, and the
/// largest angle from `orbit[0]` to any of them.
pub fn voronoi_cell(orbit: &[Vec<f64>], tol: f64) -> Result<(Vec<Vec<f64>>, f64), GeometryError> {
    let d = orbit[0].len();
    let base = &orbit[0];
    let normals: Vec<Vec<f64>> = orbit[1..]
        .iter()
        .map(|g| base.iter().zip(g).map(|(a, b)| a - b).collect())
        .collect();
    let need = d - 1;
    if normals.len() < need {
        return Err(GeometryError::Domain(
            "orbit too small for a bounded cell".into(),
        ));
    }
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut far: f64 = 0.0;
    let mut choice: Vec<usize> = (0..need).collect();
    loop {
        if let Some(v) = kernel_direction(&normals, &choice, d) {
            for sign in [1.0, -1.0] {
                let v: Vec<f64> = v.iter().map(|c| c * sign).collect();
                let feasible = normals
                    .iter()
                    .all(|n| n.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() >= -tol);
                let cos: f64 = base.iter().zip(&v).map(|(a, b)| a * b).sum();
                if !feasible {
                    continue;
                }
                if cos <= tol {
                    return Err(GeometryError::Domain("cell leaves the hemisphere".into()));
                }
                if !vertices
                    .iter()
                    .any(|u| u.iter().zip(&v).all(|(a, b)| (a - b).abs() <= tol))
                {
                    far = far.max(cos.clamp(-1.0, 1.0).acos());
                    vertices.push(v);
                }
            }
        }
        if !next_combination(&mut choice, normals.len()) {
            break;
        }
    }
    Ok((vertices, far))
}

/// Unit vector spanning the kernel of the chosen rows, when that kernel
/// is one-dimensional.
fn kernel_direction(rows: &[Vec<f64>], choice: &[usize], d: usize) -> Option<Vec<f64>> {
    let mut m = DMatrix::zeros(d, d);
    for (r, &i) in choice.iter().enumerate() {
        for c in 0..d {
            m[(r, c)] = rows[i][c];
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t?;
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let max = svd.singular_values[order[0]];
    let second_smallest = svd.singular_values[order[d - 2]];
    if max <= 0.0 || second_smallest / max <= 1e-8 {
        return None;
    }
    let k = order[d - 1];
    Some(v_t.row(k).iter().copied().collect())
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Cell of a tile center of the cubical tessellation of Sⁿ under its full
/// symmetry group.
pub fn hypercube_cell(n: usize) -> Result<HypercubeCell, GeometryError> {
    if n < 1 {
        return Err(GeometryError::Domain("n must be at least 1".into()));
    }
    let d = n + 1;
    let tol = 1e-9;
    let mut base = vec![0.0; d];
    base[0] = 1.0;
    let points = orbit(&base, &hyperoctahedral_generators(d), tol);
    let (vertices, radians) = voronoi_cell(&points, tol)?;
    Ok(HypercubeCell {
        n,
        orbit_size: points.len(),
        vertices: vertices.len(),
        radians,
        expected: (1.0 / (d as f64).sqrt()).acos(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_on_circle() {
        let c = hypercube_cell(1).unwrap();
        assert_eq!(c.orbit_size, 4);
        assert_eq!(c.vertices, 2);
        assert!((c.radians - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn combinations() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
