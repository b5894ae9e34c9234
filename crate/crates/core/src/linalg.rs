//! Small dense linear algebra over a [`Scalar`].

use crate::scalar::Scalar;

pub fn det3<S: Scalar>(m: [[&S; 3]; 3]) -> S {
    let t0 = m[1][1].mul(m[2][2]).sub(&m[1][2].mul(m[2][1]));
    let t1 = m[1][0].mul(m[2][2]).sub(&m[1][2].mul(m[2][0]));
    let t2 = m[1][0].mul(m[2][1]).sub(&m[1][1].mul(m[2][0]));
    m[0][0]
        .mul(&t0)
        .sub(&m[0][1].mul(&t1))
        .add(&m[0][2].mul(&t2))
}

/// Generalized cross product of three vectors in R⁴: the vector `c` with
/// `⟨c, x⟩ = det(r0, r1, r2, x)`. It is orthogonal to every row and vanishes
/// exactly when the rows are dependent.
pub fn cross4<S: Scalar>(rows: &[[S; 4]; 3]) -> [S; 4] {
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let pick = |r: usize| [&rows[r][cols[0]], &rows[r][cols[1]], &rows[r][cols[2]]];
        det3([pick(0), pick(1), pick(2)])
    };
    let m0 = minor(0);
    let m1 = minor(1);
    let m2 = minor(2);
    let m3 = minor(3);
    [m0.neg(), m1, m2.neg(), m3]
}

pub fn dot4<S: Scalar>(a: &[S; 4], b: &[S; 4]) -> S {
    a[0].mul(&b[0])
        .add(&a[1].mul(&b[1]))
        .add(&a[2].mul(&b[2]))
        .add(&a[3].mul(&b[3]))
}

/// Row echelon form by Gaussian elimination; returns the rank. Pivots are
/// chosen by largest magnitude among entries that are not zero.
pub fn rank<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let pivot = (rank..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .max_by(|&a, &b| {
                rows[a][c]
                    .to_f64()
                    .abs()
                    .total_cmp(&rows[b][c].to_f64().abs())
            });
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().expect("pivot is nonzero");
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].mul(&inv);
            for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *x = x.sub(&f.mul(p));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n)
            .filter(|&r| !a[r][c].is_zero())
            .max_by(|&x, &y| a[x][c].to_f64().abs().total_cmp(&a[y][c].to_f64().abs()))?;
        a.swap(c, p);
        b.swap(c, p);
        let inv = a[c][c].inv().ok()?;
        let (pivot_row, pivot_b) = (a[c].clone(), b[c].clone());
        for (r, (row, br)) in a.iter_mut().zip(b.iter_mut()).enumerate() {
            if r == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].mul(&inv);
            for (x, p) in row[c..n].iter_mut().zip(&pivot_row[c..n]) {
                *x = x.sub(&f.mul(p));
            }
            *br = br.sub(&f.mul(&pivot_b));
        }
    }
    Some(
        (0..n)
            .map(|i| b[i].div(&a[i][i]).expect("nonzero pivot"))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::FieldElement;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_integer(n)
    }

    #[test]
    fn cross_is_orthogonal() {
        let rows = [
            [fe(1), fe(2), fe(0), fe(-1)],
            [fe(0), fe(1), fe(3), fe(1)],
            [fe(2), fe(0), fe(1), fe(1)],
        ];
        let c = cross4(&rows);
        for r in &rows {
            assert!(dot4(r, &c).is_zero());
        }
        assert!(c.iter().any(|x| !x.is_zero()));
        let dependent = [
            rows[0].clone(),
            rows[1].clone(),
            [fe(1), fe(3), fe(3), fe(0)],
        ];
        assert!(cross4(&dependent).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rank_exact_and_float() {
        let m = vec![
            vec![fe(1), fe(2), fe(3)],
            vec![fe(2), fe(4), fe(6)],
            vec![fe(0), fe(1), fe(1)],
        ];
        assert_eq!(rank(m), 2);
        let f = vec![vec![1.0, 0.0], vec![0.0, 1e-12]];
        assert_eq!(rank(f), 1);
        assert_eq!(rank::<f64>(vec![]), 0);
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![fe(2), fe(1)], vec![fe(1), fe(3)]];
        let x = solve(a, vec![fe(3), fe(5)]).unwrap();
        assert_eq!(
            x,
            vec![
                FieldElement::from_ratios([(4, 5), (0, 1), (0, 1), (0, 1)]),
                FieldElement::from_ratios([(7, 5), (0, 1), (0, 1), (0, 1)])
            ]
        );
        assert!(solve(
            vec![vec![fe(1), fe(2)], vec![fe(2), fe(4)]],
            vec![fe(1), fe(1)]
        )
        .is_none());
    }
}
