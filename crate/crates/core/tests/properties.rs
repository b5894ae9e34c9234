use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use sq3::algebraic::{FieldElement as F, Sign};
use sq3::quaternion::Quaternion;

fn coeff() -> impl Strategy<Value = (i64, i64)> {
    (-2000i64..2000, 1i64..60)
}

fn element() -> impl Strategy<Value = F> {
    (coeff(), coeff(), coeff(), coeff()).prop_map(|(a, b, c, d)| F::from_ratios([a, b, c, d]))
}

fn nonzero() -> impl Strategy<Value = F> {
    element().prop_filter("nonzero", |x| !x.is_zero())
}

fn quaternion() -> impl Strategy<Value = Quaternion<F>> {
    (element(), element(), element(), element())
        .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

/// Sign of n0 + n1√2 + n2√5 + n3√10 from integer square roots at growing
/// scale; each truncated root is off by less than one unit.
fn sign_oracle(n: &[BigInt; 4]) -> Sign {
    if n.iter().all(|x| x.is_zero()) {
        return Sign::Zero;
    }
    let mut scale = BigInt::from(10).pow(30);
    loop {
        let sq = &scale * &scale;
        let roots = [
            scale.clone(),
            (&sq * BigInt::from(2)).sqrt(),
            (&sq * BigInt::from(5)).sqrt(),
            (&sq * BigInt::from(10)).sqrt(),
        ];
        let approx: BigInt = n.iter().zip(&roots).map(|(c, r)| c * r).sum();
        let err: BigInt = n[1..].iter().map(|c| c.abs()).sum::<BigInt>() + 1;
        if approx.abs() > err {
            return if approx.is_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            };
        }
        scale *= BigInt::from(10).pow(30);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, F::zero());
        prop_assert_eq!(&a * &F::one(), a.clone());
    }

    #[test]
    fn inverses(a in nonzero()) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, F::one());
        prop_assert_eq!(inv.inverse().unwrap(), a);
    }

    #[test]
    fn sign_agrees_with_integer_roots(a in element()) {
        let (n, _) = a.integer_coefficients();
        prop_assert_eq!(a.sign(), sign_oracle(&n));
    }

    /// Values within one unit of zero.
    #[test]
    fn sign_of_near_cancellations(b in -3000i64..3000, c in -3000i64..3000, d in -3000i64..3000, shift in -1i64..=1) {
        let irr = b as f64 * 2f64.sqrt() + c as f64 * 5f64.sqrt() + d as f64 * 10f64.sqrt();
        let a = -(irr.round() as i64) + shift;
        let x = F::from_ratios([(a, 1), (b, 1), (c, 1), (d, 1)]);
        let n = [a, b, c, d].map(BigInt::from);
        prop_assert_eq!(x.sign(), sign_oracle(&n));
        prop_assert_eq!(x.cmp_value(&F::zero()), match sign_oracle(&n) {
            Sign::Positive => std::cmp::Ordering::Greater,
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
        });
    }

    /// Powers of √2−1, √5−2 and √10−3 are tiny positive numbers whose
    /// coefficients cancel to many digits.
    #[test]
    fn sign_of_small_units(which in 0usize..3, k in 1u32..40, negate in any::<bool>()) {
        let unit = [
            F::from_ratios([(-1, 1), (1, 1), (0, 1), (0, 1)]),
            F::from_ratios([(-2, 1), (0, 1), (1, 1), (0, 1)]),
            F::from_ratios([(-3, 1), (0, 1), (0, 1), (1, 1)]),
        ][which].clone();
        let mut x = F::one();
        for _ in 0..k {
            x = &x * &unit;
        }
        if negate {
            x = -x;
        }
        let (n, _) = x.integer_coefficients();
        let expected = if negate { Sign::Negative } else { Sign::Positive };
        prop_assert_eq!(sign_oracle(&n), expected);
        prop_assert_eq!(x.sign(), expected);
    }

    #[test]
    fn canonical_form(parts in (coeff(), coeff(), coeff(), coeff()), k in 1i64..500) {
        let (a, b, c, d) = parts;
        let x = F::from_ratios([a, b, c, d]);
        let scaled = F::from_ratios([a, b, c, d].map(|(p, q)| (p * k, q * k)));
        prop_assert_eq!(&x, &scaled);
        let negated = F::from_ratios([a, b, c, d].map(|(p, q)| (-p, -q)));
        prop_assert_eq!(&x, &negated);
        prop_assert_eq!(F::from_basis_strings(&x.to_basis_strings()).unwrap(), x.clone());
        let exact = a.0 as f64 / a.1 as f64 + b.0 as f64 / b.1 as f64 * 2f64.sqrt()
            + c.0 as f64 / c.1 as f64 * 5f64.sqrt() + d.0 as f64 / d.1 as f64 * 10f64.sqrt();
        prop_assert!((x.to_f64() - exact).abs() <= 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn quaternion_identities(p in quaternion(), q in quaternion(), r in quaternion()) {
        prop_assert_eq!(p.mul(&q).norm_sq(), &p.norm_sq() * &q.norm_sq());
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q).conj(), q.conj().mul(&p.conj()));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.dot(&q), q.dot(&p));
    }

    #[test]
    fn float_quaternions_track_exact(p in quaternion(), q in quaternion()) {
        let exact = p.mul(&q).to_f64();
        let float = p.to_f64().mul(&q.to_f64());
        let scale = 1.0 + p.to_f64().norm_sq() * q.to_f64().norm_sq();
        for (a, b) in exact.to_array().iter().zip(float.to_array()) {
            prop_assert!((a - b).abs() <= 1e-9 * scale);
        }
    }
}
