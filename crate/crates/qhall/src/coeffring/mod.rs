//! Exact scalars: Laurent polynomials and rational functions in `v`, quantum
//! numbers, and the specialization `v = sqrt(q)`.

mod laurent;
mod qnum;
mod quadratic;
mod ratfn;

pub use laurent::{rat, rat_frac, LaurentPoly, Rat};
pub use qnum::{binomial, qbinom, qfact, qint};
pub use quadratic::{specialize, QuadraticScalar, SpecializeError};
pub use ratfn::RationalFn;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ParseScalarError(pub String);

/// Coefficient types usable in [`crate::lincomb::LinComb`].
pub trait Coeff: Clone + PartialEq + std::fmt::Display {
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Coeff for RationalFn {
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Coeff for QuadraticScalar {
    fn is_zero(&self) -> bool {
        QuadraticScalar::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-3i64..4, -4i64..5, 1i64..4), 0..4).prop_map(|v| {
            LaurentPoly::from_terms(v.into_iter().map(|(e, n, d)| (e, rat_frac(n, d))))
        })
    }

    fn ratfn_strategy() -> impl Strategy<Value = RationalFn> {
        (poly_strategy(), poly_strategy()).prop_filter_map("zero denominator", |(n, d)| {
            // keep denominators away from v^2 - q factors by adding a constant offset
            let d = &d.scale(&rat(2)) + &LaurentPoly::from_int(7);
            RationalFn::new(n, d)
        })
    }

    #[test]
    fn specialization_examples() {
        let v2 = RationalFn::v_pow(2);
        assert_eq!(specialize(&v2, 2).unwrap(), QuadraticScalar::from_int(2, 2));
        assert_eq!(specialize(&RationalFn::one(), 5).unwrap(), QuadraticScalar::one(5));
        let v = specialize(&RationalFn::v_pow(1), 3).unwrap();
        assert_eq!((v.a().clone(), v.b().clone()), (rat(0), rat(1)));
    }

    #[test]
    fn vanishing_denominator_rejected() {
        let x = RationalFn::new(LaurentPoly::one(), "1*v^2 - 3*v^0".parse().unwrap()).unwrap();
        assert!(specialize(&x, 3).is_err());
        assert!(specialize(&x, 2).is_ok());
    }

    proptest! {
        #[test]
        fn specialize_is_ring_homomorphism(x in ratfn_strategy(), y in ratfn_strategy(), q in prop::sample::select(vec![2u64, 3, 5])) {
            if let (Ok(sx), Ok(sy)) = (specialize(&x, q), specialize(&y, q)) {
                prop_assert_eq!(specialize(&(&x * &y), q).unwrap(), &sx * &sy);
                prop_assert_eq!(specialize(&(&x + &y), q).unwrap(), &sx + &sy);
            }
        }

        #[test]
        fn ratfn_field_axioms(x in ratfn_strategy(), y in ratfn_strategy(), z in ratfn_strategy()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            let s = x.to_string();
            prop_assert_eq!(s.parse::<RationalFn>().unwrap(), x);
        }
    }
}
