use super::laurent::{rat, LaurentPoly};

/// `[n]_{v^d} = (v^{dn} - v^{-dn}) / (v^d - v^{-d})`.
pub fn qint(n: i64, d: i64) -> LaurentPoly {
    assert!(d > 0, "quantum integer needs a positive exponent step");
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    LaurentPoly::from_terms((0..m).map(|k| (d * (m - 1 - 2 * k), rat(sign))))
}

/// `[n]_{v^d}! = [n][n-1]...[1]`.
pub fn qfact(n: u32, d: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for k in 1..=n as i64 {
        acc = &acc * &qint(k, d);
    }
    acc
}

/// Generalized Gaussian binomial `prod_{s=1..t} [m-s+1] / [t]!`, total in `m`.
pub fn qbinom(m: i64, t: u32, d: i64) -> LaurentPoly {
    let mut top = LaurentPoly::one();
    for s in 1..=t as i64 {
        top = &top * &qint(m - s + 1, d);
    }
    top.div_exact(&qfact(t, d))
        .expect("Gaussian binomial must be a Laurent polynomial")
}

/// Ordinary binomial, used as a reference in tests.
pub fn binomial(m: u64, t: u64) -> u64 {
    if t > m {
        return 0;
    }
    let mut acc = 1u64;
    for k in 0..t {
        acc = acc * (m - k) / (k + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    // independent construction: quotient of v-power differences by long division
    fn qint_by_division(n: i64, d: i64) -> LaurentPoly {
        let top = &LaurentPoly::v_pow(d * n) - &LaurentPoly::v_pow(-d * n);
        let bottom = &LaurentPoly::v_pow(d) - &LaurentPoly::v_pow(-d);
        top.div_exact(&bottom).unwrap()
    }

    #[test]
    fn small_quantum_integers() {
        assert!(qint(0, 1).is_zero());
        assert_eq!(qint(2, 1), p("1*v^1 + 1*v^-1"));
        assert_eq!(qint(3, 1), p("1*v^2 + 1*v^0 + 1*v^-2"));
        assert_eq!(qint(2, 2), p("1*v^2 + 1*v^-2"));
    }

    #[test]
    fn qint_matches_division() {
        for n in -10..=10 {
            for d in 1..=3 {
                assert_eq!(qint(n, d), qint_by_division(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn qint_is_odd() {
        for n in 0..=10 {
            assert_eq!(qint(-n, 1), -qint(n, 1));
        }
    }

    #[test]
    fn factorials() {
        assert!(qfact(0, 1).is_one());
        assert_eq!(qfact(2, 1), p("1*v^1 + 1*v^-1"));
        assert_eq!(qfact(3, 1), &qint(2, 1) * &qint(3, 1));
    }

    #[test]
    fn binomials() {
        assert_eq!(qbinom(2, 1, 1), p("1*v^1 + 1*v^-1"));
        assert!(qbinom(-4, 0, 1).is_one());
        assert_eq!(qbinom(-1, 1, 1), p("-1*v^0"));
        // [-1 choose 2] = [-1][-2]/[2]! = [1][2]/[2] = 1
        assert!(qbinom(-1, 2, 1).is_one());
    }

    #[test]
    fn binomial_bar_symmetry_and_classical_limit() {
        for m in 0..=8u32 {
            for t in 0..=m {
                let b = qbinom(m as i64, t, 1);
                assert_eq!(b.bar(), b);
                assert_eq!(b.eval_one(), rat(binomial(m as u64, t as u64) as i64));
            }
        }
    }

    #[test]
    fn q_pascal_rule() {
        // [m+1 choose t] = v^{-t}[m choose t] + v^{m+1-t}[m choose t-1]
        for m in 0..7i64 {
            for t in 1..=m as u32 {
                let lhs = qbinom(m + 1, t, 1);
                let rhs = &qbinom(m, t, 1).shift(-(t as i64))
                    + &qbinom(m, t - 1, 1).shift(m + 1 - t as i64);
                assert_eq!(lhs, rhs);
            }
        }
    }

    proptest! {
        #[test]
        fn laurent_ring_axioms(
            a in proptest::collection::vec((-4i64..4, -3i64..4), 0..5),
            b in proptest::collection::vec((-4i64..4, -3i64..4), 0..5),
            c in proptest::collection::vec((-4i64..4, -3i64..4), 0..5),
        ) {
            let mk = |v: &Vec<(i64, i64)>| LaurentPoly::from_terms(v.iter().map(|&(e, k)| (e, rat(k))));
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(a.terms().all(|(_, k)| !num_traits::Zero::is_zero(k)));
            let s = a.to_string();
            prop_assert_eq!(s.parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
