//! Exact sparse multivariate polynomials over Q and F_p, monomial orders and gradings.

mod monomial;
mod parse;
mod poly;
mod ring;

pub use monomial::{Monomial, MonomialOrder, OrderBlock, OrderKind};
pub use parse::parse_poly;
pub use poly::{poly_arith, ArithOp, Polynomial, Term, WeightedDegree};
pub use ring::{build_ring, Ring, RingSpec, TauLabel, VariableMeta};

pub(crate) use poly::same_ring;

/// Leading coefficient and exponent vector of `p` under `order`.
pub fn leading_term(
    p: &Polynomial,
    order: &MonomialOrder,
) -> crate::error::Result<(crate::field::Coeff, Monomial)> {
    let lt = p
        .terms()
        .iter()
        .max_by(|a, b| order.cmp(&a.mono, &b.mono))
        .ok_or(crate::error::Error::ZeroPolynomial)?;
    Ok((lt.coeff.clone(), lt.mono.clone()))
}

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;

    use proptest::prelude::*;

    use super::*;
    use crate::field::FieldSpec;

    fn x_ring(n: usize) -> Ring {
        let vars = (1..=n)
            .map(|s| {
                let mut idx = vec![1u32; n - 1];
                for e in idx.iter_mut().rev().take(s - 1) {
                    *e = 0;
                }
                VariableMeta::labelled(format!("x{s}"), TauLabel::new(0, idx))
            })
            .rev()
            .collect();
        build_ring(FieldSpec::Rationals, vars, MonomialOrder::RevLex).unwrap()
    }

    #[test]
    fn base_ring_sorts_x1_first() {
        let r = x_ring(2);
        assert_eq!(r.arity(), 2);
        assert_eq!(r.var_name(0), "x1");
        assert_eq!(r.var_name(1), "x2");
        assert_eq!(r.grading("Deg").unwrap(), &[1, 0]);
        assert_eq!(r.grading("std-x").unwrap(), &[1, 1]);
    }

    #[test]
    fn duplicate_and_bad_field_rejected() {
        let v = vec![VariableMeta::plain("a"), VariableMeta::plain("a")];
        assert!(matches!(
            build_ring(FieldSpec::Rationals, v, MonomialOrder::Lex),
            Err(crate::error::Error::DuplicateVariable(_))
        ));
        let v = vec![VariableMeta::plain("a")];
        assert!(build_ring(FieldSpec::Prime(9), v, MonomialOrder::Lex).is_err());
        let v = vec![
            VariableMeta::labelled("a", TauLabel::new(1, vec![1])),
            VariableMeta::labelled("b", TauLabel::new(1, vec![1])),
        ];
        assert!(build_ring(FieldSpec::Rationals, v, MonomialOrder::Lex).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let r = x_ring(2);
        let p = parse_poly(&r, "x1 + x2").unwrap();
        let q = parse_poly(&r, "x1 - x2").unwrap();
        let zero = Polynomial::zero(&r);
        assert_eq!(poly_arith(ArithOp::Add, &p, &zero).unwrap(), p);
        assert_eq!(
            poly_arith(ArithOp::Mul, &p, &q).unwrap(),
            parse_poly(&r, "x1^2 - x2^2").unwrap()
        );
        let f2 = RingSpec::plain(FieldSpec::Prime(2), &["x1"], MonomialOrder::RevLex).unwrap();
        let x = Polynomial::var(&f2, 0);
        assert!(poly_arith(ArithOp::Add, &x, &x).unwrap().is_zero());
        let other = x_ring(3);
        assert!(matches!(
            poly_arith(ArithOp::Sub, &p, &Polynomial::var(&other, 0)),
            Err(crate::error::Error::RingMismatch)
        ));
    }

    #[test]
    fn leading_term_of_single_monomial() {
        let r = x_ring(3);
        let m = parse_poly(&r, "5*x2^2*x3").unwrap();
        let (c, e) = leading_term(&m, r.order()).unwrap();
        assert_eq!(c, r.field().from_i64(5));
        assert_eq!(e.exps(), &[0, 2, 1]);
        assert!(leading_term(&Polynomial::zero(&r), r.order()).is_err());
    }

    #[test]
    fn weighted_degree_and_unknown_grading() {
        let r = x_ring(2);
        let p = parse_poly(&r, "x1^2 + x1*x2").unwrap();
        assert_eq!(p.weighted_degree("std").unwrap(), WeightedDegree::Homogeneous(2));
        assert_eq!(p.weighted_degree("Deg").unwrap(), WeightedDegree::Inhomogeneous);
        assert!(p.weighted_degree("nope").is_err());
        assert!(Polynomial::zero(&r).weighted_degree("std").is_err());
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::RevLex,
            MonomialOrder::elimination(2, 5),
            MonomialOrder::Block(vec![
                OrderBlock { len: 3, kind: OrderKind::Lex },
                OrderBlock { len: 2, kind: OrderKind::RevLex },
            ]),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, 5).prop_map(Monomial)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn order_axioms(a in mono(), b in mono(), c in mono()) {
            for o in orders() {
                // totality / antisymmetry
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                // multiplicativity
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
                // 1 is minimal
                prop_assert_ne!(o.cmp(&Monomial::one(5), &a), Ordering::Greater);
                // transitivity
                if o.cmp(&a, &b) != Ordering::Less && o.cmp(&b, &c) != Ordering::Less {
                    prop_assert_ne!(o.cmp(&a, &c), Ordering::Less);
                }
            }
        }
    }

    fn poly_strategy(field: FieldSpec) -> impl Strategy<Value = Polynomial> {
        let ring = RingSpec::plain(field, &["a", "b", "c"], MonomialOrder::RevLex).unwrap();
        proptest::collection::vec((-5i64..6, proptest::collection::vec(0u16..3, 3)), 0..5)
            .prop_map(move |ts| {
                let f = ring.field();
                Polynomial::from_terms(&ring, ts.into_iter().map(|(c, e)| (f.from_i64(c), Monomial(e))))
            })
    }

    fn ring_axioms(p: &Polynomial, q: &Polynomial, s: &Polynomial) -> Result<(), TestCaseError> {
        prop_assert_eq!(&(p + q), &(q + p));
        prop_assert_eq!(&(p * q), &(q * p));
        prop_assert_eq!(&(&(p + q) + s), &(p + &(q + s)));
        prop_assert_eq!(&(&(p * q) * s), &(p * &(q * s)));
        prop_assert_eq!(&(p * &(q + s)), &(&(p * q) + &(p * s)));
        prop_assert!((&(p - p)).is_zero());
        // canonical form is idempotent
        let renorm = Polynomial::from_terms(
            p.ring(),
            p.terms().iter().map(|t| (t.coeff.clone(), t.mono.clone())),
        );
        prop_assert_eq!(&renorm, p);
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn arithmetic_axioms_over_q(p in poly_strategy(FieldSpec::Rationals),
                                    q in poly_strategy(FieldSpec::Rationals),
                                    s in poly_strategy(FieldSpec::Rationals)) {
            ring_axioms(&p, &q, &s)?;
        }

        #[test]
        fn arithmetic_axioms_over_f7(p in poly_strategy(FieldSpec::Prime(7)),
                                     q in poly_strategy(FieldSpec::Prime(7)),
                                     s in poly_strategy(FieldSpec::Prime(7))) {
            ring_axioms(&p, &q, &s)?;
        }

        #[test]
        fn print_parse_roundtrip(p in poly_strategy(FieldSpec::Rationals)) {
            let back = parse_poly(p.ring(), &p.to_string()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
