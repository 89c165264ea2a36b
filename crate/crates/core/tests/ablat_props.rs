use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sharpblunt::ablat::{smith_decompose, FinAbGroup, FinAbHom, IntMatrix, Quotient};

fn square(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

fn group() -> impl Strategy<Value = FinAbGroup> {
    prop::collection::vec(1u64..=12, 0..4).prop_map(|f| {
        let parts: Vec<FinAbGroup> = f.into_iter().map(FinAbGroup::cyclic).collect();
        FinAbGroup::direct_product(&parts)
    })
}

fn element(g: &FinAbGroup, seed: &[u64]) -> Vec<u64> {
    g.moduli().iter().zip(seed.iter().cycle()).map(|(m, s)| s % m).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_factorization(rows in square(5)) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_decompose(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(rows.len()));
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        let prod: BigInt = d.iter().product();
        prop_assert_eq!(prod, m.determinant().abs());
    }

    #[test]
    fn quotient_order_is_determinant(rows in square(4)) {
        let m = IntMatrix::from_rows(&rows);
        let det = m.determinant();
        match Quotient::new(&m) {
            Err(_) => prop_assert!(det.is_zero()),
            Ok(q) => {
                prop_assert_eq!(BigInt::from(q.group().order()), det.abs());
                for j in 0..m.cols() {
                    prop_assert_eq!(q.class_of(&m.column(j)), q.group().identity());
                }
                for x in q.group().elements().into_iter().take(30) {
                    prop_assert_eq!(q.class_of(&q.lift(&x)), x);
                }
            }
        }
    }

    #[test]
    fn group_laws(g in group(), a in prop::collection::vec(0u64..100, 1..4), b in prop::collection::vec(0u64..100, 1..4)) {
        let (x, y) = (element(&g, &a), element(&g, &b));
        prop_assert_eq!(g.add(&x, &y), g.add(&y, &x));
        prop_assert_eq!(g.add(&x, &g.neg(&x)), g.identity());
        prop_assert_eq!(g.add(&g.add(&x, &y), &x), g.add(&x, &g.add(&y, &x)));
        prop_assert_eq!(g.order() % g.element_order(&x), 0);
        prop_assert_eq!(g.scale(g.element_order(&x), &x), g.identity());
        prop_assert_eq!(g.elements().len() as u64, g.order());
        let f = g.invariant_factors();
        prop_assert_eq!(f.iter().product::<u64>(), g.order());
        for w in f.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn kernel_times_image(g in group(), h in group(), seeds in prop::collection::vec(0u64..100, 4)) {
        // multiply each generator image by the target exponent so the map is well defined
        let exp = h.moduli().iter().copied().fold(1u64, |a, m| a / num_integer::gcd(a, m) * m);
        let cols: Vec<Vec<u64>> = g
            .moduli()
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let c = element(&h, &seeds[i..]);
                h.scale(exp / num_integer::gcd(exp, m), &c)
            })
            .collect();
        let f = FinAbHom::from_generator_images(g.clone(), h.clone(), cols).expect("well defined");
        prop_assert!(f.is_homomorphism());
        prop_assert_eq!(f.kernel().len() * f.image().len(), g.order() as usize);
        let target = f.apply(&element(&g, &seeds));
        prop_assert_eq!(f.hom_fiber(&target).len(), f.kernel().len());
    }
}
