use proptest::prelude::*;

use sharpblunt::fungroup::{m_set, omega, omega_duality, omega_of_j, omega_prime};
use sharpblunt::rootdata::{affine_diagram, Family, FiniteType};

const FAMILIES: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

fn any_type(max_rank: usize) -> impl Strategy<Value = FiniteType> {
    (0..FAMILIES.len(), 1..=max_rank).prop_filter_map("valid rank", |(f, n)| FiniteType::new(FAMILIES[f], n).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn action_is_a_faithful_homomorphism(t in any_type(24), i in 0usize..64, j in 0usize..64) {
        for g in [omega(t), omega_prime(t)] {
            let el = g.elements();
            let (x, y) = (&el[i % el.len()], &el[j % el.len()]);
            let sum = g.group().add(x, y);
            prop_assert_eq!(g.action(&sum), &g.action(x).compose(g.action(y)));
            prop_assert_eq!(g.action(x).is_identity(), g.is_identity(x));
            let d = g.diagram();
            prop_assert!(d.preserves_structure(g.action(x)));
            for s in d.nodes() {
                prop_assert_eq!(d.mark(g.action(x).apply(s)), d.mark(s));
            }
            // simply transitive on the mark-1 nodes
            let image = g.action(x).apply(0);
            prop_assert_eq!(d.mark(image), 1);
            prop_assert_eq!(g.element_at_node(image), Some(x.clone()));
        }
    }

    #[test]
    fn order_is_connection_index(t in any_type(24)) {
        let g = omega_prime(t);
        prop_assert_eq!(g.order(), t.connection_index());
        prop_assert_eq!(omega(t).order(), g.order());
        prop_assert_eq!(affine_diagram(t).special_nodes().len() as u64, g.order());
        let p = omega_duality(t).unwrap();
        prop_assert!(p.is_bilinear());
        prop_assert!(p.is_nondegenerate());
    }

    #[test]
    fn maximal_subsets(t in any_type(16), pick in 0usize..17, k in 0usize..64) {
        let n = t.rank();
        let s = pick % (n + 1);
        let j: Vec<usize> = (0..=n).filter(|&x| x != s).collect();
        let o = omega_of_j(t, &j).unwrap();
        prop_assert!(o.map_a().is_injective());
        prop_assert!(o.map_b().is_surjective());
        let el = o.omega_prime().elements();
        let w = &el[k % el.len()];
        let fiber = m_set(&o, w).unwrap();
        prop_assert_eq!(fiber.len() as u64, o.product().order() / o.group().order());
        for m in &fiber {
            prop_assert_eq!(o.map_b().apply(m), o.map_a().apply(w));
            prop_assert_eq!(&o.join(&o.split(m)), m);
        }
    }
}
