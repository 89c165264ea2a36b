use proptest::prelude::*;

use sharpblunt::corresp::iota;
use sharpblunt::fungroup::omega_prime;
use sharpblunt::rootdata::{Family, FiniteType};
use sharpblunt::triples::{enumerate_blunt, enumerate_sharp, is_strictly_sharp, sharp_group, Mode};

const FAMILIES: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

fn any_type(max_rank: usize) -> impl Strategy<Value = FiniteType> {
    (0..FAMILIES.len(), 1..=max_rank).prop_filter_map("valid rank", |(f, n)| FiniteType::new(FAMILIES[f], n).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sharp_triples_are_stable(wp in any_type(24), k in 0usize..64) {
        let g = sharp_group(wp);
        let el = g.elements();
        let x = &el[k % el.len()];
        let act = g.action(x);
        let list = enumerate_sharp(wp, x, Mode::Normative).unwrap();
        prop_assert!(list.iter().filter(|s| is_strictly_sharp(s)).count() <= 1);
        for s in &list {
            prop_assert!(act.stabilizes(&s.i));
            prop_assert_eq!(s.i.len() + s.removed.len(), wp.rank() + 1);
            prop_assert_eq!(s.w_prime_i.rank(), s.i.len());
        }
        // the literal list contains the closed-form one
        let literal = enumerate_sharp(wp, x, Mode::Literal).unwrap();
        for s in &list {
            prop_assert!(literal.iter().any(|l| l.i == s.i));
        }
    }

    #[test]
    fn blunt_triples_map_to_sharp(w in any_type(24), k in 0usize..64) {
        let el = omega_prime(w).elements();
        let x = &el[k % el.len()];
        let sharp = enumerate_sharp(w.dual(), x, Mode::Normative).unwrap();
        for b in enumerate_blunt(w, x).unwrap() {
            prop_assert_eq!(b.w_j.rank(), w.rank());
            prop_assert!(!b.j.contains(&b.deleted));
            // images off the closed-form list are the known r = 1 gap
            if let Ok(s) = iota(&b) {
                prop_assert!(sharp.iter().any(|t| t.i == s.i), "{} {:?}: image not listed", w, x);
            }
        }
    }
}
