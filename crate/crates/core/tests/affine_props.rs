use bzcrystal_core::bz_affine::{fingerprint_diagrams, greedy_ascent, string_interaction_hat, AffineBz};
use bzcrystal_core::tableaux_psi::{m_component, psi};
use bzcrystal_core::{Interval, Kind, MayaFin, MayaZ};
use proptest::prelude::*;

fn word(l: usize, max_len: usize, kinds: Vec<Kind>) -> impl Strategy<Value = Vec<(Kind, usize)>> {
    proptest::collection::vec((proptest::sample::select(kinds), 0..l), 0..=max_len)
}

fn lowering() -> Vec<Kind> {
    vec![Kind::F, Kind::FStar]
}

fn element(l: usize, w: &[(Kind, usize)]) -> AffineBz {
    AffineBz::from_word(l, w).unwrap().unwrap()
}

// M_k read off Ψ of the whole window, with k moved next to the centre.
fn full_window_component(m: &AffineBz, k: &MayaZ) -> i64 {
    let l = m.l() as i64;
    let k = k.shift(-k.base.div_euclid(l) * l);
    let iv = m.window();
    let mut elems: Vec<i64> = (iv.first()..=k.base).collect();
    elems.extend(k.upper.iter().copied());
    m_component(m.window_datum(), &MayaFin::new(iv, &elems).unwrap()).unwrap()
}

// Truncation of the window around p, wide enough for the band.
fn local_bz(m: &AffineBz, p: i64) -> (Interval, bzcrystal_core::BzDatum) {
    let band = m.key().0.iter().map(|&(i, j, _)| j - i).max().unwrap_or(1);
    let iv = Interval::new(p - band - 2, (2 * band + 4) as usize).unwrap();
    (iv, psi(&m.window_datum().truncate(iv)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn local_components_match_whole_window(w in word(3, 3, lowering())) {
        let m = element(3, &w);
        for k in fingerprint_diagrams(3, 3) {
            prop_assert_eq!(m.component(&k).unwrap(), full_window_component(&m, &k), "k = {}", k);
        }
    }

    #[test]
    fn scalars_match_bz_formulas(l in 3usize..=4, w in word(4, 4, lowering())) {
        let w: Vec<_> = w.into_iter().map(|(k, p)| (k, p % l)).collect();
        let m = element(l, &w);
        for p in 0..l {
            prop_assert_eq!(m.eps_hat(p, false).unwrap(), m.eps_hat_from_component(p).unwrap());
            let (_, bz) = local_bz(&m, p as i64);
            prop_assert_eq!(m.eps_hat(p, true).unwrap(), bz.eps_star(p as i64).unwrap());
            let idx = (p as i64 - bz.interval().first()) as usize;
            prop_assert_eq!(m.weight_hat()[p], bz.weight()[idx]);
        }
    }

    #[test]
    fn components_are_periodic_and_nonpositive(l in 3usize..=4, w in word(4, 4, lowering())) {
        let w: Vec<_> = w.into_iter().map(|(k, p)| (k, p % l)).collect();
        let m = element(l, &w);
        for k in fingerprint_diagrams(l, 4) {
            let v = m.component_certified(&k).unwrap();
            prop_assert!(v <= 0);
            let lk = l as i64;
            prop_assert_eq!(full_window_component(&m, &k.shift(lk)), v);
            prop_assert_eq!(m.component(&k.shift(-2 * lk)).unwrap(), v);
        }
    }

    #[test]
    fn hatted_operators_are_inverse(l in 3usize..=4, w in word(4, 6, lowering())) {
        let w: Vec<_> = w.into_iter().map(|(k, p)| (k, p % l)).collect();
        let m = element(l, &w);
        for p in 0..l {
            for starred in [false, true] {
                let (f, e) = if starred { (Kind::FStar, Kind::EStar) } else { (Kind::F, Kind::E) };
                let down = m.apply_hat(p, f).unwrap().unwrap();
                prop_assert_eq!(&down.apply_hat(p, e).unwrap().unwrap(), &m);
                prop_assert_eq!(down.eps_hat(p, starred).unwrap(), m.eps_hat(p, starred).unwrap() + 1);
                let mut wt = m.weight_hat();
                wt[p] -= 1;
                prop_assert_eq!(down.weight_hat(), wt);
                match m.apply_hat(p, e).unwrap() {
                    Some(up) => prop_assert_eq!(&up.apply_hat(p, f).unwrap().unwrap(), &m),
                    None => prop_assert_eq!(m.eps_hat(p, starred).unwrap(), 0),
                }
            }
        }
    }

    #[test]
    fn raising_preserves_other_star_eps(l in 3usize..=4, w in word(4, 5, lowering())) {
        let w: Vec<_> = w.into_iter().map(|(k, p)| (k, p % l)).collect();
        let m = element(l, &w);
        for p in 0..l {
            if let Some(e) = m.apply_hat(p, Kind::E).unwrap() {
                for q in (0..l).filter(|&q| q != p) {
                    prop_assert_eq!(e.eps_hat(q, true).unwrap(), m.eps_hat(q, true).unwrap());
                }
            }
        }
    }

    #[test]
    fn string_identities_hold(l in 3usize..=4, w in word(4, 5, lowering())) {
        let w: Vec<_> = w.into_iter().map(|(k, p)| (k, p % l)).collect();
        let m = element(l, &w);
        for p in 0..l {
            for q in 0..l {
                let r = string_interaction_hat(&m, p, q).unwrap();
                prop_assert!(r.is_none(), "{:?}", r);
            }
        }
    }

    #[test]
    fn ascent_reaches_o_star(w in word(3, 6, vec![Kind::FStar])) {
        let m = element(3, &w);
        let a = greedy_ascent(&m).unwrap();
        prop_assert!(a.reached_o_star);
        prop_assert_eq!(a.steps as i64, a.height);
        prop_assert_eq!(a.height, w.len() as i64);
    }

    #[test]
    fn word_order_of_commuting_factors(w in word(3, 4, lowering())) {
        // Far-apart finite operators commute inside one window.
        let m = element(3, &w);
        let a = m.window_datum();
        for kind in [Kind::F, Kind::FStar] {
            for q in -2..3i64 {
                let q2 = q + 3;
                let x = a.kashiwara(q, kind).unwrap().unwrap().kashiwara(q2, kind).unwrap().unwrap();
                let y = a.kashiwara(q2, kind).unwrap().unwrap().kashiwara(q, kind).unwrap().unwrap();
                prop_assert_eq!(x, y);
            }
        }
    }
}

#[test]
fn weight_examples() {
    let m = element(3, &[(Kind::F, 0)]);
    assert_eq!(m.weight_hat(), vec![-1, 0, 0]);
    let m = element(3, &[(Kind::F, 0), (Kind::F, 1)]);
    assert_eq!(m.weight_hat(), vec![-1, -1, 0]);
    for q in (0..3).filter(|&q| q != 0) {
        assert_eq!(element(3, &[(Kind::F, 0)]).eps_hat(q, false).unwrap(), 0);
    }
}

#[test]
fn only_o_star_has_all_eps_zero() {
    use bzcrystal_core::crystal_graph::bfs;
    let g = bfs(&AffineBz::o_star(3).unwrap(), false, 4, None, false).unwrap();
    for n in g.nodes.values() {
        let all_zero = (0..3).all(|p| n.element.eps_hat(p, false).unwrap() == 0);
        assert_eq!(all_zero, n.element.is_o_star());
    }
}
