use bzcrystal_core::bz_fin::{BzDatum, Norm};
use bzcrystal_core::tableaux_psi::{
    m_component, m_component_naive, m_component_prefix_form, m_component_suffix_form, psi, psi_inverse,
    star_coordinates,
};
use bzcrystal_core::{Interval, Kind, LusztigDatum, MayaFin};
use proptest::prelude::*;

fn datum(max_m: usize, max_entry: i64) -> impl Strategy<Value = LusztigDatum> {
    (-2i64..=2, 1usize..=max_m).prop_flat_map(move |(n, m)| {
        let w = m + 1;
        proptest::collection::vec(0..=max_entry, w * (w - 1) / 2).prop_map(move |vals| {
            let iv = Interval::new(n, m).unwrap();
            let mut entries = Vec::new();
            let mut it = vals.into_iter();
            for i in iv.aug_indices() {
                for j in (i + 1)..=iv.top() {
                    entries.push((i, j, it.next().unwrap()));
                }
            }
            LusztigDatum::from_entries(iv, &entries).unwrap()
        })
    })
}

fn all_keys(iv: Interval) -> Vec<MayaFin> {
    (1..iv.full_mask()).map(|mask| MayaFin::from_mask(iv, mask)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dp_matches_enumeration(a in datum(4, 3)) {
        for k in all_keys(a.interval()) {
            prop_assert_eq!(m_component(&a, &k).unwrap(), m_component_naive(&a, &k).unwrap());
        }
    }

    #[test]
    fn reduced_forms_agree(a in datum(4, 3)) {
        let iv = a.interval();
        for k in all_keys(iv) {
            let full = m_component_naive(&a, &k).unwrap();
            for s in iv.n..=iv.top() {
                if let Some(v) = m_component_prefix_form(&a, &k, s).unwrap() {
                    prop_assert_eq!(v, full, "prefix form s={} k={}", s, k);
                }
            }
            for t in iv.n..=iv.top() {
                if let Some(v) = m_component_suffix_form(&a, &k, t).unwrap() {
                    prop_assert_eq!(v, full, "suffix form t={} k={}", t, k);
                }
            }
        }
    }

    #[test]
    fn psi_lands_in_bz_and_inverts(a in datum(5, 3)) {
        let m = psi(&a).unwrap();
        prop_assert!(m.verify().is_valid());
        prop_assert_eq!(psi_inverse(&m).unwrap(), a.clone());
        for sub_n in a.interval().n..a.interval().top() {
            for sub_m in 1..=(a.interval().last() - sub_n) as usize {
                let sub = Interval::new(sub_n, sub_m).unwrap();
                prop_assert!(m.restrict(sub).unwrap().verify().is_valid());
            }
        }
    }

    #[test]
    fn psi_intertwines_star_structure(a in datum(4, 2)) {
        let m = psi(&a).unwrap();
        let s = m.scalars().unwrap();
        prop_assert_eq!(&s.wt, &a.weight());
        for (idx, i) in a.interval().indices().enumerate() {
            prop_assert_eq!(s.eps_star[idx], a.eps_star(i).unwrap());
            for kind in [Kind::EStar, Kind::FStar] {
                let lhs = a.kashiwara(i, kind).unwrap().map(|b| psi(&b).unwrap());
                let rhs = m.kashiwara_star(i, kind).unwrap();
                prop_assert_eq!(lhs, rhs, "{}_{}", kind, i);
            }
        }
    }

    #[test]
    fn sharp_laws(a in datum(4, 2)) {
        let m = psi(&a).unwrap();
        let sh = m.sharp().unwrap();
        prop_assert!(sh.verify().is_valid());
        prop_assert_eq!(sh.sharp().unwrap(), m.clone());
        prop_assert_eq!(sh.weight(), m.weight());
        for i in a.interval().indices() {
            prop_assert_eq!(m.eps(i).unwrap(), sh.eps_star(i).unwrap());
        }
        prop_assert_eq!(star_coordinates(&sh).unwrap(), a);
    }

    #[test]
    fn ordinary_operators_are_inverse(a in datum(4, 2)) {
        let m = psi(&a).unwrap();
        for i in a.interval().indices() {
            let f = m.kashiwara_ordinary(i, Kind::F).unwrap().unwrap();
            prop_assert!(f.verify().is_valid());
            prop_assert_eq!(f.eps(i).unwrap(), m.eps(i).unwrap() + 1);
            prop_assert_eq!(f.kashiwara_ordinary(i, Kind::E).unwrap().unwrap(), m.clone());
            if let Some(e) = m.kashiwara_ordinary(i, Kind::E).unwrap() {
                prop_assert!(e.verify().is_valid());
                prop_assert_eq!(e.kashiwara_ordinary(i, Kind::F).unwrap().unwrap(), m.clone());
            } else {
                prop_assert_eq!(m.eps(i).unwrap(), 0);
            }
        }
    }

    #[test]
    fn w0_structure_via_star(a in datum(4, 2)) {
        let m = psi(&a).unwrap().star();
        prop_assert_eq!(m.norm(), Norm::W0);
        prop_assert!(m.verify().is_valid());
        for i in a.interval().indices() {
            let f = m.kashiwara_w0(i, Kind::F).unwrap().unwrap();
            prop_assert!(f.verify().is_valid());
            prop_assert_eq!(f.kashiwara_w0(i, Kind::E).unwrap().unwrap(), m.clone());
        }
    }

    #[test]
    fn string_identities(a in datum(4, 2)) {
        let m = psi(&a).unwrap();
        for i in a.interval().indices() {
            for j in a.interval().indices() {
                let r = m.string_interaction(i, j).unwrap();
                prop_assert!(!r.part1.is_fail(), "{:?}", r);
                prop_assert!(!r.part2.is_fail(), "{:?}", r);
                prop_assert!(!r.part3.is_fail(), "{:?}", r);
            }
        }
    }

    #[test]
    fn json_round_trip(a in datum(3, 3)) {
        let m = psi(&a).unwrap();
        prop_assert_eq!(BzDatum::from_json(&m.to_json()).unwrap(), m);
    }
}

#[test]
fn intertwining_small_example() {
    let iv = Interval::new(0, 2).unwrap();
    let a = LusztigDatum::from_entries(iv, &[(1, 2, 1), (2, 3, 1)]).unwrap();
    let lhs = psi(&a.kashiwara(2, Kind::FStar).unwrap().unwrap()).unwrap();
    let rhs = psi(&a).unwrap().kashiwara_star(2, Kind::FStar).unwrap().unwrap();
    assert_eq!(lhs, rhs);
    let want = [(vec![3], -2), (vec![1, 3], -1), (vec![2], -1), (vec![2, 3], -1), (vec![1], 0), (vec![1, 2], 0)];
    for (k, v) in want {
        assert_eq!(lhs.get(&MayaFin::new(iv, &k).unwrap()), v);
    }
}

#[test]
fn psi_inverse_rejects_invalid() {
    let iv = Interval::new(0, 2).unwrap();
    let mut comps = psi(&LusztigDatum::zero(iv)).unwrap().components();
    comps.iter_mut().find(|(k, _)| k == &vec![2]).unwrap().1 = 1;
    let m = BzDatum::from_components(iv, Norm::E, &comps).unwrap();
    assert!(psi_inverse(&m).is_err());
}
