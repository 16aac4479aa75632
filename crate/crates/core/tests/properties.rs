use cstg::chromatics::{check_transitivity, chi_bits};
use cstg::codec::{decode_drawing, encode_drawing};
use cstg::extraction::PatternKind;
use cstg::ramsey::{naive_bound, RandomPainter};
use cstg::*;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Drawing> {
    prop_oneof![
        (2usize..40).prop_map(|n| gen_convex(n).unwrap()),
        (2usize..40).prop_map(|n| gen_twisted(n).unwrap()),
        (2usize..40, any::<u64>()).prop_map(|(n, s)| gen_halfcircle_seeded(n, s).unwrap()),
        (1u32..5)
            .prop_map(|k| gen_straightline(gen_horton(k).unwrap().into_iter().collect()).unwrap()),
    ]
    .prop_filter("at least 2 vertices", |d| d.n() >= 2)
}

fn selection(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_flat_map(move |p| (2..=n).prop_map(move |k| p[..k].to_vec()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crossing_is_symmetric(d in family(), a in 0usize..64, b in 0usize..64, c in 0usize..64, e in 0usize..64) {
        let n = d.n();
        let (a, b, c, e) = (a % n, b % n, c % n, e % n);
        prop_assume!(a != b && c != e);
        let (e1, e2) = (Edge::new(a, b), Edge::new(c, e));
        prop_assert_eq!(d.cross(e1, e2).ok(), d.cross(e2, e1).ok());
    }

    #[test]
    fn implicit_matches_explicit(d in family()) {
        let x = d.to_explicit().unwrap();
        prop_assert!(d.same_crossings(&x));
        prop_assert_eq!(d.crossing_pairs(), x.crossing_pairs());
    }

    #[test]
    fn induced_subdrawings_compose(d in family().prop_flat_map(|d| {
        let n = d.n();
        (Just(d), selection(n))
    }).prop_flat_map(|(d, s)| {
        let k = s.len();
        (Just(d), Just(s), selection(k))
    })) {
        let (d, outer, inner) = d;
        let once = d.induced_subdrawing(&outer).unwrap().induced_subdrawing(&inner).unwrap();
        let composed: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
        let direct = d.induced_subdrawing(&composed).unwrap();
        prop_assert!(once.same_crossings(&direct));
        prop_assert_eq!(once.rotations(), direct.rotations());
    }

    #[test]
    fn codec_round_trips(d in family()) {
        let text = encode_drawing(&d);
        let back = decode_drawing(&text).unwrap();
        prop_assert_eq!(encode_drawing(&back), text);
        prop_assert_eq!(back, d.clone());
        if d.n() <= 24 {
            let x = d.to_explicit().unwrap();
            let t = encode_drawing(&x);
            prop_assert_eq!(encode_drawing(&decode_drawing(&t).unwrap()), t);
        }
    }

    #[test]
    fn halfcircle_colours_and_transitivity(n in 4usize..18, seed in any::<u64>()) {
        let d = gen_halfcircle_seeded(n, seed).unwrap();
        let ad = d.canonical_view().unwrap();
        for i in 1..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    prop_assert!(TripleColor::from_bits(chi_bits(&ad, i, j, k)).is_some());
                }
            }
        }
        prop_assert_eq!(check_transitivity(&ad), None);
    }

    #[test]
    fn phi_table_matches_lazy_witnesses(n in 4usize..20, seed in any::<u64>()) {
        let d = gen_halfcircle_seeded(n, seed).unwrap();
        let ad = d.canonical_view().unwrap();
        let table = phi_table(&ad).unwrap();
        let mut lazy = PhiOracle::new(&ad);
        for i in 1..n {
            for j in i + 1..n {
                let p = table.get(i, j);
                prop_assert!(p.a >= 2 && p.b >= 2 && p.a < n && p.b < n);
                prop_assert_eq!(lazy.phi(i, j).unwrap(), p);
                for hundred in [true, false] {
                    let w = lazy.witness(i, j, hundred).unwrap();
                    prop_assert_eq!(w.len(), if hundred { p.a } else { p.b });
                    let want = if hundred { TripleColor::C100 } else { TripleColor::C001 };
                    for t in w.windows(3) {
                        prop_assert_eq!(chi(&ad, t[0], t[1], t[2]).unwrap(), want);
                    }
                }
            }
        }
    }

    #[test]
    fn random_painters_respect_the_naive_bound(m in 2usize..7, seed in any::<u64>()) {
        let mut painter = RandomPainter::new(seed);
        let t = run_game(m, &mut NaiveBuilder, &mut painter, usize::MAX).unwrap();
        prop_assert!(t.edges() <= naive_bound(m));
        prop_assert!(t.witness_is_valid());
        let replay = t.replay().unwrap();
        prop_assert_eq!(replay.edge_count(), t.edges());
    }

    #[test]
    fn extraction_certificates_verify(n in 6usize..40, seed in any::<u64>(), m1 in 3usize..5, m2 in 3usize..5) {
        let d = gen_halfcircle_seeded(n, seed).unwrap();
        let ad = d.canonical_view().unwrap();
        let r = extract_pattern(&ad, m1, m2).unwrap();
        if let Outcome::Found(c) = &r.outcome {
            prop_assert!(verify_certificate(&d, c).unwrap().is_pass());
            let want = if c.kind == CertificateKind::Convex { m1 } else { m2 };
            prop_assert_eq!(c.vertex_count(), want);
        }
    }

    #[test]
    fn plane_paths_verify(n in 3usize..48, seed in any::<u64>(), m in 2usize..5) {
        let d = gen_halfcircle_seeded(n, seed).unwrap();
        let ad = d.canonical_view().unwrap();
        let opts = plane_path::PlanePathOptions {
            m_override: Some(m),
            search_budget: OracleBudget::seconds(0.5).unwrap(),
            ..Default::default()
        };
        let r = extract_plane_path(&ad, &opts).unwrap();
        prop_assert!(verify_certificate(&d, &r.path).unwrap().is_pass());
    }

    #[test]
    fn lis_lds_meet_erdos_szekeres(p in Just((0..50usize).collect::<Vec<_>>()).prop_shuffle(), r in 1usize..8) {
        let s = r * r + 1;
        let (i, d) = lis_lds(&p[..s.min(50)]);
        prop_assert!(i.len() > r || d.len() > r);
    }
}

#[test]
fn identity_certificates_pass_for_all_small_sizes() {
    for m in 2..=64 {
        let c = gen_convex(m).unwrap();
        let t = gen_twisted(m).unwrap();
        let id: Vec<usize> = (0..m).collect();
        let cc = Certificate::new(PatternKind::Convex.certificate_kind(), id.clone());
        let tc = Certificate::new(PatternKind::Twisted.certificate_kind(), id);
        assert!(verify_certificate(&c, &cc).unwrap().is_pass(), "convex {m}");
        assert!(
            verify_certificate(&t, &tc).unwrap().is_pass(),
            "twisted {m}"
        );
    }
}
