use wci_core::verify::{self, Filters, InstanceKind, SearchBounds};
use wci_core::{Error, Pair, WciFamily};

fn p(s: &str) -> Pair {
    s.parse().unwrap()
}

#[test]
fn conjecture_holds_in_small_ranges() {
    let r = verify::verify_conjecture_regular(&SearchBounds::new(2, 4, 8, 32)).unwrap();
    assert!(r.holds());
    let r = verify::verify_conjecture_regular(&SearchBounds::new(3, 6, 10, 40)).unwrap();
    assert!(r.holds(), "{:?}", r.counterexamples);
    assert!(r.checked > 0);
}

#[test]
fn brauer_pair_meets_the_conjecture() {
    let o = verify::conjecture_instance(&p("35,30,42/10,15,14,21")).unwrap();
    assert!(o.holds());
    assert!(o.equality_witnesses.is_empty());
}

#[test]
fn qdiv_ranges_and_witnesses() {
    let r = verify::verify_lemma_qdiv(&SearchBounds::new(3, 4, 16, 32), 2).unwrap();
    assert!(r.holds(), "{:?}", r.counterexamples);
    assert_eq!(r.checked, 14165);
    assert!(r.equality_witnesses.iter().any(|f| f.instance == "4/2"));
    // the only equality case in range with c ≠ n + 1
    let odd: Vec<&str> = r
        .equality_witnesses
        .iter()
        .filter(|f| f.values["shape_holds"] == 0)
        .map(|f| f.instance.as_str())
        .collect();
    assert_eq!(odd, ["12,2,2/6,4"]);
    assert_eq!(r.stats["equality_shape_violations"], 1);

    let r = verify::verify_lemma_qdiv(&SearchBounds::new(2, 2, 9, 18), 3).unwrap();
    assert!(r.equality_witnesses.iter().any(|f| f.instance == "6,6/3^2"));
    assert!(matches!(
        verify::verify_lemma_qdiv(&SearchBounds::new(1, 1, 4, 4), 4),
        Err(Error::Usage(_))
    ));
}

#[test]
fn prop_regular_witnesses_are_the_sextic_forms() {
    let r = verify::verify_prop_regular(&SearchBounds::new(3, 6, 6, 12)).unwrap();
    assert!(r.holds());
    let codes: Vec<&str> = r.equality_witnesses.iter().map(|f| f.instance.as_str()).collect();
    assert_eq!(
        codes,
        [
            "6,1,1/3,2",
            "6,1/3,2",
            "6,6,1/3^2,2^2",
            "6,6,6/3^3,2^3",
            "6,6/3^2,2^2",
            "6/3,2"
        ]
    );
}

#[test]
fn large_fano_example_passes_nonvanishing_checks() {
    let x: WciFamily = "231,231,26 / 3^2,7^2,11^2,1^447".parse().unwrap();
    let o = verify::nonvanishing_instance(&x).unwrap();
    assert!(o.holds());
}

#[test]
fn hypersurface_examples() {
    assert!(verify::hyp_inequality_instance(&[2, 3, 5]).unwrap().holds());
    let r = verify::verify_hypersurface(&SearchBounds::new(1, 4, 6, 30)).unwrap();
    assert!(r.holds(), "{:?}", r.counterexamples);
}

#[test]
fn enumerate_examples() {
    let mut b = SearchBounds::new(1, 3, 3, 6).with_filters(Filters {
        fano: true,
        calabi_yau: true,
        quasi_smooth: true,
        well_formed: true,
        exclude_linear_cones: true,
        ..Filters::default()
    });
    b.min_vars = 3;
    let out = verify::enumerate(&b, InstanceKind::Families).unwrap();
    assert!(out.iter().any(|i| i.encoding == "6 / 3,2,1"));
    assert!(out.iter().all(|i| i.annotations.contains(&"quasi_smooth")));

    let mut b = SearchBounds::new(0, 1, 2, 1);
    b.min_codim = 0;
    let codes: Vec<String> = verify::enumerate(&b, InstanceKind::Pairs)
        .unwrap()
        .into_iter()
        .map(|i| i.encoding)
        .collect();
    assert_eq!(codes, ["/1", "/2"]);
}

#[test]
fn reports_round_trip_as_json_and_csv() {
    let r = verify::verify_prop_regular(&SearchBounds::new(2, 4, 6, 12)).unwrap();
    let json = r.to_json();
    for key in ["claim", "bounds", "checked", "counterexamples", "equality_witnesses", "elapsed_ms"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    let csv = r.to_csv();
    assert_eq!(csv.lines().count(), 1 + r.equality_witnesses.len());
}
