use hecke_core::store::Store;
use hecke_core::verdict::{
    decide_grid, emit_table, Assumption, ClassStatus, DecideOptions, Engine, LocusStatus,
    TableFormat,
};

#[test]
fn class_status_is_monotone_in_genus() {
    for mode in [Assumption::AnyCurve, Assumption::Petri, Assumption::General] {
        let rows = decide_grid(2..=40, 1..=12, &DecideOptions::with_mode(mode), None).unwrap();
        for k in 1..=12 {
            let mut seen = false;
            for v in rows.iter().filter(|v| v.k == k) {
                if seen {
                    assert_eq!(v.class_status, ClassStatus::Nonzero, "({}, {k})", v.g);
                }
                seen |= v.class_status == ClassStatus::Nonzero;
            }
        }
    }
}

#[test]
fn nonempty_needs_nonnegative_dimension_and_a_named_rule() {
    let rows = decide_grid(
        2..=40,
        1..=12,
        &DecideOptions::with_mode(Assumption::General),
        None,
    )
    .unwrap();
    for v in &rows {
        if v.locus_status == LocusStatus::Nonempty {
            assert!(v.beta2kk >= 0, "{v:?}");
            assert_ne!(v.witness.rule, "none");
        }
        if v.locus_status == LocusStatus::Nonempty && v.assumption == Assumption::Petri {
            assert_eq!(v.class_status, ClassStatus::Nonzero, "{v:?}");
            assert!(v.witness.rule.ends_with("petri-transfer"), "{v:?}");
        }
        if v.class_status == ClassStatus::Zero {
            assert_eq!(v.witness.rule, "exception-table");
        }
        if v.locus_status == LocusStatus::Empty {
            assert!(
                v.witness.rule == "exception-table" || v.beta2kk < 0,
                "{v:?}"
            );
        }
    }
}

#[test]
fn stronger_hypotheses_never_lose_information() {
    let any = decide_grid(
        2..=30,
        1..=10,
        &DecideOptions::with_mode(Assumption::AnyCurve),
        None,
    )
    .unwrap();
    let petri = decide_grid(
        2..=30,
        1..=10,
        &DecideOptions::with_mode(Assumption::Petri),
        None,
    )
    .unwrap();
    let general = decide_grid(
        2..=30,
        1..=10,
        &DecideOptions::with_mode(Assumption::General),
        None,
    )
    .unwrap();
    for ((a, p), g) in any.iter().zip(&petri).zip(&general) {
        assert_eq!(a.class_status, p.class_status);
        if a.locus_status != LocusStatus::Unknown {
            assert_eq!(a.locus_status, p.locus_status, "{a:?}");
        }
        if p.locus_status != LocusStatus::Unknown {
            assert_eq!(p.locus_status, g.locus_status, "{p:?}");
        }
    }
}

#[test]
fn certificate_refs_resolve_in_the_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = Store::open(dir.path()).unwrap();
    let mut engine = Engine::new(DecideOptions::default(), Some(&store));
    let v = engine.decide(17, 8).unwrap();
    let hash = v.witness.certificate_ref.clone().expect("certificate");
    let (stored, cert) = store.get_certificate("cert-mod-k8-g17").unwrap().unwrap();
    assert_eq!(stored, hash);
    cert.verify().unwrap();

    // a warm store gives the same verdict
    let again = Engine::new(DecideOptions::default(), Some(&store))
        .decide(17, 8)
        .unwrap();
    assert_eq!(again, v);
}

#[test]
fn cold_runs_are_byte_identical() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let out = dir.path().join("table.csv");
        let text = emit_table(
            2..=30,
            1..=12,
            TableFormat::Csv,
            &DecideOptions::with_mode(Assumption::General),
            Some(&store),
            Some(&out),
        )
        .unwrap();
        let bytes = std::fs::read(&out).unwrap();
        assert_eq!(bytes, text.as_bytes());
        bytes
    };
    assert_eq!(run(), run());
}

#[test]
fn unwritable_output_reports_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("table.csv");
    let err = emit_table(
        2..=3,
        1..=1,
        TableFormat::Csv,
        &DecideOptions::default(),
        None,
        Some(&out),
    )
    .unwrap_err();
    assert!(err.to_string().contains("table.csv"), "{err}");
}

#[test]
fn json_rows_mirror_field_names() {
    let text = emit_table(
        4..=4,
        4..=4,
        TableFormat::Json,
        &DecideOptions::default(),
        None,
        None,
    )
    .unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let row = &v[0];
    for key in [
        "g",
        "k",
        "beta2Kk",
        "class_status",
        "locus_status",
        "assumption",
        "witness",
        "twisted_bounds",
    ] {
        assert!(row.get(key).is_some(), "missing {key}");
    }
    assert_eq!(row["class_status"], "NONZERO");
    assert_eq!(row["locus_status"], "EMPTY");
}
