//! The ten acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use hecke_core::arith::{
    format_rational, next_odd_prime, reduce_rational, ModN, Modulus, Rational,
};
use hecke_core::certificate::CriterionId;
use hecke_core::chern::{beta4_closed_form, chern_oracle_series, ChernSequence};
use hecke_core::giambelli::{
    degree_check, multiplicity_profile, pk_beta, pk_closed_form_at_beta4, pk_eval, PkRecord,
};
use hecke_core::hecke::{
    prime_genus_congruence_scan, rational_certificate, thaddeus_number, IntersectionQuery,
    PairingSearch, DEFAULT_PAIRING_BUDGET,
};
use hecke_core::modcert::{certify_mod, criterion_e61, find_gpk, mj_mod};
use hecke_core::poly::Symbol;
use hecke_core::store::Store;
use hecke_core::verdict::{
    emit_table, Assumption, ClassStatus, DecideOptions, Engine, LocusStatus, TableFormat,
};
use hecke_core::Error;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn closed_form_at_beta_four() -> Check {
    for k in 1..=14 {
        let got = pk_eval(k, &int(1), &int(4), &int(0));
        let want = pk_closed_form_at_beta4(k);
        ensure(got == want, || {
            format!(
                "k = {k}: {} != {}",
                format_rational(&got),
                format_rational(&want)
            )
        })?;
    }
    Ok("k = 1..14 exact".into())
}

fn computed_range_certificates() -> Check {
    for (k, g) in [(11, 23), (15, 41), (16, 47), (20, 71), (24, 101)] {
        ensure(find_gpk(k) == g, || {
            format!("prime for k = {k} is {}, table says {g}", find_gpk(k))
        })?;
    }
    for k in 10..=24 {
        let g = find_gpk(k);
        let cert = certify_mod(k, None)
            .map_err(|e| format!("k = {k}: {e}"))?
            .ok_or_else(|| format!("k = {k}, g = {g}: all criteria vanish"))?;
        ensure(cert.g0 == g, || {
            format!("k = {k}: certified at {} not {g}", cert.g0)
        })?;
        if k == 17 {
            let e61 = criterion_e61(&mj_mod(17, 53).map_err(|e| e.to_string())?);
            ensure(g == 53 && e61.residue == 0, || {
                "k = 17: first criterion should vanish at 53".into()
            })?;
            ensure(
                cert.criterion == CriterionId::E62 && cert.ell == Some(1),
                || format!("k = 17: got {} ell {:?}", cert.criterion.as_str(), cert.ell),
            )?;
        } else {
            ensure(cert.criterion == CriterionId::E61, || {
                format!("k = {k}: got {}", cert.criterion.as_str())
            })?;
        }
        cert.self_check().map_err(|e| format!("k = {k}: {e}"))?;
    }
    Ok("k = 10..24 certified, k = 17 via e6.2 with ell = 1 at 53".into())
}

fn small_prime_guard() -> Check {
    for (k, g) in [(8u32, 13u64), (9, 17)] {
        match certify_mod(k, None) {
            Err(Error::Inapplicable { k: kk, g: gg }) if kk == k && gg == g => {}
            other => {
                return Err(format!(
                    "k = {k}: expected inapplicable at {g}, got {other:?}"
                ))
            }
        }
    }
    Ok("k = 8 at 13 and k = 9 at 17 inapplicable".into())
}

fn multiplicities(records: &[PkRecord<Rational>]) -> Check {
    for rec in records {
        let d = degree_check(rec);
        ensure(d.equals_bound, || {
            format!("k = {}: degree {} vs {}", d.k, d.degree, d.bound)
        })?;
        if rec.k >= 2 {
            let m = multiplicity_profile(rec).map_err(|e| e.to_string())?;
            ensure(m.proven_bounds_hold, || {
                format!("k = {}: proven bound fails {:?}", rec.k, m.roots)
            })?;
            ensure(m.conjectured_bounds_hold, || {
                format!("k = {}: conjectured bound fails {:?}", rec.k, m.roots)
            })?;
        }
    }
    Ok("k = 1..20 degree and both multiplicity bounds".into())
}

fn congruences() -> Check {
    let spot = thaddeus_number(&IntersectionQuery::new(3, 6, 0, 0).map_err(|e| e.to_string())?);
    ensure(spot == int(224), || {
        format!("(6,0,0) at g = 3 is {}", format_rational(&spot))
    })?;
    let mut triples = 0;
    for g in [3, 5, 7, 11, 13] {
        let scan = prime_genus_congruence_scan(g).map_err(|e| e.to_string())?;
        ensure(scan.passed(), || format!("g = {g}: {:?}", scan.mismatches))?;
        triples += scan.entries.len();
    }
    Ok(format!("{triples} triples, spot value 224"))
}

fn chern_oracles() -> Check {
    let mut full = ChernSequence::full();
    let oracle = chern_oracle_series(48);
    let mut tilde = ChernSequence::tilde();
    let (one, zero, four) = (int(1), int(0), int(4));
    for n in 0..=48i64 {
        let c = full.term(n);
        ensure(c == oracle[n as usize], || {
            format!("c_{n} differs from the series")
        })?;
        let specialised = c
            .substitute(Symbol::H, &one)
            .and_then(|p| p.substitute(Symbol::Gamma, &zero))
            .map_err(|e| e.to_string())?;
        ensure(specialised == tilde.term(n), || {
            format!("reduced c_{n} differs")
        })?;
    }
    for n in 2..=50i64 {
        let v = tilde
            .term(n)
            .evaluate([&one, &zero, &four, &zero])
            .map_err(|e| e.to_string())?;
        let want = beta4_closed_form(n / 2).map_err(|e| e.to_string())?;
        ensure(v == want, || {
            format!("n = {n}: {} at β = 4", format_rational(&v))
        })?;
    }
    Ok("n <= 48 series and specialisation, n <= 50 at β = 4".into())
}

fn dual_modular_route(records: &[PkRecord<Rational>]) -> Check {
    let mut pairs = 0;
    for rec in records.iter().filter(|r| r.k <= 12) {
        let k = rec.k;
        let exact = rec
            .poly
            .univariate_coeffs(Symbol::Beta)
            .map_err(|e| e.to_string())?;
        let p1 = next_odd_prime(2 * k as u64 + 1);
        for g in [p1, next_odd_prime(p1 + 1)] {
            let run = mj_mod(k, g).map_err(|e| e.to_string())?;
            let modulus = Modulus::new(g).map_err(|e| e.to_string())?;
            let u = ModN::new(run.unit, modulus).pow(k as u64);
            let mut reduced = exact
                .iter()
                .map(|c| reduce_rational(c, modulus).map(|r| (u * r).residue()))
                .collect::<Result<Vec<u64>, _>>()
                .map_err(|e| e.to_string())?;
            let mut native = run.m.clone();
            while reduced.last() == Some(&0) {
                reduced.pop();
            }
            while native.last() == Some(&0) {
                native.pop();
            }
            ensure(native == reduced, || {
                format!("k = {k}, g = {g}: {native:?} vs {reduced:?}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (k, prime) pairs agree"))
}

fn rational_pairings() -> Check {
    let mut found = Vec::new();
    for (g, k) in [(5, 2), (8, 3), (12, 4)] {
        match rational_certificate(g, k, DEFAULT_PAIRING_BUDGET).map_err(|e| e.to_string())? {
            PairingSearch::Found(p) => {
                found.push(format!("({g},{k}) = {}", format_rational(&p.value)))
            }
            PairingSearch::Exhausted { evaluated } => {
                return Err(format!("({g},{k}): no nonzero pairing in {evaluated}"))
            }
        }
    }
    match rational_certificate(3, 4, DEFAULT_PAIRING_BUDGET) {
        Err(Error::NegativeExpectedDimension { .. }) => {}
        other => return Err(format!("(3,4) should be rejected, got {other:?}")),
    }
    Ok(format!("{}; (3,4) rejected", found.join(", ")))
}

fn verdicts() -> Check {
    let general = DecideOptions::with_mode(Assumption::General);
    let petri = DecideOptions::with_mode(Assumption::Petri);
    let mut engine = Engine::new(general.clone(), None);
    let v = engine.decide(13, 8).map_err(|e| e.to_string())?;
    ensure(v.locus_status == LocusStatus::Unknown, || {
        format!("(13,8): {v:?}")
    })?;
    let v = engine.decide(16, 8).map_err(|e| e.to_string())?;
    ensure(
        v.locus_status == LocusStatus::Nonempty && v.assumption == Assumption::General,
        || format!("(16,8): {v:?}"),
    )?;
    for (g, k, class) in [
        (2, 2, ClassStatus::Nonzero),
        (4, 4, ClassStatus::Nonzero),
        (3, 4, ClassStatus::Zero),
    ] {
        let v = engine.decide(g, k).map_err(|e| e.to_string())?;
        ensure(
            v.class_status == class && v.locus_status == LocusStatus::Empty,
            || format!("({g},{k}): {v:?}"),
        )?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = Store::open(dir.path()).map_err(|e| e.to_string())?;
    let v = Engine::new(petri, Some(&store))
        .decide(17, 8)
        .map_err(|e| e.to_string())?;
    ensure(
        v.locus_status == LocusStatus::Nonempty
            && v.assumption == Assumption::Petri
            && v.witness.rule.starts_with("modular-certificate"),
        || format!("(17,8): {v:?}"),
    )?;
    let (_, cert) = store
        .get_certificate("cert-mod-k8-g17")
        .map_err(|e| e.to_string())?
        .ok_or("(17,8): certificate not stored")?;
    ensure(
        cert.g0() == 17 && v.witness.certificate_ref.is_some(),
        || "(17,8): wrong base".into(),
    )?;

    let cold = || -> Result<Vec<u8>, String> {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let store = Store::open(dir.path().join("cache")).map_err(|e| e.to_string())?;
        let out = dir.path().join("table.csv");
        emit_table(
            2..=30,
            1..=12,
            TableFormat::Csv,
            &general,
            Some(&store),
            Some(&out),
        )
        .map_err(|e| e.to_string())?;
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let (a, b) = (cold()?, cold()?);
    ensure(a == b, || "cold runs differ".into())?;
    Ok(format!(
        "spot checks hold; two cold tables identical ({} bytes)",
        a.len()
    ))
}

fn thaddeus_integrality() -> Check {
    let mut count = 0;
    for g in 2..=8 {
        for q in IntersectionQuery::all(g) {
            let v = thaddeus_number(&q);
            ensure(v.is_integer(), || {
                format!("{q:?} = {}", format_rational(&v))
            })?;
            count += 1;
        }
    }
    let a3 = thaddeus_number(&IntersectionQuery::new(2, 3, 0, 0).map_err(|e| e.to_string())?);
    ensure(a3 == int(4), || {
        format!("(α³) at g = 2 is {}", format_rational(&a3))
    })?;
    Ok(format!("{count} numbers integral, (α³) = 4 at g = 2"))
}

fn main() -> ExitCode {
    let records: Vec<PkRecord<Rational>> = (1..=20).map(pk_beta).collect();
    let criteria: Vec<Criterion> = vec![
        (
            "closed form at beta = 4",
            Box::new(closed_form_at_beta_four),
        ),
        (
            "computed-range certificates",
            Box::new(computed_range_certificates),
        ),
        ("small-prime guard", Box::new(small_prime_guard)),
        (
            "degree and root multiplicities",
            Box::new(|| multiplicities(&records)),
        ),
        ("prime-genus congruences", Box::new(congruences)),
        ("chern cross-oracle", Box::new(chern_oracles)),
        (
            "dual modular route",
            Box::new(|| dual_modular_route(&records)),
        ),
        ("rational certificates", Box::new(rational_pairings)),
        ("verdict spot checks", Box::new(verdicts)),
        ("intersection integrality", Box::new(thaddeus_integrality)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(note) => println!("PASS {:>2} {name}: {note} [{:.2?}]", i + 1, t.elapsed()),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why} [{:.2?}]", i + 1, t.elapsed());
            }
        }
    }
    println!(
        "acceptance: {} of {} passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
