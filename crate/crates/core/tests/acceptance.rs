//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wci_core::arith::{brauer_bound, frobenius, gcd};
use wci_core::hilbert::PoincareSeries;
use wci_core::verify::{self, SearchBounds, VerifyReport};
use wci_core::wci::{self, analyze, base_locus, fundamental_index, quasi_smooth};
use wci_core::{Pair, WciFamily};

type Outcome = Result<String, String>;

fn fam(s: &str) -> WciFamily {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worked_examples() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut timed = |f: &dyn Fn() -> Result<(), String>| {
        let t = Instant::now();
        let r = f();
        slowest = slowest.max(t.elapsed());
        r
    };
    timed(&|| {
        let good = quasi_smooth(&fam("8,8,8 / 2^4,3^5,5^3")).map_err(|e| e.to_string())?;
        let bad = quasi_smooth(&fam("8,8,8 / 2^3,3^4,5^3")).map_err(|e| e.to_string())?;
        ensure(good.verdict && !bad.verdict, || "X_{8,8,8} verdicts".into())
    })?;
    timed(&|| {
        let x = fam("35 / 5,7,2^5,3^5");
        let index = fundamental_index(&x).map_err(|e| e.to_string())?.index;
        ensure(index == 6, || format!("fundamental index {index}, expected 6"))?;
        let aug = quasi_smooth(&x.augment(6).unwrap()).map_err(|e| e.to_string())?;
        ensure(!aug.verdict, || "X_{35,6} should not be quasi-smooth".into())
    })?;
    timed(&|| {
        let x = fam("231,231,26 / 3^2,7^2,11^2,1^447");
        let a = analyze(&x);
        ensure(
            a.well_formed == Some(true) && a.quasi_smooth == Some(true) && a.smooth == Some(true),
            || format!("big example analysis {a:?}"),
        )?;
        ensure(a.delta == -1 && matches!(a.family_type, Some(wci::FamilyType::Fano { index: 1 })), || {
            format!("big example type {:?}", a.family_type)
        })?;
        let locus = base_locus(&x, 1).map_err(|e| e.to_string())?;
        ensure(locus.len() == 1, || format!("{} base components", locus.len()))?;
        let y = &locus[0].family;
        ensure(*y == fam("231,231,26 / 3,3,7,7,11,11"), || format!("base locus {y}"))?;
        let qs = quasi_smooth(y).map_err(|e| e.to_string())?;
        ensure(!qs.verdict, || "Y should not be quasi-smooth".into())
    })?;
    ensure(slowest < Duration::from_secs(5), || format!("slowest example {slowest:?}"))?;
    Ok(format!("3 worked examples exact, slowest {slowest:.2?}"))
}

fn frobenius_closed_form() -> Outcome {
    let mut count = 0;
    for a in 2..=60u64 {
        for b in a + 1..=60 {
            if gcd(a, b) != 1 {
                continue;
            }
            count += 1;
            let g = frobenius(&[a, b]).map_err(|e| e.to_string())?;
            let expected = (a * b - a - b) as i64;
            ensure(g == expected, || format!("G({a},{b}) = {g}, expected {expected}"))?;
        }
    }
    Ok(format!("{count} coprime pairs match ab - a - b"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut geometric = 0;
    for _ in 0..1000 {
        let (d, w) = common::random_family(&mut rng, 9, 3, 12, 40);
        let h = rng.gen_range(1..=12);
        if common::compare_family(&d, &w, h)? {
            geometric += 1;
        }
    }
    for code in common::CURATED {
        let family = fam(code);
        common::compare_family(family.degrees(), &family.weights().expanded(), 6)?;
    }
    Ok(format!(
        "1000 random families ({geometric} geometric) and {} curated agree",
        common::CURATED.len()
    ))
}

fn random_h_regular(rng: &mut StdRng) -> (Vec<u64>, Vec<u64>, u64) {
    const PRIMES: [u64; 4] = [2, 3, 5, 7];
    loop {
        let n1 = rng.gen_range(1..=7);
        let weights: Vec<u64> = (0..n1).map(|_| rng.gen_range(1..=30)).collect();
        let h: u64 = (0..rng.gen_range(0..=3))
            .map(|_| PRIMES[rng.gen_range(0..PRIMES.len())])
            .product();
        // multiples of the weights always give a regular pair; perturb it
        let mut degrees: Vec<u64> = weights.iter().map(|&a| a * rng.gen_range(1..=3)).collect();
        for _ in 0..rng.gen_range(0..=2) {
            if !degrees.is_empty() {
                degrees.remove(rng.gen_range(0..degrees.len()));
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            degrees.push(rng.gen_range(1..=60));
        }
        if common::h_regular(&degrees, &weights, h) {
            return (degrees, weights, h);
        }
    }
}

fn pick_prime(rng: &mut StdRng, entries: &[u64], h: u64) -> u64 {
    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    if rng.gen_bool(0.3) {
        return PRIMES[rng.gen_range(0..PRIMES.len())];
    }
    let x = entries.iter().copied().chain([h]).filter(|&x| x > 1).collect::<Vec<_>>();
    if x.is_empty() {
        return 2;
    }
    let x = x[rng.gen_range(0..x.len())];
    PRIMES.iter().copied().find(|p| x % p == 0).unwrap_or(2)
}

fn lemma_closure() -> Outcome {
    let mut rng = StdRng::seed_from_u64(99);
    let (mut coprime, mut dividing) = (0, 0);
    for _ in 0..10_000 {
        let (d, w, h) = random_h_regular(&mut rng);
        let entries: Vec<u64> = d.iter().chain(&w).copied().collect();
        let q = pick_prime(&mut rng, &entries, h);
        let pair = Pair::new(d.clone(), w.clone()).unwrap();
        let name = || format!("{} q={q} h={h}", common::fmt_pair(&d, &w));
        let regular = |p: &Pair, h: u64| common::h_regular(p.degrees(), p.weights(), h);
        let split = pair.split_prime(q).unwrap();
        ensure(split.delta_identity_holds(&pair), || format!("delta identity fails for {}", name()))?;
        ensure(regular(&pair.cancel(), h), || format!("cancel loses regularity for {}", name()))?;
        let reduced = split.at_prime.divide_all(q).expect("entries divisible by q");
        if h % q != 0 {
            coprime += 1;
            ensure(
                regular(&split.top, h) && regular(&split.at_prime, h) && regular(&reduced, h),
                || format!("split parts not h-regular for {}", name()),
            )?;
        } else {
            dividing += 1;
            ensure(
                regular(&split.top, h / q) && regular(&split.at_prime, h) && regular(&reduced, h / q),
                || format!("split parts not regular as expected for {}", name()),
            )?;
        }
    }
    Ok(format!("10000 triples ({coprime} with q coprime to h, {dividing} with q | h), no violations"))
}

fn verification_line(report: &VerifyReport, limit: Duration) -> Result<String, String> {
    ensure(report.holds(), || {
        format!("{}: {} counterexamples, first {:?}", report.claim, report.counterexamples.len(), report.counterexamples.first())
    })?;
    ensure(report.elapsed_ms as u128 <= limit.as_millis(), || {
        format!("{} took {} ms", report.claim, report.elapsed_ms)
    })?;
    Ok(format!(
        "{} checked {} ({} witnesses, {} ms)",
        report.claim,
        report.checked,
        report.equality_witnesses.len(),
        report.elapsed_ms
    ))
}

fn exhaustive_verification() -> Outcome {
    let limit = Duration::from_secs(600);
    let mut lines = Vec::new();

    let r = verify::verify_prop_regular(&SearchBounds::new(3, 6, 12, 40)).map_err(|e| e.to_string())?;
    lines.push(verification_line(&r, limit)?);
    ensure(r.equality_witnesses.iter().all(|f| f.check == "equality_form"), || "unexpected witness".into())?;

    let r = verify::verify_conjecture_regular(&SearchBounds::new(2, 5, 10, 40)).map_err(|e| e.to_string())?;
    lines.push(verification_line(&r, limit)?);

    let r = verify::verify_nonvanishing(&SearchBounds::new(2, 6, 8, 24)).map_err(|e| e.to_string())?;
    lines.push(verification_line(&r, limit)?);
    let sextics: Vec<&str> = r.equality_witnesses.iter().map(|f| f.instance.as_str()).collect();
    ensure(sextics == ["6 / 3,2,1", "6,6 / 3^2,2^2,1^2"], || format!("equality families {sextics:?}"))?;

    let r = verify::verify_hypersurface(&SearchBounds::new(1, 5, 10, 60)).map_err(|e| e.to_string())?;
    lines.push(verification_line(&r, limit)?);
    ensure(r.stats.get("gorenstein").copied().unwrap_or(0) > 0, || "no Gorenstein cases".into())?;

    Ok(lines.join("; "))
}

fn brauer_comparison() -> Outcome {
    let started = Instant::now();
    let pair: Pair = "35,30,42/10,15,14,21".parse().unwrap();
    ensure(pair.is_regular(), || "pair should be regular".into())?;
    ensure(pair.delta() == 47, || format!("delta {}", pair.delta()))?;
    let br = brauer_bound(&[10, 15, 14, 21]).map_err(|e| e.to_string())?;
    ensure(br == 61, || format!("Brauer bound {br}"))?;
    let g = frobenius(&[10, 14, 15, 21]).map_err(|e| e.to_string())?;
    // frozen from the brute-force scan
    ensure(g == 47 && g == common::frobenius(&[10, 14, 15, 21]), || format!("G = {g}"))?;
    ensure(started.elapsed() < Duration::from_secs(1), || "too slow".into())?;
    Ok(format!("regular, delta 47, Brauer 61 > 47, G = {g} <= 47"))
}

fn hilbert_oracle() -> Outcome {
    let mut families = 0;
    for n1 in 2..=5usize {
        for w in verify::tuples_desc(1, 6, n1) {
            let counts = common::monomial_counts(&w, 60);
            for c in 1..=2usize.min(n1 - 1) {
                for d in verify::tuples_desc(1, 18, c) {
                    families += 1;
                    let mut series = PoincareSeries::new(&d, &w);
                    let coeffs = series.coefficients(60);
                    for k in 0..=60u64 {
                        let want = common::h0_inclusion_exclusion(&d, &counts, k);
                        ensure(coeffs[k as usize] == BigInt::from(want), || {
                            format!("{} at k={k}", common::fmt_family(&d, &w))
                        })?;
                    }
                }
            }
        }
    }
    let mut corpus = 0;
    for code in common::CURATED.iter().chain(&["231,231,26 / 3^2,7^2,11^2,1^447"]) {
        let x = fam(code);
        if !analyze(&x).is_geometric() {
            continue;
        }
        corpus += 1;
        let mut series = PoincareSeries::for_family(&x);
        ensure(series.coefficients(60).iter().all(|v| !v.is_negative()), || {
            format!("negative coefficient for {code}")
        })?;
    }
    Ok(format!("{families} families up to k=60 exact; {corpus} geometric corpus families nonnegative"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 7] = [
        ("1 worked examples", worked_examples, Duration::from_secs(15)),
        ("2 Frobenius closed form", frobenius_closed_form, Duration::from_secs(10)),
        ("3 oracle equivalence", oracle_equivalence, Duration::from_secs(60)),
        ("4 lemma closure", lemma_closure, Duration::from_secs(30)),
        ("5 exhaustive verification", exhaustive_verification, Duration::from_secs(2400)),
        ("6 Brauer comparison", brauer_comparison, Duration::from_secs(1)),
        ("7 Hilbert oracle", hilbert_oracle, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let started = Instant::now();
        let result = run();
        let elapsed = started.elapsed();
        let result = result.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.1?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(msg) => println!("criterion {name}: PASS ({elapsed:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({elapsed:.2?}) {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
