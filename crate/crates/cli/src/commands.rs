use std::fmt::Write as _;

use serde_json::{json, Value};
use wci_core::hilbert::{self, PoincareSeries};
use wci_core::notation::encode_runs;
use wci_core::verify::{self, Filters, InstanceKind, SearchBounds, VerifyReport};
use wci_core::wci::{self, QsOutcome, QsReport};
use wci_core::{arith, Error, Pair, Result, WciFamily};

use crate::{BoundsArgs, CheckPredicate, Claim, Format, Kind};

/// What a subcommand prints, and the verdict when `--assert` was given.
pub struct Reply {
    pub stdout: String,
    pub asserted: Option<bool>,
}

impl Reply {
    fn new(stdout: String) -> Self {
        Reply {
            stdout,
            asserted: None,
        }
    }

    fn asserting(mut self, assert: bool, verdict: bool) -> Self {
        if assert {
            self.asserted = Some(verdict);
        }
        self
    }
}

fn pretty(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("json values serialize");
    out.push('\n');
    out
}

fn show<T: std::fmt::Display>(value: Option<T>) -> String {
    value.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

fn no_csv(format: Format, command: &str) -> Result<()> {
    if format.csv {
        return Err(Error::Usage(format!("{command} has no CSV output")));
    }
    Ok(())
}

pub fn check(text: &str, format: Format, assert: Option<CheckPredicate>) -> Result<Reply> {
    no_csv(format, "check")?;
    let family: WciFamily = text.parse()?;
    let analysis = wci::analyze(&family);
    let report: Option<QsReport> = wci::quasi_smooth(&family).ok();
    let family_type = analysis.family_type.map(|t| t.label());

    let stdout = if format.json {
        pretty(&json!({
            "family": family.to_string(),
            "linear_cone": analysis.linear_cone,
            "well_formed": analysis.well_formed,
            "quasi_smooth": analysis.quasi_smooth,
            "smooth": analysis.smooth,
            "delta": analysis.delta,
            "type": family_type,
            "fundamental_index": analysis.fundamental_index,
            "strata": report.as_ref().map(|r| &r.strata),
        }))
    } else {
        let mut out = String::new();
        writeln!(out, "family: {family}").unwrap();
        writeln!(out, "linear_cone: {}", analysis.linear_cone).unwrap();
        writeln!(out, "well_formed: {}", show(analysis.well_formed)).unwrap();
        writeln!(out, "quasi_smooth: {}", show(analysis.quasi_smooth)).unwrap();
        writeln!(out, "smooth: {}", show(analysis.smooth)).unwrap();
        writeln!(out, "delta: {}", analysis.delta).unwrap();
        writeln!(out, "type: {}", show(family_type)).unwrap();
        writeln!(out, "fundamental_index: {}", show(analysis.fundamental_index)).unwrap();
        for s in report.iter().flat_map(|r| r.failures()) {
            if let QsOutcome::Fail { reason, .. } = &s.outcome {
                writeln!(out, "fails at P({}): {reason}", encode_runs(&s.values)).unwrap();
            }
        }
        out
    };

    let verdict = match assert {
        None => None,
        Some(CheckPredicate::LinearCone) => Some(Some(analysis.linear_cone)),
        Some(CheckPredicate::WellFormed) => Some(analysis.well_formed),
        Some(CheckPredicate::QuasiSmooth) => Some(analysis.quasi_smooth),
        Some(CheckPredicate::Smooth) => Some(analysis.smooth),
        Some(p) => Some(family_type.map(|t| {
            t == match p {
                CheckPredicate::Fano => "fano",
                CheckPredicate::CalabiYau => "calabi_yau",
                _ => "general",
            }
        })),
    };
    let mut reply = Reply::new(stdout);
    if let Some(v) = verdict {
        let v = v.ok_or_else(|| {
            Error::Domain(format!("the asserted property is undefined for {family}"))
        })?;
        reply.asserted = Some(v);
    }
    Ok(reply)
}

pub fn pair(text: &str, h: u64, split: Option<u64>, format: Format, assert: bool) -> Result<Reply> {
    no_csv(format, "pair")?;
    if h == 0 {
        return Err(Error::Usage("--h must be positive".into()));
    }
    let pair: Pair = text.parse()?;
    let witness = pair.regularity_witness(h);
    let regular = witness.is_none();
    let (stripped, units) = pair.strip_units();
    let split = split.map(|q| pair.split_prime(q)).transpose()?;

    let stdout = if format.json {
        pretty(&json!({
            "pair": pair.to_string(),
            "codim": pair.codim(),
            "delta": pair.delta(),
            "h": h,
            "regular": regular,
            "witness": witness,
            "cancelled": pair.cancel().to_string(),
            "stripped": stripped.to_string(),
            "units_removed": units,
            "split": split.as_ref().map(|s| json!({
                "prime": s.prime,
                "top": s.top.to_string(),
                "at_prime": s.at_prime.to_string(),
                "identity_holds": s.delta_identity_holds(&pair),
            })),
        }))
    } else {
        let mut out = String::new();
        writeln!(out, "pair: {pair}").unwrap();
        writeln!(out, "delta: {}", pair.delta()).unwrap();
        writeln!(out, "{h}-regular: {regular}").unwrap();
        if let Some(w) = &witness {
            let values: Vec<u64> = w
                .classes
                .iter()
                .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
                .collect();
            writeln!(
                out,
                "witness: {} with gcd {} divides {} degrees",
                encode_runs(&values),
                w.gcd,
                w.divisible_degrees
            )
            .unwrap();
        }
        writeln!(out, "cancelled: {}", pair.cancel()).unwrap();
        writeln!(out, "stripped: {stripped} ({units} units removed)").unwrap();
        if let Some(s) = &split {
            writeln!(out, "split at {}: {} and {}", s.prime, s.top, s.at_prime).unwrap();
            writeln!(out, "identity holds: {}", s.delta_identity_holds(&pair)).unwrap();
        }
        out
    };
    Ok(Reply::new(stdout).asserting(assert, regular))
}

pub fn frobenius(text: &str, brauer: bool, format: Format) -> Result<Reply> {
    no_csv(format, "frobenius")?;
    let gens = wci_core::notation::parse_list(text)?;
    let g = arith::frobenius(&gens)?;
    let bound = brauer.then(|| arith::brauer_bound(&gens)).transpose()?;
    let stdout = if format.json {
        pretty(&json!({
            "generators": gens,
            "frobenius": g,
            "brauer_bound": bound,
        }))
    } else {
        match bound {
            Some(b) => format!("{g}\nbrauer_bound: {b}\n"),
            None => format!("{g}\n"),
        }
    };
    Ok(Reply::new(stdout))
}

pub fn hilbert(text: &str, up_to: u64, at: Option<u64>, format: Format) -> Result<Reply> {
    let family: WciFamily = text.parse()?;
    let formal = hilbert::h0(&family, 0)?.formal;
    let mut series = PoincareSeries::for_family(&family);
    let rows: Vec<(u64, String)> = match at {
        Some(k) => vec![(k, series.coefficient(k).to_string())],
        None => series
            .coefficients(up_to)
            .iter()
            .enumerate()
            .map(|(k, c)| (k as u64, c.to_string()))
            .collect(),
    };
    let stdout = if format.json {
        pretty(&json!({
            "family": family.to_string(),
            "formal": formal,
            "coefficients": rows
                .iter()
                .map(|(k, c)| json!({ "k": k, "h0": c }))
                .collect::<Vec<_>>(),
        }))
    } else {
        let mut out = String::from("k,h0\n");
        for (k, c) in &rows {
            writeln!(out, "{k},{c}").unwrap();
        }
        out
    };
    Ok(Reply::new(stdout))
}

pub fn base_locus(text: &str, ell: u64, format: Format, assert: bool) -> Result<Reply> {
    no_csv(format, "base-locus")?;
    let family: WciFamily = text.parse()?;
    let components = wci::base_locus(&family, ell)?;
    let qs: Vec<Option<bool>> = components
        .iter()
        .map(|c| wci::quasi_smooth(&c.family).ok().map(|r| r.verdict))
        .collect();
    let stdout = if format.json {
        pretty(&json!({
            "family": family.to_string(),
            "ell": ell,
            "free": components.is_empty(),
            "components": components
                .iter()
                .zip(&qs)
                .map(|(c, q)| json!({
                    "values": c.values,
                    "family": c.family.to_string(),
                    "quasi_smooth": q,
                }))
                .collect::<Vec<_>>(),
        }))
    } else {
        let mut out = String::new();
        writeln!(out, "family: {family}").unwrap();
        writeln!(out, "free: {}", components.is_empty()).unwrap();
        for (c, q) in components.iter().zip(&qs) {
            writeln!(
                out,
                "component P({}): {} (quasi_smooth: {})",
                encode_runs(&c.values),
                c.family,
                show(*q)
            )
            .unwrap();
        }
        out
    };
    Ok(Reply::new(stdout).asserting(assert, components.is_empty()))
}

fn search_bounds(args: &BoundsArgs) -> Result<SearchBounds> {
    let mut b = SearchBounds::new(args.max_codim, args.max_vars, args.max_weight, args.max_degree)
        .with_filters(Filters {
            fano: args.fano,
            calabi_yau: args.calabi_yau,
            smooth: args.smooth,
            quasi_smooth: args.quasi_smooth,
            well_formed: args.well_formed,
            exclude_linear_cones: args.no_cones,
            gcd_one_weights: args.gcd_one,
        });
    b.min_codim = args.min_codim;
    b.min_vars = args.min_vars;
    b.min_weight = args.min_weight;
    b.min_degree = args.min_degree;
    b.validate()?;
    Ok(b)
}

pub fn enumerate(kind: Kind, args: &BoundsArgs, format: Format) -> Result<Reply> {
    let bounds = search_bounds(args)?;
    let (kind, label) = match kind {
        Kind::Pairs => (InstanceKind::Pairs, "pairs"),
        Kind::Families => (InstanceKind::Families, "families"),
    };
    let instances = verify::enumerate(&bounds, kind)?;
    let stdout = if format.json {
        pretty(&json!({
            "kind": label,
            "bounds": bounds,
            "count": instances.len(),
            "instances": instances,
        }))
    } else if format.csv {
        let mut out = String::from("instance,annotations\n");
        for i in &instances {
            writeln!(out, "\"{}\",{}", i.encoding, i.annotations.join(";")).unwrap();
        }
        out
    } else {
        let mut out = String::new();
        for i in &instances {
            writeln!(out, "{}  [{}]", i.encoding, i.annotations.join(", ")).unwrap();
        }
        writeln!(out, "{} {label}", instances.len()).unwrap();
        out
    };
    Ok(Reply::new(stdout))
}

pub fn verify(
    claim: Claim,
    q: u64,
    args: &BoundsArgs,
    format: Format,
    no_timing: bool,
    assert: bool,
) -> Result<Reply> {
    let bounds = search_bounds(args)?;
    let report = match claim {
        Claim::ConjectureRegular => verify::verify_conjecture_regular(&bounds),
        Claim::PropRegular => verify::verify_prop_regular(&bounds),
        Claim::LemmaQdiv => verify::verify_lemma_qdiv(&bounds, q),
        Claim::Nonvanishing => verify::verify_nonvanishing(&bounds),
        Claim::Hypersurface => verify::verify_hypersurface(&bounds),
    }?;
    let stdout = if format.json {
        pretty(&if no_timing {
            report.to_json_untimed()
        } else {
            report.to_json()
        })
    } else if format.csv {
        report.to_csv()
    } else {
        summary(&report, no_timing)
    };
    Ok(Reply::new(stdout).asserting(assert, report.holds()))
}

fn summary(report: &VerifyReport, no_timing: bool) -> String {
    let mut out = String::new();
    writeln!(out, "claim: {}", report.claim).unwrap();
    writeln!(out, "checked: {}", report.checked).unwrap();
    writeln!(out, "counterexamples: {}", report.counterexamples.len()).unwrap();
    writeln!(out, "equality_witnesses: {}", report.equality_witnesses.len()).unwrap();
    for (k, v) in &report.stats {
        writeln!(out, "{k}: {v}").unwrap();
    }
    if !no_timing {
        writeln!(out, "elapsed_ms: {}", report.elapsed_ms).unwrap();
    }
    let findings = report
        .counterexamples
        .iter()
        .map(|f| ("counterexample", f))
        .chain(report.equality_witnesses.iter().map(|f| ("witness", f)));
    for (kind, f) in findings {
        let values: Vec<String> = f.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "{kind} {}: {} {}", f.instance, f.check, values.join(" ")).unwrap();
    }
    out
}
