//! Checks the three cases of the asymptotic theorem on one instance `(λ, p, k)`.
//!
//! * Case (i), exceptional `λ`: every `a^{dλ}_{μ,(dk)}` is either the constant
//!   pattern (`1` on `μ = (p)`, else `0`) or the alternating one (`(p)` for
//!   even `d`, `(1^p)` for odd `d`).
//! * Case (ii), `p = 4` and `λ = (b,b,c,c)`: after peeling `c` full columns the
//!   instance is `m·(2,2)` with `m = d(k−c)`, compared against the closed
//!   forms for `a^{(2m,2m)}_{μ,(m)}`.
//! * Case (iii), everything else: both sequences are fitted, leading terms must
//!   be constant and in ratio `dim(V_μ)/p!`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cache::{Cache, What};
use crate::error::{invalid, Result};
use crate::partitions::{classify_exceptional, partitions_of, ExceptionalClass, Partition};
use crate::quasipoly::{
    check_leading_ratio, fit_validated, is_stable, leading_ratio, samples_needed, Fit, FitError, FitOptions, Sample,
};
use crate::sequence::sequence;
use crate::{rational_to_string, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremCase {
    #[serde(rename = "i")]
    Exceptional,
    #[serde(rename = "ii")]
    TwoRowRectangle,
    #[serde(rename = "iii")]
    Generic,
}

impl TheoremCase {
    pub fn label(self) -> &'static str {
        match self {
            TheoremCase::Exceptional => "i",
            TheoremCase::TwoRowRectangle => "ii",
            TheoremCase::Generic => "iii",
        }
    }
}

/// Which case applies and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub case: TheoremCase,
    pub class: ExceptionalClass,
    /// `(b, c)` for `λ = (b,b,c,c)` in case (ii).
    pub rectangle: Option<(usize, usize)>,
}

pub fn route(lambda: &Partition, p: usize, k: usize) -> Result<Route> {
    if p == 0 || lambda.size() != p * k {
        return Err(invalid(format!("need λ ⊢ pk with p ≥ 1; got |{lambda}| = {}, p = {p}, k = {k}", lambda.size())));
    }
    if lambda.len() > p {
        return Err(invalid(format!("ℓ({lambda}) exceeds p = {p}")));
    }
    let class = classify_exceptional(lambda, p, k)?;
    if class.is_exceptional() {
        return Ok(Route { case: TheoremCase::Exceptional, class, rectangle: None });
    }
    if p == 4 {
        let x = lambda.padded(4);
        if x[0] == x[1] && x[2] == x[3] && x[0] > x[2] {
            return Ok(Route { case: TheoremCase::TwoRowRectangle, class, rectangle: Some((x[0], x[2])) });
        }
    }
    Ok(Route { case: TheoremCase::Generic, class, rectangle: None })
}

/// `a^{(2m,2m)}_{μ,(m)}` for `μ ⊢ 4`.
pub fn two_row_closed_form(mu: &Partition, m: u64) -> Option<Rational> {
    let q = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let m_i = m as i64;
    let floor_2m_3 = q((2 * m / 3) as i64, 1);
    let half_m = q(m_i, 2);
    let even = m.is_multiple_of(2);
    match mu.parts() {
        [4] => Some(floor_2m_3 - half_m + if even { q(1, 1) } else { q(1, 2) }),
        [1, 1, 1, 1] => Some(floor_2m_3 - half_m + if even { q(0, 1) } else { q(1, 2) }),
        [2, 2] => Some(q(m_i, 1) - floor_2m_3),
        [3, 1] | [2, 1, 1] => Some(Rational::zero()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Largest `d` sampled. Cases (i)/(ii) default to 9; in case (iii) an
    /// explicit value disables automatic growth.
    pub dmax: Option<u64>,
    pub max_period: usize,
    /// Defaults to the polytope dimension `(p−1)(p−2)/2` (at least 1).
    pub max_degree: Option<usize>,
    /// Case (iii) stops growing the sample range here.
    pub dmax_cap: u64,
    /// Case (iii) stops growing the sample range after this much wall time.
    pub time_budget_secs: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { dmax: None, max_period: 12, max_degree: None, dmax_cap: 72, time_budget_secs: 600 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Partition>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub lambda: Partition,
    pub p: usize,
    pub k: usize,
    pub mus: Vec<Partition>,
}

/// Fitted `a`-sequence for one `μ` in case (iii).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuFit {
    pub mu: Partition,
    pub fit: Fit,
    /// `dim(V_μ)/p!`
    pub expected_ratio: String,
    /// `lead(a)/lead(c)`
    pub observed_ratio: Option<String>,
    pub ratio_ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTable {
    pub d: Vec<u64>,
    pub c: Vec<String>,
    /// keyed by `μ` in text form
    pub a: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: Instance,
    pub case: TheoremCase,
    pub route: Route,
    pub passed: bool,
    /// Case (i): `"constant"` or `"alternating"` when one of them holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_fit: Option<Fit>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub a_fits: Vec<MuFit>,
    pub sequences: SequenceTable,
    pub diffs: Vec<String>,
    /// Wall time; the only field that varies between identical runs.
    pub timing_ms: u64,
}

fn texts(samples: &[Sample]) -> Vec<String> {
    samples.iter().map(|s| rational_to_string(&s.value)).collect()
}

/// Runs the check appropriate to `(λ, p, k)`.
pub fn verify_theorem(
    lambda: &Partition,
    p: usize,
    k: usize,
    opts: &VerifyOptions,
    cache: &Cache,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let route = route(lambda, p, k)?;
    let mus = partitions_of(p, None);
    let mut report = VerificationReport {
        instance: Instance { lambda: lambda.clone(), p, k, mus: mus.clone() },
        case: route.case,
        route: route.clone(),
        passed: false,
        pattern: None,
        checks: Vec::new(),
        c_fit: None,
        a_fits: Vec::new(),
        sequences: SequenceTable::default(),
        diffs: Vec::new(),
        timing_ms: 0,
    };
    match route.case {
        TheoremCase::Exceptional => exceptional(&mut report, opts.dmax.unwrap_or(9), cache)?,
        TheoremCase::TwoRowRectangle => two_row(&mut report, opts.dmax.unwrap_or(9), cache)?,
        TheoremCase::Generic => generic(&mut report, opts, start, cache)?,
    }
    report.passed = report.checks.iter().all(|c| c.passed) && !report.checks.is_empty();
    report.diffs = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| {
            let mu = c.mu.as_ref().map(|m| format!(" μ={m}")).unwrap_or_default();
            format!(
                "{}{mu}: expected {}, observed {}",
                c.name,
                c.expected.as_deref().unwrap_or("-"),
                c.observed.as_deref().unwrap_or("-")
            )
        })
        .collect();
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

type PerMu = Vec<(Partition, Vec<Sample>)>;
type Pattern<'a> = dyn Fn(&Partition, u64) -> i32 + 'a;

fn load_all(report: &mut VerificationReport, dmax: u64, cache: &Cache) -> Result<(Vec<Sample>, PerMu)> {
    let Instance { lambda, p, k, mus } = report.instance.clone();
    let c = sequence(What::C, &lambda, p, k, None, 0..=dmax, cache)?;
    let a = mus
        .iter()
        .map(|mu| Ok((mu.clone(), sequence(What::A, &lambda, p, k, Some(mu), 0..=dmax, cache)?)))
        .collect::<Result<Vec<_>>>()?;
    report.sequences = SequenceTable {
        d: (0..=dmax).collect(),
        c: texts(&c),
        a: a.iter().map(|(mu, s)| (mu.to_text(), texts(s))).collect(),
    };
    Ok((c, a))
}

fn exceptional(report: &mut VerificationReport, dmax: u64, cache: &Cache) -> Result<()> {
    let p = report.instance.p;
    let (c, a) = load_all(report, dmax, cache)?;
    let one = |b: bool| if b { 1 } else { 0 };
    let row = Partition::row(p);
    let column = Partition::column(p);
    let constant = |mu: &Partition, _d: u64| one(*mu == row);
    let alternating = |mu: &Partition, d: u64| if d.is_multiple_of(2) { one(*mu == row) } else { one(*mu == column) };
    let matches = |f: &dyn Fn(&Partition, u64) -> i32| {
        a.iter().all(|(mu, s)| s.iter().all(|x| x.value == Rational::from_integer(BigInt::from(f(mu, x.d)))))
    };
    let pattern: Option<(&str, &Pattern)> = if matches(&constant) {
        Some(("constant", &constant))
    } else if matches(&alternating) {
        Some(("alternating", &alternating))
    } else {
        None
    };
    let c_ok = c.iter().all(|s| s.value.is_one());
    report.checks.push(Check {
        name: "c sequence constantly 1".into(),
        mu: None,
        passed: c_ok,
        expected: Some("1".into()),
        observed: Some(texts(&c).join(",")),
    });
    report.pattern = pattern.map(|(name, _)| name.to_string());
    for (mu, s) in &a {
        let observed = texts(s).join(",");
        let (passed, expected) = match &pattern {
            Some((name, f)) => {
                let e: Vec<String> = s.iter().map(|x| f(mu, x.d).to_string()).collect();
                (true, format!("{name}: {}", e.join(",")))
            }
            None => {
                let e1: Vec<String> = s.iter().map(|x| constant(mu, x.d).to_string()).collect();
                let e2: Vec<String> = s.iter().map(|x| alternating(mu, x.d).to_string()).collect();
                (false, format!("constant: {} | alternating: {}", e1.join(","), e2.join(",")))
            }
        };
        report.checks.push(Check {
            name: "exceptional pattern".into(),
            mu: Some(mu.clone()),
            passed,
            expected: Some(expected),
            observed: Some(observed),
        });
    }
    Ok(())
}

fn two_row(report: &mut VerificationReport, dmax: u64, cache: &Cache) -> Result<()> {
    let (b, c) = report.route.rectangle.expect("case (ii) carries (b, c)");
    let k = report.instance.k;
    let (_, a) = load_all(report, dmax, cache)?;
    for (mu, s) in &a {
        let mut expected = Vec::new();
        for x in s {
            // peel d·c full columns: μ transposes when d·c is odd
            let m = x.d * (k - c) as u64;
            let mu_eff = if (x.d * c as u64) % 2 == 1 { mu.conjugate() } else { mu.clone() };
            expected.push(two_row_closed_form(&mu_eff, m).expect("μ ⊢ 4"));
        }
        let observed: Vec<Rational> = s.iter().map(|x| x.value.clone()).collect();
        report.checks.push(Check {
            name: format!("closed form for λ = ({b},{b},{c},{c})"),
            mu: Some(mu.clone()),
            passed: observed == expected,
            expected: Some(expected.iter().map(rational_to_string).collect::<Vec<_>>().join(",")),
            observed: Some(texts(s).join(",")),
        });
    }
    Ok(())
}

fn generic(report: &mut VerificationReport, opts: &VerifyOptions, start: Instant, cache: &Cache) -> Result<()> {
    let p = report.instance.p;
    let dim = (p - 1) * (p.saturating_sub(2)) / 2;
    let fit_opts = FitOptions {
        max_degree: Some(opts.max_degree.unwrap_or(dim.max(1))),
        max_period: opts.max_period,
        drop_prefix: 0,
    };
    let budget = Duration::from_secs(opts.time_budget_secs);
    const EXTRA: u64 = 3;
    let mut dmax = opts.dmax.unwrap_or_else(|| 3 * samples_needed(fit_opts.max_degree.unwrap_or(1)) as u64 - 1);
    loop {
        let (c_all, a_all) = load_all(report, dmax + EXTRA, cache)?;
        let attempt = fit_everything(&c_all, &a_all, dmax, &fit_opts);
        let growable = opts.dmax.is_none() && dmax < opts.dmax_cap && start.elapsed() < budget;
        match attempt {
            Ok((c_fit, a_fits)) => {
                finish_generic(report, c_fit, a_fits, dmax)?;
                return Ok(());
            }
            Err(_) if growable => {
                dmax = (dmax + (dmax / 2).max(4)).min(opts.dmax_cap);
            }
            Err(failure) => {
                report.checks.push(Check {
                    name: format!("validated quasi-polynomial fits on d = 0..{dmax}"),
                    mu: failure.0,
                    passed: false,
                    expected: Some(format!(
                        "fit with period ≤ {}, degree ≤ {}, stable on {EXTRA} further points",
                        fit_opts.max_period,
                        fit_opts.max_degree.unwrap_or(0)
                    )),
                    observed: Some(failure.1),
                });
                return Ok(());
            }
        }
    }
}

type FitFailure = (Option<Partition>, String);

fn fit_everything(
    c_all: &[Sample],
    a_all: &[(Partition, Vec<Sample>)],
    dmax: u64,
    opts: &FitOptions,
) -> std::result::Result<(Fit, Vec<(Partition, Fit)>), FitFailure> {
    let split = dmax as usize + 1;
    let fit_one = |samples: &[Sample], mu: Option<&Partition>| -> std::result::Result<Fit, FitFailure> {
        let fit = fit_validated(&samples[..split], opts).map_err(|e: FitError| (mu.cloned(), e.to_string()))?;
        if !is_stable(&fit.quasi_polynomial, &samples[split..]) {
            return Err((mu.cloned(), format!("fit {} changes on further samples", fit.quasi_polynomial)));
        }
        Ok(fit)
    };
    let c_fit = fit_one(c_all, None)?;
    let a_fits = a_all
        .iter()
        .map(|(mu, s)| Ok((mu.clone(), fit_one(s, Some(mu))?)))
        .collect::<std::result::Result<Vec<_>, FitFailure>>()?;
    Ok((c_fit, a_fits))
}

fn finish_generic(report: &mut VerificationReport, c_fit: Fit, a_fits: Vec<(Partition, Fit)>, dmax: u64) -> Result<()> {
    let c_rep = c_fit.quasi_polynomial.leading_term_report();
    report.checks.push(Check {
        name: "c has positive degree and constant leading term".into(),
        mu: None,
        passed: c_rep.degree > 0 && c_rep.is_constant_leading,
        expected: Some("degree > 0, constant leading".into()),
        observed: Some(format!("degree {}, leading {:?}", c_rep.degree, leading_texts(&c_rep.leading))),
    });
    for (mu, fit) in a_fits {
        let rep = fit.quasi_polynomial.leading_term_report();
        report.checks.push(Check {
            name: "a has constant leading term of the same degree as c".into(),
            mu: Some(mu.clone()),
            passed: rep.is_constant_leading && rep.degree == c_rep.degree,
            expected: Some(format!("degree {}, constant leading", c_rep.degree)),
            observed: Some(format!("degree {}, leading {:?}", rep.degree, leading_texts(&rep.leading))),
        });
        let expected = leading_ratio(&mu);
        let (ratio_ok, observed) =
            if rep.is_constant_leading && c_rep.is_constant_leading && !c_rep.leading[0].is_zero() {
                let ok = check_leading_ratio(&fit.quasi_polynomial, &c_fit.quasi_polynomial, &mu)?;
                (ok, Some(&rep.leading[0] / &c_rep.leading[0]))
            } else {
                (false, None)
            };
        report.checks.push(Check {
            name: "leading ratio lead(a)/lead(c)".into(),
            mu: Some(mu.clone()),
            passed: ratio_ok,
            expected: Some(rational_to_string(&expected)),
            observed: observed.as_ref().map(rational_to_string),
        });
        report.a_fits.push(MuFit {
            mu,
            fit,
            expected_ratio: rational_to_string(&expected),
            observed_ratio: observed.as_ref().map(rational_to_string),
            ratio_ok,
        });
    }
    report.c_fit = Some(c_fit);
    // keep the reported table to the fitted range plus the stability points
    let keep = dmax as usize + 4;
    report.sequences.d.truncate(keep);
    report.sequences.c.truncate(keep);
    for v in report.sequences.a.values_mut() {
        v.truncate(keep);
    }
    Ok(())
}

fn leading_texts(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_to_string).collect()
}
