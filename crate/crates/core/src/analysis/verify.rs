//! Closed-form-vs-oracle sweeps over every modulus up to a bound.
//!
//! The oracles are the definitional transforms (`dft_naive_signed`,
//! `fzt_direct_signed`) run with a configurable sign so that a corrupted
//! convention can be injected and must be caught.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{factorize, gcd, is_prime, jacobi_symbol, CrtSplit, Factorization};
use crate::characters::{enumerate_characters, enumerate_primitive, Character};
use crate::error::Result;
use crate::exec::Execution;
use crate::sequences as seq;
use crate::signal::{ComplexSeq, ZakArray};
use crate::transforms::{
    dft_character_closed_form, dft_naive_signed, fzt_character_closed_form, fzt_direct_signed,
    gauss_sum_direct, gtpf_dft_with, DFT_SIGN,
};

use super::qrl::{qrl_pairs, verify_qrl_via_traces};
use super::{correlation_report, IDEAL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Characters,
    Gtpf,
    Sequences,
    Qrl,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Characters => "characters",
            Suite::Gtpf => "gtpf",
            Suite::Sequences => "sequences",
            Suite::Qrl => "qrl",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub max_n: u64,
    /// Sign used by the oracle transforms; anything but `DFT_SIGN` is a
    /// deliberately corrupted convention.
    pub oracle_sign: i8,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            max_n: 105,
            oracle_sign: DFT_SIGN,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub check: &'static str,
    pub subject: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn numeric(suite: Suite, check: &'static str, subject: String, err: f64, tol: f64) -> Self {
        Self {
            suite: suite.name(),
            check,
            subject,
            max_error: err,
            tolerance: tol,
            passed: err <= tol,
        }
    }

    /// Exact check; `mismatches` counts the cases that disagreed.
    fn exact(suite: Suite, check: &'static str, subject: String, mismatches: usize) -> Self {
        Self::numeric(suite, check, subject, mismatches as f64, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub suite: &'static str,
    pub check: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_error: f64,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub max_n: u64,
    pub oracle_sign: i8,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub summary: Vec<CheckSummary>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    fn new(config: &VerifyConfig, checks: Vec<CheckResult>) -> Self {
        let mut groups: BTreeMap<(&'static str, &'static str), CheckSummary> = BTreeMap::new();
        for c in &checks {
            let entry = groups.entry((c.suite, c.check)).or_insert(CheckSummary {
                suite: c.suite,
                check: c.check,
                cases: 0,
                failures: 0,
                max_error: 0.0,
                first_failure: None,
            });
            entry.cases += 1;
            entry.max_error = entry.max_error.max(c.max_error);
            if !c.passed {
                entry.failures += 1;
                entry.first_failure.get_or_insert_with(|| c.subject.clone());
            }
        }
        let failed = checks.iter().filter(|c| !c.passed).count();
        Self {
            suite: config.suite,
            max_n: config.max_n,
            oracle_sign: config.oracle_sign,
            passed: failed == 0,
            total: checks.len(),
            failed,
            summary: groups.into_values().collect(),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Fixed-width summary table, one row per check.
    pub fn render_table(&self) -> String {
        self.render_table_colored(false)
    }

    /// As [`render_table`](Self::render_table), with ANSI-colored status words.
    pub fn render_table_colored(&self, color: bool) -> String {
        let paint = |ok: bool| match (ok, color) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (true, true) => "\x1b[32mPASS\x1b[0m",
            (false, true) => "\x1b[31mFAIL\x1b[0m",
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<11} {:<42} {:>7} {:>7} {:>11}  status",
            "suite", "check", "cases", "failed", "max error"
        );
        for s in &self.summary {
            let status = paint(s.failures == 0);
            let _ = write!(
                out,
                "{:<11} {:<42} {:>7} {:>7} {:>11.3e}  {}",
                s.suite, s.check, s.cases, s.failures, s.max_error, status
            );
            if let Some(first) = &s.first_failure {
                let _ = write!(out, " (first: {first})");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} checks, {} failed: {}",
            self.total,
            self.failed,
            paint(self.passed)
        );
        out
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Modulus(u64),
    Prime(u64),
    PrimePair(u64, u64),
    Qrl(u64, u64),
}

/// Runs every check of `config.suite` on all moduli up to `config.max_n`.
pub fn verify_theorem_suite(config: &VerifyConfig) -> Result<VerifyReport> {
    let suite = config.suite;
    let mut tasks = Vec::new();
    if suite.includes(Suite::Characters) || suite.includes(Suite::Gtpf) || suite.includes(Suite::Sequences) {
        tasks.extend((3..=config.max_n).step_by(2).map(Task::Modulus));
    }
    if suite.includes(Suite::Sequences) {
        let primes: Vec<u64> = (3..=config.max_n).step_by(2).filter(|&p| is_prime(p)).collect();
        tasks.extend(primes.iter().map(|&p| Task::Prime(p)));
        for (i, &p) in primes.iter().enumerate() {
            for &q in &primes[i + 1..] {
                if p * q <= config.max_n {
                    tasks.push(Task::PrimePair(p, q));
                }
            }
        }
    }
    if suite.includes(Suite::Qrl) {
        tasks.extend(qrl_pairs(config.max_n).into_iter().map(|(a, b)| Task::Qrl(a, b)));
    }

    let results = config.exec.map_slice(&tasks, |&task| run_task(task, config));
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(VerifyReport::new(config, checks))
}

fn run_task(task: Task, config: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let oracle = Oracle {
        sign: config.oracle_sign,
    };
    let mut out = Vec::new();
    match task {
        Task::Modulus(n) => {
            let f = factorize(n)?;
            if config.suite.includes(Suite::Characters) || config.suite.includes(Suite::Gtpf) {
                let spectra = CharacterSpectra::new(n, &oracle)?;
                if config.suite.includes(Suite::Characters) {
                    character_checks(&spectra, &f, &mut out);
                }
                if config.suite.includes(Suite::Gtpf) {
                    for split in f.coprime_splits() {
                        gtpf_checks(&spectra, &split, &f, &oracle, &mut out)?;
                    }
                }
            }
            if config.suite.includes(Suite::Sequences) && f.is_squarefree() {
                jacobi_checks(n, &f, &oracle, &mut out)?;
            }
        }
        Task::Prime(p) => prime_sequence_checks(p, &oracle, &mut out)?,
        Task::PrimePair(p, q) => pair_sequence_checks(p, q, &oracle, &mut out)?,
        Task::Qrl(a, b) => {
            let r = verify_qrl_via_traces(a, b)?;
            let err = r.ratio_error.max(r.sign_form_error).max(r.twist_form_error);
            out.push(CheckResult {
                suite: Suite::Qrl.name(),
                check: "trace-reciprocity",
                subject: format!("({a},{b})"),
                max_error: err,
                tolerance: 1e-9,
                passed: r.passed,
            });
        }
    }
    Ok(out)
}

struct Oracle {
    sign: i8,
}

impl Oracle {
    fn dft(&self, x: &ComplexSeq) -> ComplexSeq {
        dft_naive_signed(x, self.sign, Execution::Sequential)
    }

    fn fzt(&self, x: &ComplexSeq, l: usize) -> Result<ZakArray> {
        fzt_direct_signed(x, l, self.sign, Execution::Sequential)
    }

    fn dft_character(&self, chi: &Character) -> ComplexSeq {
        self.dft(&ComplexSeq::new(chi.to_complex()))
    }
}

fn tol(n: u64) -> f64 {
    1e-9 * n as f64
}

fn diff(a: &ComplexSeq, b: &ComplexSeq) -> Result<f64> {
    a.max_abs_diff(b)
}

fn is_unit(a: u64, n: u64) -> bool {
    gcd(a, n) == 1
}

/// All characters mod `n` with their oracle spectra.
struct CharacterSpectra {
    n: u64,
    chars: Vec<Character>,
    hats: Vec<ComplexSeq>,
}

impl CharacterSpectra {
    fn new(n: u64, oracle: &Oracle) -> Result<Self> {
        let chars = enumerate_characters(n)?;
        let hats = chars.iter().map(|c| oracle.dft_character(c)).collect();
        Ok(Self { n, chars, hats })
    }

    /// Whether the spectrum vanishes off U(n).
    fn extends(&self, i: usize) -> bool {
        off_unit_max(&self.hats[i], self.n) <= tol(self.n)
    }
}

fn off_unit_max(hat: &ComplexSeq, n: u64) -> f64 {
    (0..n)
        .filter(|&a| !is_unit(a, n))
        .map(|a| hat[a as usize].norm())
        .fold(0.0, f64::max)
}

fn character_checks(s: &CharacterSpectra, f: &Factorization, out: &mut Vec<CheckResult>) {
    let n = s.n;
    let subject = format!("n={n}");
    let suite = Suite::Characters;

    let mut eigen_err = 0.0f64;
    let mut primitivity_mismatch = 0;
    let mut magnitude_err = 0.0f64;
    let mut vanishing_mismatch = 0;
    for (i, chi) in s.chars.iter().enumerate() {
        let g = gauss_sum_direct(chi).value;
        let conj = chi.conj().to_complex();
        for a in (0..n).filter(|&a| is_unit(a, n)) {
            let a = a as usize;
            eigen_err = eigen_err.max((s.hats[i][a] - g * conj[a]).norm());
        }
        let primitive = chi.is_primitive();
        if s.extends(i) != primitive {
            primitivity_mismatch += 1;
        }
        if primitive {
            magnitude_err = magnitude_err.max((g.norm_sqr() - n as f64).abs());
        }
        if f.is_prime_power() && f.factors()[0].exp >= 2 {
            let nonzero = s.hats[i][1].norm() > tol(n);
            if nonzero != primitive {
                vanishing_mismatch += 1;
            }
        }
    }
    out.push(CheckResult::numeric(suite, "dft-eigen-identity-on-units", subject.clone(), eigen_err, tol(n)));
    out.push(CheckResult::exact(suite, "primitive-iff-spectrum-vanishes-off-units", subject.clone(), primitivity_mismatch));
    out.push(CheckResult::numeric(suite, "primitive-gauss-sum-magnitude", subject.clone(), magnitude_err, tol(n)));
    if f.is_prime_power() && f.factors()[0].exp >= 2 {
        out.push(CheckResult::exact(suite, "prime-power-primitive-iff-dft-at-one", subject, vanishing_mismatch));
    }
}

fn split_subject(split: &CrtSplit) -> String {
    format!("n={} ({}x{})", split.n, split.r1, split.r2)
}

fn gtpf_checks(
    s: &CharacterSpectra,
    split: &CrtSplit,
    f: &Factorization,
    oracle: &Oracle,
    out: &mut Vec<CheckResult>,
) -> Result<()> {
    let suite = Suite::Gtpf;
    let n = s.n;
    let (r1, r2) = (split.r1, split.r2);
    let subject = split_subject(split);
    let halves1 = CharacterSpectra::new(r1, oracle)?;
    let halves2 = CharacterSpectra::new(r2, oracle)?;
    let index_of = |sp: &CharacterSpectra, chi: &Character| {
        sp.chars.iter().position(|c| c == chi).expect("restriction is a character")
    };

    let mut factor_err = 0.0f64;
    let mut at_one_mismatch = 0;
    let mut primitive_mismatch = 0;
    let mut gauss_err = 0.0f64;
    let mut closed_err = 0.0f64;
    let mut zak_err = 0.0f64;
    for (i, chi) in s.chars.iter().enumerate() {
        let chi1 = chi.restrict(r1)?;
        let chi2 = chi.restrict(r2)?;
        let (i1, i2) = (index_of(&halves1, &chi1), index_of(&halves2, &chi2));
        let (h, h1, h2) = (&s.hats[i], &halves1.hats[i1], &halves2.hats[i2]);

        for a1 in 0..r1 {
            for a2 in 0..r2 {
                let lhs = h[split.combine(a1, a2) as usize];
                let rhs = h1[(split.f1 * a1 % r1) as usize] * h2[(split.f2 * a2 % r2) as usize];
                factor_err = factor_err.max((lhs - rhs).norm());
            }
        }

        let nz = |v: Complex64, m: u64| v.norm() > tol(m);
        if nz(h[1], n) != (nz(h1[1], r1) && nz(h2[1], r2)) {
            at_one_mismatch += 1;
        }
        let ext = s.extends(i);
        if ext != (halves1.extends(i1) && halves2.extends(i2)) || ext != chi.is_primitive() {
            primitive_mismatch += 1;
        }

        if chi.is_primitive() {
            let g = gauss_sum_direct(chi).value;
            let twist = chi1.evaluate(split.f1 as i64).conj() * chi2.evaluate(split.f2 as i64).conj();
            let g_crt = gauss_sum_direct(&chi1).value * gauss_sum_direct(&chi2).value * twist.to_complex();
            gauss_err = gauss_err.max((g - g_crt).norm());
            closed_err = closed_err.max(diff(&dft_character_closed_form(chi, split)?, h)?);
        }

        if chi2.is_primitive() {
            let closed = fzt_character_closed_form(&chi1, &chi2)?;
            let direct = oracle.fzt(&ComplexSeq::new(chi.to_complex()), r2 as usize)?;
            zak_err = zak_err.max(closed.max_abs_diff(&direct)?);
        }
    }
    out.push(CheckResult::numeric(suite, "crt-dft-factorization", subject.clone(), factor_err, tol(n)));
    out.push(CheckResult::exact(suite, "dft-at-one-nonzero-iff-factors", subject.clone(), at_one_mismatch));
    out.push(CheckResult::exact(suite, "primitive-iff-factors-primitive", subject.clone(), primitive_mismatch));
    out.push(CheckResult::numeric(suite, "gauss-sum-crt-product", subject.clone(), gauss_err, tol(n)));
    out.push(CheckResult::numeric(suite, "character-dft-closed-form", subject.clone(), closed_err, tol(n)));
    out.push(CheckResult::numeric(suite, "character-zak-closed-form", subject.clone(), zak_err, tol(n)));

    // random inputs plus one character, seeded by the split
    let mut rng = ChaCha8Rng::seed_from_u64(n << 20 | r1);
    let mut gtpf_err = 0.0f64;
    let mut inputs: Vec<ComplexSeq> = (0..3)
        .map(|_| {
            ComplexSeq::new(
                (0..n)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
        })
        .collect();
    if let Some(chi) = enumerate_primitive(n)?.first() {
        inputs.push(ComplexSeq::new(chi.to_complex()));
    }
    for x in &inputs {
        let fast = gtpf_dft_with(x, split, Execution::Sequential)?;
        gtpf_err = gtpf_err.max(diff(&fast, &oracle.dft(x))?);
    }
    out.push(CheckResult::numeric(suite, "gtpf-matches-naive-dft", subject.clone(), gtpf_err, tol(n)));

    if f.is_squarefree() {
        let jac = |m: u64| Character::jacobi(m).map(|c| gauss_sum_direct(&c).value);
        let (g, g1, g2) = (jac(n)?, jac(r1)?, jac(r2)?);
        let symbols = jacobi_symbol(r1 as i64, r2)? * jacobi_symbol(r2 as i64, r1)?;
        let qrl = crate::arith::qrl_sign(r1, r2)?;
        let err = (g - g1 * g2 * symbols as f64)
            .norm()
            .max((g - g1 * g2 * qrl as f64).norm());
        out.push(CheckResult::numeric(suite, "jacobi-gauss-sum-product", subject, err, tol(n)));
    }
    Ok(())
}

fn jacobi_checks(n: u64, f: &Factorization, oracle: &Oracle, out: &mut Vec<CheckResult>) -> Result<()> {
    let suite = Suite::Sequences;
    let x = seq::jacobi_sequence(n)?;
    let g = gauss_sum_direct(&Character::jacobi(n)?).value;
    let err = diff(&seq::dft_jacobi_closed(n)?, &oracle.dft(&x))?.max((seq::c_n(n)? - g).norm());
    out.push(CheckResult::numeric(suite, "jacobi-dft-eigenvalue", format!("n={n}"), err, tol(n)));
    for split in f.coprime_splits() {
        let closed = seq::fzt_jacobi_closed(split.r1, split.r2)?;
        let err = closed.max_abs_diff(&oracle.fzt(&x, split.r2 as usize)?)?;
        out.push(CheckResult::numeric(suite, "jacobi-zak-closed-form", split_subject(&split), err, tol(n)));
    }
    Ok(())
}

fn prime_sequence_checks(p: u64, oracle: &Oracle, out: &mut Vec<CheckResult>) -> Result<()> {
    let suite = Suite::Sequences;
    let subject = format!("p={p}");
    let x = seq::modified_legendre(p)?;
    let err = diff(&seq::dft_modified_legendre_closed(p)?, &oracle.dft(&x))?;
    out.push(CheckResult::numeric(suite, "modified-legendre-dft-closed-form", subject.clone(), err, tol(p)));
    let y = seq::golomb_prime(p)?;
    let err = diff(&seq::dft_golomb_prime_closed(p)?, &oracle.dft(&y))?;
    out.push(CheckResult::numeric(suite, "golomb-prime-dft-closed-form", subject.clone(), err, tol(p)));
    if p % 4 == 3 {
        let rep = correlation_report(&y);
        out.push(CheckResult::numeric(suite, "golomb-prime-ideal-autocorrelation", subject, rep.max_offpeak_abs, IDEAL_TOL * rep.peak));
    }
    Ok(())
}

fn pair_sequence_checks(p: u64, q: u64, oracle: &Oracle, out: &mut Vec<CheckResult>) -> Result<()> {
    let suite = Suite::Sequences;
    let n = p * q;
    let subject = format!("(p,q)=({p},{q})");

    let values = seq::modified_jacobi_values(p, q)?;
    let mismatches = seq::modified_jacobi_decomposition(p, q)?
        .iter()
        .zip(&values)
        .filter(|(&d, &v)| d != 2 * v as i64)
        .count();
    out.push(CheckResult::exact(suite, "modified-jacobi-decomposition", subject.clone(), mismatches));

    let x = seq::modified_jacobi(p, q)?;
    let err = diff(&seq::dft_modified_jacobi_closed(p, q)?, &oracle.dft(&x))?;
    out.push(CheckResult::numeric(suite, "modified-jacobi-dft-closed-form", subject.clone(), err, tol(n)));
    let y = seq::golomb(p, q)?;
    let y_hat = oracle.dft(&y);
    let err = diff(&seq::dft_golomb_closed(p, q)?, &y_hat)?;
    out.push(CheckResult::numeric(suite, "golomb-dft-closed-form", subject.clone(), err, tol(n)));

    let err = seq::fzt_modified_jacobi_closed(p, q)?.max_abs_diff(&oracle.fzt(&x, q as usize)?)?;
    out.push(CheckResult::numeric(suite, "modified-jacobi-zak-closed-form", subject.clone(), err, tol(n)));
    let err = seq::fzt_golomb_closed(p, q)?.max_abs_diff(&oracle.fzt(&y, q as usize)?)?;
    out.push(CheckResult::numeric(suite, "golomb-zak-closed-form", subject.clone(), err, tol(n)));

    if q == p + 2 {
        let rep = correlation_report(&y);
        out.push(CheckResult::numeric(suite, "golomb-ideal-autocorrelation", subject.clone(), rep.max_offpeak_abs, IDEAL_TOL * rep.peak));
        let root = (n as f64).sqrt();
        let spread = y_hat.iter().map(|v| (v.norm() - root).abs()).fold(0.0, f64::max);
        out.push(CheckResult::numeric(suite, "golomb-flat-spectrum", subject, spread / root, 1e-8));
    }
    Ok(())
}
