//! Cross-checks of the closed-form branching laws against the character oracle.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branching::{hks_expansion, upq_restriction, BranchingExpansion};
use crate::charoracle::{branch_by_projection, tensor_decompose, Decomposition};
use crate::error::{Error, Result};
use crate::exact::{self, qv, serde_qvec, Q};
use crate::hermitian::{hermitian_data, HermitianData};
use crate::rootsys::{Family, FormalCharacter, RootSystem, Weight};
use crate::sympairs::{is_pan, mf_restriction_table, pan_indices, sum_name, Algebra, Expr, MfInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

/// Counterexample datum: the offending weight and the multiplicities seen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "serde_qvec")]
    pub weight: Vec<Q>,
    pub multiplicity: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<i64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case_id: String,
    pub status: Status,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    fn done(case_id: String, start: Instant, outcome: Option<Witness>) -> Self {
        let status = if outcome.is_some() { Status::Fail } else { Status::Pass };
        VerificationReport { case_id, status, witness: outcome, elapsed_ms: Some(start.elapsed().as_millis() as u64) }
    }

    fn unsupported(case_id: String) -> Self {
        VerificationReport { case_id, status: Status::Unsupported, witness: None, elapsed_ms: Some(0) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Drops the timing so that reports compare and print byte-stably.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }
}

fn repeated_witness(dec: &Decomposition, detail: String) -> Option<Witness> {
    dec.first_repeated().map(|(w, m)| Witness { weight: w.clone(), multiplicity: m as i64, expected: Some(1), detail })
}

fn error_witness(e: &Error) -> Witness {
    Witness { weight: Vec::new(), multiplicity: 0, expected: None, detail: format!("{}: {e}", e.name()) }
}

fn mismatch(lhs: &FormalCharacter, rhs: &FormalCharacter, detail: String) -> Option<Witness> {
    lhs.first_difference(rhs).map(|(w, a, b)| Witness { weight: w, multiplicity: b, expected: Some(a), detail })
}

/// Tensor products `π_{kω_i} ⊗ π_{k'ω_j}` for `1 ≤ k, k' ≤ k_max` are multiplicity-free.
pub fn check_theorem_f(family: Family, rank: usize, i: usize, j: usize, k_max: u32) -> Result<VerificationReport> {
    for node in [i, j] {
        if !is_pan(family, rank, node)? {
            return Err(Error::NonPan(format!("node {node} of {}", family.type_name(rank))));
        }
    }
    let start = Instant::now();
    let sys = RootSystem::build(family, rank)?;
    let case_id = format!("thmF:{}:i={i},j={j}:k<={k_max}", family.type_name(rank));
    for k in 1..=k_max as i64 {
        for kk in 1..=k_max as i64 {
            let a = Weight::fundamental_multiple(rank, i, k);
            let b = Weight::fundamental_multiple(rank, j, kk);
            let dec = tensor_decompose(&sys, &a, &b)?;
            if let Some(w) = repeated_witness(&dec, format!("{k}ω{i} ⊗ {kk}ω{j}")) {
                return Ok(VerificationReport::done(case_id, start, Some(w)));
            }
        }
    }
    Ok(VerificationReport::done(case_id, start, None))
}

/// All `(family, rank, i, j)` with `i ≤ j` pan nodes, over simple types of rank ≤ `max_rank`.
pub fn theorem_f_cases(max_rank: usize) -> Vec<(Family, usize, usize, usize)> {
    let mut out = Vec::new();
    for (f, r) in Family::types_up_to(max_rank) {
        let nodes = pan_indices(f, r).unwrap_or_default();
        for (a, &i) in nodes.iter().enumerate() {
            for &j in &nodes[a..] {
                out.push((f, r, i, j));
            }
        }
    }
    out
}

pub fn run_theorem_f(max_rank: usize, k_max: u32) -> Result<Vec<VerificationReport>> {
    theorem_f_cases(max_rank).into_par_iter().map(|(f, r, i, j)| check_theorem_f(f, r, i, j, k_max)).collect()
}

fn instance_id(inst: &MfInstance) -> String {
    let row = &mf_restriction_table()[inst.row];
    let params = row.params.iter().zip(&inst.params).map(|(p, v)| format!("{}={v}", p.symbol())).collect::<Vec<_>>();
    format!("thmE:{} ↓ {}[{}]", inst.family.type_name(inst.rank), sum_name(&inst.h), params.join(","))
}

/// Restrictions `π_{kω_i}|_h` are multiplicity-free for the allowed nodes and `k ≤ k_max`.
pub fn check_theorem_e(inst: &MfInstance, k_max: u32) -> VerificationReport {
    let case_id = instance_id(inst);
    let Some(record) = inst.projection else {
        return VerificationReport::unsupported(case_id);
    };
    let start = Instant::now();
    let proj = match record.to_map() {
        Ok(p) => p,
        Err(e) => return VerificationReport::done(case_id, start, Some(error_witness(&e))),
    };
    for &node in &inst.nodes {
        for k in 1..=k_max as i64 {
            let lambda = Weight::fundamental_multiple(inst.rank, node, k);
            let witness = match branch_by_projection(&proj.source, &lambda, &proj) {
                Ok(dec) => repeated_witness(&dec, format!("{k}ω{node}")),
                Err(e) => Some(error_witness(&e)),
            };
            if witness.is_some() {
                return VerificationReport::done(case_id, start, witness);
            }
        }
    }
    VerificationReport::done(case_id, start, None)
}

/// Every row of the multiplicity-free restriction table: one report per
/// instance of rank ≤ `max_rank`, one Unsupported report per row without data.
pub fn run_theorem_e(max_rank: usize, k_max: u32) -> Vec<VerificationReport> {
    let mut jobs: Vec<std::result::Result<MfInstance, String>> = Vec::new();
    for (r, row) in mf_restriction_table().iter().enumerate() {
        if row.projection.is_none() {
            jobs.push(Err(format!("thmE:{}", row.label())));
        } else {
            jobs.extend(row.instances(r, max_rank).into_iter().map(Ok));
        }
    }
    jobs.into_par_iter()
        .map(|job| match job {
            Ok(inst) => check_theorem_e(&inst, k_max),
            Err(id) => VerificationReport::unsupported(id),
        })
        .collect()
}

fn shift(ch: &FormalCharacter, w: &[Q]) -> FormalCharacter {
    ch.iter().map(|(v, m)| (exact::add(v, w), *m)).collect()
}

/// Characters of `S^m(V)` for `m ≤ n`, where `V` has the given weights.
pub fn symmetric_power_characters(weights: &[Vec<Q>], dim: usize, n: u64) -> Vec<FormalCharacter> {
    let mut levels = vec![FormalCharacter::new(); n as usize + 1];
    levels[0] = FormalCharacter::singleton(vec![Q::from_integer(0); dim], 1);
    for w in weights {
        for m in 1..=n as usize {
            let add = shift(&levels[m - 1], w);
            levels[m] = levels[m].plus(&add);
        }
    }
    levels
}

/// Partitions of `m` into at most `l` parts.
fn partitions(m: u64, l: usize, cap: u64) -> u64 {
    if m == 0 {
        return 1;
    }
    if l == 0 {
        return 0;
    }
    (1..=cap.min(m)).map(|x| partitions(m - x, l - 1, x)).sum()
}

/// Level by level, the K-character of the expansion equals `C_μ ⊗ S^m(p₋)`,
/// and the number of terms at level m is the number of partitions of m into
/// at most l parts (l the length of the strongly orthogonal sequence).
pub fn check_hks_grading(hd: &HermitianData, mu: &[Q], n: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let case_id = format!("grading:{}:{}:N={n}", hd.label, exact::fmt_vec(mu));
    let exp = hks_expansion(hd, mu, n)?;
    let internal = hd.from_printed(mu)?;
    let sym = symmetric_power_characters(&hd.p_minus_weights(), hd.dim(), n);
    let l = hd.strongly_orthogonal_sequence().length;
    for m in 0..=n {
        let count = exp.level(m).count() as u64;
        let want = partitions(m, l, m);
        if count != want {
            let w = Witness {
                weight: Vec::new(),
                multiplicity: count as i64,
                expected: Some(want as i64),
                detail: format!("term count at level {m}"),
            };
            return Ok(VerificationReport::done(case_id, start, Some(w)));
        }
        let mut lhs = FormalCharacter::new();
        for t in exp.level(m) {
            lhs = lhs.plus(&hd.k_sys.character_eps(&hd.from_printed(&t.label.coords)?)?);
        }
        let rhs = shift(&sym[m as usize], &internal);
        if let Some(w) = mismatch(&rhs, &lhs, format!("K-character at level {m}")) {
            return Ok(VerificationReport::done(case_id, start, Some(w)));
        }
    }
    Ok(VerificationReport::done(case_id, start, None))
}

/// `gl(1) + gl(p−1) + gl(q)` on `R^{p+q}`.
fn h_cap_k_system(p: usize, qq: usize) -> Result<RootSystem> {
    let n = p + qq;
    let e = |i: usize, j: usize| {
        let mut v = vec![Q::from_integer(0); n];
        v[i] = Q::from_integer(1);
        v[j] = Q::from_integer(-1);
        v
    };
    let simple = (1..p - 1).chain(p..n - 1).map(|i| e(i, i + 1)).collect();
    RootSystem::from_simple_roots(format!("u(1)+u({})+u({qq})", p - 1), n, simple)
}

/// Level-graded H∩K-character identity for the U(p,q) ↓ U(1)×U(p−1,q) law.
pub fn check_upq_consistency(p: usize, qq: usize, mu: &[i64], n: u64) -> Result<VerificationReport> {
    check_upq_consistency_with(p, qq, mu, n, upq_restriction)
}

/// As [`check_upq_consistency`], with the branching law supplied by the caller.
pub fn check_upq_consistency_with(
    p: usize,
    qq: usize,
    mu: &[i64],
    n: u64,
    law: impl Fn(usize, usize, &[i64], u64) -> Result<BranchingExpansion>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let case_id = format!("upq:u({p},{qq}):{}:N={n}", exact::fmt_vec(&qv(mu)));
    let exp = law(p, qq, mu, n)?;
    let hd = hermitian_data(&Algebra::U(Expr::c(p as i64), Expr::c(qq as i64)))?;
    if !hd.is_holomorphic_ds(&qv(mu)) {
        return Err(Error::NotHoloDs(format!("{mu:?} for u({p},{qq})")));
    }
    let dim = p + qq;
    let k_char = hd.k_sys.character_eps(&qv(mu))?;
    let sym_g = symmetric_power_characters(&hd.p_minus_weights(), dim, n);
    let h_minus: Vec<Vec<Q>> = hd
        .p_minus_weights()
        .into_iter()
        .filter(|w| w[0] == Q::from_integer(0))
        .collect();
    let sym_h = symmetric_power_characters(&h_minus, dim, n);
    let hk = h_cap_k_system(p, qq)?;
    if !exp.is_multiplicity_free() {
        let t = exp.discrete_terms().into_iter().find(|(_, m)| *m > 1).expect("a repeated label");
        let w = Witness { weight: t.0.coords, multiplicity: t.1 as i64, expected: Some(1), detail: "repeated label".into() };
        return Ok(VerificationReport::done(case_id, start, Some(w)));
    }
    let mut term_chars: Vec<(u64, FormalCharacter)> = Vec::new();
    for t in &exp.terms {
        term_chars.push((t.ztilde_drop, hk.character_eps(&t.label.coords)?));
    }
    for m in 0..=n {
        let lhs = k_char.times(&sym_g[m as usize]);
        let mut rhs = FormalCharacter::new();
        for (a, ch) in term_chars.iter().filter(|(a, _)| *a <= m) {
            rhs = rhs.plus(&ch.times(&sym_h[(m - a) as usize]));
        }
        if let Some(w) = mismatch(&lhs, &rhs, format!("H∩K-character at level {m}")) {
            return Ok(VerificationReport::done(case_id, start, Some(w)));
        }
    }
    Ok(VerificationReport::done(case_id, start, None))
}

/// Reports as a JSON array, optionally without timings.
pub fn reports_to_json(reports: &[VerificationReport], timings: bool) -> serde_json::Value {
    let v: Vec<VerificationReport> =
        reports.iter().cloned().map(|r| if timings { r } else { r.without_timing() }).collect();
    serde_json::to_value(v).expect("reports serialize")
}
