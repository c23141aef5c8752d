//! Explicit branching laws as exact truncated expansions, and the closed-form
//! K-multiplicity counts for Sp(2,R).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{self, fmt_q, q, serde_qvec, Q};
use crate::hermitian::{HermitianData, HermitianFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelKind {
    /// One-dimensional character χ.
    Character,
    /// Irreducible representation π.
    Irrep,
    /// Contragredient π*.
    Contragredient,
}

/// A highest-weight label in printed coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub kind: LabelKind,
    #[serde(with = "serde_qvec")]
    pub coords: Vec<Q>,
}

impl Label {
    pub fn new(kind: LabelKind, coords: Vec<Q>) -> Self {
        Label { kind, coords }
    }

    pub fn character(n: i64) -> Self {
        Label::new(LabelKind::Character, vec![q(n)])
    }

    pub fn irrep(coords: &[i64]) -> Self {
        Label::new(LabelKind::Irrep, exact::qv(coords))
    }

    pub fn contragredient(coords: &[i64]) -> Self {
        Label::new(LabelKind::Contragredient, exact::qv(coords))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let sub = if self.coords.len() == 1 { fmt_q(&self.coords[0]) } else { exact::fmt_vec(&self.coords) };
        match self.kind {
            LabelKind::Character => write!(f, "χ_{sub}"),
            LabelKind::Irrep => write!(f, "π_{sub}"),
            LabelKind::Contragredient => write!(f, "π_{sub}*"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mult {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Mult::Finite(n) => write!(f, "{n}"),
            Mult::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Mult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Mult::Finite(n) => s.serialize_u64(*n),
            Mult::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Mult {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(u64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(n) => Ok(Mult::Finite(n)),
            Repr::S(s) if s == "inf" => Ok(Mult::Infinite),
            Repr::S(s) => Err(serde::de::Error::custom(format!("bad multiplicity {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: Label,
    pub mult: u64,
    pub ztilde_drop: u64,
}

/// Symbolic descriptor of a continuous (or never enumerated) part of a spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuousTerm {
    pub family: String,
    pub parameter_range: String,
    #[serde(rename = "mult_or_inf")]
    pub mult: Mult,
}

/// Discrete terms are complete through `truncation_level` (Z̃-drop from the top);
/// `None` means the discrete part is finite and listed in full.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingExpansion {
    pub group: String,
    pub top_label: Label,
    pub truncation_level: Option<u64>,
    pub terms: Vec<Term>,
    pub continuous: Vec<ContinuousTerm>,
}

impl BranchingExpansion {
    fn new(group: impl Into<String>, top_label: Label, truncation_level: Option<u64>) -> Self {
        BranchingExpansion { group: group.into(), top_label, truncation_level, terms: Vec::new(), continuous: Vec::new() }
    }

    fn push(&mut self, label: Label, mult: u64, drop: u64) {
        if mult > 0 {
            self.terms.push(Term { label, mult, ztilde_drop: drop });
        }
    }

    fn finish(mut self) -> Self {
        self.terms.sort_by(|a, b| {
            (a.ztilde_drop, &a.label.coords, a.label.kind).cmp(&(b.ztilde_drop, &b.label.coords, b.label.kind))
        });
        self
    }

    /// Multiplicity of a label (0 if absent).
    pub fn multiplicity(&self, label: &Label) -> u64 {
        self.terms.iter().filter(|t| &t.label == label).map(|t| t.mult).sum()
    }

    /// Label → multiplicity map; repeated labels are merged.
    pub fn discrete_terms(&self) -> BTreeMap<Label, u64> {
        let mut m = BTreeMap::new();
        for t in &self.terms {
            *m.entry(t.label.clone()).or_insert(0) += t.mult;
        }
        m
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.discrete_terms().values().all(|&m| m == 1)
    }

    /// Terms at a given Z̃-drop.
    pub fn level(&self, drop: u64) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(move |t| t.ztilde_drop == drop)
    }

    pub fn labels(&self) -> Vec<Label> {
        self.terms.iter().map(|t| t.label.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("expansions serialize")
    }
}

impl fmt::Display for BranchingExpansion {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}|_{} ≃ ", self.top_label, self.group)?;
        let mut parts: Vec<String> = self
            .continuous
            .iter()
            .map(|c| match c.mult {
                Mult::Finite(1) => format!("∫ {} ({})", c.family, c.parameter_range),
                m => format!("{m}·∫ {} ({})", c.family, c.parameter_range),
            })
            .collect();
        parts.extend(self.terms.iter().map(|t| if t.mult == 1 { t.label.to_string() } else { format!("{}·{}", t.mult, t.label) }));
        if parts.is_empty() {
            f.write_str("0")?;
        } else {
            f.write_str(&parts.join(" ⊕ "))?;
        }
        if let Some(n) = self.truncation_level {
            write!(f, " ⊕ … (complete through level {n})")?;
        }
        Ok(())
    }
}

/// Weakly decreasing tuple of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PartitionTuple {
    pub a: Vec<u64>,
}

impl PartitionTuple {
    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parameter(format!("{a:?} is not weakly decreasing")));
        }
        Ok(PartitionTuple { a })
    }

    pub fn sum(&self) -> u64 {
        self.a.iter().sum()
    }

    /// All weakly decreasing tuples of length `len` with sum ≤ `max_sum`.
    pub fn enumerate(len: usize, max_sum: u64) -> Vec<PartitionTuple> {
        fn rec(len: usize, cap: u64, budget: u64, cur: &mut Vec<u64>, out: &mut Vec<PartitionTuple>) {
            if cur.len() == len {
                out.push(PartitionTuple { a: cur.clone() });
                return;
            }
            for x in 0..=cap.min(budget) {
                cur.push(x);
                rec(len, x, budget - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(len, max_sum, max_sum, &mut Vec::new(), &mut out);
        out
    }
}

/// Name of the maximal compact subgroup K.
pub fn k_group_name(hd: &HermitianData) -> String {
    let args = hd.label.int_args().unwrap_or_default();
    match hd.family {
        HermitianFamily::Sl2R => "SO(2)".into(),
        HermitianFamily::SpR | HermitianFamily::SoStar => format!("U({})", args[0]),
        HermitianFamily::Su => format!("S(U({})×U({}))", args[0], args[1]),
        HermitianFamily::U => format!("U({})×U({})", args[0], args[1]),
        HermitianFamily::So2n => format!("SO(2)×SO({})", args[1]),
    }
}

fn k_kind(hd: &HermitianData) -> LabelKind {
    if hd.family == HermitianFamily::Sl2R {
        LabelKind::Character
    } else {
        LabelKind::Irrep
    }
}

/// `top − Σ a_j ν̄_j` over the greedy sequence, as printed labels.
fn graded_sum(hd: &HermitianData, top: &[Q], n: u64, kind: LabelKind, exp: &mut BranchingExpansion) -> Result<()> {
    let seq = hd.strongly_orthogonal_sequence();
    let nus: Vec<Vec<Q>> = seq.roots.iter().map(|w| w.coords.clone()).collect();
    for part in PartitionTuple::enumerate(nus.len(), n) {
        let mut w = top.to_vec();
        for (aj, nu) in part.a.iter().zip(&nus) {
            w = exact::sub(&w, &exact::scale(nu, q(*aj as i64)));
        }
        if !hd.is_k_dominant(&w) {
            return Err(Error::Dominance(format!("{} is not K-dominant", exact::fmt_vec(&w))));
        }
        let drop = hd.ztilde_of(top) - hd.ztilde_of(&w);
        let drop = exact::to_int(&drop).ok_or_else(|| Error::Dominance("non-integral Z̃-drop".into()))? as u64;
        exp.push(Label::new(kind, hd.to_printed(&w)), 1, drop);
    }
    Ok(())
}

fn scalar_internal(hd: &HermitianData, mu: &[Q]) -> Result<Vec<Q>> {
    let w = hd.from_printed(mu)?;
    if !hd.is_scalar_type(&w) {
        return Err(Error::NotScalarType(format!("{} for {}", exact::fmt_vec(mu), hd.label)));
    }
    Ok(w)
}

/// K-type expansion of the scalar-type highest weight module with printed
/// minimal K-type `mu`, complete through Z̃-level `n`.
pub fn hks_expansion(hd: &HermitianData, mu: &[Q], n: u64) -> Result<BranchingExpansion> {
    let w = scalar_internal(hd, mu)?;
    let kind = k_kind(hd);
    let mut exp = BranchingExpansion::new(k_group_name(hd), Label::new(LabelKind::Irrep, mu.to_vec()), Some(n));
    graded_sum(hd, &w, n, kind, &mut exp)?;
    Ok(exp.finish())
}

/// Tensor product of two scalar-type holomorphic discrete series.
pub fn tensor_hwm_expansion(hd: &HermitianData, mu1: &[Q], mu2: &[Q], n: u64) -> Result<BranchingExpansion> {
    let w1 = scalar_internal(hd, mu1)?;
    let w2 = scalar_internal(hd, mu2)?;
    for (w, mu) in [(&w1, mu1), (&w2, mu2)] {
        if !hd.is_holomorphic_ds(w) {
            return Err(Error::NotHoloDs(format!("{} for {}", exact::fmt_vec(mu), hd.label)));
        }
    }
    let top = exact::add(&w1, &w2);
    let mut exp = BranchingExpansion::new(hd.label.to_string(), Label::new(LabelKind::Irrep, hd.to_printed(&top)), Some(n));
    graded_sum(hd, &top, n, LabelKind::Irrep, &mut exp)?;
    Ok(exp.finish())
}

fn check_upq(p: usize, qq: usize, mu: &[i64]) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidHw(m));
    if p == 0 || qq == 0 {
        return bad(format!("u({p},{qq}) needs p, q ≥ 1"));
    }
    if mu.len() != p + qq {
        return bad(format!("expected {} coordinates, got {}", p + qq, mu.len()));
    }
    if mu[..p].windows(2).any(|w| w[0] < w[1]) || mu[p..].windows(2).any(|w| w[0] < w[1]) {
        return bad(format!("{mu:?} is not dominant for U({p})×U({qq})"));
    }
    if mu[p + qq - 1] < mu[0] + (p + qq) as i64 {
        return bad(format!("{mu:?} violates μ_{{p+q}} ≥ μ_1 + p + q"));
    }
    Ok(())
}

/// Intervals `[lo_i, hi_i]` enumerated as a product.
fn boxes(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// λ with λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ … ≥ λ_q ≥ μ_q and Σ(λ − μ) = a.
fn pieri_strips(mu: &[i64], a: i64) -> Vec<Vec<i64>> {
    let mut ranges = vec![(mu[0], mu[0] + a)];
    ranges.extend((1..mu.len()).map(|i| (mu[i], mu[i - 1])));
    let total: i64 = mu.iter().sum::<i64>() + a;
    boxes(&ranges).into_iter().filter(|l| l.iter().sum::<i64>() == total).collect()
}

/// Restriction of the holomorphic discrete series of U(p,q) with parameter `mu`
/// to U(1)×U(p−1,q), complete through level `n`.
///
/// Labels are `(c, λ_2, …, λ_p, λ_{p+1}, …, λ_{p+q})` with
/// `c = Σ_{i≤p} μ_i − Σ_{2≤i≤p} λ_i − a` the U(1) character.
pub fn upq_restriction(p: usize, qq: usize, mu: &[i64], n: u64) -> Result<BranchingExpansion> {
    check_upq(p, qq, mu)?;
    let top = Label::irrep(mu);
    let mut exp = BranchingExpansion::new(format!("U(1)×U({},{qq})", p - 1), top, Some(n));
    let inner: Vec<(i64, i64)> = (1..p).map(|i| (mu[i], mu[i - 1])).collect();
    let interlacing = boxes(&inner);
    let first_sum: i64 = mu[..p].iter().sum();
    for a in 0..=n as i64 {
        let strips = pieri_strips(&mu[p..], a);
        for lam in &interlacing {
            let c = first_sum - lam.iter().sum::<i64>() - a;
            for strip in &strips {
                let mut coords = vec![c];
                coords.extend(lam);
                coords.extend(strip);
                exp.push(Label::irrep(&coords), 1, a as u64);
            }
        }
    }
    Ok(exp.finish())
}

/// The SL(2,R) and SU(2) formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Case {
    /// π_n restricted to SO_0(1,1).
    A { n: i64 },
    /// π_n restricted to SO(2).
    B { n: i64 },
    /// π_m ⊗ π_{−n}.
    C { m: i64, n: i64 },
    /// π_m ⊗ π_n.
    D { m: i64, n: i64 },
    /// SU(2): π_n restricted to SO(2).
    E { n: i64 },
    /// SU(2): π_m ⊗ π_n.
    F { m: i64, n: i64 },
}

impl Sl2Case {
    /// Builds a case from its letter and the parameters `m`, `n`.
    pub fn from_letter(which: char, m: i64, n: i64) -> Result<Self> {
        Ok(match which.to_ascii_lowercase() {
            'a' => Sl2Case::A { n },
            'b' => Sl2Case::B { n },
            'c' => Sl2Case::C { m, n },
            'd' => Sl2Case::D { m, n },
            'e' => Sl2Case::E { n },
            'f' => Sl2Case::F { m, n },
            other => return Err(Error::Parameter(format!("unknown sl2 formula {other:?}"))),
        })
    }
}

/// SL(2,R)/SU(2) branching formulas. Infinite discrete sums are truncated at level `n_trunc`.
pub fn sl2_formula(case: Sl2Case, n_trunc: u64) -> Result<BranchingExpansion> {
    let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(Error::Parameter(what.to_string())) };
    let pi = |k: i64| Label::irrep(&[k]);
    let exp = match case {
        Sl2Case::A { n } => {
            need(n >= 2, "π_n needs n ≥ 2")?;
            let mut e = BranchingExpansion::new("SO_0(1,1)", pi(n), None);
            e.continuous.push(ContinuousTerm {
                family: "χ_ζ".into(),
                parameter_range: "ζ ∈ ℝ".into(),
                mult: Mult::Finite(1),
            });
            e
        }
        Sl2Case::B { n } => {
            need(n >= 2, "π_n needs n ≥ 2")?;
            let mut e = BranchingExpansion::new("SO(2)", pi(n), Some(n_trunc));
            for k in 0..=n_trunc {
                e.push(Label::character(n + 2 * k as i64), 1, k);
            }
            e
        }
        Sl2Case::C { m, n } => {
            need(m >= n && n >= 2, "π_m ⊗ π_{-n} needs m ≥ n ≥ 2")?;
            let mut e = BranchingExpansion::new("SL(2,R)", Label::new(LabelKind::Irrep, vec![q(m), q(-n)]), None);
            let sign = if (m - n) % 2 == 0 { "+" } else { "-" };
            e.continuous.push(ContinuousTerm {
                family: format!("π^{sign}_{{iν}}"),
                parameter_range: "ν ∈ (0,∞)".into(),
                mult: Mult::Finite(1),
            });
            let mut k = 0;
            while 2 * k <= m - n - 2 {
                e.push(pi(m - n - 2 * k), 1, k as u64);
                k += 1;
            }
            e
        }
        Sl2Case::D { m, n } => {
            need(m >= 2 && n >= 2, "π_m ⊗ π_n needs m, n ≥ 2")?;
            let mut e = BranchingExpansion::new("SL(2,R)", pi(m + n), Some(n_trunc));
            for k in 0..=n_trunc {
                e.push(pi(m + n + 2 * k as i64), 1, k);
            }
            e
        }
        Sl2Case::E { n } => {
            need(n >= 0, "π_n needs n ≥ 0")?;
            let mut e = BranchingExpansion::new("SO(2)", pi(n), None);
            for k in 0..=n {
                e.push(Label::character(n - 2 * k), 1, k as u64);
            }
            e
        }
        Sl2Case::F { m, n } => {
            need(m >= 0 && n >= 0, "π_m ⊗ π_n needs m, n ≥ 0")?;
            let mut e = BranchingExpansion::new("SU(2)", pi(m + n), None);
            for k in 0..=m.min(n) {
                e.push(pi(m + n - 2 * k), 1, k as u64);
            }
            e
        }
    };
    Ok(exp.finish())
}

/// Blattner parameter of the holomorphic discrete series of Sp(2,R) with
/// Harish-Chandra parameter λ.
pub fn holo_hc_to_blattner(lambda: (i64, i64)) -> (i64, i64) {
    (lambda.0 + 1, lambda.1 + 2)
}

/// Blattner parameter of W_λ; requires λ_1 > −λ_2 > 0.
pub fn w_hc_to_blattner(lambda: (i64, i64)) -> Result<(i64, i64)> {
    let (l1, l2) = lambda;
    if !(l1 > -l2 && -l2 > 0) {
        return Err(Error::Parameter(format!("W_λ needs λ1 > −λ2 > 0, got ({l1},{l2})")));
    }
    Ok((l1 + 1, l2))
}

/// Multiplicity of the U(2)-type (p,q) in the holomorphic discrete series of
/// Sp(2,R) with minimal K-type (μ1, μ2).
pub fn sp2_holo_ktype_mult(mu1: i64, mu2: i64, p: i64, qq: i64) -> u64 {
    let excess = p + qq - mu1 - mu2;
    if excess < 0 || excess % 2 != 0 {
        return 0;
    }
    let half = excess / 2;
    (0..=half)
        .filter(|&a| {
            let b = half - a;
            a >= b && (2 * a + mu2).max(2 * b + mu1) <= p && p <= 2 * a + mu1
        })
        .count() as u64
}

/// Multiplicity of the U(2)-type (p,q) in W_λ (Harish-Chandra parameter λ).
pub fn sp2_nonholo_ktype_mult(l1: i64, l2: i64, p: i64, qq: i64) -> Result<u64> {
    let (mu1, mu2) = w_hc_to_blattner((l1, l2))?;
    if p < mu1 || p - qq < mu1 - mu2 || (p - qq - mu1 - mu2).rem_euclid(2) != 0 {
        return Ok(0);
    }
    Ok(1 + ((p - mu1) / 2).min((p - qq - mu1 + mu2) / 2) as u64)
}

/// #{(s,t,u) ∈ ℕ³ : a = μ1 + 2s + t, b = μ2 + t + 2u}.
pub fn c_count(mu1: i64, mu2: i64, a: i64, b: i64) -> u64 {
    (0..=(a - mu1).min(b - mu2).max(-1))
        .filter(|t| (a - mu1 - t) % 2 == 0 && (b - mu2 - t) % 2 == 0)
        .count() as u64
}

/// Discrete part of the restriction of the principal series ϖ_(a,b) of
/// Sp(2,C) to Sp(2,R), with the holomorphic search bounded by `cap`.
pub fn discrete_part_spc(a: i64, b: i64, cap: i64) -> Result<BranchingExpansion> {
    if a < 0 || b < 0 {
        return Err(Error::Parameter(format!("(a,b) = ({a},{b}) needs a, b ≥ 0")));
    }
    let mut e = BranchingExpansion::new("Sp(2,R)", Label::irrep(&[a, b]), None);
    for mu1 in 3..=cap {
        for mu2 in 3..=mu1 {
            let c = c_count(mu1, mu2, a, b);
            e.push(Label::irrep(&[mu1, mu2]), c, 0);
            e.push(Label::contragredient(&[mu1, mu2]), c, 0);
        }
    }
    e.continuous.push(ContinuousTerm {
        family: "W_λ ⊕ W*_λ".into(),
        parameter_range: "λ ∈ ℤ², λ1 > −λ2 > 0".into(),
        mult: Mult::Infinite,
    });
    Ok(e.finish())
}

/// Parses a printed label such as `3`, `(2,2)` or `1/2,-1/2`.
pub fn parse_label(s: &str) -> Result<Vec<Q>> {
    let v = exact::parse_qvec(s)?;
    if v.is_empty() {
        return Err(Error::Parse("empty label".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::hermitian_data_str;

    fn labels(e: &BranchingExpansion) -> Vec<Vec<i64>> {
        e.terms.iter().map(|t| exact::to_ints(&t.label.coords).unwrap()).collect()
    }

    #[test]
    fn partition_enumeration_counts() {
        // partitions of m into at most l parts, summed over m ≤ N
        fn p(m: u64, l: usize, cap: u64) -> u64 {
            if m == 0 {
                return 1;
            }
            if l == 0 {
                return 0;
            }
            (1..=cap.min(m)).map(|x| p(m - x, l - 1, x)).sum()
        }
        for l in 0..4 {
            for n in 0..7 {
                let want: u64 = (0..=n).map(|m| p(m, l, m)).sum();
                assert_eq!(PartitionTuple::enumerate(l, n).len() as u64, want, "l={l} n={n}");
            }
        }
        assert!(PartitionTuple::new(vec![1, 2]).is_err());
    }

    #[test]
    fn sl2_hks_matches_printed() {
        let hd = hermitian_data_str("sl2R").unwrap();
        let e = hks_expansion(&hd, &[q(3)], 10).unwrap();
        let want: Vec<Label> = (0..=10).map(|k| Label::character(3 + 2 * k)).collect();
        assert_eq!(e.labels(), want);
        assert_eq!(e, sl2_formula(Sl2Case::B { n: 3 }, 10).unwrap());
    }

    #[test]
    fn level_zero_is_minimal_k_type() {
        for (g, mu) in [("sp(3,R)", vec![4, 4, 4]), ("su(2,3)", vec![-6, -6, 4, 4, 4]), ("so(2,5)", vec![-5, 0, 0])] {
            let hd = hermitian_data_str(g).unwrap();
            let e = hks_expansion(&hd, &exact::qv(&mu), 0).unwrap();
            assert_eq!(e.terms.len(), 1);
            assert_eq!(exact::to_ints(&e.terms[0].label.coords).unwrap(), mu);
        }
    }

    #[test]
    fn sp2_scalar_labels() {
        let hd = hermitian_data_str("sp(2,R)").unwrap();
        let m = 3;
        let e = hks_expansion(&hd, &exact::qv(&[m, m]), 4).unwrap();
        let mut want = Vec::new();
        for a in 0..=4 {
            for b in 0..=a {
                if a + b <= 4 {
                    want.push(vec![m + 2 * a, m + 2 * b]);
                }
            }
        }
        let mut got = labels(&e);
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert!(e.is_multiplicity_free());
    }

    #[test]
    fn not_scalar_type_rejected() {
        let hd = hermitian_data_str("sp(2,R)").unwrap();
        assert_eq!(hks_expansion(&hd, &exact::qv(&[4, 3]), 2).unwrap_err().name(), "NotScalarTypeError");
    }

    #[test]
    fn sl2_tensor_and_holo_check() {
        let hd = hermitian_data_str("sl2R").unwrap();
        let e = tensor_hwm_expansion(&hd, &[q(3)], &[q(2)], 8).unwrap();
        let want: Vec<Label> = (0..=8).map(|k| Label::irrep(&[5 + 2 * k])).collect();
        assert_eq!(e.labels(), want);
        let err = tensor_hwm_expansion(&hd, &[q(1)], &[q(2)], 2).unwrap_err();
        assert_eq!(err.name(), "NotHoloDSError");
    }

    #[test]
    fn sl2_finite_formulas() {
        let e = sl2_formula(Sl2Case::E { n: 2 }, 0).unwrap();
        let mut got: Vec<_> = e.labels();
        got.sort();
        assert_eq!(got, vec![Label::character(-2), Label::character(0), Label::character(2)]);
        let f = sl2_formula(Sl2Case::F { m: 1, n: 1 }, 0).unwrap();
        assert_eq!(f.labels(), vec![Label::irrep(&[2]), Label::irrep(&[0])]);
        let c = sl2_formula(Sl2Case::C { m: 4, n: 4 }, 0).unwrap();
        assert!(c.terms.is_empty());
        assert_eq!(c.continuous.len(), 1);
        let c = sl2_formula(Sl2Case::C { m: 9, n: 2 }, 0).unwrap();
        assert_eq!(labels(&c), vec![vec![7], vec![5], vec![3]]);
        assert_eq!(sl2_formula(Sl2Case::C { m: 2, n: 3 }, 0).unwrap_err().name(), "ParameterError");
        let a = sl2_formula(Sl2Case::A { n: 2 }, 5).unwrap();
        assert!(a.terms.is_empty() && a.continuous.len() == 1);
    }

    #[test]
    fn upq_counts_factor() {
        let mu = [0, -1, 5, 4];
        let e = upq_restriction(2, 2, &mu, 4).unwrap();
        assert!(e.is_multiplicity_free());
        for a in 0..=4u64 {
            // interlacing λ_2 ∈ [μ_2, μ_1]: 2 choices; strips of size a on (5,4): λ_4 ∈ [4,5]
            let strips = if a == 0 { 1 } else { 2 };
            assert_eq!(e.level(a).count(), 2 * strips, "a={a}");
        }
        assert_eq!(upq_restriction(2, 2, &[0, -1, 3, 3], 1).unwrap_err().name(), "InvalidHWError");
    }

    #[test]
    fn upq_p1_is_pieri() {
        let mu = [0, 4, 3];
        let e = upq_restriction(1, 2, &mu, 3).unwrap();
        for a in 0..=3u64 {
            let dec = crate::charoracle::pieri_rule(2, a, &mu[1..]).unwrap();
            let mut want: Vec<Vec<i64>> = dec.terms.keys().map(|k| exact::to_ints(k).unwrap()).collect();
            let mut got: Vec<Vec<i64>> = e.level(a).map(|t| exact::to_ints(&t.label.coords[1..]).unwrap()).collect();
            want.sort();
            got.sort();
            assert_eq!(got, want);
            assert!(e.level(a).all(|t| t.label.coords[0] == q(-(a as i64))));
        }
    }

    #[test]
    fn sp2_counts() {
        assert_eq!(sp2_holo_ktype_mult(5, 2, 5, 2), 1);
        assert_eq!(sp2_nonholo_ktype_mult(3, -1, 4, -1).unwrap(), 1);
        assert_eq!(sp2_nonholo_ktype_mult(1, -1, 4, -1).unwrap_err().name(), "ParameterError");
        assert_eq!(c_count(4, 3, 4, 3), 1);
        assert_eq!(c_count(5, 3, 4, 3), 0);
        assert_eq!(holo_hc_to_blattner((2, 1)), (3, 3));
    }

    #[test]
    fn spc_b3_display() {
        let e = discrete_part_spc(9, 3, 12).unwrap();
        let holo: Vec<Vec<i64>> =
            e.terms.iter().filter(|t| t.label.kind == LabelKind::Irrep).map(|t| exact::to_ints(&t.label.coords).unwrap()).collect();
        assert_eq!(holo, vec![vec![3, 3], vec![5, 3], vec![7, 3], vec![9, 3]]);
        assert_eq!(e.continuous[0].mult, Mult::Infinite);
    }

    #[test]
    fn serde_round_trip() {
        let e = discrete_part_spc(6, 4, 8).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains("\"mult_or_inf\":\"inf\""));
        let back: BranchingExpansion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let hd = hermitian_data_str("sl2R").unwrap();
        let e = hks_expansion(&hd, &[q(2)], 2).unwrap();
        assert_eq!(e.to_string(), "π_2|_SO(2) ≃ χ_2 ⊕ χ_4 ⊕ χ_6 ⊕ … (complete through level 2)");
    }
}
