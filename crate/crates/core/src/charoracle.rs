//! Finite-dimensional ground truth: tensor products by the Klimyk (Racah–Speiser)
//! algorithm and branching to subalgebras by projecting weights and peeling off
//! highest weights.

use std::collections::{BTreeMap, HashMap};
use std::sync::LazyLock;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{self, q, Q};
use crate::rootsys::{Family, RootSystem, Weight};

/// Dominant target weights (ε-coordinates) with positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: BTreeMap<Vec<Q>, u64>,
}

impl Decomposition {
    pub fn get(&self, w: &[Q]) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.terms.values().copied().max().unwrap_or(0)
    }

    /// Σ mult · dim V(key) over the target system.
    pub fn dimension(&self, target: &RootSystem) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (w, m) in &self.terms {
            total += target.weyl_dim(&Weight::epsilon(w.clone()))? * BigUint::from(*m);
        }
        Ok(total)
    }

    /// First term with multiplicity at least two.
    pub fn first_repeated(&self) -> Option<(&Vec<Q>, u64)> {
        self.terms.iter().find(|(_, m)| **m > 1).map(|(w, m)| (w, *m))
    }
}

pub fn is_multiplicity_free(dec: &Decomposition) -> bool {
    dec.max_multiplicity() <= 1
}

/// Decompose `V(λ) ⊗ V(μ)`. Weights of `V(λ)` are added to `μ + ρ` and reflected
/// into the dominant chamber with sign; walls contribute nothing.
pub fn tensor_decompose(sys: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    let l = sys.dominant_labels(lambda)?;
    let m = sys.dominant_labels(mu)?;
    let central = exact::add(&central_of(sys, lambda), &central_of(sys, mu));
    let mut acc: HashMap<Vec<i64>, i64> = HashMap::new();
    for (w, mult) in sys.full_character_dynkin(&l) {
        let shifted: Vec<i64> = w.iter().zip(&m).map(|(a, b)| a + b + 1).collect();
        if let Some((d, sign)) = sys.dominant_with_sign(&shifted) {
            let hw: Vec<i64> = d.iter().map(|x| x - 1).collect();
            *acc.entry(hw).or_insert(0) += sign * mult;
        }
    }
    let mut out = Decomposition::default();
    for (hw, c) in acc {
        if c < 0 {
            return Err(Error::Peel(format!("negative tensor coefficient {c} at {hw:?}")));
        }
        if c > 0 {
            out.terms.insert(sys.eps_of(&hw, &central), c as u64);
        }
    }
    Ok(out)
}

fn central_of(sys: &RootSystem, w: &Weight) -> Vec<Q> {
    match w.basis {
        crate::rootsys::Basis::Epsilon => sys.central_part(&w.coords),
        crate::rootsys::Basis::Fundamental => vec![Q::zero(); sys.ambient_dim()],
    }
}

/// Linear map from the source ε-space to the target ε-space, restricting the
/// source torus to the torus of a reductive subalgebra.
#[derive(Debug, Clone)]
pub struct ProjectionMap {
    pub label: String,
    pub source: RootSystem,
    pub target: RootSystem,
    /// `target_dim × source_dim` rows.
    pub matrix: Vec<Vec<Q>>,
}

impl ProjectionMap {
    pub fn apply(&self, w: &[Q]) -> Vec<Q> {
        self.matrix.iter().map(|row| exact::dot(row, w)).collect()
    }

    /// Projects the source character and rejects non-integral images.
    fn projected_character(&self, lambda: &Weight) -> Result<HashMap<Vec<Q>, i64>> {
        let ch = self.source.freudenthal_char(lambda)?;
        let mut out: HashMap<Vec<Q>, i64> = HashMap::new();
        for (w, m) in ch.iter() {
            *out.entry(self.apply(w)).or_insert(0) += m;
        }
        out.retain(|_, m| *m != 0);
        Ok(out)
    }
}

/// Restrict `V(λ)` along `proj` and decompose over the target by repeatedly
/// removing the character of the highest remaining weight (largest ρ^∨-height,
/// ties broken lexicographically).
pub fn branch_by_projection(sys: &RootSystem, lambda: &Weight, proj: &ProjectionMap) -> Result<Decomposition> {
    if sys != &proj.source {
        return Err(Error::InvalidType(format!("projection {} has a different source", proj.label)));
    }
    let target = &proj.target;
    let mut rest = proj.projected_character(lambda)?;
    let mut out = Decomposition::default();
    while !rest.is_empty() {
        let (top, m) = rest
            .iter()
            .max_by(|a, b| target.height(a.0).cmp(&target.height(b.0)).then_with(|| a.0.cmp(b.0)))
            .map(|(w, m)| (w.clone(), *m))
            .expect("nonempty");
        if m < 0 {
            return Err(Error::Peel(format!("negative multiplicity {m} at {}", exact::fmt_vec(&top))));
        }
        match target.dynkin_int(&top) {
            Some(d) if d.iter().all(|&x| x >= 0) => {}
            _ => {
                return Err(Error::Peel(format!(
                    "highest remaining weight {} is not dominant integral for {}",
                    exact::fmt_vec(&top),
                    target.name()
                )))
            }
        }
        for (w, k) in target.character_eps(&top)?.iter() {
            let e = rest.entry(w.clone()).or_insert(0);
            *e -= m * k;
            if *e == 0 {
                rest.remove(w);
            }
        }
        out.terms.insert(top, m as u64);
    }
    Ok(out)
}

/// `gl(q)` realized on `R^q`.
pub fn gl_system(q: usize) -> RootSystem {
    let simple = (0..q.saturating_sub(1))
        .map(|i| {
            let mut v = vec![Q::zero(); q];
            v[i] = q_one();
            v[i + 1] = -q_one();
            v
        })
        .collect();
    RootSystem::from_simple_roots(format!("gl({q})"), q, simple).expect("gl(q) is a root system")
}

fn q_one() -> Q {
    q(1)
}

/// `S^a(C^q) ⊗ V(μ)` for `gl(q)`: all λ obtained from μ by adding a horizontal
/// strip of size `a`, each once. Keys are partitions as ε-coordinates.
pub fn pieri_rule(q_dim: usize, a: u64, mu: &[i64]) -> Result<Decomposition> {
    if mu.len() != q_dim || mu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Dominance(format!("{mu:?} is not a dominant gl({q_dim}) weight")));
    }
    let mut out = Decomposition::default();
    let mut lam = mu.to_vec();
    fn rec(i: usize, left: i64, mu: &[i64], lam: &mut Vec<i64>, out: &mut Decomposition) {
        if i == mu.len() {
            if left == 0 {
                out.terms.insert(exact::qv(lam), 1);
            }
            return;
        }
        let upper = if i == 0 { left } else { (mu[i - 1] - mu[i]).min(left) };
        for add in 0..=upper {
            lam[i] = mu[i] + add;
            rec(i + 1, left - add, mu, lam, out);
        }
        lam[i] = mu[i];
    }
    rec(0, a as i64, mu, &mut lam, &mut out);
    Ok(out)
}

// ---- shipped projection data ----

/// One record of the embedded projection table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionRecord {
    pub pair: String,
    pub params: Vec<(String, i64)>,
    pub source: (Family, usize),
    pub factors: String,
    pub target_dim: usize,
    pub simple: Vec<Vec<Q>>,
    pub matrix: Vec<Vec<Q>>,
}

impl ProjectionRecord {
    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn to_map(&self) -> Result<ProjectionMap> {
        let source = RootSystem::build(self.source.0, self.source.1)?;
        let target = RootSystem::from_simple_roots(self.factors.clone(), self.target_dim, self.simple.clone())?;
        Ok(ProjectionMap { label: self.label(), source, target, matrix: self.matrix.clone() })
    }

    pub fn label(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}[{}]: {} ⊃ {}", self.pair, ps.join(","), self.source.0.type_name(self.source.1), self.factors)
    }
}

/// Pair keys with shipped projection data.
pub const PROJECTION_PAIRS: [&str; 8] = ["levi_a", "sl_so", "sl_sp", "b_split", "c_split", "c_gl", "d_split", "d_gl"];

/// Largest source rank present in the embedded table.
pub const SHIPPED_MAX_RANK: usize = 6;

const PROJECTIONS_TXT: &str = include_str!("../data/projections.txt");

static SHIPPED: LazyLock<Vec<ProjectionRecord>> =
    LazyLock::new(|| parse_projection_records(PROJECTIONS_TXT).expect("embedded projection table parses"));

pub fn shipped_projections() -> &'static [ProjectionRecord] {
    &SHIPPED
}

/// Shipped record for `pair` with the given parameters (in declaration order).
pub fn find_projection(pair: &str, params: &[i64]) -> Option<&'static ProjectionRecord> {
    SHIPPED
        .iter()
        .find(|r| r.pair == pair && r.params.iter().map(|(_, v)| *v).eq(params.iter().copied()))
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = q(1);
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(dim, i);
    v[j] -= q(1);
    v
}

/// Simple roots of so(N) placed on coordinates `off..off+⌊N/2⌋` of `R^dim`.
fn so_simple(n: usize, dim: usize, off: usize) -> Vec<Vec<Q>> {
    let k = n / 2;
    let mut s: Vec<Vec<Q>> = Vec::new();
    match n {
        0..=2 => {}
        3 => s.push(unit(dim, off)),
        4 => {
            s.push(diff(dim, off, off + 1));
            let mut v = unit(dim, off);
            v[off + 1] = q(1);
            s.push(v);
        }
        _ => {
            s.extend((0..k - 1).map(|i| diff(dim, off + i, off + i + 1)));
            if n % 2 == 1 {
                s.push(unit(dim, off + k - 1));
            } else {
                let mut v = unit(dim, off + k - 2);
                v[off + k - 1] = q(1);
                s.push(v);
            }
        }
    }
    s
}

/// Simple roots of sp(m) placed on coordinates `off..off+m`.
fn sp_simple(m: usize, dim: usize, off: usize) -> Vec<Vec<Q>> {
    let mut s: Vec<Vec<Q>> = (0..m.saturating_sub(1)).map(|i| diff(dim, off + i, off + i + 1)).collect();
    if m >= 1 {
        s.push(exact::scale(&unit(dim, off + m - 1), q(2)));
    }
    s
}

fn identity(dim: usize) -> Vec<Vec<Q>> {
    (0..dim).map(|i| unit(dim, i)).collect()
}

fn so_name(n: usize) -> String {
    format!("so({n})")
}

/// Programmatic construction of a shipped projection record.
pub fn build_projection_record(pair: &str, params: &[i64]) -> Result<ProjectionRecord> {
    let bad = || Error::Parameter(format!("{pair} with parameters {params:?}"));
    let p = |i: usize| params.get(i).copied().filter(|&x| x >= 0).map(|x| x as usize).ok_or_else(bad);
    let rec = |names: &[&str], source: (Family, usize), factors: String, target_dim: usize, simple, matrix| {
        ProjectionRecord {
            pair: pair.to_string(),
            params: names.iter().zip(params).map(|(k, v)| (k.to_string(), *v)).collect(),
            source,
            factors,
            target_dim,
            simple,
            matrix,
        }
    };
    match pair {
        "levi_a" => {
            let (n, pp) = (p(0)?, p(1)?);
            if n < 1 || pp < 1 || pp > n {
                return Err(bad());
            }
            let dim = n + 1;
            let simple = (0..n).filter(|&i| i + 1 != pp).map(|i| diff(dim, i, i + 1)).collect();
            let factors = format!("sl({pp})+sl({})+C", n + 1 - pp);
            Ok(rec(&["n", "p"], (Family::A, n), factors, dim, simple, identity(dim)))
        }
        "sl_so" => {
            let n = p(0)?;
            if n < 1 {
                return Err(bad());
            }
            let big = n + 1;
            let k = big / 2;
            let matrix = (0..k).map(|i| diff(big, i, big - 1 - i)).collect();
            Ok(rec(&["n"], (Family::A, n), so_name(big), k, so_simple(big, k, 0), matrix))
        }
        "sl_sp" => {
            let m = p(0)?;
            if m < 1 {
                return Err(bad());
            }
            let big = 2 * m;
            let matrix = (0..m).map(|i| diff(big, i, big - 1 - i)).collect();
            Ok(rec(&["m"], (Family::A, big - 1), format!("sp({m})"), m, sp_simple(m, m, 0), matrix))
        }
        "b_split" => {
            let (n, pp) = (p(0)?, p(1)?);
            if n < 2 || pp < 1 || pp > 2 * n {
                return Err(bad());
            }
            let qq = 2 * n + 1 - pp;
            let a = pp / 2;
            let mut simple = so_simple(pp, n, 0);
            simple.extend(so_simple(qq, n, a));
            let factors = format!("{}+{}", so_name(pp), so_name(qq));
            Ok(rec(&["n", "p"], (Family::B, n), factors, n, simple, identity(n)))
        }
        "c_split" => {
            let (n, pp) = (p(0)?, p(1)?);
            if n < 2 || pp < 1 || pp >= n {
                return Err(bad());
            }
            let mut simple = sp_simple(pp, n, 0);
            simple.extend(sp_simple(n - pp, n, pp));
            let factors = format!("sp({pp})+sp({})", n - pp);
            Ok(rec(&["n", "p"], (Family::C, n), factors, n, simple, identity(n)))
        }
        "c_gl" | "d_gl" => {
            let n = p(0)?;
            let fam = if pair == "c_gl" { Family::C } else { Family::D };
            if !fam.is_valid_rank(n) {
                return Err(bad());
            }
            let simple = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            Ok(rec(&["n"], (fam, n), format!("gl({n})"), n, simple, identity(n)))
        }
        "d_split" => {
            let (n, pp) = (p(0)?, p(1)?);
            if n < 4 || pp < 1 || pp >= 2 * n {
                return Err(bad());
            }
            let qq = 2 * n - pp;
            let factors = format!("{}+{}", so_name(pp), so_name(qq));
            if pp % 2 == 0 {
                let mut simple = so_simple(pp, n, 0);
                simple.extend(so_simple(qq, n, pp / 2));
                Ok(rec(&["n", "p"], (Family::D, n), factors, n, simple, identity(n)))
            } else {
                // both blocks odd: the torus of the subalgebra misses the last coordinate
                let dim = n - 1;
                let a = (pp - 1) / 2;
                let mut simple = so_simple(pp, dim, 0);
                simple.extend(so_simple(qq, dim, a));
                let matrix = (0..dim).map(|i| unit(n, i)).collect();
                Ok(rec(&["n", "p"], (Family::D, n), factors, dim, simple, matrix))
            }
        }
        _ => Err(bad()),
    }
}

/// All parameter tuples shipped for `pair` with source rank ≤ `max_rank`.
pub fn projection_params(pair: &str, max_rank: usize) -> Vec<Vec<i64>> {
    let r = max_rank as i64;
    let mut out = Vec::new();
    match pair {
        "levi_a" => (1..=r).for_each(|n| (1..=n).for_each(|p| out.push(vec![n, p]))),
        "sl_so" => (1..=r).for_each(|n| out.push(vec![n])),
        "sl_sp" => (1..=(r + 1) / 2).for_each(|m| out.push(vec![m])),
        "b_split" => (2..=r).for_each(|n| (1..=n).for_each(|p| out.push(vec![n, p]))),
        "c_split" => (2..=r).for_each(|n| (1..n).for_each(|p| out.push(vec![n, p]))),
        "c_gl" => (2..=r).for_each(|n| out.push(vec![n])),
        "d_split" => (4..=r).for_each(|n| (1..=n).for_each(|p| out.push(vec![n, p]))),
        "d_gl" => (4..=r).for_each(|n| out.push(vec![n])),
        _ => {}
    }
    out
}

pub fn format_projection_records(records: &[ProjectionRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&format!("pair {}\n", r.pair));
        let ps: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        s.push_str(&format!("params {}\n", ps.join(" ")));
        s.push_str(&format!("source {} {}\n", r.source.0, r.source.1));
        s.push_str(&format!("factors {}\n", r.factors));
        s.push_str(&format!("target_dim {}\n", r.target_dim));
        for a in &r.simple {
            s.push_str(&format!("simple {}\n", exact::fmt_vec(a)));
        }
        for row in &r.matrix {
            s.push_str(&format!("matrix {}\n", exact::fmt_vec(row)));
        }
        s.push_str("end\n\n");
    }
    s
}

pub fn parse_projection_records(text: &str) -> Result<Vec<ProjectionRecord>> {
    let mut out = Vec::new();
    let mut cur: Option<ProjectionRecord> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: &str| Error::Parse(format!("projection data line {}: {m}", lineno + 1));
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        if key == "pair" {
            if cur.is_some() {
                return Err(err("record not terminated"));
            }
            cur = Some(ProjectionRecord {
                pair: rest.to_string(),
                params: Vec::new(),
                source: (Family::A, 0),
                factors: String::new(),
                target_dim: 0,
                simple: Vec::new(),
                matrix: Vec::new(),
            });
            continue;
        }
        let r = cur.as_mut().ok_or_else(|| err("field outside a record"))?;
        match key {
            "params" => {
                for kv in rest.split_whitespace() {
                    let (k, v) = kv.split_once('=').ok_or_else(|| err("bad parameter"))?;
                    r.params.push((k.to_string(), v.parse().map_err(|_| err("bad parameter value"))?));
                }
            }
            "source" => {
                let (f, n) = rest.split_once(' ').ok_or_else(|| err("bad source"))?;
                r.source = (f.parse()?, n.parse().map_err(|_| err("bad rank"))?);
            }
            "factors" => r.factors = rest.to_string(),
            "target_dim" => r.target_dim = rest.parse().map_err(|_| err("bad target_dim"))?,
            "simple" => r.simple.push(exact::parse_qvec(rest)?),
            "matrix" => r.matrix.push(exact::parse_qvec(rest)?),
            "end" => out.push(cur.take().unwrap()),
            _ => return Err(err("unknown field")),
        }
    }
    if cur.is_some() {
        return Err(Error::Parse("projection data: unterminated final record".into()));
    }
    Ok(out)
}

/// The full record set as constructed in code, in file order.
pub fn generated_projection_records(max_rank: usize) -> Vec<ProjectionRecord> {
    PROJECTION_PAIRS
        .iter()
        .flat_map(|pair| {
            projection_params(pair, max_rank)
                .into_iter()
                .map(move |ps| build_projection_record(pair, &ps).expect("valid shipped parameters"))
        })
        .collect()
}

/// Whether every projected dominant weight lands in the target weight lattice.
pub fn projects_integrally(proj: &ProjectionMap) -> bool {
    proj.source.fundamental_eps().iter().all(|w| {
        let img = proj.apply(w);
        proj.target.dynkin_q(&img).iter().all(|x| x.is_integer())
    })
}

/// Helper for tests and sweeps: sign of the smallest label of a weight.
pub fn min_label(sys: &RootSystem, w: &[Q]) -> Option<i64> {
    sys.dynkin_int(w).and_then(|d| d.into_iter().min())
}
