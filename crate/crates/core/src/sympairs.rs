//! Classification tables of symmetric pairs and the pan-type criterion.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::Serialize;
use serde_json::{json, Value};

use crate::charoracle::{self, ProjectionRecord};
use crate::error::{Error, Result};
use crate::rootsys::{Family, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Param {
    N,
    P,
    Q,
    I,
    J,
    M,
}

impl Param {
    pub fn symbol(self) -> &'static str {
        match self {
            Param::N => "n",
            Param::P => "p",
            Param::Q => "q",
            Param::I => "i",
            Param::J => "j",
            Param::M => "m",
        }
    }
}

pub type Bindings = BTreeMap<Param, i64>;

/// Integer-affine expression in the table parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr {
    pub constant: i64,
    pub terms: Vec<(Param, i64)>,
}

impl Expr {
    pub fn c(k: i64) -> Self {
        Expr { constant: k, terms: Vec::new() }
    }

    pub fn p(x: Param) -> Self {
        Expr { constant: 0, terms: vec![(x, 1)] }
    }

    /// `Σ coef·param + constant`.
    pub fn lin(terms: &[(Param, i64)], constant: i64) -> Self {
        let mut e = Expr { constant, terms: terms.to_vec() };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        let mut acc: BTreeMap<Param, i64> = BTreeMap::new();
        for (p, c) in &self.terms {
            *acc.entry(*p).or_insert(0) += c;
        }
        self.terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    }

    pub fn eval(&self, b: &Bindings) -> Option<i64> {
        let mut v = self.constant;
        for (p, c) in &self.terms {
            v += c * b.get(p)?;
        }
        Some(v)
    }

    pub fn scaled(&self, s: i64) -> Self {
        Expr { constant: self.constant * s, terms: self.terms.iter().map(|(p, c)| (*p, c * s)).collect() }
    }

    pub fn as_const(&self) -> Option<i64> {
        self.terms.is_empty().then_some(self.constant)
    }

    pub fn params(&self) -> impl Iterator<Item = Param> + '_ {
        self.terms.iter().map(|(p, _)| *p)
    }

    fn substitute(&self, b: &Bindings) -> Expr {
        match self.eval(b) {
            Some(v) => Expr::c(v),
            None => self.clone(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = c.abs();
            out.push_str(sign);
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(p.symbol());
        }
        if self.constant != 0 || out.is_empty() {
            if self.constant > 0 && !out.is_empty() {
                out.push('+');
            }
            out.push_str(&self.constant.to_string());
        }
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RealExceptional {
    E6m14,
    E6m26,
    E6m78,
    E7m25,
    F4m20,
}

/// Structured name of a real or complex Lie algebra appearing in the tables.
/// Compact forms are the signature forms with second argument 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algebra {
    Su(Expr, Expr),
    /// s(u(i,j) + u(k,l))
    SU2(Expr, Expr, Expr, Expr),
    U(Expr, Expr),
    /// so*(2n), stored with argument n.
    SoStar(Expr),
    So(Expr, Expr),
    SpR(Expr),
    SpPQ(Expr, Expr),
    GlR(Expr),
    SlR(Expr),
    /// su*(2n), stored with argument n.
    SuStar(Expr),
    SlC(Expr),
    SoC(Expr),
    SpC(Expr),
    GlC(Expr),
    RealExc(RealExceptional),
    /// Complex exceptional algebra.
    Exc(Family),
    /// One-dimensional real abelian summand.
    Reals,
    /// One-dimensional complex abelian summand.
    Center,
}

fn ex(e: &Expr) -> String {
    e.to_string()
}

fn ex2(e: &Expr) -> String {
    e.scaled(2).to_string()
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Algebra::*;
        let s = match self {
            Su(a, b) if b.as_const() == Some(0) => format!("su({})", ex(a)),
            Su(a, b) => format!("su({},{})", ex(a), ex(b)),
            SU2(a, b, c, d) => format!("s(u({},{})+u({},{}))", ex(a), ex(b), ex(c), ex(d)),
            U(a, b) if b.as_const() == Some(0) => format!("u({})", ex(a)),
            U(a, b) => format!("u({},{})", ex(a), ex(b)),
            SoStar(n) => format!("so*({})", ex2(n)),
            So(a, b) if b.as_const() == Some(0) => format!("so({})", ex(a)),
            So(a, b) => format!("so({},{})", ex(a), ex(b)),
            SpR(n) => format!("sp({},R)", ex(n)),
            SpPQ(a, b) => format!("sp({},{})", ex(a), ex(b)),
            GlR(n) => format!("gl({},R)", ex(n)),
            SlR(n) => format!("sl({},R)", ex(n)),
            SuStar(n) => format!("su*({})", ex2(n)),
            SlC(n) => format!("sl({},C)", ex(n)),
            SoC(n) => format!("so({},C)", ex(n)),
            SpC(n) => format!("sp({},C)", ex(n)),
            GlC(n) => format!("gl({},C)", ex(n)),
            RealExc(e) => match e {
                RealExceptional::E6m14 => "e6(-14)".into(),
                RealExceptional::E6m26 => "e6(-26)".into(),
                RealExceptional::E6m78 => "e6(-78)".into(),
                RealExceptional::E7m25 => "e7(-25)".into(),
                RealExceptional::F4m20 => "f4(-20)".into(),
            },
            Exc(fam) => fam.to_string().to_ascii_lowercase(),
            Reals => "R".into(),
            Center => "C".into(),
        };
        f.write_str(&s)
    }
}

impl Algebra {
    fn args(&self) -> Vec<&Expr> {
        use Algebra::*;
        match self {
            Su(a, b) | U(a, b) | So(a, b) | SpPQ(a, b) => vec![a, b],
            SU2(a, b, c, d) => vec![a, b, c, d],
            SoStar(n) | SpR(n) | GlR(n) | SlR(n) | SuStar(n) | SlC(n) | SoC(n) | SpC(n) | GlC(n) => vec![n],
            RealExc(_) | Exc(_) | Reals | Center => vec![],
        }
    }

    fn map_args(&self, f: impl Fn(&Expr) -> Expr) -> Algebra {
        use Algebra::*;
        match self {
            Su(a, b) => Su(f(a), f(b)),
            U(a, b) => U(f(a), f(b)),
            So(a, b) => So(f(a), f(b)),
            SpPQ(a, b) => SpPQ(f(a), f(b)),
            SU2(a, b, c, d) => SU2(f(a), f(b), f(c), f(d)),
            SoStar(n) => SoStar(f(n)),
            SpR(n) => SpR(f(n)),
            GlR(n) => GlR(f(n)),
            SlR(n) => SlR(f(n)),
            SuStar(n) => SuStar(f(n)),
            SlC(n) => SlC(f(n)),
            SoC(n) => SoC(f(n)),
            SpC(n) => SpC(f(n)),
            GlC(n) => GlC(f(n)),
            other => other.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        use Algebra::*;
        match self {
            Su(..) => "su",
            SU2(..) => "s(u+u)",
            U(..) => "u",
            SoStar(_) => "so*",
            So(..) => "so",
            SpR(_) => "sp(R)",
            SpPQ(..) => "sp(p,q)",
            GlR(_) => "gl(R)",
            SlR(_) => "sl(R)",
            SuStar(_) => "su*",
            SlC(_) => "sl(C)",
            SoC(_) => "so(C)",
            SpC(_) => "sp(C)",
            GlC(_) => "gl(C)",
            RealExc(_) => "real exceptional",
            Exc(_) => "complex exceptional",
            Reals => "R",
            Center => "C",
        }
    }

    pub fn instantiate(&self, b: &Bindings) -> Algebra {
        self.map_args(|e| e.substitute(b))
    }

    pub fn is_concrete(&self) -> bool {
        self.args().iter().all(|e| e.as_const().is_some())
    }

    /// Concrete integer arguments, if all are constants.
    pub fn int_args(&self) -> Option<Vec<i64>> {
        self.args().iter().map(|e| e.as_const()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind(),
            "args": self.args().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "name": self.to_string(),
        })
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}

impl FromStr for Algebra {
    type Err = Error;

    /// Parses concrete names such as `su(2,1)`, `u(2,1)`, `sp(2,R)`, `sp2R`,
    /// `so*(8)`, `so(2,5)`, `sl2R`, `e6(-14)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let c = |k: i64| Expr::c(k);
        let bad = || Error::Parse(format!("unrecognized algebra {s:?}"));
        match t.as_str() {
            "sl2R" | "sl(2,R)" => return Ok(Algebra::SlR(c(2))),
            "e6(-14)" => return Ok(Algebra::RealExc(RealExceptional::E6m14)),
            "e6(-26)" => return Ok(Algebra::RealExc(RealExceptional::E6m26)),
            "e6(-78)" => return Ok(Algebra::RealExc(RealExceptional::E6m78)),
            "e7(-25)" => return Ok(Algebra::RealExc(RealExceptional::E7m25)),
            "f4(-20)" => return Ok(Algebra::RealExc(RealExceptional::F4m20)),
            _ => {}
        }
        if let Some(n) = t.strip_prefix("sp").and_then(|r| r.strip_suffix('R')) {
            if let Ok(n) = n.parse::<i64>() {
                return Ok(Algebra::SpR(c(n)));
            }
        }
        let (head, inner) = t.split_once('(').ok_or_else(bad)?;
        let inner = inner.strip_suffix(')').ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').collect();
        let two = |f: fn(Expr, Expr) -> Algebra| -> Result<Algebra> {
            match parts.as_slice() {
                [a] => Ok(f(c(parse_int(a)?), c(0))),
                [a, b] => Ok(f(c(parse_int(a)?), c(parse_int(b)?))),
                _ => Err(bad()),
            }
        };
        match head {
            "su" => two(Algebra::Su),
            "u" => two(Algebra::U),
            "so" if parts.len() == 2 && parts[1] == "C" => Ok(Algebra::SoC(c(parse_int(parts[0])?))),
            "so" => two(Algebra::So),
            "sp" if parts.len() == 2 && parts[1] == "R" => Ok(Algebra::SpR(c(parse_int(parts[0])?))),
            "sp" if parts.len() == 2 && parts[1] == "C" => Ok(Algebra::SpC(c(parse_int(parts[0])?))),
            "sp" => two(Algebra::SpPQ),
            "sl" if parts.len() == 2 && parts[1] == "R" => Ok(Algebra::SlR(c(parse_int(parts[0])?))),
            "sl" if parts.len() == 2 && parts[1] == "C" => Ok(Algebra::SlC(c(parse_int(parts[0])?))),
            "gl" if parts.len() == 2 && parts[1] == "R" => Ok(Algebra::GlR(c(parse_int(parts[0])?))),
            "gl" if parts.len() == 2 && parts[1] == "C" => Ok(Algebra::GlC(c(parse_int(parts[0])?))),
            "so*" | "su*" => {
                let m = parse_int(parts.first().ok_or_else(bad)?)?;
                if parts.len() != 1 || m % 2 != 0 {
                    return Err(bad());
                }
                Ok(if head == "so*" { Algebra::SoStar(c(m / 2)) } else { Algebra::SuStar(c(m / 2)) })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InvolutionType {
    Holomorphic,
    AntiHolomorphic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Table {
    Holomorphic,
    AntiHolomorphic,
    RankEqual,
}

/// `lhs ≤ rhs` or `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    Le(Expr, Expr),
    Eq(Expr, Expr),
}

impl Constraint {
    pub fn holds(&self, b: &Bindings) -> Option<bool> {
        match self {
            Constraint::Le(a, c) => Some(a.eval(b)? <= c.eval(b)?),
            Constraint::Eq(a, c) => Some(a.eval(b)? == c.eval(b)?),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Le(a, b) => write!(f, "{a} <= {b}"),
            Constraint::Eq(a, b) => write!(f, "{a} = {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankExpr {
    Min(Expr, Expr),
    FloorHalf(Expr),
    Lin(Expr),
}

impl RankExpr {
    pub fn eval(&self, b: &Bindings) -> Option<i64> {
        match self {
            RankExpr::Min(x, y) => Some(x.eval(b)?.min(y.eval(b)?)),
            RankExpr::FloorHalf(x) => Some(x.eval(b)?.div_euclid(2)),
            RankExpr::Lin(x) => x.eval(b),
        }
    }
}

impl fmt::Display for RankExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankExpr::Min(x, y) => write!(f, "min({x},{y})"),
            RankExpr::FloorHalf(x) => write!(f, "[{x}/2]"),
            RankExpr::Lin(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPairRecord {
    pub table: Table,
    pub g: Algebra,
    pub h: Vec<Algebra>,
    pub involution_type: InvolutionType,
    pub params: Vec<Param>,
    pub constraints: Vec<Constraint>,
    pub rank_value: Option<RankExpr>,
    pub note: Option<&'static str>,
}

pub fn sum_name(h: &[Algebra]) -> String {
    h.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("+")
}

impl SymmetricPairRecord {
    pub fn admits(&self, b: &Bindings) -> bool {
        self.params.iter().all(|p| b.contains_key(p)) && self.constraints.iter().all(|c| c.holds(b) == Some(true))
    }

    /// All admissible instantiations with every parameter in `0..=bound`.
    pub fn instantiations(&self, bound: i64) -> Vec<(Bindings, Algebra, Vec<Algebra>)> {
        let mut out = Vec::new();
        for b in all_bindings(&self.params, bound) {
            if self.admits(&b) {
                out.push((b.clone(), self.g.instantiate(&b), self.h.iter().map(|x| x.instantiate(&b)).collect()));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "table": match self.table {
                Table::Holomorphic => "holomorphic",
                Table::AntiHolomorphic => "anti-holomorphic",
                Table::RankEqual => "rank-equal",
            },
            "g": self.g.to_json(),
            "h": self.h.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
            "pair": format!("({}, {})", self.g, sum_name(&self.h)),
            "involution_type": match self.involution_type {
                InvolutionType::Holomorphic => "holomorphic",
                InvolutionType::AntiHolomorphic => "anti-holomorphic",
            },
            "params": self.params.iter().map(|p| p.symbol()).collect::<Vec<_>>(),
            "constraints": self.constraints.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "rank_value": self.rank_value.as_ref().map(|r| r.to_string()),
            "note": self.note,
        })
    }
}

fn all_bindings(params: &[Param], bound: i64) -> Vec<Bindings> {
    let mut out = vec![Bindings::new()];
    for p in params {
        out = out
            .into_iter()
            .flat_map(|b| {
                (0..=bound).map(move |v| {
                    let mut b = b.clone();
                    b.insert(*p, v);
                    b
                })
            })
            .collect();
    }
    out
}

// ---- table contents ----

use Param::{I, J, M, N, P, Q as Qp};

fn e(p: Param) -> Expr {
    Expr::p(p)
}

fn k(c: i64) -> Expr {
    Expr::c(c)
}

fn diff(a: Param, b: Param) -> Expr {
    Expr::lin(&[(a, 1), (b, -1)], 0)
}

fn le(a: Expr, b: Expr) -> Constraint {
    Constraint::Le(a, b)
}

fn ge1(p: Param) -> Constraint {
    le(k(1), e(p))
}

struct RowBuilder {
    table: Table,
    inv: InvolutionType,
}

impl RowBuilder {
    fn row(&self, g: Algebra, h: Vec<Algebra>, params: &[Param], constraints: Vec<Constraint>) -> SymmetricPairRecord {
        SymmetricPairRecord {
            table: self.table,
            g,
            h,
            involution_type: self.inv,
            params: params.to_vec(),
            constraints,
            rank_value: None,
            note: None,
        }
    }
}

fn e6m14() -> Algebra {
    Algebra::RealExc(RealExceptional::E6m14)
}

fn e7m25() -> Algebra {
    Algebra::RealExc(RealExceptional::E7m25)
}

fn so_c(n: i64) -> Algebra {
    Algebra::So(k(n), k(0))
}

fn su_c(n: i64) -> Algebra {
    Algebra::Su(k(n), k(0))
}

static HOLOMORPHIC: LazyLock<Vec<SymmetricPairRecord>> = LazyLock::new(|| {
    use Algebra::*;
    let r = RowBuilder { table: Table::Holomorphic, inv: InvolutionType::Holomorphic };
    vec![
        r.row(
            Su(e(P), e(Qp)),
            vec![SU2(e(I), e(J), diff(P, I), diff(Qp, J))],
            &[P, Qp, I, J],
            vec![
                ge1(P),
                ge1(Qp),
                le(e(I), e(P)),
                le(e(J), e(Qp)),
                le(k(1), Expr::lin(&[(I, 1), (J, 1)], 0)),
                le(Expr::lin(&[(I, 1), (J, 1)], 0), Expr::lin(&[(P, 1), (Qp, 1)], -1)),
            ],
        ),
        r.row(Su(e(N), e(N)), vec![SoStar(e(N))], &[N], vec![ge1(N)]),
        r.row(Su(e(N), e(N)), vec![SpR(e(N))], &[N], vec![ge1(N)]),
        r.row(
            SoStar(e(N)),
            vec![SoStar(e(P)), SoStar(diff(N, P))],
            &[N, P],
            vec![ge1(P), le(e(P), Expr::lin(&[(N, 1)], -1))],
        ),
        r.row(SoStar(e(N)), vec![U(e(P), diff(N, P))], &[N, P], vec![ge1(N), le(e(P), e(N))]),
        r.row(So(k(2), e(N)), vec![So(k(2), e(P)), So(diff(N, P), k(0))], &[N, P], vec![ge1(N), le(e(P), e(N))]),
        r.row(So(k(2), e(N).scaled(2)), vec![U(k(1), e(N))], &[N], vec![ge1(N)]),
        r.row(SpR(e(N)), vec![U(e(P), diff(N, P))], &[N, P], vec![ge1(N), le(e(P), e(N))]),
        r.row(
            SpR(e(N)),
            vec![SpR(e(P)), SpR(diff(N, P))],
            &[N, P],
            vec![ge1(P), le(e(P), Expr::lin(&[(N, 1)], -1))],
        ),
        r.row(e6m14(), vec![so_c(10), so_c(2)], &[], vec![]),
        r.row(e6m14(), vec![SoStar(k(5)), so_c(2)], &[], vec![]),
        r.row(e6m14(), vec![So(k(8), k(2)), so_c(2)], &[], vec![]),
        r.row(e6m14(), vec![Su(k(5), k(1)), SlR(k(2))], &[], vec![]),
        r.row(e6m14(), vec![Su(k(4), k(2)), su_c(2)], &[], vec![]),
        r.row(e7m25(), vec![RealExc(RealExceptional::E6m78), so_c(2)], &[], vec![]),
        r.row(e7m25(), vec![e6m14(), so_c(2)], &[], vec![]),
        r.row(e7m25(), vec![So(k(10), k(2)), SlR(k(2))], &[], vec![]),
        r.row(e7m25(), vec![SoStar(k(6)), su_c(2)], &[], vec![]),
        r.row(e7m25(), vec![Su(k(6), k(2))], &[], vec![]),
    ]
});

static ANTIHOLOMORPHIC: LazyLock<Vec<SymmetricPairRecord>> = LazyLock::new(|| {
    use Algebra::*;
    let r = RowBuilder { table: Table::AntiHolomorphic, inv: InvolutionType::AntiHolomorphic };
    vec![
        r.row(Su(e(P), e(Qp)), vec![So(e(P), e(Qp))], &[P, Qp], vec![ge1(P), ge1(Qp)]),
        r.row(Su(e(N), e(N)), vec![SlC(e(N)), Reals], &[N], vec![ge1(N)]),
        r.row(Su(e(P).scaled(2), e(Qp).scaled(2)), vec![SpPQ(e(P), e(Qp))], &[P, Qp], vec![ge1(P), ge1(Qp)]),
        r.row(SoStar(e(N)), vec![SoC(e(N))], &[N], vec![ge1(N)]),
        r.row(SoStar(e(N).scaled(2)), vec![SuStar(e(N)), Reals], &[N], vec![ge1(N)]),
        r.row(
            So(k(2), e(N)),
            vec![So(k(1), e(P)), So(k(1), diff(N, P))],
            &[N, P],
            vec![ge1(N), le(e(P), e(N))],
        ),
        r.row(SpR(e(N)), vec![GlR(e(N))], &[N], vec![ge1(N)]),
        r.row(SpR(e(N).scaled(2)), vec![SpC(e(N))], &[N], vec![ge1(N)]),
        r.row(e6m14(), vec![RealExc(RealExceptional::F4m20)], &[], vec![]),
        r.row(e6m14(), vec![SpPQ(k(2), k(2))], &[], vec![]),
        r.row(e7m25(), vec![RealExc(RealExceptional::E6m26), So(k(1), k(1))], &[], vec![]),
        r.row(e7m25(), vec![SuStar(k(4))], &[], vec![]),
    ]
});

static RANK_EQUAL: LazyLock<Vec<SymmetricPairRecord>> = LazyLock::new(|| {
    use Algebra::*;
    let r = RowBuilder { table: Table::RankEqual, inv: InvolutionType::AntiHolomorphic };
    let with = |mut rec: SymmetricPairRecord, rank: RankExpr, note: Option<&'static str>| {
        rec.rank_value = Some(rank);
        rec.note = note;
        rec
    };
    vec![
        with(
            r.row(Su(e(P), e(Qp)), vec![So(e(P), e(Qp))], &[P, Qp], vec![ge1(P), ge1(Qp)]),
            RankExpr::Min(e(P), e(Qp)),
            None,
        ),
        with(r.row(SoStar(e(N)), vec![SoC(e(N))], &[N], vec![ge1(N)]), RankExpr::FloorHalf(e(N)), None),
        with(r.row(SpR(e(N)), vec![GlR(e(N))], &[N], vec![ge1(N)]), RankExpr::Lin(e(N)), None),
        with(
            r.row(So(k(2), e(N)), vec![So(k(1), Expr::lin(&[(N, 1)], -1)), So(k(1), k(1))], &[N], vec![ge1(N)]),
            RankExpr::Min(k(2), e(N)),
            None,
        ),
        with(r.row(e6m14(), vec![SpPQ(k(2), k(2))], &[], vec![]), RankExpr::Lin(k(2)), None),
        with(
            r.row(e7m25(), vec![SuStar(k(4))], &[], vec![]),
            RankExpr::Lin(k(3)),
            Some("sigma is not unique: e6(-26)+R is an alternative choice of the fixed-point algebra"),
        ),
    ]
});

pub fn holomorphic_pairs() -> &'static [SymmetricPairRecord] {
    &HOLOMORPHIC
}

pub fn antiholomorphic_pairs() -> &'static [SymmetricPairRecord] {
    &ANTIHOLOMORPHIC
}

pub fn rank_equal_pairs() -> &'static [SymmetricPairRecord] {
    &RANK_EQUAL
}

/// Instantiated rows of `records` whose g equals the concrete algebra `g`,
/// with parameters searched in `0..=bound`.
pub fn pairs_for(
    records: &'static [SymmetricPairRecord],
    g: &Algebra,
    bound: i64,
) -> Vec<(&'static SymmetricPairRecord, Bindings, Vec<Algebra>)> {
    let mut out = Vec::new();
    for rec in records {
        for (b, gi, hi) in rec.instantiations(bound) {
            if &gi == g {
                out.push((rec, b, hi));
            }
        }
    }
    out
}

// ---- pan type ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PanNode {
    pub family: Family,
    pub rank: usize,
    pub node: usize,
    pub is_pan: bool,
    /// Levi factor of the maximal parabolic at this node, when it is of pan type.
    pub levi_label: Option<String>,
}

fn levi_label(family: Family, n: usize, i: usize) -> Option<String> {
    let s = match family {
        Family::A => format!("sl({i},C)+sl({},C)+C", n + 1 - i),
        Family::B if i == 1 => format!("so({},C)+C", 2 * n - 1),
        Family::C if i == n => format!("gl({n},C)"),
        Family::D if i == 1 => format!("so({},C)+C", 2 * n - 2),
        Family::D if i == n - 1 || i == n => format!("gl({n},C)"),
        Family::E6 if i == 1 || i == 6 => "so(10,C)+C".into(),
        Family::E7 if i == 7 => "e6+C".into(),
        _ => return None,
    };
    Some(s)
}

/// Every node with its pan flag, computed from the highest-root coefficients.
pub fn node_data(family: Family, rank: usize) -> Result<Vec<PanNode>> {
    let sys = RootSystem::build(family, rank)?;
    Ok(sys
        .highest_root_coefficients()
        .iter()
        .enumerate()
        .map(|(k, &c)| PanNode {
            family,
            rank,
            node: k + 1,
            is_pan: c == 1,
            levi_label: if c == 1 { levi_label(family, rank, k + 1) } else { None },
        })
        .collect())
}

/// Nodes whose simple root has coefficient one in the highest root.
pub fn pan_nodes(family: Family, rank: usize) -> Result<Vec<PanNode>> {
    Ok(node_data(family, rank)?.into_iter().filter(|p| p.is_pan).collect())
}

pub fn pan_indices(family: Family, rank: usize) -> Result<Vec<usize>> {
    Ok(pan_nodes(family, rank)?.into_iter().map(|p| p.node).collect())
}

/// Hard-coded pan lists by type, independent of the root system code.
pub fn listed_pan_nodes(family: Family, n: usize) -> Vec<usize> {
    match family {
        Family::A => (1..=n).collect(),
        Family::B => vec![1],
        Family::C => vec![n],
        Family::D => vec![1, n - 1, n],
        Family::E6 => vec![1, 6],
        Family::E7 => vec![7],
        Family::E8 | Family::F4 | Family::G2 => vec![],
    }
}

pub fn is_pan(family: Family, rank: usize, node: usize) -> Result<bool> {
    Ok(pan_indices(family, rank)?.contains(&node))
}

// ---- multiplicity-free restriction list ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeSpec {
    /// Every node `1..=rank`.
    All,
    List(Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MfRestrictionRow {
    pub g: Algebra,
    pub h: Vec<Algebra>,
    pub family: Family,
    pub rank: Expr,
    pub params: Vec<Param>,
    pub constraints: Vec<Constraint>,
    pub nodes: NodeSpec,
    /// Key of the shipped projection data, if any.
    pub projection: Option<&'static str>,
}

/// One concrete instance of a row.
#[derive(Debug, Clone)]
pub struct MfInstance {
    pub row: usize,
    pub family: Family,
    pub rank: usize,
    pub params: Vec<i64>,
    pub nodes: Vec<usize>,
    pub projection: Option<&'static ProjectionRecord>,
    pub h: Vec<Algebra>,
}

impl MfRestrictionRow {
    pub fn label(&self) -> String {
        format!("({}, {})", self.g, sum_name(&self.h))
    }

    pub fn nodes_for(&self, b: &Bindings, rank: usize) -> Vec<usize> {
        match &self.nodes {
            NodeSpec::All => (1..=rank).collect(),
            NodeSpec::List(v) => {
                let mut out: Vec<usize> = v.iter().filter_map(|e| e.eval(b)).map(|x| x as usize).collect();
                out.sort_unstable();
                out.dedup();
                out
            }
        }
    }

    /// Instances with source rank ≤ `max_rank`. Classical rows follow the
    /// parameter ranges of the shipped projection data.
    pub fn instances(&self, row: usize, max_rank: usize) -> Vec<MfInstance> {
        match self.projection {
            Some(key) => charoracle::projection_params(key, max_rank)
                .into_iter()
                .filter_map(|ps| {
                    let b: Bindings = self.params.iter().copied().zip(ps.iter().copied()).collect();
                    if !self.constraints.iter().all(|c| c.holds(&b) == Some(true)) {
                        return None;
                    }
                    let rank = self.rank.eval(&b)? as usize;
                    Some(MfInstance {
                        row,
                        family: self.family,
                        rank,
                        params: ps.clone(),
                        nodes: self.nodes_for(&b, rank),
                        projection: charoracle::find_projection(key, &ps),
                        h: self.h.iter().map(|a| a.instantiate(&b)).collect(),
                    })
                })
                .collect(),
            None => {
                let b = Bindings::new();
                let rank = self.rank.eval(&b).expect("exceptional rows have fixed rank") as usize;
                if rank > max_rank {
                    return Vec::new();
                }
                vec![MfInstance {
                    row,
                    family: self.family,
                    rank,
                    params: vec![],
                    nodes: self.nodes_for(&b, rank),
                    projection: None,
                    h: self.h.clone(),
                }]
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let nodes = match &self.nodes {
            NodeSpec::All => json!("all"),
            NodeSpec::List(v) => json!(v.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
        };
        json!({
            "g": self.g.to_json(),
            "h": self.h.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
            "pair": self.label(),
            "type": format!("{}", self.family),
            "rank": self.rank.to_string(),
            "params": self.params.iter().map(|p| p.symbol()).collect::<Vec<_>>(),
            "constraints": self.constraints.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "nodes": nodes,
            "projection": self.projection,
        })
    }
}

static MF_TABLE: LazyLock<Vec<MfRestrictionRow>> = LazyLock::new(|| {
    use Algebra::*;
    let n1 = Expr::lin(&[(N, 1)], -1);
    let row = |g, h, family, rank, params: &[Param], constraints, nodes, projection| MfRestrictionRow {
        g,
        h,
        family,
        rank,
        params: params.to_vec(),
        constraints,
        nodes,
        projection,
    };
    let list = |v: &[Expr]| NodeSpec::List(v.to_vec());
    let d_nodes = list(&[k(1), n1.clone(), e(N)]);
    let e6_nodes = list(&[k(1), k(6)]);
    let e7_nodes = list(&[k(7)]);
    vec![
        row(
            SlC(Expr::lin(&[(N, 1)], 1)),
            vec![SlC(e(P)), SlC(Expr::lin(&[(N, 1), (P, -1)], 1)), Center],
            Family::A,
            e(N),
            &[N, P],
            vec![ge1(N), ge1(P), le(e(P), e(N))],
            NodeSpec::All,
            Some("levi_a"),
        ),
        row(
            SlC(Expr::lin(&[(N, 1)], 1)),
            vec![SoC(Expr::lin(&[(N, 1)], 1))],
            Family::A,
            e(N),
            &[N],
            vec![ge1(N)],
            NodeSpec::All,
            Some("sl_so"),
        ),
        row(
            SlC(e(M).scaled(2)),
            vec![SpC(e(M))],
            Family::A,
            Expr::lin(&[(M, 2)], -1),
            &[M],
            vec![ge1(M)],
            NodeSpec::All,
            Some("sl_sp"),
        ),
        row(
            SoC(Expr::lin(&[(N, 2)], 1)),
            vec![SoC(e(P)), SoC(Expr::lin(&[(N, 2), (P, -1)], 1))],
            Family::B,
            e(N),
            &[N, P],
            vec![le(k(2), e(N)), ge1(P), le(e(P), e(N).scaled(2))],
            list(&[k(1)]),
            Some("b_split"),
        ),
        row(
            SpC(e(N)),
            vec![SpC(e(P)), SpC(diff(N, P))],
            Family::C,
            e(N),
            &[N, P],
            vec![le(k(2), e(N)), ge1(P), le(e(P), n1.clone())],
            list(&[e(N)]),
            Some("c_split"),
        ),
        row(SpC(e(N)), vec![GlC(e(N))], Family::C, e(N), &[N], vec![le(k(2), e(N))], list(&[e(N)]), Some("c_gl")),
        row(
            SoC(e(N).scaled(2)),
            vec![SoC(e(P)), SoC(Expr::lin(&[(N, 2), (P, -1)], 0))],
            Family::D,
            e(N),
            &[N, P],
            vec![le(k(4), e(N)), ge1(P), le(e(P), Expr::lin(&[(N, 2)], -1))],
            d_nodes.clone(),
            Some("d_split"),
        ),
        row(SoC(e(N).scaled(2)), vec![GlC(e(N))], Family::D, e(N), &[N], vec![le(k(4), e(N))], d_nodes, Some("d_gl")),
        row(Exc(Family::E6), vec![SoC(k(10)), SoC(k(2))], Family::E6, k(6), &[], vec![], e6_nodes.clone(), None),
        row(Exc(Family::E6), vec![SlC(k(6)), SlC(k(2))], Family::E6, k(6), &[], vec![], e6_nodes.clone(), None),
        row(Exc(Family::E6), vec![Exc(Family::F4)], Family::E6, k(6), &[], vec![], e6_nodes.clone(), None),
        row(Exc(Family::E6), vec![SpC(k(4))], Family::E6, k(6), &[], vec![], e6_nodes, None),
        row(Exc(Family::E7), vec![Exc(Family::E6), SoC(k(2))], Family::E7, k(7), &[], vec![], e7_nodes.clone(), None),
        row(Exc(Family::E7), vec![SoC(k(12)), SlC(k(2))], Family::E7, k(7), &[], vec![], e7_nodes.clone(), None),
        row(Exc(Family::E7), vec![SlC(k(8))], Family::E7, k(7), &[], vec![], e7_nodes, None),
    ]
});

pub fn mf_restriction_table() -> &'static [MfRestrictionRow] {
    &MF_TABLE
}

/// The whole classification as one machine-readable document.
pub fn export_tables() -> Value {
    json!({
        "holomorphic": holomorphic_pairs().iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "anti_holomorphic": antiholomorphic_pairs().iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "rank_equal": rank_equal_pairs().iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "mf_restriction": mf_restriction_table().iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "pan_lists": Family::ALL.iter().map(|f| {
            json!({"type": f.to_string(), "nodes": match f.fixed_rank() {
                Some(r) => json!(listed_pan_nodes(*f, r)),
                None => json!(match f { Family::A => "1..n", Family::B => "1", Family::C => "n", _ => "1,n-1,n" }),
            }})
        }).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> Algebra {
        s.parse().unwrap()
    }

    #[test]
    fn table_sizes() {
        assert_eq!(holomorphic_pairs().len(), 19);
        assert_eq!(antiholomorphic_pairs().len(), 12);
        assert_eq!(rank_equal_pairs().len(), 6);
        assert_eq!(mf_restriction_table().len(), 15);
    }

    #[test]
    fn names_render() {
        let r = &holomorphic_pairs()[0];
        assert_eq!(r.g.to_string(), "su(p,q)");
        assert_eq!(sum_name(&r.h), "s(u(i,j)+u(p-i,q-j))");
        assert_eq!(sum_name(&holomorphic_pairs()[3].h), "so*(2p)+so*(2n-2p)");
        assert_eq!(holomorphic_pairs()[6].g.to_string(), "so(2,2n)");
        assert_eq!(mf_restriction_table()[0].g.to_string(), "sl(n+1,C)");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["su(2,1)", "u(3,2)", "sp(2,R)", "so*(8)", "so(2,5)", "sl(2,R)", "e7(-25)", "so(10)"] {
            assert_eq!(alg(s).to_string(), s);
        }
        assert_eq!(alg("sp2R"), Algebra::SpR(Expr::c(2)));
        assert_eq!(alg("sl2R"), Algebra::SlR(Expr::c(2)));
        assert!("so*(7)".parse::<Algebra>().is_err());
        assert!("foo(1)".parse::<Algebra>().is_err());
    }

    #[test]
    fn su_nn_holomorphic_contains_so_star_and_sp() {
        for n in 1..5 {
            let found = pairs_for(holomorphic_pairs(), &alg(&format!("su({n},{n})")), 6);
            let hs: Vec<String> = found.iter().map(|(_, _, h)| sum_name(h)).collect();
            assert!(hs.contains(&format!("so*({})", 2 * n)), "{hs:?}");
            assert!(hs.contains(&format!("sp({n},R)")), "{hs:?}");
        }
    }

    #[test]
    fn sp_antiholomorphic_contains_gl() {
        for n in 1..5 {
            let found = pairs_for(antiholomorphic_pairs(), &alg(&format!("sp({n},R)")), 6);
            assert!(found.iter().any(|(_, _, h)| sum_name(h) == format!("gl({n},R)")));
        }
    }

    #[test]
    fn holomorphic_and_antiholomorphic_disjoint() {
        let bound = 6;
        let anti: Vec<(Algebra, Vec<Algebra>)> = antiholomorphic_pairs()
            .iter()
            .flat_map(|r| r.instantiations(bound).into_iter().map(|(_, g, h)| (g, h)))
            .collect();
        for r in holomorphic_pairs() {
            for (_, g, h) in r.instantiations(bound) {
                assert!(!anti.contains(&(g.clone(), h.clone())), "({g}, {})", sum_name(&h));
            }
        }
    }

    #[test]
    fn rank_equal_rows_are_antiholomorphic_rows() {
        for rec in rank_equal_pairs() {
            assert_eq!(rec.involution_type, InvolutionType::AntiHolomorphic);
            for (b, g, h) in rec.instantiations(6) {
                let mut hs = h.clone();
                hs.sort();
                let hit = pairs_for(antiholomorphic_pairs(), &g, 7).into_iter().any(|(_, _, mut h2)| {
                    h2.sort();
                    h2 == hs
                });
                assert!(hit, "{b:?}: ({g}, {})", sum_name(&h));
            }
        }
    }

    #[test]
    fn rank_values() {
        let rows = rank_equal_pairs();
        let b = |pairs: &[(Param, i64)]| pairs.iter().copied().collect::<Bindings>();
        assert_eq!(rows[0].rank_value.as_ref().unwrap().eval(&b(&[(P, 2), (Qp, 5)])), Some(2));
        assert_eq!(rows[1].rank_value.as_ref().unwrap().eval(&b(&[(N, 5)])), Some(2));
        assert_eq!(rows[2].rank_value.as_ref().unwrap().eval(&b(&[(N, 4)])), Some(4));
        assert_eq!(rows[3].rank_value.as_ref().unwrap().eval(&b(&[(N, 1)])), Some(1));
        assert!(rows[5].note.unwrap().contains("e6(-26)"));
    }

    #[test]
    fn pan_lists_match_highest_root() {
        for (f, r) in Family::types_up_to(8) {
            assert_eq!(pan_indices(f, r).unwrap(), listed_pan_nodes(f, r), "{f:?}{r}");
        }
        assert!(pan_nodes(Family::E8, 8).unwrap().is_empty());
        assert_eq!(pan_nodes(Family::E7, 7).unwrap()[0].levi_label.as_deref(), Some("e6+C"));
    }

    #[test]
    fn mf_nodes_are_pan() {
        for (i, row) in mf_restriction_table().iter().enumerate() {
            let insts = row.instances(i, 8);
            assert!(!insts.is_empty(), "{}", row.label());
            for inst in insts {
                let pan = pan_indices(inst.family, inst.rank).unwrap();
                assert!(inst.nodes.iter().all(|x| pan.contains(x)), "{} {:?}", row.label(), inst.params);
            }
        }
    }

    #[test]
    fn mf_examples() {
        let t = mf_restriction_table();
        let sp_gl = t.iter().position(|r| r.label() == "(sp(n,C), gl(n,C))").unwrap();
        for inst in t[sp_gl].instances(sp_gl, 6) {
            assert_eq!(inst.nodes, vec![inst.rank]);
        }
        let e7 = t.iter().position(|r| r.label() == "(e7, sl(8,C))").unwrap();
        assert_eq!(t[e7].instances(e7, 7)[0].nodes, vec![7]);
    }

    #[test]
    fn shipped_rows_have_projection_data() {
        for (i, row) in mf_restriction_table().iter().enumerate() {
            for inst in row.instances(i, charoracle::SHIPPED_MAX_RANK) {
                assert_eq!(inst.projection.is_some(), row.projection.is_some(), "{}", row.label());
            }
        }
    }

    #[test]
    fn export_is_deterministic() {
        let a = serde_json::to_string(&export_tables()).unwrap();
        let b = serde_json::to_string(&export_tables()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("so*(2n)"));
    }
}
