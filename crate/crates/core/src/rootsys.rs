//! Root systems of types A–G and their weight combinatorics.
//!
//! A [`RootSystem`] lives in an ambient ε-space with the standard Euclidean
//! form. Besides the simple types built by [`build_root_system`], any set of
//! simple roots spanning a (possibly reducible) finite root system can be
//! supplied through [`RootSystem::from_simple_roots`]; the orthogonal
//! complement of the root span then plays the role of a central torus. This
//! is how Levi factors, maximal compact subalgebras and branching targets are
//! represented.
//!
//! Internally, weights are handled as integer Dynkin labels; the Gram matrix of
//! the fundamental weights is kept scaled to integers so that the Freudenthal
//! recursion and the Weyl dimension formula stay in exact integer arithmetic.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, dot, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
    ];

    /// Rank of the exceptional families; `None` for the classical series.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            f => f.fixed_rank().unwrap(),
        }
    }

    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self.fixed_rank() {
            Some(r) => r == rank,
            None => rank >= self.min_rank(),
        }
    }

    /// All valid types of rank at most `max_rank`.
    pub fn types_up_to(max_rank: usize) -> Vec<(Family, usize)> {
        let mut out = Vec::new();
        for f in Family::ALL {
            match f.fixed_rank() {
                Some(r) if r <= max_rank => out.push((f, r)),
                Some(_) => {}
                None => out.extend((f.min_rank()..=max_rank).map(|r| (f, r))),
            }
        }
        out
    }

    pub fn type_name(self, rank: usize) -> String {
        match self {
            Family::A | Family::B | Family::C | Family::D => format!("{self:?}{rank}"),
            f => format!("{f:?}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E6" => Ok(Family::E6),
            "E7" => Ok(Family::E7),
            "E8" => Ok(Family::E8),
            "F4" => Ok(Family::F4),
            "G2" => Ok(Family::G2),
            other => Err(Error::InvalidType(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Epsilon,
    Fundamental,
}

/// Exact weight with a declared coordinate basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    #[serde(with = "exact::serde_qvec")]
    pub coords: Vec<Q>,
    pub basis: Basis,
}

impl Weight {
    pub fn epsilon(coords: Vec<Q>) -> Self {
        Weight { coords, basis: Basis::Epsilon }
    }

    pub fn fundamental(coords: Vec<Q>) -> Self {
        Weight { coords, basis: Basis::Fundamental }
    }

    pub fn from_dynkin(labels: &[i64]) -> Self {
        Weight::fundamental(exact::qv(labels))
    }

    /// `k·ω_i` with 1-based node index `i`.
    pub fn fundamental_multiple(rank: usize, i: usize, k: i64) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = k;
        Weight::from_dynkin(&v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.basis {
            Basis::Epsilon => "ε",
            Basis::Fundamental => "ω",
        };
        write!(f, "{}{}", tag, exact::fmt_vec(&self.coords))
    }
}

/// Finite map from weights (ε-coordinates) to nonzero integer multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalCharacter {
    terms: BTreeMap<Vec<Q>, i64>,
}

impl FormalCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(w: Vec<Q>, m: i64) -> Self {
        let mut c = Self::new();
        c.add_term(w, m);
        c
    }

    pub fn add_term(&mut self, w: Vec<Q>, m: i64) {
        if m == 0 {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(m);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn get(&self, w: &[Q]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Q>, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of multiplicities, i.e. the dimension of a genuine module.
    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add_term(w.clone(), *m);
        }
        out
    }

    pub fn scaled(&self, s: i64) -> Self {
        let mut out = Self::new();
        for (w, m) in &self.terms {
            out.add_term(w.clone(), m * s);
        }
        out
    }

    /// Product of characters (convolution of weight multisets).
    pub fn times(&self, other: &Self) -> Self {
        let mut acc: HashMap<Vec<Q>, i64> = HashMap::new();
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                *acc.entry(exact::add(a, b)).or_insert(0) += m * n;
            }
        }
        acc.into_iter().filter(|(_, m)| *m != 0).collect()
    }

    /// First weight (in key order) where the two characters differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<Q>, i64, i64)> {
        let keys: std::collections::BTreeSet<&Vec<Q>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.get(k), other.get(k));
            (a != b).then(|| (k.clone(), a, b))
        })
    }
}

impl FromIterator<(Vec<Q>, i64)> for FormalCharacter {
    fn from_iter<I: IntoIterator<Item = (Vec<Q>, i64)>>(iter: I) -> Self {
        let mut c = FormalCharacter::new();
        for (w, m) in iter {
            c.add_term(w, m);
        }
        c
    }
}

/// A finite (possibly reducible) root system embedded in an ambient ε-space.
#[derive(Debug, Clone)]
pub struct RootSystem {
    name: String,
    simple_type: Option<(Family, usize)>,
    ambient_dim: usize,
    simple_roots: Vec<Vec<Q>>,
    simple_norms: Vec<Q>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    /// Positive roots in simple-root coordinates, ordered by height then lexicographically.
    positive_roots: Vec<Vec<i64>>,
    positive_dynkin: Vec<Vec<i64>>,
    positive_eps: Vec<Vec<Q>>,
    root_lookup: HashSet<Vec<i64>>,
    fundamental: Vec<Vec<Q>>,
    gram: Vec<Vec<i64>>,
    weyl_order: u128,
}

/// Construct the simple root system of the given type (Bourbaki numbering).
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    RootSystem::build(family, rank)
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

fn e_minus(dim: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(dim, i);
    v[j] -= Q::one();
    v
}

fn e_plus(dim: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(dim, i);
    v[j] += Q::one();
    v
}

fn bourbaki_simple_roots(family: Family, rank: usize) -> (usize, Vec<Vec<Q>>) {
    let n = rank;
    match family {
        Family::A => (n + 1, (0..n).map(|i| e_minus(n + 1, i, i + 1)).collect()),
        Family::B => {
            let mut s: Vec<_> = (0..n - 1).map(|i| e_minus(n, i, i + 1)).collect();
            s.push(unit(n, n - 1));
            (n, s)
        }
        Family::C => {
            let mut s: Vec<_> = (0..n - 1).map(|i| e_minus(n, i, i + 1)).collect();
            s.push(exact::scale(&unit(n, n - 1), q(2)));
            (n, s)
        }
        Family::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| e_minus(n, i, i + 1)).collect();
            s.push(e_plus(n, n - 2, n - 1));
            (n, s)
        }
        Family::E6 | Family::E7 | Family::E8 => {
            let half = Q::new(1, 2);
            let mut a1 = vec![-half; 8];
            a1[0] = half;
            a1[7] = half;
            let mut s = vec![a1, e_plus(8, 0, 1), e_minus(8, 1, 0)];
            s.extend((2..7).map(|i| e_minus(8, i, i - 1)));
            s.truncate(n);
            (8, s)
        }
        Family::F4 => {
            let half = Q::new(1, 2);
            (
                4,
                vec![e_minus(4, 1, 2), e_minus(4, 2, 3), unit(4, 3), vec![half, -half, -half, -half]],
            )
        }
        Family::G2 => (3, vec![e_minus(3, 0, 1), exact::qv(&[-2, 1, 1])]),
    }
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        if !family.is_valid_rank(rank) {
            return Err(Error::InvalidType(format!("({family}, {rank}) is not a valid simple type")));
        }
        let (dim, simple) = bourbaki_simple_roots(family, rank);
        let mut sys = Self::from_simple_roots(family.type_name(rank), dim, simple)?;
        sys.simple_type = Some((family, rank));
        Ok(sys)
    }

    /// Build a root system from simple roots given in ε-coordinates of an
    /// ambient space of dimension `ambient_dim`. The roots may span a proper
    /// subspace and may form a reducible system; zero simple roots give a torus.
    pub fn from_simple_roots(name: impl Into<String>, ambient_dim: usize, simple_roots: Vec<Vec<Q>>) -> Result<Self> {
        let name = name.into();
        let r = simple_roots.len();
        if simple_roots.iter().any(|a| a.len() != ambient_dim) {
            return Err(Error::InvalidType(format!("{name}: simple root of wrong dimension")));
        }
        let simple_norms: Vec<Q> = simple_roots.iter().map(|a| dot(a, a)).collect();
        let mut cartan = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let v = q(2) * dot(&simple_roots[i], &simple_roots[j]) / simple_norms[j];
                let v = exact::to_int(&v)
                    .ok_or_else(|| Error::InvalidType(format!("{name}: non-integral Cartan entry")))?;
                if i != j && !(-3..=0).contains(&v) {
                    return Err(Error::InvalidType(format!("{name}: Cartan entry {v} out of range")));
                }
                cartan[i][j] = v;
            }
        }
        let cartan_q: Vec<Vec<Q>> = cartan.iter().map(|row| exact::qv(row)).collect();
        let cartan_inv = exact::inverse(&cartan_q)
            .ok_or_else(|| Error::InvalidType(format!("{name}: singular Cartan matrix")))?;

        // closure under simple reflections, in simple-root coordinates
        let mut all: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0i64; r];
            e[i] = 1;
            all.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut img = beta.clone();
                img[i] -= pairing;
                if all.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
            if all.len() > 100_000 {
                return Err(Error::InvalidType(format!("{name}: root system is not finite")));
            }
        }
        let mut positive_roots: Vec<Vec<i64>> = all.iter().filter(|c| c.iter().all(|&x| x >= 0)).cloned().collect();
        if positive_roots.len() * 2 != all.len() {
            return Err(Error::InvalidType(format!("{name}: roots are not sign-coherent")));
        }
        positive_roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let positive_dynkin = positive_roots
            .iter()
            .map(|c| (0..r).map(|i| (0..r).map(|j| c[j] * cartan[j][i]).sum()).collect())
            .collect();
        let positive_eps = positive_roots
            .iter()
            .map(|c| {
                let mut v = vec![Q::zero(); ambient_dim];
                for (j, &cj) in c.iter().enumerate() {
                    for (x, y) in v.iter_mut().zip(&simple_roots[j]) {
                        *x += q(cj) * y;
                    }
                }
                v
            })
            .collect();

        let fundamental: Vec<Vec<Q>> = (0..r)
            .map(|i| {
                let mut v = vec![Q::zero(); ambient_dim];
                for j in 0..r {
                    for (x, y) in v.iter_mut().zip(&simple_roots[j]) {
                        *x += cartan_inv[i][j] * y;
                    }
                }
                v
            })
            .collect();
        let gram_q: Vec<Vec<Q>> = (0..r)
            .map(|i| (0..r).map(|j| dot(&fundamental[i], &fundamental[j])).collect())
            .collect();
        let scale = exact::lcm_denoms(gram_q.iter().flatten());
        let gram = gram_q
            .iter()
            .map(|row| row.iter().map(|x| (x * q(scale)).to_integer()).collect())
            .collect();

        // |W| = Π_{α>0} (ht α + 1) / ht α
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for c in &positive_roots {
            let h: i64 = c.iter().sum();
            num *= BigUint::from((h + 1) as u64);
            den *= BigUint::from(h as u64);
        }
        let weyl_order: u128 = (num / den).try_into().unwrap_or(u128::MAX);

        Ok(RootSystem {
            name,
            simple_type: None,
            ambient_dim,
            simple_roots,
            simple_norms,
            cartan,
            cartan_inv,
            positive_roots,
            positive_dynkin,
            positive_eps,
            root_lookup: all,
            fundamental,
            gram,
            weyl_order,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn simple_type(&self) -> Option<(Family, usize)> {
        self.simple_type
    }

    pub fn family(&self) -> Option<Family> {
        self.simple_type.map(|(f, _)| f)
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots_eps(&self) -> &[Vec<Q>] {
        &self.simple_roots
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        self.simple_roots.iter().cloned().map(Weight::epsilon).collect()
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        self.fundamental.iter().cloned().map(Weight::epsilon).collect()
    }

    pub fn fundamental_eps(&self) -> &[Vec<Q>] {
        &self.fundamental
    }

    pub fn positive_roots(&self) -> Vec<Weight> {
        self.positive_eps.iter().cloned().map(Weight::epsilon).collect()
    }

    pub fn positive_roots_eps(&self) -> &[Vec<Q>] {
        &self.positive_eps
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn weyl_group_order(&self) -> u128 {
        self.weyl_order
    }

    /// Half the sum of the positive roots, in ε-coordinates.
    pub fn rho(&self) -> Weight {
        let mut v = vec![Q::zero(); self.ambient_dim];
        for a in &self.positive_eps {
            v = exact::add(&v, a);
        }
        Weight::epsilon(exact::scale(&v, Q::new(1, 2)))
    }

    /// Membership test for a vector given in simple-root coordinates.
    pub fn is_root_coords(&self, c: &[i64]) -> bool {
        self.root_lookup.contains(c)
    }

    /// Simple-root coordinates of an ε-vector in the root span, if integral.
    pub fn root_coords(&self, eps: &[Q]) -> Option<Vec<i64>> {
        let d = self.dynkin_q(eps);
        let c: Vec<Q> = (0..self.rank())
            .map(|j| (0..self.rank()).fold(Q::zero(), |acc, i| acc + d[i] * self.cartan_inv[i][j]))
            .collect();
        let back = self.eps_of_root_coords_q(&c);
        if back != eps {
            return None;
        }
        exact::to_ints(&c)
    }

    fn eps_of_root_coords_q(&self, c: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.ambient_dim];
        for (j, cj) in c.iter().enumerate() {
            for (x, y) in v.iter_mut().zip(&self.simple_roots[j]) {
                *x += cj * y;
            }
        }
        v
    }

    /// Whether an ε-vector is a root of this system.
    pub fn is_root(&self, eps: &[Q]) -> bool {
        self.root_coords(eps).is_some_and(|c| self.root_lookup.contains(&c))
    }

    /// Dynkin labels ⟨w, α_i^∨⟩ of an ε-vector.
    pub fn dynkin_q(&self, eps: &[Q]) -> Vec<Q> {
        self.simple_roots
            .iter()
            .zip(&self.simple_norms)
            .map(|(a, n)| q(2) * dot(eps, a) / n)
            .collect()
    }

    pub fn dynkin_int(&self, eps: &[Q]) -> Option<Vec<i64>> {
        exact::to_ints(&self.dynkin_q(eps))
    }

    /// Component of an ε-vector orthogonal to the root span.
    pub fn central_part(&self, eps: &[Q]) -> Vec<Q> {
        let d = self.dynkin_q(eps);
        let mut v = eps.to_vec();
        for (di, w) in d.iter().zip(&self.fundamental) {
            v = exact::sub(&v, &exact::scale(w, *di));
        }
        v
    }

    /// Orthogonal projection onto the root span (the sum-zero normalization for A_n).
    pub fn normalize(&self, eps: &[Q]) -> Vec<Q> {
        exact::sub(eps, &self.central_part(eps))
    }

    /// ε-coordinates of `Σ d_i ω_i + central`.
    pub fn eps_of(&self, dynkin: &[i64], central: &[Q]) -> Vec<Q> {
        let mut v = central.to_vec();
        for (&di, w) in dynkin.iter().zip(&self.fundamental) {
            if di != 0 {
                for (x, y) in v.iter_mut().zip(w) {
                    *x += q(di) * y;
                }
            }
        }
        v
    }

    /// Height ⟨w, ρ^∨⟩ of an ε-vector (sum of its simple-root coordinates).
    pub fn height(&self, eps: &[Q]) -> Q {
        let d = self.dynkin_q(eps);
        let mut h = Q::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                h += d[i] * self.cartan_inv[i][j];
            }
        }
        h
    }

    /// Simple reflection `s_i` (0-based) applied to an ε-vector.
    pub fn reflect(&self, eps: &[Q], i: usize) -> Vec<Q> {
        let c = q(2) * dot(eps, &self.simple_roots[i]) / self.simple_norms[i];
        exact::sub(eps, &exact::scale(&self.simple_roots[i], c))
    }

    pub fn to_fundamental(&self, w: &Weight) -> Weight {
        match w.basis {
            Basis::Fundamental => w.clone(),
            Basis::Epsilon => Weight::fundamental(self.dynkin_q(&w.coords)),
        }
    }

    pub fn to_epsilon(&self, w: &Weight) -> Weight {
        match w.basis {
            Basis::Epsilon => w.clone(),
            Basis::Fundamental => {
                let mut v = vec![Q::zero(); self.ambient_dim];
                for (di, f) in w.coords.iter().zip(&self.fundamental) {
                    v = exact::add(&v, &exact::scale(f, *di));
                }
                Weight::epsilon(v)
            }
        }
    }

    fn labels_of(&self, w: &Weight) -> Vec<Q> {
        match w.basis {
            Basis::Fundamental => w.coords.clone(),
            Basis::Epsilon => self.dynkin_q(&w.coords),
        }
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.labels_of(w).iter().all(|x| !x.is_negative())
    }

    /// Dominant integral labels of `w`, or `DominanceError`.
    pub fn dominant_labels(&self, w: &Weight) -> Result<Vec<i64>> {
        let labels = self.labels_of(w);
        match exact::to_ints(&labels) {
            Some(v) if v.iter().all(|&x| x >= 0) => Ok(v),
            _ => Err(Error::Dominance(format!("{} in {}", w, self.name))),
        }
    }

    /// Unique dominant representative of the Weyl orbit of `w`, in the basis of `w`.
    pub fn dominant_part(&self, w: &Weight) -> Weight {
        let mut eps = self.to_epsilon(w).coords;
        loop {
            let d = self.dynkin_q(&eps);
            match d.iter().position(|x| x.is_negative()) {
                Some(i) => eps = self.reflect(&eps, i),
                None => break,
            }
        }
        match w.basis {
            Basis::Epsilon => Weight::epsilon(eps),
            Basis::Fundamental => Weight::fundamental(self.dynkin_q(&eps)),
        }
    }

    /// Highest root in ε-coordinates.
    pub fn highest_root(&self) -> Weight {
        Weight::epsilon(self.positive_eps.last().cloned().unwrap_or_default())
    }

    /// Coefficients of the highest root in the simple roots.
    pub fn highest_root_coefficients(&self) -> Vec<i64> {
        self.positive_roots.last().cloned().unwrap_or_default()
    }

    // ---- integer Dynkin-label machinery ----

    pub(crate) fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s += xi * self.gram[i][j] * yj;
            }
        }
        s
    }

    pub(crate) fn reflect_dynkin(&self, w: &mut [i64], i: usize) {
        let c = w[i];
        if c != 0 {
            for (x, a) in w.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
    }

    pub(crate) fn dominant_dynkin(&self, w: &[i64]) -> Vec<i64> {
        let mut v = w.to_vec();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect_dynkin(&mut v, i);
        }
        v
    }

    /// Dominant conjugate together with the sign of the Weyl element used;
    /// `None` if `w` lies on a wall.
    pub(crate) fn dominant_with_sign(&self, w: &[i64]) -> Option<(Vec<i64>, i64)> {
        let mut v = w.to_vec();
        let mut sign = 1;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect_dynkin(&mut v, i);
            sign = -sign;
        }
        if v.contains(&0) {
            None
        } else {
            Some((v, sign))
        }
    }

    fn level_of(&self, diff: &[i64]) -> i64 {
        let mut h = Q::zero();
        for (i, &d) in diff.iter().enumerate() {
            if d != 0 {
                for j in 0..self.rank() {
                    h += q(d) * self.cartan_inv[i][j];
                }
            }
        }
        h.to_integer()
    }

    /// Dominant weights of `V(λ)` with their multiplicities (Freudenthal),
    /// ordered by depth below λ.
    pub(crate) fn dominant_character(&self, lambda: &[i64]) -> Vec<(Vec<i64>, i64)> {
        let rank = self.rank();
        let mut level: HashMap<Vec<i64>, i64> = HashMap::new();
        level.insert(lambda.to_vec(), 0);
        let mut queue = VecDeque::from([lambda.to_vec()]);
        while let Some(mu) = queue.pop_front() {
            let lmu = level[&mu];
            for (a, coords) in self.positive_dynkin.iter().zip(&self.positive_roots) {
                let nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x - y).collect();
                if nu.iter().all(|&x| x >= 0) && !level.contains_key(&nu) {
                    level.insert(nu.clone(), lmu + coords.iter().sum::<i64>());
                    queue.push_back(nu);
                }
            }
        }
        let mut order: Vec<(Vec<i64>, i64)> = level.into_iter().collect();
        order.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
        debug_assert!(order.iter().all(|(w, l)| *l == self.level_of(&lambda.iter().zip(w).map(|(x, y)| x - y).collect::<Vec<_>>())));

        let rho = vec![1i64; rank];
        let lr: Vec<i64> = lambda.iter().zip(&rho).map(|(x, y)| x + y).collect();
        let top = self.inner(&lr, &lr);
        let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
        let mut out = Vec::with_capacity(order.len());
        for (mu, _) in order {
            let m = if mu == lambda {
                1
            } else {
                let mr: Vec<i64> = mu.iter().zip(&rho).map(|(x, y)| x + y).collect();
                let den = top - self.inner(&mr, &mr);
                let mut num = 0i64;
                for a in &self.positive_dynkin {
                    let mut shifted = mu.clone();
                    loop {
                        for (x, y) in shifted.iter_mut().zip(a) {
                            *x += y;
                        }
                        let dom = self.dominant_dynkin(&shifted);
                        match mult.get(&dom) {
                            Some(&m) => num += m * self.inner(&shifted, a),
                            None => break,
                        }
                    }
                }
                debug_assert!(den > 0 && (2 * num) % den == 0);
                2 * num / den
            };
            mult.insert(mu.clone(), m);
            out.push((mu, m));
        }
        out.retain(|(_, m)| *m != 0);
        out
    }

    /// Weyl orbit of a dominant weight (Dynkin labels).
    pub(crate) fn orbit(&self, mu: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::from([mu.to_vec()]);
        let mut out = vec![mu.to_vec()];
        let mut k = 0;
        while k < out.len() {
            let w = out[k].clone();
            k += 1;
            for i in 0..self.rank() {
                if w[i] > 0 {
                    let mut v = w.clone();
                    self.reflect_dynkin(&mut v, i);
                    if seen.insert(v.clone()) {
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Size of the Weyl orbit of a dominant weight: |W| / |W_μ|.
    pub fn orbit_size(&self, mu: &[i64]) -> u128 {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (c, a) in self.positive_roots.iter().zip(&self.positive_dynkin) {
            if self.inner(mu, a) != 0 {
                let h: i64 = c.iter().sum();
                num *= BigUint::from((h + 1) as u64);
                den *= BigUint::from(h as u64);
            }
        }
        (num / den).try_into().unwrap_or(u128::MAX)
    }

    /// All weights of `V(λ)` with multiplicities, as Dynkin labels.
    pub(crate) fn full_character_dynkin(&self, lambda: &[i64]) -> Vec<(Vec<i64>, i64)> {
        let mut out = Vec::new();
        for (mu, m) in self.dominant_character(lambda) {
            for w in self.orbit(&mu) {
                out.push((w, m));
            }
        }
        out
    }

    pub(crate) fn weyl_dim_dynkin(&self, lambda: &[i64]) -> BigUint {
        let rank = self.rank();
        let lr: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
        let rho = vec![1i64; rank];
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for a in &self.positive_dynkin {
            num *= BigInt::from(self.inner(&lr, a));
            den *= BigInt::from(self.inner(&rho, a));
        }
        debug_assert!((&num % &den).is_zero());
        (num / den).to_biguint().expect("Weyl dimension is positive")
    }

    // ---- public weight-level operations ----

    /// Weyl dimension formula `Π_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩`.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<BigUint> {
        Ok(self.weyl_dim_dynkin(&self.dominant_labels(lambda)?))
    }

    /// Full formal character of `V(λ)` via the Freudenthal recursion, keyed by
    /// ε-coordinates (the central part of an ε-input is carried along).
    pub fn freudenthal_char(&self, lambda: &Weight) -> Result<FormalCharacter> {
        let labels = self.dominant_labels(lambda)?;
        let central = match lambda.basis {
            Basis::Epsilon => self.central_part(&lambda.coords),
            Basis::Fundamental => vec![Q::zero(); self.ambient_dim],
        };
        Ok(self
            .full_character_dynkin(&labels)
            .into_iter()
            .map(|(w, m)| (self.eps_of(&w, &central), m))
            .collect())
    }

    /// Character of the module with highest weight `lambda` given in ε-coordinates.
    pub fn character_eps(&self, lambda: &[Q]) -> Result<FormalCharacter> {
        self.freudenthal_char(&Weight::epsilon(lambda.to_vec()))
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.simple_roots == other.simple_roots
    }
}
