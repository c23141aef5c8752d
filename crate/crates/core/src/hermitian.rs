//! Hermitian structure of the classical simple algebras of Hermitian type.
//!
//! Sign convention: holomorphic modules are those whose highest weight has
//! very negative Z̃-value. Labels handed in and out through [`HermitianData::to_printed`]
//! and [`HermitianData::from_printed`] follow the usual printed conventions:
//!
//! * `sl(2,R)`: internal `(x1, x2)` is the SO(2)-character χ_k with `k = x2 − x1`;
//!   the holomorphic discrete series π_n has minimal K-type χ_n, n ≥ 2.
//! * `sp(n,R)`: the printed U(n)-label is the negated reverse of the internal one,
//!   so the scalar holomorphic series has positive labels `(m, …, m)`.
//! * `su(p,q)`, `u(p,q)`, `so*(2n)`, `so(2,n)`: printed and internal labels agree.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, dot, q, Q};
use crate::rootsys::{RootSystem, Weight};
use crate::sympairs::{Algebra, Expr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HermitianFamily {
    Su,
    U,
    SpR,
    SoStar,
    So2n,
    Sl2R,
}

#[derive(Debug, Clone)]
pub struct HermitianData {
    pub label: Algebra,
    pub family: HermitianFamily,
    /// Root system of g_C in its ε-space.
    pub sys: RootSystem,
    /// Root system of k_C (same ε-space).
    pub k_sys: RootSystem,
    pub compact_roots: Vec<Vec<Q>>,
    pub noncompact_pos: Vec<Vec<Q>>,
    /// λ(Z̃) = ⟨λ, ztilde⟩.
    pub ztilde: Vec<Q>,
    pub rho_g: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongOrthSequence {
    pub roots: Vec<Weight>,
    pub length: usize,
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = q(1);
    v
}

fn e_minus(dim: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(dim, i);
    v[j] -= q(1);
    v
}

fn e_plus(dim: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(dim, i);
    v[j] += q(1);
    v
}

fn positive_int(a: &Algebra, k: usize, min: i64) -> Result<Vec<i64>> {
    let args = a.int_args().ok_or_else(|| Error::NotHermitian(format!("{a} is not concrete")))?;
    if args.len() != k {
        return Err(Error::NotHermitian(a.to_string()));
    }
    if args.iter().any(|&x| x < min) {
        return Err(Error::NotHermitian(format!("{a}: parameters out of range")));
    }
    Ok(args)
}

/// Hermitian data of a classical simple (or `u(p,q)`) real form.
pub fn hermitian_data(g: &Algebra) -> Result<HermitianData> {
    use Algebra::*;
    match g {
        Su(..) | U(..) => {
            let v = positive_int(g, 2, 0)?;
            let (p, qq) = (v[0] as usize, v[1] as usize);
            if p == 0 || qq == 0 {
                return Err(Error::NotHermitian(format!("{g} is compact")));
            }
            let fam = if matches!(g, Su(..)) { HermitianFamily::Su } else { HermitianFamily::U };
            let n = p + qq;
            let z: Vec<Q> = if fam == HermitianFamily::Su {
                (0..n).map(|i| if i < p { Q::new(qq as i64, n as i64) } else { Q::new(-(p as i64), n as i64) }).collect()
            } else {
                (0..n).map(|i| if i < p { Q::new(1, 2) } else { Q::new(-1, 2) }).collect()
            };
            let simple = (0..n - 1).map(|i| e_minus(n, i, i + 1)).collect();
            assemble(g.clone(), fam, n, simple, z)
        }
        SlR(k) if k.as_const() == Some(2) => {
            let z = vec![Q::new(1, 2), Q::new(-1, 2)];
            assemble(g.clone(), HermitianFamily::Sl2R, 2, vec![e_minus(2, 0, 1)], z)
        }
        SpR(_) => {
            let n = positive_int(g, 1, 1)?[0] as usize;
            let mut simple: Vec<Vec<Q>> = (0..n - 1).map(|i| e_minus(n, i, i + 1)).collect();
            simple.push(exact::scale(&unit(n, n - 1), q(2)));
            assemble(g.clone(), HermitianFamily::SpR, n, simple, vec![Q::new(1, 2); n])
        }
        SoStar(_) => {
            let n = positive_int(g, 1, 2)?[0] as usize;
            let mut simple: Vec<Vec<Q>> = (0..n - 1).map(|i| e_minus(n, i, i + 1)).collect();
            simple.push(e_plus(n, n - 2, n - 1));
            assemble(g.clone(), HermitianFamily::SoStar, n, simple, vec![Q::new(1, 2); n])
        }
        So(..) => {
            let v = positive_int(g, 2, 0)?;
            let n = match (v[0], v[1]) {
                (2, n) if n >= 1 => n,
                (n, 2) if n >= 1 => n,
                _ => return Err(Error::NotHermitian(g.to_string())),
            };
            let m = (n + 2) as usize;
            let r = m / 2;
            let simple: Vec<Vec<Q>> = match m {
                3 => vec![unit(1, 0)],
                4 => vec![e_minus(2, 0, 1), e_plus(2, 0, 1)],
                _ if m % 2 == 1 => {
                    let mut s: Vec<_> = (0..r - 1).map(|i| e_minus(r, i, i + 1)).collect();
                    s.push(unit(r, r - 1));
                    s
                }
                _ => {
                    let mut s: Vec<_> = (0..r - 1).map(|i| e_minus(r, i, i + 1)).collect();
                    s.push(e_plus(r, r - 2, r - 1));
                    s
                }
            };
            let label = So(Expr::c(2), Expr::c(n));
            assemble(label, HermitianFamily::So2n, r, simple, unit(r, 0))
        }
        RealExc(_) => Err(Error::UnsupportedExceptional(g.to_string())),
        _ => Err(Error::NotHermitian(g.to_string())),
    }
}

pub fn hermitian_data_str(name: &str) -> Result<HermitianData> {
    hermitian_data(&name.parse()?)
}

fn assemble(label: Algebra, family: HermitianFamily, dim: usize, simple: Vec<Vec<Q>>, z: Vec<Q>) -> Result<HermitianData> {
    let sys = RootSystem::from_simple_roots(label.to_string(), dim, simple.clone())?;
    let compact_simple: Vec<Vec<Q>> = simple.iter().filter(|a| dot(a, &z).is_zero()).cloned().collect();
    let k_sys = RootSystem::from_simple_roots(format!("k({label})"), dim, compact_simple)?;
    let mut compact_roots = Vec::new();
    let mut noncompact_pos = Vec::new();
    for a in sys.positive_roots_eps() {
        let zv = dot(a, &z);
        if zv.is_zero() {
            compact_roots.push(a.clone());
            compact_roots.push(exact::neg(a));
        } else {
            noncompact_pos.push(a.clone());
        }
    }
    compact_roots.sort();
    noncompact_pos.sort();
    let rho_g = sys.rho().coords;
    Ok(HermitianData { label, family, sys, k_sys, compact_roots, noncompact_pos, ztilde: z, rho_g })
}

impl HermitianData {
    pub fn ztilde_of(&self, w: &[Q]) -> Q {
        dot(w, &self.ztilde)
    }

    pub fn dim(&self) -> usize {
        self.sys.ambient_dim()
    }

    pub fn is_root(&self, v: &[Q]) -> bool {
        !exact::is_zero(v) && self.sys.is_root(v)
    }

    pub fn strongly_orthogonal(&self, a: &[Q], b: &[Q]) -> bool {
        a != b && !self.is_root(&exact::add(a, b)) && !self.is_root(&exact::sub(a, b))
    }

    /// Weights of p₋ (negatives of the noncompact positive roots).
    pub fn p_minus_weights(&self) -> Vec<Vec<Q>> {
        self.noncompact_pos.iter().map(|a| exact::neg(a)).collect()
    }

    /// ⟨μ, α⟩ = 0 for every compact root.
    pub fn is_scalar_type(&self, mu: &[Q]) -> bool {
        self.compact_roots.iter().all(|a| dot(mu, a).is_zero())
    }

    /// ⟨μ + ρ_g, α⟩ < 0 for every noncompact positive root.
    pub fn is_holomorphic_ds(&self, mu: &[Q]) -> bool {
        let shifted = exact::add(mu, &self.rho_g);
        self.noncompact_pos.iter().all(|a| dot(&shifted, a).is_negative())
    }

    /// K-dominance of an internal weight.
    pub fn is_k_dominant(&self, mu: &[Q]) -> bool {
        self.k_sys.dynkin_int(mu).is_some_and(|d| d.iter().all(|&x| x >= 0))
    }

    /// `α ≤ β` in the root order: `β − α` is a nonnegative combination of simple roots.
    fn root_le(&self, a: &[Q], b: &[Q]) -> bool {
        self.sys.root_coords(&exact::sub(b, a)).is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// Greedy sequence: at each step the minimal noncompact positive root (root
    /// order, lexicographic tie-break) strongly orthogonal to those chosen.
    pub fn strongly_orthogonal_sequence(&self) -> StrongOrthSequence {
        self.greedy_sequence().0
    }

    /// The greedy sequence together with a flag telling whether some step had
    /// several minimal candidates.
    pub fn greedy_sequence(&self) -> (StrongOrthSequence, bool) {
        let mut chosen: Vec<Vec<Q>> = Vec::new();
        let mut tie = false;
        loop {
            let cands: Vec<&Vec<Q>> = self
                .noncompact_pos
                .iter()
                .filter(|a| chosen.iter().all(|c| self.strongly_orthogonal(a, c)))
                .collect();
            if cands.is_empty() {
                break;
            }
            let minimal: Vec<&Vec<Q>> = cands
                .iter()
                .filter(|a| !cands.iter().any(|b| b != *a && self.root_le(b, a)))
                .copied()
                .collect();
            tie |= minimal.len() > 1;
            chosen.push(minimal.into_iter().min().expect("a finite poset has minimal elements").clone());
        }
        (Self::seq(chosen), tie)
    }

    /// Greedy sequence with respect to the total order `key(α)` (smallest first).
    pub fn greedy_sequence_by<K: Ord>(&self, key: impl Fn(&[Q]) -> K) -> StrongOrthSequence {
        let mut chosen: Vec<Vec<Q>> = Vec::new();
        while let Some(next) = self
            .noncompact_pos
            .iter()
            .filter(|a| chosen.iter().all(|c| self.strongly_orthogonal(a, c)))
            .min_by_key(|a| key(a))
        {
            chosen.push(next.clone());
        }
        Self::seq(chosen)
    }

    fn seq(chosen: Vec<Vec<Q>>) -> StrongOrthSequence {
        StrongOrthSequence { length: chosen.len(), roots: chosen.into_iter().map(Weight::epsilon).collect() }
    }

    /// ℝ-rank predicted by the classification.
    pub fn expected_real_rank(&self) -> usize {
        let args = self.label.int_args().unwrap_or_default();
        match self.family {
            HermitianFamily::Su | HermitianFamily::U => args[0].min(args[1]) as usize,
            HermitianFamily::Sl2R => 1,
            HermitianFamily::SpR => args[0] as usize,
            HermitianFamily::SoStar => (args[0] / 2) as usize,
            HermitianFamily::So2n => args[1].min(2) as usize,
        }
    }

    /// Printed label of an internal weight.
    pub fn to_printed(&self, internal: &[Q]) -> Vec<Q> {
        match self.family {
            HermitianFamily::Sl2R => vec![internal[1] - internal[0]],
            HermitianFamily::SpR => internal.iter().rev().map(|x| -x).collect(),
            _ => internal.to_vec(),
        }
    }

    /// Internal weight of a printed label.
    pub fn from_printed(&self, printed: &[Q]) -> Result<Vec<Q>> {
        let want = match self.family {
            HermitianFamily::Sl2R => 1,
            _ => self.dim(),
        };
        if printed.len() != want {
            return Err(Error::InvalidHw(format!(
                "{}: expected {want} coordinates, got {}",
                self.label,
                printed.len()
            )));
        }
        Ok(match self.family {
            HermitianFamily::Sl2R => {
                let h = printed[0] / q(2);
                vec![-h, h]
            }
            HermitianFamily::SpR => printed.iter().rev().map(|x| -x).collect(),
            _ => printed.to_vec(),
        })
    }
}
