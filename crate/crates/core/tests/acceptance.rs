//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use mfbranch::branching::{
    c_count, discrete_part_spc, hks_expansion, sl2_formula, sp2_holo_ktype_mult, sp2_nonholo_ktype_mult,
    tensor_hwm_expansion, Label, LabelKind, Mult, Sl2Case, Term,
};
use mfbranch::charoracle::tensor_decompose;
use mfbranch::exact::{q, to_ints};
use mfbranch::hermitian::hermitian_data_str;
use mfbranch::rootsys::{Family, RootSystem, Weight};
use mfbranch::sympairs::{mf_restriction_table, pan_indices};
use mfbranch::verify::{check_upq_consistency, run_theorem_e, run_theorem_f, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn term(label: Label, drop: u64) -> Term {
    Term { label, mult: 1, ztilde_drop: drop }
}

fn sl2_suite() -> Result<(), String> {
    let start = Instant::now();
    let hd = hermitian_data_str("sl2R").map_err(|e| e.to_string())?;
    const N: u64 = 20;
    for m in 2..=10i64 {
        for n in 2..=m {
            let hks = hks_expansion(&hd, &[q(n)], N).map_err(|e| e.to_string())?;
            let printed: Vec<Term> = (0..=N).map(|k| term(Label::character(n + 2 * k as i64), k)).collect();
            ensure(hks.terms == printed, || format!("π_{n}|SO(2): {hks}"))?;
            let b = sl2_formula(Sl2Case::B { n }, N).map_err(|e| e.to_string())?;
            ensure(b.terms == printed, || format!("formula (b) for n={n}"))?;

            let t = tensor_hwm_expansion(&hd, &[q(m)], &[q(n)], N).map_err(|e| e.to_string())?;
            let printed: Vec<Term> = (0..=N).map(|k| term(Label::irrep(&[m + n + 2 * k as i64]), k)).collect();
            ensure(t.terms == printed, || format!("π_{m} ⊗ π_{n}: {t}"))?;
            let d = sl2_formula(Sl2Case::D { m, n }, N).map_err(|e| e.to_string())?;
            ensure(d.terms == printed, || format!("formula (d) for m={m} n={n}"))?;
        }
    }
    let su2 = RootSystem::build(Family::A, 1).map_err(|e| e.to_string())?;
    for n in 0..=10i64 {
        let e = sl2_formula(Sl2Case::E { n }, 0).map_err(|e| e.to_string())?;
        let ch = su2.freudenthal_char(&Weight::from_dynkin(&[n])).map_err(|e| e.to_string())?;
        let mut oracle: Vec<(i64, i64)> = ch.iter().map(|(w, m)| (su2.dynkin_int(w).unwrap()[0], *m)).collect();
        let mut got: Vec<(i64, i64)> =
            e.terms.iter().map(|t| (to_ints(&t.label.coords).unwrap()[0], t.mult as i64)).collect();
        oracle.sort();
        got.sort();
        ensure(got == oracle, || format!("(e) n={n}: {got:?} vs {oracle:?}"))?;
        for m in 0..=10i64 {
            let f = sl2_formula(Sl2Case::F { m, n }, 0).map_err(|e| e.to_string())?;
            let dec = tensor_decompose(&su2, &Weight::from_dynkin(&[m]), &Weight::from_dynkin(&[n]))
                .map_err(|e| e.to_string())?;
            let mut oracle: Vec<(i64, u64)> = dec.terms.iter().map(|(w, k)| (su2.dynkin_int(w).unwrap()[0], *k)).collect();
            let mut got: Vec<(i64, u64)> =
                f.terms.iter().map(|t| (to_ints(&t.label.coords).unwrap()[0], t.mult)).collect();
            oracle.sort();
            got.sort();
            ensure(got == oracle, || format!("(f) m={m} n={n}: {got:?} vs {oracle:?}"))?;
        }
    }
    within(start, Duration::from_secs(1))
}

fn theorem_f() -> Result<(), String> {
    let start = Instant::now();
    let reports = run_theorem_f(4, 3).map_err(|e| e.to_string())?;
    let types_with_pan: BTreeSet<String> = Family::types_up_to(4)
        .into_iter()
        .filter(|&(f, r)| !pan_indices(f, r).unwrap().is_empty())
        .map(|(f, r)| f.type_name(r))
        .collect();
    let covered: BTreeSet<String> =
        reports.iter().map(|r| r.case_id.split(':').nth(1).unwrap().to_string()).collect();
    ensure(covered == types_with_pan, || format!("covered {covered:?}"))?;
    if let Some(bad) = reports.iter().find(|r| r.status != Status::Pass) {
        return Err(format!("{bad:?}"));
    }
    within(start, Duration::from_secs(180))
}

fn theorem_e() -> Result<(), String> {
    let start = Instant::now();
    let reports = run_theorem_e(4, 3);
    for (i, row) in mf_restriction_table().iter().enumerate() {
        let label = row.label();
        match row.projection {
            None => ensure(
                reports.iter().any(|r| r.status == Status::Unsupported && r.case_id.ends_with(&label)),
                || format!("row {label} not reported as Unsupported"),
            )?,
            Some(_) => ensure(!row.instances(i, 4).is_empty(), || format!("row {label} has no instance"))?,
        }
    }
    if let Some(bad) = reports.iter().find(|r| r.status == Status::Fail) {
        return Err(format!("{bad:?}"));
    }
    let checked = reports.iter().filter(|r| r.status == Status::Pass).count();
    ensure(checked > 0, || "nothing checked".into())?;
    within(start, Duration::from_secs(120))
}

fn pan_classification() -> Result<(), String> {
    for (f, n) in Family::types_up_to(8) {
        let printed: Vec<usize> = match f {
            Family::A => (1..=n).collect(),
            Family::B => vec![1],
            Family::C => vec![n],
            Family::D => vec![1, n - 1, n],
            Family::E6 => vec![1, 6],
            Family::E7 => vec![7],
            Family::E8 | Family::F4 | Family::G2 => vec![],
        };
        let got = pan_indices(f, n).map_err(|e| e.to_string())?;
        ensure(got == printed, || format!("{}: {got:?} vs {printed:?}", f.type_name(n)))?;
    }
    Ok(())
}

fn strongly_orthogonal() -> Result<(), String> {
    let mut cases: Vec<(String, usize)> = Vec::new();
    for p in 1..=5usize {
        for qq in 1..=5usize {
            cases.push((format!("su({p},{qq})"), p.min(qq)));
        }
    }
    for n in 1..=6usize {
        cases.push((format!("sp({n},R)"), n));
        cases.push((format!("so(2,{n})"), n.min(2)));
        if n >= 2 {
            cases.push((format!("so*({})", 2 * n), n / 2));
        }
    }
    for (g, want) in cases {
        let hd = hermitian_data_str(&g).map_err(|e| format!("{g}: {e}"))?;
        let seq = hd.strongly_orthogonal_sequence();
        ensure(seq.length == want && seq.roots.len() == want, || format!("{g}: length {} vs {want}", seq.length))?;
        let mut roots: BTreeSet<Vec<mfbranch::Q>> = BTreeSet::new();
        for a in hd.sys.positive_roots_eps() {
            roots.insert(a.clone());
            roots.insert(a.iter().map(|x| -x).collect());
        }
        for (i, a) in seq.roots.iter().enumerate() {
            ensure(hd.noncompact_pos.contains(&a.coords), || format!("{g}: {a} not noncompact positive"))?;
            for b in &seq.roots[i + 1..] {
                let s: Vec<_> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
                let d: Vec<_> = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
                ensure(!roots.contains(&s) && !roots.contains(&d), || format!("{g}: {a}, {b} not strongly orthogonal"))?;
            }
        }
    }
    Ok(())
}

fn sp2_formulas() -> Result<(), String> {
    for d in 0..=6i64 {
        for mu2 in [3, 4, 7] {
            let mu1 = mu2 + d;
            let sup = (0..=40).flat_map(|p| (0..=40).map(move |qq| (p, qq))).map(|(p, qq)| sp2_holo_ktype_mult(mu1, mu2, p, qq)).max();
            let want = ((d + 2) / 2) as u64;
            ensure(sup == Some(want), || format!("μ=({mu1},{mu2}): sup {sup:?} vs {want}"))?;
        }
    }
    let lambdas = [(2, -1), (3, -1), (3, -2), (5, -2), (6, -5)];
    for (l1, l2) in lambdas {
        let (mu1, mu2) = (l1 + 1, l2);
        for p in -30..=30i64 {
            for qq in -30..=30i64 {
                let mut lattice = 0u64;
                for a in 0..=30i64 {
                    let b = p - mu1 - 2 * a;
                    if b < 0 {
                        break;
                    }
                    let twice_c = b + mu2 - qq;
                    if twice_c >= 0 && twice_c % 2 == 0 {
                        lattice += 1;
                    }
                }
                let got = sp2_nonholo_ktype_mult(l1, l2, p, qq).map_err(|e| e.to_string())?;
                ensure(got == lattice, || format!("λ=({l1},{l2}) (p,q)=({p},{qq}): {got} vs {lattice}"))?;
            }
        }
        for bound in 0..=10u64 {
            let exceeded = (0..=60i64)
                .flat_map(|p| (-60..=60i64).map(move |qq| (p, qq)))
                .any(|(p, qq)| sp2_nonholo_ktype_mult(l1, l2, p, qq).unwrap() > bound);
            ensure(exceeded, || format!("λ=({l1},{l2}) bounded by {bound}"))?;
        }
    }
    Ok(())
}

fn upq_law() -> Result<(), String> {
    let start = Instant::now();
    let cases: [(usize, usize, [&[i64]; 2]); 4] = [
        (1, 1, [&[0, 2], &[-1, 3]]),
        (2, 1, [&[0, 0, 3], &[2, 0, 5]]),
        (2, 2, [&[0, 0, 4, 4], &[1, 0, 6, 5]]),
        (3, 1, [&[0, 0, 0, 4], &[2, 1, 0, 7]]),
    ];
    for (p, qq, mus) in cases {
        for mu in mus {
            let r = check_upq_consistency(p, qq, mu, 6).map_err(|e| e.to_string())?;
            ensure(r.status == Status::Pass, || format!("{r:?}"))?;
        }
    }
    within(start, Duration::from_secs(120))
}

fn c_count_exhibit() -> Result<(), String> {
    for a in 0..=12i64 {
        for b in 0..=12i64 {
            ensure(c_count(a, b, a, b) == 1, || format!("c({a},{b};{a},{b})"))?;
        }
    }
    for a in 0..=12i64 {
        let e = discrete_part_spc(a, 3, 12).map_err(|e| e.to_string())?;
        let printed: BTreeSet<i64> = (3..=a).filter(|m| (m - a) % 2 == 0).collect();
        for kind in [LabelKind::Irrep, LabelKind::Contragredient] {
            let terms: Vec<&Term> = e.terms.iter().filter(|t| t.label.kind == kind).collect();
            ensure(terms.iter().all(|t| t.mult == 1), || format!("a={a}: multiplicity > 1"))?;
            let got: BTreeSet<i64> = terms
                .iter()
                .map(|t| {
                    let c = to_ints(&t.label.coords).unwrap();
                    assert_eq!(c[1], 3);
                    c[0]
                })
                .collect();
            ensure(got.len() == terms.len() && got == printed, || format!("a={a} {kind:?}: {got:?} vs {printed:?}"))?;
        }
        ensure(e.continuous.len() == 1 && e.continuous[0].mult == Mult::Infinite, || "missing ∞ term".into())?;
    }
    Ok(())
}

fn oracle_consistency() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (f, r) in Family::types_up_to(4) {
        let sys = RootSystem::build(f, r).map_err(|e| e.to_string())?;
        for _ in 0..200 {
            let mut draw = || -> Vec<i64> {
                let mut v = vec![0i64; r];
                for _ in 0..rng.gen_range(0..=2) {
                    v[rng.gen_range(0..r)] += 1;
                }
                v
            };
            let (a, b) = (Weight::from_dynkin(&draw()), Weight::from_dynkin(&draw()));
            let ab = tensor_decompose(&sys, &a, &b).map_err(|e| e.to_string())?;
            let ba = tensor_decompose(&sys, &b, &a).map_err(|e| e.to_string())?;
            ensure(ab == ba, || format!("{}: {a} ⊗ {b} not commutative", f.type_name(r)))?;
            let total = ab.dimension(&sys).map_err(|e| e.to_string())?;
            let prod = sys.weyl_dim(&a).unwrap() * sys.weyl_dim(&b).unwrap();
            ensure(total == prod, || format!("{}: {a} ⊗ {b}: {total} vs {prod}", f.type_name(r)))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("sl2 suite", sl2_suite),
        ("pan tensor products multiplicity-free", theorem_f),
        ("restriction table multiplicity-free", theorem_e),
        ("pan classification", pan_classification),
        ("strongly orthogonal sequences", strongly_orthogonal),
        ("Sp(2,R) K-multiplicities", sp2_formulas),
        ("U(p,q) branching law", upq_law),
        ("c-count exhibit", c_count_exhibit),
        ("oracle self-consistency", oracle_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {} ({name}): PASS [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{ms} ms]: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
