//! Acceptance criteria, one line each. Runs as a plain binary so every
//! criterion is reported even when an earlier one fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_integer::Integer;

use ringauto_core::basic::{self, BasicAut};
use ringauto_core::endo::{self, Endo};
use ringauto_core::fixed::{self, SubgroupSpec, Z4Ring};
use ringauto_core::gz4::{self, GAut4, Kind};
use ringauto_core::{poly, Modulus, Poly};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn m(n: u64) -> Modulus {
    Modulus::new(n).unwrap()
}

fn z4p(c: &[i64]) -> Poly {
    Poly::from_coeffs(m(4), c)
}

fn e(n: u64, c: &[i64]) -> Endo {
    Endo::new(Poly::from_coeffs(m(n), c))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z9_class_table() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_ringauto"))
        .args(["classes", "--modulus", "9", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || "classes exited nonzero".into())?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let rows = v["classes"].as_array().ok_or("no classes array")?;
    let mut sizes: Vec<u64> = rows.iter().map(|r| r["size"].as_u64().unwrap()).collect();
    sizes.sort();
    ensure(rows.len() == 10, || format!("{} classes", rows.len()))?;
    ensure(v["count"] == 10, || "count field".into())?;
    ensure(sizes == [1, 2, 3, 3, 6, 6, 6, 9, 9, 9], || format!("sizes {sizes:?}"))?;
    ensure(sizes.iter().sum::<u64>() == 54 && v["group_order"] == 54, || "total".into())?;
    let reps: BTreeSet<(u64, u64)> = rows
        .iter()
        .map(|r| (r["u"].as_u64().unwrap(), r["a"].as_u64().unwrap()))
        .collect();
    let listed: BTreeSet<(u64, u64)> = [
        (1, 9),
        (1, 3),
        (1, 1),
        (2, 1),
        (4, 3),
        (4, 1),
        (5, 1),
        (7, 3),
        (7, 1),
        (8, 1),
    ]
    .into();
    ensure(reps == listed, || format!("representatives {reps:?}"))?;
    Ok("10 classes, sizes {1,2,3,3,6,6,6,9,9,9}, total 54".into())
}

fn psi_formula_vs_bruteforce() -> Outcome {
    for n in 2..=60 {
        let (f, b) = (basic::psi(m(n)), basic::psi_bruteforce(m(n)).map_err(|e| e.to_string())?);
        ensure(f == b, || format!("n={n}: formula {f}, brute force {b}"))?;
    }
    Ok("n = 2..=60".into())
}

fn psi_multiplicative() -> Outcome {
    let mut pairs = 0;
    for r in 2..=30u64 {
        for q in 2..=60 / r {
            if r.gcd(&q) == 1 {
                pairs += 1;
                let (a, b) = (basic::psi(m(r * q)), basic::psi(m(r)) * basic::psi(m(q)));
                ensure(a == b, || format!("psi({r}*{q}) = {a}, product {b}"))?;
            }
        }
    }
    Ok(format!("{pairs} coprime pairs"))
}

fn psi_prime_powers() -> Outcome {
    for (p, k) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let n = p.pow(k);
        let closed = (p.pow(k - 1) - 1) / (p - 1) + n;
        let got = basic::psi(m(n));
        let brute = basic::psi_bruteforce(m(n)).map_err(|e| e.to_string())?;
        ensure(got == closed && brute == closed, || {
            format!("n={n}: psi {got}, closed form {closed}, brute force {brute}")
        })?;
    }
    Ok("4, 8, 16, 9, 27, 25".into())
}

fn conjugacy_decision() -> Outcome {
    let mut pairs = 0u64;
    for n in 2..=24 {
        let md = m(n);
        let elems = basic::elements(md);
        for s in &elems {
            let orbit: BTreeSet<BasicAut> = elems.iter().map(|g| g.inverse() * *s * *g).collect();
            for t in &elems {
                pairs += 1;
                let expected = orbit.contains(t);
                let got = basic::are_conjugate(s, t).map_err(|e| e.to_string())?;
                ensure(got == expected, || format!("n={n}: {s} vs {t}"))?;
                let w = basic::conjugacy_witness(s, t).map_err(|e| e.to_string())?;
                ensure(w.is_some() == expected, || format!("n={n}: witness presence {s} {t}"))?;
                if let Some(g) = w {
                    ensure(g.inverse() * *s * g == *t, || format!("n={n}: bad witness {g} for {s} {t}"))?;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs over n <= 24"))
}

fn gilmer_two_ways() -> Outcome {
    let mut report = Vec::new();
    let mut failed = Vec::new();
    for n in [4u64, 6, 8, 9] {
        let md = m(n);
        let mut mismatches = 0;
        let mut first = None;
        for idx in 0..n.pow(4) {
            let coeffs: Vec<u64> = (0..4).map(|k| (idx / n.pow(k)) % n).collect();
            let s = Endo::new(Poly::from_u64s(md, &coeffs));
            let by_form = s.classify().is_ok();
            let by_search = endo::is_automorphism_bruteforce(&s, 4).map_err(|e| e.to_string())?;
            if by_form != by_search {
                mismatches += 1;
                first.get_or_insert_with(|| s.to_string());
            }
        }
        report.push(format!("n={n}: {mismatches} mismatches"));
        if let Some(s) = first {
            failed.push(format!("n={n}: {mismatches} of {} images disagree, e.g. {s}", n.pow(4)));
        }
    }
    if failed.is_empty() {
        Ok(report.join(", "))
    } else {
        Err(failed.join("; "))
    }
}

fn fixed_ring_catalog() -> Outcome {
    let alpha = |c: &[i64]| GAut4::alpha(z4p(c)).unwrap();
    let beta = |c: &[i64]| GAut4::beta(z4p(c)).unwrap();
    let two_y = [0, 2, 2];
    let closure: Vec<GAut4> = gz4::closure(&[alpha(&[2]), beta(&[])]).elements().iter().cloned().collect();
    let cases: Vec<(&str, Vec<GAut4>, Z4Ring)> = vec![
        ("<alpha_2>", vec![alpha(&[2])], Z4Ring::X2And2X),
        ("<alpha_2x>", vec![alpha(&[0, 2])], Z4Ring::X2And2X),
        ("<beta_0>", vec![beta(&[])], Z4Ring::YPlusXF(z4p(&[]))),
        ("<beta_2>", vec![beta(&[2])], Z4Ring::YPlusXF(z4p(&[2]))),
        ("<theta>", vec![beta(&[0, 2])], Z4Ring::Y2And2Y),
        ("<beta_2y>", vec![beta(&two_y)], Z4Ring::YPlusXF(z4p(&two_y))),
        ("<alpha_2, beta_0>", closure, Z4Ring::Y2And2Y),
        ("pool(3)", gz4::pool(3).map_err(|e| e.to_string())?, Z4Ring::Y2And2Y),
    ];
    for (name, gens, expected) in cases {
        let h = SubgroupSpec::new(m(4), gens.iter().map(GAut4::to_endo).collect()).map_err(|e| e.to_string())?;
        let module = fixed::fixed_module(&h, 8).map_err(|e| e.to_string())?;
        let catalog = expected.catalog_module(8, 16).map_err(|e| e.to_string())?;
        ensure(module == catalog, || format!("{name}: fixed module differs from {expected}"))?;
        let got = fixed::identify_z4(&h, 8, 16).map_err(|e| format!("{name}: {e}"))?;
        ensure(got == expected, || format!("{name}: identified {got}"))?;
        for b in module.basis() {
            for s in h.generators() {
                ensure(s.apply(&b).unwrap() == b, || format!("{name}: {b} moved by {s}"))?;
            }
        }
    }
    Ok("8 fixtures at D=8, W=16".into())
}

fn samuel() -> Outcome {
    for (p, d) in [(2, 8), (3, 12)] {
        let ok = fixed::samuel_check(p, d).map_err(|e| e.to_string())?;
        ensure(ok, || format!("samuel_check({p}, {d}) false"))?;
    }
    Ok("p=2 D=8, p=3 D=12".into())
}

fn worked_examples() -> Outcome {
    let conj = e(9, &[1, 1]).conjugate_by(&e(9, &[0, 1, 3])).map_err(|e| e.to_string())?;
    ensure(conj == e(9, &[4, 7]), || format!("first conjugate {conj}"))?;

    let conj = e(9, &[0, 1, 3]).conjugate_by(&e(9, &[1, 1])).map_err(|e| e.to_string())?;
    ensure(conj == e(9, &[3, 4, 3]), || format!("second conjugate {conj}"))?;

    let y = Poly::from_coeffs(m(9), &[0, 1, 3]);
    let lhs = e(9, &[0, 2]).apply(&y).map_err(|e| e.to_string())?;
    let rhs = &y.scale(2) + &(&y * &y).scale(6);
    ensure(lhs == rhs, || format!("sigma(y) = {lhs}"))?;

    let big_m = &(&(&z4p(&[0, 1]) * &z4p(&[1, 1])) * &z4p(&[2, 1])) * &z4p(&[3, 1]);
    let w = z4p(&[0, 1, 1]);
    let digits = poly::f_adic_expand(&big_m, &w).map_err(|e| e.to_string())?;
    ensure(digits == vec![z4p(&[]), z4p(&[2]), z4p(&[1])], || format!("digits {digits:?}"))?;
    ensure(big_m == &(&w * &w) + &w.scale(2), || "M != w^2 + 2w".into())?;
    let translations: Vec<BasicAut> = (0..4).map(|a| BasicAut::new(1, a, m(4)).unwrap()).collect();
    let norm = fixed::norm_of_x(&translations).map_err(|e| e.to_string())?;
    ensure(norm == big_m, || format!("norm {norm}"))?;
    Ok("4+7x, 3+4x+3x^2, 2y+6y^2, M = w^2+2w".into())
}

fn structure_suite() -> Outcome {
    let mut notes = Vec::new();
    for d in [2usize, 5] {
        let pool = gz4::pool(d).map_err(|e| e.to_string())?;
        let endos: Vec<Endo> = pool.iter().map(GAut4::to_endo).collect();
        for (s, es) in pool.iter().zip(&endos) {
            for (t, et) in pool.iter().zip(&endos) {
                let product = es.compose(et).map_err(|e| e.to_string())?;
                ensure((s * t).to_endo() == product, || format!("d={d}: law at {s} * {t}"))?;
            }
            let commutes = pool.iter().all(|t| s * t == t * s);
            let in_a0 = s.kind() == Kind::Alpha && *s.f() == gz4::prime(s.f());
            ensure(commutes == in_a0 && s.is_central() == in_a0, || format!("d={d}: center at {s}"))?;
        }
        let conjugators = gz4::pool(d + 1).map_err(|e| e.to_string())?;
        let mut classes = BTreeSet::new();
        for s in &pool {
            let orbit: BTreeSet<GAut4> = conjugators
                .iter()
                .map(|g| Endo::conjugate_by(&s.to_endo(), &g.to_endo()).map(|c| GAut4::from_endo(&c).unwrap()))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for t in &pool {
                ensure(orbit.contains(t) == gz4::are_conjugate_g4(s, t), || {
                    format!("d={d}: conjugacy {s} ~ {t}")
                })?;
            }
            classes.insert(orbit.into_iter().filter(|t| pool.contains(t)).collect::<Vec<_>>());
        }
        let listed = gz4::conjugacy_classes(d).map_err(|e| e.to_string())?;
        let listed: BTreeSet<Vec<GAut4>> = listed.into_iter().collect();
        ensure(listed == classes, || format!("d={d}: class list"))?;
        notes.push(format!("pool {d}: {} elements, {} classes", pool.len(), classes.len()));
    }

    let pool: BTreeSet<GAut4> = gz4::pool(3).map_err(|e| e.to_string())?.into_iter().collect();
    let alphas: BTreeSet<GAut4> = pool.iter().filter(|s| s.kind() == Kind::Alpha).cloned().collect();
    let stab = |ring: &Z4Ring| gz4::stabilizer(&ring.generators(), 3).map(|g| g.elements().clone());
    ensure(stab(&Z4Ring::FullRing).unwrap() == BTreeSet::from([GAut4::identity()]), || "R[x]*".into())?;
    ensure(stab(&Z4Ring::X2And2X).unwrap() == alphas, || "R[x^2,2x]*".into())?;
    ensure(stab(&Z4Ring::Y2And2Y).unwrap() == pool, || "R[y^2,2y]*".into())?;
    let mut in_ry = 0;
    for b in pool.iter().filter(|s| s.kind() == Kind::Beta && *s.f() == gz4::prime(s.f())) {
        in_ry += 1;
        let f = b.f();
        let cyclic: BTreeSet<GAut4> = (0..4u32)
            .scan(GAut4::identity(), |acc, _| {
                let cur = acc.clone();
                *acc = &*acc * b;
                Some(cur)
            })
            .collect();
        let got = stab(&Z4Ring::YPlusXF(f.clone())).unwrap();
        ensure(got == cyclic, || format!("R[y+xf]* for {b}: {} elements", got.len()))?;
    }

    notes.push(format!("stabilizers incl. {in_ry} rings R[y+xf]"));

    let basics = gz4::basic_elements();
    let bset: BTreeSet<GAut4> = basics.iter().cloned().collect();
    let conjugators = gz4::pool(2).map_err(|e| e.to_string())?;
    for s in &basics {
        let b_class: BTreeSet<GAut4> = basics.iter().map(|g| s.conjugate_by(g)).collect();
        let g_class: BTreeSet<GAut4> = conjugators.iter().map(|g| s.conjugate_by(g)).collect();
        let meet: BTreeSet<GAut4> = g_class.intersection(&bset).cloned().collect();
        ensure(b_class == meet, || format!("[{s}]_B differs from [{s}]_G meet B"))?;
    }

    let w = endo::nonnormality_witness(m(4)).map_err(|e| e.to_string())?;
    ensure(w.alpha == e(4, &[1, 1]), || format!("alpha {}", w.alpha))?;
    let recomputed = w.sigma.invert().unwrap().compose(&w.alpha).unwrap().compose(&w.sigma).unwrap();
    ensure(recomputed == w.conjugate, || "conjugate recomputation".into())?;
    ensure(w.conjugate.is_automorphism() && BasicAut::from_endo(&w.conjugate).is_none(), || {
        format!("conjugate {} is basic", w.conjugate)
    })?;
    notes.push(format!("witness {}", w.conjugate));
    Ok(notes.join(", "))
}

fn basic_conjugacy_descends() -> Outcome {
    let pool: Vec<Endo> = gz4::pool(2).map_err(|e| e.to_string())?.iter().map(GAut4::to_endo).collect();
    let basics: Vec<BasicAut> = basic::elements(m(4));
    let mut pairs = 0;
    for s in &basics {
        for t in basics.iter().filter(|t| t.u() == s.u()) {
            let by_pool = pool
                .iter()
                .any(|g| s.to_endo().conjugate_by(g).unwrap() == t.to_endo());
            if by_pool {
                pairs += 1;
                let by_basic = basics.iter().any(|g| g.inverse() * *s * *g == *t);
                ensure(by_basic, || format!("{s} ~ {t} only through the pool"))?;
            }
        }
    }
    Ok(format!("{pairs} pool-conjugate pairs, all basic-conjugate"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "Z_9 class table", Duration::from_secs(1), z9_class_table),
        (2, "psi formula vs brute force", Duration::from_secs(60), psi_formula_vs_bruteforce),
        (3, "psi multiplicative", Duration::from_secs(60), psi_multiplicative),
        (4, "psi at prime powers", Duration::from_secs(60), psi_prime_powers),
        (5, "conjugacy decision", Duration::from_secs(120), conjugacy_decision),
        (6, "Gilmer criterion two ways", Duration::from_secs(600), gilmer_two_ways),
        (7, "Z_4 fixed-ring catalog", Duration::from_secs(30), fixed_ring_catalog),
        (8, "Z_p invariants", Duration::from_secs(60), samuel),
        (9, "worked examples", Duration::from_secs(60), worked_examples),
        (10, "G(Z_4) structure", Duration::from_secs(60), structure_suite),
        (11, "basic conjugacy in Z_4 pool", Duration::from_secs(60), basic_conjugacy_descends),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > budget => Err(format!("{detail}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} {name}: {detail} ({took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name}: {why} ({took:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
