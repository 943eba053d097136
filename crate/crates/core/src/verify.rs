//! Exhaustive cross-checks of the closed forms against brute-force oracles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::basic::{self, BasicAut};
use crate::endo::{self, Endo};
use crate::error::{Error, Result};
use crate::fixed::{self, SubgroupSpec, Z4Ring};
use crate::gz4::{self, GAut4, Kind, Z4};
use crate::poly::Poly;
use crate::residues::{self, Modulus, Residue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Residues,
    Gilmer,
    Conjugacy,
    FixedRings,
    Gz4,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Residues,
        Suite::Gilmer,
        Suite::Conjugacy,
        Suite::FixedRings,
        Suite::Gz4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Residues => "residues",
            Suite::Gilmer => "gilmer",
            Suite::Conjugacy => "conjugacy",
            Suite::FixedRings => "fixedrings",
            Suite::Gz4 => "gz4",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        [Suite::All]
            .into_iter()
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Recorder {
            suite: suite.name(),
            checks: Vec::new(),
        }
    }

    /// Records a check from a list of failure messages; empty means pass.
    fn push(&mut self, name: impl Into<String>, summary: String, failures: Vec<String>) {
        let passed = failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
            format!("{summary}; {} failure(s): {}", failures.len(), shown.join("; "))
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail,
        });
    }
}

pub fn run(suite: Suite, max_n: u64) -> Result<Vec<Check>> {
    if max_n < 2 {
        return Err(Error::InvalidModulus(max_n));
    }
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run(s, max_n)?);
            }
            Ok(out)
        }
        Suite::Residues => residues_suite(max_n),
        Suite::Gilmer => gilmer_suite(max_n),
        Suite::Conjugacy => conjugacy_suite(max_n),
        Suite::FixedRings => fixedrings_suite(),
        Suite::Gz4 => gz4_suite(),
    }
}

fn moduli(max_n: u64) -> impl Iterator<Item = Modulus> {
    (2..=max_n).map(|n| Modulus::new(n).expect("n >= 2"))
}

fn residues_suite(max_n: u64) -> Result<Vec<Check>> {
    let mut rec = Recorder::new(Suite::Residues);
    for m in moduli(max_n) {
        let n = m.get();
        let mut failures = Vec::new();
        let rad: u64 = (2..=n).filter(|p| n % p == 0 && (2..*p).all(|q| p % q != 0)).product();
        for r in 0..n {
            let unit = r.gcd(&n) == 1;
            if m.is_unit(r) != unit {
                failures.push(format!("is_unit({r})"));
            }
            match m.inverse(r) {
                Ok(v) if !unit || m.mul(r, v) != 1 % n => failures.push(format!("inverse({r})")),
                Err(_) if unit => failures.push(format!("inverse({r}) missing")),
                _ => {}
            }
            if m.is_nilpotent(r) != (r % rad == 0) {
                failures.push(format!("is_nilpotent({r})"));
            }
            for b in 0..n {
                let scan: Vec<u64> = (0..n).filter(|&c| m.mul(r, c) == b).collect();
                let got: Vec<u64> = residues::solve_linear(Residue::from_u64(r, m), Residue::from_u64(b, m))?
                    .iter()
                    .map(|c| c.value())
                    .collect();
                if scan != got {
                    failures.push(format!("solve_linear({r}, {b})"));
                }
                if r > 0 && b > 0 && r.gcd(&b) == 1 {
                    let k = residues::unit_in_progression(r, b, m)?;
                    if (r + k * b).gcd(&n) != 1 {
                        failures.push(format!("unit_in_progression({r}, {b})"));
                    }
                }
            }
        }
        let product: u64 = m.factorize().iter().map(|&(p, e)| p.pow(e)).product();
        if product != n {
            failures.push("factorize".into());
        }
        rec.push(format!("n={n}"), format!("n={n}: {} residues", n), failures);
    }
    Ok(rec.checks)
}

/// Largest inverse degree that can occur for an automorphism with image of
/// degree at most 3 over these moduli: 4, except 5 over `Z_8`.
pub fn gilmer_cap(n: u64) -> usize {
    if n == 8 {
        5
    } else {
        4
    }
}

fn images(m: Modulus, max_deg: usize) -> impl Iterator<Item = Endo> {
    let n = m.get();
    (0..n.pow(max_deg as u32 + 1)).map(move |mut idx| {
        let coeffs: Vec<u64> = (0..=max_deg)
            .map(|_| {
                let c = idx % n;
                idx /= n;
                c
            })
            .collect();
        Endo::new(Poly::from_u64s(m, &coeffs))
    })
}

/// Tally of `classify` against the exhaustive inverse search.
pub fn gilmer_two_way(m: Modulus, cap: usize) -> Result<(usize, Vec<String>)> {
    let mut autos = 0;
    let mut failures = Vec::new();
    for s in images(m, 3) {
        let by_form = s.classify().is_ok();
        let by_search = endo::is_automorphism_bruteforce(&s, cap)?;
        if by_form != by_search {
            failures.push(format!("{s}: classify {by_form}, search {by_search}"));
        }
        if by_form {
            autos += 1;
            let t = s.invert()?;
            if !s.compose(&t)?.is_identity() || !t.compose(&s)?.is_identity() {
                failures.push(format!("{s}: invert"));
            }
        }
    }
    Ok((autos, failures))
}

fn gilmer_suite(max_n: u64) -> Result<Vec<Check>> {
    let mut rec = Recorder::new(Suite::Gilmer);
    for n in [4u64, 6, 8, 9].into_iter().filter(|&n| n <= max_n) {
        let m = Modulus::new(n)?;
        let cap = gilmer_cap(n);
        let (autos, failures) = gilmer_two_way(m, cap)?;
        rec.push(
            format!("n={n}"),
            format!("n={n}: {} images, {autos} automorphisms, inverse degree cap {cap}", n.pow(4)),
            failures,
        );
    }
    for m in moduli(max_n).filter(|m| !m.is_squarefree()) {
        let w = endo::nonnormality_witness(m)?;
        let mut failures = Vec::new();
        if BasicAut::from_endo(&w.conjugate).is_some() {
            failures.push(format!("conjugate {} is basic", w.conjugate));
        }
        if w.sigma.invert()?.compose(&w.alpha)?.compose(&w.sigma)? != w.conjugate {
            failures.push("conjugate recomputation".into());
        }
        rec.push(
            format!("nonnormal n={}", m.get()),
            format!("n={}: r={}, m={}, conjugate {}", m.get(), w.r, w.m, w.conjugate),
            failures,
        );
    }
    Ok(rec.checks)
}

/// Per-`n` conjugacy check; returns the summary line and the failures.
pub fn conjugacy_at(m: Modulus) -> Result<(String, Vec<String>)> {
    let n = m.get();
    let elems = basic::elements(m);
    let orbits = basic::orbits_bruteforce(m)?;
    let mut orbit_of: BTreeMap<BasicAut, usize> = BTreeMap::new();
    for (i, o) in orbits.iter().enumerate() {
        for s in o {
            orbit_of.insert(*s, i);
        }
    }
    let mut failures = Vec::new();
    let mut positive = 0usize;
    for s in &elems {
        for t in &elems {
            let brute = orbit_of[s] == orbit_of[t];
            let formula = basic::are_conjugate(s, t)?;
            if brute != formula {
                failures.push(format!("{s} ~ {t}: formula {formula}, search {brute}"));
            }
            if formula {
                positive += 1;
                if s.u() != t.u() {
                    failures.push(format!("{s} ~ {t} with different u"));
                }
                match basic::conjugacy_witness(s, t)? {
                    Some(g) if s.conjugate_by(&g)? == *t => {}
                    other => failures.push(format!("{s} ~ {t}: witness {other:?}")),
                }
            }
        }
    }
    for s in &elems {
        let c = s.canonical_rep();
        if c.canonical_rep() != c || orbit_of.get(&c) != Some(&orbit_of[s]) {
            failures.push(format!("canonical_rep({s}) = {c}"));
        }
        if c.a() != 0 && !n.is_multiple_of(c.a()) {
            failures.push(format!("canonical translation of {s} does not divide n"));
        }
    }
    let classes = basic::enumerate_classes(m)?;
    let group_order = n * m.phi();
    let total: u64 = classes.iter().map(|c| c.size).sum();
    if total != group_order {
        failures.push(format!("class sizes sum to {total}"));
    }
    for c in &classes {
        let o = &orbits[orbit_of[&c.rep]];
        if o.len() as u64 != c.size {
            failures.push(format!("class of {} has size {} vs orbit {}", c.rep, c.size, o.len()));
        }
        if !group_order.is_multiple_of(c.size) {
            failures.push(format!("class size {} does not divide {group_order}", c.size));
        }
    }
    let psi = basic::psi(m);
    if classes.len() as u64 != psi || orbits.len() as u64 != psi {
        failures.push(format!(
            "psi {psi}, classes {}, orbits {}",
            classes.len(),
            orbits.len()
        ));
    }
    if n <= 24 {
        let id = BasicAut::identity(m);
        for s in &elems {
            if *s * id != *s || id * *s != *s || !(*s * s.inverse()).is_identity() {
                failures.push(format!("identity or inverse law at {s}"));
            }
            for t in &elems {
                let st = *s * *t;
                if n <= 12 && st.to_endo() != s.to_endo().compose(&t.to_endo())? {
                    failures.push(format!("{s} * {t} disagrees with composition"));
                }
                for r in &elems {
                    if st * *r != *s * (*t * *r) {
                        failures.push(format!("associativity at {s}, {t}, {r}"));
                    }
                }
            }
        }
    }
    let summary = format!(
        "n={n}: {} elements, {} classes, {positive} conjugate pairs",
        elems.len(),
        classes.len()
    );
    Ok((summary, failures))
}

/// Checks that the reduction map is a bijective homomorphism.
pub fn crt_at(r: Modulus, q: Modulus) -> Result<Vec<String>> {
    let m = Modulus::new(r.get() * q.get())?;
    let mut failures = Vec::new();
    let elems = basic::elements(m);
    let images: BTreeSet<(BasicAut, BasicAut)> = elems
        .iter()
        .map(|s| basic::crt_split(s, r, q))
        .collect::<Result<_>>()?;
    if images.len() != elems.len() || images.len() as u64 != r.get() * r.phi() * q.get() * q.phi() {
        failures.push("not a bijection".into());
    }
    for s in &elems {
        for t in &elems {
            let (a, b) = basic::crt_split(&(*s * *t), r, q)?;
            let (sa, sb) = basic::crt_split(s, r, q)?;
            let (ta, tb) = basic::crt_split(t, r, q)?;
            if a != sa * ta || b != sb * tb {
                failures.push(format!("not multiplicative at {s}, {t}"));
            }
        }
    }
    Ok(failures)
}

fn conjugacy_suite(max_n: u64) -> Result<Vec<Check>> {
    let mut rec = Recorder::new(Suite::Conjugacy);
    for m in moduli(max_n) {
        let (summary, failures) = conjugacy_at(m)?;
        rec.push(format!("n={}", m.get()), summary, failures);
    }
    for (r, q) in [(2u64, 3u64), (4, 3), (3, 5), (4, 5)] {
        if r * q > max_n {
            continue;
        }
        let failures = crt_at(Modulus::new(r)?, Modulus::new(q)?)?;
        rec.push(format!("crt n={}", r * q), format!("B(Z_{}) = B(Z_{r}) x B(Z_{q})", r * q), failures);
    }
    let mut failures = Vec::new();
    let mut pairs = 0;
    for r in 2..=max_n {
        for q in 2..=max_n / r {
            if r.gcd(&q) == 1 {
                pairs += 1;
                let (mr, mq, mrq) = (Modulus::new(r)?, Modulus::new(q)?, Modulus::new(r * q)?);
                if basic::psi(mrq) != basic::psi(mr) * basic::psi(mq) {
                    failures.push(format!("psi({}) != psi({r}) psi({q})", r * q));
                }
            }
        }
    }
    rec.push("psi multiplicative", format!("{pairs} coprime pairs"), failures);
    Ok(rec.checks)
}

fn z4(c: &[i64]) -> Poly {
    Poly::from_coeffs(Z4, c)
}

fn y() -> Poly {
    z4(&[0, 1, -1])
}

fn alpha(c: &[i64]) -> GAut4 {
    GAut4::alpha(z4(c)).expect("even coefficients")
}

fn beta(c: &[i64]) -> GAut4 {
    GAut4::beta(z4(c)).expect("even coefficients")
}

/// The subgroup fixtures with their expected catalog rings.
pub fn z4_fixtures() -> Result<Vec<(String, Vec<GAut4>, Z4Ring)>> {
    let two_y = y().scale(2);
    let mut out = vec![
        ("<alpha_2>".to_string(), vec![alpha(&[2])], Z4Ring::X2And2X),
        ("<alpha_2x>".to_string(), vec![alpha(&[0, 2])], Z4Ring::X2And2X),
        ("<alpha_2x+2>".to_string(), vec![alpha(&[2, 2])], Z4Ring::X2And2X),
        ("<beta_0>".to_string(), vec![beta(&[])], Z4Ring::YPlusXF(z4(&[]))),
        ("<beta_2>".to_string(), vec![beta(&[2])], Z4Ring::YPlusXF(z4(&[2]))),
        ("<theta>".to_string(), vec![beta(&[0, 2])], Z4Ring::Y2And2Y),
        (
            "<beta_2y>".to_string(),
            vec![GAut4::beta(two_y.clone())?],
            Z4Ring::YPlusXF(two_y),
        ),
        (
            "<alpha_2, beta_0>".to_string(),
            vec![alpha(&[2]), beta(&[])],
            Z4Ring::Y2And2Y,
        ),
    ];
    out.push(("pool(3)".to_string(), gz4::pool(3)?, Z4Ring::Y2And2Y));
    Ok(out)
}

fn spec_of(gens: &[GAut4]) -> Result<SubgroupSpec> {
    SubgroupSpec::new(Z4, gens.iter().map(GAut4::to_endo).collect())
}

fn fixedrings_suite() -> Result<Vec<Check>> {
    let mut rec = Recorder::new(Suite::FixedRings);
    let (d, w) = (8, 16);
    for (name, gens, expected) in z4_fixtures()? {
        let h = spec_of(&gens)?;
        let mut failures = Vec::new();
        let fixed = fixed::fixed_module(&h, d)?;
        let catalog = expected.catalog_module(d, w)?;
        if !fixed::modules_equal(&fixed, &catalog)? {
            failures.push(format!("fixed module differs from {expected}"));
        }
        match fixed::identify_z4(&h, d, w) {
            Ok(v) if v == expected => {}
            other => failures.push(format!("identify_z4 gave {other:?}")),
        }
        for b in fixed.basis() {
            for s in h.generators() {
                if s.apply(&b)? != b {
                    failures.push(format!("{b} not fixed by {s}"));
                }
            }
        }
        for dd in 0..d {
            if fixed.restrict(dd)? != fixed::fixed_module(&h, dd)? {
                failures.push(format!("restriction to degree {dd}"));
            }
        }
        let mut shuffled = h.generators().to_vec();
        shuffled.reverse();
        shuffled.push(shuffled[0].compose(&shuffled[shuffled.len() - 1])?);
        if fixed::fixed_module(&SubgroupSpec::new(Z4, shuffled)?, d)? != fixed {
            failures.push("basis depends on generator order".into());
        }
        let span = expected.catalog_module(d, 2 * d)?;
        let basis = span.basis();
        for a in &basis {
            for b in &basis {
                let p = a * b;
                if p.degree().unwrap_or(0) <= d && !span.contains(&p) {
                    failures.push(format!("span not closed under products at {a} * {b}"));
                }
            }
        }
        rec.push(
            name.clone(),
            format!("{name}: {} (D={d}, W={w}, {} elements)", expected.token(), fixed.cardinality()),
            failures,
        );
    }
    for (p, dd) in [(2u64, 8usize), (3, 12)] {
        let ok = fixed::samuel_check(p, dd)?;
        let failures = if ok { vec![] } else { vec![format!("p={p}, D={dd}")] };
        rec.push(
            format!("samuel p={p}"),
            format!("Z_{p}[x]^G = Z_{p}[(x^{p}-x)^{}] up to degree {dd}", p - 1),
            failures,
        );
    }
    let translations: Vec<BasicAut> = (0..4)
        .map(|a| BasicAut::new(1, a, Z4))
        .collect::<Result<_>>()?;
    let norm = fixed::norm_of_x(&translations)?;
    let wpoly = z4(&[0, 1, 1]);
    let expected = &(&wpoly * &wpoly) + &wpoly.scale(2);
    let failures = if norm == expected { vec![] } else { vec![format!("norm {norm}")] };
    rec.push("norm of x", format!("M = w^2 + 2w = {norm}"), failures);
    Ok(rec.checks)
}

fn pool_set(d: usize) -> Result<BTreeSet<GAut4>> {
    Ok(gz4::pool(d)?.into_iter().collect())
}

/// Group law, inverse and conjugation closed forms against composition of
/// the underlying endomorphisms, all pairs of the degree-`d` pool.
pub fn law_against_endos(d: usize) -> Result<(usize, Vec<String>)> {
    let pool = gz4::pool(d)?;
    let endos: Vec<Endo> = pool.iter().map(GAut4::to_endo).collect();
    let inverses: Vec<Endo> = endos.iter().map(Endo::invert).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for (i, s) in pool.iter().enumerate() {
        if s.inverse().to_endo() != inverses[i] {
            failures.push(format!("inverse of {s}"));
        }
        if GAut4::from_endo(&endos[i]).as_ref() != Some(s) {
            failures.push(format!("round trip of {s}"));
        }
        for (j, t) in pool.iter().enumerate() {
            let product = endos[i].compose(&endos[j])?;
            if (s * t).to_endo() != product {
                failures.push(format!("{s} * {t}"));
            }
            let generic = inverses[i].compose(&endos[j])?.compose(&endos[i])?;
            if t.conjugate_by(s).to_endo() != generic {
                failures.push(format!("{t} conjugated by {s}"));
            }
        }
    }
    Ok((pool.len() * pool.len(), failures))
}

/// Compares the closed-form conjugacy relation on the degree-`d` pool with
/// orbits under conjugators of degree `conj_d`.
pub fn conjugacy_partition(d: usize, conj_d: usize) -> Result<(usize, Vec<String>)> {
    let pool = gz4::pool(d)?;
    let mut failures = Vec::new();
    let mut classes = BTreeSet::new();
    for s in &pool {
        let orbit = gz4::pool_orbit(s, conj_d)?;
        classes.insert(orbit.iter().next().cloned());
        for t in &pool {
            if orbit.contains(t) != gz4::are_conjugate_g4(s, t) {
                failures.push(format!("{s} ~ {t}"));
            }
        }
    }
    Ok((classes.len(), failures))
}

/// Within the degree-`d` pool, basic elements with equal `u` that are
/// conjugate by a pool element are conjugate by a basic element.
pub fn basic_conjugacy_descends(d: usize) -> Result<(usize, Vec<String>)> {
    let basics = gz4::basic_elements();
    let pool = gz4::pool(d)?;
    let mut failures = Vec::new();
    let mut pairs = 0;
    for s in &basics {
        let sb = BasicAut::from_endo(&s.to_endo()).expect("basic");
        for t in &basics {
            let tb = BasicAut::from_endo(&t.to_endo()).expect("basic");
            if sb.u() != tb.u() {
                continue;
            }
            if pool.iter().any(|g| s.conjugate_by(g) == *t) {
                pairs += 1;
                let by_basic = basics.iter().any(|g| s.conjugate_by(g) == *t);
                if !by_basic || !basic::are_conjugate(&sb, &tb)? {
                    failures.push(format!("{s} ~ {t} only through non-basic conjugators"));
                }
            }
        }
    }
    Ok((pairs, failures))
}

/// `[σ]_B = [σ]_G ∩ B` for each basic `σ`, with `[σ]_G` both as the orbit
/// under the degree-`d` pool and by the closed-form relation.
pub fn basic_orbits_match(d: usize) -> Result<Vec<String>> {
    let basics = gz4::basic_elements();
    let bset: BTreeSet<GAut4> = basics.iter().cloned().collect();
    let mut failures = Vec::new();
    for s in &basics {
        let b_orbit: BTreeSet<GAut4> = basics.iter().map(|g| s.conjugate_by(g)).collect();
        let pool_orbit: BTreeSet<GAut4> = gz4::pool_orbit(s, d)?.intersection(&bset).cloned().collect();
        let formula: BTreeSet<GAut4> = basics
            .iter()
            .filter(|t| gz4::are_conjugate_g4(s, t))
            .cloned()
            .collect();
        if b_orbit != pool_orbit || b_orbit != formula {
            failures.push(format!("orbits of {s} differ"));
        }
    }
    Ok(failures)
}

fn stabilizer_checks() -> Result<Vec<String>> {
    let d = 3;
    let pool = pool_set(d)?;
    let alphas: BTreeSet<GAut4> = pool.iter().filter(|s| s.kind() == Kind::Alpha).cloned().collect();
    let mut failures = Vec::new();
    let mut expect = |name: String, ring: &[Poly], want: &BTreeSet<GAut4>| -> Result<()> {
        let got = gz4::stabilizer(ring, d)?;
        if got.elements() != want {
            failures.push(format!("{name}* has {} elements, expected {}", got.len(), want.len()));
        }
        Ok(())
    };
    expect("R[x]".into(), &Z4Ring::FullRing.generators(), &BTreeSet::from([GAut4::identity()]))?;
    expect("R[x^2,2x]".into(), &Z4Ring::X2And2X.generators(), &alphas)?;
    expect("R[y^2,2y]".into(), &Z4Ring::Y2And2Y.generators(), &pool)?;
    for f in pool.iter().filter(|s| s.kind() == Kind::Beta && gz4::is_prime_fixed(s.f())) {
        let ring = Z4Ring::YPlusXF(f.f().clone());
        let want: BTreeSet<GAut4> = gz4::closure(std::slice::from_ref(f)).elements().clone();
        expect(ring.to_string(), &ring.generators(), &want)?;
    }
    Ok(failures)
}

fn gz4_suite() -> Result<Vec<Check>> {
    let mut rec = Recorder::new(Suite::Gz4);
    for d in [2usize, 5] {
        let (pairs, failures) = law_against_endos(d)?;
        rec.push(
            format!("law d={d}"),
            format!("pool degree {d}: {pairs} pairs against composition"),
            failures,
        );
    }
    for d in [1usize, 2, 3] {
        let pool = gz4::pool(d)?;
        let mut failures = Vec::new();
        for s in &pool {
            let commutes = pool.iter().all(|t| s * t == t * s);
            if commutes != s.is_central() {
                failures.push(format!("center at {s}"));
            }
        }
        rec.push(format!("center d={d}"), format!("pool degree {d}: center is A_0"), failures);
    }
    for d in [2usize, 3] {
        let (classes, failures) = conjugacy_partition(d, d + 1)?;
        rec.push(
            format!("classes d={d}"),
            format!("pool degree {d}: {classes} classes, conjugators of degree {}", d + 1),
            failures,
        );
    }
    let mut failures = Vec::new();
    for (name, gens, _) in z4_fixtures()? {
        let h = gz4::closure(&gens);
        if !h.has_beta() {
            continue;
        }
        let a = h.alpha_part();
        if 2 * a.len() != h.len() {
            failures.push(format!("{name}: index of A is not 2"));
        }
        for s in h.elements() {
            for t in &a {
                if !a.contains(&t.conjugate_by(s)) {
                    failures.push(format!("{name}: A not normal"));
                }
            }
        }
    }
    rec.push("A normal", "A has index 2 in fixtures with a beta".into(), failures);

    rec.push("stabilizers", "R[x]*, R[x^2,2x]*, R[y^2,2y]*, R[y+xf]* at pool degree 3".into(), stabilizer_checks()?);

    for d in [2usize, 3] {
        rec.push(
            format!("basic orbits d={d}"),
            format!("[s]_B = [s]_G meet B for the 8 basic elements, pool degree {d}"),
            basic_orbits_match(d)?,
        );
    }

    let (pairs, failures) = basic_conjugacy_descends(2)?;
    rec.push(
        "basic conjugacy",
        format!("{pairs} pool-conjugate basic pairs with equal u"),
        failures,
    );

    let basics: BTreeSet<GAut4> = gz4::basic_elements().into_iter().collect();
    let mut failures = Vec::new();
    let pool = gz4::pool(2)?;
    for sigma in &pool {
        let z = sigma.to_endo().image().clone();
        let mut bz = Vec::new();
        for tau in &pool {
            let tz = tau.to_endo().apply(&z)?;
            let shaped = [1u64, 3].iter().any(|&u| {
                let rest = &tz - &z.scale(u);
                rest.degree().unwrap_or(0) == 0
            });
            if shaped {
                bz.push(tau);
            }
        }
        let conj: BTreeSet<GAut4> = bz.iter().map(|tau| tau.conjugate_by(sigma)).collect();
        if conj != basics {
            failures.push(format!("B_z for z = {z}"));
        }
    }
    rec.push("B_z conjugates", "sigma^-1 B_z sigma = B_x over pool degree 2".into(), failures);

    let mut failures = Vec::new();
    for s in gz4::pool(3)? {
        let order = s.to_endo().order(None)?;
        let expected = match s.kind() {
            Kind::Alpha if s.is_identity() => 1,
            Kind::Alpha => 2,
            Kind::Beta if gz4::is_prime_fixed(s.f()) => 2,
            Kind::Beta => 4,
        };
        if order != expected || s.order() != order {
            failures.push(format!("order of {s} is {order}"));
        }
    }
    rec.push("orders", "orders of alpha and beta at pool degree 3".into(), failures);

    let mut failures = Vec::new();
    for s in gz4::pool(3)? {
        let union = gz4::in_basic_union(&s, 3)?;
        let formula = gz4::basic_elements().iter().any(|b| gz4::are_conjugate_g4(&s, b));
        if union != formula {
            failures.push(format!("in_basic_union({s})"));
        }
    }
    rec.push("basic union", "membership matches closed-form conjugacy at pool degree 3".into(), failures);

    let w = endo::nonnormality_witness(Z4)?;
    let failures = if GAut4::from_endo(&w.conjugate).is_some_and(|c| !c.is_basic()) {
        vec![]
    } else {
        vec![format!("conjugate {}", w.conjugate)]
    };
    rec.push("nonnormal", format!("x -> x+1 conjugates to {}", w.conjugate), failures);
    Ok(rec.checks)
}
