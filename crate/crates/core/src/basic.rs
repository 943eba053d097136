//! The group `B(Z_n)` of basic automorphisms `x ↦ ux + a`.
//!
//! Pairs multiply as `(u,a)·(v,b) = (uv, va + b)`, which is composition
//! `s ∘ t` of the corresponding endomorphisms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::endo::Endo;
use crate::error::{guard, Error, Result};
use crate::poly::Poly;
use crate::residues::{gcd_all, solve_linear, Modulus, Residue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicAut {
    u: u64,
    a: u64,
    modulus: Modulus,
}

impl BasicAut {
    pub fn new(u: i64, a: i64, modulus: Modulus) -> Result<Self> {
        let u = modulus.reduce(u);
        if !modulus.is_unit(u) {
            return Err(Error::NotAUnit {
                value: u,
                modulus: modulus.get(),
            });
        }
        Ok(BasicAut {
            u,
            a: modulus.reduce(a),
            modulus,
        })
    }

    pub fn identity(modulus: Modulus) -> Self {
        BasicAut {
            u: 1,
            a: 0,
            modulus,
        }
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_identity(&self) -> bool {
        self.u == 1 && self.a == 0
    }

    pub fn checked_mul(&self, t: &BasicAut) -> Result<BasicAut> {
        if self.modulus != t.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), t.modulus.get()));
        }
        let m = self.modulus;
        Ok(BasicAut {
            u: m.mul(self.u, t.u),
            a: m.add(m.mul(t.u, self.a), t.a),
            modulus: m,
        })
    }

    pub fn inverse(&self) -> BasicAut {
        let m = self.modulus;
        let w = m.inverse(self.u).expect("u is a unit");
        BasicAut {
            u: w,
            a: m.neg(m.mul(w, self.a)),
            modulus: m,
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &BasicAut) -> Result<BasicAut> {
        g.inverse().checked_mul(self)?.checked_mul(g)
    }

    /// `gcd(u - 1, a, n)`, the complete conjugacy invariant within a `u`-stratum.
    pub fn class_invariant(&self) -> u64 {
        gcd_all(&[self.u as i64 - 1, self.a as i64], self.modulus)
    }

    /// The representative `(u, d)` with `d = gcd(u - 1, a, n)`; when `d = n`
    /// the stored translation is `0`.
    pub fn canonical_rep(&self) -> BasicAut {
        BasicAut {
            u: self.u,
            a: self.modulus.reduce_u(self.class_invariant()),
            modulus: self.modulus,
        }
    }

    /// Translation printed in `[1, n]`, with `n` standing for `0`.
    pub fn display_a(&self) -> u64 {
        if self.a == 0 {
            self.modulus.get()
        } else {
            self.a
        }
    }

    pub fn to_endo(&self) -> Endo {
        Endo::new(Poly::from_u64s(self.modulus, &[self.a, self.u]))
    }

    /// `None` unless the endomorphism has the shape `x ↦ ux + a` with `u` a unit.
    pub fn from_endo(s: &Endo) -> Option<BasicAut> {
        let img = s.image();
        if img.degree().unwrap_or(0) > 1 || !s.modulus().is_unit(img.coeff(1)) {
            return None;
        }
        Some(BasicAut {
            u: img.coeff(1),
            a: img.coeff(0),
            modulus: s.modulus(),
        })
    }
}

impl Mul for BasicAut {
    type Output = BasicAut;

    fn mul(self, rhs: BasicAut) -> BasicAut {
        self.checked_mul(&rhs).expect("modulus mismatch")
    }
}

impl fmt::Display for BasicAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x+{}", self.u, self.a)
    }
}

fn same_modulus(s: &BasicAut, t: &BasicAut) -> Result<()> {
    if s.modulus != t.modulus {
        return Err(Error::ModulusMismatch(s.modulus.get(), t.modulus.get()));
    }
    Ok(())
}

pub fn are_conjugate(s: &BasicAut, t: &BasicAut) -> Result<bool> {
    same_modulus(s, t)?;
    Ok(s.u == t.u && s.class_invariant() == t.class_invariant())
}

/// The first `g = (w, c)` with `g⁻¹ s g = t`, scanning units `w` upward
/// and taking the least `c` solving `(u - 1) c = w a - b`.
pub fn conjugacy_witness(s: &BasicAut, t: &BasicAut) -> Result<Option<BasicAut>> {
    if !are_conjugate(s, t)? {
        return Ok(None);
    }
    let m = s.modulus;
    let lhs = Residue::from_u64(m.sub(s.u, 1), m);
    for w in m.units() {
        let rhs = Residue::from_u64(m.sub(m.mul(w, s.a), t.a), m);
        if let Some(c) = solve_linear(lhs, rhs)?.first() {
            let g = BasicAut {
                u: w,
                a: c.value(),
                modulus: m,
            };
            if s.conjugate_by(&g)? != *t {
                return Err(Error::InternalCheckFailed(format!(
                    "witness {g} does not conjugate {s} to {t}"
                )));
            }
            return Ok(Some(g));
        }
    }
    Err(Error::InternalCheckFailed(format!(
        "no witness found for conjugate pair {s}, {t}"
    )))
}

/// All `n·φ(n)` elements, ordered by `(u, a)`.
pub fn elements(n: Modulus) -> Vec<BasicAut> {
    n.units()
        .flat_map(|u| (0..n.get()).map(move |a| BasicAut { u, a, modulus: n }))
        .collect()
}

fn group_order(n: Modulus) -> u128 {
    n.get() as u128 * n.phi() as u128
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub rep: BasicAut,
    pub size: u64,
}

/// Classes keyed by canonical representative, ordered by `(u, a)` with
/// stored `a` in `[0, n)`; the identity class comes first.
pub fn enumerate_classes(n: Modulus) -> Result<Vec<ConjClass>> {
    guard(group_order(n))?;
    let mut sizes: BTreeMap<BasicAut, u64> = BTreeMap::new();
    for s in elements(n) {
        *sizes.entry(s.canonical_rep()).or_default() += 1;
    }
    Ok(sizes
        .into_iter()
        .map(|(rep, size)| ConjClass { rep, size })
        .collect())
}

/// Conjugation orbit of `s` computed by running over the whole group.
pub fn orbit_bruteforce(s: &BasicAut) -> Result<BTreeSet<BasicAut>> {
    guard(group_order(s.modulus))?;
    elements(s.modulus)
        .iter()
        .map(|g| s.conjugate_by(g))
        .collect()
}

/// Orbits of the conjugation action, each sorted, in order of least element.
/// The work is one full conjugation sweep per orbit.
pub fn orbits_bruteforce(n: Modulus) -> Result<Vec<BTreeSet<BasicAut>>> {
    guard(group_order(n).saturating_mul(psi(n) as u128))?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in elements(n) {
        if seen.contains(&s) {
            continue;
        }
        let orbit = orbit_bruteforce(&s)?;
        seen.extend(orbit.iter().copied());
        out.push(orbit);
    }
    Ok(out)
}

pub fn psi_prime_power(p: u64, e: u32) -> u64 {
    (p.pow(e - 1) - 1) / (p - 1) + p.pow(e)
}

/// Number of conjugacy classes of `B(Z_n)`.
pub fn psi(n: Modulus) -> u64 {
    n.factorize()
        .into_iter()
        .map(|(p, e)| psi_prime_power(p, e))
        .product()
}

pub fn psi_bruteforce(n: Modulus) -> Result<u64> {
    Ok(orbits_bruteforce(n)?.len() as u64)
}

/// Reduction `B(Z_{rq}) → B(Z_r) × B(Z_q)` for coprime `r`, `q`.
pub fn crt_split(s: &BasicAut, r: Modulus, q: Modulus) -> Result<(BasicAut, BasicAut)> {
    let n = s.modulus.get();
    if r.get().checked_mul(q.get()) != Some(n) || r.get().gcd(&q.get()) != 1 {
        return Err(Error::BadFactorization {
            n,
            r: r.get(),
            q: q.get(),
        });
    }
    let part = |m: Modulus| BasicAut {
        u: m.reduce_u(s.u),
        a: m.reduce_u(s.a),
        modulus: m,
    };
    Ok((part(r), part(q)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub u: u64,
    pub a: u64,
    pub size: u64,
}

/// Wire form of a class table; `a` is printed in `[1, n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    pub modulus: u64,
    pub group_order: u64,
    pub count: usize,
    pub classes: Vec<ClassRow>,
}

impl ClassTable {
    pub fn new(n: Modulus) -> Result<Self> {
        let classes = enumerate_classes(n)?;
        Ok(ClassTable {
            modulus: n.get(),
            group_order: n.get() * n.phi(),
            count: classes.len(),
            classes: classes
                .iter()
                .map(|c| ClassRow {
                    u: c.rep.u,
                    a: c.rep.display_a(),
                    size: c.size,
                })
                .collect(),
        })
    }

    pub fn to_classes(&self) -> Result<Vec<ConjClass>> {
        let n = Modulus::new(self.modulus)?;
        self.classes
            .iter()
            .map(|row| {
                Ok(ConjClass {
                    rep: BasicAut::new(row.u as i64, row.a as i64, n)?,
                    size: row.size,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn b(u: i64, a: i64, n: u64) -> BasicAut {
        BasicAut::new(u, a, m(n)).unwrap()
    }

    #[test]
    fn new_rejects_non_units() {
        assert_eq!(
            BasicAut::new(3, 1, m(9)),
            Err(Error::NotAUnit { value: 3, modulus: 9 })
        );
        assert_eq!(b(-1, 10, 9), b(8, 1, 9));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(b(2, 1, 9) * b(1, 3, 9), b(2, 4, 9));
        let s = b(2, 1, 9);
        assert_eq!(s * BasicAut::identity(m(9)), s);
        assert_eq!(
            b(2, 1, 9).checked_mul(&b(1, 1, 4)),
            Err(Error::ModulusMismatch(9, 4))
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(b(2, 1, 9).inverse(), b(5, 4, 9));
        assert!((b(2, 1, 9) * b(5, 4, 9)).is_identity());
        assert_eq!(b(1, 3, 9).inverse(), b(1, -3, 9));
        assert!(BasicAut::identity(m(9)).inverse().is_identity());
    }

    #[test]
    fn conjugacy_examples() {
        assert!(are_conjugate(&b(4, 3, 9), &b(4, 6, 9)).unwrap());
        assert!(!are_conjugate(&b(1, 3, 9), &b(1, 1, 9)).unwrap());
        assert!(!are_conjugate(&b(2, 1, 9), &b(3 + 1, 1, 9)).unwrap());
        assert!(!are_conjugate(&b(2, 1, 9), &b(5, 1, 9)).unwrap());
    }

    #[test]
    fn witness_examples() {
        let (s, t) = (b(2, 1, 9), b(2, 5, 9));
        let g = conjugacy_witness(&s, &t).unwrap().unwrap();
        assert_eq!(g, b(1, 5, 9));
        assert_eq!(s.conjugate_by(&g).unwrap(), t);
        // the other witness (5, 0) also satisfies 5·1 = 1·0 + 5
        assert_eq!(s.conjugate_by(&b(5, 0, 9)).unwrap(), t);

        assert!(conjugacy_witness(&s, &s).unwrap().unwrap().is_identity());
        assert_eq!(conjugacy_witness(&b(1, 3, 9), &b(1, 1, 9)).unwrap(), None);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(b(4, 5, 9).canonical_rep(), b(4, 1, 9));
        let id = b(1, 0, 9).canonical_rep();
        assert_eq!((id.u(), id.display_a()), (1, 9));
        assert_eq!(b(4, 6, 9).canonical_rep(), b(4, 3, 9));
        assert_eq!(b(4, 6, 9).canonical_rep().to_string(), "4*x+3");
    }

    #[test]
    fn z9_classes() {
        let classes = enumerate_classes(m(9)).unwrap();
        let got: Vec<(u64, u64, u64)> = classes
            .iter()
            .map(|c| (c.rep.u(), c.rep.display_a(), c.size))
            .collect();
        let expected = vec![
            (1, 9, 1),
            (1, 1, 6),
            (1, 3, 2),
            (2, 1, 9),
            (4, 1, 6),
            (4, 3, 3),
            (5, 1, 9),
            (7, 1, 6),
            (7, 3, 3),
            (8, 1, 9),
        ];
        assert_eq!(got, expected);
        assert_eq!(got.iter().map(|c| c.2).sum::<u64>(), 54);
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(enumerate_classes(m(2)).unwrap().len(), 2);
        assert_eq!(enumerate_classes(m(4)).unwrap().len(), 5);
        assert_eq!(psi(m(9)), 10);
        assert_eq!(psi(m(12)), 15);
        for p in [2, 3, 5, 7] {
            assert_eq!(psi(m(p)), p);
            assert_eq!(psi_bruteforce(m(p)).unwrap(), p);
        }
        assert_eq!(psi_bruteforce(m(12)).unwrap(), 15);
    }

    #[test]
    fn crt_examples() {
        let (x, y) = crt_split(&b(7, 5, 12), m(4), m(3)).unwrap();
        assert_eq!((x, y), (b(3, 1, 4), b(1, 2, 3)));
        let (x, y) = crt_split(&BasicAut::identity(m(12)), m(4), m(3)).unwrap();
        assert!(x.is_identity() && y.is_identity());
        assert_eq!(
            crt_split(&b(1, 1, 12), m(2), m(6)),
            Err(Error::BadFactorization { n: 12, r: 2, q: 6 })
        );
    }

    #[test]
    fn class_table_round_trip() {
        let t = ClassTable::new(m(9)).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.starts_with(
            r#"{"modulus":9,"group_order":54,"count":10,"classes":[{"u":1,"a":9,"size":1},"#
        ));
        let back: ClassTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let classes = back.to_classes().unwrap();
        assert_eq!(classes, enumerate_classes(m(9)).unwrap());
    }
}
