//! Monomials and monomial ideals over a named variable set.
//!
//! A [`MonomialIdeal`] always stores its unique minimal generating set in a
//! canonical order, so ideal equality is plain structural equality.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense exponent vector, indexed like the owning ring's variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(alloc::vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    /// Squarefree product of the listed variable indices.
    pub fn squarefree(nvars: usize, vars: &[usize]) -> Monomial {
        let mut m = Self::one(nvars);
        for &v in vars {
            m.0[v] += 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Indices of variables dividing the monomial.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `self / gcd(self, other)`.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, vars }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<Monomial>,
}

/// Summary flags used by linear-resolution checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealStats {
    pub is_squarefree: bool,
    pub max_gen_degree: u32,
    pub equigenerated: bool,
}

fn check_vars(vars: &[String]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(Error::Ideal(format!("duplicate variable {v:?}")));
        }
    }
    Ok(())
}

impl MonomialIdeal {
    /// Minimalizes `gens` (dense vectors over `vars`).
    pub fn new(vars: Vec<String>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
        check_vars(&vars)?;
        if let Some(g) = gens.iter().find(|g| g.nvars() != vars.len()) {
            return Err(Error::Ideal(format!(
                "generator has {} exponents for a ring with {} variables",
                g.nvars(),
                vars.len()
            )));
        }
        Ok(MonomialIdeal {
            gens: minimalize(gens),
            vars,
        })
    }

    /// Builds from sparse `variable -> exponent` maps; zero exponents are
    /// ignored and unknown variables are an error.
    pub fn from_named(vars: Vec<String>, gens: &[BTreeMap<String, u32>]) -> Result<MonomialIdeal> {
        check_vars(&vars)?;
        let mut dense = Vec::with_capacity(gens.len());
        for g in gens {
            let mut m = Monomial::one(vars.len());
            for (name, &e) in g {
                let i = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Ideal(format!("variable {name:?} not in the ring")))?;
                m.0[i] = e;
            }
            dense.push(m);
        }
        Self::new(vars, dense)
    }

    pub fn zero(vars: Vec<String>) -> Result<MonomialIdeal> {
        Self::new(vars, Vec::new())
    }

    pub fn unit(vars: Vec<String>) -> Result<MonomialIdeal> {
        let n = vars.len();
        Self::new(vars, alloc::vec![Monomial::one(n)])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    /// Generators as `variable -> exponent` maps.
    pub fn named_gens(&self) -> Vec<BTreeMap<String, u32>> {
        self.gens
            .iter()
            .map(|g| {
                g.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (self.vars[i].clone(), e))
                    .collect()
            })
            .collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Monomial over this ring from `(variable, exponent)` pairs.
    pub fn monomial(&self, parts: &[(&str, u32)]) -> Result<Monomial> {
        let mut m = Monomial::one(self.nvars());
        for &(name, e) in parts {
            let i = self
                .var_index(name)
                .ok_or_else(|| Error::Ideal(format!("variable {name:?} not in the ring")))?;
            m.0[i] += e;
        }
        Ok(m)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_subideal_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.gens.iter().all(|g| other.contains(g)))
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::Ideal("ideals live in different rings".into()));
        }
        Ok(())
    }

    /// The same ideal in a ring with more variables. `vars` must contain
    /// every current variable.
    pub fn extend_ring(&self, vars: &[String]) -> Result<MonomialIdeal> {
        let mut map = Vec::with_capacity(self.nvars());
        for v in &self.vars {
            map.push(
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::Ideal(format!("variable {v:?} missing from new ring")))?,
            );
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut m = Monomial::one(vars.len());
                for (i, &e) in g.0.iter().enumerate() {
                    m.0[map[i]] = e;
                }
                m
            })
            .collect();
        Self::new(vars.to_vec(), gens)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Self::new(self.vars.clone(), gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        Self::new(self.vars.clone(), gens)
    }

    /// `(I : m)`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        if m.nvars() != self.nvars() {
            return Err(Error::Ideal("colon monomial from a different ring".into()));
        }
        let gens = self.gens.iter().map(|g| g.quotient_by_gcd(m)).collect();
        Self::new(self.vars.clone(), gens)
    }

    pub fn stats(&self) -> IdealStats {
        let degrees: Vec<u32> = self.gens.iter().map(Monomial::degree).collect();
        IdealStats {
            is_squarefree: self.gens.iter().all(Monomial::is_squarefree),
            max_gen_degree: degrees.iter().copied().max().unwrap_or(0),
            equigenerated: degrees.windows(2).all(|w| w[0] == w[1]),
        }
    }

    pub fn polarize(&self) -> Polarization {
        Polarization::of(self)
    }

    /// Largest exponent of each variable among the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut max = alloc::vec![0; self.nvars()];
        for g in &self.gens {
            for (m, &e) in max.iter_mut().zip(&g.0) {
                *m = (*m).max(e);
            }
        }
        max
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display(&self.vars))?;
        }
        f.write_str(")")
    }
}

/// Keeps the divisibility-minimal monomials, deduplicated, in canonical order
/// (by degree, then larger exponents on earlier variables first).
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|g| (g.degree(), Reverse(g.clone())));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // sorted by degree, so only earlier entries can divide g
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// Edge ideal `I(G)` over the ring `V(G)`.
pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    let n = g.vertex_count();
    let gens = g
        .edges()
        .iter()
        .map(|&(a, b)| Monomial::squarefree(n, &[a, b]))
        .collect();
    MonomialIdeal::new(g.names().to_vec(), gens).expect("graph vertex names are distinct")
}

/// Standard polarization together with the variable correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub source: MonomialIdeal,
    pub target: MonomialIdeal,
    /// For each target variable: `(source variable index, copy number)`,
    /// copies counted from 1; copy 1 is the source variable itself.
    pub copies: Vec<(usize, u32)>,
}

impl Polarization {
    fn of(source: &MonomialIdeal) -> Polarization {
        let max = source.max_exponents();
        let taken: Vec<&String> = source.vars.iter().collect();
        let mut vars = Vec::new();
        let mut copies = Vec::new();
        let mut first_slot = Vec::with_capacity(source.nvars());
        for (i, name) in source.vars.iter().enumerate() {
            first_slot.push(vars.len());
            vars.push(name.clone());
            copies.push((i, 1));
            for k in 2..=max[i] {
                let mut fresh = format!("{name}⟨{k}⟩");
                while taken.contains(&&fresh) || vars.contains(&fresh) {
                    fresh.push('\'');
                }
                vars.push(fresh);
                copies.push((i, k));
            }
        }
        let gens = source
            .gens
            .iter()
            .map(|g| {
                let mut m = Monomial::one(vars.len());
                for (i, &e) in g.0.iter().enumerate() {
                    for k in 0..e as usize {
                        m.0[first_slot[i] + k] = 1;
                    }
                }
                m
            })
            .collect();
        Polarization {
            source: source.clone(),
            target: MonomialIdeal::new(vars, gens).expect("fresh names are distinct"),
            copies,
        }
    }

    /// Substitutes every copy of `x` by `x`, mapping target generators back to
    /// monomials of the source ring.
    pub fn depolarize(&self) -> Vec<Monomial> {
        self.target
            .gens
            .iter()
            .map(|g| {
                let mut m = Monomial::one(self.source.nvars());
                for (t, &e) in g.0.iter().enumerate() {
                    m.0[self.copies[t].0] += e;
                }
                m
            })
            .collect()
    }

    /// Name of copy `k` of source variable `var`.
    pub fn copy_name(&self, var: &str, k: u32) -> Option<&str> {
        let i = self.source.var_index(var)?;
        self.copies
            .iter()
            .position(|&c| c == (i, k))
            .map(|t| self.target.vars[t].as_str())
    }
}

/// Convenience for tests and golden rows: ring variables `names`.
pub fn ring(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
