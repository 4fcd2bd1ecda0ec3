//! Multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::rational::{dot, Rat, QVec};

/// Polynomial in `nvars` variables; terms map exponent vectors to nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, Rat::one());
        p
    }

    /// c + <lin, x> as a polynomial.
    pub fn affine(c: &Rat, lin: &[Rat]) -> Self {
        let n = lin.len();
        let mut p = Poly::constant(n, c.clone());
        for (i, a) in lin.iter().enumerate() {
            if !a.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.add_term(e, a.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, t: &Rat) -> Poly {
        if t.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * t)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.nvars);
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &x[i];
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes variable i by the affine expression subs[i] = (c, lin) in
    /// `m` new variables; returns a polynomial in `m` variables.
    pub fn compose_affine(&self, subs: &[(Rat, QVec)]) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map_or(0, |(_, l)| l.len());
        assert!(subs.iter().all(|(_, l)| l.len() == m));
        let affines: Vec<Poly> = subs.iter().map(|(c, l)| Poly::affine(c, l)).collect();
        // Power cache per variable, filled on demand.
        let mut powers: Vec<Vec<Poly>> = affines.iter().map(|a| vec![Poly::one(m), a.clone()]).collect();
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&affines[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluates on an affine parameterization x = base + D t and returns the
    /// polynomial in the parameters t (columns of `dirs` are the directions).
    pub fn pull_back(&self, base: &[Rat], dirs: &[QVec]) -> Poly {
        assert_eq!(base.len(), self.nvars);
        let subs: Vec<(Rat, QVec)> = (0..self.nvars)
            .map(|i| {
                let lin: QVec = dirs.iter().map(|d| d[i].clone()).collect();
                (base[i].clone(), lin)
            })
            .collect();
        self.compose_affine(&subs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("q{i}") } else { format!("q{i}^{k}") })
                .collect();
            let cs = crate::rational::rat_str(c);
            let piece = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono.join("*")
            } else if (-c.clone()).is_one() {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", cs, mono.join("*"))
            };
            if first {
                write!(f, "{piece}")?;
                first = false;
            } else if let Some(stripped) = piece.strip_prefix('-') {
                write!(f, " - {stripped}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}

/// Linear form <v, x> plus constant, kept separate from `Poly` where only
/// affine data is involved.
pub fn eval_affine(c: &Rat, lin: &[Rat], x: &[Rat]) -> Rat {
    c + dot(lin, x)
}
