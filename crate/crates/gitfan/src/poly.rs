//! Sparse multivariate polynomials over the rationals, graded by total
//! degree. Variables are the coordinates of the torus character lattice;
//! monomial order is lexicographic on exponent vectors.

use crate::linalg::{Int, Rat};
use crate::polycone::LatVec;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyElement {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl PolyElement {
    pub fn zero(nvars: usize) -> Self {
        PolyElement { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = PolyElement::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut p = PolyElement::zero(nvars);
        p.terms.insert(exp, Rat::one());
        p
    }

    /// The linear form `sum v_i * t_i`.
    pub fn linear_form(v: &LatVec) -> Self {
        let mut p = PolyElement::zero(v.len());
        for (i, c) in v.0.iter().enumerate() {
            if !c.is_zero() {
                let mut exp = vec![0; v.len()];
                exp[i] = 1;
                p.terms.insert(exp, Rat::from_integer(c.clone()));
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; zero polynomial reports degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> PolyElement {
        let mut p = PolyElement::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p
    }

    fn insert(&mut self, exp: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &PolyElement) -> PolyElement {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyElement) -> PolyElement {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> PolyElement {
        if c.is_zero() {
            return PolyElement::zero(self.nvars);
        }
        PolyElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &PolyElement) -> PolyElement {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = PolyElement::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exp, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> PolyElement {
        let mut base = self.clone();
        let mut out = PolyElement::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn mul_monomial(&self, exp: &[u32]) -> PolyElement {
        PolyElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Apply a permutation of the variables: variable `i` is sent to
    /// variable `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> PolyElement {
        debug_assert_eq!(perm.len(), self.nvars);
        let mut out = PolyElement::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut exp = vec![0; self.nvars];
            for (i, &p) in perm.iter().enumerate() {
                exp[p] = e[i];
            }
            out.insert(exp, c.clone());
        }
        out
    }

    fn leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division: `Some(q)` with `self = q * divisor` when the division
    /// leaves no remainder, `None` otherwise.
    pub fn div_exact(&self, divisor: &PolyElement) -> Option<PolyElement> {
        debug_assert_eq!(self.nvars, divisor.nvars);
        let (dexp, dcoef) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = PolyElement::zero(self.nvars);
        while let Some((lexp, lcoef)) = rem.leading() {
            let mut qexp = vec![0u32; self.nvars];
            for i in 0..self.nvars {
                if lexp[i] < dexp[i] {
                    return None;
                }
                qexp[i] = lexp[i] - dexp[i];
            }
            let qcoef = lcoef / dcoef;
            let step = divisor.mul_monomial(&qexp).scale(&qcoef);
            quot.insert(qexp, qcoef);
            rem = rem.sub(&step);
        }
        Some(quot)
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
            }
            s += m;
        }
        s
    }

    /// Leading-coefficient-normalized copy: scaled so the coefficients are
    /// coprime integers and the leading coefficient is positive.
    pub fn normalized(&self) -> PolyElement {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<Rat> = self.terms.values().cloned().collect();
        let prim = crate::linalg::primitive(&coeffs);
        let lead_idx = coeffs.len() - 1;
        let flip = prim[lead_idx].is_negative();
        let mut out = PolyElement::zero(self.nvars);
        for ((e, _), v) in self.terms.iter().zip(prim) {
            out.terms.insert(e.clone(), Rat::from_integer(if flip { -v } else { v }));
        }
        out
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let ac = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            if !ac.is_one() || is_const {
                write!(f, "{ac}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = false;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if sep {
                    write!(f, "*")?;
                }
                sep = true;
                write!(f, "t{}", i + 1)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Elementary symmetric polynomial `e_k` in the variables `vars` (indices
/// into an ambient polynomial ring with `nvars` variables).
pub fn elementary_symmetric(nvars: usize, vars: &[usize], k: usize) -> PolyElement {
    // Row k of the Pascal-style recursion e_k(x_1..x_m) over growing m.
    let mut e: Vec<PolyElement> = (0..=k)
        .map(|j| if j == 0 { PolyElement::one(nvars) } else { PolyElement::zero(nvars) })
        .collect();
    for &v in vars {
        let x = PolyElement::variable(nvars, v);
        for j in (1..=k).rev() {
            let bump = e[j - 1].mul(&x);
            e[j] = e[j].add(&bump);
        }
    }
    e.pop().unwrap()
}

/// Complete homogeneous symmetric polynomial `h_k` in the given variables.
pub fn complete_homogeneous(nvars: usize, vars: &[usize], k: u32) -> PolyElement {
    let mut out = PolyElement::zero(nvars);
    let mut stack: Vec<(usize, u32, Vec<u32>)> = vec![(0, k, vec![0; nvars])];
    while let Some((pos, left, exp)) = stack.pop() {
        if pos == vars.len() {
            if left == 0 {
                out.insert(exp, Rat::one());
            }
            continue;
        }
        if pos + 1 == vars.len() {
            let mut e = exp.clone();
            e[vars[pos]] += left;
            stack.push((pos + 1, 0, e));
            continue;
        }
        for take in 0..=left {
            let mut e = exp.clone();
            e[vars[pos]] += take;
            stack.push((pos + 1, left - take, e));
        }
    }
    out
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill(&mut out, &mut cur, 0, d);
    fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for take in 0..=left {
            cur[pos] = take;
            fill(out, cur, pos + 1, left - take);
        }
        cur[pos] = 0;
    }
    out.sort();
    out
}

pub fn int_rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}
