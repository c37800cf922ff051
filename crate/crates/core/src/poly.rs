//! Multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in descending graded reverse lexicographic order
//! over the full variable list of the ambient ring, with no zero
//! coefficients ever stored. Values are immutable: every operation builds a
//! new polynomial. A bidegree (degree in the base block, degree in the
//! fiber block) is cached at construction when the polynomial is
//! bihomogeneous, which the blow-up pipeline uses as a cheap sanity signal.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::ring::{BlockRole, Ring, RingRc};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

#[derive(Clone)]
pub struct Polynomial {
    ring: RingRc,
    terms: Vec<(Monomial, Scalar)>,
    bidegree: Option<(u32, u32)>,
}

impl Polynomial {
    pub fn zero(ring: &RingRc) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
            bidegree: None,
        }
    }

    pub fn one(ring: &RingRc) -> Self {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &RingRc, c: Scalar) -> Self {
        if ring.field().is_zero(&c) {
            return Polynomial::zero(ring);
        }
        Polynomial::from_terms(ring, vec![(Monomial::one(), c)])
    }

    pub fn var(ring: &RingRc, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Polynomial::from_terms(ring, vec![(Monomial::var(i), ring.field().one())])
    }

    pub fn var_named(ring: &RingRc, name: &str) -> Result<Self> {
        Ok(Polynomial::var(ring, ring.var_index(name)?))
    }

    /// Build from arbitrary (monomial, coefficient) pairs; duplicates are
    /// combined and zeros dropped.
    pub fn from_terms(ring: &RingRc, raw: Vec<(Monomial, Scalar)>) -> Self {
        let field = *ring.field();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(raw.len());
        for (m, c) in raw {
            match acc.get_mut(&m) {
                Some(existing) => *existing = field.add(existing, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        let nv = ring.nvars();
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0, nv));
        let bidegree = compute_bidegree(ring, &terms);
        Polynomial {
            ring: ring.clone(),
            terms,
            bidegree,
        }
    }

    pub fn ring(&self) -> &RingRc {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_masked(&self, mask: u32) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree_masked(mask)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// `(base degree, fiber degree)` when bihomogeneous with no auxiliary
    /// variables, cached at construction.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        self.bidegree
    }

    /// Coefficient of an exact monomial (zero scalar if absent).
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        for (tm, c) in &self.terms {
            if tm == m {
                return c.clone();
            }
        }
        self.ring.field().zero()
    }

    /// Leading term under a given order.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        let nv = self.ring.nvars();
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0, nv))
            .map(|(m, c)| (m, c))
    }

    fn check_same_ring(&self, other: &Polynomial, what: &str) -> Result<()> {
        if !Ring::same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch(format!(
                "{what} between different ambient rings"
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other, "addition")?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other, "subtraction")?;
        Ok(self.merge(other, true))
    }

    /// Sorted merge; both inputs share the storage order.
    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let field = *self.ring.field();
        let nv = self.ring.nvars();
        let ord = MonomialOrder::Grevlex;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ord.cmp(ma, mb, nv) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { field.neg(cb) } else { cb.clone() };
                    out.push((*mb, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(ca, cb)
                    } else {
                        field.add(ca, cb)
                    };
                    if !field.is_zero(&c) {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for (m, c) in &self.terms[i..] {
            out.push((*m, c.clone()));
        }
        for (m, c) in &other.terms[j..] {
            let c = if negate { field.neg(c) } else { c.clone() };
            out.push((*m, c));
        }
        let bidegree = compute_bidegree(&self.ring, &out);
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
            bidegree,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let field = *self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, field.neg(c)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
            bidegree: self.bidegree,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let field = *self.ring.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, tc)| (*m, field.mul(tc, c)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
            bidegree: self.bidegree,
        }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let field = *self.ring.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms: Vec<(Monomial, Scalar)> = self
            .terms
            .iter()
            .map(|(tm, tc)| (tm.mul(m), field.mul(tc, c)))
            .collect();
        let bidegree = compute_bidegree(&self.ring, &terms);
        Polynomial {
            ring: self.ring.clone(),
            terms,
            bidegree,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other, "multiplication")?;
        let field = *self.ring.field();
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        let nv = self.ring.nvars();
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0, nv));
        let bidegree = compute_bidegree(&self.ring, &terms);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
            bidegree,
        })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Apply the ring homomorphism sending each assigned variable to the
    /// given image and every other variable to its namesake in `target`.
    pub fn substitute(
        &self,
        assignments: &[(&str, Polynomial)],
        target: &RingRc,
    ) -> Result<Polynomial> {
        if self.ring.field() != target.field() {
            return Err(Error::RingMismatch(
                "substitution cannot change the coefficient field".into(),
            ));
        }
        let mut images: Vec<Option<Polynomial>> = vec![None; self.ring.nvars()];
        for (name, img) in assignments {
            let idx = self.ring.var_index(name)?;
            if !Ring::same_ring(img.ring(), target) {
                return Err(Error::RingMismatch(format!(
                    "image of `{name}` lives outside the target ring"
                )));
            }
            images[idx] = Some(img.clone());
        }
        // Unassigned variables that actually occur map to their namesakes.
        let occurring = self
            .terms
            .iter()
            .fold(0u32, |acc, (m, _)| acc | m.support());
        let mut renames: Vec<Option<usize>> = vec![None; self.ring.nvars()];
        for i in 0..self.ring.nvars() {
            if images[i].is_none() && occurring & (1 << i) != 0 {
                renames[i] = Some(target.var_index(self.ring.name(i))?);
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            let mut plain = Monomial::one();
            for i in 0..self.ring.nvars() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match (&images[i], renames[i]) {
                    (Some(img), _) => term = term.mul(&img.pow(e as u32))?,
                    (None, Some(j)) => plain = plain.mul(&Monomial::from_exponents(&[(j, e)])),
                    (None, None) => unreachable!(),
                }
            }
            term = term.mul_term(&plain, &target.field().one());
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Embed into another ring by matching variable names.
    pub fn map_to_ring(&self, target: &RingRc) -> Result<Polynomial> {
        self.substitute(&[], target)
    }

    /// Evaluate at a point given by one scalar per ring variable.
    pub fn evaluate(&self, vals: &[Scalar]) -> Scalar {
        assert_eq!(vals.len(), self.ring.nvars());
        let field = *self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in vals.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = field.mul(&t, v);
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Deterministic total order on polynomials of one ring: compare term
    /// lists under the storage order, then coefficients.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        let nv = self.ring.nvars();
        let ord = MonomialOrder::Grevlex;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            match ord.cmp(ma, mb, nv) {
                Ordering::Equal => {}
                o => return o,
            }
            match cmp_scalars(ca, cb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

pub fn cmp_scalars(a: &Scalar, b: &Scalar) -> Ordering {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => x.cmp(y),
        (Scalar::Fp(x), Scalar::Fp(y)) => x.cmp(y),
        _ => panic!("mixed scalar kinds"),
    }
}

fn compute_bidegree(ring: &RingRc, terms: &[(Monomial, Scalar)]) -> Option<(u32, u32)> {
    let (m0, _) = terms.first()?;
    let base = ring.role_mask(BlockRole::Base);
    let fiber = ring.role_mask(BlockRole::Fiber);
    let aux = ring.role_mask(BlockRole::Aux);
    let bd = (m0.degree_masked(base), m0.degree_masked(fiber));
    for (m, _) in terms {
        if m.degree_masked(aux) != 0 {
            return None;
        }
        if (m.degree_masked(base), m.degree_masked(fiber)) != bd {
            return None;
        }
    }
    Some(bd)
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        Ring::same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field.fmt_scalar(c);
            let (sign, mag) = match s.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", s),
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else if sign == "-" {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = fmt_monomial(&self.ring, m);
            match (mono.is_empty(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in 0..ring.nvars() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            e => parts.push(format!("{}^{e}", ring.name(i))),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoeffField;
    use crate::ring::VariableBlock;

    fn ring_xy() -> RingRc {
        Ring::base_ring(CoeffField::rationals(), &["x1", "x2"]).unwrap()
    }

    fn v(r: &RingRc, name: &str) -> Polynomial {
        Polynomial::var_named(r, name).unwrap()
    }

    #[test]
    fn product_of_conjugates() {
        let r = ring_xy();
        let (x1, x2) = (v(&r, "x1"), v(&r, "x2"));
        let p = x1.add(&x2).unwrap();
        let q = x1.sub(&x2).unwrap();
        let prod = p.mul(&q).unwrap();
        let expect = x1.mul(&x1).unwrap().sub(&x2.mul(&x2).unwrap()).unwrap();
        assert_eq!(prod, expect);
        assert_eq!(prod.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn additive_identity() {
        let r = ring_xy();
        let p = v(&r, "x1").mul(&v(&r, "x2")).unwrap();
        assert_eq!(p.add(&Polynomial::zero(&r)).unwrap(), p);
        assert!(p.sub(&p).unwrap().is_zero());
    }

    #[test]
    fn prime_field_coefficient_wraparound() {
        let f = CoeffField::prime(7).unwrap();
        let r = Ring::base_ring(f, &["x1", "x2"]).unwrap();
        let three = Polynomial::var(&r, 0).scale(&f.from_i64(3));
        let five = Polynomial::var(&r, 0).scale(&f.from_i64(5));
        let prod = three.mul(&five).unwrap();
        // 15 = 1 mod 7
        assert_eq!(prod, Polynomial::var(&r, 0).mul(&Polynomial::var(&r, 0)).unwrap());
    }

    #[test]
    fn substitution_across_rings() {
        let f = CoeffField::rationals();
        let src = Ring::base_ring(f, &["x1", "x2"]).unwrap();
        let dst = Ring::new(f, vec![VariableBlock::new(BlockRole::Fiber, &["t1", "t2"])]).unwrap();
        let x1 = v(&src, "x1");
        let p = x1.mul(&x1).unwrap().add(&x1).unwrap(); // x1^2 + x1
        let t1 = Polynomial::var_named(&dst, "t1").unwrap();
        let img = p.substitute(&[("x1", t1.clone())], &dst).unwrap();
        let expect = t1.mul(&t1).unwrap().add(&t1).unwrap();
        assert_eq!(img, expect);
    }

    #[test]
    fn identity_substitution() {
        let r = ring_xy();
        let p = v(&r, "x1")
            .mul(&v(&r, "x2"))
            .unwrap()
            .add(&Polynomial::one(&r))
            .unwrap();
        assert_eq!(p.substitute(&[], &r).unwrap(), p);
        let same = p
            .substitute(&[("x1", v(&r, "x1")), ("x2", v(&r, "x2"))], &r)
            .unwrap();
        assert_eq!(same, p);
    }

    #[test]
    fn linear_form_evaluated_on_polynomials() {
        // x1 - 2*x2 evaluated on a vector of polynomials in another ring.
        let f = CoeffField::rationals();
        let src = Ring::base_ring(f, &["x1", "x2"]).unwrap();
        let tr = Ring::new(f, vec![VariableBlock::new(BlockRole::Fiber, &["t1", "t2"])]).unwrap();
        let form = v(&src, "x1")
            .sub(&v(&src, "x2").scale(&f.from_i64(2)))
            .unwrap();
        let d1 = Polynomial::var_named(&tr, "t1").unwrap();
        let d2 = Polynomial::var_named(&tr, "t2").unwrap();
        let out = form
            .substitute(&[("x1", d1.clone()), ("x2", d2.clone())], &tr)
            .unwrap();
        assert_eq!(out, d1.sub(&d2.scale(&f.from_i64(2))).unwrap());
    }

    #[test]
    fn bidegree_tracks_blocks() {
        let f = CoeffField::rationals();
        let r = Ring::new(
            f,
            vec![
                VariableBlock::new(BlockRole::Base, &["x1", "x2"]),
                VariableBlock::new(BlockRole::Fiber, &["t1", "t2"]),
            ],
        )
        .unwrap();
        let bilinear = v(&r, "x1")
            .mul(&v(&r, "t2"))
            .unwrap()
            .sub(&v(&r, "x2").mul(&v(&r, "t1")).unwrap())
            .unwrap();
        assert_eq!(bilinear.bidegree(), Some((1, 1)));
        let mixed = bilinear.add(&v(&r, "x1")).unwrap();
        assert_eq!(mixed.bidegree(), None);
        assert!(!mixed.is_homogeneous());
    }

    #[test]
    fn evaluation() {
        let f = CoeffField::prime(13).unwrap();
        let r = Ring::base_ring(f, &["x1", "x2"]).unwrap();
        let p = v(&r, "x1")
            .mul(&v(&r, "x1"))
            .unwrap()
            .add(&v(&r, "x2").mul(&v(&r, "x2")).unwrap())
            .unwrap();
        let val = p.evaluate(&[f.from_i64(1), f.from_i64(5)]);
        assert!(f.is_zero(&val)); // 1 + 25 = 26 = 0 mod 13
    }

    #[test]
    fn display_formats() {
        let r = ring_xy();
        let f = CoeffField::rationals();
        let p = v(&r, "x1")
            .mul(&v(&r, "x1"))
            .unwrap()
            .sub(&v(&r, "x2").scale(&f.from_i64(3)))
            .unwrap()
            .add(&Polynomial::constant(&r, f.from_i64(1)))
            .unwrap();
        assert_eq!(p.to_string(), "x1^2 - 3*x2 + 1");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        assert_eq!(v(&r, "x2").neg().to_string(), "-x2");
    }
}
