//! Buchberger's algorithm and the ideal-level queries built on it.
//!
//! The engine keeps the basis monic throughout, selects pairs by minimal
//! lcm degree (normal strategy), and prunes pairs with the Gebauer-Moeller
//! formulation of Buchberger's product and chain criteria. Bases are fully
//! reduced and sorted before they are returned, so a Groebner basis is a
//! canonical form: two ideals are equal exactly when their reduced bases
//! under a common order coincide, and repeated runs are byte-identical.
//!
//! Budgets make runaway computations fail loudly instead of hanging: a cap
//! on processed S-pairs and a cap on the total degree of any pair or
//! reduction result.

use crate::error::{Error, Result};
use crate::field::{CoeffField, Scalar};
use crate::monomial::{Monomial, MAX_VARS};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{BlockRole, Ring, RingRc};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Maximum number of S-pairs reduced in one Buchberger run.
    pub pair_cap: usize,
    /// Maximum total degree of any S-pair lcm or reduction result.
    pub degree_cap: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            pair_cap: 50_000,
            degree_cap: 40,
        }
    }
}

/// A finitely generated ideal in an ambient ring, tagged with the order
/// its Groebner basis should be computed under.
#[derive(Debug, Clone)]
pub struct IdealHandle {
    ring: RingRc,
    order: MonomialOrder,
    gens: Vec<Polynomial>,
    homogeneous: bool,
}

impl IdealHandle {
    pub fn new(ring: RingRc, order: MonomialOrder, gens: Vec<Polynomial>) -> Self {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert!(
                Ring::same_ring(g.ring(), &ring),
                "generator outside the ambient ring"
            );
        }
        let fiber = ring.role_mask(BlockRole::Fiber);
        let homogeneous = gens.iter().all(|g| g.is_homogeneous())
            && (fiber == 0 || gens.iter().all(|g| g.bidegree().is_some()));
        IdealHandle {
            ring,
            order,
            gens,
            homogeneous,
        }
    }

    pub fn ring(&self) -> &RingRc {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn with_order(&self, order: MonomialOrder) -> IdealHandle {
        IdealHandle {
            ring: self.ring.clone(),
            order,
            gens: self.gens.clone(),
            homogeneous: self.homogeneous,
        }
    }
}

/// A reduced, monic Groebner basis with invariants cached at construction.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: RingRc,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    work: Vec<WPoly>,
    leads: Vec<Monomial>,
    dimension: i64,
    initial_degree: Option<u32>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRc {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Elements of the reduced basis, sorted ascending by leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn lead_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leads.iter().any(|m| m.is_one())
    }

    /// Krull dimension of the quotient ring (number of variables for the
    /// zero ideal, -1 for the unit ideal).
    pub fn dimension(&self) -> i64 {
        self.dimension
    }

    pub fn height(&self) -> i64 {
        self.ring.nvars() as i64 - self.dimension
    }

    /// Minimum total degree over basis elements; `None` for the zero ideal.
    /// For homogeneous ideals this is the least degree of a minimal
    /// generator.
    pub fn initial_degree(&self) -> Option<u32> {
        self.initial_degree
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert!(
            Ring::same_ring(p.ring(), &self.ring),
            "normal form across rings"
        );
        let ctx = Ctx::new(&self.ring, self.order);
        let w = WPoly::from_poly(p, &ctx);
        let r = reduce_full(w, &self.work, &self.leads, &ctx);
        r.into_poly(&self.ring)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Exhaustive Buchberger criterion with no pair pruning; used by tests
    /// to cross-check the optimized run.
    pub fn verify_all_spairs_reduce(&self) -> bool {
        let ctx = Ctx::new(&self.ring, self.order);
        for i in 0..self.work.len() {
            for j in (i + 1)..self.work.len() {
                let s = spoly(&self.work[i], &self.work[j], &ctx);
                let r = reduce_full(s, &self.work, &self.leads, &ctx);
                if !r.terms.is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Working representation

#[derive(Clone, Copy)]
struct Ctx {
    order: MonomialOrder,
    nvars: usize,
    field: CoeffField,
}

impl Ctx {
    fn new(ring: &RingRc, order: MonomialOrder) -> Self {
        Ctx {
            order,
            nvars: ring.nvars(),
            field: *ring.field(),
        }
    }

    #[inline]
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.nvars)
    }
}

/// Term list sorted descending under the working order.
#[derive(Debug, Clone)]
struct WPoly {
    terms: Vec<(Monomial, Scalar)>,
}

impl WPoly {
    fn from_poly(p: &Polynomial, ctx: &Ctx) -> Self {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| ctx.cmp(&b.0, &a.0));
        WPoly { terms }
    }

    fn into_poly(self, ring: &RingRc) -> Polynomial {
        Polynomial::from_terms(ring, self.terms)
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Scalar {
        &self.terms[0].1
    }

    fn make_monic(&mut self, ctx: &Ctx) {
        if self.terms.is_empty() {
            return;
        }
        let one = ctx.field.one();
        if ctx.field.is_zero(&ctx.field.sub(self.lc(), &one)) {
            return;
        }
        let inv = ctx
            .field
            .inv(self.lc())
            .expect("leading coefficient is nonzero");
        for (_, c) in &mut self.terms {
            *c = ctx.field.mul(c, &inv);
        }
    }

    /// `self - c * m * g`; `g` is monic and the orders agree.
    fn sub_scaled(&self, g: &WPoly, m: &Monomial, c: &Scalar, ctx: &Ctx) -> WPoly {
        let field = ctx.field;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.terms.len() && j < g.terms.len() {
            let (ma, ca) = &self.terms[i];
            let mb = g.terms[j].0.mul(m);
            match ctx.cmp(ma, &mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let cb = field.neg(&field.mul(&g.terms[j].1, c));
                    out.push((mb, cb));
                    j += 1;
                }
                Ordering::Equal => {
                    let cb = field.mul(&g.terms[j].1, c);
                    let s = field.sub(ca, &cb);
                    if !field.is_zero(&s) {
                        out.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for (ma, ca) in &self.terms[i..] {
            out.push((*ma, ca.clone()));
        }
        while j < g.terms.len() {
            let mb = g.terms[j].0.mul(m);
            let cb = field.neg(&field.mul(&g.terms[j].1, c));
            out.push((mb, cb));
            j += 1;
        }
        WPoly { terms: out }
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }
}

fn spoly(f: &WPoly, g: &WPoly, ctx: &Ctx) -> WPoly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().div_into(&l);
    let mg = g.lm().div_into(&l);
    let mut a = f.clone();
    for (m, _) in &mut a.terms {
        *m = m.mul(&mf);
    }
    a.sub_scaled(g, &mg, &ctx.field.one(), ctx)
}

/// Full normal form against a monic basis: cancels the highest reducible
/// term at each step, with reducers chosen first-by-index.
fn reduce_full(p: WPoly, basis: &[WPoly], leads: &[Monomial], ctx: &Ctx) -> WPoly {
    let mut work = p;
    let mut done: Vec<(Monomial, Scalar)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.terms.first().cloned() {
        let sup = lm.support();
        for (k, bl) in leads.iter().enumerate() {
            if bl.support() & !sup == 0 && bl.divides(&lm) {
                let q = bl.div_into(&lm);
                work = work.sub_scaled(&basis[k], &q, &lc, ctx);
                continue 'outer;
            }
        }
        done.push(work.terms.remove(0));
    }
    WPoly { terms: done }
}

// ---------------------------------------------------------------------------
// Buchberger with Gebauer-Moeller pair pruning

type PairKey = (u32, [u16; MAX_VARS], u32, u32);

struct Engine {
    ctx: Ctx,
    basis: Vec<WPoly>,
    leads: Vec<Monomial>,
    pairs: BTreeSet<PairKey>,
    processed: usize,
    budget: Budget,
}

impl Engine {
    fn add_element(&mut self, h: WPoly) {
        let h_lm = *h.lm();
        let h_idx = self.basis.len();

        // Chain criterion on queued pairs: (i, j) dies when the new lead
        // divides lcm(i, j) strictly off both sub-lcms.
        let leads = &self.leads;
        self.pairs.retain(|(_, raw, i, j)| {
            let lcm_ij = monomial_from_raw(raw);
            if !h_lm.divides(&lcm_ij) {
                return true;
            }
            let li = &leads[*i as usize];
            let lj = &leads[*j as usize];
            li.lcm(&h_lm) == lcm_ij || lj.lcm(&h_lm) == lcm_ij
        });

        // New pairs, pruned: strict-divisor criterion, one pair per lcm,
        // and the product criterion (coprime leads kill their lcm class).
        let all: Vec<(usize, Monomial, bool)> = (0..h_idx)
            .map(|g| {
                let l = self.leads[g].lcm(&h_lm);
                let coprime = self.leads[g].is_coprime(&h_lm);
                (g, l, coprime)
            })
            .collect();
        let cand: Vec<(usize, Monomial, bool)> = all
            .iter()
            .filter(|(g, l, _)| !cand_strictly_below(&all, *g, l))
            .cloned()
            .collect();
        let mut by_lcm: Vec<(Monomial, Vec<(usize, bool)>)> = Vec::new();
        for (g, l, coprime) in cand {
            match by_lcm.iter_mut().find(|(m, _)| *m == l) {
                Some((_, v)) => v.push((g, coprime)),
                None => by_lcm.push((l, vec![(g, coprime)])),
            }
        }
        for (l, group) in by_lcm {
            if group.iter().any(|(_, coprime)| *coprime) {
                continue;
            }
            let g = group.iter().map(|(g, _)| *g).min().unwrap();
            self.pairs
                .insert((l.degree(), l.raw(), g as u32, h_idx as u32));
        }

        self.basis.push(h);
        self.leads.push(h_lm);
    }

    fn run(&mut self, stage: &str) -> Result<()> {
        while let Some(key) = self.pairs.pop_first() {
            let (deg, _, i, j) = key;
            if deg > self.budget.degree_cap {
                return Err(Error::budget(
                    stage,
                    format!("S-pair degree {deg} exceeds cap {}", self.budget.degree_cap),
                ));
            }
            self.processed += 1;
            if self.processed > self.budget.pair_cap {
                return Err(Error::budget(
                    stage,
                    format!("pair cap {} exhausted", self.budget.pair_cap),
                ));
            }
            let s = spoly(&self.basis[i as usize], &self.basis[j as usize], &self.ctx);
            let mut r = reduce_full(s, &self.basis, &self.leads, &self.ctx);
            if r.terms.is_empty() {
                continue;
            }
            if r.max_degree() > self.budget.degree_cap {
                return Err(Error::budget(
                    stage,
                    format!(
                        "reduction degree {} exceeds cap {}",
                        r.max_degree(),
                        self.budget.degree_cap
                    ),
                ));
            }
            r.make_monic(&self.ctx);
            self.add_element(r);
        }
        Ok(())
    }

    /// Minimalize and tail-reduce into the unique reduced basis, sorted
    /// ascending by leading monomial.
    fn finish(mut self) -> Vec<WPoly> {
        let mut idx: Vec<usize> = (0..self.basis.len()).collect();
        idx.sort_by(|&a, &b| self.ctx.cmp(&self.leads[a], &self.leads[b]));
        let mut kept: Vec<usize> = Vec::new();
        for i in idx {
            if !kept.iter().any(|&k| self.leads[k].divides(&self.leads[i])) {
                kept.push(i);
            }
        }
        let mut reduced: Vec<WPoly> = kept.iter().map(|&k| self.basis[k].clone()).collect();
        let lead_list: Vec<Monomial> = kept.iter().map(|&k| self.leads[k]).collect();
        for i in 0..reduced.len() {
            let mut others = Vec::with_capacity(reduced.len() - 1);
            let mut other_leads = Vec::with_capacity(reduced.len() - 1);
            for (j, w) in reduced.iter().enumerate() {
                if j != i {
                    others.push(w.clone());
                    other_leads.push(lead_list[j]);
                }
            }
            let r = reduce_full(reduced[i].clone(), &others, &other_leads, &self.ctx);
            debug_assert_eq!(r.lm(), &lead_list[i]);
            reduced[i] = r;
        }
        self.basis = reduced;
        self.basis
    }
}

fn cand_strictly_below(cand: &[(usize, Monomial, bool)], g: usize, l: &Monomial) -> bool {
    cand.iter()
        .any(|(g2, l2, _)| *g2 != g && l2 != l && l2.divides(l))
}

fn monomial_from_raw(raw: &[u16; MAX_VARS]) -> Monomial {
    let pairs: Vec<(usize, u16)> = raw
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| (i, *e))
        .collect();
    Monomial::from_exponents(&pairs)
}

/// Deterministic preprocessing order: ascending by leading monomial, then
/// by the full term list.
fn sort_key_cmp(a: &WPoly, b: &WPoly, ctx: &Ctx) -> Ordering {
    for ((ma, ca), (mb, cb)) in a.terms.iter().zip(b.terms.iter()) {
        match ctx.cmp(ma, mb) {
            Ordering::Equal => {}
            o => return o,
        }
        match crate::poly::cmp_scalars(ca, cb) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

/// Compute the reduced Groebner basis of the handle under its order.
pub fn buchberger(handle: &IdealHandle, budget: &Budget) -> Result<GroebnerBasis> {
    let ring = handle.ring().clone();
    let ctx = Ctx::new(&ring, *handle.order());
    let mut engine = Engine {
        ctx,
        basis: Vec::new(),
        leads: Vec::new(),
        pairs: BTreeSet::new(),
        processed: 0,
        budget: *budget,
    };

    let mut gens: Vec<WPoly> = handle
        .generators()
        .iter()
        .map(|g| WPoly::from_poly(g, &ctx))
        .collect();
    gens.sort_by(|a, b| sort_key_cmp(a, b, &ctx));
    for g in gens {
        let mut r = reduce_full(g, &engine.basis, &engine.leads, &ctx);
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic(&ctx);
        engine.add_element(r);
    }
    engine.run("buchberger")?;
    let work = engine.finish();

    let leads: Vec<Monomial> = work.iter().map(|w| *w.lm()).collect();
    let elements: Vec<Polynomial> = work
        .iter()
        .map(|w| w.clone().into_poly(&ring))
        .collect();
    let supports: Vec<u32> = leads.iter().map(|m| m.support()).collect();
    let dimension = monomial_ideal_dimension(&supports, ring.nvars());
    let initial_degree = elements
        .iter()
        .filter_map(|p| p.total_degree())
        .min();

    let gb = GroebnerBasis {
        ring,
        order: *handle.order(),
        elements,
        work,
        leads,
        dimension,
        initial_degree,
    };
    // Safety net: the basis must still generate every input.
    for g in handle.generators() {
        if !gb.contains(g) {
            return Err(Error::Internal(
                "reduced basis does not contain an input generator".into(),
            ));
        }
    }
    Ok(gb)
}

/// Normal form of `p` against a reduced basis.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    gb.normal_form(p)
}

/// Equality as ideals, decided by reduced bases under one canonical order.
pub fn ideal_equal(a: &IdealHandle, b: &IdealHandle, budget: &Budget) -> Result<bool> {
    if !Ring::same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch("ideal comparison across rings".into()));
    }
    let ga = buchberger(&a.with_order(MonomialOrder::Grevlex), budget)?;
    let gb = buchberger(&b.with_order(MonomialOrder::Grevlex), budget)?;
    Ok(gb_equal(&ga, &gb))
}

pub fn gb_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.order == b.order && a.elements == b.elements
}

/// Generators of the contraction of the ideal to the subring excluding the
/// masked variables, via a block elimination order. The result lives in the
/// same ambient ring; an empty mask returns the handle unchanged.
pub fn eliminate(handle: &IdealHandle, mask: u32, budget: &Budget) -> Result<IdealHandle> {
    if mask == 0 {
        return Ok(handle.clone());
    }
    let order = MonomialOrder::elimination(mask);
    let gb = buchberger(&handle.with_order(order), budget)?;
    let kept: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|p| p.degree_masked(mask).unwrap_or(0) == 0)
        .cloned()
        .collect();
    Ok(IdealHandle::new(
        handle.ring().clone(),
        MonomialOrder::Grevlex,
        kept,
    ))
}

/// Re-express a handle whose generators avoid some variables inside a
/// smaller ring, matching variables by name.
pub fn restrict_handle(handle: &IdealHandle, target: &RingRc) -> Result<IdealHandle> {
    let gens = handle
        .generators()
        .iter()
        .map(|g| g.map_to_ring(target))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealHandle::new(
        target.clone(),
        MonomialOrder::Grevlex,
        gens,
    ))
}

pub fn dimension(handle: &IdealHandle, budget: &Budget) -> Result<i64> {
    Ok(buchberger(handle, budget)?.dimension())
}

pub fn height(handle: &IdealHandle, budget: &Budget) -> Result<i64> {
    Ok(buchberger(handle, budget)?.height())
}

/// Least total degree of a basis element; the zero ideal is an error.
pub fn initial_degree(handle: &IdealHandle, budget: &Budget) -> Result<u32> {
    buchberger(handle, budget)?
        .initial_degree()
        .ok_or(Error::ZeroIdeal)
}

/// Maximum size of a variable set meeting no lead support, by branch and
/// bound with memoization; -1 when a constant is present (unit ideal).
fn monomial_ideal_dimension(supports: &[u32], nvars: usize) -> i64 {
    fn rec(supports: &[u32], allowed: u32, memo: &mut HashMap<u32, i64>) -> i64 {
        if let Some(&v) = memo.get(&allowed) {
            return v;
        }
        let hit = supports.iter().find(|s| *s & !allowed == 0);
        let out = match hit {
            None => allowed.count_ones() as i64,
            Some(0) => -1,
            Some(s) => {
                let mut best = -1i64;
                let mut rest = *s;
                while rest != 0 {
                    let v = rest.trailing_zeros();
                    rest &= rest - 1;
                    best = best.max(rec(supports, allowed & !(1 << v), memo));
                }
                best
            }
        };
        memo.insert(allowed, out);
        out
    }
    let full = if nvars == 32 {
        u32::MAX
    } else {
        (1u32 << nvars) - 1
    };
    let mut memo = HashMap::new();
    rec(supports, full, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use proptest::prelude::*;

    fn ring3() -> RingRc {
        Ring::base_ring(CoeffField::rationals(), &["x1", "x2", "x3"]).unwrap()
    }

    fn handle(r: &RingRc, order: MonomialOrder, gens: &[&str]) -> IdealHandle {
        let gens = gens
            .iter()
            .map(|s| parse_polynomial(s, r).unwrap())
            .collect();
        IdealHandle::new(r.clone(), order, gens)
    }

    fn gb(r: &RingRc, order: MonomialOrder, gens: &[&str]) -> GroebnerBasis {
        buchberger(&handle(r, order, gens), &Budget::default()).unwrap()
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let r = ring3();
        let g = gb(&r, MonomialOrder::Grevlex, &["x1"]);
        assert_eq!(g.elements().len(), 1);
        assert_eq!(g.elements()[0].to_string(), "x1");
    }

    #[test]
    fn monomial_ideal_already_reduced() {
        let r = ring3();
        let g = gb(&r, MonomialOrder::Grevlex, &["x1^2", "x1*x2"]);
        let strs: Vec<String> = g.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["x1*x2", "x1^2"]);
    }

    #[test]
    fn lex_basis_of_coordinate_curve() {
        let r = ring3();
        let g = gb(&r, MonomialOrder::Lex, &["x1^2 - x2", "x1*x2 - x3"]);
        let strs: Vec<String> = g.elements().iter().map(|p| p.to_string()).collect();
        // Cross-checked against an independent computer algebra system.
        // Display renders terms in graded order, so the element that is
        // monic under lex (lead x1*x3) prints with its minus sign first.
        assert_eq!(
            strs,
            vec![
                "x2^3 - x3^2",
                "-x2^2 + x1*x3",
                "x1*x2 - x3",
                "x1^2 - x2",
            ]
        );
        assert!(g.verify_all_spairs_reduce());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring3();
        let g = gb(&r, MonomialOrder::Grevlex, &["x1^2 - x2"]);
        let p = parse_polynomial("x1^2", &r).unwrap();
        assert_eq!(g.normal_form(&p).to_string(), "x2");
        let one = Polynomial::one(&r);
        assert_eq!(g.normal_form(&one), one);
        for gen in g.elements() {
            assert!(g.contains(gen));
        }
    }

    #[test]
    fn ideal_equality() {
        let r = ring3();
        let b = Budget::default();
        let a1 = handle(&r, MonomialOrder::Grevlex, &["x1", "x2"]);
        let a2 = handle(&r, MonomialOrder::Grevlex, &["x2", "x1"]);
        let a3 = handle(&r, MonomialOrder::Grevlex, &["x1 + x2", "x2"]);
        let b1 = handle(&r, MonomialOrder::Grevlex, &["x1^2"]);
        let b2 = handle(&r, MonomialOrder::Grevlex, &["x1"]);
        assert!(ideal_equal(&a1, &a2, &b).unwrap());
        assert!(ideal_equal(&a1, &a3, &b).unwrap());
        assert!(!ideal_equal(&b1, &b2, &b).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let f = CoeffField::rationals();
        let r = Ring::new(
            f,
            vec![
                crate::ring::VariableBlock::new(BlockRole::Base, &["x", "y"]),
                crate::ring::VariableBlock::new(BlockRole::Fiber, &["t1", "t2"]),
            ],
        )
        .unwrap();
        let b = Budget::default();
        let h = handle(&r, MonomialOrder::Grevlex, &["t1 - x", "t2 - x^2"]);
        let base_mask = r.role_mask(BlockRole::Base);
        let out = eliminate(&h, base_mask, &b).unwrap();
        assert_eq!(out.generators().len(), 1);
        assert_eq!(out.generators()[0].to_string(), "t1^2 - t2");

        // Eliminating x from <t1 - x> leaves nothing.
        let h2 = handle(&r, MonomialOrder::Grevlex, &["t1 - x"]);
        let out2 = eliminate(&h2, base_mask, &b).unwrap();
        assert!(out2.generators().is_empty());

        // Empty mask: unchanged ideal.
        let out3 = eliminate(&h, 0, &b).unwrap();
        assert!(ideal_equal(&h, &out3, &b).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = ring3();
        let b = Budget::default();
        let zero = IdealHandle::new(r.clone(), MonomialOrder::Grevlex, vec![]);
        assert_eq!(dimension(&zero, &b).unwrap(), 3);
        let max_ideal = handle(&r, MonomialOrder::Grevlex, &["x1", "x2", "x3"]);
        assert_eq!(dimension(&max_ideal, &b).unwrap(), 0);
        assert_eq!(height(&max_ideal, &b).unwrap(), 3);
        let two_planes = handle(&r, MonomialOrder::Grevlex, &["x1*x3", "x2*x3"]);
        assert_eq!(dimension(&two_planes, &b).unwrap(), 2);
        let unit = handle(&r, MonomialOrder::Grevlex, &["x1", "x1 + 1"]);
        assert_eq!(dimension(&unit, &b).unwrap(), -1);
    }

    #[test]
    fn initial_degree_examples() {
        let r = ring3();
        let b = Budget::default();
        assert_eq!(
            initial_degree(&handle(&r, MonomialOrder::Grevlex, &["x1^2", "x2^3"]), &b).unwrap(),
            2
        );
        assert_eq!(
            initial_degree(&handle(&r, MonomialOrder::Grevlex, &["x1"]), &b).unwrap(),
            1
        );
        let zero = IdealHandle::new(r.clone(), MonomialOrder::Grevlex, vec![]);
        assert_eq!(initial_degree(&zero, &b), Err(Error::ZeroIdeal));
    }

    #[test]
    fn budget_failure_is_loud() {
        let r = ring3();
        let tiny = Budget {
            pair_cap: 1,
            degree_cap: 40,
        };
        let h = handle(
            &r,
            MonomialOrder::Lex,
            &["x1^2 - x2", "x1*x2 - x3", "x2^2 - x1*x3"],
        );
        match buchberger(&h, &tiny) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn dimension_is_order_independent() {
        let r = ring3();
        let b = Budget::default();
        for gens in [
            vec!["x1^2 - x2*x3", "x1*x2"],
            vec!["x1*x2 - x3^2"],
            vec!["x1 + x2", "x2^2"],
        ] {
            let dims: Vec<i64> = [
                MonomialOrder::Grevlex,
                MonomialOrder::Lex,
                MonomialOrder::elimination(0b001),
                MonomialOrder::elimination(0b110),
            ]
            .iter()
            .map(|o| dimension(&handle(&r, *o, &gens), &b).unwrap())
            .collect();
            assert!(dims.windows(2).all(|w| w[0] == w[1]), "{dims:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // Membership in a monomial ideal is divisibility by a generator.
        #[test]
        fn monomial_membership_is_divisibility(
            gens in proptest::collection::vec((0u16..3, 0u16..3, 0u16..3), 1..4),
            probe in (0u16..4, 0u16..4, 0u16..4),
        ) {
            let r = ring3();
            let ms: Vec<Monomial> = gens
                .iter()
                .map(|(a, b, c)| Monomial::from_exponents(&[(0, *a), (1, *b), (2, *c)]))
                .filter(|m| !m.is_one())
                .collect();
            prop_assume!(!ms.is_empty());
            let polys: Vec<Polynomial> = ms
                .iter()
                .map(|m| Polynomial::from_terms(&r, vec![(*m, r.field().one())]))
                .collect();
            let h = IdealHandle::new(r.clone(), MonomialOrder::Grevlex, polys);
            let g = buchberger(&h, &Budget::default()).unwrap();
            let pm = Monomial::from_exponents(&[(0, probe.0), (1, probe.1), (2, probe.2)]);
            let probe_poly = Polynomial::from_terms(&r, vec![(pm, r.field().one())]);
            let member = g.contains(&probe_poly);
            let divisible = ms.iter().any(|m| m.divides(&pm));
            prop_assert_eq!(member, divisible);
        }

        // The optimized pair pruning agrees with the exhaustive criterion.
        #[test]
        fn pruned_bases_pass_full_criterion(
            c1 in -3i64..4, c2 in -3i64..4, c3 in -3i64..4,
            e1 in 1u16..3, e2 in 1u16..3,
        ) {
            let r = ring3();
            let f = *r.field();
            let p1 = Polynomial::from_terms(&r, vec![
                (Monomial::from_exponents(&[(0, e1)]), f.one()),
                (Monomial::from_exponents(&[(1, 1)]), f.from_i64(c1)),
            ]);
            let p2 = Polynomial::from_terms(&r, vec![
                (Monomial::from_exponents(&[(0, 1), (1, e2)]), f.one()),
                (Monomial::from_exponents(&[(2, 1)]), f.from_i64(c2)),
            ]);
            let p3 = Polynomial::from_terms(&r, vec![
                (Monomial::from_exponents(&[(1, 1), (2, 1)]), f.one()),
                (Monomial::from_exponents(&[(0, 1)]), f.from_i64(c3)),
            ]);
            let h = IdealHandle::new(r.clone(), MonomialOrder::Grevlex, vec![p1, p2, p3]);
            let g = buchberger(&h, &Budget::default()).unwrap();
            prop_assert!(g.verify_all_spairs_reduce());
        }
    }
}
