//! Blow-up algebra invariants of an ideal given by a linear presentation
//! matrix with one more row than columns.
//!
//! The generators of the ideal are the signed maximal minors of the
//! matrix. From those this module computes the Rees ideal (the defining
//! ideal of the blow-up) by graph elimination, the special-fiber ideal by
//! a further elimination, the analytic spread, the dimension of the
//! symmetric algebra, and the ladder condition on the heights of the
//! minor ideals that controls how far the presentation stays general.

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, dimension, eliminate, restrict_handle, Budget, GroebnerBasis, IdealHandle,
};
use crate::linmatrix::{LinearMatrix, SignedMinorVector};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{BlockRole, Ring, RingRc, VariableBlock};

/// Elimination variable used by the graph construction; the input parser
/// never produces a leading underscore, so it cannot collide.
pub const AUX_VAR: &str = "_w";

/// Companion rings for one base ring and a fixed generator count: the
/// base ring extended by one fiber variable per generator, the same with
/// the auxiliary elimination variable, and the fiber variables alone.
#[derive(Debug, Clone)]
pub struct RingTower {
    pub base: RingRc,
    pub rt: RingRc,
    pub rtw: RingRc,
    pub fiber: RingRc,
}

impl RingTower {
    pub fn base_mask(&self) -> u32 {
        self.rt.role_mask(BlockRole::Base)
    }

    pub fn fiber_mask(&self) -> u32 {
        self.rt.role_mask(BlockRole::Fiber)
    }
}

/// Extend a single-block base ring by `n` fiber variables `t1..tn`
/// (capitalized when a base variable already uses one of those names).
pub fn ring_tower(base: &RingRc, n: usize) -> Result<RingTower> {
    if base.blocks().len() != 1 || base.blocks()[0].role != BlockRole::Base {
        return Err(Error::RingConstruction(
            "tower needs a plain coefficient ring".into(),
        ));
    }
    let field = *base.field();
    let base_names: Vec<&str> = (0..base.nvars()).map(|i| base.name(i)).collect();
    let fiber_names: Vec<String> = ["t", "T"]
        .iter()
        .map(|p| (1..=n).map(|i| format!("{p}{i}")).collect::<Vec<_>>())
        .find(|names| names.iter().all(|nm| !base_names.contains(&nm.as_str())))
        .ok_or_else(|| Error::RingConstruction("no free fiber variable names".into()))?;
    let fiber_refs: Vec<&str> = fiber_names.iter().map(|s| s.as_str()).collect();
    let rt = Ring::new(
        field,
        vec![
            VariableBlock::new(BlockRole::Base, &base_names),
            VariableBlock::new(BlockRole::Fiber, &fiber_refs),
        ],
    )?;
    let rtw = Ring::new(
        field,
        vec![
            VariableBlock::new(BlockRole::Base, &base_names),
            VariableBlock::new(BlockRole::Fiber, &fiber_refs),
            VariableBlock::new(BlockRole::Aux, &[AUX_VAR]),
        ],
    )?;
    let fiber = Ring::new(field, vec![VariableBlock::new(BlockRole::Base, &fiber_refs)])?;
    Ok(RingTower {
        base: base.clone(),
        rt,
        rtw,
        fiber,
    })
}

// ---------------------------------------------------------------------------
// Fitting heights and the ladder condition

/// Heights of the ideals of `j x j` minors for every size `j`.
#[derive(Debug, Clone)]
pub struct FittingHeights {
    pub rows: usize,
    pub cols: usize,
    /// `heights[j - 1]` is the height of the size-`j` minor ideal; the
    /// unit ideal gets one more than the variable count.
    pub heights: Vec<i64>,
}

impl FittingHeights {
    pub fn height(&self, j: usize) -> i64 {
        self.heights[j - 1]
    }

    pub fn max_size(&self) -> usize {
        self.heights.len()
    }
}

pub fn fitting_heights(m: &LinearMatrix, budget: &Budget) -> Result<FittingHeights> {
    let nvars = m.ring().nvars() as i64;
    let mut heights = Vec::new();
    for j in 1..=m.rows().min(m.cols()) {
        let dim = dimension(&m.ideal_of_minors(j), budget)?;
        heights.push(nvars - dim);
    }
    debug_assert!(heights.windows(2).all(|w| w[0] >= w[1]));
    Ok(FittingHeights {
        rows: m.rows(),
        cols: m.cols(),
        heights,
    })
}

/// One inspected minor size in a ladder check.
#[derive(Debug, Clone, Copy)]
pub struct GsCheck {
    pub j: usize,
    pub height: i64,
    pub bound: i64,
}

#[derive(Debug, Clone)]
pub struct GsReport {
    pub s: usize,
    pub rank: usize,
    pub satisfied: bool,
    pub checks: Vec<GsCheck>,
}

/// The ladder condition at level `s` for a module of rank `e` presented
/// with `heights.rows` generators: every minor size `j` in the window
/// `[m - s - e + 2, m - e]` needs height at least `m - j - e + 2`. An
/// empty window is vacuously satisfied.
pub fn check_gs(heights: &FittingHeights, e: usize, s: usize) -> GsReport {
    let m = heights.rows as i64;
    let e = e as i64;
    let lo = (m - s as i64 - e + 2).max(1);
    let hi = m - e;
    let mut checks = Vec::new();
    let mut satisfied = true;
    let mut j = lo;
    while j <= hi {
        let height = heights.height(j as usize);
        let bound = m - j - e + 2;
        checks.push(GsCheck {
            j: j as usize,
            height,
            bound,
        });
        satisfied &= height >= bound;
        j += 1;
    }
    GsReport {
        s,
        rank: e as usize,
        satisfied,
        checks,
    }
}

pub fn check_gs_ideal(heights: &FittingHeights, s: usize) -> GsReport {
    check_gs(heights, 1, s)
}

/// Largest `s <= cap` whose ladder condition holds. The windows are
/// nested, so the satisfied levels form a prefix.
pub fn max_gs(heights: &FittingHeights, e: usize, cap: usize) -> usize {
    (1..=cap)
        .take_while(|&s| check_gs(heights, e, s).satisfied)
        .last()
        .unwrap_or(0)
}

/// The straightening index: with `d` the height of the entry ideal, the
/// least `u` with `ht I_(u+1) = d - 1`. Requires the heights to stay at
/// `d` before the drop and the drop to happen by size `n - d + 1`.
pub fn pivot_index(heights: &FittingHeights, d: usize) -> Result<usize> {
    let n = heights.rows;
    let d64 = d as i64;
    if n < d + 1 {
        return Err(Error::Hypothesis(format!(
            "need at least {} generators over {d} variables, got {n}",
            d + 1
        )));
    }
    let last = n - d + 1;
    if heights.height(last) != d64 - 1 {
        return Err(Error::Hypothesis(format!(
            "size-{last} minors have height {}, expected {}",
            heights.height(last),
            d64 - 1
        )));
    }
    for j in 2..=last {
        match heights.height(j) {
            h if h == d64 => continue,
            h if h == d64 - 1 => {
                let u = j - 1;
                return Ok(u);
            }
            h => {
                return Err(Error::Hypothesis(format!(
                    "size-{j} minors have height {h}, expected {d} or {}",
                    d64 - 1
                )))
            }
        }
    }
    unreachable!("the drop is checked at size n - d + 1");
}

// ---------------------------------------------------------------------------
// Symmetric algebra

/// Column relations `sum_k t_k * psi[k][j]` expressed in the extended
/// ring, one per column.
pub fn sym_ideal_gens(psi: &LinearMatrix, rt: &RingRc) -> Result<Vec<Polynomial>> {
    let fiber = rt.role_vars(BlockRole::Fiber);
    if fiber.len() != psi.rows() {
        return Err(Error::Shape(format!(
            "need {} fiber variables, ring has {}",
            psi.rows(),
            fiber.len()
        )));
    }
    let mut gens = Vec::with_capacity(psi.cols());
    for j in 0..psi.cols() {
        let mut acc = Polynomial::zero(rt);
        for (k, &tk) in fiber.iter().enumerate() {
            let e = psi.entry(k, j).map_to_ring(rt)?;
            acc = acc.add(&Polynomial::var(rt, tk).mul(&e)?)?;
        }
        gens.push(acc);
    }
    Ok(gens)
}

/// Krull dimension of the symmetric algebra of the cokernel of `psi`,
/// computed as the dimension of the column-relation ideal in a fresh
/// extended ring.
pub fn symmetric_algebra_dimension(psi: &LinearMatrix, budget: &Budget) -> Result<i64> {
    let tower = ring_tower(psi.ring(), psi.rows())?;
    let gens = sym_ideal_gens(psi, &tower.rt)?;
    dimension(
        &IdealHandle::new(tower.rt.clone(), MonomialOrder::Grevlex, gens),
        budget,
    )
}

// ---------------------------------------------------------------------------
// Rees and special-fiber ideals

/// The defining ideals of the blow-up and its special fiber, with the
/// dimensions read off their bases.
#[derive(Debug, Clone)]
pub struct ReesPresentation {
    tower: RingTower,
    generators: SignedMinorVector,
    sym_gens: Vec<Polynomial>,
    rees: IdealHandle,
    rees_gb: GroebnerBasis,
    fiber: IdealHandle,
    fiber_gb: GroebnerBasis,
    fiber_small_gb: GroebnerBasis,
    sym_dim: i64,
    rees_dim: i64,
    spread: i64,
}

impl ReesPresentation {
    pub fn tower(&self) -> &RingTower {
        &self.tower
    }

    /// The signed maximal minors generating the ideal being blown up.
    pub fn generators(&self) -> &SignedMinorVector {
        &self.generators
    }

    /// Column relations of the presentation, inside the extended ring.
    pub fn sym_gens(&self) -> &[Polynomial] {
        &self.sym_gens
    }

    /// The defining ideal of the blow-up in the extended ring.
    pub fn rees(&self) -> &IdealHandle {
        &self.rees
    }

    pub fn rees_gb(&self) -> &GroebnerBasis {
        &self.rees_gb
    }

    /// The special-fiber ideal: the contraction of the blow-up ideal to
    /// the fiber variables, presented inside the extended ring.
    pub fn fiber(&self) -> &IdealHandle {
        &self.fiber
    }

    pub fn fiber_gb(&self) -> &GroebnerBasis {
        &self.fiber_gb
    }

    /// The same fiber ideal inside the fiber-only ring.
    pub fn fiber_small_gb(&self) -> &GroebnerBasis {
        &self.fiber_small_gb
    }

    pub fn sym_dim(&self) -> i64 {
        self.sym_dim
    }

    pub fn rees_dim(&self) -> i64 {
        self.rees_dim
    }

    /// The analytic spread: dimension of the special fiber.
    pub fn analytic_spread(&self) -> i64 {
        self.spread
    }

    /// Least degree of a fiber relation; `None` when the fiber is a
    /// polynomial ring.
    pub fn fiber_initial_degree(&self) -> Option<u32> {
        self.fiber_small_gb.initial_degree()
    }
}

/// Compute the blow-up presentation of the ideal of signed maximal minors
/// of `phi` by eliminating the auxiliary variable from the graph ideal
/// of the generator map, then contracting to the fiber variables.
pub fn rees_ideal(
    phi: &LinearMatrix,
    tower: &RingTower,
    budget: &Budget,
) -> Result<ReesPresentation> {
    if phi.rows() != phi.cols() + 1 {
        return Err(Error::Shape(format!(
            "presentation must have shape (n, n-1), got {}x{}",
            phi.rows(),
            phi.cols()
        )));
    }
    if !Ring::same_ring(phi.ring(), &tower.base) {
        return Err(Error::RingMismatch(
            "matrix does not live in the tower's base ring".into(),
        ));
    }
    let n = phi.rows();
    let generators = phi.signed_maximal_minors()?;
    if generators.as_slice().iter().all(|g| g.is_zero()) {
        return Err(Error::ZeroIdeal);
    }

    // Graph of the generator map, with one auxiliary variable.
    let rtw = &tower.rtw;
    let w_idx = rtw.var_index(AUX_VAR)?;
    let fiber_vars = rtw.role_vars(BlockRole::Fiber);
    let mut graph = Vec::with_capacity(n);
    for (i, &ti) in fiber_vars.iter().enumerate() {
        let g = generators.get(i).map_to_ring(rtw)?;
        let w = Polynomial::var(rtw, w_idx);
        graph.push(Polynomial::var(rtw, ti).sub(&w.mul(&g)?)?);
    }
    let graph_handle = IdealHandle::new(rtw.clone(), MonomialOrder::Grevlex, graph);
    let aux_mask = rtw.role_mask(BlockRole::Aux);
    let rees_in_rtw = eliminate(&graph_handle, aux_mask, budget)?;
    let rees = restrict_handle(&rees_in_rtw, &tower.rt)?;
    let rees_gb = buchberger(&rees, budget)?;

    // The column relations always sit inside the blow-up ideal; failing
    // this marks an engine defect, not a property of the input.
    let sym_gens = sym_ideal_gens(phi, &tower.rt)?;
    for s in &sym_gens {
        if !rees_gb.contains(s) {
            return Err(Error::Internal(
                "column relation escapes the blow-up ideal".into(),
            ));
        }
    }

    let fiber = eliminate(&rees, tower.base_mask(), budget)?;
    let fiber_gb = buchberger(&fiber, budget)?;
    let fiber_small = restrict_handle(&fiber, &tower.fiber)?;
    let fiber_small_gb = buchberger(&fiber_small, budget)?;

    let sym_dim = dimension(
        &IdealHandle::new(tower.rt.clone(), MonomialOrder::Grevlex, sym_gens.clone()),
        budget,
    )?;
    let rees_dim = rees_gb.dimension();
    let spread = fiber_small_gb.dimension();

    let d = tower.base.nvars() as i64;
    if rees_dim != d + 1 {
        return Err(Error::Internal(format!(
            "blow-up dimension {rees_dim} differs from {} for a nonzero ideal",
            d + 1
        )));
    }

    Ok(ReesPresentation {
        tower: tower.clone(),
        generators,
        sym_gens,
        rees,
        rees_gb,
        fiber,
        fiber_gb,
        fiber_small_gb,
        sym_dim,
        rees_dim,
        spread,
    })
}

/// The monomial generators of the irrelevant ideal of the base block, as
/// a handle in the given ring.
pub fn base_irrelevant_ideal(ring: &RingRc) -> IdealHandle {
    let gens = ring
        .role_vars(BlockRole::Base)
        .into_iter()
        .map(|v| {
            Polynomial::from_terms(ring, vec![(Monomial::var(v), ring.field().one())])
        })
        .collect();
    IdealHandle::new(ring.clone(), MonomialOrder::Grevlex, gens)
}
