//! Matrices of linear forms and the scalar linear algebra around them.
//!
//! A `LinearMatrix` has entries that are homogeneous linear forms in one
//! named block of ring variables. On top of it sit memoized minor
//! expansion, the signed maximal minors of an almost-square matrix, the
//! dual matrix obtained by rewriting `t * phi` as `x * B`, rank modulo an
//! ideal, and the pivot canonical form that straightens the first variable
//! into a partial identity block.

use crate::error::{Error, Result};
use crate::field::{CoeffField, Scalar};
use crate::groebner::{GroebnerBasis, IdealHandle};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{BlockRole, Ring, RingRc};
use std::collections::HashMap;

// ---------------------------------------------------------------------------
// Scalar matrices

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    field: CoeffField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(field: CoeffField, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: CoeffField, n: usize) -> Self {
        let mut m = ScalarMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: CoeffField, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged or empty scalar matrix".into()));
        }
        Ok(ScalarMatrix {
            field,
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &CoeffField {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = self.field;
        let mut out = ScalarMatrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        let f = self.field;
        for j in 0..self.cols {
            let v = f.mul(self.get(r, j), c);
            self.set(r, j, v);
        }
    }

    /// row i += c * row r
    fn add_row_multiple(&mut self, i: usize, r: usize, c: &Scalar) {
        let f = self.field;
        for j in 0..self.cols {
            let v = f.add(self.get(i, j), &f.mul(self.get(r, j), c));
            self.set(i, j, v);
        }
    }

    /// col j += c * col r
    fn add_col_multiple(&mut self, j: usize, r: usize, c: &Scalar) {
        let f = self.field;
        for i in 0..self.rows {
            let v = f.add(self.get(i, j), &f.mul(self.get(i, r), c));
            self.set(i, j, v);
        }
    }

    /// Invertible `A`, `C` with `A * self * C` equal to the block matrix
    /// with an identity of size `r` in the top-left corner and zeros
    /// elsewhere. Returns `(A, C, r)`; the pivot search is row-major, so
    /// the factorization is deterministic.
    pub fn rank_normal_form(&self) -> (ScalarMatrix, ScalarMatrix, usize) {
        let f = self.field;
        let mut m = self.clone();
        let mut a = ScalarMatrix::identity(f, self.rows);
        let mut c = ScalarMatrix::identity(f, self.cols);
        let mut r = 0;
        while r < self.rows.min(self.cols) {
            let mut pivot = None;
            'search: for i in r..self.rows {
                for j in r..self.cols {
                    if !f.is_zero(m.get(i, j)) {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap_rows(r, pi);
            a.swap_rows(r, pi);
            m.swap_cols(r, pj);
            c.swap_cols(r, pj);
            let inv = f.inv(m.get(r, r)).expect("pivot is nonzero");
            m.scale_row(r, &inv);
            a.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !f.is_zero(m.get(i, r)) {
                    let coef = f.neg(m.get(i, r));
                    m.add_row_multiple(i, r, &coef);
                    a.add_row_multiple(i, r, &coef);
                }
            }
            for j in 0..self.cols {
                if j != r && !f.is_zero(m.get(r, j)) {
                    let coef = f.neg(m.get(r, j));
                    m.add_col_multiple(j, r, &coef);
                    c.add_col_multiple(j, r, &coef);
                }
            }
            r += 1;
        }
        (a, c, r)
    }

    pub fn rank(&self) -> usize {
        self.rank_normal_form().2
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for r in 0..n {
            let Some(pi) = (r..n).find(|&i| !f.is_zero(m.get(i, r))) else {
                return f.zero();
            };
            if pi != r {
                m.swap_rows(r, pi);
                det = f.neg(&det);
            }
            det = f.mul(&det, m.get(r, r));
            let inv = f.inv(m.get(r, r)).expect("pivot is nonzero");
            for i in (r + 1)..n {
                if !f.is_zero(m.get(i, r)) {
                    let coef = f.neg(&f.mul(m.get(i, r), &inv));
                    m.add_row_multiple(i, r, &coef);
                }
            }
        }
        det
    }
}

/// The scalar data of a straightening: a coordinate change on the block
/// variables, a left factor on rows, and a right factor on columns.
#[derive(Debug, Clone)]
pub struct ScalarConjugation {
    pub coords: ScalarMatrix,
    pub left: ScalarMatrix,
    pub right: ScalarMatrix,
}

// ---------------------------------------------------------------------------
// Matrices of linear forms

#[derive(Debug, Clone)]
pub struct LinearMatrix {
    ring: RingRc,
    block: BlockRole,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl LinearMatrix {
    /// Entries must be zero or homogeneous of degree one in the variables
    /// of `block`.
    pub fn new(
        ring: RingRc,
        block: BlockRole,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {rows}x{cols} entries, got {}",
                entries.len()
            )));
        }
        let mask = ring.role_mask(block);
        for (idx, e) in entries.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            assert!(
                Ring::same_ring(e.ring(), &ring),
                "matrix entry outside the ambient ring"
            );
            let linear = e.total_degree() == Some(1)
                && e.terms().iter().all(|(m, _)| m.degree_masked(mask) == 1);
            if !linear {
                return Err(Error::NonlinearEntry {
                    row: idx / cols,
                    col: idx % cols,
                });
            }
        }
        Ok(LinearMatrix {
            ring,
            block,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_strings(
        ring: &RingRc,
        block: BlockRole,
        rows: &[Vec<&str>],
    ) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged matrix".into()));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            for s in row {
                entries.push(crate::parse::parse_polynomial(s, ring)?);
            }
        }
        LinearMatrix::new(ring.clone(), block, nrows, ncols, entries)
    }

    pub fn ring(&self) -> &RingRc {
        &self.ring
    }

    pub fn block(&self) -> BlockRole {
        self.block
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    /// Coefficient of the ring variable `var` in entry `(i, j)`.
    pub fn coeff(&self, i: usize, j: usize, var: usize) -> Scalar {
        self.entry(i, j).coeff(&Monomial::var(var))
    }

    /// All `r x r` minors, rows and columns chosen in ascending index
    /// order, row selection outermost. Size zero yields the unit.
    pub fn minors(&self, r: usize) -> Vec<Polynomial> {
        if r == 0 {
            return vec![Polynomial::one(&self.ring)];
        }
        let mut cache = MinorCache::new(self);
        let mut out = Vec::new();
        for rs in combinations(self.rows, r) {
            for cs in combinations(self.cols, r) {
                out.push(cache.minor(&rs, &cs));
            }
        }
        out
    }

    /// The ideal generated by the `r x r` minors, zero minors dropped.
    pub fn ideal_of_minors(&self, r: usize) -> IdealHandle {
        IdealHandle::new(self.ring.clone(), MonomialOrder::Grevlex, self.minors(r))
    }

    /// The submatrix on the given row and column selections, in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<LinearMatrix> {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.entry(i, j).clone());
            }
        }
        LinearMatrix::new(
            self.ring.clone(),
            self.block,
            rows.len(),
            cols.len(),
            entries,
        )
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let all_rows: Vec<usize> = (0..self.rows).collect();
        let all_cols: Vec<usize> = (0..self.cols).collect();
        Ok(MinorCache::new(self).minor(&all_rows, &all_cols))
    }

    /// For a matrix with one more row than columns: the maximal minors
    /// with alternating signs, so that the row vector of minors multiplies
    /// the matrix to zero.
    pub fn signed_maximal_minors(&self) -> Result<SignedMinorVector> {
        if self.rows != self.cols + 1 {
            return Err(Error::Shape(format!(
                "signed maximal minors need shape (m+1) x m, got {}x{}",
                self.rows, self.cols
            )));
        }
        let mut cache = MinorCache::new(self);
        let all_cols: Vec<usize> = (0..self.cols).collect();
        let mut minors = Vec::with_capacity(self.rows);
        for del in 0..self.rows {
            let rows_sel: Vec<usize> = (0..self.rows).filter(|&i| i != del).collect();
            let mut d = cache.minor(&rows_sel, &all_cols);
            if del % 2 == 1 {
                d = d.neg();
            }
            minors.push(d);
        }
        let v = SignedMinorVector {
            ring: self.ring.clone(),
            minors,
        };
        for j in 0..self.cols {
            let mut acc = Polynomial::zero(&self.ring);
            for i in 0..self.rows {
                acc = acc.add(&v.minors[i].mul(self.entry(i, j))?)?;
            }
            if !acc.is_zero() {
                return Err(Error::Internal(
                    "signed minors do not annihilate the matrix".into(),
                ));
            }
        }
        Ok(v)
    }

    /// The unique matrix `B`, linear in the fiber variables of `rt`, with
    /// `t * self = x * B` where `t` runs over the fiber block and `x` over
    /// the base block. `self` must be base-linear and `rt` must contain a
    /// namesake of every base variable plus one fiber variable per row.
    pub fn jacobian_dual(&self, rt: &RingRc) -> Result<LinearMatrix> {
        if self.block != BlockRole::Base {
            return Err(Error::Shape("dual of a non-base-linear matrix".into()));
        }
        let base_self = self.ring.role_vars(BlockRole::Base);
        let fiber = rt.role_vars(BlockRole::Fiber);
        if fiber.len() != self.rows {
            return Err(Error::Shape(format!(
                "need {} fiber variables, ring has {}",
                self.rows,
                fiber.len()
            )));
        }
        let d = base_self.len();
        let field = *rt.field();
        let mut entries = Vec::with_capacity(d * self.cols);
        for &xi in &base_self {
            for j in 0..self.cols {
                let mut terms = Vec::new();
                for (k, &tk) in fiber.iter().enumerate() {
                    let c = self.coeff(k, j, xi);
                    if !field.is_zero(&c) {
                        terms.push((Monomial::var(tk), c));
                    }
                }
                entries.push(Polynomial::from_terms(rt, terms));
            }
        }
        let dual = LinearMatrix::new(rt.clone(), BlockRole::Fiber, d, self.cols, entries)?;

        // The defining identity, checked entrywise.
        let base_rt: Vec<usize> = base_self
            .iter()
            .map(|&i| rt.var_index(self.ring.name(i)))
            .collect::<Result<Vec<_>>>()?;
        for j in 0..self.cols {
            let mut lhs = Polynomial::zero(rt);
            for (k, &tk) in fiber.iter().enumerate() {
                let e = self.entry(k, j).map_to_ring(rt)?;
                lhs = lhs.add(&Polynomial::var(rt, tk).mul(&e)?)?;
            }
            let mut rhs = Polynomial::zero(rt);
            for (i, &xi) in base_rt.iter().enumerate() {
                rhs = rhs.add(&Polynomial::var(rt, xi).mul(dual.entry(i, j))?)?;
            }
            if lhs != rhs {
                return Err(Error::Internal(
                    "dual matrix identity failed entrywise".into(),
                ));
            }
        }
        Ok(dual)
    }

    /// Largest `r` with an `r x r` minor nonzero after reduction by the
    /// basis (nonzero as a polynomial when no basis is given), with one
    /// witnessing selection.
    pub fn rank_mod(&self, gb: Option<&GroebnerBasis>) -> RankWitness {
        let mut cache = MinorCache::new(self);
        for r in (1..=self.rows.min(self.cols)).rev() {
            for rs in combinations(self.rows, r) {
                for cs in combinations(self.cols, r) {
                    let d = cache.minor(&rs, &cs);
                    if d.is_zero() {
                        continue;
                    }
                    let residue = match gb {
                        Some(g) => g.normal_form(&d),
                        None => d,
                    };
                    if !residue.is_zero() {
                        return RankWitness {
                            rank: r,
                            rows: rs,
                            cols: cs,
                        };
                    }
                }
            }
        }
        RankWitness {
            rank: 0,
            rows: vec![],
            cols: vec![],
        }
    }

    /// Evaluate at a point given by one scalar per block variable; the
    /// entries involve no other variables.
    pub fn evaluate_at_block_point(&self, point: &[Scalar]) -> ScalarMatrix {
        let block_vars = self.ring.role_vars(self.block);
        assert_eq!(point.len(), block_vars.len(), "point has wrong length");
        let field = *self.ring.field();
        let mut vals = vec![field.zero(); self.ring.nvars()];
        for (v, p) in block_vars.iter().zip(point.iter()) {
            vals[*v] = p.clone();
        }
        let mut out = ScalarMatrix::zero(field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.entry(i, j).evaluate(&vals));
            }
        }
        out
    }

    /// `A * self * C` for scalar `A`, `C`.
    pub fn conjugate(&self, a: &ScalarMatrix, c: &ScalarMatrix) -> Result<LinearMatrix> {
        assert_eq!(a.cols(), self.rows, "left factor shape");
        assert_eq!(c.rows(), self.cols, "right factor shape");
        let mut entries = Vec::with_capacity(a.rows() * c.cols());
        for i in 0..a.rows() {
            for j in 0..c.cols() {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.rows {
                    for l in 0..self.cols {
                        let coef = self
                            .ring
                            .field()
                            .mul(a.get(i, k), c.get(l, j));
                        acc = acc.add(&self.entry(k, l).scale(&coef))?;
                    }
                }
                entries.push(acc);
            }
        }
        LinearMatrix::new(self.ring.clone(), self.block, a.rows(), c.cols(), entries)
    }

    /// Apply the coordinate change sending block variable `v` to the
    /// linear form `sum_w T[v][w] * var_w` within the same block.
    pub fn change_coords(&self, t: &ScalarMatrix) -> Result<LinearMatrix> {
        let block_vars = self.ring.role_vars(self.block);
        let d = block_vars.len();
        assert_eq!((t.rows(), t.cols()), (d, d), "coordinate change shape");
        let field = *self.ring.field();
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let coeffs: Vec<Scalar> = block_vars.iter().map(|&v| e.coeff(&Monomial::var(v))).collect();
            let mut terms = Vec::new();
            for (w, &var_w) in block_vars.iter().enumerate() {
                let mut acc = field.zero();
                for (v, cv) in coeffs.iter().enumerate() {
                    acc = field.add(&acc, &field.mul(cv, t.get(v, w)));
                }
                if !field.is_zero(&acc) {
                    terms.push((Monomial::var(var_w), acc));
                }
            }
            entries.push(Polynomial::from_terms(&self.ring, terms));
        }
        LinearMatrix::new(
            self.ring.clone(),
            self.block,
            self.rows,
            self.cols,
            entries,
        )
    }

    /// Do the entries span the full space of linear forms in the block
    /// variables? Equivalent to the entry ideal being the irrelevant ideal
    /// of the block, decided by scalar rank.
    pub fn spans_block(&self) -> bool {
        let vars = self.ring.role_vars(self.block);
        let field = *self.ring.field();
        let mut m = ScalarMatrix::zero(field, self.entries.len(), vars.len());
        for (r, e) in self.entries.iter().enumerate() {
            for (c, &v) in vars.iter().enumerate() {
                m.set(r, c, e.coeff(&Monomial::var(v)));
            }
        }
        m.rank() == vars.len()
    }

    /// Replace the first block variable by a linear combination of the
    /// remaining ones and re-express the matrix in `target`, which lacks
    /// that variable. `coeffs[i]` multiplies block variable `i + 1`.
    pub fn specialize_first(&self, coeffs: &[Scalar], target: &RingRc) -> Result<LinearMatrix> {
        let block_vars = self.ring.role_vars(self.block);
        assert_eq!(coeffs.len(), block_vars.len() - 1, "one coefficient per kept variable");
        let first = self.ring.name(block_vars[0]);
        let mut terms = Vec::new();
        for (c, &v) in coeffs.iter().zip(&block_vars[1..]) {
            let idx = target.var_index(self.ring.name(v))?;
            if !target.field().is_zero(c) {
                terms.push((Monomial::var(idx), c.clone()));
            }
        }
        let image = Polynomial::from_terms(target, terms);
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.substitute(&[(first, image.clone())], target)?);
        }
        LinearMatrix::new(
            target.clone(),
            self.block,
            self.rows,
            self.cols,
            entries,
        )
    }
}

#[derive(Debug, Clone)]
pub struct RankWitness {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Signed maximal minors of an `(m+1) x m` matrix; the vector annihilates
/// the matrix on the left.
#[derive(Debug, Clone)]
pub struct SignedMinorVector {
    ring: RingRc,
    minors: Vec<Polynomial>,
}

impl SignedMinorVector {
    pub fn ring(&self) -> &RingRc {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minors.is_empty()
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.minors[i]
    }

    pub fn as_slice(&self) -> &[Polynomial] {
        &self.minors
    }

    pub fn ideal(&self) -> IdealHandle {
        IdealHandle::new(
            self.ring.clone(),
            MonomialOrder::Grevlex,
            self.minors.clone(),
        )
    }
}

/// Laplace expansion memoized on (row set, column set).
pub struct MinorCache<'a> {
    m: &'a LinearMatrix,
    cache: HashMap<(u32, u32), Polynomial>,
}

impl<'a> MinorCache<'a> {
    pub fn new(m: &'a LinearMatrix) -> Self {
        MinorCache {
            m,
            cache: HashMap::new(),
        }
    }

    pub fn minor(&mut self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len(), "minor of a non-square selection");
        self.minor_masked(mask_of(rows), mask_of(cols))
    }

    fn minor_masked(&mut self, rmask: u32, cmask: u32) -> Polynomial {
        if let Some(p) = self.cache.get(&(rmask, cmask)) {
            return p.clone();
        }
        let r0 = rmask.trailing_zeros() as usize;
        let rest = rmask & (rmask - 1);
        let out = if rest == 0 {
            let c0 = cmask.trailing_zeros() as usize;
            self.m.entry(r0, c0).clone()
        } else {
            let mut acc = Polynomial::zero(&self.m.ring);
            let mut cs = cmask;
            let mut sign_flip = false;
            while cs != 0 {
                let j = cs.trailing_zeros() as usize;
                cs &= cs - 1;
                let e = self.m.entry(r0, j);
                if !e.is_zero() {
                    let sub = self.minor_masked(rest, cmask & !(1 << j));
                    let term = e.mul(&sub).expect("entries share a ring");
                    acc = if sign_flip {
                        acc.sub(&term).expect("entries share a ring")
                    } else {
                        acc.add(&term).expect("entries share a ring")
                    };
                }
                sign_flip = !sign_flip;
            }
            acc
        };
        self.cache.insert((rmask, cmask), out.clone());
        out
    }
}

fn mask_of(idx: &[usize]) -> u32 {
    idx.iter().fold(0u32, |m, &i| m | (1 << i))
}

/// Ascending-index `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
        }
        if cur[i] == i + n - k {
            return out;
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Straighten a base-linear matrix at a point where it drops to rank `u`:
/// after a coordinate change moving the point to the first axis and
/// invertible row and column operations, the first variable appears
/// exactly on the first `u` diagonal entries, with coefficient one.
pub fn canonical_form(
    phi: &LinearMatrix,
    point: &[Scalar],
    u: usize,
) -> Result<(LinearMatrix, ScalarConjugation)> {
    if phi.block() != BlockRole::Base {
        return Err(Error::Shape("straightening needs a base-linear matrix".into()));
    }
    let ring = phi.ring().clone();
    let field = *ring.field();
    let base = ring.role_vars(BlockRole::Base);
    let d = base.len();
    if point.len() != d {
        return Err(Error::Shape(format!(
            "point has {} coordinates, expected {d}",
            point.len()
        )));
    }
    let Some(i0) = point.iter().position(|c| !field.is_zero(c)) else {
        return Err(Error::Hypothesis("straightening point is zero".into()));
    };

    // Coordinate change with the point as first column, completed by
    // standard basis vectors; invertible since the point is nonzero.
    let mut t = ScalarMatrix::zero(field, d, d);
    for (i, c) in point.iter().enumerate() {
        t.set(i, 0, c.clone());
    }
    let mut col = 1;
    for j in 0..d {
        if j != i0 {
            t.set(j, col, field.one());
            col += 1;
        }
    }
    debug_assert!(t.is_invertible());

    let psi = phi.change_coords(&t)?;
    let mut phi1 = ScalarMatrix::zero(field, phi.rows(), phi.cols());
    for i in 0..phi.rows() {
        for j in 0..phi.cols() {
            phi1.set(i, j, psi.coeff(i, j, base[0]));
        }
    }
    let (a, c, r) = phi1.rank_normal_form();
    if r != u {
        return Err(Error::Hypothesis(format!(
            "matrix has rank {r} at the chosen point, expected {u}"
        )));
    }
    let out = psi.conjugate(&a, &c)?;
    debug_assert!(first_var_on_diagonal(&out, u));
    Ok((
        out,
        ScalarConjugation {
            coords: t,
            left: a,
            right: c,
        },
    ))
}

/// Does the first base variable appear exactly on the first `u` diagonal
/// entries, with coefficient one?
pub fn first_var_on_diagonal(m: &LinearMatrix, u: usize) -> bool {
    let base = m.ring().role_vars(BlockRole::Base);
    let field = *m.ring().field();
    let x1 = base[0];
    let one = field.one();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = m.coeff(i, j, x1);
            let want_one = i == j && i < u;
            let ok = if want_one {
                field.is_zero(&field.sub(&c, &one))
            } else {
                field.is_zero(&c)
            };
            if !ok {
                return false;
            }
        }
    }
    true
}
