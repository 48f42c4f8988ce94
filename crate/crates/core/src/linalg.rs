//! Based finite-dimensional vector spaces and exact linear maps.
//!
//! Spaces carry basis labels (and optional grades); maps are stored as sparse
//! columns of exact scalars. Tensor products use the left-factor-major basis
//! order throughout, which makes the tensor strictly associative on the nose:
//! `tensor(tensor(f,g),h)` and `tensor(f,tensor(g,h))` have identical matrices.

use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::exactnum::{Field, Rat, Scalar};
use crate::{Error, Result};

/// Grading value of a basis vector: residues against the grading group's
/// cyclic factors. Stored unreduced; consumers reduce against the moduli.
pub type Grade = Vec<u32>;

pub fn grade_add(a: &Grade, b: &Grade) -> Grade {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

/// A based finite-dimensional vector space over an exact field.
#[derive(Clone, Debug)]
pub struct Space {
    field: Field,
    labels: Arc<Vec<String>>,
    grades: Option<Arc<Vec<Grade>>>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && (Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels)
            && match (&self.grades, &other.grades) {
                (None, None) => true,
                (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a == b,
                _ => false,
            }
    }
}
impl Eq for Space {}

impl Space {
    pub fn new(field: Field, labels: Vec<String>) -> Result<Space> {
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::Parse("basis labels must be pairwise distinct".into()));
        }
        Ok(Space {
            field,
            labels: Arc::new(labels),
            grades: None,
        })
    }

    pub fn graded(field: Field, labels: Vec<String>, grades: Vec<Grade>) -> Result<Space> {
        if grades.len() != labels.len() {
            return Err(Error::Parse("grade list length must equal dimension".into()));
        }
        let mut s = Space::new(field, labels)?;
        s.grades = Some(Arc::new(grades));
        Ok(s)
    }

    /// The strict unit object: tensoring with it is the identity.
    pub fn unit(field: &Field) -> Space {
        Space {
            field: field.clone(),
            labels: Arc::new(vec!["1".to_string()]),
            grades: None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.grades.is_none() && self.labels.len() == 1 && self.labels[0] == "1"
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn grades(&self) -> Option<&[Grade]> {
        self.grades.as_deref().map(|v| v.as_slice())
    }

    pub fn grade(&self, i: usize) -> Option<&Grade> {
        self.grades.as_deref().map(|v| &v[i])
    }

    /// Strict tensor product: the unit is absorbed, otherwise labels compose
    /// with left-major ordering and grades add componentwise.
    pub fn tensor(&self, other: &Space) -> Space {
        assert_eq!(self.field, other.field, "tensor over mismatched fields");
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in self.labels.iter() {
            for b in other.labels.iter() {
                labels.push(format!("{a}\u{2297}{b}"));
            }
        }
        let grades = match (&self.grades, &other.grades) {
            (Some(ga), Some(gb)) => {
                let mut g = Vec::with_capacity(self.dim() * other.dim());
                for a in ga.iter() {
                    for b in gb.iter() {
                        g.push(grade_add(a, b));
                    }
                }
                Some(Arc::new(g))
            }
            (None, None) => None,
            // a graded factor against an ungraded one: treat missing grades as zero
            (Some(ga), None) => {
                let zero = vec![0; ga.first().map(|g| g.len()).unwrap_or(0)];
                let mut g = Vec::with_capacity(self.dim() * other.dim());
                for a in ga.iter() {
                    for _ in 0..other.dim() {
                        g.push(grade_add(a, &zero));
                    }
                }
                Some(Arc::new(g))
            }
            (None, Some(gb)) => {
                let zero = vec![0; gb.first().map(|g| g.len()).unwrap_or(0)];
                let mut g = Vec::with_capacity(self.dim() * other.dim());
                for _ in 0..self.dim() {
                    for b in gb.iter() {
                        g.push(grade_add(&zero, b));
                    }
                }
                Some(Arc::new(g))
            }
        };
        Space {
            field: self.field.clone(),
            labels: Arc::new(labels),
            grades,
        }
    }

    /// n-fold tensor power; the 0-th power is the unit.
    pub fn tensor_power(&self, n: usize) -> Space {
        let mut acc = Space::unit(&self.field);
        for _ in 0..n {
            acc = acc.tensor(self);
        }
        acc
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-dim space over {}", self.dim(), self.field)
    }
}

/// Sparse column: sorted (row, scalar) pairs with nonzero scalars.
pub type SparseCol = Vec<(usize, Scalar)>;

/// An exact linear map between based spaces, stored column-major.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    domain: Space,
    codomain: Space,
    cols: Vec<SparseCol>,
}

impl LinearMap {
    pub fn zero(domain: Space, codomain: Space) -> LinearMap {
        let cols = vec![Vec::new(); domain.dim()];
        LinearMap {
            domain,
            codomain,
            cols,
        }
    }

    pub fn identity(space: &Space) -> LinearMap {
        let one = space.field().one();
        let cols = (0..space.dim()).map(|i| vec![(i, one.clone())]).collect();
        LinearMap {
            domain: space.clone(),
            codomain: space.clone(),
            cols,
        }
    }

    /// Build from sparse columns; rows must be sorted, scalars nonzero.
    pub fn from_cols(domain: Space, codomain: Space, cols: Vec<SparseCol>) -> LinearMap {
        debug_assert_eq!(cols.len(), domain.dim());
        debug_assert!(cols.iter().all(|c| {
            c.windows(2).all(|w| w[0].0 < w[1].0)
                && c.iter().all(|(r, s)| *r < codomain.dim() && !s.is_zero())
        }));
        LinearMap {
            domain,
            codomain,
            cols,
        }
    }

    /// Build from (row, col, scalar) triples.
    pub fn from_triples(
        domain: Space,
        codomain: Space,
        triples: &[(usize, usize, Scalar)],
    ) -> Result<LinearMap> {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); domain.dim()];
        for (r, c, s) in triples {
            if *r >= codomain.dim() || *c >= domain.dim() {
                return Err(Error::Parse(format!(
                    "matrix entry ({r},{c}) outside {}x{}",
                    codomain.dim(),
                    domain.dim()
                )));
            }
            if s.field() != domain.field() {
                return Err(Error::FieldMismatch(
                    "matrix entry field differs from the spaces' field".into(),
                ));
            }
            if !s.is_zero() {
                cols[*c].push((*r, s.clone()));
            }
        }
        for col in &mut cols {
            col.sort_by_key(|(r, _)| *r);
            // merge duplicates
            let mut merged: SparseCol = Vec::with_capacity(col.len());
            for (r, s) in col.drain(..) {
                if let Some(last) = merged.last_mut() {
                    if last.0 == r {
                        last.1 = last.1.add(&s)?;
                        continue;
                    }
                }
                merged.push((r, s));
            }
            merged.retain(|(_, s)| !s.is_zero());
            *col = merged;
        }
        Ok(LinearMap {
            domain,
            codomain,
            cols,
        })
    }

    pub fn from_dense(domain: Space, codomain: Space, rows: Vec<Vec<Scalar>>) -> Result<LinearMap> {
        let mut triples = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                if !s.is_zero() {
                    triples.push((r, c, s.clone()));
                }
            }
        }
        LinearMap::from_triples(domain, codomain, &triples)
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn field(&self) -> &Field {
        self.domain.field()
    }

    pub fn cols(&self) -> &[SparseCol] {
        &self.cols
    }

    pub fn col(&self, j: usize) -> &SparseCol {
        &self.cols[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.cols[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn is_zero_map(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain
            && self.cols.iter().enumerate().all(|(j, c)| {
                c.len() == 1 && c[0].0 == j && c[0].1.is_one()
            })
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Matrix product: self after other (`self . other`).
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.domain != other.codomain {
            return Err(Error::SpaceMismatch(format!(
                "compose: inner spaces differ ({} vs {})",
                self.domain, other.codomain
            )));
        }
        let mut cols = Vec::with_capacity(other.cols.len());
        for col in &other.cols {
            cols.push(self.apply_sparse(col)?);
        }
        Ok(LinearMap {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            cols,
        })
    }

    /// Apply to a sparse column vector.
    pub fn apply_sparse(&self, vec: &[(usize, Scalar)]) -> Result<SparseCol> {
        let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
        for (j, coeff) in vec {
            for (r, s) in &self.cols[*j] {
                let term = s.mul(coeff)?;
                match acc.entry(*r) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(term);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&term)?;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// Kronecker product with left-factor-major ordering of tensor bases.
    pub fn tensor(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                "tensor of maps over different fields".into(),
            ));
        }
        let domain = self.domain.tensor(&other.domain);
        let codomain = self.codomain.tensor(&other.codomain);
        let od = other.domain.dim();
        let oc = other.codomain.dim();
        let mut cols = vec![Vec::new(); domain.dim()];
        for (j1, c1) in self.cols.iter().enumerate() {
            for (j2, c2) in other.cols.iter().enumerate() {
                let col = &mut cols[j1 * od + j2];
                for (r1, s1) in c1 {
                    for (r2, s2) in c2 {
                        col.push((r1 * oc + r2, s1.mul(s2)?));
                    }
                }
                col.sort_by_key(|(r, _)| *r);
            }
        }
        Ok(LinearMap {
            domain,
            codomain,
            cols,
        })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::SpaceMismatch("sum of maps with different spaces".into()));
        }
        let mut cols = Vec::with_capacity(self.cols.len());
        for (a, b) in self.cols.iter().zip(&other.cols) {
            cols.push(sparse_add(a, b, &self.field().one())?);
        }
        Ok(LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            cols,
        })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.add(&other.scale(&self.field().integer(-1))?)
    }

    pub fn scale(&self, scalar: &Scalar) -> Result<LinearMap> {
        let mut cols = Vec::with_capacity(self.cols.len());
        for c in &self.cols {
            let mut col = Vec::with_capacity(c.len());
            for (r, s) in c {
                let v = s.mul(scalar)?;
                if !v.is_zero() {
                    col.push((*r, v));
                }
            }
            cols.push(col);
        }
        Ok(LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            cols,
        })
    }

    /// n-fold self-composition (domain must equal codomain); n = 0 is id.
    pub fn pow(&self, n: usize) -> Result<LinearMap> {
        if self.domain != self.codomain {
            return Err(Error::SpaceMismatch("power of a non-endomorphism".into()));
        }
        let mut acc = LinearMap::identity(&self.domain);
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Exact inverse of a square map; errors when singular.
    pub fn inverse(&self) -> Result<LinearMap> {
        if self.domain.dim() != self.codomain.dim() {
            return Err(Error::SpaceMismatch("inverse of a non-square map".into()));
        }
        let n = self.domain.dim();
        let mut dense = self.to_dense();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { self.field().one() } else { self.field().zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !dense[r][col].is_zero())
                .ok_or_else(|| Error::Singular("matrix is not invertible".into()))?;
            dense.swap(col, pivot);
            inv.swap(col, pivot);
            let p = dense[col][col].clone();
            let pinv = p.inv()?;
            for j in 0..n {
                dense[col][j] = dense[col][j].mul(&pinv)?;
                inv[col][j] = inv[col][j].mul(&pinv)?;
            }
            for r in 0..n {
                if r == col || dense[r][col].is_zero() {
                    continue;
                }
                let f = dense[r][col].clone();
                for j in 0..n {
                    let d = dense[col][j].mul(&f)?;
                    dense[r][j] = dense[r][j].sub(&d)?;
                    let d = inv[col][j].mul(&f)?;
                    inv[r][j] = inv[r][j].sub(&d)?;
                }
            }
        }
        LinearMap::from_dense(self.codomain.clone(), self.domain.clone(), inv)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let zero = self.field().zero();
        let mut rows = vec![vec![zero; self.domain.dim()]; self.codomain.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (r, s) in col {
                rows[*r][j] = s.clone();
            }
        }
        rows
    }

    /// First domain basis vector on which the two maps differ, with both
    /// image vectors rendered. `None` when the maps are equal.
    pub fn first_difference(&self, other: &LinearMap) -> Option<(usize, String, String)> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Some((
                0,
                format!("{} -> {}", self.domain, self.codomain),
                format!("{} -> {}", other.domain, other.codomain),
            ));
        }
        for j in 0..self.cols.len() {
            if self.cols[j] != other.cols[j] {
                return Some((
                    j,
                    render_vector(&self.cols[j], &self.codomain),
                    render_vector(&other.cols[j], &other.codomain),
                ));
            }
        }
        None
    }

    /// Exact rank by fraction-free elimination over Q, ordinary elimination
    /// with canonical-form pivoting over cyclotomic fields.
    pub fn rank(&self) -> usize {
        match self.field() {
            Field::Rational => rank_bareiss(self),
            Field::Cyclotomic(_) => Eliminated::reduce(self.to_dense(), self.field()).rank,
        }
    }

    /// Kernel as subspace data: inclusion ker -> domain plus a retraction.
    pub fn kernel(&self) -> SubquotientData {
        let dense = self.to_dense();
        let elim = Eliminated::reduce(dense, self.field());
        let n = self.domain.dim();
        let field = self.field().clone();
        // free columns give the kernel basis
        let mut basis: Vec<SparseCol> = Vec::new();
        for j in 0..n {
            if elim.pivot_of_col[j].is_some() {
                continue;
            }
            // x_j = 1, pivot variables solve to minus the reduced column entries
            let mut v: Vec<(usize, Scalar)> = vec![(j, field.one())];
            for (prow, pcol) in elim.pivots.iter().enumerate() {
                let coeff = &elim.rref[prow][j];
                if !coeff.is_zero() {
                    v.push((*pcol, coeff.neg()));
                }
            }
            v.sort_by_key(|(r, _)| *r);
            basis.push(v);
        }
        let k = basis.len();
        let ker_space = derived_space(&field, "k", k);
        let inclusion = LinearMap::from_cols(ker_space.clone(), self.domain.clone(), basis.clone());
        // retraction: x -> coefficients on the free columns
        let mut retr_cols: Vec<SparseCol> = vec![Vec::new(); n];
        let free_cols: Vec<usize> = (0..n).filter(|j| elim.pivot_of_col[*j].is_none()).collect();
        for (ki, j) in free_cols.iter().enumerate() {
            retr_cols[*j].push((ki, field.one()));
        }
        let retraction = LinearMap::from_cols(self.domain.clone(), ker_space, retr_cols);
        SubquotientData::Subspace {
            inclusion,
            retraction,
        }
    }

    /// Cokernel as quotient data: projection codomain -> codomain/im plus a
    /// section; projection . self = 0 and projection . section = id.
    pub fn cokernel(&self) -> SubquotientData {
        let field = self.field().clone();
        let m = self.codomain.dim();
        // Row-reduce the transpose: pivot rows of the image span.
        // Equivalently: eliminate self's columns to find pivot ROWS of im(f).
        let dense_t: Vec<Vec<Scalar>> = {
            let d = self.to_dense();
            (0..self.domain.dim())
                .map(|j| (0..m).map(|i| d[i][j].clone()).collect())
                .collect()
        };
        let elim = Eliminated::reduce(dense_t, &field);
        // pivot columns of the transpose = coordinates where the image has pivots
        let image_pivot_rows: Vec<usize> = elim.pivots.clone();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; m];
            for p in &image_pivot_rows {
                v[*p] = true;
            }
            v
        };
        let quot_coords: Vec<usize> = (0..m).filter(|i| !is_pivot[*i]).collect();
        let q = quot_coords.len();
        let quot_space = derived_space(&field, "q", q);
        // section: quotient basis vector k -> e_{quot_coords[k]}
        let section_cols: Vec<SparseCol> = quot_coords
            .iter()
            .map(|&i| vec![(i, field.one())])
            .collect();
        let section = LinearMap::from_cols(quot_space.clone(), self.codomain.clone(), section_cols);
        // projection: reduce e_i against the rref of the image, keep free coords.
        // rref rows (in elim) describe image basis vectors with leading 1 at
        // pivots. e_{pivot row p with rref row r} projects to -sum over free
        // coords of rref[r][coord]... derive by expressing e_i = im-part + sum
        // of section images.
        let mut proj_cols: Vec<SparseCol> = vec![Vec::new(); m];
        for (k, &i) in quot_coords.iter().enumerate() {
            proj_cols[i].push((k, field.one()));
        }
        // For a pivot coordinate p (row index in codomain), the image contains
        // a vector v_r with v_r[p] = 1 and support on later non-pivot coords.
        // Then e_p = v_r - sum_{free i} v_r[i] e_i, so proj(e_p) = -sum v_r[i] proj(e_i).
        for (r, &p) in image_pivot_rows.iter().enumerate() {
            let mut col: SparseCol = Vec::new();
            for (k, &i) in quot_coords.iter().enumerate() {
                let c = &elim.rref[r][i];
                if !c.is_zero() {
                    col.push((k, c.neg()));
                }
            }
            proj_cols[p] = col;
        }
        let projection = LinearMap::from_cols(self.codomain.clone(), quot_space, proj_cols);
        SubquotientData::Quotient {
            projection,
            section,
        }
    }
}

/// Plain vector-space swap V (x) W -> W (x) V (no signs, no braiding).
pub fn plain_swap(v: &Space, w: &Space) -> LinearMap {
    let domain = v.tensor(w);
    let codomain = w.tensor(v);
    let one = v.field().one();
    let (dv, dw) = (v.dim(), w.dim());
    let mut cols = vec![Vec::new(); domain.dim()];
    for i in 0..dv {
        for j in 0..dw {
            cols[i * dw + j] = vec![(j * dv + i, one.clone())];
        }
    }
    LinearMap::from_cols(domain, codomain, cols)
}

pub fn render_vector(v: &SparseCol, space: &Space) -> String {
    if v.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (r, s)) in v.iter().enumerate() {
        if idx > 0 {
            out.push_str(" + ");
        }
        out.push_str(&format!("({})*{}", s, space.label(*r)));
    }
    out
}

fn sparse_add(a: &SparseCol, b: &SparseCol, _one: &Scalar) -> Result<SparseCol> {
    let mut out: SparseCol = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let s = a[i].1.add(&b[j].1)?;
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

fn derived_space(field: &Field, prefix: &str, dim: usize) -> Space {
    let labels = (0..dim).map(|i| format!("{prefix}{i}")).collect();
    Space::new(field.clone(), labels).expect("derived labels are distinct")
}

/// Subspace or quotient presentation with a one-sided inverse.
#[derive(Clone, Debug)]
pub enum SubquotientData {
    Subspace {
        /// Full-column-rank inclusion of the subspace into the ambient space.
        inclusion: LinearMap,
        /// Left inverse: retraction . inclusion = id on the subspace.
        retraction: LinearMap,
    },
    Quotient {
        /// Surjection of the ambient space onto the quotient.
        projection: LinearMap,
        /// Right inverse: projection . section = id on the quotient.
        section: LinearMap,
    },
}

impl SubquotientData {
    pub fn dim(&self) -> usize {
        match self {
            SubquotientData::Subspace { inclusion, .. } => inclusion.domain().dim(),
            SubquotientData::Quotient { projection, .. } => projection.codomain().dim(),
        }
    }

    pub fn space(&self) -> &Space {
        match self {
            SubquotientData::Subspace { inclusion, .. } => inclusion.domain(),
            SubquotientData::Quotient { projection, .. } => projection.codomain(),
        }
    }

    pub fn inclusion(&self) -> Option<&LinearMap> {
        match self {
            SubquotientData::Subspace { inclusion, .. } => Some(inclusion),
            _ => None,
        }
    }

    pub fn retraction(&self) -> Option<&LinearMap> {
        match self {
            SubquotientData::Subspace { retraction, .. } => Some(retraction),
            _ => None,
        }
    }

    pub fn projection(&self) -> Option<&LinearMap> {
        match self {
            SubquotientData::Quotient { projection, .. } => Some(projection),
            _ => None,
        }
    }

    pub fn section(&self) -> Option<&LinearMap> {
        match self {
            SubquotientData::Quotient { section, .. } => Some(section),
            _ => None,
        }
    }
}

/// Row echelon data over an exact field (pivots normalized to 1, full rref).
struct Eliminated {
    rref: Vec<Vec<Scalar>>,
    /// Column of the pivot in each nonzero row, in order.
    pivots: Vec<usize>,
    pivot_of_col: Vec<Option<usize>>,
    rank: usize,
}

impl Eliminated {
    fn reduce(mut rows: Vec<Vec<Scalar>>, field: &Field) -> Eliminated {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut pivots = Vec::new();
        let mut pivot_of_col = vec![None; ncols];
        let mut r = 0;
        for c in 0..ncols {
            if r >= nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let pinv = rows[r][c].inv().expect("pivot is nonzero");
            for j in c..ncols {
                rows[r][j] = rows[r][j].mul(&pinv).unwrap();
            }
            for i in 0..nrows {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let d = rows[r][j].mul(&f).unwrap();
                    rows[i][j] = rows[i][j].sub(&d).unwrap();
                }
            }
            pivot_of_col[c] = Some(r);
            pivots.push(c);
            r += 1;
        }
        let _ = field;
        Eliminated {
            rank: pivots.len(),
            rref: rows,
            pivots,
            pivot_of_col,
        }
    }
}

/// Fraction-free (Bareiss) rank over Q: clears denominators then eliminates
/// over the integers with exact divisions.
fn rank_bareiss(map: &LinearMap) -> usize {
    use num::bigint::BigInt;
    let nrows = map.codomain.dim();
    let ncols = map.domain.dim();
    if nrows == 0 || ncols == 0 {
        return 0;
    }
    // integer matrix: scale each column by the lcm of denominators
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); ncols]; nrows];
    for (j, col) in map.cols.iter().enumerate() {
        let mut lcm = BigInt::one();
        for (_, s) in col {
            let q: &Rat = s.as_rational().expect("rational field");
            lcm = num::integer::lcm(lcm, q.denom().clone());
        }
        for (r, s) in col {
            let q: &Rat = s.as_rational().unwrap();
            m[*r][j] = q.numer() * (&lcm / q.denom());
        }
    }
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for i in (row + 1)..nrows {
            for j in (col + 1)..ncols {
                let num = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                m[i][j] = num / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Dense Bareiss determinant over Q (used by tests as an independent check).
pub fn determinant_bareiss(map: &LinearMap) -> Result<Scalar> {
    let n = map.domain().dim();
    if n != map.codomain().dim() {
        return Err(Error::SpaceMismatch("determinant of non-square map".into()));
    }
    if !map.field().is_rational() {
        return Err(Error::FieldMismatch("bareiss determinant is over Q".into()));
    }
    let mut m: Vec<Vec<Rat>> = map
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|s| s.as_rational().unwrap().clone()).collect())
        .collect();
    let mut sign = Rat::one();
    let mut prev = Rat::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(map.field().zero());
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = Rat::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(Scalar::embed_rational(m[n - 1][n - 1].clone() * sign, map.field()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq() -> Field {
        Field::rational()
    }

    fn space(n: usize) -> Space {
        Space::new(qq(), (0..n).map(|i| format!("e{i}")).collect()).unwrap()
    }

    fn map_of(rows: &[&[i64]], dom: &Space, cod: &Space) -> LinearMap {
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| qq().integer(x)).collect())
            .collect();
        LinearMap::from_dense(dom.clone(), cod.clone(), dense).unwrap()
    }

    #[test]
    fn compose_identity() {
        let v = space(3);
        let f = map_of(&[&[1, 2, 0], &[0, 1, 1], &[5, 0, 1]], &v, &v);
        let id = LinearMap::identity(&v);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
    }

    #[test]
    fn swap_squares_to_identity() {
        let v = space(2);
        let vv = v.tensor(&v);
        // swap on V (x) V
        let mut triples = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                triples.push((j * 2 + i, i * 2 + j, qq().one()));
            }
        }
        let swap = LinearMap::from_triples(vv.clone(), vv.clone(), &triples).unwrap();
        assert!(swap.compose(&swap).unwrap().is_identity());
    }

    #[test]
    fn kernel_of_ones_matrix() {
        let v = space(2);
        let f = map_of(&[&[1, 1], &[1, 1]], &v, &v);
        assert_eq!(f.rank(), 1);
        let ker = f.kernel();
        assert_eq!(ker.dim(), 1);
        let inc = ker.inclusion().unwrap();
        // spanned by (1, -1)
        assert!(f.compose(inc).unwrap().is_zero_map());
        let col = inc.col(0);
        assert_eq!(col.len(), 2);
        assert_eq!(col[0].1, col[1].1.neg());
        // retraction . inclusion = id
        let retr = ker.retraction().unwrap();
        assert!(retr.compose(inc).unwrap().is_identity());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let v = space(2);
        let z = LinearMap::zero(v.clone(), v.clone());
        assert_eq!(z.kernel().dim(), 2);
    }

    #[test]
    fn cokernel_of_identity_is_zero() {
        let v = space(3);
        let id = LinearMap::identity(&v);
        assert_eq!(id.cokernel().dim(), 0);
    }

    #[test]
    fn cokernel_of_column_inclusion() {
        let dom = space(1);
        let cod = space(2);
        let f = map_of(&[&[1], &[0]], &dom, &cod);
        let cok = f.cokernel();
        assert_eq!(cok.dim(), 1);
        let proj = cok.projection().unwrap();
        let sect = cok.section().unwrap();
        assert!(proj.compose(&f).unwrap().is_zero_map());
        assert!(proj.compose(sect).unwrap().is_identity());
        // the quotient class of e1 generates
        assert_eq!(proj.entry(0, 1), qq().one());
    }

    #[test]
    fn rank_nullity() {
        let v3 = space(3);
        let v2 = space(2);
        let f = map_of(&[&[1, 2, 3], &[2, 4, 6]], &v3, &v2);
        assert_eq!(f.rank(), 1);
        assert_eq!(f.kernel().dim(), 2);
        assert_eq!(f.rank() + f.kernel().dim(), f.domain().dim());
    }

    #[test]
    fn tensor_strict_associativity() {
        let v = space(2);
        let f = map_of(&[&[1, 2], &[3, 4]], &v, &v);
        let g = map_of(&[&[0, 1], &[1, 0]], &v, &v);
        let h = map_of(&[&[2, 0], &[0, 5]], &v, &v);
        let left = f.tensor(&g).unwrap().tensor(&h).unwrap();
        let right = f.tensor(&g.tensor(&h).unwrap()).unwrap();
        assert_eq!(left.to_dense(), right.to_dense());
        assert_eq!(left.domain().labels(), right.domain().labels());
    }

    #[test]
    fn interchange_law() {
        let v = space(2);
        let f = map_of(&[&[1, 2], &[3, 4]], &v, &v);
        let g = map_of(&[&[0, 1], &[1, 1]], &v, &v);
        let f2 = map_of(&[&[1, 0], &[2, 1]], &v, &v);
        let g2 = map_of(&[&[1, 1], &[0, 1]], &v, &v);
        let lhs = f.tensor(&g).unwrap().compose(&f2.tensor(&g2).unwrap()).unwrap();
        let rhs = f.compose(&f2).unwrap().tensor(&g.compose(&g2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_is_strict() {
        let v = space(3);
        let unit = Space::unit(&qq());
        assert_eq!(v.tensor(&unit), v);
        assert_eq!(unit.tensor(&v), v);
        assert_eq!(unit.tensor_power(0), unit);
    }

    #[test]
    fn inverse_round_trip() {
        let v = space(3);
        let f = map_of(&[&[2, 1, 0], &[1, 1, 1], &[0, 3, 1]], &v, &v);
        let inv = f.inverse().unwrap();
        assert!(f.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn cyclotomic_kernel() {
        let f4 = Field::cyclotomic(4).unwrap();
        let v = Space::new(f4.clone(), vec!["a".into(), "b".into()]).unwrap();
        let z = f4.zeta().unwrap();
        // map (a, b) -> a + i b has kernel spanned by (i, 1)... over the field:
        let f = LinearMap::from_dense(
            v.clone(),
            Space::new(f4.clone(), vec!["c".into()]).unwrap(),
            vec![vec![f4.one(), z.clone()]],
        )
        .unwrap();
        assert_eq!(f.rank(), 1);
        let ker = f.kernel();
        assert_eq!(ker.dim(), 1);
        assert!(f.compose(ker.inclusion().unwrap()).unwrap().is_zero_map());
    }
}
