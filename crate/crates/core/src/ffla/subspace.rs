use std::fmt;

use crate::error::{Error, Result};
use crate::ffla::field::{Elem, Field};
use crate::ffla::matrix::Matrix;

/// A subspace of GF(q)^n in canonical form.
///
/// The basis is kept as a reduced row-echelon matrix with no zero rows, so
/// two equal subspaces always hold bit-identical bases and the derived
/// `Eq`/`Ord`/`Hash` decide subspace equality directly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Matrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}^{})",
            self.dim(),
            self.field,
            self.ambient
        )?;
        if self.dim() > 0 {
            write!(f, " rows {:?}", self.basis.row_vecs())?;
        }
        Ok(())
    }
}

impl Subspace {
    /// The zero subspace of GF(q)^n.
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zero(field.clone(), 0, ambient),
            field,
            ambient,
        }
    }

    /// The full space GF(q)^n.
    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field.clone(), ambient),
            field,
            ambient,
        }
    }

    /// The span of a set of vectors; `span(&[])` is the zero subspace.
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Elem>]) -> Result<Subspace> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    v.len()
                )));
            }
        }
        let m = Matrix::from_rows(field.clone(), ambient, vectors)?;
        Ok(Self::from_matrix_rows(&m))
    }

    /// The row space of a matrix.
    pub fn from_matrix_rows(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref();
        let rows: Vec<Vec<Elem>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field: m.field().clone(),
            ambient: m.cols(),
            basis: Matrix::from_rows(m.field().clone(), m.cols(), &rows)
                .expect("echelon rows are well-formed"),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Elem>> {
        self.basis.row_vecs()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                "subspaces over different fields".into(),
            ));
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // Reduce v against the echelon basis; membership iff residue is zero.
        self.reduce_vector(v).iter().all(|&e| e == 0)
    }

    /// The canonical coset representative of `v` modulo this subspace.
    pub fn reduce_vector(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut res = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot = (0..self.ambient)
                .find(|&c| self.basis.get(r, c) != 0)
                .expect("no zero rows in basis");
            let factor = res[pivot];
            if factor == 0 {
                continue;
            }
            for c in 0..self.ambient {
                res[c] = f.sub(res[c], f.mul(factor, self.basis.get(r, c)));
            }
        }
        res
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok((0..other.basis.rows()).all(|r| self.contains_vector(other.basis.row(r))))
    }

    /// Sum of subspaces U + V.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = self.basis.stack(&other.basis)?;
        Ok(Self::from_matrix_rows(&stacked))
    }

    /// Intersection of subspaces.
    ///
    /// Solved exactly: a vector lies in both row spaces iff it can be written
    /// as `a^T alpha = b^T beta`, so kernel vectors of `[a^T | -b^T]` give a
    /// spanning set of the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field.clone(), self.ambient));
        }
        let f = &self.field;
        let a_t = self.basis.transpose();
        let mut b_t = other.basis.transpose();
        for r in 0..b_t.rows() {
            for c in 0..b_t.cols() {
                b_t.set(r, c, f.neg(b_t.get(r, c)));
            }
        }
        let system = a_t.concat_cols(&b_t)?;
        let kernel = system.kernel_basis();
        let mut vectors = Vec::with_capacity(kernel.rows());
        for kr in 0..kernel.rows() {
            let alpha = &kernel.row(kr)[..self.basis.rows()];
            let mut v = vec![0; self.ambient];
            for (i, &coef) in alpha.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                for c in 0..self.ambient {
                    v[c] = f.add(v[c], f.mul(coef, self.basis.get(i, c)));
                }
            }
            vectors.push(v);
        }
        Subspace::span(self.field.clone(), self.ambient, &vectors)
    }

    /// All vectors of the subspace, in a deterministic order. The count is
    /// q^dim, so callers keep dim small.
    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let q = f.order() as usize;
        let d = self.dim();
        let total = q.pow(d as u32);
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut v = vec![0; self.ambient];
            let mut rem = idx;
            for r in 0..d {
                let coef = (rem % q) as Elem;
                rem /= q;
                if coef == 0 {
                    continue;
                }
                for c in 0..self.ambient {
                    v[c] = f.add(v[c], f.mul(coef, self.basis.get(r, c)));
                }
            }
            out.push(v);
        }
        out
    }

    /// All subspaces contained in this one, sorted canonically.
    /// Intended for small dimensions (the count grows quickly).
    pub fn subspaces(&self) -> Result<Vec<Subspace>> {
        let d = self.dim();
        if d > 3 {
            return Err(Error::budget("subspace enumeration dimension", d, 3));
        }
        let vectors = self.vectors();
        let nonzero: Vec<&Vec<Elem>> = vectors
            .iter()
            .filter(|v| v.iter().any(|&e| e != 0))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(Subspace::zero(self.field.clone(), self.ambient));
        for mask in 1u32..(1 << nonzero.len().min(31)) {
            // Spans of up to dim-many generators suffice; skip oversize picks.
            if mask.count_ones() as usize > d {
                continue;
            }
            let gens: Vec<Vec<Elem>> = (0..nonzero.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| nonzero[i].clone())
                .collect();
            seen.insert(Subspace::span(self.field.clone(), self.ambient, &gens)?);
        }
        Ok(seen.into_iter().collect())
    }
}

/// A linear map GF(q)^domain -> GF(q)^codomain, stored as a matrix acting on
/// column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> LinearMap {
        LinearMap { matrix }
    }

    pub fn identity(field: Field, n: usize) -> LinearMap {
        LinearMap {
            matrix: Matrix::identity(field, n),
        }
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        self.matrix.apply(v)
    }

    /// Image of a subspace: the span of the images of its basis.
    pub fn apply_subspace(&self, s: &Subspace) -> Result<Subspace> {
        if s.ambient() != self.domain_dim() {
            return Err(Error::DimensionMismatch(format!(
                "mapping a subspace of dimension-{} ambient through a map with domain {}",
                s.ambient(),
                self.domain_dim()
            )));
        }
        let images: Vec<Vec<Elem>> = (0..s.dim())
            .map(|r| self.apply(s.basis().row(r)))
            .collect::<Result<_>>()?;
        Subspace::span(self.field().clone(), self.codomain_dim(), &images)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_matrix_rows(&self.matrix.kernel_basis())
    }

    /// Injectivity on a subspace: the kernel meets it only at zero.
    pub fn is_injective_on(&self, s: &Subspace) -> Result<bool> {
        Ok(self.kernel().intersect(s)?.is_zero())
    }

    pub fn compose_after(&self, first: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap {
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }
}

/// The quotient map GF(q)^ambient -> GF(q)^(ambient - dim c) whose kernel is
/// exactly `c`.
///
/// Vectors are first reduced to their canonical coset representative modulo
/// `c` (which zeroes the pivot coordinates of `c`), then the remaining
/// coordinates are read off. This keeps quotient images concrete so they can
/// feed back into every subspace operation.
pub fn quotient_map(c: &Subspace) -> LinearMap {
    let f = c.field().clone();
    let n = c.ambient();
    let basis = c.basis();
    let pivots: Vec<usize> = (0..basis.rows())
        .map(|r| {
            (0..n)
                .find(|&col| basis.get(r, col) != 0)
                .expect("no zero rows")
        })
        .collect();
    let is_pivot = {
        let mut v = vec![false; n];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut m = Matrix::zero(f.clone(), free.len(), n);
    for (j, &fc) in free.iter().enumerate() {
        m.set(j, fc, 1);
        for (t, &pc) in pivots.iter().enumerate() {
            m.set(j, pc, f.neg(basis.get(t, fc)));
        }
    }
    LinearMap::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::matrix::unit_vector;

    fn gf(q: u32) -> Field {
        Field::gf(q).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Elem> {
        unit_vector(n, i)
    }

    #[test]
    fn duplicate_generators_collapse() {
        let s = Subspace::span(gf(2), 3, &[e(3, 0), e(3, 0)]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains_vector(&e(3, 0)));
    }

    #[test]
    fn empty_span_is_zero() {
        let s = Subspace::span(gf(2), 3, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.is_zero());
    }

    #[test]
    fn two_independent_vectors_fill_the_plane() {
        let s = Subspace::span(gf(2), 2, &[e(2, 0), vec![1, 1]]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s, Subspace::full(gf(2), 2));
    }

    #[test]
    fn span_is_canonical() {
        let f = gf(3);
        let a = Subspace::span(f.clone(), 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::span(f.clone(), 3, &[vec![1, 0, 1], vec![0, 2, 2]]).unwrap();
        // Same span, generated differently: (1,0,1) = (1,2,0) + (0,1,1), scaled.
        assert_eq!(a, b);
        assert_eq!(a.basis_rows(), b.basis_rows());
    }

    #[test]
    fn axis_lines_meet_at_origin() {
        let u = Subspace::span(gf(2), 2, &[e(2, 0)]).unwrap();
        let v = Subspace::span(gf(2), 2, &[e(2, 1)]).unwrap();
        let i = u.intersect(&v).unwrap();
        assert!(i.is_zero());
    }

    #[test]
    fn intersection_is_idempotent() {
        let v = Subspace::span(gf(3), 3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(v.intersect(&v).unwrap(), v);
    }

    #[test]
    fn plane_intersection_matches_brute_force() {
        // <e1,e2> and <e2,e3> in GF(2)^3 meet in <e2>; confirm by scanning
        // all 8 vectors for joint membership.
        let u = Subspace::span(gf(2), 3, &[e(3, 0), e(3, 1)]).unwrap();
        let w = Subspace::span(gf(2), 3, &[e(3, 1), e(3, 2)]).unwrap();
        let mut joint = Vec::new();
        for bits in 0u8..8 {
            let v: Vec<Elem> = (0..3).map(|i| (bits >> i & 1) as Elem).collect();
            if u.contains_vector(&v) && w.contains_vector(&v) {
                joint.push(v);
            }
        }
        let expected = Subspace::span(gf(2), 3, &joint).unwrap();
        let got = u.intersect(&w).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got, Subspace::span(gf(2), 3, &[e(3, 1)]).unwrap());
    }

    #[test]
    fn dimension_is_modular() {
        let f = gf(2);
        let all = Subspace::full(f.clone(), 4).vectors();
        // A deterministic sample of subspace pairs.
        for (i, j, k, l) in [(1, 2, 3, 4), (5, 9, 2, 14), (3, 7, 11, 13), (6, 10, 12, 15)] {
            let u = Subspace::span(f.clone(), 4, &[all[i].clone(), all[j].clone()]).unwrap();
            let v = Subspace::span(f.clone(), 4, &[all[k].clone(), all[l].clone()]).unwrap();
            let lhs = u.dim() + v.dim();
            let rhs = u.sum(&v).unwrap().dim() + u.intersect(&v).unwrap().dim();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quotient_by_zero_is_injective() {
        let c = Subspace::zero(gf(2), 3);
        let q = quotient_map(&c);
        assert_eq!(q.codomain_dim(), 3);
        assert!(q.kernel().is_zero());
    }

    #[test]
    fn quotient_by_full_space_is_zero_map() {
        let c = Subspace::full(gf(3), 2);
        let q = quotient_map(&c);
        assert_eq!(q.codomain_dim(), 0);
    }

    #[test]
    fn quotient_kernel_is_exact() {
        // Ambient GF(2)^3, c = <e2>: distinct images for e1 and e3, zero for e2.
        let c = Subspace::span(gf(2), 3, &[e(3, 1)]).unwrap();
        let q = quotient_map(&c);
        assert_eq!(q.codomain_dim(), 2);
        assert_ne!(q.apply(&e(3, 0)).unwrap(), q.apply(&e(3, 2)).unwrap());
        assert!(q.apply(&e(3, 1)).unwrap().iter().all(|&x| x == 0));
        // map(x) = map(y) iff x - y in c, over all 8 x 8 pairs.
        let f = gf(2);
        let all = Subspace::full(f.clone(), 3).vectors();
        for x in &all {
            for y in &all {
                let diff: Vec<Elem> = x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect();
                let same = q.apply(x).unwrap() == q.apply(y).unwrap();
                assert_eq!(same, c.contains_vector(&diff));
            }
        }
    }

    #[test]
    fn quotient_kernel_exact_over_small_ambients() {
        // For every ambient dimension up to 4 and a spread of kernels, the
        // coset criterion map(x) = map(y) iff x - y in c holds on all pairs.
        for n in 0..=4usize {
            let f = gf(2);
            let all = Subspace::full(f.clone(), n).vectors();
            let mut kernels = vec![vec![]];
            kernels.push(all.iter().skip(1).take(2).cloned().collect::<Vec<_>>());
            kernels.push(all.iter().skip(1).cloned().collect::<Vec<_>>());
            if n >= 2 {
                kernels.push(vec![all[1].clone()]);
            }
            for gens in kernels {
                let c = Subspace::span(f.clone(), n, &gens).unwrap();
                let q = quotient_map(&c);
                assert_eq!(q.codomain_dim(), n - c.dim());
                assert_eq!(q.kernel(), c);
                assert_eq!(q.matrix().rank(), n - c.dim());
                for x in &all {
                    for y in &all {
                        let diff: Vec<Elem> = x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect();
                        let same = q.apply(x).unwrap() == q.apply(y).unwrap();
                        assert_eq!(same, c.contains_vector(&diff));
                    }
                }
            }
        }
    }

    #[test]
    fn subspace_enumeration_of_the_plane() {
        let s = Subspace::full(gf(2), 2);
        let subs = s.subspaces().unwrap();
        // {0}, three lines, the plane.
        assert_eq!(subs.len(), 5);
    }
}
