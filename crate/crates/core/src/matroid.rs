//! Vector matroids given by configurations of labeled column vectors:
//! rank and connectivity functions, boundary spaces, minors by explicit
//! quotient maps, coindependence, and a canonical isomorphism fingerprint
//! for deduplication.

use std::collections::BTreeSet;

use crate::connfn::ConnFn;
use crate::error::{Error, Result};
use crate::ffla::{quotient_map, Elem, Field, Matrix, Subspace};

/// A finite set of labeled vectors in GF(q)^n. Labels are unique; vectors may
/// coincide (parallel elements) or be zero (loops).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    field: Field,
    ambient: usize,
    labels: Vec<String>,
    vectors: Vec<Vec<Elem>>,
}

/// A minor specification: contract `contract`, delete `delete`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinorSpec {
    pub contract: BTreeSet<String>,
    pub delete: BTreeSet<String>,
}

impl MinorSpec {
    pub fn new(
        contract: impl IntoIterator<Item = String>,
        delete: impl IntoIterator<Item = String>,
    ) -> MinorSpec {
        MinorSpec {
            contract: contract.into_iter().collect(),
            delete: delete.into_iter().collect(),
        }
    }
}

impl Configuration {
    pub fn new(
        field: Field,
        ambient: usize,
        labels: Vec<String>,
        vectors: Vec<Vec<Elem>>,
    ) -> Result<Configuration> {
        if labels.len() != vectors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vectors",
                labels.len(),
                vectors.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::OverlappingLabels(format!("duplicate label `{l}`")));
            }
        }
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    v.len()
                )));
            }
            for &e in v {
                if !field.is_element(e) {
                    return Err(Error::FieldMismatch(format!(
                        "{e} is not an element of {field}"
                    )));
                }
            }
        }
        Ok(Configuration {
            field,
            ambient,
            labels,
            vectors,
        })
    }

    /// Columns of a matrix as a configuration, labeled `labels`.
    pub fn from_matrix_columns(m: &Matrix, labels: Vec<String>) -> Result<Configuration> {
        let vectors = (0..m.cols()).map(|c| m.column(c)).collect();
        Configuration::new(m.field().clone(), m.rows(), labels, vectors)
    }

    /// The four-point line U_{2,4} over GF(3): columns (1,0),(0,1),(1,1),(1,2).
    pub fn u24() -> Configuration {
        let f = Field::gf(3).expect("GF(3)");
        Configuration::new(
            f,
            2,
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]],
        )
        .expect("valid configuration")
    }

    /// The free matroid on `n` elements: the identity configuration.
    pub fn free(field: Field, n: usize) -> Configuration {
        let vectors = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        Configuration::new(field, n, labels, vectors).expect("valid configuration")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_set(&self) -> BTreeSet<String> {
        self.labels.iter().cloned().collect()
    }

    pub fn vector(&self, label: &str) -> Result<&Vec<Elem>> {
        let i = self.index_of(label)?;
        Ok(&self.vectors[i])
    }

    pub fn vectors(&self) -> &[Vec<Elem>] {
        &self.vectors
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Bitmask over positions for a label set.
    pub fn mask_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<u32> {
        let mut mask = 0u32;
        for l in labels {
            mask |= 1 << self.index_of(l)?;
        }
        Ok(mask)
    }

    pub fn labels_of_mask(&self, mask: u32) -> BTreeSet<String> {
        (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.labels[i].clone())
            .collect()
    }

    fn vectors_of_mask(&self, mask: u32) -> Vec<Vec<Elem>> {
        (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.vectors[i].clone())
            .collect()
    }

    /// Rank of the vector multiset selected by `mask`.
    pub fn rank_mask(&self, mask: u32) -> usize {
        let rows = self.vectors_of_mask(mask);
        Matrix::from_rows(self.field.clone(), self.ambient, &rows)
            .expect("vectors share the ambient dimension")
            .rank()
    }

    /// Rank of a labeled subset.
    pub fn rank_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<usize> {
        Ok(self.rank_mask(self.mask_of(labels)?))
    }

    pub fn full_rank(&self) -> usize {
        self.rank_mask(self.full_mask())
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.len()) - 1) as u32
    }

    /// Connectivity value r(X) + r(E - X) - r(E) for the subset `mask`.
    pub fn lambda_mask(&self, mask: u32) -> usize {
        self.rank_mask(mask) + self.rank_mask(self.full_mask() & !mask) - self.full_rank()
    }

    pub fn lambda<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<usize> {
        Ok(self.lambda_mask(self.mask_of(labels)?))
    }

    /// The connectivity function as a table over all subsets.
    pub fn lambda_fn(&self) -> Result<ConnFn> {
        // One rank table, two lookups per subset.
        let n = self.len();
        if n > crate::connfn::MAX_GROUND {
            return Err(Error::budget(
                "connectivity table",
                n,
                crate::connfn::MAX_GROUND,
            ));
        }
        let ranks: Vec<usize> = (0..1u64 << n).map(|m| self.rank_mask(m as u32)).collect();
        let full = self.full_mask();
        let total = ranks[full as usize];
        ConnFn::from_eval(self.labels.clone(), |mask| {
            (ranks[mask as usize] + ranks[(full & !mask) as usize] - total) as u32
        })
    }

    /// Boundary space of a subset: span(X) intersected with span(E - X).
    pub fn boundary_mask(&self, mask: u32) -> Result<Subspace> {
        let left = Subspace::span(
            self.field.clone(),
            self.ambient,
            &self.vectors_of_mask(mask),
        )?;
        let right = Subspace::span(
            self.field.clone(),
            self.ambient,
            &self.vectors_of_mask(self.full_mask() & !mask),
        )?;
        left.intersect(&right)
    }

    pub fn boundary<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<Subspace> {
        self.boundary_mask(self.mask_of(labels)?)
    }

    /// Span of the labeled subset.
    pub fn span_mask(&self, mask: u32) -> Result<Subspace> {
        Subspace::span(
            self.field.clone(),
            self.ambient,
            &self.vectors_of_mask(mask),
        )
    }

    /// The minor obtained by deleting `spec.delete` and contracting
    /// `spec.contract`. Contraction applies the quotient map by the span of
    /// the contracted vectors, so the result is again a configuration.
    pub fn minor(&self, spec: &MinorSpec) -> Result<Configuration> {
        if let Some(l) = spec.contract.intersection(&spec.delete).next() {
            return Err(Error::OverlappingLabels(format!(
                "label `{l}` is both contracted and deleted"
            )));
        }
        let contract_mask = self.mask_of(spec.contract.iter().map(|s| s.as_str()))?;
        let delete_mask = self.mask_of(spec.delete.iter().map(|s| s.as_str()))?;
        let contracted_span = self.span_mask(contract_mask)?;
        let q = quotient_map(&contracted_span);
        let keep = self.full_mask() & !contract_mask & !delete_mask;
        let mut labels = Vec::new();
        let mut vectors = Vec::new();
        for i in 0..self.len() {
            if keep >> i & 1 == 1 {
                labels.push(self.labels[i].clone());
                vectors.push(q.apply(&self.vectors[i])?);
            }
        }
        Configuration::new(self.field.clone(), q.codomain_dim(), labels, vectors)
    }

    /// Restriction to a labeled subset, keeping the ambient space.
    pub fn restrict_mask(&self, mask: u32) -> Configuration {
        let mut labels = Vec::new();
        let mut vectors = Vec::new();
        for i in 0..self.len() {
            if mask >> i & 1 == 1 {
                labels.push(self.labels[i].clone());
                vectors.push(self.vectors[i].clone());
            }
        }
        Configuration {
            field: self.field.clone(),
            ambient: self.ambient,
            labels,
            vectors,
        }
    }

    /// Whether deleting `labels` preserves the rank of the ground set.
    pub fn is_coindependent<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<bool> {
        let mask = self.mask_of(labels)?;
        Ok(self.rank_mask(self.full_mask() & !mask) == self.full_rank())
    }

    /// Canonical independence fingerprint: the lexicographically least
    /// independence bit-vector over all label permutations. Two
    /// configurations get the same fingerprint iff they represent isomorphic
    /// matroids.
    pub fn canonical_fingerprint(&self) -> Result<Vec<u64>> {
        let n = self.len();
        if n > 8 {
            return Err(Error::budget("matroid fingerprint", n, 8));
        }
        let subsets = 1usize << n;
        let words = subsets.div_ceil(64);
        let mut indep = vec![false; subsets];
        for (m, slot) in indep.iter_mut().enumerate() {
            *slot = self.rank_mask(m as u32) == (m as u32).count_ones() as usize;
        }
        let mut best: Option<Vec<u64>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, 0, &mut |p| {
            let mut fp = vec![0u64; words];
            for (m, bits) in fp_masks(n, p) {
                if indep[bits] {
                    fp[m / 64] |= 1 << (m % 64);
                }
            }
            if best.as_ref().is_none_or(|b| fp < *b) {
                best = Some(fp);
            }
        });
        Ok(best.unwrap_or_else(|| vec![0u64; words.max(1)]))
    }

    /// Serialize as the matrix text format plus a trailing label line.
    pub fn to_text(&self) -> String {
        let rows: Vec<Vec<Elem>> = (0..self.ambient)
            .map(|r| self.vectors.iter().map(|v| v[r]).collect())
            .collect();
        let m = Matrix::from_rows(self.field.clone(), self.len(), &rows)
            .expect("column-major transpose is well-formed");
        format!("{}labels {}\n", m.to_text(), self.labels.join(" "))
    }

    /// Parse the format written by [`Configuration::to_text`].
    pub fn parse_text(input: &str) -> Result<Configuration> {
        // The matrix parser consumes its own lines; find where labels start.
        let label_line = input
            .lines()
            .enumerate()
            .find(|(_, l)| l.trim_start().starts_with("labels"));
        let Some((lno, line)) = label_line else {
            return Err(Error::parse(
                input.lines().count(),
                1,
                "missing `labels` line",
            ));
        };
        let matrix_part: String = input.lines().take(lno).map(|l| format!("{l}\n")).collect();
        let m = Matrix::parse_text(&matrix_part)?;
        let labels: Vec<String> = line
            .split_whitespace()
            .skip(1)
            .map(|s| s.to_string())
            .collect();
        if labels.len() != m.cols() {
            return Err(Error::parse(
                lno + 1,
                1,
                format!("{} labels for {} columns", labels.len(), m.cols()),
            ));
        }
        Configuration::from_matrix_columns(&m, labels)
    }
}

fn permute_all(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Pairs (subset index, permuted subset index) for a permutation. Index `m`
/// selects positions of the fingerprint order; `bits` selects the
/// corresponding original columns.
fn fp_masks(n: usize, perm: &[usize]) -> Vec<(usize, usize)> {
    (0..1usize << n)
        .map(|m| {
            let mut bits = 0usize;
            for i in 0..n {
                if m >> i & 1 == 1 {
                    bits |= 1 << perm[i];
                }
            }
            (m, bits)
        })
        .collect()
}

/// Lemma-style comparison of the connectivity of a minor against the host:
/// the inequality always holds, and equality is predicted exactly by the rank
/// identity on (X, C, D).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnMinorCheck {
    pub leq: bool,
    pub equality: bool,
    pub predicted_equality: bool,
}

impl ConnMinorCheck {
    pub fn consistent(&self) -> bool {
        self.leq && self.equality == self.predicted_equality
    }
}

/// Compare lambda of X in the minor (contract C, delete D) with lambda of X
/// in the host, and evaluate the equality criterion from the rank identities.
pub fn connminor_check(
    a: &Configuration,
    x: &BTreeSet<String>,
    c: &BTreeSet<String>,
    d: &BTreeSet<String>,
) -> Result<ConnMinorCheck> {
    for (s, t, names) in [(x, c, "x, c"), (x, d, "x, d"), (c, d, "c, d")] {
        if s.intersection(t).next().is_some() {
            return Err(Error::OverlappingLabels(names.to_string()));
        }
    }
    let minor = a.minor(&MinorSpec {
        contract: c.clone(),
        delete: d.clone(),
    })?;
    let lam_minor = minor.lambda(x.iter().map(|s| s.as_str()))?;
    let lam_host = a.lambda(x.iter().map(|s| s.as_str()))?;

    let full = a.full_mask();
    let xm = a.mask_of(x.iter().map(|s| s.as_str()))?;
    let cm = a.mask_of(c.iter().map(|s| s.as_str()))?;
    let dm = a.mask_of(d.iter().map(|s| s.as_str()))?;
    let pred_left = a.rank_mask(xm | cm) == a.rank_mask(xm) + a.rank_mask(cm);
    let pred_right = a.rank_mask(full & !xm) + a.rank_mask(full & !dm)
        == a.full_rank() + a.rank_mask(full & !(xm | dm));

    Ok(ConnMinorCheck {
        leq: lam_minor <= lam_host,
        equality: lam_minor == lam_host,
        predicted_equality: pred_left && pred_right,
    })
}
