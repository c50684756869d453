//! Cayley permutation representations and the analytic eigenvectors of `π(a)`.
//!
//! For an enumeration `g_1, …, g_n` the representation is
//! `π(g)_{jk} = 1` iff `g = g_j⁻¹ g_k`, so `(π(g)ξ)_j = ξ_k` where
//! `g_k = g_j g`. Under a coset enumeration `H, βH, …` of `H = ⟨a⟩` each
//! diagonal block of `π(a)` maps position `j` to `j + 1` cyclically: ones on
//! the superdiagonal with a one in the bottom-left corner. A vector with
//! `ξ_{j+1} = λ ξ_j` along every such cycle is therefore an eigenvector with
//! eigenvalue `λ` itself (not `λ̄`).

use num_complex::Complex;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::FiniteGroup;
use crate::linalg::{inner, norm, CMatrix};
use crate::scalar::{root_of_unity, Real};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("enumeration is not a permutation of the group elements")]
    BadEnumeration,
    #[error("block ({j}, {k}) of size {size} is out of range for dimension {dim}")]
    IndexOutOfRange { j: usize, k: usize, size: usize, dim: usize },
    #[error("eigenvalue is not an n_a-th root of unity")]
    NotARootOfUnity,
    #[error("dimension {dim} is smaller than two blocks of size {block}")]
    DimensionTooSmall { dim: usize, block: usize },
}

/// Cayley representation stored as index maps; dense matrices on demand.
#[derive(Debug, Clone)]
pub struct PermutationRep {
    group: FiniteGroup,
    enumeration: Vec<usize>,
    position: Vec<usize>,
    /// `maps[g][j] = k` where `π(g)_{jk} = 1`.
    maps: Vec<Vec<usize>>,
}

impl PermutationRep {
    pub fn new(group: &FiniteGroup, enumeration: Vec<usize>) -> Result<Self, CayleyError> {
        let n = group.order();
        if enumeration.len() != n {
            return Err(CayleyError::BadEnumeration);
        }
        let mut position = vec![usize::MAX; n];
        for (j, &g) in enumeration.iter().enumerate() {
            if g >= n || position[g] != usize::MAX {
                return Err(CayleyError::BadEnumeration);
            }
            position[g] = j;
        }
        let maps = group
            .elements()
            .map(|g| enumeration.iter().map(|&gj| position[group.mul(gj, g)]).collect())
            .collect();
        Ok(Self { group: group.clone(), enumeration, position, maps })
    }

    /// Representation for the natural enumeration `0, 1, …, n−1`.
    pub fn natural(group: &FiniteGroup) -> Self {
        Self::new(group, group.elements().collect()).expect("natural enumeration")
    }

    /// Representation for the coset enumeration of `⟨a⟩`, with `b` as the
    /// second coset representative when `b ∉ ⟨a⟩`.
    pub fn for_cosets(group: &FiniteGroup, a: usize, b: Option<usize>) -> Self {
        let en = group.cosets_of_cyclic(a, b).enumeration;
        Self::new(group, en).expect("coset enumeration is a permutation")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.enumeration.len()
    }

    pub fn enumeration(&self) -> &[usize] {
        &self.enumeration
    }

    /// Index of element `g` in the enumeration.
    pub fn position(&self, g: usize) -> usize {
        self.position[g]
    }

    pub fn index_map(&self, g: usize) -> &[usize] {
        &self.maps[g]
    }

    pub fn matrix<T: Real>(&self, g: usize) -> CMatrix<T> {
        let map = &self.maps[g];
        CMatrix::from_fn(self.dim(), self.dim(), |j, k| {
            if map[j] == k {
                Complex::one()
            } else {
                Complex::zero()
            }
        })
    }

    /// `π(g) ξ` in O(n).
    pub fn apply<T: Real>(&self, g: usize, xi: &[Complex<T>]) -> Vec<Complex<T>> {
        self.maps[g].iter().map(|&k| xi[k]).collect()
    }

    /// `⟨π(g) ξ, η⟩`.
    pub fn matrix_element<T: Real>(&self, g: usize, xi: &[Complex<T>], eta: &[Complex<T>]) -> Complex<T> {
        self.maps[g].iter().zip(eta).map(|(&k, &e)| xi[k] * e.conj()).sum()
    }

    /// Whether `π(g)` and `π(h)` share a nonzero entry; equals `g == h`.
    pub fn agree_nonzero(&self, g: usize, h: usize) -> bool {
        self.maps[g].iter().zip(&self.maps[h]).any(|(a, b)| a == b)
    }

    /// Cycles of the permutation `j ↦ maps[a][j]`, each starting at its
    /// smallest position.
    pub fn cycles(&self, a: usize) -> Vec<Vec<usize>> {
        let map = &self.maps[a];
        let mut seen = vec![false; self.dim()];
        let mut out = Vec::new();
        for start in 0..self.dim() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = map[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Row-major `[re, im]` dump of `π(g)`.
    pub fn matrix_dump(&self, g: usize) -> Vec<Vec<[f64; 2]>> {
        let map = &self.maps[g];
        (0..self.dim())
            .map(|j| (0..self.dim()).map(|k| if map[j] == k { [1.0, 0.0] } else { [0.0, 0.0] }).collect())
            .collect()
    }
}

/// The `(j, k)` block (1-based) of side `size`.
pub fn block<T: Real>(m: &CMatrix<T>, j: usize, k: usize, size: usize) -> Result<CMatrix<T>, CayleyError> {
    let dim = m.rows();
    let in_range = |i: usize| i >= 1 && size > 0 && dim.is_multiple_of(size) && i * size <= dim;
    if !in_range(j) || !in_range(k) || !m.is_square() {
        return Err(CayleyError::IndexOutOfRange { j, k, size, dim });
    }
    Ok(m.submatrix((j - 1) * size, (k - 1) * size, size, size))
}

pub fn nonzero_count<T: Real>(m: &CMatrix<T>) -> usize {
    m.as_slice().iter().filter(|z| !z.is_zero()).count()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T> {
    pub value: Complex<T>,
    pub vector: Vec<Complex<T>>,
}

impl<T: Real> EigenPair<T> {
    /// `‖π(a)ξ − λξ‖`.
    pub fn residual(&self, rep: &PermutationRep, a: usize) -> T {
        let ax = rep.apply(a, &self.vector);
        let diff: Vec<Complex<T>> = ax.iter().zip(&self.vector).map(|(&u, &v)| u - self.value * v).collect();
        norm(&diff)
    }
}

fn root_tolerance<T: Real>() -> T {
    T::of(1e-10).max(T::epsilon() * T::of(64.0))
}

/// Two-block eigenvector
/// `ξ_j = λ^j e^{iφ}/√(2n_a)` for `j = 1..n_a`,
/// `ξ_j = λ^j/√(2n_a)` for `j = n_a+1..2n_a`, zero beyond.
///
/// Under a coset enumeration of `⟨a⟩` this is a unit eigenvector of `π(a)`
/// with eigenvalue `λ` (see the module docs for the shift convention).
pub fn two_block_eigenvector<T: Real>(
    block_size: usize,
    lambda: Complex<T>,
    phi: T,
    total_dim: usize,
) -> Result<Vec<Complex<T>>, CayleyError> {
    if total_dim < 2 * block_size {
        return Err(CayleyError::DimensionTooSmall { dim: total_dim, block: block_size });
    }
    if (lambda.powu(block_size as u32) - Complex::one()).norm() > root_tolerance::<T>() {
        return Err(CayleyError::NotARootOfUnity);
    }
    let scale = T::one() / T::of_usize(2 * block_size).sqrt();
    let phase = Complex::from_polar(T::one(), phi);
    let mut xi = vec![Complex::zero(); total_dim];
    for j in 1..=2 * block_size {
        let v = lambda.powu(j as u32) * scale;
        xi[j - 1] = if j <= block_size { v * phase } else { v };
    }
    Ok(xi)
}

/// Analytic eigenbasis of `π(a)`: one vector per cycle of `π(a)` and per
/// `n_a`-th root of unity, ordered by root exponent and then by cycle.
pub fn all_eigenpairs_of_a<T: Real>(rep: &PermutationRep, a: usize) -> Vec<EigenPair<T>> {
    let cycles = rep.cycles(a);
    let na = rep.group().element_order(a);
    let scale = T::one() / T::of_usize(na).sqrt();
    let mut out = Vec::with_capacity(rep.dim());
    for k in 0..na {
        let lambda: Complex<T> = root_of_unity(k as i64, na);
        for cycle in &cycles {
            debug_assert_eq!(cycle.len(), na);
            let mut v = vec![Complex::zero(); rep.dim()];
            for (i, &pos) in cycle.iter().enumerate() {
                v[pos] = root_of_unity::<T>((k * i) as i64, na) * scale;
            }
            out.push(EigenPair { value: lambda, vector: v });
        }
    }
    out
}

/// Unitary whose columns are the eigenvectors, with the matching eigenvalues.
pub fn eigenbasis<T: Real>(pairs: &[EigenPair<T>]) -> (CMatrix<T>, Vec<Complex<T>>) {
    let n = pairs.len();
    let u = CMatrix::from_fn(n, n, |r, c| pairs[c].vector[r]);
    (u, pairs.iter().map(|p| p.value).collect())
}

/// Groups eigenpairs by eigenvalue (within `1e-9`), preserving order.
pub fn eigenvalue_classes<T: Real>(pairs: &[EigenPair<T>]) -> Vec<(Complex<T>, Vec<usize>)> {
    let mut classes: Vec<(Complex<T>, Vec<usize>)> = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        match classes.iter_mut().find(|(v, _)| (*v - p.value).norm() < T::of(1e-9)) {
            Some((_, members)) => members.push(i),
            None => classes.push((p.value, vec![i])),
        }
    }
    classes
}

/// Largest deviation of the Gram matrix of the eigenvectors from identity.
pub fn gram_defect<T: Real>(pairs: &[EigenPair<T>]) -> T {
    let mut worst = T::zero();
    for (i, p) in pairs.iter().enumerate() {
        for (j, q) in pairs.iter().enumerate() {
            let target = if i == j { Complex::one() } else { Complex::zero() };
            worst = worst.max((inner(&p.vector, &q.vector) - target).norm());
        }
    }
    worst
}
