//! The 3×3 positivity machinery.
//!
//! For a state `p` and a triple `(a, b, x)`,
//!
//! ```text
//!        ⎡ 1     p(a)  p(x) ⎤
//! Q_p =  ⎢ p(a)‾ 1     p(b) ⎥
//!        ⎣ p(x)‾ p(b)‾ 1    ⎦
//! ```
//!
//! Over the Cayley representation the block matrix with blocks
//! `[[e, a, x], [a*, e, b], [x*, b*, e]]` is PSD iff `x = ab`. Requiring
//! `Q_p ⪰ 0` for every state `p` is weaker; on a finite group it singles out
//! `x ∈ {ab, ba}`. Since every state is a vector state `p_w` of the regular
//! representation, `⟨Q_{p_w} v, v⟩ = ⟨BlockQ (v ⊗ w), v ⊗ w⟩`, and the
//! universal condition is block positivity on simple tensors. Abelian groups
//! are decided exactly through their characters; otherwise a multi-start
//! alternating minimisation searches for a negative simple tensor.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{all_eigenpairs_of_a, PermutationRep};
use crate::group::FiniteGroup;
use crate::linalg::{hermitian_eigen, normalized, CMatrix};
use crate::scalar::{from_pairs, to_pairs, Real};
use crate::state::{characters, extended_cyclic_character_vector, Character, State};

/// `(a, b, x)` with element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub a: usize,
    pub b: usize,
    pub x: usize,
}

impl Triple {
    pub fn new(a: usize, b: usize, x: usize) -> Self {
        Self { a, b, x }
    }

    /// Group elements of the 3×3 pattern `[[e, a, x], [a⁻¹, e, b], [x⁻¹, b⁻¹, e]]`.
    pub fn pattern(&self, g: &FiniteGroup) -> [[usize; 3]; 3] {
        let e = g.identity();
        [
            [e, self.a, self.x],
            [g.inv(self.a), e, self.b],
            [g.inv(self.x), g.inv(self.b), e],
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix<T> {
    pub entries: CMatrix<T>,
    pub triple: Triple,
}

impl<T: Real> QMatrix<T> {
    pub fn min_eigenvalue(&self) -> T {
        crate::linalg::min_eigenvalue(&self.entries)
    }

    pub fn is_psd(&self, tol: T) -> bool {
        crate::linalg::is_psd(&self.entries, tol)
    }
}

/// `Q_p` from the values of a positive definite function.
pub fn qmatrix<T: Real>(p: &[Complex<T>], triple: Triple) -> QMatrix<T> {
    QMatrix { entries: q_from_values(p[triple.a], p[triple.b], p[triple.x]), triple }
}

fn q_from_values<T: Real>(pa: Complex<T>, pb: Complex<T>, px: Complex<T>) -> CMatrix<T> {
    let one = Complex::one();
    CMatrix::from_rows(&[
        vec![one, pa, px],
        vec![pa.conj(), one, pb],
        vec![px.conj(), pb.conj(), one],
    ])
}

/// `det Q_p = 1 + 2Re[p(a)p(b)p(x)‾] − |p(x)|² − |p(b)|² − |p(a)|²`.
pub fn det_q<T: Real>(p: &[Complex<T>], triple: Triple) -> T {
    det_from_values(p[triple.a], p[triple.b], p[triple.x])
}

pub fn det_from_values<T: Real>(pa: Complex<T>, pb: Complex<T>, px: Complex<T>) -> T {
    let two = T::of(2.0);
    T::one() + two * (pa * pb * px.conj()).re - px.norm_sqr() - pb.norm_sqr() - pa.norm_sqr()
}

/// `(1 − |p(a)|²)(1 − |p(b)|²) − |p(x) − p(a)p(b)|²`.
pub fn fundamental_gap<T: Real>(p: &[Complex<T>], triple: Triple) -> T {
    let (pa, pb, px) = (p[triple.a], p[triple.b], p[triple.x]);
    (T::one() - pa.norm_sqr()) * (T::one() - pb.norm_sqr()) - (px - pa * pb).norm_sqr()
}

/// `3n × 3n` block matrix over the Cayley representation.
#[derive(Debug, Clone)]
pub struct BlockQ<T> {
    pub matrix: CMatrix<T>,
    pub triple: Triple,
}

impl<T: Real> BlockQ<T> {
    pub fn new(rep: &PermutationRep, triple: Triple) -> Self {
        let n = rep.dim();
        let pattern = triple.pattern(rep.group());
        let mut matrix = CMatrix::zeros(3 * n, 3 * n);
        for (i, row) in pattern.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                matrix.set_block(i * n, j * n, &rep.matrix::<T>(g));
            }
        }
        Self { matrix, triple }
    }

    pub fn min_eigenvalue(&self) -> T {
        crate::linalg::min_eigenvalue(&self.matrix)
    }
}

/// Whether `BlockQ` is PSD: `λ_min ≥ −tol · 3n`.
pub fn block_oracle<T: Real>(rep: &PermutationRep, triple: Triple, tol: T) -> bool {
    crate::linalg::is_psd(&BlockQ::<T>::new(rep, triple).matrix, tol)
}

/// `‖M² − 3M‖_F` for `M = BlockQ(a, b, ab)`; zero when `M/3` is a projection.
pub fn projection_check<T: Real>(rep: &PermutationRep, a: usize, b: usize) -> T {
    projection_residual(rep, Triple::new(a, b, rep.group().mul(a, b)))
}

/// `‖M² − 3M‖_F` for an arbitrary triple.
pub fn projection_residual<T: Real>(rep: &PermutationRep, triple: Triple) -> T {
    let m = BlockQ::<T>::new(rep, triple).matrix;
    let sq = &m * &m;
    (&sq - &m.scale_real(T::of(3.0))).frobenius_norm()
}

/// `Σ_ij v̄_i v_j π(q_ij)`, the compression of `BlockQ` to `v ⊗ ℂⁿ`.
fn compression<T: Real>(rep: &PermutationRep, pattern: &[[usize; 3]; 3], v: &[Complex<T>]) -> CMatrix<T> {
    let n = rep.dim();
    let mut m = CMatrix::zeros(n, n);
    for (i, row) in pattern.iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            let c = v[i].conj() * v[j];
            for (r, &k) in rep.index_map(g).iter().enumerate() {
                m[(r, k)] += c;
            }
        }
    }
    m
}

/// `v* Q_{p_w} v` for the vector state of `w`.
pub fn simple_tensor_form<T: Real>(
    rep: &PermutationRep,
    triple: Triple,
    v: &[Complex<T>],
    w: &[Complex<T>],
) -> T {
    let pa = rep.matrix_element(triple.a, w, w);
    let pb = rep.matrix_element(triple.b, w, w);
    let px = rep.matrix_element(triple.x, w, w);
    let pe = crate::linalg::inner(w, w);
    let mut q = q_from_values(pa, pb, px);
    for i in 0..3 {
        q[(i, i)] = pe;
    }
    q.quadratic_form(v).re
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositivityConfig {
    /// PSD threshold scale; matrices pass when `λ_min ≥ −tol · dim`.
    pub tol: f64,
    /// The search declares a refutation only below `−eps`.
    pub eps: f64,
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Also start from eigenvectors of `π(a)`, `π(b)` and from characters of
    /// `⟨a⟩`, `⟨b⟩` extended by zero.
    pub warm_starts: bool,
}

impl Default for PositivityConfig {
    fn default() -> Self {
        Self { tol: 1e-9, eps: 1e-6, restarts: 32, max_iters: 500, seed: 0, warm_starts: true }
    }
}

/// Machine-checkable refutation of `Q_p ⪰ 0` for one triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub group_hash: String,
    pub a: usize,
    pub b: usize,
    pub x: usize,
    /// Unit vector `w` over the natural Cayley representation; the state is
    /// `p(g) = ⟨π(g)w, w⟩`.
    pub state: Vec<[f64; 2]>,
    /// Unit witness `v ∈ ℂ³`.
    pub witness: Vec<[f64; 2]>,
    /// `v* Q_p v`.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertificateError {
    #[error("certificate is for group {expected}, got {found}")]
    GroupMismatch { expected: String, found: String },
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("recomputed value {recomputed} differs from recorded {recorded}")]
    ValueMismatch { recorded: f64, recomputed: f64 },
    #[error("value {0} is not below the refutation threshold")]
    NotNegative(f64),
}

/// Agreement required between a recorded and re-evaluated value.
pub const RECHECK_TOL: f64 = 1e-10;

impl Certificate {
    pub fn triple(&self) -> Triple {
        Triple::new(self.a, self.b, self.x)
    }

    /// Re-evaluates the form from the serialized data alone.
    pub fn evaluate(&self, group: &FiniteGroup) -> Result<f64, CertificateError> {
        let found = group.table_hash();
        if found != self.group_hash {
            return Err(CertificateError::GroupMismatch { expected: self.group_hash.clone(), found });
        }
        let n = group.order();
        if self.state.len() != n || self.witness.len() != 3 {
            return Err(CertificateError::Malformed(format!(
                "expected {n} state and 3 witness entries, found {} and {}",
                self.state.len(),
                self.witness.len()
            )));
        }
        if [self.a, self.b, self.x].iter().any(|&g| g >= n) {
            return Err(CertificateError::Malformed("element index out of range".into()));
        }
        let w: Vec<Complex<f64>> = from_pairs(&self.state);
        let v: Vec<Complex<f64>> = from_pairs(&self.witness);
        for (name, vec) in [("state", &w), ("witness", &v)] {
            let nrm = crate::linalg::norm(vec);
            if (nrm - 1.0).abs() > 1e-9 {
                return Err(CertificateError::Malformed(format!("{name} has norm {nrm}")));
            }
        }
        let rep = PermutationRep::natural(group);
        Ok(simple_tensor_form(&rep, self.triple(), &v, &w))
    }

    /// Checks that the recorded value reproduces and lies below `−eps`.
    pub fn recheck(&self, group: &FiniteGroup, eps: f64) -> Result<f64, CertificateError> {
        let recomputed = self.evaluate(group)?;
        if (recomputed - self.value).abs() > RECHECK_TOL {
            return Err(CertificateError::ValueMismatch { recorded: self.value, recomputed });
        }
        if recomputed >= -eps {
            return Err(CertificateError::NotNegative(recomputed));
        }
        Ok(recomputed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Characters of an abelian group.
    Exact,
    /// Multi-start simple-tensor search.
    Search,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Holds { method: Method, best: f64 },
    Refuted(Certificate),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Refuted(c) => Some(c),
            Verdict::Holds { .. } => None,
        }
    }
}

/// Per-group data reused across many positivity queries.
#[derive(Debug, Clone)]
pub struct Analyzer<T> {
    group: FiniteGroup,
    rep: PermutationRep,
    characters: Option<Vec<Character<T>>>,
    hash: String,
}

impl<T: Real> Analyzer<T> {
    pub fn new(group: &FiniteGroup) -> Self {
        let characters = if group.is_abelian() { characters(group).ok() } else { None };
        Self {
            group: group.clone(),
            rep: PermutationRep::natural(group),
            characters,
            hash: group.table_hash(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rep(&self) -> &PermutationRep {
        &self.rep
    }

    pub fn characters(&self) -> Option<&[Character<T>]> {
        self.characters.as_deref()
    }

    /// Decides `Q_p ⪰ 0 for all states p`.
    pub fn universal_positivity(&self, triple: Triple, config: &PositivityConfig) -> Verdict {
        match &self.characters {
            Some(chars) => self.character_check(chars, triple, config),
            None => self.search(triple, config),
        }
    }

    /// Exact decision through all characters.
    pub fn character_check(&self, chars: &[Character<T>], triple: Triple, config: &PositivityConfig) -> Verdict {
        let tol = T::of(config.tol);
        let mut best = T::infinity();
        for chi in chars {
            let q = qmatrix(&chi.values, triple);
            let eig = hermitian_eigen(&q.entries);
            let lo = eig.min_value();
            if lo < -tol * T::of(3.0) {
                let w = chi.vector();
                let v = eig.vector(0);
                let value = simple_tensor_form(&self.rep, triple, &v, &w);
                return Verdict::Refuted(self.certificate(triple, &w, &v, value));
            }
            best = best.min(lo);
        }
        Verdict::Holds { method: Method::Exact, best: best.as_f64() }
    }

    /// Multi-start alternating minimisation of `v* Q_{p_w} v` over unit
    /// `v ∈ ℂ³`, `w ∈ ℂⁿ`.
    pub fn search(&self, triple: Triple, config: &PositivityConfig) -> Verdict {
        let starts = self.starting_points(triple, config);
        let pattern = triple.pattern(&self.group);
        let mut best: Option<(T, Vec<Complex<T>>, Vec<Complex<T>>)> = None;
        for w0 in starts {
            let (value, v, w) = self.alternate(&pattern, triple, w0, config);
            if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
                best = Some((value, v, w));
            }
            if value < -T::of(config.eps) {
                break;
            }
        }
        let (value, v, w) = best.expect("at least one start");
        if value < -T::of(config.eps) {
            let exact = simple_tensor_form(&self.rep, triple, &v, &w);
            Verdict::Refuted(self.certificate(triple, &w, &v, exact))
        } else {
            Verdict::Holds { method: Method::Search, best: value.as_f64() }
        }
    }

    fn starting_points(&self, triple: Triple, config: &PositivityConfig) -> Vec<Vec<Complex<T>>> {
        let n = self.group.order();
        let mut starts = Vec::new();
        if config.warm_starts {
            for g in [triple.a, triple.b] {
                starts.extend(all_eigenpairs_of_a::<T>(&self.rep, g).into_iter().map(|p| p.vector));
                let order = self.group.element_order(g);
                starts.extend((0..order).map(|j| extended_cyclic_character_vector(&self.rep, g, j)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.seed, &[triple.a, triple.b, triple.x]));
        for _ in 0..config.restarts {
            let raw: Vec<Complex<T>> = (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex::new(T::of(re), T::of(im))
                })
                .collect();
            starts.push(normalized(&raw).expect("nonzero gaussian vector"));
        }
        starts
    }

    fn alternate(
        &self,
        pattern: &[[usize; 3]; 3],
        triple: Triple,
        mut w: Vec<Complex<T>>,
        config: &PositivityConfig,
    ) -> (T, Vec<Complex<T>>, Vec<Complex<T>>) {
        let mut prev = T::infinity();
        let mut v = vec![Complex::zero(); 3];
        let mut value = T::infinity();
        for _ in 0..config.max_iters.max(1) {
            let state = State::vector_unchecked(&self.rep, &w);
            let eig3 = hermitian_eigen(&qmatrix(state.values(), triple).entries);
            v = eig3.vector(0);
            let eign = hermitian_eigen(&compression(&self.rep, pattern, &v));
            w = eign.vector(0);
            value = eign.min_value();
            if prev - value < T::of(1e-12) {
                break;
            }
            prev = value;
        }
        (value, v, w)
    }

    fn certificate(&self, triple: Triple, w: &[Complex<T>], v: &[Complex<T>], value: T) -> Certificate {
        Certificate {
            group_hash: self.hash.clone(),
            a: triple.a,
            b: triple.b,
            x: triple.x,
            state: to_pairs(w),
            witness: to_pairs(v),
            value: value.as_f64(),
        }
    }

    /// `{x : universal positivity holds for (a, b, x)}`, sorted.
    pub fn candidate_products(&self, a: usize, b: usize, config: &PositivityConfig) -> Vec<usize> {
        self.scan_candidates(a, b, config).into_iter().filter(|(_, v)| v.holds()).map(|(x, _)| x).collect()
    }

    /// Verdicts for every `x`, in element order.
    pub fn scan_candidates(&self, a: usize, b: usize, config: &PositivityConfig) -> Vec<(usize, Verdict)> {
        self.group
            .elements()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|x| (x, self.universal_positivity(Triple::new(a, b, x), config)))
            .collect()
    }
}

/// Deterministic seed derivation for per-task RNG streams.
pub fn mix_seed(seed: u64, parts: &[usize]) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &p in parts {
        h = splitmix(h ^ (p as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9));
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
