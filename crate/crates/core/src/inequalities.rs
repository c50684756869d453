//! Eigenstate inequalities obtained from `det Q_p ≥ 0` along paths of vector
//! states.
//!
//! Along `ξ_t = cos(t) ξ + sin(t) η` each matrix element is a trigonometric
//! quadratic,
//!
//! ```text
//! ĝ(t)  = A cos²t + B sin t cos t + C sin²t,
//!         A = ⟨gξ, ξ⟩,  B = ⟨gξ, η⟩ + ⟨gη, ξ⟩,  C = ⟨gη, η⟩
//! ĝ'(t) = (C − A) sin 2t + B cos 2t
//! ĝ''(t) = 2(C − A) cos 2t − 2B sin 2t
//! ```
//!
//! so `f(t) = det Q_{p_t}` has closed-form derivatives. When `aξ = λξ`,
//! `η ⊥ ξ` and `x̂(0) = λ b̂(0)`, expanding `f''(0)` gives exactly
//! `f''(0) = 2[(|b̂(0)|² − 1) Re(λ̄ â''(0)) − |x̂'(0) − λ b̂'(0)|²]`.

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cayley::{all_eigenpairs_of_a, eigenbasis, eigenvalue_classes, EigenPair, PermutationRep};
use crate::group::FiniteGroup;
use crate::linalg::{inner, norm, normalized, CMatrix};
use crate::positivity::{det_from_values, mix_seed, Triple};
use crate::scalar::Real;

/// Gaps below this count as violations.
pub const GAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InequalityError {
    #[error("η is not orthogonal to ξ (|⟨η, ξ⟩| = {0})")]
    NotOrthogonal(f64),
    #[error("η is not a unit vector (‖η‖ = {0})")]
    NotUnit(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A path `ξ_t = cos(t) ξ + sin(t) η` through vector states of `rep`.
#[derive(Debug, Clone)]
pub struct PathConfig<'r, T> {
    pub rep: &'r PermutationRep,
    pub triple: Triple,
    pub xi: Vec<Complex<T>>,
    pub eta: Vec<Complex<T>>,
}

/// `(ĝ(t), ĝ'(t), ĝ''(t))`.
fn hat<T: Real>(pc: &PathConfig<'_, T>, g: usize, t: T) -> [Complex<T>; 3] {
    let (xi, eta) = (&pc.xi, &pc.eta);
    let a = pc.rep.matrix_element(g, xi, xi);
    let b = pc.rep.matrix_element(g, xi, eta) + pc.rep.matrix_element(g, eta, xi);
    let c = pc.rep.matrix_element(g, eta, eta);
    let (s, co) = t.sin_cos();
    let (s2, c2) = (t + t).sin_cos();
    let two = T::of(2.0);
    [
        a * co * co + b * s * co + c * s * s,
        (c - a) * s2 + b * c2,
        (c - a) * two * c2 - b * two * s2,
    ]
}

impl<'r, T: Real> PathConfig<'r, T> {
    pub fn new(rep: &'r PermutationRep, triple: Triple, xi: Vec<Complex<T>>, eta: Vec<Complex<T>>) -> Self {
        Self { rep, triple, xi, eta }
    }

    /// `ξ_t`.
    pub fn point(&self, t: T) -> Vec<Complex<T>> {
        let (s, c) = t.sin_cos();
        self.xi.iter().zip(&self.eta).map(|(&x, &e)| x * c + e * s).collect()
    }

    /// `f(t) = det Q_{p_t}` evaluated from the vector state of `ξ_t`.
    pub fn f(&self, t: T) -> T {
        let p = self.point(t);
        let el = |g| self.rep.matrix_element(g, &p, &p);
        det_from_values(el(self.triple.a), el(self.triple.b), el(self.triple.x))
    }

    /// Closed-form `f''(t)`.
    pub fn f_second_derivative(&self, t: T) -> T {
        let [u, u1, u2] = hat(self, self.triple.a, t);
        let [v, v1, v2] = hat(self, self.triple.b, t);
        let [w, w1, w2] = hat(self, self.triple.x, t);
        let two = T::of(2.0);
        // (u v w̄)'' with product rule
        let triple = u2 * v * w.conj()
            + u * v2 * w.conj()
            + u * v * w2.conj()
            + (u1 * v1 * w.conj() + u1 * v * w1.conj() + u * v1 * w1.conj()) * two;
        // (|z|²)'' = 2 Re(z'' z̄) + 2|z'|²
        let sq = |z: Complex<T>, z1: Complex<T>, z2: Complex<T>| two * (z2 * z.conj()).re + two * z1.norm_sqr();
        two * triple.re - sq(u, u1, u2) - sq(v, v1, v2) - sq(w, w1, w2)
    }

    /// Central difference `(f(h) − 2f(0) + f(−h)) / h²`.
    pub fn f_second_difference(&self, h: T) -> T {
        (self.f(h) - T::of(2.0) * self.f(T::zero()) + self.f(-h)) / (h * h)
    }

    /// `(|b̂(0)|² − 1) Re[λ̄ â''(0)] − |x̂'(0) − λ b̂'(0)|²`, which equals
    /// `f''(0) / 2` under the eigenstate hypotheses.
    pub fn second_derivative_gap(&self, lambda: Complex<T>) -> T {
        let zero = T::zero();
        let [_, _, a2] = hat(self, self.triple.a, zero);
        let [b0, b1, _] = hat(self, self.triple.b, zero);
        let [_, x1, _] = hat(self, self.triple.x, zero);
        let rhs = (b0.norm_sqr() - T::one()) * (lambda.conj() * a2).re;
        rhs - (x1 - lambda * b1).norm_sqr()
    }
}

fn unit_tol<T: Real>() -> T {
    T::of(1e-12).max(T::epsilon() * T::of(64.0))
}

/// `⟨π(g)u, v⟩`.
fn el<T: Real>(rep: &PermutationRep, g: usize, u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    rep.matrix_element(g, u, v)
}

/// The two cross terms `⟨(x − ab)η, ξ⟩` and `⟨(x − ba)ξ, η⟩`.
fn cross_terms<T: Real>(
    rep: &PermutationRep,
    t: Triple,
    xi: &[Complex<T>],
    eta: &[Complex<T>],
) -> (Complex<T>, Complex<T>) {
    let g = rep.group();
    let (ab, ba) = (g.mul(t.a, t.b), g.mul(t.b, t.a));
    let first = el(rep, t.x, eta, xi) - el(rep, ab, eta, xi);
    let second = el(rep, t.x, xi, eta) - el(rep, ba, xi, eta);
    (first, second)
}

/// `‖(λI − a)η‖` and `|⟨bξ, ξ⟩|²`.
fn rhs_factors<T: Real>(
    rep: &PermutationRep,
    t: Triple,
    pair: &EigenPair<T>,
    eta: &[Complex<T>],
) -> (T, T) {
    let aeta = rep.apply(t.a, eta);
    let diff: Vec<Complex<T>> = eta.iter().zip(&aeta).map(|(&e, &ae)| pair.value * e - ae).collect();
    let bxx = el(rep, t.b, &pair.vector, &pair.vector).norm_sqr();
    (norm(&diff), bxx)
}

/// `(1 − |⟨bξ,ξ⟩|²)‖(λI − a)η‖² − |⟨(x − ab)η, ξ⟩ + ⟨(x − ba)ξ, η⟩|²`
/// for a unit `η ⊥ ξ`.
pub fn nash_gap<T: Real>(
    rep: &PermutationRep,
    t: Triple,
    pair: &EigenPair<T>,
    eta: &[Complex<T>],
) -> Result<T, InequalityError> {
    let overlap = inner(eta, &pair.vector).norm();
    if overlap > unit_tol::<T>() {
        return Err(InequalityError::NotOrthogonal(overlap.as_f64()));
    }
    let n = norm(eta);
    if (n - T::one()).abs() > unit_tol::<T>() {
        return Err(InequalityError::NotUnit(n.as_f64()));
    }
    let (first, second) = cross_terms(rep, t, &pair.vector, eta);
    let (shift, bxx) = rhs_factors(rep, t, pair, eta);
    Ok((T::one() - bxx) * shift * shift - (first + second).norm_sqr())
}

/// `√(1 − |⟨bξ,ξ⟩|²)‖(λI − a)η‖ − |⟨(x − ab)η, ξ⟩| − |⟨(x − ba)ξ, η⟩|` for any `η`.
pub fn sharp_nash_gap<T: Real>(rep: &PermutationRep, t: Triple, pair: &EigenPair<T>, eta: &[Complex<T>]) -> T {
    let (first, second) = cross_terms(rep, t, &pair.vector, eta);
    let (shift, bxx) = rhs_factors(rep, t, pair, eta);
    (T::one() - bxx).max(T::zero()).sqrt() * shift - first.norm() - second.norm()
}

/// Coordinate form with `a = diag(λ_1, …, λ_n)`:
///
/// ```text
/// (1 − |b_jj|²) Σ_k r_k² |λ_j − λ_k|²
///   − |Σ_k r_k [(x_jk − λ_j b_jk) e^{iφ_k} + (x_kj − λ_j b_kj) e^{−iφ_k}]|²
/// ```
pub fn coord_nash_gap<T: Real>(
    a_diag: &[Complex<T>],
    b: &CMatrix<T>,
    x: &CMatrix<T>,
    j: usize,
    r: &[T],
    phi: &[T],
) -> Result<T, InequalityError> {
    let n = a_diag.len();
    let shapes_ok = b.rows() == n && b.cols() == n && x.rows() == n && x.cols() == n;
    if !shapes_ok || r.len() != n || phi.len() != n || j >= n {
        return Err(InequalityError::DimensionMismatch(format!(
            "diag {n}, b {}x{}, x {}x{}, r {}, phi {}, j {j}",
            b.rows(),
            b.cols(),
            x.rows(),
            x.cols(),
            r.len(),
            phi.len()
        )));
    }
    let lj = a_diag[j];
    let mut sum = Complex::zero();
    let mut rhs = T::zero();
    for k in 0..n {
        let e = Complex::from_polar(T::one(), phi[k]);
        sum += ((x[(j, k)] - lj * b[(j, k)]) * e + (x[(k, j)] - lj * b[(k, j)]) * e.conj()) * r[k];
        rhs += r[k] * r[k] * (lj - a_diag[k]).norm_sqr();
    }
    Ok((T::one() - b[(j, j)].norm_sqr()) * rhs - sum.norm_sqr())
}

/// `π(a)`, `π(b)`, `π(x)` written in the analytic eigenbasis of `π(a)`.
#[derive(Debug, Clone)]
pub struct DiagonalForm<T> {
    pub eigenvalues: Vec<Complex<T>>,
    pub a: CMatrix<T>,
    pub b: CMatrix<T>,
    pub x: CMatrix<T>,
    pub ab: CMatrix<T>,
    pub ba: CMatrix<T>,
}

pub fn diagonalize<T: Real>(rep: &PermutationRep, t: Triple) -> DiagonalForm<T> {
    let pairs = all_eigenpairs_of_a::<T>(rep, t.a);
    let (u, eigenvalues) = eigenbasis(&pairs);
    let ud = u.adjoint();
    let conj = |g: usize| &(&ud * &rep.matrix::<T>(g)) * &u;
    let g = rep.group();
    DiagonalForm {
        eigenvalues,
        a: conj(t.a),
        b: conj(t.b),
        x: conj(t.x),
        ab: conj(g.mul(t.a, t.b)),
        ba: conj(g.mul(t.b, t.a)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Nash,
    SharpNash,
    CoordNash,
    SecondDerivative,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Nash, Family::SharpNash, Family::CoordNash, Family::SecondDerivative];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Nash => "nash",
            Family::SharpNash => "sharp_nash",
            Family::CoordNash => "coord_nash",
            Family::SecondDerivative => "second_derivative",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyStats {
    pub family: Family,
    pub samples: usize,
    pub min_gap: f64,
    pub worst: Option<Triple>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub families: Vec<FamilyStats>,
    pub seed: u64,
    pub eigenvalue_classes: usize,
}

impl SuiteReport {
    pub fn min_gap(&self) -> f64 {
        self.families.iter().map(|f| f.min_gap).fold(f64::INFINITY, f64::min)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.min_gap() >= -tol
    }

    pub fn family(&self, family: Family) -> &FamilyStats {
        self.families.iter().find(|f| f.family == family).expect("every family reported")
    }
}

fn gaussian_vector<T: Real>(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex<T>> {
    (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(T::of(re), T::of(im))
        })
        .collect()
}

/// Random unit vector in the span of the given eigenvectors.
fn random_in_class<T: Real>(rng: &mut ChaCha8Rng, pairs: &[EigenPair<T>], members: &[usize], dim: usize) -> Vec<Complex<T>> {
    let coeffs = gaussian_vector::<T>(rng, members.len());
    let mut v = vec![Complex::zero(); dim];
    for (&m, &c) in members.iter().zip(&coeffs) {
        for (vi, &e) in v.iter_mut().zip(&pairs[m].vector) {
            *vi += c * e;
        }
    }
    normalized(&v).expect("nonzero combination")
}

/// Random unit vector orthogonal to unit `xi`.
fn random_orthogonal<T: Real>(rng: &mut ChaCha8Rng, xi: &[Complex<T>]) -> Vec<Complex<T>> {
    loop {
        let mut eta = gaussian_vector::<T>(rng, xi.len());
        for _ in 0..2 {
            let c = inner(&eta, xi);
            for (e, &x) in eta.iter_mut().zip(xi) {
                *e -= c * x;
            }
        }
        if let Some(eta) = normalized(&eta) {
            return eta;
        }
    }
}

struct Accumulator {
    stats: Vec<(f64, usize, Option<Triple>)>,
}

impl Accumulator {
    fn new() -> Self {
        Self { stats: vec![(f64::INFINITY, 0, None); Family::ALL.len()] }
    }

    fn record(&mut self, family: Family, gap: f64, t: Triple) {
        let slot = &mut self.stats[family as usize];
        slot.1 += 1;
        if gap < slot.0 {
            slot.0 = gap;
            slot.2 = Some(t);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (s, o) in self.stats.iter_mut().zip(other.stats) {
            s.1 += o.1;
            if o.0 < s.0 {
                s.0 = o.0;
                s.2 = o.2;
            }
        }
        self
    }
}

/// Samples all four families over every pair `(a, b)`, `x ∈ {ab, ba}` and
/// every eigenvalue class of `π(a)`, with at least `min_samples` samples per
/// family.
pub fn run_suite<T: Real>(group: &FiniteGroup, min_samples: usize, seed: u64) -> SuiteReport {
    let rep = PermutationRep::natural(group);
    let mut units = Vec::new();
    for a in group.elements() {
        let pairs = all_eigenpairs_of_a::<T>(&rep, a);
        let classes = eigenvalue_classes(&pairs).len();
        for b in group.elements() {
            let (ab, ba) = (group.mul(a, b), group.mul(b, a));
            let xs = if ab == ba { vec![ab] } else { vec![ab, ba] };
            for x in xs {
                for class in 0..classes {
                    units.push((Triple::new(a, b, x), class));
                }
            }
        }
    }
    let per_unit = min_samples.div_ceil(units.len()).max(1);
    let total_classes = units.len();

    let acc = units
        .par_iter()
        .map(|&(t, class)| {
            let mut acc = Accumulator::new();
            let pairs = all_eigenpairs_of_a::<T>(&rep, t.a);
            let classes = eigenvalue_classes(&pairs);
            let (lambda, members) = &classes[class];
            let diag = diagonalize::<T>(&rep, t);
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, &[t.a, t.b, t.x, class]));
            for _ in 0..per_unit {
                let xi = random_in_class(&mut rng, &pairs, members, rep.dim());
                let pair = EigenPair { value: *lambda, vector: xi.clone() };
                let eta = random_orthogonal(&mut rng, &xi);

                let gap = nash_gap(&rep, t, &pair, &eta).expect("orthogonal unit η");
                acc.record(Family::Nash, gap.as_f64(), t);

                let pc = PathConfig::new(&rep, t, xi.clone(), eta);
                acc.record(Family::SecondDerivative, pc.second_derivative_gap(*lambda).as_f64(), t);

                let scale = T::of(rng.random_range(0.1..3.0));
                let free: Vec<Complex<T>> = gaussian_vector::<T>(&mut rng, rep.dim()).into_iter().map(|z| z * scale).collect();
                acc.record(Family::SharpNash, sharp_nash_gap(&rep, t, &pair, &free).as_f64(), t);

                let j = members[rng.random_range(0..members.len())];
                let r: Vec<T> = (0..rep.dim()).map(|_| T::of(rng.sample::<f64, _>(StandardNormal))).collect();
                let phi: Vec<T> = (0..rep.dim()).map(|_| T::of(rng.random_range(0.0..std::f64::consts::TAU))).collect();
                let gap = coord_nash_gap(&diag.eigenvalues, &diag.b, &diag.x, j, &r, &phi).expect("square inputs");
                acc.record(Family::CoordNash, gap.as_f64(), t);
            }
            acc
        })
        .reduce(Accumulator::new, Accumulator::merge);

    SuiteReport {
        families: Family::ALL
            .iter()
            .map(|&family| {
                let (min_gap, samples, worst) = acc.stats[family as usize];
                FamilyStats { family, samples, min_gap, worst }
            })
            .collect(),
        seed,
        eigenvalue_classes: total_classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, quaternion8, symmetric};

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn f_vanishes_at_eigenstates() {
        let g = quaternion8();
        let rep = PermutationRep::natural(&g);
        let (a, b) = (2, 4);
        let mut r = rng(1);
        for pair in all_eigenpairs_of_a::<f64>(&rep, a) {
            for x in [g.mul(a, b), g.mul(b, a)] {
                let eta = random_orthogonal(&mut r, &pair.vector);
                let pc = PathConfig::new(&rep, Triple::new(a, b, x), pair.vector.clone(), eta);
                assert!(pc.f(0.0).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn path_endpoint_and_symmetry() {
        let g = symmetric(3).unwrap();
        let rep = PermutationRep::natural(&g);
        let mut r = rng(2);
        let t = Triple::new(2, 5, g.mul(2, 5));
        let xi = normalized(&gaussian_vector::<f64>(&mut r, 6)).unwrap();
        let eta = random_orthogonal(&mut r, &xi);
        let pc = PathConfig::new(&rep, t, xi.clone(), eta.clone());
        let direct = {
            let el = |x| rep.matrix_element(x, &eta, &eta);
            det_from_values(el(t.a), el(t.b), el(t.x))
        };
        assert!((pc.f(std::f64::consts::FRAC_PI_2) - direct).abs() < 1e-12);
        let neg: Vec<Complex<f64>> = eta.iter().map(|z| -z).collect();
        let flipped = PathConfig::new(&rep, t, xi, neg);
        for s in [0.1, 0.7, 2.0] {
            assert!((pc.f(s) - flipped.f(-s)).abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_second_derivative_matches_differences_everywhere() {
        let g = quaternion8();
        let rep = PermutationRep::natural(&g);
        let mut r = rng(3);
        for _ in 0..20 {
            let t = Triple::new(r.random_range(0..8), r.random_range(0..8), r.random_range(0..8));
            let xi = normalized(&gaussian_vector::<f64>(&mut r, 8)).unwrap();
            let eta = normalized(&gaussian_vector::<f64>(&mut r, 8)).unwrap();
            let pc = PathConfig::new(&rep, t, xi, eta);
            let s = r.random_range(-1.0..1.0);
            let h = 1e-4;
            let fd = (pc.f(s + h) - 2.0 * pc.f(s) + pc.f(s - h)) / (h * h);
            let an = pc.f_second_derivative(s);
            assert!((fd - an).abs() <= 1e-4 * an.abs().max(1.0), "{fd} vs {an}");
        }
    }

    #[test]
    fn gap_is_half_second_derivative() {
        let g = symmetric(3).unwrap();
        let rep = PermutationRep::natural(&g);
        let mut r = rng(4);
        for a in g.elements() {
            let pairs = all_eigenpairs_of_a::<f64>(&rep, a);
            for b in g.elements() {
                let pair = &pairs[r.random_range(0..pairs.len())];
                let t = Triple::new(a, b, g.mul(a, b));
                let eta = random_orthogonal(&mut r, &pair.vector);
                let pc = PathConfig::new(&rep, t, pair.vector.clone(), eta);
                let gap = pc.second_derivative_gap(pair.value);
                assert!((2.0 * gap - pc.f_second_derivative(0.0)).abs() < 1e-10);
                assert!(gap >= -GAP_TOL);
            }
        }
    }

    #[test]
    fn second_derivative_gap_in_z6() {
        let g = cyclic(6).unwrap();
        let rep = PermutationRep::natural(&g);
        let mut r = rng(5);
        for pair in all_eigenpairs_of_a::<f64>(&rep, 1) {
            for b in g.elements() {
                let eta = random_orthogonal(&mut r, &pair.vector);
                let pc = PathConfig::new(&rep, Triple::new(1, b, g.mul(1, b)), pair.vector.clone(), eta);
                assert!(pc.second_derivative_gap(pair.value) >= -GAP_TOL);
            }
            let eta = random_orthogonal(&mut r, &pair.vector);
            let pc = PathConfig::new(&rep, Triple::new(1, 0, 1), pair.vector.clone(), eta);
            assert!(pc.second_derivative_gap(pair.value) >= -GAP_TOL);
        }
    }

    #[test]
    fn nash_abelian_degenerate_and_errors() {
        let g = cyclic(6).unwrap();
        let rep = PermutationRep::natural(&g);
        let pairs = all_eigenpairs_of_a::<f64>(&rep, 2);
        let mut r = rng(6);
        let t = Triple::new(2, 3, g.mul(2, 3));
        let eta = random_orthogonal(&mut r, &pairs[0].vector);
        let (first, second) = cross_terms(&rep, t, &pairs[0].vector, &eta);
        assert!(first.norm() < 1e-14 && second.norm() < 1e-14);
        assert!(nash_gap(&rep, t, &pairs[0], &eta).unwrap() >= 0.0);

        // η in the same eigenspace: both sides vanish.
        let q = quaternion8();
        let qrep = PermutationRep::natural(&q);
        let qpairs = all_eigenpairs_of_a::<f64>(&qrep, 2);
        let (xi, eta) = (&qpairs[0], &qpairs[1].vector);
        assert!((xi.value - qpairs[1].value).norm() < 1e-12);
        let qt = Triple::new(2, 4, q.mul(2, 4));
        let gap = nash_gap(&qrep, qt, xi, eta).unwrap();
        assert!(gap.abs() <= 1e-10);

        assert!(matches!(nash_gap(&rep, t, &pairs[0], &pairs[0].vector), Err(InequalityError::NotOrthogonal(_))));
        let long: Vec<Complex<f64>> = eta_scaled(&random_orthogonal(&mut r, &pairs[0].vector), 2.0);
        assert!(matches!(nash_gap(&rep, t, &pairs[0], &long), Err(InequalityError::NotUnit(_))));
    }

    fn eta_scaled(v: &[Complex<f64>], s: f64) -> Vec<Complex<f64>> {
        v.iter().map(|z| z * s).collect()
    }

    #[test]
    fn q8_nash_sampling() {
        let g = quaternion8();
        let rep = PermutationRep::natural(&g);
        let (i, j) = (2, 4);
        let t = Triple::new(i, j, g.mul(i, j));
        let pairs = all_eigenpairs_of_a::<f64>(&rep, i);
        let mut r = rng(7);
        let mut worst = f64::INFINITY;
        for k in 0..1000 {
            let pair = &pairs[k % pairs.len()];
            let eta = random_orthogonal(&mut r, &pair.vector);
            worst = worst.min(nash_gap(&rep, t, pair, &eta).unwrap());
        }
        assert!(worst >= -GAP_TOL, "{worst}");
    }

    #[test]
    fn sharp_nash_properties() {
        let g = quaternion8();
        let rep = PermutationRep::natural(&g);
        let (i, j) = (2, 4);
        let pairs = all_eigenpairs_of_a::<f64>(&rep, i);
        let mut r = rng(8);
        for x in [g.mul(i, j), g.mul(j, i)] {
            let t = Triple::new(i, j, x);
            for pair in &pairs {
                assert!(sharp_nash_gap(&rep, t, pair, &pair.vector).abs() < 1e-12);
                for _ in 0..50 {
                    let free = gaussian_vector::<f64>(&mut r, 8);
                    assert!(sharp_nash_gap(&rep, t, pair, &free) >= -GAP_TOL);
                    let eta = random_orthogonal(&mut r, &pair.vector);
                    let (f, s) = cross_terms(&rep, t, &pair.vector, &eta);
                    assert!((f + s).norm() <= f.norm() + s.norm() + 1e-15);
                }
            }
        }
    }

    #[test]
    fn coord_form_basics() {
        let g = quaternion8();
        let rep = PermutationRep::natural(&g);
        let t = Triple::new(2, 4, g.mul(2, 4));
        let d = diagonalize::<f64>(&rep, t);
        let zeros = vec![0.0; 8];
        assert_eq!(coord_nash_gap(&d.eigenvalues, &d.b, &d.x, 3, &zeros, &zeros).unwrap(), 0.0);
        assert!(matches!(
            coord_nash_gap(&d.eigenvalues, &d.b, &d.x, 8, &zeros, &zeros),
            Err(InequalityError::DimensionMismatch(_))
        ));
        assert!(matches!(
            coord_nash_gap(&d.eigenvalues, &d.b, &d.x, 0, &zeros[..7], &zeros),
            Err(InequalityError::DimensionMismatch(_))
        ));
        // a is diagonal in this basis
        for r in 0..8 {
            for c in 0..8 {
                let expected = if r == c { d.eigenvalues[r] } else { Complex::zero() };
                assert!((d.a[(r, c)] - expected).norm() < 1e-12);
            }
        }
        // equal-eigenvalue coordinates contribute nothing to the left side
        for j in 0..8 {
            for k in 0..8 {
                if (d.eigenvalues[j] - d.eigenvalues[k]).norm() < 1e-12 {
                    assert!((d.x[(j, k)] - d.eigenvalues[j] * d.b[(j, k)]).norm() < 1e-12);
                    assert!((d.x[(k, j)] - d.eigenvalues[j] * d.b[(k, j)]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn coord_terms_are_entries_of_differences() {
        let g = symmetric(3).unwrap();
        let rep = PermutationRep::natural(&g);
        for a in g.elements() {
            for b in g.elements() {
                let t = Triple::new(a, b, g.mul(a, b));
                let d = diagonalize::<f64>(&rep, t);
                let x_ab = &d.x - &d.ab;
                let x_ba = &d.x - &d.ba;
                for j in 0..6 {
                    let lj = d.eigenvalues[j];
                    for k in 0..6 {
                        assert!((x_ab[(j, k)] - (d.x[(j, k)] - lj * d.b[(j, k)])).norm() < 1e-12);
                        assert!((x_ba[(k, j)] - (d.x[(k, j)] - lj * d.b[(k, j)])).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn coord_form_sampling_q8() {
        let g = quaternion8();
        let rep = PermutationRep::natural(&g);
        let mut r = rng(9);
        for x in [g.mul(2, 4), g.mul(4, 2)] {
            let d = diagonalize::<f64>(&rep, Triple::new(2, 4, x));
            for _ in 0..1000 {
                let j = r.random_range(0..8);
                let rs: Vec<f64> = (0..8).map(|_| r.sample(StandardNormal)).collect();
                let ph: Vec<f64> = (0..8).map(|_| r.random_range(0.0..std::f64::consts::TAU)).collect();
                assert!(coord_nash_gap(&d.eigenvalues, &d.b, &d.x, j, &rs, &ph).unwrap() >= -GAP_TOL);
            }
        }
    }

    #[test]
    fn suite_passes_on_s3() {
        let report = run_suite::<f64>(&symmetric(3).unwrap(), 1000, 11);
        for f in &report.families {
            assert!(f.samples >= 1000, "{:?}", f);
            assert!(f.min_gap >= -GAP_TOL, "{:?}", f);
        }
        assert_eq!(report, run_suite::<f64>(&symmetric(3).unwrap(), 1000, 11));
    }
}
