//! Positive definite functions and states on a finite group.
//!
//! A function `p: G → ℂ` is stored as a vector indexed by element index.
//! It is positive definite when the Gram matrix `[p(g_j⁻¹ g_k)]` is PSD, and
//! a state when additionally `p(e) = 1`.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::cayley::{EigenPair, PermutationRep};
use crate::group::FiniteGroup;
use crate::linalg::{hermitian_eigen, min_eigenvalue, norm, CMatrix};
use crate::scalar::{root_of_unity, Real};

/// Default PSD tolerance scale: accept `λ_min ≥ −PSD_TOL · dim`.
pub const PSD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("vector has norm {0}, expected 1")]
    NotUnitVector(f64),
    #[error("eigen-residual {0} exceeds tolerance")]
    NotAnEigenpair(f64),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("function is not positive definite on the subgroup")]
    NotPositiveDefiniteOnSubgroup,
    #[error("expected {expected} values, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("values do not form a state: {0}")]
    NotAState(&'static str),
    #[error("character computation did not separate the spectrum")]
    DegenerateSpectrum,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateSource<T> {
    /// Vector state of the given unit vector over a rep.
    Vector(Vec<Complex<T>>),
    Character,
    Extension,
    Mixture,
    Product,
    Values,
}

#[derive(Debug, Clone, PartialEq)]
pub struct State<T> {
    values: Vec<Complex<T>>,
    source: StateSource<T>,
}

fn unit_tolerance<T: Real>() -> T {
    T::of(1e-12).max(T::epsilon() * T::of(64.0))
}

impl<T: Real> State<T> {
    /// Validates `p(e) = 1` and positive definiteness.
    pub fn from_values(group: &FiniteGroup, values: Vec<Complex<T>>, tol: T) -> Result<Self, StateError> {
        if values.len() != group.order() {
            return Err(StateError::WrongLength { expected: group.order(), found: values.len() });
        }
        if (values[group.identity()] - Complex::one()).norm() > T::of(1e-12).max(tol) {
            return Err(StateError::NotAState("value at the identity is not 1"));
        }
        if !is_positive_definite(group, &values, tol) {
            return Err(StateError::NotAState("Gram matrix is not PSD"));
        }
        Ok(Self { values, source: StateSource::Values })
    }

    /// `p(g) = ⟨π(g)ξ, ξ⟩` for a unit vector `ξ`.
    pub fn vector(rep: &PermutationRep, xi: &[Complex<T>]) -> Result<Self, StateError> {
        if xi.len() != rep.dim() {
            return Err(StateError::WrongLength { expected: rep.dim(), found: xi.len() });
        }
        let n = norm(xi);
        if (n - T::one()).abs() > unit_tolerance::<T>() {
            return Err(StateError::NotUnitVector(n.as_f64()));
        }
        Ok(Self::vector_unchecked(rep, xi))
    }

    pub(crate) fn vector_unchecked(rep: &PermutationRep, xi: &[Complex<T>]) -> Self {
        let values = rep.group().elements().map(|g| rep.matrix_element(g, xi, xi)).collect();
        Self { values, source: StateSource::Vector(xi.to_vec()) }
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn source(&self) -> &StateSource<T> {
        &self.source
    }

    pub fn at(&self, g: usize) -> Complex<T> {
        self.values[g]
    }

    /// `tp + (1−t)q`.
    pub fn convex_combine(&self, other: &Self, t: T) -> Self {
        let s = T::one() - t;
        let values = self.values.iter().zip(&other.values).map(|(&p, &q)| p * t + q * s).collect();
        Self { values, source: StateSource::Mixture }
    }

    /// Pointwise product.
    pub fn schur_product(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(&p, &q)| p * q).collect();
        Self { values, source: StateSource::Product }
    }

    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        crate::scalar::to_pairs(&self.values)
    }
}

/// State of a (claimed) eigenpair of `π(a)`; the pair is verified.
pub fn eigenstate<T: Real>(rep: &PermutationRep, a: usize, pair: &EigenPair<T>) -> Result<State<T>, StateError> {
    let r = pair.residual(rep, a);
    if r > T::of(1e-10).max(T::epsilon() * T::of(256.0)) {
        return Err(StateError::NotAnEigenpair(r.as_f64()));
    }
    State::vector(rep, &pair.vector)
}

/// `[p(g_j⁻¹ g_k)]` over the natural enumeration.
pub fn gram_matrix<T: Real>(group: &FiniteGroup, values: &[Complex<T>]) -> CMatrix<T> {
    let n = group.order();
    CMatrix::from_fn(n, n, |j, k| values[group.mul(group.inv(j), k)])
}

/// Finite Bochner test: Gram matrix `λ_min ≥ −tol · n`.
pub fn is_positive_definite<T: Real>(group: &FiniteGroup, values: &[Complex<T>], tol: T) -> bool {
    values.len() == group.order() && crate::linalg::is_psd(&gram_matrix(group, values), tol)
}

/// Cone order: `p ≥ q` iff `p − q` is positive definite.
pub fn dominates<T: Real>(group: &FiniteGroup, p: &[Complex<T>], q: &[Complex<T>], tol: T) -> bool {
    let diff: Vec<Complex<T>> = p.iter().zip(q).map(|(&a, &b)| a - b).collect();
    is_positive_definite(group, &diff, tol)
}

/// A character of an abelian group.
#[derive(Debug, Clone, PartialEq)]
pub struct Character<T> {
    pub values: Vec<Complex<T>>,
}

impl<T: Real> Character<T> {
    pub fn max_multiplicativity_defect(&self, group: &FiniteGroup) -> T {
        let mut worst = T::zero();
        for g in group.elements() {
            for h in group.elements() {
                let d = self.values[group.mul(g, h)] - self.values[g] * self.values[h];
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    pub fn as_state(&self) -> State<T> {
        State { values: self.values.clone(), source: StateSource::Character }
    }

    /// Unit vector over the natural Cayley rep whose vector state is `χ`.
    pub fn vector(&self) -> Vec<Complex<T>> {
        let s = T::one() / T::of_usize(self.values.len()).sqrt();
        self.values.iter().map(|&z| z * s).collect()
    }
}

const CHARACTER_SEED: u64 = 0x6368_6172;
const CHARACTER_ATTEMPTS: u64 = 16;

/// All characters of an abelian group, sorted by the argument vector so the
/// trivial character comes first and `χ_j(k) = ω^{jk}` on `Z_n`.
///
/// Computed by diagonalising `Σ_g (c_g π(g) + c̄_g π(g)*)` for random complex
/// `c_g`; every eigenvector is a common eigenvector of the `π(g)`. Values are
/// snapped to the nearest root of unity of the element order and the result
/// is verified.
pub fn characters<T: Real>(group: &FiniteGroup) -> Result<Vec<Character<T>>, StateError> {
    if !group.is_abelian() {
        return Err(StateError::NotAbelian);
    }
    let n = group.order();
    let rep = PermutationRep::natural(group);
    let orders = group.element_orders();
    let snap_tol = T::of(1e-6).max(T::epsilon().sqrt() * T::of(10.0));
    let mult_tol = T::of(1e-9).max(T::epsilon() * T::of(1e3));
    for attempt in 0..CHARACTER_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(CHARACTER_SEED + attempt);
        let mut h = CMatrix::<T>::zeros(n, n);
        for g in group.elements() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            let c = Complex::new(T::of(re), T::of(im));
            let m = rep.matrix::<T>(g);
            h = &h + &(&m.scale(c) + &m.adjoint().scale(c.conj()));
        }
        let eig = hermitian_eigen(&h);
        let min_gap = eig.values.windows(2).map(|w| w[1] - w[0]).fold(T::infinity(), T::min);
        if n > 1 && min_gap < T::of(1e-8) {
            continue;
        }
        let mut chars = Vec::with_capacity(n);
        let mut ok = true;
        for k in 0..n {
            let v = eig.vector(k);
            let mut values = Vec::with_capacity(n);
            for g in group.elements() {
                let raw = rep.matrix_element(g, &v, &v);
                let snapped = snap_to_root(raw, orders[g]);
                if (snapped - raw).norm() > snap_tol {
                    ok = false;
                }
                values.push(snapped);
            }
            let chi = Character { values };
            if chi.max_multiplicativity_defect(group) > mult_tol {
                ok = false;
            }
            chars.push(chi);
        }
        if !ok {
            continue;
        }
        chars.sort_by_key(argument_key);
        chars.dedup_by(|x, y| argument_key(x) == argument_key(y));
        if chars.len() == n {
            return Ok(chars);
        }
    }
    Err(StateError::DegenerateSpectrum)
}

fn snap_to_root<T: Real>(z: Complex<T>, order: usize) -> Complex<T> {
    let turns = z.arg() / T::TAU() * T::of_usize(order);
    let k = turns.round().to_i64().unwrap_or(0);
    root_of_unity(k, order)
}

fn argument_key<T: Real>(chi: &Character<T>) -> Vec<i64> {
    chi.values
        .iter()
        .map(|z| {
            let mut a = z.arg().as_f64();
            if a < -1e-9 {
                a += std::f64::consts::TAU;
            }
            (a * 1e6).round() as i64
        })
        .collect()
}

/// Coefficients `c_χ = (1/n) Σ_g p(g) χ̄(g)` of `p` in the character basis.
pub fn character_coefficients<T: Real>(chars: &[Character<T>], p: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = T::of_usize(p.len());
    chars
        .iter()
        .map(|chi| chi.values.iter().zip(p).map(|(&c, &v)| v * c.conj()).sum::<Complex<T>>() / n)
        .collect()
}

/// Extends a positive definite function on `H` (values listed in the order
/// of `members`) by zero outside `H`.
pub fn extend_by_zero<T: Real>(
    group: &FiniteGroup,
    members: &[usize],
    values_on_h: &[Complex<T>],
    tol: T,
) -> Result<State<T>, StateError> {
    if members.len() != values_on_h.len() {
        return Err(StateError::WrongLength { expected: members.len(), found: values_on_h.len() });
    }
    if !group.is_subgroup(members) {
        return Err(StateError::NotPositiveDefiniteOnSubgroup);
    }
    let mut values = vec![Complex::zero(); group.order()];
    for (&h, &v) in members.iter().zip(values_on_h) {
        values[h] = v;
    }
    let m = members.len();
    let gram = CMatrix::from_fn(m, m, |j, k| values[group.mul(group.inv(members[j]), members[k])]);
    if min_eigenvalue(&gram) < -tol * T::of_usize(m) {
        return Err(StateError::NotPositiveDefiniteOnSubgroup);
    }
    if (values[group.identity()] - Complex::one()).norm() > T::of(1e-12).max(tol) {
        return Err(StateError::NotAState("value at the identity is not 1"));
    }
    Ok(State { values, source: StateSource::Extension })
}

/// Unit vector over `rep` whose vector state is the character `k ↦ ω^{jk}`
/// of `⟨a⟩` extended by zero.
pub fn extended_cyclic_character_vector<T: Real>(rep: &PermutationRep, a: usize, j: usize) -> Vec<Complex<T>> {
    let group = rep.group();
    let h = group.cyclic_subgroup(a).members;
    let na = h.len();
    let s = T::one() / T::of_usize(na).sqrt();
    let mut v = vec![Complex::zero(); rep.dim()];
    for (k, &g) in h.iter().enumerate() {
        v[rep.position(g)] = root_of_unity::<T>((j * k) as i64, na) * s;
    }
    v
}

/// Formal complex combination `Σ c_g g` in the group algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<T> {
    pub terms: Vec<(usize, Complex<T>)>,
}

impl<T: Real> AlgebraElement<T> {
    pub fn basis(g: usize) -> Self {
        Self { terms: vec![(g, Complex::one())] }
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    /// Linear extension of `p`.
    pub fn evaluate(&self, p: &[Complex<T>]) -> Complex<T> {
        self.terms.iter().map(|&(g, c)| c * p[g]).sum()
    }
}

/// Entrywise application of the linear extension of `p`.
pub fn state_lift<T: Real>(blocks: &[Vec<AlgebraElement<T>>], p: &[Complex<T>]) -> CMatrix<T> {
    let m = blocks.len();
    CMatrix::from_fn(m, m, |j, k| blocks[j][k].evaluate(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::all_eigenpairs_of_a;
    use crate::group::{cyclic, direct_product, quaternion8, symmetric, FiniteGroup};
    use crate::linalg::normalized;
    use rand::Rng;

    fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex<f64>> {
        let v: Vec<Complex<f64>> = (0..n)
            .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        normalized(&v).unwrap()
    }

    fn abelian_groups() -> Vec<FiniteGroup> {
        let mut gs: Vec<FiniteGroup> = (1..=12).map(|n| cyclic(n).unwrap()).collect();
        let z = |n| cyclic(n).unwrap();
        gs.push(direct_product(&z(2), &z(2)).unwrap());
        gs.push(direct_product(&z(2), &z(4)).unwrap());
        gs.push(direct_product(&z(2), &z(6)).unwrap());
        gs.push(direct_product(&z(3), &z(3)).unwrap());
        gs.push(direct_product(&direct_product(&z(2), &z(2)).unwrap(), &z(2)).unwrap());
        gs
    }

    #[test]
    fn basis_vector_gives_delta() {
        let g = symmetric(3).unwrap();
        let rep = PermutationRep::natural(&g);
        let mut e1 = vec![Complex::zero(); 6];
        e1[0] = Complex::one();
        let p = State::<f64>::vector(&rep, &e1).unwrap();
        for x in g.elements() {
            let expected = if x == g.identity() { 1.0 } else { 0.0 };
            assert_eq!(p.at(x), Complex::new(expected, 0.0));
        }
    }

    #[test]
    fn uniform_vector_gives_trivial_character() {
        let g = quaternion8();
        let rep = PermutationRep::natural(&g);
        let u = vec![Complex::new(1.0 / 8f64.sqrt(), 0.0); 8];
        let p = State::vector(&rep, &u).unwrap();
        assert!(p.values().iter().all(|z| (z - Complex::one()).norm() < 1e-14));
    }

    #[test]
    fn vector_state_rejects_non_unit() {
        let g = cyclic(3).unwrap();
        let rep = PermutationRep::natural(&g);
        let v = vec![Complex::new(1.0, 0.0); 3];
        assert!(matches!(State::vector(&rep, &v), Err(StateError::NotUnitVector(_))));
    }

    #[test]
    fn random_vector_states_are_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [symmetric(3).unwrap(), quaternion8(), cyclic(7).unwrap()] {
            let rep = PermutationRep::natural(&g);
            for _ in 0..20 {
                let p = State::vector(&rep, &random_unit(&mut rng, g.order())).unwrap();
                assert!((p.at(g.identity()) - Complex::one()).norm() < 1e-14);
                assert!(is_positive_definite(&g, p.values(), PSD_TOL));
                assert!(p.values().iter().all(|z| z.norm() <= 1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn eigenstates() {
        let z4 = cyclic(4).unwrap();
        let rep = PermutationRep::natural(&z4);
        let pairs = all_eigenpairs_of_a::<f64>(&rep, 1);
        let i_pair = pairs.iter().find(|p| (p.value - Complex::new(0.0, 1.0)).norm() < 1e-12).unwrap();
        let p = eigenstate(&rep, 1, i_pair).unwrap();
        assert!((p.at(1) - Complex::new(0.0, 1.0)).norm() < 1e-14);

        let bogus = EigenPair { value: Complex::new(0.0, 1.0), vector: pairs[0].vector.clone() };
        assert!(matches!(eigenstate(&rep, 1, &bogus), Err(StateError::NotAnEigenpair(_))));

        let q = quaternion8();
        let rep = PermutationRep::natural(&q);
        for a in q.elements() {
            for pair in all_eigenpairs_of_a::<f64>(&rep, a) {
                let p = eigenstate(&rep, a, &pair).unwrap();
                assert!((p.at(a).norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn z3_characters() {
        let z3 = cyclic(3).unwrap();
        let chars = characters::<f64>(&z3).unwrap();
        assert_eq!(chars.len(), 3);
        for (j, chi) in chars.iter().enumerate() {
            for k in 0..3 {
                let expected = root_of_unity::<f64>((j * k) as i64, 3);
                assert!((chi.values[k] - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn klein_characters_are_real() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        let chars = characters::<f64>(&g).unwrap();
        assert_eq!(chars.len(), 4);
        for chi in &chars {
            assert!(chi.values.iter().all(|z| z.im == 0.0 && z.re.abs() == 1.0));
        }
    }

    #[test]
    fn nonabelian_has_no_character_table_here() {
        assert_eq!(characters::<f64>(&symmetric(3).unwrap()).unwrap_err(), StateError::NotAbelian);
    }

    #[test]
    fn characters_separate_points_and_are_orthogonal() {
        for g in abelian_groups() {
            let n = g.order();
            let chars = characters::<f64>(&g).unwrap();
            assert_eq!(chars.len(), n);
            for chi in &chars {
                assert!(chi.max_multiplicativity_defect(&g) < 1e-12);
                assert!(chi.values.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
                assert_eq!(chi.values[g.identity()], Complex::one());
            }
            for (i, x) in chars.iter().enumerate() {
                for (j, y) in chars.iter().enumerate() {
                    let ip: Complex<f64> =
                        x.values.iter().zip(&y.values).map(|(a, b)| a * b.conj()).sum::<Complex<f64>>() / n as f64;
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - Complex::new(target, 0.0)).norm() < 1e-10);
                }
            }
            for a in g.elements() {
                for b in g.elements() {
                    if a != b {
                        assert!(chars.iter().any(|c| (c.values[a] - c.values[b]).norm() > 1e-6));
                    }
                }
            }
        }
    }

    #[test]
    fn f32_characters() {
        let chars = characters::<f32>(&cyclic(5).unwrap()).unwrap();
        assert_eq!(chars.len(), 5);
    }

    #[test]
    fn extension_by_zero() {
        let g = symmetric(3).unwrap();
        let a = g.element_by_name("(123)").unwrap();
        let h = g.cyclic_subgroup(a).members;
        let ones = vec![Complex::one(); 3];
        let p = extend_by_zero::<f64>(&g, &h, &ones, PSD_TOL).unwrap();
        for x in g.elements() {
            let expected = if h.contains(&x) { 1.0 } else { 0.0 };
            assert_eq!(p.at(x).re, expected);
        }
        let gram = gram_matrix(&g, p.values());
        assert!(min_eigenvalue(&gram) > -1e-12);

        let delta: Vec<Complex<f64>> = h.iter().map(|&x| if x == g.identity() { Complex::one() } else { Complex::zero() }).collect();
        let d = extend_by_zero(&g, &h, &delta, PSD_TOL).unwrap();
        assert!(g.elements().all(|x| d.at(x) == if x == g.identity() { Complex::one() } else { Complex::zero() }));

        let all: Vec<usize> = g.elements().collect();
        let rep = PermutationRep::natural(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = State::vector(&rep, &random_unit(&mut rng, 6)).unwrap();
        let same = extend_by_zero(&g, &all, v.values(), PSD_TOL).unwrap();
        assert_eq!(same.values(), v.values());

        let bad = vec![Complex::one(), Complex::new(2.0, 0.0), Complex::one()];
        assert_eq!(extend_by_zero(&g, &h, &bad, PSD_TOL).unwrap_err(), StateError::NotPositiveDefiniteOnSubgroup);
    }

    #[test]
    fn extended_character_vector_matches_extension() {
        let g = quaternion8();
        let rep = PermutationRep::for_cosets(&g, 2, Some(4));
        for j in 0..4 {
            let v = extended_cyclic_character_vector::<f64>(&rep, 2, j);
            let p = State::vector(&rep, &v).unwrap();
            let h = g.cyclic_subgroup(2).members;
            let on_h: Vec<Complex<f64>> = (0..4).map(|k| root_of_unity((j * k) as i64, 4)).collect();
            let q = extend_by_zero(&g, &h, &on_h, PSD_TOL).unwrap();
            for x in g.elements() {
                assert!((p.at(x) - q.at(x)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn gram_test_examples() {
        let g = cyclic(5).unwrap();
        let mut delta = vec![Complex::zero(); 5];
        delta[0] = Complex::one();
        assert!(is_positive_definite::<f64>(&g, &delta, PSD_TOL));
        assert!(is_positive_definite::<f64>(&g, &vec![Complex::one(); 5], PSD_TOL));
        let mut bad = delta.clone();
        bad[2] = Complex::new(2.0, 0.0);
        assert!(!is_positive_definite::<f64>(&g, &bad, PSD_TOL));
        assert!(State::from_values(&g, bad, PSD_TOL).is_err());
    }

    #[test]
    fn convex_and_schur() {
        let g = symmetric(3).unwrap();
        let rep = PermutationRep::natural(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = State::vector(&rep, &random_unit(&mut rng, 6)).unwrap();
            let q = State::vector(&rep, &random_unit(&mut rng, 6)).unwrap();
            assert_eq!(p.convex_combine(&q, 1.0).values(), p.values());
            let t = rng.random::<f64>();
            let m = p.convex_combine(&q, t);
            assert!(State::from_values(&g, m.values().to_vec(), PSD_TOL).is_ok());
            let pq = p.schur_product(&q);
            assert!((pq.at(g.identity()) - Complex::one()).norm() < 1e-14);
            assert!(min_eigenvalue(&gram_matrix(&g, pq.values())) >= -1e-10);
            assert!(dominates(&g, m.values(), &q.values().iter().map(|z| z * (1.0 - t)).collect::<Vec<_>>(), PSD_TOL));
        }
    }

    #[test]
    fn abelian_states_are_character_mixtures() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for g in abelian_groups() {
            let chars = characters::<f64>(&g).unwrap();
            let rep = PermutationRep::natural(&g);
            for _ in 0..5 {
                let p = State::vector(&rep, &random_unit(&mut rng, g.order())).unwrap();
                let coeffs = character_coefficients(&chars, p.values());
                let total: Complex<f64> = coeffs.iter().sum();
                assert!((total - Complex::one()).norm() < 1e-12);
                for c in &coeffs {
                    assert!(c.im.abs() < 1e-12 && c.re >= -1e-12);
                }
                for x in g.elements() {
                    let rebuilt: Complex<f64> = chars.iter().zip(&coeffs).map(|(chi, c)| chi.values[x] * c).sum();
                    assert!((rebuilt - p.at(x)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn lift_of_identity_and_singletons() {
        let g = cyclic(6).unwrap();
        let chars = characters::<f64>(&g).unwrap();
        let p = chars[1].as_state();
        let diag: Vec<Vec<AlgebraElement<f64>>> = (0..3)
            .map(|j| (0..3).map(|k| if j == k { AlgebraElement::basis(0) } else { AlgebraElement::zero() }).collect())
            .collect();
        assert_eq!(state_lift(&diag, p.values()), CMatrix::identity(3));
        let single = vec![vec![AlgebraElement::basis(4)]];
        assert_eq!(state_lift(&single, p.values())[(0, 0)], p.at(4));
    }
}
