//! Multiplication-table morphisms, dual elements and reconstruction of a
//! group from its positive definite functions.
//!
//! A dual element is the function `p ↦ φ(p)_{jk}` for a morphism
//! `φ(p) = [p(g_j⁻¹ g_k)]`. Dual elements are compared through fingerprints,
//! i.e. their values on a fixed separating family of states, so the product
//! `(j₀, k₀) · (k₀, s₀) = (j₀, s₀)` is anchored to function identity.

use std::collections::BTreeSet;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cayley::{block, nonzero_count, two_block_eigenvector, PermutationRep};
use crate::group::{FiniteGroup, GroupError};
use crate::linalg::{min_eigenvalue, normalized, CMatrix};
use crate::positivity::{qmatrix, Analyzer, PositivityConfig, Triple};
use crate::scalar::{root_of_unity, Real};
use crate::state::{characters, State};

/// Fingerprints closer than this denote the same dual element.
pub const FINGERPRINT_TOL: f64 = 1e-6;
/// Distinct dual elements must be at least this far apart.
pub const SEPARATION: f64 = 0.1;
const RANDOM_FINGERPRINT_STATES: usize = 16;
const FINGERPRINT_SEED: u64 = 0x6475_616c;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DualError {
    #[error("element {0} listed twice")]
    DuplicateElements(usize),
    #[error("no position in row {row} carries the requested dual element")]
    NoComposablePosition { row: usize },
    #[error("dual elements at {first:?} and {second:?} are ambiguous (distance {distance})")]
    FingerprintCollision { first: (usize, usize), second: (usize, usize), distance: f64 },
    #[error("expected {expected} dual elements, found {found}")]
    WrongClassCount { expected: usize, found: usize },
    #[error("pair ({a}, {b}) has {} positive products", candidates.len())]
    NoUniqueProduct { a: usize, b: usize, candidates: Vec<usize> },
    #[error("recovered table is not a group: {0}")]
    InvalidGroup(#[from] GroupError),
    #[error("{x} is not in the double coset of {b} by <{a}>")]
    NotInDoubleCoset { a: usize, b: usize, x: usize },
}

/// `p ↦ [p(g_j⁻¹ g_k)]` for a list `g_1, …, g_n` of distinct elements.
#[derive(Debug, Clone)]
pub struct NMorphism {
    group: FiniteGroup,
    elements: Vec<usize>,
    grid: Vec<Vec<usize>>,
}

pub fn mult_table_morphism(group: &FiniteGroup, elements: &[usize]) -> Result<NMorphism, DualError> {
    let mut seen = BTreeSet::new();
    for &g in elements {
        group.check(g)?;
        if !seen.insert(g) {
            return Err(DualError::DuplicateElements(g));
        }
    }
    let grid = elements
        .iter()
        .map(|&gj| elements.iter().map(|&gk| group.mul(group.inv(gj), gk)).collect())
        .collect();
    Ok(NMorphism { group: group.clone(), elements: elements.to_vec(), grid })
}

impl NMorphism {
    /// The morphism over the natural enumeration of the whole group.
    pub fn full(group: &FiniteGroup) -> Self {
        mult_table_morphism(group, &group.elements().collect::<Vec<_>>()).expect("distinct elements")
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn grid(&self) -> &[Vec<usize>] {
        &self.grid
    }

    pub fn entry(&self, j: usize, k: usize) -> usize {
        self.grid[j][k]
    }

    /// `φ(p)`.
    pub fn evaluate<T: Real>(&self, p: &[Complex<T>]) -> CMatrix<T> {
        let n = self.size();
        CMatrix::from_fn(n, n, |j, k| p[self.grid[j][k]])
    }
}

/// Maximum violations of the four morphism properties over a sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorphismReport {
    /// `max |φ(λp + (1−λ)q) − λφ(p) − (1−λ)φ(q)|`.
    pub affine_defect: f64,
    /// `max |φ(pq) − φ(p) ∘ φ(q)|`.
    pub multiplicative_defect: f64,
    /// Smallest eigenvalue of `φ(p) − φ(q)` over ordered pairs `p ≥ q`.
    pub order_min_eigenvalue: f64,
    /// Smallest eigenvalue of `φ(p) ∘ φ(q)`.
    pub schur_min_eigenvalue: f64,
    /// `φ(δ_e)` is nonzero.
    pub nonvanishing: bool,
    pub pairs: usize,
}

/// Checks properties I–IV on consecutive pairs of `samples`.
///
/// Each pair `(r, s)` also yields the ordered pair `p = λr + (1−λ)s ≥ q = λr`,
/// where `p − q = (1−λ)s` is positive definite and `q(e) ≤ 1`.
pub fn verify_morphism<T: Real>(phi: &NMorphism, samples: &[State<T>], lambdas: &[T]) -> MorphismReport {
    let mut report = MorphismReport {
        affine_defect: 0.0,
        multiplicative_defect: 0.0,
        order_min_eigenvalue: f64::INFINITY,
        schur_min_eigenvalue: f64::INFINITY,
        nonvanishing: false,
        pairs: 0,
    };
    if lambdas.is_empty() {
        return report;
    }
    for (i, pair) in samples.windows(2).enumerate() {
        let (r, s) = (&pair[0], &pair[1]);
        let lambda = lambdas[i % lambdas.len()];
        let (fr, fs) = (phi.evaluate(r.values()), phi.evaluate(s.values()));

        let mix = r.convex_combine(s, lambda);
        let affine = &fr.scale_real(lambda) + &fs.scale_real(T::one() - lambda);
        report.affine_defect = report.affine_defect.max(phi.evaluate(mix.values()).max_abs_diff(&affine).as_f64());

        let schur = fr.hadamard(&fs);
        let prod = r.schur_product(s);
        report.multiplicative_defect =
            report.multiplicative_defect.max(phi.evaluate(prod.values()).max_abs_diff(&schur).as_f64());
        report.schur_min_eigenvalue = report.schur_min_eigenvalue.min(min_eigenvalue(&schur).as_f64());

        let q: Vec<Complex<T>> = r.values().iter().map(|&z| z * lambda).collect();
        let diff = &phi.evaluate(mix.values()) - &phi.evaluate(&q);
        report.order_min_eigenvalue = report.order_min_eigenvalue.min(min_eigenvalue(&diff).as_f64());
        report.pairs += 1;
    }
    let mut delta = vec![Complex::<T>::zero(); phi.group.order()];
    delta[phi.group.identity()] = Complex::one();
    report.nonvanishing = phi.evaluate(&delta).frobenius_norm() > T::zero();
    report
}

/// A dual element: the entry `(j, k)` of a morphism, with its fingerprint.
#[derive(Debug, Clone, PartialEq)]
pub struct DualElement<T> {
    pub position: (usize, usize),
    pub fingerprint: Vec<Complex<T>>,
}

impl<T: Real> DualElement<T> {
    pub fn distance(&self, other: &Self) -> T {
        self.fingerprint
            .iter()
            .zip(&other.fingerprint)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.distance(other) <= T::of(FINGERPRINT_TOL)
    }
}

/// Characters when abelian, otherwise the vector states of the standard
/// basis and of seeded random vectors. Each entry is a value vector.
pub fn fingerprint_family<T: Real>(group: &FiniteGroup) -> Vec<Vec<Complex<T>>> {
    if group.is_abelian() {
        if let Ok(chars) = characters::<T>(group) {
            return chars.into_iter().map(|c| c.values).collect();
        }
    }
    let rep = PermutationRep::natural(group);
    let n = group.order();
    let mut family = Vec::with_capacity(n + RANDOM_FINGERPRINT_STATES);
    for j in 0..n {
        let mut e = vec![Complex::zero(); n];
        e[j] = Complex::one();
        family.push(State::vector(&rep, &e).expect("unit basis vector").values().to_vec());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FINGERPRINT_SEED);
    for _ in 0..RANDOM_FINGERPRINT_STATES {
        let raw: Vec<Complex<T>> = (0..n)
            .map(|_| Complex::new(T::of(rng.sample(StandardNormal)), T::of(rng.sample(StandardNormal))))
            .collect();
        let w = normalized(&raw).expect("nonzero gaussian vector");
        family.push(State::vector(&rep, &w).expect("unit vector").values().to_vec());
    }
    family
}

/// A morphism together with the fingerprints of all its entries.
#[derive(Debug, Clone)]
pub struct DualSpace<T> {
    morphism: NMorphism,
    elements: Vec<Vec<DualElement<T>>>,
}

impl<T: Real> DualSpace<T> {
    pub fn new(morphism: NMorphism, family: &[Vec<Complex<T>>]) -> Self {
        let n = morphism.size();
        let elements = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| DualElement {
                        position: (j, k),
                        fingerprint: family.iter().map(|p| p[morphism.grid[j][k]]).collect(),
                    })
                    .collect()
            })
            .collect();
        Self { morphism, elements }
    }

    pub fn morphism(&self) -> &NMorphism {
        &self.morphism
    }

    pub fn element(&self, j: usize, k: usize) -> &DualElement<T> {
        &self.elements[j][k]
    }

    /// Any diagonal entry.
    pub fn identity(&self) -> &DualElement<T> {
        &self.elements[0][0]
    }

    /// `f⁻¹(p) = φ(p)_{kj}`.
    pub fn inverse(&self, f: &DualElement<T>) -> &DualElement<T> {
        let (j, k) = f.position;
        &self.elements[k][j]
    }

    /// `f` at `(j₀, k₀)` times `h`: `h` is re-sited to some `(k₀, s₀)`
    /// carrying the same function, and the product sits at `(j₀, s₀)`.
    pub fn product(&self, f: &DualElement<T>, h: &DualElement<T>) -> Result<&DualElement<T>, DualError> {
        let (j0, k0) = f.position;
        let s0 = if h.position.0 == k0 {
            h.position.1
        } else {
            self.elements[k0]
                .iter()
                .position(|cand| cand.same_as(h))
                .ok_or(DualError::NoComposablePosition { row: k0 })?
        };
        Ok(&self.elements[j0][s0])
    }
}

/// The group recovered from dual elements of the full morphism.
#[derive(Debug, Clone)]
pub struct DualGroup {
    pub group: FiniteGroup,
    /// Position of a representative of each class.
    pub representatives: Vec<(usize, usize)>,
    /// Original element carried by each class, for reporting only.
    pub correspondence: Vec<usize>,
    /// Smallest fingerprint distance between distinct classes.
    pub separation: f64,
}

pub fn dual_group<T: Real>(group: &FiniteGroup) -> Result<DualGroup, DualError> {
    let family = fingerprint_family::<T>(group);
    let space = DualSpace::new(NMorphism::full(group), &family);
    let n = group.order();

    let mut reps: Vec<&DualElement<T>> = Vec::new();
    let mut class_of = vec![vec![0usize; n]; n];
    let mut separation = f64::INFINITY;
    for j in 0..n {
        for k in 0..n {
            let f = space.element(j, k);
            let mut found = None;
            for (c, r) in reps.iter().enumerate() {
                let d = f.distance(r).as_f64();
                if d <= FINGERPRINT_TOL {
                    found = Some(c);
                    break;
                } else if d < SEPARATION {
                    return Err(DualError::FingerprintCollision { first: r.position, second: (j, k), distance: d });
                }
                separation = separation.min(d);
            }
            class_of[j][k] = match found {
                Some(c) => c,
                None => {
                    reps.push(f);
                    reps.len() - 1
                }
            };
        }
    }
    if reps.len() != n {
        return Err(DualError::WrongClassCount { expected: n, found: reps.len() });
    }

    let mut table = vec![vec![0usize; n]; n];
    for (c1, f) in reps.iter().enumerate() {
        for (c2, h) in reps.iter().enumerate() {
            let prod = space.product(f, h)?;
            table[c1][c2] = class_of[prod.position.0][prod.position.1];
        }
    }
    let recovered = FiniteGroup::from_table(table)?;
    let correspondence = reps.iter().map(|f| space.morphism().entry(f.position.0, f.position.1)).collect();
    Ok(DualGroup {
        group: recovered,
        representatives: reps.iter().map(|f| f.position).collect(),
        correspondence,
        separation,
    })
}

/// Access to the values of a spanning family of states on an unnamed group.
/// Elements are opaque labels `0..size()`.
pub trait StateOracle<T> {
    fn size(&self) -> usize;
    fn state_count(&self) -> usize;
    fn value(&self, state: usize, label: usize) -> Complex<T>;
}

/// All characters of an abelian group, behind shuffled labels.
pub struct CharacterOracle<T> {
    values: Vec<Vec<Complex<T>>>,
}

impl<T: Real> CharacterOracle<T> {
    pub fn new(group: &FiniteGroup, seed: u64) -> Result<Self, crate::state::StateError> {
        let chars = characters::<T>(group)?;
        let mut labels: Vec<usize> = group.elements().collect();
        labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let values = chars.iter().map(|c| labels.iter().map(|&g| c.values[g]).collect()).collect();
        Ok(Self { values })
    }

    /// Adds `delta` to one stored value.
    pub fn corrupt(&mut self, state: usize, label: usize, delta: Complex<T>) {
        self.values[state][label] += delta;
    }
}

impl<T: Real> StateOracle<T> for CharacterOracle<T> {
    fn size(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    fn state_count(&self) -> usize {
        self.values.len()
    }

    fn value(&self, state: usize, label: usize) -> Complex<T> {
        self.values[state][label]
    }
}

/// Rebuilds the multiplication table on the oracle's labels: `table[a][b]`
/// is the unique `x` with `Q_p ⪰ 0` for every state of the oracle.
pub fn reconstruct_abelian<T: Real, O: StateOracle<T> + Sync>(oracle: &O, tol: T) -> Result<FiniteGroup, DualError> {
    let n = oracle.size();
    let states: Vec<Vec<Complex<T>>> =
        (0..oracle.state_count()).map(|s| (0..n).map(|l| oracle.value(s, l)).collect()).collect();
    let rows: Vec<Result<Vec<usize>, DualError>> = (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| {
                    let candidates: Vec<usize> = (0..n)
                        .filter(|&x| {
                            states.iter().all(|p| qmatrix(p, Triple::new(a, b, x)).is_psd(tol))
                        })
                        .collect();
                    match candidates.as_slice() {
                        [x] => Ok(*x),
                        _ => Err(DualError::NoUniqueProduct { a, b, candidates }),
                    }
                })
                .collect()
        })
        .collect();
    let table = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteGroup::from_table(table)?)
}

/// `entries[a][b]` = candidate products of `(a, b)`, as sorted index lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlurredTable {
    pub entries: Vec<Vec<Vec<usize>>>,
}

impl BlurredTable {
    /// Whether entry `(a, b)` equals `{ab, ba}`.
    pub fn entry_matches(&self, group: &FiniteGroup, a: usize, b: usize) -> bool {
        self.entries[a][b] == expected_products(group, a, b)
    }

    pub fn mismatches(&self, group: &FiniteGroup) -> Vec<(usize, usize)> {
        let n = group.order();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| !self.entry_matches(group, a, b)).collect()
    }
}

/// Sorted `{ab, ba}`.
pub fn expected_products(group: &FiniteGroup, a: usize, b: usize) -> Vec<usize> {
    let set: BTreeSet<usize> = [group.mul(a, b), group.mul(b, a)].into_iter().collect();
    set.into_iter().collect()
}

pub fn reconstruct_blurred<T: Real>(group: &FiniteGroup, config: &PositivityConfig) -> BlurredTable {
    let analyzer = Analyzer::<T>::new(group);
    reconstruct_blurred_with(&analyzer, config)
}

pub fn reconstruct_blurred_with<T: Real>(analyzer: &Analyzer<T>, config: &PositivityConfig) -> BlurredTable {
    let n = analyzer.group().order();
    let entries = (0..n)
        .into_par_iter()
        .map(|a| (0..n).map(|b| analyzer.candidate_products(a, b, config)).collect())
        .collect();
    BlurredTable { entries }
}

/// Outcome of locating `x` as `aˢbaᵗ` through the coset-enumerated Cayley
/// representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XwordReport {
    pub s: usize,
    pub t: usize,
    /// Every `(s, t)` with `x = aˢbaᵗ`.
    pub all: Vec<(usize, usize)>,
    pub block_size: usize,
    pub b12: usize,
    pub b21: usize,
    pub x12: usize,
    pub x21: usize,
}

impl XwordReport {
    pub fn counts_match(&self) -> bool {
        self.b12 == self.x12 && self.b21 == self.x21
    }
}

pub fn xword_scan(group: &FiniteGroup, a: usize, b: usize, x: usize) -> Result<XwordReport, DualError> {
    let enumeration = group.coset_enumeration(a, b)?;
    let rep = PermutationRep::new(group, enumeration).expect("coset enumeration is a bijection");
    let na = group.element_order(a);
    let count = |g: usize, j: usize, k: usize| {
        nonzero_count(&block(&rep.matrix::<f64>(g), j, k, na).expect("two blocks fit"))
    };
    let all: Vec<(usize, usize)> = (0..na)
        .flat_map(|s| (0..na).map(move |t| (s, t)))
        .filter(|&(s, t)| group.mul(group.mul(group.pow(a, s as i64), b), group.pow(a, t as i64)) == x)
        .collect();
    // fewest letters first, then the larger left exponent
    let &(s, t) = all
        .iter()
        .min_by_key(|&&(s, t)| (s + t, std::cmp::Reverse(s)))
        .ok_or(DualError::NotInDoubleCoset { a, b, x })?;
    Ok(XwordReport {
        s,
        t,
        all,
        block_size: na,
        b12: count(b, 1, 2),
        b21: count(b, 2, 1),
        x12: count(x, 1, 2),
        x21: count(x, 2, 1),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SemidirectReport {
    Skipped { reason: String },
    Checked(SemidirectDetails),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemidirectDetails {
    pub m: usize,
    pub order_a: usize,
    pub gcd: usize,
    pub lambda: [f64; 2],
    pub phi: f64,
    pub b_xi_xi: [f64; 2],
    pub eigen_residual: f64,
    /// `l` with `⟨baˡξ, ξ⟩ = λ⟨bξ, ξ⟩`.
    pub eigen_passing: Vec<usize>,
    /// `l` for which `x = baˡ` passes universal positivity.
    pub surviving: Vec<usize>,
    /// Every surviving `l` satisfies `l ≡ 1 mod gcd`.
    pub congruence_holds: bool,
}

impl SemidirectReport {
    pub fn details(&self) -> Option<&SemidirectDetails> {
        match self {
            SemidirectReport::Checked(d) => Some(d),
            SemidirectReport::Skipped { .. } => None,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn semidirect_case_check<T: Real>(
    group: &FiniteGroup,
    a: usize,
    b: usize,
    config: &PositivityConfig,
) -> SemidirectReport {
    let skip = |reason: &str| SemidirectReport::Skipped { reason: reason.to_string() };
    if a == group.identity() {
        return skip("a is the identity");
    }
    if group.cyclic_subgroup(a).contains(b) {
        return skip("b lies in <a>");
    }
    let na = group.element_order(a);
    let ab = group.mul(a, b);
    let Some(m) = (0..na).find(|&m| group.mul(b, group.pow(a, m as i64)) == ab) else {
        return skip("no m with ab = ba^m");
    };
    if m == 1 {
        return skip("a and b commute (m = 1)");
    }
    if !group.double_coset_membership(a, b).b_in_hbinv_h {
        return skip("b is not in <a> b^-1 <a>");
    }

    let g = gcd((m + na - 1) % na, na);
    let lambda: Complex<T> = root_of_unity(1, g);
    let rep = PermutationRep::for_cosets(group, a, Some(b));
    let mut chosen = None;
    for step in 0..8 {
        let phi = T::of(step as f64 * std::f64::consts::FRAC_PI_4);
        let xi = two_block_eigenvector(na, lambda, phi, rep.dim()).expect("block fits, λ is a root of unity");
        let bxx = rep.matrix_element(b, &xi, &xi);
        if bxx.norm() > T::of(1e-6) {
            chosen = Some((phi, xi, bxx));
            break;
        }
    }
    let Some((phi, xi, bxx)) = chosen else {
        return skip("<bξ, ξ> vanishes for every tried φ");
    };
    let eigen_residual = {
        let axi = rep.apply(a, &xi);
        axi.iter().zip(&xi).map(|(u, v)| (*u - lambda * *v).norm_sqr()).fold(T::zero(), |s, z| s + z).sqrt()
    };
    let target = lambda * bxx;
    let eigen_passing = (0..na)
        .filter(|&l| {
            let x = group.mul(b, group.pow(a, l as i64));
            (rep.matrix_element(x, &xi, &xi) - target).norm() < T::of(1e-9)
        })
        .collect();

    let analyzer = Analyzer::<T>::new(group);
    let surviving: Vec<usize> = (0..na)
        .into_par_iter()
        .filter(|&l| {
            let x = group.mul(b, group.pow(a, l as i64));
            analyzer.universal_positivity(Triple::new(a, b, x), config).holds()
        })
        .collect();
    let congruence_holds = surviving.iter().all(|&l| l % g == 1 % g);

    SemidirectReport::Checked(SemidirectDetails {
        m,
        order_a: na,
        gcd: g,
        lambda: [lambda.re.as_f64(), lambda.im.as_f64()],
        phi: phi.as_f64(),
        b_xi_xi: [bxx.re.as_f64(), bxx.im.as_f64()],
        eigen_residual: eigen_residual.as_f64(),
        eigen_passing,
        surviving,
        congruence_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, find_isomorphism, quaternion8, symmetric};

    fn random_states(group: &FiniteGroup, count: usize, seed: u64) -> Vec<State<f64>> {
        let rep = PermutationRep::natural(group);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let raw: Vec<Complex<f64>> =
                    (0..group.order()).map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
                State::vector(&rep, &normalized(&raw).unwrap()).unwrap()
            })
            .collect()
    }

    #[test]
    fn morphism_grids() {
        let z3 = cyclic(3).unwrap();
        assert_eq!(mult_table_morphism(&z3, &[0]).unwrap().grid(), &[vec![0]]);
        let full = NMorphism::full(&z3);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(full.entry(j, k), (k + 3 - j) % 3);
            }
        }
        assert_eq!(mult_table_morphism(&z3, &[1, 1]).unwrap_err(), DualError::DuplicateElements(1));
        assert!(mult_table_morphism(&z3, &[4]).is_err());

        let s3 = symmetric(3).unwrap();
        let phi = NMorphism::full(&s3);
        let mut delta = vec![Complex::<f64>::zero(); 6];
        delta[s3.identity()] = Complex::one();
        assert_eq!(phi.evaluate(&delta), CMatrix::identity(6));
    }

    #[test]
    fn morphism_properties_s3() {
        let g = symmetric(3).unwrap();
        let phi = NMorphism::full(&g);
        let states = random_states(&g, 201, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let lambdas: Vec<f64> = (0..200).map(|_| rng.random()).collect();
        let r = verify_morphism(&phi, &states, &lambdas);
        assert_eq!(r.pairs, 200);
        assert!(r.affine_defect <= 1e-14);
        assert!(r.multiplicative_defect <= 1e-14);
        assert!(r.order_min_eigenvalue >= -1e-9);
        assert!(r.schur_min_eigenvalue >= -1e-10);
        assert!(r.nonvanishing);
    }

    #[test]
    fn partial_morphism_is_psd() {
        let g = quaternion8();
        let phi = mult_table_morphism(&g, &[0, 2, 4, 7]).unwrap();
        for p in random_states(&g, 20, 3) {
            assert!(min_eigenvalue(&phi.evaluate(p.values())) >= -1e-12);
        }
    }

    #[test]
    fn dual_products() {
        let z3 = cyclic(3).unwrap();
        let space = DualSpace::new(NMorphism::full(&z3), &fingerprint_family::<f64>(&z3));
        let f = space.element(0, 1);
        let sq = space.product(f, f).unwrap();
        assert_eq!(sq.position, (0, 2));
        let id = space.element(1, 1);
        assert_eq!(space.product(id, space.element(1, 2)).unwrap().position, (1, 2));
        assert!(space.product(f, space.inverse(f)).unwrap().same_as(space.identity()));

        let partial = DualSpace::new(mult_table_morphism(&z3, &[0, 1]).unwrap(), &fingerprint_family::<f64>(&z3));
        let a = partial.element(0, 1);
        assert_eq!(partial.product(a, a).unwrap_err(), DualError::NoComposablePosition { row: 1 });
    }

    #[test]
    fn dual_product_is_associative() {
        let g = symmetric(3).unwrap();
        let space = DualSpace::new(NMorphism::full(&g), &fingerprint_family::<f64>(&g));
        for j in 0..6 {
            for k in 0..6 {
                for s in 0..6 {
                    let (f, h, w) = (space.element(0, j), space.element(2, k), space.element(4, s));
                    let left = space.product(space.product(f, h).unwrap(), w).unwrap();
                    let right = space.product(f, space.product(h, w).unwrap()).unwrap();
                    assert!(left.same_as(right));
                }
            }
        }
    }

    #[test]
    fn dual_groups() {
        for g in [cyclic(1).unwrap(), cyclic(6).unwrap(), symmetric(3).unwrap(), dihedral(4).unwrap(), quaternion8()] {
            let d = dual_group::<f64>(&g).unwrap();
            assert!(find_isomorphism(&d.group, &g).is_some());
            assert!(d.group.order() == 1 || d.separation > SEPARATION);
            // the class carrying element c multiplies like c
            for (c1, &g1) in d.correspondence.iter().enumerate() {
                for (c2, &g2) in d.correspondence.iter().enumerate() {
                    assert_eq!(d.correspondence[d.group.mul(c1, c2)], g.mul(g1, g2));
                }
            }
        }
    }

    #[test]
    fn abelian_reconstruction() {
        for g in [cyclic(6).unwrap(), direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap()] {
            let oracle = CharacterOracle::<f64>::new(&g, 5).unwrap();
            let rec = reconstruct_abelian(&oracle, 1e-9).unwrap();
            assert!(find_isomorphism(&rec, &g).is_some());
        }
        let g = cyclic(6).unwrap();
        let mut oracle = CharacterOracle::<f64>::new(&g, 5).unwrap();
        oracle.corrupt(1, 2, Complex::new(0.5, 0.0));
        assert!(reconstruct_abelian(&oracle, 1e-9).is_err());
    }

    #[test]
    fn blurred_tables() {
        let cfg = PositivityConfig::default();
        let z4 = cyclic(4).unwrap();
        let t = reconstruct_blurred::<f64>(&z4, &cfg);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(t.entries[a][b], vec![z4.mul(a, b)]);
            }
        }
        let s3 = symmetric(3).unwrap();
        let t = reconstruct_blurred::<f64>(&s3, &cfg);
        assert!(t.mismatches(&s3).is_empty());
        assert_eq!(t.entries[3][4].len(), 1);
        assert_eq!(t.entries[1][2].len(), 2);
    }

    #[test]
    fn xwords() {
        let q = quaternion8();
        let (i, j) = (2, 4);
        let r = xword_scan(&q, i, j, q.mul(i, j)).unwrap();
        assert_eq!((r.s, r.t), (1, 0));
        assert_eq!((r.b12, r.x12), (4, 4));
        assert!(r.counts_match());
        let r = xword_scan(&q, i, j, q.mul(j, i)).unwrap();
        assert_eq!((r.s, r.t), (0, 1));
        assert!(r.counts_match());

        let s3 = symmetric(3).unwrap();
        assert!(matches!(xword_scan(&s3, 1, 5, 0), Err(DualError::NotInDoubleCoset { .. })));
        assert!(matches!(xword_scan(&s3, 3, 4, 0), Err(DualError::InvalidGroup(GroupError::BInCyclicSubgroup { .. }))));
    }

    #[test]
    fn semidirect_cases() {
        let cfg = PositivityConfig::default();
        let q = quaternion8();
        let d = semidirect_case_check::<f64>(&q, 2, 4, &cfg);
        let d = d.details().unwrap();
        assert_eq!((d.m, d.gcd), (3, 2));
        assert_eq!(d.surviving, vec![1, 3]);
        assert_eq!(d.eigen_passing, vec![1, 3]);
        assert!(d.congruence_holds && d.eigen_residual < 1e-12);

        let d4 = dihedral(4).unwrap();
        let r = semidirect_case_check::<f64>(&d4, 1, 4, &cfg);
        let r = r.details().unwrap();
        assert_eq!(r.m, 3);
        assert_eq!(r.surviving, vec![1, 3]);

        let z6 = cyclic(6).unwrap();
        assert!(semidirect_case_check::<f64>(&z6, 1, 2, &cfg).details().is_none());
        assert!(semidirect_case_check::<f64>(&q, 0, 2, &cfg).details().is_none());
    }
}
