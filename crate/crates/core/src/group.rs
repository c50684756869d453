//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..n`. `table[j][k]` is the index of `g_j · g_k`.
//! Standard groups use the following element orders:
//!
//! * `cyclic(n)`: `k` is the residue `k mod n`.
//! * `dihedral(n)` (order `2n`): index `k < n` is `r^k`, index `n + k` is `s r^k`,
//!   with `s r = r^{-1} s`.
//! * `quaternion8`: `1, -1, i, -i, j, -j, k, -k`.
//! * `symmetric(n)`: permutations of `0..n` in lexicographic order of their
//!   one-line notation; the product `στ` applies `τ` first.
//! * `direct_product(G, H)`: `(g, h)` has index `g · |H| + h`.
//! * `opposed(G)`: same elements, `table[j][k] = G.table[k][j]`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Largest order accepted; associativity is checked exhaustively.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("{axis} {index} repeats element {repeated}")]
    NotLatinSquare { axis: &'static str, index: usize, repeated: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unsupported size {n} for {kind}")]
    UnsupportedSize { kind: &'static str, n: usize },
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("b = {b} lies in the cyclic subgroup generated by a = {a}")]
    BInCyclicSubgroup { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a raw table against the group axioms.
    pub fn from_table(raw: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = raw.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        for (row, r) in raw.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: n });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::EntryOutOfRange { row, col, value });
            }
        }
        for index in 0..n {
            let mut seen = vec![false; n];
            for &v in &raw[index] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::NotLatinSquare { axis: "row", index, repeated: v });
                }
            }
            let mut seen = vec![false; n];
            for r in &raw {
                let v = r[index];
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::NotLatinSquare { axis: "column", index, repeated: v });
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|k| raw[e][k] == k && raw[k][e] == k))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = Vec::with_capacity(n);
        for j in 0..n {
            let inv = (0..n)
                .find(|&k| raw[j][k] == identity && raw[k][j] == identity)
                .ok_or(GroupError::NoInverse(j))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = raw[a][b];
                for c in 0..n {
                    if raw[ab][c] != raw[a][raw[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self { order: n, table: raw, identity, inverses, names: None })
    }

    /// Attaches display names; ignored unless there is exactly one per element.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.order {
            self.names = Some(names);
        }
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, g: usize) -> String {
        match &self.names {
            Some(names) => names[g].clone(),
            None => g.to_string(),
        }
    }

    /// Looks an element up by display name, falling back to its index.
    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == name) {
                return Some(i);
            }
        }
        name.parse().ok().filter(|&i| i < self.order)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g^k` for possibly negative `k`.
    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn check(&self, g: usize) -> Result<usize, GroupError> {
        if g < self.order {
            Ok(g)
        } else {
            Err(GroupError::ElementOutOfRange(g))
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Least `k ≥ 1` with `g^k = e`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut acc = g;
        while acc != self.identity {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|g| self.element_order(g)).collect()
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p = self.element_orders();
        p.sort_unstable();
        p
    }

    /// `⟨a⟩` in power order `e, a, a², …`.
    pub fn cyclic_subgroup(&self, a: usize) -> Subgroup<'_> {
        let mut members = vec![self.identity];
        let mut acc = a;
        while acc != self.identity {
            members.push(acc);
            acc = self.mul(acc, a);
        }
        Subgroup { parent: self, members }
    }

    /// Closure of `gens` under multiplication.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup<'_> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let g = members[i];
            for &s in gens {
                let h = self.mul(g, s);
                if !inside[h] {
                    inside[h] = true;
                    members.push(h);
                }
            }
            i += 1;
        }
        Subgroup { parent: self, members }
    }

    /// Cosets `βH` of `H = ⟨a⟩` listed with `H` in power order. When `second`
    /// is given it is the second representative; remaining representatives
    /// are the smallest uncovered indices.
    pub fn cosets_of_cyclic(&self, a: usize, second: Option<usize>) -> CosetDecomposition {
        let h = self.cyclic_subgroup(a).members;
        let mut covered = vec![false; self.order];
        let mut transversal = Vec::new();
        let mut enumeration = Vec::with_capacity(self.order);
        let mut push = |beta: usize, covered: &mut Vec<bool>, enumeration: &mut Vec<usize>| {
            transversal.push(beta);
            for &hk in &h {
                let g = self.mul(beta, hk);
                covered[g] = true;
                enumeration.push(g);
            }
        };
        push(self.identity, &mut covered, &mut enumeration);
        if let Some(b) = second {
            if !covered[b] {
                push(b, &mut covered, &mut enumeration);
            }
        }
        while let Some(beta) = (0..self.order).find(|&g| !covered[g]) {
            push(beta, &mut covered, &mut enumeration);
        }
        CosetDecomposition { subgroup: h, transversal, enumeration }
    }

    /// Enumeration `H, bH, β₃H, …` for `H = ⟨a⟩`, requiring `b ∉ H`.
    pub fn coset_enumeration(&self, a: usize, b: usize) -> Result<Vec<usize>, GroupError> {
        self.check(a)?;
        self.check(b)?;
        if self.cyclic_subgroup(a).contains(b) {
            return Err(GroupError::BInCyclicSubgroup { a, b });
        }
        Ok(self.cosets_of_cyclic(a, Some(b)).enumeration)
    }

    /// `HbH` and whether `b ∈ H b⁻¹ H`, for `H = ⟨a⟩`.
    pub fn double_coset_membership(&self, a: usize, b: usize) -> DoubleCoset {
        let h = self.cyclic_subgroup(a).members;
        let binv = self.inv(b);
        let mut hbh = BTreeSet::new();
        let mut hbinvh = BTreeSet::new();
        for &h1 in &h {
            for &h2 in &h {
                hbh.insert(self.mul(self.mul(h1, b), h2));
                hbinvh.insert(self.mul(self.mul(h1, binv), h2));
            }
        }
        DoubleCoset {
            b_in_hbinv_h: hbinvh.contains(&b),
            hbh: hbh.into_iter().collect(),
        }
    }

    /// Same elements with the product reversed.
    pub fn opposed(&self) -> Self {
        let n = self.order;
        let table = (0..n).map(|j| (0..n).map(|k| self.table[k][j]).collect()).collect();
        Self {
            order: n,
            table,
            identity: self.identity,
            inverses: self.inverses.clone(),
            names: self.names.clone(),
        }
    }

    /// Stable SHA-256 of the multiplication table (names excluded).
    pub fn table_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(render_rows(self).as_bytes());
        h.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &m in members {
            inside[m] = true;
        }
        inside[self.identity]
            && members.iter().all(|&x| inside[self.inv(x)] && members.iter().all(|&y| inside[self.mul(x, y)]))
    }
}

#[derive(Debug, Clone)]
pub struct Subgroup<'g> {
    pub parent: &'g FiniteGroup,
    pub members: Vec<usize>,
}

impl Subgroup<'_> {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(&g)
    }

    /// Position of `g` in `members`.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    /// `⟨a⟩` in power order.
    pub subgroup: Vec<usize>,
    /// `β₁ = e, β₂, …, β_d`.
    pub transversal: Vec<usize>,
    /// Concatenation of the cosets `β_k H`.
    pub enumeration: Vec<usize>,
}

impl CosetDecomposition {
    pub fn block_size(&self) -> usize {
        self.subgroup.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Sorted elements of `HbH`.
    pub hbh: Vec<usize>,
    pub b_in_hbinv_h: bool,
}

/// Builtin group families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardGroup {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion8,
    Symmetric(usize),
    DirectProduct(Box<StandardGroup>, Box<StandardGroup>),
    Opposed(Box<StandardGroup>),
}

impl StandardGroup {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            Self::Cyclic(n) => cyclic(*n),
            Self::Dihedral(n) => dihedral(*n),
            Self::Quaternion8 => Ok(quaternion8()),
            Self::Symmetric(n) => symmetric(*n),
            Self::DirectProduct(g, h) => direct_product(&g.build()?, &h.build()?),
            Self::Opposed(g) => Ok(g.build()?.opposed()),
        }
    }

    /// Parses names such as `z6`, `d4`, `q8`, `s3`, `z2xz4` and `op(s3)`.
    pub fn parse(name: &str) -> Option<Self> {
        let name = name.trim().to_ascii_lowercase();
        if let Some(inner) = name.strip_prefix("op(").and_then(|s| s.strip_suffix(')')) {
            return Some(Self::Opposed(Box::new(Self::parse(inner)?)));
        }
        if let Some((lhs, rhs)) = name.split_once('x') {
            return Some(Self::DirectProduct(Box::new(Self::parse(lhs)?), Box::new(Self::parse(rhs)?)));
        }
        if name == "q8" {
            return Some(Self::Quaternion8);
        }
        if name == "klein" || name == "v4" {
            return Some(Self::DirectProduct(Box::new(Self::Cyclic(2)), Box::new(Self::Cyclic(2))));
        }
        if !name.is_ascii() || name.len() < 2 {
            return None;
        }
        let (kind, num) = name.split_at(1);
        let n: usize = num.parse().ok()?;
        match kind {
            "z" | "c" => Some(Self::Cyclic(n)),
            "d" => Some(Self::Dihedral(n)),
            "s" => Some(Self::Symmetric(n)),
            _ => None,
        }
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > MAX_ORDER {
        return Err(GroupError::UnsupportedSize { kind: "cyclic", n });
    }
    let table = (0..n).map(|j| (0..n).map(|k| (j + k) % n).collect()).collect();
    let g = FiniteGroup::from_table(table)?;
    Ok(g.with_names((0..n).map(|k| k.to_string()).collect()))
}

/// Symmetries of the regular `n`-gon, order `2n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || 2 * n > MAX_ORDER {
        return Err(GroupError::UnsupportedSize { kind: "dihedral", n });
    }
    // (f, k) stands for s^f r^k.
    let decode = |g: usize| (g / n, g % n);
    let encode = |f: usize, k: usize| f * n + k;
    let mul = |x: usize, y: usize| {
        let (f1, k1) = decode(x);
        let (f2, k2) = decode(y);
        // r^k1 s^f2 = s^f2 r^{±k1}
        let k1 = if f2 == 1 { (n - k1) % n } else { k1 };
        encode((f1 + f2) % 2, (k1 + k2) % n)
    };
    let table = (0..2 * n).map(|x| (0..2 * n).map(|y| mul(x, y)).collect()).collect();
    let power = |base: &str, k: usize| match k {
        0 => base.to_string(),
        1 => format!("{base}r"),
        _ => format!("{base}r{k}"),
    };
    let names = (0..2 * n)
        .map(|g| {
            let (f, k) = decode(g);
            if f == 0 {
                if k == 0 {
                    "e".to_string()
                } else {
                    power("", k)
                }
            } else {
                power("s", k)
            }
        })
        .collect();
    Ok(FiniteGroup::from_table(table)?.with_names(names))
}

pub fn quaternion8() -> FiniteGroup {
    // Units 1, i, j, k; unit products as (sign flip, unit).
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mul = |x: usize, y: usize| {
        let (u, su) = (x / 2, x % 2 == 1);
        let (v, sv) = (y / 2, y % 2 == 1);
        let (flip, w) = UNIT[u][v];
        2 * w + usize::from(su ^ sv ^ flip)
    };
    let table = (0..8).map(|x| (0..8).map(|y| mul(x, y)).collect()).collect();
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteGroup::from_table(table).expect("Q8 table is a group").with_names(names)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 5 {
        return Err(GroupError::UnsupportedSize { kind: "symmetric", n });
    }
    let perms = permutations(n);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation listed");
    let table = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| {
                    let st: Vec<usize> = (0..n).map(|i| s[t[i]]).collect();
                    index(&st)
                })
                .collect()
        })
        .collect();
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    Ok(FiniteGroup::from_table(table)?.with_names(names))
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (m, n) = (g.order(), h.order());
    if m * n > MAX_ORDER {
        return Err(GroupError::UnsupportedSize { kind: "direct product", n: m * n });
    }
    let table = (0..m * n)
        .map(|x| {
            (0..m * n)
                .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                .collect()
        })
        .collect();
    let names = (0..m * n).map(|x| format!("({},{})", g.name(x / n), h.name(x % n))).collect();
    Ok(FiniteGroup::from_table(table)?.with_names(names))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// 1-based cycle notation, `e` for the identity.
fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            let _ = write!(s, "{}", i + 1);
            i = p[i];
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push('e');
    }
    s
}

/// Finds a bijection `φ` with `φ(jk) = φ(j)φ(k)`.
pub fn find_isomorphism(g1: &FiniteGroup, g2: &FiniteGroup) -> Option<Vec<usize>> {
    if g1.order() != g2.order() || g1.order_profile() != g2.order_profile() {
        return None;
    }
    let orders1 = g1.element_orders();
    let orders2 = g2.element_orders();

    let mut gens = Vec::new();
    let mut span = g1.generated_subgroup(&gens).order();
    while span < g1.order() {
        let inside = g1.generated_subgroup(&gens).members;
        let next = g1
            .elements()
            .filter(|g| !inside.contains(g))
            .max_by_key(|&g| (orders1[g], std::cmp::Reverse(g)))
            .expect("proper subgroup leaves an element outside");
        gens.push(next);
        span = g1.generated_subgroup(&gens).order();
    }

    let mut images = Vec::with_capacity(gens.len());
    let map = search(g1, g2, &gens, &orders1, &orders2, &mut images)?;
    debug_assert!(is_isomorphism(g1, g2, &map));
    Some(map)
}

fn search(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    gens: &[usize],
    orders1: &[usize],
    orders2: &[usize],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if images.len() == gens.len() {
        let map = extend_generators(g1, g2, gens, images)?;
        return is_isomorphism(g1, g2, &map).then_some(map);
    }
    let next = gens[images.len()];
    for cand in g2.elements().filter(|&c| orders2[c] == orders1[next]) {
        images.push(cand);
        if extend_generators(g1, g2, &gens[..images.len()], images).is_some() {
            if let Some(map) = search(g1, g2, gens, orders1, orders2, images) {
                return Some(map);
            }
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] ↦ images[i]` over the generated subgroup, checking
/// consistency and injectivity. Unreached entries are `usize::MAX`.
fn extend_generators(g1: &FiniteGroup, g2: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g1.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[g1.identity()] = g2.identity();
    used[g2.identity()] = true;
    let mut queue = vec![g1.identity()];
    let mut i = 0;
    while i < queue.len() {
        let g = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let gs = g1.mul(g, s);
            let image = g2.mul(map[g], t);
            if map[gs] == usize::MAX {
                if used[image] {
                    return None;
                }
                map[gs] = image;
                used[image] = true;
                queue.push(gs);
            } else if map[gs] != image {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

pub fn is_isomorphism(g1: &FiniteGroup, g2: &FiniteGroup, map: &[usize]) -> bool {
    let n = g1.order();
    if map.len() != n || g2.order() != n {
        return false;
    }
    let mut used = vec![false; n];
    for &m in map {
        if m >= n || std::mem::replace(&mut used[m], true) {
            return false;
        }
    }
    (0..n).all(|j| (0..n).all(|k| map[g1.mul(j, k)] == g2.mul(map[j], map[k])))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct GtabError {
    pub line: usize,
    pub message: String,
}

/// Table rows only, one line per row.
fn render_rows(g: &FiniteGroup) -> String {
    let mut s = String::new();
    for row in g.table() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

/// Serializes to the `.gtab` text format.
///
/// ```text
/// file    := order NL row{order} trailer*
/// order   := WS* INT WS*
/// row     := WS* INT (WS+ INT){order-1} WS*
/// trailer := WS* | '#' TEXT
/// ```
///
/// A trailer of the form `# names: n0 n1 …` with exactly `order` names
/// restores element names.
pub fn write_gtab(g: &FiniteGroup) -> String {
    let mut s = format!("{}\n", g.order());
    s.push_str(&render_rows(g));
    if let Some(names) = g.names() {
        if names.iter().all(|n| !n.is_empty() && !n.contains(char::is_whitespace)) {
            let _ = writeln!(s, "# names: {}", names.join(" "));
        }
    }
    s
}

pub fn parse_gtab(text: &str) -> Result<FiniteGroup, GtabError> {
    let err = |line: usize, message: String| GtabError { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (first_no, first) = lines.next().ok_or_else(|| err(1, "missing order line".into()))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| err(first_no, format!("expected the group order, found {:?}", first.trim())))?;
    if n == 0 {
        return Err(err(first_no, "order must be positive".into()));
    }
    if n > MAX_ORDER {
        return Err(err(first_no, format!("order {n} exceeds {MAX_ORDER}")));
    }
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| err(first_no + r + 1, format!("missing table row {}", r + 1)))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|tok| tok.parse::<usize>().map_err(|_| err(no, format!("invalid entry {tok:?}"))))
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(err(no, format!("expected {n} entries, found {}", row.len())));
        }
        if let Some(bad) = row.iter().find(|&&v| v >= n) {
            return Err(err(no, format!("entry {bad} is not below {n}")));
        }
        rows.push(row);
    }
    let mut names = None;
    for (no, line) in lines {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let Some(comment) = t.strip_prefix('#') else {
            return Err(err(no, format!("trailing garbage {t:?}")));
        };
        if let Some(list) = comment.trim().strip_prefix("names:") {
            let list: Vec<String> = list.split_whitespace().map(String::from).collect();
            if list.len() != n {
                return Err(err(no, format!("expected {n} names, found {}", list.len())));
            }
            names = Some(list);
        }
    }
    let g = FiniteGroup::from_table(rows).map_err(|e| err(2, e.to_string()))?;
    Ok(match names {
        Some(names) => g.with_names(names),
        None => g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s3() -> FiniteGroup {
        symmetric(3).unwrap()
    }

    fn by_name(g: &FiniteGroup, n: &str) -> usize {
        g.element_by_name(n).unwrap()
    }

    #[test]
    fn z2_from_table() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn repeated_column_is_rejected() {
        let e = FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(e, GroupError::NotLatinSquare { axis: "column", index: 0, repeated: 0 });
    }

    #[test]
    fn swapped_z3_rows_fail_validation() {
        // Latin square still, but the identity disappears.
        let e = FiniteGroup::from_table(vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap_err();
        assert_eq!(e, GroupError::NoIdentity);
    }

    #[test]
    fn non_associative_latin_square() {
        // Loop of order 5 with identity 0 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn oversize_is_rejected() {
        assert_eq!(cyclic(65).unwrap_err(), GroupError::UnsupportedSize { kind: "cyclic", n: 65 });
        assert!(matches!(symmetric(6), Err(GroupError::UnsupportedSize { .. })));
    }

    #[test]
    fn element_orders() {
        let z4 = cyclic(4).unwrap();
        assert_eq!(z4.element_order(1), 4);
        assert_eq!(z4.element_order(z4.identity()), 1);
        assert_eq!(cyclic(6).unwrap().element_order(2), 3);
        let q8 = quaternion8();
        assert_eq!(q8.element_order(by_name(&q8, "i")), 4);
        assert_eq!(q8.element_orders(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(q8.element_orders().iter().filter(|&&o| o == 2).count(), 1);
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion8();
        let (i, j, k, m1) = (by_name(&q, "i"), by_name(&q, "j"), by_name(&q, "k"), by_name(&q, "-1"));
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), by_name(&q, "-k"));
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(q.mul(i, j), k), m1);
    }

    #[test]
    fn dihedral_relations() {
        let d4 = dihedral(4).unwrap();
        let (r, s) = (by_name(&d4, "r"), by_name(&d4, "s"));
        assert_eq!(d4.element_order(r), 4);
        assert_eq!(d4.element_order(s), 2);
        assert_eq!(d4.mul(r, s), d4.mul(s, d4.inv(r)));
        assert!(!d4.is_abelian());
    }

    #[test]
    fn opposed_twice_is_identity() {
        let g = s3();
        assert_eq!(g.opposed().opposed(), g);
        assert_ne!(g.opposed().table(), g.table());
        assert_eq!(g.opposed().mul(2, 3), g.mul(3, 2));
    }

    #[test]
    fn s3_coset_enumeration() {
        let g = s3();
        let (a, b) = (by_name(&g, "(123)"), by_name(&g, "(12)"));
        let en = g.coset_enumeration(a, b).unwrap();
        let a2 = g.mul(a, a);
        let expected = vec![g.identity(), a, a2, b, g.mul(b, a), g.mul(b, a2)];
        assert_eq!(en, expected);
        let names: Vec<String> = en.iter().map(|&x| g.name(x)).collect();
        assert_eq!(names, ["e", "(123)", "(132)", "(12)", "(23)", "(13)"]);
    }

    #[test]
    fn cyclic_group_has_no_outside_b() {
        let z4 = cyclic(4).unwrap();
        assert_eq!(z4.coset_enumeration(1, 2), Err(GroupError::BInCyclicSubgroup { a: 1, b: 2 }));
    }

    #[test]
    fn q8_coset_blocks() {
        let q = quaternion8();
        let (i, j) = (by_name(&q, "i"), by_name(&q, "j"));
        let en = q.coset_enumeration(i, j).unwrap();
        let first: Vec<String> = en[..4].iter().map(|&x| q.name(x)).collect();
        assert_eq!(first, ["1", "i", "-1", "-i"]);
        let second: BTreeSet<usize> = en[4..].iter().copied().collect();
        let expected: BTreeSet<usize> = q.cyclic_subgroup(i).members.iter().map(|&h| q.mul(j, h)).collect();
        assert_eq!(second, expected);
    }

    #[test]
    fn double_cosets() {
        let q = quaternion8();
        let dc = q.double_coset_membership(by_name(&q, "i"), by_name(&q, "j"));
        assert!(dc.b_in_hbinv_h);
        assert_eq!(dc.hbh.len(), 4);

        let g = s3();
        let dc = g.double_coset_membership(by_name(&g, "(123)"), by_name(&g, "(12)"));
        let names: BTreeSet<String> = dc.hbh.iter().map(|&x| g.name(x)).collect();
        assert_eq!(names, ["(12)", "(13)", "(23)"].map(String::from).into_iter().collect());

        let z6 = cyclic(6).unwrap();
        for a in z6.elements() {
            for b in z6.elements() {
                let mut bh: Vec<usize> = z6.cyclic_subgroup(a).members.iter().map(|&h| z6.mul(b, h)).collect();
                bh.sort_unstable();
                assert_eq!(z6.double_coset_membership(a, b).hbh, bh);
            }
        }
    }

    #[test]
    fn isomorphisms() {
        let g = s3();
        let id = find_isomorphism(&g, &g).unwrap();
        assert!(is_isomorphism(&g, &g, &id));
        let klein = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(find_isomorphism(&cyclic(4).unwrap(), &klein).is_none());
        let op = g.opposed();
        let inversion: Vec<usize> = g.elements().map(|x| g.inv(x)).collect();
        assert!(is_isomorphism(&g, &op, &inversion));
        assert!(find_isomorphism(&g, &op).is_some());
        assert!(find_isomorphism(&dihedral(4).unwrap(), &quaternion8()).is_none());
        let z6 = cyclic(6).unwrap();
        let z2z3 = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert!(find_isomorphism(&z6, &z2z3).is_some());
        assert!(find_isomorphism(&z6, &g).is_none());
    }

    #[test]
    fn isomorphism_of_relabelled_order_32() {
        let g = direct_product(&dihedral(4).unwrap(), &cyclic(4).unwrap()).unwrap();
        let n = g.order();
        let perm: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let table = (0..n)
            .map(|x| (0..n).map(|y| perm[g.mul(inv[x], inv[y])]).collect())
            .collect();
        let h = FiniteGroup::from_table(table).unwrap();
        let map = find_isomorphism(&g, &h).unwrap();
        assert!(is_isomorphism(&g, &h, &map));
    }

    #[test]
    fn standard_names_parse() {
        assert_eq!(StandardGroup::parse("z6"), Some(StandardGroup::Cyclic(6)));
        assert_eq!(StandardGroup::parse("Q8"), Some(StandardGroup::Quaternion8));
        let g = StandardGroup::parse("z2xz4").unwrap().build().unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        assert!(StandardGroup::parse("op(s3)").unwrap().build().is_ok());
        assert!(StandardGroup::parse("w3").is_none());
    }

    #[test]
    fn gtab_round_trip_and_errors() {
        let q = quaternion8();
        let text = write_gtab(&q);
        assert_eq!(parse_gtab(&text).unwrap(), q);
        assert!(text.starts_with("8\n0 1 2 3 4 5 6 7\n"));

        let bad = "2\n0 1\n1 0\nextra\n";
        assert_eq!(parse_gtab(bad).unwrap_err().line, 4);
        let short = "2\n0 1\n";
        assert_eq!(parse_gtab(short).unwrap_err().line, 3);
        let ragged = "2\n0 1 1\n1 0\n";
        assert_eq!(parse_gtab(ragged).unwrap_err().line, 2);
        assert!(parse_gtab("2\n0 1\n1 0\n# a comment\n\n").is_ok());
        assert!(parse_gtab("x\n").is_err());
    }

    #[test]
    fn hash_ignores_names() {
        let g = cyclic(3).unwrap();
        let bare = FiniteGroup::from_table(g.table().to_vec()).unwrap();
        assert_eq!(g.table_hash(), bare.table_hash());
        assert_ne!(g.table_hash(), cyclic(4).unwrap().table_hash());
        assert_eq!(g.table_hash().len(), 64);
    }

    fn any_standard() -> impl Strategy<Value = FiniteGroup> {
        prop_oneof![
            (1usize..13).prop_map(|n| cyclic(n).unwrap()),
            (1usize..7).prop_map(|n| dihedral(n).unwrap()),
            (1usize..5).prop_map(|n| symmetric(n).unwrap()),
            Just(quaternion8()),
        ]
    }

    proptest! {
        #[test]
        fn inverse_laws(g in any_standard()) {
            for x in g.elements() {
                prop_assert_eq!(g.inv(g.inv(x)), x);
                for y in g.elements() {
                    prop_assert_eq!(g.inv(g.mul(x, y)), g.mul(g.inv(y), g.inv(x)));
                }
            }
        }

        #[test]
        fn coset_enumeration_structure(g in any_standard(), a in 0usize..64, b in 0usize..64) {
            let (a, b) = (a % g.order(), b % g.order());
            let h = g.cyclic_subgroup(a);
            prop_assert_eq!(h.order(), g.element_order(a));
            prop_assert!(g.is_subgroup(&h.members));
            match g.coset_enumeration(a, b) {
                Ok(en) => {
                    let mut sorted = en.clone();
                    sorted.sort_unstable();
                    prop_assert_eq!(sorted, (0..g.order()).collect::<Vec<_>>());
                    prop_assert_eq!(&en[..h.order()], h.members.as_slice());
                    prop_assert_eq!(en[h.order()], b);
                }
                Err(_) => prop_assert!(h.contains(b)),
            }
            let dc = g.double_coset_membership(a, b);
            prop_assert!(dc.hbh.contains(&b));
            prop_assert_eq!((h.order() * h.order()) % dc.hbh.len(), 0);
        }
    }
}
