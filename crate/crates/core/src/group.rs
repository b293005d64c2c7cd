//! Finite groups with an involution.
//!
//! A [`FiniteGroup`] is a Cayley table on element indices `0..n` with the
//! identity pinned at index 0, together with an automorphism `σ` of order
//! dividing two (the model of complex conjugation acting on the group).
//! Everything downstream works on element indices.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the order of loaded groups.
pub const DEFAULT_ORDER_CAP: usize = 5000;

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;

const ASSOCIATIVITY_SEED: u64 = 0x5eed_a550c;

/// A finite group given by its multiplication table, with an involutive
/// automorphism `sigma`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    sigma: Vec<u32>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("labels", &self.labels)
            .field("sigma", &self.sigma)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and involution and builds the group.
    ///
    /// `table[a][b]` is the index of `a·b`. Index 0 must be the identity.
    pub fn from_table(
        table: &[Vec<usize>],
        sigma: &[usize],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            for &c in row {
                if c >= n {
                    return Err(Error::NotAGroup(format!(
                        "entry {c} in row {a} out of range"
                    )));
                }
                flat.push(c as u32);
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::InvalidInput(format!(
                    "{} labels given for a group of order {n}",
                    l.len()
                )))
            }
            Some(l) => l,
            None => default_labels(n),
        };
        let group = Self::from_flat(n, flat, labels)?;
        group.with_involution(sigma)
    }

    /// Validates the group axioms on a flat table; the involution is trivial.
    fn from_flat(n: usize, table: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(Error::NotAGroup(format!(
                    "index 0 is not a two-sided identity (fails at {x})"
                )));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = table[a * n + b] as usize;
                if seen[c] == a {
                    return Err(Error::NotAGroup(format!("row {a} is not a permutation")));
                }
                seen[c] = a;
            }
        }
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let c = table[a * n + b] as usize;
                if seen[c] == b {
                    return Err(Error::NotAGroup(format!("column {b} is not a permutation")));
                }
                seen[c] = b;
            }
        }
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if m(m(a, b), c) != m(a, m(b, c)) {
                Err(Error::NotAGroup(format!(
                    "associativity fails for ({a}, {b}, {c})"
                )))
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..10 * n * n {
                check(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        let inverse: Vec<u32> = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| m(a, b) == 0)
                    .expect("rows are permutations") as u32
            })
            .collect();
        Ok(Self {
            order: n,
            table,
            inverse,
            sigma: (0..n as u32).collect(),
            labels,
        })
    }

    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn from_trusted_table(n: usize, table: Vec<u32>, labels: Vec<String>) -> Self {
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        Self {
            order: n,
            table,
            inverse,
            sigma: (0..n as u32).collect(),
            labels,
        }
    }

    /// Replaces the involution, validating that it is an automorphism of
    /// order dividing two.
    pub fn with_involution(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.order;
        if sigma.len() != n {
            return Err(Error::NotAnAutomorphism(format!(
                "involution has length {}, expected {n}",
                sigma.len()
            )));
        }
        let mut hit = vec![false; n];
        for &s in sigma {
            if s >= n || hit[s] {
                return Err(Error::NotAnAutomorphism(
                    "not a permutation of the elements".into(),
                ));
            }
            hit[s] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if sigma[self.mul(x, y)] != self.mul(sigma[x], sigma[y]) {
                    return Err(Error::NotAnAutomorphism(format!(
                        "σ({x}·{y}) ≠ σ({x})·σ({y})"
                    )));
                }
            }
        }
        for x in 0..n {
            if sigma[sigma[x]] != x {
                return Err(Error::NotAnInvolution(format!("σ(σ({x})) ≠ {x}")));
            }
        }
        let mut out = self.clone();
        out.sigma = sigma.iter().map(|&s| s as u32).collect();
        Ok(out)
    }

    /// Same group with the trivial involution.
    pub fn with_trivial_involution(&self) -> Self {
        let mut out = self.clone();
        out.sigma = (0..self.order as u32).collect();
        out
    }

    /// Same group with `σ(g) = g⁻¹`; only valid for abelian groups.
    pub fn with_inversion(&self) -> Result<Self> {
        if !self.is_abelian() {
            return Err(Error::InversionOnNonabelian);
        }
        let mut out = self.clone();
        out.sigma = self.inverse.clone();
        Ok(out)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    #[inline]
    pub fn sigma(&self, a: usize) -> usize {
        self.sigma[a] as usize
    }

    pub fn sigma_permutation(&self) -> Vec<usize> {
        self.sigma.iter().map(|&s| s as usize).collect()
    }

    pub fn has_trivial_involution(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s as usize)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Looks an element up by label or by decimal index.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == text) {
            return Ok(i);
        }
        match text.parse::<usize>() {
            Ok(i) if i < self.order => Ok(i),
            _ => Err(Error::InvalidInput(format!("no element `{text}`"))),
        }
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&c| c as usize).collect())
            .collect()
    }

    /// `a·b·a⁻¹`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Histogram `element order → count` over the given elements.
    pub fn order_histogram(&self, members: &[usize]) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &g in members {
            *h.entry(self.element_order(g)).or_insert(0) += 1;
        }
        h
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn center(&self) -> Subgroup {
        let members = self
            .elements()
            .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup { members }
    }

    /// Partition into conjugacy classes, sorted by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if assigned[g] {
                continue;
            }
            let mut class: Vec<usize> = self.elements().map(|h| self.conj(h, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                assigned[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn centralizer(&self, g: usize) -> Subgroup {
        Subgroup {
            members: self
                .elements()
                .filter(|&h| self.mul(h, g) == self.mul(g, h))
                .collect(),
        }
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        n.members()
            .iter()
            .all(|&x| self.elements().all(|g| n.contains(self.conj(g, x))))
    }

    pub fn is_sigma_stable(&self, n: &Subgroup) -> bool {
        n.members().iter().all(|&x| n.contains(self.sigma(x)))
    }

    /// Quotient by a normal, σ-stable subgroup. Cosets are numbered in order
    /// of their least representative.
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal(format!("{:?}", n.members())));
        }
        if !self.is_sigma_stable(n) {
            return Err(Error::NotSigmaStable(format!("{:?}", n.members())));
        }
        let (projection, reps) = self.left_cosets(n);
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(projection[self.mul(a, b)] as u32);
            }
        }
        let labels = reps.iter().map(|&r| self.labels[r].clone()).collect();
        let mut group = Self::from_trusted_table(k, table, labels);
        group.sigma = reps
            .iter()
            .map(|&r| projection[self.sigma(r)] as u32)
            .collect();
        Ok(QuotientGroup {
            group,
            projection,
            representatives: reps,
        })
    }

    /// Left cosets `gH`: returns `element → coset index` and the least
    /// representative of each coset, cosets ordered by that representative.
    pub fn left_cosets(&self, h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &x in h.members() {
                coset_of[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        (coset_of, reps)
    }

    /// Rank over F₂ of `G / [G,G]·G²`.
    pub fn mod2_abelianization_rank(&self) -> usize {
        let mut gens: Vec<usize> = self.elements().map(|a| self.mul(a, a)).collect();
        for a in self.elements() {
            for b in self.elements() {
                gens.push(self.commutator(a, b));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let index = self.order / self.generate(&gens).order();
        debug_assert!(index.is_power_of_two());
        index.trailing_zeros() as usize
    }

    /// Direct product `A × B` with the componentwise involution. Element
    /// `(a, b)` has index `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table.push((a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32);
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        let mut g = Self::from_trusted_table(n, table, labels);
        g.sigma = (0..n)
            .map(|x| (a.sigma(x / nb) * nb + b.sigma(x % nb)) as u32)
            .collect();
        g
    }

    /// `G × G` with the involution `(x, y) ↦ (σy, σx)`: the finite model of
    /// restriction of scalars from ℂ to ℝ.
    pub fn swap_square(g: &FiniteGroup) -> FiniteGroup {
        let n = g.order;
        let mut out = Self::direct_product(g, g);
        out.sigma = (0..n * n)
            .map(|x| (g.sigma(x % n) * n + g.sigma(x / n)) as u32)
            .collect();
        out
    }

    /// Summary used in serialized reports.
    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            order: self.order,
            labels: self.labels.clone(),
            involution: self.sigma_permutation(),
        }
    }

    /// A table document that reloads to exactly this group.
    pub fn to_document(&self) -> GroupDocument {
        GroupDocument {
            kind: DocumentKind::Table,
            order: Some(self.order),
            table: Some(self.table_rows()),
            generators: None,
            builtin: None,
            n: None,
            involution: InvolutionDoc::Permutation {
                permutation: self.sigma_permutation(),
            },
            labels: Some(self.labels.clone()),
        }
    }
}

/// Serialized form of a group in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: usize,
    pub labels: Vec<String>,
    pub involution: Vec<usize>,
}

/// A subgroup, stored as the sorted list of its element indices in the
/// parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates closure under multiplication and inverses.
    pub fn new(group: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= group.order()) {
            return Err(Error::NotASubgroup(format!("element {bad} out of range")));
        }
        let s = Subgroup { members };
        if !s.contains(0) {
            return Err(Error::NotASubgroup("missing the identity".into()));
        }
        for &a in s.members() {
            if !s.contains(group.inv(a)) {
                return Err(Error::NotASubgroup(format!(
                    "not closed under inverse at {a}"
                )));
            }
            for &b in s.members() {
                if !s.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed under multiplication at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup {
            members: group.elements().collect(),
        }
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of a parent element within `members`.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// The subgroup as a standalone group: element `i` is `members[i]`.
    /// The involution is restricted when the subgroup is σ-stable and is
    /// trivial otherwise.
    pub fn to_group(&self, parent: &FiniteGroup) -> FiniteGroup {
        let k = self.order();
        let mut table = Vec::with_capacity(k * k);
        for &a in &self.members {
            for &b in &self.members {
                table.push(self.position(parent.mul(a, b)).expect("closed") as u32);
            }
        }
        let labels = self
            .members
            .iter()
            .map(|&m| parent.label(m).to_string())
            .collect();
        let mut g = FiniteGroup::from_trusted_table(k, table, labels);
        if parent.is_sigma_stable(self) {
            g.sigma = self
                .members
                .iter()
                .map(|&m| self.position(parent.sigma(m)).expect("stable") as u32)
                .collect();
        }
        g
    }
}

/// Result of [`FiniteGroup::quotient`].
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    /// `element of G → coset index in G/N`
    pub projection: Vec<usize>,
    /// Least element of each coset.
    pub representatives: Vec<usize>,
}

/// Built-in group families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    /// Cyclic group of order n.
    Cyclic,
    /// Dihedral group of order n (n even).
    Dihedral,
    /// Dicyclic group of order n (n divisible by 4, at least 8); n = 8 is
    /// the quaternion group.
    Quaternion,
    /// Symmetric group on n points (order n!).
    Symmetric,
}

impl Builtin {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "cyclic" => Ok(Builtin::Cyclic),
            "dihedral" => Ok(Builtin::Dihedral),
            "quaternion" | "dicyclic" => Ok(Builtin::Quaternion),
            "symmetric" => Ok(Builtin::Symmetric),
            other => Err(Error::InvalidInput(format!(
                "unknown builtin group `{other}`"
            ))),
        }
    }
}

/// Which involution to put on a loaded group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionChoice {
    Trivial,
    Inversion,
    Permutation(Vec<usize>),
}

/// A request for a group, in any of the supported input forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Table {
        table: Vec<Vec<usize>>,
        involution: InvolutionChoice,
        labels: Option<Vec<String>>,
    },
    Permutations {
        generators: Vec<Vec<usize>>,
        involution: InvolutionChoice,
        labels: Option<Vec<String>>,
    },
    Builtin {
        family: Builtin,
        n: usize,
        involution: InvolutionChoice,
    },
}

impl GroupSpec {
    pub fn builtin(family: Builtin, n: usize, involution: InvolutionChoice) -> Self {
        GroupSpec::Builtin {
            family,
            n,
            involution,
        }
    }

    /// Parses the shorthand `builtin:<name>:<n>[:<trivial|inversion>]`.
    pub fn parse_shorthand(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.first() != Some(&"builtin") || !(3..=4).contains(&parts.len()) {
            return Err(Error::InvalidInput(format!(
                "expected builtin:<name>:<n>[:<involution>], got `{text}`"
            )));
        }
        let family = Builtin::parse(parts[1])?;
        let n = parts[2]
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad group size `{}`", parts[2])))?;
        let involution = match parts.get(3).copied().unwrap_or("trivial") {
            "trivial" => InvolutionChoice::Trivial,
            "inversion" => InvolutionChoice::Inversion,
            other => return Err(Error::InvalidInput(format!("unknown involution `{other}`"))),
        };
        Ok(GroupSpec::builtin(family, n, involution))
    }
}

/// JSON input document for groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub kind: DocumentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub involution: InvolutionDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocumentKind {
    Table,
    Permutation,
    Builtin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InvolutionDoc {
    Keyword(String),
    Permutation { permutation: Vec<usize> },
}

impl Default for InvolutionDoc {
    fn default() -> Self {
        InvolutionDoc::Keyword("trivial".into())
    }
}

impl TryFrom<&InvolutionDoc> for InvolutionChoice {
    type Error = Error;

    fn try_from(doc: &InvolutionDoc) -> Result<Self> {
        match doc {
            InvolutionDoc::Keyword(k) if k == "trivial" => Ok(InvolutionChoice::Trivial),
            InvolutionDoc::Keyword(k) if k == "inversion" => Ok(InvolutionChoice::Inversion),
            InvolutionDoc::Keyword(k) => {
                Err(Error::InvalidInput(format!("unknown involution `{k}`")))
            }
            InvolutionDoc::Permutation { permutation } => {
                Ok(InvolutionChoice::Permutation(permutation.clone()))
            }
        }
    }
}

impl TryFrom<GroupDocument> for GroupSpec {
    type Error = Error;

    fn try_from(doc: GroupDocument) -> Result<Self> {
        let involution = InvolutionChoice::try_from(&doc.involution)?;
        let missing = |field: &str| Error::InvalidInput(format!("group document lacks `{field}`"));
        match doc.kind {
            DocumentKind::Table => Ok(GroupSpec::Table {
                table: doc.table.ok_or_else(|| missing("table"))?,
                involution,
                labels: doc.labels,
            }),
            DocumentKind::Permutation => Ok(GroupSpec::Permutations {
                generators: doc.generators.ok_or_else(|| missing("generators"))?,
                involution,
                labels: doc.labels,
            }),
            DocumentKind::Builtin => Ok(GroupSpec::Builtin {
                family: Builtin::parse(&doc.builtin.ok_or_else(|| missing("builtin"))?)?,
                n: doc.n.ok_or_else(|| missing("n"))?,
                involution,
            }),
        }
    }
}

impl GroupSpec {
    /// Reads a group document from a JSON file, or parses the builtin
    /// shorthand when `text` starts with `builtin:`.
    pub fn from_arg(text: &str) -> Result<Self> {
        if text.starts_with("builtin:") {
            return Self::parse_shorthand(text);
        }
        let raw = std::fs::read_to_string(Path::new(text))
            .map_err(|e| Error::InvalidInput(format!("cannot read `{text}`: {e}")))?;
        Self::from_json(&raw)
    }

    pub fn from_json(raw: &str) -> Result<Self> {
        let doc: GroupDocument = serde_json::from_str(raw)
            .map_err(|e| Error::InvalidInput(format!("malformed group document: {e}")))?;
        Self::try_from(doc)
    }
}

/// Compiles a group description into a validated group.
pub fn load_group(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    let (group, involution) = match spec {
        GroupSpec::Table {
            table,
            involution,
            labels,
        } => {
            if table.len() > cap {
                return Err(Error::OrderCapExceeded {
                    order: table.len(),
                    cap,
                });
            }
            let n = table.len();
            let id: Vec<usize> = (0..n).collect();
            (
                FiniteGroup::from_table(table, &id, labels.clone())?,
                involution,
            )
        }
        GroupSpec::Permutations {
            generators,
            involution,
            labels,
        } => {
            let mut g = close_permutations(generators, cap)?;
            if let Some(l) = labels {
                if l.len() != g.order() {
                    return Err(Error::InvalidInput(format!(
                        "{} labels given for a group of order {}",
                        l.len(),
                        g.order()
                    )));
                }
                g.labels = l.clone();
            }
            (g, involution)
        }
        GroupSpec::Builtin {
            family,
            n,
            involution,
        } => (builtin(*family, *n, cap)?, involution),
    };
    match involution {
        InvolutionChoice::Trivial => Ok(group),
        InvolutionChoice::Inversion => group.with_inversion(),
        InvolutionChoice::Permutation(p) => group.with_involution(p),
    }
}

/// Builds a built-in group with trivial involution.
pub fn builtin(family: Builtin, n: usize, cap: usize) -> Result<FiniteGroup> {
    let order = match family {
        Builtin::Symmetric => (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)),
        _ => Some(n),
    };
    match order {
        Some(o) if o <= cap => {}
        Some(o) => return Err(Error::OrderCapExceeded { order: o, cap }),
        None => {
            return Err(Error::OrderCapExceeded {
                order: usize::MAX,
                cap,
            })
        }
    }
    match family {
        Builtin::Cyclic => cyclic(n),
        Builtin::Dihedral => dihedral(n),
        Builtin::Quaternion => dicyclic(n),
        Builtin::Symmetric => symmetric(n),
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic group needs n ≥ 1".into()));
    }
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    Ok(FiniteGroup::from_trusted_table(n, table, labels))
}

/// Dihedral group of order `n`: `r^k` at index `k`, `r^k s` at `m + k`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "dihedral group needs even order n ≥ 2".into(),
        ));
    }
    let m = n / 2;
    let idx = |k: usize, s: usize| s * m + k % m;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (x % m, x / m);
            let (c, d) = (y % m, y / m);
            let k = if b == 0 { a + c } else { a + m - c };
            table.push(idx(k, (b + d) % 2) as u32);
        }
    }
    let rot = |k: usize| match k {
        0 => String::new(),
        1 => "r".to_string(),
        _ => format!("r^{k}"),
    };
    let labels = (0..n)
        .map(|x| {
            let (k, s) = (x % m, x / m);
            match (k, s) {
                (0, 0) => "1".to_string(),
                (_, 0) => rot(k),
                (_, _) => format!("{}s", rot(k)),
            }
        })
        .collect();
    Ok(FiniteGroup::from_trusted_table(n, table, labels))
}

/// Dicyclic group of order `n = 4m`: `a^k` at index `k`, `a^k x` at `2m + k`,
/// with `a^{2m} = 1`, `x² = a^m`, `x a x⁻¹ = a⁻¹`.
pub fn dicyclic(n: usize) -> Result<FiniteGroup> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(Error::InvalidInput(
            "quaternion (dicyclic) group needs order n ≥ 8 divisible by 4".into(),
        ));
    }
    let half = n / 2;
    let m = n / 4;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (k, b) = (x % half, x / half);
            let (l, c) = (y % half, y / half);
            let z = match (b, c) {
                (0, _) => c * half + (k + l) % half,
                (_, 0) => half + (k + half - l) % half,
                _ => (k + half - l + m) % half,
            };
            table.push(z as u32);
        }
    }
    let labels = if n == 8 {
        ["1", "i", "-1", "-i", "j", "k", "-j", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (0..n)
            .map(|x| {
                let (k, b) = (x % half, x / half);
                let a = match k {
                    0 => String::new(),
                    1 => "a".to_string(),
                    _ => format!("a^{k}"),
                };
                match (k, b) {
                    (0, 0) => "1".to_string(),
                    (_, 0) => a,
                    _ => format!("{a}x"),
                }
            })
            .collect()
    };
    Ok(FiniteGroup::from_trusted_table(n, table, labels))
}

/// Symmetric group on `n` points, elements in lexicographic order of their
/// one-line notation. The product `p·q` applies `q` first.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        perms.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(group_from_permutations(perms))
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn group_from_permutations(perms: Vec<Vec<usize>>) -> FiniteGroup {
    let n = perms.len();
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let mut table = Vec::with_capacity(n * n);
    for p in &perms {
        for q in &perms {
            table.push(index[compose(p, q).as_slice()] as u32);
        }
    }
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_trusted_table(n, table, labels)
}

/// Closes permutation generators into a group by breadth-first products;
/// elements are numbered in discovery order with the identity first.
pub fn close_permutations(generators: &[Vec<usize>], cap: usize) -> Result<FiniteGroup> {
    let m = generators.first().map_or(0, |g| g.len());
    for g in generators {
        if g.len() != m {
            return Err(Error::InvalidInput(
                "generators act on different point sets".into(),
            ));
        }
        let mut seen = vec![false; m];
        for &x in g {
            if x >= m || seen[x] {
                return Err(Error::InvalidInput(format!("{g:?} is not a permutation")));
            }
            seen[x] = true;
        }
    }
    let identity: Vec<usize> = (0..m).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let p = compose(&elements[i], g);
            if !index.contains_key(&p) {
                if elements.len() == cap {
                    return Err(Error::OrderCapExceeded {
                        order: elements.len() + 1,
                        cap,
                    });
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        i += 1;
    }
    Ok(group_from_permutations(elements))
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let body: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&body.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i == 0 {
                "e".to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Builtin, n: usize, inv: InvolutionChoice) -> FiniteGroup {
        load_group(&GroupSpec::builtin(family, n, inv), DEFAULT_ORDER_CAP).unwrap()
    }

    /// Revalidates a builtin through the checked constructor.
    fn revalidate(g: &FiniteGroup) {
        FiniteGroup::from_table(&g.table_rows(), &g.sigma_permutation(), None).unwrap();
    }

    #[test]
    fn builtins_satisfy_group_axioms() {
        for n in 1..=12 {
            revalidate(&cyclic(n).unwrap());
        }
        for n in (2..=16).step_by(2) {
            revalidate(&dihedral(n).unwrap());
        }
        for n in [8, 12, 16] {
            revalidate(&dicyclic(n).unwrap());
        }
        for n in 1..=4 {
            revalidate(&symmetric(n).unwrap());
        }
        assert_eq!(symmetric(4).unwrap().order(), 24);
    }

    #[test]
    fn load_cyclic_with_trivial_and_inversion() {
        let g = spec(Builtin::Cyclic, 6, InvolutionChoice::Trivial);
        assert_eq!(g.order(), 6);
        assert!(g.has_trivial_involution());
        let g = spec(Builtin::Cyclic, 6, InvolutionChoice::Inversion);
        for x in g.elements() {
            assert_eq!(g.sigma(x), g.inv(x));
        }
    }

    #[test]
    fn dihedral_8_has_three_nonidentity_classes_of_square_roots_of_one() {
        let g = spec(Builtin::Dihedral, 8, InvolutionChoice::Trivial);
        let classes = g
            .conjugacy_classes()
            .into_iter()
            .filter(|c| c[0] != 0 && g.mul(c[0], c[0]) == 0)
            .count();
        assert_eq!(classes, 3);
    }

    #[test]
    fn inversion_rejected_on_nonabelian() {
        let err = load_group(
            &GroupSpec::builtin(Builtin::Dihedral, 8, InvolutionChoice::Inversion),
            DEFAULT_ORDER_CAP,
        )
        .unwrap_err();
        assert_eq!(err, Error::InversionOnNonabelian);
    }

    #[test]
    fn order_cap_is_enforced() {
        let err = load_group(
            &GroupSpec::builtin(Builtin::Symmetric, 7, InvolutionChoice::Trivial),
            DEFAULT_ORDER_CAP,
        )
        .unwrap_err();
        assert!(matches!(err, Error::OrderCapExceeded { order: 5040, .. }));
        let err = load_group(
            &GroupSpec::Permutations {
                generators: vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]],
                involution: InvolutionChoice::Trivial,
                labels: None,
            },
            10,
        )
        .unwrap_err();
        assert!(matches!(err, Error::OrderCapExceeded { cap: 10, .. }));
    }

    #[test]
    fn table_validation_errors() {
        // not a latin square
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteGroup::from_table(&bad, &[0, 1], None),
            Err(Error::NotAGroup(_))
        ));
        // identity not at index 0
        let bad = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            FiniteGroup::from_table(&bad, &[0, 1], None),
            Err(Error::NotAGroup(_))
        ));
        // latin square with identity but not associative (order-5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&loop5, &[0, 1, 2, 3, 4], None),
            Err(Error::NotAGroup(m)) if m.contains("associativity")
        ));
    }

    #[test]
    fn involution_validation_errors() {
        let c3 = cyclic(3).unwrap();
        // swapping 0 and 1 does not fix the identity
        assert!(matches!(
            c3.with_involution(&[1, 0, 2]),
            Err(Error::NotAnAutomorphism(_))
        ));
        // in C4 = Z/4 the map x ↦ 3x is the inversion; 1 ↦ 2 is not a hom
        let c4 = cyclic(4).unwrap();
        assert!(matches!(
            c4.with_involution(&[0, 2, 1, 3]),
            Err(Error::NotAnAutomorphism(_))
        ));
        // an automorphism of order 3 on C2×C2
        let v4 = dihedral(4).unwrap();
        assert!(matches!(
            v4.with_involution(&[0, 2, 3, 1]),
            Err(Error::NotAnInvolution(_))
        ));
    }

    #[test]
    fn permutation_generators_close_in_bfs_order() {
        let g = close_permutations(&[vec![1, 2, 0], vec![1, 0, 2]], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.label(0), "()");
        assert_eq!(g.label(1), "(0 1 2)");
        assert_eq!(g.label(2), "(0 1)");
        assert!(!g.is_abelian());
    }

    #[test]
    fn conjugacy_class_counts() {
        assert_eq!(cyclic(4).unwrap().conjugacy_classes().len(), 4);
        assert_eq!(dihedral(8).unwrap().conjugacy_classes().len(), 5);
        assert_eq!(dicyclic(8).unwrap().conjugacy_classes().len(), 5);
        assert_eq!(symmetric(4).unwrap().conjugacy_classes().len(), 5);
    }

    #[test]
    fn centralizers_in_dihedral_8() {
        let g = dihedral(8).unwrap();
        assert_eq!(g.centralizer(0).order(), 8);
        // r^2 is central
        assert_eq!(g.centralizer(2).order(), 8);
        // s = index 4; centralizer {1, r^2, s, r^2 s}
        assert_eq!(g.centralizer(4).members(), &[0, 2, 4, 6]);
    }

    #[test]
    fn orbit_stabilizer_for_conjugation() {
        for g in [
            dihedral(12).unwrap(),
            dicyclic(12).unwrap(),
            symmetric(4).unwrap(),
        ] {
            for class in g.conjugacy_classes() {
                for &x in &class {
                    assert_eq!(class.len() * g.centralizer(x).order(), g.order());
                }
            }
        }
    }

    #[test]
    fn quotients() {
        let c4 = cyclic(4).unwrap();
        let q = c4.quotient(&Subgroup::new(&c4, [0, 2]).unwrap()).unwrap();
        assert_eq!(q.group.order(), 2);

        let d8 = dihedral(8).unwrap();
        let q = d8.quotient(&d8.center()).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.elements().all(|x| q.group.mul(x, x) == 0));

        let q8 = dicyclic(8).unwrap();
        let q = q8.quotient(&q8.center()).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.elements().all(|x| q.group.mul(x, x) == 0));
        for a in q8.elements() {
            for b in q8.elements() {
                assert_eq!(
                    q.projection[q8.mul(a, b)],
                    q.group.mul(q.projection[a], q.projection[b])
                );
            }
        }
    }

    #[test]
    fn quotient_errors() {
        let d8 = dihedral(8).unwrap();
        let s = Subgroup::new(&d8, [0, 4]).unwrap();
        assert!(matches!(d8.quotient(&s), Err(Error::NotNormal(_))));
        // the swap involution on C2 × C2 moves the first factor
        let v4 = FiniteGroup::swap_square(&cyclic(2).unwrap());
        let n = Subgroup::new(&v4, [0, 1]).unwrap();
        assert!(matches!(v4.quotient(&n), Err(Error::NotSigmaStable(_))));
    }

    #[test]
    fn mod2_abelianization() {
        assert_eq!(cyclic(3).unwrap().mod2_abelianization_rank(), 0);
        assert_eq!(cyclic(2).unwrap().mod2_abelianization_rank(), 1);
        assert_eq!(cyclic(1).unwrap().mod2_abelianization_rank(), 0);
        assert_eq!(dihedral(8).unwrap().mod2_abelianization_rank(), 2);
        assert_eq!(dicyclic(8).unwrap().mod2_abelianization_rank(), 2);
        assert_eq!(dihedral(4).unwrap().mod2_abelianization_rank(), 2);
        assert_eq!(symmetric(4).unwrap().mod2_abelianization_rank(), 1);
    }

    #[test]
    fn shorthand_and_documents() {
        let s = GroupSpec::parse_shorthand("builtin:cyclic:6:inversion").unwrap();
        assert_eq!(
            s,
            GroupSpec::builtin(Builtin::Cyclic, 6, InvolutionChoice::Inversion)
        );
        assert!(GroupSpec::parse_shorthand("builtin:cyclic").is_err());
        let doc = r#"{"kind":"builtin","builtin":"dihedral","n":8,"involution":{"permutation":[0,3,2,1,4,7,6,5]}}"#;
        let g = load_group(&GroupSpec::from_json(doc).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.sigma(1), 3);
        // round trip through the table document
        let doc = serde_json::to_string(&g.to_document()).unwrap();
        let h = load_group(&GroupSpec::from_json(&doc).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn sampled_associativity_above_threshold() {
        // C_17 × C_17 has order 289 > 256 and passes the sampled check.
        let c = cyclic(17).unwrap();
        let p = FiniteGroup::direct_product(&c, &c);
        FiniteGroup::from_table(&p.table_rows(), &p.sigma_permutation(), None).unwrap();
    }
}
