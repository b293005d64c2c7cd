//! Fixed-point groupoids of finite equivariant actions.
//!
//! For a finite group `G` with involution acting on a finite set `X` with a
//! compatible involution `σ_X`, the fixed-point groupoid has objects
//! `(g, x)` with `g·σ(g) = 1` and `g·x = σ_X(x)`, and morphisms
//! `h : (g, x) → (σ(h)·g·h⁻¹, h·x)`. It is the discrete model of the real
//! points of the quotient stack `[G\X]`. With `X` a point it reduces to the
//! Galois cohomology groupoid of [`crate::galois`].

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{load_group, FiniteGroup, GroupDocument, GroupSpec, Subgroup};

/// Upper bound on `|G|·|X|` for object enumeration.
pub const DEFAULT_GRID_CAP: usize = 1_000_000;

/// A group action `G × X → X` with an involution on `X` compatible with σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantAction {
    group: FiniteGroup,
    points: usize,
    act: Vec<u32>,
    sigma_x: Vec<usize>,
}

impl EquivariantAction {
    /// Validates the action axioms, that `σ_X` is an involution, and the
    /// compatibility `σ_X(g·x) = σ(g)·σ_X(x)`.
    ///
    /// `action[g][x]` is the image of `x` under `g`.
    pub fn new(group: FiniteGroup, action: &[Vec<usize>], sigma_x: Vec<usize>) -> Result<Self> {
        let n = group.order();
        let m = sigma_x.len();
        if action.len() != n {
            return Err(Error::NotAnAction(format!(
                "{} action rows for a group of order {n}",
                action.len()
            )));
        }
        let mut act = Vec::with_capacity(n * m);
        for (g, row) in action.iter().enumerate() {
            if row.len() != m {
                return Err(Error::NotAnAction(format!(
                    "row {g} has {} entries, expected {m} points",
                    row.len()
                )));
            }
            if let Some(&y) = row.iter().find(|&&y| y >= m) {
                return Err(Error::NotAnAction(format!("point {y} out of range")));
            }
            act.extend(row.iter().map(|&y| y as u32));
        }
        let a = Self {
            group,
            points: m,
            act,
            sigma_x,
        };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        let m = self.points;
        for x in 0..m {
            if self.act(0, x) != x {
                return Err(Error::NotAnAction(format!("identity moves point {x}")));
            }
            if self.sigma_x[x] >= m || self.sigma_x[self.sigma_x[x]] != x {
                return Err(Error::NotAnAction(format!(
                    "σ_X is not an involution at {x}"
                )));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                for x in 0..m {
                    if self.act(a, self.act(b, x)) != self.act(ab, x) {
                        return Err(Error::NotAnAction(format!("{a}·({b}·{x}) ≠ ({a}{b})·{x}")));
                    }
                }
            }
            for x in 0..m {
                if self.sigma_x[self.act(a, x)] != self.act(g.sigma(a), self.sigma_x[x]) {
                    return Err(Error::NotAnAction(format!(
                        "σ_X({a}·{x}) ≠ σ({a})·σ_X({x})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The action on a single point.
    pub fn point(group: FiniteGroup) -> Self {
        let n = group.order();
        Self {
            group,
            points: 1,
            act: vec![0; n],
            sigma_x: vec![0],
        }
    }

    /// `G` acting on the left cosets `G/L` of a σ-stable subgroup, with
    /// `σ_X(gL) = σ(g)L`.
    pub fn on_cosets(group: FiniteGroup, l: &Subgroup) -> Result<Self> {
        if !group.is_sigma_stable(l) {
            return Err(Error::NotSigmaStable(format!("{:?}", l.members())));
        }
        let (coset_of, reps) = group.left_cosets(l);
        let action: Vec<Vec<usize>> = group
            .elements()
            .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect())
            .collect();
        let sigma_x = reps.iter().map(|&r| coset_of[group.sigma(r)]).collect();
        Self::new(group, &action, sigma_x)
    }

    /// Left multiplication on `G` itself with `σ_X(x) = σ(x)·c`, valid when
    /// `σ(c)·c = 1`.
    pub fn regular(group: FiniteGroup, c: usize) -> Result<Self> {
        let action: Vec<Vec<usize>> = group
            .elements()
            .map(|g| group.elements().map(|x| group.mul(g, x)).collect())
            .collect();
        let sigma_x = group
            .elements()
            .map(|x| group.mul(group.sigma(x), c))
            .collect();
        Self::new(group, &action, sigma_x)
    }

    /// Disjoint union of two actions of the same group.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::InvalidInput(
                "disjoint union needs actions of the same group".into(),
            ));
        }
        let m = self.points;
        let action: Vec<Vec<usize>> = self
            .group
            .elements()
            .map(|g| {
                (0..m)
                    .map(|x| self.act(g, x))
                    .chain((0..other.points).map(|x| m + other.act(g, x)))
                    .collect()
            })
            .collect();
        let sigma_x = self
            .sigma_x
            .iter()
            .copied()
            .chain(other.sigma_x.iter().map(|&x| m + x))
            .collect();
        Self::new(self.group.clone(), &action, sigma_x)
    }

    /// Relabels the points by the bijection `x ↦ perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let m = self.points;
        if perm.len() != m {
            return Err(Error::InvalidInput(
                "relabeling has the wrong length".into(),
            ));
        }
        let mut inverse = vec![usize::MAX; m];
        for (x, &p) in perm.iter().enumerate() {
            if p >= m || inverse[p] != usize::MAX {
                return Err(Error::InvalidInput("relabeling is not a bijection".into()));
            }
            inverse[p] = x;
        }
        let action: Vec<Vec<usize>> = self
            .group
            .elements()
            .map(|g| (0..m).map(|y| perm[self.act(g, inverse[y])]).collect())
            .collect();
        let sigma_x = (0..m).map(|y| perm[self.sigma_x[inverse[y]]]).collect();
        Self::new(self.group.clone(), &action, sigma_x)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.points + x] as usize
    }

    pub fn sigma_x(&self, x: usize) -> usize {
        self.sigma_x[x]
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        if self.points == 0 {
            return vec![Vec::new(); self.group.order()];
        }
        self.act
            .chunks(self.points)
            .map(|r| r.iter().map(|&y| y as usize).collect())
            .collect()
    }

    pub fn to_document(&self) -> ActionDocument {
        ActionDocument {
            group: GroupRef::Inline(Box::new(self.group.to_document())),
            points: self.points,
            action: self.action_rows(),
            sigma_x: self.sigma_x.clone(),
        }
    }
}

/// JSON input document for actions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionDocument {
    pub group: GroupRef,
    pub points: usize,
    pub action: Vec<Vec<usize>>,
    #[serde(rename = "sigmaX")]
    pub sigma_x: Vec<usize>,
}

/// A group given inline or by path / builtin shorthand.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Reference(String),
    Inline(Box<GroupDocument>),
}

impl ActionDocument {
    pub fn from_json(raw: &str) -> Result<Self> {
        serde_json::from_str(raw)
            .map_err(|e| Error::InvalidInput(format!("malformed action document: {e}")))
    }

    pub fn load(&self, cap: usize) -> Result<EquivariantAction> {
        let spec = match &self.group {
            GroupRef::Reference(r) => GroupSpec::from_arg(r)?,
            GroupRef::Inline(doc) => GroupSpec::try_from((**doc).clone())?,
        };
        let group = load_group(&spec, cap)?;
        if self.action.first().map_or(self.points, |r| r.len()) != self.points {
            return Err(Error::NotAnAction(format!(
                "declared {} points but action rows have {}",
                self.points,
                self.action[0].len()
            )));
        }
        EquivariantAction::new(group, &self.action, self.sigma_x.clone())
    }
}

fn serialize_ratio<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupoidComponent {
    /// Least object `(g, x)` of the component.
    pub representative: (usize, usize),
    pub objects: Vec<(usize, usize)>,
    /// Automorphism group of the representative, as elements of `G`.
    pub automorphisms: Vec<usize>,
    pub automorphism_order: usize,
    pub automorphism_histogram: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointGroupoidReport {
    pub group_order: usize,
    pub points: usize,
    pub object_count: usize,
    pub components: Vec<GroupoidComponent>,
    #[serde(serialize_with = "serialize_ratio")]
    pub mass: Rational64,
}

impl FixedPointGroupoidReport {
    /// `(|Aut|, element-order histogram)` of every component, sorted.
    pub fn invariants(&self) -> Vec<(usize, BTreeMap<usize, usize>)> {
        let mut v: Vec<_> = self
            .components
            .iter()
            .map(|c| (c.automorphism_order, c.automorphism_histogram.clone()))
            .collect();
        v.sort();
        v
    }
}

/// Enumerates the fixed-point groupoid of an equivariant action.
pub fn fixed_point_groupoid(a: &EquivariantAction) -> Result<FixedPointGroupoidReport> {
    fixed_point_groupoid_capped(a, DEFAULT_GRID_CAP)
}

pub fn fixed_point_groupoid_capped(
    a: &EquivariantAction,
    grid_cap: usize,
) -> Result<FixedPointGroupoidReport> {
    let g = a.group();
    let m = a.points();
    let grid = g.order() * m;
    if grid > grid_cap {
        return Err(Error::CapExceeded(format!(
            "|G|·|X| = {grid} exceeds the object-enumeration cap {grid_cap}"
        )));
    }
    let is_object =
        |c: usize, x: usize| g.mul(c, g.sigma(c)) == g.identity() && a.act(c, x) == a.sigma_x(x);
    let mut seen = vec![false; grid];
    let mut object_count = 0;
    let mut components = Vec::new();
    let mut mass = Rational64::new(0, 1);
    for c in g.elements() {
        for x in 0..m {
            if !is_object(c, x) {
                continue;
            }
            object_count += 1;
            if seen[c * m + x] {
                continue;
            }
            let mut objects = Vec::new();
            let mut automorphisms = Vec::new();
            for h in g.elements() {
                let target = (crate::galois::twisted_conjugate(g, h, c), a.act(h, x));
                if target == (c, x) {
                    automorphisms.push(h);
                }
                let slot = target.0 * m + target.1;
                if !seen[slot] {
                    debug_assert!(is_object(target.0, target.1));
                    seen[slot] = true;
                    objects.push(target);
                }
            }
            objects.sort_unstable();
            mass += Rational64::new(1, automorphisms.len() as i64);
            components.push(GroupoidComponent {
                representative: (c, x),
                objects,
                automorphism_order: automorphisms.len(),
                automorphism_histogram: g.order_histogram(&automorphisms),
                automorphisms,
            });
        }
    }
    Ok(FixedPointGroupoidReport {
        group_order: g.order(),
        points: m,
        object_count,
        components,
        mass,
    })
}

/// Induces an action of `H ≤ G` up to `G`: the points are `(G × X)/~` with
/// `(g·h, x) ~ (g, h·x)`, each point stored as (left coset of H, x) with the
/// coset's least element as canonical first coordinate.
///
/// The action `a` must be over [`Subgroup::to_group`] of `h`.
pub fn induced_action(
    g: &FiniteGroup,
    h: &Subgroup,
    a: &EquivariantAction,
) -> Result<EquivariantAction> {
    let h = Subgroup::new(g, h.members().iter().copied())?;
    if !g.is_sigma_stable(&h) {
        return Err(Error::NotSigmaStable(format!("{:?}", h.members())));
    }
    let hg = h.to_group(g);
    if hg.table_rows() != a.group().table_rows()
        || hg.sigma_permutation() != a.group().sigma_permutation()
    {
        return Err(Error::InvalidInput(
            "the action is not over the given subgroup (element i must be the i-th member)".into(),
        ));
    }
    let (coset_of, reps) = g.left_cosets(&h);
    let m = a.points();
    let hpos = |e: usize| h.position(e).expect("element of H");
    // g·r_c = r_{c'}·h with h ∈ H
    let split = |e: usize| {
        let c = coset_of[e];
        let r = reps[c];
        (c, hpos(g.mul(g.inv(r), e)))
    };
    let action: Vec<Vec<usize>> = g
        .elements()
        .map(|k| {
            let mut row = Vec::with_capacity(reps.len() * m);
            for &r in &reps {
                let (c, hh) = split(g.mul(k, r));
                for x in 0..m {
                    row.push(c * m + a.act(hh, x));
                }
            }
            row
        })
        .collect();
    let mut sigma_x = Vec::with_capacity(reps.len() * m);
    for &r in &reps {
        let (c, hh) = split(g.sigma(r));
        for x in 0..m {
            sigma_x.push(c * m + a.act(hh, a.sigma_x(x)));
        }
    }
    EquivariantAction::new(g.clone(), &action, sigma_x)
}

/// The action of `G/N` on the orbit set `N\X` for a normal, σ-stable `N`
/// acting freely. Orbits are numbered by least member.
pub fn quotient_action(a: &EquivariantAction, n: &Subgroup) -> Result<EquivariantAction> {
    let g = a.group();
    let n = Subgroup::new(g, n.members().iter().copied())?;
    let q = g.quotient(&n)?;
    let m = a.points();
    for x in 0..m {
        if let Some(&e) = n.members().iter().find(|&&e| e != 0 && a.act(e, x) == x) {
            return Err(Error::NotFree(format!("{} fixes point {x}", g.label(e))));
        }
    }
    let mut orbit_of = vec![usize::MAX; m];
    let mut orbit_reps = Vec::new();
    for x in 0..m {
        if orbit_of[x] != usize::MAX {
            continue;
        }
        for &e in n.members() {
            orbit_of[a.act(e, x)] = orbit_reps.len();
        }
        orbit_reps.push(x);
    }
    let action: Vec<Vec<usize>> = q
        .representatives
        .iter()
        .map(|&r| orbit_reps.iter().map(|&x| orbit_of[a.act(r, x)]).collect())
        .collect();
    let sigma_x = orbit_reps.iter().map(|&x| orbit_of[a.sigma_x(x)]).collect();
    EquivariantAction::new(q.group, &action, sigma_x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupoidComparison {
    pub equivalent: bool,
    pub left_components: usize,
    pub right_components: usize,
    pub left_invariants: Vec<(usize, BTreeMap<usize, usize>)>,
    pub right_invariants: Vec<(usize, BTreeMap<usize, usize>)>,
}

/// Equivalence is certified by equal component counts and equal multisets
/// of `(|Aut|, element-order histogram)`.
pub fn compare_groupoids(
    r1: &FixedPointGroupoidReport,
    r2: &FixedPointGroupoidReport,
) -> GroupoidComparison {
    let left_invariants = r1.invariants();
    let right_invariants = r2.invariants();
    GroupoidComparison {
        equivalent: r1.components.len() == r2.components.len()
            && left_invariants == right_invariants,
        left_components: r1.components.len(),
        right_components: r2.components.len(),
        left_invariants,
        right_invariants,
    }
}
