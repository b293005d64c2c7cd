//! Nonabelian Galois cohomology `H¹(C₂, G)` of a finite group with
//! involution.
//!
//! Cocycles are the elements `g` with `g·σ(g) = 1`; two cocycles are
//! cohomologous when `g' = σ(h)·g·h⁻¹`. Each class contributes one component
//! `B(K_g)` to the real realization of `BG`, where
//! `K_g = {h : σ(h)·g = g·h}` is the fixed group of the twisted involution
//! `σ_g = int(g)∘σ`.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// One element of `H¹(C₂, G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleClass {
    /// Least element index in the orbit.
    pub representative: usize,
    pub orbit: Vec<usize>,
    pub stabilizer: Subgroup,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    /// element order → number of stabilizer elements of that order
    pub stabilizer_histogram: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer_label: Option<String>,
}

/// The decomposition of the real realization of `BG` into components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentsReport {
    pub group_order: usize,
    pub cocycle_count: usize,
    pub class_count: usize,
    pub classes: Vec<CocycleClass>,
}

impl ComponentsReport {
    /// Groupoid cardinality `Σ 1/|K_g|`.
    pub fn mass(&self) -> Rational64 {
        self.classes
            .iter()
            .map(|c| Rational64::new(1, c.stabilizer_order as i64))
            .sum()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.representative).collect()
    }
}

/// `Z¹(C₂, G) = {g : g·σ(g) = 1}`, sorted.
pub fn cocycles(g: &FiniteGroup) -> Vec<usize> {
    g.elements()
        .filter(|&x| g.mul(x, g.sigma(x)) == g.identity())
        .collect()
}

pub fn is_cocycle(g: &FiniteGroup, x: usize) -> bool {
    g.mul(x, g.sigma(x)) == g.identity()
}

/// Twisted conjugation `h·c = σ(h)·c·h⁻¹`.
#[inline]
pub fn twisted_conjugate(g: &FiniteGroup, h: usize, c: usize) -> usize {
    g.mul(g.mul(g.sigma(h), c), g.inv(h))
}

/// `K_c = {h : σ(h)·c = c·h}`.
pub fn twisted_stabilizer(g: &FiniteGroup, c: usize) -> Subgroup {
    Subgroup::from_sorted_unchecked(
        g.elements()
            .filter(|&h| g.mul(g.sigma(h), c) == g.mul(c, h))
            .collect(),
    )
}

/// Partitions the cocycles into twisted-conjugacy orbits and attaches the
/// stabilizer of each representative.
pub fn h1(g: &FiniteGroup) -> ComponentsReport {
    let z1 = cocycles(g);
    let mut assigned = vec![false; g.order()];
    let mut classes = Vec::new();
    for &c in &z1 {
        if assigned[c] {
            continue;
        }
        let mut orbit: Vec<usize> = g.elements().map(|h| twisted_conjugate(g, h, c)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &o in &orbit {
            assigned[o] = true;
        }
        let stabilizer = twisted_stabilizer(g, c);
        classes.push(CocycleClass {
            representative: c,
            orbit_size: orbit.len(),
            stabilizer_order: stabilizer.order(),
            stabilizer_histogram: g.order_histogram(stabilizer.members()),
            stabilizer_label: describe(g, stabilizer.members()),
            orbit,
            stabilizer,
        });
    }
    ComponentsReport {
        group_order: g.order(),
        cocycle_count: z1.len(),
        class_count: classes.len(),
        classes,
    }
}

/// Number of components of the real realization, `|H¹(C₂, G)|`.
pub fn witt_invariant_rank(g: &FiniteGroup) -> usize {
    h1(g).class_count
}

/// A short isomorphism-type label for small recognizable groups.
pub fn describe(g: &FiniteGroup, members: &[usize]) -> Option<String> {
    let n = members.len();
    if n == 1 {
        return Some("1".into());
    }
    let hist = g.order_histogram(members);
    if hist.contains_key(&n) {
        return Some(format!("C{n}"));
    }
    if hist.keys().all(|&o| o <= 2) {
        return Some(format!("C2^{}", n.trailing_zeros()));
    }
    if n == 8 {
        return match hist.get(&4) {
            Some(2) => Some("D8".into()),
            Some(6) => Some("Q8".into()),
            _ => None,
        };
    }
    None
}

/// A conjugacy class of strong involutions under `g ~ h·g·σ(h)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongInvolutionClass {
    pub representative: usize,
    pub orbit: Vec<usize>,
    /// `z = g·σ(g)`, central and σ-fixed.
    pub central_invariant: usize,
    /// Least element of the coset of `z` in `Z(G)^σ / (1+σ)Z(G)`.
    pub reduced_invariant: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantGroup {
    pub reduced_invariant: usize,
    pub classes: Vec<StrongInvolutionClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongInvolutionsReport {
    pub center: Vec<usize>,
    pub center_fixed: Vec<usize>,
    /// `(1+σ)Z(G) = {z·σ(z) : z ∈ Z(G)}`
    pub norm_subgroup: Vec<usize>,
    /// Least representative of each coset of the norm subgroup in `Z(G)^σ`.
    pub tate_quotient: Vec<usize>,
    pub groups: Vec<InvariantGroup>,
}

impl StrongInvolutionsReport {
    /// All classes, sorted by representative.
    pub fn classes(&self) -> Vec<&StrongInvolutionClass> {
        let mut all: Vec<_> = self.groups.iter().flat_map(|g| g.classes.iter()).collect();
        all.sort_by_key(|c| c.representative);
        all
    }

    pub fn with_central_invariant(&self, z: usize) -> Vec<&StrongInvolutionClass> {
        self.classes()
            .into_iter()
            .filter(|c| c.central_invariant == z)
            .collect()
    }
}

/// Enumerates the strong involutions `{g : g·σ(g) ∈ Z(G)^σ}` and their
/// classes, grouped by reduced central invariant.
pub fn strong_involutions(g: &FiniteGroup) -> StrongInvolutionsReport {
    let center = g.center();
    let center_fixed: Vec<usize> = center
        .members()
        .iter()
        .copied()
        .filter(|&z| g.sigma(z) == z)
        .collect();
    let mut norm: Vec<usize> = center
        .members()
        .iter()
        .map(|&z| g.mul(z, g.sigma(z)))
        .collect();
    norm.sort_unstable();
    norm.dedup();
    let norm = Subgroup::from_sorted_unchecked(norm);

    // reduced invariant of each element of Z(G)^σ
    let mut reduced = BTreeMap::new();
    let mut tate_quotient = Vec::new();
    for &z in &center_fixed {
        if reduced.contains_key(&z) {
            continue;
        }
        for &n in norm.members() {
            reduced.insert(g.mul(z, n), z);
        }
        tate_quotient.push(z);
    }

    let mut assigned = vec![false; g.order()];
    let mut by_invariant: BTreeMap<usize, Vec<StrongInvolutionClass>> = BTreeMap::new();
    for x in g.elements() {
        let z = g.mul(x, g.sigma(x));
        if assigned[x] || !center_fixed.contains(&z) {
            continue;
        }
        let mut orbit: Vec<usize> = g
            .elements()
            .map(|h| g.mul(g.mul(h, x), g.inv(g.sigma(h))))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &o in &orbit {
            assigned[o] = true;
            debug_assert_eq!(g.mul(o, g.sigma(o)), z);
        }
        let r = reduced[&z];
        by_invariant
            .entry(r)
            .or_default()
            .push(StrongInvolutionClass {
                representative: x,
                orbit,
                central_invariant: z,
                reduced_invariant: r,
            });
    }
    StrongInvolutionsReport {
        center: center.members().to_vec(),
        center_fixed,
        norm_subgroup: norm.members().to_vec(),
        tate_quotient,
        groups: by_invariant
            .into_iter()
            .map(|(reduced_invariant, classes)| InvariantGroup {
                reduced_invariant,
                classes,
            })
            .collect(),
    }
}

fn require_cocycle(g: &FiniteGroup, g0: usize) -> Result<()> {
    if g0 >= g.order() {
        return Err(Error::InvalidInput(format!("no element {g0}")));
    }
    if is_cocycle(g, g0) {
        return Ok(());
    }
    let z = g.mul(g0, g.sigma(g0));
    let central = g.center().contains(z);
    let reason = if central {
        format!(
            "g·σ(g) = {} is central, so int(g)∘σ is still an involution, but it is not the identity",
            g.label(z)
        )
    } else {
        format!(
            "g·σ(g) = {} is not in Z(G)^σ, so int(g)∘σ need not square to the identity",
            g.label(z)
        )
    };
    Err(Error::NotACocycle {
        element: g0,
        reason,
    })
}

/// The same group with the twisted involution `x ↦ g0·σ(x)·g0⁻¹`.
pub fn twist(g: &FiniteGroup, g0: usize) -> Result<FiniteGroup> {
    require_cocycle(g, g0)?;
    let sigma: Vec<usize> = g.elements().map(|x| g.conj(g0, g.sigma(x))).collect();
    g.with_involution(&sigma)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistPair {
    /// Class representative for the twisted involution.
    pub twisted: usize,
    /// Class representative for the original involution that it maps to.
    pub original: usize,
    pub stabilizer_order: usize,
    pub stabilizer_histogram: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistingReport {
    pub g0: usize,
    /// `c ↦ c·g0` is a bijection `Z¹(σ_g0) → Z¹(σ)`.
    pub cocycle_bijection: bool,
    /// The bijection maps classes onto classes, injectively.
    pub classes_match: bool,
    /// Matched stabilizers agree in order and element-order histogram.
    pub stabilizers_match: bool,
    pub pairs: Vec<TwistPair>,
}

impl TwistingReport {
    pub fn passed(&self) -> bool {
        self.cocycle_bijection && self.classes_match && self.stabilizers_match
    }
}

/// Checks the twisting bijection `H¹(σ_g0, G) → H¹(σ, G)`, `[c] ↦ [c·g0]`.
pub fn twisting_bijection_check(g: &FiniteGroup, g0: usize) -> Result<TwistingReport> {
    let twisted = twist(g, g0)?;
    let z_orig = cocycles(g);
    let z_tw = cocycles(&twisted);
    let mut image: Vec<usize> = z_tw.iter().map(|&c| g.mul(c, g0)).collect();
    image.sort_unstable();
    let cocycle_bijection = image == z_orig;

    let h_orig = h1(g);
    let h_tw = h1(&twisted);
    let mut class_of = vec![usize::MAX; g.order()];
    for (i, c) in h_orig.classes.iter().enumerate() {
        for &o in &c.orbit {
            class_of[o] = i;
        }
    }
    let mut classes_match = h_orig.class_count == h_tw.class_count;
    let mut stabilizers_match = true;
    let mut hit = vec![false; h_orig.class_count];
    let mut pairs = Vec::new();
    for tc in &h_tw.classes {
        let target = class_of[g.mul(tc.representative, g0)];
        if target == usize::MAX {
            classes_match = false;
            continue;
        }
        let oc = &h_orig.classes[target];
        let mut mapped: Vec<usize> = tc.orbit.iter().map(|&c| g.mul(c, g0)).collect();
        mapped.sort_unstable();
        if mapped != oc.orbit || hit[target] {
            classes_match = false;
        }
        hit[target] = true;
        if oc.stabilizer_order != tc.stabilizer_order
            || oc.stabilizer_histogram != tc.stabilizer_histogram
        {
            stabilizers_match = false;
        }
        pairs.push(TwistPair {
            twisted: tc.representative,
            original: oc.representative,
            stabilizer_order: tc.stabilizer_order,
            stabilizer_histogram: tc.stabilizer_histogram.clone(),
        });
    }
    Ok(TwistingReport {
        g0,
        cocycle_bijection,
        classes_match,
        stabilizers_match,
        pairs,
    })
}

/// A homomorphism `G → {±1}` commuting with the involution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoTorsionCharacter {
    values: Vec<i8>,
}

impl TwoTorsionCharacter {
    pub fn new(g: &FiniteGroup, values: Vec<i8>) -> Result<Self> {
        if values.len() != g.order() {
            return Err(Error::NotACharacter(format!(
                "{} values for a group of order {}",
                values.len(),
                g.order()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v != 1 && v != -1) {
            return Err(Error::NotACharacter(format!("value {v} is not ±1")));
        }
        for x in g.elements() {
            for y in g.elements() {
                if values[g.mul(x, y)] != values[x] * values[y] {
                    return Err(Error::NotACharacter(format!(
                        "χ({}·{}) ≠ χ({})·χ({})",
                        g.label(x),
                        g.label(y),
                        g.label(x),
                        g.label(y)
                    )));
                }
            }
        }
        for x in g.elements() {
            if values[g.sigma(x)] != values[x] {
                return Err(Error::NotEquivariant(format!(
                    "χ(σ({})) ≠ χ({})",
                    g.label(x),
                    g.label(x)
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self {
            values: vec![1; g.order()],
        }
    }

    pub fn value(&self, x: usize) -> i8 {
        self.values[x]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCharacter {
    pub representative: usize,
    pub stabilizer_order: usize,
    /// `χ` is identically `+1` on the stabilizer: the local system is
    /// trivial on this component.
    pub trivial: bool,
}

/// Restricts a character to each component's stabilizer.
pub fn character_components(g: &FiniteGroup, chi: &TwoTorsionCharacter) -> Vec<ComponentCharacter> {
    h1(g)
        .classes
        .into_iter()
        .map(|c| ComponentCharacter {
            representative: c.representative,
            stabilizer_order: c.stabilizer_order,
            trivial: c.stabilizer.members().iter().all(|&h| chi.value(h) == 1),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dicyclic, dihedral, symmetric};

    #[test]
    fn cocycles_basic() {
        let t = cyclic(1).unwrap();
        assert_eq!(cocycles(&t), vec![0]);
        let c6 = cyclic(6).unwrap();
        assert_eq!(cocycles(&c6), vec![0, 3]);
        let mu6 = c6.with_inversion().unwrap();
        assert_eq!(cocycles(&mu6), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn h1_examples() {
        let c6 = cyclic(6).unwrap();
        let r = h1(&c6);
        assert_eq!(r.representatives(), vec![0, 3]);
        assert!(r.classes.iter().all(|c| c.stabilizer_order == 6));

        let mu5 = cyclic(5).unwrap().with_inversion().unwrap();
        let r = h1(&mu5);
        assert_eq!(r.class_count, 1);
        assert_eq!(r.classes[0].stabilizer_order, 1);

        let mu6 = c6.with_inversion().unwrap();
        let r = h1(&mu6);
        assert_eq!(r.class_count, 2);
        for c in &r.classes {
            assert_eq!(c.stabilizer.members(), &[0, 3]);
        }
        // square cosets
        assert_eq!(r.classes[0].orbit, vec![0, 2, 4]);
        assert_eq!(r.classes[1].orbit, vec![1, 3, 5]);

        let d8 = dihedral(8).unwrap();
        let r = h1(&d8);
        let orbits: Vec<Vec<usize>> = r.classes.iter().map(|c| c.orbit.clone()).collect();
        // {1}, {r^2}, {s, r^2 s}, {rs, r^3 s}
        assert_eq!(orbits, vec![vec![0], vec![2], vec![4, 6], vec![5, 7]]);
        let orders: Vec<usize> = r.classes.iter().map(|c| c.stabilizer_order).collect();
        assert_eq!(orders, vec![8, 8, 4, 4]);

        let q8 = dicyclic(8).unwrap();
        let r = h1(&q8);
        let orbits: Vec<Vec<usize>> = r.classes.iter().map(|c| c.orbit.clone()).collect();
        assert_eq!(orbits, vec![vec![0], vec![2]]);
        assert!(r.classes.iter().all(|c| c.stabilizer_order == 8));
        assert_eq!(r.classes[0].stabilizer_label.as_deref(), Some("Q8"));
    }

    #[test]
    fn witt_rank_examples() {
        assert_eq!(witt_invariant_rank(&cyclic(1).unwrap()), 1);
        assert_eq!(witt_invariant_rank(&cyclic(9).unwrap()), 1);
        let c3 = cyclic(3).unwrap();
        let odd = FiniteGroup::direct_product(&c3, &c3);
        assert_eq!(witt_invariant_rank(&odd), 1);
        let mu6 = cyclic(6).unwrap().with_inversion().unwrap();
        assert_eq!(witt_invariant_rank(&mu6), 2);
    }

    #[test]
    fn strong_involutions_cyclic_4() {
        let c4 = cyclic(4).unwrap();
        let r = strong_involutions(&c4);
        assert_eq!(r.center_fixed, vec![0, 1, 2, 3]);
        assert_eq!(r.norm_subgroup, vec![0, 2]);
        assert_eq!(r.tate_quotient, vec![0, 1]);
        let classes = r.classes();
        let reps: Vec<usize> = classes.iter().map(|c| c.representative).collect();
        assert_eq!(reps, vec![0, 1, 2, 3]);
        let inv: Vec<usize> = classes.iter().map(|c| c.central_invariant).collect();
        assert_eq!(inv, vec![0, 2, 0, 2]);
        assert!(classes.iter().all(|c| c.reduced_invariant == 0));
    }

    #[test]
    fn strong_involutions_quaternion_match_h1() {
        let q8 = dicyclic(8).unwrap();
        let r = strong_involutions(&q8);
        let trivial: Vec<usize> = r
            .with_central_invariant(0)
            .iter()
            .map(|c| c.representative)
            .collect();
        assert_eq!(trivial, h1(&q8).representatives());
        assert_eq!(trivial, vec![0, 2]);
    }

    #[test]
    fn strong_involutions_trivial_group() {
        let r = strong_involutions(&cyclic(1).unwrap());
        assert_eq!(r.classes().len(), 1);
        assert_eq!(r.classes()[0].central_invariant, 0);
    }

    #[test]
    fn twist_examples() {
        let d8 = dihedral(8).unwrap();
        assert_eq!(twist(&d8, 0).unwrap(), d8);
        let tw = twist(&d8, 4).unwrap();
        for x in d8.elements() {
            assert_eq!(tw.sigma(x), d8.conj(4, x));
        }
        assert!(!tw.has_trivial_involution());

        let mu6 = cyclic(6).unwrap().with_inversion().unwrap();
        assert_eq!(twist(&mu6, 1).unwrap(), mu6);

        // r is not a cocycle for the trivial involution: r·r = r^2 is central
        let err = twist(&d8, 1).unwrap_err();
        assert!(
            matches!(err, Error::NotACocycle { element: 1, ref reason } if reason.contains("central"))
        );
        // in S3 a 3-cycle squared is not central
        let s3 = symmetric(3).unwrap();
        let three_cycle = s3.elements().find(|&x| s3.element_order(x) == 3).unwrap();
        let err = twist(&s3, three_cycle).unwrap_err();
        assert!(
            matches!(err, Error::NotACocycle { ref reason, .. } if reason.contains("not in Z(G)"))
        );
    }

    #[test]
    fn twisting_checks() {
        let d8 = dihedral(8).unwrap();
        let r = twisting_bijection_check(&d8, 0).unwrap();
        assert!(r.passed());
        assert!(r.pairs.iter().all(|p| p.twisted == p.original));

        let q8 = dicyclic(8).unwrap();
        let r = twisting_bijection_check(&q8, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs.len(), 2);

        let r = twisting_bijection_check(&d8, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs.len(), 4);

        assert!(matches!(
            twisting_bijection_check(&d8, 1),
            Err(Error::NotACocycle { .. })
        ));
    }

    #[test]
    fn characters() {
        let c4 = cyclic(4).unwrap();
        let triv = TwoTorsionCharacter::trivial(&c4);
        assert!(character_components(&c4, &triv).iter().all(|c| c.trivial));

        let chi = TwoTorsionCharacter::new(&c4, vec![1, -1, 1, -1]).unwrap();
        let comps = character_components(&c4, &chi);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.stabilizer_order == 4 && !c.trivial));

        let mu6 = cyclic(6).unwrap().with_inversion().unwrap();
        let chi = TwoTorsionCharacter::new(&mu6, vec![1, -1, 1, -1, 1, -1]).unwrap();
        let comps = character_components(&mu6, &chi);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| !c.trivial));

        assert!(matches!(
            TwoTorsionCharacter::new(&c4, vec![1, -1, -1, 1]),
            Err(Error::NotACharacter(_))
        ));
        assert!(matches!(
            TwoTorsionCharacter::new(&c4, vec![1, 2, 1, 2]),
            Err(Error::NotACharacter(_))
        ));
        // C2 × C2 with the swap: (a,b) ↦ χ(a) is not σ-invariant
        let sw = FiniteGroup::swap_square(&cyclic(2).unwrap());
        assert!(matches!(
            TwoTorsionCharacter::new(&sw, vec![1, 1, -1, -1]),
            Err(Error::NotEquivariant(_))
        ));
    }

    #[test]
    fn restriction_of_scalars_has_trivial_h1() {
        for g in [
            cyclic(4).unwrap(),
            dihedral(6).unwrap(),
            dicyclic(8).unwrap(),
        ] {
            let res = FiniteGroup::swap_square(&g);
            let r = h1(&res);
            assert_eq!(r.class_count, 1);
            // the stabilizer of 1 is the diagonal copy {(x, σx)}
            assert_eq!(r.classes[0].stabilizer_order, g.order());
        }
    }
}
