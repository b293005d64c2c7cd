#![allow(dead_code)]

use realforms::galois::cocycles;
use realforms::group::{cyclic, dicyclic, dihedral, symmetric};
use realforms::stack::EquivariantAction;
use realforms::{FiniteGroup, Subgroup};

/// `σ = int(a)`, an involution whenever `a²` is central.
pub fn inner_involution(g: &FiniteGroup, a: usize) -> Option<FiniteGroup> {
    let perm: Vec<usize> = g.elements().map(|x| g.conj(a, x)).collect();
    g.with_involution(&perm).ok()
}

/// Small groups with involution: the builtin families with trivial and
/// inversion involutions, swap squares, and inner involutions of the
/// nonabelian members.
pub fn corpus() -> Vec<(String, FiniteGroup)> {
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push((format!("C{n}"), cyclic(n).unwrap()));
        if n > 2 {
            out.push((
                format!("C{n} inversion"),
                cyclic(n).unwrap().with_inversion().unwrap(),
            ));
        }
    }
    let mut nonabelian = Vec::new();
    for n in [4, 6, 8, 10, 12] {
        nonabelian.push((format!("D{n}"), dihedral(n).unwrap()));
    }
    nonabelian.push(("Q8".to_string(), dicyclic(8).unwrap()));
    nonabelian.push(("Dic12".to_string(), dicyclic(12).unwrap()));
    nonabelian.push(("S3".to_string(), symmetric(3).unwrap()));
    for (name, g) in &nonabelian {
        out.push((name.clone(), g.clone()));
        let mut seen = Vec::new();
        for a in g.elements().skip(1) {
            if let Some(t) = inner_involution(g, a) {
                let perm = t.sigma_permutation();
                if !t.has_trivial_involution() && !seen.contains(&perm) {
                    seen.push(perm);
                    out.push((format!("{name} int({})", g.label(a)), t));
                }
            }
        }
    }
    out.push(("S4".to_string(), symmetric(4).unwrap()));
    for (name, g) in [
        ("C3", cyclic(3).unwrap()),
        ("C4 inversion", cyclic(4).unwrap().with_inversion().unwrap()),
        ("S3", symmetric(3).unwrap()),
        ("Q8", dicyclic(8).unwrap()),
    ] {
        out.push((
            format!("swap square of {name}"),
            FiniteGroup::swap_square(&g),
        ));
    }
    out.push((
        "C2 x C4 inversion".to_string(),
        FiniteGroup::direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap())
            .with_inversion()
            .unwrap(),
    ));
    out
}

/// Ambient groups for the induction and quotient constructions.
pub fn ambient_groups() -> Vec<(String, FiniteGroup)> {
    let mut v = vec![
        ("D8".to_string(), dihedral(8).unwrap()),
        ("Q8".to_string(), dicyclic(8).unwrap()),
        ("S3".to_string(), symmetric(3).unwrap()),
        ("D12".to_string(), dihedral(12).unwrap()),
        (
            "C6 inversion".to_string(),
            cyclic(6).unwrap().with_inversion().unwrap(),
        ),
        (
            "C8 inversion".to_string(),
            cyclic(8).unwrap().with_inversion().unwrap(),
        ),
        (
            "swap square of C3".to_string(),
            FiniteGroup::swap_square(&cyclic(3).unwrap()),
        ),
        (
            "swap square of S3".to_string(),
            FiniteGroup::swap_square(&symmetric(3).unwrap()),
        ),
        ("S4".to_string(), symmetric(4).unwrap()),
    ];
    let d8 = dihedral(8).unwrap();
    let r = d8.parse_element("r").unwrap();
    v.push(("D8 int(r)".to_string(), inner_involution(&d8, r).unwrap()));
    v
}

/// Distinct σ-stable subgroups generated by one element and its image.
pub fn sigma_stable_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        let s = g.generate(&[x, g.sigma(x)]);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// A few actions of `k`: a point, coset spaces of σ-stable subgroups, and
/// regular actions twisted by cocycles.
pub fn sample_actions(k: &FiniteGroup) -> Vec<EquivariantAction> {
    let mut out = vec![EquivariantAction::point(k.clone())];
    for l in sigma_stable_subgroups(k).into_iter().take(3) {
        out.push(EquivariantAction::on_cosets(k.clone(), &l).unwrap());
    }
    for c in cocycles(k).into_iter().take(2) {
        out.push(EquivariantAction::regular(k.clone(), c).unwrap());
    }
    out
}

pub fn normal_sigma_stable(g: &FiniteGroup) -> Vec<Subgroup> {
    sigma_stable_subgroups(g)
        .into_iter()
        .filter(|n| g.is_normal(n) && n.order() > 1)
        .collect()
}
