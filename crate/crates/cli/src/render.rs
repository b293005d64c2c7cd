//! Plain-text renderings of the reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use realforms::cohomology::{F2CohomologyProfile, RealizationCohomology};
use realforms::exact::CaseReport;
use realforms::forms::{SignatureClass, SpinComparison};
use realforms::galois::{
    ComponentCharacter, ComponentsReport, StrongInvolutionsReport, TwistingReport,
};
use realforms::selftest::SelftestReport;
use realforms::stack::{EquivariantAction, FixedPointGroupoidReport, GroupoidComparison};
use realforms::FiniteGroup;

fn histogram(h: &BTreeMap<usize, usize>) -> String {
    h.iter()
        .map(|(order, count)| format!("{count}×ord{order}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn components_noun(n: usize) -> &'static str {
    if n == 1 {
        "component"
    } else {
        "components"
    }
}

fn labels(g: &FiniteGroup, xs: &[usize]) -> String {
    xs.iter()
        .map(|&x| g.label(x))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn h1(g: &FiniteGroup, r: &ComponentsReport) -> String {
    let mut s = format!(
        "group of order {}: {} cocycles in {} classes\n",
        r.group_order, r.cocycle_count, r.class_count
    );
    for c in &r.classes {
        let _ = writeln!(
            s,
            "  [{}] orbit {{{}}}, stabilizer order {}{} ({})",
            g.label(c.representative),
            labels(g, &c.orbit),
            c.stabilizer_order,
            c.stabilizer_label
                .as_ref()
                .map(|l| format!(" = {l}"))
                .unwrap_or_default(),
            histogram(&c.stabilizer_histogram)
        );
    }
    s
}

pub fn components(g: &FiniteGroup, r: &ComponentsReport) -> String {
    let mass = r.mass();
    let mut s = format!(
        "{} {}, mass {}/{}\n",
        r.class_count,
        components_noun(r.class_count),
        mass.numer(),
        mass.denom()
    );
    for c in &r.classes {
        let name = c
            .stabilizer_label
            .clone()
            .unwrap_or_else(|| format!("order {}", c.stabilizer_order));
        let _ = writeln!(s, "  B({name})  at cocycle {}", g.label(c.representative));
    }
    s
}

pub fn strong_involutions(g: &FiniteGroup, r: &StrongInvolutionsReport) -> String {
    let mut s = format!(
        "Z(G)^σ = {{{}}}, (1+σ)Z = {{{}}}, Tate quotient of order {}\n",
        labels(g, &r.center_fixed),
        labels(g, &r.norm_subgroup),
        r.tate_quotient.len()
    );
    for group in &r.groups {
        let _ = writeln!(
            s,
            "  reduced invariant {}:",
            g.label(group.reduced_invariant)
        );
        for c in &group.classes {
            let _ = writeln!(
                s,
                "    [{}] z = {}, orbit size {}",
                g.label(c.representative),
                g.label(c.central_invariant),
                c.orbit.len()
            );
        }
    }
    s
}

pub fn twist_check(g: &FiniteGroup, reports: &[TwistingReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(
            s,
            "base {}: {} (bijection {}, classes {}, stabilizers {})",
            g.label(r.g0),
            if r.passed() { "PASS" } else { "FAIL" },
            r.cocycle_bijection,
            r.classes_match,
            r.stabilizers_match
        );
    }
    s
}

pub fn character(g: &FiniteGroup, comps: &[ComponentCharacter]) -> String {
    let mut s = String::new();
    for c in comps {
        let _ = writeln!(
            s,
            "  [{}] stabilizer order {}: local system {}",
            g.label(c.representative),
            c.stabilizer_order,
            if c.trivial { "trivial" } else { "nontrivial" }
        );
    }
    s
}

pub fn groupoid(a: &EquivariantAction, r: &FixedPointGroupoidReport) -> String {
    let g = a.group();
    let mut s = format!(
        "{} objects in {} components, mass {}/{}\n",
        r.object_count,
        r.components.len(),
        r.mass.numer(),
        r.mass.denom()
    );
    for c in &r.components {
        let (cg, x) = c.representative;
        let _ = writeln!(
            s,
            "  [({}, {x})] {} objects, automorphisms of order {} ({})",
            g.label(cg),
            c.objects.len(),
            c.automorphism_order,
            histogram(&c.automorphism_histogram)
        );
    }
    s
}

pub fn comparison(left: &str, right: &str, c: &GroupoidComparison) -> String {
    format!(
        "{left}: {} components, {right}: {} components, {}\n",
        c.left_components,
        c.right_components,
        if c.equivalent {
            "equivalent"
        } else {
            "NOT equivalent"
        }
    )
}

pub fn signatures(title: &str, list: &[SignatureClass]) -> String {
    let noun = if list.len() == 1 {
        "signature"
    } else {
        "signatures"
    };
    let mut s = format!("{title}: {} {noun}\n", list.len());
    for c in list {
        let _ = writeln!(
            s,
            "  ({},{})  disc {:+}  hasse {:+}",
            c.p, c.q, c.disc_sign, c.hasse_sign
        );
    }
    s
}

pub fn spin(c: &SpinComparison) -> String {
    let sig = &c.split_signature;
    format!(
        "{}\nsplit form ({},{}): {} rank-{} signatures share its discriminant and Hasse sign\n",
        c.invariant_rank,
        sig.p,
        sig.q,
        c.matching_signatures.len(),
        sig.rank
    )
}

pub fn witness(r: &CaseReport) -> String {
    let mut s = format!("{}: {}\n", r.id, r.title);
    for a in &r.assertions {
        let _ = writeln!(
            s,
            "  {} #{:<2} {:<21} {}",
            if a.passed { "PASS" } else { "FAIL" },
            a.index,
            a.kind,
            a.claim
        );
        if !a.passed {
            let _ = writeln!(s, "         {}", a.detail);
        }
    }
    let _ = writeln!(
        s,
        "{}/{} assertions hold",
        r.assertion_count - r.failures,
        r.assertion_count
    );
    s
}

pub fn profile(p: &F2CohomologyProfile) -> String {
    let mut s = format!("H^*({}; F2), order {}\n", p.label, p.order);
    for (k, d) in p.dims.iter().enumerate() {
        let _ = writeln!(s, "  H^{k}: {d}");
    }
    s
}

pub fn realization(r: &RealizationCohomology) -> String {
    let mut s = format!(
        "{} {}\n",
        r.components.len(),
        components_noun(r.components.len())
    );
    for c in &r.components {
        let _ = writeln!(
            s,
            "  [{}] B({}): {:?}",
            c.representative_label, c.profile.label, c.profile.dims
        );
    }
    let _ = writeln!(s, "total: {:?}", r.dims);
    s
}

pub fn selftest(r: &SelftestReport) -> String {
    let width = r.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in &r.checks {
        let _ = writeln!(
            s,
            "{} {:<width$}  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.claim
        );
        if !c.passed {
            let _ = writeln!(s, "     {}", c.detail);
        }
    }
    let _ = writeln!(s, "{}/{} checks pass", r.total - r.failures, r.total);
    s
}
