//! The bundled corpus of reference computations: small examples whose
//! answers are known in closed form, each run end to end through the
//! library and compared exactly.

use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{cohomology_dims, realization_cohomology};
use crate::error::Result;
use crate::exact::{run_case, CASE_IDS};
use crate::forms::{o_components, so_components, spin_invariant_rank, SpinCountQuery, SpinFamily};
use crate::galois::{cocycles, h1, twisting_bijection_check};
use crate::group::{cyclic, dicyclic, dihedral, FiniteGroup};
use crate::stack::{fixed_point_groupoid, EquivariantAction};

/// Component counts of the split spin groups `Spin(n, n+1)` for `n = 1..=8`.
pub const SPIN_ODD_TABLE: [usize; 8] = [1, 1, 3, 4, 3, 3, 5, 6];
/// Component counts of the split spin groups `Spin(n, n)` for `n = 1..=8`.
pub const SPIN_EVEN_TABLE: [usize; 8] = [1, 1, 1, 5, 3, 3, 3, 7];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestCheck {
    pub id: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub passed: bool,
    pub total: usize,
    pub failures: usize,
    pub checks: Vec<SelftestCheck>,
}

type CheckFn = fn() -> Result<(bool, String)>;

fn stabilizer_orders(g: &FiniteGroup) -> Vec<usize> {
    h1(g).classes.iter().map(|c| c.stabilizer_order).collect()
}

fn mu2_components() -> Result<(bool, String)> {
    let orders = stabilizer_orders(&cyclic(2)?);
    Ok((orders == [2, 2], format!("stabilizer orders {orders:?}")))
}

fn mu2_cohomology() -> Result<(bool, String)> {
    let dims = realization_cohomology(&cyclic(2)?, 4)?.dims;
    Ok((dims == [2; 5], format!("dims {dims:?}")))
}

fn mu_n_inversion() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 3..=8 {
        let orders = stabilizer_orders(&cyclic(n)?.with_inversion()?);
        let want: &[usize] = if n % 2 == 0 { &[2, 2] } else { &[1] };
        ok &= orders == want;
        detail.push(format!("n={n}: {orders:?}"));
    }
    Ok((ok, detail.join("; ")))
}

fn even_cyclic_trivial() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 1..=4 {
        let orders = stabilizer_orders(&cyclic(2 * n)?);
        ok &= orders == [2 * n, 2 * n];
        detail.push(format!("C{}: {orders:?}", 2 * n));
    }
    Ok((ok, detail.join("; ")))
}

fn odd_order_trivial() -> Result<(bool, String)> {
    let mut ok = true;
    for n in [1, 3, 5, 7, 9] {
        ok &= stabilizer_orders(&cyclic(n)?) == [n];
    }
    Ok((
        ok,
        "a single component with stabilizer the whole group".into(),
    ))
}

fn involution_classes() -> Result<(bool, String)> {
    let d8 = h1(&dihedral(8)?).class_count;
    let q8 = h1(&dicyclic(8)?).class_count;
    Ok((d8 == 4 && q8 == 2, format!("D8: {d8}, Q8: {q8}")))
}

fn orthogonal_components() -> Result<(bool, String)> {
    let counts_ok = (1..=10).all(|n| o_components(n).map(|l| l.len() == n + 1).unwrap_or(false));
    let two: Vec<(usize, usize)> = o_components(2)?.iter().map(|c| (c.p, c.q)).collect();
    Ok((
        counts_ok && two == [(2, 0), (1, 1), (0, 2)],
        format!("rank 2: {two:?}"),
    ))
}

fn special_orthogonal_components() -> Result<(bool, String)> {
    let sig = |p, q| -> Result<Vec<(usize, usize)>> {
        Ok(so_components(p, q)?.iter().map(|c| (c.p, c.q)).collect())
    };
    let a = sig(1, 1)?;
    let b = sig(2, 0)?;
    let c = sig(2, 1)?;
    Ok((
        a == [(1, 1)] && b == [(2, 0), (0, 2)] && c == [(2, 1), (0, 3)],
        format!("(1,1): {a:?}, (2,0): {b:?}, (2,1): {c:?}"),
    ))
}

fn spin_counts() -> Result<(bool, String)> {
    let eval = |family| -> Result<Vec<usize>> {
        (1..=8)
            .map(|n| spin_invariant_rank(SpinCountQuery { family, n }))
            .collect()
    };
    let odd = eval(SpinFamily::Odd)?;
    let even = eval(SpinFamily::Even)?;
    Ok((
        odd == SPIN_ODD_TABLE && even == SPIN_EVEN_TABLE,
        format!("odd {odd:?}, even {even:?}"),
    ))
}

fn witness(id: &str) -> Result<(bool, String)> {
    let r = run_case(id)?;
    Ok((
        r.passed,
        format!(
            "{}/{} assertions hold",
            r.assertion_count - r.failures,
            r.assertion_count
        ),
    ))
}

fn witness_normalizer() -> Result<(bool, String)> {
    witness(CASE_IDS[0])
}

fn witness_o11() -> Result<(bool, String)> {
    witness(CASE_IDS[1])
}

fn witness_orthogonal_diag() -> Result<(bool, String)> {
    witness(CASE_IDS[2])
}

fn cohomology_profiles() -> Result<(bool, String)> {
    let c2 = cohomology_dims(&cyclic(2)?, 5)?;
    let c3 = cohomology_dims(&cyclic(3)?, 4)?;
    let v4 = cohomology_dims(&dihedral(4)?, 4)?;
    let ok = c2.dims == [1; 6]
        && c3.dims == [1, 0, 0, 0, 0]
        && v4.dims == [1, 2, 3, 4, 5]
        && [&c2, &c3, &v4].iter().all(|p| p.d_squared_zero);
    Ok((
        ok,
        format!("C2 {:?}, C3 {:?}, C2xC2 {:?}", c2.dims, c3.dims, v4.dims),
    ))
}

fn abelianization_consistency() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, g) in [
        ("C2", cyclic(2)?),
        ("C3", cyclic(3)?),
        ("C4", cyclic(4)?),
        ("C2xC2", dihedral(4)?),
        ("D8", dihedral(8)?),
        ("Q8", dicyclic(8)?),
    ] {
        let h1_dim = cohomology_dims(&g, 1)?.dims[1];
        let ab = g.mod2_abelianization_rank();
        ok &= h1_dim == ab;
        detail.push(format!("{name}: {h1_dim}"));
    }
    Ok((ok, detail.join(", ")))
}

fn twisting() -> Result<(bool, String)> {
    let mut ok = true;
    let mut checked = 0;
    for g in [dihedral(8)?, dicyclic(8)?, cyclic(6)?.with_inversion()?] {
        for g0 in cocycles(&g) {
            ok &= twisting_bijection_check(&g, g0)?.passed();
            checked += 1;
        }
    }
    Ok((ok, format!("{checked} base points")))
}

fn point_groupoid() -> Result<(bool, String)> {
    let mut ok = true;
    for g in [dihedral(8)?, dicyclic(8)?, cyclic(6)?.with_inversion()?] {
        let r = fixed_point_groupoid(&EquivariantAction::point(g.clone()))?;
        let h = h1(&g);
        ok &= r.components.len() == h.class_count && r.mass == h.mass();
    }
    Ok((ok, "point groupoid agrees with the cocycle classes".into()))
}

const CORPUS: &[(&str, &str, CheckFn)] = &[
    ("mu2-components", "C2 with trivial involution: two components, each with stabilizer C2", mu2_components),
    ("mu2-cohomology", "C2 with trivial involution: mod-2 Betti numbers 2 in degrees 0..4 (two copies of RP^∞)", mu2_cohomology),
    ("mu-n-inversion", "Cn with inversion: one free component for n odd, two components with stabilizer C2 for n even", mu_n_inversion),
    ("even-cyclic-trivial", "C2n with trivial involution: two components, both with the full stabilizer", even_cyclic_trivial),
    ("odd-order-trivial", "odd order groups with trivial involution: a single component", odd_order_trivial),
    ("involution-classes", "trivial involution: D8 has 4 and Q8 has 2 conjugacy classes of elements of order at most 2", involution_classes),
    ("orthogonal-components", "O(n): n+1 components indexed by signatures; rank 2 gives O(1,1), O(2), O(2)", orthogonal_components),
    ("special-orthogonal-components", "SO(p,q): components indexed by signatures of the same discriminant", special_orthogonal_components),
    ("spin-counts", "split spin groups: closed-form component counts for n = 1..8", spin_counts),
    ("witness-normalizer-sl2", "torus normalizer in SL2: two components, stabilizers containing C4 and the circle", witness_normalizer),
    ("witness-o11", "O(1,1): three components with stabilizers O(1,1), O(2), O(2)", witness_o11),
    ("witness-orthogonal-diag", "O(3): diagonal sign matrices represent the forms they twist to", witness_orthogonal_diag),
    ("cohomology-profiles", "bar complex: H*(C2), H*(C3), H*(C2×C2) in low degrees", cohomology_profiles),
    ("abelianization", "dim H¹(K; F₂) equals the rank of the mod-2 abelianization", abelianization_consistency),
    ("twisting", "twisting by any cocycle is a bijection preserving stabilizers", twisting),
    ("point-groupoid", "the fixed-point groupoid of a point is the cocycle groupoid", point_groupoid),
];

/// Runs the whole corpus; check order is fixed.
pub fn run_selftest() -> SelftestReport {
    let checks: Vec<SelftestCheck> = CORPUS
        .par_iter()
        .map(|&(id, claim, f)| {
            let (passed, detail) = match f() {
                Ok(r) => r,
                Err(e) => (false, format!("error {}: {e}", e.kind())),
            };
            SelftestCheck {
                id,
                claim,
                passed,
                detail,
            }
        })
        .collect();
    let failures = checks.iter().filter(|c| !c.passed).count();
    SelftestReport {
        passed: failures == 0,
        total: checks.len(),
        failures,
        checks,
    }
}
