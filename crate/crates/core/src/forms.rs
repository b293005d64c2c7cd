//! Real quadratic forms and component counts for orthogonal and spin groups.
//!
//! A nondegenerate real quadratic form is classified by its signature
//! `(p, q)`. The components of the real realization of `BO(n)` are indexed
//! by all signatures of rank `n`; those of `BSO(p, q)` by the signatures
//! with the same discriminant as `(p, q)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Invariants of the diagonal form `⟨1, …, 1, −1, …, −1⟩` (`p` ones, `q`
/// minus ones).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignatureClass {
    pub p: usize,
    pub q: usize,
    pub rank: usize,
    pub disc_sign: i8,
    pub hasse_sign: i8,
}

/// Real Hilbert symbol on units `±1`: `(−1, −1) = −1`, otherwise `+1`.
pub fn hilbert_symbol(a: i8, b: i8) -> i8 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

/// Hasse invariant `∏_{i<j} (aᵢ, aⱼ)` of a diagonal form with `±1` entries.
pub fn hasse_of_diagonal(entries: &[i8]) -> i8 {
    let mut h = 1;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            h *= hilbert_symbol(entries[i], entries[j]);
        }
    }
    h
}

fn sign_of_parity(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn classify_form(p: usize, q: usize) -> Result<SignatureClass> {
    if p + q == 0 {
        return Err(Error::EmptyForm);
    }
    Ok(SignatureClass {
        p,
        q,
        rank: p + q,
        disc_sign: sign_of_parity(q),
        // number of pairs of negative entries
        hasse_sign: sign_of_parity(q * q.saturating_sub(1) / 2),
    })
}

/// All signatures of rank `n`, by descending `p`.
pub fn o_components(n: usize) -> Result<Vec<SignatureClass>> {
    (0..=n).rev().map(|p| classify_form(p, n - p)).collect()
}

/// `s ≡ q (mod 2)`: equal discriminants.
pub fn so_matches_discriminant(q: usize, s: usize) -> bool {
    s % 2 == q % 2
}

/// `s ≡ p·q (mod 2)`, the literal condition stated under the standing
/// assumption `q ≡ p·q (mod 2)`.
pub fn so_matches_literal(p: usize, q: usize, s: usize) -> bool {
    s % 2 == (p * q) % 2
}

/// Whether `q ≡ p·q (mod 2)`, i.e. the two SO predicates coincide.
pub fn so_assumption_holds(p: usize, q: usize) -> bool {
    q % 2 == (p * q) % 2
}

/// Signatures `(r, s)` of rank `p + q` with the discriminant of `(p, q)`.
pub fn so_components(p: usize, q: usize) -> Result<Vec<SignatureClass>> {
    let n = p + q;
    if n == 0 {
        return Err(Error::EmptyForm);
    }
    let members = o_components(n)?
        .into_iter()
        .filter(|c| so_matches_discriminant(q, c.q))
        .collect::<Vec<_>>();
    if so_assumption_holds(p, q) {
        debug_assert!((0..=n).all(|s| so_matches_discriminant(q, s) == so_matches_literal(p, q, s)));
    }
    Ok(members)
}

/// Rank-`n` signatures with the given discriminant and Hasse signs.
pub fn matching_signatures(n: usize, disc_sign: i8, hasse_sign: i8) -> Result<Vec<SignatureClass>> {
    for s in [disc_sign, hasse_sign] {
        if s != 1 && s != -1 {
            return Err(Error::InvalidInput(format!("sign {s} is not ±1")));
        }
    }
    Ok(o_components(n)?
        .into_iter()
        .filter(|c| c.disc_sign == disc_sign && c.hasse_sign == hasse_sign)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinFamily {
    /// `Spin(n, n+1)`
    Odd,
    /// `Spin(n, n)`
    Even,
}

impl SpinFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(SpinFamily::Odd),
            "even" => Ok(SpinFamily::Even),
            other => Err(Error::UnknownKind(other.into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpinCountQuery {
    pub family: SpinFamily,
    pub n: usize,
}

/// Number of components of the real realization of the split spin group,
/// from the closed forms:
///
/// * `Spin(n, n+1)`: `⌊(2n+1)/4⌋ + (2, 1, 0, 2)[n mod 4]`
/// * `Spin(n, n)`: `⌊n/2⌋ + (3, 1, 0, 0)[n mod 4]`
pub fn spin_invariant_rank(query: SpinCountQuery) -> Result<usize> {
    let n = query.n;
    if n == 0 {
        return Err(Error::InvalidInput("spin rank needs n ≥ 1".into()));
    }
    Ok(match query.family {
        SpinFamily::Odd => (2 * n + 1) / 4 + [2, 1, 0, 2][n % 4],
        SpinFamily::Even => n / 2 + [3, 1, 0, 0][n % 4],
    })
}

/// The closed-form spin count next to the signature data of the split form;
/// the two are reported together and not asserted equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinComparison {
    pub query: SpinCountQuery,
    pub invariant_rank: usize,
    pub split_signature: SignatureClass,
    pub matching_signatures: Vec<SignatureClass>,
}

pub fn spin_comparison(query: SpinCountQuery) -> Result<SpinComparison> {
    let invariant_rank = spin_invariant_rank(query)?;
    let split = match query.family {
        SpinFamily::Odd => classify_form(query.n + 1, query.n)?,
        SpinFamily::Even => classify_form(query.n, query.n)?,
    };
    Ok(SpinComparison {
        query,
        invariant_rank,
        split_signature: split,
        matching_signatures: matching_signatures(split.rank, split.disc_sign, split.hasse_sign)?,
    })
}

/// Group families with a closed-form component count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassicalKind {
    O(usize),
    SO(usize, usize),
    SpinOdd(usize),
    SpinEven(usize),
}

impl ClassicalKind {
    pub fn parse(kind: &str, params: &[usize]) -> Result<Self> {
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!(
                    "`{kind}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match kind.to_ascii_lowercase().as_str() {
            "o" => arity(1).map(|_| ClassicalKind::O(params[0])),
            "so" => arity(2).map(|_| ClassicalKind::SO(params[0], params[1])),
            "spin-odd" => arity(1).map(|_| ClassicalKind::SpinOdd(params[0])),
            "spin-even" => arity(1).map(|_| ClassicalKind::SpinEven(params[0])),
            _ => Err(Error::UnknownKind(kind.into())),
        }
    }
}

/// Rank of degree-0 Witt-sheaf cohomology up to torsion, i.e. the number of
/// components of the real realization.
pub fn witt_rank(kind: ClassicalKind) -> Result<usize> {
    match kind {
        ClassicalKind::O(n) => Ok(o_components(n)?.len()),
        ClassicalKind::SO(p, q) => Ok(so_components(p, q)?.len()),
        ClassicalKind::SpinOdd(n) => spin_invariant_rank(SpinCountQuery {
            family: SpinFamily::Odd,
            n,
        }),
        ClassicalKind::SpinEven(n) => spin_invariant_rank(SpinCountQuery {
            family: SpinFamily::Even,
            n,
        }),
    }
}
