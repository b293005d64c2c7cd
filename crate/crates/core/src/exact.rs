//! Exact matrix arithmetic over the Gaussian rationals `ℚ(i)` and scripted
//! witness suites for explicit cocycle computations in matrix groups.
//!
//! Nothing here uses floating point: entries are pairs of arbitrary
//! precision rationals and all comparisons are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element `re + im·i` of `ℚ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    /// `re_num/re_den + (im_num/im_den)·i`.
    pub fn from_fractions(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Result<Self> {
        if re_den == 0 || im_den == 0 {
            return Err(Error::InvalidInput(
                "zero denominator in matrix entry".into(),
            ));
        }
        Ok(GaussianRational::new(
            BigRational::new(re_num.into(), re_den.into()),
            BigRational::new(im_num.into(), im_den.into()),
        ))
    }

    pub fn zero() -> Self {
        GaussianRational::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GaussianRational::from_ints(1, 0)
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular);
        }
        let n = self.norm_sq();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Whether the value is a rational integer `k`.
    pub fn is_integer(&self, k: i64) -> bool {
        self.im.is_zero() && self.re == BigRational::from_integer(BigInt::from(k))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

/// Square matrix over `ℚ(i)`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    size: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidInput("matrix is not square".into()));
        }
        Ok(ExactMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Entries given as integer pairs `(re, im)`.
    pub fn from_int_rows(rows: &[&[(i64, i64)]]) -> Result<Self> {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&(a, b)| GaussianRational::from_ints(a, b))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn identity(size: usize) -> Self {
        ExactMatrix::diagonal((0..size).map(|_| GaussianRational::one()).collect())
    }

    pub fn diagonal(diag: Vec<GaussianRational>) -> Self {
        let size = diag.len();
        let mut entries = vec![GaussianRational::zero(); size * size];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * size + i] = d;
        }
        ExactMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.size + c]
    }

    pub fn rows(&self) -> Vec<Vec<GaussianRational>> {
        self.entries.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    fn check_size(&self, other: &ExactMatrix) -> Result<()> {
        if self.size != other.size {
            return Err(Error::InvalidInput(format!(
                "matrix sizes {} and {} differ",
                self.size, other.size
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_size(other)?;
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = GaussianRational::zero();
                for k in 0..n {
                    acc = &acc + &(self.get(r, k) * other.get(k, c));
                }
                entries.push(acc);
            }
        }
        Ok(ExactMatrix { size: n, entries })
    }

    pub fn scale(&self, s: &GaussianRational) -> ExactMatrix {
        ExactMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| s * e).collect(),
        }
    }

    /// Entrywise complex conjugate `M̄`.
    pub fn conj(&self) -> ExactMatrix {
        ExactMatrix {
            size: self.size,
            entries: self.entries.iter().map(GaussianRational::conj).collect(),
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let n = self.size;
        let entries = (0..n * n).map(|i| self.get(i % n, i / n).clone()).collect();
        ExactMatrix { size: n, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == ExactMatrix::identity(self.size)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.size).all(|r| (0..self.size).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn is_antidiagonal(&self) -> bool {
        let n = self.size;
        (0..n).all(|r| (0..n).all(|c| r + c == n - 1 || self.get(r, c).is_zero()))
    }

    /// Diagonal entries if the matrix is `diag(±1, …, ±1)`.
    pub fn sign_diagonal(&self) -> Option<Vec<i8>> {
        if !self.is_diagonal() {
            return None;
        }
        (0..self.size)
            .map(|i| {
                let e = self.get(i, i);
                if e.is_integer(1) {
                    Some(1)
                } else if e.is_integer(-1) {
                    Some(-1)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn det(&self) -> GaussianRational {
        if self.size == 2 {
            return &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0));
        }
        let n = self.size;
        let mut a = self.rows();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return GaussianRational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -&det;
            }
            det = &det * &a[col][col];
            let pivot_inv = a[col][col].inv().expect("nonzero pivot");
            let pivot_row = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = &row[col] * &pivot_inv;
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        det
    }

    /// Inverse by the adjugate for `2×2` and Gauss–Jordan elimination
    /// otherwise.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        let n = self.size;
        if n == 2 {
            let d = self.det().inv()?;
            let e = |r, c| self.get(r, c).clone();
            return Ok(ExactMatrix {
                size: 2,
                entries: vec![e(1, 1), -&e(0, 1), -&e(1, 0), e(0, 0)],
            }
            .scale(&d));
        }
        let mut a = self.rows();
        let mut inv = ExactMatrix::identity(n).rows();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(p, col);
            inv.swap(p, col);
            let pivot_inv = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &pivot_inv;
                inv[col][c] = &inv[col][c] * &pivot_inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let t = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                    let t = &f * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &t;
                }
            }
        }
        ExactMatrix::from_rows(inv)
    }

    fn require_invertible(&self) -> Result<()> {
        if self.det().is_zero() {
            Err(Error::Singular)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.entries.chunks(self.size).enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, e) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Antiholomorphic involution `σ(M) = M̄` or `σ(M) = J·M̄·J⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionSpec {
    Conjugate,
    ConjugateBy(ExactMatrix),
}

impl InvolutionSpec {
    /// Twisted conjugation by `J`; requires `J·J̄ = 1` so that the induced
    /// map squares to the identity.
    pub fn conjugate_by(j: ExactMatrix) -> Result<Self> {
        if !j.mul(&j.conj())?.is_identity() {
            return Err(Error::NotAnInvolution(format!("J·J̄ ≠ 1 for J = {j}")));
        }
        Ok(InvolutionSpec::ConjugateBy(j))
    }

    pub fn apply(&self, m: &ExactMatrix) -> Result<ExactMatrix> {
        match self {
            InvolutionSpec::Conjugate => Ok(m.conj()),
            // J⁻¹ = J̄ because J·J̄ = 1
            InvolutionSpec::ConjugateBy(j) => j.mul(&m.conj())?.mul(&j.conj()),
        }
    }
}

/// `M·σ(M) = 1`.
pub fn is_cocycle(m: &ExactMatrix, inv: &InvolutionSpec) -> Result<bool> {
    m.require_invertible()?;
    Ok(m.mul(&inv.apply(m)?)?.is_identity())
}

/// `g' = σ(h)·g·h⁻¹`.
pub fn connects(
    h: &ExactMatrix,
    g: &ExactMatrix,
    g_prime: &ExactMatrix,
    inv: &InvolutionSpec,
) -> Result<bool> {
    let h_inv = h.inverse()?;
    for (name, m) in [("source", g), ("target", g_prime)] {
        if !is_cocycle(m, inv)? {
            log::warn!("{name} {m} is not a cocycle");
        }
    }
    Ok(inv.apply(h)?.mul(g)?.mul(&h_inv)? == *g_prime)
}

/// `σ(h)·g = g·h`.
pub fn in_twisted_stabilizer(
    h: &ExactMatrix,
    g: &ExactMatrix,
    inv: &InvolutionSpec,
) -> Result<bool> {
    h.require_invertible()?;
    Ok(inv.apply(h)?.mul(g)? == g.mul(h)?)
}

/// `hᵀ·F·h = F`.
pub fn preserves_form(h: &ExactMatrix, form: &ExactMatrix) -> Result<bool> {
    Ok(h.transpose().mul(form)?.mul(h)? == *form)
}

/// Identifiers of the bundled witness cases.
pub const CASE_IDS: [&str; 3] = ["normalizer-sl2", "o11", "orthogonal-diag"];

fn bundled_case(id: &str) -> Option<&'static str> {
    match id {
        "normalizer-sl2" => Some(include_str!("../cases/normalizer-sl2.json")),
        "o11" => Some(include_str!("../cases/o11.json")),
        "orthogonal-diag" => Some(include_str!("../cases/orthogonal-diag.json")),
        _ => None,
    }
}

type EntryDoc = [i64; 4];

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CaseGroup {
    /// Normalizer of the diagonal torus in `SL₂(ℂ)`.
    Sl2TorusNormalizer,
    /// Complex orthogonal group of the named diagonal form.
    Orthogonal { form: String },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum InvolutionDoc {
    Conjugate,
    ConjugateBy {
        #[serde(rename = "J")]
        j: String,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "assert", rename_all = "kebab-case")]
pub enum AssertionDoc {
    Cocycle {
        g: String,
        claim: String,
    },
    Connects {
        h: String,
        from: String,
        to: String,
        claim: String,
    },
    DisconnectedSampled {
        from: String,
        to: String,
        samples: Vec<String>,
        claim: String,
    },
    StabilizerMember {
        h: String,
        g: String,
        claim: String,
    },
    StabilizerNonmember {
        h: String,
        g: String,
        claim: String,
    },
    InGroup {
        h: String,
        claim: String,
    },
    /// `g·F` is diagonal with the given signature.
    ProductSignature {
        g: String,
        form: String,
        signature: [usize; 2],
        claim: String,
    },
}

impl AssertionDoc {
    fn kind(&self) -> &'static str {
        match self {
            AssertionDoc::Cocycle { .. } => "cocycle",
            AssertionDoc::Connects { .. } => "connects",
            AssertionDoc::DisconnectedSampled { .. } => "disconnected-sampled",
            AssertionDoc::StabilizerMember { .. } => "stabilizer-member",
            AssertionDoc::StabilizerNonmember { .. } => "stabilizer-nonmember",
            AssertionDoc::InGroup { .. } => "in-group",
            AssertionDoc::ProductSignature { .. } => "product-signature",
        }
    }

    fn claim(&self) -> &str {
        match self {
            AssertionDoc::Cocycle { claim, .. }
            | AssertionDoc::Connects { claim, .. }
            | AssertionDoc::DisconnectedSampled { claim, .. }
            | AssertionDoc::StabilizerMember { claim, .. }
            | AssertionDoc::StabilizerNonmember { claim, .. }
            | AssertionDoc::InGroup { claim, .. }
            | AssertionDoc::ProductSignature { claim, .. } => claim,
        }
    }

    /// Matrices that must lie in the ambient group.
    fn group_elements(&self) -> Vec<&str> {
        match self {
            AssertionDoc::Cocycle { g, .. } => vec![g],
            AssertionDoc::Connects { h, from, to, .. } => vec![h, from, to],
            AssertionDoc::DisconnectedSampled {
                from, to, samples, ..
            } => {
                let mut v: Vec<&str> = vec![from, to];
                v.extend(samples.iter().map(String::as_str));
                v
            }
            AssertionDoc::StabilizerMember { h, g, .. }
            | AssertionDoc::StabilizerNonmember { h, g, .. } => {
                vec![h, g]
            }
            AssertionDoc::InGroup { h, .. } => vec![h],
            AssertionDoc::ProductSignature { .. } => vec![],
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CaseDocument {
    pub id: String,
    pub title: String,
    pub group: CaseGroup,
    pub involution: InvolutionDoc,
    pub matrices: BTreeMap<String, Vec<Vec<EntryDoc>>>,
    pub assertions: Vec<AssertionDoc>,
}

/// A parsed witness case, ready to run.
#[derive(Clone, Debug)]
pub struct WitnessCase {
    pub id: String,
    pub title: String,
    group: CaseGroup,
    involution: InvolutionSpec,
    matrices: BTreeMap<String, ExactMatrix>,
    assertions: Vec<AssertionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssertionResult {
    pub index: usize,
    pub kind: &'static str,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
    /// The exact matrices involved, by name.
    pub matrices: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub assertion_count: usize,
    pub failures: usize,
    pub assertions: Vec<AssertionResult>,
}

impl WitnessCase {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CaseDocument = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("case file: {e}")))?;
        WitnessCase::from_document(doc)
    }

    pub fn from_document(doc: CaseDocument) -> Result<Self> {
        let mut matrices = BTreeMap::new();
        for (name, rows) in &doc.matrices {
            let rows = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| GaussianRational::from_fractions(e[0], e[1], e[2], e[3]))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let m = ExactMatrix::from_rows(rows)
                .map_err(|e| Error::InvalidInput(format!("matrix `{name}`: {e}")))?;
            matrices.insert(name.clone(), m);
        }
        let case = WitnessCase {
            id: doc.id,
            title: doc.title,
            group: doc.group,
            involution: InvolutionSpec::Conjugate,
            matrices,
            assertions: doc.assertions,
        };
        let involution = match &doc.involution {
            InvolutionDoc::Conjugate => InvolutionSpec::Conjugate,
            InvolutionDoc::ConjugateBy { j } => {
                InvolutionSpec::conjugate_by(case.matrix(j)?.clone())?
            }
        };
        if let CaseGroup::Orthogonal { form } = &case.group {
            case.matrix(form)?;
        }
        for a in &case.assertions {
            for name in a.group_elements() {
                case.matrix(name)?;
            }
            if let AssertionDoc::ProductSignature { g, form, .. } = a {
                case.matrix(g)?;
                case.matrix(form)?;
            }
        }
        Ok(WitnessCase { involution, ..case })
    }

    pub fn matrix(&self, name: &str) -> Result<&ExactMatrix> {
        self.matrices
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown matrix `{name}`")))
    }

    pub fn involution(&self) -> &InvolutionSpec {
        &self.involution
    }

    /// Membership in the ambient group of the case.
    pub fn in_group(&self, h: &ExactMatrix) -> Result<bool> {
        if h.det().is_zero() {
            return Ok(false);
        }
        match &self.group {
            CaseGroup::Sl2TorusNormalizer => Ok(h.size() == 2
                && h.det().is_integer(1)
                && (h.is_diagonal() || h.is_antidiagonal())),
            CaseGroup::Orthogonal { form } => preserves_form(h, self.matrix(form)?),
        }
    }

    pub fn run(&self) -> Result<CaseReport> {
        let assertions = self
            .assertions
            .par_iter()
            .enumerate()
            .map(|(index, a)| self.check(index, a))
            .collect::<Result<Vec<_>>>()?;
        let failures = assertions.iter().filter(|a| !a.passed).count();
        Ok(CaseReport {
            id: self.id.clone(),
            title: self.title.clone(),
            passed: failures == 0,
            assertion_count: assertions.len(),
            failures,
            assertions,
        })
    }

    fn check(&self, index: usize, a: &AssertionDoc) -> Result<AssertionResult> {
        let mut names: Vec<&str> = a.group_elements();
        if let AssertionDoc::ProductSignature { g, form, .. } = a {
            names.push(g);
            names.push(form);
        }
        let matrices = names
            .iter()
            .map(|&n| Ok((n.to_string(), self.matrix(n)?.to_string())))
            .collect::<Result<BTreeMap<_, _>>>()?;

        let mut outside = Vec::new();
        for name in a.group_elements() {
            if !self.in_group(self.matrix(name)?)? {
                outside.push(name);
            }
        }
        let (passed, detail) = if !outside.is_empty() {
            (
                false,
                format!("not in the ambient group: {}", outside.join(", ")),
            )
        } else {
            self.evaluate(a)?
        };
        Ok(AssertionResult {
            index,
            kind: a.kind(),
            claim: a.claim().to_string(),
            passed,
            detail,
            matrices,
        })
    }

    fn evaluate(&self, a: &AssertionDoc) -> Result<(bool, String)> {
        let inv = &self.involution;
        let m = |n: &str| self.matrix(n);
        Ok(match a {
            AssertionDoc::Cocycle { g, .. } => {
                let prod = m(g)?.mul(&inv.apply(m(g)?)?)?;
                (prod.is_identity(), format!("{g}·σ({g}) = {prod}"))
            }
            AssertionDoc::Connects { h, from, to, .. } => {
                let image = inv.apply(m(h)?)?.mul(m(from)?)?.mul(&m(h)?.inverse()?)?;
                let ok = connects(m(h)?, m(from)?, m(to)?, inv)?;
                (ok, format!("σ({h})·{from}·{h}⁻¹ = {image}"))
            }
            AssertionDoc::DisconnectedSampled {
                from, to, samples, ..
            } => {
                let mut hits = Vec::new();
                for s in samples {
                    if connects(m(s)?, m(from)?, m(to)?, inv)? {
                        hits.push(s.as_str());
                    }
                }
                if hits.is_empty() {
                    (
                        true,
                        format!(
                            "none of {} sampled elements connects {from} to {to}",
                            samples.len()
                        ),
                    )
                } else {
                    (false, format!("connected by {}", hits.join(", ")))
                }
            }
            AssertionDoc::StabilizerMember { h, g, .. }
            | AssertionDoc::StabilizerNonmember { h, g, .. } => {
                let member = in_twisted_stabilizer(m(h)?, m(g)?, inv)?;
                let want = matches!(a, AssertionDoc::StabilizerMember { .. });
                let lhs = inv.apply(m(h)?)?.mul(m(g)?)?;
                let rhs = m(g)?.mul(m(h)?)?;
                (
                    member == want,
                    format!("σ({h})·{g} = {lhs}, {g}·{h} = {rhs}"),
                )
            }
            AssertionDoc::InGroup { h, .. } => (true, format!("{h} lies in the ambient group")),
            AssertionDoc::ProductSignature {
                g, form, signature, ..
            } => {
                let prod = m(g)?.mul(m(form)?)?;
                match prod.sign_diagonal() {
                    Some(d) => {
                        let p = d.iter().filter(|&&s| s > 0).count();
                        let q = d.len() - p;
                        (
                            [p, q] == *signature,
                            format!("{g}·{form} = {prod} has signature ({p},{q})"),
                        )
                    }
                    None => (
                        false,
                        format!("{g}·{form} = {prod} is not a diagonal sign matrix"),
                    ),
                }
            }
        })
    }
}

pub fn load_case(id: &str) -> Result<WitnessCase> {
    let text = bundled_case(id).ok_or_else(|| Error::CaseNotFound(id.into()))?;
    WitnessCase::from_json(text)
}

pub fn run_case(id: &str) -> Result<CaseReport> {
    load_case(id)?.run()
}
