//! `H^k(BK; F₂)` for small finite groups through the normalized bar complex,
//! and the mod-2 cohomology of the real realization of `BG` assembled over
//! its components.
//!
//! A normalized `k`-cochain is a function on `k`-tuples of non-identity
//! elements, so `dim C^k = (|K| − 1)^k`. The differential is stored
//! transposed as packed bit rows (one row per basis cochain of `C^k`), and
//! ranks are computed by XOR elimination.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{describe, h1};
use crate::group::FiniteGroup;

/// Highest degree accepted by [`cohomology_dims`].
pub const MAX_DEGREE: usize = 6;

/// Size limits for the bar complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyLimits {
    /// Largest group order accepted when the top degree is at least 4.
    pub order_cap_high_degree: usize,
    /// Largest group order accepted when the top degree is at most 3.
    pub order_cap_low_degree: usize,
    pub max_degree: usize,
    /// Bytes available for the packed differentials of one group.
    pub memory_budget: usize,
}

impl Default for CohomologyLimits {
    fn default() -> Self {
        CohomologyLimits {
            order_cap_high_degree: 24,
            order_cap_low_degree: 64,
            max_degree: MAX_DEGREE,
            memory_budget: 1 << 30,
        }
    }
}

impl CohomologyLimits {
    /// The same limits with both order caps replaced.
    pub fn with_order_cap(self, cap: usize) -> Self {
        CohomologyLimits {
            order_cap_high_degree: cap,
            order_cap_low_degree: cap,
            ..self
        }
    }

    fn order_cap(&self, kmax: usize) -> usize {
        if kmax >= 4 {
            self.order_cap_high_degree
        } else {
            self.order_cap_low_degree
        }
    }
}

/// Dense matrix over `F₂` with rows packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    /// Bytes needed for a `rows × cols` matrix.
    pub fn footprint(rows: usize, cols: usize) -> Option<usize> {
        rows.checked_mul(cols.div_ceil(64))?.checked_mul(8)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.bits[r * self.words_per_row + c / 64] ^= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Column indices of the set bits of row `r`.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.row(r).iter().enumerate() {
            let mut x = word;
            while x != 0 {
                out.push(w * 64 + x.trailing_zeros() as usize);
                x &= x - 1;
            }
        }
        out
    }

    /// `self · other` over `F₂`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let w = out.words_per_row;
        out.bits
            .par_chunks_mut(w.max(1))
            .enumerate()
            .for_each(|(r, dst)| {
                if w == 0 {
                    return;
                }
                for k in self.row_support(r) {
                    for (d, s) in dst.iter_mut().zip(other.row(k)) {
                        *d ^= s;
                    }
                }
            });
        Ok(out)
    }

    /// Rank by Gaussian elimination, consuming the matrix.
    pub fn rank(mut self) -> usize {
        let w = self.words_per_row;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..self.rows).find(|&r| self.bits[r * w + word] & bit != 0) else {
                continue;
            };
            if p != rank {
                for i in word..w {
                    self.bits.swap(p * w + i, rank * w + i);
                }
            }
            let (head, tail) = self.bits.split_at_mut((rank + 1) * w);
            let pivot = &head[rank * w + word..];
            tail.par_chunks_mut(w).for_each(|row| {
                if row[word] & bit != 0 {
                    for (d, s) in row[word..].iter_mut().zip(pivot) {
                        *d ^= s;
                    }
                }
            });
            rank += 1;
        }
        rank
    }
}

/// Degree-`k` normalized cochains together with the transposed differential
/// `d_k : C^k → C^{k+1}` (row `t` holds the coefficients of `d δ_t`).
#[derive(Clone, Debug)]
pub struct CochainLayer {
    pub degree: usize,
    pub dimension: usize,
    pub differential: BitMatrix,
}

fn pow(base: usize, exp: usize) -> Option<usize> {
    base.checked_pow(exp as u32)
}

impl CochainLayer {
    pub fn build(k: &FiniteGroup, degree: usize) -> Result<Self> {
        let m = k.order() - 1;
        let too_big = || {
            Error::CapExceeded(format!(
                "cochains of degree {} on a group of order {}",
                degree + 1,
                m + 1
            ))
        };
        let dim = pow(m, degree).ok_or_else(too_big)?;
        let next = pow(m, degree + 1).ok_or_else(too_big)?;
        let mut d = BitMatrix::zeros(dim, next);
        // digit j ↔ group element j + 1 (the identity is element 0)
        let mut digits = vec![0usize; degree + 1];
        let encode = |ds: &mut dyn Iterator<Item = usize>| ds.fold(0usize, |acc, x| acc * m + x);
        for s in 0..next {
            let mut rest = s;
            for slot in digits.iter_mut().rev() {
                *slot = rest % m;
                rest /= m;
            }
            // first face: drop g₁; last face: drop g_{k+1}
            d.toggle(encode(&mut digits[1..].iter().copied()), s);
            d.toggle(encode(&mut digits[..degree].iter().copied()), s);
            for i in 0..degree {
                let prod = k.mul(digits[i] + 1, digits[i + 1] + 1);
                if prod == k.identity() {
                    continue;
                }
                let mut face = digits[..i]
                    .iter()
                    .copied()
                    .chain(std::iter::once(prod - 1))
                    .chain(digits[i + 2..].iter().copied());
                d.toggle(encode(&mut face), s);
            }
        }
        Ok(CochainLayer {
            degree,
            dimension: dim,
            differential: d,
        })
    }
}

/// Per-degree dimensions of `H^*(BK; F₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct F2CohomologyProfile {
    pub label: String,
    pub order: usize,
    pub dims: Vec<usize>,
    /// Whether `d_{k+1} ∘ d_k = 0` held for every pair of built layers.
    pub d_squared_zero: bool,
}

/// Bytes of packed differentials needed for degrees `0..=kmax`.
pub fn memory_estimate(order: usize, kmax: usize) -> Option<usize> {
    let m = order.checked_sub(1)?;
    (0..=kmax).try_fold(0usize, |acc, k| {
        acc.checked_add(BitMatrix::footprint(pow(m, k)?, pow(m, k + 1)?)?)
    })
}

fn check_limits(k: &FiniteGroup, kmax: usize, limits: &CohomologyLimits) -> Result<()> {
    if kmax > limits.max_degree {
        return Err(Error::CapExceeded(format!(
            "degree {kmax} exceeds the degree cap {}",
            limits.max_degree
        )));
    }
    let cap = limits.order_cap(kmax);
    if k.order() > cap {
        return Err(Error::CapExceeded(format!(
            "group order {} exceeds the cap {cap} for degree {kmax}",
            k.order()
        )));
    }
    match memory_estimate(k.order(), kmax) {
        Some(bytes) if bytes <= limits.memory_budget => {
            if bytes > 1 << 24 {
                log::info!(
                    "bar complex for order {} up to degree {kmax}: about {} MiB",
                    k.order(),
                    bytes >> 20
                );
            }
            Ok(())
        }
        estimate => Err(Error::CapExceeded(format!(
            "bar complex for order {} up to degree {kmax} needs {} bytes, budget is {}",
            k.order(),
            estimate.map_or_else(|| "more than usize::MAX".to_string(), |b| b.to_string()),
            limits.memory_budget
        ))),
    }
}

pub fn cohomology_dims(k: &FiniteGroup, kmax: usize) -> Result<F2CohomologyProfile> {
    cohomology_dims_with(k, kmax, &CohomologyLimits::default())
}

pub fn cohomology_dims_with(
    k: &FiniteGroup,
    kmax: usize,
    limits: &CohomologyLimits,
) -> Result<F2CohomologyProfile> {
    check_limits(k, kmax, limits)?;
    let label = describe(k, &k.elements().collect::<Vec<_>>())
        .unwrap_or_else(|| format!("order {}", k.order()));
    if k.order() == 1 {
        let mut dims = vec![0; kmax + 1];
        dims[0] = 1;
        return Ok(F2CohomologyProfile {
            label,
            order: 1,
            dims,
            d_squared_zero: true,
        });
    }
    let layers = (0..=kmax)
        .into_par_iter()
        .map(|d| CochainLayer::build(k, d))
        .collect::<Result<Vec<_>>>()?;
    let d_squared_zero = layers.windows(2).all(|w| {
        w[0].differential
            .mul(&w[1].differential)
            .map(|p| p.is_zero())
            .unwrap_or(false)
    });
    let dimensions: Vec<usize> = layers.iter().map(|l| l.dimension).collect();
    let ranks: Vec<usize> = layers.into_iter().map(|l| l.differential.rank()).collect();
    let dims = (0..=kmax)
        .map(|d| dimensions[d] - ranks[d] - if d > 0 { ranks[d - 1] } else { 0 })
        .collect();
    Ok(F2CohomologyProfile {
        label,
        order: k.order(),
        dims,
        d_squared_zero,
    })
}

/// One component of the real realization and its cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCohomology {
    pub representative: usize,
    pub representative_label: String,
    pub stabilizer_order: usize,
    pub profile: F2CohomologyProfile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationCohomology {
    pub group_order: usize,
    pub max_degree: usize,
    pub components: Vec<ComponentCohomology>,
    /// `dims[k] = Σ` over components of `dim H^k(BK_g; F₂)`.
    pub dims: Vec<usize>,
}

pub fn realization_cohomology(g: &FiniteGroup, kmax: usize) -> Result<RealizationCohomology> {
    realization_cohomology_with(g, kmax, &CohomologyLimits::default())
}

pub fn realization_cohomology_with(
    g: &FiniteGroup,
    kmax: usize,
    limits: &CohomologyLimits,
) -> Result<RealizationCohomology> {
    let report = h1(g);
    let components = report
        .classes
        .par_iter()
        .map(|class| {
            let k = class.stabilizer.to_group(g);
            let profile = cohomology_dims_with(&k, kmax, limits).map_err(|e| match e {
                Error::CapExceeded(msg) => Error::CapExceeded(format!(
                    "stabilizer of the component of {} (order {}): {msg}",
                    g.label(class.representative),
                    class.stabilizer_order
                )),
                other => other,
            })?;
            Ok(ComponentCohomology {
                representative: class.representative,
                representative_label: g.label(class.representative).to_string(),
                stabilizer_order: class.stabilizer_order,
                profile,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let dims = (0..=kmax)
        .map(|d| components.iter().map(|c| c.profile.dims[d]).sum())
        .collect();
    Ok(RealizationCohomology {
        group_order: g.order(),
        max_degree: kmax,
        components,
        dims,
    })
}
