use num::{One, Zero};

use super::state::SearchState;
use crate::oracle::cover_exists_at_level;
use crate::polycore::CappedView;
use crate::rational::{ceil_i64, floor_i64, qi, Rational};
use crate::subset::Subset;
use crate::Result;

/// Proof that no strong cover exists: see [`verify_certificate`] for the four properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub z1: Subset,
    pub z2: Subset,
}

/// Outcome of checking a certificate against the state it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    /// `Z_2 ⊆ Z_1 ⊆ E \ B_0`.
    pub well_formed: bool,
    /// `r(B_0 | Z_1) < 2ε|B_0|`.
    pub rank_gap: bool,
    /// `r(Z_1) <= |Z_1| - (1/2 - 2ε)|Z_2| + ε|B_0|`.
    pub low_rank: bool,
    /// `f(i | b·(Z_2 - i)) < b` for at least `(1 - ε)|Z_2|` elements of `Z_2`.
    pub small_margins: bool,
    /// `f(i | 2b·Z_2) < 2b` for every `i ∈ Z_1 \ Z_2`.
    pub saturated: bool,
    /// Smallest integer `α` for which the evaluated quantities rule out a cover at `αb` that puts
    /// at least `3ε|B_0|` elements of `B_0` into the matroid side.
    pub excluded_multiple: Option<i64>,
}

impl CertificateReport {
    pub fn all_properties(&self) -> bool {
        self.well_formed && self.rank_gap && self.low_rank && self.small_margins && self.saturated
    }
}

/// Quantities from which exclusion at a given `α` follows.
struct Exclusion {
    /// `r(B_0 ∪ Z_1) - |Z_1| + |Z'_2|`, with `Z'_2` the elements of `Z_2` of large margin.
    base: i64,
    /// `(f(Z_2 \ Z'_2) + 2b|Z'_2|) / b`.
    spill: Rational,
    /// Smallest number of `B_0` elements a strong cover must put in the matroid.
    hits: i64,
}

impl Exclusion {
    /// A cover at `α b` would put at most `base + ⌊spill/(α-2)⌋` elements of `B_0` in `I_M`.
    fn excludes(&self, alpha: &Rational) -> bool {
        let two = qi(2);
        if *alpha <= two {
            return false;
        }
        let room = if self.spill.is_zero() {
            0
        } else {
            floor_i64(&(&self.spill / (alpha - &two)))
        };
        self.base + room < self.hits
    }

    fn smallest_integer(&self) -> Option<i64> {
        // the bound only improves with α; beyond `spill + 2` the floor term is zero
        let limit = floor_i64(&self.spill) + 3;
        (3..=limit.max(3)).find(|&a| self.excludes(&qi(a)))
    }
}

/// `⌈3ε|B_0|⌉`, the number of `B_0` elements a strong cover places in the matroid.
pub fn required_hits(state: &SearchState) -> i64 {
    ceil_i64(&(qi(3) * &state.eps * Rational::from_integer(state.b0.len().into())))
}

fn exclusion(state: &SearchState, cert: &Certificate) -> Exclusion {
    let b = state.b;
    let large: Subset = cert
        .z2
        .iter()
        .filter(|&i| CappedView::new(&state.poly, b, cert.z2.without(i)).marginal_of(i) >= b)
        .collect();
    let core = cert.z2 - large;
    let spill = Rational::new((state.poly.eval(core) + 2 * b * large.len() as i64).into(), b.into());
    let base = state.matroid.rank(state.b0 | cert.z1) as i64 - cert.z1.len() as i64 + large.len() as i64;
    Exclusion {
        base,
        spill,
        hits: required_hits(state),
    }
}

/// Checks the four certificate properties by oracle evaluation.
pub fn verify_certificate(cert: &Certificate, state: &SearchState) -> CertificateReport {
    let b = state.b;
    let eps = &state.eps;
    let b0 = state.b0.len();
    let q = |k: usize| Rational::from_integer(k.into());
    let well_formed = cert.z2.is_subset(cert.z1) && cert.z1.is_subset(state.ground - state.b0);
    let rank_gap = q(state.rank_given(state.b0, cert.z1)) < qi(2) * eps * q(b0);
    let low_rank = q(state.matroid.rank(cert.z1))
        <= q(cert.z1.len()) - (Rational::new(1.into(), 2.into()) - qi(2) * eps) * q(cert.z2.len()) + eps * q(b0);
    let small = cert
        .z2
        .iter()
        .filter(|&i| CappedView::new(&state.poly, b, cert.z2.without(i)).marginal_of(i) < b)
        .count();
    let small_margins = q(small) >= (Rational::one() - eps) * q(cert.z2.len());
    let doubled = CappedView::new(&state.poly, 2 * b, cert.z2);
    let saturated = (cert.z1 - cert.z2).iter().all(|i| doubled.marginal_of(i) < 2 * b);
    let excluded_multiple = if well_formed && saturated {
        exclusion(state, cert).smallest_integer()
    } else {
        None
    };
    CertificateReport {
        well_formed,
        rank_gap,
        low_rank,
        small_margins,
        saturated,
        excluded_multiple,
    }
}

/// Whether the evaluated certificate rules out strong covers at `α b`.
pub fn certificate_excludes(cert: &Certificate, state: &SearchState, alpha: &Rational) -> bool {
    let report = verify_certificate(cert, state);
    report.well_formed && report.saturated && exclusion(state, cert).excludes(alpha)
}

/// `α` used for the exhaustive soundness check: `4 + 40ε`.
pub fn soundness_alpha(eps: &Rational) -> Rational {
    qi(4) + qi(40) * eps
}

/// Smallest `α` for which the four properties alone exclude strong covers:
/// `2 + (1 + 2ε)/(1/2 - 3ε)`, or `None` when `ε >= 1/6`.
pub fn property_alpha(eps: &Rational) -> Option<Rational> {
    let denom = Rational::new(1.into(), 2.into()) - qi(3) * eps;
    if denom <= Rational::zero() {
        return None;
    }
    Some(qi(2) + (Rational::one() + qi(2) * eps) / denom)
}

/// Exhaustively confirms that no independent `I*_M` and `I*_P` cover `E \ B_0` with
/// `α b · I*_P ∈ P` and `|B_0 ∩ I*_M| >= 3ε|B_0|`. Returns `true` when none exists.
pub fn exhaustive_soundness(state: &SearchState, alpha: &Rational) -> Result<bool> {
    let level = alpha * Rational::from_integer(state.b.into());
    let hits = required_hits(state).max(0) as usize;
    Ok(!cover_exists_at_level(
        &state.matroid,
        &state.poly,
        state.ground,
        &level,
        state.b0,
        hits,
    )?)
}

/// The small certificate `X ⊆ Y`: `f(X) <= b|X|`, `r(Y) < |Y| - |X|/2` and `f(i | X) <= b` on
/// `Y \ X`. No cover of `Y` at value `3b` exists when it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallCertificate {
    pub x: Subset,
    pub y: Subset,
}

pub fn verify_small_certificate(
    cert: &SmallCertificate,
    matroid: &crate::polycore::Matroid,
    poly: &crate::polycore::Polymatroid,
    b: i64,
) -> bool {
    let fx = poly.eval(cert.x);
    cert.x.is_subset(cert.y)
        && fx <= b * cert.x.len() as i64
        && 2 * matroid.rank(cert.y) < 2 * cert.y.len() - cert.x.len()
        && (cert.y - cert.x).iter().all(|i| poly.eval(cert.x.with(i)) - fx <= b)
}
