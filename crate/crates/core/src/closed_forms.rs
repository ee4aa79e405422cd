//! Exact evaluators for the closed-form invariants of the star prism family
//! and its rung-deleted members, plus the two asymptotic ratios.
//!
//! Two of the published case formulas for the kept-center family (the
//! Kirchhoff denominator and the spanning-tree exponent) and the deleted-rung
//! Wiener formula do not survive a brute-force check; the corrected versions
//! are the default, and the original statements stay available behind
//! [`Variant::Statement`] so the disagreement itself can be asserted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::fmt_rational;

/// Which printed form of a disputed formula to evaluate. `Corrected` follows
/// whatever the exact oracle confirms and is the default everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    Corrected,
    Statement,
}

impl Variant {
    pub fn tag(&self) -> &'static str {
        match self {
            Variant::Corrected => "corrected",
            Variant::Statement => "statement",
        }
    }
}

// Polynomial evaluation runs in i128; the cubic terms stay in range up to
// this bound, far past anything a graph or table could use.
const MAX_FORMULA_N: usize = 1_000_000_000_000;

fn check_n(n: usize) -> Result<i128> {
    if n < 2 {
        return Err(Error::InvalidParameter("formulas require n >= 2".into()));
    }
    if n > MAX_FORMULA_N {
        return Err(Error::InvalidParameter(format!(
            "n = {n} exceeds the formula evaluation bound {MAX_FORMULA_N}"
        )));
    }
    Ok(n as i128)
}

fn check_nr(n: usize, r: usize) -> Result<(i128, i128)> {
    let ni = check_n(n)?;
    if r > n - 1 {
        return Err(Error::InvalidParameter(format!("r = {r} outside 0..={}", n - 1)));
    }
    Ok((ni, r as i128))
}

fn ratio(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn pow3(exp: i128) -> BigRational {
    let magnitude = BigInt::from(3).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(magnitude)
    } else {
        BigRational::new(BigInt::one(), magnitude)
    }
}

fn expect_integer(value: BigRational, what: &str) -> Result<BigInt> {
    if !value.denom().is_one() {
        return Err(Error::Inconsistent(format!(
            "{what} is not an integer: {}",
            fmt_rational(&value)
        )));
    }
    Ok(value.numer().clone())
}

/// Kirchhoff index of the intact star prism: `(8n^3 + 3n^2 - 14n + 12) / (3n + 6)`.
pub fn kf_full(n: usize) -> Result<BigRational> {
    let n = check_n(n)?;
    Ok(ratio(8 * n * n * n + 3 * n * n - 14 * n + 12, 3 * n + 6))
}

/// Spanning trees of the intact star prism: `(n + 2) * 3^(n-2)`.
pub fn tau_full(n: usize) -> Result<BigInt> {
    let ni = check_n(n)?;
    let exponent = u32::try_from(n - 2)
        .map_err(|_| Error::InvalidParameter(format!("tree count for n = {n} is astronomically large")))?;
    Ok(BigInt::from(ni + 2) * BigInt::from(3).pow(exponent))
}

/// Multiplicative degree-Kirchhoff index of the intact star prism:
/// `(48n^3 + 25n^2 - 180n + 116) / (3n + 6)`.
pub fn kfstar_full(n: usize) -> Result<BigRational> {
    let n = check_n(n)?;
    Ok(ratio(48 * n * n * n + 25 * n * n - 180 * n + 116, 3 * n + 6))
}

/// Wiener index of the intact star prism: `5n^2 - 8n + 4`.
pub fn wiener_full(n: usize) -> Result<BigInt> {
    let n = check_n(n)?;
    Ok(BigInt::from(5 * n * n - 8 * n + 4))
}

/// Gutman index of the intact star prism: `33n^2 - 68n + 36`.
pub fn gutman_full(n: usize) -> Result<BigInt> {
    let n = check_n(n)?;
    Ok(BigInt::from(33 * n * n - 68 * n + 36))
}

/// Kirchhoff index of the prism with `r` rungs deleted. Depends only on `r`
/// and whether the deleted set includes the center rung.
///
/// Center rung cut: `(8n^3 - (4r+17)n^2 - (4r^2-26r-6)n - 6r) / (3(n-r))`.
/// Center rung kept: the same shape with the kept-center numerator over
/// `3(n-r+2)`; the statement variant divides by `3(n-r-2)` instead, which the
/// oracle rejects (and which vanishes outright at `r = n-2`).
pub fn kf_deleted(n: usize, r: usize, center_deleted: bool, variant: Variant) -> Result<BigRational> {
    let (ni, ri) = check_nr(n, r)?;
    if r == 0 {
        if center_deleted {
            return Err(Error::InvalidParameter("center rung cannot be deleted when r = 0".into()));
        }
        return kf_full(n);
    }
    if center_deleted {
        let numerator =
            8 * ni * ni * ni - (4 * ri + 17) * ni * ni - (4 * ri * ri - 26 * ri - 6) * ni - 6 * ri;
        Ok(ratio(numerator, 3 * (ni - ri)))
    } else {
        let numerator = 8 * ni * ni * ni - (4 * ri - 3) * ni * ni - (4 * ri * ri - 30 * ri + 14) * ni
            + 12
            - 6 * ri;
        let denominator = match variant {
            Variant::Corrected => 3 * (ni - ri + 2),
            Variant::Statement => 3 * (ni - ri - 2),
        };
        if denominator == 0 {
            return Err(Error::Inconsistent(
                "statement-variant denominator vanishes at r = n - 2".into(),
            ));
        }
        Ok(ratio(numerator, denominator))
    }
}

/// The explicit `r = 1`, center-cut form `(8n^3 - 21n^2 + 28n - 6) / (3(n-1))`;
/// must coincide with [`kf_deleted`] at `r = 1`.
pub fn kf_single_cut(n: usize) -> Result<BigRational> {
    let n = check_n(n)?;
    Ok(ratio(8 * n * n * n - 21 * n * n + 28 * n - 6, 3 * (n - 1)))
}

/// Spanning trees of the rung-deleted prism.
///
/// Center rung cut: `(n-r) * 3^(n-r-1)`. Center rung kept: the corrected
/// exponent gives `(n-r+2) * 3^(n-r-2)` (an integer even at `r = n-1`, where
/// the negative power divides the leading factor); the statement variant uses
/// `3^(n-r+2)`, which the oracle rejects.
pub fn tau_deleted(n: usize, r: usize, center_deleted: bool, variant: Variant) -> Result<BigInt> {
    let (ni, ri) = check_nr(n, r)?;
    if r == 0 {
        if center_deleted {
            return Err(Error::InvalidParameter("center rung cannot be deleted when r = 0".into()));
        }
        return tau_full(n);
    }
    let value = if center_deleted {
        BigRational::from_integer(BigInt::from(ni - ri)) * pow3(ni - ri - 1)
    } else {
        let exponent = match variant {
            Variant::Corrected => ni - ri - 2,
            Variant::Statement => ni - ri + 2,
        };
        BigRational::from_integer(BigInt::from(ni - ri + 2)) * pow3(exponent)
    };
    expect_integer(value, "spanning tree count")
}

/// Wiener index of the rung-deleted prism.
///
/// Cutting a leaf rung stretches only its own endpoint pair, so a kept
/// center gives `5n^2 - 8n + 4 + 2r`. Cutting the center rung also stretches
/// every pair of cut leaves through the detour over a surviving rung, giving
/// `5n^2 - 8n + 4 + 2r^2 + 2r - 2`. The published `5n^2 - 8n + r + 4` is kept
/// as the statement variant; the oracle rejects it from `n = 2, r = 1` up.
pub fn wiener_deleted(n: usize, r: usize, center_deleted: bool, variant: Variant) -> Result<BigInt> {
    let (ni, ri) = check_nr(n, r)?;
    if r == 0 {
        if center_deleted {
            return Err(Error::InvalidParameter("center rung cannot be deleted when r = 0".into()));
        }
        return wiener_full(n);
    }
    let base = 5 * ni * ni - 8 * ni + 4;
    let value = match (variant, center_deleted) {
        (Variant::Statement, _) => base + ri,
        (Variant::Corrected, false) => base + 2 * ri,
        (Variant::Corrected, true) => base + 2 * ri * ri + 2 * ri - 2,
    };
    Ok(BigInt::from(value))
}

/// Exact ratio `Kf / W` for a family member; converges to 8/15.
pub fn ratio_kf_wiener(n: usize, r: usize, center_deleted: bool) -> Result<BigRational> {
    let kf = kf_deleted(n, r, center_deleted, Variant::Corrected)?;
    let w = wiener_deleted(n, r, center_deleted, Variant::Corrected)?;
    if w.is_zero() {
        return Err(Error::Inconsistent("zero Wiener index".into()));
    }
    Ok(kf / BigRational::from_integer(w))
}

/// Exact ratio `Kf* / Gut` for the intact prism; converges to 16/33.
pub fn ratio_kfstar_gutman(n: usize) -> Result<BigRational> {
    let kfstar = kfstar_full(n)?;
    let gut = gutman_full(n)?;
    if gut.is_zero() {
        return Err(Error::Inconsistent("zero Gutman index".into()));
    }
    Ok(kfstar / BigRational::from_integer(gut))
}

/// One row of the formula table emitted by the sweep command. The normalized
/// indices only have closed forms for the intact prism, hence the options.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub n: usize,
    pub r: usize,
    pub center_deleted: bool,
    pub kf: BigRational,
    pub tau: BigInt,
    pub wiener: BigInt,
    pub kfstar: Option<BigRational>,
    pub gutman: Option<BigInt>,
    pub kf_over_w: BigRational,
}

pub const TABLE_CSV_HEADER: &str = "n,r,center_deleted,kf,tau,wiener,kfstar,gutman,kf_over_w";

impl TableRow {
    pub fn compute(n: usize, r: usize, center_deleted: bool, variant: Variant) -> Result<TableRow> {
        Ok(TableRow {
            n,
            r,
            center_deleted,
            kf: kf_deleted(n, r, center_deleted, variant)?,
            tau: tau_deleted(n, r, center_deleted, variant)?,
            wiener: wiener_deleted(n, r, center_deleted, variant)?,
            kfstar: if r == 0 { Some(kfstar_full(n)?) } else { None },
            gutman: if r == 0 { Some(gutman_full(n)?) } else { None },
            kf_over_w: ratio_kf_wiener(n, r, center_deleted)?,
        })
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.r,
            self.center_deleted,
            fmt_rational(&self.kf),
            self.tau,
            self.wiener,
            self.kfstar.as_ref().map(fmt_rational).unwrap_or_default(),
            self.gutman.as_ref().map(|g| g.to_string()).unwrap_or_default(),
            fmt_rational(&self.kf_over_w),
        )
    }
}
