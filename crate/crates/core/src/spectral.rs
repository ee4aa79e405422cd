//! Laplacian and normalized Laplacian matrices, the mirror block split, and
//! spectra in both numeric and exact closed form.
//!
//! A graph whose vertex set splits into two halves swapped by an automorphism
//! has a Laplacian with equal diagonal blocks and equal off-diagonal blocks.
//! Conjugating by the orthogonal involution `T = (1/sqrt 2) [[I, I], [I, -I]]`
//! block-diagonalizes it into `M11 + M12` and `M11 - M12`, so the spectrum of
//! the whole matrix is the multiset union of the two half-size spectra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{FloatMatrix, RationalMatrix};
use crate::rational::{int, rat, rational_to_f64, RationalJson};

/// Laplacian `L = D - A` as an exact rational matrix.
pub fn laplacian(g: &Graph) -> RationalMatrix {
    let n = g.vertex_count();
    let mut m = RationalMatrix::zero(n);
    for v in 0..n {
        m[(v, v)] = int(g.degree(v) as i64);
    }
    for &(u, v) in g.edges() {
        m[(u, v)] = int(-1);
        m[(v, u)] = int(-1);
    }
    m
}

/// Normalized Laplacian. Off-diagonal entries are `-1/sqrt(d_i d_j)`, which
/// is only rational when every edge has a perfect-square degree product;
/// otherwise the matrix is handed out in floating form.
#[derive(Debug, Clone)]
pub enum NormalizedLaplacian {
    Exact(RationalMatrix),
    Floating(FloatMatrix),
}

impl NormalizedLaplacian {
    pub fn order(&self) -> usize {
        match self {
            NormalizedLaplacian::Exact(m) => m.order(),
            NormalizedLaplacian::Floating(m) => m.order(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, NormalizedLaplacian::Exact(_))
    }

    pub fn entry_f64(&self, i: usize, j: usize) -> f64 {
        match self {
            NormalizedLaplacian::Exact(m) => rational_to_f64(&m[(i, j)]),
            NormalizedLaplacian::Floating(m) => m.get(i, j),
        }
    }

    pub fn numeric_spectrum(&self, tol: f64) -> Result<Spectrum> {
        match self {
            NormalizedLaplacian::Exact(m) => numeric_spectrum(m, tol),
            NormalizedLaplacian::Floating(m) => numeric_spectrum_float(m, tol),
        }
    }
}

pub fn normalized_laplacian(g: &Graph) -> Result<NormalizedLaplacian> {
    let n = g.vertex_count();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let all_square = g.edges().iter().all(|&(u, v)| {
        let product = (g.degree(u) * g.degree(v)) as u64;
        let root = (product as f64).sqrt().round() as u64;
        root * root == product
    });
    if all_square {
        let mut m = RationalMatrix::identity(n);
        for &(u, v) in g.edges() {
            let product = (g.degree(u) * g.degree(v)) as u64;
            let root = (product as f64).sqrt().round() as i64;
            m[(u, v)] = rat(-1, root);
            m[(v, u)] = rat(-1, root);
        }
        Ok(NormalizedLaplacian::Exact(m))
    } else {
        let m = FloatMatrix::from_fn(n, |i, j| {
            if i == j {
                1.0
            } else if g.has_edge(i, j) {
                -1.0 / ((g.degree(i) * g.degree(j)) as f64).sqrt()
            } else {
                0.0
            }
        });
        Ok(NormalizedLaplacian::Floating(m))
    }
}

/// Involution pairing vertex `i` with `i + shift` on a `2 * shift` vertex
/// set: the index form of a swap-the-copies mirror symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MirrorPairing {
    shift: usize,
}

impl MirrorPairing {
    pub fn new(shift: usize) -> Self {
        MirrorPairing { shift }
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn order(&self) -> usize {
        2 * self.shift
    }

    pub fn partner(&self, v: usize) -> usize {
        if v < self.shift {
            v + self.shift
        } else {
            v - self.shift
        }
    }

    /// Whether swapping the two halves maps edges to edges.
    pub fn is_automorphism(&self, g: &Graph) -> bool {
        g.vertex_count() == self.order()
            && g.edges()
                .iter()
                .all(|&(u, v)| g.has_edge(self.partner(u), self.partner(v)))
    }
}

/// Split a mirror-symmetric matrix into the two half-size blocks
/// `(M11 + M12, M11 - M12)` whose spectra partition the spectrum of `M`.
///
/// The block symmetry (`M11 = M22` and `M12 = M21`) is verified, not
/// assumed; anything else is rejected.
pub fn mirror_split(
    m: &RationalMatrix,
    pairing: &MirrorPairing,
) -> Result<(RationalMatrix, RationalMatrix)> {
    let half = pairing.shift();
    if m.order() != 2 * half {
        return Err(Error::InvalidParameter(format!(
            "matrix order {} does not match pairing order {}",
            m.order(),
            2 * half
        )));
    }
    for i in 0..half {
        for j in 0..half {
            if m[(i, j)] != m[(half + i, half + j)] || m[(i, half + j)] != m[(half + i, j)] {
                return Err(Error::NotMirrorSymmetric);
            }
        }
    }
    let sum = RationalMatrix::from_fn(half, |i, j| &m[(i, j)] + &m[(i, half + j)]);
    let diff = RationalMatrix::from_fn(half, |i, j| &m[(i, j)] - &m[(i, half + j)]);
    Ok((sum, diff))
}

/// Monic cubic `x^3 - e1 x^2 + e2 x - e3` held by its elementary symmetric
/// functions, i.e. by Vieta's data for its three roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicFactor {
    e1: BigRational,
    e2: BigRational,
    e3: BigRational,
}

impl CubicFactor {
    pub fn new(e1: BigRational, e2: BigRational, e3: BigRational) -> Self {
        CubicFactor { e1, e2, e3 }
    }

    pub fn from_i64(e1: i64, e2: i64, e3: i64) -> Self {
        Self::new(int(e1), int(e2), int(e3))
    }

    /// Sum of the three roots.
    pub fn root_sum(&self) -> &BigRational {
        &self.e1
    }

    /// Sum of pairwise root products.
    pub fn pair_sum(&self) -> &BigRational {
        &self.e2
    }

    /// Product of the three roots.
    pub fn root_product(&self) -> &BigRational {
        &self.e3
    }

    /// `1/r1 + 1/r2 + 1/r3 = e2 / e3`, exactly, without extracting roots.
    pub fn reciprocal_sum(&self) -> Result<BigRational> {
        if self.e3.is_zero() {
            return Err(Error::SingularCubic);
        }
        Ok(&self.e2 / &self.e3)
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        ((x - &self.e1) * x + &self.e2) * x - &self.e3
    }

    /// Real roots in ascending order, numerically. The spectra handled here
    /// always have three real roots; a complex pair yields just the real one.
    pub fn real_roots(&self) -> Vec<f64> {
        let e1 = rational_to_f64(&self.e1);
        let e2 = rational_to_f64(&self.e2);
        let e3 = rational_to_f64(&self.e3);
        // Depress x^3 + a x^2 + b x + c with x = y - a/3.
        let a = -e1;
        let b = e2;
        let c = -e3;
        let p = b - a * a / 3.0;
        let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
        let shift = -a / 3.0;
        let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
        let mut roots = if p.abs() < 1e-12 && q.abs() < 1e-12 {
            vec![shift; 3]
        } else if disc <= 0.0 {
            let m = 2.0 * (-p / 3.0).sqrt();
            let phi = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos();
            (0..3)
                .map(|k| m * ((phi - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() + shift)
                .collect()
        } else {
            let s = disc.sqrt();
            let u = (-q / 2.0 + s).cbrt();
            let v = (-q / 2.0 - s).cbrt();
            vec![u + v + shift]
        };
        // A couple of Newton steps against the exact coefficients.
        for root in &mut roots {
            for _ in 0..3 {
                let f = ((*root - e1) * *root + e2) * *root - e3;
                let df = (3.0 * *root - 2.0 * e1) * *root + e2;
                if df.abs() > 1e-300 {
                    *root -= f / df;
                }
            }
        }
        roots.sort_by(|x, y| x.partial_cmp(y).expect("finite roots"));
        roots
    }
}

/// `e2 / e3` of a cubic factor: the reciprocal-root sum by Vieta.
pub fn vieta_reciprocal_sum(cubic: &CubicFactor) -> Result<BigRational> {
    cubic.reciprocal_sum()
}

/// Eigenvalue multiset. Exact spectra hold sorted `(value, multiplicity)`
/// pairs plus at most one cubic factor whose three roots are carried
/// symbolically; floating spectra hold sorted values and the comparison
/// tolerance they were produced under.
#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum {
    Exact {
        entries: Vec<(BigRational, usize)>,
        cubic: Option<CubicFactor>,
    },
    Floating {
        values: Vec<f64>,
        tol: f64,
    },
}

impl Spectrum {
    pub fn exact(entries: impl IntoIterator<Item = (BigRational, usize)>, cubic: Option<CubicFactor>) -> Self {
        let mut merged: Vec<(BigRational, usize)> = Vec::new();
        let mut entries: Vec<(BigRational, usize)> =
            entries.into_iter().filter(|(_, m)| *m > 0).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for (value, mult) in entries {
            match merged.last_mut() {
                Some((last, m)) if *last == value => *m += mult,
                _ => merged.push((value, mult)),
            }
        }
        Spectrum::Exact {
            entries: merged,
            cubic,
        }
    }

    pub fn floating(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
        Spectrum::Floating { values, tol }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Spectrum::Exact { .. })
    }

    /// Total eigenvalue count, multiplicities included.
    pub fn order(&self) -> usize {
        match self {
            Spectrum::Exact { entries, cubic } => {
                entries.iter().map(|(_, m)| m).sum::<usize>() + if cubic.is_some() { 3 } else { 0 }
            }
            Spectrum::Floating { values, .. } => values.len(),
        }
    }

    pub fn cubic(&self) -> Option<&CubicFactor> {
        match self {
            Spectrum::Exact { cubic, .. } => cubic.as_ref(),
            Spectrum::Floating { .. } => None,
        }
    }

    /// Multiplicity of the eigenvalue zero among the exact rational entries.
    pub fn exact_zero_multiplicity(&self) -> Option<usize> {
        match self {
            Spectrum::Exact { entries, .. } => Some(
                entries
                    .iter()
                    .filter(|(v, _)| v.is_zero())
                    .map(|(_, m)| *m)
                    .sum(),
            ),
            Spectrum::Floating { .. } => None,
        }
    }

    /// Exact eigenvalue sum (trace of the underlying matrix).
    pub fn exact_sum(&self) -> Option<BigRational> {
        match self {
            Spectrum::Exact { entries, cubic } => {
                let mut total: BigRational = entries
                    .iter()
                    .map(|(v, m)| v * BigRational::from_integer(BigInt::from(*m)))
                    .sum();
                if let Some(c) = cubic {
                    total += c.root_sum();
                }
                Some(total)
            }
            Spectrum::Floating { .. } => None,
        }
    }

    /// All eigenvalues as sorted floats, cubic roots included.
    pub fn to_floats(&self) -> Vec<f64> {
        match self {
            Spectrum::Exact { entries, cubic } => {
                let mut values = Vec::with_capacity(self.order());
                for (v, m) in entries {
                    let x = rational_to_f64(v);
                    values.extend(std::iter::repeat_n(x, *m));
                }
                if let Some(c) = cubic {
                    values.extend(c.real_roots());
                }
                values.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
                values
            }
            Spectrum::Floating { values, .. } => values.clone(),
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            Spectrum::Exact { .. } => 0.0,
            Spectrum::Floating { tol, .. } => *tol,
        }
    }

    pub fn to_json(&self) -> Result<SpectrumJson> {
        match self {
            Spectrum::Exact { entries, cubic } => {
                let mut exact = Vec::with_capacity(entries.len());
                for (v, m) in entries {
                    let num = v.numer().to_i64().ok_or_else(|| {
                        Error::Malformed("spectrum entry numerator exceeds i64".into())
                    })?;
                    let den = v.denom().to_i64().ok_or_else(|| {
                        Error::Malformed("spectrum entry denominator exceeds i64".into())
                    })?;
                    exact.push((num, den, *m));
                }
                Ok(SpectrumJson {
                    exact,
                    cubic: cubic.as_ref().map(|c| CubicJson {
                        e1: RationalJson::from(&c.e1),
                        e2: RationalJson::from(&c.e2),
                        e3: RationalJson::from(&c.e3),
                    }),
                    floating: None,
                })
            }
            Spectrum::Floating { values, .. } => Ok(SpectrumJson {
                exact: Vec::new(),
                cubic: None,
                floating: Some(values.clone()),
            }),
        }
    }

    pub fn from_json(json: &SpectrumJson, tol: f64) -> Result<Spectrum> {
        if let Some(values) = &json.floating {
            return Ok(Spectrum::floating(values.clone(), tol));
        }
        let entries = json
            .exact
            .iter()
            .map(|&(num, den, mult)| {
                if den == 0 {
                    return Err(Error::Malformed("zero denominator in spectrum".into()));
                }
                Ok((rat(num, den), mult))
            })
            .collect::<Result<Vec<_>>>()?;
        let cubic = match &json.cubic {
            None => None,
            Some(c) => Some(CubicFactor::new(
                BigRational::try_from(&c.e1)?,
                BigRational::try_from(&c.e2)?,
                BigRational::try_from(&c.e3)?,
            )),
        };
        Ok(Spectrum::exact(entries, cubic))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CubicJson {
    pub e1: RationalJson,
    pub e2: RationalJson,
    pub e3: RationalJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub exact: Vec<(i64, i64, usize)>,
    pub cubic: Option<CubicJson>,
    pub floating: Option<Vec<f64>>,
}

/// Floating eigenvalues of an exact symmetric matrix.
pub fn numeric_spectrum(m: &RationalMatrix, tol: f64) -> Result<Spectrum> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let values = m.to_float().symmetric_eigenvalues()?;
    Ok(Spectrum::floating(values, tol))
}

/// Floating eigenvalues of a floating symmetric matrix.
pub fn numeric_spectrum_float(m: &FloatMatrix, tol: f64) -> Result<Spectrum> {
    let values = m.symmetric_eigenvalues()?;
    Ok(Spectrum::floating(values, tol))
}

/// Closed-form spectra for the star prism family.
pub mod analytic {
    use super::*;

    fn check_n(n: usize) -> Result<i64> {
        if n < 2 {
            return Err(Error::InvalidParameter("family spectra require n >= 2".into()));
        }
        Ok(n as i64)
    }

    /// Laplacian spectrum of the intact star prism on `2n` vertices:
    /// `{0, 1^(n-2), 2, 3^(n-2), n, n+2}`.
    pub fn star_prism_laplacian(n: usize) -> Result<Spectrum> {
        let ni = check_n(n)?;
        let spectrum = Spectrum::exact(
            [
                (int(0), 1),
                (int(1), n - 2),
                (int(2), 1),
                (int(3), n - 2),
                (int(ni), 1),
                (int(ni + 2), 1),
            ],
            None,
        );
        debug_assert_eq!(spectrum.order(), 2 * n);
        Ok(spectrum)
    }

    /// Normalized Laplacian spectrum of the intact star prism:
    /// `{0, (1/2)^(n-2), (n+2)/2n, (3n-2)/2n, (3/2)^(n-2), 2}`.
    pub fn star_prism_normalized(n: usize) -> Result<Spectrum> {
        let ni = check_n(n)?;
        let spectrum = Spectrum::exact(
            [
                (int(0), 1),
                (rat(1, 2), n - 2),
                (rat(ni + 2, 2 * ni), 1),
                (rat(3 * ni - 2, 2 * ni), 1),
                (rat(3, 2), n - 2),
                (int(2), 1),
            ],
            None,
        );
        debug_assert_eq!(spectrum.order(), 2 * n);
        Ok(spectrum)
    }

    /// Laplacian spectrum of a star prism with `r >= 1` rungs deleted. The
    /// result depends only on `r` and on whether the center rung was cut.
    ///
    /// With the center rung deleted the spectrum is
    /// `{0, 1^(n+r-4), n, 3^(n-r-1)}` plus the roots of
    /// `x^3 - (n+3) x^2 + 3n x - (2n-2r)`; with the center rung kept it is
    /// `{0, 1^(n+r-3), n, 3^(n-r-2)}` plus the roots of
    /// `x^3 - (n+5) x^2 + (3n+8) x - (2n-2r+4)`.
    ///
    /// When an exponent would be negative (only `n = 2, r = 1` for the cut
    /// center, and `r = n - 1` for the kept center) the matching cubic root
    /// cancels it; those boundary spectra are returned in floating form.
    pub fn rung_deleted_laplacian(n: usize, r: usize, center_deleted: bool) -> Result<Spectrum> {
        let ni = check_n(n)?;
        if r == 0 {
            if center_deleted {
                return Err(Error::InvalidParameter(
                    "center rung cannot be deleted when r = 0".into(),
                ));
            }
            return star_prism_laplacian(n);
        }
        if r > n - 1 {
            return Err(Error::InvalidParameter(format!(
                "r = {r} outside 1..={}",
                n - 1
            )));
        }
        let ri = r as i64;
        let (ones, threes, cubic) = if center_deleted {
            (
                ni + ri - 4,
                ni - ri - 1,
                CubicFactor::from_i64(ni + 3, 3 * ni, 2 * ni - 2 * ri),
            )
        } else {
            (
                ni + ri - 3,
                ni - ri - 2,
                CubicFactor::from_i64(ni + 5, 3 * ni + 8, 2 * ni - 2 * ri + 4),
            )
        };

        if ones >= 0 && threes >= 0 {
            let spectrum = Spectrum::exact(
                [
                    (int(0), 1),
                    (int(1), ones as usize),
                    (int(ni), 1),
                    (int(3), threes as usize),
                ],
                Some(cubic),
            );
            debug_assert_eq!(spectrum.order(), 2 * n);
            return Ok(spectrum);
        }

        // Boundary case: a unit-multiplicity deficit at 1 or 3 is cancelled
        // by the cubic root sitting at exactly that value.
        let mut values = vec![0.0];
        values.extend(std::iter::repeat_n(1.0, ones.max(0) as usize));
        values.push(ni as f64);
        values.extend(std::iter::repeat_n(3.0, threes.max(0) as usize));
        let mut roots = cubic.real_roots();
        if roots.len() != 3 {
            return Err(Error::Inconsistent("cubic factor lost a real root".into()));
        }
        for (cancel, deficit) in [(1.0, ones), (3.0, threes)] {
            for _ in deficit..0 {
                let (idx, _) = roots
                    .iter()
                    .enumerate()
                    .min_by(|(_, a), (_, b)| {
                        (*a - cancel)
                            .abs()
                            .partial_cmp(&(*b - cancel).abs())
                            .expect("finite")
                    })
                    .ok_or_else(|| Error::Inconsistent("no cubic root left to cancel".into()))?;
                let root = roots.remove(idx);
                if (root - cancel).abs() > 1e-6 {
                    return Err(Error::Inconsistent(format!(
                        "expected cubic root at {cancel}, found {root}"
                    )));
                }
            }
        }
        values.extend(roots);
        if values.len() != 2 * n {
            return Err(Error::Inconsistent(format!(
                "boundary spectrum has {} eigenvalues, expected {}",
                values.len(),
                2 * n
            )));
        }
        Ok(Spectrum::floating(values, 1e-9))
    }
}
