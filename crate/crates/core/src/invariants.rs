//! The brute-force oracle: effective resistances, Kirchhoff indices, spanning
//! tree counts, and distance-based indices computed from first principles in
//! exact arithmetic, plus the spectrum-based routes to the same quantities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{bareiss_determinant, FloatMatrix, RationalMatrix};
use crate::rational::{big, int, Scalar};
use crate::spectral::Spectrum;

/// Exact effective resistances between all vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistanceMatrix {
    inner: RationalMatrix,
}

impl ResistanceMatrix {
    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.inner[(i, j)]
    }

    /// Sum over unordered pairs of `weight(i, j) * r_ij`.
    fn weighted_pair_sum(&self, mut weight: impl FnMut(usize, usize) -> BigRational) -> BigRational {
        let n = self.order();
        let mut total = BigRational::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                total += weight(i, j) * self.entry(i, j);
            }
        }
        total
    }
}

/// Resistance matrix via the grounded Laplacian: delete the row and column of
/// a reference vertex, invert exactly, and read resistances off the inverse.
pub fn resistance_matrix(g: &Graph) -> Result<ResistanceMatrix> {
    resistance_matrix_grounded(g, g.vertex_count().saturating_sub(1))
}

/// Grounded route with an explicit reference vertex.
pub fn resistance_matrix_grounded(g: &Graph, ground: usize) -> Result<ResistanceMatrix> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if ground >= n {
        return Err(Error::InvalidParameter(format!("ground vertex {ground} out of range")));
    }
    let keep: Vec<usize> = (0..n).filter(|&v| v != ground).collect();
    let lap = crate::spectral::laplacian(g);
    let grounded = lap.principal_submatrix(&keep);
    let inv = grounded.inverse()?;
    // Position of vertex v inside `keep`.
    let pos = |v: usize| if v < ground { v } else { v - 1 };
    let inner = RationalMatrix::from_fn(n, |i, j| {
        if i == j {
            BigRational::zero()
        } else if i == ground {
            inv[(pos(j), pos(j))].clone()
        } else if j == ground {
            inv[(pos(i), pos(i))].clone()
        } else {
            &inv[(pos(i), pos(i))] + &inv[(pos(j), pos(j))] - &inv[(pos(i), pos(j))] - &inv[(pos(i), pos(j))]
        }
    });
    Ok(ResistanceMatrix { inner })
}

/// Independent route: the Moore-Penrose pseudoinverse of the Laplacian via
/// `(L + J/n)^{-1} - J/n`, then `r_ij = g_ii + g_jj - 2 g_ij`.
pub fn resistance_matrix_pseudoinverse(g: &Graph) -> Result<ResistanceMatrix> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let ninv = BigRational::new(BigInt::one(), BigInt::from(n as u64));
    let lap = crate::spectral::laplacian(g);
    let shifted = RationalMatrix::from_fn(n, |i, j| &lap[(i, j)] + &ninv);
    let pinv_shifted = shifted.inverse()?;
    let pinv = RationalMatrix::from_fn(n, |i, j| &pinv_shifted[(i, j)] - &ninv);
    let inner = RationalMatrix::from_fn(n, |i, j| {
        if i == j {
            BigRational::zero()
        } else {
            &pinv[(i, i)] + &pinv[(j, j)] - &pinv[(i, j)] - &pinv[(i, j)]
        }
    });
    Ok(ResistanceMatrix { inner })
}

/// Kirchhoff index: sum of effective resistances over unordered pairs.
pub fn kirchhoff_index(g: &Graph) -> Result<BigRational> {
    Ok(resistance_matrix(g)?.weighted_pair_sum(|_, _| BigRational::one()))
}

/// Multiplicative degree-Kirchhoff index: resistances weighted by the product
/// of endpoint degrees.
pub fn mult_deg_kirchhoff_index(g: &Graph) -> Result<BigRational> {
    let r = resistance_matrix(g)?;
    Ok(r.weighted_pair_sum(|i, j| int((g.degree(i) * g.degree(j)) as i64)))
}

/// Spanning tree count via the matrix-tree theorem: determinant of the
/// Laplacian with one row and column removed, fraction-free. Returns zero for
/// disconnected input.
pub fn spanning_trees(g: &Graph) -> BigInt {
    spanning_trees_grounded(g, 0)
}

/// Matrix-tree determinant with an explicit removed row/column; the result is
/// independent of the choice.
pub fn spanning_trees_grounded(g: &Graph, removed: usize) -> BigInt {
    let n = g.vertex_count();
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::one();
    }
    let removed = removed.min(n - 1);
    let keep: Vec<usize> = (0..n).filter(|&v| v != removed).collect();
    let mut data = Vec::with_capacity((n - 1) * (n - 1));
    for &i in &keep {
        for &j in &keep {
            data.push(if i == j {
                BigInt::from(g.degree(i) as u64)
            } else if g.has_edge(i, j) {
                BigInt::from(-1)
            } else {
                BigInt::zero()
            });
        }
    }
    bareiss_determinant(n - 1, data)
}

/// Wiener index: sum of shortest-path distances over unordered pairs.
pub fn wiener_index(g: &Graph) -> Result<BigInt> {
    let dist = g.distance_matrix()?;
    let n = g.vertex_count();
    let mut total = BigInt::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            total += BigInt::from(dist[i][j] as u64);
        }
    }
    Ok(total)
}

/// Gutman index: distances weighted by the product of endpoint degrees.
pub fn gutman_index(g: &Graph) -> Result<BigInt> {
    let dist = g.distance_matrix()?;
    let n = g.vertex_count();
    let mut total = BigInt::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            total += BigInt::from((g.degree(i) * g.degree(j) * dist[i][j]) as u64);
        }
    }
    Ok(total)
}

fn exact_reciprocal_sum(entries: &[(BigRational, usize)]) -> BigRational {
    entries
        .iter()
        .filter(|(v, _)| !v.is_zero())
        .map(|(v, m)| big(BigInt::from(*m)) / v)
        .sum()
}

fn exact_nonzero_product(entries: &[(BigRational, usize)]) -> BigRational {
    let mut product = BigRational::one();
    for (v, m) in entries {
        if v.is_zero() {
            continue;
        }
        for _ in 0..*m {
            product *= v;
        }
    }
    product
}

/// Split floating eigenvalues into (zeros, nonzeros) under a relative cut.
fn split_floating(values: &[f64], tol: f64) -> (usize, Vec<f64>) {
    let scale = values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let cut = tol.max(1e-12) * scale;
    let zeros = values.iter().filter(|v| v.abs() <= cut).count();
    let nonzeros = values.iter().copied().filter(|v| v.abs() > cut).collect();
    (zeros, nonzeros)
}

/// Kirchhoff index from a Laplacian spectrum: the vertex count times the sum
/// of reciprocals of the nonzero eigenvalues. A cubic factor contributes its
/// reciprocal-root sum by Vieta, so the exact path never extracts roots.
pub fn kf_from_spectrum(spectrum: &Spectrum, n_vertices: usize) -> Result<Scalar> {
    match spectrum {
        Spectrum::Exact { entries, cubic } => {
            let zeros = spectrum.exact_zero_multiplicity().unwrap_or(0);
            if zeros != 1 {
                return Err(Error::NotConnectedSpectrum(zeros));
            }
            let mut sum = exact_reciprocal_sum(entries);
            if let Some(c) = cubic {
                sum += c.reciprocal_sum()?;
            }
            Ok(Scalar::Exact(sum * int(n_vertices as i64)))
        }
        Spectrum::Floating { values, tol } => {
            let (zeros, nonzeros) = split_floating(values, *tol);
            if zeros != 1 {
                return Err(Error::NotConnectedSpectrum(zeros));
            }
            let sum: f64 = nonzeros.iter().map(|v| 1.0 / v).sum();
            Ok(Scalar::Float(sum * n_vertices as f64))
        }
    }
}

/// Multiplicative degree-Kirchhoff index from a normalized Laplacian
/// spectrum: `2m` times the reciprocal sum of the nonzero eigenvalues.
pub fn kfstar_from_spectrum(spectrum: &Spectrum, m_edges: usize) -> Result<Scalar> {
    match spectrum {
        Spectrum::Exact { entries, cubic } => {
            let zeros = spectrum.exact_zero_multiplicity().unwrap_or(0);
            if zeros != 1 {
                return Err(Error::NotConnectedSpectrum(zeros));
            }
            let mut sum = exact_reciprocal_sum(entries);
            if let Some(c) = cubic {
                sum += c.reciprocal_sum()?;
            }
            Ok(Scalar::Exact(sum * int(2 * m_edges as i64)))
        }
        Spectrum::Floating { values, tol } => {
            let (zeros, nonzeros) = split_floating(values, *tol);
            if zeros != 1 {
                return Err(Error::NotConnectedSpectrum(zeros));
            }
            let sum: f64 = nonzeros.iter().map(|v| 1.0 / v).sum();
            Ok(Scalar::Float(sum * 2.0 * m_edges as f64))
        }
    }
}

/// Spanning tree count from a Laplacian spectrum: the product of nonzero
/// eigenvalues over the vertex count. Exact inputs must yield an integer.
pub fn tau_from_spectrum(spectrum: &Spectrum, n_vertices: usize) -> Result<Scalar> {
    match spectrum {
        Spectrum::Exact { entries, cubic } => {
            let zeros = spectrum.exact_zero_multiplicity().unwrap_or(0);
            if zeros != 1 {
                return Err(Error::NotConnectedSpectrum(zeros));
            }
            let mut product = exact_nonzero_product(entries);
            if let Some(c) = cubic {
                if c.root_product().is_zero() {
                    return Err(Error::SingularCubic);
                }
                product *= c.root_product();
            }
            let tau = product / int(n_vertices as i64);
            if !tau.denom().is_one() || tau.is_negative() {
                return Err(Error::Inconsistent(format!(
                    "eigenvalue product over order is not a nonnegative integer: {tau}"
                )));
            }
            Ok(Scalar::Exact(tau))
        }
        Spectrum::Floating { values, tol } => {
            let (zeros, nonzeros) = split_floating(values, *tol);
            if zeros != 1 {
                return Err(Error::NotConnectedSpectrum(zeros));
            }
            let product: f64 = nonzeros.iter().product();
            Ok(Scalar::Float(product / n_vertices as f64))
        }
    }
}

/// Floating-point resistance matrix via the grounded solve, for graphs past
/// the exact-arithmetic cap.
pub fn resistance_matrix_f64(g: &Graph) -> Result<Vec<Vec<f64>>> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let ground = n - 1;
    let m = FloatMatrix::from_fn(n - 1, |i, j| {
        if i == j {
            g.degree(i) as f64
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    });
    let inv = m.inverse()?;
    let entry = |i: usize, j: usize| inv.get(i, j);
    let mut r = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let val = if j == ground {
                entry(i, i)
            } else if i == ground {
                entry(j, j)
            } else {
                entry(i, i) + entry(j, j) - 2.0 * entry(i, j)
            };
            r[i][j] = val;
            r[j][i] = val;
        }
    }
    Ok(r)
}

/// Floating Kirchhoff and multiplicative degree-Kirchhoff indices.
pub fn kirchhoff_indices_f64(g: &Graph) -> Result<(f64, f64)> {
    let r = resistance_matrix_f64(g)?;
    let n = g.vertex_count();
    let mut kf = 0.0;
    let mut kfstar = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            kf += r[i][j];
            kfstar += (g.degree(i) * g.degree(j)) as f64 * r[i][j];
        }
    }
    Ok((kf, kfstar))
}

/// Floating spanning-tree count via an LU determinant of the grounded
/// Laplacian. Overflows to infinity for very large graphs.
pub fn spanning_trees_f64(g: &Graph) -> Result<f64> {
    let n = g.vertex_count();
    if n == 1 {
        return Ok(1.0);
    }
    if !g.is_connected() {
        return Ok(0.0);
    }
    let m = FloatMatrix::from_fn(n - 1, |i, j| {
        if i == j {
            g.degree(i) as f64
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    });
    // Log-domain determinant keeps intermediate terms in range.
    Ok(m.log_determinant()?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, star, FamilySpec, Graph};
    use crate::rational::rat;
    use crate::spectral::analytic;
    use num_traits::ToPrimitive;

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn resistance_of_single_edge() {
        let r = resistance_matrix(&complete(2).unwrap()).unwrap();
        assert_eq!(r.entry(0, 1), &int(1));
    }

    #[test]
    fn resistance_of_the_square() {
        // Adjacent corners: series 3 parallel 1 -> 3/4; opposite: 2 || 2 -> 1.
        let c4 = FamilySpec::intact(2).unwrap().build();
        let r = resistance_matrix(&c4).unwrap();
        for &(u, v) in c4.edges() {
            assert_eq!(r.entry(u, v), &rat(3, 4));
        }
        assert_eq!(r.entry(0, 3), &int(1));
        assert_eq!(r.entry(1, 2), &int(1));
    }

    #[test]
    fn trees_have_resistance_equal_to_distance() {
        for g in [star(7).unwrap(), path(6), star(10).unwrap(), path(10)] {
            let r = resistance_matrix(&g).unwrap();
            let d = g.distance_matrix().unwrap();
            for i in 0..g.vertex_count() {
                for j in 0..g.vertex_count() {
                    assert_eq!(r.entry(i, j), &int(d[i][j] as i64));
                }
            }
        }
    }

    #[test]
    fn resistance_routes_agree() {
        for spec in [
            FamilySpec::intact(2).unwrap(),
            FamilySpec::intact(5).unwrap(),
            FamilySpec::new(5, [1, 3]).unwrap(),
            FamilySpec::new(4, [2, 3, 4]).unwrap(),
        ] {
            let g = spec.build();
            let a = resistance_matrix(&g).unwrap();
            let b = resistance_matrix_pseudoinverse(&g).unwrap();
            assert_eq!(a, b, "routes disagree for {spec:?}");
        }
    }

    #[test]
    fn resistance_rejects_disconnected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(resistance_matrix(&g), Err(Error::Disconnected)));
        assert!(matches!(kirchhoff_index(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn kirchhoff_spot_values() {
        assert_eq!(kirchhoff_index(&complete(2).unwrap()).unwrap(), int(1));
        let c4 = FamilySpec::intact(2).unwrap().build();
        assert_eq!(kirchhoff_index(&c4).unwrap(), int(5));
        assert_eq!(kirchhoff_index(&path(4)).unwrap(), int(10));
    }

    #[test]
    fn mult_deg_kirchhoff_spot_values() {
        assert_eq!(mult_deg_kirchhoff_index(&complete(2).unwrap()).unwrap(), int(1));
        // All degrees 2 on the square, so the weighted sum is 4 Kf = 20.
        let c4 = FamilySpec::intact(2).unwrap().build();
        assert_eq!(mult_deg_kirchhoff_index(&c4).unwrap(), int(20));
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(spanning_trees(&path(4)), BigInt::from(1));
        let c4 = FamilySpec::intact(2).unwrap().build();
        assert_eq!(spanning_trees(&c4), BigInt::from(4));
        // The 3-prism is the 2x3 grid ladder with 15 spanning trees.
        let ladder = FamilySpec::intact(3).unwrap().build();
        assert_eq!(spanning_trees(&ladder), BigInt::from(15));
        // Disconnected input signals zero.
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(spanning_trees(&g), BigInt::zero());
    }

    #[test]
    fn spanning_trees_row_choice_invariance() {
        let g = FamilySpec::new(5, [2, 4]).unwrap().build();
        let reference = spanning_trees_grounded(&g, 0);
        for k in 1..g.vertex_count() {
            assert_eq!(spanning_trees_grounded(&g, k), reference);
        }
    }

    #[test]
    fn wiener_and_gutman_spot_values() {
        assert_eq!(wiener_index(&path(4)).unwrap(), BigInt::from(10));
        let c4 = FamilySpec::intact(2).unwrap().build();
        assert_eq!(wiener_index(&c4).unwrap(), BigInt::from(8));
        assert_eq!(gutman_index(&c4).unwrap(), BigInt::from(32));
        assert_eq!(gutman_index(&complete(2).unwrap()).unwrap(), BigInt::from(1));
    }

    #[test]
    fn prism_transmission_identities() {
        // Row sums of the distance and weighted-distance matrices per vertex:
        // centers transmit 3n-2 and 7n^2-6n, every leaf 5n-6 and 26n-36.
        for n in 3..=9usize {
            let g = FamilySpec::intact(n).unwrap().build();
            let dist = g.distance_matrix().unwrap();
            for v in 0..2 * n {
                let w: usize = dist[v].iter().sum();
                let gw: usize = (0..2 * n)
                    .map(|u| g.degree(v) * g.degree(u) * dist[v][u])
                    .sum();
                if v == 0 || v == n {
                    assert_eq!(w, 3 * n - 2);
                    assert_eq!(gw, 7 * n * n - 6 * n);
                } else {
                    assert_eq!(w, 5 * n - 6);
                    assert_eq!(gw, 26 * n - 36);
                }
            }
        }
    }

    #[test]
    fn kf_from_spectrum_examples() {
        // The square: 4 * (1/2 + 1/2 + 1/4) = 5.
        let s = analytic::star_prism_laplacian(2).unwrap();
        assert_eq!(kf_from_spectrum(&s, 4).unwrap(), Scalar::Exact(int(5)));

        let s = analytic::star_prism_laplacian(4).unwrap();
        assert_eq!(kf_from_spectrum(&s, 8).unwrap(), Scalar::Exact(rat(86, 3)));

        let plain = Spectrum::exact([(int(0), 1), (int(2), 2), (int(4), 1)], None);
        assert_eq!(kf_from_spectrum(&plain, 4).unwrap(), Scalar::Exact(int(5)));
    }

    #[test]
    fn kf_from_spectrum_rejects_multiple_zeros() {
        let s = Spectrum::exact([(int(0), 2), (int(2), 2)], None);
        assert!(matches!(
            kf_from_spectrum(&s, 4),
            Err(Error::NotConnectedSpectrum(2))
        ));
    }

    #[test]
    fn kfstar_from_spectrum_examples() {
        let s = analytic::star_prism_normalized(2).unwrap();
        assert_eq!(kfstar_from_spectrum(&s, 4).unwrap(), Scalar::Exact(int(20)));

        let k2 = Spectrum::exact([(int(0), 1), (int(2), 1)], None);
        assert_eq!(kfstar_from_spectrum(&k2, 1).unwrap(), Scalar::Exact(int(1)));
    }

    #[test]
    fn tau_from_spectrum_examples() {
        // (1 * 1 * 2 * 3 * 3 * 4 * 6) / 8 = 54 on the 4-prism.
        let s = analytic::star_prism_laplacian(4).unwrap();
        assert_eq!(tau_from_spectrum(&s, 8).unwrap(), Scalar::Exact(int(54)));

        // Deleted-rung spectrum at n = 4, r = 2 with the center rung cut:
        // (1^2 * 4 * 3 * e3) / 8 with e3 = 4 gives 6.
        let s = analytic::rung_deleted_laplacian(4, 2, true).unwrap();
        assert_eq!(tau_from_spectrum(&s, 8).unwrap(), Scalar::Exact(int(6)));

        let square = Spectrum::exact([(int(0), 1), (int(2), 2), (int(4), 1)], None);
        assert_eq!(tau_from_spectrum(&square, 4).unwrap(), Scalar::Exact(int(4)));
    }

    #[test]
    fn spectral_routes_match_oracle_on_floating_input() {
        let spec = FamilySpec::new(6, [1, 4]).unwrap();
        let g = spec.build();
        let numeric = crate::spectral::numeric_spectrum(&crate::spectral::laplacian(&g), 1e-9).unwrap();
        let kf = kf_from_spectrum(&numeric, g.vertex_count()).unwrap();
        let oracle = kirchhoff_index(&g).unwrap();
        assert!(kf.agrees_with(&Scalar::Exact(oracle), 1e-8));

        let tau = tau_from_spectrum(&numeric, g.vertex_count()).unwrap();
        let tau_exact = spanning_trees(&g);
        assert!(tau.agrees_with(&Scalar::from_int(tau_exact), 1e-8));
    }

    #[test]
    fn float_oracle_tracks_exact_oracle() {
        let spec = FamilySpec::new(5, [2, 3]).unwrap();
        let g = spec.build();
        let (kf, kfstar) = kirchhoff_indices_f64(&g).unwrap();
        let kf_exact = kirchhoff_index(&g).unwrap();
        let kfstar_exact = mult_deg_kirchhoff_index(&g).unwrap();
        assert!(Scalar::Float(kf).agrees_with(&Scalar::Exact(kf_exact), 1e-9));
        assert!(Scalar::Float(kfstar).agrees_with(&Scalar::Exact(kfstar_exact), 1e-9));
        let tau = spanning_trees_f64(&g).unwrap();
        let tau_exact = spanning_trees(&g).to_f64().unwrap();
        assert!((tau - tau_exact).abs() <= 1e-6 * tau_exact.max(1.0));
    }
}
