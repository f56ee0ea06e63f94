//! Gromov-hyperbolic primitives over an abstract isometric action.
//!
//! Every concrete model (Cayley trees of free groups and their finite
//! extensions, the Cremona group acting on the Picard–Manin hyperboloid,
//! monomial maps) implements [`ActionOracle`]: a group with identity,
//! multiplication and inversion, a basepoint `x`, and the displacement
//! `d(x, g·x)`. Everything else in this module is phrased in terms of that
//! contract, so it applies verbatim to every model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used for all real-valued geometry.
pub const TOLERANCE: f64 = 1e-9;

/// Translation-length threshold above which the heuristic classifier
/// declares an isometry loxodromic.
pub const LOXODROMIC_THRESHOLD: f64 = 0.05;

/// A group acting by isometries on a metric space, seen from a basepoint.
pub trait ActionOracle: Sync {
    type Element: Clone + Send + Sync;

    fn identity(&self) -> Self::Element;

    /// The product `g·h`.
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Result<Self::Element>;

    /// In-place right multiplication `acc ← acc·g`.
    fn multiply_assign(&self, acc: &mut Self::Element, g: &Self::Element) -> Result<()> {
        *acc = self.multiply(acc, g)?;
        Ok(())
    }

    fn invert(&self, g: &Self::Element) -> Result<Self::Element>;

    /// `d(x, g·x)`.
    fn displacement(&self, g: &Self::Element) -> Result<f64>;

    /// `d(g·x, h·x) = d(x, (g⁻¹h)·x)`.
    fn distance(&self, g: &Self::Element, h: &Self::Element) -> Result<f64> {
        let gi = self.invert(g)?;
        self.displacement(&self.multiply(&gi, h)?)
    }

    /// Stable translation length. Models with a closed form override this;
    /// the default is the power-sampling upper bound.
    fn translation_length(&self, g: &Self::Element, budget: usize) -> Result<f64> {
        power_sampled_translation(self, g, budget)
    }

    fn classify(&self, g: &Self::Element, budget: usize) -> Result<IsometryClass> {
        heuristic_classification(self, g, budget)
    }

    /// `log deg` for models whose displacement is `arccosh deg`.
    fn log_degree(&self, _g: &Self::Element) -> Result<Option<f64>> {
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryClass {
    Elliptic,
    Parabolic,
    Loxodromic,
    /// Only produced when a heuristic classifier runs out of budget.
    Undetermined,
}

/// The shadow `S_x(y, R)` of `y` seen from `x`: all `z` with
/// `⟨z, y⟩_x ≥ d(x, y) − R`. Source and target are orbit points `s·x`, `t·x`.
#[derive(Debug, Clone)]
pub struct Shadow<E> {
    pub source: E,
    pub target: E,
    pub slack: f64,
}

impl<E> Shadow<E> {
    pub fn new(source: E, target: E, slack: f64) -> Result<Self> {
        if !(slack >= 0.0) {
            return Err(Error::input(format!("shadow slack must be >= 0, got {slack}")));
        }
        Ok(Shadow {
            source,
            target,
            slack,
        })
    }

    /// `r = d(x, y) − R`; may be negative, in which case the shadow is everything.
    pub fn distance_parameter<O>(&self, oracle: &O) -> Result<f64>
    where
        O: ActionOracle<Element = E> + ?Sized,
    {
        Ok(oracle.distance(&self.source, &self.target)? - self.slack)
    }
}

/// `⟨y, z⟩_x = (d(x,y) + d(x,z) − d(y,z)) / 2`.
///
/// Fails when the three lengths violate the triangle inequality by more
/// than [`TOLERANCE`], which indicates a broken distance oracle.
pub fn gromov_product(d_xy: f64, d_xz: f64, d_yz: f64) -> Result<f64> {
    for (name, v) in [("d(x,y)", d_xy), ("d(x,z)", d_xz), ("d(y,z)", d_yz)] {
        if !(v >= -TOLERANCE) || !v.is_finite() {
            return Err(Error::input(format!("{name} = {v} is not a nonnegative length")));
        }
    }
    let violations = [
        d_xy - (d_xz + d_yz),
        d_xz - (d_xy + d_yz),
        d_yz - (d_xy + d_xz),
    ];
    if violations.iter().any(|&v| v > TOLERANCE) {
        return Err(Error::input(format!(
            "triangle inequality violated: ({d_xy}, {d_xz}, {d_yz})"
        )));
    }
    Ok(((d_xy + d_xz - d_yz) / 2.0).max(0.0))
}

/// Gromov product of two orbit points at the basepoint, `⟨g·x, h·x⟩_x`.
pub fn orbit_gromov_product<O: ActionOracle + ?Sized>(
    oracle: &O,
    g: &O::Element,
    h: &O::Element,
) -> Result<f64> {
    gromov_product(
        oracle.displacement(g)?,
        oracle.displacement(h)?,
        oracle.distance(g, h)?,
    )
}

/// Gromov product of `g·x` and `h·x` based at `p·x`.
pub fn based_gromov_product<O: ActionOracle + ?Sized>(
    oracle: &O,
    base: &O::Element,
    g: &O::Element,
    h: &O::Element,
) -> Result<f64> {
    gromov_product(
        oracle.distance(base, g)?,
        oracle.distance(base, h)?,
        oracle.distance(g, h)?,
    )
}

/// Whether `z·x` lies in the shadow.
pub fn shadow_contains<O: ActionOracle + ?Sized>(
    oracle: &O,
    shadow: &Shadow<O::Element>,
    z: &O::Element,
) -> Result<bool> {
    let d_xy = oracle.distance(&shadow.source, &shadow.target)?;
    let product = based_gromov_product(oracle, &shadow.source, z, &shadow.target)?;
    Ok(product >= d_xy - shadow.slack - TOLERANCE)
}

/// Upper estimate of `τ(g)`, dispatching to the model's closed form if it has one.
pub fn translation_length_estimate<O: ActionOracle + ?Sized>(
    oracle: &O,
    g: &O::Element,
    budget: usize,
) -> Result<f64> {
    if budget == 0 {
        return Err(Error::input("translation length budget must be >= 1"));
    }
    oracle.translation_length(g, budget)
}

pub fn classify_isometry<O: ActionOracle + ?Sized>(
    oracle: &O,
    g: &O::Element,
    budget: usize,
) -> Result<IsometryClass> {
    if budget < 4 {
        return Err(Error::input("classification budget must be >= 4"));
    }
    oracle.classify(g, budget)
}

/// Displacements `d(x, gⁿx)` for `n = 1..=budget`. Stops early with a
/// resource error carrying the sequence length reached.
pub fn power_displacements<O: ActionOracle + ?Sized>(
    oracle: &O,
    g: &O::Element,
    budget: usize,
) -> (Vec<f64>, Option<Error>) {
    let mut out = Vec::with_capacity(budget);
    let mut power = g.clone();
    for n in 1..=budget {
        if n > 1 {
            if let Err(e) = oracle.multiply_assign(&mut power, g) {
                return (out, Some(e));
            }
        }
        match oracle.displacement(&power) {
            Ok(d) => out.push(d),
            Err(e) => return (out, Some(e)),
        }
    }
    (out, None)
}

/// `min_{1≤n≤budget} d(x, gⁿx)/n`.
///
/// Each term bounds `τ(g)` from above by subadditivity, and the term at
/// `n = budget` exceeds `τ(g)` by at most `d(x, gx)/budget`; taking the
/// minimum keeps both properties and makes the estimate non-increasing in
/// the budget.
pub fn power_sampled_translation<O: ActionOracle + ?Sized>(
    oracle: &O,
    g: &O::Element,
    budget: usize,
) -> Result<f64> {
    let (ds, err) = power_displacements(oracle, g, budget);
    let best = ds
        .iter()
        .enumerate()
        .map(|(i, d)| d / (i + 1) as f64)
        .fold(f64::INFINITY, f64::min);
    match err {
        None => Ok(best),
        Some(e) if ds.is_empty() => Err(e),
        Some(e) => Err(e.with_partial(best)),
    }
}

/// Growth-based classification used when a model has no exact rule.
///
/// A vanishing displacement at some power means a finite orbit (elliptic);
/// a translation estimate above [`LOXODROMIC_THRESHOLD`] means loxodromic;
/// strictly increasing displacements over the second half of the budget
/// with small translation estimate means parabolic; anything else is
/// undetermined.
pub fn heuristic_classification<O: ActionOracle + ?Sized>(
    oracle: &O,
    g: &O::Element,
    budget: usize,
) -> Result<IsometryClass> {
    let (ds, err) = power_displacements(oracle, g, budget);
    if ds.iter().any(|&d| d <= TOLERANCE) {
        return Ok(IsometryClass::Elliptic);
    }
    if let Some(e) = err {
        if !e.is_resource() {
            return Err(e);
        }
    }
    if ds.len() < 4 {
        return Ok(IsometryClass::Undetermined);
    }
    let tau = ds
        .iter()
        .enumerate()
        .map(|(i, d)| d / (i + 1) as f64)
        .fold(f64::INFINITY, f64::min);
    if tau >= LOXODROMIC_THRESHOLD {
        return Ok(IsometryClass::Loxodromic);
    }
    let half = ds.len() / 2;
    let increasing = ds[half..].windows(2).all(|w| w[1] > w[0] + TOLERANCE);
    if increasing {
        Ok(IsometryClass::Parabolic)
    } else {
        Ok(IsometryClass::Undetermined)
    }
}

/// Four-point defect of `(p, q, r, s)`: half the gap between the two
/// largest of the three pair sums. Zero on trees.
pub fn four_point_defect(d: [[f64; 4]; 4]) -> f64 {
    let mut sums = [
        d[0][1] + d[2][3],
        d[0][2] + d[1][3],
        d[0][3] + d[1][2],
    ];
    sums.sort_by(|a, b| a.total_cmp(b));
    ((sums[2] - sums[1]) / 2.0).max(0.0)
}

/// Empirical lower bound on the hyperbolicity constant from sampled
/// quadruples of orbit points.
pub fn four_point_delta<O: ActionOracle + ?Sized>(
    oracle: &O,
    quadruples: &[[O::Element; 4]],
) -> Result<f64> {
    if quadruples.is_empty() {
        return Err(Error::input("four-point delta needs at least one quadruple"));
    }
    let mut worst = 0.0f64;
    for quad in quadruples {
        let mut d = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in (i + 1)..4 {
                let dij = oracle.distance(&quad[i], &quad[j])?;
                d[i][j] = dij;
                d[j][i] = dij;
            }
        }
        worst = worst.max(four_point_defect(d));
    }
    Ok(worst)
}

/// The diagnostic `d(x,gx) − 2⟨gx, g⁻¹x⟩_x − τ(g)`, which is `O(δ)` but
/// never treated as zero.
pub fn translation_residual<O: ActionOracle + ?Sized>(
    oracle: &O,
    g: &O::Element,
    tau: f64,
) -> Result<f64> {
    let gi = oracle.invert(g)?;
    let d = oracle.displacement(g)?;
    let gp = orbit_gromov_product(oracle, g, &gi)?;
    Ok(d - 2.0 * gp - tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gromov_product_examples() {
        assert_eq!(gromov_product(5.0, 7.0, 4.0).unwrap(), 4.0);
        assert_eq!(gromov_product(2.0, 2.0, 4.0).unwrap(), 0.0);
        assert_eq!(gromov_product(2.0, 2.0, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn gromov_product_clamps_tiny_negatives() {
        let v = gromov_product(1.0, 1.0, 2.0 + 5e-10).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn gromov_product_rejects_broken_triangle() {
        assert!(matches!(
            gromov_product(1.0, 1.0, 3.0),
            Err(Error::Input(_))
        ));
        assert!(gromov_product(-1.0, 1.0, 1.0).is_err());
        assert!(gromov_product(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn four_point_defect_of_degenerate_quadruple_is_zero() {
        // p = q, r = s on a line: distances 0, 3, 3, 3, 3, 0
        let d = [
            [0.0, 0.0, 3.0, 3.0],
            [0.0, 0.0, 3.0, 3.0],
            [3.0, 3.0, 0.0, 0.0],
            [3.0, 3.0, 0.0, 0.0],
        ];
        assert_eq!(four_point_defect(d), 0.0);
    }

    #[test]
    fn shadow_rejects_negative_slack() {
        assert!(Shadow::new((), (), -1.0).is_err());
    }
}
