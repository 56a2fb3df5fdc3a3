//! Compatible marginal eigenvalues of a two-qubit orbit, the constant-energy subset,
//! and the geometry of the energy-line family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{h2, Spectrum};

/// Half-plane and membership tolerance.
pub const REGION_TOL: f64 = 1e-10;

/// Smallest marginal eigenvalues `(λ_A, λ_B)` of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginalPoint {
    pub lambda_a: f64,
    pub lambda_b: f64,
}

impl MarginalPoint {
    pub fn new(lambda_a: f64, lambda_b: f64) -> Result<Self> {
        let ok = |x: f64| (-1e-12..=0.5 + 1e-12).contains(&x);
        if !ok(lambda_a) || !ok(lambda_b) {
            return Err(Error::Domain(format!("marginal point ({lambda_a}, {lambda_b}) outside [0,1/2]^2")));
        }
        Ok(Self::clamped(lambda_a, lambda_b))
    }

    pub(crate) fn clamped(a: f64, b: f64) -> Self {
        // Adding zero turns -0.0 into 0.0.
        Self { lambda_a: a.clamp(0.0, 0.5) + 0.0, lambda_b: b.clamp(0.0, 0.5) + 0.0 }
    }

    pub fn swapped(self) -> Self {
        Self { lambda_a: self.lambda_b, lambda_b: self.lambda_a }
    }

    /// Chebyshev distance.
    pub fn dist_inf(&self, other: &MarginalPoint) -> f64 {
        (self.lambda_a - other.lambda_a).abs().max((self.lambda_b - other.lambda_b).abs())
    }

    /// `H(λ_A) + H(λ_B)`, the spectrum-dependent part of the QMI.
    pub fn marginal_entropy_sum(&self) -> f64 {
        h2(self.lambda_a) + h2(self.lambda_b)
    }
}

/// Boundary lines of the region. `a x + b y >= c` with `x = λ_A`, `y = λ_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Constraint {
    /// `λ_A >= λ3 + λ4`
    LowerA,
    /// `λ_B >= λ3 + λ4`
    LowerB,
    /// `λ_A + λ_B >= λ2 + λ3 + 2λ4`
    SumLower,
    /// `λ_B - λ_A <= min(λ1 - λ3, λ2 - λ4)`
    DiffBA,
    /// `λ_A - λ_B <= min(λ1 - λ3, λ2 - λ4)`
    DiffAB,
    /// `λ_A <= 1/2`
    UpperA,
    /// `λ_B <= 1/2`
    UpperB,
}

impl Constraint {
    pub fn describe(&self) -> &'static str {
        match self {
            Constraint::LowerA => "lambda_a >= l3 + l4",
            Constraint::LowerB => "lambda_b >= l3 + l4",
            Constraint::SumLower => "lambda_a + lambda_b >= l2 + l3 + 2 l4",
            Constraint::DiffBA => "lambda_b - lambda_a <= min(l1 - l3, l2 - l4)",
            Constraint::DiffAB => "lambda_a - lambda_b <= min(l1 - l3, l2 - l4)",
            Constraint::UpperA => "lambda_a <= 1/2",
            Constraint::UpperB => "lambda_b <= 1/2",
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct HalfPlane {
    a: f64,
    b: f64,
    c: f64,
    tag: Constraint,
}

impl HalfPlane {
    fn slack(&self, x: f64, y: f64) -> f64 {
        self.a * x + self.b * y - self.c
    }
}

/// Which inequality set defines the polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    /// All four inequalities: the exact set of compatible marginals.
    Exact,
    /// Difference constraint dropped: the region reachable by mixing orbit states.
    Hull,
}

/// Convex polygon in the `(λ_A, λ_B)` plane for a sorted two-qubit spectrum.
#[derive(Clone, Debug)]
pub struct Region {
    spectrum: Spectrum,
    kind: RegionKind,
    planes: Vec<HalfPlane>,
    vertices: Vec<MarginalPoint>,
    degenerate: bool,
}

fn require_two_qubit(spectrum: &Spectrum) -> Result<()> {
    if spectrum.dims() != (2, 2) {
        return Err(Error::Unsupported(format!("region needs a 2x2 spectrum, got {:?}", spectrum.dims())));
    }
    Ok(())
}

impl Region {
    pub fn new(spectrum: &Spectrum) -> Result<Self> {
        Self::build(spectrum, RegionKind::Exact)
    }

    fn build(spectrum: &Spectrum, kind: RegionKind) -> Result<Self> {
        require_two_qubit(spectrum)?;
        let l = |i| spectrum.lambda(i);
        let s34 = l(3) + l(4);
        let k = l(2) + l(3) + 2.0 * l(4);
        let m = (l(1) - l(3)).min(l(2) - l(4));
        let mut planes = vec![
            HalfPlane { a: 1.0, b: 0.0, c: s34, tag: Constraint::LowerA },
            HalfPlane { a: 0.0, b: 1.0, c: s34, tag: Constraint::LowerB },
            HalfPlane { a: 1.0, b: 1.0, c: k, tag: Constraint::SumLower },
            HalfPlane { a: -1.0, b: 0.0, c: -0.5, tag: Constraint::UpperA },
            HalfPlane { a: 0.0, b: -1.0, c: -0.5, tag: Constraint::UpperB },
        ];
        if kind == RegionKind::Exact {
            planes.push(HalfPlane { a: 1.0, b: -1.0, c: -m, tag: Constraint::DiffBA });
            planes.push(HalfPlane { a: -1.0, b: 1.0, c: -m, tag: Constraint::DiffAB });
        }
        let vertices = enumerate_vertices(&planes);
        Ok(Self { spectrum: spectrum.clone(), kind, planes, vertices, degenerate: (l(2) - l(3)).abs() <= 1e-12 })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn kind(&self) -> RegionKind {
        self.kind
    }

    /// Polygon corners, counterclockwise.
    pub fn vertices(&self) -> &[MarginalPoint] {
        &self.vertices
    }

    /// `λ2 = λ3`: the two minimum vertices merge onto the diagonal.
    pub fn degenerate_flag(&self) -> bool {
        self.degenerate
    }

    pub fn contains(&self, p: &MarginalPoint) -> bool {
        self.contains_tol(p, REGION_TOL)
    }

    pub fn contains_tol(&self, p: &MarginalPoint, tol: f64) -> bool {
        self.planes.iter().all(|h| h.slack(p.lambda_a, p.lambda_b) >= -tol)
    }

    /// Constraints whose boundary line passes through `p` (within `tol`).
    pub fn tight_constraints(&self, p: &MarginalPoint, tol: f64) -> Vec<Constraint> {
        self.planes.iter().filter(|h| h.slack(p.lambda_a, p.lambda_b).abs() <= tol).map(|h| h.tag).collect()
    }

    /// The two minimum-QMI corners `(R_1, R_2) = ((λ2+λ4, λ3+λ4), (λ3+λ4, λ2+λ4))`.
    pub fn min_vertex(&self) -> (MarginalPoint, MarginalPoint) {
        let l = |i| self.spectrum.lambda(i);
        let r1 = MarginalPoint::clamped(l(2) + l(4), l(3) + l(4));
        (r1, r1.swapped())
    }

    /// Membership in the constant-energy subset `λ_A + λ_B <= e`.
    pub fn energy_region_contains(&self, p: &MarginalPoint, e: f64) -> Result<bool> {
        check_energy(e)?;
        Ok(self.contains(p) && p.lambda_a + p.lambda_b <= e + REGION_TOL)
    }
}

/// Polygon of the lower-bound and clip inequalities only.
pub fn convex_hull_region(spectrum: &Spectrum) -> Result<Region> {
    Region::build(spectrum, RegionKind::Hull)
}

fn enumerate_vertices(planes: &[HalfPlane]) -> Vec<MarginalPoint> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            let (p, q) = (&planes[i], &planes[j]);
            let det = p.a * q.b - p.b * q.a;
            if det.abs() < 1e-14 {
                continue;
            }
            let x = (p.c * q.b - p.b * q.c) / det;
            let y = (p.a * q.c - p.c * q.a) / det;
            if planes.iter().all(|h| h.slack(x, y) >= -REGION_TOL)
                && !pts.iter().any(|&(u, v)| (u - x).abs() < 1e-12 && (v - y).abs() < 1e-12)
            {
                pts.push((x, y));
            }
        }
    }
    if pts.len() > 2 {
        let n = pts.len() as f64;
        let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
        pts.sort_by(|p, q| (p.1 - cy).atan2(p.0 - cx).total_cmp(&(q.1 - cy).atan2(q.0 - cx)));
    }
    pts.into_iter().map(|(x, y)| MarginalPoint::clamped(x, y)).collect()
}

fn check_energy(e: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&e) {
        return Err(Error::Domain(format!("energy {e} outside [0,1]")));
    }
    Ok(())
}

/// Corners of the diamond framed by the four extreme energy lines, `C = 1 - e`:
/// `(1/2, 1/2-C), (1/2-C, 1/2), (1/2+C, 1/2), (1/2, 1/2+C)`.
pub fn f_line_intersections(e: f64) -> Result<[(f64, f64); 4]> {
    check_energy(e)?;
    let c = 1.0 - e;
    Ok([(0.5, 0.5 - c), (0.5 - c, 0.5), (0.5 + c, 0.5), (0.5, 0.5 + c)])
}

/// Signed residual of `(x, y)` on the energy line `t (y - 1/2) + s (x - 1/2) = -(1 - e)`.
pub fn f_line_residual(s: f64, t: f64, e: f64, x: f64, y: f64) -> f64 {
    t * (y - 0.5) + s * (x - 0.5) + (1.0 - e)
}

/// Strictly inside the diamond `|x - 1/2| + |y - 1/2| < 1 - e`.
pub fn in_open_diamond(e: f64, x: f64, y: f64, tol: f64) -> bool {
    (x - 0.5).abs() + (y - 0.5).abs() < (1.0 - e) - tol
}

/// Largest QMI change at fixed average energy:
/// `2 H(e/2) - H(λ1+λ2) - H(λ1+λ3)`.
pub fn delta_i_energy(spectrum: &Spectrum, e: f64) -> Result<f64> {
    require_two_qubit(spectrum)?;
    let l = |i| spectrum.lambda(i);
    let k = l(2) + l(3) + 2.0 * l(4);
    if e > 1.0 + 1e-12 || e < k - REGION_TOL {
        return Err(Error::Precondition(format!(
            "energy {e} must lie in [{k}, 1]; below it the minimum vertex is outside the constant-energy region"
        )));
    }
    Ok(2.0 * h2(e / 2.0) - h2(l(1) + l(2)) - h2(l(1) + l(3)))
}

/// `inf_U Tr(U τ U† O) = Σ λ_i o_{d+1-i}`: largest populations paired with smallest operator eigenvalues.
pub fn trace_infimum(op_eigenvalues: &[f64], spectrum: &Spectrum) -> Result<f64> {
    if op_eigenvalues.len() != spectrum.len() {
        return Err(Error::DimensionMismatch { expected: spectrum.len(), got: op_eigenvalues.len() });
    }
    let mut o = op_eigenvalues.to_vec();
    o.sort_by(|a, b| a.total_cmp(b));
    Ok(spectrum.values().iter().zip(&o).map(|(l, x)| l * x).sum())
}

/// One cell of a rasterised membership map.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridCell {
    pub lambda_a: f64,
    pub lambda_b: f64,
    pub in_r: bool,
    pub in_r_e: bool,
    pub in_hull: bool,
}

/// `n × n` grid on `[0, 1/2]^2` (inclusive endpoints), rows ordered by `λ_A` then `λ_B`.
pub fn membership_grid(spectrum: &Spectrum, e: f64, n: usize) -> Result<Vec<GridCell>> {
    check_energy(e)?;
    let r = Region::new(spectrum)?;
    let hull = convex_hull_region(spectrum)?;
    let step = if n > 1 { 0.5 / (n - 1) as f64 } else { 0.0 };
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let p = MarginalPoint::clamped(i as f64 * step, j as f64 * step);
            let in_r = r.contains(&p);
            out.push(GridCell {
                lambda_a: p.lambda_a,
                lambda_b: p.lambda_b,
                in_r,
                in_r_e: in_r && p.lambda_a + p.lambda_b <= e + REGION_TOL,
                in_hull: hull.contains(&p),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(a: f64, b: f64) -> MarginalPoint {
        MarginalPoint::new(a, b).unwrap()
    }

    fn sp(v: [f64; 4]) -> Spectrum {
        Spectrum::qubits(v).unwrap()
    }

    #[test]
    fn pure_state_region_is_the_diagonal() {
        let r = Region::new(&sp([1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(r.contains(&mp(0.0, 0.0)));
        assert!(r.contains(&mp(0.1, 0.1)));
        assert!(!r.contains(&mp(0.1, 0.2)));
        assert_eq!(r.vertices().len(), 2);
    }

    #[test]
    fn uniform_region_is_a_point() {
        let r = Region::new(&Spectrum::uniform((2, 2))).unwrap();
        assert!(r.contains(&mp(0.5, 0.5)));
        assert!(!r.contains(&mp(0.5, 0.49)));
        assert_eq!(r.vertices().len(), 1);
    }

    #[test]
    fn generic_membership() {
        let r = Region::new(&sp([0.6, 0.3, 0.1, 0.0])).unwrap();
        assert!(r.contains(&mp(0.1, 0.3)));
        assert!(!r.contains(&mp(0.05, 0.3)));
        let (r1, r2) = r.min_vertex();
        assert!((r1.lambda_a - 0.3).abs() < 1e-15 && (r1.lambda_b - 0.1).abs() < 1e-15);
        assert_eq!(r2, r1.swapped());
        for v in r.vertices() {
            assert!(r.tight_constraints(v, 1e-10).len() >= 2);
        }
    }

    #[test]
    fn vertices_are_counterclockwise() {
        let r = Region::new(&sp([0.6, 0.3, 0.1, 0.0])).unwrap();
        let v = r.vertices();
        let n = v.len();
        assert!(n >= 3);
        let area: f64 = (0..n)
            .map(|i| {
                let (p, q) = (v[i], v[(i + 1) % n]);
                p.lambda_a * q.lambda_b - q.lambda_a * p.lambda_b
            })
            .sum();
        assert!(area > 0.0);
    }

    #[test]
    fn degenerate_min_vertex() {
        let r = Region::new(&sp([0.5, 0.25, 0.25, 0.0])).unwrap();
        assert!(r.degenerate_flag());
        let (r1, r2) = r.min_vertex();
        assert_eq!(r1, r2);
        assert!((r1.lambda_a - 0.25).abs() < 1e-15);
    }

    #[test]
    fn energy_subregion() {
        let r = Region::new(&sp([0.6, 0.3, 0.1, 0.0])).unwrap();
        assert!(r.energy_region_contains(&mp(0.3, 0.3), 0.6).unwrap());
        assert!(!r.energy_region_contains(&mp(0.35, 0.3), 0.6).unwrap());
        assert!(r.energy_region_contains(&mp(0.5, 0.5), 1.0).unwrap());
        assert!(r.energy_region_contains(&mp(0.3, 0.3), 1.5).is_err());
    }

    #[test]
    fn f_lines() {
        let d = f_line_intersections(0.5).unwrap();
        assert_eq!(d, [(0.5, 0.0), (0.0, 0.5), (1.0, 0.5), (0.5, 1.0)]);
        assert!(f_line_intersections(1.0).unwrap().iter().all(|&p| p == (0.5, 0.5)));
        for (s, t) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let on = d.iter().filter(|&&(x, y)| f_line_residual(s, t, 0.5, x, y).abs() < 1e-15).count();
            assert_eq!(on, 2);
        }
    }

    #[test]
    fn delta_i_energy_examples() {
        let v = delta_i_energy(&sp([0.6, 0.3, 0.1, 0.0]), 0.6).unwrap();
        assert!((v - 0.41229).abs() < 5e-5);
        assert!(delta_i_energy(&sp([0.6, 0.3, 0.1, 0.0]), 0.3).is_err());
        assert!(delta_i_energy(&sp([0.5, 0.25, 0.25, 0.0]), 0.5).unwrap().abs() < 1e-12);
        let pure = delta_i_energy(&sp([1.0, 0.0, 0.0, 0.0]), 0.4).unwrap();
        assert!((pure - 2.0 * h2(0.2)).abs() < 1e-12);
    }

    #[test]
    fn trace_infimum_examples() {
        let s = sp([0.6, 0.3, 0.1, 0.0]);
        assert!((trace_infimum(&[1.0, 1.0, 0.0, 0.0], &s).unwrap() - 0.1).abs() < 1e-15);
        assert!((trace_infimum(&[2.0, 1.0, 1.0, 0.0], &s).unwrap() - 0.4).abs() < 1e-15);
        assert!((trace_infimum(&[0.7; 4], &s).unwrap() - 0.7).abs() < 1e-15);
        assert!(trace_infimum(&[1.0; 3], &s).is_err());
    }

    #[test]
    fn hull_drops_difference_constraint() {
        let s = sp([0.6, 0.3, 0.1, 0.0]);
        let hull = convex_hull_region(&s).unwrap();
        let p = mp(0.1, 0.5);
        assert!(hull.contains(&p));
        assert!(!Region::new(&s).unwrap().contains(&p));
        let u = convex_hull_region(&Spectrum::uniform((2, 2))).unwrap();
        assert_eq!(u.vertices().len(), 1);
    }
}
