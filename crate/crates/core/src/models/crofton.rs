//! Zero cell of an isotropic Poisson hyperplane process.

use crate::error::{domain, Error, Result};
use crate::geom::{direction_grid, dot, norm, random_direction, Dimension, DirectionGrid, StarSet};
use crate::ppp::sample_poisson_count;
use rand::Rng;
use std::sync::Arc;

/// Window enlargements attempted before giving up on an unbounded cell.
pub const MAX_ENLARGEMENTS: u32 = 3;

/// Intensity convention for the hyperplane process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// Mean number of hyperplanes meeting the unit ball equals 2, its diameter.
    DiameterRate,
    /// Mean number of hyperplanes meeting the unit ball equals `rate`.
    /// In the plane, `Custom(2 pi)` is the unit-intensity line process on
    /// `[0, 2 pi) x R+`, which crosses a fixed line at rate 2.
    Custom(f64),
}

impl Normalization {
    /// Mean number of hyperplanes meeting the unit ball; also the intensity of
    /// the distance coordinate per unit length.
    pub fn rate(self) -> f64 {
        match self {
            Normalization::DiameterRate => 2.0,
            Normalization::Custom(r) => r,
        }
    }

    fn validate(self) -> Result<()> {
        let r = self.rate();
        if r > 0.0 && r.is_finite() {
            Ok(())
        } else {
            domain(format!("hyperplane rate {r} must be positive"))
        }
    }
}

/// `{x : <x, normal> = offset}` with unit normal and `offset > 0`; the side
/// containing the origin is `<x, normal> <= offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Hyperplane {
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let n = norm(&normal);
        if !(n > 0.0 && n.is_finite()) || !(offset > 0.0) {
            return domain("hyperplane needs a nonzero normal and positive offset");
        }
        Ok(Self { normal: normal.into_iter().map(|x| x / n).collect(), offset })
    }
}

/// The cell of the origin: `⋂ {<x, n_i> <= rho_i}`.
#[derive(Debug, Clone)]
pub struct CroftonCell {
    dim: Dimension,
    planes: Arc<Vec<Hyperplane>>,
    window: f64,
    enlargements: u32,
    vertices: Option<Vec<[f64; 2]>>,
    volume: f64,
}

impl CroftonCell {
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn planes(&self) -> &[Hyperplane] {
        &self.planes
    }

    /// Final window radius; every hyperplane within it was sampled.
    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn enlargements(&self) -> u32 {
        self.enlargements
    }

    /// Polygon vertices in counter-clockwise order (planar cells only).
    pub fn vertices(&self) -> Option<&[[f64; 2]]> {
        self.vertices.as_deref()
    }

    /// Exact area in the plane; grid quadrature of the radius function above.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Distance to the boundary along `theta`, unclipped.
    pub fn radius(&self, theta: &[f64]) -> f64 {
        radius_of(&self.planes, theta)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.planes.iter().all(|h| dot(x, &h.normal) <= h.offset)
    }

    /// The cell scaled by `scale` as a star set (radii clipped to 1).
    pub fn star_set(&self, scale: f64) -> StarSet {
        let planes = Arc::clone(&self.planes);
        StarSet::new(self.dim, move |t| scale * radius_of(&planes, t))
    }
}

fn radius_of(planes: &[Hyperplane], theta: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for h in planes {
        if h.offset >= best {
            break;
        }
        let c = dot(theta, &h.normal);
        if c > 0.0 {
            best = best.min(h.offset / c);
        }
    }
    best
}

/// Sutherland–Hodgman clip of a convex polygon by `<x, n> <= rho`.
fn clip(poly: &[[f64; 2]], n: &[f64], rho: f64) -> Vec<[f64; 2]> {
    let side = |p: &[f64; 2]| p[0] * n[0] + p[1] * n[1] - rho;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let (sa, sb) = (side(&a), side(&b));
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
            let t = sa / (sa - sb);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

fn shoelace(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

/// Planar cell clipped from a square of half-side `2 window`; `None` when a
/// vertex lies outside the window, where unsampled lines could still cut.
fn planar_cell(planes: &[Hyperplane], window: f64) -> Option<Vec<[f64; 2]>> {
    let l = 2.0 * window;
    let mut poly = vec![[-l, -l], [l, -l], [l, l], [-l, l]];
    for h in planes {
        poly = clip(&poly, &h.normal, h.offset);
    }
    poly.iter().all(|v| v[0].hypot(v[1]) <= window).then_some(poly)
}

/// For d >= 3: bounded when every probe radius stays within half the window.
fn probe_bounded(planes: &[Hyperplane], probe: &DirectionGrid, window: f64) -> bool {
    probe.iter().all(|t| radius_of(planes, t.as_slice()) <= 0.5 * window)
}

fn probe_volume(planes: &[Hyperplane], probe: &DirectionGrid) -> f64 {
    let k = probe.dim().get() as i32;
    let sum: f64 = probe.iter().map(|t| radius_of(planes, t.as_slice()).powi(k)).sum();
    probe.weight() * sum / k as f64
}

fn finish(d: Dimension, mut planes: Vec<Hyperplane>, window: f64, enlargements: u32, probe: Option<&DirectionGrid>) -> Option<CroftonCell> {
    planes.sort_by(|a, b| a.offset.total_cmp(&b.offset));
    let (vertices, volume) = if d.get() == 2 {
        let poly = planar_cell(&planes, window)?;
        let area = shoelace(&poly);
        (Some(poly), area)
    } else {
        let probe = probe?;
        if !probe_bounded(&planes, probe, window) {
            return None;
        }
        (None, probe_volume(&planes, probe))
    };
    Some(CroftonCell { dim: d, planes: Arc::new(planes), window, enlargements, vertices, volume })
}

fn sample_planes<R: Rng + ?Sized>(d: usize, rate: f64, from: f64, to: f64, rng: &mut R, out: &mut Vec<Hyperplane>) -> Result<()> {
    let n = sample_poisson_count(rate * (to - from), rng)?;
    for _ in 0..n {
        let mut normal = vec![0.0; d];
        random_direction(d, rng, &mut normal);
        let offset = from + (to - from) * rng.random::<f64>();
        if offset > 0.0 {
            out.push(Hyperplane { normal, offset });
        }
    }
    Ok(())
}

/// Default probe grid for cells in d >= 3.
fn default_probe(d: Dimension) -> Result<DirectionGrid> {
    direction_grid(d, 4000, 0)
}

/// Zero cell of a Poisson hyperplane process, sampled inside a ball of radius
/// `window >= 10` and enlarged (doubling, at most three times) while the
/// cell is not certified to lie inside the window.
pub fn crofton_cell<R: Rng + ?Sized>(d: Dimension, normalization: Normalization, window: f64, rng: &mut R) -> Result<CroftonCell> {
    if d.get() == 2 {
        crofton_cell_with_probe(d, normalization, window, None, rng)
    } else {
        let probe = default_probe(d)?;
        crofton_cell_with_probe(d, normalization, window, Some(&probe), rng)
    }
}

/// As [`crofton_cell`]; d >= 3 needs a probe grid for the boundedness check
/// and the volume.
pub fn crofton_cell_with_probe<R: Rng + ?Sized>(
    d: Dimension,
    normalization: Normalization,
    window: f64,
    probe: Option<&DirectionGrid>,
    rng: &mut R,
) -> Result<CroftonCell> {
    normalization.validate()?;
    if !(window >= 10.0) || !window.is_finite() {
        return domain(format!("window radius {window} must be at least 10"));
    }
    if d.get() >= 3 && probe.map_or(true, |p| p.dim() != d) {
        return domain("cells in d >= 3 need a probe grid of matching dimension");
    }
    let rate = normalization.rate();
    let mut planes = Vec::new();
    sample_planes(d.get(), rate, 0.0, window, rng, &mut planes)?;
    let mut w = window;
    for k in 0..=MAX_ENLARGEMENTS {
        if let Some(cell) = finish(d, planes.clone(), w, k, probe) {
            return Ok(cell);
        }
        if k == MAX_ENLARGEMENTS {
            break;
        }
        sample_planes(d.get(), rate, w, 2.0 * w, rng, &mut planes)?;
        w *= 2.0;
    }
    Err(Error::UnboundedCell { enlargements: MAX_ENLARGEMENTS, window: w })
}

/// The cell cut out by explicit hyperplanes; fails if it is not certified to
/// lie inside `window`.
pub fn crofton_cell_from_hyperplanes(d: Dimension, planes: Vec<Hyperplane>, window: f64) -> Result<CroftonCell> {
    if planes.iter().any(|h| h.normal.len() != d.get()) {
        return domain("hyperplane of wrong dimension");
    }
    let probe = if d.get() == 2 { None } else { Some(default_probe(d)?) };
    finish(d, planes, window, 0, probe.as_ref()).ok_or(Error::UnboundedCell { enlargements: 0, window })
}

/// Number of hyperplanes crossing a segment of length `length`.
///
/// The mean is `rate * c_d * length / 2` with `c_d = 2 omega_{d-1} / (d omega_d)`.
pub fn segment_crossings<R: Rng + ?Sized>(d: Dimension, normalization: Normalization, length: f64, rng: &mut R) -> Result<u64> {
    normalization.validate()?;
    if !(length >= 0.0) {
        return domain(format!("segment length {length} is negative"));
    }
    // The segment [-a e1, a e1] lies in the ball of radius a.
    let a = 0.5 * length;
    let n = sample_poisson_count(normalization.rate() * a, rng)?;
    let mut normal = vec![0.0; d.get()];
    let mut hits = 0;
    for _ in 0..n {
        random_direction(d.get(), rng, &mut normal);
        let rho = a * rng.random::<f64>();
        if rho < a * normal[0].abs() {
            hits += 1;
        }
    }
    Ok(hits)
}

/// Number of pairwise line intersections inside the disk of radius
/// `radius` for a planar line process. Its mean divided by the disk area is
/// the vertex intensity, which for a line tessellation equals the cell
/// intensity `1 / E V` of the typical cell.
pub fn vertex_count_2d<R: Rng + ?Sized>(normalization: Normalization, radius: f64, rng: &mut R) -> Result<u64> {
    normalization.validate()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return domain(format!("disk radius {radius} must be positive"));
    }
    let mut lines = Vec::new();
    sample_planes(2, normalization.rate(), 0.0, radius, rng, &mut lines)?;
    let mut count = 0;
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            let det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
            if det == 0.0 {
                continue;
            }
            let x = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det;
            let y = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det;
            if x * x + y * y < radius * radius {
                count += 1;
            }
        }
    }
    Ok(count)
}
