//! Roots of a binary form on the Riemann sphere.
//!
//! Points are kept as unit spinors `[z : w]` so that the point at infinity
//! (`w = 0`) needs no special casing. Initial estimates come from the
//! companion matrix; every cluster of estimates is then refined in whichever
//! affine chart (`ζ = z/w` or `ω = w/z`) keeps the coordinate inside the unit
//! disc.
//!
//! Double-precision eigenvalues of an `m`-fold root scatter on a circle of
//! radius about `eps^(1/m)`, far above any fixed clustering threshold once
//! `m > 2`. Clusters are therefore grown agglomeratively: pairs closer than
//! the caller's tolerance always merge, and pairs up to [`MERGE_RADIUS`] merge
//! only when the merged centre is verified as an `m`-fold root, i.e. the
//! Taylor coefficients of orders `0..m` vanish to working precision there.

use std::collections::HashSet;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{binomial, cabs, carg, cone, cpolar, creal, czero, Real};

/// Largest chordal separation considered for a multiplicity-verified merge.
pub const MERGE_RADIUS: f64 = 0.5;
/// Taylor coefficients below this fraction of their rounding bound count as zero.
pub const MULTIPLICITY_TOL: f64 = 1e-10;
/// Leading coefficients below this fraction of the largest are treated as
/// roots at infinity when seeding the eigenvalue solve.
pub const LEADING_TRIM: f64 = 1e-14;
const NEWTON_MAX_ITERS: usize = 200;
/// QR sweeps per eigenvalue before giving up on an unshifted origin.
const SCHUR_ITERS_PER_ROOT: usize = 60;

/// Unit spinor `[z : w]`; the root is `ζ = z / w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<T: Real> {
    pub z: Complex<T>,
    pub w: Complex<T>,
}

impl<T: Real> Spinor<T> {
    pub fn infinity() -> Self {
        Self { z: cone(), w: czero() }
    }

    pub fn from_root(zeta: Complex<T>) -> Self {
        let r = cabs(zeta);
        if r <= T::one() {
            let s = (T::one() + r * r).sqrt();
            Self { z: zeta.unscale(s), w: creal(T::one() / s) }
        } else {
            let omega = zeta.inv();
            let s = (T::one() + omega.norm_sqr()).sqrt();
            Self { z: creal(T::one() / s), w: omega.unscale(s) }
        }
    }

    pub fn from_angles(theta: T, phi: T) -> Self {
        let half = theta * T::lit(0.5);
        Self { z: cpolar(half.sin(), phi), w: creal(half.cos()) }
    }

    /// Unit vector `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn to_vec3(self) -> [T; 3] {
        let xy = (self.z * self.w.conj()).scale(T::lit(2.0));
        [xy.re, xy.im, self.w.norm_sqr() - self.z.norm_sqr()]
    }

    pub fn from_vec3(v: [T; 3]) -> Self {
        let rho = v[0].hypot(v[1]);
        let theta = rho.atan2(v[2]);
        let phi = if rho > T::zero() { v[1].atan2(v[0]) } else { T::zero() };
        Self::from_angles(theta, phi)
    }

    /// `(θ, φ)` with `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn angles(self) -> (T, T) {
        let sin = cabs(self.z * self.w) * T::lit(2.0);
        let cos = self.w.norm_sqr() - self.z.norm_sqr();
        let theta = sin.atan2(cos);
        let xy = self.z * self.w.conj();
        let mut phi = if xy.is_zero() { T::zero() } else { carg(xy) };
        if phi < T::zero() {
            phi += T::two_pi();
        }
        if phi >= T::two_pi() {
            phi = T::zero();
        }
        (theta, phi)
    }

    /// Euclidean distance between the two points on the unit sphere.
    pub fn chordal(self, other: Self) -> T {
        cabs(self.z * other.w - other.z * self.w) * T::lit(2.0)
    }
}

/// Affine chart used to refine a root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chart {
    /// `ζ = z / w`, polynomial `Σ a_k ζ^(n-k)`.
    Finite,
    /// `ω = w / z`, polynomial `Σ a_k ω^k`.
    Infinite,
}

struct ChartPoly<T: Real> {
    chart: Chart,
    /// Ascending coefficients in the chart variable.
    asc: Vec<Complex<T>>,
}

impl<T: Real> ChartPoly<T> {
    fn new(form: &[Complex<T>], chart: Chart) -> Self {
        let asc = match chart {
            Chart::Finite => form.iter().rev().copied().collect(),
            Chart::Infinite => form.to_vec(),
        };
        Self { chart, asc }
    }

    fn for_point(form: &[Complex<T>], p: Spinor<T>) -> (Self, Complex<T>) {
        if cabs(p.w) >= cabs(p.z) {
            (Self::new(form, Chart::Finite), p.z / p.w)
        } else {
            (Self::new(form, Chart::Infinite), p.w / p.z)
        }
    }

    fn to_spinor(&self, x: Complex<T>) -> Spinor<T> {
        match self.chart {
            Chart::Finite => Spinor::from_root(x),
            Chart::Infinite => {
                let s = (T::one() + x.norm_sqr()).sqrt();
                Spinor { z: creal(T::one() / s), w: x.unscale(s) }
            }
        }
    }

    /// `p^(k)(x) / k!` and its rounding bound `Σ |c_j| C(j,k) |x|^(j-k)`.
    fn taylor(&self, k: usize, x: Complex<T>) -> (Complex<T>, T) {
        let ax = cabs(x);
        let mut val = czero();
        let mut bound = T::zero();
        for j in (k..self.asc.len()).rev() {
            let c = self.asc[j].scale(binomial::<T>(j, k));
            val = val * x + c;
            bound = bound * ax + cabs(c);
        }
        (val, bound)
    }

    /// Newton on `p^(m-1)/(m-1)!`, which has a simple root at an `m`-fold root of `p`.
    fn newton(&self, m: usize, mut x: Complex<T>) -> Option<Complex<T>> {
        let tiny = T::default_epsilon() * T::lit(4.0);
        let mut best = (x, T::max_value().unwrap_or_else(T::one));
        for _ in 0..NEWTON_MAX_ITERS {
            let (f, bound) = self.taylor(m - 1, x);
            let (g, _) = self.taylor(m, x);
            let resid = cabs(f);
            if resid < best.1 {
                best = (x, resid);
            }
            if resid <= tiny * bound {
                break;
            }
            let df = g.scale(T::from_usize(m).unwrap());
            if df.is_zero() {
                break;
            }
            let step = f / df;
            x -= step;
            if !(cabs(x) < T::lit(1e3)) {
                return None;
            }
            if cabs(step) <= tiny * (T::one() + cabs(x)) {
                break;
            }
        }
        let (f, _) = self.taylor(m - 1, x);
        if cabs(f) > best.1 {
            x = best.0;
        }
        Some(x)
    }

    /// True when orders `0..m` of the Taylor expansion vanish at `x`.
    fn is_multiple_root(&self, m: usize, x: Complex<T>) -> bool {
        let tol = T::lit(MULTIPLICITY_TOL);
        (0..m).all(|k| {
            let (val, bound) = self.taylor(k, x);
            cabs(val) <= tol * bound
        })
    }
}

/// Refines an `m`-fold root near `guess`. Returns the refined point and
/// whether it verified as an `m`-fold root.
pub(crate) fn refine<T>(form: &[Complex<T>], guess: Spinor<T>, m: usize) -> (Spinor<T>, bool)
where
    T: Real,
{
    let (poly, x0) = ChartPoly::for_point(form, guess);
    match poly.newton(m, x0) {
        Some(x) => (poly.to_spinor(x), poly.is_multiple_root(m, x)),
        None => (guess, false),
    }
}

/// Companion-matrix roots of `Σ a_k z^(n-k) w^k`; negligible leading
/// coefficients seed roots at infinity.
pub(crate) fn initial_roots<T: Real>(form: &[Complex<T>]) -> Result<Vec<Spinor<T>>> {
    let n = form.len() - 1;
    let largest = form.iter().map(|a| cabs(*a)).fold(T::zero(), |m, x| m.max(x));
    if !(largest > T::lit(1e-14)) {
        return Err(Error::DegeneratePolynomial);
    }
    let trim = T::lit(LEADING_TRIM) * largest;
    let lead = form.iter().position(|a| cabs(*a) > trim).unwrap_or(n);
    let tail = form.iter().rev().position(|a| cabs(*a) > trim).unwrap_or(0);
    let mut roots = vec![Spinor::infinity(); lead];
    roots.extend(std::iter::repeat_n(Spinor::from_root(czero()), tail));
    let degree = n - lead - tail;
    if degree == 0 {
        return Ok(roots);
    }
    let monic: Vec<Complex<T>> = form[lead..=n - tail].iter().map(|a| *a / form[lead]).collect();
    let eig = companion_eigenvalues(&monic)
        .or_else(|| {
            // Shifted QR can stall when all roots share one modulus (e.g. z^4 + 1);
            // moving the origin breaks the symmetry.
            let radius = root_radius(&monic);
            (1..=3).find_map(|j| {
                let s = cpolar(radius * T::lit(0.3 * j as f64), T::lit(0.7 + 1.9 * j as f64));
                let eig = companion_eigenvalues(&taylor_shift(&monic, s))?;
                Some(eig.into_iter().map(|y| y + s).collect())
            })
        })
        .ok_or_else(|| Error::Numeric("Schur iteration did not converge".into()))?;
    for zeta in eig.iter() {
        if !(zeta.re.is_finite() && zeta.im.is_finite()) {
            return Err(Error::Numeric("non-finite eigenvalue".into()));
        }
        roots.push(Spinor::from_root(*zeta));
    }
    Ok(roots)
}

/// Eigenvalues of the companion matrix of a monic polynomial (descending coefficients).
fn companion_eigenvalues<T: Real>(monic: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
    let degree = monic.len() - 1;
    let mut companion = DMatrix::<Complex<T>>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = cone();
    }
    for i in 0..degree {
        companion[(i, degree - 1)] = -monic[degree - i];
    }
    let eig = Schur::try_new(companion, T::default_epsilon(), SCHUR_ITERS_PER_ROOT * degree + 100)?.eigenvalues()?;
    Some(eig.iter().copied().collect())
}

/// Fujiwara bound on the root moduli of a monic polynomial.
fn root_radius<T: Real>(monic: &[Complex<T>]) -> T {
    let d = monic.len() - 1;
    let r = (1..=d).fold(T::zero(), |m, k| m.max(cabs(monic[k]).powf(T::one() / T::from_usize(k).unwrap())));
    if r > T::zero() {
        r * T::lit(2.0)
    } else {
        T::one()
    }
}

/// Descending coefficients of `p(y + s)`.
fn taylor_shift<T: Real>(coeffs: &[Complex<T>], s: Complex<T>) -> Vec<Complex<T>> {
    let mut c = coeffs.to_vec();
    let d = c.len() - 1;
    for i in 0..d {
        for m in 1..=d - i {
            let prev = c[m - 1];
            c[m] += s * prev;
        }
    }
    c
}

/// A cluster of coincident roots.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RootCluster<T: Real> {
    pub point: Spinor<T>,
    pub multiplicity: usize,
}

fn weighted_center<T: Real>(a: &RootCluster<T>, b: &RootCluster<T>) -> Spinor<T> {
    let (va, vb) = (a.point.to_vec3(), b.point.to_vec3());
    let (wa, wb) = (T::from_usize(a.multiplicity).unwrap(), T::from_usize(b.multiplicity).unwrap());
    let v: [T; 3] = std::array::from_fn(|i| va[i] * wa + vb[i] * wb);
    let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if len > T::lit(1e-12) {
        Spinor::from_vec3(v.map(|c| c / len))
    } else {
        a.point
    }
}

/// Roots of the form grouped into coincident clusters, multiplicities summing to `n`.
pub(crate) fn cluster_roots<T: Real>(form: &[Complex<T>], cluster_tol: T) -> Result<Vec<RootCluster<T>>> {
    let mut groups: Vec<(usize, RootCluster<T>)> = initial_roots(form)?
        .into_iter()
        .enumerate()
        .map(|(id, p)| {
            let (point, _) = refine(form, p, 1);
            (id, RootCluster { point, multiplicity: 1 })
        })
        .collect();
    let mut next_id = groups.len();
    let mut rejected: HashSet<(usize, usize)> = HashSet::new();
    let radius = T::lit(MERGE_RADIUS);

    loop {
        let mut best: Option<(usize, usize, T)> = None;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                if rejected.contains(&(groups[i].0, groups[j].0)) {
                    continue;
                }
                let d = groups[i].1.point.chordal(groups[j].1.point);
                if d < radius && best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
        let Some((i, j, dist)) = best else { break };
        let (a, b) = (groups[i].1, groups[j].1);
        let m = a.multiplicity + b.multiplicity;
        let center = weighted_center(&a, &b);
        let (refined, verified) = refine(form, center, m);
        let accept = dist <= cluster_tol || (verified && refined.chordal(center) < radius);
        if accept {
            let point = if verified || refined.chordal(center) <= cluster_tol { refined } else { center };
            groups.remove(j);
            groups.remove(i);
            groups.push((next_id, RootCluster { point, multiplicity: m }));
            next_id += 1;
        } else {
            rejected.insert((groups[i].0, groups[j].0));
        }
    }
    Ok(groups.into_iter().map(|(_, g)| g).collect())
}
