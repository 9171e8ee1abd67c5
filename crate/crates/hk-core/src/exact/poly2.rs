//! Bivariate piecewise polynomials whose region boundaries are lines of
//! slope 0, +-1, or infinity, and the symbolic pairing of such a kernel
//! against a measure on the second coordinate.

use serde::{Deserialize, Serialize};

use super::measure::Measure;
use super::piecewise::PiecewisePoly;
use super::poly::Poly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// coeff[i][j] * x^i * t^j
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly2 {
    coeffs: Vec<Vec<Rat>>,
}

impl Poly2 {
    pub fn new(coeffs: Vec<Vec<Rat>>) -> Poly2 {
        Poly2 { coeffs }
    }

    pub fn zero() -> Poly2 {
        Poly2 { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Poly2 {
        Poly2 { coeffs: vec![vec![c]] }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn x_deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn t_deg(&self) -> usize {
        self.coeffs
            .iter()
            .map(|r| r.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        let mut d = 0;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    d = d.max(i + j);
                }
            }
        }
        d
    }

    pub fn eval(&self, x: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for row in self.coeffs.iter().rev() {
            let mut inner = Rat::zero();
            for c in row.iter().rev() {
                inner = inner * t + c;
            }
            acc = acc * x + &inner;
        }
        acc
    }

    /// Fix `x`, producing a polynomial in `t`.
    pub fn restrict_x(&self, x: &Rat) -> Poly {
        let n = self.t_deg() + 1;
        let mut out = vec![Rat::zero(); n];
        let mut xp = Rat::one();
        for row in &self.coeffs {
            for (j, c) in row.iter().enumerate() {
                out[j] += &(c * &xp);
            }
            xp *= x;
        }
        Poly::new(out)
    }

    /// Fix `t`, producing a polynomial in `x`.
    pub fn restrict_t(&self, t: &Rat) -> Poly {
        let mut out = Vec::with_capacity(self.x_deg() + 1);
        for row in &self.coeffs {
            let mut acc = Rat::zero();
            for c in row.iter().rev() {
                acc = acc * t + c;
            }
            out.push(acc);
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &Rat) -> Poly2 {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c * k).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let ni = (self.coeffs.len()).max(other.coeffs.len());
        let nj = (self.t_deg() + 1).max(other.t_deg() + 1);
        let mut coeffs = vec![vec![Rat::zero(); nj]; ni];
        for (i, row) in coeffs.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = self.coeff(i, j) + other.coeff(i, j);
            }
        }
        Poly2 { coeffs }
    }

    /// Substitute `x -> a0 + a1*X`, `t -> b0 + b1*T`.
    pub fn compose_affine(&self, a0: &Rat, a1: &Rat, b0: &Rat, b1: &Rat) -> Poly2 {
        // Horner in x over polynomials in t, then substitute t.
        let mut acc = Poly2::zero();
        let xa = Poly2::new(vec![vec![a0.clone()], vec![a1.clone()]]);
        for row in self.coeffs.iter().rev() {
            // row as polynomial in t, substituted
            let row_t = Poly::new(row.clone()).compose_affine(b0, b1);
            let row_2d = Poly2::new(vec![row_t.coeffs().to_vec()]);
            acc = acc.mul(&xa).add(&row_2d);
        }
        acc
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly2::zero();
        }
        let ni = self.x_deg() + other.x_deg() + 1;
        let nj = self.t_deg() + other.t_deg() + 1;
        let mut coeffs = vec![vec![Rat::zero(); nj]; ni];
        for (i1, r1) in self.coeffs.iter().enumerate() {
            for (j1, c1) in r1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (i2, r2) in other.coeffs.iter().enumerate() {
                    for (j2, c2) in r2.iter().enumerate() {
                        coeffs[i1 + i2][j1 + j2] += &(c1 * c2);
                    }
                }
            }
        }
        Poly2 { coeffs }
    }
}

/// `a*x + b*t <= c` with `a, b` in `{-1, 0, 1}`, not both zero.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HalfPlane {
    pub a: i8,
    pub b: i8,
    pub c: Rat,
}

impl HalfPlane {
    pub fn new(a: i8, b: i8, c: Rat) -> Result<HalfPlane> {
        if !(-1..=1).contains(&a) || !(-1..=1).contains(&b) || (a == 0 && b == 0) {
            return Err(Error::Unsupported(format!(
                "boundary slope ({a}, {b}) outside {{0, +-1, inf}}"
            )));
        }
        Ok(HalfPlane { a, b, c })
    }

    pub fn contains(&self, x: &Rat, t: &Rat) -> bool {
        &(&Rat::int(self.a as i64) * x + &Rat::int(self.b as i64) * t) <= &self.c
    }

    /// Substitute the same affine change as `Poly2::compose_affine`; slopes
    /// stay in the allowed set when `a1, b1` are +-1.
    fn compose_affine(&self, a0: &Rat, a1: i8, b0: &Rat, b1: i8) -> HalfPlane {
        let a = self.a * a1;
        let b = self.b * b1;
        let c = &self.c
            - &(&Rat::int(self.a as i64) * a0 + &Rat::int(self.b as i64) * b0);
        HalfPlane { a, b, c }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Region2 {
    pub constraints: Vec<HalfPlane>,
    pub poly: Poly2,
}

impl Region2 {
    pub fn contains(&self, x: &Rat, t: &Rat) -> bool {
        self.constraints.iter().all(|h| h.contains(x, t))
    }

    /// For fixed `x`, the interval of `t` cut out by the constraints.
    /// `None` when empty; the upper end is `None` when unbounded above.
    fn t_interval(&self, x: &Rat, t_min: &Rat) -> Option<(Rat, Option<Rat>)> {
        let mut lo = t_min.clone();
        let mut hi: Option<Rat> = None;
        for h in &self.constraints {
            let rest = &h.c - &(&Rat::int(h.a as i64) * x);
            match h.b {
                0 => {
                    if &(&Rat::int(h.a as i64) * x) > &h.c {
                        return None;
                    }
                }
                1 => {
                    hi = Some(match hi {
                        Some(cur) => cur.min(rest),
                        None => rest,
                    });
                }
                -1 => {
                    let bound = -rest;
                    if bound > lo {
                        lo = bound;
                    }
                }
                _ => unreachable!(),
            }
        }
        match &hi {
            Some(h) if h < &lo => None,
            _ => Some((lo, hi)),
        }
    }

    /// Rewrite a region given in `(u, v)` coordinates in terms of `(x, t)`
    /// with `u = a0 + a1*x`, `v = b0 + b1*t`.
    pub fn compose_affine(&self, a0: &Rat, a1: i8, b0: &Rat, b1: i8) -> Region2 {
        Region2 {
            constraints: self
                .constraints
                .iter()
                .map(|h| h.compose_affine(a0, a1, b0, b1))
                .collect(),
            poly: self
                .poly
                .compose_affine(a0, &Rat::int(a1 as i64), b0, &Rat::int(b1 as i64)),
        }
    }
}

/// Regions tiling `[x_lo, x_hi] x [t_lo, inf)`; continuity across shared
/// edges is an invariant of every constructor in this crate and is checked
/// by `restrict_x`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Piecewise2D {
    pub regions: Vec<Region2>,
    pub x_lo: Rat,
    pub x_hi: Rat,
    pub t_lo: Rat,
}

impl Piecewise2D {
    pub fn eval(&self, x: &Rat, t: &Rat) -> Result<Rat> {
        let mut value: Option<Rat> = None;
        for r in &self.regions {
            if r.contains(x, t) {
                let v = r.poly.eval(x, t);
                match &value {
                    None => value = Some(v),
                    Some(prev) => {
                        if prev != &v {
                            return Err(Error::Internal(format!(
                                "region table disagrees at ({x}, {t}): {prev} vs {v}"
                            )));
                        }
                    }
                }
                if cfg!(not(debug_assertions)) {
                    break; // continuity assumed outside debug builds
                }
            }
        }
        value.ok_or_else(|| Error::Internal(format!("no region contains ({x}, {t})")))
    }

    pub fn max_total_degree(&self) -> usize {
        self.regions
            .iter()
            .map(|r| r.poly.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, k: &Rat) -> Piecewise2D {
        Piecewise2D {
            regions: self
                .regions
                .iter()
                .map(|r| Region2 {
                    constraints: r.constraints.clone(),
                    poly: r.poly.scale(k),
                })
                .collect(),
            x_lo: self.x_lo.clone(),
            x_hi: self.x_hi.clone(),
            t_lo: self.t_lo.clone(),
        }
    }

    /// The function `t -> K(x, t)` as an exact piecewise polynomial. The
    /// final interval must be constant in `t` (our kernels are, beyond the
    /// cap); its value becomes the right extension.
    pub fn restrict_x(&self, x: &Rat) -> Result<PiecewisePoly> {
        if x < &self.x_lo || x > &self.x_hi {
            return Err(Error::Domain(format!("x = {x} outside kernel range")));
        }
        // collect (lo, hi, poly) strips
        let mut strips: Vec<(Rat, Option<Rat>, Poly)> = Vec::new();
        for r in &self.regions {
            if let Some((lo, hi)) = r.t_interval(x, &self.t_lo) {
                if let Some(h) = &hi {
                    if h == &lo {
                        continue; // degenerate slice
                    }
                }
                strips.push((lo, hi, r.poly.restrict_x(x)));
            }
        }
        strips.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        if strips.is_empty() {
            return Err(Error::Internal(format!("vertical line x = {x} misses all regions")));
        }
        let mut breaks = vec![self.t_lo.clone()];
        let mut pieces: Vec<Poly> = Vec::new();
        let mut right = Rat::zero();
        let mut cursor = self.t_lo.clone();
        let mut open = false;
        for (lo, hi, poly) in strips {
            if open {
                continue; // tail already reached
            }
            if lo > cursor {
                return Err(Error::Internal(format!(
                    "gap in region cover at x = {x}, t in ({cursor}, {lo})"
                )));
            }
            match hi {
                Some(h) => {
                    if h <= cursor {
                        continue; // fully overlapped by a previous strip
                    }
                    // continuity check on the overlap point
                    if let Some(prev) = pieces.last() {
                        if prev.eval(&cursor) != poly.eval(&cursor) {
                            return Err(Error::Internal(format!(
                                "region table discontinuous at ({x}, {cursor})"
                            )));
                        }
                    }
                    breaks.push(h.clone());
                    pieces.push(poly);
                    cursor = h;
                }
                None => {
                    // unbounded tail: must be constant in t
                    if poly.degree().unwrap_or(0) > 0 {
                        return Err(Error::Internal(
                            "unbounded region varies with t".into(),
                        ));
                    }
                    if let Some(prev) = pieces.last() {
                        if prev.eval(&cursor) != poly.eval(&cursor) {
                            return Err(Error::Internal(format!(
                                "region table discontinuous at ({x}, {cursor})"
                            )));
                        }
                    }
                    right = poly.coeff(0);
                    open = true;
                }
            }
        }
        if !open {
            return Err(Error::Internal("kernel has no tail region".into()));
        }
        if pieces.is_empty() {
            return Ok(PiecewisePoly::constant(self.t_lo.clone(), right));
        }
        let mut pp = PiecewisePoly::new(breaks, pieces, Rat::zero(), right)?;
        pp.canonicalize();
        Ok(pp)
    }

    /// Candidate x-breakpoints of `x -> \int K(x, t) dmu(t)`: vertical
    /// boundaries, pairwise boundary intersections, and preimages of the
    /// measure's special `t`-locations under the slope-{0,+-1} boundary maps.
    fn slice_breakpoint_candidates(&self, special_t: &[Rat]) -> Vec<Rat> {
        let mut xs = vec![self.x_lo.clone(), self.x_hi.clone()];
        let mut lines: Vec<&HalfPlane> = Vec::new();
        for r in &self.regions {
            for h in &r.constraints {
                lines.push(h);
            }
        }
        for h in &lines {
            if h.b == 0 {
                // vertical line a*x = c
                xs.push(&h.c / &Rat::int(h.a as i64));
            } else if h.a != 0 {
                // t(x) = (c - a x)/b crosses t = s at x = (c - b s)/a
                for s in special_t {
                    let x = &(&h.c - &(&Rat::int(h.b as i64) * s)) / &Rat::int(h.a as i64);
                    xs.push(x);
                }
            }
        }
        // pairwise intersections of non-vertical boundaries
        for (i, h1) in lines.iter().enumerate() {
            if h1.b == 0 {
                continue;
            }
            for h2 in lines.iter().skip(i + 1) {
                if h2.b == 0 {
                    continue;
                }
                // t = (c1 - a1 x)/b1 = (c2 - a2 x)/b2
                let denom = Rat::int((h2.b * h1.a - h1.b * h2.a) as i64);
                if denom.is_zero() {
                    continue;
                }
                let num = &(&h1.c * &Rat::int(h2.b as i64)) - &(&h2.c * &Rat::int(h1.b as i64));
                xs.push(&num / &denom);
            }
        }
        xs.retain(|x| x >= &self.x_lo && x <= &self.x_hi);
        xs.sort();
        xs.dedup();
        xs
    }
}

/// Exact `x -> \int K(x, t) dmu(t)` as a piecewise polynomial on the
/// kernel's x-range: candidate breakpoints from the region geometry, then
/// verified interpolation against the pointwise pairing.
pub fn slice_pair(kernel: &Piecewise2D, mu: &Measure) -> Result<PiecewisePoly> {
    let mut special: Vec<Rat> = mu.atoms().map(|(t, _)| t.clone()).collect();
    special.extend(mu.density().breakpoints().iter().cloned());
    special.push(mu.lo().value.clone());
    special.push(mu.hi().value.clone());
    special.sort();
    special.dedup();
    let breaks = kernel.slice_breakpoint_candidates(&special);
    let deg_bound =
        kernel.max_total_degree() + mu.density().max_piece_degree() + 2;
    let mut eval = |x: &Rat| -> Result<Rat> { mu.pair(&kernel.restrict_x(x)?) };
    let left = eval(&kernel.x_lo.clone())?;
    let right = eval(&kernel.x_hi.clone())?;
    PiecewisePoly::interpolate(breaks, deg_bound, eval, left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::measure::SignedEndpoint;
    use crate::exact::rat::rat;

    /// Toy kernel on [0,1] x [0,inf): K = x*t for x+t <= 1, x*(1-x) for
    /// t >= 1-x (continuous across the seam).
    fn toy_kernel() -> Piecewise2D {
        let tri = Region2 {
            constraints: vec![
                HalfPlane::new(1, 1, Rat::one()).unwrap(),
                HalfPlane::new(-1, 0, Rat::zero()).unwrap(),
                HalfPlane::new(1, 0, Rat::one()).unwrap(),
                HalfPlane::new(0, -1, Rat::zero()).unwrap(),
            ],
            poly: Poly2::new(vec![vec![rat(0, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]]),
        };
        let tail = Region2 {
            constraints: vec![
                HalfPlane::new(-1, -1, rat(-1, 1)).unwrap(),
                HalfPlane::new(-1, 0, Rat::zero()).unwrap(),
                HalfPlane::new(1, 0, Rat::one()).unwrap(),
            ],
            // x - x^2
            poly: Poly2::new(vec![vec![rat(0, 1)], vec![rat(1, 1)], vec![rat(-1, 1)]]),
        };
        Piecewise2D {
            regions: vec![tri, tail],
            x_lo: Rat::zero(),
            x_hi: Rat::one(),
            t_lo: Rat::zero(),
        }
    }

    #[test]
    fn restrict_x_tiles_the_line() {
        let k = toy_kernel();
        let f = k.restrict_x(&rat(1, 3)).unwrap();
        assert_eq!(f.eval(&rat(1, 2)).unwrap(), rat(1, 6));
        assert_eq!(f.eval(&rat(5, 1)).unwrap(), rat(2, 9));
        assert!(f.is_continuous());
    }

    #[test]
    fn slice_pair_atom_only() {
        // mu = delta_{1/2}: slice = K(x, 1/2) = x/2 for x <= 1/2, x - x^2 after
        let k = toy_kernel();
        let mu = Measure::new(
            vec![(rat(1, 2), rat(1, 1))],
            PiecewisePoly::constant(Rat::zero(), Rat::zero()),
            SignedEndpoint::minus(Rat::zero()),
            SignedEndpoint::plus(Rat::one()),
        )
        .unwrap();
        let h = slice_pair(&k, &mu).unwrap();
        assert_eq!(h.eval(&rat(1, 4)).unwrap(), rat(1, 8));
        assert_eq!(h.eval(&rat(3, 4)).unwrap(), rat(3, 16));
        assert!(h.breakpoints().contains(&rat(1, 2)));
    }

    #[test]
    fn slice_pair_zero_measure() {
        let k = toy_kernel();
        let h = slice_pair(&k, &Measure::zero()).unwrap();
        for x in [rat(0, 1), rat(1, 3), rat(1, 1)] {
            assert_eq!(h.eval(&x).unwrap(), Rat::zero());
        }
    }
}
