//! Continuous and piecewise-discontinuous polynomial functions on an interval.

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Minus,
    Plus,
}

/// Piecewise polynomial on `[b_0, b_k]` with constant extensions outside.
/// Piece `i` lives on `[breaks[i], breaks[i+1]]`; values at shared breakpoints
/// may disagree (the function is then discontinuous there and plain `eval`
/// refuses the ambiguity).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PiecewisePoly {
    #[serde(rename = "breakpoints")]
    breaks: Vec<Rat>,
    pieces: Vec<Poly>,
    left: Rat,
    right: Rat,
}

impl PiecewisePoly {
    pub fn new(breaks: Vec<Rat>, pieces: Vec<Poly>, left: Rat, right: Rat) -> Result<PiecewisePoly> {
        if breaks.is_empty() {
            return Err(Error::Internal("piecewise function needs a breakpoint".into()));
        }
        if pieces.len() + 1 != breaks.len() {
            return Err(Error::Internal(format!(
                "{} breakpoints need {} pieces, got {}",
                breaks.len(),
                breaks.len() - 1,
                pieces.len()
            )));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Internal("breakpoints must be strictly increasing".into()));
        }
        Ok(PiecewisePoly { breaks, pieces, left, right })
    }

    /// Constant function, represented on the degenerate domain `[at, at]`.
    pub fn constant(at: Rat, value: Rat) -> PiecewisePoly {
        PiecewisePoly {
            breaks: vec![at],
            pieces: vec![],
            left: value.clone(),
            right: value,
        }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn left_extension(&self) -> &Rat {
        &self.left
    }

    pub fn right_extension(&self) -> &Rat {
        &self.right
    }

    pub fn lo(&self) -> &Rat {
        self.breaks.first().unwrap()
    }

    pub fn hi(&self) -> &Rat {
        self.breaks.last().unwrap()
    }

    pub fn max_piece_degree(&self) -> usize {
        self.pieces
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }

    /// Index of a piece whose closed interval contains `x`, preferring the one
    /// on the requested side of a breakpoint.
    fn piece_index(&self, x: &Rat, side: Side) -> Option<usize> {
        if self.pieces.is_empty() || x < self.lo() || x > self.hi() {
            return None;
        }
        // partition_point: first break > x
        let up = self.breaks.partition_point(|b| b <= x);
        match side {
            Side::Plus => {
                if up <= self.pieces.len() {
                    Some(up.saturating_sub(1).min(self.pieces.len() - 1))
                } else {
                    Some(self.pieces.len() - 1)
                }
            }
            Side::Minus => {
                let down = self.breaks.partition_point(|b| b < x);
                if down == 0 {
                    Some(0)
                } else {
                    Some((down - 1).min(self.pieces.len() - 1))
                }
            }
        }
    }

    /// One-sided value; defined everywhere (extensions outside the domain).
    pub fn eval_side(&self, x: &Rat, side: Side) -> Rat {
        if x < self.lo() || (x == self.lo() && side == Side::Minus && self.pieces.is_empty()) {
            return self.left.clone();
        }
        if x > self.hi() {
            return self.right.clone();
        }
        if x == self.lo() && side == Side::Minus {
            // approach from the left extension, but the function value at the
            // endpoint itself belongs to the first piece; the limit is the
            // extension constant
            return self.left.clone();
        }
        if x == self.hi() && side == Side::Plus {
            return self.right.clone();
        }
        match self.piece_index(x, side) {
            Some(i) => self.pieces[i].eval(x),
            None => self.left.clone(), // degenerate single-point domain
        }
    }

    /// Value at `x`; errors when two pieces (or a piece and an extension)
    /// disagree there.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        if x < self.lo() {
            return Ok(self.left.clone());
        }
        if x > self.hi() {
            return Ok(self.right.clone());
        }
        if self.pieces.is_empty() {
            if self.left == self.right {
                return Ok(self.left.clone());
            }
            return Err(Error::AmbiguousBreakpoint(x.to_string()));
        }
        let mut candidates: Vec<Rat> = Vec::new();
        let lo_idx = self.piece_index(x, Side::Minus).unwrap();
        let hi_idx = self.piece_index(x, Side::Plus).unwrap();
        candidates.push(self.pieces[lo_idx].eval(x));
        if hi_idx != lo_idx {
            candidates.push(self.pieces[hi_idx].eval(x));
        }
        if candidates.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::AmbiguousBreakpoint(x.to_string()));
        }
        Ok(candidates.pop().unwrap())
    }

    /// Exact Riemann integral over `[a, b]`, `a <= b`, both within the domain
    /// (extensions count as constant pieces).
    pub fn integral(&self, a: &Rat, b: &Rat) -> Result<Rat> {
        if a > b {
            return Err(Error::Domain(format!("integral bounds reversed: {a} > {b}")));
        }
        let mut total = Rat::zero();
        // left extension part
        let lo = self.lo().clone();
        let hi = self.hi().clone();
        if a < &lo {
            let end = if b < &lo { b.clone() } else { lo.clone() };
            total += &(&self.left * &(&end - a));
        }
        if b > &hi {
            let start = if a > &hi { a.clone() } else { hi.clone() };
            total += &(&self.right * &(b - &start));
        }
        for (i, piece) in self.pieces.iter().enumerate() {
            let plo = &self.breaks[i];
            let phi = &self.breaks[i + 1];
            let lo_clip = if a > plo { a.clone() } else { plo.clone() };
            let hi_clip = if b < phi { b.clone() } else { phi.clone() };
            if lo_clip < hi_clip {
                total += &piece.definite_integral(&lo_clip, &hi_clip);
            }
        }
        Ok(total)
    }

    /// One-sided derivative of the adjacent piece (or extension).
    pub fn derivative_side(&self, x: &Rat, side: Side) -> Result<Rat> {
        if x < self.lo() || x > self.hi() {
            return Ok(Rat::zero()); // constant extensions
        }
        if x == self.lo() && side == Side::Minus {
            return Err(Error::Domain(format!("no left derivative at left endpoint {x}")));
        }
        if x == self.hi() && side == Side::Plus {
            return Err(Error::Domain(format!("no right derivative at right endpoint {x}")));
        }
        match self.piece_index(x, side) {
            Some(i) => Ok(self.pieces[i].derivative().eval(x)),
            None => Ok(Rat::zero()),
        }
    }

    /// Continuity across interior breakpoints (what the Stieltjes pairing
    /// needs: the extensions beyond the domain are irrelevant there).
    pub fn is_continuous_interior(&self) -> bool {
        for i in 1..self.breaks.len().saturating_sub(1) {
            let b = &self.breaks[i];
            if self.pieces[i - 1].eval(b) != self.pieces[i].eval(b) {
                return false;
            }
        }
        true
    }

    /// Continuity as a function on the whole line: interior breakpoints agree
    /// and the domain endpoints agree with their constant extensions.
    pub fn is_continuous(&self) -> bool {
        if self.pieces.is_empty() {
            return self.left == self.right;
        }
        self.is_continuous_interior()
            && self.pieces[0].eval(self.lo()) == self.left
            && self.pieces.last().unwrap().eval(self.hi()) == self.right
    }

    /// Merge adjacent identical pieces and drop the breakpoints between them.
    pub fn canonicalize(&mut self) {
        if self.pieces.is_empty() {
            return;
        }
        let mut breaks = vec![self.breaks[0].clone()];
        let mut pieces: Vec<Poly> = vec![];
        for (i, piece) in self.pieces.iter().enumerate() {
            if let Some(last) = pieces.last() {
                if last == piece {
                    continue; // extend previous piece over this interval
                }
            }
            if !pieces.is_empty() {
                breaks.push(self.breaks[i].clone());
            }
            pieces.push(piece.clone());
        }
        breaks.push(self.breaks.last().unwrap().clone());
        self.breaks = breaks;
        self.pieces = pieces;
    }

    pub fn scale(&self, k: &Rat) -> PiecewisePoly {
        PiecewisePoly {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(k)).collect(),
            left: &self.left * k,
            right: &self.right * k,
        }
    }

    /// Build a piecewise polynomial from candidate breakpoints and an exact
    /// pointwise evaluator. Each piece is interpolated at `deg_bound + 1`
    /// interior samples and verified at three more; the candidate list may be
    /// a superset of the true breakpoints.
    pub fn interpolate(
        breaks: Vec<Rat>,
        deg_bound: usize,
        mut eval: impl FnMut(&Rat) -> Result<Rat>,
        left: Rat,
        right: Rat,
    ) -> Result<PiecewisePoly> {
        let mut breaks = breaks;
        breaks.sort();
        breaks.dedup();
        if breaks.len() < 2 {
            return Err(Error::Internal("interpolation needs an interval".into()));
        }
        let mut pieces = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let width = b - a;
            let n = deg_bound + 1;
            // samples strictly inside (a, b), at odd multiples of width/(2n+3)
            // to dodge structured midpoints
            let step = &width / &Rat::int(2 * n as i64 + 3);
            let mut pts = Vec::with_capacity(n);
            for k in 0..n {
                let x = a + &(&step * &Rat::int(2 * k as i64 + 3));
                let y = eval(&x)?;
                pts.push((x, y));
            }
            let piece = Poly::lagrange(&pts);
            // verify at extra interior points and at both endpoints
            for k in [0usize, 1, 2] {
                let x = a + &(&step * &Rat::int(2 * k as i64 + 2));
                if piece.eval(&x) != eval(&x)? {
                    return Err(Error::Internal(format!(
                        "interpolation on [{a}, {b}] missed a breakpoint (mismatch at {x})"
                    )));
                }
            }
            for x in [a, b] {
                if piece.eval(x) != eval(x)? {
                    return Err(Error::Internal(format!(
                        "interpolated piece on [{a}, {b}] is discontinuous at {x}"
                    )));
                }
            }
            pieces.push(piece);
        }
        let mut pp = PiecewisePoly::new(breaks, pieces, left, right)?;
        pp.canonicalize();
        Ok(pp)
    }
}

/// `min(n*t, 1)`-style helper: continuous piecewise-linear ramp from `(0,0)`
/// to `(cap_at, 1)`, then constant `1`.
pub fn unit_ramp(cap_at: &Rat) -> PiecewisePoly {
    PiecewisePoly::new(
        vec![Rat::zero(), cap_at.clone()],
        vec![Poly::new(vec![Rat::zero(), cap_at.recip()])],
        Rat::zero(),
        Rat::one(),
    )
    .expect("valid ramp")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    /// h(t) = min(3t, 1) on [0, 1/3].
    fn ramp3() -> PiecewisePoly {
        unit_ramp(&rat(1, 3))
    }

    /// h(t) = 2t - t^2 on [0,1], constant extensions 0 and 1.
    fn quadric() -> PiecewisePoly {
        PiecewisePoly::new(
            vec![rat(0, 1), rat(1, 1)],
            vec![Poly::new(vec![rat(0, 1), rat(2, 1), rat(-1, 1)])],
            Rat::zero(),
            Rat::one(),
        )
        .unwrap()
    }

    #[test]
    fn eval_kink_value() {
        // min(3t,1) at t=1/3 -> 1
        assert_eq!(ramp3().eval(&rat(1, 3)).unwrap(), Rat::one());
        // h_xy(1/2) = 3/4
        assert_eq!(quadric().eval(&rat(1, 2)).unwrap(), rat(3, 4));
    }

    #[test]
    fn eval_rejects_ambiguous_breakpoint() {
        // derivative of min(3t,1): 3 then 0, discontinuous at 1/3
        let dh = PiecewisePoly::new(
            vec![rat(0, 1), rat(1, 3), rat(1, 1)],
            vec![Poly::constant(rat(3, 1)), Poly::zero()],
            Rat::zero(),
            Rat::zero(),
        )
        .unwrap();
        assert!(matches!(
            dh.eval(&rat(1, 3)),
            Err(Error::AmbiguousBreakpoint(_))
        ));
        assert_eq!(dh.eval_side(&rat(1, 3), Side::Minus), rat(3, 1));
        assert_eq!(dh.eval_side(&rat(1, 3), Side::Plus), Rat::zero());
    }

    #[test]
    fn integrals() {
        assert_eq!(
            quadric().integral(&Rat::zero(), &Rat::one()).unwrap(),
            rat(2, 3)
        );
        let zero = PiecewisePoly::new(
            vec![rat(0, 1), rat(1, 1)],
            vec![Poly::zero()],
            Rat::zero(),
            Rat::zero(),
        )
        .unwrap();
        assert_eq!(zero.integral(&Rat::zero(), &Rat::one()).unwrap(), Rat::zero());
        // min(2t,1) over [0,1]: split at 1/2
        let r = unit_ramp(&rat(1, 2));
        assert_eq!(r.integral(&Rat::zero(), &Rat::one()).unwrap(), rat(3, 4));
    }

    #[test]
    fn one_sided_derivatives() {
        let h = ramp3();
        assert_eq!(h.derivative_side(&Rat::zero(), Side::Plus).unwrap(), rat(3, 1));
        assert_eq!(h.derivative_side(&rat(1, 3), Side::Minus).unwrap(), rat(3, 1));
        // beyond the kink the right extension is flat
        assert_eq!(h.derivative_side(&rat(1, 2), Side::Plus).unwrap(), Rat::zero());
        assert_eq!(
            quadric().derivative_side(&Rat::one(), Side::Minus).unwrap(),
            Rat::zero()
        );
    }

    #[test]
    fn canonicalize_merges_equal_pieces() {
        let p = Poly::new(vec![rat(1, 1), rat(2, 1)]);
        let mut h = PiecewisePoly::new(
            vec![rat(0, 1), rat(1, 2), rat(1, 1)],
            vec![p.clone(), p.clone()],
            rat(1, 1),
            rat(3, 1),
        )
        .unwrap();
        h.canonicalize();
        assert_eq!(h.breakpoints().len(), 2);
        assert_eq!(h.pieces().len(), 1);
    }

    #[test]
    fn interpolate_recovers_min() {
        // reconstruct min(2t,1) from pointwise values with a spurious
        // extra candidate breakpoint
        let target = unit_ramp(&rat(1, 2));
        let got = PiecewisePoly::interpolate(
            vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1)],
            3,
            |x| target.eval(x),
            Rat::zero(),
            Rat::one(),
        )
        .unwrap();
        assert_eq!(got.breakpoints().len(), 3); // 1/4 merged away
        assert_eq!(got.eval(&rat(1, 3)).unwrap(), rat(2, 3));
        assert_eq!(got.eval(&rat(3, 4)).unwrap(), Rat::one());
    }

    #[test]
    fn interpolate_detects_missing_breakpoint() {
        let target = unit_ramp(&rat(1, 2));
        let r = PiecewisePoly::interpolate(
            vec![rat(0, 1), rat(1, 1)],
            0, // claim it is constant: must fail verification
            |x| target.eval(x),
            Rat::zero(),
            Rat::one(),
        );
        assert!(r.is_err());
    }
}
