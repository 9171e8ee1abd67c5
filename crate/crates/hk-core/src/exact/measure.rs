//! Finite measures built from atoms plus a piecewise-polynomial density,
//! with signed-endpoint conventions for the pairing.

use serde::{Deserialize, Serialize};

use super::piecewise::{PiecewisePoly, Side};
use super::poly::Poly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Endpoint tag: `b^-`, `b`, or `b^+`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Null,
    Plus,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SignedEndpoint {
    pub value: Rat,
    pub sign: Sign,
}

impl SignedEndpoint {
    pub fn minus(value: Rat) -> SignedEndpoint {
        SignedEndpoint { value, sign: Sign::Minus }
    }

    pub fn plus(value: Rat) -> SignedEndpoint {
        SignedEndpoint { value, sign: Sign::Plus }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
struct Atom {
    #[serde(rename = "t")]
    location: Rat,
    mass: Rat,
}

/// Atoms plus an absolutely continuous part over a signed interval. This is
/// the shape of `-dh'` for every continuous piecewise-C^2 function handled
/// here; singular-continuous parts are out of scope.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Measure {
    atoms: Vec<Atom>,
    density: PiecewisePoly,
    /// Signed interval the measure lives on. Inputs without it get the hull
    /// of the atoms and density, signed `[lo^-, hi^+]`.
    #[serde(default)]
    domain: Option<(SignedEndpoint, SignedEndpoint)>,
}

impl Measure {
    pub fn new(
        mut atoms: Vec<(Rat, Rat)>,
        density: PiecewisePoly,
        lo: SignedEndpoint,
        hi: SignedEndpoint,
    ) -> Result<Measure> {
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Internal("duplicate atom locations".into()));
        }
        if atoms
            .iter()
            .any(|(t, _)| t < &lo.value || t > &hi.value)
        {
            return Err(Error::Internal("atom outside the measure domain".into()));
        }
        Ok(Measure {
            atoms: atoms
                .into_iter()
                .map(|(location, mass)| Atom { location, mass })
                .collect(),
            density,
            domain: Some((lo, hi)),
        })
    }

    /// The zero measure on `[0, 0]`.
    pub fn zero() -> Measure {
        Measure {
            atoms: vec![],
            density: PiecewisePoly::constant(Rat::zero(), Rat::zero()),
            domain: Some((
                SignedEndpoint::minus(Rat::zero()),
                SignedEndpoint::plus(Rat::zero()),
            )),
        }
    }

    /// `mu = -dh'` of a continuous piecewise-C^2 `h`: density `-(piece)''`
    /// on each piece, and an atom `h'_-(b) - h'_+(b)` at every breakpoint
    /// (the extensions count as constant pieces). Domain `[lo^-, hi^+]`.
    pub fn neg_dh(h: &PiecewisePoly) -> Result<Measure> {
        if !h.is_continuous() {
            return Err(Error::Unsupported(
                "measure of a discontinuous function".into(),
            ));
        }
        let breaks = h.breakpoints().to_vec();
        let mut atoms = Vec::new();
        for b in &breaks {
            let dminus = if b == h.lo() {
                Rat::zero()
            } else {
                h.derivative_side(b, Side::Minus)?
            };
            let dplus = if b == h.hi() {
                Rat::zero()
            } else {
                h.derivative_side(b, Side::Plus)?
            };
            atoms.push((b.clone(), dminus - dplus));
        }
        let density_pieces: Vec<Poly> = h
            .pieces()
            .iter()
            .map(|p| p.derivative().derivative().scale(&Rat::int(-1)))
            .collect();
        let density = if density_pieces.is_empty() {
            PiecewisePoly::constant(h.lo().clone(), Rat::zero())
        } else {
            PiecewisePoly::new(breaks.clone(), density_pieces, Rat::zero(), Rat::zero())?
        };
        Measure::new(
            atoms,
            density,
            SignedEndpoint::minus(h.lo().clone()),
            SignedEndpoint::plus(h.hi().clone()),
        )
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.atoms.iter().map(|a| (&a.location, &a.mass))
    }

    pub fn density(&self) -> &PiecewisePoly {
        &self.density
    }

    fn hull(&self) -> (SignedEndpoint, SignedEndpoint) {
        let mut lo = self.density.lo().clone();
        let mut hi = self.density.hi().clone();
        for a in &self.atoms {
            lo = lo.min(a.location.clone());
            hi = hi.max(a.location.clone());
        }
        (SignedEndpoint::minus(lo), SignedEndpoint::plus(hi))
    }

    pub fn lo(&self) -> SignedEndpoint {
        match &self.domain {
            Some((lo, _)) => lo.clone(),
            None => self.hull().0,
        }
    }

    pub fn hi(&self) -> SignedEndpoint {
        match &self.domain {
            Some((_, hi)) => hi.clone(),
            None => self.hull().1,
        }
    }

    pub fn is_atomic(&self) -> bool {
        self.density.pieces().iter().all(|p| p.is_zero())
    }

    fn atom_included(&self, location: &Rat) -> bool {
        let (lo, hi) = (self.lo(), self.hi());
        if location == &lo.value {
            return lo.sign == Sign::Minus;
        }
        if location == &hi.value {
            return hi.sign == Sign::Plus;
        }
        location > &lo.value && location < &hi.value
    }

    /// Riemann-Stieltjes pairing `\int f dmu`:
    /// atoms within the signed domain weighted by `f`, plus the exact
    /// integral of `f * density`. `f` must be continuous on the domain.
    pub fn pair(&self, f: &PiecewisePoly) -> Result<Rat> {
        if !f.is_continuous_interior() {
            return Err(Error::Unsupported(
                "pairing against a discontinuous function".into(),
            ));
        }
        let mut total = Rat::zero();
        for a in &self.atoms {
            if self.atom_included(&a.location) && !a.mass.is_zero() {
                total += &(&a.mass * &f.eval(&a.location)?);
            }
        }
        total += &product_integral(f, &self.density, &self.lo().value, &self.hi().value)?;
        Ok(total)
    }

    /// Total mass over the signed domain.
    pub fn total_mass(&self) -> Result<Rat> {
        let lo = self.lo().value.clone();
        let hi = self.hi().value.clone();
        let one = if lo < hi {
            PiecewisePoly::new(
                vec![lo, hi],
                vec![Poly::constant(Rat::one())],
                Rat::one(),
                Rat::one(),
            )?
        } else {
            PiecewisePoly::constant(lo, Rat::one())
        };
        self.pair(&one)
    }

    /// `\int t dmu(t)` over the signed domain.
    pub fn first_moment(&self) -> Result<Rat> {
        let lo = self.lo().value.clone();
        let hi = self.hi().value.clone();
        let id = if lo < hi {
            PiecewisePoly::new(vec![lo, hi], vec![Poly::x()], Rat::zero(), Rat::zero())?
        } else {
            PiecewisePoly::constant(lo.clone(), lo)
        };
        self.pair(&id)
    }

    pub fn scale(&self, k: &Rat) -> Measure {
        Measure {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { location: a.location.clone(), mass: &a.mass * k })
                .collect(),
            density: self.density.scale(k),
            domain: self.domain.clone(),
        }
    }

    /// Largest location carrying mass (atom with nonzero mass or nonzero
    /// density piece); `None` for the zero measure.
    pub fn support_sup(&self) -> Option<Rat> {
        let mut best: Option<Rat> = None;
        for a in &self.atoms {
            if !a.mass.is_zero() {
                best = Some(match best {
                    Some(b) => b.max(a.location.clone()),
                    None => a.location.clone(),
                });
            }
        }
        for (i, p) in self.density.pieces().iter().enumerate() {
            if !p.is_zero() {
                let hi = self.density.breakpoints()[i + 1].clone();
                best = Some(match best {
                    Some(b) => b.max(hi),
                    None => hi,
                });
            }
        }
        best
    }
}

/// Exact `\int_a^b f * g dx` for piecewise polynomials (a Riemann integral,
/// so endpoint signs are irrelevant).
pub fn product_integral(f: &PiecewisePoly, g: &PiecewisePoly, a: &Rat, b: &Rat) -> Result<Rat> {
    if a > b {
        return Err(Error::Domain("reversed bounds".into()));
    }
    if a == b {
        return Ok(Rat::zero());
    }
    let mut cuts: Vec<Rat> = vec![a.clone(), b.clone()];
    for c in f.breakpoints().iter().chain(g.breakpoints()) {
        if c > a && c < b {
            cuts.push(c.clone());
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut total = Rat::zero();
    for w in cuts.windows(2) {
        let mid = &(&w[0] + &w[1]) / &Rat::int(2);
        let fp = piece_at(f, &mid);
        let gp = piece_at(g, &mid);
        total += &fp.mul(&gp).definite_integral(&w[0], &w[1]);
    }
    Ok(total)
}

fn piece_at(f: &PiecewisePoly, x: &Rat) -> Poly {
    if x < f.lo() {
        Poly::constant(f.left_extension().clone())
    } else if x > f.hi() {
        Poly::constant(f.right_extension().clone())
    } else {
        // interior of some piece
        let idx = f.breakpoints().partition_point(|b| b < x);
        f.pieces()[idx.saturating_sub(1).min(f.pieces().len() - 1)].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::piecewise::unit_ramp;
    use crate::exact::rat::rat;

    fn quadric_h() -> PiecewisePoly {
        PiecewisePoly::new(
            vec![rat(0, 1), rat(1, 1)],
            vec![Poly::new(vec![rat(0, 1), rat(2, 1), rat(-1, 1)])],
            Rat::zero(),
            Rat::one(),
        )
        .unwrap()
    }

    #[test]
    fn neg_dh_of_pure_power() {
        // h = min(nt, 1) -> atoms {(0,-n), (1/n, n)}, zero density
        let n = 4i64;
        let mu = Measure::neg_dh(&unit_ramp(&rat(1, n))).unwrap();
        let atoms: Vec<_> = mu.atoms().map(|(t, m)| (t.clone(), m.clone())).collect();
        assert_eq!(
            atoms,
            vec![(rat(0, 1), rat(-n, 1)), (rat(1, n), rat(n, 1))]
        );
        assert!(mu.is_atomic());
    }

    #[test]
    fn neg_dh_of_quadric() {
        // h = 2t - t^2 -> density 2 on (0,1), atoms {(0,-2),(1,0)}
        let mu = Measure::neg_dh(&quadric_h()).unwrap();
        let atoms: Vec<_> = mu.atoms().map(|(t, m)| (t.clone(), m.clone())).collect();
        assert_eq!(atoms, vec![(rat(0, 1), rat(-2, 1)), (rat(1, 1), rat(0, 1))]);
        assert_eq!(mu.density().eval(&rat(1, 3)).unwrap(), rat(2, 1));
    }

    #[test]
    fn total_mass_vanishes_and_first_moment_is_limit() {
        for h in [unit_ramp(&rat(1, 3)), unit_ramp(&rat(1, 7)), quadric_h()] {
            let mu = Measure::neg_dh(&h).unwrap();
            assert_eq!(mu.total_mass().unwrap(), Rat::zero());
            assert_eq!(mu.first_moment().unwrap(), Rat::one());
        }
    }

    #[test]
    fn pair_atoms_with_identity() {
        // f(t)=t against n*delta_{1/n} - n*delta_0 -> 1
        let n = 5i64;
        let mu = Measure::new(
            vec![(rat(0, 1), rat(-n, 1)), (rat(1, n), rat(n, 1))],
            PiecewisePoly::constant(Rat::zero(), Rat::zero()),
            SignedEndpoint::minus(Rat::zero()),
            SignedEndpoint::plus(Rat::one()),
        )
        .unwrap();
        let id = PiecewisePoly::new(
            vec![rat(0, 1), rat(1, 1)],
            vec![Poly::x()],
            Rat::zero(),
            Rat::one(),
        )
        .unwrap();
        assert_eq!(mu.pair(&id).unwrap(), Rat::one());
    }

    #[test]
    fn endpoint_signs_control_atom_inclusion() {
        let atom_at_one = |sign| {
            Measure::new(
                vec![(rat(1, 1), rat(1, 1))],
                PiecewisePoly::constant(Rat::zero(), Rat::zero()),
                SignedEndpoint::minus(Rat::zero()),
                SignedEndpoint { value: Rat::one(), sign },
            )
            .unwrap()
        };
        assert_eq!(atom_at_one(Sign::Plus).total_mass().unwrap(), Rat::one());
        assert_eq!(atom_at_one(Sign::Minus).total_mass().unwrap(), Rat::zero());
        assert_eq!(atom_at_one(Sign::Null).total_mass().unwrap(), Rat::zero());
    }

    #[test]
    fn json_round_trip_is_identity() {
        let mu = Measure::neg_dh(&quadric_h()).unwrap();
        let js = serde_json::to_string(&mu).unwrap();
        let back: Measure = serde_json::from_str(&js).unwrap();
        assert_eq!(back, mu);
    }
}
