//! Monotone dyadic approximation of positive vectors by scalar step
//! functions.

use std::sync::Arc;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::space::{Component, FiniteSpace, Vector};

/// `Σ cᵢ pᵢ` with real coefficients and pairwise disjoint components.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizedStep {
    space: Arc<FiniteSpace>,
    terms: Vec<(Rational, Component)>,
}

impl RealizedStep {
    pub fn new(space: &Arc<FiniteSpace>, terms: Vec<(Rational, Component)>) -> Result<Self> {
        let mut seen = 0u64;
        for (_, p) in &terms {
            if p.space().as_ref() != space.as_ref() {
                return Err(Error::SpaceMismatch);
            }
            if seen & p.mask() != 0 {
                return Err(Error::InvalidPartition(
                    "step function components overlap".into(),
                ));
            }
            seen |= p.mask();
        }
        Ok(Self {
            space: space.clone(),
            terms,
        })
    }

    /// Groups the nonzero values of `f` into level sets.
    pub fn from_levels(f: &Vector) -> Self {
        let mut terms: Vec<(Rational, u64)> = Vec::new();
        for (i, v) in f.values().iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match terms.iter_mut().find(|(c, _)| c == v) {
                Some((_, mask)) => *mask |= 1 << i,
                None => terms.push((v.clone(), 1 << i)),
            }
        }
        terms.sort_by_key(|(_, m)| *m);
        let space = f.space().clone();
        let terms = terms
            .into_iter()
            .map(|(c, m)| (c, Component::from_mask(&space, m).expect("mask fits")))
            .collect();
        Self { space, terms }
    }

    pub fn terms(&self) -> &[(Rational, Component)] {
        &self.terms
    }

    pub fn realize(&self) -> Vector {
        let mut out = Vector::zero(&self.space);
        for (c, p) in &self.terms {
            out = out + p.to_vector().scale(c);
        }
        out
    }
}

/// The dyadic sequence `s_1 ≤ … ≤ s_k ≤ f` with `f - s_j ≤ 2^{-j} c u`.
///
/// `c` is the least rational with `f ≤ c u`. At level `j` each point takes
/// the value `⌊2^j f/(c u)⌋ · c u / 2^j`, so for `u = e` this is the usual
/// grid `⌊2^j f/c⌋ c/2^j`.
pub fn freudenthal_sequence(f: &Vector, u: &Vector, steps: u32) -> Result<Vec<RealizedStep>> {
    if let Some(point) = f.first_negative() {
        return Err(Error::NotPositive { point });
    }
    if let Some(point) = u.first_negative() {
        return Err(Error::NotPositive { point });
    }
    if !f.same_space(u) {
        return Err(Error::SpaceMismatch);
    }
    let c = domination_constant(f, u)?;
    Ok((1..=steps)
        .map(|j| RealizedStep::from_levels(&dyadic_level(f, u, &c, j)))
        .collect())
}

/// Least `c ≥ 0` with `f ≤ c u`, for `f, u ≥ 0`.
pub fn domination_constant(f: &Vector, u: &Vector) -> Result<Rational> {
    let mut c = rational::zero();
    for (i, (fv, uv)) in f.values().iter().zip(u.values()).enumerate() {
        if uv.is_zero() {
            if !fv.is_zero() {
                return Err(Error::NotDominated { point: i });
            }
            continue;
        }
        c = rational::max(&c, &(fv / uv));
    }
    Ok(c)
}

fn dyadic_level(f: &Vector, u: &Vector, c: &Rational, j: u32) -> Vector {
    if c.is_zero() {
        return Vector::zero(f.space());
    }
    let scale = rational::two_pow(j);
    let step = Vector::from_fn(f.space(), |i| {
        let uv = u.get(i);
        if !uv.is_positive() {
            return rational::zero();
        }
        let cu = c * uv;
        rational::floor(&(f.get(i) * &scale / &cu)) * cu / &scale
    });
    step.inf(f).pos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::space::unit;

    #[test]
    fn unit_is_hit_exactly() {
        let s = FiniteSpace::uniform(3).unwrap();
        let e = unit(&s);
        let seq = freudenthal_sequence(&e, &e, 3).unwrap();
        assert_eq!(seq[2].realize(), e);
    }

    #[test]
    fn dyadic_floor_oracle() {
        let s = FiniteSpace::uniform(3).unwrap();
        let e = unit(&s);
        let f = Vector::new(&s, vec![rat(1, 3), rat(2, 3), int(1)]).unwrap();
        let seq = freudenthal_sequence(&f, &e, 2).unwrap();
        // ⌊4 f(ω)⌋ / 4 per point.
        let oracle = Vector::from_fn(&s, |i| rational::floor(&(f.get(i) * int(4))) / int(4));
        assert_eq!(oracle, Vector::new(&s, vec![rat(1, 4), rat(1, 2), int(1)]).unwrap());
        assert_eq!(seq[1].realize(), oracle);
        assert!((&f - &seq[1].realize()).le(&e.scale(&rat(1, 4))));
    }

    #[test]
    fn zero_stays_zero() {
        let s = FiniteSpace::uniform(2).unwrap();
        let seq = freudenthal_sequence(&Vector::zero(&s), &unit(&s), 4).unwrap();
        assert!(seq.iter().all(|st| st.realize().is_zero() && st.terms().is_empty()));
    }

    #[test]
    fn undominated_is_rejected() {
        let s = FiniteSpace::uniform(2).unwrap();
        let f = Vector::from_ints(&s, &[1, 1]);
        let u = Vector::from_ints(&s, &[1, 0]);
        assert_eq!(
            freudenthal_sequence(&f, &u, 2),
            Err(Error::NotDominated { point: 1 })
        );
    }

    #[test]
    fn monotone_with_halving_error_for_general_bound() {
        let s = FiniteSpace::uniform(4).unwrap();
        let f = Vector::new(&s, vec![rat(7, 3), rat(1, 5), int(0), rat(9, 4)]).unwrap();
        let u = Vector::new(&s, vec![int(1), rat(1, 2), int(0), int(3)]).unwrap();
        let c = domination_constant(&f, &u).unwrap();
        let seq = freudenthal_sequence(&f, &u, 6).unwrap();
        let mut prev = Vector::zero(&s);
        for (j, st) in seq.iter().enumerate() {
            let sj = st.realize();
            assert!(prev.le(&sj));
            assert!(sj.le(&f));
            let bound = u.scale(&(&c / rational::two_pow(j as u32 + 1)));
            assert!((&f - &sj).le(&bound));
            prev = sj;
        }
    }
}
