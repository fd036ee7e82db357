//! `R(T)`-valued charges on the components of a weak order unit.
//!
//! A charge is finitely additive, so on a finite model it is determined by
//! its values on the atoms `1_{{ω}}`. [`Charge`] stores exactly those values;
//! [`RawChargeTable`] holds a value for every component and is only used as
//! validation input. Order boundedness is automatic here: every charge is
//! bounded by `Σ_ω |μ(1_{{ω}})|` on every component.
//!
//! The lattice operations are atomwise. The defining suprema, such as
//! `(μ ∨ ν)(p) = sup{μ(q) + ν(p - q) : q ≤ p}`, are available in [`brute`]
//! for cross-checking.

use std::sync::Arc;

use crate::condexp::{CondExp, RtVector};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{self, Component, Vector};

/// Default cap on the number of points for [`Charge::variation_norm`].
pub const VARIATION_NORM_MAX_POINTS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Charge {
    cond_exp: Arc<CondExp>,
    /// The weak order unit whose components form the domain. Components of
    /// `unit` are `unit · 1_A` and are addressed by their support `A`.
    unit: Vector,
    atoms: Vec<RtVector>,
}

/// Results of [`charge_lattice`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeLatticeOps {
    pub sup: Charge,
    pub inf: Charge,
    pub abs: Charge,
    pub pos: Charge,
    pub neg: Charge,
}

/// A partition of `e` attaining the variation norm, with the norm itself.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationNorm {
    pub value: RtVector,
    pub witness: Vec<Component>,
    pub partitions_examined: usize,
}

impl Charge {
    /// Builds a charge from its atom values, which must be block-constant.
    pub fn new(t: &Arc<CondExp>, atoms: Vec<Vector>) -> Result<Self> {
        if atoms.len() != t.size() {
            return Err(Error::LengthMismatch {
                expected: t.size(),
                got: atoms.len(),
            });
        }
        let atoms = atoms
            .into_iter()
            .map(|a| t.range_element(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_atoms(t, atoms))
    }

    pub fn from_atoms(t: &Arc<CondExp>, atoms: Vec<RtVector>) -> Self {
        assert_eq!(atoms.len(), t.size());
        Self {
            cond_exp: t.clone(),
            unit: space::unit(t.space()),
            atoms,
        }
    }

    pub fn zero(t: &Arc<CondExp>) -> Self {
        Self::from_atoms(t, vec![t.zero(); t.size()])
    }

    /// `μ(p) = (Σ_{ω∈p} weight(ω)) e`.
    pub fn from_weights(t: &Arc<CondExp>) -> Self {
        let e = t.unit();
        let atoms = t.space().weights().iter().map(|w| e.scale(w)).collect();
        Self::from_atoms(t, atoms)
    }

    /// `μ(p) = T(p)`.
    pub fn from_cond_exp(t: &Arc<CondExp>) -> Self {
        let atoms = (0..t.size())
            .map(|i| t.apply(&Component::atom(t.space(), i).to_vector()))
            .collect();
        Self::from_atoms(t, atoms)
    }

    pub fn cond_exp(&self) -> &Arc<CondExp> {
        &self.cond_exp
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn atoms(&self) -> &[RtVector] {
        &self.atoms
    }

    pub fn atom(&self, point: usize) -> &RtVector {
        &self.atoms[point]
    }

    fn with_atoms(&self, atoms: Vec<RtVector>) -> Self {
        Self {
            cond_exp: self.cond_exp.clone(),
            unit: self.unit.clone(),
            atoms,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.cond_exp.same(&other.cond_exp) {
            return Err(Error::CondExpMismatch);
        }
        if self.unit != other.unit {
            return Err(Error::UnitMismatch);
        }
        Ok(())
    }

    fn zip_atoms(&self, other: &Self, f: impl Fn(&RtVector, &RtVector) -> RtVector) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_atoms(
            self.atoms
                .iter()
                .zip(&other.atoms)
                .map(|(a, b)| f(a, b))
                .collect(),
        ))
    }

    fn map_atoms(&self, f: impl Fn(&RtVector) -> RtVector) -> Self {
        self.with_atoms(self.atoms.iter().map(f).collect())
    }

    /// `μ(p) = Σ_{ω∈p} μ(1_{{ω}})`.
    pub fn eval(&self, p: &Component) -> Result<RtVector> {
        if p.space().as_ref() != self.cond_exp.space().as_ref() {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.eval_mask(p.mask()))
    }

    pub(crate) fn eval_mask(&self, mask: u64) -> RtVector {
        let mut out = self.cond_exp.zero();
        for (i, a) in self.atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out = &out + a;
            }
        }
        out
    }

    /// `μ(unit)`.
    pub fn total(&self) -> RtVector {
        self.eval_mask(self.cond_exp.space().full_mask())
    }

    pub fn table(&self) -> RawChargeTable {
        let mut table = RawChargeTable::new(&self.cond_exp);
        for p in space::components(self.cond_exp.space()) {
            let v = self.eval_mask(p.mask()).into_vector();
            table.set(&p, v);
        }
        table
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_atoms(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_atoms(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map_atoms(|a| -a)
    }

    /// The `R(T)`-module action `(gμ)(p) = g · μ(p)`.
    pub fn scale(&self, g: &RtVector) -> Self {
        self.map_atoms(|a| g * a)
    }

    pub fn scale_scalar(&self, c: &Rational) -> Self {
        self.map_atoms(|a| a.scale(c))
    }

    pub fn sup(&self, other: &Self) -> Result<Self> {
        self.zip_atoms(other, |a, b| a.sup(b))
    }

    pub fn inf(&self, other: &Self) -> Result<Self> {
        self.zip_atoms(other, |a, b| a.inf(b))
    }

    pub fn abs(&self) -> Self {
        self.map_atoms(|a| a.abs())
    }

    pub fn pos(&self) -> Self {
        self.map_atoms(|a| a.pos())
    }

    pub fn neg_part(&self) -> Self {
        self.map_atoms(|a| a.neg_part())
    }

    /// `μ ≤ ν` in the charge order, i.e. `μ(p) ≤ ν(p)` for every component.
    pub fn le(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.atoms.iter().zip(&other.atoms).all(|(a, b)| a.le(b)))
    }

    pub fn is_positive(&self) -> bool {
        self.atoms.iter().all(|a| a.is_positive())
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.is_zero())
    }

    /// `‖μ‖ = |μ|(e)`.
    pub fn norm(&self) -> RtVector {
        self.abs().total()
    }

    pub fn variation_norm(&self) -> Result<VariationNorm> {
        self.variation_norm_bounded(VARIATION_NORM_MAX_POINTS)
    }

    /// `sup_Z Σ_{p∈Z} |μ(p)|` over all finite partitions `Z` of `e`, by
    /// enumerating every set partition of `Ω`.
    pub fn variation_norm_bounded(&self, max_points: usize) -> Result<VariationNorm> {
        let n = self.cond_exp.size();
        if n > max_points {
            return Err(Error::TooLarge {
                points: n,
                bound: max_points,
            });
        }
        let sums: Vec<(Vec<u64>, RtVector)> = set_partitions(n)
            .into_iter()
            .map(|blocks| {
                let mut s = self.cond_exp.zero();
                for &m in &blocks {
                    s = &s + &self.eval_mask(m).abs();
                }
                (blocks, s)
            })
            .collect();
        let value = sums
            .iter()
            .skip(1)
            .fold(sums[0].1.clone(), |acc, (_, s)| acc.sup(s));
        let space = self.cond_exp.space();
        let witness = sums
            .iter()
            .find(|(_, s)| *s == value)
            .map(|(blocks, _)| {
                blocks
                    .iter()
                    .map(|&m| Component::from_mask(space, m).expect("mask fits"))
                    .collect()
            })
            .unwrap_or_default();
        Ok(VariationNorm {
            value,
            witness,
            partitions_examined: sums.len(),
        })
    }

    /// Transports `μ` to the components of another weak order unit
    /// `e2 = T(e2)` with `e2 > 0` everywhere: `Φ(μ)(q) = μ(P_q(e))`. Since
    /// `P_q(e)` has the same support as `q`, the atom table is unchanged and
    /// only the domain tag moves.
    pub fn change_of_unit(&self, e2: &Vector) -> Result<Self> {
        let t = &self.cond_exp;
        if e2.space().as_ref() != t.space().as_ref() {
            return Err(Error::SpaceMismatch);
        }
        if let Some(i) = e2.values().iter().position(|v| !num::Signed::is_positive(v)) {
            return Err(Error::InvalidUnit(format!(
                "entry at point {} is not strictly positive",
                i + 1
            )));
        }
        if *t.apply(e2) != *e2 {
            return Err(Error::InvalidUnit("T(e2) differs from e2".into()));
        }
        Ok(Self {
            cond_exp: t.clone(),
            unit: e2.clone(),
            atoms: self.atoms.clone(),
        })
    }

    /// The component `unit · 1_A` of the charge's order unit with support `A`.
    pub fn unit_component(&self, support: &Component) -> Vector {
        support.mask_vector(&self.unit)
    }

    /// Atomwise test of `μ ≪ T`: every `μ(1_{{ω}})` vanishes off the block of
    /// `ω`. Returns the first offending atom as a witness.
    pub fn abs_continuity_witness(&self) -> Option<Component> {
        let t = &self.cond_exp;
        (0..t.size())
            .find(|&i| {
                let block = t.partition().block_component(t.block_of(i));
                !self.atoms[i].support().is_subset(&block)
            })
            .map(|i| Component::atom(t.space(), i))
    }

    pub fn is_abs_continuous(&self) -> bool {
        self.abs_continuity_witness().is_none()
    }

    /// `μ ≪ T` from the definition: `μ(p)` lies in the band generated by
    /// `Tp` for every one of the `2^n` components.
    pub fn abs_continuity_by_enumeration(&self) -> Option<Component> {
        let t = &self.cond_exp;
        space::components(t.space()).find(|p| {
            let tp = t.apply(&p.to_vector());
            !self.eval_mask(p.mask()).support().is_subset(&tp.support())
        })
    }

    /// `(μ_ac, μ_s)` with `μ_ac` the atom values masked to their blocks.
    pub fn lebesgue_decomposition(&self) -> (Charge, Charge) {
        let t = &self.cond_exp;
        let ac: Vec<RtVector> = (0..t.size())
            .map(|i| {
                let block = t.partition().block_component(t.block_of(i));
                RtVector::trusted(block.mask_vector(&self.atoms[i]))
            })
            .collect();
        let singular: Vec<RtVector> = self.atoms.iter().zip(&ac).map(|(a, b)| a - b).collect();
        (self.with_atoms(ac), self.with_atoms(singular))
    }
}

pub fn charge_lattice(mu: &Charge, nu: &Charge) -> Result<ChargeLatticeOps> {
    Ok(ChargeLatticeOps {
        sup: mu.sup(nu)?,
        inf: mu.inf(nu)?,
        abs: mu.abs(),
        pos: mu.pos(),
        neg: mu.neg_part(),
    })
}

/// All set partitions of `{0, …, n-1}` as lists of bitmasks, via restricted
/// growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max_label: usize, labels: &mut [usize], out: &mut Vec<Vec<u64>>) {
        if i == labels.len() {
            let used = if labels.is_empty() { 0 } else { max_label + 1 };
            let mut blocks = vec![0u64; used];
            for (p, &l) in labels.iter().enumerate() {
                blocks[l] |= 1 << p;
            }
            out.push(blocks);
            return;
        }
        let limit = if i == 0 { 0 } else { max_label + 1 };
        for l in 0..=limit {
            labels[i] = l;
            rec(i + 1, max_label.max(l), labels, out);
        }
    }
    rec(0, 0, &mut labels, &mut out);
    out
}

/// A value for every component, as given; no structure assumed.
#[derive(Debug, Clone, PartialEq)]
pub struct RawChargeTable {
    cond_exp: Arc<CondExp>,
    table: Vec<Option<Vector>>,
}

impl RawChargeTable {
    pub fn new(t: &Arc<CondExp>) -> Self {
        let n = t.size();
        assert!(n < 32, "a full component table needs fewer than 32 points");
        Self {
            cond_exp: t.clone(),
            table: vec![None; 1 << n],
        }
    }

    pub fn from_fn(t: &Arc<CondExp>, mut f: impl FnMut(&Component) -> Vector) -> Self {
        let mut table = Self::new(t);
        for p in space::components(t.space()) {
            let v = f(&p);
            table.set(&p, v);
        }
        table
    }

    pub fn set(&mut self, p: &Component, value: Vector) {
        self.table[p.mask() as usize] = Some(value);
    }

    pub fn get(&self, p: &Component) -> Option<&Vector> {
        self.table[p.mask() as usize].as_ref()
    }

    /// Checks coverage, block-constancy, `μ(0) = 0` and additivity on every
    /// disjoint pair, then returns the atom representation.
    ///
    /// `μ(0) = 0` is reported as a failure of additivity on the pair `(0, 0)`.
    pub fn validate(&self) -> Result<Charge> {
        let t = &self.cond_exp;
        let space = t.space();
        let mut values = Vec::with_capacity(self.table.len());
        for (mask, v) in self.table.iter().enumerate() {
            let comp = Component::from_mask(space, mask as u64)?;
            let v = v.clone().ok_or(Error::MissingComponent(comp))?;
            values.push(t.range_element(v)?);
        }
        let full = space.full_mask();
        let empty = Component::empty(space);
        if !values[0].is_zero() {
            return Err(Error::NotAdditive {
                p: empty.clone(),
                q: empty,
            });
        }
        for p in 0..=full {
            let rest = full & !p;
            let mut q = 0u64;
            loop {
                if values[(p | q) as usize] != &values[p as usize] + &values[q as usize] {
                    return Err(Error::NotAdditive {
                        p: Component::from_mask(space, p)?,
                        q: Component::from_mask(space, q)?,
                    });
                }
                if q == rest {
                    break;
                }
                q = (q.wrapping_sub(rest)) & rest;
            }
        }
        let atoms = (0..t.size()).map(|i| values[1 << i].clone()).collect();
        Ok(Charge::from_atoms(t, atoms))
    }
}

/// The defining suprema and infima of the charge lattice, evaluated by
/// enumerating every sub-component.
pub mod brute {
    use super::*;

    fn fold_sub(p: &Component, f: impl Fn(&Component) -> RtVector, take_sup: bool) -> RtVector {
        let mut acc: Option<RtVector> = None;
        for q in p.subcomponents() {
            let v = f(&q);
            acc = Some(match acc {
                None => v,
                Some(a) if take_sup => a.sup(&v),
                Some(a) => a.inf(&v),
            });
        }
        acc.expect("at least the empty sub-component")
    }

    /// `sup{μ(q) + ν(p - q) : q ≤ p}`.
    pub fn sup_at(mu: &Charge, nu: &Charge, p: &Component) -> RtVector {
        fold_sub(
            p,
            |q| &mu.eval_mask(q.mask()) + &nu.eval_mask(p.difference(q).mask()),
            true,
        )
    }

    /// `inf{μ(q) + ν(p - q) : q ≤ p}`.
    pub fn inf_at(mu: &Charge, nu: &Charge, p: &Component) -> RtVector {
        fold_sub(
            p,
            |q| &mu.eval_mask(q.mask()) + &nu.eval_mask(p.difference(q).mask()),
            false,
        )
    }

    /// `sup{μ(q) - μ(p - q) : q ≤ p}`.
    pub fn abs_at(mu: &Charge, p: &Component) -> RtVector {
        fold_sub(
            p,
            |q| &mu.eval_mask(q.mask()) - &mu.eval_mask(p.difference(q).mask()),
            true,
        )
    }

    /// `sup{μ(q) : q ≤ p}`.
    pub fn pos_at(mu: &Charge, p: &Component) -> RtVector {
        fold_sub(p, |q| mu.eval_mask(q.mask()), true)
    }

    /// `sup{-μ(q) : q ≤ p}`.
    pub fn neg_at(mu: &Charge, p: &Component) -> RtVector {
        fold_sub(p, |q| -&mu.eval_mask(q.mask()), true)
    }

    /// First component on which `closed` and the brute-force value differ.
    pub fn first_mismatch(
        closed: &Charge,
        brute: impl Fn(&Component) -> RtVector,
    ) -> Option<Component> {
        space::components(closed.cond_exp().space())
            .find(|p| closed.eval_mask(p.mask()) != brute(p))
    }
}
