//! The finite Riesz space `E = R^Ω`.
//!
//! All order structure is pointwise. Components of the weak order unit `e`
//! (the constant one vector) are the 0/1 indicators, stored as bitsets over
//! at most [`FiniteSpace::MAX_POINTS`] points.
//!
//! Binary operations on [`Vector`]s and [`Component`]s panic when the operands
//! live on different spaces. The free functions [`lattice_ops`],
//! [`band_projection`] and [`component_algebra`] are the checked entry points.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, fmt_rational, Rational};

/// A finite set `Ω = {0, .., n-1}` with rational point weights `μ({ω})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    weights: Vec<Rational>,
    degenerate: bool,
}

impl FiniteSpace {
    pub const MAX_POINTS: usize = 64;

    /// A space with strictly positive weights.
    pub fn new(weights: Vec<Rational>) -> Result<Arc<Self>> {
        Self::check_size(weights.len())?;
        if let Some(point) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight { point });
        }
        Ok(Arc::new(Self {
            weights,
            degenerate: false,
        }))
    }

    /// A space whose weights may vanish. Only [`crate::DegenerateCondExp`]
    /// accepts such spaces.
    pub fn degenerate(weights: Vec<Rational>) -> Result<Arc<Self>> {
        Self::check_size(weights.len())?;
        if let Some(point) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::NegativeWeight { point });
        }
        let degenerate = weights.iter().any(|w| w.is_zero());
        Ok(Arc::new(Self {
            weights,
            degenerate,
        }))
    }

    /// `n` points of weight one.
    pub fn uniform(n: usize) -> Result<Arc<Self>> {
        Self::new(vec![rational::one(); n])
    }

    fn check_size(n: usize) -> Result<()> {
        if n == 0 || n > Self::MAX_POINTS {
            return Err(Error::InvalidSize {
                max: Self::MAX_POINTS,
                got: n,
            });
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, point: usize) -> &Rational {
        &self.weights[point]
    }

    /// True when some weight is zero.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub(crate) fn full_mask(&self) -> u64 {
        full_mask(self.size())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn same_space(a: &Arc<FiniteSpace>, b: &Arc<FiniteSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// The weak order unit `e`.
pub fn unit(space: &Arc<FiniteSpace>) -> Vector {
    Vector::constant(space, rational::one())
}

/// All `2^n` components of `e`, in increasing bitset order.
pub fn components(space: &Arc<FiniteSpace>) -> impl Iterator<Item = Component> + '_ {
    let n = space.size();
    assert!(n < 64, "component enumeration needs fewer than 64 points");
    (0..(1u64 << n)).map(move |mask| Component {
        space: space.clone(),
        mask,
    })
}

/// A rational valued function on `Ω`.
#[derive(Clone)]
pub struct Vector {
    space: Arc<FiniteSpace>,
    values: Vec<Rational>,
}

impl PartialEq for Vector {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.values == other.values
    }
}

impl Eq for Vector {}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector{}", self)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rational(v))?;
        }
        write!(f, ")")
    }
}

impl Vector {
    pub fn new(space: &Arc<FiniteSpace>, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.size() {
            return Err(Error::LengthMismatch {
                expected: space.size(),
                got: values.len(),
            });
        }
        Ok(Self {
            space: space.clone(),
            values,
        })
    }

    /// Integer entries; panics on a length mismatch.
    pub fn from_ints(space: &Arc<FiniteSpace>, values: &[i64]) -> Self {
        Self::new(space, values.iter().map(|&v| rational::int(v)).collect())
            .expect("length matches space")
    }

    pub fn from_fn(space: &Arc<FiniteSpace>, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            space: space.clone(),
            values: (0..space.size()).map(f).collect(),
        }
    }

    pub fn zero(space: &Arc<FiniteSpace>) -> Self {
        Self::constant(space, rational::zero())
    }

    pub fn constant(space: &Arc<FiniteSpace>, c: Rational) -> Self {
        Self {
            space: space.clone(),
            values: vec![c; space.size()],
        }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn get(&self, point: usize) -> &Rational {
        &self.values[point]
    }

    pub fn same_space(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_space(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    fn assert_same(&self, other: &Self) {
        assert!(self.same_space(other), "vectors live on different spaces");
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self {
            space: self.space.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        self.assert_same(other);
        Self {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn sup(&self, other: &Self) -> Self {
        self.zip_with(other, rational::max)
    }

    pub fn inf(&self, other: &Self) -> Self {
        self.zip_with(other, rational::min)
    }

    pub fn abs(&self) -> Self {
        self.map(|v| v.abs())
    }

    pub fn pos(&self) -> Self {
        self.map(|v| rational::max(v, &rational::zero()))
    }

    pub fn neg_part(&self) -> Self {
        self.map(|v| rational::max(&-v, &rational::zero()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|v| v * c)
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.assert_same(other);
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn is_positive(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// First point with a negative entry.
    pub fn first_negative(&self) -> Option<usize> {
        self.values.iter().position(|v| v.is_negative())
    }

    /// The component `P_{|self|}(e)`: indicator of the nonzero entries.
    pub fn support(&self) -> Component {
        let mask = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Component {
            space: self.space.clone(),
            mask,
        }
    }

    /// Pointwise supremum of a nonempty family.
    pub fn sup_all<'a>(mut items: impl Iterator<Item = &'a Vector>) -> Option<Vector> {
        let first = items.next()?.clone();
        Some(items.fold(first, |acc, v| acc.sup(v)))
    }

    /// Pointwise infimum of a nonempty family.
    pub fn inf_all<'a>(mut items: impl Iterator<Item = &'a Vector>) -> Option<Vector> {
        let first = items.next()?.clone();
        Some(items.fold(first, |acc, v| acc.inf(v)))
    }

    pub fn sum<'a>(space: &Arc<FiniteSpace>, items: impl Iterator<Item = &'a Vector>) -> Vector {
        items.fold(Vector::zero(space), |acc, v| &acc + v)
    }

    /// Largest entry.
    pub fn max_entry(&self) -> Rational {
        self.values
            .iter()
            .fold(self.values[0].clone(), |m, v| rational::max(&m, v))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(rational::to_f64).collect()
    }
}

macro_rules! pointwise_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Vector> for &Vector {
            type Output = Vector;
            fn $method(self, rhs: &Vector) -> Vector {
                self.zip_with(rhs, |a, b| a $op b)
            }
        }
        impl $tr<Vector> for Vector {
            type Output = Vector;
            fn $method(self, rhs: Vector) -> Vector {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Vector> for Vector {
            type Output = Vector;
            fn $method(self, rhs: &Vector) -> Vector {
                (&self).$method(rhs)
            }
        }
    };
}

pointwise_binop!(Add, add, +);
pointwise_binop!(Sub, sub, -);
pointwise_binop!(Mul, mul, *);

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.map(|v| -v)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

/// A component of `e`, i.e. the indicator of a subset of `Ω`.
#[derive(Clone)]
pub struct Component {
    space: Arc<FiniteSpace>,
    mask: u64,
}

impl PartialEq for Component {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && same_space(&self.space, &other.space)
    }
}

impl Eq for Component {}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Component{}", self)
    }
}

/// 1-based point list, e.g. `{1,3}`.
impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.points().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl Component {
    pub fn from_mask(space: &Arc<FiniteSpace>, mask: u64) -> Result<Self> {
        if mask & !space.full_mask() != 0 {
            return Err(Error::LengthMismatch {
                expected: space.size(),
                got: 64 - mask.leading_zeros() as usize,
            });
        }
        Ok(Self {
            space: space.clone(),
            mask,
        })
    }

    /// From 0-based point indices.
    pub fn from_points(space: &Arc<FiniteSpace>, points: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &p in points {
            if p >= space.size() {
                return Err(Error::LengthMismatch {
                    expected: space.size(),
                    got: p + 1,
                });
            }
            mask |= 1 << p;
        }
        Ok(Self {
            space: space.clone(),
            mask,
        })
    }

    pub fn atom(space: &Arc<FiniteSpace>, point: usize) -> Self {
        assert!(point < space.size(), "point out of range");
        Self {
            space: space.clone(),
            mask: 1 << point,
        }
    }

    pub fn empty(space: &Arc<FiniteSpace>) -> Self {
        Self {
            space: space.clone(),
            mask: 0,
        }
    }

    pub fn full(space: &Arc<FiniteSpace>) -> Self {
        Self {
            space: space.clone(),
            mask: space.full_mask(),
        }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, point: usize) -> bool {
        point < 64 && self.mask & (1 << point) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Points in increasing order (0-based).
    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.space.size()).filter(move |&i| self.contains(i))
    }

    fn assert_same(&self, other: &Self) {
        assert!(
            same_space(&self.space, &other.space),
            "components live on different spaces"
        );
    }

    fn with_mask(&self, mask: u64) -> Self {
        Self {
            space: self.space.clone(),
            mask,
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.assert_same(other);
        self.with_mask(self.mask & other.mask)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.assert_same(other);
        self.with_mask(self.mask | other.mask)
    }

    /// `e - p`.
    pub fn complement(&self) -> Self {
        self.with_mask(!self.mask & self.space.full_mask())
    }

    /// `p - p ∧ q`.
    pub fn difference(&self, other: &Self) -> Self {
        self.assert_same(other);
        self.with_mask(self.mask & !other.mask)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.assert_same(other);
        self.mask & !other.mask == 0
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.assert_same(other);
        self.mask & other.mask == 0
    }

    /// All sub-components `q ≤ p`, including `0` and `p`.
    pub fn subcomponents(&self) -> impl Iterator<Item = Component> + '_ {
        // Standard submask enumeration, descending from `mask` to 0.
        let mask = self.mask;
        let mut next = Some(mask);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & mask) };
            Some(self.with_mask(cur))
        })
    }

    pub fn to_vector(&self) -> Vector {
        Vector::from_fn(&self.space, |i| {
            if self.contains(i) {
                rational::one()
            } else {
                rational::zero()
            }
        })
    }

    /// `self · f`, i.e. `P_p(f)`.
    pub fn mask_vector(&self, f: &Vector) -> Vector {
        assert!(
            same_space(&self.space, f.space()),
            "component and vector live on different spaces"
        );
        Vector::from_fn(&self.space, |i| {
            if self.contains(i) {
                f.get(i).clone()
            } else {
                rational::zero()
            }
        })
    }
}

/// Results of [`lattice_ops`].
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeOps {
    pub sup: Vector,
    pub inf: Vector,
    pub abs: Vector,
    pub pos: Vector,
    pub neg: Vector,
}

/// `f ∨ g`, `f ∧ g`, `|f|`, `f⁺` and `f⁻`.
pub fn lattice_ops(f: &Vector, g: &Vector) -> Result<LatticeOps> {
    f.check(g)?;
    Ok(LatticeOps {
        sup: f.sup(g),
        inf: f.inf(g),
        abs: f.abs(),
        pos: f.pos(),
        neg: f.neg_part(),
    })
}

/// `P_f(g)`: the part of `g` in the band generated by `f`.
pub fn band_projection(f: &Vector, g: &Vector) -> Result<Vector> {
    f.check(g)?;
    Ok(f.support().mask_vector(g))
}

/// `g - P_f(g)`: the part of `g` in the disjoint complement of `f`.
pub fn band_projection_complement(f: &Vector, g: &Vector) -> Result<Vector> {
    f.check(g)?;
    Ok(f.support().complement().mask_vector(g))
}

/// The canonical partial inverse `f⁻¹` with `f · f⁻¹ = P_{|f|}(e)`.
pub fn partial_inverse(f: &Vector) -> Vector {
    f.map(|v| {
        if v.is_zero() {
            rational::zero()
        } else {
            v.recip()
        }
    })
}

/// Pointwise powers with floating point values.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatVector {
    pub values: Vec<f64>,
}

/// Absolute tolerance attached to [`PowerMode::Float`] results.
pub const FLOAT_POWER_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Powered {
    Exact(Vector),
    Float(FloatVector),
}

/// Pointwise `f^p` for a positive rational exponent.
///
/// Exact mode refuses irrational roots. Fractional exponents require `f ≥ 0`
/// in both modes.
pub fn power(f: &Vector, p: &Rational, mode: PowerMode) -> Result<Powered> {
    match mode {
        PowerMode::Exact => power_exact(f, p).map(Powered::Exact),
        PowerMode::Float => {
            let (_, b) = rational::exponent_parts(p)?;
            let pf = rational::to_f64(p);
            let mut values = Vec::with_capacity(f.len());
            for (i, v) in f.values().iter().enumerate() {
                if b > 1 && v.is_negative() {
                    return Err(Error::NegativeBase { point: i });
                }
                let x = rational::to_f64(v);
                values.push(if b == 1 { x.powf(pf) } else { x.abs().powf(pf) });
            }
            Ok(Powered::Float(FloatVector { values }))
        }
    }
}

pub fn power_exact(f: &Vector, p: &Rational) -> Result<Vector> {
    let values = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| rational::exact_power(v, p, i))
        .collect::<Result<Vec<_>>>()?;
    Vector::new(f.space(), values)
}

/// Results of [`component_algebra`]; `complement` refers to `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentOps {
    pub meet: Component,
    pub join: Component,
    pub complement: Component,
    pub difference: Component,
}

pub fn component_algebra(p: &Component, q: &Component) -> Result<ComponentOps> {
    if !same_space(&p.space, &q.space) {
        return Err(Error::SpaceMismatch);
    }
    Ok(ComponentOps {
        meet: p.meet(q),
        join: p.join(q),
        complement: p.complement(),
        difference: p.difference(q),
    })
}
