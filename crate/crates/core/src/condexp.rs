//! Partition-induced conditional expectations.
//!
//! For a partition `(Ω_i)` of a finite weighted space,
//! `(Tf)(ω) = Σ_{ω'∈Ω_i} f(ω') μ({ω'}) / μ(Ω_i)` for `ω ∈ Ω_i`. Its range
//! `R(T)` is the space of block-constant vectors, which acts as the ring of
//! scalars for norms, charges and duals.
//!
//! Every `L^p(T)` space coincides with `E` on a finite model, and the model
//! is trivially `T`-universally complete (see
//! [`CondExp::is_t_universally_complete`]).

use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::sync::Arc;

use num::{Signed, Zero};

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::operator::ColumnOperator;
use crate::rational::{self, fmt_rational, pow_u32, Rational};
use crate::space::{self, power_exact, Component, FiniteSpace, Vector};

/// A partition of `Ω` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    space: Arc<FiniteSpace>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Blocks are lists of 0-based points; block order is preserved and the
    /// points inside a block are sorted.
    pub fn new(space: &Arc<FiniteSpace>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = space.size();
        let mut block_of = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(blocks.len());
        for (b, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", b + 1)));
            }
            block.sort_unstable();
            for &p in &block {
                if p >= n {
                    return Err(Error::InvalidPartition(format!(
                        "point {} is outside a space of size {n}",
                        p + 1
                    )));
                }
                if block_of[p] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "point {} appears in more than one block",
                        p + 1
                    )));
                }
                block_of[p] = b;
            }
            sorted.push(block);
        }
        if let Some(p) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "point {} is not covered",
                p + 1
            )));
        }
        Ok(Self {
            space: space.clone(),
            blocks: sorted,
            block_of,
        })
    }

    pub fn singletons(space: &Arc<FiniteSpace>) -> Self {
        Self::new(space, (0..space.size()).map(|i| vec![i]).collect()).expect("valid")
    }

    pub fn single_block(space: &Arc<FiniteSpace>) -> Self {
        Self::new(space, vec![(0..space.size()).collect()]).expect("valid")
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    pub fn block_component(&self, block: usize) -> Component {
        Component::from_points(&self.space, &self.blocks[block]).expect("points in range")
    }
}

/// An element of `R(T)`: a vector that is constant on every block.
#[derive(Clone, PartialEq, Eq)]
pub struct RtVector(Vector);

impl RtVector {
    /// Wraps a vector already known to be block-constant.
    pub(crate) fn trusted(v: Vector) -> Self {
        Self(v)
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    pub fn into_vector(self) -> Vector {
        self.0
    }

    pub fn sup(&self, other: &Self) -> Self {
        Self(self.0.sup(&other.0))
    }

    pub fn inf(&self, other: &Self) -> Self {
        Self(self.0.inf(&other.0))
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn pos(&self) -> Self {
        Self(self.0.pos())
    }

    pub fn neg_part(&self) -> Self {
        Self(self.0.neg_part())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.scale(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        Self(self.0.map(|v| pow_u32(v, k)))
    }

    /// Canonical partial inverse, again block-constant.
    pub fn partial_inverse(&self) -> Self {
        Self(space::partial_inverse(&self.0))
    }

    /// `P_α(e)` for `α = self`, again block-constant.
    pub fn support_unit(&self) -> Self {
        Self(self.0.support().to_vector())
    }
}

impl Deref for RtVector {
    type Target = Vector;
    fn deref(&self) -> &Vector {
        &self.0
    }
}

impl fmt::Debug for RtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RtVector{}", self.0)
    }
}

impl fmt::Display for RtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! rt_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&RtVector> for &RtVector {
            type Output = RtVector;
            fn $method(self, rhs: &RtVector) -> RtVector {
                RtVector((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<RtVector> for RtVector {
            type Output = RtVector;
            fn $method(self, rhs: RtVector) -> RtVector {
                RtVector(self.0.$method(rhs.0))
            }
        }
    };
}

rt_binop!(Add, add);
rt_binop!(Sub, sub);
rt_binop!(Mul, mul);

impl Neg for &RtVector {
    type Output = RtVector;
    fn neg(self) -> RtVector {
        RtVector(-&self.0)
    }
}

/// A strictly positive conditional expectation induced by a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct CondExp {
    partition: Partition,
    block_masses: Vec<Rational>,
}

impl CondExp {
    /// Builds `T` from a partition of a space with strictly positive weights.
    pub fn new(partition: Partition) -> Result<Arc<Self>> {
        let space = partition.space();
        if space.is_degenerate() {
            let point = space
                .weights()
                .iter()
                .position(|w| w.is_zero())
                .expect("degenerate space has a zero weight");
            return Err(Error::NonPositiveWeight { point });
        }
        let block_masses = partition
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&p| space.weight(p).clone()).sum())
            .collect();
        Ok(Arc::new(Self {
            partition,
            block_masses,
        }))
    }

    /// Uses the given block masses without checking them. Exists so that the
    /// axiom verifier can be exercised on operators that are not conditional
    /// expectations.
    pub fn from_raw_parts(partition: Partition, block_masses: Vec<Rational>) -> Arc<Self> {
        assert_eq!(partition.num_blocks(), block_masses.len());
        Arc::new(Self {
            partition,
            block_masses,
        })
    }

    /// The identity operator (finest partition).
    pub fn identity(space: &Arc<FiniteSpace>) -> Result<Arc<Self>> {
        Self::new(Partition::singletons(space))
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        self.partition.space()
    }

    pub fn size(&self) -> usize {
        self.space().size()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn block_masses(&self) -> &[Rational] {
        &self.block_masses
    }

    pub fn num_blocks(&self) -> usize {
        self.partition.num_blocks()
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.partition.block_of(point)
    }

    pub fn block_points(&self, block: usize) -> &[usize] {
        &self.partition.blocks()[block]
    }

    /// Structural equality of the underlying models.
    pub fn same(&self, other: &CondExp) -> bool {
        self == other
    }

    /// Always true: a finite model is its own `T`-universal completion.
    pub fn is_t_universally_complete(&self) -> bool {
        true
    }

    pub fn unit(&self) -> RtVector {
        RtVector(space::unit(self.space()))
    }

    pub fn zero(&self) -> RtVector {
        RtVector(Vector::zero(self.space()))
    }

    /// First block on which `v` is not constant.
    pub fn non_constant_block(&self, v: &Vector) -> Option<usize> {
        self.partition.blocks().iter().position(|b| {
            let first = v.get(b[0]);
            b.iter().any(|&p| v.get(p) != first)
        })
    }

    /// Checks block-constancy and wraps `v` as an element of `R(T)`.
    pub fn range_element(&self, v: Vector) -> Result<RtVector> {
        if v.space().as_ref() != self.space().as_ref() {
            return Err(Error::SpaceMismatch);
        }
        match self.non_constant_block(&v) {
            Some(block) => Err(Error::NotBlockConstant { block }),
            None => Ok(RtVector(v)),
        }
    }

    /// The element of `R(T)` with the given value on each block.
    pub fn from_block_values(&self, values: &[Rational]) -> RtVector {
        assert_eq!(values.len(), self.num_blocks());
        RtVector(Vector::from_fn(self.space(), |i| {
            values[self.block_of(i)].clone()
        }))
    }

    pub fn block_value<'a>(&self, v: &'a Vector, block: usize) -> &'a Rational {
        v.get(self.block_points(block)[0])
    }

    pub fn block_values(&self, v: &Vector) -> Vec<Rational> {
        (0..self.num_blocks())
            .map(|b| self.block_value(v, b).clone())
            .collect()
    }

    /// `1_{Ω_i}`.
    pub fn block_indicator(&self, block: usize) -> RtVector {
        RtVector(self.partition.block_component(block).to_vector())
    }

    /// Applies `T`. Panics if `f` lives on a different space; see
    /// [`CondExp::try_apply`].
    pub fn apply(&self, f: &Vector) -> RtVector {
        assert!(
            f.space().as_ref() == self.space().as_ref(),
            "vector lives on a different space"
        );
        let space = self.space();
        let block_avg: Vec<Rational> = self
            .partition
            .blocks()
            .iter()
            .zip(&self.block_masses)
            .map(|(b, mass)| {
                let s: Rational = b.iter().map(|&p| f.get(p) * space.weight(p)).sum();
                s / mass
            })
            .collect();
        self.from_block_values(&block_avg)
    }

    pub fn try_apply(&self, f: &Vector) -> Result<RtVector> {
        if f.space().as_ref() != self.space().as_ref() {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.apply(f))
    }

    /// `T` as a column operator (columns `T(1_ω)`).
    pub fn as_operator(&self) -> ColumnOperator {
        ColumnOperator::from_map(self.space(), |v| self.apply(v).into_vector())
    }

    /// `T(|f|^p)`, the `p`-th power of `‖f‖_{T,p}`.
    pub fn norm_tp_pow(&self, f: &Vector, p: u32) -> Result<RtVector> {
        if p == 0 {
            return Err(Error::InvalidExponent("p must be at least 1".into()));
        }
        self.check_space(f)?;
        Ok(self.apply(&f.abs().map(|v| pow_u32(v, p))))
    }

    /// `‖f‖_{T,p} = T(|f|^p)^{1/p}`, when the blockwise roots are rational.
    pub fn norm_tp(&self, f: &Vector, p: u32) -> Result<RtVector> {
        let raised = self.norm_tp_pow(f, p)?;
        let values = raised
            .values()
            .iter()
            .map(|v| {
                rational::exact_nth_root(v, p).ok_or_else(|| Error::NonRationalRoot {
                    value: fmt_rational(v),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RtVector(Vector::new(self.space(), values)?))
    }

    /// `‖f‖_{T,∞}`: the blockwise maximum of `|f|`.
    pub fn norm_tinf(&self, f: &Vector) -> RtVector {
        let abs = f.abs();
        let maxima: Vec<Rational> = self
            .partition
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .fold(rational::zero(), |m, &p| rational::max(&m, abs.get(p)))
            })
            .collect();
        self.from_block_values(&maxima)
    }

    /// `P_f ≤ P_{Tf}` for `f ≥ 0`, i.e. `supp f ⊆ supp Tf`.
    pub fn check_proj_ineq(&self, f: &Vector) -> Result<bool> {
        self.check_space(f)?;
        if let Some(point) = f.first_negative() {
            return Err(Error::NotPositive { point });
        }
        Ok(f.support().is_subset(&self.apply(f).support()))
    }

    fn check_space(&self, f: &Vector) -> Result<()> {
        if f.space().as_ref() == self.space().as_ref() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Finite checks of the conditional expectation axioms over the atom
    /// basis and the block indicators.
    pub fn verify_axioms(&self) -> CheckReport {
        let space = self.space();
        let n = space.size();
        let atoms: Vec<Vector> = (0..n)
            .map(|i| Component::atom(space, i).to_vector())
            .collect();
        let images: Vec<RtVector> = atoms.iter().map(|a| self.apply(a)).collect();
        let e = space::unit(space);
        let mut report = CheckReport::new();

        report.record_all("linearity", pairs(n), |(i, j)| {
            let two = rational::int(2);
            let minus_three = rational::int(-3);
            let combo = atoms[i].scale(&two) + atoms[j].scale(&minus_three);
            let lhs = self.apply(&combo).into_vector();
            let rhs = images[i].scale(&two).into_vector() + images[j].scale(&minus_three).into_vector();
            (lhs != rhs).then(|| format!("atoms {} and {}", i + 1, j + 1))
        });
        report.record_all("positivity", 0..n, |i| {
            (!images[i].is_positive()).then(|| format!("T(1_{}) = {}", i + 1, images[i]))
        });
        let te = self.apply(&e);
        report.record(
            "unit",
            *te == e,
            if *te == e { String::new() } else { format!("T(e) = {te}") },
        );
        report.record_all("idempotence", 0..n, |i| {
            let twice = self.apply(&images[i]);
            (twice != images[i]).then(|| format!("T(T(1_{})) = {twice}", i + 1))
        });
        report.record_all("range_is_riesz_subspace", pairs(n), |(i, j)| {
            let d = images[i].as_vector() - images[j].as_vector();
            let a = d.abs();
            (*self.apply(&a) != a).then(|| format!("|T(1_{}) - T(1_{})| not fixed", i + 1, j + 1))
        });
        report.record_all("strict_positivity", 0..n, |i| {
            images[i]
                .is_zero()
                .then(|| format!("T(1_{}) = 0", i + 1))
        });
        let blocks: Vec<(usize, usize)> = (0..self.num_blocks())
            .flat_map(|b| (0..n).map(move |i| (b, i)))
            .collect();
        report.record_all("averaging", blocks, |(b, i)| {
            let g = self.block_indicator(b);
            let lhs = self.apply(&(g.as_vector() * &atoms[i]));
            let rhs = &g * &images[i];
            (lhs != rhs).then(|| format!("block {} and atom {}", b + 1, i + 1))
        });
        report
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

/// `make_cond_exp`: validates the partition against the space and builds `T`.
pub fn make_cond_exp(space: &Arc<FiniteSpace>, blocks: Vec<Vec<usize>>) -> Result<Arc<CondExp>> {
    CondExp::new(Partition::new(space, blocks)?)
}

/// A Hölder exponent in `[1, ∞]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exponent {
    Finite(Rational),
    Infinity,
}

impl Exponent {
    pub fn finite(p: Rational) -> Result<Self> {
        if p < rational::one() {
            return Err(Error::InvalidExponent(format!(
                "{} is below 1",
                fmt_rational(&p)
            )));
        }
        Ok(Self::Finite(p))
    }

    pub fn conjugate(&self) -> Self {
        match self {
            Self::Infinity => Self::Finite(rational::one()),
            Self::Finite(p) if *p == rational::one() => Self::Infinity,
            Self::Finite(p) => Self::Finite(p / (p - rational::one())),
        }
    }

    /// Accepts `inf`, `∞`, or a rational string.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Self::Infinity),
            other => rational::parse_rational(other)
                .ok_or_else(|| Error::InvalidExponent(other.to_string()))
                .and_then(Self::finite),
        }
    }
}

/// An exactly verified Hölder inequality `‖fg‖_{T,1} ≤ ‖f‖_{T,p} ‖g‖_{T,q}`.
///
/// For finite `p = a/b > 1` both sides are raised to the power `a`:
/// `(T|fg|)^a ≤ (T|f|^p)^b (T|g|^q)^{a-b}`, which avoids roots. For `p = 1`
/// or `p = ∞` the comparison is direct (`power == 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct HolderCertificate {
    pub product: Vector,
    /// `‖fg‖_{T,1}`.
    pub lhs: RtVector,
    pub power: u32,
    pub raised_lhs: RtVector,
    pub raised_rhs: RtVector,
    pub holds: bool,
}

pub fn holder_product(
    t: &CondExp,
    f: &Vector,
    g: &Vector,
    p: &Exponent,
) -> Result<HolderCertificate> {
    t.check_space(f)?;
    t.check_space(g)?;
    let product = f * g;
    let lhs = t.apply(&product.abs());
    let one = rational::one();
    let (power, raised_lhs, raised_rhs) = match p {
        Exponent::Infinity => (1, lhs.clone(), &t.norm_tinf(f) * &t.apply(&g.abs())),
        Exponent::Finite(p) if *p == one => {
            (1, lhs.clone(), &t.apply(&f.abs()) * &t.norm_tinf(g))
        }
        Exponent::Finite(p) => {
            if *p < one {
                return Err(Error::InvalidExponent(format!(
                    "{} is below 1",
                    fmt_rational(p)
                )));
            }
            let (a, b) = rational::exponent_parts(p)?;
            let q = p / (p - &one);
            let f_pow = t.apply(&power_exact(&f.abs(), p)?);
            let g_pow = t.apply(&power_exact(&g.abs(), &q)?);
            (a, lhs.pow(a), &f_pow.pow(b) * &g_pow.pow(a - b))
        }
    };
    let holds = raised_lhs.le(&raised_rhs);
    Ok(HolderCertificate {
        product,
        lhs,
        power,
        raised_lhs,
        raised_rhs,
        holds,
    })
}

/// A partition-induced operator on a space whose weights may vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateCondExp {
    partition: Partition,
}

/// Result of [`DegenerateCondExp::null_ideal_reduction`].
#[derive(Debug, Clone, PartialEq)]
pub struct NullIdealReduction {
    /// `P_{N_T}(e)`: the zero-weight points.
    pub null: Component,
    /// `P_{C_T}(e)`: the complement of the null ideal.
    pub carrier: Component,
    /// Strictly positive conditional expectation on the carrier, as a space of
    /// its own.
    pub reduced: Arc<CondExp>,
    /// `carrier_points[k]` is the original point behind reduced point `k`.
    pub carrier_points: Vec<usize>,
}

impl DegenerateCondExp {
    pub fn new(space: &Arc<FiniteSpace>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Ok(Self {
            partition: Partition::new(space, blocks)?,
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// The blockwise weighted average, with zero on blocks of zero mass.
    pub fn apply(&self, f: &Vector) -> Vector {
        let space = self.partition.space();
        let mut out = Vector::zero(space).into_values();
        for block in self.partition.blocks() {
            let mass: Rational = block.iter().map(|&p| space.weight(p).clone()).sum();
            if mass.is_zero() {
                continue;
            }
            let s: Rational = block.iter().map(|&p| f.get(p) * space.weight(p)).sum();
            let avg = s / mass;
            for &p in block {
                out[p] = avg.clone();
            }
        }
        Vector::new(space, out).expect("length matches")
    }

    /// Splits off the null ideal `{f : T|f| = 0}` and restricts `T` to the
    /// carrier. Blocks are intersected with the carrier and empty
    /// intersections are dropped.
    pub fn null_ideal_reduction(&self) -> Result<NullIdealReduction> {
        let space = self.partition.space();
        let carrier_points: Vec<usize> = (0..space.size())
            .filter(|&i| space.weight(i).is_positive())
            .collect();
        if carrier_points.is_empty() {
            return Err(Error::AllWeightsZero);
        }
        let carrier = Component::from_points(space, &carrier_points)?;
        let null = carrier.complement();
        let mut new_index = vec![usize::MAX; space.size()];
        for (k, &p) in carrier_points.iter().enumerate() {
            new_index[p] = k;
        }
        let reduced_space = FiniteSpace::new(
            carrier_points
                .iter()
                .map(|&p| space.weight(p).clone())
                .collect(),
        )?;
        let blocks: Vec<Vec<usize>> = self
            .partition
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|&&p| new_index[p] != usize::MAX)
                    .map(|&p| new_index[p])
                    .collect::<Vec<_>>()
            })
            .filter(|b| !b.is_empty())
            .collect();
        let reduced = CondExp::new(Partition::new(&reduced_space, blocks)?)?;
        Ok(NullIdealReduction {
            null,
            carrier,
            reduced,
            carrier_points,
        })
    }
}
