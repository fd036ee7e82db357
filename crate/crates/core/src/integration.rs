//! Step functions with `R(T)` coefficients and integration against charges.
//!
//! The elementary integral `I_μ(Σ α_i p_i) = Σ α_i μ(p_i)` depends only on
//! the step function when `μ ≪ T`. Without absolute continuity different
//! representations of the same vector can give different sums, so the
//! checked entry points refuse such charges and
//! [`well_definedness_witness`] exposes the disagreement instead.
//!
//! On a finite model every vector is a step function, so the supremum over
//! dominated step functions defining `∫ f dμ` is attained at `f` itself.

use std::sync::Arc;

use rand::Rng;

use crate::charge::Charge;
use crate::condexp::{CondExp, RtVector};
use crate::error::{Error, Result};
use crate::operator::ColumnOperator;
use crate::rational::{self, Rational};
use crate::space::{self, Component, Vector};
use crate::check::CheckReport;

/// `Σ α_i p_i` with `α_i ∈ R(T)` and pairwise disjoint components `p_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    cond_exp: Arc<CondExp>,
    terms: Vec<(RtVector, Component)>,
}

impl StepFunction {
    pub fn new(t: &Arc<CondExp>, terms: Vec<(RtVector, Component)>) -> Result<Self> {
        let mut seen = 0u64;
        for (alpha, p) in &terms {
            if p.space().as_ref() != t.space().as_ref()
                || alpha.space().as_ref() != t.space().as_ref()
            {
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
            cond_exp: t.clone(),
            terms,
        })
    }

    /// Like [`StepFunction::new`], but the coefficients are checked for
    /// block-constancy.
    pub fn from_vectors(t: &Arc<CondExp>, terms: Vec<(Vector, Component)>) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|(a, p)| Ok((t.range_element(a)?, p)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(t, terms)
    }

    /// `f` as a step function: one term `c·e` per nonzero level set `{f = c}`.
    pub fn from_vector(t: &Arc<CondExp>, f: &Vector) -> Self {
        let e = t.unit();
        let terms = crate::freudenthal::RealizedStep::from_levels(f)
            .terms()
            .iter()
            .map(|(c, p)| (e.scale(c), p.clone()))
            .collect();
        Self {
            cond_exp: t.clone(),
            terms,
        }
    }

    pub fn zero(t: &Arc<CondExp>) -> Self {
        Self {
            cond_exp: t.clone(),
            terms: Vec::new(),
        }
    }

    pub fn cond_exp(&self) -> &Arc<CondExp> {
        &self.cond_exp
    }

    pub fn terms(&self) -> &[(RtVector, Component)] {
        &self.terms
    }

    /// `Σ α_i p_i` as a vector.
    pub fn realize(&self) -> Vector {
        let mut out = Vector::zero(self.cond_exp.space());
        for (alpha, p) in &self.terms {
            out = out + p.mask_vector(alpha);
        }
        out
    }

    fn covered(&self) -> u64 {
        self.terms.iter().fold(0, |m, (_, p)| m | p.mask())
    }

    /// Pads with `(0, e - Σ p_i)` when the components do not exhaust `e`.
    pub fn to_standard(&self) -> StandardRep {
        let space = self.cond_exp.space();
        let rest = space.full_mask() & !self.covered();
        let mut terms = self.terms.clone();
        if rest != 0 || terms.is_empty() {
            terms.push((
                self.cond_exp.zero(),
                Component::from_mask(space, rest).expect("mask fits"),
            ));
        }
        StandardRep(Self {
            cond_exp: self.cond_exp.clone(),
            terms,
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.cond_exp.same(&other.cond_exp) {
            Ok(())
        } else {
            Err(Error::CondExpMismatch)
        }
    }

    /// `Σ_i Σ_j (α_i + β_j)(p_i ∧ q_j)` over standard representations.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (x, y) = (self.to_standard(), other.to_standard());
        let mut terms = Vec::new();
        for (a, p) in x.terms() {
            for (b, q) in y.terms() {
                let m = p.meet(q);
                if !m.is_empty() {
                    terms.push((a + b, m));
                }
            }
        }
        Ok(Self {
            cond_exp: self.cond_exp.clone(),
            terms,
        })
    }

    /// `Σ (γ α_i) p_i`.
    pub fn scale(&self, gamma: &RtVector) -> Self {
        Self {
            cond_exp: self.cond_exp.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, p)| (gamma * a, p.clone()))
                .collect(),
        }
    }

    /// `Σ |α_i| p_i`.
    pub fn abs(&self) -> Self {
        Self {
            cond_exp: self.cond_exp.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, p)| (a.abs(), p.clone()))
                .collect(),
        }
    }
}

/// A step function whose components sum to `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardRep(StepFunction);

impl StandardRep {
    pub fn new(x: StepFunction) -> Result<Self> {
        if x.covered() != x.cond_exp.space().full_mask() {
            return Err(Error::InvalidPartition(
                "components of a standard representation must sum to e".into(),
            ));
        }
        Ok(Self(x))
    }

    pub fn step(&self) -> &StepFunction {
        &self.0
    }

    pub fn into_step(self) -> StepFunction {
        self.0
    }
}

impl std::ops::Deref for StandardRep {
    type Target = StepFunction;
    fn deref(&self) -> &StepFunction {
        &self.0
    }
}

/// Results of [`step_ops`].
#[derive(Debug, Clone, PartialEq)]
pub struct StepOps {
    pub sum: StepFunction,
    pub scale: StepFunction,
    pub abs: StepFunction,
}

pub fn step_ops(x: &StepFunction, y: &StepFunction, gamma: &RtVector) -> Result<StepOps> {
    Ok(StepOps {
        sum: x.add(y)?,
        scale: x.scale(gamma),
        abs: x.abs(),
    })
}

fn require_abs_continuous(mu: &Charge) -> Result<()> {
    match mu.abs_continuity_witness() {
        Some(witness) => Err(Error::NotAbsolutelyContinuous { witness }),
        None => Ok(()),
    }
}

fn require_same(mu: &Charge, t: &Arc<CondExp>) -> Result<()> {
    if mu.cond_exp().same(t) {
        Ok(())
    } else {
        Err(Error::CondExpMismatch)
    }
}

/// `Σ α_i μ(p_i)` for the given representation, with no absolute
/// continuity requirement.
pub fn representation_sum(mu: &Charge, x: &StepFunction) -> Result<RtVector> {
    require_same(mu, x.cond_exp())?;
    let mut out = mu.cond_exp().zero();
    for (alpha, p) in x.terms() {
        out = &out + &(alpha * &mu.eval(p)?);
    }
    Ok(out)
}

/// `I_μ(x)` for `μ ≪ T`.
pub fn elementary_integral(mu: &Charge, x: &StepFunction) -> Result<RtVector> {
    require_abs_continuous(mu)?;
    representation_sum(mu, x)
}

/// Sums of one step function over several standard representations.
#[derive(Debug, Clone, PartialEq)]
pub struct WellDefinedness {
    pub base: StandardRep,
    pub base_value: RtVector,
    /// Alternate representations, each realizing the same vector as `base`.
    pub trials: Vec<(StandardRep, RtVector)>,
    /// Index of the first trial whose sum differs from `base_value`.
    pub disagreement: Option<usize>,
}

impl WellDefinedness {
    pub fn all_agree(&self) -> bool {
        self.disagreement.is_none()
    }
}

/// Evaluates `Σ α_i μ(p_i)` on the standard representation of `x` and on
/// `trials` alternates. Trial 0 replaces every coefficient `α` on `p` by
/// `P_{Tp}(e) α`; later trials mix random component splits, that masking,
/// and the addition of `β (e - P_{Tp}(e))` for block-constant `β`. All three
/// moves leave `α p` unchanged.
pub fn well_definedness_witness<R: Rng + ?Sized>(
    mu: &Charge,
    x: &StepFunction,
    trials: usize,
    rng: &mut R,
) -> Result<WellDefinedness> {
    require_same(mu, x.cond_exp())?;
    let t = x.cond_exp().clone();
    let base = x.to_standard();
    let base_value = representation_sum(mu, &base)?;
    let target = base.realize();
    let mut out = Vec::with_capacity(trials);
    for k in 0..trials {
        let terms = if k == 0 {
            base.terms()
                .iter()
                .map(|(a, p)| (mask_coefficient(&t, a, p), p.clone()))
                .collect()
        } else {
            random_representation(&t, base.terms(), rng)
        };
        let rep = StandardRep::new(StepFunction::new(&t, terms)?)?;
        debug_assert_eq!(rep.realize(), target);
        let value = representation_sum(mu, &rep)?;
        out.push((rep, value));
    }
    let disagreement = out.iter().position(|(_, v)| *v != base_value);
    Ok(WellDefinedness {
        base,
        base_value,
        trials: out,
        disagreement,
    })
}

fn mask_coefficient(t: &CondExp, alpha: &RtVector, p: &Component) -> RtVector {
    let support = t.apply(&p.to_vector()).support_unit();
    &support * alpha
}

fn random_representation<R: Rng + ?Sized>(
    t: &Arc<CondExp>,
    terms: &[(RtVector, Component)],
    rng: &mut R,
) -> Vec<(RtVector, Component)> {
    let space = t.space();
    let mut out = Vec::new();
    for (alpha, p) in terms {
        let mut pieces = vec![p.clone()];
        if p.len() > 1 && rng.gen_bool(0.5) {
            let points: Vec<usize> = p.points().collect();
            let mut left = 0u64;
            while left == 0 || left == p.mask() {
                left = points
                    .iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .fold(0, |m, &i| m | 1 << i);
            }
            pieces = vec![
                Component::from_mask(space, left).expect("mask fits"),
                Component::from_mask(space, p.mask() & !left).expect("mask fits"),
            ];
        }
        for piece in pieces {
            let mut a = alpha.clone();
            if rng.gen_bool(0.5) {
                a = mask_coefficient(t, &a, &piece);
            }
            if rng.gen_bool(0.5) {
                let blocks: Vec<Rational> = (0..t.num_blocks())
                    .map(|_| rational::rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
                    .collect();
                let beta = t.from_block_values(&blocks);
                let off = &t.unit() - &t.apply(&piece.to_vector()).support_unit();
                a = &a + &(&beta * &off);
            }
            out.push((a, piece));
        }
    }
    out
}

/// `∫ f dμ` for `f, μ ≥ 0`: `I_μ` of `f` viewed as a step function.
fn positive_integral(mu: &Charge, f: &Vector) -> RtVector {
    let x = StepFunction::from_vector(mu.cond_exp(), f);
    representation_sum(mu, &x).expect("same conditional expectation")
}

/// `∫ f dμ = ∫f⁺dμ⁺ - ∫f⁻dμ⁺ - ∫f⁺dμ⁻ + ∫f⁻dμ⁻` for `μ ≪ T`.
pub fn integral(mu: &Charge, f: &Vector) -> Result<RtVector> {
    require_abs_continuous(mu)?;
    if f.space().as_ref() != mu.cond_exp().space().as_ref() {
        return Err(Error::SpaceMismatch);
    }
    let (fp, fm) = (f.pos(), f.neg_part());
    let (mp, mm) = (mu.pos(), mu.neg_part());
    let a = positive_integral(&mp, &fp);
    let b = positive_integral(&mp, &fm);
    let c = positive_integral(&mm, &fp);
    let d = positive_integral(&mm, &fm);
    Ok(&(&(&a - &b) - &c) + &d)
}

/// `J_μ : f ↦ ∫ f dμ` as a column operator.
pub fn j_operator(mu: &Charge) -> Result<ColumnOperator> {
    require_abs_continuous(mu)?;
    Ok(ColumnOperator::from_map(mu.cond_exp().space(), |f| {
        integral(mu, f).expect("checked above").into_vector()
    }))
}

/// One stage `s_n = α t_n` of the approximation in [`sombrero_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct SombreroStage {
    pub n: u32,
    pub step: StepFunction,
    pub approximation: Vector,
    /// `I_μ(s_n)`.
    pub integral: RtVector,
    /// `f - s_n`.
    pub error: Vector,
    /// `2^{-n} α`.
    pub error_bound: RtVector,
    /// `|∫ f dμ - I_μ(s_n)|`.
    pub integral_error: RtVector,
    /// `2^{-n} α μ(e)`.
    pub integral_bound: RtVector,
    pub monotone: bool,
    pub within_bounds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SombreroReport {
    pub alpha: RtVector,
    pub integral: RtVector,
    pub stages: Vec<SombreroStage>,
}

impl SombreroReport {
    pub fn all_ok(&self) -> bool {
        self.stages.iter().all(|s| s.monotone && s.within_bounds)
    }
}

/// With `α = ‖f‖_{T,∞}` and `t_n = ⌊2^n α⁻¹f⌋ / 2^n`, checks
/// `0 ≤ f - s_n ≤ 2^{-n} α` and `|∫ f dμ - I_μ(s_n)| ≤ 2^{-n} α μ(e)` for
/// `s_n = α t_n` and `n = 1..=steps`.
pub fn sombrero_check(mu: &Charge, f: &Vector, steps: u32) -> Result<SombreroReport> {
    require_abs_continuous(mu)?;
    if let Some(point) = mu.atoms().iter().position(|a| !a.is_positive()) {
        return Err(Error::NotPositive { point });
    }
    if let Some(point) = f.first_negative() {
        return Err(Error::NotPositive { point });
    }
    let t = mu.cond_exp();
    let alpha = t.norm_tinf(f);
    let normalized = alpha.partial_inverse().as_vector() * f;
    let total = integral(mu, f)?;
    let mu_e = mu.total();
    let mut stages = Vec::new();
    let mut previous = Vector::zero(t.space());
    for n in 1..=steps {
        let scale = rational::two_pow(n);
        let t_n = normalized.map(|v| rational::floor(&(v * &scale)) / &scale);
        let step = StepFunction::from_vector(t, &t_n).scale(&alpha);
        let approximation = step.realize();
        let value = representation_sum(mu, &step)?;
        let error = f - &approximation;
        let error_bound = alpha.scale(&(rational::one() / &scale));
        let integral_error = (&total - &value).abs();
        let integral_bound = &error_bound * &mu_e;
        let monotone = previous.le(&approximation) && approximation.le(f);
        let within_bounds =
            error.is_positive() && error.le(&error_bound) && integral_error.le(&integral_bound);
        previous = approximation.clone();
        stages.push(SombreroStage {
            n,
            step,
            approximation,
            integral: value,
            error,
            error_bound,
            integral_error,
            integral_bound,
            monotone,
            within_bounds,
        });
    }
    Ok(SombreroReport {
        alpha,
        integral: total,
        stages,
    })
}

/// Checks that `μ ↦ J_μ` is a Riesz homomorphism on the given pair:
/// `|J_μ|(f) = J_{|μ|}(f)` for every component and every probe `f ≥ 0`, with
/// `|J_μ|` evaluated by sign-pattern enumeration, and
/// `J_{μ∨ν}(p) = (J_μ ∨ J_ν)(p)` with the operator supremum evaluated by
/// enumerating sub-components.
pub fn j_hom_check(mu: &Charge, nu: &Charge, probes: &[Vector]) -> Result<CheckReport> {
    let j_mu = j_operator(mu)?;
    let j_nu = j_operator(nu)?;
    let abs_mu = mu.abs();
    let sup = mu.sup(nu)?;
    let space = mu.cond_exp().space();
    let mut args: Vec<Vector> = space::components(space).map(|p| p.to_vector()).collect();
    for f in probes {
        if let Some(point) = f.first_negative() {
            return Err(Error::NotPositive { point });
        }
        args.push(f.clone());
    }
    let mut report = CheckReport::new();
    report.record_all("modulus", &args, |f| {
        let brute = j_mu.modulus_brute(f);
        let closed = integral(&abs_mu, f).expect("|μ| ≪ T");
        (brute != *closed).then(|| format!("f = {f}: |J_μ|(f) = {brute}, J_|μ|(f) = {closed}"))
    });
    report.record_all("supremum", space::components(space), |p| {
        let f = p.to_vector();
        let brute = j_mu.sup_brute(&j_nu, &f);
        let closed = integral(&sup, &f).expect("μ ∨ ν ≪ T");
        (brute != *closed).then(|| format!("p = {p}: (J_μ ∨ J_ν)(p) = {brute}, J_(μ∨ν)(p) = {closed}"))
    });
    report.record(
        "positivity",
        !mu.is_positive() || j_mu.is_positive(),
        "",
    );
    Ok(report)
}
