//! `T`-strong duals of `L^1(T)`, `L^2(T)` and `L^∞(T)`.
//!
//! A functional `φ : E → R(T)` is stored by its columns `φ(1_{{ω}})`.
//! `R(T)`-homogeneity `φ(g f) = g φ(f)` for block-constant `g` holds iff
//! every column vanishes off the block of its atom; regularity and
//! boundedness are automatic in finite dimensions, as is order continuity.
//!
//! The unit balls for `p = 1` and `p = ∞` are polytopes, so dual norms are
//! computed exactly by enumerating their vertices. For `p = 2` the squared
//! norm is returned.

use std::sync::Arc;

use num::Zero;

use crate::charge::Charge;
use crate::check::CheckReport;
use crate::condexp::{CondExp, RtVector};
use crate::error::{Error, Result};
use crate::operator::ColumnOperator;
use crate::rational::{self, Rational};
use crate::space::{self, Component, Vector};

/// Cap on the number of unit-ball vertices enumerated.
pub const MAX_VERTICES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualExponent {
    One,
    Two,
    Infinity,
}

impl DualExponent {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "1" => Some(Self::One),
            "2" => Some(Self::Two),
            "inf" | "infinity" | "∞" => Some(Self::Infinity),
            _ => None,
        }
    }
}

impl std::fmt::Display for DualExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::One => "1",
            Self::Two => "2",
            Self::Infinity => "inf",
        })
    }
}

/// How a functional was specified.
#[derive(Debug, Clone, PartialEq)]
pub enum DualKind {
    /// `g ↦ T(h g)`.
    Kernel(Vector),
    /// `f ↦ ∫ f dμ`.
    Charge(Charge),
    /// `f ↦ Σ f(ω) col(ω)`.
    Raw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualFunctional {
    cond_exp: Arc<CondExp>,
    kind: DualKind,
    columns: Vec<RtVector>,
}

/// `‖φ‖`, or its square for `p = 2`.
#[derive(Debug, Clone, PartialEq)]
pub enum DualNorm {
    Exact(RtVector),
    Squared(RtVector),
}

impl DualNorm {
    pub fn value(&self) -> &RtVector {
        match self {
            Self::Exact(v) | Self::Squared(v) => v,
        }
    }
}

/// The three descriptions of the dual norm, each computed on its own.
#[derive(Debug, Clone, PartialEq)]
pub struct DualNormCharacterizations {
    /// Least `k ∈ R(T)_+` with `|φ(f)| ≤ k ‖f‖_{T,p}` for all `f`.
    pub inf_of_bounds: RtVector,
    /// `sup{|φ(f)| : ‖f‖_{T,p} ≤ e}` over the vertices of the unit ball.
    pub sup_unit_ball: RtVector,
    /// `sup{|φ(f)| ‖f‖_{T,p}⁻¹}` over a finite family containing maximizers.
    pub sup_normalized: RtVector,
}

impl DualNormCharacterizations {
    pub fn agree(&self) -> bool {
        self.inf_of_bounds == self.sup_unit_ball && self.sup_unit_ball == self.sup_normalized
    }
}

impl DualFunctional {
    /// `g ↦ T(h g)`.
    pub fn kernel(t: &Arc<CondExp>, h: &Vector) -> Result<Self> {
        if h.space().as_ref() != t.space().as_ref() {
            return Err(Error::SpaceMismatch);
        }
        let columns = (0..t.size())
            .map(|i| t.apply(&Component::atom(t.space(), i).mask_vector(h)))
            .collect();
        Ok(Self {
            cond_exp: t.clone(),
            kind: DualKind::Kernel(h.clone()),
            columns,
        })
    }

    /// `f ↦ ∫ f dμ` for `μ ≪ T`.
    pub fn from_charge(mu: &Charge) -> Result<Self> {
        if let Some(witness) = mu.abs_continuity_witness() {
            return Err(Error::NotAbsolutelyContinuous { witness });
        }
        let t = mu.cond_exp().clone();
        // ∫ 1_ω dμ = μ(1_ω).
        let columns = mu.atoms().to_vec();
        Ok(Self {
            cond_exp: t,
            kind: DualKind::Charge(mu.clone()),
            columns,
        })
    }

    /// A functional from its columns; rejects non-block-constant columns
    /// and columns that break `R(T)`-homogeneity.
    pub fn raw(t: &Arc<CondExp>, columns: Vec<Vector>) -> Result<Self> {
        if columns.len() != t.size() {
            return Err(Error::LengthMismatch {
                expected: t.size(),
                got: columns.len(),
            });
        }
        let columns = columns
            .into_iter()
            .map(|c| t.range_element(c))
            .collect::<Result<Vec<_>>>()?;
        if let Some(atom) = homogeneity_violation(t, &columns) {
            return Err(Error::NotHomogeneous { atom });
        }
        Ok(Self {
            cond_exp: t.clone(),
            kind: DualKind::Raw,
            columns,
        })
    }

    pub fn zero(t: &Arc<CondExp>) -> Self {
        Self {
            cond_exp: t.clone(),
            kind: DualKind::Raw,
            columns: vec![t.zero(); t.size()],
        }
    }

    pub fn cond_exp(&self) -> &Arc<CondExp> {
        &self.cond_exp
    }

    pub fn kind(&self) -> &DualKind {
        &self.kind
    }

    pub fn columns(&self) -> &[RtVector] {
        &self.columns
    }

    /// The same functional, forgetting how it was specified.
    pub fn to_raw(&self) -> Self {
        Self {
            cond_exp: self.cond_exp.clone(),
            kind: DualKind::Raw,
            columns: self.columns.clone(),
        }
    }

    /// Equality as maps `E → R(T)`.
    pub fn same_map(&self, other: &Self) -> bool {
        self.cond_exp.same(&other.cond_exp) && self.columns == other.columns
    }

    pub fn apply(&self, f: &Vector) -> RtVector {
        assert!(f.space().as_ref() == self.cond_exp.space().as_ref(), "space mismatch");
        let mut out = self.cond_exp.zero();
        for (c, v) in self.columns.iter().zip(f.values()) {
            if !v.is_zero() {
                out = &out + &c.scale(v);
            }
        }
        out
    }

    pub fn as_operator(&self) -> ColumnOperator {
        ColumnOperator::new(
            self.cond_exp.space(),
            self.columns.iter().map(|c| c.as_vector().clone()).collect(),
        )
        .expect("columns live on the space")
    }

    /// `φ ≥ 0`, i.e. `φ(f) ≥ 0` whenever `f ≥ 0`.
    pub fn is_positive(&self) -> bool {
        self.columns.iter().all(|c| c.is_positive())
    }

    fn with_columns(&self, columns: Vec<RtVector>) -> Self {
        Self {
            cond_exp: self.cond_exp.clone(),
            kind: DualKind::Raw,
            columns,
        }
    }

    /// `φ⁺(f) = sup{φ(g) : 0 ≤ g ≤ f}`, evaluated on each atom by
    /// enumerating sub-components.
    pub fn positive_part_brute(&self) -> Self {
        let op = self.as_operator();
        let space = self.cond_exp.space();
        let columns = (0..self.cond_exp.size())
            .map(|i| {
                RtVector::trusted(op.positive_part_brute(&Component::atom(space, i).to_vector()))
            })
            .collect();
        self.with_columns(columns)
    }

    /// `|φ|(f) = sup{|φ(g)| : |g| ≤ f}` on each atom, by sign patterns.
    pub fn modulus_brute(&self) -> Self {
        let op = self.as_operator();
        let space = self.cond_exp.space();
        let columns = (0..self.cond_exp.size())
            .map(|i| RtVector::trusted(op.modulus_brute(&Component::atom(space, i).to_vector())))
            .collect();
        self.with_columns(columns)
    }

    /// `(φ ∨ ψ)(f) = sup{φ(g) + ψ(f - g) : 0 ≤ g ≤ f}` on each atom.
    pub fn sup_brute(&self, other: &Self) -> Result<Self> {
        if !self.cond_exp.same(&other.cond_exp) {
            return Err(Error::CondExpMismatch);
        }
        let (a, b) = (self.as_operator(), other.as_operator());
        let space = self.cond_exp.space();
        let columns = (0..self.cond_exp.size())
            .map(|i| RtVector::trusted(a.sup_brute(&b, &Component::atom(space, i).to_vector())))
            .collect();
        Ok(self.with_columns(columns))
    }

    /// Block value `c_ω` of column `ω` on the block of `ω`.
    fn coefficient(&self, point: usize) -> &Rational {
        self.columns[point].get(point)
    }

    /// `‖φ‖` for `p ∈ {1, ∞}` by vertex enumeration; `‖φ‖²` for `p = 2`.
    pub fn dual_norm(&self, p: DualExponent) -> Result<DualNorm> {
        match p {
            DualExponent::One => Ok(DualNorm::Exact(self.sup_over_l1_vertices()?)),
            DualExponent::Infinity => Ok(DualNorm::Exact(self.sup_over_sign_vectors()?)),
            DualExponent::Two => match self.kind {
                DualKind::Raw => Err(Error::Unsupported(
                    "the L^2 dual norm of a raw functional; convert it with l2_recover first"
                        .into(),
                )),
                _ => Ok(DualNorm::Squared(self.l2_norm_squared())),
            },
        }
    }

    /// Vertices of `{g : T|g| ≤ e}`: on each block `Ω_i` pick one atom `ω`
    /// and a sign, `g = ±(m_i / w_ω) 1_ω`.
    pub fn l1_unit_ball_vertices(&self) -> Result<Vec<Vector>> {
        let t = &self.cond_exp;
        let count = (0..t.num_blocks()).try_fold(1usize, |acc, b| {
            acc.checked_mul(2 * t.block_points(b).len())
        });
        if count.is_none_or(|c| c > MAX_VERTICES) {
            return Err(Error::TooLarge {
                points: t.size(),
                bound: MAX_VERTICES,
            });
        }
        let space = t.space();
        let mut vertices = vec![Vector::zero(space).into_values()];
        for b in 0..t.num_blocks() {
            let mass = &t.block_masses()[b];
            let mut next = Vec::new();
            for v in &vertices {
                for &w in t.block_points(b) {
                    let height = mass / space.weight(w);
                    for sign in [1, -1] {
                        let mut g = v.clone();
                        g[w] = height.clone() * rational::int(sign);
                        next.push(g);
                    }
                }
            }
            vertices = next;
        }
        vertices
            .into_iter()
            .map(|g| Vector::new(space, g))
            .collect()
    }

    fn sup_abs_over(&self, vectors: impl IntoIterator<Item = Vector>) -> RtVector {
        vectors
            .into_iter()
            .fold(self.cond_exp.zero(), |acc, g| acc.sup(&self.apply(&g).abs()))
    }

    fn sup_over_l1_vertices(&self) -> Result<RtVector> {
        Ok(self.sup_abs_over(self.l1_unit_ball_vertices()?))
    }

    fn sup_over_sign_vectors(&self) -> Result<RtVector> {
        let n = self.cond_exp.size();
        if n > 20 {
            return Err(Error::TooLarge { points: n, bound: 20 });
        }
        let space = self.cond_exp.space();
        let signs = (0..1u64 << n).map(|m| {
            Vector::from_fn(space, |i| rational::int(if m >> i & 1 == 1 { -1 } else { 1 }))
        });
        Ok(self.sup_abs_over(signs))
    }

    /// `Σ_{ω∈Ω_i} c_ω² m_i / w_ω` on each block.
    fn l2_norm_squared(&self) -> RtVector {
        let t = &self.cond_exp;
        let values: Vec<Rational> = (0..t.num_blocks())
            .map(|b| {
                let m = &t.block_masses()[b];
                t.block_points(b)
                    .iter()
                    .map(|&w| {
                        let c = self.coefficient(w);
                        c * c * m / t.space().weight(w)
                    })
                    .sum()
            })
            .collect();
        t.from_block_values(&values)
    }

    /// `g̃(ω) = c_ω m_i / w_ω`, for which Cauchy–Schwarz is an equality:
    /// `φ(g̃)² = ‖φ‖² T(g̃²)`.
    pub fn l2_attainer(&self) -> Vector {
        l1_recover_columns(&self.cond_exp, &self.columns)
    }

    /// Inf-of-bounds, sup over the unit ball and normalized sup, for
    /// `p ∈ {1, ∞}`.
    pub fn dual_norm_characterizations(&self, p: DualExponent) -> Result<DualNormCharacterizations> {
        let t = &self.cond_exp;
        let space = t.space();
        match p {
            DualExponent::One => {
                // |φ(f)| ≤ Σ |f_ω| |c_ω| ≤ max_ω(|c_ω| m/w_ω) T|f| blockwise.
                let bounds: Vec<Rational> = (0..t.num_blocks())
                    .map(|b| {
                        let m = &t.block_masses()[b];
                        t.block_points(b).iter().fold(rational::zero(), |acc, &w| {
                            let k = num::Signed::abs(self.coefficient(w)) * m / space.weight(w);
                            rational::max(&acc, &k)
                        })
                    })
                    .collect();
                let mut candidates = vec![Vector::zero(space).into_values()];
                for b in 0..t.num_blocks() {
                    let mut next = Vec::new();
                    for c in &candidates {
                        next.push(c.clone());
                        for &w in t.block_points(b) {
                            let mut g = c.clone();
                            g[w] = rational::one();
                            next.push(g);
                        }
                    }
                    candidates = next;
                }
                let normalized = candidates.into_iter().fold(t.zero(), |acc, g| {
                    let g = Vector::new(space, g).expect("length matches");
                    let ratio = &self.apply(&g).abs() * &t.apply(&g.abs()).partial_inverse();
                    acc.sup(&ratio)
                });
                Ok(DualNormCharacterizations {
                    inf_of_bounds: t.from_block_values(&bounds),
                    sup_unit_ball: self.sup_over_l1_vertices()?,
                    sup_normalized: normalized,
                })
            }
            DualExponent::Infinity => {
                let n = t.size();
                if n > 12 {
                    return Err(Error::TooLarge { points: n, bound: 12 });
                }
                // |φ(f)| ≤ Σ |f_ω| |col ω| ≤ (Σ |col ω|) ‖f‖_{T,∞}.
                let bound = self
                    .columns
                    .iter()
                    .fold(t.zero(), |acc, c| &acc + &c.abs());
                let mut normalized = t.zero();
                for code in 0..3usize.pow(n as u32) {
                    let mut rest = code;
                    let g = Vector::from_fn(space, |_| {
                        let d = rest % 3;
                        rest /= 3;
                        rational::int(d as i64 - 1)
                    });
                    let ratio = &self.apply(&g).abs() * &t.norm_tinf(&g).partial_inverse();
                    normalized = normalized.sup(&ratio);
                }
                Ok(DualNormCharacterizations {
                    inf_of_bounds: bound,
                    sup_unit_ball: self.sup_over_sign_vectors()?,
                    sup_normalized: normalized,
                })
            }
            DualExponent::Two => Err(Error::Unsupported(
                "the L^2 unit ball is not a polytope".into(),
            )),
        }
    }
}

fn homogeneity_violation(t: &CondExp, columns: &[RtVector]) -> Option<usize> {
    (0..t.size()).find(|&i| {
        let block = t.partition().block_component(t.block_of(i));
        !columns[i].support().is_subset(&block)
    })
}

/// `h(ω) = c_ω m_i / w_ω`, solving `T(h 1_ω) = c_ω 1_{Ω_i}`.
fn l1_recover_columns(t: &CondExp, columns: &[RtVector]) -> Vector {
    Vector::from_fn(t.space(), |i| {
        let m = &t.block_masses()[t.block_of(i)];
        columns[i].get(i) * m / t.space().weight(i)
    })
}

/// `f ↦ (g ↦ T(f g))` on `L^1(T)`.
pub fn l1_representation(t: &Arc<CondExp>, f: &Vector) -> Result<DualFunctional> {
    DualFunctional::kernel(t, f)
}

/// The kernel `h` with `φ = T(h ·)`.
pub fn l1_recover(phi: &DualFunctional) -> Result<Vector> {
    if let Some(atom) = homogeneity_violation(&phi.cond_exp, &phi.columns) {
        return Err(Error::NotHomogeneous { atom });
    }
    Ok(l1_recover_columns(&phi.cond_exp, &phi.columns))
}

/// `f ↦ (g ↦ T(f g))` on `L^2(T)`.
pub fn l2_representation(t: &Arc<CondExp>, f: &Vector) -> Result<DualFunctional> {
    DualFunctional::kernel(t, f)
}

pub fn l2_recover(phi: &DualFunctional) -> Result<Vector> {
    l1_recover(phi)
}

/// `Ψ(φ) = φ|_{C_e}`, which is always `T`-absolutely continuous.
pub fn linfty_to_charge(phi: &DualFunctional) -> Result<Charge> {
    if let Some(atom) = homogeneity_violation(&phi.cond_exp, &phi.columns) {
        return Err(Error::NotHomogeneous { atom });
    }
    let mu = Charge::from_atoms(&phi.cond_exp, phi.columns.clone());
    debug_assert!(mu.is_abs_continuous());
    Ok(mu)
}

/// `Φ(μ) = ∫ · dμ`.
pub fn charge_to_linfty(mu: &Charge) -> Result<DualFunctional> {
    DualFunctional::from_charge(mu)
}

/// Checks that `φ` with `|φ| ≤ |ψ|` inherits the bound of `ψ`:
/// `|φ(f)| ≤ |φ|(|f|) ≤ |ψ|(|f|) ≤ ‖ψ‖ ‖f‖_{T,p}` on a probe family, and
/// `‖φ‖ ≤ ‖ψ‖`. Moduli are computed by sign-pattern enumeration.
pub fn dual_ideal_check(
    phi: &DualFunctional,
    psi: &DualFunctional,
    p: DualExponent,
    probes: &[Vector],
) -> Result<CheckReport> {
    if !phi.cond_exp.same(&psi.cond_exp) {
        return Err(Error::CondExpMismatch);
    }
    let t = &phi.cond_exp;
    let space = t.space();
    let abs_phi = phi.modulus_brute();
    let abs_psi = psi.modulus_brute();
    let mut report = CheckReport::new();
    report.record_all("dominated", 0..t.size(), |i| {
        (!abs_phi.columns[i].le(&abs_psi.columns[i]))
            .then(|| format!("|φ|(1_{}) exceeds |ψ|(1_{})", i + 1, i + 1))
    });
    let with_kernel = |f: &DualFunctional| match p {
        DualExponent::Two => l2_recover(f).and_then(|h| DualFunctional::kernel(t, &h)),
        _ => Ok(f.clone()),
    };
    let norm_phi = with_kernel(phi)?.dual_norm(p)?;
    let norm_psi = with_kernel(psi)?.dual_norm(p)?;
    report.record(
        "norm_monotone",
        norm_phi.value().le(norm_psi.value()),
        format!("‖φ‖ = {}, ‖ψ‖ = {}", norm_phi.value(), norm_psi.value()),
    );
    let mut args: Vec<Vector> = space::components(space).map(|c| c.to_vector()).collect();
    args.extend(probes.iter().cloned());
    report.record_all("bound_inherited", &args, |f| {
        let lhs = phi.apply(f).abs();
        let mid = abs_phi.apply(&f.abs());
        let upper = abs_psi.apply(&f.abs());
        if !lhs.le(&mid) || !mid.le(&upper) {
            return Some(format!("modulus chain fails at f = {f}"));
        }
        let ok = match p {
            DualExponent::One => lhs.le(&(norm_psi.value() * &t.apply(&f.abs()))),
            DualExponent::Infinity => lhs.le(&(norm_psi.value() * &t.norm_tinf(f))),
            DualExponent::Two => lhs.pow(2).le(&(norm_psi.value() * &t.apply(&(f * f)))),
        };
        (!ok).then(|| format!("|φ(f)| exceeds ‖ψ‖ ‖f‖ at f = {f}"))
    });
    Ok(report)
}
