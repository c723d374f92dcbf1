//! Integral forms `Hom_A(Ω^k, A)`, the Θ transport to differential forms and the
//! divergence it induces.

use std::collections::BTreeMap;

use super::checks::{subsets, Volume};
use super::{Calculus, DiffForm};
use crate::algebra::SkewPoly;
use crate::audit::{AuditRecord, Status};
use crate::error::{Result, SpbwError};
use crate::sample;
use crate::scalar::Scalar;

/// Right A-linear map on Ω^k given by its values on the `du_S`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IntegralForm {
    pub degree: usize,
    values: BTreeMap<Vec<usize>, SkewPoly>,
}

impl IntegralForm {
    pub fn zero(degree: usize) -> Self {
        Self { degree, values: BTreeMap::new() }
    }

    /// The dual basis element `φ_S(du_T) = [S = T]`.
    pub fn dual(s: Vec<usize>) -> Self {
        let mut f = Self::zero(s.len());
        f.set(s, SkewPoly::one());
        f
    }

    pub fn set(&mut self, s: Vec<usize>, f: SkewPoly) {
        debug_assert_eq!(s.len(), self.degree);
        if f.is_zero() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, f);
        }
    }

    pub fn value(&self, s: &[usize]) -> SkewPoly {
        self.values.get(s).cloned().unwrap_or_else(SkewPoly::zero)
    }

    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &SkewPoly)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// `φ(Σ du_S f_S) = Σ φ(du_S) f_S` over the components of degree k.
pub fn evaluate(calc: &Calculus, phi: &IntegralForm, w: &DiffForm) -> SkewPoly {
    let alg = calc.algebra();
    let mut out = SkewPoly::zero();
    for (s, f) in w.comps() {
        if s.len() == phi.degree {
            out = &out + &alg.mul(&phi.value(s), f);
        }
    }
    out
}

/// `(φ·w)(w') = φ(w∧w')`.
pub fn dual_action(calc: &Calculus, phi: &IntegralForm, w: &DiffForm) -> Result<IntegralForm> {
    let j = match w.degree() {
        Some(j) => j,
        None if w.is_zero() => return Ok(IntegralForm::zero(phi.degree)),
        None => return Err(SpbwError::Calculus("dual action needs a homogeneous form".into())),
    };
    if j > phi.degree {
        return Err(SpbwError::Calculus(format!(
            "cannot act on an integral form of degree {} by a {j}-form",
            phi.degree
        )));
    }
    let k = phi.degree - j;
    let mut out = IntegralForm::zero(k);
    for t in subsets(calc.dim(), k) {
        let v = evaluate(calc, phi, &calc.wedge(w, &DiffForm::basis(t.clone(), SkewPoly::one())));
        out.set(t, v);
    }
    Ok(out)
}

/// Transport between forms and integral forms through the volume form, together
/// with the divergence `∇ = Θ_N∘d∘Θ_{N−1}^{-1}` it induces.
pub struct Divergence<'a> {
    calc: &'a Calculus,
    vol: &'a Volume,
}

impl<'a> Divergence<'a> {
    /// Requires a passed integrability record.
    pub fn new(calc: &'a Calculus, vol: &'a Volume, integrability: &AuditRecord) -> Result<Self> {
        if !integrability.passed() {
            return Err(SpbwError::Calculus("divergence needs an integrable volume form".into()));
        }
        Ok(Self { calc, vol })
    }

    pub fn pi_omega(&self) -> IntegralForm {
        IntegralForm::dual(self.vol.top.clone())
    }

    fn sign(&self, k: usize) -> Scalar {
        let n = self.calc.dim();
        Scalar::from_int(if n.saturating_sub(1) * k % 2 == 0 { 1 } else { -1 })
    }

    /// Θ_k: Ω^k → I_{N−k}, `ω' ↦ (−1)^{(N−1)k} π_ω·ω'`.
    pub fn theta(&self, k: usize, w: &DiffForm) -> Result<IntegralForm> {
        let phi = dual_action(self.calc, &self.pi_omega(), w)?;
        let mut out = IntegralForm::zero(self.calc.dim() - k);
        let s = self.sign(k);
        for (t, f) in phi.values() {
            out.set(t.clone(), f.scale(&s));
        }
        Ok(out)
    }

    /// Inverse of Θ_k on I_{N−k}.
    pub fn theta_inv(&self, psi: &IntegralForm) -> DiffForm {
        let n = self.calc.dim();
        let k = n - psi.degree;
        let sign = self.sign(k);
        let mut out = DiffForm::zero();
        for s in subsets(n, k) {
            let t: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
            let mut list = s.clone();
            list.extend_from_slice(&t);
            let (_, eps) = self.calc.sort_sign(&list).expect("disjoint index sets");
            let g = psi.value(&t).scale(&sign.checked_div(&eps).expect("wedge signs are nonzero"));
            out.add_comp(s, self.calc.nu_inv(&t).apply(&g));
        }
        out
    }

    /// `Θ_{k+1}∘d∘Θ_k^{-1}`: I_{j+1} → I_j.
    pub fn transported(&self, psi: &IntegralForm) -> Result<IntegralForm> {
        if psi.degree == 0 {
            return Err(SpbwError::Calculus("no divergence out of degree zero".into()));
        }
        let w = self.theta_inv(psi);
        let k = self.calc.dim() - psi.degree;
        self.theta(k + 1, &self.calc.differential(&w))
    }

    /// The base divergence I_1 → A.
    pub fn nabla(&self, psi: &IntegralForm) -> Result<SkewPoly> {
        Ok(self.transported(psi)?.value(&[]))
    }

    /// `∇_n(φ)(du_S) = ∇(φ·du_S) + (−1)^{n+1} φ(d du_S)` with `d du_S = 0`.
    pub fn nabla_from_base(&self, phi: &IntegralForm) -> Result<IntegralForm> {
        let n = phi.degree - 1;
        let mut out = IntegralForm::zero(n);
        for s in subsets(self.calc.dim(), n) {
            let act = dual_action(self.calc, phi, &DiffForm::basis(s.clone(), SkewPoly::one()))?;
            out.set(s, self.nabla(&act)?);
        }
        Ok(out)
    }

    fn random_i1(&self, rng: &mut sample::SampleRng, degree: u32) -> IntegralForm {
        let mut phi = IntegralForm::zero(1);
        for i in 0..self.calc.dim() {
            phi.set(vec![i], sample::random_element(self.calc.algebra(), rng, degree));
        }
        phi
    }

    /// `∇(φ·a) = ∇(φ)a + φ(da)` on sampled pairs, and the base rule reproducing
    /// the transported ∇_1 on the dual basis of I_2.
    pub fn leibniz_check(&self, samples: usize, degree: u32, seed: u64) -> Result<AuditRecord> {
        let calc = self.calc;
        let alg = calc.algebra();
        let mut rng = sample::rng(seed);
        let mut witnesses = Vec::new();
        if calc.dim() >= 1 {
            for _ in 0..samples {
                let phi = self.random_i1(&mut rng, degree);
                let a = sample::random_element(alg, &mut rng, degree);
                let lhs = self.nabla(&dual_action(calc, &phi, &DiffForm::function(a.clone()))?)?;
                let rhs = &alg.mul(&self.nabla(&phi)?, &a) + &evaluate(calc, &phi, &calc.d_function(&a));
                if lhs != rhs {
                    witnesses.push(format!("a = {}", alg.render(&a)));
                    break;
                }
            }
        }
        for u in subsets(calc.dim(), 2) {
            let phi = IntegralForm::dual(u.clone());
            if self.nabla_from_base(&phi)? != self.transported(&phi)? {
                witnesses.push(format!("transported divergence differs on the dual of {u:?}"));
            }
        }
        let status = Status::from_bool(witnesses.is_empty());
        let mut rec = AuditRecord::new(
            "divergence",
            status,
            format!("{samples} sampled pairs of degree <= {degree}"),
        );
        rec.witnesses = witnesses;
        Ok(rec)
    }

    /// Curvature `∇∘∇_1` on the dual basis of I_2.
    pub fn flatness_check(&self) -> Result<AuditRecord> {
        let mut witnesses = Vec::new();
        let duals = subsets(self.calc.dim(), 2);
        for u in &duals {
            let phi = IntegralForm::dual(u.clone());
            let curv = self.nabla(&self.nabla_from_base(&phi)?)?;
            if !curv.is_zero() {
                witnesses.push(format!("curvature on {u:?}: {}", self.calc.algebra().render(&curv)));
            }
        }
        let mut rec = AuditRecord::new(
            "flatness",
            Status::from_bool(witnesses.is_empty()),
            format!("curvature vanishes on {} dual basis forms", duals.len()),
        );
        rec.witnesses = witnesses;
        Ok(rec)
    }
}
