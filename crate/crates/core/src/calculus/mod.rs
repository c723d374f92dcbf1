//! Differential calculi on an extension: forms are right combinations of wedge
//! monomials `du_S`, and functions move to the right through the twists,
//! `a·du_i = du_i·ν_i(a)`.

pub mod checks;
pub mod integral;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Mutex;

use crate::algebra::{Algebra, Monomial, SkewPoly};
use crate::audit::{AuditRecord, Status};
use crate::error::{Result, SpbwError};
use crate::exponents::{self, Exponents};
use crate::extended::{extend_sigma, hypothesis_check, AlgebraEndo};
use crate::linalg;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Differentials of the generators only, twisted by the inverse lifts of σ_i.
    Theorem,
    /// Differentials of every coordinate with supplied twists.
    Flat,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Theorem => "theorem",
            Mode::Flat => "flat",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct CalculusSpec {
    pub mode: Mode,
    /// Display names of the differentials, e.g. `dx1`.
    pub names: Vec<String>,
    /// Each `du_i` as a linear form in the coordinates (coefficient variables first).
    pub dgens: Vec<Vec<Scalar>>,
    pub twists: Vec<AlgebraEndo>,
    /// λ_ij for i < j: `du_j∧du_i = −λ_ij du_i∧du_j`. Missing entries are 1.
    pub wedge_signs: BTreeMap<(usize, usize), Scalar>,
}

fn unit_form(len: usize, c: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    v[c] = Scalar::one();
    v
}

impl CalculusSpec {
    pub fn theorem(alg: &Algebra) -> Result<Self> {
        let (m, n) = (alg.ncoeffs(), alg.ngens());
        let mut twists = Vec::with_capacity(n);
        for i in 0..n {
            let s = extend_sigma(alg, i)?;
            let inv = s.inverse().ok_or_else(|| {
                SpbwError::Calculus(format!("sigma of {} has no inverse", alg.symbols().gens[i]))
            })?;
            twists.push(inv);
        }
        Ok(Self {
            mode: Mode::Theorem,
            names: alg.symbols().gens.iter().map(|g| format!("d{g}")).collect(),
            dgens: (0..n).map(|i| unit_form(alg.ncoords(), m + i)).collect(),
            twists,
            wedge_signs: BTreeMap::new(),
        })
    }

    /// One differential per coordinate with the given twists.
    pub fn flat(alg: &Algebra, twists: Vec<AlgebraEndo>) -> Self {
        let nc = alg.ncoords();
        Self {
            mode: Mode::Flat,
            names: (0..nc).map(|c| format!("d{}", alg.coord_name(c))).collect(),
            dgens: (0..nc).map(|c| unit_form(nc, c)).collect(),
            twists,
            wedge_signs: BTreeMap::new(),
        }
    }

    pub fn with_dgens(mut self, names: Vec<String>, forms: Vec<Vec<Scalar>>) -> Self {
        self.names = names;
        self.dgens = forms;
        self
    }

    pub fn with_wedge_sign(mut self, i: usize, j: usize, lambda: Scalar) -> Self {
        self.wedge_signs.insert((i.min(j), i.max(j)), lambda);
        self
    }

    pub fn lambda(&self, i: usize, j: usize) -> Scalar {
        self.wedge_signs.get(&(i, j)).cloned().unwrap_or_else(Scalar::one)
    }
}

/// A differential form `Σ_S du_S·f_S` with sorted index sets and nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiffForm {
    comps: BTreeMap<Vec<usize>, SkewPoly>,
}

impl DiffForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn function(f: SkewPoly) -> Self {
        Self::basis(Vec::new(), f)
    }

    pub fn basis(s: Vec<usize>, f: SkewPoly) -> Self {
        debug_assert!(s.windows(2).all(|w| w[0] < w[1]), "index set must be sorted");
        let mut out = Self::zero();
        out.add_comp(s, f);
        out
    }

    pub fn add_comp(&mut self, s: Vec<usize>, f: SkewPoly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.comps.remove(&s) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.comps.insert(s, sum);
        }
    }

    pub fn comps(&self) -> impl Iterator<Item = (&Vec<usize>, &SkewPoly)> {
        self.comps.iter()
    }

    pub fn component(&self, s: &[usize]) -> SkewPoly {
        self.comps.get(s).cloned().unwrap_or_else(SkewPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Degree when all components share it.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.comps.keys().map(Vec::len);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (s, f) in &self.comps {
            out.add_comp(s.clone(), f.scale(c));
        }
        out
    }
}

impl Add for &DiffForm {
    type Output = DiffForm;
    fn add(self, rhs: &DiffForm) -> DiffForm {
        let mut out = self.clone();
        for (s, f) in &rhs.comps {
            out.add_comp(s.clone(), f.clone());
        }
        out
    }
}

impl Neg for &DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Sub for &DiffForm {
    type Output = DiffForm;
    fn sub(self, rhs: &DiffForm) -> DiffForm {
        self + &(-rhs)
    }
}

pub struct Calculus {
    alg: Algebra,
    spec: CalculusSpec,
    /// d(u_c) as right combinations of the du_i.
    dcoord: Vec<Vec<(usize, Scalar)>>,
    nu: Mutex<HashMap<Vec<usize>, AlgebraEndo>>,
    d0: Mutex<HashMap<(Exponents, Monomial), DiffForm>>,
}

impl fmt::Debug for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Calculus")
            .field("mode", &self.spec.mode)
            .field("dgens", &self.spec.names)
            .finish()
    }
}

impl Calculus {
    /// Structural validation only; see [`Calculus::compatibility`].
    pub fn new(alg: &Algebra, spec: CalculusSpec) -> Result<Self> {
        let bad = |s: String| Err(SpbwError::Calculus(s));
        let (m, nc) = (alg.ncoeffs(), alg.ncoords());
        let n = spec.dgens.len();
        if spec.twists.len() != n || spec.names.len() != n {
            return bad(format!("{n} differentials need {n} names and twists"));
        }
        let covered: Vec<usize> = match spec.mode {
            Mode::Theorem => (m..nc).collect(),
            Mode::Flat => (0..nc).collect(),
        };
        if covered.len() != n {
            return bad(format!("{} mode needs {} differentials, got {n}", spec.mode, covered.len()));
        }
        if spec.mode == Mode::Theorem {
            let h = hypothesis_check(alg);
            if !(h.holds("T1") && h.holds("T2")) {
                return bad("theorem mode requires unit d, no linear tails and commuting sigmas".into());
            }
            if spec.wedge_signs.values().any(|l| !l.is_one()) {
                return bad("theorem mode uses plain antisymmetry".into());
            }
        }
        let mut mat = Vec::with_capacity(n);
        for (i, form) in spec.dgens.iter().enumerate() {
            if form.len() != nc {
                return bad(format!("{} must be a form in {nc} coordinates", spec.names[i]));
            }
            if (0..nc).any(|c| !covered.contains(&c) && !form[c].is_zero()) {
                return bad(format!("{} involves a coordinate without a differential", spec.names[i]));
            }
            mat.push(covered.iter().map(|&c| form[c].clone()).collect::<Vec<_>>());
        }
        let inv = linalg::invert(&mat)
            .map_err(|_| SpbwError::Calculus("differentials are linearly dependent".into()))?;
        let mut dcoord = vec![Vec::new(); nc];
        for (k, &c) in covered.iter().enumerate() {
            dcoord[c] = (0..n)
                .filter(|&i| !inv[k][i].is_zero())
                .map(|i| (i, inv[k][i].clone()))
                .collect();
        }
        for (i, tw) in spec.twists.iter().enumerate() {
            if !tw.algebra().same(alg) {
                return bad(format!("twist of {} belongs to another algebra", spec.names[i]));
            }
            if !tw.has_inverse() {
                return bad(format!("twist of {} has no inverse", spec.names[i]));
            }
        }
        Ok(Self { alg: alg.clone(), spec, dcoord, nu: Mutex::default(), d0: Mutex::default() })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn spec(&self) -> &CalculusSpec {
        &self.spec
    }

    /// Number of differentials N.
    pub fn dim(&self) -> usize {
        self.spec.dgens.len()
    }

    /// ν_S = ν_{s_k}∘…∘ν_{s_1}.
    pub fn nu(&self, s: &[usize]) -> AlgebraEndo {
        if let Some(e) = self.nu.lock().expect("nu lock").get(s) {
            return e.clone();
        }
        let e = match s.split_last() {
            None => AlgebraEndo::identity(&self.alg),
            Some((&last, rest)) => self.spec.twists[last].compose(&self.nu(rest)),
        };
        self.nu.lock().expect("nu lock").insert(s.to_vec(), e.clone());
        e
    }

    pub fn nu_inv(&self, s: &[usize]) -> AlgebraEndo {
        self.nu(s).inverse().expect("twists are invertible")
    }

    /// `f·du_S` moved to `du_S·ν_S(f)`.
    pub fn push_left(&self, f: &SkewPoly, s: &[usize]) -> DiffForm {
        DiffForm::basis(s.to_vec(), self.nu(s).apply(f))
    }

    pub fn left_mul(&self, a: &SkewPoly, w: &DiffForm) -> DiffForm {
        let mut out = DiffForm::zero();
        for (s, f) in w.comps() {
            out.add_comp(s.clone(), self.alg.mul(&self.nu(s).apply(a), f));
        }
        out
    }

    pub fn right_mul(&self, w: &DiffForm, a: &SkewPoly) -> DiffForm {
        let mut out = DiffForm::zero();
        for (s, f) in w.comps() {
            out.add_comp(s.clone(), self.alg.mul(f, a));
        }
        out
    }

    /// Sort a list of indices, returning the sorted set and the factor ε with
    /// `du_{list} = ε du_{sorted}`, or `None` on a repeated index.
    pub fn sort_sign(&self, list: &[usize]) -> Option<(Vec<usize>, Scalar)> {
        let mut l = list.to_vec();
        let mut eps = Scalar::one();
        for pass in 0..l.len() {
            for p in 0..l.len().saturating_sub(pass + 1) {
                if l[p] == l[p + 1] {
                    return None;
                }
                if l[p] > l[p + 1] {
                    eps = -(&eps * &self.spec.lambda(l[p + 1], l[p]));
                    l.swap(p, p + 1);
                }
            }
        }
        if l.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((l, eps))
    }

    pub fn wedge(&self, a: &DiffForm, b: &DiffForm) -> DiffForm {
        let mut out = DiffForm::zero();
        for (s, f) in a.comps() {
            for (t, g) in b.comps() {
                let mut list = s.clone();
                list.extend_from_slice(t);
                let Some((sorted, eps)) = self.sort_sign(&list) else {
                    continue;
                };
                let coeff = self.alg.mul(&self.nu(t).apply(f), g);
                out.add_comp(sorted, coeff.scale(&eps));
            }
        }
        out
    }

    /// `d(u_c)`.
    pub fn d_coord(&self, c: usize) -> DiffForm {
        let mut out = DiffForm::zero();
        for (i, s) in &self.dcoord[c] {
            out.add_comp(vec![*i], SkewPoly::scalar(s.clone()));
        }
        out
    }

    fn d_basis(&self, gamma: &Exponents, alpha: &Monomial) -> DiffForm {
        let key = (gamma.clone(), alpha.clone());
        if let Some(w) = self.d0.lock().expect("d lock").get(&key) {
            return w.clone();
        }
        let m = self.alg.ncoeffs();
        let split = match exponents::last_var(alpha) {
            Some(k) => Some((gamma.clone(), exponents::decrement(alpha, k), m + k)),
            None => exponents::last_var(gamma).map(|a| (exponents::decrement(gamma, a), Vec::new(), a)),
        };
        let out = match split {
            None => DiffForm::zero(),
            Some((g, a, c)) => {
                let head = self.alg.basis_element(&g, &a);
                let mut out = self.right_mul(&self.d_basis(&g, &a), &self.alg.coord(c));
                for (i, s) in &self.dcoord[c] {
                    out.add_comp(vec![*i], self.nu(&[*i]).apply(&head).scale(s));
                }
                out
            }
        };
        self.d0.lock().expect("d lock").insert(key, out.clone());
        out
    }

    /// d on functions.
    pub fn d_function(&self, f: &SkewPoly) -> DiffForm {
        let mut out = DiffForm::zero();
        for (gamma, alpha, s) in f.basis_terms() {
            out = &out + &self.d_basis(gamma, alpha).scale(s);
        }
        out
    }

    /// `d(du_S·f) = (−1)^{|S|} du_S∧d(f)`.
    pub fn differential(&self, w: &DiffForm) -> DiffForm {
        let mut out = DiffForm::zero();
        for (s, f) in w.comps() {
            let df = self.d_function(f);
            let term = self.wedge(&DiffForm::basis(s.clone(), SkewPoly::one()), &df);
            out = if s.len() % 2 == 0 { &out + &term } else { &out - &term };
        }
        out
    }

    pub fn render(&self, w: &DiffForm) -> String {
        if w.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (s, f) in w.comps() {
            let name = s.iter().map(|&i| self.spec.names[i].as_str()).collect::<Vec<_>>().join("∧");
            let terms: Vec<_> = f.basis_terms().collect();
            let neg = terms.len() == 1 && terms[0].2.is_negative_monomial();
            let coef = if neg { -f } else { f.clone() };
            let c = self.alg.render(&coef);
            let body = match (name.is_empty(), coef == SkewPoly::one(), terms.len() > 1) {
                (true, _, _) => c,
                (false, true, _) => name,
                (false, false, true) => format!("{name}*({c})"),
                (false, false, false) => format!("{name}*{c}"),
            };
            parts.push((neg, body));
        }
        let mut out = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    /// Leibniz residuals on every non-normal pair of coordinates, commuting twists,
    /// and `d(a)∧du_i + du_i∧d(ν_i(a)) = 0` on coordinates.
    pub fn compatibility(&self) -> AuditRecord {
        let (m, n, nc) = (self.alg.ncoeffs(), self.alg.ngens(), self.alg.ncoords());
        let mut witnesses = Vec::new();
        let tw = &self.spec.twists;
        for i in 0..tw.len() {
            for j in i + 1..tw.len() {
                if !tw[i].commutes_with(&tw[j]) {
                    witnesses.push(format!(
                        "twists of {} and {} do not commute",
                        self.spec.names[i], self.spec.names[j]
                    ));
                }
            }
        }
        let mut pairs = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                pairs.push((b, a));
            }
        }
        for i in 0..n {
            for a in 0..m {
                pairs.push((m + i, a));
            }
        }
        for j in 0..n {
            for i in 0..j {
                pairs.push((m + j, m + i));
            }
        }
        for (p, q) in pairs {
            let (up, uq) = (self.alg.coord(p), self.alg.coord(q));
            let lhs = &self.right_mul(&self.d_coord(p), &uq) + &self.left_mul(&up, &self.d_coord(q));
            let res = &lhs - &self.d_function(&self.alg.mul(&up, &uq));
            if !res.is_zero() {
                witnesses.push(format!(
                    "relation {}*{}: residual {}",
                    self.alg.coord_name(p),
                    self.alg.coord_name(q),
                    self.render(&res)
                ));
            }
        }
        for i in 0..self.dim() {
            let du = DiffForm::basis(vec![i], SkewPoly::one());
            for c in 0..nc {
                let u = self.alg.coord(c);
                let res = &self.wedge(&self.d_coord(c), &du)
                    + &self.wedge(&du, &self.d_function(&tw[i].apply(&u)));
                if !res.is_zero() {
                    witnesses.push(format!(
                        "twist of {} against d{}: {}",
                        self.spec.names[i],
                        self.alg.coord_name(c),
                        self.render(&res)
                    ));
                }
            }
        }
        let status = Status::from_bool(witnesses.is_empty());
        let summary = if witnesses.is_empty() {
            format!("{} calculus with {} differentials is compatible", self.spec.mode, self.dim())
        } else {
            format!("{} incompatibilities", witnesses.len())
        };
        let mut rec = AuditRecord::new("compatibility", status, summary);
        rec.witnesses = witnesses;
        rec
    }
}

/// Validate the specification and require compatibility.
pub fn build_calculus(alg: &Algebra, spec: CalculusSpec) -> Result<Calculus> {
    let calc = Calculus::new(alg, spec)?;
    let rec = calc.compatibility();
    if !rec.passed() {
        return Err(SpbwError::Calculus(rec.witnesses.join("; ")));
    }
    Ok(calc)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::ore::ore_nu_maps;

    pub fn weyl_calc() -> Calculus {
        let a = weyl();
        build_calculus(&a, CalculusSpec::theorem(&a).unwrap()).unwrap()
    }

    pub fn poly(n: usize) -> Algebra {
        over_field("poly", &[], n, Vec::new())
    }

    pub fn poly_calc(n: usize) -> Calculus {
        let a = poly(n);
        build_calculus(&a, CalculusSpec::theorem(&a).unwrap()).unwrap()
    }

    pub fn qplane_calc() -> Calculus {
        let a = qplane();
        let q = Scalar::param(0);
        let n1 = AlgebraEndo::new(&a, vec![SkewPoly::gen(0), SkewPoly::gen(1).scale(&q)])
            .unwrap()
            .with_affine_inverse()
            .unwrap();
        let n2 = AlgebraEndo::new(&a, vec![SkewPoly::gen(0).scale(&q.inv().unwrap()), SkewPoly::gen(1)])
            .unwrap()
            .with_affine_inverse()
            .unwrap();
        let spec = CalculusSpec::flat(&a, vec![n1, n2]).with_wedge_sign(0, 1, q);
        build_calculus(&a, spec).unwrap()
    }

    /// Jordan plane through the Ore twists with p = t^2.
    pub fn jordan_calc() -> Calculus {
        let one = Scalar::one();
        let data = ore_nu_maps(&one, &Scalar::zero(), &crate::coeff::CoeffPoly::var(0).pow(2), &[]).unwrap();
        let spec = CalculusSpec::flat(&data.algebra, vec![data.nu_t.clone(), data.nu_x.clone()]);
        build_calculus(&data.algebra, spec).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::algebra::fixtures::*;

    fn x(i: usize) -> SkewPoly {
        SkewPoly::gen(i)
    }

    #[test]
    fn theorem_mode_differential() {
        let c = poly_calc(2);
        let a = c.algebra().clone();
        let f = a.mul_all(&[x(0), x(0), x(1)]);
        assert_eq!(c.render(&c.d_function(&f)), "dx1*2*x1*x2 + dx2*x1^2");
        assert!(c.d_function(&SkewPoly::one()).is_zero());
        let w = weyl_calc();
        assert_eq!(w.render(&w.d_function(&w.algebra().mul(&x(1), &x(0)))), "dx1*x2 + dx2*x1");
    }

    #[test]
    fn jordan_flat_mode() {
        let c = jordan_calc();
        let t2 = c.algebra().pow(&SkewPoly::coeff_var(0), 2);
        assert_eq!(c.render(&c.d_function(&t2)), "dt*2*t");
        assert!(c.compatibility().passed());
    }

    #[test]
    fn push_and_wedge() {
        let c = weyl_calc();
        assert_eq!(c.push_left(&x(1), &[0]), DiffForm::basis(vec![0], x(1)));
        let one = SkewPoly::one();
        let d1 = DiffForm::basis(vec![0], one.clone());
        let d2 = DiffForm::basis(vec![1], one.clone());
        assert_eq!(c.wedge(&d2, &d1), -&DiffForm::basis(vec![0, 1], one.clone()));
        assert!(c.wedge(&d1, &d1).is_zero());
        let l = DiffForm::basis(vec![0], x(1));
        assert_eq!(c.render(&c.wedge(&l, &d2)), "dx1∧dx2*x2");
        let q = qplane_calc();
        assert_eq!(q.render(&q.push_left(&x(1), &[0])), "dx1*q*x2");
        assert_eq!(q.push_left(&one, &[0, 1]), DiffForm::basis(vec![0, 1], one));
    }

    #[test]
    fn incompatible_twists_rejected() {
        // identity twists on the quantum plane break x2 x1 = q x1 x2
        let a = qplane();
        let id = AlgebraEndo::identity(&a);
        let spec = CalculusSpec::flat(&a, vec![id.clone(), id]);
        let calc = Calculus::new(&a, spec.clone()).unwrap();
        let rec = calc.compatibility();
        assert_eq!(rec.status, Status::Fail);
        assert!(rec.witnesses[0].starts_with("relation x2*x1"));
        assert!(build_calculus(&a, spec).is_err());
    }

    #[test]
    fn theorem_mode_requires_t1() {
        let a = qplane();
        let spec = CalculusSpec::theorem(&a).unwrap();
        assert!(matches!(Calculus::new(&a, spec), Err(SpbwError::Calculus(_))));
    }
}
