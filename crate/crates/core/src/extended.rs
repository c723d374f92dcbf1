//! Maps on the whole extension: endomorphisms given by images of coordinates,
//! coefficientwise lifts of σ_i and δ_i, and the hypothesis package.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::{Algebra, Monomial, SkewPoly};
use crate::audit::{AuditRecord, Status};
use crate::coeff::{commutation_audit, CoeffEndo, CoeffPoly, CoeffSigmaDerivation};
use crate::error::{Result, SpbwError};
use crate::exponents::{self, Exponents};
use crate::linalg;
use crate::sample;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
enum Kind {
    Identity,
    Coefficientwise(CoeffEndo),
    General,
}

/// Algebra endomorphism given by the images of the coordinates (coefficient
/// variables first, then generators). Relation respect is verified on construction.
#[derive(Clone)]
pub struct AlgebraEndo {
    alg: Algebra,
    images: Vec<SkewPoly>,
    kind: Kind,
    inverse: Option<Vec<SkewPoly>>,
    cache: Arc<Mutex<HashMap<(Exponents, Monomial), SkewPoly>>>,
}

impl fmt::Debug for AlgebraEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images.iter().map(|p| self.alg.render(p)).collect();
        f.debug_struct("AlgebraEndo").field("images", &imgs).finish()
    }
}

fn classify(alg: &Algebra, images: &[SkewPoly]) -> Kind {
    let m = alg.ncoeffs();
    if images.iter().enumerate().all(|(c, p)| *p == alg.coord(c)) {
        return Kind::Identity;
    }
    let gens_fixed = (m..alg.ncoords()).all(|c| images[c] == alg.coord(c));
    let coeffs: Option<Vec<CoeffPoly>> = images[..m].iter().map(SkewPoly::as_coeff).collect();
    match (gens_fixed, coeffs) {
        (true, Some(c)) => Kind::Coefficientwise(CoeffEndo::new(c)),
        _ => Kind::General,
    }
}

/// Apply the substitution defined by `images` without any validation.
fn substitute(
    alg: &Algebra,
    images: &[SkewPoly],
    f: &SkewPoly,
    cache: &Mutex<HashMap<(Exponents, Monomial), SkewPoly>>,
) -> SkewPoly {
    let m = alg.ncoeffs();
    let mut out = SkewPoly::zero();
    for (gamma, alpha, s) in f.basis_terms() {
        let key = (gamma.clone(), alpha.clone());
        let cached = cache.lock().expect("cache lock").get(&key).cloned();
        let img = match cached {
            Some(v) => v,
            None => {
                let mut v = SkewPoly::one();
                for (j, &k) in gamma.iter().enumerate() {
                    for _ in 0..k {
                        v = alg.mul(&v, &images[j]);
                    }
                }
                for (i, &k) in alpha.iter().enumerate() {
                    for _ in 0..k {
                        v = alg.mul(&v, &images[m + i]);
                    }
                }
                cache.lock().expect("cache lock").insert(key, v.clone());
                v
            }
        };
        out = &out + &img.scale(s);
    }
    out
}

/// First defining relation violated by the substitution, rendered for reports.
pub fn relation_violation(alg: &Algebra, images: &[SkewPoly]) -> Option<String> {
    let cache = Mutex::new(HashMap::new());
    let phi = |f: &SkewPoly| substitute(alg, images, f, &cache);
    let phic = |c: &CoeffPoly| phi(&SkewPoly::constant(c.clone()));
    let (m, n) = (alg.ncoeffs(), alg.ngens());
    let pres = alg.presentation();
    let sym = alg.symbols();
    for a in 0..m {
        for b in a + 1..m {
            let lhs = alg.mul(&images[a], &images[b]);
            let rhs = alg.mul(&images[b], &images[a]);
            if lhs != rhs {
                return Some(format!("{} {} = {} {}", sym.coeffs[a], sym.coeffs[b], sym.coeffs[b], sym.coeffs[a]));
            }
        }
    }
    for i in 0..n {
        for a in 0..m {
            let t = CoeffPoly::var(a);
            let lhs = alg.mul(&images[m + i], &images[a]);
            let rhs = &alg.mul(&phic(&pres.sigma[i].apply(&t)), &images[m + i]) + &phic(&pres.delta[i].apply(&t));
            if lhs != rhs {
                return Some(format!("{} {} = sigma({}) {} + delta({})", sym.gens[i], sym.coeffs[a], sym.coeffs[a], sym.gens[i], sym.coeffs[a]));
            }
        }
    }
    for (j, i) in pres.pairs() {
        let rel = pres.relation(j, i);
        let lhs = alg.mul(&images[m + j], &images[m + i]);
        let mut rhs = alg.mul_all(&[phic(&rel.d), images[m + i].clone(), images[m + j].clone()]);
        rhs = &rhs + &phic(&rel.r0);
        for (l, r) in rel.r.iter().enumerate() {
            if !r.is_zero() {
                rhs = &rhs + &alg.mul(&phic(r), &images[m + l]);
            }
        }
        if lhs != rhs {
            return Some(format!("{} {} = {}", sym.gens[j], sym.gens[i], alg.render(&rel.rhs(j, i))));
        }
    }
    None
}

impl AlgebraEndo {
    pub fn new(alg: &Algebra, images: Vec<SkewPoly>) -> Result<Self> {
        if images.len() != alg.ncoords() {
            return Err(SpbwError::Index(format!(
                "expected {} coordinate images, got {}",
                alg.ncoords(),
                images.len()
            )));
        }
        if let Some(v) = relation_violation(alg, &images) {
            return Err(SpbwError::NotAnEndomorphism(v));
        }
        Ok(Self::unchecked(alg, images))
    }

    fn unchecked(alg: &Algebra, images: Vec<SkewPoly>) -> Self {
        Self {
            kind: classify(alg, &images),
            alg: alg.clone(),
            images,
            inverse: None,
            cache: Arc::default(),
        }
    }

    pub fn identity(alg: &Algebra) -> Self {
        let images: Vec<SkewPoly> = (0..alg.ncoords()).map(|c| alg.coord(c)).collect();
        let mut e = Self::unchecked(alg, images.clone());
        e.inverse = Some(images);
        e
    }

    /// Coefficientwise lift of a coefficient endomorphism.
    pub fn from_coeff_endo(alg: &Algebra, s: &CoeffEndo) -> Result<Self> {
        let m = alg.ncoeffs();
        let images = (0..alg.ncoords())
            .map(|c| if c < m { SkewPoly::constant(s.apply(&CoeffPoly::var(c))) } else { alg.coord(c) })
            .collect();
        let e = Self::new(alg, images)?;
        match s.inverse() {
            Some(inv) => {
                let inv_images = (0..alg.ncoords())
                    .map(|c| if c < m { SkewPoly::constant(inv.apply(&CoeffPoly::var(c))) } else { alg.coord(c) })
                    .collect();
                e.with_inverse(inv_images)
            }
            None => Ok(e),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn images(&self) -> &[SkewPoly] {
        &self.images
    }

    pub fn image(&self, c: usize) -> &SkewPoly {
        &self.images[c]
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, Kind::Identity)
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn apply(&self, f: &SkewPoly) -> SkewPoly {
        match &self.kind {
            Kind::Identity => f.clone(),
            Kind::Coefficientwise(s) => {
                let mut out = SkewPoly::zero();
                for (alpha, c) in f.terms() {
                    out.add_term(alpha.clone(), s.apply(c));
                }
                out
            }
            Kind::General => substitute(&self.alg, &self.images, f, &self.cache),
        }
    }

    pub fn apply_coeff(&self, c: &CoeffPoly) -> SkewPoly {
        self.apply(&SkewPoly::constant(c.clone()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraEndo) -> AlgebraEndo {
        let images = other.images.iter().map(|p| self.apply(p)).collect();
        let mut out = Self::unchecked(&self.alg, images);
        if let (Some(a), Some(b)) = (self.inverse(), other.inverse()) {
            out.inverse = Some(a.images.iter().map(|p| b.apply(p)).collect());
        }
        out
    }

    pub fn agrees_with(&self, other: &AlgebraEndo) -> bool {
        self.images == other.images
    }

    pub fn commutes_with(&self, other: &AlgebraEndo) -> bool {
        self.compose(other).agrees_with(&other.compose(self))
    }

    /// Attach an explicit inverse; it must itself respect the relations and invert
    /// `self` on every coordinate from both sides.
    pub fn with_inverse(mut self, inverse: Vec<SkewPoly>) -> Result<Self> {
        let inv = AlgebraEndo::new(&self.alg, inverse.clone())
            .map_err(|e| SpbwError::NotInvertible(format!("inverse is not an endomorphism: {e}")))?;
        for c in 0..self.alg.ncoords() {
            let u = self.alg.coord(c);
            if self.apply(&inv.apply(&u)) != u || inv.apply(&self.apply(&u)) != u {
                return Err(SpbwError::NotInvertible(format!(
                    "inverse fails on {}",
                    self.alg.coord_name(c)
                )));
            }
        }
        self.inverse = Some(inverse);
        Ok(self)
    }

    /// Invert an affine map (every image of degree at most one with scalar
    /// coefficients) by an exact linear solve.
    pub fn with_affine_inverse(self) -> Result<Self> {
        if self.inverse.is_some() {
            return Ok(self);
        }
        let (m, nc) = (self.alg.ncoeffs(), self.alg.ncoords());
        let mut mat = vec![vec![Scalar::zero(); nc]; nc];
        let mut shift = vec![Scalar::zero(); nc];
        for (c, img) in self.images.iter().enumerate() {
            for (gamma, alpha, s) in img.basis_terms() {
                match (exponents::degree(gamma), exponents::degree(alpha)) {
                    (0, 0) => shift[c] = s.clone(),
                    (1, 0) => mat[c][gamma.len() - 1] = s.clone(),
                    (0, 1) => mat[c][m + alpha.len() - 1] = s.clone(),
                    _ => {
                        return Err(SpbwError::NotInvertible(format!(
                            "image of {} is not affine; supply an inverse",
                            self.alg.coord_name(c)
                        )))
                    }
                }
            }
        }
        let inv = linalg::invert(&mat)?;
        let images = (0..nc)
            .map(|c| {
                let mut p = SkewPoly::zero();
                for d in 0..nc {
                    let ud = &self.alg.coord(d) - &SkewPoly::scalar(shift[d].clone());
                    p = &p + &ud.scale(&inv[c][d]);
                }
                p
            })
            .collect();
        self.with_inverse(images)
    }

    pub fn inverse(&self) -> Option<AlgebraEndo> {
        self.inverse.as_ref().map(|inv| {
            let mut e = Self::unchecked(&self.alg, inv.clone());
            e.inverse = Some(self.images.clone());
            e
        })
    }

    pub fn render_images(&self) -> Vec<String> {
        (0..self.alg.ncoords())
            .map(|c| format!("{} -> {}", self.alg.coord_name(c), self.alg.render(&self.images[c])))
            .collect()
    }
}

/// σ̃-derivation acting coefficientwise through δ, with optional generator images
/// extended by the twisted Leibniz rule.
#[derive(Clone, Debug)]
pub struct ExtendedDerivation {
    alg: Algebra,
    delta: CoeffSigmaDerivation,
    twist: AlgebraEndo,
    gen_images: Vec<SkewPoly>,
}

impl ExtendedDerivation {
    pub fn new(alg: &Algebra, delta: CoeffSigmaDerivation, twist: AlgebraEndo) -> Self {
        Self { alg: alg.clone(), delta, twist, gen_images: vec![SkewPoly::zero(); alg.ngens()] }
    }

    /// Replace the images of the generators, which are zero by default.
    pub fn with_gen_images(mut self, images: Vec<SkewPoly>) -> Self {
        self.gen_images = images;
        self
    }

    pub fn twist(&self) -> &AlgebraEndo {
        &self.twist
    }

    fn on_monomial(&self, alpha: &Monomial) -> SkewPoly {
        match exponents::last_var(alpha) {
            None => SkewPoly::zero(),
            Some(k) => {
                let rest = exponents::decrement(alpha, k);
                let head = SkewPoly::term(rest.clone(), CoeffPoly::one());
                let a = self.alg.mul(&self.twist.apply(&head), &self.gen_images[k]);
                let b = self.alg.right_mul_gen(&self.on_monomial(&rest), k);
                &a + &b
            }
        }
    }

    pub fn apply(&self, f: &SkewPoly) -> SkewPoly {
        let gens_zero = self.gen_images.iter().all(SkewPoly::is_zero);
        let mut out = SkewPoly::zero();
        for (alpha, c) in f.terms() {
            out.add_term(alpha.clone(), self.delta.apply(c));
            if !gens_zero {
                let d = self.on_monomial(alpha);
                out = &out + &self.alg.mul(&self.twist.apply_coeff(c), &d);
            }
        }
        out
    }
}

pub fn extend_sigma(alg: &Algebra, i: usize) -> Result<AlgebraEndo> {
    AlgebraEndo::from_coeff_endo(alg, &alg.presentation().sigma[i])
}

pub fn extend_delta(alg: &Algebra, i: usize) -> Result<ExtendedDerivation> {
    let twist = extend_sigma(alg, i)?;
    Ok(ExtendedDerivation::new(alg, alg.presentation().delta[i].clone(), twist))
}

/// Check δ̃(ps) = σ̃(p)δ̃(s) + δ̃(p)s on seeded random pairs.
pub fn verify_twisted_leibniz(
    sig: &AlgebraEndo,
    del: &ExtendedDerivation,
    samples: usize,
    degree: u32,
    seed: u64,
) -> AuditRecord {
    let alg = &del.alg;
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        let p = sample::random_element(alg, &mut rng, degree);
        let s = sample::random_element(alg, &mut rng, degree);
        let lhs = del.apply(&alg.mul(&p, &s));
        let rhs = &alg.mul(&sig.apply(&p), &del.apply(&s)) + &alg.mul(&del.apply(&p), &s);
        if lhs != rhs {
            return AuditRecord::new("twisted-leibniz", Status::Fail, "twisted Leibniz rule fails")
                .with_witness(format!("p = {}", alg.render(&p)))
                .with_witness(format!("s = {}", alg.render(&s)));
        }
    }
    AuditRecord::new(
        "twisted-leibniz",
        Status::Pass,
        format!("{samples} sampled pairs of degree <= {degree}"),
    )
}

/// One named hypothesis with its failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: &'static str,
    pub holds: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub items: Vec<Hypothesis>,
}

impl HypothesisReport {
    pub fn holds(&self, name: &str) -> bool {
        self.items.iter().any(|h| h.name == name && h.holds)
    }

    /// H1 to H4: the hypotheses of the lifting propositions.
    pub fn h_block(&self) -> bool {
        ["H1", "H2", "H3", "H4"].iter().all(|h| self.holds(h))
    }

    pub fn theorem(&self) -> bool {
        self.h_block() && self.holds("T1") && self.holds("T2")
    }

    pub fn to_record(&self) -> AuditRecord {
        let summary = self
            .items
            .iter()
            .map(|h| format!("{} {}", h.name, if h.holds { "pass" } else { "fail" }))
            .collect::<Vec<_>>()
            .join(", ");
        let mut rec = AuditRecord::new("hypotheses", Status::Info, summary);
        for h in &self.items {
            for w in &h.witnesses {
                rec = rec.with_witness(format!("{}: {w}", h.name));
            }
        }
        rec
    }
}

pub fn hypothesis_check(alg: &Algebra) -> HypothesisReport {
    let pres = alg.presentation();
    let sym = alg.symbols();
    let g = |i: usize| sym.gens[i].clone();
    let audit = commutation_audit(&pres.sigma, &pres.delta);
    let mut items = Vec::new();
    let h1: Vec<String> = audit
        .self_commute
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| format!("sigma and delta of {} do not commute", g(i)))
        .collect();
    let h2: Vec<String> = audit
        .pairs
        .iter()
        .filter(|p| p.i < p.j && !p.delta_delta)
        .map(|p| format!("delta of {} and {}", g(p.i), g(p.j)))
        .collect();
    let h3: Vec<String> = audit
        .pairs
        .iter()
        .filter(|p| !p.delta_sigma)
        .map(|p| format!("delta of {} and sigma of {}", g(p.i), g(p.j)))
        .collect();
    let t2: Vec<String> = audit
        .pairs
        .iter()
        .filter(|p| p.i < p.j && !p.sigma_sigma)
        .map(|p| format!("sigma of {} and {}", g(p.i), g(p.j)))
        .collect();
    let mut h4 = Vec::new();
    let mut t1 = Vec::new();
    for (j, i) in pres.pairs() {
        let rel = pres.relation(j, i);
        let label = format!("{} {}", g(j), g(i));
        for (k, d) in pres.delta.iter().enumerate() {
            if !d.apply(&rel.d).is_zero() {
                h4.push(format!("delta of {} on d({label})", g(k)));
            }
            if !d.apply(&rel.r0).is_zero() {
                h4.push(format!("delta of {} on r0({label})", g(k)));
            }
            for (l, r) in rel.r.iter().enumerate() {
                if !d.apply(r).is_zero() {
                    h4.push(format!("delta of {} on r{}({label})", g(k), l + 1));
                }
            }
        }
        if !rel.d.is_one() {
            t1.push(format!("d({label}) = {}", rel.d.render(sym)));
        }
        if rel.r.iter().any(|r| !r.is_zero()) {
            t1.push(format!("linear tail in {label}"));
        }
    }
    for (name, w) in [("H1", h1), ("H2", h2), ("H3", h3), ("H4", h4), ("T1", t1), ("T2", t2)] {
        items.push(Hypothesis { name, holds: w.is_empty(), witnesses: w });
    }
    HypothesisReport { items }
}
