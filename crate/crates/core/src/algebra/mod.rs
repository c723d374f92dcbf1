//! Skew PBW extensions: presentations, normal forms and multiplication.

pub mod power;
pub mod rewrite;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use crate::coeff::{join_terms, CoeffEndo, CoeffPoly, CoeffSigmaDerivation, Symbols};
use crate::error::{Result, SpbwError};
use crate::exponents::{self, Exponents};
use crate::scalar::Scalar;

/// Exponent vector over the generators.
pub type Monomial = Exponents;

/// Element of the extension in normal form: left coefficients times ordered monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SkewPoly {
    terms: BTreeMap<Monomial, CoeffPoly>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CoeffPoly::one())
    }

    pub fn constant(c: CoeffPoly) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::constant(CoeffPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::scalar(Scalar::from_int(n))
    }

    pub fn gen(i: usize) -> Self {
        Self::term(exponents::unit(i), CoeffPoly::one())
    }

    pub fn coeff_var(j: usize) -> Self {
        Self::constant(CoeffPoly::var(j))
    }

    pub fn term(m: Monomial, c: CoeffPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// `c * t^gamma * x^alpha`.
    pub fn basis(gamma: Exponents, alpha: Monomial, c: Scalar) -> Self {
        Self::term(alpha, CoeffPoly::monomial(gamma, c))
    }

    pub fn add_term(&mut self, m: Monomial, c: CoeffPoly) {
        if c.is_zero() {
            return;
        }
        let m = exponents::trim(m);
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> CoeffPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Flattened terms `(t-exponents, x-exponents, scalar)`.
    pub fn basis_terms(&self) -> impl Iterator<Item = (&Exponents, &Monomial, &Scalar)> {
        self.terms.iter().flat_map(|(a, c)| c.terms().map(move |(g, s)| (g, a, s)))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, p)| (m.clone(), p.scale(c))).collect(),
        }
    }

    /// `c * self` for a coefficient placed on the left.
    pub fn left_coeff(&self, c: &CoeffPoly) -> Self {
        let mut out = Self::zero();
        for (m, p) in &self.terms {
            out.add_term(m.clone(), c * p);
        }
        out
    }

    /// The value if `self` lies in the coefficient ring.
    pub fn as_coeff(&self) -> Option<CoeffPoly> {
        match self.terms.len() {
            0 => Some(CoeffPoly::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        self.as_coeff()?.constant_value()
    }

    /// Total degree counting coefficient variables and generators alike.
    pub fn total_degree(&self) -> Option<u32> {
        self.basis_terms()
            .map(|(g, a, _)| exponents::degree(g) + exponents::degree(a))
            .max()
    }

    pub fn render(&self, sym: &Symbols) -> String {
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| exponents::display_cmp(a, b));
        let mut parts = Vec::new();
        for m in keys {
            let c = &self.terms[m];
            let mono = exponents::render(m, &sym.gens, "*");
            if c.len() == 1 || mono.is_empty() {
                parts.extend(c.render_terms(sym, &mono));
            } else {
                parts.push((false, format!("({})*{mono}", c.render(sym))));
            }
        }
        join_terms(parts)
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.terms.keys().map(|k| k.len()).max().unwrap_or(0);
        let sym = Symbols {
            params: (0..8).map(|i| format!("p{i}")).collect(),
            coeffs: (0..8).map(|i| format!("t{}", i + 1)).collect(),
            gens: (0..n.max(8)).map(|i| format!("x{}", i + 1)).collect(),
        };
        f.write_str(&self.render(&sym))
    }
}

impl Add for &SkewPoly {
    type Output = SkewPoly;
    fn add(self, rhs: &SkewPoly) -> SkewPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SkewPoly {
    type Output = SkewPoly;
    fn sub(self, rhs: &SkewPoly) -> SkewPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        SkewPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Degree of an element; zero has degree minus infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degree {
    NegInfinity,
    Finite { degree: u32, leading: Vec<Monomial> },
}

/// Generator degree and the monomials attaining it.
pub fn degree_exp(f: &SkewPoly) -> Degree {
    let Some(degree) = f.terms.keys().map(|m| exponents::degree(m)).max() else {
        return Degree::NegInfinity;
    };
    let leading = f
        .terms
        .keys()
        .filter(|m| exponents::degree(m) == degree)
        .cloned()
        .collect();
    Degree::Finite { degree, leading }
}

/// `x_j x_i = d x_i x_j + r0 + Σ r[k] x_k` for j > i.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub d: CoeffPoly,
    pub r0: CoeffPoly,
    pub r: Vec<CoeffPoly>,
}

impl Relation {
    pub fn commuting(n: usize) -> Self {
        Self { d: CoeffPoly::one(), r0: CoeffPoly::zero(), r: vec![CoeffPoly::zero(); n] }
    }

    /// Normal-form right-hand side for the pair (j, i).
    pub fn rhs(&self, j: usize, i: usize) -> SkewPoly {
        let mut out = SkewPoly::term(exponents::add(&exponents::unit(i), &exponents::unit(j)), self.d.clone());
        out.add_term(Vec::new(), self.r0.clone());
        for (k, c) in self.r.iter().enumerate() {
            out.add_term(exponents::unit(k), c.clone());
        }
        out
    }
}

/// Full defining data of an extension.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub symbols: Symbols,
    pub sigma: Vec<CoeffEndo>,
    pub delta: Vec<CoeffSigmaDerivation>,
    relations: BTreeMap<(usize, usize), Relation>,
}

impl Presentation {
    /// Validate and assemble. Relations are keyed `(j, i)` with `j > i`; missing
    /// pairs commute.
    pub fn new(
        name: impl Into<String>,
        symbols: Symbols,
        sigma: Vec<CoeffEndo>,
        delta: Vec<CoeffSigmaDerivation>,
        relations: BTreeMap<(usize, usize), Relation>,
    ) -> Result<Self> {
        let n = symbols.gens.len();
        let m = symbols.coeffs.len();
        let invalid = |s: String| Err(SpbwError::InvalidPresentation(s));
        if sigma.len() != n || delta.len() != n {
            return invalid(format!("expected {n} sigma and delta maps"));
        }
        for (i, (s, d)) in sigma.iter().zip(&delta).enumerate() {
            if s.nvars() != m || d.images().len() != m {
                return invalid(format!("maps of generator {} must cover {m} variables", symbols.gens[i]));
            }
            if let Some((a, b)) = d.consistency_witness() {
                return invalid(format!(
                    "delta of {} is not a sigma-derivation: images of {} and {} conflict",
                    symbols.gens[i], symbols.coeffs[a], symbols.coeffs[b]
                ));
            }
        }
        for (&(j, i), rel) in &relations {
            if j <= i || j >= n {
                return invalid(format!("relation ({j}, {i}) must have higher generator first"));
            }
            if rel.d.is_zero() {
                return invalid(format!("relation {} {}: d must be nonzero", symbols.gens[j], symbols.gens[i]));
            }
            if rel.r.len() != n {
                return invalid("relation tail has wrong length".into());
            }
        }
        Ok(Self { name: name.into(), symbols, sigma, delta, relations })
    }

    pub fn ngens(&self) -> usize {
        self.symbols.gens.len()
    }

    pub fn ncoeffs(&self) -> usize {
        self.symbols.coeffs.len()
    }

    /// Relation for `x_j x_i`, `j > i`.
    pub fn relation(&self, j: usize, i: usize) -> Relation {
        self.relations
            .get(&(j, i))
            .cloned()
            .unwrap_or_else(|| Relation::commuting(self.ngens()))
    }

    pub fn stored_relations(&self) -> &BTreeMap<(usize, usize), Relation> {
        &self.relations
    }

    /// All ordered pairs `(j, i)` with `j > i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.ngens();
        (0..n).flat_map(|j| (0..j).map(move |i| (j, i))).collect()
    }
}

type Cache<K> = Mutex<HashMap<K, SkewPoly>>;

struct Inner {
    pres: Presentation,
    relations: Vec<Vec<Relation>>,
    tmono: Cache<(Monomial, Exponents)>,
    gen: Cache<(Monomial, usize)>,
    mono: Cache<(Monomial, Monomial)>,
}

/// A presentation together with memoized normal-form multiplication tables.
#[derive(Clone)]
pub struct Algebra(Arc<Inner>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Algebra").field(&self.0.pres.name).finish()
    }
}

fn cached<K: std::hash::Hash + Eq + Clone>(
    cache: &Cache<K>,
    key: K,
    compute: impl FnOnce() -> SkewPoly,
) -> SkewPoly {
    if let Some(v) = cache.lock().expect("cache lock").get(&key) {
        return v.clone();
    }
    let v = compute();
    cache.lock().expect("cache lock").insert(key, v.clone());
    v
}

impl Algebra {
    pub fn new(pres: Presentation) -> Self {
        let n = pres.ngens();
        let relations = (0..n)
            .map(|j| (0..n).map(|i| if j > i { pres.relation(j, i) } else { Relation::commuting(n) }).collect())
            .collect();
        Algebra(Arc::new(Inner {
            pres,
            relations,
            tmono: Mutex::default(),
            gen: Mutex::default(),
            mono: Mutex::default(),
        }))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0.pres
    }

    pub fn symbols(&self) -> &Symbols {
        &self.0.pres.symbols
    }

    pub fn ngens(&self) -> usize {
        self.0.pres.ngens()
    }

    pub fn ncoeffs(&self) -> usize {
        self.0.pres.ncoeffs()
    }

    /// Coefficient variables followed by generators.
    pub fn ncoords(&self) -> usize {
        self.ncoeffs() + self.ngens()
    }

    pub fn coord(&self, c: usize) -> SkewPoly {
        let m = self.ncoeffs();
        if c < m {
            SkewPoly::coeff_var(c)
        } else {
            SkewPoly::gen(c - m)
        }
    }

    pub fn coord_name(&self, c: usize) -> &str {
        let m = self.ncoeffs();
        if c < m {
            &self.symbols().coeffs[c]
        } else {
            &self.symbols().gens[c - m]
        }
    }

    pub fn render(&self, f: &SkewPoly) -> String {
        f.render(self.symbols())
    }

    pub fn same(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// `x^alpha * t^gamma` in normal form.
    fn tmono(&self, alpha: &Monomial, gamma: &Exponents) -> SkewPoly {
        if gamma.is_empty() {
            return SkewPoly::term(alpha.clone(), CoeffPoly::one());
        }
        if alpha.is_empty() {
            return SkewPoly::constant(CoeffPoly::monomial(gamma.clone(), Scalar::one()));
        }
        cached(&self.0.tmono, (alpha.clone(), gamma.clone()), || {
            let k = alpha.len() - 1;
            let rest = exponents::decrement(alpha, k);
            let t = CoeffPoly::monomial(gamma.clone(), Scalar::one());
            let pres = &self.0.pres;
            let moved = self.mono_times_coeff(&rest, &pres.sigma[k].apply(&t));
            let mut out = self.right_mul_gen(&moved, k);
            let dt = pres.delta[k].apply(&t);
            if !dt.is_zero() {
                out = &out + &self.mono_times_coeff(&rest, &dt);
            }
            out
        })
    }

    /// `x^alpha * c`.
    pub fn mono_times_coeff(&self, alpha: &Monomial, c: &CoeffPoly) -> SkewPoly {
        let mut out = SkewPoly::zero();
        for (g, s) in c.terms() {
            out = &out + &self.tmono(alpha, g).scale(s);
        }
        out
    }

    /// `x^beta * x_j`.
    fn mono_times_gen(&self, beta: &Monomial, j: usize) -> SkewPoly {
        if beta.len() <= j + 1 {
            return SkewPoly::term(exponents::increment(beta, j), CoeffPoly::one());
        }
        cached(&self.0.gen, (beta.clone(), j), || {
            let k = beta.len() - 1;
            let rest = exponents::decrement(beta, k);
            let rel = &self.0.relations[k][j];
            let lead = self.right_mul_gen(&self.right_mul_gen(&self.mono_times_coeff(&rest, &rel.d), j), k);
            let mut out = &lead + &self.mono_times_coeff(&rest, &rel.r0);
            for (l, r) in rel.r.iter().enumerate() {
                if !r.is_zero() {
                    out = &out + &self.right_mul_gen(&self.mono_times_coeff(&rest, r), l);
                }
            }
            out
        })
    }

    pub fn right_mul_gen(&self, f: &SkewPoly, j: usize) -> SkewPoly {
        let mut out = SkewPoly::zero();
        for (m, c) in f.terms() {
            out = &out + &self.mono_times_gen(m, j).left_coeff(c);
        }
        out
    }

    /// `x^gamma * x^beta`.
    fn mono_times_mono(&self, gamma: &Monomial, beta: &Monomial) -> SkewPoly {
        if beta.is_empty() {
            return SkewPoly::term(gamma.clone(), CoeffPoly::one());
        }
        let first = beta.iter().position(|&e| e > 0).unwrap_or(0);
        if gamma.len() <= first + 1 {
            return SkewPoly::term(exponents::add(gamma, beta), CoeffPoly::one());
        }
        cached(&self.0.mono, (gamma.clone(), beta.clone()), || {
            let k = beta.len() - 1;
            let rest = exponents::decrement(beta, k);
            self.right_mul_gen(&self.mono_times_mono(gamma, &rest), k)
        })
    }

    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let mut out = SkewPoly::zero();
        for (alpha, a) in f.terms() {
            for (beta, b) in g.terms() {
                let moved = self.mono_times_coeff(alpha, b);
                let mut prod = SkewPoly::zero();
                for (mu, c) in moved.terms() {
                    prod = &prod + &self.mono_times_mono(mu, beta).left_coeff(c);
                }
                out = &out + &prod.left_coeff(a);
            }
        }
        out
    }

    pub fn mul_all(&self, factors: &[SkewPoly]) -> SkewPoly {
        factors.iter().fold(SkewPoly::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, f: &SkewPoly, k: u32) -> SkewPoly {
        let mut out = SkewPoly::one();
        for _ in 0..k {
            out = self.mul(&out, f);
        }
        out
    }

    /// The monomial `t^gamma x^alpha` as an element.
    pub fn basis_element(&self, gamma: &Exponents, alpha: &Monomial) -> SkewPoly {
        SkewPoly::basis(gamma.clone(), alpha.clone(), Scalar::one())
    }

    /// Normal monomials `(t-exponents, x-exponents)` of total degree at most `d`.
    pub fn basis_monomials(&self, d: u32) -> Vec<(Exponents, Monomial)> {
        let (m, n) = (self.ncoeffs(), self.ngens());
        exponents::all_up_to(m + n, d)
            .into_iter()
            .map(|e| {
                let mut e = e;
                e.resize(m + n, 0);
                let alpha = exponents::trim(e[m..].to_vec());
                let gamma = exponents::trim(e[..m].to_vec());
                (gamma, alpha)
            })
            .collect()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    fn names(prefix: &str, k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn symbols(params: &[&str], coeffs: &[&str], n: usize) -> Symbols {
        Symbols {
            params: params.iter().map(|s| s.to_string()).collect(),
            coeffs: coeffs.iter().map(|s| s.to_string()).collect(),
            gens: if coeffs.is_empty() { names("x", n) } else if n == 1 { vec!["x".into()] } else { names("x", n) },
        }
    }

    pub fn trivial_maps(m: usize, n: usize) -> (Vec<CoeffEndo>, Vec<CoeffSigmaDerivation>) {
        let s = vec![CoeffEndo::identity(m); n];
        let d = s.iter().cloned().map(CoeffSigmaDerivation::zero).collect();
        (s, d)
    }

    pub fn over_field(name: &str, params: &[&str], n: usize, rels: Vec<((usize, usize), Relation)>) -> Algebra {
        let (s, d) = trivial_maps(0, n);
        let pres = Presentation::new(name, symbols(params, &[], n), s, d, rels.into_iter().collect()).unwrap();
        Algebra::new(pres)
    }

    pub fn weyl() -> Algebra {
        let mut r = Relation::commuting(2);
        r.r0 = CoeffPoly::from_int(-1);
        over_field("weyl", &[], 2, vec![((1, 0), r)])
    }

    pub fn qplane() -> Algebra {
        let mut r = Relation::commuting(2);
        r.d = CoeffPoly::constant(Scalar::param(0));
        over_field("qplane", &["q"], 2, vec![((1, 0), r)])
    }

    /// x t = t x + t^2
    pub fn jordan() -> Algebra {
        let s = CoeffEndo::identity(1);
        let d = CoeffSigmaDerivation::new(vec![CoeffPoly::var(0).pow(2)], s.clone());
        let pres = Presentation::new("jordan", symbols(&[], &["t"], 1), vec![s], vec![d], BTreeMap::new()).unwrap();
        Algebra::new(pres)
    }

    /// x t = q t x + 1 over F[t]
    pub fn qweyl() -> Algebra {
        let s = CoeffEndo::new(vec![CoeffPoly::var(0).scale(&Scalar::param(0))]);
        let d = CoeffSigmaDerivation::new(vec![CoeffPoly::one()], s.clone());
        let pres = Presentation::new("qweyl", symbols(&["q"], &["t"], 1), vec![s], vec![d], BTreeMap::new()).unwrap();
        Algebra::new(pres)
    }

    pub fn broken() -> Algebra {
        let mut a = Relation::commuting(3);
        a.r[2] = CoeffPoly::one();
        let mut b = Relation::commuting(3);
        b.r[0] = CoeffPoly::one();
        over_field("broken", &[], 3, vec![((1, 0), a), ((2, 0), b)])
    }

    pub fn qaffine3() -> Algebra {
        let mut rels = Vec::new();
        let mut idx = 0;
        for j in 0..3 {
            for i in 0..j {
                let mut r = Relation::commuting(3);
                r.d = CoeffPoly::constant(Scalar::param(idx));
                rels.push(((j, i), r));
                idx += 1;
            }
        }
        over_field("qaffine3", &["q12", "q13", "q23"], 3, rels)
    }
}
