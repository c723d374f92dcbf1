//! One-generator Ore extensions `F[t][x; σ_{q,r}, δ_p]` with σ(t) = qt + r.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Algebra, Presentation, SkewPoly};
use crate::coeff::{CoeffEndo, CoeffPoly, CoeffSigmaDerivation, Symbols};
use crate::error::{Result, SpbwError};
use crate::extended::AlgebraEndo;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OreCase {
    A,
    B,
    C,
    None,
}

impl OreCase {
    pub fn as_str(self) -> &'static str {
        match self {
            OreCase::A => "a",
            OreCase::B => "b",
            OreCase::C => "c",
            OreCase::None => "none",
        }
    }
}

impl fmt::Display for OreCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn t() -> CoeffPoly {
    CoeffPoly::var(0)
}

fn check_q(q: &Scalar) -> Result<()> {
    if q.is_zero() {
        Err(SpbwError::Config("q must be nonzero".into()))
    } else {
        Ok(())
    }
}

pub fn ore_sigma(q: &Scalar, r: &Scalar) -> Result<CoeffEndo> {
    check_q(q)?;
    CoeffEndo::new(vec![&t().scale(q) + &CoeffPoly::constant(r.clone())]).with_affine_inverse()
}

pub fn ore_delta_from_p(q: &Scalar, r: &Scalar, p: &CoeffPoly) -> Result<CoeffSigmaDerivation> {
    Ok(CoeffSigmaDerivation::new(vec![p.clone()], ore_sigma(q, r)?))
}

/// `[(f(qt+r) − f(t)) / ((q−1)t + r)]·p`, or `p·f′` when q = 1 and r = 0.
pub fn ore_difference_quotient(q: &Scalar, r: &Scalar, p: &CoeffPoly, f: &CoeffPoly) -> Result<CoeffPoly> {
    check_q(q)?;
    let qm1 = q - &Scalar::one();
    if qm1.is_zero() && r.is_zero() {
        return Ok(p * &f.partial(0));
    }
    let shifted = f.substitute(&[&t().scale(q) + &CoeffPoly::constant(r.clone())]);
    let den = &t().scale(&qm1) + &CoeffPoly::constant(r.clone());
    let quot = (&shifted - f)
        .div_exact(&den)
        .expect("difference quotient divides exactly");
    Ok(&quot * p)
}

pub fn ore_case_classify(q: &Scalar, r: &Scalar, p: &CoeffPoly) -> OreCase {
    let one = Scalar::one();
    if *q == one {
        if r.is_zero() {
            OreCase::A
        } else if p.constant_value().is_some() || p.is_zero() {
            OreCase::B
        } else {
            OreCase::None
        }
    } else {
        let Some((lin, b)) = p.affine_parts(1) else {
            return OreCase::None;
        };
        let a = &lin[0];
        match (a * r).checked_div(&(q - &one)) {
            Ok(expected) if expected == b => OreCase::C,
            _ => OreCase::None,
        }
    }
}

/// The algebra `xt = σ(t)x + p` with coordinates t, x.
pub fn ore_algebra(q: &Scalar, r: &Scalar, p: &CoeffPoly, params: &[&str]) -> Result<Algebra> {
    let s = ore_sigma(q, r)?;
    let d = CoeffSigmaDerivation::new(vec![p.clone()], s.clone());
    let sym = Symbols {
        params: params.iter().map(|s| s.to_string()).collect(),
        coeffs: vec!["t".into()],
        gens: vec!["x".into()],
    };
    Ok(Algebra::new(Presentation::new("ore", sym, vec![s], vec![d], BTreeMap::new())?))
}

#[derive(Clone, Debug)]
pub struct OreCaseData {
    pub q: Scalar,
    pub r: Scalar,
    pub p: CoeffPoly,
    pub case: OreCase,
    pub algebra: Algebra,
    pub nu_t: AlgebraEndo,
    pub nu_x: AlgebraEndo,
}

/// ν_t: t ↦ t, x ↦ qx + p′(t) and ν_x: t ↦ σ^{-1}(t), x ↦ x, both checked
/// against the relation and for commuting on t and x.
pub fn ore_nu_maps(q: &Scalar, r: &Scalar, p: &CoeffPoly, params: &[&str]) -> Result<OreCaseData> {
    let case = ore_case_classify(q, r, p);
    if case == OreCase::None {
        return Err(SpbwError::Unsupported(format!(
            "no twist pair for q = {}, r = {}",
            q.render(&params.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
            r.render(&params.iter().map(|s| s.to_string()).collect::<Vec<_>>())
        )));
    }
    let alg = ore_algebra(q, r, p, params)?;
    let (tt, x) = (alg.coord(0), alg.coord(1));
    let dp = SkewPoly::constant(p.partial(0));
    let qinv = q.inv()?;
    let nu_t = AlgebraEndo::new(&alg, vec![tt.clone(), &x.scale(q) + &dp])?
        .with_inverse(vec![tt.clone(), (&x - &dp).scale(&qinv)])?;
    let rr = SkewPoly::scalar(r.clone());
    let nu_x = AlgebraEndo::new(&alg, vec![(&tt - &rr).scale(&qinv), x.clone()])?
        .with_inverse(vec![&tt.scale(q) + &rr, x.clone()])?;
    if !nu_t.commutes_with(&nu_x) {
        return Err(SpbwError::Unsupported("twists do not commute".into()));
    }
    Ok(OreCaseData { q: q.clone(), r: r.clone(), p: p.clone(), case, algebra: alg, nu_t, nu_x })
}
